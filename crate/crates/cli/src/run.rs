use std::io::Read;
use std::sync::Arc;

use serde_json::{json, Value as Json};
use wittkit::json::*;
use wittkit::*;

use crate::args::*;

enum Output {
    Witt(WittVec),
    Ghost(GhostVec),
    Series(UnitSeries),
    Plain(PlainSeries),
    Formal(FormalSum),
    Cycles(CycleSum),
    Ptyp(PTypicalWitt),
    Matrix(MatrixEndo),
    Virtual(VirtualEndo),
    Elem(Elem),
    Dwork(DworkOutcome),
    Univ(Arc<UniversalPolySet>),
}

impl Output {
    fn to_json(&self) -> Json {
        match self {
            Output::Witt(w) => witt_to_json(w),
            Output::Ghost(g) => ghost_to_json(g),
            Output::Series(s) => series_to_json(s),
            Output::Plain(s) => plain_series_to_json(s),
            Output::Formal(x) => formal_to_json(x),
            Output::Cycles(c) => cycle_to_json(c),
            Output::Ptyp(w) => ptypical_to_json(w),
            Output::Matrix(m) => matrix_to_json(m),
            Output::Virtual(v) => json!({ "plus": matrix_to_json(&v.plus), "minus": matrix_to_json(&v.minus) }),
            Output::Elem(e) => json!({ "ring": ring_to_json(e.ring()), "value": elem_to_json(e) }),
            Output::Dwork(DworkOutcome::Pass) => json!({ "dwork": "pass" }),
            Output::Dwork(DworkOutcome::Fail { prime, index }) => {
                json!({ "dwork": "fail", "prime": prime, "index": index })
            }
            Output::Univ(set) => set.to_json(),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Output::Witt(w) => w.to_string(),
            Output::Ghost(g) => g.to_string(),
            Output::Series(s) => s.to_string(),
            Output::Plain(s) => s.to_string(),
            Output::Formal(x) => x.to_string(),
            Output::Cycles(c) => c.to_string(),
            Output::Ptyp(w) => w.to_string(),
            Output::Matrix(m) => m.to_string(),
            Output::Virtual(v) => format!("plus:\n{}\nminus:\n{}", v.plus, v.minus),
            Output::Elem(e) => e.to_string(),
            Output::Dwork(d) => d.to_string(),
            Output::Univ(set) => set.pretty(),
        }
    }
}

/// Lazily read JSON operands, one document each.
struct Operands<'a> {
    global: &'a Global,
    docs: Option<std::vec::IntoIter<Json>>,
}

impl<'a> Operands<'a> {
    fn new(global: &'a Global) -> Self {
        Operands { global, docs: None }
    }

    fn next(&mut self) -> Result<Json> {
        if self.docs.is_none() {
            let text = read_input(self.global)?;
            let docs = serde_json::Deserializer::from_str(&text)
                .into_iter::<Json>()
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| WittError::Parse(format!("operand is not valid JSON: {e}")))?;
            self.docs = Some(docs.into_iter());
        }
        self.docs
            .as_mut()
            .and_then(Iterator::next)
            .ok_or_else(|| WittError::InvalidArgument("not enough operands".into()))
    }
}

fn read_input(global: &Global) -> Result<String> {
    let mut text = String::new();
    if global.input.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| WittError::Parse(format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(&global.input)
            .map_err(|e| WittError::Parse(format!("cannot read {}: {e}", global.input.display())))?;
    }
    Ok(text)
}

struct Ctx<'a> {
    ring: Ring,
    global: &'a Global,
    ops: Operands<'a>,
}

impl Ctx<'_> {
    fn witt(&mut self) -> Result<WittVec> {
        let w = witt_from_json(&self.ops.next()?, Some(&self.ring))?;
        match self.global.prec {
            Some(n) if n < w.len() => w.restrict(n),
            Some(n) if n > w.len() => {
                let mut c = w.coords().to_vec();
                c.resize(n, w.ring().zero());
                WittVec::new(w.ring(), c)
            }
            _ => Ok(w),
        }
    }

    fn ghost(&mut self) -> Result<GhostVec> {
        ghost_from_json(&self.ops.next()?, Some(&self.ring))
    }

    fn series(&mut self) -> Result<UnitSeries> {
        let s = series_from_json(&self.ops.next()?, Some(&self.ring))?;
        match self.global.prec {
            Some(n) if n < s.precision() => s.truncate(n),
            Some(n) if n > s.precision() => {
                let mut c = s.coeffs().to_vec();
                c.resize(n, s.ring().zero());
                UnitSeries::new(s.ring(), c)
            }
            _ => Ok(s),
        }
    }

    fn formal(&mut self) -> Result<FormalSum> {
        formal_from_json(&self.ops.next()?, Some(&self.ring), self.global.prec)
    }

    fn cycles(&mut self) -> Result<CycleSum> {
        cycle_from_json(&self.ops.next()?)
    }

    fn ptyp(&mut self, p: Option<u64>) -> Result<PTypicalWitt> {
        ptypical_from_json(&self.ops.next()?, Some(&self.ring), p)
    }

    fn matrix(&mut self) -> Result<MatrixEndo> {
        matrix_from_json(&self.ops.next()?, Some(&self.ring))
    }

    fn virtual_endo(&mut self) -> Result<VirtualEndo> {
        let v = self.ops.next()?;
        if v.get("plus").is_some() {
            let plus = matrix_from_json(&v["plus"], Some(&self.ring))?;
            let minus = matrix_from_json(&v["minus"], Some(&self.ring))?;
            VirtualEndo::new(plus, minus)
        } else {
            rational_pair(&v, &self.ring)
        }
    }
}

fn rational_pair(v: &Json, default: &Ring) -> Result<VirtualEndo> {
    let ring = ring_of(v, Some(default))?;
    let list = |key: &str| -> Result<Vec<Elem>> {
        match v.get(key) {
            None | Some(Json::Null) => Ok(Vec::new()),
            Some(Json::Array(a)) => a.iter().map(|x| elem_from_json(&ring, x)).collect(),
            Some(_) => Err(WittError::Parse(format!("{key} must be an array of coefficients"))),
        }
    };
    VirtualEndo::from_rational_series(&ring, &list("numer")?, &list("denom")?)
}

fn need_p(p: Option<u64>) -> Result<u64> {
    p.ok_or_else(|| WittError::InvalidArgument("this command needs --p".into()))
}

pub fn run(cli: &Cli) -> Result<String> {
    let global = &cli.global;
    let ring: Ring = global.ring.parse()?;
    let mut cx = Ctx { ring, global, ops: Operands::new(global) };
    let out = dispatch(&cli.group, &mut cx)?;
    Ok(match global.format {
        Format::Json => format!("{}\n", out.to_json()),
        Format::Text => format!("{}\n", out.to_text()),
    })
}

fn dispatch(group: &Group, cx: &mut Ctx<'_>) -> Result<Output> {
    Ok(match group {
        Group::Witt(op) => match op {
            WittOp::Add => Output::Witt(cx.witt()?.add(&cx.witt()?)?),
            WittOp::Mul => Output::Witt(cx.witt()?.mul(&cx.witt()?)?),
            WittOp::Neg => Output::Witt(cx.witt()?.neg()),
            WittOp::Frob { k } => Output::Witt(cx.witt()?.frobenius(*k)?),
            WittOp::Versch { k } => Output::Witt(cx.witt()?.verschiebung(*k)?),
            WittOp::Norm { d } => Output::Witt(cx.witt()?.norm(*d)?),
            WittOp::Teich => Output::Formal(cx.witt()?.teichmuller()),
            WittOp::Ghost => Output::Ghost(cx.witt()?.ghost()),
            WittOp::Unghost => Output::Witt(WittVec::from_ghost(&cx.ghost()?)?),
            WittOp::Restrict { m } => Output::Witt(cx.witt()?.restrict(*m)?),
            WittOp::Dwork => Output::Dwork(cx.ghost()?.dwork_check()?),
        },
        Group::Series(op) => match op {
            SeriesOp::Mul => Output::Series(cx.series()?.mul(&cx.series()?)?),
            SeriesOp::Wittmul => Output::Series(cx.series()?.witt_mul(&cx.series()?)?),
            SeriesOp::Inv => Output::Series(cx.series()?.inverse()),
            SeriesOp::Factor => Output::Witt(cx.series()?.factor()),
            SeriesOp::Ghostseries => Output::Plain(cx.series()?.ghost()),
        },
        Group::Formal(op) => match op {
            FormalOp::Add => Output::Formal(cx.formal()?.add(&cx.formal()?)?),
            FormalOp::Mul => Output::Formal(cx.formal()?.mul(&cx.formal()?)?),
            FormalOp::Frob { k } => Output::Formal(cx.formal()?.frobenius(*k)?),
            FormalOp::Versch { k } => Output::Formal(cx.formal()?.verschiebung(*k)?),
            FormalOp::Trace => Output::Elem(cx.formal()?.trace()),
            FormalOp::Mghost => Output::Ghost(cx.formal()?.modified_ghost()),
            FormalOp::Normalform => Output::Witt(cx.formal()?.normal_form()),
        },
        Group::Cycles(op) => match op {
            CyclesOp::Mul => Output::Cycles(cx.cycles()?.mul(&cx.cycles()?)?),
            CyclesOp::Toseries => Output::Series(cx.cycles()?.to_series()),
        },
        Group::Ptyp { p, op } => match op {
            PtypOp::Add => Output::Ptyp(cx.ptyp(*p)?.add(&cx.ptyp(*p)?)?),
            PtypOp::Mul => Output::Ptyp(cx.ptyp(*p)?.mul(&cx.ptyp(*p)?)?),
            PtypOp::V => Output::Ptyp(cx.ptyp(*p)?.verschiebung()),
            PtypOp::F => Output::Ptyp(cx.ptyp(*p)?.frobenius()?),
            PtypOp::Ghost => Output::Ghost(cx.ptyp(*p)?.ghost()),
            PtypOp::Unghost => {
                let p = need_p(*p)?;
                Output::Ptyp(PTypicalWitt::from_ghost(p, &cx.ghost()?)?)
            }
            PtypOp::Artinhasse => Output::Series(artin_hasse_coeffs(need_p(*p)?, cx.global.prec.unwrap_or(8))?),
            PtypOp::Embed => Output::Series(cx.ptyp(*p)?.embed_big()?),
        },
        Group::Univ(a) => {
            let kind = PolyKind::from_parts(a.kind.name(), a.p, a.d, a.k)?;
            Output::Univ(gen_polys(kind, a.n)?)
        }
        Group::Endo(op) => match op {
            EndoOp::Charpoly => {
                let m = cx.matrix()?;
                Output::Series(m.char_poly(cx.global.prec.unwrap_or(m.dim())))
            }
            EndoOp::Traces => {
                let m = cx.matrix()?;
                Output::Ghost(m.trace_powers(cx.global.prec.unwrap_or(m.dim())))
            }
            EndoOp::Dsum => Output::Matrix(cx.matrix()?.direct_sum(&cx.matrix()?)?),
            EndoOp::Tensor => Output::Matrix(cx.matrix()?.tensor(&cx.matrix()?)?),
            EndoOp::Versch { i } => Output::Matrix(cx.matrix()?.companion_verschiebung(*i)?),
            EndoOp::Frob { k } => Output::Matrix(cx.matrix()?.frobenius(*k)?),
            EndoOp::Norm { d } => Output::Matrix(cx.matrix()?.norm(*d)?),
            EndoOp::Ext { j } => Output::Matrix(cx.matrix()?.exterior_power(*j)?),
            EndoOp::Fromrational => {
                let v = cx.ops.next()?;
                Output::Virtual(rational_pair(&v, &cx.ring)?)
            }
            EndoOp::Virtualch => Output::Series(cx.virtual_endo()?.virtual_char(cx.global.prec.unwrap_or(8))),
        },
    })
}
