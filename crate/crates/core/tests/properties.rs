use num_bigint::BigInt;
use proptest::prelude::*;
use wittkit::universal::poly_ring;
use wittkit::*;

fn z() -> Ring {
    Ring::integers()
}

fn zx() -> Ring {
    "poly:Z[x]".parse().unwrap()
}

fn small() -> impl Strategy<Value = i64> {
    -4i64..=4
}

fn ints(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(small(), len)
}

fn witt(ring: &Ring, v: &[i64]) -> WittVec {
    WittVec::from_ints(ring, v)
}

/// Coordinates `c₀ + c₁x` over ℤ[x].
fn poly_witt(v: &[(i64, i64)]) -> WittVec {
    let r = zx();
    let x = r.var("x").unwrap();
    let coords = v.iter().map(|&(a, b)| &r.from_int(a) + &x.mul_i64(b)).collect();
    WittVec::new(&r, coords).unwrap()
}

fn poly_coords(len: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((small(), -2i64..=2), len)
}

fn pad(w: &WittVec, len: usize) -> WittVec {
    let mut c = w.coords().to_vec();
    c.resize(len, w.ring().zero());
    WittVec::new(w.ring(), c).unwrap()
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
}

fn matrix(rows: &[Vec<i64>]) -> MatrixEndo {
    let r = z();
    let rows = rows.iter().map(|row| row.iter().map(|&x| r.from_int(x)).collect()).collect();
    MatrixEndo::from_rows(&r, rows).unwrap()
}

fn any_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(square)
}

fn check_ring_axioms(x: &WittVec, y: &WittVec, w: &WittVec) -> std::result::Result<(), TestCaseError> {
    let n = x.len();
    let r = x.ring();
    prop_assert_eq!(x.add(y).unwrap(), y.add(x).unwrap());
    prop_assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
    prop_assert_eq!(x.add(y).unwrap().add(w).unwrap(), x.add(&y.add(w).unwrap()).unwrap());
    prop_assert_eq!(x.mul(y).unwrap().mul(w).unwrap(), x.mul(&y.mul(w).unwrap()).unwrap());
    prop_assert_eq!(
        x.mul(&y.add(w).unwrap()).unwrap(),
        x.mul(y).unwrap().add(&x.mul(w).unwrap()).unwrap()
    );
    prop_assert_eq!(x.add(&WittVec::zero(r, n)).unwrap(), x.clone());
    prop_assert_eq!(x.mul(&WittVec::one(r, n)).unwrap(), x.clone());
    prop_assert!(x.add(&x.neg()).unwrap().is_zero());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(a in ints(3), b in ints(3), c in ints(3)) {
        let r: Ring = "poly:Z[x,y]".parse().unwrap();
        let mk = |v: &[i64]| {
            let x = r.var("x").unwrap();
            let y = r.var("y").unwrap();
            &(&r.from_int(v[0]) + &x.mul_i64(v[1])) + &(&x * &y).mul_i64(v[2])
        };
        let (p, q, s) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(r.parse_elem(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn series_group_and_factorization(v in ints(8), u in ints(8)) {
        let r = z();
        let s = UnitSeries::from_ints(&r, &v);
        let t = UnitSeries::from_ints(&r, &u);
        prop_assert!(s.mul(&s.inverse()).unwrap().is_one());
        prop_assert_eq!(s.factor().to_series(), s.clone());
        prop_assert_eq!(UnitSeries::from_ghost(&s.ghost()).unwrap(), s.clone());
        let lhs = s.mul(&t).unwrap().ghost().to_ghost_vec();
        let rhs = s.ghost().to_ghost_vec().add(&t.ghost().to_ghost_vec()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_exp_inverts_log_derivative(v in ints(6)) {
        let q = Ring::rationals();
        let s = UnitSeries::from_ints(&q, &v);
        let g = s.ghost();
        // h_k = g_k / k turns −t d/dt log into log.
        let h: Vec<Elem> = g.coeffs().iter().enumerate()
            .map(|(k, c)| c.exact_div_int(&BigInt::from(k + 1)).unwrap().mul_i64(-1)).collect();
        let e = UnitSeries::exp(&PlainSeries::new(&q, h).unwrap()).unwrap();
        prop_assert_eq!(e, s);
    }

    #[test]
    fn formal_sums_ghost_homomorphism(a in poly_coords(6), b in poly_coords(6)) {
        let x = poly_witt(&a).teichmuller();
        let y = poly_witt(&b).teichmuller();
        let prod = x.mul(&y).unwrap();
        prop_assert_eq!(prod.modified_ghost(), x.modified_ghost().mul(&y.modified_ghost()).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().modified_ghost(), x.modified_ghost().add(&y.modified_ghost()).unwrap());
        prop_assert_eq!(prod.normal_form(), prod.newton_normal_form().unwrap());
        prop_assert_eq!(prod.frobenius(2).unwrap(), x.frobenius(2).unwrap().mul(&y.frobenius(2).unwrap()).unwrap());
    }

    #[test]
    fn witt_ring_axioms_over_integers(a in ints(6), b in ints(6), c in ints(6)) {
        let r = z();
        check_ring_axioms(&witt(&r, &a), &witt(&r, &b), &witt(&r, &c))?;
    }

    #[test]
    fn witt_ring_axioms_with_torsion(a in ints(5), b in ints(5), c in ints(5), m in prop::sample::select(vec![4i64, 6])) {
        let r = Ring::modular(m).unwrap();
        check_ring_axioms(&witt(&r, &a), &witt(&r, &b), &witt(&r, &c))?;
    }

    #[test]
    fn witt_ring_axioms_over_polynomials(a in poly_coords(4), b in poly_coords(4), c in poly_coords(4)) {
        check_ring_axioms(&poly_witt(&a), &poly_witt(&b), &poly_witt(&c))?;
    }

    #[test]
    fn ghost_is_a_ring_map(a in poly_coords(6), b in poly_coords(6)) {
        let (x, y) = (poly_witt(&a), poly_witt(&b));
        prop_assert_eq!(x.add(&y).unwrap().ghost(), x.ghost().add(&y.ghost()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().ghost(), x.ghost().mul(&y.ghost()).unwrap());
        prop_assert_eq!(WittVec::from_ghost(&x.ghost()).unwrap(), x);
    }

    #[test]
    fn frobenius_after_verschiebung(a in ints(12), n in 1usize..=6, m in prop::sample::select(vec![0i64, 4])) {
        let r = if m == 0 { z() } else { Ring::modular(m).unwrap() };
        let x = witt(&r, &a);
        let lhs = x.verschiebung(n).unwrap().frobenius(n).unwrap();
        prop_assert_eq!(lhs, x.scalar(n as i64).restrict(12 / n).unwrap());
    }

    #[test]
    fn frobenius_reciprocity(a in ints(12), b in ints(12), n in 1usize..=6, m in prop::sample::select(vec![0i64, 4])) {
        let r = if m == 0 { z() } else { Ring::modular(m).unwrap() };
        let (x, y) = (witt(&r, &a), witt(&r, &b));
        let lhs = x.mul(&y.verschiebung(n).unwrap()).unwrap();
        let inner = x.frobenius(n).unwrap().mul(&y.restrict(12 / n).unwrap()).unwrap();
        prop_assert_eq!(lhs, pad(&inner, 12).verschiebung(n).unwrap());
    }

    #[test]
    fn frobenius_is_a_ring_map(a in ints(8), b in ints(8), k in 1usize..=4) {
        let r = Ring::modular(6).unwrap();
        let (x, y) = (witt(&r, &a), witt(&r, &b));
        prop_assert_eq!(x.add(&y).unwrap().frobenius(k).unwrap(), x.frobenius(k).unwrap().add(&y.frobenius(k).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().frobenius(k).unwrap(), x.frobenius(k).unwrap().mul(&y.frobenius(k).unwrap()).unwrap());
    }

    #[test]
    fn norm_identities(a in ints(6), b in ints(6), d in 1usize..=3) {
        let r = z();
        let (x, y) = (witt(&r, &a), witt(&r, &b));
        let n = x.norm(d).unwrap();
        prop_assert_eq!(n.frobenius(d).unwrap(), x.pow(d as u64).restrict(6 / d).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().norm(d).unwrap(), n.mul(&y.norm(d).unwrap()).unwrap());
        prop_assert_eq!(x.norm_via_polys(d).unwrap(), n);
    }

    #[test]
    fn norm_with_torsion(a in ints(6), b in ints(6), d in 1usize..=3) {
        let r = Ring::modular(6).unwrap();
        let (x, y) = (witt(&r, &a), witt(&r, &b));
        let n = x.norm(d).unwrap();
        prop_assert_eq!(n.frobenius(d).unwrap(), x.pow(d as u64).restrict(6 / d).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().norm(d).unwrap(), n.mul(&y.norm(d).unwrap()).unwrap());
        let lifted = witt(&z(), &a).norm(d).unwrap().map_ring(&r).unwrap();
        prop_assert_eq!(lifted, n);
    }

    #[test]
    fn base_change_is_functorial(a in ints(6), b in ints(6), k in 1usize..=3) {
        let (r, s) = (z(), Ring::modular(6).unwrap());
        let (x, y) = (witt(&r, &a), witt(&r, &b));
        let f = |w: &WittVec| w.map_ring(&s).unwrap();
        prop_assert_eq!(f(&x.add(&y).unwrap()), f(&x).add(&f(&y)).unwrap());
        prop_assert_eq!(f(&x.mul(&y).unwrap()), f(&x).mul(&f(&y)).unwrap());
        prop_assert_eq!(f(&x.frobenius(k).unwrap()), f(&x).frobenius(k).unwrap());
        prop_assert_eq!(f(&x.verschiebung(k).unwrap()), f(&x).verschiebung(k).unwrap());
    }

    #[test]
    fn universal_polynomials_agree_with_direct_arithmetic(a in ints(5), b in ints(5), m in prop::sample::select(vec![4i64, 6, 0])) {
        let r = if m == 0 { z() } else { Ring::modular(m).unwrap() };
        let (x, y) = (witt(&r, &a), witt(&r, &b));
        let sum = gen_polys(PolyKind::Sum, 5).unwrap();
        let prod = gen_polys(PolyKind::Prod, 5).unwrap();
        prop_assert_eq!(sum.eval_witt(&x, Some(&y)).unwrap(), x.add(&y).unwrap());
        prop_assert_eq!(prod.eval_witt(&x, Some(&y)).unwrap(), x.mul(&y).unwrap());
    }

    #[test]
    fn ptypical_ghost_is_a_ring_map(a in ints(3), b in ints(3), p in prop::sample::select(vec![2u64, 3])) {
        let r = z();
        let x = PTypicalWitt::from_ints(&r, p, &a).unwrap();
        let y = PTypicalWitt::from_ints(&r, p, &b).unwrap();
        prop_assert_eq!(x.add(&y).unwrap().ghost(), x.ghost().add(&y.ghost()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().ghost(), x.ghost().mul(&y.ghost()).unwrap());
        prop_assert_eq!(PTypicalWitt::from_ghost(p, &x.ghost()).unwrap(), x.clone());
        // F∘V = p, one coordinate shorter.
        let fv = x.verschiebung().frobenius().unwrap();
        prop_assert_eq!(fv, x.scalar(p).unwrap().restrict(2).unwrap());
    }

    #[test]
    fn ptypical_torsion_arithmetic(a in ints(3), b in ints(3)) {
        let r = Ring::modular(4).unwrap();
        let x = PTypicalWitt::from_ints(&r, 2, &a).unwrap();
        let y = PTypicalWitt::from_ints(&r, 2, &b).unwrap();
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        let lift = |v: &[i64]| PTypicalWitt::from_ints(&z(), 2, v).unwrap();
        let direct = lift(&a).mul(&lift(&b)).unwrap();
        let reduced = PTypicalWitt::new(&r, 2, direct.coords().iter().map(|c| c.map_to(&r).unwrap()).collect()).unwrap();
        prop_assert_eq!(x.mul(&y).unwrap(), reduced);
    }

    #[test]
    fn similarity_invariance(rows in square(3), ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6)) {
        let r = z();
        let f = matrix(&rows);
        let mut g = MatrixEndo::identity(&r, 3);
        let mut g_inv = MatrixEndo::identity(&r, 3);
        for &(i, j, c) in &ops {
            if i == j {
                continue;
            }
            let mut e = vec![vec![0i64; 3]; 3];
            let mut e_inv = vec![vec![0i64; 3]; 3];
            for k in 0..3 {
                e[k][k] = 1;
                e_inv[k][k] = 1;
            }
            e[i][j] = c;
            e_inv[i][j] = -c;
            g = g.mul(&matrix(&e)).unwrap();
            g_inv = matrix(&e_inv).mul(&g_inv).unwrap();
        }
        prop_assert_eq!(g.mul(&g_inv).unwrap(), MatrixEndo::identity(&r, 3));
        let conj = g.mul(&f).unwrap().mul(&g_inv).unwrap();
        prop_assert_eq!(conj.char_poly(6), f.char_poly(6));
    }

    #[test]
    fn verschiebung_substitutes_powers(rows in any_matrix(), i in 1usize..=3) {
        let f = matrix(&rows);
        let v = f.companion_verschiebung(i).unwrap();
        prop_assert_eq!(v.char_poly(12), f.char_poly(12).substitute_power(i));
        prop_assert_eq!(f.char_poly(12).factor().verschiebung(i).unwrap(), v.char_poly(12).factor());
    }

    #[test]
    fn matrix_model_is_a_ring_map(a in any_matrix(), b in any_matrix()) {
        let (f, g) = (matrix(&a), matrix(&b));
        let n = 8;
        prop_assert_eq!(f.char_poly(n).ghost().to_ghost_vec(), f.trace_powers(n));
        prop_assert_eq!(f.direct_sum(&g).unwrap().char_poly(n), f.char_poly(n).mul(&g.char_poly(n)).unwrap());
        prop_assert_eq!(f.tensor(&g).unwrap().char_poly(n), f.char_poly(n).witt_mul(&g.char_poly(n)).unwrap());
    }

    #[test]
    fn exterior_powers_are_char_poly_coefficients(rows in any_matrix()) {
        let f = matrix(&rows);
        let ch = f.char_poly(f.dim());
        for j in 1..=f.dim() {
            let tr = f.exterior_power(j).unwrap().trace();
            let expect = if j % 2 == 0 { tr } else { -&tr };
            prop_assert_eq!(ch.coeff(j), expect);
        }
    }
}

/// Cofactor expansion of `det(1 − tM)` over ℤ[t].
fn cofactor_det(m: &[Vec<Elem>], ring: &Ring) -> Elem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        let minor: Vec<Vec<Elem>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor, ring);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn berkowitz_matches_cofactor_expansion(rows in (1usize..=4).prop_flat_map(square)) {
        let rt: Ring = "poly:Z[t]".parse().unwrap();
        let t = rt.var("t").unwrap();
        let n = rows.len();
        let shifted: Vec<Vec<Elem>> = (0..n)
            .map(|i| (0..n).map(|j| {
                let delta = rt.from_int(i64::from(i == j));
                &delta - &t.mul_i64(rows[i][j])
            }).collect())
            .collect();
        let det = cofactor_det(&shifted, &rt);
        let ch = matrix(&rows).char_poly(n);
        let expect: Vec<Elem> = (1..=n).map(|k| ch.coeff(k).map_to(&rt).unwrap()).collect();
        let mut got = vec![rt.zero(); n];
        for (exps, c) in det.scalar_terms() {
            if exps[0] > 0 {
                got[exps[0] as usize - 1] = c.map_to(&rt).unwrap();
            }
        }
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn modular_berkowitz_commutes_with_reduction(rows in any_matrix()) {
        let z6 = Ring::modular(6).unwrap();
        let f = matrix(&rows);
        let reduced = MatrixEndo::from_rows(&z6, f.rows().iter().map(|r| r.iter().map(|e| e.map_to(&z6).unwrap()).collect()).collect()).unwrap();
        let lhs: Vec<Elem> = f.char_poly(3).coeffs().iter().map(|e| e.map_to(&z6).unwrap()).collect();
        let rhs = reduced.char_poly(3);
        prop_assert_eq!(rhs.coeffs(), &lhs[..]);
    }
}

#[test]
fn universal_polynomials_are_triangular() {
    for kind in [PolyKind::Sum, PolyKind::Prod] {
        let set = gen_polys(kind, 6).unwrap();
        for (i, m) in set.max_variable_index().into_iter().enumerate() {
            assert!(m <= i + 1, "{kind:?} coordinate {} uses index {m}", i + 1);
        }
    }
}

#[test]
fn universal_routes_agree() {
    for n in 1..=5 {
        for kind in [PolyKind::Sum, PolyKind::Prod, PolyKind::Frobenius(2)] {
            let a = gen_polys_via(kind, n, Route::Presentation).unwrap();
            let b = gen_polys_via(kind, n, Route::Ghost).unwrap();
            assert_eq!(a.polys(), b.polys(), "{kind:?} n={n}");
        }
    }
}

#[test]
fn universal_base_change() {
    // Reducing the integral polynomials mod 4 and evaluating there agrees
    // with evaluating over ℤ and reducing afterwards.
    let set = gen_polys(PolyKind::Prod, 4).unwrap();
    let z4 = Ring::modular(4).unwrap();
    let reduced = Ring::polynomial(z4.clone(), poly_ring(PolyKind::Prod, 4).vars().iter().cloned()).unwrap();
    let xs: Vec<i64> = vec![3, -1, 2, 5, 1, 7, -2, 6];
    let over_z: Vec<Elem> = xs.iter().map(|&v| z().from_int(v)).collect();
    let over_z4: Vec<Elem> = xs.iter().map(|&v| z4.from_int(v)).collect();
    for p in set.polys() {
        let lhs = p.map_to(&reduced).unwrap().evaluate(&over_z4, &z4).unwrap();
        let rhs = p.evaluate(&over_z, &z()).unwrap().map_to(&z4).unwrap();
        assert_eq!(lhs, rhs);
    }
}
