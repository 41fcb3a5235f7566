//! Worked examples across modules, through the public API only.

use qharm::constructions::{
    f1_affine, f1_family, f1_section2, f2_ansatz_matrix, f2_rhs_check, g0_family, gsc, gsc_special,
    lift_step, reduced_operator, special_c, MultiIndex,
};
use qharm::diffops::{
    apply, conjugated_apply, conjugated_direct, dtilde, nabla, OperatorSpec, QSpec,
};
use qharm::harmonics::{
    character_trace, frobenius, hilbert_series, kernel_basis_generic, special_harmonic_delta_ek,
    special_harmonic_e1m,
};
use qharm::linalg::exact::det;
use qharm::repr::{partitions, standard_tableaux, Partition};
use qharm::ring::{int, rat};
use qharm::symfun::{closed_form, e_product, elementary, vandermonde, FormulaId, VarSubset};
use qharm::{monomial_basis, parse_poly, Error, Perm, Polynomial, QPoly, Rational};

type P = Polynomial<Rational>;

fn p(s: &str, n: usize) -> P {
    parse_poly(s, Some(n)).unwrap()
}

#[test]
fn polynomial_basics() {
    assert_eq!(&p("x1 - x2", 2) * &p("x1 + x2", 2), p("x1^2 - x2^2", 2));
    let delta: P = vandermonde(&VarSubset::all(3));
    assert_eq!(delta.len(), 6);
    assert_eq!(delta.partial(0, 2), p("2*x2 - 2*x3", 3));
    assert!(delta.partial(0, 3).is_zero());
    assert_eq!(delta.permute(&Perm::transposition(3, 0, 1)), -delta.clone());
    assert_eq!(
        p("x1^2 - x2^2", 2).exact_divide(&p("x1 - x2", 2)).unwrap(),
        p("x1 + x2", 2)
    );
    assert_eq!(
        p("x1", 2).exact_divide(&p("x2", 2)),
        Err(Error::NonExactDivision)
    );
    assert_eq!(monomial_basis(3, 2).len(), 6);
    let f = P::var(2, 0)
        .promote::<QPoly>()
        .scale(&QPoly::linear(int(1), int(1)));
    assert!(f.specialize(&int(-1)).unwrap().is_zero());
}

#[test]
fn operators_and_closed_forms() {
    let e2: P = elementary(2, &VarSubset::all(4));
    let op: OperatorSpec = "p2".parse().unwrap();
    assert_eq!(apply(&op, &e2).unwrap(), P::constant(4, int(-6)));
    let all = VarSubset::all(4);
    assert_eq!(
        closed_form(FormulaId::Nabla1E, &[2], &all).unwrap(),
        elementary::<Rational>(1, &all).scale(&int(3))
    );
    let prod = e_product::<Rational>(&Partition::new(vec![2, 2, 1]), &all);
    assert_eq!(
        closed_form(FormulaId::D2TildeEEE, &[2, 2, 1], &all).unwrap(),
        dtilde(&prod, 2, &all)
    );
    let g = e_product::<Rational>(&Partition::new(vec![2, 1]), &all);
    let d2: OperatorSpec = "dtilde:2".parse().unwrap();
    assert_eq!(
        conjugated_apply(&d2, &g).unwrap(),
        conjugated_direct(&d2, &g).unwrap()
    );
}

#[test]
fn first_lift() {
    assert_eq!(
        f1_section2(3).unwrap(),
        p("1/3*(x2 - x3)*(x2 + x3 + 4*x1)", 3)
    );
    assert_eq!(f1_family(5, &rat(1, 5)).unwrap(), f1_section2(5).unwrap());
    for (n, c) in [(5, int(0)), (6, int(1))] {
        let target = elementary::<Rational>(n as i64 - 4, &VarSubset::omitting(n, 0))
            .scale(&int(6 * qharm::ring::sign(n as i64 - 1)));
        assert_eq!(
            reduced_operator(&g0_family(n, &c).unwrap()).unwrap(),
            target
        );
    }
    let all = VarSubset::all(4);
    let alpha = MultiIndex::new(vec![0, 1, 0, 0]);
    let f = f1_affine(4, 1, &int(1), &int(2), &alpha).unwrap();
    let d = alpha.apply(&vandermonde::<Rational>(&all));
    assert_eq!(nabla(&f, 1, &all), d);
    assert_eq!(nabla(&f, 2, &all), d.partial(1, 1).scale(&int(2)));
}

#[test]
fn special_values_and_matrices() {
    assert_eq!(special_c(3).unwrap(), rat(5, 14));
    assert_eq!(special_c(5).unwrap(), rat(79, 320));
    assert_eq!(special_c(2).unwrap(), rat(-3, 8));
    assert_eq!(det(&f2_ansatz_matrix(3).unwrap()), int(192));
    assert_eq!(f2_ansatz_matrix(1), Err(Error::Singular));
    assert_eq!(
        gsc_special(6, 2).unwrap(),
        gsc(6, &special_c(6).unwrap(), 2)
    );
    assert!(f2_rhs_check(6, &int(0)).unwrap().passed());
}

#[test]
fn lifting() {
    let s = lift_step(2, &p("x1 - x2", 2)).unwrap();
    assert!(s.particular.is_zero());
    let all = VarSubset::all(3);
    let f0 = vandermonde::<Rational>(&all).partial(0, 1);
    let first = lift_step(3, &f0).unwrap();
    let second = lift_step(3, &first.particular).unwrap();
    for k in 1..=2 {
        assert_eq!(
            nabla(&second.particular, k, &all),
            -dtilde(&first.particular, k, &all)
        );
    }
}

#[test]
fn harmonic_spaces() {
    let k = kernel_basis_generic(2, 1).unwrap();
    assert_eq!(k.dim(), 1);
    assert_eq!(
        hilbert_series(2, &QSpec::Generic, 3).unwrap().dims,
        vec![1, 1, 0, 0]
    );
    assert_eq!(
        hilbert_series(3, &QSpec::Generic, 4).unwrap().dims,
        vec![1, 2, 2, 1, 0]
    );
    assert_eq!(
        hilbert_series(3, &QSpec::Value(int(0)), 3).unwrap().dims,
        vec![1, 2, 2, 1]
    );
    let swap = Partition::new(vec![2]);
    assert_eq!(
        character_trace(2, &QSpec::Generic, 1, &swap).unwrap(),
        int(-1)
    );
    let id = Partition::new(vec![1, 1, 1]);
    assert_eq!(
        character_trace(3, &QSpec::Value(int(0)), 3, &id).unwrap(),
        int(1)
    );
    let f = frobenius(3, &QSpec::Value(int(0)), 3).unwrap();
    assert_eq!(f.multiplicity(0, &Partition::new(vec![3])), 1);
    assert_eq!(f.multiplicity(3, &Partition::new(vec![1, 1, 1])), 1);
    for lambda in partitions(3) {
        let total: u64 = (0..=3).map(|d| f.multiplicity(d, &lambda)).sum();
        assert_eq!(total as usize, standard_tableaux(&lambda).len());
    }
}

#[test]
fn special_harmonics() {
    assert_eq!(special_harmonic_delta_ek(3, 1).unwrap().q0, rat(-1, 2));
    assert_eq!(special_harmonic_delta_ek(3, 2).unwrap().q0, int(-1));
    let c = special_harmonic_e1m(3, 2, 3).unwrap();
    assert_eq!(c.q0, rat(-1, 2));
    assert_eq!(c.polynomial, p("(x1 + x2)^3*(x1 - x2)", 3));
    assert!(c.passed());
    let c = special_harmonic_e1m(3, 2, 1).unwrap();
    assert_eq!((c.q0.clone(), c.degree), (int(-1), 2));
}
