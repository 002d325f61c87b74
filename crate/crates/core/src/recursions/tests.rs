use super::*;
use crate::algebra::rational::{int, ratio};
use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::error::Error;

fn inv(a_x: u32, a_y: u32, a_z: u32) -> IntRationalFunction {
    IntRationalFunction::inverse_of(LinearForm::unit_w(a_x, a_y, a_z))
}

fn product(forms: &[(u32, u32, u32)]) -> IntRationalFunction {
    IntRationalFunction::new(
        Polynomial::one(),
        forms.iter().map(|&(a, b, c)| (LinearForm::unit_w(a, b, c), 1)),
    )
}

#[test]
fn base_cases() {
    for family in [Family::G, Family::GX, Family::GY, Family::GYAlt] {
        let mut t = GTable::new(family);
        assert_eq!(*t.get(1), inv(0, 0, 0), "{family}");
    }
}

#[test]
fn size_two_closed_forms() {
    let mut r = Recursions::default();
    // G_2 = 1/((1−w−x)(1−w)(1−w−y))
    assert_eq!(*compute_g(2, &mut r.g), product(&[(1, 0, 0), (0, 0, 0), (0, 1, 0)]));
    // ĞX_2 = 1/((1−w−x)(1−w)(1−w−z))
    let gx2 = compute_gx(2, &mut r.gx);
    assert_eq!(*gx2, product(&[(1, 0, 0), (0, 0, 0), (0, 0, 1)]));
    // ĞY_2 = 1/((1−w−z)(1−w)(1−w−x)): the same factor multiset
    let gy2 = compute_gy(2, &mut r.gy);
    assert_eq!(*gy2, *gx2);
    assert!(gx2.equals(&gy2));
    assert_eq!(*compute_gy_alt(2, &mut r.gy_alt), *gx2);
}

#[test]
fn g_three_is_not_symmetric_in_forward_and_back() {
    let mut r = Recursions::default();
    assert!(r.g_symmetric_in_forward_back(1));
    assert!(r.g_symmetric_in_forward_back(2));
    assert!(!r.g_symmetric_in_forward_back(3));
}

#[test]
fn g_three_by_hand() {
    // G_3 = 1/(1−w−2x) · [G_1·G_2(w+y) + G_2·G_1(w+y+z)]
    let g1 = inv(0, 0, 0);
    let g2 = product(&[(1, 0, 0), (0, 0, 0), (0, 1, 0)]);
    let t1 = g1.mul(&g2.shift(ShiftSubstitution::new(0, 1, 0)));
    let t2 = g2.mul(&g1.shift(ShiftSubstitution::new(0, 1, 1)));
    let expected = t1.add(&t2).scale_inverse(LinearForm::unit_w(2, 0, 0));
    let mut t = GTable::new(Family::G);
    assert!(t.get(3).equals(&expected));
}

#[test]
fn extended_and_knuth_small() {
    let mut r = Recursions::default();
    for n in 1..=7 {
        assert!(r.verify_extended(n), "extended n={n}");
        assert!(r.verify_knuth(n), "knuth n={n}");
    }
}

#[test]
fn dual_recursion_small() {
    let mut r = Recursions::default();
    for n in 1..=7 {
        assert!(r.check_gy_recursions(n), "n={n}");
    }
}

#[test]
fn specializations_small() {
    let mut r = Recursions::default();
    for n in 1..=5 {
        assert!(r.check_gx_specialization(n), "GX n={n}");
        assert!(r.check_gy_specialization(n), "GY n={n}");
    }
}

#[test]
fn gx_gy_free_of_y() {
    let mut r = Recursions::default();
    for n in 1..=6 {
        for f in [r.gx.get(n), r.gy.get(n), r.gy_alt.get(n)] {
            assert_eq!(f.numerator().degree_in(Var::Y), 0);
            assert!(f.factors().all(|(l, _)| l.coeff(Var::Y) == 0));
        }
    }
}

#[test]
fn tree_expansion_has_catalan_many_products_of_2n_minus_1_factors() {
    let catalan = [1usize, 1, 2, 5, 14, 42];
    let mut t = GTable::new(Family::G);
    for n in 1..=6 {
        let trees = expand_over_trees(n);
        assert_eq!(trees.len(), catalan[n - 1]);
        assert!(trees.iter().all(|p| p.len() == 2 * n - 1));
        let parts: Vec<IntRationalFunction> = trees
            .iter()
            .map(|p| IntRationalFunction::new(Polynomial::one(), p.iter().map(|f| (*f, 1))))
            .collect();
        let refs: Vec<&IntRationalFunction> = parts.iter().collect();
        assert!(IntRationalFunction::sum(&refs).equals(&t.get(n)), "n={n}");
    }
}

#[test]
fn reduction_preserves_values() {
    let mut plain = GTable::new(Family::GX);
    let mut reduced = GTable::new(Family::GX).with_reduction(true);
    for n in 1..=6 {
        let a = plain.get(n);
        let b = reduced.get(n);
        assert!(a.equals(&b));
        assert!(b.factor_count() <= a.factor_count());
    }
}

#[test]
fn tracked_base_case_and_pole() {
    let mut ctx = TrackedContext::new(None, [int(0), ratio(1, 5), ratio(1, 7), ratio(1, 9)]);
    let g1 = ctx.g_at(1, &ratio(1, 3)).unwrap();
    assert_eq!(g1.eval(&int(0)).unwrap(), ratio(3, 2));
    assert!(matches!(ctx.g_at(1, &int(1)), Err(Error::PoleAtPoint)));
}

#[test]
fn tracked_size_two_in_x() {
    // 1/((1−w0−x)(1−w0)(1−w0−y0)) as a function of x
    let (w0, y0) = (ratio(1, 10), ratio(1, 6));
    let mut ctx = TrackedContext::new(Some(Var::X), [int(0), int(1), y0.clone(), ratio(1, 4)]);
    let g2 = ctx.g_at(2, &w0).unwrap();
    for s in [int(0), ratio(1, 3), ratio(-2, 7)] {
        let one = int(1);
        let expected = (&one / (&one - &w0 - &s)) / (&one - &w0) / (&one - &w0 - &y0);
        assert_eq!(g2.eval(&s).unwrap(), expected);
    }
}

#[test]
fn tracked_agrees_with_symbolic_small() {
    let mut t = GTable::new(Family::G);
    let points = [
        [ratio(1, 11), ratio(1, 13), ratio(1, 17), ratio(1, 19)],
        [ratio(1, 20), ratio(2, 25), ratio(1, 30), ratio(1, 21)],
    ];
    for pt in &points {
        for tracked in [Var::X, Var::Y, Var::Z] {
            let mut ctx = TrackedContext::new(Some(tracked), pt.clone());
            for n in 1..=4 {
                let u = ctx.g_at(n, &pt[0]).unwrap();
                let s = ratio(3, 4);
                let mut full = pt.clone();
                full[tracked.index()] = &pt[tracked.index()] * &s;
                let sym: RationalFunction<Rational> = t.get(n).to_rational();
                assert_eq!(u.eval(&s).unwrap(), sym.eval(&full).unwrap(), "n={n} {tracked:?}");
            }
        }
    }
}
