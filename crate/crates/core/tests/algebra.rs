use proptest::prelude::*;
use qconv::{Gf2, Gf4, Poly2, Poly4, RatFn2, RatMatrix, RatMatrix2, RatMatrix4, Substitution};

fn m2(rows: &[&[&str]]) -> RatMatrix2 {
    RatMatrix2::parse_rows(rows).unwrap()
}

fn m4(rows: &[&[&str]]) -> RatMatrix4 {
    RatMatrix4::parse_rows(rows).unwrap()
}

/// Transfer polynomial of the [3,1,1] example code.
fn hb_example() -> RatMatrix2 {
    m2(&[&["1+D^2", "1+D^3", "1+D^2+D^3"], &["D+D^3", "D+D^2+D^3", "D+D^2"]])
}

/// Row spaces over F(D) agree when stacking does not raise the rank.
fn same_row_space<F: qconv::Field>(a: &RatMatrix<F>, b: &RatMatrix<F>) -> bool {
    let ra = a.rank().unwrap();
    let rb = b.rank().unwrap();
    let mut rows: Vec<Vec<_>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    rows.extend((0..b.rows()).map(|i| b.row(i).to_vec()));
    let stacked = RatMatrix::from_rows(rows).unwrap();
    ra == rb && stacked.rank().unwrap() == ra
}

#[test]
fn substitute_square_matches_hand_result() {
    let p = m2(&[&["1+D", "1", "1+D"]]);
    assert_eq!(p.substitute(Substitution::Square), m2(&[&["1+D^2", "1", "1+D^2"]]));
    let q = m2(&[&["0", "D", "D"]]);
    assert_eq!(q.substitute(Substitution::Reflect), m2(&[&["0", "1/D", "1/D"]]));
    let c = m2(&[&["1", "0"], &["1", "1"]]);
    assert_eq!(c.substitute(Substitution::Square), c);
    assert_eq!(c.substitute(Substitution::Reflect), c);
}

#[test]
fn left_inverse_rate_half_example() {
    let m = m2(&[&["1+D^2"], &["1+D+D^2"]]);
    let l = m.left_inverse().unwrap();
    assert!(l.mul(&m).unwrap().is_identity());
    // the hand-derived FIR inverse is also valid
    let fir = m2(&[&["1+D", "D"]]);
    assert!(fir.mul(&m).unwrap().is_identity());
}

#[test]
fn left_inverse_of_example_transfer() {
    let m = hb_example().transpose();
    let l = m.left_inverse().unwrap();
    assert_eq!((l.rows(), l.cols()), (2, 3));
    assert!(l.mul(&m).unwrap().is_identity());
    let published = m2(&[
        &["1/(D+D^3)", "1/(D+D^2+D^3)", "0"],
        &["1/(D^2+D^3)", "1/(D^2+D^3+D^4)", "0"],
    ]);
    assert!(published.mul(&m).unwrap().is_identity());
}

#[test]
fn left_inverse_identity_and_rank_deficiency() {
    let i2 = RatMatrix2::identity(2);
    assert_eq!(i2.left_inverse().unwrap(), i2);
    let deficient = m2(&[&["1+D", "D+D^2"], &["1", "D"]]);
    assert!(matches!(
        deficient.left_inverse(),
        Err(qconv::AlgebraError::RankDeficient { expected: 2, found: 1 })
    ));
}

#[test]
fn moore_penrose_when_gram_is_invertible() {
    let m = m2(&[&["1+D^2"], &["1+D+D^2"]]);
    let l = m.left_inverse_moore_penrose().unwrap();
    assert!(l.mul(&m).unwrap().is_identity());
    // (1, 1)ᵀ has Gram matrix 1 + 1 = 0 in characteristic 2
    let singular = m2(&[&["1"], &["1"]]);
    assert_eq!(singular.left_inverse_moore_penrose(), Err(qconv::AlgebraError::SingularGram));
    assert!(singular.left_inverse().is_ok());
}

#[test]
fn null_space_examples() {
    let m = m2(&[&["1+D^2"], &["1+D+D^2"]]);
    let g = m.null_space_basis().unwrap();
    assert_eq!(g, m2(&[&["1+D+D^2", "1+D^2"]]));
    let alt = m2(&[&["1", "(1+D^2)/(1+D+D^2)"]]);
    assert!(same_row_space(&g, &alt));
    assert!(alt.mul(&m).unwrap().is_zero());

    let m = hb_example().transpose();
    let g = m.null_space_basis().unwrap();
    assert!(g.mul(&m).unwrap().is_zero());
    assert!(same_row_space(&g, &m2(&[&["D^2", "1+D^2", "1+D^2"]])));
    assert_eq!(g, m2(&[&["D^2", "1+D^2", "1+D^2"]]));

    let m = m2(&[&["1"], &["0"]]);
    assert_eq!(m.null_space_basis().unwrap(), m2(&[&["0", "1"]]));
}

#[test]
fn minors_gcd_examples() {
    let g = m2(&[&["D^2", "1+D^2", "1+D^2"]]);
    assert_eq!(g.minors_gcd().unwrap(), Poly2::one());
    assert!(g.is_non_catastrophic().unwrap());
    let g = m2(&[&["1+D", "1+D^2"]]);
    assert_eq!(g.minors_gcd().unwrap(), "1+D".parse().unwrap());
    assert!(!g.is_non_catastrophic().unwrap());
    assert_eq!(RatMatrix2::identity(3).minors_gcd().unwrap(), Poly2::one());
    let g = m2(&[&["D", "D+D^2"]]);
    assert!(g.is_non_catastrophic().unwrap());
}

#[test]
fn gf4_example_identities() {
    let hq = m4(&[&["1+D", "1+w*D", "1+w2*D"]]);
    let isf = m4(&[&["1", "1", "1"]]);
    assert!(isf.mul(&hq.transpose()).unwrap().is_identity());
    let gq = m4(&[&["0", "1+w2*D", "1+w*D"], &["1+w*D", "1+D", "0"]]);
    assert!(gq.mul(&hq.transpose()).unwrap().is_zero());
    assert_eq!(gq.rank().unwrap(), 2);
    let derived = hq.transpose().null_space_basis().unwrap();
    assert!(same_row_space(&derived, &gq));
}

#[test]
fn unimodular_reduction_gives_polynomial_inverse() {
    let m = m2(&[&["1+D^2"], &["1+D+D^2"]]);
    let (u, t) = m.unimodular_reduction(&Default::default()).unwrap();
    assert!(u.det().unwrap().as_poly().unwrap().degree() == Some(0));
    assert!(t.is_identity());
    let l = u.select_rows(0..1);
    assert!(l.is_polynomial());
    assert!(l.mul(&m).unwrap().is_identity());
}

#[test]
fn row_reduction_lowers_total_degree() {
    // rows (1, D) and (D, 1+D^2): leading coefficients (0,1),(0,1) are dependent
    let g = m2(&[&["1", "D"], &["D", "1+D^2"]]);
    let r = g.row_reduced().unwrap();
    assert!(same_row_space(&g, &r));
    let total: usize = r.row_degrees().iter().sum();
    assert!(total < g.row_degrees().iter().sum::<usize>());
    assert_eq!(r.minors_gcd().unwrap(), g.minors_gcd().unwrap());
}

#[test]
fn reduce_row_modulo_finds_short_representative() {
    let g = m2(&[&["D^2", "1+D^2", "1+D^2"]]);
    let row: Vec<Poly2> = ["1+D^3", "D+D^3", "D+D^3"].iter().map(|s| s.parse().unwrap()).collect();
    // row = 1·(1,0,0) + D·g  → reduces to (1, 0, 0)
    let reduced = g.reduce_row_modulo(&row).unwrap();
    assert_eq!(reduced, vec![Poly2::one(), Poly2::zero(), Poly2::zero()]);
}

#[test]
fn det_over_gf4() {
    let a = m4(&[&["1", "w"], &["w", "1"]]);
    // 1 - ω² = 1 + ω̄ = ω
    assert_eq!(a.det().unwrap(), qconv::RatFn4::constant(Gf4::OMEGA));
}

fn poly_strategy() -> impl Strategy<Value = Poly2> {
    proptest::collection::vec(any::<bool>(), 0..=4)
        .prop_map(|bits| Poly2::from_coeffs(bits.into_iter().map(Gf2::new).collect()))
}

fn matrix_strategy() -> impl Strategy<Value = RatMatrix2> {
    (2usize..=4, 1usize..=2).prop_flat_map(|(n, r)| {
        proptest::collection::vec(poly_strategy(), n * r).prop_map(move |entries| {
            let rows = entries.chunks(r).map(|c| c.iter().cloned().map(RatFn2::from).collect()).collect();
            RatMatrix2::from_rows(rows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_and_kernel_postconditions(m in matrix_strategy()) {
        prop_assume!(m.rows() >= m.cols());
        prop_assume!(m.rank().unwrap() == m.cols());
        let l = m.left_inverse().unwrap();
        prop_assert!(l.mul(&m).unwrap().is_identity());
        let g = m.null_space_basis().unwrap();
        prop_assert_eq!(g.rows(), m.rows() - m.cols());
        prop_assert!(g.mul(&m).unwrap().is_zero());
        prop_assert!(g.is_polynomial());
        if g.rows() > 0 {
            prop_assert_eq!(g.rank().unwrap(), g.rows());
        }
        let (u, t) = m.unimodular_reduction(&Default::default()).unwrap();
        prop_assert_eq!(u.det().unwrap().as_poly().and_then(|p| p.degree()), Some(0));
        let ut = u.mul(&m).unwrap();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expect = if i < m.cols() { t.get(i, j).clone() } else { RatFn2::zero() };
                prop_assert_eq!(ut.get(i, j), &expect);
            }
        }
    }

    #[test]
    fn poly_mul_commutes_and_add_is_involutive(a in poly_strategy(), b in poly_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a + &a).is_zero());
    }

    #[test]
    fn gf4_poly_mul_commutes(a in proptest::collection::vec(0usize..4, 0..5), b in proptest::collection::vec(0usize..4, 0..5)) {
        use qconv::Field;
        let pa = Poly4::from_coeffs(a.into_iter().map(Gf4::from_index).collect());
        let pb = Poly4::from_coeffs(b.into_iter().map(Gf4::from_index).collect());
        prop_assert_eq!(&pa * &pb, &pb * &pa);
        prop_assert!((&pa + &pa).is_zero());
    }
}
