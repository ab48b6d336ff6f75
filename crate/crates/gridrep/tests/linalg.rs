//! Oracle tests for the exact linear algebra layer.

use gridrep::linalg::{Field, Matrix, Poly, Scalar};
use proptest::prelude::*;

fn gf(p: u32) -> Field {
    Field::prime(p).unwrap()
}

/// Determinant by cofactor expansion: an independent oracle for small sizes.
fn det_cofactor(m: &Matrix) -> Scalar {
    let n = m.rows();
    let f = m.field();
    if n == 0 {
        return Scalar::one(f);
    }
    let mut acc = Scalar::zero(f);
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = m.select_rows(&rows).select_cols(&cols);
        let term = m.get(0, j).mul(&det_cofactor(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn eval(p: &Poly, x: &Scalar) -> Scalar {
    p.coeffs().iter().rev().fold(Scalar::zero(p.field()), |acc, c| acc.mul(x).add(c))
}

#[test]
fn rref_identity_and_zero() {
    let q = Field::Q;
    let id = Matrix::identity(q, 3);
    let rr = id.rref();
    assert_eq!(rr.r, id);
    assert_eq!(rr.rank(), 3);
    let z = Matrix::zeros(q, 2, 4);
    let rr = z.rref();
    assert_eq!(rr.r, z);
    assert_eq!(rr.rank(), 0);
}

#[test]
fn rref_rank_one_by_hand() {
    // [[1,2],[2,4]] reduces to [[1,2],[0,0]] by subtracting twice row one.
    let m = Matrix::from_int_rows(Field::Q, &[vec![1, 2], vec![2, 4]]);
    let rr = m.rref();
    assert_eq!(rr.rank(), 1);
    assert_eq!(rr.pivots, vec![0]);
    assert_eq!(rr.r, Matrix::from_int_rows(Field::Q, &[vec![1, 2], vec![0, 0]]));
}

#[test]
fn nullspace_examples() {
    assert_eq!(Matrix::identity(Field::Q, 4).nullspace().cols(), 0);
    let z = Matrix::zeros(gf(7), 3, 3);
    let ns = z.nullspace();
    assert_eq!(ns.cols(), 3);
    assert_eq!(ns.rank(), 3);
    // Over GF(2) the kernel of [1 1] is {00, 11}: enumerate all four vectors.
    let f2 = gf(2);
    let m = Matrix::from_ints(f2, 1, 2, &[1, 1]);
    let ns = m.nullspace();
    assert_eq!(ns, Matrix::from_ints(f2, 2, 1, &[1, 1]));
    let mut kernel = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            let v = Matrix::from_ints(f2, 2, 1, &[a, b]);
            if m.mul(&v).is_zero() {
                kernel.push((a, b));
            }
        }
    }
    assert_eq!(kernel, vec![(0, 0), (1, 1)]);
}

#[test]
fn solve_examples() {
    let q = Field::Q;
    let b = Matrix::from_ints(q, 3, 1, &[4, -1, 7]);
    assert_eq!(Matrix::identity(q, 3).solve(&b).unwrap(), Some(b.clone()));
    // [[1],[1]] x = (1,2): rank of A is 1 but rank of [A|b] is 2.
    let a = Matrix::from_ints(q, 2, 1, &[1, 1]);
    let rhs = Matrix::from_ints(q, 2, 1, &[1, 2]);
    assert_eq!(a.rank(), 1);
    assert_eq!(a.hstack(&rhs).rank(), 2);
    assert_eq!(a.solve(&rhs).unwrap(), None);
    let two = Matrix::from_ints(q, 1, 1, &[2]);
    let x = two.solve(&Matrix::from_ints(q, 1, 1, &[1])).unwrap().unwrap();
    assert_eq!(x.get(0, 0), Scalar::parse(q, "1/2").unwrap());
    assert!(a.solve(&Matrix::from_ints(q, 3, 1, &[1, 2, 3])).is_err());
}

#[test]
fn char_poly_factor_examples() {
    let q = Field::Q;
    let fs = Matrix::identity(q, 4).char_poly_factors().unwrap();
    assert_eq!(fs, vec![(Poly::linear(q, 1), 4)]);
    let j = Matrix::from_int_rows(q, &[vec![0, 1], vec![0, 0]]);
    assert_eq!(j.char_poly_factors().unwrap(), vec![(Poly::linear(q, 0), 2)]);
    let d = Matrix::from_int_rows(q, &[vec![1, 0], vec![0, 2]]);
    assert_eq!(
        d.char_poly_factors().unwrap(),
        vec![(Poly::linear(q, 2), 1), (Poly::linear(q, 1), 1)]
    );
    assert!(Matrix::zeros(q, 2, 3).char_poly_factors().is_err());
}

#[test]
fn rotation_is_irreducible_over_q_but_splits_mod_5() {
    let rot = [vec![0, -1], vec![1, 0]];
    let over_q = Matrix::from_int_rows(Field::Q, &rot).char_poly_factors().unwrap();
    assert_eq!(over_q, vec![(Poly::from_ints(Field::Q, &[1, 0, 1]), 1)]);
    // x^2 + 1 = (x + 2)(x + 3) over GF(5); factors sort by constant term.
    let f5 = gf(5);
    let over_f5 = Matrix::from_int_rows(f5, &rot).char_poly_factors().unwrap();
    assert_eq!(over_f5, vec![(Poly::from_ints(f5, &[2, 1]), 1), (Poly::from_ints(f5, &[3, 1]), 1)]);
}

fn small_matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| Matrix::from_ints(field, rows, cols, &v))
}

fn any_field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Q), Just(gf(2)), Just(gf(3)), Just(gf(101))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in (any_field(), 0usize..6, 0usize..6).prop_flat_map(|(f, r, c)| small_matrix(f, r, c))) {
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.cols(), m.cols());
        prop_assert!(m.mul(&ns).is_zero());
        prop_assert_eq!(ns.rank(), ns.cols());
    }

    #[test]
    fn fraction_free_matches_gauss_jordan(m in (0usize..6, 0usize..7).prop_flat_map(|(r, c)| small_matrix(Field::Q, r, c))) {
        prop_assert_eq!(m.rref(), m.rref_gauss_jordan());
    }

    #[test]
    fn solve_is_exact(a in (any_field(), 1usize..5, 1usize..5).prop_flat_map(|(f, r, c)| small_matrix(f, r, c)),
                      seed in prop::collection::vec(-3i64..=3, 5)) {
        let x0 = Matrix::from_ints(a.field(), a.cols(), 1, &seed[..a.cols()]);
        let b = a.mul(&x0);
        let x = a.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn charpoly_matches_cofactor_determinant(m in (any_field(), 0usize..5).prop_flat_map(|(f, n)| small_matrix(f, n, n))) {
        let f = m.field();
        let n = m.rows();
        let cp = m.charpoly().unwrap();
        prop_assert_eq!(cp.degree(), Some(n));
        for t in 0..=(n as i64 + 1) {
            let x = Scalar::from_i64(f, t);
            let shifted = Matrix::identity(f, n).scale(&x).sub(&m);
            prop_assert_eq!(eval(&cp, &x), det_cofactor(&shifted));
        }
        // The factorization expands back to the characteristic polynomial.
        let prod = m.char_poly_factors().unwrap().iter()
            .fold(Poly::from_ints(f, &[1]), |acc, (g, e)| acc.mul(&g.pow(*e)));
        prop_assert_eq!(prod, cp);
    }

    #[test]
    fn canonical_residues(v in prop::collection::vec(-1000i64..1000, 1..10)) {
        let f = gf(101);
        let m = Matrix::from_ints(f, 1, v.len(), &v);
        for j in 0..v.len() {
            match m.get(0, j) {
                Scalar::Prime { value, p } => prop_assert!(value < p),
                _ => prop_assert!(false),
            }
        }
        let q = Matrix::from_ints(Field::Q, 1, v.len(), &v).scale(&Scalar::parse(Field::Q, "3/6").unwrap());
        for j in 0..v.len() {
            match q.get(0, j) {
                Scalar::Rational(r) => {
                    prop_assert!(r.denom() > &0.into());
                    prop_assert_eq!(num_integer::Integer::gcd(r.numer(), r.denom()), 1.into());
                }
                _ => prop_assert!(false),
            }
        }
    }
}
