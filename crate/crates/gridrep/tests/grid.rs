//! Oracle and property tests for the grid data model.

use std::sync::Arc;

use gridrep::grid::*;
use gridrep::linalg::{Field, Matrix};
use proptest::prelude::*;

fn gf(p: u32) -> Field {
    Field::prime(p).unwrap()
}

fn shape(m: usize, n: usize) -> GridShape {
    GridShape::new(m, n).unwrap()
}

#[test]
fn thin_modules_validate_and_have_identity_maps() {
    let s = shape(2, 3);
    let full = thin_module(&ConvexMask::full(s), Field::Q).unwrap();
    assert!(full.validate().is_empty());
    assert_eq!(full.dim_grid(), vec![vec![1, 1], vec![1, 1], vec![1, 1]]);
    for a in s.arrows() {
        assert!(full.map(a).is_identity());
    }
}

#[test]
fn rectangle_generators_are_horizontal_epi_vertical_mono() {
    // k_{{1..i} × {j..n}} on a 3×3 grid.
    let s = shape(3, 3);
    for i in 1..=3 {
        for j in 1..=3 {
            let r = thin_module(&ConvexMask::rectangle(s, (1, i), (j, 3)), gf(101)).unwrap();
            let f = r.direction_flags();
            assert!(f.all_horizontal_epi && f.all_vertical_mono, "rectangle ({i},{j})");
        }
    }
}

#[test]
fn t_ij_support_is_complement_of_lower_rectangle() {
    let s = shape(3, 3);
    let t = thin_module(&ConvexMask::from_fn(s, |(x, y)| x > 1 || y > 2), Field::Q).unwrap();
    assert!(t.validate().is_empty());
    assert_eq!(t.dim_grid(), vec![vec![0, 1, 1], vec![0, 1, 1], vec![1, 1, 1]]);
    // Both families of maps are injective.
    let f = t.direction_flags();
    assert!(f.all_horizontal_mono && f.all_vertical_mono);
}

#[test]
fn non_convex_mask_is_rejected() {
    let s = shape(3, 1);
    let mask = ConvexMask::from_vertices(s, &[(1, 1), (3, 1)]).unwrap();
    assert!(!mask.is_convex());
    assert!(thin_module(&mask, Field::Q).is_err());
}

#[test]
fn anticommuting_square_is_reported() {
    let q = Field::Q;
    let s = shape(2, 2);
    let one = Matrix::identity(q, 1);
    let minus = Matrix::from_ints(q, 1, 1, &[-1]);
    // hmaps: (1,1)→(2,1), (1,2)→(2,2); vmaps: (1,1)→(1,2), (2,1)→(2,2).
    let x = GridRep::from_parts_unchecked(q, s, vec![1; 4], vec![one.clone(), one.clone()], vec![one.clone(), minus]);
    assert_eq!(x.validate(), vec![Violation::NonCommuting { corner: (1, 1) }]);
    assert!(GridRep::new(q, s, vec![1; 4], vec![one.clone(), one.clone()], vec![one.clone(), one]).is_ok());
}

#[test]
fn wrong_map_size_is_reported() {
    let q = Field::Q;
    let s = shape(2, 1);
    let x = GridRep::from_parts_unchecked(q, s, vec![2, 2], vec![Matrix::zeros(q, 3, 2)], vec![]);
    let v = x.validate();
    assert_eq!(v.len(), 1);
    assert!(matches!(v[0], Violation::MapSize { expected: (2, 2), found: (3, 2), .. }));
}

#[test]
fn standard_modules_have_expected_supports() {
    let s = shape(2, 3);
    let q = Field::Q;
    assert_eq!(projective(s, (1, 1), q).dim_grid(), vec![vec![1, 1]; 3]);
    assert_eq!(injective(s, (2, 3), q).dim_grid(), vec![vec![1, 1]; 3]);
    assert_eq!(projective(s, (1, 1), q), injective(s, (2, 3), q));
    // P_(2,1) is supported on {2} × {1, 2, 3}.
    assert_eq!(projective(s, (2, 1), q).dim_grid(), vec![vec![0, 1]; 3]);
    assert_eq!(simple(s, (1, 2), q).dim_grid(), vec![vec![0, 0], vec![1, 0], vec![0, 0]]);
    assert!(standard_module(s, StandardKind::Simple, (3, 1), q).is_err());
}

#[test]
fn direct_sums() {
    let s = shape(2, 2);
    let q = Field::Q;
    let p = projective(s, (1, 2), q);
    let z = GridRep::zero(q, s);
    assert_eq!(direct_sum(&p, &z).unwrap(), p);
    let pp = direct_sum(&p, &p).unwrap();
    assert_eq!(pp.dim_grid(), vec![vec![0, 0], vec![2, 2]]);
    let ss = direct_sum(&simple(s, (1, 1), q), &simple(s, (2, 2), q)).unwrap();
    assert_eq!(ss.dim_grid(), vec![vec![1, 0], vec![0, 1]]);
    assert!(direct_sum(&p, &projective(shape(2, 3), (1, 1), q)).is_err());
    assert!(direct_sum(&p, &projective(s, (1, 1), gf(2))).is_err());
}

#[test]
fn random_reps_are_deterministic_and_respect_constraints() {
    let s = shape(3, 3);
    let f = gf(101);
    for seed in 0..20 {
        for c in [RandomConstraint::None, RandomConstraint::EpiHorizontal, RandomConstraint::MonoVertical, RandomConstraint::Both] {
            let x = random_rep(s, 3, c, f, seed);
            assert_eq!(x, random_rep(s, 3, c, f, seed));
            assert!(x.validate().is_empty());
            assert!(x.dims().iter().all(|&d| d <= 3));
            let flags = x.direction_flags();
            // Rank oracle: every constrained map has full row/column rank.
            for a in s.arrows() {
                let mat = x.map(a);
                let r = mat.rref().rank();
                match (c, a.dir) {
                    (RandomConstraint::EpiHorizontal | RandomConstraint::Both, Direction::Horizontal) => {
                        assert_eq!(r, mat.rows())
                    }
                    (RandomConstraint::MonoVertical | RandomConstraint::Both, Direction::Vertical) => {
                        assert_eq!(r, mat.cols())
                    }
                    _ => {}
                }
            }
            if c == RandomConstraint::Both {
                assert!(flags.all_horizontal_epi && flags.all_vertical_mono);
            }
        }
    }
}

#[test]
fn bound_one_with_both_constraints_is_a_staircase() {
    let s = shape(4, 4);
    for seed in 0..30 {
        let x = random_rep(s, 1, RandomConstraint::Both, gf(7), seed);
        // Support closed leftwards (horizontal epi) and downwards (vertical mono).
        for (i, j) in s.vertices() {
            if x.dim((i, j)) == 1 {
                if i > 1 {
                    assert_eq!(x.dim((i - 1, j)), 1);
                }
                if j < 4 {
                    assert_eq!(x.dim((i, j + 1)), 1);
                }
            }
        }
    }
}

fn epi_p11_to_s11() -> GridMorphism {
    let q = Field::Q;
    let s = shape(1, 2);
    let p = Arc::new(projective(s, (1, 1), q));
    let t = Arc::new(simple(s, (1, 1), q));
    GridMorphism::new(p, t, vec![Matrix::identity(q, 1), Matrix::zeros(q, 0, 1)]).unwrap()
}

#[test]
fn kernel_of_projective_cover_of_simple() {
    let phi = epi_p11_to_s11();
    let sq = sub_quotient(&phi);
    assert_eq!(*sq.ker, projective(shape(1, 2), (1, 2), Field::Q));
    assert!(sq.coker.is_zero());
    assert_eq!(*sq.im, simple(shape(1, 2), (1, 1), Field::Q));
    assert!(sq.ker_incl.check().is_ok() && sq.coker_proj.check().is_ok());
    assert!(sq.im_factor.then(&sq.im_incl) == phi);
}

#[test]
fn sub_quotient_of_identity_and_zero() {
    let x = Arc::new(random_rep(shape(2, 2), 2, RandomConstraint::None, gf(5), 3));
    let id = GridMorphism::identity(x.clone());
    let sq = sub_quotient(&id);
    assert!(sq.ker.is_zero() && sq.coker.is_zero());
    assert_eq!(sq.im.dims(), x.dims());
    let z = GridMorphism::zero(x.clone(), x.clone());
    let sq = sub_quotient(&z);
    assert_eq!(sq.ker.dims(), x.dims());
    assert_eq!(sq.coker.dims(), x.dims());
    assert!(sq.im.is_zero());
}

#[test]
fn radical_and_top() {
    let q = Field::Q;
    let s = shape(1, 2);
    let simple11 = Arc::new(simple(s, (1, 1), q));
    let rt = radical_top(&simple11);
    assert!(rt.rad.is_zero());
    assert_eq!(rt.top.dims(), simple11.dims());
    // Incoming-image oracle: the radical of P_(1,1) on 1×2 is the image of the
    // single arrow, i.e. the vertex (1,2); the top is the simple at (1,1).
    let p = Arc::new(projective(s, (1, 1), q));
    let rt = radical_top(&p);
    assert_eq!(rt.rad.dims(), &[0, 1]);
    assert_eq!(*rt.top, simple(s, (1, 1), q));
}

#[test]
fn direction_flag_examples() {
    let q = Field::Q;
    let s = shape(2, 3);
    let z = GridRep::zero(q, s);
    let f = z.direction_flags();
    assert!(f.all_horizontal_epi && f.all_horizontal_mono && f.all_vertical_epi && f.all_vertical_mono);
    let p21 = projective(s, (2, 1), q);
    let f = p21.direction_flags();
    assert!(!f.all_horizontal_epi && f.all_horizontal_mono && f.all_vertical_epi && f.all_vertical_mono);
    assert_eq!(p21.first_failing_arrow(Direction::Horizontal, true).unwrap().source, (1, 1));
}

#[test]
fn duality_exchanges_projectives_and_injectives() {
    let s = shape(3, 2);
    let q = Field::Q;
    for v in s.vertices() {
        assert_eq!(projective(s, v, q).dual(), injective(s, s.opposite(v), q));
    }
}

fn arb_case() -> impl Strategy<Value = (usize, usize, usize, u64, u32)> {
    (1usize..=3, 1usize..=3, 0usize..=3, any::<u64>(), prop::sample::select(vec![2u32, 3, 101]))
}

fn arb_constraint() -> impl Strategy<Value = RandomConstraint> {
    prop::sample::select(vec![
        RandomConstraint::None,
        RandomConstraint::EpiHorizontal,
        RandomConstraint::MonoVertical,
        RandomConstraint::Both,
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructions_validate((m, n, b, seed, p) in arb_case(), c in arb_constraint()) {
        let x = random_rep(shape(m, n), b, c, gf(p), seed);
        prop_assert!(x.validate().is_empty());
        prop_assert!(x.dual().validate().is_empty());
        prop_assert_eq!(x.dual().dual(), x.clone());
        prop_assert_eq!(x.transpose().transpose(), x.clone());
        let x = Arc::new(x);
        let rt = radical_top(&x);
        prop_assert!(rt.rad.validate().is_empty() && rt.top.validate().is_empty());
        // The top is semisimple: all of its structure maps vanish.
        prop_assert!(rt.top.shape().arrows().all(|a| rt.top.map(a).is_zero()));
    }

    #[test]
    fn sub_quotient_rank_arithmetic((m, n, b, seed, p) in arb_case()) {
        let s = shape(m, n);
        let f = gf(p);
        let x = Arc::new(random_rep(s, b, RandomConstraint::None, f, seed));
        // A non-trivial morphism available without Hom computations: the
        // inclusion of the radical, whose cokernel is the top.
        let rt = radical_top(&x);
        let phi = rt.rad_incl.clone();
        let sq = sub_quotient(&phi);
        for v in s.vertices() {
            prop_assert_eq!(sq.ker.dim(v) + sq.im.dim(v), phi.source().dim(v));
            prop_assert_eq!(sq.im.dim(v) + sq.coker.dim(v), phi.target().dim(v));
        }
        prop_assert!(sq.ker.validate().is_empty() && sq.im.validate().is_empty() && sq.coker.validate().is_empty());
        prop_assert_eq!(sq.coker.dims(), rt.top.dims());
    }

    #[test]
    fn thin_sums_add_indicators(m in 1usize..=3, n in 1usize..=3, a in 0usize..9, b in 0usize..9) {
        let s = shape(m, n);
        let x = s.vertex(a % s.num_vertices());
        let y = s.vertex(b % s.num_vertices());
        let c = standard_support(s, StandardKind::Projective, x);
        let d = standard_support(s, StandardKind::Injective, y);
        let sum = direct_sum(&thin_module(&c, Field::Q).unwrap(), &thin_module(&d, Field::Q).unwrap()).unwrap();
        for v in s.vertices() {
            prop_assert_eq!(sum.dim(v), usize::from(c.contains(v)) + usize::from(d.contains(v)));
        }
        prop_assert!(sum.validate().is_empty());
    }

    #[test]
    fn direction_flags_invariant_under_basis_change((m, n, b, seed, p) in arb_case(), c in arb_constraint()) {
        use rand::SeedableRng;
        let x = random_rep(shape(m, n), b, c, gf(p), seed);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let g: Vec<Matrix> = x.dims().iter().map(|&d| Matrix::random_invertible(x.field(), d, &mut rng)).collect();
        let y = x.change_basis(&g).unwrap();
        prop_assert!(y.validate().is_empty());
        prop_assert_eq!(x.direction_flags(), y.direction_flags());
    }
}
