//! Oracle and property tests for Krull–Schmidt decomposition.

use std::sync::Arc;

use gridrep::decomposition::*;
use gridrep::grid::*;
use gridrep::hom::*;
use gridrep::linalg::{Field, Matrix, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf(p: u32) -> Field {
    Field::prime(p).unwrap()
}

fn shape(m: usize, n: usize) -> GridShape {
    GridShape::new(m, n).unwrap()
}

fn arc(x: GridRep) -> Arc<GridRep> {
    Arc::new(x)
}

/// The eleven connected convex thin modules of the 2×2 grid.
fn thin_2x2(field: Field) -> Vec<GridRep> {
    let s = shape(2, 2);
    let all: Vec<Vertex> = s.vertices().collect();
    let mut out = Vec::new();
    for bits in 1u32..16 {
        let verts: Vec<Vertex> = all.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, v)| *v).collect();
        let mask = ConvexMask::from_fn(s, |v| verts.contains(&v));
        if !mask.is_convex() {
            continue;
        }
        // Connected: exclude the two antidiagonal pairs.
        if verts.len() == 2 && verts[0].0 != verts[1].0 && verts[0].1 != verts[1].1 {
            continue;
        }
        out.push(thin_module(&mask, field).unwrap());
    }
    out
}

/// Applies a random change of basis at every vertex.
fn scramble(x: &GridRep, seed: u64) -> GridRep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g: Vec<Matrix> =
        x.shape().vertices().map(|v| Matrix::random_invertible(x.field(), x.dim(v), &mut rng)).collect();
    x.change_basis(&g).unwrap()
}

fn sum_all(parts: &[GridRep]) -> GridRep {
    let arcs: Vec<Arc<GridRep>> = parts.iter().cloned().map(Arc::new).collect();
    direct_sum_all(&arcs).unwrap().sum.as_ref().clone()
}

/// The indecomposable with dimension grid `1 1 / 2 1 / 1 0` on 2 columns and
/// 3 rows: three pairwise distinct lines in `X(1,2) = k²`.
fn mixed_node(field: Field) -> GridRep {
    let s = shape(2, 3);
    let dims = vec![1, 1, 2, 1, 1, 0];
    let m = |r: usize, c: usize, e: &[i64]| Matrix::from_ints(field, r, c, e);
    let hmaps = vec![m(1, 1, &[1]), m(1, 2, &[1, 1]), m(0, 1, &[])];
    let vmaps = vec![m(2, 1, &[1, 0]), m(1, 1, &[1]), m(1, 2, &[1, -1]), m(0, 1, &[])];
    GridRep::new(field, s, dims, hmaps, vmaps).unwrap()
}

/// The α-family with every space doubled and the parameter replaced by the
/// Jordan block `[[α, 1], [0, α]]`: a self-extension of the α-family member
/// whose endomorphism ring is local of dimension greater than one.
fn alpha_family_jordan(alpha: i64, field: Field) -> GridRep {
    let base = alpha_family(&Scalar::from_i64(field, alpha), field);
    let s = base.shape();
    let dims: Vec<usize> = base.dims().iter().map(|d| 2 * d).collect();
    let double = |a: Arrow| {
        let m = base.map(a);
        let mut out = Matrix::from_fn(field, 2 * m.rows(), 2 * m.cols(), |r, c| {
            if r % 2 == c % 2 { m.get(r / 2, c / 2) } else { Scalar::zero(field) }
        });
        if a.dir == Direction::Horizontal && a.source == (1, 2) {
            out.set(0, 5, &Scalar::one(field));
        }
        out
    };
    let hmaps = s.arrows_in(Direction::Horizontal).map(double).collect();
    let vmaps = s.arrows_in(Direction::Vertical).map(double).collect();
    GridRep::new(field, s, dims, hmaps, vmaps).unwrap()
}

#[test]
fn identity_does_not_split() {
    let x = arc(mixed_node(gf(101)));
    assert!(fitting_split(&x, &GridMorphism::identity(x.clone())).unwrap().is_none());
}

#[test]
fn projector_splits_distinct_simples() {
    let f = gf(7);
    let s = shape(2, 1);
    let a = simple(s, (1, 1), f);
    let b = simple(s, (2, 1), f);
    let x = arc(direct_sum(&a, &b).unwrap());
    // Projector onto the first simple: identity at (1,1), zero at (2,1).
    let phi = GridMorphism::new(x.clone(), x.clone(), vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)]).unwrap();
    let split = fitting_split(&x, &phi).unwrap().expect("splits");
    assert_eq!(split.parts.len(), 2);
    assert!(split.iso.is_iso());
    let mut dims: Vec<Vec<usize>> = split.parts.iter().map(|p| p.0.dims().to_vec()).collect();
    dims.sort();
    assert_eq!(dims, vec![vec![0, 1], vec![1, 0]]);
}

#[test]
fn p_plus_p_splits_under_idempotent() {
    let f = gf(101);
    let s = shape(2, 2);
    let p = projective(s, (1, 1), f);
    let x = arc(direct_sum(&p, &p).unwrap());
    // φ = diag(0, 1) on every vertex, char poly x^4 (x − 1)^4.
    let comps = s
        .vertices()
        .map(|_| Matrix::from_ints(f, 2, 2, &[0, 0, 0, 1]))
        .collect::<Vec<_>>();
    let phi = GridMorphism::new(x.clone(), x.clone(), comps).unwrap();
    let factors = endo_charpoly(&phi).factor();
    assert_eq!(factors.len(), 2);
    let split = fitting_split(&x, &phi).unwrap().expect("splits");
    for (part, _) in &split.parts {
        assert!(is_isomorphic(part, &arc(p.clone()), 0).unwrap().is_iso());
    }
}

#[test]
fn fitting_split_rejects_foreign_morphism() {
    let f = gf(5);
    let s = shape(1, 2);
    let x = arc(projective(s, (1, 1), f));
    let y = arc(simple(s, (1, 1), f));
    let g = GridMorphism::zero(x.clone(), y);
    assert!(fitting_split(&x, &g).is_err());
}

#[test]
fn decompose_p_plus_p() {
    let f = gf(101);
    let p = projective(shape(3, 2), (1, 1), f);
    let x = arc(scramble(&direct_sum(&p, &p).unwrap(), 3));
    let report = decompose(&x, 1).unwrap();
    assert_eq!(report.summands.len(), 1);
    assert_eq!(report.summands[0].multiplicity, 2);
    assert_eq!(report.summands[0].certificate, Certificate::Certified);
    assert!(is_isomorphic(&report.summands[0].rep, &arc(p), 0).unwrap().is_iso());
    assert!(report.sound && report.total_dim_check && !report.merge_probabilistic);
}

#[test]
fn decompose_zero_is_empty() {
    let x = arc(GridRep::zero(gf(3), shape(2, 2)));
    let report = decompose(&x, 0).unwrap();
    assert!(report.summands.is_empty());
    assert!(report.sound && report.total_dim_check);
}

#[test]
fn alpha_family_is_a_single_summand() {
    let f = gf(101);
    let x = arc(alpha_family(&Scalar::one(f), f));
    assert!(x.validate().is_empty());
    assert!(x.direction_flags().all_horizontal_epi);
    let report = decompose(&x, 7).unwrap();
    assert_eq!(report.num_summands(), 1);
    let grid: Vec<Vec<usize>> = ALPHA_FAMILY_DIMS.iter().map(|r| r.to_vec()).collect();
    assert_eq!(report.summands[0].rep.dim_grid(), grid);
}

#[test]
fn alpha_family_certified_over_rationals() {
    let x = arc(alpha_family(&Scalar::from_i64(Field::Q, 2), Field::Q));
    assert!(matches!(is_indecomposable(&x, 0).unwrap(), Indecomposability::CertifiedYes));
}

#[test]
fn plant_and_recover_on_2x2() {
    let f = gf(101);
    let indecs = thin_2x2(f);
    assert_eq!(indecs.len(), 11);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..10u64 {
        let picks: Vec<usize> = (0..4).map(|_| rand::Rng::gen_range(&mut rng, 0..indecs.len())).collect();
        let planted: Vec<GridRep> = picks.iter().map(|&k| indecs[k].clone()).collect();
        let x = arc(scramble(&sum_all(&planted), trial));
        let report = decompose(&x, trial).unwrap();
        assert!(report.sound && report.total_dim_check && report.all_certified());
        let mut expected: Vec<Vec<Vec<usize>>> = planted.iter().map(|p| p.dim_grid()).collect();
        expected.sort();
        assert_eq!(report.dim_grids(), expected);
        // Thin modules of the same support are isomorphic, so the multiset
        // of dimension grids identifies the planted multiset.
        for s in &report.summands {
            let k = picks.iter().filter(|&&k| indecs[k].dims() == s.rep.dims()).count();
            assert_eq!(s.multiplicity, k);
        }
    }
}

#[test]
fn seed_stability() {
    let f = gf(101);
    for case in 0..4u64 {
        let x = arc(random_rep(shape(3, 2), 3, RandomConstraint::None, f, case));
        let reference = decompose(&x, 0).unwrap().dim_grids();
        for seed in 1..=10 {
            assert_eq!(decompose(&x, seed).unwrap().dim_grids(), reference, "case {case}, seed {seed}");
        }
    }
}

#[test]
fn krull_schmidt_uniqueness() {
    let f = gf(101);
    let x = arc(random_rep(shape(2, 3), 3, RandomConstraint::EpiHorizontal, f, 11));
    let a = decompose(&x, 1).unwrap();
    let b = decompose(&x, 2).unwrap();
    assert_eq!(a.summands.len(), b.summands.len());
    for s in &a.summands {
        let t = b
            .summands
            .iter()
            .find(|t| t.rep.dims() == s.rep.dims() && is_isomorphic(&s.rep, &t.rep, 5).unwrap().is_iso())
            .expect("matching class");
        assert_eq!(s.multiplicity, t.multiplicity);
    }
}

#[test]
fn end_dimension_consistency() {
    let f = gf(101);
    for seed in 0..6u64 {
        let x = arc(random_rep(shape(2, 2), 3, RandomConstraint::None, f, seed));
        let report = decompose(&x, seed).unwrap();
        let mut total = 0;
        for a in &report.summands {
            for b in &report.summands {
                total += hom_dim(&a.rep, &b.rep).unwrap() * a.multiplicity * b.multiplicity;
            }
        }
        assert_eq!(total, hom_dim(&x, &x).unwrap());
    }
}

#[test]
fn is_indecomposable_examples() {
    let f = gf(5);
    let s = shape(2, 2);
    let simple11 = arc(simple(s, (1, 1), f));
    assert!(matches!(is_indecomposable(&simple11, 0).unwrap(), Indecomposability::CertifiedYes));
    let double = arc(direct_sum(&simple11, &simple11).unwrap());
    match is_indecomposable(&double, 0).unwrap() {
        Indecomposability::No { witness, split } => {
            assert_eq!(witness.source().as_ref(), double.as_ref());
            assert_eq!(split.parts.len(), 2);
            assert!(split.iso.is_iso());
        }
        other => panic!("expected a split, got {other:?}"),
    }
    assert!(is_indecomposable(&arc(GridRep::zero(f, s)), 0).is_err());
}

#[test]
fn mixed_node_is_certified() {
    for f in [gf(101), Field::Q] {
        let x = arc(mixed_node(f));
        assert_eq!(x.dim_grid(), vec![vec![1, 1], vec![2, 1], vec![1, 0]]);
        assert!(matches!(is_indecomposable(&x, 0).unwrap(), Indecomposability::CertifiedYes));
    }
}

#[test]
fn small_characteristic_certificates_are_local() {
    // Over GF(2) and GF(3) the trace form is unreliable; a certified summand
    // must still have a local endomorphism ring with residue field k: every
    // endomorphism has a single eigenvalue in k.
    for (p, seed) in [(2u32, 0u64), (2, 1), (3, 2), (3, 3), (2, 4), (3, 5)] {
        let f = gf(p);
        let x = arc(random_rep(shape(3, 3), 2, RandomConstraint::EpiHorizontal, f, seed));
        let report = decompose(&x, seed).unwrap();
        assert!(report.sound && report.total_dim_check);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for s in report.summands.iter().filter(|s| s.certificate == Certificate::Certified) {
            let basis = hom_basis(&s.rep, &s.rep).unwrap();
            for _ in 0..5 {
                let coeffs: Vec<Scalar> = basis.iter().map(|_| Scalar::random(f, &mut rng)).collect();
                let phi = GridMorphism::combination(&basis, &coeffs);
                let factors = endo_charpoly(&phi).factor();
                assert_eq!(factors.len(), 1);
                assert_eq!(factors[0].0.degree(), Some(1));
            }
        }
    }
}

#[test]
fn local_endomorphism_ring_is_certified_in_every_characteristic() {
    for f in [gf(2), gf(3), gf(101), Field::Q] {
        let x = arc(scramble(&alpha_family_jordan(1, f), 9));
        assert!(hom_dim(&x, &x).unwrap() > 1);
        assert!(
            matches!(is_indecomposable(&x, 0).unwrap(), Indecomposability::CertifiedYes),
            "over {f}"
        );
    }
}

#[test]
fn distinct_family_members_split_apart() {
    // Over GF(3) the members at α = 1 and α = 2 are non-isomorphic, so
    // their sum has two certified classes.
    let f = gf(3);
    let a = alpha_family(&Scalar::from_i64(f, 1), f);
    let b = alpha_family(&Scalar::from_i64(f, 2), f);
    let x = arc(scramble(&direct_sum(&a, &b).unwrap(), 4));
    let report = decompose(&x, 0).unwrap();
    assert_eq!(report.summands.len(), 2);
    assert!(report.all_certified());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn decomposition_is_sound(seed in 0u64..1000, m in 1usize..4, n in 1usize..3) {
        let f = gf(101);
        let x = arc(random_rep(shape(m, n), 3, RandomConstraint::None, f, seed));
        let report = decompose(&x, seed).unwrap();
        prop_assert!(report.sound);
        prop_assert!(report.total_dim_check);
        // Re-summing the summands gives a representation isomorphic to the input.
        let parts: Vec<GridRep> = report
            .summands
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.rep.as_ref().clone(), s.multiplicity))
            .collect();
        if !parts.is_empty() {
            let resum = arc(sum_all(&parts));
            prop_assert!(is_isomorphic(&resum, &x, seed).unwrap().is_iso());
        }
    }

    #[test]
    fn split_parts_recompose(seed in 0u64..1000) {
        let f = gf(7);
        let x = arc(random_rep(shape(2, 2), 3, RandomConstraint::None, f, seed));
        let basis = hom_basis(&x, &x).unwrap();
        for b in &basis {
            if let Some(split) = fitting_split(&x, b).unwrap() {
                prop_assert!(split.iso.is_iso());
                let total: usize = split.parts.iter().map(|p| p.0.total_dim()).sum();
                prop_assert_eq!(total, x.total_dim());
            }
        }
    }
}
