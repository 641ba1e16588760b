use super::*;
use crate::corpus::{category_names, load_category, load_triangulation};
use crate::exactnum::{Cyclotomic, Rational};

const SMALL: [&str; 8] = ["s3_one_tet", "s3_two_tet", "s3_three_tet", "rp3", "rp3_two_vertex", "l31", "s2xs1", "quaternionic"];

fn prepared(name: &str) -> Prepared {
    Prepared::new(load_triangulation(name).unwrap()).unwrap()
}

#[test]
fn fpt_matches_brute_force_per_cocycle() {
    for tname in SMALL {
        let p = prepared(tname);
        for cname in category_names() {
            let cat = load_category(cname).unwrap();
            let brute = brute_force_state_sum(&p, &cat, 10_000_000).unwrap();
            let fast = invariant(&p, &cat, InvariantOptions::default()).unwrap();
            for s in &fast.per_cocycle {
                let b = brute.per_cocycle.get(&s.cocycle).cloned().unwrap_or_else(|| Cyclotomic::zero(cat.order()));
                assert_eq!(s.value, b, "{tname} {cname} cocycle {}", s.cocycle);
            }
            assert_eq!(fast.total, brute.total, "{tname} {cname}");
            eprintln!("{tname} {cname} {:?}", fast.total.approx());
        }
    }
}

fn relabelled(name: &str, seed: u64) -> Prepared {
    use crate::triangulation::{skeleton, Perm};
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let even: Vec<Perm> = Perm::all().into_iter().filter(|p| p.sign() > 0).collect();
    let base = load_triangulation(name).unwrap();
    let n = base.size();
    // keep tetrahedron 0 in place so the global orientation is preserved
    let mut tet_map: Vec<usize> = (0..n).collect();
    tet_map[1..].shuffle(&mut rng);
    let vertex_maps: Vec<Perm> = (0..n).map(|_| *even.choose(&mut rng).unwrap()).collect();
    let tri = base.relabel(&tet_map, &vertex_maps);
    let skel = skeleton(&tri);
    let flip: Vec<bool> = (0..skel.num_edges()).map(|_| rng.gen()).collect();
    Prepared::with_skeleton(tri, skel.with_flipped_edges(&flip)).unwrap()
}

#[test]
fn relabelling_and_edge_flips_preserve_value() {
    for tname in ["rp3", "rp3_two_vertex", "s3_two_tet", "quaternionic"] {
        for cname in ["z2_minus", "z3_k1_minus", "z2z2_hyp_plus"] {
            let cat = load_category(cname).unwrap();
            let want = invariant(&prepared(tname), &cat, InvariantOptions::default()).unwrap().total;
            for seed in 0..6 {
                let got = invariant(&relabelled(tname, seed), &cat, InvariantOptions::default()).unwrap().total;
                assert_eq!(got, want, "{tname} {cname} seed {seed}");
            }
        }
    }
}

#[test]
fn projective_space_matches_closed_form() {
    // (2 +- sqrt 2) / 4 for the Ising and SU(2)_2 type categories
    let order = 8;
    let sqrt2 = crate::exactnum::sqrt_natural(&2u32.into(), order).unwrap();
    let quarter = Rational::new(1.into(), 4.into());
    let two = Cyclotomic::from_integer(order, 2);
    for (cname, want) in [("z2_plus", (&two + &sqrt2).scale(&quarter)), ("z2_minus", (&two - &sqrt2).scale(&quarter))] {
        let cat = load_category(cname).unwrap();
        for tname in ["rp3", "rp3_two_vertex"] {
            let got = invariant(&prepared(tname), &cat, InvariantOptions::default()).unwrap().total;
            assert_eq!(got, want, "{tname} {cname}");
        }
    }
}

#[test]
fn sphere_is_inverse_global_dimension() {
    for cname in category_names() {
        let cat = load_category(cname).unwrap();
        let want = Cyclotomic::from_rational(cat.order(), &Rational::new(1.into(), (cat.global_dim() as i64).into()));
        for tname in ["s3_one_tet", "s3_two_tet", "s3_three_tet"] {
            assert_eq!(invariant(&prepared(tname), &cat, InvariantOptions::default()).unwrap().total, want, "{tname} {cname}");
        }
    }
}

#[test]
fn brute_force_guard_refuses_large_inputs() {
    let p = prepared("rp3_sum_rp3");
    let cat = load_category("z2z2_diag_plus").unwrap();
    let err = brute_force_state_sum(&p, &cat, 1000).unwrap_err();
    assert!(err.is_guard());
    assert!(matches!(err, StateSumError::TooManyColorings { .. }));
}

#[test]
fn cocycle_guard_refuses() {
    let p = prepared("quaternionic");
    let cat = load_category("z2_plus").unwrap();
    let err = invariant(&p, &cat, InvariantOptions { max_cocycles: 2, ..Default::default() }).unwrap_err();
    assert!(err.is_guard());
}

#[test]
fn literal_constants_differ_only_on_some_cocycles() {
    let p = prepared("s3_two_tet");
    let cat = load_category("z3_k1_plus").unwrap();
    let derived = invariant(&p, &cat, InvariantOptions::default()).unwrap();
    let literal = invariant(&p, &cat, InvariantOptions { constants: Constants::Literal, ..Default::default() }).unwrap();
    for (d, l) in derived.per_cocycle.iter().zip(&literal.per_cocycle) {
        if d.counts.triangle == 0 && d.counts.crooked_neg == 0 {
            assert_eq!(d.value, l.value);
        }
    }
    assert_ne!(derived.total, literal.total);
}

#[test]
fn tet_types_cover_every_cocycle_pattern() {
    let p = prepared("rp3_sum_rp3");
    let basis = crate::triangulation::z2_cocycle_basis(&p.skel);
    let all = crate::triangulation::enumerate_cocycles(&basis, p.skel.num_edges(), 1 << 20).unwrap();
    for alpha in all {
        let (types, counts) = classify_tetrahedra(&p, &alpha).unwrap();
        assert_eq!(types.len(), p.tri.size());
        let total = counts.empty + counts.triangle + counts.flat_pos + counts.flat_neg + counts.crooked_pos + counts.crooked_neg;
        assert_eq!(total, p.tri.size());
        // each tetrahedron sees 0 or 2 m edges per face
        assert_eq!((3 * counts.triangle + 4 * (total - counts.empty - counts.triangle)) % 2, 0);
    }
}
