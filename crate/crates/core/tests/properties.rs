use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use idealcover::cover::{covering_number, forced_ideals, is_eta_elementary, minimal_cover};
use idealcover::linalg::{all_vectors, Subspace};
use idealcover::paperlab::{build_null_ring, build_rnq, random_algebra, RnqContext};
use idealcover::radical::wedderburn_complement;
use idealcover::{
    enumerate_ideals, jacobson_radical, make_field, matrix_algebra, Eta, Guards, RingPresentation,
    Side,
};

fn algebra(p: u64, seed: u64) -> RingPresentation {
    random_algebra(p, 4, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn arb_algebra() -> impl Strategy<Value = RingPresentation> {
    (prop::sample::select(vec![2u64, 3]), any::<u64>()).prop_map(|(p, seed)| algebra(p, seed))
}

fn r12() -> RingPresentation {
    build_rnq(1, &make_field(2, 1).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn opposite_is_an_involution(ring in arb_algebra()) {
        prop_assert_eq!(ring.opposite().opposite().table(), ring.table());
    }

    #[test]
    fn right_is_left_of_opposite(ring in arb_algebra()) {
        let g = Guards::default();
        let right = covering_number(&ring, Side::Right, &g).unwrap().eta;
        let left_op = covering_number(&ring.opposite(), Side::Left, &g).unwrap().eta;
        prop_assert_eq!(right, left_op);
    }

    #[test]
    fn one_sided_numbers_bound_two_sided(ring in arb_algebra()) {
        let g = Guards::default();
        let [l, r, t] = Side::ALL.map(|s| covering_number(&ring, s, &g).unwrap().eta);
        prop_assert!(l <= t && r <= t);
        for eta in [l, r, t] {
            if let Eta::Finite(k) = eta {
                prop_assert!(k >= 3);
            }
        }
    }

    #[test]
    fn left_identity_blocks_right_covers(ring in arb_algebra()) {
        let g = Guards::default();
        if ring.has_left_identity() {
            prop_assert_eq!(covering_number(&ring, Side::Right, &g).unwrap().eta, Eta::Infinity);
            prop_assert_eq!(covering_number(&ring, Side::TwoSided, &g).unwrap().eta, Eta::Infinity);
        }
    }

    #[test]
    fn quotient_map_is_a_homomorphism(ring in arb_algebra(), pick in any::<prop::sample::Index>()) {
        let g = Guards::default();
        let lattice = enumerate_ideals(&ring, Side::TwoSided, &g).unwrap();
        let ideal = &lattice.ideals()[pick.index(lattice.len())];
        let q = ring.quotient(ideal).unwrap();
        prop_assert_eq!(q.ring.dim(), ring.dim() - ideal.dim());
        let elems: Vec<_> = ring.elements(&g).unwrap().collect();
        for a in elems.iter().step_by(3) {
            for b in elems.iter().step_by(5) {
                let lhs = q.project(&ring.mul(a, b));
                let rhs = q.ring.mul(&q.project(a), &q.project(b));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn quotient_by_radical_is_semisimple(ring in arb_algebra()) {
        let g = Guards::default();
        let j = jacobson_radical(&ring, &g).unwrap();
        let q = ring.quotient(&j).unwrap();
        prop_assert!(jacobson_radical(&q.ring, &g).unwrap().is_zero());
    }

    #[test]
    fn complement_is_a_subring(ring in arb_algebra()) {
        let g = Guards::default();
        let d = wedderburn_complement(&ring, &g).unwrap();
        let fp = ring.fp();
        prop_assert_eq!(d.s.dim() + d.j.dim(), ring.dim());
        prop_assert!(d.s.intersect(fp, &d.j).is_zero());
        for a in d.s.rows() {
            for b in d.s.rows() {
                prop_assert!(d.s.contains(fp, &ring.mul(a, b)));
            }
        }
    }

    #[test]
    fn forced_ideals_sit_in_every_returned_cover(ring in arb_algebra(), side in prop::sample::select(Side::ALL.to_vec())) {
        let g = Guards::default();
        if let Ok(res) = minimal_cover(&ring, side, &g) {
            for f in forced_ideals(&ring, side, &g).unwrap() {
                prop_assert!(res.cover.contains(&f));
            }
        }
    }

    #[test]
    fn field_units_have_order_dividing_q_minus_one(pk in prop::sample::select(vec![(2u64, 1usize), (2, 3), (3, 2), (5, 1), (7, 2)]), idx in any::<prop::sample::Index>()) {
        let f = make_field(pk.0, pk.1).unwrap();
        let q = f.order();
        let a = f.from_index(1 + idx.index(q - 1));
        prop_assert_eq!(f.pow(&a, (q - 1) as u64), f.one());
    }
}

#[test]
fn product_rule_takes_the_minimum() {
    let g = Guards::default();
    let null = build_null_ring(2, 2).unwrap();
    let f2 = matrix_algebra(1, &make_field(2, 1).unwrap()).unwrap();
    let m2 = matrix_algebra(2, &make_field(2, 1).unwrap()).unwrap();
    let cases = [
        (
            RingPresentation::direct_product(&[&r12(), &null]).unwrap(),
            Side::Left,
            3,
        ),
        (
            RingPresentation::direct_product(&[&r12(), &m2]).unwrap(),
            Side::Left,
            3,
        ),
        (
            RingPresentation::direct_product(&[&null, &f2]).unwrap(),
            Side::TwoSided,
            3,
        ),
        (
            RingPresentation::direct_product(&[
                &build_null_ring(3, 2).unwrap(),
                &build_null_ring(3, 1).unwrap(),
            ])
            .unwrap(),
            Side::TwoSided,
            4,
        ),
    ];
    for (ring, side, eta) in cases {
        assert_eq!(
            covering_number(&ring, side, &g).unwrap().eta,
            Eta::Finite(eta)
        );
    }
    assert!(RingPresentation::direct_product(&[&r12(), &build_null_ring(3, 1).unwrap()]).is_err());
}

#[test]
fn rnq_two_sided_lattice_and_radical_quotient() {
    let g = Guards::default();
    for (n, p, k) in [(1, 2, 1), (2, 2, 1), (1, 3, 1), (1, 2, 2), (2, 3, 1)] {
        let ctx = RnqContext::new(n, &make_field(p, k).unwrap()).unwrap();
        let ring = &ctx.ring;
        let lattice = enumerate_ideals(ring, Side::TwoSided, &g).unwrap();
        assert_eq!(lattice.len(), 3);
        assert_eq!(lattice.ideals()[1], ctx.radical());
        let q = ring.quotient(&ctx.radical()).unwrap();
        assert!(q.ring.has_identity());
        assert_eq!(q.ring.size(), (ctx.q() as u128).pow((n * n) as u32));
        assert!(jacobson_radical(&q.ring, &g).unwrap().is_zero());
        // the radical annihilates the ring from the left
        for x in ctx.radical().rows() {
            for i in 0..ring.dim() {
                assert!(ring.mul(x, &ring.basis(i)).is_zero());
            }
        }
    }
}

#[test]
fn left_ideals_of_rnq_are_the_corner_submodules() {
    // subspaces stable under left multiplication by S = {(A|0)} are exactly the left ideals
    let g = Guards::default();
    for (n, p) in [(1, 2), (1, 3)] {
        let ctx = RnqContext::new(n, &make_field(p, 1).unwrap()).unwrap();
        let ring = &ctx.ring;
        let corner: Vec<Vec<u32>> = (0..ring.dim())
            .map(|i| ring.basis(i).coords)
            .filter(|b| {
                let (_, v) = ctx.split(b);
                v.iter().all(|x| ctx.field().is_zero(x))
            })
            .collect();
        let lattice = enumerate_ideals(ring, Side::Left, &g).unwrap();
        let mut submodules = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let vectors: Vec<Vec<u32>> = all_vectors(p as u32, ring.dim()).collect();
        for a in &vectors {
            for b in &vectors {
                let s = Subspace::span(ring.fp(), ring.dim(), [a.clone(), b.clone()]);
                if seen.insert(s.clone())
                    && s.rows().iter().all(|r| {
                        corner
                            .iter()
                            .all(|c| s.contains(ring.fp(), &ring.mul(c, r)))
                    })
                {
                    submodules.push(s);
                }
            }
        }
        submodules.sort_by(|a, b| a.canonical_cmp(b));
        let ideals: Vec<&Subspace> = lattice.ideals().iter().map(|i| i.subspace()).collect();
        assert_eq!(ideals, submodules.iter().collect::<Vec<_>>());
    }
}

#[test]
fn elementary_families_have_jr_zero() {
    let g = Guards::default();
    let mut rings = vec![
        (build_null_ring(2, 2).unwrap(), Side::TwoSided),
        (build_null_ring(3, 2).unwrap(), Side::TwoSided),
    ];
    for (n, p) in [(1, 2), (2, 2), (1, 3)] {
        rings.push((
            build_rnq(n, &make_field(p, 1).unwrap()).unwrap(),
            Side::Left,
        ));
    }
    for (ring, side) in rings {
        assert!(is_eta_elementary(&ring, side, &g).unwrap().elementary);
        let j = jacobson_radical(&ring, &g).unwrap();
        for x in j.rows() {
            for i in 0..ring.dim() {
                assert!(ring.mul(x, &ring.basis(i)).is_zero());
            }
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let rings = [
        build_rnq(2, &make_field(3, 1).unwrap()).unwrap(),
        build_null_ring(3, 3).unwrap(),
        algebra(2, 99),
    ];
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            rings
                .iter()
                .flat_map(|r| {
                    Side::ALL.map(|s| {
                        let res = covering_number(r, s, &Guards::default()).unwrap();
                        (res.eta, res.certificate, res.nodes, res.cover)
                    })
                })
                .collect::<Vec<_>>()
        })
    };
    assert_eq!(run(1), run(4));
}
