use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symquiv::decomposition::{generic_decompose, orthogonal_generic, symplectic_generic};
use symquiv::io::{QuiverFile, RepFile};
use symquiv::oracle::{act, invariant_dims, random_group_element};
use symquiv::quiver::Side;
use symquiv::reflections::{canonical_tubes, coxeter_dim, reduce_to_canonical, reflect_along, Direction};
use symquiv::representations::{
    check_form, ext_dim, gram_block, hom_dim, injective, projective, random_plain_rep, random_rep, Flavor,
};
use symquiv::semiinvariants::{c_eval_presentation, canonical_presentation, minimal_presentation};
use symquiv::types::{classify, defect, is_canonical_orientation};
use symquiv::{build_canonical, null_root, SymmetricQuiver, TameType};
use symquiv_exact::Q;

fn types_up_to(n: usize) -> Vec<TameType> {
    TameType::all_up_to(n)
}

fn any_type(n: usize) -> impl Strategy<Value = TameType> {
    prop::sample::select(types_up_to(n))
}

fn cyclic_type(n: usize) -> impl Strategy<Value = TameType> {
    prop::sample::select(types_up_to(n).into_iter().filter(TameType::is_cyclic).collect::<Vec<_>>())
}

/// Flips each σ-orbit of arrows together, so the result is again symmetric.
fn reorient(qs: &SymmetricQuiver, flips: &[bool]) -> SymmetricQuiver {
    let q = qs.quiver();
    let reversed: Vec<bool> = (0..q.num_arrows())
        .map(|a| {
            let rep = a.min(qs.sigma_arrow(a));
            flips[rep % flips.len()]
        })
        .collect();
    qs.with_orientation(&reversed)
}

fn symmetric_dims(qs: &SymmetricQuiver, raw: &[i64], flavor: Flavor) -> Vec<i64> {
    (0..qs.quiver().num_vertices())
        .map(|x| {
            let base = raw[x.min(qs.sigma_vertex(x)) % raw.len()];
            if flavor == Flavor::Symplectic && qs.vertex_side(x) == Side::Fixed {
                2 * base
            } else {
                base
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_form_is_symmetric_under_duality(
        ty in any_type(10),
        a in prop::collection::vec(-3i64..=3, 10),
        b in prop::collection::vec(-3i64..=3, 10),
    ) {
        let qs = build_canonical(ty).unwrap();
        let q = qs.quiver();
        let n = q.num_vertices();
        let (a, b) = (&a[..n], &b[..n]);
        prop_assert_eq!(q.euler(a, b), q.euler(&qs.delta(b), &qs.delta(a)));
    }

    #[test]
    fn tits_form_is_semidefinite_with_radical_spanned_by_null_root(
        ty in any_type(8),
        a in prop::collection::vec(-2i64..=2, 8),
    ) {
        let qs = build_canonical(ty).unwrap();
        let q = qs.quiver();
        let a = &a[..q.num_vertices()];
        let h = null_root(q).unwrap();
        let t = q.tits(a);
        prop_assert!(t >= 0);
        let multiple = (-2..=2).any(|k| a.iter().zip(&h).all(|(x, y)| *x == k * y));
        prop_assert_eq!(t == 0, multiple);
    }

    #[test]
    fn coxeter_transform_ignores_the_choice_of_numbering(
        ty in any_type(10),
        a in prop::collection::vec(-3i64..=3, 10),
        seed in any::<u64>(),
    ) {
        let qs = build_canonical(ty).unwrap();
        let q = qs.quiver();
        let a = &a[..q.num_vertices()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cur = q.clone();
        let mut order = Vec::new();
        for _ in 0..q.num_vertices() {
            let sinks: Vec<usize> = cur.sinks().into_iter().filter(|x| !order.contains(x)).collect();
            let x = *sinks.choose(&mut rng).unwrap();
            order.push(x);
            cur = cur.reverse_at(&[x]);
        }
        prop_assert_eq!(reflect_along(q, &order, a).unwrap(), coxeter_dim(q, a, Direction::Plus).unwrap());
    }

    #[test]
    fn coxeter_transform_preserves_euler_form(
        ty in any_type(10),
        a in prop::collection::vec(-3i64..=3, 10),
        b in prop::collection::vec(-3i64..=3, 10),
    ) {
        let q = build_canonical(ty).unwrap().quiver().clone();
        let n = q.num_vertices();
        let (a, b) = (&a[..n], &b[..n]);
        let ca = coxeter_dim(&q, a, Direction::Plus).unwrap();
        let cb = coxeter_dim(&q, b, Direction::Plus).unwrap();
        prop_assert_eq!(q.euler(&ca, &cb), q.euler(a, b));
        prop_assert_eq!(coxeter_dim(&q, &ca, Direction::Minus).unwrap(), a.to_vec());
    }

    #[test]
    fn random_orientations_reduce_to_the_canonical_one(
        ty in any_type(8),
        flips in prop::collection::vec(any::<bool>(), 16),
    ) {
        let qs = reorient(&build_canonical(ty).unwrap(), &flips);
        prop_assume!(qs.quiver().is_acyclic());
        // Reorienting can change the type; reflections must not.
        let found = classify(&qs).unwrap();
        let (seq, reduced) = reduce_to_canonical(&qs).unwrap();
        prop_assert_eq!(classify(&reduced).unwrap(), found);
        prop_assert!(is_canonical_orientation(&reduced, found));
        prop_assert_eq!(seq.apply(&qs).unwrap(), reduced);
    }

    #[test]
    fn hom_minus_ext_is_the_euler_form(
        ty in any_type(6),
        a in prop::collection::vec(0i64..=2, 6),
        b in prop::collection::vec(0i64..=2, 6),
        seed in any::<u64>(),
    ) {
        let q = build_canonical(ty).unwrap().quiver().clone();
        let n = q.num_vertices();
        let (a, b) = (&a[..n], &b[..n]);
        prop_assume!(a.iter().chain(b).sum::<i64>() <= 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_plain_rep(&q, a, &mut rng).unwrap();
        let w = random_plain_rep(&q, b, &mut rng).unwrap();
        let hom = hom_dim(&q, &v, &w) as i64;
        let ext = ext_dim(&q, &v, &w).unwrap() as i64;
        prop_assert_eq!(hom - ext, q.euler(a, b));
    }

    #[test]
    fn group_action_preserves_the_form(
        ty in any_type(6),
        raw in prop::collection::vec(0i64..=2, 6),
        symplectic in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let qs = build_canonical(ty).unwrap();
        let flavor = if symplectic { Flavor::Symplectic } else { Flavor::Orthogonal };
        let dims = symmetric_dims(&qs, &raw, flavor);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_rep(&qs, &dims, flavor, &mut rng).unwrap();
        prop_assert!(check_form(&qs, &v, flavor).ok());
        let g = random_group_element(&qs, &dims, flavor, &mut rng).unwrap();
        prop_assert!(check_form(&qs, &act(&qs, &g, &v).unwrap(), flavor).ok());
    }

    #[test]
    fn group_elements_preserve_the_pairing(
        ty in any_type(6),
        raw in prop::collection::vec(0i64..=3, 6),
        symplectic in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let qs = build_canonical(ty).unwrap();
        let flavor = if symplectic { Flavor::Symplectic } else { Flavor::Orthogonal };
        let dims = symmetric_dims(&qs, &raw, flavor);
        let g = random_group_element(&qs, &dims, flavor, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        for x in 0..qs.quiver().num_vertices() {
            let gram = gram_block(&qs, flavor, x, dims[x] as usize);
            let moved = g.mats[x].transpose().mul(&gram).mul(&g.mats[qs.sigma_vertex(x)]);
            prop_assert_eq!(moved, gram);
            if qs.vertex_side(x) == Side::Plus {
                prop_assert_eq!(g.mats[x].det(), Q::from_integer(1.into()));
            }
        }
    }

    #[test]
    fn minimal_and_canonical_presentations_are_proportional(
        ty in cyclic_type(6),
        seed in any::<u64>(),
    ) {
        let (qs, td) = canonical_tubes(ty).unwrap();
        let q = qs.quiver();
        prop_assume!(!td.tubes.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tube = &td.tubes[rng.gen_range(0..td.tubes.len())];
        let alpha = tube.elements[rng.gen_range(0..tube.period())].clone();
        let v = random_plain_rep(q, &alpha, &mut rng).unwrap();
        let full = canonical_presentation(q, &v);
        let small = minimal_presentation(q, &v);
        let mut ratio: Option<Q> = None;
        for _ in 0..4 {
            let w = random_plain_rep(q, &td.null_root, &mut rng).unwrap();
            let a = c_eval_presentation(&full, &w).unwrap().value;
            let b = c_eval_presentation(&small, &w).unwrap().value;
            prop_assert_eq!(a.is_zero(), b.is_zero());
            if !b.is_zero() {
                let r = a / b;
                if let Some(prev) = &ratio {
                    prop_assert_eq!(prev, &r);
                }
                ratio = Some(r);
            }
        }
    }

    #[test]
    fn decompositions_re_sum_to_the_input(
        ty in prop::sample::select(vec![
            TameType::A11 { k: 0, l: 2 },
            TameType::A11 { k: 0, l: 4 },
            TameType::A11 { k: 0, l: 6 },
            TameType::A11 { k: 2, l: 2 },
        ]),
        p in 0i64..=2,
        labels in prop::collection::vec(0i64..=3, 6),
        tube_pick in any::<prop::sample::Index>(),
    ) {
        let (qs, td) = canonical_tubes(ty).unwrap();
        let q = qs.quiver();
        let tube = tube_pick.index(td.tubes.len());
        let period = td.tubes[tube].period();
        let half = symquiv::io::dim_from_labels(&td, tube, p, &labels[..period]).unwrap();
        // Adding the dual makes the vector symmetric while keeping it regular.
        let d: Vec<i64> = half.iter().zip(qs.delta(&half)).map(|(a, b)| a + b).collect();
        let generic = generic_decompose(&qs, &td, &d).unwrap();
        prop_assert_eq!(generic.total(), d.clone());
        for s in &generic.summands {
            prop_assert_eq!(defect(q, &s.vector).unwrap(), 0);
            prop_assert!(s.vector.iter().all(|&x| x >= 0));
        }
        prop_assert_eq!(orthogonal_generic(&qs, &td, &d).unwrap().total(), d.clone());
        if let Ok(sp) = symplectic_generic(&qs, &td, &d) {
            prop_assert_eq!(sp.total(), d.clone());
        }
    }

    #[test]
    fn quiver_files_round_trip(ty in any_type(10), flips in prop::collection::vec(any::<bool>(), 16)) {
        let qs = reorient(&build_canonical(ty).unwrap(), &flips);
        let text = serde_json::to_string(&QuiverFile::from_quiver(&qs)).unwrap();
        prop_assert_eq!(QuiverFile::parse(&text).unwrap().to_quiver().unwrap(), qs);
    }

    #[test]
    fn representation_files_round_trip(
        ty in any_type(8),
        dims in prop::collection::vec(0i64..=3, 8),
        seed in any::<u64>(),
    ) {
        let q = build_canonical(ty).unwrap().quiver().clone();
        let v = random_plain_rep(&q, &dims[..q.num_vertices()], &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let text = serde_json::to_string(&RepFile::from_rep(&q, &v)).unwrap();
        prop_assert_eq!(RepFile::parse(&text).unwrap().to_rep(&q).unwrap(), v);
    }
}

#[test]
fn classification_inverts_the_builder() {
    for ty in types_up_to(12) {
        assert_eq!(classify(&build_canonical(ty).unwrap()).unwrap(), ty, "{ty}");
    }
}

#[test]
fn projectives_have_negative_and_injectives_positive_defect() {
    for ty in types_up_to(10) {
        let q = build_canonical(ty).unwrap().quiver().clone();
        for x in 0..q.num_vertices() {
            assert!(defect(&q, &projective(&q, x).dim_vector()).unwrap() < 0, "{ty} P{x}");
            assert!(defect(&q, &injective(&q, x).dim_vector()).unwrap() > 0, "{ty} I{x}");
        }
    }
}

#[test]
fn duality_permutes_tubes_and_squares_to_the_identity() {
    for ty in types_up_to(10).into_iter().filter(TameType::is_cyclic) {
        let (qs, td) = canonical_tubes(ty).unwrap();
        let q = qs.quiver();
        for t in &td.tubes {
            let partner = &td.tubes[t.partner];
            assert_eq!(partner.partner, td.tubes.iter().position(|u| std::ptr::eq(u, t)).unwrap());
            for (i, e) in t.elements.iter().enumerate() {
                assert_eq!(qs.delta(e), partner.elements[t.sigma_i[i]], "{ty}");
                assert_eq!(partner.sigma_i[t.sigma_i[i]], i, "{ty}");
                assert_eq!(coxeter_dim(q, e, Direction::Plus).unwrap(), t.elements[(i + 1) % t.period()], "{ty}");
            }
            let sum = t.elements.iter().fold(vec![0; q.num_vertices()], |acc, e| {
                acc.iter().zip(e).map(|(a, b)| a + b).collect()
            });
            assert_eq!(sum, td.null_root, "{ty}");
        }
    }
}

/// Relabelling the vertices permutes every coordinate of the representation
/// space, so the invariant counts must not move.
#[test]
fn invariant_counts_ignore_vertex_order() {
    let qs = build_canonical(TameType::A11 { k: 0, l: 2 }).unwrap();
    let h = null_root(qs.quiver()).unwrap();
    let dims: Vec<i64> = h.iter().map(|x| 2 * x).collect();
    let mut file = QuiverFile::from_quiver(&qs);
    file.vertices.reverse();
    let shuffled = file.to_quiver().unwrap();
    let by_name = |s: &SymmetricQuiver| -> Vec<i64> {
        s.quiver().vertices().iter().map(|v| dims[qs.quiver().vertex(v).unwrap()]).collect()
    };
    for flavor in [Flavor::Orthogonal, Flavor::Symplectic] {
        assert_eq!(
            invariant_dims(&qs, &dims, flavor, 3).unwrap(),
            invariant_dims(&shuffled, &by_name(&shuffled), flavor, 3).unwrap(),
            "{flavor:?}"
        );
    }
}
