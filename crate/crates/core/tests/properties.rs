//! Property tests over random topologies, posets and products. Expected
//! values come from direct brute-force computation in this file.

use proptest::prelude::*;

use demorgan_core::builders::{
    downset_frame, from_topology, isomorphic, product_frame, random_topology, standard_frame,
    PosetSpec, StandardFamily, TopologySpec,
};
use demorgan_core::demorgan::{
    booleanization, demorganization, is_boolean, is_extremally_disconnected, sublocale_is_boolean,
    sublocale_is_extremally_disconnected,
};
use demorgan_core::dot::frame_dot;
use demorgan_core::laws::verify_heyting_laws;
use demorgan_core::spec::{FrameSource, FrameSpec};
use demorgan_core::sublocale::{
    closed_sublocale, enumerate_sublocales, enumerate_sublocales_by_closure, intersect_sublocales,
    is_sublocale, join_sublocales, open_sublocale, Sublocale,
};
use demorgan_core::{parse_frame_spec, Frame};

fn topology() -> impl Strategy<Value = TopologySpec> {
    (1usize..=5, any::<u64>()).prop_map(|(n, seed)| random_topology(n, seed).unwrap())
}

fn small_topology() -> impl Strategy<Value = TopologySpec> {
    (1usize..=4, any::<u64>()).prop_map(|(n, seed)| random_topology(n, seed).unwrap())
}

/// A random poset on up to five elements: relations only go from lower to
/// higher index, so the result is acyclic.
fn poset() -> impl Strategy<Value = PosetSpec> {
    (1usize..=5)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, bits)| {
            let elements: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let covers = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * n + j])
                .map(|(i, j)| (elements[i].clone(), elements[j].clone()))
                .collect();
            PosetSpec { elements, covers }
        })
}

fn frame(t: &TopologySpec) -> Frame {
    from_topology(t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn heyting_is_right_adjoint_to_meet(t in topology()) {
        let f = frame(&t);
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    prop_assert_eq!(f.leq(f.meet(a, c), b), f.leq(c, f.heyting(a, b)));
                }
            }
        }
    }

    #[test]
    fn topology_frames_satisfy_the_laws(t in topology()) {
        let f = frame(&t);
        let report = verify_heyting_laws(&f);
        prop_assert!(report.all_passed(), "{:?}", report.describe_failures(&f));
    }

    #[test]
    fn open_and_closed_are_complements(t in topology()) {
        let f = frame(&t);
        let trivial = Sublocale::trivial(&f);
        let whole = Sublocale::whole(&f);
        for a in f.elements() {
            let pair = [open_sublocale(&f, a), closed_sublocale(&f, a)];
            prop_assert!(intersect_sublocales(&f, &pair).unwrap() == trivial);
            prop_assert!(join_sublocales(&f, &pair).unwrap() == whole);
        }
    }

    #[test]
    fn enumerated_sublocales_are_nucleus_images(t in small_topology()) {
        let f = frame(&t);
        let all = enumerate_sublocales(&f).unwrap();
        for s in &all {
            let nu = s.nucleus();
            prop_assert!(nu.is_nucleus());
            prop_assert_eq!(&nu.fixed_points(), s.members());
        }
        for s in &all {
            for t in &all {
                let pair = [s.clone(), t.clone()];
                let meet = intersect_sublocales(&f, &pair).unwrap();
                let join = join_sublocales(&f, &pair).unwrap();
                prop_assert!(is_sublocale(&f, meet.members()));
                prop_assert!(is_sublocale(&f, join.members()));
            }
        }
    }

    #[test]
    fn closure_enumeration_agrees_with_brute_force(t in small_topology()) {
        let f = frame(&t);
        prop_assert!(enumerate_sublocales(&f).unwrap() == enumerate_sublocales_by_closure(&f).unwrap());
    }

    #[test]
    fn booleanization_and_demorganization_have_their_shape(t in topology()) {
        let f = frame(&t);
        let b = booleanization(&f).unwrap();
        let m = demorganization(&f);
        prop_assert!(b.is_dense() && m.is_dense());
        prop_assert!(sublocale_is_boolean(&b));
        prop_assert!(sublocale_is_extremally_disconnected(&m).unwrap());
        // Regular elements brute-forced as pseudocomplements.
        for a in f.elements() {
            prop_assert!(b.contains(f.pseudocomplement(a)));
        }
    }

    #[test]
    fn downset_frames_have_one_element_per_downset(p in poset()) {
        let f = downset_frame(&p).unwrap();
        let n = p.elements.len();
        let index = |s: &String| p.elements.iter().position(|e| e == s).unwrap();
        let below: Vec<(usize, usize)> = p.covers.iter().map(|(a, b)| (index(a), index(b))).collect();
        let downsets = (0u32..1 << n)
            .filter(|&m| below.iter().all(|&(lo, hi)| m >> hi & 1 == 0 || m >> lo & 1 == 1))
            .count();
        prop_assert_eq!(f.size(), downsets);
        prop_assert!(verify_heyting_laws(&f).all_passed());
    }

    #[test]
    fn products_split_componentwise(s in small_topology(), t in (1usize..=3, any::<u64>())) {
        let left = frame(&s);
        let right = frame(&random_topology(t.0, t.1).unwrap());
        let prod = product_frame(&left, &right).unwrap();
        prop_assert_eq!(prod.size(), left.size() * right.size());
        prop_assert_eq!(
            booleanization(&prod).unwrap().len(),
            booleanization(&left).unwrap().len() * booleanization(&right).unwrap().len()
        );
        prop_assert_eq!(
            demorganization(&prod).len(),
            demorganization(&left).len() * demorganization(&right).len()
        );
        prop_assert_eq!(
            is_extremally_disconnected(&prod).unwrap(),
            is_extremally_disconnected(&left).unwrap() && is_extremally_disconnected(&right).unwrap()
        );
        prop_assert_eq!(is_boolean(&prod), is_boolean(&left) && is_boolean(&right));
    }

    #[test]
    fn renaming_points_gives_an_isomorphic_frame(t in small_topology(), shift in 0usize..4) {
        let n = t.points.len();
        let rename = |p: &String| {
            let i = t.points.iter().position(|q| q == p).unwrap();
            format!("q{}", (i + shift) % n)
        };
        let renamed = TopologySpec {
            points: t.points.iter().map(rename).collect(),
            opens: t.opens.iter().map(|o| o.iter().map(rename).collect()).collect(),
        };
        prop_assert!(isomorphic(&frame(&t), &frame(&renamed)));
    }

    #[test]
    fn specs_round_trip_through_json(t in topology()) {
        let spec = FrameSpec::new(FrameSource::Topology(t.clone()));
        let parsed = parse_frame_spec(&spec.to_json()).unwrap();
        prop_assert_eq!(&parsed, &spec);
        let (rebuilt, original) = (parsed.build().unwrap(), frame(&t));
        prop_assert_eq!(rebuilt.labels(), original.labels());
        for a in original.elements() {
            for b in original.elements() {
                prop_assert_eq!(rebuilt.leq(a, b), original.leq(a, b));
            }
        }
    }

    #[test]
    fn dot_has_one_edge_per_cover(t in topology()) {
        let f = frame(&t);
        let dot = frame_dot("t", &f);
        prop_assert_eq!(dot.matches(" -> ").count(), f.covering_pairs().len());
        prop_assert_eq!(dot.matches("[label=").count(), f.size());
    }
}

#[test]
fn chains_and_boolean_algebras() {
    for n in 1..=8 {
        let chain = standard_frame(StandardFamily::Chain, n).unwrap();
        // In a chain every nonzero element is dense, so B_L = {0, 1} = M_L
        // once there are at least two elements.
        assert_eq!(booleanization(&chain).unwrap().len(), n.min(2));
        assert!(is_extremally_disconnected(&chain).unwrap());
        assert!(demorganization(&chain) == Sublocale::whole(&chain));
    }
    for n in 0..=5 {
        let boolean = standard_frame(StandardFamily::Boolean, n).unwrap();
        assert!(booleanization(&boolean).unwrap() == Sublocale::whole(&boolean));
    }
}
