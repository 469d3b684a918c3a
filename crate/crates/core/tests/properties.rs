use monodromy::lattice::{build_diagram, fold_check, random_involutive_tree, DiagramSpec};
use monodromy::mckay::{build_group, character_table, select_prime, GroupSpec};
use monodromy::{frame_to_ratfunc, ratfunc_to_frame, saito_dual, series_expand, FrameShape};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEGREES: [u64; 6] = [6, 12, 18, 24, 30, 42];

/// A degree and a frame whose keys all divide it.
fn frame_at_degree() -> impl Strategy<Value = (FrameShape, u64)> {
    prop::sample::select(DEGREES.to_vec()).prop_flat_map(|d| {
        let divisors: Vec<u64> = (1..=d).filter(|k| d % k == 0).collect();
        let pairs = prop::collection::vec((prop::sample::select(divisors), -3i64..=3), 0..6);
        pairs.prop_map(move |p| (FrameShape::from_pairs(p), d))
    })
}

fn tree_specs() -> Vec<DiagramSpec> {
    let mut v: Vec<DiagramSpec> = (1..=7).map(DiagramSpec::A).collect();
    v.extend((4..=7).map(DiagramSpec::D));
    v.extend((6..=8).map(DiagramSpec::E));
    v.extend((4..=7).map(DiagramSpec::AffineD));
    v.extend((6..=8).map(DiagramSpec::AffineE));
    v.extend([DiagramSpec::B(4), DiagramSpec::C(5), DiagramSpec::F4, DiagramSpec::G2, DiagramSpec::AffineF4]);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn saito_dual_is_an_involution((f, d) in frame_at_degree()) {
        let once = saito_dual(&f, d).unwrap();
        let expected: i64 = f.exponents().iter().map(|(&k, &a)| -a * (d / k) as i64).sum();
        prop_assert_eq!(once.degree(), expected);
        prop_assert_eq!(saito_dual(&once, d).unwrap(), f);
    }

    #[test]
    fn frame_round_trips((f, _) in frame_at_degree()) {
        prop_assert_eq!(&ratfunc_to_frame(&frame_to_ratfunc(&f), None).unwrap(), &f);
        prop_assert_eq!(&f.to_string().parse::<FrameShape>().unwrap(), &f);
        let json = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(&serde_json::from_str::<FrameShape>(&json).unwrap(), &f);
    }

    #[test]
    fn frame_product_matches_series((f, _) in frame_at_degree(), (g, _) in frame_at_degree()) {
        // only meaningful when both have a nonvanishing constant term
        let fg = f.mul(&g);
        if let (Ok(a), Ok(b), Ok(c)) = (
            series_expand(&frame_to_ratfunc(&f), 12),
            series_expand(&frame_to_ratfunc(&g), 12),
            series_expand(&frame_to_ratfunc(&fg), 12),
        ) {
            let conv: Vec<_> = (0..=12)
                .map(|n| (0..=n).map(|i| &a.0[i] * &b.0[n - i]).sum::<num_bigint::BigInt>())
                .collect();
            prop_assert_eq!(conv, c.0);
        }
    }

    #[test]
    fn tree_frame_is_order_independent(k in 0usize..24, perm in any::<u64>()) {
        let specs = tree_specs();
        let c = build_diagram(&specs[k % specs.len()]).unwrap();
        prop_assume!(c.is_forest());
        let mut order: Vec<usize> = (0..c.size()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(perm));
        prop_assert_eq!(c.with_order(order).unwrap().coxeter_frame().unwrap(), c.coxeter_frame().unwrap());
    }

    #[test]
    fn folding_factors_phi(seed in any::<u64>(), core in 1usize..5, branch in 1usize..4, pairs in 1usize..3) {
        let l = random_involutive_tree(&mut ChaCha8Rng::seed_from_u64(seed), core, branch, pairs);
        let o = fold_check(&l).unwrap();
        prop_assert!(o.holds);
        prop_assert_eq!(&o.phi_x, &(&o.phi_1 * &o.phi_f));
        prop_assert_eq!(o.phi_x_by_determinant.as_ref(), Some(&o.phi_x));
    }
}

#[test]
fn sum_of_squared_dimensions() {
    let mut groups: Vec<GroupSpec> = (1..=10).map(GroupSpec::Cyclic).collect();
    groups.extend((1..=7).map(GroupSpec::BinDihedral));
    groups.extend([GroupSpec::BinTetrahedral, GroupSpec::BinOctahedral, GroupSpec::BinIcosahedral]);
    for g in groups {
        let grp = build_group(g, select_prime(&[g])).unwrap();
        let t = character_table(&grp).unwrap();
        assert_eq!(t.dims.iter().map(|d| d * d).sum::<u64>(), g.expected_order(), "{g}");
        assert_eq!(t.len(), t.classes.len(), "{g}");
    }
}
