use proptest::prelude::*;
use qam_core::chains::{apply_reversal, chain_for_columns, valid_moves};
use qam_core::model::Model;
use qam_core::root_system::RootSystem;
use qam_core::weyl::WeylGroup;
use qam_core::yb::r_matrix;

fn case() -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    prop_oneof![
        prop::collection::vec(1usize..=2, 1..=3).prop_map(|c| ("A2", c)),
        prop::collection::vec(1usize..=2, 1..=3).prop_map(|c| ("C2", c)),
        prop::collection::vec(1usize..=2, 1..=2).prop_map(|c| ("G2", c)),
        prop::collection::vec(1usize..=3, 1..=2).prop_map(|c| ("A3", c)),
        prop::collection::vec(1usize..=3, 1..=2).prop_map(|c| ("B3", c)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn root_operators_are_partial_inverses((tag, columns) in case(), pick in any::<prop::sample::Index>()) {
        let rs = RootSystem::from_tag(tag).unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let chain = chain_for_columns(&rs, &columns).unwrap();
        let model = Model::new(&g, &chain);
        let all = model.enumerate_admissible(1_000_000).unwrap();
        let j = &all[pick.index(all.len())];
        for p in 0..=rs.rank() {
            let (phi, eps) = model.string_lengths(j, p);
            let mut x = j.clone();
            for _ in 0..phi {
                let y = model.f(&x, p).expect("f defined within the string");
                prop_assert!(model.is_admissible(&y));
                prop_assert_eq!(model.e(&y, p), Some(x.clone()));
                x = y;
            }
            prop_assert!(model.f(&x, p).is_none());
            let mut x = j.clone();
            for _ in 0..eps {
                x = model.e(&x, p).expect("e defined within the string");
            }
            prop_assert!(model.e(&x, p).is_none());
        }
    }

    #[test]
    fn single_moves_are_bijective((tag, columns) in case(), pick in any::<prop::sample::Index>()) {
        let rs = RootSystem::from_tag(tag).unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let chain = chain_for_columns(&rs, &columns).unwrap();
        let moves = valid_moves(&rs, &chain);
        prop_assume!(!moves.is_empty());
        let mv = moves[pick.index(moves.len())];
        let moved = apply_reversal(&rs, &chain, mv).unwrap();
        let source = Model::new(&g, &chain).enumerate_admissible(1_000_000).unwrap();
        let target = Model::new(&g, &moved);
        let mut images: Vec<Vec<usize>> = source
            .iter()
            .map(|j| r_matrix(&g, &chain, &[mv], j).unwrap())
            .collect();
        for y in &images {
            prop_assert!(target.is_admissible(y));
        }
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), source.len());
    }
}
