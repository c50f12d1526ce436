use genus_core::gf2::{Gf2Matrix, Gf2Vec};
use genus_core::keylemma::{
    dataset_hyperelliptic, kernel_mod_e, lift_element, two_torsion_rank, BranchConfiguration,
    BranchConfigurationRecord,
};
use genus_core::Error;
use proptest::prelude::*;

/// Counts subsets `I` with `phi(I) = 0` directly; the quotient by `e` halves it.
fn brute_quotient_dim(config: &BranchConfiguration) -> usize {
    let n = config.n_components();
    let kernel = (0u32..1 << n)
        .filter(|mask| {
            let v = Gf2Vec::from_bits(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
            config.apply(&v).is_zero()
        })
        .count();
    (kernel / 2).trailing_zeros() as usize
}

/// Random `m x R` matrix whose columns sum to zero.
fn even_config() -> impl Strategy<Value = BranchConfiguration> {
    (1usize..=12, 0usize..=6).prop_flat_map(|(r, m)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), r - 1), m).prop_map(move |rows| {
            let rows = rows
                .into_iter()
                .map(|mut bits| {
                    let parity = bits.iter().filter(|&&b| b).count() % 2 == 1;
                    bits.push(parity);
                    Gf2Vec::from_bits(&bits)
                })
                .collect();
            BranchConfiguration::new(Gf2Matrix::from_rows(r, rows), 0).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn quotient_dim_is_r_minus_rank_minus_one(config in even_config()) {
        let q = kernel_mod_e(&config).unwrap();
        let rank = config.phi().rank();
        prop_assert_eq!(q.dim(), config.n_components() - rank - 1);
        prop_assert_eq!(q.dim(), brute_quotient_dim(&config));
        for v in &q.kernel_basis {
            prop_assert!(config.apply(v).is_zero());
        }
    }

    #[test]
    fn complementary_subsets_lift_to_the_same_class(config in even_config()) {
        let q = kernel_mod_e(&config).unwrap();
        for v in &q.representatives {
            let subset = v.ones_indices();
            let other = v.complement().ones_indices();
            let a = lift_element(&config, &subset, "L").unwrap();
            let b = lift_element(&config, &other, "L").unwrap();
            prop_assert!(a.is_equivalent(&b));
        }
    }

    #[test]
    fn configurations_round_trip_through_json(config in even_config()) {
        let json = serde_json::to_string(&config).unwrap();
        let back: BranchConfiguration = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, config);
    }
}

#[test]
fn odd_branch_is_rejected() {
    let config = BranchConfiguration::new(Gf2Matrix::from_rows(2, vec![Gf2Vec::from_bits(&[true, false])]), 0).unwrap();
    assert!(matches!(kernel_mod_e(&config), Err(Error::BranchNotEven)));
}

#[test]
fn malformed_records_are_rejected() {
    let bad_rows = BranchConfigurationRecord {
        n_components: 2,
        ambient_rank: 1,
        pic_two_rank: 0,
        phi_matrix: vec![vec![1, 1, 0]],
    };
    assert!(BranchConfiguration::try_from(bad_rows).is_err());
    let bad_entry = BranchConfigurationRecord {
        n_components: 2,
        ambient_rank: 1,
        pic_two_rank: 0,
        phi_matrix: vec![vec![1, 2]],
    };
    assert!(BranchConfiguration::try_from(bad_entry).is_err());
}

#[test]
fn hyperelliptic_matches_even_subset_count() {
    for g in 1..=5 {
        let ds = dataset_hyperelliptic(g).unwrap();
        // even subsets of 2g+2 points, modulo complement
        let n = 2 * g + 2;
        let even = (0u32..1 << n).filter(|m| m.count_ones() % 2 == 0).count();
        let expected = (even / 2).trailing_zeros() as usize;
        assert_eq!(expected, 2 * g);
        assert_eq!(two_torsion_rank(&ds.config).unwrap(), expected);
        assert_eq!(brute_quotient_dim(&ds.config), expected);
    }
}
