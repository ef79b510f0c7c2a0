use serde::Deserialize;

/// Size limits applied before any large allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    /// Largest carrier `|A|^|I|` a tolerant power may have, also the
    /// largest index set built by the canonical embedding.
    pub max_power_size: u64,
    /// Largest number of related tuples materialized per relation of a power.
    pub max_power_tuples: u64,
    /// Largest degree `m` for subgroup enumeration of `S_m`.
    pub max_subgroup_degree: usize,
    /// Largest universe for which the power-set structure is built.
    pub max_pset_universe: usize,
    /// Largest universe handed to the isomorphism search.
    pub max_iso_universe: usize,
    /// Largest `|A|^|B|` for full homomorphism enumeration in pp-definitions.
    pub max_pp_enumeration: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_power_size: 100_000,
            max_power_tuples: 5_000_000,
            max_subgroup_degree: 5,
            max_pset_universe: 12,
            max_iso_universe: 30,
            max_pp_enumeration: 1_000_000,
        }
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn checked_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base as u128) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}
