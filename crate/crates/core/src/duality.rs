//! The power-set structure `P(A)` and width one.

use std::collections::BTreeSet;

use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::power::TolerantPower;
use crate::solver::hom_exists;
use crate::structure::{Structure, Tuple};

/// `P(A)`: nonempty subsets of `A`, with `(S_1..S_k)` related iff
/// `pr_i(R(A) ∩ Π S_i) = S_i` for every `i`.
///
/// The subset with bitmask `m` (bit `j` = element `j` of `A`) is element
/// `m - 1`, so universe order is bitmask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSetStructure {
    pub base: Structure,
    pub derived: Structure,
}

impl PowerSetStructure {
    pub fn mask(&self, element: usize) -> u64 {
        element as u64 + 1
    }

    pub fn element(&self, mask: u64) -> usize {
        debug_assert!(mask != 0);
        mask as usize - 1
    }
}

/// `"{a,b}"` with ids in universe order.
pub fn subset_id(a: &Structure, mask: u64) -> String {
    let ids: Vec<&str> = (0..a.len()).filter(|&j| mask >> j & 1 == 1).map(|j| a.id(j)).collect();
    format!("{{{}}}", ids.join(","))
}

/// Builds `P(A)`. A tuple of subsets satisfies the projection condition iff
/// it is a componentwise union of singleton tuples `({t_1}, .., {t_k})` with
/// `t ∈ R(A)`, so each relation is computed as that union closure.
pub fn power_set_structure(a: &Structure, budgets: &Budgets) -> Result<PowerSetStructure> {
    let n = a.len();
    if n > budgets.max_pset_universe {
        return Err(Error::budget("power-set universe", (1u128 << n.min(127)) - 1, (1u128 << budgets.max_pset_universe) - 1));
    }
    let count = (1u64 << n) - 1;
    let universe: Vec<String> = (1..=count).map(|m| subset_id(a, m)).collect();
    let mut relations = Vec::with_capacity(a.signature().len());
    for (_, rel) in a.relations() {
        let singles: Vec<Vec<u64>> = rel.iter().map(|t| t.iter().map(|&v| 1u64 << v).collect()).collect();
        let mut seen: BTreeSet<Vec<u64>> = singles.iter().cloned().collect();
        let mut work: Vec<Vec<u64>> = seen.iter().cloned().collect();
        while let Some(t) = work.pop() {
            for s in &singles {
                let u: Vec<u64> = t.iter().zip(s).map(|(x, y)| x | y).collect();
                if !seen.contains(&u) {
                    if seen.len() as u64 >= budgets.max_power_tuples {
                        return Err(Error::budget(
                            "power-set relation size",
                            seen.len() as u128 + 1,
                            budgets.max_power_tuples as u128,
                        ));
                    }
                    seen.insert(u.clone());
                    work.push(u);
                }
            }
        }
        relations.push(seen.into_iter().map(|t| t.into_iter().map(|m| m as usize - 1).collect::<Tuple>()).collect());
    }
    let derived = Structure::new(a.signature().clone(), universe, relations)?;
    Ok(PowerSetStructure { base: a.clone(), derived })
}

/// Outcome of [`width_one`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthOne {
    pub width_one: bool,
    pub witness: Option<Homomorphism>,
    pub power_set: PowerSetStructure,
}

/// `A` has width one iff `P(A) → A`.
pub fn width_one(a: &Structure, budgets: &Budgets) -> Result<WidthOne> {
    let power_set = power_set_structure(a, budgets)?;
    let witness = hom_exists(&power_set.derived, a)?;
    Ok(WidthOne { width_one: witness.is_some(), witness, power_set })
}

/// `f ↦` the ⊆-least `S` with `f⁻¹(S) ∈ F`, as a homomorphism
/// `A^I_F → P(A)`. For a principal filter with base `T` that set is `f(T)`.
pub fn minimal_support_map(p: &TolerantPower, pset: &PowerSetStructure) -> Result<Homomorphism> {
    if &pset.base != p.base() {
        return Err(Error::InvalidInput("power-set structure is over a different base".into()));
    }
    let base = p.filter().base_indices();
    let assignment: Vec<usize> = (0..p.carrier().len())
        .map(|c| {
            let f = p.function(c);
            let mask = base.iter().fold(0u64, |m, &i| m | 1 << f[i]);
            pset.element(mask)
        })
        .collect();
    Homomorphism::new(p.carrier(), &pset.derived, assignment)
        .map_err(|e| Error::ValidationFailure(format!("minimal-support map: {e}")))
}
