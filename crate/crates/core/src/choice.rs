//! Subgroups of `S_m` and the finite conditions deciding when choice for
//! `m`-element sets follows from choice for sizes in `S`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::config::Budgets;
use crate::cycles::{is_prime, permutations};
use crate::error::{Error, Result};
use crate::exec::Exec;

pub type Perm = Vec<usize>;

/// A subgroup of `S_m`, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermGroup {
    pub degree: usize,
    pub elements: Vec<Perm>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &[usize]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(g)).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// Identity, composition and inverses all present.
    pub fn is_closed(&self) -> bool {
        let id: Perm = (0..self.degree).collect();
        self.contains(&id)
            && self.elements.iter().all(|a| {
                self.contains(&inverse(a)) && self.elements.iter().all(|b| self.contains(&compose(a, b)))
            })
    }

    /// Cycle notation of each element, e.g. `"(0 1 2)"`, identity as `"()"`.
    pub fn describe(&self) -> Vec<String> {
        self.elements.iter().map(|p| cycle_notation(p)).collect()
    }
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(a: &[usize]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &v) in a.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// No point is fixed by every element.
pub fn fixed_point_free(g: &PermGroup) -> bool {
    (0..g.degree).all(|x| g.elements.iter().any(|e| e[x] != x))
}

/// `S_m` with a multiplication table over lexicographic permutation indices.
struct Symmetric {
    perms: Vec<Perm>,
    table: Vec<Vec<usize>>,
}

impl Symmetric {
    fn new(m: usize) -> Self {
        let perms = permutations(m);
        let index: BTreeMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms.iter().map(|a| perms.iter().map(|b| index[&compose(a, b)]).collect()).collect();
        Symmetric { perms, table }
    }

    /// Subgroup generated by `gens`.
    fn closure(&self, gens: &[usize]) -> FixedBitSet {
        let mut members = FixedBitSet::with_capacity(self.perms.len());
        members.insert(0);
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for &g in gens {
                let c = self.table[a][g];
                if !members.put(c) {
                    list.push(c);
                }
            }
            i += 1;
        }
        members
    }
}

/// Every subgroup of `S_m`, sorted by order and then by element list.
///
/// Subgroups are found level by level: each known subgroup `H` (with its
/// generators) is extended by every element outside it and `⟨H, g⟩` is
/// closed; duplicates are dropped by equality of element sets.
pub fn subgroups(m: usize, budgets: &Budgets, exec: Exec) -> Result<Vec<PermGroup>> {
    if m == 0 {
        return Err(Error::BadN(m));
    }
    if m > budgets.max_subgroup_degree {
        return Err(Error::budget("subgroup degree", m as u128, budgets.max_subgroup_degree as u128));
    }
    let sym = Symmetric::new(m);
    let trivial = sym.closure(&[]);
    let mut known: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    known.insert(trivial.ones().collect(), Vec::new());
    let mut frontier: Vec<(FixedBitSet, Vec<usize>)> = vec![(trivial, Vec::new())];
    while !frontier.is_empty() {
        let found: Vec<Vec<(FixedBitSet, Vec<usize>)>> = exec.map(&frontier, |(h, gens)| {
            (0..sym.perms.len())
                .filter(|&g| !h.contains(g))
                .map(|g| {
                    let mut next = gens.clone();
                    next.push(g);
                    (sym.closure(&next), next)
                })
                .collect()
        });
        frontier = Vec::new();
        for (group, gens) in found.into_iter().flatten() {
            let key: Vec<usize> = group.ones().collect();
            if let Entry::Vacant(slot) = known.entry(key) {
                slot.insert(gens.clone());
                frontier.push((group, gens));
            }
        }
    }
    let mut groups: Vec<PermGroup> = known
        .into_keys()
        .map(|key| PermGroup { degree: m, elements: key.into_iter().map(|i| sym.perms[i].clone()).collect() })
        .collect();
    groups.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(groups)
}

/// Sums `Σ [H : H_i]` (at least one term) reachable up to `limit`.
fn index_sums(indices: &BTreeSet<usize>, limit: usize) -> Vec<bool> {
    let mut reach = vec![false; limit + 1];
    for s in 1..=limit {
        reach[s] = indices.iter().any(|&d| d <= s && (d == s || reach[s - d]));
    }
    reach
}

/// Why one fixed-point-free `G` satisfies the condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaunttWitness {
    pub g: usize,
    pub h: usize,
    /// Indices `[H : H_i]` of proper subgroups `H_i` of `H` summing into `S`.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaunttReport {
    pub holds: bool,
    pub subgroups: Vec<PermGroup>,
    pub fixed_point_free: Vec<usize>,
    pub witnesses: Vec<GaunttWitness>,
    /// A fixed-point-free `G` with no suitable `H`.
    pub counterexample: Option<usize>,
}

/// True iff every fixed-point-free `G ≤ S_m` contains a fixed-point-free
/// `H` with proper subgroups `H_1..H_k` (`k ≥ 1`) whose indices sum into `S`.
pub fn gauntt_condition(m: usize, s: &BTreeSet<usize>, budgets: &Budgets, exec: Exec) -> Result<GaunttReport> {
    if m < 2 {
        return Err(Error::BadN(m));
    }
    let groups = subgroups(m, budgets, exec)?;
    let fpf: Vec<usize> = (0..groups.len()).filter(|&i| fixed_point_free(&groups[i])).collect();
    let limit = s.iter().copied().max().unwrap_or(0);
    // for each fixed-point-free H: a target in S with a realizing index list
    let realizable: BTreeMap<usize, Option<Vec<usize>>> = exec
        .map(&fpf, |&h| {
            let indices: BTreeSet<usize> = groups
                .iter()
                .filter(|k| k.order() < groups[h].order() && k.is_subgroup_of(&groups[h]))
                .map(|k| groups[h].order() / k.order())
                .collect();
            let reach = index_sums(&indices, limit);
            let target = s.iter().copied().find(|&t| t >= 1 && reach[t]);
            (h, target.map(|t| decompose(&indices, &reach, t)))
        })
        .into_iter()
        .collect();
    let mut witnesses = Vec::new();
    let mut counterexample = None;
    for &g in &fpf {
        let found = fpf
            .iter()
            .filter(|&&h| groups[h].is_subgroup_of(&groups[g]))
            .find_map(|&h| realizable[&h].as_ref().map(|ix| GaunttWitness { g, h, indices: ix.clone() }));
        match found {
            Some(w) => witnesses.push(w),
            None => {
                counterexample = Some(g);
                break;
            }
        }
    }
    Ok(GaunttReport { holds: counterexample.is_none(), subgroups: groups, fixed_point_free: fpf, witnesses, counterexample })
}

fn decompose(indices: &BTreeSet<usize>, reach: &[bool], mut t: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while t > 0 {
        let d = *indices.iter().find(|&&d| d <= t && (d == t || reach[t - d])).expect("t is reachable");
        out.push(d);
        t -= d;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSumReport {
    pub holds: bool,
    /// Every multiset of primes summing to `m`, each nonincreasing.
    pub partitions: Vec<Vec<usize>>,
    /// A partition using only primes above `n`.
    pub counterexample: Option<Vec<usize>>,
}

/// True iff every way of writing `m` as a sum of primes uses a prime `≤ n`.
pub fn prime_sum_criterion(m: usize, n: usize) -> Result<PrimeSumReport> {
    if m < 2 {
        return Err(Error::BadN(m));
    }
    if n < 2 {
        return Err(Error::BadN(n));
    }
    let primes: Vec<usize> = (2..=m).filter(|&q| is_prime(q)).collect();
    let mut partitions = Vec::new();
    fn walk(rest: usize, max: usize, primes: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for &q in primes.iter().rev().filter(|&&q| q <= max.min(rest)) {
            cur.push(q);
            walk(rest - q, q, primes, cur, out);
            cur.pop();
        }
    }
    walk(m, m, &primes, &mut Vec::new(), &mut partitions);
    let counterexample = partitions.iter().find(|part| part.iter().all(|&q| q > n)).cloned();
    Ok(PrimeSumReport { holds: counterexample.is_none(), partitions, counterexample })
}
