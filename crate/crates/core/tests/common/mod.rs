//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's own checking code; everything is recomputed from the
//! definitions.
#![allow(dead_code)]

use std::collections::BTreeSet;

use homlab::structure::{Signature, Structure, Tuple};
use homlab::FiniteFilter;
use proptest::prelude::*;
use rand::Rng;

pub fn graph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Structure {
    let rel: BTreeSet<Tuple> = edges.into_iter().map(|(u, v)| vec![u, v]).collect();
    Structure::new(Signature::binary("E"), (0..n).map(|i| i.to_string()).collect(), vec![rel]).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Structure {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    graph(n, edges)
}

/// Digraphs on `1..=max_n` elements, loops allowed.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Structure> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            graph(n, (0..n * n).filter(|&i| bits[i]).map(|i| (i / n, i % n)))
        })
    })
}

/// Filters on `{0..size}` for `size` in `1..=max_size`.
pub fn arb_filter(max_size: usize) -> impl Strategy<Value = FiniteFilter> {
    (1..=max_size).prop_flat_map(|size| {
        (1usize..(1 << size)).prop_map(move |mask| {
            FiniteFilter::from_indices(size, (0..size).filter(|i| mask >> i & 1 == 1)).unwrap()
        })
    })
}

/// Every map `0..n → 0..m`, lexicographic.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (0..m).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

pub fn preserves(b: &Structure, a: &Structure, map: &[usize]) -> bool {
    (0..b.signature().len()).all(|k| {
        b.relation(k).iter().all(|t| a.relation(k).contains(&t.iter().map(|&x| map[x]).collect::<Vec<_>>()))
    })
}

pub fn brute_homs(b: &Structure, a: &Structure) -> Vec<Vec<usize>> {
    all_maps(b.len(), a.len()).into_iter().filter(|m| preserves(b, a, m)).collect()
}

/// Plain fixpoint of domain pruning: a value stays while every constraint
/// through its variable has a supporting target tuple.
pub fn naive_arc_consistency(b: &Structure, a: &Structure) -> Vec<BTreeSet<usize>> {
    let mut dom: Vec<BTreeSet<usize>> = vec![(0..a.len()).collect(); b.len()];
    loop {
        let mut changed = false;
        for k in 0..b.signature().len() {
            for t in b.relation(k) {
                for j in 0..t.len() {
                    let keep: BTreeSet<usize> = dom[t[j]]
                        .iter()
                        .copied()
                        .filter(|&v| {
                            a.relation(k).iter().any(|s| {
                                s[j] == v
                                    && (0..t.len()).all(|i| dom[t[i]].contains(&s[i]))
                                    && (0..t.len()).all(|i| (0..t.len()).all(|l| t[i] != t[l] || s[i] == s[l]))
                            })
                        })
                        .collect();
                    if keep.len() != dom[t[j]].len() {
                        dom[t[j]] = keep;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return dom;
        }
    }
}

fn digits(mut code: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut f = vec![0; len];
    for slot in f.iter_mut().rev() {
        *slot = code % radix;
        code /= radix;
    }
    f
}

/// Relations of `A^I_F` straight from the membership definition.
pub fn definitional_power(a: &Structure, f: &FiniteFilter) -> Vec<BTreeSet<Tuple>> {
    let size = f.size();
    let count = a.len().pow(size as u32);
    let fns: Vec<Vec<usize>> = (0..count).map(|c| digits(c, a.len(), size)).collect();
    let base = f.base_indices();
    a.signature()
        .symbols()
        .iter()
        .enumerate()
        .map(|(k, sym)| {
            all_maps(sym.arity, count)
                .into_iter()
                .filter(|t| {
                    base.iter().all(|&i| a.relation(k).contains(&t.iter().map(|&c| fns[c][i]).collect::<Vec<_>>()))
                })
                .collect()
        })
        .collect()
}

pub fn mask_members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&j| mask >> j & 1 == 1).collect()
}

/// `P(A)` relations by the projection condition, over masks.
pub fn definitional_pset(a: &Structure) -> Vec<BTreeSet<Vec<u64>>> {
    let n = a.len();
    let masks: Vec<u64> = (1..(1u64 << n)).collect();
    a.signature()
        .symbols()
        .iter()
        .enumerate()
        .map(|(k, sym)| {
            all_maps(sym.arity, masks.len())
                .into_iter()
                .map(|t| t.into_iter().map(|i| masks[i]).collect::<Vec<u64>>())
                .filter(|s| {
                    let inside: Vec<&Tuple> = a
                        .relation(k)
                        .iter()
                        .filter(|t| t.iter().zip(s).all(|(&v, &m)| m >> v & 1 == 1))
                        .collect();
                    (0..sym.arity).all(|i| inside.iter().fold(0u64, |acc, t| acc | 1 << t[i]) == s[i])
                })
                .collect()
        })
        .collect()
}

/// The ⊆-least `S` with `f⁻¹(S) ∈ F`, by scanning all subsets of `A`.
pub fn definitional_min_support(f: &[usize], filter: &FiniteFilter, n: usize) -> u64 {
    let base = filter.base_indices();
    let members: Vec<u64> =
        (1..(1u64 << n)).filter(|&s| base.iter().all(|&i| s >> f[i] & 1 == 1)).collect();
    let least = members.iter().fold(u64::MAX, |acc, &s| acc & s);
    assert!(members.contains(&least), "supports are intersection closed");
    least
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).all(|d| !n.is_multiple_of(d))
}

/// Whether `m` is a sum of primes all greater than `n` (subset-sum over
/// primes with repetition).
pub fn sum_of_large_primes(m: usize, n: usize) -> bool {
    let mut reach = vec![false; m + 1];
    reach[0] = true;
    for q in (n + 1..=m).filter(|&q| is_prime(q)) {
        for s in q..=m {
            reach[s] |= reach[s - q];
        }
    }
    reach[m]
}

/// Composition-closed subsets of `S_m` found by closing every pair of
/// permutations.
pub fn two_generated_subgroups(m: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let perms = all_maps(m, m).into_iter().filter(|p| p.iter().collect::<BTreeSet<_>>().len() == m).collect::<Vec<_>>();
    let mut out = BTreeSet::new();
    for a in &perms {
        for b in &perms {
            let mut set: BTreeSet<Vec<usize>> = [(0..m).collect(), a.clone(), b.clone()].into();
            loop {
                let next: BTreeSet<Vec<usize>> = set
                    .iter()
                    .flat_map(|x| set.iter().map(move |y| y.iter().map(|&i| x[i]).collect()))
                    .chain(set.iter().cloned())
                    .collect();
                if next.len() == set.len() {
                    break;
                }
                set = next;
            }
            out.insert(set.into_iter().collect());
        }
    }
    out
}
