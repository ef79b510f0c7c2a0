//! Directed cycles and their tolerant powers: CRT factorization, divisor
//! transfer of colorings, the component census of agreement quotients,
//! distinguished subsets from partial choice functions, and the order
//! extension map for `({0,1}; ≤, ≠)`.

use std::collections::BTreeSet;

use crate::config::{checked_pow, Budgets};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::filters::{subset_of, FiniteFilter, Subset};
use crate::hom::{check_homomorphism, Homomorphism};
use crate::iso::{find_isomorphism, is_isomorphism};
use crate::library::{order_structure, LEQ, NEQ};
use crate::power::{quotient_by_agreement, AgreementQuotient, PowerMap, TolerantPower};
use crate::structure::{connected_components, induced_by_indices, product, Structure};

pub use crate::library::directed_cycle;

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn cycle_length(s: &Structure) -> Option<usize> {
    let n = s.len();
    (n >= 2 && directed_cycle(n).ok().as_ref() == Some(s)).then_some(n)
}

/// `k ↦ (k mod p, k mod q)` as an isomorphism `C_pq → C_p × C_q`.
pub fn crt_isomorphism(p: usize, q: usize) -> Result<(Structure, Homomorphism)> {
    if p < 2 {
        return Err(Error::BadN(p));
    }
    if q < 2 {
        return Err(Error::BadN(q));
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let big = directed_cycle(p * q)?;
    let prod = product(&directed_cycle(p)?, &directed_cycle(q)?)?;
    let map: Vec<usize> = (0..p * q).map(|k| (k % p) * q + k % q).collect();
    if !is_isomorphism(&big, &prod, &map) {
        return Err(Error::ValidationFailure("CRT map is not an isomorphism".into()));
    }
    let hom = Homomorphism::new(&big, &prod, map)?;
    Ok((prod, hom))
}

/// From a coloring `φ` of `(C_kp)^I_F`, the coloring `ψ(f) = φ(kf) div k`
/// of `(C_p)^I_F`.
pub fn divisor_transfer(
    big: &TolerantPower,
    phi: &[usize],
    k: usize,
    p: usize,
    budgets: &Budgets,
) -> Result<(TolerantPower, Homomorphism)> {
    if k < 2 || p < 2 {
        return Err(Error::BadN(k.min(p)));
    }
    if cycle_length(big.base()) != Some(k * p) {
        return Err(Error::InvalidInput(format!("expected a power of C_{}", k * p)));
    }
    check_homomorphism(big.carrier(), big.base(), phi)?;
    let small = TolerantPower::new(&directed_cycle(p)?, big.filter(), budgets, Exec::default())?;
    let psi: Vec<usize> = (0..small.carrier().len())
        .map(|c| {
            let kf: Vec<usize> = small.function(c).iter().map(|&v| k * v).collect();
            phi[big.element(&kf)] / k
        })
        .collect();
    let hom = Homomorphism::new(small.carrier(), small.base(), psi)
        .map_err(|e| Error::ValidationFailure(format!("transferred coloring: {e}")))?;
    Ok((small, hom))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub count: usize,
    /// Quotient elements of each component.
    pub components: Vec<Vec<usize>>,
    /// An isomorphism from each component onto `C_n`.
    pub witnesses: Vec<Homomorphism>,
}

/// Splits the agreement quotient of a `C_n` power into components and
/// matches each against `C_n`; there are exactly `n^(|base|-1)` of them.
pub fn component_census(p: &TolerantPower, q: &AgreementQuotient, budgets: &Budgets) -> Result<Census> {
    let n = cycle_length(p.base()).ok_or_else(|| Error::InvalidInput("base is not a directed cycle".into()))?;
    let cycle = directed_cycle(n)?;
    let components = connected_components(&q.quotient);
    let mut witnesses = Vec::with_capacity(components.len());
    for comp in &components {
        let sub = induced_by_indices(&q.quotient, comp)?;
        match find_isomorphism(&sub, &cycle, budgets)? {
            Some(h) => witnesses.push(h),
            None => return Err(Error::CensusFailure(format!("component of {} elements is not C_{n}", comp.len()))),
        }
    }
    let expected = checked_pow(n, p.filter().base_indices().len() - 1);
    if components.len() as u128 != expected {
        return Err(Error::CensusFailure(format!("{} components, expected {expected}", components.len())));
    }
    Ok(Census { count: components.len(), components, witnesses })
}

/// A family of disjoint `p`-sets and the filter on its partial choice
/// functions generated by the sets `x⁺`.
///
/// Partial choice functions are numbered in mixed radix `p + 1`, set 0 most
/// significant: digit 0 means undefined, digit `j + 1` picks element `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceInstance {
    pub sets: Vec<Vec<String>>,
    pub p: usize,
    pub filter: FiniteFilter,
}

impl ChoiceInstance {
    pub fn index_size(&self) -> usize {
        self.filter.size()
    }

    /// The choice of `c` on set `x`, if `x` is in its domain.
    pub fn choice(&self, c: usize, x: usize) -> Option<usize> {
        let shift = self.sets.len() - 1 - x;
        let digit = c / (self.p + 1).pow(shift as u32) % (self.p + 1);
        digit.checked_sub(1)
    }

    /// `"a:b,c:-"`-style description of a partial choice function.
    pub fn describe(&self, c: usize) -> String {
        (0..self.sets.len())
            .map(|x| match self.choice(c, x) {
                Some(j) => self.sets[x][j].clone(),
                None => "-".to_string(),
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// `x⁺`: partial choice functions defined on `x`.
    pub fn defined_on(&self, x: usize) -> Subset {
        subset_of(self.index_size(), (0..self.index_size()).filter(|&c| self.choice(c, x).is_some()))
            .expect("indices in range")
    }
}

/// Parses `"a,b;c,d"`.
pub fn parse_family(text: &str) -> Vec<Vec<String>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.split(',').map(|e| e.trim().to_string()).collect())
        .collect()
}

pub fn choice_filter(sets: &[Vec<String>], budgets: &Budgets) -> Result<ChoiceInstance> {
    let Some(first) = sets.first() else {
        return Err(Error::InvalidInput("at least one set is required".into()));
    };
    let p = first.len();
    if p < 2 {
        return Err(Error::InvalidInput("sets need at least two elements".into()));
    }
    let mut seen = BTreeSet::new();
    for s in sets {
        if s.len() != p {
            return Err(Error::InvalidInput("all sets must have the same size".into()));
        }
        for e in s {
            if !seen.insert(e.as_str()) {
                return Err(Error::InvalidInput(format!("element `{e}` occurs twice")));
            }
        }
    }
    let size = checked_pow(p + 1, sets.len());
    if size > budgets.max_power_size as u128 {
        return Err(Error::budget("partial choice functions", size, budgets.max_power_size as u128));
    }
    let draft = ChoiceInstance { sets: sets.to_vec(), p, filter: FiniteFilter::trivial(size as usize)? };
    let generators: Vec<Subset> = (0..sets.len()).map(|x| draft.defined_on(x)).collect();
    let filter = FiniteFilter::from_generators(size as usize, &generators)?;
    Ok(ChoiceInstance { filter, ..draft })
}

/// The subset `y_x` read off one set of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishedSet {
    pub set: usize,
    /// How often each element of the set is distinguished.
    pub counts: Vec<usize>,
    /// Positions (within the set) of the most distinguished elements.
    pub subset: Vec<usize>,
}

/// All permutations of `0..p` in lexicographic order.
pub fn permutations(p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = (0..p).collect::<Vec<_>>();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..p.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..p).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// For each set `x`, counts how often each element is distinguished by the
/// classes `{ψ, ψ+1, .., ψ+p-1}` of bijections `x → Z_p`, and returns the
/// most frequent elements.
pub fn distinguished_subset(inst: &ChoiceInstance, phi: &PowerMap<'_>) -> Result<Vec<DistinguishedSet>> {
    let p = inst.p;
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("set size {p} is not prime")));
    }
    let cycle = directed_cycle(p)?;
    phi.check(&cycle, &inst.filter)?;
    let size = inst.index_size();
    let mut out = Vec::with_capacity(inst.sets.len());
    for x in 0..inst.sets.len() {
        let mut counts = vec![0; p];
        // least member of each class has ψ(first element) = 0
        for psi in permutations(p).into_iter().filter(|psi| psi[0] == 0) {
            let colors: Vec<usize> = (0..p)
                .map(|k| {
                    let f: Vec<usize> =
                        (0..size).map(|c| inst.choice(c, x).map_or(0, |j| (psi[j] + k) % p)).collect();
                    phi.apply(&f)
                })
                .collect();
            if (0..p).any(|k| colors[(k + 1) % p] != (colors[k] + 1) % p) {
                return Err(Error::InvalidHomomorphism(format!("a copy of C_{p} in set {x} is not mapped onto C_{p}")));
            }
            let k = colors.iter().position(|&c| c == 0).expect("copy is mapped onto C_p");
            let j = (0..p).find(|&j| (psi[j] + k) % p == 0).expect("bijection");
            counts[j] += 1;
        }
        let best = *counts.iter().max().expect("p >= 2");
        let subset: Vec<usize> = (0..p).filter(|&j| counts[j] == best).collect();
        if subset.is_empty() || subset.len() == p {
            return Err(Error::ExtractionFailure(format!("set {x}: distinguished counts {counts:?} are uniform")));
        }
        out.push(DistinguishedSet { set: x, counts, subset });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderHom {
    pub power: TolerantPower,
    pub quotient: AgreementQuotient,
    /// Quotient classes listed in the chosen linear extension.
    pub linear_order: Vec<usize>,
    pub hom: Homomorphism,
}

/// The homomorphism from the agreement quotient of `({0,1}; ≤, ≠)^I_F`
/// to the base: extend `≤` on classes to a linear order `⪯` and send the
/// class of `1_X` to 0 iff it precedes the class of `1_X̄`.
pub fn order_structure_hom(filter: &FiniteFilter, budgets: &Budgets) -> Result<OrderHom> {
    let a = order_structure();
    let power = TolerantPower::new(&a, filter, budgets, Exec::default())?;
    let quotient = quotient_by_agreement(&power)?;
    let q = &quotient.quotient;
    let n = q.len();
    let leq = q.signature().position(LEQ).expect("order symbol");
    let rel = q.relation(leq);
    for c in 0..n {
        if !rel.contains(&vec![c, c]) {
            return Err(Error::NotAPartialOrder(format!("{} is not reflexive", q.id(c))));
        }
    }
    for t in rel {
        if t[0] != t[1] && rel.contains(&vec![t[1], t[0]]) {
            return Err(Error::NotAPartialOrder(format!("{} and {} are mutually below", q.id(t[0]), q.id(t[1]))));
        }
        for u in rel.range(vec![t[1], 0]..vec![t[1] + 1, 0]) {
            if !rel.contains(&vec![t[0], u[1]]) {
                return Err(Error::NotAPartialOrder("not transitive".into()));
            }
        }
    }
    // Kahn's algorithm, always taking the least available class
    let mut indegree = vec![0usize; n];
    for t in rel.iter().filter(|t| t[0] != t[1]) {
        indegree[t[1]] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&c| indegree[c] == 0).collect();
    let mut linear_order = Vec::with_capacity(n);
    while let Some(c) = ready.pop_first() {
        linear_order.push(c);
        for t in rel.range(vec![c, 0]..vec![c + 1, 0]).filter(|t| t[1] != c) {
            indegree[t[1]] -= 1;
            if indegree[t[1]] == 0 {
                ready.insert(t[1]);
            }
        }
    }
    if linear_order.len() != n {
        return Err(Error::NotAPartialOrder("cycle in the order".into()));
    }
    let mut position = vec![0; n];
    for (i, &c) in linear_order.iter().enumerate() {
        position[c] = i;
    }
    let assignment: Vec<usize> = (0..n)
        .map(|c| {
            let f = power.function(quotient.representatives[c]);
            let flipped: Vec<usize> = f.iter().map(|&v| 1 - v).collect();
            let d = quotient.class_of[power.element(&flipped)];
            usize::from(position[c] > position[d])
        })
        .collect();
    let hom = Homomorphism::new(q, &a, assignment)
        .map_err(|e| Error::ValidationFailure(format!("order map: {e}")))?;
    debug_assert!(q.signature().position(NEQ).is_some());
    Ok(OrderHom { power, quotient, linear_order, hom })
}
