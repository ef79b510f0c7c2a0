//! Filter-tolerant powers `A^I_F`, the agreement quotient, and the maps
//! between powers and their base structure.
//!
//! A function `f: I → A` is stored as its carrier index: the digits of `f`
//! in base `|A|`, coordinate 0 most significant. Carrier order is therefore
//! the lexicographic order of value tuples, and the element id of `f` is the
//! comma-joined ids of its values, e.g. `"0,1,0"`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{checked_pow, Budgets};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::filters::{full_subset, FiniteFilter, Subset};
use crate::hom::{check_homomorphism, inclusion, Homomorphism};
use crate::structure::{Structure, Tuple};

/// Bijection between functions `I → A` and `0..|A|^|I|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionCodec {
    radix: usize,
    len: usize,
    count: usize,
}

impl FunctionCodec {
    pub fn new(radix: usize, len: usize, budget: u64) -> Result<Self> {
        let size = checked_pow(radix, len);
        if size > budget as u128 {
            return Err(Error::budget("power universe", size, budget as u128));
        }
        Ok(FunctionCodec { radix, len, count: size as usize })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn index_len(&self) -> usize {
        self.len
    }

    pub fn encode(&self, f: &[usize]) -> usize {
        debug_assert_eq!(f.len(), self.len);
        f.iter().fold(0, |acc, &v| acc * self.radix + v)
    }

    pub fn decode(&self, mut code: usize) -> Vec<usize> {
        let mut f = vec![0; self.len];
        for slot in f.iter_mut().rev() {
            *slot = code % self.radix;
            code /= self.radix;
        }
        f
    }
}

/// Comma-joined ids of the values of `f`.
pub fn function_id(a: &Structure, f: &[usize]) -> String {
    f.iter().map(|&v| a.id(v)).collect::<Vec<_>>().join(",")
}

/// `{i : (f_1(i), .., f_k(i)) ∈ R_k(A)}`.
pub fn agreement_set(a: &Structure, symbol: usize, fns: &[&[usize]]) -> Subset {
    let len = fns.first().map_or(0, |f| f.len());
    let mut out = Subset::with_capacity(len);
    let mut column = Vec::with_capacity(fns.len());
    for i in 0..len {
        column.clear();
        column.extend(fns.iter().map(|f| f[i]));
        if a.contains(symbol, &column) {
            out.insert(i);
        }
    }
    out
}

/// Membership in `R_k(A^I_F)` straight from the definition.
pub fn is_related(a: &Structure, filter: &FiniteFilter, symbol: usize, fns: &[&[usize]]) -> bool {
    filter.contains_set(&agreement_set(a, symbol, fns))
}

/// `A^I_F`, materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TolerantPower {
    base: Structure,
    filter: FiniteFilter,
    codec: FunctionCodec,
    carrier: Structure,
}

impl TolerantPower {
    /// Builds the carrier. Related tuples are generated directly: on base
    /// coordinates the column of values must be a tuple of `R(A)`, elsewhere
    /// it is arbitrary.
    pub fn new(a: &Structure, filter: &FiniteFilter, budgets: &Budgets, exec: Exec) -> Result<Self> {
        let codec = FunctionCodec::new(a.len(), filter.size(), budgets.max_power_size)?;
        let universe: Vec<String> = (0..codec.count()).map(|c| function_id(a, &codec.decode(c))).collect();
        let in_base: Vec<bool> = (0..filter.size()).map(|i| filter.base().contains(i)).collect();
        let mut relations = Vec::with_capacity(a.signature().len());
        for (k, (sym, rel)) in a.relations().enumerate() {
            let related: Vec<Tuple> = rel.iter().cloned().collect();
            let free = all_columns(a.len(), sym.arity);
            let columns: Vec<&[Tuple]> =
                in_base.iter().map(|&b| if b { &related[..] } else { &free[..] }).collect();
            let total = columns.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
            if total > budgets.max_power_tuples as u128 {
                return Err(Error::budget("power relation size", total, budgets.max_power_tuples as u128));
            }
            let _ = k;
            let tuples = if columns.is_empty() {
                BTreeSet::new()
            } else {
                let chunks = exec.map(columns[0], |first| {
                    let mut out = Vec::new();
                    let mut acc = first.clone();
                    extend_columns(&columns[1..], a.len(), &mut acc, &mut out);
                    out
                });
                chunks.into_iter().flatten().collect()
            };
            relations.push(tuples);
        }
        let carrier = Structure::new(a.signature().clone(), universe, relations)?;
        Ok(TolerantPower { base: a.clone(), filter: filter.clone(), codec, carrier })
    }

    /// Wraps an externally supplied carrier. Only the universe size is
    /// checked; use [`lex_sum_check`] or [`TolerantPower::check_definition`]
    /// to audit its relations.
    pub fn from_raw_parts(a: &Structure, filter: &FiniteFilter, carrier: Structure) -> Result<Self> {
        let codec = FunctionCodec::new(a.len(), filter.size(), u64::MAX)?;
        if carrier.len() != codec.count() {
            return Err(Error::InvalidInput(format!(
                "carrier has {} elements, expected {}",
                carrier.len(),
                codec.count()
            )));
        }
        a.signature().ensure_same(carrier.signature())?;
        Ok(TolerantPower { base: a.clone(), filter: filter.clone(), codec, carrier })
    }

    pub fn base(&self) -> &Structure {
        &self.base
    }

    pub fn filter(&self) -> &FiniteFilter {
        &self.filter
    }

    pub fn carrier(&self) -> &Structure {
        &self.carrier
    }

    pub fn codec(&self) -> &FunctionCodec {
        &self.codec
    }

    pub fn index_size(&self) -> usize {
        self.filter.size()
    }

    pub fn function(&self, element: usize) -> Vec<usize> {
        self.codec.decode(element)
    }

    pub fn element(&self, f: &[usize]) -> usize {
        self.codec.encode(f)
    }

    /// The constant function with value `k`.
    pub fn constant(&self, k: usize) -> usize {
        self.element(&vec![k; self.index_size()])
    }

    /// `1_X`: value `1` on `X`, `0` elsewhere (needs `|A| >= 2`).
    pub fn characteristic(&self, x: &Subset) -> usize {
        assert!(self.base.len() >= 2, "characteristic functions need two values");
        let f: Vec<usize> = (0..self.index_size()).map(|i| usize::from(x.contains(i))).collect();
        self.element(&f)
    }

    /// Re-derives every relation from the membership definition and compares.
    /// Exhaustive over `|carrier|^arity` tuples.
    pub fn check_definition(&self) -> bool {
        let n = self.carrier.len();
        let fns: Vec<Vec<usize>> = (0..n).map(|c| self.function(c)).collect();
        self.carrier.relations().enumerate().all(|(k, (sym, rel))| {
            let mut count = 0usize;
            for t in all_columns(n, sym.arity) {
                let refs: Vec<&[usize]> = t.iter().map(|&c| fns[c].as_slice()).collect();
                let member = is_related(&self.base, &self.filter, k, &refs);
                if member != rel.contains(&t) {
                    return false;
                }
                count += usize::from(member);
            }
            count == rel.len()
        })
    }
}

fn all_columns(n: usize, arity: usize) -> Vec<Tuple> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out.into_iter().flat_map(|t| (0..n).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

fn extend_columns(rest: &[&[Tuple]], radix: usize, acc: &mut Tuple, out: &mut Vec<Tuple>) {
    let Some((choices, tail)) = rest.split_first() else {
        out.push(acc.clone());
        return;
    };
    let saved = acc.clone();
    for col in choices.iter() {
        for (slot, (&prev, &v)) in acc.iter_mut().zip(saved.iter().zip(col)) {
            *slot = prev * radix + v;
        }
        extend_columns(tail, radix, acc, out);
    }
    acc.copy_from_slice(&saved);
}

/// The ordinary power `A^n` (trivial filter).
pub fn ordinary_power(a: &Structure, n: usize, budgets: &Budgets, exec: Exec) -> Result<TolerantPower> {
    TolerantPower::new(a, &FiniteFilter::trivial(n)?, budgets, exec)
}

/// Alias matching the operation name used in reports.
pub fn tolerant_power(a: &Structure, filter: &FiniteFilter, budgets: &Budgets) -> Result<TolerantPower> {
    TolerantPower::new(a, filter, budgets, Exec::default())
}

/// `~`-classes of a power: `f ~ g` iff they agree on the filter base.
pub fn agreement_classes(p: &TolerantPower) -> (Vec<Vec<usize>>, Vec<usize>) {
    let base = p.filter().base_indices();
    let mut by_key: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for c in 0..p.carrier().len() {
        let f = p.function(c);
        by_key.entry(base.iter().map(|&i| f[i]).collect()).or_default().push(c);
    }
    // lexicographic key order on the base equals order of least members
    let classes: Vec<Vec<usize>> = by_key.into_values().collect();
    let mut class_of = vec![0; p.carrier().len()];
    for (k, class) in classes.iter().enumerate() {
        for &c in class {
            class_of[c] = k;
        }
    }
    (classes, class_of)
}

/// `A^I_F / ~` together with its projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementQuotient {
    pub classes: Vec<Vec<usize>>,
    /// Least member of each class.
    pub representatives: Vec<usize>,
    pub class_of: Vec<usize>,
    pub quotient: Structure,
    pub projection: Homomorphism,
}

pub fn quotient_by_agreement(p: &TolerantPower) -> Result<AgreementQuotient> {
    let (classes, class_of) = agreement_classes(p);
    let representatives: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let universe = representatives.iter().map(|&r| p.carrier().id(r).to_string()).collect();
    let relations = p
        .carrier()
        .relations()
        .map(|(_, rel)| rel.iter().map(|t| t.iter().map(|&c| class_of[c]).collect()).collect())
        .collect();
    let quotient = Structure::new(p.carrier().signature().clone(), universe, relations)?;
    let projection = Homomorphism::new(p.carrier(), &quotient, class_of.clone())?;
    Ok(AgreementQuotient { classes, representatives, class_of, quotient, projection })
}

impl AgreementQuotient {
    /// `ψ(class) = min φ(class)` in `A`'s universe order.
    pub fn push_hom(&self, p: &TolerantPower, phi: &[usize]) -> Result<Homomorphism> {
        self.push_into(p, p.base(), phi)
    }

    /// As [`AgreementQuotient::push_hom`] for a homomorphism into any
    /// `target`. Valid because related class tuples have related member
    /// tuples through any choice of members.
    pub fn push_into(&self, p: &TolerantPower, target: &Structure, phi: &[usize]) -> Result<Homomorphism> {
        check_homomorphism(p.carrier(), target, phi)?;
        let psi: Vec<usize> =
            self.classes.iter().map(|class| class.iter().map(|&c| phi[c]).min().expect("classes are nonempty")).collect();
        Homomorphism::new(&self.quotient, target, psi)
            .map_err(|e| Error::ValidationFailure(format!("pushed map is not a homomorphism: {e}")))
    }
}

pub fn push_hom_to_quotient(q: &AgreementQuotient, p: &TolerantPower, phi: &[usize]) -> Result<Homomorphism> {
    q.push_hom(p, phi)
}

/// `φ(f) = f(i₀)` for the ultrafilter `u` at `i₀`.
pub fn ultrafilter_hom(p: &TolerantPower, u: &FiniteFilter) -> Result<Homomorphism> {
    if u.size() != p.index_size() {
        return Err(Error::InvalidInput("ultrafilter lives on a different index set".into()));
    }
    let point = u.ultrafilter_point().ok_or(Error::NotUltrafilter)?;
    if !u.contains_filter(p.filter()) {
        return Err(Error::NotContaining);
    }
    let phi = (0..p.carrier().len()).map(|c| p.function(c)[point]).collect();
    Homomorphism::new(p.carrier(), p.base(), phi)
        .map_err(|e| Error::ValidationFailure(format!("ultrafilter map: {e}")))
}

/// A map from the functions `I → A` of a power back to `A`.
#[derive(Debug, Clone, Copy)]
pub enum PowerMap<'a> {
    /// `f ↦ f(index)`; a homomorphism exactly when `index` is in the filter
    /// base.
    Evaluation { index: usize },
    /// An explicit table over a materialized carrier.
    Table { power: &'a TolerantPower, assignment: &'a [usize] },
}

impl PowerMap<'_> {
    pub fn apply(&self, f: &[usize]) -> usize {
        match self {
            PowerMap::Evaluation { index } => f[*index],
            PowerMap::Table { power, assignment } => assignment[power.element(f)],
        }
    }

    /// Checks that the map is a homomorphism `A^I_F → A`.
    pub fn check(&self, a: &Structure, filter: &FiniteFilter) -> Result<()> {
        match self {
            PowerMap::Evaluation { index } => {
                if *index >= filter.size() {
                    return Err(Error::InvalidHomomorphism(format!("index {index} outside the index set")));
                }
                if !filter.base().contains(*index) {
                    return Err(Error::InvalidHomomorphism(format!(
                        "evaluation at {index} outside the filter base {}",
                        crate::filters::format_subset(filter.base())
                    )));
                }
                Ok(())
            }
            PowerMap::Table { power, assignment } => {
                if power.base() != a || power.filter() != filter {
                    return Err(Error::InvalidHomomorphism("table belongs to a different power".into()));
                }
                check_homomorphism(power.carrier(), a, assignment)
            }
        }
    }
}

/// The natural map `ψ: B → A^I_F`, `ψ(x)(i) = i(x)`, where `I` lists every
/// map `B → A` and `F` is generated by the sets
/// `(R, x̄)⁺ = {i : i(x̄) ∈ R(A)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalEmbedding {
    /// Index `m` is the map `B → A` with code `m` (lexicographic).
    pub maps: FunctionCodec,
    pub filter: FiniteFilter,
    /// `ψ(x)` for each element `x` of `B`, as a function `I → A`.
    pub images: Vec<Vec<usize>>,
}

pub fn canonical_embedding(b: &Structure, a: &Structure, budgets: &Budgets, exec: Exec) -> Result<CanonicalEmbedding> {
    b.signature().ensure_same(a.signature())?;
    let maps = FunctionCodec::new(a.len(), b.len(), budgets.max_power_size)?;
    let size = maps.count();
    let images: Vec<Vec<usize>> = {
        let decoded: Vec<Vec<usize>> = exec.map_range(size, |m| maps.decode(m));
        (0..b.len()).map(|x| decoded.iter().map(|i| i[x]).collect()).collect()
    };
    let constraints: Vec<(usize, &Tuple)> =
        b.relations().enumerate().flat_map(|(k, (_, rel))| rel.iter().map(move |t| (k, t))).collect();
    let generators: Vec<Subset> = exec.map(&constraints, |&(k, t)| {
        let fns: Vec<&[usize]> = t.iter().map(|&x| images[x].as_slice()).collect();
        agreement_set(a, k, &fns)
    });
    let filter = if generators.is_empty() {
        FiniteFilter::trivial(size)?
    } else {
        FiniteFilter::from_generators(size, &generators)?
    };
    Ok(CanonicalEmbedding { maps, filter, images })
}

impl CanonicalEmbedding {
    pub fn index_size(&self) -> usize {
        self.filter.size()
    }

    /// Checks that `ψ` is a homomorphism `B → A^I_F` using the membership
    /// definition (the carrier is never built).
    pub fn check(&self, b: &Structure, a: &Structure) -> Result<()> {
        for (k, (sym, rel)) in b.relations().enumerate() {
            for t in rel {
                let fns: Vec<&[usize]> = t.iter().map(|&x| self.images[x].as_slice()).collect();
                if !is_related(a, &self.filter, k, &fns) {
                    return Err(Error::InvalidHomomorphism(format!(
                        "image of a {} tuple is not related in the power",
                        sym.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// `φ_u ∘ ψ` for the ultrafilter at `index`: the map `x ↦ ψ(x)(index)`.
    pub fn compose_evaluation(&self, index: usize) -> Vec<usize> {
        self.images.iter().map(|f| f[index]).collect()
    }
}

/// For a finite substructure `sub` of the carrier (element ids are carrier
/// ids): the common support `S_B` of all its tuples and the evaluation at the
/// least index of `S_B`.
pub fn evaluation_hom(p: &TolerantPower, sub: &Structure) -> Result<(Subset, Homomorphism)> {
    let embed = inclusion(sub, p.carrier())?;
    check_homomorphism(sub, p.carrier(), &embed)
        .map_err(|e| Error::InvalidInput(format!("not a substructure of the carrier: {e}")))?;
    let fns: Vec<Vec<usize>> = embed.iter().map(|&c| p.function(c)).collect();
    let mut support = full_subset(p.index_size());
    for (k, (_, rel)) in sub.relations().enumerate() {
        for t in rel {
            let refs: Vec<&[usize]> = t.iter().map(|&x| fns[x].as_slice()).collect();
            support.intersect_with(&agreement_set(p.base(), k, &refs));
        }
    }
    if !p.filter().contains_set(&support) {
        return Err(Error::ValidationFailure("common support is not a filter member".into()));
    }
    let index = support.ones().next().expect("filter members are nonempty");
    let phi = fns.iter().map(|f| f[index]).collect();
    let hom = Homomorphism::new(sub, p.base(), phi).map_err(|e| Error::ValidationFailure(e.to_string()))?;
    Ok((support, hom))
}

/// Outcome of [`lex_sum_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexSumReport {
    pub holds: bool,
    pub tuples_checked: usize,
    pub sampled: bool,
    /// First failing substitution: symbol, original tuple, substituted tuple.
    pub counterexample: Option<(String, Tuple, Tuple)>,
}

/// Tuples per relation above which the check samples instead of enumerating.
pub const LEX_SUM_EXHAUSTIVE_LIMIT: usize = 10_000;

/// Checks that replacing any coordinate of a related tuple by a
/// `~`-equivalent function keeps it related.
pub fn lex_sum_check(p: &TolerantPower) -> LexSumReport {
    let (classes, class_of) = agreement_classes(p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e55u64);
    let mut report = LexSumReport { holds: true, tuples_checked: 0, sampled: false, counterexample: None };
    for (k, (sym, rel)) in p.carrier().relations().enumerate() {
        let tuples: Vec<&Tuple> = rel.iter().collect();
        let chosen: Vec<usize> = if tuples.len() > LEX_SUM_EXHAUSTIVE_LIMIT {
            report.sampled = true;
            let mut idx = sample(&mut rng, tuples.len(), LEX_SUM_EXHAUSTIVE_LIMIT).into_vec();
            idx.sort_unstable();
            idx
        } else {
            (0..tuples.len()).collect()
        };
        for &ti in &chosen {
            let t = tuples[ti];
            report.tuples_checked += 1;
            for j in 0..t.len() {
                for &g in &classes[class_of[t[j]]] {
                    let mut s = t.clone();
                    s[j] = g;
                    if !p.carrier().contains(k, &s) {
                        report.holds = false;
                        report.counterexample = Some((sym.name.clone(), t.clone(), s));
                        return report;
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_isomorphism;
    use crate::library::{complete_graph, directed_cycle, isolated_point, single_edge};
    use crate::structure::connected_components;

    fn budgets() -> Budgets {
        Budgets::default()
    }

    fn power(a: &Structure, size: usize, base: &[usize]) -> TolerantPower {
        let f = FiniteFilter::from_indices(size, base.iter().copied()).unwrap();
        TolerantPower::new(a, &f, &budgets(), Exec::Sequential).unwrap()
    }

    fn edges(p: &TolerantPower) -> BTreeSet<(String, String)> {
        p.carrier().relation(0).iter().map(|t| (p.carrier().id(t[0]).into(), p.carrier().id(t[1]).into())).collect()
    }

    #[test]
    fn codec_is_lexicographic() {
        let c = FunctionCodec::new(3, 2, 100).unwrap();
        assert_eq!(c.count(), 9);
        assert_eq!(c.encode(&[1, 2]), 5);
        assert_eq!(c.decode(5), vec![1, 2]);
        assert!(FunctionCodec::new(3, 9, 100).is_err());
    }

    #[test]
    fn full_agreement_gives_two_edges() {
        let p = power(&complete_graph(2), 2, &[0, 1]);
        let expect: BTreeSet<(String, String)> = [("0,0", "1,1"), ("1,1", "0,0"), ("0,1", "1,0"), ("1,0", "0,1")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(edges(&p), expect);
        assert!(p.check_definition());
    }

    #[test]
    fn base_zero_gives_complete_bipartite() {
        let p = power(&complete_graph(2), 2, &[0]);
        let left = ["0,0", "0,1"];
        let right = ["1,0", "1,1"];
        let mut expect = BTreeSet::new();
        for l in left {
            for r in right {
                expect.insert((l.to_string(), r.to_string()));
                expect.insert((r.to_string(), l.to_string()));
            }
        }
        assert_eq!(edges(&p), expect);
        assert!(p.check_definition());
    }

    #[test]
    fn single_index_power_is_the_base() {
        let c3 = directed_cycle(3).unwrap();
        let p = power(&c3, 1, &[0]);
        assert_eq!(p.carrier(), &c3);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let k3 = complete_graph(3);
        let f = FiniteFilter::from_indices(4, [1, 3]).unwrap();
        let a = TolerantPower::new(&k3, &f, &budgets(), Exec::Sequential).unwrap();
        let b = TolerantPower::new(&k3, &f, &budgets(), Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tuple_budget_is_enforced() {
        let small = Budgets { max_power_tuples: 10, ..budgets() };
        let f = FiniteFilter::trivial(3).unwrap();
        assert!(matches!(
            TolerantPower::new(&complete_graph(3), &f, &small, Exec::Sequential),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn quotient_collapses_to_clique() {
        let p = power(&complete_graph(2), 2, &[0]);
        let q = quotient_by_agreement(&p).unwrap();
        let named: Vec<Vec<&str>> =
            q.classes.iter().map(|c| c.iter().map(|&x| p.carrier().id(x)).collect()).collect();
        assert_eq!(named, vec![vec!["0,0", "0,1"], vec!["1,0", "1,1"]]);
        assert!(find_isomorphism(&q.quotient, &complete_graph(2), &budgets()).unwrap().is_some());
    }

    #[test]
    fn full_base_quotient_is_carrier() {
        let p = power(&directed_cycle(3).unwrap(), 2, &[0, 1]);
        let q = quotient_by_agreement(&p).unwrap();
        assert_eq!(q.quotient.len(), 9);
        assert_eq!(&q.quotient, p.carrier());
    }

    #[test]
    fn ultrafilter_hom_is_evaluation() {
        let p = power(&complete_graph(2), 2, &[0, 1]);
        let u = FiniteFilter::ultrafilter_at(2, 0).unwrap();
        let h = ultrafilter_hom(&p, &u).unwrap();
        assert_eq!(h.assignment(), &[0, 0, 1, 1]);
        let p0 = power(&complete_graph(2), 2, &[0]);
        let outside = FiniteFilter::ultrafilter_at(2, 1).unwrap();
        assert_eq!(ultrafilter_hom(&p0, &outside), Err(Error::NotContaining));
        assert_eq!(ultrafilter_hom(&p0, &FiniteFilter::trivial(2).unwrap()), Err(Error::NotUltrafilter));
        let p1 = power(&complete_graph(3), 1, &[0]);
        let h1 = ultrafilter_hom(&p1, &FiniteFilter::trivial(1).unwrap()).unwrap();
        assert_eq!(h1.assignment(), &[0, 1, 2]);
    }

    #[test]
    fn canonical_embedding_of_an_edge() {
        let b = single_edge();
        let a = complete_graph(2);
        let emb = canonical_embedding(&b, &a, &budgets(), Exec::Sequential).unwrap();
        assert_eq!(emb.index_size(), 4);
        // maps 00, 01, 10, 11: the homomorphisms are 01 and 10
        assert_eq!(emb.filter.base_indices(), vec![1, 2]);
        assert_eq!(function_id(&a, &emb.images[0]), "0,0,1,1");
        assert_eq!(function_id(&a, &emb.images[1]), "0,1,0,1");
        emb.check(&b, &a).unwrap();
        for u in emb.filter.extend_to_ultrafilters() {
            let composed = emb.compose_evaluation(u.ultrafilter_point().unwrap());
            assert!(crate::hom::is_homomorphism(&b, &a, &composed));
        }
    }

    #[test]
    fn canonical_embedding_without_homomorphism_is_improper() {
        let r = canonical_embedding(&complete_graph(3), &complete_graph(2), &budgets(), Exec::Sequential);
        assert_eq!(r, Err(Error::ImproperFilter));
    }

    #[test]
    fn canonical_embedding_of_isolated_point_is_trivial() {
        let emb = canonical_embedding(&isolated_point(), &complete_graph(2), &budgets(), Exec::Sequential).unwrap();
        assert_eq!(emb.filter, FiniteFilter::trivial(2).unwrap());
        emb.check(&isolated_point(), &complete_graph(2)).unwrap();
    }

    #[test]
    fn evaluation_on_finite_substructures() {
        let p = power(&complete_graph(2), 2, &[0]);
        let sub = crate::structure::induced_substructure(p.carrier(), &["0,0", "1,1"]).unwrap();
        let sub = crate::structure::StructureFile::new(["0,0", "1,1"])
            .relation("E", 2, [["0,0", "1,1"]])
            .build()
            .inspect(|s| assert!(s.relation(0).len() <= sub.relation(0).len()))
            .unwrap();
        let (support, hom) = evaluation_hom(&p, &sub).unwrap();
        assert!(support.contains(0));
        assert_eq!(hom.assignment(), &[0, 1]);

        let lonely = crate::structure::StructureFile::new(["1,0"]).relation("E", 2, Vec::<Vec<String>>::new()).build().unwrap();
        let (support, hom) = evaluation_hom(&p, &lonely).unwrap();
        assert_eq!(support, full_subset(2));
        assert_eq!(hom.assignment(), &[1]);

        let full = power(&complete_graph(2), 2, &[0, 1]);
        let (support, _) = evaluation_hom(&full, full.carrier()).unwrap();
        assert_eq!(support, full_subset(2));
    }

    #[test]
    fn pushing_evaluation_to_quotient() {
        let p = power(&complete_graph(2), 2, &[0]);
        let q = quotient_by_agreement(&p).unwrap();
        let phi = ultrafilter_hom(&p, &FiniteFilter::ultrafilter_at(2, 0).unwrap()).unwrap();
        let psi = q.push_hom(&p, phi.assignment()).unwrap();
        assert_eq!(psi.assignment(), &[0, 1]);
        for (c, &k) in q.class_of.iter().enumerate() {
            assert_eq!(psi.image(k), phi.image(q.representatives[k]).min(phi.image(c)));
        }
    }

    #[test]
    fn constant_map_pushes_to_constant() {
        let a = crate::library::looped_point();
        let p = power(&a, 2, &[1]);
        let q = quotient_by_agreement(&p).unwrap();
        let psi = q.push_hom(&p, &vec![0; p.carrier().len()]).unwrap();
        assert!(psi.assignment().iter().all(|&v| v == 0));
    }

    #[test]
    fn lex_sum_holds_and_detects_corruption() {
        let p = power(&complete_graph(2), 2, &[0]);
        assert!(lex_sum_check(&p).holds);
        assert!(lex_sum_check(&power(&complete_graph(3), 1, &[0])).holds);

        let mut file = p.carrier().to_file();
        file.relations.get_mut("E").unwrap().tuples.retain(|t| t != &vec!["0,0".to_string(), "1,0".to_string()]);
        let broken = TolerantPower::from_raw_parts(p.base(), p.filter(), file.build().unwrap()).unwrap();
        let report = lex_sum_check(&broken);
        assert!(!report.holds);
        assert!(report.counterexample.is_some());
        assert!(!broken.check_definition());
    }

    #[test]
    fn components_of_cycle_power_quotient() {
        let p = power(&directed_cycle(3).unwrap(), 2, &[0, 1]);
        let q = quotient_by_agreement(&p).unwrap();
        assert_eq!(connected_components(&q.quotient).len(), 3);
    }
}
