//! Homomorphism search: arc consistency (width-one propagation) to a greatest
//! fixpoint, then backtracking.
//!
//! Propagation is tuple-directed: the worklist holds constraints, one per
//! tuple of the source structure, so relations of any arity are handled the
//! same way. A target tuple supports a constraint when every coordinate lies
//! in the current domain of the matching variable and repeated variables
//! receive equal values.

use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::hom::Homomorphism;
use crate::structure::Structure;

/// Candidate target values for every source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainState {
    domains: Vec<FixedBitSet>,
}

impl DomainState {
    pub fn full(source_len: usize, target_len: usize) -> Self {
        let mut all = FixedBitSet::with_capacity(target_len);
        all.insert_range(..);
        DomainState { domains: vec![all; source_len] }
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn domain(&self, x: usize) -> &FixedBitSet {
        &self.domains[x]
    }

    pub fn values(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.domains[x].ones()
    }

    pub fn contains(&self, x: usize, v: usize) -> bool {
        self.domains[x].contains(v)
    }

    /// Restricts `x` to the single value `v` (or to nothing if `v` was
    /// already excluded).
    pub fn pin(&mut self, x: usize, v: usize) {
        let keep = self.domains[x].contains(v);
        self.domains[x].clear();
        if keep {
            self.domains[x].insert(v);
        }
    }

    pub fn has_empty_domain(&self) -> bool {
        self.domains.iter().any(|d| d.is_clear())
    }

    /// The assignment when every domain is a singleton.
    pub fn as_assignment(&self) -> Option<Vec<usize>> {
        self.domains
            .iter()
            .map(|d| {
                let mut it = d.ones();
                match (it.next(), it.next()) {
                    (Some(v), None) => Some(v),
                    _ => None,
                }
            })
            .collect()
    }

    pub fn to_named(&self, source: &Structure, target: &Structure) -> BTreeMap<String, Vec<String>> {
        (0..self.len())
            .map(|x| (source.id(x).to_string(), self.values(x).map(|v| target.id(v).to_string()).collect()))
            .collect()
    }
}

struct Constraint<'a> {
    symbol: usize,
    vars: &'a [usize],
    /// Position pairs `(i, j)` with `i < j` holding the same variable.
    equal: Vec<(usize, usize)>,
    /// First position of each distinct variable.
    distinct: Vec<usize>,
}

/// Propagation state shared by one search. Not shared between searches.
struct Propagator<'a> {
    target: &'a Structure,
    constraints: Vec<Constraint<'a>>,
    occurrences: Vec<Vec<usize>>,
    target_len: usize,
}

impl<'a> Propagator<'a> {
    fn new(b: &'a Structure, a: &'a Structure) -> Result<Self> {
        b.signature().ensure_same(a.signature())?;
        let mut constraints = Vec::new();
        let mut occurrences = vec![Vec::new(); b.len()];
        for (symbol, (_, rel)) in b.relations().enumerate() {
            for t in rel {
                let id = constraints.len();
                let mut equal = Vec::new();
                let mut distinct = Vec::new();
                for i in 0..t.len() {
                    match (0..i).find(|&j| t[j] == t[i]) {
                        Some(j) => equal.push((j, i)),
                        None => {
                            distinct.push(i);
                            occurrences[t[i]].push(id);
                        }
                    }
                }
                constraints.push(Constraint { symbol, vars: t, equal, distinct });
            }
        }
        Ok(Propagator { target: a, constraints, occurrences, target_len: a.len() })
    }

    /// Runs the worklist until no domain changes. Returns false on a wipeout;
    /// with `stop_on_wipeout` it returns at the first empty domain instead of
    /// finishing the fixpoint.
    fn run(&self, state: &mut DomainState, mut queue: VecDeque<usize>, stop_on_wipeout: bool) -> bool {
        let mut queued = vec![false; self.constraints.len()];
        for &c in &queue {
            queued[c] = true;
        }
        let mut support: Vec<FixedBitSet> = Vec::new();
        let mut wiped = false;
        while let Some(c) = queue.pop_front() {
            queued[c] = false;
            let con = &self.constraints[c];
            support.clear();
            support.resize(con.vars.len(), FixedBitSet::with_capacity(self.target_len));
            for u in self.target.relation(con.symbol) {
                let fits = con.vars.iter().zip(u).all(|(&x, &v)| state.domains[x].contains(v))
                    && con.equal.iter().all(|&(i, j)| u[i] == u[j]);
                if fits {
                    for &i in &con.distinct {
                        support[i].insert(u[i]);
                    }
                }
            }
            for &i in &con.distinct {
                let x = con.vars[i];
                let before = state.domains[x].count_ones(..);
                state.domains[x].intersect_with(&support[i]);
                let after = state.domains[x].count_ones(..);
                if after == 0 {
                    wiped = true;
                    if stop_on_wipeout {
                        return false;
                    }
                }
                if after != before {
                    for &d in &self.occurrences[x] {
                        if !queued[d] {
                            queued[d] = true;
                            queue.push_back(d);
                        }
                    }
                }
            }
        }
        !wiped
    }

    fn propagate(&self, state: &mut DomainState, queue: VecDeque<usize>) -> bool {
        self.run(state, queue, true)
    }

    fn all(&self) -> VecDeque<usize> {
        (0..self.constraints.len()).collect()
    }

    fn touching(&self, x: usize) -> VecDeque<usize> {
        self.occurrences[x].iter().copied().collect()
    }
}

/// Greatest arc-consistent family of domains below the full domains.
pub fn arc_consistency(b: &Structure, a: &Structure) -> Result<DomainState> {
    arc_consistency_from(b, a, DomainState::full(b.len(), a.len()))
}

/// Greatest arc-consistent family of domains below `initial`.
pub fn arc_consistency_from(b: &Structure, a: &Structure, initial: DomainState) -> Result<DomainState> {
    let prop = Propagator::new(b, a)?;
    let mut state = initial;
    prop.run(&mut state, prop.all(), false);
    Ok(state)
}

/// True iff one more full propagation round leaves `state` unchanged.
pub fn is_fixpoint(b: &Structure, a: &Structure, state: &DomainState) -> Result<bool> {
    Ok(&arc_consistency_from(b, a, state.clone())? == state)
}

/// Some homomorphism `b → a`, or `None`.
///
/// Variables are chosen by smallest remaining domain (ties by universe
/// order); values are tried in target universe order.
pub fn hom_exists(b: &Structure, a: &Structure) -> Result<Option<Homomorphism>> {
    hom_exists_from(b, a, DomainState::full(b.len(), a.len()))
}

/// As [`hom_exists`], restricted to maps inside `initial`.
pub fn hom_exists_from(b: &Structure, a: &Structure, initial: DomainState) -> Result<Option<Homomorphism>> {
    let prop = Propagator::new(b, a)?;
    let mut state = initial;
    if state.has_empty_domain() || !prop.propagate(&mut state, prop.all()) {
        return Ok(None);
    }
    match search_first(&prop, state) {
        Some(assignment) => Homomorphism::new(b, a, assignment).map(Some),
        None => Ok(None),
    }
}

fn search_first(prop: &Propagator<'_>, state: DomainState) -> Option<Vec<usize>> {
    let mut best: Option<(usize, usize)> = None;
    for x in 0..state.len() {
        let size = state.domains[x].count_ones(..);
        if size > 1 && best.is_none_or(|(s, _)| size < s) {
            best = Some((size, x));
        }
    }
    let Some((_, x)) = best else {
        return state.as_assignment();
    };
    for v in state.values(x) {
        let mut next = state.clone();
        next.pin(x, v);
        if prop.propagate(&mut next, prop.touching(x)) {
            if let Some(found) = search_first(prop, next) {
                return Some(found);
            }
        }
    }
    None
}

/// Result of [`hom_enumerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub homs: Vec<Homomorphism>,
    /// More homomorphisms exist beyond `limit`.
    pub truncated: bool,
}

/// All homomorphisms `b → a` in lexicographic order of their assignments,
/// at most `limit` of them.
pub fn hom_enumerate(b: &Structure, a: &Structure, limit: usize) -> Result<Enumeration> {
    hom_enumerate_from(b, a, DomainState::full(b.len(), a.len()), limit)
}

/// As [`hom_enumerate`], restricted to maps inside `initial`.
pub fn hom_enumerate_from(b: &Structure, a: &Structure, initial: DomainState, limit: usize) -> Result<Enumeration> {
    let prop = Propagator::new(b, a)?;
    let mut state = initial;
    let mut found = Vec::new();
    if !state.has_empty_domain() && prop.propagate(&mut state, prop.all()) {
        enumerate_lex(&prop, state, 0, limit.saturating_add(1), &mut found);
    }
    let truncated = found.len() > limit;
    found.truncate(limit);
    let homs = found.into_iter().map(|h| Homomorphism::new(b, a, h)).collect::<Result<_>>()?;
    Ok(Enumeration { homs, truncated })
}

fn enumerate_lex(prop: &Propagator<'_>, state: DomainState, x: usize, cap: usize, out: &mut Vec<Vec<usize>>) {
    if out.len() >= cap {
        return;
    }
    if x == state.len() {
        out.push(state.as_assignment().expect("all variables pinned"));
        return;
    }
    for v in state.values(x) {
        if out.len() >= cap {
            return;
        }
        let mut next = state.clone();
        next.pin(x, v);
        if prop.propagate(&mut next, prop.touching(x)) {
            enumerate_lex(prop, next, x + 1, cap, out);
        }
    }
}
