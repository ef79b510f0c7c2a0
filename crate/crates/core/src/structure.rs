//! Signatures, finite relational structures and the basic constructions on
//! them: induced substructures, categorical products, walk-length powers of a
//! binary relation and connected components.
//!
//! Elements carry string ids but every relation is stored over element
//! indices. The universe order given at construction is the canonical order
//! used everywhere for iteration and tie-breaking.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A tuple of element indices.
pub type Tuple = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// A nonempty list of relation symbols, kept sorted by name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut symbols: Vec<Symbol> = symbols
            .into_iter()
            .map(|(name, arity)| Symbol { name: name.into(), arity })
            .collect();
        let mut violations = Vec::new();
        if symbols.is_empty() {
            violations.push(Violation::EmptySignature);
        }
        for s in &symbols {
            if s.arity == 0 {
                violations.push(Violation::ZeroArity { symbol: s.name.clone() });
            }
        }
        symbols.sort();
        for w in symbols.windows(2) {
            if w[0].name == w[1].name {
                violations.push(Violation::DuplicateSymbol(w[0].name.clone()));
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidStructure(violations));
        }
        Ok(Signature { symbols })
    }

    /// A signature with a single binary symbol.
    pub fn binary(name: &str) -> Self {
        Signature { symbols: vec![Symbol { name: name.to_string(), arity: 2 }] }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub(crate) fn ensure_same(&self, other: &Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}/{}", s.name, s.arity)?;
        }
        write!(f, "}}")
    }
}

/// One failed well-formedness condition of a structure description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyUniverse,
    DuplicateElement(String),
    EmptySignature,
    DuplicateSymbol(String),
    ZeroArity { symbol: String },
    ArityMismatch { symbol: String, tuple: Vec<String>, arity: usize },
    UnknownElement { symbol: String, element: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyUniverse => write!(f, "empty universe"),
            Violation::DuplicateElement(e) => write!(f, "duplicate element `{e}`"),
            Violation::EmptySignature => write!(f, "empty signature"),
            Violation::DuplicateSymbol(s) => write!(f, "duplicate symbol `{s}`"),
            Violation::ZeroArity { symbol } => write!(f, "symbol `{symbol}` has arity 0"),
            Violation::ArityMismatch { symbol, tuple, arity } => write!(
                f,
                "arity mismatch: tuple ({}) of `{symbol}` has length {}, expected {arity}",
                tuple.join(","),
                tuple.len()
            ),
            Violation::UnknownElement { symbol, element } => {
                write!(f, "unknown element `{element}` in a tuple of `{symbol}`")
            }
        }
    }
}

/// The on-disk form of a structure:
/// `{"universe": [...], "relations": {"E": {"arity": 2, "tuples": [[..], ..]}}}`.
///
/// This is also the unchecked builder; [`validate_structure`] reports what is
/// wrong with it and [`StructureFile::build`] turns it into a [`Structure`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub universe: Vec<String>,
    pub relations: BTreeMap<String, RelationFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub arity: usize,
    pub tuples: Vec<Vec<String>>,
}

impl StructureFile {
    pub fn new<I, S>(universe: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        StructureFile { universe: universe.into_iter().map(Into::into).collect(), relations: BTreeMap::new() }
    }

    pub fn relation<T, U, S>(mut self, name: &str, arity: usize, tuples: T) -> Self
    where
        T: IntoIterator<Item = U>,
        U: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tuples = tuples.into_iter().map(|t| t.into_iter().map(Into::into).collect()).collect();
        self.relations.insert(name.to_string(), RelationFile { arity, tuples });
        self
    }

    pub fn build(&self) -> Result<Structure> {
        let violations = validate_structure(self);
        if !violations.is_empty() {
            return Err(Error::InvalidStructure(violations));
        }
        let signature = Signature::new(self.relations.iter().map(|(n, r)| (n.clone(), r.arity)))?;
        let lookup: HashMap<&str, usize> =
            self.universe.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let relations = signature
            .symbols()
            .iter()
            .map(|s| {
                self.relations[&s.name]
                    .tuples
                    .iter()
                    .map(|t| t.iter().map(|e| lookup[e.as_str()]).collect())
                    .collect()
            })
            .collect();
        Structure::new(signature, self.universe.clone(), relations)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("structure file: {e}")))
    }
}

/// Lists every violated well-formedness condition; empty means valid.
pub fn validate_structure(file: &StructureFile) -> Vec<Violation> {
    let mut out = Vec::new();
    if file.universe.is_empty() {
        out.push(Violation::EmptyUniverse);
    }
    let mut seen = BTreeSet::new();
    for e in &file.universe {
        if !seen.insert(e.as_str()) {
            out.push(Violation::DuplicateElement(e.clone()));
        }
    }
    if file.relations.is_empty() {
        out.push(Violation::EmptySignature);
    }
    for (name, rel) in &file.relations {
        if rel.arity == 0 {
            out.push(Violation::ZeroArity { symbol: name.clone() });
        }
        for t in &rel.tuples {
            if t.len() != rel.arity {
                out.push(Violation::ArityMismatch { symbol: name.clone(), tuple: t.clone(), arity: rel.arity });
            }
            for e in t {
                if !seen.contains(e.as_str()) {
                    out.push(Violation::UnknownElement { symbol: name.clone(), element: e.clone() });
                }
            }
        }
    }
    out
}

/// A finite relational structure. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    signature: Signature,
    universe: Vec<String>,
    lookup: HashMap<String, usize>,
    relations: Vec<BTreeSet<Tuple>>,
}

impl Structure {
    /// Builds a structure from index tuples; `relations[k]` belongs to the
    /// `k`-th symbol of `signature`.
    pub fn new(signature: Signature, universe: Vec<String>, relations: Vec<BTreeSet<Tuple>>) -> Result<Self> {
        let mut violations = Vec::new();
        if universe.is_empty() {
            violations.push(Violation::EmptyUniverse);
        }
        let mut lookup = HashMap::with_capacity(universe.len());
        for (i, e) in universe.iter().enumerate() {
            if lookup.insert(e.clone(), i).is_some() {
                violations.push(Violation::DuplicateElement(e.clone()));
            }
        }
        if relations.len() != signature.len() {
            return Err(Error::SignatureMismatch(format!(
                "{} relations for {} symbols",
                relations.len(),
                signature.len()
            )));
        }
        for (sym, rel) in signature.symbols().iter().zip(&relations) {
            for t in rel {
                if t.len() != sym.arity {
                    let tuple = t.iter().map(|&i| universe.get(i).cloned().unwrap_or_else(|| format!("#{i}"))).collect();
                    violations.push(Violation::ArityMismatch { symbol: sym.name.clone(), tuple, arity: sym.arity });
                }
                if let Some(&bad) = t.iter().find(|&&i| i >= universe.len()) {
                    violations.push(Violation::UnknownElement { symbol: sym.name.clone(), element: format!("#{bad}") });
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidStructure(violations));
        }
        Ok(Structure { signature, universe, lookup, relations })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        StructureFile::from_json(text)?.build()
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    /// Always false: universes are nonempty.
    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn id(&self, index: usize) -> &str {
        &self.universe[index]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    pub(crate) fn require_index(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    /// Relation of the `k`-th symbol.
    pub fn relation(&self, k: usize) -> &BTreeSet<Tuple> {
        &self.relations[k]
    }

    pub fn relation_named(&self, name: &str) -> Option<&BTreeSet<Tuple>> {
        self.signature.position(name).map(|k| &self.relations[k])
    }

    pub fn relations(&self) -> impl Iterator<Item = (&Symbol, &BTreeSet<Tuple>)> {
        self.signature.symbols().iter().zip(&self.relations)
    }

    pub fn contains(&self, k: usize, tuple: &[usize]) -> bool {
        self.relations[k].contains(tuple)
    }

    pub fn tuple_count(&self) -> usize {
        self.relations.iter().map(BTreeSet::len).sum()
    }

    pub fn to_file(&self) -> StructureFile {
        let relations = self
            .relations()
            .map(|(sym, rel)| {
                let tuples = rel.iter().map(|t| t.iter().map(|&i| self.universe[i].clone()).collect()).collect();
                (sym.name.clone(), RelationFile { arity: sym.arity, tuples })
            })
            .collect();
        StructureFile { universe: self.universe.clone(), relations }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("structure serializes")
    }

    /// Same relations under new element ids.
    pub fn relabel(&self, universe: Vec<String>) -> Result<Structure> {
        if universe.len() != self.universe.len() {
            return Err(Error::InvalidInput("relabel: universe size changed".into()));
        }
        Structure::new(self.signature.clone(), universe, self.relations.clone())
    }
}

/// The substructure induced on `subset`, in the parent's universe order.
pub fn induced_substructure<S: AsRef<str>>(s: &Structure, subset: &[S]) -> Result<Structure> {
    let mut indices = Vec::with_capacity(subset.len());
    for id in subset {
        indices.push(s.require_index(id.as_ref())?);
    }
    induced_by_indices(s, &indices)
}

/// As [`induced_substructure`] with the subset given by element indices.
pub fn induced_by_indices(s: &Structure, subset: &[usize]) -> Result<Structure> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut members: Vec<usize> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&i| i >= s.len()) {
        return Err(Error::UnknownElement(format!("#{bad}")));
    }
    let mut position = vec![usize::MAX; s.len()];
    for (new, &old) in members.iter().enumerate() {
        position[old] = new;
    }
    let relations = s
        .relations
        .iter()
        .map(|rel| {
            rel.iter()
                .filter(|t| t.iter().all(|&x| position[x] != usize::MAX))
                .map(|t| t.iter().map(|&x| position[x]).collect())
                .collect()
        })
        .collect();
    let universe = members.iter().map(|&i| s.universe[i].clone()).collect();
    Structure::new(s.signature.clone(), universe, relations)
}

/// Categorical product: a tuple of pairs is related iff both coordinate
/// tuples are. Element `(a,b)` sits at index `a * |s2| + b`.
pub fn product(s1: &Structure, s2: &Structure) -> Result<Structure> {
    s1.signature.ensure_same(&s2.signature)?;
    let n2 = s2.len();
    let universe = s1
        .universe
        .iter()
        .flat_map(|a| s2.universe.iter().map(move |b| format!("({a},{b})")))
        .collect();
    let relations = s1
        .relations
        .iter()
        .zip(&s2.relations)
        .map(|(r1, r2)| {
            let mut out = BTreeSet::new();
            for t1 in r1 {
                for t2 in r2 {
                    out.insert(t1.iter().zip(t2).map(|(&a, &b)| a * n2 + b).collect());
                }
            }
            out
        })
        .collect();
    Structure::new(s1.signature.clone(), universe, relations)
}

/// Pairs `(u, v)` joined by a directed walk of exactly `length` steps along
/// `symbol`, as a structure on the same universe with that one symbol.
pub fn reachability_power(s: &Structure, symbol: &str, length: usize) -> Result<Structure> {
    let k = s.signature.position(symbol).ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
    if s.signature.symbols()[k].arity != 2 {
        return Err(Error::NotBinary(symbol.to_string()));
    }
    if length == 0 {
        return Err(Error::InvalidInput("walk length must be positive".into()));
    }
    let n = s.len();
    let mut succ = vec![Vec::new(); n];
    for t in &s.relations[k] {
        succ[t[0]].push(t[1]);
    }
    let mut rel = BTreeSet::new();
    for u in 0..n {
        let mut frontier = vec![false; n];
        frontier[u] = true;
        for _ in 0..length {
            let mut next = vec![false; n];
            for (x, _) in frontier.iter().enumerate().filter(|(_, &on)| on) {
                for &y in &succ[x] {
                    next[y] = true;
                }
            }
            frontier = next;
        }
        for (v, _) in frontier.iter().enumerate().filter(|(_, &on)| on) {
            rel.insert(vec![u, v]);
        }
    }
    Structure::new(Signature::binary(symbol), s.universe.clone(), vec![rel])
}

/// Blocks of the symmetrized union of all relations, each sorted, ordered by
/// their least element.
pub fn connected_components(s: &Structure) -> Vec<Vec<usize>> {
    let n = s.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for rel in &s.relations {
        for t in rel {
            for w in t.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut root_to_first: HashMap<usize, usize> = HashMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        let first = *root_to_first.entry(r).or_insert(x);
        blocks.entry(first).or_default().push(x);
    }
    blocks.into_values().collect()
}
