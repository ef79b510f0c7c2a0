//! Filters on a finite index set `I = {0, .., size-1}`.
//!
//! On a finite set every filter is principal, so a filter is stored as its
//! base `B`: a subset `X ⊆ I` is a member iff `B ⊆ X`. Generator lists are
//! accepted only at construction.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A subset of an index set.
pub type Subset = FixedBitSet;

pub fn subset_of<I: IntoIterator<Item = usize>>(size: usize, members: I) -> Result<Subset> {
    let mut s = FixedBitSet::with_capacity(size);
    for i in members {
        if i >= size {
            return Err(Error::InvalidInput(format!("index {i} outside 0..{size}")));
        }
        s.insert(i);
    }
    Ok(s)
}

pub fn full_subset(size: usize) -> Subset {
    let mut s = FixedBitSet::with_capacity(size);
    s.insert_range(..);
    s
}

/// Complement within the subset's index set.
pub fn complement(x: &Subset) -> Subset {
    let mut c = x.clone();
    c.toggle_range(..);
    c
}

/// `"0,2"`; the empty set is `""`.
pub fn format_subset(x: &Subset) -> String {
    x.ones().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses `"0,2"` (whitespace tolerated, empty string is the empty set).
pub fn parse_subset(text: &str, size: usize) -> Result<Subset> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(FixedBitSet::with_capacity(size));
    }
    let idx = text
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| Error::InvalidInput(format!("bad index `{t}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    subset_of(size, idx)
}

/// All subsets of `{0..size}` as bitmask-ordered sets. For tests and
/// exhaustive checks on small index sets only.
pub fn all_subsets(size: usize) -> impl Iterator<Item = Subset> {
    assert!(size < usize::BITS as usize, "index set too large to enumerate");
    (0..1usize << size).map(move |mask| {
        let mut s = FixedBitSet::with_capacity(size);
        for i in 0..size {
            if mask >> i & 1 == 1 {
                s.insert(i);
            }
        }
        s
    })
}

/// A (proper) filter on `{0..size}` normalized to its principal base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteFilter {
    base: Subset,
}

impl FiniteFilter {
    /// The principal filter of all supersets of `base`.
    pub fn principal(base: Subset) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::InvalidInput("index set must be nonempty".into()));
        }
        if base.is_clear() {
            return Err(Error::ImproperFilter);
        }
        Ok(FiniteFilter { base })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(size: usize, base: I) -> Result<Self> {
        Self::principal(subset_of(size, base)?)
    }

    /// The filter `{I}`.
    pub fn trivial(size: usize) -> Result<Self> {
        Self::principal(full_subset(size))
    }

    /// The principal ultrafilter at `i`.
    pub fn ultrafilter_at(size: usize, i: usize) -> Result<Self> {
        Self::from_indices(size, [i])
    }

    /// Least filter containing every generator: its base is their
    /// intersection.
    pub fn from_generators(size: usize, generators: &[Subset]) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidInput("index set must be nonempty".into()));
        }
        let Some((first, rest)) = generators.split_first() else {
            return Err(Error::InvalidInput("at least one generator is required".into()));
        };
        if generators.iter().any(|g| g.len() != size) {
            return Err(Error::InvalidInput("generator lives on a different index set".into()));
        }
        let mut base = first.clone();
        for g in rest {
            base.intersect_with(g);
        }
        Self::principal(base)
    }

    /// Parses generators written as `"0,1;1,2"`.
    pub fn parse_generators(size: usize, text: &str) -> Result<Self> {
        let gens = text.split(';').map(|g| parse_subset(g, size)).collect::<Result<Vec<_>>>()?;
        Self::from_generators(size, &gens)
    }

    pub fn size(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &Subset {
        &self.base
    }

    pub fn base_indices(&self) -> Vec<usize> {
        self.base.ones().collect()
    }

    /// `X ∈ F` iff the base is contained in `X`.
    pub fn contains_set(&self, x: &Subset) -> bool {
        self.base.is_subset(x)
    }

    /// Every member of `other` is a member of `self`.
    pub fn contains_filter(&self, other: &FiniteFilter) -> bool {
        self.size() == other.size() && self.base.is_subset(&other.base)
    }

    /// A filter on a finite set is maximal iff its base is a singleton.
    pub fn is_ultrafilter(&self) -> bool {
        let singleton = self.base.count_ones(..) == 1;
        if self.size() <= 6 {
            debug_assert_eq!(singleton, self.is_ultrafilter_by_dichotomy());
        }
        singleton
    }

    /// Checks that exactly one of every complementary pair is a member, by
    /// enumerating all subsets. Exponential; meant for small index sets.
    pub fn is_ultrafilter_by_dichotomy(&self) -> bool {
        all_subsets(self.size()).all(|x| self.contains_set(&x) != self.contains_set(&complement(&x)))
    }

    /// The ultrafilters containing this filter, one per base element in index
    /// order.
    pub fn extend_to_ultrafilters(&self) -> Vec<FiniteFilter> {
        self.base.ones().map(|i| FiniteFilter::ultrafilter_at(self.size(), i).expect("i in range")).collect()
    }

    /// The point of a principal ultrafilter.
    pub fn ultrafilter_point(&self) -> Option<usize> {
        let mut it = self.base.ones();
        match (it.next(), it.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for FiniteFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩ on {}", format_subset(&self.base), self.size())
    }
}
