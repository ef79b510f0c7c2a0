//! Verified homomorphisms and the homomorphism file format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::Structure;

/// A map between universes that has been checked to preserve every relation
/// of its source. Structures are not stored; the map is just element
/// indices, so keep track of which pair of structures it was checked against.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    assignment: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: &Structure, target: &Structure, assignment: Vec<usize>) -> Result<Self> {
        check_homomorphism(source, target, &assignment)?;
        Ok(Homomorphism { assignment })
    }

    pub fn from_named(source: &Structure, target: &Structure, map: &BTreeMap<String, String>) -> Result<Self> {
        Homomorphism::new(source, target, assignment_from_named(source, target, map)?)
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn into_assignment(self) -> Vec<usize> {
        self.assignment
    }

    pub fn image(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Homomorphism) -> Homomorphism {
        Homomorphism { assignment: self.assignment.iter().map(|&x| then.assignment[x]).collect() }
    }

    pub fn is_bijective(&self, target_size: usize) -> bool {
        if self.assignment.len() != target_size {
            return false;
        }
        let mut hit = vec![false; target_size];
        self.assignment.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn to_named(&self, source: &Structure, target: &Structure) -> BTreeMap<String, String> {
        named(source, target, &self.assignment)
    }

    pub fn to_file(&self, source: &Structure, target: &Structure) -> HomFile {
        HomFile { assignment: self.to_named(source, target) }
    }
}

/// `{"assignment": {"elem": "image", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomFile {
    pub assignment: BTreeMap<String, String>,
}

impl HomFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("homomorphism file: {e}")))
    }

    /// Resolves ids to an unchecked index map.
    pub fn resolve(&self, source: &Structure, target: &Structure) -> Result<Vec<usize>> {
        assignment_from_named(source, target, &self.assignment)
    }
}

pub fn named(source: &Structure, target: &Structure, assignment: &[usize]) -> BTreeMap<String, String> {
    assignment.iter().enumerate().map(|(x, &y)| (source.id(x).to_string(), target.id(y).to_string())).collect()
}

fn assignment_from_named(
    source: &Structure,
    target: &Structure,
    map: &BTreeMap<String, String>,
) -> Result<Vec<usize>> {
    if let Some(extra) = map.keys().find(|k| source.index_of(k).is_none()) {
        return Err(Error::UnknownElement(extra.clone()));
    }
    source
        .universe()
        .iter()
        .map(|x| {
            let y = map.get(x).ok_or_else(|| Error::InvalidHomomorphism(format!("no image for `{x}`")))?;
            target.require_index(y)
        })
        .collect()
}

/// Checks totality, range and relation preservation of `assignment`.
pub fn check_homomorphism(source: &Structure, target: &Structure, assignment: &[usize]) -> Result<()> {
    source.signature().ensure_same(target.signature())?;
    if assignment.len() != source.len() {
        return Err(Error::InvalidHomomorphism(format!(
            "map covers {} of {} source elements",
            assignment.len(),
            source.len()
        )));
    }
    if let Some((x, &y)) = assignment.iter().enumerate().find(|(_, &y)| y >= target.len()) {
        return Err(Error::InvalidHomomorphism(format!("`{}` maps outside the target (#{y})", source.id(x))));
    }
    let mut image = Vec::new();
    for (k, (sym, rel)) in source.relations().enumerate() {
        for t in rel {
            image.clear();
            image.extend(t.iter().map(|&x| assignment[x]));
            if !target.contains(k, &image) {
                return Err(Error::InvalidHomomorphism(format!(
                    "({}) in {} maps to ({}) which is not related",
                    ids(source, t),
                    sym.name,
                    ids(target, &image)
                )));
            }
        }
    }
    Ok(())
}

pub fn is_homomorphism(source: &Structure, target: &Structure, assignment: &[usize]) -> bool {
    check_homomorphism(source, target, assignment).is_ok()
}

fn ids(s: &Structure, t: &[usize]) -> String {
    t.iter().map(|&i| s.id(i)).collect::<Vec<_>>().join(",")
}

/// Index map of the inclusion of `sub` into `parent`, matched by element id.
pub fn inclusion(sub: &Structure, parent: &Structure) -> Result<Vec<usize>> {
    sub.universe().iter().map(|id| parent.require_index(id)).collect()
}
