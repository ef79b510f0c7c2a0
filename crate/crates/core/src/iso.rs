//! Isomorphism search between small structures.

use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::structure::Structure;

/// Finds a bijection that maps each relation of `s1` exactly onto the
/// corresponding relation of `s2`, or `None`.
pub fn find_isomorphism(s1: &Structure, s2: &Structure, budgets: &Budgets) -> Result<Option<Homomorphism>> {
    s1.signature().ensure_same(s2.signature())?;
    let n = s1.len().max(s2.len());
    if n > budgets.max_iso_universe {
        return Err(Error::budget("isomorphism universe", n as u128, budgets.max_iso_universe as u128));
    }
    if s1.len() != s2.len() {
        return Ok(None);
    }
    let k = s1.signature().len();
    if (0..k).any(|r| s1.relation(r).len() != s2.relation(r).len()) {
        return Ok(None);
    }
    let sig1 = degree_profiles(s1);
    let sig2 = degree_profiles(s2);
    let mut sorted1 = sig1.clone();
    let mut sorted2 = sig2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return Ok(None);
    }

    let order = search_order(s1);
    // tuples of s1 that become fully assigned at each step of `order`
    let mut rank = vec![0; s1.len()];
    for (pos, &x) in order.iter().enumerate() {
        rank[x] = pos;
    }
    let mut checks: Vec<Vec<(usize, &[usize])>> = vec![Vec::new(); order.len()];
    for r in 0..k {
        for t in s1.relation(r) {
            let last = t.iter().map(|&x| rank[x]).max().expect("arity >= 1");
            checks[last].push((r, t));
        }
    }
    let candidates: Vec<Vec<usize>> =
        (0..s1.len()).map(|x| (0..s2.len()).filter(|&y| sig1[x] == sig2[y]).collect()).collect();

    let mut search = Search {
        s2,
        order: &order,
        checks: &checks,
        candidates: &candidates,
        assignment: vec![usize::MAX; s1.len()],
        used: vec![false; s2.len()],
        scratch: Vec::new(),
    };
    if search.extend(0) {
        let h = Homomorphism::new(s1, s2, search.assignment)?;
        Ok(Some(h))
    } else {
        Ok(None)
    }
}

/// True iff `assignment` is a bijection and a homomorphism in both directions.
pub fn is_isomorphism(s1: &Structure, s2: &Structure, assignment: &[usize]) -> bool {
    if s1.len() != s2.len() || assignment.len() != s1.len() {
        return false;
    }
    let mut inverse = vec![usize::MAX; s2.len()];
    for (x, &y) in assignment.iter().enumerate() {
        if y >= s2.len() || inverse[y] != usize::MAX {
            return false;
        }
        inverse[y] = x;
    }
    crate::hom::is_homomorphism(s1, s2, assignment) && crate::hom::is_homomorphism(s2, s1, &inverse)
}

struct Search<'a> {
    s2: &'a Structure,
    order: &'a [usize],
    checks: &'a [Vec<(usize, &'a [usize])>],
    candidates: &'a [Vec<usize>],
    assignment: Vec<usize>,
    used: Vec<bool>,
    scratch: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let x = self.order[pos];
        for &y in &self.candidates[x] {
            if self.used[y] {
                continue;
            }
            self.assignment[x] = y;
            if self.consistent(pos) {
                self.used[y] = true;
                if self.extend(pos + 1) {
                    return true;
                }
                self.used[y] = false;
            }
        }
        self.assignment[x] = usize::MAX;
        false
    }

    fn consistent(&mut self, pos: usize) -> bool {
        for &(r, t) in &self.checks[pos] {
            self.scratch.clear();
            self.scratch.extend(t.iter().map(|&x| self.assignment[x]));
            if !self.s2.contains(r, &self.scratch) {
                return false;
            }
        }
        true
    }
}

/// Per element: for each relation and position, how many tuples it occupies.
fn degree_profiles(s: &Structure) -> Vec<Vec<usize>> {
    let widths: Vec<usize> = s.signature().symbols().iter().map(|sym| sym.arity).collect();
    let total: usize = widths.iter().sum();
    let mut prof = vec![vec![0; total]; s.len()];
    let mut offset = 0;
    for (r, w) in widths.iter().enumerate() {
        for t in s.relation(r) {
            for (p, &x) in t.iter().enumerate() {
                prof[x][offset + p] += 1;
            }
        }
        offset += w;
    }
    prof
}

/// Breadth-first order over the symmetrized relations so that tuples close
/// early in the search.
fn search_order(s: &Structure) -> Vec<usize> {
    let n = s.len();
    let mut adj = vec![Vec::new(); n];
    for (_, rel) in s.relations() {
        for t in rel {
            for &a in t {
                for &b in t {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}
