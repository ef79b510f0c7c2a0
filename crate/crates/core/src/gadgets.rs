//! Primitive positive definitions `R_(B,x,y)`, lifting colorings of complete
//! graph powers along them, and ultrafilter extraction from colorings of
//! `(K_n)^I_F`.

use std::collections::{BTreeMap, BTreeSet};

use crate::config::{checked_pow, Budgets};
use crate::error::{Error, Result};
use crate::filters::{all_subsets, complement, FiniteFilter, Subset};
use crate::hom::{check_homomorphism, Homomorphism};
use crate::library::complete_graph;
use crate::power::{is_related, TolerantPower};
use crate::solver::{hom_enumerate, hom_enumerate_from, DomainState};
use crate::structure::Structure;

/// A structure with two distinguished elements (possibly equal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub structure: Structure,
    pub x: usize,
    pub y: usize,
}

impl Gadget {
    pub fn new(structure: Structure, x: &str, y: &str) -> Result<Self> {
        let x = structure.require_index(x)?;
        let y = structure.require_index(y)?;
        Ok(Gadget { structure, x, y })
    }
}

/// `{(φ(x), φ(y)) : φ: B → A}` by full enumeration.
pub fn pp_relation(g: &Gadget, a: &Structure, budgets: &Budgets) -> Result<BTreeSet<(usize, usize)>> {
    g.structure.signature().ensure_same(a.signature())?;
    let size = checked_pow(a.len(), g.structure.len());
    if size > budgets.max_pp_enumeration as u128 {
        return Err(Error::budget("homomorphism enumeration", size, budgets.max_pp_enumeration as u128));
    }
    let all = hom_enumerate(&g.structure, a, size as usize)?;
    Ok(all.homs.iter().map(|h| (h.image(g.x), h.image(g.y))).collect())
}

pub fn is_clique_relation(rel: &BTreeSet<(usize, usize)>, n: usize) -> bool {
    rel.len() == n * (n - 1) && rel.iter().all(|(u, v)| u != v)
}

pub fn defines_clique(g: &Gadget, a: &Structure, budgets: &Budgets) -> Result<bool> {
    Ok(is_clique_relation(&pp_relation(g, a, budgets)?, a.len()))
}

/// The first homomorphism `B → A` (lexicographic) with `x ↦ i`, `y ↦ j`.
pub fn pinned_hom(g: &Gadget, a: &Structure, i: usize, j: usize) -> Result<Option<Homomorphism>> {
    let mut init = DomainState::full(g.structure.len(), a.len());
    init.pin(g.x, i);
    init.pin(g.y, j);
    Ok(hom_enumerate_from(&g.structure, a, init, 1)?.homs.into_iter().next())
}

/// `ψ_(f,g)`: the map `B → A^I_F` for one adjacent pair of the `K_n` power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftWitness {
    pub f: usize,
    pub g: usize,
    /// `J_(f,g) = {i : f(i) ≠ g(i)}`.
    pub disagreement: Subset,
    /// `ψ_(f,g)(z)` as a carrier element, for every `z` of `B`.
    pub psi: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    /// `φ(f) ≠ φ(g)` for every pair adjacent in `(K_n)^I_F`.
    pub proper: bool,
    pub violation: Option<(usize, usize)>,
    pub witnesses: Vec<LiftWitness>,
}

/// Checks that `φ: A^I_F → A` is a proper coloring of `(K_n)^I_F`,
/// building for every adjacent pair `f, g` the homomorphism `ψ_(f,g)` that
/// the pp-definition provides.
pub fn lift_hom(g: &Gadget, p: &TolerantPower, phi: &[usize], budgets: &Budgets) -> Result<LiftReport> {
    let a = p.base();
    if !defines_clique(g, a, budgets)? {
        return Err(Error::NotAClique);
    }
    check_homomorphism(p.carrier(), a, phi)?;
    let n = a.len();
    let mut cache: BTreeMap<(usize, usize), Homomorphism> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let h = pinned_hom(g, a, i, j)?.ok_or(Error::NotAClique)?;
                cache.insert((i, j), h);
            }
        }
    }
    let size = p.index_size();
    let fns: Vec<Vec<usize>> = (0..p.carrier().len()).map(|c| p.function(c)).collect();
    let mut report = LiftReport { proper: true, violation: None, witnesses: Vec::new() };
    for (f, fv) in fns.iter().enumerate() {
        for (h, gv) in fns.iter().enumerate() {
            let mut disagreement = Subset::with_capacity(size);
            for i in 0..size {
                if fv[i] != gv[i] {
                    disagreement.insert(i);
                }
            }
            if !p.filter().contains_set(&disagreement) {
                continue;
            }
            let psi: Vec<usize> = (0..g.structure.len())
                .map(|z| {
                    let image: Vec<usize> = (0..size)
                        .map(|i| if disagreement.contains(i) { cache[&(fv[i], gv[i])].image(z) } else { fv[i] })
                        .collect();
                    p.element(&image)
                })
                .collect();
            check_lift(g, p, &psi)?;
            if phi[f] == phi[h] && report.proper {
                report.proper = false;
                report.violation = Some((f, h));
            }
            report.witnesses.push(LiftWitness { f, g: h, disagreement, psi });
        }
    }
    Ok(report)
}

fn check_lift(g: &Gadget, p: &TolerantPower, psi: &[usize]) -> Result<()> {
    let fns: Vec<Vec<usize>> = psi.iter().map(|&c| p.function(c)).collect();
    for (k, (_, rel)) in g.structure.relations().enumerate() {
        for t in rel {
            let refs: Vec<&[usize]> = t.iter().map(|&z| fns[z].as_slice()).collect();
            if !is_related(p.base(), p.filter(), k, &refs) {
                return Err(Error::ValidationFailure("lifted map is not a homomorphism into the power".into()));
            }
        }
    }
    Ok(())
}

/// Outcomes of the four verification steps of the extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractionChecks {
    pub contains_filter: bool,
    pub complement_dichotomy: bool,
    pub upward_closed: bool,
    pub intersection_closed: bool,
}

impl ExtractionChecks {
    pub fn all(&self) -> bool {
        self.contains_filter && self.complement_dichotomy && self.upward_closed && self.intersection_closed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LauchliWitness {
    /// `π` with `π(φ(k̄)) = k`; the extraction reads `π ∘ φ`.
    pub normalization: Vec<usize>,
    pub extracted: FiniteFilter,
    pub checks: ExtractionChecks,
}

/// Reads an ultrafilter `U = {X : φ(1_X) = 1}` off a coloring
/// `φ: (K_n)^I_F → K_n` after normalizing on constants, and verifies each
/// step of the argument that `U` is an ultrafilter containing `F`.
pub fn extract_ultrafilter(p: &TolerantPower, phi: &[usize]) -> Result<LauchliWitness> {
    let n = p.base().len();
    if n < 3 {
        return Err(Error::BadN(n));
    }
    if p.base() != &complete_graph(n) {
        return Err(Error::InvalidInput("extraction needs a power of a complete graph".into()));
    }
    check_homomorphism(p.carrier(), p.base(), phi)?;
    let mut normalization = vec![usize::MAX; n];
    for k in 0..n {
        let v = phi[p.constant(k)];
        if normalization[v] != usize::MAX {
            return Err(Error::InvalidHomomorphism("not injective on constants".into()));
        }
        normalization[v] = k;
    }
    let size = p.index_size();
    // π ∘ φ on functions into {0, 1, 2}
    let eval = |f: &[usize]| normalization[phi[p.element(f)]];
    let one = |x: &Subset| -> usize { eval(&(0..size).map(|i| usize::from(x.contains(i))).collect::<Vec<_>>()) };
    let in_u: BTreeMap<Vec<usize>, bool> =
        all_subsets(size).map(|x| (x.ones().collect(), one(&x) == 1)).collect();
    let member = |x: &Subset| in_u[&x.ones().collect::<Vec<_>>()];
    let subsets: Vec<Subset> = all_subsets(size).collect();
    let members: Vec<&Subset> = subsets.iter().filter(|x| member(x)).collect();

    let contains_filter = subsets.iter().filter(|x| p.filter().contains_set(x)).all(member);
    let complement_dichotomy = subsets.iter().all(|x| {
        let pair = [one(x), one(&complement(x))];
        pair == [0, 1] || pair == [1, 0]
    });
    let upward_closed = members.iter().all(|x| {
        let fx: Vec<usize> = (0..size).map(|i| if x.contains(i) { 2 } else { 1 }).collect();
        let gx: Vec<usize> = (0..size).map(|i| if x.contains(i) { 1 } else { 2 }).collect();
        eval(&fx) == 2
            && eval(&gx) == 1
            && subsets.iter().filter(|y| x.is_subset(y)).all(|y| one(&complement(y)) == 0 && one(y) == 1)
    });
    let intersection_closed = members.iter().all(|x| {
        members.iter().all(|y| {
            let (mut cap, mut minus, mut out) = (vec![0; size], vec![0; size], vec![0; size]);
            for i in 0..size {
                let triple = match (x.contains(i), y.contains(i)) {
                    (true, true) => [0, 1, 2],
                    (true, false) => [2, 0, 1],
                    (false, _) => [1, 2, 0],
                };
                cap[i] = triple[0];
                minus[i] = triple[1];
                out[i] = triple[2];
            }
            let colors: BTreeSet<usize> = [eval(&cap), eval(&minus), eval(&out)].into();
            let mut both = (*x).clone();
            both.intersect_with(y);
            colors.len() == 3 && eval(&out) != 0 && eval(&minus) != 0 && eval(&cap) == 0 && one(&both) == 1
        })
    });
    let checks = ExtractionChecks { contains_filter, complement_dichotomy, upward_closed, intersection_closed };
    if !checks.all() {
        return Err(Error::ExtractionFailure(format!("{checks:?}")));
    }
    let mut base = Subset::with_capacity(size);
    base.insert_range(..);
    for x in &members {
        base.intersect_with(x);
    }
    let extracted = FiniteFilter::principal(base)
        .map_err(|_| Error::ExtractionFailure("members have empty intersection".into()))?;
    if !extracted.is_ultrafilter() || subsets.iter().any(|x| extracted.contains_set(x) != member(x)) {
        return Err(Error::ExtractionFailure("extracted family is not a principal ultrafilter".into()));
    }
    Ok(LauchliWitness { normalization, extracted, checks })
}
