//! Scripted compositions that replay whole arguments on small instances and
//! report what was checked.

use serde::Serialize;

use crate::config::{checked_pow, Budgets};
use crate::cycles::{directed_cycle, is_prime};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::filters::{all_subsets, FiniteFilter};
use crate::gadgets::{extract_ultrafilter, is_clique_relation, lift_hom, pp_relation, Gadget};
use crate::hom::{check_homomorphism, is_homomorphism, Homomorphism};
use crate::iso::is_isomorphism;
use crate::library::{
    complete_graph, isolated_point, looped_point, single_edge, undirected_cycle, undirected_path, EDGE,
};
use crate::power::{
    canonical_embedding, lex_sum_check, ordinary_power, quotient_by_agreement, ultrafilter_hom, TolerantPower,
};
use crate::solver::{hom_enumerate, hom_exists};
use crate::structure::{connected_components, induced_by_indices, reachability_power, Structure};

/// Small named structures over the single binary symbol `E`.
pub fn corpus() -> Vec<(String, Structure)> {
    let mut out = vec![
        ("point".to_string(), isolated_point()),
        ("loop".to_string(), looped_point()),
        ("edge".to_string(), single_edge()),
        ("K2".to_string(), complete_graph(2)),
        ("K3".to_string(), complete_graph(3)),
        ("P2".to_string(), undirected_path(2)),
        ("P3".to_string(), undirected_path(3)),
        ("UC4".to_string(), undirected_cycle(4)),
        ("UC5".to_string(), undirected_cycle(5)),
    ];
    for n in 2..=4 {
        out.push((format!("C{n}"), directed_cycle(n).expect("n >= 2")));
    }
    out
}

/// Every filter on `{0..size}`, by base in bitmask order.
pub fn all_filters(size: usize) -> Vec<FiniteFilter> {
    all_subsets(size).filter_map(|b| FiniteFilter::principal(b).ok()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LauchliRow {
    pub base: Vec<usize>,
    pub colorings: usize,
    pub truncated: bool,
    /// Extracted ultrafilter point of each coloring, in enumeration order.
    pub extracted: Vec<usize>,
    pub contains_filter: bool,
    pub roundtrip: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LauchliSummary {
    pub n: usize,
    pub index_size: usize,
    pub rows: Vec<LauchliRow>,
    pub colorings: usize,
    pub ok: bool,
}

/// For every filter on `I`: extracts an ultrafilter from every coloring of
/// `(K_n)^I_F` found by the solver, and checks that extraction inverts
/// `ultrafilter_hom`.
pub fn lauchli_roundtrip(
    n: usize,
    index_size: usize,
    coloring_limit: usize,
    budgets: &Budgets,
    exec: Exec,
) -> Result<LauchliSummary> {
    let kn = complete_graph(n);
    let filters = all_filters(index_size);
    let rows = exec
        .map(&filters, |f| -> Result<LauchliRow> {
            let p = TolerantPower::new(&kn, f, budgets, Exec::Sequential)?;
            let colorings = hom_enumerate(p.carrier(), &kn, coloring_limit)?;
            let mut extracted = Vec::with_capacity(colorings.homs.len());
            let mut contains_filter = true;
            for phi in &colorings.homs {
                let w = extract_ultrafilter(&p, phi.assignment())?;
                contains_filter &= w.extracted.contains_filter(f);
                extracted.push(w.extracted.ultrafilter_point().expect("principal ultrafilter"));
            }
            let mut roundtrip = true;
            for u in f.extend_to_ultrafilters() {
                let phi = ultrafilter_hom(&p, &u)?;
                roundtrip &= extract_ultrafilter(&p, phi.assignment())?.extracted == u;
            }
            Ok(LauchliRow {
                base: f.base_indices(),
                colorings: colorings.homs.len(),
                truncated: colorings.truncated,
                extracted,
                contains_filter,
                roundtrip,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let colorings = rows.iter().map(|r| r.colorings).sum();
    let ok = rows.iter().all(|r| r.contains_filter && r.roundtrip && r.colorings > 0);
    Ok(LauchliSummary { n, index_size, rows, colorings, ok })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerLawRow {
    pub structure: String,
    pub index_size: usize,
    pub base: Vec<usize>,
    pub quotient_is_ordinary_power: bool,
    pub lex_sum: bool,
    pub ultrafilter_homs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingRow {
    pub source: String,
    pub target: String,
    pub hom_exists: bool,
    /// `None` when the generated family has empty intersection.
    pub filter_base_size: Option<usize>,
    pub extensions_checked: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComFtSummary {
    pub powers: Vec<PowerLawRow>,
    pub embeddings: Vec<EmbeddingRow>,
    pub failures: usize,
    pub ok: bool,
}

/// Structure laws of tolerant powers on the corpus (`|A| ≤ 3`, `|I| ≤ 3`)
/// and the canonical embedding round trip for all corpus pairs with
/// `|A|^|B| ≤ 256`.
pub fn com_ft_roundtrip(budgets: &Budgets, exec: Exec) -> Result<ComFtSummary> {
    let corpus = corpus();
    let bases: Vec<&(String, Structure)> = corpus.iter().filter(|(_, a)| a.len() <= 3).collect();
    let mut jobs = Vec::new();
    for (name, a) in &bases {
        for size in 1..=3 {
            for f in all_filters(size) {
                jobs.push((name.clone(), a, f));
            }
        }
    }
    let powers = exec
        .map(&jobs, |(name, a, f)| -> Result<PowerLawRow> {
            let p = TolerantPower::new(a, f, budgets, Exec::Sequential)?;
            let q = quotient_by_agreement(&p)?;
            let base = f.base_indices();
            let ordinary = ordinary_power(a, base.len(), budgets, Exec::Sequential)?;
            // classes are ordered by their restriction to the base, which is
            // exactly the ordinary power's element order
            let identity: Vec<usize> = (0..q.quotient.len()).collect();
            let quotient_is_ordinary_power = is_isomorphism(&q.quotient, ordinary.carrier(), &identity);
            let mut ultrafilter_homs = 0;
            for u in f.extend_to_ultrafilters() {
                ultrafilter_hom(&p, &u)?;
                ultrafilter_homs += 1;
            }
            Ok(PowerLawRow {
                structure: name.clone(),
                index_size: f.size(),
                base,
                quotient_is_ordinary_power,
                lex_sum: lex_sum_check(&p).holds,
                ultrafilter_homs,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut pairs = Vec::new();
    for (bn, b) in &corpus {
        for (an, a) in &bases {
            if checked_pow(a.len(), b.len()) <= 256 {
                pairs.push((bn.clone(), b, an.clone(), a));
            }
        }
    }
    let embeddings = exec
        .map(&pairs, |(bn, b, an, a)| -> Result<EmbeddingRow> {
            let has = hom_exists(b, a)?.is_some();
            let mut row = EmbeddingRow {
                source: bn.clone(),
                target: an.clone(),
                hom_exists: has,
                filter_base_size: None,
                extensions_checked: 0,
                ok: true,
            };
            match canonical_embedding(b, a, budgets, Exec::Sequential) {
                Ok(emb) => {
                    emb.check(b, a)?;
                    row.filter_base_size = Some(emb.filter.base_indices().len());
                    for u in emb.filter.extend_to_ultrafilters() {
                        let composed = emb.compose_evaluation(u.ultrafilter_point().expect("principal"));
                        row.ok &= is_homomorphism(b, a, &composed);
                        row.extensions_checked += 1;
                    }
                    row.ok &= has;
                }
                Err(Error::ImproperFilter) => row.ok = !has,
                Err(e) => return Err(e),
            }
            Ok(row)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let failures = powers.iter().filter(|r| !(r.quotient_is_ordinary_power && r.lex_sum)).count()
        + embeddings.iter().filter(|r| !r.ok).count();
    Ok(ComFtSummary { powers, embeddings, failures, ok: failures == 0 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PpLiftRow {
    pub index_size: usize,
    pub base: Vec<usize>,
    pub colorings: usize,
    pub certified: usize,
    pub agrees_with_direct_check: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PpLiftSummary {
    pub relation_is_k5: bool,
    pub rows: Vec<PpLiftRow>,
    pub ok: bool,
}

/// The three-edge path defines `≠` on the undirected 5-cycle; every corpus
/// coloring of a `C_5` power is then certified as a coloring of the `K_5`
/// power, and the verdict is compared with validating it on an
/// independently built `K_5` power.
pub fn pp_lift(max_index: usize, solver_colorings: usize, budgets: &Budgets, exec: Exec) -> Result<PpLiftSummary> {
    let c5 = undirected_cycle(5);
    let k5 = complete_graph(5);
    let gadget = Gadget::new(undirected_path(3), "0", "3")?;
    let relation_is_k5 = is_clique_relation(&pp_relation(&gadget, &c5, budgets)?, 5);
    let filters: Vec<FiniteFilter> = (1..=max_index).flat_map(all_filters).collect();
    let rows = exec
        .map(&filters, |f| -> Result<PpLiftRow> {
            let p = TolerantPower::new(&c5, f, budgets, Exec::Sequential)?;
            let kp = TolerantPower::new(&k5, f, budgets, Exec::Sequential)?;
            let mut colorings: Vec<Homomorphism> =
                f.extend_to_ultrafilters().iter().map(|u| ultrafilter_hom(&p, u)).collect::<Result<_>>()?;
            colorings.extend(hom_enumerate(p.carrier(), &c5, solver_colorings)?.homs);
            let mut certified = 0;
            let mut agrees = true;
            for phi in &colorings {
                let report = lift_hom(&gadget, &p, phi.assignment(), budgets)?;
                certified += usize::from(report.proper);
                agrees &= report.proper == check_homomorphism(kp.carrier(), &k5, phi.assignment()).is_ok();
            }
            Ok(PpLiftRow {
                index_size: f.size(),
                base: f.base_indices(),
                colorings: colorings.len(),
                certified,
                agrees_with_direct_check: agrees,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let ok = relation_is_k5 && rows.iter().all(|r| r.certified == r.colorings && r.agrees_with_direct_check);
    Ok(PpLiftSummary { relation_is_k5, rows, ok })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PkRow {
    pub base: Vec<usize>,
    pub quotient_size: usize,
    pub components: usize,
    /// `|ψ⁻¹(0)|`, the universe of the auxiliary structure `A`.
    pub a_size: usize,
    pub a_components: usize,
    pub b_is_cycle: bool,
    pub extension_valid: bool,
    pub commutes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PkSummary {
    pub p: usize,
    pub k: usize,
    pub index_size: usize,
    pub rows: Vec<PkRow>,
    pub ok: bool,
}

/// One induction step from `C_{p^k}` to `C_{p^(k+1)}` on the quotient of
/// `(C_{p^(k+1)})^I_F`: compose reduction mod `p^k` with a coloring of the
/// smaller power, push it to the quotient, color the auxiliary structure
/// `A = ψ⁻¹(0)` (walks of length `p^k`) into `B = φ⁻¹(0)` with the solver,
/// and extend componentwise to a coloring `χ` with `χ mod p^k = ψ`.
pub fn pk_induction_step(p: usize, k: usize, f: &FiniteFilter, budgets: &Budgets) -> Result<PkRow> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let small_n = p.pow(k as u32);
    let big_n = small_n * p;
    let big_cycle = directed_cycle(big_n)?;
    let small_cycle = directed_cycle(small_n)?;
    let big = TolerantPower::new(&big_cycle, f, budgets, Exec::Sequential)?;
    let small = TolerantPower::new(&small_cycle, f, budgets, Exec::Sequential)?;
    let q = quotient_by_agreement(&big)?;

    let reduce: Vec<usize> = (0..big.carrier().len())
        .map(|c| small.element(&big.function(c).iter().map(|&v| v % small_n).collect::<Vec<_>>()))
        .collect();
    let reduce = Homomorphism::new(big.carrier(), small.carrier(), reduce)
        .map_err(|e| Error::ValidationFailure(format!("coordinatewise reduction: {e}")))?;
    let color_small = hom_exists(small.carrier(), &small_cycle)?
        .ok_or_else(|| Error::ValidationFailure("smaller power has no coloring".into()))?;
    let composed = reduce.then(&color_small);
    let psi = q.push_into(&big, &small_cycle, composed.assignment())?;

    let walks = reachability_power(&q.quotient, EDGE, small_n)?;
    let zeros: Vec<usize> = (0..q.quotient.len()).filter(|&c| psi.image(c) == 0).collect();
    let a = induced_by_indices(&walks, &zeros)?;
    let b_members: Vec<usize> = (0..big_n).filter(|v| v % small_n == 0).collect();
    let b = induced_by_indices(&reachability_power(&big_cycle, EDGE, small_n)?, &b_members)?;
    let b_is_cycle = crate::iso::find_isomorphism(&b, &directed_cycle(p)?, budgets)?.is_some();
    let chi_star = hom_exists(&a, &b)?.ok_or_else(|| Error::ValidationFailure("A has no map to B".into()))?;

    // walk forward from each seed; every quotient element has one successor
    let mut succ = vec![usize::MAX; q.quotient.len()];
    for t in q.quotient.relation(0) {
        succ[t[0]] = t[1];
    }
    let mut chi = vec![usize::MAX; q.quotient.len()];
    for (pos, &seed) in zeros.iter().enumerate() {
        let mut x = seed;
        let mut value = b_members[chi_star.image(pos)];
        loop {
            if chi[x] != usize::MAX {
                if chi[x] != value {
                    return Err(Error::ValidationFailure("seeds disagree on a component".into()));
                }
                break;
            }
            chi[x] = value;
            x = succ[x];
            value = (value + 1) % big_n;
        }
    }
    let extension_valid = chi.iter().all(|&v| v != usize::MAX) && is_homomorphism(&q.quotient, &big_cycle, &chi);
    let commutes = extension_valid && chi.iter().enumerate().all(|(c, &v)| v % small_n == psi.image(c));
    if !(extension_valid && commutes) {
        return Err(Error::ValidationFailure("componentwise extension failed".into()));
    }
    Ok(PkRow {
        base: f.base_indices(),
        quotient_size: q.quotient.len(),
        components: connected_components(&q.quotient).len(),
        a_size: a.len(),
        a_components: connected_components(&a).len(),
        b_is_cycle,
        extension_valid,
        commutes,
    })
}

pub fn pk_induction(p: usize, k: usize, index_size: usize, budgets: &Budgets, exec: Exec) -> Result<PkSummary> {
    let filters = all_filters(index_size);
    let rows =
        exec.map(&filters, |f| pk_induction_step(p, k, f, budgets)).into_iter().collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.b_is_cycle && r.extension_valid && r.commutes && r.a_components == r.components);
    Ok(PkSummary { p, k, index_size, rows, ok })
}
