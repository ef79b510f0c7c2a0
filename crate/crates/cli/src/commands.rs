use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use homlab::cycles::{
    choice_filter, component_census, crt_isomorphism, directed_cycle, distinguished_subset, order_structure_hom,
    parse_family,
};
use homlab::duality::width_one;
use homlab::filters::parse_subset;
use homlab::gadgets::{extract_ultrafilter, is_clique_relation, pp_relation, Gadget};
use homlab::hom::HomFile;
use homlab::library::complete_graph;
use homlab::power::{lex_sum_check, quotient_by_agreement, PowerMap, TolerantPower};
use homlab::solver::{arc_consistency, hom_enumerate, hom_exists};
use homlab::structure::StructureFile;
use homlab::{choice, experiments, FiniteFilter, Homomorphism, Structure};
use serde_json::{json, Value};

use crate::{Ctx, Failure, FilterSpec, Outcome};

type Out = Result<Outcome, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_structure(path: &Path) -> Result<Structure, Failure> {
    Ok(StructureFile::from_json(&read(path)?)?.build()?)
}

fn outcome(inputs: Value, result: Value, witness: Value) -> Outcome {
    Outcome { inputs, result, witness, artifact: None }
}

fn named_hom(h: &Homomorphism, s: &Structure, t: &Structure) -> Value {
    serde_json::to_value(h.to_file(s, t)).expect("serializable")
}

fn build_filter(spec: &FilterSpec) -> Result<FiniteFilter, Failure> {
    Ok(match (&spec.generators, &spec.base) {
        (Some(g), _) => FiniteFilter::parse_generators(spec.index_size, g)?,
        (None, Some(b)) => FiniteFilter::principal(parse_subset(b, spec.index_size)?)?,
        (None, None) => FiniteFilter::trivial(spec.index_size)?,
    })
}

fn filter_inputs(f: &FiniteFilter) -> Value {
    json!({ "index_size": f.size(), "filter_base": f.base_indices() })
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

pub fn hom(source: &Path, target: &Path, count: Option<usize>) -> Out {
    let b = load_structure(source)?;
    let a = load_structure(target)?;
    let found = hom_exists(&b, &a)?;
    let mut result = json!({ "exists": found.is_some() });
    if let Some(limit) = count {
        let e = hom_enumerate(&b, &a, limit)?;
        result["count"] = json!(e.homs.len());
        result["truncated"] = json!(e.truncated);
    }
    let witness = found.map_or(Value::Null, |h| named_hom(&h, &b, &a));
    Ok(outcome(json!({ "source": path_str(source), "target": path_str(target), "count": count }), result, witness))
}

pub fn ac(source: &Path, target: &Path) -> Out {
    let b = load_structure(source)?;
    let a = load_structure(target)?;
    let state = arc_consistency(&b, &a)?;
    let result = json!({
        "all_nonempty": !state.has_empty_domain(),
        "domains": state.to_named(&b, &a),
    });
    Ok(outcome(json!({ "source": path_str(source), "target": path_str(target) }), result, Value::Null))
}

pub fn width1(ctx: &Ctx, path: &Path) -> Out {
    let a = load_structure(path)?;
    let w = width_one(&a, &ctx.budgets)?;
    let result = json!({
        "width_one": w.width_one,
        "power_set_size": w.power_set.derived.len(),
        "power_set_tuples": w.power_set.derived.tuple_count(),
    });
    let witness = w.witness.map_or(Value::Null, |h| named_hom(&h, &w.power_set.derived, &a));
    Ok(outcome(json!({ "structure": path_str(path) }), result, witness))
}

pub fn power(ctx: &Ctx, path: &Path, spec: &FilterSpec, with_quotient: bool) -> Out {
    let a = load_structure(path)?;
    let f = build_filter(spec)?;
    let p = TolerantPower::new(&a, &f, &ctx.budgets, ctx.exec)?;
    let tuples: BTreeMap<&str, usize> = p.carrier().relations().map(|(s, r)| (s.name.as_str(), r.len())).collect();
    let mut result = json!({
        "universe_size": p.carrier().len(),
        "tuples": tuples,
        "lex_sum": lex_sum_check(&p).holds,
    });
    let mut artifact = json!({ "carrier": p.carrier().to_file() });
    if with_quotient {
        let q = quotient_by_agreement(&p)?;
        result["quotient_size"] = json!(q.quotient.len());
        artifact["quotient"] = serde_json::to_value(q.quotient.to_file()).expect("serializable");
    }
    let mut inputs = filter_inputs(&f);
    inputs["structure"] = json!(path_str(path));
    inputs["quotient"] = json!(with_quotient);
    Ok(Outcome { inputs, result, witness: Value::Null, artifact: Some(artifact) })
}

pub fn ppdef(ctx: &Ctx, gadget: &Path, target: &Path, x: &str, y: &str, check_clique: bool) -> Out {
    let g = Gadget::new(load_structure(gadget)?, x, y)?;
    let a = load_structure(target)?;
    let rel = pp_relation(&g, &a, &ctx.budgets)?;
    let pairs: Vec<[&str; 2]> = rel.iter().map(|&(u, v)| [a.id(u), a.id(v)]).collect();
    let mut result = json!({ "pairs": pairs, "size": rel.len() });
    if check_clique {
        result["clique"] = json!(is_clique_relation(&rel, a.len()));
    }
    let inputs = json!({
        "gadget": path_str(gadget), "target": path_str(target), "x": x, "y": y, "check_clique": check_clique,
    });
    Ok(outcome(inputs, result, Value::Null))
}

pub fn extract(ctx: &Ctx, n: usize, spec: &FilterSpec, hom: Option<&PathBuf>) -> Out {
    if n < 3 {
        return Err(homlab::Error::BadN(n).into());
    }
    let kn = complete_graph(n);
    let f = build_filter(spec)?;
    let p = TolerantPower::new(&kn, &f, &ctx.budgets, ctx.exec)?;
    let phi = match hom {
        Some(path) => HomFile::from_json(&read(path)?)?.resolve(p.carrier(), &kn)?,
        None => hom_exists(p.carrier(), &kn)?
            .ok_or_else(|| Failure::Lib(homlab::Error::ValidationFailure("power has no coloring".into())))?
            .into_assignment(),
    };
    let w = extract_ultrafilter(&p, &phi)?;
    let result = json!({
        "ultrafilter_base": w.extracted.base_indices(),
        "contains_filter": w.extracted.contains_filter(&f),
        "checks": {
            "contains_filter": w.checks.contains_filter,
            "complement_dichotomy": w.checks.complement_dichotomy,
            "upward_closed": w.checks.upward_closed,
            "intersection_closed": w.checks.intersection_closed,
        },
        "normalization": w.normalization,
    });
    let coloring = homlab::hom::named(p.carrier(), &kn, &phi);
    let mut inputs = filter_inputs(&f);
    inputs["n"] = json!(n);
    inputs["hom"] = json!(hom.map(|h| path_str(h)));
    Ok(outcome(inputs, result, json!({ "assignment": coloring })))
}

pub fn crt(p: usize, q: usize) -> Out {
    let (prod, h) = crt_isomorphism(p, q)?;
    let big = directed_cycle(p * q)?;
    Ok(outcome(json!({ "p": p, "q": q }), json!({ "isomorphism": true }), named_hom(&h, &big, &prod)))
}

pub fn census(ctx: &Ctx, n: usize, spec: &FilterSpec) -> Out {
    let f = build_filter(spec)?;
    let p = TolerantPower::new(&directed_cycle(n)?, &f, &ctx.budgets, ctx.exec)?;
    let q = quotient_by_agreement(&p)?;
    let c = component_census(&p, &q, &ctx.budgets)?;
    let components: Vec<Vec<&str>> =
        c.components.iter().map(|comp| comp.iter().map(|&x| q.quotient.id(x)).collect()).collect();
    let result = json!({
        "count": c.count,
        "component_sizes": c.components.iter().map(Vec::len).collect::<Vec<_>>(),
        "quotient_size": q.quotient.len(),
    });
    let mut inputs = filter_inputs(&f);
    inputs["n"] = json!(n);
    Ok(outcome(inputs, result, json!({ "components": components })))
}

pub fn kw(ctx: &Ctx, p: usize, sets: &str, index: Option<usize>) -> Out {
    let family = parse_family(sets);
    let inst = choice_filter(&family, &ctx.budgets)?;
    if family.iter().any(|s| s.len() != p) {
        return Err(Failure::Input(format!("every set must have {p} elements")));
    }
    let indices = match index {
        Some(i) => vec![i],
        None => inst.filter.base_indices(),
    };
    let mut rows = Vec::new();
    for i in indices {
        let found = distinguished_subset(&inst, &PowerMap::Evaluation { index: i })?;
        let per_set: Vec<Value> = found
            .iter()
            .map(|d| {
                let names = &inst.sets[d.set];
                let counts: BTreeMap<&str, usize> =
                    names.iter().map(String::as_str).zip(d.counts.iter().copied()).collect();
                json!({
                    "set": names,
                    "counts": counts,
                    "subset": d.subset.iter().map(|&j| names[j].as_str()).collect::<Vec<_>>(),
                })
            })
            .collect();
        rows.push(json!({ "index": i, "choice_function": inst.describe(i), "distinguished": per_set }));
    }
    let result = json!({
        "index_size": inst.index_size(),
        "filter_base_size": inst.filter.base_indices().len(),
        "colorings": rows,
    });
    Ok(outcome(json!({ "p": p, "sets": family, "index": index }), result, Value::Null))
}

pub fn orderhom(ctx: &Ctx, spec: &FilterSpec) -> Out {
    let f = build_filter(spec)?;
    let o = order_structure_hom(&f, &ctx.budgets)?;
    let q = &o.quotient.quotient;
    let result = json!({
        "quotient_size": q.len(),
        "linear_order": o.linear_order.iter().map(|&c| q.id(c)).collect::<Vec<_>>(),
        "valid": true,
    });
    Ok(outcome(filter_inputs(&f), result, named_hom(&o.hom, q, o.power.base())))
}

pub fn gauntt(ctx: &Ctx, m: usize, set: &[usize]) -> Out {
    let s: BTreeSet<usize> = set.iter().copied().collect();
    let r = choice::gauntt_condition(m, &s, &ctx.budgets, ctx.exec)?;
    let describe = |i: usize| r.subgroups[i].describe();
    let result = json!({
        "holds": r.holds,
        "subgroups": r.subgroups.len(),
        "fixed_point_free": r.fixed_point_free.len(),
        "counterexample": r.counterexample.map(describe),
    });
    let witness: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| json!({ "g": describe(w.g), "h": describe(w.h), "indices": w.indices }))
        .collect();
    Ok(outcome(json!({ "m": m, "set": s }), result, json!(witness)))
}

pub fn primesum(m: usize, n: usize) -> Out {
    let r = choice::prime_sum_criterion(m, n)?;
    let result = json!({ "holds": r.holds, "partitions": r.partitions, "counterexample": r.counterexample });
    Ok(outcome(json!({ "m": m, "n": n }), result, Value::Null))
}

fn summary<T: serde::Serialize>(inputs: Value, s: &T) -> Out {
    Ok(outcome(inputs, serde_json::to_value(s).expect("serializable"), Value::Null))
}

pub fn lauchli(ctx: &Ctx, n: usize, index_size: usize, limit: usize) -> Out {
    let s = experiments::lauchli_roundtrip(n, index_size, limit, &ctx.budgets, ctx.exec)?;
    summary(json!({ "n": n, "index_size": index_size, "limit": limit }), &s)
}

pub fn com_ft(ctx: &Ctx) -> Out {
    let s = experiments::com_ft_roundtrip(&ctx.budgets, ctx.exec)?;
    summary(json!({}), &s)
}

pub fn pp_lift(ctx: &Ctx, max_index: usize, colorings: usize) -> Out {
    let s = experiments::pp_lift(max_index, colorings, &ctx.budgets, ctx.exec)?;
    summary(json!({ "max_index": max_index, "colorings": colorings }), &s)
}

pub fn pk_induction(ctx: &Ctx, p: usize, k: usize, index_size: usize) -> Out {
    let s = experiments::pk_induction(p, k, index_size, &ctx.budgets, ctx.exec)?;
    summary(json!({ "p": p, "k": k, "index_size": index_size }), &s)
}
