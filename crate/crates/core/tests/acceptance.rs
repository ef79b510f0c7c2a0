//! The nine acceptance criteria, each run at its stated limits and timed.
//! Prints one PASS/FAIL line per criterion, then fails if any did.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{brute_homs, preserves, random_graph, sum_of_large_primes};
use homlab::choice::{gauntt_condition, prime_sum_criterion};
use homlab::cycles::{
    choice_filter, component_census, crt_isomorphism, directed_cycle, distinguished_subset, divisor_transfer, gcd,
    order_structure_hom, parse_family,
};
use homlab::duality::{power_set_structure, width_one};
use homlab::experiments::{all_filters, com_ft_roundtrip, lauchli_roundtrip, pp_lift};
use homlab::gadgets::{pp_relation, Gadget};
use homlab::library::{complete_graph, looped_point, order_structure, undirected_cycle, undirected_path};
use homlab::power::{quotient_by_agreement, ultrafilter_hom, PowerMap, TolerantPower};
use homlab::solver::{arc_consistency, hom_enumerate, hom_exists};
use homlab::{Budgets, Exec, FiniteFilter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn solver_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pairs = 600;
    let mut mismatches = 0;
    for _ in 0..pairs {
        let (nb, db) = (rng.gen_range(1..=4), rng.gen_range(0.1..0.7));
        let b = random_graph(&mut rng, nb, db);
        let (na, da) = (rng.gen_range(1..=3), rng.gen_range(0.1..0.9));
        let a = random_graph(&mut rng, na, da);
        let brute = brute_homs(&b, &a);
        let exists = hom_exists(&b, &a).unwrap().is_some();
        let count = hom_enumerate(&b, &a, usize::MAX).unwrap().homs.len();
        if exists == brute.is_empty() || count != brute.len() {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("{pairs} pairs, {mismatches} mismatches"))
}

fn width_one_verdicts() -> Outcome {
    let b = Budgets::default();
    let k2 = width_one(&complete_graph(2), &b).unwrap();
    let k3 = width_one(&complete_graph(3), &b).unwrap();
    let point = width_one(&looped_point(), &b).unwrap();
    // the full subset carries a loop in P(K_n), and K_n has none
    let looped_top = [2usize, 3].iter().all(|&n| {
        let p = power_set_structure(&complete_graph(n), &b).unwrap();
        let top = p.element((1 << n) - 1);
        p.derived.relation(0).contains(&vec![top, top])
    });
    let c5 = undirected_cycle(5);
    let k2g = complete_graph(2);
    let ac = arc_consistency(&c5, &k2g).unwrap();
    let ac_nonempty = !ac.has_empty_domain();
    let no_hom = hom_exists(&c5, &k2g).unwrap().is_none();
    let pass = !k2.width_one && !k3.width_one && point.width_one && looped_top && ac_nonempty && no_hom;
    outcome(
        pass,
        format!(
            "K2={} K3={} loop={} C5->K2: ac_nonempty={} hom={}",
            k2.width_one, k3.width_one, point.width_one, ac_nonempty, !no_hom
        ),
    )
}

fn lauchli() -> Outcome {
    let s = lauchli_roundtrip(3, 2, usize::MAX, &Budgets::default(), Exec::default()).unwrap();
    let truncated = s.rows.iter().any(|r| r.truncated);
    outcome(s.ok && !truncated, format!("{} filters, {} colorings", s.rows.len(), s.colorings))
}

fn pp_definability() -> Outcome {
    let gadget = Gadget::new(undirected_path(3), "0", "3").unwrap();
    let rel = pp_relation(&gadget, &undirected_cycle(5), &Budgets::default()).unwrap();
    let k5: BTreeSet<(usize, usize)> = (0..5).flat_map(|i| (0..5).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let s = pp_lift(2, 5, &Budgets::default(), Exec::default()).unwrap();
    let colorings: usize = s.rows.iter().map(|r| r.colorings).sum();
    outcome(rel == k5 && s.ok, format!("relation is K5: {}, {} colorings certified", rel == k5, colorings))
}

fn cycle_factorization() -> Outcome {
    let b = Budgets::default();
    let mut failures = 0;
    let mut crt = 0;
    for p in 2..=15 {
        for q in 2..=30 / p {
            if gcd(p, q) == 1 {
                crt += 1;
                let (prod, h) = crt_isomorphism(p, q).unwrap();
                let c = directed_cycle(p * q).unwrap();
                let bijective = h.assignment().iter().collect::<BTreeSet<_>>().len() == p * q;
                if !(bijective && preserves(&c, &prod, h.assignment()) && c.relation(0).len() == prod.relation(0).len()) {
                    failures += 1;
                }
            }
        }
    }
    let mut transfers = 0;
    for (k, p) in [(2, 2), (2, 3), (3, 2)] {
        let c = directed_cycle(k * p).unwrap();
        let cp = directed_cycle(p).unwrap();
        for f in (1..=2).flat_map(all_filters) {
            let big = TolerantPower::new(&c, &f, &b, Exec::default()).unwrap();
            let mut colorings: Vec<Vec<usize>> =
                hom_enumerate(big.carrier(), &c, 20).unwrap().homs.into_iter().map(|h| h.into_assignment()).collect();
            for u in f.extend_to_ultrafilters() {
                colorings.push(ultrafilter_hom(&big, &u).unwrap().into_assignment());
            }
            for phi in colorings {
                transfers += 1;
                match divisor_transfer(&big, &phi, k, p, &b) {
                    Ok((small, psi)) if preserves(small.carrier(), &cp, psi.assignment()) => {}
                    _ => failures += 1,
                }
            }
        }
    }
    let mut censuses = 0;
    for n in 2..=4 {
        let c = directed_cycle(n).unwrap();
        for f in (1..=3).flat_map(all_filters) {
            censuses += 1;
            let p = TolerantPower::new(&c, &f, &b, Exec::default()).unwrap();
            let q = quotient_by_agreement(&p).unwrap();
            let census = component_census(&p, &q, &b).unwrap();
            if census.count != n.pow(f.base_indices().len() as u32 - 1) {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{crt} crt, {transfers} transfers, {censuses} censuses, {failures} failures"))
}

fn choice_extraction() -> Outcome {
    let mut failures = 0;
    let mut colorings = 0;
    for family in ["a,b", "a,b;c,d", "a,b,c", "a,b,c;d,e,f"] {
        let inst = choice_filter(&parse_family(family), &Budgets::default()).unwrap();
        for index in inst.filter.base_indices() {
            colorings += 1;
            match distinguished_subset(&inst, &PowerMap::Evaluation { index }) {
                Ok(found) if found.iter().all(|d| !d.subset.is_empty() && d.subset.len() < inst.p) => {}
                _ => failures += 1,
            }
        }
    }
    outcome(failures == 0, format!("{colorings} colorings, {failures} failures"))
}

fn order_extension() -> Outcome {
    let a = order_structure();
    let mut failures = 0;
    let mut filters = 0;
    for f in (1..=4).flat_map(all_filters) {
        filters += 1;
        match order_structure_hom(&f, &Budgets::default()) {
            Ok(o) if preserves(o.power.carrier(), &a, o.quotient.projection.then(&o.hom).assignment()) => {}
            _ => failures += 1,
        }
    }
    outcome(failures == 0, format!("{filters} filters, {failures} failures"))
}

fn gauntt_prime_sum() -> Outcome {
    let b = Budgets::default();
    let mut mismatches = 0;
    for m in 2..=5 {
        for n in 2..=5 {
            let s: BTreeSet<usize> = (2..=n).collect();
            let g = gauntt_condition(m, &s, &b, Exec::default()).unwrap().holds;
            let p = prime_sum_criterion(m, n).unwrap().holds;
            if g != p || p == sum_of_large_primes(m, n) {
                mismatches += 1;
            }
        }
    }
    let two: BTreeSet<usize> = [2].into();
    let four = gauntt_condition(4, &two, &b, Exec::default()).unwrap().holds;
    let three = gauntt_condition(3, &two, &b, Exec::default()).unwrap().holds;
    outcome(
        mismatches == 0 && four && !three,
        format!("16 pairs, {mismatches} mismatches; (4,{{2}})={four} (3,{{2}})={three}"),
    )
}

fn power_laws() -> Outcome {
    let s = com_ft_roundtrip(&Budgets::default(), Exec::default()).unwrap();
    outcome(
        s.ok,
        format!("{} powers, {} embeddings, {} failures", s.powers.len(), s.embeddings.len(), s.failures),
    )
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("1 solver oracle equivalence", Duration::from_secs(30), solver_oracle),
        ("2 width-one verdicts", Duration::from_secs(5), width_one_verdicts),
        ("3 Lauchli round trip", Duration::from_secs(60), lauchli),
        ("4 pp-definability", Duration::from_secs(10), pp_definability),
        ("5 cycle factorization", Duration::from_secs(30), cycle_factorization),
        ("6 choice-instance extraction", Duration::from_secs(30), choice_extraction),
        ("7 order extension", Duration::from_secs(10), order_extension),
        ("8 Gauntt/prime-sum", Duration::from_secs(120), gauntt_prime_sum),
        ("9 tolerant-power laws", Duration::from_secs(60), power_laws),
    ];
    let mut failed = Vec::new();
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed < limit;
        println!(
            "criterion {name}: {} ({} ms, limit {} s) {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_millis(),
            limit.as_secs(),
            o.detail
        );
        if !pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn ultrafilters_on_small_sets_are_principal() {
    for size in 1..=4 {
        for f in all_filters(size) {
            assert_eq!(f.is_ultrafilter(), f.base_indices().len() == 1);
            assert_eq!(f.extend_to_ultrafilters().len(), f.base_indices().len());
            for u in f.extend_to_ultrafilters() {
                assert!(u.contains_filter(&f));
            }
        }
        assert!(FiniteFilter::from_indices(size, []).is_err());
    }
}
