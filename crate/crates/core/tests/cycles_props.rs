mod common;

use std::collections::BTreeSet;

use common::{preserves, sum_of_large_primes};
use homlab::cycles::{
    choice_filter, component_census, crt_isomorphism, directed_cycle, distinguished_subset, divisor_transfer, gcd,
    order_structure_hom, parse_family,
};
use homlab::experiments::all_filters;
use homlab::library::order_structure;
use homlab::power::{quotient_by_agreement, ultrafilter_hom, PowerMap, TolerantPower};
use homlab::solver::hom_enumerate;
use homlab::{Budgets, Exec, FiniteFilter, Structure};

/// Weak components by repeated label propagation.
fn component_count(s: &Structure) -> usize {
    let mut label: Vec<usize> = (0..s.len()).collect();
    loop {
        let mut changed = false;
        for t in s.relation(0) {
            let m = label[t[0]].min(label[t[1]]);
            for &x in t {
                if label[x] != m {
                    label[x] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            return label.into_iter().collect::<BTreeSet<_>>().len();
        }
    }
}

#[test]
fn crt_gives_isomorphisms_for_coprime_pairs() {
    for p in 2..=30 {
        for q in 2..=30 / p {
            let res = crt_isomorphism(p, q);
            if gcd(p, q) != 1 {
                assert!(res.is_err(), "C_{} is not a product C_{p} × C_{q}", p * q);
                continue;
            }
            let (prod, h) = res.unwrap();
            let c = directed_cycle(p * q).unwrap();
            let map = h.assignment();
            assert_eq!(map.iter().collect::<BTreeSet<_>>().len(), p * q);
            assert!(preserves(&c, &prod, map));
            assert_eq!(c.relation(0).len(), prod.relation(0).len());
            for (k, &v) in map.iter().enumerate() {
                assert_eq!(prod.id(v), format!("({},{})", k % p, k % q));
            }
        }
    }
}

#[test]
fn divisor_transfer_divides_colorings() {
    for (k, p) in [(2, 2), (2, 3), (3, 2)] {
        let c = directed_cycle(k * p).unwrap();
        for size in 1..=2 {
            for f in all_filters(size) {
                let big = TolerantPower::new(&c, &f, &Budgets::default(), Exec::default()).unwrap();
                let mut colorings: Vec<Vec<usize>> =
                    hom_enumerate(big.carrier(), &c, 50).unwrap().homs.into_iter().map(|h| h.into_assignment()).collect();
                for i in f.base_indices() {
                    let u = FiniteFilter::ultrafilter_at(size, i).unwrap();
                    colorings.push(ultrafilter_hom(&big, &u).unwrap().into_assignment());
                }
                for phi in colorings {
                    let (small, psi) = divisor_transfer(&big, &phi, k, p, &Budgets::default()).unwrap();
                    let cp = directed_cycle(p).unwrap();
                    assert!(preserves(small.carrier(), &cp, psi.assignment()));
                    for s in 0..small.carrier().len() {
                        let kf: Vec<usize> = small.function(s).iter().map(|&v| k * v).collect();
                        assert_eq!(psi.image(s), phi[big.element(&kf)] / k);
                    }
                }
            }
        }
    }
}

#[test]
fn census_counts_are_powers_of_n() {
    for n in 2..=4 {
        let c = directed_cycle(n).unwrap();
        for size in 1..=3 {
            for f in all_filters(size) {
                let p = TolerantPower::new(&c, &f, &Budgets::default(), Exec::default()).unwrap();
                let q = quotient_by_agreement(&p).unwrap();
                let census = component_census(&p, &q, &Budgets::default()).unwrap();
                let expected = n.pow(f.base_indices().len() as u32 - 1);
                assert_eq!(census.count, expected);
                assert_eq!(component_count(&q.quotient), expected);
            }
        }
    }
}

#[test]
fn distinguished_subsets_are_nonempty_and_proper() {
    for family in ["a,b", "a,b;c,d", "a,b,c", "a,b,c;d,e,f"] {
        let inst = choice_filter(&parse_family(family), &Budgets::default()).unwrap();
        for index in inst.filter.base_indices() {
            let found = distinguished_subset(&inst, &PowerMap::Evaluation { index }).unwrap();
            assert_eq!(found.len(), inst.sets.len());
            for d in found {
                assert!(!d.subset.is_empty() && d.subset.len() < inst.p);
                // the evaluated choice is the element picked out
                assert_eq!(d.subset, vec![inst.choice(index, d.set).unwrap()]);
            }
        }
    }
}

#[test]
fn order_maps_preserve_both_relations() {
    let a = order_structure();
    for size in 1..=4 {
        for f in all_filters(size) {
            let o = order_structure_hom(&f, &Budgets::default()).unwrap();
            assert!(preserves(&o.quotient.quotient, &a, o.hom.assignment()));
            let composed = o.quotient.projection.then(&o.hom);
            assert!(preserves(o.power.carrier(), &a, composed.assignment()));
        }
    }
}

#[test]
fn prime_sum_oracle_sanity() {
    assert!(sum_of_large_primes(4, 1));
    assert!(!sum_of_large_primes(4, 2));
    assert!(sum_of_large_primes(5, 4));
    assert!(!sum_of_large_primes(1, 0));
}
