mod common;

use std::collections::BTreeSet;

use common::{arb_graph, brute_homs, preserves};
use homlab::experiments::all_filters;
use homlab::gadgets::{extract_ultrafilter, lift_hom, pp_relation, Gadget};
use homlab::library::{complete_graph, undirected_cycle, undirected_path};
use homlab::power::{ultrafilter_hom, TolerantPower};
use homlab::{Budgets, Exec, FiniteFilter};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pp_relation_is_the_projection_of_all_homs(g in arb_graph(4), a in arb_graph(3), x in 0usize..4, y in 0usize..4) {
        prop_assume!(x < g.len() && y < g.len());
        let gadget = Gadget::new(g.clone(), &x.to_string(), &y.to_string()).unwrap();
        let got = pp_relation(&gadget, &a, &Budgets::default()).unwrap();
        let want: BTreeSet<(usize, usize)> = brute_homs(&g, &a).into_iter().map(|h| (h[x], h[y])).collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn path_gadget_defines_k5_on_the_five_cycle() {
    let gadget = Gadget::new(undirected_path(3), "0", "3").unwrap();
    let got = pp_relation(&gadget, &undirected_cycle(5), &Budgets::default()).unwrap();
    let k5: BTreeSet<(usize, usize)> = (0..5).flat_map(|i| (0..5).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    assert_eq!(got, k5);
}

#[test]
fn every_k3_coloring_extracts_an_ultrafilter_containing_the_filter() {
    let k3 = complete_graph(3);
    for size in 1..=2 {
        for f in all_filters(size) {
            let p = TolerantPower::new(&k3, &f, &Budgets::default(), Exec::default()).unwrap();
            let colorings = brute_homs(p.carrier(), &k3);
            // colorings of (K_3)^I_F are the 3! relabelings of each base evaluation
            assert_eq!(colorings.len(), 6 * f.base_indices().len());
            for phi in &colorings {
                let w = extract_ultrafilter(&p, phi).unwrap();
                let u = &w.extracted;
                assert!(w.checks.all());
                assert!(u.is_ultrafilter() && u.contains_filter(&f));
            }
            for i in f.base_indices() {
                let u = FiniteFilter::ultrafilter_at(size, i).unwrap();
                let h = ultrafilter_hom(&p, &u).unwrap();
                assert_eq!(extract_ultrafilter(&p, h.assignment()).unwrap().extracted, u);
            }
        }
    }
}

#[test]
fn lifted_colorings_of_the_five_cycle_power_are_k5_colorings() {
    let c5 = undirected_cycle(5);
    let k5 = complete_graph(5);
    let gadget = Gadget::new(undirected_path(3), "0", "3").unwrap();
    for f in all_filters(2) {
        let p = TolerantPower::new(&c5, &f, &Budgets::default(), Exec::default()).unwrap();
        let kp = TolerantPower::new(&k5, &f, &Budgets::default(), Exec::default()).unwrap();
        for i in f.base_indices() {
            let phi = ultrafilter_hom(&p, &FiniteFilter::ultrafilter_at(2, i).unwrap()).unwrap();
            let r = lift_hom(&gadget, &p, phi.assignment(), &Budgets::default()).unwrap();
            assert!(r.proper, "{:?}", r.violation);
            // both powers share the carrier 5^|I| with identical encoding
            let same: Vec<usize> = (0..kp.carrier().len()).map(|c| phi.image(c)).collect();
            assert!(preserves(kp.carrier(), &k5, &same));
        }
    }
}
