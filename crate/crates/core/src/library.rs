//! Named structures used throughout: cliques, cycles, paths.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::structure::{Signature, Structure, Tuple};

/// Symbol used by every graph-like structure in the library.
pub const EDGE: &str = "E";

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn graph(n: usize, edges: BTreeSet<Tuple>) -> Structure {
    Structure::new(Signature::binary(EDGE), numbered(n), vec![edges]).expect("library structure is well formed")
}

/// `K_n`: universe `0..n` with the relation `≠`.
pub fn complete_graph(n: usize) -> Structure {
    assert!(n >= 1, "K_n needs n >= 1");
    graph(n, (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| vec![i, j])).collect())
}

/// `C_n`: universe `0..n` with `(i, i+1 mod n)`.
pub fn directed_cycle(n: usize) -> Result<Structure> {
    if n < 2 {
        return Err(Error::BadN(n));
    }
    Ok(graph(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect()))
}

/// Symmetric `n`-cycle.
pub fn undirected_cycle(n: usize) -> Structure {
    assert!(n >= 3, "undirected cycles need n >= 3");
    graph(n, (0..n).flat_map(|i| [vec![i, (i + 1) % n], vec![(i + 1) % n, i]]).collect())
}

/// Symmetric path with `edges` edges on `0..=edges`.
pub fn undirected_path(edges: usize) -> Structure {
    graph(edges + 1, (0..edges).flat_map(|i| [vec![i, i + 1], vec![i + 1, i]]).collect())
}

/// One directed edge `0 → 1`.
pub fn single_edge() -> Structure {
    graph(2, BTreeSet::from([vec![0, 1]]))
}

/// One element carrying a loop.
pub fn looped_point() -> Structure {
    graph(1, BTreeSet::from([vec![0, 0]]))
}

/// One element, no tuples.
pub fn isolated_point() -> Structure {
    graph(1, BTreeSet::new())
}

/// Symbols of [`order_structure`].
pub const NEQ: &str = "neq";
pub const LEQ: &str = "leq";

/// `{0, 1}` with the two binary relations `≠` and `≤`.
pub fn order_structure() -> Structure {
    let sig = Signature::new([(LEQ, 2), (NEQ, 2)]).expect("valid signature");
    let mut rels = vec![BTreeSet::new(), BTreeSet::new()];
    let (leq, neq) = (sig.position(LEQ).unwrap(), sig.position(NEQ).unwrap());
    rels[leq] = BTreeSet::from([vec![0, 0], vec![0, 1], vec![1, 1]]);
    rels[neq] = BTreeSet::from([vec![0, 1], vec![1, 0]]);
    Structure::new(sig, numbered(2), rels).expect("valid order structure")
}
