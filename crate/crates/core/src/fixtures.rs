//! Named graphs and the corpus of cubic graphs used for perfect-code
//! checks.

use crate::graph::{parse_graph6, Graph};

/// Every cubic graph on at most 10 vertices up to isomorphism, as graph6:
/// 1 on 4 vertices, 2 on 6, 6 on 8 (one disconnected) and 21 on 10 (two
/// disconnected). The Petersen graph is among the order-10 entries.
pub const CUBIC_GRAPH6: &[&str] = &[
    "C~",
    "Epto",
    "Erdg",
    "GgMIl_",
    "GQX\\Cc",
    "GDpTJO",
    "GBhc]_",
    "GDz?jC",
    "G~?GW[",
    "ILQ_iEGAW",
    "Ibb?Wc`IG",
    "IUgA`XC@g",
    "IPR_q?X_o",
    "IBJDOaDQO",
    "IGIIciWW_",
    "IgCZd?H`G",
    "I@Te?M`e?",
    "IhOGhIBe?",
    "ICqq`?hOo",
    "IacGHdah?",
    "I`bGaChK_",
    "Ic?p]P_EG",
    "Ig?YtAcEO",
    "I`_XaQDW_",
    "IPF?`NGQ_",
    "Ixs?_KD@g",
    "ICE_n@gQ_",
    "Iq__OxEK_",
    "I~?GOCL@o",
    "I~?GOKH@g",
];

pub fn cubic_graphs() -> Vec<Graph> {
    CUBIC_GRAPH6
        .iter()
        .map(|s| parse_graph6(s).expect("fixture graph6 is valid"))
        .collect()
}

/// Names accepted by [`named`].
pub const NAMES: &[&str] = &["k4", "c4", "c5", "q3", "petersen", "k2"];

pub fn named(name: &str) -> Option<Graph> {
    Some(match name {
        "k2" => Graph::complete(2).ok()?,
        "k4" => Graph::complete(4).ok()?,
        "c4" => Graph::cycle(4).ok()?,
        "c5" => Graph::cycle(5).ok()?,
        "q3" => Graph::hypercube(3).ok()?,
        "petersen" => Graph::petersen(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn components(g: &Graph) -> usize {
        let n = g.order();
        let mut seen = 0u64;
        let mut count = 0;
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            count += 1;
            let mut frontier = 1u64 << s;
            while frontier != 0 {
                seen |= frontier;
                let mut next = 0;
                for v in (0..n).filter(|&v| frontier >> v & 1 == 1) {
                    next |= g.adjacency()[v];
                }
                frontier = next & !seen;
            }
        }
        count
    }

    #[test]
    fn corpus_shape() {
        let graphs = cubic_graphs();
        assert_eq!(graphs.len(), 30);
        for g in &graphs {
            assert_eq!(g.regular_degree(), Some(3));
        }
        let count = |n: usize, connected: bool| {
            graphs
                .iter()
                .filter(|g| g.order() == n && (components(g) == 1) == connected)
                .count()
        };
        assert_eq!(
            [count(4, true), count(6, true), count(8, true), count(10, true)],
            [1, 2, 5, 19]
        );
        assert_eq!([count(8, false), count(10, false)], [1, 2]);
        let mut texts: Vec<_> = CUBIC_GRAPH6.to_vec();
        texts.sort();
        texts.dedup();
        assert_eq!(texts.len(), CUBIC_GRAPH6.len());
    }

    #[test]
    fn names_resolve() {
        for name in NAMES {
            assert!(named(name).is_some(), "{name}");
        }
        assert!(named("nope").is_none());
    }
}
