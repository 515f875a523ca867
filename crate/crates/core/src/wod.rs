//! Weak odd domination membership.
//!
//! `B` is weakly odd dominated (WOD) when some `C ⊆ V∖B` has `B ⊆ Odd(C)`.
//! Otherwise there is an odd-size `D ⊆ B` with `Odd(D) ⊆ B`. Both sides of
//! this dichotomy are decided by one GF(2) system each:
//!
//! * WOD: solve `Γ_{V∖B} · X = 1_B` (rows indexed by `B`).
//! * non-WOD: solve `[1 ; Γ_B] · D = [1 ; 0]`, where the top row is the
//!   all-ones indicator of `B` and forces `|D|` odd.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::graph::{Graph, VertexSet};

/// Enumeration guard for [`is_wod_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Wod,
    NonWod,
}

/// Machine-checkable evidence that `set` is, or is not, a WOD set.
///
/// For [`CertificateKind::Wod`] the witness is `C`; for
/// [`CertificateKind::NonWod`] it is `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WodCertificate {
    pub kind: CertificateKind,
    pub set: VertexSet,
    pub witness: VertexSet,
}

impl WodCertificate {
    pub fn verify(&self, g: &Graph) -> bool {
        match self.kind {
            CertificateKind::Wod => verify_wod_certificate(g, self.set, self.witness),
            CertificateKind::NonWod => verify_non_wod_certificate(g, self.set, self.witness),
        }
    }
}

/// Maps a solution vector indexed by the members of `domain` back to a
/// vertex set.
fn lift(solution: &BitVector, domain: VertexSet) -> VertexSet {
    let mask = domain
        .iter()
        .enumerate()
        .filter(|&(i, _)| solution.get(i))
        .fold(0u64, |m, (_, v)| m | 1 << v);
    VertexSet::from_mask(mask, domain.universe()).expect("lifted into the same universe")
}

fn solve_wod_system(g: &Graph, b: VertexSet) -> Option<VertexSet> {
    let outside = b.complement();
    // cut_matrix(V∖B) has rows B and columns V∖B
    let system = g.cut_matrix(outside);
    let x = system
        .solve(&BitVector::ones(b.len()))
        .expect("system built with matching dimensions")?;
    Some(lift(&x, outside))
}

/// Polynomial-time WOD test. The empty set is WOD; `V` is not (for n ≥ 1).
pub fn is_wod(g: &Graph, b: VertexSet) -> bool {
    solve_wod_system(g, b).is_some()
}

/// Canonical `C ⊆ V∖B` with `B ⊆ Odd(C)`, or `None` when `B` is not WOD.
pub fn wod_certificate(g: &Graph, b: VertexSet) -> Option<VertexSet> {
    solve_wod_system(g, b)
}

/// `π(B) = rank([1 ; Γ_B]) - rank(Γ_B)`; 0 exactly when `B` is WOD.
pub fn pi(g: &Graph, b: VertexSet) -> u8 {
    let cut = g.cut_matrix(b);
    let stacked = cut
        .with_top_row(BitVector::ones(b.len()))
        .expect("indicator row has |B| entries");
    let diff = stacked.rank() - cut.rank();
    debug_assert!(diff <= 1);
    diff as u8
}

/// Odd-size `D ⊆ B` with `Odd(D) ⊆ B`, or `None` when `B` is WOD.
pub fn non_wod_certificate(g: &Graph, b: VertexSet) -> Option<VertexSet> {
    if b.is_empty() {
        return None;
    }
    let cut = g.cut_matrix(b);
    let system = cut
        .with_top_row(BitVector::ones(b.len()))
        .expect("indicator row has |B| entries");
    let mut rhs = BitVector::zeros(system.n_rows());
    rhs.set(0, true);
    let d = system.solve(&rhs).expect("rhs built with matching length")?;
    Some(lift(&d, b))
}

/// Returns whichever certificate exists for `B`.
pub fn certify(g: &Graph, b: VertexSet) -> WodCertificate {
    match wod_certificate(g, b) {
        Some(witness) => WodCertificate {
            kind: CertificateKind::Wod,
            set: b,
            witness,
        },
        None => WodCertificate {
            kind: CertificateKind::NonWod,
            set: b,
            witness: non_wod_certificate(g, b).expect("every non-WOD set has an odd witness"),
        },
    }
}

/// Parity of `|N(u) ∩ S|`, straight from the adjacency rows.
fn odd_count(g: &Graph, u: usize, s: VertexSet) -> bool {
    (g.adjacency()[u] & s.mask()).count_ones() % 2 == 1
}

/// Checks `C ∩ B = ∅` and that every vertex of `B` has an odd number of
/// neighbours in `C`.
pub fn verify_wod_certificate(g: &Graph, b: VertexSet, c: VertexSet) -> bool {
    if b.universe() != g.order() || c.universe() != g.order() {
        return false;
    }
    b.is_disjoint(c) && b.iter().all(|u| odd_count(g, u, c))
}

/// Checks `D ⊆ B`, `|D|` odd, and that no vertex outside `B` has an odd
/// number of neighbours in `D`.
pub fn verify_non_wod_certificate(g: &Graph, b: VertexSet, d: VertexSet) -> bool {
    if b.universe() != g.order() || d.universe() != g.order() {
        return false;
    }
    d.is_subset(b) && d.len() % 2 == 1 && b.complement().iter().all(|u| !odd_count(g, u, d))
}

/// Reference oracle: tries every `C ⊆ V∖B`.
pub fn is_wod_bruteforce(g: &Graph, b: VertexSet) -> Result<bool> {
    let outside = b.complement();
    if outside.len() > BRUTEFORCE_LIMIT {
        return Err(Error::Precondition(format!(
            "brute-force WOD check enumerates 2^{} sets; limit is 2^{BRUTEFORCE_LIMIT}",
            outside.len()
        )));
    }
    let pool = outside.mask();
    // walk all submasks of `pool`, including the empty one
    let mut sub = pool;
    loop {
        let c = VertexSet::from_mask(sub, g.order()).expect("submask of the universe");
        if b.iter().all(|u| odd_count(g, u, c)) {
            return Ok(true);
        }
        if sub == 0 {
            return Ok(false);
        }
        sub = (sub - 1) & pool;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn empty_set_is_wod() {
        let g = Graph::random(7, 3).unwrap();
        let e = VertexSet::empty(7);
        assert!(is_wod(&g, e));
        assert_eq!(pi(&g, e), 0);
        assert_eq!(wod_certificate(&g, e), Some(e));
        assert_eq!(non_wod_certificate(&g, e), None);
    }

    #[test]
    fn neighbourhoods_and_closed_neighbourhoods() {
        for seed in 0..20 {
            let g = Graph::random(9, seed).unwrap();
            for v in 0..9 {
                if g.degree(v) > 0 {
                    assert!(is_wod(&g, g.neighbors(v)));
                    assert!(verify_wod_certificate(&g, g.neighbors(v), set(9, &[v])));
                }
                let closed = g.closed_neighbors(v);
                assert!(!is_wod(&g, closed));
                let d = non_wod_certificate(&g, closed).unwrap();
                assert!(verify_non_wod_certificate(&g, closed, d));
                assert!(verify_non_wod_certificate(&g, closed, set(9, &[v])));
            }
        }
    }

    #[test]
    fn pi_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(pi(&c5, set(5, &[4, 0, 1])), 1);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(pi(&c4, set(4, &[0, 1])), 0);
    }

    #[test]
    fn wod_certificate_examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(wod_certificate(&c4, set(4, &[0, 2])), Some(set(4, &[1])));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(wod_certificate(&c5, set(5, &[0, 1, 2, 3])), None);
    }

    #[test]
    fn non_wod_certificate_examples() {
        let k2 = Graph::complete(2).unwrap();
        let d = non_wod_certificate(&k2, k2.vertices()).unwrap();
        assert_eq!(d.len() % 2, 1);
        assert!(verify_non_wod_certificate(&k2, k2.vertices(), d));
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(non_wod_certificate(&c4, set(4, &[0, 1])), None);
    }

    #[test]
    fn full_vertex_set_is_not_wod() {
        for n in 1..8 {
            let g = Graph::random(n, n as u64).unwrap();
            assert!(!is_wod(&g, g.vertices()));
            assert_eq!(pi(&g, g.vertices()), 1);
        }
        let g0 = Graph::empty(0).unwrap();
        assert!(is_wod(&g0, g0.vertices()));
    }

    #[test]
    fn verify_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(verify_wod_certificate(&c5, set(5, &[1, 4]), set(5, &[0])));
        assert!(!verify_wod_certificate(&c5, set(5, &[1, 4]), set(5, &[1])));
        let k2 = Graph::complete(2).unwrap();
        assert!(verify_non_wod_certificate(&k2, k2.vertices(), set(2, &[0])));
        assert!(!verify_non_wod_certificate(&k2, k2.vertices(), set(2, &[0, 1])));
        // wrong universe never verifies
        assert!(!verify_wod_certificate(&c5, set(6, &[1]), set(6, &[0])));
    }

    #[test]
    fn bruteforce_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(!is_wod_bruteforce(&c5, set(5, &[0, 1, 2])).unwrap());
        let g23 = Graph::complete_multipartite(2, 3).unwrap();
        // drop part {4, 5}
        assert!(is_wod_bruteforce(&g23, set(6, &[0, 1, 2, 3])).unwrap());
        assert!(is_wod(&g23, set(6, &[0, 1, 2, 3])));
        let big = Graph::empty(30).unwrap();
        assert!(is_wod_bruteforce(&big, VertexSet::empty(30)).is_err());
    }

    #[test]
    fn oracle_matches_bruteforce_exhaustively_small() {
        for n in 0..=5usize {
            let pairs = n * n.saturating_sub(1) / 2;
            for bits in 0..1u64 << pairs {
                let g = graph_from_pair_bits(n, bits);
                for mask in 0..1u64 << n {
                    let b = VertexSet::from_mask(mask, n).unwrap();
                    let fast = is_wod(&g, b);
                    assert_eq!(fast, is_wod_bruteforce(&g, b).unwrap());
                    assert_eq!(pi(&g, b) == 0, fast);
                    let cert = certify(&g, b);
                    assert!(cert.verify(&g));
                    assert_eq!(cert.kind == CertificateKind::Wod, fast);
                    if !fast {
                        // duality: the complement is WOD in the complement graph
                        assert!(is_wod(&g.complement(), b.complement()));
                    }
                }
            }
        }
    }

    #[test]
    fn monotonicity() {
        for seed in 0..30 {
            let g = Graph::random(8, seed).unwrap();
            for mask in 0..256u64 {
                let b = VertexSet::from_mask(mask, 8).unwrap();
                let wod = is_wod(&g, b);
                for v in 0..8 {
                    let bigger = b | VertexSet::singleton(8, v).unwrap();
                    let smaller = b - VertexSet::singleton(8, v).unwrap();
                    if wod {
                        assert!(is_wod(&g, smaller));
                    } else {
                        assert!(!is_wod(&g, bigger));
                    }
                }
            }
        }
    }

    fn graph_from_pair_bits(n: usize, bits: u64) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                if bits >> k & 1 == 1 {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }
}
