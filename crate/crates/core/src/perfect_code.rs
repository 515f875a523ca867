//! Perfect codes and their link to the extremal values.
//!
//! A perfect code is an independent set `C` such that every vertex outside
//! `C` has exactly one neighbour in `C`; equivalently every closed
//! neighbourhood meets `C` exactly once.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{full_mask, Graph, VertexSet};
use crate::solvers::{kappa_prime_with, kappa_with, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PerfectCode {
    pub code: VertexSet,
}

pub fn is_perfect_code(g: &Graph, c: VertexSet) -> bool {
    if c.universe() != g.order() {
        return false;
    }
    let independent = c.iter().all(|v| g.neighbors(v).is_disjoint(c));
    independent && c.complement().iter().all(|u| (g.neighbors(u) & c).len() == 1)
}

pub fn find_perfect_code(g: &Graph) -> Result<Option<PerfectCode>> {
    find_perfect_code_with(g, &SolverConfig::default())
}

/// Smallest perfect code by mask value. For a Δ-regular graph only codes
/// of size `n/(Δ+1)` are considered, and none exist when that is not an
/// integer.
pub fn find_perfect_code_with(g: &Graph, cfg: &SolverConfig) -> Result<Option<PerfectCode>> {
    cfg.check(g.order())?;
    let size = match g.regular_degree() {
        Some(d) if !g.order().is_multiple_of(d + 1) => return Ok(None),
        Some(d) => Some(g.order() / (d + 1)),
        None => None,
    };
    Ok(CodeSearch::new(g, full_mask(g.order()), size)
        .run()
        .map(|code| PerfectCode { code }))
}

/// Depth-first search deciding vertices from the highest index down,
/// trying "exclude" before "include". That visits candidate codes in
/// increasing mask order, so the first complete code is the smallest.
struct CodeSearch<'a> {
    g: &'a Graph,
    closed: Vec<u64>,
    /// `settles[v]`: vertices whose lowest closed neighbour is `v`; their
    /// coverage is final once `v` is decided.
    settles: Vec<Vec<usize>>,
    allowed: u64,
    size: Option<usize>,
}

impl<'a> CodeSearch<'a> {
    fn new(g: &'a Graph, allowed: u64, size: Option<usize>) -> Self {
        let n = g.order();
        let closed: Vec<u64> = (0..n).map(|v| g.adjacency()[v] | 1 << v).collect();
        let mut settles = vec![Vec::new(); n];
        for (u, &c) in closed.iter().enumerate() {
            settles[c.trailing_zeros() as usize].push(u);
        }
        Self {
            g,
            closed,
            settles,
            allowed,
            size,
        }
    }

    fn run(&self) -> Option<VertexSet> {
        let n = self.g.order();
        let mask = self.dfs(n, 0, 0)?;
        Some(VertexSet::from_mask(mask, n).expect("mask within universe"))
    }

    /// `next` is one past the vertex to decide; `covered` holds vertices
    /// whose closed neighbourhood already meets the code once.
    fn dfs(&self, next: usize, chosen: u64, covered: u64) -> Option<u64> {
        let picked = chosen.count_ones() as usize;
        if let Some(size) = self.size {
            if picked > size || picked + next < size {
                return None;
            }
        }
        if next == 0 {
            return Some(chosen);
        }
        let v = next - 1;
        let settled_ok = |cov: u64| self.settles[v].iter().all(|&u| cov >> u & 1 == 1);

        if settled_ok(covered) {
            if let Some(found) = self.dfs(v, chosen, covered) {
                return Some(found);
            }
        }
        if self.allowed >> v & 1 == 1 && self.closed[v] & covered == 0 {
            let cov = covered | self.closed[v];
            if settled_ok(cov) {
                return self.dfs(v, chosen | 1 << v, cov);
            }
        }
        None
    }
}

/// Evaluates both sides of "κ(G) = nΔ/(Δ+1) iff G has a perfect code all
/// of whose vertices have degree Δ" and reports whether they agree.
pub fn check_kappa_equality(g: &Graph) -> Result<bool> {
    check_kappa_equality_with(g, &SolverConfig::default())
}

pub fn check_kappa_equality_with(g: &Graph, cfg: &SolverConfig) -> Result<bool> {
    let n = g.order();
    let max_deg = g.max_degree()?;
    cfg.check(n)?;
    let kappa = kappa_with(g, cfg)?.value;
    let attains = kappa * (max_deg + 1) == n * max_deg;
    let top_degree = (0..n).filter(|&v| g.degree(v) == max_deg).fold(0u64, |m, v| m | 1 << v);
    let has_code = match g.regular_degree() {
        Some(d) if !n.is_multiple_of(d + 1) => false,
        regular => CodeSearch::new(g, top_degree, regular.map(|d| n / (d + 1)))
            .run()
            .is_some(),
    };
    Ok(attains == has_code)
}

/// For a δ-regular `G` with `n/(n-δ)` an odd integer, evaluates both sides
/// of "κ'(G) = n/(n-δ) iff the complement of G has a perfect code".
pub fn check_kappa_prime_equality(g: &Graph) -> Result<bool> {
    check_kappa_prime_equality_with(g, &SolverConfig::default())
}

pub fn check_kappa_prime_equality_with(g: &Graph, cfg: &SolverConfig) -> Result<bool> {
    let n = g.order();
    let Some(min_deg) = g.regular_degree() else {
        return Err(Error::Precondition("graph is not regular".into()));
    };
    let co_deg = n - min_deg;
    if !n.is_multiple_of(co_deg) {
        return Err(Error::Precondition(format!("n/(n-δ) = {n}/{co_deg} is not an integer")));
    }
    let ratio = n / co_deg;
    if ratio.is_multiple_of(2) {
        return Err(Error::Precondition(format!("n/(n-δ) = {ratio} is even")));
    }
    cfg.check(n)?;
    let attains = kappa_prime_with(g, cfg)?.value == ratio;
    let has_code = find_perfect_code_with(&g.complement(), cfg)?.is_some();
    Ok(attains == has_code)
}

/// Maps a 3-regular `G` to `(H, k)` such that `G` has a perfect code iff
/// `κ'(H) = k`: `H` is the complement of `G` when `n/4` is odd, and the
/// complement of `G ∪ K4` otherwise.
///
/// Graphs with `n` not divisible by 4 are rejected: a perfect code of a
/// cubic graph has exactly `n/4` vertices, so they never have one.
pub fn k4_gadget_reduction(g: &Graph) -> Result<(Graph, usize)> {
    let n = g.order();
    if n == 0 || g.regular_degree() != Some(3) {
        return Err(Error::Precondition("input must be a nonempty 3-regular graph".into()));
    }
    if !n.is_multiple_of(4) {
        return Err(Error::Precondition(format!(
            "order {n} is not divisible by 4, so no perfect code can exist"
        )));
    }
    let quarter = n / 4;
    if quarter % 2 == 1 {
        Ok((g.complement(), quarter))
    } else {
        let gadget = g.disjoint_union(&Graph::complete(4)?)?;
        Ok((gadget.complement(), quarter + 1))
    }
}
