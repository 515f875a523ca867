//! Exact extremal quantities.
//!
//! Both searches run over single subsets rather than (set, witness) pairs:
//!
//! * `κ(G) = max_C |Odd(C)∖C|`, since for a fixed `C` the largest set it
//!   weakly odd dominates is `Odd(C)∖C`.
//! * `κ'(G) = min |D ∪ Odd(D)|` over odd-size `D`, since a set is non-WOD
//!   exactly when it contains such a `D ∪ Odd(D)`.
//!
//! Witnesses are the smallest optimal set by mask value. Parallel runs
//! split the subset space into blocks and merge with the same
//! (value, mask) order, so they return exactly what a sequential run does.

mod enumerate;

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{full_mask, Graph, VertexSet};
use crate::wod;
use enumerate::{ascending_walk, gray_walk, DoorBlock};

/// Default limit on the order for exhaustive searches.
pub const DEFAULT_CAP: usize = 30;

/// Number of high bits fixed per block when splitting a Gray-code walk.
const SPLIT_BITS: usize = 6;
/// Recursion depth at which revolving-door orders are split.
const SPLIT_DEPTH: usize = 6;
/// Steps between checks of the shared stop flag.
const STOP_POLL: u64 = 0xfff;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub cap: usize,
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            parallel: false,
        }
    }
}

impl SolverConfig {
    pub fn parallel() -> Self {
        Self {
            parallel: true,
            ..Self::default()
        }
    }

    pub fn with_cap(cap: usize) -> Self {
        Self { cap, ..Self::default() }
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::EnumerationCap { n, cap: self.cap });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Kappa,
    KappaPrime,
}

/// An exact value of κ or κ' together with a checkable witness.
///
/// For κ the witness is `C` and `certified_set = Odd(C)∖C` is a WOD set of
/// size `value`. For κ' the witness is an odd `D` and
/// `certified_set = D ∪ Odd(D)` is a non-WOD set of size `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtremalResult {
    pub quantity: Quantity,
    pub value: usize,
    pub witness: VertexSet,
    pub certified_set: VertexSet,
    /// `(lower, upper)` bounds that were available to the search.
    pub bounds: (usize, usize),
}

impl ExtremalResult {
    /// Re-checks the witness with the independent certificate predicates.
    pub fn verify(&self, g: &Graph) -> bool {
        let size_ok = self.certified_set.len() == self.value;
        match self.quantity {
            Quantity::Kappa => {
                size_ok
                    && self.certified_set == g.odd_neighborhood(self.witness) - self.witness
                    && wod::verify_wod_certificate(g, self.certified_set, self.witness)
            }
            Quantity::KappaPrime => {
                size_ok
                    && self.certified_set == self.witness | g.odd_neighborhood(self.witness)
                    && wod::verify_non_wod_certificate(g, self.certified_set, self.witness)
            }
        }
    }
}

/// `κ_Q(G) = max(κ(G), n - κ'(G))` with both underlying results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KappaQResult {
    pub value: usize,
    pub kappa: ExtremalResult,
    pub kappa_prime: ExtremalResult,
}

impl KappaQResult {
    pub fn verify(&self, g: &Graph) -> bool {
        self.kappa.verify(g)
            && self.kappa_prime.verify(g)
            && self.value == self.kappa.value.max(g.order() - self.kappa_prime.value)
    }
}

/// `(Δ, ⌊nΔ/(Δ+1)⌋)`.
pub fn kappa_bounds(g: &Graph) -> Result<(usize, usize)> {
    let n = g.order();
    let max_deg = g.max_degree()?;
    Ok((max_deg, n * max_deg / (max_deg + 1)))
}

/// `(⌈n/(n-δ)⌉, δ+1)`.
pub fn kappa_prime_bounds(g: &Graph) -> Result<(usize, usize)> {
    let n = g.order();
    let min_deg = g.min_degree()?;
    Ok((n.div_ceil(n - min_deg), min_deg + 1))
}

/// Closed forms for `G_{p,q}`: `(n-p, q)` for odd `q` and
/// `(max(n-p, n-q), p+q-1)` for even `q`, with `n = pq`.
pub fn gpq_closed_form(p: usize, q: usize) -> Result<(usize, usize)> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter(format!(
            "closed form needs p >= 1 and q >= 1, got p={p}, q={q}"
        )));
    }
    let n = p * q;
    Ok(if q % 2 == 1 {
        (n - p, q)
    } else {
        ((n - p).max(n - q), p + q - 1)
    })
}

type Scored = (usize, u64);

fn prefer_max(a: Scored, b: Scored) -> Scored {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn prefer_min(a: Scored, b: Scored) -> Scored {
    if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn map_reduce<I, T, F, M>(items: Vec<I>, parallel: bool, f: F, merge: M) -> Option<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> Option<T> + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    if parallel {
        items.into_par_iter().filter_map(f).reduce_with(merge)
    } else {
        items.into_iter().filter_map(f).reduce(merge)
    }
}

/// Prefixes of the Gray-code blocks and the number of free low bits.
fn gray_blocks(n: usize, parallel: bool) -> (Vec<u64>, usize) {
    let top = if parallel { n.min(SPLIT_BITS) } else { 0 };
    let low = n - top;
    ((0..1u64 << top).map(|h| h << low).collect(), low)
}

/// Smallest mask whose (mask, odd) pair satisfies `pred`.
fn first_ascending(adj: &[u64], n: usize, pred: impl Fn(u64, u64) -> bool) -> Option<u64> {
    let mut found = None;
    let _ = ascending_walk(adj, n, |mask, odd| {
        if pred(mask, odd) {
            found = Some(mask);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

pub fn kappa(g: &Graph) -> Result<ExtremalResult> {
    kappa_with(g, &SolverConfig::default())
}

/// Exact κ by a Gray-code sweep over all `C`, stopping early once the
/// upper bound `⌊nΔ/(Δ+1)⌋` is reached.
pub fn kappa_with(g: &Graph, cfg: &SolverConfig) -> Result<ExtremalResult> {
    let n = g.order();
    let bounds = kappa_bounds(g)?;
    cfg.check(n)?;
    let adj = g.adjacency();
    let (lower, upper) = bounds;
    let score = |mask: u64, odd: u64| (odd & !mask).count_ones() as usize;

    if lower != upper {
        let stop = AtomicBool::new(false);
        let (prefixes, low) = gray_blocks(n, cfg.parallel);
        let best = map_reduce(
            prefixes,
            cfg.parallel,
            |prefix| {
                let mut best: Option<Scored> = None;
                let mut steps = 0u64;
                let _ = gray_walk(adj, prefix, low, |mask, odd| {
                    let cand = (score(mask, odd), mask);
                    best = Some(best.map_or(cand, |b| prefer_max(b, cand)));
                    if cand.0 == upper {
                        stop.store(true, Ordering::Relaxed);
                        return ControlFlow::Break(());
                    }
                    steps += 1;
                    if steps & STOP_POLL == 0 && stop.load(Ordering::Relaxed) {
                        return ControlFlow::Break(());
                    }
                    ControlFlow::Continue(())
                });
                best
            },
            prefer_max,
        )
        .expect("at least one block");
        if best.0 < upper {
            return Ok(kappa_result(g, best.0, best.1, bounds));
        }
    }
    // The walk stopped early, so the smallest optimal mask is found by an
    // ascending scan for the first set reaching the bound.
    let mask = first_ascending(adj, n, |m, o| score(m, o) == upper).expect("upper bound value was attained");
    Ok(kappa_result(g, upper, mask, bounds))
}

fn kappa_result(g: &Graph, value: usize, mask: u64, bounds: (usize, usize)) -> ExtremalResult {
    let witness = VertexSet::from_mask(mask, g.order()).expect("mask within universe");
    ExtremalResult {
        quantity: Quantity::Kappa,
        value,
        witness,
        certified_set: g.odd_neighborhood(witness) - witness,
        bounds,
    }
}

pub fn kappa_prime(g: &Graph) -> Result<ExtremalResult> {
    kappa_prime_with(g, &SolverConfig::default())
}

/// Exact κ' by sweeping odd cardinalities `k = 1, 3, 5, ...` in
/// revolving-door order. Since `|D ∪ Odd(D)| >= |D|`, cardinalities above
/// the incumbent value are never visited.
pub fn kappa_prime_with(g: &Graph, cfg: &SolverConfig) -> Result<ExtremalResult> {
    let n = g.order();
    let bounds = kappa_prime_bounds(g)?;
    cfg.check(n)?;
    let adj = g.adjacency();
    let (lower, _) = bounds;
    let depth = if cfg.parallel { SPLIT_DEPTH } else { 0 };

    let mut best: Option<Scored> = None;
    for k in (1..=n).step_by(2) {
        if let Some((value, mask)) = best {
            if k > value {
                break;
            }
            // every k-subset has mask >= 2^k - 1 and none can beat the bound
            if value == lower && mask < full_mask(k) {
                break;
            }
        }
        let layer = map_reduce(
            DoorBlock::root(n, k).split(depth),
            cfg.parallel,
            |block| {
                let mut local: Option<Scored> = None;
                let _ = block.walk(adj, |mask, odd| {
                    let cand = ((mask | odd).count_ones() as usize, mask);
                    local = Some(local.map_or(cand, |b| prefer_min(b, cand)));
                    ControlFlow::Continue(())
                });
                local
            },
            prefer_min,
        );
        if let Some(layer) = layer {
            best = Some(best.map_or(layer, |b| prefer_min(b, layer)));
        }
    }
    let (value, mask) = best.expect("n >= 1 so singletons exist");
    let witness = VertexSet::from_mask(mask, n).expect("mask within universe");
    Ok(ExtremalResult {
        quantity: Quantity::KappaPrime,
        value,
        witness,
        certified_set: witness | g.odd_neighborhood(witness),
        bounds,
    })
}

pub fn kappa_q(g: &Graph) -> Result<KappaQResult> {
    kappa_q_with(g, &SolverConfig::default())
}

pub fn kappa_q_with(g: &Graph, cfg: &SolverConfig) -> Result<KappaQResult> {
    let kappa = kappa_with(g, cfg)?;
    let kappa_prime = kappa_prime_with(g, cfg)?;
    Ok(KappaQResult {
        value: kappa.value.max(g.order() - kappa_prime.value),
        kappa,
        kappa_prime,
    })
}

pub fn check_threshold_condition(g: &Graph, k: usize) -> Result<bool> {
    check_threshold_condition_with(g, k, &SolverConfig::default())
}

/// True when every nonempty `D` has both `|D ∪ Odd(D)| > n-k` and
/// `|D ∪ (V∖Odd(D))| > n-k`, which is sufficient for `κ_Q(G) < k`.
pub fn check_threshold_condition_with(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<bool> {
    let n = g.order();
    cfg.check(n)?;
    let adj = g.adjacency();
    let full = full_mask(n);
    let limit = n as i64 - k as i64;
    let violated = AtomicBool::new(false);
    let (prefixes, low) = gray_blocks(n, cfg.parallel);
    map_reduce(
        prefixes,
        cfg.parallel,
        |prefix| {
            let mut steps = 0u64;
            let _ = gray_walk(adj, prefix, low, |mask, odd| {
                if mask != 0 {
                    let with_odd = (mask | odd).count_ones() as i64;
                    let with_even = (mask | (!odd & full)).count_ones() as i64;
                    if with_odd <= limit || with_even <= limit {
                        violated.store(true, Ordering::Relaxed);
                        return ControlFlow::Break(());
                    }
                }
                steps += 1;
                if steps & STOP_POLL == 0 && violated.load(Ordering::Relaxed) {
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            Some(())
        },
        |_, _| (),
    );
    Ok(!violated.load(Ordering::Relaxed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wod::is_wod;

    /// Definitional κ and κ': double enumeration over B with the WOD oracle.
    fn definitional(g: &Graph) -> (usize, usize) {
        let n = g.order();
        let mut kappa = 0;
        let mut kappa_prime = usize::MAX;
        for mask in 0..1u64 << n {
            let b = VertexSet::from_mask(mask, n).unwrap();
            if is_wod(g, b) {
                kappa = kappa.max(b.len());
            } else {
                kappa_prime = kappa_prime.min(b.len());
            }
        }
        (kappa, kappa_prime)
    }

    #[test]
    fn kappa_examples() {
        let g23 = Graph::complete_multipartite(2, 3).unwrap();
        assert_eq!(kappa(&g23).unwrap().value, 4);
        assert_eq!(kappa(&Graph::complete(4).unwrap()).unwrap().value, 3);
        assert_eq!(kappa(&Graph::cycle(5).unwrap()).unwrap().value, 2);
        let edgeless = kappa(&Graph::empty(5).unwrap()).unwrap();
        assert_eq!((edgeless.value, edgeless.witness.mask()), (0, 0));
        assert_eq!(kappa(&Graph::empty(0).unwrap()), Err(Error::EmptyGraph));
    }

    #[test]
    fn kappa_prime_examples() {
        let g23 = Graph::complete_multipartite(2, 3).unwrap();
        assert_eq!(kappa_prime(&g23).unwrap().value, 3);
        let c5 = kappa_prime(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!(c5.value, 3);
        // {v0} has D ∪ Odd(D) = {0, 1, 4}; it is the smallest optimal mask
        assert_eq!(c5.witness.to_vec(), vec![0]);
        assert_eq!(kappa_prime(&Graph::empty(4).unwrap()).unwrap().value, 1);
        assert_eq!(kappa_prime(&Graph::cycle(4).unwrap()).unwrap().value, 3);
    }

    #[test]
    fn kappa_q_examples() {
        assert_eq!(kappa_q(&Graph::cycle(5).unwrap()).unwrap().value, 2);
        assert_eq!(kappa_q(&Graph::complete_multipartite(2, 3).unwrap()).unwrap().value, 4);
        let two_k2 = Graph::complete_multipartite(1, 2).unwrap().power(2).unwrap();
        let r = kappa_q(&two_k2).unwrap();
        assert_eq!((r.kappa.value, r.kappa_prime.value, r.value), (2, 2, 2));
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(kappa_bounds(&Graph::complete(4).unwrap()).unwrap(), (3, 3));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(kappa_bounds(&c5).unwrap(), (2, 3));
        assert_eq!(kappa_prime_bounds(&c5).unwrap(), (2, 3));
        assert_eq!(kappa_bounds(&Graph::hypercube(3).unwrap()).unwrap(), (3, 6));
        assert_eq!(kappa_bounds(&Graph::empty(3).unwrap()).unwrap(), (0, 0));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(gpq_closed_form(2, 3).unwrap(), (4, 3));
        assert_eq!(gpq_closed_form(1, 5).unwrap(), (4, 5));
        assert_eq!(gpq_closed_form(2, 2).unwrap(), (2, 3));
        assert!(gpq_closed_form(0, 2).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::empty(31).unwrap();
        assert_eq!(kappa(&g), Err(Error::EnumerationCap { n: 31, cap: 30 }));
        assert!(kappa_prime(&g).is_err());
        assert!(check_threshold_condition(&g, 3).is_err());
        let small = SolverConfig::with_cap(4);
        assert!(kappa_with(&Graph::cycle(5).unwrap(), &small).is_err());
    }

    #[test]
    fn threshold_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(check_threshold_condition(&c5, 6).unwrap());
        assert!(!check_threshold_condition(&c5, 0).unwrap());
        // brute force: κ_Q(C5) = 2 < 3, and the condition holds at k = 3
        assert!(check_threshold_condition(&c5, 3).unwrap());
        assert!(!check_threshold_condition(&c5, 2).unwrap());
    }

    #[test]
    fn matches_definitional_double_enumeration() {
        for n in 1..=8usize {
            for seed in 0..25 {
                let g = Graph::random(n, seed * 31 + n as u64).unwrap();
                let (k, kp) = definitional(&g);
                let rk = kappa(&g).unwrap();
                let rkp = kappa_prime(&g).unwrap();
                assert_eq!((rk.value, rkp.value), (k, kp), "n={n} seed={seed}");
                assert!(rk.verify(&g) && rkp.verify(&g));
            }
        }
    }

    /// Lexicographically smallest optimal witnesses by plain ascending
    /// enumeration with from-scratch odd neighbourhoods.
    fn naive_witnesses(g: &Graph) -> (Scored, Scored) {
        let n = g.order();
        let mut best_k: Option<Scored> = None;
        let mut best_kp: Option<Scored> = None;
        for mask in 0..1u64 << n {
            let c = VertexSet::from_mask(mask, n).unwrap();
            let odd = g.odd_neighborhood(c);
            let k = ((odd - c).len(), mask);
            if best_k.is_none_or(|b| k.0 > b.0) {
                best_k = Some(k);
            }
            if c.len() % 2 == 1 {
                let kp = ((odd | c).len(), mask);
                if best_kp.is_none_or(|b| kp.0 < b.0) {
                    best_kp = Some(kp);
                }
            }
        }
        (best_k.unwrap(), best_kp.unwrap())
    }

    #[test]
    fn witnesses_are_lexicographically_smallest() {
        for n in 1..=10usize {
            for seed in 0..15 {
                let g = Graph::random(n, seed + 1000 * n as u64).unwrap();
                let ((kv, km), (kpv, kpm)) = naive_witnesses(&g);
                for cfg in [SolverConfig::default(), SolverConfig::parallel()] {
                    let rk = kappa_with(&g, &cfg).unwrap();
                    let rkp = kappa_prime_with(&g, &cfg).unwrap();
                    assert_eq!((rk.value, rk.witness.mask()), (kv, km));
                    assert_eq!((rkp.value, rkp.witness.mask()), (kpv, kpm));
                }
            }
        }
    }

    #[test]
    fn bounds_bracket_values() {
        for seed in 0..60 {
            let n = 1 + (seed as usize % 12);
            let g = Graph::random(n, seed).unwrap();
            let k = kappa(&g).unwrap();
            let kp = kappa_prime(&g).unwrap();
            assert!(k.bounds.0 <= k.value && k.value <= k.bounds.1);
            assert!(kp.bounds.0 <= kp.value && kp.value <= kp.bounds.1);
        }
    }

    #[test]
    fn copies_lemma_small() {
        for seed in 0..10 {
            let g = Graph::random(1 + seed as usize % 6, seed).unwrap();
            let k = kappa(&g).unwrap().value;
            let kp = kappa_prime(&g).unwrap().value;
            for r in 2..=3 {
                let p = g.power(r).unwrap();
                assert_eq!(kappa(&p).unwrap().value, r * k);
                assert_eq!(kappa_prime(&p).unwrap().value, kp);
            }
        }
    }

    #[test]
    fn qkappa_reduction_chain() {
        // κ_Q(G^{k+1}) >= (k+1)n - k  ⟺  κ'(G^{k+1}) <= k  ⟺  κ'(G) <= k
        for n in 1..=5usize {
            for seed in 0..6 {
                let g = Graph::random(n, seed + 77).unwrap();
                let kp = kappa_prime(&g).unwrap().value;
                for k in 0..=3usize {
                    let big = g.power(k + 1).unwrap();
                    let q = kappa_q(&big).unwrap();
                    let lhs = q.value + k >= (k + 1) * n;
                    let mid = q.kappa_prime.value <= k;
                    assert_eq!(lhs, mid, "n={n} seed={seed} k={k}");
                    assert_eq!(mid, kp <= k);
                }
            }
        }
    }

    #[test]
    fn threshold_soundness_small() {
        for n in 1..=7usize {
            for seed in 0..20 {
                let g = Graph::random(n, seed).unwrap();
                let q = kappa_q(&g).unwrap().value;
                for k in 0..=n + 1 {
                    let seq = check_threshold_condition(&g, k).unwrap();
                    let par = check_threshold_condition_with(&g, k, &SolverConfig::parallel()).unwrap();
                    assert_eq!(seq, par);
                    if seq {
                        assert!(q < k);
                    }
                }
            }
        }
    }
}
