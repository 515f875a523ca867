//! Subset walks that keep `Odd(S)` up to date with one or two row XORs per
//! step.

use std::ops::ControlFlow;

use crate::graph::odd_of_mask;

/// Visits `prefix | S` for every `S ⊆ {0, .., bits-1}` in reflected
/// Gray-code order, starting with `S = ∅`. The callback receives the set
/// and its odd neighbourhood.
pub(crate) fn gray_walk<F>(adj: &[u64], prefix: u64, bits: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(u64, u64) -> ControlFlow<()>,
{
    debug_assert!(bits < 64 && prefix & ((1u64 << bits) - 1) == 0);
    let mut mask = prefix;
    let mut odd = odd_of_mask(adj, prefix);
    visit(mask, odd)?;
    for step in 1..1u64 << bits {
        let b = step.trailing_zeros() as usize;
        mask ^= 1 << b;
        odd ^= adj[b];
        visit(mask, odd)?;
    }
    ControlFlow::Continue(())
}

/// Visits subsets in increasing mask order. An increment flips the
/// trailing run of ones plus one bit, so the update is amortised O(1).
pub(crate) fn ascending_walk<F>(adj: &[u64], n: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(u64, u64) -> ControlFlow<()>,
{
    let mut odd = 0u64;
    visit(0, 0)?;
    let end = 1u64 << n;
    let mut mask = 0u64;
    while mask + 1 < end {
        let next = mask + 1;
        odd ^= odd_of_mask(adj, mask ^ next);
        mask = next;
        visit(mask, odd)?;
    }
    ControlFlow::Continue(())
}

/// A contiguous block of the revolving-door order on `k`-subsets of
/// `{0, .., n-1}`, offset by the fixed members in `base`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct DoorBlock {
    n: usize,
    k: usize,
    base: u64,
    reversed: bool,
}

impl DoorBlock {
    pub(crate) fn root(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            base: 0,
            reversed: false,
        }
    }

    /// Splits the order into consecutive blocks, descending `depth` levels
    /// of the recursion `R(n,k) = R(n-1,k), rev(R(n-1,k-1)) + {n-1}`.
    pub(crate) fn split(self, depth: usize) -> Vec<DoorBlock> {
        let mut out = Vec::new();
        self.split_into(depth, &mut out);
        out
    }

    fn split_into(self, depth: usize, out: &mut Vec<DoorBlock>) {
        if depth == 0 || self.k == 0 || self.k == self.n {
            out.push(self);
            return;
        }
        let (first, second) = self.children();
        first.split_into(depth - 1, out);
        second.split_into(depth - 1, out);
    }

    fn children(self) -> (DoorBlock, DoorBlock) {
        let keep = DoorBlock {
            n: self.n - 1,
            k: self.k,
            base: self.base,
            reversed: self.reversed,
        };
        let take = DoorBlock {
            n: self.n - 1,
            k: self.k - 1,
            base: self.base | 1 << (self.n - 1),
            reversed: !self.reversed,
        };
        if self.reversed {
            (take, keep)
        } else {
            (keep, take)
        }
    }

    fn emit<F>(self, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(u64) -> ControlFlow<()>,
    {
        if self.k > self.n {
            return ControlFlow::Continue(());
        }
        if self.k == 0 {
            return f(self.base);
        }
        if self.k == self.n {
            return f(self.base | ((1u64 << self.n) - 1));
        }
        let (first, second) = self.children();
        first.emit(f)?;
        second.emit(f)
    }

    /// Walks the block; consecutive sets differ by exchanging one member,
    /// so `Odd` is updated with two row XORs.
    pub(crate) fn walk<F>(self, adj: &[u64], mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(u64, u64) -> ControlFlow<()>,
    {
        let mut prev: Option<(u64, u64)> = None;
        self.emit(&mut |mask| {
            let odd = match prev {
                None => odd_of_mask(adj, mask),
                Some((pm, po)) => po ^ odd_of_mask(adj, pm ^ mask),
            };
            prev = Some((mask, odd));
            visit(mask, odd)
        })
    }
}
