//! Enumeration of binary trees with bounded left height, and the in-block
//! lookup tables derived from a tree.
//!
//! Trees of size `s` and left height at most `k` are ordered by left subtree
//! size, then by the rank of the left subtree (left height at most `k-1`),
//! then by the rank of the right subtree (left height at most `k`).

use std::collections::HashMap;

use rustc_hash::FxBuildHasher;

use super::cartesian::Tree;

/// `T_k(s)` for `k in -1..=max_k`, `s in 0..=max_s`, as u64.
#[derive(Clone, Debug)]
pub struct TreeCounts {
    max_s: usize,
    max_k: usize,
    /// row `k + 1`
    t: Vec<Vec<u64>>,
}

impl TreeCounts {
    /// Panics if some count exceeds `u64` (never for `max_s <= 35`).
    pub fn new(max_s: usize, max_k: usize) -> Self {
        let mut t = vec![vec![0u64; max_s + 1]; max_k + 2];
        t[0][0] = 1;
        for k in 0..=max_k {
            t[k + 1][0] = 1;
            for s in 1..=max_s {
                let mut acc: u64 = 0;
                for l in 0..s {
                    let term = t[k][l]
                        .checked_mul(t[k + 1][s - 1 - l])
                        .expect("tree count overflows u64");
                    acc = acc.checked_add(term).expect("tree count overflows u64");
                }
                t[k + 1][s] = acc;
            }
        }
        TreeCounts { max_s, max_k, t }
    }

    /// `T_k(s)`; `k = -1` counts only the empty tree.
    #[inline]
    pub fn get(&self, s: usize, k: i64) -> u64 {
        debug_assert!(s <= self.max_s && k <= self.max_k as i64);
        if k < -1 {
            return (s == 0) as u64;
        }
        self.t[(k + 1) as usize][s]
    }

    /// Rank of `tree` (whose left height must be at most `k`).
    pub fn rank(&self, tree: &Tree, k: usize) -> u64 {
        let n = tree.left.len();
        self.rank_sub(tree, tree.root, 0, n, k as i64)
    }

    fn rank_sub(&self, tree: &Tree, root: Option<usize>, lo: usize, hi: usize, k: i64) -> u64 {
        let s = hi - lo;
        let Some(r) = root else {
            debug_assert_eq!(s, 0);
            return 0;
        };
        debug_assert!(k >= 0, "left height bound violated");
        let l = r - lo;
        let mut rank = 0u64;
        for lp in 0..l {
            rank += self.get(lp, k - 1) * self.get(s - 1 - lp, k);
        }
        let right_count = self.get(s - 1 - l, k);
        let lr = self.rank_sub(tree, tree.left[r], lo, r, k - 1);
        let rr = self.rank_sub(tree, tree.right[r], r + 1, hi, k);
        rank + lr * right_count + rr
    }

    /// Left depths (a canonical array) of the tree with rank `id`.
    pub fn unrank(&self, id: u64, s: usize, k: usize) -> Vec<u32> {
        let mut out = vec![0u32; s];
        self.unrank_sub(id, 0, s, k as i64, 0, &mut out);
        out
    }

    fn unrank_sub(&self, mut id: u64, lo: usize, s: usize, k: i64, depth: u32, out: &mut [u32]) {
        if s == 0 {
            return;
        }
        let mut l = 0;
        loop {
            let c = self.get(l, k - 1) * self.get(s - 1 - l, k);
            if id < c {
                break;
            }
            id -= c;
            l += 1;
        }
        let rc = self.get(s - 1 - l, k);
        out[lo + l] = depth;
        self.unrank_sub(id / rc, lo, l, k - 1, depth + 1, out);
        self.unrank_sub(id % rc, lo + l + 1, s - 1 - l, k, depth, out);
    }
}

/// Stack masks of a block: bit `p` of `mask[j]` is set iff position `p`
/// is on the leftmost-minimum stack after processing `j`. The leftmost
/// minimum of `[i, j]` is the lowest set bit of `mask[j]` at or above `i`.
pub fn stack_masks<T: Ord>(vals: &[T]) -> Vec<u32> {
    debug_assert!(vals.len() <= 32);
    let mut masks = Vec::with_capacity(vals.len());
    let mut stack: Vec<usize> = Vec::with_capacity(vals.len());
    let mut mask = 0u32;
    for (j, v) in vals.iter().enumerate() {
        while let Some(&top) = stack.last() {
            if vals[top] > *v {
                stack.pop();
                mask &= !(1 << top);
            } else {
                break;
            }
        }
        stack.push(j);
        mask |= 1 << j;
        masks.push(mask);
    }
    masks
}

/// Strict prefix minima positions of a block.
pub fn prefix_minima_mask(masks: &[u32]) -> u32 {
    let mut pm = 0;
    for (j, &m) in masks.iter().enumerate() {
        if m.trailing_zeros() as usize == j {
            pm |= 1 << j;
        }
    }
    pm
}

/// Memo from type id to its derived tables (`b` masks followed by the
/// prefix-minima mask), shared by all blocks of the same type.
#[derive(Clone, Debug, Default)]
pub struct ShapeMemo {
    b: usize,
    slot: HashMap<u64, u32, FxBuildHasher>,
    data: Vec<u32>,
}

impl ShapeMemo {
    pub fn new(b: usize) -> Self {
        ShapeMemo {
            b,
            slot: HashMap::default(),
            data: Vec::new(),
        }
    }

    pub fn insert_with(&mut self, id: u64, canonical: impl FnOnce() -> Vec<u32>) {
        if self.slot.contains_key(&id) {
            return;
        }
        let vals = canonical();
        let masks = stack_masks(&vals);
        let pm = prefix_minima_mask(&masks);
        let s = (self.data.len() / (self.b + 1)) as u32;
        self.data.extend_from_slice(&masks);
        self.data.push(pm);
        self.slot.insert(id, s);
    }

    /// `(masks, prefix-minima mask)` of type `id`.
    #[inline]
    pub fn get(&self, id: u64) -> (&[u32], u32) {
        let s = self.slot[&id] as usize * (self.b + 1);
        (&self.data[s..s + self.b], self.data[s + self.b])
    }

    pub fn distinct(&self) -> usize {
        self.slot.len()
    }

    /// In-memory size of the memo, in bits.
    pub fn memory_bits(&self) -> u64 {
        32 * self.data.len() as u64 + 96 * self.slot.len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::super::cartesian::TreeShape;
    use super::*;

    fn all_trees(n: usize) -> Vec<String> {
        // all balanced parenthesis strings of length 2n
        fn go(open: usize, close: usize, n: usize, cur: &mut String, out: &mut Vec<String>) {
            if cur.len() == 2 * n {
                out.push(cur.clone());
                return;
            }
            if open < n {
                cur.push('1');
                go(open + 1, close, n, cur, out);
                cur.pop();
            }
            if close < open {
                cur.push('0');
                go(open, close + 1, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, 0, n, &mut String::new(), &mut out);
        out
    }

    #[test]
    fn rank_is_bijective_on_bounded_trees() {
        let counts = TreeCounts::new(9, 8);
        for n in 0..=9 {
            let trees = all_trees(n);
            for k in 0..n.max(1) {
                let mut seen = vec![false; counts.get(n, k as i64) as usize];
                let mut hits = 0;
                for bp in &trees {
                    let shape = TreeShape::from_bp_str(bp).unwrap();
                    if shape.left_height() > k {
                        continue;
                    }
                    hits += 1;
                    let id = counts.rank(&shape.tree(), k);
                    assert!(!seen[id as usize], "duplicate rank");
                    seen[id as usize] = true;
                    let canon = counts.unrank(id, n, k);
                    assert_eq!(TreeShape::from_values(&canon), shape);
                }
                assert_eq!(hits, seen.len(), "n={} k={}", n, k);
            }
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn masks_give_leftmost_minimum() {
        let vals = [3u32, 1, 2, 1, 0, 0, 2];
        let masks = stack_masks(&vals);
        for i in 0..vals.len() {
            for j in i..vals.len() {
                let want = (i..=j).min_by_key(|&p| (vals[p], p)).unwrap();
                let got = (masks[j] & (u32::MAX << i)).trailing_zeros() as usize;
                assert_eq!(got, want);
            }
        }
        assert_eq!(prefix_minima_mask(&masks), 0b0010011);
    }
}
