use crate::error::{Error, Result};

/// Topology of a Cartesian tree as a balanced-parenthesis sequence.
///
/// The sequence comes from the left-to-right stack construction: before
/// element `i` is pushed (a `1`), every stacked element strictly greater
/// than it is popped (a `0` each); the remaining elements are popped at the
/// end. Equal values stay on the stack, which yields the leftmost-minimum
/// tie rule. The tree of `n` nodes takes exactly `2n` bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeShape {
    n: usize,
    bp: Vec<u64>,
}

/// Pointer form of a binary tree over in-order positions `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub root: Option<usize>,
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

impl TreeShape {
    pub fn from_values<T: Ord>(values: &[T]) -> Self {
        let n = values.len();
        let mut bp = vec![0u64; (2 * n).div_ceil(64)];
        let mut pos = 0usize;
        let mut stack: Vec<usize> = Vec::with_capacity(n);
        for (i, v) in values.iter().enumerate() {
            while let Some(&top) = stack.last() {
                if values[top] > *v {
                    stack.pop();
                    pos += 1;
                } else {
                    break;
                }
            }
            bp[pos / 64] |= 1 << (pos % 64);
            pos += 1;
            stack.push(i);
        }
        TreeShape { n, bp }
    }

    /// Parses a parenthesis string of `1`/`0` characters.
    pub fn from_bp_str(s: &str) -> Result<Self> {
        let bits: Vec<bool> = s.chars().map(|c| c == '1').collect();
        let mut excess = 0i64;
        for &b in &bits {
            excess += if b { 1 } else { -1 };
            if excess < 0 {
                return Err(Error::InvalidParameter(format!("unbalanced sequence '{}'", s)));
            }
        }
        if excess != 0 {
            return Err(Error::InvalidParameter(format!("unbalanced sequence '{}'", s)));
        }
        let mut bp = vec![0u64; bits.len().div_ceil(64)];
        for (p, &b) in bits.iter().enumerate() {
            if b {
                bp[p / 64] |= 1 << (p % 64);
            }
        }
        Ok(TreeShape {
            n: bits.len() / 2,
            bp,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..2 * self.n).map(move |p| (self.bp[p / 64] >> (p % 64)) & 1 == 1)
    }

    pub fn bp_string(&self) -> String {
        self.bits().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Replays the stack construction to recover child pointers.
    pub fn tree(&self) -> Tree {
        let n = self.n;
        let mut left = vec![None; n];
        let mut right = vec![None; n];
        let mut stack: Vec<usize> = Vec::with_capacity(n);
        let mut popped: Option<usize> = None;
        let mut next = 0usize;
        for b in self.bits() {
            if b {
                let i = next;
                next += 1;
                left[i] = popped.take();
                if let Some(&top) = stack.last() {
                    right[top] = Some(i);
                }
                stack.push(i);
            } else {
                popped = stack.pop();
            }
        }
        Tree {
            root: popped,
            left,
            right,
        }
    }

    /// Number of left edges on the path from the root to each node.
    pub fn left_depths(&self) -> Vec<u32> {
        let t = self.tree();
        let mut depth = vec![0u32; self.n];
        let mut todo: Vec<(usize, u32)> = t.root.map(|r| (r, 0)).into_iter().collect();
        while let Some((v, d)) = todo.pop() {
            depth[v] = d;
            if let Some(l) = t.left[v] {
                todo.push((l, d + 1));
            }
            if let Some(r) = t.right[v] {
                todo.push((r, d));
            }
        }
        depth
    }

    /// Maximum number of left edges on any root-to-leaf path.
    pub fn left_height(&self) -> usize {
        self.left_depths().into_iter().max().unwrap_or(0) as usize
    }

    /// Smallest-valued array with this Cartesian tree: each node's left depth.
    pub fn canonical_array(&self) -> Vec<u32> {
        self.left_depths()
    }
}

/// Cartesian tree of `values` (leftmost minimum at the root).
pub fn cartesian_tree<T: Ord>(values: &[T]) -> Result<TreeShape> {
    if values.is_empty() {
        return Err(Error::EmptyArray);
    }
    Ok(TreeShape::from_values(values))
}

pub fn left_height(t: &TreeShape) -> usize {
    t.left_height()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_arrays(n: usize, sigma: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|a| {
                    (0..sigma).map(move |v| {
                        let mut b = a.clone();
                        b.push(v);
                        b
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn examples() {
        let t = cartesian_tree(&[5]).unwrap().tree();
        assert_eq!((t.root, t.left[0], t.right[0]), (Some(0), None, None));

        let t = cartesian_tree(&[1, 1]).unwrap().tree();
        assert_eq!((t.root, t.right[0]), (Some(0), Some(1)));

        let t = cartesian_tree(&[2, 1, 2]).unwrap().tree();
        assert_eq!((t.root, t.left[1], t.right[1]), (Some(1), Some(0), Some(2)));

        assert_eq!(cartesian_tree::<u32>(&[]), Err(Error::EmptyArray));
    }

    #[test]
    fn left_height_examples() {
        assert_eq!(left_height(&cartesian_tree(&[1, 1]).unwrap()), 0);
        assert_eq!(left_height(&cartesian_tree(&[2, 1]).unwrap()), 1);
        assert_eq!(left_height(&cartesian_tree(&[3, 2, 1]).unwrap()), 2);
    }

    /// Independent recursive definition: root at the leftmost minimum.
    fn recursive(vals: &[u32], lo: usize, hi: usize, t: &Tree) -> Option<usize> {
        if lo >= hi {
            return None;
        }
        let mut r = lo;
        for k in lo..hi {
            if vals[k] < vals[r] {
                r = k;
            }
        }
        assert_eq!(t.left[r], recursive(vals, lo, r, t));
        assert_eq!(t.right[r], recursive(vals, r + 1, hi, t));
        Some(r)
    }

    #[test]
    fn exhaustive_properties() {
        for sigma in 1..=4u32 {
            for n in 1..=8usize {
                if (sigma as usize).pow(n as u32) > 70_000 {
                    continue;
                }
                for a in all_arrays(n, sigma) {
                    let shape = cartesian_tree(&a).unwrap();
                    let t = shape.tree();
                    assert_eq!(t.root, recursive(&a, 0, n, &t));
                    for v in 0..n {
                        if let Some(l) = t.left[v] {
                            assert!(a[v] < a[l]);
                        }
                        if let Some(r) = t.right[v] {
                            assert!(a[v] <= a[r]);
                        }
                    }
                    assert!(shape.left_height() < sigma as usize);
                    let canon = shape.canonical_array();
                    assert_eq!(TreeShape::from_values(&canon), shape);
                    assert_eq!(TreeShape::from_bp_str(&shape.bp_string()).unwrap(), shape);
                }
            }
        }
    }
}
