//! Ordered partitions of index sets into blocks of prescribed sizes.
//!
//! Enumeration order is deterministic: blocks are filled with index
//! combinations in lexicographic order, earliest block first.

use crate::error::{Error, Result};
use crate::exact::Field;
use crate::kernel::{delta, kfun_prod, DeltaKind, Kernel, KernelFamily};

/// All ways to split `0..n` into blocks of the given sizes, each block
/// listed in increasing order.
pub fn enum_partitions(n: usize, sizes: &[usize]) -> Result<Vec<Vec<Vec<usize>>>> {
    if sizes.iter().sum::<usize>() != n {
        return Err(Error::Dimension(format!(
            "block sizes {sizes:?} do not sum to {n}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(sizes.len());
    fill(&(0..n).collect::<Vec<_>>(), sizes, &mut current, &mut out);
    Ok(out)
}

fn fill(
    rest: &[usize],
    sizes: &[usize],
    current: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let Some((&k, more)) = sizes.split_first() else {
        out.push(current.clone());
        return;
    };
    for chosen in combinations(rest.len(), k) {
        let block: Vec<usize> = chosen.iter().map(|&i| rest[i]).collect();
        let remaining: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|i| !block.contains(i))
            .collect();
        current.push(block);
        fill(&remaining, more, current, out);
        current.pop();
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Splits `0..n` into a first block of size `k` and its complement.
pub fn splits(n: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    combinations(n, k)
        .into_iter()
        .map(|first| {
            let second = (0..n).filter(|i| !first.contains(i)).collect();
            (first, second)
        })
        .collect()
}

/// All two-block splits of `0..n` with every first-block size.
pub fn all_splits(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0..=n).flat_map(|k| splits(n, k)).collect()
}

/// Elements of `xs` at the given indices.
pub fn pick<F: Clone>(xs: &[F], idx: &[usize]) -> Vec<F> {
    idx.iter().map(|&i| xs[i].clone()).collect()
}

/// Concatenation of two sets.
pub fn join<F: Clone>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().chain(b).cloned().collect()
}

/// A two-block partition of an ordered set, remembering the source indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition2<F> {
    pub first: Vec<F>,
    pub second: Vec<F>,
    pub origin: (Vec<usize>, Vec<usize>),
}

impl<F: Clone> Partition2<F> {
    pub fn from_indices(xs: &[F], first: &[usize], second: &[usize]) -> Self {
        Partition2 {
            first: pick(xs, first),
            second: pick(xs, second),
            origin: (first.to_vec(), second.to_vec()),
        }
    }

    /// Parity of the permutation taking the original order to the
    /// concatenation `{first, second}`, by counting inversions.
    pub fn parity(&self) -> i64 {
        let perm: Vec<usize> = self
            .origin
            .0
            .iter()
            .chain(&self.origin.1)
            .copied()
            .collect();
        let mut inv = 0usize;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        if inv.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// `g(second, first) Delta(first) Delta(second) / Delta(all)`, which equals
/// the permutation sign of the partition.
pub fn partition_sign<F: Field, K: KernelFamily<F> + ?Sized>(
    k: &K,
    all: &[F],
    p: &Partition2<F>,
) -> Result<F> {
    let num = kfun_prod(k, Kernel::G, &p.second, &p.first)?
        * &delta(k, DeltaKind::Lower, &p.first)?
        * &delta(k, DeltaKind::Lower, &p.second)?;
    let den = delta(k, DeltaKind::Lower, all)?;
    num.try_div(&den)
        .ok_or_else(|| Error::Input("coinciding parameters".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_match_multinomials() {
        assert_eq!(enum_partitions(5, &[2, 3]).unwrap().len(), binom(5, 2));
        assert_eq!(enum_partitions(6, &[1, 2, 3]).unwrap().len(), 60);
        assert_eq!(enum_partitions(0, &[0, 0]).unwrap().len(), 1);
        assert!(enum_partitions(3, &[1, 1]).is_err());
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn blocks_are_disjoint_and_exhaustive() {
        for p in enum_partitions(5, &[2, 1, 2]).unwrap() {
            let mut all: Vec<usize> = p.concat();
            all.sort();
            assert_eq!(all, vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn order_is_lexicographic() {
        let s = splits(3, 1);
        assert_eq!(s[0], (vec![0], vec![1, 2]));
        assert_eq!(s[2], (vec![2], vec![0, 1]));
    }
}
