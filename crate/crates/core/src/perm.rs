//! Permutations of strands, staircase reduced words and braid-move paths between reduced words.
//!
//! A permutation is stored as `arr` with `arr[p]` the bottom position of the strand ending at
//! top position `p`. Letters are 0-based: letter `k` is the crossing of positions `k`, `k+1`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    arr: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { arr: (0..n).collect() }
    }

    /// The product `s_{w_0} s_{w_1} ⋯`, with the rightmost letter acting first.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut p = Perm::identity(n);
        for &k in word.iter().rev() {
            p.arr.swap(k, k + 1);
        }
        p
    }

    /// From one-line data `arr[top] = bottom`; `None` unless a permutation of `0..n`.
    pub fn from_array(arr: Vec<usize>) -> Option<Self> {
        let mut seen = alloc::vec![false; arr.len()];
        for &a in &arr {
            if a >= arr.len() || seen[a] {
                return None;
            }
            seen[a] = true;
        }
        Some(Perm { arr })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.arr
    }

    pub fn len(&self) -> usize {
        self.arr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arr.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.arr.iter().enumerate().all(|(p, &a)| p == a)
    }

    /// Coxeter length (number of inversions).
    pub fn length(&self) -> usize {
        let n = self.arr.len();
        let mut l = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                if self.arr[a] > self.arr[b] {
                    l += 1;
                }
            }
        }
        l
    }

    /// Pairs of bottom positions `(a, b)`, `a < b`, whose strands cross.
    pub fn crossings(&self) -> Vec<(usize, usize)> {
        let n = self.arr.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.arr[a] > self.arr[b] {
                    out.push((self.arr[b], self.arr[a]));
                }
            }
        }
        out.sort();
        out
    }

    /// `s_k · self` (a crossing added on top).
    pub fn left_mul(&self, k: usize) -> Perm {
        let mut p = self.clone();
        p.arr.swap(k, k + 1);
        p
    }

    /// `self · s_k` (a crossing added at the bottom).
    pub fn right_mul(&self, k: usize) -> Perm {
        let arr = self
            .arr
            .iter()
            .map(|&a| {
                if a == k {
                    k + 1
                } else if a == k + 1 {
                    k
                } else {
                    a
                }
            })
            .collect();
        Perm { arr }
    }

    /// Whether `ℓ(s_k · self) > ℓ(self)`.
    pub fn left_ascent(&self, k: usize) -> bool {
        self.arr[k] < self.arr[k + 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut arr = alloc::vec![0; self.arr.len()];
        for (p, &a) in self.arr.iter().enumerate() {
            arr[a] = p;
        }
        Perm { arr }
    }

    /// `self · rhs` (rhs acts first).
    pub fn compose(&self, rhs: &Perm) -> Perm {
        Perm { arr: self.arr.iter().map(|&a| rhs.arr[a]).collect() }
    }

    /// Top labels of the diagram with bottom labels `source`.
    pub fn apply<T: Clone>(&self, source: &[T]) -> Vec<T> {
        self.arr.iter().map(|&a| source[a].clone()).collect()
    }

    /// The staircase reduced word `B_1 B_2 ⋯ B_{n−1}`, `B_m = s_m s_{m−1} ⋯ s_{m−c_m+1}`
    /// (1-based letters), with `B_m` the rightmost factor acting first.
    pub fn canonical_word(&self) -> Vec<usize> {
        let n = self.arr.len();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut cur = self.clone();
        for m in (1..n).rev() {
            // Peel B (0-based letters m−1, m−2, …, m−c) off the right so position m is fixed.
            let mut found = None;
            for c in 0..=m {
                let block: Vec<usize> = (0..c).map(|t| m - 1 - t).collect();
                let mut rest = cur.clone();
                for &k in block.iter().rev() {
                    rest = rest.right_mul(k);
                }
                if rest.arr[m] == m {
                    found = Some((block, rest));
                    break;
                }
            }
            let (block, rest) = found.expect("a staircase block always exists");
            blocks.push(block);
            cur = rest;
        }
        blocks.into_iter().rev().flatten().collect()
    }

    /// All permutations of `0..n` in lexicographic order of `arr`.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut arr: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { arr: arr.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| arr[i] < arr[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| arr[j] > arr[i]).expect("successor exists");
            arr.swap(i, j);
            arr[i + 1..].reverse();
        }
        out
    }

    /// The longest element `ω₀`.
    pub fn longest(n: usize) -> Perm {
        Perm { arr: (0..n).rev().collect() }
    }
}

/// Whether `word` is a reduced expression.
pub fn is_reduced(n: usize, word: &[usize]) -> bool {
    Perm::from_word(n, word).length() == word.len()
}

/// One step rewriting a reduced word in place.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BraidMove {
    /// `s_a s_b → s_b s_a` at positions `pos, pos+1`, `|a − b| > 1`.
    Commute(usize),
    /// `s_a s_b s_a → s_b s_a s_b` at positions `pos..pos+3`, `|a − b| = 1`.
    Braid(usize),
}

impl BraidMove {
    pub fn apply(&self, word: &mut [usize]) {
        match *self {
            BraidMove::Commute(p) => word.swap(p, p + 1),
            BraidMove::Braid(p) => {
                let (a, b) = (word[p], word[p + 1]);
                word[p] = b;
                word[p + 1] = a;
                word[p + 2] = b;
            }
        }
    }
}

fn moves_from(word: &[usize]) -> Vec<BraidMove> {
    let mut out = Vec::new();
    for p in 0..word.len().saturating_sub(1) {
        if word[p].abs_diff(word[p + 1]) > 1 {
            out.push(BraidMove::Commute(p));
        }
        if p + 2 < word.len() && word[p] == word[p + 2] && word[p].abs_diff(word[p + 1]) == 1 {
            out.push(BraidMove::Braid(p));
        }
    }
    out
}

/// A shortest sequence of braid moves turning `from` into `to` (two reduced words of one
/// permutation), found by breadth-first search; `None` if they are not connected.
pub fn braid_path(from: &[usize], to: &[usize]) -> Option<Vec<BraidMove>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut parent: BTreeMap<Vec<usize>, (Vec<usize>, BraidMove)> = BTreeMap::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(from.to_vec());
    queue.push_back(from.to_vec());
    while let Some(w) = queue.pop_front() {
        for mv in moves_from(&w) {
            let mut next = w.clone();
            mv.apply(&mut next);
            if seen.contains(&next) {
                continue;
            }
            seen.insert(next.clone());
            parent.insert(next.clone(), (w.clone(), mv));
            if next == to {
                let mut path = Vec::new();
                let mut cur = next;
                while let Some((prev, mv)) = parent.get(&cur) {
                    path.push(*mv);
                    cur = prev.clone();
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(next);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn canonical_examples() {
        assert!(Perm::identity(3).canonical_word().is_empty());
        assert_eq!(Perm::longest(3).canonical_word(), vec![0, 1, 0]);
        assert_eq!(Perm::from_word(3, &[1]).canonical_word(), vec![1]);
        assert_eq!(Perm::longest(4).canonical_word(), vec![0, 1, 0, 2, 1, 0]);
    }

    #[test]
    fn canonical_words_are_reduced() {
        for n in 1..=5 {
            let all = Perm::all(n);
            assert_eq!(all.len(), (1..=n).product::<usize>());
            for p in all {
                let w = p.canonical_word();
                assert_eq!(w.len(), p.length());
                assert_eq!(Perm::from_word(n, &w), p);
            }
        }
    }

    #[test]
    fn labels_and_products() {
        let p = Perm::from_word(3, &[0]);
        assert_eq!(p.apply(&['a', 'b', 'c']), vec!['b', 'a', 'c']);
        let q = Perm::from_word(3, &[0, 1]);
        assert_eq!(q, p.compose(&Perm::from_word(3, &[1])));
        assert_eq!(q.compose(&q.inverse()), Perm::identity(3));
        assert_eq!(q.left_mul(1), Perm::from_word(3, &[1, 0, 1]));
        assert_eq!(q.right_mul(0), Perm::from_word(3, &[0, 1, 0]));
        assert_eq!(Perm::longest(3).crossings(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn braid_paths() {
        let path = braid_path(&[0, 1, 0], &[1, 0, 1]).unwrap();
        assert_eq!(path, vec![BraidMove::Braid(0)]);
        let mut w = vec![2, 0, 1, 0];
        for mv in braid_path(&w.clone(), &[0, 2, 1, 0]).unwrap() {
            mv.apply(&mut w);
        }
        assert_eq!(w, vec![0, 2, 1, 0]);
    }

    proptest! {
        #[test]
        fn path_connects_reduced_words(word in proptest::collection::vec(0usize..4, 0..8)) {
            let p = Perm::from_word(5, &word);
            // reversing a reduced word of the inverse gives another reduced word of p
            let reduced: Vec<usize> = p.inverse().canonical_word().into_iter().rev().collect();
            prop_assert!(is_reduced(5, &reduced));
            prop_assert_eq!(Perm::from_word(5, &reduced), p.clone());
            let target = p.canonical_word();
            let path = braid_path(&reduced, &target).unwrap();
            let mut w = reduced;
            for mv in path {
                mv.apply(&mut w);
            }
            prop_assert_eq!(w, target);
        }
    }
}
