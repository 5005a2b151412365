use std::fmt;

/// Strictly increasing list of coordinate indices: the label of a basis
/// element `∂_{i1} ∧ … ∧ ∂_{ik}` or `dx_{i1} ∧ … ∧ dx_{ik}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    pub fn empty() -> Self {
        IndexSubset(Vec::new())
    }

    pub fn singleton(i: usize) -> Self {
        IndexSubset(vec![i])
    }

    /// Panics unless `indices` is strictly increasing.
    pub fn new(indices: Vec<usize>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "index subset must be strictly increasing"
        );
        IndexSubset(indices)
    }

    /// Sorts an arbitrary index sequence, returning the permutation sign,
    /// or `None` if an index repeats.
    pub fn sorted(mut indices: Vec<usize>) -> Option<(bool, IndexSubset)> {
        let mut negative = false;
        // insertion sort, counting transpositions
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((negative, IndexSubset(indices)))
    }

    pub fn grade(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    pub fn without_position(&self, pos: usize) -> IndexSubset {
        let mut v = self.0.clone();
        v.remove(pos);
        IndexSubset(v)
    }

    /// Concatenation `self ∧ other`, sorted, with its sign.
    pub fn wedge(&self, other: &IndexSubset) -> Option<(bool, IndexSubset)> {
        if self.0.iter().any(|i| other.contains(*i)) {
            return None;
        }
        // count pairs (a in self, b in other) with a > b
        let mut inversions = 0usize;
        for a in &self.0 {
            inversions += other.0.iter().filter(|b| *b < a).count();
        }
        let mut merged: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        merged.sort_unstable();
        Some((inversions % 2 == 1, IndexSubset(merged)))
    }

    /// All subsets of `{0..n}` of size `k`, in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<IndexSubset> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSubset>) {
            if cur.len() == k {
                out.push(IndexSubset(cur.clone()));
                return;
            }
            for i in start..n {
                if n - i < k - cur.len() {
                    break;
                }
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
