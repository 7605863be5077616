use std::cmp::Ordering;
use std::fmt;

/// Finitely supported integer exponent vector. Stored without trailing
/// zeros; comparison treats missing entries as zero, which makes the order
/// lexicographic on zero-padded vectors of any common length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(Vec<i32>);

impl MultiIndex {
    pub fn new(mut entries: Vec<i32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        MultiIndex(entries)
    }

    pub fn zero() -> Self {
        MultiIndex(Vec::new())
    }

    /// `e_j`, the exponent of the single variable `j` (zero-based).
    pub fn unit(j: usize) -> Self {
        let mut v = vec![0; j + 1];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    /// Exponent of variable `j`; zero beyond the support.
    pub fn get(&self, j: usize) -> i32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// One past the last variable with a nonzero exponent.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }

    pub fn is_analytic(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|&a| (a as i64).abs()).max().unwrap_or(0)
    }

    pub fn padded(&self, len: usize) -> Vec<i32> {
        let mut v = self.0.clone();
        if v.len() < len {
            v.resize(len, 0);
        }
        v
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let n = self.0.len().max(other.0.len());
        MultiIndex::new((0..n).map(|j| self.get(j) + other.get(j)).collect())
    }

    pub fn neg(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|a| -a).collect())
    }

    /// Moves the exponent of variable `j` to variable `map(j)`.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> MultiIndex {
        let mut out: Vec<i32> = Vec::new();
        for (j, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let t = map(j);
            if out.len() <= t {
                out.resize(t + 1, 0);
            }
            out[t] += a;
        }
        MultiIndex::new(out)
    }
}

impl From<Vec<i32>> for MultiIndex {
    fn from(v: Vec<i32>) -> Self {
        MultiIndex::new(v)
    }
}

impl From<&[i32]> for MultiIndex {
    fn from(v: &[i32]) -> Self {
        MultiIndex::new(v.to_vec())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for j in 0..n {
            match self.get(j).cmp(&other.get(j)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, a) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let a = MultiIndex::new(vec![1, 0, -2, 0, 0]);
        assert_eq!(a.entries(), &[1, 0, -2]);
        assert_eq!(a.degree(), -1);
        assert!(!a.is_analytic());
        assert_eq!(MultiIndex::new(vec![0, 0]), MultiIndex::zero());
    }

    #[test]
    fn order_matches_padded_lexicographic() {
        let mut v = vec![
            MultiIndex::new(vec![1]),
            MultiIndex::new(vec![0, 1]),
            MultiIndex::zero(),
            MultiIndex::new(vec![-1]),
            MultiIndex::new(vec![0, -1]),
        ];
        v.sort();
        let padded: Vec<Vec<i32>> = v.iter().map(|a| a.padded(2)).collect();
        assert_eq!(padded, vec![vec![-1, 0], vec![0, -1], vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn reindex_spreads_variables() {
        let a = MultiIndex::new(vec![2, -1]);
        assert_eq!(a.reindex(|j| 2 * j + 1).entries(), &[0, 2, 0, -1]);
    }
}
