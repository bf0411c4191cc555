use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition `ξ_1 ≥ ξ_2 ≥ … ≥ ξ_ℓ > 0`, serialized as its parts.
///
/// The run-length form `m_1^{b_1} … m_s^{b_s}` lists the distinct parts in
/// increasing order `m_1 < … < m_s` with multiplicities `b_j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Partition> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    /// Builds from `(m_j, b_j)` pairs with strictly increasing `m_j`.
    pub fn from_rle(rle: &[(u32, u32)]) -> Result<Partition> {
        if rle.iter().any(|&(m, b)| m == 0 || b == 0)
            || rle.windows(2).any(|w| w[0].0 >= w[1].0)
        {
            return Err(Error::InvalidPartition(format!("bad run-length form {rle:?}")));
        }
        let parts = rle
            .iter()
            .rev()
            .flat_map(|&(m, b)| std::iter::repeat_n(m, b as usize))
            .collect();
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `(m_j, b_j)`, increasing in `m_j`.
    pub fn rle(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((m, b)) if *m == p => *b += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Tail sums `L_j = ξ_j + … + ξ_ℓ` for `j = 1..=ℓ+1` (the last is 0).
    pub fn tail_sums(&self) -> Vec<u32> {
        let mut out = vec![0; self.parts.len() + 1];
        for j in (0..self.parts.len()).rev() {
            out[j] = out[j + 1] + self.parts[j];
        }
        out
    }

    /// The conjugate partition, computed from the run-length form: with
    /// `m_0 = 0`, the conjugate is `n_1^{ℓ_1} … n_s^{ℓ_s}` where
    /// `n_j = b_{s-j+1} + … + b_s` and `ℓ_j = m_{s-j+1} − m_{s-j}`.
    pub fn conjugate(&self) -> Partition {
        let rle = self.rle();
        let s = rle.len();
        let conj: Vec<(u32, u32)> = (1..=s)
            .map(|j| {
                let n_j = rle[s - j..].iter().map(|&(_, b)| b).sum();
                let upper = rle[s - j].0;
                let lower = if s - j == 0 { 0 } else { rle[s - j - 1].0 };
                (n_j, upper - lower)
            })
            .collect();
        Partition::from_rle(&conj).expect("conjugate run-length form is valid")
    }

    /// All partitions of `m`, in reverse lexicographic order.
    pub fn all(m: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Partition> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Column lengths of the Young diagram.
    fn column_counts(p: &Partition) -> Vec<u32> {
        let width = p.parts().first().copied().unwrap_or(0);
        (1..=width).map(|c| p.parts().iter().filter(|&&x| x >= c).count() as u32).collect()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[3, 2, 2]).conjugate(), part(&[3, 3, 1]));
        assert_eq!(part(&[5]).conjugate(), part(&[1, 1, 1, 1, 1]));
        // 2^2 3^1 ↦ 1^1 3^2
        let xi = Partition::from_rle(&[(2, 2), (3, 1)]).unwrap();
        assert_eq!(xi, part(&[3, 2, 2]));
        assert_eq!(xi.conjugate().rle(), vec![(1, 1), (3, 2)]);
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn conjugate_matches_column_counts_and_is_involution() {
        for m in 0..=8 {
            for p in Partition::all(m) {
                assert_eq!(p.conjugate().parts(), column_counts(&p).as_slice());
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.conjugate().size(), m);
            }
        }
    }

    #[test]
    fn rle_roundtrip_and_sizes() {
        for m in 0..=8 {
            for p in Partition::all(m) {
                let rle = p.rle();
                assert!(rle.windows(2).all(|w| w[0].0 < w[1].0));
                assert_eq!(rle.iter().map(|&(m, b)| m * b).sum::<u32>(), p.size());
                assert_eq!(Partition::from_rle(&rle).unwrap(), p);
            }
        }
        let counts: Vec<usize> = (0..=8).map(|m| Partition::all(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn validation_and_json() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::from_rle(&[(2, 1), (2, 1)]).is_err());
        let p = part(&[3, 1, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1,1]");
        let q: Partition = serde_json::from_str("[3,1,1]").unwrap();
        assert_eq!(q, p);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
        assert_eq!(p.tail_sums(), vec![5, 2, 1, 0]);
    }
}
