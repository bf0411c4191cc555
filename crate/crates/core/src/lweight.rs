//! ℓ-weights with spectral parameters in `q^Z`.
//!
//! A fundamental ℓ-weight `ω_{i,q^z}` is stored as the key `(i, z)`; an
//! [`LWeight`] is a finitely supported monomial in them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::typea::{Partition, Weight};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<LEntry>", into = "Vec<LEntry>")]
pub struct LWeight {
    mults: BTreeMap<(usize, i64), u32>,
}

#[derive(Serialize, Deserialize)]
struct LEntry {
    node: usize,
    exp: i64,
    mult: u32,
}

impl From<Vec<LEntry>> for LWeight {
    fn from(entries: Vec<LEntry>) -> LWeight {
        let mut out = LWeight::one();
        for e in entries {
            out.add(e.node, e.exp, e.mult);
        }
        out
    }
}

impl From<LWeight> for Vec<LEntry> {
    fn from(l: LWeight) -> Vec<LEntry> {
        l.mults.into_iter().map(|((node, exp), mult)| LEntry { node, exp, mult }).collect()
    }
}

impl LWeight {
    /// The empty monomial.
    pub fn one() -> LWeight {
        LWeight::default()
    }

    /// `ω_{i,q^z}`.
    pub fn fundamental(i: usize, z: i64) -> LWeight {
        let mut l = LWeight::one();
        l.add(i, z, 1);
        l
    }

    pub fn add(&mut self, node: usize, exp: i64, mult: u32) {
        if mult > 0 {
            *self.mults.entry((node, exp)).or_insert(0) += mult;
        }
    }

    pub fn mult(&self, node: usize, exp: i64) -> u32 {
        self.mults.get(&(node, exp)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, u32)> + '_ {
        self.mults.iter().map(|(&(i, z), &m)| (i, z, m))
    }

    pub fn is_one(&self) -> bool {
        self.mults.is_empty()
    }

    /// Total number of fundamental factors.
    pub fn degree(&self) -> u32 {
        self.mults.values().sum()
    }

    pub fn product(&self, other: &LWeight) -> LWeight {
        let mut out = self.clone();
        for (i, z, m) in other.iter() {
            out.add(i, z, m);
        }
        out
    }

    pub fn pow(&self, k: u32) -> LWeight {
        LWeight { mults: self.mults.iter().map(|(&key, &m)| (key, m * k)).collect() }
    }

    fn remove(&mut self, node: usize, exp: i64) {
        let e = self.mults.get_mut(&(node, exp)).expect("present");
        *e -= 1;
        if *e == 0 {
            self.mults.remove(&(node, exp));
        }
    }
}

impl fmt::Debug for LWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (i, z, m)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "w[{i},q^{z}]")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// The Kirillov–Reshetikhin monomial `ω_{i,q^center,len}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KRFactor {
    pub node: usize,
    pub center: i64,
    pub len: u32,
}

impl KRFactor {
    pub fn new(node: usize, center: i64, len: u32) -> KRFactor {
        KRFactor { node, center, len }
    }

    /// Exponents `center + len − 1 − 2j`, `j = 0..len`, descending.
    pub fn exponents(&self) -> impl Iterator<Item = i64> {
        let top = self.center + self.len as i64 - 1;
        (0..self.len as i64).map(move |j| top - 2 * j)
    }

    fn canonical_key(&self) -> (usize, std::cmp::Reverse<i64>, std::cmp::Reverse<u32>) {
        (self.node, std::cmp::Reverse(self.center), std::cmp::Reverse(self.len))
    }
}

pub fn kr_monomial(f: &KRFactor) -> Result<LWeight> {
    if f.len < 1 {
        return Err(Error::NonPositive { what: "KR length", value: f.len as i64 });
    }
    let mut l = LWeight::one();
    for z in f.exponents() {
        l.add(f.node, z, 1);
    }
    Ok(l)
}

/// `wt(ω_{i,a}) = ω_i`.
pub fn weight_map(n: usize, pi: &LWeight) -> Result<Weight> {
    let mut coords = vec![0i64; n];
    for (i, _, m) in pi.iter() {
        if i == 0 || i > n {
            return Err(Error::NodeOutOfRange { node: i, rank: n });
        }
        coords[i - 1] += m as i64;
    }
    Ok(Weight::new(coords))
}

/// The q-factorization: the unique decomposition into KR monomials whose
/// q-strings are pairwise in general position.
///
/// Per node, the maximal runs (step 2) of the support are peeled off
/// repeatedly. Output is ordered by node, then center and length descending.
pub fn q_factorize(pi: &LWeight) -> Vec<KRFactor> {
    let mut rest = pi.clone();
    let mut out = Vec::new();
    while !rest.is_one() {
        let keys: Vec<(usize, i64)> = rest.mults.keys().copied().collect();
        let present = |i: usize, z: i64| keys.binary_search(&(i, z)).is_ok();
        let sweep: Vec<KRFactor> = keys
            .iter()
            .filter(|&&(i, z)| !present(i, z - 2))
            .map(|&(i, z)| {
                let mut len = 1;
                while present(i, z + 2 * len as i64) {
                    len += 1;
                }
                KRFactor::new(i, z + len as i64 - 1, len)
            })
            .collect();
        for f in &sweep {
            for e in f.exponents() {
                rest.remove(f.node, e);
            }
        }
        out.extend(sweep);
    }
    out.sort_by_key(KRFactor::canonical_key);
    out
}

/// Whether two q-strings on the same node are in general position.
pub fn general_position(a: &KRFactor, b: &KRFactor) -> bool {
    if a.node != b.node {
        return true;
    }
    let d = a.center - b.center;
    let (ra, rb) = (a.len as i64, b.len as i64);
    (0..ra.min(rb)).all(|p| d != ra + rb - 2 * p && d != -(ra + rb - 2 * p))
}

/// The cyclicity criterion for an ordered tensor product of KR modules over
/// `sl_{n+1}`: for positions `r > s` the ratio `a_s/a_r` avoids
/// `q^{n_s+n_r+2−2p+2k−i_r−i_s}` with `1 ≤ p ≤ min(n_s,n_r)` and
/// `min(i_r,i_s) < k+1 ≤ min(i_r+i_s, n+1)`.
pub fn cyclic_order_ok(n: usize, factors: &[KRFactor]) -> bool {
    for r in 0..factors.len() {
        for s in 0..r {
            let (fr, fs) = (&factors[r], &factors[s]);
            let (ir, is) = (fr.node as i64, fs.node as i64);
            let (nr, ns) = (fr.len as i64, fs.len as i64);
            let diff = fs.center - fr.center;
            let k_lo = ir.min(is);
            let k_hi = (ir + is).min(n as i64 + 1) - 1;
            for p in 1..=ns.min(nr) {
                for k in k_lo..=k_hi {
                    if diff == ns + nr + 2 - 2 * p + 2 * k - ir - is {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `π_{i,ξ} = ∏_j ω_{i,q^{ξ_j−1},ξ_j}`.
pub fn pi_from_partition(i: usize, xi: &Partition) -> LWeight {
    xi.parts()
        .iter()
        .map(|&m| kr_monomial(&KRFactor::new(i, m as i64 - 1, m)).expect("parts are positive"))
        .fold(LWeight::one(), |a, b| a.product(&b))
}

/// One block `π_j = ω_{i,a_j,ℓ_j}^{n_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiBlock {
    pub factor: KRFactor,
    pub copies: u32,
    pub lweight: LWeight,
}

/// The blocks `π_1, …, π_s` read off the conjugate partition
/// `n_1^{ℓ_1} … n_s^{ℓ_s}`, with `a_j = q^{ℓ_j − 1 + 2Σ_{k>j} ℓ_k}`.
pub fn pi_blocks(i: usize, xi: &Partition) -> Vec<PiBlock> {
    let rle = xi.conjugate().rle();
    let mut tail = 0i64;
    let mut blocks = Vec::with_capacity(rle.len());
    for &(n_j, l_j) in rle.iter().rev() {
        let factor = KRFactor::new(i, l_j as i64 - 1 + 2 * tail, l_j);
        let lweight = kr_monomial(&factor).expect("positive length").pow(n_j);
        blocks.push(PiBlock { factor, copies: n_j, lweight });
        tail += l_j as i64;
    }
    blocks.reverse();
    blocks
}

/// [`cyclic_order_ok`] on `π_s, …, π_1`, each block flattened to its
/// identical KR factors.
pub fn blocks_cyclic(n: usize, i: usize, xi: &Partition) -> bool {
    let flat: Vec<KRFactor> = pi_blocks(i, xi)
        .iter()
        .rev()
        .flat_map(|b| std::iter::repeat_n(b.factor, b.copies as usize))
        .collect();
    cyclic_order_ok(n, &flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lw(entries: &[(usize, i64, u32)]) -> LWeight {
        let mut l = LWeight::one();
        for &(i, z, m) in entries {
            l.add(i, z, m);
        }
        l
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Every way of splitting a single-node multiset of exponents into
    /// q-strings whose pairs are in general position.
    fn brute_force_groupings(node: usize, exps: &[i64]) -> Vec<Vec<KRFactor>> {
        fn rec(
            node: usize,
            rest: &mut BTreeMap<i64, u32>,
            cur: &mut Vec<KRFactor>,
            out: &mut Vec<Vec<KRFactor>>,
        ) {
            let Some((&lo, _)) = rest.iter().next() else {
                let mut g = cur.clone();
                g.sort_by_key(KRFactor::canonical_key);
                if g.iter().enumerate().all(|(a, fa)| {
                    g[a + 1..].iter().all(|fb| general_position(fa, fb))
                }) && !out.contains(&g)
                {
                    out.push(g);
                }
                return;
            };
            // the smallest remaining exponent starts some string
            let mut len = 0;
            while rest.get(&(lo + 2 * len)).copied().unwrap_or(0) > 0 {
                len += 1;
                for e in 0..len {
                    *rest.get_mut(&(lo + 2 * e)).unwrap() -= 1;
                }
                rest.retain(|_, m| *m > 0);
                cur.push(KRFactor::new(node, lo + len - 1, len as u32));
                rec(node, rest, cur, out);
                cur.pop();
                for e in 0..len {
                    *rest.entry(lo + 2 * e).or_insert(0) += 1;
                }
            }
        }
        let mut rest = BTreeMap::new();
        for &e in exps {
            *rest.entry(e).or_insert(0) += 1;
        }
        let mut out = Vec::new();
        rec(node, &mut rest, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn kr_monomial_examples() {
        assert_eq!(kr_monomial(&KRFactor::new(1, 1, 2)).unwrap(), lw(&[(1, 2, 1), (1, 0, 1)]));
        assert_eq!(kr_monomial(&KRFactor::new(3, 5, 1)).unwrap(), LWeight::fundamental(3, 5));
        assert_eq!(
            kr_monomial(&KRFactor::new(2, 0, 3)).unwrap(),
            lw(&[(2, 2, 1), (2, 0, 1), (2, -2, 1)])
        );
        assert!(kr_monomial(&KRFactor::new(1, 0, 0)).is_err());
    }

    #[test]
    fn weight_map_examples() {
        assert_eq!(weight_map(2, &lw(&[(1, 2, 1), (1, 0, 2)])).unwrap(), Weight::new(vec![3, 0]));
        assert_eq!(weight_map(3, &LWeight::one()).unwrap(), Weight::zero(3));
        let kr = kr_monomial(&KRFactor::new(2, -1, 4)).unwrap();
        assert_eq!(weight_map(3, &kr).unwrap(), Weight::new(vec![0, 4, 0]));
        assert!(weight_map(1, &LWeight::fundamental(2, 0)).is_err());
    }

    #[test]
    fn q_factorize_examples() {
        assert_eq!(q_factorize(&lw(&[(1, 0, 1), (1, 2, 1)])), vec![KRFactor::new(1, 1, 2)]);
        assert_eq!(
            q_factorize(&lw(&[(1, 0, 1), (1, 4, 1)])),
            vec![KRFactor::new(1, 4, 1), KRFactor::new(1, 0, 1)]
        );
        assert_eq!(q_factorize(&LWeight::fundamental(2, -3)), vec![KRFactor::new(2, -3, 1)]);
        assert!(q_factorize(&LWeight::one()).is_empty());
        // linked strings {−1,1} and {1,3} refactor as {−1,1,3} and {1}
        assert_eq!(
            q_factorize(&lw(&[(1, -1, 1), (1, 1, 2), (1, 3, 1)])),
            vec![KRFactor::new(1, 1, 3), KRFactor::new(1, 1, 1)]
        );
    }

    #[test]
    fn q_factorize_matches_brute_force_and_is_unique() {
        let samples: Vec<Vec<i64>> = vec![
            vec![0, 2],
            vec![0, 4],
            vec![-1, 1, 1, 3],
            vec![0, 0, 2, 2, 4],
            vec![0, 1, 2, 3, 5],
            vec![-2, 0, 0, 0, 2, 6],
            vec![1, 3, 3, 5, 5, 5, 7],
        ];
        for exps in samples {
            let mut l = LWeight::one();
            for &e in &exps {
                l.add(1, e, 1);
            }
            let all = brute_force_groupings(1, &exps);
            assert_eq!(all.len(), 1, "{exps:?}: {all:?}");
            assert_eq!(q_factorize(&l), all[0]);
        }
    }

    #[test]
    fn cyclic_order_examples() {
        let a = KRFactor::new(1, 0, 1);
        let b = KRFactor::new(1, 2, 1);
        assert!(cyclic_order_ok(1, &[a, b]));
        assert!(!cyclic_order_ok(1, &[b, a]));
        assert!(cyclic_order_ok(1, &[b]));
        assert!(cyclic_order_ok(3, &[]));
    }

    #[test]
    fn pi_from_partition_examples() {
        assert_eq!(pi_from_partition(1, &part(&[2, 1])), lw(&[(1, 2, 1), (1, 0, 2)]));
        assert_eq!(
            pi_from_partition(2, &part(&[3])),
            kr_monomial(&KRFactor::new(2, 2, 3)).unwrap()
        );
        assert_eq!(pi_from_partition(2, &part(&[1, 1])), lw(&[(2, 0, 2)]));
    }

    #[test]
    fn pi_blocks_examples() {
        let blocks = pi_blocks(1, &part(&[2, 1]));
        assert_eq!(blocks.len(), 2);
        assert_eq!((blocks[0].factor, blocks[0].copies), (KRFactor::new(1, 2, 1), 1));
        assert_eq!((blocks[1].factor, blocks[1].copies), (KRFactor::new(1, 0, 1), 2));
        let blocks = pi_blocks(3, &part(&[4]));
        assert_eq!(blocks.len(), 1);
        assert_eq!((blocks[0].factor, blocks[0].copies), (KRFactor::new(3, 3, 4), 1));
        let blocks = pi_blocks(2, &part(&[1, 1, 1]));
        assert_eq!(blocks.len(), 1);
        assert_eq!((blocks[0].factor, blocks[0].copies), (KRFactor::new(2, 0, 1), 3));
    }

    #[test]
    fn blocks_cyclic_examples() {
        assert!(blocks_cyclic(1, 1, &part(&[2, 1])));
        assert!(blocks_cyclic(3, 2, &part(&[2, 2, 1])));
        assert!(blocks_cyclic(2, 1, &part(&[5])));
    }

    #[test]
    fn partition_families_at_desk_scale() {
        for n in 1..=3 {
            for i in 1..=n {
                for m in 1..=6 {
                    for xi in Partition::all(m) {
                        assert!(blocks_cyclic(n, i, &xi), "n={n} i={i} xi={xi}");
                        let pi = pi_from_partition(i, &xi);
                        let prod = pi_blocks(i, &xi)
                            .iter()
                            .fold(LWeight::one(), |a, b| a.product(&b.lweight));
                        assert_eq!(prod, pi);
                        let mut want: Vec<KRFactor> = xi
                            .parts()
                            .iter()
                            .map(|&p| KRFactor::new(i, p as i64 - 1, p))
                            .collect();
                        want.sort_by_key(KRFactor::canonical_key);
                        assert_eq!(q_factorize(&pi), want);
                        assert_eq!(
                            weight_map(n, &pi).unwrap(),
                            Weight::fundamental(n, i).scale(m as i64)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn json_forms() {
        let l = lw(&[(1, 2, 1), (1, 0, 2)]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"[{"node":1,"exp":0,"mult":2},{"node":1,"exp":2,"mult":1}]"#);
        assert_eq!(serde_json::from_str::<LWeight>(&s).unwrap(), l);
        let f = KRFactor::new(2, -1, 3);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"node":2,"center":-1,"len":3}"#);
    }

    fn arb_factor(n: usize) -> impl Strategy<Value = KRFactor> {
        (1..=n, -6i64..=6, 1u32..=4).prop_map(|(i, z, m)| KRFactor::new(i, z, m))
    }

    proptest! {
        #[test]
        fn q_factorize_inverts_expansion(
            n in 1usize..=3,
            seeds in prop::collection::vec((0usize..3, -6i64..=6, 1u32..=4), 1..5),
        ) {
            let fs: Vec<KRFactor> =
                seeds.iter().map(|&(i, z, m)| KRFactor::new(1 + i % n, z, m)).collect();
            let separated = fs.iter().enumerate().all(|(a, fa)| {
                fs[a + 1..].iter().all(|fb| general_position(fa, fb))
            });
            let l = fs.iter().fold(LWeight::one(), |a, f| a.product(&kr_monomial(f).unwrap()));
            let got = q_factorize(&l);
            let back = got.iter().fold(LWeight::one(), |a, f| a.product(&kr_monomial(f).unwrap()));
            prop_assert_eq!(&back, &l);
            for (a, fa) in got.iter().enumerate() {
                for fb in &got[a + 1..] {
                    prop_assert!(general_position(fa, fb));
                }
            }
            if separated {
                let mut want = fs.clone();
                want.sort_by_key(KRFactor::canonical_key);
                prop_assert_eq!(got, want);
            }
        }

        #[test]
        fn weight_map_is_a_homomorphism(
            a in prop::collection::vec(arb_factor(3), 0..4),
            b in prop::collection::vec(arb_factor(3), 0..4),
        ) {
            let mk = |v: &[KRFactor]| {
                v.iter().fold(LWeight::one(), |acc, f| acc.product(&kr_monomial(f).unwrap()))
            };
            let (la, lb) = (mk(&a), mk(&b));
            prop_assert_eq!(
                weight_map(3, &la.product(&lb)).unwrap(),
                &weight_map(3, &la).unwrap() + &weight_map(3, &lb).unwrap()
            );
        }
    }
}
