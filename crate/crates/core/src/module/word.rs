use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Gen, Rep};
use crate::error::{Error, Result};
use crate::linalg::{normalize, sub, SVec};
use crate::typea::PosRoot;

/// A root vector or coroot of `sl_{n+1}`.
///
/// For `α = α_a + … + α_b`, `x_α^±` is the left-normed bracket
/// `[[x_a^±, x_{a+1}^±], …, x_b^±]` and `h_α = h_a + … + h_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieElt {
    Pos(PosRoot),
    Neg(PosRoot),
    H(PosRoot),
}

impl LieElt {
    fn root(&self) -> PosRoot {
        match *self {
            LieElt::Pos(r) | LieElt::Neg(r) | LieElt::H(r) => r,
        }
    }
}

impl fmt::Display for LieElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieElt::Pos(r) => write!(f, "x+[{r}]"),
            LieElt::Neg(r) => write!(f, "x-[{r}]"),
            LieElt::H(r) => write!(f, "h[{r}]"),
        }
    }
}

/// `(elt ⊗ t^power)^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub elt: LieElt,
    pub power: u32,
    pub exp: u32,
}

impl Letter {
    pub fn new(elt: LieElt, power: u32, exp: u32) -> Letter {
        Letter { elt, power, exp }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} t^{})", self.elt, self.power)?;
        if self.exp != 1 {
            write!(f, "^{}", self.exp)?;
        }
        Ok(())
    }
}

/// `(elt ⊗ t^k) v`. The `t`-power sits on the innermost generator of the
/// bracket.
pub fn apply_elt<R: Rep + ?Sized>(m: &R, elt: LieElt, k: u32, v: &SVec) -> Result<SVec> {
    let root = elt.root();
    if root.lo == 0 || root.hi > m.rank() || root.lo > root.hi {
        return Err(Error::NodeOutOfRange { node: root.hi.max(root.lo), rank: m.rank() });
    }
    Ok(match elt {
        LieElt::H(_) => {
            let mut acc = Vec::new();
            for j in root.lo..=root.hi {
                acc.extend(m.act(Gen::h(j), k, v));
            }
            normalize(acc)
        }
        LieElt::Pos(_) => bracket(m, Gen::e, root.lo, root.hi, k, v),
        LieElt::Neg(_) => bracket(m, Gen::f, root.lo, root.hi, k, v),
    })
}

fn bracket<R: Rep + ?Sized>(
    m: &R,
    gen: fn(usize) -> Gen,
    lo: usize,
    hi: usize,
    k: u32,
    v: &SVec,
) -> SVec {
    if lo == hi {
        return m.act(gen(lo), k, v);
    }
    // [X, y] v = X(y v) − y(X v)
    let y = gen(hi);
    let x_yv = bracket(m, gen, lo, hi - 1, k, &m.act(y, 0, v));
    let y_xv = m.act(y, 0, &bracket(m, gen, lo, hi - 1, k, v));
    sub(&x_yv, &y_xv)
}

/// Applies a word, rightmost letter first.
pub fn apply_word<R: Rep + ?Sized>(m: &R, v: &SVec, word: &[Letter]) -> Result<SVec> {
    let mut cur = v.clone();
    for letter in word.iter().rev() {
        for _ in 0..letter.exp {
            if cur.is_empty() {
                return Ok(cur);
            }
            cur = apply_elt(m, letter.elt, letter.power, &cur)?;
        }
    }
    Ok(cur)
}
