use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{Gen, GenKind, Rep};
use crate::linalg::{axpy, scale, sub, unit, SVec};
use crate::rational::Q;
use crate::typea::RootSystemA;

const KEPT: usize = 20;

/// Outcome of [`check_axioms`]: the number of identities tested and the
/// first few violations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: u64,
    pub failures: u64,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.failures == 0
    }

    fn merge(mut self, other: AxiomReport) -> AxiomReport {
        self.checks += other.checks;
        self.failures += other.failures;
        let room = KEPT.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
        self
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.violations.len() < KEPT {
                self.violations.push(what());
            }
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            GenKind::E => 'e',
            GenKind::F => 'f',
            GenKind::H => 'h',
        };
        write!(f, "{c}{}", self.node)
    }
}

/// Checks, on every basis vector, the identities of the current algebra for
/// all `t`-powers up to one past the stored tables:
///
/// * weight (and degree) homogeneity of every generator;
/// * `h_i ⊗ 1` acts by the weight;
/// * `[e_i t^r, f_j t^s] = δ_ij h_i t^{r+s}`, `[h_i t^r, e_j t^s] = c_ij e_j t^{r+s}`,
///   `[h_i t^r, f_j t^s] = −c_ij f_j t^{r+s}`, `[h_i t^r, h_j t^s] = 0`;
/// * `[x_i t^r, x_j t^s]` is `0` unless `|i−j| = 1`, when it equals
///   `[x_i t^{r+s}, x_j]` (for `x = e, f`);
/// * the Serre relations in degree 0.
pub fn check_axioms<R: Rep + Sync + ?Sized>(m: &R) -> AxiomReport {
    let n = m.rank();
    let rs = RootSystemA::new(n).expect("modules have positive rank");
    let kmax = m.stored_power() + 1;
    let shifts: Vec<_> = Gen::all(n).iter().map(|g| g.shift(&rs)).collect();
    (0..m.dim())
        .into_par_iter()
        .map(|b| check_basis_vector(m, &rs, kmax, &shifts, b))
        .reduce(AxiomReport::default, AxiomReport::merge)
}

fn check_basis_vector<R: Rep + ?Sized>(
    m: &R,
    rs: &RootSystemA,
    kmax: u32,
    shifts: &[crate::typea::Weight],
    b: usize,
) -> AxiomReport {
    let n = m.rank();
    let gens = Gen::all(n);
    let mut rep = AxiomReport::default();
    let v = unit(b);
    let wt = m.weight(b);
    // img[k][g] = (g ⊗ t^k) v
    let img: Vec<Vec<SVec>> =
        (0..=kmax).map(|k| gens.iter().map(|&g| m.act(g, k, &v)).collect()).collect();
    let gi = |g: Gen| match g.kind {
        GenKind::E => g.node - 1,
        GenKind::F => n + g.node - 1,
        GenKind::H => 2 * n + g.node - 1,
    };

    for k in 0..=kmax {
        for (g, shift) in gens.iter().zip(shifts) {
            let target = wt + shift;
            let ok = img[k as usize][gi(*g)].iter().all(|(i, _)| {
                let i = *i as usize;
                m.weight(i) == &target && (!m.is_graded() || m.degree(i) == m.degree(b) + k)
            });
            rep.record(ok, || format!("{g} t^{k} is not homogeneous on basis vector {b}"));
        }
    }
    for i in 1..=n {
        let want = scale(&v, &Q::from_int(wt.at(i)));
        rep.record(img[0][gi(Gen::h(i))] == want, || {
            format!("h{i} does not act by the weight on basis vector {b}")
        });
    }

    let comm = |x: Gen, r: u32, y: Gen, s: u32| -> SVec {
        sub(&m.act(x, r, &img[s as usize][gi(y)]), &m.act(y, s, &img[r as usize][gi(x)]))
    };
    let single = |c: i64, g: Gen, k: u32| -> SVec { scale(&img[k as usize][gi(g)], &Q::from_int(c)) };

    for r in 0..=kmax {
        for s in 0..=kmax - r {
            for i in 1..=n {
                for j in 1..=n {
                    let c = rs.cartan[i - 1][j - 1];
                    let mut check = |lhs: SVec, rhs: SVec, what: &dyn Fn() -> String| {
                        rep.record(lhs == rhs, || format!("{} on basis vector {b}", what()));
                    };
                    check(
                        comm(Gen::e(i), r, Gen::f(j), s),
                        if i == j { single(1, Gen::h(i), r + s) } else { Vec::new() },
                        &|| format!("[e{i} t^{r}, f{j} t^{s}]"),
                    );
                    check(
                        comm(Gen::h(i), r, Gen::e(j), s),
                        single(c, Gen::e(j), r + s),
                        &|| format!("[h{i} t^{r}, e{j} t^{s}]"),
                    );
                    check(
                        comm(Gen::h(i), r, Gen::f(j), s),
                        single(-c, Gen::f(j), r + s),
                        &|| format!("[h{i} t^{r}, f{j} t^{s}]"),
                    );
                    if i < j || (i == j && r < s) {
                        check(
                            comm(Gen::h(i), r, Gen::h(j), s),
                            Vec::new(),
                            &|| format!("[h{i} t^{r}, h{j} t^{s}]"),
                        );
                    }
                    for x in [Gen::e, Gen::f] {
                        let (xi, xj) = (x(i), x(j));
                        if i.abs_diff(j) == 1 {
                            if s > 0 {
                                check(
                                    comm(xi, r, xj, s),
                                    comm(xi, r + s, xj, 0),
                                    &|| format!("[{xi} t^{r}, {xj} t^{s}]"),
                                );
                            }
                        } else if i < j || (i == j && r < s) {
                            check(comm(xi, r, xj, s), Vec::new(), &|| {
                                format!("[{xi} t^{r}, {xj} t^{s}]")
                            });
                        }
                    }
                }
            }
        }
    }

    // x_i x_i x_j − 2 x_i x_j x_i + x_j x_i x_i = 0 for adjacent i, j
    for i in 1..=n {
        for j in 1..=n {
            if i.abs_diff(j) != 1 {
                continue;
            }
            for x in [Gen::e, Gen::f] {
                let (xi, xj) = (x(i), x(j));
                let a = |g: Gen, w: &SVec| m.act(g, 0, w);
                let t1 = a(xi, &a(xi, &img[0][gi(xj)]));
                let t2 = a(xi, &a(xj, &img[0][gi(xi)]));
                let t3 = a(xj, &a(xi, &img[0][gi(xi)]));
                let total = axpy(&axpy(&t1, &Q::from_int(-2), &t2), &Q::ONE, &t3);
                rep.record(total.is_empty(), || {
                    format!("Serre relation for ({xi}, {xj}) on basis vector {b}")
                });
            }
        }
    }
    rep
}
