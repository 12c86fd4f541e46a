//! The nilpotent radical `n` with a Chevalley basis `{e_alpha}`.
//!
//! Structure constants are not looked up from tables. The simple generators
//! `e_i` are realized on the direct sum of the fundamental modules, each
//! non-simple `e_xi` is defined through its extraspecial pair `(alpha_i, beta)`
//! (smallest simple root with `xi - alpha_i` a root) as
//! `e_xi = [e_i, e_beta] / (p + 1)`, and every `N_{alpha,beta}` is then read off
//! from matrix commutators. The Jacobi identity is checked on the constants.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie_core::module::build_irreducible;
use crate::linalg::{q, QMatrix};
use crate::root_data::{GradingVector, RootSystem};

#[derive(Clone, Debug)]
pub struct NilpotentAlgebra {
    rs: RootSystem,
    /// `basis_roots[k]` is the weight of basis element `k`.
    basis_roots: Vec<GradingVector>,
    /// Position of each basis element in the canonical root order.
    canonical: Vec<usize>,
    /// `bracket[a][b] = Some((c, N))` when `[e_a, e_b] = N e_c`.
    bracket: Vec<Vec<Option<(usize, i64)>>>,
}

impl NilpotentAlgebra {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.basis_roots.len()
    }

    pub fn root(&self, k: usize) -> &GradingVector {
        &self.basis_roots[k]
    }

    pub fn roots(&self) -> &[GradingVector] {
        &self.basis_roots
    }

    /// Index of basis element `k` in the root system's canonical order.
    pub fn canonical_index(&self, k: usize) -> usize {
        self.canonical[k]
    }

    pub fn basis_index(&self, root: &GradingVector) -> Option<usize> {
        self.basis_roots.iter().position(|r| r == root)
    }

    pub fn bracket(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        self.bracket[a][b]
    }

    /// `N_{a,b}`, zero when `a + b` is not a root.
    pub fn constant(&self, a: usize, b: usize) -> i64 {
        self.bracket[a][b].map_or(0, |(_, n)| n)
    }

    pub fn max_abs_constant(&self) -> i64 {
        self.bracket.iter().flatten().flatten().map(|(_, n)| n.abs()).max().unwrap_or(0)
    }

    /// Same algebra with basis element `k` of the result equal to basis element
    /// `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<NilpotentAlgebra> {
        let n = self.dim();
        if perm.len() != n || !perm.iter().copied().sorted().eq(0..n) {
            return Err(Error::InvalidInput(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let mut inv = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let bracket = (0..n)
            .map(|a| (0..n).map(|b| self.bracket[perm[a]][perm[b]].map(|(c, v)| (inv[c], v))).collect())
            .collect();
        let alg = NilpotentAlgebra {
            rs: self.rs.clone(),
            basis_roots: perm.iter().map(|&p| self.basis_roots[p].clone()).collect(),
            canonical: perm.iter().map(|&p| self.canonical[p]).collect(),
            bracket,
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        // [x, y] as a sparse vector
        let br = |x: &BTreeMap<usize, i64>, b: usize| -> BTreeMap<usize, i64> {
            let mut out = BTreeMap::new();
            for (&a, &c) in x {
                if let Some((t, v)) = self.bracket[a][b] {
                    *out.entry(t).or_insert(0) += c * v;
                }
            }
            out.retain(|_, v| *v != 0);
            out
        };
        let single = |a: usize| BTreeMap::from([(a, 1i64)]);
        for a in 0..n {
            for b in 0..n {
                if self.constant(a, b) != -self.constant(b, a) {
                    return Err(Error::JacobiFailure([a, b, b]));
                }
                for c in 0..n {
                    let mut total: BTreeMap<usize, i64> = BTreeMap::new();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (k, v) in br(&br(&single(x), y), z) {
                            *total.entry(k).or_insert(0) += v;
                        }
                    }
                    if total.values().any(|v| *v != 0) {
                        return Err(Error::JacobiFailure([a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Extraspecial decomposition of a non-simple positive root `xi = alpha_i + beta`
/// (canonical indices): returns `(i, beta, p)` with `p` the depth of the
/// `alpha_i`-string through `beta`.
pub fn extraspecial_pair(rs: &RootSystem, xi: usize) -> Option<(usize, usize, i64)> {
    let root = &rs.positive_roots()[xi];
    (0..rs.rank()).find_map(|i| {
        let beta = root.sub(&rs.simple_root(i));
        let b = rs.root_index(&beta)?;
        Some((i, b, rs.string_down(&rs.simple_root(i), &beta)))
    })
}

/// Operators `E_alpha` for every positive root (canonical order), generated from
/// the simple ones by the extraspecial recursion.
pub fn extend_to_positive_roots(rs: &RootSystem, simple: &[QMatrix]) -> Vec<QMatrix> {
    let mut ops: Vec<QMatrix> = simple.to_vec();
    for xi in rs.rank()..rs.num_positive_roots() {
        let (i, beta, p) = extraspecial_pair(rs, xi).expect("non-simple root has an extraspecial pair");
        ops.push(simple[i].commutator(&ops[beta]).scale(&q(p + 1).recip()));
    }
    ops
}

/// Checks `[E_a, E_b] = N_{a,b} E_{a+b}` for every pair, with `ops` in
/// canonical order.
pub(crate) fn check_bracket_compatible(alg: &NilpotentAlgebra, ops: &[QMatrix]) -> Result<()> {
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            let (ca, cb) = (alg.canonical[a], alg.canonical[b]);
            let comm = ops[ca].commutator(&ops[cb]);
            let expected = match alg.bracket[a][b] {
                Some((c, n)) => ops[alg.canonical[c]].scale(&q(n)),
                None => QMatrix::zeros(comm.rows(), comm.cols()),
            };
            if comm != expected {
                return Err(Error::BracketIncompatible(a, b));
            }
        }
    }
    Ok(())
}

pub fn chevalley_constants(rs: &RootSystem) -> Result<NilpotentAlgebra> {
    let n = rs.rank();
    let fundamentals = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            build_irreducible(rs, &rs.from_fundamental_ints(&c))
        })
        .collect::<Result<Vec<_>>>()?;
    let total: usize = fundamentals.iter().map(|m| m.dim()).sum();
    let simple: Vec<QMatrix> = (0..n)
        .map(|i| {
            let mut big = QMatrix::zeros(total, total);
            let mut off = 0;
            for m in &fundamentals {
                let e = m.e(i);
                for r in 0..m.dim() {
                    for c in 0..m.dim() {
                        if !e[(r, c)].is_zero() {
                            big[(off + r, off + c)] = e[(r, c)].clone();
                        }
                    }
                }
                off += m.dim();
            }
            big
        })
        .collect();
    let ops = extend_to_positive_roots(rs, &simple);

    let roots = rs.positive_roots();
    let np = roots.len();
    let mut bracket = vec![vec![None; np]; np];
    for a in 0..np {
        for b in 0..np {
            let comm = ops[a].commutator(&ops[b]);
            match rs.root_index(&roots[a].add(&roots[b])) {
                Some(c) => {
                    let target = &ops[c];
                    let (r, col) = (0..total)
                        .flat_map(|r| (0..total).map(move |col| (r, col)))
                        .find(|&(r, col)| !target[(r, col)].is_zero())
                        .ok_or(Error::BracketIncompatible(a, b))?;
                    let ratio = &comm[(r, col)] / &target[(r, col)];
                    if !ratio.is_integer() || target.scale(&ratio) != comm {
                        return Err(Error::BracketIncompatible(a, b));
                    }
                    let v = ratio.to_integer().to_i64().ok_or(Error::BracketIncompatible(a, b))?;
                    if v == 0 {
                        return Err(Error::BracketIncompatible(a, b));
                    }
                    bracket[a][b] = Some((c, v));
                }
                None if comm.is_zero() => {}
                None => return Err(Error::BracketIncompatible(a, b)),
            }
        }
    }
    let alg = NilpotentAlgebra {
        rs: rs.clone(),
        basis_roots: roots.to_vec(),
        canonical: (0..np).collect(),
        bracket,
    };
    alg.check_jacobi()?;
    Ok(alg)
}

/// Number of `k`-element subsets of the positive roots with sum `lambda`.
pub fn exterior_power_dims(alg: &NilpotentAlgebra, k: usize, lambda: &GradingVector) -> u64 {
    alg.roots()
        .iter()
        .combinations(k)
        .filter(|s| s.iter().fold(GradingVector::zero(lambda.rank()), |acc, r| acc.add(r)) == *lambda)
        .count() as u64
}

/// `dim Lambda^k(n)^lambda` for every `(k, lambda)` that occurs.
pub fn exterior_table(rs: &RootSystem) -> BTreeMap<(usize, GradingVector), u64> {
    let mut table = BTreeMap::new();
    let roots = rs.positive_roots();
    for mask in 0u64..(1u64 << roots.len()) {
        let mut sum = GradingVector::zero(rs.rank());
        for (i, r) in roots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = sum.add(r);
            }
        }
        *table.entry((mask.count_ones() as usize, sum)).or_insert(0) += 1;
    }
    table
}
