//! The bar-Koszul bicomplex at a point and its comparison with `U(n)^lambda`.
//!
//! Column `m` is the sum over ordered compositions `lambda = lambda_1 + ... + lambda_m`
//! into nonzero parts of `(Lambda n)^{lambda_1} (x) ... (x) (Lambda n)^{lambda_m}`.
//! A basis element is a sequence of nonempty subsets `[S_1 | ... | S_m]` of the
//! positive roots; it sits in total degree `sum |S_i| - m`, so the part made of
//! single roots is degree 0 and maps to `U(n)^lambda` by multiplication.
//!
//! Both differentials lower the total degree by one:
//! * vertical: the Chevalley boundary `d(x_1..x_k) = sum_{p<q} (-1)^{p+q} [x_p,x_q] x_1..^x_p..^x_q..x_k`
//!   on one factor, with an overall `-1`;
//! * horizontal: the reduced coproduct of one factor, `e_S -> sum (-1)^{|A|} sh(A,B) e_A | e_B`
//!   over splittings `S = A + B` into nonempty parts, `sh` the shuffle sign.
//!
//! Passing a factor `S_j` contributes the Koszul sign `(-1)^{|S_j| - 1}`.
//!
//! Columns enumerate ordered compositions; the Kostant count enumerates
//! multisets. The first models the ordered `*`-products, the second the
//! symmetrized PBW side.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::cohomology_lab::{cohomology, ChainComplex, WeightBlock};
use crate::error::{Error, Result};
use crate::koszul_engine::pbw::{pbw_basis, Pbw};
use crate::lie_core::NilpotentAlgebra;
use crate::linalg::{q, SparseMatrix, Q};
use crate::root_data::{kostant_partition, GradingVector};

pub type Sequence = Vec<u32>;

#[derive(Clone, Debug)]
pub struct BarKoszulComplex {
    pub lambda: GradingVector,
    /// `terms[d]`: basis sequences of total degree `d`.
    pub terms: Vec<Vec<Sequence>>,
    /// `vertical[d - 1]`, `horizontal[d - 1]`: degree `d` to degree `d - 1`.
    pub vertical: Vec<SparseMatrix>,
    pub horizontal: Vec<SparseMatrix>,
}

fn sign(parity: usize) -> i64 {
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn position(mask: u32, b: usize) -> usize {
    (mask & ((1u32 << b) - 1)).count_ones() as usize
}

fn mask_weight(alg: &NilpotentAlgebra, mask: u32) -> GradingVector {
    let rank = alg.root_system().rank();
    (0..alg.dim())
        .filter(|a| mask >> a & 1 == 1)
        .fold(GradingVector::zero(rank), |acc, a| acc.add(alg.root(a)))
}

/// Chevalley boundary of `e_S` as `(mask, coefficient)` pairs.
fn boundary(alg: &NilpotentAlgebra, s: u32) -> Vec<(u32, i64)> {
    let members: Vec<usize> = (0..alg.dim()).filter(|a| s >> a & 1 == 1).collect();
    let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
    for (p, &a) in members.iter().enumerate() {
        for (qq, &b) in members.iter().enumerate().skip(p + 1) {
            let Some((c, n)) = alg.bracket(a, b) else { continue };
            let rest = s & !(1 << a) & !(1 << b);
            if rest >> c & 1 == 1 {
                continue;
            }
            let new = rest | 1 << c;
            *acc.entry(new).or_insert(0) += sign(p + qq) * n * sign(position(new, c));
        }
    }
    acc.into_iter().filter(|(_, v)| *v != 0).collect()
}

/// Reduced coproduct of `e_S` with the cobar sign `(-1)^{|A|}` folded in.
fn splittings(s: u32) -> Vec<(u32, u32, i64)> {
    let mut out = Vec::new();
    let mut a = (s.wrapping_sub(1)) & s;
    while a != 0 {
        let b = s & !a;
        let inversions: u32 = (0..32).filter(|i| a >> i & 1 == 1).map(|i| (b & ((1u32 << i) - 1)).count_ones()).sum();
        out.push((a, b, sign(a.count_ones() as usize) * sign(inversions as usize)));
        a = (a - 1) & s;
    }
    out.sort();
    out
}

pub fn build_bar_koszul(alg: &NilpotentAlgebra, lambda: &GradingVector) -> Result<BarKoszulComplex> {
    if lambda.is_zero() || !lambda.in_positive_cone() {
        return Err(Error::InvalidInput(format!("lambda = {lambda} must be a nonzero point of the positive cone")));
    }
    if alg.dim() >= 32 {
        return Err(Error::InvalidInput("too many positive roots for the bitmask basis".into()));
    }
    let candidates: Vec<(u32, GradingVector)> = (1..1u32 << alg.dim())
        .map(|m| (m, mask_weight(alg, m)))
        .filter(|(_, w)| w.le(lambda))
        .collect();

    fn rec(
        cands: &[(u32, GradingVector)],
        rest: &GradingVector,
        cur: &mut Sequence,
        out: &mut Vec<Sequence>,
    ) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        for (m, w) in cands {
            if w.le(rest) {
                cur.push(*m);
                rec(cands, &rest.sub(w), cur, out);
                cur.pop();
            }
        }
    }
    let mut all = Vec::new();
    rec(&candidates, lambda, &mut Vec::new(), &mut all);

    let degree = |seq: &Sequence| seq.iter().map(|m| m.count_ones() as usize - 1).sum::<usize>();
    let dmax = all.iter().map(degree).max().unwrap_or(0);
    let mut terms: Vec<Vec<Sequence>> = vec![Vec::new(); dmax + 1];
    for seq in all {
        terms[degree(&seq)].push(seq);
    }
    let index: Vec<HashMap<&Sequence, usize>> =
        terms.iter().map(|t| t.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();

    let mut bmemo: HashMap<u32, Vec<(u32, i64)>> = HashMap::new();
    let mut vertical = Vec::with_capacity(dmax);
    let mut horizontal = Vec::with_capacity(dmax);
    for d in 1..=dmax {
        let mut vt: Vec<(usize, usize, Q)> = Vec::new();
        let mut ht: Vec<(usize, usize, Q)> = Vec::new();
        for (col, seq) in terms[d].iter().enumerate() {
            let mut koszul = 0usize;
            for (i, &s) in seq.iter().enumerate() {
                let eps = sign(koszul);
                let bd = bmemo.entry(s).or_insert_with(|| boundary(alg, s));
                for &(t, c) in bd.iter() {
                    let mut new = seq.clone();
                    new[i] = t;
                    vt.push((index[d - 1][&new], col, q(-eps * c)));
                }
                for (a, b, c) in splittings(s) {
                    let mut new = Vec::with_capacity(seq.len() + 1);
                    new.extend_from_slice(&seq[..i]);
                    new.push(a);
                    new.push(b);
                    new.extend_from_slice(&seq[i + 1..]);
                    ht.push((index[d - 1][&new], col, q(eps * c)));
                }
                koszul += s.count_ones() as usize - 1;
            }
        }
        vertical.push(SparseMatrix::from_triples(terms[d - 1].len(), terms[d].len(), vt));
        horizontal.push(SparseMatrix::from_triples(terms[d - 1].len(), terms[d].len(), ht));
    }
    let cx = BarKoszulComplex { lambda: lambda.clone(), terms, vertical, horizontal };
    cx.check_bicomplex()?;
    Ok(cx)
}

impl BarKoszulComplex {
    pub fn max_degree(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// Total dimension of column `m`.
    pub fn column_dims(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for seq in self.terms.iter().flatten() {
            *out.entry(seq.len()).or_insert(0) += 1;
        }
        out
    }

    /// Total differential from degree `d` to `d - 1`.
    pub fn total(&self, d: usize) -> SparseMatrix {
        let (v, h) = (&self.vertical[d - 1], &self.horizontal[d - 1]);
        let triples = (0..v.rows())
            .flat_map(|r| v.row(r).iter().chain(h.row(r)).map(move |(c, x)| (r, *c, x.clone())))
            .collect::<Vec<_>>();
        SparseMatrix::from_triples(v.rows(), v.cols(), triples)
    }

    /// `d_v^2 = 0`, `d_h^2 = 0` and `d_v d_h + d_h d_v = 0`, exactly.
    pub fn check_bicomplex(&self) -> Result<()> {
        for d in 2..=self.max_degree() {
            let (v1, v2) = (&self.vertical[d - 2], &self.vertical[d - 1]);
            let (h1, h2) = (&self.horizontal[d - 2], &self.horizontal[d - 1]);
            if !v1.mul(v2).is_zero() || !h1.mul(h2).is_zero() {
                return Err(Error::NotAComplex(-(d as i64)));
            }
            let anti = v1.mul(h2).to_dense().add(&h1.mul(v2).to_dense());
            if !anti.is_zero() {
                return Err(Error::NotAComplex(-(d as i64)));
            }
        }
        Ok(())
    }

    /// Total complex as a cochain complex in degrees `-max_degree..=0`.
    pub fn to_chain_complex(&self) -> ChainComplex {
        let dmax = self.max_degree();
        let dims: Vec<usize> = (0..=dmax).map(|k| self.terms[dmax - k].len()).collect();
        let diffs = (0..dmax).map(|k| self.total(dmax - k)).collect();
        let mut cx = ChainComplex::new(-(dmax as i64), dmax + 1);
        cx.blocks.insert(self.lambda.to_weight(), WeightBlock { dims, diffs });
        cx
    }

    /// Homology dimension in each total degree.
    pub fn homology(&self) -> Vec<u64> {
        let report = cohomology(&self.to_chain_complex());
        (0..=self.max_degree()).map(|d| report.dim(-(d as i64))).collect()
    }

    /// `sum_d (-1)^d dim(term_d)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.terms.iter().enumerate().map(|(d, t)| sign(d) * t.len() as i64).sum()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberReport {
    pub r#type: String,
    pub lambda: GradingVector,
    /// Total dimension per column `m`.
    pub column_dims: BTreeMap<usize, usize>,
    pub term_dims: Vec<usize>,
    /// `(degree, dim)` for each nonzero homology group.
    pub homology: Vec<(usize, u64)>,
    pub kostant: u64,
    pub euler_characteristic: i64,
    pub concentrated: bool,
    pub augmentation_rank: usize,
    pub augmentation_kills_boundaries: bool,
    pub pass: bool,
}

/// Homology of the total complex, and the multiplication map from its degree-0
/// part onto `U(n)^lambda`.
pub fn fiber_quasi_iso_check(alg: &NilpotentAlgebra, lambda: &GradingVector) -> Result<FiberReport> {
    let cx = build_bar_koszul(alg, lambda)?;
    let rs = alg.root_system();
    let kostant = kostant_partition(rs, lambda);
    let homology: Vec<(usize, u64)> = cx.homology().into_iter().enumerate().filter(|(_, h)| *h > 0).collect();
    let concentrated = homology == vec![(0, kostant)];

    // augmentation: [e_r1 | ... | e_rm] -> e_r1 ... e_rm
    let basis = pbw_basis(alg, lambda);
    let pos: HashMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut pbw = Pbw::new(alg);
    let mut triples = Vec::new();
    for (col, seq) in cx.terms[0].iter().enumerate() {
        let word: Vec<usize> = seq.iter().map(|m| m.trailing_zeros() as usize).collect();
        for (mono, c) in pbw.straighten(&word) {
            triples.push((pos[&mono], col, q(c)));
        }
    }
    let aug = SparseMatrix::from_triples(basis.len(), cx.terms[0].len(), triples);
    let augmentation_rank = aug.rank();
    let augmentation_kills_boundaries = cx.max_degree() == 0 || aug.mul(&cx.total(1)).is_zero();
    let pass = concentrated
        && augmentation_rank as u64 == kostant
        && augmentation_kills_boundaries
        && cx.euler_characteristic() == kostant as i64;
    Ok(FiberReport {
        r#type: String::new(),
        lambda: lambda.clone(),
        column_dims: cx.column_dims(),
        term_dims: cx.term_dims(),
        homology,
        kostant,
        euler_characteristic: cx.euler_characteristic(),
        concentrated,
        augmentation_rank,
        augmentation_kills_boundaries,
        pass,
    })
}
