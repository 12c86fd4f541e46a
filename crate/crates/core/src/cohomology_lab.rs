//! Chevalley-Eilenberg cochains `C^k(n, V) = Lambda^k(n*) (x) V` and their
//! cohomology, with the checks built on them: Kostant's theorem, the kernel of
//! the co-bracket, and the shape of the weights of `H^2(n, C)`.
//!
//! Complexes are split into weight blocks; each differential preserves the
//! weight label, so ranks are computed block by block.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::{HighestWeightModule, NilpotentAlgebra};
use crate::linalg::{q, QMatrix, SparseMatrix, Q};
use crate::root_data::{dot_action, weyl_elements_by_length, RootSystem, Weight};

/// One weight block of a cochain complex. `dims[k]` is the dimension in degree
/// `min_degree + k`; `diffs[k]` maps degree `k` to degree `k + 1`.
#[derive(Clone, Debug)]
pub struct WeightBlock {
    pub dims: Vec<usize>,
    pub diffs: Vec<SparseMatrix>,
}

/// Cochain complex (differential of degree +1) graded by weight.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub min_degree: i64,
    pub num_degrees: usize,
    pub blocks: BTreeMap<Weight, WeightBlock>,
}

impl ChainComplex {
    pub fn new(min_degree: i64, num_degrees: usize) -> Self {
        ChainComplex { min_degree, num_degrees, blocks: BTreeMap::new() }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.num_degrees as i64).map(move |k| self.min_degree + k)
    }

    pub fn term_dim(&self, degree: i64) -> usize {
        let k = degree - self.min_degree;
        if k < 0 || k as usize >= self.num_degrees {
            return 0;
        }
        self.blocks.values().map(|b| b.dims[k as usize]).sum()
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.degrees().map(|d| self.term_dim(d)).collect()
    }

    pub fn term_dim_at(&self, weight: &Weight, degree: i64) -> usize {
        let k = degree - self.min_degree;
        match self.blocks.get(weight) {
            Some(b) if k >= 0 && (k as usize) < self.num_degrees => b.dims[k as usize],
            _ => 0,
        }
    }

    /// Exact check that every composite `d_{k+1} d_k` vanishes.
    pub fn check_square_zero(&self) -> Result<()> {
        for b in self.blocks.values() {
            for k in 0..b.diffs.len().saturating_sub(1) {
                if !b.diffs[k + 1].mul(&b.diffs[k]).is_zero() {
                    return Err(Error::NotAComplex(self.min_degree + k as i64));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub degree: i64,
    pub weight: Weight,
    pub dim: u64,
}

/// Nonzero cohomology dimensions per `(degree, weight)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub rows: Vec<CohomologyRow>,
}

impl CohomologyReport {
    pub fn dim(&self, degree: i64) -> u64 {
        self.rows.iter().filter(|r| r.degree == degree).map(|r| r.dim).sum()
    }

    pub fn dims_by_degree(&self, degrees: impl IntoIterator<Item = i64>) -> Vec<u64> {
        degrees.into_iter().map(|d| self.dim(d)).collect()
    }

    pub fn dim_at(&self, degree: i64, weight: &Weight) -> u64 {
        self.rows.iter().filter(|r| r.degree == degree && &r.weight == weight).map(|r| r.dim).sum()
    }

    /// Weights in `degree`, repeated by multiplicity, sorted.
    pub fn weights(&self, degree: i64) -> Vec<Weight> {
        let mut out: Vec<Weight> = self
            .rows
            .iter()
            .filter(|r| r.degree == degree)
            .flat_map(|r| std::iter::repeat_n(r.weight.clone(), r.dim as usize))
            .collect();
        out.sort();
        out
    }

    /// Homological report: `H_k` at weight `-nu` is dual to `H^k` at `nu`,
    /// reported in degree `-k`.
    pub fn dualize(&self) -> CohomologyReport {
        let mut rows: Vec<CohomologyRow> = self
            .rows
            .iter()
            .map(|r| CohomologyRow { degree: -r.degree, weight: r.weight.neg(), dim: r.dim })
            .collect();
        rows.sort();
        CohomologyReport { rows }
    }

    pub fn export_rows(&self, type_name: &str, eta: &Weight) -> Vec<ExportRow> {
        self.rows
            .iter()
            .map(|r| ExportRow {
                r#type: type_name.to_string(),
                eta: eta.clone(),
                degree: r.degree,
                weight: r.weight.clone(),
                dim: r.dim,
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, type_name: &str, eta: &Weight, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["type", "eta", "degree", "weight", "dim"])?;
        for r in self.export_rows(type_name, eta) {
            w.write_record([
                r.r#type,
                r.eta.to_string(),
                r.degree.to_string(),
                r.weight.to_string(),
                r.dim.to_string(),
            ])?;
        }
        w.flush()
    }
}

/// Flat JSON row `{type, eta, degree, weight, dim}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportRow {
    pub r#type: String,
    pub eta: Weight,
    pub degree: i64,
    pub weight: Weight,
    pub dim: u64,
}

/// Coefficients of a Chevalley-Eilenberg complex.
#[derive(Clone, Copy, Debug)]
pub enum Coefficients<'a> {
    Trivial,
    Module(&'a HighestWeightModule),
}

fn sign(parity: usize) -> i64 {
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Position of bit `b` among the set bits of `mask`.
fn position(mask: u32, b: usize) -> usize {
    (mask & ((1u32 << b) - 1)).count_ones() as usize
}

/// `C^k = Lambda^k(n*) (x) V` with
/// `(d w)(x_0..x_k) = sum_i (-1)^i x_i w(..^x_i..) + sum_{i<j} (-1)^{i+j} w([x_i,x_j], ..^x_i..^x_j..)`.
///
/// A basis cochain `eps^S (x) v` has weight `wt(v) - sum_{a in S} alpha_a`.
pub fn ce_complex(alg: &NilpotentAlgebra, coeffs: Coefficients<'_>) -> Result<ChainComplex> {
    let n = alg.dim();
    if n >= 32 {
        return Err(Error::InvalidInput(format!("{n} positive roots exceed the bitmask width")));
    }
    let rank = alg.root_system().rank();
    let (vdim, vweights, ops): (usize, Vec<Weight>, Vec<QMatrix>) = match coeffs {
        Coefficients::Trivial => (1, vec![Weight::zero(rank)], Vec::new()),
        Coefficients::Module(m) => {
            let ops = m.root_operators(alg)?;
            (m.dim(), (0..m.dim()).map(|k| m.basis_weight(k).clone()).collect(), ops)
        }
    };
    // sparse columns of each E_a
    let op_cols: Vec<Vec<Vec<(usize, Q)>>> = ops
        .iter()
        .map(|m| {
            (0..vdim)
                .map(|c| (0..vdim).filter(|&r| !m[(r, c)].is_zero()).map(|r| (r, m[(r, c)].clone())).collect())
                .collect()
        })
        .collect();
    // pairs (a < b) with [e_a, e_b] = N e_c, grouped by c
    let mut pairs_into: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            if let Some((c, v)) = alg.bracket(a, b) {
                pairs_into[c].push((a, b, v));
            }
        }
    }

    let mask_weight = |mask: u32| -> Weight {
        let mut w = Weight::zero(rank);
        for a in 0..n {
            if mask >> a & 1 == 1 {
                w = w.sub_grading(alg.root(a));
            }
        }
        w
    };
    let masks_by_size: Vec<Vec<u32>> = {
        let mut v = vec![Vec::new(); n + 1];
        for mask in 0..(1u32 << n) {
            v[mask.count_ones() as usize].push(mask);
        }
        v
    };
    // basis per (degree, weight): list of (mask, v)
    let mut basis: BTreeMap<Weight, Vec<Vec<(u32, usize)>>> = BTreeMap::new();
    for (k, masks) in masks_by_size.iter().enumerate() {
        for &mask in masks {
            let mw = mask_weight(mask);
            for (v, vw) in vweights.iter().enumerate() {
                let w = mw.add(vw);
                basis.entry(w).or_insert_with(|| vec![Vec::new(); n + 1])[k].push((mask, v));
            }
        }
    }

    let blocks: Vec<(Weight, WeightBlock)> = basis
        .into_par_iter()
        .map(|(w, terms)| {
            let index: Vec<HashMap<(u32, usize), usize>> =
                terms.iter().map(|t| t.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
            let dims: Vec<usize> = terms.iter().map(Vec::len).collect();
            let diffs = (0..n)
                .map(|k| {
                    let mut triples: Vec<(usize, usize, Q)> = Vec::new();
                    for (col, &(mask, v)) in terms[k].iter().enumerate() {
                        // action term
                        for t in 0..n {
                            if mask >> t & 1 == 1 || ops.is_empty() {
                                continue;
                            }
                            let tmask = mask | 1 << t;
                            let s = q(sign(position(tmask, t)));
                            for (u, x) in &op_cols[t][v] {
                                if let Some(&row) = index[k + 1].get(&(tmask, *u)) {
                                    triples.push((row, col, &s * x));
                                }
                            }
                        }
                        // co-bracket term
                        for c in 0..n {
                            if mask >> c & 1 == 0 {
                                continue;
                            }
                            let rest = mask & !(1 << c);
                            let sc = sign(position(mask, c));
                            for &(a, b, nab) in &pairs_into[c] {
                                if rest >> a & 1 == 1 || rest >> b & 1 == 1 {
                                    continue;
                                }
                                let tmask = rest | 1 << a | 1 << b;
                                let (i, j) = (position(tmask, a), position(tmask, b));
                                let val = sign(i + j) * nab * sc;
                                if let Some(&row) = index[k + 1].get(&(tmask, v)) {
                                    triples.push((row, col, q(val)));
                                }
                            }
                        }
                    }
                    SparseMatrix::from_triples(dims[k + 1], dims[k], triples)
                })
                .collect();
            (w, WeightBlock { dims, diffs })
        })
        .collect();

    let cx = ChainComplex { min_degree: 0, num_degrees: n + 1, blocks: blocks.into_iter().collect() };
    cx.check_square_zero()?;
    Ok(cx)
}

/// `dim H^k = dim ker d_k - rank d_{k-1}`, per weight block.
pub fn cohomology(cx: &ChainComplex) -> CohomologyReport {
    let mut rows: Vec<CohomologyRow> = cx
        .blocks
        .par_iter()
        .flat_map_iter(|(w, b)| {
            let ranks: Vec<usize> = b.diffs.iter().map(SparseMatrix::rank).collect();
            let rank_of = |k: usize| ranks.get(k).copied().unwrap_or(0);
            (0..cx.num_degrees)
                .filter_map(|k| {
                    let incoming = if k == 0 { 0 } else { rank_of(k - 1) };
                    let dim = b.dims[k] - rank_of(k) - incoming;
                    (dim > 0).then(|| CohomologyRow { degree: cx.min_degree + k as i64, weight: w.clone(), dim: dim as u64 })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    rows.sort();
    CohomologyReport { rows }
}

/// `{w . eta : l(w) = k}`, sorted.
pub fn kostant_oracle(rs: &RootSystem, eta: &Weight, k: usize) -> Vec<Weight> {
    let mut out: Vec<Weight> = weyl_elements_by_length(rs, k).iter().map(|w| dot_action(w, eta, rs)).collect();
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KostantDegree {
    pub degree: i64,
    pub computed: Vec<Weight>,
    pub predicted: Vec<Weight>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KostantReport {
    pub eta: Weight,
    pub module_dim: usize,
    pub degrees: Vec<KostantDegree>,
    pub multiplicity_free: bool,
    pub pass: bool,
}

/// Compares brute-force `H^k(n, V^eta)` with the dot-orbit prediction in every degree.
pub fn verify_kostant(alg: &NilpotentAlgebra, v: &HighestWeightModule) -> Result<KostantReport> {
    let rs = alg.root_system();
    let cx = ce_complex(alg, Coefficients::Module(v))?;
    let report = cohomology(&cx);
    let degrees: Vec<KostantDegree> = (0..=alg.dim())
        .map(|k| {
            let computed = report.weights(k as i64);
            let predicted = kostant_oracle(rs, v.eta(), k);
            KostantDegree { degree: k as i64, pass: computed == predicted, computed, predicted }
        })
        .collect();
    let multiplicity_free = report.rows.iter().all(|r| r.dim == 1);
    let pass = multiplicity_free && degrees.iter().all(|d| d.pass);
    Ok(KostantReport { eta: v.eta().clone(), module_dim: v.dim(), degrees, multiplicity_free, pass })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CobracketReport {
    pub dim: usize,
    /// Kernel basis in coordinates of the dual basis `{e_alpha^*}`.
    #[serde(with = "crate::linalg::serde_q_vecs")]
    pub basis: Vec<Vec<Q>>,
    pub equals_simple_span: bool,
}

/// `ker(n* -> Lambda^2 n*)` for trivial coefficients.
pub fn cobracket_kernel(alg: &NilpotentAlgebra) -> Result<CobracketReport> {
    let n = alg.dim();
    let cx = ce_complex(alg, Coefficients::Trivial)?;
    if n < 2 {
        let basis = (0..n).map(|a| (0..n).map(|b| q(i64::from(a == b))).collect()).collect();
        return Ok(CobracketReport { dim: n, basis, equals_simple_span: n == alg.root_system().rank() });
    }
    // assemble d_1 on all of C^1; basis of C^1 is e_a^* with a single bit set
    let c2: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() == 2).collect();
    let mut d1 = QMatrix::zeros(c2.len(), n);
    for (w, b) in &cx.blocks {
        // recover which e_a^* and which pairs live in this block from the weights
        let ones: Vec<usize> = (0..n).filter(|&a| alg.root(a).to_weight().neg() == *w).collect();
        let twos: Vec<usize> = c2
            .iter()
            .enumerate()
            .filter(|(_, &m)| {
                let s = (0..n).filter(|a| m >> a & 1 == 1).fold(Weight::zero(w.rank()), |acc, a| acc.sub_grading(alg.root(a)));
                s == *w
            })
            .map(|(i, _)| i)
            .collect();
        debug_assert_eq!(ones.len(), b.dims[1]);
        debug_assert_eq!(twos.len(), b.dims[2]);
        let dense = b.diffs[1].to_dense();
        for (r, &row) in twos.iter().enumerate() {
            for (c, &col) in ones.iter().enumerate() {
                d1[(row, col)] = dense[(r, c)].clone();
            }
        }
    }
    let basis = d1.kernel();
    let rank = alg.root_system().rank();
    let simple_in_kernel = (0..n)
        .filter(|&a| alg.root(a).height() == 1)
        .all(|a| (0..c2.len()).all(|r| d1[(r, a)].is_zero()));
    Ok(CobracketReport { dim: basis.len(), equals_simple_span: basis.len() == rank && simple_in_kernel, basis })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct H2Report {
    pub weights: Vec<Weight>,
    /// Every weight equals `-alpha_i - s_i(alpha_j)` for some `i != j`.
    pub all_of_form: bool,
    pub none_is_root: bool,
    pub pass: bool,
}

pub fn h2_weight_lemma(alg: &NilpotentAlgebra) -> Result<H2Report> {
    let rs = alg.root_system();
    let report = cohomology(&ce_complex(alg, Coefficients::Trivial)?);
    let weights = report.weights(2);
    let n = rs.rank();
    let shapes: Vec<Weight> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| rs.simple_root(i).neg().sub(&rs.reflect_grading(i, &rs.simple_root(j))).to_weight())
        .collect();
    let all_of_form = weights.iter().all(|w| shapes.contains(w));
    let none_is_root = weights.iter().all(|w| w.to_grading().is_none_or(|g| !rs.is_root(&g)));
    Ok(H2Report { pass: all_of_form && none_is_root, weights, all_of_form, none_is_root })
}

/// Alternating sum of term dimensions at `weight`.
pub fn euler_characteristic(cx: &ChainComplex, weight: &Weight) -> i64 {
    cx.degrees().map(|d| sign(d.rem_euclid(2) as usize) * cx.term_dim_at(weight, d) as i64).sum()
}

pub fn report_euler_characteristic(report: &CohomologyReport, weight: &Weight) -> i64 {
    report
        .rows
        .iter()
        .filter(|r| &r.weight == weight)
        .map(|r| sign(r.degree.rem_euclid(2) as usize) * r.dim as i64)
        .sum()
}
