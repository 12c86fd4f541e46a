//! Graded modules over `Sym(W)` and their Tor against the residue field,
//! computed with the Koszul complex `Lambda^k(W) (x) M`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::GradedDims;
use crate::linalg::{QMatrix, SparseMatrix, Q};
use crate::root_data::GradingVector;

/// A graded vector space `W`, one degree per basis vector. The basis vectors
/// are the variables of `Sym(W)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    pub degrees: Vec<GradingVector>,
}

impl GradedSpace {
    pub fn new(degrees: Vec<GradingVector>) -> Result<Self> {
        let rank = degrees.first().map_or(0, GradingVector::rank);
        for d in &degrees {
            if d.rank() != rank || d.is_zero() || !d.in_positive_cone() {
                return Err(Error::InvalidInput(format!("variable degree {d} must be a nonzero point of the positive cone")));
            }
        }
        Ok(GradedSpace { degrees })
    }

    /// `dim` variables, all in degree 1 of a rank-one lattice.
    pub fn standard(dim: usize) -> Self {
        GradedSpace { degrees: vec![GradingVector(vec![1]); dim] }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn lattice_rank(&self) -> usize {
        self.degrees.first().map_or(1, GradingVector::rank)
    }

    pub fn monomial_degree(&self, exponents: &[u32]) -> GradingVector {
        let mut out = GradingVector::zero(self.lattice_rank());
        for (d, &e) in self.degrees.iter().zip(exponents) {
            out = out.add(&d.scale(e as i64));
        }
        out
    }

    /// Exponent vectors of all monomials of degree `delta`.
    pub fn monomials(&self, delta: &GradingVector) -> Vec<Vec<u32>> {
        fn rec(space: &GradedSpace, i: usize, rest: &GradingVector, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == space.dim() {
                if rest.is_zero() {
                    out.push(cur.clone());
                }
                return;
            }
            let mut left = rest.clone();
            let mut e = 0;
            while left.in_positive_cone() {
                cur.push(e);
                rec(space, i + 1, &left, cur, out);
                cur.pop();
                left = left.sub(&space.degrees[i]);
                e += 1;
            }
        }
        let mut out = Vec::new();
        if delta.in_positive_cone() {
            rec(self, 0, delta, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// One term `c * x^exponents * g_generator` of a relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub generator: usize,
    pub exponents: Vec<u32>,
    #[serde(with = "crate::linalg::serde_q")]
    pub coefficient: Q,
}

/// `M = F / N`, with `F` free on `generators` and `N` spanned by `relations`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedModule {
    pub space: GradedSpace,
    pub generators: Vec<GradingVector>,
    pub relations: Vec<Vec<Term>>,
}

impl GradedModule {
    /// Checks that every relation is homogeneous.
    pub fn new(space: GradedSpace, generators: Vec<GradingVector>, relations: Vec<Vec<Term>>) -> Result<Self> {
        let rank = space.lattice_rank();
        for g in &generators {
            if g.rank() != rank || !g.in_positive_cone() {
                return Err(Error::InvalidInput(format!("generator degree {g} must lie in the positive cone")));
            }
        }
        for (r, rel) in relations.iter().enumerate() {
            let mut degree = None;
            for t in rel {
                if t.generator >= generators.len() || t.exponents.len() != space.dim() {
                    return Err(Error::InvalidInput(format!("relation {r} has a malformed term")));
                }
                let d = space.monomial_degree(&t.exponents).add(&generators[t.generator]);
                match &degree {
                    None => degree = Some(d),
                    Some(prev) if *prev != d => {
                        return Err(Error::InvalidInput(format!("relation {r} is not homogeneous: {prev} vs {d}")))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(GradedModule { space, generators, relations })
    }

    pub fn free(space: GradedSpace, generators: Vec<GradingVector>) -> Result<Self> {
        Self::new(space, generators, Vec::new())
    }

    /// `C = Sym(W) / (W)`.
    pub fn residue_field(space: GradedSpace) -> Self {
        let n = space.dim();
        let relations = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                vec![Term { generator: 0, exponents: e, coefficient: Q::one() }]
            })
            .collect();
        let zero = GradingVector::zero(space.lattice_rank());
        GradedModule { space, generators: vec![zero], relations }
    }

    /// `Sym(W) / (f)` for a homogeneous polynomial `f`.
    pub fn cyclic_quotient(space: GradedSpace, f: Vec<(Vec<u32>, Q)>) -> Result<Self> {
        let zero = GradingVector::zero(space.lattice_rank());
        let rel = f.into_iter().map(|(exponents, coefficient)| Term { generator: 0, exponents, coefficient }).collect();
        Self::new(space, vec![zero], vec![rel])
    }

    fn relation_degree(&self, r: usize) -> Option<GradingVector> {
        self.relations[r]
            .first()
            .map(|t| self.space.monomial_degree(&t.exponents).add(&self.generators[t.generator]))
    }
}

/// `F_delta` in the basis `(generator, monomial)`.
#[derive(Clone, Debug)]
pub(crate) struct FreePiece {
    pub basis: Vec<(usize, Vec<u32>)>,
    pub index: HashMap<(usize, Vec<u32>), usize>,
}

pub(crate) fn free_piece(space: &GradedSpace, generators: &[GradingVector], delta: &GradingVector) -> FreePiece {
    let basis: Vec<(usize, Vec<u32>)> = generators
        .iter()
        .enumerate()
        .flat_map(|(j, g)| space.monomials(&delta.sub(g)).into_iter().map(move |m| (j, m)))
        .collect();
    let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    FreePiece { basis, index }
}

/// `M_delta = F_delta / N_delta`: reduced echelon form of `N_delta` and the
/// free columns that index a basis of the quotient.
#[derive(Clone, Debug)]
pub(crate) struct QuotientPiece {
    pub free: FreePiece,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    pub basis_cols: Vec<usize>,
}

impl QuotientPiece {
    pub fn dim(&self) -> usize {
        self.basis_cols.len()
    }

    /// Coordinates in the quotient basis of an element of `F_delta`.
    pub fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        self.basis_cols.iter().map(|&c| v[c].clone()).collect()
    }
}

pub(crate) fn quotient_piece(m: &GradedModule, delta: &GradingVector) -> QuotientPiece {
    let free = free_piece(&m.space, &m.generators, delta);
    let n = free.basis.len();
    let mut spanning: Vec<Vec<Q>> = Vec::new();
    for (r, rel) in m.relations.iter().enumerate() {
        let Some(d) = m.relation_degree(r) else { continue };
        for mono in m.space.monomials(&delta.sub(&d)) {
            let mut v = vec![Q::zero(); n];
            for t in rel {
                let e: Vec<u32> = t.exponents.iter().zip(&mono).map(|(a, b)| a + b).collect();
                v[free.index[&(t.generator, e)]] += &t.coefficient;
            }
            spanning.push(v);
        }
    }
    let (rows, pivots) = if spanning.is_empty() || n == 0 {
        (Vec::new(), Vec::new())
    } else {
        let rref = QMatrix::from_rows(&spanning).rref();
        let rows = (0..rref.pivots.len()).map(|i| rref.matrix.row(i).to_vec()).collect();
        (rows, rref.pivots)
    };
    let basis_cols = (0..n).filter(|c| !pivots.contains(c)).collect();
    QuotientPiece { free, rows, pivots, basis_cols }
}

fn add_exponent(e: &[u32], i: usize) -> Vec<u32> {
    let mut out = e.to_vec();
    out[i] += 1;
    out
}

/// `Tor_k^{Sym W}(C, M)` at every degree of height at most `bound`, from the
/// Koszul complex `d(w_I (x) m) = sum_j (-1)^j w_{I - i_j} (x) x_{i_j} m`.
pub fn sym_koszul_tor(m: &GradedModule, bound: u32) -> Result<GradedDims<GradingVector>> {
    let space = &m.space;
    let n = space.dim();
    if n >= 32 {
        return Err(Error::InvalidInput("too many variables".into()));
    }
    let degrees = GradingVector::cone_up_to(space.lattice_rank(), bound);
    let pieces: HashMap<GradingVector, QuotientPiece> =
        degrees.iter().map(|d| (d.clone(), quotient_piece(m, d))).collect();
    let subset_degree = |mask: u32| {
        (0..n).filter(|i| mask >> i & 1 == 1).fold(GradingVector::zero(space.lattice_rank()), |acc, i| {
            acc.add(&space.degrees[i])
        })
    };

    let mut out = GradedDims::new();
    out.bound = Some(bound);
    for delta in &degrees {
        // blocks[k]: (subset, offset, dim of M_{delta - deg w_I})
        let mut blocks: Vec<Vec<(u32, usize, GradingVector)>> = vec![Vec::new(); n + 1];
        let mut sizes = vec![0usize; n + 1];
        for mask in 0..1u32 << n {
            let rest = delta.sub(&subset_degree(mask));
            if !rest.in_positive_cone() {
                continue;
            }
            let k = mask.count_ones() as usize;
            let dim = pieces[&rest].dim();
            if dim > 0 {
                blocks[k].push((mask, sizes[k], rest));
                sizes[k] += dim;
            }
        }
        let offset: Vec<HashMap<u32, usize>> =
            blocks.iter().map(|b| b.iter().map(|(mask, off, _)| (*mask, *off)).collect()).collect();
        let mut ranks = vec![0usize; n + 2];
        for k in 1..=n {
            let mut triples = Vec::new();
            for (mask, off, rest) in &blocks[k] {
                let src = &pieces[rest];
                for (j, i) in (0..n).filter(|i| mask >> i & 1 == 1).enumerate() {
                    let target_mask = mask & !(1 << i);
                    let Some(&toff) = offset[k - 1].get(&target_mask) else { continue };
                    let tgt = &pieces[&rest.add(&space.degrees[i])];
                    let sign = if j % 2 == 0 { Q::one() } else { -Q::one() };
                    for (col, &bc) in src.basis_cols.iter().enumerate() {
                        let (g, e) = &src.free.basis[bc];
                        let mut v = vec![Q::zero(); tgt.free.basis.len()];
                        v[tgt.free.index[&(*g, add_exponent(e, i))]] = Q::one();
                        for (r, x) in tgt.reduce(v).into_iter().enumerate() {
                            if !x.is_zero() {
                                triples.push((toff + r, off + col, &sign * x));
                            }
                        }
                    }
                }
            }
            ranks[k] = SparseMatrix::from_triples(sizes[k - 1], sizes[k], triples).rank();
        }
        for k in 0..=n {
            let h = sizes[k] - ranks[k] - ranks[k + 1];
            out.add(delta.clone(), k as i64, h as u64);
        }
    }
    Ok(out)
}
