//! Finite-dimensional irreducible modules `V^eta`.
//!
//! `V^eta` is the quotient of the Verma module by the radical of its
//! contravariant form. The radical is computed one weight space at a time,
//! from the top down: below the highest weight, a vector lies in the radical
//! exactly when every `e_j` sends it into the radical one level up. So a weight
//! space `V_nu` is the span of the candidates `f_i b` (`b` running over a basis
//! of `V_{nu + alpha_i}`) modulo the kernel of `v -> (e_j v)_j`, and
//! `e_j f_i b = f_i e_j b + delta_ij <nu + alpha_i, alpha_i^vee> b` only needs
//! operators already built. The basis of `V_nu` is the first maximal
//! independent set of candidates, in order of `(i, b)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::algebra::{check_bracket_compatible, extend_to_positive_roots, NilpotentAlgebra};
use crate::lie_core::GradedDims;
use crate::linalg::{independent_subset, q, QMatrix, Q};
use crate::root_data::{CartanMatrix, RootSystem, Weight};

#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub weight: Weight,
    /// Height of `eta - weight`.
    pub depth: i64,
    pub dim: usize,
    /// First index of this space in the global basis.
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct HighestWeightModule {
    eta: Weight,
    cartan: CartanMatrix,
    spaces: Vec<WeightSpace>,
    index: HashMap<Weight, usize>,
    dim: usize,
    e: Vec<QMatrix>,
    f: Vec<QMatrix>,
    h: Vec<QMatrix>,
}

type Blocks = HashMap<(usize, usize), QMatrix>;

pub fn build_irreducible(rs: &RootSystem, eta: &Weight) -> Result<HighestWeightModule> {
    if eta.rank() != rs.rank() {
        return Err(Error::DimensionMismatch(format!("weight of rank {} for rank {}", eta.rank(), rs.rank())));
    }
    if !rs.is_dominant_integral(eta) {
        return Err(Error::NotDominant(eta.to_string()));
    }
    let n = rs.rank();
    let mut spaces: Vec<(Weight, i64, usize)> = vec![(eta.clone(), 0, 1)];
    let mut index: HashMap<Weight, usize> = HashMap::from([(eta.clone(), 0)]);
    // e_blocks[(j, s)] : V_s -> V_{s + alpha_j};  f_blocks[(i, s)] : V_s -> V_{s - alpha_i}
    let mut e_blocks: Blocks = HashMap::new();
    let mut f_blocks: Blocks = HashMap::new();
    let mut level: Vec<usize> = vec![0];
    let mut depth = 0;

    while !level.is_empty() {
        depth += 1;
        let targets: BTreeSet<Weight> = level
            .iter()
            .flat_map(|&s| (0..n).map(move |i| (s, i)))
            .map(|(s, i)| spaces[s].0.sub_grading(&rs.simple_root(i)))
            .collect();
        let mut next = Vec::new();
        for nu in targets {
            // spaces directly above nu
            let ups: Vec<(usize, usize)> = (0..n)
                .filter_map(|j| index.get(&nu.add_grading(&rs.simple_root(j))).map(|&s| (j, s)))
                .collect();
            let mut offsets = Vec::with_capacity(ups.len());
            let mut total = 0;
            for &(_, s) in &ups {
                offsets.push(total);
                total += spaces[s].2;
            }
            let mut cands: Vec<(usize, usize, usize)> = Vec::new(); // (i, source space, b)
            let mut images: Vec<Vec<Q>> = Vec::new();
            for &(i, si) in &ups {
                for b in 0..spaces[si].2 {
                    let mut img = vec![Q::zero(); total];
                    for (slot, &(j, sj)) in ups.iter().enumerate() {
                        let off = offsets[slot];
                        if i == j {
                            img[off + b] += rs.pairing_simple(&spaces[si].0, i);
                        }
                        // f_i e_j b, through V_{nu + alpha_i + alpha_j}
                        if let Some(ej) = e_blocks.get(&(j, si)) {
                            let t = index[&spaces[si].0.add_grading(&rs.simple_root(j))];
                            if let Some(fi) = f_blocks.get(&(i, t)) {
                                let ejb = ej.column(b);
                                let v = fi.mul_vec(&ejb);
                                for (r, x) in v.into_iter().enumerate() {
                                    img[off + r] += x;
                                }
                            }
                            debug_assert_eq!(
                                spaces[t].0.sub_grading(&rs.simple_root(i)),
                                spaces[sj].0,
                                "f_i e_j lands in V_(nu + alpha_j)"
                            );
                        }
                    }
                    cands.push((i, si, b));
                    images.push(img);
                }
            }
            let (chosen, coords) = independent_subset(&images, total);
            if chosen.is_empty() {
                continue;
            }
            let dim = chosen.len();
            let sn = spaces.len();
            spaces.push((nu.clone(), depth, dim));
            index.insert(nu, sn);
            next.push(sn);
            for (slot, &(j, sj)) in ups.iter().enumerate() {
                let mut m = QMatrix::zeros(spaces[sj].2, dim);
                for (col, &c) in chosen.iter().enumerate() {
                    for r in 0..spaces[sj].2 {
                        m[(r, col)] = images[c][offsets[slot] + r].clone();
                    }
                }
                if !m.is_zero() {
                    e_blocks.insert((j, sn), m);
                }
            }
            for &(i, si) in &ups {
                let mut m = QMatrix::zeros(dim, spaces[si].2);
                for (k, &(ci, cs, b)) in cands.iter().enumerate() {
                    if ci == i && cs == si {
                        for r in 0..dim {
                            m[(r, b)] = coords[k][r].clone();
                        }
                    }
                }
                if !m.is_zero() {
                    f_blocks.insert((i, si), m);
                }
            }
        }
        level = next;
    }

    let mut offset = 0;
    let spaces: Vec<WeightSpace> = spaces
        .into_iter()
        .map(|(weight, depth, dim)| {
            let s = WeightSpace { weight, depth, dim, offset };
            offset += dim;
            s
        })
        .collect();
    let dim = offset;
    let assemble = |blocks: &Blocks, i: usize, up: bool| {
        let mut m = QMatrix::zeros(dim, dim);
        for (s, src) in spaces.iter().enumerate() {
            let Some(b) = blocks.get(&(i, s)) else { continue };
            let tw = if up { src.weight.add_grading(&rs.simple_root(i)) } else { src.weight.sub_grading(&rs.simple_root(i)) };
            let dst = &spaces[index[&tw]];
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m[(dst.offset + r, src.offset + c)] = b[(r, c)].clone();
                }
            }
        }
        m
    };
    let e = (0..n).map(|i| assemble(&e_blocks, i, true)).collect();
    let f = (0..n).map(|i| assemble(&f_blocks, i, false)).collect();
    let h = (0..n)
        .map(|i| {
            let mut m = QMatrix::zeros(dim, dim);
            for s in &spaces {
                let p = rs.pairing_simple(&s.weight, i);
                for k in 0..s.dim {
                    m[(s.offset + k, s.offset + k)] = p.clone();
                }
            }
            m
        })
        .collect();

    let module = HighestWeightModule { eta: eta.clone(), cartan: rs.cartan().clone(), spaces, index, dim, e, f, h };
    let expected = rs.weyl_dimension(eta);
    if q(dim as i64) != expected {
        return Err(Error::DimensionMismatch(format!("V^{eta} built with dim {dim}, Weyl formula gives {expected}")));
    }
    module.verify_relations()?;
    Ok(module)
}

impl HighestWeightModule {
    pub fn eta(&self) -> &Weight {
        &self.eta
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn spaces(&self) -> &[WeightSpace] {
        &self.spaces
    }

    pub fn space(&self, w: &Weight) -> Option<&WeightSpace> {
        self.index.get(w).map(|&s| &self.spaces[s])
    }

    pub fn multiplicity(&self, w: &Weight) -> usize {
        self.space(w).map_or(0, |s| s.dim)
    }

    /// Weight of global basis vector `k`.
    pub fn basis_weight(&self, k: usize) -> &Weight {
        let s = self.spaces.partition_point(|s| s.offset + s.dim <= k);
        &self.spaces[s].weight
    }

    pub fn e(&self, i: usize) -> &QMatrix {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &QMatrix {
        &self.f[i]
    }

    pub fn h(&self, i: usize) -> &QMatrix {
        &self.h[i]
    }

    /// `[h_i, e_j] = a_ij e_j`, `[h_i, f_j] = -a_ij f_j`, `[e_i, f_j] = delta_ij h_i`.
    pub fn verify_relations(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let a = q(self.cartan.entry(i, j));
                let ok = self.h[i].commutator(&self.e[j]) == self.e[j].scale(&a)
                    && self.h[i].commutator(&self.f[j]) == self.f[j].scale(&-a)
                    && self.e[i].commutator(&self.f[j])
                        == if i == j { self.h[i].clone() } else { QMatrix::zeros(self.dim, self.dim) };
                if !ok {
                    return Err(Error::BracketIncompatible(i, j));
                }
            }
        }
        Ok(())
    }

    /// Operators `E_alpha` for the basis of `alg`, in the algebra's basis order.
    /// Compatibility with the structure constants is checked, not assumed.
    pub fn root_operators(&self, alg: &NilpotentAlgebra) -> Result<Vec<QMatrix>> {
        let canonical = extend_to_positive_roots(alg.root_system(), &self.e);
        check_bracket_compatible(alg, &canonical)?;
        Ok((0..alg.dim()).map(|k| canonical[alg.canonical_index(k)].clone()).collect())
    }

    /// Weight spaces listed in a linear extension of the dominance order,
    /// lowest first.
    pub fn filtration_order(&self) -> Vec<&WeightSpace> {
        let mut v: Vec<&WeightSpace> = self.spaces.iter().collect();
        v.sort_by(|a, b| b.depth.cmp(&a.depth).then_with(|| a.weight.cmp(&b.weight)));
        v
    }

    /// Whether each `e_i` maps every filtration step strictly upward.
    pub fn filtration_certified(&self) -> bool {
        let order = self.filtration_order();
        let pos: HashMap<&Weight, usize> = order.iter().enumerate().map(|(p, s)| (&s.weight, p)).collect();
        let step_of = |k: usize| pos[self.basis_weight(k)];
        self.e.iter().all(|e| {
            (0..self.dim).all(|r| (0..self.dim).all(|c| e[(r, c)].is_zero() || step_of(r) > step_of(c)))
        })
    }

    pub fn export(&self) -> Result<ModuleExport> {
        let sparse = |m: &QMatrix| -> Result<Vec<(usize, usize, i64, i64)>> {
            let mut out = Vec::new();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let v = &m[(r, c)];
                    if v.is_zero() {
                        continue;
                    }
                    let num = v.numer().to_i64();
                    let den = v.denom().to_i64();
                    match (num, den) {
                        (Some(a), Some(b)) => out.push((r, c, a, b)),
                        _ => return Err(Error::InvalidInput(format!("entry {v} does not fit in i64"))),
                    }
                }
            }
            Ok(out)
        };
        let ops = |ms: &[QMatrix]| ms.iter().map(sparse).collect::<Result<Vec<_>>>();
        Ok(ModuleExport {
            eta: self.eta.clone(),
            dim: self.dim,
            weights: self
                .spaces
                .iter()
                .map(|s| ExportedWeight { weight: s.weight.clone(), multiplicity: s.dim, offset: s.offset })
                .collect(),
            e: ops(&self.e)?,
            f: ops(&self.f)?,
            h: ops(&self.h)?,
        })
    }
}

/// JSON form of a module. Operators are lists of `(row, col, numerator,
/// denominator)` in the global basis, whose blocks follow `weights`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleExport {
    pub eta: Weight,
    pub dim: usize,
    pub weights: Vec<ExportedWeight>,
    pub e: Vec<Vec<(usize, usize, i64, i64)>>,
    pub f: Vec<Vec<(usize, usize, i64, i64)>>,
    pub h: Vec<Vec<(usize, usize, i64, i64)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExportedWeight {
    pub weight: Weight,
    pub multiplicity: usize,
    pub offset: usize,
}

/// Weight multiplicities, `nu -> dim V(nu)`, all in degree 0.
pub fn character(v: &HighestWeightModule) -> GradedDims<Weight> {
    let mut entries = BTreeMap::new();
    for s in &v.spaces {
        entries.insert((s.weight.clone(), 0), s.dim as u64);
    }
    GradedDims { entries, bound: None, shift: 0 }
}

/// The canonical filtration by weights, lowest first, with dimensions.
pub fn bmodule_filtration(v: &HighestWeightModule) -> Vec<(Weight, usize)> {
    v.filtration_order().into_iter().map(|s| (s.weight.clone(), s.dim)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::chevalley_constants;
    use crate::root_data::GradingVector;

    fn module(name: &str, coords: &[i64]) -> (RootSystem, HighestWeightModule) {
        let rs = RootSystem::preset(name).unwrap();
        let eta = rs.from_fundamental_ints(coords);
        let v = build_irreducible(&rs, &eta).unwrap();
        (rs, v)
    }

    /// Freudenthal's recursion, written independently of the construction:
    /// `((L+r,L+r) - (m+r,m+r)) mult(m) = 2 sum_{a>0} sum_{k>=1} (m+ka, a) mult(m+ka)`.
    fn freudenthal(rs: &RootSystem, eta: &Weight) -> BTreeMap<Weight, u64> {
        let mut mult: BTreeMap<Weight, Q> = BTreeMap::new();
        mult.insert(eta.clone(), q(1));
        let top = rs.inner(&eta.add(rs.rho()), &eta.add(rs.rho()));
        let max_depth: i64 = {
            let low = rs.longest_element().apply(eta);
            eta.difference(&low).unwrap().height()
        };
        for d in 1..=max_depth {
            for mu in GradingVector::cone_at_height(rs.rank(), d) {
                let m = eta.sub_grading(&mu);
                let denom = &top - rs.inner(&m.add(rs.rho()), &m.add(rs.rho()));
                if denom.is_zero() {
                    continue;
                }
                let mut acc = Q::zero();
                for a in rs.positive_roots() {
                    let aw = a.to_weight();
                    for k in 1..=d {
                        let up = m.add_grading(&a.scale(k));
                        if let Some(c) = mult.get(&up) {
                            acc += rs.inner(&up, &aw) * c;
                        }
                    }
                }
                let val = q(2) * acc / denom;
                if !val.is_zero() {
                    mult.insert(m, val);
                }
            }
        }
        mult.into_iter().map(|(w, c)| (w, c.to_integer().to_u64().unwrap())).collect()
    }

    #[test]
    fn trivial_module() {
        let (rs, v) = module("A2", &[0, 0]);
        assert_eq!(v.dim(), 1);
        assert_eq!(character(&v).entries, BTreeMap::from([((Weight::zero(2), 0), 1)]));
        assert_eq!(bmodule_filtration(&v), vec![(Weight::zero(2), 1)]);
        assert!(v.root_operators(&chevalley_constants(&rs).unwrap()).unwrap().iter().all(QMatrix::is_zero));
    }

    #[test]
    fn sl2_modules_have_dimension_m_plus_one() {
        for m in 0..7 {
            let (_, v) = module("A1", &[m]);
            assert_eq!(v.dim(), m as usize + 1);
        }
    }

    #[test]
    fn sl2_filtration_of_standard() {
        let (rs, v) = module("A1", &[1]);
        let omega = rs.from_fundamental_ints(&[1]);
        let low = omega.sub_grading(&rs.simple_root(0));
        assert_eq!(bmodule_filtration(&v), vec![(low, 1), (omega, 1)]);
        assert!(v.filtration_certified());
        assert!(!v.e(0).is_zero());
    }

    #[test]
    fn a2_standard_and_adjoint() {
        let (_, std) = module("A2", &[1, 0]);
        let ch = character(&std);
        assert_eq!(ch.entries.len(), 3);
        assert!(ch.entries.values().all(|&m| m == 1));

        let (_, adj) = module("A2", &[1, 1]);
        assert_eq!(adj.dim(), 8);
        assert_eq!(adj.multiplicity(&Weight::zero(2)), 2);
        let ch = character(&adj);
        assert_eq!(ch.entries.values().filter(|&&m| m == 1).count(), 6);
        let filt = bmodule_filtration(&adj);
        assert_eq!(filt.len(), 7);
        assert_eq!(filt.iter().map(|(_, d)| d).sum::<usize>(), 8);
        assert!(adj.filtration_certified());
    }

    #[test]
    fn multiplicities_match_freudenthal() {
        for (name, coords) in [
            ("A2", vec![2, 1]),
            ("A2", vec![1, 1]),
            ("B2", vec![1, 1]),
            ("B2", vec![2, 0]),
            ("G2", vec![1, 0]),
            ("G2", vec![0, 1]),
            ("A3", vec![1, 0, 1]),
            ("B3", vec![0, 0, 1]),
        ] {
            let (rs, v) = module(name, &coords);
            let expected = freudenthal(&rs, v.eta());
            let got: BTreeMap<Weight, u64> = v.spaces().iter().map(|s| (s.weight.clone(), s.dim as u64)).collect();
            assert_eq!(got, expected, "{name} {coords:?}");
        }
    }

    #[test]
    fn character_is_weyl_invariant() {
        for (name, coords) in [("B2", vec![1, 2]), ("G2", vec![1, 1]), ("A3", vec![0, 1, 1])] {
            let (rs, v) = module(name, &coords);
            for s in v.spaces() {
                for w in rs.weyl_group() {
                    assert_eq!(v.multiplicity(&w.apply(&s.weight)), s.dim, "{name}");
                }
            }
        }
    }

    #[test]
    fn sl2_strings_match_pairings() {
        let (rs, v) = module("B2", &[1, 1]);
        for i in 0..rs.rank() {
            // on each weight vector h_i acts by <nu, alpha_i^vee>, e_i raises it by 2
            for s in v.spaces() {
                let p = rs.pairing_simple(&s.weight, i);
                let up = s.weight.add_grading(&rs.simple_root(i));
                if v.space(&up).is_some() {
                    assert_eq!(rs.pairing_simple(&up, i), &p + q(2));
                }
                // the top of an i-string has nonnegative pairing
                if v.space(&up).is_none() {
                    assert!(p >= Q::zero());
                }
            }
        }
    }

    #[test]
    fn root_operators_are_compatible() {
        for (name, coords) in [("A2", vec![1, 1]), ("B2", vec![1, 0]), ("G2", vec![1, 0])] {
            let (rs, v) = module(name, &coords);
            let alg = chevalley_constants(&rs).unwrap();
            let ops = v.root_operators(&alg).unwrap();
            assert_eq!(ops.len(), alg.dim());
            let perm: Vec<usize> = (0..alg.dim()).rev().collect();
            let p = alg.permuted(&perm).unwrap();
            let pops = v.root_operators(&p).unwrap();
            assert_eq!(pops[0], ops[alg.dim() - 1]);
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let rs = RootSystem::preset("A2").unwrap();
        assert!(matches!(build_irreducible(&rs, &rs.from_fundamental_ints(&[-1, 0])), Err(Error::NotDominant(_))));
        let half = rs.from_fundamental(&[crate::linalg::q_frac(1, 2), q(0)]);
        assert!(matches!(build_irreducible(&rs, &half), Err(Error::NotDominant(_))));
    }

    #[test]
    fn export_round_trips_through_json() {
        let (_, v) = module("A2", &[1, 0]);
        let ex = v.export().unwrap();
        let json = serde_json::to_string(&ex).unwrap();
        let back: ModuleExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ex);
        assert_eq!(back.weights.iter().map(|w| w.multiplicity).sum::<usize>(), 3);
    }
}
