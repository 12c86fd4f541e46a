//! Dimension shadows over a formal curve of genus `g` with a regular torus local
//! system: cohomology of symmetric powers, the factorization algebras
//! `Upsilon`, the deformation algebra `R`, its Hecke modules, and the
//! `GL(2)` specialization.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::koszul_engine::{minimal_resolution_betti, sym_koszul_tor, GradedModule, GradedSpace};
use crate::lie_core::{GradedDims, HighestWeightModule};
use crate::root_data::{GradingVector, RootSystem};
use crate::series::{binomial, HilbertSeries};

/// `h^1` of each root twist; `h^0 = h^2 = 0` throughout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveModel {
    pub genus: Option<u32>,
    pub h1: u64,
    #[serde(default)]
    pub overrides: BTreeMap<GradingVector, u64>,
}

impl CurveModel {
    /// Regular local system on a curve of genus `g >= 1`: `h^1 = 2g - 2`.
    pub fn regular(genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidInput("genus 0 admits no regular model (h1 would be -2)".into()));
        }
        Ok(CurveModel { genus: Some(genus), h1: 2 * genus as u64 - 2, overrides: BTreeMap::new() })
    }

    pub fn with_h1(h1: u64) -> Self {
        CurveModel { genus: None, h1, overrides: BTreeMap::new() }
    }

    pub fn with_override(mut self, root: GradingVector, h1: u64) -> Self {
        self.overrides.insert(root, h1);
        self
    }

    pub fn h1(&self, root: &GradingVector) -> u64 {
        self.overrides.get(root).copied().unwrap_or(self.h1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `H^1` anticommutes: `Lambda^b(H^1)` in degree `b`.
    Symmetric,
    /// Sign-twisted: `Sym^b(H^1)` in degree `b`, normalized degree `b - d`.
    Exterior,
}

fn sym_dim(n: u64, k: u64) -> u64 {
    binomial(n as i64 + k as i64 - 1, k) as u64
}

fn ext_dim(n: u64, k: u64) -> u64 {
    binomial(n as i64, k) as u64
}

/// Cohomology of the `d`-th symmetric power of the curve with coefficients in
/// the `d`-th external power of a sheaf with cohomology dims `h = (h0, h1, h2)`.
///
/// Degrees are the unshifted topological ones; for the exterior flavor the
/// recorded `shift` is `d`. The key is `d`.
pub fn power_cohomology(h: (u64, u64, u64), d: u64, flavor: Flavor) -> GradedDims<u64> {
    let (h0, h1, h2) = h;
    let mut out = GradedDims::new();
    out.shift = match flavor {
        Flavor::Symmetric => 0,
        Flavor::Exterior => d as i64,
    };
    for a in 0..=d {
        for b in 0..=d - a {
            let c = d - a - b;
            let dim = match flavor {
                Flavor::Symmetric => sym_dim(h0, a) * ext_dim(h1, b) * sym_dim(h2, c),
                Flavor::Exterior => ext_dim(h0, a) * sym_dim(h1, b) * ext_dim(h2, c),
            };
            out.add(d, (b + 2 * c) as i64, dim);
        }
    }
    out
}

/// `H(X^lambda, Upsilon^lambda)`: sum over `lambda = sum n_alpha alpha` of
/// `prod dim Sym^{n_alpha}(C^{h1(alpha)})`, all in degree 0.
pub fn upsilon_dims(rs: &RootSystem, curve: &CurveModel, lambda: &GradingVector) -> GradedDims<GradingVector> {
    fn rec(
        roots: &[GradingVector],
        curve: &CurveModel,
        i: usize,
        rest: &GradingVector,
        acc: u64,
        total: &mut u64,
    ) {
        if rest.is_zero() {
            *total += acc;
            return;
        }
        if i == roots.len() {
            return;
        }
        let h1 = curve.h1(&roots[i]);
        let mut left = rest.clone();
        let mut n = 0;
        while left.in_positive_cone() {
            let f = sym_dim(h1, n);
            if f > 0 {
                rec(roots, curve, i + 1, &left, acc * f, total);
            }
            left = left.sub(&roots[i]);
            n += 1;
        }
    }
    let mut total = 0;
    if lambda.in_positive_cone() {
        rec(rs.positive_roots(), curve, 0, lambda, 1, &mut total);
    }
    let mut out = GradedDims::new();
    out.add(lambda.clone(), 0, total);
    out
}

/// `Hilb(R) = prod_alpha (1 - t^alpha)^{-h1(alpha)}`.
pub fn r_hilbert(rs: &RootSystem, curve: &CurveModel, bound: Option<u32>) -> Result<HilbertSeries> {
    let bound = bound.ok_or_else(|| Error::InvalidInput("a truncation bound is required".into()))?;
    let factors: Vec<(GradingVector, i64)> =
        rs.positive_roots().iter().map(|a| (a.clone(), -(curve.h1(a) as i64))).collect();
    HilbertSeries::product_of_powers(rs.rank(), bound, &factors)
}

/// `R(V_x)` as a free `R`-module on a weight basis of `V`: the coefficient at
/// `mu` is the dimension in weight `eta - mu`.
pub fn hecke_hilbert(rs: &RootSystem, curve: &CurveModel, v: &HighestWeightModule, bound: u32) -> Result<HilbertSeries> {
    let r = r_hilbert(rs, curve, Some(bound))?;
    let mut out = HilbertSeries::zero(rs.rank(), bound);
    out.origin = Some(v.eta().clone());
    for k in 0..v.dim() {
        let depth = v
            .eta()
            .difference(v.basis_weight(k))
            .ok_or_else(|| Error::InvalidInput("module weights are not below eta".into()))?;
        for ((mu, q), c) in &r.terms {
            out.add_term(depth.add(mu), *q, *c);
        }
    }
    Ok(out)
}

/// `ch_V` in the same coordinates as [`hecke_hilbert`].
pub fn character_series(rs: &RootSystem, v: &HighestWeightModule, bound: u32) -> HilbertSeries {
    let mut out = HilbertSeries::zero(rs.rank(), bound);
    out.origin = Some(v.eta().clone());
    for s in v.spaces() {
        if let Some(depth) = v.eta().difference(&s.weight) {
            out.add_term(depth, 0, s.dim as i64);
        }
    }
    out
}

/// `{(mu_k, m_k)}` with distinct nonzero `mu_k` and `sum m_k mu_k = lambda`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionOfLambda {
    pub parts: Vec<(GradingVector, u32)>,
}

impl PartitionOfLambda {
    /// Dimension of the stratum: the number of points.
    pub fn size(&self) -> u32 {
        self.parts.iter().map(|(_, m)| m).sum()
    }

    pub fn total(&self, rank: usize) -> GradingVector {
        self.parts.iter().fold(GradingVector::zero(rank), |acc, (mu, m)| acc.add(&mu.scale(*m as i64)))
    }
}

/// All vector partitions of `lambda`; empty for `lambda = 0`.
pub fn strata_partitions(rs: &RootSystem, lambda: &GradingVector) -> Vec<PartitionOfLambda> {
    fn rec(
        cands: &[GradingVector],
        i: usize,
        rest: &GradingVector,
        cur: &mut Vec<(GradingVector, u32)>,
        out: &mut Vec<PartitionOfLambda>,
    ) {
        if rest.is_zero() {
            out.push(PartitionOfLambda { parts: cur.clone() });
            return;
        }
        if i == cands.len() {
            return;
        }
        rec(cands, i + 1, rest, cur, out);
        let mut left = rest.sub(&cands[i]);
        let mut m = 1;
        while left.in_positive_cone() {
            cur.push((cands[i].clone(), m));
            rec(cands, i + 1, &left, cur, out);
            cur.pop();
            left = left.sub(&cands[i]);
            m += 1;
        }
    }
    if lambda.is_zero() || !lambda.in_positive_cone() || lambda.rank() != rs.rank() {
        return Vec::new();
    }
    let cands: Vec<GradingVector> = lambda.box_below().into_iter().filter(|m| !m.is_zero()).rev().collect();
    let mut out = Vec::new();
    rec(&cands, 0, lambda, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionRow {
    pub lambda: GradingVector,
    /// `sum over compositions into m parts of prod upsilon`, for `m = 1, 2, ...`.
    pub by_parts: Vec<i64>,
    pub euler: i64,
    pub closed_form: i64,
    pub product: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalInversionReport {
    pub bound: u32,
    pub rows: Vec<InversionRow>,
    /// `E(t) Hilb(R)(t) = 1` within the bound.
    pub inverse_of_r: bool,
    /// `E(t) = prod (1 - t^alpha)^{h1}` within the bound.
    pub matches_closed_form: bool,
    pub pass: bool,
}

/// `E(t)_lambda = sum_m (-1)^m sum_{lambda_1 + ... + lambda_m = lambda} prod upsilon(lambda_i)`
/// against `Hilb(R)` and against the closed form.
pub fn global_inversion(rs: &RootSystem, curve: &CurveModel, bound: u32) -> Result<GlobalInversionReport> {
    let rank = rs.rank();
    let cone = GradingVector::cone_up_to(rank, bound);
    let upsilon: BTreeMap<GradingVector, i64> = cone
        .par_iter()
        .filter(|l| !l.is_zero())
        .map(|l| (l.clone(), upsilon_dims(rs, curve, l).total() as i64))
        .collect();
    // compositions[m][lambda]
    let mut compositions: Vec<BTreeMap<GradingVector, i64>> =
        vec![BTreeMap::from([(GradingVector::zero(rank), 1)])];
    for m in 1..=bound as usize {
        let mut next = BTreeMap::new();
        for (prev, c) in &compositions[m - 1] {
            for (l, u) in &upsilon {
                let s = prev.add(l);
                if s.height() <= bound as i64 {
                    *next.entry(s).or_insert(0) += c * u;
                }
            }
        }
        compositions.push(next);
    }
    let mut euler = HilbertSeries::zero(rank, bound);
    for (m, comp) in compositions.iter().enumerate() {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        for (l, c) in comp {
            euler.add_term(l.clone(), 0, sign * c);
        }
    }
    let r = r_hilbert(rs, curve, Some(bound))?;
    let product = euler.mul(&r)?;
    let factors: Vec<(GradingVector, i64)> =
        rs.positive_roots().iter().map(|a| (a.clone(), curve.h1(a) as i64)).collect();
    let closed = HilbertSeries::product_of_powers(rank, bound, &factors)?;
    let rows: Vec<InversionRow> = cone
        .iter()
        .map(|l| InversionRow {
            lambda: l.clone(),
            by_parts: compositions[1..].iter().map(|c| c.get(l).copied().unwrap_or(0)).take(l.height() as usize).collect(),
            euler: euler.coefficient(l),
            closed_form: closed.coefficient(l),
            product: product.coefficient(l),
        })
        .collect();
    let inverse_of_r = product.agrees_with(&HilbertSeries::one(rank, bound));
    let matches_closed_form = euler.agrees_with(&closed);
    Ok(GlobalInversionReport { bound, rows, inverse_of_r, matches_closed_form, pass: inverse_of_r && matches_closed_form })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl2Report {
    pub genus: u32,
    pub dim_w: u64,
    /// `dim Lambda^d(W)`, `d = 0..=dim W`.
    pub exterior_dims: Vec<u64>,
    /// Symmetric-flavor cohomology of the `d`-th power, in degree `d`.
    pub power_cohomology: Vec<u64>,
    /// `Tor_d^{Sym W}(C, C)` from the Koszul complex.
    pub koszul_tor: Vec<u64>,
    /// Betti numbers of a minimal free resolution of `C`.
    pub resolution: Vec<u64>,
    pub pass: bool,
}

/// `W = H^1(X, E_2 (x) E_1^{-1})` of dimension `2g - 2`; the Koszul resolution
/// of `C` over `Sym(W)` has terms `Lambda^d(W)`.
pub fn gl2_report(genus: u32, bound: u32) -> Result<Gl2Report> {
    let curve = CurveModel::regular(genus)?;
    let n = curve.h1;
    if (bound as u64) < n {
        return Err(Error::InvalidInput(format!("bound {bound} is below dim W = {n}")));
    }
    let exterior_dims: Vec<u64> = (0..=n).map(|d| ext_dim(n, d)).collect();
    let power: Vec<u64> = (0..=n)
        .map(|d| {
            let pc = power_cohomology((0, n, 0), d, Flavor::Symmetric);
            let off: u64 = pc.entries.iter().filter(|((_, deg), _)| *deg != d as i64).map(|(_, v)| v).sum();
            if off > 0 {
                u64::MAX
            } else {
                pc.get(&d, d as i64)
            }
        })
        .collect();
    let m = GradedModule::residue_field(GradedSpace::standard(n as usize));
    let tor = sym_koszul_tor(&m, bound)?;
    let betti = minimal_resolution_betti(&m, bound);
    let by_k = |g: &GradedDims<GradingVector>| -> Vec<u64> {
        let degrees = g.by_degree();
        (0..=n as i64).map(|k| degrees.get(&k).copied().unwrap_or(0)).collect()
    };
    let koszul_tor = by_k(&tor);
    let resolution = by_k(&betti);
    let linear = tor.entries.keys().all(|(delta, k)| delta.0 == [*k]);
    let pass = power == exterior_dims && koszul_tor == exterior_dims && resolution == exterior_dims && linear;
    Ok(Gl2Report { genus, dim_w: n, exterior_dims, power_cohomology: power, koszul_tor, resolution, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::build_irreducible;
    use proptest::prelude::*;

    fn g(v: &[i64]) -> GradingVector {
        GradingVector(v.to_vec())
    }

    /// Invariants of the swap on `H (x) H` with the Koszul sign, twisted by the
    /// sign character for the exterior flavor.
    fn square_oracle(h: (u64, u64, u64), flavor: Flavor) -> BTreeMap<i64, u64> {
        let degrees: Vec<i64> = [(h.0, 0), (h.1, 1), (h.2, 2)]
            .iter()
            .flat_map(|&(n, d)| std::iter::repeat_n(d, n as usize))
            .collect();
        let twist = match flavor {
            Flavor::Symmetric => 1,
            Flavor::Exterior => -1,
        };
        let mut out = BTreeMap::new();
        for i in 0..degrees.len() {
            for j in i..degrees.len() {
                let sign = twist * if degrees[i] * degrees[j] % 2 == 0 { 1 } else { -1 };
                if i < j || sign == 1 {
                    *out.entry(degrees[i] + degrees[j]).or_insert(0) += 1;
                }
            }
        }
        out
    }

    #[test]
    fn power_cohomology_examples() {
        let s = power_cohomology((0, 2, 0), 2, Flavor::Symmetric);
        assert_eq!(s.by_degree(), BTreeMap::from([(2, 1)]));
        let e = power_cohomology((0, 2, 0), 2, Flavor::Exterior);
        assert_eq!(e.by_degree(), BTreeMap::from([(2, 3)]));
        assert_eq!(e.shift, 2);
        assert_eq!(power_cohomology((3, 1, 4), 0, Flavor::Symmetric).by_degree(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn power_cohomology_matches_square_oracle() {
        for h in [(0, 2, 0), (1, 3, 0), (2, 1, 1), (1, 4, 2)] {
            for flavor in [Flavor::Symmetric, Flavor::Exterior] {
                assert_eq!(power_cohomology(h, 2, flavor).by_degree(), square_oracle(h, flavor), "{h:?} {flavor:?}");
            }
        }
    }

    #[test]
    fn upsilon_examples() {
        let c = CurveModel::regular(2).unwrap();
        let a1 = RootSystem::preset("A1").unwrap();
        assert_eq!(upsilon_dims(&a1, &c, &g(&[0])).total(), 1);
        assert_eq!(upsilon_dims(&a1, &c, &g(&[1])).total(), 2);
        let a2 = RootSystem::preset("A2").unwrap();
        let u = upsilon_dims(&a2, &c, &g(&[1, 1]));
        assert_eq!(u.get(&g(&[1, 1]), 0), 6);
        assert_eq!(u.by_degree().keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn r_hilbert_examples() {
        let c = CurveModel::regular(2).unwrap();
        let a1 = RootSystem::preset("A1").unwrap();
        assert!(r_hilbert(&a1, &c, None).is_err());
        let r = r_hilbert(&a1, &c, Some(6)).unwrap();
        for d in 0..=6 {
            assert_eq!(r.coefficient(&g(&[d])), d + 1);
        }
        let a2 = RootSystem::preset("A2").unwrap();
        assert_eq!(r_hilbert(&a2, &c, Some(3)).unwrap().coefficient(&g(&[1, 1])), 6);
    }

    #[test]
    fn hecke_examples() {
        let c = CurveModel::regular(2).unwrap();
        let a1 = RootSystem::preset("A1").unwrap();
        let v = build_irreducible(&a1, &a1.from_fundamental_ints(&[1])).unwrap();
        let h = hecke_hilbert(&a1, &c, &v, 6).unwrap();
        for d in 0..=6 {
            assert_eq!(h.coefficient(&g(&[d])), 2 * d + 1);
        }
        let triv = build_irreducible(&a1, &a1.from_fundamental_ints(&[0])).unwrap();
        assert!(hecke_hilbert(&a1, &c, &triv, 6).unwrap().agrees_with(&r_hilbert(&a1, &c, Some(6)).unwrap()));

        let a2 = RootSystem::preset("A2").unwrap();
        let adj = build_irreducible(&a2, &a2.from_fundamental_ints(&[1, 1])).unwrap();
        let h = hecke_hilbert(&a2, &c, &adj, 4).unwrap();
        let expected = character_series(&a2, &adj, 4).mul(&r_hilbert(&a2, &c, Some(4)).unwrap()).unwrap();
        assert!(h.agrees_with(&expected));
        // weight 0 is at depth theta; V has theta at depth 0, the simple roots at
        // depths alpha_1, alpha_2, and 0 with multiplicity 2 at depth theta
        let r = |x: i64, y: i64| r_hilbert(&a2, &c, Some(4)).unwrap().coefficient(&g(&[x, y]));
        assert_eq!(h.coefficient(&g(&[1, 1])), r(1, 1) + r(1, 0) + r(0, 1) + 2 * r(0, 0));
    }

    #[test]
    fn degenerate_genus_one() {
        let c = CurveModel::regular(1).unwrap();
        let a2 = RootSystem::preset("A2").unwrap();
        assert!(r_hilbert(&a2, &c, Some(5)).unwrap().agrees_with(&HilbertSeries::one(2, 5)));
        let v = build_irreducible(&a2, &a2.from_fundamental_ints(&[1, 0])).unwrap();
        assert!(hecke_hilbert(&a2, &c, &v, 5).unwrap().agrees_with(&character_series(&a2, &v, 5)));
        assert!(CurveModel::regular(0).is_err());
    }

    #[test]
    fn strata_examples() {
        let a1 = RootSystem::preset("A1").unwrap();
        assert!(strata_partitions(&a1, &g(&[0])).is_empty());
        let p = strata_partitions(&a1, &g(&[1]));
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].size(), 1);
        let p = strata_partitions(&a1, &g(&[2]));
        let mut sizes: Vec<u32> = p.iter().map(PartitionOfLambda::size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
        let a2 = RootSystem::preset("A2").unwrap();
        let p = strata_partitions(&a2, &g(&[1, 1]));
        assert_eq!(p.len(), 2);
        assert!(p.contains(&PartitionOfLambda { parts: vec![(g(&[1, 1]), 1)] }));
    }

    #[test]
    fn strata_generating_function() {
        let a2 = RootSystem::preset("A2").unwrap();
        let bound = 6;
        let factors: Vec<(GradingVector, i64)> =
            GradingVector::cone_up_to(2, bound).into_iter().skip(1).map(|m| (m, -1)).collect();
        let gf = HilbertSeries::product_of_powers(2, bound, &factors).unwrap();
        for l in GradingVector::cone_up_to(2, bound).into_iter().skip(1) {
            let parts = strata_partitions(&a2, &l);
            assert_eq!(parts.len() as i64, gf.coefficient(&l), "{l}");
            let mut dedup = parts.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), parts.len());
            assert!(parts.iter().all(|p| p.total(2) == l));
        }
    }

    #[test]
    fn global_inversion_examples() {
        let c = CurveModel::regular(2).unwrap();
        let a1 = RootSystem::preset("A1").unwrap();
        let r = global_inversion(&a1, &c, 6).unwrap();
        assert!(r.pass);
        let two = r.rows.iter().find(|row| row.lambda == g(&[2])).unwrap();
        assert_eq!(two.by_parts, vec![3, 4]);
        assert_eq!(two.euler, 1);
        assert_eq!(r.rows[1].euler, -2);
        let a2 = RootSystem::preset("A2").unwrap();
        let r = global_inversion(&a2, &c, 4).unwrap();
        assert!(r.pass);
        assert!(r.rows.iter().all(|row| row.product == i64::from(row.lambda.is_zero())));
    }

    #[test]
    fn gl2_examples() {
        assert!(gl2_report(0, 4).is_err());
        let r = gl2_report(1, 0).unwrap();
        assert_eq!(r.exterior_dims, vec![1]);
        assert!(r.pass);
        let r = gl2_report(2, 2).unwrap();
        assert_eq!(r.exterior_dims, vec![1, 2, 1]);
        assert!(r.pass);
        let r = gl2_report(3, 4).unwrap();
        assert_eq!(r.exterior_dims, vec![1, 4, 6, 4, 1]);
        assert!(r.pass, "{r:?}");
    }

    proptest! {
        #[test]
        fn flavors_exchange_binomials(n in 0u64..7, d in 0u64..7) {
            let s = power_cohomology((0, n, 0), d, Flavor::Symmetric);
            let e = power_cohomology((0, n, 0), d, Flavor::Exterior);
            prop_assert_eq!(s.get(&d, d as i64), ext_dim(n, d));
            prop_assert_eq!(e.get(&d, d as i64), sym_dim(n, d));
            prop_assert_eq!(s.total(), s.get(&d, d as i64));
        }

        #[test]
        fn upsilon_matches_r_hilbert(genus in 1u32..4, a in 0i64..4, b in 0i64..4) {
            let rs = RootSystem::preset("B2").unwrap();
            let c = CurveModel::regular(genus).unwrap();
            let r = r_hilbert(&rs, &c, Some(8)).unwrap();
            let l = g(&[a, b]);
            prop_assert_eq!(upsilon_dims(&rs, &c, &l).total() as i64, r.coefficient(&l));
        }

        #[test]
        fn per_root_override_changes_only_its_factor(h in 0u64..4, d in 0i64..5) {
            let a2 = RootSystem::preset("A2").unwrap();
            let c = CurveModel::with_h1(0).with_override(g(&[1, 1]), h);
            let r = r_hilbert(&a2, &c, Some(8)).unwrap();
            prop_assert_eq!(r.coefficient(&g(&[d, d])), sym_dim(h, d as u64) as i64);
            prop_assert_eq!(upsilon_dims(&a2, &c, &g(&[d, d])).total(), sym_dim(h, d as u64));
        }
    }
}
