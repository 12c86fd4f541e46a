//! Root systems of finite type, built from a Cartan matrix.
//!
//! Conventions: `a[i][j] = <alpha_j, alpha_i^vee>`, so row `i` of the Cartan
//! matrix pairs the coroot `alpha_i^vee` against the simple roots. Weights are
//! stored in simple-root coordinates; the pairing with `alpha_i^vee` is row `i`
//! of `A * c`.
//!
//! Positive roots are ordered by height, then by coefficient vector in
//! decreasing lexicographic order, so the simple roots come first in index
//! order. Every basis downstream (exterior powers, PBW monomials, Chevalley
//! signs) is indexed by this order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};

/// Upper bound on the number of positive roots; a safety net for matrices that
/// pass the minor test but are not symmetrizable.
const MAX_POSITIVE_ROOTS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for CartanMatrix {
    type Error = Error;
    fn try_from(entries: Vec<Vec<i64>>) -> Result<Self> {
        CartanMatrix::new(entries)
    }
}

impl From<CartanMatrix> for Vec<Vec<i64>> {
    fn from(c: CartanMatrix) -> Self {
        c.entries
    }
}

impl CartanMatrix {
    pub const PRESETS: [&'static str; 8] = ["A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3"];

    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry ({i},{i}) is {}, expected 2", row[i])));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if a > 0 {
                    return Err(Error::InvalidCartan(format!("off-diagonal entry ({i},{j}) = {a} is positive")));
                }
                if (a == 0) != (entries[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!("entries ({i},{j}) and ({j},{i}) are not both zero")));
                }
            }
        }
        let m = CartanMatrix { entries };
        m.check_finite_type()?;
        m.root_lengths()?;
        Ok(m)
    }

    pub fn preset(name: &str) -> Result<Self> {
        let e: Vec<Vec<i64>> = match name.to_ascii_uppercase().as_str() {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "B2" => vec![vec![2, -1], vec![-2, 2]],
            "C2" => vec![vec![2, -2], vec![-1, 2]],
            "G2" => vec![vec![2, -1], vec![-3, 2]],
            "B3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            "C3" => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
            _ => return Err(Error::UnknownPreset(name.to_string())),
        };
        CartanMatrix::new(e)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_i64_rows(&self.entries)
    }

    /// Relabels simple roots: new index `k` is old index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.rank();
        if perm.len() != n || perm.iter().collect::<HashSet<_>>().len() != n || perm.iter().any(|&p| p >= n) {
            return Err(Error::InvalidInput(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let e = (0..n).map(|i| (0..n).map(|j| self.entries[perm[i]][perm[j]]).collect()).collect();
        CartanMatrix::new(e)
    }

    fn check_finite_type(&self) -> Result<()> {
        let n = self.rank();
        let full = self.to_qmatrix();
        for size in 1..=n {
            for idx in (0..n).combinations(size) {
                let mut sub = QMatrix::zeros(size, size);
                for (a, &i) in idx.iter().enumerate() {
                    for (b, &j) in idx.iter().enumerate() {
                        sub[(a, b)] = full[(i, j)].clone();
                    }
                }
                let d = sub.det();
                if d <= Q::zero() {
                    return Err(Error::NotFiniteType { indices: idx, value: d.to_string() });
                }
            }
        }
        Ok(())
    }

    /// Squared lengths `l_i = (alpha_i, alpha_i)` with `a[i][j] * l_i` symmetric.
    /// Each component is seeded with length 2 at its first index; only ratios matter.
    fn root_lengths(&self) -> Result<Vec<Q>> {
        let n = self.rank();
        let mut len: Vec<Option<Q>> = vec![None; n];
        for start in 0..n {
            if len[start].is_some() {
                continue;
            }
            len[start] = Some(q(2));
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let li = len[i].clone().unwrap();
                for j in 0..n {
                    if i == j || self.entries[i][j] == 0 {
                        continue;
                    }
                    // a_ij l_i = a_ji l_j
                    let lj = &li * q(self.entries[i][j]) / q(self.entries[j][i]);
                    match &len[j] {
                        Some(existing) if *existing != lj => {
                            return Err(Error::InvalidCartan("matrix is not symmetrizable".into()))
                        }
                        Some(_) => {}
                        None => {
                            len[j] = Some(lj);
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
        Ok(len.into_iter().map(Option::unwrap).collect())
    }
}

/// A point of the root lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradingVector(pub Vec<i64>);

impl GradingVector {
    pub fn zero(rank: usize) -> Self {
        GradingVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        GradingVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|lambda|`: the sum of the coefficients.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn in_positive_cone(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        GradingVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        GradingVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        GradingVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn to_weight(&self) -> Weight {
        Weight(self.0.iter().map(|&c| q(c)).collect())
    }

    /// All points of the positive cone with `|lambda| <= bound`, ordered by
    /// height and then lexicographically.
    pub fn cone_up_to(rank: usize, bound: u32) -> Vec<GradingVector> {
        let mut out = Vec::new();
        for h in 0..=bound as i64 {
            out.extend(Self::cone_at_height(rank, h));
        }
        out
    }

    pub fn cone_at_height(rank: usize, h: i64) -> Vec<GradingVector> {
        fn rec(rank: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<GradingVector>) {
            if cur.len() + 1 == rank {
                cur.push(left);
                out.push(GradingVector(cur.clone()));
                cur.pop();
                return;
            }
            for c in (0..=left).rev() {
                cur.push(c);
                rec(rank, left - c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if h < 0 {
            return out;
        }
        if rank == 0 {
            if h == 0 {
                out.push(GradingVector(Vec::new()));
            }
            return out;
        }
        rec(rank, h, &mut Vec::new(), &mut out);
        out
    }

    /// Every `mu` with `0 <= mu <= self` componentwise.
    pub fn box_below(&self) -> Vec<GradingVector> {
        self.0
            .iter()
            .map(|&c| 0..=c.max(0))
            .multi_cartesian_product()
            .map(GradingVector)
            .collect()
    }
}

impl fmt::Display for GradingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

/// A weight with exact rational coordinates over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn add_grading(&self, g: &GradingVector) -> Weight {
        Weight(self.0.iter().zip(&g.0).map(|(a, &b)| a + q(b)).collect())
    }

    pub fn sub_grading(&self, g: &GradingVector) -> Weight {
        Weight(self.0.iter().zip(&g.0).map(|(a, &b)| a - q(b)).collect())
    }

    /// The lattice vector, if every coordinate is an integer.
    pub fn to_grading(&self) -> Option<GradingVector> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| i64::try_from(c.to_integer()).ok()).flatten())
            .collect::<Option<Vec<_>>>()
            .map(GradingVector)
    }

    /// `(self - other)` as a lattice vector, if integral.
    pub fn difference(&self, other: &Weight) -> Option<GradingVector> {
        self.sub(other).to_grading()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<Q>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Weight)
    }
}

/// An element of the Weyl group, stored by its integer action on simple-root
/// coordinates together with a reduced word certifying it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// `word = [i1, ..., ik]` means `s_{i1} s_{i2} ... s_{ik}`.
    pub word: Vec<usize>,
    /// Row-major, `action[r][c]`; applied to column vectors.
    pub action: Vec<Vec<i64>>,
    pub length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let action = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        WeylElement { word: Vec::new(), action, length: 0 }
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(
            self.action
                .iter()
                .map(|row| row.iter().zip(&w.0).filter(|(a, _)| **a != 0).map(|(&a, c)| q(a) * c).sum())
                .collect(),
        )
    }

    pub fn apply_grading(&self, g: &GradingVector) -> GradingVector {
        GradingVector(self.action.iter().map(|row| row.iter().zip(&g.0).map(|(a, b)| a * b).sum()).collect())
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.action.len();
        let action = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.action[i][k] * other.action[k][j]).sum()).collect())
            .collect();
        let mut word = self.word.clone();
        word.extend(&other.word);
        WeylElement { length: word.len(), word, action }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    positive_roots: Vec<GradingVector>,
    root_index: HashMap<GradingVector, usize>,
    rho: Weight,
    weyl: Vec<WeylElement>,
    /// Invariant symmetric form on simple-root coordinates.
    form: QMatrix,
    cartan_inverse: QMatrix,
}

impl RootSystem {
    pub fn new(cartan: CartanMatrix) -> Result<Self> {
        build_root_system(cartan)
    }

    pub fn preset(name: &str) -> Result<Self> {
        build_root_system(CartanMatrix::preset(name)?)
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn positive_roots(&self) -> &[GradingVector] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root_index(&self, g: &GradingVector) -> Option<usize> {
        self.root_index.get(g).copied()
    }

    pub fn is_root(&self, g: &GradingVector) -> bool {
        self.root_index.contains_key(g) || self.root_index.contains_key(&g.neg())
    }

    pub fn simple_root(&self, i: usize) -> GradingVector {
        GradingVector::simple(self.rank(), i)
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.weyl.last().expect("Weyl group contains the identity")
    }

    /// `<nu, alpha_i^vee>` for every `i`: the fundamental-weight coordinates.
    pub fn to_fundamental(&self, w: &Weight) -> Vec<Q> {
        let a = self.cartan.to_qmatrix();
        a.mul_vec(&w.0)
    }

    pub fn from_fundamental(&self, coords: &[Q]) -> Weight {
        Weight(self.cartan_inverse.mul_vec(coords))
    }

    pub fn from_fundamental_ints(&self, coords: &[i64]) -> Weight {
        self.from_fundamental(&coords.iter().map(|&c| q(c)).collect::<Vec<_>>())
    }

    /// `<nu, alpha_i^vee>`.
    pub fn pairing_simple(&self, w: &Weight, i: usize) -> Q {
        self.cartan.entries[i].iter().zip(&w.0).map(|(&a, c)| q(a) * c).sum()
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let fb = self.form.mul_vec(&b.0);
        a.0.iter().zip(&fb).map(|(x, y)| x * y).sum()
    }

    pub fn is_dominant_integral(&self, w: &Weight) -> bool {
        self.to_fundamental(w).iter().all(|c| c.is_integer() && *c >= Q::zero())
    }

    /// Simple reflection `s_i` on a weight.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let p = self.pairing_simple(w, i);
        let mut out = w.clone();
        out.0[i] -= p;
        out
    }

    pub fn reflect_grading(&self, i: usize, g: &GradingVector) -> GradingVector {
        let p: i64 = self.cartan.entries[i].iter().zip(&g.0).map(|(a, b)| a * b).sum();
        let mut out = g.clone();
        out.0[i] -= p;
        out
    }

    /// Number of positive roots sent to negative roots by `w`.
    pub fn inversions(&self, w: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| !w.apply_grading(r).in_positive_cone())
            .count()
    }

    /// Weyl dimension formula `prod (eta + rho, beta) / (rho, beta)`.
    pub fn weyl_dimension(&self, eta: &Weight) -> Q {
        let shifted = eta.add(&self.rho);
        self.positive_roots
            .iter()
            .map(|b| {
                let bw = b.to_weight();
                self.inner(&shifted, &bw) / self.inner(&self.rho, &bw)
            })
            .fold(Q::one(), |acc, x| acc * x)
    }

    /// `p` for the `alpha`-string through `beta`: the largest `p` with
    /// `beta - p alpha` a root.
    pub fn string_down(&self, alpha: &GradingVector, beta: &GradingVector) -> i64 {
        let mut p = 0;
        while self.is_root(&beta.sub(&alpha.scale(p + 1))) {
            p += 1;
        }
        p
    }
}

pub fn build_root_system(cartan: CartanMatrix) -> Result<RootSystem> {
    let n = cartan.rank();
    let lengths = cartan.root_lengths()?;

    let mut roots: Vec<GradingVector> = (0..n).map(|i| GradingVector::simple(n, i)).collect();
    let mut seen: HashSet<GradingVector> = roots.iter().cloned().collect();
    let mut queue: VecDeque<GradingVector> = roots.iter().cloned().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            if beta == GradingVector::simple(n, i) {
                continue;
            }
            let p: i64 = cartan.entries[i].iter().zip(&beta.0).map(|(a, b)| a * b).sum();
            let mut gamma = beta.clone();
            gamma.0[i] -= p;
            debug_assert!(gamma.in_positive_cone());
            if seen.insert(gamma.clone()) {
                if seen.len() > MAX_POSITIVE_ROOTS {
                    return Err(Error::InvalidCartan("root closure does not terminate".into()));
                }
                roots.push(gamma.clone());
                queue.push_back(gamma);
            }
        }
    }
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    let root_index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

    // (alpha_i, alpha_j) = a_ij l_i / 2
    let mut form = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            form[(i, j)] = q(cartan.entries[i][j]) * &lengths[i] / q(2);
        }
    }

    let a = cartan.to_qmatrix();
    let cartan_inverse = inverse(&a);
    let rho = Weight(cartan_inverse.mul_vec(&vec![Q::one(); n]));

    let weyl = enumerate_weyl(&cartan);

    Ok(RootSystem { cartan, positive_roots: roots, root_index, rho, weyl, form, cartan_inverse })
}

fn inverse(a: &QMatrix) -> QMatrix {
    let n = a.rows();
    let mut aug = QMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n + i)] = Q::one();
    }
    let r = aug.rref().matrix;
    let mut inv = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)].clone();
        }
    }
    inv
}

/// Breadth-first closure under left multiplication by simple reflections.
/// Elements are deduplicated by action matrix, so the first word found is reduced.
fn enumerate_weyl(cartan: &CartanMatrix) -> Vec<WeylElement> {
    let n = cartan.rank();
    let simple: Vec<WeylElement> = (0..n)
        .map(|i| {
            let mut m = WeylElement::identity(n).action;
            for (j, a) in cartan.entries[i].iter().enumerate() {
                m[i][j] -= a;
            }
            WeylElement { word: vec![i], action: m, length: 1 }
        })
        .collect();
    let id = WeylElement::identity(n);
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::from([id.action.clone()]);
    let mut out = vec![id];
    let mut frontier = 0;
    while frontier < out.len() {
        let cur = out[frontier].clone();
        frontier += 1;
        for s in &simple {
            let w = s.compose(&cur);
            if seen.insert(w.action.clone()) {
                out.push(w);
            }
        }
    }
    out
}

/// Elements of length exactly `k`; empty when `k` is out of range.
pub fn weyl_elements_by_length(rs: &RootSystem, k: usize) -> Vec<WeylElement> {
    rs.weyl.iter().filter(|w| w.length == k).cloned().collect()
}

/// `w(eta + rho) - rho`.
pub fn dot_action(w: &WeylElement, eta: &Weight, rs: &RootSystem) -> Weight {
    w.apply(&eta.add(&rs.rho)).sub(&rs.rho)
}

/// Number of multisets of positive roots summing to `lambda`.
pub fn kostant_partition(rs: &RootSystem, lambda: &GradingVector) -> u64 {
    if !lambda.in_positive_cone() {
        return 0;
    }
    partition_count(rs.positive_roots(), lambda)
}

/// Multiset count over an arbitrary list of nonzero cone vectors, by
/// unbounded-knapsack over the box below `target`.
pub(crate) fn partition_count(parts: &[GradingVector], target: &GradingVector) -> u64 {
    let dims: Vec<usize> = target.0.iter().map(|&c| c as usize + 1).collect();
    let size: usize = dims.iter().product();
    let index = |v: &[i64]| -> usize { v.iter().zip(&dims).fold(0, |acc, (&c, &d)| acc * d + c as usize) };
    let points: Vec<Vec<i64>> = dims.iter().map(|&d| 0..d as i64).multi_cartesian_product().collect();
    let mut ways = vec![0u64; size];
    ways[0] = 1;
    for part in parts {
        if !part.le(target) || part.is_zero() {
            continue;
        }
        // lexicographic order visits v - part before v
        for p in &points {
            let prev: Vec<i64> = p.iter().zip(&part.0).map(|(a, b)| a - b).collect();
            if prev.iter().all(|&c| c >= 0) {
                ways[index(p)] += ways[index(&prev)];
            }
        }
    }
    ways[index(&target.0)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gv(v: &[i64]) -> GradingVector {
        GradingVector(v.to_vec())
    }

    /// Independent closure: all nonneg integer vectors of bounded height that are
    /// reachable from a simple root by simple reflections staying positive.
    fn brute_positive_roots(c: &CartanMatrix, max_height: i64) -> HashSet<GradingVector> {
        let n = c.rank();
        let mut found: HashSet<GradingVector> = (0..n).map(|i| GradingVector::simple(n, i)).collect();
        loop {
            let mut grew = false;
            for r in found.clone() {
                for i in 0..n {
                    let p: i64 = (0..n).map(|j| c.entry(i, j) * r.0[j]).sum();
                    let mut g = r.clone();
                    g.0[i] -= p;
                    if g.in_positive_cone() && !g.is_zero() && g.height() <= max_height && found.insert(g) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return found;
            }
        }
    }

    /// Exhaustive multiset enumeration, independent of the knapsack table.
    fn brute_partitions(roots: &[GradingVector], target: &GradingVector) -> u64 {
        fn rec(roots: &[GradingVector], start: usize, rest: &GradingVector) -> u64 {
            if rest.is_zero() {
                return 1;
            }
            (start..roots.len())
                .filter(|&k| roots[k].le(rest))
                .map(|k| rec(roots, k, &rest.sub(&roots[k])))
                .sum()
        }
        rec(roots, 0, target)
    }

    #[test]
    fn positive_root_counts() {
        for (name, count) in [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4), ("C2", 4), ("G2", 6), ("B3", 9), ("C3", 9)] {
            let rs = RootSystem::preset(name).unwrap();
            assert_eq!(rs.num_positive_roots(), count, "{name}");
            let brute = brute_positive_roots(rs.cartan(), 20);
            assert_eq!(brute, rs.positive_roots().iter().cloned().collect::<HashSet<_>>(), "{name}");
        }
    }

    #[test]
    fn a2_roots_in_canonical_order() {
        let rs = RootSystem::preset("A2").unwrap();
        assert_eq!(rs.positive_roots(), &[gv(&[1, 0]), gv(&[0, 1]), gv(&[1, 1])]);
        let a3 = RootSystem::preset("A3").unwrap();
        assert_eq!(&a3.positive_roots()[3..5], &[gv(&[1, 1, 0]), gv(&[0, 1, 1])]);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]), Err(Error::InvalidCartan(_))));
        assert!(matches!(CartanMatrix::new(vec![vec![3]]), Err(Error::InvalidCartan(_))));
        // affine A1
        match CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]) {
            Err(Error::NotFiniteType { indices, value }) => {
                assert_eq!(indices, vec![0, 1]);
                assert_eq!(value, "0");
            }
            other => panic!("expected NotFiniteType, got {other:?}"),
        }
        // hyperbolic rank 2
        assert!(matches!(CartanMatrix::new(vec![vec![2, -4], vec![-1, 2]]), Err(Error::NotFiniteType { .. })));
        assert!(matches!(CartanMatrix::preset("E9"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn weyl_group_orders_and_lengths() {
        for (name, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("C2", 8), ("G2", 12), ("B3", 48)] {
            let rs = RootSystem::preset(name).unwrap();
            assert_eq!(rs.weyl_order(), order, "{name}");
            assert_eq!(rs.longest_element().length, rs.num_positive_roots());
            for w in rs.weyl_group() {
                assert_eq!(w.word.len(), w.length);
                assert_eq!(rs.inversions(w), w.length);
            }
            let total: usize = (0..=rs.num_positive_roots()).map(|k| weyl_elements_by_length(&rs, k).len()).sum();
            assert_eq!(total, order);
        }
    }

    #[test]
    fn weyl_elements_by_length_examples() {
        let a2 = RootSystem::preset("A2").unwrap();
        assert_eq!(weyl_elements_by_length(&a2, 1).len(), 2);
        assert_eq!(weyl_elements_by_length(&a2, 3).len(), 1);
        assert!(weyl_elements_by_length(&a2, 4).is_empty());
        let a1 = RootSystem::preset("A1").unwrap();
        let id = weyl_elements_by_length(&a1, 0);
        assert_eq!(id.len(), 1);
        assert_eq!(id[0], WeylElement::identity(1));
    }

    #[test]
    fn rho_has_unit_fundamental_coordinates() {
        for name in CartanMatrix::PRESETS {
            let rs = RootSystem::preset(name).unwrap();
            assert!(rs.to_fundamental(rs.rho()).iter().all(|c| *c == Q::one()));
        }
        // half-integral in simple-root coordinates for B2
        let b2 = RootSystem::preset("B2").unwrap();
        assert!(b2.rho().0.iter().any(|c| !c.is_integer()));
    }

    #[test]
    fn dot_action_examples() {
        let a1 = RootSystem::preset("A1").unwrap();
        let s = &weyl_elements_by_length(&a1, 1)[0];
        assert_eq!(dot_action(s, &Weight::zero(1), &a1), gv(&[-1]).to_weight());
        let id = WeylElement::identity(1);
        let eta = a1.from_fundamental_ints(&[3]);
        assert_eq!(dot_action(&id, &eta, &a1), eta);

        let a2 = RootSystem::preset("A2").unwrap();
        let s1s2 = a2.weyl_group().iter().find(|w| w.word == vec![0, 1]).unwrap();
        assert_eq!(dot_action(s1s2, &Weight::zero(2), &a2), gv(&[-2, -1]).to_weight());
    }

    #[test]
    fn dot_action_is_an_action() {
        let b2 = RootSystem::preset("B2").unwrap();
        let eta = b2.from_fundamental_ints(&[1, 2]);
        for w in b2.weyl_group() {
            for v in b2.weyl_group() {
                let lhs = dot_action(w, &dot_action(v, &eta, &b2), &b2);
                let rhs = dot_action(&w.compose(v), &eta, &b2);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn weyl_dimension_examples() {
        let a1 = RootSystem::preset("A1").unwrap();
        for m in 0..6 {
            assert_eq!(a1.weyl_dimension(&a1.from_fundamental_ints(&[m])), q(m + 1));
        }
        let a2 = RootSystem::preset("A2").unwrap();
        assert_eq!(a2.weyl_dimension(&a2.from_fundamental_ints(&[1, 1])), q(8));
        let g2 = RootSystem::preset("G2").unwrap();
        let dims: Vec<Q> = [[1, 0], [0, 1]].iter().map(|c| g2.weyl_dimension(&g2.from_fundamental_ints(c))).collect();
        assert!(dims.contains(&q(7)) && dims.contains(&q(14)));
    }

    #[test]
    fn kostant_partition_examples() {
        let a2 = RootSystem::preset("A2").unwrap();
        assert_eq!(kostant_partition(&a2, &gv(&[0, 0])), 1);
        assert_eq!(kostant_partition(&a2, &gv(&[1, 0])), 1);
        assert_eq!(kostant_partition(&a2, &gv(&[1, 1])), 2);
        assert_eq!(kostant_partition(&a2, &gv(&[2, 2])), 3);
        assert_eq!(kostant_partition(&a2, &gv(&[-1, 2])), 0);
    }

    #[test]
    fn kostant_partition_matches_enumeration() {
        for name in ["A2", "B2", "G2", "A3", "B3"] {
            let rs = RootSystem::preset(name).unwrap();
            for lambda in GradingVector::cone_up_to(rs.rank(), 6) {
                assert_eq!(
                    kostant_partition(&rs, &lambda),
                    brute_partitions(rs.positive_roots(), &lambda),
                    "{name} {lambda}"
                );
            }
        }
    }

    #[test]
    fn relabeling_permutes_outputs() {
        let a2 = RootSystem::preset("A2").unwrap();
        let swapped = RootSystem::new(a2.cartan().permuted(&[1, 0]).unwrap()).unwrap();
        let flip = |g: &GradingVector| GradingVector(vec![g.0[1], g.0[0]]);
        let lhs: HashSet<_> = a2.positive_roots().iter().map(flip).collect();
        let rhs: HashSet<_> = swapped.positive_roots().iter().cloned().collect();
        assert_eq!(lhs, rhs);
        for lambda in GradingVector::cone_up_to(2, 5) {
            assert_eq!(kostant_partition(&a2, &lambda), kostant_partition(&swapped, &flip(&lambda)));
        }
        let b2 = RootSystem::preset("B2").unwrap();
        let c2 = RootSystem::new(b2.cartan().permuted(&[1, 0]).unwrap()).unwrap();
        assert_eq!(c2.cartan(), RootSystem::preset("C2").unwrap().cartan());
    }

    #[test]
    fn cone_enumeration_sizes() {
        assert_eq!(GradingVector::cone_up_to(2, 3).len(), 10);
        assert_eq!(GradingVector::cone_at_height(3, 2).len(), 6);
        assert_eq!(gv(&[1, 2]).box_below().len(), 6);
    }
}
