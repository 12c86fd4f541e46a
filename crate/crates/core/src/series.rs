//! Truncated generating functions over the positive cone.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{GradingVector, Weight};

/// `sum c_{lambda,q} q^q t^lambda`, kept for `|lambda| <= bound`.
///
/// A series with `origin = Some(eta)` describes a module graded by weights:
/// the coefficient at `lambda` belongs to the weight `eta - lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub rank: usize,
    pub bound: u32,
    pub terms: BTreeMap<(GradingVector, i64), i64>,
    /// Whether the auxiliary degree `q` carries information.
    pub graded: bool,
    pub origin: Option<Weight>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub lattice_point: Vec<i64>,
    pub coefficient: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_degree: Option<i64>,
}

fn checked(x: Option<i64>) -> i64 {
    x.expect("series coefficient overflow")
}

/// Generalized binomial `C(e, n)` for integer `e`.
pub fn binomial(e: i64, n: u64) -> i64 {
    let mut c: i128 = 1;
    for i in 0..n as i128 {
        c = c * (e as i128 - i) / (i + 1);
    }
    i64::try_from(c).expect("binomial overflow")
}

impl HilbertSeries {
    pub fn zero(rank: usize, bound: u32) -> Self {
        HilbertSeries { rank, bound, terms: BTreeMap::new(), graded: false, origin: None }
    }

    pub fn one(rank: usize, bound: u32) -> Self {
        let mut s = Self::zero(rank, bound);
        s.terms.insert((GradingVector::zero(rank), 0), 1);
        s
    }

    /// Adds `c q^q t^lambda`, dropping terms beyond the bound.
    pub fn add_term(&mut self, lambda: GradingVector, q: i64, c: i64) {
        if c == 0 || lambda.height() > self.bound as i64 {
            return;
        }
        let key = (lambda, q);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = checked(e.checked_add(c));
        if *e == 0 {
            self.terms.remove(&key);
        }
        if q != 0 {
            self.graded = true;
        }
    }

    /// Coefficient at `lambda`, summed over `q`.
    pub fn coefficient(&self, lambda: &GradingVector) -> i64 {
        self.terms.range((lambda.clone(), i64::MIN)..=(lambda.clone(), i64::MAX)).map(|(_, c)| c).sum()
    }

    pub fn support(&self) -> Vec<GradingVector> {
        let mut out: Vec<GradingVector> = self.terms.keys().map(|(l, _)| l.clone()).collect();
        out.dedup();
        out
    }

    /// Restricts to a smaller bound.
    pub fn truncate(&self, bound: u32) -> Result<Self> {
        if bound > self.bound {
            return Err(Error::InvalidInput(format!("cannot extend a series known to {} up to {bound}", self.bound)));
        }
        let mut out = self.clone();
        out.bound = bound;
        out.terms.retain(|(l, _), _| l.height() <= bound as i64);
        Ok(out)
    }

    /// Product, known up to the smaller of the two bounds.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch(format!("series of rank {} and {}", self.rank, other.rank)));
        }
        if self.origin.is_some() && other.origin.is_some() {
            return Err(Error::InvalidInput("both factors carry a weight origin".into()));
        }
        let mut out = Self::zero(self.rank, self.bound.min(other.bound));
        out.graded = self.graded || other.graded;
        out.origin = self.origin.clone().or_else(|| other.origin.clone());
        for ((a, qa), ca) in &self.terms {
            for ((b, qb), cb) in &other.terms {
                out.add_term(a.add(b), qa + qb, checked(ca.checked_mul(*cb)));
            }
        }
        Ok(out)
    }

    /// `prod_k (1 - t^{mu_k})^{e_k}` for nonzero `mu_k` in the positive cone.
    pub fn product_of_powers(rank: usize, bound: u32, factors: &[(GradingVector, i64)]) -> Result<Self> {
        let mut out = Self::one(rank, bound);
        for (mu, e) in factors {
            if mu.is_zero() || !mu.in_positive_cone() || mu.rank() != rank {
                return Err(Error::InvalidInput(format!("factor exponent {mu} must be nonzero in the positive cone")));
            }
            let mut f = Self::one(rank, bound);
            let mut n = 1;
            while mu.scale(n).height() <= bound as i64 {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                f.add_term(mu.scale(n), 0, sign * binomial(*e, n as u64));
                n += 1;
            }
            out = out.mul(&f)?;
        }
        Ok(out)
    }

    /// Whether `self` and `other` agree coefficientwise (including `q`) on the common bound.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let b = self.bound.min(other.bound);
        self.rank == other.rank && self.truncate(b).map(|s| s.terms) == other.truncate(b).map(|s| s.terms)
    }

    pub fn rows(&self) -> Vec<SeriesRow> {
        self.terms
            .iter()
            .map(|((l, q), c)| SeriesRow {
                lattice_point: l.0.clone(),
                coefficient: *c,
                q_degree: self.graded.then_some(*q),
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["lattice_point", "coefficient", "q_degree"])?;
        for r in self.rows() {
            let point = r.lattice_point.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            w.write_record([point, r.coefficient.to_string(), r.q_degree.map(|q| q.to_string()).unwrap_or_default()])?;
        }
        w.flush()
    }
}
