//! Bar-Koszul complexes of `n`, character-level inversion, and Koszul Tor over
//! symmetric algebras.

mod bar;
mod pbw;
mod resolution;
mod tor;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lie_core::exterior_table;
use crate::root_data::{kostant_partition, GradingVector, RootSystem};

pub use bar::{build_bar_koszul, fiber_quasi_iso_check, BarKoszulComplex, FiberReport, Sequence};
pub use pbw::{pbw_basis, Pbw, PbwVector};
pub use resolution::minimal_resolution_betti;
pub use tor::{sym_koszul_tor, GradedModule, GradedSpace, Term};

/// `eps(mu) = sum_k (-1)^k dim Lambda^k(n)^mu`.
pub fn exterior_euler(rs: &RootSystem, mu: &GradingVector) -> i64 {
    euler_from_table(&exterior_table(rs), mu)
}

fn euler_from_table(table: &BTreeMap<(usize, GradingVector), u64>, mu: &GradingVector) -> i64 {
    table
        .iter()
        .filter(|((_, w), _)| w == mu)
        .map(|((k, _), d)| if k % 2 == 0 { *d as i64 } else { -(*d as i64) })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionRow {
    pub lambda: GradingVector,
    /// `sum_{lambda_1 + lambda_2 = lambda} p(lambda_1) eps(lambda_2)`.
    pub value: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionReport {
    pub bound: u32,
    pub rows: Vec<InversionRow>,
    pub pass: bool,
}

/// Checks `sum p(lambda_1) eps(lambda_2) = delta_{lambda,0}` for `|lambda| <= bound`:
/// the characters of `U(n)` and of `Lambda(n)` with alternating signs are inverse.
pub fn character_inversion(rs: &RootSystem, bound: u32) -> InversionReport {
    let table = exterior_table(rs);
    let eps = |mu: &GradingVector| euler_from_table(&table, mu);
    let rows: Vec<InversionRow> = GradingVector::cone_up_to(rs.rank(), bound)
        .into_par_iter()
        .map(|lambda| {
            let value = lambda
                .box_below()
                .iter()
                .map(|l1| kostant_partition(rs, l1) as i64 * eps(&lambda.sub(l1)))
                .sum();
            let pass = value == i64::from(lambda.is_zero());
            InversionRow { lambda, value, pass }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    InversionReport { bound, rows, pass }
}
