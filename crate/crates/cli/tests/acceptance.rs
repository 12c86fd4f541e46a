//! Acceptance gate: one line per criterion, all tolerances exact.
//!
//! Run with `cargo test -p nilkoszul-cli --test acceptance`; exits nonzero if any
//! criterion fails.

use std::time::Instant;

use nilkoszul::cohomology_lab::{ce_complex, cobracket_kernel, h2_weight_lemma, verify_kostant, Coefficients};
use nilkoszul::curve_factorization::{
    character_series, gl2_report, global_inversion, hecke_hilbert, power_cohomology, r_hilbert, upsilon_dims,
    CurveModel, Flavor,
};
use nilkoszul::koszul_engine::{
    build_bar_koszul, character_inversion, fiber_quasi_iso_check, minimal_resolution_betti, sym_koszul_tor,
    GradedModule, GradedSpace,
};
use nilkoszul::lie_core::{build_irreducible, chevalley_constants};
use nilkoszul::linalg::q;
use nilkoszul::root_data::kostant_partition;
use nilkoszul::{GradingVector, RootSystem};
use nilkoszul_cli::{run_verification_suite, RunConfig};

const ALL_TYPES: [&str; 8] = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"];
const LEMMA_TYPES: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C2", "G2"];

fn rs(name: &str) -> RootSystem {
    RootSystem::preset(name).unwrap()
}

fn dominant_box(rank: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|p| (0..=max).map(move |c| [p.clone(), vec![c]].concat())).collect();
    }
    out
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Failures are collected as strings; an empty list is a pass.
type Outcome = Vec<String>;

fn kostant() -> Outcome {
    let mut bad = Vec::new();
    for name in ["A1", "A2", "B2"] {
        let rs = rs(name);
        let alg = chevalley_constants(&rs).unwrap();
        for eta in dominant_box(rs.rank(), 2) {
            let v = build_irreducible(&rs, &rs.from_fundamental_ints(&eta)).unwrap();
            let r = verify_kostant(&alg, &v).unwrap();
            if !(r.pass && r.multiplicity_free) {
                bad.push(format!("{name} eta={eta:?}"));
            }
        }
    }
    bad
}

fn h2_lemma() -> Outcome {
    LEMMA_TYPES
        .iter()
        .filter(|n| {
            let r = h2_weight_lemma(&chevalley_constants(&rs(n)).unwrap()).unwrap();
            !(r.pass && r.all_of_form && r.none_is_root)
        })
        .map(|n| n.to_string())
        .collect()
}

fn cobracket() -> Outcome {
    LEMMA_TYPES
        .iter()
        .filter(|n| {
            let rs = rs(n);
            let r = cobracket_kernel(&chevalley_constants(&rs).unwrap()).unwrap();
            !(r.dim == rs.rank() && r.equals_simple_span)
        })
        .map(|n| n.to_string())
        .collect()
}

fn bar_koszul() -> Outcome {
    let mut bad = Vec::new();
    for (name, bound) in [("A1", 6), ("A2", 6), ("B2", 6), ("A3", 4), ("G2", 4)] {
        let rs = rs(name);
        let alg = chevalley_constants(&rs).unwrap();
        for lambda in GradingVector::cone_up_to(rs.rank(), bound).into_iter().skip(1) {
            let r = fiber_quasi_iso_check(&alg, &lambda).unwrap();
            let p = kostant_partition(&rs, &lambda);
            let ok = r.pass
                && r.homology.len() == 1
                && r.homology[0].1 == p
                && r.augmentation_rank as u64 == p
                && r.augmentation_kills_boundaries;
            if !ok {
                bad.push(format!("{name} lambda={lambda}"));
            }
        }
    }
    bad
}

fn inversion() -> Outcome {
    ALL_TYPES
        .iter()
        .filter(|n| {
            let r = character_inversion(&rs(n), 10);
            !(r.pass && r.rows.iter().all(|row| row.value == i64::from(row.lambda.is_zero())))
        })
        .map(|n| n.to_string())
        .collect()
}

fn hilbert() -> Outcome {
    let bound = 8;
    let mut bad = Vec::new();
    for name in ["A1", "A2", "B2", "C2", "G2"] {
        let rs = rs(name);
        let theta = rs.to_fundamental(&rs.positive_roots().last().unwrap().to_weight());
        let adjoint: Vec<i64> = theta.iter().map(|c| c.to_integer().try_into().unwrap()).collect();
        let mut etas = vec![vec![0; rs.rank()], adjoint];
        for i in 0..rs.rank() {
            let mut e = vec![0; rs.rank()];
            e[i] = 1;
            etas.push(e);
        }
        for g in [2, 3] {
            let curve = CurveModel::regular(g).unwrap();
            let r = r_hilbert(&rs, &curve, Some(bound)).unwrap();
            for l in GradingVector::cone_up_to(rs.rank(), bound) {
                if upsilon_dims(&rs, &curve, &l).total() as i64 != r.coefficient(&l) {
                    bad.push(format!("{name} g={g} upsilon at {l}"));
                }
            }
            let inv = global_inversion(&rs, &curve, bound).unwrap();
            if !(inv.inverse_of_r && inv.matches_closed_form) {
                bad.push(format!("{name} g={g} inversion"));
            }
            for eta in &etas {
                let v = build_irreducible(&rs, &rs.from_fundamental_ints(eta)).unwrap();
                let h = hecke_hilbert(&rs, &curve, &v, bound).unwrap();
                let expected = character_series(&rs, &v, bound).mul(&r).unwrap();
                if !h.agrees_with(&expected) {
                    bad.push(format!("{name} g={g} hecke eta={eta:?}"));
                }
            }
        }
    }
    bad
}

fn tor() -> Outcome {
    let bound = 6;
    let mut bad = Vec::new();
    for n in 1..=3usize {
        let w = GradedSpace::standard(n);
        let mut modules = vec![("C", GradedModule::residue_field(w.clone()))];
        let mut sq = vec![0; n];
        sq[0] = 2;
        modules.push(("x1^2", GradedModule::cyclic_quotient(w.clone(), vec![(sq, q(1))]).unwrap()));
        let mut cubic = vec![0; n];
        cubic[n - 1] = 3;
        let mut mixed = vec![0; n];
        mixed[0] = 1;
        mixed[n - 1] += 2;
        modules.push((
            "cubic",
            GradedModule::cyclic_quotient(w.clone(), vec![(cubic, q(2)), (mixed, q(-1))]).unwrap(),
        ));
        for (label, m) in modules {
            let koszul = sym_koszul_tor(&m, bound).unwrap();
            let betti = minimal_resolution_betti(&m, bound);
            if koszul.entries != betti.entries {
                bad.push(format!("dim W={n} {label}"));
            }
            if label == "C" {
                for k in 0..=n as i64 {
                    if koszul.by_degree().get(&k).copied().unwrap_or(0) != binom(n as u64, k as u64) {
                        bad.push(format!("dim W={n} C Tor_{k}"));
                    }
                }
            }
        }
    }
    bad
}

fn gl2() -> Outcome {
    let mut bad = Vec::new();
    for g in 1..=3u32 {
        let n = 2 * g as u64 - 2;
        let r = gl2_report(g, n as u32).unwrap();
        for d in 0..=n {
            let pc = power_cohomology((0, n, 0), d, Flavor::Symmetric);
            let c = binom(n, d);
            let ok = r.exterior_dims[d as usize] == c
                && pc.get(&d, d as i64) == c
                && pc.total() == c
                && r.koszul_tor[d as usize] == c
                && r.resolution[d as usize] == c;
            if !ok {
                bad.push(format!("g={g} d={d}"));
            }
        }
        if !r.pass {
            bad.push(format!("g={g} report"));
        }
    }
    bad
}

fn structural() -> Outcome {
    let mut bad = Vec::new();
    for name in ALL_TYPES {
        let rs = rs(name);
        let alg = match chevalley_constants(&rs) {
            Ok(a) => a,
            Err(e) => {
                bad.push(format!("{name} Jacobi: {e}"));
                continue;
            }
        };
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                if let Some((_, n)) = alg.bracket(a, b) {
                    if n.abs() != rs.string_down(alg.root(a), alg.root(b)) + 1 {
                        bad.push(format!("{name} N({a},{b})"));
                    }
                }
            }
        }
        if ce_complex(&alg, Coefficients::Trivial).and_then(|cx| cx.check_square_zero()).is_err() {
            bad.push(format!("{name} CE d^2 trivial"));
        }
        let max = if rs.weyl_order() <= 8 { 2 } else { 1 };
        for eta in dominant_box(rs.rank(), max) {
            let w = rs.from_fundamental_ints(&eta);
            let v = build_irreducible(&rs, &w).unwrap();
            if q(v.dim() as i64) != rs.weyl_dimension(&w) || v.verify_relations().is_err() {
                bad.push(format!("{name} V{eta:?} dimension"));
            }
            if rs.rank() <= 2 && ce_complex(&alg, Coefficients::Module(&v)).and_then(|cx| cx.check_square_zero()).is_err() {
                bad.push(format!("{name} V{eta:?} CE d^2"));
            }
        }
        let bar = if rs.rank() <= 2 { 6 } else { 4 };
        for l in GradingVector::cone_up_to(rs.rank(), bar).into_iter().skip(1) {
            if build_bar_koszul(&alg, &l).and_then(|cx| cx.check_bicomplex()).is_err() {
                bad.push(format!("{name} bicomplex {l}"));
            }
        }
    }
    for name in ["A1", "A2"] {
        let cfg = |jobs| RunConfig {
            root_type: Some(name.into()),
            bound: Some(6),
            genus: Some(2),
            jobs: Some(jobs),
            ..Default::default()
        };
        let one = run_verification_suite(&cfg(1)).unwrap();
        let four = run_verification_suite(&cfg(4)).unwrap();
        if !one.all_pass() {
            bad.push(format!("{name} verify-all"));
        }
        if one.without_timing().to_json() != four.without_timing().to_json() {
            bad.push(format!("{name} verify-all nondeterministic"));
        }
    }
    bad
}

fn main() -> std::process::ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 Kostant weights of H^k(n, V) for A1, A2, B2, eta <= 2", kostant),
        ("2 H^2(n, C) weights are -alpha_i - s_i(alpha_j), never roots", h2_lemma),
        ("3 co-bracket kernel is the span of simple-root duals", cobracket),
        ("4 bar-Koszul homology concentrated, dim p(lambda), via product map", bar_koszul),
        ("5 character inversion sum p * eps = delta, bound 10, rank <= 3", inversion),
        ("6 Hilbert suite g in {2,3}, bound 8, rank <= 2", hilbert),
        ("7 Koszul Tor over Sym(W) equals resolution Tor, dim W <= 3", tor),
        ("8 GL(2) Koszul terms C(2g-2, d), g = 1..3", gl2),
        ("9 structural gates: d^2, Jacobi, Weyl dimension, determinism", structural),
    ];
    let mut failed = Vec::new();
    for (label, f) in criteria {
        let start = Instant::now();
        let bad = f();
        let status = if bad.is_empty() { "PASS" } else { "FAIL" };
        println!("[{status}] {label} (tolerance: exact, {:.1}s)", start.elapsed().as_secs_f64());
        for b in bad.iter().take(10) {
            println!("       {b}");
        }
        if !bad.is_empty() {
            failed.push(label);
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
