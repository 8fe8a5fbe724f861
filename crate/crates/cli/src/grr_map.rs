//! `grr-map`: marker GRRs and penetrances induced by a functional-locus model.

use std::io::Write;

use robust_scan::ld::{functional_penetrances, haplotype_table, marker_penetrances, AlleleFreqs, GeneticModel};
use serde_json::json;

use crate::error::CliResult;
use crate::format::fmt_g;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrrMapArgs {
    pub model: GeneticModel,
    pub lambda2_star: f64,
    pub p: f64,
    pub q: f64,
    pub d_prime: f64,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrrMapResult {
    pub lambda1: f64,
    pub lambda2: f64,
    pub penetrances: [f64; 3],
    pub functional_penetrances: [f64; 3],
}

pub fn grr_map(a: &GrrMapArgs) -> CliResult<GrrMapResult> {
    let f_star = functional_penetrances(a.model, a.lambda2_star, a.q, a.k)?;
    let h = haplotype_table(AlleleFreqs::new(a.p, a.q)?, a.d_prime)?;
    let f = marker_penetrances(&f_star, &h)?;
    let grr = f.grr();
    Ok(GrrMapResult {
        lambda1: grr.lambda1,
        lambda2: grr.lambda2,
        penetrances: f.as_array(),
        functional_penetrances: f_star.as_array(),
    })
}

pub fn write_grr_map(r: &GrrMapResult, json_out: bool, out: &mut dyn Write) -> CliResult<()> {
    if json_out {
        let v = json!({
            "lambda1": r.lambda1,
            "lambda2": r.lambda2,
            "penetrances": r.penetrances,
            "functional_penetrances": r.functional_penetrances,
        });
        writeln!(out, "{v}")?;
        return Ok(());
    }
    writeln!(out, "lambda1={}", fmt_g(r.lambda1))?;
    writeln!(out, "lambda2={}", fmt_g(r.lambda2))?;
    for (i, f) in r.penetrances.iter().enumerate() {
        writeln!(out, "f{i}={}", fmt_g(*f))?;
    }
    for (i, f) in r.functional_penetrances.iter().enumerate() {
        writeln!(out, "f{i}_star={}", fmt_g(*f))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(model: GeneticModel, lambda2_star: f64, d_prime: f64) -> GrrMapArgs {
        GrrMapArgs { model, lambda2_star, p: 0.3, q: 0.3, d_prime, k: 0.1 }
    }

    #[test]
    fn reference_cells() {
        let r = grr_map(&args(GeneticModel::Dom, 2.0, 0.8)).unwrap();
        assert!((r.lambda1 - 1.67).abs() < 0.005 && (r.lambda2 - 1.77).abs() < 0.005);
        let r = grr_map(&args(GeneticModel::Mul, 2.0, 1.0)).unwrap();
        assert!((r.lambda1 - 2f64.sqrt()).abs() < 1e-12 && (r.lambda2 - 2.0).abs() < 1e-12);
        let r = grr_map(&args(GeneticModel::Rec, 1.0, 0.6)).unwrap();
        assert!((r.lambda1 - 1.0).abs() < 1e-12 && (r.lambda2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters() {
        assert!(grr_map(&GrrMapArgs { p: 1.2, ..args(GeneticModel::Add, 2.0, 0.8) }).is_err());
        assert!(grr_map(&args(GeneticModel::Add, 0.5, 0.8)).is_err());
        assert!(grr_map(&args(GeneticModel::Add, 2.0, 1.5)).is_err());
    }

    #[test]
    fn text_output() {
        let r = grr_map(&args(GeneticModel::Mul, 2.0, 1.0)).unwrap();
        let mut out = Vec::new();
        write_grr_map(&r, false, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("lambda1=1.41421356237\nlambda2=2\n"), "{text}");
    }
}
