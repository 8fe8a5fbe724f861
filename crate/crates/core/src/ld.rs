//! Two-locus genetics: haplotype frequencies under a given D′, the
//! marker-given-functional genotype transition matrix, penetrance and GRR
//! mapping from the functional locus to the marker, and HWD coefficients.
//!
//! Alleles are labelled A/B at the marker and a/b at the functional locus,
//! with B and b the risk alleles. Genotype index i counts risk alleles.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Marker genotype probabilities below this are treated as degenerate.
pub const MIN_GENOTYPE_PROB: f64 = 1e-12;

/// Tolerance on the prevalence identity `k = Σ g_i f_i`.
pub const PREVALENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlleleFreqs {
    /// Frequency of marker allele B.
    pub p: f64,
    /// Frequency of functional allele b.
    pub q: f64,
}

impl AlleleFreqs {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(invalid(format!("allele frequency {name} = {v} not in (0,1)")));
            }
        }
        Ok(Self { p, q })
    }

    /// Equal frequencies at both loci.
    pub fn equal(p: f64) -> Result<Self> {
        Self::new(p, p)
    }
}

/// Joint haplotype probabilities. The first letter of each field is the
/// marker allele, the second the functional allele.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HaplotypeTable {
    pub freqs: AlleleFreqs,
    pub p_aa: f64,
    pub p_ab: f64,
    pub p_ba: f64,
    pub p_bb: f64,
    pub d: f64,
    pub d_prime: f64,
}

/// Build the haplotype table from allele frequencies and D′.
pub fn haplotype_table(freqs: AlleleFreqs, d_prime: f64) -> Result<HaplotypeTable> {
    if !(-1.0..=1.0).contains(&d_prime) {
        return Err(invalid(format!("d_prime = {d_prime} not in [-1,1]")));
    }
    let freqs = AlleleFreqs::new(freqs.p, freqs.q)?;
    let (p, q) = (freqs.p, freqs.q);
    let (pc, qc) = (1.0 - p, 1.0 - q);
    let d_max = if d_prime >= 0.0 {
        (qc * p).min(pc * q)
    } else {
        (qc * pc).min(p * q)
    };
    let d = d_prime * d_max;
    // Clamp rounding residue at the D′ = ±1 boundary.
    let cell = |v: f64| if v < 0.0 && v > -1e-15 { 0.0 } else { v };
    let table = HaplotypeTable {
        freqs,
        p_aa: cell(pc * qc + d),
        p_ab: cell(pc * q - d),
        p_ba: cell(p * qc - d),
        p_bb: cell(p * q + d),
        d,
        d_prime,
    };
    debug_assert!([table.p_aa, table.p_ab, table.p_ba, table.p_bb]
        .iter()
        .all(|&v| v >= 0.0));
    Ok(table)
}

impl HaplotypeTable {
    /// Pearson correlation between the marker and functional alleles.
    pub fn allele_correlation(&self) -> f64 {
        let AlleleFreqs { p, q } = self.freqs;
        (self.p_aa * self.p_bb - self.p_ab * self.p_ba) / (p * (1.0 - p) * q * (1.0 - q)).sqrt()
    }

    /// `(F1, F2, F3, F4)`: conditional functional-allele frequencies
    /// `Pr(a|A), Pr(a|B), Pr(b|A), Pr(b|B)`.
    pub fn f_coefficients(&self) -> [f64; 4] {
        let p = self.freqs.p;
        let pc = 1.0 - p;
        [self.p_aa / pc, self.p_ba / p, self.p_ab / pc, self.p_bb / p]
    }

    fn check_marker_genotypes(&self) -> Result<()> {
        let g = hwe_genotype_freqs(self.freqs.p);
        if g.iter().any(|&x| x < MIN_GENOTYPE_PROB) {
            return Err(invalid(format!(
                "marker genotype probability below {MIN_GENOTYPE_PROB:e} (p = {})",
                self.freqs.p
            )));
        }
        Ok(())
    }
}

pub fn allele_correlation(h: &HaplotypeTable) -> f64 {
    h.allele_correlation()
}

/// Hardy–Weinberg genotype frequencies `(p_c², 2 p p_c, p²)`.
pub fn hwe_genotype_freqs(p: f64) -> [f64; 3] {
    let pc = 1.0 - p;
    [pc * pc, 2.0 * p * pc, p * p]
}

/// `probs[i][j] = Pr(G*_i | G_j)`: functional genotype i given marker genotype j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionMatrix {
    pub probs: [[f64; 3]; 3],
    pub f: [f64; 4],
}

pub fn transition_matrix(h: &HaplotypeTable) -> Result<TransitionMatrix> {
    h.check_marker_genotypes()?;
    let f = h.f_coefficients();
    let [f1, f2, f3, f4] = f;
    let probs = [
        [f1 * f1, f1 * f2, f2 * f2],
        [2.0 * f1 * f3, f1 * f4 + f2 * f3, 2.0 * f2 * f4],
        [f3 * f3, f3 * f4, f4 * f4],
    ];
    Ok(TransitionMatrix { probs, f })
}

impl TransitionMatrix {
    /// `P*ᵗ f*`: marker penetrances from functional ones.
    pub fn push_forward(&self, f_star: &PenetranceTriple) -> PenetranceTriple {
        let fs = f_star.as_array();
        let mut out = [0.0; 3];
        for (j, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|i| self.probs[i][j] * fs[i]).sum();
        }
        PenetranceTriple::from_array(out)
    }

    pub fn column_sums(&self) -> [f64; 3] {
        let mut sums = [0.0; 3];
        for row in &self.probs {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        sums
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrrPair {
    pub lambda1: f64,
    pub lambda2: f64,
}

impl GrrPair {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self> {
        if !(lambda1 >= 0.0 && lambda2 >= 0.0) || !lambda1.is_finite() || !lambda2.is_finite() {
            return Err(invalid(format!("GRRs ({lambda1}, {lambda2}) must be finite and >= 0")));
        }
        Ok(Self { lambda1, lambda2 })
    }

    /// Membership in the constrained space `λ2 ≥ λ1, λ2 > 1`.
    pub fn is_constrained(&self) -> bool {
        self.lambda2 >= self.lambda1 && self.lambda2 > 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenetranceTriple {
    pub f0: f64,
    pub f1: f64,
    pub f2: f64,
}

impl PenetranceTriple {
    pub fn new(f0: f64, f1: f64, f2: f64) -> Result<Self> {
        for v in [f0, f1, f2] {
            if !(0.0..=1.0).contains(&v) {
                return Err(invalid(format!("penetrance {v} not in [0,1]")));
            }
        }
        Ok(Self { f0, f1, f2 })
    }

    fn from_array(a: [f64; 3]) -> Self {
        Self { f0: a[0], f1: a[1], f2: a[2] }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.f0, self.f1, self.f2]
    }

    /// Penetrances `f0 · (1, λ1, λ2)`.
    pub fn from_grr(f0: f64, grr: GrrPair) -> Result<Self> {
        Self::new(f0, f0 * grr.lambda1, f0 * grr.lambda2)
    }

    pub fn grr(&self) -> GrrPair {
        GrrPair { lambda1: self.f1 / self.f0, lambda2: self.f2 / self.f0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneticModel {
    Rec,
    Add,
    Mul,
    Dom,
}

impl GeneticModel {
    pub const ALL: [GeneticModel; 4] =
        [GeneticModel::Rec, GeneticModel::Add, GeneticModel::Mul, GeneticModel::Dom];

    pub fn as_str(&self) -> &'static str {
        match self {
            GeneticModel::Rec => "REC",
            GeneticModel::Add => "ADD",
            GeneticModel::Mul => "MUL",
            GeneticModel::Dom => "DOM",
        }
    }
}

impl fmt::Display for GeneticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneticModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "REC" => Ok(GeneticModel::Rec),
            "ADD" => Ok(GeneticModel::Add),
            "MUL" => Ok(GeneticModel::Mul),
            "DOM" => Ok(GeneticModel::Dom),
            other => Err(invalid(format!("unknown genetic model '{other}'"))),
        }
    }
}

/// Heterozygote GRR implied by a genetic model and the homozygote GRR.
pub fn grr_from_model(model: GeneticModel, lambda2: f64) -> Result<GrrPair> {
    if !(lambda2 >= 1.0) || !lambda2.is_finite() {
        return Err(invalid(format!("lambda2 = {lambda2} must be >= 1")));
    }
    let lambda1 = match model {
        GeneticModel::Rec => 1.0,
        GeneticModel::Add => (1.0 + lambda2) / 2.0,
        GeneticModel::Mul => lambda2.sqrt(),
        GeneticModel::Dom => lambda2,
    };
    Ok(GrrPair { lambda1, lambda2 })
}

/// Baseline functional penetrance `f*0` such that the HWE prevalence at the
/// functional locus equals `k`.
pub fn baseline_penetrance(k: f64, q: f64, grr_star: GrrPair) -> Result<f64> {
    if !(k > 0.0 && k < 1.0) {
        return Err(invalid(format!("prevalence k = {k} not in (0,1)")));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(invalid(format!("allele frequency q = {q} not in (0,1)")));
    }
    let g = hwe_genotype_freqs(q);
    let f0 = k / (g[0] + g[1] * grr_star.lambda1 + g[2] * grr_star.lambda2);
    let top = f0 * grr_star.lambda1.max(grr_star.lambda2).max(1.0);
    if top > 1.0 {
        return Err(Error::PenetranceOutOfRange(top));
    }
    Ok(f0)
}

/// Functional-locus penetrances for a genetic model at prevalence `k`.
pub fn functional_penetrances(
    model: GeneticModel,
    lambda2_star: f64,
    q: f64,
    k: f64,
) -> Result<PenetranceTriple> {
    let grr = grr_from_model(model, lambda2_star)?;
    let f0 = baseline_penetrance(k, q, grr)?;
    PenetranceTriple::from_grr(f0, grr)
}

/// Marker penetrances via the closed-form F-coefficient expressions.
pub fn marker_penetrances(f_star: &PenetranceTriple, h: &HaplotypeTable) -> Result<PenetranceTriple> {
    h.check_marker_genotypes()?;
    let [f1, f2, f3, f4] = h.f_coefficients();
    let [s0, s1, s2] = f_star.as_array();
    let f = PenetranceTriple {
        f0: f1 * f1 * s0 + 2.0 * f1 * f3 * s1 + f3 * f3 * s2,
        f1: f1 * f2 * s0 + (f1 * f4 + f2 * f3) * s1 + f3 * f4 * s2,
        f2: f2 * f2 * s0 + 2.0 * f2 * f4 * s1 + f4 * f4 * s2,
    };
    Ok(f)
}

/// Marker GRRs induced by a functional-locus model with homozygote GRR
/// `lambda2_star`, prevalence `k` and the given LD.
pub fn marker_grr(
    model: GeneticModel,
    lambda2_star: f64,
    freqs: AlleleFreqs,
    d_prime: f64,
    k: f64,
) -> Result<GrrPair> {
    let f_star = functional_penetrances(model, lambda2_star, freqs.q, k)?;
    let h = haplotype_table(freqs, d_prime)?;
    Ok(marker_penetrances(&f_star, &h)?.grr())
}

/// Genotype distributions in cases and controls at a locus with risk-allele
/// frequency `p` under HWE, penetrances `f` and prevalence `k`.
pub fn case_control_dists(f: &PenetranceTriple, p: f64, k: f64) -> Result<([f64; 3], [f64; 3])> {
    if !(k > 0.0 && k < 1.0) {
        return Err(invalid(format!("prevalence k = {k} not in (0,1)")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("allele frequency p = {p} not in (0,1)")));
    }
    let g = hwe_genotype_freqs(p);
    let fa = f.as_array();
    let implied: f64 = g.iter().zip(&fa).map(|(g, f)| g * f).sum();
    if (implied - k).abs() > PREVALENCE_TOL {
        return Err(Error::InconsistentPrevalence { implied, expected: k });
    }
    let mut case = [0.0; 3];
    let mut control = [0.0; 3];
    for i in 0..3 {
        case[i] = g[i] * fa[i] / k;
        control[i] = g[i] * (1.0 - fa[i]) / (1.0 - k);
    }
    Ok((normalize(case), normalize(control)))
}

// Removes the O(1e-9) slack allowed by the prevalence check.
fn normalize(mut v: [f64; 3]) -> [f64; 3] {
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwdPair {
    pub delta_case: f64,
    pub delta_control: f64,
}

/// HWD coefficient `g2 − (g2 + g1/2)²` of a genotype distribution.
pub fn hwd_coefficient(dist: &[f64; 3]) -> f64 {
    let allele = dist[2] + dist[1] / 2.0;
    dist[2] - allele * allele
}

pub fn hwd_coefficients(case_dist: &[f64; 3], control_dist: &[f64; 3]) -> HwdPair {
    HwdPair {
        delta_case: hwd_coefficient(case_dist),
        delta_control: hwd_coefficient(control_dist),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn linkage_equilibrium_table() {
        let h = haplotype_table(AlleleFreqs::equal(0.3).unwrap(), 0.0).unwrap();
        assert_eq!(h.d, 0.0);
        assert!(close(h.p_aa, 0.49, 1e-15));
        assert!(close(h.p_ab, 0.21, 1e-15));
        assert!(close(h.p_ba, 0.21, 1e-15));
        assert!(close(h.p_bb, 0.09, 1e-15));
        assert_eq!(h.allele_correlation(), 0.0);
    }

    #[test]
    fn perfect_ld_table() {
        let h = haplotype_table(AlleleFreqs::equal(0.3).unwrap(), 1.0).unwrap();
        assert_eq!(h.p_ab, 0.0);
        assert_eq!(h.p_ba, 0.0);
        assert!(close(h.p_bb, 0.3, 1e-15));
        assert!(close(h.p_aa, 0.7, 1e-15));
        assert!(close(h.allele_correlation(), 1.0, 1e-12));
    }

    #[test]
    fn partial_ld_table_arithmetic() {
        let h = haplotype_table(AlleleFreqs::equal(0.3).unwrap(), 0.8).unwrap();
        assert!(close(h.d, 0.168, 1e-15));
        assert!(close(h.p_bb, 0.258, 1e-15));
        let d_direct = h.p_aa * h.p_bb - h.p_ab * h.p_ba;
        assert!(close(h.d, d_direct, 1e-12));
        assert!(close(h.allele_correlation(), 0.8, 1e-12));
    }

    #[test]
    fn table_margins_match_allele_freqs() {
        for &(p, q, dp) in &[(0.3, 0.2, 0.8), (0.1, 0.45, -0.6), (0.6, 0.35, -1.0), (0.2, 0.7, 1.0)] {
            let h = haplotype_table(AlleleFreqs::new(p, q).unwrap(), dp).unwrap();
            assert!(close(h.p_aa + h.p_ab, 1.0 - p, 1e-12));
            assert!(close(h.p_ba + h.p_bb, p, 1e-12));
            assert!(close(h.p_aa + h.p_ba, 1.0 - q, 1e-12));
            assert!(close(h.p_ab + h.p_bb, q, 1e-12));
            assert!([h.p_aa, h.p_ab, h.p_ba, h.p_bb].iter().all(|&v| v >= 0.0));
            assert!(close(h.d, h.p_aa * h.p_bb - h.p_ab * h.p_ba, 1e-12));
        }
    }

    #[test]
    fn rejects_bad_ld_inputs() {
        let f = AlleleFreqs { p: 0.3, q: 0.3 };
        assert!(haplotype_table(f, 1.01).is_err());
        assert!(haplotype_table(f, -1.5).is_err());
        assert!(haplotype_table(AlleleFreqs { p: 0.0, q: 0.3 }, 0.5).is_err());
        assert!(AlleleFreqs::new(0.3, 1.0).is_err());
    }

    #[test]
    fn transition_identity_under_perfect_ld() {
        let h = haplotype_table(AlleleFreqs::equal(0.3).unwrap(), 1.0).unwrap();
        let t = transition_matrix(&h).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(close(t.probs[i][j], want, 1e-12), "({i},{j}) = {}", t.probs[i][j]);
            }
        }
    }

    #[test]
    fn transition_under_independence() {
        let h = haplotype_table(AlleleFreqs::new(0.3, 0.2).unwrap(), 0.0).unwrap();
        let t = transition_matrix(&h).unwrap();
        let g_star = hwe_genotype_freqs(0.2);
        for j in 0..3 {
            for i in 0..3 {
                assert!(close(t.probs[i][j], g_star[i], 1e-12));
            }
        }
    }

    #[test]
    fn transition_matches_haplotype_ratios() {
        // Conditional probabilities written directly from haplotype products.
        let h = haplotype_table(AlleleFreqs::equal(0.3).unwrap(), 0.8).unwrap();
        let t = transition_matrix(&h).unwrap();
        let (aa, ab, ba, bb) = (h.p_aa, h.p_ab, h.p_ba, h.p_bb);
        let den0 = aa * aa + 2.0 * aa * ab + ab * ab;
        let den1 = aa * ba + aa * bb + ab * ba + ab * bb;
        let den2 = ba * ba + 2.0 * ba * bb + bb * bb;
        let direct = [
            [aa * aa / den0, aa * ba / den1, ba * ba / den2],
            [2.0 * aa * ab / den0, (aa * bb + ab * ba) / den1, 2.0 * ba * bb / den2],
            [ab * ab / den0, ab * bb / den1, bb * bb / den2],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!(close(t.probs[i][j], direct[i][j], 1e-12));
            }
        }
        let f1 = (0.49 + 0.168) / 0.7;
        assert!(close(t.probs[0][0], f1 * f1, 1e-12));
        for s in t.column_sums() {
            assert!(close(s, 1.0, 1e-12));
        }
    }

    #[test]
    fn penetrance_paths_agree() {
        let h = haplotype_table(AlleleFreqs::new(0.25, 0.4).unwrap(), 0.7).unwrap();
        let fs = PenetranceTriple::new(0.05, 0.08, 0.15).unwrap();
        let a = marker_penetrances(&fs, &h).unwrap();
        let b = transition_matrix(&h).unwrap().push_forward(&fs);
        for (x, y) in a.as_array().iter().zip(b.as_array()) {
            assert!(close(*x, y, 1e-12));
        }
    }

    #[test]
    fn marker_penetrances_limits() {
        let fs = PenetranceTriple::new(0.0779, 0.0779, 0.1558).unwrap();
        let h = haplotype_table(AlleleFreqs::equal(0.3).unwrap(), 1.0).unwrap();
        let f = marker_penetrances(&fs, &h).unwrap();
        for (x, y) in f.as_array().iter().zip(fs.as_array()) {
            assert!(close(*x, y, 1e-12));
        }

        let h = haplotype_table(AlleleFreqs::equal(0.3).unwrap(), 0.0).unwrap();
        let f = marker_penetrances(&fs, &h).unwrap();
        let g = hwe_genotype_freqs(0.3);
        let pop: f64 = g.iter().zip(fs.as_array()).map(|(g, f)| g * f).sum();
        for x in f.as_array() {
            assert!(close(x, pop, 1e-12));
        }
    }

    #[test]
    fn rec_marker_grr_at_partial_ld() {
        let fs = PenetranceTriple::new(0.0779, 0.0779, 0.1558).unwrap();
        let h = haplotype_table(AlleleFreqs::equal(0.3).unwrap(), 0.8).unwrap();
        let grr = marker_penetrances(&fs, &h).unwrap().grr();
        assert!(close(grr.lambda1, 1.05, 0.005), "{grr:?}");
        assert!(close(grr.lambda2, 1.73, 0.005), "{grr:?}");
    }

    #[test]
    fn marker_grr_examples() {
        let f = AlleleFreqs::equal(0.3).unwrap();
        let dom = marker_grr(GeneticModel::Dom, 2.0, f, 0.8, 0.1).unwrap();
        assert!(close(dom.lambda1, 1.67, 0.005) && close(dom.lambda2, 1.77, 0.005), "{dom:?}");
        let add = marker_grr(GeneticModel::Add, 2.0, f, 0.6, 0.1).unwrap();
        assert!(close(add.lambda1, 1.27, 0.005) && close(add.lambda2, 1.54, 0.005), "{add:?}");
        for model in GeneticModel::ALL {
            for k in [0.01, 0.1, 0.3] {
                let g = marker_grr(model, 2.0, f, 1.0, k).unwrap();
                let star = grr_from_model(model, 2.0).unwrap();
                assert!(close(g.lambda1, star.lambda1, 1e-12));
                assert!(close(g.lambda2, star.lambda2, 1e-12));
            }
        }
    }

    #[test]
    fn grr_from_model_cases() {
        let add = grr_from_model(GeneticModel::Add, 2.0).unwrap();
        assert_eq!((add.lambda1, add.lambda2), (1.5, 2.0));
        let mul = grr_from_model(GeneticModel::Mul, 2.0).unwrap();
        assert!(close(mul.lambda1, std::f64::consts::SQRT_2, 1e-15));
        let rec = grr_from_model(GeneticModel::Rec, 1.0).unwrap();
        assert_eq!((rec.lambda1, rec.lambda2), (1.0, 1.0));
        assert_eq!(grr_from_model(GeneticModel::Dom, 3.0).unwrap().lambda1, 3.0);
        assert!(grr_from_model(GeneticModel::Dom, 0.9).is_err());
    }

    #[test]
    fn baseline_penetrance_cases() {
        let rec = grr_from_model(GeneticModel::Rec, 2.0).unwrap();
        let f0 = baseline_penetrance(0.1, 0.3, rec).unwrap();
        assert!(close(f0, 0.1 / 1.09, 1e-15));
        assert!(close(f0, 0.0917431, 1e-6));

        let null = GrrPair::new(1.0, 1.0).unwrap();
        for q in [0.05, 0.3, 0.9] {
            assert!(close(baseline_penetrance(0.1, q, null).unwrap(), 0.1, 1e-15));
        }

        // 0.5 / (0.25 + 1.5 + 0.75) = 0.2, so f*2 = 0.6 stays valid.
        let dom = grr_from_model(GeneticModel::Dom, 3.0).unwrap();
        assert!(close(baseline_penetrance(0.5, 0.5, dom).unwrap(), 0.2, 1e-15));
        // 0.5 / 1.02 * 3 > 1.
        let rec3 = grr_from_model(GeneticModel::Rec, 3.0).unwrap();
        assert!(matches!(
            baseline_penetrance(0.5, 0.1, rec3),
            Err(Error::PenetranceOutOfRange(_))
        ));
        assert!(baseline_penetrance(0.0, 0.3, rec).is_err());
    }

    #[test]
    fn case_control_dists_cases() {
        let null = PenetranceTriple::new(0.1, 0.1, 0.1).unwrap();
        let (case, control) = case_control_dists(&null, 0.3, 0.1).unwrap();
        let g = hwe_genotype_freqs(0.3);
        for i in 0..3 {
            assert!(close(case[i], g[i], 1e-12));
            assert!(close(control[i], g[i], 1e-12));
        }

        let f = PenetranceTriple::new(0.05, 0.10, 0.20).unwrap();
        let (case, control) = case_control_dists(&f, 0.5, 0.1125).unwrap();
        assert!(close(case[2], 0.25 * 0.20 / 0.1125, 1e-12));
        assert!(close(case.iter().sum::<f64>(), 1.0, 1e-12));
        assert!(close(control.iter().sum::<f64>(), 1.0, 1e-12));

        assert!(matches!(
            case_control_dists(&f, 0.5, 0.1),
            Err(Error::InconsistentPrevalence { .. })
        ));
    }

    #[test]
    fn rec_cases_carry_more_risk_alleles() {
        let fs = functional_penetrances(GeneticModel::Rec, 2.0, 0.3, 0.1).unwrap();
        let h = haplotype_table(AlleleFreqs::equal(0.3).unwrap(), 0.8).unwrap();
        let f = marker_penetrances(&fs, &h).unwrap();
        let (case, control) = case_control_dists(&f, 0.3, 0.1).unwrap();
        // First-order stochastic dominance in the number of B alleles.
        assert!(case[0] < control[0]);
        assert!(case[0] + case[1] < control[0] + control[1]);
    }

    #[test]
    fn hwd_examples() {
        assert_eq!(hwd_coefficient(&hwe_genotype_freqs(0.37)).abs() < 1e-15, true);
        let pair = hwd_coefficients(&[0.25, 0.5, 0.25], &[0.16, 0.48, 0.36]);
        assert!(close(pair.delta_case, 0.0, 1e-15));
        assert!(close(pair.delta_control, 0.0, 1e-15));
    }

    #[test]
    fn hwd_signs_follow_functional_model() {
        let freqs = AlleleFreqs::equal(0.3).unwrap();
        for d_prime in [1.0, 0.8, 0.6] {
            let h = haplotype_table(freqs, d_prime).unwrap();
            for (model, case_sign, control_sign) in
                [(GeneticModel::Rec, 1.0, -1.0), (GeneticModel::Dom, -1.0, 1.0)]
            {
                let fs = functional_penetrances(model, 2.0, 0.3, 0.1).unwrap();
                let f = marker_penetrances(&fs, &h).unwrap();
                let (case, control) = case_control_dists(&f, 0.3, 0.1).unwrap();
                let pair = hwd_coefficients(&case, &control);
                assert_eq!(pair.delta_case.signum(), case_sign, "{model} D'={d_prime}");
                assert_eq!(pair.delta_control.signum(), control_sign, "{model} D'={d_prime}");
            }
        }
    }

    #[test]
    fn model_names_round_trip() {
        for m in GeneticModel::ALL {
            assert_eq!(m.as_str().parse::<GeneticModel>().unwrap(), m);
        }
        assert!("XYZ".parse::<GeneticModel>().is_err());
    }
}
