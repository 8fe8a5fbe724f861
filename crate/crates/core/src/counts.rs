use std::fmt;

use crate::error::{invalid, Result};

/// A 2×3 case/control table of genotype counts ordered by the number of
/// B alleles: `(AA, AB, BB)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenotypeCounts {
    pub cases: [u64; 3],
    pub controls: [u64; 3],
}

impl GenotypeCounts {
    /// Both groups must be nonempty.
    pub fn new(cases: [u64; 3], controls: [u64; 3]) -> Result<Self> {
        let c = Self { cases, controls };
        if c.r() == 0 || c.s() == 0 {
            return Err(invalid(format!("table {c} has an empty case or control group")));
        }
        Ok(c)
    }

    pub fn r(&self) -> u64 {
        self.cases.iter().sum()
    }

    pub fn s(&self) -> u64 {
        self.controls.iter().sum()
    }

    pub fn n(&self) -> u64 {
        self.r() + self.s()
    }

    /// Column totals `n_i = r_i + s_i`.
    pub fn column_totals(&self) -> [u64; 3] {
        [
            self.cases[0] + self.controls[0],
            self.cases[1] + self.controls[1],
            self.cases[2] + self.controls[2],
        ]
    }

    /// The table with the allele labels swapped (G0 ↔ G2).
    pub fn reversed(&self) -> Self {
        let rev = |a: [u64; 3]| [a[2], a[1], a[0]];
        Self { cases: rev(self.cases), controls: rev(self.controls) }
    }

    pub fn case_proportions(&self) -> [f64; 3] {
        proportions(self.cases)
    }

    pub fn control_proportions(&self) -> [f64; 3] {
        proportions(self.controls)
    }
}

fn proportions(v: [u64; 3]) -> [f64; 3] {
    let t = (v[0] + v[1] + v[2]) as f64;
    [v[0] as f64 / t, v[1] as f64 / t, v[2] as f64 / t]
}

impl fmt::Display for GenotypeCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r0, r1, r2] = self.cases;
        let [s0, s1, s2] = self.controls;
        write!(f, "r=({r0},{r1},{r2}) s=({s0},{s1},{s2})")
    }
}
