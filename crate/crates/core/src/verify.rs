//! Exhaustive checks of the closed formulas for Hom and Ext against the linear-algebra
//! oracles, and of exactness for every extension sequence and resolution.

use serde::Serialize;

use crate::error::Result;
use crate::homology::{complex_homology_dims, ext_profile, hom_dim_oracle};
use crate::linalg::PrimeField;
use crate::par;
use crate::reps::ModuleCategory;
use crate::tuples::{e_ext, e_hom};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub n: u32,
    pub d: u32,
    pub p: u32,
    pub pairs: usize,
    /// `(x, y)` with `dim Hom(M_x, M_y)` different from the `E_Hom` indicator.
    pub hom_mismatches: Vec<(String, String)>,
    /// `(x, y)` with `dim Ext^d(M_y, M_x)` different from the `x E_Ext y` indicator.
    pub ext_mismatches: Vec<(String, String)>,
    /// `(x, y, i)` with `Ext^i(M_y, M_x) != 0` for some `1 <= i < d`.
    pub intermediate_violations: Vec<(String, String, usize)>,
}

impl GridReport {
    pub fn is_clean(&self) -> bool {
        self.hom_mismatches.is_empty()
            && self.ext_mismatches.is_empty()
            && self.intermediate_violations.is_empty()
    }
}

/// Runs both oracles over every ordered pair of indecomposables.
pub fn formula_grid(n: u32, d: u32, field: PrimeField) -> Result<GridReport> {
    let cat = ModuleCategory::new(n, d, field)?;
    let tuples = cat.indecomposables();
    let pairs: Vec<(usize, usize)> =
        (0..tuples.len()).flat_map(|i| (0..tuples.len()).map(move |j| (i, j))).collect();
    let results = par::map(&pairs, |&(i, j)| -> Result<_> {
        let (x, y) = (&tuples[i], &tuples[j]);
        let hom = hom_dim_oracle(&cat, x, y)?;
        let ext = ext_profile(&cat, y, x)?;
        Ok((hom, ext, e_hom(x, y)?, e_ext(x, y)?))
    });
    let mut report = GridReport { n, d, p: field.characteristic(), pairs: pairs.len(), ..Default::default() };
    for (&(i, j), res) in pairs.iter().zip(results) {
        let (hom, ext, hom_formula, ext_formula) = res?;
        let (x, y) = (tuples[i].to_string(), tuples[j].to_string());
        if hom != hom_formula as usize {
            report.hom_mismatches.push((x.clone(), y.clone()));
        }
        if ext[d as usize - 1] != ext_formula as usize {
            report.ext_mismatches.push((x.clone(), y.clone()));
        }
        for (k, &dim) in ext[..d as usize - 1].iter().enumerate() {
            if dim != 0 {
                report.intermediate_violations.push((x.clone(), y.clone(), k + 1));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub n: u32,
    pub d: u32,
    pub p: u32,
    pub sequences: usize,
    pub resolutions: usize,
    /// Complexes with a nonzero composite or nonzero homology, with a description.
    pub failures: Vec<String>,
}

impl ExactnessReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `E_{xy}` for every `x E_Ext y` and the resolutions of every indecomposable `M_x`
/// for every `s < x_0` (the minimal projective one at `s = 1` included).
pub fn exactness_suite(n: u32, d: u32, field: PrimeField) -> Result<ExactnessReport> {
    let cat = ModuleCategory::new(n, d, field)?;
    let tuples = cat.indecomposables();
    let mut ext_pairs = Vec::new();
    for x in &tuples {
        for y in &tuples {
            if e_ext(x, y)? {
                ext_pairs.push((x.clone(), y.clone()));
            }
        }
    }
    let check = |label: String, c: Result<crate::reps::RepComplex>| -> Option<String> {
        match c.and_then(|c| complex_homology_dims(&cat, &c)) {
            Ok(h) if h.iter().all(|&v| v == 0) => None,
            Ok(h) => Some(format!("{label}: homology {h:?}")),
            Err(e) => Some(format!("{label}: {e}")),
        }
    };
    let mut failures: Vec<String> =
        par::map(&ext_pairs, |(x, y)| check(format!("E({x}; {y})"), cat.ext_sequence(x, y)))
            .into_iter()
            .flatten()
            .collect();
    let resolvable: Vec<_> =
        tuples.iter().flat_map(|x| (1..x.entries()[0]).map(move |s| (x.clone(), s))).collect();
    failures.extend(
        par::map(&resolvable, |(x, s)| check(format!("resolution({x}; s={s})"), cat.resolution(x, *s)))
            .into_iter()
            .flatten(),
    );
    Ok(ExactnessReport {
        n,
        d,
        p: field.characteristic(),
        sequences: ext_pairs.len(),
        resolutions: resolvable.len(),
        failures,
    })
}
