//! Problem files and resolution of coefficient inputs.

use std::path::Path;

use serde::Deserialize;
use toeplitz_lmi::polynomial::symmetrized_product;
use toeplitz_lmi::{MonicPolynomial, TrigPolynomial};

/// Coefficients stored in a JSON file, ascending powers.
///
/// ```json
/// {"kind": "trig", "p": [2, 1, 0.8]}
/// {"kind": "pair", "n": 2, "c": [0, 0], "d": [0.8, 1]}
/// ```
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProblemFile {
    Trig { p: Vec<f64> },
    Pair { n: usize, c: Vec<f64>, d: Vec<f64> },
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: Self = serde_json::from_str(text).map_err(|e| e.to_string())?;
        match &file {
            ProblemFile::Trig { p } if p.is_empty() => Err("p must not be empty".into()),
            ProblemFile::Pair { n, c, d } if *n == 0 || c.len() != *n || d.len() != *n => {
                Err(format!(
                    "pair needs n >= 1 and n coefficients in c and d (n = {n}, |c| = {}, |d| = {})",
                    c.len(),
                    d.len()
                ))
            }
            _ => Ok(file),
        }
    }
}

/// Inline coefficient lists with an optional problem file behind them.
/// Each inline list replaces the corresponding file entry.
#[derive(Debug, Default)]
pub struct Inputs {
    pub p: Option<Vec<f64>>,
    pub c: Option<Vec<f64>>,
    pub d: Option<Vec<f64>>,
}

impl Inputs {
    pub fn new(
        p: Option<Vec<f64>>,
        c: Option<Vec<f64>>,
        d: Option<Vec<f64>>,
        file: Option<&Path>,
    ) -> Result<Self, String> {
        let mut inputs = Inputs { p, c, d };
        match file.map(ProblemFile::load).transpose()? {
            Some(ProblemFile::Trig { p }) => {
                inputs.p.get_or_insert(p);
            }
            Some(ProblemFile::Pair { c, d, .. }) => {
                inputs.c.get_or_insert(c);
                inputs.d.get_or_insert(d);
            }
            None => {}
        }
        Ok(inputs)
    }

    pub fn central(&self) -> Result<MonicPolynomial, String> {
        monic("c", self.c.as_ref())
    }

    pub fn design(&self) -> Result<MonicPolynomial, String> {
        monic("d", self.d.as_ref())
    }

    /// `p` when given inline, otherwise the symmetrized product of `c` and
    /// `d`, otherwise `p` from the file.
    pub fn trig(&self) -> Result<TrigPolynomial, String> {
        if let Some(p) = &self.p {
            return TrigPolynomial::new(p.clone()).map_err(|e| format!("p: {e}"));
        }
        if self.c.is_none() && self.d.is_none() {
            return Err("missing coefficients: give --p, or --c and --d".into());
        }
        symmetrized_product(&self.central()?, &self.design()?).map_err(|e| e.to_string())
    }
}

fn monic(name: &str, coeffs: Option<&Vec<f64>>) -> Result<MonicPolynomial, String> {
    let coeffs = coeffs.ok_or_else(|| format!("missing coefficients: give --{name}"))?;
    MonicPolynomial::new(coeffs.clone()).map_err(|e| format!("{name}: {e}"))
}
