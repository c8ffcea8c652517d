//! Domain types describing one explicit KP solution: the family tag, its
//! spectral or soliton modes, and evaluation points.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which closed-form family the solution belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Harmonic-breather superpositions (sin/cos interaction matrix).
    Trigonometric,
    /// Solitonic-dipole superpositions (sinh/cosh interaction matrix).
    Hyperbolic,
    /// Multi-soliton solutions (exponential matrix, complex-capable).
    Soliton,
}

/// One breather/dipole mode: wavenumber `lambda`, transverse slope `mu`,
/// mixing angle `chi`, and the two phase offsets `gamma` (for the
/// oscillatory phase) and `rho` (for the secular factor).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralMode {
    pub lambda: f64,
    pub mu: f64,
    pub chi: f64,
    pub gamma: f64,
    pub rho: f64,
}

impl SpectralMode {
    pub fn new(lambda: f64, mu: f64, chi: f64, gamma: f64, rho: f64) -> Self {
        Self { lambda, mu, chi, gamma, rho }
    }

    /// Diagonal entries divide by 2*lambda, so lambda must be nonzero.
    pub fn validate(&self, index: usize) -> Result<()> {
        let all = [self.lambda, self.mu, self.chi, self.gamma, self.rho];
        if !all.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidMode { index, reason: "non-finite parameter".into() });
        }
        if self.lambda == 0.0 {
            return Err(Error::InvalidMode { index, reason: "lambda must be nonzero".into() });
        }
        Ok(())
    }
}

/// One soliton triple (p, q, c). Real solitons have zero imaginary parts;
/// complex triples must come in conjugate pairs (mode 2k-1 conjugate to 2k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonMode {
    pub p: Complex64,
    pub q: Complex64,
    pub c: Complex64,
}

impl SolitonMode {
    pub fn real(p: f64, q: f64, c: f64) -> Self {
        Self { p: Complex64::new(p, 0.0), q: Complex64::new(q, 0.0), c: Complex64::new(c, 0.0) }
    }

    pub fn is_real(&self) -> bool {
        self.p.im == 0.0 && self.q.im == 0.0 && self.c.im == 0.0
    }
}

/// KP-coordinate evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl EvalPoint {
    pub fn new(x: f64, y: f64, t: f64) -> Self {
        Self { x, y, t }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.t.is_finite()
    }
}

/// A validated solution: family + modes + alpha.
///
/// Only alpha = 1 is supported; every off-diagonal denominator is checked
/// at construction so evaluation never divides by zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSpec {
    family: Family,
    spectral: Vec<SpectralMode>,
    solitons: Vec<SolitonMode>,
    alpha: f64,
}

/// Dense per-point work is O(N^3); keep N small enough that it stays cheap.
pub const MAX_MODES: usize = 32;

impl SolutionSpec {
    /// Build a trigonometric (harmonic breather) solution.
    pub fn trigonometric(modes: Vec<SpectralMode>) -> Result<Self> {
        Self::spectral_family(Family::Trigonometric, modes)
    }

    /// Build a hyperbolic (solitonic dipole) solution.
    pub fn hyperbolic(modes: Vec<SpectralMode>) -> Result<Self> {
        Self::spectral_family(Family::Hyperbolic, modes)
    }

    fn spectral_family(family: Family, modes: Vec<SpectralMode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidSpec("at least one mode required".into()));
        }
        if modes.len() > MAX_MODES {
            return Err(Error::InvalidSpec(format!("more than {MAX_MODES} modes")));
        }
        for (i, m) in modes.iter().enumerate() {
            m.validate(i)?;
        }
        let alpha = 1.0;
        // Off-diagonal denominators alpha^2 (mu_n - mu_k)^2 +/- (lambda_n +/- lambda_k)^2
        // must be nonzero for every pair.
        for n in 0..modes.len() {
            for k in 0..n {
                let dmu2 = alpha * alpha * (modes[n].mu - modes[k].mu).powi(2);
                let lm = (modes[n].lambda - modes[k].lambda).powi(2);
                let lp = (modes[n].lambda + modes[k].lambda).powi(2);
                let degenerate = match family {
                    Family::Trigonometric => dmu2 + lm == 0.0 || dmu2 + lp == 0.0,
                    Family::Hyperbolic => dmu2 - lm == 0.0 || dmu2 - lp == 0.0,
                    Family::Soliton => unreachable!(),
                };
                if degenerate {
                    return Err(Error::DegenerateModes(k, n));
                }
            }
        }
        Ok(Self { family, spectral: modes, solitons: Vec::new(), alpha })
    }

    /// Build a multi-soliton solution. Complex triples must be arranged in
    /// conjugate pairs (2k-1, 2k); p_n + q_m must be nonzero for all pairs.
    pub fn soliton(modes: Vec<SolitonMode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidSpec("at least one mode required".into()));
        }
        if modes.len() > MAX_MODES {
            return Err(Error::InvalidSpec(format!("more than {MAX_MODES} modes")));
        }
        for (i, m) in modes.iter().enumerate() {
            let fin = [m.p, m.q, m.c];
            if !fin.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::InvalidMode { index: i, reason: "non-finite parameter".into() });
            }
        }
        for n in 0..modes.len() {
            for m in 0..modes.len() {
                if (modes[n].p + modes[m].q).norm() == 0.0 {
                    return Err(Error::SingularDenominator { n, m });
                }
            }
        }
        // Complex modes only in conjugate pairs.
        let mut i = 0;
        while i < modes.len() {
            if modes[i].is_real() {
                i += 1;
                continue;
            }
            let partner = i + 1;
            let paired = partner < modes.len()
                && modes[partner].p == modes[i].p.conj()
                && modes[partner].q == modes[i].q.conj()
                && modes[partner].c == modes[i].c.conj();
            if !paired {
                return Err(Error::InvalidMode {
                    index: i,
                    reason: "complex soliton modes must come in conjugate pairs".into(),
                });
            }
            i += 2;
        }
        Ok(Self { family: Family::Soliton, spectral: Vec::new(), solitons: modes, alpha: 1.0 })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        match self.family {
            Family::Soliton => self.solitons.len(),
            _ => self.spectral.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Spectral modes (empty for the soliton family).
    pub fn spectral_modes(&self) -> &[SpectralMode] {
        &self.spectral
    }

    /// Soliton modes (empty for the spectral families).
    pub fn soliton_modes(&self) -> &[SolitonMode] {
        &self.solitons
    }

    /// True when every soliton triple is real.
    pub fn is_real_soliton(&self) -> bool {
        self.solitons.iter().all(SolitonMode::is_real)
    }
}
