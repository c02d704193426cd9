//! Closed-form singular systems and the basis families built on them.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use super::poly::{jacobi_sequence, legendre_sequence};
use super::quadrature::{riemann_liouville_with, GaussLegendre};
use super::special::{gamma, log_gamma};
use crate::error::{Error, Result};

/// Relative agreement the printed fractional σ must reach before it is trusted.
pub const PRINTED_SIGMA_RTOL: f64 = 1e-6;

/// Interior abscissae used to fit `I^μ v_j = σ_j u_j` by least squares.
const ORACLE_POINTS: usize = 17;

/// Which family of basis functions expands the data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "FamilyRepr", try_from = "FamilyRepr")]
pub enum BasisFamily {
    /// Singular system of `∫_0^x` on `[0, 1]`: sines for data, cosines for source.
    TrigIntegration,
    /// Singular system of the Riemann–Liouville integral of order `mu` on `[-1, 1]`.
    FractionalJacobi { mu: f64 },
    /// Orthonormal Legendre polynomials on `[-1, 1]`; the source is the derivative.
    LegendreGeneric,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
enum FamilyRepr {
    Trig,
    Fractional { mu: f64 },
    Legendre,
}

impl From<BasisFamily> for FamilyRepr {
    fn from(f: BasisFamily) -> Self {
        match f {
            BasisFamily::TrigIntegration => FamilyRepr::Trig,
            BasisFamily::FractionalJacobi { mu } => FamilyRepr::Fractional { mu },
            BasisFamily::LegendreGeneric => FamilyRepr::Legendre,
        }
    }
}

impl TryFrom<FamilyRepr> for BasisFamily {
    type Error = Error;

    fn try_from(r: FamilyRepr) -> Result<Self> {
        match r {
            FamilyRepr::Trig => Ok(BasisFamily::TrigIntegration),
            FamilyRepr::Fractional { mu } => BasisFamily::fractional(mu),
            FamilyRepr::Legendre => Ok(BasisFamily::LegendreGeneric),
        }
    }
}

impl BasisFamily {
    pub fn fractional(mu: f64) -> Result<Self> {
        check_mu(mu)?;
        Ok(BasisFamily::FractionalJacobi { mu })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            BasisFamily::FractionalJacobi { mu } => check_mu(mu),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BasisFamily::TrigIntegration => "trig",
            BasisFamily::FractionalJacobi { .. } => "fractional",
            BasisFamily::LegendreGeneric => "legendre",
        }
    }

    pub fn mu(&self) -> Option<f64> {
        match *self {
            BasisFamily::FractionalJacobi { mu } => Some(mu),
            _ => None,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            BasisFamily::TrigIntegration => (0.0, 1.0),
            _ => (-1.0, 1.0),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let (a, b) = self.domain();
        x >= a && x <= b
    }

    /// Largest column count used unless the caller overrides it. The fractional
    /// design matrix loses rank around ninety columns on a 250-point grid.
    pub fn default_column_cap(&self, m: usize) -> usize {
        match self {
            BasisFamily::FractionalJacobi { .. } => m.min(90),
            _ => m,
        }
    }

    /// Whether the source expansion is `Σ (ξ_j/σ_j) v_j` (true) or a termwise
    /// derivative of the data expansion (false).
    pub fn has_singular_system(&self) -> bool {
        !matches!(self, BasisFamily::LegendreGeneric)
    }

    /// Data-side functions `u_1(x), ..., u_n(x)`.
    pub fn data_row(&self, n: usize, x: f64) -> Vec<f64> {
        if n == 0 {
            return Vec::new();
        }
        match *self {
            BasisFamily::TrigIntegration => (1..=n).map(|j| trig_u(j, x)).collect(),
            BasisFamily::FractionalJacobi { mu } => {
                let weight = (1.0 + x).max(0.0).powf(mu);
                jacobi_sequence(n - 1, -mu, mu, x)
                    .into_iter()
                    .enumerate()
                    .map(|(k, p)| fractional_norm(k + 1, mu) * weight * p)
                    .collect()
            }
            BasisFamily::LegendreGeneric => legendre_sequence(n - 1, x)
                .into_iter()
                .enumerate()
                .map(|(k, p)| legendre_scale(k + 1) * p)
                .collect(),
        }
    }

    /// Source-side functions at `x`: `v_1..v_n`, or `u'_1..u'_n` for Legendre.
    pub fn source_row(&self, n: usize, x: f64) -> Vec<f64> {
        if n == 0 {
            return Vec::new();
        }
        match *self {
            BasisFamily::TrigIntegration => (1..=n).map(|j| trig_v(j, x)).collect(),
            BasisFamily::FractionalJacobi { .. } => legendre_sequence(n - 1, x)
                .into_iter()
                .enumerate()
                .map(|(k, p)| ((2 * k + 1) as f64).sqrt() * p)
                .collect(),
            BasisFamily::LegendreGeneric => {
                let p = legendre_sequence(n, x);
                let mut d = vec![0.0; n];
                // d[k] = P'_k
                if n > 1 {
                    d[1] = 1.0;
                }
                for k in 2..n {
                    d[k] = d[k - 2] + (2 * k - 1) as f64 * p[k - 1];
                }
                d.iter()
                    .enumerate()
                    .map(|(k, dk)| legendre_scale(k + 1) * dk)
                    .collect()
            }
        }
    }

    /// The singular triple for index `j`; `None` for the Legendre family.
    pub fn singular_triple(&self, j: usize) -> Result<Option<SingularTriple>> {
        match *self {
            BasisFamily::TrigIntegration => trig_singular_triple(j).map(Some),
            BasisFamily::FractionalJacobi { mu } => frac_singular_triple(j, mu).map(Some),
            BasisFamily::LegendreGeneric => Ok(None),
        }
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("fractional order must lie in (0,1), got {mu}")))
    }
}

fn trig_c(j: usize) -> f64 {
    j as f64 - 0.5
}

fn trig_u(j: usize, x: f64) -> f64 {
    SQRT_2 * (trig_c(j) * PI * x).sin()
}

fn trig_v(j: usize, x: f64) -> f64 {
    SQRT_2 * (trig_c(j) * PI * x).cos()
}

/// `√((2j-1)/2)`, making `√((2j-1)/2) P_{j-1}` orthonormal on `[-1, 1]`.
fn legendre_scale(j: usize) -> f64 {
    ((2 * j - 1) as f64 / 2.0).sqrt()
}

/// `c_j = √((j-½) Γ(j)² / (Γ(j-μ) Γ(j+μ)))`.
pub fn fractional_norm(j: usize, mu: f64) -> f64 {
    let jf = j as f64;
    let ln = (jf - 0.5).ln() + 2.0 * log_gamma(jf).expect("j >= 1")
        - log_gamma(jf - mu).expect("j - mu > 0")
        - log_gamma(jf + mu).expect("j + mu > 0");
    (0.5 * ln).exp()
}

/// Candidate closed form `√(Γ(j-½-μ)/Γ(j-½+μ))`. It does not satisfy the
/// forward relation with these `u_j`, `v_j` and is kept for comparison only.
/// May be non-finite (`j = 1, μ = ½` hits the pole of Γ at zero).
pub fn printed_fractional_sigma(j: usize, mu: f64) -> f64 {
    let jf = j as f64;
    let ratio = gamma(jf - 0.5 - mu) / gamma(jf - 0.5 + mu);
    if ratio.is_finite() && ratio > 0.0 {
        ratio.sqrt()
    } else if ratio.is_nan() || ratio < 0.0 {
        f64::NAN
    } else {
        f64::INFINITY
    }
}

/// Where a singular value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaSource {
    /// Exact expression (integration operator).
    ClosedForm,
    /// The candidate closed form, confirmed by quadrature.
    Printed,
    /// Least-squares fit of `I^μ v_j` against `u_j` by quadrature.
    QuadratureOracle,
}

/// `(σ_j, v_j, u_j)` with `A v_j = σ_j u_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularTriple {
    family: BasisFamily,
    index: usize,
    sigma: f64,
    source: SigmaSource,
    printed_sigma: Option<f64>,
}

impl SingularTriple {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn sigma_source(&self) -> SigmaSource {
        self.source
    }

    /// The candidate closed-form σ, kept even when rejected.
    pub fn printed_sigma(&self) -> Option<f64> {
        self.printed_sigma
    }

    /// True when a closed form exists but was unusable or disagreed.
    pub fn printed_sigma_rejected(&self) -> bool {
        self.printed_sigma.is_some() && self.source == SigmaSource::QuadratureOracle
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn u(&self, x: f64) -> f64 {
        match self.family {
            BasisFamily::TrigIntegration => trig_u(self.index, x),
            _ => *self.family.data_row(self.index, x).last().expect("index >= 1"),
        }
    }

    pub fn v(&self, x: f64) -> f64 {
        match self.family {
            BasisFamily::TrigIntegration => trig_v(self.index, x),
            _ => *self.family.source_row(self.index, x).last().expect("index >= 1"),
        }
    }
}

/// `σ_j = 1/(π c_j)`, `v_j = √2 cos(c_j π x)`, `u_j = √2 sin(c_j π x)`, `c_j = j - ½`.
pub fn trig_singular_triple(j: usize) -> Result<SingularTriple> {
    if j < 1 {
        return Err(Error::domain("singular triples are indexed from 1"));
    }
    Ok(SingularTriple {
        family: BasisFamily::TrigIntegration,
        index: j,
        sigma: 1.0 / (PI * trig_c(j)),
        source: SigmaSource::ClosedForm,
        printed_sigma: None,
    })
}

/// Fractional-integration triple with `v_j = √(2j-1) P_{j-1}` and
/// `u_j = c_j (1+x)^μ P_{j-1}^{(-μ,μ)}`.
///
/// σ_j is whatever makes `I^μ v_j = σ_j u_j` hold. The candidate closed form is
/// used only if it is finite and matches the quadrature fit to
/// [`PRINTED_SIGMA_RTOL`]; otherwise the fitted value is returned and the
/// rejected printed value stays available on the triple.
pub fn frac_singular_triple(j: usize, mu: f64) -> Result<SingularTriple> {
    check_mu(mu)?;
    if j < 1 {
        return Err(Error::domain("singular triples are indexed from 1"));
    }
    let family = BasisFamily::FractionalJacobi { mu };
    let oracle = fractional_sigma_by_quadrature(j, mu)?;
    let printed = printed_fractional_sigma(j, mu);
    let agrees = printed.is_finite() && ((printed - oracle).abs() <= PRINTED_SIGMA_RTOL * oracle.abs());
    let (sigma, source) = if agrees {
        (printed, SigmaSource::Printed)
    } else {
        log::debug!(
            "printed fractional sigma rejected at j={j}, mu={mu}: printed {printed}, quadrature {oracle}"
        );
        (oracle, SigmaSource::QuadratureOracle)
    };
    Ok(SingularTriple {
        family,
        index: j,
        sigma,
        source,
        printed_sigma: Some(printed),
    })
}

/// Least-squares ratio `Σ (I^μ v_j)(x_k) u_j(x_k) / Σ u_j(x_k)²` over interior points.
pub fn fractional_sigma_by_quadrature(j: usize, mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let family = BasisFamily::FractionalJacobi { mu };
    let rule = GaussLegendre::default_rule();
    let v = |y: f64| *family.source_row(j, y).last().expect("j >= 1");
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 1..=ORACLE_POINTS {
        let x = -1.0 + 2.0 * k as f64 / (ORACLE_POINTS + 1) as f64;
        let lhs = riemann_liouville_with(rule, v, mu, -1.0, x)?;
        let u = *family.data_row(j, x).last().expect("j >= 1");
        num += lhs * u;
        den += u * u;
    }
    if den == 0.0 {
        return Err(Error::Degenerate(format!("u_{j} vanishes on the oracle points")));
    }
    Ok(num / den)
}
