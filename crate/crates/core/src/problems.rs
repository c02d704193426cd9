//! Test problems with closed-form data and source functions, equispaced grids,
//! and reproducible Gaussian noise.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::basis::BasisFamily;
use crate::error::{Error, Result};
use crate::regularize::NoisyDataset;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_M: usize = 250;
pub const DEFAULT_SIGMA: f64 = 0.05;

/// Interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
        }
        Ok(Self { a, b })
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CraigBrownVariant {
    /// Posed on `[0, 2]`.
    Original,
    /// Rescaled to `[0, 1]`.
    Transformed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubicVariant {
    /// `g = ½(1 + (2x-1)³)` on `[0, 1]`.
    UnitInterval,
    /// `g = ½(1 + x³)` on `[-1, 1]`.
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    CraigBrown {
        alpha: f64,
        beta: f64,
        omega: f64,
        /// 1 on `[0, 2]`, 2 on `[0, 1]`.
        stretch: f64,
    },
    CubicUnit,
    CubicSymmetric,
    Abel,
}

/// A data function `g` and the source `f` it is generated from.
///
/// Every problem has `g(a) = 0` at the left end of its interval.
#[derive(Debug, Clone, PartialEq)]
pub struct TestProblem {
    name: String,
    interval: Interval,
    family: Option<BasisFamily>,
    kind: Kind,
}

impl TestProblem {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    /// Basis family whose operator maps `f` to `g`. `None` for problems only
    /// used with the discrete method (the Craig–Brown problem on `[0, 2]`).
    pub fn family(&self) -> Option<BasisFamily> {
        self.family
    }

    pub fn g(&self, x: f64) -> f64 {
        match self.kind {
            Kind::CraigBrown {
                alpha,
                beta,
                omega,
                stretch: k,
            } => 1.0 - (-k * alpha * x).exp() + beta * (k * omega * x).sin(),
            Kind::CubicUnit => 0.5 * (1.0 + (2.0 * x - 1.0).powi(3)),
            Kind::CubicSymmetric => 0.5 * (1.0 + x.powi(3)),
            Kind::Abel => {
                let t = (x + 1.0) / 2.0;
                if t <= 0.0 {
                    return 0.0;
                }
                2.0 / (105.0 * PI.sqrt()) * t.sqrt() * (105.0 - 56.0 * t * t + 48.0 * t.powi(3))
            }
        }
    }

    pub fn f(&self, x: f64) -> f64 {
        match self.kind {
            Kind::CraigBrown {
                alpha,
                beta,
                omega,
                stretch: k,
            } => k * alpha * (-k * alpha * x).exp() + k * beta * omega * (k * omega * x).cos(),
            Kind::CubicUnit => 3.0 * (2.0 * x - 1.0).powi(2),
            Kind::CubicSymmetric => 1.5 * x * x,
            Kind::Abel => {
                let t = (x + 1.0) / 2.0;
                (t.powi(3) - t * t + 1.0) / SQRT_2
            }
        }
    }

    /// Samples `g` on `sample_grid(m, interval, false)` with constant standard
    /// deviation `noise.sigma`, adding seeded noise unless `noiseless`.
    pub fn dataset(&self, m: usize, noise: NoiseSpec, noiseless: bool) -> Result<NoisyDataset> {
        let xs = sample_grid(m, self.interval, false)?;
        let mut g: Vec<f64> = xs.iter().map(|&x| self.g(x)).collect();
        if !noiseless {
            for (gj, e) in g.iter_mut().zip(gaussian_noise(m, noise)?) {
                *gj += e;
            }
        }
        NoisyDataset::new(xs, g, vec![noise.sigma; m])
    }
}

impl fmt::Display for TestProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on [{}, {}]", self.name, self.interval.a, self.interval.b)
    }
}

/// `g = 1 - e^{-αx} + β sin(ωx)`, `f = g'` on `[0, 2]`; the transformed variant
/// substitutes `x → 2x` and lives on `[0, 1]`.
pub fn craig_brown(alpha: f64, beta: f64, omega: f64, variant: CraigBrownVariant) -> Result<TestProblem> {
    if ![alpha, beta, omega].iter().all(|v| v.is_finite()) {
        return Err(Error::domain("Craig–Brown parameters must be finite"));
    }
    let (interval, stretch, family) = match variant {
        CraigBrownVariant::Original => (Interval { a: 0.0, b: 2.0 }, 1.0, None),
        CraigBrownVariant::Transformed => {
            (Interval { a: 0.0, b: 1.0 }, 2.0, Some(BasisFamily::TrigIntegration))
        }
    };
    Ok(TestProblem {
        name: "craig-brown".into(),
        interval,
        family,
        kind: Kind::CraigBrown {
            alpha,
            beta,
            omega,
            stretch,
        },
    })
}

/// Craig–Brown with `α = 0.8, β = 0.04, ω = 20`.
pub fn craig_brown_default(variant: CraigBrownVariant) -> TestProblem {
    craig_brown(0.8, 0.04, 20.0, variant).expect("finite parameters")
}

pub fn cubic_problem(variant: CubicVariant) -> TestProblem {
    let (interval, family, kind) = match variant {
        CubicVariant::UnitInterval => (
            Interval { a: 0.0, b: 1.0 },
            BasisFamily::TrigIntegration,
            Kind::CubicUnit,
        ),
        CubicVariant::Symmetric => (
            Interval { a: -1.0, b: 1.0 },
            BasisFamily::LegendreGeneric,
            Kind::CubicSymmetric,
        ),
    };
    TestProblem {
        name: "cubic".into(),
        interval,
        family: Some(family),
        kind,
    }
}

/// Abel's equation with `μ = ½` on `[-1, 1]`: `f` is a cubic in `(x+1)/2`.
pub fn abel_problem() -> TestProblem {
    TestProblem {
        name: "abel".into(),
        interval: Interval { a: -1.0, b: 1.0 },
        family: Some(BasisFamily::FractionalJacobi { mu: 0.5 }),
        kind: Kind::Abel,
    }
}

/// Looks a problem up by its CLI name.
pub fn by_name(name: &str) -> Result<TestProblem> {
    match name {
        "craig-brown" => Ok(craig_brown_default(CraigBrownVariant::Transformed)),
        "craig-brown-original" => Ok(craig_brown_default(CraigBrownVariant::Original)),
        "craig-brown-smooth" => craig_brown(0.8, 0.0, 20.0, CraigBrownVariant::Transformed),
        "cubic" => Ok(cubic_problem(CubicVariant::UnitInterval)),
        "cubic-symmetric" => Ok(cubic_problem(CubicVariant::Symmetric)),
        "abel" => Ok(abel_problem()),
        other => Err(Error::domain(format!(
            "unknown problem '{other}' (expected one of: {})",
            PROBLEM_NAMES.join(", ")
        ))),
    }
}

pub const PROBLEM_NAMES: &[&str] = &[
    "craig-brown",
    "craig-brown-original",
    "craig-brown-smooth",
    "cubic",
    "cubic-symmetric",
    "abel",
];

/// `m` equispaced points with spacing `(b-a)/m`, ending at `b`. The left end is
/// included (and `b` dropped) only when `include_left` is set.
pub fn sample_grid(m: usize, interval: Interval, include_left: bool) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::domain("grid needs at least one point"));
    }
    let Interval { a, b } = interval;
    let h = (b - a) / m as f64;
    let offset = if include_left { 0 } else { 1 };
    Ok((0..m)
        .map(|k| {
            let i = k + offset;
            if i == m {
                b
            } else {
                a + i as f64 * h
            }
        })
        .collect())
}

/// Constant standard deviation and PRNG seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(sigma: f64, seed: u64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::domain(format!("noise sigma must be positive, got {sigma}")));
        }
        Ok(Self { sigma, seed })
    }
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self {
            sigma: DEFAULT_SIGMA,
            seed: DEFAULT_SEED,
        }
    }
}

/// `n` draws of `N(0, sigma²)`.
///
/// A ChaCha20 stream seeded with `noise.seed` feeds the Box–Muller transform,
/// two normals per pair of uniforms. The output depends only on `(seed, n)`,
/// and shorter vectors are prefixes of longer ones.
pub fn gaussian_noise(n: usize, noise: NoiseSpec) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::domain("noise vector must be nonempty"));
    }
    NoiseSpec::new(noise.sigma, noise.seed)?;
    let mut rng = ChaCha20Rng::seed_from_u64(noise.seed);
    let mut out = Vec::with_capacity(n + 1);
    while out.len() < n {
        // u1 in (0, 1] keeps the logarithm finite
        let u1: f64 = 1.0 - rng.random::<f64>();
        let u2: f64 = rng.random();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * PI * u2;
        out.push(r * theta.cos());
        out.push(r * theta.sin());
    }
    out.truncate(n);
    out.iter_mut().for_each(|z| *z *= noise.sigma);
    Ok(out)
}
