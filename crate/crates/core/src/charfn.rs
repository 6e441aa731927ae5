//! Characteristic functions of the normalized log-forward
//! `ln(F(T,T)/F(0,T))` and their analytic cumulants.
//!
//! Every model is a validated parameter record implementing
//! [`CharacteristicFunction`]. [`ModelParams`] is the tagged union used by
//! configuration files; it dispatches to the concrete model.

use crate::error::{positive, CosError, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Log-return cumulants of order 1, 2 and 4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cumulants {
    pub c1: f64,
    pub c2: f64,
    pub c4: f64,
}

/// A model with a known characteristic function of the normalized log-forward.
///
/// Implementations assume a positive, finite maturity; the free functions
/// [`charfn_eval`] and [`cumulants`] validate it.
pub trait CharacteristicFunction: Send + Sync {
    fn name(&self) -> &'static str;

    /// `φ(z) = E[exp(i z ln(F(T,T)/F(0,T)))]` for real `z`.
    fn eval(&self, maturity: f64, z: f64) -> Complex64;

    /// Elementwise [`eval`](Self::eval), in order.
    fn eval_batch(&self, maturity: f64, z: &[f64]) -> Vec<Complex64> {
        z.iter().map(|&z| self.eval(maturity, z)).collect()
    }

    fn cumulants(&self, maturity: f64) -> Cumulants;
}

/// Black-Scholes lognormal forward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBlackScholes", into = "RawBlackScholes")]
pub struct BlackScholes {
    sigma: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlackScholes {
    sigma: f64,
}

impl TryFrom<RawBlackScholes> for BlackScholes {
    type Error = CosError;
    fn try_from(raw: RawBlackScholes) -> Result<Self> {
        Self::new(raw.sigma)
    }
}

impl From<BlackScholes> for RawBlackScholes {
    fn from(m: BlackScholes) -> Self {
        Self { sigma: m.sigma }
    }
}

impl BlackScholes {
    pub fn new(sigma: f64) -> Result<Self> {
        positive("sigma", sigma)?;
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl CharacteristicFunction for BlackScholes {
    fn name(&self) -> &'static str {
        "black-scholes"
    }

    fn eval(&self, maturity: f64, z: f64) -> Complex64 {
        let half_var = 0.5 * self.sigma * self.sigma * maturity;
        Complex64::new(-half_var * z * z, -half_var * z).exp()
    }

    fn cumulants(&self, maturity: f64) -> Cumulants {
        let var = self.sigma * self.sigma * maturity;
        Cumulants {
            c1: -0.5 * var,
            c2: var,
            c4: 0.0,
        }
    }
}

/// Variance gamma process: Brownian motion with drift `theta` and volatility
/// `sigma`, time-changed by a gamma subordinator of variance rate `nu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawVarianceGamma", into = "RawVarianceGamma")]
pub struct VarianceGamma {
    theta: f64,
    nu: f64,
    sigma: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVarianceGamma {
    theta: f64,
    nu: f64,
    sigma: f64,
}

impl TryFrom<RawVarianceGamma> for VarianceGamma {
    type Error = CosError;
    fn try_from(raw: RawVarianceGamma) -> Result<Self> {
        Self::new(raw.theta, raw.nu, raw.sigma)
    }
}

impl From<VarianceGamma> for RawVarianceGamma {
    fn from(m: VarianceGamma) -> Self {
        Self {
            theta: m.theta,
            nu: m.nu,
            sigma: m.sigma,
        }
    }
}

impl VarianceGamma {
    pub fn new(theta: f64, nu: f64, sigma: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(CosError::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "must be finite",
            });
        }
        positive("nu", nu)?;
        positive("sigma", sigma)?;
        let model = Self { theta, nu, sigma };
        if model.martingale_argument() <= 0.0 {
            return Err(CosError::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "1 - theta*nu - sigma^2*nu/2 must be positive",
            });
        }
        Ok(model)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    fn martingale_argument(&self) -> f64 {
        1.0 - self.theta * self.nu - 0.5 * self.sigma * self.sigma * self.nu
    }

    /// Per-unit-time martingale drift `ω = ln(1 - θν - σ²ν/2)/ν`.
    fn omega(&self) -> f64 {
        self.martingale_argument().ln() / self.nu
    }

    #[inline]
    fn eval_with(&self, t_over_nu: f64, drift: f64, z: f64) -> Complex64 {
        let base = Complex64::new(
            1.0 + 0.5 * self.sigma * self.sigma * self.nu * z * z,
            -self.nu * self.theta * z,
        );
        (-t_over_nu * base.ln() + Complex64::new(0.0, drift * z)).exp()
    }
}

impl CharacteristicFunction for VarianceGamma {
    fn name(&self) -> &'static str {
        "variance-gamma"
    }

    fn eval(&self, maturity: f64, z: f64) -> Complex64 {
        self.eval_with(maturity / self.nu, self.omega() * maturity, z)
    }

    fn eval_batch(&self, maturity: f64, z: &[f64]) -> Vec<Complex64> {
        let t_over_nu = maturity / self.nu;
        let drift = self.omega() * maturity;
        z.iter()
            .map(|&z| self.eval_with(t_over_nu, drift, z))
            .collect()
    }

    fn cumulants(&self, maturity: f64) -> Cumulants {
        let (theta, nu) = (self.theta, self.nu);
        let s2 = self.sigma * self.sigma;
        let th2 = theta * theta;
        Cumulants {
            c1: (self.omega() + theta) * maturity,
            c2: (s2 + nu * th2) * maturity,
            c4: 3.0 * (s2 * s2 * nu + 2.0 * th2 * th2 * nu.powi(3) + 4.0 * s2 * th2 * nu * nu)
                * maturity,
        }
    }
}

/// Heston stochastic volatility.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHeston", into = "RawHeston")]
pub struct Heston {
    kappa: f64,
    theta: f64,
    sigma: f64,
    v0: f64,
    rho: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHeston {
    kappa: f64,
    theta: f64,
    sigma: f64,
    v0: f64,
    rho: f64,
}

impl TryFrom<RawHeston> for Heston {
    type Error = CosError;
    fn try_from(raw: RawHeston) -> Result<Self> {
        Self::new(raw.kappa, raw.theta, raw.sigma, raw.v0, raw.rho)
    }
}

impl From<Heston> for RawHeston {
    fn from(m: Heston) -> Self {
        Self {
            kappa: m.kappa,
            theta: m.theta,
            sigma: m.sigma,
            v0: m.v0,
            rho: m.rho,
        }
    }
}

impl Heston {
    /// `kappa` mean reversion, `theta` long-run variance, `sigma` vol-of-vol,
    /// `v0` initial variance, `rho` spot/variance correlation.
    pub fn new(kappa: f64, theta: f64, sigma: f64, v0: f64, rho: f64) -> Result<Self> {
        positive("kappa", kappa)?;
        positive("theta", theta)?;
        positive("sigma", sigma)?;
        if !(v0.is_finite() && v0 >= 0.0) {
            return Err(CosError::InvalidParameter {
                name: "v0",
                value: v0,
                reason: "must be non-negative and finite",
            });
        }
        if !(rho > -1.0 && rho < 1.0) {
            return Err(CosError::InvalidParameter {
                name: "rho",
                value: rho,
                reason: "must lie in (-1, 1)",
            });
        }
        Ok(Self {
            kappa,
            theta,
            sigma,
            v0,
            rho,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

impl CharacteristicFunction for Heston {
    fn name(&self) -> &'static str {
        "heston"
    }

    // G = (β - D)/(β + D) with the principal square root and logarithm: the
    // ratio (1 - G e^{-DT})/(1 - G) never crosses the negative real axis, so
    // no branch tracking is needed.
    fn eval(&self, maturity: f64, z: f64) -> Complex64 {
        let sigma2 = self.sigma * self.sigma;
        let beta = Complex64::new(self.kappa, -self.rho * self.sigma * z);
        let d = (beta * beta + Complex64::new(z * z, z) * sigma2).sqrt();
        let beta_minus_d = beta - d;
        let g = beta_minus_d / (beta + d);
        let decay = (-d * maturity).exp();
        let one_minus_g_decay = 1.0 - g * decay;
        let variance_term = self.v0 / sigma2 * (1.0 - decay) / one_minus_g_decay * beta_minus_d;
        let mean_term = self.kappa * self.theta / sigma2
            * (beta_minus_d * maturity - 2.0 * (one_minus_g_decay / (1.0 - g)).ln());
        (variance_term + mean_term).exp()
    }

    fn cumulants(&self, maturity: f64) -> Cumulants {
        let (k, th, s, v0, rho, t) = (
            self.kappa, self.theta, self.sigma, self.v0, self.rho, maturity,
        );
        let e1 = (-k * t).exp();
        let e2 = (-2.0 * k * t).exp();
        let c1 = (1.0 - e1) * (th - v0) / (2.0 * k) - 0.5 * th * t;
        let c2 = (s * t * k * e1 * (v0 - th) * (8.0 * k * rho - 4.0 * s)
            + k * rho * s * (1.0 - e1) * (16.0 * th - 8.0 * v0)
            + 2.0 * th * k * t * (-4.0 * k * rho * s + s * s + 4.0 * k * k)
            + s * s * ((th - 2.0 * v0) * e2 + th * (4.0 * e1 - 5.0) + 2.0 * v0)
            + 8.0 * k * k * (v0 - th) * (1.0 - e1))
            / (8.0 * k.powi(3));
        Cumulants { c1, c2, c4: 0.0 }
    }
}

/// Tagged union of the supported models, as read from configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum ModelParams {
    BlackScholes(BlackScholes),
    VarianceGamma(VarianceGamma),
    Heston(Heston),
}

impl ModelParams {
    pub fn as_charfn(&self) -> &dyn CharacteristicFunction {
        match self {
            ModelParams::BlackScholes(m) => m,
            ModelParams::VarianceGamma(m) => m,
            ModelParams::Heston(m) => m,
        }
    }
}

impl CharacteristicFunction for ModelParams {
    fn name(&self) -> &'static str {
        self.as_charfn().name()
    }

    fn eval(&self, maturity: f64, z: f64) -> Complex64 {
        self.as_charfn().eval(maturity, z)
    }

    fn eval_batch(&self, maturity: f64, z: &[f64]) -> Vec<Complex64> {
        self.as_charfn().eval_batch(maturity, z)
    }

    fn cumulants(&self, maturity: f64) -> Cumulants {
        self.as_charfn().cumulants(maturity)
    }
}

impl From<BlackScholes> for ModelParams {
    fn from(m: BlackScholes) -> Self {
        ModelParams::BlackScholes(m)
    }
}

impl From<VarianceGamma> for ModelParams {
    fn from(m: VarianceGamma) -> Self {
        ModelParams::VarianceGamma(m)
    }
}

impl From<Heston> for ModelParams {
    fn from(m: Heston) -> Self {
        ModelParams::Heston(m)
    }
}

pub(crate) fn check_maturity(maturity: f64) -> Result<()> {
    positive("maturity", maturity)
}

/// Evaluates `φ(z)`; rejects a non-positive maturity or non-finite `z`.
pub fn charfn_eval(model: &dyn CharacteristicFunction, maturity: f64, z: f64) -> Result<Complex64> {
    check_maturity(maturity)?;
    if !z.is_finite() {
        return Err(CosError::InvalidParameter {
            name: "z",
            value: z,
            reason: "must be finite",
        });
    }
    Ok(model.eval(maturity, z))
}

pub fn charfn_eval_batch(
    model: &dyn CharacteristicFunction,
    maturity: f64,
    z: &[f64],
) -> Result<Vec<Complex64>> {
    check_maturity(maturity)?;
    if let Some(&bad) = z.iter().find(|z| !z.is_finite()) {
        return Err(CosError::InvalidParameter {
            name: "z",
            value: bad,
            reason: "must be finite",
        });
    }
    Ok(model.eval_batch(maturity, z))
}

pub fn cumulants(model: &dyn CharacteristicFunction, maturity: f64) -> Result<Cumulants> {
    check_maturity(maturity)?;
    Ok(model.cumulants(maturity))
}
