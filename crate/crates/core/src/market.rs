use crate::error::{positive, CosError, Result};
use serde::{Deserialize, Serialize};

/// Forward, discount factor and maturity of one pricing date.
///
/// Rates never reach the pricers directly; they only enter through
/// [`MarketInputs::from_spot`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketInputs {
    forward: f64,
    discount: f64,
    maturity: f64,
}

impl MarketInputs {
    pub fn new(forward: f64, discount: f64, maturity: f64) -> Result<Self> {
        positive("forward", forward)?;
        positive("maturity", maturity)?;
        if !(discount > 0.0 && discount <= 1.0) {
            return Err(CosError::InvalidParameter {
                name: "discount",
                value: discount,
                reason: "must lie in (0, 1]",
            });
        }
        Ok(Self {
            forward,
            discount,
            maturity,
        })
    }

    /// `F(0,T) = S(0) e^{(r-q)T}` and `B(T) = e^{-rT}`.
    pub fn from_spot(spot: f64, rate: f64, dividend: f64, maturity: f64) -> Result<Self> {
        positive("spot", spot)?;
        positive("maturity", maturity)?;
        for (name, value) in [("rate", rate), ("dividend", dividend)] {
            if !value.is_finite() {
                return Err(CosError::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite",
                });
            }
        }
        Self::new(
            spot * ((rate - dividend) * maturity).exp(),
            (-rate * maturity).exp(),
            maturity,
        )
    }

    pub fn forward(&self) -> f64 {
        self.forward
    }

    pub fn discount(&self) -> f64 {
        self.discount
    }

    pub fn maturity(&self) -> f64 {
        self.maturity
    }
}
