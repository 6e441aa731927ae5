//! Benchmark cases: the variance gamma cases of the literature, the Heston
//! case and a Black-Scholes sanity case, registered by name.

use crate::error::{BenchError, Result};
use cosnufft::{Backend, BlackScholes, Heston, MarketInputs, ModelParams, TruncationRange, VarianceGamma};
use serde::{Deserialize, Serialize};

/// Strike counts of the throughput tables.
pub const STRIKE_COUNTS: [usize; 5] = [10, 25, 100, 500, 2500];

pub const STRIKE_MIN: f64 = 60.0;
pub const STRIKE_MAX: f64 = 140.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    #[default]
    Uniform,
    LogUniform,
}

/// `count` strikes from `min` to `max` inclusive.
pub fn strike_grid(min: f64, max: f64, count: usize, spacing: Spacing) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = 1.0 / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    let t = i as f64 * step;
                    match spacing {
                        Spacing::Uniform => min + (max - min) * t,
                        Spacing::LogUniform => (min.ln() + (max.ln() - min.ln()) * t).exp(),
                    }
                })
                .collect()
        }
    }
}

/// Where the error of a case is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReferenceSpec {
    /// Classic COS series with many more terms and a wider range.
    SelfReference { level: f64, terms: usize },
    /// Black-Scholes formula; only valid for the Black-Scholes model.
    ClosedForm,
}

impl ReferenceSpec {
    pub fn label(&self) -> String {
        match self {
            ReferenceSpec::SelfReference { level, terms } => format!("cos-L{level}-M{terms}"),
            ReferenceSpec::ClosedForm => "closed-form".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchCase {
    pub name: String,
    pub model: ModelParams,
    pub spot: f64,
    pub rate: f64,
    pub dividend: f64,
    pub maturity: f64,
    pub level: f64,
    pub terms: usize,
    pub spacing: Spacing,
    /// Strikes of the accuracy grid.
    pub accuracy_strikes: usize,
    pub backends: Vec<Backend>,
    pub tolerance: f64,
    pub reference: ReferenceSpec,
}

impl BenchCase {
    pub fn market(&self) -> Result<MarketInputs> {
        Ok(MarketInputs::from_spot(self.spot, self.rate, self.dividend, self.maturity)?)
    }

    pub fn range(&self) -> Result<TruncationRange> {
        Ok(TruncationRange::for_model(&self.model, self.maturity, self.level, self.terms)?)
    }

    pub fn strikes(&self, count: usize) -> Vec<f64> {
        strike_grid(STRIKE_MIN, STRIKE_MAX, count, self.spacing)
    }

    /// Every strike of the widest grid must be priceable.
    pub fn validate(&self) -> Result<()> {
        let market = self.market()?;
        let range = self.range()?;
        for k in [STRIKE_MIN, STRIKE_MAX] {
            let x = (k / market.forward()).ln();
            if !range.contains(x) {
                return Err(BenchError::StrikeOutsideRange {
                    case: self.name.clone(),
                    strike: k,
                });
            }
        }
        if matches!(self.reference, ReferenceSpec::ClosedForm) && !matches!(self.model, ModelParams::BlackScholes(_)) {
            return Err(BenchError::Reference {
                case: self.name.clone(),
                reason: "closed-form reference needs the Black-Scholes model".into(),
            });
        }
        Ok(())
    }
}

const SELF_REFERENCE: ReferenceSpec = ReferenceSpec::SelfReference {
    level: 20.0,
    terms: 1 << 20,
};

fn variance_gamma(name: &str, params: (f64, f64, f64), rate: f64, maturity: f64, terms: usize) -> BenchCase {
    let (theta, nu, sigma) = params;
    BenchCase {
        name: name.to_string(),
        model: VarianceGamma::new(theta, nu, sigma).expect("valid VG case").into(),
        spot: 100.0,
        rate,
        dividend: 0.0,
        maturity,
        level: 10.0,
        terms,
        spacing: Spacing::Uniform,
        accuracy_strikes: 2500,
        backends: vec![Backend::Classic, Backend::Nufft],
        tolerance: 1e-9,
        reference: SELF_REFERENCE,
    }
}

fn heston(name: &str, terms: usize) -> BenchCase {
    BenchCase {
        name: name.to_string(),
        model: Heston::new(1.0, 0.1, 1.0, 0.1, -0.9).expect("valid Heston case").into(),
        spot: 100.0,
        rate: 0.0,
        dividend: 0.0,
        maturity: 2.0,
        level: 8.0,
        terms,
        spacing: Spacing::Uniform,
        accuracy_strikes: 100,
        backends: vec![Backend::Classic, Backend::Nufft],
        tolerance: 1e-9,
        reference: ReferenceSpec::SelfReference {
            level: 8.0,
            terms: 1 << 14,
        },
    }
}

/// Name → case lookup, in registration order.
#[derive(Debug, Clone, Default)]
pub struct CaseRegistry {
    cases: Vec<BenchCase>,
}

impl CaseRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// VG cases 1, 2, 4 and 5, Heston at M = 256 and 1024, and Black-Scholes.
    pub fn paper() -> Self {
        let case1 = (-0.1436, 0.3, 0.12136);
        let case4 = (1.5, 0.2, 1.0);
        let mut registry = Self::new();
        registry.register(variance_gamma("vg1", case1, 0.1, 1.0, 128));
        registry.register(variance_gamma("vg2", case1, 0.1, 0.1, 1024));
        registry.register(variance_gamma("vg4", case4, 0.02, 1.0, 1024));
        registry.register(variance_gamma("vg5", case4, 0.02, 0.1, 1024));
        registry.register(heston("heston-m256", 256));
        registry.register(heston("heston-m1024", 1024));
        registry.register(BenchCase {
            name: "bs".into(),
            model: BlackScholes::new(0.2).expect("valid volatility").into(),
            spot: 100.0,
            rate: 0.0,
            dividend: 0.0,
            maturity: 1.0,
            level: 8.0,
            terms: 256,
            spacing: Spacing::Uniform,
            accuracy_strikes: 100,
            backends: Backend::ALL.to_vec(),
            tolerance: 1e-13,
            reference: ReferenceSpec::ClosedForm,
        });
        registry
    }

    /// Adds a case, replacing any registered under the same name.
    pub fn register(&mut self, case: BenchCase) {
        self.cases.retain(|c| c.name != case.name);
        self.cases.push(case);
    }

    pub fn names(&self) -> Vec<&str> {
        self.cases.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn cases(&self) -> &[BenchCase] {
        &self.cases
    }

    pub fn get(&self, name: &str) -> Result<&BenchCase> {
        self.cases
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| BenchError::UnknownCase {
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn select(&self, names: &[String]) -> Result<Vec<BenchCase>> {
        names.iter().map(|n| self.get(n).cloned()).collect()
    }
}
