//! Asymptotic regimes of the Boussinesq-Coriolis system and the scalar
//! model each one reduces to.
//!
//! | γ \ rot | √μ         | μ      |
//! |---------|------------|--------|
//! | √μ      | RKP        | KP     |
//! | μ       | Ostrovsky  | KdV    |
//!
//! In all four long-wave regimes ε = μ.

use crate::boussinesq::ModelParams;
use crate::error::{Error, Result};
use crate::scalar::ScalarModelKind;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Default upper bound on μ.
pub const MU0: f64 = 0.25;

/// Constant used to concretize the big-O conditions of the general regime.
pub const REGIME_CONSTANT: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeKind {
    Boussinesq,
    RKP,
    KP,
    Ostrovsky,
    KdV,
}

/// Size class of γ or rot relative to μ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleClass {
    SqrtMu,
    Mu,
}

impl ScaleClass {
    pub fn value(self, mu: f64) -> f64 {
        match self {
            Self::SqrtMu => mu.sqrt(),
            Self::Mu => mu,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::SqrtMu => "sqrt_mu",
            Self::Mu => "mu",
        }
    }
}

impl FromStr for ScaleClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sqrt_mu" => Ok(Self::SqrtMu),
            "mu" => Ok(Self::Mu),
            other => Err(Error::Config(format!(
                "unknown scale class '{other}' (expected sqrt_mu or mu)"
            ))),
        }
    }
}

impl RegimeKind {
    pub const LONG_WAVE: [RegimeKind; 4] = [Self::RKP, Self::KP, Self::Ostrovsky, Self::KdV];

    pub fn name(self) -> &'static str {
        match self {
            Self::Boussinesq => "boussinesq",
            Self::RKP => "rkp",
            Self::KP => "kp",
            Self::Ostrovsky => "ostrovsky",
            Self::KdV => "kdv",
        }
    }

    /// `(γ class, rot class)`; `None` for the general regime.
    pub fn classes(self) -> Option<(ScaleClass, ScaleClass)> {
        match self {
            Self::Boussinesq => None,
            Self::RKP => Some((ScaleClass::SqrtMu, ScaleClass::SqrtMu)),
            Self::KP => Some((ScaleClass::SqrtMu, ScaleClass::Mu)),
            Self::Ostrovsky => Some((ScaleClass::Mu, ScaleClass::SqrtMu)),
            Self::KdV => Some((ScaleClass::Mu, ScaleClass::Mu)),
        }
    }

    /// Scalar model governing the regime.
    pub fn scalar_model(self) -> Option<ScalarModelKind> {
        match self {
            Self::Boussinesq => None,
            Self::RKP => Some(ScalarModelKind::RKP),
            Self::KP => Some(ScalarModelKind::KP),
            Self::Ostrovsky => Some(ScalarModelKind::Ostrovsky),
            Self::KdV => Some(ScalarModelKind::KdV),
        }
    }

    pub fn from_scalar_model(kind: ScalarModelKind) -> Self {
        match kind {
            ScalarModelKind::RKP => Self::RKP,
            ScalarModelKind::KP => Self::KP,
            ScalarModelKind::Ostrovsky => Self::Ostrovsky,
            ScalarModelKind::KdV => Self::KdV,
        }
    }

    /// True when γ = √μ (transverse corrector at order √μ).
    pub fn weakly_transverse(self) -> bool {
        matches!(self.classes(), Some((ScaleClass::SqrtMu, _)))
    }

    /// True when rot = √μ.
    pub fn strong_rotation(self) -> bool {
        matches!(self.classes(), Some((_, ScaleClass::SqrtMu)))
    }
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for RegimeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "boussinesq" => Ok(Self::Boussinesq),
            "rkp" => Ok(Self::RKP),
            "kp" => Ok(Self::KP),
            "ostrovsky" => Ok(Self::Ostrovsky),
            "kdv" => Ok(Self::KdV),
            other => Err(Error::Config(format!(
                "unknown regime '{other}' (expected boussinesq|rkp|kp|ostrovsky|kdv)"
            ))),
        }
    }
}

fn check_mu(mu: f64, mu0: f64) -> Result<()> {
    if !(mu > 0.0 && mu <= mu0) {
        return Err(Error::InvalidParameter(format!(
            "mu must lie in (0, {mu0}], got {mu}"
        )));
    }
    Ok(())
}

/// Parameters of a long-wave regime at shallowness `mu`.
///
/// For [`RegimeKind::Boussinesq`] use [`boussinesq_params`].
pub fn params_for(regime: RegimeKind, mu: f64) -> Result<ModelParams> {
    params_for_with(regime, mu, MU0)
}

pub fn params_for_with(regime: RegimeKind, mu: f64, mu0: f64) -> Result<ModelParams> {
    check_mu(mu, mu0)?;
    match regime.classes() {
        Some((g, r)) => ModelParams::new(mu, mu, g.value(mu), r.value(mu)),
        None => Err(Error::InvalidParameter(
            "the general regime needs explicit (eps, gamma, rot); use boussinesq_params".into(),
        )),
    }
}

/// Caller-supplied parameters validated against the general regime.
pub fn boussinesq_params(mu: f64, eps: f64, gamma: f64, rot: f64) -> Result<ModelParams> {
    check_mu(mu, MU0)?;
    let p = ModelParams::new(mu, eps, gamma, rot)?;
    if !in_boussinesq_regime(&p, MU0) {
        return Err(Error::InvalidParameter(format!(
            "(mu={mu}, eps={eps}, gamma={gamma}, rot={rot}) is outside the Boussinesq regime: \
             need eps <= mu, gamma <= 1, rot <= sqrt(mu)"
        )));
    }
    Ok(p)
}

/// Membership in the general regime: `0 < μ ≤ μ0`, `ε ≤ Cμ`, `γ ≤ 1`,
/// `rot ≤ C√μ`, with `C = 1`.
pub fn in_boussinesq_regime(p: &ModelParams, mu0: f64) -> bool {
    // a relative slack absorbs the roundoff of √μ
    let tol = 1e-12;
    p.mu > 0.0
        && p.mu <= mu0
        && p.eps >= 0.0
        && p.eps <= REGIME_CONSTANT * p.mu * (1.0 + tol)
        && p.gamma > 0.0
        && p.gamma <= 1.0
        && p.rot >= 0.0
        && p.rot <= REGIME_CONSTANT * p.mu.sqrt() * (1.0 + tol)
}

/// Exact membership in a named regime.
pub fn in_regime(regime: RegimeKind, p: &ModelParams) -> bool {
    match regime.classes() {
        None => in_boussinesq_regime(p, MU0),
        Some((g, r)) => {
            in_boussinesq_regime(p, MU0)
                && p.eps == p.mu
                && p.gamma == g.value(p.mu)
                && p.rot == r.value(p.mu)
        }
    }
}

pub fn recommend_model(gamma_class: ScaleClass, rot_class: ScaleClass) -> RegimeKind {
    match (gamma_class, rot_class) {
        (ScaleClass::SqrtMu, ScaleClass::SqrtMu) => RegimeKind::RKP,
        (ScaleClass::SqrtMu, ScaleClass::Mu) => RegimeKind::KP,
        (ScaleClass::Mu, ScaleClass::SqrtMu) => RegimeKind::Ostrovsky,
        (ScaleClass::Mu, ScaleClass::Mu) => RegimeKind::KdV,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_examples() {
        let p = params_for(RegimeKind::RKP, 0.04).unwrap();
        assert_eq!((p.eps, p.gamma, p.rot), (0.04, 0.2, 0.2));
        let p = params_for(RegimeKind::KdV, 0.01).unwrap();
        assert_eq!((p.eps, p.gamma, p.rot), (0.01, 0.01, 0.01));
        let p = params_for(RegimeKind::KP, 0.04).unwrap();
        assert_eq!((p.eps, p.gamma, p.rot), (0.04, 0.2, 0.04));
        let p = params_for(RegimeKind::Ostrovsky, 0.04).unwrap();
        assert_eq!((p.eps, p.gamma, p.rot), (0.04, 0.04, 0.2));
    }

    #[test]
    fn mu_range() {
        for mu in [0.0, -0.1, 0.3, f64::NAN] {
            assert!(params_for(RegimeKind::KP, mu).is_err());
        }
        assert!(params_for(RegimeKind::KP, 0.25).is_ok());
        assert!(params_for(RegimeKind::Boussinesq, 0.1).is_err());
    }

    #[test]
    fn general_regime_validation() {
        assert!(boussinesq_params(0.04, 0.04, 1.0, 0.2).is_ok());
        assert!(boussinesq_params(0.04, 0.05, 1.0, 0.2).is_err());
        assert!(boussinesq_params(0.04, 0.04, 1.0, 0.21).is_err());
    }

    #[test]
    fn table() {
        use ScaleClass::*;
        assert_eq!(recommend_model(SqrtMu, SqrtMu), RegimeKind::RKP);
        assert_eq!(recommend_model(SqrtMu, Mu), RegimeKind::KP);
        assert_eq!(recommend_model(Mu, SqrtMu), RegimeKind::Ostrovsky);
        assert_eq!(recommend_model(Mu, Mu), RegimeKind::KdV);
    }

    #[test]
    fn names_roundtrip() {
        for r in [
            RegimeKind::Boussinesq,
            RegimeKind::RKP,
            RegimeKind::KP,
            RegimeKind::Ostrovsky,
            RegimeKind::KdV,
        ] {
            assert_eq!(r.name().parse::<RegimeKind>().unwrap(), r);
        }
        assert!("euler".parse::<RegimeKind>().is_err());
    }
}
