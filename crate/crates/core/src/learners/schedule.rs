//! Per-episode parameter schedules (exploration ratio or temperature).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// `exp(-rate * eta)`
    Exp { rate: f64 },
    /// `scale / (rate * eta + offset)`
    Rational { scale: f64, rate: f64, offset: f64 },
    Constant { value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub decay: Decay,
    /// From this episode on the schedule returns `after`.
    pub cutoff: Option<(usize, f64)>,
}

impl Schedule {
    pub fn constant(value: f64) -> Self {
        Self {
            decay: Decay::Constant { value },
            cutoff: None,
        }
    }

    pub fn exp(rate: f64) -> Self {
        Self {
            decay: Decay::Exp { rate },
            cutoff: None,
        }
    }

    pub fn rational(scale: f64, rate: f64, offset: f64) -> Self {
        Self {
            decay: Decay::Rational {
                scale,
                rate,
                offset,
            },
            cutoff: None,
        }
    }

    pub fn with_cutoff(mut self, episode: usize, after: f64) -> Self {
        self.cutoff = Some((episode, after));
        self
    }

    /// Value at episode `eta`. A zero denominator gives `+inf`.
    pub fn value(&self, eta: usize) -> f64 {
        if let Some((at, after)) = self.cutoff {
            if eta >= at {
                return after;
            }
        }
        let x = eta as f64;
        match self.decay {
            Decay::Exp { rate } => (-rate * x).exp(),
            Decay::Rational {
                scale,
                rate,
                offset,
            } => {
                let den = rate * x + offset;
                if den == 0.0 {
                    f64::INFINITY
                } else {
                    scale / den
                }
            }
            Decay::Constant { value } => value,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Config(format!("schedule: {what}")));
        match self.decay {
            Decay::Exp { rate } if !(rate >= 0.0) => return bad("exp rate must be >= 0"),
            Decay::Rational {
                scale,
                rate,
                offset,
            } if !(scale >= 0.0 && rate >= 0.0 && offset >= 0.0) => {
                return bad("rational parameters must be >= 0")
            }
            Decay::Constant { value } if !(value >= 0.0) => return bad("constant must be >= 0"),
            _ => {}
        }
        if let Some((_, after)) = self.cutoff {
            if !(after >= 0.0) {
                return bad("post-cutoff value must be >= 0");
            }
        }
        Ok(())
    }
}

/// Episode step budget before the Pledge rule takes over:
/// `m_max / (omega * eta + b)`.
pub fn pledge_threshold(eta: usize, m_max: usize, omega: f64, b: f64) -> f64 {
    m_max as f64 / (omega * eta as f64 + b)
}
