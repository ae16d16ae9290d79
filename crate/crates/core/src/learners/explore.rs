//! Action selection: epsilon-greedy, softmax, count-based bonus and
//! discounted UCB.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hexgrid::{AbsDir, HexCoord};
use crate::learners::table::argmax;
use crate::learners::{QTable, Schedule};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    EpsilonGreedy(Schedule),
    /// Boltzmann sampling; the schedule gives the temperature.
    Softmax(Schedule),
    /// Epsilon-greedy on rewards augmented with `sqrt(beta / ln(n + 1))`.
    CountBased { beta: f64, epsilon: Schedule },
    Ucb { d: f64, c: f64 },
}

impl Strategy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Strategy::EpsilonGreedy(s) | Strategy::Softmax(s) => s.validate(),
            Strategy::CountBased { beta, epsilon } => {
                if !(beta > 0.0) {
                    return Err(Error::Config("count bonus beta must be > 0".into()));
                }
                epsilon.validate()
            }
            Strategy::Ucb { d, c } => {
                if !(d > 0.0 && d <= 1.0) {
                    return Err(Error::Config("ucb damping d must be in (0, 1]".into()));
                }
                if !(c > 0.0) {
                    return Err(Error::Config("ucb constant must be > 0".into()));
                }
                Ok(())
            }
        }
    }
}

/// Uniform with probability `eps`, greedy otherwise. Exactly one uniform
/// draw decides the branch, so the random stream does not depend on `eps`.
pub fn select_epsilon_greedy<R: Rng>(table: &QTable, s: HexCoord, eps: f64, rng: &mut R) -> AbsDir {
    let u: f64 = rng.gen();
    if u < eps {
        AbsDir::from_index(rng.gen_range(0..6))
    } else {
        table.argmax(s)
    }
}

/// Boltzmann probabilities with max-subtraction. An infinite temperature
/// gives the uniform distribution; a non-positive one the greedy action.
pub fn softmax_probs(values: &[f64; 6], tau: f64) -> [f64; 6] {
    if tau.is_infinite() {
        return [1.0 / 6.0; 6];
    }
    if !(tau > 0.0) {
        let mut p = [0.0; 6];
        p[argmax(values).index()] = 1.0;
        return p;
    }
    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut p = values.map(|q| ((q - top) / tau).exp());
    let sum: f64 = p.iter().sum();
    for x in &mut p {
        *x /= sum;
    }
    p
}

pub fn select_softmax<R: Rng>(table: &QTable, s: HexCoord, tau: f64, rng: &mut R) -> AbsDir {
    let p = softmax_probs(&table.values(s), tau);
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (k, &pk) in p.iter().enumerate() {
        acc += pk;
        if u < acc {
            return AbsDir::from_index(k);
        }
    }
    // rounding left `acc` a hair below one
    AbsDir::from_index(p.iter().rposition(|&x| x > 0.0).unwrap_or(5))
}

/// Exploration bonus for a pair visited `visits` times (counting this one).
pub fn count_bonus(visits: u64, beta: f64) -> Result<f64> {
    if visits == 0 {
        return Err(Error::Contract("count bonus needs at least one visit".into()));
    }
    Ok((beta / ((visits + 1) as f64).ln()).sqrt())
}

/// Discounted UCB1 score `q + c * sqrt(ln(sum n) / n)`. Unvisited actions
/// come first in direction order.
pub fn select_ucb(table: &QTable, s: HexCoord, c: f64) -> AbsDir {
    let n = table.discounted_visits(s);
    if let Some(k) = n.iter().position(|&x| x == 0.0) {
        return AbsDir::from_index(k);
    }
    let log_total = n.iter().sum::<f64>().ln().max(0.0);
    let q = table.values(s);
    let scores: [f64; 6] = std::array::from_fn(|k| q[k] + c * (log_total / n[k]).sqrt());
    argmax(&scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::CellIndexer;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table() -> QTable {
        QTable::new(CellIndexer { n_rows: 2, m_cols: 2 })
    }

    const S: HexCoord = HexCoord::new(0, 0);

    #[test]
    fn greedy_picks_max_and_breaks_ties_low() {
        let mut t = table();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(select_epsilon_greedy(&t, S, 0.0, &mut rng), AbsDir::N);
        t.set(S, AbsDir::SE, 1.0);
        for _ in 0..20 {
            assert_eq!(select_epsilon_greedy(&t, S, 0.0, &mut rng), AbsDir::SE);
        }
    }

    #[test]
    fn softmax_closed_form() {
        let p = softmax_probs(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1.0);
        let e = 1.0f64.exp();
        assert!((p[0] - e / (e + 5.0)).abs() < 1e-12);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let cold = softmax_probs(&[0.0, 0.5, 0.0, 0.0, 0.0, 0.0], 1e-6);
        assert_eq!(cold[1], 1.0);
        assert_eq!(softmax_probs(&[0.0; 6], 2.0), [1.0 / 6.0; 6]);
        assert_eq!(softmax_probs(&[3.0, 0.0, 0.0, 0.0, 0.0, 0.0], f64::INFINITY), [1.0 / 6.0; 6]);
    }

    #[test]
    fn count_bonus_values() {
        assert!((count_bonus(1, 0.4).unwrap() - 0.7597).abs() < 1e-3);
        assert!((count_bonus(1, 0.5).unwrap() - 0.8493).abs() < 1e-4);
        assert!(count_bonus(0, 0.4).is_err());
        assert!(count_bonus(2, 0.4).unwrap() < count_bonus(1, 0.4).unwrap());
    }

    #[test]
    fn ucb_unvisited_first_then_bonus() {
        let mut t = table();
        assert_eq!(select_ucb(&t, S, 0.01), AbsDir::N);
        for d in AbsDir::ALL {
            t.record_discounted_visit(S, d, 1.0);
        }
        assert_eq!(select_ucb(&t, S, 0.01), AbsDir::N);
        for _ in 0..10 {
            t.record_discounted_visit(S, AbsDir::N, 1.0);
        }
        assert_ne!(select_ucb(&t, S, 0.01), AbsDir::N);
    }
}
