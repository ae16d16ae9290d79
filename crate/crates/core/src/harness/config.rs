//! Experiment configuration files.
//!
//! One `key = value` pair per line, dotted keys, `#` starts a comment.
//! Relative paths are resolved against the directory holding the file.
//!
//! ```text
//! map = ../maps/room-35x19-obstacles.hexmap
//! method = rurl
//! runs = 20
//! seed = 7
//! learn.episodes = 7000
//! explore.decay = exp
//! explore.rate = 0.001
//! rurl.k = 3
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::learners::{Algo, PledgeParams, RurlConfig, Schedule, Strategy};
use crate::planners::AcoParams;

/// Environment variable that overrides the configured output directory.
pub const OUT_ENV: &str = "HEXNAV_OUT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Rurl,
    RlPlain,
    RlCount,
    RlUcb,
    Astar,
    Aco,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Rurl,
        Method::RlPlain,
        Method::RlCount,
        Method::RlUcb,
        Method::Astar,
        Method::Aco,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Rurl => "rurl",
            Method::RlPlain => "rl_plain",
            Method::RlCount => "rl_count",
            Method::RlUcb => "rl_ucb",
            Method::Astar => "astar",
            Method::Aco => "aco",
        }
    }

    pub fn is_learner(self) -> bool {
        !matches!(self, Method::Astar | Method::Aco)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown method '{s}'")))
    }
}

/// Which value schedule drives exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExploreKind {
    Epsilon,
    Softmax,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub map: PathBuf,
    /// Method for `train`.
    pub method: Method,
    /// Methods run side by side by `bench`.
    pub bench_methods: Vec<Method>,
    pub runs: usize,
    pub seed: u64,
    pub out: PathBuf,
    /// Worker threads; 0 uses every core.
    pub workers: usize,
    pub algo: Algo,
    pub episodes: usize,
    pub m_max: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub explore: ExploreKind,
    pub schedule: Schedule,
    pub k: u32,
    pub pledge: PledgeParams,
    pub count_beta: f64,
    pub ucb_d: f64,
    pub ucb_c: f64,
    pub aco: AcoParams,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            map: PathBuf::new(),
            method: Method::Rurl,
            bench_methods: vec![Method::Rurl, Method::RlPlain],
            runs: 50,
            seed: 0,
            out: PathBuf::from("out"),
            workers: 0,
            algo: Algo::QLearning,
            episodes: 7000,
            m_max: 10_000,
            alpha: 0.01,
            gamma: 0.99,
            explore: ExploreKind::Epsilon,
            schedule: Schedule::exp(0.001).with_cutoff(3500, 0.0),
            k: 3,
            pledge: PledgeParams {
                episodes: 100,
                omega: 0.2,
                b: 8.0,
            },
            count_beta: 0.4,
            ucb_d: 0.9,
            ucb_c: 0.01,
            aco: AcoParams::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let pairs = parse_pairs(text)?;
        let mut cfg = Self::default();
        let mut sched = ScheduleKeys::default();
        for (key, (line, value)) in &pairs {
            let bad = |what: &str| Error::Config(format!("line {line}: {key}: {what}"));
            let num = || value.parse::<f64>().map_err(|_| bad("expected a number"));
            let int = || value.parse::<u64>().map_err(|_| bad("expected an integer"));
            match key.as_str() {
                "map" => cfg.map = base.join(value),
                "method" => cfg.method = value.parse()?,
                "bench.methods" => {
                    cfg.bench_methods = value
                        .split(',')
                        .map(|m| m.trim().parse())
                        .collect::<Result<_>>()?
                }
                "runs" => cfg.runs = int()? as usize,
                "seed" => cfg.seed = int()?,
                "out" => cfg.out = base.join(value),
                "workers" => cfg.workers = int()? as usize,
                "learn.algo" => {
                    cfg.algo = match value.as_str() {
                        "q" | "qlearning" => Algo::QLearning,
                        "sarsa" => Algo::Sarsa,
                        _ => return Err(bad("expected q or sarsa")),
                    }
                }
                "learn.episodes" => cfg.episodes = int()? as usize,
                "learn.m_max" => cfg.m_max = int()? as usize,
                "learn.alpha" => cfg.alpha = num()?,
                "learn.gamma" => cfg.gamma = num()?,
                "explore.kind" => {
                    cfg.explore = match value.as_str() {
                        "epsilon" => ExploreKind::Epsilon,
                        "softmax" => ExploreKind::Softmax,
                        _ => return Err(bad("expected epsilon or softmax")),
                    }
                }
                "explore.decay" => sched.decay = Some(value.clone()),
                "explore.rate" => sched.rate = Some(num()?),
                "explore.scale" => sched.scale = Some(num()?),
                "explore.offset" => sched.offset = Some(num()?),
                "explore.value" => sched.value = Some(num()?),
                "explore.cutoff" => sched.cutoff = Some(int()? as usize),
                "explore.after" => sched.after = Some(num()?),
                "rurl.k" => cfg.k = u32::try_from(int()?).map_err(|_| bad("too large"))?,
                "rurl.n" => cfg.pledge.episodes = int()? as usize,
                "rurl.omega" => cfg.pledge.omega = num()?,
                "rurl.b" => cfg.pledge.b = num()?,
                "count.beta" => cfg.count_beta = num()?,
                "ucb.d" => cfg.ucb_d = num()?,
                "ucb.c" => cfg.ucb_c = num()?,
                "aco.ants" => cfg.aco.n_ants = int()? as usize,
                "aco.iterations" => cfg.aco.iterations = int()? as usize,
                "aco.alpha" => cfg.aco.alpha = num()?,
                "aco.beta" => cfg.aco.beta = num()?,
                "aco.rho" => cfg.aco.rho = num()?,
                "aco.q" => cfg.aco.q = num()?,
                _ => return Err(Error::Config(format!("line {line}: unknown key '{key}'"))),
            }
        }
        if let Some(s) = sched.build(cfg.schedule)? {
            cfg.schedule = s;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be >= 1".into()));
        }
        if self.map.as_os_str().is_empty() {
            return Err(Error::Config("missing 'map'".into()));
        }
        if self.bench_methods.is_empty() {
            return Err(Error::Config("bench.methods is empty".into()));
        }
        self.rurl_config(Method::Rurl, 0).validate()?;
        self.aco.validate()
    }

    /// Output directory, honouring [`OUT_ENV`].
    pub fn output_dir(&self) -> PathBuf {
        match std::env::var_os(OUT_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => self.out.clone(),
        }
    }

    /// Training parameters for a learning method with the given run seed.
    pub fn rurl_config(&self, method: Method, seed: u64) -> RurlConfig {
        let base = match self.explore {
            ExploreKind::Epsilon => Strategy::EpsilonGreedy(self.schedule),
            ExploreKind::Softmax => Strategy::Softmax(self.schedule),
        };
        let strategy = match method {
            Method::RlCount => Strategy::CountBased {
                beta: self.count_beta,
                epsilon: self.schedule,
            },
            Method::RlUcb => Strategy::Ucb {
                d: self.ucb_d,
                c: self.ucb_c,
            },
            _ => base,
        };
        RurlConfig {
            k: self.k,
            pledge: self.pledge,
            m_max: self.m_max,
            t_max: self.episodes,
            alpha: self.alpha,
            gamma: self.gamma,
            algo: self.algo,
            strategy,
            seed,
        }
    }
}

#[derive(Default)]
struct ScheduleKeys {
    decay: Option<String>,
    rate: Option<f64>,
    scale: Option<f64>,
    offset: Option<f64>,
    value: Option<f64>,
    cutoff: Option<usize>,
    after: Option<f64>,
}

impl ScheduleKeys {
    fn build(&self, default: Schedule) -> Result<Option<Schedule>> {
        let any = self.decay.is_some()
            || self.rate.is_some()
            || self.scale.is_some()
            || self.offset.is_some()
            || self.value.is_some()
            || self.cutoff.is_some()
            || self.after.is_some();
        if !any {
            return Ok(None);
        }
        let need = |v: Option<f64>, k: &str| {
            v.ok_or_else(|| Error::Config(format!("explore.{k} is required for this decay")))
        };
        let mut s = match self.decay.as_deref() {
            Some("exp") => Schedule::exp(need(self.rate, "rate")?),
            Some("rational") => Schedule::rational(
                need(self.scale, "scale")?,
                need(self.rate, "rate")?,
                need(self.offset, "offset")?,
            ),
            Some("constant") => Schedule::constant(need(self.value, "value")?),
            Some(other) => {
                return Err(Error::Config(format!(
                    "explore.decay: expected exp, rational or constant, got '{other}'"
                )))
            }
            None => Schedule {
                cutoff: None,
                ..default
            },
        };
        match (self.cutoff, self.after) {
            (Some(at), after) => s = s.with_cutoff(at, after.unwrap_or(0.0)),
            (None, Some(_)) => {
                return Err(Error::Config("explore.after needs explore.cutoff".into()))
            }
            (None, None) => {}
        }
        Ok(Some(s))
    }
}

/// Split a document into `key -> (line, value)`. Duplicate keys are errors.
fn parse_pairs(text: &str) -> Result<BTreeMap<String, (usize, String)>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((k, v)) = body.split_once('=') else {
            return Err(Error::Config(format!("line {line}: expected 'key = value'")));
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(Error::Config(format!("line {line}: empty key or value")));
        }
        if out.insert(k.to_string(), (line, v.to_string())).is_some() {
            return Err(Error::Config(format!("line {line}: duplicate key '{k}'")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::Decay;

    #[test]
    fn full_document() {
        let text = "\
# multi-room
map = maps/m.hexmap
method = rl_ucb   # trailing comment
bench.methods = rurl, rl_plain, rl_count
runs = 10
seed = 42
learn.algo = sarsa
learn.episodes = 15000
learn.m_max = 20000
explore.decay = rational
explore.scale = 1
explore.rate = 0.4
explore.offset = 0
explore.cutoff = 500
rurl.n = 500
rurl.omega = 0.1
rurl.b = 10
";
        let cfg = ExperimentConfig::parse(text, Path::new("/cfg")).unwrap();
        assert_eq!(cfg.map, PathBuf::from("/cfg/maps/m.hexmap"));
        assert_eq!(cfg.method, Method::RlUcb);
        assert_eq!(cfg.bench_methods.len(), 3);
        assert_eq!(cfg.algo, Algo::Sarsa);
        assert_eq!(cfg.pledge.episodes, 500);
        assert_eq!(
            cfg.schedule.decay,
            Decay::Rational {
                scale: 1.0,
                rate: 0.4,
                offset: 0.0
            }
        );
        assert_eq!(cfg.schedule.value(500), 0.0);
        let r = cfg.rurl_config(Method::RlUcb, 9);
        assert!(matches!(r.strategy, Strategy::Ucb { .. }));
        assert_eq!(r.seed, 9);
    }

    #[test]
    fn defaults_follow_single_room_settings() {
        let cfg = ExperimentConfig::parse("map = x", Path::new("")).unwrap();
        assert_eq!(cfg.runs, 50);
        assert_eq!(cfg.episodes, 7000);
        assert_eq!(cfg.schedule.value(3500), 0.0);
        assert!((cfg.schedule.value(1000) - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let p = Path::new("");
        for text in [
            "map = x\nbogus = 1",
            "map = x\nruns = 0",
            "map = x\nruns = many",
            "map = x\nmap = y",
            "map = x\nmethod = dqn",
            "map = x\nexplore.decay = rational\nexplore.rate = 1",
            "runs = 3",
            "map = x\njust a line",
        ] {
            assert!(
                matches!(ExperimentConfig::parse(text, p), Err(Error::Config(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
    }
}
