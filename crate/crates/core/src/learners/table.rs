use crate::hexgrid::{AbsDir, CellIndexer, HexCoord};
use crate::navenv::{DoneCause, Transition};

/// Dense state-action table over every cell of a map.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    indexer: CellIndexer,
    q: Vec<[f64; 6]>,
    visits: Vec<[u64; 6]>,
    discounted: Vec<[f64; 6]>,
}

impl QTable {
    /// Zero-initialized table.
    pub fn new(indexer: CellIndexer) -> Self {
        let n = indexer.len();
        Self {
            indexer,
            q: vec![[0.0; 6]; n],
            visits: vec![[0; 6]; n],
            discounted: vec![[0.0; 6]; n],
        }
    }

    #[inline]
    fn idx(&self, s: HexCoord) -> usize {
        self.indexer
            .index_of(s)
            .unwrap_or_else(|| panic!("state {s} is outside the table"))
    }

    #[inline]
    pub fn values(&self, s: HexCoord) -> [f64; 6] {
        self.q[self.idx(s)]
    }

    #[inline]
    pub fn get(&self, s: HexCoord, a: AbsDir) -> f64 {
        self.q[self.idx(s)][a.index()]
    }

    pub fn set(&mut self, s: HexCoord, a: AbsDir, v: f64) {
        let k = self.idx(s);
        self.q[k][a.index()] = v;
    }

    pub fn max(&self, s: HexCoord) -> f64 {
        self.values(s).into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Greedy action; ties go to the lowest direction.
    pub fn argmax(&self, s: HexCoord) -> AbsDir {
        argmax(&self.values(s))
    }

    pub fn visits(&self, s: HexCoord, a: AbsDir) -> u64 {
        self.visits[self.idx(s)][a.index()]
    }

    /// Bump the visit count of `(s, a)` and return the new count.
    pub fn record_visit(&mut self, s: HexCoord, a: AbsDir) -> u64 {
        let k = self.idx(s);
        let n = &mut self.visits[k][a.index()];
        *n += 1;
        *n
    }

    pub fn discounted_visits(&self, s: HexCoord) -> [f64; 6] {
        self.discounted[self.idx(s)]
    }

    /// Decay every discounted count at `s` by `d`, then credit `a` with one.
    pub fn record_discounted_visit(&mut self, s: HexCoord, a: AbsDir, d: f64) {
        let k = self.idx(s);
        let row = &mut self.discounted[k];
        for n in row.iter_mut() {
            *n *= d;
        }
        row[a.index()] += 1.0;
    }

    /// Move `q(s, a)` toward `target` by `alpha`.
    #[inline]
    pub fn td_step(&mut self, s: HexCoord, a: AbsDir, target: f64, alpha: f64) {
        let k = self.idx(s);
        let q = &mut self.q[k][a.index()];
        *q += alpha * (target - *q);
    }
}

pub(crate) fn argmax(values: &[f64; 6]) -> AbsDir {
    let mut best = 0;
    for k in 1..6 {
        if values[k] > values[best] {
            best = k;
        }
    }
    AbsDir::from_index(best)
}

/// Off-policy update. The bootstrap is zero when the goal was reached.
pub fn q_update(table: &mut QTable, t: &Transition, alpha: f64, gamma: f64) {
    let bootstrap = match t.done {
        Some(DoneCause::Goal) => 0.0,
        _ => table.max(t.next_state),
    };
    table.td_step(t.state, t.action, t.reward + gamma * bootstrap, alpha);
}

/// On-policy update bootstrapping on the action actually taken next.
pub fn sarsa_update(
    table: &mut QTable,
    t: &Transition,
    next_action: AbsDir,
    alpha: f64,
    gamma: f64,
) {
    let bootstrap = match t.done {
        Some(DoneCause::Goal) => 0.0,
        _ => table.get(t.next_state, next_action),
    };
    table.td_step(t.state, t.action, t.reward + gamma * bootstrap, alpha);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> QTable {
        QTable::new(CellIndexer { n_rows: 3, m_cols: 3 })
    }

    fn tr(reward: f64, done: Option<DoneCause>) -> Transition {
        Transition {
            state: HexCoord::new(0, 0),
            action: AbsDir::SE,
            reward,
            next_state: HexCoord::new(1, 1),
            done,
        }
    }

    #[test]
    fn q_update_examples() {
        let mut t = table();
        q_update(&mut t, &tr(-1.0, None), 0.01, 0.99);
        assert!((t.get(HexCoord::new(0, 0), AbsDir::SE) + 0.01).abs() < 1e-12);

        let mut t = table();
        q_update(&mut t, &tr(100.0, Some(DoneCause::Goal)), 0.01, 0.99);
        assert!((t.get(HexCoord::new(0, 0), AbsDir::SE) - 1.0).abs() < 1e-12);

        let mut t = table();
        t.set(HexCoord::new(1, 1), AbsDir::NE, 2.0);
        q_update(&mut t, &tr(-1.0, None), 0.01, 0.99);
        assert!((t.get(HexCoord::new(0, 0), AbsDir::SE) - 0.0098).abs() < 1e-12);
    }

    #[test]
    fn sarsa_uses_the_next_action() {
        let mut t = table();
        t.set(HexCoord::new(1, 1), AbsDir::NE, 2.0);
        sarsa_update(&mut t, &tr(-1.0, None), AbsDir::N, 0.01, 0.99);
        assert!((t.get(HexCoord::new(0, 0), AbsDir::SE) + 0.01).abs() < 1e-12);
        let mut u = table();
        u.set(HexCoord::new(1, 1), AbsDir::NE, 2.0);
        sarsa_update(&mut u, &tr(-1.0, None), AbsDir::NE, 0.01, 0.99);
        let mut v = table();
        v.set(HexCoord::new(1, 1), AbsDir::NE, 2.0);
        q_update(&mut v, &tr(-1.0, None), 0.01, 0.99);
        assert_eq!(u, v);
    }

    #[test]
    fn argmax_ties_lowest() {
        let t = table();
        assert_eq!(t.argmax(HexCoord::new(2, 0)), AbsDir::N);
        assert_eq!(argmax(&[0.0, 1.0, 1.0, 0.0, 0.0, 0.0]), AbsDir::NE);
    }

    #[test]
    fn discounted_visits_decay() {
        let mut t = table();
        let s = HexCoord::new(0, 0);
        t.record_discounted_visit(s, AbsDir::N, 0.9);
        t.record_discounted_visit(s, AbsDir::S, 0.9);
        let n = t.discounted_visits(s);
        assert!((n[0] - 0.9).abs() < 1e-12 && (n[3] - 1.0).abs() < 1e-12);
        assert_eq!(t.record_visit(s, AbsDir::N), 1);
        assert_eq!(t.record_visit(s, AbsDir::N), 2);
    }
}
