//! Path quality metrics.

use serde::Serialize;

use crate::hexgrid::AbsDir;
use crate::planners::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathMetrics {
    /// Hop count.
    pub length: usize,
    pub direction_switches: usize,
}

impl PathMetrics {
    pub fn of(path: &Path) -> Self {
        Self::of_actions(&path.actions())
    }

    pub fn of_actions(actions: &[AbsDir]) -> Self {
        Self {
            length: actions.len(),
            direction_switches: switches(actions),
        }
    }
}

/// Number of consecutive action pairs that differ.
pub fn direction_switches(path: &Path) -> usize {
    switches(&path.actions())
}

fn switches(actions: &[AbsDir]) -> usize {
    actions.windows(2).filter(|w| w[0] != w[1]).count()
}
