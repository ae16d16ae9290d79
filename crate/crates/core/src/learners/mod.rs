//! Tabular learners, exploration strategies and the training loop.

mod explore;
mod schedule;
mod table;
mod train;

pub use explore::{
    count_bonus, select_epsilon_greedy, select_softmax, select_ucb, softmax_probs, Strategy,
};
pub use schedule::{pledge_threshold, Decay, Schedule};
pub use table::{q_update, sarsa_update, QTable};
pub use train::{
    greedy_rollout, seed_for_run, train, train_env, Algo, PledgeParams, RurlConfig, TrainResult,
};
