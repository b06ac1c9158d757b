//! Fixtures shared by the benchmarks.

use pinball_core::billey::schubert_class;
use pinball_core::game_server::config_from_request;
use pinball_core::{GameConfig, LieType, RestrictionVector, WeylGroup};
use serde_json::json;

pub fn group(lie: LieType, rank: usize) -> WeylGroup {
    WeylGroup::new(lie, rank).expect("valid group")
}

/// A bundled S4 game by name.
pub fn builtin(name: &str) -> GameConfig {
    config_from_request(&json!({ "builtin": name })).expect("builtin").0
}

/// Every specialized Schubert class restricted to every element.
pub fn full_classes(g: &WeylGroup) -> Vec<RestrictionVector> {
    let all: Vec<usize> = (0..g.order()).collect();
    (0..g.order())
        .map(|v| RestrictionVector(schubert_class(g, v, &all).expect("class").values))
        .collect()
}
