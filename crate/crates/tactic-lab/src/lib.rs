//! Constructive tactics for the covering games, the adversaries that defeat
//! weak ones, and the seeded fixtures they are exercised on.

mod adversary;
mod error;
mod family;
pub mod fixtures;
mod phi;
mod slight;
mod strong;
mod three;
mod upsilon;

pub use adversary::{
    extract_coloring, extract_trace_coloring, replay_path, targeted_defeat, trace_defeat,
    ChainColoring, DefeatConfig, DefeatReport, Refusal,
};
pub use error::LabError;
pub use family::Members;
pub use path_partition::{Coloring, Palette};
pub use phi::{build_phi_maps, build_phi_maps_with, check_invariants, PhiMaps};
pub use slight::{
    build_slight_instance, greedy_cover, random_candidate, OrderSpec, SlightInstance, SlightTactic,
    FIN_MAX_SIZE,
};
pub use strong::{
    absorbing_chain, build_smg_two_tactic, build_vsg_two_tactic, translate_smg_vsg,
    translate_vsg_to_smg, CofinalChain, Direction, SmgAsVsg, SmgTwoTactic, VsgAsSmg, VsgTwoTactic,
};
pub use three::{build_vsg_three_tactic, VsgThreeInputs, VsgThreeTactic};
pub use upsilon::{build_mg_tactic, window_threshold, MgTactic, PathCheck};
