//! Interrogation protocols and their classical photon-counting baselines.
//!
//! * Defect testing: a known transparency map, up to `M` pixels possibly
//!   altered by amplitude distance at least `ε`. The quantum test fires
//!   uniform superpositions and projects the surviving photon onto the
//!   expected output state; the classical test estimates every pixel's
//!   transmission separately.
//! * Rare-pattern search: decide whether the array carries one specific
//!   pattern that occurs with small prior probability, the alternative
//!   being i.i.d. transparencies uniform on the complex unit disc.

mod arrays;
mod budget;
mod defect;
mod rare;
mod round;

pub use arrays::{build_reference_state, sample_random_array};
pub use budget::{
    classical_rare_plan, hoeffding_shots, intensity_margin, asymptotic_successes,
    required_rounds_quantum, required_successes, ClassicalRarePlan,
};
pub use defect::{
    classical_defect_test, quantum_defect_test, DefectScenario, DefectTestConfig,
    DefectTestReport,
};
pub use rare::{
    classical_rare_search, classical_rare_search_with_shots, quantum_rare_search,
    RareSearchConfig, RareSearchReport, Verdict,
};
pub use round::{interrogation_round, RoundKernel, RoundOutcome};
