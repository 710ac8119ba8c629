//! Combinatorial decision procedures for `Sp_{2n}(F)`-distinction of
//! representations of quasi-split unitary groups `U_{2n}`.
//!
//! Everything is encoded through finite data: sign tuples, signed
//! permutations, multisegments over formal cuspidal lines, admissible data
//! and orbit descriptors. Verdicts are three-valued and carry certificates.

pub mod error;
pub mod half;
pub mod jacquet;
pub mod orbits;
pub mod segcalc;
pub mod signgraph;
pub mod tri;
pub mod verdicts;
pub mod weylinv;
pub mod wire;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use half::HalfInt;
pub use jacquet::Composition;
pub use orbits::{BlockSpec, OrbitDescriptor, RelevanceCertificate, SearchLog, SearchOutcome};
pub use segcalc::{CuspLine, LineClass, LineTable, Multisegment, Segment, SqintRule};
pub use signgraph::{History, PathForm, Pattern, SignTuple};
pub use tri::Tri;
pub use verdicts::{AdmissibleDatum, Outcome, Rule, TemperedDatum, Verdict};
pub use weylinv::SignedPermutation;

/// Default cap on the total support of an orbit search.
pub const DEFAULT_MAX_SUPPORT: usize = 24;

/// Engine-wide knobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub sqint_rule: SqintRule,
    pub bfs_cap: usize,
    pub max_support: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            sqint_rule: SqintRule::default(),
            bfs_cap: signgraph::DEFAULT_BFS_CAP,
            max_support: DEFAULT_MAX_SUPPORT,
        }
    }
}
