//! Identity verifiers, the batch suite and the report format.

pub mod report;
pub mod suite;
pub mod verify;

pub use report::{IdentityId, IdentityReport, Mode, Side};
pub use suite::{instances, verify_all, Instance, SuiteConfig, Summary};
pub use verify::*;

/// Resolves a command-line selector. `all` selects everything and `lmm1`
/// selects both contiguous checks.
pub fn resolve_selector(selector: &str) -> Option<Vec<IdentityId>> {
    match selector {
        "all" => Some(IdentityId::ALL.to_vec()),
        "lmm1" => Some(vec![IdentityId::ContiguousSeries, IdentityId::ContiguousPointwise]),
        _ => selector.parse().ok().map(|id| vec![id]),
    }
}
