//! Verification harness: limits over presentations, finite groups and checks of the identities.
mod checks;
mod finite;
mod fox;
mod presentation;
mod report;
mod reps;
mod suite;

pub use checks::{check_dim_identity, check_dim_identity_with, CheckOptions, DimCheck, DimInput};
pub use fox::{check_fox, check_foxlimit, check_thdim, FoxPart, FoxWitness};
pub use finite::{check_dim_quotients, dim_quotient_finite, FiniteGroupTable};
pub use presentation::PresentationSpec;
pub use report::{exit_code, CheckReport, Status};
pub use reps::{check_limit, expected_limit, limit_equalizer, monoadd_check, natural_map, Limit, RepTag, RepValue};
pub use suite::{abelian_table, finite_corpus, run_suite, Job, Preset};
