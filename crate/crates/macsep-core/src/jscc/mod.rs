//! Certificate checkers for the finite-alphabet condition systems.
//!
//! The module evaluates user-supplied certificates (test channels, MAC
//! input laws, deterministic maps) against the exact condition systems;
//! it never optimizes over them, except for a small random-restart input
//! law search that is documented as incomplete.

pub mod cert;
pub mod check;
pub mod table;

pub use cert::{
    CertificateFile, ChannelInputCertificate, DetMap, MacChannel, MacInformations,
    Theorem1Certificate,
};
pub use check::{
    check_theorem1, check_theorem2, check_theorem3, check_theorem4, check_theorem5,
    search_input_law, CheckMode, CheckOptions, CheckReport, ConditionReport, DistortionReport,
    RateNeeds, Verdict,
};
pub use table::NdTable;
