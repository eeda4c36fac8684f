//! Verification suite: exact identity checks, truncated orthogonality with
//! certified tails, zero location and interlacing, and positivity scans.

pub mod ortho;
pub mod positivity;
pub mod report;
pub mod suite;
pub mod tail;
pub mod zeros;

pub use ortho::{orthogonality_check, OrthoResult, RatioRow};
pub use positivity::positivity_scan;
pub use report::{Check, Status, VerificationReport};
pub use suite::{run_suite, Suite, SuiteConfig};
pub use tail::TailBound;
pub use zeros::{zeros_report, ZerosReport};
