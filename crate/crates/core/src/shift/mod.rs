//! Strong shift and flow equivalence: elementary steps, bounded searches and certificates.

mod certificate;
mod factor;
mod flow;
mod search;
pub mod small;
mod sse;
mod steps;

pub use certificate::{verify_certificate, CertificateKind, MoveCertificate, Verification};
pub use factor::{factorizations, for_each_factorization, FactorLimits};
pub use flow::flow_search;
pub use search::SearchBudget;
pub use sse::{elementary_sse, lift_to_polynomial, sse_search, SseStep};
pub use steps::{apply_step, contract_row, positive_step_apply, ps_expand, Step};
