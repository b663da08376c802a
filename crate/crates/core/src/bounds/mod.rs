//! Exact combinatorial bounds on capacity and the certificates that carry them.
//!
//! Every search has a size cap (see [`Limits`](crate::limits::Limits)) and
//! fails with [`Error::CapExceeded`](crate::Error::CapExceeded) beyond it.

mod anticode;
mod avoiding;
mod certificate;
mod clique;
mod exact;
mod oracle;
mod series;

pub use anticode::{anticode_max, brute_anticode, code_anticode_bound, CodeAnticodeBound};
pub use avoiding::{axial_dag_set, diff_avoiding_bound, max_b_avoiding, AvoidingPoint};
pub use certificate::{
    capacity_certificate, log_rate_at_least, log_rate_at_most, BoundCertificate, BoundKind,
    CapacityReport, CapacityVerdict, CertWitness, LowerEntry, Side,
};
pub use exact::{clique_cover_number, independence_number, mais, max_matching};
pub use oracle::oracle_max_code;
pub use series::{window_series, SeriesBound, SeriesPoint, WindowSeries};
