//! Acceptance suite for `plankcap`: seeded random instances, reference
//! oracles, and the criterion checks run by `plankcap verify-all` and by the
//! `acceptance` test target.

pub mod criteria;
pub mod oracles;
pub mod random;

pub use criteria::{run_all, run_criterion, Outcome, SuiteConfig, CRITERIA};

/// One table line for an outcome.
pub fn format_line(o: &Outcome) -> String {
    format!(
        "[{}] {:>2} {:<42} {:>7.2}s  {}",
        if o.passed { "PASS" } else { "FAIL" },
        o.id,
        o.name,
        o.seconds,
        o.detail
    )
}
