//! Expression parsing, problem files, dispatch to the certificate
//! modules, JSON reports and curve sampling.

mod parse;
mod problem;
mod report;
mod samples;

pub use parse::{parse_constant, parse_expression};
pub use problem::{load_problem, parse_interval, parse_problem, parse_region, Method, MethodArgs, ProblemSpec};
pub use report::{
    candidate_curve, parse_sweep, run_certificate, run_sweep, sweep_exit_code, Report, ReportStatus, SweepPoint,
    SCHEMA_VERSION,
};
pub use samples::{export_curve_samples, sample_curve, write_samples_csv, SampleKind, SamplePoint, Window};
