//! File formats: problem specs, sample sets and solve reports.

mod report;
mod sample_file;
mod spec_file;

pub use report::{
    float, key_segment, parse_structured, render_pareto_structured, render_pareto_table, render_structured,
    render_table, EstimatorStamp, SolveReport, REPORT_VERSION,
};
pub use sample_file::{parse_samples, read_samples, write_samples};
pub use spec_file::{parse_spec, read_spec, write_spec};
