//! Integration tests: the acceptance criteria, the command-line contract and
//! property-based invariants, linked into one test binary so that a red
//! criterion does not hide the remaining results.

mod cli;
mod criteria;
mod properties;
