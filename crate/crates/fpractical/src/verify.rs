//! placeholder
pub struct SuiteResult;
