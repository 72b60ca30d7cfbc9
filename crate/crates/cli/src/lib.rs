//! Library half of the CLI: the JSON shapes, shared with the integration
//! tests so printed output can be parsed back and compared.

pub mod json;
