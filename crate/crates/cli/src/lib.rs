//! Shared pieces of the `lsp` binary: input/report formats, numeric
//! formatting, and grid parsing.  Exposed as a library so integration tests
//! can parse the binary's output back into typed reports.

pub mod grid;
pub mod output;
pub mod report;
