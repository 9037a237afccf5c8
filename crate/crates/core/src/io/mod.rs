//! On-disk formats: the JSON game document and rendered reports.

mod document;
mod report;

pub use document::{parse_game, serialize_game, GameDocument, INDEX_ORDER, SCHEMA_VERSION};
pub use report::{serialize_report, Report, ReportFormat};
