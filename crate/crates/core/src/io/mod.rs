//! Configuration, binary persistence, reports and test-pair files.

mod binary;
mod config;
mod json;
mod report;
mod testpair_file;

pub use binary::{
    decode_checkpoint, decode_trajectory, encode_checkpoint, encode_trajectory, read_checkpoint,
    read_trajectory, write_checkpoint, write_trajectory, CheckpointHeader, FORMAT_VERSION, MAGIC,
};
pub use config::{emit_config, parse_config, parse_config_str};
pub use json::{format_f64, to_json_string, ExactFloats};
pub use report::{report_rows, write_json, write_report_csv, ReportRow, CSV_HEADER};
pub use testpair_file::{parse_test_pair, read_test_pair, TestPairSpec};
