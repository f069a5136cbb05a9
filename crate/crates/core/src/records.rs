//! Line-delimited JSON output. The first line is a header naming the schema
//! version and the command; every further line is one record
//! `{"record": <kind>, "data": <value>}`. Object keys are emitted in sorted
//! order, so equal inputs give byte-identical output.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub schema: String,
    pub schema_version: u32,
    pub command: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub record: String,
    pub data: Value,
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("missing header")]
    MissingHeader,
    #[error("schema version {0} is not supported")]
    Version(u32),
}

pub struct RecordWriter {
    out: String,
}

impl RecordWriter {
    pub fn new(command: &str) -> Self {
        let mut w = RecordWriter { out: String::new() };
        let header = Header { schema: "sgknot".into(), schema_version: SCHEMA_VERSION, command: command.into() };
        w.line(&serde_json::to_value(header).expect("serializable"));
        w
    }

    fn line(&mut self, v: &Value) {
        self.out.push_str(&serde_json::to_string(v).expect("serializable"));
        self.out.push('\n');
    }

    pub fn push<T: Serialize + ?Sized>(&mut self, kind: &str, data: &T) {
        let data = serde_json::to_value(data).expect("serializable");
        let rec = Record { record: kind.into(), data };
        self.line(&serde_json::to_value(rec).expect("serializable"));
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// Reads back what [`RecordWriter`] produced.
pub fn read_records(text: &str) -> Result<(Header, Vec<Record>), RecordError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (n, first) = lines.next().ok_or(RecordError::MissingHeader)?;
    let header: Header = serde_json::from_str(first).map_err(|source| RecordError::Json { line: n + 1, source })?;
    if header.schema_version != SCHEMA_VERSION {
        return Err(RecordError::Version(header.schema_version));
    }
    let records = lines
        .map(|(n, l)| serde_json::from_str(l).map_err(|source| RecordError::Json { line: n + 1, source }))
        .collect::<Result<_, _>>()?;
    Ok((header, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut w = RecordWriter::new("degree");
        w.push("degree", &serde_json::json!({"component": 0, "degree": 3}));
        let text = w.finish();
        assert!(text.starts_with(r#"{"command":"degree","schema":"sgknot","schema_version":1}"#));
        let (h, r) = read_records(&text).unwrap();
        assert_eq!(h.command, "degree");
        assert_eq!(r[0].data["degree"], 3);
        assert!(matches!(read_records(""), Err(RecordError::MissingHeader)));
    }
}
