use std::collections::BTreeMap;
use std::io::BufRead;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::types::{OperationSet, OperationToken};

#[derive(Deserialize)]
struct LabelRecord {
    id: String,
    ops: Vec<String>,
}

/// Reads `{"id": .., "ops": [..]}` lines into an id -> operation set map.
/// Tagged-output files have the same shape and load through here too;
/// their extra fields are ignored.
pub fn load_gold_labels<R: BufRead>(reader: R) -> Result<BTreeMap<String, OperationSet>> {
    let mut out = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let rec: LabelRecord = serde_json::from_str(&line).map_err(|e| Error::Malformed {
            line: lineno,
            message: e.to_string(),
        })?;
        let mut set = OperationSet::new();
        for name in &rec.ops {
            let op = OperationToken::from_name(name).ok_or_else(|| Error::Malformed {
                line: lineno,
                message: format!("unknown operation `{name}`"),
            })?;
            set.insert(op);
        }
        if out.insert(rec.id.clone(), set).is_some() {
            return Err(Error::DuplicateId(rec.id));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use OperationToken::*;

    #[test]
    fn decode_examples() {
        let text = "{\"id\":\"a\",\"ops\":[\"REPHRASE\",\"DEL\"]}\n{\"id\":\"b\",\"ops\":[]}\n";
        let labels = load_gold_labels(text.as_bytes()).unwrap();
        assert_eq!(labels["a"], [Rephrase, Del].into_iter().collect());
        assert!(labels["b"].is_empty());
    }

    #[test]
    fn closed_vocabulary() {
        let err = load_gold_labels(r#"{"id":"c","ops":["FOO"]}"#.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = "{\"id\":\"a\",\"ops\":[]}\n{\"id\":\"a\",\"ops\":[\"DEL\"]}\n";
        assert!(matches!(
            load_gold_labels(text.as_bytes()),
            Err(Error::DuplicateId(id)) if id == "a"
        ));
    }
}
