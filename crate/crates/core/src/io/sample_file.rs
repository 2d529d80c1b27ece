//! Sample files: `# id: <name>`, optional further `#` comment lines, a header row of
//! column names, then one comma-separated numeric row per observation.

use nalgebra::DMatrix;

use crate::error::InputError;
use crate::model::SampleSet;

/// Parses sample text. `path` is only used in error messages.
pub fn parse_samples(text: &str, path: &str) -> Result<SampleSet, InputError> {
    let fail = |line: usize, column: usize, message: String| InputError::Parse {
        path: path.to_string(),
        line,
        column,
        message,
    };
    let mut lines = text.split_inclusive('\n');
    let first = lines.next().unwrap_or("");
    let id = first
        .trim()
        .strip_prefix('#')
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix("id:"))
        .map(str::trim)
        .filter(|id| !id.is_empty())
        .ok_or_else(|| fail(1, 1, "first line must be `# id: <name>`".into()))?
        .to_string();
    let mut consumed = first.len();
    let mut line_offset = 1;
    let mut notes = Vec::new();
    for l in lines {
        match l.trim().strip_prefix('#') {
            Some(note) => notes.push(note.trim().to_string()),
            None if l.trim().is_empty() => {}
            None => break,
        }
        consumed += l.len();
        line_offset += 1;
    }

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text[consumed..].as_bytes());
    let columns: Vec<String> = reader
        .headers()
        .map_err(|e| fail(line_offset + 1, 1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if columns.is_empty() || columns.iter().all(String::is_empty) {
        return Err(fail(line_offset + 1, 1, "missing column header line".into()));
    }
    let d = columns.len();
    let mut values = Vec::new();
    let mut n = 0;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize) + line_offset;
            let message = match e.kind() {
                csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
                    format!("ragged row: {len} fields, expected {expected_len}")
                }
                _ => e.to_string(),
            };
            fail(line, 1, message)
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize) + line_offset;
        for (j, field) in record.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| fail(line, j + 1, format!("not a number: `{field}`")))?;
            if !v.is_finite() {
                return Err(fail(line, j + 1, format!("non-finite value `{field}`")));
            }
            values.push(v);
        }
        n += 1;
    }
    if n == 0 {
        return Err(InputError::Invalid {
            path: path.to_string(),
            message: format!("sample set `{id}` has no rows"),
        });
    }
    let data = DMatrix::from_row_slice(n, d, &values);
    let mut set = SampleSet::new(id, data)
        .map_err(|e| InputError::Invalid {
            path: path.to_string(),
            message: e.to_string(),
        })?
        .with_columns(columns);
    if !notes.is_empty() {
        set = set.with_provenance(notes.join("; "));
    }
    Ok(set)
}

pub fn read_samples(path: &str) -> Result<SampleSet, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    parse_samples(&text, path)
}

/// Inverse of [`parse_samples`]; values are written in shortest round-trip form.
pub fn write_samples(set: &SampleSet) -> String {
    let mut out = format!("# id: {}\n", set.id);
    if let Some(p) = &set.provenance {
        for note in p.split("; ") {
            out.push_str(&format!("# {note}\n"));
        }
    }
    let columns: Vec<String> = if set.columns.len() == set.dim() {
        set.columns.clone()
    } else {
        (1..=set.dim()).map(|j| format!("x{j}")).collect()
    };
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in set.data.row_iter() {
        let fields: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let s = parse_samples("# id: a\nu,v\n1,2\n3.5,-4\n", "t").unwrap();
        assert_eq!((s.id.as_str(), s.len(), s.dim()), ("a", 2, 2));
        assert_eq!(s.data[(1, 1)], -4.0);
        assert_eq!(s.columns, vec!["u", "v"]);
    }

    #[test]
    fn nan_is_rejected_with_position() {
        let e = parse_samples("# id: a\nu,v\n1,2\n3,NaN\n", "f.csv").unwrap_err();
        assert_eq!(e.to_string(), "f.csv:4:2: non-finite value `NaN`");
    }

    #[test]
    fn ragged_row_is_rejected() {
        let e = parse_samples("# id: a\n# seed 3\nu,v\n1,2\n3\n", "f").unwrap_err();
        match e {
            InputError::Parse { line, message, .. } => {
                assert_eq!(line, 5);
                assert!(message.contains("ragged"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn garbage_token_position() {
        let e = parse_samples("# id: a\nu,v,w\n1,2,3\n4,5x,6\n", "f").unwrap_err();
        assert_eq!(e.to_string(), "f:4:2: not a number: `5x`");
    }

    #[test]
    fn missing_id_line() {
        assert!(parse_samples("u,v\n1,2\n", "f").is_err());
    }

    #[test]
    fn write_then_parse_is_exact() {
        let rows = vec![vec![0.1, 1.0 / 3.0], vec![-2e-300, 7.0]];
        let s = SampleSet::from_rows("z", &rows)
            .unwrap()
            .with_provenance("seed 7");
        let back = parse_samples(&write_samples(&s), "w").unwrap();
        assert_eq!(back.data, s.data);
        assert_eq!(back.provenance.as_deref(), Some("seed 7"));
    }
}
