use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Cell of a CSV row.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            // shortest representation that parses back to the same f64
            Cell::Num(x) => format!("{x:e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// Renders a table as RFC 4180 CSV with LF line endings.
pub fn render_csv(header: &[String], rows: &[Vec<Cell>]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::GridMismatch(format!("row has {} cells, header {}", row.len(), header.len())));
        }
        w.write_record(row.iter().map(Cell::render)).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))
}

/// A file to be written.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFile {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
}

/// SHA-256 over the contents of all files, in order, as lowercase hex.
pub fn content_hash(files: &[OutputFile]) -> String {
    let mut h = Sha256::new();
    for f in files {
        h.update(&f.bytes);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// `dir/name.csv` → `dir/name_row007.csv`.
pub fn row_path(base: &Path, row: usize) -> PathBuf {
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match base.extension().and_then(|s| s.to_str()) {
        Some(ext) => format!("{stem}_row{row:03}.{ext}"),
        None => format!("{stem}_row{row:03}"),
    };
    base.with_file_name(name)
}

/// `out.csv` → `out.csv.meta`.
pub fn sidecar_path(base: &Path) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting_and_line_endings() {
        let header = vec!["a (Hz)".to_string(), "b, c".to_string()];
        let rows = vec![vec![Cell::Num(2.87e9), Cell::Text("say \"hi\"".into())], vec![Cell::Int(3), Cell::Empty]];
        let out = String::from_utf8(render_csv(&header, &rows).unwrap()).unwrap();
        assert_eq!(out, "a (Hz),\"b, c\"\n2.87e9,\"say \"\"hi\"\"\"\n3,\n");
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1 + 0.2, 2.87e9, -1.5e-20, 0.0] {
            let s = Cell::Num(x).render();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn paths() {
        assert_eq!(row_path(Path::new("/t/map.csv"), 7), PathBuf::from("/t/map_row007.csv"));
        assert_eq!(sidecar_path(Path::new("/t/map.csv")), PathBuf::from("/t/map.csv.meta"));
    }

    #[test]
    fn hash_depends_on_content_only() {
        let a = OutputFile { path: "x".into(), bytes: b"1".to_vec() };
        let b = OutputFile { path: "y".into(), bytes: b"1".to_vec() };
        assert_eq!(content_hash(&[a.clone()]), content_hash(&[b]));
        assert_eq!(content_hash(&[a]).len(), 64);
    }
}
