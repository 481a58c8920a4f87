use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(usize),
    Real(f64),
}

impl Cell {
    fn render(&self, out: &mut String) {
        use std::fmt::Write as _;
        match *self {
            Cell::Int(v) => write!(out, "{v}").unwrap(),
            // 12 significant digits
            Cell::Real(v) => write!(out, "{v:.11e}").unwrap(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str], rows: Vec<Vec<Cell>>) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        out
    }
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Files written by one invocation. Unless [`OutputSet::commit`] is called,
/// everything written so far is deleted on drop.
#[derive(Debug, Default)]
pub struct OutputSet {
    written: Vec<PathBuf>,
    committed: bool,
}

impl OutputSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn write_csv(&mut self, path: &Path, table: &Table) -> Result<(), CliError> {
        self.write_bytes(path, table.to_csv().as_bytes())
    }

    pub fn write_json<T: Serialize>(&mut self, path: &Path, value: &T) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e.into(),
        })?;
        text.push('\n');
        self.write_bytes(path, text.as_bytes())
    }

    fn write_bytes(&mut self, path: &Path, bytes: &[u8]) -> Result<(), CliError> {
        let io_err = |source| CliError::Io {
            path: path.to_path_buf(),
            source,
        };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io_err)?;
        }
        let mut partial = path.as_os_str().to_owned();
        partial.push(".partial");
        let partial = PathBuf::from(partial);
        let result = fs::File::create(&partial)
            .and_then(|mut f| f.write_all(bytes).and_then(|_| f.sync_all()))
            .and_then(|_| fs::rename(&partial, path));
        if let Err(e) = result {
            let _ = fs::remove_file(&partial);
            return Err(io_err(e));
        }
        self.written.push(path.to_path_buf());
        Ok(())
    }

    pub fn commit(mut self) -> Vec<PathBuf> {
        self.committed = true;
        std::mem::take(&mut self.written)
    }
}

impl Drop for OutputSet {
    fn drop(&mut self) {
        if !self.committed {
            for path in &self.written {
                let _ = fs::remove_file(path);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_formatting_is_fixed() {
        let table = Table::new(
            &["r", "x"],
            vec![
                vec![Cell::Int(3), Cell::Real(0.1)],
                vec![Cell::Int(4), Cell::Real(-2.5e-7)],
            ],
        );
        assert_eq!(table.to_csv(), "r,x\n3,1.00000000000e-1\n4,-2.50000000000e-7\n");
    }

    #[test]
    fn uncommitted_files_are_removed() {
        let dir = std::env::temp_dir().join(format!("cavent-output-{}", std::process::id()));
        let path = dir.join("a.csv");
        {
            let mut set = OutputSet::new();
            set.write_csv(&path, &Table::new(&["t"], vec![])).unwrap();
            assert!(path.exists());
        }
        assert!(!path.exists());
        let mut set = OutputSet::new();
        set.write_csv(&path, &Table::new(&["t"], vec![])).unwrap();
        set.commit();
        assert!(path.exists());
        fs::remove_dir_all(&dir).unwrap();
    }
}
