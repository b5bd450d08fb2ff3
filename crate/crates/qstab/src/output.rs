//! Output-file bookkeeping: atomic writes, and removal of everything this
//! invocation wrote if it later fails, so a nonzero exit never leaves
//! partial results behind.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;

pub struct Outputs {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Outputs {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| {
            CliError::config(format!(
                "cannot create output directory {}: {e}",
                dir.display()
            ))
        })?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    /// Write `name` under the output directory via a temp file + rename,
    /// so a crash mid-write never leaves a truncated file under the final
    /// name.
    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        let tmp = self.dir.join(format!("{name}.tmp"));
        if let Err(e) = fs::write(&tmp, bytes) {
            let _ = fs::remove_file(&tmp);
            return Err(CliError::runtime(format!(
                "cannot write {}: {e}",
                tmp.display()
            )));
        }
        if let Err(e) = fs::rename(&tmp, &path) {
            let _ = fs::remove_file(&tmp);
            return Err(CliError::runtime(format!(
                "cannot move {} into place: {e}",
                tmp.display()
            )));
        }
        self.written.push(path.clone());
        Ok(path)
    }

    /// Remove every file written so far. Called when the command fails
    /// after producing some of its outputs.
    pub fn discard(&mut self) {
        for path in self.written.drain(..) {
            let _ = fs::remove_file(path);
        }
    }

    #[cfg(test)]
    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_then_discards() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = Outputs::new(dir.path()).unwrap();
        let a = out.write("a.csv", b"x\n").unwrap();
        let b = out.write("b.csv", b"y\n").unwrap();
        assert_eq!(fs::read(&a).unwrap(), b"x\n");
        assert!(!dir.path().join("a.csv.tmp").exists());
        assert_eq!(out.written().len(), 2);
        out.discard();
        assert!(!a.exists());
        assert!(!b.exists());
        assert!(out.written().is_empty());
    }

    #[test]
    fn creates_nested_output_dirs() {
        let dir = tempfile::tempdir().unwrap();
        let nested = dir.path().join("runs/july");
        let mut out = Outputs::new(&nested).unwrap();
        out.write("c.csv", b"z\n").unwrap();
        assert!(nested.join("c.csv").exists());
    }

    #[test]
    fn overwrite_is_atomic_replacement() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = Outputs::new(dir.path()).unwrap();
        out.write("a.csv", b"first\n").unwrap();
        out.write("a.csv", b"second\n").unwrap();
        assert_eq!(fs::read(dir.path().join("a.csv")).unwrap(), b"second\n");
    }
}
