//! On-disk code database: `n{n}_k{k}.g2m` generator files plus `index.jsonl`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

pub const INDEX_FILE: &str = "index.jsonl";
pub const DB_ENV: &str = "LCD_DB";

/// One line of `index.jsonl`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub hull: usize,
    pub provenance: String,
    pub file: String,
}

#[derive(Clone, Debug)]
pub struct CodeRecord {
    pub meta: RecordMeta,
    pub code: LinearCode,
}

pub fn record_name(n: usize, k: usize) -> String {
    format!("n{n}_k{k}")
}

impl CodeRecord {
    /// Computes parameters from scratch and wraps the code.
    pub fn new(code: LinearCode, provenance: impl Into<String>) -> Result<Self> {
        let p = code.params()?;
        let name = record_name(p.n, p.k);
        Ok(CodeRecord {
            meta: RecordMeta {
                file: format!("{name}.g2m"),
                name,
                n: p.n,
                k: p.k,
                d: p.d,
                hull: p.hull_dim,
                provenance: provenance.into(),
            },
            code,
        })
    }

    pub fn n(&self) -> usize {
        self.meta.n
    }

    pub fn k(&self) -> usize {
        self.meta.k
    }

    pub fn d(&self) -> usize {
        self.meta.d
    }

    pub fn is_lcd(&self) -> bool {
        self.meta.hull == 0
    }

    /// Recomputes `(n, k, d, hull)` and reports the first disagreement.
    pub fn check(&self) -> Result<()> {
        let p = self.code.params()?;
        let stored = (self.meta.n, self.meta.k, self.meta.d, self.meta.hull);
        let fresh = (p.n, p.k, p.d, p.hull_dim);
        if stored != fresh {
            return Err(Error::VerificationMismatch {
                name: self.meta.name.clone(),
                detail: format!("stored (n,k,d,hull)={stored:?}, recomputed {fresh:?}"),
            });
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }
}

/// `LCD_DB` if set, else `./db`.
pub fn default_db_path() -> PathBuf {
    std::env::var_os(DB_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("db"))
}

#[derive(Debug)]
pub struct Database {
    root: PathBuf,
    index: BTreeMap<(usize, usize), RecordMeta>,
}

impl Database {
    /// Opens an existing database directory; a missing index counts as empty.
    pub fn open(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref().to_path_buf();
        if !root.is_dir() {
            return Err(Error::io(
                &root,
                std::io::Error::new(std::io::ErrorKind::NotFound, "database directory not found"),
            ));
        }
        let mut index = BTreeMap::new();
        let path = root.join(INDEX_FILE);
        if path.exists() {
            let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let meta: RecordMeta = serde_json::from_str(line).map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
                index.insert((meta.n, meta.k), meta);
            }
        }
        Ok(Database { root, index })
    }

    pub fn create(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref();
        fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
        Self::open(root)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &RecordMeta> {
        self.index.values()
    }

    pub fn contains(&self, n: usize, k: usize) -> bool {
        self.index.contains_key(&(n, k))
    }

    /// Loads and re-verifies a record.
    pub fn get(&self, n: usize, k: usize) -> Result<CodeRecord> {
        let meta = self
            .index
            .get(&(n, k))
            .ok_or(Error::RecordMissing { n, k })?
            .clone();
        let path = self.root.join(&meta.file);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let g = BitMatrix::from_g2m(&text)?;
        let code = LinearCode::new(g).map_err(|e| Error::VerificationMismatch {
            name: meta.name.clone(),
            detail: e.to_string(),
        })?;
        let rec = CodeRecord { meta, code };
        rec.check()?;
        Ok(rec)
    }

    /// Writes the generator file then rewrites the index; both through a rename.
    pub fn put(&mut self, rec: &CodeRecord) -> Result<()> {
        rec.check()?;
        write_atomic(&self.root.join(&rec.meta.file), &rec.code.generator().to_g2m())?;
        self.index.insert((rec.meta.n, rec.meta.k), rec.meta.clone());
        let mut text = String::new();
        for meta in self.index.values() {
            text.push_str(&serde_json::to_string(meta)?);
            text.push('\n');
        }
        write_atomic(&self.root.join(INDEX_FILE), &text)
    }

    /// Re-verifies every record.
    pub fn verify_all(&self) -> Vec<(String, Result<()>)> {
        self.index
            .iter()
            .map(|(&(n, k), meta)| (meta.name.clone(), self.get(n, k).map(|_| ())))
            .collect()
    }
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(contents.as_bytes())
        .and_then(|_| f.sync_all())
        .map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}
