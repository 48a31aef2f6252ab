//! On-disk cache of geometric EDS prefixes.
//!
//! One file per (A, B, x, y, z), named by the SHA-256 of those values, holding
//! `n z_n` lines. A hit is trusted only after the first and last cached terms
//! are recomputed from the curve.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use super::{EdsSequence, EdsSource};
use crate::elliptic::{CurveQ, PointQ};
use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "EDSLAB_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct SequenceCache {
    root: PathBuf,
}

impl SequenceCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        SequenceCache { root: root.into() }
    }

    /// Cache rooted at `$EDSLAB_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(SequenceCache::new)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn key(curve: &CurveQ, point: &PointQ) -> Result<String> {
        let (x, y, z) = point
            .coords()
            .ok_or_else(|| Error::invalid("cannot cache the point at infinity"))?;
        let text = format!("{} {} {} {} {}", curve.a(), curve.b(), x, y, z);
        Ok(hex::encode(Sha256::digest(text.as_bytes())))
    }

    fn path(&self, curve: &CurveQ, point: &PointQ) -> Result<PathBuf> {
        Ok(self.root.join(format!("{}.eds", Self::key(curve, point)?)))
    }

    pub fn store(&self, seq: &EdsSequence) -> Result<()> {
        let EdsSource::Geometric { curve, point } = seq.source() else {
            return Err(Error::invalid("only geometric sequences are cached"));
        };
        fs::create_dir_all(&self.root).map_err(io_err)?;
        let path = self.path(curve, point)?;
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp).map_err(io_err)?;
        for (i, t) in seq.terms().iter().enumerate() {
            writeln!(f, "{} {}", i + 1, t).map_err(io_err)?;
        }
        f.sync_all().map_err(io_err)?;
        fs::rename(&tmp, &path).map_err(io_err)
    }

    /// First `n` terms, if cached and revalidated. Corrupt or stale files are
    /// treated as misses.
    pub fn load(&self, curve: &CurveQ, point: &PointQ, n: usize) -> Option<EdsSequence> {
        let text = fs::read_to_string(self.path(curve, point).ok()?).ok()?;
        let mut terms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let (idx, val) = line.split_once(' ')?;
            if idx.parse::<usize>().ok()? != i + 1 {
                return None;
            }
            terms.push(val.trim().parse::<BigInt>().ok()?);
            if terms.len() == n {
                break;
            }
        }
        if n == 0 || terms.len() < n {
            return None;
        }
        for idx in [1, n] {
            let z = curve.scalar_mul(idx as u64, point).coords()?.2.clone();
            if z != terms[idx - 1] {
                return None;
            }
        }
        Some(EdsSequence::from_parts(
            EdsSource::Geometric {
                curve: curve.clone(),
                point: point.clone(),
            },
            terms,
        ))
    }

    /// Load, or generate and store.
    pub fn get_or_generate(&self, curve: &CurveQ, point: &PointQ, n: usize) -> Result<EdsSequence> {
        if let Some(seq) = self.load(curve, point, n) {
            return Ok(seq);
        }
        let seq = super::generate_geometric(curve, point, n)?;
        self.store(&seq)?;
        Ok(seq)
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Internal(format!("cache i/o: {e}"))
}
