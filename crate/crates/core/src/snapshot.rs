//! Field snapshots: a JSON metadata document next to a raw payload.
//!
//! `<base>.json` holds `{nx, ny, lx, ly, time, name}`; `<base>.f64` holds
//! `nx·ny` little-endian IEEE doubles, row-major with y as the outer index.

use crate::error::{Error, Result};
use crate::spectral::{Grid, ScalarField};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotMeta {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    pub time: f64,
    pub name: String,
}

fn with_ext(base: &Path, ext: &str) -> PathBuf {
    let mut p = base.as_os_str().to_owned();
    p.push(".");
    p.push(ext);
    PathBuf::from(p)
}

/// Strip a trailing `.json` / `.f64` so either file can name the snapshot.
fn base_of(path: &Path) -> PathBuf {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") | Some("f64") => path.with_extension(""),
        _ => path.to_path_buf(),
    }
}

/// Write `<base>.json` and `<base>.f64`. Returns the metadata path.
pub fn write_snapshot(base: &Path, field: &ScalarField, time: f64, name: &str) -> Result<PathBuf> {
    let g = field.grid();
    let meta = SnapshotMeta {
        nx: g.nx,
        ny: g.ny,
        lx: g.lx,
        ly: g.ly,
        time,
        name: name.to_string(),
    };
    if let Some(dir) = base.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let meta_path = with_ext(base, "json");
    fs::write(&meta_path, serde_json::to_string_pretty(&meta)?)?;
    let mut payload = Vec::with_capacity(8 * field.values().len());
    for v in field.values() {
        payload.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(with_ext(base, "f64"), payload)?;
    Ok(meta_path)
}

/// Read a snapshot given its base name or either of its two files.
pub fn read_snapshot(path: &Path) -> Result<(SnapshotMeta, ScalarField)> {
    let base = base_of(path);
    let meta: SnapshotMeta = serde_json::from_str(&fs::read_to_string(with_ext(&base, "json"))?)?;
    let bytes = fs::read(with_ext(&base, "f64"))?;
    if bytes.len() != 8 * meta.nx * meta.ny {
        return Err(Error::Config(format!(
            "payload has {} bytes, expected {}",
            bytes.len(),
            8 * meta.nx * meta.ny
        )));
    }
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect();
    let grid = Grid::new(meta.nx, meta.ny, meta.lx, meta.ly)?;
    let field = ScalarField::new(grid, values)?;
    Ok((meta, field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let g = Grid::new(16, 32, 3.0, 5.0).unwrap();
        let f = ScalarField::from_fn(g, |x, y| (x * 1.7).sin() * y.exp() - 1.0 / 3.0).unwrap();
        let meta = write_snapshot(&dir.path().join("zeta_0001"), &f, 0.125, "zeta").unwrap();
        assert!(meta.ends_with("zeta_0001.json"));
        let (m, back) = read_snapshot(&meta).unwrap();
        assert_eq!(m.name, "zeta");
        assert_eq!(m.time, 0.125);
        assert_eq!((m.nx, m.ny), (16, 32));
        assert_eq!(back.values(), f.values());
    }

    #[test]
    fn payload_layout_is_row_major_little_endian() {
        let dir = tempfile::tempdir().unwrap();
        let g = Grid::new(16, 16, 1.0, 1.0).unwrap();
        let f = ScalarField::from_fn(g, |x, y| x + 100.0 * y).unwrap();
        write_snapshot(&dir.path().join("s"), &f, 0.0, "s").unwrap();
        let bytes = std::fs::read(dir.path().join("s.f64")).unwrap();
        // second sample is (ix=1, iy=0)
        let second = f64::from_le_bytes(bytes[8..16].try_into().unwrap());
        assert_eq!(second, g.x(1));
        // sample 16 starts row iy=1
        let row1 = f64::from_le_bytes(bytes[128..136].try_into().unwrap());
        assert_eq!(row1, 100.0 * g.y(1));
    }

    #[test]
    fn truncated_payload_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let g = Grid::new(16, 16, 1.0, 1.0).unwrap();
        write_snapshot(&dir.path().join("s"), &ScalarField::zeros(g), 0.0, "s").unwrap();
        std::fs::write(dir.path().join("s.f64"), [0u8; 16]).unwrap();
        assert!(read_snapshot(&dir.path().join("s")).is_err());
    }
}
