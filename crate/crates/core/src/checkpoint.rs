//! Plain-text checkpoint files.
//!
//! Header: one `key = value` line per field of the model parameters and the
//! geometry, plus `time = <t>`. Body: one `re im` line per sample, written
//! with 17 significant digits so the round trip is lossless. Ground-state
//! exports use the same layout with one extra `sharp_constant = <v>` line.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{derive_params, Field, Geometry, GeometryKind};

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn header_lines(field: &Field, extra: &[(&str, String)]) -> String {
    let p = &field.params;
    let g = &field.geometry;
    let mut s = String::new();
    let _ = writeln!(s, "n = {}", p.dim);
    let _ = writeln!(s, "b = {}", fmt_f64(p.b));
    let _ = writeln!(s, "sigma = {}", fmt_f64(p.sigma));
    let _ = writeln!(s, "s_c = {}", fmt_f64(p.s_c));
    let _ = writeln!(s, "sigma_c = {}", fmt_f64(p.sigma_c));
    let _ = writeln!(s, "beta = {}", fmt_f64(p.beta));
    let _ = writeln!(s, "regime_valid = {}", p.regime_valid);
    let kind = match g.kind {
        GeometryKind::Radial => "radial",
        GeometryKind::Cartesian3d => "cartesian3d",
    };
    let _ = writeln!(s, "kind = {kind}");
    let _ = writeln!(s, "extent = {}", fmt_f64(g.extent));
    let _ = writeln!(s, "resolution = {}", g.resolution);
    let _ = writeln!(s, "origin_offset = {}", g.origin_offset);
    for (k, v) in extra {
        let _ = writeln!(s, "{k} = {v}");
    }
    let _ = writeln!(s, "time = {}", fmt_f64(field.time));
    s
}

pub fn write_field(field: &Field, path: &Path) -> Result<()> {
    write_field_with_extra(field, path, &[])
}

pub fn write_field_with_extra(field: &Field, path: &Path, extra: &[(&str, String)]) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(header_lines(field, extra).as_bytes())?;
    let mut line = String::new();
    for v in &field.values {
        line.clear();
        let _ = writeln!(line, "{} {}", fmt_f64(v.re), fmt_f64(v.im));
        w.write_all(line.as_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Parsed checkpoint: the field plus any extra header entries (for the
/// ground-state export's `sharp_constant`).
pub struct Checkpoint {
    pub field: Field,
    pub extras: Vec<(String, String)>,
}

pub fn read_checkpoint(path: &Path) -> Result<Checkpoint> {
    let r = BufReader::new(std::fs::File::open(path)?);
    let mut header: Vec<(String, String)> = Vec::new();
    let mut values: Vec<Complex64> = Vec::new();
    let mut in_body = false;
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if !in_body {
            if let Some((k, v)) = t.split_once('=') {
                header.push((k.trim().to_string(), v.trim().to_string()));
                continue;
            }
            in_body = true;
        }
        let mut it = t.split_whitespace();
        let (re, im) = match (it.next(), it.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::Checkpoint(format!(
                    "{}:{}: expected 're im' sample line",
                    path.display(),
                    i + 1
                )))
            }
        };
        let re: f64 = re
            .parse()
            .map_err(|e| Error::Checkpoint(format!("{}:{}: {e}", path.display(), i + 1)))?;
        let im: f64 = im
            .parse()
            .map_err(|e| Error::Checkpoint(format!("{}:{}: {e}", path.display(), i + 1)))?;
        values.push(Complex64::new(re, im));
    }
    let get = |k: &str| -> Result<&str> {
        header
            .iter()
            .find(|(key, _)| key == k)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Checkpoint(format!("{}: missing header key {k}", path.display())))
    };
    let dim: u32 = get("n")?
        .parse()
        .map_err(|e| Error::Checkpoint(format!("n: {e}")))?;
    let b: f64 = get("b")?
        .parse()
        .map_err(|e| Error::Checkpoint(format!("b: {e}")))?;
    let sigma: f64 = get("sigma")?
        .parse()
        .map_err(|e| Error::Checkpoint(format!("sigma: {e}")))?;
    let params = derive_params(dim, b, sigma)?;
    let kind = get("kind")?;
    let extent: f64 = get("extent")?
        .parse()
        .map_err(|e| Error::Checkpoint(format!("extent: {e}")))?;
    let resolution: usize = get("resolution")?
        .parse()
        .map_err(|e| Error::Checkpoint(format!("resolution: {e}")))?;
    let geometry = match kind {
        "radial" => Geometry::radial(extent, resolution)?,
        "cartesian3d" => Geometry::cartesian3d(extent, resolution)?,
        other => {
            return Err(Error::Checkpoint(format!(
                "unknown geometry kind '{other}'"
            )))
        }
    };
    let time: f64 = get("time")?
        .parse()
        .map_err(|e| Error::Checkpoint(format!("time: {e}")))?;
    let known = [
        "n",
        "b",
        "sigma",
        "s_c",
        "sigma_c",
        "beta",
        "regime_valid",
        "kind",
        "extent",
        "resolution",
        "origin_offset",
        "time",
    ];
    let extras = header
        .into_iter()
        .filter(|(k, _)| !known.contains(&k.as_str()))
        .collect();
    let mut field = Field::new(geometry, params, values, 0.0)?;
    field.time = time;
    Ok(Checkpoint { field, extras })
}

pub fn read_field(path: &Path) -> Result<Field> {
    Ok(read_checkpoint(path)?.field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_field, ProfileSpec};

    #[test]
    fn roundtrip_is_lossless() {
        let p = derive_params(3, 0.5, 0.6).unwrap();
        let g = Geometry::radial(8.0, 64).unwrap();
        let mut f = make_field(
            g,
            p,
            &ProfileSpec::Gaussian {
                amplitude: 1.25,
                width: 0.7,
                center: [0.0; 3],
            },
        )
        .unwrap();
        // non-trivial phases and time
        for (j, v) in f.values.iter_mut().enumerate() {
            *v *= Complex64::from_polar(1.0, 0.13 * j as f64);
        }
        f.time = 0.62345678901234567;
        let dir = std::env::temp_dir().join("inls_ckpt_test");
        let path = dir.join("f.txt");
        write_field(&f, &path).unwrap();
        let g2 = read_field(&path).unwrap();
        assert_eq!(f.geometry, g2.geometry);
        assert_eq!(f.time, g2.time);
        for (a, b) in f.values.iter().zip(g2.values.iter()) {
            assert_eq!(a.re, b.re);
            assert_eq!(a.im, b.im);
        }
    }
}
