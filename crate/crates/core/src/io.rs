//! Text formats for fields, diagnostics and reports. Floats are written with
//! 17 significant digits (`{:.16e}`), so reruns produce identical bytes and
//! values round-trip exactly.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{DiskGrid, EigenBasis, GridField, SpectralField};
use crate::sqg::Diagnostics;

/// `{:.16e}`
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Stored coefficients as `m,k,lambda,re,im`, preceded by a `# max_m=…,max_k=…`
/// line.
pub fn write_spectral_csv<W: Write>(out: W, basis: &EigenBasis, f: &SpectralField) -> Result<()> {
    f.check(basis)?;
    let mut out = BufWriter::new(out);
    writeln!(out, "# max_m={},max_k={}", basis.max_m(), basis.max_k())?;
    writeln!(out, "m,k,lambda,re,im")?;
    for m in 0..=basis.max_m() {
        for k0 in 0..basis.max_k() {
            let c = f.coeffs()[basis.index(m, k0)];
            writeln!(out, "{m},{},{},{},{}", k0 + 1, fmt_float(basis.lambda(m, k0)), fmt_float(c.re), fmt_float(c.im))?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Inverse of [`write_spectral_csv`]; rows may come in any order and
/// missing rows read as zero.
pub fn read_spectral_csv<R: Read>(input: R) -> Result<SpectralField> {
    let mut lines = BufReader::new(input).lines().enumerate();
    let bad = |line: usize, msg: &str| Error::Config(format!("line {}: {msg}", line + 1));
    let (n0, header) = lines.next().ok_or_else(|| bad(0, "empty input"))?;
    let header = header?;
    let shape = header
        .strip_prefix("# ")
        .and_then(|h| {
            let mut it = h.split(',').map(|kv| kv.split_once('=').and_then(|(_, v)| v.trim().parse::<usize>().ok()));
            Some((it.next()??, it.next()??))
        })
        .ok_or_else(|| bad(n0, "expected `# max_m=M,max_k=K`"))?;
    let (max_m, max_k) = shape;
    let mut f = SpectralField::zeros_shape(max_m, max_k);
    for (n, line) in lines {
        let line = line?;
        if line.is_empty() || line.starts_with('#') || line.starts_with("m,") {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 {
            return Err(bad(n, "expected 5 columns"));
        }
        let m: usize = cols[0].trim().parse().map_err(|_| bad(n, "bad m"))?;
        let k: usize = cols[1].trim().parse().map_err(|_| bad(n, "bad k"))?;
        let re: f64 = cols[3].trim().parse().map_err(|_| bad(n, "bad re"))?;
        let im: f64 = cols[4].trim().parse().map_err(|_| bad(n, "bad im"))?;
        if m > max_m || k == 0 || k > max_k {
            return Err(bad(n, "mode outside the declared shape"));
        }
        f.set(m as i32, k, Complex64::new(re, im));
    }
    Ok(f)
}

/// Grid samples as `r,theta,value`.
pub fn write_grid_csv<W: Write>(out: W, grid: &DiskGrid, f: &GridField) -> Result<()> {
    if !f.fits(grid) {
        return Err(Error::SizeMismatch("grid field does not match the grid".into()));
    }
    let mut out = BufWriter::new(out);
    writeln!(out, "r,theta,value")?;
    for (i, r) in grid.radii().iter().enumerate() {
        for l in 0..grid.ntheta() {
            writeln!(out, "{},{},{}", fmt_float(*r), fmt_float(grid.theta(l)), fmt_float(f.at(i, l)))?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_diagnostics_csv<W: Write>(out: W, d: &Diagnostics) -> Result<()> {
    let mut out = BufWriter::new(out);
    let cols = d.columns();
    writeln!(out, "{}", cols.iter().map(|c| c.0).collect::<Vec<_>>().join(","))?;
    for i in 0..d.len() {
        let row: Vec<String> = cols.iter().map(|c| fmt_float(c.1[i])).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize + ?Sized>(out: W, value: &T) -> Result<()> {
    let mut out = BufWriter::new(out);
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Creates `path` and hands a writer to `body`; the file is removed again if
/// `body` fails.
pub fn write_file(path: &Path, body: impl FnOnce(&mut fs::File) -> Result<()>) -> Result<()> {
    let mut file = fs::File::create(path)?;
    let res = body(&mut file);
    if res.is_err() {
        drop(file);
        let _ = fs::remove_file(path);
    }
    res
}
