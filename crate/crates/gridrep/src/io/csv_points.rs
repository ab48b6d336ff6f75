//! Point clouds from CSV: one point per line, comma-separated coordinates.
//! A header row is optional; if present and its last column is named
//! `density`, that column supplies the per-point densities.

use std::io::Read;

use crate::clustering::PointCloud;
use crate::error::{Error, Result};

/// Reads a point cloud.
pub fn read_point_cloud<R: Read>(reader: R) -> Result<PointCloud> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut with_density = false;
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(format!("CSV: {e}")))?;
        let line = rec.position().map_or(k as u64 + 1, |p| p.line());
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) => rows.push(v),
            Err(_) if k == 0 => with_density = rec.iter().last() == Some("density"),
            Err(_) => return Err(Error::Parse(format!("CSV line {line}: non-numeric field"))),
        }
    }
    if with_density {
        let mut points = Vec::with_capacity(rows.len());
        let mut dens = Vec::with_capacity(rows.len());
        for mut r in rows {
            let d = r.pop().ok_or_else(|| Error::Parse("CSV: empty row".into()))?;
            dens.push(d);
            points.push(r);
        }
        PointCloud::new(points, Some(dens))
    } else {
        PointCloud::new(rows, None)
    }
}
