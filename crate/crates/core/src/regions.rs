//! Region diagrams as data: one status cell per grid point, plus the degree
//! segment and global-minimum series. CSV is the contract; SVG is a thin view.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classifier::{self, ClassStatus, DegreeSegment};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionCell {
    pub n: u64,
    pub d: u64,
    pub h: u64,
    pub status: ClassStatus,
}

fn column(n: u64, d: u64) -> Result<Vec<RegionCell>> {
    (0..=n)
        .map(|h| {
            Ok(RegionCell {
                n,
                d,
                h,
                status: classifier::classify(n, d, h)?,
            })
        })
        .collect()
}

/// Fixed order: every odd `d <= n`, every `h` in `0..=n`.
pub fn order_grid(n: u64) -> Result<Vec<RegionCell>> {
    let mut cells = Vec::new();
    for d in (1..=n).step_by(2) {
        cells.extend(column(n, d)?);
    }
    Ok(cells)
}

/// Fixed degree: every odd `n` in `[max(d, n_min), n_max]`.
pub fn degree_grid(d: u64, n_min: u64, n_max: u64) -> Result<Vec<RegionCell>> {
    if d % 2 == 0 {
        return Err(Error::invalid(format!("degree d = {d} must be odd")));
    }
    let start = n_min.max(d) | 1;
    let mut cells = Vec::new();
    for n in (start..=n_max).step_by(2) {
        cells.extend(column(n, d)?);
    }
    Ok(cells)
}

/// Segments of degrees allowing approval with minimum support (`m = 0`) and
/// minimum plus one (`m = 1`), for every odd `n <= n_max`.
pub fn segment_series(n_max: u64) -> Result<Vec<DegreeSegment>> {
    let mut out = Vec::new();
    for n in (1..=n_max).step_by(2) {
        out.push(classifier::degree_segment(n, 0)?);
        out.push(classifier::degree_segment(n, 1)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalRow {
    pub n: u64,
    pub hmin: u64,
    pub gamma_maj: i64,
}

pub fn global_series(n_max: u64) -> Result<Vec<GlobalRow>> {
    (1..=n_max)
        .step_by(2)
        .map(|n| {
            Ok(GlobalRow {
                n,
                hmin: classifier::hmin_global(n)?,
                gamma_maj: classifier::gamma_maj_global(n)?,
            })
        })
        .collect()
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Csv(e.to_string())
}

/// Serializes rows with a header line.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(csv_err)?;
    String::from_utf8(bytes).map_err(csv_err)
}

pub fn cells_from_csv(text: &str) -> Result<Vec<RegionCell>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(csv_err))
        .collect()
}

/// Per `(n, d)` column: the lowest `h` outside uniform disapproval and the
/// highest `h` outside uniform approval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnBoundary {
    pub n: u64,
    pub d: u64,
    pub lower: u64,
    pub upper: u64,
}

pub fn boundaries(cells: &[RegionCell]) -> Vec<ColumnBoundary> {
    let mut cols: BTreeMap<(u64, u64), (u64, u64)> = BTreeMap::new();
    for c in cells {
        let e = cols.entry((c.n, c.d)).or_insert((u64::MAX, 0));
        if c.status != ClassStatus::UniformlyDisapproving {
            e.0 = e.0.min(c.h);
        }
        if c.status != ClassStatus::UniformlyApproving {
            e.1 = e.1.max(c.h);
        }
    }
    cols.into_iter()
        .map(|((n, d), (lower, upper))| ColumnBoundary { n, d, lower, upper })
        .collect()
}

fn fill(status: ClassStatus) -> &'static str {
    match status {
        ClassStatus::UniformlyDisapproving => "#d62728",
        ClassStatus::Mixed => "#f2d024",
        ClassStatus::UniformlyApproving => "#2ca02c",
    }
}

/// Renders cells with columns along x (by `d`, or by `n` when the grid has a
/// single degree) and `h/n` along y.
pub fn render_svg(cells: &[RegionCell]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    let by_degree = cells
        .windows(2)
        .any(|w| w[0].n == w[1].n && w[0].d != w[1].d)
        || cells.iter().all(|c| c.n == cells[0].n);
    let key = |c: &RegionCell| if by_degree { c.d } else { c.n };
    let mut keys: Vec<u64> = cells.iter().map(key).collect();
    keys.sort_unstable();
    keys.dedup();
    let index: BTreeMap<u64, usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let cw = W / keys.len().max(1) as f64;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    for c in cells {
        let x = index[&key(c)] as f64 * cw;
        let rows = (c.n + 1) as f64;
        let y = H - (c.h + 1) as f64 / rows * H;
        let _ = writeln!(
            out,
            r#"  <rect x="{x:.3}" y="{y:.3}" width="{cw:.3}" height="{:.3}" fill="{}"/>"#,
            H / rows,
            fill(c.status)
        );
    }
    out.push_str("</svg>\n");
    out
}
