//! The versioned JSON run report: config echo, computed vectors, hull,
//! distances, and check outcome. A report plus the same tool version is
//! enough to regenerate the vector data bitwise on the same platform.

use std::path::Path;

use anyhow::{Context, Result};
use rotset::geometry::ConvexPolygon;
use rotset::observable::RotationSample;
use rotset::Vec2;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub config: serde_json::Value,
    pub wall_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_vector: Option<Vec2>,
    pub vectors: Vectors,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hull: Option<Hull>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hausdorff_to_reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckOutcome>,
}

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct Hull {
    pub vertices: Vec<Vec2>,
    pub degenerate: bool,
}

impl From<&ConvexPolygon> for Hull {
    fn from(p: &ConvexPolygon) -> Hull {
        Hull { vertices: p.vertices().to_vec(), degenerate: p.is_degenerate() }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Vectors {
    /// Orbit-segment averages: one entry per sampled orbit.
    Real { entries: Vec<RotationSample> },
    /// Exact rationals from discretization cycles.
    Rational { entries: Vec<RationalRow> },
    /// The command reports no vector list (e.g. `mean`).
    None,
}

#[derive(Serialize)]
pub struct RationalRow {
    pub num_x: i64,
    pub num_y: i64,
    pub den: i64,
    pub vector: Vec2,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_period: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basin_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_count: Option<usize>,
}

#[derive(Serialize)]
pub struct CheckOutcome {
    pub ok: bool,
    pub detail: String,
}

impl Report {
    pub fn new(command: &str, config: serde_json::Value) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: Tool { name: "rotset", version: env!("CARGO_PKG_VERSION") },
            command: command.to_string(),
            config,
            wall_ms: 0,
            mean_vector: None,
            vectors: Vectors::None,
            hull: None,
            reference: None,
            hausdorff_to_reference: None,
            check: None,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}
