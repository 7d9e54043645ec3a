//! CSV export of computed rotation data and import of point clouds.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! write/read cycle reproduces every coordinate bit for bit.

use std::io;

use crate::discretize::{AsymptoticUnion, DiscretizedRotationSet};
use crate::observable::RotationSample;
use crate::vec2::Vec2;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("no point columns: expected headers vx,vy or x,y, found [{found}]")]
    MissingColumns { found: String },
}

/// One row per orbit segment: start point, segment length, rotation vector.
pub fn write_samples<W: io::Write>(w: W, samples: &[RotationSample]) -> Result<(), ReportError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["start_x", "start_y", "len", "vx", "vy"])?;
    for s in samples {
        out.write_record([
            s.start.x.to_string(),
            s.start.y.to_string(),
            s.len.to_string(),
            s.vector.x.to_string(),
            s.vector.y.to_string(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// One row per distinct rotation vector of a discretized map. `min_period`
/// is the shortest cycle period realizing the vector on this grid.
pub fn write_discretized<W: io::Write>(
    w: W,
    set: &DiscretizedRotationSet,
) -> Result<(), ReportError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "n",
        "rot_num_x",
        "rot_num_y",
        "rot_den",
        "vx",
        "vy",
        "min_period",
        "multiplicity",
        "basin_size",
    ])?;
    for e in &set.vectors {
        let v = e.vector.to_vec2();
        out.write_record([
            set.side.to_string(),
            e.vector.num_x().to_string(),
            e.vector.num_y().to_string(),
            e.vector.den().to_string(),
            v.x.to_string(),
            v.y.to_string(),
            e.min_period.to_string(),
            e.multiplicity.to_string(),
            e.basin_size.to_string(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// One row per distinct rotation vector across all grid sizes of a union.
pub fn write_union<W: io::Write>(w: W, union: &AsymptoticUnion) -> Result<(), ReportError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["rot_num_x", "rot_num_y", "rot_den", "vx", "vy", "grid_count"])?;
    for e in &union.union {
        let v = e.vector.to_vec2();
        out.write_record([
            e.vector.num_x().to_string(),
            e.vector.num_y().to_string(),
            e.vector.den().to_string(),
            v.x.to_string(),
            v.y.to_string(),
            e.grid_count.to_string(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Read a point cloud from a headed CSV, taking the `vx`,`vy` columns if
/// present and falling back to `x`,`y`. Extra columns are ignored, so any
/// file produced by the writers above reads back directly.
pub fn read_points<R: io::Read>(r: R) -> Result<Vec<Vec2>, ReportError> {
    let mut rdr = csv::Reader::from_reader(r);
    let headers = rdr.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let cols = match (find("vx"), find("vy")) {
        (Some(ix), Some(iy)) => (ix, iy),
        _ => match (find("x"), find("y")) {
            (Some(ix), Some(iy)) => (ix, iy),
            _ => {
                return Err(ReportError::MissingColumns {
                    found: headers.iter().collect::<Vec<_>>().join(","),
                })
            }
        },
    };
    let mut pts = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let parse = |i: usize| -> Result<f64, csv::Error> {
            record
                .get(i)
                .unwrap_or("")
                .trim()
                .parse::<f64>()
                .map_err(|e| {
                    io::Error::new(io::ErrorKind::InvalidData, format!("bad number: {e}")).into()
                })
        };
        pts.push(Vec2::new(parse(cols.0)?, parse(cols.1)?));
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::discretized_rotation_set;
    use crate::maps::LiftedMap;
    use crate::observable::{sample_observable, SamplingPlan};

    #[test]
    fn sample_csv_round_trips_bitwise() {
        let map = LiftedMap::translation(Vec2::new(1.0 / 3.0, -0.1));
        let samples = sample_observable(&map, &SamplingPlan::random(17, 50, 9)).unwrap();
        let mut buf = Vec::new();
        write_samples(&mut buf, &samples).unwrap();
        let pts = read_points(buf.as_slice()).unwrap();
        assert_eq!(pts.len(), samples.len());
        for (p, s) in pts.iter().zip(&samples) {
            assert_eq!(*p, s.vector);
        }
    }

    #[test]
    fn discretized_csv_lists_one_row_per_vector() {
        let map = LiftedMap::translation(Vec2::new(0.25, 0.5));
        let set = discretized_rotation_set(&map, 8).unwrap();
        let mut buf = Vec::new();
        write_discretized(&mut buf, &set).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,rot_num_x,rot_num_y,rot_den,vx,vy,min_period,multiplicity,basin_size"
        );
        assert_eq!(lines.next().unwrap(), "8,1,2,4,0.25,0.5,4,16,64");
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn reader_accepts_plain_xy_and_rejects_unknown_headers() {
        let pts = read_points("x,y\n0.5,0.25\n-1,2\n".as_bytes()).unwrap();
        assert_eq!(pts, vec![Vec2::new(0.5, 0.25), Vec2::new(-1.0, 2.0)]);
        let err = read_points("a,b\n1,2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ReportError::MissingColumns { .. }));
    }

    #[test]
    fn reader_rejects_malformed_numbers() {
        assert!(read_points("x,y\n0.5,oops\n".as_bytes()).is_err());
    }
}
