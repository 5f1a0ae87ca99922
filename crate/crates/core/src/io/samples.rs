use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::algebra::rational::to_f64;
use crate::algebra::{Rational, RationalFunction};
use crate::error::{Error, Result};

use super::parse::parse_constant;

/// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Window {
    /// `x0,x1,y0,y1`.
    pub fn parse(text: &str) -> Result<Window> {
        let v: Vec<Rational> = text.split(',').map(parse_constant).collect::<Result<_>>()?;
        let [x0, x1, y0, y1] = <[Rational; 4]>::try_from(v)
            .map_err(|_| Error::Schema(format!("window `{text}` must be x0,x1,y0,y1")))?;
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::Schema(format!("window `{text}` is empty")));
        }
        Ok(Window { x0, x1, y0, y1 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Grid,
    Crossing,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SamplePoint {
    pub kind: SampleKind,
    pub x: f64,
    pub y: f64,
    pub sign: i8,
}

fn sign_f64(t: f64) -> i8 {
    if t > 0.0 {
        1
    } else if t < 0.0 {
        -1
    } else {
        0
    }
}

/// Floating-point signs of `v` on a `resolution x resolution` grid, then
/// midpoints of grid edges whose ends have opposite signs. For plotting
/// only; nothing here is certified.
pub fn sample_curve(v: &RationalFunction, window: &Window, resolution: usize) -> Result<Vec<SamplePoint>> {
    if resolution < 2 {
        return Err(Error::Schema("resolution must be at least 2".into()));
    }
    if let Some(name) = v.vars().into_iter().find(|n| n != "x" && n != "y") {
        return Err(Error::UnboundParameter(name));
    }
    let step = |a: &Rational, b: &Rational| (to_f64(a), (to_f64(b) - to_f64(a)) / (resolution - 1) as f64);
    let (x0, dx) = step(&window.x0, &window.x1);
    let (y0, dy) = step(&window.y0, &window.y1);
    let rows: Vec<Vec<SamplePoint>> = crate::par::map_range(resolution, |j| {
        let y = y0 + dy * j as f64;
        (0..resolution)
            .map(|i| {
                let x = x0 + dx * i as f64;
                let at = |n: &str| if n == "x" { x } else { y };
                let s = sign_f64(v.num().eval_f64(&at)) * sign_f64(v.den().eval_f64(&at));
                SamplePoint { kind: SampleKind::Grid, x, y, sign: s }
            })
            .collect()
    });
    let mut out: Vec<SamplePoint> = rows.iter().flatten().copied().collect();
    let mut cross = |a: &SamplePoint, b: &SamplePoint| {
        if a.sign * b.sign < 0 {
            out.push(SamplePoint { kind: SampleKind::Crossing, x: (a.x + b.x) / 2.0, y: (a.y + b.y) / 2.0, sign: 0 });
        }
    };
    for j in 0..resolution {
        for i in 0..resolution {
            if i + 1 < resolution {
                cross(&rows[j][i], &rows[j][i + 1]);
            }
            if j + 1 < resolution {
                cross(&rows[j][i], &rows[j + 1][i]);
            }
        }
    }
    Ok(out)
}

pub fn write_samples_csv<W: Write>(points: &[SamplePoint], mut out: W) -> Result<()> {
    writeln!(out, "# non-certified floating-point samples of sign(V); not part of any certificate")?;
    let mut w = csv::Writer::from_writer(out);
    for p in points {
        w.serialize(p).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Samples `{V = 0}` and writes the CSV to `path`.
pub fn export_curve_samples(v: &RationalFunction, window: &Window, resolution: usize, path: &Path) -> Result<usize> {
    let points = sample_curve(v, window, resolution)?;
    let file = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    write_samples_csv(&points, std::io::BufWriter::new(file))?;
    Ok(points.len())
}
