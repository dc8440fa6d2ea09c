//! Moment polygons of rank-2 models as SVG.

use std::fmt::Write;

use lgdual::{Error, HalfspaceSystem, Rational};
use num_traits::{ToPrimitive, Zero};

use crate::model_file::ModelInput;
use crate::numbers::format_rational;

#[derive(Debug, thiserror::Error)]
pub enum SvgError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("polygon is still unbounded after truncating at height {0}")]
    Unbounded(String),
}

/// The truncated polygon, translated so its vertices start at the origin.
#[derive(Clone, Debug)]
pub struct Drawing {
    /// Boundary points, counterclockwise, starting at the truncation point of
    /// the incoming ray when there is one.
    pub points: Vec<[Rational; 2]>,
    /// Whether each point is a vertex of the untruncated polygon.
    pub is_vertex: Vec<bool>,
    pub rays: Vec<[i64; 2]>,
    /// One label per facet, placed at the middle of its edge.
    pub labels: Vec<(String, [Rational; 2])>,
}

impl Drawing {
    pub fn vertex_count(&self) -> usize {
        self.is_vertex.iter().filter(|&&v| v).count()
    }

    pub fn truncation_points(&self) -> usize {
        self.points.len() - self.vertex_count()
    }
}

fn display_label(name: &str, from_degrees: bool) -> String {
    if !from_degrees {
        return name.to_string();
    }
    match name {
        "f0" => "f₀".into(),
        "fInf" => "f∞".into(),
        "X1" => "ℓ".into(),
        other => other.into(),
    }
}

pub fn polygon(input: &ModelInput, height: &Rational) -> Result<Drawing, SvgError> {
    let x = &input.variety;
    if x.rank != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: x.rank }.into());
    }
    let offset = input.k.im_lift();
    let h = HalfspaceSystem::new(x.dv.clone(), offset.clone())?;
    let facets = h.facets()?;
    let planar = h.vertices_and_rays_2d()?;
    let lowest = |k: usize| planar.vertices.iter().map(|v| v[k].clone()).min().unwrap_or_else(Rational::zero);
    let shift = [lowest(0), lowest(1)];
    let top = shift[1].clone() + height.clone();

    let cut = h.with_row(vec![0.into(), (-1).into()], top.clone())?;
    let truncated = cut.vertices_and_rays_2d()?;
    if !truncated.rays.is_empty() {
        return Err(SvgError::Unbounded(format_rational(height)));
    }
    let mut pts = truncated.vertices;
    let is_vertex = |p: &Vec<Rational>| planar.vertices.contains(p);
    if let Some(start) = (0..pts.len()).find(|&i| !is_vertex(&pts[i]) && is_vertex(&pts[(i + 1) % pts.len()])) {
        pts.rotate_left(start);
    }
    let flags: Vec<bool> = pts.iter().map(is_vertex).collect();

    let mut labels = Vec::new();
    for &row in &facets.irredundant {
        let on: Vec<&Vec<Rational>> = pts
            .iter()
            .filter(|p| {
                let c = x.dv.row(row);
                let v = Rational::from_integer(c[0].clone()) * p[0].clone()
                    + Rational::from_integer(c[1].clone()) * p[1].clone()
                    + offset[row].clone();
                v.is_zero()
            })
            .collect();
        if on.is_empty() {
            continue;
        }
        let n = Rational::from_integer((on.len() as i64).into());
        let mid = [0, 1].map(|k| on.iter().fold(Rational::zero(), |a, p| a + p[k].clone()) / n.clone() - shift[k].clone());
        labels.push((display_label(&x.divisors[row], input.degrees.is_some()), mid));
    }
    let points = pts.iter().map(|p| [p[0].clone() - shift[0].clone(), p[1].clone() - shift[1].clone()]).collect();
    let rays = planar.rays.iter().map(|r| [r[0].to_i64().unwrap_or(0), r[1].to_i64().unwrap_or(0)]).collect();
    Ok(Drawing { points, is_vertex: flags, rays, labels })
}

const SCALE: f64 = 80.0;
const MARGIN: f64 = 40.0;

fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

pub fn render(d: &Drawing) -> String {
    let xs: Vec<f64> = d.points.iter().map(|p| f(&p[0])).collect();
    let ys: Vec<f64> = d.points.iter().map(|p| f(&p[1])).collect();
    let min_x = xs.iter().cloned().fold(0.0, f64::min);
    let max_x = xs.iter().cloned().fold(0.0, f64::max);
    let max_y = ys.iter().cloned().fold(0.0, f64::max);
    let min_y = ys.iter().cloned().fold(0.0, f64::min);
    let width = (max_x - min_x) * SCALE + 2.0 * MARGIN;
    let height = (max_y - min_y) * SCALE + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x - min_x) * SCALE;
    let py = |y: f64| MARGIN + (max_y - y) * SCALE;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let pts: Vec<String> = xs.iter().zip(&ys).map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y))).collect();
    let _ = writeln!(s, r##"  <polygon points="{}" fill="#dde8f4" stroke="#1f3b5c" stroke-width="2"/>"##, pts.join(" "));
    for (i, p) in d.points.iter().enumerate().filter(|(i, _)| d.is_vertex[*i]) {
        let _ = writeln!(
            s,
            r##"  <circle class="vertex" data-index="{i}" cx="{:.2}" cy="{:.2}" r="4" fill="#1f3b5c"/>"##,
            px(f(&p[0])),
            py(f(&p[1]))
        );
    }
    for (name, at) in &d.labels {
        let _ = writeln!(
            s,
            r#"  <text class="facet" x="{:.2}" y="{:.2}" font-family="serif" font-size="16" text-anchor="middle">{name}</text>"#,
            px(f(&at[0])),
            py(f(&at[1])) - 6.0
        );
    }
    s.push_str("</svg>\n");
    s
}
