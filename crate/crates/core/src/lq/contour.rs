//! Level sets in the plane by marching squares, with CSV and SVG output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BBox {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        if !(xmin < xmax && ymin < ymax) || ![xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "bounding box must satisfy xmin < xmax and ymin < ymax, got [{xmin},{xmax}]x[{ymin},{ymax}]"
            )));
        }
        Ok(BBox { xmin, xmax, ymin, ymax })
    }

    pub fn square(half_width: f64) -> Result<Self> {
        BBox::new(-half_width, half_width, -half_width, half_width)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polyline {
    pub level: f64,
    pub closed: bool,
    pub points: Vec<[f64; 2]>,
}

/// A cell edge crossed by the level set. Horizontal edges join `(i,j)` to
/// `(i+1,j)`, vertical ones `(i,j)` to `(i,j+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum EdgeId {
    H(usize, usize),
    V(usize, usize),
}

/// Sampled values of a function on a `(res+1) × (res+1)` vertex lattice.
pub struct SampledField {
    bbox: BBox,
    res: usize,
    values: Vec<f64>,
}

impl SampledField {
    pub fn sample(h: &(dyn Fn(&[f64]) -> f64 + Sync), bbox: BBox, resolution: usize) -> Result<Self> {
        if resolution < 16 {
            return Err(Error::InvalidArgument(format!("resolution must be >= 16, got {resolution}")));
        }
        let res = resolution;
        let mut values = Vec::with_capacity((res + 1) * (res + 1));
        for j in 0..=res {
            for i in 0..=res {
                let (x, y) = Self::coord(&bbox, res, i, j);
                values.push(h(&[x, y]));
            }
        }
        Ok(SampledField { bbox, res, values })
    }

    fn coord(bbox: &BBox, res: usize, i: usize, j: usize) -> (f64, f64) {
        (
            bbox.xmin + (bbox.xmax - bbox.xmin) * i as f64 / res as f64,
            bbox.ymin + (bbox.ymax - bbox.ymin) * j as f64 / res as f64,
        )
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.res + 1) + i]
    }

    /// Range of the finite sampled values.
    pub fn range(&self) -> (f64, f64) {
        self.values
            .iter()
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    /// Lattice spacing along x and y.
    pub fn spacing(&self) -> (f64, f64) {
        (
            (self.bbox.xmax - self.bbox.xmin) / self.res as f64,
            (self.bbox.ymax - self.bbox.ymin) / self.res as f64,
        )
    }

    fn crossing(&self, e: EdgeId, level: f64) -> [f64; 2] {
        let ((i0, j0), (i1, j1)) = match e {
            EdgeId::H(i, j) => ((i, j), (i + 1, j)),
            EdgeId::V(i, j) => ((i, j), (i, j + 1)),
        };
        let (a, b) = (self.at(i0, j0), self.at(i1, j1));
        let t = if b == a { 0.5 } else { ((level - a) / (b - a)).clamp(0.0, 1.0) };
        let (x0, y0) = Self::coord(&self.bbox, self.res, i0, j0);
        let (x1, y1) = Self::coord(&self.bbox, self.res, i1, j1);
        [x0 + t * (x1 - x0), y0 + t * (y1 - y0)]
    }

    /// Polylines of `{h = level}`: open chains first (ordered by their first
    /// edge), then closed loops.
    pub fn contour(&self, level: f64) -> Result<Vec<Polyline>> {
        let segments = self.segments(level);
        if segments.is_empty() {
            return Err(Error::EmptyContour { level });
        }
        let mut incident: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
        for (k, &(a, b)) in segments.iter().enumerate() {
            incident.entry(a).or_default().push(k);
            incident.entry(b).or_default().push(k);
        }
        let mut used = vec![false; segments.len()];
        let mut out = Vec::new();
        let ends: Vec<EdgeId> =
            incident.iter().filter(|(_, s)| s.len() == 1).map(|(&e, _)| e).collect();
        for start in ends {
            if let Some(chain) = self.walk(start, &segments, &incident, &mut used) {
                out.push(self.polyline(&chain, level, false));
            }
        }
        let starts: Vec<EdgeId> = incident.keys().copied().collect();
        for start in starts {
            if let Some(chain) = self.walk(start, &segments, &incident, &mut used) {
                out.push(self.polyline(&chain, level, true));
            }
        }
        Ok(out)
    }

    fn walk(
        &self,
        start: EdgeId,
        segments: &[(EdgeId, EdgeId)],
        incident: &BTreeMap<EdgeId, Vec<usize>>,
        used: &mut [bool],
    ) -> Option<Vec<EdgeId>> {
        let mut chain = vec![start];
        let mut cur = start;
        loop {
            let next_seg = incident[&cur].iter().copied().find(|&k| !used[k]);
            let Some(k) = next_seg else { break };
            used[k] = true;
            let (a, b) = segments[k];
            cur = if a == cur { b } else { a };
            chain.push(cur);
        }
        (chain.len() > 1).then_some(chain)
    }

    fn polyline(&self, chain: &[EdgeId], level: f64, closed: bool) -> Polyline {
        Polyline { level, closed, points: chain.iter().map(|&e| self.crossing(e, level)).collect() }
    }

    fn segments(&self, level: f64) -> Vec<(EdgeId, EdgeId)> {
        let mut segs = Vec::new();
        for j in 0..self.res {
            for i in 0..self.res {
                let corners = [self.at(i, j), self.at(i + 1, j), self.at(i + 1, j + 1), self.at(i, j + 1)];
                let above = corners.map(|v| v >= level);
                // bottom, right, top, left
                let edges = [EdgeId::H(i, j), EdgeId::V(i + 1, j), EdgeId::H(i, j + 1), EdgeId::V(i, j)];
                let crossed: Vec<usize> = (0..4).filter(|&e| above[e] != above[(e + 1) % 4]).collect();
                match crossed.len() {
                    2 => segs.push((edges[crossed[0]], edges[crossed[1]])),
                    4 => {
                        let center = corners.iter().sum::<f64>() / 4.0 >= level;
                        // cut off each corner whose side differs from the centre;
                        // corner c sits between edges (c + 3) % 4 and c
                        for c in 0..4 {
                            if above[c] != center {
                                segs.push((edges[(c + 3) % 4], edges[c]));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        segs
    }
}

/// Polylines of `{x ∈ R² : h(x) = level}` inside `bbox`.
pub fn horosphere_contour(
    h: &(dyn Fn(&[f64]) -> f64 + Sync),
    level: f64,
    bbox: BBox,
    resolution: usize,
) -> Result<Vec<Polyline>> {
    SampledField::sample(h, bbox, resolution)?.contour(level)
}

/// One block per polyline, blocks separated by a blank line, under an `x,y`
/// header.
pub fn contours_to_csv(polylines: &[Polyline]) -> String {
    let mut out = String::from("x,y\n");
    for (k, p) in polylines.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for [x, y] in &p.points {
            let _ = writeln!(out, "{},{}", fmt_coord(*x), fmt_coord(*y));
        }
    }
    out
}

/// Standalone SVG whose viewBox is the bounding box, y axis pointing up,
/// one `path` element per polyline.
pub fn contours_to_svg(polylines: &[Polyline], bbox: BBox, title: &str) -> String {
    let (w, hgt) = (bbox.xmax - bbox.xmin, bbox.ymax - bbox.ymin);
    let stroke = 0.004 * w.max(hgt);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="{}">"#,
        fmt_coord(bbox.xmin),
        fmt_coord(bbox.ymin),
        fmt_coord(w),
        fmt_coord(hgt),
        (600.0 * hgt / w).round()
    );
    let _ = writeln!(out, "<title>{}</title>", xml_escape(title));
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
        fmt_coord(bbox.xmin),
        fmt_coord(bbox.ymin),
        fmt_coord(w),
        fmt_coord(hgt)
    );
    let _ = writeln!(
        out,
        r#"<g transform="matrix(1 0 0 -1 0 {})" fill="none" stroke="black" stroke-width="{}">"#,
        fmt_coord(bbox.ymin + bbox.ymax),
        fmt_coord(stroke)
    );
    for p in polylines {
        let mut d = String::new();
        for (k, [x, y]) in p.points.iter().enumerate() {
            let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, fmt_coord(*x), fmt_coord(*y));
        }
        if p.closed {
            d.push_str(" Z");
        }
        let _ = writeln!(out, r#"<path data-level="{}" d="{}"/>"#, fmt_coord(p.level), d);
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn fmt_coord(v: f64) -> String {
    let r = crate::value::round_sig12(v);
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
