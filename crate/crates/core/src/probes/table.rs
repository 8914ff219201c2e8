//! Tabulated probe data keyed by angle, with Hermite interpolation and CSV I/O.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::point::wrap_tau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    /// `ρ₊, ρ₋` along supporting lines of the inner body.
    Chord,
    /// Area of `K ∩ H⁺` beyond a supporting line.
    Cap,
    /// `ρ(v), ρ(−v)` from a fixed interior point.
    PointChord,
    /// Area of `K ∩ {⟨x − p, v⟩ ≥ 0}`.
    HalfSpace,
    /// Point chords from a polygon vertex, restricted to its cone.
    VertexCone,
    /// `ρ₊^i + ρ₋^i` only.
    ChordSum,
    /// `ρ₊^i − ρ₋^i` only.
    ChordDiff,
}

impl ProbeKind {
    pub fn name(self) -> &'static str {
        match self {
            ProbeKind::Chord => "chord",
            ProbeKind::Cap => "cap",
            ProbeKind::PointChord => "point_chord",
            ProbeKind::HalfSpace => "half_space",
            ProbeKind::VertexCone => "vertex_cone",
            ProbeKind::ChordSum => "chord_sum",
            ProbeKind::ChordDiff => "chord_diff",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "chord" => ProbeKind::Chord,
            "cap" => ProbeKind::Cap,
            "point_chord" => ProbeKind::PointChord,
            "half_space" => ProbeKind::HalfSpace,
            "vertex_cone" => ProbeKind::VertexCone,
            "chord_sum" => ProbeKind::ChordSum,
            "chord_diff" => ProbeKind::ChordDiff,
            other => return Err(Error::Parse(format!("unknown probe kind {other:?}"))),
        })
    }

    pub fn columns(self) -> usize {
        match self {
            ProbeKind::Cap | ProbeKind::HalfSpace | ProbeKind::ChordSum | ProbeKind::ChordDiff => 1,
            _ => 2,
        }
    }
}

/// Probe values on a sorted angle grid.
///
/// Periodic tables cover `[0, 2π)` and wrap around. A table with a `range`
/// covers only that closed interval.
#[derive(Clone, Debug, PartialEq)]
pub struct DataTable {
    pub kind: ProbeKind,
    pub body: String,
    pub inner: String,
    pub power: Option<f64>,
    pub theta: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    /// Angular intervals skipped during sampling.
    pub excluded: Vec<(f64, f64)>,
    pub range: Option<(f64, f64)>,
}

impl DataTable {
    pub fn new(kind: ProbeKind, body: impl Into<String>, inner: impl Into<String>) -> Self {
        Self {
            kind,
            body: body.into(),
            inner: inner.into(),
            power: None,
            theta: Vec::new(),
            values: Vec::new(),
            excluded: Vec::new(),
            range: None,
        }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn push(&mut self, theta: f64, vals: Vec<f64>) {
        self.theta.push(theta);
        self.values.push(vals);
    }

    pub fn is_periodic(&self) -> bool {
        self.range.is_none()
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<f64> {
        self.values.iter().map(|v| v[c]).collect()
    }

    /// Whether `theta` falls inside one of the excluded gaps.
    pub fn in_gap(&self, theta: f64) -> bool {
        let t = wrap_tau(theta);
        self.excluded.iter().any(|&(a, b)| {
            if a <= b {
                t > a && t < b
            } else {
                t > a || t < b
            }
        })
    }

    /// Interpolated value of column `c` at `theta`.
    pub fn interp(&self, c: usize, theta: f64) -> f64 {
        let n = self.len();
        assert!(n >= 2, "table too small to interpolate");
        if self.is_periodic() {
            let t = wrap_tau(theta);
            // k: last node with theta[k] <= t, possibly wrapping
            let pos = self.theta.partition_point(|&x| x <= t);
            let (k, base) = if pos == 0 { (n - 1, -TAU) } else { (pos - 1, 0.0) };
            let x0 = self.theta[k] + base;
            if t == x0 {
                return self.values[k][c];
            }
            let k1 = (k + 1) % n;
            let x1 = if k1 == 0 { self.theta[0] + TAU + base } else { self.theta[k1] + base };
            self.hermite(c, k, k1, x0, x1, t)
        } else {
            let t = theta.clamp(self.theta[0], self.theta[n - 1]);
            let pos = self.theta.partition_point(|&x| x <= t);
            if pos == 0 {
                return self.values[0][c];
            }
            let k = (pos - 1).min(n - 2);
            if t == self.theta[k] {
                return self.values[k][c];
            }
            self.hermite(c, k, k + 1, self.theta[k], self.theta[k + 1], t)
        }
    }

    /// All columns at `theta`.
    pub fn interp_all(&self, theta: f64) -> Vec<f64> {
        (0..self.kind.columns().min(self.values.first().map_or(0, |v| v.len())))
            .map(|c| self.interp(c, theta))
            .collect()
    }

    fn hermite(&self, c: usize, k0: usize, k1: usize, x0: f64, x1: f64, t: f64) -> f64 {
        let h = x1 - x0;
        let y0 = self.values[k0][c];
        let y1 = self.values[k1][c];
        let d0 = self.slope(c, k0);
        let d1 = self.slope(c, k1);
        let s = (t - x0) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
    }

    /// Node `k + off` with its abscissa unwrapped relative to node `k`.
    fn node(&self, c: usize, k: usize, off: isize) -> Option<(f64, f64)> {
        let n = self.len() as isize;
        let j = k as isize + off;
        if self.is_periodic() {
            let wraps = j.div_euclid(n);
            let idx = j.rem_euclid(n) as usize;
            Some((self.theta[idx] + TAU * wraps as f64, self.values[idx][c]))
        } else if j < 0 || j >= n {
            None
        } else {
            Some((self.theta[j as usize], self.values[j as usize][c]))
        }
    }

    /// Derivative estimate at node `k`: five-point Lagrange slope, limited at monotone nodes
/// (Hyman's bound, relaxed by the Dougherty–Edelman–Hyman parabolic slopes).
    fn slope(&self, c: usize, k: usize) -> f64 {
        let mut pts: Vec<(f64, f64)> = Vec::with_capacity(5);
        for off in -2..=2 {
            if let Some(p) = self.node(c, k, off) {
                pts.push(p);
            }
        }
        let n = self.len();
        if !self.is_periodic() && pts.len() < 5 && n >= 5 {
            // one-sided stencil at the ends
            let start = if k < 2 { 0 } else { n - 5 };
            pts = (start..start + 5).map(|j| (self.theta[j], self.values[j][c])).collect();
        }
        let xk = self.node(c, k, 0).unwrap().0;
        let d = lagrange_derivative(&pts, xk);
        let yk = self.values[k][c];
        let (Some(l1), Some(r1)) = (self.node(c, k, -1), self.node(c, k, 1)) else { return d };
        let dl = (yk - l1.1) / (xk - l1.0);
        let dr = (r1.1 - yk) / (r1.0 - xk);
        if dl * dr <= 0.0 {
            return d;
        }
        if d * dl <= 0.0 {
            return 0.0;
        }
        let (hl, hr) = (xk - l1.0, r1.0 - xk);
        let pk = (dl * hr + dr * hl) / (hl + hr);
        let mut m = 3.0 * dl.abs().min(dr.abs()).min(pk.abs());
        // parabolic slopes from each side lift the bound next to an extremum
        if let Some(l2) = self.node(c, k, -2) {
            let dll = (l1.1 - l2.1) / (l1.0 - l2.0);
            let pl = dl + (dl - dll) * hl / (l1.0 - l2.0 + hl);
            if pl * pk > 0.0 && (dl - dll) * (dr - dl) > 0.0 {
                m = m.max(1.5 * pl.abs().min(pk.abs()));
            }
        }
        if let Some(r2) = self.node(c, k, 2) {
            let drr = (r2.1 - r1.1) / (r2.0 - r1.0);
            let pr = dr - (drr - dr) * hr / (hr + r2.0 - r1.0);
            if pr * pk > 0.0 && (dr - dl) * (drr - dr) > 0.0 {
                m = m.max(1.5 * pr.abs().min(pk.abs()));
            }
        }
        d.signum() * d.abs().min(m)
    }

    /// CSV text: a metadata header, optional `#` lines, then `theta,val1[,val2]` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str("kind,body,inner,i\n");
        let _ = writeln!(
            s,
            "{},{},{},{}",
            self.kind.name(),
            self.body,
            self.inner,
            self.power.map(fmt_f64).unwrap_or_default()
        );
        if let Some((a, b)) = self.range {
            let _ = writeln!(s, "#range,{},{}", fmt_f64(a), fmt_f64(b));
        }
        for &(a, b) in &self.excluded {
            let _ = writeln!(s, "#excluded,{},{}", fmt_f64(a), fmt_f64(b));
        }
        for (t, v) in self.theta.iter().zip(&self.values) {
            s.push_str(&fmt_f64(*t));
            for x in v {
                s.push(',');
                s.push_str(&fmt_f64(*x));
            }
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let bad = |n: usize, msg: &str| Error::Parse(format!("line {}: {msg}", n + 1));
        let (n0, header) = lines.next().ok_or_else(|| bad(0, "empty input"))?;
        if header.trim() != "kind,body,inner,i" {
            return Err(bad(n0, "expected header kind,body,inner,i"));
        }
        let (n1, meta) = lines.next().ok_or_else(|| bad(1, "missing metadata row"))?;
        let f: Vec<&str> = meta.split(',').collect();
        if f.len() != 4 {
            return Err(bad(n1, "metadata needs 4 fields"));
        }
        let mut t = DataTable::new(ProbeKind::parse(f[0])?, f[1], f[2]);
        if !f[3].is_empty() {
            t.power = Some(parse_f64(f[3]).map_err(|e| bad(n1, &e))?);
        }
        let cols = t.kind.columns();
        for (n, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if let Some(tag) = f[0].strip_prefix('#') {
                if f.len() != 3 {
                    return Err(bad(n, "metadata line needs 2 values"));
                }
                let a = parse_f64(f[1]).map_err(|e| bad(n, &e))?;
                let b = parse_f64(f[2]).map_err(|e| bad(n, &e))?;
                match tag {
                    "range" => t.range = Some((a, b)),
                    "excluded" => t.excluded.push((a, b)),
                    other => return Err(bad(n, &format!("unknown tag {other:?}"))),
                }
                continue;
            }
            if f.len() != cols + 1 {
                return Err(bad(n, &format!("expected {} fields", cols + 1)));
            }
            let th = parse_f64(f[0]).map_err(|e| bad(n, &e))?;
            let vals = f[1..].iter().map(|x| parse_f64(x)).collect::<std::result::Result<Vec<_>, _>>();
            t.push(th, vals.map_err(|e| bad(n, &e))?);
        }
        if t.theta.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("angles must be strictly increasing".into()));
        }
        Ok(t)
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))
}

fn lagrange_derivative(pts: &[(f64, f64)], x: f64) -> f64 {
    let m = pts.len();
    let mut d = 0.0;
    for j in 0..m {
        let (xj, yj) = pts[j];
        // derivative of the j-th basis polynomial at x
        let mut sum = 0.0;
        for i in 0..m {
            if i == j {
                continue;
            }
            let mut prod = 1.0 / (xj - pts[i].0);
            for l in 0..m {
                if l != j && l != i {
                    prod *= (x - pts[l].0) / (xj - pts[l].0);
                }
            }
            sum += prod;
        }
        d += yj * sum;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampled(n: usize, f: impl Fn(f64) -> f64) -> DataTable {
        let mut t = DataTable::new(ProbeKind::Cap, "k", "d");
        for k in 0..n {
            let th = TAU * k as f64 / n as f64;
            t.push(th, vec![f(th)]);
        }
        t
    }

    #[test]
    fn reproduces_nodes() {
        let t = sampled(64, |x| (3.0 * x).sin() + 2.0);
        for k in 0..64 {
            assert_eq!(t.interp(0, t.theta[k]), t.values[k][0]);
        }
    }

    #[test]
    fn smooth_periodic_accuracy() {
        let f = |x: f64| 2.0 + 0.3 * x.cos() + 0.1 * (2.0 * x).sin();
        let t = sampled(512, f);
        for k in 0..1000 {
            let x = 0.00731 + TAU * k as f64 / 1000.0;
            assert!((t.interp(0, x) - f(x)).abs() < 1e-8, "at {x}");
        }
        // wraparound interval
        assert!((t.interp(0, TAU - 1e-3) - f(TAU - 1e-3)).abs() < 1e-8);
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let mut t = sampled(17, |x| x.sin() / 3.0);
        t.power = Some(1.5);
        t.excluded.push((0.1, 0.2));
        let back = DataTable::from_csv(&t.to_csv()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn bad_csv_reports_line() {
        let err = DataTable::from_csv("kind,body,inner,i\ncap,k,d,\n0.0,x\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn bounded_range_uses_one_sided_stencil() {
        let mut t = DataTable::new(ProbeKind::VertexCone, "k", "d");
        t.range = Some((1.0, 2.0));
        for k in 0..=64 {
            let x = 1.0 + k as f64 / 64.0;
            t.push(x, vec![x.exp(), -x]);
        }
        for k in 0..50 {
            let x = 1.0 + 0.0199 * k as f64;
            assert!((t.interp(0, x) - x.exp()).abs() < 1e-7);
        }
    }
}
