use crate::error::{Error, Result};
use crate::geometry::tangent::{common_tangents, Branch, CommonTangent, TangentLine};
use crate::geometry::{ConvexBody2, Point2};
use crate::phi::{ChordDataSource, PhiConfig};
use crate::probes::{functional_table, tangent_chord_probe, DataTable, Mode};

/// An admissible inner pair, the section data of the unknown body for both, and optionally the body itself.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub d1: ConvexBody2,
    pub d2: ConvexBody2,
    pub i: f64,
    pub mode: Mode,
    pub data1: ChordDataSource,
    pub data2: ChordDataSource,
    /// The two non-separating common tangents.
    pub tangents: [CommonTangent; 2],
    pub oracle: Option<ConvexBody2>,
}

impl Scenario {
    pub fn new(
        d1: ConvexBody2,
        d2: ConvexBody2,
        i: f64,
        mode: Mode,
        data1: ChordDataSource,
        data2: ChordDataSource,
        oracle: Option<ConvexBody2>,
    ) -> Result<Self> {
        if !(i > 0.0) || !i.is_finite() {
            return Err(Error::InvalidPower(i));
        }
        d1.validate()?;
        d2.validate()?;
        let tangents = common_tangents(&d1, &d2).require()?;
        for (name, data) in [("D1", &data1), ("D2", &data2)] {
            if let ChordDataSource::Table(t) = data {
                if !t.is_periodic() {
                    return Err(Error::IncompleteTable(format!("{name} table covers only part of the circle")));
                }
                if t.len() < 8 {
                    return Err(Error::IncompleteTable(format!("{name} table has {} frames", t.len())));
                }
            }
        }
        Ok(Self { d1, d2, i, mode, data1, data2, tangents, oracle })
    }

    /// Data read straight off `k`.
    pub fn oracle(k: ConvexBody2, d1: ConvexBody2, d2: ConvexBody2, i: f64, mode: Mode) -> Result<Self> {
        let data = ChordDataSource::Oracle(k.clone());
        Self::new(d1, d2, i, mode, data.clone(), data, Some(k))
    }

    /// Power-functional tables of `k` sampled at `grid` frames per inner body.
    pub fn tabulated(k: ConvexBody2, d1: ConvexBody2, d2: ConvexBody2, i: f64, mode: Mode, grid: usize) -> Result<Self> {
        let t1 = functional_table(&tangent_chord_probe(&k, &d1, grid)?, i, mode)?;
        let t2 = functional_table(&tangent_chord_probe(&k, &d2, grid)?, i, mode)?;
        Self::from_tables(d1, d2, t1, t2, i, mode, Some(k))
    }

    pub fn from_tables(
        d1: ConvexBody2,
        d2: ConvexBody2,
        t1: DataTable,
        t2: DataTable,
        i: f64,
        mode: Mode,
        oracle: Option<ConvexBody2>,
    ) -> Result<Self> {
        Self::new(d1, d2, i, mode, ChordDataSource::Table(t1), ChordDataSource::Table(t2), oracle)
    }

    /// Unit disks at `(0,0)` and `(3,0)` inside the radius-10 disk centered at `(1.5,0)`.
    pub fn radius10(i: f64, mode: Mode) -> Result<Self> {
        Self::oracle(
            ConvexBody2::disk(Point2::new(1.5, 0.0), 10.0),
            ConvexBody2::unit_disk(),
            ConvexBody2::disk(Point2::new(3.0, 0.0), 1.0),
            i,
            mode,
        )
    }

    /// Unit disks at `(±1.5, 0)` inside the ellipse with semi-axes 4 and 2.
    pub fn ellipse(i: f64, mode: Mode) -> Result<Self> {
        let (k, d1, d2) = ellipse_bodies();
        Self::oracle(k, d1, d2, i, mode)
    }

    pub fn configs(&self, b1: Branch, b2: Branch) -> Result<(PhiConfig, PhiConfig)> {
        Ok((
            PhiConfig::new(self.d1.clone(), self.i, self.mode, b1)?,
            PhiConfig::new(self.d2.clone(), self.i, self.mode, b2)?,
        ))
    }

    /// Indices of the tangents whose contact segment leaves `D1 ∪ D2`.
    pub fn candidates(&self) -> Vec<usize> {
        (0..2).filter(|&j| self.tangents[j].gap).collect()
    }

    /// Frame of tangent `j` as seen from `D1` and from `D2`.
    pub fn frames(&self, j: usize) -> (TangentLine, TangentLine) {
        let ct = &self.tangents[j];
        (
            TangentLine { theta: ct.theta, line: ct.line, contact: ct.contact1 },
            TangentLine { theta: ct.theta, line: ct.line, contact: ct.contact2 },
        )
    }

    /// The functional at tangent `j` from both inner bodies.
    pub fn functionals(&self, j: usize) -> Result<(f64, f64)> {
        let (f1, f2) = self.frames(j);
        Ok((
            self.data1.functional(&self.d1, &f1, self.i, self.mode)?,
            self.data2.functional(&self.d2, &f2, self.i, self.mode)?,
        ))
    }

    /// The whole scenario dilated about the origin by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        let scale_data = |d: &ChordDataSource| match d {
            ChordDataSource::Oracle(k) => ChordDataSource::Oracle(k.scaled(lambda)),
            ChordDataSource::Table(t) => ChordDataSource::Table(scale_table(t, lambda, self.i)),
        };
        Self::new(
            self.d1.scaled(lambda),
            self.d2.scaled(lambda),
            self.i,
            self.mode,
            scale_data(&self.data1),
            scale_data(&self.data2),
            self.oracle.as_ref().map(|k| k.scaled(lambda)),
        )
    }

    /// Length scale for relative tolerances: the contact gap plus the chord along the first tangent.
    pub fn scale(&self) -> f64 {
        let (p, q) = self.tangents[0].contacts();
        let f = self.functionals(0).map(|(a, b)| a.abs().max(b.abs()).powf(1.0 / self.i)).unwrap_or(0.0);
        p.dist(q) + f
    }
}

/// The ellipse preset bodies `(K, D1, D2)`.
pub fn ellipse_bodies() -> (ConvexBody2, ConvexBody2, ConvexBody2) {
    (
        ConvexBody2::ellipse(Point2::ORIGIN, 4.0, 2.0, 0.0),
        ConvexBody2::disk(Point2::new(-1.5, 0.0), 1.0),
        ConvexBody2::disk(Point2::new(1.5, 0.0), 1.0),
    )
}

fn scale_table(t: &DataTable, lambda: f64, i: f64) -> DataTable {
    let mut s = t.clone();
    let f = match t.kind {
        crate::probes::ProbeKind::ChordSum | crate::probes::ProbeKind::ChordDiff => lambda.powf(i),
        _ => lambda,
    };
    for v in &mut s.values {
        for x in v.iter_mut() {
            *x *= f;
        }
    }
    s
}
