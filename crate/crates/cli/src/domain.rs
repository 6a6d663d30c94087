use anyhow::{bail, Context, Result};
use eigenbox::fem::{default_mesh, richardson_estimate};
use eigenbox::geometry::{inradius, PlanarRegion, SimplePolygon};
use eigenbox::{ConvexPolygon64, Orthotope64, Spectrum64};

/// A domain named on the command line.
#[derive(Debug, Clone)]
pub enum Domain {
    Box(Orthotope64),
    Polygon(ConvexPolygon64),
    /// Nonconvex polygon; only inequalities without a convexity assumption
    /// are meaningful on it.
    Simple(SimplePolygon<f64>),
}

pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>().with_context(|| format!("invalid number {s:?}"))
        })
        .collect()
}

impl Domain {
    /// `builtin:square|disk64|right-triangle`, `box:s1,..,sn` (side lengths)
    /// or a polygon JSON file.
    pub fn resolve(spec: &str) -> Result<Self> {
        if let Some(name) = spec.strip_prefix("builtin:") {
            return Ok(match name {
                "square" => Domain::Box(Orthotope64::from_sides(vec![1.0, 1.0])?),
                "disk64" => Domain::Polygon(ConvexPolygon64::regular(64, 1.0)?),
                "right-triangle" => {
                    Domain::Polygon(ConvexPolygon64::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])?)
                }
                other => bail!("unknown builtin domain {other:?}; expected square, disk64 or right-triangle"),
            });
        }
        if let Some(sides) = spec.strip_prefix("box:") {
            return Ok(Domain::Box(Orthotope64::from_sides(parse_list(sides)?)?));
        }
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading polygon file {spec}"))?;
        Ok(Domain::Polygon(
            ConvexPolygon64::from_json(&text).with_context(|| format!("parsing polygon file {spec}"))?,
        ))
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Box(b) => b.dim(),
            _ => 2,
        }
    }

    pub fn id(&self) -> String {
        match self {
            Domain::Box(b) => b.domain_id(),
            Domain::Polygon(p) => p.domain_id(),
            Domain::Simple(p) => p.domain_id(),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Domain::Box(b) => b.volume(),
            Domain::Polygon(p) => p.area(),
            Domain::Simple(p) => p.area(),
        }
    }

    /// Inradius of a convex domain.
    pub fn inradius(&self) -> Result<Option<f64>> {
        Ok(match self {
            Domain::Box(b) => Some(b.inradius()),
            Domain::Polygon(p) => Some(inradius(p)?.radius),
            Domain::Simple(_) => None,
        })
    }

    pub fn is_box(&self) -> bool {
        matches!(self, Domain::Box(_))
    }

    pub fn is_convex(&self) -> bool {
        !matches!(self, Domain::Simple(_))
    }

    /// The first `count` eigenvalues: exact for boxes, Richardson-extrapolated
    /// finite differences otherwise.
    pub fn spectrum(&self, count: usize, mesh: Option<&[f64]>) -> Result<Spectrum64> {
        let fd = |region: &dyn PlanarRegion<f64>| -> Result<Spectrum64> {
            let hs = mesh.map_or_else(|| default_mesh(region), <[f64]>::to_vec);
            Ok(richardson_estimate(region, count, &hs)?)
        };
        match self {
            Domain::Box(b) => Ok(b.spectrum_prefix(count)?),
            Domain::Polygon(p) => fd(p),
            Domain::Simple(p) => fd(p),
        }
    }
}
