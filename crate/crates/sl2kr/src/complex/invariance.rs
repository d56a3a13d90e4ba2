//! Homology-level invariance checks over a fixed list of diagram pairs.

use std::collections::BTreeMap;

use super::cube::{Cube, CubeOptions, Framing, GreenDot};
use super::diagram::LinkDiagram;
use super::ops::{across, slide_green_dot};
use crate::error::Result;
use crate::exec;
use crate::homology::{Constituent, Homology, WeightRow, Window};

/// The parts of a homology report that do not depend on choices of bases or diagrams.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalReport {
    pub dims: BTreeMap<(i64, i64), usize>,
    pub weights: Vec<WeightRow>,
    pub constituents: Vec<Constituent>,
    pub gamma: Vec<Constituent>,
    pub zeta: Vec<Constituent>,
}

impl CanonicalReport {
    pub fn of(cube: &Cube, window: Window) -> Result<CanonicalReport> {
        let c = cube.chain().simplify().complex;
        let h = Homology::new(&c, window);
        let r = h.decompose()?;
        Ok(CanonicalReport {
            dims: h.certified_dims(),
            weights: r.weights,
            constituents: r.constituents.into_iter().filter(|c| c.certified).collect(),
            gamma: r.gamma,
            zeta: r.zeta,
        })
    }

    /// First difference, described for a failure message.
    pub fn diff(&self, o: &CanonicalReport) -> Option<String> {
        if self.dims != o.dims {
            let k = self.dims.keys().chain(o.dims.keys()).find(|k| self.dims.get(k) != o.dims.get(k));
            return Some(format!("dimensions differ at {k:?}"));
        }
        if self.weights != o.weights {
            let i = self.weights.iter().zip(&o.weights).position(|(a, b)| a != b).unwrap_or(self.weights.len().min(o.weights.len()));
            return Some(format!("weight tables differ at row {i}"));
        }
        if self.constituents != o.constituents {
            return Some("constituents differ".into());
        }
        if self.gamma != o.gamma || self.zeta != o.zeta {
            return Some("locally finite parts differ".into());
        }
        None
    }
}

/// One side of a comparison.
#[derive(Clone, Debug)]
pub struct Setup {
    pub diagram: LinkDiagram,
    pub framing: Framing,
    pub dots: Vec<GreenDot>,
}

impl Setup {
    fn plain(diagram: LinkDiagram) -> Setup {
        Setup { diagram, framing: Framing::Unframed(None), dots: vec![] }
    }

    fn cube(&self, base: &CubeOptions) -> Result<Cube> {
        let opts = CubeOptions { dots: self.dots.clone(), framing: self.framing.clone(), ..base.clone() };
        Cube::new(&self.diagram, &opts)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub name: String,
    /// Every setup must give the same report as the first.
    pub setups: Vec<Setup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// The diagrams need a model the chosen `N` does not have.
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub outcome: Outcome,
}

fn braid(k: usize, w: &[i32]) -> LinkDiagram {
    LinkDiagram::from_braid(k, w).expect("built-in braid")
}

/// Placements of one green dot on the first strand of the Hopf link, each obtained from the
/// previous one by sliding through a crossing.
fn hopf_slides(base: &CubeOptions, solid: bool) -> Result<Vec<Setup>> {
    let d = braid(2, &[1, 1]);
    let e0 = d.crossings[0].bl;
    let dot = GreenDot { edge: e0, solid, mult: base.field.int(1) };
    let opts = CubeOptions { dots: vec![dot], ..base.clone() };
    let first = Cube::new(&d, &opts)?;
    let second = slide_green_dot(&first, 0, 0)?;
    let c1 = (0..d.crossings.len()).find(|&i| i != 0 && across(&d, second.opts.dots[0].edge, i).is_ok()).unwrap_or(0);
    let third = slide_green_dot(&second, 0, c1)?;
    Ok([first, second, third].into_iter().map(|c| Setup { diagram: d.clone(), framing: c.opts.framing, dots: c.opts.dots }).collect())
}

/// The built-in pairs: RII in both orientations, RIII, framed RI and green-dot slides.
pub fn suite_cases(base: &CubeOptions) -> Result<Vec<SuiteCase>> {
    let case = |name: &str, setups: Vec<Setup>| SuiteCase { name: name.into(), setups };
    let plain = |ds: Vec<LinkDiagram>| ds.into_iter().map(Setup::plain).collect::<Vec<_>>();
    Ok(vec![
        case("RII braidlike [1,-1]", plain(vec![LinkDiagram::unlink(2), braid(2, &[1, -1])])),
        case("RII braidlike [-1,1]", plain(vec![LinkDiagram::unlink(2), braid(2, &[-1, 1])])),
        case(
            "RII both orientations (PD)",
            plain(vec![LinkDiagram::unlink(2), LinkDiagram::from_pd("X[1,2,3,4] X[3,2,1,4]")?]),
        ),
        case("RII inside a link", plain(vec![braid(3, &[1, 1]), braid(3, &[1, 1, 2, -2])])),
        case("RIII positive", plain(vec![braid(3, &[1, 2, 1]), braid(3, &[2, 1, 2])])),
        case("RIII mixed", plain(vec![braid(3, &[1, 2, -1]), braid(3, &[-2, 1, 2])])),
        case("framed RI positive", plain(vec![LinkDiagram::unlink(1), braid(2, &[1])])),
        case("framed RI negative", plain(vec![LinkDiagram::unlink(1), braid(2, &[-1])])),
        case("green dot slides (hollow)", hopf_slides(base, false)?),
        case("green dot slides (solid)", hopf_slides(base, true)?),
    ])
}

pub fn run_case(case: &SuiteCase, base: &CubeOptions, window: Window) -> CaseResult {
    let report = |s: &Setup| s.cube(base).and_then(|c| CanonicalReport::of(&c, window));
    let outcome = match case.setups.iter().map(report).collect::<Result<Vec<_>>>() {
        Err(crate::Error::WebNotReducible(m)) => Outcome::Unsupported(m),
        Err(e) => Outcome::Fail(e.to_string()),
        Ok(rs) => match rs.iter().enumerate().skip(1).find_map(|(i, r)| rs[0].diff(r).map(|m| format!("setup {i}: {m}"))) {
            None => Outcome::Pass,
            Some(m) => Outcome::Fail(m),
        },
    };
    CaseResult { name: case.name.clone(), outcome }
}

/// Runs every built-in case; results follow the case order.
pub fn invariance_suite(base: &CubeOptions, window: Window) -> Result<Vec<CaseResult>> {
    let cases = suite_cases(base)?;
    Ok(exec::map(&cases, |c| run_case(c, base, window)))
}
