//! JSON rendering. Object keys come out sorted, so equal inputs give byte-identical output.

use serde_json::{json, Value};
use sl2kr::complex::{check_equivariance, CaseResult, Cube, CubeOptions, Framing, LinkDiagram, Outcome};
use sl2kr::homology::{Constituent, Homology, Window};
use sl2kr::invariants::{moy_polynomial, pdg_e_homology, pdg_f_homology, rasmussen_s, Block, PdgReport};
use sl2kr::ring::{Field, LaurentQ, Scalar};
use sl2kr::Error;

use crate::args::{Config, Report};

pub const SCHEMA: u32 = 1;

fn int(s: &str) -> Value {
    s.parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(s))
}

/// `[numerator, denominator]`.
pub fn scalar(x: &Scalar) -> Value {
    let (n, d) = x.to_pair();
    json!([int(&n), int(&d)])
}

fn laurent(p: &LaurentQ) -> Value {
    p.to_pairs().into_iter().map(|(k, a)| json!([k, a])).collect()
}

fn field_name(f: Field) -> String {
    match f {
        Field::Rationals => "q".into(),
        Field::Prime(p) => format!("fp:{p}"),
    }
}

pub fn config(c: &Config) -> Value {
    let framing = match &c.opts.framing {
        Framing::Framed => json!("framed"),
        Framing::Unframed(None) => json!("unframed"),
        Framing::Unframed(Some(v)) => json!({ "unframed": v }),
    };
    let dots: Vec<Value> = c
        .opts
        .dots
        .iter()
        .map(|d| json!({ "edge": d.edge + 1, "kind": if d.solid { "solid" } else { "hollow" }, "mult": scalar(&d.mult) }))
        .collect();
    json!({
        "n": c.opts.n,
        "field": field_name(c.opts.field),
        "t1": scalar(&c.opts.t1),
        "t2": scalar(&c.opts.t2),
        "framing": framing,
        "dots": dots,
        "window": c.window.map(|w| json!([w.qmin, w.qmax])),
        "reports": c.reports.iter().map(|r| r.key()).collect::<Vec<_>>(),
    })
}

fn constituents(cs: &[Constituent]) -> Value {
    cs.iter()
        .map(|c| {
            json!({
                "t": c.t,
                "kind": format!("{:?}", c.kind),
                "lambda": scalar(&c.lambda),
                "mult": c.mult,
                "certified": c.certified,
                "text": c.to_string(),
            })
        })
        .collect()
}

fn blocks(bs: &[Block]) -> Value {
    bs.iter()
        .map(|b| json!({ "t": b.t, "bottom": b.bottom, "top": b.top, "size": b.size, "certified": b.certified }))
        .collect()
}

fn pdg(r: &PdgReport) -> Value {
    json!({
        "p": r.p,
        "blocks": blocks(&r.blocks),
        "slash": blocks(&r.slash),
        "image": r.image.as_ref().map(|v| json!(v.coeffs)),
    })
}

fn homology_of(cube: &Cube, window: Option<Window>) -> Homology {
    let c = cube.chain().simplify().complex;
    match window {
        Some(w) => Homology::new(&c, w),
        None => Homology::with_default_window(&c),
    }
}

fn require_prime(opts: &CubeOptions, what: &str) -> Result<u32, Error> {
    match opts.field {
        Field::Prime(p) => Ok(p),
        Field::Rationals => Err(Error::Invalid(format!("{what} needs --field fp:<p>"))),
    }
}

/// Every per-diagram report requested in `c`.
pub fn item(d: &LinkDiagram, c: &Config) -> Result<Value, Error> {
    let mut out = serde_json::Map::new();
    out.insert("normalized".into(), json!(d.normalized()));
    out.insert("hash".into(), json!(d.hash()));
    out.insert("components".into(), json!(d.components.len()));
    out.insert("crossings".into(), json!(d.crossings.len()));
    let needs_cube = c.reports.iter().any(|r| matches!(r, Report::Homology | Report::Sl2));
    let cube = if needs_cube { Some(Cube::new(d, &c.opts)?) } else { None };
    let h = cube.as_ref().map(|cube| homology_of(cube, c.window));
    for r in &c.reports {
        let v = match r {
            Report::Homology => {
                let (cube, h) = (cube.as_ref().unwrap(), h.as_ref().unwrap());
                let checks = check_equivariance(cube);
                let dims: Vec<Value> = h.dims().into_iter().map(|((t, q), n)| json!([t, q, n])).collect();
                json!({
                    "window": [h.window.qmin, h.window.qmax],
                    "certified": h.window.certified(),
                    "dims": dims,
                    "checks": {
                        "d_squared": checks.d_squared.is_none(),
                        "equivariance": checks.equivariance.is_none(),
                        "sl2_relations": checks.relations.is_none(),
                    },
                    "shift": [cube.shift.0, cube.shift.1],
                })
            }
            Report::Sl2 => {
                let r = h.as_ref().unwrap().decompose()?;
                let weights: Vec<Value> =
                    r.weights.iter().map(|w| json!([w.t, w.q, scalar(&w.weight), w.dim, w.highest])).collect();
                json!({
                    "certified": r.certified,
                    "weights": weights,
                    "constituents": constituents(&r.constituents),
                    "gamma": constituents(&r.gamma),
                    "zeta": constituents(&r.zeta),
                })
            }
            Report::S => {
                let r = rasmussen_s(d, &c.opts)?;
                json!({
                    "s": r.s,
                    "q_gen": r.q_gen,
                    "lee_levels": r.lee_levels,
                    "lee_s": r.lee_s,
                    "mu": scalar(&r.mu),
                    "mu_check": r.mu_check,
                })
            }
            Report::PdgE => {
                let p = require_prime(&c.opts, "pdg_e")?;
                if c.opts.n != p as usize {
                    return Err(Error::Invalid(format!("pdg_e needs N = p, got N = {} and p = {p}", c.opts.n)));
                }
                pdg(&pdg_e_homology(d, p)?)
            }
            Report::PdgF => pdg(&pdg_f_homology(d, c.opts.n, require_prime(&c.opts, "pdg_f")?)?),
            Report::Moy => laurent(&moy_polynomial(d, c.opts.n, &c.opts.framing)?),
            Report::InvarianceSuite => continue,
        };
        out.insert(r.key().into(), v);
    }
    Ok(Value::Object(out))
}

pub fn suite(results: &[CaseResult]) -> Value {
    results
        .iter()
        .map(|r| {
            let (status, detail) = match &r.outcome {
                Outcome::Pass => ("pass", None),
                Outcome::Fail(m) => ("fail", Some(m.clone())),
                Outcome::Unsupported(m) => ("unsupported", Some(m.clone())),
            };
            json!({ "name": r.name, "status": status, "detail": detail })
        })
        .collect()
}

pub fn default_suite_window(n: usize) -> Window {
    Window::new(-12, 16, n).expect("fixed window")
}
