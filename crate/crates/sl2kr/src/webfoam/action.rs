use super::foam::{BasicFoam, Decoration, FoamKind, FoamLinComb, FoamWord};
use super::web::{DotKind, GreenDot, GreenDottedWeb, Web};
use crate::error::Result;
use crate::ring::{base_images, Field, Poly, Scalar, Sl2};

/// The parameters of the crossing twists; `t̄_i = 1 - t_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub field: Field,
    pub n: usize,
    pub t1: Scalar,
    pub t2: Scalar,
}

impl Params {
    pub fn new(field: Field, n: usize, t1: Scalar, t2: Scalar) -> Params {
        Params { field, n, t1, t2 }
    }

    /// `t_1 = t_2 = 1/2`.
    pub fn symmetric(field: Field, n: usize) -> Params {
        let half = field.frac(1, 2).expect("odd characteristic");
        Params { field, n, t1: half.clone(), t2: half }
    }

    pub fn t1_bar(&self) -> Scalar {
        self.field.one().sub(&self.t1)
    }

    pub fn t2_bar(&self) -> Scalar {
        self.field.one().sub(&self.t2)
    }

    fn int(&self, k: i64) -> Scalar {
        self.field.int(k)
    }

    fn half(&self, k: i64) -> Scalar {
        self.field.frac(k, 2).expect("odd characteristic")
    }
}

/// Natural action on a decoration polynomial: roots go to `-1, x², -2x`, the `E_k` as symmetric functions.
pub fn sl2_on_decoration(g: Sl2, d: &Decoration, n: usize, f: &Field) -> Poly {
    let a = d.thickness as usize;
    let mut images: Vec<Poly> = (0..a)
        .map(|i| {
            let x = Poly::var(i, f);
            match g {
                Sl2::E => Poly::int(f, -1),
                Sl2::F => x.mul(&x),
                Sl2::H => x.scale(&f.int(-2)),
            }
        })
        .collect();
    let shift: Vec<usize> = (0..n).map(|k| a + k).collect();
    images.extend(base_images(g, n, f).iter().map(|p| p.rename(&shift)));
    d.poly.derivation(&images)
}

fn word(source: &Web) -> FoamWord {
    FoamWord::identity(GreenDottedWeb::plain(source.clone()))
}

/// `Σ c_k · p_1(facet_k)` placed on component `comp` before or after the slice.
fn decorated(s: &BasicFoam, p: &Params, comp: usize, before: bool, terms: &[(Scalar, usize, bool)]) -> Result<FoamLinComb> {
    let f = p.field;
    let web = if before { &s.source } else { &s.target };
    let shape = web.shape(comp)?;
    let mut out = FoamLinComb::zero(f);
    for (c, facet, bar) in terms {
        let th = shape.edge_thickness()[*facet];
        let d = if *bar { Decoration::p1_bar(comp, *facet, th, &f) } else { Decoration::p1(comp, *facet, th, &f) };
        let w = if before {
            word(&s.source).decorate(d)?.then(s.kind.clone(), &s.loc)?
        } else {
            word(&s.source).then(s.kind.clone(), &s.loc)?.decorate(d)?
        };
        out.push(c.clone(), w);
    }
    Ok(out)
}

/// `g` applied to one basic foam, as a combination of decorated copies of it.
pub fn sl2_on_basic(g: Sl2, s: &BasicFoam, p: &Params) -> Result<FoamLinComb> {
    let f = p.field;
    let (a, b, n) = (s.a as i64, s.b as i64, p.n as i64);
    let same = || -> Result<FoamWord> { word(&s.source).then(s.kind.clone(), &s.loc) };
    if let FoamKind::Decoration(d) = &s.kind {
        let poly = match g {
            Sl2::H => d.poly.scale(&f.int(-d.degree()?)),
            _ => sl2_on_decoration(g, d, p.n, &f),
        };
        let mut out = FoamLinComb::zero(f);
        if !poly.is_zero() {
            let nd = Decoration { poly, ..d.clone() };
            out.push(f.one(), word(&s.source).decorate(nd)?);
        }
        return Ok(out);
    }
    if g == Sl2::E || matches!(s.kind, FoamKind::Assoc | FoamKind::Coassoc | FoamKind::Isotopy(_)) {
        return Ok(FoamLinComb::zero(f));
    }
    let ab = p.int(a * b);
    let t = p.t1.add(&p.t2);
    let tb = p.t1_bar().add(&p.t2_bar());
    if g == Sl2::H {
        let c = match s.kind {
            FoamKind::DigonCup => ab.mul(&t),
            FoamKind::DigonCap => ab.mul(&tb),
            FoamKind::Zip => ab.mul(&tb).neg(),
            FoamKind::Unzip => ab.mul(&t).neg(),
            FoamKind::Cup | FoamKind::Cap => p.int(a * (n - a)),
            FoamKind::Saddle => p.int(-a * (n - a)),
            _ => unreachable!(),
        };
        return Ok(FoamLinComb::single(f, c, same()?));
    }
    // the cup, cap and saddle twist: ½((N - a) p_1 + a p̄_1)
    let circle = |sign: i64| vec![(p.half(sign * (n - a)), 0, false), (p.half(sign * a), 0, true)];
    match s.kind {
        FoamKind::Cup => decorated(s, p, s.target.component_count() - 1, false, &circle(-1)),
        FoamKind::Cap => decorated(s, p, s.loc[0], true, &circle(-1)),
        FoamKind::Saddle if s.loc.len() == 2 => decorated(s, p, s.loc[0].min(s.loc[1]), false, &circle(1)),
        FoamKind::Saddle => decorated(s, p, s.loc[0], true, &circle(1)),
        FoamKind::DigonCup => decorated(s, p, s.loc[0], false, &[(p.t1.neg(), 0, false), (p.t2.neg(), 1, false)]),
        FoamKind::DigonCap => decorated(s, p, s.loc[0], true, &[(p.t1_bar().neg(), 0, false), (p.t2_bar().neg(), 1, false)]),
        FoamKind::Zip => decorated(s, p, s.loc[0].min(s.loc[1]), false, &[(p.t1_bar(), 0, false), (p.t2_bar(), 1, false)]),
        FoamKind::Unzip => decorated(s, p, s.loc[0], true, &[(p.t1.clone(), 0, false), (p.t2.clone(), 1, false)]),
        _ => unreachable!(),
    }
}

/// Twist of one green dot: `τ(f)` as decorations and the constant `τ(h)`.
pub fn dot_twist(web: &Web, dot: &GreenDot, p: &Params) -> Result<(Vec<(Scalar, Decoration)>, Scalar)> {
    let f = p.field;
    let n = p.n as i64;
    let l = &dot.mult;
    let Some(edge) = dot.edge else {
        return Ok(match dot.kind {
            DotKind::Hollow => (vec![], f.zero()),
            DotKind::Solid => (vec![(l.clone(), Decoration::central(Poly::var(0, &f)))], l.mul(&f.int(-n))),
        });
    };
    let (comp, facet) = web
        .locate(edge)
        .ok_or_else(|| crate::error::Error::Location(format!("green dot on missing edge {edge}")))?;
    let th = web.shape(comp)?.edge_thickness()[facet];
    let a = th as i64;
    Ok(match dot.kind {
        DotKind::Hollow => (vec![(l.clone(), Decoration::p1(comp, facet, th, &f))], l.mul(&f.int(-a))),
        DotKind::Solid => (vec![(l.clone(), Decoration::p1_bar(comp, facet, th, &f))], l.mul(&f.int(a - n))),
    })
}

fn twist_terms(g: Sl2, w: &FoamWord, at_source: bool, p: &Params) -> Result<FoamLinComb> {
    let gw = if at_source { &w.source } else { &w.target };
    let mut out = FoamLinComb::zero(p.field);
    for dot in &gw.dots {
        let (decos, h) = dot_twist(&gw.web, dot, p)?;
        match g {
            Sl2::E => {}
            Sl2::H => out.push(h, w.clone()),
            Sl2::F => {
                for (c, d) in decos {
                    let deco = FoamWord::identity(GreenDottedWeb::plain(gw.web.clone())).decorate(d)?;
                    let mut v = if at_source { deco.compose(w)? } else { w.compose(&deco)? };
                    v.source = w.source.clone();
                    v.target = w.target.clone();
                    out.push(c, v);
                }
            }
        }
    }
    Ok(out)
}

/// Leibniz extension to a word, twisted by the green dots of its ends:
/// `g * F = g(F) + τ_tgt(g) F - F τ_src(g)`.
pub fn sl2_on_word(g: Sl2, w: &FoamWord, p: &Params) -> Result<FoamLinComb> {
    let mut out = FoamLinComb::zero(p.field);
    for (i, s) in w.slices.iter().enumerate() {
        for (c, local) in sl2_on_basic(g, s, p)?.terms {
            let mut slices = w.slices[..i].to_vec();
            slices.extend(local.slices);
            slices.extend(w.slices[i + 1..].iter().cloned());
            out.push(c, FoamWord { source: w.source.clone(), target: w.target.clone(), slices });
        }
    }
    out.extend(twist_terms(g, w, false, p)?);
    out.extend(twist_terms(g, w, true, p)?.scale(&p.field.int(-1)));
    Ok(out)
}
