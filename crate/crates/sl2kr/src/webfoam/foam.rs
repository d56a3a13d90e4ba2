use super::web::{GreenDottedWeb, Shape, Web};
use crate::error::{Error, Result};
use crate::ring::{Exps, Field, Poly, Scalar};

/// A decoration on one facet. The polynomial uses the facet's `thickness` roots as variables
/// `0..a` (symmetric when `a = 2`) followed by `E_1, E_2, …`. `comp = None` is a central
/// decoration: `a = 0` and the polynomial lives in the `E_i` alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decoration {
    pub comp: Option<usize>,
    /// Position of the edge inside its component.
    pub facet: usize,
    pub thickness: u8,
    pub poly: Poly,
}

impl Decoration {
    pub fn new(comp: Option<usize>, facet: usize, thickness: u8, poly: Poly) -> Decoration {
        Decoration { comp, facet, thickness: if comp.is_some() { thickness } else { 0 }, poly }
    }

    pub fn central(poly: Poly) -> Decoration {
        Decoration::new(None, 0, 0, poly)
    }

    /// `p_1` of the facet.
    pub fn p1(comp: usize, facet: usize, thickness: u8, f: &Field) -> Decoration {
        let mut p = Poly::zero();
        for i in 0..thickness as usize {
            p.add_assign(&Poly::var(i, f));
        }
        Decoration::new(Some(comp), facet, thickness, p)
    }

    /// `p̄_1 = E_1 - p_1` of the facet.
    pub fn p1_bar(comp: usize, facet: usize, thickness: u8, f: &Field) -> Decoration {
        let a = thickness as usize;
        let p = Decoration::p1(comp, facet, thickness, f).poly;
        Decoration::new(Some(comp), facet, thickness, Poly::var(a, f).sub(&p))
    }

    pub fn degree(&self) -> Result<i64> {
        let a = self.thickness as usize;
        let deg = |e: &Exps| -> i64 {
            e.iter().enumerate().map(|(i, &k)| if i < a { 2 } else { 2 * (i - a + 1) as i64 } * k as i64).sum()
        };
        let mut it = self.poly.terms().map(|(e, _)| deg(e));
        let first = it.next().unwrap_or(0);
        if it.any(|k| k != first) {
            return Err(Error::Invalid("inhomogeneous decoration".into()));
        }
        Ok(first)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FoamKind {
    Decoration(Decoration),
    Assoc,
    Coassoc,
    DigonCup,
    DigonCap,
    Zip,
    Unzip,
    Cup,
    Cap,
    Saddle,
    /// Relabels components: target component `i` is source component `perm[i]`.
    Isotopy(Vec<usize>),
}

impl FoamKind {
    /// Names of the non-decoration kinds.
    pub const NAMES: [&'static str; 10] =
        ["assoc", "coassoc", "digon_cup", "digon_cap", "zip", "unzip", "cup", "cap", "saddle", "isotopy"];

    pub fn from_name(s: &str) -> Option<FoamKind> {
        Some(match s {
            "assoc" => FoamKind::Assoc,
            "coassoc" => FoamKind::Coassoc,
            "digon_cup" => FoamKind::DigonCup,
            "digon_cap" => FoamKind::DigonCap,
            "zip" => FoamKind::Zip,
            "unzip" => FoamKind::Unzip,
            "cup" => FoamKind::Cup,
            "cap" => FoamKind::Cap,
            "saddle" => FoamKind::Saddle,
            "isotopy" => FoamKind::Isotopy(vec![]),
            _ => return None,
        })
    }

    /// N-degree of the local model with thicknesses `(a, b)`.
    pub fn degree(&self, a: i64, b: i64, n: i64) -> Result<i64> {
        Ok(match self {
            FoamKind::Decoration(d) => d.degree()?,
            FoamKind::Assoc | FoamKind::Coassoc | FoamKind::Isotopy(_) => 0,
            FoamKind::DigonCup | FoamKind::DigonCap => -a * b,
            FoamKind::Zip | FoamKind::Unzip => a * b,
            FoamKind::Cup | FoamKind::Cap => -a * (n - a),
            FoamKind::Saddle => a * (n - a),
        })
    }
}

/// N-degree from foam data: facets `(thickness, χ, deg P)`, interval bindings `(a, b)` and
/// singular vertices `(a, b, c)`.
pub fn foam_degree_from_data(
    facets: &[(i64, i64, i64)],
    bindings: &[(i64, i64)],
    vertices: &[(i64, i64, i64)],
    n: i64,
) -> i64 {
    let f: i64 = facets.iter().map(|&(l, chi, p)| p - l * (n - l) * chi).sum();
    let s: i64 = bindings.iter().map(|&(a, b)| a * b + (a + b) * (n - a - b)).sum();
    let v: i64 = vertices.iter().map(|&(a, b, c)| a * b + b * c + a * c + (a + b + c) * (n - a - b - c)).sum();
    f + s - v
}

/// One slice of a foam in good position, located on components of its source web.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicFoam {
    pub kind: FoamKind,
    pub a: u8,
    pub b: u8,
    pub loc: Vec<usize>,
    pub source: Web,
    pub target: Web,
}

fn expect(web: &Web, c: usize, s: Shape) -> Result<()> {
    let got = web.shape(c)?;
    if got != s {
        return Err(Error::Location(format!("component {c} of {web} is {got:?}, expected {s:?}")));
    }
    Ok(())
}

impl BasicFoam {
    /// The slice `kind` applied to `source`; thicknesses default to those of the touched facets.
    pub fn new(kind: FoamKind, loc: &[usize], source: &Web) -> Result<BasicFoam> {
        let mut shapes = source.shapes();
        let thin = Shape::Circle(1);
        let (a, b) = match &kind {
            FoamKind::Decoration(d) => {
                if let Some(c) = d.comp {
                    let s = source.shape(c)?;
                    let th = *s.edge_thickness().get(d.facet).ok_or_else(|| Error::Location(format!("no facet {}", d.facet)))?;
                    if th != d.thickness {
                        return Err(Error::Location(format!("facet has thickness {th}, decoration expects {}", d.thickness)));
                    }
                }
                (d.thickness, 0)
            }
            FoamKind::Assoc | FoamKind::Coassoc => {
                return Err(Error::Unsupported("associativity foams need thickness 3".into()));
            }
            FoamKind::Cup => {
                let a = match loc {
                    [] => 1,
                    [a] => *a as u8,
                    _ => return Err(Error::Location("cup takes its thickness as location".into())),
                };
                shapes.push(Shape::Circle(a));
                (a, 0)
            }
            FoamKind::Cap => {
                let c = one(loc)?;
                let Shape::Circle(a) = source.shape(c)? else {
                    return Err(Error::Location("cap needs a circle".into()));
                };
                shapes.remove(c);
                (a, 0)
            }
            FoamKind::Saddle => match *loc {
                [c] => {
                    let Shape::Circle(a) = source.shape(c)? else {
                        return Err(Error::Location("saddle needs circles".into()));
                    };
                    shapes.push(Shape::Circle(a));
                    (a, 0)
                }
                [c1, c2] if c1 != c2 => {
                    let s = source.shape(c1)?;
                    expect(source, c2, s)?;
                    let Shape::Circle(a) = s else {
                        return Err(Error::Location("saddle needs circles".into()));
                    };
                    shapes.remove(c1.max(c2));
                    (a, 0)
                }
                _ => return Err(Error::Location("saddle touches one or two circles".into())),
            },
            FoamKind::DigonCup => {
                let c = one(loc)?;
                expect(source, c, Shape::Circle(2))?;
                shapes[c] = Shape::Theta;
                (1, 1)
            }
            FoamKind::DigonCap => {
                let c = one(loc)?;
                expect(source, c, Shape::Theta)?;
                shapes[c] = Shape::Circle(2);
                (1, 1)
            }
            FoamKind::Zip => match *loc {
                [c1, c2] if c1 != c2 => {
                    expect(source, c1, thin)?;
                    expect(source, c2, thin)?;
                    shapes[c1.min(c2)] = Shape::Theta;
                    shapes.remove(c1.max(c2));
                    (1, 1)
                }
                _ => return Err(Error::Location("zip touches two thin circles".into())),
            },
            FoamKind::Unzip => {
                let c = one(loc)?;
                expect(source, c, Shape::Theta)?;
                shapes[c] = thin;
                shapes.push(thin);
                (1, 1)
            }
            FoamKind::Isotopy(perm) => {
                let mut seen = perm.clone();
                seen.sort_unstable();
                if seen != (0..shapes.len()).collect::<Vec<_>>() {
                    return Err(Error::Location("isotopy needs a permutation of the components".into()));
                }
                shapes = perm.iter().map(|&i| shapes[i]).collect();
                (0, 0)
            }
        };
        Ok(BasicFoam { kind, a, b, loc: loc.to_vec(), source: source.clone(), target: Web::from_shapes(&shapes) })
    }

    pub fn degree(&self, n: usize) -> Result<i64> {
        self.kind.degree(self.a as i64, self.b as i64, n as i64)
    }
}

fn one(loc: &[usize]) -> Result<usize> {
    match loc {
        [c] => Ok(*c),
        _ => Err(Error::Location("expected one component".into())),
    }
}

/// A composition of basic foams between green-dotted webs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoamWord {
    pub source: GreenDottedWeb,
    pub target: GreenDottedWeb,
    pub slices: Vec<BasicFoam>,
}

impl FoamWord {
    pub fn identity(g: GreenDottedWeb) -> FoamWord {
        FoamWord { target: g.clone(), source: g, slices: vec![] }
    }

    /// Appends a slice; the new target web carries no green dots.
    pub fn then(mut self, kind: FoamKind, loc: &[usize]) -> Result<FoamWord> {
        let s = BasicFoam::new(kind, loc, &self.target.web)?;
        if s.target != self.target.web {
            self.target = GreenDottedWeb::plain(s.target.clone());
        }
        self.slices.push(s);
        Ok(self)
    }

    pub fn decorate(self, d: Decoration) -> Result<FoamWord> {
        self.then(FoamKind::Decoration(d), &[])
    }

    pub fn with_target_dots(mut self, dots: Vec<super::web::GreenDot>) -> FoamWord {
        self.target.dots = dots;
        self
    }

    /// `other ∘ self`.
    pub fn compose(&self, other: &FoamWord) -> Result<FoamWord> {
        if other.source.web != self.target.web {
            return Err(Error::Location(format!("cannot stack {} on {}", other.source.web, self.target.web)));
        }
        let mut w = self.clone();
        w.slices.extend(other.slices.iter().cloned());
        w.target = other.target.clone();
        Ok(w)
    }

    pub fn degree(&self, n: usize) -> Result<i64> {
        self.slices.iter().map(|s| s.degree(n)).sum()
    }
}

/// `Σ_F foam_degree(F)`.
pub fn foam_degree(f: &FoamWord, n: usize) -> Result<i64> {
    f.degree(n)
}

/// Linear combination of foam words with a common source and target.
#[derive(Clone, Debug, PartialEq)]
pub struct FoamLinComb {
    pub field: Field,
    pub terms: Vec<(Scalar, FoamWord)>,
}

impl FoamLinComb {
    pub fn zero(field: Field) -> FoamLinComb {
        FoamLinComb { field, terms: vec![] }
    }

    pub fn single(field: Field, c: Scalar, w: FoamWord) -> FoamLinComb {
        let mut out = FoamLinComb::zero(field);
        out.push(c, w);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, c: Scalar, w: FoamWord) {
        if c.is_zero() {
            return;
        }
        if let Some(k) = self.terms.iter().position(|(_, v)| *v == w) {
            let s = self.terms[k].0.add(&c);
            if s.is_zero() {
                self.terms.remove(k);
            } else {
                self.terms[k].0 = s;
            }
        } else {
            self.terms.push((c, w));
        }
    }

    pub fn extend(&mut self, o: FoamLinComb) {
        for (c, w) in o.terms {
            self.push(c, w);
        }
    }

    pub fn scale(&self, s: &Scalar) -> FoamLinComb {
        let mut out = FoamLinComb::zero(self.field);
        for (c, w) in &self.terms {
            out.push(c.mul(s), w.clone());
        }
        out
    }
}
