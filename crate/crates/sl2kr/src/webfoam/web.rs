use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    /// One thick edge in, two thin edges out.
    Split,
    /// Two thin edges in, one thick edge out.
    Merge,
}

/// Oriented edge; `tail`/`head` are vertex ids, both `None` for a closed circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub thickness: u8,
    pub tail: Option<usize>,
    pub head: Option<usize>,
}

/// Trivalent vertex. The incident edges are listed counterclockwise starting from the thick one,
/// which is the rotation system of the planar embedding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub kind: VertexKind,
    pub thick: usize,
    pub thin: [usize; 2],
}

/// Shapes of connected components that the state-space layer can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// Closed circle of thickness 1 or 2.
    Circle(u8),
    /// Two thin edges from a split to a merge vertex, closed by a thick edge.
    Theta,
}

impl Shape {
    /// Thickness of each facet-bounding edge, in the order the edges are created.
    pub fn edge_thickness(self) -> Vec<u8> {
        match self {
            Shape::Circle(a) => vec![a],
            Shape::Theta => vec![1, 1, 2],
        }
    }
}

/// A planar trivalent web with edges of thickness 1 and 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Web {
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
    /// Components in their canonical order, each with its edge ids.
    components: Vec<(Shape, Vec<usize>)>,
}

impl Web {
    pub fn empty() -> Web {
        Web::default()
    }

    pub fn circle(thickness: u8) -> Web {
        Web::from_shapes(&[Shape::Circle(thickness)])
    }

    pub fn theta() -> Web {
        Web::from_shapes(&[Shape::Theta])
    }

    /// Disjoint union of the given components, labeled in order.
    pub fn from_shapes(shapes: &[Shape]) -> Web {
        let mut w = Web::empty();
        for &s in shapes {
            w.push(s);
        }
        w
    }

    fn push(&mut self, s: Shape) {
        let e0 = self.edges.len();
        match s {
            Shape::Circle(a) => self.edges.push(Edge { thickness: a, tail: None, head: None }),
            Shape::Theta => {
                let (split, merge) = (self.vertices.len(), self.vertices.len() + 1);
                for _ in 0..2 {
                    self.edges.push(Edge { thickness: 1, tail: Some(split), head: Some(merge) });
                }
                self.edges.push(Edge { thickness: 2, tail: Some(merge), head: Some(split) });
                self.vertices.push(Vertex { kind: VertexKind::Split, thick: e0 + 2, thin: [e0, e0 + 1] });
                self.vertices.push(Vertex { kind: VertexKind::Merge, thick: e0 + 2, thin: [e0 + 1, e0] });
            }
        }
        let n = s.edge_thickness().len();
        self.components.push((s, (e0..e0 + n).collect()));
    }

    pub fn shapes(&self) -> Vec<Shape> {
        self.components.iter().map(|c| c.0).collect()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn shape(&self, c: usize) -> Result<Shape> {
        self.components.get(c).map(|x| x.0).ok_or_else(|| Error::Location(format!("no component {c}")))
    }

    /// Edge ids of component `c`.
    pub fn component_edges(&self, c: usize) -> &[usize] {
        &self.components[c].1
    }

    /// Component and position inside it of an edge id.
    pub fn locate(&self, edge: usize) -> Option<(usize, usize)> {
        self.components.iter().enumerate().find_map(|(c, (_, es))| es.iter().position(|&e| e == edge).map(|k| (c, k)))
    }

    /// Flow and orientation conditions at every vertex.
    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            let e = |k: usize| self.edges.get(k).ok_or_else(|| Error::Invalid(format!("vertex {i}: no edge {k}")));
            let (thick, a, b) = (e(v.thick)?, e(v.thin[0])?, e(v.thin[1])?);
            if thick.thickness != a.thickness + b.thickness {
                return Err(Error::Invalid(format!("vertex {i}: flow {} ≠ {} + {}", thick.thickness, a.thickness, b.thickness)));
            }
            let ok = match v.kind {
                VertexKind::Split => thick.head == Some(i) && a.tail == Some(i) && b.tail == Some(i),
                VertexKind::Merge => thick.tail == Some(i) && a.head == Some(i) && b.head == Some(i),
            };
            if !ok {
                return Err(Error::Invalid(format!("vertex {i}: orientations do not match a {:?}", v.kind)));
            }
        }
        for (k, e) in self.edges.iter().enumerate() {
            if !(1..=2).contains(&e.thickness) {
                return Err(Error::Invalid(format!("edge {k} has thickness {}", e.thickness)));
            }
            if e.tail.is_some() != e.head.is_some() {
                return Err(Error::Invalid(format!("edge {k} has one endpoint")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Web {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(s, _)| match s {
                Shape::Circle(a) => format!("O{a}"),
                Shape::Theta => "Θ".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(" ⊔ "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DotKind {
    Hollow,
    Solid,
}

/// A marked point with multiplicity on an edge (`None`: floating in the plane).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GreenDot {
    pub edge: Option<usize>,
    pub kind: DotKind,
    pub mult: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GreenDottedWeb {
    pub web: Web,
    pub dots: Vec<GreenDot>,
}

impl GreenDottedWeb {
    pub fn new(web: Web, dots: Vec<GreenDot>) -> GreenDottedWeb {
        GreenDottedWeb { web, dots }
    }

    pub fn plain(web: Web) -> GreenDottedWeb {
        GreenDottedWeb { web, dots: vec![] }
    }
}

/// Merges dots of one type on one edge, drops zero multiplicities and sorts by `(edge, type)`.
pub fn greendot_normalize(g: &GreenDottedWeb) -> GreenDottedWeb {
    let mut dots: Vec<GreenDot> = Vec::new();
    let mut sorted = g.dots.clone();
    sorted.sort_by_key(|d| (d.edge, d.kind));
    for d in sorted {
        match dots.last_mut() {
            Some(last) if last.edge == d.edge && last.kind == d.kind => last.mult = last.mult.add(&d.mult),
            _ => dots.push(d),
        }
    }
    dots.retain(|d| !d.mult.is_zero());
    // a floating hollow dot sees p_0 = p_1 = 0
    dots.retain(|d| d.edge.is_some() || d.kind == DotKind::Solid);
    GreenDottedWeb { web: g.web.clone(), dots }
}
