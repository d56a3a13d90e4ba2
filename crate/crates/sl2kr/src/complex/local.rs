//! The two-term complex of a single crossing, closed up to webs the foam layer can evaluate:
//! the dumbbell closes to a theta web and the parallel resolution to two circles.

use crate::error::{Error, Result};
use crate::ring::{Field, Scalar, Sl2};
use crate::tqft::{commutator, solve_dots, DotSlot};
use crate::webfoam::{DotKind, FoamKind, FoamWord, GreenDot, GreenDottedWeb, Params, Shape, Web};

#[derive(Clone, Debug, PartialEq)]
pub struct LocalTerm {
    pub t: i64,
    pub q: i64,
    pub web: GreenDottedWeb,
}

#[derive(Clone, Debug)]
pub struct LocalComplex {
    pub sign: i8,
    pub params: Params,
    pub source: LocalTerm,
    pub target: LocalTerm,
    /// Unzip for a positive crossing, zip for a negative one; its ends carry the dots.
    pub map: FoamWord,
    /// Hollow-dot multiplicities on the two thin edges of the dumbbell.
    pub dots: [Scalar; 2],
}

impl LocalComplex {
    pub fn dumbbell(&self) -> &LocalTerm {
        if self.sign > 0 {
            &self.source
        } else {
            &self.target
        }
    }

    /// Sum of the `h`-constants of the dumbbell dots.
    pub fn dot_h(&self) -> Scalar {
        self.dots[0].add(&self.dots[1]).neg()
    }

    /// First generator for which the differential fails to commute with the action.
    pub fn check_equivariance(&self) -> Result<Option<Sl2>> {
        for g in Sl2::ALL {
            if !commutator(g, &self.map, &self.params)?.is_zero() {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

/// `T`: dumbbell → q⁻¹ parallel in degrees (0, 1); `T′`: q parallel → dumbbell in (−1, 0).
/// The dots on the dumbbell are the unique ones making the differential equivariant.
pub fn resolve_crossing(sign: i8, n: usize, field: Field, t1: Scalar, t2: Scalar) -> Result<LocalComplex> {
    let params = Params::new(field, n, t1, t2);
    let theta = Web::theta();
    let pair = Web::from_shapes(&[Shape::Circle(1), Shape::Circle(1)]);
    let (src, map) = match sign {
        1 => (theta, FoamKind::Unzip),
        -1 => (pair, FoamKind::Zip),
        _ => return Err(Error::Invalid(format!("crossing sign {sign}"))),
    };
    let loc: &[usize] = if sign > 0 { &[0] } else { &[0, 1] };
    let word = FoamWord::identity(GreenDottedWeb::plain(src)).then(map, loc)?;
    let dumbbell = if sign > 0 { &word.source.web } else { &word.target.web };
    let edges = dumbbell.component_edges(0)[..2].to_vec();
    let slots: Vec<DotSlot> = edges.iter().map(|&edge| DotSlot { at_target: sign < 0, edge, kind: DotKind::Hollow }).collect();
    let (m, _) = solve_dots(&word, &slots, &params)?;
    let dots: Vec<GreenDot> =
        edges.iter().zip(&m).map(|(&e, c)| GreenDot { edge: Some(e), kind: DotKind::Hollow, mult: c.clone() }).collect();
    let mut word = word;
    if sign > 0 {
        word.source.dots = dots;
    } else {
        word.target.dots = dots;
    }
    let (source, target) = if sign > 0 {
        (LocalTerm { t: 0, q: 0, web: word.source.clone() }, LocalTerm { t: 1, q: -1, web: word.target.clone() })
    } else {
        (LocalTerm { t: -1, q: 1, web: word.source.clone() }, LocalTerm { t: 0, q: 0, web: word.target.clone() })
    };
    let local = LocalComplex { sign, params, source, target, map: word, dots: [m[0].clone(), m[1].clone()] };
    match local.check_equivariance()? {
        None => Ok(local),
        Some(g) => Err(Error::NoEquivariantTwist(format!("{g:?} on the crossing of sign {sign}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_dots() {
        let f = Field::Rationals;
        let half = f.frac(1, 2).unwrap();
        let pos = resolve_crossing(1, 2, f, half.clone(), half.clone()).unwrap();
        assert_eq!((pos.source.t, pos.target.t, pos.target.q), (0, 1, -1));
        let neg = resolve_crossing(-1, 2, f, half.clone(), half).unwrap();
        assert_eq!((neg.source.t, neg.source.q, neg.target.t), (-1, 1, 0));
        // the dumbbell dots carry h-constants -(t_1 + t_2), cancelling h(unzip) = -(t_1 + t_2)
        assert_eq!(pos.dot_h(), f.int(-1));
        assert!(resolve_crossing(0, 2, f, f.one(), f.one()).is_err());
    }
}
