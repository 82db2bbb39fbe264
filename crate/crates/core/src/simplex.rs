use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::error::Error;
use crate::rational::{join_display, Point, Rational};

/// Axis-aligned right simplex: `origin` plus one vertex displaced along each
/// coordinate axis by a positive edge length.
///
/// For `n = 2` this is the standard triangle `(x0,y0), (x0+a,y0), (x0,y0+b)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardSimplex {
    origin: Point,
    edges: Vec<Rational>,
}

impl StandardSimplex {
    pub fn new(origin: Point, edges: Vec<Rational>) -> Result<Self, Error> {
        if edges.len() != origin.dim() {
            return Err(Error::DimensionMismatch { expected: origin.dim(), got: edges.len() });
        }
        if let Some(e) = edges.iter().find(|e| !e.is_positive()) {
            return Err(Error::NotPositive { what: "simplex edge", value: e.clone() });
        }
        Ok(StandardSimplex { origin, edges })
    }

    pub fn dim(&self) -> usize {
        self.origin.dim()
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn edges(&self) -> &[Rational] {
        &self.edges
    }

    /// `origin` followed by `origin + edge_i * e_i` for each axis in order.
    pub fn vertices(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.dim() + 1);
        out.push(self.origin.clone());
        for (axis, e) in self.edges.iter().enumerate() {
            out.push(self.origin.shifted(axis, e));
        }
        out
    }

    pub fn edge_product(&self) -> Rational {
        edge_product(self)
    }

    /// Euclidean volume, `edge_product / n!`.
    pub fn euclidean_volume(&self) -> Rational {
        let fact: BigUint = (1..=self.dim() as u64).product();
        &self.edge_product() / &Rational::from(fact)
    }
}

/// Product of all edges of `simplex`; the orbit invariant of the
/// volume-preserving diagonal group.
pub fn edge_product(simplex: &StandardSimplex) -> Rational {
    Rational::product(simplex.edges.iter())
}

impl fmt::Display for StandardSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "simplex(origin {}, edges ({}))", self.origin, join_display(&self.edges, ","))
    }
}

impl fmt::Debug for StandardSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    #[test]
    fn edge_products() {
        let o = Point::origin(2).unwrap();
        let s = StandardSimplex::new(o.clone(), alloc::vec![q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(s.edge_product(), q(1, 1));
        let s = StandardSimplex::new(o, alloc::vec![q(2, 1), q(1, 2)]).unwrap();
        assert_eq!(s.edge_product(), q(1, 1));
        let o3 = Point::origin(3).unwrap();
        let s = StandardSimplex::new(o3, alloc::vec![q(2, 1), q(3, 1), q(1, 2)]).unwrap();
        assert_eq!(s.edge_product(), q(3, 1));
        assert_eq!(s.euclidean_volume(), q(1, 2));
    }

    #[test]
    fn vertices_in_axis_order() {
        let s = StandardSimplex::new(Point::from_ints(&[1, 1]).unwrap(), alloc::vec![q(2, 1), q(1, 2)])
            .unwrap();
        let v = s.vertices();
        assert_eq!(v[1], "(3,1)".parse().unwrap());
        assert_eq!(v[2], "(1,3/2)".parse().unwrap());
    }

    #[test]
    fn rejects_bad_edges() {
        let o = Point::origin(2).unwrap();
        assert!(matches!(
            StandardSimplex::new(o.clone(), alloc::vec![q(1, 1), q(0, 1)]),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            StandardSimplex::new(o, alloc::vec![q(1, 1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
