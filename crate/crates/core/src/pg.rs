//! Points, hyperplanes, lines and projections in PG(k-1, q).
//!
//! A projective point is stored as its canonical coordinate vector: the
//! unique scalar multiple whose first nonzero coordinate is 1. Hyperplanes
//! are stored through their dual vectors with the same canonicalization, and
//! incidence is the vanishing of the dot product.

use std::collections::HashMap;
use std::fmt;

use crate::config::Caps;
use crate::gf::Field;
use crate::{Error, Result};

/// A point of PG(k-1, q) in canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<u32>);

/// A hyperplane of PG(k-1, q), stored as its canonical dual vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane(pub Vec<u32>);

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":")
        )
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":")
        )
    }
}

/// A line of PG(k-1, q) through two independent points, with its q+1 points
/// cached in canonical form.
#[derive(Debug, Clone)]
pub struct Line {
    pub base: Point,
    pub dir: Point,
    pub points: Vec<Point>,
}

/// The projective space PG(k-1, q).
#[derive(Debug, Clone)]
pub struct ProjSpace {
    field: Field,
    k: usize,
}

impl ProjSpace {
    /// PG(k-1, q) over the given field; `k` is the vector-space dimension.
    pub fn new(field: &Field, k: usize) -> ProjSpace {
        assert!(k >= 1);
        ProjSpace {
            field: field.clone(),
            k,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Vector-space dimension k (the projective dimension is k-1).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vector_count(&self) -> u64 {
        (self.field.q() as u64).pow(self.k as u32)
    }

    /// (q^k - 1) / (q - 1).
    pub fn point_count(&self) -> u64 {
        (self.vector_count() - 1) / (self.field.q() as u64 - 1)
    }

    /// Canonical representative of the span of v, or `None` for the zero vector.
    pub fn canonicalize(&self, v: &[u32]) -> Option<Point> {
        debug_assert_eq!(v.len(), self.k);
        let lead = v.iter().position(|&c| c != 0)?;
        let inv = self.field.inv(v[lead]).expect("nonzero leading coordinate");
        Some(Point(v.iter().map(|&c| self.field.mul(inv, c)).collect()))
    }

    /// All points in lexicographic order of their canonical coordinate codes.
    pub fn points(&self, caps: &Caps) -> Result<Vec<Point>> {
        caps.check_enumeration("point enumeration", self.vector_count())?;
        let q = self.field.q();
        let mut out = Vec::with_capacity(self.point_count() as usize);
        // Canonical forms have some leading zeros, then a 1, then free entries.
        for lead in 0..self.k {
            let free = self.k - lead - 1;
            let total = (q as u64).pow(free as u32);
            for idx in 0..total {
                let mut v = vec![0u32; self.k];
                v[lead] = 1;
                let mut rest = idx;
                // Most significant free coordinate first keeps the whole list
                // lexicographic within a fixed leading position.
                for slot in (lead + 1..self.k).rev() {
                    v[slot] = (rest % q as u64) as u32;
                    rest /= q as u64;
                }
                out.push(Point(v));
            }
        }
        out.sort();
        Ok(out)
    }

    /// All hyperplanes, as canonical dual vectors, in lexicographic order.
    pub fn hyperplanes(&self, caps: &Caps) -> Result<Vec<Hyperplane>> {
        Ok(self.points(caps)?.into_iter().map(|p| Hyperplane(p.0)).collect())
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        let f = &self.field;
        a.iter()
            .zip(b)
            .fold(0u32, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }

    pub fn incident(&self, p: &Point, h: &Hyperplane) -> Result<bool> {
        if p.0.len() != self.k || h.0.len() != self.k {
            return Err(Error::DimensionMismatch(p.0.len(), h.0.len()));
        }
        Ok(self.dot(&p.0, &h.0) == 0)
    }

    /// Hyperplanes through a point, in canonical order.
    pub fn hyperplanes_through(&self, p: &Point, caps: &Caps) -> Result<Vec<Hyperplane>> {
        let mut out = Vec::new();
        for h in self.hyperplanes(caps)? {
            if self.incident(p, &h)? {
                out.push(h);
            }
        }
        Ok(out)
    }

    /// Projection from `center`: eliminate on the center's leading coordinate,
    /// then delete that coordinate. Deterministic quotient coordinates.
    pub fn project_from(&self, center: &Point, target: &Point) -> Result<Point> {
        if center.0.len() != self.k || target.0.len() != self.k {
            return Err(Error::DimensionMismatch(center.0.len(), target.0.len()));
        }
        if center == target {
            return Err(Error::ProjectCenterItself);
        }
        let pivot = center
            .0
            .iter()
            .position(|&c| c != 0)
            .expect("canonical point is nonzero");
        debug_assert_eq!(center.0[pivot], 1);
        let f = &self.field;
        let factor = target.0[pivot];
        let mut reduced = Vec::with_capacity(self.k - 1);
        for i in 0..self.k {
            if i == pivot {
                continue;
            }
            reduced.push(f.sub(target.0[i], f.mul(factor, center.0[i])));
        }
        let quotient = ProjSpace::new(&self.field, self.k - 1);
        quotient.canonicalize(&reduced).ok_or(Error::ProjectCenterItself)
    }

    /// Exact rank of a set of coordinate vectors over F_q.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        let f = &self.field;
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let mut rank = 0;
        for col in 0..self.k {
            let Some(pivot_row) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot_row);
            let inv = f.inv(m[rank][col]).unwrap();
            for c in 0..self.k {
                m[rank][c] = f.mul(inv, m[rank][c]);
            }
            for r in 0..m.len() {
                if r != rank && m[r][col] != 0 {
                    let factor = m[r][col];
                    for c in 0..self.k {
                        let sub = f.mul(factor, m[rank][c]);
                        m[r][c] = f.sub(m[r][c], sub);
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    /// True iff the three distinct points span at most a line.
    pub fn collinear(&self, p1: &Point, p2: &Point, p3: &Point) -> Result<bool> {
        if p1 == p2 || p1 == p3 || p2 == p3 {
            return Err(Error::DuplicatePoints);
        }
        Ok(self.rank(&[p1.0.clone(), p2.0.clone(), p3.0.clone()]) <= 2)
    }

    /// The line through two distinct points, with all q+1 points cached.
    pub fn line_through(&self, p1: &Point, p2: &Point) -> Result<Line> {
        if p1 == p2 {
            return Err(Error::DuplicatePoints);
        }
        let f = &self.field;
        let mut points = Vec::with_capacity(f.q() as usize + 1);
        points.push(p2.clone());
        for t in f.elements() {
            let v: Vec<u32> = p1
                .0
                .iter()
                .zip(&p2.0)
                .map(|(&a, &b)| f.add(a, f.mul(t, b)))
                .collect();
            points.push(self.canonicalize(&v).expect("independent points"));
        }
        points.sort();
        points.dedup();
        debug_assert_eq!(points.len(), f.q() as usize + 1);
        Ok(Line {
            base: p1.clone(),
            dir: p2.clone(),
            points,
        })
    }

    /// All lines through a point, each determined by a point of the quotient.
    pub fn lines_through(&self, p: &Point, caps: &Caps) -> Result<Vec<Line>> {
        let mut by_quotient: HashMap<Point, Point> = HashMap::new();
        for other in self.points(caps)? {
            if &other == p {
                continue;
            }
            let key = self.project_from(p, &other)?;
            by_quotient.entry(key).or_insert(other);
        }
        let mut reps: Vec<Point> = by_quotient.into_values().collect();
        reps.sort();
        reps.into_iter().map(|rep| self.line_through(p, &rep)).collect()
    }

    /// For every hyperplane, the number of the given points lying on it.
    /// The pair list follows the canonical hyperplane order.
    pub fn classify_hyperplanes(
        &self,
        points: &[Point],
        caps: &Caps,
    ) -> Result<Vec<(Hyperplane, usize)>> {
        use rayon::prelude::*;
        let hyps = self.hyperplanes(caps)?;
        Ok(hyps
            .into_par_iter()
            .map(|h| {
                let count = points.iter().filter(|p| self.dot(&p.0, &h.0) == 0).count();
                (h, count)
            })
            .collect())
    }

    /// For every point (canonical order), the number of the given hyperplanes
    /// passing through it.
    pub fn incidence_counts(
        &self,
        hyperplanes: &[Hyperplane],
        caps: &Caps,
    ) -> Result<Vec<(Point, usize)>> {
        use rayon::prelude::*;
        let pts = self.points(caps)?;
        Ok(pts
            .into_par_iter()
            .map(|p| {
                let count = hyperplanes.iter().filter(|h| self.dot(&p.0, &h.0) == 0).count();
                (p, count)
            })
            .collect())
    }
}
