//! Additive group F_q^dim indexed by base-q packed integers.
//!
//! Digit-wise addition has no carries, so in characteristic 2 the packed
//! index addition is a plain XOR; otherwise small lookup tables drive the
//! digit operations.

use crate::codes::LinearCode;
use crate::gf::Field;

pub(crate) struct VertexGroup {
    q: u32,
    dim: usize,
    xor: bool,
    add_tbl: Vec<u32>,
    neg_tbl: Vec<u32>,
}

impl VertexGroup {
    pub(crate) fn new(code: &LinearCode) -> VertexGroup {
        VertexGroup::for_field(code.field(), code.dim())
    }

    pub(crate) fn for_field(f: &Field, dim: usize) -> VertexGroup {
        let q = f.q();
        let xor = f.p() == 2;
        let mut add_tbl = Vec::new();
        let mut neg_tbl = Vec::new();
        if !xor {
            add_tbl = vec![0u32; (q * q) as usize];
            neg_tbl = vec![0u32; q as usize];
            for a in 0..q {
                neg_tbl[a as usize] = f.neg(a);
                for b in 0..q {
                    add_tbl[(a * q + b) as usize] = f.add(a, b);
                }
            }
        }
        VertexGroup {
            q,
            dim,
            xor,
            add_tbl,
            neg_tbl,
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        if self.xor {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.dim {
            let s = self.add_tbl[((a % self.q) * self.q + b % self.q) as usize];
            out += s * place;
            place = place.saturating_mul(self.q);
            a /= self.q;
            b /= self.q;
        }
        out
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        if self.xor {
            return a;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.dim {
            out += self.neg_tbl[(a % self.q) as usize] * place;
            place = place.saturating_mul(self.q);
            a /= self.q;
        }
        out
    }

    /// a - b as packed indices.
    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        if self.xor {
            return a ^ b;
        }
        self.add(a, self.neg(b))
    }
}
