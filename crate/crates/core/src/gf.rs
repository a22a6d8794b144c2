//! Exact arithmetic in finite fields F_q with q = p^h <= 2^16.
//!
//! Elements are encoded as integers in `[0, q)` by packing the
//! polynomial-basis coefficients in base p: the code of `sum c_i x^i` is
//! `sum c_i p^i`. Code 0 is the additive identity and code 1 the
//! multiplicative identity. Multiplication, inversion and exponentiation go
//! through exp/log tables relative to a fixed primitive element (the smallest
//! generator by code order), so every operation is table-driven and exact.
//!
//! The modulus of an extension field is the monic irreducible polynomial of
//! degree h over F_p with the smallest packed integer encoding. This is a
//! deterministic choice that needs no external tables, so element encodings
//! are reproducible across runs and machines.

use crate::{Error, Result};

pub mod poly;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A finite field F_q, q = p^h <= 2^16, with precomputed exp/log tables.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // Moduli are canonical, so (p, h) determines the field.
        self.p == other.p && self.h == other.h
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decompose a prime power q = p^h. Returns `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            let mut h = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                h += 1;
            }
            return if m == 1 { Some((p as u32, h)) } else { None };
        }
        p += 1;
    }
    Some((q as u32, 1))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Construct F_{p^h}. Fails if p is not prime or p^h > 2^16.
    pub fn new(p: u32, h: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if h == 0 {
            return Err(Error::BadParameters("exponent h must be positive".into()));
        }
        let q = (p as u64).checked_pow(h).filter(|&q| q <= MAX_ORDER);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::OrderTooLarge((p as u64).saturating_pow(h))),
        };
        let modulus = if h == 1 {
            vec![0, 1] // X; unused for prime fields
        } else {
            let mut prime = Field::prime_tables(p);
            prime.build_tables();
            find_irreducible(&prime, h as usize)
        };
        let mut field = Field {
            p,
            h,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// Construct the field of order q, factoring q = p^h.
    pub fn from_order(q: u32) -> Result<Field> {
        match prime_power(q as u64) {
            Some((p, h)) => Field::new(p, h),
            None => Err(Error::BadParameters(format!("{q} is not a prime power"))),
        }
    }

    /// A bare prime field without exp/log tables, used while bootstrapping.
    fn prime_tables(p: u32) -> Field {
        Field {
            p,
            h: 1,
            q: p,
            modulus: vec![0, 1],
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients (c_0, ..., c_h) of the canonical modulus; monic of degree h.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element the exp/log tables are built on.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    fn digits(&self, code: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.h as usize];
        let mut c = code;
        for d in out.iter_mut() {
            *d = c % self.p;
            c /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        let mut code = 0u64;
        for &d in digits.iter().rev() {
            code = code * self.p as u64 + d as u64;
        }
        code as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if self.p == 2 {
            return a ^ b;
        }
        if self.h == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        self.pack(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        debug_assert!(a < self.q);
        if self.p == 2 {
            return a;
        }
        if self.h == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let da = self.digits(a);
        let neg: Vec<u32> = da.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect();
        self.pack(&neg)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Product without tables: polynomial multiplication modulo the modulus.
    /// Only used while building the tables and in tests as an independent oracle.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.h == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let h = self.h as usize;
        let mut prod = vec![0u64; 2 * h - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        // reduce modulo the monic modulus
        for i in (h..prod.len()).rev() {
            let c = prod[i] % self.p as u64;
            if c != 0 {
                for j in 0..h {
                    // x^i = x^{i-h} * (p - modulus) coefficient-wise
                    let m = self.modulus[j] as u64 % self.p as u64;
                    prod[i - h + j] += c * ((self.p as u64 - m) % self.p as u64);
                }
            }
            prod[i] = 0;
        }
        let digits: Vec<u32> = prod[..h].iter().map(|&c| (c % self.p as u64) as u32).collect();
        self.pack(&digits)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (2..q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, order / r) != 1))
            .unwrap_or(1); // q = 2: the only nonzero element generates trivially
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..order as usize {
            exp[i] = acc;
            exp[i + order as usize] = acc;
            log[acc as usize] = i as u32;
            acc = self.slow_mul(acc, generator);
        }
        debug_assert_eq!(acc, 1, "generator order mismatch");
        self.generator = generator;
        self.exp = exp;
        self.log = log;
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.q));
        }
        let order = self.q - 1;
        Ok(self.exp[(order - self.log[a as usize]) as usize % order.max(1) as usize])
    }

    /// a^e with the convention 0^0 = 1.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = (self.q - 1) as u128;
        if order == 0 {
            return 1;
        }
        let idx = (self.log[a as usize] as u128 * e as u128) % order;
        self.exp[idx as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.q));
        }
        let group = (self.q - 1) as u64;
        let mut ord = group;
        for r in prime_factors(group) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        Ok(ord as u32)
    }

    pub fn check_same(&self, other: &Field) -> Result<()> {
        if self != other {
            return Err(Error::FieldMismatch(self.q, other.q));
        }
        Ok(())
    }
}

/// The monic irreducible of degree d over F_q with the smallest packed
/// integer encoding of its non-leading coefficients. Irreducibility is
/// certified by exhaustive root checks for d <= 3 and by the Frobenius
/// gcd criterion for larger degrees.
pub fn find_irreducible(field: &Field, d: usize) -> Vec<u32> {
    assert!(d >= 1, "degree must be positive");
    let q = field.q() as u64;
    let mut m = 0u64;
    loop {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut rest = m;
        for _ in 0..d {
            coeffs.push((rest % q) as u32);
            rest /= q;
        }
        coeffs.push(1);
        if is_irreducible(field, &coeffs) {
            return coeffs;
        }
        m += 1;
        assert!(m < q.pow(d as u32), "no irreducible of degree {d} found");
    }
}

/// Irreducibility test for a monic polynomial over F_q.
pub fn is_irreducible(field: &Field, coeffs: &[u32]) -> bool {
    let d = coeffs.len() - 1;
    debug_assert_eq!(coeffs[d], 1, "polynomial must be monic");
    if d == 1 {
        return true;
    }
    let has_root = field.elements().any(|x| poly::eval(field, coeffs, x) == 0);
    if has_root {
        return false;
    }
    if d <= 3 {
        // Degree 2 or 3 without roots has no linear factor, hence is irreducible.
        return true;
    }
    poly::rabin_irreducible(field, coeffs)
}

/// Extension field F_{q^d} built as a polynomial ring over an arbitrary base
/// field, with the modulus chosen by the same smallest-encoding rule. The
/// base field embeds on the degree-0 coefficient.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: Field,
    d: usize,
    modulus: Vec<u32>,
    order: u64,
}

/// Element of an [`ExtField`]: base-field codes of the d coefficients.
pub type ExtElt = Vec<u32>;

impl ExtField {
    pub fn new(base: &Field, d: usize) -> ExtField {
        assert!(d >= 1);
        let modulus = find_irreducible(base, d);
        let order = (base.q() as u64).pow(d as u32);
        ExtField {
            base: base.clone(),
            d,
            modulus,
            order,
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> ExtElt {
        vec![0; self.d]
    }

    pub fn one(&self) -> ExtElt {
        let mut e = vec![0; self.d];
        e[0] = 1;
        e
    }

    pub fn embed(&self, c: u32) -> ExtElt {
        let mut e = vec![0; self.d];
        e[0] = c;
        e
    }

    pub fn from_index(&self, mut idx: u64) -> ExtElt {
        let q = self.base.q() as u64;
        let mut e = vec![0; self.d];
        for c in e.iter_mut() {
            *c = (idx % q) as u32;
            idx /= q;
        }
        e
    }

    pub fn is_zero(&self, a: &ExtElt) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &ExtElt, b: &ExtElt) -> ExtElt {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn sub(&self, a: &ExtElt, b: &ExtElt) -> ExtElt {
        a.iter().zip(b).map(|(&x, &y)| self.base.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &ExtElt) -> ExtElt {
        a.iter().map(|&x| self.base.neg(x)).collect()
    }

    pub fn scale(&self, c: u32, a: &ExtElt) -> ExtElt {
        a.iter().map(|&x| self.base.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &ExtElt, b: &ExtElt) -> ExtElt {
        let prod = poly::mul(&self.base, a, b);
        let rem = poly::rem(&self.base, &prod, &self.modulus);
        let mut out = rem;
        out.resize(self.d, 0);
        out
    }

    pub fn pow(&self, a: &ExtElt, mut e: u64) -> ExtElt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ExtElt) -> Result<ExtElt> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero(self.base.q()));
        }
        Ok(self.pow(a, self.order - 2))
    }
}
