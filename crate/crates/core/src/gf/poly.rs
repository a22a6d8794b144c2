//! Polynomial arithmetic over a finite field.
//!
//! Polynomials are coefficient vectors in little-endian order (index i holds
//! the coefficient of X^i). The zero polynomial is the empty vector after
//! trimming.

use super::Field;

pub fn trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn eval(field: &Field, f: &[u32], x: u32) -> u32 {
    let mut acc = 0u32;
    for &c in f.iter().rev() {
        acc = field.add(field.mul(acc, x), c);
    }
    acc
}

pub fn add(field: &Field, f: &[u32], g: &[u32]) -> Vec<u32> {
    let n = f.len().max(g.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        *o = field.add(a, b);
    }
    trim(out)
}

pub fn sub(field: &Field, f: &[u32], g: &[u32]) -> Vec<u32> {
    let n = f.len().max(g.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        *o = field.sub(a, b);
    }
    trim(out)
}

pub fn scale(field: &Field, c: u32, f: &[u32]) -> Vec<u32> {
    trim(f.iter().map(|&a| field.mul(c, a)).collect())
}

pub fn mul(field: &Field, f: &[u32], g: &[u32]) -> Vec<u32> {
    if f.is_empty() || g.is_empty() || degree(f).is_none() || degree(g).is_none() {
        return Vec::new();
    }
    let mut out = vec![0u32; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(a, b));
        }
    }
    trim(out)
}

/// Remainder of f modulo g; g must be nonzero.
pub fn rem(field: &Field, f: &[u32], g: &[u32]) -> Vec<u32> {
    let g = trim(g.to_vec());
    let dg = degree(&g).expect("division by zero polynomial");
    let lead_inv = field.inv(g[dg]).expect("nonzero leading coefficient");
    let mut r = trim(f.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = field.mul(r[dr], lead_inv);
        let shift = dr - dg;
        for (i, &gc) in g.iter().enumerate() {
            r[i + shift] = field.sub(r[i + shift], field.mul(c, gc));
        }
        r = trim(r);
    }
    r
}

/// Exact divisibility test: g | f.
pub fn divides(field: &Field, g: &[u32], f: &[u32]) -> bool {
    rem(field, f, g).is_empty()
}

pub fn gcd(field: &Field, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    // normalize monic
    if let Some(d) = degree(&a) {
        let inv = field.inv(a[d]).unwrap();
        a = scale(field, inv, &a);
    }
    a
}

fn mulmod(field: &Field, f: &[u32], g: &[u32], m: &[u32]) -> Vec<u32> {
    rem(field, &mul(field, f, g), m)
}

/// X^(q^e) modulo m, by e successive q-th powers.
fn x_frobenius_power(field: &Field, e: usize, m: &[u32]) -> Vec<u32> {
    let q = field.q() as u64;
    let mut acc = rem(field, &[0, 1], m); // X mod m
    for _ in 0..e {
        acc = powmod(field, &acc, q, m);
    }
    acc
}

pub fn powmod(field: &Field, f: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut base = rem(field, f, m);
    let mut acc = vec![1u32];
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(field, &acc, &base, m);
        }
        base = mulmod(field, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility criterion for a monic polynomial of degree d >= 2:
/// X^(q^d) = X mod f, and gcd(X^(q^(d/r)) - X, f) = 1 for every prime r | d.
pub fn rabin_irreducible(field: &Field, f: &[u32]) -> bool {
    let d = match degree(f) {
        Some(d) if d >= 2 => d,
        _ => return degree(f) == Some(1),
    };
    let x = vec![0u32, 1];
    let full = x_frobenius_power(field, d, f);
    if trim(sub(field, &full, &x)) != Vec::<u32>::new() {
        return false;
    }
    let mut n = d;
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for r in primes {
        let partial = x_frobenius_power(field, d / r, f);
        let g = gcd(field, &sub(field, &partial, &x), f);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Roots in F_q with multiplicities, by repeated deflation.
pub fn roots_with_multiplicity(field: &Field, f: &[u32]) -> Vec<(u32, usize)> {
    let mut f = trim(f.to_vec());
    let mut out = Vec::new();
    for x in field.elements() {
        let mut mult = 0;
        while degree(&f).is_some_and(|d| d >= 1) && eval(field, &f, x) == 0 {
            // synthetic division by (X - x)
            let d = degree(&f).unwrap();
            let mut quotient = vec![0u32; d];
            let mut carry = f[d];
            for i in (0..d).rev() {
                quotient[i] = carry;
                carry = field.add(f[i], field.mul(carry, x));
            }
            debug_assert_eq!(carry, 0);
            f = trim(quotient);
            mult += 1;
        }
        if mult > 0 {
            out.push((x, mult));
        }
    }
    out
}
