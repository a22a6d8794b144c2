//! Intersection statistics of normal rational curves: hyperplane profiles,
//! the mu constants, per-point deviation profiles and the per-instance
//! stability-hypothesis evaluation.
//!
//! The closed form for the number of hyperplanes meeting the curve in exactly
//! t points is obtained from the MDS weight distribution by substituting
//! w = q+1-t, which gives the inner binomial C(q-t, j). A variant with inner
//! binomial C(q+2-t, j) circulates in print; enumeration refutes it already
//! at (q, k, t) = (5, 2, 1), and [`profile_closed_form_variant`] exposes it
//! so the disagreement stays documented rather than silently patched.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::codes::{binomial, LinearCode};
use crate::config::Caps;
use crate::pg::{Point, ProjSpace};
use crate::spectral::CodeGeometry;
use crate::{Error, Result};

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

/// mu_{k,t} = (1/t!) sum_{j=0}^{k-t} (-1)^j / j!.
pub fn mu(k: usize, t: usize) -> BigRational {
    assert!(t <= k);
    let mut sum = BigRational::zero();
    for j in 0..=(k - t) {
        let term = BigRational::new(BigInt::one(), factorial(j));
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum / BigRational::from_integer(factorial(t))
}

/// Identities satisfied by the mu constants, checked exactly up to k_max.
#[derive(Debug, Clone)]
pub struct MuReport {
    pub k_max: usize,
    pub sums_to_one: bool,
    pub recursion_holds: bool,
}

pub fn mu_checks(k_max: usize) -> MuReport {
    let mut sums = true;
    let mut recursion = true;
    for k in 1..=k_max {
        let total: BigRational = (0..=k).map(|t| mu(k, t)).sum();
        if total != BigRational::one() {
            sums = false;
        }
        for t in 1..=k {
            let lhs = BigRational::from_integer(BigInt::from(t as u64)) * mu(k, t);
            if lhs != mu(k - 1, t - 1) {
                recursion = false;
            }
        }
    }
    MuReport {
        k_max,
        sums_to_one: sums,
        recursion_holds: recursion,
    }
}

/// Number of hyperplanes of PG(k, q) meeting a normal rational curve in
/// exactly t points: C(q+1, t) sum_{j=0}^{k-t} (-1)^j C(q-t, j) q^(k-t-j).
pub fn profile_closed_form(q: u32, k: usize, t: usize) -> BigInt {
    let mut sum = BigInt::zero();
    for j in 0..=(k - t) {
        let term = binomial(q as u64 - t as u64, j as u64)
            * BigInt::from(q).pow((k - t - j) as u32);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    binomial(q as u64 + 1, t as u64) * sum
}

/// The printed variant with inner binomial C(q+2-t, j). Kept only as a
/// documented discrepancy; enumeration contradicts it.
pub fn profile_closed_form_variant(q: u32, k: usize, t: usize) -> BigInt {
    let mut sum = BigInt::zero();
    for j in 0..=(k - t) {
        let term = binomial(q as u64 + 2 - t as u64, j as u64)
            * BigInt::from(q).pow((k - t - j) as u32);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    binomial(q as u64 + 1, t as u64) * sum
}

/// Enumerated and closed-form hyperplane profile of the normal rational
/// curve in PG(k, q).
#[derive(Debug, Clone)]
pub struct NrcProfile {
    pub q: u32,
    pub k: usize,
    /// counts[t] = number of hyperplanes meeting the curve in exactly t points.
    pub counts: Vec<u64>,
    pub closed_form: Vec<BigInt>,
}

/// Enumerate the hyperplane profile and assert it equals the closed form.
pub fn nrc_profile(q: u32, k: usize, caps: &Caps) -> Result<NrcProfile> {
    let code = LinearCode::ers(q, k)?;
    let system = code.projective_system()?;
    let space = ProjSpace::new(code.field(), code.dim());
    let mut counts = vec![0u64; k + 1];
    for (_, cnt) in space.classify_hyperplanes(&system, caps)? {
        if cnt > k {
            return Err(Error::FormulaMismatch(format!(
                "hyperplane meets the curve in {cnt} > k = {k} points"
            )));
        }
        counts[cnt] += 1;
    }
    let total: u64 = counts.iter().sum();
    if total != space.point_count() {
        return Err(Error::FormulaMismatch(format!(
            "profile counts sum to {total}, expected {}",
            space.point_count()
        )));
    }
    let closed_form: Vec<BigInt> = (0..=k).map(|t| profile_closed_form(q, k, t)).collect();
    for (t, (&cnt, formula)) in counts.iter().zip(&closed_form).enumerate() {
        if &BigInt::from(cnt) != formula {
            return Err(Error::FormulaMismatch(format!(
                "t = {t}: enumeration gives {cnt}, closed form gives {formula}"
            )));
        }
    }
    Ok(NrcProfile {
        q,
        k,
        counts,
        closed_form,
    })
}

/// Per-point hyperplane statistics: for each point P off the curve, the
/// vector (s_0(P), ..., s_k(P)) counting hyperplanes through P meeting the
/// curve in exactly t points.
#[derive(Debug, Clone)]
pub struct StProfile {
    pub q: u32,
    pub k: usize,
    pub off_curve: Vec<(Point, Vec<u64>)>,
    /// max over off-curve P and t of |s_t(P) - mu_{k,t} q^{k-1}|.
    pub max_deviation: BigRational,
    /// per-t maxima of the same deviation.
    pub per_t_deviation: Vec<BigRational>,
}

pub fn s_t_profile(q: u32, k: usize, caps: &Caps) -> Result<StProfile> {
    use rayon::prelude::*;
    let code = LinearCode::ers(q, k)?;
    let system = code.projective_system()?;
    let space = ProjSpace::new(code.field(), code.dim());
    let classified = space.classify_hyperplanes(&system, caps)?;
    let points = space.points(caps)?;
    let per_point: Vec<(Point, Vec<u64>)> = points
        .into_par_iter()
        .map(|p| {
            let mut s = vec![0u64; k + 1];
            for (h, t) in &classified {
                if space.dot(&p.0, &h.0) == 0 {
                    s[*t] += 1;
                }
            }
            (p, s)
        })
        .collect();

    // Double counting against the global profile: summing s_t over all
    // points must give counts[t] times the number of points per hyperplane.
    let profile = nrc_profile(q, k, caps)?;
    let per_hyperplane = {
        let quotient = ProjSpace::new(code.field(), code.dim() - 1);
        quotient.point_count()
    };
    for t in 0..=k {
        let total: u64 = per_point.iter().map(|(_, s)| s[t]).sum();
        if total != profile.counts[t] * per_hyperplane {
            return Err(Error::FormulaMismatch(format!(
                "double counting fails at t = {t}: {total} != {} * {per_hyperplane}",
                profile.counts[t]
            )));
        }
    }
    // Each point lies on (q^k - 1)/(q - 1) hyperplanes.
    let through_point = per_hyperplane;
    for (p, s) in &per_point {
        let total: u64 = s.iter().sum();
        if total != through_point {
            return Err(Error::FormulaMismatch(format!(
                "point {p} lies on {total} hyperplanes, expected {through_point}"
            )));
        }
    }

    let q_big = BigRational::from_integer(BigInt::from(q));
    let scale = q_big.pow(k as i32 - 1);
    let mut per_t_deviation = vec![BigRational::zero(); k + 1];
    let mut max_deviation = BigRational::zero();
    let mut off_curve = Vec::new();
    for (p, s) in per_point {
        if system.contains(&p) {
            continue;
        }
        for (t, &st) in s.iter().enumerate() {
            let dev = (BigRational::from_integer(BigInt::from(st)) - mu(k, t) * &scale).abs();
            if dev > per_t_deviation[t] {
                per_t_deviation[t] = dev.clone();
            }
            if dev > max_deviation {
                max_deviation = dev;
            }
        }
        off_curve.push((p, s));
    }
    Ok(StProfile {
        q,
        k,
        off_curve,
        max_deviation,
        per_t_deviation,
    })
}

/// delta_k = 2 + (delta_{k-1} + 4) H_k with H_k the k-th harmonic number,
/// iterated from a caller-supplied delta_3 (the base value is only cited
/// from external tables, never printed).
pub fn delta_recursion(delta3: &BigRational, k: usize) -> BigRational {
    assert!(k >= 3);
    let mut delta = delta3.clone();
    for j in 4..=k {
        let h: BigRational = (1..=j as u64)
            .map(|t| BigRational::new(BigInt::one(), BigInt::from(t)))
            .sum();
        delta = BigRational::from_integer(BigInt::from(2u32))
            + (delta + BigRational::from_integer(BigInt::from(4u32))) * h;
    }
    delta
}

/// Per-instance evaluation of the stability hypotheses for ERS(q, k):
/// collinearity of the curve, the length bound, the deviation of |M| from
/// mu_{k,0} q^k, and the per-point deviation of incidence counts, together
/// with the density threshold governing the star-containment regime.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub q: u32,
    pub k: usize,
    /// condition (1): no 3 curve points collinear.
    pub no_three_collinear: bool,
    /// condition (2): n <= a q + b with a = b = 1.
    pub length_ok: bool,
    pub m_size: u64,
    /// | |M| - mu_{k,0} q^k |, exact.
    pub m_deviation: BigRational,
    /// implied tau = m_deviation / q^{k-1}.
    pub tau_margin: BigRational,
    /// max over P off the curve of |m_P - |M|/q|, exact.
    pub point_deviation: BigRational,
    /// implied delta = point_deviation / q^{k-2}.
    pub delta_margin: BigRational,
    /// true when 1/sqrt(2) exceeds 1 - mu_{k,0} (exact comparison).
    pub sqrt2_dominates: bool,
    /// the threshold max{1/sqrt 2, 1 - mu_{k,0}} q^k, symbolically.
    pub threshold_symbolic: String,
    pub threshold_decimal: f64,
}

pub fn stability_report(q: u32, k: usize, caps: &Caps) -> Result<StabilityReport> {
    if k < 2 {
        return Err(Error::BadParameters("stability evaluation needs k >= 2".into()));
    }
    let code = LinearCode::ers(q, k)?;
    let geom = CodeGeometry::new(&code, caps)?;
    let system = &geom.system;

    let mut no_three_collinear = true;
    'outer: for a in 0..system.len() {
        for b in (a + 1)..system.len() {
            for c in (b + 1)..system.len() {
                if geom.space.collinear(&system[a], &system[b], &system[c])? {
                    no_three_collinear = false;
                    break 'outer;
                }
            }
        }
    }

    let length_ok = code.n() as u64 <= q as u64 + 1;
    let m_size = geom.m_size();
    let mu0 = mu(k, 0);
    let q_rat = BigRational::from_integer(BigInt::from(q));
    let m_deviation = (BigRational::from_integer(BigInt::from(m_size))
        - &mu0 * q_rat.pow(k as i32))
        .abs();
    let tau_margin = &m_deviation / q_rat.pow(k as i32 - 1);

    let mut point_deviation = BigRational::zero();
    for (p, &cnt) in geom.profile.points.iter().zip(&geom.profile.counts) {
        if system.contains(p) {
            continue;
        }
        let dev = (BigRational::from_integer(BigInt::from(cnt as u64))
            - BigRational::new(BigInt::from(m_size), BigInt::from(q)))
        .abs();
        if dev > point_deviation {
            point_deviation = dev;
        }
    }
    let delta_margin = if k >= 2 {
        &point_deviation / q_rat.pow(k as i32 - 2)
    } else {
        point_deviation.clone()
    };

    // 1/sqrt(2) > 1 - mu  <=>  2 (1 - mu)^2 < 1, exactly.
    let one_minus_mu = BigRational::one() - &mu0;
    let sqrt2_dominates = BigRational::from_integer(BigInt::from(2u32))
        * &one_minus_mu
        * &one_minus_mu
        < BigRational::one();
    let qk = (q as f64).powi(k as i32);
    let (threshold_symbolic, threshold_decimal) = if sqrt2_dominates {
        (format!("q^{k}/sqrt(2)"), qk / std::f64::consts::SQRT_2)
    } else {
        let v = one_minus_mu.to_integer().to_string();
        (
            format!("(1 - mu_({k},0)) q^{k} = {v} q^{k}"),
            rational_to_f64(&one_minus_mu) * qk,
        )
    };

    Ok(StabilityReport {
        q,
        k,
        no_three_collinear,
        length_ok,
        m_size,
        m_deviation,
        tau_margin,
        point_deviation,
        delta_margin,
        sqrt2_dominates,
        threshold_symbolic,
        threshold_decimal,
    })
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
