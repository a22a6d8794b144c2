//! Erdos-Ko-Rado property checkers and bound calculators for linear codes.
//!
//! The weak property asks whether stars are maximum intersecting families,
//! the module property whether characteristic vectors of maximum families
//! live in the span of star indicators, and the strict property whether stars
//! are the only maximum families. All three reduce to incidence statistics of
//! the avoiding hyperplanes over the points of PG(dim-1, q), and all checks
//! here are exact.

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::codes::{intersects, Family, LinearCode};
use crate::config::Caps;
use crate::pg::Point;
use crate::spectral::CodeGeometry;
use crate::{Error, Result};

/// Outcome of the weak EKR check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakEkr {
    /// No avoiding hyperplane: the whole code is an intersecting family.
    AllIntersecting,
    /// Avoiding hyperplanes exist; the largest intersecting families have
    /// size q^{dim-1}, attained by the stars.
    Holds { max_family_size: u64 },
}

pub fn weak_ekr_check(geom: &CodeGeometry) -> WeakEkr {
    if geom.avoid.is_empty() {
        WeakEkr::AllIntersecting
    } else {
        WeakEkr::Holds {
            max_family_size: geom.code.size() / geom.code.q() as u64,
        }
    }
}

/// Outcome of the module-property check, with the first failing point in
/// canonical order as a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleReport {
    pub holds: bool,
    pub witness: Option<Point>,
}

/// The module property holds iff every point off the system lies on at least
/// one avoiding hyperplane.
pub fn module_property_check(geom: &CodeGeometry) -> ModuleReport {
    for (p, &cnt) in geom.profile.points.iter().zip(&geom.profile.counts) {
        if cnt == 0 && !geom.is_system_point(p) {
            return ModuleReport {
                holds: false,
                witness: Some(p.clone()),
            };
        }
    }
    ModuleReport {
        holds: true,
        witness: None,
    }
}

/// Outcome of the sufficient condition for the strict EKR property:
/// (a) no 3 system points collinear, and (b) for every point P off the
/// system, |m_P - |M|/q| < |M| / (q min{sqrt n, q-1}). The irrational
/// sqrt n is avoided by comparing (q m_P - |M|)^2 min{n, (q-1)^2} < |M|^2
/// in exact integers. `worst_margin` is the minimum over P of
/// |M|^2 - (q m_P - |M|)^2 min{n, (q-1)^2}; positive means (b) holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictConditionReport {
    pub no_three_collinear: bool,
    pub collinear_witness: Option<(Point, Point, Point)>,
    pub deviation_holds: bool,
    pub deviation_witness: Option<Point>,
    pub worst_margin: BigInt,
    pub holds: bool,
}

pub fn strict_condition_check(geom: &CodeGeometry) -> Result<StrictConditionReport> {
    let system = &geom.system;
    let mut no_three_collinear = true;
    let mut collinear_witness = None;
    'outer: for a in 0..system.len() {
        for b in (a + 1)..system.len() {
            for c in (b + 1)..system.len() {
                if geom.space.collinear(&system[a], &system[b], &system[c])? {
                    no_three_collinear = false;
                    collinear_witness =
                        Some((system[a].clone(), system[b].clone(), system[c].clone()));
                    break 'outer;
                }
            }
        }
    }
    let q = BigInt::from(geom.code.q());
    let n = BigInt::from(geom.code.n() as u64);
    let m = BigInt::from(geom.m_size());
    let qm1_sq = (&q - BigInt::one()) * (&q - BigInt::one());
    let min_factor = n.min(qm1_sq);
    let mut worst_margin: Option<BigInt> = None;
    let mut deviation_witness = None;
    for (p, &cnt) in geom.profile.points.iter().zip(&geom.profile.counts) {
        if geom.is_system_point(p) {
            continue;
        }
        let centered = &q * BigInt::from(cnt as u64) - &m;
        let margin = &m * &m - &centered * &centered * &min_factor;
        if worst_margin.as_ref().is_none_or(|w| &margin < w) {
            worst_margin = Some(margin);
            deviation_witness = Some(p.clone());
        }
    }
    let worst_margin = worst_margin.unwrap_or_else(BigInt::zero);
    let deviation_holds = worst_margin > BigInt::zero();
    Ok(StrictConditionReport {
        no_three_collinear,
        collinear_witness,
        deviation_holds,
        deviation_witness: if deviation_holds { None } else { deviation_witness },
        worst_margin,
        holds: no_three_collinear && deviation_holds,
    })
}

/// Upper bound for t-intersecting families of degree-k homogeneous bivariate
/// polynomials (equivalently ERS(q, k) codewords): q^{k+1-t} for t < k,
/// attained by t-stars, and the strict bound (q^2 - 1)/k + 1 for t = k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TIntBound {
    pub value: BigRational,
    /// true when the inequality is strict (|F| < value).
    pub strict: bool,
}

pub fn t_int_upper_bound(q: u32, k: usize, t: usize) -> Result<TIntBound> {
    if !(1 <= t && t <= k && (k as u64) < q as u64 && k >= 2) {
        return Err(Error::BadParameters(format!(
            "need 1 <= t <= k < q and k >= 2, got q={q}, k={k}, t={t}"
        )));
    }
    if t < k {
        Ok(TIntBound {
            value: BigRational::from_integer(BigInt::from(q).pow((k + 1 - t) as u32)),
            strict: false,
        })
    } else {
        let value = BigRational::new(
            BigInt::from(q) * BigInt::from(q) - BigInt::one(),
            BigInt::from(k as u64),
        ) + BigRational::one();
        Ok(TIntBound {
            value,
            strict: true,
        })
    }
}

/// Delsarte clique bound floor(valency/|tau| + 1) for a regular relation
/// graph with smallest eigenvalue tau < 0.
pub fn delsarte_clique_bound(valency: &BigInt, tau: &BigInt) -> Result<BigInt> {
    if tau >= &BigInt::zero() {
        return Err(Error::BadSpectrum(format!(
            "smallest eigenvalue {tau} is not negative"
        )));
    }
    Ok(valency.div_floor(&tau.abs()) + BigInt::one())
}

pub fn is_intersecting_family(fam: &Family, t: usize) -> Result<bool> {
    for (i, a) in fam.members.iter().enumerate() {
        for b in fam.members.iter().skip(i + 1) {
            if !intersects(a, b, t)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The first coordinate (in canonical order) at which every member agrees,
/// together with the common value. `None` for families pinned by no
/// coordinate. The empty family is vacuously contained in every star; by
/// convention this returns `None` for it.
pub fn contained_in_star(fam: &Family) -> Option<(usize, u32)> {
    let first = fam.members.first()?;
    let n = first.word.len();
    for i in 0..n {
        let alpha = first.word[i];
        if fam.members.iter().all(|c| c.word[i] == alpha) {
            return Some((i, alpha));
        }
    }
    None
}

/// Detects whether the family IS a full star of the code, returning its
/// (coordinate, value) if so.
pub fn is_star(code: &LinearCode, fam: &Family) -> Result<Option<(usize, u32)>> {
    let Some((i, alpha)) = contained_in_star(fam) else {
        return Ok(None);
    };
    let star = code.star(i, alpha)?;
    Ok((star.members == fam.members).then_some((i, alpha)))
}

/// Combined per-instance report of the three properties.
#[derive(Debug, Clone)]
pub struct EkrReport {
    pub weak: WeakEkr,
    pub module: ModuleReport,
    pub strict_condition: StrictConditionReport,
}

pub fn full_report(code: &LinearCode, caps: &Caps) -> Result<EkrReport> {
    let geom = CodeGeometry::new(code, caps)?;
    Ok(EkrReport {
        weak: weak_ekr_check(&geom),
        module: module_property_check(&geom),
        strict_condition: strict_condition_check(&geom)?,
    })
}
