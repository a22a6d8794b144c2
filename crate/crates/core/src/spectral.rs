//! Hyperplane-avoidance geometry and the exact spectra it induces.
//!
//! For a projective [n, dim]_q code C with projective system S, the Cayley
//! graph Gamma_T(C) joins codewords that agree in exactly t coordinates for
//! some t in T. Its eigenvalues are integers determined by how the avoiding
//! hyperplanes distribute over the points of PG(dim-1, q): the all-one vector
//! has eigenvalue (q-1)|M|, and each projective point P contributes the
//! eigenvalue q m_P - |M| with multiplicity q-1, where m_P counts the
//! hyperplanes of M through P. The bipartite graph B(C, i, alpha) between a
//! star and its complement has eigenvalues that are square roots of exact
//! integers indexed by the lines through the star's point.
//!
//! Every quantity here is an exact integer or rational; spectra are verified
//! by two independent routes (eigenvector identities and trace moments), not
//! by a floating-point eigensolver.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::codes::{intersects, Codeword, Family, LinearCode};
use crate::group::VertexGroup;
use crate::config::Caps;
use crate::pg::{Hyperplane, Line, Point, ProjSpace};
use crate::{Error, Result};

/// The hyperplanes meeting a projective system in an admissible number of
/// points, together with the admissible set T.
#[derive(Debug, Clone)]
pub struct AvoidSet {
    pub t_set: BTreeSet<usize>,
    pub hyperplanes: Vec<Hyperplane>,
}

/// Per-point counts of avoid-set hyperplanes, aligned with the canonical
/// point order of the ambient space.
#[derive(Debug, Clone)]
pub struct IncidenceProfile {
    pub points: Vec<Point>,
    pub counts: Vec<usize>,
}

impl IncidenceProfile {
    pub fn count_of(&self, p: &Point) -> Option<usize> {
        self.points
            .binary_search(p)
            .ok()
            .map(|idx| self.counts[idx])
    }
}

/// Exact spectrum: (eigenvalue, multiplicity) pairs sorted by decreasing
/// eigenvalue, with equal values merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub entries: Vec<(i64, u64)>,
}

impl Spectrum {
    fn from_map(map: BTreeMap<i64, u64>) -> Spectrum {
        let mut entries: Vec<(i64, u64)> = map.into_iter().collect();
        entries.reverse();
        Spectrum { entries }
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn max_eigenvalue(&self) -> Option<i64> {
        self.entries.first().map(|&(v, _)| v)
    }

    pub fn min_eigenvalue(&self) -> Option<i64> {
        self.entries.last().map(|&(v, _)| v)
    }

    pub fn multiplicity_of(&self, value: i64) -> u64 {
        self.entries
            .iter()
            .find(|&&(v, _)| v == value)
            .map_or(0, |&(_, m)| m)
    }
}

/// Indicator of a linear condition on coefficient vectors: evaluates to true
/// on w exactly when <v, w> = alpha. Scaling (v, alpha) by a nonzero beta
/// yields the same indicator, so construction canonicalizes v to its first
/// nonzero coordinate being 1 and rescales alpha along with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarIndicator {
    pub v: Point,
    pub alpha: u32,
}

impl StarIndicator {
    pub fn new(space: &ProjSpace, v: &[u32], alpha: u32) -> Result<StarIndicator> {
        let lead = v
            .iter()
            .position(|&c| c != 0)
            .ok_or_else(|| Error::BadParameters("zero indicator vector".into()))?;
        let beta = space.field().inv(v[lead])?;
        let canonical: Vec<u32> = v.iter().map(|&c| space.field().mul(beta, c)).collect();
        Ok(StarIndicator {
            v: Point(canonical),
            alpha: space.field().mul(beta, alpha),
        })
    }

    pub fn evaluate(&self, space: &ProjSpace, coeff: &[u32]) -> bool {
        space.dot(&self.v.0, coeff) == self.alpha
    }
}

/// Shared geometric context for a code: its projective system, the ambient
/// space, the avoiding hyperplanes (T = {0}) and the full incidence profile.
#[derive(Debug, Clone)]
pub struct CodeGeometry {
    pub code: LinearCode,
    pub space: ProjSpace,
    pub system: Vec<Point>,
    pub avoid: Vec<Hyperplane>,
    pub profile: IncidenceProfile,
    point_index: HashMap<Point, usize>,
}

impl CodeGeometry {
    pub fn new(code: &LinearCode, caps: &Caps) -> Result<CodeGeometry> {
        let system = code.projective_system()?;
        let space = ProjSpace::new(code.field(), code.dim());
        let avoid = avoid_hyperplanes_of(&space, &system, caps)?;
        let profile = incidence_profile(&space, &avoid, caps)?;
        let point_index = profile
            .points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(CodeGeometry {
            code: code.clone(),
            space,
            system,
            avoid,
            profile,
            point_index,
        })
    }

    pub fn m_size(&self) -> u64 {
        self.avoid.len() as u64
    }

    pub fn m_count(&self, p: &Point) -> usize {
        self.profile.counts[self.point_index[p]]
    }

    pub fn is_system_point(&self, p: &Point) -> bool {
        self.system.contains(p)
    }

    /// Minimum number of avoiding hyperplanes through a point off the system.
    pub fn min_off_system_incidence(&self) -> usize {
        self.profile
            .points
            .iter()
            .zip(&self.profile.counts)
            .filter(|(p, _)| !self.system.contains(p))
            .map(|(_, &c)| c)
            .min()
            .unwrap_or(0)
    }
}

fn avoid_hyperplanes_of(
    space: &ProjSpace,
    system: &[Point],
    caps: &Caps,
) -> Result<Vec<Hyperplane>> {
    Ok(space
        .classify_hyperplanes(system, caps)?
        .into_iter()
        .filter(|(_, cnt)| *cnt == 0)
        .map(|(h, _)| h)
        .collect())
}

fn incidence_profile(
    space: &ProjSpace,
    hyperplanes: &[Hyperplane],
    caps: &Caps,
) -> Result<IncidenceProfile> {
    let counted = space.incidence_counts(hyperplanes, caps)?;
    let (points, counts) = counted.into_iter().unzip();
    Ok(IncidenceProfile { points, counts })
}

/// Classify all hyperplanes by their intersection count with the projective
/// system and keep those whose count lies in T.
pub fn avoiding_hyperplanes(
    code: &LinearCode,
    t_set: &BTreeSet<usize>,
    caps: &Caps,
) -> Result<AvoidSet> {
    let system = code.projective_system()?;
    let space = ProjSpace::new(code.field(), code.dim());
    let hyperplanes = space
        .classify_hyperplanes(&system, caps)?
        .into_iter()
        .filter(|(_, cnt)| t_set.contains(cnt))
        .map(|(h, _)| h)
        .collect();
    Ok(AvoidSet {
        t_set: t_set.clone(),
        hyperplanes,
    })
}

/// Exact spectrum of Gamma_T(C) from the incidence profile of the avoid set.
pub fn gamma_t_spectrum(code: &LinearCode, t_set: &BTreeSet<usize>, caps: &Caps) -> Result<Spectrum> {
    let avoid = avoiding_hyperplanes(code, t_set, caps)?;
    gamma_t_spectrum_with(code, &avoid, caps)
}

/// Recheck a (possibly cached) avoid set against the projective system:
/// every listed hyperplane must meet the system in an admissible count, and
/// the listing must be complete.
pub fn recheck_avoid_set(code: &LinearCode, avoid: &AvoidSet, caps: &Caps) -> Result<()> {
    let fresh = avoiding_hyperplanes(code, &avoid.t_set, caps)?;
    let mut claimed = avoid.hyperplanes.clone();
    claimed.sort();
    let mut expected = fresh.hyperplanes;
    expected.sort();
    if claimed != expected {
        return Err(Error::VerificationFailed(
            "avoid set does not match the projective system".into(),
        ));
    }
    Ok(())
}

/// Spectrum of Gamma_T(C) computed from an already-known avoid set.
pub fn gamma_t_spectrum_with(
    code: &LinearCode,
    avoid: &AvoidSet,
    caps: &Caps,
) -> Result<Spectrum> {
    let space = ProjSpace::new(code.field(), code.dim());
    let profile = incidence_profile(&space, &avoid.hyperplanes, caps)?;
    let q = code.q() as i64;
    let m = avoid.hyperplanes.len() as i64;
    let mut map: BTreeMap<i64, u64> = BTreeMap::new();
    *map.entry((q - 1) * m).or_insert(0) += 1;
    for &cnt in &profile.counts {
        let lambda = q * cnt as i64 - m;
        *map.entry(lambda).or_insert(0) += (q - 1) as u64;
    }
    Ok(Spectrum::from_map(map))
}

/// Connection set of Gamma_T(C) as vertex indices: nonzero coefficient
/// vectors whose word agrees with zero in exactly t in T coordinates.
fn connection_set(code: &LinearCode, t_set: &BTreeSet<usize>) -> Vec<u32> {
    let n = code.n();
    let mut out = Vec::new();
    for idx in 1..code.size() {
        let w = code.codeword(&code.coeff_of_index(idx)).unwrap();
        let weight = w.word.iter().filter(|&&c| c != 0).count();
        if t_set.contains(&(n - weight)) {
            out.push(idx as u32);
        }
    }
    out
}

/// Verify a claimed Gamma_T spectrum by two independent exact checks on the
/// graph itself:
///
/// 1. eigenvector identities: for one representative point per incidence
///    class, the vector q xi_{v,0} - 1 is checked to be an exact eigenvector,
///    and the resulting eigenvalue set must equal the claimed values;
/// 2. trace moments: tr(A^m) computed by closed-walk counting must match
///    sum mult lambda^m for m = 0 ..= #distinct eigenvalues, which pins the
///    multiplicities (Vandermonde).
pub fn verify_spectrum(
    code: &LinearCode,
    t_set: &BTreeSet<usize>,
    claimed: &Spectrum,
    caps: &Caps,
) -> Result<()> {
    let size = code.size();
    if size > caps.moment_check {
        return Err(Error::TooLarge {
            what: "spectrum verification",
            limit: size,
            cap: caps.moment_check,
            unit: "vertices",
        });
    }
    if claimed.total_multiplicity() != size {
        return Err(Error::VerificationFailed(format!(
            "multiplicities sum to {} but the graph has {} vertices",
            claimed.total_multiplicity(),
            size
        )));
    }
    let group = VertexGroup::new(code);
    let conn = connection_set(code, t_set);
    let degree = conn.len() as i64;

    // (a) eigenvector identities on representative points per incidence class
    let avoid = avoiding_hyperplanes(code, t_set, caps)?;
    let space = ProjSpace::new(code.field(), code.dim());
    let profile = incidence_profile(&space, &avoid.hyperplanes, caps)?;
    let mut class_reps: BTreeMap<usize, &Point> = BTreeMap::new();
    for (p, &cnt) in profile.points.iter().zip(&profile.counts) {
        class_reps.entry(cnt).or_insert(p);
    }
    let q = code.q() as i64;
    let mut witnessed: BTreeSet<i64> = BTreeSet::new();
    witnessed.insert(degree); // A 1 = degree 1 holds for any Cayley graph
    let field = code.field();
    for (&cnt, rep) in &class_reps {
        let lambda = q * cnt as i64 - avoid.hyperplanes.len() as i64;
        // x(g) = q [ <v, coeff(g)> = 0 ] - 1
        let mut x = vec![-1i64; size as usize];
        for (idx, xg) in x.iter_mut().enumerate() {
            let coeff = code.coeff_of_index(idx as u64);
            let dot = coeff
                .iter()
                .zip(&rep.0)
                .fold(0u32, |acc, (&a, &b)| field.add(acc, field.mul(a, b)));
            if dot == 0 {
                *xg = q - 1;
            }
        }
        for g in 0..size as u32 {
            let mut y = 0i64;
            for &s in &conn {
                y += x[group.add(g, s) as usize];
            }
            if y != lambda * x[g as usize] {
                return Err(Error::VerificationFailed(format!(
                    "eigenvector identity fails at vertex {g} for point {rep} (class {cnt}): \
                     A x = {y}, lambda x = {}",
                    lambda * x[g as usize]
                )));
            }
        }
        witnessed.insert(lambda);
    }
    let claimed_values: BTreeSet<i64> = claimed.entries.iter().map(|&(v, _)| v).collect();
    if witnessed != claimed_values {
        return Err(Error::VerificationFailed(format!(
            "eigenvalue sets differ: witnessed {witnessed:?}, claimed {claimed_values:?}"
        )));
    }

    // (b) trace moments by closed-walk counting
    let orders = claimed.entries.len();
    let mut walks = vec![0u128; size as usize];
    walks[0] = 1;
    for m in 0..=orders {
        let trace = BigInt::from(size) * BigInt::from(walks[0]);
        let mut expected = BigInt::zero();
        for &(value, mult) in &claimed.entries {
            expected += BigInt::from(value).pow(m as u32) * BigInt::from(mult);
        }
        if trace != expected {
            return Err(Error::VerificationFailed(format!(
                "trace moment {m} mismatch: walks give {trace}, claimed spectrum gives {expected}"
            )));
        }
        if m == orders {
            break;
        }
        let mut next = vec![0u128; size as usize];
        for (g, slot) in next.iter_mut().enumerate() {
            let mut acc: u128 = 0;
            for &s in &conn {
                acc = acc
                    .checked_add(walks[group.add(g as u32, s) as usize])
                    .ok_or_else(|| {
                        Error::VerificationFailed("walk count overflow".into())
                    })?;
            }
            *slot = acc;
        }
        walks = next;
    }
    Ok(())
}

/// Exact bipartite spectrum of B(C, i, 0): the eigenvalues are plus/minus
/// square roots of the stored integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSpectrum {
    /// (q-1)|M|^2; eigenvalue pair +-sqrt((q-1))|M| with multiplicity 1 each.
    pub top_sq: i128,
    /// Distinct lambda_ell^2 values with the number of lines attaining each;
    /// each line contributes a +- pair with multiplicity q-1 per sign.
    pub line_classes: Vec<(i128, u64)>,
    /// Multiplicity of the eigenvalue 0 coming from the larger side.
    pub zero_mult: u64,
    pub q: u32,
    pub dim: usize,
}

impl BipartiteSpectrum {
    /// 2 + 2(q^{dim-1} - 1) + (q-2) q^{dim-1}, which must equal q^dim.
    pub fn total_multiplicity(&self) -> u64 {
        let line_pairs: u64 = self.line_classes.iter().map(|&(_, c)| c).sum();
        2 + 2 * (self.q as u64 - 1) * line_pairs + self.zero_mult
    }

    /// The squared second-largest eigenvalue, i.e. the largest lambda_ell^2.
    pub fn second_largest_sq(&self) -> i128 {
        self.line_classes.first().map_or(0, |&(v, _)| v)
    }
}

/// lambda_ell = q sum_{P on ell, P != Q} m_P^2 - |M|^2 as an exact integer
/// (the fractional form q sum (m_P - |M|/q)^2 expands to this).
pub fn lambda_line(geom: &CodeGeometry, q_point: &Point, line: &Line) -> i128 {
    let q = geom.code.q() as i128;
    let m = geom.m_size() as i128;
    let mut sum_sq: i128 = 0;
    for p in &line.points {
        if p == q_point {
            continue;
        }
        let c = geom.m_count(p) as i128;
        sum_sq += c * c;
    }
    q * sum_sq - m * m
}

/// Maximum lambda_ell over the lines through the system point at coordinate i.
pub fn lambda_max(geom: &CodeGeometry, i: usize, caps: &Caps) -> Result<i128> {
    let q_point = geom
        .system
        .get(i)
        .ok_or_else(|| Error::BadParameters(format!("coordinate {i} out of range")))?;
    let lines = geom.space.lines_through(q_point, caps)?;
    Ok(lines
        .iter()
        .map(|l| lambda_line(geom, q_point, l))
        .max()
        .expect("at least one line through a point"))
}

/// Spectrum of B(C, i, 0) assembled from the line statistics through the
/// system point at coordinate i.
pub fn b_graph_spectrum(code: &LinearCode, i: usize, caps: &Caps) -> Result<BipartiteSpectrum> {
    let geom = CodeGeometry::new(code, caps)?;
    b_graph_spectrum_from(&geom, i, caps)
}

pub fn b_graph_spectrum_from(
    geom: &CodeGeometry,
    i: usize,
    caps: &Caps,
) -> Result<BipartiteSpectrum> {
    let q = geom.code.q();
    let dim = geom.code.dim();
    let q_point = geom
        .system
        .get(i)
        .ok_or_else(|| Error::BadParameters(format!("coordinate {i} out of range")))?;
    let m = geom.m_size() as i128;
    let lines = geom.space.lines_through(q_point, caps)?;
    let mut classes: BTreeMap<i128, u64> = BTreeMap::new();
    for line in &lines {
        *classes.entry(lambda_line(geom, q_point, line)).or_insert(0) += 1;
    }
    let mut line_classes: Vec<(i128, u64)> = classes.into_iter().collect();
    line_classes.reverse();
    let spectrum = BipartiteSpectrum {
        top_sq: (q as i128 - 1) * m * m,
        line_classes,
        zero_mult: (q as u64 - 2) * (q as u64).pow(dim as u32 - 1),
        q,
        dim,
    };
    debug_assert_eq!(spectrum.total_multiplicity(), geom.code.size());
    Ok(spectrum)
}

/// Verify a claimed bipartite spectrum against trace moments of M M^T, where
/// M is the biadjacency matrix of B(C, i, 0). The multiplicity function of
/// the distance-2 Cayley multigraph on the star is computed by brute common
/// neighbour counting, so the check is independent of the line statistics.
pub fn verify_b_spectrum(
    code: &LinearCode,
    i: usize,
    claimed: &BipartiteSpectrum,
    caps: &Caps,
) -> Result<()> {
    let size = code.size();
    if size > caps.moment_check {
        return Err(Error::TooLarge {
            what: "bipartite spectrum verification",
            limit: size,
            cap: caps.moment_check,
            unit: "vertices",
        });
    }
    if claimed.total_multiplicity() != size {
        return Err(Error::VerificationFailed(format!(
            "bipartite multiplicity bookkeeping fails: {} != {}",
            claimed.total_multiplicity(),
            size
        )));
    }
    let q = code.q() as u64;
    // The star L = {c : c(i) = 0} as a subgroup of the coefficient space.
    let star = code.star(i, 0)?;
    let l_size = star.members.len();
    let mut full_weight: Vec<Codeword> = Vec::new();
    for idx in 0..size {
        let w = code.codeword(&code.coeff_of_index(idx))?;
        if w.word.iter().all(|&c| c != 0) {
            full_weight.push(w);
        }
    }
    // mu(c) = #common non-intersecting neighbours of 0 and c, for c in L
    let index_of: HashMap<&[u32], usize> = star
        .members
        .iter()
        .enumerate()
        .map(|(j, c)| (c.coeff.as_slice(), j))
        .collect();
    let mut mu = vec![0u64; l_size];
    for (j, c) in star.members.iter().enumerate() {
        let mut count = 0u64;
        for u in &full_weight {
            let distinct_everywhere = u
                .word
                .iter()
                .zip(&c.word)
                .all(|(&a, &b)| a != b);
            if distinct_everywhere {
                count += 1;
            }
        }
        mu[j] = count;
    }
    // mu(0) equals the degree d_L = (q-1)|M|; the star ordering puts 0 first
    // only by accident, so locate it.
    let zero_idx = index_of[&vec![0u32; code.dim()][..]];
    let d_l = mu[zero_idx];

    // Expected moments from the claimed multiset.
    let mut claimed_eigs: Vec<(BigInt, u64)> = vec![(BigInt::from(claimed.top_sq), 1)];
    for &(val, lines) in &claimed.line_classes {
        claimed_eigs.push((BigInt::from(val), lines * (q - 1)));
    }
    let orders = claimed_eigs.len() + 1;

    // Walk counting in the group (L, +) with multiplicity function mu.
    let field = code.field();
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
    };
    let mut walks = vec![0u128; l_size];
    walks[zero_idx] = 1;
    for m in 0..=orders {
        let trace = BigInt::from(l_size as u64) * BigInt::from(walks[zero_idx]);
        let mut expected = BigInt::zero();
        for (val, mult) in &claimed_eigs {
            expected += val.pow(m as u32) * BigInt::from(*mult);
        }
        // eigenvalue 0 of M M^T contributes nothing for m >= 1
        if m == 0 {
            expected = BigInt::from(l_size as u64);
        }
        if trace != expected {
            return Err(Error::VerificationFailed(format!(
                "M M^T trace moment {m} mismatch: walks {trace}, claimed {expected}"
            )));
        }
        if m == orders {
            break;
        }
        let mut next = vec![0u128; l_size];
        for (j, c) in star.members.iter().enumerate() {
            if mu[j] == 0 {
                continue;
            }
            for (g, d) in star.members.iter().enumerate() {
                let target = add(&c.coeff, &d.coeff);
                let t_idx = index_of[&target[..]];
                let add_amount = (mu[j] as u128)
                    .checked_mul(walks[g])
                    .and_then(|v| next[t_idx].checked_add(v));
                match add_amount {
                    Some(v) => next[t_idx] = v,
                    None => {
                        return Err(Error::VerificationFailed(
                            "M M^T walk count overflow".into(),
                        ))
                    }
                }
            }
        }
        walks = next;
    }
    // Biregularity spot check: the trivial eigenvalue of M M^T must be
    // d_L d_R = (q-1)|M|^2, i.e. mu(0) (q-1) matches the claimed top value.
    let top = BigInt::from(d_l) * BigInt::from(d_l) / BigInt::from(q - 1);
    if top != BigInt::from(claimed.top_sq) {
        return Err(Error::VerificationFailed(format!(
            "top eigenvalue mismatch: degrees give {top}, claimed {}",
            claimed.top_sq
        )));
    }
    Ok(())
}

/// Hoffman ratio bound n / (degree/|lambda_min| + 1) as an exact rational.
pub fn hoffman_bound(spectrum: &Spectrum, vertex_count: u64) -> Result<BigRational> {
    if spectrum.total_multiplicity() != vertex_count {
        return Err(Error::NotRegular);
    }
    let degree = spectrum.max_eigenvalue().ok_or(Error::NotRegular)?;
    let min = spectrum.min_eigenvalue().ok_or(Error::NotRegular)?;
    if min >= 0 {
        return Err(Error::NonnegativeSpectrum);
    }
    let n = BigRational::from_integer(BigInt::from(vertex_count));
    let degree = BigRational::from_integer(BigInt::from(degree));
    let abs_min = BigRational::from_integer(BigInt::from(-min));
    Ok(n / (degree / abs_min + BigRational::one()))
}

/// Upper bound lambda (q^{dim-1} / |M|)^2 on |F intersect star| |F minus star|
/// for any intersecting family F and the star at coordinate i.
pub fn few_or_many_bound(geom: &CodeGeometry, i: usize, caps: &Caps) -> Result<BigRational> {
    let m = geom.m_size();
    if m == 0 {
        return Err(Error::WeakEkrFails);
    }
    let lambda = lambda_max(geom, i, caps)?;
    let q = BigInt::from(geom.code.q());
    let numer = BigInt::from(lambda) * q.pow(2 * (geom.code.dim() as u32 - 1));
    let denom = BigInt::from(m) * BigInt::from(m);
    Ok(BigRational::new(numer, denom))
}

/// Guaranteed star intersection for an intersecting family of the given size:
/// |F|/q + (q^{dim-1}/n) ( (|F|/q^dim)(|M|/t - 1) + 1 - |M|/(q t) ), where t
/// is the minimum off-system incidence count.
pub fn more_than_few_bound(
    geom: &CodeGeometry,
    family_size: u64,
) -> Result<BigRational> {
    let t = geom.min_off_system_incidence();
    if t == 0 {
        return Err(Error::ModulePropertyFails);
    }
    let rat = |x: u64| BigRational::from_integer(BigInt::from(x));
    let q = rat(geom.code.q() as u64);
    let n = rat(geom.code.n() as u64);
    let m = rat(geom.m_size());
    let t = rat(t as u64);
    let size = rat(family_size);
    let q_dim = rat(geom.code.size());
    let q_dim_1 = &q_dim / &q;
    let inner = (&size / &q_dim) * (&m / &t - BigRational::one()) + BigRational::one()
        - &m / (&q * &t);
    Ok(&size / &q + (&q_dim_1 / &n) * inner)
}

/// Size of a Hilton-Milner type family: q^{dim-1} - |M| + 1.
pub fn hm_family_size(geom: &CodeGeometry) -> i64 {
    let q = geom.code.q() as i64;
    let dim = geom.code.dim() as u32;
    q.pow(dim - 1) - geom.m_size() as i64 + 1
}

/// The Hilton-Milner family at (i, alpha) with the given apex: the apex plus
/// every member of the star intersecting it. Verified intersecting, with the
/// size matching the closed form.
pub fn hm_family(
    code: &LinearCode,
    i: usize,
    alpha: u32,
    apex: &Codeword,
    caps: &Caps,
) -> Result<Family> {
    if apex.word.len() != code.n() {
        return Err(Error::CodeMismatch);
    }
    if apex.word[i] == alpha {
        return Err(Error::BadApex);
    }
    let geom = CodeGeometry::new(code, caps)?;
    let star = code.star(i, alpha)?;
    let mut members = vec![apex.clone()];
    for c in &star.members {
        if intersects(c, apex, 1)? {
            members.push(c.clone());
        }
    }
    let family = Family::new(code, members)?;
    if family.len() as i64 != hm_family_size(&geom) {
        return Err(Error::VerificationFailed(format!(
            "Hilton-Milner family size {} differs from q^(dim-1) - |M| + 1 = {}",
            family.len(),
            hm_family_size(&geom)
        )));
    }
    for (a_idx, a) in family.members.iter().enumerate() {
        for b in family.members.iter().skip(a_idx + 1) {
            if !intersects(a, b, 1)? {
                return Err(Error::VerificationFailed(
                    "Hilton-Milner family is not intersecting".into(),
                ));
            }
        }
    }
    Ok(family)
}

/// Exact check of the bipartite expander mixing inequality for a coclique
/// split (S, T) in B(C, i, alpha):
/// (d_R |S| |T| / |L|)^2 <= lambda2^2 |S| (|L|-|S|)/|L| |T| (|R|-|T|)/|R|.
pub fn bipartite_mixing_holds(
    geom: &CodeGeometry,
    i: usize,
    s_size: u64,
    t_size: u64,
    caps: &Caps,
) -> Result<bool> {
    let q = geom.code.q() as u64;
    let l_size = geom.code.size() / q;
    let r_size = geom.code.size() - l_size;
    let lambda2_sq = lambda_max(geom, i, caps)?;
    let rat = |x: u64| BigRational::from_integer(BigInt::from(x));
    let d_r = rat(geom.m_size());
    let lhs = (&d_r * rat(s_size) * rat(t_size) / rat(l_size)).pow(2);
    let rhs = BigRational::from_integer(BigInt::from(lambda2_sq))
        * rat(s_size)
        * (rat(l_size) - rat(s_size))
        / rat(l_size)
        * rat(t_size)
        * (rat(r_size) - rat(t_size))
        / rat(r_size);
    Ok(lhs <= rhs)
}

/// Check the few-or-many product inequality for an intersecting family
/// against the star at (i, alpha).
pub fn few_or_many_holds(
    geom: &CodeGeometry,
    family: &Family,
    i: usize,
    alpha: u32,
    caps: &Caps,
) -> Result<bool> {
    let bound = few_or_many_bound(geom, i, caps)?;
    let inside = family
        .members
        .iter()
        .filter(|c| c.word[i] == alpha)
        .count() as u64;
    let outside = family.len() as u64 - inside;
    let product = BigRational::from_integer(BigInt::from(inside) * BigInt::from(outside));
    Ok(product <= bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{Signed, ToPrimitive};

    fn caps() -> Caps {
        Caps::default()
    }

    fn t0() -> BTreeSet<usize> {
        BTreeSet::from([0usize])
    }

    #[test]
    fn star_indicators_are_scaling_invariant() {
        let code = LinearCode::ers(5, 2).unwrap();
        let space = ProjSpace::new(code.field(), code.dim());
        let xi = StarIndicator::new(&space, &[0, 2, 3], 4).unwrap();
        for beta in 2..5u32 {
            let f = code.field();
            let scaled: Vec<u32> = [0, 2, 3].iter().map(|&c| f.mul(beta, c)).collect();
            let xi_scaled = StarIndicator::new(&space, &scaled, f.mul(beta, 4)).unwrap();
            assert_eq!(xi, xi_scaled);
        }
        // evaluates as the membership test of a star in coefficient space
        for idx in 0..code.size() {
            let coeff = code.coeff_of_index(idx);
            let dot = space.dot(&[0, 2, 3], &coeff);
            assert_eq!(xi.evaluate(&space, &coeff), dot == 4);
        }
    }

    #[test]
    fn conic_avoiding_lines() {
        let code = LinearCode::ers(5, 2).unwrap();
        let avoid = avoiding_hyperplanes(&code, &t0(), &caps()).unwrap();
        assert_eq!(avoid.hyperplanes.len(), 10);
        let all: BTreeSet<usize> = (0..code.n()).collect();
        let every = avoiding_hyperplanes(&code, &all, &caps()).unwrap();
        assert_eq!(every.hyperplanes.len(), 31);
    }

    #[test]
    fn gamma0_spectrum_of_ers52() {
        let code = LinearCode::ers(5, 2).unwrap();
        let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
        assert_eq!(spec.entries, vec![(40, 1), (5, 40), (0, 60), (-10, 24)]);
        // spectral sums
        assert_eq!(spec.total_multiplicity(), 125);
        let linear: i64 = spec.entries.iter().map(|&(v, m)| v * m as i64).sum();
        assert_eq!(linear, 0);
        let square: i64 = spec.entries.iter().map(|&(v, m)| v * v * m as i64).sum();
        assert_eq!(square, 125 * 40);
    }

    #[test]
    fn gamma_empty_t_is_the_empty_graph() {
        let code = LinearCode::ers(4, 2).unwrap();
        let spec = gamma_t_spectrum(&code, &BTreeSet::new(), &caps()).unwrap();
        assert_eq!(spec.entries, vec![(0, 64)]);
    }

    #[test]
    fn gamma_full_t_is_the_complete_graph() {
        let code = LinearCode::ers(4, 2).unwrap();
        let all: BTreeSet<usize> = (0..code.n()).collect();
        let spec = gamma_t_spectrum(&code, &all, &caps()).unwrap();
        assert_eq!(spec.entries, vec![(63, 1), (-1, 63)]);
    }

    #[test]
    fn spectrum_verification_accepts_truth_and_rejects_perturbations() {
        let code = LinearCode::ers(5, 2).unwrap();
        let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
        verify_spectrum(&code, &t0(), &spec, &caps()).unwrap();

        // perturbed multiplicity: move one unit between classes
        let mut bad = spec.clone();
        bad.entries[3].1 -= 1; // (-10, 23)
        bad.entries[2].1 += 1;
        let err = verify_spectrum(&code, &t0(), &bad, &caps()).unwrap_err();
        assert!(matches!(err, Error::VerificationFailed(_)));

        // wrong eigenvalue value
        let mut bad2 = spec.clone();
        bad2.entries[1].0 = 6;
        assert!(verify_spectrum(&code, &t0(), &bad2, &caps()).is_err());
    }

    #[test]
    fn nucleus_attains_minimum_eigenvalue_for_even_q() {
        let code = LinearCode::ers(4, 2).unwrap();
        let geom = CodeGeometry::new(&code, &caps()).unwrap();
        assert_eq!(geom.m_size(), 6); // q(q-1)/2 external lines
        let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
        assert_eq!(spec.min_eigenvalue(), Some(-6));
        // minimum eigenvalue attained on the conic plus the nucleus
        assert_eq!(spec.multiplicity_of(-6), 3 * 6);
        assert_eq!(geom.m_count(&Point(vec![0, 1, 0])), 0);
        verify_spectrum(&code, &t0(), &spec, &caps()).unwrap();
    }

    #[test]
    fn hoffman_bound_values() {
        let code = LinearCode::ers(5, 2).unwrap();
        let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
        let bound = hoffman_bound(&spec, 125).unwrap();
        assert_eq!(bound, BigRational::from_integer(BigInt::from(25)));
        // complete graph K_n
        let complete = Spectrum {
            entries: vec![(9, 1), (-1, 9)],
        };
        assert_eq!(
            hoffman_bound(&complete, 10).unwrap(),
            BigRational::from_integer(BigInt::one())
        );
        let code73 = LinearCode::ers(7, 3).unwrap();
        let spec73 = gamma_t_spectrum(&code73, &t0(), &caps()).unwrap();
        assert_eq!(
            hoffman_bound(&spec73, code73.size()).unwrap(),
            BigRational::from_integer(BigInt::from(343))
        );
        // degenerate inputs
        let empty_graph = Spectrum {
            entries: vec![(0, 10)],
        };
        assert_eq!(
            hoffman_bound(&empty_graph, 10).unwrap_err(),
            Error::NonnegativeSpectrum
        );
    }

    #[test]
    fn bipartite_spectrum_bookkeeping_and_moments() {
        for (q, k) in [(5u32, 2usize), (4, 2), (7, 2)] {
            let code = LinearCode::ers(q, k).unwrap();
            let spec = b_graph_spectrum(&code, 0, &caps()).unwrap();
            assert_eq!(spec.total_multiplicity(), code.size());
            verify_b_spectrum(&code, 0, &spec, &caps()).unwrap();
        }
        let code = LinearCode::ers(5, 2).unwrap();
        let spec = b_graph_spectrum(&code, 2, &caps()).unwrap();
        assert_eq!(spec.top_sq, 400); // (q-1)|M|^2 = 4 * 100
        verify_b_spectrum(&code, 2, &spec, &caps()).unwrap();

        // tampered line class must fail the moment check
        let mut bad = spec.clone();
        bad.line_classes[0].0 += 5;
        assert!(verify_b_spectrum(&code, 2, &bad, &caps()).is_err());
    }

    #[test]
    fn line_classes_by_parity() {
        // q even: every point off the conic and off the nucleus lies on
        // exactly one tangent, so all lines through a conic point carry the
        // same incidence distribution and a single lambda_ell arises. q odd:
        // the tangent line separates from the secants.
        let even = LinearCode::ers(4, 2).unwrap();
        let spec_even = b_graph_spectrum(&even, 0, &caps()).unwrap();
        assert_eq!(spec_even.line_classes.len(), 1);
        verify_b_spectrum(&even, 0, &spec_even, &caps()).unwrap();

        let odd = LinearCode::ers(5, 2).unwrap();
        let spec_odd = b_graph_spectrum(&odd, 0, &caps()).unwrap();
        assert_eq!(spec_odd.line_classes, vec![(30, 5), (0, 1)]);
        verify_b_spectrum(&odd, 0, &spec_odd, &caps()).unwrap();
    }

    #[test]
    fn lambda_max_matches_bipartite_second_eigenvalue() {
        let code = LinearCode::ers(5, 2).unwrap();
        let geom = CodeGeometry::new(&code, &caps()).unwrap();
        for i in [0usize, 3, 5] {
            let lm = lambda_max(&geom, i, &caps()).unwrap();
            let spec = b_graph_spectrum_from(&geom, i, &caps()).unwrap();
            assert_eq!(lm, spec.second_largest_sq());
        }
    }

    #[test]
    fn few_or_many_bound_values() {
        let code = LinearCode::ers(5, 2).unwrap();
        let geom = CodeGeometry::new(&code, &caps()).unwrap();
        let bound = few_or_many_bound(&geom, 0, &caps()).unwrap();
        assert!(bound.is_positive());
        // any star itself: inside = 25, outside = 0, product 0 <= bound
        let star = code.star(0, 0).unwrap();
        assert!(few_or_many_holds(&geom, &star, 0, 0, &caps()).unwrap());
    }

    #[test]
    fn more_than_few_bound_values() {
        let code = LinearCode::ers(5, 2).unwrap();
        let geom = CodeGeometry::new(&code, &caps()).unwrap();
        // |F| = 25 gives 25/3 with n = 6
        let bound = more_than_few_bound(&geom, 25).unwrap();
        assert_eq!(bound, BigRational::new(BigInt::from(25), BigInt::from(3)));
        // matches the q^{dim-2} (1 + (q-1)/n) specialization
        let q = BigRational::from_integer(BigInt::from(5));
        let n = BigRational::from_integer(BigInt::from(6));
        let special = q.clone() * (BigRational::one() + (q - BigRational::one()) / n);
        assert_eq!(bound, special);
        // the even case has a zero-incidence point: module property fails
        let code4 = LinearCode::ers(4, 2).unwrap();
        let geom4 = CodeGeometry::new(&code4, &caps()).unwrap();
        assert_eq!(
            more_than_few_bound(&geom4, 16).unwrap_err(),
            Error::ModulePropertyFails
        );
    }

    #[test]
    fn hilton_milner_families() {
        let code = LinearCode::ers(5, 2).unwrap();
        let geom = CodeGeometry::new(&code, &caps()).unwrap();
        assert_eq!(hm_family_size(&geom), 16); // 25 - 10 + 1
        let apex = code.codeword(&[1, 0, 0]).unwrap(); // constant 1: word[0] = 1 != 0
        let fam = hm_family(&code, 0, 0, &apex, &caps()).unwrap();
        assert_eq!(fam.len(), 16);

        let code4 = LinearCode::ers(4, 2).unwrap();
        let geom4 = CodeGeometry::new(&code4, &caps()).unwrap();
        assert_eq!(hm_family_size(&geom4), 11); // 16 - 6 + 1
        let apex4 = code4.codeword(&[1, 0, 0]).unwrap();
        let fam4 = hm_family(&code4, 0, 0, &apex4, &caps()).unwrap();
        assert_eq!(fam4.len(), 11);

        // apex inside the star is rejected
        let inside = code.codeword(&[0, 1, 0]).unwrap(); // word[0] = 0
        assert_eq!(
            hm_family(&code, 0, 0, &inside, &caps()).unwrap_err(),
            Error::BadApex
        );
    }

    #[test]
    fn gamma_spectra_verified_across_instances() {
        for (q, k) in [(4u32, 2usize), (4, 3), (5, 3), (7, 2)] {
            let code = LinearCode::ers(q, k).unwrap();
            let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
            verify_spectrum(&code, &t0(), &spec, &caps()).unwrap();
            let bound = hoffman_bound(&spec, code.size()).unwrap();
            let expected = BigInt::from(q).pow(k as u32);
            assert_eq!(bound.to_integer(), expected);
            assert!(bound.is_integer());
        }
    }

    #[test]
    fn gamma_t_with_larger_t_sets() {
        // adjacency = sharing at least one coordinate, T = {1, ..., n-1}
        let code = LinearCode::ers(4, 2).unwrap();
        let t: BTreeSet<usize> = (1..code.n()).collect();
        let spec = gamma_t_spectrum(&code, &t, &caps()).unwrap();
        verify_spectrum(&code, &t, &spec, &caps()).unwrap();
        let zero: BTreeSet<usize> = t0();
        let spec0 = gamma_t_spectrum(&code, &zero, &caps()).unwrap();
        // degrees of the two graphs partition the loopless complete graph
        let d1 = spec.max_eigenvalue().unwrap();
        let d0 = spec0.max_eigenvalue().unwrap();
        assert_eq!(d0 + d1, code.size() as i64 - 1);
    }

    #[test]
    fn hoffman_bound_to_f64_is_sane() {
        let code = LinearCode::ers(9, 2).unwrap();
        let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
        let b = hoffman_bound(&spec, code.size()).unwrap();
        assert_eq!(b.to_integer().to_u64().unwrap(), 81);
    }
}
