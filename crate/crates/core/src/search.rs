//! Exact maximum (t-)intersecting-family search via branch-and-bound maximum
//! clique on the t-intersection graph, plus census and classification of the
//! maximum families.
//!
//! The t-intersection graph on a code joins two codewords when they agree in
//! at least t coordinates; intersecting families are exactly its cliques.
//! Adjacency depends only on the difference of the coefficient vectors, so
//! the graph is a Cayley graph and every maximum clique is a translate of one
//! through the zero codeword. The search is rooted there, and the census of
//! all maximum families is recovered as the translation closure of the rooted
//! census. Bounding is by greedy coloring; the search is single-threaded and
//! fully deterministic.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::codes::{intersects, Family, LinearCode};
use crate::config::Caps;
use crate::ekr::{contained_in_star, is_intersecting_family, is_star};
use crate::group::VertexGroup;
use crate::spectral::CodeGeometry;
use crate::{Error, Result};

#[derive(Debug, Clone)]
#[derive(Default)]
pub struct SearchConfig {
    pub census: bool,
    pub timeout: Option<Duration>,
    pub caps: Caps,
}


/// How a maximum family relates to the canonical structures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyTag {
    Star { i: usize, alpha: u32 },
    ContainedInStar { i: usize, alpha: u32 },
    HiltonMilner,
    /// All members share the same middle coefficient b; the polynomial form
    /// {a X^2 + b XY + c Y^2 : a, c} arising for even q.
    BLine { b: u32 },
    Other,
}

#[derive(Debug, Clone)]
pub struct Census {
    pub families: Vec<Family>,
    pub tags: Vec<FamilyTag>,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub max_size: usize,
    /// Lexicographically least witness among the translates of the family
    /// the search found (the global least in census mode).
    pub witness: Family,
    pub node_count: u64,
    pub elapsed: Duration,
    pub census: Option<Census>,
}

/// A fixed-capacity bitset over graph vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(n: usize) -> BitSet {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| a & b)
                .collect(),
        }
    }

    fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(&a, &b)| a & b != 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

/// The t-intersection graph on the code, with Cayley structure.
struct IntersectionGraph {
    group: VertexGroup,
    size: usize,
    /// adjacent_diff[d] for nonzero difference index d.
    adjacent_diff: Vec<bool>,
}

impl IntersectionGraph {
    fn build(code: &LinearCode, t: usize, cap: u64) -> Result<IntersectionGraph> {
        let size = code.size();
        if size > cap {
            return Err(Error::TooLarge {
                what: "intersection-graph search",
                limit: size,
                cap,
                unit: "vertices",
            });
        }
        if t == 0 || t > code.n() {
            return Err(Error::BadParameters(format!(
                "intersection threshold t = {t} out of range"
            )));
        }
        let mut adjacent_diff = vec![false; size as usize];
        for d in 1..size {
            let w = code.codeword(&code.coeff_of_index(d))?;
            let weight = w.word.iter().filter(|&&c| c != 0).count();
            // agree in >= t coordinates <=> difference weight <= n - t
            adjacent_diff[d as usize] = weight <= code.n() - t;
        }
        Ok(IntersectionGraph {
            group: VertexGroup::new(code),
            size: size as usize,
            adjacent_diff,
        })
    }

    #[inline]
    fn adjacent(&self, a: u32, b: u32) -> bool {
        a != b && self.adjacent_diff[self.group.sub(a, b) as usize]
    }

    fn neighbors_of_zero(&self) -> Vec<u32> {
        (1..self.size as u32)
            .filter(|&v| self.adjacent_diff[v as usize])
            .collect()
    }
}

/// Branch-and-bound state on the subgraph induced by the neighbourhood of 0.
struct CliqueSearch {
    local: Vec<u32>,
    adj: Vec<BitSet>,
    node_count: u64,
    best: usize,
    best_clique: Vec<usize>,
    /// census target (local size, excluding the implicit zero vertex)
    target: Option<usize>,
    solutions: Vec<Vec<usize>>,
    deadline: Option<Instant>,
    timeout: Option<Duration>,
}

impl CliqueSearch {
    fn new(graph: &IntersectionGraph, timeout: Option<Duration>) -> CliqueSearch {
        let local = graph.neighbors_of_zero();
        let m = local.len();
        let mut adj = vec![BitSet::empty(m); m];
        for i in 0..m {
            for j in (i + 1)..m {
                if graph.adjacent(local[i], local[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        CliqueSearch {
            local,
            adj,
            node_count: 0,
            best: 0,
            best_clique: Vec::new(),
            target: None,
            solutions: Vec::new(),
            deadline: timeout.map(|t| Instant::now() + t),
            timeout,
        }
    }

    fn check_time(&self) -> Result<()> {
        if let Some(deadline) = self.deadline {
            if self.node_count.is_multiple_of(1024) && Instant::now() > deadline {
                return Err(Error::Timeout(self.timeout.unwrap()));
            }
        }
        Ok(())
    }

    /// Greedy coloring of the candidate set in static vertex order; returns
    /// vertices sorted by ascending color together with their color numbers.
    fn color_sort(&self, cands: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<BitSet> = Vec::new();
        let mut membership: Vec<(usize, usize)> = Vec::new(); // (vertex, color)
        for v in cands.iter() {
            let mut placed = false;
            for (k, class) in classes.iter_mut().enumerate() {
                if !class.intersects(&self.adj[v]) {
                    class.insert(v);
                    membership.push((v, k + 1));
                    placed = true;
                    break;
                }
            }
            if !placed {
                let mut class = BitSet::empty(self.local.len());
                class.insert(v);
                classes.push(class);
                membership.push((v, classes.len()));
            }
        }
        membership.sort_by_key(|&(_, c)| c);
        let order = membership.iter().map(|&(v, _)| v).collect();
        let colors = membership.iter().map(|&(_, c)| c).collect();
        (order, colors)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, cands: &BitSet) -> Result<()> {
        self.node_count += 1;
        self.check_time()?;
        if cands.is_empty() {
            match self.target {
                None => {
                    if clique.len() > self.best {
                        self.best = clique.len();
                        self.best_clique = clique.clone();
                    }
                }
                Some(target) => {
                    if clique.len() == target {
                        self.solutions.push(clique.clone());
                    }
                }
            }
            return Ok(());
        }
        let (order, colors) = self.color_sort(cands);
        let mut cands = cands.clone();
        for idx in (0..order.len()).rev() {
            let v = order[idx];
            let reachable = clique.len() + colors[idx];
            match self.target {
                None => {
                    if reachable <= self.best {
                        return Ok(());
                    }
                }
                Some(target) => {
                    if reachable < target {
                        return Ok(());
                    }
                }
            }
            clique.push(v);
            let next = cands.intersect(&self.adj[v]);
            if self.target == Some(clique.len()) && next.is_empty() {
                self.solutions.push(clique.clone());
            } else {
                self.expand(clique, &next)?;
            }
            clique.pop();
            cands.remove(v);
        }
        Ok(())
    }

    fn run_max(&mut self) -> Result<()> {
        self.target = None;
        let mut all = BitSet::empty(self.local.len());
        for i in 0..self.local.len() {
            all.insert(i);
        }
        let mut clique = Vec::new();
        self.expand(&mut clique, &all)
    }

    fn run_census(&mut self, target_local: usize) -> Result<()> {
        self.target = Some(target_local);
        self.solutions.clear();
        if target_local == 0 {
            self.solutions.push(Vec::new());
            return Ok(());
        }
        let mut all = BitSet::empty(self.local.len());
        for i in 0..self.local.len() {
            all.insert(i);
        }
        let mut clique = Vec::new();
        self.expand(&mut clique, &all)
    }
}

fn family_from_indices(code: &LinearCode, indices: &[u32]) -> Result<Family> {
    let members = indices
        .iter()
        .map(|&v| code.codeword(&code.coeff_of_index(v as u64)))
        .collect::<Result<Vec<_>>>()?;
    Family::new(code, members)
}

fn coeff_key(fam: &Family) -> Vec<Vec<u32>> {
    fam.members.iter().map(|c| c.coeff.clone()).collect()
}

/// Exact maximum t-intersecting family in the code, found as the maximum
/// clique of the t-intersection graph rooted at the zero codeword. With
/// `census` set, enumerates every maximum family via translation closure of
/// the rooted census.
pub fn max_intersecting_family(
    code: &LinearCode,
    t: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let cap = if config.census {
        config.caps.census_vertices
    } else {
        config.caps.search_vertices
    };
    let graph = IntersectionGraph::build(code, t, cap)?;
    let start = Instant::now();
    let mut search = CliqueSearch::new(&graph, config.timeout);
    search.run_max()?;
    let max_size = search.best + 1; // plus the zero codeword

    // vertex indices of the found rooted witness
    let mut witness_indices: Vec<u32> = vec![0];
    witness_indices.extend(search.best_clique.iter().map(|&i| search.local[i]));

    let census = if config.census {
        search.run_census(max_size - 1)?;
        let rooted: Vec<Vec<u32>> = search
            .solutions
            .iter()
            .map(|sol| {
                let mut ids: Vec<u32> = vec![0];
                ids.extend(sol.iter().map(|&i| search.local[i]));
                ids
            })
            .collect();
        // translation closure: every maximum family is a translate of a
        // rooted one, and every translate of a maximum family is maximum
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for ids in &rooted {
            for shift in 0..graph.size as u32 {
                let mut translated: Vec<u32> =
                    ids.iter().map(|&v| graph.group.add(v, shift)).collect();
                translated.sort_unstable();
                seen.insert(translated);
            }
        }
        let mut families = Vec::with_capacity(seen.len());
        for ids in seen {
            families.push(family_from_indices(code, &ids)?);
        }
        families.sort_by_key(coeff_key);
        let tags = families
            .iter()
            .map(|f| classify_family(code, f))
            .collect::<Result<Vec<_>>>()?;
        Some(Census { families, tags })
    } else {
        None
    };

    // canonical-least witness
    let witness = match &census {
        Some(census) => census.families[0].clone(),
        None => {
            let mut best: Option<Family> = None;
            for &v in &witness_indices {
                let shifted: Vec<u32> = witness_indices
                    .iter()
                    .map(|&w| graph.group.sub(w, v))
                    .collect();
                let fam = family_from_indices(code, &shifted)?;
                if best.as_ref().is_none_or(|b| coeff_key(&fam) < coeff_key(b)) {
                    best = Some(fam);
                }
            }
            best.expect("witness is nonempty")
        }
    };
    debug_assert!(is_intersecting_family(&witness, t)?);

    Ok(SearchResult {
        max_size,
        witness,
        node_count: search.node_count,
        elapsed: start.elapsed(),
        census,
    })
}

/// Enumerate every maximum t-intersecting family and tag each one.
pub fn classify_maximum_families(
    code: &LinearCode,
    t: usize,
    config: &SearchConfig,
) -> Result<Census> {
    let cfg = SearchConfig {
        census: true,
        ..config.clone()
    };
    let result = max_intersecting_family(code, t, &cfg)?;
    Ok(result.census.expect("census requested"))
}

/// Tag a family against the canonical structures.
pub fn classify_family(code: &LinearCode, fam: &Family) -> Result<FamilyTag> {
    if let Some((i, alpha)) = is_star(code, fam)? {
        return Ok(FamilyTag::Star { i, alpha });
    }
    if let Some((i, alpha)) = contained_in_star(fam) {
        return Ok(FamilyTag::ContainedInStar { i, alpha });
    }
    // b-line type: all coefficient vectors agree in the degree-1 coefficient
    // and the family is the full coset of size q^(dim-1)
    if code.dim() == 3 {
        let b = fam.members.first().map(|c| c.coeff[1]);
        if let Some(b) = b {
            if fam.members.iter().all(|c| c.coeff[1] == b)
                && fam.len() as u64 == code.size() / code.q() as u64
            {
                return Ok(FamilyTag::BLine { b });
            }
        }
    }
    if is_hilton_milner(code, fam)? {
        return Ok(FamilyTag::HiltonMilner);
    }
    Ok(FamilyTag::Other)
}

/// A Hilton-Milner type family: one apex plus all members of a star
/// intersecting the apex.
fn is_hilton_milner(code: &LinearCode, fam: &Family) -> Result<bool> {
    if fam.len() < 2 {
        return Ok(false);
    }
    for i in 0..code.n() {
        // candidate: all but one member agree at coordinate i
        let mut counts: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();
        for c in &fam.members {
            *counts.entry(c.word[i]).or_insert(0) += 1;
        }
        let Some((&alpha, &cnt)) = counts.iter().max_by_key(|&(_, &c)| c) else {
            continue;
        };
        if cnt + 1 != fam.len() {
            continue;
        }
        let apex = fam
            .members
            .iter()
            .find(|c| c.word[i] != alpha)
            .expect("one member off the star");
        let rebuilt = crate::spectral::hm_family(code, i, alpha, apex, &Caps::default());
        if let Ok(rebuilt) = rebuilt {
            if rebuilt.members == fam.members {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Star-absorption report: per-star intersection sizes, the threshold
/// q^{dim-1} - |M|, and the absorption check that any star exceeding the
/// threshold contains the family entirely.
#[derive(Debug, Clone)]
pub struct AbsorptionReport {
    pub threshold: i64,
    /// (coordinate, value, |family intersect star|, family contained in star)
    pub profile: Vec<(usize, u32, usize, bool)>,
    /// stars exceeding the threshold without containing the family; empty
    /// unless the absorption law fails.
    pub violations: Vec<(usize, u32)>,
}

pub fn verify_star_absorption(
    geom: &CodeGeometry,
    fam: &Family,
    _caps: &Caps,
) -> Result<AbsorptionReport> {
    let code = &geom.code;
    let q = code.q();
    let threshold = (code.size() / q as u64) as i64 - geom.m_size() as i64;
    let mut profile = Vec::new();
    let mut violations = Vec::new();
    for i in 0..code.n() {
        for alpha in 0..q {
            let inside = fam.members.iter().filter(|c| c.word[i] == alpha).count();
            let contained = inside == fam.len();
            if (inside as i64) > threshold && !contained {
                violations.push((i, alpha));
            }
            profile.push((i, alpha, inside, contained));
        }
    }
    Ok(AbsorptionReport {
        threshold,
        profile,
        violations,
    })
}

/// A re-verifiable search certificate for extended Reed-Solomon instances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub tool_version: String,
    pub q: u32,
    pub k: usize,
    pub t: usize,
    pub size: usize,
    pub family: Vec<Vec<u32>>,
}

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

pub fn certificate(q: u32, k: usize, t: usize, fam: &Family) -> Certificate {
    Certificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        q,
        k,
        t,
        size: fam.len(),
        family: fam.members.iter().map(|c| c.coeff.clone()).collect(),
    }
}

/// Re-verify a certificate: the members must be distinct valid coefficient
/// vectors, the family pairwise t-intersecting, and the size must match.
pub fn verify_certificate(cert: &Certificate) -> Result<()> {
    let code = LinearCode::ers(cert.q, cert.k)?;
    if cert.family.len() != cert.size {
        return Err(Error::CertificateInvalid(format!(
            "certificate claims size {} but lists {} members",
            cert.size,
            cert.family.len()
        )));
    }
    let mut members = Vec::with_capacity(cert.family.len());
    for coeff in &cert.family {
        if coeff.len() != code.dim() || coeff.iter().any(|&c| c >= cert.q) {
            return Err(Error::CertificateInvalid(format!(
                "invalid coefficient vector {coeff:?}"
            )));
        }
        members.push(code.codeword(coeff)?);
    }
    let fam = Family::new(&code, members)?;
    if fam.len() != cert.size {
        return Err(Error::CertificateInvalid(
            "family contains duplicate members".into(),
        ));
    }
    for (i, a) in fam.members.iter().enumerate() {
        for b in fam.members.iter().skip(i + 1) {
            if !intersects(a, b, cert.t)? {
                return Err(Error::CertificateInvalid(format!(
                    "members {:?} and {:?} do not {}-intersect",
                    a.coeff, b.coeff, cert.t
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> SearchConfig {
        SearchConfig::default()
    }

    fn census_config() -> SearchConfig {
        SearchConfig {
            census: true,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn hom2_f3_maximum_is_q_squared_and_all_stars() {
        let code = LinearCode::ers(3, 2).unwrap();
        let result = max_intersecting_family(&code, 1, &census_config()).unwrap();
        assert_eq!(result.max_size, 9);
        let census = result.census.unwrap();
        // n * q stars, nothing else
        assert_eq!(census.families.len(), 4 * 3);
        assert!(census
            .tags
            .iter()
            .all(|t| matches!(t, FamilyTag::Star { .. })));
    }

    #[test]
    fn hom2_f4_census_contains_b_line_families() {
        let code = LinearCode::ers(4, 2).unwrap();
        let result = max_intersecting_family(&code, 1, &census_config()).unwrap();
        assert_eq!(result.max_size, 16);
        let census = result.census.unwrap();
        let stars = census
            .tags
            .iter()
            .filter(|t| matches!(t, FamilyTag::Star { .. }))
            .count();
        let b_lines: Vec<u32> = census
            .tags
            .iter()
            .filter_map(|t| match t {
                FamilyTag::BLine { b } => Some(*b),
                _ => None,
            })
            .collect();
        assert_eq!(stars, 5 * 4);
        assert_eq!(b_lines.len(), 4); // one per middle coefficient
        assert_eq!(census.families.len(), 24);
    }

    #[test]
    fn hom2_f5_census_is_stars_only() {
        let code = LinearCode::ers(5, 2).unwrap();
        let result = max_intersecting_family(&code, 1, &census_config()).unwrap();
        assert_eq!(result.max_size, 25);
        let census = result.census.unwrap();
        let direct = classify_maximum_families(&code, 1, &config()).unwrap();
        assert_eq!(direct.families, census.families);
        assert_eq!(direct.tags, census.tags);
        assert_eq!(census.families.len(), 30);
        assert!(census
            .tags
            .iter()
            .all(|t| matches!(t, FamilyTag::Star { .. })));
    }

    #[test]
    fn two_intersecting_families_in_hom2_f5() {
        // known constructions reach (3q-1)/2 = 7; the maximum must sit in
        // [7, 13) against the (q^2-1)/k + 1 bound
        let code = LinearCode::ers(5, 2).unwrap();
        let result = max_intersecting_family(&code, 2, &config()).unwrap();
        assert!(result.max_size >= 7, "max = {}", result.max_size);
        assert!(result.max_size < 13, "max = {}", result.max_size);
        assert!(is_intersecting_family(&result.witness, 2).unwrap());
    }

    #[test]
    fn three_intersecting_families_in_hom3_f5_below_strict_bound() {
        let code = LinearCode::ers(5, 3).unwrap();
        let result = max_intersecting_family(&code, 3, &config()).unwrap();
        assert!(result.max_size < 9, "max = {}", result.max_size);
    }

    #[test]
    fn search_is_deterministic() {
        let code = LinearCode::ers(4, 2).unwrap();
        let a = max_intersecting_family(&code, 1, &config()).unwrap();
        let b = max_intersecting_family(&code, 1, &config()).unwrap();
        assert_eq!(a.max_size, b.max_size);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.node_count, b.node_count);
    }

    #[test]
    fn witness_is_least_translate() {
        let code = LinearCode::ers(3, 2).unwrap();
        let result = max_intersecting_family(&code, 1, &config()).unwrap();
        // the witness family contains the zero codeword after normalization
        assert_eq!(result.witness.members[0].coeff, vec![0, 0, 0]);
    }

    #[test]
    fn census_is_translation_closed() {
        let code = LinearCode::ers(3, 2).unwrap();
        let result = max_intersecting_family(&code, 1, &census_config()).unwrap();
        let census = result.census.unwrap();
        let keys: BTreeSet<Vec<Vec<u32>>> =
            census.families.iter().map(coeff_key).collect();
        let f = code.field();
        for fam in &census.families {
            // translate by an arbitrary codeword and check membership
            let shift = [1u32, 2 % code.q(), 0];
            let translated: Vec<_> = fam
                .members
                .iter()
                .map(|c| {
                    let coeff: Vec<u32> = c
                        .coeff
                        .iter()
                        .zip(shift.iter())
                        .map(|(&a, &b)| f.add(a, b))
                        .collect();
                    code.codeword(&coeff).unwrap()
                })
                .collect();
            let translated = Family::new(&code, translated).unwrap();
            assert!(keys.contains(&coeff_key(&translated)));
        }
    }

    #[test]
    fn star_absorption_profile() {
        let code = LinearCode::ers(5, 2).unwrap();
        let geom = CodeGeometry::new(&code, &Caps::default()).unwrap();
        let star = code.star(0, 0).unwrap();
        let report = verify_star_absorption(&geom, &star, &Caps::default()).unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(report.threshold, 15); // 25 - 10
        // the star absorbs itself
        let self_entry = report
            .profile
            .iter()
            .find(|&&(i, a, _, _)| i == 0 && a == 0)
            .unwrap();
        assert_eq!(self_entry.2, 25);
        assert!(self_entry.3);

        // a Hilton-Milner family meets its apex star in exactly the threshold
        let apex = code.codeword(&[1, 0, 0]).unwrap();
        let hm = crate::spectral::hm_family(&code, 0, 0, &apex, &Caps::default()).unwrap();
        let hm_report = verify_star_absorption(&geom, &hm, &Caps::default()).unwrap();
        assert!(hm_report.violations.is_empty());
        let apex_star = hm_report
            .profile
            .iter()
            .find(|&&(i, a, _, _)| i == 0 && a == 0)
            .unwrap();
        assert_eq!(apex_star.2 as i64, hm_report.threshold);
    }

    #[test]
    fn certificates_round_trip_and_detect_tampering() {
        let code = LinearCode::ers(4, 2).unwrap();
        let result = max_intersecting_family(&code, 1, &config()).unwrap();
        let cert = certificate(4, 2, 1, &result.witness);
        verify_certificate(&cert).unwrap();

        let mut tampered = cert.clone();
        tampered.family[0] = vec![3, 3, 3];
        assert!(verify_certificate(&tampered).is_err());

        let mut short = cert;
        short.family.pop();
        assert!(verify_certificate(&short).is_err());
    }

    #[test]
    fn hilton_milner_classification() {
        let code = LinearCode::ers(5, 2).unwrap();
        let apex = code.codeword(&[1, 0, 0]).unwrap();
        let hm = crate::spectral::hm_family(&code, 0, 0, &apex, &Caps::default()).unwrap();
        assert_eq!(classify_family(&code, &hm).unwrap(), FamilyTag::HiltonMilner);
    }
}
