//! Linear codes, extended Reed-Solomon codes, projective systems, weight
//! machinery, stars, MDS subcodes and the bridge between codewords and
//! polynomials evaluated on the projective line.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::config::Caps;
use crate::gf::{find_irreducible, poly, Field};
use crate::pg::{Point, ProjSpace};
use crate::{Error, Result};

/// A linear [n, dim]_q code given by a generator matrix with independent rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    dim: usize,
    /// dim x n generator matrix, row major.
    gen: Vec<Vec<u32>>,
}

/// A codeword, stored both as the coefficient vector v and the expanded word
/// v^T G. The two representations are used interchangeably downstream.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword {
    pub coeff: Vec<u32>,
    pub word: Vec<u32>,
}

/// A deduplicated family of codewords, canonically sorted by coefficient
/// vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub members: Vec<Codeword>,
}

impl Family {
    pub fn new(code: &LinearCode, mut members: Vec<Codeword>) -> Result<Family> {
        for m in &members {
            if m.coeff.len() != code.dim || m.word.len() != code.n {
                return Err(Error::CodeMismatch);
            }
        }
        members.sort_by(|a, b| a.coeff.cmp(&b.coeff));
        members.dedup();
        Ok(Family { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: &Codeword) -> bool {
        self.members.binary_search_by(|m| m.coeff.cmp(&c.coeff)).is_ok()
    }
}

/// Homogeneous bivariate polynomial of degree k, stored through the
/// univariate coefficients (a_0, ..., a_k) of f = sum a_i X^i; the value at
/// the point at infinity is the leading coefficient a_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    pub coeffs: Vec<u32>,
}

impl HomPoly {
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn at_infinity(&self) -> u32 {
        *self.coeffs.last().unwrap()
    }
}

/// Outcome of [`LinearCode::extend`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendOutcome {
    /// No point off the system avoids every avoiding hyperplane; the code is
    /// returned unchanged.
    NothingToExtend,
    /// The listed points were appended as new columns.
    Extended(Vec<Point>),
}

impl LinearCode {
    pub fn new(field: &Field, gen: Vec<Vec<u32>>) -> Result<LinearCode> {
        let dim = gen.len();
        if dim == 0 {
            return Err(Error::BadParameters("empty generator matrix".into()));
        }
        let n = gen[0].len();
        if gen.iter().any(|row| row.len() != n) {
            return Err(Error::BadParameters("ragged generator matrix".into()));
        }
        if n == 0 {
            return Err(Error::BadParameters("zero-length code".into()));
        }
        let space = ProjSpace::new(field, n);
        if space.rank(&gen) != dim {
            return Err(Error::RankDeficient(dim));
        }
        Ok(LinearCode {
            field: field.clone(),
            n,
            dim,
            gen,
        })
    }

    /// The extended Reed-Solomon code of degree k over F_q: length q+1,
    /// dimension k+1. Columns are ordered by field-element code 0, ..., q-1
    /// followed by the column at infinity; row i is the evaluation vector of
    /// the monomial X^i.
    pub fn ers(q: u32, k: usize) -> Result<LinearCode> {
        let field = Field::from_order(q)?;
        if k as u64 >= q as u64 {
            return Err(Error::DegreeTooLarge { degree: k, q });
        }
        let n = q as usize + 1;
        let mut gen = vec![vec![0u32; n]; k + 1];
        for (i, row) in gen.iter_mut().enumerate() {
            for x in field.elements() {
                row[x as usize] = field.pow(x, i as u64);
            }
            row[n - 1] = if i == k { 1 } else { 0 };
        }
        LinearCode::new(&field, gen)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.gen
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Number of codewords q^dim.
    pub fn size(&self) -> u64 {
        (self.q() as u64).pow(self.dim as u32)
    }

    /// Column i as a coefficient-space vector.
    pub fn column(&self, i: usize) -> Vec<u32> {
        (0..self.dim).map(|r| self.gen[r][i]).collect()
    }

    pub fn codeword(&self, coeff: &[u32]) -> Result<Codeword> {
        if coeff.len() != self.dim {
            return Err(Error::CodeMismatch);
        }
        let f = &self.field;
        let mut word = vec![0u32; self.n];
        for (r, &c) in coeff.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, w) in word.iter_mut().enumerate() {
                *w = f.add(*w, f.mul(c, self.gen[r][j]));
            }
        }
        Ok(Codeword {
            coeff: coeff.to_vec(),
            word,
        })
    }

    /// Coefficient vector of codeword index in [0, q^dim), base-q digits with
    /// coefficient 0 least significant.
    pub fn coeff_of_index(&self, mut idx: u64) -> Vec<u32> {
        let q = self.q() as u64;
        let mut coeff = vec![0u32; self.dim];
        for c in coeff.iter_mut() {
            *c = (idx % q) as u32;
            idx /= q;
        }
        coeff
    }

    /// Iterate all codewords in canonical coefficient order.
    pub fn iter_codewords(&self) -> impl Iterator<Item = Codeword> + '_ {
        (0..self.size()).map(move |i| self.codeword(&self.coeff_of_index(i)).unwrap())
    }

    /// The canonical points spanned by the generator columns, in column order.
    /// Errors if two columns are dependent or a column is zero.
    pub fn projective_system(&self) -> Result<Vec<Point>> {
        let space = ProjSpace::new(&self.field, self.dim);
        let mut points = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let p = space
                .canonicalize(&self.column(i))
                .ok_or_else(|| Error::NotProjective(format!("column {i} is zero")))?;
            points.push(p);
        }
        let mut sorted = points.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != points.len() {
            return Err(Error::NotProjective("two columns span the same point".into()));
        }
        Ok(points)
    }

    pub fn is_projective(&self) -> bool {
        self.projective_system().is_ok()
    }

    /// Exact weight distribution by enumerating all q^dim codewords.
    pub fn weight_distribution(&self, caps: &Caps) -> Result<Vec<u64>> {
        caps.check_enumeration("weight distribution", self.size())?;
        let mut counts = vec![0u64; self.n + 1];
        self.fold_words(|word| {
            let w = word.iter().filter(|&&c| c != 0).count();
            counts[w] += 1;
        });
        Ok(counts)
    }

    pub fn min_weight(&self, caps: &Caps) -> Result<usize> {
        let dist = self.weight_distribution(caps)?;
        dist.iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
            .ok_or_else(|| Error::BadParameters("zero code".into()))
    }

    /// True iff the minimum weight attains the Singleton bound n - dim + 1.
    pub fn is_mds(&self, caps: &Caps) -> Result<bool> {
        Ok(self.min_weight(caps)? == self.n - self.dim + 1)
    }

    /// Walk all codewords as expanded words with an odometer, calling the
    /// closure on each. Amortizes the row additions across increments.
    fn fold_words<F: FnMut(&[u32])>(&self, mut visit: F) {
        let f = &self.field;
        let q = self.q();
        let mut coeff = vec![0u32; self.dim];
        let mut word = vec![0u32; self.n];
        loop {
            visit(&word);
            // increment the odometer; integer code order is not the additive
            // order in extension fields, so scale rows by the code delta
            let mut pos = 0;
            loop {
                if pos == self.dim {
                    return;
                }
                let old = coeff[pos];
                let new = if old + 1 == q { 0 } else { old + 1 };
                coeff[pos] = new;
                let delta = f.sub(new, old);
                for (j, w) in word.iter_mut().enumerate() {
                    *w = f.add(*w, f.mul(delta, self.gen[pos][j]));
                }
                if new != 0 {
                    break;
                }
                pos += 1;
            }
        }
    }

    /// All codewords with word[i] = alpha.
    pub fn star(&self, i: usize, alpha: u32) -> Result<Family> {
        self.t_star(&[i], &[alpha])
    }

    /// All codewords with the prescribed coordinates. Size q^(dim - t) when
    /// the constraints are independent; an empty solution set is reported as
    /// `InconsistentConstraints`.
    pub fn t_star(&self, positions: &[usize], values: &[u32]) -> Result<Family> {
        if positions.len() != values.len() {
            return Err(Error::BadParameters("positions/values length mismatch".into()));
        }
        let mut seen = positions.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != positions.len() {
            return Err(Error::BadParameters("duplicate star positions".into()));
        }
        if let Some(&bad) = positions.iter().find(|&&i| i >= self.n) {
            return Err(Error::BadParameters(format!("position {bad} out of range")));
        }
        // Solve <column_i, w> = alpha_i over the coefficient space.
        let rows: Vec<Vec<u32>> = positions.iter().map(|&i| self.column(i)).collect();
        let solution = solve_affine(&self.field, &rows, values, self.dim)?;
        let members = solution
            .enumerate(&self.field)
            .map(|coeff| self.codeword(&coeff).unwrap())
            .collect();
        Family::new(self, members)
    }

    /// Extend the code by one column per point that lies on no avoiding
    /// hyperplane and is not already in the projective system. Preservation
    /// of the intersection relation is certified by re-checking that every
    /// appended point avoids all hyperplanes that miss the original system.
    pub fn extend(&self, caps: &Caps) -> Result<(LinearCode, ExtendOutcome)> {
        let system = self.projective_system()?;
        let space = ProjSpace::new(&self.field, self.dim);
        let classified = space.classify_hyperplanes(&system, caps)?;
        let avoiding: Vec<_> = classified
            .into_iter()
            .filter(|(_, cnt)| *cnt == 0)
            .map(|(h, _)| h)
            .collect();
        let counts = space.incidence_counts(&avoiding, caps)?;
        let mut new_points: Vec<Point> = counts
            .into_iter()
            .filter(|(p, cnt)| *cnt == 0 && !system.contains(p))
            .map(|(p, _)| p)
            .collect();
        new_points.sort();
        if new_points.is_empty() {
            return Ok((self.clone(), ExtendOutcome::NothingToExtend));
        }
        for p in &new_points {
            for h in &avoiding {
                debug_assert!(!space.incident(p, h)?);
            }
        }
        let mut gen = self.gen.clone();
        for p in &new_points {
            for (r, row) in gen.iter_mut().enumerate() {
                row.push(p.0[r]);
            }
        }
        let extended = LinearCode::new(&self.field, gen)?;
        Ok((extended, ExtendOutcome::Extended(new_points)))
    }
}

/// True iff two codewords agree in at least t coordinates.
pub fn intersects(c1: &Codeword, c2: &Codeword, t: usize) -> Result<bool> {
    if c1.word.len() != c2.word.len() {
        return Err(Error::CodeMismatch);
    }
    let mut agree = 0usize;
    for (a, b) in c1.word.iter().zip(&c2.word) {
        if a == b {
            agree += 1;
            if agree >= t {
                return Ok(true);
            }
        }
    }
    Ok(agree >= t)
}

/// Solution of an affine system: particular solution plus nullspace basis.
struct AffineSolution {
    particular: Vec<u32>,
    nullspace: Vec<Vec<u32>>,
}

impl AffineSolution {
    fn enumerate<'a>(&'a self, field: &'a Field) -> impl Iterator<Item = Vec<u32>> + 'a {
        let q = field.q() as u64;
        let count = q.pow(self.nullspace.len() as u32);
        (0..count).map(move |mut idx| {
            let mut v = self.particular.clone();
            for basis in &self.nullspace {
                let c = (idx % q) as u32;
                idx /= q;
                if c != 0 {
                    for (vi, &bi) in v.iter_mut().zip(basis) {
                        *vi = field.add(*vi, field.mul(c, bi));
                    }
                }
            }
            v
        })
    }
}

/// Gaussian elimination solving rows . w = values over F_q.
#[allow(clippy::needless_range_loop)]
fn solve_affine(
    field: &Field,
    rows: &[Vec<u32>],
    values: &[u32],
    unknowns: usize,
) -> Result<AffineSolution> {
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .zip(values)
        .map(|(r, &v)| {
            let mut row = r.clone();
            row.push(v);
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..unknowns {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = field.inv(m[rank][col])?;
        for c in 0..=unknowns {
            m[rank][c] = field.mul(inv, m[rank][c]);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..=unknowns {
                    let s = field.mul(factor, m[rank][c]);
                    m[r][c] = field.sub(m[r][c], s);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    // inconsistent row: 0 = nonzero
    for r in rank..m.len() {
        if m[r][unknowns] != 0 {
            return Err(Error::InconsistentConstraints);
        }
    }
    let mut particular = vec![0u32; unknowns];
    for (r, &col) in pivot_cols.iter().enumerate() {
        particular[col] = m[r][unknowns];
    }
    let free_cols: Vec<usize> = (0..unknowns).filter(|c| !pivot_cols.contains(c)).collect();
    let mut nullspace = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut basis = vec![0u32; unknowns];
        basis[fc] = 1;
        for (r, &col) in pivot_cols.iter().enumerate() {
            basis[col] = field.neg(m[r][fc]);
        }
        nullspace.push(basis);
    }
    Ok(AffineSolution {
        particular,
        nullspace,
    })
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Closed-form weight distribution of an [n, k, d = n-k+1]_q MDS code:
/// W_t = (q-1) C(n,t) sum_{j=0}^{t-d} (-1)^j C(t-1, j) q^(t-d-j) for t >= d.
#[allow(clippy::needless_range_loop)]
pub fn mds_weight_distribution(n: usize, k: usize, q: u32) -> Vec<BigInt> {
    assert!(k >= 1 && k <= n);
    let d = n - k + 1;
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::one();
    for t in d..=n {
        let mut sum = BigInt::zero();
        for j in 0..=(t - d) {
            let term = binomial(t as u64 - 1, j as u64)
                * BigInt::from(q).pow((t - d - j) as u32);
            if j % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        out[t] = BigInt::from(q - 1) * binomial(n as u64, t as u64) * sum;
    }
    out
}

/// Evaluate a polynomial of degree at most k on F_q and at infinity:
/// the word (f(0), ..., f(q-1), a_k) in the extended Reed-Solomon column
/// order.
pub fn poly_to_word(field: &Field, p: &HomPoly) -> Result<Codeword> {
    let k = p.degree_bound();
    if k as u64 >= field.q() as u64 {
        return Err(Error::DegreeTooLarge {
            degree: k,
            q: field.q(),
        });
    }
    let mut word = Vec::with_capacity(field.q() as usize + 1);
    for x in field.elements() {
        word.push(poly::eval(field, &p.coeffs, x));
    }
    word.push(p.at_infinity());
    Ok(Codeword {
        coeff: p.coeffs.clone(),
        word,
    })
}

/// Inverse of [`poly_to_word`] for a word claimed to lie in ERS(q, k):
/// recovers the coefficient vector and verifies the whole word.
pub fn word_to_poly(code: &LinearCode, word: &[u32]) -> Result<HomPoly> {
    if word.len() != code.n() {
        return Err(Error::CodeMismatch);
    }
    let field = code.field();
    // Solve G^T coeff = word via the affine solver on the transposed system.
    let rows: Vec<Vec<u32>> = (0..code.n()).map(|i| code.column(i)).collect();
    let solution = solve_affine(field, &rows, word, code.dim())?;
    if !solution.nullspace.is_empty() {
        return Err(Error::RankDeficient(code.dim()));
    }
    let coeff = solution.particular;
    let check = code.codeword(&coeff)?;
    if check.word != word {
        return Err(Error::InconsistentConstraints);
    }
    Ok(HomPoly { coeffs: coeff })
}

/// The [q+1, t] MDS subcode of ERS(q, k) spanned by Ev(f X^j), j = 0..t-1,
/// where f is the canonical irreducible of degree k+1-t over F_q.
pub fn ers_mds_subcode(q: u32, k: usize, t: usize) -> Result<LinearCode> {
    if t == 0 || t > k {
        return Err(Error::BadParameters(format!(
            "subcode dimension t={t} must satisfy 1 <= t <= k={k}"
        )));
    }
    let field = Field::from_order(q)?;
    if k as u64 >= q as u64 {
        return Err(Error::DegreeTooLarge { degree: k, q });
    }
    let f = find_irreducible(&field, k + 1 - t);
    let mut gen = Vec::with_capacity(t);
    for j in 0..t {
        // f(X) * X^j, degree k+1-t+j <= k
        let mut coeffs = vec![0u32; j];
        coeffs.extend_from_slice(&f);
        coeffs.resize(k + 1, 0);
        let word = poly_to_word(&field, &HomPoly { coeffs })?;
        gen.push(word.word);
    }
    LinearCode::new(&field, gen)
}
