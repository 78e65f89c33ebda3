//! The exterior algebra Λ(V) of V = K^{n+1}.
//!
//! Basis monomials `e_{i_1}∧…∧e_{i_d}` are stored as bit sets over
//! `{0,…,n}`, so the ambient dimension is capped at 63.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlinalg::{Field, Matrix};

pub const MAX_AMBIENT: usize = 63;

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// A basis monomial of Λ(V).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtMonomial {
    ambient: usize,
    bits: u64,
}

impl ExtMonomial {
    /// From a strictly increasing index list.
    pub fn new(ambient: usize, indices: &[usize]) -> Result<Self> {
        if ambient > MAX_AMBIENT {
            return Err(Error::AmbientTooLarge(ambient));
        }
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        if !increasing || indices.iter().any(|&i| i >= ambient) {
            return Err(Error::InvalidIndices(indices.to_vec(), ambient));
        }
        let bits = indices.iter().fold(0u64, |acc, &i| acc | 1 << i);
        Ok(Self { ambient, bits })
    }

    pub(crate) fn from_bits(ambient: usize, bits: u64) -> Self {
        debug_assert!(ambient <= MAX_AMBIENT && bits >> ambient == 0);
        Self { ambient, bits }
    }

    pub fn unit(ambient: usize) -> Self {
        Self { ambient, bits: 0 }
    }

    /// `e_0∧…∧e_n`.
    pub fn top(ambient: usize) -> Self {
        Self {
            ambient,
            bits: full_mask(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn grade(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|&i| self.bits >> i & 1 == 1)
            .collect()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        i < self.ambient && self.bits >> i & 1 == 1
    }

    /// The monomial on the complementary index set.
    pub fn complement(&self) -> Self {
        Self {
            ambient: self.ambient,
            bits: !self.bits & full_mask(self.ambient),
        }
    }
}

fn full_mask(ambient: usize) -> u64 {
    if ambient == 64 {
        u64::MAX
    } else {
        (1u64 << ambient) - 1
    }
}

/// Grade first, then lexicographic on the sorted index sequences.
impl Ord for ExtMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.grade().cmp(&other.grade()))
            .then_with(|| {
                let diff = self.bits ^ other.bits;
                if diff == 0 {
                    Ordering::Equal
                } else if self.bits & (diff & diff.wrapping_neg()) != 0 {
                    // the first differing index belongs to self
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
    }
}

impl PartialOrd for ExtMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}", self.indices())
    }
}

impl fmt::Display for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        if idx.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = idx.iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// Parity of the permutation sorting the concatenation `a` then `b`, for
/// disjoint index sets: the number of pairs `(i ∈ a, j ∈ b)` with `i > j`.
fn merge_sign_is_negative(a: u64, b: u64) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> j).count_ones();
        rest &= rest - 1;
    }
    inversions & 1 == 1
}

/// `a ∧ b` on basis monomials: `None` when the index sets meet, otherwise the
/// sign (`±1`) and the merged monomial.
pub fn wedge_monomials(a: &ExtMonomial, b: &ExtMonomial) -> Result<Option<(i8, ExtMonomial)>> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch(a.ambient, b.ambient));
    }
    if a.bits & b.bits != 0 {
        return Ok(None);
    }
    let sign = if merge_sign_is_negative(a.bits, b.bits) {
        -1
    } else {
        1
    };
    Ok(Some((
        sign,
        ExtMonomial::from_bits(a.ambient, a.bits | b.bits),
    )))
}

/// The lexicographically ordered monomial basis of `Λ^grade K^ambient`, with
/// reverse lookup.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    ambient: usize,
    grade: usize,
    monomials: Vec<ExtMonomial>,
    position: HashMap<u64, usize>,
}

impl GradedBasis {
    pub fn new(ambient: usize, grade: usize) -> Result<Self> {
        if ambient > MAX_AMBIENT {
            return Err(Error::AmbientTooLarge(ambient));
        }
        let monomials = monomials_of_grade(ambient, grade);
        let position = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.bits, i))
            .collect();
        Ok(Self {
            ambient,
            grade,
            monomials,
            position,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[ExtMonomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &ExtMonomial) -> Option<usize> {
        if m.ambient != self.ambient {
            return None;
        }
        self.position.get(&m.bits).copied()
    }
}

/// All monomials of a grade, in lexicographic order.
pub fn monomials_of_grade(ambient: usize, grade: usize) -> Vec<ExtMonomial> {
    let mut out = Vec::with_capacity(binomial(ambient, grade) as usize);
    if grade > ambient {
        return out;
    }
    if grade == 0 {
        out.push(ExtMonomial::unit(ambient));
        return out;
    }
    // Gosper's hack walks the subsets in colex order
    let limit = 1u64 << ambient;
    let mut x = (1u64 << grade) - 1;
    while x < limit {
        out.push(ExtMonomial::from_bits(ambient, x));
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out.sort();
    out
}

/// A homogeneous element of Λ^grade(K^ambient).
#[derive(Clone)]
pub struct ExtVector<F: Field> {
    field: F,
    ambient: usize,
    grade: usize,
    terms: BTreeMap<ExtMonomial, F::Elem>,
}

impl<F: Field> PartialEq for ExtVector<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.grade == other.grade && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for ExtVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0[grade {}]", self.grade);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c:?}*{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> ExtVector<F> {
    pub fn zero(field: &F, ambient: usize, grade: usize) -> Self {
        Self {
            field: field.clone(),
            ambient,
            grade,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(field: &F, m: ExtMonomial, coeff: F::Elem) -> Self {
        let mut v = Self::zero(field, m.ambient, m.grade());
        if !field.is_zero(&coeff) {
            v.terms.insert(m, coeff);
        }
        v
    }

    /// `e_i` as a 1-vector.
    pub fn basis_vector(field: &F, ambient: usize, i: usize) -> Result<Self> {
        let m = ExtMonomial::new(ambient, &[i])?;
        Ok(Self::from_monomial(field, m, field.one()))
    }

    /// A 1-vector from its coordinates.
    pub fn from_coords(field: &F, coords: &[F::Elem]) -> Result<Self> {
        let ambient = coords.len();
        if ambient > MAX_AMBIENT {
            return Err(Error::AmbientTooLarge(ambient));
        }
        let mut v = Self::zero(field, ambient, 1);
        for (i, c) in coords.iter().enumerate() {
            if !field.is_zero(c) {
                v.terms
                    .insert(ExtMonomial::from_bits(ambient, 1 << i), c.clone());
            }
        }
        Ok(v)
    }

    /// Reads a dense coordinate vector over `basis`.
    pub fn from_dense(field: &F, basis: &GradedBasis, coords: &[F::Elem]) -> Result<Self> {
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coords.len(),
            });
        }
        let mut v = Self::zero(field, basis.ambient, basis.grade);
        for (m, c) in basis.monomials.iter().zip(coords) {
            if !field.is_zero(c) {
                v.terms.insert(*m, c.clone());
            }
        }
        Ok(v)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtMonomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &ExtMonomial) -> F::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn accumulate(&mut self, m: ExtMonomial, c: F::Elem) {
        let f = &self.field;
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = f.add(existing, &c);
                if f.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                if !f.is_zero(&c) {
                    self.terms.insert(m, c);
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.grade != other.grade {
            return Err(Error::DimensionMismatch {
                expected: self.grade,
                got: other.grade,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, self.ambient, self.grade);
        if f.is_zero(c) {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, x)| (*m, f.mul(x, c))).collect();
        out
    }

    /// The bilinear extension of [`wedge_monomials`].
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let grade = self.grade + other.grade;
        let mut out = Self::zero(f, self.ambient, grade);
        if grade > self.ambient {
            return Ok(out);
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, m)) = wedge_monomials(a, b)? {
                    let prod = f.mul(ca, cb);
                    let term = if sign < 0 { f.neg(&prod) } else { prod };
                    out.accumulate(m, term);
                }
            }
        }
        Ok(out)
    }

    /// Coordinates over the lexicographic basis of the same grade.
    pub fn to_dense(&self, basis: &GradedBasis) -> Result<Vec<F::Elem>> {
        if basis.ambient != self.ambient || basis.grade != self.grade {
            return Err(Error::DimensionMismatch {
                expected: basis.grade,
                got: self.grade,
            });
        }
        let mut out = vec![self.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis.index_of(m).expect("monomial of matching grade");
            out[i] = c.clone();
        }
        Ok(out)
    }
}

/// Packs homogeneous vectors as the rows of a matrix over `basis`.
pub fn to_matrix<F: Field>(
    field: &F,
    basis: &GradedBasis,
    vectors: &[ExtVector<F>],
) -> Result<Matrix<F>> {
    let rows = vectors
        .iter()
        .map(|v| v.to_dense(basis))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, basis.len(), rows)
}

/// The coefficient of `e_0∧…∧e_n` in `u ∧ w`.
pub fn pairing<F: Field>(u: &ExtVector<F>, w: &ExtVector<F>) -> Result<F::Elem> {
    u.check_compatible(w)?;
    if u.grade + w.grade != u.ambient {
        return Err(Error::NotComplementary(u.grade, w.grade, u.ambient));
    }
    Ok(u.wedge(w)?.coeff(&ExtMonomial::top(u.ambient)))
}

/// The annihilator `Y^⊥ ⊆ Λ^{n+1-grade}` of the span of `generators` under
/// the pairing, returned as a basis.
pub fn perp<F: Field>(
    field: &F,
    ambient: usize,
    grade: usize,
    generators: &[ExtVector<F>],
) -> Result<Vec<ExtVector<F>>> {
    if grade > ambient {
        return Err(Error::InvalidParams(format!(
            "grade {grade} exceeds ambient {ambient}"
        )));
    }
    for g in generators {
        if g.ambient != ambient {
            return Err(Error::AmbientMismatch(ambient, g.ambient));
        }
        if g.grade != grade {
            return Err(Error::DimensionMismatch {
                expected: grade,
                got: g.grade,
            });
        }
    }
    let dual = GradedBasis::new(ambient, ambient - grade)?;
    let pairing_matrix = pairing_matrix(field, &dual, generators);
    pairing_matrix
        .nullspace_basis()
        .into_iter()
        .map(|v| ExtVector::from_dense(field, &dual, &v))
        .collect()
}

/// Rows are the generators, columns the monomials of `dual`; entry is the
/// pairing of the generator with that monomial.
fn pairing_matrix<F: Field>(
    field: &F,
    dual: &GradedBasis,
    generators: &[ExtVector<F>],
) -> Matrix<F> {
    let rows = generators
        .iter()
        .map(|g| {
            dual.monomials
                .iter()
                .map(|t| {
                    let s = t.complement();
                    let c = g.coeff(&s);
                    if merge_sign_is_negative(s.bits, t.bits) {
                        field.neg(&c)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(field, dual.len(), rows).expect("uniform pairing rows")
}
