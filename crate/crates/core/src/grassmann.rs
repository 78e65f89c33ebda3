//! Points of the Grassmannian G(k, n+1), their Plücker coordinates, tangent
//! spaces, and the graded pieces of their squared ideals.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlinalg::{Field, Matrix};
use crate::exterior::{binomial, monomials_of_grade, ExtMonomial, ExtVector, MAX_AMBIENT};

/// The pair `(n+1, k)` describing G(k, n+1) ⊂ P^N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrassmannParams {
    ambient: usize,
    k: usize,
}

impl GrassmannParams {
    pub fn new(ambient: usize, k: usize) -> Result<Self> {
        if ambient > MAX_AMBIENT {
            return Err(Error::AmbientTooLarge(ambient));
        }
        if k == 0 || k >= ambient {
            return Err(Error::InvalidParams(format!(
                "need 1 <= k <= n, got k = {k} with n+1 = {ambient}"
            )));
        }
        Ok(Self { ambient, k })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `N = C(n+1, k) - 1`, the dimension of the Plücker space.
    pub fn projective_dim(&self) -> u64 {
        binomial(self.ambient, self.k) - 1
    }

    /// `k(n+1-k)`.
    pub fn grass_dim(&self) -> u64 {
        (self.k * (self.ambient - self.k)) as u64
    }

    /// The complementary Grassmannian G(n+1-k, n+1), which has the same
    /// embedding and secant dimensions.
    pub fn dualize(&self) -> Self {
        Self {
            ambient: self.ambient,
            k: self.ambient - self.k,
        }
    }

    /// The representative with `k <= (n+1)/2`.
    pub fn canonical(&self) -> Self {
        if 2 * self.k > self.ambient {
            self.dualize()
        } else {
            *self
        }
    }
}

/// A k-dimensional subspace of K^{n+1}, held by its reduced echelon basis.
///
/// Equality is equality of echelon forms, hence of row spaces.
#[derive(Clone)]
pub struct VSubspace<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for VSubspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl<F: Field> std::fmt::Debug for VSubspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VSubspace")
            .field("ambient", &self.ambient())
            .field("basis", &self.basis.row_vecs())
            .finish()
    }
}

/// The canonical echelon representative of the row space of `m`, which must
/// have full row rank.
pub fn echelon_representative<F: Field>(m: &Matrix<F>) -> Result<VSubspace<F>> {
    VSubspace::from_matrix(m)
}

impl<F: Field> VSubspace<F> {
    pub fn from_matrix(m: &Matrix<F>) -> Result<Self> {
        if m.cols() > MAX_AMBIENT {
            return Err(Error::AmbientTooLarge(m.cols()));
        }
        let (basis, pivots) = m.rref();
        if pivots.len() < m.rows() || m.rows() == 0 {
            return Err(Error::DegeneratePoint);
        }
        Ok(Self { basis, pivots })
    }

    /// The coordinate subspace `⟨e_i : i ∈ indices⟩`.
    pub fn coordinate(field: &F, ambient: usize, indices: &[usize]) -> Result<Self> {
        let mut m = Matrix::zeros(field, indices.len(), ambient);
        for (r, &i) in indices.iter().enumerate() {
            if i >= ambient {
                return Err(Error::InvalidIndices(indices.to_vec(), ambient));
            }
            m.set(r, i, field.one());
        }
        Self::from_matrix(&m)
    }

    /// A uniformly random point, resampled until the rows are independent.
    pub fn random<R: Rng + ?Sized>(
        field: &F,
        ambient: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<Self> {
        GrassmannParams::new(ambient, k)?;
        loop {
            let rows = (0..k)
                .map(|_| (0..ambient).map(|_| field.random(rng)).collect())
                .collect();
            let m = Matrix::from_rows(field, ambient, rows)?;
            if let Ok(p) = Self::from_matrix(&m) {
                return Ok(p);
            }
        }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn k(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Standard basis indices avoiding the pivots; they span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient())
            .filter(|j| !self.pivots.contains(j))
            .collect()
    }

    fn row_vector(&self, i: usize) -> ExtVector<F> {
        ExtVector::from_coords(self.field(), self.basis.row(i))
            .expect("ambient checked at construction")
    }

    fn rows_as_vectors(&self) -> Vec<ExtVector<F>> {
        (0..self.k()).map(|i| self.row_vector(i)).collect()
    }

    /// Plücker coordinates: the coefficient of `e_I` is the maximal minor on
    /// the columns `I`.
    pub fn plucker(&self) -> ExtVector<F> {
        let f = self.field();
        let mut out = ExtVector::zero(f, self.ambient(), self.k());
        for m in monomials_of_grade(self.ambient(), self.k()) {
            let det = self
                .basis
                .select_columns(&m.indices())
                .determinant()
                .expect("square minor");
            out = out
                .add(&ExtVector::from_monomial(f, m, det))
                .expect("same grade");
        }
        out
    }

    /// `v_1∧…∧v_k` computed by wedging the rows; equal to [`Self::plucker`].
    pub fn wedge_of_rows(&self) -> ExtVector<F> {
        wedge_all(self.field(), self.ambient(), &self.rows_as_vectors())
    }

    /// Affine cone over the tangent space at the Plücker point: the point
    /// itself and every `v_1∧…∧e_j∧…∧v_k` with `e_j` substituted into one slot,
    /// `j` ranging over [`Self::complement_indices`].
    pub fn tangent_cone_basis(&self) -> Vec<ExtVector<F>> {
        self.tangent_cone_basis_with(&self.complement_indices())
            .expect("pivot complement is a valid complement")
    }

    /// Same as [`Self::tangent_cone_basis`] with an explicit complement,
    /// given as standard basis indices.
    pub fn tangent_cone_basis_with(&self, complement: &[usize]) -> Result<Vec<ExtVector<F>>> {
        let f = self.field();
        let ambient = self.ambient();
        let rows = self.rows_as_vectors();
        let mut out = Vec::with_capacity(self.k() * complement.len() + 1);
        out.push(wedge_all(f, ambient, &rows));
        for slot in 0..rows.len() {
            for &j in complement {
                let mut factors = rows.clone();
                factors[slot] = ExtVector::basis_vector(f, ambient, j)?;
                out.push(wedge_all(f, ambient, &factors));
            }
        }
        Ok(out)
    }

    /// Spanning set of the degree-`d` part of the square of the ideal
    /// generated by the subspace: all `v_a∧v_b∧m`, `a < b`, `m` a monomial of
    /// degree `d-2`. Size `C(k,2)·C(n+1,d-2)`; not reduced.
    pub fn ideal_square_piece(&self, d: usize) -> Result<Vec<ExtVector<F>>> {
        if d < 2 {
            return Err(Error::DegreeTooSmall(d));
        }
        let f = self.field();
        let rows = self.rows_as_vectors();
        let tails = monomials_of_grade(self.ambient(), d - 2);
        let mut out = Vec::new();
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                let pair = rows[a].wedge(&rows[b])?;
                for m in &tails {
                    out.push(pair.wedge(&ExtVector::from_monomial(f, *m, f.one()))?);
                }
            }
        }
        Ok(out)
    }

    /// A basis of the same space as [`Self::ideal_square_piece`].
    ///
    /// In the basis `v_1,…,v_k, e_j (j ∉ pivots)` of V, the degree-`d` part of
    /// the squared ideal is spanned by the basis monomials containing at least
    /// two of the `v`'s; those are independent.
    pub fn ideal_square_basis(&self, d: usize) -> Result<Vec<ExtVector<F>>> {
        if d < 2 {
            return Err(Error::DegreeTooSmall(d));
        }
        let f = self.field();
        let ambient = self.ambient();
        let k = self.k();
        let rows = self.rows_as_vectors();
        let complement = self.complement_indices();
        let mut out = Vec::new();
        for size in 2..=k.min(d) {
            let tail = d - size;
            if tail > complement.len() {
                continue;
            }
            for sel in monomials_of_grade(k, size) {
                let head: Vec<ExtVector<F>> =
                    sel.indices().into_iter().map(|i| rows[i].clone()).collect();
                let head = wedge_all(f, ambient, &head);
                for t in monomials_of_grade(complement.len(), tail) {
                    let idx: Vec<usize> = t.indices().into_iter().map(|i| complement[i]).collect();
                    let m = ExtMonomial::new(ambient, &idx)?;
                    out.push(head.wedge(&ExtVector::from_monomial(f, m, f.one()))?);
                }
            }
        }
        Ok(out)
    }
}

/// `w_1∧…∧w_r`, the unit 0-vector for an empty list.
pub fn wedge_all<F: Field>(field: &F, ambient: usize, factors: &[ExtVector<F>]) -> ExtVector<F> {
    let unit = ExtVector::from_monomial(field, ExtMonomial::unit(ambient), field.one());
    factors
        .iter()
        .fold(unit, |acc, v| acc.wedge(v).expect("shared ambient"))
}

/// Dimension of the squared-ideal piece in degree `d` for a k-subspace:
/// `C(n+1,d) - C(n+1-k,d) - k·C(n+1-k,d-1)`.
pub fn ideal_square_piece_dim(ambient: usize, k: usize, d: usize) -> u64 {
    let c = ambient - k;
    let outside = binomial(c, d)
        + if d >= 1 {
            k as u64 * binomial(c, d - 1)
        } else {
            0
        };
    binomial(ambient, d) - outside
}
