use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{self, Echelon, Matrix};
use crate::scalar::{self, Scalar};

/// A linear subspace of `Q^n`, stored as the reduced row-echelon basis of
/// its row space. The representation is canonical, so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Subspace {
        let (basis, pivots) = m.rref_with_pivots();
        Subspace {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn span<R: AsRef<[Scalar]>>(ambient_dim: usize, vectors: &[R]) -> Subspace {
        Subspace::row_space(&Matrix::from_rows(ambient_dim, vectors))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Subspace {
        let vectors: Vec<Vec<Scalar>> = indices
            .into_iter()
            .map(|i| unit(ambient_dim, i))
            .collect();
        Subspace::span(ambient_dim, &vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` over the canonical basis.
    pub fn coords(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let rows = self.vectors();
        if matrix::combine(self.ambient_dim, &c, &rows) != v {
            return Err(Error::NotContained("vector is not in the subspace".into()));
        }
        Ok(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_ok()
    }

    /// `sum_i c_i b_i` over the canonical basis.
    pub fn vector_from_coords(&self, c: &[Scalar]) -> Vec<Scalar> {
        matrix::combine(self.ambient_dim, c, &self.vectors())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.row_iter().all(|r| other.contains(r))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of ambient dimension {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    pub fn sum_all<'a>(ambient_dim: usize, parts: impl IntoIterator<Item = &'a Subspace>) -> Result<Subspace> {
        parts
            .into_iter()
            .try_fold(Subspace::zero(ambient_dim), |acc, p| acc.sum(p))
    }

    /// `{v : <v, a> = 0 for all a}` with respect to the standard dot product.
    pub fn dot_annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = self
            .dot_annihilator()
            .basis
            .vstack(&other.dot_annihilator().basis);
        Ok(stacked.kernel())
    }

    /// A complement of `self` inside `outer`: the canonical basis vectors of
    /// `outer`, in pivot order, that each raise the rank of `self` plus what
    /// has been accepted so far.
    pub fn complement_in(&self, outer: &Subspace) -> Result<Subspace> {
        self.check_ambient(outer)?;
        if !self.is_subspace_of(outer) {
            return Err(Error::NotContained("complement_in requires inner ⊆ outer".into()));
        }
        let mut echelon = Echelon::new(self.ambient_dim);
        for r in self.basis.row_iter() {
            echelon.insert(r);
        }
        let picked: Vec<&[Scalar]> = outer
            .basis
            .row_iter()
            .filter(|r| echelon.insert(r))
            .collect();
        Ok(Subspace::span(self.ambient_dim, &picked))
    }

    /// Keeps coordinates `start..end` of every vector.
    pub fn project(&self, start: usize, end: usize) -> Subspace {
        Subspace::row_space(&self.basis.column_range(start, end))
    }

    /// Image under `v ↦ m v`.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim, "linear map dimension mismatch");
        let rows: Vec<Vec<Scalar>> = self.basis.row_iter().map(|r| m.apply(r)).collect();
        Subspace::span(m.rows(), &rows)
    }

    /// `self × other` inside the concatenated space.
    pub fn product(&self, other: &Subspace) -> Subspace {
        let left = self.basis.hstack(&Matrix::zeros(self.dim(), other.ambient_dim));
        let right = Matrix::zeros(other.dim(), self.ambient_dim).hstack(&other.basis);
        Subspace::row_space(&left.vstack(&right))
    }
}

/// True when the parts are independent and add up to `whole`.
pub fn is_direct_sum(parts: &[&Subspace], whole: &Subspace) -> bool {
    let n = whole.ambient_dim();
    if parts.iter().any(|p| p.ambient_dim() != n) {
        return false;
    }
    let total: usize = parts.iter().map(|p| p.dim()).sum();
    if total != whole.dim() {
        return false;
    }
    let mut echelon = Echelon::new(n);
    parts
        .iter()
        .flat_map(|p| p.basis().to_rows())
        .all(|v| whole.contains(&v) && echelon.insert(&v))
}

/// True when the given vectors are linearly independent.
pub fn independent<R: AsRef<[Scalar]>>(len: usize, vectors: &[R]) -> bool {
    let mut echelon = Echelon::new(len);
    vectors.iter().all(|v| echelon.insert(v.as_ref()))
}

pub fn unit(len: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![scalar::zero(); len];
    v[i] = crate::scalar::one();
    v
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of {}, {:?})", self.dim(), self.ambient_dim, self.basis)
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Matrix,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient_dim: self.ambient_dim,
            basis: self.basis.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SubspaceRepr::deserialize(deserializer)?;
        if repr.basis.rows() == 0 {
            return Ok(Subspace::zero(repr.ambient_dim));
        }
        if repr.basis.cols() != repr.ambient_dim {
            return Err(serde::de::Error::custom(format!(
                "basis vectors have length {}, expected {}",
                repr.basis.cols(),
                repr.ambient_dim
            )));
        }
        Ok(Subspace::row_space(&repr.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::vector;

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        let vs: Vec<Vec<Scalar>> = vs.iter().map(|v| vector(v)).collect();
        Subspace::span(n, &vs)
    }

    #[test]
    fn sum_and_intersect_examples() {
        let e1 = span(2, &[&[1, 0]]);
        let e2 = span(2, &[&[0, 1]]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2));
        assert_eq!(e1.intersect(&e2).unwrap(), Subspace::zero(2));
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        let diag = span(2, &[&[1, 1]]);
        assert_eq!(diag.intersect(&Subspace::full(2)).unwrap(), diag);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.intersect(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Subspace::zero(3).complement_in(&Subspace::full(3)).unwrap(), Subspace::full(3));
        let a = span(3, &[&[1, 2, 3]]);
        assert_eq!(a.complement_in(&a).unwrap(), Subspace::zero(3));
        // Basis of Q^2 is e1, e2; e1 raises the rank of span{e1+e2}, e2 then does not.
        let diag = span(2, &[&[1, 1]]);
        assert_eq!(diag.complement_in(&Subspace::full(2)).unwrap(), span(2, &[&[1, 0]]));
        assert!(matches!(
            Subspace::full(2).complement_in(&diag),
            Err(Error::NotContained(_))
        ));
    }

    #[test]
    fn coords_and_contains() {
        let diag = span(2, &[&[1, 1]]);
        assert_eq!(diag.coords(&vector(&[3, 3])).unwrap(), vector(&[3]));
        assert!(diag.coords(&vector(&[3, 2])).is_err());
        assert!(!span(2, &[&[1, 0]]).contains(&vector(&[0, 1])));
    }

    #[test]
    fn zero_dimensional_ambient() {
        let z = Subspace::zero(0);
        assert_eq!(z, Subspace::full(0));
        assert_eq!(z.sum(&z).unwrap(), z);
        assert_eq!(z.intersect(&z).unwrap(), z);
        assert_eq!(z.complement_in(&z).unwrap(), z);
        assert_eq!(z.coords(&[]).unwrap(), Vec::<Scalar>::new());
    }

    #[test]
    fn direct_sum_check() {
        let e1 = span(2, &[&[1, 0]]);
        let d = span(2, &[&[1, 1]]);
        assert!(is_direct_sum(&[&e1, &d], &Subspace::full(2)));
        assert!(!is_direct_sum(&[&e1, &e1], &Subspace::full(2)));
        assert!(!is_direct_sum(&[&e1], &Subspace::full(2)));
    }

    #[test]
    fn product_and_project() {
        let a = span(2, &[&[1, 1]]);
        let b = Subspace::full(1);
        let p = a.product(&b);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.project(0, 2), a);
        assert_eq!(p.project(2, 3), b);
    }

    #[test]
    fn serde_canonicalizes() {
        let s: Subspace = serde_json::from_str(r#"{"ambient_dim": 2, "basis": [["2", "4"]]}"#).unwrap();
        assert_eq!(s, span(2, &[&[1, 2]]));
        let empty: Subspace = serde_json::from_str(r#"{"ambient_dim": 3, "basis": []}"#).unwrap();
        assert_eq!(empty, Subspace::zero(3));
    }
}
