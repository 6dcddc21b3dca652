//! Vector spaces carrying a skew-symmetric form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::scalar::{self, Scalar, ScalarExt};
use crate::subspace::{self, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// The form is a (possibly degenerate) skew form on the space itself.
    Presymplectic,
    /// The form is a constant bivector, i.e. a skew form on the dual space.
    Poisson,
}

impl Flavor {
    pub fn dual(self) -> Flavor {
        match self {
            Flavor::Presymplectic => Flavor::Poisson,
            Flavor::Poisson => Flavor::Presymplectic,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Presymplectic => "presymplectic",
            Flavor::Poisson => "poisson",
        }
    }
}

/// `Q^dim` with a skew-symmetric form matrix `form[(i, j)] = ω(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearSpace {
    form: Matrix,
    flavor: Flavor,
}

/// The symplectic plane `[[0, 1], [-1, 0]]`, basis order `(q, p)`.
pub fn standard_j() -> Matrix {
    Matrix::from_i64(&[&[0, 1], &[-1, 0]])
}

impl BilinearSpace {
    pub fn new(form: Matrix, flavor: Flavor) -> Result<BilinearSpace> {
        if !form.is_skew_symmetric() {
            return Err(Error::NotSkew);
        }
        Ok(BilinearSpace { form, flavor })
    }

    pub fn zero_form(dim: usize, flavor: Flavor) -> BilinearSpace {
        BilinearSpace {
            form: Matrix::zeros(dim, dim),
            flavor,
        }
    }

    /// `pairs` standard symplectic planes followed by `radical` zero-form lines.
    pub fn standard(pairs: usize, radical: usize, flavor: Flavor) -> BilinearSpace {
        let mut form = Matrix::zeros(0, 0);
        for _ in 0..pairs {
            form = form.block_diag(&standard_j());
        }
        form = form.block_diag(&Matrix::zeros(radical, radical));
        BilinearSpace { form, flavor }
    }

    /// The trivial space `0`.
    pub fn trivial(flavor: Flavor) -> BilinearSpace {
        BilinearSpace::zero_form(0, flavor)
    }

    pub fn dim(&self) -> usize {
        self.form.rows()
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(&self, flavor: Flavor) -> BilinearSpace {
        BilinearSpace {
            form: self.form.clone(),
            flavor,
        }
    }

    pub fn pair(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.form.bilinear(u, v)
    }

    /// Gram matrix `[ω(u_i, v_j)]`.
    pub fn gram<R: AsRef<[Scalar]>, S: AsRef<[Scalar]>>(&self, us: &[R], vs: &[S]) -> Matrix {
        let mut g = Matrix::zeros(us.len(), vs.len());
        let t = self.form.transpose();
        for (i, u) in us.iter().enumerate() {
            let wu = t.apply(u.as_ref());
            for (j, v) in vs.iter().enumerate() {
                g[(i, j)] = matrix::dot(&wu, v.as_ref());
            }
        }
        g
    }

    /// Restriction of the form to `a`, in the coordinates of `a`'s canonical basis.
    pub fn restrict(&self, a: &Subspace) -> Result<BilinearSpace> {
        self.check(a)?;
        let b = a.basis();
        Ok(BilinearSpace {
            form: &(b * &self.form) * &b.transpose(),
            flavor: self.flavor,
        })
    }

    fn check(&self, a: &Subspace) -> Result<()> {
        if a.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of ambient dimension {} in a space of dimension {}",
                a.ambient_dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    fn check_presymplectic(&self) -> Result<()> {
        if self.flavor != Flavor::Presymplectic {
            return Err(Error::FlavorMismatch(
                "orthogonals are only taken in presymplectic spaces".into(),
            ));
        }
        Ok(())
    }

    /// `a^⊥ = {x : ω(x, a) = 0 for all a}`.
    pub fn orthogonal(&self, a: &Subspace) -> Result<Subspace> {
        self.check_presymplectic()?;
        self.check(a)?;
        Ok((a.basis() * &self.form.transpose()).kernel())
    }

    /// The radical `R = X^⊥`, i.e. the kernel of the form.
    pub fn radical(&self) -> Subspace {
        self.form.kernel()
    }

    pub fn is_symplectic(&self) -> bool {
        self.radical().is_zero()
    }

    pub fn is_isotropic_subspace(&self, a: &Subspace) -> Result<bool> {
        self.check(a)?;
        let vs = a.vectors();
        Ok(self.gram(&vs, &vs).is_zero())
    }

    /// Whether the restricted form on `a` is nondegenerate. True for `a = 0`.
    pub fn is_symplectic_subspace(&self, a: &Subspace) -> Result<bool> {
        self.check(a)?;
        let vs = a.vectors();
        Ok(self.gram(&vs, &vs).rank() == a.dim())
    }

    /// Symplectic Gram–Schmidt on `a`'s canonical basis: each unpaired `q` takes
    /// the earliest remaining vector it pairs with, rescaled to `ω(q, p) = 1`,
    /// and the rest are ω-orthogonalized against the pair.
    pub fn symplectic_basis(&self, a: &Subspace) -> Result<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
        if !self.is_symplectic_subspace(a)? {
            return Err(Error::NotSymplectic);
        }
        let mut rest = a.vectors();
        let mut pairs = Vec::with_capacity(rest.len() / 2);
        while !rest.is_empty() {
            let q = rest.remove(0);
            let j = rest
                .iter()
                .position(|v| !self.pair(&q, v).is_zero())
                .ok_or_else(|| Error::Internal("symplectic subspace with unpaired vector".into()))?;
            let v = rest.remove(j);
            let scale = self.pair(&q, &v).recip();
            let p: Vec<Scalar> = v.iter().map(|x| x * &scale).collect();
            for w in rest.iter_mut() {
                let wp = self.pair(w, &p);
                let wq = self.pair(w, &q);
                for ((x, qi), pi) in w.iter_mut().zip(&q).zip(&p) {
                    *x += &wq * pi - &wp * qi;
                }
            }
            pairs.push((q, p));
        }
        Ok(pairs)
    }

    /// Vectors `b_j` in `within ∩ avoid^⊥` with `ω(a_i, b_j) = δ_ij` that span an
    /// isotropic subspace. `a` must be an independent isotropic family.
    pub fn isotropic_dual_basis<R: AsRef<[Scalar]>>(
        &self,
        a: &[R],
        within: &Subspace,
        avoid: &Subspace,
    ) -> Result<Vec<Vec<Scalar>>> {
        self.check(within)?;
        self.check(avoid)?;
        let n = self.dim();
        let a_space = Subspace::span(n, a);
        if a_space.dim() != a.len() {
            return Err(Error::Precondition("dual basis requested for dependent vectors".into()));
        }
        if !self.is_isotropic_subspace(&a_space)? {
            return Err(Error::Precondition("subspace to be dualized is not isotropic".into()));
        }
        if !a_space.is_subspace_of(within) || !avoid.is_subspace_of(within) {
            return Err(Error::Precondition("subspaces must lie in `within`".into()));
        }
        if !self.is_symplectic_subspace(within)? || !self.is_symplectic_subspace(avoid)? {
            return Err(Error::Precondition("`within` and `avoid` must be symplectic".into()));
        }
        let allowed = self.orthogonal(avoid)?.intersect(within)?;
        if !a_space.is_subspace_of(&allowed) {
            return Err(Error::Precondition("subspace to be dualized is not orthogonal to `avoid`".into()));
        }

        let w = allowed.vectors();
        let g = self.gram(a, &w);
        let mut duals = Vec::with_capacity(a.len());
        for j in 0..a.len() {
            let c = g
                .solve(&subspace::unit(a.len(), j))
                .ok_or_else(|| Error::Internal("no dual vector in a symplectic subspace".into()))?;
            duals.push(matrix::combine(n, &c, &w));
        }
        // b_j ↦ b_j - ½ Σ_k ω(b_j, b_k) a_k keeps the pairing with `a` and kills ω on the b's.
        let corrections = self.gram(&duals, &duals).scale(&scalar::half());
        let mut out = Vec::with_capacity(duals.len());
        for (j, b) in duals.iter().enumerate() {
            let coeffs: Vec<Scalar> = corrections.row(j).iter().map(|x| -x).collect();
            let shift = matrix::combine(n, &coeffs, a);
            out.push(b.iter().zip(&shift).map(|(x, y)| x + y).collect());
        }
        Ok(out)
    }

    /// Subspace form of [`BilinearSpace::isotropic_dual_basis`] over `a`'s canonical basis.
    pub fn isotropic_dual_complement(
        &self,
        a: &Subspace,
        within: &Subspace,
        avoid: &Subspace,
    ) -> Result<Subspace> {
        let duals = self.isotropic_dual_basis(&a.vectors(), within, avoid)?;
        Ok(Subspace::span(self.dim(), &duals))
    }

    /// A symplectic complement of the radical that contains `inner`, which must
    /// meet the radical trivially: `inner ⊕ (canonical complement of inner + R)`.
    pub fn radical_complement_containing(&self, inner: &Subspace) -> Result<Subspace> {
        let r = self.radical();
        let with_r = inner.sum(&r)?;
        if with_r.dim() != inner.dim() + r.dim() {
            return Err(Error::Precondition("subspace meets the radical".into()));
        }
        inner.sum(&with_r.complement_in(&Subspace::full(self.dim()))?)
    }

    /// `X̄`: the same space with the form negated.
    pub fn negate_form(&self) -> BilinearSpace {
        BilinearSpace {
            form: -&self.form,
            flavor: self.flavor,
        }
    }

    /// Orthogonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &BilinearSpace) -> Result<BilinearSpace> {
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch("direct sum of spaces of different flavors".into()));
        }
        Ok(BilinearSpace {
            form: self.form.block_diag(&other.form),
            flavor: self.flavor,
        })
    }
}

/// `X × Ȳ`: target block first, source block second, with the source form negated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpace {
    pub target: BilinearSpace,
    pub source: BilinearSpace,
    pub total: BilinearSpace,
}

pub fn product(target: &BilinearSpace, source: &BilinearSpace) -> Result<ProductSpace> {
    let total = target.direct_sum(&source.negate_form())?;
    Ok(ProductSpace {
        target: target.clone(),
        source: source.clone(),
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, vector};

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        let vs: Vec<Vec<Scalar>> = vs.iter().map(|v| vector(v)).collect();
        Subspace::span(n, &vs)
    }

    fn std2() -> BilinearSpace {
        BilinearSpace::standard(1, 0, Flavor::Presymplectic)
    }

    #[test]
    fn orthogonal_examples() {
        let s = std2();
        let line = span(2, &[&[1, 0]]);
        assert_eq!(s.orthogonal(&line).unwrap(), line);
        let z = BilinearSpace::zero_form(3, Flavor::Presymplectic);
        assert_eq!(z.orthogonal(&span(3, &[&[1, 2, 3]])).unwrap(), Subspace::full(3));
        let partial = BilinearSpace::standard(1, 1, Flavor::Presymplectic);
        assert_eq!(partial.orthogonal(&Subspace::full(3)).unwrap(), partial.radical());
    }

    #[test]
    fn orthogonal_refuses_poisson() {
        let s = BilinearSpace::standard(1, 0, Flavor::Poisson);
        assert!(matches!(s.orthogonal(&Subspace::full(2)), Err(Error::FlavorMismatch(_))));
    }

    #[test]
    fn radical_examples() {
        assert!(std2().radical().is_zero());
        let z = BilinearSpace::zero_form(3, Flavor::Presymplectic);
        assert_eq!(z.radical(), Subspace::full(3));
        let partial = BilinearSpace::standard(1, 1, Flavor::Presymplectic);
        assert_eq!(partial.radical(), span(3, &[&[0, 0, 1]]));
    }

    #[test]
    fn isotropic_and_symplectic_predicates() {
        let s = std2();
        let line = span(2, &[&[1, 0]]);
        assert!(s.is_isotropic_subspace(&line).unwrap());
        assert!(!s.is_symplectic_subspace(&line).unwrap());
        assert!(!s.is_isotropic_subspace(&Subspace::full(2)).unwrap());
        assert!(s.is_symplectic_subspace(&Subspace::full(2)).unwrap());
        assert!(s.is_isotropic_subspace(&Subspace::zero(2)).unwrap());
        assert!(s.is_symplectic_subspace(&Subspace::zero(2)).unwrap());
    }

    #[test]
    fn symplectic_basis_examples() {
        let pairs = std2().symplectic_basis(&Subspace::full(2)).unwrap();
        assert_eq!(pairs, vec![(vector(&[1, 0]), vector(&[0, 1]))]);
        assert!(std2().symplectic_basis(&Subspace::zero(2)).unwrap().is_empty());
        assert!(matches!(
            std2().symplectic_basis(&span(2, &[&[1, 0]])),
            Err(Error::NotSymplectic)
        ));
    }

    #[test]
    fn symplectic_basis_of_q4_has_block_pairing() {
        let s = BilinearSpace::standard(2, 0, Flavor::Presymplectic);
        let pairs = s.symplectic_basis(&Subspace::full(4)).unwrap();
        let ordered: Vec<Vec<Scalar>> = pairs.iter().flat_map(|(q, p)| [q.clone(), p.clone()]).collect();
        assert_eq!(Subspace::span(4, &ordered), Subspace::full(4));
        let expected = standard_j().block_diag(&standard_j());
        assert_eq!(s.gram(&ordered, &ordered), expected);
    }

    #[test]
    fn symplectic_basis_of_skewed_form() {
        // ω(e1, e3) = 2, ω(e2, e3) = 1, ω(e1, e2) = 0 plus a radical-free completion.
        let form = Matrix::from_i64(&[&[0, 0, 2, 0], &[0, 0, 1, 1], &[-2, -1, 0, 0], &[0, -1, 0, 0]]);
        let s = BilinearSpace::new(form, Flavor::Presymplectic).unwrap();
        let pairs = s.symplectic_basis(&Subspace::full(4)).unwrap();
        let ordered: Vec<Vec<Scalar>> = pairs.iter().flat_map(|(q, p)| [q.clone(), p.clone()]).collect();
        assert_eq!(s.gram(&ordered, &ordered), standard_j().block_diag(&standard_j()));
    }

    #[test]
    fn dual_complement_examples() {
        let s = std2();
        let full = Subspace::full(2);
        let zero = Subspace::zero(2);
        let a = span(2, &[&[1, 0]]);
        assert_eq!(s.isotropic_dual_complement(&a, &full, &zero).unwrap(), span(2, &[&[0, 1]]));
        assert_eq!(s.isotropic_dual_complement(&zero, &full, &zero).unwrap(), zero);
    }

    #[test]
    fn dual_complement_in_q4_pairs_to_identity() {
        let s = BilinearSpace::standard(2, 0, Flavor::Presymplectic);
        let a = vec![vector(&[1, 0, 0, 0]), vector(&[0, 0, 1, 0])];
        let duals = s
            .isotropic_dual_basis(&a, &Subspace::full(4), &Subspace::zero(4))
            .unwrap();
        assert_eq!(s.gram(&a, &duals), Matrix::identity(2));
        assert!(s.gram(&duals, &duals).is_zero());
        let all: Vec<Vec<Scalar>> = a.iter().chain(&duals).cloned().collect();
        assert!(subspace::independent(4, &all));
    }

    #[test]
    fn dual_complement_corrects_isotropy() {
        // Dual vectors found by solving are not isotropic here before correction.
        let s = BilinearSpace::standard(2, 0, Flavor::Presymplectic);
        let a = vec![vector(&[1, 0, 1, 0]), vector(&[0, 1, 0, -1])];
        let duals = s
            .isotropic_dual_basis(&a, &Subspace::full(4), &Subspace::zero(4))
            .unwrap();
        assert_eq!(s.gram(&a, &duals), Matrix::identity(2));
        assert!(s.gram(&duals, &duals).is_zero());
    }

    #[test]
    fn dual_complement_avoids() {
        let s = BilinearSpace::standard(2, 0, Flavor::Presymplectic);
        let avoid = span(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let a = span(4, &[&[1, 0, 0, 0]]);
        let dual = s.isotropic_dual_complement(&a, &Subspace::full(4), &avoid).unwrap();
        assert_eq!(dual, span(4, &[&[0, 1, 0, 0]]));
        let bad_a = span(4, &[&[1, 0, 1, 0]]);
        assert!(matches!(
            s.isotropic_dual_complement(&bad_a, &Subspace::full(4), &avoid),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn negate_and_product() {
        let z = BilinearSpace::zero_form(2, Flavor::Presymplectic);
        assert_eq!(z.negate_form(), z);
        assert_eq!(std2().negate_form().negate_form(), std2());
        let p = product(&std2(), &std2()).unwrap();
        assert_eq!(p.total.form(), &standard_j().block_diag(&(-&standard_j())));
        let poisson = BilinearSpace::standard(1, 0, Flavor::Poisson);
        assert!(product(&std2(), &poisson).is_err());
        assert_eq!(p.total.pair(&vector(&[1, 0, 0, 0]), &vector(&[0, 1, 0, 0])), int(1));
    }

    #[test]
    fn new_rejects_non_skew() {
        let m = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert!(matches!(BilinearSpace::new(m, Flavor::Presymplectic), Err(Error::NotSkew)));
    }
}
