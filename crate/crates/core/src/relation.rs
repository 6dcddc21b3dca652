//! Linear relations `X ← Y`, stored as subspaces of `X × Y` with the target
//! coordinates first.

use crate::duality;
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::scalar::Scalar;
use crate::space::{self, BilinearSpace, Flavor, ProductSpace};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearRelation {
    target: BilinearSpace,
    source: BilinearSpace,
    graph: Subspace,
}

impl LinearRelation {
    pub fn new(target: BilinearSpace, source: BilinearSpace, graph: Subspace) -> Result<LinearRelation> {
        if target.flavor() != source.flavor() {
            return Err(Error::FlavorMismatch("target and source flavors differ".into()));
        }
        if graph.ambient_dim() != target.dim() + source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "graph lives in dimension {} but target × source has dimension {}",
                graph.ambient_dim(),
                target.dim() + source.dim()
            )));
        }
        Ok(LinearRelation { target, source, graph })
    }

    /// Relation spanned by `(x, y)` vectors written as concatenated rows.
    pub fn from_vectors<R: AsRef<[Scalar]>>(
        target: BilinearSpace,
        source: BilinearSpace,
        vectors: &[R],
    ) -> Result<LinearRelation> {
        let n = target.dim() + source.dim();
        if let Some(v) = vectors.iter().find(|v| v.as_ref().len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "graph vector of length {}, expected {n}",
                v.as_ref().len()
            )));
        }
        LinearRelation::new(target, source, Subspace::span(n, vectors))
    }

    pub fn zero(target: BilinearSpace, source: BilinearSpace) -> Result<LinearRelation> {
        let n = target.dim() + source.dim();
        LinearRelation::new(target, source, Subspace::zero(n))
    }

    pub fn full(target: BilinearSpace, source: BilinearSpace) -> Result<LinearRelation> {
        let n = target.dim() + source.dim();
        LinearRelation::new(target, source, Subspace::full(n))
    }

    /// The diagonal `{(x, x)}` on a space.
    pub fn identity(space: &BilinearSpace) -> LinearRelation {
        let n = space.dim();
        let vectors: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut v = crate::subspace::unit(2 * n, i);
                v[n + i] = crate::scalar::one();
                v
            })
            .collect();
        LinearRelation {
            target: space.clone(),
            source: space.clone(),
            graph: Subspace::span(2 * n, &vectors),
        }
    }

    pub fn target(&self) -> &BilinearSpace {
        &self.target
    }

    pub fn source(&self) -> &BilinearSpace {
        &self.source
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn flavor(&self) -> Flavor {
        self.target.flavor()
    }

    pub fn target_dim(&self) -> usize {
        self.target.dim()
    }

    pub fn source_dim(&self) -> usize {
        self.source.dim()
    }

    fn total_dim(&self) -> usize {
        self.target_dim() + self.source_dim()
    }

    pub fn product_space(&self) -> Result<ProductSpace> {
        space::product(&self.target, &self.source)
    }

    /// `T × S` as a subspace of the product.
    pub fn box_subspace(&self, t: &Subspace, s: &Subspace) -> Result<Subspace> {
        if t.ambient_dim() != self.target_dim() || s.ambient_dim() != self.source_dim() {
            return Err(Error::DimensionMismatch("box factors do not match the relation's spaces".into()));
        }
        Ok(t.product(s))
    }

    fn target_part(&self, s: &Subspace) -> Subspace {
        s.project(0, self.target_dim())
    }

    fn source_part(&self, s: &Subspace) -> Subspace {
        s.project(self.target_dim(), self.total_dim())
    }

    /// `0f = {y : (0, y) ∈ f}`.
    pub fn kernel_0f(&self) -> Subspace {
        let slab = Subspace::zero(self.target_dim()).product(&Subspace::full(self.source_dim()));
        self.source_part(&self.graph.intersect(&slab).expect("same ambient"))
    }

    /// `f0 = {x : (x, 0) ∈ f}`.
    pub fn indeterminacy_f0(&self) -> Subspace {
        let slab = Subspace::full(self.target_dim()).product(&Subspace::zero(self.source_dim()));
        self.target_part(&self.graph.intersect(&slab).expect("same ambient"))
    }

    /// Domain `Xf`: projection of the graph to the source.
    pub fn domain_xf(&self) -> Subspace {
        self.source_part(&self.graph)
    }

    /// Image `fY`: projection of the graph to the target.
    pub fn image_fy(&self) -> Subspace {
        self.target_part(&self.graph)
    }

    /// `f(S) = {x : (x, y) ∈ f for some y ∈ S}`.
    pub fn image_of(&self, s: &Subspace) -> Result<Subspace> {
        let slab = self.box_subspace(&Subspace::full(self.target_dim()), s)?;
        Ok(self.target_part(&self.graph.intersect(&slab)?))
    }

    /// `f⁻¹(T) = {y : (x, y) ∈ f for some x ∈ T}`.
    pub fn preimage_of(&self, t: &Subspace) -> Result<Subspace> {
        let slab = self.box_subspace(t, &Subspace::full(self.source_dim()))?;
        Ok(self.source_part(&self.graph.intersect(&slab)?))
    }

    /// Some `x` with `(x, y) ∈ f`; unique when `f0 = 0`.
    pub fn forward(&self, y: &[Scalar]) -> Option<Vec<Scalar>> {
        let (m, n) = (self.target_dim(), self.total_dim());
        let rows = self.graph.vectors();
        let sources = self.graph.basis().column_range(m, n).transpose();
        let c = sources.solve(y)?;
        Some(matrix::combine(n, &c, &rows)[..m].to_vec())
    }

    /// Some `y` with `(x, y) ∈ f`; unique when `0f = 0`.
    pub fn backward(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let (m, n) = (self.target_dim(), self.total_dim());
        let rows = self.graph.vectors();
        let targets = self.graph.basis().column_range(0, m).transpose();
        let c = targets.solve(x)?;
        Some(matrix::combine(n, &c, &rows)[m..].to_vec())
    }

    /// Isotropy of the graph in `X × Ȳ`.
    pub fn is_isotropic(&self) -> Result<bool> {
        if self.flavor() != Flavor::Presymplectic {
            return Err(Error::FlavorMismatch("isotropy is defined for presymplectic relations".into()));
        }
        self.product_space()?.total.is_isotropic_subspace(&self.graph)
    }

    /// Coisotropy, tested as isotropy of the annihilator in the dual product.
    pub fn is_coisotropic(&self) -> Result<bool> {
        if self.flavor() != Flavor::Poisson {
            return Err(Error::FlavorMismatch("coisotropy is defined for poisson relations".into()));
        }
        duality::annihilator(self).is_isotropic()
    }

    /// Isotropic for presymplectic relations, coisotropic for poisson ones.
    pub fn is_structured(&self) -> Result<bool> {
        match self.flavor() {
            Flavor::Presymplectic => self.is_isotropic(),
            Flavor::Poisson => self.is_coisotropic(),
        }
    }

    /// `Y ← X` with graph `{(y, x) : (x, y) ∈ f}`.
    pub fn transpose(&self) -> LinearRelation {
        let (m, n) = (self.target_dim(), self.total_dim());
        let b = self.graph.basis();
        let swapped = b.column_range(m, n).hstack(&b.column_range(0, m));
        LinearRelation {
            target: self.source.clone(),
            source: self.target.clone(),
            graph: Subspace::row_space(&swapped),
        }
    }

    /// `f ∘ g = {(x, z) : (x, y) ∈ f, (y, z) ∈ g for some y}`.
    pub fn compose(&self, g: &LinearRelation) -> Result<LinearRelation> {
        if self.source != g.target {
            return Err(Error::DimensionMismatch("source of f differs from target of g".into()));
        }
        let (mx, my, mz) = (self.target_dim(), self.source_dim(), g.source_dim());
        let fy = self.graph.basis().column_range(mx, mx + my);
        let gy = g.graph.basis().column_range(0, my);
        // Columns: y-parts of f's basis, then negated y-parts of g's basis.
        let system = fy.transpose().hstack(&(-&gy).transpose());
        let kf = self.graph.dim();
        let fx = self.graph.basis().column_range(0, mx).to_rows();
        let gz = g.graph.basis().column_range(my, my + mz).to_rows();
        let vectors: Vec<Vec<Scalar>> = system
            .kernel()
            .basis()
            .row_iter()
            .map(|c| {
                let mut v = matrix::combine(mx, &c[..kf], &fx);
                v.extend(matrix::combine(mz, &c[kf..], &gz));
                v
            })
            .collect();
        LinearRelation::from_vectors(self.target.clone(), g.source.clone(), &vectors)
    }

    /// `f ⊕ g ⊆ (X₁ ⊕ X₂) × (Y₁ ⊕ Y₂)`.
    pub fn direct_sum(&self, g: &LinearRelation) -> Result<LinearRelation> {
        let target = self.target.direct_sum(&g.target)?;
        let source = self.source.direct_sum(&g.source)?;
        let (m1, n1, m2, n2) = (self.target_dim(), self.source_dim(), g.target_dim(), g.source_dim());
        let f = self.graph.basis();
        let h = g.graph.basis();
        let left = f
            .column_range(0, m1)
            .hstack(&Matrix::zeros(f.rows(), m2))
            .hstack(&f.column_range(m1, m1 + n1))
            .hstack(&Matrix::zeros(f.rows(), n2));
        let right = Matrix::zeros(h.rows(), m1)
            .hstack(&h.column_range(0, m2))
            .hstack(&Matrix::zeros(h.rows(), n1))
            .hstack(&h.column_range(m2, m2 + n2));
        LinearRelation::new(target, source, Subspace::row_space(&left.vstack(&right)))
    }

    /// Transport along `x ↦ P x`, `y ↦ Q y`. Forms are carried along so the
    /// pair is structure preserving: `P⁻ᵀ ω P⁻¹` for presymplectic spaces and
    /// `P π Pᵀ` for the bivectors of poisson spaces.
    pub fn apply_iso_pair(&self, p: &Matrix, q: &Matrix) -> Result<LinearRelation> {
        let (m, n) = (self.target_dim(), self.source_dim());
        if p.rows() != m || p.cols() != m || q.rows() != n || q.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "basis changes of shape {}x{} and {}x{} for spaces of dimension {m} and {n}",
                p.rows(),
                p.cols(),
                q.rows(),
                q.cols()
            )));
        }
        let p_inv = p.inverse().ok_or(Error::Singular)?;
        let q_inv = q.inverse().ok_or(Error::Singular)?;
        let transport = |s: &BilinearSpace, a: &Matrix, a_inv: &Matrix| {
            let form = match s.flavor() {
                Flavor::Presymplectic => &(&a_inv.transpose() * s.form()) * a_inv,
                Flavor::Poisson => &(a * s.form()) * &a.transpose(),
            };
            BilinearSpace::new(form, s.flavor())
        };
        let target = transport(&self.target, p, &p_inv)?;
        let source = transport(&self.source, q, &q_inv)?;
        let graph = self.graph.map(&p.block_diag(q));
        LinearRelation::new(target, source, graph)
    }

    /// Whether `f = fY × Xf`.
    pub fn is_cartesian(&self) -> bool {
        self.graph == self.image_fy().product(&self.domain_xf())
    }

    /// Whether `0f = 0` and `f0 = 0`.
    pub fn is_biinjective(&self) -> bool {
        self.kernel_0f().is_zero() && self.indeterminacy_f0().is_zero()
    }

    /// `f ∩ (T × S)` written in coordinates of the given bases of `T` and `S`
    /// (rows), with the restricted forms.
    pub fn restrict_to_bases(&self, target_basis: &Matrix, source_basis: &Matrix) -> Result<LinearRelation> {
        let (m, n) = (self.target_dim(), self.source_dim());
        if target_basis.cols() != m || source_basis.cols() != n {
            return Err(Error::DimensionMismatch("restriction bases have the wrong length".into()));
        }
        let t = Subspace::row_space(target_basis);
        let s = Subspace::row_space(source_basis);
        if t.dim() != target_basis.rows() || s.dim() != source_basis.rows() {
            return Err(Error::Precondition("restriction bases must be independent".into()));
        }
        let restricted_space = |space: &BilinearSpace, b: &Matrix| {
            BilinearSpace::new(&(b * space.form()) * &b.transpose(), space.flavor())
        };
        let target = restricted_space(&self.target, target_basis)?;
        let source = restricted_space(&self.source, source_basis)?;
        let inside = self.graph.intersect(&t.product(&s))?;
        let tt = target_basis.transpose();
        let st = source_basis.transpose();
        let vectors: Vec<Vec<Scalar>> = inside
            .basis()
            .row_iter()
            .map(|v| {
                let mut c = tt.solve(&v[..m]).expect("target part lies in T");
                c.extend(st.solve(&v[m..]).expect("source part lies in S"));
                c
            })
            .collect();
        LinearRelation::from_vectors(target, source, &vectors)
    }

    /// Inverse of [`LinearRelation::restrict_to_bases`] on the graph: embeds a
    /// subspace written in basis coordinates back into the product.
    pub fn embed_graph(&self, restricted: &Subspace, target_basis: &Matrix, source_basis: &Matrix) -> Subspace {
        let (a, b) = (target_basis.rows(), source_basis.rows());
        let vectors: Vec<Vec<Scalar>> = restricted
            .basis()
            .row_iter()
            .map(|c| {
                let mut v = target_basis.transpose().apply(&c[..a]);
                v.extend(source_basis.transpose().apply(&c[a..a + b]));
                v
            })
            .collect();
        Subspace::span(self.total_dim(), &vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::vector;

    fn std2() -> BilinearSpace {
        BilinearSpace::standard(1, 0, Flavor::Presymplectic)
    }

    fn line() -> BilinearSpace {
        BilinearSpace::zero_form(1, Flavor::Presymplectic)
    }

    fn point() -> BilinearSpace {
        BilinearSpace::trivial(Flavor::Presymplectic)
    }

    fn rel(t: BilinearSpace, s: BilinearSpace, vs: &[&[i64]]) -> LinearRelation {
        let vs: Vec<Vec<Scalar>> = vs.iter().map(|v| vector(v)).collect();
        LinearRelation::from_vectors(t, s, &vs).unwrap()
    }

    /// q1 = q2 = 0, p1 = p2 in (q1, p1, q2, p2).
    fn i6() -> LinearRelation {
        rel(std2(), std2(), &[&[0, 1, 0, 1]])
    }

    #[test]
    fn kernel_and_indeterminacy() {
        let id = LinearRelation::identity(&line());
        assert!(id.kernel_0f().is_zero() && id.indeterminacy_f0().is_zero());
        let full = LinearRelation::full(std2(), line()).unwrap();
        assert!(full.kernel_0f().is_full() && full.indeterminacy_f0().is_full());
        // Setting the target coordinates to zero forces p2 = 0, and symmetrically.
        assert!(i6().kernel_0f().is_zero());
        assert!(i6().indeterminacy_f0().is_zero());
    }

    #[test]
    fn domain_and_image() {
        let id = LinearRelation::identity(&std2());
        assert!(id.domain_xf().is_full() && id.image_fy().is_full());
        let z = LinearRelation::zero(std2(), std2()).unwrap();
        assert!(z.domain_xf().is_zero() && z.image_fy().is_zero());
        let p_axis = Subspace::span(2, &[vector(&[0, 1])]);
        assert_eq!(i6().domain_xf(), p_axis);
        assert_eq!(i6().image_fy(), p_axis);
    }

    #[test]
    fn isotropy_examples() {
        assert!(LinearRelation::identity(&std2()).is_isotropic().unwrap());
        assert!(!LinearRelation::full(std2(), std2()).unwrap().is_isotropic().unwrap());
        assert!(i6().is_isotropic().unwrap());
        let poisson = BilinearSpace::standard(1, 0, Flavor::Poisson);
        assert!(LinearRelation::identity(&poisson).is_isotropic().is_err());
        assert!(LinearRelation::identity(&std2()).is_coisotropic().is_err());
        assert!(LinearRelation::identity(&poisson).is_coisotropic().unwrap());
    }

    #[test]
    fn transpose_compose_direct_sum() {
        let f = rel(std2(), line(), &[&[1, 0, 1]]);
        assert_eq!(f.transpose().transpose(), f);
        let id = LinearRelation::identity(&std2());
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&LinearRelation::identity(&line())).unwrap(), f);
        let a = LinearRelation::zero(line(), point()).unwrap();
        let b = LinearRelation::zero(point(), line()).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.graph().dim(), 0);
        assert_eq!((s.target_dim(), s.source_dim()), (1, 1));
        assert!(f.compose(&f).is_err());
    }

    #[test]
    fn direct_sum_interleaves_blocks() {
        let f = rel(line(), line(), &[&[1, 1]]);
        let g = rel(line(), point(), &[&[1]]);
        let s = f.direct_sum(&g).unwrap();
        // Coordinates (x1, x2, y1).
        assert_eq!(s.graph(), &Subspace::span(3, &[vector(&[1, 0, 1]), vector(&[0, 1, 0])]));
    }

    #[test]
    fn apply_iso_pair_examples() {
        let f = rel(std2(), std2(), &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let id = Matrix::identity(2);
        assert_eq!(f.apply_iso_pair(&id, &id).unwrap(), f);
        let z = rel(line(), line(), &[&[1, 3]]);
        let two = Matrix::identity(1).scale(&crate::scalar::int(2));
        let scaled = z.apply_iso_pair(&two, &Matrix::identity(1)).unwrap();
        assert_eq!(scaled.graph(), &Subspace::span(2, &[vector(&[2, 3])]));
        assert!(scaled.target().form().is_zero());
        let p = Matrix::from_i64(&[&[1, 2], &[0, 1]]);
        let q = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let moved = f.apply_iso_pair(&p, &q).unwrap();
        assert!(moved.is_isotropic().unwrap());
        let back = moved.apply_iso_pair(&p.inverse().unwrap(), &q.inverse().unwrap()).unwrap();
        assert_eq!(back, f);
        let singular = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(f.apply_iso_pair(&singular, &id), Err(Error::Singular));
    }

    #[test]
    fn cartesian_and_biinjective() {
        let z = LinearRelation::zero(std2(), line()).unwrap();
        assert!(z.is_cartesian() && z.is_biinjective());
        let id = LinearRelation::identity(&line());
        assert!(!id.is_cartesian() && id.is_biinjective());
        let full = LinearRelation::full(line(), line()).unwrap();
        assert!(full.is_cartesian() && !full.is_biinjective());
    }

    #[test]
    fn restriction_round_trip() {
        let f = rel(std2(), std2(), &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let t = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let r = f.restrict_to_bases(&t, &t).unwrap();
        assert_eq!(r.graph().dim(), 2);
        assert_eq!(f.embed_graph(r.graph(), &t, &t), *f.graph());
    }

    #[test]
    fn forward_and_backward() {
        let f = rel(std2(), line(), &[&[1, 0, 1]]);
        assert_eq!(f.forward(&vector(&[2])), Some(vector(&[2, 0])));
        assert_eq!(f.backward(&vector(&[3, 0])), Some(vector(&[3])));
        assert_eq!(f.backward(&vector(&[0, 1])), None);
    }
}
