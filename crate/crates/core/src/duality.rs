//! The annihilator functor between presymplectic/isotropic and
//! poisson/coisotropic data.
//!
//! Dual bases are identified with standard bases, so `X*` is again `Q^m`
//! and a form matrix is reused verbatim as the bivector on the dual. The
//! pairing of `(x, y) ∈ X × Y` with `(η, ξ) ∈ Y* × X*` is `ξ(x) − η(y)`.

use crate::decompose::Certificate;
use crate::error::{Error, Result};
use crate::relation::LinearRelation;
use crate::space::BilinearSpace;

/// Same form matrix, opposite flavor.
pub fn dual_space(s: &BilinearSpace) -> BilinearSpace {
    s.with_flavor(s.flavor().dual())
}

/// `f° ⊆ Y* × X*`: the relation `Y* ← X*` of all `(η, ξ)` with
/// `ξ(x) − η(y) = 0` for every `(x, y) ∈ f`.
pub fn annihilator(f: &LinearRelation) -> LinearRelation {
    let (m, n) = (f.target_dim(), f.source_dim());
    let b = f.graph().basis();
    let pairing = (-&b.column_range(m, m + n)).hstack(&b.column_range(0, m));
    LinearRelation::new(dual_space(f.source()), dual_space(f.target()), pairing.kernel())
        .expect("annihilator of a well-formed relation is well formed")
}

/// Certificate for `annihilator(f)` from a certificate for `f`: the basis
/// changes become `(Q⁻ᵀ, P⁻ᵀ)` on `Y* ← X*`, multiplicities are unchanged.
pub fn dualize_certificate(cert: &Certificate, f: &LinearRelation) -> Result<Certificate> {
    if !crate::decompose::verify_certificate(f, cert) {
        return Err(Error::Precondition("certificate does not verify for the relation".into()));
    }
    let p_inv = cert.p.inverse().ok_or(Error::Singular)?;
    let q_inv = cert.q.inverse().ok_or(Error::Singular)?;
    Ok(Certificate {
        flavor: cert.flavor.dual(),
        p: q_inv.transpose(),
        q: p_inv.transpose(),
        multiplicities: cert.multiplicities,
        trace: cert.trace.clone(),
    })
}
