//! Normal forms with certificates.
//!
//! An isotropic relation is split into `f_C ⊕ f_B`, each part is cut into
//! blocks, and the block vectors become the columns of `P⁻¹` and `Q⁻¹`.
//! Coisotropic relations go through their annihilator.

mod biinjective;
mod cartesian;
mod trace;

pub use biinjective::{decompose_biinjective, BiinjectiveTrace};
pub use cartesian::{decompose_cartesian, split_cartesian_biinjective, Split, SplitTrace};
pub use trace::StageTrace;

use serde::{Deserialize, Serialize};

use crate::catalog::{canonical_sum, IndecompType};
use crate::duality::{annihilator, dualize_certificate};
use crate::error::{Error, Result};
use crate::invariants::{compute_invariants, multiplicities, multiplicities_of, MultiplicityVector};
use crate::matrix::{self, Matrix};
use crate::relation::LinearRelation;
use crate::scalar::Scalar;
use crate::space::Flavor;

/// One indecomposable summand: the vectors of the target and source that
/// play the roles of the model's standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub tag: IndecompType,
    pub target: Vec<Vec<Scalar>>,
    pub source: Vec<Vec<Scalar>>,
}

impl Block {
    pub fn new(tag: IndecompType, target: Vec<Vec<Scalar>>, source: Vec<Vec<Scalar>>) -> Block {
        debug_assert_eq!(target.len(), tag.target_kind().dim());
        debug_assert_eq!(source.len(), tag.source_kind().dim());
        Block { tag, target, source }
    }

    fn embed(self, target_basis: &Matrix, source_basis: &Matrix) -> Block {
        let lift = |basis: &Matrix, vs: Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
            let rows = basis.to_rows();
            vs.iter().map(|c| matrix::combine(basis.cols(), c, &rows)).collect()
        };
        Block {
            tag: self.tag,
            target: lift(target_basis, self.target),
            source: lift(source_basis, self.source),
        }
    }
}

/// `f.apply_iso_pair(p, q) == canonical_sum(multiplicities, flavor)`.
///
/// For coisotropic input the trace describes the decomposition of the
/// annihilator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "kind")]
    pub flavor: Flavor,
    pub p: Matrix,
    pub q: Matrix,
    pub multiplicities: MultiplicityVector,
    pub trace: StageTrace,
}

/// Checks the basis changes alone; the trace is not consulted.
pub fn verify_certificate(f: &LinearRelation, cert: &Certificate) -> bool {
    if cert.flavor != f.flavor() {
        return false;
    }
    match f.apply_iso_pair(&cert.p, &cert.q) {
        Ok(moved) => moved == canonical_sum(&cert.multiplicities, cert.flavor),
        Err(_) => false,
    }
}

/// Failed trace checks for `cert` as a certificate of `f`.
pub fn trace_failures(f: &LinearRelation, cert: &Certificate) -> Vec<String> {
    match f.flavor() {
        Flavor::Presymplectic => cert.trace.failures(f),
        Flavor::Poisson => cert.trace.failures(&annihilator(f)),
    }
}

pub fn decompose(f: &LinearRelation) -> Result<Certificate> {
    match f.flavor() {
        Flavor::Presymplectic => decompose_isotropic(f),
        Flavor::Poisson => {
            if !f.is_coisotropic()? {
                return Err(Error::NotCoisotropic);
            }
            let g = annihilator(f);
            let cert = dualize_certificate(&decompose_isotropic(&g)?, &g)?;
            if !verify_certificate(f, &cert) {
                return Err(Error::Internal("dualized certificate does not verify".into()));
            }
            Ok(cert)
        }
    }
}

fn decompose_isotropic(f: &LinearRelation) -> Result<Certificate> {
    if !f.is_isotropic()? {
        return Err(Error::NotIsotropic);
    }
    let split = split_cartesian_biinjective(f)?;
    let (bi_blocks, bi_trace) = decompose_biinjective(&split.biinjective)?;
    let (x_b, y_b) = (split.trace.x_b.basis(), split.trace.y_b.basis());
    let mut blocks: Vec<Block> = decompose_cartesian(&split.cartesian)?
        .into_iter()
        .map(|b| b.embed(&split.cartesian_target_basis, &split.cartesian_source_basis))
        .chain(bi_blocks.into_iter().map(|b| b.embed(x_b, y_b)))
        .collect();
    blocks.sort_by_key(|b| b.tag);

    let mut n = MultiplicityVector::zero();
    let mut target_cols = Vec::new();
    let mut source_cols = Vec::new();
    for b in blocks {
        n[b.tag] += 1;
        target_cols.extend(b.target);
        source_cols.extend(b.source);
    }
    let (m, k) = (f.target_dim(), f.source_dim());
    if target_cols.len() != m || source_cols.len() != k {
        return Err(Error::Internal("blocks do not fill the spaces".into()));
    }
    let p = Matrix::from_columns(m, &target_cols)
        .inverse()
        .ok_or_else(|| Error::Internal("target block vectors are dependent".into()))?;
    let q = Matrix::from_columns(k, &source_cols)
        .inverse()
        .ok_or_else(|| Error::Internal("source block vectors are dependent".into()))?;

    let cert = Certificate {
        flavor: f.flavor(),
        p,
        q,
        multiplicities: n,
        trace: StageTrace {
            split: split.trace,
            biinjective: bi_trace,
        },
    };
    if !verify_certificate(f, &cert) {
        return Err(Error::Internal("constructed certificate does not verify".into()));
    }
    if multiplicities(&compute_invariants(f)?)? != n {
        return Err(Error::Internal("block counts disagree with the invariants".into()));
    }
    Ok(cert)
}

/// Same flavor and same multiplicities.
pub fn is_isomorphic(f: &LinearRelation, g: &LinearRelation) -> Result<bool> {
    if f.flavor() != g.flavor() {
        return Err(Error::FlavorMismatch("relations of different kinds".into()));
    }
    Ok(multiplicities_of(f)? == multiplicities_of(g)?)
}
