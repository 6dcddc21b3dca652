//! Splitting an isotropic relation into a cartesian part `f_C = f0 × 0f` and
//! a biinjective part `f_B`, and cutting `f_C` into blocks.

use serde::{Deserialize, Serialize};

use super::Block;
use crate::catalog::IndecompType;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::relation::LinearRelation;
use crate::scalar::Scalar;
use crate::space::BilinearSpace;
use crate::subspace::Subspace;

/// Subspaces produced by the split, in the coordinates of the input relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitTrace {
    pub y_0: Subspace,
    pub x_0: Subspace,
    pub y_b: Subspace,
    pub x_b: Subspace,
    pub y_0_dual: Subspace,
    pub x_0_dual: Subspace,
    /// `f0 ∩ R_X`.
    pub f0_radical: Subspace,
    /// `0f ∩ R_Y`.
    pub kernel_radical: Subspace,
    /// Graph of `f_C` inside `X × Y`.
    pub f_c: Subspace,
    /// Graph of `f_B` inside `X × Y`.
    pub f_b: Subspace,
}

/// Result of [`split_cartesian_biinjective`].
///
/// `cartesian` is written in the basis `[X_0, X_0*, f0 ∩ R_X]` of the target
/// (and likewise for the source), `biinjective` in the canonical bases of
/// `X_B` and `Y_B`.
#[derive(Clone, Debug)]
pub struct Split {
    pub cartesian: LinearRelation,
    pub cartesian_target_basis: Matrix,
    pub cartesian_source_basis: Matrix,
    pub biinjective: LinearRelation,
    pub trace: SplitTrace,
}

struct Side {
    null_radical: Subspace,
    null_rest: Subspace,
    dual: Vec<Vec<Scalar>>,
    bi: Subspace,
    cartesian_basis: Matrix,
}

/// One side of the split. `null` is `f0` (target) or `0f` (source).
fn split_side(space: &BilinearSpace, null: &Subspace) -> Result<Side> {
    let n = space.dim();
    let null_radical = null.intersect(&space.radical())?;
    let null_rest = null_radical.complement_in(null)?;
    let rest = null_rest.vectors();
    let within = space.radical_complement_containing(&null_rest)?;
    let dual = space.isotropic_dual_basis(&rest, &within, &Subspace::zero(n))?;
    let paired = Subspace::span(n, &[rest.clone(), dual.clone()].concat());
    // The biinjective block is a complement of the radical part inside paired^⊥,
    // which makes it a complement of `null` inside null^⊥ orthogonal to the pairs.
    let bi = null_radical.complement_in(&space.orthogonal(&paired)?)?;
    let cartesian_basis = Matrix::from_rows(n, &[rest, dual.clone(), null_radical.vectors()].concat());
    Ok(Side {
        null_radical,
        null_rest,
        dual,
        bi,
        cartesian_basis,
    })
}

pub fn split_cartesian_biinjective(f: &LinearRelation) -> Result<Split> {
    if !f.is_isotropic()? {
        return Err(Error::NotIsotropic);
    }
    let target = split_side(f.target(), &f.indeterminacy_f0())?;
    let source = split_side(f.source(), &f.kernel_0f())?;

    let cartesian = f.restrict_to_bases(&target.cartesian_basis, &source.cartesian_basis)?;
    let biinjective = f.restrict_to_bases(target.bi.basis(), source.bi.basis())?;
    let f_c = f.embed_graph(cartesian.graph(), &target.cartesian_basis, &source.cartesian_basis);
    let f_b = f.embed_graph(biinjective.graph(), target.bi.basis(), source.bi.basis());

    let trace = SplitTrace {
        y_0: source.null_rest,
        x_0: target.null_rest,
        y_b: source.bi,
        x_b: target.bi,
        y_0_dual: Subspace::span(f.source_dim(), &source.dual),
        x_0_dual: Subspace::span(f.target_dim(), &target.dual),
        f0_radical: target.null_radical,
        kernel_radical: source.null_radical,
        f_c,
        f_b,
    };
    Ok(Split {
        cartesian,
        cartesian_target_basis: target.cartesian_basis,
        cartesian_source_basis: source.cartesian_basis,
        biinjective,
        trace,
    })
}

type SidePairs = (Vec<[Vec<Scalar>; 2]>, Vec<Vec<Scalar>>);

/// Lagrangian-plus-radical part of one side: pairs `(a_i, a_i*)` spanning the
/// symplectic part, and a basis of `null ∩ R`.
fn cartesian_side(space: &BilinearSpace, null: &Subspace) -> Result<SidePairs> {
    if space.orthogonal(null)? != *null {
        return Err(Error::Precondition("cartesian part must satisfy f0^⊥ = f0 and (0f)^⊥ = 0f".into()));
    }
    let radical = null.intersect(&space.radical())?;
    let rest = radical.complement_in(null)?;
    let rest_vecs = rest.vectors();
    let within = space.radical_complement_containing(&rest)?;
    let dual = space.isotropic_dual_basis(&rest_vecs, &within, &Subspace::zero(space.dim()))?;
    let pairs = rest_vecs.into_iter().zip(dual).map(|(q, p)| [q, p]).collect();
    Ok((pairs, radical.vectors()))
}

/// Blocks of a relation of the shape `f0 × 0f` with `f0^⊥ = f0` and
/// `(0f)^⊥ = 0f`: one I2 per lagrangian direction of `f0` off the radical,
/// one I3 likewise for `0f`, one I8 per direction of `f0 ∩ R_X`, one I9 per
/// direction of `0f ∩ R_Y`.
pub fn decompose_cartesian(f_c: &LinearRelation) -> Result<Vec<Block>> {
    let f0 = f_c.indeterminacy_f0();
    let zero_f = f_c.kernel_0f();
    if *f_c.graph() != f0.product(&zero_f) {
        return Err(Error::Precondition("cartesian part must equal f0 × 0f".into()));
    }
    let (target_pairs, target_radical) = cartesian_side(f_c.target(), &f0)?;
    let (source_pairs, source_radical) = cartesian_side(f_c.source(), &zero_f)?;

    let mut blocks = Vec::new();
    for pair in target_pairs {
        blocks.push(Block::new(IndecompType::I2, pair.to_vec(), vec![]));
    }
    for pair in source_pairs {
        blocks.push(Block::new(IndecompType::I3, vec![], pair.to_vec()));
    }
    for v in target_radical {
        blocks.push(Block::new(IndecompType::I8, vec![v], vec![]));
    }
    for v in source_radical {
        blocks.push(Block::new(IndecompType::I9, vec![], vec![v]));
    }
    Ok(blocks)
}
