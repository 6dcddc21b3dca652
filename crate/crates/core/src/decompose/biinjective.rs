//! Blocks of a biinjective isotropic relation `g: X ← Y`.
//!
//! The radical parts are cut first (I7, I10, I11, I12, I13), then the
//! domain left over is split into its own radical `Y_L` (I6) and a symplectic
//! part `Y_S` (I1). Whatever of `X`, `Y` is still uncovered is symplectic and
//! orthogonal to everything else (I4, I5).

use serde::{Deserialize, Serialize};

use super::Block;
use crate::catalog::IndecompType;
use crate::error::{Error, Result};
use crate::relation::LinearRelation;
use crate::scalar::Scalar;
use crate::subspace::{is_direct_sum, Subspace};

/// Named subspaces of the biinjective stage, in the coordinates of `g`.
///
/// `*_dual` entries are the isotropic duals chosen inside `e_x` / `e_y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiinjectiveTrace {
    pub y_r: Subspace,
    pub x_r: Subspace,
    pub y_i: Subspace,
    pub x_i: Subspace,
    pub y_r_prime: Subspace,
    pub x_r_prime: Subspace,
    pub x_ig: Subspace,
    pub g_y_i: Subspace,
    pub w: Subspace,
    pub y_l: Subspace,
    pub y_s: Subspace,
    pub x_l: Subspace,
    pub x_s: Subspace,
    pub e_y: Subspace,
    pub e_x: Subspace,
    pub x_ig_dual: Subspace,
    pub y_l_dual: Subspace,
    pub g_y_i_dual: Subspace,
    pub x_l_dual: Subspace,
    pub y_s_prime: Subspace,
    pub x_s_prime: Subspace,
}

fn map_all(vs: &[Vec<Scalar>], f: impl Fn(&[Scalar]) -> Option<Vec<Scalar>>) -> Result<Vec<Vec<Scalar>>> {
    vs.iter()
        .map(|v| f(v).ok_or_else(|| Error::Internal("vector outside the domain of a biinjective relation".into())))
        .collect()
}

fn neg(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| -x).collect()
}

fn span(n: usize, vs: &[Vec<Scalar>]) -> Subspace {
    Subspace::span(n, vs)
}

pub fn decompose_biinjective(g: &LinearRelation) -> Result<(Vec<Block>, BiinjectiveTrace)> {
    if !g.is_isotropic()? {
        return Err(Error::NotIsotropic);
    }
    if !g.is_biinjective() {
        return Err(Error::Precondition("relation is not biinjective".into()));
    }
    let (x, y) = (g.target(), g.source());
    let (m, n) = (x.dim(), y.dim());
    let (r_x, r_y) = (x.radical(), y.radical());
    let dom = g.domain_xf();
    let img = g.image_fy();
    let dom_r = dom.intersect(&r_y)?;
    let img_r = img.intersect(&r_x)?;

    let x_r = g.image_of(&dom_r)?.intersect(&r_x)?;
    let y_r = g.preimage_of(&x_r)?;
    let y_i = y_r.complement_in(&dom_r)?;
    let x_i = x_r.complement_in(&img_r)?;
    let y_r_prime = dom_r.complement_in(&r_y)?;
    let x_r_prime = img_r.complement_in(&r_x)?;
    let x_ig = g.preimage_of(&x_i)?;
    let g_y_i = g.image_of(&y_i)?;

    let w = dom_r.sum(&x_ig)?.complement_in(&dom)?;
    let y_l = w.intersect(&y.orthogonal(&w)?)?;
    let y_s = y_l.complement_in(&w)?;
    let x_l = g.image_of(&y_l)?;
    let x_s = g.image_of(&y_s)?;

    let e_y = y.radical_complement_containing(&Subspace::sum_all(n, [&x_ig, &y_l, &y_s])?)?;
    let e_x = x.radical_complement_containing(&Subspace::sum_all(m, [&g_y_i, &x_l, &x_s])?)?;

    let y_i_vecs = y_i.vectors();
    let g_y_i_vecs = map_all(&y_i_vecs, |v| g.forward(v))?;
    let x_l_vecs = x_l.vectors();
    let y_l_vecs = map_all(&x_l_vecs, |v| g.backward(v))?;
    let x_i_vecs = x_i.vectors();
    let x_ig_vecs = map_all(&x_i_vecs, |v| g.backward(v))?;

    let x_duals = x.isotropic_dual_basis(&[g_y_i_vecs.clone(), x_l_vecs.clone()].concat(), &e_x, &x_s)?;
    let y_duals = y.isotropic_dual_basis(&[x_ig_vecs.clone(), y_l_vecs.clone()].concat(), &e_y, &y_s)?;
    let (g_y_i_dual, x_l_dual) = x_duals.split_at(g_y_i_vecs.len());
    let (x_ig_dual, y_l_dual) = y_duals.split_at(x_ig_vecs.len());

    let v_y = Subspace::sum_all(n, [&x_ig, &span(n, x_ig_dual), &y_l, &span(n, y_l_dual), &y_s])?;
    let v_x = Subspace::sum_all(m, [&g_y_i, &span(m, g_y_i_dual), &x_l, &span(m, x_l_dual), &x_s])?;
    let y_s_prime = y.orthogonal(&v_y)?.intersect(&e_y)?;
    let x_s_prime = x.orthogonal(&v_x)?.intersect(&e_x)?;

    let mut blocks = Vec::new();
    for (q, p) in x.symplectic_basis(&x_s)? {
        let source = map_all(&[q.clone(), p.clone()], |v| g.backward(v))?;
        blocks.push(Block::new(IndecompType::I1, vec![q, p], source));
    }
    for (q, p) in x.symplectic_basis(&x_s_prime)? {
        blocks.push(Block::new(IndecompType::I4, vec![q, p], vec![]));
    }
    for (q, p) in y.symplectic_basis(&y_s_prime)? {
        blocks.push(Block::new(IndecompType::I5, vec![], vec![q, p]));
    }
    for j in 0..x_l_vecs.len() {
        blocks.push(Block::new(
            IndecompType::I6,
            vec![neg(&x_l_dual[j]), x_l_vecs[j].clone()],
            vec![neg(&y_l_dual[j]), y_l_vecs[j].clone()],
        ));
    }
    for v in x_r.vectors() {
        let source = map_all(std::slice::from_ref(&v), |u| g.backward(u))?;
        blocks.push(Block::new(IndecompType::I7, vec![v], source));
    }
    for v in x_r_prime.vectors() {
        blocks.push(Block::new(IndecompType::I10, vec![v], vec![]));
    }
    for v in y_r_prime.vectors() {
        blocks.push(Block::new(IndecompType::I11, vec![], vec![v]));
    }
    for i in 0..y_i_vecs.len() {
        blocks.push(Block::new(
            IndecompType::I12,
            vec![g_y_i_vecs[i].clone(), g_y_i_dual[i].clone()],
            vec![y_i_vecs[i].clone()],
        ));
    }
    for i in 0..x_i_vecs.len() {
        blocks.push(Block::new(
            IndecompType::I13,
            vec![x_i_vecs[i].clone()],
            vec![x_ig_vecs[i].clone(), x_ig_dual[i].clone()],
        ));
    }

    let trace = BiinjectiveTrace {
        x_ig_dual: span(n, x_ig_dual),
        y_l_dual: span(n, y_l_dual),
        g_y_i_dual: span(m, g_y_i_dual),
        x_l_dual: span(m, x_l_dual),
        y_r,
        x_r,
        y_i,
        x_i,
        y_r_prime,
        x_r_prime,
        x_ig,
        g_y_i,
        w,
        y_l,
        y_s,
        x_l,
        x_s,
        e_y,
        e_x,
        y_s_prime,
        x_s_prime,
    };
    let t = &trace;
    let y_split = [&t.y_r, &t.y_i, &t.y_r_prime, &t.x_ig, &t.x_ig_dual, &t.y_l, &t.y_l_dual, &t.y_s, &t.y_s_prime];
    let x_split = [&t.x_r, &t.x_i, &t.x_r_prime, &t.g_y_i, &t.g_y_i_dual, &t.x_l, &t.x_l_dual, &t.x_s, &t.x_s_prime];
    if !is_direct_sum(&y_split, &Subspace::full(n)) || !is_direct_sum(&x_split, &Subspace::full(m)) {
        return Err(Error::Internal("biinjective stage did not split the spaces".into()));
    }
    Ok((blocks, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{canonical_indecomposable, canonical_sum};
    use crate::invariants::MultiplicityVector;
    use crate::space::Flavor;

    fn tags(g: &LinearRelation) -> Vec<IndecompType> {
        decompose_biinjective(g).unwrap().0.iter().map(|b| b.tag).collect()
    }

    #[test]
    fn each_biinjective_model_yields_its_own_tag() {
        use IndecompType::*;
        for t in [I1, I4, I5, I6, I7, I10, I11, I12, I13] {
            let g = canonical_indecomposable(t, Flavor::Presymplectic);
            assert_eq!(tags(&g), vec![t], "{t}");
        }
    }

    #[test]
    fn cartesian_models_rejected() {
        for t in [IndecompType::I2, IndecompType::I3, IndecompType::I8, IndecompType::I9] {
            let g = canonical_indecomposable(t, Flavor::Presymplectic);
            assert!(matches!(decompose_biinjective(&g), Err(Error::Precondition(_))));
        }
    }

    #[test]
    fn mixed_sum_counts() {
        use IndecompType::*;
        let mut n = MultiplicityVector::zero();
        for (t, k) in [(I1, 2), (I6, 1), (I7, 1), (I12, 2), (I13, 1), (I10, 1), (I5, 1)] {
            n[t] = k;
        }
        let g = canonical_sum(&n, Flavor::Presymplectic);
        let (blocks, trace) = decompose_biinjective(&g).unwrap();
        let mut got = MultiplicityVector::zero();
        for b in &blocks {
            got[b.tag] += 1;
        }
        assert_eq!(got, n);
        assert_eq!(trace.y_l.dim(), 1);
        assert_eq!(trace.y_s.dim(), 4);
        assert_eq!(trace.y_i.dim(), 2);
    }

    #[test]
    fn i6_block_vectors() {
        let g = canonical_indecomposable(IndecompType::I6, Flavor::Presymplectic);
        let (blocks, _) = decompose_biinjective(&g).unwrap();
        let b = &blocks[0];
        assert_eq!(g.target().pair(&b.target[0], &b.target[1]), crate::scalar::one());
        assert_eq!(b.target[1], crate::scalar::vector(&[0, 1]));
        assert_eq!(b.source[1], crate::scalar::vector(&[0, 1]));
    }
}
