//! The thirteen dimension invariants, the integer matrix relating them to
//! multiplicities, and multiplicity recovery.

use std::ops::{Add, Index, IndexMut};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, IndecompType};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::relation::LinearRelation;
use crate::scalar;
use crate::space::Flavor;

/// `k_1 … k_13`, stored zero-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InvariantVector(pub [usize; 13]);

impl InvariantVector {
    /// `k_i` with the one-based index used in the invariant table.
    pub fn k(&self, i: usize) -> usize {
        assert!((1..=13).contains(&i), "invariants are indexed k1..k13");
        self.0[i - 1]
    }
}

impl Add for InvariantVector {
    type Output = InvariantVector;

    fn add(self, rhs: InvariantVector) -> InvariantVector {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        out
    }
}

/// Multiplicities `n_t` indexed by indecomposable type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicityVector(pub [usize; 13]);

impl MultiplicityVector {
    pub fn zero() -> MultiplicityVector {
        MultiplicityVector([0; 13])
    }

    pub fn unit(tag: IndecompType) -> MultiplicityVector {
        let mut n = MultiplicityVector::zero();
        n[tag] = 1;
        n
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Types with nonzero multiplicity.
    pub fn support(&self) -> Vec<IndecompType> {
        IndecompType::ALL.iter().copied().filter(|&t| self[t] > 0).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndecompType, usize)> + '_ {
        IndecompType::ALL.iter().map(move |&t| (t, self[t]))
    }
}

impl Index<IndecompType> for MultiplicityVector {
    type Output = usize;

    fn index(&self, t: IndecompType) -> &usize {
        &self.0[t.index()]
    }
}

impl IndexMut<IndecompType> for MultiplicityVector {
    fn index_mut(&mut self, t: IndecompType) -> &mut usize {
        &mut self.0[t.index()]
    }
}

impl Add for MultiplicityVector {
    type Output = MultiplicityVector;

    fn add(self, rhs: MultiplicityVector) -> MultiplicityVector {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        out
    }
}

/// Accepts thirteen comma-separated counts (`1,0,0,…`) or a list of tagged
/// counts such as `I2:1,I9:2`; a bare tag counts once.
impl std::str::FromStr for MultiplicityVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<MultiplicityVector> {
        let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        let count = |text: &str| {
            text.parse::<usize>()
                .map_err(|_| Error::parse("", format!("invalid multiplicity {text:?}")))
        };
        let mut n = MultiplicityVector::zero();
        if parts.len() == 13 && parts.iter().all(|p| p.chars().all(|c| c.is_ascii_digit())) {
            for (slot, p) in n.0.iter_mut().zip(&parts) {
                *slot = count(p)?;
            }
            return Ok(n);
        }
        for p in parts {
            let (tag, k) = match p.split_once(':') {
                Some((t, k)) => (t.parse::<IndecompType>()?, count(k.trim())?),
                None => (p.parse::<IndecompType>()?, 1),
            };
            n[tag] += k;
        }
        Ok(n)
    }
}

fn halve(dim: usize, what: &'static str) -> Result<usize> {
    if !dim.is_multiple_of(2) {
        return Err(Error::Parity { what, dim });
    }
    Ok(dim / 2)
}

/// Evaluates `k_1 … k_13` on an isotropic relation `X ← Y`.
pub fn compute_invariants(f: &LinearRelation) -> Result<InvariantVector> {
    if f.flavor() != Flavor::Presymplectic {
        return Err(Error::FlavorMismatch("invariants are computed on presymplectic relations".into()));
    }
    if !f.is_isotropic()? {
        return Err(Error::NotIsotropic);
    }
    let (x, y) = (f.target(), f.source());
    let r_x = x.radical();
    let r_y = y.radical();
    let f0 = f.indeterminacy_f0();
    let zero_f = f.kernel_0f();
    let image = f.image_fy();
    let domain = f.domain_xf();
    let domain_null = domain.intersect(&y.orthogonal(&domain)?)?;
    let radical_box = f.box_subspace(&r_x, &r_y)?;

    let k13 = domain_null
        .dim()
        .checked_sub(zero_f.dim())
        .ok_or_else(|| Error::Internal("kernel not contained in Xf ∩ Xf^⊥".into()))?;
    Ok(InvariantVector([
        halve(x.dim() - r_x.dim(), "dim X/R_X")?,
        halve(y.dim() - r_y.dim(), "dim Y/R_Y")?,
        r_x.dim(),
        r_y.dim(),
        f0.dim(),
        zero_f.dim(),
        f0.intersect(&r_x)?.dim(),
        zero_f.intersect(&r_y)?.dim(),
        image.intersect(&r_x)?.dim(),
        domain.intersect(&r_y)?.dim(),
        f.graph().intersect(&radical_box)?.dim(),
        halve(domain.dim() - domain_null.dim(), "dim Xf/(Xf ∩ Xf^⊥)")?,
        k13,
    ]))
}

pub type IntMatrix = [[i64; 13]; 13];

/// The matrix `M` with `k = M n`, columns in the printed order.
pub const PRINTED_M: IntMatrix = [
    [0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1],
    [1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0],
    [0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 0, 0],
];

pub fn printed_matrix() -> IntMatrix {
    PRINTED_M
}

fn to_matrix(m: &IntMatrix) -> Matrix {
    let rows: Vec<Vec<scalar::Scalar>> = m.iter().map(|r| scalar::vector(r)).collect();
    Matrix::from_rows(13, &rows)
}

/// An entry where the printed `M` disagrees with the invariants evaluated on
/// the canonical models. Rows and columns are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub row: usize,
    pub col: usize,
    pub printed: i64,
    pub derived: i64,
}

/// The printed `M`, the matrix actually satisfied by the models, its integral
/// inverse, and which column belongs to which type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationMatrix {
    pub printed: IntMatrix,
    /// Column `column_of[t]` is `k(model(t))`; equal to `printed` off `errata`.
    pub m: IntMatrix,
    pub inverse: IntMatrix,
    pub determinant: i64,
    /// `column_of[t.index()]` is the zero-based column of `M` holding `k(model(t))`.
    pub column_of: [usize; 13],
    pub errata: Vec<Erratum>,
}

impl ClassificationMatrix {
    pub fn column_of(&self, t: IndecompType) -> usize {
        self.column_of[t.index()]
    }

    /// `M · n` with `n` rearranged into column order.
    pub fn invariants_of(&self, n: &MultiplicityVector) -> InvariantVector {
        let mut k = [0usize; 13];
        for t in IndecompType::ALL {
            let col = self.column_of(t);
            for (row, ki) in k.iter_mut().enumerate() {
                *ki += self.m[row][col] as usize * n[t];
            }
        }
        InvariantVector(k)
    }

    /// `M⁻¹ k`, re-indexed by type. Fails unless every entry is a nonnegative integer.
    pub fn multiplicities(&self, k: &InvariantVector) -> Result<MultiplicityVector> {
        let mut n = MultiplicityVector::zero();
        for t in IndecompType::ALL {
            let col = self.column_of(t);
            let value: i64 = (0..13).map(|j| self.inverse[col][j] * k.0[j] as i64).sum();
            n[t] = usize::try_from(value)
                .map_err(|_| Error::NotRealizable(format!("{t} would have multiplicity {value}")))?;
        }
        Ok(n)
    }
}

pub fn integral_inverse(m: &IntMatrix) -> Result<(IntMatrix, i64)> {
    let mm = to_matrix(m);
    let det = scalar::to_i64(&mm.determinant()).ok_or_else(|| Error::Internal("non-integral determinant".into()))?;
    if det.abs() != 1 {
        return Err(Error::Internal(format!("classification matrix has determinant {det}")));
    }
    let inv = mm.inverse().ok_or(Error::Singular)?;
    let mut out = [[0i64; 13]; 13];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = scalar::to_i64(&inv[(i, j)]).ok_or_else(|| Error::Internal("inverse is not integral".into()))?;
        }
    }
    Ok((out, det))
}

/// Invariant vectors of the canonical isotropic models, in catalog order.
pub fn model_invariants() -> Result<[InvariantVector; 13]> {
    let mut out = [InvariantVector::default(); 13];
    for t in IndecompType::ALL {
        out[t.index()] = compute_invariants(&catalog::canonical_indecomposable(t, Flavor::Presymplectic))?;
    }
    Ok(out)
}

fn distance(m: &IntMatrix, col: usize, k: &InvariantVector) -> usize {
    (0..13).filter(|&r| m[r][col] != k.0[r] as i64).count()
}

/// Matches the invariant vector of each canonical isotropic model to a column
/// of the printed `M`: the exact match if there is one, otherwise the unique
/// nearest column. The matching must be a bijection. Mismatched entries are
/// reported as errata and the derived matrix takes the evaluated values.
pub fn derive_column_permutation() -> Result<ClassificationMatrix> {
    let printed = printed_matrix();
    let ks = model_invariants()?;
    let mut column_of = [usize::MAX; 13];
    let mut used = [false; 13];
    for t in IndecompType::ALL {
        let k = &ks[t.index()];
        let best = (0..13).map(|c| distance(&printed, c, k)).min().unwrap_or(0);
        let nearest: Vec<usize> = (0..13).filter(|&c| distance(&printed, c, k) == best).collect();
        match nearest.as_slice() {
            [c] if !used[*c] => {
                used[*c] = true;
                column_of[t.index()] = *c;
            }
            _ => return Err(Error::ColumnMatch { tag: t }),
        }
    }
    let mut m = printed;
    let mut errata = Vec::new();
    for t in IndecompType::ALL {
        let col = column_of[t.index()];
        for row in 0..13 {
            let derived = ks[t.index()].0[row] as i64;
            if printed[row][col] != derived {
                errata.push(Erratum { row, col, printed: printed[row][col], derived });
                m[row][col] = derived;
            }
        }
    }
    errata.sort_by_key(|e| (e.row, e.col));
    let (inverse, determinant) = integral_inverse(&m)?;
    Ok(ClassificationMatrix {
        printed,
        m,
        inverse,
        determinant,
        column_of,
        errata,
    })
}

static CLASSIFICATION: OnceLock<ClassificationMatrix> = OnceLock::new();

pub fn classification() -> &'static ClassificationMatrix {
    CLASSIFICATION.get_or_init(|| {
        derive_column_permutation().expect("catalog models must match the columns of M bijectively")
    })
}

pub fn multiplicities(k: &InvariantVector) -> Result<MultiplicityVector> {
    classification().multiplicities(k)
}

/// Multiplicities through the invariant route, for either flavor.
pub fn multiplicities_of(f: &LinearRelation) -> Result<MultiplicityVector> {
    let k = match f.flavor() {
        Flavor::Presymplectic => compute_invariants(f)?,
        Flavor::Poisson => {
            if !f.is_coisotropic()? {
                return Err(Error::NotCoisotropic);
            }
            compute_invariants(&crate::duality::annihilator(f))?
        }
    };
    multiplicities(&k)
}

/// Product of two integer matrices; used to check `M⁻¹ M = I`.
pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = [[0i64; 13]; 13];
    for i in 0..13 {
        for j in 0..13 {
            out[i][j] = (0..13).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn is_identity(m: &IntMatrix) -> bool {
    (0..13).all(|i| (0..13).all(|j| m[i][j] == i64::from(i == j)))
}
