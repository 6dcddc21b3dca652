//! Canonical models of the thirteen indecomposable types.
//!
//! Two-dimensional symplectic factors use the basis `(q, p)` with
//! `ω(q, p) = 1`; one-dimensional factors carry the zero form.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::MultiplicityVector;
use crate::matrix::Matrix;
use crate::relation::LinearRelation;
use crate::scalar::{self, Scalar};
use crate::space::{BilinearSpace, Flavor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IndecompType {
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    I7,
    I8,
    I9,
    I10,
    I11,
    I12,
    I13,
}

/// The factor shapes that occur in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// `(Q², J)`.
    Symplectic2,
    /// `Q` with the zero form.
    Zero1,
    /// The trivial space.
    Trivial,
}

impl FactorKind {
    pub fn dim(self) -> usize {
        match self {
            FactorKind::Symplectic2 => 2,
            FactorKind::Zero1 => 1,
            FactorKind::Trivial => 0,
        }
    }

    pub fn space(self, flavor: Flavor) -> BilinearSpace {
        match self {
            FactorKind::Symplectic2 => BilinearSpace::standard(1, 0, flavor),
            FactorKind::Zero1 => BilinearSpace::zero_form(1, flavor),
            FactorKind::Trivial => BilinearSpace::trivial(flavor),
        }
    }
}

impl IndecompType {
    pub const ALL: [IndecompType; 13] = [
        IndecompType::I1,
        IndecompType::I2,
        IndecompType::I3,
        IndecompType::I4,
        IndecompType::I5,
        IndecompType::I6,
        IndecompType::I7,
        IndecompType::I8,
        IndecompType::I9,
        IndecompType::I10,
        IndecompType::I11,
        IndecompType::I12,
        IndecompType::I13,
    ];

    /// Zero-based position in the listing order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<IndecompType> {
        IndecompType::ALL.get(i).copied()
    }

    pub fn label(self) -> &'static str {
        const LABELS: [&str; 13] = [
            "I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8", "I9", "I10", "I11", "I12", "I13",
        ];
        LABELS[self.index()]
    }

    pub fn target_kind(self) -> FactorKind {
        use FactorKind::*;
        use IndecompType::*;
        match self {
            I1 | I2 | I4 | I6 | I12 => Symplectic2,
            I7 | I8 | I10 | I13 => Zero1,
            I3 | I5 | I9 | I11 => Trivial,
        }
    }

    pub fn source_kind(self) -> FactorKind {
        use FactorKind::*;
        use IndecompType::*;
        match self {
            I1 | I3 | I5 | I6 | I13 => Symplectic2,
            I7 | I9 | I11 | I12 => Zero1,
            I2 | I4 | I8 | I10 => Trivial,
        }
    }

    /// Human-readable description of the model for the given flavor.
    pub fn description(self, flavor: Flavor) -> &'static str {
        use IndecompType::*;
        match flavor {
            Flavor::Presymplectic => match self {
                I1 => "identity R^2 <- R^2",
                I2 => "R^2 <- 0 given by (R,0) x 0",
                I3 => "0 <- R^2 given by 0 x (R,0)",
                I4 => "zero relation R^2 <- 0",
                I5 => "zero relation 0 <- R^2",
                I6 => "R^2 <- R^2 given by q1 = q2 = 0, p1 = p2",
                I7 => "identity R <- R (zero forms)",
                I8 => "R <- 0 given by R x 0",
                I9 => "0 <- R given by 0 x R",
                I10 => "zero relation R <- 0",
                I11 => "zero relation 0 <- R",
                I12 => "R^2 <- R given by (R,0) <- R",
                I13 => "R <- R^2 given by R <- (R,0)",
            },
            Flavor::Poisson => match self {
                I1 => "identity R^2 <- R^2",
                I2 => "0 <- R^2 given by 0 x (lagrangian line)",
                I3 => "R^2 <- 0 given by (lagrangian line) x 0",
                I4 => "0 <- R^2 given by 0 x R^2",
                I5 => "R^2 <- 0 given by R^2 x 0",
                I6 => "R^2 <- R^2 given by p1* = p2*",
                I7 => "identity R <- R (zero bivectors)",
                I8 => "zero relation 0 <- R",
                I9 => "zero relation R <- 0",
                I10 => "0 <- R given by 0 x R",
                I11 => "R <- 0 given by R x 0",
                I12 => "R <- R^2 given by the projection onto the first factor",
                I13 => "R^2 <- R given by the transposed projection",
            },
        }
    }

    /// Graph generators of the isotropic model, coordinates `(target, source)`.
    fn isotropic_generators(self) -> &'static [&'static [i64]] {
        use IndecompType::*;
        match self {
            I1 => &[&[1, 0, 1, 0], &[0, 1, 0, 1]],
            I2 => &[&[1, 0]],
            I3 => &[&[1, 0]],
            I4 | I5 | I10 | I11 => &[],
            I6 => &[&[0, 1, 0, 1]],
            I7 => &[&[1, 1]],
            I8 => &[&[1]],
            I9 => &[&[1]],
            I12 => &[&[1, 0, 1]],
            I13 => &[&[1, 1, 0]],
        }
    }

    /// Graph generators of the coisotropic model, coordinates `(target, source)`
    /// on `Y* ← X*`, written down from the coisotropic list directly.
    fn coisotropic_generators(self) -> &'static [&'static [i64]] {
        use IndecompType::*;
        match self {
            I1 => &[&[1, 0, 1, 0], &[0, 1, 0, 1]],
            // Annihilator of the q-axis: the p*-axis of the source.
            I2 => &[&[0, 1]],
            I3 => &[&[0, 1]],
            I4 => &[&[1, 0], &[0, 1]],
            I5 => &[&[1, 0], &[0, 1]],
            // p1* = p2* in (q1*, p1*, q2*, p2*).
            I6 => &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 1]],
            I7 => &[&[1, 1]],
            I8 | I9 => &[],
            I10 => &[&[1]],
            I11 => &[&[1]],
            // η = ξ_q on R ← R².
            I12 => &[&[1, 1, 0], &[0, 0, 1]],
            I13 => &[&[1, 0, 1], &[0, 1, 0]],
        }
    }

    /// Target and source factor of the model for the given flavor; poisson
    /// models live on `Y* ← X*`.
    pub fn factors(self, flavor: Flavor) -> (FactorKind, FactorKind) {
        match flavor {
            Flavor::Presymplectic => (self.target_kind(), self.source_kind()),
            Flavor::Poisson => (self.source_kind(), self.target_kind()),
        }
    }
}

impl fmt::Display for IndecompType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IndecompType {
    type Err = Error;

    fn from_str(s: &str) -> Result<IndecompType> {
        IndecompType::ALL
            .iter()
            .copied()
            .find(|t| t.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::parse("", format!("unknown indecomposable type {s:?}")))
    }
}

/// The canonical model of `tag` for the given flavor.
pub fn canonical_indecomposable(tag: IndecompType, flavor: Flavor) -> LinearRelation {
    let (t, s) = tag.factors(flavor);
    let generators = match flavor {
        Flavor::Presymplectic => tag.isotropic_generators(),
        Flavor::Poisson => tag.coisotropic_generators(),
    };
    let vectors: Vec<Vec<Scalar>> = generators.iter().map(|g| scalar::vector(g)).collect();
    LinearRelation::from_vectors(t.space(flavor), s.space(flavor), &vectors)
        .expect("catalog generators have the right length")
}

/// `⊕_t n[t] · model(t)`, blocks ordered by tag.
pub fn canonical_sum(n: &MultiplicityVector, flavor: Flavor) -> LinearRelation {
    let trivial = BilinearSpace::trivial(flavor);
    let mut acc = LinearRelation::zero(trivial.clone(), trivial).expect("trivial relation");
    for tag in IndecompType::ALL {
        let model = canonical_indecomposable(tag, flavor);
        for _ in 0..n[tag] {
            acc = acc.direct_sum(&model).expect("same flavor");
        }
    }
    acc
}

/// Target and source dimension of `canonical_sum(n, flavor)`.
pub fn sum_dims(n: &MultiplicityVector, flavor: Flavor) -> (usize, usize) {
    IndecompType::ALL.iter().fold((0, 0), |(a, b), &t| {
        let (tk, sk) = t.factors(flavor);
        (a + n[t] * tk.dim(), b + n[t] * sk.dim())
    })
}

/// A relation isomorphic to `canonical_sum(n)` together with the basis
/// changes that produced it: `relation = canonical_sum(n).apply_iso_pair(p, q)`.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub relation: LinearRelation,
    pub p: Matrix,
    pub q: Matrix,
}

/// Draws an invertible `dim × dim` matrix with entries in `-3..=3` by rejection.
pub fn random_invertible<R: Rng>(dim: usize, rng: &mut R) -> Matrix {
    loop {
        let data: Vec<Scalar> = (0..dim * dim).map(|_| scalar::int(rng.gen_range(-3..=3))).collect();
        let m = Matrix::new(dim, dim, data);
        if !scalar::ScalarExt::is_zero(&m.determinant()) {
            return m;
        }
    }
}

pub fn random_instance(n: &MultiplicityVector, flavor: Flavor, seed: u64) -> RandomInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let canonical = canonical_sum(n, flavor);
    let p = random_invertible(canonical.target_dim(), &mut rng);
    let q = random_invertible(canonical.source_dim(), &mut rng);
    let relation = canonical
        .apply_iso_pair(&p, &q)
        .expect("random basis changes are invertible");
    RandomInstance { relation, p, q }
}
