//! The ground field.
//!
//! Everything above this module only touches scalars through the arithmetic
//! operators and [`ScalarExt`], plus the handful of helpers here.
//! Swapping in another field of characteristic other than two means
//! replacing the alias and these helpers.

use std::fmt;

use malachite_base::num::arithmetic::traits::{DivExact, Gcd, Lcm, Reciprocal};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_base::num::logic::traits::SignificantBits;
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Scalar = malachite_q::Rational;

/// The few scalar queries used outside this module.
pub trait ScalarExt {
    fn is_zero(&self) -> bool;
    fn recip(&self) -> Scalar;
}

impl ScalarExt for Scalar {
    fn is_zero(&self) -> bool {
        *self == Scalar::ZERO
    }

    fn recip(&self) -> Scalar {
        assert!(!ScalarExt::is_zero(self), "reciprocal of zero");
        Reciprocal::reciprocal(self)
    }
}

pub fn int(n: i64) -> Scalar {
    Scalar::from(n)
}

pub fn zero() -> Scalar {
    Scalar::ZERO
}

pub fn one() -> Scalar {
    Scalar::ONE
}

/// The inverse of two. Exists because the field has characteristic other than two.
pub fn half() -> Scalar {
    Scalar::from_signeds(1i64, 2i64)
}

/// `r` scaled by a positive rational to an integer vector whose entries have gcd 1.
fn primitive_integer_row(r: &[Scalar]) -> Vec<Integer> {
    let lcm = r.iter().fold(Natural::ONE, |acc, x| (&acc).lcm(x.denominator_ref()));
    let mut out: Vec<Integer> = r
        .iter()
        .map(|x| {
            let scaled = Integer::from(x.numerator_ref() * (&lcm).div_exact(x.denominator_ref()));
            if *x < 0 {
                -scaled
            } else {
                scaled
            }
        })
        .collect();
    make_primitive(&mut out);
    out
}

/// Divides an integer vector by the gcd of its entries.
fn make_primitive(v: &mut [Integer]) {
    let mut g = Natural::ZERO;
    for x in v.iter() {
        if *x != 0 {
            g = (&g).gcd(x.unsigned_abs_ref());
            if g == 1 {
                return;
            }
        }
    }
    if g != 0 {
        let g = Integer::from(g);
        for x in v.iter_mut() {
            *x = (&*x).div_exact(&g);
        }
    }
}

/// In-place Gauss–Jordan elimination. Returns the pivot columns; the first
/// `pivots.len()` rows are the nonzero rows of the reduced form and the rest
/// are zeroed.
///
/// Fraction-free: rows are scaled to primitive integer vectors, eliminated by
/// integer cross-multiplication, and divided by their pivots at the end.
pub(crate) fn reduce_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut ints: Vec<Vec<Integer>> = rows.iter().map(|r| primitive_integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == ints.len() {
            break;
        }
        let Some(p) = (next..ints.len())
            .filter(|&r| ints[r][col] != 0)
            .min_by_key(|&r| ints[r][col].significant_bits())
        else {
            continue;
        };
        ints.swap(next, p);
        let pivot_row = std::mem::take(&mut ints[next]);
        let a = &pivot_row[col];
        for row in ints.iter_mut() {
            if row.is_empty() || row[col] == 0 {
                continue;
            }
            let g = Integer::from(a.unsigned_abs_ref().gcd(row[col].unsigned_abs_ref()));
            let (sa, sb) = (a.div_exact(&g), (&row[col]).div_exact(&g));
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let scaled = &*x * &sa;
                *x = if *y == 0 { scaled } else { scaled - &sb * y };
            }
            make_primitive(row);
        }
        ints[next] = pivot_row;
        pivots.push(col);
        next += 1;
    }
    for (i, row) in rows.iter_mut().enumerate() {
        match pivots.get(i) {
            Some(&p) => {
                let d = &ints[i][p];
                for (x, n) in row.iter_mut().zip(&ints[i]) {
                    *x = Scalar::from_integers_ref(n, d);
                }
            }
            None => row.iter_mut().for_each(|x| *x = Scalar::ZERO),
        }
    }
    pivots
}

pub fn vector(entries: &[i64]) -> Vec<Scalar> {
    entries.iter().map(|&n| int(n)).collect()
}

/// Parses `-3`, `"-3/7"`, `"6/-4"` style literals. The result is always reduced
/// with a positive denominator.
pub fn parse_rational(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::parse("", format!("invalid rational literal {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: Integer = num.parse().map_err(|_| bad())?;
    let den: Integer = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(Error::parse("", format!("zero denominator in {text:?}")));
    }
    Ok(Scalar::from_integers(num, den))
}

/// `n` for integers, `n/d` otherwise, with the sign on the numerator.
pub fn format_rational(x: &Scalar) -> String {
    x.to_string()
}

/// Converts an integral scalar to `i64`, if it is one and it fits.
pub fn to_i64(x: &Scalar) -> Option<i64> {
    let n = Integer::try_from(x).ok()?;
    i64::try_from(&n).ok()
}

pub fn is_negative(x: &Scalar) -> bool {
    *x < 0
}

/// Serde adapter: serializes as a string, accepts either a JSON integer or a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Scalar);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational literal string such as \"-3/7\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
                Ok(Rational(int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
                Ok(Rational(Scalar::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
                parse_rational(v).map(Rational).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}
