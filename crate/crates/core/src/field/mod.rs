//! Exact scalar fields.
//!
//! A [`Field`] is a small context object (it carries the modulus or the
//! irreducible polynomial) and elements are plain values. All arithmetic goes
//! through the context so that the same generic code runs over GF(2^k),
//! GF(p), the rationals and the symbolic rational-function field.

mod gf2k;
mod gfp;
mod rational;

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

pub use gf2k::Gf2k;
pub use gfp::{is_prime_u64, Gfp, DEFAULT_PRIME};
pub use rational::Rationals;

pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a += b * c`, the inner loop of every elimination.
    fn mul_add_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        let t = self.mul(b, c);
        *a = self.add(a, &t);
    }

    fn matrix_rank(&self, m: &Matrix<Self>) -> usize
    where
        Self: Sized,
    {
        linalg::gauss_rank(self, m)
    }

    fn matrix_det(&self, m: &Matrix<Self>) -> Self::Elem
    where
        Self: Sized,
    {
        linalg::gauss_det(self, m)
    }

    /// `(det m, 1/det m)`, or `None` when `m` is singular.
    fn det_and_inverse(&self, m: &Matrix<Self>) -> Option<(Self::Elem, Self::Elem)>
    where
        Self: Sized,
    {
        let d = self.matrix_det(m);
        let inv = self.inv(&d).ok()?;
        Some((d, inv))
    }

    /// Errors once a symbolic size budget has been exceeded.
    fn check_budget(&self) -> Result<()> {
        Ok(())
    }

    /// Reads back what [`Field::format`] writes.
    fn parse(&self, s: &str) -> Result<Self::Elem>;
}

/// Serialized as `gf2k:32`, `gfp:4611686018427387847`, `rat` or `symbolic`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Gf2k { k: u32 },
    Gfp { p: u64 },
    Rational,
    Symbolic,
}

impl FieldDescriptor {
    pub const DEFAULT: FieldDescriptor = FieldDescriptor::Gf2k { k: 32 };

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Gf2k { .. } | FieldDescriptor::Symbolic => 2,
            FieldDescriptor::Gfp { p } => *p,
            FieldDescriptor::Rational => 0,
        }
    }

    pub fn default_gfp() -> Self {
        FieldDescriptor::Gfp { p: DEFAULT_PRIME }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Gf2k { k } => write!(f, "gf2k:{k}"),
            FieldDescriptor::Gfp { p } => write!(f, "gfp:{p}"),
            FieldDescriptor::Rational => write!(f, "rat"),
            FieldDescriptor::Symbolic => write!(f, "symbolic"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rat" | "rational" | "q" => return Ok(FieldDescriptor::Rational),
            "symbolic" => return Ok(FieldDescriptor::Symbolic),
            "gf2k" => return Ok(FieldDescriptor::Gf2k { k: 32 }),
            "gfp" => return Ok(FieldDescriptor::default_gfp()),
            _ => {}
        }
        let bad = || Error::Input(format!("unknown field descriptor `{s}`"));
        let (tag, arg) = s.split_once(':').ok_or_else(bad)?;
        match tag {
            "gf2k" => {
                let k: u32 = arg.parse().map_err(|_| bad())?;
                Gf2k::new(k)?;
                Ok(FieldDescriptor::Gf2k { k })
            }
            "gfp" => {
                let p: u64 = arg.parse().map_err(|_| bad())?;
                Gfp::new(p)?;
                Ok(FieldDescriptor::Gfp { p })
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Runs `$body` with `$f` bound to the concrete numeric field named by a
/// descriptor. Symbolic descriptors need a variable context and are rejected.
#[macro_export]
macro_rules! with_field {
    ($desc:expr, |$f:ident| $body:expr) => {{
        match $desc {
            $crate::field::FieldDescriptor::Gf2k { k } => {
                let $f = $crate::field::Gf2k::new(k)?;
                $body
            }
            $crate::field::FieldDescriptor::Gfp { p } => {
                let $f = $crate::field::Gfp::new(p)?;
                $body
            }
            $crate::field::FieldDescriptor::Rational => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldDescriptor::Symbolic => {
                return Err($crate::error::Error::Input(
                    "this operation needs a numeric field, not `symbolic`".into(),
                )
                .into())
            }
        }
    }};
}
