//! Exact intersection arithmetic on the rank-2 sublattice Z·h + Z·E of the
//! Picard group of an anticanonical K3 surface S in a prime Fano 3-fold V.
//!
//! Here h is the restriction of the hyperplane class (so h² = 2g−2 where g is
//! the genus of V), and E is a line or a conic of V lying on S, always with
//! E² = −2 and h·E = 1 (line) or 2 (conic). All arithmetic is exact; any
//! overflow is a hard failure, never a silent wraparound.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Kind of the distinguished rational curve E.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EType {
    Line,
    Conic,
}

impl fmt::Display for EType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EType::Line => write!(f, "line"),
            EType::Conic => write!(f, "conic"),
        }
    }
}

/// The intersection form on Z·h + Z·E, determined by the genus of V and the
/// kind of E. Genus 11 never occurs for a prime Fano 3-fold and is rejected
/// outright; other g ≥ 2 are accepted so that formula sweeps can range freely.
/// Binding to a concrete Fano family additionally requires
/// [`LatticeContext::is_catalog_genus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeContext {
    genus: i64,
    e_type: EType,
}

impl LatticeContext {
    /// Self-intersection of E.
    pub const E_SQUARED: i64 = -2;

    pub fn new(genus: i64, e_type: EType) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidGenus {
                genus,
                reason: "the genus of a prime Fano 3-fold is at least 2".into(),
            });
        }
        if genus == 11 {
            return Err(Error::InvalidGenus {
                genus,
                reason: "genus 11 does not occur among prime Fano 3-folds".into(),
            });
        }
        Ok(LatticeContext { genus, e_type })
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn e_type(&self) -> EType {
        self.e_type
    }

    /// h² = (−K_V)³ = 2g − 2.
    pub fn h_squared(&self) -> i64 {
        2 * self.genus - 2
    }

    /// h·E: 1 for a line, 2 for a conic.
    pub fn h_dot_e(&self) -> i64 {
        match self.e_type {
            EType::Line => 1,
            EType::Conic => 2,
        }
    }

    /// Genera that actually occur among prime Fano 3-folds: 2..=10 and 12.
    pub fn is_catalog_genus(genus: i64) -> bool {
        (2..=10).contains(&genus) || genus == 12
    }

    pub fn divisor(&self, alpha: i64, beta: i64) -> DivisorClass {
        DivisorClass {
            alpha,
            beta,
            ctx: *self,
        }
    }

    /// The hyperplane class h.
    pub fn h(&self) -> DivisorClass {
        self.divisor(1, 0)
    }

    /// The class of the rational curve E.
    pub fn e(&self) -> DivisorClass {
        self.divisor(0, 1)
    }

    pub fn zero(&self) -> DivisorClass {
        self.divisor(0, 0)
    }
}

impl fmt::Display for LatticeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={}, E={}", self.genus, self.e_type)
    }
}

/// An element alpha·h + beta·E of Pic S with exact integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    alpha: i64,
    beta: i64,
    ctx: LatticeContext,
}

fn wide(a: i64) -> i128 {
    a as i128
}

fn narrow(v: i128, what: &str) -> i64 {
    i64::try_from(v).unwrap_or_else(|_| panic!("integer overflow computing {what}: {v}"))
}

impl DivisorClass {
    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn context(&self) -> LatticeContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.alpha == 0 && self.beta == 0
    }

    /// The symmetric bilinear intersection pairing
    /// D₁·D₂ = α₁α₂ h² + (α₁β₂ + α₂β₁) h·E − 2 β₁β₂.
    pub fn intersect(&self, other: &DivisorClass) -> Result<i64> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        Ok(self.pair_unchecked(other))
    }

    fn pair_unchecked(&self, other: &DivisorClass) -> i64 {
        let hh = wide(self.ctx.h_squared());
        let he = wide(self.ctx.h_dot_e());
        let ee = wide(LatticeContext::E_SQUARED);
        let (a1, b1) = (wide(self.alpha), wide(self.beta));
        let (a2, b2) = (wide(other.alpha), wide(other.beta));
        let v = a1
            .checked_mul(a2)
            .and_then(|x| x.checked_mul(hh))
            .and_then(|x| {
                let mixed = a1.checked_mul(b2)?.checked_add(a2.checked_mul(b1)?)?;
                x.checked_add(mixed.checked_mul(he)?)
            })
            .and_then(|x| x.checked_add(b1.checked_mul(b2)?.checked_mul(ee)?))
            .expect("integer overflow in intersection pairing");
        narrow(v, "intersection number")
    }

    /// D² = D·D. Always even: the lattice is even.
    pub fn self_intersection(&self) -> i64 {
        self.pair_unchecked(self)
    }

    /// d(D) = D·h = α(2g−2) + β(h·E).
    pub fn degree(&self) -> i64 {
        self.pair_unchecked(&self.ctx.h())
    }

    /// Arithmetic genus by adjunction on the K3 (K_S trivial): D²/2 + 1.
    pub fn arith_genus(&self) -> i64 {
        let sq = self.self_intersection();
        debug_assert_eq!(sq % 2, 0, "even lattice produced an odd square");
        sq / 2 + 1
    }

    /// Sufficient certificate for effectivity: h and E are both effective,
    /// so any non-negative combination is. `false` means "not certified",
    /// not "non-effective".
    pub fn effective_certificate(&self) -> bool {
        self.alpha >= 0 && self.beta >= 0
    }

    /// Sufficient certificate for nef-and-big, by membership in the cone
    /// spanned by h and h+E (conic) or h and 2h+E (line), both of which are
    /// nef, together with D² > 0. `false` means "not certified".
    pub fn nef_big_certificate(&self) -> bool {
        let (x, y) = match self.ctx.e_type {
            EType::Conic => (self.alpha - self.beta, self.beta),
            EType::Line => (self.alpha - 2 * self.beta, self.beta),
        };
        x >= 0 && y >= 0 && (x, y) != (0, 0) && self.self_intersection() > 0
    }

    fn combine(&self, other: &DivisorClass, sign: i64) -> DivisorClass {
        assert_eq!(
            self.ctx, other.ctx,
            "divisor arithmetic across distinct lattice contexts"
        );
        DivisorClass {
            alpha: narrow(
                wide(self.alpha) + sign as i128 * wide(other.alpha),
                "divisor coefficient",
            ),
            beta: narrow(
                wide(self.beta) + sign as i128 * wide(other.beta),
                "divisor coefficient",
            ),
            ctx: self.ctx,
        }
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        self.combine(&rhs, 1)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        self.combine(&rhs, -1)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            alpha: -self.alpha,
            beta: -self.beta,
            ctx: self.ctx,
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}h{:+}E", self.alpha, self.beta)
    }
}
