//! Dimension and obstruction bookkeeping for a flag pair (C, S) — a curve C
//! on the anticanonical K3 surface S — inside the Hilbert-flag scheme of V,
//! and for the point \[C\] of the Hilbert scheme of V.

use crate::classifier::CurveCase;
use crate::cohomology::{self, Entry};
use crate::error::{Error, Result};
use crate::lattice::{EType, LatticeContext};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Quality of the distinguished rational curve E, i.e. the splitting type of
/// its normal bundle in V. Lines are (0,−1) good or (1,−2) bad; conics are
/// (0,0) good, (1,−1), or (2,−2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EQuality {
    GoodLine,
    BadLine,
    GoodConic,
    Conic11,
    Conic22,
    NotApplicable,
}

impl fmt::Display for EQuality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EQuality::GoodLine => "good line",
            EQuality::BadLine => "bad line",
            EQuality::GoodConic => "good conic",
            EQuality::Conic11 => "conic of type (1,-1)",
            EQuality::Conic22 => "conic of type (2,-2)",
            EQuality::NotApplicable => "not applicable",
        };
        f.write_str(s)
    }
}

/// Three-valued answer for questions the engine may be unable to certify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trilean {
    True,
    False,
    Unknown,
}

/// The full flag-level invariant bundle for a pair (C, S).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagInvariants {
    /// χ of the normal object of the pair: always g + g(C).
    pub chi_flag: i64,
    /// h¹ of that normal object: 0, 1, or Unknown.
    pub h1_flag: Entry,
    /// Local dimension of the flag scheme at (C, S).
    pub dim_flag: i64,
    /// h¹(S, D) for D = C + K_V|_S.
    pub h1_sd: Entry,
    /// h⁰(C, N_{C/V}).
    pub h0_nc: Entry,
    /// Dimension of the S-maximal family of curves through \[C\].
    pub dim_s_maximal: i64,
}

/// χ of the flag normal object: (−K_V)³/2 + g(C) + 1 = g + g(C).
pub fn chi_flag(g: i64, g_c: i64) -> i64 {
    (2 * g - 2) / 2 + g_c + 1
}

/// The same χ through the additive decomposition χ(C, K_C) + χ(S, O_S(h)):
/// (g(C) − 1) + (g + 1). Kept as an independent route for cross-checks.
pub fn chi_flag_additive(g: i64, g_c: i64) -> i64 {
    (g_c - 1) + (g + 1)
}

/// Whether h¹ of the flag normal object vanishes, by certificate.
///
/// * Complete intersections always have h¹ = k (the pair deforms with the
///   curve staying a complete intersection, one direction short of the
///   expected count), so the answer is 1.
/// * For b ≥ 1 with a good line, good conic, or conic of type (1,−1), the
///   non-lifting argument applies — E is rigid on S with h¹(S, E) = 0 and
///   h¹ of the pair (E, S) vanishes — giving 0.
/// * The one bad case computed outright: C = E a bad line has h¹ = k.
/// * Otherwise no certificate exists and the answer is Unknown.
pub fn h1_flag_certificate(case: &CurveCase, e_quality: EQuality) -> Entry {
    match case {
        CurveCase::CompleteIntersection { .. } => Entry::Known(1),
        CurveCase::WithLine { a: 0, b: 1 } if e_quality == EQuality::BadLine => Entry::Known(1),
        CurveCase::WithLine { b, .. } if *b != 0 && e_quality == EQuality::GoodLine => {
            Entry::Known(0)
        }
        CurveCase::WithConic { b, .. }
            if *b != 0 && matches!(e_quality, EQuality::GoodConic | EQuality::Conic11) =>
        {
            Entry::Known(0)
        }
        _ => Entry::Unknown,
    }
}

/// Local dimension of the flag scheme at (C, S).
///
/// With h¹ = 0 the flag scheme is nonsingular of the expected dimension
/// g + g(C). In the complete-intersection case it is still nonsingular, but
/// of dimension dim|−K_V| + dim|O_S(nh)| = (g + 1) + (n²(g−1) + 1), one more
/// than χ.
pub fn dim_flag_at(g: i64, g_c: i64, h1_flag: Entry, case: &CurveCase) -> Result<i64> {
    match h1_flag {
        Entry::Unknown => Err(Error::InferenceIncomplete {
            what: "h1 of the flag normal object".into(),
        }),
        Entry::Known(0) => Ok(chi_flag(g, g_c)),
        Entry::Known(1) => {
            let CurveCase::CompleteIntersection { n } = case else {
                return Err(Error::PreconditionViolated {
                    operation: "dim_flag_at".into(),
                    detail: format!(
                        "h1 = 1 is only dimensioned for complete intersections, got {case}"
                    ),
                });
            };
            let fibration = (g + 1) + (n * n * (g - 1) + 1);
            assert_eq!(
                fibration,
                chi_flag(g, g_c) + 1,
                "fibration count must equal chi + h1"
            );
            Ok(fibration)
        }
        Entry::Known(v) => Err(Error::PreconditionViolated {
            operation: "dim_flag_at".into(),
            detail: format!("h1 of the flag normal object must be 0 or 1, got {v}"),
        }),
    }
}

/// h⁰(C, N_{C/V}) from the exact sequence
/// 0 → H⁰(N of the pair) → H⁰(C, N_{C/V}) → H¹(S, D)^∨ → 0,
/// valid when h¹ of the pair vanishes and H⁰(S, −D) = 0.
pub fn h0_normal_curve(
    dim_flag: i64,
    h1_sd: Entry,
    h1_flag: Entry,
    d_effective_nonzero: bool,
) -> Result<i64> {
    if h1_flag != Entry::Known(0) {
        return Err(Error::PreconditionViolated {
            operation: "h0_normal_curve".into(),
            detail: format!(
                "the sequence splitting h0(N_C/V) needs h1 of the pair = 0, have {h1_flag}"
            ),
        });
    }
    if !d_effective_nonzero {
        return Err(Error::PreconditionViolated {
            operation: "h0_normal_curve".into(),
            detail: "needs h0(S, -D) = 0, certified by D effective and nonzero".into(),
        });
    }
    match h1_sd {
        Entry::Known(v) => Ok(dim_flag + v),
        Entry::Unknown => Err(Error::InferenceIncomplete {
            what: "h1(S, D)".into(),
        }),
    }
}

/// Decide obstructedness of C in V.
///
/// Returns `False` (unobstructed) when h¹(S, D) = 0. Returns `True`
/// (obstructed, and stably degenerate) when the three-part criterion holds:
/// E·D = −2, h¹(S, D − 3E) = 0, and the multiplication map
/// H⁰(E, N_{E/V}(E)) → H⁰(E, N_{S/V}(E)|_E) fails to be onto — certified
/// here only for a good conic, whose trivial normal bundle is globally
/// generated. Anything else is `Unknown`.
pub fn obstruction_criterion(
    case: &CurveCase,
    ctx: &LatticeContext,
    e_quality: EQuality,
) -> Result<Trilean> {
    let h1_flag = h1_flag_certificate(case, e_quality);
    if h1_flag != Entry::Known(0) {
        return Err(Error::PreconditionViolated {
            operation: "obstruction_criterion".into(),
            detail: format!(
                "needs h1 of the flag pair = 0, certificate gives {h1_flag} for {case} with a {e_quality}"
            ),
        });
    }
    let (a, b) = match *case {
        CurveCase::WithLine { a, b } | CurveCase::WithConic { a, b } => (a, b),
        CurveCase::CompleteIntersection { .. } => unreachable!("h1_flag = 1 for these"),
    };
    let d = ctx.divisor(a - 1, b);
    if !d.effective_certificate() || d.is_zero() {
        return Err(Error::PreconditionViolated {
            operation: "obstruction_criterion".into(),
            detail: format!("D = {d} must be certified effective and nonzero"),
        });
    }

    let h1_sd = cohomology::coh_dims(&d).h1;
    if h1_sd == Entry::Known(0) {
        // the S-maximal family is a generically smooth component
        return Ok(Trilean::False);
    }

    if d.self_intersection() >= 0
        && d.intersect(&ctx.e())? == -2
        && matches!(case, CurveCase::WithConic { .. })
        && e_quality == EQuality::GoodConic
        && cohomology::h1_of_d_minus_3e(case, ctx)? == Entry::Known(0)
    {
        // obstructed; in this situation h1(S, D) is exactly one-dimensional
        assert_eq!(
            h1_sd,
            Entry::Known(1),
            "criterion fired but h1(S, D) is {h1_sd}"
        );
        return Ok(Trilean::True);
    }
    Ok(Trilean::Unknown)
}

/// Assemble the invariant bundle for an admissible, already validated case.
/// Good E is assumed (the hypothesis under which the classification runs).
pub(crate) fn invariants_for(
    g: i64,
    case: &CurveCase,
    ctx: &LatticeContext,
) -> Result<FlagInvariants> {
    let (alpha, beta) = case.class_coefficients();
    let curve = ctx.divisor(alpha, beta);
    let g_c = curve.arith_genus();
    let chi = chi_flag(g, g_c);
    debug_assert_eq!(chi, chi_flag_additive(g, g_c));

    let e_quality = match (case, ctx.e_type()) {
        (CurveCase::CompleteIntersection { .. }, _) => EQuality::NotApplicable,
        (_, EType::Line) => EQuality::GoodLine,
        (_, EType::Conic) => EQuality::GoodConic,
    };
    let h1_flag = h1_flag_certificate(case, e_quality);
    let dim_flag = dim_flag_at(g, g_c, h1_flag, case)?;

    let d = curve - ctx.h();
    let h1_sd = cohomology::coh_dims(&d).h1;

    let (h0_nc, dim_s_maximal) = match case {
        CurveCase::CompleteIntersection { n } => {
            // the S-maximal family is the image of the flag fibration; for
            // n = 1 the anticanonical pencil through C contributes a fiber
            let fiber = if *n == 1 { 1 } else { 0 };
            let dim_w = dim_flag - fiber;
            (Entry::Known(dim_w), dim_w)
        }
        _ => {
            let h0 = h0_normal_curve(dim_flag, h1_sd, h1_flag, true)?;
            (Entry::Known(h0), chi)
        }
    };

    Ok(FlagInvariants {
        chi_flag: chi,
        h1_flag,
        dim_flag,
        h1_sd,
        h0_nc,
        dim_s_maximal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conic_ctx(g: i64) -> LatticeContext {
        LatticeContext::new(g, EType::Conic).unwrap()
    }

    #[test]
    fn chi_flag_examples() {
        assert_eq!(chi_flag(3, 13), 16); // 5g+1 at g = 3
        assert_eq!(chi_flag(2, 0), 2); // conics: dim of the Fano surface
        assert_eq!(chi_flag(5, 5), 10); // C ~ h: 2g
        for g in 2..20 {
            for gc in 0..60 {
                assert_eq!(chi_flag(g, gc), chi_flag_additive(g, gc));
                assert_eq!(chi_flag(g, gc), g + gc);
            }
        }
    }

    #[test]
    fn h1_flag_certificates() {
        let conic22 = CurveCase::WithConic { a: 2, b: 2 };
        assert_eq!(
            h1_flag_certificate(&conic22, EQuality::GoodConic),
            Entry::Known(0)
        );
        assert_eq!(
            h1_flag_certificate(&conic22, EQuality::Conic11),
            Entry::Known(0)
        );
        assert_eq!(
            h1_flag_certificate(&conic22, EQuality::Conic22),
            Entry::Unknown
        );
        let ci = CurveCase::CompleteIntersection { n: 2 };
        assert_eq!(
            h1_flag_certificate(&ci, EQuality::NotApplicable),
            Entry::Known(1)
        );
        // C = E a bad line: the one bad case the theory pins exactly
        let e_itself = CurveCase::WithLine { a: 0, b: 1 };
        assert_eq!(
            h1_flag_certificate(&e_itself, EQuality::BadLine),
            Entry::Known(1)
        );
        let line = CurveCase::WithLine { a: 4, b: 2 };
        assert_eq!(
            h1_flag_certificate(&line, EQuality::GoodLine),
            Entry::Known(0)
        );
        assert_eq!(
            h1_flag_certificate(&line, EQuality::BadLine),
            Entry::Unknown
        );
        // incoherent kind/quality combinations carry no certificate
        assert_eq!(
            h1_flag_certificate(&line, EQuality::GoodConic),
            Entry::Unknown
        );
    }

    #[test]
    fn dim_flag_examples() {
        let conic = CurveCase::WithConic { a: 2, b: 2 };
        assert_eq!(dim_flag_at(3, 13, Entry::Known(0), &conic).unwrap(), 16);
        let ci2 = CurveCase::CompleteIntersection { n: 2 };
        assert_eq!(dim_flag_at(5, 17, Entry::Known(1), &ci2).unwrap(), 23);
        let line = CurveCase::WithLine { a: 2, b: 1 };
        assert_eq!(dim_flag_at(2, 6, Entry::Known(0), &line).unwrap(), 8);
        assert!(matches!(
            dim_flag_at(3, 13, Entry::Unknown, &conic),
            Err(Error::InferenceIncomplete { .. })
        ));
        assert!(matches!(
            dim_flag_at(3, 13, Entry::Known(1), &conic),
            Err(Error::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn h0_normal_curve_examples() {
        for g in [2, 3, 10, 12] {
            assert_eq!(
                h0_normal_curve(5 * g + 1, Entry::Known(1), Entry::Known(0), true).unwrap(),
                5 * g + 2
            );
        }
        assert_eq!(
            h0_normal_curve(41, Entry::Known(1), Entry::Known(0), true).unwrap(),
            42
        );
        assert_eq!(
            h0_normal_curve(13, Entry::Known(0), Entry::Known(0), true).unwrap(),
            13
        );
        assert!(matches!(
            h0_normal_curve(13, Entry::Known(0), Entry::Known(1), true),
            Err(Error::PreconditionViolated { .. })
        ));
        assert!(matches!(
            h0_normal_curve(13, Entry::Unknown, Entry::Known(0), true),
            Err(Error::InferenceIncomplete { .. })
        ));
        assert!(matches!(
            h0_normal_curve(13, Entry::Known(0), Entry::Known(0), false),
            Err(Error::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn obstruction_decisions() {
        for g in [2, 3, 7, 12] {
            let ctx = conic_ctx(g);
            let diagonal = CurveCase::WithConic { a: 2, b: 2 };
            assert_eq!(
                obstruction_criterion(&diagonal, &ctx, EQuality::GoodConic).unwrap(),
                Trilean::True,
                "g={g}"
            );
            let off = CurveCase::WithConic { a: 3, b: 2 };
            assert_eq!(
                obstruction_criterion(&off, &ctx, EQuality::GoodConic).unwrap(),
                Trilean::False
            );
            let small = CurveCase::WithConic { a: 1, b: 1 };
            assert_eq!(
                obstruction_criterion(&small, &ctx, EQuality::GoodConic).unwrap(),
                Trilean::False
            );
        }
        let line_ctx = LatticeContext::new(4, EType::Line).unwrap();
        let line = CurveCase::WithLine { a: 2, b: 1 };
        assert_eq!(
            obstruction_criterion(&line, &line_ctx, EQuality::GoodLine).unwrap(),
            Trilean::False
        );
    }

    #[test]
    fn obstruction_needs_certificates() {
        let ctx = conic_ctx(3);
        let ci = CurveCase::CompleteIntersection { n: 2 };
        assert!(matches!(
            obstruction_criterion(&ci, &ctx, EQuality::NotApplicable),
            Err(Error::PreconditionViolated { .. })
        ));
        let conic = CurveCase::WithConic { a: 2, b: 2 };
        assert!(matches!(
            obstruction_criterion(&conic, &ctx, EQuality::Conic22),
            Err(Error::PreconditionViolated { .. })
        ));
        // type (1,-1): flag certificate holds but the final map condition
        // is not certified, and h1(S, D) = 1 blocks the unobstructed route
        assert_eq!(
            obstruction_criterion(&conic, &ctx, EQuality::Conic11).unwrap(),
            Trilean::Unknown
        );
    }
}
