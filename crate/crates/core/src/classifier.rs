//! The decision engine: given the genus g of the prime Fano 3-fold V and
//! the class of a smooth curve C on an anticanonical K3 member S, validate
//! the admissibility constraints, orchestrate the lattice, cohomology and
//! flag modules, and emit a full [`DeformationReport`].

use crate::cohomology::Entry;
use crate::error::{Error, Result};
use crate::flag::{self, EQuality, Trilean};
use crate::lattice::{EType, LatticeContext};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The class of C in Pic S = Z·h + Z·E, split by the three admissible shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveCase {
    /// C ~ n·h: a complete intersection in S.
    CompleteIntersection { n: i64 },
    /// C ~ a·h + b·E with E a line of V (h·E = 1).
    WithLine { a: i64, b: i64 },
    /// C ~ a·h + b·E with E a conic of V (h·E = 2).
    WithConic { a: i64, b: i64 },
}

impl CurveCase {
    pub fn kind(&self) -> &'static str {
        match self {
            CurveCase::CompleteIntersection { .. } => "complete_intersection",
            CurveCase::WithLine { .. } => "with_line",
            CurveCase::WithConic { .. } => "with_conic",
        }
    }

    /// Coefficients (alpha, beta) of the class of C.
    pub fn class_coefficients(&self) -> (i64, i64) {
        match *self {
            CurveCase::CompleteIntersection { n } => (n, 0),
            CurveCase::WithLine { a, b } | CurveCase::WithConic { a, b } => (a, b),
        }
    }

    fn e_type(&self) -> EType {
        match self {
            // E plays no role for a complete intersection; any kind works
            CurveCase::CompleteIntersection { .. } | CurveCase::WithConic { .. } => EType::Conic,
            CurveCase::WithLine { .. } => EType::Line,
        }
    }

    /// Check the admissibility constraints, normalizing b = 0 inputs to the
    /// complete-intersection shape. Returns the effective case plus notices.
    pub fn validated(self) -> Result<(CurveCase, Vec<String>)> {
        let mut notices = Vec::new();
        let case = match self {
            CurveCase::WithLine { a, b: 0 } | CurveCase::WithConic { a, b: 0 } => {
                notices.push(format!(
                    "b = 0: the class {a}h is a complete intersection in S; reclassified"
                ));
                CurveCase::CompleteIntersection { n: a }
            }
            other => other,
        };
        match case {
            CurveCase::CompleteIntersection { n } => {
                if n < 1 {
                    return Err(Error::ConstraintViolated {
                        case: case.to_string(),
                        constraint: "n >= 1".into(),
                        reason: "C must be a nonzero effective curve class".into(),
                    });
                }
            }
            CurveCase::WithLine { a, b } => {
                if a < 0 || b < 0 {
                    return Err(Error::ConstraintViolated {
                        case: case.to_string(),
                        constraint: "a >= 0 and b >= 0".into(),
                        reason: "coefficients of an effective class on S".into(),
                    });
                }
                if (a, b) == (0, 1) {
                    return Err(Error::CurveIsE {
                        kind: "line".into(),
                        dim_hilb_at_e: 1,
                    });
                }
                if a < 2 * b {
                    return Err(Error::ConstraintViolated {
                        case: case.to_string(),
                        constraint: "a >= 2b".into(),
                        reason: "C.E = a - 2b must be non-negative for a curve C != E".into(),
                    });
                }
            }
            CurveCase::WithConic { a, b } => {
                if a < 0 || b < 0 {
                    return Err(Error::ConstraintViolated {
                        case: case.to_string(),
                        constraint: "a >= 0 and b >= 0".into(),
                        reason: "coefficients of an effective class on S".into(),
                    });
                }
                if (a, b) == (0, 1) {
                    return Err(Error::CurveIsE {
                        kind: "conic".into(),
                        dim_hilb_at_e: 2,
                    });
                }
                if a < b {
                    return Err(Error::ConstraintViolated {
                        case: case.to_string(),
                        constraint: "a >= b".into(),
                        reason: "C.E = 2(a - b) must be non-negative for a curve C != E".into(),
                    });
                }
            }
        }
        Ok((case, notices))
    }
}

impl fmt::Display for CurveCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CurveCase::CompleteIntersection { n } => write!(f, "complete intersection {n}h"),
            CurveCase::WithLine { a, b } => write!(f, "line case {a}h+{b}E"),
            CurveCase::WithConic { a, b } => write!(f, "conic case {a}h+{b}E"),
        }
    }
}

/// Everything the engine decides about the deformations of C in V.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationReport {
    pub genus: i64,
    pub case: CurveCase,
    /// d(C) = C·h.
    pub degree: i64,
    /// Arithmetic genus g(C).
    pub genus_c: i64,
    /// χ of the flag normal object, g + g(C).
    pub chi_flag: i64,
    /// h¹ of the flag normal object.
    pub h1_flag: Entry,
    /// h¹(S, D) for D = C − h.
    pub h1_sd: Entry,
    /// Local dimension of the flag scheme at (C, S).
    pub dim_flag: i64,
    /// Local dimension of the Hilbert scheme at \[C\].
    pub dim_hilb_at_c: i64,
    /// h⁰(C, N_{C/V}).
    pub h0_nc: Entry,
    pub stably_degenerate: bool,
    pub obstructed: bool,
    /// Whether \[C\] sits on a generically non-reduced component.
    pub non_reduced_component: bool,
    pub notices: Vec<String>,
    pub derivation: Vec<String>,
}

fn validate_catalog_genus(g: i64) -> Result<()> {
    if g == 11 {
        return Err(Error::InvalidGenus {
            genus: g,
            reason: "genus 11 does not occur among prime Fano 3-folds".into(),
        });
    }
    if !LatticeContext::is_catalog_genus(g) {
        return Err(Error::InvalidGenus {
            genus: g,
            reason: "the genus of a prime Fano 3-fold lies in 2..=10 or equals 12".into(),
        });
    }
    Ok(())
}

/// Closed-form local dimension of the Hilbert scheme at \[C\], per case.
pub fn closed_form_dim(g: i64, case: &CurveCase) -> i64 {
    match *case {
        CurveCase::CompleteIntersection { n } if n >= 2 => (n * n + 1) * (g - 1) + 3,
        CurveCase::CompleteIntersection { .. } => 2 * g,
        CurveCase::WithLine { a, b } => (a * a + 1) * (g - 1) + b * (a - b) + 2,
        CurveCase::WithConic { a, b } => (a * a + 1) * g - (a - b) * (a - b) + 1,
    }
}

/// Closed-form arithmetic genus of C, per case.
pub fn closed_form_genus(g: i64, case: &CurveCase) -> i64 {
    match *case {
        CurveCase::CompleteIntersection { n } => n * n * (g - 1) + 1,
        CurveCase::WithLine { a, b } => a * a * (g - 1) + a * b - b * b + 1,
        CurveCase::WithConic { a, b } => a * a * g - (a - b) * (a - b) + 1,
    }
}

/// Closed-form degree d(C), per case.
pub fn closed_form_degree(g: i64, case: &CurveCase) -> i64 {
    let (alpha, beta) = case.class_coefficients();
    let he = match case.e_type() {
        EType::Line => 1,
        EType::Conic => 2,
    };
    alpha * (2 * g - 2) + beta * he
}

/// Classify the deformation behavior of C in V.
pub fn classify(g: i64, case: CurveCase) -> Result<DeformationReport> {
    validate_catalog_genus(g)?;
    let (case, notices) = case.validated()?;
    let ctx = LatticeContext::new(g, case.e_type())?;

    let (alpha, beta) = case.class_coefficients();
    let curve = ctx.divisor(alpha, beta);
    let degree = curve.degree();
    let genus_c = curve.arith_genus();
    let inv = flag::invariants_for(g, &case, &ctx)?;

    let dim_hilb_at_c = match case {
        CurveCase::CompleteIntersection { n } if n >= 2 => inv.dim_flag,
        CurveCase::CompleteIntersection { .. } => inv.dim_flag - 1,
        _ => inv.chi_flag,
    };

    let obstructed = match case {
        CurveCase::CompleteIntersection { .. } => false,
        CurveCase::WithLine { .. } | CurveCase::WithConic { .. } => {
            let quality = match case.e_type() {
                EType::Line => EQuality::GoodLine,
                EType::Conic => EQuality::GoodConic,
            };
            match flag::obstruction_criterion(&case, &ctx, quality)? {
                Trilean::True => true,
                Trilean::False => false,
                Trilean::Unknown => {
                    return Err(Error::InferenceIncomplete {
                        what: format!("obstructedness of {case}"),
                    })
                }
            }
        }
    };

    // The independently derived answers must match the closed forms.
    assert_eq!(degree, closed_form_degree(g, &case), "degree paths disagree");
    assert_eq!(genus_c, closed_form_genus(g, &case), "genus paths disagree");
    assert_eq!(
        dim_hilb_at_c,
        closed_form_dim(g, &case),
        "dimension paths disagree"
    );
    let diagonal_conic = matches!(case, CurveCase::WithConic { a, b } if a == b && a >= 2);
    assert_eq!(obstructed, diagonal_conic, "obstruction paths disagree");
    if obstructed {
        assert_eq!(inv.h1_sd, Entry::Known(1));
        assert_eq!(inv.h0_nc, Entry::Known(inv.dim_s_maximal + 1));
    }
    if inv.h1_flag == Entry::Known(0) && inv.h1_sd == Entry::Known(0) {
        assert_eq!(inv.h0_nc, Entry::Known(inv.dim_flag));
    }
    let excess = dim_hilb_at_c - inv.chi_flag;
    let ci_big = matches!(case, CurveCase::CompleteIntersection { n } if n >= 2);
    assert!(excess == i64::from(ci_big), "dimension dichotomy violated");

    let non_reduced_component = obstructed;

    let mut derivation = vec![
        format!(
            "lattice: h^2 = {}, h.E = {}, E^2 = -2 (g = {g}, E a {})",
            ctx.h_squared(),
            ctx.h_dot_e(),
            ctx.e_type()
        ),
        format!("curve class C = {curve}"),
        format!("degree d(C) = C.h = {degree}"),
        format!("genus g(C) = C^2/2 + 1 = {genus_c}"),
        format!(
            "chi of the flag normal object = (h^2)/2 + g(C) + 1 = g + g(C) = {}",
            inv.chi_flag
        ),
    ];
    match case {
        CurveCase::CompleteIntersection { n } => derivation.push(format!(
            "h1 of the flag pair = 1; flag scheme fibers over |{n}h| over the anticanonical system: dim = (g+1) + (n^2(g-1)+1) = {}",
            inv.dim_flag
        )),
        _ => derivation.push(format!(
            "h1 of the flag pair = 0 (good {} certificate: E rigid, h1(S,E) = 0, E does not lift sideways); flag scheme nonsingular of dim chi = {}",
            ctx.e_type(),
            inv.dim_flag
        )),
    }
    let d = curve - ctx.h();
    derivation.push(format!("D = C - h = {d}; h1(S, D) = {}", inv.h1_sd));
    derivation.push(format!("h0(C, N_C/V) = {}", inv.h0_nc));
    let dim_formula = match case {
        CurveCase::CompleteIntersection { n } if n >= 2 => {
            format!("(n^2+1)(g-1)+3 with n = {n}")
        }
        CurveCase::CompleteIntersection { .. } => "2g".to_string(),
        CurveCase::WithLine { .. } => "(a^2+1)(g-1)+b(a-b)+2".to_string(),
        CurveCase::WithConic { .. } => "(a^2+1)g-(a-b)^2+1".to_string(),
    };
    derivation.push(format!(
        "dim Hilb at [C] = {dim_hilb_at_c} (closed form {dim_formula})"
    ));
    if obstructed {
        derivation.push(
            "obstructed: E.D = -2, h1(S, D-3E) = 0, and the twisted normal projection for E is not onto (N_E/V trivial)"
                .to_string(),
        );
        derivation.push(format!(
            "h0(N_C/V) = dim + 1 along a family of maximal dimension {}: the component through [C] is generically non-reduced",
            inv.dim_s_maximal
        ));
    } else {
        derivation.push(
            "unobstructed: the S-maximal family through [C] is a generically smooth component"
                .to_string(),
        );
    }
    derivation.push("stably degenerate: deformations of C stay on deformations of S".to_string());

    Ok(DeformationReport {
        genus: g,
        case,
        degree,
        genus_c,
        chi_flag: inv.chi_flag,
        h1_flag: inv.h1_flag,
        h1_sd: inv.h1_sd,
        dim_flag: inv.dim_flag,
        dim_hilb_at_c,
        h0_nc: inv.h0_nc,
        stably_degenerate: true,
        obstructed,
        non_reduced_component,
        notices,
        derivation,
    })
}

/// One row of the non-reduced-component ledger: the tower of families
/// conics Γ' → pairs (E, S) → curves W, with the numeric invariants of the
/// general member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MumfordFamilyRow {
    pub genus: i64,
    /// Dimension of the family of good conics on V.
    pub dim_conic_family: i64,
    /// Dimension of the family of pairs (E, S): a P^(g-2)-bundle over it.
    pub dim_pair_family: i64,
    /// Dimension of the curve family W: a P^(4g+1)-bundle over the pairs.
    pub dim_w: i64,
    pub degree: i64,
    pub genus_c: i64,
    pub h0_nc: i64,
}

/// The ledger row for genus g: W has dimension 5g+1 while h⁰(N_{C/V}) = 5g+2.
pub fn mumford_family_row(g: i64) -> Result<MumfordFamilyRow> {
    validate_catalog_genus(g)?;
    let row = MumfordFamilyRow {
        genus: g,
        dim_conic_family: 2,
        dim_pair_family: 2 + (g - 2),
        dim_w: (2 + (g - 2)) + (4 * g + 1),
        degree: 4 * g,
        genus_c: 4 * g + 1,
        h0_nc: 5 * g + 2,
    };
    let report = classify(g, CurveCase::WithConic { a: 2, b: 2 })?;
    assert_eq!(row.dim_w, report.dim_hilb_at_c);
    assert_eq!(row.degree, report.degree);
    assert_eq!(row.genus_c, report.genus_c);
    assert_eq!(Entry::Known(row.h0_nc), report.h0_nc);
    assert!(report.non_reduced_component);
    Ok(row)
}

/// A single disagreement between the two computation paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub genus: i64,
    pub case: String,
    pub field: String,
    pub via_chi_path: i64,
    pub via_closed_form: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCount {
    pub kind: String,
    pub obstructed: bool,
    pub count: u64,
}

/// Outcome of a verification sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub genera: Vec<i64>,
    pub a_max: i64,
    pub b_max: i64,
    pub cases_total: u64,
    pub normalization_notices: u64,
    pub counts: Vec<CaseCount>,
    pub discrepancies: Vec<Discrepancy>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Re-derive every report field along two independent routes over a finite
/// grid and collect any disagreement. Discrepancies are data, not errors:
/// the report carries them all.
///
/// The grid per genus: complete intersections n ≤ a_max; line classes with
/// 1 ≤ b ≤ b_max and 2b ≤ a ≤ 2·a_max; conic classes with 1 ≤ b ≤ b_max and
/// b ≤ a ≤ a_max; plus the b = 0 cells of both kinds, which exercise the
/// normalization path.
pub fn cross_check(genera: &[i64], a_max: i64, b_max: i64) -> SweepReport {
    let genera: Vec<i64> = genera
        .iter()
        .copied()
        .filter(|&g| LatticeContext::is_catalog_genus(g))
        .collect();
    let mut cases_total = 0;
    let mut notices = 0;
    let mut discrepancies = Vec::new();
    let mut counts: BTreeMap<(String, bool), u64> = BTreeMap::new();

    for &g in &genera {
        let mut cells: Vec<CurveCase> = Vec::new();
        for n in 1..=a_max {
            cells.push(CurveCase::CompleteIntersection { n });
        }
        for b in 1..=b_max {
            for a in (2 * b)..=(2 * a_max) {
                cells.push(CurveCase::WithLine { a, b });
            }
            for a in b..=a_max {
                cells.push(CurveCase::WithConic { a, b });
            }
        }
        for a in 1..=a_max {
            cells.push(CurveCase::WithLine { a, b: 0 });
            cells.push(CurveCase::WithConic { a, b: 0 });
        }

        for cell in cells {
            let report = classify(g, cell).expect("grid cell must be admissible");
            cases_total += 1;
            notices += report.notices.len() as u64;
            let case = report.case;
            *counts
                .entry((case.kind().to_string(), report.obstructed))
                .or_insert(0) += 1;

            let mut check = |field: &str, lhs: i64, rhs: i64| {
                if lhs != rhs {
                    discrepancies.push(Discrepancy {
                        genus: g,
                        case: case.to_string(),
                        field: field.into(),
                        via_chi_path: lhs,
                        via_closed_form: rhs,
                    });
                }
            };

            check("degree", report.degree, closed_form_degree(g, &case));
            check("genus_c", report.genus_c, closed_form_genus(g, &case));
            check(
                "dim_hilb_at_c",
                report.dim_hilb_at_c,
                closed_form_dim(g, &case),
            );
            check("chi_flag", report.chi_flag, g + closed_form_genus(g, &case));
            let h0 = report.h0_nc.known().expect("h0 pinned on the grid");
            check(
                "h0_nc",
                h0,
                closed_form_dim(g, &case) + i64::from(report.obstructed),
            );
            let diagonal = matches!(case, CurveCase::WithConic { a, b } if a == b && a >= 2);
            check(
                "obstructed",
                i64::from(report.obstructed),
                i64::from(diagonal),
            );
        }
    }

    SweepReport {
        genera,
        a_max,
        b_max,
        cases_total,
        normalization_notices: notices,
        counts: counts
            .into_iter()
            .map(|((kind, obstructed), count)| CaseCount {
                kind,
                obstructed,
                count,
            })
            .collect(),
        discrepancies,
    }
}

/// The genera that occur among prime Fano 3-folds, in increasing order.
pub fn catalog_genera() -> Vec<i64> {
    (2..=12).filter(|&g| g != 11).collect()
}
