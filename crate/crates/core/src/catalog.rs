//! Static classification data: the families of prime Fano 3-folds, the
//! normal-bundle taxonomy of their lines and conics, and the ledger of
//! generically non-reduced components of Mumford type across Fano indices.

use crate::classifier::{self, CurveCase};
use crate::error::{Error, Result};
use crate::lattice::EType;
use serde::{Deserialize, Serialize};

/// One deformation class of prime Fano 3-folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoFamily {
    pub genus: i64,
    /// (−K)³ = 2g − 2.
    pub anticanonical_degree: i64,
    pub model_description: &'static str,
    /// Whether the anticanonical map is 2:1 instead of an embedding.
    pub hyperelliptic: bool,
    /// Dimension g + 1 of the target projective space of the
    /// anticanonical map.
    pub embedding_target_dim: i64,
    pub footnote: Option<&'static str>,
}

const fn family(
    genus: i64,
    model_description: &'static str,
    hyperelliptic: bool,
    footnote: Option<&'static str>,
) -> FanoFamily {
    FanoFamily {
        genus,
        anticanonical_degree: 2 * genus - 2,
        model_description,
        hyperelliptic,
        embedding_target_dim: genus + 1,
    footnote,
    }
}

/// All prime Fano 3-folds up to deformation: one family per genus in
/// 2..=10 and 12, with two families at genus 3.
pub fn catalog_rows() -> Vec<FanoFamily> {
    vec![
        family(
            2,
            "V2 -> P^3: a double cover branched along a sextic surface",
            true,
            None,
        ),
        family(3, "V4 in P^4: a quartic hypersurface", false, None),
        family(
            3,
            "V4' -> (2) in P^4: a double cover of a quadric branched along its intersection with a quartic",
            true,
            None,
        ),
        family(
            4,
            "V6 in P^5: a complete intersection of a quadric and a cubic",
            false,
            None,
        ),
        family(
            5,
            "V8 in P^6: a complete intersection of three quadrics",
            false,
            None,
        ),
        family(
            6,
            "V10 in P^7: a quadratic hypersurface section of a del Pezzo 4-fold V5",
            false,
            Some("V5 is a del Pezzo 4-fold, G(2,5) in P^9 cut by P^7, or a cone over a quintic del Pezzo 3-fold"),
        ),
        family(
            7,
            "V12 in P^8: a linear section of the orthogonal Grassmannian SO(10)/U(5) in P^15",
            false,
            None,
        ),
        family(
            8,
            "V14 in P^9: a linear section of the Grassmannian G(2,6) in P^14",
            false,
            None,
        ),
        family(
            9,
            "V16 in P^10: a linear section of the symplectic Grassmannian Sp(6)/U(3) in P^13",
            false,
            None,
        ),
        family(
            10,
            "V18 in P^11: a linear section of a G2-variety in P^13",
            false,
            None,
        ),
        family(
            12,
            "V22 in P^13: a Mukai-Umemura 3-fold",
            false,
            Some("V22 is isomorphic to the variety G(3,7,N) in P^13 attached to a non-degenerate 3-dimensional subspace N of the second exterior power of k^7"),
        ),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveQuality {
    Good,
    Intermediate,
    Bad,
}

/// Splitting type of the normal bundle N_{E/V} of a line or conic E.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCurveType {
    pub kind: EType,
    /// The pair (k, −k) for conics, (k, −k−1) for lines.
    pub splitting: (i64, i64),
    pub quality: CurveQuality,
}

/// The possible splitting types: (0,−1) good and (1,−2) bad for lines;
/// (0,0) good, (1,−1), (2,−2) for conics.
pub fn rational_curve_types() -> Vec<RationalCurveType> {
    vec![
        RationalCurveType {
            kind: EType::Line,
            splitting: (0, -1),
            quality: CurveQuality::Good,
        },
        RationalCurveType {
            kind: EType::Line,
            splitting: (1, -2),
            quality: CurveQuality::Bad,
        },
        RationalCurveType {
            kind: EType::Conic,
            splitting: (0, 0),
            quality: CurveQuality::Good,
        },
        RationalCurveType {
            kind: EType::Conic,
            splitting: (1, -1),
            quality: CurveQuality::Intermediate,
        },
        RationalCurveType {
            kind: EType::Conic,
            splitting: (2, -2),
            quality: CurveQuality::Bad,
        },
    ]
}

/// Dimension of a non-reduced component, either a constant or a formula in
/// the discrete parameter of the index class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum DimFormula {
    Constant { value: i64 },
    /// 4n + 4 in the degree n of the del Pezzo 3-fold.
    DelPezzoDegree,
    /// 5g + 1 in the genus g of the prime Fano 3-fold.
    PrimeFanoGenus,
}

impl DimFormula {
    pub fn eval(self, parameter: i64) -> i64 {
        match self {
            DimFormula::Constant { value } => value,
            DimFormula::DelPezzoDegree => 4 * parameter + 4,
            DimFormula::PrimeFanoGenus => 5 * parameter + 1,
        }
    }

    pub fn display(self) -> String {
        match self {
            DimFormula::Constant { value } => value.to_string(),
            DimFormula::DelPezzoDegree => "4n+4".to_string(),
            DimFormula::PrimeFanoGenus => "5g+1".to_string(),
        }
    }
}

/// One row of the ledger of generically non-reduced components of Mumford
/// type, indexed by the Fano index r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MumfordTypeRow {
    pub index: i64,
    pub surface_class: &'static str,
    pub curve_class: Option<&'static str>,
    pub e_kind: Option<EType>,
    pub dim_w: DimFormula,
}

/// The four-row ledger across Fano indices 4, 3, 2, 1.
pub fn mumford_table() -> Vec<MumfordTypeRow> {
    vec![
        MumfordTypeRow {
            index: 4,
            surface_class: "-3/4 K",
            curve_class: None,
            e_kind: None,
            dim_w: DimFormula::Constant { value: 56 },
        },
        MumfordTypeRow {
            index: 3,
            surface_class: "-2/3 K",
            curve_class: Some("-K|_S + 2E"),
            e_kind: Some(EType::Line),
            dim_w: DimFormula::Constant { value: 42 },
        },
        MumfordTypeRow {
            index: 2,
            surface_class: "-1/2 K",
            curve_class: None,
            e_kind: None,
            dim_w: DimFormula::DelPezzoDegree,
        },
        MumfordTypeRow {
            index: 1,
            surface_class: "-K",
            curve_class: Some("-2K|_S + 2E"),
            e_kind: Some(EType::Conic),
            dim_w: DimFormula::PrimeFanoGenus,
        },
    ]
}

/// Evaluate the index-1 row at a concrete genus and confirm it against the
/// classification engine.
pub fn mumford_dim_at_genus(g: i64) -> Result<i64> {
    let formula = mumford_table()
        .into_iter()
        .find(|row| row.index == 1)
        .expect("index 1 row present")
        .dim_w;
    let expected = formula.eval(g);
    let report = classifier::classify(g, CurveCase::WithConic { a: 2, b: 2 })?;
    if report.dim_hilb_at_c != expected {
        return Err(Error::PreconditionViolated {
            operation: "mumford_dim_at_genus".into(),
            detail: format!(
                "ledger formula gives {expected} but the engine computed {}",
                report.dim_hilb_at_c
            ),
        });
    }
    Ok(expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_pinned() {
        let rows = catalog_rows();
        assert_eq!(rows.len(), 11);
        let genera: Vec<i64> = rows.iter().map(|r| r.genus).collect();
        assert_eq!(genera, vec![2, 3, 3, 4, 5, 6, 7, 8, 9, 10, 12]);
        for row in &rows {
            assert_eq!(row.anticanonical_degree, 2 * row.genus - 2);
            assert_eq!(row.embedding_target_dim, row.genus + 1);
        }
        let hyperelliptic: Vec<&str> = rows
            .iter()
            .filter(|r| r.hyperelliptic)
            .map(|r| r.model_description)
            .collect();
        assert_eq!(hyperelliptic.len(), 2);
        assert!(hyperelliptic[0].starts_with("V2"));
        assert!(hyperelliptic[1].starts_with("V4'"));
    }

    #[test]
    fn descriptions_match_the_models() {
        let rows = catalog_rows();
        let quartic = rows.iter().find(|r| r.genus == 3 && !r.hyperelliptic);
        assert!(quartic.unwrap().model_description.contains("quartic hypersurface"));
        let mu = rows.iter().find(|r| r.genus == 12).unwrap();
        assert!(mu.model_description.contains("Mukai-Umemura"));
    }

    #[test]
    fn curve_type_taxonomy() {
        let types = rational_curve_types();
        let conics: Vec<(i64, i64)> = types
            .iter()
            .filter(|t| t.kind == EType::Conic)
            .map(|t| t.splitting)
            .collect();
        assert_eq!(conics, vec![(0, 0), (1, -1), (2, -2)]);
        let lines: Vec<(i64, i64)> = types
            .iter()
            .filter(|t| t.kind == EType::Line)
            .map(|t| t.splitting)
            .collect();
        assert_eq!(lines, vec![(0, -1), (1, -2)]);
        for t in &types {
            let (k, l) = t.splitting;
            assert_eq!(k + l, if t.kind == EType::Line { -1 } else { 0 });
        }
    }

    #[test]
    fn ledger_rows() {
        let table = mumford_table();
        assert_eq!(table.len(), 4);
        assert_eq!(table[0].dim_w.eval(0), 56);
        assert_eq!(table[1].dim_w.eval(0), 42);
        assert_eq!(table[2].dim_w.eval(5), 24); // del Pezzo of degree 5
        assert_eq!(table[3].dim_w.eval(3), 16);
        assert_eq!(table[2].dim_w.display(), "4n+4");
    }

    #[test]
    fn ledger_agrees_with_the_engine() {
        for g in classifier::catalog_genera() {
            assert_eq!(mumford_dim_at_genus(g).unwrap(), 5 * g + 1);
        }
    }
}
