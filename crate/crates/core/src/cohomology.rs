//! Rule-based inference of the cohomology dimensions (h⁰, h¹, h²) of line
//! bundles O_S(D) on the K3 surface S, for divisor classes D in the lattice
//! Z·h + Z·E.
//!
//! The engine only asserts what its rules force; every entry it cannot pin
//! stays [`Entry::Unknown`]. Downstream consumers must treat Unknown as "no
//! conclusion", never as zero. Each derived value carries a trace naming the
//! rule that produced it.
//!
//! The rules, run to a fixed point over the query class and the auxiliary
//! classes they demand (its negative and the peeling chain D − kE):
//!
//! * `zero_class` — D = 0 has (1, 0, 1).
//! * `rigid_e` — E is an irreducible rational curve with E² = −2, so it is
//!   rigid: (h⁰, h¹, h²)(E) = (1, 0, 0), and (0, 0, 1) for −E.
//! * `nef_big_vanishing` — a nef-and-big certificate kills h¹ and h² on a
//!   K3, leaving h⁰ = χ(D).
//! * `effectivity` — a certified-effective D ≠ 0 has h² = 0 and h⁰ ≥ 1
//!   (the bound is tracked separately and never promoted to a known value);
//!   if −D is certified effective and D ≠ 0 then h⁰(D) = 0.
//! * `degree_positivity` — a nonzero effective divisor has positive degree
//!   against the ample class h, so deg D ≤ 0 (and D ≠ 0) forces h⁰ = 0.
//! * `e_normality` — E is a linearly (indeed k-) normal line or conic, so
//!   the restriction H⁰(S, kh) → H⁰(E, kh|_E) is onto and h¹(kh − E) = 0
//!   for every k ≥ 1.
//! * `peel_e` — from 0 → O_S(D−E) → O_S(D) → O_E(D) → 0 with E ≅ P¹: if
//!   h¹(D−E) = h²(D−E) = 0 then h¹(D) = max(0, −D·E − 1), h²(D) = 0 and
//!   h⁰(D) = χ(D) + h¹(D).
//! * `serre_duality` — h^i(D) = h^{2−i}(−D); reflects any known entry.
//! * `chi_closure` — Riemann-Roch on a K3: h⁰ − h¹ + h² = D²/2 + 2 fills
//!   the third entry once two are known.

use crate::classifier::CurveCase;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, EType, LatticeContext};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A cohomology dimension that is either exactly known or not asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Option<i64>", into = "Option<i64>")]
pub enum Entry {
    Known(i64),
    Unknown,
}

impl Entry {
    pub fn known(self) -> Option<i64> {
        match self {
            Entry::Known(v) => Some(v),
            Entry::Unknown => None,
        }
    }

    pub fn is_known(self) -> bool {
        matches!(self, Entry::Known(_))
    }
}

impl From<Option<i64>> for Entry {
    fn from(v: Option<i64>) -> Self {
        match v {
            Some(n) => Entry::Known(n),
            None => Entry::Unknown,
        }
    }
}

impl From<Entry> for Option<i64> {
    fn from(e: Entry) -> Self {
        e.known()
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Known(v) => write!(f, "{v}"),
            Entry::Unknown => write!(f, "unknown"),
        }
    }
}

/// One derivation step: which rule pinned which entry of which class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: String,
    pub class: (i64, i64),
    pub detail: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} @ {}h{:+}E: {}",
            self.rule, self.class.0, self.class.1, self.detail
        )
    }
}

/// The triple (h⁰, h¹, h²) of O_S(D), with the derivation trace.
///
/// `h0_min` is a lower bound on h⁰ from effectivity; it is bookkeeping on
/// the side and an entry counts as known only when pinned exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohDims {
    pub h0: Entry,
    pub h1: Entry,
    pub h2: Entry,
    pub h0_min: i64,
    pub trace: Vec<TraceStep>,
}

impl CohDims {
    pub fn all_known(&self) -> bool {
        self.h0.is_known() && self.h1.is_known() && self.h2.is_known()
    }
}

/// Euler characteristic by Riemann-Roch on a K3: χ(D) = D²/2 + 2.
pub fn chi_rr(d: &DivisorClass) -> i64 {
    d.self_intersection() / 2 + 2
}

/// The rules of the engine, in the order they run by default. The fixed
/// point is order-independent; the order is exposed so tests can permute it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleId {
    ZeroClass,
    RigidE,
    NefBigVanishing,
    Effectivity,
    DegreePositivity,
    ENormality,
    PeelE,
    SerreDuality,
    ChiClosure,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::ZeroClass => "zero_class",
            RuleId::RigidE => "rigid_e",
            RuleId::NefBigVanishing => "nef_big_vanishing",
            RuleId::Effectivity => "effectivity",
            RuleId::DegreePositivity => "degree_positivity",
            RuleId::ENormality => "e_normality",
            RuleId::PeelE => "peel_e",
            RuleId::SerreDuality => "serre_duality",
            RuleId::ChiClosure => "chi_closure",
        }
    }
}

pub const DEFAULT_RULE_ORDER: [RuleId; 9] = [
    RuleId::ZeroClass,
    RuleId::RigidE,
    RuleId::NefBigVanishing,
    RuleId::Effectivity,
    RuleId::DegreePositivity,
    RuleId::ENormality,
    RuleId::PeelE,
    RuleId::SerreDuality,
    RuleId::ChiClosure,
];

/// Infer (h⁰, h¹, h²) of O_S(D) with the default rule order.
pub fn coh_dims(d: &DivisorClass) -> CohDims {
    coh_dims_ordered(d, &DEFAULT_RULE_ORDER)
}

/// Same as [`coh_dims`] but with an explicit rule order. All-known results
/// do not depend on the order; traces may.
pub fn coh_dims_ordered(d: &DivisorClass, order: &[RuleId]) -> CohDims {
    let mut engine = Engine::new(d.context(), order.to_vec());
    engine.solve(d)
}

#[derive(Debug, Clone, Copy)]
struct ClassState {
    h0: Entry,
    h1: Entry,
    h2: Entry,
    h0_min: i64,
    peel_budget: i64,
}

impl ClassState {
    fn fresh(peel_budget: i64) -> Self {
        ClassState {
            h0: Entry::Unknown,
            h1: Entry::Unknown,
            h2: Entry::Unknown,
            h0_min: 0,
            peel_budget,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Which {
    H0,
    H1,
    H2,
}

impl Which {
    fn label(self) -> &'static str {
        match self {
            Which::H0 => "h0",
            Which::H1 => "h1",
            Which::H2 => "h2",
        }
    }
}

struct Engine {
    ctx: LatticeContext,
    classes: BTreeMap<(i64, i64), ClassState>,
    trace: Vec<TraceStep>,
    order: Vec<RuleId>,
    changed: bool,
}

impl Engine {
    fn new(ctx: LatticeContext, order: Vec<RuleId>) -> Self {
        Engine {
            ctx,
            classes: BTreeMap::new(),
            trace: Vec::new(),
            order,
            changed: false,
        }
    }

    fn solve(&mut self, query: &DivisorClass) -> CohDims {
        let coords = (query.alpha(), query.beta());
        self.demand(coords);
        // Each pass either pins a new entry or extends the peeling chain by
        // one link, and both are bounded, so this iteration count saturates.
        let max_passes = query.beta().abs().max(3) + 3;
        for _ in 0..max_passes {
            self.changed = false;
            for rule in self.order.clone() {
                let keys: Vec<_> = self.classes.keys().copied().collect();
                for key in keys {
                    self.apply(rule, key);
                }
            }
            if !self.changed {
                break;
            }
        }
        let state = self.classes[&coords];
        if let Entry::Known(v) = state.h0 {
            assert!(
                v >= state.h0_min,
                "h0 = {v} below its effectivity bound {}",
                state.h0_min
            );
        }
        CohDims {
            h0: state.h0,
            h1: state.h1,
            h2: state.h2,
            h0_min: state.h0_min,
            trace: std::mem::take(&mut self.trace),
        }
    }

    fn demand(&mut self, coords: (i64, i64)) {
        let budget = coords.1.max(0) + 1;
        self.insert(coords, budget);
        let neg = (-coords.0, -coords.1);
        self.insert(neg, neg.1.max(0) + 1);
    }

    fn insert(&mut self, coords: (i64, i64), budget: i64) {
        self.classes
            .entry(coords)
            .and_modify(|s| s.peel_budget = s.peel_budget.max(budget))
            .or_insert_with(|| ClassState::fresh(budget));
    }

    fn divisor(&self, coords: (i64, i64)) -> DivisorClass {
        self.ctx.divisor(coords.0, coords.1)
    }

    fn set(&mut self, coords: (i64, i64), which: Which, value: i64, rule: RuleId, detail: &str) {
        assert!(
            value >= 0,
            "negative dimension {value} for {} of {}h{:+}E via {}",
            which.label(),
            coords.0,
            coords.1,
            rule.name()
        );
        let state = self.classes.get_mut(&coords).expect("class not demanded");
        let slot = match which {
            Which::H0 => &mut state.h0,
            Which::H1 => &mut state.h1,
            Which::H2 => &mut state.h2,
        };
        match *slot {
            Entry::Known(old) if old == value => {}
            Entry::Known(old) => panic!(
                "inconsistent rules: {} of {}h{:+}E already {old}, {} wants {value}",
                which.label(),
                coords.0,
                coords.1,
                rule.name()
            ),
            Entry::Unknown => {
                *slot = Entry::Known(value);
                self.changed = true;
                self.trace.push(TraceStep {
                    rule: rule.name().to_string(),
                    class: coords,
                    detail: format!("{} := {value} ({detail})", which.label()),
                });
            }
        }
    }

    fn raise_h0_min(&mut self, coords: (i64, i64), bound: i64, rule: RuleId, detail: &str) {
        let state = self.classes.get_mut(&coords).expect("class not demanded");
        if state.h0_min < bound {
            state.h0_min = bound;
            self.changed = true;
            self.trace.push(TraceStep {
                rule: rule.name().to_string(),
                class: coords,
                detail: format!("h0 >= {bound} ({detail})"),
            });
        }
    }

    fn apply(&mut self, rule: RuleId, coords: (i64, i64)) {
        let d = self.divisor(coords);
        match rule {
            RuleId::ZeroClass => {
                if d.is_zero() {
                    self.set(coords, Which::H0, 1, rule, "trivial bundle");
                    self.set(coords, Which::H1, 0, rule, "trivial bundle");
                    self.set(coords, Which::H2, 1, rule, "trivial bundle");
                }
            }
            RuleId::RigidE => {
                if coords == (0, 1) {
                    self.set(coords, Which::H0, 1, rule, "E rigid, E^2 = -2");
                    self.set(coords, Which::H1, 0, rule, "E rigid, E^2 = -2");
                    self.set(coords, Which::H2, 0, rule, "-E not effective");
                } else if coords == (0, -1) {
                    self.set(coords, Which::H0, 0, rule, "-E not effective");
                    self.set(coords, Which::H1, 0, rule, "dual of rigid E");
                    self.set(coords, Which::H2, 1, rule, "dual of rigid E");
                }
            }
            RuleId::NefBigVanishing => {
                if d.nef_big_certificate() {
                    let chi = chi_rr(&d);
                    self.set(coords, Which::H1, 0, rule, "nef and big on a K3");
                    self.set(coords, Which::H2, 0, rule, "nef and big on a K3");
                    self.set(coords, Which::H0, chi, rule, "h0 = chi");
                }
            }
            RuleId::Effectivity => {
                if d.is_zero() {
                    return;
                }
                if d.effective_certificate() {
                    self.set(coords, Which::H2, 0, rule, "h2 = h0(-D) = 0, D effective");
                    self.raise_h0_min(coords, 1, rule, "D effective");
                }
                if (-d).effective_certificate() {
                    self.set(coords, Which::H0, 0, rule, "-D effective and D != 0");
                }
            }
            RuleId::DegreePositivity => {
                let deg = d.degree();
                if deg < 0 || (deg == 0 && !d.is_zero()) {
                    self.set(
                        coords,
                        Which::H0,
                        0,
                        rule,
                        "degree against ample h rules out effectivity",
                    );
                }
            }
            RuleId::ENormality => {
                if coords.1 == -1 && coords.0 >= 1 {
                    self.set(
                        coords,
                        Which::H1,
                        0,
                        rule,
                        "restriction H0(kh) -> H0(E, kh|_E) is onto",
                    );
                }
            }
            RuleId::PeelE => {
                let budget = self.classes[&coords].peel_budget;
                if budget <= 0 {
                    return;
                }
                let child = (coords.0, coords.1 - 1);
                self.insert(child, budget - 1);
                self.insert((-child.0, -child.1), (-child.1).max(0) + 1);
                let below = self.classes[&child];
                if below.h1 == Entry::Known(0) && below.h2 == Entry::Known(0) {
                    let d_dot_e = d.intersect(&self.ctx.e()).expect("same context");
                    let h1 = (-d_dot_e - 1).max(0);
                    let chi = chi_rr(&d);
                    let detail = format!("restriction to E = P^1, D.E = {d_dot_e}");
                    self.set(coords, Which::H1, h1, rule, &detail);
                    self.set(coords, Which::H2, 0, rule, &detail);
                    self.set(coords, Which::H0, chi + h1, rule, "h0 = chi + h1");
                }
            }
            RuleId::SerreDuality => {
                let neg = (-coords.0, -coords.1);
                let Some(&other) = self.classes.get(&neg) else {
                    return;
                };
                let pairs = [
                    (Which::H0, other.h2),
                    (Which::H1, other.h1),
                    (Which::H2, other.h0),
                ];
                for (which, mirrored) in pairs {
                    if let Entry::Known(v) = mirrored {
                        self.set(coords, which, v, rule, "reflected from -D");
                    }
                }
            }
            RuleId::ChiClosure => {
                let state = self.classes[&coords];
                let chi = chi_rr(&d);
                match (state.h0, state.h1, state.h2) {
                    (Entry::Unknown, Entry::Known(h1), Entry::Known(h2)) => {
                        self.set(coords, Which::H0, chi + h1 - h2, rule, "h0 = chi + h1 - h2");
                    }
                    (Entry::Known(h0), Entry::Unknown, Entry::Known(h2)) => {
                        self.set(coords, Which::H1, h0 + h2 - chi, rule, "h1 = h0 + h2 - chi");
                    }
                    (Entry::Known(h0), Entry::Known(h1), Entry::Unknown) => {
                        self.set(coords, Which::H2, chi - h0 + h1, rule, "h2 = chi - h0 + h1");
                    }
                    _ => {}
                }
            }
        }
    }
}

/// h¹(S, D − 3E) for a conic-type curve class, where D = C + K_V|_S.
///
/// This is the vanishing hypothesis of the obstruction criterion. For
/// C ~ n(h + E) the class D − 3E is h − E when n = 2 and lies in the nef
/// cone when n ≥ 3, so the engine pins it to 0 in the cases the criterion
/// needs.
pub fn h1_of_d_minus_3e(case: &CurveCase, ctx: &LatticeContext) -> Result<Entry> {
    let CurveCase::WithConic { a, b } = *case else {
        return Err(Error::UnsupportedCase {
            operation: "h1_of_d_minus_3e".into(),
            detail: format!("only conic-type classes carry this certificate, got {case}"),
        });
    };
    if ctx.e_type() != EType::Conic {
        return Err(Error::UnsupportedCase {
            operation: "h1_of_d_minus_3e".into(),
            detail: "lattice context must have a conic E".into(),
        });
    }
    let d_minus_3e = ctx.divisor(a - 1, b - 3);
    Ok(coh_dims(&d_minus_3e).h1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(g: i64, e: EType) -> LatticeContext {
        LatticeContext::new(g, e).unwrap()
    }

    fn dims(g: i64, e: EType, alpha: i64, beta: i64) -> CohDims {
        coh_dims(&ctx(g, e).divisor(alpha, beta))
    }

    #[test]
    fn structure_sheaf() {
        for g in [2, 3, 12] {
            let d = dims(g, EType::Conic, 0, 0);
            assert_eq!(
                (d.h0, d.h1, d.h2),
                (Entry::Known(1), Entry::Known(0), Entry::Known(1))
            );
        }
    }

    #[test]
    fn chi_rr_examples() {
        let c = ctx(3, EType::Conic);
        assert_eq!(chi_rr(&c.zero()), 2);
        assert_eq!(chi_rr(&c.e()), 1);
        assert_eq!(chi_rr(&c.divisor(2, 2)), 14);
    }

    #[test]
    fn h_plus_2e_has_one_dimensional_h1() {
        let d = dims(3, EType::Conic, 1, 2);
        assert_eq!(
            (d.h0, d.h1, d.h2),
            (Entry::Known(5), Entry::Known(1), Entry::Known(0))
        );
        assert!(d.trace.iter().any(|s| s.rule == "peel_e"));
    }

    #[test]
    fn h_minus_e_has_no_h1() {
        for g in [2, 3, 5, 9, 12] {
            for e in [EType::Line, EType::Conic] {
                let d = dims(g, e, 1, -1);
                assert_eq!(d.h1, Entry::Known(0), "g={g} E={e}");
            }
        }
    }

    #[test]
    fn boundary_classes_of_the_family() {
        // D = (a-1)h + aE has h1 = 1 for every a >= 2
        for g in [2, 3, 7, 12] {
            for a in 2..=6 {
                let d = dims(g, EType::Conic, a - 1, a);
                assert_eq!(d.h1, Entry::Known(1), "g={g} a={a}");
            }
        }
    }

    #[test]
    fn off_diagonal_classes_have_vanishing_h1() {
        for g in [2, 5, 12] {
            for b in 1..=5i64 {
                for a in (b + 1)..=7 {
                    let d = dims(g, EType::Conic, a - 1, b);
                    assert_eq!(d.h1, Entry::Known(0), "g={g} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn nef_big_class_is_fully_known() {
        let d = dims(5, EType::Conic, 1, 1);
        assert_eq!(
            (d.h0, d.h1, d.h2),
            (Entry::Known(7), Entry::Known(0), Entry::Known(0))
        );
    }

    #[test]
    fn rigid_curve_axiom() {
        for e in [EType::Line, EType::Conic] {
            let d = dims(4, e, 0, 1);
            assert_eq!(
                (d.h0, d.h1, d.h2),
                (Entry::Known(1), Entry::Known(0), Entry::Known(0))
            );
            let n = dims(4, e, 0, -1);
            assert_eq!(
                (n.h0, n.h1, n.h2),
                (Entry::Known(0), Entry::Known(0), Entry::Known(1))
            );
        }
    }

    #[test]
    fn unknown_is_a_value_not_an_error() {
        // h - 2E at g = 5: positive degree but no effectivity information,
        // so h0 and h1 stay open while Serre pins h2.
        let d = dims(5, EType::Conic, 1, -2);
        assert_eq!(d.h0, Entry::Unknown);
        assert_eq!(d.h1, Entry::Unknown);
        assert_eq!(d.h2, Entry::Known(0));
    }

    #[test]
    fn degree_zero_class_resolves_completely() {
        // h - 2E at g = 3 has degree 0, so neither it nor its negative is
        // effective and chi closes the triple.
        let d = dims(3, EType::Conic, 1, -2);
        assert_eq!(
            (d.h0, d.h1, d.h2),
            (Entry::Known(0), Entry::Known(4), Entry::Known(0))
        );
    }

    #[test]
    fn d_minus_3e_certificate() {
        for g in [2, 3, 8, 12] {
            let c = ctx(g, EType::Conic);
            for n in 2..=6 {
                let case = CurveCase::WithConic { a: n, b: n };
                assert_eq!(
                    h1_of_d_minus_3e(&case, &c).unwrap(),
                    Entry::Known(0),
                    "g={g} n={n}"
                );
            }
        }
        // off-diagonal example: D - 3E = 2h - E
        let case = CurveCase::WithConic { a: 3, b: 2 };
        assert_eq!(
            h1_of_d_minus_3e(&case, &ctx(3, EType::Conic)).unwrap(),
            Entry::Known(0)
        );
    }

    #[test]
    fn d_minus_3e_rejects_other_kinds() {
        let c = ctx(3, EType::Conic);
        let line = CurveCase::WithLine { a: 2, b: 1 };
        assert!(matches!(
            h1_of_d_minus_3e(&line, &c),
            Err(Error::UnsupportedCase { .. })
        ));
        let ci = CurveCase::CompleteIntersection { n: 2 };
        assert!(matches!(
            h1_of_d_minus_3e(&ci, &c),
            Err(Error::UnsupportedCase { .. })
        ));
        let wrong_ctx = ctx(3, EType::Line);
        let conic = CurveCase::WithConic { a: 2, b: 2 };
        assert!(matches!(
            h1_of_d_minus_3e(&conic, &wrong_ctx),
            Err(Error::UnsupportedCase { .. })
        ));
    }

    #[test]
    fn identical_inputs_yield_identical_traces() {
        let a = dims(3, EType::Conic, 1, 2);
        let b = dims(3, EType::Conic, 1, 2);
        assert_eq!(a.trace, b.trace);
        assert_eq!(a, b);
    }
}
