//! Deck legitimacy verdicts.
//!
//! Every check is a necessary condition only: `NotRefuted` never claims that
//! a compatible joint state exists.

use num::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::deck::{deck_reduced_weights, DeckDocument, DeckError, QuantumDeck};
use crate::enumerator::{
    cut_relations, even_weight_sum, krawtchouk, reduce_weights, shadow_reduced, ReducedWeightDistribution, WeightDistribution,
    WeightError,
};
use crate::lp::{LpOutcome, LpProblem, RowKind};
use crate::rational::{from_f64, int, pow2, render, Rational};
use crate::stabilizer::{classify_type, GraphType};

/// Relative slack for checks on float-derived (inexact) weights.
pub const INEXACT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LegitimacyError {
    #[error(transparent)]
    Deck(#[from] DeckError),
    #[error(transparent)]
    Weights(#[from] WeightError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Assumptions {
    /// The putative joint state is pure.
    pub pure: bool,
    /// The putative joint state is a graph (stabilizer) state.
    pub graph_state: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    pub values: Vec<String>,
}

impl CheckResult {
    fn new(name: &str, status: CheckStatus, detail: impl Into<String>, values: Vec<String>) -> Self {
        CheckResult { name: name.to_string(), status, detail: detail.into(), values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "illegitimate")]
    Illegitimate,
    #[serde(rename = "not-refuted")]
    NotRefuted,
}

impl Verdict {
    /// CLI exit code: 0 not refuted, 2 illegitimate.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::NotRefuted => 0,
            Verdict::Illegitimate => 2,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Illegitimate => "illegitimate",
            Verdict::NotRefuted => "not-refuted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateEntry {
    pub row: String,
    pub multiplier: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpReport {
    pub feasible: bool,
    /// `A_{m+1}..A_n` when feasible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    /// Nonzero row multipliers of the Farkas certificate when infeasible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<CertificateEntry>>,
    /// The witness or certificate was re-checked exactly.
    pub verified: bool,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LegitimacyReport {
    pub n: usize,
    pub m: usize,
    pub assumptions: Assumptions,
    pub exact: bool,
    pub low_weights: Vec<String>,
    pub reduced_weights: Vec<String>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp: Option<LpReport>,
    pub verdict: Verdict,
}

impl LegitimacyReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn approx_zero(v: &Rational, scale: &Rational) -> bool {
    let tol = from_f64(INEXACT_TOL).unwrap() * (scale + int(1));
    v.abs() <= tol
}

fn approx_nonneg(v: &Rational, scale: &Rational) -> bool {
    let tol = from_f64(INEXACT_TOL).unwrap() * (scale + int(1));
    *v >= -tol
}

/// Evaluates every cut relation whose support lies inside the known weights.
pub fn check_cut_relations_partial(alow: &WeightDistribution, pure: bool) -> CheckResult {
    const NAME: &str = "cut_relations";
    if !pure {
        return CheckResult::new(NAME, CheckStatus::Inconclusive, "joint purity not assumed", vec![]);
    }
    let known = alow.known_up_to();
    let mut values = Vec::new();
    let mut failed = Vec::new();
    let mut closed = 0;
    for rel in cut_relations(alow.n()) {
        let Some(top) = rel.max_index() else { continue };
        if top > known {
            values.push(format!("m={}: needs A{top}", rel.m));
            continue;
        }
        closed += 1;
        let res = rel.residual(alow.values());
        let scale: Rational = rel.coeffs.iter().zip(alow.values()).map(|(c, a)| (c * a).abs()).sum();
        let ok = if alow.is_exact() { res.is_zero() } else { approx_zero(&res, &scale) };
        values.push(format!("m={}: {} ; residual {}", rel.m, rel.render(), render(&res)));
        if !ok {
            failed.push(rel.m);
        }
    }
    if !failed.is_empty() {
        CheckResult::new(NAME, CheckStatus::Fail, format!("nonzero residual for m = {failed:?}"), values)
    } else if closed == 0 {
        CheckResult::new(NAME, CheckStatus::Inconclusive, "no relation closes on the known weights", values)
    } else {
        CheckResult::new(NAME, CheckStatus::Pass, format!("{closed} closed relation(s) hold"), values)
    }
}

/// `S_j^m >= 0` for `j = 0..m`.
pub fn check_shadow_reduced(am: &ReducedWeightDistribution) -> CheckResult {
    const NAME: &str = "shadow_reduced";
    let s = shadow_reduced(am);
    let scale: Rational = am.values.iter().map(|a| a.abs()).sum::<Rational>() * pow2(2 * am.m as i64);
    let bad: Vec<usize> = s
        .iter()
        .enumerate()
        .filter(|(_, v)| if am.exact { v.is_negative() } else { !approx_nonneg(v, &scale) })
        .map(|(j, _)| j)
        .collect();
    let values = s.iter().map(render).collect();
    if bad.is_empty() {
        CheckResult::new(NAME, CheckStatus::Pass, "all reduced shadow coefficients nonnegative", values)
    } else {
        CheckResult::new(NAME, CheckStatus::Fail, format!("negative S_j^m for j = {bad:?}"), values)
    }
}

/// Integrality implied by the stabilizer hypothesis: `A^m`, the inferred `A_j`
/// and each card's weights are integers; each card's weights sum to a power of
/// two `2^k` (the subgroup supported on the card) and its alternating sum is `0` or `2^k`.
pub fn check_stabilizer_integrality(
    am: &ReducedWeightDistribution,
    alow: &WeightDistribution,
    cards: Option<&[WeightDistribution]>,
) -> CheckResult {
    const NAME: &str = "stabilizer_integrality";
    let mut problems = Vec::new();
    let non_int = |v: &[Rational]| v.iter().enumerate().filter(|(_, x)| !x.is_integer()).map(|(j, _)| j).collect::<Vec<_>>();
    let bad = non_int(&am.values);
    if !bad.is_empty() {
        problems.push(format!("A^m non-integer at j = {bad:?}"));
    }
    let bad = non_int(alow.values());
    if !bad.is_empty() {
        problems.push(format!("A_j non-integer at j = {bad:?}"));
    }
    if let Some(cards) = cards {
        for (i, w) in cards.iter().enumerate() {
            if !non_int(w.values()).is_empty() {
                problems.push(format!("card {i}: non-integer weights {:?}", w.to_strings()));
                continue;
            }
            let total = w.total();
            let alt: Rational = w.values().iter().enumerate().map(|(j, a)| if j % 2 == 0 { a.clone() } else { -a }).sum();
            let pow = total.is_integer() && total.numer().is_positive() && (total.numer() & (total.numer() - 1u8)).is_zero();
            if !pow || !(alt.is_zero() || alt == total) {
                problems.push(format!("card {i}: weights {:?} not those of a stabilizer marginal", w.to_strings()));
            }
        }
    }
    let values = alow.to_strings();
    if !am.exact {
        return CheckResult::new(NAME, CheckStatus::Inconclusive, "weights are not exact", values);
    }
    if problems.is_empty() {
        CheckResult::new(NAME, CheckStatus::Pass, "all stabilizer counts integral", values)
    } else {
        CheckResult::new(NAME, CheckStatus::Fail, problems.join("; "), values)
    }
}

/// Passes iff `Ae ∈ {2^(n-1), 2^n}`; a failure refutes LU-equivalence to any graph state.
pub fn check_graph_type(a: &WeightDistribution) -> CheckResult {
    const NAME: &str = "graph_type";
    if !a.is_complete() {
        return CheckResult::new(NAME, CheckStatus::Inconclusive, "full distribution unknown", vec![]);
    }
    let ae = render(&even_weight_sum(a));
    match classify_type(a) {
        GraphType::NotGraphState => CheckResult::new(
            NAME,
            CheckStatus::Fail,
            format!("Ae = {ae} not in {{{}, {}}}: LU-inequivalent to graph states", pow2(a.n() as i64 - 1), pow2(a.n() as i64)),
            vec![ae],
        ),
        t => CheckResult::new(NAME, CheckStatus::Pass, format!("Ae = {ae}: {t}"), vec![ae]),
    }
}

/// Builds the completion LP over `A_{m+1}..A_n >= 0`.
pub fn completion_problem(alow: &WeightDistribution, pure: bool) -> LpProblem {
    let n = alow.n();
    let m = alow.known_up_to();
    let nv = n - m;
    let known = alow.values();
    let mut lp = LpProblem::new(nv);
    let mut rows: Vec<(String, Vec<Rational>, RowKind, Rational)> = Vec::new();
    // row: Σ_j c_j A_j (kind) 0, split into unknown coefficients and a moved constant
    let mut add = |label: String, c: &[Rational], kind: RowKind| {
        let coeffs: Vec<Rational> = c[m + 1..].to_vec();
        let constant: Rational = c[..=m].iter().zip(known).map(|(x, a)| x * a).sum();
        rows.push((label, coeffs, kind, -constant));
    };
    if pure {
        for rel in cut_relations(n).into_iter().filter(|r| !r.is_trivial()) {
            add(format!("cut m={}", rel.m), &rel.coeffs, RowKind::Eq);
        }
        // Σ A_j - 2^n = 0, the constant folded into A_0's coefficient (A_0 = 1)
        let mut c = vec![int(1); n + 1];
        c[0] = int(1) - pow2(n as i64);
        add("purity sum".into(), &c, RowKind::Eq);
    }
    for j in 0..=n {
        let c: Vec<Rational> = (0..=n)
            .map(|k| {
                let v = Rational::from_integer(krawtchouk(j, k, n));
                if k % 2 == 0 { v } else { -v }
            })
            .collect();
        add(format!("shadow S{j}"), &c, RowKind::Ge);
    }
    if !alow.is_exact() {
        // relax every row by a slack proportional to its coefficient mass
        let mut relaxed = Vec::new();
        for (label, coeffs, kind, rhs) in rows {
            let mass: Rational = coeffs.iter().map(|c| c.abs()).sum::<Rational>() + rhs.abs() + int(1);
            let eps = from_f64(INEXACT_TOL).unwrap() * mass;
            match kind {
                RowKind::Ge => relaxed.push((label, coeffs, RowKind::Ge, rhs - eps)),
                RowKind::Eq => {
                    relaxed.push((format!("{label} (lower)"), coeffs.clone(), RowKind::Ge, &rhs - &eps));
                    relaxed.push((format!("{label} (upper)"), coeffs.iter().map(|c| -c).collect(), RowKind::Ge, -rhs - eps));
                }
            }
        }
        rows = relaxed;
    }
    for (label, coeffs, kind, rhs) in rows {
        lp.push(label, coeffs, kind, rhs);
    }
    lp
}

/// Exact feasibility of completing `A_0..A_m` to a full distribution.
pub fn lp_completion(alow: &WeightDistribution, pure: bool) -> (LpProblem, LpOutcome, LpReport) {
    let lp = completion_problem(alow, pure);
    let outcome = lp.solve();
    let verified = outcome.verify(&lp);
    let report = match &outcome {
        LpOutcome::Feasible { witness } => LpReport {
            feasible: true,
            witness: Some(witness.iter().map(render).collect()),
            certificate: None,
            verified,
            rows: lp.rows.len(),
        },
        LpOutcome::Infeasible { certificate } => LpReport {
            feasible: false,
            witness: None,
            certificate: Some(
                lp.rows
                    .iter()
                    .zip(certificate)
                    .filter(|(_, l)| !l.is_zero())
                    .map(|(r, l)| CertificateEntry { row: r.label.clone(), multiplier: render(l) })
                    .collect(),
            ),
            verified,
            rows: lp.rows.len(),
        },
    };
    (lp, outcome, report)
}

fn judge_core(
    am: ReducedWeightDistribution,
    alow: WeightDistribution,
    cards: Option<Vec<WeightDistribution>>,
    assumptions: Assumptions,
) -> LegitimacyReport {
    let mut checks = vec![check_cut_relations_partial(&alow, assumptions.pure), check_shadow_reduced(&am)];
    if assumptions.graph_state {
        checks.push(check_stabilizer_integrality(&am, &alow, cards.as_deref()));
        checks.push(check_graph_type(&alow));
    }
    let lp = if alow.is_complete() && !assumptions.pure {
        None
    } else {
        Some(lp_completion(&alow, assumptions.pure).2)
    };
    let failed = checks.iter().any(|c| c.status == CheckStatus::Fail) || lp.as_ref().is_some_and(|l| !l.feasible);
    LegitimacyReport {
        n: alow.n(),
        m: am.m,
        assumptions,
        exact: alow.is_exact(),
        low_weights: alow.to_strings(),
        reduced_weights: am.values.iter().map(render).collect(),
        checks,
        lp,
        verdict: if failed { Verdict::Illegitimate } else { Verdict::NotRefuted },
    }
}

/// Full procedure on a complete deck: reduced weights, inferred low weights, checks, LP.
pub fn judge(deck: &QuantumDeck, assumptions: Assumptions) -> Result<LegitimacyReport, LegitimacyError> {
    let am = deck_reduced_weights(deck)?;
    let alow = am.infer_low_weights()?;
    let cards = if assumptions.graph_state {
        Some(deck.cards.iter().map(|c| c.weights()).collect::<Result<Vec<_>, _>>()?)
    } else {
        None
    };
    Ok(judge_core(am, alow, cards, assumptions))
}

/// Same procedure starting from known weights `A_0..A_m`.
pub fn judge_weights(alow: &WeightDistribution, assumptions: Assumptions) -> Result<LegitimacyReport, LegitimacyError> {
    let am = reduce_weights(alow, alow.known_up_to())?;
    Ok(judge_core(am, alow.clone(), None, assumptions))
}

/// Same procedure starting from deck-level reduced weights.
pub fn judge_reduced(am: &ReducedWeightDistribution, assumptions: Assumptions) -> Result<LegitimacyReport, LegitimacyError> {
    let alow = am.infer_low_weights()?;
    Ok(judge_core(am.clone(), alow, None, assumptions))
}

pub fn judge_document(doc: &DeckDocument, assumptions: Assumptions) -> Result<LegitimacyReport, LegitimacyError> {
    match doc {
        DeckDocument::Deck(d) => judge(d, assumptions),
        DeckDocument::Weights(w) => judge_weights(w, assumptions),
        DeckDocument::Reduced(r) => judge_reduced(r, assumptions),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{extract_deck, DeckSource};
    use crate::graph::Graph;
    use crate::rational::frac;

    const PURE: Assumptions = Assumptions { pure: true, graph_state: false };
    const BOTH: Assumptions = Assumptions { pure: true, graph_state: true };

    fn wd(n: usize, v: &[Rational]) -> WeightDistribution {
        WeightDistribution::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn bell_weights_fail() {
        let low = wd(3, &[int(1), int(0), int(9)]);
        let c = check_cut_relations_partial(&low, true);
        assert_eq!(c.status, CheckStatus::Fail);
        assert!(c.values[0].contains("A2 = 3"), "{:?}", c.values);
        assert_eq!(check_cut_relations_partial(&low, false).status, CheckStatus::Inconclusive);
    }

    #[test]
    fn ring_deck_not_refuted_with_true_witness() {
        let deck = extract_deck(DeckSource::Graph(&Graph::ring(5)), 3, 0).unwrap();
        let rep = judge(&deck, BOTH).unwrap();
        assert_eq!(rep.verdict, Verdict::NotRefuted, "{rep:#?}");
        assert_eq!(rep.check("cut_relations").unwrap().status, CheckStatus::Pass);
        let lp = rep.lp.unwrap();
        assert!(lp.feasible && lp.verified);
        assert_eq!(lp.witness.unwrap(), vec!["15", "6"]);
    }

    #[test]
    fn complete_pure_distribution() {
        let k3 = wd(3, &[int(1), int(0), int(3), int(4)]);
        let rep = judge_weights(&k3, BOTH).unwrap();
        assert_eq!(rep.verdict, Verdict::NotRefuted);
        assert!(rep.lp.unwrap().feasible);
        let mut bad = k3.values().to_vec();
        bad[3] = int(5);
        let rep = judge_weights(&wd(3, &bad), PURE).unwrap();
        assert_eq!(rep.verdict, Verdict::Illegitimate);
    }

    #[test]
    fn synthetic_negative_shadow() {
        // S_0^2 = 1 - A1 + A2 with A1 large
        let am = ReducedWeightDistribution::new(2, 2, vec![int(1), int(3), int(0)], true).unwrap();
        assert_eq!(check_shadow_reduced(&am).status, CheckStatus::Fail);
    }

    #[test]
    fn integrality() {
        let am = ReducedWeightDistribution::new(3, 3, vec![int(1), int(0), frac(3, 8), frac(11, 8)], true).unwrap();
        let low = am.infer_low_weights().unwrap();
        assert_eq!(check_stabilizer_integrality(&am, &low, None).status, CheckStatus::Fail);
        let prod = crate::enumerator::product_distribution(4, 2).unwrap();
        let am = reduce_weights(&prod, 2).unwrap();
        let low = am.infer_low_weights().unwrap();
        assert_eq!(check_stabilizer_integrality(&am, &low, None).status, CheckStatus::Pass);
    }

    #[test]
    fn graph_type_checks() {
        let cube = WeightDistribution::from_ints(8, &[1, 0, 0, 0, 30, 48, 96, 48, 33]).unwrap();
        let c = check_graph_type(&cube);
        assert_eq!(c.status, CheckStatus::Fail);
        assert!(c.detail.contains("LU-inequivalent to graph states"));
        assert_eq!(check_graph_type(&WeightDistribution::from_ints(3, &[1, 0, 3, 4]).unwrap()).status, CheckStatus::Pass);
        let k6 = WeightDistribution::from_ints(6, &[1, 0, 15, 0, 15, 0, 33]).unwrap();
        assert!(check_graph_type(&k6).detail.contains("type II"));
    }

    #[test]
    fn ame7_not_refuted() {
        let a = WeightDistribution::from_ints(7, &[1, 0, 0, 0, 35, 42, 28, 22]).unwrap();
        for assumptions in [PURE, BOTH, Assumptions::default()] {
            let rep = judge_weights(&a, assumptions).unwrap();
            assert_eq!(rep.verdict, Verdict::NotRefuted, "{rep:#?}");
        }
    }

    #[test]
    fn mixed_mode_drops_purity_rows() {
        let low = wd(3, &[int(1), int(0), int(9)]);
        let rep = judge_weights(&low, Assumptions::default()).unwrap();
        assert_eq!(rep.lp.as_ref().unwrap().rows, 4);
        assert_eq!(rep.check("cut_relations").unwrap().status, CheckStatus::Inconclusive);
    }
}
