//! The executable catalog: every dissection identity, characterization,
//! congruence, corollary family, and conjecture of the study, each encoded as
//! a finite-order check, aggregated into a machine-readable report.

use std::collections::HashMap;
use std::time::{Instant, SystemTime};

use serde::Serialize;

use crate::congruence::{qr_family, verify_congruence, Characterization, CongruenceClaim, FamilyKind};
use crate::expr;
use crate::factory::{
    self, indicator_series, ExponentFamily, ExponentShape, IndexRange, WeightRule,
};
use crate::series::{ExactInts, Mod, Ring, Series, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Identity,
    Congruence,
    Characterization,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified (or failed, or skipped) catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_ref: String,
    pub kind: CheckKind,
    pub order_checked: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<usize>,
    /// Milliseconds.
    pub elapsed: u128,
    /// Present on the paired checks where the printed statement and its proof
    /// disagree; names the empirically correct variant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjudication: Option<String>,
}

/// Orders and term counts per catalog section. A zero anywhere skips the
/// corresponding checks.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub lemma_order: usize,
    pub dissection2_order: usize,
    pub dissection3_order: usize,
    pub dissection4_order: usize,
    pub stepping_order: usize,
    pub mock_order: usize,
    pub apsy_order: usize,
    /// Largest coefficient index examined by the mod-4 and mod-8
    /// characterizations of p_xi(3n), p_xi(3n+1), and p_xi(4n+2).
    pub characterization_bound: usize,
    pub t7_count: usize,
    pub t8_count: usize,
    pub congruence_count: usize,
    pub family_count: usize,
    pub conjecture1_count: usize,
    pub conjecture2_count: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            lemma_order: 1000,
            dissection2_order: 600,
            dissection3_order: 600,
            dissection4_order: 400,
            stepping_order: 400,
            mock_order: 300,
            apsy_order: 400,
            characterization_bound: 15000,
            t7_count: 1000,
            t8_count: 400,
            congruence_count: 200,
            family_count: 100,
            conjecture1_count: 1000,
            conjecture2_count: 400,
        }
    }
}

impl SuiteConfig {
    /// Every order and count divided by `divisor`; pass/fail outcomes are
    /// stable under this scaling.
    pub fn scaled(divisor: usize) -> Self {
        assert!(divisor >= 1);
        let d = SuiteConfig::default();
        SuiteConfig {
            lemma_order: d.lemma_order / divisor,
            dissection2_order: d.dissection2_order / divisor,
            dissection3_order: d.dissection3_order / divisor,
            dissection4_order: d.dissection4_order / divisor,
            stepping_order: d.stepping_order / divisor,
            mock_order: d.mock_order / divisor,
            apsy_order: d.apsy_order / divisor,
            characterization_bound: d.characterization_bound / divisor,
            t7_count: d.t7_count / divisor,
            t8_count: d.t8_count / divisor,
            congruence_count: d.congruence_count / divisor,
            family_count: d.family_count / divisor,
            conjecture1_count: d.conjecture1_count / divisor,
            conjecture2_count: d.conjecture2_count / divisor,
        }
    }

    pub fn zeroed() -> Self {
        SuiteConfig {
            lemma_order: 0,
            dissection2_order: 0,
            dissection3_order: 0,
            dissection4_order: 0,
            stepping_order: 0,
            mock_order: 0,
            apsy_order: 0,
            characterization_bound: 0,
            t7_count: 0,
            t8_count: 0,
            congruence_count: 0,
            family_count: 0,
            conjecture1_count: 0,
            conjecture2_count: 0,
        }
    }
}

/// Shared expansions of the xi generating function; every section draws on
/// the same cached series, grown on demand.
#[derive(Default)]
pub struct XiCache {
    exact: Option<Series<ExactInts>>,
    modular: HashMap<u64, Series<Mod>>,
}

impl XiCache {
    pub fn new() -> Self {
        XiCache::default()
    }

    pub fn exact(&mut self, order: usize) -> &Series<ExactInts> {
        if self.exact.as_ref().is_none_or(|s| s.order() < order) {
            self.exact = Some(factory::pxi(&ExactInts, order));
        }
        self.exact.as_ref().unwrap()
    }

    pub fn modular(&mut self, modulus: u64, order: usize) -> &Series<Mod> {
        let entry = self.modular.entry(modulus);
        match entry {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                if o.get().order() < order {
                    o.insert(factory::pxi(&Mod::new(modulus), order));
                }
                o.into_mut()
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(factory::pxi(&Mod::new(modulus), order))
            }
        }
    }
}

fn skipped(id: &str, paper_ref: &str, kind: CheckKind) -> CheckResult {
    CheckResult {
        id: id.to_owned(),
        paper_ref: paper_ref.to_owned(),
        kind,
        order_checked: 0,
        status: Status::Skipped,
        first_failure: None,
        elapsed: 0,
        adjudication: None,
    }
}

/// Run a check body returning the first failing index, timing it.
fn run_check(
    id: &str,
    paper_ref: &str,
    kind: CheckKind,
    order: usize,
    body: impl FnOnce() -> Option<usize>,
) -> CheckResult {
    let start = Instant::now();
    let first_failure = body();
    CheckResult {
        id: id.to_owned(),
        paper_ref: paper_ref.to_owned(),
        kind,
        order_checked: order,
        status: if first_failure.is_none() { Status::Pass } else { Status::Fail },
        first_failure,
        elapsed: start.elapsed().as_millis(),
        adjudication: None,
    }
}

fn eval_exact(text: &str, order: usize) -> Series<ExactInts> {
    let e = expr::parse(text).expect("catalog expression parses");
    expr::evaluate(&ExactInts, &e, order).expect("catalog expression evaluates")
}

/// Exact-integer identity between two expression strings.
fn expr_identity(id: &str, paper_ref: &str, lhs: &str, rhs: &str, order: usize) -> CheckResult {
    if order == 0 {
        return skipped(id, paper_ref, CheckKind::Identity);
    }
    run_check(id, paper_ref, CheckKind::Identity, order, || {
        let l = eval_exact(lhs, order);
        let r = eval_exact(rhs, order);
        l.first_mismatch(&r, order).expect("same ring")
    })
}

/// Exact-integer identity between a prepared series and an expression string.
fn series_vs_expr(
    id: &str,
    paper_ref: &str,
    lhs: &Series<ExactInts>,
    rhs: &str,
    order: usize,
) -> CheckResult {
    run_check(id, paper_ref, CheckKind::Identity, order, || {
        let r = eval_exact(rhs, order);
        lhs.first_mismatch(&r, order).expect("same ring")
    })
}

fn congruence_check(
    id: &str,
    paper_ref: &str,
    kind: CheckKind,
    coeffs: &Series<Mod>,
    claim: &CongruenceClaim,
    count: usize,
) -> CheckResult {
    if count == 0 {
        return skipped(id, paper_ref, kind);
    }
    run_check(id, paper_ref, kind, count, || {
        let verdict = verify_congruence(coeffs, claim, count).expect("suite sizes its expansions");
        verdict.first_failure
    })
}

/// Section 2 theta-function identities used throughout the proofs.
pub fn run_preliminaries(order: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if order == 0 {
        for (id, pref) in [
            ("prelim.rama1", "Section 2, phi(q) as sum of squares and eta-quotient"),
            ("prelim.rama2", "Section 2, psi(q) as sum over triangular numbers and eta-quotient"),
            ("prelim.eq18", "Section 2, phi(-q) = f_1^2/f_2"),
            ("prelim.jacobi", "Section 2, Jacobi's identity for f_1^3"),
            ("prelim.phi_2dissec", "Section 2, 2-dissection of phi(q)"),
            ("prelim.phi2_2dissec", "Section 2, 2-dissection of phi(q)^2"),
        ] {
            out.push(skipped(id, pref, CheckKind::Identity));
        }
        return out;
    }
    let z = ExactInts;
    let squares = indicator_series(
        &z,
        &ExponentFamily {
            shape: ExponentShape::Square,
            weight: WeightRule::Constant(1),
            range: IndexRange::AllIntegers,
        },
        order,
    );
    out.push(series_vs_expr(
        "prelim.rama1",
        "Section 2, phi(q) as sum of squares and eta-quotient",
        &squares,
        "f_2^5/(f_1^2*f_4^2)",
        order,
    ));
    let triangles = indicator_series(
        &z,
        &ExponentFamily {
            shape: ExponentShape::Triangular,
            weight: WeightRule::Constant(1),
            range: IndexRange::FromZero,
        },
        order,
    );
    out.push(series_vs_expr(
        "prelim.rama2",
        "Section 2, psi(q) as sum over triangular numbers and eta-quotient",
        &triangles,
        "f_2^2/f_1",
        order,
    ));
    out.push(expr_identity(
        "prelim.eq18",
        "Section 2, phi(-q) = f_1^2/f_2",
        "phi(-q)",
        "f_1^2/f_2",
        order,
    ));
    out.push(series_vs_expr(
        "prelim.jacobi",
        "Section 2, Jacobi's identity for f_1^3",
        &factory::jacobi_cube(&z, order),
        "f_1^3",
        order,
    ));
    out.push(expr_identity(
        "prelim.phi_2dissec",
        "Section 2, 2-dissection of phi(q)",
        "phi(q)",
        "phi(q^4) + 2*q*psi(q^8)",
        order,
    ));
    out.push(expr_identity(
        "prelim.phi2_2dissec",
        "Section 2, 2-dissection of phi(q)^2",
        "phi(q)^2",
        "phi(q^2)^2 + 4*q*psi(q^4)^2",
        order,
    ));
    out
}

/// Lemma 1: the eight 2-dissection identities.
pub fn run_lemma1(order: usize) -> Vec<CheckResult> {
    let catalog: [(&str, &str, &str, &str); 8] = [
        (
            "lemma1.eq17",
            "Lemma 1, 2-dissection of 1/f_1^2",
            "1/f_1^2",
            "f_8^5/(f_2^5*f_16^2) + 2*q*f_4^2*f_16^2/(f_2^5*f_8)",
        ),
        (
            "lemma1.eq31",
            "Lemma 1, 2-dissection of f_1^2",
            "f_1^2",
            "f_2*f_8^5/(f_4^2*f_16^2) - 2*q*f_2*f_16^2/f_8",
        ),
        (
            "lemma1.eq29",
            "Lemma 1, 2-dissection of 1/f_1^4",
            "1/f_1^4",
            "f_4^14/(f_2^14*f_8^4) + 4*q*f_4^2*f_8^4/f_2^10",
        ),
        (
            "lemma1.eq08",
            "Lemma 1, 2-dissection of f_3/f_1",
            "f_3/f_1",
            "f_4*f_6*f_16*f_24^2/(f_2^2*f_8*f_12*f_48) + q*f_6*f_8^2*f_48/(f_2^2*f_16*f_24)",
        ),
        (
            "lemma1.eq09",
            "Lemma 1, 2-dissection of f_3^2/f_1^2",
            "f_3^2/f_1^2",
            "f_4^4*f_6*f_12^2/(f_2^5*f_8*f_24) + 2*q*f_4*f_6^2*f_8*f_24/(f_2^4*f_12)",
        ),
        (
            "lemma1.eq45",
            "Lemma 1, 2-dissection of f_1^3/f_3",
            "f_1^3/f_3",
            "f_4^3/f_12 - 3*q*f_2^2*f_12^3/(f_4*f_6^2)",
        ),
        (
            "lemma1.eq11",
            "Lemma 1, 2-dissection of f_3/f_1^3",
            "f_3/f_1^3",
            "f_4^6*f_6^3/(f_2^9*f_12^2) + 3*q*f_4^2*f_6*f_12^2/f_2^7",
        ),
        (
            "lemma1.eq38",
            "Lemma 1, 2-dissection of 1/(f_1 f_3)",
            "1/(f_1*f_3)",
            "f_8^2*f_12^5/(f_2^2*f_4*f_6^4*f_24^2) + q*f_4^5*f_24^2/(f_2^4*f_6^2*f_8^2*f_12)",
        ),
    ];
    catalog
        .iter()
        .map(|(id, pref, lhs, rhs)| expr_identity(id, pref, lhs, rhs, order))
        .collect()
}

/// Lemma 2: the 3-dissections of psi(q) and 1/phi(-q).
pub fn run_lemma2(order: usize) -> Vec<CheckResult> {
    let mut out = vec![
        expr_identity(
            "lemma2.psi3",
            "Lemma 2, 3-dissection of psi(q)",
            "psi(q)",
            "f_6*f_9^2/(f_3*f_18) + q*f_18^2/f_9",
        order,
        ),
        expr_identity(
            "lemma2.inv_phi_neg3",
            "Lemma 2, 3-dissection of 1/phi(-q)",
            "1/phi(-q)",
            "f_6^4*f_9^6/(f_3^8*f_18^3) + 2*q*f_6^3*f_9^3/f_3^7 + 4*q^2*f_6^2*f_18^3/f_3^6",
            order,
        ),
    ];
    let gap_ref = "Lemma 2, psi(q) has no terms q^(3n+2)";
    if order == 0 {
        out.push(skipped("lemma2.psi_gap", gap_ref, CheckKind::Identity));
    } else {
        out.push(run_check("lemma2.psi_gap", gap_ref, CheckKind::Identity, order, || {
            let psi = factory::psi(&ExactInts, order).extract(3, 2);
            (0..=psi.order()).find(|&n| !ExactInts.is_zero(psi.coeff(n)))
        }));
    }
    out
}

/// The mock theta function identities behind the whole construction.
pub fn run_mock_identities(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let n = cfg.mock_order;
    let mut out = Vec::new();
    out.push(expr_identity(
        "mock.eq1",
        "Section 2, omega(q) = g_3(q, q^2)",
        "omega(q)",
        "g3(1,2)",
        n,
    ));
    let eq2_ref = "Section 2, xi(q) via g_3(q^3, q^6) plus an eta-quotient";
    let eq3_ref = "Section 2, xi(q) = q^2 omega(q^3) + f_2^4/(f_1^2 f_6), the generating function identity";
    if n == 0 {
        out.push(skipped("mock.eq2", eq2_ref, CheckKind::Identity));
        out.push(skipped("mock.eq3", eq3_ref, CheckKind::Identity));
    } else {
        let xi_def = factory::mock_xi_definition(n);
        out.push(series_vs_expr(
            "mock.eq2",
            eq2_ref,
            &xi_def,
            "q^2*g3(3,6) + f_2^4/(f_1^2*f_6)",
            n,
        ));
        out.push(series_vs_expr(
            "mock.eq3",
            eq3_ref,
            &xi_def,
            "q^2*omega(q^3) + f_2^4/(f_1^2*f_6)",
            n,
        ));
    }
    out.push(expr_identity(
        "mock.apsy",
        "Section 3, f(q^8) + 2q omega(q) + 2q^3 omega(-q^4) = F(q)",
        "mtf(q^8) + 2*q*omega(q) + 2*q^3*omega(-q^4)",
        "F(q)",
        cfg.apsy_order,
    ));
    out.push(expr_identity(
        "mock.capital_f",
        "Section 3, F(q) as theta quotient and as eta-quotient",
        "F(q)",
        "phi(q)*phi(q^2)^2/f_4^2",
        cfg.apsy_order,
    ));
    out
}

/// The 2-, 3-, and 4-dissections of the xi generating function, plus the
/// stepping-stone identities used in the congruence proofs.
pub fn run_dissections(cache: &mut XiCache, cfg: &SuiteConfig) -> Vec<CheckResult> {
    let d2 = cfg.dissection2_order;
    let d3 = cfg.dissection3_order;
    let d4 = cfg.dissection4_order;
    let st = cfg.stepping_order;
    // Shifted constructions below need a little headroom.
    let active = |n: usize| n >= 12;

    let mut required = 0usize;
    if active(d2) {
        required = required.max(2 * d2);
    }
    if active(d3) {
        required = required.max(3 * d3 + 2);
    }
    if active(d4) {
        required = required.max(4 * d4 + 3);
    }
    if active(st) {
        required = required.max(12 * st + 10);
    }
    let xi = if required > 0 {
        cache.exact(required).clone()
    } else {
        Series::zero(&ExactInts, 0)
    };
    let prog = |step: usize, offset: usize, order: usize| -> Series<ExactInts> {
        xi.extract(step, offset).truncate(order)
    };

    let mut out = Vec::new();

    let eq36_ref = "Section 3, 2-dissection: odd part of the xi generating function";
    let eq37_ref = "Section 3, 2-dissection: even part of the xi generating function";
    let eq33_ref = "Section 3, xi generating function from F(q^3), f(q^24), omega(-q^12)";
    let eq34_ref = "Section 3, odd part before descending from q^2 to q";
    let eq35_ref = "Section 3, even part before descending from q^2 to q";
    if !active(d2) {
        for (id, pref) in [
            ("dissect2.eq36", eq36_ref),
            ("dissect2.eq37", eq37_ref),
            ("dissect2.eq33", eq33_ref),
            ("dissect2.eq34", eq34_ref),
            ("dissect2.eq35", eq35_ref),
        ] {
            out.push(skipped(id, pref, CheckKind::Identity));
        }
    } else {
        let lhs36 = prog(2, 1, d2 - 1).shift_extended(1, d2).scale(2);
        out.push(series_vs_expr(
            "dissect2.eq36",
            eq36_ref,
            &lhs36,
            "f_6^6*f_12/(f_3^4*f_24^2) - mtf(q^12) + 4*q*f_2^2*f_8^2/(f_1*f_3*f_4)",
            d2,
        ));
        let lhs37 = prog(2, 0, d2);
        out.push(series_vs_expr(
            "dissect2.eq37",
            eq37_ref,
            &lhs37,
            "q*f_6^8*f_24^2/(f_3^4*f_12^5) - q^4*omega(-q^6) + f_4^5/(f_1*f_3*f_8^2)",
            d2,
        ));
        let lhs33 = xi.truncate(d2 - 1).shift_extended(1, d2).scale(2);
        out.push(series_vs_expr(
            "dissect2.eq33",
            eq33_ref,
            &lhs33,
            "F(q^3) - mtf(q^24) - 2*q^9*omega(-q^12) + 2*q*f_2^4/(f_1^2*f_6)",
            d2,
        ));
        let lhs34 = prog(2, 1, (d2 - 2) / 2)
            .upsample(2, Sign::Plus, d2 - 2)
            .shift_extended(2, d2)
            .scale(2);
        out.push(series_vs_expr(
            "dissect2.eq34",
            eq34_ref,
            &lhs34,
            "f_12^6*f_24/(f_6^4*f_48^2) - mtf(q^24) + 4*q^2*f_4^2*f_16^2/(f_2*f_6*f_8)",
            d2,
        ));
        let lhs35 = prog(2, 0, (d2 - 1) / 2)
            .upsample(2, Sign::Plus, d2 - 1)
            .shift_extended(1, d2);
        out.push(series_vs_expr(
            "dissect2.eq35",
            eq35_ref,
            &lhs35,
            "q^3*f_12^8*f_48^2/(f_6^4*f_24^5) - q^9*omega(-q^12) + q*f_8^5/(f_2*f_6*f_16^2)",
            d2,
        ));
    }

    let d3x_ref = "Section 3, xi generating function through the 3-dissection of psi";
    let t0_refs = [
        ("dissect3.xi_3n", "Theorem (3-dissection), p_xi(3n)"),
        ("dissect3.xi_3n1", "Theorem (3-dissection), p_xi(3n+1)"),
        ("dissect3.xi_3n2", "Theorem (3-dissection), p_xi(3n+2)"),
    ];
    if !active(d3) {
        out.push(skipped("dissect3.3_dissec_xi", d3x_ref, CheckKind::Identity));
        for (id, pref) in t0_refs {
            out.push(skipped(id, pref, CheckKind::Identity));
        }
    } else {
        out.push(expr_identity(
            "dissect3.3_dissec_xi",
            d3x_ref,
            "xi(q)",
            "q^2*omega(q^3) + f_6*f_9^4/(f_3^2*f_18^2) + 2*q*f_9*f_18/f_3 + q^2*f_18^4/(f_6*f_9^2)",
            d3,
        ));
        let rhs = [
            "f_2*f_3^4/(f_1^2*f_6^2)",
            "2*f_3*f_6/f_1",
            "omega(q) + f_6^4/(f_2*f_3^2)",
        ];
        for (r, ((id, pref), rhs)) in t0_refs.iter().zip(rhs).enumerate() {
            out.push(series_vs_expr(id, pref, &prog(3, r, d3), rhs, d3));
        }
    }

    let t6_refs = [
        ("dissect4.xi_4n", "Theorem (4-dissection), p_xi(4n)"),
        ("dissect4.xi_4n1", "Theorem (4-dissection), p_xi(4n+1)"),
        ("dissect4.xi_4n2", "Theorem (4-dissection), p_xi(4n+2)"),
        ("dissect4.xi_4n3", "Theorem (4-dissection), p_xi(4n+3)"),
    ];
    if !active(d4) {
        for (id, pref) in t6_refs {
            out.push(skipped(id, pref, CheckKind::Identity));
        }
    } else {
        let rhs = [
            "4*q^2*f_12^6/(f_3^2*f_6^3) - q^2*omega(-q^3) + f_2^4*f_6^5/(f_1^2*f_3^4*f_12^2)",
            "2*q*f_6^3*f_12^2/f_3^4 + 2*f_4^4*f_6^5/(f_2^2*f_3^4*f_12^2)",
            "f_6^9/(f_3^6*f_12^2) + f_2^10*f_12^2/(f_1^4*f_3^2*f_4^4*f_6)",
        ];
        for (r, ((id, pref), rhs)) in t6_refs.iter().take(3).zip(rhs).enumerate() {
            out.push(series_vs_expr(id, pref, &prog(4, r, d4), rhs, d4));
        }
        let lhs43 = prog(4, 3, d4 - 1).shift_extended(1, d4).scale(2);
        out.push(series_vs_expr(
            t6_refs[3].0,
            t6_refs[3].1,
            &lhs43,
            "f_6^15/(f_3^8*f_12^6) - mtf(q^6) + 4*q*f_2^4*f_12^2/(f_1^2*f_3^2*f_6)",
            d4,
        ));
    }

    let step_refs = [
        ("stepping.eq46", "Proof of the mod-8 relation, p_xi(6n+4)", 6usize, 4usize),
        ("stepping.eq28", "Proof of the p_xi(12n+1) characterization, p_xi(6n+1)", 6, 1),
        ("stepping.eq10", "Proof of the mod-3 congruences, p_xi(12n+7)", 12, 7),
        ("stepping.eq16", "Proof of the mod-3 congruences, p_xi(9n+6)", 9, 6),
        ("stepping.eq30_printed", "Proof of the mod-8 congruences, p_xi(12n+10), as printed", 12, 10),
        ("stepping.eq30_derived", "Proof of the mod-8 congruences, p_xi(12n+10), exponent of f_6 corrected", 12, 10),
    ];
    let step_rhs = [
        "2*f_3^2*f_4^2*f_24/(f_1^2*f_8*f_12)",
        "2*f_2*f_3^2*f_8*f_12^2/(f_1^2*f_4*f_6*f_24)",
        "4*f_3*f_4^2*f_6/f_1^3",
        "4*f_6^3/f_1^2",
        "4*f_2^3*f_3^2*f_12^2/(f_1^4*f_6)",
        "4*f_2^3*f_3^2*f_12^2/(f_1^4*f_6^2)",
    ];
    let eq15_ref = "Proof of the mod-3 congruences, p_xi(9n+6) before descending from q^3 to q";
    if !active(st) {
        for (id, pref, _, _) in step_refs {
            out.push(skipped(id, pref, CheckKind::Identity));
        }
        out.push(skipped("stepping.eq15", eq15_ref, CheckKind::Identity));
    } else {
        for ((id, pref, step, offset), rhs) in step_refs.iter().zip(step_rhs) {
            out.push(series_vs_expr(id, pref, &prog(*step, *offset, st), rhs, st));
        }
        let lhs15 = prog(9, 6, (st - 2) / 3)
            .upsample(3, Sign::Plus, st - 2)
            .shift_extended(2, st);
        out.push(series_vs_expr(
            "stepping.eq15",
            eq15_ref,
            &lhs15,
            "4*q^2*f_18^3/f_3^2",
            st,
        ));
    }
    adjudicate_pair(&mut out, "stepping.eq30_printed", "stepping.eq30_derived");

    out
}

fn square_flags(bound: usize) -> Vec<bool> {
    // flags[n] = true when 3n+1 is a perfect square; k^2 = 3n+1 needs 3 to
    // not divide k.
    let mut flags = vec![false; bound + 1];
    let mut k = 1usize;
    while k * k <= 3 * bound + 1 {
        if !k.is_multiple_of(3) {
            flags[(k * k - 1) / 3] = true;
        }
        k += 1;
    }
    flags
}

/// The complete residue characterizations modulo 4 and 8.
pub fn run_characterizations(cache: &mut XiCache, cfg: &SuiteConfig) -> Vec<CheckResult> {
    let bound = cfg.characterization_bound;
    let mut out = Vec::new();

    let t2_ref = "Theorem: p_xi(3n) mod 4 is supported on squares";
    let t3n1_ref = "Theorem: p_xi(3n+1) mod 4 is 2 exactly when 3n+1 is a square";
    let t4n2_printed_ref = "Theorem: p_xi(4n+2) mod 4, residue as printed";
    let t4n2_derived_ref = "Theorem: p_xi(4n+2) mod 4, residue from the proof's 2 f_12";
    let eq44_ref = "Proof step: p_xi(4n+2) generating function is 2 f_12 mod 4";
    let t4_ref = "Theorem: p_xi(3n) mod 8 via squares and their 2-, 3-, 6-fold dilates";
    let t4disj_ref = "Supporting fact: k^2, 2k^2, 3k^2, 6k^2 are pairwise disjoint for n >= 1";
    let t7_ref = "Theorem: p_xi(12n+4) = p_xi(3n+1) mod 8";
    let t8a_ref = "Theorem: p_xi(12n+1) mod 8 supported on generalized pentagonal n = k(3k-1)";
    let t8b_ref = "Theorem: p_xi(48n+4) mod 8, same support";

    if bound < 4 {
        for (id, pref) in [
            ("char.t2", t2_ref),
            ("char.3n1", t3n1_ref),
            ("char.4n2_printed", t4n2_printed_ref),
            ("char.4n2_derived", t4n2_derived_ref),
            ("char.eq44", eq44_ref),
            ("char.t4", t4_ref),
            ("char.t4_disjoint", t4disj_ref),
        ] {
            out.push(skipped(id, pref, CheckKind::Characterization));
        }
    } else {
        let count3 = bound / 3 + 1;
        let count31 = (bound - 1) / 3 + 1;
        let count4 = (bound - 2) / 4 + 1;
        let xi4 = cache.modular(4, bound).clone();

        let t2_claim = CongruenceClaim {
            step: 3,
            offset: 0,
            modulus: 4,
            characterization: Some(Characterization {
                constant: 1,
                family: ExponentFamily {
                    shape: ExponentShape::Square,
                    weight: WeightRule::Constant(2),
                    range: IndexRange::FromOne,
                },
            }),
        };
        out.push(congruence_check(
            "char.t2",
            t2_ref,
            CheckKind::Characterization,
            &xi4,
            &t2_claim,
            count3,
        ));

        out.push(run_check("char.3n1", t3n1_ref, CheckKind::Characterization, count31, || {
            let flags = square_flags(count31 - 1);
            let got = xi4.extract(3, 1);
            (0..count31).find(|&n| {
                let want = if flags[n] { 2 } else { 0 };
                *got.coeff(n) != want
            })
        }));

        for (id, pref, weight) in [
            ("char.4n2_printed", t4n2_printed_ref, WeightRule::SignedConstant(1)),
            ("char.4n2_derived", t4n2_derived_ref, WeightRule::SignedConstant(2)),
        ] {
            let claim = CongruenceClaim {
                step: 4,
                offset: 2,
                modulus: 4,
                characterization: Some(Characterization {
                    constant: 0,
                    family: ExponentFamily {
                        shape: ExponentShape::DoublePentagonal,
                        weight,
                        range: IndexRange::AllIntegers,
                    },
                }),
            };
            out.push(congruence_check(
                id,
                pref,
                CheckKind::Characterization,
                &xi4,
                &claim,
                count4,
            ));
        }
        adjudicate_pair(&mut out, "char.4n2_printed", "char.4n2_derived");

        out.push(run_check("char.eq44", eq44_ref, CheckKind::Characterization, count4, || {
            let ring = Mod::new(4);
            let want = factory::euler_product(&ring, 12, count4 - 1).scale(2);
            let got = xi4.extract(4, 2).truncate(count4 - 1);
            got.first_mismatch(&want, count4 - 1).expect("same ring")
        }));

        let xi8 = cache
            .modular(8, bound.max(12 * cfg.t7_count + 4).max(48 * cfg.t8_count + 4))
            .clone();
        out.push(run_check("char.t4", t4_ref, CheckKind::Characterization, count3, || {
            let ring = Mod::new(8);
            let b = count3 - 1;
            let mut want = Series::one(&ring, b);
            for fam in [
                ExponentFamily {
                    shape: ExponentShape::Square,
                    weight: WeightRule::SignedConstant(6),
                    range: IndexRange::FromOne,
                },
                ExponentFamily {
                    shape: ExponentShape::TwoSquare,
                    weight: WeightRule::Constant(4),
                    range: IndexRange::FromOne,
                },
                ExponentFamily {
                    shape: ExponentShape::ThreeSquare,
                    weight: WeightRule::Constant(4),
                    range: IndexRange::FromOne,
                },
                ExponentFamily {
                    shape: ExponentShape::SixSquare,
                    weight: WeightRule::Constant(4),
                    range: IndexRange::FromOne,
                },
            ] {
                want = want.add(&indicator_series(&ring, &fam, b)).expect("same ring");
            }
            let got = xi8.extract(3, 0).truncate(b);
            got.first_mismatch(&want, b).expect("same ring")
        }));

        out.push(run_check("char.t4_disjoint", t4disj_ref, CheckKind::Characterization, bound, || {
            let mut hits = vec![0u8; bound + 1];
            for scale in [1usize, 2, 3, 6] {
                let mut k = 1usize;
                while scale * k * k <= bound {
                    hits[scale * k * k] += 1;
                    k += 1;
                }
            }
            (1..=bound).find(|&n| hits[n] > 1)
        }));

        if cfg.t7_count == 0 {
            out.push(skipped("char.t7", t7_ref, CheckKind::Characterization));
        } else {
            let c = cfg.t7_count;
            out.push(run_check("char.t7", t7_ref, CheckKind::Characterization, c, || {
                let a = xi8.extract(12, 4).truncate(c - 1);
                let b = xi8.extract(3, 1).truncate(c - 1);
                a.first_mismatch(&b, c - 1).expect("same ring")
            }));
        }

        let t8_char = Characterization {
            constant: 0,
            family: ExponentFamily {
                shape: ExponentShape::Pentagonal,
                weight: WeightRule::SignedConstant(2),
                range: IndexRange::AllIntegers,
            },
        };
        for (id, pref, step, offset) in [
            ("char.t8_12n1", t8a_ref, 12usize, 1usize),
            ("char.t8_48n4", t8b_ref, 48, 4),
        ] {
            let claim = CongruenceClaim {
                step,
                offset,
                modulus: 8,
                characterization: Some(t8_char),
            };
            out.push(congruence_check(
                id,
                pref,
                CheckKind::Characterization,
                &xi8,
                &claim,
                cfg.t8_count,
            ));
        }
    }

    out
}

/// Mark a printed-vs-derived pair with an adjudication note naming the
/// variant the expansion supports.
fn adjudicate_pair(results: &mut [CheckResult], printed_id: &str, derived_id: &str) {
    let status_of = |results: &[CheckResult], id: &str| {
        results.iter().find(|r| r.id == id).map(|r| r.status)
    };
    let printed = status_of(results, printed_id);
    let derived = status_of(results, derived_id);
    let note = match (printed, derived) {
        (Some(Status::Fail), Some(Status::Pass)) => {
            "the printed statement fails; the variant from the proof holds"
        }
        (Some(Status::Pass), Some(Status::Fail)) => {
            "the printed statement holds; the variant from the proof fails"
        }
        (Some(Status::Pass), Some(Status::Pass)) => "both variants hold",
        _ => "adjudication inconclusive at this order",
    };
    for r in results.iter_mut() {
        if r.id == printed_id || r.id == derived_id {
            r.adjudication = Some(note.to_owned());
        }
    }
}

struct CongEntry {
    id: &'static str,
    paper_ref: &'static str,
    step: usize,
    offset: usize,
    modulus: u64,
}

const CONGRUENCES: &[CongEntry] = &[
    CongEntry { id: "cong.eq12", paper_ref: "Theorem (mod 3): p_xi(24n+19)", step: 24, offset: 19, modulus: 3 },
    CongEntry { id: "cong.eq13", paper_ref: "Theorem (mod 3): p_xi(27n+18)", step: 27, offset: 18, modulus: 3 },
    CongEntry { id: "cong.eq14", paper_ref: "Theorem (mod 3): p_xi(72n+51)", step: 72, offset: 51, modulus: 3 },
    CongEntry { id: "cong.eq41", paper_ref: "Theorem (mod 4): p_xi(8n+6)", step: 8, offset: 6, modulus: 4 },
    CongEntry { id: "cong.eq41_2", paper_ref: "Theorem (mod 4): p_xi(16n+10)", step: 16, offset: 10, modulus: 4 },
    CongEntry { id: "cong.eq27", paper_ref: "Theorem (mod 5): p_xi(45n+33)", step: 45, offset: 33, modulus: 5 },
    CongEntry { id: "cong.eq32_printed", paper_ref: "Theorem (mod 5): p_xi(45n+41), as printed", step: 45, offset: 41, modulus: 5 },
    CongEntry { id: "cong.eq32_derived", paper_ref: "Theorem (mod 5): p_xi(45n+42), as derived in the proof", step: 45, offset: 42, modulus: 5 },
    CongEntry { id: "cong.eq42", paper_ref: "Theorem (mod 8): p_xi(16n+14)", step: 16, offset: 14, modulus: 8 },
    CongEntry { id: "cong.eq25", paper_ref: "Theorem (mod 8): p_xi(24n+13)", step: 24, offset: 13, modulus: 8 },
    CongEntry { id: "cong.eq26", paper_ref: "Theorem (mod 8): p_xi(24n+22)", step: 24, offset: 22, modulus: 8 },
    CongEntry { id: "cong.eq43", paper_ref: "Theorem (mod 9): p_xi(96n+76)", step: 96, offset: 76, modulus: 9 },
    CongEntry { id: "cong.remark_96_44", paper_ref: "Concluding remark (mod 9): p_xi(96n+44)", step: 96, offset: 44, modulus: 9 },
];

/// The individually stated Ramanujan-like congruences.
pub fn run_congruences(cache: &mut XiCache, cfg: &SuiteConfig) -> Vec<CheckResult> {
    let count = cfg.congruence_count;
    let mut out = Vec::new();
    for e in CONGRUENCES {
        if count == 0 {
            out.push(skipped(e.id, e.paper_ref, CheckKind::Congruence));
            continue;
        }
        let order = e.step * (count - 1) + e.offset;
        let series = cache.modular(e.modulus, order).clone();
        let claim = CongruenceClaim::plain(e.step, e.offset, e.modulus);
        out.push(congruence_check(
            e.id,
            e.paper_ref,
            CheckKind::Congruence,
            &series,
            &claim,
            count,
        ));
    }
    adjudicate_pair(&mut out, "cong.eq32_printed", "cong.eq32_derived");
    out
}

struct FamilyEntry {
    id: &'static str,
    paper_ref: &'static str,
    kind: FamilyKind,
    p: u64,
    /// Offsets printed in the worked examples; `None` when the source prints
    /// no explicit list for this prime.
    printed_offsets: Option<&'static [usize]>,
}

const FAMILIES: &[FamilyEntry] = &[
    FamilyEntry { id: "family.scaled3r.p5_printed", paper_ref: "Corollary (mod 4, 3(pn+r)) at p = 5, as printed", kind: FamilyKind::Scaled3r, p: 5, printed_offsets: Some(&[3, 12]) },
    FamilyEntry { id: "family.scaled3r.p7_printed", paper_ref: "Corollary (mod 4, 3(pn+r)) at p = 7, as printed", kind: FamilyKind::Scaled3r, p: 7, printed_offsets: Some(&[3, 6, 12]) },
    FamilyEntry { id: "family.scaled3r.p11", paper_ref: "Corollary (mod 4, 3(pn+r)) at p = 11", kind: FamilyKind::Scaled3r, p: 11, printed_offsets: Some(&[6, 18, 21, 24, 30]) },
    FamilyEntry { id: "family.scaled3r1.p5", paper_ref: "Corollary (mod 4, 3(pn+r)+1) at p = 5", kind: FamilyKind::Scaled3rPlus1, p: 5, printed_offsets: Some(&[7, 13]) },
    FamilyEntry { id: "family.scaled3r1.p7", paper_ref: "Corollary (mod 4, 3(pn+r)+1) at p = 7", kind: FamilyKind::Scaled3rPlus1, p: 7, printed_offsets: Some(&[10, 13, 19]) },
    FamilyEntry { id: "family.scaled3r1.p11", paper_ref: "Corollary (mod 4, 3(pn+r)+1) at p = 11", kind: FamilyKind::Scaled3rPlus1, p: 11, printed_offsets: Some(&[7, 10, 13, 19, 28]) },
    FamilyEntry { id: "family.scaled2r1.p5", paper_ref: "Corollary (mod 4, 4(pn+r)+2) at p = 5", kind: FamilyKind::Scaled2rPlus1, p: 5, printed_offsets: Some(&[6, 14]) },
    FamilyEntry { id: "family.scaled2r1.p7", paper_ref: "Corollary (mod 4, 4(pn+r)+2) at p = 7", kind: FamilyKind::Scaled2rPlus1, p: 7, printed_offsets: Some(&[6, 10, 26]) },
    FamilyEntry { id: "family.scaled2r1.p11", paper_ref: "Corollary (mod 4, 4(pn+r)+2) at p = 11", kind: FamilyKind::Scaled2rPlus1, p: 11, printed_offsets: Some(&[14, 26, 34, 38, 42]) },
    FamilyEntry { id: "family.scaled2r1.p13", paper_ref: "Corollary (mod 4, 4(pn+r)+2) at p = 13", kind: FamilyKind::Scaled2rPlus1, p: 13, printed_offsets: Some(&[10, 14, 22, 30, 38, 42]) },
    FamilyEntry { id: "family.pm1mod24.p23", paper_ref: "Corollary (mod 8, 3(pn+r), p = +-1 mod 24) at p = 23", kind: FamilyKind::PlusMinus1Mod24, p: 23, printed_offsets: Some(&[15, 21, 30, 33, 42, 45, 51, 57, 60, 63, 66]) },
    FamilyEntry { id: "family.scaled12r1.p5", paper_ref: "Corollary (mod 8, 12(pn+r)+1 and 48(pn+r)+4) at p = 5", kind: FamilyKind::Scaled12rPlus1, p: 5, printed_offsets: None },
    FamilyEntry { id: "family.scaled12r1.p7", paper_ref: "Corollary (mod 8, 12(pn+r)+1 and 48(pn+r)+4) at p = 7", kind: FamilyKind::Scaled12rPlus1, p: 7, printed_offsets: None },
];

/// The quadratic-residue corollary families at the worked-example primes.
pub fn run_families(cache: &mut XiCache, cfg: &SuiteConfig) -> Vec<CheckResult> {
    let count = cfg.family_count;
    let mut out = Vec::new();
    for e in FAMILIES {
        if count == 0 {
            out.push(skipped(e.id, e.paper_ref, CheckKind::Congruence));
            continue;
        }
        let claims = qr_family(e.kind, e.p).expect("catalog primes are valid per kind");
        let needed = claims
            .iter()
            .map(|c| c.step * (count - 1) + c.offset)
            .max()
            .unwrap_or(0);
        let modulus = claims.first().map(|c| c.modulus).unwrap_or(4);
        let series = cache.modular(modulus, needed).clone();
        out.push(run_check(e.id, e.paper_ref, CheckKind::Congruence, count, || {
            if let Some(printed) = e.printed_offsets {
                let offsets: Vec<usize> = claims.iter().map(|c| c.offset).collect();
                if offsets != printed {
                    let mismatch = offsets
                        .iter()
                        .zip(printed)
                        .position(|(a, b)| a != b)
                        .unwrap_or_else(|| offsets.len().min(printed.len()));
                    return Some(mismatch);
                }
            }
            for claim in &claims {
                let verdict =
                    verify_congruence(&series, claim, count).expect("suite sizes its expansions");
                if let Some(n) = verdict.first_failure {
                    return Some(n);
                }
            }
            None
        }));
    }

    // The printed p = 5 and p = 7 offset lists for the 3(pn+r) corollary are
    // produced by the condition "3r is a nonresidue", but the supporting
    // theorem leaves p_xi(3n) nonzero mod 4 exactly when n is a square, so the
    // sound condition is "r is a nonresidue". The two conditions agree when 3
    // is a residue mod p (e.g. p = 11) and are complementary otherwise.
    let derived: &[(&str, &str, u64, &[usize])] = &[
        ("family.scaled3r.p5_derived", "Corollary (mod 4, 3(pn+r)) at p = 5, residues corrected per the supporting theorem", 5, &[6, 9]),
        ("family.scaled3r.p7_derived", "Corollary (mod 4, 3(pn+r)) at p = 7, residues corrected per the supporting theorem", 7, &[9, 15, 18]),
    ];
    for &(id, pref, p, offsets) in derived {
        if count == 0 {
            out.push(skipped(id, pref, CheckKind::Congruence));
            continue;
        }
        let step = 3 * p as usize;
        let needed = step * (count - 1) + offsets.iter().max().copied().unwrap_or(0);
        let series = cache.modular(4, needed).clone();
        out.push(run_check(id, pref, CheckKind::Congruence, count, || {
            for &offset in offsets {
                let claim = CongruenceClaim::plain(step, offset, 4);
                let verdict =
                    verify_congruence(&series, &claim, count).expect("suite sizes its expansions");
                if let Some(n) = verdict.first_failure {
                    return Some(n);
                }
            }
            None
        }));
    }
    adjudicate_pair(&mut out, "family.scaled3r.p5_printed", "family.scaled3r.p5_derived");
    adjudicate_pair(&mut out, "family.scaled3r.p7_printed", "family.scaled3r.p7_derived");
    out
}

/// The two concluding conjectures, checked to finite order only; a pass means
/// conjecture-consistent, never proved.
pub fn run_conjectures(cache: &mut XiCache, cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let conj_family = |weight: i64| ExponentFamily {
        shape: ExponentShape::TripleTriangular,
        weight: WeightRule::Constant(weight),
        range: IndexRange::FromZero,
    };

    let c1_ref = "Conjecture 1: p_xi(8n+3) mod 3 supported on 3k(k+1)/2";
    if cfg.conjecture1_count == 0 {
        out.push(skipped("conj.1", c1_ref, CheckKind::Conjecture));
    } else {
        let count = cfg.conjecture1_count;
        let series = cache.modular(3, 8 * (count - 1) + 3).clone();
        let claim = CongruenceClaim {
            step: 8,
            offset: 3,
            modulus: 3,
            characterization: Some(Characterization { constant: 0, family: conj_family(2) }),
        };
        out.push(congruence_check("conj.1", c1_ref, CheckKind::Conjecture, &series, &claim, count));
    }

    let c2_ref = "Conjecture 2: p_xi(32n+12) mod 9 supported on 3k(k+1)/2";
    let impl_ref = "Concluding remark: Conjecture 2 implies the mod-9 congruences at 96n+76 and 96n+44";
    if cfg.conjecture2_count == 0 {
        out.push(skipped("conj.2", c2_ref, CheckKind::Conjecture));
        out.push(skipped("conj.2_implies", impl_ref, CheckKind::Conjecture));
    } else {
        let count = cfg.conjecture2_count;
        let series = cache.modular(9, 32 * (count - 1) + 12).clone();
        let claim = CongruenceClaim {
            step: 32,
            offset: 12,
            modulus: 9,
            characterization: Some(Characterization { constant: 0, family: conj_family(6) }),
        };
        out.push(congruence_check("conj.2", c2_ref, CheckKind::Conjecture, &series, &claim, count));

        // 96n+76 = 32(3n+2)+12 and 96n+44 = 32(3n+1)+12, so the implication
        // needs the conjectured right-hand side to be a series in q^3.
        out.push(run_check("conj.2_implies", impl_ref, CheckKind::Conjecture, count, || {
            let ind = indicator_series(&ExactInts, &conj_family(6), count);
            (0..=count).find(|&n| n % 3 != 0 && !ExactInts.is_zero(ind.coeff(n)))
        }));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite_version: String,
    pub generated_at: String,
    pub config: SuiteConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    /// True when a non-conjecture, non-adjudicated check failed.
    pub fn has_blocking_failure(&self) -> bool {
        self.results.iter().any(|r| {
            r.status == Status::Fail && r.kind != CheckKind::Conjecture && r.adjudication.is_none()
        })
    }
}

/// Run the whole catalog and assemble the report, results sorted by id.
pub fn full_report(cfg: &SuiteConfig) -> Report {
    let mut cache = XiCache::new();
    let mut results = Vec::new();
    results.extend(run_preliminaries(cfg.lemma_order));
    results.extend(run_lemma1(cfg.lemma_order));
    results.extend(run_lemma2(cfg.lemma_order));
    results.extend(run_mock_identities(cfg));
    results.extend(run_dissections(&mut cache, cfg));
    results.extend(run_characterizations(&mut cache, cfg));
    results.extend(run_congruences(&mut cache, cfg));
    results.extend(run_families(&mut cache, cfg));
    results.extend(run_conjectures(&mut cache, cfg));
    results.sort_by(|a, b| a.id.cmp(&b.id));
    let summary = Summary {
        pass: results.iter().filter(|r| r.status == Status::Pass).count(),
        fail: results.iter().filter(|r| r.status == Status::Fail).count(),
        skipped: results.iter().filter(|r| r.status == Status::Skipped).count(),
    };
    Report {
        suite_version: env!("CARGO_PKG_VERSION").to_owned(),
        generated_at: humantime::format_rfc3339_seconds(SystemTime::now()).to_string(),
        config: cfg.clone(),
        results,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_config_skips_everything() {
        let report = full_report(&SuiteConfig::zeroed());
        assert!(report.results.iter().all(|r| r.status == Status::Skipped));
        assert_eq!(report.summary.pass, 0);
        assert_eq!(report.summary.fail, 0);
        assert_eq!(report.summary.skipped, report.results.len());
        assert!(!report.has_blocking_failure());
    }

    #[test]
    fn small_full_report_is_clean_and_sorted() {
        let report = full_report(&SuiteConfig::scaled(10));
        assert!(!report.has_blocking_failure());
        let ids: Vec<&str> = report.results.iter().map(|r| r.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        let mut unique = ids.clone();
        unique.dedup();
        assert_eq!(ids, unique);
        for r in &report.results {
            match r.status {
                Status::Fail => {
                    assert!(r.first_failure.is_some(), "{} fails without an index", r.id);
                    assert!(r.adjudication.is_some(), "{} is an unexpected failure", r.id);
                }
                _ => assert!(r.first_failure.is_none(), "{} carries a stray index", r.id),
            }
        }
    }

    #[test]
    fn adjudicated_pairs_resolve_to_the_proof_variants() {
        let mut cache = XiCache::new();
        let cfg = SuiteConfig::scaled(10);
        let congs = run_congruences(&mut cache, &cfg);
        let by_id = |v: &[CheckResult], id: &str| {
            v.iter().find(|r| r.id == id).map(|r| r.status).unwrap()
        };
        assert_eq!(by_id(&congs, "cong.eq32_printed"), Status::Fail);
        assert_eq!(by_id(&congs, "cong.eq32_derived"), Status::Pass);
        let chars = run_characterizations(&mut cache, &cfg);
        assert_eq!(by_id(&chars, "char.4n2_printed"), Status::Fail);
        assert_eq!(by_id(&chars, "char.4n2_derived"), Status::Pass);
    }

    #[test]
    fn mutated_identity_fails_with_small_index() {
        let r = expr_identity(
            "test.mutation",
            "perturbed exponent",
            "1/f_1^2",
            "f_8^5/(f_2^5*f_16^2) + 2*q*f_4^3*f_16^2/(f_2^5*f_8)",
            50,
        );
        assert_eq!(r.status, Status::Fail);
        assert!(r.first_failure.unwrap() < 10);
    }

    #[test]
    fn report_serializes_with_expected_fields() {
        let report = full_report(&SuiteConfig::zeroed());
        let json = serde_json::to_value(&report).unwrap();
        for key in ["suite_version", "generated_at", "config", "results", "summary"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        let first = &json["results"][0];
        for key in ["id", "paper_ref", "kind", "order_checked", "status", "elapsed"] {
            assert!(first.get(key).is_some(), "missing result field {key}");
        }
        assert!(first.get("first_failure").is_none());
    }
}
