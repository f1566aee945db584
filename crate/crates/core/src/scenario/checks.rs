//! Running every applicable check on a scenario and assembling a report.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Comparison, Scenario};
use crate::algebra::Simplicity;
use crate::ext::Ext;
use crate::par::Strategy;
use crate::pattern::oracle::{stable_by_scan, total_by_scan, Window};
use crate::pattern::Comparison as IdealComparison;
use crate::value::{ValuationMachinery, ValueError};

pub const REPORT_SCHEMA: u32 = 1;

/// Largest prime-field dimension for which the non-homogeneous ideal search
/// runs.
const SIMPLICITY_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub scenario: String,
    pub seed: u64,
    pub window: Window,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    /// Wall time; left out of JSON so reports are byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {} (seed {}, window [{}, {}])", self.scenario, self.seed, self.window.lo, self.window.hi);
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skip",
            };
            let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.detail);
        }
        let verdict = if self.passed { "all checks passed" } else { "some checks failed" };
        let _ = writeln!(out, "{verdict} in {:.2?}", self.elapsed);
        out
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub seed: u64,
    /// Values scanned by the predicate oracles, the positives corollary
    /// and the cyclic-generator search.
    pub window: Window,
    /// Values used for the exhaustive axiom pairs.
    pub axiom_window: Window,
    pub random_triples: usize,
    /// Random elements outside `R` fed to the Dubrovin witness.
    pub dubrovin_samples: usize,
    pub strategy: Strategy,
    /// Check groups to run; empty means all of them.
    pub groups: Vec<&'static str>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 0,
            window: Window::DEFAULT,
            axiom_window: Window::symmetric(3),
            random_triples: 1000,
            dubrovin_samples: 50,
            strategy: Strategy::default(),
            groups: Vec::new(),
        }
    }
}

impl CheckOptions {
    /// Wider windows for `--slow` runs.
    pub fn slow() -> Self {
        CheckOptions { window: Window::SLOW, axiom_window: Window::DEFAULT, ..Default::default() }
    }

    fn wants(&self, group: &str) -> bool {
        self.groups.is_empty() || self.groups.contains(&group)
    }
}

struct Collector {
    checks: Vec<CheckOutcome>,
}

impl Collector {
    fn push(&mut self, name: impl Into<String>, status: CheckStatus, detail: impl Into<String>) {
        self.checks.push(CheckOutcome { name: name.into(), status, detail: detail.into() });
    }

    fn verdict(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail);
    }

    /// Pass unless an expectation exists and disagrees with `actual`.
    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, actual: T, expected: Option<T>, detail: String) {
        match expected {
            Some(e) if e != actual => self.push(name, CheckStatus::Fail, format!("{detail} (expected {e:?})")),
            _ => self.push(name, CheckStatus::Pass, detail),
        }
    }

    fn skip(&mut self, name: &str, why: impl Into<String>) {
        self.push(name, CheckStatus::Skipped, why);
    }
}

fn bounds_from_names(s: &Scenario, named: &std::collections::BTreeMap<String, Ext>) -> Vec<Ext> {
    let grp = s.parent().groupoid();
    let mut out = vec![Ext::PosInf; grp.len()];
    for (name, b) in named {
        if let Ok(g) = grp.lookup(name) {
            out[g] = *b;
        }
    }
    out
}

/// Runs the requested check groups in dependency order: structure,
/// predicates, ideals, residue, valuation, elements, order, dubrovin.
pub fn run_checks(s: &Scenario, opts: &CheckOptions) -> Report {
    let start = Instant::now();
    let mut c = Collector { checks: Vec::new() };
    let q = s.parent().clone();
    let r = &s.ring;
    let e = &s.expect;

    if opts.wants("structure") {
        let tw = q.validate();
        let counted: usize = tw.conditions.iter().map(|k| k.checked).sum();
        c.expect(
            "twist",
            tw.passed() && q.is_g_skewfield(),
            e.skewfield,
            format!("all four twist conditions hold on {counted} instances"),
        );
        c.expect("g-simple", q.is_g_simple(), e.g_simple, format!("{} connected component(s)", q.groupoid().connected_components().classes.len()));
        let dim = q.groupoid().len() * q.field().degree();
        if dim <= SIMPLICITY_LIMIT || e.simple.is_some() || e.nonhomogeneous_ideal.is_some() {
            let simp = q.simplicity();
            let witness = q.nonhomogeneous_ideal_witness();
            let detail = match (&simp, &witness) {
                (Simplicity::Simple, _) => "simple".to_string(),
                (Simplicity::NotSimple(w), _) => format!("not simple: {}", serde_json::to_string(w).unwrap_or_default()),
                (Simplicity::Undetermined(why), _) => format!("undetermined: {why}"),
            };
            c.expect("simplicity", simp == Simplicity::Simple, e.simple, detail);
            match witness {
                Ok(w) => c.expect(
                    "non-homogeneous ideal",
                    w.is_some(),
                    e.nonhomogeneous_ideal,
                    w.map(|w| format!("witness {}", serde_json::to_string(&w).unwrap_or_default()))
                        .unwrap_or_else(|| "none found".into()),
                ),
                Err(err) => c.verdict("non-homogeneous ideal", e.nonhomogeneous_ideal.is_none(), err.to_string()),
            }
        } else {
            c.skip("simplicity", format!("dimension {dim} above {SIMPLICITY_LIMIT}"));
        }
        let pr = r.validate();
        c.verdict("subring", pr.passed, format!("{} inequalities, bounds {}", pr.checked, r));
    }

    let total = r.is_g_total().unwrap_or(false);
    let stable = r.is_g_stable().unwrap_or(false);
    if opts.wants("predicates") {
        for (name, closed, scan, expected) in [
            ("g-total", r.g_total_verdict(), total_by_scan(r, opts.window, opts.strategy), e.g_total),
            ("g-stable", r.g_stable_verdict(), stable_by_scan(r, opts.window, opts.strategy), e.g_stable),
        ] {
            match (closed, scan) {
                (Ok(a), Ok(b)) if a.holds != b.holds => {
                    c.push(name, CheckStatus::Fail, format!("closed form says {}, window scan says {}", a.holds, b.holds))
                }
                (Ok(a), Ok(_)) => {
                    let detail = match &a.witness {
                        None => "holds (closed form and window scan agree)".to_string(),
                        Some((g, m)) => format!(
                            "fails at {g}{} (closed form and window scan agree)",
                            m.map(|m| format!(" value {m}")).unwrap_or_default()
                        ),
                    };
                    c.expect(name, a.holds, expected, detail)
                }
                (Err(err), _) | (_, Err(err)) => c.push(name, CheckStatus::Fail, err.to_string()),
            }
        }
    }

    if opts.wants("ideals") {
        for (name, ideal) in &s.ideals {
            match ideal.is_cyclic(opts.window) {
                Ok(generator) => {
                    let detail = match &generator {
                        Some(h) => format!("{ideal} is generated by {}", q.format_element(h)),
                        None => format!("{ideal} has no single generator π^m·u_g in the window"),
                    };
                    c.expect(&format!("cyclic {name}"), generator.is_some(), e.cyclic.get(name).copied(), detail);
                }
                Err(err) => c.push(format!("cyclic {name}"), CheckStatus::Fail, err.to_string()),
            }
        }
        for [a, b] in &e.incomparable_ideals {
            let name = format!("incomparable {a} {b}");
            let find = |n: &str| s.ideals.iter().find(|(k, _)| k == n).map(|(_, p)| p);
            match (find(a), find(b)) {
                (Some(i), Some(j)) => match i.ideal_compare(j) {
                    Ok(IdealComparison::Incomparable { i_not_in_j, j_not_in_i }) => c.push(
                        name,
                        CheckStatus::Pass,
                        format!("{a} ⊄ {b} at {i_not_in_j:?}, {b} ⊄ {a} at {j_not_in_i:?}"),
                    ),
                    Ok(other) => c.push(name, CheckStatus::Fail, format!("comparable: {other:?}")),
                    Err(err) => c.push(name, CheckStatus::Fail, err.to_string()),
                },
                _ => c.push(name, CheckStatus::Fail, "ideal not defined in the scenario"),
            }
        }
    }

    if opts.wants("residue") {
        if total {
            match r.positives() {
                Ok(m) => c.push("positives", CheckStatus::Pass, format!("M = {m}")),
                Err(err) => c.push("positives", CheckStatus::Fail, err.to_string()),
            }
            match r.residue_skewfield() {
                Ok(res) => {
                    let support = res.support_names();
                    let ok_support = e.residue_support.as_ref().is_none_or(|want| *want == support);
                    let ok_simple = e.residue_simple.is_none_or(|want| want == res.is_simple_artinian());
                    c.verdict(
                        "residue",
                        res.ring.is_g_skewfield() && ok_support && ok_simple,
                        format!(
                            "R/M over {:?} with support {support:?}, simple artinian: {}",
                            res.ring.field().kind,
                            res.is_simple_artinian()
                        ),
                    );
                }
                Err(err) => c.skip("residue", err.to_string()),
            }
        } else {
            c.skip("residue", "the ring is not G-total");
        }
    }

    let machinery = if total && stable {
        Some(ValuationMachinery::build(r))
    } else if let Some(pairs) = &s.gbar_order {
        let pairs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Some(ValuationMachinery::build_unchecked(r).and_then(|v| v.with_gbar_order(&pairs)))
    } else {
        None
    };
    let machinery = match machinery {
        Some(Ok(v)) => Some(v),
        Some(Err(err)) => {
            c.push("valuation", CheckStatus::Fail, err.to_string());
            None
        }
        None => None,
    };
    let is_valuation_ring = total && stable;

    if opts.wants("valuation") {
        match &machinery {
            Some(v) => valuation_checks(&mut c, s, v, is_valuation_ring, opts),
            None => c.skip("valuation", "the ring is not a G-valuation ring"),
        }
    }

    if opts.wants("elements") && !s.elements.is_empty() {
        match &machinery {
            Some(v) => element_checks(&mut c, s, v),
            None => c.skip("values", "no valuation"),
        }
    }

    if opts.wants("order") {
        if let Some(v) = &machinery {
            if s.gbar_order.is_some() || e.order_valid.is_some() {
                let rep = v.gbar().order().validate();
                let ok = rep.partial_order && rep.compatible && rep.ordered;
                c.expect(
                    "gbar order",
                    ok,
                    e.order_valid,
                    format!(
                        "partial order: {}, compatible: {}, ordered: {}",
                        rep.partial_order, rep.compatible, rep.ordered
                    ),
                );
            }
        }
    }

    if opts.wants("dubrovin") {
        match (&machinery, e.dubrovin.as_deref()) {
            (Some(v), expected) if is_valuation_ring => dubrovin_checks(&mut c, v, expected, opts),
            (_, Some(expected)) => c.push("dubrovin", CheckStatus::Fail, format!("expected {expected} but no valuation was built")),
            _ => c.skip("dubrovin", "the ring is not a G-valuation ring"),
        }
    }

    let passed = c.checks.iter().all(|k| k.status != CheckStatus::Fail);
    Report {
        schema: REPORT_SCHEMA,
        tool: "gradval",
        version: env!("CARGO_PKG_VERSION"),
        scenario: s.name.clone(),
        seed: opts.seed,
        window: opts.window,
        passed,
        checks: c.checks,
        elapsed: start.elapsed(),
    }
}

fn valuation_checks(c: &mut Collector, s: &Scenario, v: &ValuationMachinery, is_valuation_ring: bool, opts: &CheckOptions) {
    let e = &s.expect;
    let r = &s.ring;
    let grp = s.parent().groupoid();
    let idem = v.gamma_idempotents();
    c.expect(
        "gbar",
        v.gbar().classes(),
        e.gbar_classes,
        format!(
            "Ω has {} unit orbit(s), Ḡ has {} class(es), Γ has {} idempotent(s)",
            v.omega().roots().len(),
            v.gbar().classes(),
            idem.len()
        ),
    );
    c.expect("gamma group", idem.len() == 1, e.gamma_group, format!("{} idempotent value(s)", idem.len()));
    let full_support = r.bounds().iter().all(|&b| b < Ext::PosInf);
    if is_valuation_ring && full_support && grp.is_connected() {
        c.verdict("itsagroup", idem.len() == 1, "connected groupoid, full support: Γ must be a group");
    }

    match v.recover_rings() {
        Ok((t, sv)) => {
            let detail = format!("T_v = {t}, S_v = {sv}");
            let mut ok = true;
            if let Some(want) = &e.t_v {
                ok &= t.bounds() == bounds_from_names(s, want).as_slice();
            }
            if let Some(want) = &e.s_v {
                ok &= sv.bounds() == bounds_from_names(s, want).as_slice();
            }
            if is_valuation_ring {
                ok &= t.bounds() == r.bounds() && sv.bounds() == r.bounds();
            }
            c.verdict("recovery", ok, detail);
        }
        Err(err) => c.push("recovery", CheckStatus::Fail, err.to_string()),
    }

    if !is_valuation_ring {
        return;
    }
    let ax = v.check_axioms(opts.axiom_window, opts.random_triples, opts.seed, opts.strategy);
    let detail = ax
        .checks
        .iter()
        .map(|k| match &k.witness {
            None => format!("{} ok on {}", k.name, k.checked),
            Some(w) => format!("{} FAILS: {w}", k.name),
        })
        .collect::<Vec<_>>()
        .join("; ");
    c.verdict("axioms", ax.passed, detail);
    let pos = v.positives_agree(r, opts.window);
    c.verdict(
        "positives corollary",
        pos.agree,
        pos.witness.unwrap_or_else(|| format!("both sets agree on {} homogeneous members", pos.checked)),
    );
}

fn relation(v: &ValuationMachinery, a: &crate::value::GammaValue, b: &crate::value::GammaValue) -> &'static str {
    match (v.ge(a, b), v.ge(b, a)) {
        (true, true) => "eq",
        (true, false) => "gt",
        (false, true) => "lt",
        (false, false) => "incomparable",
    }
}

fn element_checks(c: &mut Collector, s: &Scenario, v: &ValuationMachinery) {
    let mut values = std::collections::BTreeMap::new();
    for (name, x) in &s.elements {
        match v.valuate(x) {
            Ok(val) => {
                let shown = v.format(&val);
                let expected = s.expect.values.get(name).cloned();
                c.expect(&format!("value {name}"), shown.clone(), expected, format!("v({}) = {shown}", s.parent().format_element(x)));
                values.insert(name.clone(), val);
            }
            Err(err) => c.push(format!("value {name}"), CheckStatus::Fail, err.to_string()),
        }
    }
    for Comparison { a, b, relation: want } in &s.expect.compare {
        let name = format!("compare {a} {b}");
        let (Some(va), Some(vb)) = (values.get(a), values.get(b)) else {
            c.push(name, CheckStatus::Fail, "missing value");
            continue;
        };
        let got = relation(v, va, vb);
        let ok = match want.as_str() {
            "ge" => got == "gt" || got == "eq",
            "le" => got == "lt" || got == "eq",
            other => got == other,
        };
        c.verdict(name, ok, format!("v({a}) {got} v({b}) (expected {want})"));
    }
}

fn dubrovin_checks(c: &mut Collector, v: &ValuationMachinery, expected: Option<&str>, opts: &CheckOptions) {
    match (v.dubrovin_check(), expected) {
        (Err(ValueError::HypothesisViolation(why)), Some("hypothesis-violation")) => {
            c.push("dubrovin", CheckStatus::Pass, format!("hypothesis violated as expected: {why}"))
        }
        (Err(ValueError::HypothesisViolation(why)), None) => c.skip("dubrovin", why),
        (Err(err), _) => c.push("dubrovin", CheckStatus::Fail, err.to_string()),
        (Ok(rep), expected) => {
            if expected == Some("hypothesis-violation") {
                c.push("dubrovin", CheckStatus::Fail, "hypotheses hold, expected a violation");
                return;
            }
            let q = v.parent();
            let r = v.ring();
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut tried = 0;
            let mut verified = 0;
            let mut failure = None;
            let mut attempts = 0;
            while tried < opts.dubrovin_samples && attempts < 100 * opts.dubrovin_samples.max(1) {
                attempts += 1;
                let x = q.random_element(&mut rng);
                if r.contains(&x) {
                    continue;
                }
                tried += 1;
                match v.dubrovin_witness(&x) {
                    Ok(w) if w.verified => verified += 1,
                    Ok(_) => {
                        failure.get_or_insert_with(|| format!("witness for {} leaves R ∖ M", q.format_element(&x)));
                    }
                    Err(err) => {
                        failure.get_or_insert_with(|| err.to_string());
                    }
                }
            }
            // R = Q leaves nothing outside to sample
            let whole = r.bounds().iter().all(|&b| b == Ext::NegInf);
            let ok = rep.passed && failure.is_none() && (whole || tried == opts.dubrovin_samples);
            let detail = failure.unwrap_or_else(|| {
                format!(
                    "residue simple artinian: {}, Γ a group: {}, witnesses verified for {verified}/{tried} outside elements",
                    rep.residue_simple_artinian, rep.gamma_is_group
                )
            });
            c.verdict("dubrovin", ok, detail);
        }
    }
}
