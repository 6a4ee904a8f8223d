//! Reproducible reports: every check records its inputs, verdict, the
//! expected value where one is known, and an exact witness or a margin.
//!
//! Output is byte-stable: maps are ordered, floats are printed with 17
//! significant digits, and no timing information is recorded.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Family, LieAlgebraSpace};
use crate::bending::{self, Verdict};
use crate::error::{Error, Result};
use crate::fuchsian;
use crate::isotypic;
use crate::linalg::{self, CMat};
use crate::properness::{self, HSubalgebraTorus};
use crate::rational::{self, fmt_q, q, Q};
use crate::roots::{split_torus, SplitTorusData};
use crate::sl2::{self, Sl2Triple, TripleKind};
use crate::tolerance::Tolerances;

pub const SEC53_GOLDEN: &str = include_str!("../data/sec53.json");
pub const TABLE1_GOLDEN: &str = include_str!("../data/table1.json");

/// Presets shipped with the crate, by name.
pub const PRESETS: &[(&str, &str)] = &[
    (
        "su21-rho1-g2",
        include_str!("../data/presets/su21-rho1-g2.json"),
    ),
    (
        "sl5-even5-g4",
        include_str!("../data/presets/sl5-even5-g4.json"),
    ),
    (
        "sl5-even5-g3",
        include_str!("../data/presets/sl5-even5-g3.json"),
    ),
];

/// A float as a JSON number with 17 significant digits.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(
            format!("{x:.16e}")
                .parse()
                .expect("formatted float is a JSON number"),
        )
    } else {
        Value::String(x.to_string())
    }
}

/// Rewrites every non-integral number in `v` through [`num`].
pub fn normalize_floats(v: &mut Value) {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            if let Some(x) = n.as_f64() {
                *v = num(x);
            }
        }
        Value::Array(a) => a.iter_mut().for_each(normalize_floats),
        Value::Object(o) => o.values_mut().for_each(normalize_floats),
        _ => {}
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    let mut v = serde_json::to_value(x).expect("report values serialize");
    normalize_floats(&mut v);
    v
}

fn qvec(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_q(x))).collect())
}

/// Real matrices as rows; complex ones as `{"re": rows, "im": rows}`.
pub fn matrix_value(m: &CMat) -> Value {
    let rows = |f: &dyn Fn(usize, usize) -> f64| {
        Value::Array(
            (0..m.nrows())
                .map(|i| Value::Array((0..m.ncols()).map(|j| num(f(i, j))).collect()))
                .collect(),
        )
    };
    if linalg::max_imag(m) == 0.0 {
        rows(&|i, j| m[(i, j)].re)
    } else {
        json!({ "re": rows(&|i, j| m[(i, j)].re), "im": rows(&|i, j| m[(i, j)].im) })
    }
}

fn histogram(h: &BTreeMap<i64, usize>) -> Value {
    Value::Object(h.iter().map(|(k, m)| (k.to_string(), json!(m))).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub inputs: Value,
    pub verdict: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    /// `None` when there is nothing to compare against.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub artifacts: BTreeMap<String, Value>,
}

/// Options shared by all commands.
#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub tol: Tolerances,
    /// Include bulky witnesses (matrices, vectors).
    pub witness: bool,
}

struct Check {
    id: String,
    inputs: Value,
    verdict: Value,
    expected: Option<Value>,
    witness: Option<Value>,
    margin: Option<f64>,
}

impl Check {
    fn new(id: impl Into<String>, inputs: Value, verdict: Value) -> Self {
        Self {
            id: id.into(),
            inputs,
            verdict,
            expected: None,
            witness: None,
            margin: None,
        }
    }

    fn expect(mut self, v: Value) -> Self {
        self.expected = Some(v);
        self
    }

    fn witness(mut self, v: Value) -> Self {
        self.witness = Some(v);
        self
    }

    fn margin(mut self, m: f64) -> Self {
        self.margin = Some(m);
        self
    }
}

impl ReportDocument {
    fn new(command: impl Into<String>, opts: &ReportOptions, extra: Value) -> Self {
        let mut config = json!({ "tolerances": to_value(&opts.tol), "witness": opts.witness });
        if let (Value::Object(c), Value::Object(e)) = (&mut config, extra) {
            c.extend(e);
        }
        normalize_floats(&mut config);
        Self {
            tool: "sl2bend".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            checks: Vec::new(),
            artifacts: BTreeMap::new(),
        }
    }

    fn push(&mut self, c: Check) {
        debug_assert!(
            c.witness.is_some() || c.margin.is_some(),
            "{} carries no evidence",
            c.id
        );
        let matches = c.expected.as_ref().map(|e| *e == c.verdict);
        let mut rec = CheckRecord {
            id: c.id,
            inputs: c.inputs,
            verdict: c.verdict,
            expected: c.expected,
            matches,
            witness: c.witness,
            margin: c.margin.map(num),
        };
        normalize_floats(&mut rec.inputs);
        if let Some(w) = rec.witness.as_mut() {
            normalize_floats(w);
        }
        self.checks.push(rec);
    }

    pub fn mismatches(&self) -> Vec<&CheckRecord> {
        self.checks
            .iter()
            .filter(|c| c.matches == Some(false))
            .collect()
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().is_empty()
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Aligned table: id, verdict, expected, status, margin.
    pub fn to_text(&self) -> String {
        let short = |v: &Value| {
            let s = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            if s.chars().count() > 40 {
                format!("{}…", s.chars().take(39).collect::<String>())
            } else {
                s
            }
        };
        let rows: Vec<[String; 5]> = self
            .checks
            .iter()
            .map(|c| {
                [
                    c.id.clone(),
                    short(&c.verdict),
                    c.expected.as_ref().map_or("-".into(), short),
                    match c.matches {
                        Some(true) => "ok".into(),
                        Some(false) => "MISMATCH".into(),
                        None => "-".into(),
                    },
                    c.margin.as_ref().map_or(String::new(), |m| m.to_string()),
                ]
            })
            .collect();
        let header = ["check", "verdict", "expected", "status", "margin"].map(String::from);
        let mut widths = header.clone().map(|h| h.chars().count());
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "{} {} — {}", self.tool, self.version, self.command);
        for r in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = r
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        let bad = self.mismatches().len();
        let _ = writeln!(out, "{} checks, {} mismatches", self.checks.len(), bad);
        out
    }
}

pub fn partition_symbol(parts: &[usize]) -> String {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for &p in parts {
        match groups.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => groups.push((p, 1)),
        }
    }
    let body: Vec<String> = groups
        .iter()
        .map(|&(v, c)| {
            if c == 1 {
                v.to_string()
            } else {
                format!("{v}^{c}")
            }
        })
        .collect();
    format!("[{}]", body.join(","))
}

fn parse_qvec(v: &Value) -> Result<Vec<Q>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array of rationals".into()))?;
    arr.iter()
        .map(|x| match x {
            Value::String(s) => rational::parse_q(s),
            Value::Number(n) => n.as_i64().map(q).ok_or_else(|| {
                Error::Parse(format!(
                    "non-integral number {n}; write rationals as strings"
                ))
            }),
            other => Err(Error::Parse(format!("cannot read {other} as a rational"))),
        })
        .collect()
}

/// Reads 𝔞_𝔥 from JSON: either an array of vectors or `{"a_h": [...]}`.
/// Entries are integers or strings such as `"3/2"`.
pub fn parse_ah(text: &str) -> Result<Vec<Vec<Q>>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let list = v.get("a_h").unwrap_or(&v);
    list.as_array()
        .ok_or_else(|| Error::Parse("a_h must be an array of vectors".into()))?
        .iter()
        .map(parse_qvec)
        .collect()
}

fn triple_check(id: &str, alg: &LieAlgebraSpace, t: &Sl2Triple) -> Check {
    let chk = sl2::verify_sl2_triple(alg, t);
    let worst = chk
        .relation_residuals
        .iter()
        .chain(&chk.membership_residuals)
        .fold(0.0f64, |m, &x| m.max(x));
    Check::new(id, json!({}), json!(chk.valid))
        .expect(json!(true))
        .margin(alg.tol().membership - worst)
}

fn even_label(even: bool) -> Value {
    json!(if even { "even" } else { "non-even" })
}

/// The six partitions of 5 with evenness, dominant neutral vectors, Weyl
/// orbit membership in 𝔞_𝔥 and properness, against the golden table.
pub fn reproduce_sec53(opts: &ReportOptions) -> Result<ReportDocument> {
    let golden: Value = serde_json::from_str(SEC53_GOLDEN)?;
    let alg = LieAlgebraSpace::sl(5)?.with_tolerances(opts.tol.clone());
    let torus = split_torus(&alg)?;
    let ah_vecs = parse_ah(SEC53_GOLDEN)?;
    let ah = HSubalgebraTorus::new(&torus, &ah_vecs)?;
    let guard = alg.tol().integer_guard;
    let mut doc = ReportDocument::new(
        "reproduce sec53",
        opts,
        json!({ "algebra": alg.label(), "a_h": ah_vecs.iter().map(|v| qvec(v)).collect::<Vec<_>>() }),
    );
    let rows = golden["rows"]
        .as_array()
        .ok_or_else(|| Error::Parse("golden rows".into()))?;
    let mut proper_even = Vec::new();
    for row in rows {
        let parts: Vec<usize> = serde_json::from_value(row["parts"].clone())?;
        let sym = partition_symbol(&parts);
        let id = |s: &str| format!("sec53.{sym}.{s}");
        let inputs = json!({ "partition": parts });
        let t = sl2::sl2_from_partition(&alg, &parts)?;
        doc.push(triple_check(&id("triple"), &alg, &t));
        doc.push(
            Check::new(id("symbol"), inputs.clone(), json!(sym))
                .expect(row["symbol"].clone())
                .witness(json!(parts)),
        );

        let weights = sl2::ad_weights(&alg, &t)?;
        let even = weights.keys().all(|k| k % 2 == 0);
        doc.push(
            Check::new(id("even"), inputs.clone(), even_label(even))
                .expect(even_label(row["even"].as_bool().unwrap_or(false)))
                .witness(json!({ "ad_weights": histogram(&weights) })),
        );
        doc.push(
            Check::new(
                id("parity_rule"),
                inputs.clone(),
                json!(sl2::partition_parity_even(&parts) == even),
            )
            .expect(json!(true))
            .witness(json!({ "parts": parts })),
        );
        let a0 = t.dominant_a0(&torus, guard)?;
        doc.push(
            Check::new(id("a0"), inputs.clone(), qvec(&a0))
                .expect(row["a0"].clone())
                .witness(qvec(&a0)),
        );
        doc.push(
            Check::new(
                id("a0_in_b_plus"),
                inputs.clone(),
                json!(torus.in_b_plus(&a0)),
            )
            .expect(json!(true))
            .witness(qvec(&torus.iota(&a0))),
        );
        let orbit = properness::in_weyl_orbit_of_subspace(&torus, &a0, &ah)?;
        doc.push(
            Check::new(id("in_orbit"), inputs.clone(), json!(orbit.member))
                .expect(row["in_orbit"].clone())
                .witness(json!({
                    "w": orbit.witness.map(|w| w.to_string()),
                    "enumerated": torus.weyl().len(),
                })),
        );
        let proper = properness::sl2_action_proper(&torus, &a0, &ah)?;
        doc.push(
            Check::new(id("proper"), inputs, json!(proper.proper))
                .expect(row["proper"].clone())
                .witness(to_value(&proper)),
        );
        if proper.proper && even {
            proper_even.push(sym);
        }
    }
    doc.push(
        Check::new(
            "sec53.proper_even_exists",
            json!({}),
            json!(!proper_even.is_empty()),
        )
        .expect(golden["proper_even_exists"].clone())
        .witness(json!(proper_even)),
    );
    let benoist = properness::benoist_criterion(&torus, &ah)?;
    doc.push(
        Check::new("sec53.benoist", json!({}), json!(benoist.holds)).witness(to_value(&benoist)),
    );
    Ok(doc)
}

fn table1_evenness(golden: &Value, rho: &str, p: usize, q: usize) -> Value {
    let key = if p > q { "p_gt_q" } else { "p_eq_q" };
    golden["evenness"][rho][key].clone()
}

fn sigma_expected(rho: &str, p: usize, q: usize) -> Vec<f64> {
    match rho {
        "rho1" => (0..p + q)
            .map(|k| if k < q || k >= p { -1.0 } else { 1.0 })
            .collect(),
        _ => vec![1.0; p + q],
    }
}

fn ah_first_coordinate_zero(torus: &SplitTorusData) -> Result<HSubalgebraTorus> {
    let m = torus.pattern_len();
    let vecs: Vec<Vec<Q>> = (1..m)
        .map(|k| (0..m).map(|i| q((i == k) as i64)).collect())
        .collect();
    HSubalgebraTorus::new(torus, &vecs)
}

/// ρ₁ and ρ₂ in su(p,q): evenness (Table 1), σ, 𝔤_even, genus bounds,
/// properness on {a₁ = 0} and, for p = q, the family-restricted claim.
pub fn reproduce_sec6(p: usize, q_: usize, opts: &ReportOptions) -> Result<ReportDocument> {
    if p < q_ || q_ == 0 {
        return Err(Error::InvalidParameters(format!(
            "need p >= q >= 1, got p = {p}, q = {q_}"
        )));
    }
    let golden: Value = serde_json::from_str(TABLE1_GOLDEN)?;
    let alg = LieAlgebraSpace::su(p, q_)?.with_tolerances(opts.tol.clone());
    let torus = split_torus(&alg)?;
    let ah = ah_first_coordinate_zero(&torus)?;
    let guard = alg.tol().integer_guard;
    let mut doc = ReportDocument::new(
        "reproduce sec6",
        opts,
        json!({ "algebra": alg.label(), "p": p, "q": q_, "a_h": "a_1 = 0" }),
    );
    let (pi, qi) = (p as i64, q_ as i64);
    let h_centralizer_dim = |t: &Sl2Triple| -> Result<usize> { Ok(alg.centralizer(&t.h)?.dim()) };
    let mut family = Vec::new();
    for rho in ["rho1", "rho2"] {
        let id = |s: &str| format!("sec6.{rho}.{s}");
        let built = if rho == "rho1" {
            sl2::rho1_su(&alg)
        } else {
            sl2::rho2_su(&alg)
        };
        let t = match built {
            Ok(t) => t,
            Err(Error::Undefined(msg)) => {
                doc.push(
                    Check::new(id("evenness"), json!({}), json!("undefined"))
                        .expect(table1_evenness(&golden, rho, p, q_))
                        .witness(json!(msg)),
                );
                continue;
            }
            Err(e) => return Err(e),
        };
        doc.push(triple_check(&id("triple"), &alg, &t));
        let weights = sl2::ad_weights(&alg, &t)?;
        let even = weights.keys().all(|k| k % 2 == 0);
        doc.push(
            Check::new(id("evenness"), json!({}), even_label(even))
                .expect(table1_evenness(&golden, rho, p, q_))
                .witness(json!({ "ad_weights": histogram(&weights) })),
        );

        let s = sl2::sigma(&alg, &t)?;
        let want = sigma_expected(rho, p, q_);
        let target = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            p + q_,
            want.iter().map(|&x| linalg::c64(x, 0.0)),
        ));
        let err = (&s - &target).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        let diag: Vec<i64> = (0..p + q_).map(|k| s[(k, k)].re.round() as i64).collect();
        let mut w = json!({ "formula": golden["sigma"][rho].clone(), "max_entry_error": num(err) });
        if opts.witness {
            w["matrix"] = matrix_value(&s);
        }
        let off_diagonal_clean = err <= alg.tol().membership;
        doc.push(
            Check::new(id("sigma"), json!({}), json!({ "diagonal": diag, "diagonal_matrix": off_diagonal_clean }))
                .expect(json!({ "diagonal": want.iter().map(|&x| x as i64).collect::<Vec<_>>(), "diagonal_matrix": true }))
                .witness(w)
                .margin(alg.tol().membership - err),
        );

        let ge = sl2::g_even(&alg, &t)?;
        let fixed = sl2::sigma_fixed_subspace(&alg, &s)?;
        let ge_expected = if rho == "rho1" {
            4 * qi * qi + (pi - qi).pow(2) - 1
        } else {
            (pi + qi).pow(2) - 1
        };
        doc.push(
            Check::new(id("g_even_dim"), json!({}), json!(ge.dim()))
                .expect(json!(ge_expected))
                .witness(json!({ "formula": golden["g_even_dim"][rho].clone(), "sigma_fixed_dim": fixed.dim() })),
        );
        doc.push(
            Check::new(
                id("g_even_is_sigma_fixed"),
                json!({}),
                json!(ge.same_as(&fixed, alg.tol().membership.sqrt())),
            )
            .expect(json!(true))
            .witness(json!({ "g_even_dim": ge.dim(), "sigma_fixed_dim": fixed.dim() })),
        );

        let genus = isotypic::genus_bound(&alg, &t, None)?;
        let genus_formula = if rho == "rho1" {
            2 * qi * qi + (pi - qi).pow(2) - 1
        } else {
            (pi - qi).pow(2) + 2 * qi - 1
        };
        let zdim = h_centralizer_dim(&t)?;
        doc.push(
            Check::new(id("genus_bound"), json!({}), json!(genus))
                .expect(json!(genus_formula))
                .witness(json!({ "formula": golden["genus_bound"][rho].clone(), "centralizer_dim": zdim })),
        );
        doc.push(
            Check::new(
                id("genus_equals_centralizer"),
                json!({}),
                json!(genus == zdim),
            )
            .expect(json!(true))
            .witness(json!({ "genus_bound": genus, "centralizer_dim": zdim })),
        );

        let a0 = t.dominant_a0(&torus, guard)?;
        doc.push(
            Check::new(id("a0_in_b_plus"), json!({}), json!(torus.in_b_plus(&a0)))
                .expect(json!(true))
                .witness(qvec(&a0)),
        );
        let proper = properness::sl2_action_proper(&torus, &a0, &ah)?;
        doc.push(
            Check::new(id("proper"), json!({}), json!(proper.proper))
                .expect(golden["proper"][rho].clone())
                .witness(to_value(&proper)),
        );
        family.push((rho, proper.proper, even));
    }
    let benoist = properness::benoist_criterion(&torus, &ah)?;
    doc.push(
        Check::new("sec6.benoist", json!({}), json!(benoist.holds))
            .expect(golden["benoist"].clone())
            .witness(to_value(&benoist)),
    );
    let cm = properness::calabi_markus(&torus, &ah);
    doc.push(
        Check::new("sec6.calabi_markus", json!({}), json!(cm))
            .expect(golden["calabi_markus"].clone())
            .witness(json!({ "rank": torus.rank(), "dim_a_h": ah.dim() })),
    );
    if p == q_ {
        let offenders: Vec<&str> = family
            .iter()
            .filter(|(_, pr, ev)| *pr && !ev)
            .map(|(r, _, _)| *r)
            .collect();
        doc.push(
            Check::new("sec6.p_eq_q.no_proper_non_even", json!({ "scope": "family-restricted" }), json!(offenders.is_empty()))
                .expect(golden["p_eq_q_no_proper_non_even"].clone())
                .witness(json!({
                    "members": family.iter().map(|(r, pr, ev)| json!({ "rho": r, "proper": pr, "even": ev })).collect::<Vec<_>>(),
                })),
        );
    }
    Ok(doc)
}

/// Deformation parameter: a number or `"auto"` (first grid value that
/// passes the bending inequalities).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TChoice {
    Fixed(f64),
    Named(String),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BendExpectation {
    #[serde(default)]
    pub verdict: Option<String>,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub max_relation_residual: Option<f64>,
    /// `"genus_condition"` when the plan is expected to be rejected.
    #[serde(default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BendConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub algebra: Family,
    pub triple: TripleKind,
    pub genus: usize,
    #[serde(default = "auto")]
    pub t: TChoice,
    #[serde(default)]
    pub expected: Option<BendExpectation>,
}

fn auto() -> TChoice {
    TChoice::Named("auto".into())
}

impl BendConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn preset(name: &str) -> Result<Self> {
        let (_, text) = PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown preset {name:?}")))?;
        Self::from_json(text)
    }
}

pub fn build_triple(alg: &LieAlgebraSpace, kind: &TripleKind) -> Result<Sl2Triple> {
    match kind {
        TripleKind::Partition { parts } => sl2::sl2_from_partition(alg, parts),
        TripleKind::Rho1 => sl2::rho1_su(alg),
        TripleKind::Rho2 => sl2::rho2_su(alg),
        TripleKind::Custom => Err(Error::Unsupported(
            "custom triples cannot be read from a plan file".into(),
        )),
    }
}

fn verdict_value(v: Verdict) -> Value {
    to_value(&v)
}

/// Fuchsian seed → plan → bend → inequalities → density certificate.
pub fn bend_report(cfg: &BendConfig, opts: &ReportOptions) -> Result<ReportDocument> {
    let alg = LieAlgebraSpace::new(cfg.algebra)?.with_tolerances(opts.tol.clone());
    let t = build_triple(&alg, &cfg.triple)?;
    let expected = cfg.expected.clone().unwrap_or_default();
    let mut doc = ReportDocument::new(
        "bend",
        opts,
        json!({ "plan": to_value(cfg), "algebra": alg.label() }),
    );
    doc.push(triple_check("bend.triple", &alg, &t));

    let seed = fuchsian::fuchsian_generators(cfg.genus)?;
    let min_trace = seed
        .generators
        .iter()
        .map(|m| (m[(0, 0)] + m[(1, 1)]).re.abs())
        .fold(f64::INFINITY, f64::min);
    doc.push(
        Check::new(
            "bend.seed.relation",
            json!({ "genus": cfg.genus }),
            json!(seed.relation_residual <= alg.tol().relation),
        )
        .expect(json!(true))
        .margin(alg.tol().relation - seed.relation_residual),
    );
    doc.push(
        Check::new(
            "bend.seed.hyperbolic",
            json!({ "genus": cfg.genus }),
            json!(min_trace > 2.0),
        )
        .expect(json!(true))
        .margin(min_trace - 2.0),
    );

    let plan = match bending::plan_bending(&alg, &t, &seed, None) {
        Err(Error::GenusCondition { genus, required })
            if expected.error.as_deref() == Some("genus_condition") =>
        {
            doc.push(
                Check::new(
                    "bend.genus_condition",
                    json!({ "genus": genus }),
                    json!("rejected"),
                )
                .expect(json!("rejected"))
                .witness(json!({ "genus": genus, "required": required })),
            );
            return Ok(doc);
        }
        other => other?,
    };
    if let Some(e) = &expected.error {
        doc.push(
            Check::new(
                "bend.genus_condition",
                json!({ "genus": cfg.genus }),
                json!("accepted"),
            )
            .expect(json!("rejected"))
            .witness(json!({ "expected_error": e, "lambda_size": plan.lambda.len() })),
        );
        return Ok(doc);
    }

    let grid = match &cfg.t {
        TChoice::Fixed(x) => vec![*x],
        TChoice::Named(s) if s == "auto" => alg.tol().t_grid.clone(),
        TChoice::Named(s) => {
            return Err(Error::Parse(format!(
                "t must be a number or \"auto\", got {s:?}"
            )))
        }
    };
    let (plan, ineq) = if grid == [0.0] {
        let plan = plan.with_t(0.0);
        let report = bending::InequalityReport {
            t: 0.0,
            holds: false,
            records: Vec::new(),
        };
        (plan, report)
    } else {
        bending::select_t(&alg, plan, &grid)?
    };
    let iso = &plan.iso;
    doc.artifacts.insert(
        "plan".into(),
        to_value(&json!({
            "target_dim": plan.target.dim(),
            "multiplicities": iso.multiplicities.iter().map(|(k, m)| (format!("V{k}"), json!(m))).collect::<serde_json::Map<_, _>>(),
            "lambda": plan.lambda,
            "injection": plan.vectors.iter().map(|v| json!({ "i": v.i, "j": v.j, "generator": v.generator })).collect::<Vec<_>>(),
            "vectors": to_value(&plan.vectors),
            "t": num(plan.t),
        })),
    );
    let genus_bound = iso.genus_bound();
    doc.push(
        Check::new(
            "bend.genus_condition",
            json!({ "genus": cfg.genus }),
            json!(cfg.genus >= genus_bound),
        )
        .expect(json!(true))
        .witness(json!({ "genus_bound": genus_bound })),
    );
    let worst_fixed = plan
        .vectors
        .iter()
        .map(|v| v.fixed_residual)
        .fold(0.0f64, f64::max);
    let fixed_tol = alg.tol().membership.sqrt();
    doc.push(
        Check::new(
            "bend.fixed_vectors",
            json!({}),
            json!(worst_fixed <= fixed_tol),
        )
        .expect(json!(true))
        .margin(fixed_tol - worst_fixed),
    );
    let ineq_margin = ineq
        .records
        .iter()
        .map(|r| r.margin)
        .fold(f64::INFINITY, f64::min);
    doc.push(
        Check::new(
            "bend.inequalities",
            json!({ "t": num(plan.t), "grid": grid.iter().map(|&x| num(x)).collect::<Vec<_>>() }),
            json!(ineq.holds),
        )
        .expect(json!(true))
        .witness(to_value(&ineq.records))
        .margin(if ineq.records.is_empty() {
            0.0
        } else {
            ineq_margin
        }),
    );

    let rho_seed = fuchsian::compose(&t, &plan.seed)?;
    let bent = bending::bend(&seed, &plan)?;
    // floating-point seeds: allow rounding of order ε·‖prefix‖² on top
    let floor = 16.0 * f64::EPSILON * rho_seed.word_norm.max(bent.word_norm).powi(2);
    let bound = expected
        .max_relation_residual
        .unwrap_or(10.0 * rho_seed.relation_residual + 1e-12 + floor);
    doc.push(
        Check::new(
            "bend.relation",
            json!({ "bound": num(bound) }),
            json!(bent.relation_residual <= bound),
        )
        .expect(json!(true))
        .witness(json!({
            "bent_residual": num(bent.relation_residual),
            "unbent_residual": num(rho_seed.relation_residual),
            "word_norm": num(bent.word_norm),
        }))
        .margin(bound - bent.relation_residual),
    );
    let cert = bending::density_certificate(&alg, &bent, &plan)?;
    let mut c = Check::new(
        "bend.certificate",
        json!({ "t": num(plan.t) }),
        verdict_value(cert.verdict),
    )
    .witness(to_value(&cert));
    if let Some(v) = &expected.verdict {
        c = c.expect(json!(v));
    }
    doc.push(c);
    let mut c = Check::new("bend.certificate.dim", json!({}), json!(cert.achieved_dim))
        .witness(json!({ "target_dim": cert.target_dim }));
    if let Some(d) = expected.dim {
        c = c.expect(json!(d));
    }
    doc.push(c);
    if opts.witness {
        doc.artifacts.insert(
            "bent_generators".into(),
            Value::Array(bent.generators.iter().map(matrix_value).collect()),
        );
        doc.artifacts.insert(
            "bending_vectors".into(),
            Value::Array(plan.vectors.iter().map(|v| matrix_value(&v.x)).collect()),
        );
    }
    Ok(doc)
}

/// Calabi–Markus and Benoist for a user 𝔞_𝔥, with an even witness search
/// over partitions for sl(n,ℝ).
pub fn check_report(
    family: Family,
    ah_vecs: &[Vec<Q>],
    opts: &ReportOptions,
) -> Result<ReportDocument> {
    let alg = LieAlgebraSpace::new(family)?.with_tolerances(opts.tol.clone());
    let torus = split_torus(&alg)?;
    let ah = HSubalgebraTorus::new(&torus, ah_vecs)?;
    let inputs = json!({ "algebra": alg.label(), "a_h": ah_vecs.iter().map(|v| qvec(v)).collect::<Vec<_>>() });
    let mut doc = ReportDocument::new("check", opts, inputs.clone());
    let cm = properness::calabi_markus(&torus, &ah);
    doc.push(
        Check::new("check.calabi_markus", inputs.clone(), json!(cm))
            .witness(json!({ "rank": torus.rank(), "dim_a_h": ah.dim() })),
    );
    let benoist = properness::benoist_criterion(&torus, &ah)?;
    doc.push(
        Check::new("check.benoist", inputs.clone(), json!(benoist.holds))
            .witness(to_value(&benoist)),
    );
    if let Family::Sl { n } = family {
        let guard = alg.tol().integer_guard;
        let mut found = None;
        let mut tried = Vec::new();
        for parts in sl2::partitions(n) {
            if !sl2::partition_parity_even(&parts) || parts.iter().all(|&p| p == 1) {
                continue;
            }
            let t = sl2::sl2_from_partition(&alg, &parts)?;
            let a0 = t.dominant_a0(&torus, guard)?;
            let proper = properness::sl2_action_proper(&torus, &a0, &ah)?;
            tried.push(partition_symbol(&parts));
            if proper.proper {
                found = Some((parts, a0));
                break;
            }
        }
        let (verdict, witness) = match found {
            Some((parts, a0)) => (
                json!(partition_symbol(&parts)),
                json!({ "partition": parts, "a0": qvec(&a0) }),
            ),
            None => (
                json!(format!("no even witness among partitions of {n}")),
                json!({ "tried": tried }),
            ),
        };
        doc.push(Check::new("check.even_witness", inputs, verdict).witness(witness));
    }
    Ok(doc)
}
