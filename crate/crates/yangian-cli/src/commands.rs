//! Subcommand implementations. Each returns a RunReport and never prints;
//! rendering and exit codes are the binary's job.

use serde_json::{json, Value};

use yangian::character::{
    char_alternating, char_formula, char_strings, char_w, dimension_formula, direct_character,
    res_character, res_closed_form, sl2_character_of_h0,
};
use yangian::hw::{build_irreducible, drinfeld_polynomial, is_irreducible, DrinfeldPolynomial};
use yangian::repr::{
    dual, evaluation_module, tensor, twist, verify_relations, DualSide, RelationViolation,
    YModule,
};
use yangian::scalar::{rat, rat_int, rat_to_string, Rat};
use yangian::strings::{RootMultiset, StringCounts};
use yangian::Error;

use rand::Rng;

use crate::corpus::{random_multiset, random_parameters, rng_from_seed};
use crate::render::{
    character_value, decomposition_text, decomposition_value, drinfeld_value, module_value,
    multiset_text, multiset_value, polynomial_value, rational_value, sl2_value,
};
use crate::report::{Check, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Direct,
    Strings,
    Formula,
    All,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Strings => "strings",
            Method::Formula => "formula",
            Method::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Relations,
    Hopf,
    TensorTheorem,
    Characters,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Hopf => "hopf",
            Suite::TensorTheorem => "tensor-theorem",
            Suite::Characters => "characters",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub max_deg: usize,
    pub max_r: usize,
    pub max_level: usize,
    pub negative_controls: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            max_deg: 5,
            max_r: 4,
            max_level: 6,
            negative_controls: false,
        }
    }
}

fn violation_text(v: &RelationViolation) -> String {
    format!("{} at (k, l) = ({}, {})", v.relation, v.k, v.l)
}

pub fn cmd_decompose(roots: &RootMultiset) -> RunReport {
    let counts = StringCounts::new(roots);
    let decomposition = counts.decomposition();
    let keys = counts.keys();
    let mut summary = vec![
        format!("roots: {}", multiset_text(roots)),
        format!("polynomial: {}", roots.to_polynomial()),
        format!("decomposition: {}", decomposition_text(decomposition)),
        format!(
            "irreducible module dimension: {}",
            decomposition.module_dimension()
        ),
        "counts per window (strings N, containments n, powers m):".into(),
    ];
    let mut counts_rows = Vec::new();
    let mut mismatch: Option<String> = None;
    for (r, a) in &keys {
        let strings = counts.strings(*r, a);
        let containments = counts.containments(*r, a);
        let powers = counts.powers(*r, a);
        counts_rows.push(json!({
            "len": r,
            "start": rat_to_string(a),
            "strings": strings,
            "containments": containments,
            "powers": powers,
        }));
        summary.push(format!(
            "  S_{}({}): N={} n={} m={}",
            r, a, strings, containments, powers
        ));
        if containments != powers && mismatch.is_none() {
            mismatch = Some(format!(
                "window of length {} at {}: m={} but n={}",
                r, a, powers, containments
            ));
        }
    }
    let checks = vec![
        Check::theorem(
            "window powers equal containment counts",
            mismatch.is_none(),
            mismatch.unwrap_or_else(|| {
                format!("m_{{r,a}}(P) = n_{{r,a}}(P) at all {} windows", keys.len())
            }),
        ),
        Check::theorem(
            "decomposition reassembles the multiset",
            &decomposition.to_multiset() == roots,
            format!(
                "{} root(s) across {} distinct string(s)",
                roots.degree(),
                decomposition.components().len()
            ),
        ),
    ];
    RunReport {
        command: "decompose".into(),
        inputs: json!({"roots": multiset_value(roots)}),
        outputs: json!({
            "polynomial": polynomial_value(&roots.to_polynomial()),
            "decomposition": decomposition_value(decomposition),
            "counts": counts_rows,
            "dimension": decomposition.module_dimension(),
        }),
        checks,
        seed: None,
        summary,
    }
}

pub fn cmd_dim(roots: &RootMultiset) -> RunReport {
    let p = DrinfeldPolynomial::from_roots(roots.clone());
    let product = p.decomposition().module_dimension();
    let (check, formula_value) = match dimension_formula(&p) {
        Ok(d) => (
            Check::theorem(
                "closed dimension formula matches the string product",
                d == rat_int(product as i64),
                format!("formula {}, string product {}", d, product),
            ),
            rational_value(&d),
        ),
        Err(e) => (
            Check::theorem(
                "closed dimension formula matches the string product",
                false,
                format!("{}", e),
            ),
            Value::Null,
        ),
    };
    RunReport {
        command: "dim".into(),
        inputs: json!({"roots": multiset_value(roots)}),
        outputs: json!({
            "dimension": product,
            "formula": formula_value,
            "decomposition": decomposition_value(p.decomposition()),
        }),
        checks: vec![check],
        seed: None,
        summary: vec![
            format!("roots: {}", multiset_text(roots)),
            format!("decomposition: {}", decomposition_text(p.decomposition())),
            format!("dimension: {}", product),
        ],
    }
}

pub fn cmd_character(roots: &RootMultiset, method: Method) -> RunReport {
    let p = DrinfeldPolynomial::from_roots(roots.clone());
    let mut checks = Vec::new();
    let mut summary = vec![
        format!("roots: {}", multiset_text(roots)),
        format!("drinfeld polynomial: {}", p.poly()),
        format!("decomposition: {}", decomposition_text(p.decomposition())),
    ];

    let wants_direct = matches!(method, Method::Direct | Method::All);
    let wants_strings = matches!(method, Method::Strings | Method::All);
    let wants_formula = matches!(method, Method::Formula | Method::All);

    let strings_char = wants_strings.then(|| char_strings(&p));
    let formula_char = if wants_formula {
        match char_formula(&p) {
            Ok(c) => Some(c),
            Err(e) => {
                checks.push(Check::theorem(
                    "product formula divides exactly",
                    false,
                    format!("{}", e),
                ));
                None
            }
        }
    } else {
        None
    };

    let mut built: Option<YModule> = None;
    let direct_char = if wants_direct {
        match build_irreducible(&p) {
            Ok(module) => match direct_character(&module) {
                Ok(c) => {
                    built = Some(module);
                    Some(c)
                }
                Err(e) => {
                    checks.push(Check::fail(
                        "direct character computation",
                        format!("{}", e),
                    ));
                    None
                }
            },
            Err(Error::TheoremViolation(s)) => {
                checks.push(Check::theorem("irreducible module construction", false, s));
                None
            }
            Err(e) => {
                checks.push(Check::fail(
                    "irreducible module construction",
                    format!("{}", e),
                ));
                None
            }
        }
    } else {
        None
    };

    if method == Method::All {
        if let (Some(d), Some(s)) = (&direct_char, &strings_char) {
            checks.push(Check::theorem(
                "direct character equals the string product",
                d == s,
                format!("{} term(s)", d.term_count()),
            ));
        }
        if let (Some(d), Some(f)) = (&direct_char, &formula_char) {
            checks.push(Check::theorem(
                "direct character equals the elimination formula",
                d == f,
                format!("{} term(s)", d.term_count()),
            ));
        }
    }

    let character = direct_char
        .as_ref()
        .or(strings_char.as_ref())
        .or(formula_char.as_ref());

    let mut outputs = serde_json::Map::new();
    outputs.insert("drinfeld".into(), drinfeld_value(&p));
    if let Some(c) = character {
        let dim = c.augmentation();
        outputs.insert("character".into(), character_value(c));
        outputs.insert("dimension".into(), json!(dim));
        summary.push(format!("character ({} terms): {}", c.term_count(), c));
        summary.push(format!("dimension: {}", dim));
        match dimension_formula(&p) {
            Ok(formula_dim) => {
                let mut ok = formula_dim == rat_int(dim);
                let mut detail = format!("augmentation {}, closed formula {}", dim, formula_dim);
                if let Some(module) = &built {
                    ok = ok && module.dim() as i64 == dim;
                    detail.push_str(&format!(", matrix size {}", module.dim()));
                }
                checks.push(Check::theorem("dimension agreement", ok, detail));
            }
            Err(e) => checks.push(Check::theorem(
                "dimension agreement",
                false,
                format!("{}", e),
            )),
        }
        match res_character(c) {
            Ok(res) => {
                outputs.insert("restriction".into(), sl2_value(&res));
                summary.push(format!("restriction: {}", res));
                match res_closed_form(&p) {
                    Ok(closed) => {
                        let mut ok = closed == res;
                        let mut detail = format!("{} weight(s)", res.weights().count());
                        if let Some(module) = &built {
                            match sl2_character_of_h0(module) {
                                Ok(spec) => {
                                    ok = ok && spec == res;
                                    detail.push_str(", cross-checked against the Cartan spectrum");
                                }
                                Err(e) => {
                                    ok = false;
                                    detail = format!("{}", e);
                                }
                            }
                        }
                        checks.push(Check::theorem(
                            "restriction matches the closed form",
                            ok,
                            detail,
                        ));
                    }
                    Err(e) => checks.push(Check::theorem(
                        "restriction matches the closed form",
                        false,
                        format!("{}", e),
                    )),
                }
            }
            Err(e) => checks.push(Check::fail(
                "restriction to a weight character",
                format!("{}", e),
            )),
        }
    }

    RunReport {
        command: "character".into(),
        inputs: json!({"roots": multiset_value(roots), "method": method.as_str()}),
        outputs: Value::Object(outputs),
        checks,
        seed: None,
        summary,
    }
}

pub fn cmd_build(roots: &RootMultiset) -> RunReport {
    let p = DrinfeldPolynomial::from_roots(roots.clone());
    let mut checks = Vec::new();
    let mut summary = vec![
        format!("roots: {}", multiset_text(roots)),
        format!("decomposition: {}", decomposition_text(p.decomposition())),
    ];
    let mut outputs = serde_json::Map::new();
    outputs.insert("drinfeld".into(), drinfeld_value(&p));
    match build_irreducible(&p) {
        Ok(module) => {
            summary.push(format!("constructed module dimension: {}", module.dim()));
            outputs.insert("module".into(), module_value(&module));
            match is_irreducible(&module) {
                Ok(ok) => checks.push(Check::theorem(
                    "constructed module is irreducible",
                    ok,
                    format!("dimension {}", module.dim()),
                )),
                Err(e) => checks.push(Check::fail("irreducibility test", format!("{}", e))),
            }
            match drinfeld_polynomial(&module) {
                Ok(q) => checks.push(Check::theorem(
                    "highest weight data reproduces the input polynomial",
                    q.poly() == p.poly(),
                    format!("realized {}", q.poly()),
                )),
                Err(e) => checks.push(Check::fail(
                    "highest weight extraction",
                    format!("{}", e),
                )),
            }
            let relations = verify_relations(&module, 3);
            checks.push(Check::of(
                "defining relations hold on the constructed module",
                relations.passed(),
                format!("{} identities at levels k+l <= 3", relations.checked),
            ));
        }
        Err(Error::TheoremViolation(s)) => {
            checks.push(Check::theorem("irreducible module construction", false, s))
        }
        Err(e) => checks.push(Check::fail(
            "irreducible module construction",
            format!("{}", e),
        )),
    }
    RunReport {
        command: "build".into(),
        inputs: json!({"roots": multiset_value(roots)}),
        outputs: Value::Object(outputs),
        checks,
        seed: None,
        summary,
    }
}

pub fn cmd_verify(suite: Suite, opts: &VerifyOptions) -> RunReport {
    let mut checks = Vec::new();
    let mut summary = Vec::new();
    if matches!(suite, Suite::Relations | Suite::All) {
        relations_suite(opts, &mut checks, &mut summary);
    }
    if matches!(suite, Suite::Hopf | Suite::All) {
        hopf_suite(opts, &mut checks, &mut summary);
    }
    if matches!(suite, Suite::TensorTheorem | Suite::All) {
        tensor_theorem_suite(opts, &mut checks, &mut summary);
    }
    if matches!(suite, Suite::Characters | Suite::All) {
        characters_suite(opts, &mut checks, &mut summary);
    }
    RunReport {
        command: format!("verify {}", suite.as_str()),
        inputs: json!({
            "suite": suite.as_str(),
            "max_deg": opts.max_deg,
            "max_r": opts.max_r,
            "max_level": opts.max_level,
            "negative_controls": opts.negative_controls,
        }),
        outputs: json!({"checks_run": checks.len()}),
        checks,
        seed: Some(opts.seed),
        summary,
    }
}

fn grid_parameters() -> Vec<Rat> {
    vec![rat_int(0), rat_int(1), rat_int(-2), rat(1, 2), rat(7, 3)]
}

/// An evaluation module with one Cartan entry bumped; still a valid raw
/// module (the Cartan pair commutes) but no longer a representation.
pub fn perturbed_control() -> YModule {
    let base = evaluation_module(2, &rat_int(0));
    let mut h1 = base.h1().clone();
    let bumped = h1.get(0, 0) + rat_int(1);
    h1.set(0, 0, bumped);
    YModule::from_raw_generators(
        base.h0().clone(),
        h1,
        base.xp0().clone(),
        base.xp1().clone(),
        base.xm0().clone(),
        base.xm1().clone(),
    )
    .expect("diagonal bump keeps the Cartan pair commuting")
}

fn relations_suite(opts: &VerifyOptions, checks: &mut Vec<Check>, summary: &mut Vec<String>) {
    let mut modules = 0usize;
    let mut identities = 0usize;
    let mut failure: Option<String> = None;
    for r in 1..=opts.max_r {
        for a in grid_parameters() {
            let report = verify_relations(&evaluation_module(r, &a), opts.max_level);
            modules += 1;
            identities += report.checked;
            if !report.passed() && failure.is_none() {
                failure = Some(format!(
                    "W_{}({}) violates {}",
                    r,
                    a,
                    violation_text(&report.violations[0])
                ));
            }
        }
    }
    summary.push(format!(
        "relations: {} identities over {} evaluation modules",
        identities, modules
    ));
    checks.push(Check::theorem(
        "defining relations on the evaluation grid",
        failure.is_none(),
        failure.unwrap_or_else(|| {
            format!(
                "{} identities, {} modules, levels k+l <= {}",
                identities, modules, opts.max_level
            )
        }),
    ));
    if opts.negative_controls {
        let report = verify_relations(&perturbed_control(), 2);
        checks.push(if report.passed() {
            Check::fail(
                "perturbed control must violate a relation",
                "no violation detected",
            )
        } else {
            Check::expected_fail(
                "perturbed control must violate a relation",
                violation_text(&report.violations[0]),
            )
        });
    }
}

fn hopf_suite(opts: &VerifyOptions, checks: &mut Vec<Check>, summary: &mut Vec<String>) {
    let mut rng = rng_from_seed(opts.seed);

    let mut failure: Option<String> = None;
    for _ in 0..20 {
        let (r1, a1) = random_parameters(&mut rng, 2);
        let (r2, a2) = random_parameters(&mut rng, 2);
        let v = evaluation_module(r1, &a1);
        let w = evaluation_module(r2, &a2);
        let ok = match (
            direct_character(&tensor(&v, &w)),
            direct_character(&v),
            direct_character(&w),
        ) {
            (Ok(t), Ok(cv), Ok(cw)) => t == cv.mul(&cw),
            _ => false,
        };
        if !ok && failure.is_none() {
            failure = Some(format!("W_{}({}) (x) W_{}({})", r1, a1, r2, a2));
        }
    }
    checks.push(Check::theorem(
        "characters multiply across tensor products",
        failure.is_none(),
        failure.unwrap_or_else(|| "20 sampled pairs".into()),
    ));

    let mut twist_ok = true;
    let mut twist_cases = 0usize;
    for r in 1..=3 {
        for _ in 0..3 {
            let (_, a) = random_parameters(&mut rng, 1);
            let (_, b1) = random_parameters(&mut rng, 1);
            let (_, b2) = random_parameters(&mut rng, 1);
            let v = evaluation_module(r, &a);
            twist_cases += 2;
            twist_ok = twist_ok
                && twist(&twist(&v, &b1), &b2).same_action(&twist(&v, &(&b1 + &b2)));
            twist_ok =
                twist_ok && twist(&v, &b1).same_action(&evaluation_module(r, &(&a + &b1)));
        }
    }
    checks.push(Check::theorem(
        "twists compose and shift the evaluation parameter",
        twist_ok,
        format!("{} matrix identities", twist_cases),
    ));

    let mut failure: Option<String> = None;
    for _ in 0..8 {
        let p = DrinfeldPolynomial::from_roots(random_multiset(&mut rng, 3));
        let ok = build_irreducible(&p)
            .ok()
            .and_then(|m| {
                let lhs = direct_character(&dual(&m, DualSide::Left)).ok()?;
                let rhs = direct_character(&twist(&m, &rat_int(-1))).ok()?;
                Some(lhs == rhs)
            })
            .unwrap_or(false);
        if !ok && failure.is_none() {
            failure = Some(format!("{}", p.poly()));
        }
    }
    checks.push(Check::theorem(
        "left dual agrees with the downward twist",
        failure.is_none(),
        failure.unwrap_or_else(|| "8 sampled irreducible modules".into()),
    ));

    let mut failure: Option<String> = None;
    for _ in 0..6 {
        let (r1, a1) = random_parameters(&mut rng, 2);
        let r2 = rng.gen_range(1..=2usize);
        let gap = if rng.gen_bool(0.5) { rat_int(2) } else { rat(5, 2) };
        let a2 = &a1 + rat_int(r1 as i64) + gap;
        let v = evaluation_module(r1, &a1);
        let w = evaluation_module(r2, &a2);
        let vw = tensor(&v, &w);
        let wv = tensor(&w, &v);
        let ok = (|| -> Option<bool> {
            if !is_irreducible(&vw).ok()? || !is_irreducible(&wv).ok()? {
                return Some(false);
            }
            Some(drinfeld_polynomial(&vw).ok()?.poly() == drinfeld_polynomial(&wv).ok()?.poly())
        })()
        .unwrap_or(false);
        if !ok && failure.is_none() {
            failure = Some(format!("W_{}({}) against W_{}({})", r1, a1, r2, a2));
        }
    }
    checks.push(Check::theorem(
        "separated products are irreducible in either order",
        failure.is_none(),
        failure.unwrap_or_else(|| "6 sampled pairs".into()),
    ));
    summary.push("hopf: multiplicativity, twists, duality, order swaps".into());
}

fn tensor_theorem_suite(opts: &VerifyOptions, checks: &mut Vec<Check>, summary: &mut Vec<String>) {
    let mut rng = rng_from_seed(opts.seed);
    let cases = 50usize;
    let mut built = 0usize;
    let mut total_dim = 0usize;
    let mut failure: Option<String> = None;
    for _ in 0..cases {
        let p = DrinfeldPolynomial::from_roots(random_multiset(&mut rng, opts.max_deg));
        match build_irreducible(&p) {
            Ok(m) => {
                built += 1;
                total_dim += m.dim();
            }
            Err(e) => {
                if failure.is_none() {
                    failure = Some(format!("{}: {}", p.poly(), e));
                }
            }
        }
    }
    summary.push(format!(
        "tensor theorem: {} of {} modules built, total dimension {}",
        built, cases, total_dim
    ));
    checks.push(Check::theorem(
        "string tensor products realize their polynomials irreducibly",
        built == cases,
        failure.unwrap_or_else(|| {
            format!(
                "{} multisets of degree <= {}, irreducibility and roundtrip verified at construction",
                cases, opts.max_deg
            )
        }),
    ));
}

fn characters_suite(opts: &VerifyOptions, checks: &mut Vec<Check>, summary: &mut Vec<String>) {
    let mut rng = rng_from_seed(opts.seed);
    let deg = opts.max_deg.min(4);
    let cases = 12usize;
    let mut three_way: Option<String> = None;
    let mut dim_fail: Option<String> = None;
    let mut res_fail: Option<String> = None;
    for _ in 0..cases {
        let p = DrinfeldPolynomial::from_roots(random_multiset(&mut rng, deg));
        let outcome = (|| -> yangian::Result<(bool, bool, bool)> {
            let module = build_irreducible(&p)?;
            let direct = direct_character(&module)?;
            let eq = direct == char_strings(&p) && direct == char_formula(&p)?;
            let dim_ok = dimension_formula(&p)? == rat_int(module.dim() as i64)
                && direct.augmentation() == module.dim() as i64;
            let res = res_character(&direct)?;
            let res_ok = res == res_closed_form(&p)? && res == sl2_character_of_h0(&module)?;
            Ok((eq, dim_ok, res_ok))
        })();
        match outcome {
            Ok((eq, dim_ok, res_ok)) => {
                if !eq && three_way.is_none() {
                    three_way = Some(format!("{}", p.poly()));
                }
                if !dim_ok && dim_fail.is_none() {
                    dim_fail = Some(format!("{}", p.poly()));
                }
                if !res_ok && res_fail.is_none() {
                    res_fail = Some(format!("{}", p.poly()));
                }
            }
            Err(e) => {
                if three_way.is_none() {
                    three_way = Some(format!("{}: {}", p.poly(), e));
                }
            }
        }
    }
    let scope = format!("{} sampled polynomials of degree <= {}", cases, deg);
    checks.push(Check::theorem(
        "three character routes agree",
        three_way.is_none(),
        three_way.unwrap_or_else(|| scope.clone()),
    ));
    checks.push(Check::theorem(
        "dimension formula matches matrix size and augmentation",
        dim_fail.is_none(),
        dim_fail.unwrap_or_else(|| scope.clone()),
    ));
    checks.push(Check::theorem(
        "restriction matches the closed form and the Cartan spectrum",
        res_fail.is_none(),
        res_fail.unwrap_or_else(|| scope.clone()),
    ));

    let mut alt_ok = true;
    for a in [rat_int(0), rat(1, 2)] {
        for r in 1..=6 {
            alt_ok = alt_ok && char_alternating(r, &a) == char_w(r, &a);
        }
        for r in 0..=4 {
            let lhs = char_w(r + 2, &a);
            let rhs = char_w(r + 1, &(&a + rat_int(1)))
                .mul(&char_w(1, &a))
                .sub(&char_w(r, &(&a + rat_int(2))));
            alt_ok = alt_ok && lhs == rhs;
        }
    }
    checks.push(Check::theorem(
        "alternating sums reproduce evaluation characters",
        alt_ok,
        "r <= 6 at two base points, plus the two-term recursion",
    ));

    if opts.negative_controls {
        let report = verify_relations(&perturbed_control(), 2);
        checks.push(if report.passed() {
            Check::fail(
                "perturbed control must fail the relation check",
                "no violation detected",
            )
        } else {
            Check::expected_fail(
                "perturbed control must fail the relation check",
                violation_text(&report.violations[0]),
            )
        });
    }
    summary.push(format!("characters: {}", scope));
}
