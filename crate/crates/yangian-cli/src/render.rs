//! Canonical JSON values and text fragments for the domain types.
//!
//! Rationals render as "p/q" ("p" when the denominator is 1); polynomials as
//! coefficient arrays lowest-first. Every collection is emitted in its
//! canonical order so identical data always produces identical bytes.

use serde_json::{json, Value};

use yangian::character::{CharacterElement, Sl2Character};
use yangian::hw::DrinfeldPolynomial;
use yangian::linalg::Matrix;
use yangian::repr::YModule;
use yangian::scalar::{rat_to_string, Rat};
use yangian::strings::{RootMultiset, StringDecomposition};
use yangian::Polynomial;

pub fn rational_value(x: &Rat) -> Value {
    Value::String(rat_to_string(x))
}

pub fn polynomial_value(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(rational_value).collect())
}

pub fn multiset_value(m: &RootMultiset) -> Value {
    Value::Array(
        m.iter()
            .map(|(root, mult)| json!({"root": rat_to_string(root), "mult": mult}))
            .collect(),
    )
}

pub fn decomposition_value(d: &StringDecomposition) -> Value {
    Value::Array(
        d.components()
            .iter()
            .map(|(s, mult)| {
                json!({"start": rat_to_string(s.start()), "len": s.len(), "mult": mult})
            })
            .collect(),
    )
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| rational_value(m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn module_value(m: &YModule) -> Value {
    json!({
        "dim": m.dim(),
        "generators": {
            "H0": matrix_value(m.h0()),
            "H1": matrix_value(m.h1()),
            "X+0": matrix_value(m.xp0()),
            "X+1": matrix_value(m.xp1()),
            "X-0": matrix_value(m.xm0()),
            "X-1": matrix_value(m.xm1()),
        },
    })
}

pub fn character_value(c: &CharacterElement) -> Value {
    Value::Array(
        c.terms()
            .map(|(l, mult)| {
                json!({
                    "num": polynomial_value(l.rational_function().num()),
                    "den": polynomial_value(l.rational_function().den()),
                    "mult": mult,
                })
            })
            .collect(),
    )
}

pub fn sl2_value(s: &Sl2Character) -> Value {
    Value::Array(
        s.weights()
            .map(|(w, mult)| json!({"weight": w, "mult": mult}))
            .collect(),
    )
}

pub fn drinfeld_value(p: &DrinfeldPolynomial) -> Value {
    json!({
        "coeffs": polynomial_value(p.poly()),
        "roots": multiset_value(p.roots()),
        "strings": decomposition_value(p.decomposition()),
    })
}

pub fn multiset_text(m: &RootMultiset) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|(root, mult)| {
            if mult == 1 {
                rat_to_string(root)
            } else {
                format!("{}^{}", rat_to_string(root), mult)
            }
        })
        .collect();
    parts.join(", ")
}

pub fn decomposition_text(d: &StringDecomposition) -> String {
    if d.components().is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = d
        .components()
        .iter()
        .map(|(s, mult)| {
            if *mult == 1 {
                format!("{}", s)
            } else {
                format!("{}^{}", s, mult)
            }
        })
        .collect();
    parts.join(" + ")
}
