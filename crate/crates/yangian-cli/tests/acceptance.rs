//! Acceptance suite: nine numbered criteria covering the whole pipeline,
//! from defining relations to characters. Each test prints one line
//! `criterion N: PASS - ...` (visible with --nocapture); a failure shows up
//! as the test's own failure line.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;

use yangian::character::{
    char_alternating, char_formula, char_strings, char_w, dimension_formula, direct_character,
    res_character, res_closed_form, sl2_character_of_h0, CharacterElement,
};
use yangian::hw::{
    build_irreducible, drinfeld_from_eigenvalues, drinfeld_polynomial, eigenvalue_expansion,
    hw_vectors, is_highest_weight, is_irreducible, DrinfeldPolynomial,
};
use yangian::linalg::Matrix;
use yangian::repr::{
    dual, evaluation_module, quotient, restrict, submodule, tensor, trivial_module, twist,
    verify_relations, DualSide, Ladder, YModule,
};
use yangian::scalar::{rat, rat_int};
use yangian::strings::{canonical_decomposition, RootMultiset, StringCounts};
use yangian::{Polynomial, Rat};

use yangian_cli::commands::perturbed_control;
use yangian_cli::corpus::{random_multiset, random_parameters, rng_from_seed};

fn grid_parameters() -> Vec<Rat> {
    vec![rat_int(0), rat_int(1), rat_int(-2), rat(1, 2), rat(7, 3)]
}

fn string_roots(r: usize, a: &Rat) -> RootMultiset {
    let mut roots = RootMultiset::new();
    for j in 0..r {
        roots.insert(a + rat_int(j as i64), 1);
    }
    roots
}

fn rat_pow(base: &Rat, k: usize) -> Rat {
    let mut acc = rat_int(1);
    for _ in 0..k {
        acc = &acc * base;
    }
    acc
}

#[test]
fn criterion_1_defining_relations_on_the_evaluation_grid() {
    let start = Instant::now();
    let mut modules = 0usize;
    let mut identities = 0usize;
    for r in 1..=5 {
        for a in grid_parameters() {
            let report = verify_relations(&evaluation_module(r, &a), 6);
            assert!(report.passed(), "relations fail on W_{}({})", r, a);
            modules += 1;
            identities += report.checked;
        }
    }
    let control = verify_relations(&perturbed_control(), 2);
    assert!(!control.passed(), "perturbed control passed unexpectedly");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {:?}", elapsed);
    println!(
        "criterion 1: PASS - {} identities on {} modules at levels k+l <= 6, control fails ({:?})",
        identities, modules, elapsed
    );
}

fn closed_h(r: usize, a: &Rat, k: usize) -> Matrix {
    let n = r + 1;
    let mut m = Matrix::zeros(n, n);
    for s in 0..=r {
        let below = rat_pow(&(a + rat_int(s as i64 - 1)), k)
            * rat_int(s as i64)
            * rat_int((r - s) as i64 + 1);
        let above = rat_pow(&(a + rat_int(s as i64)), k)
            * rat_int(s as i64 + 1)
            * rat_int((r - s) as i64);
        m.set(s, s, below - above);
    }
    m
}

fn closed_xp(r: usize, a: &Rat, k: usize) -> Matrix {
    let n = r + 1;
    let mut m = Matrix::zeros(n, n);
    for s in 0..r {
        let c = rat_pow(&(a + rat_int(s as i64)), k) * rat_int(s as i64 + 1);
        m.set(s + 1, s, c);
    }
    m
}

fn closed_xm(r: usize, a: &Rat, k: usize) -> Matrix {
    let n = r + 1;
    let mut m = Matrix::zeros(n, n);
    for s in 1..=r {
        let c = rat_pow(&(a + rat_int(s as i64 - 1)), k) * rat_int((r - s) as i64 + 1);
        m.set(s - 1, s, c);
    }
    m
}

#[test]
fn criterion_2_ladder_recursion_matches_closed_forms() {
    let mut compared = 0usize;
    for r in 1..=5 {
        for a in grid_parameters() {
            let ladder = Ladder::new(&evaluation_module(r, &a), 6);
            for k in 0..=6 {
                assert_eq!(*ladder.h(k), closed_h(r, &a, k), "H_{} on W_{}({})", k, r, a);
                assert_eq!(*ladder.xp(k), closed_xp(r, &a, k), "X_{}^+ on W_{}({})", k, r, a);
                assert_eq!(*ladder.xm(k), closed_xm(r, &a, k), "X_{}^- on W_{}({})", k, r, a);
                compared += 3;
            }
        }
    }
    let mut h2 = Matrix::zeros(3, 3);
    h2.set(1, 1, rat_int(-2));
    h2.set(2, 2, rat_int(2));
    assert_eq!(*Ladder::new(&evaluation_module(2, &rat_int(0)), 2).h(2), h2);
    println!(
        "criterion 2: PASS - {} matrices match for k <= 6, including H_2 = diag(0,-2,2) on W_2(0)",
        compared
    );
}

#[test]
fn criterion_3_drinfeld_polynomial_roundtrip() {
    let mut grid_cases = 0usize;
    for r in 1..=5 {
        for a in grid_parameters() {
            let p = drinfeld_polynomial(&evaluation_module(r, &a)).unwrap();
            let expected = DrinfeldPolynomial::from_roots(string_roots(r, &a));
            assert_eq!(p.poly(), expected.poly(), "W_{}({})", r, a);
            grid_cases += 1;
        }
    }

    // Harvest every highest weight eigenvalue sequence in sight and confirm
    // that solving for the polynomial and re-expanding is the identity.
    let mut harvest: Vec<YModule> = Vec::new();
    for r in 1..=4 {
        for a in grid_parameters() {
            harvest.push(evaluation_module(r, &a));
        }
    }
    for a in [rat_int(0), rat(1, 2), rat_int(-3)] {
        let lo = evaluation_module(1, &a);
        let up = evaluation_module(1, &(&a + rat_int(1)));
        harvest.push(tensor(&up, &lo));
        harvest.push(tensor(&lo, &up));
    }
    harvest.push(tensor(
        &evaluation_module(2, &rat_int(0)),
        &evaluation_module(1, &rat(5, 2)),
    ));
    let mut sequences = 0usize;
    for module in &harvest {
        for witness in hw_vectors(module).unwrap() {
            let p = drinfeld_from_eigenvalues(&witness.eigenvalues).unwrap();
            let expanded = eigenvalue_expansion(&p, witness.eigenvalues.len() - 1);
            assert_eq!(expanded, witness.eigenvalues);
            sequences += 1;
        }
    }
    assert!(sequences > harvest.len(), "expected multiple sequences");
    println!(
        "criterion 3: PASS - {} grid polynomials and {} harvested eigenvalue sequences roundtrip",
        grid_cases, sequences
    );
}

#[test]
fn criterion_4_short_exact_sequences_of_two_dimensional_pairs() {
    // In the ordered product basis (left factor slowest) of W_1 (x) W_1:
    // index 1 is v^- (x) v^+, index 2 is v^+ (x) v^-.
    let singlet = || vec![rat_int(0), rat_int(1), rat_int(-1), rat_int(0)];
    let product_vp_vm = || vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)];
    let top = || vec![rat_int(0), rat_int(0), rat_int(0), rat_int(1)];
    for a in [rat_int(0), rat(1, 2), rat_int(-3)] {
        let lo = evaluation_module(1, &a);
        let up = evaluation_module(1, &(&a + rat_int(1)));

        // Descending order: trivial submodule, quotient W_2(a), generated by
        // the product vector v^+ (x) v^-.
        let desc = tensor(&up, &lo);
        let line = submodule(&desc, &[singlet()]);
        assert_eq!(line.dim(), 1, "a = {}", a);
        let inner = restrict(&desc, &line).unwrap();
        assert!(inner.same_action(&trivial_module()));
        assert_eq!(direct_character(&inner).unwrap(), CharacterElement::one());
        let outer = quotient(&desc, &line).unwrap();
        assert_eq!(direct_character(&outer).unwrap(), char_w(2, &a));
        assert_eq!(
            drinfeld_polynomial(&outer).unwrap().poly(),
            DrinfeldPolynomial::from_roots(string_roots(2, &a)).poly()
        );
        assert_eq!(submodule(&desc, &[product_vp_vm()]).dim(), 4);
        assert!(is_highest_weight(&desc).unwrap().is_some());

        // Ascending order: submodule W_2(a), trivial quotient. The only
        // product vectors inside the three-dimensional submodule are the top
        // and bottom ones, because any weight-zero product vector has a
        // nonzero component along the complementary line and so generates
        // everything; the submodule is reached from its top vector.
        let asc = tensor(&lo, &up);
        let sub = submodule(&asc, &[top()]);
        assert_eq!(sub.dim(), 3, "a = {}", a);
        let inner = restrict(&asc, &sub).unwrap();
        assert_eq!(direct_character(&inner).unwrap(), char_w(2, &a));
        assert_eq!(
            drinfeld_polynomial(&inner).unwrap().poly(),
            DrinfeldPolynomial::from_roots(string_roots(2, &a)).poly()
        );
        let outer = quotient(&asc, &sub).unwrap();
        assert!(outer.same_action(&trivial_module()));
        assert_eq!(direct_character(&outer).unwrap(), CharacterElement::one());
        assert_eq!(submodule(&asc, &[product_vp_vm()]).dim(), 4);
        assert_eq!(submodule(&asc, &[singlet()]).dim(), 4);
        assert!(is_highest_weight(&asc).unwrap().is_none());

        // Characters add across both sequences.
        assert_eq!(
            direct_character(&desc).unwrap(),
            CharacterElement::one().add(&char_w(2, &a))
        );
        assert_eq!(
            direct_character(&asc).unwrap(),
            CharacterElement::one().add(&char_w(2, &a))
        );

        // Duality shifts the evaluation parameter down on the left and up on
        // the right.
        let left = dual(&lo, DualSide::Left);
        let down = &a - rat_int(1);
        assert!(is_irreducible(&left).unwrap());
        assert_eq!(
            drinfeld_polynomial(&left).unwrap().poly(),
            &Polynomial::linear(&down)
        );
        assert_eq!(direct_character(&left).unwrap(), char_w(1, &down));
        let right = dual(&lo, DualSide::Right);
        assert_eq!(
            direct_character(&right).unwrap(),
            char_w(1, &(&a + rat_int(1)))
        );
    }
    println!(
        "criterion 4: PASS - sequences, generators, duality shifts, and characters at three base points"
    );
}

struct Corpus {
    items: Vec<(DrinfeldPolynomial, YModule)>,
    build_time: Duration,
}

static CORPUS: OnceLock<Corpus> = OnceLock::new();

/// Fifty seeded root multisets of degree <= 5 over integer, half-integer,
/// and third-integer cosets, each realized as a module once and shared by
/// the criteria that exercise the same corpus.
fn corpus() -> &'static Corpus {
    CORPUS.get_or_init(|| {
        let start = Instant::now();
        let mut rng = rng_from_seed(0xC0FFEE);
        let mut items = Vec::new();
        for _ in 0..50 {
            let p = DrinfeldPolynomial::from_roots(random_multiset(&mut rng, 5));
            let module = build_irreducible(&p).unwrap_or_else(|e| {
                panic!("construction failed for {}: {}", p.poly(), e)
            });
            items.push((p, module));
        }
        Corpus {
            items,
            build_time: start.elapsed(),
        }
    })
}

#[test]
fn criterion_5_tensor_construction_realizes_sampled_polynomials() {
    let corpus = corpus();
    let start = Instant::now();
    let mut non_integer = 0usize;
    for (p, module) in &corpus.items {
        if p.roots().iter().any(|(root, _)| !root.is_integer()) {
            non_integer += 1;
        }
        assert!(
            is_irreducible(module).unwrap(),
            "reducible module for {}",
            p.poly()
        );
        assert_eq!(
            drinfeld_polynomial(module).unwrap().poly(),
            p.poly(),
            "roundtrip failed for {}",
            p.poly()
        );
    }
    let elapsed = corpus.build_time + start.elapsed();
    assert!(corpus.items.len() >= 50);
    assert!(non_integer > 0, "corpus never sampled a non-integer offset");
    assert!(elapsed < Duration::from_secs(60), "took {:?}", elapsed);
    println!(
        "criterion 5: PASS - {} modules built, irreducible, and polynomial-exact ({} with non-integer roots, {:?})",
        corpus.items.len(),
        non_integer,
        elapsed
    );
}

#[test]
fn criterion_6_character_routes_agree_on_the_corpus() {
    let corpus = corpus();
    for (p, module) in &corpus.items {
        let direct = direct_character(module).unwrap();
        assert_eq!(direct, char_strings(p), "string route for {}", p.poly());
        assert_eq!(
            direct,
            char_formula(p).unwrap(),
            "formula route for {}",
            p.poly()
        );
        let dim = rat_int(module.dim() as i64);
        assert_eq!(dimension_formula(p).unwrap(), dim);
        assert_eq!(rat_int(direct.augmentation()), dim);
        let restricted = res_character(&direct).unwrap();
        assert_eq!(restricted, res_closed_form(p).unwrap());
        assert_eq!(restricted, sl2_character_of_h0(module).unwrap());
    }
    // Dimension three for a full pair of adjacent roots, four for a triple.
    for a in [rat_int(0), rat(1, 2)] {
        let pair = DrinfeldPolynomial::from_roots(string_roots(2, &a));
        assert_eq!(dimension_formula(&pair).unwrap(), rat_int(3));
        assert_eq!(build_irreducible(&pair).unwrap().dim(), 3);
        let triple = DrinfeldPolynomial::from_roots(string_roots(3, &a));
        assert_eq!(dimension_formula(&triple).unwrap(), rat_int(4));
        assert_eq!(build_irreducible(&triple).unwrap().dim(), 4);
    }
    println!(
        "criterion 6: PASS - three routes, dimensions, and restrictions agree on {} corpus modules",
        corpus.items.len()
    );
}

#[test]
fn criterion_7_alternating_sums_and_the_two_term_recursion() {
    for a in [rat_int(0), rat(1, 2)] {
        for r in 1..=6 {
            assert_eq!(char_alternating(r, &a), char_w(r, &a), "r = {}, a = {}", r, a);
        }
        for r in 0..=4 {
            let lhs = char_w(r + 2, &a);
            let rhs = char_w(r + 1, &(&a + rat_int(1)))
                .mul(&char_w(1, &a))
                .sub(&char_w(r, &(&a + rat_int(2))));
            assert_eq!(lhs, rhs, "recursion at r = {}, a = {}", r, a);
        }
    }
    println!(
        "criterion 7: PASS - alternating sums equal evaluation characters for r <= 6 and the recursion holds"
    );
}

type FlatString = (Rat, usize);

fn string_members(s: &FlatString) -> BTreeSet<Rat> {
    (0..s.1).map(|j| &s.0 + rat_int(j as i64)).collect()
}

fn pair_in_general_position(s1: &FlatString, s2: &FlatString) -> bool {
    let a = string_members(s1);
    let b = string_members(s2);
    if a.is_subset(&b) || b.is_subset(&a) {
        return true;
    }
    let union: BTreeSet<Rat> = a.union(&b).cloned().collect();
    let lo = union.iter().next().unwrap();
    let hi = union.iter().next_back().unwrap();
    hi - lo + rat_int(1) != rat_int(union.len() as i64)
}

/// Every partition of the multiset into strings; the string covering the
/// smallest remaining root must start there, so the recursion is exhaustive.
fn string_partitions(
    remaining: &mut BTreeMap<Rat, usize>,
    acc: &mut Vec<FlatString>,
    out: &mut Vec<Vec<FlatString>>,
) {
    let Some(start) = remaining
        .iter()
        .find(|(_, &v)| v > 0)
        .map(|(k, _)| k.clone())
    else {
        let mut partition = acc.clone();
        partition.sort();
        out.push(partition);
        return;
    };
    let mut len = 0;
    loop {
        let next = &start + rat_int(len as i64);
        match remaining.get_mut(&next) {
            Some(v) if *v > 0 => {
                *v -= 1;
                len += 1;
            }
            _ => break,
        }
        acc.push((start.clone(), len));
        string_partitions(remaining, acc, out);
        acc.pop();
    }
    for j in 0..len {
        *remaining.get_mut(&(&start + rat_int(j as i64))).unwrap() += 1;
    }
}

fn multisets_over_support(support: &[Rat], budget: usize) -> Vec<RootMultiset> {
    fn rec(
        support: &[Rat],
        idx: usize,
        left: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<RootMultiset>,
    ) {
        if idx == support.len() {
            if current.iter().any(|&c| c > 0) {
                let mut m = RootMultiset::new();
                for (i, &c) in current.iter().enumerate() {
                    if c > 0 {
                        m.insert(support[i].clone(), c);
                    }
                }
                out.push(m);
            }
            return;
        }
        for c in 0..=left {
            current.push(c);
            rec(support, idx + 1, left - c, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(support, 0, budget, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_8_window_counts_and_the_decomposition_oracle() {
    let start = Instant::now();
    let mut rng = rng_from_seed(0xDECADE);
    let mut windows = 0usize;
    for _ in 0..500 {
        let roots = random_multiset(&mut rng, 8);
        let counts = StringCounts::new(&roots);
        for (r, a) in counts.keys() {
            assert_eq!(
                counts.powers(r, &a),
                counts.containments(r, &a),
                "window of length {} at {} for {:?}",
                r,
                a,
                roots
            );
            windows += 1;
        }
    }

    let support: Vec<Rat> = (0..5i64).map(rat_int).collect();
    let all = multisets_over_support(&support, 6);
    assert_eq!(all.len(), 461);
    for multiset in &all {
        let mut remaining: BTreeMap<Rat, usize> =
            multiset.iter().map(|(r, m)| (r.clone(), m)).collect();
        let mut out = Vec::new();
        string_partitions(&mut remaining, &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        let good: Vec<&Vec<FlatString>> = out
            .iter()
            .filter(|p| {
                (0..p.len())
                    .all(|i| (i + 1..p.len()).all(|j| pair_in_general_position(&p[i], &p[j])))
            })
            .collect();
        assert_eq!(good.len(), 1, "not unique for {:?}", multiset);
        let mut canonical: Vec<FlatString> = canonical_decomposition(multiset)
            .strings_with_repetition()
            .map(|s| (s.start().clone(), s.len()))
            .collect();
        canonical.sort();
        assert_eq!(good[0], &canonical, "mismatch for {:?}", multiset);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {:?}", elapsed);
    println!(
        "criterion 8: PASS - counts agree on {} windows over 500 multisets; oracle matches on all 461 supported multisets ({:?})",
        windows, elapsed
    );
}

#[test]
fn criterion_9_hopf_and_functoriality_properties() {
    let mut rng = rng_from_seed(0xB0B);

    for _ in 0..20 {
        let (r1, a1) = random_parameters(&mut rng, 2);
        let (r2, a2) = random_parameters(&mut rng, 2);
        let v = evaluation_module(r1, &a1);
        let w = evaluation_module(r2, &a2);
        assert_eq!(
            direct_character(&tensor(&v, &w)).unwrap(),
            direct_character(&v)
                .unwrap()
                .mul(&direct_character(&w).unwrap()),
            "W_{}({}) (x) W_{}({})",
            r1,
            a1,
            r2,
            a2
        );
    }

    for r in 1..=3 {
        for _ in 0..3 {
            let (_, a) = random_parameters(&mut rng, 1);
            let (_, b1) = random_parameters(&mut rng, 1);
            let (_, b2) = random_parameters(&mut rng, 1);
            let v = evaluation_module(r, &a);
            assert!(
                twist(&twist(&v, &b1), &b2).same_action(&twist(&v, &(&b1 + &b2))),
                "group law at r = {}",
                r
            );
            assert!(
                twist(&v, &b1).same_action(&evaluation_module(r, &(&a + &b1))),
                "parameter shift at r = {}",
                r
            );
        }
    }

    for _ in 0..8 {
        let p = DrinfeldPolynomial::from_roots(random_multiset(&mut rng, 3));
        let module = build_irreducible(&p).unwrap();
        assert_eq!(
            direct_character(&dual(&module, DualSide::Left)).unwrap(),
            direct_character(&twist(&module, &rat_int(-1))).unwrap(),
            "dual vs downward twist for {}",
            p.poly()
        );
    }

    for _ in 0..6 {
        let (r1, a1) = random_parameters(&mut rng, 2);
        let r2 = rng.gen_range(1..=2usize);
        let gap = if rng.gen_bool(0.5) {
            rat_int(2)
        } else {
            rat(5, 2)
        };
        let a2 = &a1 + rat_int(r1 as i64) + gap;
        let v = evaluation_module(r1, &a1);
        let w = evaluation_module(r2, &a2);
        let vw = tensor(&v, &w);
        let wv = tensor(&w, &v);
        assert!(is_irreducible(&vw).unwrap(), "W_{}({}) (x) W_{}({})", r1, a1, r2, a2);
        assert!(is_irreducible(&wv).unwrap(), "W_{}({}) (x) W_{}({})", r2, a2, r1, a1);
        assert_eq!(
            drinfeld_polynomial(&vw).unwrap().poly(),
            drinfeld_polynomial(&wv).unwrap().poly()
        );
    }
    println!(
        "criterion 9: PASS - multiplicativity, twist laws, duality, and order swaps on seeded samples"
    );
}
