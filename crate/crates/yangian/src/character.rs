//! Characters of finite-dimensional modules.
//!
//! A character lives in the group ring over the multiplicative group of
//! rational functions that tend to 1 at infinity: each joint generalized
//! eigenvalue class of the Cartan operators contributes its generating
//! series as a group element, weighted by the dimension of the class.
//!
//! Three independent routes to the same character are provided: the direct
//! route from generator matrices (`direct_character`), the closed product
//! formula over net string exponents (`char_formula`), and the product over
//! the canonical string decomposition (`char_strings`). Their exact equality
//! is the central cross-check of the library.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hw::DrinfeldPolynomial;
use crate::linalg::{linear_combination, Echelon};
use crate::repr::{Graded, YModule};
use crate::scalar::{
    laurent_expand, pade_reconstruct, rat_int, Polynomial, Rat, RationalFunction,
};
use crate::strings::{RootMultiset, StringCounts};

/// An element of the group of monic, coprime, equal-degree rational function
/// pairs under multiplication; the label of one generalized eigenvalue class.
#[derive(Clone, PartialEq, Eq)]
pub struct LElement {
    f: RationalFunction,
}

impl LElement {
    /// Wraps a rational function, which must tend to 1 at infinity.
    pub fn new(f: RationalFunction) -> Result<Self> {
        if !f.tends_to_one() {
            return Err(Error::InvalidRationalFunction(
                "numerator and denominator degrees differ",
            ));
        }
        Ok(LElement { f })
    }

    pub fn one() -> Self {
        LElement {
            f: RationalFunction::one(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.f.is_one()
    }

    pub fn rational_function(&self) -> &RationalFunction {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.num().degree().unwrap_or(0)
    }

    pub fn mul(&self, other: &LElement) -> LElement {
        LElement {
            f: self.f.mul(&other.f),
        }
    }

    pub fn inv(&self) -> LElement {
        LElement { f: self.f.inv() }
    }

    pub fn pow(&self, n: i64) -> LElement {
        LElement { f: self.f.pow(n) }
    }

    /// The first Laurent coefficient `d_0`, which `res` sends the element to.
    pub fn residue(&self) -> Rat {
        laurent_expand(&self.f, 0).expect("element tends to one")[0].clone()
    }
}

/// Canonical order for serialization: degree first, then the numerator and
/// denominator coefficient lists.
impl Ord for LElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.f.num().cmp(other.f.num()))
            .then_with(|| self.f.den().cmp(other.f.den()))
    }
}

impl PartialOrd for LElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", self.f)
    }
}

impl fmt::Debug for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `x_b`: the class of `(u - b + 1)/(u - b)`.
pub fn x_element(b: &Rat) -> LElement {
    let num = Polynomial::linear(&(b - rat_int(1)));
    let den = Polynomial::linear(b);
    LElement::new(RationalFunction::new(num, den).expect("distinct linear factors"))
        .expect("equal degrees")
}

/// The class of `P(u+1)/P(u)`.
pub fn e_of(p: &DrinfeldPolynomial) -> LElement {
    LElement::new(RationalFunction::shift_quotient(p.poly()).expect("monic polynomial"))
        .expect("shift quotient has equal degrees")
}

/// A formal integer combination of group elements; the character ring.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CharacterElement {
    terms: BTreeMap<LElement, i64>,
}

impl CharacterElement {
    pub fn zero() -> Self {
        CharacterElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        CharacterElement::from_l(LElement::one())
    }

    pub fn from_l(l: LElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(l, 1);
        CharacterElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LElement, i64)> {
        self.terms.iter().map(|(l, &c)| (l, c))
    }

    pub fn coefficient(&self, l: &LElement) -> i64 {
        self.terms.get(l).copied().unwrap_or(0)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, l: LElement, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(l) {
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &CharacterElement) -> CharacterElement {
        let mut out = self.clone();
        for (l, c) in other.terms() {
            out.insert(l.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &CharacterElement) -> CharacterElement {
        let mut out = self.clone();
        for (l, c) in other.terms() {
            out.insert(l.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &CharacterElement) -> CharacterElement {
        let mut out = CharacterElement::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.insert(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn mul_l(&self, l: &LElement) -> CharacterElement {
        let mut out = CharacterElement::zero();
        for (a, c) in self.terms() {
            out.insert(a.mul(l), c);
        }
        out
    }

    pub fn pow(&self, n: usize) -> CharacterElement {
        let mut out = CharacterElement::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Sum of all coefficients; the dimension for a module character.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Exact division in the character ring.
    ///
    /// Both operands must have all their labels split over the rationals
    /// (every character built from evaluation data does). Terms are rewritten
    /// as integer exponent vectors over the linear factors; exponent vectors
    /// are ordered lexicographically, which is translation invariant, so both
    /// the leading and the trailing term of a product are the products of the
    /// corresponding extreme terms. The quotient is found by repeated leading
    /// term elimination; an exact division keeps the remainder's trailing
    /// term pinned at `min(f) = min(q) + min(g)`, so any drift below it
    /// proves inexactness immediately. Any failure (a non-dividing
    /// coefficient, a non-split label, or non-termination) is reported,
    /// never approximated.
    pub fn exact_div(&self, divisor: &CharacterElement) -> Result<CharacterElement> {
        if divisor.is_zero() {
            return Err(Error::InexactCharacterDivision("division by zero"));
        }
        if self.is_zero() {
            return Ok(CharacterElement::zero());
        }
        // A single term c e(l) is invertible up to the integer factor, so the
        // quotient needs no leading-term elimination, and none of the root
        // splitting that elimination relies on.
        if divisor.term_count() == 1 {
            let (l, c) = divisor.terms().next().expect("divisor nonzero");
            let inv = l.inv();
            let mut out = CharacterElement::zero();
            for (term, coeff) in self.terms() {
                if coeff % c != 0 {
                    return Err(Error::InexactCharacterDivision(
                        "leading coefficient does not divide",
                    ));
                }
                out.insert(term.mul(&inv), coeff / c);
            }
            return Ok(out);
        }
        let mut rem: BTreeMap<ExpVec, i64> = BTreeMap::new();
        for (l, c) in self.terms() {
            rem.insert(ExpVec::from_l(l)?, c);
        }
        let mut div: BTreeMap<ExpVec, i64> = BTreeMap::new();
        for (l, c) in divisor.terms() {
            div.insert(ExpVec::from_l(l)?, c);
        }
        let (div_lead, div_lead_coeff) = {
            let (k, v) = div.iter().next_back().expect("divisor nonzero");
            (k.clone(), *v)
        };
        let div_trail = div.keys().next().expect("divisor nonzero").clone();
        let f_trail = rem.keys().next().expect("dividend nonzero").clone();
        let mut quotient_terms: Vec<(ExpVec, i64)> = Vec::new();
        let mut steps = 0usize;
        while let Some((rem_lead, rem_coeff)) = rem.iter().next_back().map(|(k, &v)| (k.clone(), v)) {
            steps += 1;
            if steps > 20_000 {
                return Err(Error::InexactCharacterDivision(
                    "division did not terminate within the step budget",
                ));
            }
            if rem.keys().next().expect("remainder nonzero") != &f_trail {
                return Err(Error::InexactCharacterDivision(
                    "remainder trailing term moved",
                ));
            }
            if rem_coeff % div_lead_coeff != 0 {
                return Err(Error::InexactCharacterDivision(
                    "leading coefficient does not divide",
                ));
            }
            let c = rem_coeff / div_lead_coeff;
            let shift = rem_lead.sub(&div_lead);
            if shift.add(&div_trail) < f_trail {
                return Err(Error::InexactCharacterDivision(
                    "quotient term falls below the trailing bound",
                ));
            }
            for (e, coeff) in div.iter() {
                let key = e.add(&shift);
                let entry = rem.entry(key.clone()).or_insert(0);
                *entry -= c * coeff;
                if *entry == 0 {
                    rem.remove(&key);
                }
            }
            quotient_terms.push((shift, c));
        }
        let mut quotient = CharacterElement::zero();
        for (e, c) in quotient_terms {
            quotient.insert(e.to_l(), c);
        }
        debug_assert_eq!(quotient.mul(divisor), *self);
        Ok(quotient)
    }
}

impl fmt::Display for CharacterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{}*", c)?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CharacterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Integer exponent vector over linear factors `u - root`, summing to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
struct ExpVec(BTreeMap<Rat, i64>);

impl ExpVec {
    fn from_l(l: &LElement) -> Result<Self> {
        let num = RootMultiset::from_polynomial(l.rational_function().num())
            .ok_or(Error::InexactCharacterDivision("label does not split"))?;
        let den = RootMultiset::from_polynomial(l.rational_function().den())
            .ok_or(Error::InexactCharacterDivision("label does not split"))?;
        let mut map = BTreeMap::new();
        for (root, mult) in num.iter() {
            map.insert(root.clone(), mult as i64);
        }
        for (root, mult) in den.iter() {
            *map.entry(root.clone()).or_insert(0) -= mult as i64;
        }
        map.retain(|_, v| *v != 0);
        Ok(ExpVec(map))
    }

    fn to_l(&self) -> LElement {
        let mut num = Polynomial::one();
        let mut den = Polynomial::one();
        for (root, &e) in &self.0 {
            let factor = Polynomial::linear(root).pow(e.unsigned_abs() as usize);
            if e > 0 {
                num = &num * &factor;
            } else {
                den = &den * &factor;
            }
        }
        LElement::new(RationalFunction::new(num, den).expect("disjoint factors"))
            .expect("exponents sum to zero")
    }

    fn add(&self, other: &ExpVec) -> ExpVec {
        let mut map = self.0.clone();
        for (k, v) in &other.0 {
            *map.entry(k.clone()).or_insert(0) += v;
        }
        map.retain(|_, v| *v != 0);
        ExpVec(map)
    }

    fn sub(&self, other: &ExpVec) -> ExpVec {
        let mut map = self.0.clone();
        for (k, v) in &other.0 {
            *map.entry(k.clone()).or_insert(0) -= v;
        }
        map.retain(|_, v| *v != 0);
        ExpVec(map)
    }
}

/// Lexicographic over the union of root keys in ascending order; translation
/// invariant, so leading terms multiply.
impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        let keys: BTreeSet<&Rat> = self.0.keys().chain(other.0.keys()).collect();
        for k in keys {
            let a = self.0.get(k).copied().unwrap_or(0);
            let b = other.0.get(k).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which reading of the printed `y` definition to use.
///
/// The inner `sum over t` telescopes against `e(P)` only when read as a
/// product over `t`; the literal nested-sum reading breaks the evaluation
/// module cross-check and the `res` identity, and is kept solely to document
/// that discrepancy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YReading {
    Product,
    NestedSum,
}

/// `y_{r,a} = sum_{s=0}^{r} prod_{t=1}^{s} x_{a+r-t}^{-1} x_{a+r-t+1}^{-1}`,
/// and 1 for `r <= 0`.
pub fn y_element(r: i64, a: &Rat) -> CharacterElement {
    y_element_with_reading(r, a, YReading::Product)
}

pub fn y_element_with_reading(r: i64, a: &Rat, reading: YReading) -> CharacterElement {
    if r <= 0 {
        return CharacterElement::one();
    }
    let mut out = CharacterElement::one();
    for s in 1..=r {
        let factors = (1..=s).map(|t| {
            let b = a + rat_int(r - t);
            x_element(&b).inv().mul(&x_element(&(&b + rat_int(1))).inv())
        });
        match reading {
            YReading::Product => {
                let mut term = LElement::one();
                for f in factors {
                    term = term.mul(&f);
                }
                out.insert(term, 1);
            }
            YReading::NestedSum => {
                for f in factors {
                    out.insert(f, 1);
                }
            }
        }
    }
    out
}

/// Closed-form character of the evaluation module `W_r(a)`.
pub fn char_w(r: usize, a: &Rat) -> CharacterElement {
    let mut roots = RootMultiset::new();
    for j in 0..r {
        roots.insert(a + rat_int(j as i64), 1);
    }
    let p = DrinfeldPolynomial::from_roots(roots);
    y_element(r as i64, a).mul_l(&e_of(&p))
}

/// Character of the irreducible module with Drinfel'd polynomial `P`, by the
/// product formula over all net string exponents:
/// `e(P) prod (y_{r,a} y_{r-2,a+1} / (y_{r-1,a} y_{r-1,a+1}))^{m_{r,a}}`.
///
/// The exponents of each `y` factor are collected across all windows before
/// anything is expanded. Interior windows telescope at the exponent level,
/// which keeps the intermediate products small; expanding the raw numerator
/// first grows its term count exponentially in the string lengths.
pub fn char_formula(p: &DrinfeldPolynomial) -> Result<CharacterElement> {
    let counts = StringCounts::new(p.roots());
    let mut net: BTreeMap<(i64, Rat), i64> = BTreeMap::new();
    for (r, a) in counts.keys() {
        let m = counts.powers(r, &a) as i64;
        if m == 0 {
            continue;
        }
        let r = r as i64;
        let up = &a + rat_int(1);
        for (key, sign) in [
            ((r, a.clone()), 1),
            ((r - 2, up.clone()), 1),
            ((r - 1, a), -1),
            ((r - 1, up), -1),
        ] {
            // y_{r,a} = 1 for r <= 0 contributes nothing to either side.
            if key.0 > 0 {
                *net.entry(key).or_insert(0) += sign * m;
            }
        }
    }
    // Pair every y factor with the shift quotient of its own window
    // polynomial, so each term normalizes to a small exponent as it is
    // multiplied; bare y terms carry exponents whose degrees add up across
    // factors, and the final division then pays for it in large coefficient
    // gcds. The leftover single term restores the exact e(P) factor and is 1
    // precisely when the net windows tile the root multiset.
    let mut num = CharacterElement::one();
    let mut den = CharacterElement::one();
    let mut leftover = e_of(p);
    for ((r, a), exp) in &net {
        if *exp == 0 {
            continue;
        }
        let window: RootMultiset = (0..*r).map(|j| a + rat_int(j)).collect();
        let pw = DrinfeldPolynomial::from_roots(window);
        let paired = y_element(*r, a).mul_l(&e_of(&pw));
        if *exp > 0 {
            num = num.mul(&paired.pow(*exp as usize));
        } else {
            den = den.mul(&paired.pow((-exp) as usize));
        }
        leftover = leftover.mul(&e_of(&pw).pow(-exp));
    }
    Ok(num.exact_div(&den)?.mul_l(&leftover))
}

/// Character of the irreducible module with Drinfel'd polynomial `P`, as the
/// product of evaluation-module characters over the canonical decomposition:
/// `prod char_w(r, a)^{N_{r,a}}`.
pub fn char_strings(p: &DrinfeldPolynomial) -> CharacterElement {
    let mut out = CharacterElement::one();
    for (string, mult) in p.decomposition().components() {
        out = out.mul(&char_w(string.len(), string.start()).pow(*mult));
    }
    out
}

/// Character of `W_r(a)` as an alternating sum of products of two-dimensional
/// characters `chi_b = char_w(1, b)`:
/// `sum_{s=0}^{floor(r/2)} (-1)^s A_{r,a}^{(s)}` where `A_{r,a}^{(s)}` sums
/// `prod_j chi_{a+t_j}` over `r > t_1 > ... > t_{r-2s} >= 0` with
/// `t_j = r - j (mod 2)`.
pub fn char_alternating(r: usize, a: &Rat) -> CharacterElement {
    let mut out = CharacterElement::zero();
    for s in 0..=(r / 2) {
        let len = r - 2 * s;
        let mut tuples: Vec<Vec<i64>> = vec![Vec::new()];
        for j in 1..=len {
            let parity = ((r - j) % 2) as i64;
            let mut next = Vec::new();
            for t in tuples {
                let upper = t.last().map_or(r as i64, |&prev| prev);
                let mut candidate = parity;
                while candidate < upper {
                    let mut t2 = t.clone();
                    t2.push(candidate);
                    // Keep t_j descending: candidates below the previous entry.
                    next.push(t2);
                    candidate += 2;
                }
            }
            tuples = next;
        }
        for t in tuples {
            let mut term = CharacterElement::one();
            for &tj in &t {
                term = term.mul(&char_w(1, &(a + rat_int(tj))));
            }
            if s % 2 == 0 {
                out = out.add(&term);
            } else {
                out = out.sub(&term);
            }
        }
    }
    out
}

/// Character computed from the generator matrices alone: the module is cut
/// into joint generalized eigenspaces of `H_0 ..= H_K` and each class's
/// eigenvalue series is reconstructed as a bounded-degree rational function.
///
/// `K = 2 dim V` makes the refinement provably complete: two distinct
/// rational series of degree at most `dim V` cannot share Laurent
/// coefficients through order `2 dim V + 1`.
pub fn direct_character(module: &YModule) -> Result<CharacterElement> {
    let g = Graded::new(module)?;
    let depth = 2 * module.dim();
    let mut out = CharacterElement::zero();
    for b in 0..g.block_count() {
        let m = g.block_size(b);
        let h_ladder = g.h_ladder_at(b, depth);
        let mut full = Echelon::new(m);
        for i in 0..m {
            let mut e = vec![Rat::zero(); m];
            e[i] = rat_int(1);
            full.insert(&e);
        }
        let mut leaves: Vec<(Echelon, Vec<Rat>)> = vec![(full, Vec::new())];
        for hk in h_ladder.iter() {
            let mut next = Vec::new();
            for (ech, ds) in leaves {
                let r = ech.restrict_op(hk).ok_or(Error::InvalidModule(
                    "Cartan operator does not preserve an eigenspace refinement",
                ))?;
                let eigs = crate::eigen::rational_eigenvalues(&r)?;
                for (lambda, mult) in eigs {
                    let generalized = crate::eigen::generalized_eigenspace(&r, &lambda, r.rows());
                    debug_assert_eq!(generalized.len(), mult);
                    let mut sub = Echelon::new(m);
                    for c in &generalized {
                        sub.insert(&linear_combination(ech.basis(), c));
                    }
                    let mut ds2 = ds.clone();
                    ds2.push(lambda);
                    next.push((sub, ds2));
                }
            }
            leaves = next;
        }
        for (ech, ds) in leaves {
            let f = pade_reconstruct(&ds, module.dim())?;
            out.insert(LElement::new(f)?, ech.dim() as i64);
        }
    }
    Ok(out)
}

/// A character of the underlying three-dimensional Lie algebra: a finite
/// integer combination of weights.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Sl2Character {
    weights: BTreeMap<i64, i64>,
}

impl Sl2Character {
    pub fn zero() -> Self {
        Sl2Character {
            weights: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Sl2Character::e(0)
    }

    /// The single weight `k`.
    pub fn e(k: i64) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(k, 1);
        Sl2Character { weights }
    }

    /// `z_r = sum_{s=0}^{r} e(-2s)`; equal to 1 for `r <= 0`.
    pub fn z(r: i64) -> Self {
        let mut out = Sl2Character::zero();
        for s in 0..=r.max(0) {
            out.insert(-2 * s, 1);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.weights.iter().map(|(&w, &c)| (w, c))
    }

    pub fn multiplicity(&self, w: i64) -> i64 {
        self.weights.get(&w).copied().unwrap_or(0)
    }

    fn insert(&mut self, w: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.weights.entry(w).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.weights.remove(&w);
        }
    }

    pub fn add(&self, other: &Sl2Character) -> Sl2Character {
        let mut out = self.clone();
        for (w, c) in other.weights() {
            out.insert(w, c);
        }
        out
    }

    pub fn mul(&self, other: &Sl2Character) -> Sl2Character {
        let mut out = Sl2Character::zero();
        for (a, ca) in self.weights() {
            for (b, cb) in other.weights() {
                out.insert(a + b, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Sl2Character {
        let mut out = Sl2Character::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn augmentation(&self) -> i64 {
        self.weights.values().sum()
    }

    /// Exact division of Laurent polynomials by leading-term elimination.
    pub fn exact_div(&self, divisor: &Sl2Character) -> Result<Sl2Character> {
        if divisor.is_zero() {
            return Err(Error::InexactCharacterDivision("division by zero"));
        }
        let mut rem = self.clone();
        let (&dw, &dc) = divisor.weights.iter().next_back().expect("nonzero");
        let mut quotient = Sl2Character::zero();
        let f_span = self
            .weights
            .keys()
            .next_back()
            .and_then(|hi| self.weights.keys().next().map(|lo| hi - lo))
            .unwrap_or(0);
        let max_steps = (f_span + 1) as usize + 64;
        let mut steps = 0;
        while let Some((&rw, &rc)) = rem.weights.iter().next_back() {
            steps += 1;
            if steps > max_steps || rc % dc != 0 {
                return Err(Error::InexactCharacterDivision(
                    "weight character division is not exact",
                ));
            }
            let c = rc / dc;
            quotient.insert(rw - dw, c);
            for (w, coeff) in divisor.weights() {
                rem.insert(w + (rw - dw), -c * coeff);
            }
        }
        Ok(quotient)
    }
}

impl fmt::Display for Sl2Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.weights.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c != 1 {
                write!(f, "{}*", c)?;
            }
            write!(f, "e({})", w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sl2Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Applies `res` (each label to its first Laurent coefficient `d_0`) to a
/// character, producing the underlying weight character.
pub fn res_character(c: &CharacterElement) -> Result<Sl2Character> {
    let mut out = Sl2Character::zero();
    for (l, coeff) in c.terms() {
        let d0 = l.residue();
        if !d0.is_integer() {
            return Err(Error::NonIntegerWeight);
        }
        let w = i64::try_from(d0.to_integer()).map_err(|_| Error::NonIntegerWeight)?;
        out.insert(w, coeff);
    }
    Ok(out)
}

/// Closed form for the restricted character of the irreducible module:
/// `e(deg P) z_1^{deg P} prod_{r >= 2} (z_r z_{r-2} / z_{r-1}^2)^{m_r}`.
///
/// Exponents of each `z_r` are collected before expansion, as in
/// `char_formula`; the raw product overflows the weight multiplicities
/// already for moderate string lengths.
pub fn res_closed_form(p: &DrinfeldPolynomial) -> Result<Sl2Character> {
    let counts = StringCounts::new(p.roots());
    let deg = p.degree();
    let max_len = p
        .decomposition()
        .components()
        .iter()
        .map(|(s, _)| s.len())
        .max()
        .unwrap_or(0);
    let mut net: BTreeMap<i64, i64> = BTreeMap::new();
    if deg > 0 {
        net.insert(1, deg as i64);
    }
    for r in 2..=max_len {
        let m = counts.powers_total(r) as i64;
        if m == 0 {
            continue;
        }
        let r = r as i64;
        // z_r = 1 for r <= 0 contributes nothing to either side.
        for (key, c) in [(r, m), (r - 2, m), (r - 1, -2 * m)] {
            if key > 0 {
                *net.entry(key).or_insert(0) += c;
            }
        }
    }
    let mut num = Sl2Character::e(deg as i64);
    let mut den = Sl2Character::one();
    for (&r, &exp) in &net {
        if exp > 0 {
            num = num.mul(&Sl2Character::z(r).pow(exp as usize));
        } else if exp < 0 {
            den = den.mul(&Sl2Character::z(r).pow((-exp) as usize));
        }
    }
    num.exact_div(&den)
}

/// Weight character read directly off the `H_0` matrix, independent of the
/// full character machinery.
pub fn sl2_character_of_h0(module: &YModule) -> Result<Sl2Character> {
    let mut out = Sl2Character::zero();
    for (lambda, mult) in crate::eigen::rational_eigenvalues(module.h0())? {
        if !lambda.is_integer() {
            return Err(Error::NonIntegerWeight);
        }
        let w = i64::try_from(lambda.to_integer()).map_err(|_| Error::NonIntegerWeight)?;
        out.insert(w, mult as i64);
    }
    Ok(out)
}

/// Dimension of the irreducible module with Drinfel'd polynomial `P`:
/// `2^{deg P} prod_{r >= 2} ((r^2 - 1)/r^2)^{m_r}`.
///
/// A non-integer result would falsify the closed formula and is surfaced as
/// a distinguished theorem-violation error.
pub fn dimension_formula(p: &DrinfeldPolynomial) -> Result<Rat> {
    let counts = StringCounts::new(p.roots());
    let mut dim = Rat::from_integer(num_bigint::BigInt::from(1) << p.degree() as u32);
    let max_len = p
        .decomposition()
        .components()
        .iter()
        .map(|(s, _)| s.len())
        .max()
        .unwrap_or(0);
    for r in 2..=max_len {
        let m = counts.powers_total(r);
        let r2 = rat_int((r * r) as i64);
        let factor = (&r2 - rat_int(1)) / &r2;
        for _ in 0..m {
            dim = dim * &factor;
        }
    }
    if !dim.is_integer() || !dim.is_positive() {
        return Err(Error::TheoremViolation(alloc::format!(
            "dimension formula for {} evaluates to the non-integer {}",
            p,
            dim
        )));
    }
    Ok(dim)
}
