//! Strings of roots, canonical decompositions, and counting functions.
//!
//! A string `S_r(a)` is the set `{a, a+1, ..., a+r-1}`. Every finite root
//! multiset decomposes uniquely into strings that are pairwise in general
//! position; the decomposition drives both the tensor-product realization of
//! irreducible modules and the closed character formulas.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::scalar::{rat_int, Polynomial, Rat};

/// The string `S_r(a) = {a, a+1, ..., a+r-1}`; `len` is always positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringRange {
    start: Rat,
    len: usize,
}

impl StringRange {
    pub fn new(start: Rat, len: usize) -> Self {
        assert!(len > 0, "strings are nonempty");
        StringRange { start, len }
    }

    pub fn start(&self) -> &Rat {
        &self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Last member `a + r - 1`.
    pub fn end(&self) -> Rat {
        &self.start + rat_int(self.len as i64 - 1)
    }

    pub fn members(&self) -> impl Iterator<Item = Rat> + '_ {
        (0..self.len).map(move |i| &self.start + rat_int(i as i64))
    }

    pub fn shifted(&self, by: i64) -> StringRange {
        StringRange {
            start: &self.start + rat_int(by),
            len: self.len,
        }
    }

    /// Whether both strings lie in one translate of the integers.
    pub fn same_coset(&self, other: &StringRange) -> bool {
        (&self.start - &other.start).is_integer()
    }

    pub fn contains(&self, other: &StringRange) -> bool {
        self.same_coset(other) && self.start <= other.start && other.end() <= self.end()
    }

    fn intersects(&self, other: &StringRange) -> bool {
        self.same_coset(other) && self.start <= other.end() && other.start <= self.end()
    }
}

impl fmt::Display for StringRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}({})", self.len, self.start)
    }
}

/// Two strings are in general position when their set union is not a string
/// strictly longer than both.
///
/// Also evaluates the disjointness criterion (containment, or `S`, `S+1`,
/// `S-1` all disjoint from `T`) and asserts the two verdicts agree.
pub fn in_general_position(s: &StringRange, t: &StringRange) -> bool {
    let by_definition = general_by_definition(s, t);
    let by_criterion = s.contains(t)
        || t.contains(s)
        || (!s.intersects(t) && !s.shifted(1).intersects(t) && !s.shifted(-1).intersects(t));
    assert_eq!(
        by_definition, by_criterion,
        "disjointness criterion disagrees with the definition on {} and {}",
        s, t
    );
    by_definition
}

fn general_by_definition(s: &StringRange, t: &StringRange) -> bool {
    if !s.same_coset(t) {
        // Members differ by non-integers, so the union is never a string.
        return true;
    }
    let (lo_s, hi_s) = (s.start.clone(), s.end());
    let (lo_t, hi_t) = (t.start.clone(), t.end());
    let lo = if lo_s <= lo_t { &lo_s } else { &lo_t };
    let hi = if hi_s >= hi_t { &hi_s } else { &hi_t };
    // The union of the two sets is the full range [lo, hi] exactly when the
    // strings overlap or are adjacent.
    let touching = *(if lo_s >= lo_t { &lo_s } else { &lo_t })
        <= (if hi_s <= hi_t { &hi_s } else { &hi_t }) + rat_int(1);
    if !touching {
        return true;
    }
    let union_len = (hi - lo).to_integer() + BigInt::one();
    let longest = BigInt::from(s.len.max(t.len));
    union_len <= longest
}

/// Finite multiset of rational roots; the root data of a monic polynomial
/// that splits over the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootMultiset {
    roots: BTreeMap<Rat, usize>,
}

impl RootMultiset {
    pub fn new() -> Self {
        RootMultiset::default()
    }

    pub fn from_roots(roots: impl IntoIterator<Item = Rat>) -> Self {
        let mut m = RootMultiset::new();
        for r in roots {
            m.insert(r, 1);
        }
        m
    }

    pub fn insert(&mut self, root: Rat, mult: usize) {
        if mult > 0 {
            *self.roots.entry(root).or_insert(0) += mult;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Total root count with multiplicity; the degree of the polynomial.
    pub fn degree(&self) -> usize {
        self.roots.values().sum()
    }

    pub fn multiplicity(&self, root: &Rat) -> usize {
        self.roots.get(root).copied().unwrap_or(0)
    }

    /// `(root, multiplicity)` pairs in ascending root order.
    pub fn iter(&self) -> impl Iterator<Item = (&Rat, usize)> {
        self.roots.iter().map(|(r, &m)| (r, m))
    }

    /// Multiset sum; corresponds to the product of the polynomials.
    pub fn union(&self, other: &RootMultiset) -> RootMultiset {
        let mut m = self.clone();
        for (r, k) in other.iter() {
            m.insert(r.clone(), k);
        }
        m
    }

    /// The monic polynomial with exactly these roots.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::one();
        for (r, k) in self.iter() {
            let lin = Polynomial::linear(r);
            for _ in 0..k {
                p = &p * &lin;
            }
        }
        p
    }

    /// Multiset of rational roots of a monic polynomial; `None` if the
    /// polynomial is not monic or does not split over the rationals.
    pub fn from_polynomial(p: &Polynomial) -> Option<Self> {
        if !p.is_monic() {
            return None;
        }
        let roots = crate::eigen::rational_roots(p);
        if roots.iter().map(|(_, k)| k).sum::<usize>() != p.degree().unwrap() {
            return None;
        }
        let mut m = RootMultiset::new();
        for (r, k) in roots {
            m.insert(r, k);
        }
        Some(m)
    }

    /// Groups the roots into integer cosets: base point plus sorted
    /// `(offset, multiplicity)` pairs with all offsets nonnegative.
    fn coset_profiles(&self) -> Vec<CosetProfile> {
        let mut profiles: Vec<CosetProfile> = Vec::new();
        for (root, mult) in self.iter() {
            match profiles
                .iter_mut()
                .find(|p| (root - &p.base).is_integer())
            {
                Some(p) => {
                    let off = (root - &p.base).to_integer();
                    let off = i64::try_from(off).expect("root offset exceeds i64");
                    p.offsets.push((off, mult));
                }
                None => profiles.push(CosetProfile {
                    base: root.clone(),
                    offsets: alloc::vec![(0, mult)],
                }),
            }
        }
        // Roots iterate ascending, so each coset's base is its least root and
        // offsets are already sorted.
        profiles
    }
}

impl FromIterator<Rat> for RootMultiset {
    fn from_iter<T: IntoIterator<Item = Rat>>(iter: T) -> Self {
        RootMultiset::from_roots(iter)
    }
}

struct CosetProfile {
    base: Rat,
    offsets: Vec<(i64, usize)>,
}

impl CosetProfile {
    /// Maximal runs of consecutive offsets whose multiplicity is at least `layer`.
    fn runs_at_layer(&self, layer: usize) -> Vec<(i64, i64)> {
        let mut runs = Vec::new();
        let mut current: Option<(i64, i64)> = None;
        for &(off, mult) in &self.offsets {
            if mult < layer {
                continue;
            }
            current = match current {
                Some((lo, hi)) if off == hi + 1 => Some((lo, off)),
                Some(run) => {
                    runs.push(run);
                    Some((off, off))
                }
                None => Some((off, off)),
            };
        }
        if let Some(run) = current {
            runs.push(run);
        }
        runs
    }

    fn max_mult(&self) -> usize {
        self.offsets.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }
}

/// A multiset written as strings with multiplicities, sorted by `(start, len)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringDecomposition {
    components: Vec<(StringRange, usize)>,
}

impl StringDecomposition {
    pub fn components(&self) -> &[(StringRange, usize)] {
        &self.components
    }

    /// Strings listed with repetition in stored order.
    pub fn strings_with_repetition(&self) -> impl Iterator<Item = &StringRange> {
        self.components
            .iter()
            .flat_map(|(s, m)| core::iter::repeat(s).take(*m))
    }

    /// The multiset formed by all members of all strings.
    pub fn to_multiset(&self) -> RootMultiset {
        let mut m = RootMultiset::new();
        for (s, mult) in &self.components {
            for root in s.members() {
                m.insert(root, *mult);
            }
        }
        m
    }

    /// Product of `len + 1` over all strings with multiplicity.
    pub fn module_dimension(&self) -> usize {
        self.components
            .iter()
            .map(|(s, m)| (s.len + 1).checked_pow(*m as u32).expect("dimension overflow"))
            .product()
    }
}

impl fmt::Display for StringDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, (s, m)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == 1 {
                write!(f, "{}", s)?;
            } else {
                write!(f, "{}*{}", m, s)?;
            }
        }
        Ok(())
    }
}

/// The unique decomposition into pairwise general-position strings.
///
/// Within each integer coset, layer `j` of the multiplicity profile (the
/// offsets occurring at least `j` times) splits into maximal consecutive runs;
/// each run contributes one string.
pub fn canonical_decomposition(multiset: &RootMultiset) -> StringDecomposition {
    let mut components: BTreeMap<StringRange, usize> = BTreeMap::new();
    for profile in multiset.coset_profiles() {
        for layer in 1..=profile.max_mult() {
            for (lo, hi) in profile.runs_at_layer(layer) {
                let s = StringRange::new(&profile.base + rat_int(lo), (hi - lo + 1) as usize);
                *components.entry(s).or_insert(0) += 1;
            }
        }
    }
    let decomposition = StringDecomposition {
        components: components.into_iter().collect(),
    };
    debug_assert_eq!(&decomposition.to_multiset(), multiset);
    decomposition
}

/// The three counting functions of a root multiset, tabulated on every string
/// contained in the support.
///
/// For the multiset `P`: `strings(r, a)` counts copies of `S_r(a)` in the
/// canonical decomposition, `containments(r, a)` counts decomposition strings
/// containing `S_r(a)`, and `powers(r, a)` is the largest `n` with
/// `(u-a)^n, ..., (u-a-r+1)^n` all dividing `P`.
#[derive(Clone, Debug)]
pub struct StringCounts {
    decomposition: StringDecomposition,
    strings: BTreeMap<(usize, Rat), usize>,
    containments: BTreeMap<(usize, Rat), usize>,
    powers: BTreeMap<(usize, Rat), usize>,
}

impl StringCounts {
    pub fn new(multiset: &RootMultiset) -> Self {
        let decomposition = canonical_decomposition(multiset);
        let mut strings = BTreeMap::new();
        let mut containments = BTreeMap::new();
        let mut powers = BTreeMap::new();
        for profile in multiset.coset_profiles() {
            for (lo, hi) in profile.runs_at_layer(1) {
                for a_off in lo..=hi {
                    for r in 1..=(hi - a_off + 1) as usize {
                        let a = &profile.base + rat_int(a_off);
                        let range = StringRange::new(a.clone(), r);
                        let n: usize = decomposition
                            .components()
                            .iter()
                            .filter(|(s, _)| s.contains(&range))
                            .map(|(_, m)| m)
                            .sum();
                        let big_n: usize = decomposition
                            .components()
                            .iter()
                            .find(|(s, _)| *s == range)
                            .map_or(0, |(_, m)| *m);
                        let m = range
                            .members()
                            .map(|root| multiset.multiplicity(&root))
                            .min()
                            .unwrap_or(0);
                        if n > 0 {
                            containments.insert((r, a.clone()), n);
                        }
                        if big_n > 0 {
                            strings.insert((r, a.clone()), big_n);
                        }
                        if m > 0 {
                            powers.insert((r, a), m);
                        }
                    }
                }
            }
        }
        let counts = StringCounts {
            decomposition,
            strings,
            containments,
            powers,
        };
        counts.assert_inversion(multiset);
        counts
    }

    /// `N_{r,a}`: multiplicity of `S_r(a)` in the canonical decomposition.
    pub fn strings(&self, r: usize, a: &Rat) -> usize {
        self.strings.get(&(r, a.clone())).copied().unwrap_or(0)
    }

    /// `n_{r,a}`: decomposition strings containing `S_r(a)`, with multiplicity.
    pub fn containments(&self, r: usize, a: &Rat) -> usize {
        self.containments.get(&(r, a.clone())).copied().unwrap_or(0)
    }

    /// `m_{r,a}`: largest `n` with `(u-a)^n ... (u-a-r+1)^n` all dividing the
    /// polynomial.
    pub fn powers(&self, r: usize, a: &Rat) -> usize {
        self.powers.get(&(r, a.clone())).copied().unwrap_or(0)
    }

    /// `m_r`: sum of `powers(r, a)` over all starts `a`.
    pub fn powers_total(&self, r: usize) -> usize {
        self.powers
            .iter()
            .filter(|((s, _), _)| *s == r)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn decomposition(&self) -> &StringDecomposition {
        &self.decomposition
    }

    /// Keys `(r, a)` where any of the three counts is nonzero.
    pub fn keys(&self) -> Vec<(usize, Rat)> {
        let mut keys: Vec<(usize, Rat)> = self.containments.keys().cloned().collect();
        for k in self.powers.keys() {
            if !keys.contains(k) {
                keys.push(k.clone());
            }
        }
        keys.sort();
        keys
    }

    /// Containment counts determine string counts through inclusion-exclusion
    /// on the four corners `(r, a)`, `(r+1, a)`, `(r+1, a-1)`, `(r+2, a-1)`.
    fn assert_inversion(&self, multiset: &RootMultiset) {
        for ((r, a), _) in self.containments.iter().chain(self.strings.iter()) {
            let r = *r;
            let prev = &(a - rat_int(1));
            let lhs = self.strings(r, a) as i64;
            let rhs = self.containments(r, a) as i64 - self.containments(r + 1, a) as i64
                - self.containments(r + 1, prev) as i64
                + self.containments(r + 2, prev) as i64;
            assert_eq!(
                lhs, rhs,
                "containment inversion failed at r={} a={} for {:?}",
                r, a, multiset
            );
        }
        let total: usize = self.strings.iter().map(|((r, _), m)| r * m).sum();
        assert_eq!(total, multiset.degree(), "decomposition loses roots");
    }
}

/// `P(u+1) - P(u)`, the difference operator whose iterates detect strings.
pub fn yangian_derivative(p: &Polynomial) -> Polynomial {
    &p.shift(&Rat::one()) - p
}

/// `m_{r,a}` read from divisibility: the multiplicity of `a` as a common root
/// of `P` and its first `r - 1` difference-operator iterates.
pub fn powers_by_derivatives(p: &Polynomial, r: usize, a: &Rat) -> usize {
    assert!(r > 0);
    let mut q = p.clone();
    let mut m = q.root_multiplicity(a);
    for _ in 1..r {
        q = yangian_derivative(&q);
        if q.is_zero() {
            // Constant polynomials have derivative zero; every further
            // iterate vanishes identically, so the minimum stops changing
            // only if it is already zero.
            return 0;
        }
        m = m.min(q.root_multiplicity(a));
        if m == 0 {
            return 0;
        }
    }
    m
}
