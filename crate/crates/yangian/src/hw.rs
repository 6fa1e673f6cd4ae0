//! Highest-weight analysis: locating highest weight vectors, testing the
//! highest-weight and irreducibility properties, converting eigenvalue
//! sequences to Drinfel'd polynomials and back, and realizing the irreducible
//! module attached to a polynomial as a tensor product of evaluation modules.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{linear_combination, Echelon, Matrix, Vector};
use crate::repr::{
    dual, evaluation_module, submodule, tensor, trivial_module, DualSide, Graded, YModule,
};
use crate::scalar::{laurent_expand, rat_int, Polynomial, Rat, RationalFunction};
use crate::strings::{canonical_decomposition, RootMultiset, StringDecomposition};

/// A highest weight vector: a simultaneous exact eigenvector of the Cartan
/// generators that every raising operator annihilates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightVector {
    /// Coordinates in the module's own basis, first nonzero entry scaled to 1.
    pub vector: Vector,
    /// Eigenvalues `d_0 ..= d_K` of `H_0 ..= H_K` with `K = dim V`.
    pub eigenvalues: Vec<Rat>,
    /// The `H_0` weight, which equals `d_0`.
    pub sl2_weight: i64,
}

/// A monic polynomial with rational roots together with its root multiset and
/// the canonical string decomposition of those roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldPolynomial {
    poly: Polynomial,
    roots: RootMultiset,
    decomposition: StringDecomposition,
}

impl DrinfeldPolynomial {
    /// Builds from a root multiset; the polynomial is the product of `u - b`.
    pub fn from_roots(roots: RootMultiset) -> Self {
        let poly = roots.to_polynomial();
        let decomposition = canonical_decomposition(&roots);
        DrinfeldPolynomial {
            poly,
            roots,
            decomposition,
        }
    }

    /// Builds from a monic polynomial splitting over the rationals.
    pub fn from_polynomial(poly: &Polynomial) -> Result<Self> {
        if !poly.is_monic() {
            return Err(Error::InvalidRationalFunction("polynomial must be monic"));
        }
        let roots = RootMultiset::from_polynomial(poly).ok_or(Error::NonRationalSpectrum)?;
        Ok(DrinfeldPolynomial::from_roots(roots))
    }

    /// The constant polynomial 1, attached to the trivial module.
    pub fn one() -> Self {
        DrinfeldPolynomial::from_roots(RootMultiset::new())
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn roots(&self) -> &RootMultiset {
        &self.roots
    }

    pub fn decomposition(&self) -> &StringDecomposition {
        &self.decomposition
    }

    pub fn degree(&self) -> usize {
        self.roots.degree()
    }
}

impl fmt::Display for DrinfeldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Basis (in block coordinates) of the part of weight block `b` annihilated
/// by every raising operator `X_k^+`.
///
/// Finitely computable form: the largest subspace of
/// `ker X_0^+ ∩ ker X_1^+` invariant under `H_0` and `H_1`. The ladder
/// recursion `X_{k+1}^+ = (1/2)[H_1, X_k^+] - (1/2)(H_0 X_k^+ + X_k^+ H_0)`
/// shows by induction that every higher raising operator kills such a
/// subspace; conversely the full joint kernel is `H_0`- and `H_1`-invariant
/// (an induction from the Cartan ladder relation), so the two spaces agree.
fn raising_kernel_in_block(g: &Graded, b: usize) -> Vec<Vector> {
    let m = g.block_size(b);
    let windows = g.xp_ladder_at(b, 1);
    let total = windows[0].rows() + windows[1].rows();
    let stacked = Matrix::from_fn(total, m, |i, j| {
        if i < windows[0].rows() {
            windows[0].get(i, j).clone()
        } else {
            windows[1].get(i - windows[0].rows(), j).clone()
        }
    });
    let mut basis = stacked.kernel();
    let h0b = g.block(&g.h0, Some(b), b);
    let h1b = g.block(&g.h1, Some(b), b);
    loop {
        if basis.is_empty() {
            return basis;
        }
        let s = basis.len();
        let mut ech = Echelon::new(m);
        for v in &basis {
            ech.insert(v);
        }
        let mut constraint_rows: Vec<Vector> = Vec::new();
        for h in [&h0b, &h1b] {
            let residues: Vec<Vector> = basis.iter().map(|v| ech.reduce(&h.mul_vec(v))).collect();
            for i in 0..m {
                constraint_rows.push((0..s).map(|j| residues[j][i].clone()).collect());
            }
        }
        let stable = Matrix::from_rows(constraint_rows).kernel();
        if stable.len() == s {
            return ech.basis().to_vec();
        }
        basis = stable
            .iter()
            .map(|c| linear_combination(&basis, c))
            .collect();
    }
}

/// Matrix of `op` on the span of an echelon basis, in that basis.
///
/// Errors if the span is not invariant, which cannot happen for the derived
/// Cartan operators of a genuine module.
fn restrict_operator(ech: &Echelon, op: &Matrix) -> Result<Matrix> {
    ech.restrict_op(op).ok_or(Error::InvalidModule(
        "derived Cartan operator does not preserve the raising kernel",
    ))
}

fn normalize_first_nonzero(v: &mut Vector) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x = &*x / &first;
        }
    }
}

/// All highest weight vectors of a module, highest `H_0` weight first.
///
/// Within each weight block the annihilated subspace is refined into joint
/// exact eigenspaces of `H_0 ..= H_{2 dim V}`; the extra refinement depth
/// (beyond the reported `dim V`) guarantees that two distinct Drinfel'd
/// eigenvalue series realizable in this dimension cannot collide, since their
/// difference is a nonzero rational function vanishing at infinity to order
/// at most twice the polynomial degree.
pub fn hw_vectors(module: &YModule) -> Result<Vec<HighestWeightVector>> {
    let g = Graded::new(module)?;
    hw_vectors_graded(module, &g)
}

fn hw_vectors_graded(module: &YModule, g: &Graded) -> Result<Vec<HighestWeightVector>> {
    let report_len = module.dim() + 1;
    let refine_depth = 2 * module.dim();
    let mut out = Vec::new();
    for b in (0..g.block_count()).rev() {
        let kernel = raising_kernel_in_block(g, b);
        if kernel.is_empty() {
            continue;
        }
        let m = g.block_size(b);
        let mut seed = Echelon::new(m);
        for v in &kernel {
            seed.insert(v);
        }
        let h_ladder = g.h_ladder_at(b, refine_depth);
        let mut leaves: Vec<(Echelon, Vec<Rat>)> = vec![(seed, Vec::new())];
        for hk in h_ladder.iter() {
            let mut next = Vec::new();
            for (ech, ds) in leaves {
                let r = restrict_operator(&ech, hk)?;
                for (lambda, _) in crate::eigen::rational_eigenvalues(&r)? {
                    let shifted = &r - &Matrix::identity(r.rows()).scale(&lambda);
                    let strict = shifted.kernel();
                    if strict.is_empty() {
                        continue;
                    }
                    let mut sub = Echelon::new(m);
                    for c in &strict {
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
            let weight = ds[0].clone();
            if !weight.is_integer() {
                return Err(Error::NonIntegerWeight);
            }
            let eigenvalues: Vec<Rat> = ds.iter().take(report_len).cloned().collect();
            for v in ech.basis() {
                let mut ambient = g.to_ambient(&g.embed(b, v));
                normalize_first_nonzero(&mut ambient);
                out.push(HighestWeightVector {
                    vector: ambient,
                    eigenvalues: eigenvalues.clone(),
                    sl2_weight: i64::try_from(weight.to_integer())
                        .map_err(|_| Error::NonIntegerWeight)?,
                });
            }
        }
    }
    Ok(out)
}

/// Witness that the module is generated by one of its highest weight vectors.
///
/// Only candidates of the top `H_0` weight are tested: the span of ordered
/// monomials (lowering, Cartan, raising) applied to a highest weight vector
/// never exceeds that vector's weight, so a generating highest weight vector
/// must sit in the top weight block.
pub fn is_highest_weight(module: &YModule) -> Result<Option<HighestWeightVector>> {
    let g = Graded::new(module)?;
    let top = g.weights.last().expect("module has positive dimension").clone();
    for hw in hw_vectors_graded(module, &g)? {
        if rat_int(hw.sl2_weight) != top {
            break;
        }
        if submodule(module, core::slice::from_ref(&hw.vector)).dim() == module.dim() {
            return Ok(Some(hw));
        }
    }
    Ok(None)
}

/// A finite-dimensional module is irreducible exactly when it and its left
/// dual are both highest weight modules.
pub fn is_irreducible(module: &YModule) -> Result<bool> {
    Ok(is_highest_weight(module)?.is_some()
        && is_highest_weight(&dual(module, DualSide::Left))?.is_some())
}

fn binom(n: i64, k: i64) -> Rat {
    if k < 0 || k > n {
        return Rat::zero();
    }
    Rat::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// The unique monic `P` with `P(u+1)/P(u) = 1 + sum d_k u^{-k-1}`.
///
/// `d_0` must be a non-negative integer; it equals `deg P`. The coefficients
/// are found by a triangular solve from matching `P(u+1) = P(u) (1 + ...)`
/// coefficientwise, then the whole supplied sequence is validated against the
/// re-expanded quotient.
pub fn drinfeld_from_eigenvalues(d: &[Rat]) -> Result<DrinfeldPolynomial> {
    if d.is_empty() {
        return Err(Error::InconsistentEigenvalues(
            "empty eigenvalue sequence".into(),
        ));
    }
    if !d[0].is_integer() || d[0].is_negative() {
        return Err(Error::InconsistentEigenvalues(format!(
            "d_0 = {} is not a non-negative integer",
            d[0]
        )));
    }
    let n = i64::try_from(d[0].to_integer())
        .map_err(|_| Error::InconsistentEigenvalues("d_0 out of range".into()))?;
    if (d.len() as i64) < n + 1 {
        return Err(Error::InconsistentEigenvalues(format!(
            "need at least {} eigenvalues for degree {}",
            n + 1,
            n
        )));
    }
    // p[s] is the coefficient of u^s; p[n] = 1. Equation j (1 <= j <= n) is
    // the u^{n-1-j} coefficient of P(u+1) - P(u) = P(u) sum d_k u^{-k-1}; the
    // unknown p[n-j] enters with coefficient -j.
    let mut p = vec![Rat::zero(); (n + 1) as usize];
    p[n as usize] = rat_int(1);
    for j in 1..=n {
        let mut acc = Rat::zero();
        for i in 0..j {
            let coeff = binom(n - i, n - 1 - j) - &d[(j - i) as usize];
            acc += &p[(n - i) as usize] * coeff;
        }
        p[(n - j) as usize] = acc / rat_int(j);
    }
    let poly = Polynomial::new(p);
    let expansion = eigenvalue_expansion_poly(&poly, d.len() - 1)?;
    if expansion != d {
        return Err(Error::InconsistentEigenvalues(format!(
            "sequence does not come from a polynomial of degree {}",
            n
        )));
    }
    DrinfeldPolynomial::from_polynomial(&poly)
}

fn eigenvalue_expansion_poly(poly: &Polynomial, k_max: usize) -> Result<Vec<Rat>> {
    laurent_expand(&RationalFunction::shift_quotient(poly)?, k_max)
}

/// Laurent coefficients `d_0 ..= d_K` of `P(u+1)/P(u) - 1`.
pub fn eigenvalue_expansion(p: &DrinfeldPolynomial, k_max: usize) -> Vec<Rat> {
    eigenvalue_expansion_poly(&p.poly, k_max).expect("monic split polynomial always expands")
}

/// The Drinfel'd polynomial of a highest weight module, read off the
/// eigenvalue sequence of its generating highest weight vector.
pub fn drinfeld_polynomial(module: &YModule) -> Result<DrinfeldPolynomial> {
    match is_highest_weight(module)? {
        Some(witness) => drinfeld_from_eigenvalues(&witness.eigenvalues),
        None => Err(Error::NotHighestWeight),
    }
}

/// Realizes the irreducible module with Drinfel'd polynomial `P` as the
/// tensor product of evaluation modules over the canonical string
/// decomposition of the roots of `P`.
///
/// The construction's correctness is asserted, not assumed: the result must
/// be irreducible and its Drinfel'd polynomial must equal `P`, otherwise a
/// distinguished theorem-violation error is returned.
pub fn build_irreducible(p: &DrinfeldPolynomial) -> Result<YModule> {
    let mut module = trivial_module();
    let mut first = true;
    for (string, mult) in p.decomposition.components() {
        for _ in 0..*mult {
            let factor = evaluation_module(string.len(), string.start());
            module = if first { factor } else { tensor(&module, &factor) };
            first = false;
        }
    }
    if !is_irreducible(&module)? {
        return Err(Error::TheoremViolation(format!(
            "tensor product over the canonical decomposition of {} is not irreducible",
            p
        )));
    }
    let realized = drinfeld_polynomial(&module)?;
    if realized.poly != p.poly {
        return Err(Error::TheoremViolation(format!(
            "constructed module has Drinfel'd polynomial {}, expected {}",
            realized, p
        )));
    }
    Ok(module)
}

/// Tensor product of two-dimensional evaluation modules `W_1(a_i)` over the
/// roots of `P`, ordered so that `a_j - a_i != 1` whenever `i < j` (grouped
/// by integer coset, decreasing within each coset).
///
/// The result is asserted to be a highest weight module; it serves as an
/// independent ambient construction containing the irreducible module.
pub fn build_w1_chain(p: &DrinfeldPolynomial) -> Result<YModule> {
    let mut groups: Vec<Vec<Rat>> = Vec::new();
    for (root, mult) in p.roots.iter() {
        let group = groups
            .iter_mut()
            .find(|g| (&g[0] - root).is_integer());
        let target = match group {
            Some(g) => g,
            None => {
                groups.push(Vec::new());
                groups.last_mut().unwrap()
            }
        };
        for _ in 0..mult {
            target.push(root.clone());
        }
    }
    let mut order: Vec<Rat> = Vec::new();
    for mut g in groups {
        g.reverse();
        order.extend(g);
    }
    let mut module = trivial_module();
    let mut first = true;
    for a in &order {
        let factor = evaluation_module(1, a);
        module = if first { factor } else { tensor(&module, &factor) };
        first = false;
    }
    if is_highest_weight(&module)?.is_none() {
        return Err(Error::TheoremViolation(format!(
            "chain of two-dimensional factors over the roots of {} is not highest weight",
            p
        )));
    }
    Ok(module)
}
