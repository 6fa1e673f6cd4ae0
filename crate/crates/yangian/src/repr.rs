//! Finite-dimensional modules as explicit matrices for the six generators
//! `H_0, H_1, X_0^+, X_1^+, X_0^-, X_1^-`.
//!
//! Levels 0 and 1 generate the whole algebra: every higher generator is
//! derived through the ladder recursion, never stored, so a module cannot
//! carry inconsistent high-level data. Hopf-algebra constructions (tensor
//! product, evaluation-parameter twist, left and right duals) and
//! subquotients all return ordinary modules of the same shape.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, Vector};
use crate::scalar::{rat_int, Rat};

/// Which generator family a derived matrix belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    H,
    XPlus,
    XMinus,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::H => write!(f, "H"),
            Gen::XPlus => write!(f, "X+"),
            Gen::XMinus => write!(f, "X-"),
        }
    }
}

/// Which antipode is used to form a dual module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSide {
    /// Left dual, via the antipode.
    Left,
    /// Right dual, via the inverse antipode.
    Right,
}

/// How a module was constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Trivial,
    Evaluation { r: usize, a: Rat },
    Tensor,
    Twist(Rat),
    Dual(DualSide),
    Submodule,
    Quotient,
    Raw,
}

/// A finite-dimensional module, stored as the six defining generator matrices.
#[derive(Clone, Debug)]
pub struct YModule {
    dim: usize,
    h0: Matrix,
    h1: Matrix,
    xp0: Matrix,
    xp1: Matrix,
    xm0: Matrix,
    xm1: Matrix,
    provenance: Provenance,
}

impl YModule {
    /// Wraps raw generator matrices, checking shapes and `[H_0, H_1] = 0`.
    pub fn from_raw_generators(
        h0: Matrix,
        h1: Matrix,
        xp0: Matrix,
        xp1: Matrix,
        xm0: Matrix,
        xm1: Matrix,
    ) -> Result<Self> {
        let dim = h0.rows();
        for m in [&h0, &h1, &xp0, &xp1, &xm0, &xm1] {
            if !m.is_square() || m.rows() != dim {
                return Err(Error::InvalidModule("generator matrices must be square of one size"));
            }
        }
        if !h0.commutator(&h1).is_zero() {
            return Err(Error::InvalidModule("H_0 and H_1 must commute"));
        }
        Ok(YModule {
            dim,
            h0,
            h1,
            xp0,
            xp1,
            xm0,
            xm1,
            provenance: Provenance::Raw,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn h0(&self) -> &Matrix {
        &self.h0
    }

    pub fn h1(&self) -> &Matrix {
        &self.h1
    }

    pub fn xp0(&self) -> &Matrix {
        &self.xp0
    }

    pub fn xp1(&self) -> &Matrix {
        &self.xp1
    }

    pub fn xm0(&self) -> &Matrix {
        &self.xm0
    }

    pub fn xm1(&self) -> &Matrix {
        &self.xm1
    }

    /// Same underlying action: equal dimensions and equal generator matrices,
    /// regardless of how the two modules were constructed.
    pub fn same_action(&self, other: &YModule) -> bool {
        self.dim == other.dim
            && self.h0 == other.h0
            && self.h1 == other.h1
            && self.xp0 == other.xp0
            && self.xp1 == other.xp1
            && self.xm0 == other.xm0
            && self.xm1 == other.xm1
    }

    /// The matrix of a derived generator at any level.
    pub fn generator(&self, which: Gen, level: usize) -> Matrix {
        let ladder = Ladder::new(self, level);
        match which {
            Gen::H => ladder.h(level).clone(),
            Gen::XPlus => ladder.xp(level).clone(),
            Gen::XMinus => ladder.xm(level).clone(),
        }
    }
}

/// The one-dimensional module on which every generator acts by zero.
pub fn trivial_module() -> YModule {
    let z = || Matrix::zeros(1, 1);
    YModule {
        dim: 1,
        h0: z(),
        h1: z(),
        xp0: z(),
        xp1: z(),
        xm0: z(),
        xm1: z(),
        provenance: Provenance::Trivial,
    }
}

/// The evaluation module `W_r(a)` of dimension `r + 1`.
///
/// On the basis `w_0, ..., w_r`:
/// `X_k^+ w_s = (s+a)^k (s+1) w_{s+1}`,
/// `X_k^- w_s = (s+a-1)^k (r-s+1) w_{s-1}`,
/// `H_k w_s = (s+a-1)^k s (r-s+1) - (s+a)^k (s+1)(r-s)` times `w_s`.
pub fn evaluation_module(r: usize, a: &Rat) -> YModule {
    let n = r + 1;
    let pow = |base: &Rat, k: u32| -> Rat {
        let mut acc = Rat::from_integer(1.into());
        for _ in 0..k {
            acc = acc * base;
        }
        acc
    };
    let xp = |k: u32| {
        let mut m = Matrix::zeros(n, n);
        for s in 0..r {
            let c = pow(&(a + rat_int(s as i64)), k) * rat_int(s as i64 + 1);
            m.set(s + 1, s, c);
        }
        m
    };
    let xm = |k: u32| {
        let mut m = Matrix::zeros(n, n);
        for s in 1..=r {
            let c = pow(&(a + rat_int(s as i64 - 1)), k) * rat_int((r - s) as i64 + 1);
            m.set(s - 1, s, c);
        }
        m
    };
    let h = |k: u32| {
        let mut m = Matrix::zeros(n, n);
        for s in 0..=r {
            let lower =
                pow(&(a + rat_int(s as i64 - 1)), k) * rat_int(s as i64) * rat_int((r - s) as i64 + 1);
            let upper =
                pow(&(a + rat_int(s as i64)), k) * rat_int(s as i64 + 1) * rat_int((r - s) as i64);
            m.set(s, s, lower - upper);
        }
        m
    };
    YModule {
        dim: n,
        h0: h(0),
        h1: h(1),
        xp0: xp(0),
        xp1: xp(1),
        xm0: xm(0),
        xm1: xm(1),
        provenance: Provenance::Evaluation { r, a: a.clone() },
    }
}

/// Generator matrices at levels `0 ..= max_level`, derived from the stored six.
///
/// The ladder uses `X_{l+1}^+- = +-(1/2)[H_1, X_l^+-] - (1/2)(H_0 X_l^+- + X_l^+- H_0)`
/// followed by `H_{k+1} = [X_{k+1}^+, X_0^-]`.
pub struct Ladder {
    h: Vec<Matrix>,
    xp: Vec<Matrix>,
    xm: Vec<Matrix>,
}

impl Ladder {
    pub fn new(module: &YModule, max_level: usize) -> Self {
        let half = crate::scalar::rat(1, 2);
        let mut h = vec![module.h0.clone(), module.h1.clone()];
        let mut xp = vec![module.xp0.clone(), module.xp1.clone()];
        let mut xm = vec![module.xm0.clone(), module.xm1.clone()];
        h.truncate(max_level + 1);
        xp.truncate(max_level + 1);
        xm.truncate(max_level + 1);
        for l in 1..max_level {
            let next_xp = &module.h1.commutator(&xp[l]).scale(&half)
                - &module.h0.anticommutator(&xp[l]).scale(&half);
            let next_xm = &(-&module.h1.commutator(&xm[l])).scale(&half)
                - &module.h0.anticommutator(&xm[l]).scale(&half);
            let next_h = next_xp.commutator(&xm[0]);
            xp.push(next_xp);
            xm.push(next_xm);
            h.push(next_h);
        }
        Ladder { h, xp, xm }
    }

    pub fn max_level(&self) -> usize {
        self.h.len() - 1
    }

    pub fn h(&self, k: usize) -> &Matrix {
        &self.h[k]
    }

    pub fn xp(&self, k: usize) -> &Matrix {
        &self.xp[k]
    }

    pub fn xm(&self, k: usize) -> &Matrix {
        &self.xm[k]
    }
}

/// One failed defining relation, identified by family and indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub relation: RelationKind,
    pub k: usize,
    pub l: usize,
}

/// The defining relation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `[H_k, H_l] = 0`
    CartanCommute,
    /// `[H_0, X_k^+-] = +-2 X_k^+-`
    WeightPlus,
    WeightMinus,
    /// `[X_k^+, X_l^-] = H_{k+l}`
    Pairing,
    /// `[H_{k+1}, X_l^+-] - [H_k, X_{l+1}^+-] = +-(H_k X_l^+- + X_l^+- H_k)`
    CartanLadderPlus,
    CartanLadderMinus,
    /// `[X_{k+1}^+-, X_l^+-] - [X_k^+-, X_{l+1}^+-] = +-(X_k^+- X_l^+- + X_l^+- X_k^+-)`
    SameSignLadderPlus,
    SameSignLadderMinus,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RelationKind::CartanCommute => "[H_k, H_l] = 0",
            RelationKind::WeightPlus => "[H_0, X_k^+] = 2 X_k^+",
            RelationKind::WeightMinus => "[H_0, X_k^-] = -2 X_k^-",
            RelationKind::Pairing => "[X_k^+, X_l^-] = H_{k+l}",
            RelationKind::CartanLadderPlus => {
                "[H_{k+1}, X_l^+] - [H_k, X_{l+1}^+] = H_k X_l^+ + X_l^+ H_k"
            }
            RelationKind::CartanLadderMinus => {
                "[H_{k+1}, X_l^-] - [H_k, X_{l+1}^-] = -(H_k X_l^- + X_l^- H_k)"
            }
            RelationKind::SameSignLadderPlus => {
                "[X_{k+1}^+, X_l^+] - [X_k^+, X_{l+1}^+] = X_k^+ X_l^+ + X_l^+ X_k^+"
            }
            RelationKind::SameSignLadderMinus => {
                "[X_{k+1}^-, X_l^-] - [X_k^-, X_{l+1}^-] = -(X_k^- X_l^- + X_l^- X_k^-)"
            }
        };
        write!(f, "{}", name)
    }
}

/// Outcome of checking every defining relation up to a level bound.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub max_level: usize,
    pub checked: usize,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(
                f,
                "all {} relation instances hold up to combined level {}",
                self.checked, self.max_level
            )
        } else {
            write!(
                f,
                "{} of {} relation instances fail; first: {} at (k, l) = ({}, {})",
                self.violations.len(),
                self.checked,
                self.violations[0].relation,
                self.violations[0].k,
                self.violations[0].l
            )
        }
    }
}

/// Checks every defining relation with `k + l <= max_level` on concrete matrices.
pub fn verify_relations(module: &YModule, max_level: usize) -> RelationReport {
    let ladder = Ladder::new(module, max_level + 1);
    let two = rat_int(2);
    let mut violations = Vec::new();
    let mut checked = 0;
    let mut check = |ok: bool, relation: RelationKind, k: usize, l: usize| {
        checked += 1;
        if !ok {
            violations.push(RelationViolation { relation, k, l });
        }
    };
    for k in 0..=max_level {
        for l in k..=max_level - k {
            check(
                ladder.h(k).commutator(ladder.h(l)).is_zero(),
                RelationKind::CartanCommute,
                k,
                l,
            );
        }
    }
    for k in 0..=max_level {
        check(
            ladder.h(0).commutator(ladder.xp(k)) == ladder.xp(k).scale(&two),
            RelationKind::WeightPlus,
            0,
            k,
        );
        check(
            ladder.h(0).commutator(ladder.xm(k)) == ladder.xm(k).scale(&-&two),
            RelationKind::WeightMinus,
            0,
            k,
        );
    }
    for k in 0..=max_level {
        for l in 0..=max_level - k {
            check(
                &ladder.xp(k).commutator(ladder.xm(l)) == ladder.h(k + l),
                RelationKind::Pairing,
                k,
                l,
            );
        }
    }
    for k in 0..=max_level {
        for l in 0..=max_level - k {
            let lhs_p = &ladder.h(k + 1).commutator(ladder.xp(l))
                - &ladder.h(k).commutator(ladder.xp(l + 1));
            let rhs_p = ladder.h(k).anticommutator(ladder.xp(l));
            check(lhs_p == rhs_p, RelationKind::CartanLadderPlus, k, l);
            let lhs_m = &ladder.h(k + 1).commutator(ladder.xm(l))
                - &ladder.h(k).commutator(ladder.xm(l + 1));
            let rhs_m = -&ladder.h(k).anticommutator(ladder.xm(l));
            check(lhs_m == rhs_m, RelationKind::CartanLadderMinus, k, l);
            let lhs_pp = &ladder.xp(k + 1).commutator(ladder.xp(l))
                - &ladder.xp(k).commutator(ladder.xp(l + 1));
            let rhs_pp = ladder.xp(k).anticommutator(ladder.xp(l));
            check(lhs_pp == rhs_pp, RelationKind::SameSignLadderPlus, k, l);
            let lhs_mm = &ladder.xm(k + 1).commutator(ladder.xm(l))
                - &ladder.xm(k).commutator(ladder.xm(l + 1));
            let rhs_mm = -&ladder.xm(k).anticommutator(ladder.xm(l));
            check(lhs_mm == rhs_mm, RelationKind::SameSignLadderMinus, k, l);
        }
    }
    RelationReport {
        max_level,
        checked,
        violations,
    }
}

/// Matrices of the primitive-level images `J(H)`, `J(X^+)`, `J(X^-)` on a module.
fn j_matrices(m: &YModule) -> (Matrix, Matrix, Matrix) {
    let half = crate::scalar::rat(1, 2);
    let quarter = crate::scalar::rat(1, 4);
    let jh = &m.h1
        + &(&m.xp0.anticommutator(&m.xm0) - &(&m.h0 * &m.h0)).scale(&half);
    let jxp = &m.xp1 - &m.xp0.anticommutator(&m.h0).scale(&quarter);
    let jxm = &m.xm1 - &m.xm0.anticommutator(&m.h0).scale(&quarter);
    (jh, jxp, jxm)
}

/// Tensor product module on the row-major product basis (`v` index slowest).
///
/// Level-0 generators are primitive. Level-1 generators are assembled from the
/// deformed coproduct of `J`: `J(x) tensor 1 + 1 tensor J(x) + (1/2)[x tensor 1, Omega]`
/// with `Omega = (1/2) H tensor H + X^+ tensor X^- + X^- tensor X^+`, then
/// converted back to `H_1`, `X_1^+-`.
pub fn tensor(v: &YModule, w: &YModule) -> YModule {
    let half = crate::scalar::rat(1, 2);
    let quarter = crate::scalar::rat(1, 4);
    let iv = Matrix::identity(v.dim);
    let iw = Matrix::identity(w.dim);
    let h0 = &v.h0.kron(&iw) + &iv.kron(&w.h0);
    let xp0 = &v.xp0.kron(&iw) + &iv.kron(&w.xp0);
    let xm0 = &v.xm0.kron(&iw) + &iv.kron(&w.xm0);
    let omega = &v.h0.kron(&w.h0).scale(&half) + &(&v.xp0.kron(&w.xm0) + &v.xm0.kron(&w.xp0));
    let (jh_v, jxp_v, jxm_v) = j_matrices(v);
    let (jh_w, jxp_w, jxm_w) = j_matrices(w);
    let deformed = |jv: &Matrix, jw: &Matrix, x0v: &Matrix| -> Matrix {
        &(&jv.kron(&iw) + &iv.kron(jw)) + &x0v.kron(&iw).commutator(&omega).scale(&half)
    };
    let jh = deformed(&jh_v, &jh_w, &v.h0);
    let jxp = deformed(&jxp_v, &jxp_w, &v.xp0);
    let jxm = deformed(&jxm_v, &jxm_w, &v.xm0);
    let h1 = &jh - &(&xp0.anticommutator(&xm0) - &(&h0 * &h0)).scale(&half);
    let xp1 = &jxp + &xp0.anticommutator(&h0).scale(&quarter);
    let xm1 = &jxm + &xm0.anticommutator(&h0).scale(&quarter);
    YModule {
        dim: v.dim * w.dim,
        h0,
        h1,
        xp0,
        xp1,
        xm0,
        xm1,
        provenance: Provenance::Tensor,
    }
}

/// Pullback along the evaluation-parameter shift: `H_1 += b H_0`, `X_1^+- += b X_0^+-`.
pub fn twist(module: &YModule, b: &Rat) -> YModule {
    YModule {
        dim: module.dim,
        h0: module.h0.clone(),
        h1: &module.h1 + &module.h0.scale(b),
        xp0: module.xp0.clone(),
        xp1: &module.xp1 + &module.xp0.scale(b),
        xm0: module.xm0.clone(),
        xm1: &module.xm1 + &module.xm0.scale(b),
        provenance: Provenance::Twist(b.clone()),
    }
}

/// Dual module on the dual basis: the action of `y` is the transpose of the
/// antipode image `S(y)` (left dual) or `S^{-1}(y)` (right dual).
///
/// On level-1 generators the antipode works out to
/// `S(H_1) = -H_1 - (X_0^+ X_0^- + X_0^- X_0^+) + H_0^2 + H_0` and
/// `S(X_1^+-) = -X_1^+- + (1/2)(X_0^+- H_0 + H_0 X_0^+-) + X_0^+-`;
/// the inverse antipode flips the sign of the trailing level-0 term.
pub fn dual(module: &YModule, side: DualSide) -> YModule {
    let half = crate::scalar::rat(1, 2);
    let correction = |g0: &Matrix| -> Matrix {
        match side {
            DualSide::Left => g0.clone(),
            DualSide::Right => -g0,
        }
    };
    let s_h1 = &(&(-&module.h1) - &module.xp0.anticommutator(&module.xm0))
        + &(&(&module.h0 * &module.h0) + &correction(&module.h0));
    let s_xp1 = &(&(-&module.xp1) + &module.xp0.anticommutator(&module.h0).scale(&half))
        + &correction(&module.xp0);
    let s_xm1 = &(&(-&module.xm1) + &module.xm0.anticommutator(&module.h0).scale(&half))
        + &correction(&module.xm0);
    YModule {
        dim: module.dim,
        h0: (-&module.h0).transpose(),
        h1: s_h1.transpose(),
        xp0: (-&module.xp0).transpose(),
        xp1: s_xp1.transpose(),
        xm0: (-&module.xm0).transpose(),
        xm1: s_xm1.transpose(),
        provenance: Provenance::Dual(side),
    }
}

/// A subspace of a module, stored as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    echelon: Echelon,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.ambient_dim()
    }

    pub fn basis(&self) -> &[Vector] {
        self.echelon.basis()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.echelon.contains(v)
    }

    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }
}

/// Smallest submodule containing the seed vectors: the closure of their span
/// under the six generator matrices.
pub fn submodule(module: &YModule, seeds: &[Vector]) -> Subspace {
    let gens = [
        &module.h0,
        &module.h1,
        &module.xp0,
        &module.xp1,
        &module.xm0,
        &module.xm1,
    ];
    let mut echelon = Echelon::new(module.dim);
    let mut queue: Vec<Vector> = Vec::new();
    for seed in seeds {
        assert_eq!(seed.len(), module.dim, "seed has wrong dimension");
        if echelon.insert(seed) {
            queue.push(seed.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = g.mul_vec(&v);
            if echelon.insert(&w) {
                queue.push(w);
            }
        }
    }
    Subspace { echelon }
}

fn check_invariant(module: &YModule, subspace: &Subspace) -> Result<()> {
    let gens = [
        &module.h0,
        &module.h1,
        &module.xp0,
        &module.xp1,
        &module.xm0,
        &module.xm1,
    ];
    for v in subspace.basis() {
        for g in gens {
            if !subspace.contains(&g.mul_vec(v)) {
                return Err(Error::SubspaceNotInvariant);
            }
        }
    }
    Ok(())
}

/// The action restricted to an invariant subspace, in its echelon basis.
///
/// For a reduced echelon basis, the coordinates of any member vector are its
/// entries at the pivot positions.
pub fn restrict(module: &YModule, subspace: &Subspace) -> Result<YModule> {
    check_invariant(module, subspace)?;
    let n = subspace.dim();
    let restrict_one = |g: &Matrix| -> Matrix {
        let images: Vec<Vector> = subspace.basis().iter().map(|v| g.mul_vec(v)).collect();
        Matrix::from_fn(n, n, |i, j| images[j][subspace.pivots()[i]].clone())
    };
    Ok(YModule {
        dim: n,
        h0: restrict_one(&module.h0),
        h1: restrict_one(&module.h1),
        xp0: restrict_one(&module.xp0),
        xp1: restrict_one(&module.xp1),
        xm0: restrict_one(&module.xm0),
        xm1: restrict_one(&module.xm1),
        provenance: Provenance::Submodule,
    })
}

/// The quotient module by an invariant subspace, on the complement of the
/// pivot coordinates.
pub fn quotient(module: &YModule, subspace: &Subspace) -> Result<YModule> {
    check_invariant(module, subspace)?;
    let free: Vec<usize> = (0..module.dim)
        .filter(|i| !subspace.pivots().contains(i))
        .collect();
    let n = free.len();
    let reduce_gen = |g: &Matrix| -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for (col, &j) in free.iter().enumerate() {
            let mut e = vec![Rat::zero(); module.dim];
            e[j] = rat_int(1);
            let reduced = {
                let image = g.mul_vec(&e);
                subspace.echelon.reduce(&image)
            };
            for (row, &i) in free.iter().enumerate() {
                m.set(row, col, reduced[i].clone());
            }
        }
        m
    };
    Ok(YModule {
        dim: n,
        h0: reduce_gen(&module.h0),
        h1: reduce_gen(&module.h1),
        xp0: reduce_gen(&module.xp0),
        xp1: reduce_gen(&module.xp1),
        xm0: reduce_gen(&module.xm0),
        xm1: reduce_gen(&module.xm1),
        provenance: Provenance::Quotient,
    })
}

/// A module cut into generalized `H_0` eigenspaces, with the six generators
/// conjugated into the block basis.
///
/// `H`-type generators preserve each weight block and `X^+-`-type generators
/// shift the weight by exactly two, so all higher-level generator matrices can
/// be derived blockwise; analyses that only touch a few weights stay cheap.
pub(crate) struct Graded {
    pub weights: Vec<Rat>,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    /// Change of basis: block coordinates to original coordinates.
    pub basis: Matrix,
    pub h0: Matrix,
    pub h1: Matrix,
    pub xp0: Matrix,
    pub xp1: Matrix,
    pub xm0: Matrix,
    pub xm1: Matrix,
}

impl Graded {
    pub fn new(module: &YModule) -> Result<Self> {
        let eig = crate::eigen::rational_eigenvalues(&module.h0)?;
        let mut columns: Vec<Vector> = Vec::new();
        let mut weights = Vec::new();
        let mut sizes = Vec::new();
        let mut offsets = Vec::new();
        for (lambda, mult) in &eig {
            let space = crate::eigen::generalized_eigenspace(&module.h0, lambda, module.dim);
            if space.len() != *mult {
                return Err(Error::NonRationalSpectrum);
            }
            offsets.push(columns.len());
            sizes.push(space.len());
            weights.push(lambda.clone());
            columns.extend(space);
        }
        if columns.len() != module.dim {
            return Err(Error::NonRationalSpectrum);
        }
        let basis = Matrix::from_rows(columns).transpose();
        let inv = basis.inverse().ok_or(Error::NonRationalSpectrum)?;
        let conj = |g: &Matrix| -> Matrix { &(&inv * g) * &basis };
        let graded = Graded {
            weights,
            sizes,
            offsets,
            h0: conj(&module.h0),
            h1: conj(&module.h1),
            xp0: conj(&module.xp0),
            xp1: conj(&module.xp1),
            xm0: conj(&module.xm0),
            xm1: conj(&module.xm1),
            basis,
        };
        graded.check_block_support()?;
        Ok(graded)
    }

    pub fn block_count(&self) -> usize {
        self.weights.len()
    }

    pub fn block_size(&self, idx: usize) -> usize {
        self.sizes[idx]
    }

    /// Index of the block with weight `w`, if present.
    pub fn weight_index(&self, w: &Rat) -> Option<usize> {
        self.weights.binary_search(w).ok()
    }

    /// Block `(row_block, col_block)` of a conjugated generator matrix.
    pub fn block(&self, g: &Matrix, row_block: Option<usize>, col_block: usize) -> Matrix {
        let (ro, rs) = match row_block {
            Some(i) => (self.offsets[i], self.sizes[i]),
            None => (0, 0),
        };
        let (co, cs) = (self.offsets[col_block], self.sizes[col_block]);
        Matrix::from_fn(rs, cs, |i, j| g.get(ro + i, co + j).clone())
    }

    /// Embeds block-local coordinates at `block` into full graded coordinates.
    pub fn embed(&self, block: usize, local: &[Rat]) -> Vector {
        let mut v = vec![Rat::zero(); self.basis.rows()];
        for (i, x) in local.iter().enumerate() {
            v[self.offsets[block] + i] = x.clone();
        }
        v
    }

    /// Original-basis coordinates of a graded-coordinate vector.
    pub fn to_ambient(&self, graded: &[Rat]) -> Vector {
        self.basis.mul_vec(graded)
    }

    fn check_block_support(&self) -> Result<()> {
        let two = rat_int(2);
        let in_h_support = |i: usize, j: usize| i == j;
        let shift_ok = |i: usize, j: usize, shift: &Rat| {
            &self.weights[i] - &self.weights[j] == *shift
        };
        for (g, kind) in [
            (&self.h0, 0),
            (&self.h1, 0),
            (&self.xp0, 1),
            (&self.xp1, 1),
            (&self.xm0, 2),
            (&self.xm1, 2),
        ] {
            for bi in 0..self.block_count() {
                for bj in 0..self.block_count() {
                    let allowed = match kind {
                        0 => in_h_support(bi, bj),
                        1 => shift_ok(bi, bj, &two),
                        _ => shift_ok(bi, bj, &-&two),
                    };
                    if allowed {
                        continue;
                    }
                    for i in 0..self.sizes[bi] {
                        for j in 0..self.sizes[bj] {
                            if !g.get(self.offsets[bi] + i, self.offsets[bj] + j).is_zero() {
                                return Err(Error::UngradedModule);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Ladder of `X_k^+` restricted to maps `V_w -> V_{w+2}`, levels `0..=max_level`.
    pub fn xp_ladder_at(&self, block: usize, max_level: usize) -> Vec<Matrix> {
        let half = crate::scalar::rat(1, 2);
        let target = self.weight_index(&(&self.weights[block] + rat_int(2)));
        let h0_src = self.block(&self.h0, Some(block), block);
        let h1_src = self.block(&self.h1, Some(block), block);
        let (h0_dst, h1_dst) = match target {
            Some(t) => (self.block(&self.h0, Some(t), t), self.block(&self.h1, Some(t), t)),
            None => (Matrix::zeros(0, 0), Matrix::zeros(0, 0)),
        };
        let mut ladder = vec![
            self.block(&self.xp0, target, block),
            self.block(&self.xp1, target, block),
        ];
        ladder.truncate(max_level + 1);
        for l in 1..max_level {
            let a = &ladder[l];
            let next = &(&(&h1_dst * a) - &(a * &h1_src)).scale(&half)
                - &(&(&h0_dst * a) + &(a * &h0_src)).scale(&half);
            ladder.push(next);
        }
        ladder
    }

    /// Ladder of `H_k` restricted to `V_w`, levels `0..=max_level`, via
    /// `H_{k+1}|_w = X_{k+1}^+ X_0^- |_w - X_0^- X_{k+1}^+ |_w` on block windows.
    pub fn h_ladder_at(&self, block: usize, max_level: usize) -> Vec<Matrix> {
        let mut ladder = vec![
            self.block(&self.h0, Some(block), block),
            self.block(&self.h1, Some(block), block),
        ];
        ladder.truncate(max_level + 1);
        if max_level < 2 {
            return ladder;
        }
        let below = self.weight_index(&(&self.weights[block] - rat_int(2)));
        let above = self.weight_index(&(&self.weights[block] + rat_int(2)));
        // X_0^- as maps V_w -> V_{w-2} and V_{w+2} -> V_w.
        let xm_from_here = self.block(&self.xm0, below, block);
        let xm_from_above = match above {
            Some(t) => self.block(&self.xm0, Some(block), t),
            None => Matrix::zeros(self.sizes[block], 0),
        };
        let xp_below = match below {
            Some(b) => self.xp_ladder_at(b, max_level),
            None => vec![Matrix::zeros(self.sizes[block], 0); max_level + 1],
        };
        let xp_here = self.xp_ladder_at(block, max_level);
        for k in 2..=max_level {
            let first = &xp_below[k] * &xm_from_here;
            let second = &xm_from_above * &xp_here[k];
            ladder.push(&first - &second);
        }
        ladder
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use alloc::vec;

    fn diag(entries: &[i64]) -> Matrix {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                rat_int(entries[i])
            } else {
                Rat::zero()
            }
        })
    }

    #[test]
    fn evaluation_module_small_matrices() {
        let w1 = evaluation_module(1, &rat_int(0));
        assert_eq!(w1.dim(), 2);
        assert_eq!(w1.h0(), &diag(&[-1, 1]));
        let w2 = evaluation_module(2, &rat_int(0));
        assert_eq!(w2.h0(), &diag(&[-2, 0, 2]));
        assert_eq!(w2.generator(Gen::H, 2), diag(&[0, -2, 2]));
    }

    #[test]
    fn evaluation_module_with_parameter() {
        // H_k acts on w_0 of W_1(a) by -a^k and on w_1 by a^k.
        let a = rat(7, 3);
        let w = evaluation_module(1, &a);
        for k in 0..4 {
            let h = w.generator(Gen::H, k);
            let mut ak = rat_int(1);
            for _ in 0..k {
                ak = ak * &a;
            }
            assert_eq!(h.get(0, 0), &-&ak);
            assert_eq!(h.get(1, 1), &ak);
        }
    }

    #[test]
    fn ladder_matches_closed_formulas() {
        for (r, a) in [(1usize, rat_int(0)), (2, rat(1, 2)), (3, rat_int(-2))] {
            let w = evaluation_module(r, &a);
            let ladder = Ladder::new(&w, 6);
            let closed = |k: u32, which: Gen| -> Matrix {
                let n = r + 1;
                let pow = |base: &Rat, k: u32| {
                    let mut acc = rat_int(1);
                    for _ in 0..k {
                        acc = acc * base;
                    }
                    acc
                };
                match which {
                    Gen::XPlus => Matrix::from_fn(n, n, |i, j| {
                        if i == j + 1 {
                            pow(&(&a + rat_int(j as i64)), k) * rat_int(j as i64 + 1)
                        } else {
                            Rat::zero()
                        }
                    }),
                    Gen::XMinus => Matrix::from_fn(n, n, |i, j| {
                        if i + 1 == j {
                            pow(&(&a + rat_int(j as i64 - 1)), k) * rat_int((r - j) as i64 + 1)
                        } else {
                            Rat::zero()
                        }
                    }),
                    Gen::H => Matrix::from_fn(n, n, |i, j| {
                        if i == j {
                            pow(&(&a + rat_int(i as i64 - 1)), k)
                                * rat_int(i as i64)
                                * rat_int((r - i) as i64 + 1)
                                - pow(&(&a + rat_int(i as i64)), k)
                                    * rat_int(i as i64 + 1)
                                    * rat_int((r - i) as i64)
                        } else {
                            Rat::zero()
                        }
                    }),
                }
            };
            for k in 0..=6 {
                assert_eq!(ladder.h(k), &closed(k as u32, Gen::H), "H_{} on W_{}", k, r);
                assert_eq!(ladder.xp(k), &closed(k as u32, Gen::XPlus));
                assert_eq!(ladder.xm(k), &closed(k as u32, Gen::XMinus));
            }
        }
    }

    #[test]
    fn relations_hold_on_evaluation_modules() {
        for (r, a) in [(1usize, rat_int(1)), (3, rat(1, 2)), (4, rat(-7, 3))] {
            let report = verify_relations(&evaluation_module(r, &a), 4);
            assert!(report.passed(), "W_{}({}) fails: {}", r, a, report);
        }
    }

    #[test]
    fn relations_fail_on_perturbed_module() {
        let w = evaluation_module(2, &rat(1, 2));
        let mut h1 = w.h1().clone();
        let bumped = h1.get(1, 1) + rat_int(1);
        h1.set(1, 1, bumped);
        let perturbed = YModule::from_raw_generators(
            w.h0().clone(),
            h1,
            w.xp0().clone(),
            w.xp1().clone(),
            w.xm0().clone(),
            w.xm1().clone(),
        )
        .unwrap();
        let report = verify_relations(&perturbed, 2);
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v.relation, RelationKind::CartanLadderPlus | RelationKind::CartanLadderMinus)));
    }

    #[test]
    fn raw_generators_must_commute_at_level_zero_and_one() {
        let w = evaluation_module(1, &rat_int(0));
        let mut h1 = w.h1().clone();
        h1.set(0, 1, rat_int(1));
        let err = YModule::from_raw_generators(
            w.h0().clone(),
            h1,
            w.xp0().clone(),
            w.xp1().clone(),
            w.xm0().clone(),
            w.xm1().clone(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn tensor_is_associative_on_the_nose() {
        let u = evaluation_module(1, &rat_int(0));
        let v = evaluation_module(1, &rat(1, 2));
        let w = evaluation_module(2, &rat_int(-1));
        let left = tensor(&tensor(&u, &v), &w);
        let right = tensor(&u, &tensor(&v, &w));
        assert!(left.same_action(&right));
        assert_eq!(left.dim(), 12);
    }

    #[test]
    fn tensor_with_trivial_is_identity() {
        let v = evaluation_module(2, &rat(5, 2));
        let t = tensor(&v, &trivial_module());
        assert!(t.same_action(&v));
        let t = tensor(&trivial_module(), &v);
        assert!(t.same_action(&v));
    }

    #[test]
    fn tensor_satisfies_relations() {
        let t = tensor(
            &evaluation_module(1, &rat_int(0)),
            &evaluation_module(1, &rat(1, 2)),
        );
        assert!(verify_relations(&t, 3).passed());
        let t3 = tensor(&t, &evaluation_module(2, &rat_int(2)));
        assert!(verify_relations(&t3, 2).passed());
    }

    #[test]
    fn twist_shifts_evaluation_parameter() {
        let a = rat(1, 2);
        let b = rat_int(2);
        let twisted = twist(&evaluation_module(3, &a), &b);
        let direct = evaluation_module(3, &(&a + &b));
        assert!(twisted.same_action(&direct));
    }

    #[test]
    fn twist_is_a_one_parameter_group() {
        let v = tensor(
            &evaluation_module(1, &rat_int(0)),
            &evaluation_module(2, &rat(1, 3)),
        );
        let double = twist(&twist(&v, &rat(3, 4)), &rat(1, 4));
        assert!(double.same_action(&twist(&v, &rat_int(1))));
        assert!(twist(&v, &rat_int(0)).same_action(&v));
    }

    #[test]
    fn dual_of_w1_shifts_parameter() {
        // The left dual of W_1(a) has the matrices of W_1(a-1) after swapping
        // the basis order; check H-eigenvalues directly.
        let a = rat(1, 2);
        let d = dual(&evaluation_module(1, &a), DualSide::Left);
        assert!(verify_relations(&d, 4).passed());
        assert_eq!(d.h0(), &diag(&[1, -1]));
        let am1 = &a - rat_int(1);
        assert_eq!(d.h1().get(0, 0), &am1);
        assert_eq!(d.h1().get(1, 1), &-&am1);
    }

    #[test]
    fn double_dual_round_trips() {
        let v = tensor(
            &evaluation_module(2, &rat(1, 2)),
            &evaluation_module(1, &rat_int(-3)),
        );
        let back = dual(&dual(&v, DualSide::Left), DualSide::Right);
        assert!(back.same_action(&v));
        let back = dual(&dual(&v, DualSide::Right), DualSide::Left);
        assert!(back.same_action(&v));
    }

    #[test]
    fn duals_satisfy_relations() {
        let v = tensor(
            &evaluation_module(1, &rat_int(0)),
            &evaluation_module(1, &rat_int(1)),
        );
        assert!(verify_relations(&dual(&v, DualSide::Left), 3).passed());
        assert!(verify_relations(&dual(&v, DualSide::Right), 3).passed());
    }

    /// `v_+ tensor v_- - v_- tensor v_+` in `W_1(b) tensor W_1(c)` coordinates;
    /// the highest-weight vector of each factor is `w_1`.
    fn singlet() -> Vector {
        vec![Rat::zero(), -rat_int(1), rat_int(1), Rat::zero()]
    }

    #[test]
    fn ordered_pair_has_trivial_submodule_and_w2_quotient() {
        let a = rat_int(0);
        let t = tensor(
            &evaluation_module(1, &(&a + rat_int(1))),
            &evaluation_module(1, &a),
        );
        let sub = submodule(&t, &[singlet()]);
        assert_eq!(sub.dim(), 1);
        let inner = restrict(&t, &sub).unwrap();
        assert!(inner.same_action(&trivial_module()));
        let q = quotient(&t, &sub).unwrap();
        assert_eq!(q.dim(), 3);
        assert!(verify_relations(&q, 3).passed());
        // The whole module is generated by the top vector.
        let top = {
            let mut v = vec![Rat::zero(); 4];
            v[3] = rat_int(1);
            v
        };
        assert_eq!(submodule(&t, &[top]).dim(), 4);
    }

    #[test]
    fn reversed_pair_has_w2_submodule_and_trivial_quotient() {
        let a = rat(1, 2);
        let t = tensor(
            &evaluation_module(1, &a),
            &evaluation_module(1, &(&a + rat_int(1))),
        );
        let top = {
            let mut v = vec![Rat::zero(); 4];
            v[3] = rat_int(1);
            v
        };
        let sub = submodule(&t, &[top]);
        assert_eq!(sub.dim(), 3);
        let inner = restrict(&t, &sub).unwrap();
        assert!(verify_relations(&inner, 3).passed());
        let q = quotient(&t, &sub).unwrap();
        assert!(q.same_action(&trivial_module()));
    }

    #[test]
    fn quotient_rejects_non_invariant_subspace() {
        let t = tensor(
            &evaluation_module(1, &rat_int(0)),
            &evaluation_module(1, &rat_int(5)),
        );
        let mut not_invariant = Echelon::new(4);
        not_invariant.insert(&[rat_int(1), Rat::zero(), Rat::zero(), Rat::zero()]);
        let sub = Subspace {
            echelon: not_invariant,
        };
        assert!(matches!(quotient(&t, &sub), Err(Error::SubspaceNotInvariant)));
        assert!(matches!(restrict(&t, &sub), Err(Error::SubspaceNotInvariant)));
    }

    #[test]
    fn graded_blocks_follow_weights() {
        let t = tensor(
            &evaluation_module(1, &rat_int(0)),
            &evaluation_module(1, &rat_int(2)),
        );
        let g = Graded::new(&t).unwrap();
        assert_eq!(g.weights, vec![rat_int(-2), rat_int(0), rat_int(2)]);
        assert_eq!(
            (0..g.block_count()).map(|i| g.block_size(i)).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        // Window ladders agree with full ladders after conjugation.
        let ladder = Ladder::new(&t, 5);
        let full_h5 = g.h_ladder_at(1, 5)[5].clone();
        let conj = {
            let inv = g.basis.inverse().unwrap();
            &(&inv * ladder.h(5)) * &g.basis
        };
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(full_h5.get(i, j), conj.get(1 + i, 1 + j));
            }
        }
    }

    #[test]
    fn graded_rejects_broken_grading() {
        let w = evaluation_module(1, &rat_int(0));
        let mut xp0 = w.xp0().clone();
        xp0.set(0, 0, rat_int(1));
        let broken = YModule::from_raw_generators(
            w.h0().clone(),
            w.h1().clone(),
            xp0,
            w.xp1().clone(),
            w.xm0().clone(),
            w.xm1().clone(),
        )
        .unwrap();
        assert!(matches!(Graded::new(&broken), Err(Error::UngradedModule)));
    }
}
