//! Deciding whether a code is (extended) GRS and recovering its evaluation
//! points and column multipliers.
//!
//! [`recover`] works on a systematic generator `[I | B]`: it pins the first
//! three points to 0, 1, ∞, solves the remaining points and multipliers in
//! closed form, and finally moves ∞ back into the field with
//! [`trans_to_grs`]. [`is_grs`] wraps it with echelon reduction and a
//! regenerate-and-compare check. [`cauchy_test`] and
//! [`brute_force_recover`] are independent deciders used as cross-checks.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codes::{CodeError, GrsSpec, LinearCode};
use crate::gf::{CountingOps, FieldError, FieldOps, FieldSpec, Fq, ProjElem};
use crate::linalg::{LinalgError, Matrix};

/// Largest field size accepted by [`brute_force_recover`].
pub const BRUTE_FORCE_MAX_Q: u32 = 13;
/// Largest length accepted by [`brute_force_recover`].
pub const BRUTE_FORCE_MAX_N: usize = 8;

/// The step of the recovery at which a zero denominator showed up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    /// multiplier of the second coordinate
    V2,
    /// points of the redundancy columns
    TailPoint,
    /// third multiplier, k = 3 only
    V3,
    /// row ratios feeding the middle points
    InnerRatio,
    /// middle points 4..k
    InnerPoint,
    /// multipliers of the information columns
    Multiplier,
    /// normalizing constant of the tail multipliers
    Scale,
    /// multipliers of the redundancy columns
    TailMultiplier,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::V2 => "v2",
            Stage::TailPoint => "tail-point",
            Stage::V3 => "v3",
            Stage::InnerRatio => "inner-ratio",
            Stage::InnerPoint => "inner-point",
            Stage::Multiplier => "multiplier",
            Stage::Scale => "scale",
            Stage::TailMultiplier => "tail-multiplier",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotGrsReason {
    EchelonFail,
    ZeroDenominator(Stage),
    RepeatedAlpha,
    ZeroMultiplier,
    CodeMismatch,
    EntryZero,
    MinorViolation,
    /// n > q + 1, longer than any GRS code
    LengthExceeded,
}

impl fmt::Display for NotGrsReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotGrsReason::EchelonFail => f.write_str("echelon-fail"),
            NotGrsReason::ZeroDenominator(s) => write!(f, "zero-denominator:{}", s.name()),
            NotGrsReason::RepeatedAlpha => f.write_str("repeated-alpha"),
            NotGrsReason::ZeroMultiplier => f.write_str("zero-multiplier"),
            NotGrsReason::CodeMismatch => f.write_str("code-mismatch"),
            NotGrsReason::EntryZero => f.write_str("entry-zero"),
            NotGrsReason::MinorViolation => f.write_str("minor-violation"),
            NotGrsReason::LengthExceeded => f.write_str("length-exceeded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrsVerdict {
    IsGrs(GrsSpec),
    NotGrs(NotGrsReason),
}

impl GrsVerdict {
    pub fn is_grs(&self) -> bool {
        matches!(self, GrsVerdict::IsGrs(_))
    }

    pub fn spec(&self) -> Option<&GrsSpec> {
        match self {
            GrsVerdict::IsGrs(s) => Some(s),
            GrsVerdict::NotGrs(_) => None,
        }
    }
}

impl fmt::Display for GrsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrsVerdict::IsGrs(s) => write!(
                f,
                "verdict=grs reason=none alpha={} v={}",
                s.alpha().iter().join(","),
                s.v().iter().join(",")
            ),
            GrsVerdict::NotGrs(r) => write!(f, "verdict=non-grs reason={r} alpha= v="),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoverMode {
    /// Divide without checks; any zero denominator is an error.
    Strict,
    /// Check every denominator and the final points and multipliers,
    /// reporting failures as a verdict.
    Guarded,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrsError {
    #[error("dimension k={k} is outside the supported range for n={n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("matrix is not of the form [I | B]")]
    NotSystematic,
    #[error("length {n} exceeds the field size {q}")]
    LengthTooLarge { n: usize, q: u32 },
    #[error("generator has rank {rank} but {k} rows")]
    RankDeficient { rank: usize, k: usize },
    #[error("zero denominator at stage {}", .0.name())]
    ZeroDenominator(Stage),
    #[error("no shift value avoids every point")]
    NoShift,
    #[error("more than one point is infinite")]
    SeveralInfinities,
    #[error("{got} multipliers for {n} points")]
    LengthMismatch { n: usize, got: usize },
    #[error("leading block of the generator is singular")]
    EchelonFailure,
    #[error("search limited to q <= {max_q} and n <= {max_n}")]
    BudgetExceeded { max_q: u32, max_n: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Moves an infinite point into the field. If a finite point is 0, all
/// finite points are first shifted by the smallest element λ not among
/// them; then every point is inverted, with ∞ going to 0, and each
/// multiplier except the one at ∞ is scaled by α^{k−1}. Points without ∞
/// are returned unchanged.
pub fn trans_to_grs<F: FieldOps>(
    ops: &F,
    alpha: &[ProjElem],
    v: Option<&[Fq]>,
    k: usize,
) -> Result<(Vec<Fq>, Option<Vec<Fq>>), GrsError> {
    if let Some(v) = v {
        if v.len() != alpha.len() {
            return Err(GrsError::LengthMismatch { n: alpha.len(), got: v.len() });
        }
    }
    let inf: Vec<usize> = alpha.iter().positions(|a| a.is_infinity()).collect();
    let pos = match inf.as_slice() {
        [] => {
            let finite = alpha.iter().map(|a| a.finite().expect("finite")).collect();
            return Ok((finite, v.map(<[Fq]>::to_vec)));
        }
        [p] => *p,
        _ => return Err(GrsError::SeveralInfinities),
    };
    let field = ops.spec();
    let mut pts: Vec<Fq> = alpha.iter().map(|a| a.finite().unwrap_or(Fq::ZERO)).collect();
    let has_zero = pts.iter().enumerate().any(|(j, a)| j != pos && a.is_zero());
    if has_zero {
        let lambda = field
            .elements()
            .find(|x| !pts.iter().enumerate().any(|(j, a)| j != pos && a == x))
            .ok_or(GrsError::NoShift)?;
        for (j, a) in pts.iter_mut().enumerate() {
            if j != pos {
                *a = ops.sub(*a, lambda);
            }
        }
    }
    let mut v_out = v.map(<[Fq]>::to_vec);
    for (j, a) in pts.iter_mut().enumerate() {
        if j == pos {
            *a = Fq::ZERO;
            continue;
        }
        if let Some(v) = v_out.as_mut() {
            v[j] = ops.mul(v[j], ops.pow_u(*a, k as u64 - 1));
        }
        *a = ops.inv(*a)?;
    }
    Ok((pts, v_out))
}

enum Halt {
    Reject(NotGrsReason),
    Fail(GrsError),
}

macro_rules! halt_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Halt {
            fn from(e: $t) -> Self {
                Halt::Fail(e.into())
            }
        }
    )*};
}

halt_from!(GrsError, CodeError, FieldError, LinalgError);

fn quotient<F: FieldOps>(ops: &F, mode: RecoverMode, num: Fq, den: Fq, stage: Stage) -> Result<Fq, Halt> {
    if den.is_zero() {
        return Err(match mode {
            RecoverMode::Strict => Halt::Fail(GrsError::ZeroDenominator(stage)),
            RecoverMode::Guarded => Halt::Reject(NotGrsReason::ZeroDenominator(stage)),
        });
    }
    Ok(ops.div(num, den)?)
}

/// Recovers (α, v) from a systematic generator `[I | B]` with
/// 3 ≤ k ≤ n−2 and n ≤ q, using the field's own arithmetic.
pub fn recover(m: &Matrix, mode: RecoverMode) -> Result<GrsVerdict, GrsError> {
    recover_with(&**m.field(), m, mode)
}

/// [`recover`] on an arbitrary implementation of the field arithmetic,
/// such as [`CountingOps`].
pub fn recover_with<F: FieldOps>(ops: &F, m: &Matrix, mode: RecoverMode) -> Result<GrsVerdict, GrsError> {
    match recover_inner(ops, m, mode) {
        Ok(spec) => Ok(GrsVerdict::IsGrs(spec)),
        Err(Halt::Reject(r)) => Ok(GrsVerdict::NotGrs(r)),
        Err(Halt::Fail(e)) => Err(e),
    }
}

fn recover_inner<F: FieldOps>(ops: &F, m: &Matrix, mode: RecoverMode) -> Result<GrsSpec, Halt> {
    let (k, n) = (m.rows(), m.cols());
    let q = ops.spec().q();
    if k < 3 || k + 2 > n {
        return Err(GrsError::DimensionOutOfRange { k, n }.into());
    }
    if n > q as usize {
        return Err(GrsError::LengthTooLarge { n, q }.into());
    }
    if !m.is_systematic() {
        return Err(GrsError::NotSystematic.into());
    }
    let b = |i: usize, j: usize| m.get(i, j);
    let (c1, c2) = (k, k + 1);
    let (a1, a2, a3) = (b(0, c1), b(1, c1), b(2, c1));
    let (e1, e2, e3) = (b(0, c2), b(1, c2), b(2, c2));

    // the first three points are 0, 1, ∞ and v_1 = 1
    let a1e1 = ops.mul(a1, e1);
    let a2e2 = ops.mul(a2, e2);
    let num = ops.sub(ops.mul(a1e1, ops.mul(a3, e2)), ops.mul(a1e1, ops.mul(a2, e3)));
    let den = ops.sub(ops.mul(a2e2, ops.mul(a1, e3)), ops.mul(a2e2, ops.mul(a3, e1)));
    let v2 = quotient(ops, mode, num, den, Stage::V2)?;

    let mut alpha = vec![ProjElem::Finite(Fq::ZERO); n];
    alpha[1] = ProjElem::Finite(Fq::ONE);
    alpha[2] = ProjElem::Infinity;
    let mut tail = vec![Fq::ZERO; n];
    for j in k..n {
        let t = ops.mul(v2, b(1, j));
        let s = ops.add(b(0, j), t);
        tail[j] = s;
        alpha[j] = ProjElem::Finite(quotient(ops, mode, t, s, Stage::TailPoint)?);
    }

    let (alpha, v) = if k == 3 {
        let num = ops.neg(ops.mul(a1, ops.mul(v2, a2)));
        let den = ops.mul(a3, ops.add(a1, ops.mul(v2, a2)));
        let v3 = quotient(ops, mode, num, den, Stage::V3)?;
        let mut v = vec![Fq::ONE, v2, v3];
        v.extend_from_slice(&tail[k..]);
        let (alpha, v) = trans_to_grs(ops, &alpha, Some(&v), k)?;
        if mode == RecoverMode::Guarded && !alpha.iter().all_unique() {
            return Err(Halt::Reject(NotGrsReason::RepeatedAlpha));
        }
        (alpha, v.expect("multipliers were supplied"))
    } else {
        let x1 = alpha[c1].finite().expect("finite");
        let x2 = alpha[c2].finite().expect("finite");
        let x12 = ops.mul(x1, x2);
        for i in 3..k {
            let r1 = quotient(ops, mode, a1, b(i, c1), Stage::InnerRatio)?;
            let r2 = quotient(ops, mode, e1, b(i, c2), Stage::InnerRatio)?;
            let num = ops.mul(ops.sub(r2, r1), x12);
            let den = ops.sub(ops.mul(r2, x2), ops.mul(r1, x1));
            alpha[i] = ProjElem::Finite(quotient(ops, mode, num, den, Stage::InnerPoint)?);
        }
        let (alpha, _) = trans_to_grs(ops, &alpha, None, k)?;
        if mode == RecoverMode::Guarded && !alpha.iter().all_unique() {
            return Err(Halt::Reject(NotGrsReason::RepeatedAlpha));
        }
        let v = multipliers(ops, mode, m, &alpha)?;
        (alpha, v)
    };

    if mode == RecoverMode::Guarded && v.iter().any(|x| x.is_zero()) {
        return Err(Halt::Reject(NotGrsReason::ZeroMultiplier));
    }
    let alpha = alpha.into_iter().map(ProjElem::Finite).collect();
    match GrsSpec::new(alpha, v, k) {
        Ok(spec) => Ok(spec),
        Err(e) => Err(Halt::Fail(e.into())),
    }
}

/// Multipliers once all points are finite. The information columns use
/// v_i = g_i(α_{k+1}) / (g_i(α_i) b_{i,k+1}) with g_i = ∏_{j<k, j≠i}(x − α_j),
/// which normalizes v_{k+1} = 1; the redundancy columns use
/// v_j = b_{1,j} / h(α_j) with h(y) = d ∏_{l=2..k}(y − α_l).
fn multipliers<F: FieldOps>(ops: &F, mode: RecoverMode, m: &Matrix, alpha: &[Fq]) -> Result<Vec<Fq>, Halt> {
    let (k, n) = (m.rows(), m.cols());
    let at = alpha[k];
    let mut p_at = Fq::ONE;
    for &a in &alpha[..k] {
        p_at = ops.mul(p_at, ops.sub(at, a));
    }
    let mut v = vec![Fq::ZERO; n];
    for i in 0..k {
        let mut gi = Fq::ONE;
        for (j, &a) in alpha[..k].iter().enumerate() {
            if j != i {
                gi = ops.mul(gi, ops.sub(alpha[i], a));
            }
        }
        let g_at = quotient(ops, mode, p_at, ops.sub(at, alpha[i]), Stage::Multiplier)?;
        v[i] = quotient(ops, mode, g_at, ops.mul(gi, m.get(i, k)), Stage::Multiplier)?;
    }
    let mut d = v[0];
    for &a in &alpha[1..k] {
        d = ops.mul(d, ops.sub(alpha[0], a));
    }
    let d = quotient(ops, mode, Fq::ONE, d, Stage::Scale)?;
    for j in k..n {
        let mut h = d;
        for &a in &alpha[1..k] {
            h = ops.mul(h, ops.sub(alpha[j], a));
        }
        v[j] = quotient(ops, mode, m.get(0, j), h, Stage::TailMultiplier)?;
    }
    Ok(v)
}

/// Decides whether the code generated by `g` is an (extended) GRS code.
///
/// Supported dimensions are 3 ≤ k ≤ n−2 (k ≤ n−3 when n = q+1). Codes
/// longer than q+1 are never GRS. A code of length exactly q+1 is
/// recovered from its puncturing at the last coordinate, which then gets
/// the one point left over, ∞.
pub fn is_grs(g: &Matrix) -> Result<GrsVerdict, GrsError> {
    let (k, n) = (g.rows(), g.cols());
    let q = g.field().q() as usize;
    let rank = g.rank();
    if rank != k {
        return Err(GrsError::RankDeficient { rank, k });
    }
    if k < 3 || k + 2 > n || (n == q + 1 && k + 3 > n) {
        return Err(GrsError::DimensionOutOfRange { k, n });
    }
    if n > q + 1 {
        return Ok(GrsVerdict::NotGrs(NotGrsReason::LengthExceeded));
    }
    let (m, ok) = g.echelonize();
    if !ok {
        return Ok(GrsVerdict::NotGrs(NotGrsReason::EchelonFail));
    }
    if n == q + 1 {
        return full_length(&m);
    }
    let spec = match recover_inner(&**m.field(), &m, RecoverMode::Guarded) {
        Ok(spec) => spec,
        Err(Halt::Reject(r)) => return Ok(GrsVerdict::NotGrs(r)),
        Err(Halt::Fail(e)) => return Err(e),
    };
    compare(&m, spec)
}

fn compare(m: &Matrix, spec: GrsSpec) -> Result<GrsVerdict, GrsError> {
    let (m1, ok) = spec.generator_matrix(m.field())?.echelonize();
    if ok && m1 == *m {
        Ok(GrsVerdict::IsGrs(spec))
    } else {
        Ok(GrsVerdict::NotGrs(NotGrsReason::CodeMismatch))
    }
}

fn full_length(m: &Matrix) -> Result<GrsVerdict, GrsError> {
    let field = m.field();
    let n = m.cols();
    let head: Vec<usize> = (0..n - 1).collect();
    let punctured = m.select_columns(&head)?;
    let spec = match recover_inner(&**field, &punctured, RecoverMode::Guarded) {
        Ok(spec) => spec,
        Err(Halt::Reject(r)) => return Ok(GrsVerdict::NotGrs(r)),
        Err(Halt::Fail(e)) => return Err(e),
    };
    let mut alpha = spec.alpha().to_vec();
    alpha.push(ProjElem::Infinity);
    let mut v = spec.v().to_vec();
    v.push(Fq::ONE);
    let trial = GrsSpec::new(alpha.clone(), v.clone(), spec.k())?;
    let (m1, ok) = trial.generator_matrix(field)?.echelonize();
    let last = m1.get(0, n - 1);
    if !ok || last.is_zero() {
        return Ok(GrsVerdict::NotGrs(NotGrsReason::CodeMismatch));
    }
    // scaling the last column of the generator scales the last column of
    // its reduced form by the same factor
    let c = field.div(m.get(0, n - 1), last)?;
    if c.is_zero() {
        return Ok(GrsVerdict::NotGrs(NotGrsReason::ZeroMultiplier));
    }
    v[n - 1] = c;
    compare(m, GrsSpec::new(alpha, v, spec.k())?)
}

/// First violated Cauchy condition of the redundancy part A of the reduced
/// generator `[I | A]`, or None if A is a Cauchy matrix.
pub fn cauchy_failure(g: &Matrix) -> Result<Option<NotGrsReason>, GrsError> {
    let (m, ok) = g.echelonize();
    if !ok {
        return Err(GrsError::EchelonFailure);
    }
    let f = &**m.field();
    let (k, n) = (m.rows(), m.cols());
    let r = n - k;
    if (0..k).any(|i| (k..n).any(|j| m.get(i, j).is_zero())) {
        return Ok(Some(NotGrsReason::EntryZero));
    }
    let mut inv = Matrix::zeros(m.field().clone(), k, r);
    for i in 0..k {
        for j in 0..r {
            inv.set(i, j, f.inv(m.get(i, k + j))?);
        }
    }
    for rows in (0..k).combinations(2) {
        for cols in (0..r).combinations(2) {
            if inv.minor(&rows, &cols)?.is_zero() {
                return Ok(Some(NotGrsReason::MinorViolation));
            }
        }
    }
    for rows in (0..k).combinations(3) {
        for cols in (0..r).combinations(3) {
            if !inv.minor(&rows, &cols)?.is_zero() {
                return Ok(Some(NotGrsReason::MinorViolation));
            }
        }
    }
    Ok(None)
}

/// Whether the reduced generator is `[I | A]` with A a Cauchy matrix.
pub fn cauchy_test(g: &Matrix) -> Result<bool, GrsError> {
    Ok(cauchy_failure(g)?.is_none())
}

/// Exhaustive search over normalized specs: α_1 = 0, α_2 = 1, v_1 = 1,
/// the other points over all ordered tuples of the remaining projective
/// points, multipliers solved column by column.
pub fn brute_force_recover(code: &LinearCode) -> Result<Option<GrsSpec>, GrsError> {
    let field = code.field();
    let (k, n, q) = (code.k(), code.n(), field.q());
    if q > BRUTE_FORCE_MAX_Q || n > BRUTE_FORCE_MAX_N {
        return Err(GrsError::BudgetExceeded { max_q: BRUTE_FORCE_MAX_Q, max_n: BRUTE_FORCE_MAX_N });
    }
    let (m, ok) = code.generator().echelonize();
    if !ok {
        return Ok(None);
    }
    let f = &**field;
    let mut universe: Vec<ProjElem> = f.elements().map(ProjElem::Finite).collect();
    universe.push(ProjElem::Infinity);
    if k == n {
        let spec = GrsSpec::new(universe[..n].to_vec(), vec![Fq::ONE; n], k)?;
        return Ok(Some(spec));
    }
    let rest: Vec<ProjElem> = universe[2..].to_vec();
    let fixed = [ProjElem::Finite(Fq::ZERO), ProjElem::Finite(Fq::ONE)];
    for tail in rest.iter().copied().permutations(n.saturating_sub(2)) {
        let alpha: Vec<ProjElem> = fixed.iter().copied().take(n).chain(tail).collect();
        let unit = GrsSpec::new(alpha.clone(), vec![Fq::ONE; n], k)?;
        let (a, ok) = unit.generator_matrix(field)?.echelonize();
        if !ok {
            continue;
        }
        if let Some(v) = solve_multipliers(f, &m, &a) {
            let spec = GrsSpec::new(alpha, v, k)?;
            if spec.generator(field)?.code_eq(code)? {
                return Ok(Some(spec));
            }
        }
    }
    Ok(None)
}

/// Multipliers v with b_{ij} = a_{ij} v_j / v_i and v_0 = 1, if any.
fn solve_multipliers(f: &FieldSpec, b: &Matrix, a: &Matrix) -> Option<Vec<Fq>> {
    let (k, n) = (b.rows(), b.cols());
    let mut v = vec![Fq::ZERO; n];
    v[0] = Fq::ONE;
    for j in k..n {
        if a.get(0, j).is_zero() || b.get(0, j).is_zero() {
            return None;
        }
        v[j] = f.div(b.get(0, j), a.get(0, j)).ok()?;
    }
    for i in 1..k {
        if a.get(i, k).is_zero() || b.get(i, k).is_zero() {
            return None;
        }
        v[i] = f.div(f.mul(a.get(i, k), v[k]), b.get(i, k)).ok()?;
    }
    let consistent = (0..k).all(|i| (k..n).all(|j| f.mul(b.get(i, j), v[i]) == f.mul(a.get(i, j), v[j])));
    consistent.then_some(v)
}

/// One row of the recovery benchmark.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub k: usize,
    pub n: usize,
    pub trials: usize,
    pub median_nanos: u128,
    pub median_ops: u64,
    pub min_ops: u64,
    pub max_ops: u64,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} n={} trials={} median_ns={} ops_median={} ops_min={} ops_max={}",
            self.k, self.n, self.trials, self.median_nanos, self.median_ops, self.min_ops, self.max_ops
        )
    }
}

/// Times [`recover`] in strict mode on fresh random GRS codes and counts
/// its field operations. Echelon reduction of the instance is not
/// included. One row per length; no rows when `trials` is 0.
pub fn bench_recover(
    field: &Arc<FieldSpec>,
    k: usize,
    lengths: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<BenchRow>, GrsError> {
    if trials == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(lengths.len());
    for &n in lengths {
        if n > field.q() as usize {
            return Err(GrsError::LengthTooLarge { n, q: field.q() });
        }
        let mut times = Vec::with_capacity(trials);
        let mut counts = Vec::with_capacity(trials);
        for trial in 0..trials {
            let spec = GrsSpec::random(field, n, k, trial % 2 == 1, &mut rng)?;
            let (m, _) = spec.generator_matrix(field)?.echelonize();
            let start = Instant::now();
            let verdict = recover(&m, RecoverMode::Strict)?;
            times.push(start.elapsed().as_nanos());
            std::hint::black_box(verdict);
            let counter = CountingOps::new(field);
            recover_with(&counter, &m, RecoverMode::Strict)?;
            counts.push(counter.count());
        }
        times.sort_unstable();
        counts.sort_unstable();
        rows.push(BenchRow {
            k,
            n,
            trials,
            median_nanos: times[trials / 2],
            median_ops: counts[trials / 2],
            min_ops: counts[0],
            max_ops: counts[trials - 1],
        });
    }
    Ok(rows)
}
