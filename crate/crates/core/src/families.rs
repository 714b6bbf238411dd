//! Generator matrices and MDS criteria for the GRS-derived families:
//! modified and extended modified GRS codes, the C and D subcode families,
//! twisted GRS codes with their duals, Roth-Lempel codes and column-twisted
//! GRS codes.

use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::codes::{CodeError, LinearCode};
use crate::gf::{FieldSpec, Fq, ProjElem};
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("twist index t={t} outside the allowed range for k={k}")]
    TwistOutOfRange { t: usize, k: usize },
    #[error("points are not pairwise distinct")]
    RepeatedPoint,
    #[error("a column multiplier is zero")]
    ZeroMultiplier,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("this hook needs all evaluation points nonzero")]
    ZeroPoint,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parameters out of range: {0}")]
    Bounds(String),
    #[error("element outside the field")]
    ForeignElement,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Parameters of MGRS_{n,k}(α, v, η, t); `alpha` has n−1 entries and `v`
/// has n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MgrsParams {
    pub alpha: Vec<Fq>,
    pub v: Vec<Fq>,
    pub eta: Fq,
    pub t: usize,
    pub k: usize,
}

/// MGRS parameters plus the multiplier of the appended ∞ column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmgrsParams {
    pub mgrs: MgrsParams,
    pub v_inf: Fq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hook {
    /// twist 1 + λ x^k in the constant row, extra column e_1
    Zero,
    /// twist x^{k−1} + λ x^k in the top row, extra column e_k
    TopDegree,
}

/// Parameters of TGRS_{n+1,k}(α, v, λ, hook): n points, n+1 multipliers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TgrsParams {
    pub alpha: Vec<Fq>,
    pub v: Vec<Fq>,
    pub lambda: Fq,
    pub k: usize,
    pub hook: Hook,
}

/// Parameters of an [n, k] Roth-Lempel code; `a` has n−2 entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RothLempelParams {
    pub a: Vec<Fq>,
    pub delta: Fq,
    pub k: usize,
}

/// Parameters of a column-twisted GRS code; `a` has n−1 entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColTwistedParams {
    pub a: Vec<Fq>,
    pub b: Fq,
    pub c: Fq,
    pub lambda: Fq,
    pub k: usize,
    pub extended: bool,
}

/// Coefficients, ascending by degree, of P(x) = ∏(x − α_j) and of each
/// quotient f_h(x) = P(x) / (x − α_h).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCoeffs {
    pub p: Vec<Fq>,
    pub quotients: Vec<Vec<Fq>>,
}

/// A parity-check matrix of a twisted GRS code. `closed_form` is false
/// when a denominator of the explicit formula vanished and the matrix was
/// obtained from the right kernel instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualParity {
    pub h: Matrix,
    pub closed_form: bool,
}

fn check_len(expected: usize, got: usize) -> Result<(), FamilyError> {
    if expected == got {
        Ok(())
    } else {
        Err(FamilyError::LengthMismatch { expected, got })
    }
}

fn check_elems(field: &FieldSpec, xs: &[Fq]) -> Result<(), FamilyError> {
    if xs.iter().all(|&x| field.contains(x)) {
        Ok(())
    } else {
        Err(FamilyError::ForeignElement)
    }
}

fn check_distinct(xs: &[Fq]) -> Result<(), FamilyError> {
    if xs.iter().all_unique() {
        Ok(())
    } else {
        Err(FamilyError::RepeatedPoint)
    }
}

fn check_nonzero(xs: &[Fq]) -> Result<(), FamilyError> {
    if xs.iter().any(|x| x.is_zero()) {
        Err(FamilyError::ZeroMultiplier)
    } else {
        Ok(())
    }
}

fn powers(field: &FieldSpec, x: Fq, count: usize) -> Vec<Fq> {
    let mut out = Vec::with_capacity(count);
    let mut acc = Fq::ONE;
    for _ in 0..count {
        out.push(acc);
        acc = field.mul(acc, x);
    }
    out
}

fn scaled(field: &FieldSpec, col: Vec<Fq>, v: Fq) -> Vec<Fq> {
    col.into_iter().map(|x| field.mul(x, v)).collect()
}

fn build(field: &Arc<FieldSpec>, rows: usize, columns: &[Vec<Fq>]) -> Result<LinearCode, FamilyError> {
    Ok(LinearCode::new(Matrix::from_columns(field.clone(), rows, columns)?)?)
}

impl MgrsParams {
    pub fn n(&self) -> usize {
        self.alpha.len() + 1
    }

    pub fn validate(&self, field: &FieldSpec) -> Result<(), FamilyError> {
        check_len(self.n(), self.v.len())?;
        if self.t == 0 || self.t >= self.k {
            return Err(FamilyError::TwistOutOfRange { t: self.t, k: self.k });
        }
        if self.k > self.n() {
            return Err(FamilyError::Bounds(format!("k={} exceeds n={}", self.k, self.n())));
        }
        check_elems(field, &self.alpha)?;
        check_elems(field, &self.v)?;
        check_elems(field, &[self.eta])?;
        check_distinct(&self.alpha)?;
        check_nonzero(&self.v)
    }

    fn columns(&self, field: &FieldSpec) -> Vec<Vec<Fq>> {
        let mut cols: Vec<Vec<Fq>> = self
            .alpha
            .iter()
            .zip(&self.v)
            .map(|(&a, &v)| scaled(field, powers(field, a, self.k), v))
            .collect();
        let mut last = vec![Fq::ZERO; self.k];
        last[0] = Fq::ONE;
        last[self.t] = self.eta;
        cols.push(scaled(field, last, self.v[self.n() - 1]));
        cols
    }
}

impl EmgrsParams {
    pub fn n(&self) -> usize {
        self.mgrs.n() + 1
    }

    pub fn validate(&self, field: &FieldSpec) -> Result<(), FamilyError> {
        self.mgrs.validate(field)?;
        check_elems(field, &[self.v_inf])?;
        check_nonzero(&[self.v_inf])
    }
}

pub fn mgrs_generator(field: &Arc<FieldSpec>, p: &MgrsParams) -> Result<LinearCode, FamilyError> {
    p.validate(field)?;
    build(field, p.k, &p.columns(field))
}

pub fn emgrs_generator(field: &Arc<FieldSpec>, p: &EmgrsParams) -> Result<LinearCode, FamilyError> {
    p.validate(field)?;
    let mut cols = p.mgrs.columns(field);
    let mut inf = vec![Fq::ZERO; p.mgrs.k];
    inf[p.mgrs.k - 1] = p.v_inf;
    cols.push(inf);
    build(field, p.mgrs.k, &cols)
}

/// Coefficients of ∏(x − r), ascending by degree.
pub fn poly_from_roots(field: &FieldSpec, roots: &[Fq]) -> Vec<Fq> {
    let mut c = vec![Fq::ONE];
    for &r in roots {
        c = mul_linear(field, &c, r);
    }
    c
}

fn mul_linear(field: &FieldSpec, c: &[Fq], r: Fq) -> Vec<Fq> {
    let mut out = vec![Fq::ZERO; c.len() + 1];
    let nr = field.neg(r);
    for (i, &x) in c.iter().enumerate() {
        out[i + 1] = field.add(out[i + 1], x);
        out[i] = field.add(out[i], field.mul(x, nr));
    }
    out
}

/// Whether, for every m-subset S of `alpha`, the coefficients π of
/// ∏_{s∈S}(x − α_s) satisfy π_0 + η·π_t ≠ 0 (the η term is dropped when
/// t > m). This is the nonvanishing condition of the minors that mix m
/// Vandermonde columns with the twisted column.
pub fn subset_condition(field: &FieldSpec, alpha: &[Fq], m: usize, eta: Fq, t: usize) -> bool {
    if m > alpha.len() {
        return true;
    }
    if t > m {
        // π_0 ≠ 0, i.e. no zero point in the subset
        return m == 0 || !alpha.contains(&Fq::ZERO);
    }
    if t == m {
        // η ≠ (−1)^{m+1} ∏ α_S
        let sign = if (m + 1) % 2 == 0 { Fq::ONE } else { field.neg(Fq::ONE) };
        return walk(alpha, m, Fq::ONE, &|acc: &Fq, a| field.mul(*acc, a), &mut |prod| {
            field.mul(sign, *prod) != eta
        });
    }
    if t == 1 {
        // 1/η ≠ Σ 1/α_s on the projective line
        let target = field.proj_inv(ProjElem::Finite(eta));
        let recip: Vec<ProjElem> = alpha.iter().map(|&a| field.proj_inv(ProjElem::Finite(a))).collect();
        return walk_proj(field, &recip, m, target);
    }
    walk(alpha, m, vec![Fq::ONE], &|acc: &Vec<Fq>, a| mul_linear(field, acc, a), &mut |pi| {
        !field.add(pi[0], field.mul(eta, pi[t])).is_zero()
    })
}

/// Depth-first walk over the m-subsets of `items` carrying an accumulated
/// state; stops at the first subset for which `check` fails.
fn walk<S, T: Copy>(items: &[T], m: usize, init: S, step: &dyn Fn(&S, T) -> S, check: &mut dyn FnMut(&S) -> bool) -> bool {
    fn rec<S, T: Copy>(
        items: &[T],
        start: usize,
        left: usize,
        state: &S,
        step: &dyn Fn(&S, T) -> S,
        check: &mut dyn FnMut(&S) -> bool,
    ) -> bool {
        if left == 0 {
            return check(state);
        }
        for i in start..=items.len() - left {
            let next = step(state, items[i]);
            if !rec(items, i + 1, left - 1, &next, step, check) {
                return false;
            }
        }
        true
    }
    rec(items, 0, m, &init, step, check)
}

fn walk_proj(field: &FieldSpec, recip: &[ProjElem], m: usize, target: ProjElem) -> bool {
    let step = |acc: &ProjElem, r: ProjElem| match (acc, r) {
        (ProjElem::Finite(x), ProjElem::Finite(y)) => ProjElem::Finite(field.add(*x, y)),
        _ => ProjElem::Infinity,
    };
    walk(recip, m, ProjElem::Finite(Fq::ZERO), &step, &mut |s| *s != target)
}

/// MDS criterion for MGRS codes via the (k−1)-subset condition.
pub fn mgrs_is_mds(field: &FieldSpec, p: &MgrsParams) -> Result<bool, FamilyError> {
    p.validate(field)?;
    Ok(subset_condition(field, &p.alpha, p.k - 1, p.eta, p.t))
}

/// MDS criterion for EMGRS codes: the subset condition for m = k−1 and
/// m = k−2.
pub fn emgrs_is_mds(field: &FieldSpec, p: &EmgrsParams) -> Result<bool, FamilyError> {
    p.validate(field)?;
    let m = &p.mgrs;
    Ok(subset_condition(field, &m.alpha, m.k - 1, m.eta, m.t) && subset_condition(field, &m.alpha, m.k - 2, m.eta, m.t))
}

fn check_cd_range(t: usize, k: usize) -> Result<(), FamilyError> {
    if t >= 1 && t + 1 < k {
        Ok(())
    } else {
        Err(FamilyError::TwistOutOfRange { t, k })
    }
}

/// The code spanned by x^e, e ∈ {0..k} \ {t}, evaluated at α.
pub fn c_code_generator(field: &Arc<FieldSpec>, alpha: &[Fq], t: usize, k: usize) -> Result<LinearCode, FamilyError> {
    check_cd_range(t, k)?;
    check_elems(field, alpha)?;
    check_distinct(alpha)?;
    let cols: Vec<Vec<Fq>> = alpha
        .iter()
        .map(|&a| {
            let mut col = powers(field, a, k + 1);
            col.remove(t);
            col
        })
        .collect();
    build(field, k, &cols)
}

/// Vandermonde rows 0..k at α (n−1 points) plus the unit column e_t.
pub fn d_code_generator(field: &Arc<FieldSpec>, alpha: &[Fq], t: usize, k: usize) -> Result<LinearCode, FamilyError> {
    check_cd_range(t, k)?;
    check_elems(field, alpha)?;
    check_distinct(alpha)?;
    let mut cols: Vec<Vec<Fq>> = alpha.iter().map(|&a| powers(field, a, k)).collect();
    let mut unit = vec![Fq::ZERO; k];
    unit[t] = Fq::ONE;
    cols.push(unit);
    build(field, k, &cols)
}

impl TgrsParams {
    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn validate(&self, field: &FieldSpec) -> Result<(), FamilyError> {
        check_len(self.n() + 1, self.v.len())?;
        if self.k == 0 || self.k > self.n() {
            return Err(FamilyError::Bounds(format!("need 1 <= k <= n, got k={} n={}", self.k, self.n())));
        }
        check_elems(field, &self.alpha)?;
        check_elems(field, &self.v)?;
        check_elems(field, &[self.lambda])?;
        if self.lambda.is_zero() {
            return Err(FamilyError::ZeroLambda);
        }
        check_distinct(&self.alpha)?;
        check_nonzero(&self.v)
    }
}

pub fn tgrs_generator(field: &Arc<FieldSpec>, p: &TgrsParams) -> Result<LinearCode, FamilyError> {
    p.validate(field)?;
    let k = p.k;
    let mut cols: Vec<Vec<Fq>> = p
        .alpha
        .iter()
        .zip(&p.v)
        .map(|(&a, &v)| {
            let mut col = powers(field, a, k + 1);
            let twist = field.mul(p.lambda, col[k]);
            col.truncate(k);
            match p.hook {
                Hook::Zero => col[0] = field.add(col[0], twist),
                Hook::TopDegree => col[k - 1] = field.add(col[k - 1], twist),
            }
            scaled(field, col, v)
        })
        .collect();
    let mut last = vec![Fq::ZERO; k];
    match p.hook {
        Hook::Zero => last[0] = p.v[p.n()],
        Hook::TopDegree => last[k - 1] = p.v[p.n()],
    }
    cols.push(last);
    build(field, k, &cols)
}

/// The explicit (n−k+1) x (n+1) parity-check matrix of a twisted GRS code.
pub fn tgrs_dual_parity(field: &Arc<FieldSpec>, p: &TgrsParams) -> Result<DualParity, FamilyError> {
    p.validate(field)?;
    let n = p.n();
    let k = p.k;
    if k >= n {
        return Err(FamilyError::Bounds(format!("need k <= n-1, got k={k} n={n}")));
    }
    if p.hook == Hook::Zero && p.alpha.iter().any(|a| a.is_zero()) {
        return Err(FamilyError::ZeroPoint);
    }
    let f = &**field;
    let u: Vec<Fq> = (0..n)
        .map(|i| {
            let prod = f.product((0..n).filter(|&j| j != i).map(|j| f.sub(p.alpha[i], p.alpha[j])));
            f.inv(prod).expect("distinct points")
        })
        .collect();
    let top = f.sum((0..n).map(|i| f.mul(u[i], f.pow_u(p.alpha[i], n as u64 - 1))));
    let rows = n - k + 1;
    let mut h = Matrix::zeros(field.clone(), rows, n + 1);
    let fallback = || -> Result<DualParity, FamilyError> {
        let g = tgrs_generator(field, p)?;
        Ok(DualParity { h: g.generator().right_kernel(), closed_form: false })
    };
    let (w, w_last, extra_row, extra) = match p.hook {
        Hook::Zero => {
            let w: Vec<Fq> = (0..n)
                .map(|i| f.div(u[i], f.mul(p.alpha[i], p.v[i])).expect("nonzero"))
                .collect();
            let s_inv = f.sum((0..n).map(|i| f.div(u[i], p.alpha[i]).expect("nonzero")));
            if s_inv.is_zero() {
                return fallback();
            }
            let w_last = f.div(f.neg(s_inv), p.v[n]).expect("nonzero");
            let eta = f.div(f.mul(p.lambda, top), s_inv).expect("nonzero");
            h.set(0, n, w_last);
            (w, w_last, n - k, eta)
        }
        Hook::TopDegree => {
            let w: Vec<Fq> = (0..n).map(|i| f.div(u[i], p.v[i]).expect("nonzero")).collect();
            let den = f.mul(p.lambda, top);
            if den.is_zero() {
                return fallback();
            }
            let w_last = f.div(f.neg(den), p.v[n]).expect("nonzero");
            let num = f.sum((0..n).map(|i| {
                let a = p.alpha[i];
                let hi = f.pow_u(a, n as u64 - 1);
                f.mul(u[i], f.add(hi, f.mul(p.lambda, f.mul(hi, a))))
            }));
            let delta = f.div(num, den).expect("nonzero");
            h.set(n - k - 1, n, w_last);
            (w, w_last, n - k, delta)
        }
    };
    for (i, &wi) in w.iter().enumerate() {
        let mut acc = wi;
        for r in 0..rows {
            h.set(r, i, acc);
            acc = f.mul(acc, p.alpha[i]);
        }
    }
    h.set(extra_row, n, f.mul(extra, w_last));
    Ok(DualParity { h, closed_form: true })
}

impl RothLempelParams {
    pub fn n(&self) -> usize {
        self.a.len() + 2
    }

    pub fn validate(&self, field: &FieldSpec) -> Result<(), FamilyError> {
        let (n, k, q) = (self.n(), self.k, field.q() as usize);
        if k < 3 || k + 3 > n || n > q + 2 {
            return Err(FamilyError::Bounds(format!("need k >= 3 and k+3 <= n <= q+2, got n={n} k={k} q={q}")));
        }
        check_elems(field, &self.a)?;
        check_elems(field, &[self.delta])?;
        check_distinct(&self.a)
    }
}

/// Vandermonde columns at a, then e_k, then (0, …, 0, 1, δ).
pub fn roth_lempel_generator(field: &Arc<FieldSpec>, p: &RothLempelParams) -> Result<LinearCode, FamilyError> {
    p.validate(field)?;
    let k = p.k;
    let mut cols: Vec<Vec<Fq>> = p.a.iter().map(|&a| powers(field, a, k)).collect();
    let mut e = vec![Fq::ZERO; k];
    e[k - 1] = Fq::ONE;
    cols.push(e);
    let mut last = vec![Fq::ZERO; k];
    last[k - 2] = Fq::ONE;
    last[k - 1] = p.delta;
    cols.push(last);
    build(field, k, &cols)
}

impl ColTwistedParams {
    pub fn n(&self) -> usize {
        self.a.len() + 1 + usize::from(self.extended)
    }

    pub fn validate(&self, field: &FieldSpec) -> Result<(), FamilyError> {
        check_elems(field, &self.a)?;
        check_elems(field, &[self.b, self.c, self.lambda])?;
        let mut all = self.a.clone();
        all.push(self.b);
        all.push(self.c);
        check_distinct(&all)?;
        if self.k == 0 || self.k > self.n() {
            return Err(FamilyError::Bounds(format!("need 1 <= k <= n, got k={} n={}", self.k, self.n())));
        }
        Ok(())
    }
}

/// Vandermonde columns at a and the twisted column b^i − λ c^i, followed
/// by e_k when extended.
pub fn col_twisted_generator(field: &Arc<FieldSpec>, p: &ColTwistedParams) -> Result<LinearCode, FamilyError> {
    p.validate(field)?;
    let k = p.k;
    let mut cols: Vec<Vec<Fq>> = p.a.iter().map(|&a| powers(field, a, k)).collect();
    let pb = powers(field, p.b, k);
    let pc = powers(field, p.c, k);
    cols.push((0..k).map(|i| field.sub(pb[i], field.mul(p.lambda, pc[i]))).collect());
    if p.extended {
        let mut e = vec![Fq::ZERO; k];
        e[k - 1] = Fq::ONE;
        cols.push(e);
    }
    build(field, k, &cols)
}

/// P(x) = ∏(x − α_j) and its quotients. Nonzero points use the
/// coefficient recurrence, a zero point uses division by x.
pub fn sigma_coeffs(field: &FieldSpec, alpha: &[Fq]) -> Result<PolyCoeffs, FamilyError> {
    check_elems(field, alpha)?;
    check_distinct(alpha)?;
    let k = alpha.len();
    let p = poly_from_roots(field, alpha);
    let mut quotients = Vec::with_capacity(k);
    for &ah in alpha {
        let mut s = vec![Fq::ZERO; k];
        if k > 0 {
            s[k - 1] = Fq::ONE;
        }
        if ah.is_zero() {
            s.copy_from_slice(&p[1..]);
        } else {
            let d = field.neg(ah);
            let mut prev = Fq::ZERO;
            for (j, slot) in s.iter_mut().enumerate().take(k.saturating_sub(1)) {
                prev = field.div(field.sub(p[j], prev), d).expect("nonzero point");
                *slot = prev;
            }
        }
        debug_assert_eq!(mul_linear(field, &s, ah), p);
        quotients.push(s);
    }
    Ok(PolyCoeffs { p, quotients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{random_elem, random_nonzero, GrsSpec};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::with_order(q).unwrap())
    }

    fn fq(v: &[u32]) -> Vec<Fq> {
        v.iter().map(|&e| Fq::from_enc(e)).collect()
    }

    fn distinct<R: Rng>(f: &FieldSpec, n: usize, rng: &mut R) -> Vec<Fq> {
        let mut all: Vec<Fq> = f.elements().collect();
        all.shuffle(rng);
        all.truncate(n);
        all
    }

    fn nonzero<R: Rng>(f: &FieldSpec, n: usize, rng: &mut R) -> Vec<Fq> {
        (0..n).map(|_| random_nonzero(f, rng)).collect()
    }

    #[test]
    fn eleven_example_matrix() {
        let f = gf(11);
        let p = MgrsParams { alpha: fq(&[2, 4, 8, 5, 10, 1, 0]), v: vec![Fq::ONE; 8], eta: Fq::from_enc(10), t: 2, k: 3 };
        let g = mgrs_generator(&f, &p).unwrap();
        assert_eq!(
            g.generator().to_encodings(),
            vec![
                vec![1, 1, 1, 1, 1, 1, 1, 1],
                vec![2, 4, 8, 5, 10, 1, 0, 0],
                vec![4, 5, 9, 3, 1, 1, 0, 10]
            ]
        );
        assert!(mgrs_is_mds(&f, &p).unwrap());
    }

    #[test]
    fn gf8_example_matrix() {
        let f = gf(8);
        let w = f.primitive();
        let alpha = vec![f.pow_u(w, 5), f.pow_u(w, 3), f.pow_u(w, 2), w, Fq::ZERO, Fq::ONE];
        let p = MgrsParams { alpha, v: vec![Fq::ONE; 7], eta: Fq::ONE, t: 1, k: 4 };
        let g = mgrs_generator(&f, &p).unwrap();
        // w^5 = 7, w^3 = 3, w^2 = 4, w = 2; powers of w^5: w^10 = w^3, w^15 = w
        assert_eq!(
            g.generator().to_encodings(),
            vec![
                vec![1, 1, 1, 1, 1, 1, 1],
                vec![7, 3, 4, 2, 0, 1, 1],
                vec![3, 5, 6, 4, 0, 1, 0],
                vec![2, 4, 5, 3, 0, 1, 0]
            ]
        );
        assert!(mgrs_is_mds(&f, &p).unwrap());
    }

    #[test]
    fn mgrs_with_zero_eta_is_grs() {
        let f = gf(13);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..30 {
            let alpha = distinct(&f, 8, &mut rng).into_iter().filter(|a| !a.is_zero()).take(7).collect::<Vec<_>>();
            let v = nonzero(&f, 8, &mut rng);
            let p = MgrsParams { alpha: alpha.clone(), v: v.clone(), eta: Fq::ZERO, t: 1, k: 4 };
            let mut pts = alpha;
            pts.push(Fq::ZERO);
            let grs = GrsSpec::finite(&pts, &v, 4).unwrap().generator(&f).unwrap();
            assert!(mgrs_generator(&f, &p).unwrap().code_eq(&grs).unwrap());
        }
    }

    #[test]
    fn mgrs_rejects_bad_params() {
        let f = gf(7);
        let base = MgrsParams { alpha: fq(&[1, 2, 3]), v: vec![Fq::ONE; 4], eta: Fq::ONE, t: 1, k: 3 };
        assert!(mgrs_generator(&f, &base).is_ok());
        let bad_t = MgrsParams { t: 3, ..base.clone() };
        assert_eq!(mgrs_generator(&f, &bad_t), Err(FamilyError::TwistOutOfRange { t: 3, k: 3 }));
        let zero_t = MgrsParams { t: 0, ..base.clone() };
        assert!(mgrs_generator(&f, &zero_t).is_err());
        let rep = MgrsParams { alpha: fq(&[1, 1, 3]), ..base.clone() };
        assert_eq!(mgrs_generator(&f, &rep), Err(FamilyError::RepeatedPoint));
        let zv = MgrsParams { v: fq(&[1, 0, 1, 1]), ..base.clone() };
        assert_eq!(mgrs_generator(&f, &zv), Err(FamilyError::ZeroMultiplier));
        let short = MgrsParams { v: fq(&[1, 1]), ..base };
        assert!(matches!(mgrs_generator(&f, &short), Err(FamilyError::LengthMismatch { .. })));
    }

    #[test]
    fn emgrs_small_examples() {
        let f3 = gf(3);
        let p = EmgrsParams {
            mgrs: MgrsParams { alpha: fq(&[1]), v: vec![Fq::ONE; 2], eta: Fq::ZERO, t: 1, k: 2 },
            v_inf: Fq::ONE,
        };
        assert_eq!(emgrs_generator(&f3, &p).unwrap().generator().to_encodings(), vec![vec![1, 1, 0], vec![1, 0, 1]]);

        let f5 = gf(5);
        let p = EmgrsParams {
            mgrs: MgrsParams { alpha: fq(&[1, 2]), v: vec![Fq::ONE; 3], eta: Fq::ONE, t: 1, k: 3 },
            v_inf: Fq::ONE,
        };
        let g = emgrs_generator(&f5, &p).unwrap();
        assert_eq!(g.generator().to_encodings(), vec![vec![1, 1, 1, 0], vec![1, 2, 1, 0], vec![1, 4, 0, 1]]);
        let m = mgrs_generator(&f5, &p.mgrs).unwrap();
        assert!(g.puncture(&[3]).unwrap().code_eq(&m).unwrap());
    }

    #[test]
    fn threshold_eta_breaks_mds() {
        // η = −π_0/π_t for a chosen subset makes that minor vanish
        let f = gf(13);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let k = rng.gen_range(3..6);
            let t = rng.gen_range(1..k);
            let alpha = distinct(&f, 8, &mut rng);
            let subset: Vec<Fq> = alpha[..k - 1].to_vec();
            let pi = poly_from_roots(&f, &subset);
            if pi[t].is_zero() {
                continue;
            }
            let eta = f.div(f.neg(pi[0]), pi[t]).unwrap();
            let p = MgrsParams { alpha, v: vec![Fq::ONE; 9], eta, t, k };
            assert!(!mgrs_is_mds(&f, &p).unwrap());
            assert!(!mgrs_generator(&f, &p).unwrap().is_mds());
        }
    }

    #[test]
    fn emgrs_reciprocal_sum_hits() {
        // 1/η = 1/α_1 + 1/α_2 with k = 3, t = 1
        let f = gf(11);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut hits = 0;
        for _ in 0..40 {
            let alpha: Vec<Fq> = distinct(&f, 7, &mut rng).into_iter().filter(|a| !a.is_zero()).take(5).collect();
            let s = f.add(f.inv(alpha[0]).unwrap(), f.inv(alpha[1]).unwrap());
            if s.is_zero() {
                continue;
            }
            hits += 1;
            let eta = f.inv(s).unwrap();
            let p = EmgrsParams { mgrs: MgrsParams { alpha, v: vec![Fq::ONE; 6], eta, t: 1, k: 3 }, v_inf: Fq::ONE };
            assert!(!emgrs_is_mds(&f, &p).unwrap());
            assert!(!emgrs_generator(&f, &p).unwrap().is_mds());
        }
        assert!(hits > 10);
    }

    #[test]
    fn emgrs_k2_always_mds_off_the_points() {
        let f = gf(7);
        let alpha = fq(&[1, 2, 3]);
        for eta in f.elements() {
            let p = EmgrsParams { mgrs: MgrsParams { alpha: alpha.clone(), v: vec![Fq::ONE; 4], eta, t: 1, k: 2 }, v_inf: Fq::ONE };
            let off = !eta.is_zero() && !alpha.contains(&eta);
            if off {
                assert!(emgrs_is_mds(&f, &p).unwrap());
            }
            assert_eq!(emgrs_is_mds(&f, &p).unwrap(), emgrs_generator(&f, &p).unwrap().is_mds());
        }
    }

    fn random_mgrs<R: Rng>(f: &FieldSpec, rng: &mut R, max_n: usize) -> MgrsParams {
        let n = rng.gen_range(3..=max_n.min(f.q() as usize + 1));
        let k = rng.gen_range(2..=n.min(6).max(2)).min(n);
        let t = rng.gen_range(1..k);
        MgrsParams { alpha: distinct(f, n - 1, rng), v: nonzero(f, n, rng), eta: random_elem(f, rng), t, k }
    }

    #[test]
    fn predicates_agree_with_minors_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let q = *[5u32, 7, 8, 9, 11, 13].choose(&mut rng).unwrap();
            let f = gf(q);
            let p = random_mgrs(&f, &mut rng, 10);
            let code = mgrs_generator(&f, &p);
            let Ok(code) = code else { continue };
            assert_eq!(mgrs_is_mds(&f, &p).unwrap(), code.is_mds(), "{p:?}");
            let e = EmgrsParams { mgrs: p, v_inf: random_nonzero(&f, &mut rng) };
            let code = emgrs_generator(&f, &e).unwrap();
            assert_eq!(emgrs_is_mds(&f, &e).unwrap(), code.is_mds(), "{e:?}");
        }
    }

    #[test]
    fn mgrs_is_mds_or_almost_mds() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..60 {
            let q = *[5u32, 7, 8, 9].choose(&mut rng).unwrap();
            let f = gf(q);
            let p = random_mgrs(&f, &mut rng, 8);
            let Ok(code) = mgrs_generator(&f, &p) else { continue };
            let d = code.min_distance(crate::codes::MIN_DISTANCE_BUDGET).unwrap();
            let n = p.n();
            assert!(d == n - p.k || d == n - p.k + 1, "{p:?} d={d}");
        }
    }

    #[test]
    fn c_and_d_codes() {
        let f5 = gf(5);
        assert!(matches!(c_code_generator(&f5, &fq(&[0, 1, 2, 3]), 1, 2), Err(FamilyError::TwistOutOfRange { .. })));
        let c = c_code_generator(&f5, &fq(&[0, 1, 2, 3]), 1, 3).unwrap();
        assert_eq!(c.generator().to_encodings(), vec![vec![1, 1, 1, 1], vec![0, 1, 4, 4], vec![0, 1, 3, 2]]);
        assert!(d_code_generator(&f5, &fq(&[0, 1, 2]), 2, 3).is_err());

        let f = gf(11);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            // t < k − 2 keeps the shortened code inside the C-code range
            let k = rng.gen_range(4..7);
            let t = rng.gen_range(1..k - 2);
            let alpha = distinct(&f, 8, &mut rng);
            let d = d_code_generator(&f, &alpha, t, k).unwrap();
            let c = c_code_generator(&f, &alpha, t, k - 1).unwrap();
            assert!(d.shorten(&[8]).unwrap().code_eq(&c).unwrap());
        }
    }

    #[test]
    fn twisted_small_examples() {
        let f2 = gf(2);
        let p = TgrsParams { alpha: fq(&[1]), v: fq(&[1, 1]), lambda: Fq::ONE, k: 1, hook: Hook::Zero };
        assert_eq!(tgrs_generator(&f2, &p).unwrap().generator().to_encodings(), vec![vec![0, 1]]);
        let f5 = gf(5);
        let p = TgrsParams { alpha: fq(&[1, 2]), v: vec![Fq::ONE; 3], lambda: Fq::ONE, k: 2, hook: Hook::TopDegree };
        assert_eq!(tgrs_generator(&f5, &p).unwrap().generator().to_encodings(), vec![vec![1, 1, 0], vec![2, 1, 1]]);
        let zl = TgrsParams { lambda: Fq::ZERO, ..p };
        assert_eq!(tgrs_generator(&f5, &zl), Err(FamilyError::ZeroLambda));
    }

    #[test]
    fn twisted_duals() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for hook in [Hook::Zero, Hook::TopDegree] {
            let mut done = 0;
            while done < 60 {
                let q = *[7u32, 8, 9, 11, 13, 16].choose(&mut rng).unwrap();
                let f = gf(q);
                let n = rng.gen_range(3..=(q as usize - 1).min(10));
                let k = rng.gen_range(1..n);
                let mut alpha = distinct(&f, n + 1, &mut rng);
                if hook == Hook::Zero {
                    alpha.retain(|a| !a.is_zero());
                }
                alpha.truncate(n);
                let p = TgrsParams { alpha, v: nonzero(&f, n + 1, &mut rng), lambda: random_nonzero(&f, &mut rng), k, hook };
                let Ok(g) = tgrs_generator(&f, &p) else { continue };
                let d = tgrs_dual_parity(&f, &p).unwrap();
                assert!(d.closed_form);
                assert_eq!(d.h.rows(), n - k + 1);
                assert!(g.generator().matmul(&d.h.transpose()).unwrap().is_zero());
                assert!(LinearCode::new(d.h).unwrap().code_eq(&g.dual().unwrap()).unwrap());
                done += 1;
            }
        }
    }

    #[test]
    fn zero_hook_parity_needs_nonzero_points() {
        let f = gf(7);
        let p = TgrsParams { alpha: fq(&[0, 1, 2, 3]), v: vec![Fq::ONE; 5], lambda: Fq::ONE, k: 2, hook: Hook::Zero };
        assert_eq!(tgrs_dual_parity(&f, &p), Err(FamilyError::ZeroPoint));
    }

    #[test]
    fn roth_lempel_shape_and_bounds() {
        let f = gf(8);
        let p = RothLempelParams { a: f.elements().collect(), delta: Fq::ZERO, k: 3 };
        let g = roth_lempel_generator(&f, &p).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.generator().column(8), fq(&[0, 0, 1]));
        assert_eq!(g.generator().column(9), fq(&[0, 1, 0]));
        let small = RothLempelParams { a: fq(&[1, 2, 3]), delta: Fq::ZERO, k: 3 };
        assert!(matches!(roth_lempel_generator(&f, &small), Err(FamilyError::Bounds(_))));
    }

    #[test]
    fn roth_lempel_is_mgrs_when_points_are_nonzero() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..40 {
            let q = *[7u32, 8, 9, 11, 13].choose(&mut rng).unwrap();
            let f = gf(q);
            let k = 3 + rng.gen_range(0..2);
            let n = rng.gen_range(k + 3..=q as usize + 1);
            let a: Vec<Fq> = distinct(&f, q as usize, &mut rng).into_iter().filter(|x| !x.is_zero()).take(n - 2).collect();
            let delta = random_nonzero(&f, &mut rng);
            let rl = roth_lempel_generator(&f, &RothLempelParams { a: a.clone(), delta, k }).unwrap();
            let mut alpha: Vec<Fq> = a.iter().map(|&x| f.inv(x).unwrap()).collect();
            alpha.push(Fq::ZERO);
            let mut v: Vec<Fq> = a.iter().map(|&x| f.pow_u(x, k as u64 - 1)).collect();
            v.push(Fq::ONE);
            v.push(delta);
            let m = MgrsParams { alpha, v, eta: f.inv(delta).unwrap(), t: 1, k };
            assert!(rl.code_eq(&mgrs_generator(&f, &m).unwrap()).unwrap());
        }
    }

    #[test]
    fn column_twisted_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..40 {
            let q = *[7u32, 8, 9, 11, 13, 16].choose(&mut rng).unwrap();
            let f = gf(q);
            let n = rng.gen_range(4..=(q as usize - 1).min(10));
            let k = rng.gen_range(2..n);
            let pts = distinct(&f, n + 1, &mut rng);
            let (a, b, c) = (pts[..n - 1].to_vec(), pts[n - 1], pts[n]);

            // λ = 0 gives GRS on (a, b)
            let plain = ColTwistedParams { a: a.clone(), b, c, lambda: Fq::ZERO, k, extended: false };
            let mut ab = a.clone();
            ab.push(b);
            let grs = GrsSpec::finite(&ab, &vec![Fq::ONE; n], k).unwrap().generator(&f).unwrap();
            assert!(col_twisted_generator(&f, &plain).unwrap().code_eq(&grs).unwrap());

            // λ ≠ 0 gives MGRS with t = k−1
            let lambda = random_nonzero(&f, &mut rng);
            let twisted = ColTwistedParams { a: a.clone(), b, c, lambda, k, extended: false };
            let Ok(ct) = col_twisted_generator(&f, &twisted) else { continue };
            let cb = f.sub(c, b);
            let cb_inv = f.inv(cb).unwrap();
            let alpha: Vec<Fq> = a.iter().map(|&x| f.sub(f.inv(f.sub(x, b)).unwrap(), cb_inv)).collect();
            let mut v: Vec<Fq> = a.iter().map(|&x| f.pow_u(f.sub(x, b), k as u64 - 1)).collect();
            let scale = f.mul(lambda, f.pow_u(cb, k as u64 - 1));
            v.push(f.neg(scale));
            let eta = f.neg(f.inv(scale).unwrap());
            if k >= 2 {
                let m = MgrsParams { alpha: alpha.clone(), v: v.clone(), eta, t: k - 1, k };
                assert!(ct.code_eq(&mgrs_generator(&f, &m).unwrap()).unwrap());
            }

            // the extended version is the (n+1)-point MGRS up to swapping the last two columns
            let ext = ColTwistedParams { extended: true, ..twisted };
            let ect = col_twisted_generator(&f, &ext).unwrap();
            let mut order: Vec<usize> = (0..n - 1).collect();
            order.push(n);
            order.push(n - 1);
            let swapped = LinearCode::new(ect.generator().select_columns(&order).unwrap()).unwrap();
            let mut alpha2 = alpha;
            alpha2.push(f.neg(cb_inv));
            let last = v.pop().unwrap();
            v.push(Fq::ONE);
            v.push(last);
            let m = MgrsParams { alpha: alpha2, v, eta, t: k - 1, k };
            assert!(swapped.code_eq(&mgrs_generator(&f, &m).unwrap()).unwrap());
        }
    }

    #[test]
    fn sigma_small_example() {
        let f = gf(5);
        let s = sigma_coeffs(&f, &fq(&[1, 2])).unwrap();
        assert_eq!(s.p, fq(&[2, 2, 1]));
        assert_eq!(s.quotients, vec![fq(&[3, 1]), fq(&[4, 1])]);
        assert!(sigma_coeffs(&f, &fq(&[1, 1])).is_err());
    }

    fn long_division(f: &FieldSpec, num: &[Fq], root: Fq) -> Vec<Fq> {
        // divide by (x − root), highest degree first
        let d = num.len() - 1;
        let mut out = vec![Fq::ZERO; d];
        let mut carry = Fq::ZERO;
        for i in (1..=d).rev() {
            carry = f.add(num[i], f.mul(carry, root));
            out[i - 1] = carry;
        }
        out
    }

    #[test]
    fn sigma_recurrence_matches_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let q = *[7u32, 8, 9, 11, 13, 16, 25].choose(&mut rng).unwrap();
            let f = gf(q);
            let k = rng.gen_range(1..8);
            let alpha = distinct(&f, k, &mut rng);
            let s = sigma_coeffs(&f, &alpha).unwrap();
            for (h, &ah) in alpha.iter().enumerate() {
                assert_eq!(s.quotients[h], long_division(&f, &s.p, ah));
                assert_eq!(s.quotients[h][k - 1], Fq::ONE);
                if !ah.is_zero() {
                    // closed form: σ_{h,j} = −(1/α_h) Σ_{i≤j} σ_{P,i} / α_h^{j−i}
                    for j in 0..k - 1 {
                        let inv = f.inv(ah).unwrap();
                        let sum = f.sum((0..=j).map(|i| f.mul(s.p[i], f.pow_u(inv, (j - i) as u64))));
                        assert_eq!(s.quotients[h][j], f.neg(f.mul(inv, sum)));
                    }
                }
            }
        }
    }
}
