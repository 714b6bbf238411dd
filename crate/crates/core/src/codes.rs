//! Linear codes given by a generator matrix, and (extended) GRS codes.
//!
//! Coordinates are 0-based throughout the library.

use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::gf::{FieldError, FieldSpec, Fq, ProjElem};
use crate::linalg::{LinalgError, Matrix};

/// Default cap on the number of messages `min_distance` may enumerate.
pub const MIN_DISTANCE_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("generator has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("the resulting code is the zero code")]
    EmptyCode,
    #[error("position {pos} is out of range for length {n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("position {0} listed twice")]
    DuplicatePosition(usize),
    #[error("enumerating {needed} messages exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("codes live over different fields")]
    FieldMismatch,
    #[error("evaluation points are not pairwise distinct")]
    RepeatedPoint,
    #[error("more than one evaluation point is infinite")]
    SeveralInfinities,
    #[error("column multiplier {0} is zero")]
    ZeroMultiplier(usize),
    #[error("{alpha} points but {v} multipliers")]
    LengthMismatch { alpha: usize, v: usize },
    #[error("dimension {k} is invalid for length {n}")]
    BadDimension { k: usize, n: usize },
    #[error("operation needs finite evaluation points")]
    InfinitePoint,
    #[error("cannot pick {n} distinct points in a field of size {q}")]
    TooLong { n: usize, q: u32 },
    #[error("element outside the field")]
    ForeignElement,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// An [n, k] linear code over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
}

impl LinearCode {
    /// Wraps a full-rank generator.
    pub fn new(gen: Matrix) -> Result<LinearCode, CodeError> {
        let rank = gen.rank();
        if rank != gen.rows() {
            return Err(CodeError::RankDeficient { rank, rows: gen.rows() });
        }
        Ok(LinearCode { gen })
    }

    /// The code spanned by the rows of `m`, which may be dependent.
    pub fn from_spanning(m: &Matrix) -> Result<LinearCode, CodeError> {
        let e = m.rref();
        let rows: Vec<usize> = (0..e.pivots.len()).collect();
        if rows.is_empty() {
            return Err(CodeError::EmptyCode);
        }
        Ok(LinearCode { gen: e.matrix.select_rows(&rows)? })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn into_generator(self) -> Matrix {
        self.gen
    }

    /// The reduced echelon generator, a canonical form of the code.
    pub fn canonical(&self) -> Matrix {
        self.gen.rref().matrix
    }

    /// The dual code. For k = n the result would be the zero code and an
    /// error is returned.
    pub fn dual(&self) -> Result<LinearCode, CodeError> {
        let h = self.gen.right_kernel();
        if h.rows() == 0 {
            return Err(CodeError::EmptyCode);
        }
        Ok(LinearCode { gen: h })
    }

    fn check_positions(&self, positions: &[usize]) -> Result<(), CodeError> {
        let n = self.n();
        for (i, &p) in positions.iter().enumerate() {
            if p >= n {
                return Err(CodeError::PositionOutOfRange { pos: p, n });
            }
            if positions[..i].contains(&p) {
                return Err(CodeError::DuplicatePosition(p));
            }
        }
        Ok(())
    }

    fn kept(&self, positions: &[usize]) -> Vec<usize> {
        (0..self.n()).filter(|j| !positions.contains(j)).collect()
    }

    /// Deletes the given coordinates.
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode, CodeError> {
        self.check_positions(positions)?;
        let m = self.gen.select_columns(&self.kept(positions))?;
        LinearCode::from_spanning(&m)
    }

    /// Keeps the codewords vanishing on the given coordinates, then deletes
    /// those coordinates.
    pub fn shorten(&self, positions: &[usize]) -> Result<LinearCode, CodeError> {
        self.check_positions(positions)?;
        if positions.is_empty() {
            return Ok(self.clone());
        }
        // messages x with x * G[:, positions] = 0
        let block = self.gen.select_columns(positions)?;
        let msgs = block.transpose().right_kernel();
        if msgs.rows() == 0 {
            return Err(CodeError::EmptyCode);
        }
        let words = msgs.matmul(&self.gen)?;
        LinearCode::from_spanning(&words.select_columns(&self.kept(positions))?)
    }

    /// Exact minimum distance by enumerating messages up to scalars.
    pub fn min_distance(&self, budget: u64) -> Result<usize, CodeError> {
        let q = self.field().q() as u128;
        let k = self.k() as u32;
        let needed = q.pow(k);
        if needed > budget as u128 {
            return Err(CodeError::BudgetExceeded { needed, budget });
        }
        let f = self.field().clone();
        let n = self.n();
        let k = self.k();
        let mut best = n;
        // messages whose first nonzero entry is a 1 at index `lead`
        for lead in 0..k {
            let mut word: Vec<Fq> = self.gen.row(lead).to_vec();
            let mut digits = vec![0u32; k];
            loop {
                best = best.min(word.iter().filter(|a| !a.is_zero()).count());
                let mut wrapped = true;
                for i in (lead + 1..k).rev() {
                    let old = digits[i];
                    let next = (old + 1) % f.q();
                    digits[i] = next;
                    let delta = f.sub(Fq::from_enc(next), Fq::from_enc(old));
                    for (j, x) in word.iter_mut().enumerate() {
                        *x = f.add(*x, f.mul(delta, self.gen.get(i, j)));
                    }
                    if next != 0 {
                        wrapped = false;
                        break;
                    }
                }
                if wrapped {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// True iff every k x k minor of the generator is nonzero.
    pub fn is_mds(&self) -> bool {
        let k = self.k();
        let rows: Vec<usize> = (0..k).collect();
        (0..self.n())
            .combinations(k)
            .all(|cols| !self.gen.minor(&rows, &cols).expect("indices in range").is_zero())
    }

    /// Equality of row spaces.
    pub fn code_eq(&self, other: &LinearCode) -> Result<bool, CodeError> {
        if !self.gen.same_field(&other.gen) {
            return Err(CodeError::FieldMismatch);
        }
        if self.n() != other.n() || self.k() != other.k() {
            return Ok(false);
        }
        let (a, ok_a) = self.gen.echelonize();
        let (b, ok_b) = other.gen.echelonize();
        if ok_a && ok_b {
            return Ok(a == b);
        }
        Ok(self.gen.vstack(&other.gen)?.rank() == self.k())
    }
}

/// Evaluation points and column multipliers of an (extended) GRS code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrsSpec {
    alpha: Vec<ProjElem>,
    v: Vec<Fq>,
    k: usize,
}

impl GrsSpec {
    pub fn new(alpha: Vec<ProjElem>, v: Vec<Fq>, k: usize) -> Result<GrsSpec, CodeError> {
        if alpha.len() != v.len() {
            return Err(CodeError::LengthMismatch { alpha: alpha.len(), v: v.len() });
        }
        let n = alpha.len();
        if k == 0 || k > n {
            return Err(CodeError::BadDimension { k, n });
        }
        if alpha.iter().filter(|a| a.is_infinity()).count() > 1 {
            return Err(CodeError::SeveralInfinities);
        }
        if !alpha.iter().all_unique() {
            return Err(CodeError::RepeatedPoint);
        }
        if let Some(i) = v.iter().position(|x| x.is_zero()) {
            return Err(CodeError::ZeroMultiplier(i));
        }
        Ok(GrsSpec { alpha, v, k })
    }

    /// A spec with finite points only.
    pub fn finite(alpha: &[Fq], v: &[Fq], k: usize) -> Result<GrsSpec, CodeError> {
        GrsSpec::new(alpha.iter().map(|&a| ProjElem::Finite(a)).collect(), v.to_vec(), k)
    }

    pub fn alpha(&self) -> &[ProjElem] {
        &self.alpha
    }

    pub fn v(&self) -> &[Fq] {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_extended(&self) -> bool {
        self.alpha.iter().any(|a| a.is_infinity())
    }

    /// Finite points, or an error if one is infinite.
    pub fn finite_alpha(&self) -> Result<Vec<Fq>, CodeError> {
        self.alpha.iter().map(|a| a.finite().ok_or(CodeError::InfinitePoint)).collect()
    }

    fn check_field(&self, field: &FieldSpec) -> Result<(), CodeError> {
        let ok = self.alpha.iter().all(|&a| field.contains_proj(a)) && self.v.iter().all(|&x| field.contains(x));
        if ok {
            Ok(())
        } else {
            Err(CodeError::ForeignElement)
        }
    }

    /// The k x n generator: row i holds v_j * α_j^i, and an infinite point
    /// contributes v_j in the last row only.
    pub fn generator_matrix(&self, field: &Arc<FieldSpec>) -> Result<Matrix, CodeError> {
        self.check_field(field)?;
        let columns: Vec<Vec<Fq>> = self
            .alpha
            .iter()
            .zip(&self.v)
            .map(|(&a, &v)| evaluation_column(field, a, v, self.k))
            .collect();
        Ok(Matrix::from_columns(field.clone(), self.k, &columns)?)
    }

    pub fn generator(&self, field: &Arc<FieldSpec>) -> Result<LinearCode, CodeError> {
        LinearCode::new(self.generator_matrix(field)?)
    }

    /// Multipliers u with GRS(α, u, n−k) equal to the dual code.
    pub fn dual_multipliers(&self, field: &FieldSpec) -> Result<Vec<Fq>, CodeError> {
        self.check_field(field)?;
        let alpha = self.finite_alpha()?;
        let mut u = Vec::with_capacity(alpha.len());
        for (i, &ai) in alpha.iter().enumerate() {
            let prod = field.product(alpha.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &aj)| field.sub(ai, aj)));
            u.push(field.inv(field.mul(self.v[i], prod))?);
        }
        Ok(u)
    }

    /// The dual code as a spec (finite points only, k < n).
    pub fn dual_spec(&self, field: &FieldSpec) -> Result<GrsSpec, CodeError> {
        let n = self.n();
        if self.k >= n {
            return Err(CodeError::BadDimension { k: n - self.k, n });
        }
        GrsSpec::new(self.alpha.clone(), self.dual_multipliers(field)?, n - self.k)
    }

    /// Random distinct points and nonzero multipliers. With `infinity` one
    /// point, at a random position, is ∞.
    pub fn random<R: Rng + ?Sized>(
        field: &FieldSpec,
        n: usize,
        k: usize,
        infinity: bool,
        rng: &mut R,
    ) -> Result<GrsSpec, CodeError> {
        let alpha = random_points(field, n, infinity, rng)?;
        let v = (0..n).map(|_| random_nonzero(field, rng)).collect();
        GrsSpec::new(alpha, v, k)
    }
}

/// The column `v * (1, a, ..., a^{k-1})`, or `v * e_k` for a = ∞.
pub fn evaluation_column(field: &FieldSpec, a: ProjElem, v: Fq, k: usize) -> Vec<Fq> {
    match a {
        ProjElem::Infinity => {
            let mut col = vec![Fq::ZERO; k];
            if k > 0 {
                col[k - 1] = v;
            }
            col
        }
        ProjElem::Finite(x) => {
            let mut col = Vec::with_capacity(k);
            let mut acc = v;
            for _ in 0..k {
                col.push(acc);
                acc = field.mul(acc, x);
            }
            col
        }
    }
}

pub fn grs_generator(field: &Arc<FieldSpec>, spec: &GrsSpec) -> Result<LinearCode, CodeError> {
    spec.generator(field)
}

pub fn grs_dual_multipliers(field: &FieldSpec, spec: &GrsSpec) -> Result<Vec<Fq>, CodeError> {
    spec.dual_multipliers(field)
}

pub fn random_nonzero<R: Rng + ?Sized>(field: &FieldSpec, rng: &mut R) -> Fq {
    Fq::from_enc(rng.gen_range(1..field.q()))
}

pub fn random_elem<R: Rng + ?Sized>(field: &FieldSpec, rng: &mut R) -> Fq {
    Fq::from_enc(rng.gen_range(0..field.q()))
}

/// `n` distinct random points of the projective line.
pub fn random_points<R: Rng + ?Sized>(
    field: &FieldSpec,
    n: usize,
    infinity: bool,
    rng: &mut R,
) -> Result<Vec<ProjElem>, CodeError> {
    let finite = if infinity { n.saturating_sub(1) } else { n };
    if finite > field.q() as usize {
        return Err(CodeError::TooLong { n, q: field.q() });
    }
    let mut pool: Vec<Fq> = field.elements().collect();
    pool.shuffle(rng);
    let mut pts: Vec<ProjElem> = pool[..finite].iter().map(|&a| ProjElem::Finite(a)).collect();
    if infinity && n > 0 {
        let at = rng.gen_range(0..=finite);
        pts.insert(at, ProjElem::Infinity);
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::with_order(q).unwrap())
    }

    fn fq(v: &[u32]) -> Vec<Fq> {
        v.iter().map(|&e| Fq::from_enc(e)).collect()
    }

    #[test]
    fn small_grs_generators() {
        let f = gf(3);
        let spec = GrsSpec::finite(&fq(&[0, 1, 2]), &fq(&[1, 1, 1]), 2).unwrap();
        assert_eq!(spec.generator(&f).unwrap().generator().to_encodings(), vec![vec![1, 1, 1], vec![0, 1, 2]]);
        let ext = GrsSpec::new(
            vec![ProjElem::Finite(Fq::ZERO), ProjElem::Finite(Fq::ONE), ProjElem::Infinity],
            fq(&[1, 1, 1]),
            2,
        )
        .unwrap();
        assert!(ext.is_extended());
        assert_eq!(ext.generator(&f).unwrap().generator().to_encodings(), vec![vec![1, 1, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn eleven_example_leading_columns() {
        let f = gf(11);
        let spec = GrsSpec::finite(&fq(&[2, 4, 8, 5, 10, 1, 0]), &[Fq::ONE; 7], 3).unwrap();
        let g = spec.generator_matrix(&f).unwrap();
        assert_eq!(
            g.to_encodings(),
            vec![vec![1, 1, 1, 1, 1, 1, 1], vec![2, 4, 8, 5, 10, 1, 0], vec![4, 5, 9, 3, 1, 1, 0]]
        );
    }

    #[test]
    fn spec_validation() {
        assert_eq!(GrsSpec::finite(&fq(&[1, 1]), &fq(&[1, 1]), 1), Err(CodeError::RepeatedPoint));
        assert_eq!(GrsSpec::finite(&fq(&[1, 2]), &fq(&[1, 0]), 1), Err(CodeError::ZeroMultiplier(1)));
        assert!(matches!(GrsSpec::finite(&fq(&[1, 2]), &fq(&[1]), 1), Err(CodeError::LengthMismatch { .. })));
        assert!(matches!(GrsSpec::finite(&fq(&[1, 2]), &fq(&[1, 1]), 3), Err(CodeError::BadDimension { .. })));
        let two_inf = GrsSpec::new(vec![ProjElem::Infinity, ProjElem::Infinity], fq(&[1, 1]), 1);
        assert_eq!(two_inf, Err(CodeError::SeveralInfinities));
        let big = GrsSpec::finite(&fq(&[1, 9]), &fq(&[1, 1]), 1).unwrap();
        assert_eq!(big.generator(&gf(5)), Err(CodeError::ForeignElement));
    }

    #[test]
    fn dual_multipliers_small_cases() {
        let f3 = gf(3);
        let spec = GrsSpec::finite(&fq(&[0, 1]), &fq(&[1, 1]), 1).unwrap();
        assert_eq!(spec.dual_multipliers(&f3).unwrap(), fq(&[2, 1]));

        // brute force: u_i is the element whose product with prod_{j != i}(a_i - a_j) is 1
        let f5 = gf(5);
        let alpha = [0i64, 1, 2, 3];
        let mut expected = Vec::new();
        for (i, &ai) in alpha.iter().enumerate() {
            let prod = alpha.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &aj)| ai - aj).product::<i64>();
            let prod = prod.rem_euclid(5);
            let u = (1..5).find(|u| (u * prod) % 5 == 1).unwrap();
            expected.push(Fq::from_enc(u as u32));
        }
        assert_eq!(expected, fq(&[4, 3, 2, 1]));
        let spec = GrsSpec::finite(&fq(&[0, 1, 2, 3]), &[Fq::ONE; 4], 2).unwrap();
        assert_eq!(spec.dual_multipliers(&f5).unwrap(), expected);
        let ext = GrsSpec::new(vec![ProjElem::Infinity], fq(&[1]), 1).unwrap();
        assert_eq!(ext.dual_multipliers(&f5), Err(CodeError::InfinitePoint));
    }

    #[test]
    fn repetition_code() {
        let f = gf(7);
        for n in 1..6 {
            let g = Matrix::new(f.clone(), 1, n, vec![Fq::ONE; n]).unwrap();
            let c = LinearCode::new(g).unwrap();
            assert_eq!(c.min_distance(MIN_DISTANCE_BUDGET).unwrap(), n);
            if n > 1 {
                let d = c.dual().unwrap();
                assert_eq!(d.k(), n - 1);
                for i in 0..d.k() {
                    assert_eq!(f.sum(d.generator().row(i).iter().copied()), Fq::ZERO);
                }
            }
        }
    }

    #[test]
    fn rank_and_position_errors() {
        let f = gf(5);
        let g = Matrix::from_encodings(f.clone(), &[vec![1, 2, 3], vec![2, 4, 1]]).unwrap();
        assert!(matches!(LinearCode::new(g), Err(CodeError::RankDeficient { rank: 1, rows: 2 })));
        let c = LinearCode::new(Matrix::identity(f.clone(), 2)).unwrap();
        assert!(matches!(c.puncture(&[2]), Err(CodeError::PositionOutOfRange { .. })));
        assert!(matches!(c.puncture(&[0, 0]), Err(CodeError::DuplicatePosition(0))));
        assert_eq!(c.puncture(&[0, 1]), Err(CodeError::EmptyCode));
        assert_eq!(c.dual(), Err(CodeError::EmptyCode));
        let big = LinearCode::new(Matrix::identity(gf(16), 7)).unwrap();
        assert!(matches!(big.min_distance(MIN_DISTANCE_BUDGET), Err(CodeError::BudgetExceeded { .. })));
    }

    #[test]
    fn identical_columns_are_not_mds() {
        let f = gf(7);
        let g = Matrix::from_encodings(f, &[vec![1, 1, 0], vec![2, 2, 1]]).unwrap();
        assert!(!LinearCode::new(g).unwrap().is_mds());
    }

    #[test]
    fn scaled_columns_are_a_different_code() {
        let f = gf(5);
        let ones = LinearCode::new(Matrix::from_encodings(f.clone(), &[vec![1, 1, 1, 1]]).unwrap()).unwrap();
        let ramp = LinearCode::new(Matrix::from_encodings(f.clone(), &[vec![1, 2, 3, 4]]).unwrap()).unwrap();
        let scaled = LinearCode::new(Matrix::from_encodings(f, &[vec![3, 3, 3, 3]]).unwrap()).unwrap();
        assert!(!ones.code_eq(&ramp).unwrap());
        assert!(ones.code_eq(&scaled).unwrap());
        assert_eq!(ones.code_eq(&LinearCode::new(Matrix::from_encodings(gf(7), &[vec![1, 1, 1, 1]]).unwrap()).unwrap()), Err(CodeError::FieldMismatch));
    }

    #[test]
    fn affine_change_of_points_keeps_the_code() {
        let f = gf(11);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let spec = GrsSpec::random(&f, 7, 3, false, &mut rng).unwrap();
            let a = random_nonzero(&f, &mut rng);
            let b = random_elem(&f, &mut rng);
            let c = random_nonzero(&f, &mut rng);
            let alpha: Vec<Fq> = spec.finite_alpha().unwrap().iter().map(|&x| f.add(f.mul(a, x), b)).collect();
            let v: Vec<Fq> = spec.v().iter().map(|&x| f.mul(c, x)).collect();
            let moved = GrsSpec::finite(&alpha, &v, 3).unwrap();
            assert!(spec.generator(&f).unwrap().code_eq(&moved.generator(&f).unwrap()).unwrap());
        }
    }

    #[test]
    fn min_distance_matches_minors_exhaustively() {
        // every [n, k] code with a systematic generator over small fields
        for q in [5u32, 7, 8] {
            let f = gf(q);
            let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
            for k in 1..=3usize {
                for n in k + 1..=7 {
                    for _ in 0..6 {
                        let mut rows = Vec::new();
                        for i in 0..k {
                            let mut r = vec![0u32; n];
                            r[i] = 1;
                            for x in r.iter_mut().skip(k) {
                                *x = rng.gen_range(0..q);
                            }
                            rows.push(r);
                        }
                        let c = LinearCode::new(Matrix::from_encodings(f.clone(), &rows).unwrap()).unwrap();
                        let d = c.min_distance(MIN_DISTANCE_BUDGET).unwrap();
                        assert_eq!(c.is_mds(), d == n - k + 1, "{rows:?}");
                        assert!(d <= n - k + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn min_distance_by_brute_force_agrees() {
        let f = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let rows: Vec<Vec<u32>> = (0..3).map(|_| (0..6).map(|_| rng.gen_range(0..4)).collect()).collect();
            let g = Matrix::from_encodings(f.clone(), &rows).unwrap();
            let Ok(c) = LinearCode::new(g.clone()) else { continue };
            let mut best = usize::MAX;
            for m in 1..64u32 {
                let msg = Matrix::new(f.clone(), 1, 3, vec![Fq::from_enc(m % 4), Fq::from_enc(m / 4 % 4), Fq::from_enc(m / 16)]).unwrap();
                let w = msg.matmul(&g).unwrap();
                best = best.min(w.entries().iter().filter(|a| !a.is_zero()).count());
            }
            assert_eq!(c.min_distance(MIN_DISTANCE_BUDGET).unwrap(), best);
        }
    }

    fn arb_grs() -> impl Strategy<Value = (Arc<FieldSpec>, GrsSpec)> {
        (prop::sample::select(vec![5u32, 7, 8, 9, 11, 13, 16]), any::<u64>(), any::<bool>()).prop_flat_map(|(q, seed, inf)| {
            let maxn = (q as usize).min(10);
            (Just(q), Just(seed), Just(inf), 2..=maxn).prop_flat_map(|(q, seed, inf, n)| {
                (1..n).prop_map(move |k| {
                    let f = gf(q);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let spec = GrsSpec::random(&f, n, k, inf, &mut rng).unwrap();
                    (f, spec)
                })
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn grs_codes_are_mds((f, spec) in arb_grs()) {
            prop_assert!(spec.generator(&f).unwrap().is_mds());
        }

        #[test]
        fn dual_is_grs_with_dual_multipliers((f, spec) in arb_grs()) {
            prop_assume!(!spec.is_extended());
            let c = spec.generator(&f).unwrap();
            let d = spec.dual_spec(&f).unwrap().generator(&f).unwrap();
            prop_assert!(c.generator().matmul(&d.generator().transpose()).unwrap().is_zero());
            prop_assert!(c.dual().unwrap().code_eq(&d).unwrap());
            // the right kernel spans the same code
            let h = c.generator().right_kernel();
            prop_assert!(LinearCode::new(h).unwrap().code_eq(&d).unwrap());
        }

        #[test]
        fn double_dual((f, spec) in arb_grs()) {
            let c = spec.generator(&f).unwrap();
            let dd = c.dual().unwrap().dual().unwrap();
            prop_assert_eq!(dd.canonical(), c.canonical());
        }

        #[test]
        fn puncturing_grs_drops_points((f, spec) in arb_grs(), pick in any::<prop::sample::Index>()) {
            prop_assume!(spec.n() > spec.k());
            let pos = pick.index(spec.n());
            let c = spec.generator(&f).unwrap();
            let mut alpha = spec.alpha().to_vec();
            let mut v = spec.v().to_vec();
            alpha.remove(pos);
            v.remove(pos);
            let expect = GrsSpec::new(alpha, v, spec.k()).unwrap().generator(&f).unwrap();
            prop_assert!(c.puncture(&[pos]).unwrap().code_eq(&expect).unwrap());
        }

        #[test]
        fn shorten_is_dual_of_punctured_dual((f, spec) in arb_grs(), seed in any::<u64>()) {
            prop_assume!(spec.n() >= spec.k() + 2 && spec.k() >= 2);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = spec.generator(&f).unwrap();
            let mut pos: Vec<usize> = (0..spec.n()).collect();
            pos.shuffle(&mut rng);
            let take = rng.gen_range(1..spec.k());
            let set = &pos[..take];
            let lhs = c.shorten(set).unwrap();
            let rhs = c.dual().unwrap().puncture(set).unwrap().dual().unwrap();
            prop_assert!(lhs.code_eq(&rhs).unwrap());
            prop_assert_eq!(lhs.k(), spec.k() - take);
        }

        #[test]
        fn code_eq_is_an_equivalence(q in prop::sample::select(vec![2u32, 3, 5]), seed in any::<u64>()) {
            // tiny codes so that random triples are often equal
            let f = gf(q);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut draw = || loop {
                let data = (0..6).map(|_| random_elem(&f, &mut rng)).collect();
                if let Ok(c) = LinearCode::new(Matrix::new(f.clone(), 2, 3, data).unwrap()) {
                    return c;
                }
            };
            let (a, b, c) = (draw(), draw(), draw());
            prop_assert!(a.code_eq(&a).unwrap());
            prop_assert_eq!(a.code_eq(&b).unwrap(), b.code_eq(&a).unwrap());
            if a.code_eq(&b).unwrap() && b.code_eq(&c).unwrap() {
                prop_assert!(a.code_eq(&c).unwrap());
            }
        }

        #[test]
        fn row_operations_keep_the_code((f, spec) in arb_grs(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = spec.generator(&f).unwrap();
            let k = c.k();
            let s = loop {
                let data = (0..k * k).map(|_| random_elem(&f, &mut rng)).collect();
                let s = Matrix::new(f.clone(), k, k, data).unwrap();
                if !s.det().unwrap().is_zero() {
                    break s;
                }
            };
            let other = LinearCode::new(s.matmul(c.generator()).unwrap()).unwrap();
            prop_assert!(c.code_eq(&other).unwrap());
        }
    }
}
