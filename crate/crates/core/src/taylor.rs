//! Scaled Taylor (differential-transform) coefficient tables.
//!
//! Convention: `X(k) = x^(k)(t_i) / k!` about the expansion point `t_i`.
//! A [`CoeffTable`] stores `X(0..=order)` for every component of a system;
//! [`Series`] borrows one component as a scalar sequence so the convolution
//! helpers can be applied inside recurrences without copying.

use crate::error::{Error, Result};

/// Read access to a scalar coefficient sequence.
pub trait CoeffSeq {
    fn seq_len(&self) -> usize;
    fn coeff(&self, j: usize) -> f64;
}

impl CoeffSeq for [f64] {
    fn seq_len(&self) -> usize {
        self.len()
    }

    #[inline]
    fn coeff(&self, j: usize) -> f64 {
        self[j]
    }
}

impl CoeffSeq for Vec<f64> {
    fn seq_len(&self) -> usize {
        self.len()
    }

    #[inline]
    fn coeff(&self, j: usize) -> f64 {
        self[j]
    }
}

/// One component of a [`CoeffTable`] viewed as a sequence in `k`.
#[derive(Debug, Clone, Copy)]
pub struct Series<'a> {
    table: &'a CoeffTable,
    component: usize,
}

impl CoeffSeq for Series<'_> {
    fn seq_len(&self) -> usize {
        self.table.len()
    }

    #[inline]
    fn coeff(&self, j: usize) -> f64 {
        self.table.data[j * self.table.dim + self.component]
    }
}

fn check_len<A: CoeffSeq + ?Sized>(a: &A, k: usize) -> Result<()> {
    if a.seq_len() <= k {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: a.seq_len(),
        });
    }
    Ok(())
}

/// `Σ_{j=0}^{k} a(j)·b(k−j)`: coefficient `k` of the product series.
pub fn cauchy_product<A, B>(a: &A, b: &B, k: usize) -> Result<f64>
where
    A: CoeffSeq + ?Sized,
    B: CoeffSeq + ?Sized,
{
    check_len(a, k)?;
    check_len(b, k)?;
    Ok((0..=k).map(|j| a.coeff(j) * b.coeff(k - j)).sum())
}

/// `Σ_{l=0}^{k} Σ_{n=0}^{l} a(n)·b(l−n)·c(k−l)`: coefficient `k` of `a·b·c`.
pub fn triple_product<A, B, C>(a: &A, b: &B, c: &C, k: usize) -> Result<f64>
where
    A: CoeffSeq + ?Sized,
    B: CoeffSeq + ?Sized,
    C: CoeffSeq + ?Sized,
{
    check_len(a, k)?;
    check_len(b, k)?;
    check_len(c, k)?;
    let mut total = 0.0;
    for l in 0..=k {
        let ab: f64 = (0..=l).map(|n| a.coeff(n) * b.coeff(l - n)).sum();
        total += ab * c.coeff(k - l);
    }
    Ok(total)
}

/// Dense per-node coefficient storage, entry `k` holding `X(k)` for all components.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    dim: usize,
    base_time: f64,
    data: Vec<f64>,
}

impl CoeffTable {
    /// Starts a table holding only the state `X(0)`.
    pub fn new(base_time: f64, state: &[f64]) -> Result<Self> {
        Self::with_capacity(base_time, state, 1)
    }

    pub fn with_capacity(base_time: f64, state: &[f64], entries: usize) -> Result<Self> {
        if state.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if !state.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteState { t: base_time });
        }
        let mut data = Vec::with_capacity(state.len() * entries.max(1));
        data.extend_from_slice(state);
        Ok(Self {
            dim: state.len(),
            base_time,
            data,
        })
    }

    /// Builds a table from explicit coefficient vectors (entry 0 first).
    pub fn from_coeffs<V: AsRef<[f64]>>(base_time: f64, coeffs: &[V]) -> Result<Self> {
        let (first, rest) = coeffs.split_first().ok_or(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        })?;
        let mut table = Self::with_capacity(base_time, first.as_ref(), coeffs.len())?;
        for c in rest {
            table.push(c.as_ref())?;
        }
        Ok(table)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base_time(&self) -> f64 {
        self.base_time
    }

    /// Number of stored entries (`order() + 1`).
    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Highest stored coefficient index.
    pub fn order(&self) -> usize {
        self.len() - 1
    }

    pub fn state(&self) -> &[f64] {
        self.coeff(0)
    }

    /// `X(k)`; panics if `k > order()`.
    pub fn coeff(&self, k: usize) -> &[f64] {
        &self.data[k * self.dim..(k + 1) * self.dim]
    }

    pub fn get(&self, k: usize) -> Option<&[f64]> {
        (k < self.len()).then(|| self.coeff(k))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn series(&self, component: usize) -> Series<'_> {
        assert!(component < self.dim, "component {component} out of range");
        Series {
            table: self,
            component,
        }
    }

    /// `‖X(k)‖_∞`.
    pub fn max_norm(&self, k: usize) -> f64 {
        self.coeff(k).iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Appends `X(order()+1)`.
    pub fn push(&mut self, next: &[f64]) -> Result<()> {
        if next.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: next.len(),
            });
        }
        if !next.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteState { t: self.base_time });
        }
        self.data.extend_from_slice(next);
        Ok(())
    }

    /// Horner evaluation of `Σ_{k=0}^{order} X(k)·offset^k` into `out`.
    pub fn eval_into(&self, offset: f64, order: usize, out: &mut [f64]) -> Result<()> {
        if order > self.order() {
            return Err(Error::IndexOutOfRange {
                index: order,
                len: self.len(),
            });
        }
        if out.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: out.len(),
            });
        }
        out.copy_from_slice(self.coeff(order));
        for k in (0..order).rev() {
            for (o, c) in out.iter_mut().zip(self.coeff(k)) {
                *o = *o * offset + c;
            }
        }
        Ok(())
    }
}

/// Displacement from the expansion point and the truncation order to evaluate at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvalPoint {
    pub offset: f64,
    pub order: usize,
}

impl SeriesEvalPoint {
    pub fn new(offset: f64, order: usize) -> Self {
        Self { offset, order }
    }
}

/// Truncated series value at `base_time + pt.offset`, componentwise.
pub fn horner_eval(table: &CoeffTable, pt: SeriesEvalPoint) -> Result<Vec<f64>> {
    let mut out = vec![0.0; table.dim()];
    table.eval_into(pt.offset, pt.order, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exp_coeffs(n: usize, rate: f64) -> Vec<f64> {
        let mut c = vec![1.0];
        for k in 1..n {
            let prev = c[k - 1];
            c.push(prev * rate / k as f64);
        }
        c
    }

    #[test]
    fn cauchy_of_exponentials() {
        let e = exp_coeffs(6, 1.0);
        assert!((cauchy_product(&e, &e, 2).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn cauchy_identity_and_zero() {
        let a = vec![0.3, -1.2, 4.5, 0.7];
        let one = vec![1.0, 0.0, 0.0, 0.0];
        assert_eq!(cauchy_product(&a, &one, 2).unwrap(), 4.5);
        let zero = vec![0.0; 6];
        let b = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        assert_eq!(cauchy_product(&zero, &b, 5).unwrap(), 0.0);
    }

    #[test]
    fn cauchy_short_sequence_rejected() {
        let a = vec![1.0, 2.0];
        let b = vec![1.0, 2.0, 3.0];
        assert_eq!(
            cauchy_product(&a, &b, 2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        );
        assert!(triple_product(&b, &b, &a, 2).is_err());
    }

    #[test]
    fn triple_of_linear() {
        let lin = vec![1.0, 1.0, 0.0, 0.0];
        assert_eq!(triple_product(&lin, &lin, &lin, 2).unwrap(), 3.0);
        let a = vec![0.1, 0.2, 0.3, 0.4];
        let one = vec![1.0, 0.0, 0.0, 0.0];
        assert_eq!(triple_product(&a, &one, &one, 3).unwrap(), 0.4);
    }

    #[test]
    fn horner_examples() {
        let t = CoeffTable::from_coeffs(0.0, &[[1.0], [1.0], [0.5]]).unwrap();
        let v = horner_eval(&t, SeriesEvalPoint::new(0.1, 2)).unwrap();
        assert!((v[0] - 1.105).abs() < 1e-15);
        let v0 = horner_eval(&t, SeriesEvalPoint::new(0.0, 2)).unwrap();
        assert_eq!(v0, vec![1.0]);
        let decay = CoeffTable::from_coeffs(0.0, &[[1.0], [-1.0], [0.5]]).unwrap();
        assert_eq!(horner_eval(&decay, SeriesEvalPoint::new(1.0, 2)).unwrap(), vec![0.5]);
        assert!(horner_eval(&decay, SeriesEvalPoint::new(1.0, 3)).is_err());
    }

    #[test]
    fn table_rejects_bad_entries() {
        let mut t = CoeffTable::new(0.0, &[1.0, 2.0]).unwrap();
        assert!(matches!(t.push(&[1.0]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(t.push(&[1.0, f64::NAN]), Err(Error::NonFiniteState { .. })));
        assert_eq!(t.len(), 1);
        assert!(CoeffTable::new(0.0, &[]).is_err());
    }

    #[test]
    fn series_view_reads_component() {
        let t = CoeffTable::from_coeffs(2.0, &[[1.0, 10.0], [2.0, 20.0], [3.0, 30.0]]).unwrap();
        let s = t.series(1);
        assert_eq!(s.seq_len(), 3);
        assert_eq!(s.coeff(2), 30.0);
        assert_eq!(t.max_norm(1), 20.0);
    }

    fn seq(len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0f64..10.0, len)
    }

    proptest! {
        #[test]
        fn cauchy_bilinear_and_commutative(
            a in seq(9), a2 in seq(9), b in seq(9),
            alpha in -3.0f64..3.0, beta in -3.0f64..3.0, k in 0usize..9,
        ) {
            let mix: Vec<f64> = a.iter().zip(&a2).map(|(x, y)| alpha * x + beta * y).collect();
            let lhs = cauchy_product(&mix, &b, k).unwrap();
            let rhs = alpha * cauchy_product(&a, &b, k).unwrap()
                + beta * cauchy_product(&a2, &b, k).unwrap();
            // Exact up to the round-off of the individual terms.
            let scale: f64 = (0..=k)
                .map(|j| (alpha * a[j]).abs() + (beta * a2[j]).abs())
                .zip((0..=k).rev().map(|j| b[j].abs()))
                .map(|(x, y)| x * y)
                .sum::<f64>()
                .max(1e-300);
            prop_assert!((lhs - rhs).abs() <= 1e-13 * scale);
            let ab = cauchy_product(&a, &b, k).unwrap();
            let ba = cauchy_product(&b, &a, k).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-14 * scale.max(ab.abs()));
        }

        #[test]
        fn triple_is_nested_cauchy(a in seq(9), b in seq(9), c in seq(9), k in 0usize..9) {
            let ab: Vec<f64> = (0..=k).map(|l| cauchy_product(&a, &b, l).unwrap()).collect();
            let nested = cauchy_product(&ab, &c, k).unwrap();
            let direct = triple_product(&a, &b, &c, k).unwrap();
            prop_assert!((nested - direct).abs() <= 1e-12 * (1.0 + nested.abs()));
        }

        #[test]
        fn horner_matches_power_sum(coeffs in seq(13), x in -1.5f64..1.5, order in 0usize..13) {
            let rows: Vec<[f64; 1]> = coeffs.iter().map(|&c| [c]).collect();
            let t = CoeffTable::from_coeffs(0.0, &rows).unwrap();
            let h = horner_eval(&t, SeriesEvalPoint::new(x, order)).unwrap()[0];
            let naive: f64 = (0..=order).map(|k| coeffs[k] * x.powi(k as i32)).sum();
            let scale: f64 = (0..=order).map(|k| (coeffs[k] * x.powi(k as i32)).abs()).sum();
            prop_assert!((h - naive).abs() <= 1e-13 * scale.max(1e-300));
        }
    }
}
