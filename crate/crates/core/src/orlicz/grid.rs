use crate::error::OrliczError;
use crate::gfun::norm;

/// A vector-valued piecewise-linear function on a uniform grid over `[a, b]`.
///
/// Values are stored node-major: node `k` occupies
/// `values[k * dim .. (k + 1) * dim]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    a: f64,
    b: f64,
    n: usize,
    dim: usize,
    values: Vec<f64>,
    zero_boundary: bool,
}

impl GridFunction {
    /// Builds a grid function from node-major values (`(n + 1) * dim` of them).
    /// The zero-boundary flag is set when both end nodes are exactly zero.
    pub fn new(a: f64, b: f64, dim: usize, values: Vec<f64>) -> Result<Self, OrliczError> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(OrliczError::InvalidGrid(format!("interval [{a}, {b}] is empty")));
        }
        if dim == 0 || !values.len().is_multiple_of(dim) {
            return Err(OrliczError::InvalidGrid(format!(
                "{} values do not split into nodes of dimension {dim}",
                values.len()
            )));
        }
        let nodes = values.len() / dim;
        if nodes < 3 {
            return Err(OrliczError::InvalidGrid(format!(
                "need at least 2 subintervals, got {}",
                nodes.saturating_sub(1)
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(OrliczError::InvalidGrid("non-finite nodal value".into()));
        }
        let n = nodes - 1;
        let zero_boundary = values[..dim].iter().all(|&v| v == 0.0) && values[n * dim..].iter().all(|&v| v == 0.0);
        Ok(Self {
            a,
            b,
            n,
            dim,
            values,
            zero_boundary,
        })
    }

    /// Samples `f` at the `n + 1` grid nodes.
    pub fn from_fn<F>(a: f64, b: f64, n: usize, dim: usize, mut f: F) -> Result<Self, OrliczError>
    where
        F: FnMut(f64) -> Vec<f64>,
    {
        let h = (b - a) / n as f64;
        let mut values = Vec::with_capacity((n + 1) * dim);
        for k in 0..=n {
            let v = f(a + h * k as f64);
            if v.len() != dim {
                return Err(OrliczError::Dimension {
                    expected: dim,
                    got: v.len(),
                });
            }
            values.extend(v);
        }
        Self::new(a, b, dim, values)
    }

    /// Like [`GridFunction::from_fn`] but pins both end nodes to zero.
    pub fn from_fn_zero_boundary<F>(a: f64, b: f64, n: usize, dim: usize, f: F) -> Result<Self, OrliczError>
    where
        F: FnMut(f64) -> Vec<f64>,
    {
        let mut u = Self::from_fn(a, b, n, dim, f)?;
        u.values[..dim].fill(0.0);
        u.values[n * dim..].fill(0.0);
        u.zero_boundary = true;
        Ok(u)
    }

    pub fn zeros(a: f64, b: f64, n: usize, dim: usize) -> Result<Self, OrliczError> {
        Self::new(a, b, dim, vec![0.0; (n + 1) * dim])
    }

    /// Fails unless both end nodes are exactly zero.
    pub fn require_zero_boundary(&self) -> Result<(), OrliczError> {
        if self.zero_boundary {
            Ok(())
        } else {
            Err(OrliczError::InvalidGrid(
                "function does not vanish at both end nodes".into(),
            ))
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn interval_length(&self) -> f64 {
        self.b - self.a
    }

    /// Number of subintervals.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / self.n as f64
    }

    pub fn zero_boundary(&self) -> bool {
        self.zero_boundary
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn t(&self, k: usize) -> f64 {
        if k == self.n {
            self.b
        } else {
            self.a + self.h() * k as f64
        }
    }

    pub fn node(&self, k: usize) -> &[f64] {
        &self.values[k * self.dim..(k + 1) * self.dim]
    }

    pub fn node_mut(&mut self, k: usize) -> &mut [f64] {
        let d = self.dim;
        &mut self.values[k * d..(k + 1) * d]
    }

    /// Constant derivative on cell `k` (between nodes `k` and `k + 1`).
    pub fn slope(&self, k: usize) -> Vec<f64> {
        let h = self.h();
        self.node(k + 1)
            .iter()
            .zip(self.node(k))
            .map(|(r, l)| (r - l) / h)
            .collect()
    }

    /// Value at the midpoint of cell `k`.
    pub fn cell_mean(&self, k: usize) -> Vec<f64> {
        self.node(k + 1)
            .iter()
            .zip(self.node(k))
            .map(|(r, l)| 0.5 * (r + l))
            .collect()
    }

    /// Linear interpolation at `t`, clamped to the interval.
    pub fn eval(&self, t: f64) -> Vec<f64> {
        let s = ((t - self.a) / self.h()).clamp(0.0, self.n as f64);
        let k = (s.floor() as usize).min(self.n - 1);
        let w = s - k as f64;
        self.node(k)
            .iter()
            .zip(self.node(k + 1))
            .map(|(l, r)| l + w * (r - l))
            .collect()
    }

    /// The piecewise-constant derivative as a function on the cells; the
    /// returned vector is cell-major.
    pub fn slopes(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n * self.dim);
        for k in 0..self.n {
            out.extend(self.slope(k));
        }
        out
    }

    /// `max_k |u(t_k)|`, which is the sup norm of the piecewise-linear function.
    pub fn sup_norm(&self) -> f64 {
        (0..=self.n).map(|k| norm(self.node(k))).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= c);
        out
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.n == other.n && self.dim == other.dim
    }

    fn check_grid(&self, other: &Self) -> Result<(), OrliczError> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(OrliczError::GridMismatch(format!(
                "([{}, {}], n={}, N={}) vs ([{}, {}], n={}, N={})",
                self.a, self.b, self.n, self.dim, other.a, other.b, other.n, other.dim
            )))
        }
    }

    /// `self + c * other`, keeping the zero-boundary flag when both have it.
    pub fn axpy(&self, c: f64, other: &Self) -> Result<Self, OrliczError> {
        self.check_grid(other)?;
        let mut out = self.clone();
        for (o, x) in out.values.iter_mut().zip(&other.values) {
            *o += c * x;
        }
        out.zero_boundary = self.zero_boundary && other.zero_boundary;
        Ok(out)
    }

    /// Euclidean inner product of the nodal vectors.
    pub fn dot(&self, other: &Self) -> Result<f64, OrliczError> {
        self.check_grid(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum())
    }

    /// Trapezoid approximation of `∫ <u, v> dt`.
    pub fn integral_inner(&self, other: &Self) -> Result<f64, OrliczError> {
        self.check_grid(other)?;
        let h = self.h();
        let mut sum = 0.0;
        for k in 0..=self.n {
            let w = if k == 0 || k == self.n { 0.5 * h } else { h };
            sum += w * self.node(k).iter().zip(other.node(k)).map(|(a, b)| a * b).sum::<f64>();
        }
        Ok(sum)
    }

    /// Replaces node-major values; the length must match.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self, OrliczError> {
        if values.len() != self.values.len() {
            return Err(OrliczError::Dimension {
                expected: self.values.len(),
                got: values.len(),
            });
        }
        Self::new(self.a, self.b, self.dim, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_boundary_flag() {
        let u = GridFunction::from_fn(0.0, 1.0, 10, 1, |t| vec![t * (1.0 - t)]).unwrap();
        assert!(u.zero_boundary());
        let v = GridFunction::from_fn(0.0, 1.0, 10, 1, |t| vec![t]).unwrap();
        assert!(!v.zero_boundary());
        assert!(v.require_zero_boundary().is_err());
        let w = GridFunction::from_fn_zero_boundary(0.0, 1.0, 10, 1, |t| vec![t + 1.0]).unwrap();
        assert_eq!(w.node(0), &[0.0]);
        assert_eq!(w.node(10), &[0.0]);
    }

    #[test]
    fn derivative_is_cellwise_constant() {
        let u = GridFunction::from_fn(0.0, 2.0, 4, 2, |t| vec![t * t, -t]).unwrap();
        let h = 0.5;
        for k in 0..4 {
            let s = u.slope(k);
            assert!((s[0] - (u.node(k + 1)[0] - u.node(k)[0]) / h).abs() < 1e-15);
            assert!((s[1] + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_short_grids() {
        assert!(GridFunction::new(0.0, 1.0, 1, vec![0.0, 0.0]).is_err());
        assert!(GridFunction::new(1.0, 0.0, 1, vec![0.0; 5]).is_err());
        assert!(GridFunction::new(0.0, 1.0, 2, vec![0.0; 5]).is_err());
    }

    #[test]
    fn sup_norm_of_parabola() {
        let u = GridFunction::from_fn(0.0, 1.0, 100, 1, |t| vec![t * (1.0 - t)]).unwrap();
        assert!((u.sup_norm() - 0.25).abs() < 1e-15);
    }
}
