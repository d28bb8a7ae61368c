use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Radial/directional sample cloud used by the index, probe and embedding
/// computations.
#[derive(Clone, Debug)]
pub struct SamplerConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub radial_points: usize,
    /// Number of unit directions; `None` picks 64 for N=2 and 256 otherwise.
    pub directions: Option<usize>,
    /// Only used for N >= 4, where directions are drawn at random.
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            r_min: 1e-4,
            r_max: 1e4,
            radial_points: 200,
            directions: None,
            seed: crate::DEFAULT_SEED,
        }
    }
}

impl SamplerConfig {
    /// Log-spaced radii over `[r_min, r_max]`.
    pub fn radii(&self) -> Vec<f64> {
        log_space(self.r_min, self.r_max, self.radial_points)
    }

    /// Unit directions in `R^dim`. For N=1 these are ±1; for N=2 equally
    /// spaced angles (axes included); for N=3 a Fibonacci lattice plus the
    /// coordinate axes; beyond that seeded uniform samples plus the axes.
    pub fn directions(&self, dim: usize) -> Vec<Vec<f64>> {
        match dim {
            1 => vec![vec![1.0], vec![-1.0]],
            2 => {
                let m = self.directions.unwrap_or(64).max(4);
                (0..m)
                    .map(|k| {
                        let a = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                        vec![a.cos(), a.sin()]
                    })
                    .collect()
            }
            3 => {
                let m = self.directions.unwrap_or(256).max(1);
                let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
                let mut out: Vec<Vec<f64>> = (0..m)
                    .map(|k| {
                        let z = 1.0 - 2.0 * (k as f64 + 0.5) / m as f64;
                        let rho = (1.0 - z * z).sqrt();
                        let phi = golden * k as f64;
                        vec![rho * phi.cos(), rho * phi.sin(), z]
                    })
                    .collect();
                out.extend(axes(3));
                out
            }
            _ => {
                let m = self.directions.unwrap_or(256);
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let mut out = axes(dim);
                while out.len() < m + 2 * dim {
                    let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                    let r = super::norm(&v);
                    if r > 1e-3 && r <= 1.0 {
                        out.push(v.iter().map(|c| c / r).collect());
                    }
                }
                out
            }
        }
    }
}

fn axes(dim: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; dim];
            e[i] = s;
            out.push(e);
        }
    }
    out
}

pub(crate) fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}
