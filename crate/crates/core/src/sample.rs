//! Deterministic sampling for the verification suites. All randomness
//! derives from a single seed; each (suite, sample index) pair gets its own
//! ChaCha substream, so suites are reproducible and parallelizable.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::scalar::Scalar;
use crate::vector::SoftVector;

/// Sampler configuration: master seed and the Gaussian radius for vector
/// components and parameters.
#[derive(Debug, Clone, Copy)]
pub struct SampleConfig {
    pub seed: u64,
    pub radius: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            radius: 2.0,
        }
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// RNG substream for one sample of one suite.
pub fn rng_for(seed: u64, suite: &str, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(suite.as_bytes()));
    rng.set_stream(index.wrapping_add(1));
    rng
}

/// Zero-mean Gaussian soft vector scaled by `radius`.
pub fn gaussian_vector<T: Scalar>(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> SoftVector<T> {
    let mut draw = || {
        let g: f64 = rng.sample(StandardNormal);
        T::from_f64_lossy(g * radius)
    };
    let x = (0..dim).map(|_| draw()).collect();
    let e = draw();
    SoftVector { x, e }
}

/// Vector sample with deliberate edge cases folded in: index 0 is the zero
/// vector, the next `dim` indices are the coordinate axes, index dim+1 is
/// the pure-parameter vector, everything else is Gaussian.
pub fn edge_or_gaussian_vector<T: Scalar>(
    index: u64,
    rng: &mut ChaCha8Rng,
    dim: usize,
    radius: f64,
) -> SoftVector<T> {
    if index == 0 {
        return SoftVector::zero(dim);
    }
    let idx = index as usize;
    if idx <= dim {
        let mut v = SoftVector::zero(dim);
        v.x[idx - 1] = T::one();
        return v;
    }
    if idx == dim + 1 {
        let mut v = SoftVector::zero(dim);
        v.e = T::one();
        return v;
    }
    gaussian_vector(rng, dim, radius)
}

/// Scalar sample cycling through deliberate values (0, +-1, +-2, 0.5, 3,
/// -0.5) before falling back to Gaussians.
pub fn edge_or_gaussian_scalar<T: Scalar>(index: u64, rng: &mut ChaCha8Rng, radius: f64) -> T {
    const SPECIALS: [f64; 8] = [0.0, 1.0, -1.0, 2.0, -2.0, 0.5, 3.0, -0.5];
    if index % 17 < SPECIALS.len() as u64 {
        T::from_f64_lossy(SPECIALS[(index % 17) as usize])
    } else {
        let g: f64 = rng.sample(StandardNormal);
        T::from_f64_lossy(g * radius)
    }
}
