//! Counter-based random stream.
//!
//! Every trial owns an independent stream keyed by `(base_seed, trial_index)`.
//! The generator is SplitMix64 run in counter mode: output `i` of a stream with
//! key `k` is `mix64(k + (i + 1)·γ)` with the golden-ratio increment
//! `γ = 0x9E3779B97F4A7C15` and the Stafford "Mix13" finalizer
//! (`0xBF58476D1CE4E5B9`, `0x94D049BB133111EB`). Keys are
//! `mix64(base_seed ^ mix64(trial_index ^ TRIAL_SALT))`. Normals use the polar-free
//! Box–Muller transform; gamma and chi variates use Marsaglia–Tsang.

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_A: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_B: u64 = 0x94D0_49BB_1331_11EB;
const TRIAL_SALT: u64 = 0xD1B5_4A32_D192_ED03;

/// The SplitMix64 finalizer; a bijective avalanche mixer on `u64`.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX_A);
    z = (z ^ (z >> 27)).wrapping_mul(MIX_B);
    z ^ (z >> 31)
}

/// Derives per-trial streams from one base seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStream {
    pub base_seed: u64,
}

impl SeedStream {
    pub fn new(base_seed: u64) -> Self {
        Self { base_seed }
    }

    pub fn trial_key(&self, trial_index: u64) -> u64 {
        mix64(self.base_seed ^ mix64(trial_index ^ TRIAL_SALT))
    }

    pub fn stream(&self, trial_index: u64) -> CounterRng {
        CounterRng::new(self.trial_key(trial_index))
    }
}

#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
    spare_normal: Option<f64>,
}

impl CounterRng {
    pub fn new(key: u64) -> Self {
        Self { key, counter: 0, spare_normal: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn normal(&mut self, mean: f64, sd: f64) -> f64 {
        mean + sd * self.standard_normal()
    }

    /// Gamma(shape, 1).
    pub fn gamma(&mut self, shape: f64) -> f64 {
        assert!(shape > 0.0, "gamma shape must be positive");
        if shape < 1.0 {
            let u = self.uniform();
            return self.gamma(shape + 1.0) * u.powf(1.0 / shape);
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.standard_normal();
            let v = 1.0 + c * x;
            if v <= 0.0 {
                continue;
            }
            let v = v * v * v;
            let u = self.uniform();
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
                return d * v;
            }
        }
    }

    /// Chi with `dof` degrees of freedom: `sqrt(Gamma(dof/2, scale 2))`.
    pub fn chi(&mut self, dof: f64) -> f64 {
        (2.0 * self.gamma(dof / 2.0)).sqrt()
    }
}
