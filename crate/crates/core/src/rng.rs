//! Deterministic random and quasi-random sources.
//!
//! Search results must reproduce bit-for-bit from a recorded seed, across
//! builds and thread counts, so the generators are written out here instead
//! of depending on an external crate whose stream might change between
//! versions. `Xoshiro256PlusPlus` (seeded through SplitMix64) drives the
//! stochastic searches; substreams are derived from `(seed, path)` so
//! concurrent restarts stay independent of scheduling. Halton points with an
//! inverse-normal map provide the low-discrepancy sphere samples used by the
//! brute-force oracles.

use crate::scalar::Real;

/// SplitMix64 stream, used for seeding and substream derivation.
#[derive(Debug, Clone)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Xoshiro256++ generator.
#[derive(Debug, Clone)]
pub struct Rng {
    state: [u64; 4],
}

impl Rng {
    /// Seed the full state from a single 64-bit seed.
    pub fn seeded(seed: u64) -> Self {
        let mut sm = SplitMix64(seed);
        Rng {
            state: [sm.next_u64(), sm.next_u64(), sm.next_u64(), sm.next_u64()],
        }
    }

    /// Derive an independent substream from `(seed, path)`.
    ///
    /// Identical `(seed, path)` pairs yield identical streams; distinct
    /// paths decorrelate through the SplitMix64 mixer.
    pub fn substream(seed: u64, path: &[u64]) -> Self {
        let mut sm = SplitMix64(seed);
        let mut acc = sm.next_u64();
        for &part in path {
            let mut mixer = SplitMix64(acc ^ part.wrapping_mul(0xA24B_AED4_963E_E407));
            acc = mixer.next_u64();
        }
        Rng::seeded(acc)
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.state[0]
            .wrapping_add(self.state[3])
            .rotate_left(23)
            .wrapping_add(self.state[0]);
        let t = self.state[1] << 17;
        self.state[2] ^= self.state[0];
        self.state[3] ^= self.state[1];
        self.state[1] ^= self.state[2];
        self.state[0] ^= self.state[3];
        self.state[2] ^= t;
        self.state[3] = self.state[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform scalar in `[0, 1)`.
    pub fn unit<S: Real>(&mut self) -> S {
        S::of(self.next_unit_f64())
    }

    /// Uniform scalar in `[lo, hi)`.
    pub fn range<S: Real>(&mut self, lo: S, hi: S) -> S {
        lo + (hi - lo) * self.unit()
    }

    /// Standard normal deviate (Box-Muller, one value per two uniforms).
    pub fn normal<S: Real>(&mut self) -> S {
        let mut u1 = self.next_unit_f64();
        if u1 <= 0.0 {
            u1 = f64::MIN_POSITIVE;
        }
        let u2 = self.next_unit_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        S::of(r * (std::f64::consts::TAU * u2).cos())
    }

    /// Uniform point on the unit sphere in `R^dim`.
    pub fn unit_vector<S: Real>(&mut self, dim: usize) -> Vec<S> {
        loop {
            let v: Vec<S> = (0..dim).map(|_| self.normal()).collect();
            if let Some(u) = crate::scalar::normalized(&v) {
                return u;
            }
        }
    }
}

const HALTON_BASES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Halton low-discrepancy sequence in `[0, 1)^dim`, `dim ≤ 8`.
#[derive(Debug, Clone)]
pub struct Halton {
    dim: usize,
    index: u64,
}

impl Halton {
    /// Sequence over `dim` coordinates, skipping a short burn-in prefix.
    pub fn new(dim: usize) -> Self {
        assert!(dim <= HALTON_BASES.len(), "Halton dimension too large");
        Halton { dim, index: 20 }
    }

    fn radical_inverse(mut i: u64, base: u32) -> f64 {
        let b = base as u64;
        let inv_b = 1.0 / base as f64;
        let mut f = inv_b;
        let mut r = 0.0;
        while i > 0 {
            r += f * (i % b) as f64;
            i /= b;
            f *= inv_b;
        }
        r
    }

    pub fn next_point(&mut self) -> Vec<f64> {
        let i = self.index;
        self.index += 1;
        (0..self.dim)
            .map(|d| Self::radical_inverse(i, HALTON_BASES[d]))
            .collect()
    }

    /// Next point mapped through the inverse normal CDF and normalized to
    /// the unit sphere. Skips the (isolated) all-median point.
    pub fn next_unit_vector<S: Real>(&mut self) -> Vec<S> {
        loop {
            let p = self.next_point();
            let z: Vec<S> = p
                .into_iter()
                .map(|u| S::of(inverse_normal_cdf(u)))
                .collect();
            if let Some(v) = crate::scalar::normalized(&z) {
                return v;
            }
        }
    }
}

/// Inverse standard-normal CDF (Acklam's rational approximation,
/// relative error below 1.2e-9 — ample for sampling).
pub fn inverse_normal_cdf(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0 || p == 0.0);
    if p <= 0.0 {
        return -8.0;
    }
    const A: [f64; 6] = [
        -39.696_830_286_653_76,
        220.946_098_424_520_8,
        -275.928_510_446_969_,
        138.357_751_867_269,
        -30.664_798_066_147_16,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -54.476_098_798_224_06,
        161.585_836_858_040_9,
        -155.698_979_859_886_6,
        66.801_311_887_719_72,
        -13.280_681_552_885_72,
    ];
    const C: [f64; 6] = [
        -0.007_784_894_002_430_293,
        -0.322_396_458_041_136_4,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        0.007_784_695_709_041_462,
        0.322_467_129_070_039_8,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.024_25;
    const P_HIGH: f64 = 1.0 - P_LOW;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= P_HIGH {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -inverse_normal_cdf(1.0 - p)
    }
}
