//! Stateless generator: every draw is a hash of `(seed, sample, lane)`, so
//! results do not depend on how samples are split across workers.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const LANE: u64 = 0xD1B5_4A32_D192_ED03;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
    seed: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng {
            key: mix(seed.wrapping_add(GOLDEN)),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn bits(&self, sample: u64, lane: u64) -> u64 {
        mix(
            mix(self.key ^ sample.wrapping_mul(GOLDEN).wrapping_add(GOLDEN))
                ^ lane.wrapping_mul(LANE),
        )
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform_at(&self, sample: u64, lane: u64) -> f64 {
        (self.bits(sample, lane) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Lane 0 of sample `counter`.
    #[inline]
    pub fn uniform(&self, counter: u64) -> f64 {
        self.uniform_at(counter, 0)
    }

    /// Standard normals for one sample by Box–Muller, two per lane pair.
    pub fn normals(&self, sample: u64, out: &mut [f64]) {
        for (pair, chunk) in out.chunks_mut(2).enumerate() {
            let u1 = 1.0 - self.uniform_at(sample, 2 * pair as u64);
            let u2 = self.uniform_at(sample, 2 * pair as u64 + 1);
            let r = libm::sqrt(-2.0 * libm::log(u1));
            let t = 2.0 * core::f64::consts::PI * u2;
            chunk[0] = r * libm::cos(t);
            if chunk.len() > 1 {
                chunk[1] = r * libm::sin(t);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_seed_sensitive() {
        let a = CounterRng::new(1);
        assert_eq!(a.bits(5, 0), CounterRng::new(1).bits(5, 0));
        assert_ne!(a.bits(5, 0), CounterRng::new(2).bits(5, 0));
        assert_ne!(a.bits(5, 0), a.bits(6, 0));
        assert_ne!(a.bits(5, 0), a.bits(5, 1));
    }

    #[test]
    fn moments_are_plausible() {
        let r = CounterRng::new(42);
        let n = 200_000u64;
        let mut s = 0.0;
        let mut s2 = 0.0;
        let mut u = 0.0;
        let mut buf = [0.0; 2];
        for i in 0..n {
            r.normals(i, &mut buf);
            s += buf[0] + buf[1];
            s2 += buf[0] * buf[0] + buf[1] * buf[1];
            u += r.uniform(i);
        }
        let m = 2.0 * n as f64;
        assert!((s / m).abs() < 0.01);
        assert!((s2 / m - 1.0).abs() < 0.01);
        assert!((u / n as f64 - 0.5).abs() < 0.005);
    }
}
