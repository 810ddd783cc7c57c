//! Philox4x32-10 counter-based generator and the Box–Muller normal pairs
//! drawn from it.
//!
//! A draw is a pure function of `(key, counter)`, so any path can be
//! regenerated on any thread without replaying a sequential stream.

const PHILOX_M0: u32 = 0xD251_1F53;
const PHILOX_M1: u32 = 0xCD9E_8D57;
const PHILOX_W0: u32 = 0x9E37_79B9;
const PHILOX_W1: u32 = 0xBB67_AE85;
const PHILOX_ROUNDS: usize = 10;

#[inline(always)]
fn mulhilo(a: u32, b: u32) -> (u32, u32) {
    let p = u64::from(a) * u64::from(b);
    ((p >> 32) as u32, p as u32)
}

/// One Philox4x32-10 block.
#[inline]
pub fn philox4x32(counter: [u32; 4], key: [u32; 2]) -> [u32; 4] {
    let mut c = counter;
    let mut k = key;
    for round in 0..PHILOX_ROUNDS {
        if round > 0 {
            k[0] = k[0].wrapping_add(PHILOX_W0);
            k[1] = k[1].wrapping_add(PHILOX_W1);
        }
        let (hi0, lo0) = mulhilo(PHILOX_M0, c[0]);
        let (hi1, lo1) = mulhilo(PHILOX_M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
    }
    c
}

const TWO_POW_M53: f64 = 1.0 / 9_007_199_254_740_992.0;

/// Keyed generator producing standard normal pairs indexed by
/// `(stream, position)`.
#[derive(Debug, Clone, Copy)]
pub struct CounterRng {
    key: [u32; 2],
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self {
            key: [seed as u32, (seed >> 32) as u32],
        }
    }

    /// 128 random bits for the counter `(stream, position)`.
    #[inline]
    pub fn block(&self, stream: u64, position: u64) -> [u64; 2] {
        let out = philox4x32(
            [
                stream as u32,
                (stream >> 32) as u32,
                position as u32,
                (position >> 32) as u32,
            ],
            self.key,
        );
        [
            (u64::from(out[0]) << 32) | u64::from(out[1]),
            (u64::from(out[2]) << 32) | u64::from(out[3]),
        ]
    }

    /// Two uniforms: the first in `(0, 1]`, the second in `[0, 1)`.
    #[inline]
    pub fn uniform_pair(&self, stream: u64, position: u64) -> (f64, f64) {
        let [a, b] = self.block(stream, position);
        (
            ((a >> 11) + 1) as f64 * TWO_POW_M53,
            (b >> 11) as f64 * TWO_POW_M53,
        )
    }

    /// Two independent standard normals via Box–Muller.
    #[inline]
    pub fn normal_pair(&self, stream: u64, position: u64) -> (f64, f64) {
        let (u1, u2) = self.uniform_pair(stream, position);
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        (r * c, r * s)
    }
}
