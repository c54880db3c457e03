//! Six-dimensional Sobol sequence (Joe-Kuo direction numbers) with
//! digital-shift randomization.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SOBOL_DIM: usize = 6;
const BITS: usize = 32;

/// `(degree, polynomial coefficients a, initial m_1..m_s)` for dimensions 2..6.
const JOE_KUO: [(usize, u32, &[u32]); SOBOL_DIM - 1] = [
    (1, 0, &[1]),
    (2, 1, &[1, 3]),
    (3, 1, &[1, 3, 1]),
    (3, 2, &[1, 1, 1]),
    (4, 1, &[1, 1, 3, 3]),
];

#[derive(Debug, Clone)]
pub struct Sobol {
    directions: [[u32; BITS]; SOBOL_DIM],
}

impl Default for Sobol {
    fn default() -> Self {
        Self::new()
    }
}

impl Sobol {
    pub fn new() -> Self {
        let mut directions = [[0u32; BITS]; SOBOL_DIM];
        for (j, v) in directions[0].iter_mut().enumerate() {
            *v = 1 << (BITS - 1 - j);
        }
        for (d, &(s, a, m)) in JOE_KUO.iter().enumerate() {
            let v = &mut directions[d + 1];
            for j in 0..s {
                v[j] = m[j] << (BITS - 1 - j);
            }
            for j in s..BITS {
                let mut x = v[j - s] ^ (v[j - s] >> s);
                for k in 1..s {
                    if (a >> (s - 1 - k)) & 1 == 1 {
                        x ^= v[j - k];
                    }
                }
                v[j] = x;
            }
        }
        Self { directions }
    }

    /// Integer coordinates of point `index` in Gray-code order.
    pub fn point(&self, index: u64) -> [u32; SOBOL_DIM] {
        let gray = index ^ (index >> 1);
        let mut out = [0u32; SOBOL_DIM];
        for bit in 0..BITS {
            if (gray >> bit) & 1 == 1 {
                for (o, dir) in out.iter_mut().zip(&self.directions) {
                    *o ^= dir[bit];
                }
            }
        }
        out
    }

    /// Advances `state` (the coordinates of point `index`) to `index + 1`.
    pub fn advance(&self, state: &mut [u32; SOBOL_DIM], index: u64) {
        let bit = (index + 1).trailing_zeros() as usize;
        for (s, dir) in state.iter_mut().zip(&self.directions) {
            *s ^= dir[bit];
        }
    }
}

/// Per-replicate XOR shifts derived from `seed`.
pub fn digital_shifts(seed: u64, replicates: usize) -> Vec<[u32; SOBOL_DIM]> {
    (0..replicates)
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let mut shift = [0u32; SOBOL_DIM];
            for s in shift.iter_mut() {
                *s = rng.next_u32();
            }
            shift
        })
        .collect()
}

/// Maps shifted integer coordinates to the open unit cube (cell midpoints,
/// never 0 or 1).
#[inline]
pub fn to_unit(coords: &[u32; SOBOL_DIM], shift: &[u32; SOBOL_DIM]) -> [f64; SOBOL_DIM] {
    let mut u = [0.0; SOBOL_DIM];
    for d in 0..SOBOL_DIM {
        u[d] = ((coords[d] ^ shift[d]) as f64 + 0.5) / 4_294_967_296.0;
    }
    u
}
