//! Seeded random streams. Replica `i` of a run with master seed `s` draws
//! from ChaCha8 keyed by `s` on stream `i`, so results do not depend on the
//! thread schedule.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform on `(0, 1]`.
pub(crate) fn open_unit(rng: &mut impl Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// Positions of successes in `total` Bernoulli(`p`) trials, by geometric
/// skipping.
pub(crate) fn bernoulli_positions(total: u64, p: f64, rng: &mut impl Rng, mut hit: impl FnMut(u64)) {
    if p <= 0.0 || total == 0 {
        return;
    }
    if p >= 1.0 {
        (0..total).for_each(hit);
        return;
    }
    let log_q = (-p).ln_1p();
    let mut idx: u64 = 0;
    loop {
        let skip = (open_unit(rng).ln() / log_q).floor();
        if !(skip < (total - idx) as f64) {
            return;
        }
        idx += skip as u64;
        hit(idx);
        idx += 1;
        if idx >= total {
            return;
        }
    }
}

/// Successes among the pairs `i < j < n`, in lexicographic order.
pub(crate) fn bernoulli_pairs(n: usize, p: f64, rng: &mut impl Rng, mut hit: impl FnMut(usize, usize)) {
    let total = (n as u64) * (n as u64).saturating_sub(1) / 2;
    let mut row = 0usize;
    let mut row_start = 0u64;
    let mut row_len = n.saturating_sub(1) as u64;
    bernoulli_positions(total, p, rng, |idx| {
        while idx >= row_start + row_len {
            row_start += row_len;
            row += 1;
            row_len -= 1;
        }
        let col = row + 1 + (idx - row_start) as usize;
        hit(row, col);
    });
}
