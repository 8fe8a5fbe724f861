//! Reproducible random substreams and multinomial genotype sampling.
//!
//! Every simulated unit (a SNP in a replicate, a bootstrap draw) gets its own
//! ChaCha8 stream keyed by `(seed, domain, outer)` with `inner` as the
//! stream id, so results do not depend on how work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent generator for the unit `(domain, outer, inner)` under `seed`.
pub fn substream(seed: u64, domain: u64, outer: u64, inner: u64) -> ChaCha8Rng {
    let key = splitmix64(splitmix64(seed ^ splitmix64(domain)) ^ outer);
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(inner);
    rng
}

fn binomial<R: Rng + ?Sized>(rng: &mut R, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("p checked to lie in (0,1)").sample(rng)
}

/// Draw `Multinomial(n; probs)` over three genotype classes by sequential
/// conditional binomials.
pub fn multinomial3<R: Rng + ?Sized>(rng: &mut R, n: u64, probs: &[f64; 3]) -> [u64; 3] {
    let total: f64 = probs.iter().sum();
    let p0 = probs[0] / total;
    let x0 = binomial(rng, n, p0);
    let rest = 1.0 - p0;
    let p1 = if rest > 0.0 { (probs[1] / total / rest).min(1.0) } else { 0.0 };
    let x1 = binomial(rng, n - x0, p1);
    [x0, x1, n - x0 - x1]
}
