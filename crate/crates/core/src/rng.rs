use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent generator for `(seed, stream)`. Distinct streams of one seed
/// never overlap, so per-column or per-phase draws stay reproducible no
/// matter what order they are consumed in.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

// Stream tags. Per-column streams occupy the low range [0, 2^32).
pub(crate) const STREAM_UNIFORM_OFFSET: u64 = 1 << 32;
pub(crate) const STREAM_UTYPE: u64 = 1 << 40;
pub(crate) const STREAM_TA: u64 = (1 << 40) + 1;
pub(crate) const STREAM_TEST_POINTS: u64 = (1 << 40) + 2;
