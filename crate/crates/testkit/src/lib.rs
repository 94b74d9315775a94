//! Random instance generators and brute-force oracles shared by the test
//! suites and benchmarks. Oracles here avoid the search code they check.

pub mod cyc;
pub mod oracle;
pub mod rcc8;
pub mod stp;
pub mod tbox;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator every suite uses, so failures reproduce from a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
