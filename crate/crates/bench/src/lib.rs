//! Fixtures shared by the benchmarks in `benches/`.

use specht_core::{Partition, PrimeField};

pub fn shape(s: &str) -> Partition {
    Partition::parse(s).expect("fixture shape")
}

/// The first of the two primes used as a characteristic-zero stand-in.
pub fn proxy_field() -> PrimeField {
    PrimeField::new(32_003).expect("prime")
}
