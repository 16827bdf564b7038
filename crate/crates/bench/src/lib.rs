//! Helpers shared by the benchmark targets.

use jacobi_core::instances::InstanceRng;
use jacobi_core::JacobiCoefficients;

/// Deterministic random instance used by every benchmark, so runs are
/// comparable across machines and commits.
pub fn bench_instance(size: usize, seed: u64) -> JacobiCoefficients {
    InstanceRng::new(seed).instance(size)
}
