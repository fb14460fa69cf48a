//! Group-ring structure of reduced orders.
//!
//! An order here is a commutative ring whose additive group is `Z^n`, given
//! by a structure-constant tensor. The crate computes roots of unity,
//! universal gradings and degree maps, and from those the maximal
//! factorization `R = A[G]` with `A` stark, the set of all group-ring
//! structures on a connected order, and the automorphism group of `A[G]`.
//!
//! The linear algebra kernel ([`intlin`]) is generic over the scalar type;
//! everything above it works with the arbitrary-precision aliases defined
//! here.

pub mod abgroups;
pub mod autgroups;
pub mod formats;
pub mod gradings;
pub mod intlin;
pub mod morphmods;
pub mod orders;
pub mod poly;
pub mod qalg;
pub mod starkdec;

mod error;

pub use error::{Error, Result};

/// Arbitrary-precision integer used throughout the algebra layers.
pub type Int = num_bigint::BigInt;
/// Exact rational number.
pub type Rat = num_rational::BigRational;
/// Integer matrix.
pub type IntMatrix = intlin::Matrix<Int>;
/// Rational matrix.
pub type RatMatrix = intlin::Matrix<Rat>;
/// Integer column vector.
pub type IntVector = Vec<Int>;
/// Lattice basis in canonical Hermite form over the integers.
pub type IntHnf = intlin::HnfBasis<Int>;

/// Tunable resource bounds shared by the pipelines.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Maximum number of elements any brute-force enumeration may visit
    /// (Hom-groups, automorphism groups, candidate root-of-unity tuples).
    pub max_enum: usize,
    /// Maximum number of rational components handled when enumerating
    /// idempotents.
    pub max_components: usize,
    /// Largest polynomial degree the general rational factoring step accepts
    /// once cyclotomic factors are removed.
    pub max_factor_degree: usize,
    /// Worker threads for per-component evaluation. `1` runs inline.
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: 4096,
            max_components: 16,
            max_factor_degree: 24,
            jobs: 1,
        }
    }
}

#[cfg(test)]
pub(crate) fn int(v: i64) -> Int {
    Int::from(v)
}

/// Maps `f` over `items`, on `limits.jobs` worker threads when more than
/// one is requested. Results keep the input order.
pub(crate) fn par_map<T, U, F>(items: &[T], limits: &Limits, f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    if limits.jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(limits.jobs)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    pool.install(|| items.par_iter().map(f).collect())
}
