//! Shared input builders for the criterion benchmarks.

use antiorb_core::cyclotomic::CycNum;
use antiorb_core::finitefield::FqField;
use antiorb_core::quiver::GradedDims;
use antiorb_core::transform::{FuncTable, SpaceDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded table of small cyclotomic values on `E^+_V` for the given
/// dimension vector over `F_q`.
pub fn seeded_table(q: u64, dims: Vec<u32>, seed: u64) -> FuncTable {
    let field = FqField::for_q(q).unwrap();
    let gd = GradedDims::new(dims.len(), dims);
    let space = SpaceDescriptor::for_quiver(&field, &gd, 1);
    let p = field.p() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = FuncTable::zero(space).unwrap();
    for v in t.values.iter_mut() {
        let e = rng.gen_range(0..p as i64);
        let c: i64 = rng.gen_range(-2..=2);
        *v = &CycNum::zeta_pow(p, e) * &num_rational(c);
    }
    t
}

fn num_rational(c: i64) -> num::BigRational {
    num::BigRational::from_integer(c.into())
}
