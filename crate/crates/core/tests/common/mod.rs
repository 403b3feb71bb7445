#![allow(dead_code)]

pub mod hyper_checks;
pub mod properties;

use moonshine_core::rational::{ratio, Rational};
use moonshine_core::series::LaurentSeries;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random coefficients `c_0 .. c_{len-1}` with a nonzero first entry.
fn coeffs(rng: &mut impl Rng, len: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..len).map(|_| small_rational(rng)).collect();
    v[0] = nonzero_rational(rng);
    v
}

/// A Laurent series with valuation in `-2..=2` and 1 to 6 known terms.
pub fn laurent(rng: &mut impl Rng) -> LaurentSeries {
    let val = rng.gen_range(-2..=2);
    let len = rng.gen_range(1..=6);
    LaurentSeries::new(val, coeffs(rng, len), val + len as i64)
}

/// `c_1 q + c_2 q^2 + ...` with `c_1 != 0`, known through `q^{len}`.
pub fn valuation_one(rng: &mut impl Rng, len: usize) -> LaurentSeries {
    LaurentSeries::new(1, coeffs(rng, len), 1 + len as i64)
}

/// `q + c_2 q^2 + ...`, known through `q^{len}`.
pub fn unit_coordinate(rng: &mut impl Rng, len: usize) -> LaurentSeries {
    let mut c = coeffs(rng, len);
    c[0] = ratio(1, 1);
    LaurentSeries::new(1, c, 1 + len as i64)
}

/// A power series with nonzero linear term, so its derivative is a unit.
pub fn schwarzian_input(rng: &mut impl Rng, len: usize) -> LaurentSeries {
    let mut c: Vec<Rational> = (0..len).map(|_| small_rational(rng)).collect();
    c[1] = nonzero_rational(rng);
    LaurentSeries::new(0, c, len as i64)
}
