#![allow(dead_code)]

use num_traits::Zero;
use qplane::{NCElement, ScalarExpr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(a + b i)/c · r^e` with small integers.
pub fn random_scalar(rng: &mut impl Rng) -> ScalarExpr {
    let re = ScalarExpr::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    let im = ScalarExpr::ratio(rng.gen_range(-2..=2), rng.gen_range(1..=3));
    let c = re + im * ScalarExpr::i();
    c * ScalarExpr::r().powi(rng.gen_range(-2..=2))
}

/// A sum of up to `terms` monomials `c u^a v^b` with `|a|, |b| <= 2`.
pub fn random_element(rng: &mut impl Rng, terms: usize) -> NCElement {
    let n = rng.gen_range(1..=terms);
    let mut out = NCElement::uv_scalar(ScalarExpr::zero());
    for _ in 0..n {
        let m = NCElement::uv_monomial(random_scalar(rng), rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        out = &out + &m;
    }
    out
}
