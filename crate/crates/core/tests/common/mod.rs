//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use qharm::monomial::Monomial;
use qharm::ring::rat;
use qharm::symfun::{e_product_raw, VarSubset};
use qharm::{Polynomial, Rational};
use rand::Rng;

pub type P = Polynomial<Rational>;

pub fn random_rational<G: Rng>(rng: &mut G, bound: i64) -> Rational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound);
    rat(num, den)
}

/// A polynomial with up to `terms` monomials of total degree at most `max_degree`.
pub fn random_poly<G: Rng>(rng: &mut G, n: usize, max_degree: u16, terms: usize) -> P {
    let mut out = P::zero(n);
    for _ in 0..terms {
        let mut left = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u16; n];
        while left > 0 {
            let i = rng.gen_range(0..n);
            exps[i] += 1;
            left -= 1;
        }
        let c = random_rational(rng, 9);
        out.add_term(Monomial::from_slice(&exps), &c);
    }
    out
}

/// A random combination of products of elementary symmetric polynomials in all variables.
pub fn random_symmetric<G: Rng>(rng: &mut G, n: usize, max_parts: usize) -> P {
    let all = VarSubset::all(n);
    let mut out = P::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let parts: Vec<i64> = (0..rng.gen_range(0..=max_parts))
            .map(|_| rng.gen_range(1..=n as i64))
            .collect();
        let c = random_rational(rng, 9);
        out = &out + &e_product_raw::<Rational>(parts, &all).scale(&c);
    }
    out
}
