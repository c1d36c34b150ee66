//! Seeded generators for random test instances.
//!
//! Every trial gets its own ChaCha stream derived from the run seed, the
//! property name and the trial index, so results do not depend on scheduling.

use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffop::{DifferentialOperator, Section};
use crate::gl::GlSymbol;
use crate::matrix::{MatrixPolynomial, PhaseMatrix, RatMatrix};
use crate::morphism::MorphismSpec;
use crate::poly::{MultiIndex, PhasePolynomial, Polynomial};
use crate::rational::{rat, Rational};
use crate::symbol::SymbolElement;

use super::config::SuiteConfig;

/// FNV-1a, fixed across platforms and releases (unlike `DefaultHasher`).
struct Fnv(u64);

impl Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
}

pub fn trial_rng(seed: u64, property: &str, trial: usize) -> ChaCha8Rng {
    let mut h = Fnv(0xcbf2_9ce4_8422_2325);
    seed.hash(&mut h);
    property.hash(&mut h);
    (trial as u64).hash(&mut h);
    ChaCha8Rng::seed_from_u64(h.finish())
}

#[derive(Clone, Debug)]
pub struct InstanceGen {
    pub m: usize,
    pub n: usize,
    pub max_xdeg: u32,
    pub max_order: u32,
    x_monomials: Vec<MultiIndex>,
}

impl InstanceGen {
    pub fn new(m: usize, n: usize, max_xdeg: u32, max_order: u32) -> Self {
        InstanceGen {
            m,
            n,
            max_xdeg,
            max_order,
            x_monomials: MultiIndex::all_up_to_degree(m, max_xdeg),
        }
    }

    pub fn from_config(config: &SuiteConfig) -> Self {
        Self::new(config.base_dim, config.rank, config.max_xdeg, config.max_order)
    }

    /// Numerator in `-4..=4`, denominator in `1..=3`.
    pub fn rational<R: Rng>(&self, rng: &mut R) -> Rational {
        rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
    }

    pub fn nonzero_rational<R: Rng>(&self, rng: &mut R) -> Rational {
        let num = *[-4i64, -3, -2, -1, 1, 2, 3, 4].choose(rng).unwrap();
        rat(num, rng.gen_range(1..=3))
    }

    fn x_monomial<R: Rng>(&self, rng: &mut R) -> MultiIndex {
        self.x_monomials.choose(rng).unwrap().clone()
    }

    /// A polynomial in `x` with one to three terms of degree at most `max_xdeg`.
    pub fn polynomial<R: Rng>(&self, rng: &mut R) -> Polynomial {
        let count = rng.gen_range(1..=3);
        Polynomial::from_terms(
            self.m,
            (0..count).map(|_| (self.x_monomial(rng), self.nonzero_rational(rng))),
        )
    }

    /// Like [`polynomial`](Self::polynomial) but zero a quarter of the time.
    pub fn sparse_polynomial<R: Rng>(&self, rng: &mut R) -> Polynomial {
        if rng.gen_bool(0.25) {
            Polynomial::zero(self.m)
        } else {
            self.polynomial(rng)
        }
    }

    /// Homogeneous of fiber degree `d`, with one or two terms.
    pub fn phase_polynomial<R: Rng>(&self, rng: &mut R, d: u32) -> PhasePolynomial {
        let xis = MultiIndex::all_of_degree(self.m, d);
        let count = rng.gen_range(1..=2);
        PhasePolynomial::from_terms(
            self.m,
            (0..count).map(|_| {
                let key = self.x_monomial(rng).concat(xis.choose(rng).unwrap());
                (key, self.nonzero_rational(rng))
            }),
        )
    }

    /// Homogeneous of a random fiber degree in `0..=max_d`.
    pub fn phase_polynomial_up_to<R: Rng>(&self, rng: &mut R, max_d: u32) -> PhasePolynomial {
        let d = rng.gen_range(0..=max_d);
        self.phase_polynomial(rng, d)
    }

    pub fn matrix<R: Rng>(&self, rng: &mut R) -> MatrixPolynomial {
        let mut a = MatrixPolynomial::zero(self.n, self.m);
        for i in 0..self.n {
            for j in 0..self.n {
                if rng.gen_bool(0.4) {
                    a.set(i, j, self.polynomial(rng));
                }
            }
        }
        a
    }

    pub fn traceless_matrix<R: Rng>(&self, rng: &mut R) -> MatrixPolynomial {
        self.matrix(rng).traceless_part()
    }

    pub fn rational_matrix<R: Rng>(&self, rng: &mut R, size: usize) -> RatMatrix {
        let mut a = RatMatrix::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                a.set(i, j, self.rational(rng));
            }
        }
        a
    }

    /// An invertible rational matrix (resampled until the determinant is nonzero).
    pub fn invertible_matrix<R: Rng>(&self, rng: &mut R, size: usize) -> RatMatrix {
        loop {
            let a = self.rational_matrix(rng, size);
            if a.determinant().map(|d| !num_traits::Zero::is_zero(&d)).unwrap_or(false) {
                return a;
            }
        }
    }

    fn coefficient<R: Rng>(&self, rng: &mut R) -> MatrixPolynomial {
        if rng.gen_bool(0.5) {
            MatrixPolynomial::scalar(self.n, &self.polynomial(rng))
        } else {
            self.matrix(rng)
        }
    }

    /// One to three terms with multi-indices of order at most `max_order`.
    pub fn operator<R: Rng>(&self, rng: &mut R) -> DifferentialOperator {
        let alphas = MultiIndex::all_up_to_degree(self.m, self.max_order);
        let count = rng.gen_range(1..=3);
        let terms: Vec<_> = (0..count)
            .map(|_| (alphas.choose(rng).unwrap().clone(), self.coefficient(rng)))
            .collect();
        DifferentialOperator::from_terms(self.m, self.n, terms)
    }

    /// An operator of scalar-principal order at most `k`: scalar coefficients
    /// in order `k`, arbitrary ones below. `k = 0` gives some `γ_u`.
    pub fn operator_in_p<R: Rng>(&self, rng: &mut R, k: i64) -> DifferentialOperator {
        if k < 0 {
            return DifferentialOperator::zero(self.m, self.n);
        }
        let k = k as u32;
        let count = rng.gen_range(1..=3);
        let mut terms = Vec::new();
        for _ in 0..count {
            let d = rng.gen_range(0..=k);
            let alpha = MultiIndex::all_of_degree(self.m, d).choose(rng).unwrap().clone();
            let coeff = if d == k {
                MatrixPolynomial::scalar(self.n, &self.polynomial(rng))
            } else {
                self.coefficient(rng)
            };
            terms.push((alpha, coeff));
        }
        DifferentialOperator::from_terms(self.m, self.n, terms)
    }

    pub fn section<R: Rng>(&self, rng: &mut R) -> Section {
        Section((0..self.n).map(|_| self.sparse_polynomial(rng)).collect())
    }

    /// A homogeneous symbol of degree `k` (the `sl` part is absent in degree 0).
    pub fn homogeneous_symbol<R: Rng>(&self, rng: &mut R, k: u32) -> SymbolElement {
        let scalar = if rng.gen_bool(0.75) {
            self.phase_polynomial(rng, k)
        } else {
            PhasePolynomial::zero(self.m)
        };
        let sl = if k == 0 || rng.gen_bool(0.25) {
            PhaseMatrix::zero(self.n, self.m)
        } else {
            self.traceless_phase_matrix(rng, k - 1)
        };
        SymbolElement::homogeneous(k, sl, scalar).expect("generated homogeneous")
    }

    /// Traceless, entries homogeneous of fiber degree `d`.
    pub fn traceless_phase_matrix<R: Rng>(&self, rng: &mut R, d: u32) -> PhaseMatrix {
        let mut a = PhaseMatrix::zero(self.n, self.m);
        for i in 0..self.n {
            for j in 0..self.n {
                if rng.gen_bool(0.4) {
                    a.set(i, j, self.phase_polynomial(rng, d));
                }
            }
        }
        a.traceless_part()
    }

    pub fn degree<R: Rng>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..=self.max_order)
    }

    /// A sum of one to three homogeneous components of degree at most `max_order`.
    pub fn symbol<R: Rng>(&self, rng: &mut R) -> SymbolElement {
        let count = rng.gen_range(1..=3);
        (0..count).fold(SymbolElement::zero(self.m, self.n), |acc, _| {
            let k = self.degree(rng);
            acc.checked_add(&self.homogeneous_symbol(rng, k)).unwrap()
        })
    }

    pub fn j_element<R: Rng>(&self, rng: &mut R) -> SymbolElement {
        self.symbol(rng).decompose().0
    }

    pub fn pol_element<R: Rng>(&self, rng: &mut R) -> SymbolElement {
        self.symbol(rng).decompose().1
    }

    pub fn function_symbol<R: Rng>(&self, rng: &mut R) -> SymbolElement {
        SymbolElement::function(&self.polynomial(rng), self.n)
    }

    pub fn gl_symbol<R: Rng>(&self, rng: &mut R) -> GlSymbol {
        GlSymbol::new(self.traceless_matrix(rng), self.sparse_polynomial(rng)).unwrap()
    }

    pub fn morphism<R: Rng>(&self, rng: &mut R) -> MorphismSpec {
        let l = self.invertible_matrix(rng, self.m);
        let c = (0..self.m).map(|_| self.rational(rng)).collect();
        let g = self.invertible_matrix(rng, self.n);
        MorphismSpec::new(l, c, g).expect("invertible by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = trial_rng(7, "p", 3).gen();
        let b: u64 = trial_rng(7, "p", 3).gen();
        let c: u64 = trial_rng(7, "p", 4).gen();
        let d: u64 = trial_rng(7, "q", 3).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn generated_instances_respect_bounds() {
        let g = InstanceGen::new(2, 3, 2, 3);
        let mut rng = trial_rng(1, "bounds", 0);
        for _ in 0..50 {
            assert!(g.operator_in_p(&mut rng, 2).in_p_k(2));
            assert!(g.operator(&mut rng).diff_order() <= crate::diffop::Order::Finite(3));
            let k = g.degree(&mut rng);
            assert!(g.homogeneous_symbol(&mut rng, k).is_homogeneous(k));
            assert!(g.j_element(&mut rng).j_membership());
            assert!(g.traceless_matrix(&mut rng).trace().is_zero());
        }
        let p0 = g.operator_in_p(&mut rng, 0);
        assert!(p0.terms().all(|(a, c)| a.is_zero() && c.as_scalar().is_some()));
    }
}
