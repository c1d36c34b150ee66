//! Symbols of zeroth-order operators: `σ(gl(E)) ≅ sl(E) ⊕ C∞(M)·id`.
//!
//! An element `A + γ_u` is the pair of its degree-1 data (the traceless matrix
//! `A`) and its degree-0 data (the function `u`). Products and brackets are
//!
//! ```text
//! (A + γ_u)·(B + γ_v) = vA + uB + γ_{uv}
//! {A + γ_u, B + γ_v}  = [A, B]
//! ```

use crate::error::{check_dim, Error, NonInvertibleReason, Result};
use crate::matrix::MatrixPolynomial;
use crate::poly::Polynomial;
use crate::symbol::SymbolElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlSymbol {
    a: MatrixPolynomial,
    u: Polynomial,
}

impl GlSymbol {
    /// Builds `A + γ_u`; `A` must be traceless.
    pub fn new(a: MatrixPolynomial, u: Polynomial) -> Result<Self> {
        check_dim("gl symbol base dimension", a.base_dim(), u.base_dim())?;
        if !a.trace().is_zero() {
            return Err(Error::NonzeroTrace);
        }
        Ok(GlSymbol { a, u })
    }

    pub fn zero(m: usize, n: usize) -> Self {
        GlSymbol {
            a: MatrixPolynomial::zero(n, m),
            u: Polynomial::zero(m),
        }
    }

    pub fn one(m: usize, n: usize) -> Self {
        GlSymbol {
            a: MatrixPolynomial::zero(n, m),
            u: Polynomial::one(m),
        }
    }

    /// `B ↦ (B', tr(B)/n)`: the joint degree-1 and degree-0 symbol data of `B ∈ gl(E)`.
    pub fn embed(b: &MatrixPolynomial) -> Self {
        GlSymbol {
            a: b.traceless_part(),
            u: b.scalar_part(),
        }
    }

    pub fn sl_part(&self) -> &MatrixPolynomial {
        &self.a
    }

    pub fn function_part(&self) -> &Polynomial {
        &self.u
    }

    pub fn base_dim(&self) -> usize {
        self.u.base_dim()
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.u.is_zero()
    }

    fn check_same_bundle(&self, other: &Self) -> Result<()> {
        check_dim("gl symbol base dimension", self.base_dim(), other.base_dim())?;
        check_dim("gl symbol rank", self.rank(), other.rank())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_bundle(other)?;
        Ok(GlSymbol {
            a: &self.a + &other.a,
            u: &self.u + &other.u,
        })
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_bundle(other)?;
        Ok(GlSymbol {
            a: &self.a.scale_poly(&other.u) + &other.a.scale_poly(&self.u),
            u: &self.u * &other.u,
        })
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_same_bundle(other)?;
        Ok(GlSymbol {
            a: self.a.commutator(&other.a)?,
            u: Polynomial::zero(self.base_dim()),
        })
    }

    /// `(A + γ_u)⁻¹ = u⁻²(−A + γ_u)`, for a nonzero constant `u`.
    pub fn invert(&self) -> Result<Self> {
        let u = match self.u.constant_value() {
            Some(c) if !num_traits::Zero::is_zero(&c) => c,
            Some(_) => return Err(Error::NotInvertible(NonInvertibleReason::ZeroScalar)),
            None => {
                return Err(Error::NotInvertible(
                    NonInvertibleReason::NonConstantFunction,
                ))
            }
        };
        let u_inv = u.recip();
        let u_inv_sq = &u_inv * &u_inv;
        Ok(GlSymbol {
            a: self.a.scale(&-u_inv_sq),
            u: Polynomial::constant(self.base_dim(), u_inv),
        })
    }

    /// `A + γ_u ↦ (A + γ_0, u)`, splitting along `J(E) ⊕ C∞(M)`.
    pub fn j_decompose(&self) -> (Self, Polynomial) {
        let a = GlSymbol {
            a: self.a.clone(),
            u: Polynomial::zero(self.base_dim()),
        };
        (a, self.u.clone())
    }

    /// The same element in the full symbol algebra: `(A, 0)_1 + (0, u)_0`.
    pub fn to_symbol(&self) -> SymbolElement {
        let n = self.rank();
        let deg1 = SymbolElement::from_sl(1, self.a.to_phase()).expect("traceless by construction");
        deg1.checked_add(&SymbolElement::function(&self.u, n))
            .expect("same bundle")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn e(i: usize, j: usize) -> MatrixPolynomial {
        MatrixPolynomial::unit(2, 1, i, j)
    }

    fn c(v: i64) -> Polynomial {
        Polynomial::constant(1, int(v))
    }

    fn gl(a: MatrixPolynomial, u: Polynomial) -> GlSymbol {
        GlSymbol::new(a, u).unwrap()
    }

    #[test]
    fn embed_examples() {
        assert_eq!(GlSymbol::embed(&MatrixPolynomial::identity(2, 1)), gl(MatrixPolynomial::zero(2, 1), c(1)));
        assert_eq!(GlSymbol::embed(&e(0, 1)), gl(e(0, 1), c(0)));
        let d = MatrixPolynomial::diagonal(&[c(1), c(3)]);
        assert_eq!(GlSymbol::embed(&d), gl(MatrixPolynomial::diagonal(&[c(-1), c(1)]), c(2)));
    }

    #[test]
    fn product_examples() {
        assert!(gl(e(0, 1), c(0)).product(&gl(e(1, 0), c(0))).unwrap().is_zero());
        let u = Polynomial::parse(1, "x1 + 1").unwrap();
        let v = Polynomial::parse(1, "x1^2").unwrap();
        let z = MatrixPolynomial::zero(2, 1);
        assert_eq!(
            gl(z.clone(), u.clone()).product(&gl(z.clone(), v.clone())).unwrap(),
            gl(z, &u * &v)
        );
        let expected = gl(&e(0, 1).scale(&int(3)) + &e(1, 0).scale(&int(2)), c(6));
        assert_eq!(gl(e(0, 1), c(2)).product(&gl(e(1, 0), c(3))).unwrap(), expected);
    }

    #[test]
    fn bracket_examples() {
        let h = &e(0, 0) - &e(1, 1);
        let x = Polynomial::parse(1, "x1").unwrap();
        assert_eq!(
            gl(e(0, 1), x.clone()).bracket(&gl(e(1, 0), c(4))).unwrap(),
            gl(h.clone(), c(0))
        );
        assert!(gl(e(0, 1), c(1)).bracket(&gl(e(0, 1), x.clone())).unwrap().is_zero());
        assert_eq!(
            gl(e(0, 1).scale_poly(&x), c(0)).bracket(&gl(e(1, 0), c(0))).unwrap(),
            gl(h.scale_poly(&x), c(0))
        );
    }

    #[test]
    fn invert_examples() {
        let p = gl(e(0, 1), c(2));
        let inv = p.invert().unwrap();
        assert_eq!(
            inv,
            gl(e(0, 1).scale(&rat(-1, 4)), Polynomial::constant(1, rat(1, 2)))
        );
        assert_eq!(p.product(&inv).unwrap(), GlSymbol::one(1, 2));
        assert_eq!(GlSymbol::one(1, 2).invert().unwrap(), GlSymbol::one(1, 2));
        assert_eq!(
            gl(e(0, 1), c(0)).invert(),
            Err(Error::NotInvertible(NonInvertibleReason::ZeroScalar))
        );
        assert_eq!(
            gl(e(0, 1), Polynomial::parse(1, "x1^2 + 1").unwrap()).invert(),
            Err(Error::NotInvertible(NonInvertibleReason::NonConstantFunction))
        );
    }

    #[test]
    fn j_decompose_examples() {
        let x = Polynomial::parse(1, "x1").unwrap();
        let (a, f) = gl(e(0, 1), x.clone()).j_decompose();
        assert_eq!(a, gl(e(0, 1), c(0)));
        assert_eq!(f, x);
        assert!(a.product(&a).unwrap().is_zero());
        let (a, f) = gl(MatrixPolynomial::zero(2, 1), x.clone()).j_decompose();
        assert!(a.is_zero());
        assert_eq!(f, x);
    }

    #[test]
    fn rejects_traced_matrix() {
        assert_eq!(GlSymbol::new(e(0, 0), c(0)), Err(Error::NonzeroTrace));
    }
}
