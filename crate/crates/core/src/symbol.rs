//! The graded Poisson algebra of symbols `S = ⊕_k S^k`, `S^k = P^k / P^{k-1}`.
//!
//! A degree-`k` component is stored as a pair `(A, f)`:
//!
//! * `A`, an `sl(n)`-valued function on `T*M`, fiber-homogeneous of degree `k − 1`
//!   (the traceless coefficients at `|α| = k − 1`), always zero when `k = 0`;
//! * `f`, a scalar function on `T*M`, fiber-homogeneous of degree `k`
//!   (the ordinary principal symbol).
//!
//! On homogeneous components the operations are
//!
//! ```text
//! (A, f)_i · (B, g)_j   = (g A + f B, f g)_{i+j}
//! {(A, f)_i, (B, g)_j}  = ([A, B] + {f, B} + {A, g}, {f, g})_{i+j-1}
//! ```
//!
//! where `{·,·}` is the canonical bracket on `T*M`, applied entrywise to
//! matrices. Both agree with `σ_{i+j}(T∘D)` and `σ_{i+j−1}([T, D])` computed on
//! operator representatives; the test suites check that equivalence.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::diffop::{DifferentialOperator, Order};
use crate::error::{check_dim, Error, NonInvertibleReason, Result};
use crate::matrix::{MatrixPolynomial, PhaseMatrix};
use crate::poly::{PhasePolynomial, Polynomial};
use crate::rational::Rational;

/// One homogeneous piece `(sl, scalar)` of a symbol.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedComponent {
    sl: PhaseMatrix,
    scalar: PhasePolynomial,
}

impl GradedComponent {
    pub fn sl(&self) -> &PhaseMatrix {
        &self.sl
    }

    pub fn scalar(&self) -> &PhasePolynomial {
        &self.scalar
    }

    pub fn is_zero(&self) -> bool {
        self.sl.is_zero() && self.scalar.is_zero()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolElement {
    m: usize,
    n: usize,
    components: BTreeMap<u32, GradedComponent>,
}

impl SymbolElement {
    pub fn zero(m: usize, n: usize) -> Self {
        SymbolElement {
            m,
            n,
            components: BTreeMap::new(),
        }
    }

    pub fn one(m: usize, n: usize) -> Self {
        Self::constant(m, n, Rational::one())
    }

    pub fn constant(m: usize, n: usize, c: Rational) -> Self {
        Self::function(&Polynomial::constant(m, c), n)
    }

    /// `σ(γ_u)`: the degree-0 symbol with scalar part `u`.
    pub fn function(u: &Polynomial, n: usize) -> Self {
        let m = u.base_dim();
        let mut out = Self::zero(m, n);
        out.accumulate(0, PhaseMatrix::zero(n, m), u.to_phase());
        out
    }

    /// A homogeneous degree-`k` symbol, validating every component invariant.
    pub fn homogeneous(k: u32, sl: PhaseMatrix, scalar: PhasePolynomial) -> Result<Self> {
        let m = scalar.base_dim();
        let n = sl.rank();
        check_dim("sl-part base dimension", m, sl.base_dim())?;
        let sl_ok = if k == 0 {
            sl.is_zero()
        } else {
            sl.is_xi_homogeneous(k - 1)
        };
        if !sl_ok || !scalar.is_xi_homogeneous(k) {
            return Err(Error::NonHomogeneous { expected: k as i64 });
        }
        if !sl.trace().is_zero() {
            return Err(Error::NonzeroTrace);
        }
        let mut out = Self::zero(m, n);
        out.accumulate(k, sl, scalar);
        Ok(out)
    }

    /// `(0, f)_k`.
    pub fn from_scalar(k: u32, f: PhasePolynomial, n: usize) -> Result<Self> {
        let m = f.base_dim();
        Self::homogeneous(k, PhaseMatrix::zero(n, m), f)
    }

    /// `(A, 0)_k`.
    pub fn from_sl(k: u32, a: PhaseMatrix) -> Result<Self> {
        let m = a.base_dim();
        Self::homogeneous(k, a, PhasePolynomial::zero(m))
    }

    /// Adds `(sl, scalar)` into degree `k` without validation.
    fn accumulate(&mut self, k: u32, sl: PhaseMatrix, scalar: PhasePolynomial) {
        let entry = self.components.remove(&k);
        let comp = match entry {
            Some(c) => GradedComponent {
                sl: &c.sl + &sl,
                scalar: &c.scalar + &scalar,
            },
            None => GradedComponent { sl, scalar },
        };
        if !comp.is_zero() {
            self.components.insert(k, comp);
        }
    }

    pub fn base_dim(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &GradedComponent)> {
        self.components.iter().map(|(k, c)| (*k, c))
    }

    pub fn component(&self, k: u32) -> Option<&GradedComponent> {
        self.components.get(&k)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.components.keys().copied().collect()
    }

    /// True iff the only nonzero component (if any) has degree `k`.
    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.components.keys().all(|&d| d == k)
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut out = Self::zero(self.m, self.n);
        if let Some(c) = self.components.get(&k) {
            out.components.insert(k, c.clone());
        }
        out
    }

    fn check_same_bundle(&self, other: &Self) -> Result<()> {
        check_dim("symbol base dimension", self.m, other.m)?;
        check_dim("symbol rank", self.n, other.n)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_bundle(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.components {
            out.accumulate(k, c.sl.clone(), c.scalar.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.m, self.n);
        for (&k, comp) in &self.components {
            out.accumulate(k, comp.sl.scale(c), comp.scalar.scale(c));
        }
        out
    }

    /// The commutative product, bilinear over degrees.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_bundle(other)?;
        let mut out = Self::zero(self.m, self.n);
        for (&i, p) in &self.components {
            for (&j, q) in &other.components {
                let sl = &q.sl.scale_poly(&p.scalar) + &p.sl.scale_poly(&q.scalar);
                let scalar = &p.scalar * &q.scalar;
                out.accumulate(i + j, sl, scalar);
            }
        }
        Ok(out)
    }

    /// The Poisson bracket, lowering total degree by one.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_same_bundle(other)?;
        let mut out = Self::zero(self.m, self.n);
        for (&i, p) in &self.components {
            for (&j, q) in &other.components {
                if i + j == 0 {
                    // functions of x alone Poisson-commute
                    continue;
                }
                let sl = &(&p.sl.commutator(&q.sl)?
                    + &PhaseMatrix::bracket_scalar_left(&p.scalar, &q.sl)?)
                    + &p.sl.bracket_scalar_right(&q.scalar)?;
                let scalar = p.scalar.canonical_bracket(&q.scalar)?;
                out.accumulate(i + j - 1, sl, scalar);
            }
        }
        Ok(out)
    }

    /// The scalar principal symbol `δ(P) ∈ Pol(T*M)`, summed over degrees.
    pub fn delta(&self) -> PhasePolynomial {
        self.components
            .values()
            .fold(PhasePolynomial::zero(self.m), |acc, c| &acc + &c.scalar)
    }

    /// `θ(A) = (A, 0)_k` for a traceless `A` of fiber degree `k − 1`.
    pub fn theta(a: &PhaseMatrix, k: u32) -> Result<Self> {
        Self::from_sl(k, a.clone())
    }

    /// Membership in `J(E) = {P : P² = 0}`.
    pub fn j_membership(&self) -> bool {
        self.product(self).map(|sq| sq.is_zero()).unwrap_or(false)
    }

    /// Splits `P = j_part + pol_part` along `J(E) ⊕ Pol(T*M)`.
    pub fn decompose(&self) -> (Self, Self) {
        let mut j = Self::zero(self.m, self.n);
        let mut pol = Self::zero(self.m, self.n);
        for (&k, c) in &self.components {
            j.accumulate(k, c.sl.clone(), PhasePolynomial::zero(self.m));
            pol.accumulate(k, PhaseMatrix::zero(self.n, self.m), c.scalar.clone());
        }
        (j, pol)
    }

    /// Inverse of `u + f` with `u ∈ J(E)` and `f` a nonzero constant: `−f⁻²u + f⁻¹`.
    pub fn invert(&self) -> Result<Self> {
        let d = self.delta();
        let f = match d.constant_value() {
            Some(c) if !c.is_zero() => c,
            Some(_) => return Err(Error::NotInvertible(NonInvertibleReason::ZeroScalar)),
            None if d.xi_degrees().iter().any(|&k| k > 0) => {
                return Err(Error::NotInvertible(NonInvertibleReason::FiberDependent))
            }
            None => {
                return Err(Error::NotInvertible(
                    NonInvertibleReason::NonConstantFunction,
                ))
            }
        };
        let (u, _) = self.decompose();
        let f_inv = f.recip();
        let f_inv_sq = &f_inv * &f_inv;
        u.scale(&-f_inv_sq)
            .checked_add(&Self::constant(self.m, self.n, f_inv))
    }

    /// Decides `P ∈ {T : {T, γ_u} ∈ S^{i−1} for all u}` by bracketing with the
    /// coordinate functions `x_1..x_m`.
    ///
    /// Brackets with a degree-0 symbol `u` only see `∂u/∂x_a` multiplied by
    /// `∂P/∂ξ_a`, so vanishing outside degree `i − 1` against every coordinate
    /// function implies it for every `u`.
    pub fn lowering_set_membership(&self, i: u32) -> bool {
        let target = i as i64 - 1;
        (0..self.m).all(|a| {
            let xa = Self::function(&Polynomial::var(self.m, a), self.n);
            let b = self.bracket(&xa).expect("same bundle");
            b.degrees().iter().all(|&k| k as i64 == target)
        })
    }

    /// Syntactic form of `S^i + gl`: every component outside degree `i` is a
    /// function (degree 0) or a pure `sl` element in degree 1.
    pub fn in_graded_plus_gl(&self, i: u32) -> bool {
        self.components
            .iter()
            .all(|(&k, c)| k == i || k == 0 || (k == 1 && c.scalar.is_zero()))
    }

    /// `σ_i(T)`: zero above the order, the class of `T` at the order.
    pub fn sigma(t: &DifferentialOperator, i: i64) -> Result<Self> {
        let (m, n) = (t.base_dim(), t.rank());
        let ord = t.pson_order();
        if Order::Finite(i) < ord {
            return Err(Error::BelowOrder {
                degree: i,
                order: ord.finite().unwrap_or(i64::MIN),
            });
        }
        if Order::Finite(i) > ord {
            return Ok(Self::zero(m, n));
        }
        let k = i as u32;
        let mut sl = PhaseMatrix::zero(n, m);
        let mut scalar = PhasePolynomial::zero(m);
        for (alpha, a) in t.terms() {
            let d = alpha.degree();
            if d == k {
                scalar = &scalar + &a.scalar_part().to_phase_times_xi(alpha);
            } else if d + 1 == k {
                sl = &sl + &a.traceless_part().to_phase_times_xi(alpha);
            }
        }
        let mut out = Self::zero(m, n);
        out.accumulate(k, sl, scalar);
        Ok(out)
    }

    /// `σ_pson(T) = σ_{ord T}(T)`.
    pub fn sigma_pson(t: &DifferentialOperator) -> Result<Self> {
        match t.pson_order() {
            Order::NegInf => Err(Error::ZeroOperator),
            Order::Finite(k) => Self::sigma(t, k),
        }
    }

    /// Canonical representative of a homogeneous degree-`k` symbol:
    /// `A ξ^α ↦ A ∂^α`, `u ξ^β ↦ u·id ∂^β`.
    pub fn lift(&self, k: u32) -> Result<DifferentialOperator> {
        if !self.is_homogeneous(k) {
            return Err(Error::NonHomogeneous { expected: k as i64 });
        }
        let mut terms = Vec::new();
        if let Some(c) = self.components.get(&k) {
            for (alpha, a) in c.sl.split_by_xi() {
                terms.push((alpha, a));
            }
            for (beta, u) in c.scalar.split_by_xi() {
                terms.push((beta, MatrixPolynomial::scalar(self.n, &u)));
            }
        }
        Ok(DifferentialOperator::from_terms(self.m, self.n, terms))
    }
}

impl fmt::Debug for SymbolElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(k, c)| format!("(sl: {:?}, scalar: {})_{k}", c.sl, c.scalar))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiIndex;
    use crate::rational::{int, rat};

    const M: usize = 1;
    const N: usize = 2;

    fn q(s: &str) -> PhasePolynomial {
        PhasePolynomial::parse(M, s).unwrap()
    }

    fn e(i: usize, j: usize) -> PhaseMatrix {
        PhaseMatrix::unit(N, M, i, j)
    }

    fn sl(k: u32, a: PhaseMatrix) -> SymbolElement {
        SymbolElement::from_sl(k, a).unwrap()
    }

    fn sc(k: u32, f: &str) -> SymbolElement {
        SymbolElement::from_scalar(k, q(f), N).unwrap()
    }

    fn e_d(i: usize, j: usize, order: u32) -> DifferentialOperator {
        DifferentialOperator::term(M, MultiIndex::new(vec![order]), MatrixPolynomial::unit(N, M, i, j))
    }

    #[test]
    fn sigma_examples() {
        let d1 = DifferentialOperator::partial(M, N, 0);
        assert_eq!(SymbolElement::sigma(&d1, 1).unwrap(), sc(1, "xi1"));
        assert_eq!(
            SymbolElement::sigma(&e_d(0, 1, 1), 2).unwrap(),
            sl(2, e(0, 1).scale_poly(&q("xi1")))
        );
        assert!(SymbolElement::sigma(&e_d(0, 1, 1), 3).unwrap().is_zero());
        assert!(matches!(
            SymbolElement::sigma(&e_d(0, 1, 1), 1),
            Err(Error::BelowOrder { .. })
        ));
    }

    #[test]
    fn sigma_pson_examples() {
        let u = Polynomial::parse(M, "x1^2 + 2").unwrap();
        assert_eq!(
            SymbolElement::sigma_pson(&DifferentialOperator::gamma(&u, N)).unwrap(),
            SymbolElement::function(&u, N)
        );
        let a = DifferentialOperator::matrix(MatrixPolynomial::unit(N, M, 0, 1));
        assert_eq!(SymbolElement::sigma_pson(&a).unwrap(), sl(1, e(0, 1)));
        let diag = MatrixPolynomial::diagonal(&[
            Polynomial::constant(M, int(1)),
            Polynomial::constant(M, int(3)),
        ]);
        let expected = PhaseMatrix::diagonal(&[q("-1"), q("1")]);
        assert_eq!(
            SymbolElement::sigma_pson(&DifferentialOperator::matrix(diag)).unwrap(),
            sl(1, expected)
        );
        assert_eq!(
            SymbolElement::sigma_pson(&DifferentialOperator::zero(M, N)),
            Err(Error::ZeroOperator)
        );
    }

    #[test]
    fn lift_examples() {
        assert_eq!(sl(2, e(0, 1).scale_poly(&q("xi1"))).lift(2).unwrap(), e_d(0, 1, 1));
        let d1 = DifferentialOperator::partial(M, N, 0);
        assert_eq!(sc(2, "xi1^2").lift(2).unwrap(), d1.compose(&d1).unwrap());
        assert!(SymbolElement::zero(M, N).lift(3).unwrap().is_zero());
        let mixed = sc(1, "xi1").checked_add(&sc(2, "xi1^2")).unwrap();
        assert!(mixed.lift(2).is_err());
    }

    #[test]
    fn product_examples() {
        assert!(sl(1, e(0, 1)).product(&sl(1, e(1, 0))).unwrap().is_zero());
        assert_eq!(
            sc(0, "x1").product(&sl(1, e(0, 1))).unwrap(),
            sl(1, e(0, 1).scale_poly(&q("x1")))
        );
        assert_eq!(
            sl(2, e(0, 1).scale_poly(&q("xi1"))).product(&sc(1, "xi1")).unwrap(),
            sl(3, e(0, 1).scale_poly(&q("xi1^2")))
        );
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(sc(1, "xi1").bracket(&sc(0, "x1")).unwrap(), sc(0, "1"));
        let h = &e(0, 0) - &e(1, 1);
        assert_eq!(sl(1, e(0, 1)).bracket(&sl(1, e(1, 0))).unwrap(), sl(1, h));
        assert_eq!(
            sc(1, "xi1").bracket(&sl(1, e(0, 1).scale_poly(&q("x1")))).unwrap(),
            sl(1, e(0, 1))
        );
    }

    #[test]
    fn delta_examples() {
        assert!(sl(2, e(0, 1).scale_poly(&q("xi1"))).delta().is_zero());
        assert_eq!(sc(2, "xi1^2").delta(), q("xi1^2"));
        let m = 2;
        let p = SymbolElement::homogeneous(
            1,
            PhaseMatrix::unit(N, m, 0, 1),
            PhasePolynomial::parse(m, "x2 xi1").unwrap(),
        )
        .unwrap()
        .checked_add(&SymbolElement::constant(m, N, int(5)))
        .unwrap();
        assert_eq!(p.delta(), PhasePolynomial::parse(m, "x2 xi1 + 5").unwrap());
    }

    #[test]
    fn theta_examples() {
        let a = e(0, 1).scale_poly(&q("xi1"));
        assert_eq!(SymbolElement::theta(&a, 2).unwrap(), sl(2, a.clone()));
        assert!(SymbolElement::theta(&a, 2).unwrap().delta().is_zero());
        assert!(SymbolElement::theta(&PhaseMatrix::zero(N, M), 3).unwrap().is_zero());
        assert_eq!(SymbolElement::theta(&e(0, 0), 1), Err(Error::NonzeroTrace));
        assert!(matches!(SymbolElement::theta(&a, 1), Err(Error::NonHomogeneous { .. })));
    }

    #[test]
    fn j_membership_examples() {
        assert!(sl(2, e(0, 1).scale_poly(&q("xi1"))).j_membership());
        assert!(!sc(1, "xi1").j_membership());
        assert!(SymbolElement::zero(M, N).j_membership());
    }

    #[test]
    fn decompose_examples() {
        let m = 2;
        let p = SymbolElement::homogeneous(
            1,
            PhaseMatrix::unit(N, m, 0, 1),
            PhasePolynomial::parse(m, "x2 xi1").unwrap(),
        )
        .unwrap();
        let (j, pol) = p.decompose();
        assert_eq!(j, SymbolElement::from_sl(1, PhaseMatrix::unit(N, m, 0, 1)).unwrap());
        assert_eq!(
            pol,
            SymbolElement::from_scalar(1, PhasePolynomial::parse(m, "x2 xi1").unwrap(), N).unwrap()
        );
        let s = sc(2, "xi1^2");
        assert_eq!(s.decompose(), (SymbolElement::zero(M, N), s.clone()));
        let a = sl(2, e(0, 1).scale_poly(&q("xi1")));
        assert_eq!(a.decompose(), (a.clone(), SymbolElement::zero(M, N)));
    }

    #[test]
    fn invert_examples() {
        let u = sl(2, e(0, 1).scale_poly(&q("xi1")));
        let p = u.checked_add(&SymbolElement::constant(M, N, int(2))).unwrap();
        let inv = p.invert().unwrap();
        let expected = u
            .scale(&rat(-1, 4))
            .checked_add(&SymbolElement::constant(M, N, rat(1, 2)))
            .unwrap();
        assert_eq!(inv, expected);
        assert_eq!(p.product(&inv).unwrap(), SymbolElement::one(M, N));
        assert_eq!(SymbolElement::one(M, N).invert().unwrap(), SymbolElement::one(M, N));
        assert_eq!(
            sc(0, "x1").invert(),
            Err(Error::NotInvertible(NonInvertibleReason::NonConstantFunction))
        );
        assert_eq!(
            u.invert(),
            Err(Error::NotInvertible(NonInvertibleReason::ZeroScalar))
        );
        let fiber = sc(1, "xi1").checked_add(&SymbolElement::one(M, N)).unwrap();
        assert_eq!(
            fiber.invert(),
            Err(Error::NotInvertible(NonInvertibleReason::FiberDependent))
        );
    }

    #[test]
    fn lowering_set_examples() {
        assert!(sl(1, e(0, 1).scale_poly(&q("x1"))).lowering_set_membership(3));
        assert!(sc(2, "xi1^2").lowering_set_membership(2));
        assert!(!sc(1, "xi1").lowering_set_membership(3));
        assert!(sc(1, "xi1").lowering_set_membership(1));
        assert!(sc(0, "x1").lowering_set_membership(0));
    }

    #[test]
    fn homogeneous_rejects_bad_components() {
        assert!(SymbolElement::homogeneous(0, e(0, 1), q("0")).is_err());
        assert!(SymbolElement::homogeneous(2, PhaseMatrix::zero(N, M), q("xi1")).is_err());
        assert_eq!(
            SymbolElement::homogeneous(1, e(0, 0), q("0")),
            Err(Error::NonzeroTrace)
        );
    }
}
