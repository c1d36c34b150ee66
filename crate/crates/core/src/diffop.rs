//! Matrix-coefficient differential operators `Σ_α A_α(x) ∂^α` acting on
//! sections of the trivial bundle `U × ℝⁿ → U ⊆ ℝᵐ`.
//!
//! Two filtrations live here. `D^k` is the usual one (differential order at
//! most `k`). `P^k` is the quantum-Poisson filtration generated by the
//! multiplication operators `γ_u`: an operator lies in `P^k` iff its
//! coefficients at `|α| = k` are scalar matrices and it has no terms with
//! `|α| > k`. In particular a constant non-scalar matrix has `P`-order 1.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{check_dim, Result};
use crate::matrix::MatrixPolynomial;
use crate::poly::{MultiIndex, Polynomial};
use crate::rational::Rational;

/// A filtration degree: either a finite integer or `-∞` (the zero operator).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    NegInf,
    Finite(i64),
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::NegInf => None,
            Order::Finite(k) => Some(k),
        }
    }

    /// `self + other`, absorbing at `-∞`.
    pub fn plus(self, other: Order) -> Order {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::NegInf,
        }
    }

    pub fn shift(self, by: i64) -> Order {
        match self {
            Order::Finite(a) => Order::Finite(a + by),
            Order::NegInf => Order::NegInf,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::NegInf => f.write_str("-inf"),
            Order::Finite(k) => write!(f, "{k}"),
        }
    }
}

/// A section of `U × ℝⁿ`: an `n`-vector of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section(pub Vec<Polynomial>);

impl Section {
    pub fn zero(n: usize, m: usize) -> Self {
        Section(vec![Polynomial::zero(m); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.0
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DifferentialOperator {
    m: usize,
    n: usize,
    terms: BTreeMap<MultiIndex, MatrixPolynomial>,
}

impl DifferentialOperator {
    pub fn zero(m: usize, n: usize) -> Self {
        DifferentialOperator {
            m,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(m: usize, n: usize) -> Self {
        Self::gamma(&Polynomial::one(m), n)
    }

    /// The multiplication operator `γ_u : s ↦ u·s`.
    pub fn gamma(u: &Polynomial, n: usize) -> Self {
        let m = u.base_dim();
        Self::term(m, MultiIndex::zero(m), MatrixPolynomial::scalar(n, u))
    }

    /// The order-zero operator `s ↦ A·s`.
    pub fn matrix(a: MatrixPolynomial) -> Self {
        let m = a.base_dim();
        Self::term(m, MultiIndex::zero(m), a)
    }

    /// `∂/∂x_a` acting componentwise.
    pub fn partial(m: usize, n: usize, a: usize) -> Self {
        Self::term(m, MultiIndex::unit(m, a), MatrixPolynomial::identity(n, m))
    }

    /// The single term `A ∂^α`.
    pub fn term(m: usize, alpha: MultiIndex, a: MatrixPolynomial) -> Self {
        Self::from_terms(m, a.rank(), [(alpha, a)])
    }

    /// Sums the given terms; repeated `α` accumulate and zero coefficients are dropped.
    pub fn from_terms(
        m: usize,
        n: usize,
        terms: impl IntoIterator<Item = (MultiIndex, MatrixPolynomial)>,
    ) -> Self {
        let mut op = Self::zero(m, n);
        for (alpha, a) in terms {
            assert_eq!(alpha.len(), m, "derivative multi-index length mismatch");
            assert_eq!(a.rank(), n, "coefficient rank mismatch");
            assert_eq!(a.base_dim(), m, "coefficient base dimension mismatch");
            op.add_term(alpha, a);
        }
        op
    }

    fn add_term(&mut self, alpha: MultiIndex, a: MatrixPolynomial) {
        if a.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(a);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &a;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn base_dim(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms `(α, A_α)` in ascending graded-lex order of `α`.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MatrixPolynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> MatrixPolynomial {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| MatrixPolynomial::zero(self.n, self.m))
    }

    /// Terms with `|α| = degree`.
    pub fn terms_of_degree(&self, degree: u32) -> impl Iterator<Item = (&MultiIndex, &MatrixPolynomial)> {
        self.terms.iter().filter(move |(a, _)| a.degree() == degree)
    }

    fn check_same_bundle(&self, other: &Self) -> Result<()> {
        check_dim("operator base dimension", self.m, other.m)?;
        check_dim("operator rank", self.n, other.n)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_bundle(other)?;
        let mut out = self.clone();
        for (alpha, a) in &other.terms {
            out.add_term(alpha.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m, self.n);
        }
        DifferentialOperator {
            m: self.m,
            n: self.n,
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a.scale(c))).collect(),
        }
    }

    /// `self ∘ other` by the Leibniz rule:
    /// `(A∂^α)∘(B∂^β) = Σ_{γ≤α} binom(α,γ) A·∂^γ(B) ∂^{α−γ+β}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_bundle(other)?;
        let mut out = Self::zero(self.m, self.n);
        for (alpha, a) in &self.terms {
            let splits = alpha.sub_indices();
            for (beta, b) in &other.terms {
                for gamma in &splits {
                    let db = b.derivative_multi(gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let coeff = Rational::from_integer(alpha.binomial(gamma));
                    let rest = alpha.checked_sub(gamma).expect("gamma <= alpha");
                    out.add_term(rest.add(beta), a.checked_mul(&db)?.scale(&coeff));
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.checked_sub(&other.compose(self)?)
    }

    /// `(Σ A_α ∂^α)(s) = Σ A_α · ∂^α s`.
    pub fn apply(&self, s: &Section) -> Result<Section> {
        check_dim("section length", self.n, s.len())?;
        for c in s.components() {
            check_dim("section base dimension", self.m, c.base_dim())?;
        }
        let mut out = vec![Polynomial::zero(self.m); self.n];
        for (alpha, a) in &self.terms {
            let ds: Vec<Polynomial> = s.0.iter().map(|c| c.derivative_multi(alpha)).collect();
            for (i, slot) in out.iter_mut().enumerate() {
                for (j, d) in ds.iter().enumerate() {
                    let e = a.get(i, j);
                    if e.is_zero() || d.is_zero() {
                        continue;
                    }
                    *slot = &*slot + &(e * d);
                }
            }
        }
        Ok(Section(out))
    }

    /// Usual differential order: `max |α|` over nonzero terms.
    pub fn diff_order(&self) -> Order {
        self.terms
            .keys()
            .map(|a| a.degree())
            .max()
            .map_or(Order::NegInf, |d| Order::Finite(d as i64))
    }

    /// Least `k` with `self ∈ P^k`: the differential order `d`, plus one unless
    /// every coefficient at `|α| = d` is a scalar matrix.
    pub fn pson_order(&self) -> Order {
        match self.diff_order() {
            Order::NegInf => Order::NegInf,
            Order::Finite(d) => {
                let top_scalar = self
                    .terms_of_degree(d as u32)
                    .all(|(_, a)| a.as_scalar().is_some());
                Order::Finite(if top_scalar { d } else { d + 1 })
            }
        }
    }

    /// Membership in `P^k` (local-form criterion).
    pub fn in_p_k(&self, k: i64) -> bool {
        self.pson_order() <= Order::Finite(k)
    }

    /// Membership in `D^k`.
    pub fn in_d_k(&self, k: i64) -> bool {
        self.diff_order() <= Order::Finite(k)
    }
}

impl fmt::Debug for DifferentialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(alpha, a)| format!("{a:?}∂^{:?}", alpha.exponents()))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
