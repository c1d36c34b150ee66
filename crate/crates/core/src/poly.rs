//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Two variable spaces share one implementation: [`Base`] polynomials live in
//! the coordinates `x1..xm` of the base domain, [`Phase`] polynomials live on
//! the cotangent bundle with coordinates `x1..xm, xi1..xim`. Terms are keyed by
//! a [`MultiIndex`] ordered graded-lexicographically; phase keys are the
//! concatenation `(x-exponents, xi-exponents)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::rational::{format_rational, is_unit_magnitude, parse_rational, Rational};

/// Exponent vector of a monomial, or of a derivative `∂^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, if `other ≤ self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        MultiIndex(e)
    }

    pub fn split_at(&self, mid: usize) -> (MultiIndex, MultiIndex) {
        let (a, b) = self.0.split_at(mid);
        (MultiIndex(a.to_vec()), MultiIndex(b.to_vec()))
    }

    /// `∏ binom(self_i, sub_i)`.
    pub fn binomial(&self, sub: &MultiIndex) -> BigInt {
        let mut acc = BigInt::one();
        for (&n, &k) in self.0.iter().zip(&sub.0) {
            acc *= num_integer::binomial(BigInt::from(n), BigInt::from(k));
        }
        acc
    }

    /// All `γ` with `γ ≤ self` componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }

    /// All exponent vectors of length `len` with total degree exactly `degree`,
    /// in ascending graded-lex order.
    pub fn all_of_degree(len: usize, degree: u32) -> Vec<MultiIndex> {
        fn rec(len: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == len {
                prefix.push(degree);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=degree {
                prefix.push(e);
                rec(len, degree - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if len == 0 {
            if degree == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(len, degree, &mut Vec::with_capacity(len), &mut out);
        out
    }

    pub fn all_up_to_degree(len: usize, max_degree: u32) -> Vec<MultiIndex> {
        (0..=max_degree)
            .flat_map(|d| Self::all_of_degree(len, d))
            .collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable layout of a polynomial ring over a base of dimension `m`.
pub trait VarSpace:
    Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static
{
    const PHASE: bool;

    fn nvars(m: usize) -> usize {
        if Self::PHASE {
            2 * m
        } else {
            m
        }
    }
}

/// Base coordinates `x1..xm`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Base;

/// Phase-space coordinates `x1..xm, xi1..xim`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Phase;

impl VarSpace for Base {
    const PHASE: bool = false;
}

impl VarSpace for Phase {
    const PHASE: bool = true;
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S: VarSpace> {
    m: usize,
    terms: BTreeMap<MultiIndex, Rational>,
    _space: PhantomData<S>,
}

/// A function `u ∈ C∞(M)` at desk scale: a polynomial in `x1..xm`.
pub type Polynomial = Poly<Base>;

/// A function on `T*M`: a polynomial in `x1..xm, xi1..xim`.
pub type PhasePolynomial = Poly<Phase>;

impl<S: VarSpace> Poly<S> {
    pub fn zero(m: usize) -> Self {
        Poly {
            m,
            terms: BTreeMap::new(),
            _space: PhantomData,
        }
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        Self::monomial(m, MultiIndex::zero(S::nvars(m)), c)
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Rational::one())
    }

    /// The coordinate function with index `i` (`0..nvars`).
    pub fn var(m: usize, i: usize) -> Self {
        assert!(i < S::nvars(m), "variable index out of range");
        Self::monomial(m, MultiIndex::unit(S::nvars(m), i), Rational::one())
    }

    pub fn monomial(m: usize, exponents: MultiIndex, c: Rational) -> Self {
        assert_eq!(exponents.len(), S::nvars(m), "monomial length mismatch");
        let mut p = Self::zero(m);
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Sums the given terms; repeated keys accumulate and zeros are dropped.
    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut p = Self::zero(m);
        for (k, c) in terms {
            assert_eq!(k.len(), S::nvars(m), "monomial length mismatch");
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, key: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn base_dim(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        S::nvars(self.m)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &MultiIndex) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` if this polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                k.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dim("polynomial base dimension", self.m, other.m)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_dim("polynomial base dimension", self.m, other.m)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_dim("polynomial base dimension", self.m, other.m)?;
        let mut out = Self::zero(self.m);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term(ka.add(kb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        Poly {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
            _space: PhantomData,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.m);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars(), "variable index out of range");
        let mut out = Self::zero(self.m);
        for (k, c) in &self.terms {
            let e = k.get(var);
            if e == 0 {
                continue;
            }
            let mut exps = k.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(MultiIndex::new(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// `∂^α` over all variables.
    pub fn derivative_multi(&self, alpha: &MultiIndex) -> Self {
        let mut p = self.clone();
        for (var, &e) in alpha.exponents().iter().enumerate() {
            for _ in 0..e {
                p = p.derivative(var);
            }
            if p.is_zero() {
                break;
            }
        }
        p
    }

    /// Replaces every variable `i` by `images[i]`.
    pub fn substitute(&self, images: &[Poly<S>]) -> Self {
        assert_eq!(images.len(), self.nvars(), "substitution arity mismatch");
        let mut powers: Vec<Vec<Poly<S>>> = images.iter().map(|p| vec![Self::one(p.m), p.clone()]).collect();
        let target_m = images.first().map_or(self.m, |p| p.m);
        let mut out = Self::zero(target_m);
        for (k, c) in &self.terms {
            let mut term = Self::constant(target_m, c.clone());
            for (var, &e) in k.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[var];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            for (tk, tc) in term.terms {
                out.add_term(tk, tc);
            }
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self::from_terms(self.m, self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    fn var_name(&self, i: usize) -> String {
        if S::PHASE && i >= self.m {
            format!("xi{}", i - self.m + 1)
        } else {
            format!("x{}", i + 1)
        }
    }

    /// Canonical text, e.g. `3/2 x1^2 xi1 - 1`; terms in descending graded-lex order.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            let mono: Vec<String> = k
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.var_name(v)
                    } else {
                        format!("{}^{}", self.var_name(v), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else {
                if !is_unit_magnitude(&mag) {
                    out.push_str(&format_rational(&mag));
                    out.push(' ');
                }
                out.push_str(&mono.join(" "));
            }
        }
        out
    }

    /// Parses the canonical text form. Factors may be separated by spaces or `*`.
    pub fn parse(m: usize, text: &str) -> Result<Self> {
        Parser::<S>::new(m, text).parse()
    }
}

impl Poly<Base> {
    /// The same function viewed on phase space (independent of `xi`).
    pub fn to_phase(&self) -> Poly<Phase> {
        self.to_phase_times_xi(&MultiIndex::zero(self.m))
    }

    /// `self · xi^alpha` on phase space.
    pub fn to_phase_times_xi(&self, xi: &MultiIndex) -> Poly<Phase> {
        Poly::from_terms(
            self.m,
            self.terms.iter().map(|(k, c)| (k.concat(xi), c.clone())),
        )
    }

    /// `u(x)` evaluated at a point with rational coordinates.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.m);
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in k.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        acc
    }
}

impl Poly<Phase> {
    /// Embeds a base polynomial.
    pub fn from_base(p: &Poly<Base>) -> Self {
        p.to_phase()
    }

    pub fn x_var(m: usize, a: usize) -> Self {
        Self::var(m, a)
    }

    pub fn xi_var(m: usize, a: usize) -> Self {
        Self::var(m, m + a)
    }

    pub fn d_dx(&self, a: usize) -> Self {
        self.derivative(a)
    }

    pub fn d_dxi(&self, a: usize) -> Self {
        self.derivative(self.m + a)
    }

    /// The fiber exponent of a key.
    pub fn xi_part(&self, key: &MultiIndex) -> MultiIndex {
        key.split_at(self.m).1
    }

    /// True iff every term has fiber degree exactly `d` (the zero polynomial qualifies).
    pub fn is_xi_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|k| self.xi_part(k).degree() == d)
    }

    /// The fiber-degree-`d` part.
    pub fn xi_homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.m,
            self.terms
                .iter()
                .filter(|(k, _)| self.xi_part(k).degree() == d)
                .map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    /// Fiber degrees present, ascending.
    pub fn xi_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|k| self.xi_part(k).degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Writes `self = Σ_α u_α(x) xi^α` and returns the map `α ↦ u_α`.
    pub fn split_by_xi(&self) -> BTreeMap<MultiIndex, Poly<Base>> {
        let mut out: BTreeMap<MultiIndex, Poly<Base>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let (x, xi) = k.split_at(self.m);
            out.entry(xi)
                .or_insert_with(|| Poly::zero(self.m))
                .add_term(x, c.clone());
        }
        out
    }

    /// `{f, g} = Σ_a (∂f/∂xi_a ∂g/∂x_a − ∂f/∂x_a ∂g/∂xi_a)`; sign fixed by `{xi1, x1} = 1`.
    pub fn canonical_bracket(&self, other: &Self) -> Result<Self> {
        check_dim("polynomial base dimension", self.m, other.m)?;
        let mut out = Self::zero(self.m);
        for a in 0..self.m {
            let t1 = &self.d_dxi(a) * &other.d_dx(a);
            let t2 = &self.d_dx(a) * &other.d_dxi(a);
            out = &(&out + &t1) - &t2;
        }
        Ok(out)
    }
}

impl<S: VarSpace> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<S: VarSpace> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_canonical_string())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, S: VarSpace> $trait<&'a Poly<S>> for &'a Poly<S> {
            type Output = Poly<S>;
            fn $method(self, rhs: &'a Poly<S>) -> Poly<S> {
                self.$checked(rhs).expect("polynomial dimension mismatch")
            }
        }

        impl<S: VarSpace> $trait<Poly<S>> for Poly<S> {
            type Output = Poly<S>;
            fn $method(self, rhs: Poly<S>) -> Poly<S> {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl<S: VarSpace> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        self.map_coefficients(|c| -c.clone())
    }
}

impl<S: VarSpace> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -&self
    }
}

struct Parser<'t, S: VarSpace> {
    m: usize,
    text: &'t str,
    pos: usize,
    _space: PhantomData<S>,
}

impl<'t, S: VarSpace> Parser<'t, S> {
    fn new(m: usize, text: &'t str) -> Self {
        Parser {
            m,
            text,
            pos: 0,
            _space: PhantomData,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.text))
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'t str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if f(c)) {
            self.pos += self.peek().unwrap().len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn parse(mut self) -> Result<Poly<S>> {
        let mut out = Poly::<S>::zero(self.m);
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut sign = Rational::one();
        let mut first = true;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                _ if first => {}
                None => break,
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            first = false;
            self.skip_ws();
            let (key, coeff) = self.term()?;
            out.add_term(key, coeff * &sign);
            sign = Rational::one();
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(MultiIndex, Rational)> {
        let nvars = S::nvars(self.m);
        let mut exps = vec![0u32; nvars];
        let mut coeff = Rational::one();
        let mut factors = 0;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') if factors > 0 => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if c.is_ascii_digit() => {
                    let num = self.take_while(|c| c.is_ascii_digit());
                    let text = if self.peek() == Some('/') {
                        self.pos += 1;
                        let den = self.take_while(|c| c.is_ascii_digit());
                        if den.is_empty() {
                            return Err(self.err("missing denominator"));
                        }
                        format!("{num}/{den}")
                    } else {
                        num.to_string()
                    };
                    coeff *= parse_rational(&text)?;
                }
                Some('x') => {
                    self.pos += 1;
                    let fiber = if self.peek() == Some('i') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let idx = self.take_while(|c| c.is_ascii_digit());
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| self.err("expected variable index"))?;
                    if idx == 0 || idx > self.m {
                        return Err(self.err("variable index out of range"));
                    }
                    if fiber && !S::PHASE {
                        return Err(self.err("fiber variable in a base polynomial"));
                    }
                    let var = if fiber { self.m + idx - 1 } else { idx - 1 };
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let digits = self.take_while(|c| c.is_ascii_digit());
                        e = digits.parse().map_err(|_| self.err("expected exponent"))?;
                    }
                    exps[var] += e;
                }
                _ => break,
            }
            factors += 1;
        }
        if factors == 0 {
            return Err(self.err("expected a term"));
        }
        Ok((MultiIndex::new(exps), coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(m: usize, s: &str) -> Polynomial {
        Polynomial::parse(m, s).unwrap()
    }

    fn q(m: usize, s: &str) -> PhasePolynomial {
        PhasePolynomial::parse(m, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(1, "x1 + 1") * &p(1, "x1 - 1"), p(1, "x1^2 - 1"));
    }

    #[test]
    fn additive_identity() {
        let a = p(2, "3/2 x1^2 x2 - x2 + 7");
        assert_eq!(&Polynomial::zero(2) + &a, a);
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        assert!(p(1, "x1").checked_add(&p(2, "x2")).is_err());
        assert!(p(1, "x1").checked_mul(&p(2, "x2")).is_err());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(q(1, "x1^2 xi1").d_dx(0), q(1, "2 x1 xi1"));
        assert!(q(1, "x1").d_dxi(0).is_zero());
        assert_eq!(q(2, "xi1 xi2").d_dxi(0), q(2, "xi2"));
        assert!(q(2, "5").d_dx(1).is_zero());
    }

    #[test]
    fn canonical_bracket_examples() {
        let m = 1;
        assert_eq!(q(m, "xi1").canonical_bracket(&q(m, "x1")).unwrap(), q(m, "1"));
        assert_eq!(q(m, "xi1^2").canonical_bracket(&q(m, "x1")).unwrap(), q(m, "2 xi1"));
        let f = q(2, "x1 xi2 + xi1^2 x2");
        assert!(f.canonical_bracket(&f).unwrap().is_zero());
    }

    #[test]
    fn canonical_text() {
        let a = PhasePolynomial::from_terms(
            1,
            [
                (MultiIndex::new(vec![2, 1]), rat(3, 2)),
                (MultiIndex::new(vec![0, 0]), int(-1)),
            ],
        );
        assert_eq!(a.to_string(), "3/2 x1^2 xi1 - 1");
        assert_eq!(q(1, "3/2 x1^2 xi1 - 1"), a);
        assert_eq!(p(2, "-x1 + x2").to_string(), "-x1 + x2");
        assert_eq!(p(2, "x2^2 + x1 x2 + x1^2").to_string(), "x1^2 + x1 x2 + x2^2");
        assert_eq!(p(1, "2*x1*x1").to_string(), "2 x1^2");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!(Polynomial::parse(1, "").is_err());
        assert!(Polynomial::parse(1, "x2").is_err());
        assert!(Polynomial::parse(1, "xi1").is_err());
        assert!(Polynomial::parse(1, "x1 +").is_err());
        assert!(Polynomial::parse(1, "y").is_err());
        assert!(PhasePolynomial::parse(1, "xi1^").is_err());
    }

    #[test]
    fn substitution_is_composition() {
        // u(x) = x1^2 + x2, x1 -> x1 + 1, x2 -> 2 x1
        let u = p(2, "x1^2 + x2");
        let images = [p(2, "x1 + 1"), p(2, "2 x1")];
        assert_eq!(u.substitute(&images), p(2, "x1^2 + 4 x1 + 1"));
    }

    #[test]
    fn split_by_xi_round_trips() {
        let f = q(2, "x1 xi1 + 3 xi1 + x2^2 xi2^2 - 1");
        let parts = f.split_by_xi();
        let back = parts
            .iter()
            .fold(PhasePolynomial::zero(2), |acc, (xi, u)| &acc + &u.to_phase_times_xi(xi));
        assert_eq!(back, f);
        assert_eq!(parts[&MultiIndex::new(vec![1, 0])], p(2, "x1 + 3"));
        assert!(!f.is_xi_homogeneous(1));
        assert_eq!(f.xi_degrees(), vec![0, 1, 2]);
    }

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex::new(vec![0, 2]);
        let b = MultiIndex::new(vec![1, 1]);
        let c = MultiIndex::new(vec![3, 0]);
        assert!(a < b && b < c);
        assert_eq!(MultiIndex::all_of_degree(2, 2).len(), 3);
        assert_eq!(MultiIndex::all_up_to_degree(2, 2).len(), 6);
        assert_eq!(MultiIndex::new(vec![2, 1]).sub_indices().len(), 6);
        assert_eq!(
            MultiIndex::new(vec![3, 2]).binomial(&MultiIndex::new(vec![1, 1])),
            BigInt::from(6)
        );
    }
}
