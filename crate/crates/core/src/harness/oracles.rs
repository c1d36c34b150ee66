//! Reference computations that avoid the closed-form code paths they check.

use crate::diffop::{DifferentialOperator, Order, Section};
use crate::error::Result;
use crate::matrix::RatMatrix;
use crate::morphism::{InducedMap, MorphismSpec};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::symbol::SymbolElement;

/// The functions `x_a` and `x_a x_b` used to probe commutators.
pub fn probe_functions(m: usize) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = (0..m).map(|a| Polynomial::var(m, a)).collect();
    for a in 0..m {
        for b in a..m {
            out.push(&Polynomial::var(m, a) * &Polynomial::var(m, b));
        }
    }
    out
}

/// Membership in `P^k` from the recursive definition: `P^{-1} = 0`,
/// `P^0 = {γ_u}`, and `T ∈ P^k` iff `[T, γ_u] ∈ P^{k−1}` for every probe `u`.
pub fn in_p_by_commutators(t: &DifferentialOperator, k: i64) -> bool {
    if t.is_zero() {
        return true;
    }
    match k {
        k if k < 0 => false,
        0 => t
            .terms()
            .all(|(alpha, a)| alpha.is_zero() && a.as_scalar().is_some()),
        _ => probe_functions(t.base_dim()).iter().all(|u| {
            let g = DifferentialOperator::gamma(u, t.rank());
            let c = t.commutator(&g).expect("same bundle");
            in_p_by_commutators(&c, k - 1)
        }),
    }
}

/// The least `k` with `T ∈ P^k`, searched up to `limit`.
pub fn pson_order_by_commutators(t: &DifferentialOperator, limit: i64) -> Option<Order> {
    if t.is_zero() {
        return Some(Order::NegInf);
    }
    (0..=limit).find(|&k| in_p_by_commutators(t, k)).map(Order::Finite)
}

/// Homogeneous components as `(degree, part)` pairs.
fn parts(p: &SymbolElement) -> Vec<(u32, SymbolElement)> {
    p.degrees()
        .into_iter()
        .map(|k| (k, p.homogeneous_part(k)))
        .collect()
}

/// `σ_{i+j}(T∘D)` summed over homogeneous parts, with `T`, `D` canonical lifts.
pub fn product_via_operators(p: &SymbolElement, q: &SymbolElement) -> Result<SymbolElement> {
    let mut out = SymbolElement::zero(p.base_dim(), p.rank());
    for (i, pi) in parts(p) {
        for (j, qj) in parts(q) {
            let t = pi.lift(i)?.compose(&qj.lift(j)?)?;
            out = out.checked_add(&SymbolElement::sigma(&t, (i + j) as i64)?)?;
        }
    }
    Ok(out)
}

/// `σ_{i+j−1}([T, D])` summed over homogeneous parts.
pub fn bracket_via_operators(p: &SymbolElement, q: &SymbolElement) -> Result<SymbolElement> {
    let mut out = SymbolElement::zero(p.base_dim(), p.rank());
    for (i, pi) in parts(p) {
        for (j, qj) in parts(q) {
            let t = pi.lift(i)?.commutator(&qj.lift(j)?)?;
            let degree = i as i64 + j as i64 - 1;
            if degree < 0 {
                // [γ_u, γ_v] = 0
                continue;
            }
            out = out.checked_add(&SymbolElement::sigma(&t, degree)?)?;
        }
    }
    Ok(out)
}

/// `Ψ(P)` computed as `σ_k(Ψ(lift_k P))` on each homogeneous part.
pub fn induced_symbol_via_operators(map: &InducedMap, p: &SymbolElement) -> Result<SymbolElement> {
    let mut out = SymbolElement::zero(p.base_dim(), p.rank());
    for (k, pk) in parts(p) {
        let t = map.apply_operator(&pk.lift(k)?)?;
        out = out.checked_add(&SymbolElement::sigma(&t, k as i64)?)?;
    }
    Ok(out)
}

/// The coordinates of `φ⁻¹(y) = L⁻¹(y − c)` as polynomials in `y`.
pub fn inverse_base_map(spec: &MorphismSpec) -> Result<Vec<Polynomial>> {
    let m = spec.base_dim();
    let l_inv = spec.base_map().inverse()?;
    Ok((0..m)
        .map(|i| {
            (0..m).fold(Polynomial::zero(m), |acc, j| {
                let shifted = &Polynomial::var(m, j) - &Polynomial::constant(m, spec.translation()[j].clone());
                &acc + &shifted.scale(l_inv.get(i, j))
            })
        })
        .collect())
}

/// `Φ_*(s)(y) = G·s(L⁻¹(y − c))`, built directly from the spec.
pub fn push_section(spec: &MorphismSpec, s: &Section) -> Result<Section> {
    let m = spec.base_dim();
    let preimage = inverse_base_map(spec)?;
    let pulled: Vec<Polynomial> = s.0.iter().map(|p| p.substitute(&preimage)).collect();
    let g = spec.gauge();
    Ok(Section(
        (0..spec.rank())
            .map(|i| {
                (0..spec.rank()).fold(Polynomial::zero(m), |acc, j| &acc + &pulled[j].scale(g.get(i, j)))
            })
            .collect(),
    ))
}

/// `Φ_* ∘ T ∘ Φ_*⁻¹` applied to `s`, without transforming `T` itself.
pub fn induced_operator_on_section(
    spec: &MorphismSpec,
    t: &DifferentialOperator,
    s: &Section,
) -> Result<Section> {
    let pulled = push_section(&spec.inverse()?, s)?;
    push_section(spec, &t.apply(&pulled)?)
}

/// `Σ_{k=0}^{terms−1} (−1)^k f^{−k−1} u^k`, the geometric series for `(f + u)⁻¹`.
pub fn inverse_by_series(u: &SymbolElement, f: &Rational, terms: u32) -> Result<SymbolElement> {
    let (m, n) = (u.base_dim(), u.rank());
    let f_inv = f.recip();
    let mut power = SymbolElement::one(m, n);
    let mut coeff = f_inv.clone();
    let mut out = SymbolElement::zero(m, n);
    for _ in 0..terms {
        out = out.checked_add(&power.scale(&coeff))?;
        power = power.product(u)?;
        coeff = -&coeff * &f_inv;
    }
    Ok(out)
}

/// Rank of a list of coordinate vectors.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vectors.to_vec()).expect("rectangular").rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::MatrixPolynomial;
    use crate::poly::MultiIndex;
    use crate::rational::int;

    #[test]
    fn commutator_orders_match_examples() {
        let d = DifferentialOperator::partial(1, 2, 0);
        assert_eq!(pson_order_by_commutators(&d, 4), Some(Order::Finite(1)));
        let e12 = DifferentialOperator::matrix(MatrixPolynomial::unit(2, 1, 0, 1));
        assert_eq!(pson_order_by_commutators(&e12, 4), Some(Order::Finite(1)));
        let t = DifferentialOperator::term(1, MultiIndex::new(vec![1]), MatrixPolynomial::unit(2, 1, 0, 1));
        assert_eq!(pson_order_by_commutators(&t, 4), Some(Order::Finite(2)));
        let g = DifferentialOperator::gamma(&Polynomial::var(1, 0), 2);
        assert_eq!(pson_order_by_commutators(&g, 4), Some(Order::Finite(0)));
        assert_eq!(
            pson_order_by_commutators(&DifferentialOperator::zero(1, 2), 4),
            Some(Order::NegInf)
        );
    }

    #[test]
    fn series_inverse_of_nilpotent_shift() {
        let u = SymbolElement::from_sl(1, MatrixPolynomial::unit(2, 1, 0, 1).to_phase()).unwrap();
        let p = u.checked_add(&SymbolElement::constant(1, 2, int(2))).unwrap();
        assert_eq!(inverse_by_series(&u, &int(2), 3).unwrap(), p.invert().unwrap());
    }
}
