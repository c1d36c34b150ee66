//! The property sets behind `verify --suite`.

use num_integer::binomial;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::diffop::{DifferentialOperator, Order};
use crate::error::{Error, NonInvertibleReason, Result};
use crate::gl::GlSymbol;
use crate::matrix::{MatrixPolynomial, PhaseMatrix};
use crate::morphism::controls::{DegreeShift, PointwiseGauge};
use crate::morphism::{InducedPair, SymbolMap};
use crate::poly::{MultiIndex, PhasePolynomial, Polynomial};
use crate::rational::{int, Rational};
use crate::symbol::SymbolElement;
use crate::{ensure, ensure_eq};

use super::config::{Suite, SuiteConfig};
use super::oracles;
use super::random::InstanceGen;
use super::report::{run_property, PropertyOutcome, Report, SuiteReport, TrialResult};

pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let suites: Vec<Suite> = match config.suite {
        Suite::All => Suite::CONCRETE.to_vec(),
        s => vec![s],
    };
    let reports = suites
        .into_iter()
        .map(|suite| SuiteReport {
            suite: suite.name().to_owned(),
            properties: run_one(suite, config),
        })
        .collect();
    Ok(Report::new(config.clone(), reports))
}

fn run_one(suite: Suite, cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    match suite {
        Suite::OperatorLaws => operator_laws(cfg),
        Suite::SymbolLaws => symbol_laws(cfg),
        Suite::OracleEquivalence => oracle_equivalence(cfg),
        Suite::Ideal => ideal(cfg),
        Suite::Inverse => inverse(cfg),
        Suite::ExactSequence => exact_sequence(cfg),
        Suite::FiltrationLemma => filtration_lemma(cfg),
        Suite::GlCase => gl_case(cfg),
        Suite::Morphism => morphism(cfg),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

fn prop<F>(cfg: &SuiteConfig, name: &str, check: F) -> PropertyOutcome
where
    F: Fn(&mut ChaCha8Rng, usize) -> TrialResult + Sync,
{
    run_property(name, cfg.trials, cfg.seed, check)
}

fn operator_laws(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let g = InstanceGen::from_config(cfg);
    let g = &g;
    let limit = cfg.max_order as i64 + 1;
    vec![
        prop(cfg, "poly_ring_axioms", |rng, _| {
            let (a, b, c) = (g.polynomial(rng), g.polynomial(rng), g.polynomial(rng));
            ensure_eq!(&(&a * &b) * &c, &a * &(&b * &c), "associativity", a, b, c);
            ensure_eq!(&a * &b, &b * &a, "commutativity", a, b);
            ensure_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c), "distributivity", a, b, c);
            let d = g.max_order.min(2);
            let (f, h) = (g.phase_polynomial_up_to(rng, d), g.phase_polynomial_up_to(rng, d));
            ensure_eq!(&f * &h, &h * &f, "phase commutativity", f, h);
            Ok(())
        }),
        prop(cfg, "canonical_bracket_axioms", |rng, _| {
            let mut draw = || g.phase_polynomial_up_to(rng, 2);
            let (f, h, k) = (draw(), draw(), draw());
            let br = |a: &PhasePolynomial, b: &PhasePolynomial| a.canonical_bracket(b).unwrap();
            ensure_eq!(br(&f, &h), -br(&h, &f), "antisymmetry", f, h);
            let jacobi = &(&br(&f, &br(&h, &k)) + &br(&h, &br(&k, &f))) + &br(&k, &br(&f, &h));
            ensure!(jacobi.is_zero(), "Jacobi", f, h, k);
            ensure_eq!(br(&f, &(&h * &k)), &(&br(&f, &h) * &k) + &(&h * &br(&f, &k)), "Leibniz", f, h, k);
            Ok(())
        }),
        prop(cfg, "traceless_projector", |rng, _| {
            let a = g.matrix(rng);
            let t = a.traceless_part();
            ensure_eq!(t.traceless_part(), t, "idempotent", a);
            ensure!(t.trace().is_zero(), "traceless", a);
            ensure!((&a - &t).as_scalar().is_some(), "complement is scalar", a);
            ensure_eq!(a.traceless_part().is_zero(), a.as_scalar().is_some(), "kernel is the scalars", a);
            let s = MatrixPolynomial::scalar(g.n, &g.polynomial(rng));
            ensure!(s.traceless_part().is_zero(), "scalar lies in kernel", s);
            Ok(())
        }),
        prop(cfg, "compose_associative", |rng, _| {
            let (t, d, e) = (g.operator(rng), g.operator(rng), g.operator(rng));
            let lhs = t.compose(&d)?.compose(&e)?;
            let rhs = t.compose(&d.compose(&e)?)?;
            ensure_eq!(lhs, rhs, "(T∘D)∘E = T∘(D∘E)", t, d, e);
            Ok(())
        }),
        prop(cfg, "commutator_jacobi", |rng, _| {
            let (t, d, e) = (g.operator(rng), g.operator(rng), g.operator(rng));
            let c = |a: &DifferentialOperator, b: &DifferentialOperator| a.commutator(b).unwrap();
            let sum = c(&t, &c(&d, &e))
                .checked_add(&c(&d, &c(&e, &t)))?
                .checked_add(&c(&e, &c(&t, &d)))?;
            ensure!(sum.is_zero(), "Jacobi", t, d, e);
            Ok(())
        }),
        prop(cfg, "apply_composition", |rng, _| {
            let (t, d, s) = (g.operator(rng), g.operator(rng), g.section(rng));
            ensure_eq!(t.compose(&d)?.apply(&s)?, t.apply(&d.apply(&s)?)?, "(T∘D)s = T(Ds)", t, d, s);
            Ok(())
        }),
        prop(cfg, "pson_order_of_composition", |rng, _| {
            let (t, d) = (g.operator(rng), g.operator(rng));
            let lhs = t.compose(&d)?.pson_order();
            let bound = t.pson_order().plus(d.pson_order());
            ensure!(lhs <= bound, "ord(T∘D) ≤ ord T + ord D", t, d, lhs, bound);
            Ok(())
        }),
        prop(cfg, "pson_order_of_commutator", |rng, _| {
            let (t, d) = (g.operator(rng), g.operator(rng));
            let lhs = t.commutator(&d)?.pson_order();
            let bound = t.pson_order().plus(d.pson_order()).shift(-1);
            ensure!(lhs <= bound, "ord [T,D] ≤ ord T + ord D − 1", t, d, lhs, bound);
            Ok(())
        }),
        prop(cfg, "local_form_matches_commutators", |rng, _| {
            let t = if rng.gen_bool(0.5) {
                g.operator(rng)
            } else {
                let k = rng.gen_range(0..=cfg.max_order as i64);
                g.operator_in_p(rng, k)
            };
            let oracle = oracles::pson_order_by_commutators(&t, limit);
            ensure_eq!(Some(t.pson_order()), oracle, "local form vs recursive commutators", t);
            Ok(())
        }),
        prop(cfg, "filtration_consistency", |rng, _| {
            let t = g.operator(rng);
            if let Order::Finite(k) = t.pson_order() {
                for u in oracles::probe_functions(g.m) {
                    let c = t.commutator(&DifferentialOperator::gamma(&u, g.n))?;
                    ensure!(c.in_p_k(k - 1), "[T, γ_u] ∈ P^{k−1}", t, u);
                }
            }
            Ok(())
        }),
        prop(cfg, "differential_filtration_inside_quantum", |rng, _| {
            let t = g.operator(rng);
            if let Order::Finite(d) = t.diff_order() {
                ensure!(t.in_d_k(d), "T ∈ D^{ord}", t);
                ensure!(t.in_p_k(d + 1), "D^{k−1} ⊆ P^k", t);
            }
            let k = rng.gen_range(0..=cfg.max_order as i64);
            let p = g.operator_in_p(rng, k);
            ensure!(p.in_d_k(k), "P^k ⊆ D^k", p);
            Ok(())
        }),
    ]
}

fn symbol_laws(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let g = InstanceGen::from_config(cfg);
    let g = &g;
    let pr = |a: &SymbolElement, b: &SymbolElement| a.product(b).unwrap();
    let br = |a: &SymbolElement, b: &SymbolElement| a.bracket(b).unwrap();
    let add = |a: &SymbolElement, b: &SymbolElement| a.checked_add(b).unwrap();
    vec![
        prop(cfg, "generated_symbols_valid", |rng, _| {
            let p = g.symbol(rng);
            for (k, c) in p.components() {
                let rebuilt = SymbolElement::homogeneous(k, c.sl().clone(), c.scalar().clone());
                ensure!(rebuilt.is_ok(), "component invariants", p);
            }
            Ok(())
        }),
        prop(cfg, "product_commutative_associative", |rng, _| {
            let (p, q, r) = (g.symbol(rng), g.symbol(rng), g.symbol(rng));
            ensure_eq!(pr(&p, &q), pr(&q, &p), "PQ = QP", p, q);
            ensure_eq!(pr(&pr(&p, &q), &r), pr(&p, &pr(&q, &r)), "(PQ)R = P(QR)", p, q, r);
            Ok(())
        }),
        prop(cfg, "bracket_antisymmetric", |rng, _| {
            let (p, q) = (g.symbol(rng), g.symbol(rng));
            ensure_eq!(br(&p, &q), br(&q, &p).neg(), "{P,Q} = −{Q,P}", p, q);
            Ok(())
        }),
        prop(cfg, "bracket_jacobi", |rng, _| {
            let (p, q, r) = (g.symbol(rng), g.symbol(rng), g.symbol(rng));
            let sum = add(&add(&br(&p, &br(&q, &r)), &br(&q, &br(&r, &p))), &br(&r, &br(&p, &q)));
            ensure!(sum.is_zero(), "Jacobi", p, q, r);
            Ok(())
        }),
        prop(cfg, "bracket_leibniz", |rng, _| {
            let (p, q, r) = (g.symbol(rng), g.symbol(rng), g.symbol(rng));
            let rhs = add(&pr(&br(&p, &q), &r), &pr(&q, &br(&p, &r)));
            ensure_eq!(br(&p, &pr(&q, &r)), rhs, "{P,QR} = {P,Q}R + Q{P,R}", p, q, r);
            Ok(())
        }),
        prop(cfg, "gradation", |rng, _| {
            let (i, j) = (g.degree(rng), g.degree(rng));
            let (p, q) = (g.homogeneous_symbol(rng, i), g.homogeneous_symbol(rng, j));
            ensure!(pr(&p, &q).is_homogeneous(i + j), "product degree i+j", p, q);
            let b = br(&p, &q);
            if i + j == 0 {
                ensure!(b.is_zero(), "functions commute", p, q);
            } else {
                ensure!(b.is_homogeneous(i + j - 1), "bracket degree i+j−1", p, q);
            }
            Ok(())
        }),
        prop(cfg, "product_well_defined", |rng, _| {
            let (i, j, p, q, t, d) = perturbed_pair(g, rng)?;
            let canonical = SymbolElement::sigma(&p.lift(i)?.compose(&q.lift(j)?)?, (i + j) as i64)?;
            let perturbed = SymbolElement::sigma(&t.compose(&d)?, (i + j) as i64)?;
            ensure_eq!(perturbed, canonical, "σ(T∘D) independent of representatives", p, q, t, d);
            Ok(())
        }),
        prop(cfg, "bracket_well_defined", |rng, _| {
            let (i, j, p, q, t, d) = perturbed_pair(g, rng)?;
            let deg = i as i64 + j as i64 - 1;
            let canonical = SymbolElement::sigma(&p.lift(i)?.commutator(&q.lift(j)?)?, deg)?;
            let perturbed = SymbolElement::sigma(&t.commutator(&d)?, deg)?;
            ensure_eq!(perturbed, canonical, "σ([T,D]) independent of representatives", p, q, t, d);
            Ok(())
        }),
    ]
}

/// Homogeneous `P`, `Q` of degrees `i`, `j` with representatives perturbed by
/// random elements of `P^{i−1}` and `P^{j−1}`.
#[allow(clippy::type_complexity)]
fn perturbed_pair(
    g: &InstanceGen,
    rng: &mut ChaCha8Rng,
) -> Result<(u32, u32, SymbolElement, SymbolElement, DifferentialOperator, DifferentialOperator)> {
    let (i, j) = (g.degree(rng), g.degree(rng));
    let (p, q) = (g.homogeneous_symbol(rng, i), g.homogeneous_symbol(rng, j));
    let t = p.lift(i)?.checked_add(&g.operator_in_p(rng, i as i64 - 1))?;
    let d = q.lift(j)?.checked_add(&g.operator_in_p(rng, j as i64 - 1))?;
    Ok((i, j, p, q, t, d))
}

fn oracle_equivalence(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let g = InstanceGen::from_config(cfg);
    let g = &g;
    vec![
        prop(cfg, "product_closed_form_matches_operators", |rng, _| {
            let (i, j) = (g.degree(rng), g.degree(rng));
            let (p, q) = (g.homogeneous_symbol(rng, i), g.homogeneous_symbol(rng, j));
            ensure_eq!(p.product(&q)?, oracles::product_via_operators(&p, &q)?, "(gA+fB, fg)", p, q);
            Ok(())
        }),
        prop(cfg, "bracket_closed_form_matches_operators", |rng, _| {
            let (i, j) = (g.degree(rng), g.degree(rng));
            let (p, q) = (g.homogeneous_symbol(rng, i), g.homogeneous_symbol(rng, j));
            ensure_eq!(
                p.bracket(&q)?,
                oracles::bracket_via_operators(&p, &q)?,
                "([A,B]+{f,B}+{A,g}, {f,g})",
                p,
                q
            );
            Ok(())
        }),
        prop(cfg, "sigma_of_lift", |rng, _| {
            let k = g.degree(rng);
            let p = g.homogeneous_symbol(rng, k);
            ensure_eq!(SymbolElement::sigma(&p.lift(k)?, k as i64)?, p, "σ_k(lift_k P) = P", p);
            Ok(())
        }),
    ]
}

fn ideal(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let g = InstanceGen::from_config(cfg);
    let g = &g;
    vec![
        prop(cfg, "j_equals_kernel_of_delta", |rng, _| {
            let u = g.j_element(rng);
            ensure!(u.j_membership(), "J ⊆ ker δ: u² = 0", u);
            ensure!(u.delta().is_zero(), "J ⊆ ker δ: δu = 0", u);
            let p = g.symbol(rng);
            ensure_eq!(p.j_membership(), p.delta().is_zero(), "ker δ ⊆ J and J ⊆ ker δ", p);
            Ok(())
        }),
        prop(cfg, "j_is_an_ideal", |rng, _| {
            let (p, u) = (g.symbol(rng), g.j_element(rng));
            ensure!(p.product(&u)?.j_membership(), "P·u ∈ J", p, u);
            Ok(())
        }),
        prop(cfg, "j_has_trivial_multiplication", |rng, _| {
            let (u, v) = (g.j_element(rng), g.j_element(rng));
            ensure!(u.product(&v)?.is_zero(), "u·v = 0", u, v);
            Ok(())
        }),
        prop(cfg, "decomposition_is_direct_sum", |rng, _| {
            let p = g.symbol(rng);
            let (j, pol) = p.decompose();
            ensure_eq!(j.checked_add(&pol)?, p, "j + pol = P", p);
            ensure!(j.j_membership(), "j ∈ J", p);
            ensure!(pol.components().all(|(_, c)| c.sl().is_zero()), "pol ∈ Pol(T*M)", p);
            let zero = SymbolElement::zero(g.m, g.n);
            ensure_eq!(j.decompose(), (j.clone(), zero.clone()), "unique: J part is fixed", p);
            ensure_eq!(pol.decompose(), (zero, pol.clone()), "unique: Pol part is fixed", p);
            if pol.j_membership() {
                ensure!(pol.is_zero(), "J ∩ Pol = 0", p);
            }
            Ok(())
        }),
        prop(cfg, "pol_is_subalgebra", |rng, _| {
            let (a, b) = (g.pol_element(rng), g.pol_element(rng));
            let ab = a.product(&b)?;
            ensure!(ab.components().all(|(_, c)| c.sl().is_zero()), "Pol·Pol ⊆ Pol", a, b);
            Ok(())
        }),
    ]
}

fn inverse(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let g = InstanceGen::from_config(cfg);
    let g = &g;
    let unit_plus = |rng: &mut ChaCha8Rng| {
        let u = g.j_element(rng);
        let f = g.nonzero_rational(rng);
        let p = u.checked_add(&SymbolElement::constant(g.m, g.n, f.clone())).unwrap();
        (u, f, p)
    };
    vec![
        prop(cfg, "inverse_times_element_is_one", |rng, _| {
            let (_, _, p) = unit_plus(rng);
            let inv = p.invert()?;
            ensure_eq!(p.product(&inv)?, SymbolElement::one(g.m, g.n), "P·P⁻¹ = 1", p);
            Ok(())
        }),
        prop(cfg, "inverse_closed_form", |rng, _| {
            let (u, f, p) = unit_plus(rng);
            let f_inv = f.recip();
            let expected = u
                .scale(&-(&f_inv * &f_inv))
                .checked_add(&SymbolElement::constant(g.m, g.n, f_inv))?;
            ensure_eq!(p.invert()?, expected, "(u+f)⁻¹ = −f⁻²u + f⁻¹", u, p);
            Ok(())
        }),
        prop(cfg, "inverse_matches_series", |rng, _| {
            let (u, f, p) = unit_plus(rng);
            ensure_eq!(p.invert()?, oracles::inverse_by_series(&u, &f, 4)?, "geometric series truncates", u, p);
            Ok(())
        }),
        prop(cfg, "inverse_rejects_non_units", |rng, _| {
            let u = g.j_element(rng);
            ensure_eq!(
                u.invert(),
                Err(Error::NotInvertible(NonInvertibleReason::ZeroScalar)),
                "f = 0",
                u
            );
            let nonconstant = loop {
                let v = g.polynomial(rng);
                if v.constant_value().is_none() {
                    break v;
                }
            };
            let p = u.checked_add(&SymbolElement::function(&nonconstant, g.n))?;
            ensure_eq!(
                p.invert(),
                Err(Error::NotInvertible(NonInvertibleReason::NonConstantFunction)),
                "non-constant f",
                p
            );
            let k = rng.gen_range(1..=g.max_order.max(1));
            let fiber = loop {
                let f = g.phase_polynomial(rng, k);
                if !f.is_zero() {
                    break SymbolElement::from_scalar(k, f, g.n)?;
                }
            };
            let p = SymbolElement::one(g.m, g.n).checked_add(&fiber)?;
            ensure_eq!(
                p.invert(),
                Err(Error::NotInvertible(NonInvertibleReason::FiberDependent)),
                "fiber-dependent scalar part",
                p
            );
            Ok(())
        }),
    ]
}

fn exact_sequence(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let g = InstanceGen::from_config(cfg);
    let g = &g;
    let mut shapes = vec![(cfg.base_dim, cfg.rank)];
    for m in [1, 2] {
        for n in [2, 3] {
            if !shapes.contains(&(m, n)) {
                shapes.push((m, n));
            }
        }
    }
    let cases: Vec<(usize, usize, u32)> = shapes
        .iter()
        .flat_map(|&(m, n)| (0..=cfg.max_exact_degree).map(move |k| (m, n, k)))
        .collect();
    let cases = &cases;
    vec![
        prop(cfg, "delta_is_product_homomorphism", |rng, _| {
            let (p, q) = (g.symbol(rng), g.symbol(rng));
            ensure_eq!(p.product(&q)?.delta(), &p.delta() * &q.delta(), "δ(PQ) = δP·δQ", p, q);
            Ok(())
        }),
        prop(cfg, "delta_after_theta_vanishes", |rng, _| {
            let k = rng.gen_range(1..=g.max_order.max(1));
            let a = g.traceless_phase_matrix(rng, k - 1);
            ensure!(SymbolElement::theta(&a, k)?.delta().is_zero(), "δ∘θ = 0", a);
            Ok(())
        }),
        run_property("kernel_of_delta_equals_image_of_theta", cases.len(), cfg.seed, |_, trial| {
            let (m, n, k) = cases[trial];
            exact_at_degree(m, n, cfg.max_xdeg, k)
        }),
    ]
}

/// The traceless `n×n` basis `E_ij (i ≠ j)`, `E_ii − E_{i+1,i+1}`.
fn sl_basis(n: usize, m: usize) -> Vec<PhaseMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(PhaseMatrix::unit(n, m, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        out.push(&PhaseMatrix::unit(n, m, i, i) - &PhaseMatrix::unit(n, m, i + 1, i + 1));
    }
    out
}

/// Checks `ker δ = im θ` in degree `k` on the monomial basis with x-degree at
/// most `max_xdeg`, by rank counting.
pub fn exact_at_degree(m: usize, n: usize, max_xdeg: u32, k: u32) -> TrialResult {
    let xs = MultiIndex::all_up_to_degree(m, max_xdeg);
    let keys = |d: u32| -> Vec<MultiIndex> {
        xs.iter()
            .flat_map(|x| MultiIndex::all_of_degree(m, d).into_iter().map(move |a| x.concat(&a)))
            .collect()
    };
    let sl_keys = if k == 0 { Vec::new() } else { keys(k - 1) };
    let sc_keys = keys(k);
    let one = Rational::one();

    let mut theta_images = Vec::new();
    for e in sl_basis(n, m) {
        for key in &sl_keys {
            let mono = PhasePolynomial::monomial(m, key.clone(), one.clone());
            theta_images.push(SymbolElement::theta(&e.scale_poly(&mono), k)?);
        }
    }
    let scalars: Vec<SymbolElement> = sc_keys
        .iter()
        .map(|key| SymbolElement::from_scalar(k, PhasePolynomial::monomial(m, key.clone(), one.clone()), n))
        .collect::<Result<_>>()?;

    let coords = |p: &SymbolElement| -> Vec<Rational> {
        let zero_sl = PhaseMatrix::zero(n, m);
        let zero_sc = PhasePolynomial::zero(m);
        let (sl, sc) = p
            .component(k)
            .map_or((&zero_sl, &zero_sc), |c| (c.sl(), c.scalar()));
        let mut v = Vec::new();
        for entry in sl.entries() {
            v.extend(sl_keys.iter().map(|key| entry.coeff(key)));
        }
        v.extend(sc_keys.iter().map(|key| sc.coeff(key)));
        v
    };
    let delta_coords = |p: &SymbolElement| -> Vec<Rational> {
        let d = p.delta();
        sc_keys.iter().map(|key| d.coeff(key)).collect()
    };

    let basis: Vec<&SymbolElement> = theta_images.iter().chain(&scalars).collect();
    let x = binomial(m + max_xdeg as usize, max_xdeg as usize);
    let sl_dim = if k == 0 { 0 } else { (n * n - 1) * binomial(m + k as usize - 2, k as usize - 1) * x };
    let expected_dim = sl_dim + binomial(m + k as usize - 1, k as usize) * x;
    let shape = format!("m={m} n={n} k={k}");
    ensure_eq!(basis.len(), expected_dim, "dim S^k = dim(Pol^{k−1}⊗sl) + dim Pol^k", shape);
    ensure!(basis.iter().all(|b| b.is_homogeneous(k)), "basis is homogeneous", shape);

    let all: Vec<Vec<Rational>> = basis.iter().map(|b| coords(b)).collect();
    ensure_eq!(oracles::rank_of(&all), expected_dim, "basis is independent", shape);
    for t in &theta_images {
        ensure!(t.delta().is_zero(), "δ∘θ = 0 on basis", shape, *t);
    }
    let theta_rank = oracles::rank_of(&theta_images.iter().map(|t| coords(t)).collect::<Vec<_>>());
    ensure_eq!(theta_rank, sl_dim, "θ is injective", shape);
    let delta_rank = oracles::rank_of(&basis.iter().map(|b| delta_coords(b)).collect::<Vec<_>>());
    ensure_eq!(delta_rank, sc_keys.len(), "δ is onto Pol^k", shape);
    ensure_eq!(expected_dim - delta_rank, theta_rank, "dim ker δ = dim im θ", shape);
    Ok(())
}

fn filtration_lemma(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let g = InstanceGen::from_config(cfg);
    let g = &g;
    let mut out: Vec<PropertyOutcome> = (1..=3u32)
        .map(|i| {
            prop(cfg, &format!("lowering_set_matches_syntactic_i{i}"), move |rng, _| {
                let p = filtration_candidate(g, rng, i);
                ensure_eq!(
                    p.lowering_set_membership(i),
                    p.in_graded_plus_gl(i),
                    "{P, γ_u} ∈ S^{i−1} ∀u  ⇔  P ∈ S^i ⊕ gl",
                    p,
                    i as usize
                );
                Ok(())
            })
        })
        .collect();
    out.push(prop(cfg, "lowering_set_holds_for_all_functions", |rng, _| {
        let i = rng.gen_range(1..=3);
        let p = filtration_candidate(g, rng, i);
        if p.lowering_set_membership(i) {
            let u = g.function_symbol(rng);
            let b = p.bracket(&u)?;
            ensure!(b.is_homogeneous(i - 1), "{P, γ_u} ∈ S^{i−1}", p, u, i as usize);
        }
        Ok(())
    }));
    let edges = filtration_edge_cases(g.m, g.n);
    let edges = &edges;
    out.push(run_property("lowering_set_edge_cases", edges.len(), cfg.seed, |_, trial| {
        let (p, i, expected) = &edges[trial];
        ensure_eq!(p.lowering_set_membership(*i), *expected, "lowering set", *p, *i as usize);
        ensure_eq!(p.in_graded_plus_gl(*i), *expected, "syntactic form", *p, *i as usize);
        Ok(())
    }));
    out
}

/// A degree-`i` part plus optional gl-type parts and an optional stray component.
fn filtration_candidate(g: &InstanceGen, rng: &mut ChaCha8Rng, i: u32) -> SymbolElement {
    let mut p = g.homogeneous_symbol(rng, i);
    if rng.gen_bool(0.5) {
        p = p.checked_add(&g.function_symbol(rng)).unwrap();
    }
    if rng.gen_bool(0.5) {
        let a = g.traceless_phase_matrix(rng, 0);
        p = p.checked_add(&SymbolElement::from_sl(1, a).unwrap()).unwrap();
    }
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(0..=i + 2);
        p = p.checked_add(&g.homogeneous_symbol(rng, k)).unwrap();
    }
    p
}

fn filtration_edge_cases(m: usize, n: usize) -> Vec<(SymbolElement, u32, bool)> {
    let xi = PhasePolynomial::xi_var(m, 0);
    let x = Polynomial::var(m, 0);
    let e12 = PhaseMatrix::unit(n, m, 0, 1);
    let sl0 = SymbolElement::from_sl(1, e12.clone()).unwrap();
    let xi_scalar = SymbolElement::from_scalar(1, xi.clone(), n).unwrap();
    let func = SymbolElement::function(&x, n);
    let sl2 = SymbolElement::from_sl(2, e12.scale_poly(&xi)).unwrap();
    let mut out = Vec::new();
    for i in 1..=3u32 {
        let top = SymbolElement::from_scalar(i, xi.pow(i), n).unwrap();
        let above = SymbolElement::from_scalar(i + 1, xi.pow(i + 1), n).unwrap();
        out.push((SymbolElement::zero(m, n), i, true));
        out.push((func.clone(), i, true));
        out.push((sl0.clone(), i, true));
        out.push((xi_scalar.clone(), i, i == 1));
        out.push((sl2.clone(), i, i == 2));
        out.push((top.checked_add(&func).unwrap().checked_add(&sl0).unwrap(), i, true));
        out.push((top.checked_add(&above).unwrap(), i, false));
        out.push((SymbolElement::constant(m, n, int(3)), i, true));
    }
    out
}

fn gl_case(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let g = InstanceGen::from_config(cfg);
    let g = &g;
    let n = g.n;
    let gl_with_constant = |rng: &mut ChaCha8Rng| {
        let a = g.traceless_matrix(rng);
        let u = match rng.gen_range(0..3) {
            0 => Polynomial::constant(g.m, g.nonzero_rational(rng)),
            1 => Polynomial::zero(g.m),
            _ => g.polynomial(rng),
        };
        GlSymbol::new(a, u).unwrap()
    };
    vec![
        prop(cfg, "gl_product_literal", |rng, _| {
            let (p, q) = (g.gl_symbol(rng), g.gl_symbol(rng));
            let (a, u, b, v) = (p.sl_part(), p.function_part(), q.sl_part(), q.function_part());
            let mut lit = MatrixPolynomial::zero(n, g.m);
            for i in 0..n {
                for j in 0..n {
                    lit.set(i, j, &(v * a.get(i, j)) + &(u * b.get(i, j)));
                }
            }
            ensure_eq!(p.product(&q)?, GlSymbol::new(lit, u * v)?, "(vA + uB) + γ_uv", p, q);
            Ok(())
        }),
        prop(cfg, "gl_bracket_literal", |rng, _| {
            let (p, q) = (g.gl_symbol(rng), g.gl_symbol(rng));
            let (a, b) = (p.sl_part(), q.sl_part());
            let mut lit = MatrixPolynomial::zero(n, g.m);
            for i in 0..n {
                for j in 0..n {
                    let mut e = Polynomial::zero(g.m);
                    for l in 0..n {
                        e = &e + &(&(a.get(i, l) * b.get(l, j)) - &(b.get(i, l) * a.get(l, j)));
                    }
                    lit.set(i, j, e);
                }
            }
            ensure_eq!(p.bracket(&q)?, GlSymbol::new(lit, Polynomial::zero(g.m))?, "[A, B]", p, q);
            Ok(())
        }),
        prop(cfg, "gl_poisson_compatibility", |rng, _| {
            let (p, q, r) = (g.gl_symbol(rng), g.gl_symbol(rng), g.gl_symbol(rng));
            ensure_eq!(p.product(&q)?, q.product(&p)?, "commutative", p, q);
            ensure_eq!(p.product(&q)?.product(&r)?, p.product(&q.product(&r)?)?, "associative", p, q, r);
            let jac = p
                .bracket(&q.bracket(&r)?)?
                .checked_add(&q.bracket(&r.bracket(&p)?)?)?
                .checked_add(&r.bracket(&p.bracket(&q)?)?)?;
            ensure!(jac.is_zero(), "Jacobi", p, q, r);
            let lhs = p.bracket(&q.product(&r)?)?;
            let rhs = p.bracket(&q)?.product(&r)?.checked_add(&q.product(&p.bracket(&r)?)?)?;
            ensure_eq!(lhs, rhs, "Leibniz", p, q, r);
            Ok(())
        }),
        prop(cfg, "gl_embedding_coherence", |rng, _| {
            let (p, q) = (g.gl_symbol(rng), g.gl_symbol(rng));
            let (sp, sq) = (p.to_symbol(), q.to_symbol());
            ensure_eq!(p.product(&q)?.to_symbol(), sp.product(&sq)?, "product", p, q);
            ensure_eq!(p.bracket(&q)?.to_symbol(), sp.bracket(&sq)?, "bracket", p, q);
            ensure_eq!(sp.product(&sq)?, oracles::product_via_operators(&sp, &sq)?, "product via operators", p, q);
            ensure_eq!(sp.bracket(&sq)?, oracles::bracket_via_operators(&sp, &sq)?, "bracket via operators", p, q);
            let b = g.matrix(rng);
            let e = GlSymbol::embed(&b).to_symbol();
            let op = DifferentialOperator::matrix(b.clone());
            ensure_eq!(e.homogeneous_part(1), SymbolElement::sigma(&op, 1)?, "degree-1 part is σ_1(B)", b);
            ensure_eq!(
                e.homogeneous_part(0),
                SymbolElement::function(&b.scalar_part(), n),
                "degree-0 part is tr(B)/n",
                b
            );
            Ok(())
        }),
        prop(cfg, "gl_j_locus_and_ideal", |rng, _| {
            let p = gl_with_constant(rng);
            let sq = p.product(&p)?;
            ensure_eq!(sq.is_zero(), p.function_part().is_zero(), "P² = 0 ⇔ u = 0", p);
            let (a, _) = g.gl_symbol(rng).j_decompose();
            let r = g.gl_symbol(rng);
            ensure!(r.product(&a)?.function_part().is_zero(), "gl·J ⊆ J", r, a);
            Ok(())
        }),
        run_property("gl_invert_worked_example", 1, cfg.seed, |_, _| {
            let e12 = MatrixPolynomial::unit(n, g.m, 0, 1);
            let p = GlSymbol::new(e12.clone(), Polynomial::constant(g.m, int(2)))?;
            let expected = GlSymbol::new(
                e12.scale(&Rational::new((-1).into(), 4.into())),
                Polynomial::constant(g.m, Rational::new(1.into(), 2.into())),
            )?;
            let inv = p.invert()?;
            ensure_eq!(inv, expected, "(E12 + γ_2)⁻¹ = −¼E12 + γ_½", p);
            ensure_eq!(p.product(&inv)?, GlSymbol::one(g.m, n), "product is one", p);
            Ok(())
        }),
        prop(cfg, "gl_invert_matches_symbol_invert", |rng, _| {
            let p = gl_with_constant(rng);
            let gl_inv = p.invert();
            let sym_inv = p.to_symbol().invert();
            match (&gl_inv, &sym_inv) {
                (Ok(a), Ok(b)) => {
                    ensure_eq!(a.to_symbol(), *b, "inverses agree", p);
                    ensure_eq!(p.product(a)?, GlSymbol::one(g.m, n), "P·P⁻¹ = 1", p);
                }
                _ => ensure_eq!(gl_inv.map(|x| x.to_symbol()), sym_inv, "both fail alike", p),
            }
            Ok(())
        }),
    ]
}

/// `Ψ(P·Q) = ΨP·ΨQ`, `Ψ{P,Q} = {ΨP,ΨQ}` and `Ψ⁻¹Ψ = id` on `pairs` random pairs.
pub fn check_poisson_homomorphism(
    map: &dyn SymbolMap,
    g: &InstanceGen,
    rng: &mut ChaCha8Rng,
    pairs: usize,
) -> TrialResult {
    for _ in 0..pairs {
        let (p, q) = (g.symbol(rng), g.symbol(rng));
        let (fp, fq) = (map.forward(&p), map.forward(&q));
        ensure_eq!(map.forward(&p.product(&q)?), fp.product(&fq)?, "Ψ(PQ) = ΨP·ΨQ", p, q);
        ensure_eq!(map.forward(&p.bracket(&q)?), fp.bracket(&fq)?, "Ψ{P,Q} = {ΨP,ΨQ}", p, q);
        ensure_eq!(map.backward(&fp), p, "Ψ⁻¹Ψ = id", p);
    }
    Ok(())
}

/// Which structure-preservation check to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureCheck {
    /// `J(E)` is preserved both ways.
    Ideal,
    /// Degree-0 symbols stay in degree 0 both ways.
    DegreeZero,
    /// Homogeneous degree `k` stays homogeneous of degree `k`.
    Gradation,
    /// Pure `sl` elements of degree 1 stay pure `sl` in degree 1.
    SlDegreeOne,
}

impl StructureCheck {
    pub const ALL: [StructureCheck; 4] = [
        StructureCheck::Ideal,
        StructureCheck::DegreeZero,
        StructureCheck::Gradation,
        StructureCheck::SlDegreeOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureCheck::Ideal => "preserves_j_ideal",
            StructureCheck::DegreeZero => "preserves_degree_zero",
            StructureCheck::Gradation => "preserves_gradation",
            StructureCheck::SlDegreeOne => "preserves_degree_one_sl",
        }
    }
}

pub fn check_structure(
    check: StructureCheck,
    map: &dyn SymbolMap,
    g: &InstanceGen,
    rng: &mut ChaCha8Rng,
    pairs: usize,
) -> TrialResult {
    let both = |p: &SymbolElement| [map.forward(p), map.backward(p)];
    for _ in 0..pairs {
        match check {
            StructureCheck::Ideal => {
                let u = g.j_element(rng);
                for image in both(&u) {
                    ensure!(image.j_membership(), "Ψ^{±1}(J) ⊆ J", u, image);
                }
                let p = g.symbol(rng);
                if !p.j_membership() {
                    for image in both(&p) {
                        ensure!(!image.j_membership(), "P ∉ J ⇒ Ψ^{±1}(P) ∉ J", p, image);
                    }
                }
            }
            StructureCheck::DegreeZero => {
                let f = g.function_symbol(rng);
                for image in both(&f) {
                    ensure!(image.is_homogeneous(0), "Ψ^{±1}(S⁰) ⊆ S⁰", f, image);
                }
            }
            StructureCheck::Gradation => {
                let k = g.degree(rng);
                let p = g.homogeneous_symbol(rng, k);
                for image in both(&p) {
                    ensure!(image.is_homogeneous(k), "Ψ^{±1}(S^k) ⊆ S^k", p, image, k as usize);
                }
            }
            StructureCheck::SlDegreeOne => {
                let p = SymbolElement::from_sl(1, g.traceless_matrix(rng).to_phase())?;
                for image in both(&p) {
                    let pure = image.is_homogeneous(1)
                        && image.component(1).is_none_or(|c| c.scalar().is_zero());
                    ensure!(pure, "Ψ^{±1}(sl) ⊆ sl in degree 1", p, image);
                }
            }
        }
    }
    Ok(())
}

/// Runs [`check_poisson_homomorphism`] for `trials` independent seeded streams.
pub fn verify_poisson_homomorphism(
    map: &dyn SymbolMap,
    g: &InstanceGen,
    trials: usize,
    pairs: usize,
    seed: u64,
) -> PropertyOutcome {
    run_property("poisson_homomorphism", trials, seed, |rng, _| {
        check_poisson_homomorphism(map, g, rng, pairs)
    })
}

/// One outcome per structure-preservation check, in [`StructureCheck::ALL`] order.
pub fn verify_structure_preservation(
    map: &dyn SymbolMap,
    g: &InstanceGen,
    trials: usize,
    pairs: usize,
    seed: u64,
) -> Vec<PropertyOutcome> {
    StructureCheck::ALL
        .iter()
        .map(|&check| {
            run_property(check.name(), trials, seed, |rng, _| check_structure(check, map, g, rng, pairs))
        })
        .collect()
}

fn morphism(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let g = InstanceGen::from_config(cfg);
    let g = &g;
    let specs = cfg.specs;
    let pairs = cfg.pairs;
    let mprop = |name: &str, check: &(dyn Fn(&mut ChaCha8Rng) -> TrialResult + Sync)| {
        run_property(name, specs, cfg.seed, |rng, _| check(rng))
    };
    let mut out = vec![
        mprop("induced_poisson_isomorphism", &|rng| {
            let pair = InducedPair::new(&g.morphism(rng))?;
            check_poisson_homomorphism(&pair, g, rng, pairs)
        }),
    ];
    for check in StructureCheck::ALL {
        out.push(mprop(&format!("induced_{}", check.name()), &|rng| {
            let pair = InducedPair::new(&g.morphism(rng))?;
            check_structure(check, &pair, g, rng, pairs)
        }));
    }
    out.extend([
        mprop("induced_functoriality", &|rng| {
            let (s1, s2) = (g.morphism(rng), g.morphism(rng));
            let t = g.operator(rng);
            let stepwise = s2.induced()?.apply_operator(&s1.induced()?.apply_operator(&t)?)?;
            let composed = s2.after(&s1)?.induced()?.apply_operator(&t)?;
            ensure_eq!(stepwise, composed, "Ψ₂Ψ₁ = Ψ_{2∘1}", s1, s2, t);
            Ok(())
        }),
        mprop("induced_operator_automorphism", &|rng| {
            let spec = g.morphism(rng);
            let map = spec.induced()?;
            let (t, d) = (g.operator(rng), g.operator(rng));
            let (pt, pd) = (map.apply_operator(&t)?, map.apply_operator(&d)?);
            ensure_eq!(map.apply_operator(&t.compose(&d)?)?, pt.compose(&pd)?, "Ψ(T∘D)", spec, t, d);
            ensure_eq!(map.apply_operator(&t.commutator(&d)?)?, pt.commutator(&pd)?, "Ψ[T,D]", spec, t, d);
            ensure_eq!(pt.pson_order(), t.pson_order(), "pson order preserved", spec, t);
            ensure_eq!(pt.diff_order(), t.diff_order(), "differential order preserved", spec, t);
            let u = g.polynomial(rng);
            let moved = u.substitute(&oracles::inverse_base_map(&spec)?);
            ensure_eq!(
                map.apply_operator(&DifferentialOperator::gamma(&u, g.n))?,
                DifferentialOperator::gamma(&moved, g.n),
                "Ψγ_u = γ_{u∘φ⁻¹}",
                spec,
                u
            );
            Ok(())
        }),
        mprop("induced_operator_matches_sections", &|rng| {
            let spec = g.morphism(rng);
            let (t, s) = (g.operator(rng), g.section(rng));
            let lhs = spec.induced()?.apply_operator(&t)?.apply(&s)?;
            ensure_eq!(lhs, oracles::induced_operator_on_section(&spec, &t, &s)?, "Ψ(T)s = Φ T Φ⁻¹ s", spec, t, s);
            Ok(())
        }),
        mprop("induced_symbol_matches_operators", &|rng| {
            let spec = g.morphism(rng);
            let map = spec.induced()?;
            let p = g.symbol(rng);
            ensure_eq!(map.apply_symbol(&p)?, oracles::induced_symbol_via_operators(&map, &p)?, "Ψ on symbols", spec, p);
            Ok(())
        }),
        mprop("induced_commutes_with_sigma", &|rng| {
            let spec = g.morphism(rng);
            let map = spec.induced()?;
            let t = g.operator(rng);
            if t.is_zero() {
                return Ok(());
            }
            let lhs = map.apply_symbol(&SymbolElement::sigma_pson(&t)?)?;
            ensure_eq!(lhs, SymbolElement::sigma_pson(&map.apply_operator(&t)?)?, "Ψσ(T) = σ(ΨT)", spec, t);
            Ok(())
        }),
        mprop("negative_control_pointwise_gauge_detected", &|rng| {
            let control = PointwiseGauge::new(g.m, g.n);
            ensure!(
                check_poisson_homomorphism(&control, g, rng, pairs).is_err(),
                "x-dependent conjugation must break the bracket"
            );
            Ok(())
        }),
        mprop("negative_control_degree_shift_detected", &|rng| {
            ensure!(
                check_structure(StructureCheck::DegreeZero, &DegreeShift, g, rng, pairs).is_err(),
                "degree leak must break check (b)"
            );
            Ok(())
        }),
    ]);
    out
}
