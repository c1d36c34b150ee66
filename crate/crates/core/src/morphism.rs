//! Poisson isomorphisms induced by bundle isomorphisms of trivial bundles.
//!
//! A [`MorphismSpec`] `(L, c, G)` is the bundle map `Φ(x, e) = (Lx + c, Ge)`
//! with base map `φ(x) = Lx + c`. It acts on operators by conjugation,
//! `Ψ(T) = Φ_* ∘ T ∘ Φ_*⁻¹` where `(Φ_* s)(y) = G s(φ⁻¹(y))`. Concretely:
//!
//! * coefficients: `A(x) ↦ G A(φ⁻¹(y)) G⁻¹`;
//! * derivatives: `∂_{x_i} ↦ Σ_j L_{ji} ∂_{y_j}`;
//!
//! and on symbols by the matching substitution `ξ_i ↦ (Lᵀη)_i`.

use num_traits::Zero;

use crate::diffop::DifferentialOperator;
use crate::error::{check_dim, Error, Result};
use crate::matrix::{MatrixPolynomial, RatMatrix};
use crate::poly::{PhasePolynomial, Polynomial};
use crate::rational::Rational;
use crate::symbol::SymbolElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismSpec {
    l: RatMatrix,
    c: Vec<Rational>,
    g: RatMatrix,
}

impl MorphismSpec {
    pub fn new(l: RatMatrix, c: Vec<Rational>, g: RatMatrix) -> Result<Self> {
        check_dim("base map must be square", l.nrows(), l.ncols())?;
        check_dim("gauge must be square", g.nrows(), g.ncols())?;
        check_dim("translation length", l.nrows(), c.len())?;
        if l.determinant()?.is_zero() {
            return Err(Error::Singular("base map L is singular"));
        }
        if g.determinant()?.is_zero() {
            return Err(Error::Singular("gauge G is singular"));
        }
        Ok(MorphismSpec { l, c, g })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        MorphismSpec {
            l: RatMatrix::identity(m),
            c: vec![Rational::zero(); m],
            g: RatMatrix::identity(n),
        }
    }

    pub fn base_map(&self) -> &RatMatrix {
        &self.l
    }

    pub fn translation(&self) -> &[Rational] {
        &self.c
    }

    pub fn gauge(&self) -> &RatMatrix {
        &self.g
    }

    pub fn base_dim(&self) -> usize {
        self.l.nrows()
    }

    pub fn rank(&self) -> usize {
        self.g.nrows()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &MorphismSpec) -> Result<Self> {
        let l = self.l.checked_mul(&first.l)?;
        let lc = self.l.mul_vec(&first.c);
        let c = lc.iter().zip(&self.c).map(|(a, b)| a + b).collect();
        let g = self.g.checked_mul(&first.g)?;
        MorphismSpec::new(l, c, g)
    }

    /// The inverse bundle map `(y, f) ↦ (L⁻¹(y − c), G⁻¹f)`.
    pub fn inverse(&self) -> Result<Self> {
        let l_inv = self.l.inverse()?;
        let c = l_inv.mul_vec(&self.c).into_iter().map(|v| -v).collect();
        MorphismSpec::new(l_inv, c, self.g.inverse()?)
    }

    pub fn induced(&self) -> Result<InducedMap> {
        InducedMap::new(self.clone())
    }
}

/// The map `Ψ` on operators and symbols induced by a [`MorphismSpec`].
#[derive(Clone, Debug)]
pub struct InducedMap {
    spec: MorphismSpec,
    g_inv: RatMatrix,
    /// `x_i ↦ (φ⁻¹(y))_i`.
    base_images: Vec<Polynomial>,
    /// `x_i ↦ (φ⁻¹(y))_i`, `ξ_i ↦ (Lᵀη)_i`.
    phase_images: Vec<PhasePolynomial>,
    /// `∂_i ↦ (Lᵀ∂)_i`, written as linear forms in the derivative symbols.
    derivative_images: Vec<Polynomial>,
}

impl InducedMap {
    pub fn new(spec: MorphismSpec) -> Result<Self> {
        let m = spec.base_dim();
        let g_inv = spec.g.inverse()?;
        let l_inv = spec.l.inverse()?;
        let shift = l_inv.mul_vec(&spec.c);
        let base_images: Vec<Polynomial> = (0..m)
            .map(|i| {
                let mut p = Polynomial::constant(m, -shift[i].clone());
                for j in 0..m {
                    p = &p + &Polynomial::var(m, j).scale(l_inv.get(i, j));
                }
                p
            })
            .collect();
        let derivative_images: Vec<Polynomial> = (0..m)
            .map(|i| {
                (0..m).fold(Polynomial::zero(m), |acc, j| {
                    &acc + &Polynomial::var(m, j).scale(spec.l.get(j, i))
                })
            })
            .collect();
        let mut phase_images: Vec<PhasePolynomial> = base_images.iter().map(|p| p.to_phase()).collect();
        for d in &derivative_images {
            let mut xi = PhasePolynomial::zero(m);
            for (k, c) in d.terms() {
                let j = k.exponents().iter().position(|&e| e == 1).expect("linear form");
                xi = &xi + &PhasePolynomial::xi_var(m, j).scale(c);
            }
            phase_images.push(xi);
        }
        Ok(InducedMap {
            spec,
            g_inv,
            base_images,
            phase_images,
            derivative_images,
        })
    }

    pub fn spec(&self) -> &MorphismSpec {
        &self.spec
    }

    fn check_bundle(&self, m: usize, n: usize) -> Result<()> {
        check_dim("morphism base dimension", self.spec.base_dim(), m)?;
        check_dim("morphism rank", self.spec.rank(), n)
    }

    fn transform_coefficient(&self, a: &MatrixPolynomial) -> MatrixPolynomial {
        a.substitute(&self.base_images).conjugate(&self.spec.g, &self.g_inv)
    }

    /// `Ψ(T) = Φ_* ∘ T ∘ Φ_*⁻¹`.
    pub fn apply_operator(&self, t: &DifferentialOperator) -> Result<DifferentialOperator> {
        let (m, n) = (t.base_dim(), t.rank());
        self.check_bundle(m, n)?;
        let mut terms = Vec::new();
        for (alpha, a) in t.terms() {
            let coeff = self.transform_coefficient(a);
            let monomial = Polynomial::monomial(m, alpha.clone(), Rational::from_integer(1.into()));
            let expanded = monomial.substitute(&self.derivative_images);
            for (beta, c) in expanded.terms() {
                terms.push((beta.clone(), coeff.scale(c)));
            }
        }
        Ok(DifferentialOperator::from_terms(m, n, terms))
    }

    /// The symbol-level map; preserves every degree.
    pub fn apply_symbol(&self, p: &SymbolElement) -> Result<SymbolElement> {
        let (m, n) = (p.base_dim(), p.rank());
        self.check_bundle(m, n)?;
        let mut out = SymbolElement::zero(m, n);
        for (k, c) in p.components() {
            let sl = c
                .sl()
                .substitute(&self.phase_images)
                .conjugate(&self.spec.g, &self.g_inv);
            let scalar = c.scalar().substitute(&self.phase_images);
            out = out.checked_add(&SymbolElement::homogeneous(k, sl, scalar)?)?;
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<InducedMap> {
        InducedMap::new(self.spec.inverse()?)
    }
}

/// A linear self-map of the symbol algebra together with its inverse.
pub trait SymbolMap: Sync {
    fn forward(&self, p: &SymbolElement) -> SymbolElement;
    fn backward(&self, p: &SymbolElement) -> SymbolElement;
}

/// [`InducedMap`] packaged with its inverse.
pub struct InducedPair {
    forward: InducedMap,
    backward: InducedMap,
}

impl InducedPair {
    pub fn new(spec: &MorphismSpec) -> Result<Self> {
        let forward = spec.induced()?;
        let backward = forward.inverse()?;
        Ok(InducedPair { forward, backward })
    }

    pub fn map(&self) -> &InducedMap {
        &self.forward
    }
}

impl SymbolMap for InducedPair {
    fn forward(&self, p: &SymbolElement) -> SymbolElement {
        self.forward.apply_symbol(p).expect("dimensions checked by caller")
    }

    fn backward(&self, p: &SymbolElement) -> SymbolElement {
        self.backward.apply_symbol(p).expect("dimensions checked by caller")
    }
}

/// Deliberately broken maps used as negative controls for the verifiers.
pub mod controls {
    use super::*;
    use crate::matrix::PhaseMatrix;

    /// Pointwise conjugation of `sl` parts by the non-constant gauge
    /// `id + x1·E12`, with no correction terms. Respects the product but not
    /// the bracket.
    pub struct PointwiseGauge {
        g: PhaseMatrix,
        g_inv: PhaseMatrix,
    }

    impl PointwiseGauge {
        pub fn new(m: usize, n: usize) -> Self {
            let x1 = PhasePolynomial::x_var(m, 0);
            let mut g = PhaseMatrix::identity(n, m);
            let mut g_inv = PhaseMatrix::identity(n, m);
            g.set(0, 1, x1.clone());
            g_inv.set(0, 1, -&x1);
            PointwiseGauge { g, g_inv }
        }

        fn conj(&self, p: &SymbolElement, g: &PhaseMatrix, g_inv: &PhaseMatrix) -> SymbolElement {
            let mut out = SymbolElement::zero(p.base_dim(), p.rank());
            for (k, c) in p.components() {
                let sl = &(g * c.sl()) * g_inv;
                let part = SymbolElement::homogeneous(k, sl, c.scalar().clone())
                    .expect("conjugation keeps trace and homogeneity");
                out = out.checked_add(&part).expect("same bundle");
            }
            out
        }
    }

    impl SymbolMap for PointwiseGauge {
        fn forward(&self, p: &SymbolElement) -> SymbolElement {
            self.conj(p, &self.g, &self.g_inv)
        }

        fn backward(&self, p: &SymbolElement) -> SymbolElement {
            self.conj(p, &self.g_inv, &self.g)
        }
    }

    /// `P ↦ P + (0, P₀·ξ₁)₁`: leaks the degree-0 part into degree 1.
    pub struct DegreeShift;

    impl DegreeShift {
        fn shift(p: &SymbolElement, sign: i64) -> SymbolElement {
            let m = p.base_dim();
            let Some(c0) = p.component(0) else {
                return p.clone();
            };
            let leaked = c0
                .scalar()
                .checked_mul(&PhasePolynomial::xi_var(m, 0))
                .expect("same base")
                .scale(&Rational::from_integer(sign.into()));
            let extra = SymbolElement::from_scalar(1, leaked, p.rank()).expect("fiber-linear");
            p.checked_add(&extra).expect("same bundle")
        }
    }

    impl SymbolMap for DegreeShift {
        fn forward(&self, p: &SymbolElement) -> SymbolElement {
            Self::shift(p, 1)
        }

        fn backward(&self, p: &SymbolElement) -> SymbolElement {
            Self::shift(p, -1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::Section;
    use crate::matrix::PhaseMatrix;
    use crate::poly::MultiIndex;
    use crate::rational::{int, rat};

    fn spec_1d(l: i64, c: Rational, g: &[i64]) -> MorphismSpec {
        MorphismSpec::new(
            RatMatrix::from_rows(vec![vec![int(l)]]).unwrap(),
            vec![c],
            RatMatrix::diagonal(&g.iter().map(|&v| int(v)).collect::<Vec<_>>()),
        )
        .unwrap()
    }

    #[test]
    fn identity_fixes_everything() {
        let psi = MorphismSpec::identity(1, 2).induced().unwrap();
        let t = DifferentialOperator::term(
            1,
            MultiIndex::new(vec![2]),
            MatrixPolynomial::unit(2, 1, 0, 1).scale_poly(&Polynomial::parse(1, "x1 + 1").unwrap()),
        );
        assert_eq!(psi.apply_operator(&t).unwrap(), t);
        let p = SymbolElement::from_scalar(2, PhasePolynomial::parse(1, "x1 xi1^2").unwrap(), 2).unwrap();
        assert_eq!(psi.apply_symbol(&p).unwrap(), p);
    }

    #[test]
    fn gauge_conjugates_matrix_units() {
        let psi = spec_1d(1, int(0), &[1, 2]).induced().unwrap();
        let e12 = MatrixPolynomial::unit(2, 1, 0, 1);
        assert_eq!(
            psi.apply_operator(&DifferentialOperator::matrix(e12.clone())).unwrap(),
            DifferentialOperator::matrix(e12.scale(&rat(1, 2)))
        );
        let p = SymbolElement::from_sl(1, PhaseMatrix::unit(2, 1, 0, 1)).unwrap();
        assert_eq!(psi.apply_symbol(&p).unwrap(), p.scale(&rat(1, 2)));
    }

    #[test]
    fn dilation_rescales_derivative() {
        // y = 2x: d/dx = 2 d/dy, and γ_x becomes γ_{y/2}.
        let psi = spec_1d(2, int(0), &[1, 1]).induced().unwrap();
        let d = DifferentialOperator::partial(1, 2, 0);
        assert_eq!(psi.apply_operator(&d).unwrap(), d.scale(&int(2)));
        let gx = DifferentialOperator::gamma(&Polynomial::var(1, 0), 2);
        assert_eq!(psi.apply_operator(&gx).unwrap(), gx.scale(&rat(1, 2)));
        let xi = SymbolElement::from_scalar(1, PhasePolynomial::xi_var(1, 0), 2).unwrap();
        assert_eq!(psi.apply_symbol(&xi).unwrap(), xi.scale(&int(2)));

        // section oracle: (Ψ∂)(s)(y) = [∂_x (s∘φ)](φ⁻¹ y) with s = y^2 → 2·(2·(y/2)) = 2y
        let s = Section(vec![Polynomial::parse(1, "x1^2").unwrap(), Polynomial::zero(1)]);
        let out = psi.apply_operator(&d).unwrap().apply(&s).unwrap();
        assert_eq!(out.0[0], Polynomial::parse(1, "4 x1").unwrap());
    }

    #[test]
    fn composition_and_inverse() {
        let a = MorphismSpec::new(
            RatMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(2)]]).unwrap(),
            vec![int(1), rat(-1, 2)],
            RatMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap(),
        )
        .unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.after(&inv).unwrap(), MorphismSpec::identity(2, 2));
        assert_eq!(inv.after(&a).unwrap(), MorphismSpec::identity(2, 2));
    }

    #[test]
    fn singular_specs_are_rejected() {
        let l = RatMatrix::from_rows(vec![vec![int(0)]]).unwrap();
        assert_eq!(
            MorphismSpec::new(l, vec![int(0)], RatMatrix::identity(2)),
            Err(Error::Singular("base map L is singular"))
        );
        assert!(MorphismSpec::new(
            RatMatrix::identity(1),
            vec![int(0)],
            RatMatrix::diagonal(&[int(1), int(0)])
        )
        .is_err());
        assert!(MorphismSpec::new(RatMatrix::identity(2), vec![int(0)], RatMatrix::identity(2)).is_err());
    }
}
