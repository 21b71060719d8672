//! Conjugation and gauge normal forms for pseudo-differential operators.
//!
//! The central algorithm turns a monic operator L of nonzero order N into
//! ∂^N by conjugation: X⁻¹·L·X = ∂^N with X of order 0. Writing
//! L = Σ uₘ∂^{N−m} and X = Σ sₗ∂^{−l}, comparing coefficients in L·X = X·∂^N
//! gives, for each l ≥ 1, a first-order linear ODE
//!
//! ```text
//! N·s_{l−1}′ + u₁·s_{l−1} = P_{l−2},
//! P_{l−2} = −Σ_{m+i≥2} C(N−m, i)·uₘ·s_{l−m−i}⁽ⁱ⁾,
//! ```
//!
//! solved coefficientwise by formal integration. The integration constants
//! are fixed deterministically (s₀(0) = 1, sₗ(0) = 0 for l ≥ 1); any other
//! choice differs by a right factor with constant coefficients, which
//! [`uniqueness_defect`] exhibits.

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::pdo::{generalized_binomial, PseudoOp, SigmaSymbol};
use crate::ring::{Ring, RingElement};

/// Outcome of conjugation-to-a-power: the conjugator, the verification
/// residual X⁻¹·L·X − ∂^N (zero within its window), and the integration
/// normalization that makes the result deterministic.
#[derive(Debug, Clone)]
pub struct ConjugationResult {
    pub conjugator: PseudoOp,
    pub residual: PseudoOp,
    pub normalization_tag: &'static str,
}

const NORMALIZATION_TAG: &str = "s0(0)=1; s_l(0)=0 for l>=1";

/// Truncated exponential exp(c·x) = Σ cⁱ/i!·xⁱ as an element of an x-series
/// ring, with exact rational division by the factorials.
pub fn exp_cx(ring: &Ring, c: &RingElement) -> Result<RingElement> {
    if !ring.is_x_series() {
        return Err(Error::UnsupportedRing(
            "the exponential series lives in an x-series ring".into(),
        ));
    }
    if c.ring() != &ring.base() {
        return Err(Error::RingMismatch(
            "exponent coefficient must come from the base ring".into(),
        ));
    }
    let prec = ring.default_prec().unwrap_or(1);
    let mut coeffs = Vec::with_capacity(prec);
    let mut pow = ring.base().one();
    let mut factorial = BigInt::from(1);
    for i in 0..prec {
        if i > 0 {
            pow = pow.mul(c)?;
            factorial *= BigInt::from(i as i64);
        }
        coeffs.push(pow.scale(&BigRational::new(BigInt::from(1), factorial.clone())));
    }
    ring.series_from_base(&coeffs, prec)
}

/// Solve s′ = a·s + b with s(0) = init by formal integration:
/// (i+1)·s_{i+1} = Σ_j a_{i−j}·s_j + b_i. The solution gains one order of
/// precision over the data.
pub fn solve_linear_first_order(
    a: &RingElement,
    b: Option<&RingElement>,
    init: &RingElement,
) -> Result<RingElement> {
    let ring = a.ring().clone();
    if !ring.is_x_series() {
        return Err(Error::UnsupportedRing(
            "the linear ODE solver needs x-series coefficients".into(),
        ));
    }
    let base = ring.base();
    if init.ring() != &base {
        return Err(Error::RingMismatch(
            "initial value must come from the base ring".into(),
        ));
    }
    let pa = a.precision().unwrap_or(0);
    let pb = match b {
        Some(b) => {
            if b.ring() != &ring {
                return Err(Error::RingMismatch(
                    "inhomogeneous term from a different ring".into(),
                ));
            }
            b.precision().unwrap_or(0)
        }
        None => pa,
    };
    let out_prec = pa.min(pb) + 1;
    let mut sol: Vec<RingElement> = Vec::with_capacity(out_prec);
    sol.push(init.clone());
    for i in 0..out_prec - 1 {
        let mut acc = base.zero();
        for (j, s_j) in sol.iter().enumerate() {
            let a_k = a.x_coeff(i - j)?;
            if !a_k.is_zero() && !s_j.is_zero() {
                acc = acc.add(&a_k.mul(s_j)?)?;
            }
        }
        if let Some(b) = b {
            acc = acc.add(&b.x_coeff(i)?)?;
        }
        sol.push(acc.div_i64(i as i64 + 1)?);
    }
    ring.series_from_base(&sol, out_prec)
}

/// Conjugator X (order 0, deterministically normalized) with
/// X⁻¹·L·X = ∂^N, for L monic of order N ≠ 0 over an x-series ring.
///
/// The stored window of L must extend at least one term past the terms of X
/// requested: an L of depth D certifies a conjugator of depth D−1.
pub fn conjugator_to_power(l_op: &PseudoOp, n: i64) -> Result<ConjugationResult> {
    let ring = l_op.ring().clone();
    if !ring.is_x_series() {
        return Err(Error::UnsupportedRing(
            "conjugation normalization integrates coefficients; it needs an x-series ring".into(),
        ));
    }
    if n == 0 {
        return Err(Error::WrongOrder(
            "conjugation to the zeroth power is undefined".into(),
        ));
    }
    let order = l_op.order_of()?;
    if order != n {
        return Err(Error::WrongOrder(format!(
            "operator has order {order}, expected {n}"
        )));
    }
    if !l_op.is_monic()? {
        return Err(Error::NotMonic(
            "conjugation normalization needs a monic operator".into(),
        ));
    }
    let u = l_op.terms();
    let depth = u.len();
    if depth < 2 {
        return Err(Error::WindowTooSmall(
            "operator window certifies no conjugator terms (need depth at least 2)".into(),
        ));
    }
    let inv_n = BigRational::new(BigInt::from(1), BigInt::from(n));
    let a_coef = u[1].scale(&-inv_n.clone());
    let mut s: Vec<RingElement> = Vec::with_capacity(depth - 1);
    for l in 1..depth {
        // P_{l−2} = −Σ_{m+i≥2, m+i+j=l} C(N−m, i)·uₘ·s_j⁽ⁱ⁾
        let mut rhs = ring.zero();
        for (m, u_m) in u.iter().enumerate().take(l + 1) {
            if u_m.is_zero() {
                continue;
            }
            for i in 0..=(l - m) {
                if m + i < 2 {
                    continue;
                }
                let q = generalized_binomial(n - m as i64, i);
                if q.is_zero() {
                    continue;
                }
                let s_j = &s[l - m - i];
                if s_j.is_zero() {
                    continue;
                }
                rhs = rhs.sub(&u_m.mul(&s_j.derive_n(i)?)?.scale(&q))?;
            }
        }
        let b = rhs.scale(&inv_n);
        let init = if l == 1 {
            ring.base().one()
        } else {
            ring.base().zero()
        };
        s.push(solve_linear_first_order(&a_coef, Some(&b), &init)?);
    }
    let conjugator = PseudoOp::from_terms(&ring, 0, s)?;
    let x_inv = conjugator.invert()?;
    let conj = x_inv.multiply(l_op)?.multiply(&conjugator)?;
    let residual = conj.sub(&PseudoOp::d_power(&ring, n, depth)?)?;
    Ok(ConjugationResult {
        conjugator,
        residual,
        normalization_tag: NORMALIZATION_TAG,
    })
}

/// X₁⁻¹·X₂ for two order-0 conjugators; when both normalize the same
/// operator, the defect has constant coefficients.
pub fn uniqueness_defect(x1: &PseudoOp, x2: &PseudoOp) -> Result<PseudoOp> {
    for x in [x1, x2] {
        if x.order_of()? != 0 {
            return Err(Error::WrongOrder(
                "uniqueness defect is defined for order-0 conjugators".into(),
            ));
        }
    }
    x1.invert()?.multiply(x2)
}

/// True when a series coefficient is constant in x as far as it is known.
pub fn is_constant_series(e: &RingElement) -> Result<bool> {
    let p = e
        .precision()
        .ok_or_else(|| Error::UnsupportedRing("constancy test needs an x-series".into()))?;
    for i in 1..p {
        if !e.x_coeff(i)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when a series is a polynomial in x of degree ≤ d as far as it is
/// known (all stored coefficients beyond x^d vanish).
pub fn is_poly_of_degree_at_most(e: &RingElement, d: usize) -> Result<bool> {
    let p = e
        .precision()
        .ok_or_else(|| Error::UnsupportedRing("degree test needs an x-series".into()))?;
    for i in (d + 1)..p {
        if !e.x_coeff(i)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when every stored coefficient of the operator is constant in x
/// within its precision window.
pub fn has_constant_coefficients(p: &PseudoOp) -> Result<bool> {
    for t in p.terms() {
        if !is_constant_series(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Admissibility of an order-0 operator T with unit leading coefficient:
/// T·∂·T⁻¹ must have constant coefficients within the window, and T must fit
/// the structural normal form — a leading factor exp(c·x) times Σ fᵢ∂⁻ⁱ with
/// fᵢ a polynomial of degree at most i. Each test can fail without the
/// other, so both are required.
pub fn is_admissible(t: &PseudoOp) -> Result<bool> {
    let ring = t.ring().clone();
    if !ring.is_x_series() {
        return Err(Error::UnsupportedRing(
            "admissibility is defined over x-series coefficients".into(),
        ));
    }
    if t.order_of()? != 0 {
        return Err(Error::WrongOrder(
            "admissibility is defined for order-0 operators".into(),
        ));
    }
    let t0 = t.leading_coeff()?;
    let t0_at0 = t0.eval_at_zero()?;
    let t0_inv_at0 = t0_at0
        .invert()
        .map_err(|_| Error::NonUnit("leading coefficient is not a unit".into()))?;
    // Conjugation test.
    let d1 = PseudoOp::d_power(&ring, 1, t.depth())?;
    let conj = t.multiply(&d1)?.multiply(&t.invert()?)?;
    let conj_constant = has_constant_coefficients(&conj)?;
    // Structural test: peel the exponential factor c = (t₀′/t₀)(0) and check
    // the polynomial degree bounds term by term.
    let c = t0.derive()?.eval_at_zero()?.mul(&t0_inv_at0)?;
    let peel = exp_cx(&ring, &c.neg())?;
    let mut structural = true;
    for (i, term) in t.terms().iter().enumerate() {
        let f_i = peel.mul(term)?;
        if !is_poly_of_degree_at_most(&f_i, i)? {
            structural = false;
            break;
        }
    }
    Ok(conj_constant && structural)
}

/// An admissible T with T·∂^{−r}·T⁻¹ = v (as the constant-coefficient lift of
/// the symbol v), for v monic of order −r, r ≠ 0.
pub fn admissible_root(ring: &Ring, v: &SigmaSymbol, r: i64) -> Result<PseudoOp> {
    if r == 0 {
        return Err(Error::WrongOrder("rank r must be nonzero".into()));
    }
    if !ring.is_x_series() || ring.base() != *v.ring() {
        return Err(Error::UnsupportedRing(
            "need an x-series ring over the symbol's coefficient ring".into(),
        ));
    }
    let order = v.order_of()?;
    if order != -r {
        return Err(Error::WrongOrder(format!(
            "symbol has order {order}, expected {}",
            -r
        )));
    }
    if !v.is_monic()? {
        return Err(Error::NotMonic("the symbol must be monic".into()));
    }
    // Constant-coefficient lift y^e ↦ ∂^{−e}, then conjugate it to ∂^{−r}:
    // X⁻¹·V·X = ∂^{−r} means V = X·∂^{−r}·X⁻¹.
    let mut terms = Vec::new();
    let mut e = v.low_exp();
    while e < v.guaranteed_exp() {
        terms.push(ring.embed(&v.coeff_at(e)?)?);
        e += 1;
    }
    let lift = PseudoOp::from_terms(ring, -v.low_exp(), terms)?;
    Ok(conjugator_to_power(&lift, -r)?.conjugator)
}

/// Invertible gauge function f with f(0) = 1 and f⁻¹·∂·f = ∂ + u, from the
/// recursion f_{i+1} = (1/(i+1))·Σ_j f_j·u_{i−j} (equivalently f′ = u·f).
pub fn gauge_first_order(u: &RingElement) -> Result<RingElement> {
    let ring = u.ring().clone();
    if !ring.is_x_series() {
        return Err(Error::UnsupportedRing(
            "gauge functions live in an x-series ring".into(),
        ));
    }
    solve_linear_first_order(u, None, &ring.base().one())
}

/// f·P·f⁻¹ for an invertible series f (unit constant term).
pub fn conjugate_by_unit(p: &PseudoOp, f: &RingElement) -> Result<PseudoOp> {
    if f.ring() != p.ring() {
        return Err(Error::RingMismatch(
            "gauge function must live in the operator's coefficient ring".into(),
        ));
    }
    let f_inv = f
        .invert()
        .map_err(|_| Error::NonUnit("gauge function has no inverse (constant term not a unit)".into()))?;
    let depth = p.depth().max(1);
    let left = PseudoOp::constant(f, depth)?;
    let right = PseudoOp::constant(&f_inv, depth)?;
    left.multiply(p)?.multiply(&right)
}

#[cfg(test)]
mod tests {
    use super::*;


    fn xq(prec: usize) -> Ring {
        Ring::x_series(&Ring::rationals(), prec).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exp_series_coefficients() {
        let r = xq(6);
        let e = exp_cx(&r, &Ring::rationals().from_i64(2)).unwrap();
        assert_eq!(e.x_coeff(0).unwrap().as_rational(), Some(q(1, 1)));
        assert_eq!(e.x_coeff(3).unwrap().as_rational(), Some(q(8, 6)));
        // exp(cx)·exp(−cx) = 1
        let ei = exp_cx(&r, &Ring::rationals().from_i64(-2)).unwrap();
        assert!(e.mul(&ei).unwrap().eq_within_precision(&r.one()).unwrap());
        // and it solves f′ = c·f
        let lhs = e.derive().unwrap();
        let rhs = e.scale_i64(2);
        assert!(lhs.eq_within_precision(&rhs).unwrap());
    }

    #[test]
    fn conjugating_a_pure_power_is_trivial() {
        let r = xq(10);
        let l = PseudoOp::d_power(&r, 2, 6).unwrap();
        let res = conjugator_to_power(&l, 2).unwrap();
        assert!(res
            .conjugator
            .eq_within_window(&PseudoOp::one(&r, 5).unwrap())
            .unwrap());
        assert!(res.residual.is_zero());
        assert_eq!(res.normalization_tag, NORMALIZATION_TAG);
    }

    #[test]
    fn conjugator_for_completed_square_is_exponential() {
        // L = ∂² + α∂ + α²/4 over ℚ[α][[x]]: X = exp(−(α/2)x) as a
        // multiplication operator.
        let base = Ring::polynomial(&["α"]).unwrap();
        let r = Ring::x_series(&base, 10).unwrap();
        let alpha = r.symbol("α").unwrap();
        let quarter = alpha.pow(2).scale(&q(1, 4));
        let depth = 6;
        let mut terms = vec![r.zero(); depth];
        terms[0] = r.one();
        terms[1] = alpha.clone();
        terms[2] = quarter;
        let l = PseudoOp::from_terms(&r, 2, terms).unwrap();
        let res = conjugator_to_power(&l, 2).unwrap();
        assert!(res.residual.is_zero());
        let want = exp_cx(&r, &base.symbol("α").unwrap().scale(&q(-1, 2))).unwrap();
        let x0 = res.conjugator.leading_coeff().unwrap();
        assert!(x0.eq_within_precision(&want).unwrap());
        for t in &res.conjugator.terms()[1..] {
            assert!(t.is_zero());
        }
    }

    #[test]
    fn conjugator_kills_airy_potential() {
        // L = ∂² + x: a genuinely x-dependent conjugation.
        let r = xq(16);
        let depth = 8;
        let mut terms = vec![r.zero(); depth];
        terms[0] = r.one();
        terms[2] = r.x().unwrap();
        let l = PseudoOp::from_terms(&r, 2, terms).unwrap();
        let res = conjugator_to_power(&l, 2).unwrap();
        assert_eq!(res.conjugator.depth(), depth - 1);
        assert!(res.residual.is_zero());
        // leading coefficient normalized: s₀(0) = 1
        let s0 = res.conjugator.leading_coeff().unwrap();
        assert!(s0
            .eval_at_zero()
            .unwrap()
            .sub(&Ring::rationals().one())
            .unwrap()
            .is_zero());
        // lower coefficients vanish at 0
        for t in &res.conjugator.terms()[1..] {
            assert!(t.eval_at_zero().unwrap().is_zero());
        }
    }

    #[test]
    fn negative_order_conjugation() {
        // L = ∂⁻¹ + x∂⁻²  (monic of order −1)
        let r = xq(14);
        let depth = 6;
        let mut terms = vec![r.zero(); depth];
        terms[0] = r.one();
        terms[1] = r.x().unwrap();
        let l = PseudoOp::from_terms(&r, -1, terms).unwrap();
        let res = conjugator_to_power(&l, -1).unwrap();
        assert!(res.residual.is_zero());
    }

    #[test]
    fn defect_of_equal_conjugators_is_one() {
        let r = xq(10);
        let x1 = PseudoOp::from_terms(&r, 0, vec![r.one(), r.x().unwrap(), r.zero(), r.zero()])
            .unwrap();
        let d = uniqueness_defect(&x1, &x1).unwrap();
        assert!(d
            .eq_within_window(&PseudoOp::one(&r, 4).unwrap())
            .unwrap());
        // X₁ = 1, X₂ = 1 + 2∂⁻¹ → defect X₂ itself
        let x2 = PseudoOp::from_terms(&r, 0, vec![r.one(), r.from_i64(2), r.zero(), r.zero()])
            .unwrap();
        let one = PseudoOp::one(&r, 4).unwrap();
        let d2 = uniqueness_defect(&one, &x2).unwrap();
        assert!(d2.eq_within_window(&x2).unwrap());
        assert!(has_constant_coefficients(&d2).unwrap());
    }

    #[test]
    fn admissibility_examples() {
        let r = xq(10);
        // T = 1
        let one = PseudoOp::one(&r, 4).unwrap();
        assert!(is_admissible(&one).unwrap());
        // T = exp(cx)·1
        let e = exp_cx(&r, &Ring::rationals().from_i64(3)).unwrap();
        let t = PseudoOp::constant(&e, 4).unwrap();
        assert!(is_admissible(&t).unwrap());
        // T = 1 + x²∂⁻¹ violates the degree bound at i = 1
        let x2 = r.x().unwrap().pow(2);
        let bad = PseudoOp::from_terms(&r, 0, vec![r.one(), x2, r.zero(), r.zero()]).unwrap();
        assert!(!is_admissible(&bad).unwrap());
        // T = 1 + x∂⁻¹ meets the degree bound but fails the conjugation
        // test: T·∂·T⁻¹ = ∂ − ∂⁻¹ + x∂⁻² + … — both checks are needed.
        let near = PseudoOp::from_terms(
            &r,
            0,
            vec![r.one(), r.x().unwrap(), r.zero(), r.zero(), r.zero()],
        )
        .unwrap();
        assert!(!is_admissible(&near).unwrap());
        // T = Σ xᵏ/k!·∂⁻ᵏ conjugates ∂ to ∂ − ∂⁻¹ − ½∂⁻³ − … and is
        // admissible with genuinely x-dependent coefficients.
        let mut fact = vec![r.one()];
        for k in 1..5usize {
            let prev = fact[k - 1].clone();
            fact.push(prev.mul(&r.x().unwrap()).unwrap().div_i64(k as i64).unwrap());
        }
        let expo = PseudoOp::from_terms(&r, 0, fact).unwrap();
        assert!(is_admissible(&expo).unwrap());
    }

    #[test]
    fn admissible_root_conjugates_lift() {
        let base = Ring::rationals();
        let r = xq(14);
        // v = y + y², r = 1
        let v = SigmaSymbol::monomial(&base, "y", base.one(), 1, 7)
            .unwrap()
            .add(&SigmaSymbol::monomial(&base, "y", base.one(), 2, 7).unwrap())
            .unwrap();
        let t = admissible_root(&r, &v, 1).unwrap();
        assert!(is_admissible(&t).unwrap());
        // T·∂⁻¹·T⁻¹ equals the constant lift of v
        let d_inv = PseudoOp::d_power(&r, -1, t.depth()).unwrap();
        let conj = t.multiply(&d_inv).unwrap().multiply(&t.invert().unwrap()).unwrap();
        let mut lift_terms = Vec::new();
        for e in v.low_exp()..v.guaranteed_exp() {
            lift_terms.push(r.embed(&v.coeff_at(e).unwrap()).unwrap());
        }
        let lift = PseudoOp::from_terms(&r, -v.low_exp(), lift_terms).unwrap();
        assert!(conj.eq_within_window(&lift).unwrap());
        // v = yʳ → T = 1
        let pure = SigmaSymbol::monomial(&base, "y", base.one(), 2, 8).unwrap();
        let t2 = admissible_root(&r, &pure, 2).unwrap();
        assert!(t2
            .eq_within_window(&PseudoOp::one(&r, t2.depth()).unwrap())
            .unwrap());
        // 2y is not monic
        let two_y = SigmaSymbol::monomial(&base, "y", base.from_i64(2), 1, 6).unwrap();
        assert!(matches!(
            admissible_root(&r, &two_y, 1),
            Err(Error::NotMonic(_))
        ));
    }

    #[test]
    fn gauge_recursion_examples() {
        let r = xq(10);
        // u = 0 → f = 1
        let f0 = gauge_first_order(&r.zero()).unwrap();
        assert!(f0.eq_within_precision(&r.one()).unwrap());
        // u = c → exp(cx)
        let c = r.from_i64(3);
        let fc = gauge_first_order(&c).unwrap();
        let want = exp_cx(&r, &Ring::rationals().from_i64(3)).unwrap();
        assert!(fc.eq_within_precision(&want).unwrap());
        // u = x → exp(x²/2): 1, 0, 1/2, 0, 1/8, …
        let fx = gauge_first_order(&r.x().unwrap()).unwrap();
        for (i, expect) in [(0, q(1, 1)), (1, q(0, 1)), (2, q(1, 2)), (3, q(0, 1)), (4, q(1, 8))] {
            assert_eq!(fx.x_coeff(i).unwrap().as_rational(), Some(expect));
        }
        // f′ = u·f termwise
        let lhs = fx.derive().unwrap();
        let rhs = r.x().unwrap().mul(&fx).unwrap();
        assert!(lhs.eq_within_precision(&rhs).unwrap());
        // f·(∂+u)·f⁻¹ = ∂
        let dpu = PseudoOp::from_terms(&r, 1, vec![r.one(), r.x().unwrap(), r.zero(), r.zero()])
            .unwrap();
        let conj = conjugate_by_unit(&dpu, &fx).unwrap();
        assert!(conj
            .eq_within_window(&PseudoOp::d_power(&r, 1, 4).unwrap())
            .unwrap());
    }

    #[test]
    fn conjugate_by_exponential_shifts_derivative() {
        let r = xq(10);
        // f = exp(cx): f·∂·f⁻¹ = ∂ − c
        let f = exp_cx(&r, &Ring::rationals().from_i64(5)).unwrap();
        let d1 = PseudoOp::d_power(&r, 1, 4).unwrap();
        let conj = conjugate_by_unit(&d1, &f).unwrap();
        assert_eq!(conj.order_of().unwrap(), 1);
        assert!(conj
            .coeff_of_power(0)
            .unwrap()
            .eq_within_precision(&r.from_i64(-5))
            .unwrap());
        // non-unit gauge is rejected
        assert!(matches!(
            conjugate_by_unit(&d1, &r.x().unwrap()),
            Err(Error::NonUnit(_))
        ));
    }

    #[test]
    fn ode_solver_basic() {
        let r = xq(8);
        // s′ = s, s(0) = 1 → exp(x)
        let sol = solve_linear_first_order(&r.one(), None, &Ring::rationals().one()).unwrap();
        assert_eq!(sol.x_coeff(4).unwrap().as_rational(), Some(q(1, 24)));
        // s′ = 0·s + x, s(0) = 0 → x²/2
        let sol2 =
            solve_linear_first_order(&r.zero(), Some(&r.x().unwrap()), &Ring::rationals().zero())
                .unwrap();
        assert_eq!(sol2.x_coeff(2).unwrap().as_rational(), Some(q(1, 2)));
        assert!(sol2.x_coeff(1).unwrap().as_rational() == Some(BigRational::zero()));
    }
}
