//! Formal pseudo-differential operators over a differential coefficient ring.
//!
//! A [`PseudoOp`] is stored in **right normal form** Σ aₘ·∂^{N−m}: an array of
//! coefficients for consecutive descending powers of ∂ starting at the top
//! order N. Terms below the stored window are unknown — never assumed zero —
//! mirroring the window semantics of truncated Laurent series (∂⁻¹ plays the
//! role of the small variable).
//!
//! Multiplication is the Leibniz product
//!
//! ```text
//! (a ∂^n)·(b ∂^k) = Σᵢ C(n,i)·a·b⁽ⁱ⁾·∂^{n+k−i},   C(n,i) = n(n−1)…(n−i+1)/i!
//! ```
//!
//! valid for every integer n (the generalized binomial vanishes for
//! 0 ≤ n < i, which keeps differential operators closed under product).
//! Coefficient x-precision erodes with each derivative and is tracked by the
//! coefficients themselves.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::ring::{self, Ring, RingElement};
use crate::series::TruncLaurent;

/// Laurent series in y = ∂⁻¹ over the constant base ring: the image of an
/// operator under the projection that evaluates coefficients at x = 0.
pub type SigmaSymbol = TruncLaurent;

/// Generalized binomial coefficient C(n, i) for integer n: the product
/// n(n−1)…(n−i+1)/i!. Vanishes exactly when 0 ≤ n < i.
pub fn generalized_binomial(n: i64, i: usize) -> BigRational {
    if n >= 0 && (n as usize) < i {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..i {
        num *= BigInt::from(n - k as i64);
        den *= BigInt::from(k as i64 + 1);
    }
    BigRational::new(num, den)
}

/// Lazily extended table of coefficient derivatives b⁽ⁱ⁾; rows are created on
/// demand so a derivative is only ever taken when a nonzero binomial needs it
/// (derivation can fail at a jet-order bound, and must not fail spuriously).
struct DerivTable {
    rows: Vec<Vec<RingElement>>,
}

impl DerivTable {
    fn new(terms: &[RingElement]) -> Self {
        DerivTable {
            rows: terms.iter().map(|t| vec![t.clone()]).collect(),
        }
    }

    fn get(&mut self, n: usize, i: usize) -> Result<&RingElement> {
        while self.rows[n].len() <= i {
            let next = self.rows[n].last().unwrap().derive()?;
            self.rows[n].push(next);
        }
        Ok(&self.rows[n][i])
    }
}

/// A truncated formal pseudo-differential operator in right normal form.
///
/// Stored terms cover the ∂-exponents `top_order, top_order−1, …,
/// top_order−depth+1`; everything below is unknown. Canonical form trims
/// leading zero terms (folding them into a smaller `top_order`), so the first
/// stored term of a nonzero operator is its leading coefficient and
/// `order = top_order`. A zero operator keeps only the window marker.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoOp {
    ring: Ring,
    top_order: i64,
    terms: Vec<RingElement>,
}

impl PseudoOp {
    // -- construction ---------------------------------------------------------

    fn make(ring: Ring, mut top_order: i64, mut terms: Vec<RingElement>) -> Self {
        let mut start = 0;
        while start < terms.len() && terms[start].is_zero() {
            start += 1;
        }
        if start > 0 {
            terms.drain(..start);
            top_order -= start as i64;
        }
        PseudoOp {
            ring,
            top_order,
            terms,
        }
    }

    /// Zero operator, known zero at every ∂-exponent above `window_bottom`.
    pub fn zero(ring: &Ring, window_bottom: i64) -> Self {
        PseudoOp {
            ring: ring.clone(),
            top_order: window_bottom,
            terms: Vec::new(),
        }
    }

    /// Build from coefficients of ∂^{top_order}, ∂^{top_order−1}, ….
    pub fn from_terms(ring: &Ring, top_order: i64, terms: Vec<RingElement>) -> Result<Self> {
        for t in &terms {
            if t.ring() != ring {
                return Err(Error::RingMismatch(
                    "operator coefficient from a different ring".into(),
                ));
            }
        }
        Ok(PseudoOp::make(ring.clone(), top_order, terms))
    }

    /// The operator ∂^k with `depth` known terms (the rest are genuinely zero
    /// and stored as such).
    pub fn d_power(ring: &Ring, k: i64, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::WindowTooSmall(
                "an operator needs at least one stored term".into(),
            ));
        }
        let mut terms = vec![ring.zero(); depth];
        terms[0] = ring.one();
        PseudoOp::from_terms(ring, k, terms)
    }

    /// The multiplication operator by a coefficient (a ∂⁰-term).
    pub fn constant(c: &RingElement, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::WindowTooSmall(
                "an operator needs at least one stored term".into(),
            ));
        }
        let ring = c.ring().clone();
        let mut terms = vec![ring.zero(); depth];
        terms[0] = c.clone();
        PseudoOp::from_terms(&ring, 0, terms)
    }

    pub fn one(ring: &Ring, depth: usize) -> Result<Self> {
        PseudoOp::d_power(ring, 0, depth)
    }

    // -- accessors ------------------------------------------------------------

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// ∂-exponent of the first stored term (for a zero operator: the window
    /// marker — everything above it is known zero).
    pub fn top_order(&self) -> i64 {
        self.top_order
    }

    /// Number of stored terms.
    pub fn depth(&self) -> usize {
        self.terms.len()
    }

    /// Exponents at or below this are unknown.
    pub fn window_bottom(&self) -> i64 {
        self.top_order - self.terms.len() as i64
    }

    pub fn terms(&self) -> &[RingElement] {
        &self.terms
    }

    /// True when every stored term vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Order: the ∂-exponent of the leading (highest nonzero) term. Errors on
    /// an all-zero window, where the true order lies below it.
    pub fn order_of(&self) -> Result<i64> {
        if self.terms.is_empty() {
            Err(Error::IndeterminateOrder(
                "all stored terms are zero; the order is not certified by this window".into(),
            ))
        } else {
            Ok(self.top_order)
        }
    }

    pub fn leading_coeff(&self) -> Result<RingElement> {
        self.terms.first().cloned().ok_or_else(|| {
            Error::IndeterminateOrder("zero operator has no leading coefficient".into())
        })
    }

    pub fn is_monic(&self) -> Result<bool> {
        Ok(self.leading_coeff()?.sub(&self.ring.one())?.is_zero())
    }

    /// Coefficient of ∂^e: known zero above the stored top, stored inside the
    /// window, an error at or below the window bottom.
    pub fn coeff_of_power(&self, e: i64) -> Result<RingElement> {
        if e > self.top_order {
            Ok(self.ring.zero())
        } else if e > self.window_bottom() {
            Ok(self.terms[(self.top_order - e) as usize].clone())
        } else {
            Err(Error::WindowTooSmall(format!(
                "coefficient of D^{e} requested below the stored window (bottom {})",
                self.window_bottom()
            )))
        }
    }

    /// Drop stored terms at or below the given ∂-exponent.
    pub fn with_window_bottom(&self, bottom: i64) -> Self {
        if bottom <= self.window_bottom() {
            return self.clone();
        }
        let keep = (self.top_order - bottom).max(0) as usize;
        let mut out = self.clone();
        out.terms.truncate(keep);
        if out.terms.is_empty() {
            out.top_order = bottom;
        }
        PseudoOp::make(out.ring, out.top_order, out.terms)
    }

    fn check_same_ring(&self, other: &PseudoOp) -> Result<()> {
        if self.ring != other.ring {
            Err(Error::RingMismatch(
                "operators over different coefficient rings".into(),
            ))
        } else {
            Ok(())
        }
    }

    // -- linear arithmetic ------------------------------------------------------

    pub fn add(&self, other: &PseudoOp) -> Result<PseudoOp> {
        self.check_same_ring(other)?;
        let bottom = self.window_bottom().max(other.window_bottom());
        let top = self.top_order.max(other.top_order).max(bottom);
        let mut terms = Vec::with_capacity((top - bottom) as usize);
        let mut e = top;
        while e > bottom {
            terms.push(self.coeff_of_power(e)?.add(&other.coeff_of_power(e)?)?);
            e -= 1;
        }
        Ok(PseudoOp::make(self.ring.clone(), top, terms))
    }

    pub fn neg(&self) -> PseudoOp {
        PseudoOp {
            ring: self.ring.clone(),
            top_order: self.top_order,
            terms: self.terms.iter().map(|t| t.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &PseudoOp) -> Result<PseudoOp> {
        self.add(&other.neg())
    }

    /// Left multiplication by a coefficient: c·P (no derivatives involved).
    pub fn scale_left(&self, c: &RingElement) -> Result<PseudoOp> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch(
                "scaling coefficient from a different ring".into(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| c.mul(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(PseudoOp::make(self.ring.clone(), self.top_order, terms))
    }

    pub fn scale_rational(&self, q: &BigRational) -> PseudoOp {
        PseudoOp::make(
            self.ring.clone(),
            self.top_order,
            self.terms.iter().map(|t| t.scale(q)).collect(),
        )
    }

    /// Right multiplication by ∂^k — a pure shift of exponents, since ∂^k
    /// carries constant coefficients.
    pub fn mul_d_power(&self, k: i64) -> PseudoOp {
        PseudoOp {
            ring: self.ring.clone(),
            top_order: self.top_order + k,
            terms: self.terms.clone(),
        }
    }

    // -- multiplicative structure -------------------------------------------

    /// Leibniz product in right normal form. The result window is the honest
    /// intersection: term l needs coefficients m ≤ l of both factors plus up
    /// to l derivatives of the right factor's coefficients.
    pub fn multiply(&self, other: &PseudoOp) -> Result<PseudoOp> {
        self.check_same_ring(other)?;
        let (ma, mb) = (self.top_order, other.top_order);
        let top = ma + mb;
        let bottom = (self.window_bottom() + mb).max(other.window_bottom() + ma);
        if self.terms.is_empty() || other.terms.is_empty() || top <= bottom {
            return Ok(PseudoOp::zero(&self.ring, bottom.min(top)));
        }
        let dlen = (top - bottom) as usize;
        let mut ders = DerivTable::new(&other.terms);
        let mut out = Vec::with_capacity(dlen);
        for l in 0..dlen {
            let mut acc = self.ring.zero();
            for (m, a_m) in self.terms.iter().enumerate().take(l + 1) {
                if a_m.is_zero() {
                    continue;
                }
                for i in 0..=(l - m) {
                    let q = generalized_binomial(ma - m as i64, i);
                    if q.is_zero() {
                        continue;
                    }
                    let j = l - m - i;
                    if other.terms[j].is_zero() {
                        continue;
                    }
                    let b = ders.get(j, i)?;
                    acc = acc.add(&a_m.mul(b)?.scale(&q))?;
                }
            }
            out.push(acc);
        }
        Ok(PseudoOp::make(self.ring.clone(), top, out))
    }

    /// PQ − QP.
    pub fn commutator(&self, other: &PseudoOp) -> Result<PseudoOp> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// Two-sided inverse. Requires a determinate order and a unit leading
    /// coefficient; an operator of nonzero order N factors through ∂^N first.
    pub fn invert(&self) -> Result<PseudoOp> {
        let n = self.order_of()?;
        if n != 0 {
            // P = ∂^N·(∂^{−N}·P): invert the order-0 part, then shift.
            let shifted = PseudoOp::d_power(&self.ring, -n, self.terms.len())?.multiply(self)?;
            return Ok(shifted.invert()?.mul_d_power(-n));
        }
        let s0 = self.leading_coeff()?;
        let t0 = s0.invert().map_err(|_| {
            Error::NonUnit("leading coefficient of the operator is not a unit".into())
        })?;
        let depth = self.terms.len();
        let mut ders = DerivTable::new(&self.terms);
        let mut t: Vec<RingElement> = vec![t0.clone()];
        for l in 1..depth {
            // Solve [∂^{-l}] (T·S) = 0 for t_l: the (m=l, i=0, j=0) term is
            // t_l·s₀; everything else is known.
            let mut acc = self.ring.zero();
            for (m, t_m) in t.iter().enumerate().take(l) {
                if t_m.is_zero() {
                    continue;
                }
                for i in 0..=(l - m) {
                    let q = generalized_binomial(-(m as i64), i);
                    if q.is_zero() {
                        continue;
                    }
                    let j = l - m - i;
                    if self.terms[j].is_zero() {
                        continue;
                    }
                    let s = ders.get(j, i)?;
                    acc = acc.add(&t_m.mul(s)?.scale(&q))?;
                }
            }
            t.push(t0.mul(&acc)?.neg());
        }
        Ok(PseudoOp::make(self.ring.clone(), 0, t))
    }

    // -- normal forms ---------------------------------------------------------

    /// Rewrite as Σ ∂^{N−n}·bₙ (coefficients to the right of the powers).
    pub fn left_normal_form(&self) -> Result<LeftNormalForm> {
        let n = self.top_order;
        let mut b: Vec<RingElement> = Vec::with_capacity(self.terms.len());
        for l in 0..self.terms.len() {
            // b_l = a_l − Σ_{k<l} C(N−k, l−k)·b_k^{(l−k)}
            let mut acc = self.terms[l].clone();
            for (k, bk) in b.iter().enumerate().take(l) {
                let q = generalized_binomial(n - k as i64, l - k);
                if q.is_zero() || bk.is_zero() {
                    continue;
                }
                acc = acc.sub(&bk.derive_n(l - k)?.scale(&q))?;
            }
            b.push(acc);
        }
        Ok(LeftNormalForm {
            ring: self.ring.clone(),
            top_order: n,
            terms: b,
        })
    }

    // -- the σ-projection and the action on symbols ---------------------------

    /// Evaluate every right-normal-form coefficient at x = 0 and substitute
    /// y = ∂⁻¹: Σ fₙ ∂^{N−n} ↦ Σ fₙ(0) y^{n−N}.
    pub fn sigma(&self) -> Result<SigmaSymbol> {
        if !self.ring.is_x_series() {
            return Err(Error::UnsupportedRing(
                "the σ-projection needs x-series coefficients".into(),
            ));
        }
        let base = self.ring.base();
        let coeffs = self
            .terms
            .iter()
            .map(|t| t.eval_at_zero())
            .collect::<Result<Vec<_>>>()?;
        TruncLaurent::from_coeffs(&base, "y", -self.top_order, coeffs)
    }

    /// Right action on a symbol: P(v) := σ(Q·P) for the constant-coefficient
    /// lift Q of v (y^e ↦ ∂^{−e}); the value does not depend on the lift.
    pub fn act(&self, v: &SigmaSymbol) -> Result<SigmaSymbol> {
        if !self.ring.is_x_series() {
            return Err(Error::UnsupportedRing(
                "the symbol action needs x-series coefficients".into(),
            ));
        }
        let base = self.ring.base();
        if v.ring() != &base {
            return Err(Error::RingMismatch(
                "symbol coefficients must come from the operator's base ring".into(),
            ));
        }
        // Constant lift: y^e ↦ ∂^{−e}, so the first stored symbol coefficient
        // (lowest y-exponent) becomes the top ∂-exponent.
        let top = -v.low_exp();
        let mut terms = Vec::new();
        let mut e = v.low_exp();
        while e < v.guaranteed_exp() {
            terms.push(self.ring.embed(&v.coeff_at(e)?)?);
            e += 1;
        }
        let q = PseudoOp::make(self.ring.clone(), top, terms);
        q.multiply(self)?.sigma()
    }

    // -- differential operators ------------------------------------------------

    /// True iff every stored term at a negative ∂-exponent vanishes (the
    /// window below the stored terms is unknown and not consulted).
    pub fn is_differential(&self) -> bool {
        self.terms
            .iter()
            .enumerate()
            .all(|(m, t)| self.top_order - (m as i64) >= 0 || t.is_zero())
    }

    /// Apply a differential operator to a series in its own coefficient ring:
    /// (Σ aₘ ∂^{eₘ})(f) = Σ aₘ·f^{(eₘ)}.
    pub fn apply_to_series(&self, f: &RingElement) -> Result<RingElement> {
        if !self.is_differential() {
            return Err(Error::NotDifferential(
                "only differential operators act on functions".into(),
            ));
        }
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch(
                "function must live in the operator's coefficient ring".into(),
            ));
        }
        let mut acc = self.ring.zero();
        for (m, a) in self.terms.iter().enumerate() {
            let e = self.top_order - m as i64;
            if e < 0 || a.is_zero() {
                continue;
            }
            acc = acc.add(&a.mul(&f.derive_n(e as usize)?)?)?;
        }
        Ok(acc)
    }

    // -- comparisons ----------------------------------------------------------

    /// Agreement of all stored terms on the shared window, each compared
    /// within shared x-precision.
    pub fn eq_within_window(&self, other: &PseudoOp) -> Result<bool> {
        self.check_same_ring(other)?;
        let bottom = self.window_bottom().max(other.window_bottom());
        let top = self.top_order.max(other.top_order).max(bottom);
        let mut e = top;
        while e > bottom {
            let a = self.coeff_of_power(e)?;
            let b = other.coeff_of_power(e)?;
            let equal = if a.precision().is_some() && b.precision().is_some() {
                a.eq_within_precision(&b)?
            } else {
                a.sub(&b)?.is_zero()
            };
            if !equal {
                return Ok(false);
            }
            e -= 1;
        }
        Ok(true)
    }

    // -- JSON -----------------------------------------------------------------

    pub fn to_json(&self) -> serde_json::Value {
        let prec: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| match t.precision() {
                Some(p) => json!(p),
                None => serde_json::Value::Null,
            })
            .collect();
        json!({
            "ring": self.ring.to_json(),
            "top_order": self.top_order,
            "terms": self.terms.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            "prec": prec,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<PseudoOp> {
        let ring = Ring::from_json(
            v.get("ring")
                .ok_or_else(|| Error::BadEncoding("operator needs \"ring\"".into()))?,
        )?;
        let top_order = v
            .get("top_order")
            .and_then(|n| n.as_i64())
            .ok_or_else(|| Error::BadEncoding("operator needs \"top_order\"".into()))?;
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::BadEncoding("operator needs \"terms\"".into()))?
            .iter()
            .map(|t| RingElement::from_json(&ring, t))
            .collect::<Result<Vec<_>>>()?;
        PseudoOp::from_terms(&ring, top_order, terms)
    }
}

/// An operator rewritten as Σ ∂^{N−n}·bₙ. A derived view: the canonical
/// storage stays in right normal form, and `to_right` converts back.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftNormalForm {
    ring: Ring,
    top_order: i64,
    terms: Vec<RingElement>,
}

impl LeftNormalForm {
    pub fn top_order(&self) -> i64 {
        self.top_order
    }

    pub fn terms(&self) -> &[RingElement] {
        &self.terms
    }

    /// Expand every ∂^{N−n}·bₙ by the Leibniz rule back into right form.
    pub fn to_right(&self) -> Result<PseudoOp> {
        let n = self.top_order;
        let mut ders = DerivTable::new(&self.terms);
        let mut out = Vec::with_capacity(self.terms.len());
        for l in 0..self.terms.len() {
            let mut acc = self.ring.zero();
            for k in 0..=l {
                let q = generalized_binomial(n - k as i64, l - k);
                if q.is_zero() || self.terms[k].is_zero() {
                    continue;
                }
                let d = ders.get(k, l - k)?;
                acc = acc.add(&d.scale(&q))?;
            }
            out.push(acc);
        }
        PseudoOp::from_terms(&self.ring, n, out)
    }
}

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

fn d_power_display(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "D".into(),
        _ => format!("D^{e}"),
    }
}

/// Render the terms of either operator form (coefficient to the left of the
/// ∂-power, multi-term coefficients parenthesized).
fn fmt_op_terms(top_order: i64, terms: &[RingElement], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut parts = Vec::new();
    for (m, c) in terms.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = top_order - m as i64;
        let dpow = d_power_display(e);
        let strs = ring::element_term_strings(c);
        if dpow.is_empty() {
            parts.extend(strs);
        } else if strs.len() == 1 {
            let s = &strs[0];
            if s == "1" {
                parts.push(dpow);
            } else if s == "-1" {
                parts.push(format!("-{dpow}"));
            } else {
                parts.push(format!("{s}*{dpow}"));
            }
        } else {
            parts.push(format!("({})*{dpow}", ring::join_signed(&strs)));
        }
    }
    write!(f, "{}", ring::join_signed(&parts))
}

impl fmt::Display for PseudoOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_op_terms(self.top_order, &self.terms, f)
    }
}

impl fmt::Display for LeftNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_op_terms(self.top_order, &self.terms, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xq(prec: usize) -> Ring {
        Ring::x_series(&Ring::rationals(), prec).unwrap()
    }

    fn d(ring: &Ring, k: i64, depth: usize) -> PseudoOp {
        PseudoOp::d_power(ring, k, depth).unwrap()
    }

    #[test]
    fn binomials_generalized() {
        assert_eq!(generalized_binomial(3, 2), BigRational::from_integer(3.into()));
        assert_eq!(generalized_binomial(2, 3), BigRational::zero());
        assert_eq!(
            generalized_binomial(-1, 2),
            BigRational::from_integer(1.into())
        );
        assert_eq!(
            generalized_binomial(-2, 1),
            BigRational::from_integer((-2).into())
        );
        assert_eq!(generalized_binomial(5, 0), BigRational::one());
    }

    #[test]
    fn leibniz_products() {
        let r = xq(8);
        let x = PseudoOp::constant(&r.x().unwrap(), 6).unwrap();
        // ∂·x = x∂ + 1
        let p = d(&r, 1, 6).multiply(&x).unwrap();
        assert_eq!(p.top_order(), 1);
        assert!(p.coeff_of_power(1).unwrap().eq_within_precision(&r.x().unwrap()).unwrap());
        assert!(p.coeff_of_power(0).unwrap().eq_within_precision(&r.one()).unwrap());
        // ∂⁻¹·x = x∂⁻¹ − ∂⁻² (exactly: higher derivatives of x vanish)
        let q = d(&r, -1, 6).multiply(&x).unwrap();
        assert_eq!(q.top_order(), -1);
        assert!(q.coeff_of_power(-1).unwrap().eq_within_precision(&r.x().unwrap()).unwrap());
        assert!(q
            .coeff_of_power(-2)
            .unwrap()
            .eq_within_precision(&r.one().neg())
            .unwrap());
        assert!(q.coeff_of_power(-3).unwrap().is_zero());
        // ∂²·∂⁻² = 1
        let e = d(&r, 2, 6).multiply(&d(&r, -2, 6)).unwrap();
        assert!(e.eq_within_window(&PseudoOp::one(&r, 6).unwrap()).unwrap());
    }

    #[test]
    fn commutators() {
        let r = xq(8);
        let x = PseudoOp::constant(&r.x().unwrap(), 6).unwrap();
        // [∂, x] = 1
        let c = d(&r, 1, 6).commutator(&x).unwrap();
        assert!(c.eq_within_window(&PseudoOp::one(&r, 6).unwrap()).unwrap());
        // [∂², ∂³] = 0
        let z = d(&r, 2, 6).commutator(&d(&r, 3, 6)).unwrap();
        assert!(z.is_zero());
        // [∂², v] = v'' + 2v'∂ over a differential polynomial ring
        let rd = Ring::diff_polynomial(&["v"], 4).unwrap();
        let v = PseudoOp::constant(&rd.jet("v", 0).unwrap(), 5).unwrap();
        let c2 = d(&rd, 2, 5).commutator(&v).unwrap();
        assert_eq!(c2.order_of().unwrap(), 1);
        assert_eq!(
            c2.coeff_of_power(1).unwrap(),
            rd.jet("v", 1).unwrap().scale_i64(2)
        );
        assert_eq!(c2.coeff_of_power(0).unwrap(), rd.jet("v", 2).unwrap());
    }

    #[test]
    fn left_normal_form_roundtrip() {
        let r = xq(10);
        let x = r.x().unwrap();
        // x∂ → ∂x − 1
        let p = PseudoOp::from_terms(&r, 1, vec![x.clone(), r.zero(), r.zero()]).unwrap();
        let lnf = p.left_normal_form().unwrap();
        assert!(lnf.terms()[0].eq_within_precision(&x).unwrap());
        assert!(lnf.terms()[1]
            .eq_within_precision(&r.one().neg())
            .unwrap());
        // x²∂² → ∂²x² − 4∂x + 2
        let x2 = x.pow(2);
        let q = PseudoOp::from_terms(&r, 2, vec![x2.clone(), r.zero(), r.zero()]).unwrap();
        let lq = q.left_normal_form().unwrap();
        assert!(lq.terms()[0].eq_within_precision(&x2).unwrap());
        assert!(lq.terms()[1]
            .eq_within_precision(&x.scale_i64(-4))
            .unwrap());
        assert!(lq.terms()[2]
            .eq_within_precision(&r.from_i64(2))
            .unwrap());
        // round trip
        assert!(lq.to_right().unwrap().eq_within_window(&q).unwrap());
        // constant coefficients: both forms coincide
        let c = d(&r, 3, 5);
        let lc = c.left_normal_form().unwrap();
        assert!(lc.to_right().unwrap().eq_within_window(&c).unwrap());
    }

    #[test]
    fn inversion_two_sided() {
        let r = xq(10);
        // S = 1 + x∂⁻¹
        let s = PseudoOp::from_terms(
            &r,
            0,
            vec![r.one(), r.x().unwrap(), r.zero(), r.zero(), r.zero(), r.zero()],
        )
        .unwrap();
        let t = s.invert().unwrap();
        let one = PseudoOp::one(&r, 6).unwrap();
        assert!(s.multiply(&t).unwrap().eq_within_window(&one).unwrap());
        assert!(t.multiply(&s).unwrap().eq_within_window(&one).unwrap());
        assert!(t
            .coeff_of_power(-1)
            .unwrap()
            .eq_within_precision(&r.x().unwrap().neg())
            .unwrap());
        // nonzero order: ∂ + x is invertible with inverse of order −1
        let p = PseudoOp::from_terms(&r, 1, vec![r.one(), r.x().unwrap(), r.zero(), r.zero(), r.zero()])
            .unwrap();
        let pi = p.invert().unwrap();
        assert_eq!(pi.order_of().unwrap(), -1);
        assert!(p
            .multiply(&pi)
            .unwrap()
            .eq_within_window(&PseudoOp::one(&r, 4).unwrap())
            .unwrap());
        // non-unit leading coefficient
        let bad = PseudoOp::from_terms(&r, 0, vec![r.x().unwrap(), r.zero()]).unwrap();
        assert!(matches!(bad.invert(), Err(Error::NonUnit(_))));
    }

    #[test]
    fn sigma_projection() {
        let r = xq(8);
        let base = Ring::rationals();
        let x = r.x().unwrap();
        // σ(x∂ + 1) = 1
        let p = PseudoOp::from_terms(&r, 1, vec![x.clone(), r.one(), r.zero()]).unwrap();
        let s = p.sigma().unwrap();
        assert!(s
            .eq_within_window(&TruncLaurent::one(&base, "y", 2).unwrap())
            .unwrap());
        // σ(∂² + x²∂) = y⁻²
        let q = PseudoOp::from_terms(&r, 2, vec![r.one(), x.pow(2), r.zero()]).unwrap();
        let sq = q.sigma().unwrap();
        assert_eq!(sq.order_of().unwrap(), 2);
        assert_eq!(sq.coeff_at(-2).unwrap(), base.one());
        assert!(sq.coeff_at(-1).unwrap().is_zero());
        // σ(∂⁻¹) = y
        let yi = d(&r, -1, 3).sigma().unwrap();
        assert_eq!(yi.order_of().unwrap(), -1);
    }

    #[test]
    fn action_on_symbols() {
        let r = xq(8);
        let base = Ring::rationals();
        let y = |e: i64, g: i64| {
            TruncLaurent::monomial(&base, "y", base.one(), e, g).unwrap()
        };
        // act(∂, y) = 1 (constant-coefficient: multiplication by y⁻¹)
        let a = d(&r, 1, 5).act(&y(1, 5)).unwrap();
        assert!(a
            .eq_within_window(&TruncLaurent::one(&base, "y", 3).unwrap())
            .unwrap());
        // act(x∂, 1) = 0: σ(x∂) = 0
        let p = PseudoOp::from_terms(&r, 1, vec![r.x().unwrap(), r.zero(), r.zero()]).unwrap();
        let b = p.act(&y(0, 4)).unwrap();
        assert!(b.is_zero());
        // act(1 + x∂⁻¹, y⁻¹) = y⁻¹ + y
        let t = PseudoOp::from_terms(
            &r,
            0,
            vec![r.one(), r.x().unwrap(), r.zero(), r.zero()],
        )
        .unwrap();
        let c = t.act(&y(-1, 3)).unwrap();
        let want = y(-1, 2).add(&y(1, 2)).unwrap();
        assert!(c.eq_within_window(&want).unwrap());
    }

    #[test]
    fn lift_independence_of_act() {
        // Two lifts of the same symbol differing by an element of x·E act
        // identically.
        let r = xq(8);
        let base = Ring::rationals();
        let v = TruncLaurent::monomial(&base, "y", base.one(), -1, 3)
            .unwrap()
            .add(&TruncLaurent::monomial(&base, "y", base.from_i64(2), 1, 3).unwrap())
            .unwrap();
        let p = PseudoOp::from_terms(
            &r,
            0,
            vec![r.one(), r.x().unwrap(), r.zero(), r.zero()],
        )
        .unwrap();
        // canonical constant lift
        let via_act = p.act(&v).unwrap();
        // non-constant lift: add x·∂ (σ kills it)
        let q_const = PseudoOp::from_terms(
            &r,
            1,
            vec![r.one(), r.zero(), r.from_i64(2), r.zero(), r.zero()],
        )
        .unwrap();
        let extra = PseudoOp::from_terms(&r, 1, vec![r.x().unwrap(), r.zero(), r.zero(), r.zero(), r.zero()])
            .unwrap();
        let q_lift = q_const.add(&extra).unwrap();
        let via_lift = q_lift.multiply(&p).unwrap().sigma().unwrap();
        assert!(via_act.eq_within_window(&via_lift).unwrap());
    }

    #[test]
    fn differential_test() {
        let r = xq(6);
        let p = PseudoOp::from_terms(&r, 2, vec![r.one(), r.zero(), r.x().unwrap()]).unwrap();
        assert!(p.is_differential());
        assert!(!d(&r, -1, 3).is_differential());
        let s = PseudoOp::from_terms(&r, 0, vec![r.one(), r.x().unwrap()]).unwrap();
        assert!(!s.is_differential());
    }

    #[test]
    fn apply_to_function() {
        let r = xq(8);
        let x = r.x().unwrap();
        // (∂² + x)(x²) = 2 + x³
        let p = PseudoOp::from_terms(&r, 2, vec![r.one(), r.zero(), x.clone()]).unwrap();
        let f = x.pow(2);
        let out = p.apply_to_series(&f).unwrap();
        let want = r.from_i64(2).add(&x.pow(3)).unwrap();
        assert!(out.eq_within_precision(&want).unwrap());
        assert!(matches!(
            d(&r, -1, 3).apply_to_series(&f),
            Err(Error::NotDifferential(_))
        ));
    }

    #[test]
    fn associativity_spot_check() {
        let r = xq(12);
        let x = r.x().unwrap();
        let p = PseudoOp::from_terms(&r, 1, vec![r.one(), x.clone(), r.zero(), r.zero()]).unwrap();
        let q = PseudoOp::from_terms(&r, -1, vec![x.pow(2), r.one(), r.zero(), r.zero()]).unwrap();
        let s = PseudoOp::from_terms(&r, 0, vec![r.one(), r.zero(), x.clone(), r.zero()]).unwrap();
        let left = p.multiply(&q).unwrap().multiply(&s).unwrap();
        let right = p.multiply(&q.multiply(&s).unwrap()).unwrap();
        assert!(left.eq_within_window(&right).unwrap());
    }

    #[test]
    fn json_roundtrip_and_display() {
        let r = xq(6);
        let p = PseudoOp::from_terms(
            &r,
            2,
            vec![r.one(), r.x().unwrap(), r.one().neg(), r.zero()],
        )
        .unwrap();
        let back = PseudoOp::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.to_string(), "D^2 + x*D - 1");
        assert_eq!(PseudoOp::zero(&r, -3).to_string(), "0");
        assert_eq!(d(&r, -2, 2).to_string(), "D^-2");
    }

    #[test]
    fn window_bookkeeping() {
        let r = xq(8);
        // depth-2 times depth-4: result depth 2
        let a = d(&r, 1, 2);
        let b = d(&r, 0, 4);
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.depth(), 2);
        assert_eq!(p.window_bottom(), -1);
        assert!(matches!(
            p.coeff_of_power(-1),
            Err(Error::WindowTooSmall(_))
        ));
        // order additivity for monic operators
        assert_eq!(p.order_of().unwrap(), 1);
    }
}
