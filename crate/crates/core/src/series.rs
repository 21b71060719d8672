//! Truncated formal Laurent series over a coefficient ring.
//!
//! A [`TruncLaurent`] stores consecutive coefficients for exponents
//! `low_exp .. guaranteed_exp` of its variable. Coefficients *below* the
//! window are exactly zero; coefficients *at or above* `guaranteed_exp` are
//! unknown, never assumed. Every operation reports the largest window it can
//! honestly guarantee from its inputs.
//!
//! The order of a series is **minus** its lowest nonzero exponent, so `z⁻³`
//! has order 3 and a nonzero constant has order 0. "Monic" means the
//! coefficient at the order position is exactly 1.

use std::fmt;

use num::{BigInt, BigRational};
use serde_json::json;

use crate::error::{Error, Result};
use crate::ring::{self, Ring, RingElement};

/// A truncated Laurent series: coefficients for `low_exp .. low_exp + len`,
/// exactly zero below, unknown at `guaranteed_exp = low_exp + len` and above.
///
/// Canonical form: the first stored coefficient is nonzero (leading zeros are
/// folded into `low_exp`), so structural equality compares both the
/// mathematical value and the guaranteed window.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncLaurent {
    ring: Ring,
    var: String,
    low_exp: i64,
    coeffs: Vec<RingElement>,
}

impl TruncLaurent {
    // -- construction ---------------------------------------------------------

    fn make(ring: Ring, var: String, mut low_exp: i64, mut coeffs: Vec<RingElement>) -> Self {
        // Fold leading zeros into low_exp (they carry no information: the
        // coefficient is known zero either way).
        let mut start = 0;
        while start < coeffs.len() && coeffs[start].is_zero() {
            start += 1;
        }
        if start > 0 {
            coeffs.drain(..start);
            low_exp += start as i64;
        }
        TruncLaurent {
            ring,
            var,
            low_exp,
            coeffs,
        }
    }

    /// The zero series, known below `guaranteed`.
    pub fn zero(ring: &Ring, var: &str, guaranteed: i64) -> Self {
        TruncLaurent {
            ring: ring.clone(),
            var: var.to_string(),
            low_exp: guaranteed,
            coeffs: Vec::new(),
        }
    }

    /// c·var^exp, known up to `guaranteed` (exclusive).
    pub fn monomial(
        ring: &Ring,
        var: &str,
        c: RingElement,
        exp: i64,
        guaranteed: i64,
    ) -> Result<Self> {
        if c.ring() != ring {
            return Err(Error::RingMismatch(
                "monomial coefficient from a different ring".into(),
            ));
        }
        if guaranteed <= exp {
            return Err(Error::WindowTooSmall(format!(
                "monomial at exponent {exp} needs a window beyond it, got {guaranteed}"
            )));
        }
        let mut coeffs = vec![ring.zero(); (guaranteed - exp) as usize];
        coeffs[0] = c;
        Ok(TruncLaurent::make(
            ring.clone(),
            var.to_string(),
            exp,
            coeffs,
        ))
    }

    /// The constant series 1 known up to `guaranteed`.
    pub fn one(ring: &Ring, var: &str, guaranteed: i64) -> Result<Self> {
        TruncLaurent::monomial(ring, var, ring.one(), 0, guaranteed)
    }

    /// Build from explicit coefficients for exponents `low_exp..`.
    pub fn from_coeffs(
        ring: &Ring,
        var: &str,
        low_exp: i64,
        coeffs: Vec<RingElement>,
    ) -> Result<Self> {
        for c in &coeffs {
            if c.ring() != ring {
                return Err(Error::RingMismatch(
                    "series coefficient from a different ring".into(),
                ));
            }
        }
        Ok(TruncLaurent::make(
            ring.clone(),
            var.to_string(),
            low_exp,
            coeffs,
        ))
    }

    // -- accessors ------------------------------------------------------------

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Exponent of the first stored coefficient (the valuation when nonzero).
    pub fn low_exp(&self) -> i64 {
        self.low_exp
    }

    /// The series is known modulo var^guaranteed_exp.
    pub fn guaranteed_exp(&self) -> i64 {
        self.low_exp + self.coeffs.len() as i64
    }

    /// True when every stored coefficient vanishes (nothing nonzero is known).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at an exponent: exact zero below the window, stored value
    /// inside it, error at or above the guaranteed bound.
    pub fn coeff_at(&self, exp: i64) -> Result<RingElement> {
        if exp < self.low_exp {
            Ok(self.ring.zero())
        } else if exp < self.guaranteed_exp() {
            Ok(self.coeffs[(exp - self.low_exp) as usize].clone())
        } else {
            Err(Error::WindowTooSmall(format!(
                "coefficient at exponent {exp} requested beyond the guaranteed window {}",
                self.guaranteed_exp()
            )))
        }
    }

    /// Minus the lowest nonzero exponent; errors when all stored coefficients
    /// vanish (the true order may lie beyond the window).
    pub fn order_of(&self) -> Result<i64> {
        if self.coeffs.is_empty() {
            Err(Error::IndeterminateOrder(
                "all stored coefficients are zero; the order is not certified by this window"
                    .into(),
            ))
        } else {
            Ok(-self.low_exp)
        }
    }

    /// Leading (lowest-exponent nonzero) coefficient.
    pub fn leading_coeff(&self) -> Result<RingElement> {
        self.coeffs.first().cloned().ok_or_else(|| {
            Error::IndeterminateOrder("zero series has no leading coefficient".into())
        })
    }

    pub fn is_monic(&self) -> Result<bool> {
        Ok(self.leading_coeff()?.sub(&self.ring.one())?.is_zero())
    }

    /// Restrict the guaranteed window (dropping stored coefficients at or
    /// above `g`); a cap at or above the current bound is a no-op.
    pub fn with_guaranteed(&self, g: i64) -> Self {
        if g >= self.guaranteed_exp() {
            return self.clone();
        }
        let keep = (g - self.low_exp).max(0) as usize;
        let mut out = self.clone();
        out.coeffs.truncate(keep);
        if out.coeffs.is_empty() {
            out.low_exp = g;
        }
        TruncLaurent::make(out.ring, out.var, out.low_exp, out.coeffs)
    }

    fn check_compatible(&self, other: &TruncLaurent) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                "series over different coefficient rings".into(),
            ));
        }
        if self.var != other.var {
            return Err(Error::RingMismatch(format!(
                "series in different variables {:?} and {:?}",
                self.var, other.var
            )));
        }
        Ok(())
    }

    // -- linear arithmetic ------------------------------------------------------

    pub fn add(&self, other: &TruncLaurent) -> Result<TruncLaurent> {
        self.check_compatible(other)?;
        let g = self.guaranteed_exp().min(other.guaranteed_exp());
        let low = self.low_exp.min(other.low_exp).min(g);
        let mut coeffs = Vec::with_capacity((g - low) as usize);
        for e in low..g {
            let a = self.coeff_at(e)?;
            let b = other.coeff_at(e)?;
            coeffs.push(a.add(&b)?);
        }
        Ok(TruncLaurent::make(
            self.ring.clone(),
            self.var.clone(),
            low,
            coeffs,
        ))
    }

    pub fn neg(&self) -> TruncLaurent {
        TruncLaurent {
            ring: self.ring.clone(),
            var: self.var.clone(),
            low_exp: self.low_exp,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &TruncLaurent) -> Result<TruncLaurent> {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by a ring element (no window change).
    pub fn scale(&self, c: &RingElement) -> Result<TruncLaurent> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch(
                "scaling coefficient from a different ring".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncLaurent::make(
            self.ring.clone(),
            self.var.clone(),
            self.low_exp,
            coeffs,
        ))
    }

    pub fn scale_rational(&self, q: &BigRational) -> TruncLaurent {
        TruncLaurent::make(
            self.ring.clone(),
            self.var.clone(),
            self.low_exp,
            self.coeffs.iter().map(|a| a.scale(q)).collect(),
        )
    }

    /// Multiply by var^k (shifts the window).
    pub fn shift(&self, k: i64) -> TruncLaurent {
        TruncLaurent {
            ring: self.ring.clone(),
            var: self.var.clone(),
            low_exp: self.low_exp + k,
            coeffs: self.coeffs.clone(),
        }
    }

    // -- multiplicative structure -------------------------------------------

    /// Cauchy product. Window: with `v` the valuation bounds and `G` the
    /// guarantees, the result is known below min(v_f + G_g, v_g + G_f).
    pub fn multiply(&self, other: &TruncLaurent) -> Result<TruncLaurent> {
        self.check_compatible(other)?;
        let (vf, gf) = (self.low_exp, self.guaranteed_exp());
        let (vg, gg) = (other.low_exp, other.guaranteed_exp());
        let g = (vf + gg).min(vg + gf);
        let low = vf + vg;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(TruncLaurent::zero(&self.ring, &self.var, g));
        }
        let n = ((g - low) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![self.ring.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(TruncLaurent::make(
            self.ring.clone(),
            self.var.clone(),
            low,
            coeffs,
        ))
    }

    /// Integer power (non-negative), honest windows via `multiply`.
    pub fn pow(&self, e: u32) -> Result<TruncLaurent> {
        // 0-th power: exactly 1; give it the widest window self supports.
        if e == 0 {
            return TruncLaurent::one(&self.ring, &self.var, self.guaranteed_exp().max(1));
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Reciprocal: defined when the order is determinate and the leading
    /// coefficient is a unit. multiply(s, invert(s)) = 1 within the window.
    pub fn invert(&self) -> Result<TruncLaurent> {
        let _ = self.order_of()?; // indeterminate-order check
        let s0 = self.leading_coeff()?;
        let t0 = s0.invert().map_err(|_| {
            Error::NonUnit("leading coefficient of the series is not a unit".into())
        })?;
        let len = self.coeffs.len();
        // s = z^low·u with u a unit power series; t = z^{-low}·u^{-1}.
        let mut t: Vec<RingElement> = Vec::with_capacity(len);
        t.push(t0.clone());
        for l in 1..len {
            // t_l = -t_0 · Σ_{j<l} u_{l-j} t_j
            let mut acc = self.ring.zero();
            for (j, tj) in t.iter().enumerate().take(l) {
                let s = &self.coeffs[l - j];
                if s.is_zero() || tj.is_zero() {
                    continue;
                }
                acc = acc.add(&s.mul(tj)?)?;
            }
            t.push(t0.mul(&acc)?.neg());
        }
        Ok(TruncLaurent::make(
            self.ring.clone(),
            self.var.clone(),
            -self.low_exp,
            t,
        ))
    }

    /// The unique monic N-th root of a monic series whose order N divides.
    /// Negative N roots the reciprocal.
    pub fn nth_root(&self, n: i64) -> Result<TruncLaurent> {
        if n == 0 {
            return Err(Error::OrderNotDivisible("0-th root is undefined".into()));
        }
        let order = self.order_of()?;
        if order % n != 0 {
            return Err(Error::OrderNotDivisible(format!(
                "order {order} is not divisible by {n}"
            )));
        }
        if !self.is_monic()? {
            return Err(Error::NotMonic(
                "N-th roots are defined for monic series".into(),
            ));
        }
        if n < 0 {
            // t^n = s ⟺ t^{-n} = s^{-1}; the reciprocal of a monic series is
            // monic, with the same stored length.
            return self.invert()?.nth_root(-n);
        }
        // Normalize to a monic power series u = 1 + u_1 z + …
        let len = self.coeffs.len();
        let mut t: Vec<RingElement> = vec![self.ring.one()];
        for m in 1..len {
            // p = [z^m] (t + unknown·z^m)^n with t_m = 0: the recursion gives
            // t_m = (u_m − p_m)/n.
            let p = pow_prefix(&self.ring, &t, n as u32, m + 1)?;
            let u_m = &self.coeffs[m];
            let tm = u_m.sub(&p[m])?.scale(&BigRational::new(
                BigInt::from(1),
                BigInt::from(n),
            ));
            t.push(tm);
        }
        Ok(TruncLaurent::make(
            self.ring.clone(),
            self.var.clone(),
            self.low_exp / n,
            t,
        ))
    }

    /// Substitute g into f (both in the same variable). Requires g of
    /// strictly positive valuation; negative exponents of f additionally
    /// require a unit leading coefficient of g.
    pub fn compose(&self, g: &TruncLaurent) -> Result<TruncLaurent> {
        self.check_compatible(g)?;
        let vg = match g.order_of() {
            Ok(o) => -o,
            Err(_) => {
                return Err(Error::NonpositiveValuation(
                    "cannot certify positive valuation of an all-zero window".into(),
                ))
            }
        };
        if vg <= 0 {
            return Err(Error::NonpositiveValuation(format!(
                "substituend has valuation {vg}; composition needs valuation ≥ 1"
            )));
        }
        let (lowf, gf) = (self.low_exp, self.guaranteed_exp());
        let gg = g.guaranteed_exp();
        // Honest window: the unknown tail of f enters at g^{G_f}; an unknown
        // perturbation of g of order G_g enters first in the lowest power.
        let g_out = (vg * gf).min(lowf * vg + gg - vg);
        if self.coeffs.is_empty() {
            return Ok(TruncLaurent::zero(&self.ring, &self.var, g_out));
        }
        // Power ladder from the lowest exponent up.
        let mut p = if lowf >= 0 {
            let mut p = TruncLaurent::one(&self.ring, &self.var, g_out.max(1))?;
            for _ in 0..lowf {
                p = p.multiply(g)?;
            }
            p
        } else {
            let ginv = g.invert()?;
            let mut p = ginv.clone();
            for _ in 1..(-lowf) {
                p = p.multiply(&ginv)?;
            }
            p
        };
        let mut acc = TruncLaurent::zero(&self.ring, &self.var, g_out);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&p.scale(c)?)?;
            }
            if k + 1 < self.coeffs.len() {
                p = p.multiply(g)?;
            }
        }
        Ok(acc.with_guaranteed(g_out))
    }

    /// Compositional inverse of a series of valuation exactly 1 with unit
    /// leading coefficient: compose(f, revert(f)) = identity within window.
    pub fn revert(&self) -> Result<TruncLaurent> {
        let order = self
            .order_of()
            .map_err(|_| Error::BadValuation("cannot revert an all-zero window".into()))?;
        if -order != 1 {
            return Err(Error::BadValuation(format!(
                "reversion needs valuation exactly 1, got {}",
                -order
            )));
        }
        let f1 = self.leading_coeff()?;
        let f1_inv = f1
            .invert()
            .map_err(|_| Error::NonUnit("linear coefficient is not a unit".into()))?;
        let gf = self.guaranteed_exp();
        // g starts as f₁⁻¹·z (correct modulo z²) and each pass fixes the
        // lowest wrong coefficient of f∘g − z.
        let mut g = TruncLaurent::monomial(&self.ring, &self.var, f1_inv.clone(), 1, gf)?;
        let ident = TruncLaurent::monomial(&self.ring, &self.var, self.ring.one(), 1, gf)?;
        loop {
            let err = self.compose(&g)?.sub(&ident)?;
            let err = err.with_guaranteed(gf);
            if err.is_zero() {
                break;
            }
            let k = err.low_exp;
            let fix = err.leading_coeff()?.mul(&f1_inv)?.neg();
            let corr = TruncLaurent::monomial(&self.ring, &self.var, fix, k, k + 1)?;
            // Correction windows: keep g's full window.
            g = TruncLaurent::make(
                self.ring.clone(),
                self.var.clone(),
                g.low_exp.min(k),
                {
                    let low = g.low_exp.min(k);
                    let mut cs = Vec::with_capacity((gf - low) as usize);
                    for e in low..gf {
                        cs.push(g.coeff_at(e)?.add(&corr.coeff_at(e).unwrap_or_else(|_| self.ring.zero()))?);
                    }
                    cs
                },
            );
        }
        Ok(g)
    }

    // -- comparisons ----------------------------------------------------------

    /// Agreement on the intersection of the guaranteed windows.
    pub fn eq_within_window(&self, other: &TruncLaurent) -> Result<bool> {
        self.check_compatible(other)?;
        let g = self.guaranteed_exp().min(other.guaranteed_exp());
        let low = self.low_exp.min(other.low_exp).min(g);
        for e in low..g {
            if !self.coeff_at(e)?.sub(&other.coeff_at(e)?)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Identical windows and identical stored coefficients.
    pub fn eq_exact(&self, other: &TruncLaurent) -> bool {
        self == other
    }

    // -- JSON -----------------------------------------------------------------

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ring": self.ring.to_json(),
            "var": self.var,
            "low": self.low_exp,
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "guaranteed": self.guaranteed_exp(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TruncLaurent> {
        let ring = Ring::from_json(
            v.get("ring")
                .ok_or_else(|| Error::BadEncoding("series needs \"ring\"".into()))?,
        )?;
        let var = v
            .get("var")
            .and_then(|s| s.as_str())
            .ok_or_else(|| Error::BadEncoding("series needs \"var\"".into()))?;
        let low = v
            .get("low")
            .and_then(|n| n.as_i64())
            .ok_or_else(|| Error::BadEncoding("series needs \"low\"".into()))?;
        let coeffs = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::BadEncoding("series needs \"coeffs\"".into()))?
            .iter()
            .map(|c| RingElement::from_json(&ring, c))
            .collect::<Result<Vec<_>>>()?;
        if let Some(g) = v.get("guaranteed").and_then(|n| n.as_i64()) {
            if g != low + coeffs.len() as i64 {
                return Err(Error::BadEncoding(format!(
                    "guaranteed {} does not match low {} + {} coefficients",
                    g,
                    low,
                    coeffs.len()
                )));
            }
        }
        TruncLaurent::from_coeffs(&ring, var, low, coeffs)
    }
}

/// First `n` coefficients of (Σ t_i z^i)^e for a power series given by its
/// coefficient list (exponents 0..), with honest zero-skipping.
fn pow_prefix(ring: &Ring, t: &[RingElement], e: u32, n: usize) -> Result<Vec<RingElement>> {
    let mut acc = vec![ring.one()];
    for _ in 0..e {
        let mut next = vec![ring.zero(); n.min(acc.len() + t.len() - 1)];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in t.iter().enumerate() {
                if i + j >= next.len() {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                next[i + j] = next[i + j].add(&a.mul(b)?)?;
            }
        }
        acc = next;
    }
    acc.resize(n, ring.zero());
    Ok(acc)
}

impl fmt::Display for TruncLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.low_exp + i as i64;
            let vpow = match e {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, e),
            };
            let parts = ring::element_term_strings(c);
            if e == 0 {
                terms.extend(parts);
            } else if parts.len() == 1 {
                let s = &parts[0];
                if s == "1" {
                    terms.push(vpow);
                } else if s == "-1" {
                    terms.push(format!("-{vpow}"));
                } else {
                    terms.push(format!("{s}*{vpow}"));
                }
            } else {
                terms.push(format!("({})*{vpow}", ring::join_signed(&parts)));
            }
        }
        write!(f, "{}", ring::join_signed(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring() -> Ring {
        Ring::rationals()
    }

    fn z_mono(exp: i64, g: i64) -> TruncLaurent {
        TruncLaurent::monomial(&qring(), "z", qring().one(), exp, g).unwrap()
    }

    #[test]
    fn order_convention() {
        let r = qring();
        // z⁻³ + z has order 3
        let s = z_mono(-3, 4).add(&z_mono(1, 4)).unwrap();
        assert_eq!(s.order_of().unwrap(), 3);
        // constants have order 0
        let c = TruncLaurent::monomial(&r, "z", r.from_i64(5), 0, 6).unwrap();
        assert_eq!(c.order_of().unwrap(), 0);
        // all-zero window: indeterminate
        let zero = TruncLaurent::zero(&r, "z", 6);
        assert!(matches!(
            zero.order_of(),
            Err(Error::IndeterminateOrder(_))
        ));
    }

    #[test]
    fn multiply_orders_add() {
        let a = z_mono(-1, 5);
        let b = z_mono(1, 5);
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.order_of().unwrap(), 0);
        // (1+z)(1−z) = 1 − z²
        let one = z_mono(0, 8);
        let s = one.add(&z_mono(1, 8)).unwrap();
        let t = one.sub(&z_mono(1, 8)).unwrap();
        let prod = s.multiply(&t).unwrap();
        let want = one.sub(&z_mono(2, 8)).unwrap();
        assert!(prod.eq_within_window(&want).unwrap());
    }

    #[test]
    fn invert_power_series_and_laurent() {
        // 1/(1+z) = 1 − z + z² − …
        let one = z_mono(0, 10);
        let s = one.add(&z_mono(1, 10)).unwrap();
        let t = s.invert().unwrap();
        assert!(s.multiply(&t).unwrap().eq_within_window(&one).unwrap());
        assert_eq!(t.coeff_at(3).unwrap(), qring().from_i64(-1));
        // (z + z²)⁻¹ = z⁻¹ − 1 + z − z² + …
        let f = z_mono(1, 8).add(&z_mono(2, 8)).unwrap();
        let g = f.invert().unwrap();
        assert_eq!(g.order_of().unwrap(), 1);
        assert!(f.multiply(&g).unwrap().eq_within_window(&one).unwrap());
        assert_eq!(g.coeff_at(-1).unwrap(), qring().one());
        assert_eq!(g.coeff_at(0).unwrap(), qring().from_i64(-1));
        // non-unit leading coefficient over a polynomial ring
        let rp = Ring::polynomial(&["A"]).unwrap();
        let bad = TruncLaurent::monomial(&rp, "z", rp.symbol("A").unwrap(), 0, 4).unwrap();
        assert!(matches!(bad.invert(), Err(Error::NonUnit(_))));
    }

    #[test]
    fn nth_root_examples() {
        // √(z⁻⁴) = z⁻²
        let s = z_mono(-4, 3);
        let r = s.nth_root(2).unwrap();
        assert!(r.eq_within_window(&z_mono(-2, 3)).unwrap());
        // √(z²(1+z)) = z(1 + z/2 − z²/8 + z³/16 − …)
        let f = z_mono(2, 9).add(&z_mono(3, 9)).unwrap();
        let t = f.nth_root(2).unwrap();
        assert_eq!(t.order_of().unwrap(), -1);
        assert!(t.pow(2).unwrap().eq_within_window(&f).unwrap());
        assert_eq!(
            t.coeff_at(2).unwrap().as_rational(),
            Some(BigRational::new(BigInt::from(1), BigInt::from(2)))
        );
        assert_eq!(
            t.coeff_at(3).unwrap().as_rational(),
            Some(BigRational::new(BigInt::from(-1), BigInt::from(8)))
        );
        // divisibility violation
        assert!(matches!(
            z_mono(-3, 3).nth_root(2),
            Err(Error::OrderNotDivisible(_))
        ));
        // non-monic input
        let two = z_mono(0, 5).scale_rational(&BigRational::from_integer(BigInt::from(2)));
        assert!(matches!(two.nth_root(2), Err(Error::NotMonic(_))));
        // negative N: t = (z²(1+z))^{-1/2} satisfies t² = 1/f
        let neg = f.nth_root(-2).unwrap();
        assert!(neg
            .pow(2)
            .unwrap()
            .eq_within_window(&f.invert().unwrap())
            .unwrap());
    }

    #[test]
    fn compose_matches_inversion() {
        // z⁻¹ ∘ (z+z²) = (z+z²)⁻¹
        let zinv = z_mono(-1, 8);
        let g = z_mono(1, 8).add(&z_mono(2, 8)).unwrap();
        let c = zinv.compose(&g).unwrap();
        let inv = g.invert().unwrap();
        assert!(c.eq_within_window(&inv).unwrap());
        // identity substitution
        let f = z_mono(1, 8).add(&z_mono(2, 8)).unwrap();
        let id = z_mono(1, 8);
        assert!(f.compose(&id).unwrap().eq_within_window(&f).unwrap());
        // constant substituend is rejected
        let c2 = TruncLaurent::monomial(&qring(), "z", qring().from_i64(2), 0, 6).unwrap();
        assert!(matches!(
            f.compose(&c2),
            Err(Error::NonpositiveValuation(_))
        ));
    }

    #[test]
    fn revert_catalan_signs() {
        // revert(z + z²) = z − z² + 2z³ − 5z⁴ + …
        let f = z_mono(1, 8).add(&z_mono(2, 8)).unwrap();
        let g = f.revert().unwrap();
        assert_eq!(g.coeff_at(1).unwrap(), qring().one());
        assert_eq!(g.coeff_at(2).unwrap(), qring().from_i64(-1));
        assert_eq!(g.coeff_at(3).unwrap(), qring().from_i64(2));
        assert_eq!(g.coeff_at(4).unwrap(), qring().from_i64(-5));
        let id = z_mono(1, 8);
        assert!(f.compose(&g).unwrap().eq_within_window(&id).unwrap());
        assert!(g.compose(&f).unwrap().eq_within_window(&id).unwrap());
        // z² has valuation 2
        assert!(matches!(z_mono(2, 5).revert(), Err(Error::BadValuation(_))));
    }

    #[test]
    fn windows_are_honest() {
        // multiplying something known mod z³ by z⁵ is known mod z⁸
        let a = z_mono(0, 3);
        let b = z_mono(5, 9);
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.guaranteed_exp(), 8);
        // inverting z+z² known mod z⁵ gives a window mod z³
        let f = z_mono(1, 5).add(&z_mono(2, 5)).unwrap();
        assert_eq!(f.invert().unwrap().guaranteed_exp(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let f = z_mono(-2, 6)
            .add(&z_mono(1, 6).scale_rational(&BigRational::new(2.into(), 3.into())))
            .unwrap();
        let j = f.to_json();
        let back = TruncLaurent::from_json(&j).unwrap();
        assert!(f.eq_exact(&back));
        assert_eq!(j["low"], -2);
        assert_eq!(j["guaranteed"], 6);
    }

    #[test]
    fn display_renders_laurent_terms() {
        let f = z_mono(-1, 4)
            .sub(&z_mono(0, 4))
            .unwrap()
            .add(&z_mono(2, 4).scale_rational(&BigRational::new(1.into(), 2.into())))
            .unwrap();
        assert_eq!(f.to_string(), "z^-1 - 1 + 1/2*z^2");
    }
}
