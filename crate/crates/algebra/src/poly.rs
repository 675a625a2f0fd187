//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in descending term order; no zero coefficient is ever
//! stored, so structural equality is polynomial equality (for equal orders; a
//! canonical re-sort covers the mixed case). Squares of algebraic variables
//! are reduced after every multiplication.

use crate::coeff::{ratio_mod_p, Coeff, ModP};
use crate::vars::{Monomial, TermOrder, VarTable};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct MPoly<C: Coeff> {
    vars: Arc<VarTable>,
    order: TermOrder,
    /// Sorted descending under `order`; coefficients nonzero.
    terms: Vec<(Monomial, C)>,
}

pub type QPoly = MPoly<BigRational>;
pub type PPoly = MPoly<ModP>;

impl<C: Coeff> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars != other.vars {
            return false;
        }
        if self.order == other.order {
            return self.terms == other.terms;
        }
        let mut a: Vec<_> = self.terms.iter().collect();
        let mut b: Vec<_> = other.terms.iter().collect();
        a.sort_by(|x, y| x.0.cmp(&y.0));
        b.sort_by(|x, y| x.0.cmp(&y.0));
        a == b
    }
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        MPoly { vars: vars.clone(), order: TermOrder::grevlex(vars.len()), terms: vec![] }
    }

    pub fn zero_with(vars: &Arc<VarTable>, order: &TermOrder) -> Self {
        MPoly { vars: vars.clone(), order: order.clone(), terms: vec![] }
    }

    pub fn constant(vars: &Arc<VarTable>, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((Monomial::one(vars.len()), c));
        }
        p
    }

    pub fn var(vars: &Arc<VarTable>, name: &str, one: C) -> Self {
        let i = vars.position(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut p = Self::zero(vars);
        p.terms.push((Monomial::var(vars.len(), i), one));
        p
    }

    /// Build from unsorted, possibly duplicated terms.
    pub fn from_terms(vars: &Arc<VarTable>, order: &TermOrder, terms: Vec<(Monomial, C)>) -> Self {
        let mut p = MPoly { vars: vars.clone(), order: order.clone(), terms };
        p.reduce_algebraic();
        p.canonicalize();
        p
    }

    fn canonicalize(&mut self) {
        let order = self.order.clone();
        self.terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        self.terms = out;
    }

    /// Apply `v^2 -> c` reductions for algebraic variables.
    fn reduce_algebraic(&mut self) {
        if !self.vars.has_algebraic() {
            return;
        }
        let n = self.vars.len();
        for (m, c) in self.terms.iter_mut() {
            for i in 0..n {
                if m.0[i] >= 2 {
                    if let Some(sq) = self.vars.square_rule(i) {
                        let k = m.0[i] / 2;
                        m.0[i] %= 2;
                        let mut f = sq.clone();
                        let mut pow = C::from_ratio(&BigRational::one()).expect("one");
                        let mut kk = k;
                        // square-and-multiply on the reduction constant
                        while kk > 0 {
                            if kk & 1 == 1 {
                                pow = pow.mul(&C::from_ratio(&f).expect("reduction constant"));
                            }
                            f = &f * &f;
                            kk >>= 1;
                        }
                        *c = c.mul(&pow);
                    }
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<&C> {
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            Some(&self.terms[0].1)
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree_in(var)).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.iter().find(|(mm, _)| mm == m).map(|(_, c)| c)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Re-sort under a different order (same ring).
    pub fn with_order(&self, order: &TermOrder) -> Self {
        if &self.order == order {
            return self.clone();
        }
        let mut p = self.clone();
        p.order = order.clone();
        let ord = order.clone();
        p.terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        p
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(self.vars == other.vars, "polynomials over different variable tables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let other = if self.order == other.order { other.clone() } else { other.with_order(&self.order) };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.order.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.add(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        MPoly { vars: self.vars.clone(), order: self.order.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        let mut p = self.clone();
        for (_, c) in p.terms.iter_mut() {
            *c = c.neg();
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero_with(&self.vars, &self.order);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Self::from_terms(&self.vars, &self.order, terms)
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_with(&self.vars, &self.order);
        }
        let terms: Vec<_> =
            self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc.mul(c))).collect();
        // Multiplying by a single term preserves descending order unless an
        // algebraic reduction reshuffles exponents.
        if self.vars.has_algebraic() {
            Self::from_terms(&self.vars, &self.order, terms)
        } else {
            MPoly { vars: self.vars.clone(), order: self.order.clone(), terms }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_with(&self.vars, &self.order);
        }
        let mut p = self.clone();
        for (_, cc) in p.terms.iter_mut() {
            *cc = cc.mul(c);
        }
        p.terms.retain(|(_, cc)| !cc.is_zero());
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let one = C::from_ratio(&BigRational::one()).expect("one");
        let mut acc = Self::constant(&self.vars, one);
        acc.order = self.order.clone();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to a variable (by name).
    pub fn partial_derivative(&self, name: &str) -> Result<Self, String> {
        let i = self
            .vars
            .position(name)
            .ok_or_else(|| format!("unknown variable {name}"))?;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[i] -= 1;
            let k = C::from_ratio(&BigRational::from_integer(BigInt::from(e))).ok_or_else(
                || "derivative multiplier not representable in coefficient field".to_string(),
            )?;
            terms.push((mm, c.mul(&k)));
        }
        Ok(Self::from_terms(&self.vars, &self.order, terms))
    }

    /// Substitute polynomials for variables (a ring homomorphism). Unbound
    /// variables map to themselves.
    pub fn substitute(&self, bindings: &[(&str, &Self)]) -> Result<Self, String> {
        let mut slot: Vec<Option<&Self>> = vec![None; self.vars.len()];
        for (name, val) in bindings {
            let i = self
                .vars
                .position(name)
                .ok_or_else(|| format!("unknown variable {name}"))?;
            assert!(val.vars == self.vars, "binding over a different variable table");
            slot[i] = Some(val);
        }
        let one = C::from_ratio(&BigRational::one()).expect("one");
        let mut acc = Self::zero_with(&self.vars, &self.order);
        // Cache powers of each bound variable's image.
        let mut pow_cache: Vec<Vec<Self>> = vec![Vec::new(); self.vars.len()];
        for (m, c) in &self.terms {
            let mut term_poly = Self::constant(&self.vars, c.clone()).with_order(&self.order);
            let mut residual = Monomial::one(self.vars.len());
            for i in 0..self.vars.len() {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                match slot[i] {
                    None => residual.0[i] = e,
                    Some(img) => {
                        let cache = &mut pow_cache[i];
                        if cache.is_empty() {
                            cache.push(Self::constant(&self.vars, one.clone()).with_order(&self.order));
                        }
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap().mul(img);
                            cache.push(next);
                        }
                        term_poly = term_poly.mul(&cache[e as usize]);
                    }
                }
            }
            if !residual.is_one() {
                term_poly = term_poly.mul_term(&residual, &one);
            }
            acc = acc.add(&term_poly);
        }
        Ok(acc)
    }

    /// Full evaluation at a coefficient point (one value per variable).
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.vars.len());
        let zero = point
            .first()
            .map(|c| c.zero_like())
            .unwrap_or_else(|| C::from_ratio(&BigRational::zero()).expect("zero"));
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Map into a larger variable table (matching variables by name).
    pub fn embed(&self, bigger: &Arc<VarTable>) -> Self {
        let map: Vec<usize> = (0..self.vars.len())
            .map(|i| {
                bigger
                    .position(self.vars.name(i))
                    .unwrap_or_else(|| panic!("variable {} missing in target table", self.vars.name(i)))
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; bigger.len()];
                for (i, &ex) in m.0.iter().enumerate() {
                    e[map[i]] = ex;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Self::from_terms(bigger, &TermOrder::grevlex(bigger.len()), terms)
    }

    /// Restrict to a smaller table. Fails if the polynomial involves a
    /// variable that is missing from the target.
    pub fn restrict(&self, smaller: &Arc<VarTable>) -> Result<Self, String> {
        let map: Vec<Option<usize>> =
            (0..self.vars.len()).map(|i| smaller.position(self.vars.name(i))).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; smaller.len()];
            for (i, &ex) in m.0.iter().enumerate() {
                if ex > 0 {
                    match map[i] {
                        Some(j) => e[j] = ex,
                        None => {
                            return Err(format!(
                                "variable {} not present in target table",
                                self.vars.name(i)
                            ))
                        }
                    }
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(Self::from_terms(smaller, &TermOrder::grevlex(smaller.len()), terms))
    }

    /// Leading-coefficient-one copy.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }
}

impl QPoly {
    pub fn constant_ratio(vars: &Arc<VarTable>, c: BigRational) -> Self {
        Self::constant(vars, c)
    }

    pub fn var_q(vars: &Arc<VarTable>, name: &str) -> Self {
        Self::var(vars, name, BigRational::one())
    }

    /// Greatest common divisor of all coefficients (as positive rational:
    /// gcd of numerators over lcm of denominators).
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Divide by content; the sign of the leading coefficient is preserved.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_normal(&self) -> Self {
        let p = self.primitive_part();
        match p.leading_term() {
            Some((_, c)) if c.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// Reduce all coefficients modulo `p`; `None` if a denominator vanishes.
    pub fn mod_p(&self, p: u64) -> Option<PPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let cc = ratio_mod_p(c, p)?;
            if !Coeff::is_zero(&cc) {
                terms.push((m.clone(), cc));
            }
        }
        Some(MPoly { vars: self.vars.clone(), order: self.order.clone(), terms })
    }

    /// Split off an adjoined square root: `self = a + v*b` with `a, b` free of `v`.
    pub fn split_algebraic(&self, name: &str) -> (Self, Self) {
        let i = self.vars.position(name).expect("unknown algebraic variable");
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                a.push((m.clone(), c.clone()));
            } else {
                let mut mm = m.clone();
                mm.0[i] = 0;
                b.push((mm, c.clone()));
            }
        }
        (
            Self::from_terms(&self.vars, &self.order, a),
            Self::from_terms(&self.vars, &self.order, b),
        )
    }

    /// Exact division in the polynomial ring, additionally handling at most
    /// one adjoined algebraic variable occurring in the divisor via the
    /// conjugate trick. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        // Find an algebraic variable occurring in the divisor.
        let alg = (0..self.vars.len()).find(|&i| {
            self.vars.square_rule(i).is_some() && divisor.terms.iter().any(|(m, _)| m.0[i] > 0)
        });
        if let Some(i) = alg {
            let name = self.vars.name(i).to_string();
            let sq = self.vars.square_rule(i).unwrap().clone();
            let (a, b) = divisor.split_algebraic(&name);
            // conj = a - v*b, divisor*conj = a^2 - sq*b^2 is v-free.
            let v = Self::var_q(&self.vars, &name).with_order(&self.order);
            let conj = a.sub(&v.mul(&b));
            let norm = a.mul(&a).sub(&b.mul(&b).scale(&sq));
            if norm.is_zero() {
                return None;
            }
            let num = self.mul(&conj);
            return num.div_exact_plain(&norm);
        }
        self.div_exact_plain(divisor)
    }

    /// Single-divisor multivariate division; decisive because coefficients
    /// form a field and no algebraic reduction interferes.
    fn div_exact_plain(&self, divisor: &Self) -> Option<Self> {
        let order = &self.order;
        let divisor = divisor.with_order(order);
        let (dm, dc) = divisor.leading_term()?.clone();
        let mut rem = self.clone();
        let mut quot_terms: Vec<(Monomial, BigRational)> = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            let q = m.div(&dm)?;
            let qc = &c / &dc;
            quot_terms.push((q.clone(), qc.clone()));
            rem = rem.sub(&divisor.mul_term(&q, &qc));
        }
        Some(Self::from_terms(&self.vars, order, quot_terms))
    }

    /// Clear denominators: returns (integer-coefficient polynomial, multiplier)
    /// with `result = self * multiplier`.
    pub fn clear_denominators(&self) -> (Self, BigInt) {
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
        }
        let m = BigRational::from_integer(l.clone());
        (self.scale(&m), l)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (i, &e) in m.0.iter().enumerate() {
                t *= point[i].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Evaluate at a rational point given as (name, value) pairs; all
    /// variables occurring in the polynomial must be bound.
    pub fn eval_at(&self, point: &[(&str, BigRational)]) -> Result<BigRational, String> {
        let mut vals: Vec<Option<BigRational>> = vec![None; self.vars.len()];
        for (name, v) in point {
            let i = self.vars.position(name).ok_or_else(|| format!("unknown variable {name}"))?;
            vals[i] = Some(v.clone());
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let v = vals[i]
                        .as_ref()
                        .ok_or_else(|| format!("unbound variable {}", self.vars.name(i)))?;
                    for _ in 0..e {
                        t *= v;
                    }
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl PPoly {
    /// Lift each coefficient to the symmetric range representative over Q
    /// (used before rational reconstruction when comparing shapes).
    pub fn modulus(&self) -> Option<u64> {
        self.terms.first().map(|(_, c)| c.modulus)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts for extreme magnitudes.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

pub fn biguint_to_u64(b: &BigUint) -> Option<u64> {
    let digits = b.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{big_int_rat, big_rat};

    fn tbl() -> Arc<VarTable> {
        VarTable::new(&["x", "y", "z"])
    }

    fn x(t: &Arc<VarTable>) -> QPoly {
        QPoly::var_q(t, "x")
    }
    fn y(t: &Arc<VarTable>) -> QPoly {
        QPoly::var_q(t, "y")
    }

    #[test]
    fn arithmetic_basics() {
        let t = tbl();
        let p = x(&t).add(&y(&t));
        let q = p.mul(&p);
        let expect = x(&t)
            .mul(&x(&t))
            .add(&x(&t).mul(&y(&t)).scale(&big_int_rat(2)))
            .add(&y(&t).mul(&y(&t)));
        assert_eq!(q, expect);
        assert_eq!(q.sub(&expect), QPoly::zero(&t));
    }

    #[test]
    fn derivative_power_rule() {
        let t = tbl();
        let p = x(&t).pow(3).mul(&y(&t));
        let d = p.partial_derivative("x").unwrap();
        assert_eq!(d, x(&t).pow(2).mul(&y(&t)).scale(&big_int_rat(3)));
        assert!(QPoly::constant(&t, big_int_rat(5))
            .partial_derivative("x")
            .unwrap()
            .is_zero());
    }

    #[test]
    fn substitution_identity() {
        let t = tbl();
        let p = x(&t);
        let sub = p.substitute(&[("x", &x(&t))]).unwrap();
        assert_eq!(sub, x(&t));
    }

    #[test]
    fn imaginary_unit_reduction() {
        let t = VarTable::new(&["I", "x"]);
        let i = QPoly::var_q(&t, "I");
        let sq = i.mul(&i);
        assert_eq!(sq, QPoly::constant(&t, big_int_rat(-1)));
        let quad = i.pow(4);
        assert_eq!(quad, QPoly::constant(&t, big_int_rat(1)));
    }

    #[test]
    fn exact_division_with_imaginary_divisor() {
        let t = VarTable::new(&["I", "x"]);
        let i = QPoly::var_q(&t, "I");
        let xx = QPoly::var_q(&t, "x");
        // (1+I)*x divides 2*x^2: quotient (1-I)*x.
        let d = QPoly::constant(&t, big_int_rat(1)).add(&i).mul(&xx);
        let g = xx.pow(2).scale(&big_int_rat(2));
        let q = g.div_exact(&d).unwrap();
        let expect = QPoly::constant(&t, big_int_rat(1)).sub(&i).mul(&xx);
        assert_eq!(q, expect);
        assert_eq!(q.mul(&d), g);
    }

    #[test]
    fn content_and_primitive() {
        let t = tbl();
        let p = x(&t).scale(&big_rat(4, 3)).add(&y(&t).scale(&big_rat(2, 9)));
        let c = p.content();
        assert_eq!(c, big_rat(2, 9));
        let pp = p.primitive_part();
        assert_eq!(pp, x(&t).scale(&big_int_rat(6)).add(&y(&t)));
    }

    #[test]
    fn mod_p_roundtrip_shape() {
        let t = tbl();
        let p = x(&t).scale(&big_rat(1, 2)).add(&y(&t).scale(&big_int_rat(3)));
        let q = p.mod_p(32452843).unwrap();
        assert_eq!(q.num_terms(), 2);
        assert!(p.mod_p(2).is_none());
    }
}
