//! Dense univariate polynomials over Q: Sturm chains, real-root isolation and
//! exact bisection refinement.

use crate::poly::QPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Dense coefficients, index = degree.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly(pub Vec<BigRational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    /// Extract from a multivariate polynomial that involves only `var`.
    pub fn from_mpoly(p: &QPoly, var: &str) -> Result<Self, String> {
        let vi = p.vars().position(var).ok_or_else(|| format!("unknown variable {var}"))?;
        let mut coeffs = vec![BigRational::zero(); p.degree_in(vi) as usize + 1];
        for (m, c) in p.terms() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && i != vi {
                    return Err(format!(
                        "polynomial is not univariate in {var}: involves {}",
                        p.vars().name(i)
                    ));
                }
            }
            coeffs[m.0[vi] as usize] += c;
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.0.len() <= 1 {
            return UniPoly(vec![]);
        }
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn rem(&self, other: &UniPoly) -> UniPoly {
        let mut r = self.0.clone();
        let d = other.degree();
        let lc = other.0.last().unwrap();
        while r.len() > d && !r.is_empty() {
            let k = r.len() - 1;
            let q = r[k].clone() / lc;
            if q.is_zero() {
                r.pop();
                continue;
            }
            let shift = k - d;
            for (i, c) in other.0.iter().enumerate() {
                let ri = &r[shift + i] - &q * c;
                r[shift + i] = ri;
            }
            while r.last().map(|c| c.is_zero()).unwrap_or(false) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Sturm chain: p, p', then negated Euclidean remainders.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(UniPoly(r.0.iter().map(|c| -c).collect()));
        }
        chain
    }

    fn sign_changes_at(chain: &[UniPoly], x: &BigRational) -> usize {
        let mut last: Option<bool> = None;
        let mut changes = 0;
        for p in chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let s = v.is_positive();
            if let Some(prev) = last {
                if prev != s {
                    changes += 1;
                }
            }
            last = Some(s);
        }
        changes
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let chain = self.sturm_chain();
        Self::sign_changes_at(&chain, lo) - Self::sign_changes_at(&chain, hi)
    }

    /// Cauchy bound on the absolute value of any real root.
    pub fn root_bound(&self) -> BigRational {
        let lc = self.0.last().expect("nonzero polynomial");
        let mut max = BigRational::zero();
        for c in &self.0[..self.0.len() - 1] {
            let a = (c / lc).abs();
            if a > max {
                max = a;
            }
        }
        max + BigRational::from_integer(BigInt::from(1))
    }

    /// Count all real roots (distinct).
    pub fn count_real_roots(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let b = self.root_bound();
        self.count_roots_in(&(-b.clone()), &b)
    }

    /// Isolating intervals `(lo, hi]` for each distinct real root, refined to
    /// width below `width`.
    pub fn isolate_real_roots(&self, width: &BigRational) -> Vec<(BigRational, BigRational)> {
        if self.degree() == 0 {
            return vec![];
        }
        let chain = self.sturm_chain();
        let b = self.root_bound();
        let mut stack = vec![(-b.clone(), b.clone())];
        let mut found = Vec::new();
        let two = BigRational::from_integer(BigInt::from(2));
        while let Some((lo, hi)) = stack.pop() {
            let n = Self::sign_changes_at(&chain, &lo) - Self::sign_changes_at(&chain, &hi);
            if n == 0 {
                continue;
            }
            let mid = (&lo + &hi) / &two;
            if n == 1 {
                let (mut l, mut h) = (lo, hi);
                while &h - &l > *width {
                    let m = (&l + &h) / &two;
                    let left = Self::sign_changes_at(&chain, &l) - Self::sign_changes_at(&chain, &m);
                    if left == 1 {
                        h = m;
                    } else {
                        l = m;
                    }
                }
                found.push((l, h));
            } else {
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        found
    }

    /// Exact rational roots found among the isolating intervals (checked by
    /// evaluation at interval endpoints and the candidate itself).
    pub fn rational_root_in(&self, lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
        // Candidates by the rational root theorem on the cleared form.
        let mut lcm = BigInt::from(1);
        for c in &self.0 {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> =
            self.0.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let a0 = ints.iter().find(|c| !c.is_zero())?.clone();
        let an = ints.last()?.clone();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for sign in [1i32, -1] {
                    let cand = BigRational::new(p.clone() * BigInt::from(sign), q.clone());
                    if &cand > lo && &cand <= hi && self.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::from(1)];
    }
    // Trial division is adequate for the magnitudes that occur here.
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    let limit = BigInt::from(1_000_000);
    while &d * &d <= n && d <= limit {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{big_int_rat, big_rat};

    fn up(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| big_int_rat(c)).collect())
    }

    #[test]
    fn sturm_counts_roots_of_cubic() {
        // (x-1)(x+2)(x-5) = x^3 - 4x^2 - 7x + 10
        let p = up(&[10, -7, -4, 1]);
        assert_eq!(p.count_real_roots(), 3);
        assert_eq!(p.count_roots_in(&big_int_rat(0), &big_int_rat(2)), 1);
    }

    #[test]
    fn isolation_refines() {
        let p = up(&[-2, 0, 1]); // x^2 - 2
        let roots = p.isolate_real_roots(&big_rat(1, 1000));
        assert_eq!(roots.len(), 2);
        let sqrt2 = 1.4142135623730951f64;
        let hi = &roots[1];
        let mid = (crate::poly::rational_to_f64(&hi.0) + crate::poly::rational_to_f64(&hi.1)) / 2.0;
        assert!((mid - sqrt2).abs() < 1e-3);
    }

    #[test]
    fn no_real_roots() {
        let p = up(&[1, 0, 1]); // x^2 + 1
        assert_eq!(p.count_real_roots(), 0);
    }

    #[test]
    fn rational_root_found() {
        let p = up(&[-1, 0, 0, 2]); // 2x^3 - 1? coefficients [−1,0,0,2] = 2x^3 − 1
        let roots = p.isolate_real_roots(&big_rat(1, 64));
        assert_eq!(roots.len(), 1);
        // 2x^3-1 has no rational root; x - 1/2 divides 2x-1 instead:
        assert!(p.rational_root_in(&roots[0].0, &roots[0].1).is_none());
        let q = up(&[-1, 2]); // 2x - 1
        let r = q.isolate_real_roots(&big_rat(1, 64));
        assert_eq!(q.rational_root_in(&r[0].0, &r[0].1).unwrap(), big_rat(1, 2));
    }
}
