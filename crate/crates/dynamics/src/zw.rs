//! Series in the complexified phase variables: maps `(m, n) -> coefficient`
//! where the coefficient lives in the parameter ring. Keeping the phase
//! exponents structural (instead of inside the monomials) keeps the
//! homological recursion lean.

use isochron_algebra::poly::QPoly;
use isochron_algebra::vars::VarTable;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct ZwSeries {
    pub vars: Arc<VarTable>,
    pub coeffs: BTreeMap<(u32, u32), QPoly>,
}

impl ZwSeries {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        ZwSeries { vars: vars.clone(), coeffs: BTreeMap::new() }
    }

    pub fn insert_add(&mut self, key: (u32, u32), value: QPoly) {
        if value.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&key) {
            Some(c) => {
                let s = c.add(&value);
                if s.is_zero() {
                    self.coeffs.remove(&key);
                } else {
                    *c = s;
                }
            }
            None => {
                self.coeffs.insert(key, value);
            }
        }
    }

    pub fn get(&self, key: (u32, u32)) -> Option<&QPoly> {
        self.coeffs.get(&key)
    }

    pub fn add(&self, other: &ZwSeries) -> ZwSeries {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.insert_add(*k, v.clone());
        }
        out
    }

    pub fn neg(&self) -> ZwSeries {
        ZwSeries {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    /// Truncated product: drops products beyond total degree `max_deg`.
    pub fn mul_truncated(&self, other: &ZwSeries, max_deg: u32) -> ZwSeries {
        let mut out = ZwSeries::zero(&self.vars);
        for ((m1, n1), c1) in &self.coeffs {
            for ((m2, n2), c2) in &other.coeffs {
                let key = (m1 + m2, n1 + n2);
                if key.0 + key.1 > max_deg {
                    continue;
                }
                out.insert_add(key, c1.mul(c2));
            }
        }
        out
    }

    /// d/dz: `(m, n) -> (m-1, n)` scaled by `m`.
    pub fn d_dz(&self) -> ZwSeries {
        let mut out = ZwSeries::zero(&self.vars);
        for ((m, n), c) in &self.coeffs {
            if *m > 0 {
                out.insert_add(
                    (m - 1, *n),
                    c.scale(&isochron_algebra::coeff::big_int_rat(*m as i64)),
                );
            }
        }
        out
    }

    /// d/dw: `(m, n) -> (m, n-1)` scaled by `n`.
    pub fn d_dw(&self) -> ZwSeries {
        let mut out = ZwSeries::zero(&self.vars);
        for ((m, n), c) in &self.coeffs {
            if *n > 0 {
                out.insert_add(
                    (*m, n - 1),
                    c.scale(&isochron_algebra::coeff::big_int_rat(*n as i64)),
                );
            }
        }
        out
    }

    pub fn truncate(&self, max_deg: u32) -> ZwSeries {
        ZwSeries {
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|((m, n), _)| m + n <= max_deg)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn max_total_degree(&self) -> u32 {
        self.coeffs.keys().map(|(m, n)| m + n).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Expand a polynomial in a table containing `z` and `w` into a series
    /// over the reduced table (phase variables removed).
    pub fn from_poly(p: &QPoly, reduced: &Arc<VarTable>) -> ZwSeries {
        let src = p.vars();
        let zi = src.position("z").expect("table lacks z");
        let wi = src.position("w").expect("table lacks w");
        let mut out = ZwSeries::zero(reduced);
        let mut buckets: BTreeMap<(u32, u32), Vec<(isochron_algebra::vars::Monomial, num_rational::BigRational)>> =
            BTreeMap::new();
        for (m, c) in p.terms() {
            let key = (m.0[zi], m.0[wi]);
            let mut e = vec![0u32; reduced.len()];
            for (i, &ex) in m.0.iter().enumerate() {
                if i == zi || i == wi || ex == 0 {
                    continue;
                }
                let j = reduced
                    .position(src.name(i))
                    .unwrap_or_else(|| panic!("variable {} missing", src.name(i)));
                e[j] = ex;
            }
            buckets
                .entry(key)
                .or_default()
                .push((isochron_algebra::vars::Monomial(e), c.clone()));
        }
        for (key, terms) in buckets {
            let poly = QPoly::from_terms(
                reduced,
                &isochron_algebra::vars::TermOrder::grevlex(reduced.len()),
                terms,
            );
            out.insert_add(key, poly);
        }
        out
    }

    /// Reassemble into a polynomial over a table containing `z` and `w`.
    pub fn to_poly(&self, target: &Arc<VarTable>) -> QPoly {
        let zi = target.position("z").expect("table lacks z");
        let wi = target.position("w").expect("table lacks w");
        let mut acc = QPoly::zero(target);
        for ((m, n), c) in &self.coeffs {
            let base = c.embed(target);
            let mut mono = isochron_algebra::vars::Monomial::one(target.len());
            mono.0[zi] = *m;
            mono.0[wi] = *n;
            acc = acc.add(&base.mul_term(&mono, &num_rational::BigRational::from_integer(1.into())));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;
    use isochron_algebra::parse::parse_poly;

    #[test]
    fn roundtrip_poly_series() {
        let big = tables::complex_plane();
        let reduced = tables::params();
        let p = parse_poly("b20*z^2 - 3*I*b11*z*w + w^3", &big).unwrap();
        let s = ZwSeries::from_poly(&p, &reduced);
        assert_eq!(s.coeffs.len(), 3);
        assert_eq!(s.to_poly(&big), p);
    }

    #[test]
    fn derivative_shifts_indices() {
        let big = tables::complex_plane();
        let reduced = tables::params();
        let p = parse_poly("z^2*w", &big).unwrap();
        let s = ZwSeries::from_poly(&p, &reduced);
        let dz = s.d_dz();
        assert_eq!(dz.to_poly(&big), parse_poly("2*z*w", &big).unwrap());
        let dw = s.d_dw();
        assert_eq!(dw.to_poly(&big), parse_poly("z^2", &big).unwrap());
    }
}
