//! Modular Groebner pipeline: computation over prime fields, rational
//! reconstruction of coefficients, multi-prime agreement, and the two-sided
//! variety-decomposition check.
//!
//! The default prime list starts at 32452843 followed by the next primes above
//! 2^24, which leaves ample headroom for reconstructing the coefficients that
//! actually occur here.

use crate::coeff::ModP;
use crate::groebner::{
    buchberger_with, normal_form, radical_membership, GbConfig, GbError, GroebnerBasis, Ideal,
};
use crate::poly::{MPoly, PPoly, QPoly};
use crate::vars::TermOrder;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModularError {
    #[error("unlucky primes: basis leading-term shapes disagree ({0})")]
    UnluckyPrime(String),
    #[error("prime list exhausted before two primes agreed")]
    PrimesExhausted,
    #[error("generator has a denominator divisible by {0}")]
    BadDenominator(u64),
    #[error(transparent)]
    Gb(#[from] GbError),
}

/// Deterministic primality by trial division (the moduli here are < 2^32).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = 11u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The paper's prime, then the next primes above 2^24.
pub fn default_primes(count: usize) -> Vec<u64> {
    let mut out = vec![32452843u64];
    let mut n = (1u64 << 24) + 1;
    while out.len() < count {
        if is_prime_u64(n) && !out.contains(&n) {
            out.push(n);
        }
        n += 2;
    }
    out
}

/// Wang-style rational reconstruction: the unique `n/d` with
/// `|n|, d <= sqrt(p/2)`, `gcd(d, p) = 1` and `n ≡ residue*d (mod p)`,
/// if it exists.
pub fn rat_reconstruct(residue: &ModP) -> Option<BigRational> {
    let p = residue.modulus;
    assert!(p > 1, "reconstruction needs a concrete modulus");
    let bound_sq = BigInt::from(p / 2);
    let bound = |x: &BigInt| x * x <= bound_sq;

    let mut r0 = BigInt::from(p);
    let mut r1 = BigInt::from(residue.value);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while !r1.is_zero() && !bound(&r1) {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let num = if t1.is_negative() { -r1.clone() } else { r1.clone() };
    let den = t1.abs();
    if !bound(&num.abs()) || !bound(&den) {
        return None;
    }
    if den.gcd(&BigInt::from(p)) != BigInt::one() {
        return None;
    }
    if num.gcd(&den) != BigInt::one() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Reconstruct every coefficient of a mod-p polynomial; `None` if any fails.
pub fn lift_poly(p: &PPoly, vars_order: &TermOrder) -> Option<QPoly> {
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let q = rat_reconstruct(c)?;
        terms.push((m.clone(), q));
    }
    Some(MPoly::from_terms(p.vars(), vars_order, terms))
}

/// Reduced basis over Q obtained by per-prime computation, reconstruction and
/// two-prime agreement, verified by reducing every original generator to zero.
pub fn modular_gb(
    ideal: &Ideal<BigRational>,
    primes: &[u64],
    cfg: &GbConfig,
) -> Result<GroebnerBasis<BigRational>, ModularError> {
    let order = ideal.order.clone();
    let mut candidate: Option<(u64, Vec<QPoly>)> = None;
    let mut shapes_seen: Vec<(u64, usize)> = Vec::new();
    for &p in primes {
        // Reduce generators mod p.
        let mut gens_p = Vec::with_capacity(ideal.gens.len());
        let mut ok = true;
        for g in &ideal.gens {
            match g.mod_p(p) {
                Some(gp) => gens_p.push(gp),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            return Err(ModularError::BadDenominator(p));
        }
        let gb_p = buchberger_with(&Ideal::new(gens_p, order.clone())?, cfg)?;
        shapes_seen.push((p, gb_p.basis.len()));
        let lifted: Option<Vec<QPoly>> =
            gb_p.basis.iter().map(|b| lift_poly(b, &order)).collect();
        let Some(lifted) = lifted else { continue };
        match &candidate {
            None => candidate = Some((p, lifted)),
            Some((_, prev)) => {
                if prev.len() == lifted.len()
                    && prev.iter().zip(&lifted).all(|(a, b)| a == b)
                {
                    // Two primes agree; verify over Q.
                    let all_reduce = ideal
                        .gens
                        .iter()
                        .all(|g| normal_form(g, &lifted, &order).is_zero());
                    if all_reduce {
                        return Ok(GroebnerBasis {
                            basis: lifted,
                            order,
                            reduced: true,
                            pairs_processed: 0,
                        });
                    }
                } else if prev.len() != lifted.len() {
                    return Err(ModularError::UnluckyPrime(format!(
                        "basis sizes {:?}",
                        shapes_seen
                    )));
                }
                candidate = Some((p, lifted));
            }
        }
    }
    Err(ModularError::PrimesExhausted)
}

/// Field selector for decomposition checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime(u64),
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// One record per tested polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionCheck {
    pub poly: String,
    pub direction: String,
    pub field: String,
    pub result: bool,
}

/// Two-sided report: `forward` asks whether each generator of `L` vanishes on
/// the union of the component varieties; `backward` asks whether each
/// generator of the intersection ideal vanishes on `V(L)`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub forward: Vec<DecompositionCheck>,
    pub backward: Vec<DecompositionCheck>,
    pub fields_used: Vec<String>,
    pub intersection_generators: Vec<String>,
}

impl DecompositionReport {
    pub fn all_true(&self) -> bool {
        self.forward.iter().all(|c| c.result) && self.backward.iter().all(|c| c.result)
    }
}

/// Verification plan: which field carries each direction. The backward
/// direction defaults to modular fields because the rational computation is
/// generally infeasible for the ideals this crate targets.
#[derive(Debug, Clone)]
pub struct DecompositionPlan {
    pub forward: FieldSpec,
    pub backward: Vec<FieldSpec>,
    pub cfg: GbConfig,
}

impl Default for DecompositionPlan {
    fn default() -> Self {
        let primes = default_primes(2);
        DecompositionPlan {
            forward: FieldSpec::Rational,
            backward: primes.into_iter().map(FieldSpec::Prime).collect(),
            cfg: GbConfig::default(),
        }
    }
}

fn radical_membership_spec(
    f: &QPoly,
    ideal: &Ideal<BigRational>,
    field: FieldSpec,
    cfg: &GbConfig,
) -> Result<bool, ModularError> {
    match field {
        FieldSpec::Rational => Ok(radical_membership(f, ideal, cfg)?),
        FieldSpec::Prime(p) => {
            let fp = f.mod_p(p).ok_or(ModularError::BadDenominator(p))?;
            let mut gens = Vec::with_capacity(ideal.gens.len());
            for g in &ideal.gens {
                gens.push(g.mod_p(p).ok_or(ModularError::BadDenominator(p))?);
            }
            let ip = Ideal::new(gens, ideal.order.clone())?;
            Ok(radical_membership(&fp, &ip, cfg)?)
        }
    }
}

/// Check `V(L) = V(components[0]) ∪ ... ∪ V(components[n-1])` in both
/// directions, running each direction over its planned field(s).
pub fn verify_decomposition(
    l_ideal: &Ideal<BigRational>,
    components: &[Ideal<BigRational>],
    plan: &DecompositionPlan,
) -> Result<DecompositionReport, ModularError> {
    assert!(!components.is_empty());
    // Intersection of all components (defines the union of the varieties).
    let mut inter = components[0].clone();
    for c in &components[1..] {
        inter = crate::groebner::ideal_intersect(&inter, c, &plan.cfg)?;
    }

    let mut fields_used: Vec<String> = vec![plan.forward.to_string()];
    for f in &plan.backward {
        fields_used.push(f.to_string());
    }
    fields_used.dedup();

    let mut forward = Vec::new();
    for q in &l_ideal.gens {
        let result = radical_membership_spec(q, &inter, plan.forward, &plan.cfg)?;
        forward.push(DecompositionCheck {
            poly: crate::parse::render_poly(q),
            direction: "forward".into(),
            field: plan.forward.to_string(),
            result,
        });
    }

    let mut backward = Vec::new();
    for g in &inter.gens {
        for field in &plan.backward {
            let result = radical_membership_spec(g, l_ideal, *field, &plan.cfg)?;
            backward.push(DecompositionCheck {
                poly: crate::parse::render_poly(g),
                direction: "backward".into(),
                field: field.to_string(),
                result,
            });
        }
    }

    Ok(DecompositionReport {
        forward,
        backward,
        fields_used,
        intersection_generators: inter.gens.iter().map(crate::parse::render_poly).collect(),
    })
}

pub fn biguint_bits(b: &BigUint) -> u64 {
    b.bits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{big_int_rat, big_rat};
    use crate::groebner::q_ideal;
    use crate::vars::VarTable;

    #[test]
    fn default_primes_start_at_paper_prime() {
        let ps = default_primes(3);
        assert_eq!(ps[0], 32452843);
        assert!(ps[1] > (1 << 24) && is_prime_u64(ps[1]));
        assert!(ps[2] > ps[1] && is_prime_u64(ps[2]));
    }

    #[test]
    fn reconstruct_one_half() {
        let p = 32452843u64;
        let r = ModP::from_u64(16226422, p);
        assert_eq!(rat_reconstruct(&r).unwrap(), big_rat(1, 2));
        let five = ModP::from_u64(5, p);
        assert_eq!(rat_reconstruct(&five).unwrap(), big_int_rat(5));
    }

    #[test]
    fn reconstruct_roundtrip_500() {
        use crate::coeff::ratio_mod_p;
        let p = 32452843u64;
        // Deterministic linear-congruential walk over numerators/denominators.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut step = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let mut count = 0;
        while count < 500 {
            let n = (step() % 1999) as i64 - 999;
            let d = (step() % 999) as i64 + 1;
            if n == 0 {
                continue;
            }
            let q = big_rat(n, d);
            let r = ratio_mod_p(&q, p).unwrap();
            assert_eq!(rat_reconstruct(&r).unwrap(), q, "failed at {n}/{d}");
            count += 1;
        }
    }

    #[test]
    fn modular_gb_simple() {
        let t = VarTable::new(&["x"]);
        let ideal = q_ideal(&["2*x - 1"], &t, TermOrder::lex(1)).unwrap();
        let gb = modular_gb(&ideal, &[32452843, 15485863], &GbConfig::default()).unwrap();
        assert_eq!(gb.basis.len(), 1);
        assert_eq!(crate::parse::render_poly(&gb.basis[0]), "x - 1/2");
    }

    #[test]
    fn modular_gb_matches_direct_q_basis() {
        let t = VarTable::new(&["x", "y", "z"]);
        let ideal = q_ideal(
            &[
                "x^2 + 3*y - z",
                "y^2 - 5*x*z + 1/2",
                "z^2 + x*y - 7",
            ],
            &t,
            TermOrder::grevlex(3),
        )
        .unwrap();
        let direct = crate::groebner::buchberger(&ideal).unwrap();
        let lifted = modular_gb(&ideal, &default_primes(4), &GbConfig::default()).unwrap();
        let direct_monic: Vec<_> = direct.basis.iter().map(|p| p.monic()).collect();
        let lifted_monic: Vec<_> = lifted.basis.iter().map(|p| p.monic()).collect();
        assert_eq!(direct_monic.len(), lifted_monic.len());
        for (a, b) in direct_monic.iter().zip(&lifted_monic) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn trivial_decomposition_check() {
        let t = VarTable::new(&["x", "y"]);
        let l = q_ideal(&["x"], &t, TermOrder::grevlex(2)).unwrap();
        let comps = vec![q_ideal(&["x"], &t, TermOrder::grevlex(2)).unwrap()];
        let report = verify_decomposition(&l, &comps, &DecompositionPlan::default()).unwrap();
        assert!(report.all_true());
    }
}
