//! Buchberger's algorithm, normal forms, radical membership, ideal
//! intersection and elimination.
//!
//! The pair queue uses the normal selection strategy (minimal lcm degree)
//! together with Buchberger's product and chain criteria. Resource limits are
//! structured errors, never aborts: computations over Q on large ideals can
//! genuinely be infeasible and the caller decides what to do about it.

use crate::coeff::{Coeff, GaussRat, ModP};
use crate::poly::{MPoly, QPoly};
use crate::vars::{Monomial, TermOrder, VarTable};
use num_rational::BigRational;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GbError {
    #[error("resource limit exceeded after {pairs_processed} pairs ({detail})")]
    ResourceLimit { pairs_processed: usize, detail: String },
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
}

/// Caps for Buchberger runs. Exceeding any cap yields a structured error
/// carrying the processed pair count.
#[derive(Debug, Clone)]
pub struct GbConfig {
    pub max_pairs: usize,
    pub max_basis: usize,
    /// Over Q only: cap on the bit length of any numerator/denominator.
    pub max_coeff_bits: u64,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_pairs: 2_000_000, max_basis: 20_000, max_coeff_bits: 1 << 20 }
    }
}

/// Finitely generated ideal, tied to a term order for basis computations.
#[derive(Debug, Clone)]
pub struct Ideal<C: Coeff> {
    pub gens: Vec<MPoly<C>>,
    pub order: TermOrder,
}

impl<C: Coeff> Ideal<C> {
    /// Drops zero generators; errors when no nonzero generator shares a table.
    pub fn new(gens: Vec<MPoly<C>>, order: TermOrder) -> Result<Self, GbError> {
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if let Some(first) = gens.first() {
            let vt = first.vars().clone();
            for g in &gens {
                if g.vars() != &vt {
                    return Err(GbError::InvalidIdeal("generators over different tables".into()));
                }
            }
        }
        Ok(Ideal { gens, order })
    }

    pub fn vars(&self) -> Option<&Arc<VarTable>> {
        self.gens.first().map(|g| g.vars())
    }
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis<C: Coeff> {
    pub basis: Vec<MPoly<C>>,
    pub order: TermOrder,
    pub reduced: bool,
    pub pairs_processed: usize,
}

impl<C: Coeff> GroebnerBasis<C> {
    /// `{1}` (or any unit basis) means the ideal is the whole ring.
    pub fn is_trivial(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }
}

/// Post-reduction normalization: primitive integer form over Q (coefficient
/// growth control), monic elsewhere.
pub trait GbNormalize: Coeff {
    fn normalize_basis_poly(p: &MPoly<Self>) -> MPoly<Self>;
    fn coeff_bits(p: &MPoly<Self>) -> u64;
}

impl GbNormalize for BigRational {
    fn normalize_basis_poly(p: &MPoly<Self>) -> MPoly<Self> {
        p.primitive_normal()
    }
    fn coeff_bits(p: &MPoly<Self>) -> u64 {
        p.terms()
            .iter()
            .map(|(_, c)| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl GbNormalize for ModP {
    fn normalize_basis_poly(p: &MPoly<Self>) -> MPoly<Self> {
        p.monic()
    }
    fn coeff_bits(_p: &MPoly<Self>) -> u64 {
        0
    }
}

impl GbNormalize for GaussRat {
    fn normalize_basis_poly(p: &MPoly<Self>) -> MPoly<Self> {
        p.monic()
    }
    fn coeff_bits(p: &MPoly<Self>) -> u64 {
        p.terms()
            .iter()
            .map(|(_, c)| {
                c.re.numer()
                    .bits()
                    .max(c.re.denom().bits())
                    .max(c.im.numer().bits())
                    .max(c.im.denom().bits())
            })
            .max()
            .unwrap_or(0)
    }
}

fn assert_no_algebraic<C: Coeff>(gens: &[MPoly<C>]) -> Result<(), GbError> {
    for g in gens {
        let vt = g.vars();
        for (m, _) in g.terms() {
            for i in 0..vt.len() {
                if m.0[i] > 0 && vt.square_rule(i).is_some() {
                    return Err(GbError::InvalidIdeal(format!(
                        "generator involves algebraic variable {}; fold it into the \
                         coefficient field first",
                        vt.name(i)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Remainder of `f` on division by the listed polynomials: no term of the
/// result is divisible by any leading term of `gens`. Deterministic for a
/// fixed order and generator sequence.
pub fn normal_form<C: Coeff>(f: &MPoly<C>, gens: &[MPoly<C>], order: &TermOrder) -> MPoly<C> {
    let gens: Vec<MPoly<C>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order))
        .collect();
    let lts: Vec<(Monomial, C)> = gens
        .iter()
        .map(|g| g.leading_term().cloned().expect("nonzero"))
        .collect();
    let mut p = f.with_order(order);
    let mut rem_terms: Vec<(Monomial, C)> = Vec::new();
    'outer: while let Some((m, c)) = p.leading_term().cloned() {
        for (g, (lm, lc)) in gens.iter().zip(&lts) {
            if let Some(q) = m.div(lm) {
                let factor = c.div(lc);
                p = p.sub(&g.mul_term(&q, &factor));
                continue 'outer;
            }
        }
        p = p.sub(&MPoly::from_terms(p.vars(), order, vec![(m.clone(), c.clone())]));
        rem_terms.push((m, c));
    }
    MPoly::from_terms(f.vars(), order, rem_terms)
}

fn s_polynomial<C: Coeff>(f: &MPoly<C>, g: &MPoly<C>) -> MPoly<C> {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let mf = l.div(fm).unwrap();
    let mg = l.div(gm).unwrap();
    f.mul_term(&mf, &fc.inv()).sub(&g.mul_term(&mg, &gc.inv()))
}

type PairKey = (u32, Vec<u32>, usize, usize);

fn pair_key<C: Coeff>(basis: &[MPoly<C>], i: usize, j: usize) -> PairKey {
    let l = basis[i]
        .leading_term()
        .unwrap()
        .0
        .lcm(&basis[j].leading_term().unwrap().0);
    (l.total_degree(), l.0.clone(), i, j)
}

/// Buchberger's algorithm; returns the unique reduced Groebner basis under the
/// ideal's term order.
pub fn buchberger<C: GbNormalize>(ideal: &Ideal<C>) -> Result<GroebnerBasis<C>, GbError> {
    buchberger_with(ideal, &GbConfig::default())
}

pub fn buchberger_with<C: GbNormalize>(
    ideal: &Ideal<C>,
    cfg: &GbConfig,
) -> Result<GroebnerBasis<C>, GbError> {
    assert_no_algebraic(&ideal.gens)?;
    let order = ideal.order.clone();
    if ideal.gens.is_empty() {
        return Ok(GroebnerBasis { basis: vec![], order, reduced: true, pairs_processed: 0 });
    }

    // Seed with normalized, interreduced generators.
    let mut basis: Vec<MPoly<C>> = Vec::new();
    for g in &ideal.gens {
        let r = normal_form(g, &basis, &order);
        if !r.is_zero() {
            basis.push(C::normalize_basis_poly(&r));
        }
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis { basis, order, reduced: true, pairs_processed: 0 });
    }

    let mut heap: BinaryHeap<Reverse<PairKey>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            heap.push(Reverse(pair_key(&basis, i, j)));
            pending.insert((i, j));
        }
    }

    let mut pairs_processed = 0usize;
    while let Some(Reverse((_, _, i, j))) = heap.pop() {
        pending.remove(&(i, j));
        pairs_processed += 1;
        if pairs_processed > cfg.max_pairs {
            return Err(GbError::ResourceLimit {
                pairs_processed,
                detail: "pair limit".into(),
            });
        }

        let lti = &basis[i].leading_term().unwrap().0;
        let ltj = &basis[j].leading_term().unwrap().0;
        // Product criterion.
        if lti.is_coprime_with(ltj) {
            continue;
        }
        // Chain criterion: some k with LT(k) | lcm and both (i,k),(j,k) done.
        let l = lti.lcm(ltj);
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if basis[k].leading_term().unwrap().0.divides(&l) {
                let p1 = (i.min(k), i.max(k));
                let p2 = (j.min(k), j.max(k));
                if !pending.contains(&p1) && !pending.contains(&p2) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis, &order);
        if r.is_zero() {
            continue;
        }
        let r = C::normalize_basis_poly(&r);
        if C::coeff_bits(&r) > cfg.max_coeff_bits {
            return Err(GbError::ResourceLimit {
                pairs_processed,
                detail: "coefficient growth".into(),
            });
        }
        // Unit found: the ideal is the whole ring.
        if r.is_constant() {
            return Ok(GroebnerBasis {
                basis: vec![r.monic()],
                order,
                reduced: true,
                pairs_processed,
            });
        }
        basis.push(r);
        if basis.len() > cfg.max_basis {
            return Err(GbError::ResourceLimit {
                pairs_processed,
                detail: "basis size".into(),
            });
        }
        let t = basis.len() - 1;
        for k in 0..t {
            heap.push(Reverse(pair_key(&basis, k, t)));
            pending.insert((k, t));
        }
    }

    Ok(GroebnerBasis {
        basis: reduce_basis(basis, &order),
        order,
        reduced: true,
        pairs_processed,
    })
}

/// Minimalize and tail-reduce; elements come out monic, sorted by leading
/// monomial ascending, so the reduced basis is unique for the order.
fn reduce_basis<C: Coeff>(mut basis: Vec<MPoly<C>>, order: &TermOrder) -> Vec<MPoly<C>> {
    // Minimal: drop any element whose LT is divisible by another's LT.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lti = &basis[i].leading_term().unwrap().0;
            let ltj = &basis[j].leading_term().unwrap().0;
            if ltj.divides(lti) && (lti != ltj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<MPoly<C>> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(p, k)| if k { Some(p) } else { None })
        .collect();
    // Tail-reduce each against the others.
    for i in 0..minimal.len() {
        let others: Vec<MPoly<C>> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, p)| if j != i { Some(p.clone()) } else { None })
            .collect();
        minimal[i] = normal_form(&minimal[i], &others, order).monic();
    }
    minimal.retain(|p| !p.is_zero());
    minimal.sort_by(|a, b| {
        order.cmp(&a.leading_term().unwrap().0, &b.leading_term().unwrap().0)
    });
    minimal
}

fn fresh_name(vars: &Arc<VarTable>, base: &str) -> String {
    if vars.position(base).is_none() {
        return base.to_string();
    }
    (0..)
        .map(|k| format!("{base}{k}"))
        .find(|n| vars.position(n).is_none())
        .unwrap()
}

/// Radical membership: `f` vanishes on `V(I)` iff the reduced basis of
/// `<I, 1 - t*f>` (fresh `t`) is `{1}`.
pub fn radical_membership<C: GbNormalize>(
    f: &MPoly<C>,
    ideal: &Ideal<C>,
    cfg: &GbConfig,
) -> Result<bool, GbError> {
    assert!(!f.is_zero(), "radical membership of the zero polynomial");
    let vars = match ideal.vars() {
        Some(v) => v.clone(),
        None => f.vars().clone(),
    };
    // Cheap decisive path: f already reduces to zero (f is in the ideal).
    let pre = normal_form(&f.with_order(&ideal.order), &ideal.gens, &ideal.order);
    if pre.is_zero() {
        return Ok(true);
    }
    let tname = fresh_name(&vars, "t");
    let big = vars.extend(&[tname.as_str()]);
    let order = TermOrder::grevlex(big.len());
    let mut gens: Vec<MPoly<C>> = ideal.gens.iter().map(|g| g.embed(&big)).collect();
    let one = MPoly::from_terms(
        &big,
        &order,
        vec![(Monomial::one(big.len()), Coeff::from_ratio(&crate::coeff::big_int_rat(1)).unwrap())],
    );
    let t = MPoly::var(&big, &tname, pre.leading_term().unwrap().1.one_like());
    // 1 - t * nf(f): equivalent generator (f == nf(f) mod I) and smaller.
    gens.push(one.sub(&t.mul(&pre.embed(&big))));
    let gb = buchberger_with(&Ideal::new(gens, order)?, cfg)?;
    Ok(gb.is_trivial())
}

/// Generators of `I ∩ J` via elimination of `t` from `t*I + (1-t)*J`.
/// `V(result) = V(I) ∪ V(J)`.
pub fn ideal_intersect<C: GbNormalize>(
    a: &Ideal<C>,
    b: &Ideal<C>,
    cfg: &GbConfig,
) -> Result<Ideal<C>, GbError> {
    let vars = match (a.vars(), b.vars()) {
        (Some(v), Some(w)) => {
            if v != w {
                return Err(GbError::InvalidIdeal("mismatched variable tables".into()));
            }
            v.clone()
        }
        (Some(v), None) | (None, Some(v)) => v.clone(),
        // Both zero ideals.
        (None, None) => return Ideal::new(vec![], a.order.clone()),
    };
    // Intersection with the zero ideal is the zero ideal.
    if a.gens.is_empty() || b.gens.is_empty() {
        return Ideal::new(vec![], a.order.clone());
    }
    let tname = fresh_name(&vars, "t");
    let big = vars.extend(&[tname.as_str()]);
    let ti = big.position(&tname).unwrap();
    let one_c: C = Coeff::from_ratio(&crate::coeff::big_int_rat(1)).unwrap();
    let order = TermOrder::lex_eliminating(big.len(), &[ti]);
    let t = MPoly::var(&big, &tname, one_c.clone()).with_order(&order);
    let one = MPoly::constant(&big, one_c).with_order(&order);
    let mut gens: Vec<MPoly<C>> = Vec::new();
    for g in &a.gens {
        gens.push(t.mul(&g.embed(&big).with_order(&order)));
    }
    let omt = one.sub(&t);
    for g in &b.gens {
        gens.push(omt.mul(&g.embed(&big).with_order(&order)));
    }
    let gb = buchberger_with(&Ideal::new(gens, order)?, cfg)?;
    let kept: Vec<MPoly<C>> = gb
        .basis
        .iter()
        .filter(|p| p.degree_in(ti) == 0)
        .map(|p| {
            p.restrict(&vars)
                .expect("eliminated polynomial must fit the original table")
                .with_order(&a.order)
        })
        .collect();
    Ideal::new(kept, a.order.clone())
}

/// `⟨I⟩ ∩ k[vars \ remove]` via a lexicographic basis with the removed
/// variables greatest. Generators stay in the original table.
pub fn eliminate<C: GbNormalize>(
    ideal: &Ideal<C>,
    remove: &[&str],
    cfg: &GbConfig,
) -> Result<Ideal<C>, GbError> {
    let vars = match ideal.vars() {
        Some(v) => v.clone(),
        None => return Ideal::new(vec![], ideal.order.clone()),
    };
    let mut front = Vec::new();
    for r in remove {
        let i = vars
            .position(r)
            .ok_or_else(|| GbError::InvalidIdeal(format!("unknown variable {r}")))?;
        front.push(i);
    }
    let order = TermOrder::lex_eliminating(vars.len(), &front);
    let gens = ideal.gens.iter().map(|g| g.with_order(&order)).collect();
    let gb = buchberger_with(&Ideal::new(gens, order)?, cfg)?;
    let kept: Vec<MPoly<C>> = gb
        .basis
        .iter()
        .filter(|p| front.iter().all(|&i| p.degree_in(i) == 0))
        .map(|p| p.with_order(&ideal.order))
        .collect();
    Ideal::new(kept, ideal.order.clone())
}

/// Convenience: Q-ideal from polynomial strings.
pub fn q_ideal(
    polys: &[&str],
    vars: &Arc<VarTable>,
    order: TermOrder,
) -> Result<Ideal<BigRational>, GbError> {
    let mut gens = Vec::new();
    for s in polys {
        let p = crate::parse::parse_poly(s, vars)
            .map_err(|e| GbError::InvalidIdeal(format!("{e}")))?;
        gens.push(p.with_order(&order));
    }
    Ideal::new(gens, order)
}

/// Fold the adjoined imaginary unit of a rational polynomial into Gaussian
/// coefficients over an I-free table (for Groebner runs over Q(i)).
pub fn fold_imag(p: &QPoly, target: &Arc<VarTable>) -> MPoly<GaussRat> {
    use num_traits::Zero;
    let src = p.vars();
    let ii = src.position(crate::vars::IMAG_UNIT).expect("no imaginary unit in table");
    let map: Vec<Option<usize>> =
        (0..src.len()).map(|i| target.position(src.name(i))).collect();
    let mut terms: Vec<(Monomial, GaussRat)> = Vec::new();
    for (m, c) in p.terms() {
        let mut e = vec![0u32; target.len()];
        for (i, &ex) in m.0.iter().enumerate() {
            if i == ii || ex == 0 {
                continue;
            }
            let j = map[i].unwrap_or_else(|| panic!("variable {} missing", src.name(i)));
            e[j] = ex;
        }
        let g = if m.0[ii] % 2 == 1 {
            GaussRat::new(BigRational::zero(), c.clone())
        } else {
            GaussRat::new(c.clone(), BigRational::zero())
        };
        terms.push((Monomial(e), g));
    }
    MPoly::from_terms(target, &TermOrder::grevlex(target.len()), terms)
}

/// Inverse of [`fold_imag`].
pub fn unfold_imag(p: &MPoly<GaussRat>, target: &Arc<VarTable>) -> QPoly {
    use num_traits::Zero;
    let src = p.vars();
    let ii = target.position(crate::vars::IMAG_UNIT).expect("target lacks imaginary unit");
    let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
    for (m, c) in p.terms() {
        let mut e = vec![0u32; target.len()];
        for (i, &ex) in m.0.iter().enumerate() {
            if ex > 0 {
                let j = target
                    .position(src.name(i))
                    .unwrap_or_else(|| panic!("variable {} missing", src.name(i)));
                e[j] = ex;
            }
        }
        if !Zero::is_zero(&c.re) {
            terms.push((Monomial(e.clone()), c.re.clone()));
        }
        if !Zero::is_zero(&c.im) {
            let mut ei = e;
            ei[ii] = 1;
            terms.push((Monomial(ei), c.im.clone()));
        }
    }
    MPoly::from_terms(target, &TermOrder::grevlex(target.len()), terms)
}

/// Sign convention check used by tests: every S-polynomial of the basis
/// reduces to zero.
pub fn is_groebner<C: Coeff>(basis: &[MPoly<C>], order: &TermOrder) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j]);
            if !normal_form(&s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}
