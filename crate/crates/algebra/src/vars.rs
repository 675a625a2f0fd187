//! Variable tables and monomials.
//!
//! A [`VarTable`] is shared (via `Arc`) by every polynomial of a computation.
//! A variable may be marked *algebraic of degree two*: its square reduces to a
//! fixed rational constant after every multiplication. The imaginary unit
//! (`I^2 -> -1`) and the quadratic surd used by the bifurcation chain
//! (`q721^2 -> 721`) are both handled this way, so a single polynomial engine
//! serves real, complexified and extension-field computations.

use crate::coeff::big_int_rat;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Canonical name of the adjoined imaginary unit.
pub const IMAG_UNIT: &str = "I";

#[derive(Debug, Clone)]
pub struct VarTable {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    /// `sq[i] = Some(c)` marks variable `i` as algebraic with `v^2 = c`.
    sq: Vec<Option<BigRational>>,
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.sq == other.sq
    }
}
impl Eq for VarTable {}

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        let mut sq = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let prev = index.insert(n.clone(), i);
            assert!(prev.is_none(), "duplicate variable {n}");
            sq.push(if n == IMAG_UNIT { Some(big_int_rat(-1)) } else { None });
        }
        Arc::new(VarTable { names, index, sq })
    }

    /// Table with an additional algebraic variable `name` satisfying `name^2 = c`.
    pub fn with_algebraic(self: &Arc<Self>, name: &str, c: BigRational) -> Arc<Self> {
        let mut t = (**self).clone();
        assert!(!t.index.contains_key(name), "variable {name} already present");
        t.index.insert(name.to_string(), t.names.len());
        t.names.push(name.to_string());
        t.sq.push(Some(c));
        Arc::new(t)
    }

    /// Table extended by fresh ordinary variables (appended last).
    pub fn extend<S: AsRef<str>>(self: &Arc<Self>, names: &[S]) -> Arc<Self> {
        let mut t = (**self).clone();
        for n in names {
            let n = n.as_ref();
            assert!(!t.index.contains_key(n), "variable {n} already present");
            t.index.insert(n.to_string(), t.names.len());
            t.names.push(n.to_string());
            t.sq.push(None);
        }
        Arc::new(t)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
    pub fn square_rule(&self, i: usize) -> Option<&BigRational> {
        self.sq[i].as_ref()
    }
    pub fn has_algebraic(&self) -> bool {
        self.sq.iter().any(|s| s.is_some())
    }
}

/// Exponent vector over a shared variable table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of exponent vectors (no algebraic reduction; see `MPoly::mul`).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise divisibility. Algebraic variables are excluded by the
    /// caller when units are allowed.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial comparison orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrevLex,
}

/// A total, multiplicative monomial order: `kind` plus a variable priority
/// permutation (`perm[0]` is the greatest variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    data: Arc<OrderData>,
}

#[derive(Debug, PartialEq, Eq)]
struct OrderData {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, perm: Vec<usize>) -> Self {
        TermOrder { data: Arc::new(OrderData { kind, perm }) }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::GrevLex, (0..nvars).collect())
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, (0..nvars).collect())
    }

    /// Lex order with the variables in `front` greatest (in the given order),
    /// the rest following in table order. Used for elimination.
    pub fn lex_eliminating(nvars: usize, front: &[usize]) -> Self {
        let mut perm: Vec<usize> = front.to_vec();
        for i in 0..nvars {
            if !front.contains(&i) {
                perm.push(i);
            }
        }
        Self::new(OrderKind::Lex, perm)
    }

    pub fn kind(&self) -> OrderKind {
        self.data.kind
    }

    pub fn perm(&self) -> &[usize] {
        &self.data.perm
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let perm = &self.data.perm;
        match self.data.kind {
            OrderKind::Lex => {
                for &i in perm {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => {
                let da: u32 = perm.iter().map(|&i| a.0[i]).sum();
                let db: u32 = perm.iter().map(|&i| b.0[i]).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Ties: the monomial with the smaller exponent on the least
                // variable (scanning from the back) is the greater one.
                for &i in perm.iter().rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grevlex_classic() {
        // In k[x,y,z] with x>y>z: x^2 > x*y > y^2 > x*z > y*z > z^2.
        let ord = TermOrder::grevlex(3);
        let seq = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn lex_with_permutation() {
        // Priority z > x over [x, y, z].
        let ord = TermOrder::new(OrderKind::Lex, vec![2, 0, 1]);
        assert_eq!(ord.cmp(&m(&[5, 0, 1]), &m(&[0, 0, 2])), std::cmp::Ordering::Less);
    }

    #[test]
    fn one_is_minimal() {
        let ord = TermOrder::grevlex(2);
        let one = Monomial::one(2);
        assert_eq!(ord.cmp(&m(&[0, 1]), &one), std::cmp::Ordering::Greater);
    }

    #[test]
    fn table_with_imaginary_unit() {
        let t = VarTable::new(&["a", "I", "x"]);
        assert!(t.square_rule(1).is_some());
        assert!(t.square_rule(0).is_none());
    }
}
