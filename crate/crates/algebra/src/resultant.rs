//! Resultants via the Sylvester matrix with fraction-free (Bareiss)
//! elimination over the polynomial ring.

use crate::poly::QPoly;
use crate::vars::VarTable;
use num_rational::BigRational;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ResultantError {
    #[error("{0} has degree zero in the elimination variable")]
    DegreeZero(&'static str),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}

/// Coefficients of `p` as a polynomial in `var`, highest degree first.
pub fn coefficients_in(p: &QPoly, var: usize) -> Vec<QPoly> {
    let d = p.degree_in(var) as usize;
    let vars = p.vars().clone();
    let mut out = vec![QPoly::zero(&vars); d + 1];
    for (m, c) in p.terms() {
        let e = m.0[var] as usize;
        let mut mm = m.clone();
        mm.0[var] = 0;
        let t = QPoly::from_terms(&vars, p.order(), vec![(mm, c.clone())]);
        out[d - e] = out[d - e].add(&t);
    }
    out
}

/// Sylvester-matrix resultant of `f` and `g` with respect to `var`; vanishes
/// at a parameter point iff the specializations share a root (over the
/// algebraic closure), provided the leading coefficients do not both vanish.
pub fn resultant(f: &QPoly, g: &QPoly, var: &str) -> Result<QPoly, ResultantError> {
    let vars = f.vars().clone();
    let vi = vars
        .position(var)
        .ok_or_else(|| ResultantError::UnknownVariable(var.to_string()))?;
    let m = f.degree_in(vi) as usize;
    let n = g.degree_in(vi) as usize;
    if m == 0 {
        return Err(ResultantError::DegreeZero("first argument"));
    }
    if n == 0 {
        return Err(ResultantError::DegreeZero("second argument"));
    }
    let fc = coefficients_in(f, vi);
    let gc = coefficients_in(g, vi);
    let size = m + n;
    let zero = QPoly::zero(&vars);
    let mut mat: Vec<Vec<QPoly>> = vec![vec![zero.clone(); size]; size];
    for row in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat, &vars))
}

/// Fraction-free Gaussian elimination; all divisions are exact.
fn bareiss_determinant(mut a: Vec<Vec<QPoly>>, vars: &Arc<VarTable>) -> QPoly {
    let n = a.len();
    if n == 0 {
        return QPoly::constant(vars, BigRational::from_integer(1.into()));
    }
    let mut sign = false;
    let mut prev = QPoly::constant(vars, BigRational::from_integer(1.into()));
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Pivot search.
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return QPoly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact");
            }
            a[i][k] = QPoly::zero(vars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::coeff::big_int_rat;

    #[test]
    fn evaluation_property() {
        let t = VarTable::new(&["x", "t"]);
        let f = parse_poly("x^2 - 2", &t).unwrap();
        let g = parse_poly("x - t", &t).unwrap();
        let r = resultant(&f, &g, "x").unwrap();
        assert_eq!(r, parse_poly("t^2 - 2", &t).unwrap());
    }

    #[test]
    fn common_factor_gives_zero() {
        let t = VarTable::new(&["x", "y"]);
        let f = parse_poly("x^2*y + x + 1", &t).unwrap();
        let r = resultant(&f, &f, "x").unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn degree_zero_rejected() {
        let t = VarTable::new(&["x", "y"]);
        let f = parse_poly("y + 1", &t).unwrap();
        let g = parse_poly("x", &t).unwrap();
        assert_eq!(resultant(&f, &g, "x"), Err(ResultantError::DegreeZero("first argument")));
    }

    #[test]
    fn sylvester_vs_classical() {
        // res_x(x^2+ax+b, x^2+cx+d) known closed form check at a point.
        let t = VarTable::new(&["x", "a", "b", "c", "d"]);
        let f = parse_poly("x^2 + a*x + b", &t).unwrap();
        let g = parse_poly("x^2 + c*x + d", &t).unwrap();
        let r = resultant(&f, &g, "x").unwrap();
        // (b-d)^2 + (a-c)*(a*d - b*c); sanity: vanishes when f and g share a root.
        let want = parse_poly("(b-d)^2 + (a-c)*(a*d - b*c)", &t).unwrap();
        assert_eq!(r, want);
        let shared = r
            .eval_at(&[
                ("x", big_int_rat(0)),
                ("a", big_int_rat(3)),
                ("b", big_int_rat(2)),
                ("c", big_int_rat(4)),
                ("d", big_int_rat(3)),
            ])
            .unwrap();
        assert!(num_traits::Zero::is_zero(&shared));
    }
}
