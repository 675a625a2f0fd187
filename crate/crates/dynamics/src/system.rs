//! Planar systems with a linear center at the origin and their
//! complexifications.

use isochron_algebra::coeff::big_rat;
use isochron_algebra::poly::QPoly;
use isochron_algebra::vars::VarTable;
use num_rational::BigRational;
use num_traits::One;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SystemError {
    #[error("invalid system: {0}")]
    Invalid(String),
}

/// Real system `x' = -y + A(x,y)`, `y' = x + B(x,y)` with `A`, `B` free of
/// constant and linear terms. The polynomials live in a table containing `x`
/// and `y` alongside the parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarSystem {
    pub dx: QPoly,
    pub dy: QPoly,
    pub max_degree: u32,
}

fn phase_degree(p: &QPoly, xi: usize, yi: usize) -> u32 {
    p.terms().iter().map(|(m, _)| m.0[xi] + m.0[yi]).max().unwrap_or(0)
}

impl PlanarSystem {
    /// Validates the fixed linear part `(-y, x)` and absence of constants.
    pub fn new(dx: QPoly, dy: QPoly) -> Result<Self, SystemError> {
        let vars = dx.vars().clone();
        if dy.vars() != &vars {
            return Err(SystemError::Invalid("components over different tables".into()));
        }
        let xi = vars
            .position("x")
            .ok_or_else(|| SystemError::Invalid("table lacks x".into()))?;
        let yi = vars
            .position("y")
            .ok_or_else(|| SystemError::Invalid("table lacks y".into()))?;
        let x = QPoly::var_q(&vars, "x");
        let y = QPoly::var_q(&vars, "y");
        let a = dx.add(&y);
        let b = dy.sub(&x);
        for (label, p) in [("x'", &a), ("y'", &b)] {
            for (m, _) in p.terms() {
                if m.0[xi] + m.0[yi] < 2 {
                    return Err(SystemError::Invalid(format!(
                        "{label} must have linear part from the canonical rotation and no \
                         constant term"
                    )));
                }
            }
        }
        let max_degree = phase_degree(&dx, xi, yi).max(phase_degree(&dy, xi, yi)).max(1);
        Ok(PlanarSystem { dx, dy, max_degree })
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.dx.vars()
    }

    /// Nonlinear parts `(A, B)`.
    pub fn nonlinear_parts(&self) -> (QPoly, QPoly) {
        let vars = self.dx.vars();
        let x = QPoly::var_q(vars, "x");
        let y = QPoly::var_q(vars, "y");
        (self.dx.add(&y), self.dy.sub(&x))
    }

    /// The cubic generalized Riccati family over the standard parameter table.
    pub fn riccati_family() -> Self {
        let t = crate::tables::plane();
        let p = |s: &str| isochron_algebra::parse::parse_poly(s, &t).unwrap();
        let dx = p("-y + a02*y^2 + a03*y^3");
        let dy = p("x + b20*x^2 + b11*x*y + b02*y^2 + b30*x^3 + b21*x^2*y + b12*x*y^2");
        PlanarSystem::new(dx, dy).expect("family is well formed")
    }

    /// Same family with `a03 = 0` (the setting of the center/period analysis).
    pub fn riccati_a03_zero() -> Self {
        let t = crate::tables::plane();
        let p = |s: &str| isochron_algebra::parse::parse_poly(s, &t).unwrap();
        let dx = p("-y + a02*y^2");
        let dy = p("x + b20*x^2 + b11*x*y + b02*y^2 + b30*x^3 + b21*x^2*y + b12*x*y^2");
        PlanarSystem::new(dx, dy).expect("family is well formed")
    }

    /// Substitute parameter bindings into both components.
    pub fn substitute_params(&self, bindings: &[(&str, &QPoly)]) -> Result<Self, SystemError> {
        let dx = self
            .dx
            .substitute(bindings)
            .map_err(SystemError::Invalid)?;
        let dy = self
            .dy
            .substitute(bindings)
            .map_err(SystemError::Invalid)?;
        PlanarSystem::new(dx, dy)
    }
}

/// Complexified system `z' = z + X(z,w)`, `w' = -w - Y(z,w)`; `X`, `Y` carry
/// no constant or linear terms.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSystem {
    pub x_part: QPoly,
    pub y_part: QPoly,
}

impl ComplexSystem {
    pub fn new(x_part: QPoly, y_part: QPoly) -> Result<Self, SystemError> {
        let vars = x_part.vars().clone();
        let zi = vars
            .position("z")
            .ok_or_else(|| SystemError::Invalid("table lacks z".into()))?;
        let wi = vars
            .position("w")
            .ok_or_else(|| SystemError::Invalid("table lacks w".into()))?;
        for p in [&x_part, &y_part] {
            for (m, _) in p.terms() {
                if m.0[zi] + m.0[wi] < 2 {
                    return Err(SystemError::Invalid(
                        "nonlinearities must start at degree two".into(),
                    ));
                }
            }
        }
        Ok(ComplexSystem { x_part, y_part })
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.x_part.vars()
    }

    /// Right-hand sides `(z', w')`.
    pub fn fields(&self) -> (QPoly, QPoly) {
        let vars = self.vars();
        let z = QPoly::var_q(vars, "z");
        let w = QPoly::var_q(vars, "w");
        (z.add(&self.x_part), w.neg().sub(&self.y_part))
    }
}

/// Image of the real system under `z = x + i y`, `w = x - i y` followed by
/// the time rescaling that turns the rotation into `diag(1, -1)`:
/// `X = B - i A`, `Y = B + i A` evaluated at `x = (z+w)/2`, `y = -i(z-w)/2`.
pub fn complexify(s: &PlanarSystem) -> ComplexSystem {
    let src = s.vars().clone();
    // Joint table: source variables plus z, w.
    let mut names: Vec<String> = src.names().to_vec();
    for extra in ["z", "w"] {
        if src.position(extra).is_none() {
            names.push(extra.to_string());
        }
    }
    let joint = VarTable::new(&names);
    let (a, b) = s.nonlinear_parts();
    let a = a.embed(&joint);
    let b = b.embed(&joint);
    let z = QPoly::var_q(&joint, "z");
    let w = QPoly::var_q(&joint, "w");
    let i = QPoly::var_q(&joint, "I");
    let half = QPoly::constant(&joint, big_rat(1, 2));
    let x_image = z.add(&w).mul(&half);
    let y_image = i.neg().mul(&z.sub(&w)).mul(&half);
    let bind: Vec<(&str, &QPoly)> = vec![("x", &x_image), ("y", &y_image)];
    let a_zw = a.substitute(&bind).expect("substitution");
    let b_zw = b.substitute(&bind).expect("substitution");
    let x_part = b_zw.sub(&i.mul(&a_zw));
    let y_part = b_zw.add(&i.mul(&a_zw));

    // Restrict to the source table with x, y replaced by z, w.
    let mut target_names: Vec<String> = Vec::new();
    for n in src.names() {
        match n.as_str() {
            "x" => target_names.push("z".into()),
            "y" => target_names.push("w".into()),
            other => target_names.push(other.to_string()),
        }
    }
    if !target_names.iter().any(|n| n == "z") {
        target_names.push("z".into());
        target_names.push("w".into());
    }
    let target = VarTable::new(&target_names);
    ComplexSystem::new(
        x_part.restrict(&target).expect("x, y eliminated"),
        y_part.restrict(&target).expect("x, y eliminated"),
    )
    .expect("complexification preserves the form")
}

/// Exact rational `1` as a polynomial constant, used by several call sites.
pub fn one(vars: &Arc<VarTable>) -> QPoly {
    QPoly::constant(vars, BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use isochron_algebra::parse::parse_poly;

    #[test]
    fn rejects_wrong_linear_part() {
        let t = crate::tables::plane();
        let dx = parse_poly("y", &t).unwrap();
        let dy = parse_poly("x", &t).unwrap();
        assert!(PlanarSystem::new(dx, dy).is_err());
    }

    #[test]
    fn zero_nonlinearity_complexifies_to_linear() {
        let t = crate::tables::plane();
        let s = PlanarSystem::new(
            parse_poly("-y", &t).unwrap(),
            parse_poly("x", &t).unwrap(),
        )
        .unwrap();
        let c = complexify(&s);
        assert!(c.x_part.is_zero());
        assert!(c.y_part.is_zero());
    }

    #[test]
    fn condition_one_becomes_quadratic_complex_system() {
        // b11 = 2*I*b20, b02 = -b20, everything else zero:
        // the image is z' = z + b20 z^2, w' = -w - b20 z^2.
        let fam = PlanarSystem::riccati_family();
        let t = fam.vars().clone();
        let p = |s: &str| parse_poly(s, &t).unwrap();
        let zero = p("0");
        let b11 = p("2*I*b20");
        let b02 = p("-b20");
        let s = fam
            .substitute_params(&[
                ("a02", &zero),
                ("a03", &zero),
                ("b30", &zero),
                ("b21", &zero),
                ("b12", &zero),
                ("b11", &b11),
                ("b02", &b02),
            ])
            .unwrap();
        let c = complexify(&s);
        let ct = c.vars().clone();
        let cp = |s: &str| parse_poly(s, &ct).unwrap();
        assert_eq!(c.x_part, cp("b20*z^2"));
        assert_eq!(c.y_part, cp("b20*z^2"));
    }

    #[test]
    fn condition_two_matches_printed_complex_system() {
        // b30 = b11^2/9, other parameters zero: the complexified right-hand
        // side carries coefficients -I*b11/4 ... and the printed cubic tail.
        let fam = PlanarSystem::riccati_family();
        let t = fam.vars().clone();
        let p = |s: &str| parse_poly(s, &t).unwrap();
        let zero = p("0");
        let b30 = p("1/9*b11^2");
        let s = fam
            .substitute_params(&[
                ("a02", &zero),
                ("a03", &zero),
                ("b20", &zero),
                ("b02", &zero),
                ("b21", &zero),
                ("b12", &zero),
                ("b30", &b30),
            ])
            .unwrap();
        let c = complexify(&s);
        let ct = c.vars().clone();
        let cp = |s: &str| parse_poly(s, &ct).unwrap();
        let want_x = cp(
            "1/72*(-18*I*b11*z^2 + 18*I*b11*w^2 + b11^2*z^3 + 3*b11^2*z^2*w \
             + 3*b11^2*z*w^2 + b11^2*w^3)",
        );
        assert_eq!(c.x_part, want_x);
        let want_y = cp(
            "1/72*(-18*I*b11*z^2 + 18*I*b11*w^2 + b11^2*z^3 + 3*b11^2*z^2*w \
             + 3*b11^2*z*w^2 + b11^2*w^3)",
        );
        // w' = -w - Y with Y equal to X for this family.
        assert_eq!(c.y_part, want_y);
    }
}
