//! Standard variable tables shared by the analysis pipeline.
//!
//! The default variable priority is
//! `a02, a03, b20, b11, b02, b21, b12, b30, x, y, z, w, u, v, I`
//! (parameters first, then phase variables, chart variables, and the adjoined
//! imaginary unit last).

use isochron_algebra::vars::VarTable;
use std::sync::Arc;

pub const PARAM_NAMES: [&str; 8] = ["a02", "a03", "b20", "b11", "b02", "b21", "b12", "b30"];

/// Parameter ring of the cubic family, imaginary unit adjoined.
pub fn params() -> Arc<VarTable> {
    VarTable::new(&["a02", "a03", "b20", "b11", "b02", "b21", "b12", "b30", "I"])
}

/// Parameter ring plus the real phase plane.
pub fn plane() -> Arc<VarTable> {
    VarTable::new(&["a02", "a03", "b20", "b11", "b02", "b21", "b12", "b30", "x", "y", "I"])
}

/// Parameter ring plus the complexified phase variables.
pub fn complex_plane() -> Arc<VarTable> {
    VarTable::new(&["a02", "a03", "b20", "b11", "b02", "b21", "b12", "b30", "z", "w", "I"])
}

/// Everything at once: the table used by file loading and the CLI.
pub fn standard() -> Arc<VarTable> {
    VarTable::new(&[
        "a02", "a03", "b20", "b11", "b02", "b21", "b12", "b30", "x", "y", "z", "w", "u", "v",
        "I",
    ])
}

/// Parameter names of the general degree-`n` family (`a{p}{q}`, `b{p}{q}` for
/// `2 <= p+q <= n`), in the spec's priority order.
pub fn general_param_names(n: u32) -> Vec<String> {
    let mut names = Vec::new();
    for d in 2..=n {
        for p in (0..=d).rev() {
            let q = d - p;
            names.push(format!("a{p}{q}"));
        }
    }
    for d in 2..=n {
        for p in (0..=d).rev() {
            let q = d - p;
            names.push(format!("b{p}{q}"));
        }
    }
    names
}

/// Plane table for the general degree-`n` family.
pub fn general_plane(n: u32) -> Arc<VarTable> {
    let mut names = general_param_names(n);
    names.push("x".into());
    names.push("y".into());
    names.push("I".into());
    VarTable::new(&names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_have_imaginary_unit_marked() {
        let t = params();
        let i = t.position("I").unwrap();
        assert!(t.square_rule(i).is_some());
    }

    #[test]
    fn general_family_names() {
        let names = general_param_names(3);
        assert!(names.contains(&"a20".to_string()));
        assert!(names.contains(&"b03".to_string()));
        assert_eq!(names.len(), 2 * (3 + 4));
    }
}
