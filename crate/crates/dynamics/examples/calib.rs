// Calibration probe: relation between raw obstructions and published i1, j1.
use isochron_algebra::parse::{parse_poly, render_poly};
use isochron_dynamics::linquant::{linearizability_quantities, raw_obstructions};
use isochron_dynamics::system::{complexify, PlanarSystem};

fn main() {
    let s = PlanarSystem::riccati_family();
    let c = complexify(&s);
    let (raw, _) = raw_obstructions(&c, 2, false);
    let pt = raw[0].0.vars().clone();
    let i1 = parse_poly("10*a02^2 + 9*a03 + 4*b02^2 - a02*b11 + b11^2 - 3*b12 + 10*b02*b20 + 10*b20^2 - 9*b30", &pt).unwrap();
    let j1 = parse_poly("2*a02*b02 - b02*b11 - b11*b20 + b21", &pt).unwrap();
    let (g1, h1) = &raw[0];
    println!("g1 = {}", render_poly(g1));
    println!("h1 = {}", render_poly(h1));
    let sum = g1.add(h1);
    println!("g1+h1 = {}", render_poly(&sum));
    match sum.div_exact(&i1) { Some(q) => println!("(g1+h1)/i1 = {}", render_poly(&q)), None => println!("(g1+h1) not multiple of i1") }
    let iu = parse_poly("I", &pt).unwrap();
    let diff = g1.sub(h1).mul(&iu);
    println!("(g1-h1)*I = {}", render_poly(&diff));
    match diff.div_exact(&j1) { Some(q) => println!("((g1-h1)*I)/j1 = {}", render_poly(&q)), None => println!("not multiple of j1") }
    // With the pinned recombination:
    let (q, _) = linearizability_quantities(&s, 2).unwrap();
    println!("i1 pinned == printed: {}", q.pairs[0].0 == i1);
    println!("j1 pinned == printed: {}", q.pairs[0].1 == j1);
    println!("i1 pinned = {}", render_poly(&q.pairs[0].0));
    println!("j1 pinned = {}", render_poly(&q.pairs[0].1));
}
