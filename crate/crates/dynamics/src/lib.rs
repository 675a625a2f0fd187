//! Analysis pipeline for planar polynomial differential systems:
//! linearizability quantities, Darboux linearization certificates, period
//! constants, critical-period bifurcations and Poincare compactification.

pub mod linquant;
pub mod system;
pub mod tables;
pub mod zw;
