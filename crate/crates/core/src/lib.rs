//! Deterministic search for rational points on plane curves, driven by a
//! decision oracle and a puncture-and-project birational reduction.

pub mod geometry;
pub mod groebner;
pub mod numeric;
pub mod oracle;
pub mod points;
pub mod poly;
pub mod search;
