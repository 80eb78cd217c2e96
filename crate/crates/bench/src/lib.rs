//! Benchmarks for the motive engine live in `benches/`; this crate has no
//! library surface of its own beyond the fixtures they share.

use motivecalc_core::geometry::CellularVariety;

/// The varieties the benchmarks sweep over, smallest first.
pub fn fixtures() -> Vec<CellularVariety> {
    vec![
        CellularVariety::projective(1),
        CellularVariety::projective(2),
        CellularVariety::product_of_projective(&[1, 1]),
        CellularVariety::projective(3),
    ]
}
