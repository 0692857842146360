//! Published reference values used by the acceptance checks.

use crate::betti::BettiTable;

fn display(rows: &[[usize; 4]]) -> BettiTable {
    let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
    BettiTable::from_display(3, &rows)
}

/// β(1) for H₁ = (1,3,4,4): the complete-intersection stratum.
pub fn h1_beta1() -> BettiTable {
    display(&[[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 4, 8, 4]])
}

/// β(2) for H₁: line union a point.
pub fn h1_beta2() -> BettiTable {
    display(&[[1, 0, 0, 0], [0, 2, 1, 0], [0, 1, 0, 0], [0, 3, 8, 4]])
}

/// β(3) for H₁: the intersection stratum.
pub fn h1_beta3() -> BettiTable {
    display(&[[1, 0, 0, 0], [0, 2, 1, 0], [0, 1, 1, 0], [0, 4, 8, 4]])
}

/// β(2) for H₂ = (1,3,6,8,9,3), attained over `(x³, x²y, z⁴)`.
pub fn h2_beta2() -> BettiTable {
    display(&[
        [1, 0, 0, 0],
        [0, 0, 0, 0],
        [0, 2, 1, 0],
        [0, 1, 0, 0],
        [0, 6, 10, 0],
        [0, 0, 0, 3],
    ])
}

fn with_pair(t: &BettiTable, k: usize, delta: i64) -> BettiTable {
    let mut out = t.clone();
    for i in [1, 2] {
        out.set(i, k, (t.get(i, k) as i64 + delta) as usize);
    }
    out
}

/// β(1) for H₂: β(2) without its degree-four generator/relation pair.
pub fn h2_beta1() -> BettiTable {
    with_pair(&h2_beta2(), 4, -1)
}

/// β(3) for H₂: β(1) plus a generator/relation pair in degree five.
pub fn h2_beta3() -> BettiTable {
    with_pair(&h2_beta1(), 5, 1)
}

/// β(4) for H₂: β(3) plus the degree-four pair of β(2).
pub fn h2_beta4() -> BettiTable {
    with_pair(&h2_beta3(), 4, 1)
}

/// `H(3), …, H(7)` as tabulated.
pub const SERIES_TABLE: [&[u64]; 5] = [
    &[1, 3, 6, 8, 9, 3],
    &[1, 3, 6, 10, 13, 15, 9, 3],
    &[1, 3, 6, 10, 15, 19, 22, 18, 9, 3],
    &[1, 3, 6, 10, 15, 21, 26, 30, 30, 18, 9, 3],
    &[1, 3, 6, 10, 15, 21, 28, 34, 39, 43, 30, 18, 9, 3],
];

/// Pell solutions `(c, d)` with `c ≤ 4000`. The fifth entry is printed as
/// 3383 in the source table; `3383² − 2·2378² = 134921`, so it is corrected
/// to 3363.
pub const PELL_TABLE: [(u64, u64); 5] = [(3, 2), (17, 12), (99, 70), (577, 408), (3363, 2378)];

/// The fifth Pell entry as printed.
pub const PELL_PRINTED_FIFTH: (u64, u64) = (3383, 2378);

/// Sum function of H₁ for twelve points in P³.
pub const T1: [usize; 5] = [1, 4, 8, 12, 12];
/// Sum function of H₂ for thirty points in P³.
pub const T2: [usize; 7] = [1, 4, 10, 18, 27, 30, 30];
