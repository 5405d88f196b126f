// Generated from the factored coefficient forms by symbolic expansion.
// Exponent order: s0, t0, u0, v0, sj, tj, uj, vj.

pub(super) const F_TERMS: &[(f64, [u8; 8])] = &[
    (-1.0, [0, 0, 0, 1, 0, 0, 2, 1]),
    (1.0, [0, 0, 0, 1, 2, 0, 0, 3]),
    (1.0, [0, 0, 0, 2, 0, 0, 2, 0]),
    (-1.0, [0, 0, 0, 2, 2, 0, 0, 2]),
    (1.0, [0, 0, 2, 0, 0, 0, 0, 2]),
    (-1.0, [0, 0, 2, 1, 0, 0, 0, 1]),
    (-1.0, [2, 0, 0, 2, 0, 0, 0, 2]),
    (1.0, [2, 0, 0, 3, 0, 0, 0, 1]),
];

pub(super) const G_TERMS: &[(f64, [u8; 8])] = &[
    (-1.0, [0, 0, 0, 0, 0, 0, 4, 0]),
    (2.0, [0, 0, 0, 0, 2, 0, 2, 2]),
    (-1.0, [0, 0, 0, 0, 4, 0, 0, 4]),
    (1.0, [0, 0, 0, 1, 0, 2, 2, 1]),
    (-1.0, [0, 0, 0, 1, 2, 0, 2, 1]),
    (-1.0, [0, 0, 0, 1, 2, 2, 0, 3]),
    (1.0, [0, 0, 0, 1, 4, 0, 0, 3]),
    (2.0, [0, 0, 2, 0, 0, 0, 2, 0]),
    (-2.0, [0, 0, 2, 0, 0, 2, 0, 2]),
    (1.0, [0, 0, 2, 1, 0, 2, 0, 1]),
    (-1.0, [0, 0, 2, 1, 2, 0, 0, 1]),
    (-1.0, [0, 0, 4, 0, 0, 0, 0, 0]),
    (1.0, [0, 2, 0, 1, 0, 0, 2, 1]),
    (-1.0, [0, 2, 0, 1, 2, 0, 0, 3]),
    (-2.0, [0, 2, 0, 2, 0, 0, 2, 0]),
    (2.0, [0, 2, 0, 2, 2, 0, 0, 2]),
    (1.0, [0, 2, 2, 1, 0, 0, 0, 1]),
    (-1.0, [2, 0, 0, 1, 0, 0, 2, 1]),
    (1.0, [2, 0, 0, 1, 2, 0, 0, 3]),
    (2.0, [2, 0, 0, 2, 0, 2, 0, 2]),
    (-2.0, [2, 0, 0, 2, 2, 0, 0, 2]),
    (-1.0, [2, 0, 0, 3, 0, 2, 0, 1]),
    (1.0, [2, 0, 0, 3, 2, 0, 0, 1]),
    (-1.0, [2, 0, 2, 1, 0, 0, 0, 1]),
    (2.0, [2, 0, 2, 2, 0, 0, 0, 0]),
    (-1.0, [2, 2, 0, 3, 0, 0, 0, 1]),
    (1.0, [4, 0, 0, 3, 0, 0, 0, 1]),
    (-1.0, [4, 0, 0, 4, 0, 0, 0, 0]),
];

pub(super) const H_TERMS: &[(f64, [u8; 8])] = &[
    (1.0, [0, 0, 2, 0, 0, 4, 0, 2]),
    (-2.0, [0, 0, 2, 0, 2, 2, 0, 2]),
    (1.0, [0, 0, 2, 0, 4, 0, 0, 2]),
    (-1.0, [0, 2, 0, 1, 0, 2, 2, 1]),
    (1.0, [0, 2, 0, 1, 2, 0, 2, 1]),
    (1.0, [0, 2, 0, 1, 2, 2, 0, 3]),
    (-1.0, [0, 2, 0, 1, 4, 0, 0, 3]),
    (-1.0, [0, 2, 2, 1, 0, 2, 0, 1]),
    (1.0, [0, 2, 2, 1, 2, 0, 0, 1]),
    (1.0, [0, 4, 0, 2, 0, 0, 2, 0]),
    (-1.0, [0, 4, 0, 2, 2, 0, 0, 2]),
    (1.0, [2, 0, 0, 1, 0, 2, 2, 1]),
    (-1.0, [2, 0, 0, 1, 2, 0, 2, 1]),
    (-1.0, [2, 0, 0, 1, 2, 2, 0, 3]),
    (1.0, [2, 0, 0, 1, 4, 0, 0, 3]),
    (-1.0, [2, 0, 0, 2, 0, 4, 0, 2]),
    (2.0, [2, 0, 0, 2, 2, 2, 0, 2]),
    (-1.0, [2, 0, 0, 2, 4, 0, 0, 2]),
    (1.0, [2, 0, 2, 1, 0, 2, 0, 1]),
    (-1.0, [2, 0, 2, 1, 2, 0, 0, 1]),
    (-2.0, [2, 2, 0, 2, 0, 0, 2, 0]),
    (2.0, [2, 2, 0, 2, 2, 0, 0, 2]),
    (1.0, [2, 2, 0, 3, 0, 2, 0, 1]),
    (-1.0, [2, 2, 0, 3, 2, 0, 0, 1]),
    (1.0, [4, 0, 0, 2, 0, 0, 2, 0]),
    (-1.0, [4, 0, 0, 2, 2, 0, 0, 2]),
    (-1.0, [4, 0, 0, 3, 0, 2, 0, 1]),
    (1.0, [4, 0, 0, 3, 2, 0, 0, 1]),
];
