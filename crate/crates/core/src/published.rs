//! Published reference data that the searches are checked against.
//!
//! Fractions are `(numerator, denominator)` pairs; trace magnitudes are stored squared so that
//! each printed cell (`√3`, `2√2`, `3`, ...) is an exact integer.

/// Orders of eigenvalues allowed for exceptional elements of abelian-variety type.
pub const POSSIBLE_ORDERS: [u64; 11] = [2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 18];

/// Rows `n` of the minimal half-orbit table.
pub const TABLE1_ORDERS: [u64; 11] = [3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18];

pub struct Table1Entry {
    pub n: u64,
    pub half_phi: u64,
    pub values: &'static [(u64, u64)],
    pub mean: (u64, u64),
}

pub const TABLE1: [Table1Entry; 11] = [
    Table1Entry { n: 3, half_phi: 1, values: &[(1, 3)], mean: (1, 3) },
    Table1Entry { n: 4, half_phi: 1, values: &[(1, 4)], mean: (1, 4) },
    Table1Entry { n: 5, half_phi: 2, values: &[(1, 5), (2, 5)], mean: (3, 10) },
    Table1Entry { n: 6, half_phi: 1, values: &[(1, 6)], mean: (1, 6) },
    Table1Entry { n: 7, half_phi: 3, values: &[(1, 7), (2, 7), (3, 7)], mean: (2, 7) },
    Table1Entry { n: 8, half_phi: 2, values: &[(1, 8), (3, 8)], mean: (1, 4) },
    Table1Entry { n: 9, half_phi: 3, values: &[(1, 9), (2, 9), (4, 9)], mean: (7, 27) },
    Table1Entry { n: 10, half_phi: 2, values: &[(1, 10), (3, 10)], mean: (1, 5) },
    Table1Entry { n: 12, half_phi: 2, values: &[(1, 12), (5, 12)], mean: (1, 4) },
    Table1Entry { n: 14, half_phi: 3, values: &[(1, 14), (3, 14), (5, 14)], mean: (3, 14) },
    Table1Entry { n: 18, half_phi: 3, values: &[(1, 18), (5, 18), (7, 18)], mean: (13, 54) },
];

/// Orders whose table mean is strictly below 1/4.
pub const MEAN_BELOW_QUARTER: [u64; 4] = [6, 10, 14, 18];

/// The two-element eigenvalue sets allowed for a basic exceptional element.
pub const NINE_PAIRS: [[(u64, u64); 2]; 9] = [
    [(1, 6), (1, 3)],
    [(1, 6), (1, 2)],
    [(1, 6), (2, 3)],
    [(1, 3), (1, 2)],
    [(1, 8), (3, 8)],
    [(1, 8), (5, 8)],
    [(1, 12), (1, 4)],
    [(1, 12), (5, 12)],
    [(1, 4), (5, 12)],
];

/// The three-element set whose 2-subsets close the pair list.
pub const TRIPLE: [(u64, u64); 3] = [(1, 12), (1, 4), (5, 12)];

/// Non-trivial eigenvalue multisets of an exceptional element, labelled (a)–(n).
pub const EXCEPTIONAL_MULTISETS: [(char, &[(u64, u64)]); 14] = [
    ('a', &[(1, 6), (1, 3)]),
    ('b', &[(1, 6), (1, 6), (1, 3)]),
    ('c', &[(1, 6), (1, 6), (1, 6), (1, 3)]),
    ('d', &[(1, 6), (1, 3), (1, 3)]),
    ('e', &[(1, 6), (1, 2)]),
    ('f', &[(1, 6), (1, 6), (1, 2)]),
    ('g', &[(1, 6), (2, 3)]),
    ('h', &[(1, 3), (1, 2)]),
    ('i', &[(1, 8), (3, 8)]),
    ('j', &[(1, 8), (5, 8)]),
    ('k', &[(1, 12), (1, 4)]),
    ('l', &[(1, 12), (5, 12)]),
    ('m', &[(1, 4), (5, 12)]),
    ('n', &[(1, 12), (1, 4), (5, 12)]),
];

pub struct Table2Row {
    pub case: char,
    /// `(dimension, printed label, printed value squared)`.
    pub cells: &'static [(usize, &'static str, u64)],
}

/// Printed absolute traces of the cases (b), (c), (i), (n) by dimension.
pub const TABLE2: [Table2Row; 4] = [
    Table2Row { case: 'b', cells: &[(3, "√3", 3), (4, "2", 4), (5, "√7", 7), (6, "2√3", 12)] },
    Table2Row {
        case: 'c', cells: &[(4, "√7", 7), (5, "3", 9), (6, "√13", 13), (7, "√19", 19), (8, "3√3", 27)]
    },
    Table2Row { case: 'i', cells: &[(3, "√3", 3), (4, "√6", 6)] },
    Table2Row { case: 'n', cells: &[(3, "2", 4), (4, "√5", 5), (5, "2√2", 8), (6, "√13", 13)] },
];

pub fn exceptional_multiset(label: char) -> Option<&'static [(u64, u64)]> {
    EXCEPTIONAL_MULTISETS.iter().find(|(l, _)| *l == label).map(|(_, m)| *m)
}
