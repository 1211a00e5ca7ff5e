// SPDX-License-Identifier: Apache-2.0

//! Representation matrices written out entry by entry, independent of the
//! Kraus code path. Used as golden data by the test suites and `repro`.

use crate::linalg::{ComplexMatrix, C64};

pub fn bit_flip(p: f64) -> ComplexMatrix {
    let q = 1.0 - p;
    ComplexMatrix::from_real_rows(&[[p, 0.0, 0.0, q], [0.0, p, q, 0.0], [0.0, q, p, 0.0], [q, 0.0, 0.0, p]])
}

pub fn bit_phase_flip(p: f64) -> ComplexMatrix {
    let q = 1.0 - p;
    ComplexMatrix::from_real_rows(&[
        [p, 0.0, 0.0, q],
        [0.0, p, -1.0 + p, 0.0],
        [0.0, -1.0 + p, p, 0.0],
        [q, 0.0, 0.0, p],
    ])
}

pub fn amplitude_damping(p: f64) -> ComplexMatrix {
    let s = (1.0 - p).sqrt();
    ComplexMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, p],
        [0.0, s, 0.0, 0.0],
        [0.0, 0.0, s, 0.0],
        [0.0, 0.0, 0.0, 1.0 - p],
    ])
}

pub fn depolarizing(p: f64) -> ComplexMatrix {
    let a = 1.0 - p / 2.0;
    let b = p / 2.0;
    ComplexMatrix::from_real_rows(&[
        [a, 0.0, 0.0, b],
        [0.0, 1.0 - p, 0.0, 0.0],
        [0.0, 0.0, 1.0 - p, 0.0],
        [b, 0.0, 0.0, a],
    ])
}

/// The 16×16 CNOT representation with `r = 1 − p`, from its nonzero entries.
pub fn cnot2(p: f64) -> ComplexMatrix {
    let r = 1.0 - p;
    #[rustfmt::skip]
    let entries: [(usize, usize, f64); 31] = [
        (0, 0, 1.0),
        (1, 1, p), (1, 3, r),
        (2, 2, r), (2, 3, p),
        (3, 1, r), (3, 2, p),
        (4, 4, p), (4, 12, r),
        (5, 5, p), (5, 15, r),
        (6, 7, p), (6, 14, r),
        (7, 6, p), (7, 13, r),
        (8, 8, r), (8, 12, p),
        (9, 11, r), (9, 13, p),
        (10, 10, r), (10, 15, p),
        (11, 9, r), (11, 14, p),
        (12, 4, r), (12, 8, p),
        (13, 7, r), (13, 9, p),
        (14, 6, r), (14, 11, p),
        (15, 5, r), (15, 10, p),
    ];
    let mut m = ComplexMatrix::zeros(16, 16);
    for (i, j, v) in entries {
        m.set(i, j, C64::new(v, 0.0));
    }
    m
}

/// The 9×9 Landau-Streater representation.
pub fn landau_streater() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(9, 9);
    for (i, j) in [(0, 4), (0, 8), (4, 0), (4, 8), (8, 0), (8, 4)] {
        m.set(i, j, C64::new(0.5, 0.0));
    }
    for (i, j) in [(1, 3), (2, 6), (3, 1), (5, 7), (6, 2), (7, 5)] {
        m.set(i, j, C64::new(-0.5, 0.0));
    }
    m
}

/// `[V₂¹] + [V₂²]`, equal to `[V₃¹] + [V₃²]`.
pub fn landau_streater_split_pair() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(9, 9);
    for (i, j) in [(0, 8), (4, 8), (8, 0), (8, 4)] {
        m.set(i, j, C64::new(0.25, 0.0));
    }
    for (i, j) in [(2, 6), (5, 7), (6, 2), (7, 5)] {
        m.set(i, j, C64::new(-0.25, 0.0));
    }
    m
}
