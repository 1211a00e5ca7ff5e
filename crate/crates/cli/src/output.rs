// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write;

use pqwalk::{ComplexMatrix, C64};

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn complex(z: C64) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}

#[derive(Debug, Default)]
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn with_header(cols: &[&str]) -> Self {
        let mut c = Self::default();
        c.row(cols.iter().map(|s| s.to_string()));
        c
    }

    pub fn row(&mut self, cells: impl IntoIterator<Item = String>) {
        let cells: Vec<String> = cells.into_iter().collect();
        writeln!(self.text, "{}", cells.join(",")).expect("writing to a String");
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// Real matrices print as plain numbers, complex ones as `a+bi`.
pub fn matrix_csv(m: &ComplexMatrix) -> String {
    let real = m.as_slice().iter().all(|z| z.im == 0.0);
    let mut csv = Csv::default();
    for i in 0..m.rows() {
        csv.row((0..m.cols()).map(|j| {
            let z = m.get(i, j);
            if real {
                num(z.re)
            } else {
                complex(z)
            }
        }));
    }
    csv.finish()
}

pub fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}
