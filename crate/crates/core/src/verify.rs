//! The distinct-differences property, plain and modular.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::SonarSeq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Modular(u64),
}

/// A violated instance of the property: `f(i+h) − f(i) = f(j+h) − f(j)`
/// (mod `m` in modular mode) with `i < j`. All indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub h: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub witness: Option<Witness>,
    pub mode: Mode,
}

impl VerifyReport {
    fn from_witness(mode: Mode, witness: Option<Witness>) -> Self {
        VerifyReport {
            pass: witness.is_none(),
            witness,
            mode,
        }
    }
}

/// Row `h` (1-based) holds the `n − h` differences `f(i+h) − f(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceTriangle {
    pub mode: Mode,
    rows: Vec<Vec<i64>>,
}

impl DifferenceTriangle {
    pub fn row(&self, h: usize) -> Option<&[i64]> {
        h.checked_sub(1)
            .and_then(|k| self.rows.get(k))
            .map(Vec::as_slice)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Lexicographically least collision, scanning rows in increasing `h`.
    pub fn first_collision(&self) -> Option<Witness> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(k, row)| first_duplicate(row).map(|(i, j)| Witness { h: k + 1, i, j }))
    }
}

fn difference(a: u64, b: u64, mode: Mode) -> i64 {
    match mode {
        Mode::Plain => a as i64 - b as i64,
        Mode::Modular(m) => (a as i64 - b as i64).rem_euclid(m as i64),
    }
}

fn row(values: &[u64], h: usize, mode: Mode) -> Vec<i64> {
    values
        .iter()
        .zip(&values[h..])
        .map(|(&lo, &hi)| difference(hi, lo, mode))
        .collect()
}

/// Smallest `(i, j)`, 1-based, `i < j`, with `row[i] == row[j]`.
fn first_duplicate(row: &[i64]) -> Option<(usize, usize)> {
    let mut first: HashMap<i64, usize> = HashMap::with_capacity(row.len());
    let mut best: Option<(usize, usize)> = None;
    for (j, d) in row.iter().enumerate() {
        match first.get(d) {
            Some(&i) => {
                if best.is_none_or(|b| (i, j) < b) {
                    best = Some((i, j));
                }
            }
            None => {
                first.insert(*d, j);
            }
        }
    }
    best.map(|(i, j)| (i + 1, j + 1))
}

pub fn difference_triangle_of(values: &[u64], mode: Mode) -> Result<DifferenceTriangle> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    if mode == Mode::Modular(0) {
        return Err(Error::InvalidModulus);
    }
    let rows = (1..values.len()).map(|h| row(values, h, mode)).collect();
    Ok(DifferenceTriangle { mode, rows })
}

pub fn difference_triangle(seq: &SonarSeq, mode: Mode) -> Result<DifferenceTriangle> {
    difference_triangle_of(seq.values(), mode)
}

/// Checks a raw value slice. Rows are scanned independently and in parallel
/// for long sequences; the reported witness does not depend on the schedule.
pub fn check_values(values: &[u64], mode: Mode) -> Result<VerifyReport> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    if mode == Mode::Modular(0) {
        return Err(Error::InvalidModulus);
    }
    let n = values.len();
    let scan = |h: usize| first_duplicate(&row(values, h, mode)).map(|(i, j)| Witness { h, i, j });
    let witness = if n >= 256 {
        (1..n).into_par_iter().filter_map(scan).min()
    } else {
        (1..n).find_map(scan)
    };
    Ok(VerifyReport::from_witness(mode, witness))
}

/// Distinct differences over the integers.
pub fn check_plain(seq: &SonarSeq) -> Result<VerifyReport> {
    check_values(seq.values(), Mode::Plain)
}

/// Distinct differences modulo `m`.
pub fn check_modular(seq: &SonarSeq, m: u64) -> Result<VerifyReport> {
    check_values(seq.values(), Mode::Modular(m))
}

/// Checks a sequence in its own mode: modular sequences modulo their `m`.
pub fn check(seq: &SonarSeq) -> Result<VerifyReport> {
    if seq.is_modular() {
        check_modular(seq, seq.m())
    } else {
        check_plain(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(v: &[u64]) -> SonarSeq {
        SonarSeq::plain(*v.iter().max().unwrap(), v.to_vec()).unwrap()
    }

    #[test]
    fn plain_examples() {
        let r = check_values(&[5, 0, 4, 0, 0, 3], Mode::Plain).unwrap();
        assert!(r.pass);
        let r = check_plain(&plain(&[1, 2, 3])).unwrap();
        assert_eq!(r.witness, Some(Witness { h: 1, i: 1, j: 2 }));
        assert!(!r.pass);
        assert!(check_plain(&plain(&[7])).unwrap().pass);
        assert!(matches!(
            check_values(&[], Mode::Plain),
            Err(Error::EmptySequence)
        ));
    }

    #[test]
    fn modular_examples() {
        assert!(
            check_values(&[0, 6, 5, 0, 5, 7, 3, 3, 4], Mode::Modular(8))
                .unwrap()
                .pass
        );
        assert!(
            check_values(
                &[12, 12, 11, 8, 1, 12, 7, 9, 12, 4, 0, 4],
                Mode::Modular(13)
            )
            .unwrap()
            .pass
        );
        let r = check_values(&[0, 1, 2], Mode::Modular(3)).unwrap();
        assert_eq!(r.witness, Some(Witness { h: 1, i: 1, j: 2 }));
    }

    #[test]
    fn triangle_rows() {
        let t = difference_triangle_of(&[5, 0, 4, 0, 0, 3], Mode::Plain).unwrap();
        assert_eq!(t.row(1).unwrap(), &[-5, 4, -4, 0, 3]);
        assert_eq!(t.len(), 5);
        for h in 1..=5 {
            assert_eq!(t.row(h).unwrap().len(), 6 - h);
        }
        assert!(difference_triangle_of(&[4], Mode::Plain)
            .unwrap()
            .is_empty());
        let t = difference_triangle_of(&[0, 6, 5, 0, 5, 7, 3, 3, 4], Mode::Modular(8)).unwrap();
        assert_eq!(t.row(1).unwrap(), &[6, 7, 3, 5, 2, 4, 0, 1]);
    }

    #[test]
    fn witness_is_lexicographically_least_within_row() {
        // row 1: [1, 5, 1, 5, 1] -> the collision starting at i = 1 wins over (2, 4)
        let v = [0, 1, 6, 7, 12, 13];
        let r = check_values(&v, Mode::Plain).unwrap();
        assert_eq!(r.witness, Some(Witness { h: 1, i: 1, j: 3 }));
        // row 1: [2, 3, 3, 2] -> (1, 4) precedes (2, 3)
        let v = [0, 2, 5, 8, 10];
        let r = check_values(&v, Mode::Plain).unwrap();
        assert_eq!(r.witness, Some(Witness { h: 1, i: 1, j: 4 }));
    }
}
