use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Functor;

/// The upper triangular rank matrix `P_n^F(G)`: entry `(i, j)` is the rank
/// of `H_n(Q_i) -> H_n(Q_j)`. Indices are one based in the accessors; the
/// stored rows are zero based with zeros below the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PersistenceMatrix {
    pub group: String,
    pub functor: Functor,
    pub degree: usize,
    #[serde(rename = "termOrders")]
    pub term_orders: Vec<usize>,
    pub matrix: Vec<Vec<usize>>,
}

impl PersistenceMatrix {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// `p_{i,j}`, one based, zero outside `1 <= i <= j <= N`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        if i == 0 || j == 0 || i > j || j > self.size() {
            return 0;
        }
        self.matrix[i - 1][j - 1]
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (1..=self.size()).map(|i| self.get(i, i)).collect()
    }

    /// `p_{i,k} <= p_{i,j}` and `p_{i,k} <= p_{j,k}` for `i <= j <= k`.
    pub fn is_monotone(&self) -> bool {
        let n = self.size();
        (1..=n).all(|i| {
            (i..=n).all(|j| (j..=n).all(|k| self.get(i, k) <= self.get(i, j) && self.get(i, k) <= self.get(j, k)))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes")
    }
}

impl fmt::Display for PersistenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .matrix
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (i, row) in self.matrix.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    if j < i {
                        format!("{:>width$}", "")
                    } else {
                        format!("{v:>width$}")
                    }
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// An interval `[birth, death]` of columns, one based, with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bar {
    pub birth: usize,
    pub death: usize,
    pub multiplicity: usize,
}

/// Interval decomposition of a persistence module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Barcode {
    pub group: String,
    pub functor: Functor,
    pub degree: usize,
    pub columns: usize,
    pub bars: Vec<Bar>,
}

impl Barcode {
    pub fn total_bars(&self) -> usize {
        self.bars.iter().map(|b| b.multiplicity).sum()
    }

    pub fn multiplicity(&self, birth: usize, death: usize) -> usize {
        self.bars
            .iter()
            .find(|b| b.birth == birth && b.death == death)
            .map_or(0, |b| b.multiplicity)
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} degree {} ({} columns)", self.group, self.functor, self.degree, self.columns)?;
        for b in &self.bars {
            let line: String = (1..=self.columns)
                .map(|c| {
                    if c < b.birth || c > b.death {
                        "   "
                    } else if b.birth == b.death {
                        " o "
                    } else if c == b.birth {
                        " o-"
                    } else if c == b.death {
                        "-o "
                    } else {
                        "-o-"
                    }
                })
                .collect();
            writeln!(f, "{line}  x{}", b.multiplicity)?;
        }
        Ok(())
    }
}

/// Interval decomposition by inclusion-exclusion:
/// `μ(i,j) = (p_{i,j} - p_{i,j+1}) - (p_{i-1,j} - p_{i-1,j+1})`.
pub fn barcode(p: &PersistenceMatrix) -> Result<Barcode> {
    let n = p.size();
    let get = |i: usize, j: usize| p.get(i, j) as i64;
    let mut bars = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let mu = (get(i, j) - get(i, j + 1)) - (get(i - 1, j) - get(i - 1, j + 1));
            if mu < 0 {
                return Err(Error::Inconsistent(format!(
                    "negative multiplicity {mu} for the interval [{i}, {j}] of {}",
                    p.group
                )));
            }
            if mu > 0 {
                bars.push(Bar {
                    birth: i,
                    death: j,
                    multiplicity: mu as usize,
                });
            }
        }
    }
    Ok(Barcode {
        group: p.group.clone(),
        functor: p.functor,
        degree: p.degree,
        columns: n,
        bars,
    })
}

/// Rank matrix of a bar code: `p_{i,j}` counts bars alive on `[i, j]`.
pub fn matrix_from_barcode(b: &Barcode) -> PersistenceMatrix {
    let n = b.columns;
    let mut matrix = vec![vec![0usize; n]; n];
    for bar in &b.bars {
        for i in bar.birth..=bar.death.min(n) {
            for j in i..=bar.death.min(n) {
                matrix[i - 1][j - 1] += bar.multiplicity;
            }
        }
    }
    PersistenceMatrix {
        group: b.group.clone(),
        functor: b.functor,
        degree: b.degree,
        term_orders: Vec::new(),
        matrix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(rows: Vec<Vec<usize>>) -> PersistenceMatrix {
        PersistenceMatrix {
            group: "G".into(),
            functor: Functor::L,
            degree: 2,
            term_orders: Vec::new(),
            matrix: rows,
        }
    }

    #[test]
    fn two_column_example() {
        let p = pm(vec![vec![3, 2], vec![0, 3]]);
        let b = barcode(&p).unwrap();
        assert_eq!(b.multiplicity(1, 1), 1);
        assert_eq!(b.multiplicity(1, 2), 2);
        assert_eq!(b.multiplicity(2, 2), 1);
        assert_eq!(b.total_bars(), 4);
        assert_eq!(matrix_from_barcode(&b).matrix, p.matrix);
    }

    #[test]
    fn single_entry_and_empty() {
        let b = barcode(&pm(vec![vec![4]])).unwrap();
        assert_eq!(b.bars, vec![Bar { birth: 1, death: 1, multiplicity: 4 }]);
        let empty = Barcode {
            group: "G".into(),
            functor: Functor::Z,
            degree: 1,
            columns: 3,
            bars: Vec::new(),
        };
        assert_eq!(matrix_from_barcode(&empty).matrix, vec![vec![0; 3]; 3]);
    }

    #[test]
    fn negative_multiplicity_is_rejected() {
        // rank grows along a composite: impossible for a persistence module
        assert!(barcode(&pm(vec![vec![1, 2], vec![0, 2]])).is_err());
    }

    #[test]
    fn monotonicity() {
        assert!(pm(vec![vec![3, 2], vec![0, 3]]).is_monotone());
        assert!(!pm(vec![vec![1, 2], vec![0, 2]]).is_monotone());
    }
}
