use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::PrimeField;
use super::sparse::SparseVec;

/// Incremental row echelon form over F_p.
///
/// Rows are inserted one at a time and reduced against the stored pivot rows.
/// The pivot of a row is its first nonzero column; stored rows are scaled so
/// the pivot entry is 1. Reduction uses a dense accumulator with a min-heap
/// of touched columns, so the cost of one insertion is proportional to the
/// fill it produces rather than to the number of columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
    acc: Vec<u32>,
    touched: Vec<bool>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Self {
            field,
            cols,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; cols],
            acc: vec![0; cols],
            touched: vec![false; cols],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Stored rows in insertion order; each has leading coefficient 1.
    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_of(&self, col: usize) -> Option<&SparseVec> {
        match self.pivot_row[col] {
            NO_PIVOT => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Reduces `row` against the stored rows and returns the remainder.
    pub fn reduce(&mut self, row: impl IntoIterator<Item = (usize, u32)>) -> SparseVec {
        let field = self.field;
        let mut heap = BinaryHeap::new();
        for (c, a) in row {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
            if a == 0 {
                continue;
            }
            if !self.touched[c] {
                self.touched[c] = true;
                heap.push(Reverse(c));
            }
            self.acc[c] = field.add(self.acc[c], a);
        }
        let mut rest = Vec::new();
        while let Some(Reverse(c)) = heap.pop() {
            self.touched[c] = false;
            let a = std::mem::take(&mut self.acc[c]);
            if a == 0 {
                continue;
            }
            match self.pivot_row[c] {
                NO_PIVOT => rest.push((c, a)),
                r => {
                    let factor = field.neg(a);
                    for &(cc, b) in &self.rows[r as usize][1..] {
                        if !self.touched[cc] {
                            self.touched[cc] = true;
                            heap.push(Reverse(cc));
                        }
                        self.acc[cc] = field.add(self.acc[cc], field.mul(factor, b));
                    }
                }
            }
        }
        rest
    }

    /// Inserts a row; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, u32)>) -> bool {
        let rest = self.reduce(row);
        self.push_reduced(rest)
    }

    fn push_reduced(&mut self, rest: SparseVec) -> bool {
        let Some(&(lead, a)) = rest.first() else {
            return false;
        };
        let inv = self.field.inv(a);
        let row = rest
            .into_iter()
            .map(|(c, b)| (c, self.field.mul(b, inv)))
            .collect();
        self.pivot_row[lead] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    /// Whether `row` lies in the span of the stored rows.
    pub fn contains(&mut self, row: impl IntoIterator<Item = (usize, u32)>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Back substitution on the stored system: returns `x` with
    /// `x[pivot] = rhs(row) - sum_{c > pivot} row[c] * x[c]`, free variables
    /// taken from `free`.
    pub(crate) fn back_substitute(
        &self,
        unknowns: usize,
        mut x: Vec<u32>,
        rhs: impl Fn(&SparseVec) -> u32,
    ) -> Vec<u32> {
        let field = self.field;
        let mut order: Vec<usize> = (0..self.rows.len())
            .filter(|&r| self.rows[r][0].0 < unknowns)
            .collect();
        order.sort_unstable_by_key(|&r| Reverse(self.rows[r][0].0));
        for r in order {
            let row = &self.rows[r];
            let mut v = rhs(row);
            for &(c, b) in &row[1..] {
                if c < unknowns {
                    v = field.sub(v, field.mul(b, x[c]));
                }
            }
            x[row[0].0] = v;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_rows_are_rejected() {
        let f = PrimeField::new(3).unwrap();
        let mut e = Echelon::new(f, 3);
        assert!(e.insert([(0, 1), (1, 2)]));
        assert!(!e.insert([(0, 2), (1, 1)]));
        assert!(e.insert([(1, 1), (2, 1)]));
        assert!(!e.insert(Vec::new()));
        assert_eq!(e.rank(), 2);
        assert!(e.contains([(0, 1), (2, 1)]));
    }
}
