use std::fmt;

/// Flag of an unrelated pair.
pub const NONE: u8 = 0;
/// Flag of a related pair whose trace segment does not progress.
pub const RELATED: u8 = 1;
/// Flag of a related pair whose trace segment progresses at least once.
pub const PROGRESS: u8 = 2;

/// Relation between the trace positions at the start of a path and those
/// at its end, with a progress flag per related pair.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeMatrix {
    pub rows: usize,
    pub cols: usize,
    cells: Vec<u8>,
}

impl EdgeMatrix {
    pub fn empty(rows: usize, cols: usize) -> EdgeMatrix {
        EdgeMatrix { rows, cols, cells: vec![NONE; rows * cols] }
    }

    pub fn identity(n: usize) -> EdgeMatrix {
        let mut m = EdgeMatrix::empty(n, n);
        for i in 0..n {
            m.set(i, i, RELATED);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.cells[i * self.cols + j]
    }

    /// Sets a cell, keeping the stronger flag if it is already set.
    pub fn set(&mut self, i: usize, j: usize, flag: u8) {
        let c = &mut self.cells[i * self.cols + j];
        *c = (*c).max(flag);
    }

    /// Path composition: `i` relates to `k` if some `j` connects them; the
    /// flag is the maximum along the best connecting chain.
    pub fn compose(&self, other: &EdgeMatrix) -> EdgeMatrix {
        assert_eq!(self.cols, other.rows, "matrix dimensions do not chain");
        let mut out = EdgeMatrix::empty(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == NONE {
                    continue;
                }
                for k in 0..other.cols {
                    let b = other.get(j, k);
                    if b != NONE {
                        out.set(i, k, a.max(b));
                    }
                }
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && self.compose(self) == *self
    }

    pub fn has_progressing_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).any(|i| self.get(i, i) == PROGRESS)
    }

    /// The unique idempotent among the powers of a square matrix.
    pub fn idempotent_power(&self) -> EdgeMatrix {
        let mut p = self.clone();
        loop {
            if p.is_idempotent() {
                return p;
            }
            p = p.compose(self);
        }
    }
}

impl fmt::Debug for EdgeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                let c = match self.get(i, j) {
                    NONE => '.',
                    RELATED => '=',
                    _ => '<',
                };
                write!(f, "{c}")?;
            }
        }
        write!(f, "]")
    }
}
