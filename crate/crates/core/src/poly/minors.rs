//! Polynomial rings indexed by ladder cells, and determinant expansion.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use super::field::Field;
use super::monomial::{MonomialOrder, OrderKind};
use super::polynomial::{Poly, PolyRing};
use crate::ideal::Minor;
use crate::ladder::Cell;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("position {0} has no variable in this ring")]
    IndexOutOfRange(Cell),
}

/// A ring with one variable per plus-part cell, row-major, optionally
/// followed by an extra variable `y` that ranks last.
#[derive(Clone, Debug)]
pub struct CellRing<F: Field> {
    ring: PolyRing<F>,
    cells: Vec<Cell>,
    index: BTreeMap<Cell, usize>,
    has_y: bool,
}

impl<F: Field> CellRing<F> {
    pub fn new<I: IntoIterator<Item = Cell>>(field: F, cells: I, with_y: bool) -> Self {
        let mut cells: Vec<Cell> = cells.into_iter().map(|c| c.canonical()).collect();
        cells.sort();
        cells.dedup();
        let mut names: Vec<String> = cells.iter().map(|c| format!("x[{},{}]", c.row, c.col)).collect();
        if with_y {
            names.push(String::from("y"));
        }
        let order = MonomialOrder::new(OrderKind::DegRevLex, names.len());
        let index = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        CellRing {
            ring: PolyRing::new(field, order, names),
            cells,
            index,
            has_y: with_y,
        }
    }

    /// All cells of the `n x n` symmetric matrix.
    pub fn full(field: F, n: usize) -> Self {
        let cells = (1..=n).flat_map(|i| (i..=n).map(move |j| Cell::new(i, j)));
        CellRing::new(field, cells, false)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Number of cell variables (excluding `y`).
    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn var_of(&self, cell: Cell) -> Option<usize> {
        self.index.get(&cell.canonical()).copied()
    }

    pub fn x(&self, cell: Cell) -> Result<Poly<F::Elem>, MinorError> {
        self.var_of(cell)
            .map(|v| self.ring.var(v))
            .ok_or(MinorError::IndexOutOfRange(cell))
    }

    pub fn y(&self) -> Option<Poly<F::Elem>> {
        self.has_y.then(|| self.ring.var(self.cells.len()))
    }

    /// Determinant of the submatrix with the given row and column order, by
    /// Laplace expansion along the first row.
    pub fn det(&self, rows: &[usize], cols: &[usize]) -> Result<Poly<F::Elem>, MinorError> {
        assert_eq!(rows.len(), cols.len());
        let mut entries = Vec::with_capacity(rows.len());
        for &r in rows {
            let mut row = Vec::with_capacity(cols.len());
            for &c in cols {
                row.push(self.x(Cell::new(r, c))?);
            }
            entries.push(row);
        }
        let cols_left: Vec<usize> = (0..cols.len()).collect();
        Ok(self.laplace(&entries, 0, &cols_left))
    }

    fn laplace(&self, m: &[Vec<Poly<F::Elem>>], row: usize, cols: &[usize]) -> Poly<F::Elem> {
        let r = &self.ring;
        if cols.is_empty() {
            return r.one();
        }
        let mut acc = r.zero();
        for (pos, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.laplace(m, row + 1, &rest);
            let term = r.mul(&m[row][c], &sub);
            acc = if pos % 2 == 0 {
                r.add(&acc, &term)
            } else {
                r.sub(&acc, &term)
            };
        }
        acc
    }

    pub fn expand_minor(&self, minor: &Minor) -> Result<Poly<F::Elem>, MinorError> {
        self.det(minor.rows(), minor.cols())
    }
}

/// Expansion of a minor in the ring of the full `n x n` symmetric matrix.
pub fn expand_minor<F: Field>(field: F, minor: &Minor, n: usize) -> Result<Poly<F::Elem>, MinorError> {
    CellRing::full(field, n).expand_minor(minor)
}
