//! Symmetric ladders of an `n x n` symmetric matrix of indeterminates.
//!
//! A ladder is stored through its plus part: the cells `(i, j)` with
//! `i <= j`. Validity is convexity of the plus part under the product order,
//! which is exactly the class of regions cut out by corner inequalities.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A grid position `(row, col)`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// The representative of this position in the plus part (`row <= col`).
    pub fn canonical(self) -> Self {
        if self.row <= self.col {
            self
        } else {
            Cell::new(self.col, self.row)
        }
    }

    pub fn mirror(self) -> Self {
        Cell::new(self.col, self.row)
    }

    /// Product order: `self` lies weakly north-west of `other`.
    pub fn le_product(self, other: Cell) -> bool {
        self.row <= other.row && self.col <= other.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell::new(row, col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("cell {cell} lies outside the {n}x{n} grid")]
    OutOfRange { cell: Cell, n: usize },
    #[error("closure violated: {first} and {second} are in the ladder but {missing} is not")]
    ClosureViolation {
        first: Cell,
        second: Cell,
        missing: Cell,
    },
    #[error("ladder has no cells")]
    EmptyLadder,
    #[error("malformed corner data: {0}")]
    MalformedCorners(&'static str),
    #[error("cell {0} is not in the ladder")]
    CellNotInLadder(Cell),
}

/// A symmetric ladder, represented by its plus part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ladder {
    n: usize,
    cells: BTreeSet<Cell>,
}

/// The four corner lists of a ladder, each ordered by increasing row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerData {
    pub lower_inside: Vec<Cell>,
    pub lower_outside: Vec<Cell>,
    pub upper_inside: Vec<Cell>,
    pub upper_outside: Vec<Cell>,
}

/// Checks that the plus part is convex for the product order: whenever
/// `first <= missing <= second` with both ends in the ladder, the middle cell
/// must be too. Returns the first violating triple.
fn closure_witness(cells: &BTreeSet<Cell>) -> Option<(Cell, Cell, Cell)> {
    for &a in cells {
        for &b in cells.range(a..) {
            if !a.le_product(b) {
                continue;
            }
            for i in a.row..=b.row {
                for j in a.col.max(i)..=b.col {
                    let c = Cell::new(i, j);
                    if !cells.contains(&c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
    }
    None
}

/// Builds a ladder from an arbitrary set of positions, canonicalizing each to
/// its plus-part representative.
pub fn validate_ladder<I>(n: usize, cells: I) -> Result<Ladder, LadderError>
where
    I: IntoIterator<Item = Cell>,
{
    let mut set = BTreeSet::new();
    for cell in cells {
        if cell.row == 0 || cell.col == 0 || cell.row > n || cell.col > n {
            return Err(LadderError::OutOfRange { cell, n });
        }
        set.insert(cell.canonical());
    }
    if set.is_empty() {
        return Err(LadderError::EmptyLadder);
    }
    if let Some((first, second, missing)) = closure_witness(&set) {
        return Err(LadderError::ClosureViolation {
            first,
            second,
            missing,
        });
    }
    let ladder = Ladder { n, cells: set };
    debug_assert!({
        let cd = ladder.corners();
        staircase_cells(n, &cd.lower_inside, &cd.upper_inside) == ladder.cells
    });
    Ok(ladder)
}

/// The corner set-builder, clamped to the rows below and the columns left
/// of the common first inside corner.
fn staircase_cells(n: usize, lower_inside: &[Cell], upper_inside: &[Cell]) -> BTreeSet<Cell> {
    let top = lower_inside[0].row;
    let right = upper_inside[0].col.min(n);
    let mut cells = BTreeSet::new();
    for i in top..=right {
        for j in i..=right {
            let upper_ok = upper_inside.iter().all(|c| i <= c.row || j <= c.col);
            let lower_ok = lower_inside.iter().all(|a| i >= a.row || j >= a.col);
            if upper_ok && lower_ok {
                cells.insert(Cell::new(i, j));
            }
        }
    }
    cells
}

/// Evaluates the corner set-builder. The first lower and upper inside corner
/// must coincide; it bounds the ladder from the north-east.
pub fn from_corners(
    n: usize,
    lower_inside: &[Cell],
    upper_inside: &[Cell],
) -> Result<Ladder, LadderError> {
    use LadderError::MalformedCorners;
    if lower_inside.is_empty() || upper_inside.is_empty() {
        return Err(MalformedCorners("corner lists must be non-empty"));
    }
    for c in lower_inside.iter().chain(upper_inside) {
        if c.row == 0 || c.col == 0 || c.row > n || c.col > n {
            return Err(LadderError::OutOfRange { cell: *c, n });
        }
        if c.row > c.col {
            return Err(MalformedCorners("inside corners must satisfy row <= col"));
        }
    }
    // Consecutive corners may share a row (upper list) or a column (lower
    // list) when the first outside corner sits on the edge of the frame.
    let monotone = |cs: &[Cell]| {
        cs.windows(2)
            .all(|w| w[0] != w[1] && w[0].row <= w[1].row && w[0].col >= w[1].col)
    };
    if !monotone(lower_inside) {
        return Err(MalformedCorners(
            "lower inside corners need increasing rows and decreasing columns",
        ));
    }
    if !monotone(upper_inside) {
        return Err(MalformedCorners(
            "upper inside corners need increasing rows and decreasing columns",
        ));
    }
    if lower_inside[0] != upper_inside[0] {
        return Err(MalformedCorners(
            "first lower and first upper inside corner must coincide",
        ));
    }
    validate_ladder(n, staircase_cells(n, lower_inside, upper_inside))
}

impl Ladder {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Plus-part cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Membership in the symmetric completion.
    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell.canonical())
    }

    /// Same cell set viewed inside a larger (or equal) ambient matrix.
    pub fn with_ambient(&self, n: usize) -> Result<Ladder, LadderError> {
        validate_ladder(n, self.cells())
    }

    /// `(min row, max col)`: the common first inside corner.
    fn frame_corner(&self) -> Cell {
        let top = self.cells.iter().map(|c| c.row).min().unwrap_or(1);
        let right = self.cells.iter().map(|c| c.col).max().unwrap_or(1);
        Cell::new(top, right)
    }

    /// Maximal cells under the product order, by increasing row.
    fn maximal_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        let mut best_below: Option<usize> = None;
        let rows: BTreeSet<usize> = self.cells.iter().map(|c| c.row).collect();
        for &r in rows.iter().rev() {
            let max_col = self
                .cells
                .range(Cell::new(r, 0)..=Cell::new(r, usize::MAX))
                .next_back()
                .map(|c| c.col)
                .unwrap();
            if best_below.is_none_or(|b| max_col > b) {
                out.push(Cell::new(r, max_col));
                best_below = Some(max_col);
            }
        }
        out.reverse();
        out
    }

    /// Minimal cells under the product order, by increasing row.
    fn minimal_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        let mut best_above: Option<usize> = None;
        let rows: BTreeSet<usize> = self.cells.iter().map(|c| c.row).collect();
        for &r in &rows {
            let min_col = self
                .cells
                .range(Cell::new(r, 0)..=Cell::new(r, usize::MAX))
                .next()
                .map(|c| c.col)
                .unwrap();
            if best_above.is_none_or(|b| min_col < b) {
                out.push(Cell::new(r, min_col));
                best_above = Some(min_col);
            }
        }
        out
    }

    /// Corner data. Outside corners are the extremal cells of the ladder
    /// under the product order; inside corners are read off between them,
    /// with a diagonal inside corner closing each staircase when the last
    /// outside corner is off the diagonal.
    pub fn corners(&self) -> CornerData {
        let frame = self.frame_corner();
        let upper_outside = self.maximal_cells();
        let mut upper_inside = Vec::with_capacity(upper_outside.len() + 1);
        upper_inside.push(frame);
        for w in upper_outside.windows(2) {
            upper_inside.push(Cell::new(w[0].row, w[1].col));
        }
        let last = *upper_outside.last().unwrap();
        if last.row < last.col {
            upper_inside.push(Cell::new(last.row, last.row));
        }

        let lower_outside = self.minimal_cells();
        let mut lower_inside = Vec::with_capacity(lower_outside.len() + 1);
        lower_inside.push(frame);
        for w in lower_outside.windows(2) {
            lower_inside.push(Cell::new(w[1].row, w[0].col));
        }
        let last = *lower_outside.last().unwrap();
        if last.row < last.col {
            lower_inside.push(Cell::new(last.col, last.col));
        }
        CornerData {
            lower_inside,
            lower_outside,
            upper_inside,
            upper_outside,
        }
    }

    /// Cells on the upper border, by increasing row then decreasing column.
    pub fn upper_border(&self) -> Vec<Cell> {
        let inside = self.corners().upper_inside;
        let r = inside.len();
        let c = |l: usize| inside[l].row;
        let d = |l: usize| inside[l].col;
        let mut border = BTreeSet::new();
        for l in 0..r {
            let next_row = if l + 1 < r {
                c(l + 1)
            } else if c(l) != d(l) {
                d(l)
            } else {
                c(l)
            };
            for row in c(l)..=next_row {
                border.insert(Cell::new(row, d(l)));
            }
            // The row segment before the first inside corner is empty: its
            // column is already the largest one in the ladder.
            let prev_col = if l == 0 { d(0) } else { d(l - 1) };
            for col in d(l)..=prev_col {
                border.insert(Cell::new(c(l), col));
            }
        }
        let mut out: Vec<Cell> = border
            .into_iter()
            .filter(|cell| self.cells.contains(cell))
            .collect();
        out.sort_by(|a, b| a.row.cmp(&b.row).then(b.col.cmp(&a.col)));
        out
    }

    /// Plus-part cells in the box `i <= c, j <= d`.
    pub fn box_cells(&self, corner: Cell) -> impl Iterator<Item = Cell> + '_ {
        self.cells
            .iter()
            .copied()
            .filter(move |x| x.row <= corner.row && x.col <= corner.col)
    }

    /// The subladder of cells weakly north-west of `(c, d)`.
    pub fn subladder_at(&self, corner: Cell) -> Result<Ladder, LadderError> {
        if !self.contains(corner) {
            return Err(LadderError::CellNotInLadder(corner));
        }
        validate_ladder(self.n, self.box_cells(corner))
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (idx, c) in self.cells.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}
