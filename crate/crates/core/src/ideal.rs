//! Symmetric mixed ladder determinantal ideals: distinguished points on the
//! upper border, a size per point, normalization and generator enumeration.
//!
//! Point indices in this API are 0-based; `points[k]` carries `sizes[k]`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use thiserror::Error;

use crate::ladder::{validate_ladder, Cell, Ladder, LadderError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error("{points} points but {sizes} sizes")]
    LengthMismatch { points: usize, sizes: usize },
    #[error("size at position {index} is not positive")]
    NonPositiveSize { index: usize },
    #[error("point {0} is not on the upper border")]
    PointNotOnBorder(Cell),
    #[error("upper outside corner {0} is not a distinguished point")]
    MissingUpperOutsideCorner(Cell),
    #[error("point {0} is listed twice")]
    DuplicatePoint(Cell),
    #[error("at least one distinguished point is required")]
    NoPoints,
    #[error("ideal is not normalized")]
    NotNormalized,
    #[error("index {0} is not a valid pivot")]
    InvalidPivot(usize),
    #[error("the frame corner (1,n) is not in the ladder")]
    PreconditionCornerMissing,
    #[error("alpha is out of range: {0}")]
    AlphaOutOfRange(&'static str),
    #[error("no alpha entry exceeds row {row} of point {point}")]
    EmptyTauSet { point: Cell, row: usize },
    #[error("malformed blocks: {0}")]
    MalformedBlocks(&'static str),
    #[error("malformed minor: {0}")]
    MalformedMinor(&'static str),
}

/// The minor `[rows; cols]`, stored in canonical orientation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Minor {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Minor {
    /// Validates strictly increasing tuples of equal length and orients them
    /// so that `(rows, cols) <= (cols, rows)`.
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Minor, IdealError> {
        if rows.len() != cols.len() {
            return Err(IdealError::MalformedMinor("row and column counts differ"));
        }
        if rows.is_empty() {
            return Err(IdealError::MalformedMinor("empty minor"));
        }
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v[0] >= 1;
        if !increasing(&rows) || !increasing(&cols) {
            return Err(IdealError::MalformedMinor(
                "indices must be positive and strictly increasing",
            ));
        }
        Ok(Self::oriented(rows, cols))
    }

    fn oriented(rows: Vec<usize>, cols: Vec<usize>) -> Minor {
        if (&rows, &cols) <= (&cols, &rows) {
            Minor { rows, cols }
        } else {
            Minor {
                rows: cols,
                cols: rows,
            }
        }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Every matrix position the minor reads, in plus-part form.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .flat_map(move |&r| self.cols.iter().map(move |&c| Cell::new(r, c).canonical()))
    }
}

impl fmt::Display for Minor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, v: &[usize]| -> fmt::Result {
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        f.write_str("[")?;
        join(f, &self.rows)?;
        f.write_str(";")?;
        join(f, &self.cols)?;
        f.write_str("]")
    }
}

/// True iff every position of the minor lies in the symmetric completion.
pub fn minor_in_ladder(minor: &Minor, ladder: &Ladder) -> bool {
    minor.cells().all(|c| ladder.contains(c))
}

/// A ladder with distinguished points and their sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedLadderIdeal {
    ladder: Ladder,
    points: Vec<Cell>,
    sizes: Vec<usize>,
}

/// Ordering of points along the upper border: rows up, columns down.
fn border_order(a: &Cell, b: &Cell) -> core::cmp::Ordering {
    a.row.cmp(&b.row).then(b.col.cmp(&a.col))
}

/// Builds and validates an ideal; points are canonicalized and sorted along
/// the border, carrying their sizes with them.
pub fn mk_ideal(
    ladder: Ladder,
    points: &[Cell],
    sizes: &[usize],
) -> Result<MixedLadderIdeal, IdealError> {
    if points.len() != sizes.len() {
        return Err(IdealError::LengthMismatch {
            points: points.len(),
            sizes: sizes.len(),
        });
    }
    if points.is_empty() {
        return Err(IdealError::NoPoints);
    }
    if let Some(index) = sizes.iter().position(|&t| t == 0) {
        return Err(IdealError::NonPositiveSize { index });
    }
    let mut pairs: Vec<(Cell, usize)> = points
        .iter()
        .map(|p| p.canonical())
        .zip(sizes.iter().copied())
        .collect();
    pairs.sort_by(|a, b| border_order(&a.0, &b.0));
    for w in pairs.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(IdealError::DuplicatePoint(w[0].0));
        }
    }
    let border: BTreeSet<Cell> = ladder.upper_border().into_iter().collect();
    for (p, _) in &pairs {
        if !border.contains(p) {
            return Err(IdealError::PointNotOnBorder(*p));
        }
    }
    for corner in ladder.corners().upper_outside {
        if !pairs.iter().any(|(p, _)| *p == corner) {
            return Err(IdealError::MissingUpperOutsideCorner(corner));
        }
    }
    let (points, sizes) = pairs.into_iter().unzip();
    Ok(MixedLadderIdeal {
        ladder,
        points,
        sizes,
    })
}

/// Plus-part cells in the box of `p`; a point below the diagonal has the
/// same box as its diagonal projection.
fn box_of(ladder: &Ladder, p: Cell) -> BTreeSet<Cell> {
    ladder.box_cells(p).collect()
}

impl MixedLadderIdeal {
    pub fn ladder(&self) -> &Ladder {
        &self.ladder
    }

    pub fn points(&self) -> &[Cell] {
        &self.points
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The subladder `L_k`.
    pub fn subladder(&self, k: usize) -> BTreeSet<Cell> {
        box_of(&self.ladder, self.points[k])
    }

    /// Whether `I_{t_k}(L_k)` is forced to be zero: no lower outside corner
    /// leaves room for a `t_k`-minor below and left of the point.
    pub fn is_vacuous(&self, k: usize) -> bool {
        let p = self.points[k];
        let t = self.sizes[k];
        !self
            .ladder
            .corners()
            .lower_outside
            .iter()
            .any(|a| a.row <= p.row && a.col <= p.col && t <= (p.row - a.row + 1).min(p.col - a.col + 1))
    }

    /// True when every point is vacuous, so the ideal is zero.
    pub fn is_zero(&self) -> bool {
        (0..self.len()).all(|k| self.is_vacuous(k))
    }

    fn rule3_violation(&self) -> Option<usize> {
        for k in 1..self.len() {
            let (p, q) = (self.points[k - 1], self.points[k]);
            let dt = self.sizes[k] as i64 - self.sizes[k - 1] as i64;
            let dv = q.row as i64 - p.row as i64;
            let dw = q.col as i64 - p.col as i64;
            // I_{t_k}(L_k) lies in I_{t_{k-1}}(L_{k-1}): drop point k.
            if dv <= dt {
                return Some(k);
            }
            // I_{t_{k-1}}(L_{k-1}) lies in I_{t_k}(L_k): drop point k-1.
            if dw >= dt {
                return Some(k - 1);
            }
        }
        None
    }

    fn rule2_violation(&self) -> Option<usize> {
        if self.len() < 2 {
            return None;
        }
        (0..self.len()).find(|&k| self.is_vacuous(k))
    }

    pub fn is_normalized(&self) -> bool {
        self.rule2_violation().is_none() && self.rule3_violation().is_none()
    }

    /// Removes point `k` and shrinks the ladder to the union of the boxes of
    /// the remaining points.
    fn without_point(&self, k: usize) -> MixedLadderIdeal {
        let mut points = self.points.clone();
        let mut sizes = self.sizes.clone();
        points.remove(k);
        sizes.remove(k);
        let cells: BTreeSet<Cell> = points
            .iter()
            .flat_map(|&p| self.ladder.box_cells(p))
            .collect();
        let ladder = validate_ladder(self.ladder.n(), cells)
            .expect("a union of border boxes is a ladder");
        MixedLadderIdeal {
            ladder,
            points,
            sizes,
        }
    }

    /// Applies the pruning rules to a fixpoint, rule 2 before rule 3. A
    /// single remaining point is never dropped.
    pub fn normalize(&self) -> MixedLadderIdeal {
        let mut cur = self.clone();
        loop {
            if let Some(k) = cur.rule2_violation() {
                cur = cur.without_point(k);
                continue;
            }
            if let Some(k) = cur.rule3_violation() {
                cur = cur.without_point(k);
                continue;
            }
            return cur;
        }
    }

    /// Candidate pivots: `t_k >= 2`, `v_k > v_{k-1}`, `w_k > w_{k+1}`.
    pub fn pivot_candidates(&self) -> Vec<usize> {
        let s = self.len();
        (0..s)
            .filter(|&k| {
                let v_prev = if k == 0 { 0 } else { self.points[k - 1].row };
                let w_next = if k + 1 == s { 0 } else { self.points[k + 1].col };
                self.sizes[k] >= 2 && self.points[k].row > v_prev && self.points[k].col > w_next
            })
            .collect()
    }

    /// The pivot of the descent: the largest size among candidates, lowest
    /// index on ties. `None` iff all sizes are 1.
    pub fn pivot(&self) -> Result<Option<usize>, IdealError> {
        if !self.is_normalized() {
            return Err(IdealError::NotNormalized);
        }
        let mut best: Option<usize> = None;
        for k in self.pivot_candidates() {
            if best.is_none_or(|b| self.sizes[k] > self.sizes[b]) {
                best = Some(k);
            }
        }
        Ok(best)
    }

    /// Canonical minors of size `t_k` inside `L_k`, over all `k`.
    pub fn enumerate_generators(&self) -> BTreeSet<Minor> {
        let mut out = BTreeSet::new();
        for k in 0..self.len() {
            minors_in_cells(&self.subladder(k), self.sizes[k], &mut out);
        }
        out
    }

    /// Minors of point `k` only.
    pub fn generators_at(&self, k: usize) -> BTreeSet<Minor> {
        let mut out = BTreeSet::new();
        minors_in_cells(&self.subladder(k), self.sizes[k], &mut out);
        out
    }

    /// Same ideal data inside a larger ambient matrix.
    pub fn with_ambient(&self, n: usize) -> Result<MixedLadderIdeal, IdealError> {
        Ok(MixedLadderIdeal {
            ladder: self.ladder.with_ambient(n)?,
            points: self.points.clone(),
            sizes: self.sizes.clone(),
        })
    }
}

/// Adds every canonical `t`-minor whose positions lie in the completion of
/// `cells` to `out`.
pub(crate) fn minors_in_cells(cells: &BTreeSet<Cell>, t: usize, out: &mut BTreeSet<Minor>) {
    let has = |r: usize, c: usize| cells.contains(&Cell::new(r, c).canonical());
    let mut idx: BTreeSet<usize> = BTreeSet::new();
    for c in cells {
        idx.insert(c.row);
        idx.insert(c.col);
    }
    let idx: Vec<usize> = idx.into_iter().collect();
    if t == 0 || t > idx.len() {
        return;
    }
    let subsets = k_subsets(&idx, t);
    for rows in &subsets {
        for cols in &subsets {
            if (rows, cols) > (cols, rows) {
                continue;
            }
            if rows.iter().all(|&r| cols.iter().all(|&c| has(r, c))) {
                out.insert(Minor {
                    rows: rows.clone(),
                    cols: cols.clone(),
                });
            }
        }
    }
}

/// All `k`-element subsets of `items`, each in increasing order.
pub(crate) fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            if items.len() < need {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// A cogenerating index tuple `alpha_1 < ... < alpha_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CogeneratedSpec {
    pub alpha: Vec<usize>,
}

/// The cogenerated ideal `I_alpha(L)` as a mixed ladder ideal. The ladder
/// must reach row 1 and column `n`. Entries of `alpha` may go up to `n + 1`,
/// which acts as a sentinel for points in the last row.
pub fn from_cogenerated(
    ladder: &Ladder,
    spec: &CogeneratedSpec,
) -> Result<MixedLadderIdeal, IdealError> {
    let n = ladder.n();
    let alpha = &spec.alpha;
    if alpha.is_empty() {
        return Err(IdealError::AlphaOutOfRange("alpha is empty"));
    }
    if alpha[0] == 0 || alpha[0] > n {
        return Err(IdealError::AlphaOutOfRange("alpha_1 must lie in 1..=n"));
    }
    if alpha.windows(2).any(|w| w[0] >= w[1]) {
        return Err(IdealError::AlphaOutOfRange("alpha must be strictly increasing"));
    }
    if *alpha.last().unwrap() > n + 1 {
        return Err(IdealError::AlphaOutOfRange("alpha entries must not exceed n+1"));
    }
    if !ladder.contains(Cell::new(1, n)) {
        return Err(IdealError::PreconditionCornerMissing);
    }
    let border = ladder.upper_border();
    let mut points: BTreeSet<Cell> = ladder.corners().upper_outside.into_iter().collect();
    for &a in alpha {
        if a < 2 {
            continue;
        }
        let mut in_row = border.iter().filter(|c| c.row == a - 1);
        if let (Some(&p), None) = (in_row.next(), in_row.next()) {
            points.insert(p);
        }
    }
    let mut pts: Vec<Cell> = points.into_iter().collect();
    pts.sort_by(border_order);
    let mut sizes = Vec::with_capacity(pts.len());
    for p in &pts {
        match alpha.iter().position(|&a| a > p.row) {
            Some(l) => sizes.push(l + 1),
            None => return Err(IdealError::EmptyTauSet { point: *p, row: p.row }),
        }
    }
    Ok(mk_ideal(ladder.clone(), &pts, &sizes)?.normalize())
}

/// Embeds the `t`-minors of an `m x n` matrix whose lower-left square block
/// is symmetric into a ladder of a symmetric matrix of size `m + n - s`.
/// The block must occupy rows `m-s+1..=m` and columns `1..=s`.
pub fn embed_block_matrix(
    m: usize,
    n: usize,
    sym_rows: RangeInclusive<usize>,
    sym_cols: RangeInclusive<usize>,
    t: usize,
) -> Result<MixedLadderIdeal, IdealError> {
    use IdealError::MalformedBlocks;
    if m == 0 || n == 0 || m > n {
        return Err(MalformedBlocks("need 1 <= m <= n"));
    }
    if t == 0 {
        return Err(IdealError::NonPositiveSize { index: 0 });
    }
    let (r1, r2) = (*sym_rows.start(), *sym_rows.end());
    let (c1, c2) = (*sym_cols.start(), *sym_cols.end());
    if r1 == 0 || c1 == 0 || r1 > r2 || c1 > c2 || r2 > m || c2 > n {
        return Err(MalformedBlocks("block ranges must be non-empty and inside the matrix"));
    }
    let s = r2 - r1 + 1;
    if c2 - c1 + 1 != s {
        return Err(MalformedBlocks("symmetric block must be square"));
    }
    if r2 != m || c1 != 1 {
        return Err(MalformedBlocks(
            "symmetric block must sit in the last rows and first columns",
        ));
    }
    let a = m - s;
    let big = m + n - s;
    let mut cells = Vec::new();
    for i in 1..=m {
        for j in (a + 1).max(i)..=big {
            cells.push(Cell::new(i, j));
        }
    }
    let ladder = validate_ladder(big, cells)?;
    Ok(mk_ideal(ladder, &[Cell::new(m, big)], &[t])?.normalize())
}
