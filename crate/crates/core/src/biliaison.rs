//! One descent step and the full descent chain to an ideal of indeterminates,
//! plus the substitution data of the localization isomorphism.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

use crate::height::{h_plus, HeightProfile};
use crate::ideal::{mk_ideal, IdealError, Minor, MixedLadderIdeal};
use crate::ladder::{validate_ladder, Cell};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BiliaisonError {
    #[error("all sizes are 1: nothing left to descend")]
    NoPivot,
    #[error("the ideal is zero")]
    ZeroIdeal,
    #[error("index {0} is not a valid pivot")]
    InvalidPivot(usize),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// One elementary step: `source` is obtained from `target` by a biliaison
/// of height 1 on `link`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiliaisonStep {
    pub source: MixedLadderIdeal,
    pub target: MixedLadderIdeal,
    pub link: MixedLadderIdeal,
    /// 0-based index of the pivot point in `source`.
    pub pivot_k: usize,
    pub f_numerator: Minor,
    pub f_denominator: Minor,
    /// Heights of source, target and link.
    pub heights: [usize; 3],
    pub height_shift: usize,
}

impl BiliaisonStep {
    pub fn pivot_point(&self) -> Cell {
        self.source.points()[self.pivot_k]
    }

    pub fn pivot_size(&self) -> usize {
        self.source.sizes()[self.pivot_k]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiliaisonCertificate {
    /// Steps in ascending order: the first step starts from the terminal
    /// ideal, the last one reaches the input.
    pub steps: Vec<BiliaisonStep>,
    pub terminal: MixedLadderIdeal,
    pub biliaison_count: usize,
    pub g_link_count: usize,
}

/// `x_cell -> x_cell + sign * x_row_partner * x_col_partner / x_inverted`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubstitutionRule {
    pub cell: Cell,
    pub row_partner: Cell,
    pub col_partner: Cell,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationMap {
    pub inverted_cell: Cell,
    /// Rules of the map into the target ring (plus sign).
    pub forward_rules: Vec<SubstitutionRule>,
    /// Rules of the map back (minus sign).
    pub backward_rules: Vec<SubstitutionRule>,
    /// Cells removed from the ladder that become free variables.
    pub transported_cells: Vec<Cell>,
}

impl LocalizationMap {
    pub fn rule_for(&self, cell: Cell) -> Option<&SubstitutionRule> {
        let cell = cell.canonical();
        self.forward_rules.iter().find(|r| r.cell == cell)
    }
}

fn neighbours(ideal: &MixedLadderIdeal, k: usize) -> (usize, usize) {
    let pts = ideal.points();
    let v_prev = if k == 0 { 0 } else { pts[k - 1].row };
    let w_next = if k + 1 == pts.len() { 0 } else { pts[k + 1].col };
    (v_prev, w_next)
}

/// Cells of the plus part removed when passing to the target ladder: the
/// column segment above the pivot down to the previous point's row and the
/// row segment left of it up to the next point's column.
pub fn deleted_cells(ideal: &MixedLadderIdeal, k: usize) -> Vec<Cell> {
    let p = ideal.points()[k];
    let (v_prev, w_next) = neighbours(ideal, k);
    let ladder = ideal.ladder();
    let mut out = BTreeSet::new();
    for i in v_prev + 1..=p.row {
        let c = Cell::new(i, p.col);
        if ladder.cell_set().contains(&c) {
            out.insert(c);
        }
    }
    for j in w_next + 1..p.col {
        let c = Cell::new(p.row, j);
        if ladder.cell_set().contains(&c) {
            out.insert(c);
        }
    }
    out.into_iter().collect()
}

/// Plus-part representative of a point; a point below the diagonal is
/// replaced by the diagonal cell with the same box.
fn point_cell(row: usize, col: usize) -> Cell {
    if row > col {
        Cell::new(col, col)
    } else {
        Cell::new(row, col)
    }
}

fn range_minor(v: usize, w: usize, len: usize) -> Minor {
    Minor::new(
        (v + 1 - len..=v).collect(),
        (w + 1 - len..=w).collect(),
    )
    .expect("consecutive indices form a minor")
}

/// Builds target and link for pivot `k` of a normalized ideal.
pub fn step_at(ideal: &MixedLadderIdeal, k: usize) -> Result<BiliaisonStep, BiliaisonError> {
    if !ideal.is_normalized() {
        return Err(IdealError::NotNormalized.into());
    }
    if !ideal.pivot_candidates().contains(&k) {
        return Err(BiliaisonError::InvalidPivot(k));
    }
    if ideal.is_vacuous(k) {
        return Err(BiliaisonError::ZeroIdeal);
    }
    let n = ideal.ladder().n();
    let p = ideal.points()[k];
    let t = ideal.sizes()[k];
    let (v, w) = (p.row, p.col);

    let deleted: BTreeSet<Cell> = deleted_cells(ideal, k).into_iter().collect();
    let target_cells = ideal.ladder().cells().filter(|c| !deleted.contains(c));
    let target_ladder = validate_ladder(n, target_cells).map_err(IdealError::from)?;
    let mut tp = ideal.points().to_vec();
    let mut ts = ideal.sizes().to_vec();
    tp[k] = point_cell(v - 1, w - 1);
    ts[k] = t - 1;
    let target = mk_ideal(target_ladder, &tp, &ts)?.normalize();

    let link_cells = ideal.ladder().cells().filter(|c| *c != p);
    let link_ladder = validate_ladder(n, link_cells).map_err(IdealError::from)?;
    let mut lp = ideal.points().to_vec();
    let mut ls = ideal.sizes().to_vec();
    let second = point_cell(v, w - 1);
    lp[k] = point_cell(v - 1, w);
    if second != lp[k] {
        lp.insert(k + 1, second);
        ls.insert(k + 1, t);
    }
    let link = mk_ideal(link_ladder, &lp, &ls)?.normalize();

    let heights = [
        h_plus(ideal)?.height,
        h_plus(&target)?.height,
        h_plus(&link)?.height,
    ];
    Ok(BiliaisonStep {
        source: ideal.clone(),
        target,
        link,
        pivot_k: k,
        f_numerator: range_minor(v - 1, w - 1, t - 1),
        f_denominator: range_minor(v, w, t),
        heights,
        height_shift: 1,
    })
}

/// One descent step at the canonical pivot.
pub fn descend_step(ideal: &MixedLadderIdeal) -> Result<BiliaisonStep, BiliaisonError> {
    if ideal.is_normalized() && ideal.is_zero() {
        return Err(BiliaisonError::ZeroIdeal);
    }
    match ideal.pivot()? {
        None => Err(BiliaisonError::NoPivot),
        Some(k) => step_at(ideal, k),
    }
}

/// Normalizes and descends until all sizes are 1.
pub fn descend_chain(ideal: &MixedLadderIdeal) -> Result<BiliaisonCertificate, BiliaisonError> {
    let mut cur = ideal.normalize();
    if cur.is_zero() {
        return Err(BiliaisonError::ZeroIdeal);
    }
    let mut steps = Vec::new();
    loop {
        match descend_step(&cur) {
            Ok(step) => {
                cur = step.target.clone();
                steps.push(step);
            }
            Err(BiliaisonError::NoPivot) => break,
            Err(e) => return Err(e),
        }
    }
    steps.reverse();
    let count = steps.len();
    Ok(BiliaisonCertificate {
        steps,
        terminal: cur,
        biliaison_count: count,
        g_link_count: 2 * count,
    })
}

impl BiliaisonCertificate {
    /// Cells of the terminal ideal of indeterminates.
    pub fn terminal_cells(&self) -> BTreeSet<Cell> {
        self.terminal
            .enumerate_generators()
            .into_iter()
            .map(|m| Cell::new(m.rows()[0], m.cols()[0]))
            .collect()
    }
}

/// Substitution data for pivot `k`: every cell of the pivot's box outside
/// its row and column is shifted by the product of its two partners.
pub fn lemma_local_data(ideal: &MixedLadderIdeal, k: usize) -> Result<LocalizationMap, BiliaisonError> {
    if k >= ideal.len() || !ideal.pivot_candidates().contains(&k) {
        return Err(BiliaisonError::InvalidPivot(k));
    }
    let p = ideal.points()[k];
    let (v, w) = (p.row, p.col);
    let rules: Vec<SubstitutionRule> = ideal
        .ladder()
        .box_cells(p)
        .filter(|c| c.row != v && c.col != w)
        .map(|c| SubstitutionRule {
            cell: c,
            row_partner: Cell::new(c.row, w).canonical(),
            col_partner: Cell::new(v, c.col).canonical(),
        })
        .collect();
    Ok(LocalizationMap {
        inverted_cell: p,
        forward_rules: rules.clone(),
        backward_rules: rules,
        transported_cells: deleted_cells(ideal, k),
    })
}

/// Height profile of every ideal in a step: source, target, link.
pub fn step_profiles(step: &BiliaisonStep) -> Result<[HeightProfile; 3], BiliaisonError> {
    Ok([h_plus(&step.source)?, h_plus(&step.target)?, h_plus(&step.link)?])
}
