//! The height profile `H+` of a normalized ideal: a subladder whose size is
//! the height of the ideal.

use alloc::collections::BTreeSet;

use crate::ideal::{IdealError, MixedLadderIdeal};
use crate::ladder::Cell;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightProfile {
    pub h_plus: BTreeSet<Cell>,
    pub height: usize,
}

impl HeightProfile {
    fn from_cells(h_plus: BTreeSet<Cell>) -> Self {
        let height = h_plus.len();
        HeightProfile { h_plus, height }
    }
}

/// The corner `(v_k - t_k + 1, w_k - t_k + 1)` of `H+` attached to point `k`,
/// as signed coordinates (they may leave the grid for vacuous points).
fn shifted(ideal: &MixedLadderIdeal, k: usize) -> (i64, i64) {
    let p = ideal.points()[k];
    let t = ideal.sizes()[k] as i64;
    (p.row as i64 - t + 1, p.col as i64 - t + 1)
}

/// Cells of `L+` cut out by the shifted points of a normalized ideal.
pub fn h_plus(ideal: &MixedLadderIdeal) -> Result<HeightProfile, IdealError> {
    if !ideal.is_normalized() {
        return Err(IdealError::NotNormalized);
    }
    let s = ideal.len();
    let corners: alloc::vec::Vec<(i64, i64)> = (0..s).map(|k| shifted(ideal, k)).collect();
    let cells = ideal
        .ladder()
        .cells()
        .filter(|c| {
            let (i, j) = (c.row as i64, c.col as i64);
            j <= corners[0].1
                && i <= corners[s - 1].0
                && (1..s).all(|k| i <= corners[k - 1].0 || j <= corners[k].1)
        })
        .collect();
    Ok(HeightProfile::from_cells(cells))
}

/// `H+` with the corner of pivot `k` removed: the profile of the link ideal.
pub fn i_plus(ideal: &MixedLadderIdeal, k: usize) -> Result<HeightProfile, IdealError> {
    if !ideal.pivot_candidates().contains(&k) {
        return Err(IdealError::InvalidPivot(k));
    }
    let mut profile = h_plus(ideal)?;
    let (r, c) = shifted(ideal, k);
    let corner = Cell::new(r as usize, c as usize);
    if !profile.h_plus.remove(&corner) {
        return Err(IdealError::InvalidPivot(k));
    }
    Ok(HeightProfile::from_cells(profile.h_plus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::mk_ideal;
    use crate::ladder::{validate_ladder, Ladder};
    use alloc::vec::Vec;

    fn triangle(n: usize) -> Ladder {
        let mut v = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                v.push(Cell::new(i, j));
            }
        }
        validate_ladder(n, v).unwrap()
    }

    #[test]
    fn classical_heights() {
        for n in 1..=6 {
            for t in 1..=n {
                let i = mk_ideal(triangle(n), &[Cell::new(n, n)], &[t]).unwrap();
                let p = h_plus(&i).unwrap();
                let m = n - t + 1;
                assert_eq!(p.height, m * (m + 1) / 2, "n={n} t={t}");
                assert!(p.h_plus.iter().all(|c| c.col <= m));
            }
        }
    }

    #[test]
    fn all_ones_gives_whole_ladder() {
        let l = triangle(4);
        let i = mk_ideal(l.clone(), &[Cell::new(2, 4), Cell::new(4, 4)], &[1, 1]);
        // Equal sizes on a shared column are not normalized.
        let i = i.unwrap().normalize();
        assert_eq!(h_plus(&i).unwrap().height, l.len());
    }

    #[test]
    fn i_plus_removes_pivot_corner() {
        let i = mk_ideal(triangle(3), &[Cell::new(3, 3)], &[2]).unwrap();
        let p = i_plus(&i, 0).unwrap();
        assert_eq!(p.height, 2);
        assert!(!p.h_plus.contains(&Cell::new(2, 2)));
        assert_eq!(i_plus(&i, 1), Err(IdealError::InvalidPivot(1)));
    }

    #[test]
    fn rejects_unnormalized() {
        let i = mk_ideal(triangle(3), &[Cell::new(2, 3), Cell::new(3, 3)], &[2, 3]).unwrap();
        assert_eq!(h_plus(&i), Err(IdealError::NotNormalized));
    }
}
