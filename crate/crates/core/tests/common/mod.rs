//! Shared fixtures for the integration tests: small ladder families and
//! brute-force oracles that do not go through the library's own checks.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use symladder_core::ideal::{mk_ideal, MixedLadderIdeal};
use symladder_core::ladder::{validate_ladder, Cell, Ladder};

pub fn triangle_cells(n: usize) -> Vec<Cell> {
    (1..=n).flat_map(|i| (i..=n).map(move |j| Cell::new(i, j))).collect()
}

pub fn triangle(n: usize) -> Ladder {
    validate_ladder(n, triangle_cells(n)).unwrap()
}

/// Product-order convexity, checked over all triples.
pub fn is_convex(cells: &BTreeSet<Cell>) -> bool {
    for a in cells {
        for b in cells {
            if !a.le_product(*b) {
                continue;
            }
            for i in a.row..=b.row {
                for j in a.col.max(i)..=b.col {
                    if !cells.contains(&Cell::new(i, j)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Cells lying between two members of `cells`.
pub fn convex_hull(cells: &BTreeSet<Cell>) -> BTreeSet<Cell> {
    let mut out = BTreeSet::new();
    for a in cells {
        for b in cells {
            if a.le_product(*b) {
                for i in a.row..=b.row {
                    for j in a.col.max(i)..=b.col {
                        out.insert(Cell::new(i, j));
                    }
                }
            }
        }
    }
    out
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize, density: f64) -> BTreeSet<Cell> {
    triangle_cells(n).into_iter().filter(|_| rng.gen_bool(density)).collect()
}

/// A random valid ladder whose last column is `n`.
pub fn random_ladder<R: Rng>(rng: &mut R, n: usize) -> Ladder {
    loop {
        let mut seed = random_subset(rng, n, 0.25);
        let top = rng.gen_range(1..=n);
        seed.insert(Cell::new(top, n));
        let hull = convex_hull(&seed);
        if let Ok(l) = validate_ladder(n, hull) {
            return l;
        }
    }
}

/// Random distinguished points: every upper outside corner, optionally one
/// extra border cell, with sizes in `1..=max_t`.
pub fn random_ideal<R: Rng>(rng: &mut R, ladder: &Ladder, max_t: usize) -> MixedLadderIdeal {
    let mut pts = ladder.corners().upper_outside;
    let extra: Vec<Cell> = ladder
        .upper_border()
        .into_iter()
        .filter(|c| !pts.contains(c))
        .collect();
    if !extra.is_empty() && rng.gen_bool(0.5) {
        pts.push(extra[rng.gen_range(0..extra.len())]);
    }
    pts.sort_by(|a, b| a.row.cmp(&b.row).then(b.col.cmp(&a.col)));
    let sizes: Vec<usize> = pts.iter().map(|_| rng.gen_range(1..=max_t)).collect();
    mk_ideal(ladder.clone(), &pts, &sizes).unwrap()
}

/// Every normalized, nonzero ideal with `n <= 5`, at most two points and
/// sizes at most 3, on a ladder reaching column `n`.
pub fn small_family() -> Vec<MixedLadderIdeal> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=5usize {
        let all = triangle_cells(n);
        for mask in 1u32..(1 << all.len()) {
            let cells: Vec<Cell> = all
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, c)| *c)
                .collect();
            if cells.iter().map(|c| c.col).max() != Some(n) {
                continue;
            }
            let Ok(l) = validate_ladder(n, cells) else {
                continue;
            };
            let outs = l.corners().upper_outside;
            let mut point_sets = vec![outs.clone()];
            for e in l.upper_border().into_iter().filter(|c| !outs.contains(c)) {
                let mut p = outs.clone();
                p.push(e);
                point_sets.push(p);
            }
            for pts in point_sets {
                let s = pts.len();
                if s > 2 {
                    continue;
                }
                for code in 0..3usize.pow(s as u32) {
                    let sizes: Vec<usize> = (0..s).map(|i| code / 3usize.pow(i as u32) % 3 + 1).collect();
                    let Ok(i) = mk_ideal(l.clone(), &pts, &sizes) else {
                        continue;
                    };
                    if !i.is_normalized() || i.is_zero() {
                        continue;
                    }
                    if seen.insert(format!("{i:?}")) {
                        out.push(i);
                    }
                }
            }
        }
    }
    out
}
