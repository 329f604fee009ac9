//! ASCII diagrams of ladders.

use std::collections::BTreeSet;

use symladder_core::ladder::{Cell, Ladder};

/// One line per row of the `n x n` grid: `.` outside the plus part, `#`
/// inside, `H` for shaded cells and `*` for marked points.
pub fn render(ladder: &Ladder, shaded: &BTreeSet<Cell>, marked: &BTreeSet<Cell>) -> String {
    let n = ladder.n();
    let mut out = String::with_capacity(n * (n + 1));
    for i in 1..=n {
        for j in 1..=n {
            let c = Cell::new(i, j);
            let ch = if i > j || !ladder.contains(c) {
                '.'
            } else if marked.contains(&c) {
                '*'
            } else if shaded.contains(&c) {
                'H'
            } else {
                '#'
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}
