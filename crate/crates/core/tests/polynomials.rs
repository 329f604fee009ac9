//! Minor expansion against the permutation-sum formula, and Gröbner basis
//! sanity checks on random inputs.

use std::collections::BTreeSet;

use proptest::prelude::*;
use symladder_core::ideal::Minor;
use symladder_core::ladder::Cell;
use symladder_core::poly::groebner::{groebner_basis, is_groebner, normal_form};
use symladder_core::poly::{CellRing, Field, Poly, PrimeField, Rationals};

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn leibniz<F: Field>(cr: &CellRing<F>, rows: &[usize], cols: &[usize]) -> Poly<F::Elem> {
    let r = cr.ring();
    let mut acc = r.zero();
    for p in permutations(rows.len()) {
        let mut t = r.constant(r.field().from_i64(sign(&p)));
        for (i, &j) in p.iter().enumerate() {
            t = r.mul(&t, &cr.x(Cell::new(rows[i], cols[j])).unwrap());
        }
        acc = r.add(&acc, &t);
    }
    acc
}

fn index_set(max: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(1..=max, 1..=4).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #[test]
    fn expansion_matches_permutation_sum(rows in index_set(5), cols in index_set(5)) {
        let k = rows.len().min(cols.len());
        let (rows, cols) = (&rows[..k], &cols[..k]);
        let cr = CellRing::full(Rationals, 5);
        prop_assert_eq!(cr.det(rows, cols).unwrap(), leibniz(&cr, rows, cols));
    }

    #[test]
    fn transposed_minor_expands_identically(rows in index_set(5), cols in index_set(5)) {
        let k = rows.len().min(cols.len());
        let m = Minor::new(rows[..k].to_vec(), cols[..k].to_vec()).unwrap();
        let mt = Minor::new(cols[..k].to_vec(), rows[..k].to_vec()).unwrap();
        let cr = CellRing::full(PrimeField::new(32003).unwrap(), 5);
        prop_assert_eq!(cr.det(&rows[..k], &cols[..k]).unwrap(), cr.det(&cols[..k], &rows[..k]).unwrap());
        prop_assert_eq!(m.clone(), mt);
        prop_assert_eq!(cr.expand_minor(&m).unwrap(), cr.det(&rows[..k], &cols[..k]).unwrap());
    }

    #[test]
    fn bases_of_random_minor_sets_are_groebner(picks in proptest::collection::vec((index_set(4), index_set(4)), 1..4)) {
        let cr = CellRing::full(PrimeField::new(32003).unwrap(), 4);
        let mut gens = Vec::new();
        let mut seen = BTreeSet::new();
        for (r, c) in &picks {
            let k = r.len().min(c.len());
            if seen.insert((r[..k].to_vec(), c[..k].to_vec())) {
                gens.push(cr.det(&r[..k], &c[..k]).unwrap());
            }
        }
        let ring = cr.ring();
        let basis = groebner_basis(ring, &gens).unwrap();
        prop_assert!(is_groebner(ring, &basis));
        for g in &gens {
            prop_assert!(normal_form(ring, g, &basis).is_zero());
        }
    }
}

#[test]
fn veronese_basis_has_six_quadrics() {
    let cr = CellRing::full(Rationals, 3);
    let mut gens = Vec::new();
    for rows in [[1, 2], [1, 3], [2, 3]] {
        for cols in [[1, 2], [1, 3], [2, 3]] {
            gens.push(cr.det(&rows, &cols).unwrap());
        }
    }
    let basis = groebner_basis(cr.ring(), &gens).unwrap();
    assert_eq!(basis.len(), 6);
    assert!(basis.iter().all(|p| p.degree() == Some(2) && p.is_homogeneous()));
}
