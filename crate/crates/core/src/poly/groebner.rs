//! Buchberger's algorithm with the Gebauer-Moeller criteria, normal forms and
//! Krull dimension from leading monomials.

use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder, OrderKind};
use super::polynomial::{Poly, PolyRing};

/// Caps on a Gröbner computation. Exceeding one aborts with an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceBounds {
    pub max_degree: u32,
    pub max_pairs: usize,
}

impl Default for ResourceBounds {
    fn default() -> Self {
        ResourceBounds {
            max_degree: 30,
            max_pairs: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("S-pair of degree {0} exceeds the degree bound")]
    DegreeBound(u32),
    #[error("more than {0} S-pairs processed")]
    PairBound(usize),
    #[error("interrupted")]
    Interrupted,
    #[error("the ideal is the whole ring")]
    UnitIdeal,
}

impl GroebnerError {
    /// True for the resource-bound variants.
    pub fn is_bound(&self) -> bool {
        !matches!(self, GroebnerError::UnitIdeal)
    }
}

/// Never interrupts.
pub fn no_interrupt() -> bool {
    false
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a, F: Field> {
    ring: &'a PolyRing<F>,
    polys: Vec<Poly<F::Elem>>,
    masks: Vec<u64>,
    active: Vec<bool>,
}

impl<F: Field> Engine<'_, F> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].lm().expect("stored polynomials are nonzero")
    }

    fn reducers(&self) -> Vec<usize> {
        (0..self.polys.len()).filter(|&i| self.active[i]).collect()
    }

    fn s_poly(&self, i: usize, j: usize, lcm: &Monomial) -> Poly<F::Elem> {
        let r = self.ring;
        let f = r.field();
        let (a, b) = (&self.polys[i], &self.polys[j]);
        let ma = self.lm(i).quotient_of(lcm);
        let mb = self.lm(j).quotient_of(lcm);
        // Stored polynomials are monic.
        let left = r.mul_term(a, &f.one(), &ma);
        r.combine(&left, &f.neg(&f.one()), &mb, b)
    }

    /// Adds `h` (monic, nonzero) and updates the pair list.
    fn update(&mut self, pairs: &mut Vec<Pair>, h: Poly<F::Elem>) {
        let hi = self.polys.len();
        let hm = h.lm().unwrap().clone();
        self.masks.push(hm.support_mask());
        self.polys.push(h);
        self.active.push(true);

        let mut c: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: self.lm(g).lcm(&hm),
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while !c.is_empty() {
            let p = c.remove(0);
            let coprime = self.lm(p.i).coprime(&hm);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|p| !self.lm(p.i).coprime(&hm))
            .collect();
        pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && self.lm(p.i).lcm(&hm) != p.lcm
                && self.lm(p.j).lcm(&hm) != p.lcm)
        });
        pairs.extend(e);
        for g in 0..hi {
            if self.active[g] && hm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }
}

/// Remainder of `p` after full reduction by `basis` (zero polynomials in the
/// basis are ignored).
pub fn normal_form<F: Field>(
    ring: &PolyRing<F>,
    p: &Poly<F::Elem>,
    basis: &[Poly<F::Elem>],
) -> Poly<F::Elem> {
    let refs: Vec<&Poly<F::Elem>> = basis.iter().filter(|g| !g.is_zero()).collect();
    nf_refs(ring, p, &refs)
}

fn nf_refs<F: Field>(
    ring: &PolyRing<F>,
    p: &Poly<F::Elem>,
    basis: &[&Poly<F::Elem>],
) -> Poly<F::Elem> {
    let f = ring.field();
    let masks: Vec<u64> = basis.iter().map(|g| g.lm().unwrap().support_mask()).collect();
    let inv_lc: Vec<F::Elem> = basis.iter().map(|g| f.inv(g.lc().unwrap())).collect();
    let mut rest = p.clone();
    let mut done: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((m, c)) = rest.terms().first() {
        let mm = m.support_mask();
        let hit = basis
            .iter()
            .enumerate()
            .find(|(k, g)| masks[*k] & !mm == 0 && g.lm().unwrap().divides(m));
        match hit {
            Some((k, g)) => {
                let q = g.lm().unwrap().quotient_of(m);
                let coef = f.neg(&f.mul(c, &inv_lc[k]));
                rest = ring.combine(&rest, &coef, &q, g);
            }
            None => {
                let mut terms = rest.terms().to_vec();
                done.push(terms.remove(0));
                rest = ring.from_terms(terms);
            }
        }
    }
    ring.from_terms(done)
}

/// Division with quotients: returns `(q, r)` with `p = sum q_i * d_i + r`.
pub fn divide<F: Field>(
    ring: &PolyRing<F>,
    p: &Poly<F::Elem>,
    divisors: &[Poly<F::Elem>],
) -> (Vec<Poly<F::Elem>>, Poly<F::Elem>) {
    let f = ring.field();
    let mut quotients: Vec<Poly<F::Elem>> = divisors.iter().map(|_| ring.zero()).collect();
    let mut rest = p.clone();
    let mut rem = ring.zero();
    while let Some((m, c)) = rest.terms().first().cloned() {
        let hit = divisors
            .iter()
            .position(|g| g.lm().is_some_and(|l| l.divides(&m)));
        match hit {
            Some(k) => {
                let g = &divisors[k];
                let q = g.lm().unwrap().quotient_of(&m);
                let coef = f.mul(&c, &f.inv(g.lc().unwrap()));
                quotients[k] = ring.add(&quotients[k], &ring.term(q.clone(), coef.clone()));
                rest = ring.combine(&rest, &f.neg(&coef), &q, g);
            }
            None => {
                let lead = ring.term(m, c);
                rem = ring.add(&rem, &lead);
                rest = ring.sub(&rest, &lead);
            }
        }
    }
    (quotients, rem)
}

/// The reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// increasing leading monomial. The zero ideal gives an empty basis.
pub fn groebner<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Poly<F::Elem>],
    bounds: &ResourceBounds,
    interrupt: &dyn Fn() -> bool,
) -> Result<Vec<Poly<F::Elem>>, GroebnerError> {
    let mut inputs: Vec<Poly<F::Elem>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ring.monic(g))
        .collect();
    inputs.sort_by(|a, b| ring.cmp(a.lm().unwrap(), b.lm().unwrap()));
    inputs.dedup();

    let mut eng = Engine {
        ring,
        polys: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
    };
    let mut pairs: Vec<Pair> = Vec::new();
    for g in inputs {
        let refs: Vec<&Poly<F::Elem>> = eng.reducers().into_iter().map(|i| &eng.polys[i]).collect();
        let h = nf_refs(ring, &g, &refs);
        if h.is_zero() {
            continue;
        }
        if h.lm().unwrap().is_one() {
            return Ok(alloc::vec![ring.one()]);
        }
        let h = ring.monic(&h);
        eng.update(&mut pairs, h);
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        if interrupt() {
            return Err(GroebnerError::Interrupted);
        }
        processed += 1;
        if processed > bounds.max_pairs {
            return Err(GroebnerError::PairBound(bounds.max_pairs));
        }
        // Normal selection: smallest lcm, then the oldest pair.
        let mut best = 0;
        for k in 1..pairs.len() {
            let ord = ring
                .cmp(&pairs[k].lcm, &pairs[best].lcm)
                .then((pairs[k].j, pairs[k].i).cmp(&(pairs[best].j, pairs[best].i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        if pair.lcm.degree() > bounds.max_degree {
            return Err(GroebnerError::DegreeBound(pair.lcm.degree()));
        }
        let s = eng.s_poly(pair.i, pair.j, &pair.lcm);
        let refs: Vec<&Poly<F::Elem>> = eng.reducers().into_iter().map(|i| &eng.polys[i]).collect();
        let h = nf_refs(ring, &s, &refs);
        if h.is_zero() {
            continue;
        }
        if h.lm().unwrap().is_one() {
            return Ok(alloc::vec![ring.one()]);
        }
        let h = ring.monic(&h);
        eng.update(&mut pairs, h);
    }

    let active: Vec<Poly<F::Elem>> = eng
        .reducers()
        .into_iter()
        .map(|i| eng.polys[i].clone())
        .collect();
    Ok(reduce_basis(ring, active))
}

/// Minimalizes and inter-reduces a Gröbner basis.
fn reduce_basis<F: Field>(ring: &PolyRing<F>, mut g: Vec<Poly<F::Elem>>) -> Vec<Poly<F::Elem>> {
    g.sort_by(|a, b| ring.cmp(a.lm().unwrap(), b.lm().unwrap()));
    let mut minimal: Vec<Poly<F::Elem>> = Vec::new();
    for p in g {
        let lm = p.lm().unwrap();
        if !minimal.iter().any(|q| q.lm().unwrap().divides(lm)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Poly<F::Elem>> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p)
            .collect();
        let lead = ring.term(
            minimal[k].lm().unwrap().clone(),
            minimal[k].lc().unwrap().clone(),
        );
        let tail = ring.sub(&minimal[k], &lead);
        let reduced = ring.add(&lead, &nf_refs(ring, &tail, &others));
        out.push(ring.monic(&reduced));
    }
    out.sort_by(|a, b| ring.cmp(a.lm().unwrap(), b.lm().unwrap()));
    out
}

/// `groebner` with default bounds and no interrupt.
pub fn groebner_basis<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Poly<F::Elem>],
) -> Result<Vec<Poly<F::Elem>>, GroebnerError> {
    groebner(ring, gens, &ResourceBounds::default(), &no_interrupt)
}

/// Whether every S-polynomial of `basis` reduces to zero.
pub fn is_groebner<F: Field>(ring: &PolyRing<F>, basis: &[Poly<F::Elem>]) -> bool {
    let f = ring.field();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (&basis[i], &basis[j]);
            let (la, lb) = (a.lm().unwrap(), b.lm().unwrap());
            let l = la.lcm(lb);
            let left = ring.mul_term(a, &f.inv(a.lc().unwrap()), &la.quotient_of(&l));
            let right = ring.mul_term(b, &f.inv(b.lc().unwrap()), &lb.quotient_of(&l));
            if !normal_form(ring, &ring.sub(&left, &right), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Size of a smallest set of variables meeting every support in `supports`
/// (each a bit mask).
fn min_hitting_set(supports: &[u64]) -> usize {
    fn rec(supports: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        let open = supports.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
        match open {
            None => *best = size,
            Some(&s) => {
                let mut bits = s;
                while bits != 0 {
                    let v = bits & bits.wrapping_neg();
                    rec(supports, chosen | v, size + 1, best);
                    bits &= bits - 1;
                }
            }
        }
    }
    let mut best = usize::MAX;
    rec(supports, 0, 0, &mut best);
    best
}

/// Krull dimension of `F[x]/(gens)`: the largest variable set containing no
/// leading-monomial support of a degrevlex Gröbner basis.
pub fn krull_dimension<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Poly<F::Elem>],
    bounds: &ResourceBounds,
    interrupt: &dyn Fn() -> bool,
) -> Result<usize, GroebnerError> {
    let n = ring.nvars();
    assert!(n <= 64, "dimension search supports at most 64 variables");
    let drl = ring.with_order(MonomialOrder::new(OrderKind::DegRevLex, n));
    let gens: Vec<Poly<F::Elem>> = gens.iter().map(|g| drl.convert(g)).collect();
    let basis = groebner(&drl, &gens, bounds, interrupt)?;
    dimension_from_basis(&basis, n)
}

/// Dimension read off the leading monomials of a Gröbner basis.
pub fn dimension_from_basis<E>(basis: &[Poly<E>], nvars: usize) -> Result<usize, GroebnerError> {
    let mut supports: Vec<u64> = Vec::new();
    for g in basis {
        let lm = g.lm().unwrap();
        if lm.is_one() {
            return Err(GroebnerError::UnitIdeal);
        }
        supports.push(lm.support_mask());
    }
    supports.sort_unstable();
    supports.dedup();
    let minimal: Vec<u64> = supports
        .iter()
        .copied()
        .filter(|&s| !supports.iter().any(|&t| t != s && t & !s == 0))
        .collect();
    Ok(nvars - min_hitting_set(&minimal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{PrimeField, Rationals};
    use alloc::string::{String, ToString};
    use alloc::vec;
    use alloc::vec::Vec;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| alloc::format!("x{i}")).collect()
    }

    fn q_ring(n: usize) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, MonomialOrder::new(OrderKind::DegRevLex, n), names(n))
    }

    fn p_ring(n: usize) -> PolyRing<PrimeField> {
        PolyRing::new(
            PrimeField::new(32003).unwrap(),
            MonomialOrder::new(OrderKind::DegRevLex, n),
            names(n),
        )
    }

    #[test]
    fn single_generator_is_made_monic() {
        let r = q_ring(2);
        let g = r.scale(&r.mul(&r.var(0), &r.var(1)), &r.field().from_i64(3));
        let b = groebner_basis(&r, &[g]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(r.to_text(&b[0]), "+1*x0*x1");
    }

    #[test]
    fn variables_are_their_own_basis() {
        let r = p_ring(4);
        let gens: Vec<_> = (0..4).rev().map(|v| r.var(v)).collect();
        let b = groebner_basis(&r, &gens).unwrap();
        let texts: Vec<_> = b.iter().map(|p| r.to_text(p)).collect();
        assert_eq!(texts, vec!["+1*x3", "+1*x2", "+1*x1", "+1*x0"]);
        assert_eq!(dimension_from_basis(&b, 4), Ok(0));
    }

    #[test]
    fn twisted_cubic() {
        // 2-minors of [[x0,x1,x2],[x1,x2,x3]]: dimension 2 in 4 variables.
        let r = q_ring(4);
        let x = |i| r.var(i);
        let det = |a: usize, b: usize, c: usize, d: usize| r.sub(&r.mul(&x(a), &x(d)), &r.mul(&x(b), &x(c)));
        let gens = vec![det(0, 1, 1, 2), det(0, 2, 1, 3), det(1, 2, 2, 3)];
        let b = groebner_basis(&r, &gens).unwrap();
        assert!(is_groebner(&r, &b));
        assert_eq!(b.len(), 3);
        for g in &gens {
            assert!(normal_form(&r, g, &b).is_zero());
        }
        assert_eq!(krull_dimension(&r, &gens, &ResourceBounds::default(), &no_interrupt), Ok(2));
        let not_in = r.mul(&x(0), &x(3));
        assert!(!normal_form(&r, &not_in, &b).is_zero());
        assert_eq!(normal_form(&r, &r.one(), &b), r.one());
    }

    #[test]
    fn unit_ideal_and_zero_ideal() {
        let r = q_ring(2);
        let g = vec![r.var(0), r.sub(&r.var(0), &r.one())];
        assert_eq!(groebner_basis(&r, &g).unwrap(), vec![r.one()]);
        assert_eq!(
            krull_dimension(&r, &g, &ResourceBounds::default(), &no_interrupt),
            Err(GroebnerError::UnitIdeal)
        );
        assert_eq!(krull_dimension(&r, &[], &ResourceBounds::default(), &no_interrupt), Ok(2));
    }

    #[test]
    fn division_bookkeeping() {
        let r = q_ring(3);
        let x = |i| r.var(i);
        let g = vec![r.sub(&r.mul(&x(0), &x(1)), &x(2)), r.sub(&r.mul(&x(1), &x(1)), &x(0))];
        let p = r.add(&r.mul(&r.mul(&x(0), &x(1)), &x(1)), &x(2));
        let (q, rem) = divide(&r, &p, &g);
        let mut back = rem.clone();
        for (qi, gi) in q.iter().zip(&g) {
            back = r.add(&back, &r.mul(qi, gi));
        }
        assert_eq!(back, p);
    }

    #[test]
    fn bounds_are_reported() {
        let r = q_ring(3);
        let x = |i| r.var(i);
        let gens = vec![
            r.sub(&r.mul(&x(0), &x(1)), &r.mul(&x(2), &x(2))),
            r.sub(&r.mul(&x(1), &x(2)), &r.mul(&x(0), &x(0))),
        ];
        let tight = ResourceBounds {
            max_degree: 2,
            max_pairs: 100,
        };
        assert!(matches!(
            groebner(&r, &gens, &tight, &no_interrupt),
            Err(GroebnerError::DegreeBound(_))
        ));
        assert_eq!(
            groebner(&r, &gens, &ResourceBounds::default(), &|| true),
            Err(GroebnerError::Interrupted)
        );
    }

    #[test]
    fn lex_elimination() {
        // x0 - x1^2, x1 - x2 under lex gives x0 - x2^2.
        let r = PolyRing::new(Rationals, MonomialOrder::new(OrderKind::Lex, 3), names(3));
        let x = |i| r.var(i);
        let gens = vec![r.sub(&x(0), &r.mul(&x(1), &x(1))), r.sub(&x(1), &x(2))];
        let b = groebner_basis(&r, &gens).unwrap();
        let texts: Vec<_> = b.iter().map(|p| r.to_text(p)).collect();
        assert_eq!(texts, vec!["+1*x1 -1*x2".to_string(), "+1*x0 -1*x2^2".to_string()]);
    }

    #[test]
    fn hitting_sets() {
        assert_eq!(min_hitting_set(&[]), 0);
        assert_eq!(min_hitting_set(&[0b011, 0b110]), 1);
        assert_eq!(min_hitting_set(&[0b001, 0b010, 0b100]), 3);
    }
}
