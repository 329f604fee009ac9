//! Sparse polynomials over a [`Field`], with terms kept sorted by the ring's
//! monomial order (largest first).

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E> Poly<E> {
    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lc(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Whether every term has the same degree.
    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].0.degree() == w[1].0.degree())
    }
}

/// A polynomial ring `F[x_0, ..., x_{n-1}]` with a fixed order and names.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    order: MonomialOrder,
    names: Vec<String>,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, order: MonomialOrder, names: Vec<String>) -> Self {
        assert_eq!(order.priority().len(), names.len(), "order and names disagree");
        PolyRing {
            field,
            order,
            names,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// The same variables under another order; polynomials must be moved
    /// with [`PolyRing::convert`].
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing::new(self.field.clone(), order, self.names.clone())
    }

    pub fn convert(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.from_terms(p.terms.clone())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { terms: Vec::new() }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn var(&self, v: usize) -> Poly<F::Elem> {
        self.term(Monomial::var(self.nvars(), v), self.field.one())
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            self.zero()
        } else {
            Poly {
                terms: alloc::vec![(m, c)],
            }
        }
    }

    /// Sorts, merges equal monomials and drops zero coefficients.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Poly<F::Elem> {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = self.field.add(&last.1, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.1));
        Poly { terms: out }
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.combine(a, &self.field.one(), &Monomial::one(self.nvars()), b)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let minus = self.field.neg(&self.field.one());
        self.combine(a, &minus, &Monomial::one(self.nvars()), b)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), self.field.mul(x, c)))
                .collect(),
        }
    }

    /// `a * c * m`.
    pub fn mul_term(&self, a: &Poly<F::Elem>, c: &F::Elem, m: &Monomial) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(x, d)| (x.mul(m), self.field.mul(d, c)))
                .collect(),
        }
    }

    /// `a + c * m * b`, merging the sorted term lists.
    pub fn combine(
        &self,
        a: &Poly<F::Elem>,
        c: &F::Elem,
        m: &Monomial,
        b: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut ia = a.terms.iter().peekable();
        let mut ib = b
            .terms
            .iter()
            .map(|(x, d)| (x.mul(m), f.mul(d, c)))
            .peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(ia.next().unwrap().clone()),
                (None, Some(_)) => out.push(ib.next().unwrap()),
                (Some(ta), Some(tb)) => match self.cmp(&ta.0, &tb.0) {
                    Ordering::Greater => out.push(ia.next().unwrap().clone()),
                    Ordering::Less => out.push(ib.next().unwrap()),
                    Ordering::Equal => {
                        let ta = ia.next().unwrap();
                        let tb = ib.next().unwrap();
                        let s = f.add(&ta.1, &tb.1);
                        if !f.is_zero(&s) {
                            out.push((tb.0, s));
                        }
                    }
                },
            }
        }
        Poly { terms: out }
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut acc = self.zero();
        for (m, c) in &small.terms {
            acc = self.combine(&acc, c, m, big);
        }
        acc
    }

    pub fn pow(&self, a: &Poly<F::Elem>, e: u32) -> Poly<F::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.lc() {
            None => self.zero(),
            Some(c) if self.field.is_one(c) => a.clone(),
            Some(c) => self.scale(a, &self.field.inv(c)),
        }
    }

    /// Substitutes `images[v]` for variable `v`.
    pub fn substitute(&self, a: &Poly<F::Elem>, images: &[Poly<F::Elem>]) -> Poly<F::Elem> {
        assert_eq!(images.len(), self.nvars());
        let mut acc = self.zero();
        for (m, c) in &a.terms {
            let mut t = self.constant(c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = self.mul(&t, &self.pow(&images[v], e as u32));
                }
            }
            acc = self.add(&acc, &t);
        }
        acc
    }

    /// Canonical text: terms in decreasing order, each `c*name^e*...` with an
    /// explicit sign; `0` for the zero polynomial.
    pub fn to_text(&self, a: &Poly<F::Elem>) -> String {
        use core::fmt::Write;
        if a.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (idx, (m, c)) in a.terms.iter().enumerate() {
            if idx > 0 {
                s.push(' ');
            }
            s.push_str(&self.field.signed_text(c));
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                s.push('*');
                s.push_str(&self.names[v]);
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            }
        }
        s
    }
}
