//! Per-step verification of a descent step against the Gröbner oracle.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::field::{Field, PrimeField, Rationals};
use super::groebner::{dimension_from_basis, groebner, normal_form, GroebnerError, ResourceBounds};
use super::minors::CellRing;
use super::polynomial::Poly;
use crate::biliaison::{lemma_local_data, BiliaisonStep, LocalizationMap};
use crate::ideal::{Minor, MixedLadderIdeal};
use crate::ladder::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u32),
}

impl FieldSpec {
    pub fn name(&self) -> String {
        match self {
            FieldSpec::Q => String::from("Q"),
            FieldSpec::Fp(p) => format!("Fp:{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    /// A polynomial showing the failure, in canonical text.
    pub witness: Option<String>,
    /// Human-readable context: the offending minor, or why it was skipped.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub step: usize,
    pub field: String,
    pub checks: Vec<CheckResult>,
    pub bounds_hit: Vec<String>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn any_skipped(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Skipped)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_NAMES: [&str; 9] = [
    "inclusion_J_in_I",
    "inclusion_J_in_Iprime",
    "congruence_identity",
    "ideal_equality_D1I_D2Iprime",
    "localization_phi",
    "localization_psi_phi_identity",
    "height_oracle_I",
    "height_oracle_Iprime",
    "height_oracle_J",
];

fn pass(name: &'static str) -> CheckResult {
    CheckResult {
        name,
        status: CheckStatus::Pass,
        witness: None,
        detail: None,
    }
}

fn fail(name: &'static str, witness: Option<String>, detail: String) -> CheckResult {
    CheckResult {
        name,
        status: CheckStatus::Fail,
        witness,
        detail: Some(detail),
    }
}

fn skipped(name: &'static str, err: &GroebnerError) -> CheckResult {
    CheckResult {
        name,
        status: CheckStatus::Skipped,
        witness: None,
        detail: Some(format!("{err}")),
    }
}

type Basis<F> = Result<Vec<Poly<<F as Field>::Elem>>, GroebnerError>;

struct Ctx<'a, F: Field> {
    cr: CellRing<F>,
    bounds: &'a ResourceBounds,
    interrupt: &'a dyn Fn() -> bool,
    bounds_hit: Vec<String>,
}

impl<F: Field> Ctx<'_, F> {
    fn gens(&self, ideal: &MixedLadderIdeal) -> Vec<(Minor, Poly<F::Elem>)> {
        ideal
            .enumerate_generators()
            .into_iter()
            .map(|m| {
                let p = self.cr.expand_minor(&m).expect("generator cells lie in the source ring");
                (m, p)
            })
            .collect()
    }

    fn basis(&mut self, gens: &[Poly<F::Elem>]) -> Basis<F> {
        let r = groebner(self.cr.ring(), gens, self.bounds, self.interrupt);
        if let Err(e) = &r {
            let s = format!("{e}");
            if !self.bounds_hit.contains(&s) {
                self.bounds_hit.push(s);
            }
        }
        r
    }

    fn text(&self, p: &Poly<F::Elem>) -> String {
        self.cr.ring().to_text(p)
    }

    /// Every listed polynomial reduces to zero modulo `basis`.
    fn inclusion(
        &self,
        name: &'static str,
        elems: &[(String, Poly<F::Elem>)],
        basis: &Basis<F>,
    ) -> CheckResult {
        let basis = match basis {
            Ok(b) => b,
            Err(e) => return skipped(name, e),
        };
        for (label, p) in elems {
            let r = normal_form(self.cr.ring(), p, basis);
            if !r.is_zero() {
                return fail(
                    name,
                    Some(self.text(p)),
                    format!("{label} has nonzero remainder {}", self.text(&r)),
                );
            }
        }
        pass(name)
    }

    fn height(&self, name: &'static str, basis: &Basis<F>, expected: usize) -> CheckResult {
        let basis = match basis {
            Ok(b) => b,
            Err(e) => return skipped(name, e),
        };
        let n = self.cr.ring().nvars();
        match dimension_from_basis(basis, n) {
            Ok(dim) if n - dim == expected => pass(name),
            Ok(dim) => fail(
                name,
                Some(format!("height {}", n - dim)),
                format!("oracle height {} but combinatorial height {expected}", n - dim),
            ),
            Err(e) => fail(name, None, format!("{e}")),
        }
    }
}

/// Orients a minor so that row `v` and column `w` are both used, returning
/// the remaining rows and columns; `None` if it does not use both.
fn split_pivot(m: &Minor, v: usize, w: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let strip = |xs: &[usize], x: usize| xs.iter().copied().filter(|&y| y != x).collect::<Vec<_>>();
    if m.rows().contains(&v) && m.cols().contains(&w) {
        Some((strip(m.rows(), v), strip(m.cols(), w)))
    } else if m.cols().contains(&v) && m.rows().contains(&w) {
        Some((strip(m.cols(), v), strip(m.rows(), w)))
    } else {
        None
    }
}

/// Images of every variable under the map back (`x - x_row * x_col * y` on
/// rule cells) and under its inverse, in the ring with `y`.
fn localization_images<F: Field>(
    cr: &CellRing<F>,
    map: &LocalizationMap,
) -> (Vec<Poly<F::Elem>>, Vec<Poly<F::Elem>>) {
    let r = cr.ring();
    let nv = r.nvars();
    let y = cr.y().expect("ring carries y");
    let mut psi: Vec<Poly<F::Elem>> = (0..nv).map(|v| r.var(v)).collect();
    for rule in &map.backward_rules {
        let v = cr.var_of(rule.cell).unwrap();
        let prod = r.mul(&r.mul(&cr.x(rule.row_partner).unwrap(), &cr.x(rule.col_partner).unwrap()), &y);
        psi[v] = r.sub(&r.var(v), &prod);
    }
    let mut phi: Vec<Option<Poly<F::Elem>>> = alloc::vec![None; cr.num_cells()];
    fn resolve<F: Field>(
        cell: Cell,
        cr: &CellRing<F>,
        map: &LocalizationMap,
        phi: &mut Vec<Option<Poly<F::Elem>>>,
        depth: usize,
    ) -> Poly<F::Elem> {
        let r = cr.ring();
        let v = cr.var_of(cell).unwrap();
        if let Some(p) = &phi[v] {
            return p.clone();
        }
        assert!(depth < 8, "partner chain does not terminate");
        let img = match map.rule_for(cell) {
            None => r.var(v),
            Some(rule) => {
                let a = resolve(rule.row_partner, cr, map, phi, depth + 1);
                let b = resolve(rule.col_partner, cr, map, phi, depth + 1);
                let y = cr.y().unwrap();
                r.add(&r.var(v), &r.mul(&r.mul(&a, &b), &y))
            }
        };
        phi[v] = Some(img.clone());
        img
    }
    for &cell in cr.cells() {
        resolve(cell, cr, map, &mut phi, 0);
    }
    let mut phi: Vec<Poly<F::Elem>> = phi.into_iter().map(|p| p.unwrap()).collect();
    phi.push(y);
    (psi, phi)
}

fn verify_with<F: Field>(
    field: F,
    step: &BiliaisonStep,
    step_id: usize,
    bounds: &ResourceBounds,
    interrupt: &dyn Fn() -> bool,
) -> VerificationReport {
    let mut ctx = Ctx {
        cr: CellRing::new(field.clone(), step.source.ladder().cells(), true),
        bounds,
        interrupt,
        bounds_hit: Vec::new(),
    };
    let k = step.pivot_k;
    let pivot = step.pivot_point();
    let (v, w) = (pivot.row, pivot.col);

    let gi = ctx.gens(&step.source);
    let gt = ctx.gens(&step.target);
    let gj = ctx.gens(&step.link);
    let polys = |g: &[(Minor, Poly<F::Elem>)]| g.iter().map(|x| x.1.clone()).collect::<Vec<_>>();
    let labelled = |g: &[(Minor, Poly<F::Elem>)]| {
        g.iter()
            .map(|(m, p)| (format!("minor {m}"), p.clone()))
            .collect::<Vec<_>>()
    };
    let bi = ctx.basis(&polys(&gi));
    let bt = ctx.basis(&polys(&gt));
    let bj = ctx.basis(&polys(&gj));

    let mut checks = Vec::new();
    checks.push(ctx.inclusion("inclusion_J_in_I", &labelled(&gj), &bi));
    checks.push(ctx.inclusion("inclusion_J_in_Iprime", &labelled(&gj), &bt));

    let r = ctx.cr.ring().clone();
    let f_num = ctx.cr.expand_minor(&step.f_numerator).expect("f lies in the ladder");
    let f_den = ctx.cr.expand_minor(&step.f_denominator).expect("f lies in the ladder");

    // Congruence: f_num * [a,v; b,w] - f_den * [a; b] lies in the link ideal.
    let mut congruence = Vec::new();
    for (m, _) in &gi {
        if let Some((a, b)) = split_pivot(m, v, w) {
            let mut rows = a.clone();
            rows.push(v);
            let mut cols = b.clone();
            cols.push(w);
            let big = ctx.cr.det(&rows, &cols).expect("generator cells lie in the ring");
            let small = if a.is_empty() {
                r.one()
            } else {
                ctx.cr.det(&a, &b).expect("generator cells lie in the ring")
            };
            let e = r.sub(&r.mul(&f_num, &big), &r.mul(&f_den, &small));
            congruence.push((format!("congruence for {m}"), e));
        }
    }
    checks.push(ctx.inclusion("congruence_identity", &congruence, &bj));

    let mut d1: Vec<Poly<F::Elem>> = gi.iter().map(|(_, p)| r.mul(&f_num, p)).collect();
    let mut d2: Vec<Poly<F::Elem>> = gt.iter().map(|(_, p)| r.mul(&f_den, p)).collect();
    d1.extend(polys(&gj));
    d2.extend(polys(&gj));
    let b1 = ctx.basis(&d1);
    let b2 = ctx.basis(&d2);
    let lab = |ps: &[Poly<F::Elem>], tag: &str| {
        ps.iter()
            .enumerate()
            .map(|(i, p)| (format!("{tag} generator {i}"), p.clone()))
            .collect::<Vec<_>>()
    };
    let fwd = ctx.inclusion("ideal_equality_D1I_D2Iprime", &lab(&d2, "f_den*I'+J"), &b1);
    let eq = if fwd.status == CheckStatus::Pass {
        ctx.inclusion("ideal_equality_D1I_D2Iprime", &lab(&d1, "f_num*I+J"), &b2)
    } else {
        fwd
    };
    checks.push(eq);

    match lemma_local_data(&step.source, k) {
        Ok(map) => {
            let (psi, phi) = localization_images(&ctx.cr, &map);
            let x_vw = ctx.cr.x(pivot).unwrap();
            let y = ctx.cr.y().unwrap();
            let mut ext: Vec<Poly<F::Elem>> = polys(&gt);
            ext.push(r.sub(&r.mul(&y, &x_vw), &r.one()));
            let be = ctx.basis(&ext);
            let clear = r.pow(&x_vw, step.pivot_size() as u32);
            let images: Vec<(String, Poly<F::Elem>)> = gi
                .iter()
                .map(|(m, p)| (format!("image of {m}"), r.mul(&clear, &r.substitute(p, &phi))))
                .collect();
            checks.push(ctx.inclusion("localization_phi", &images, &be));

            let mut ident = pass("localization_psi_phi_identity");
            for v in 0..r.nvars() {
                let back = r.substitute(&phi[v], &psi);
                if back != r.var(v) {
                    ident = fail(
                        "localization_psi_phi_identity",
                        Some(ctx.text(&r.sub(&back, &r.var(v)))),
                        format!("variable {} is not fixed", r.names()[v]),
                    );
                    break;
                }
            }
            checks.push(ident);
        }
        Err(e) => {
            for name in ["localization_phi", "localization_psi_phi_identity"] {
                checks.push(fail(name, None, format!("{e}")));
            }
        }
    }

    checks.push(ctx.height("height_oracle_I", &bi, step.heights[0]));
    checks.push(ctx.height("height_oracle_Iprime", &bt, step.heights[1]));
    checks.push(ctx.height("height_oracle_J", &bj, step.heights[2]));

    VerificationReport {
        step: step_id,
        field: field.name(),
        checks,
        bounds_hit: ctx.bounds_hit,
    }
}

/// Runs every check on one step. Checks whose Gröbner computation exceeds
/// the bounds are reported as skipped.
pub fn verify_step(
    step: &BiliaisonStep,
    step_id: usize,
    field: FieldSpec,
    bounds: &ResourceBounds,
    interrupt: &dyn Fn() -> bool,
) -> VerificationReport {
    match field {
        FieldSpec::Q => verify_with(Rationals, step, step_id, bounds, interrupt),
        FieldSpec::Fp(p) => {
            let f = PrimeField::new(p).expect("field characteristic must be a prime below 2^31");
            verify_with(f, step, step_id, bounds, interrupt)
        }
    }
}

/// Checks that pass over the prime field but fail over the rationals.
pub fn bad_prime_events(over_q: &VerificationReport, over_p: &VerificationReport) -> Vec<String> {
    over_p
        .checks
        .iter()
        .filter(|c| c.status == CheckStatus::Pass)
        .filter(|c| over_q.check(c.name).is_some_and(|q| q.status == CheckStatus::Fail))
        .map(|c| format!("{} passes over {} but fails over Q", c.name, over_p.field))
        .collect()
}

fn height_with<F: Field>(
    field: F,
    ideal: &MixedLadderIdeal,
    bounds: &ResourceBounds,
    interrupt: &dyn Fn() -> bool,
) -> Result<usize, GroebnerError> {
    let cr = CellRing::new(field, ideal.ladder().cells(), false);
    let gens: Vec<Poly<F::Elem>> = ideal
        .enumerate_generators()
        .iter()
        .map(|m| cr.expand_minor(m).unwrap())
        .collect();
    let basis = groebner(cr.ring(), &gens, bounds, interrupt)?;
    let n = cr.num_cells();
    Ok(n - dimension_from_basis(&basis, n)?)
}

/// Height of the ideal in the polynomial ring of its ladder, from the
/// Gröbner oracle.
pub fn oracle_height(
    ideal: &MixedLadderIdeal,
    field: FieldSpec,
    bounds: &ResourceBounds,
    interrupt: &dyn Fn() -> bool,
) -> Result<usize, GroebnerError> {
    match field {
        FieldSpec::Q => height_with(Rationals, ideal, bounds, interrupt),
        FieldSpec::Fp(p) => height_with(PrimeField::new(p).expect("prime"), ideal, bounds, interrupt),
    }
}

fn equal_with<F: Field>(
    field: F,
    a: &BTreeSet<Minor>,
    b: &BTreeSet<Minor>,
    bounds: &ResourceBounds,
    interrupt: &dyn Fn() -> bool,
) -> Result<bool, GroebnerError> {
    let cells: BTreeSet<Cell> = a.iter().chain(b).flat_map(|m| m.cells()).collect();
    let cr = CellRing::new(field, cells, false);
    let ex = |s: &BTreeSet<Minor>| s.iter().map(|m| cr.expand_minor(m).unwrap()).collect::<Vec<_>>();
    let (pa, pb) = (ex(a), ex(b));
    let ba = groebner(cr.ring(), &pa, bounds, interrupt)?;
    let bb = groebner(cr.ring(), &pb, bounds, interrupt)?;
    let inside = |ps: &[Poly<F::Elem>], basis: &[Poly<F::Elem>]| {
        ps.iter().all(|p| normal_form(cr.ring(), p, basis).is_zero())
    };
    Ok(inside(&pa, &bb) && inside(&pb, &ba))
}

/// Whether two sets of minors generate the same ideal.
pub fn same_ideal(
    a: &BTreeSet<Minor>,
    b: &BTreeSet<Minor>,
    field: FieldSpec,
    bounds: &ResourceBounds,
    interrupt: &dyn Fn() -> bool,
) -> Result<bool, GroebnerError> {
    match field {
        FieldSpec::Q => equal_with(Rationals, a, b, bounds, interrupt),
        FieldSpec::Fp(p) => equal_with(PrimeField::new(p).expect("prime"), a, b, bounds, interrupt),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biliaison::descend_step;
    use crate::ideal::mk_ideal;
    use crate::ladder::{validate_ladder, Ladder};
    use crate::poly::groebner::no_interrupt;

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
    fn veronese_step_passes_everything() {
        let i = mk_ideal(triangle(3), &[Cell::new(3, 3)], &[2]).unwrap();
        let step = descend_step(&i).unwrap();
        for field in [FieldSpec::Fp(32003), FieldSpec::Q] {
            let rep = verify_step(&step, 0, field, &ResourceBounds::default(), &no_interrupt);
            assert_eq!(rep.checks.len(), 9);
            for c in &rep.checks {
                assert_eq!(c.status, CheckStatus::Pass, "{} {:?}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn classical_oracle_height() {
        let i = mk_ideal(triangle(3), &[Cell::new(3, 3)], &[2]).unwrap();
        let h = oracle_height(&i, FieldSpec::Fp(32003), &ResourceBounds::default(), &no_interrupt);
        assert_eq!(h, Ok(3));
    }
}
