//! Fibred actions, actions by symmetries and partial actions of an inverse
//! category on a poset, with their axiom checks and conversions.
//!
//! A fibred action is given pointwise: a moment map sends each point `x` to
//! an object `oρ(x)` and an idempotent `iρ(x)` at it, and `θ_s(x)` is defined
//! when `oρ(x) = od(s)` and `iρ(x) ≤ id(s)` (or `iρ(x) = id(s)` for strict
//! actions). Actions by symmetries and partial actions are given per
//! morphism, as order isomorphisms `θ_s: D_{s°} → D_s` between ideals.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::category::{Functor, InverseCategory, MorId, ObjectId, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::poset::{compose_partial_isos, Iic, OrderIdeal, PartialOrderIso, Poset};

/// The moment map `ρ = (oρ, iρ)`, stored per point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentMap {
    pub object: Vec<ObjectId>,
    pub idempotent: Vec<MorId>,
}

#[derive(Clone, Debug)]
pub struct FibredAction {
    pub cat: Arc<InverseCategory>,
    pub poset: Poset,
    pub moment: MomentMap,
    /// `θ_s(x)`, keyed by `(s, x)`.
    pub theta: HashMap<(MorId, usize), usize>,
    pub strict: bool,
}

impl FibredAction {
    /// Fills `θ` by evaluating `f` on every pair of the domain.
    pub fn from_fn(
        cat: Arc<InverseCategory>,
        poset: Poset,
        moment: MomentMap,
        strict: bool,
        f: impl Fn(MorId, usize) -> usize,
    ) -> Self {
        let mut a = FibredAction {
            cat,
            poset,
            moment,
            theta: HashMap::new(),
            strict,
        };
        for s in a.cat.morphisms() {
            for x in a.poset.points() {
                if a.in_domain(s, x) {
                    a.theta.insert((s, x), f(s, x));
                }
            }
        }
        a
    }

    /// The domain predicate recomputed from the moment map.
    pub fn in_domain(&self, s: MorId, x: usize) -> bool {
        let ids = self.cat.inner_source(s);
        let ix = self.moment.idempotent[x];
        self.moment.object[x] == self.cat.src(s)
            && if self.strict {
                ix == ids
            } else {
                self.cat.leq(ix, ids)
            }
    }

    pub fn apply(&self, s: MorId, x: usize) -> Option<usize> {
        self.theta.get(&(s, x)).copied()
    }

    /// Points of `s`'s domain, in point order.
    pub fn domain_of(&self, s: MorId) -> Vec<usize> {
        self.poset.points().filter(|&x| self.apply(s, x).is_some()).collect()
    }

    /// The action of an inverse category on itself by left multiplication,
    /// over its natural order.
    pub fn self_action(cat: Arc<InverseCategory>) -> Self {
        let names = cat.morphisms().map(|s| cat.name(s).to_string()).collect();
        let order = cat.clone();
        let poset = Poset::from_rule(names, move |x, y| order.leq(MorId(x), MorId(y)))
            .expect("morphism names are distinct");
        let moment = MomentMap {
            object: cat.morphisms().map(|x| cat.tgt(x)).collect(),
            idempotent: cat.morphisms().map(|x| cat.inner_target(x)).collect(),
        };
        let c = cat.clone();
        Self::from_fn(cat, poset, moment, false, move |s, x| c.mul(s, MorId(x)).0)
    }

    /// The conjugation action `θ_s(e) = s e s°` on the idempotents.
    pub fn conjugation_action(cat: Arc<InverseCategory>) -> Self {
        let es = cat.idempotents();
        let names = es.iter().map(|&e| cat.name(e).to_string()).collect();
        let (order, list) = (cat.clone(), es.clone());
        let poset = Poset::from_rule(names, move |x, y| order.leq(list[x], list[y]))
            .expect("morphism names are distinct");
        let moment = MomentMap {
            object: es.iter().map(|&e| cat.src(e)).collect(),
            idempotent: es.clone(),
        };
        let c = cat.clone();
        Self::from_fn(cat, poset, moment, false, move |s, x| {
            let ses = c.mul(c.mul(s, es[x]), c.inv(s));
            es.iter().position(|&e| e == ses).expect("conjugate of an idempotent")
        })
    }
}

/// Collects violations, keeping one witness per rule unless verbose.
struct Collector {
    verbose: bool,
    seen: BTreeSet<&'static str>,
    out: Vec<Violation>,
}

impl Collector {
    fn new(verbose: bool) -> Self {
        Collector {
            verbose,
            seen: BTreeSet::new(),
            out: Vec::new(),
        }
    }

    fn push(&mut self, rule: &'static str, witnesses: Vec<String>) {
        if self.verbose || self.seen.insert(rule) {
            self.out.push(Violation::new(rule, witnesses));
        }
    }

    fn finish(self) -> ValidationReport {
        ValidationReport::from_violations(self.out)
    }
}

/// Checks the moment-map conditions, the domain of `θ`, the three action
/// axioms and monotonicity.
///
/// For strict actions the composition law is checked in the direction that
/// survives strictness: whenever `θ_s(θ_t(x))` is defined, `θ_{st}(x)` is
/// defined and equal.
pub fn validate_fibred(a: &FibredAction, verbose: bool) -> ValidationReport {
    let cat = &a.cat;
    let p = &a.poset;
    let mut c = Collector::new(verbose);
    let m = |s: MorId| cat.name(s).to_string();
    let pt = |x: usize| p.name(x).to_string();

    for x in p.points() {
        let (o, e) = (a.moment.object[x], a.moment.idempotent[x]);
        if !cat.is_idempotent(e) || cat.src(e) != o {
            c.push("moment", vec![pt(x)]);
        }
    }
    for x in p.points() {
        for y in p.points() {
            if x != y && p.leq(x, y) {
                let (ex, ey) = (a.moment.idempotent[x], a.moment.idempotent[y]);
                if !cat.leq(ex, ey) {
                    c.push("moment-monotone", vec![pt(x), pt(y)]);
                }
            }
        }
    }
    for s in cat.morphisms() {
        for x in p.points() {
            if a.in_domain(s, x) != a.apply(s, x).is_some() {
                c.push("domain", vec![m(s), pt(x)]);
            }
        }
    }
    for x in p.points() {
        if a.apply(a.moment.idempotent[x], x) != Some(x) {
            c.push("unit", vec![pt(x)]);
        }
    }
    for s in cat.morphisms() {
        let (ids, irs) = (cat.inner_source(s), cat.inner_target(s));
        for x in p.points() {
            let Some(y) = a.apply(s, x) else { continue };
            let iy = a.moment.idempotent[y];
            let exact = a.strict || a.moment.idempotent[x] == ids;
            if a.moment.object[y] != cat.tgt(s) || !cat.leq(iy, irs) || (exact && iy != irs) {
                c.push("moment-transport", vec![m(s), pt(x)]);
            }
        }
    }
    for t in cat.morphisms() {
        for &s in cat.star(cat.tgt(t)) {
            let st = cat.mul(s, t);
            for x in p.points() {
                let lhs = a.apply(t, x).and_then(|y| a.apply(s, y));
                let rhs = a.apply(st, x);
                let ok = if a.strict {
                    lhs.is_none() || lhs == rhs
                } else {
                    lhs == rhs
                };
                if !ok {
                    c.push("composition", vec![m(s), m(t), pt(x)]);
                }
            }
        }
    }
    for s in cat.morphisms() {
        let dom = a.domain_of(s);
        for &x in &dom {
            for &y in &dom {
                if x != y && p.leq(x, y) {
                    let (fx, fy) = (a.theta[&(s, x)], a.theta[&(s, y)]);
                    if !p.leq(fx, fy) {
                        c.push("monotone", vec![m(s), pt(x), pt(y)]);
                    }
                }
            }
        }
    }
    c.finish()
}

/// An action by symmetries: `Θ(X)` is an ideal for each object and
/// `Θ(s): D_{s°} → D_s` an order isomorphism for each morphism.
///
/// This is the data of a functor into `I_ic(P)` without materializing that
/// category.
#[derive(Clone, Debug)]
pub struct SymmetryAction {
    pub cat: Arc<InverseCategory>,
    pub poset: Poset,
    pub objects: Vec<OrderIdeal>,
    pub maps: Vec<PartialOrderIso>,
}

impl SymmetryAction {
    /// Checks that the data defines a functor into `I_ic(P)` whose object
    /// ideals cover `P`.
    pub fn check(&self) -> Result<()> {
        let cat = &self.cat;
        let fail = |msg: String| Err(Error::NotAFunctor(msg));
        for s in cat.morphisms() {
            let f = &self.maps[s.0];
            if !f.dom.is_subset(&self.objects[cat.src(s).0])
                || !f.ran.is_subset(&self.objects[cat.tgt(s).0])
            {
                return fail(format!("image of `{}` leaves its hom-set", cat.name(s)));
            }
        }
        for x in cat.objects() {
            if self.maps[cat.id_of(x).0] != PartialOrderIso::identity(&self.objects[x.0]) {
                return fail(format!("identity of `{}` not preserved", cat.object_name(x)));
            }
        }
        for t in cat.morphisms() {
            for &s in cat.star(cat.tgt(t)) {
                let st = cat.mul(s, t);
                if compose_partial_isos(&self.maps[s.0], &self.maps[t.0]) != self.maps[st.0] {
                    return fail(format!(
                        "composite of `{}` and `{}` not preserved",
                        cat.name(s),
                        cat.name(t)
                    ));
                }
            }
        }
        let covered = self
            .objects
            .iter()
            .fold(OrderIdeal::empty(), |acc, i| acc.union(i));
        if covered.len() != self.poset.len() {
            return fail("object ideals do not cover the poset".into());
        }
        Ok(())
    }

    /// The corresponding functor into a materialized `I_ic(P)`.
    pub fn to_functor(&self, iic: &Iic) -> Result<Functor> {
        let missing = |what: String| Error::NotAFunctor(format!("{what} not found in I_ic(P)"));
        let objects = self
            .objects
            .iter()
            .map(|i| iic.ideal_object(i).ok_or_else(|| missing(self.poset.set_name(i.members()))))
            .collect::<Result<Vec<_>>>()?;
        let morphisms = self
            .cat
            .morphisms()
            .map(|s| {
                let (u, v) = (objects[self.cat.src(s).0], objects[self.cat.tgt(s).0]);
                iic.find(u.0, v.0, &self.maps[s.0])
                    .ok_or_else(|| missing(self.cat.name(s).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor { objects, morphisms })
    }
}

/// The action by symmetries `Θ(X) = D_{1_X}`, `Θ(s) = θ_s`.
pub fn fibred_to_symmetry(a: &FibredAction) -> Result<SymmetryAction> {
    if a.strict {
        return Err(Error::PreconditionFailed(
            "strict actions do not preserve identities of hom-sets".into(),
        ));
    }
    let report = validate_fibred(a, false);
    if !report.valid {
        return Err(Error::InvalidAction(report));
    }
    let cat = a.cat.clone();
    let objects = cat
        .objects()
        .map(|x| {
            OrderIdeal::from_sorted(
                a.poset.points().filter(|&p| a.moment.object[p] == x).collect(),
            )
        })
        .collect();
    let maps = cat
        .morphisms()
        .map(|s| {
            PartialOrderIso::from_map_unchecked(
                a.domain_of(s).into_iter().map(|x| (x, a.theta[&(s, x)])).collect(),
            )
        })
        .collect();
    Ok(SymmetryAction {
        cat,
        poset: a.poset.clone(),
        objects,
        maps,
    })
}

/// A partial action: domains `D_s` and isomorphisms `θ_s: D_{s°} → D_s`.
#[derive(Clone, Debug)]
pub struct PartialActionBundle {
    pub cat: Arc<InverseCategory>,
    pub poset: Poset,
    pub domains: Vec<OrderIdeal>,
    pub maps: Vec<PartialOrderIso>,
    pub strict: bool,
    pub global: bool,
}

/// Name-level view of a bundle, used for comparisons across posets.
pub type BundleShape = BTreeMap<String, (BTreeSet<String>, BTreeMap<String, String>)>;

impl PartialActionBundle {
    pub fn domain(&self, s: MorId) -> &OrderIdeal {
        &self.domains[s.0]
    }

    pub fn map(&self, s: MorId) -> &PartialOrderIso {
        &self.maps[s.0]
    }

    /// Whether `D_s = D_{ir(s)}` for every `s`.
    pub fn is_global(&self) -> bool {
        self.cat
            .morphisms()
            .all(|s| self.domains[s.0] == self.domains[self.cat.inner_target(s).0])
    }

    /// Domains and maps by name, per morphism name.
    pub fn shape(&self) -> BundleShape {
        let p = &self.poset;
        self.cat
            .morphisms()
            .map(|s| {
                let dom = self.domains[s.0].iter().map(|x| p.name(x).to_string()).collect();
                let map = self.maps[s.0]
                    .map
                    .iter()
                    .map(|(&x, &y)| (p.name(x).to_string(), p.name(y).to_string()))
                    .collect();
                (self.cat.name(s).to_string(), (dom, map))
            })
            .collect()
    }

    /// Same acting category, same poset (by names and order), same domains
    /// and maps.
    pub fn same_as(&self, other: &PartialActionBundle) -> bool {
        let names: BTreeSet<&String> = self.poset.names().iter().collect();
        let other_names: BTreeSet<&String> = other.poset.names().iter().collect();
        if names != other_names || self.shape() != other.shape() {
            return false;
        }
        self.poset.points().all(|x| {
            self.poset.points().all(|y| {
                let (ox, oy) = (
                    other.poset.point(self.poset.name(x)).expect("same names"),
                    other.poset.point(self.poset.name(y)).expect("same names"),
                );
                self.poset.leq(x, y) == other.poset.leq(ox, oy)
            })
        })
    }
}

/// Checks the partial-action axioms and the declared globality.
///
/// Strict bundles are checked against the axioms that strictness preserves:
/// domains need not be ideals, the domains of idempotents cover the poset,
/// compatibility with the order is not required, and the composition axiom
/// is only imposed on pairs with `id(s) = ir(t)`.
pub fn validate_partial(b: &PartialActionBundle, verbose: bool) -> ValidationReport {
    let cat = &b.cat;
    let p = &b.poset;
    let mut c = Collector::new(verbose);
    let m = |s: MorId| cat.name(s).to_string();
    let pt = |x: usize| p.name(x).to_string();

    for s in cat.morphisms() {
        let (d, f) = (&b.domains[s.0], &b.maps[s.0]);
        if !b.strict && !p.is_down_closed(d.members()) {
            c.push("(i) ideal", vec![m(s)]);
        }
        let si = cat.inv(s);
        if f.dom != b.domains[si.0] || f.ran != *d || f.dom.len() != f.ran.len() {
            c.push("(i) bijection", vec![m(s)]);
        }
        for (&x, &fx) in &f.map {
            for (&y, &fy) in &f.map {
                if p.leq(x, y) && !p.leq(fx, fy) {
                    c.push("(i) monotone", vec![m(s), pt(x), pt(y)]);
                }
            }
        }
    }

    let covering: Vec<MorId> = if b.strict {
        cat.idempotents()
    } else {
        cat.objects().map(|x| cat.id_of(x)).collect()
    };
    let covered = covering
        .iter()
        .fold(OrderIdeal::empty(), |acc, &e| acc.union(&b.domains[e.0]));
    for x in p.points() {
        if !covered.contains(x) {
            c.push("(ii) covering", vec![pt(x)]);
        }
    }

    for e in cat.idempotents() {
        if b.maps[e.0] != PartialOrderIso::identity(&b.domains[e.0]) {
            c.push("(iii) idempotent", vec![m(e)]);
        }
    }

    if !b.strict {
        for s in cat.morphisms() {
            for t in cat.hom(cat.src(s), cat.tgt(s)) {
                if s == t || !cat.leq(s, t) {
                    continue;
                }
                let (ds, dt) = (&b.domains[cat.inv(s).0], &b.domains[cat.inv(t).0]);
                if !ds.is_subset(dt) || b.maps[t.0].restrict(ds) != b.maps[s.0] {
                    c.push("(iv) order", vec![m(s), m(t)]);
                }
            }
        }
    }

    for s in cat.morphisms() {
        if !b.domains[s.0].is_subset(&b.domains[cat.inner_target(s).0]) {
            c.push("(v) range", vec![m(s)]);
        }
    }

    for t in cat.morphisms() {
        for &s in cat.star(cat.tgt(t)) {
            if b.strict && cat.inner_source(s) != cat.inner_target(t) {
                continue;
            }
            let st = cat.mul(s, t);
            let (fs, ft, fst) = (&b.maps[s.0], &b.maps[t.0], &b.maps[st.0]);
            let middle = b.domains[cat.inv(s).0].intersect(&b.domains[t.0]);
            let image =
                OrderIdeal::from_unsorted(middle.iter().filter_map(|x| fs.apply(x)).collect());
            if image != b.domains[s.0].intersect(&b.domains[st.0]) {
                c.push("(vi) domains", vec![m(s), m(t)]);
            }
            for (&x, &y) in &ft.map {
                if middle.contains(y) && fs.apply(y) != fst.apply(x) {
                    c.push("(vi) composition", vec![m(s), m(t), pt(x)]);
                }
            }
        }
    }

    if b.global != b.is_global() {
        let witness = cat
            .morphisms()
            .find(|&s| b.domains[s.0] != b.domains[cat.inner_target(s).0])
            .map(|s| vec![m(s)])
            .unwrap_or_default();
        c.push("globality", witness);
    }
    c.finish()
}

/// The partial action `D_s = ran(Θ(s))`, `θ_s = Θ(s)`.
pub fn symmetry_to_partial(theta: &SymmetryAction) -> Result<PartialActionBundle> {
    theta.check()?;
    Ok(PartialActionBundle {
        cat: theta.cat.clone(),
        poset: theta.poset.clone(),
        domains: theta.maps.iter().map(|f| f.ran.clone()).collect(),
        maps: theta.maps.clone(),
        strict: false,
        global: true,
    })
}

/// Shorthand for `symmetry_to_partial(fibred_to_symmetry(a))`.
pub fn fibred_to_partial(a: &FibredAction) -> Result<PartialActionBundle> {
    symmetry_to_partial(&fibred_to_symmetry(a)?)
}

/// Restricts a global action to the ideal `q`, giving a partial action on
/// the sub-poset `q` with `D_s = (q ∩ D̄_s) ∩ θ̄_s(q ∩ D̄_{s°})`.
pub fn restrict_to_ideal(b: &PartialActionBundle, q: &OrderIdeal) -> Result<PartialActionBundle> {
    if !b.global || !b.is_global() {
        return Err(Error::NotGlobal("restriction needs a global action".into()));
    }
    let q = OrderIdeal::new(&b.poset, q.members().to_vec())?;
    let keep = q.members().to_vec();
    let mut new_index = vec![usize::MAX; b.poset.len()];
    for (i, &x) in keep.iter().enumerate() {
        new_index[x] = i;
    }
    let cat = &b.cat;
    let maps: Vec<PartialOrderIso> = cat
        .morphisms()
        .map(|s| {
            PartialOrderIso::from_map_unchecked(
                b.maps[s.0]
                    .map
                    .iter()
                    .filter(|(&x, &y)| q.contains(x) && q.contains(y))
                    .map(|(&x, &y)| (new_index[x], new_index[y]))
                    .collect(),
            )
        })
        .collect();
    let domains: Vec<OrderIdeal> = maps.iter().map(|f| f.ran.clone()).collect();
    let mut out = PartialActionBundle {
        cat: cat.clone(),
        poset: b.poset.sub_poset(&keep),
        domains,
        maps,
        strict: b.strict,
        global: false,
    };
    out.global = out.is_global();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Limits;
    use crate::fixtures;
    use crate::poset::build_iic;

    fn ic(c: crate::category::FiniteCategory) -> Arc<InverseCategory> {
        Arc::new(InverseCategory::new(c).unwrap())
    }

    #[test]
    fn self_action_of_z2_is_valid() {
        let a = FibredAction::self_action(ic(fixtures::z2()));
        assert_eq!(a.poset.len(), 2);
        assert!(!a.poset.leq(0, 1) && !a.poset.leq(1, 0));
        assert!(validate_fibred(&a, true).valid);
    }

    #[test]
    fn conjugation_action_of_i2_is_valid() {
        let a = FibredAction::conjugation_action(ic(fixtures::i2()));
        assert_eq!(a.poset.len(), 4);
        let r = validate_fibred(&a, true);
        assert!(r.valid, "{r:?}");
        // Oracle: s e s° computed on partial maps directly.
        let cat = a.cat.clone();
        let swap = cat.morphism("swap").unwrap();
        let id1 = a.poset.point("id1").unwrap();
        assert_eq!(a.poset.name(a.apply(swap, id1).unwrap()), "id2");
    }

    #[test]
    fn tampered_self_action_breaks_composition() {
        let mut a = FibredAction::self_action(ic(fixtures::z2()));
        let g = a.cat.morphism("g").unwrap();
        let e = a.poset.point("e").unwrap();
        a.theta.insert((g, e), e);
        let r = validate_fibred(&a, false);
        assert_eq!(r.witnesses("composition"), vec![&["g", "g", "g"][..]]);
        let verbose = validate_fibred(&a, true);
        assert!(verbose.violations.len() >= r.violations.len());
    }

    #[test]
    fn domain_errors_are_detected() {
        let mut a = FibredAction::self_action(ic(fixtures::z2()));
        let g = a.cat.morphism("g").unwrap();
        a.theta.remove(&(g, 0));
        assert!(validate_fibred(&a, false).has_rule("domain"));
    }

    #[test]
    fn trivial_self_action_gives_functor_into_iic_of_a_point() {
        let a = FibredAction::self_action(ic(fixtures::trivial()));
        let sym = fibred_to_symmetry(&a).unwrap();
        let iic = build_iic(&a.poset, &Limits::default()).unwrap();
        let f = sym.to_functor(&iic).unwrap();
        f.check(&a.cat, &iic.category).unwrap();
        assert_eq!(iic.category.name(f.morphism(MorId(0))), "{1}->{1}:[1>1]");
    }

    #[test]
    fn z2_symmetry_swaps_points() {
        let a = FibredAction::self_action(ic(fixtures::z2()));
        let sym = fibred_to_symmetry(&a).unwrap();
        let g = a.cat.morphism("g").unwrap();
        let graph: Vec<(&str, &str)> = sym.maps[g.0]
            .map
            .iter()
            .map(|(&x, &y)| (a.poset.name(x), a.poset.name(y)))
            .collect();
        assert_eq!(graph, [("e", "g"), ("g", "e")]);
        let iic = build_iic(&a.poset, &Limits::default()).unwrap();
        let f = sym.to_functor(&iic).unwrap();
        f.check(&a.cat, &iic.category).unwrap();
    }

    #[test]
    fn symmetry_to_partial_is_global() {
        for cat in [fixtures::z2(), fixtures::i2(), fixtures::g2(), fixtures::trivial()] {
            let cat = ic(cat);
            for a in [
                FibredAction::self_action(cat.clone()),
                FibredAction::conjugation_action(cat.clone()),
            ] {
                let b = fibred_to_partial(&a).unwrap();
                let r = validate_partial(&b, true);
                assert!(r.valid, "{r:?}");
                assert!(b.is_global());
            }
        }
    }

    #[test]
    fn invalid_actions_are_not_converted() {
        let mut a = FibredAction::self_action(ic(fixtures::z2()));
        let g = a.cat.morphism("g").unwrap();
        a.theta.insert((g, 0), 0);
        assert!(matches!(fibred_to_symmetry(&a), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn globality_flag_is_checked() {
        let a = FibredAction::self_action(ic(fixtures::z2()));
        let mut b = fibred_to_partial(&a).unwrap();
        b.global = false;
        assert!(validate_partial(&b, false).has_rule("globality"));
    }

    #[test]
    fn shrunken_domain_breaks_axioms() {
        let a = FibredAction::conjugation_action(ic(fixtures::i2()));
        let mut b = fibred_to_partial(&a).unwrap();
        let swap = b.cat.morphism("swap").unwrap();
        let id2 = b.poset.point("id2").unwrap();
        let kept: BTreeMap<usize, usize> = b.maps[swap.0]
            .map
            .iter()
            .filter(|(_, &y)| y != id2)
            .map(|(&x, &y)| (x, y))
            .collect();
        b.maps[swap.0] = PartialOrderIso::from_map_unchecked(kept);
        b.domains[swap.0] = b.maps[swap.0].ran.clone();
        assert!(!validate_partial(&b, true).valid);
    }

    #[test]
    fn restriction_to_whole_and_empty_ideal() {
        let a = FibredAction::conjugation_action(ic(fixtures::i2()));
        let b = fibred_to_partial(&a).unwrap();
        let whole = restrict_to_ideal(&b, &OrderIdeal::full(&b.poset)).unwrap();
        assert!(whole.same_as(&b));
        assert!(whole.global);
        let none = restrict_to_ideal(&b, &OrderIdeal::empty()).unwrap();
        assert!(none.domains.iter().all(|d| d.is_empty()));
    }

    #[test]
    fn restriction_needs_global_action_and_ideal() {
        let a = FibredAction::conjugation_action(ic(fixtures::i2()));
        let mut b = fibred_to_partial(&a).unwrap();
        let id = b.poset.point("id").unwrap();
        assert!(matches!(
            restrict_to_ideal(&b, &OrderIdeal::from_sorted(vec![id])),
            Err(Error::NotIdeal(_))
        ));
        b.global = false;
        assert!(matches!(
            restrict_to_ideal(&b, &OrderIdeal::empty()),
            Err(Error::NotGlobal(_))
        ));
    }
}
