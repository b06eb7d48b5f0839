//! Bernoulli posets `P(C)`, `P∘(C)` and the four Bernoulli actions.
//!
//! A point of `P(C)` is a nonempty set `A` of morphisms with a common target
//! `X` and a common `aa° = e`; it is signed by `ε(A) = (X, e)`. `P∘(C)` keeps
//! the sets containing their signing idempotent.

use std::collections::HashMap;
use std::sync::Arc;

use crate::actions::{FibredAction, MomentMap, PartialActionBundle};
use crate::category::{InverseCategory, MorId, ObjectId};
use crate::error::{Error, Limits, Result};
use crate::poset::{OrderIdeal, PartialOrderIso, Poset};

/// A point of `P(C)`: a sorted member list with its signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PCElement {
    pub members: Vec<MorId>,
    pub object: ObjectId,
    pub idempotent: MorId,
}

impl PCElement {
    pub fn contains(&self, s: MorId) -> bool {
        self.members.binary_search(&s).is_ok()
    }
}

/// `sA`, sorted and deduplicated.
pub fn left_mul(cat: &InverseCategory, s: MorId, members: &[MorId]) -> Vec<MorId> {
    let mut out: Vec<MorId> = members.iter().map(|&a| cat.mul(s, a)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `eB ⊆ A` for sorted member lists.
fn mul_subset(cat: &InverseCategory, e: MorId, b: &[MorId], a: &[MorId]) -> bool {
    b.iter().all(|&x| a.binary_search(&cat.mul(e, x)).is_ok())
}

#[derive(Clone, Debug)]
pub struct BernoulliPoset {
    pub cat: Arc<InverseCategory>,
    pub elements: Arc<Vec<PCElement>>,
    pub poset: Poset,
    pub circ: bool,
    index: HashMap<Vec<MorId>, usize>,
}

impl BernoulliPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &PCElement {
        &self.elements[i]
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn find(&self, members: &[MorId]) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// The point whose members have the given names.
    pub fn point(&self, names: &[&str]) -> Result<usize> {
        let mut members = names
            .iter()
            .map(|n| self.cat.morphism(n))
            .collect::<Result<Vec<_>>>()?;
        members.sort_unstable();
        members.dedup();
        self.find(&members)
            .ok_or_else(|| Error::UndeclaredName(set_name(&self.cat, &members)))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    /// `sA` as a point of this poset, when `A` lies over `src(s)` and the
    /// result belongs to the poset.
    pub fn translate(&self, s: MorId, a: usize) -> Option<usize> {
        let el = &self.elements[a];
        if el.object != self.cat.src(s) {
            return None;
        }
        self.find(&left_mul(&self.cat, s, &el.members))
    }

    pub fn moment(&self) -> MomentMap {
        MomentMap {
            object: self.elements.iter().map(|a| a.object).collect(),
            idempotent: self.elements.iter().map(|a| a.idempotent).collect(),
        }
    }

    /// Builds a bundle over this poset with the given domain predicate and
    /// `θ_s(A) = sA`.
    fn bundle(
        &self,
        strict: bool,
        in_domain: impl Fn(MorId, &PCElement) -> bool,
    ) -> PartialActionBundle {
        let cat = &self.cat;
        let domains: Vec<OrderIdeal> = cat
            .morphisms()
            .map(|s| {
                OrderIdeal::from_sorted(
                    (0..self.len()).filter(|&b| in_domain(s, &self.elements[b])).collect(),
                )
            })
            .collect();
        let maps = cat
            .morphisms()
            .map(|s| {
                PartialOrderIso::from_map_unchecked(
                    domains[cat.inv(s).0]
                        .iter()
                        .filter_map(|a| self.translate(s, a).map(|b| (a, b)))
                        .collect(),
                )
            })
            .collect();
        let mut b = PartialActionBundle {
            cat: cat.clone(),
            poset: self.poset.clone(),
            domains,
            maps,
            strict,
            global: false,
        };
        b.global = b.is_global();
        b
    }
}

fn set_name(cat: &InverseCategory, members: &[MorId]) -> String {
    let parts: Vec<&str> = members.iter().map(|&m| cat.name(m)).collect();
    format!("{{{}}}", parts.join(","))
}

fn build(cat: &Arc<InverseCategory>, circ: bool, limits: &Limits) -> Result<BernoulliPoset> {
    let classes = cat.relation_classes().r_classes;
    let estimate = classes.iter().fold(0usize, |acc, (_, class)| {
        let k = class.len() - usize::from(circ);
        let subsets = if k >= usize::BITS as usize - 1 {
            usize::MAX
        } else {
            (1usize << k) - usize::from(!circ)
        };
        acc.saturating_add(subsets)
    });
    limits.check("Bernoulli poset points", estimate, limits.max_elements)?;

    let mut elements = Vec::with_capacity(estimate);
    for (e, class) in &classes {
        let object = cat.src(*e);
        for mask in 1u64..1 << class.len() {
            let members: Vec<MorId> = class
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            if circ && !members.contains(e) {
                continue;
            }
            elements.push(PCElement {
                members,
                object,
                idempotent: *e,
            });
        }
    }
    let names = elements.iter().map(|a| set_name(cat, &a.members)).collect();
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, a)| (a.members.clone(), i))
        .collect();
    let elements = Arc::new(elements);
    let (order_cat, order_elements) = (cat.clone(), elements.clone());
    let poset = Poset::from_rule(names, move |a, b| {
        let (a, b) = (&order_elements[a], &order_elements[b]);
        a.object == b.object
            && order_cat.leq(a.idempotent, b.idempotent)
            && mul_subset(&order_cat, a.idempotent, &b.members, &a.members)
    })?;
    Ok(BernoulliPoset {
        cat: cat.clone(),
        elements,
        poset,
        circ,
        index,
    })
}

/// `P(C)`: every nonempty subset of every `R`-class.
pub fn build_p(cat: &Arc<InverseCategory>, limits: &Limits) -> Result<BernoulliPoset> {
    build(cat, false, limits)
}

/// `P∘(C)`: the points of `P(C)` containing their signing idempotent.
pub fn build_p_circ(cat: &Arc<InverseCategory>, limits: &Limits) -> Result<BernoulliPoset> {
    build(cat, true, limits)
}

/// The global Bernoulli action `𝔅_s(A) = sA` on `P(C)`.
pub fn bernoulli_global(
    cat: &Arc<InverseCategory>,
    limits: &Limits,
) -> Result<(BernoulliPoset, FibredAction)> {
    let p = build_p(cat, limits)?;
    let action = fibred(&p, false);
    Ok((p, action))
}

fn fibred(p: &BernoulliPoset, strict: bool) -> FibredAction {
    let q = p.clone();
    FibredAction::from_fn(p.cat.clone(), p.poset.clone(), p.moment(), strict, move |s, a| {
        q.translate(s, a).expect("sA lies in P(C)")
    })
}

/// The global Bernoulli action by symmetries, with domains
/// `D̄_s = {B : oε(B) = or(s), iε(B) ≤ ir(s)}`.
pub fn bernoulli_global_bundle(p: &BernoulliPoset) -> Result<PartialActionBundle> {
    if p.circ {
        return Err(Error::PreconditionFailed("global action lives on P(C)".into()));
    }
    let cat = p.cat.clone();
    Ok(p.bundle(false, move |s, b| {
        b.object == cat.tgt(s) && cat.leq(b.idempotent, cat.inner_target(s))
    }))
}

/// The partial Bernoulli action on `P∘(C)`, with domains
/// `D_s = {B ∈ D̄_s : B ∋ iε(B)s, iε(B)}`.
pub fn bernoulli_partial(
    cat: &Arc<InverseCategory>,
    limits: &Limits,
) -> Result<(BernoulliPoset, PartialActionBundle)> {
    let p = build_p_circ(cat, limits)?;
    let c = cat.clone();
    let bundle = p.bundle(false, move |s, b| {
        let f = b.idempotent;
        b.object == c.tgt(s)
            && c.leq(f, c.inner_target(s))
            && b.contains(c.mul(f, s))
            && b.contains(f)
    });
    Ok((p, bundle))
}

/// One of the two strict Bernoulli actions.
#[derive(Clone, Debug)]
pub enum StrictBernoulli {
    /// The strict global fibred action on `P(C)`.
    Global(BernoulliPoset, FibredAction),
    /// The strict partial action on `P∘(C)`.
    Partial(BernoulliPoset, PartialActionBundle),
}

/// The strict Bernoulli actions, whose domains use `iε = ir(s)` exactly.
pub fn bernoulli_strict(
    cat: &Arc<InverseCategory>,
    global: bool,
    limits: &Limits,
) -> Result<StrictBernoulli> {
    if global {
        let p = build_p(cat, limits)?;
        let a = fibred(&p, true);
        return Ok(StrictBernoulli::Global(p, a));
    }
    let p = build_p_circ(cat, limits)?;
    let c = cat.clone();
    let bundle = p.bundle(true, move |s, b| {
        b.object == c.tgt(s)
            && b.idempotent == c.inner_target(s)
            && b.contains(c.inner_target(s))
            && b.contains(s)
    });
    Ok(StrictBernoulli::Partial(p, bundle))
}

/// The strict global action by symmetries, `D̄^m_s = {B : oε(B) = or(s),
/// iε(B) = ir(s)}`.
pub fn bernoulli_strict_global_bundle(p: &BernoulliPoset) -> Result<PartialActionBundle> {
    if p.circ {
        return Err(Error::PreconditionFailed("global action lives on P(C)".into()));
    }
    let cat = p.cat.clone();
    Ok(p.bundle(true, move |s, b| {
        b.object == cat.tgt(s) && b.idempotent == cat.inner_target(s)
    }))
}
