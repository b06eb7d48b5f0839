//! Semidirect products of actions and the Szendrei expansions.
//!
//! An arrow of a semidirect product is a pair `(x, s)` with `x` in the range
//! of `θ_s`; it goes from `θ_{s°}(x)` to `x`, and `(x, s)(y, t) = (x, st)`
//! whenever `θ_s(y) = x`. The Szendrei expansions are the semidirect products
//! of the four Bernoulli actions. Arrows are named `(A,s)` after their point
//! and morphism, and objects after their point.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::Arc;

use crate::actions::{FibredAction, PartialActionBundle};
use crate::bernoulli::{
    bernoulli_global, bernoulli_partial, bernoulli_strict, left_mul, BernoulliPoset, PCElement,
    StrictBernoulli,
};
use crate::category::{FiniteCategory, Functor, InverseCategory, MorId, Morphism, ObjectId};
use crate::error::{Error, Limits, Result};
use crate::poset::Poset;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SdArrow {
    pub point: usize,
    pub mor: MorId,
}

/// A semidirect product together with the pair behind each arrow.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub category: Arc<InverseCategory>,
    pub poset: Poset,
    pub arrows: Vec<SdArrow>,
    lookup: HashMap<SdArrow, MorId>,
}

impl SemidirectProduct {
    pub fn find(&self, point: usize, mor: MorId) -> Option<MorId> {
        self.lookup.get(&SdArrow { point, mor }).copied()
    }

    pub fn arrow(&self, m: MorId) -> SdArrow {
        self.arrows[m.0]
    }
}

fn assemble(
    base: &InverseCategory,
    poset: &Poset,
    limits: &Limits,
    is_arrow: impl Fn(usize, MorId) -> bool,
    source: impl Fn(SdArrow) -> Option<usize>,
    identity: impl Fn(usize) -> Option<MorId>,
) -> Result<SemidirectProduct> {
    let estimate = poset
        .points()
        .map(|x| base.morphisms().filter(|&s| is_arrow(x, s)).count())
        .sum();
    limits.check("semidirect product arrows", estimate, limits.max_elements)?;

    let mut arrows = Vec::with_capacity(estimate);
    for x in poset.points() {
        for s in base.morphisms() {
            if is_arrow(x, s) {
                arrows.push(SdArrow { point: x, mor: s });
            }
        }
    }
    let lookup: HashMap<SdArrow, MorId> =
        arrows.iter().enumerate().map(|(i, &a)| (a, MorId(i))).collect();
    let morphisms = arrows
        .iter()
        .map(|&a| {
            let name = format!("({},{})", poset.name(a.point), base.name(a.mor));
            let src = source(a).ok_or_else(|| {
                Error::PreconditionFailed(format!("no source for arrow {name}"))
            })?;
            Ok(Morphism {
                name,
                src: ObjectId(src),
                tgt: ObjectId(a.point),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let identities = poset
        .points()
        .map(|x| {
            identity(x)
                .and_then(|u| lookup.get(&SdArrow { point: x, mor: u }).copied())
                .ok_or_else(|| {
                    Error::PreconditionFailed(format!("no identity at `{}`", poset.name(x)))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let objects = poset.names().to_vec();
    let cat = FiniteCategory::generate(objects, morphisms, identities, |g, f| {
        let (g, f) = (arrows[g.0], arrows[f.0]);
        base.compose(g.mor, f.mor).and_then(|st| {
            lookup
                .get(&SdArrow {
                    point: g.point,
                    mor: st,
                })
                .copied()
        })
    })?;
    Ok(SemidirectProduct {
        category: Arc::new(InverseCategory::new(cat)?),
        poset: poset.clone(),
        arrows,
        lookup,
    })
}

/// The semidirect product of a fibred action. With `strict`, arrows are the
/// pairs with `iρ(x) = ir(s)` and identities are `(x, iρ(x))`; otherwise
/// `iρ(x) ≤ ir(s)` and identities are `(x, 1_{oρ(x)})`.
pub fn semidirect_product(
    a: &FibredAction,
    strict: bool,
    limits: &Limits,
) -> Result<SemidirectProduct> {
    if a.strict && !strict {
        return Err(Error::PreconditionFailed(
            "a strict action only supports the strict arrow set".into(),
        ));
    }
    let cat = &a.cat;
    assemble(
        cat,
        &a.poset,
        limits,
        |x, s| {
            let (ix, irs) = (a.moment.idempotent[x], cat.inner_target(s));
            a.moment.object[x] == cat.tgt(s) && if strict { ix == irs } else { cat.leq(ix, irs) }
        },
        |arrow| a.apply(cat.inv(arrow.mor), arrow.point),
        |x| {
            Some(if strict {
                a.moment.idempotent[x]
            } else {
                cat.id_of(a.moment.object[x])
            })
        },
    )
}

/// The semidirect product of a partial action: arrows `(x, s)` with
/// `x ∈ D_s`; the identity at `x` is `(x, e)` for the largest idempotent `e`
/// with `x ∈ D_e`.
pub fn semidirect_product_bundle(
    b: &PartialActionBundle,
    limits: &Limits,
) -> Result<SemidirectProduct> {
    let cat = &b.cat;
    let idempotents = cat.idempotents();
    assemble(
        cat,
        &b.poset,
        limits,
        |x, s| b.domain(s).contains(x),
        |arrow| b.map(cat.inv(arrow.mor)).apply(arrow.point),
        |x| {
            let holders: Vec<MorId> = idempotents
                .iter()
                .copied()
                .filter(|&e| b.domain(e).contains(x))
                .collect();
            holders
                .iter()
                .copied()
                .find(|&e| holders.iter().all(|&f| cat.leq(f, e)))
        },
    )
}

/// The four Szendrei expansions.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SzVariant {
    Global,
    Partial,
    StrictGlobal,
    StrictPartial,
}

impl SzVariant {
    pub const ALL: [SzVariant; 4] = [
        SzVariant::Global,
        SzVariant::Partial,
        SzVariant::StrictGlobal,
        SzVariant::StrictPartial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SzVariant::Global => "global",
            SzVariant::Partial => "partial",
            SzVariant::StrictGlobal => "strict-global",
            SzVariant::StrictPartial => "strict-partial",
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, SzVariant::StrictGlobal | SzVariant::StrictPartial)
    }

    pub fn is_partial(self) -> bool {
        matches!(self, SzVariant::Partial | SzVariant::StrictPartial)
    }

    /// The global variant with the same strictness.
    pub fn global_counterpart(self) -> SzVariant {
        if self.is_strict() {
            SzVariant::StrictGlobal
        } else {
            SzVariant::Global
        }
    }
}

impl fmt::Display for SzVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SzVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SzVariant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::UndeclaredName(format!("variant `{s}`")))
    }
}

/// A Szendrei expansion of `origin`.
#[derive(Clone, Debug)]
pub struct SzCategory {
    pub variant: SzVariant,
    pub origin: Arc<InverseCategory>,
    pub bernoulli: BernoulliPoset,
    pub product: SemidirectProduct,
}

impl Deref for SzCategory {
    type Target = InverseCategory;

    fn deref(&self) -> &InverseCategory {
        &self.product.category
    }
}

/// Builds one of the four Szendrei expansions.
pub fn szendrei(cat: &Arc<InverseCategory>, variant: SzVariant, limits: &Limits) -> Result<SzCategory> {
    let (bernoulli, product) = match variant {
        SzVariant::Global => {
            let (p, a) = bernoulli_global(cat, limits)?;
            let sd = semidirect_product(&a, false, limits)?;
            (p, sd)
        }
        SzVariant::Partial => {
            let (p, b) = bernoulli_partial(cat, limits)?;
            let sd = semidirect_product_bundle(&b, limits)?;
            (p, sd)
        }
        SzVariant::StrictGlobal => match bernoulli_strict(cat, true, limits)? {
            StrictBernoulli::Global(p, a) => {
                let sd = semidirect_product(&a, true, limits)?;
                (p, sd)
            }
            StrictBernoulli::Partial(..) => unreachable!(),
        },
        SzVariant::StrictPartial => match bernoulli_strict(cat, false, limits)? {
            StrictBernoulli::Partial(p, b) => {
                let sd = semidirect_product_bundle(&b, limits)?;
                (p, sd)
            }
            StrictBernoulli::Global(..) => unreachable!(),
        },
    };
    Ok(SzCategory {
        variant,
        origin: cat.clone(),
        bernoulli,
        product,
    })
}

impl SzCategory {
    pub fn category(&self) -> &Arc<InverseCategory> {
        &self.product.category
    }

    pub fn arrow(&self, m: MorId) -> SdArrow {
        self.product.arrow(m)
    }

    pub fn set(&self, m: MorId) -> &PCElement {
        self.bernoulli.element(self.arrow(m).point)
    }

    pub fn find(&self, point: usize, mor: MorId) -> Option<MorId> {
        self.product.find(point, mor)
    }

    /// The arrow `(A, s)` given by member names of `A` and the name of `s`.
    pub fn arrow_named(&self, members: &[&str], mor: &str) -> Result<MorId> {
        let point = self.bernoulli.point(members)?;
        let s = self.origin.morphism(mor)?;
        self.find(point, s).ok_or_else(|| {
            Error::UndeclaredName(format!("({},{mor})", self.bernoulli.name(point)))
        })
    }

    fn find_set(&self, mut members: Vec<MorId>, mor: MorId) -> Result<MorId> {
        members.sort_unstable();
        members.dedup();
        self.bernoulli
            .find(&members)
            .and_then(|p| self.find(p, mor))
            .ok_or_else(|| {
                let names: Vec<&str> = members.iter().map(|&m| self.origin.name(m)).collect();
                Error::PreconditionFailed(format!(
                    "({{{}}},{}) is not an arrow of the {} expansion",
                    names.join(","),
                    self.origin.name(mor),
                    self.variant
                ))
            })
    }

    /// `(A, s) ≤ (B, t)` iff `A ≤ B` in the Bernoulli order and `s ≤ t`.
    ///
    /// Panics if the natural order of the expansion relates the pair while
    /// the product order does not.
    pub fn product_order_leq(&self, a: MorId, b: MorId) -> bool {
        let (x, y) = (self.arrow(a), self.arrow(b));
        let product = self.bernoulli.leq(x.point, y.point) && self.origin.leq(x.mor, y.mor);
        assert!(
            !self.leq(a, b) || product,
            "natural order not contained in product order at ({}, {})",
            self.name(a),
            self.name(b)
        );
        product
    }

    fn require_idempotent(&self, e: MorId) -> Result<()> {
        if self.is_idempotent(e) {
            Ok(())
        } else {
            Err(Error::NotIdempotent(self.name(e).to_string()))
        }
    }

    /// `(E, i) ∧ (F, j) = (iε(F)E ∪ iε(E)F, ij)`.
    pub fn wedge(&self, a: MorId, b: MorId) -> Result<MorId> {
        self.require_idempotent(a)?;
        self.require_idempotent(b)?;
        let (x, y) = (self.arrow(a), self.arrow(b));
        let Some(ij) = self.origin.compose(x.mor, y.mor) else {
            return Err(Error::NotComposable(
                self.name(a).to_string(),
                self.name(b).to_string(),
            ));
        };
        let (ea, eb) = (self.bernoulli.element(x.point), self.bernoulli.element(y.point));
        let mut members = left_mul(&self.origin, eb.idempotent, &ea.members);
        members.extend(left_mul(&self.origin, ea.idempotent, &eb.members));
        self.find_set(members, ij)
    }

    /// The restriction `(sE, sf)` of `(A, s)` to an idempotent
    /// `(E, f) ≤ id(A, s)`.
    pub fn restriction(&self, e: MorId, a: MorId) -> Result<MorId> {
        self.require_idempotent(e)?;
        if !self.product_order_leq(e, self.inner_source(a)) {
            return Err(Error::PreconditionFailed(format!(
                "{} is not below the inner source of {}",
                self.name(e),
                self.name(a)
            )));
        }
        let (ex, ax) = (self.arrow(e), self.arrow(a));
        let members = left_mul(&self.origin, ax.mor, &self.bernoulli.element(ex.point).members);
        self.find_set(members, self.origin.mul(ax.mor, ex.mor))
    }

    /// The corestriction `(E, fs)` of `(A, s)` to an idempotent
    /// `(E, f) ≤ ir(A, s)`.
    pub fn corestriction(&self, a: MorId, e: MorId) -> Result<MorId> {
        self.require_idempotent(e)?;
        if !self.product_order_leq(e, self.inner_target(a)) {
            return Err(Error::PreconditionFailed(format!(
                "{} is not below the inner target of {}",
                self.name(e),
                self.name(a)
            )));
        }
        let (ex, ax) = (self.arrow(e), self.arrow(a));
        let members = self.bernoulli.element(ex.point).members.clone();
        self.find_set(members, self.origin.mul(ex.mor, ax.mor))
    }

    /// `(A, s) ⋆ (B, t) = (s iε(B) s° A ∪ iε(A) s B, st)`, defined when `st`
    /// is.
    pub fn pseudo_product(&self, a: MorId, b: MorId) -> Result<MorId> {
        let (x, y) = (self.arrow(a), self.arrow(b));
        let c = &self.origin;
        let Some(st) = c.compose(x.mor, y.mor) else {
            return Err(Error::NotComposable(
                self.name(a).to_string(),
                self.name(b).to_string(),
            ));
        };
        let (ea, eb) = (self.bernoulli.element(x.point), self.bernoulli.element(y.point));
        let conj = c.mul(c.mul(x.mor, eb.idempotent), c.inv(x.mor));
        let mut members = left_mul(c, conj, &ea.members);
        members.extend(left_mul(c, c.mul(ea.idempotent, x.mor), &eb.members));
        self.find_set(members, st)
    }

    /// The arrows `(A, s)` with `s: X → X`.
    pub fn inner_arrows(&self, x: ObjectId) -> Vec<MorId> {
        self.morphisms()
            .filter(|&m| {
                let s = self.arrow(m).mor;
                self.origin.src(s) == x && self.origin.tgt(s) == x
            })
            .collect()
    }

    /// The full subcategory of arrows whose underlying morphism is an
    /// endomorphism of `x`, with its inclusion.
    pub fn inner_subcategory(&self, x: ObjectId) -> Result<(FiniteCategory, Functor)> {
        let objects: Vec<ObjectId> = self
            .objects()
            .filter(|o| self.bernoulli.element(o.0).object == x)
            .collect();
        crate::category::full_subcategory(self, &objects)
    }
}

/// The inner expansion at an object under the pseudo product.
#[derive(Clone, Debug)]
pub struct InnerSzSemigroup {
    pub arrows: Vec<MorId>,
    pub names: Vec<String>,
    /// `table[i][j]` is the index of `arrows[i] ⋆ arrows[j]`.
    pub table: Vec<Vec<usize>>,
}

impl InnerSzSemigroup {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.product(self.product(a, b), c) == self.product(a, self.product(b, c))
                })
            })
        })
    }

    /// All `b` with `aba = a` and `bab = b`.
    pub fn generalized_inverses(&self, a: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| {
                self.product(self.product(a, b), a) == a && self.product(self.product(b, a), b) == b
            })
            .collect()
    }

    pub fn is_inverse_semigroup(&self) -> bool {
        self.is_associative() && (0..self.len()).all(|a| self.generalized_inverses(a).len() == 1)
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.len()).find(|&u| (0..self.len()).all(|a| self.product(u, a) == a && self.product(a, u) == a))
    }
}

/// The inner expansion of `sz` at `x`: the arrows `(A, s)` with `s: X → X`
/// under the pseudo product.
pub fn inner_szendrei(sz: &SzCategory, x: ObjectId) -> Result<InnerSzSemigroup> {
    let arrows = sz.inner_arrows(x);
    let position: HashMap<MorId, usize> =
        arrows.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let table = arrows
        .iter()
        .map(|&a| {
            arrows
                .iter()
                .map(|&b| {
                    let ab = sz.pseudo_product(a, b)?;
                    position.get(&ab).copied().ok_or_else(|| {
                        Error::PreconditionFailed(format!(
                            "pseudo product {} leaves the inner expansion",
                            sz.name(ab)
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InnerSzSemigroup {
        names: arrows.iter().map(|&m| sz.name(m).to_string()).collect(),
        arrows,
        table,
    })
}

/// `Sz̄(f)(A, s) = (f(A), f(s))` between expansions of the source and target
/// of `f`.
pub fn sz_functor(f: &Functor, source: &SzCategory, target: &SzCategory) -> Result<Functor> {
    let (c, d) = (&source.origin, &target.origin);
    f.check(c, d)?;
    if !f.preserves_inverses(c, d) {
        return Err(Error::NotAFunctor("inverses are not preserved".into()));
    }
    let image = |point: usize| {
        let mut members: Vec<MorId> = source
            .bernoulli
            .element(point)
            .members
            .iter()
            .map(|&a| f.morphism(a))
            .collect();
        members.sort_unstable();
        members.dedup();
        target.bernoulli.find(&members).ok_or_else(|| {
            Error::NotAFunctor(format!(
                "image of `{}` is not a point",
                source.bernoulli.name(point)
            ))
        })
    };
    let objects = source
        .objects()
        .map(|o| image(o.0).map(ObjectId))
        .collect::<Result<Vec<_>>>()?;
    let morphisms = source
        .morphisms()
        .map(|m| {
            let a = source.arrow(m);
            let p = image(a.point)?;
            target.find(p, f.morphism(a.mor)).ok_or_else(|| {
                Error::NotAFunctor(format!("image of `{}` is not an arrow", source.name(m)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Functor { objects, morphisms })
}

/// `η(A, s) = s`.
pub fn eta(sz: &SzCategory) -> Functor {
    Functor {
        objects: sz
            .objects()
            .map(|o| sz.bernoulli.element(o.0).object)
            .collect(),
        morphisms: sz.morphisms().map(|m| sz.arrow(m).mor).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::validate_fibred;
    use crate::category::{find_inverse_structure, validate_category};
    use crate::fixtures;

    fn ic(c: FiniteCategory) -> Arc<InverseCategory> {
        Arc::new(InverseCategory::new(c).unwrap())
    }

    fn sz(c: FiniteCategory, v: SzVariant) -> SzCategory {
        szendrei(&ic(c), v, &Limits::default()).unwrap()
    }

    fn names(sz: &SzCategory) -> Vec<String> {
        sz.morphisms().map(|m| sz.name(m).to_string()).collect()
    }

    /// Oracle for arrow counts: enumerate pairs (A, s) from the Bernoulli
    /// poset and filter by the defining conditions of each variant.
    fn brute_arrow_count(cat: &InverseCategory, v: SzVariant) -> usize {
        let p = crate::bernoulli::build_p(&Arc::new(cat.clone()), &Limits::default()).unwrap();
        let mut n = 0;
        for a in 0..p.len() {
            let el = p.element(a);
            for s in cat.morphisms() {
                let (e, irs) = (el.idempotent, cat.mul(s, cat.inv(s)));
                if el.object != cat.tgt(s) {
                    continue;
                }
                let ok = match v {
                    SzVariant::Global => cat.leq(e, irs),
                    SzVariant::StrictGlobal => e == irs,
                    SzVariant::Partial => {
                        cat.leq(e, irs) && el.contains(e) && el.contains(cat.mul(e, s))
                    }
                    SzVariant::StrictPartial => e == irs && el.contains(irs) && el.contains(s),
                };
                n += usize::from(ok);
            }
        }
        n
    }

    #[test]
    fn arrow_counts() {
        assert_eq!(sz(fixtures::z2(), SzVariant::Global).morphism_count(), 6);
        assert_eq!(sz(fixtures::trivial(), SzVariant::Global).morphism_count(), 1);
        assert_eq!(
            names(&sz(fixtures::z2(), SzVariant::Partial)),
            ["({e},e)", "({e,g},e)", "({e,g},g)"]
        );
        assert_eq!(sz(fixtures::i2(), SzVariant::Global).morphism_count(), 37);
        for c in [fixtures::z2(), fixtures::i2(), fixtures::g2(), fixtures::trivial()] {
            let cat = ic(c.clone());
            for v in SzVariant::ALL {
                let s = szendrei(&cat, v, &Limits::default()).unwrap();
                assert_eq!(s.morphism_count(), brute_arrow_count(&cat, v), "{v}");
                assert!(validate_category(&s).valid);
                assert!(find_inverse_structure(&s).is_ok());
            }
        }
    }

    #[test]
    fn self_action_of_trivial_category() {
        let a = FibredAction::self_action(ic(fixtures::trivial()));
        assert!(validate_fibred(&a, false).valid);
        let sd = semidirect_product(&a, false, &Limits::default()).unwrap();
        assert_eq!(sd.category.morphism_count(), 1);
        assert_eq!(sd.category.name(MorId(0)), "(1,1)");
    }

    #[test]
    fn composition_in_global_z2() {
        let s = sz(fixtures::z2(), SzVariant::Global);
        let a = s.arrow_named(&["g"], "g").unwrap();
        let b = s.arrow_named(&["e"], "g").unwrap();
        assert_eq!(s.name(s.compose(a, b).unwrap()), "({g},e)");
    }

    #[test]
    fn inverse_and_inner_endpoints() {
        let s = sz(fixtures::i2(), SzVariant::Global);
        for m in s.morphisms() {
            let a = s.arrow(m);
            let inv = s.arrow(s.inv(m));
            assert_eq!(inv.mor, s.origin.inv(a.mor));
            assert_eq!(s.objects().nth(inv.point).unwrap(), s.src(m));
            let ir = s.arrow(s.inner_target(m));
            assert_eq!((ir.point, ir.mor), (a.point, s.origin.inner_target(a.mor)));
        }
    }

    #[test]
    fn strict_expansions_are_groupoids() {
        for c in [fixtures::z2(), fixtures::i2(), fixtures::g2()] {
            for v in [SzVariant::StrictGlobal, SzVariant::StrictPartial] {
                let s = sz(c.clone(), v);
                for e in s.idempotents() {
                    assert_eq!(Some(e), s.identity(s.src(e)));
                }
            }
        }
    }

    #[test]
    fn partial_variants_are_subcategories() {
        for c in [fixtures::z2(), fixtures::i2(), fixtures::g2()] {
            for v in [SzVariant::Partial, SzVariant::StrictPartial] {
                let small = sz(c.clone(), v);
                let big = sz(c.clone(), v.global_counterpart());
                let f = Functor::by_equal_names(&small, &big).unwrap();
                f.check(&small, &big).unwrap();
                assert!(f.is_injective());
            }
        }
    }

    #[test]
    fn product_order_examples() {
        let s = sz(fixtures::z2(), SzVariant::Global);
        let (e, eg) = (
            s.arrow_named(&["e"], "e").unwrap(),
            s.arrow_named(&["e", "g"], "e").unwrap(),
        );
        assert!(s.product_order_leq(e, e));
        assert!(!s.product_order_leq(e, eg));

        let s = sz(fixtures::i2(), SzVariant::Global);
        let (a, b) = (
            s.arrow_named(&["id1"], "id1").unwrap(),
            s.arrow_named(&["id"], "id").unwrap(),
        );
        assert!(s.product_order_leq(a, b));
        for x in s.morphisms() {
            for y in s.morphisms() {
                s.product_order_leq(x, y);
            }
        }
    }

    #[test]
    fn wedge_examples() {
        let s = sz(fixtures::z2(), SzVariant::Global);
        let (e, eg) = (
            s.arrow_named(&["e"], "e").unwrap(),
            s.arrow_named(&["e", "g"], "e").unwrap(),
        );
        assert_eq!(s.wedge(e, e).unwrap(), e);
        assert_eq!(s.name(s.wedge(e, eg).unwrap()), "({e,g},e)");
        let g = s.arrow_named(&["g"], "g").unwrap();
        assert!(matches!(s.wedge(e, g), Err(Error::NotIdempotent(_))));

        let s = sz(fixtures::i2(), SzVariant::Global);
        let (a, b) = (
            s.arrow_named(&["id1"], "id1").unwrap(),
            s.arrow_named(&["id"], "id").unwrap(),
        );
        assert_eq!(s.name(s.wedge(a, b).unwrap()), "({id1},id1)");

        let s = sz(fixtures::g2(), SzVariant::Global);
        let (x, y) = (
            s.arrow_named(&["1X"], "1X").unwrap(),
            s.arrow_named(&["1Y"], "1Y").unwrap(),
        );
        assert!(matches!(s.wedge(x, y), Err(Error::NotComposable(..))));
    }

    #[test]
    fn wedge_is_greatest_lower_bound() {
        // Oracle: scan all idempotents for common lower bounds.
        for c in [fixtures::z2(), fixtures::i2()] {
            let s = sz(c, SzVariant::Global);
            let es = s.idempotents();
            for &a in &es {
                for &b in &es {
                    let Ok(w) = s.wedge(a, b) else { continue };
                    assert!(s.is_idempotent(w));
                    let lower: Vec<MorId> = es
                        .iter()
                        .copied()
                        .filter(|&c| s.product_order_leq(c, a) && s.product_order_leq(c, b))
                        .collect();
                    assert!(lower.contains(&w));
                    assert!(lower.iter().all(|&c| s.product_order_leq(c, w)));
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let s = sz(fixtures::i2(), SzVariant::Global);
        let a = s.arrow_named(&["id"], "id").unwrap();
        let e = s.arrow_named(&["id1"], "id1").unwrap();
        assert_eq!(s.name(s.restriction(e, a).unwrap()), "({id1},id1)");
        for m in s.morphisms() {
            assert_eq!(s.restriction(s.inner_source(m), m).unwrap(), m);
            assert_eq!(s.corestriction(m, s.inner_target(m)).unwrap(), m);
        }
    }

    #[test]
    fn corestriction_examples() {
        let s = sz(fixtures::i2(), SzVariant::Global);
        let a = s.arrow_named(&["id", "swap"], "swap").unwrap();
        let bad = s.arrow_named(&["id1"], "id1").unwrap();
        assert!(matches!(s.corestriction(a, bad), Err(Error::PreconditionFailed(_))));
        let e = s.arrow_named(&["id1", "m21"], "id1").unwrap();
        let r = s.corestriction(a, e).unwrap();
        assert_eq!(s.name(r), "({id1,m21},m21)");
        // Oracle: the unique arrow below `a` whose inner target is `e`.
        let found: Vec<MorId> = s
            .morphisms()
            .filter(|&b| s.product_order_leq(b, a) && s.inner_target(b) == e)
            .collect();
        assert_eq!(found, [r]);
    }

    #[test]
    fn pseudo_product_examples() {
        let s = sz(fixtures::z2(), SzVariant::Global);
        let g = s.arrow_named(&["g"], "g").unwrap();
        assert_eq!(s.name(s.pseudo_product(g, g).unwrap()), "({e,g},e)");
        let eg = s.arrow_named(&["e"], "g").unwrap();
        assert_eq!(s.pseudo_product(g, eg).unwrap(), s.compose(g, eg).unwrap());
        assert_eq!(s.name(s.pseudo_product(g, eg).unwrap()), "({g},e)");
        for &a in &s.idempotents() {
            for &b in &s.idempotents() {
                assert_eq!(s.pseudo_product(a, b).unwrap(), s.pseudo_product(b, a).unwrap());
            }
        }
        let g2 = sz(fixtures::g2(), SzVariant::Global);
        let (x, y) = (
            g2.arrow_named(&["1X"], "1X").unwrap(),
            g2.arrow_named(&["1Y"], "1Y").unwrap(),
        );
        assert!(matches!(g2.pseudo_product(x, y), Err(Error::NotComposable(..))));
    }

    #[test]
    fn inner_expansions() {
        let star = ObjectId(0);
        let p = inner_szendrei(&sz(fixtures::z2(), SzVariant::Partial), star).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.is_inverse_semigroup());
        assert_eq!(p.identity().map(|i| p.names[i].as_str()), Some("({e},e)"));
        let g = inner_szendrei(&sz(fixtures::z2(), SzVariant::Global), star).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.is_inverse_semigroup());
        let t = inner_szendrei(&sz(fixtures::trivial(), SzVariant::Global), star).unwrap();
        assert_eq!(t.len(), 1);
        let sp = inner_szendrei(&sz(fixtures::i2(), SzVariant::StrictPartial), star).unwrap();
        assert!(sp.is_inverse_semigroup());
        assert!(sp.identity().is_some());
    }

    #[test]
    fn exel_semigroup_of_z2() {
        // S(G): pairs (A, g) with A ⊆ G finite, e ∈ A, g ∈ A, product
        // (A, g)(B, h) = (A ∪ gB, gh).
        let z2 = ic(fixtures::z2());
        let (e, g) = (z2.morphism("e").unwrap(), z2.morphism("g").unwrap());
        let subsets = [vec![e], vec![e, g]];
        let mut exel = Vec::new();
        for a in &subsets {
            for &h in &[e, g] {
                if a.contains(&h) {
                    exel.push((a.clone(), h));
                }
            }
        }
        let mul = |(a, x): &(Vec<MorId>, MorId), (b, y): &(Vec<MorId>, MorId)| {
            let mut u = a.clone();
            u.extend(left_mul(&z2, *x, b));
            u.sort();
            u.dedup();
            (u, z2.mul(*x, *y))
        };
        let s = szendrei(&z2, SzVariant::Partial, &Limits::default()).unwrap();
        let inner = inner_szendrei(&s, ObjectId(0)).unwrap();
        assert_eq!(inner.len(), exel.len());
        let key = |m: MorId| (s.set(m).members.clone(), s.arrow(m).mor);
        for i in 0..inner.len() {
            for j in 0..inner.len() {
                let expected = mul(&key(inner.arrows[i]), &key(inner.arrows[j]));
                assert_eq!(key(inner.arrows[inner.product(i, j)]), expected);
            }
        }
    }

    #[test]
    fn functoriality_and_eta() {
        let l = Limits::default();
        let (z2, t1) = (ic(fixtures::z2()), ic(fixtures::trivial()));
        let (sz2, st1) = (
            szendrei(&z2, SzVariant::Global, &l).unwrap(),
            szendrei(&t1, SzVariant::Global, &l).unwrap(),
        );
        let id = Functor::identity(&z2);
        assert_eq!(sz_functor(&id, &sz2, &sz2).unwrap(), Functor::identity(&sz2));

        let collapse = Functor::from_names(&z2, &t1, [("e", "1"), ("g", "1")]).unwrap();
        let f = sz_functor(&collapse, &sz2, &st1).unwrap();
        f.check(&sz2, &st1).unwrap();
        assert!(f.morphisms.iter().all(|&m| m == MorId(0)));
        assert_eq!(eta(&sz2).then(&collapse), f.then(&eta(&st1)));

        let include = Functor::from_names(&t1, &z2, [("1", "e")]).unwrap();
        let f = sz_functor(&include, &st1, &sz2).unwrap();
        f.check(&st1, &sz2).unwrap();
        assert!(f.is_injective());
        assert_eq!(eta(&st1).then(&include), f.then(&eta(&sz2)));

        let composite = sz_functor(&include.then(&collapse), &st1, &st1).unwrap();
        assert_eq!(
            composite,
            sz_functor(&include, &st1, &sz2)
                .unwrap()
                .then(&sz_functor(&collapse, &sz2, &st1).unwrap())
        );
        let e = eta(&sz2);
        e.check(&sz2, &z2).unwrap();
        let mut hit: Vec<MorId> = e.morphisms.clone();
        hit.sort();
        hit.dedup();
        assert_eq!(hit.len(), z2.morphism_count());
    }

    #[test]
    fn variant_parsing() {
        for v in SzVariant::ALL {
            assert_eq!(v.as_str().parse::<SzVariant>().unwrap(), v);
        }
        assert!("strict".parse::<SzVariant>().is_err());
    }

    #[test]
    fn arrow_cap() {
        let limits = Limits::default().with_max_elements(30);
        assert!(matches!(
            szendrei(&ic(fixtures::i2()), SzVariant::Global, &limits),
            Err(Error::SizeCapExceeded { estimate: 37, .. })
        ));
    }
}
