//! Cauchy completions, restriction groupoids, enlargements and equivalences.
//!
//! Objects of the completion are pairs `(X,e)` with `e` idempotent at `X`;
//! a morphism `(e,s,f): (X,e) → (Y,f)` is an `s: X → Y` with `se = s = fs`,
//! and `(f,t,g)(e,s,f) = (e,ts,g)`.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::GroupTable;
use crate::category::{
    subcategory, FiniteCategory, Functor, InverseCategory, MorId, Morphism, ObjectId,
};
use crate::error::{Error, Limits, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CauchyObject {
    pub object: ObjectId,
    pub idempotent: MorId,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct CauchyMorphism {
    pub source: CauchyObject,
    pub arrow: MorId,
    pub target: CauchyObject,
}

#[derive(Clone, Debug)]
pub struct CauchyCompletion {
    pub category: FiniteCategory,
    pub objects: Vec<CauchyObject>,
    pub morphisms: Vec<CauchyMorphism>,
    object_index: HashMap<CauchyObject, ObjectId>,
    lookup: HashMap<(MorId, MorId, MorId), MorId>,
}

/// Builds the Cauchy completion of any finite category.
pub fn cauchy_completion(cat: &FiniteCategory, limits: &Limits) -> Result<CauchyCompletion> {
    let idem: Vec<Vec<MorId>> = cat.objects().map(|x| cat.idempotents_at(x)).collect();
    let fits = |e: MorId, s: MorId, f: MorId| {
        cat.compose(s, e) == Some(s) && cat.compose(f, s) == Some(s)
    };
    let estimate = cat
        .morphisms()
        .map(|s| idem[cat.src(s).0].len() * idem[cat.tgt(s).0].len())
        .sum();
    limits.check("Cauchy completion morphisms", estimate, limits.max_elements)?;

    let objects: Vec<CauchyObject> = cat
        .objects()
        .flat_map(|x| {
            idem[x.0].iter().map(move |&e| CauchyObject {
                object: x,
                idempotent: e,
            })
        })
        .collect();
    let object_index: HashMap<CauchyObject, ObjectId> =
        objects.iter().enumerate().map(|(i, &o)| (o, ObjectId(i))).collect();
    let mut morphisms = Vec::new();
    for s in cat.morphisms() {
        let (x, y) = (cat.src(s), cat.tgt(s));
        for &e in &idem[x.0] {
            for &f in &idem[y.0] {
                if fits(e, s, f) {
                    morphisms.push(CauchyMorphism {
                        source: CauchyObject { object: x, idempotent: e },
                        arrow: s,
                        target: CauchyObject { object: y, idempotent: f },
                    });
                }
            }
        }
    }
    let lookup: HashMap<(MorId, MorId, MorId), MorId> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| ((m.source.idempotent, m.arrow, m.target.idempotent), MorId(i)))
        .collect();
    let names = objects
        .iter()
        .map(|o| format!("({},{})", cat.object_name(o.object), cat.name(o.idempotent)))
        .collect();
    let cells = morphisms
        .iter()
        .map(|m| Morphism {
            name: format!(
                "({},{},{})",
                cat.name(m.source.idempotent),
                cat.name(m.arrow),
                cat.name(m.target.idempotent)
            ),
            src: object_index[&m.source],
            tgt: object_index[&m.target],
        })
        .collect();
    let identities = objects
        .iter()
        .map(|o| lookup[&(o.idempotent, o.idempotent, o.idempotent)])
        .collect();
    let category = FiniteCategory::generate(names, cells, identities, |g, f| {
        let (g, f) = (morphisms[g.0], morphisms[f.0]);
        let ts = cat.compose(g.arrow, f.arrow)?;
        lookup
            .get(&(f.source.idempotent, ts, g.target.idempotent))
            .copied()
    })?;
    Ok(CauchyCompletion {
        category,
        objects,
        morphisms,
        object_index,
        lookup,
    })
}

impl CauchyCompletion {
    pub fn find(&self, e: MorId, s: MorId, f: MorId) -> Option<MorId> {
        self.lookup.get(&(e, s, f)).copied()
    }

    pub fn object_of(&self, x: ObjectId, e: MorId) -> Option<ObjectId> {
        self.object_index
            .get(&CauchyObject {
                object: x,
                idempotent: e,
            })
            .copied()
    }

    /// `X ↦ (X,1_X)`, `s ↦ (1_X,s,1_Y)`; fails if some object lacks an
    /// identity.
    pub fn embedding(&self, cat: &FiniteCategory) -> Result<Functor> {
        let unit = |x: ObjectId| {
            cat.identity(x)
                .ok_or_else(|| Error::PreconditionFailed(format!("`{}` has no identity", cat.object_name(x))))
        };
        let objects = cat
            .objects()
            .map(|x| Ok(self.object_of(x, unit(x)?).expect("identity object")))
            .collect::<Result<Vec<_>>>()?;
        let morphisms = cat
            .morphisms()
            .map(|s| {
                let (e, f) = (unit(cat.src(s))?, unit(cat.tgt(s))?);
                Ok(self.find(e, s, f).expect("identities fit every morphism"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor { objects, morphisms })
    }

    pub fn to_inverse(&self) -> Result<InverseCategory> {
        InverseCategory::new(self.category.clone())
    }
}

/// Morphisms with a two-sided inverse.
pub fn isomorphisms(cat: &FiniteCategory) -> Vec<MorId> {
    cat.morphisms()
        .filter(|&s| {
            let (x, y) = (cat.src(s), cat.tgt(s));
            cat.hom(y, x).any(|t| {
                cat.compose(t, s) == cat.identity(x) && cat.compose(s, t) == cat.identity(y)
            })
        })
        .collect()
}

/// Whether `e = ts` for some `s: X → Y`, `t: Y → X` with `st = 1_Y`.
pub fn splits(cat: &FiniteCategory, e: MorId) -> bool {
    let x = cat.src(e);
    cat.objects().any(|y| {
        cat.hom(x, y).any(|s| {
            cat.hom(y, x)
                .any(|t| cat.compose(t, s) == Some(e) && cat.compose(s, t) == cat.identity(y))
        })
    })
}

/// The invertible part of a completion, with its inclusion.
pub fn restriction_groupoid(completion: &CauchyCompletion) -> Result<(FiniteCategory, Functor)> {
    subcategory(&completion.category, &isomorphisms(&completion.category))
}

#[derive(Clone, Debug)]
pub struct IdempotentClass {
    /// The member with the least name.
    pub representative: MorId,
    pub members: Vec<MorId>,
    pub group: GroupTable,
}

/// Idempotents up to `e ~ f` iff `s°s = e` and `ss° = f` for some `s`,
/// ordered by the position of their representatives.
pub fn idempotent_classes(cat: &InverseCategory) -> Result<Vec<IdempotentClass>> {
    let mut class: HashMap<MorId, usize> = HashMap::new();
    let mut groups: Vec<Vec<MorId>> = Vec::new();
    for e in cat.idempotents() {
        let found = groups.iter().position(|g| {
            cat.hom(cat.src(e), cat.src(g[0]))
                .any(|s| cat.inner_source(s) == e && cat.inner_target(s) == g[0])
        });
        match found {
            Some(i) => {
                groups[i].push(e);
                class.insert(e, i);
            }
            None => {
                class.insert(e, groups.len());
                groups.push(vec![e]);
            }
        }
    }
    let mut classes = groups
        .into_iter()
        .map(|members| {
            let representative = *members
                .iter()
                .min_by_key(|&&e| cat.name(e))
                .expect("nonempty class");
            Ok(IdempotentClass {
                group: GroupTable::of_idempotent(cat, representative)?,
                representative,
                members,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by_key(|c| c.representative);
    Ok(classes)
}

/// The outcome of one enlargement axiom, with the names of failing data.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub witnesses: Vec<Vec<String>>,
}

impl AxiomCheck {
    fn from_witnesses(witnesses: Vec<Vec<String>>) -> Self {
        AxiomCheck {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnlargementReport {
    pub axiom1: AxiomCheck,
    pub axiom2: AxiomCheck,
    pub axiom3: AxiomCheck,
    pub overall: bool,
}

/// Checks whether `d` is an enlargement of `c` along `embedding`:
///
/// * (I) the idempotents of `c` at each object are down-closed among those
///   of `d`;
/// * (II) every `s` of `d` between objects of `c` with `se = s = fs` for
///   idempotents `e`, `f` of `c` lies in `c`;
/// * (III) every idempotent `f` of `d` is `ss°` for some `s` with `s°s` an
///   idempotent of `c`.
///
/// Witnesses name morphisms of `d`, except the first entry for (I), which
/// names the idempotent of `c`.
pub fn enlargement_check(
    c: &InverseCategory,
    d: &InverseCategory,
    embedding: &Functor,
) -> Result<EnlargementReport> {
    embedding
        .check(c, d)
        .map_err(|e| Error::NotASubcategory(e.to_string()))?;
    if !embedding.is_injective() {
        return Err(Error::NotASubcategory("embedding is not injective".into()));
    }
    if !embedding.preserves_inverses(c, d) {
        return Err(Error::NotASubcategory("embedding does not preserve inverses".into()));
    }
    let mut in_image = vec![false; d.morphism_count()];
    for &m in &embedding.morphisms {
        in_image[m.0] = true;
    }
    let mut c_idem = vec![false; d.morphism_count()];
    for e in c.idempotents() {
        c_idem[embedding.morphism(e).0] = true;
    }

    let mut w1 = Vec::new();
    for e in c.idempotents() {
        let fe = embedding.morphism(e);
        for f in d.idempotents_at(d.src(fe)) {
            if d.leq(f, fe) && !in_image[f.0] {
                w1.push(vec![c.name(e).to_string(), d.name(f).to_string()]);
            }
        }
    }

    let mut w2 = Vec::new();
    for x in c.objects() {
        for y in c.objects() {
            let (fx, fy) = (embedding.object(x), embedding.object(y));
            for s in d.hom(fx, fy) {
                if in_image[s.0] {
                    continue;
                }
                let bridged = c.idempotents_at(x).iter().any(|&e| {
                    d.compose(s, embedding.morphism(e)) == Some(s)
                }) && c
                    .idempotents_at(y)
                    .iter()
                    .any(|&f| d.compose(embedding.morphism(f), s) == Some(s));
                if bridged {
                    w2.push(vec![d.name(s).to_string()]);
                }
            }
        }
    }

    let mut w3 = Vec::new();
    for f in d.idempotents() {
        let reached = d
            .morphisms()
            .any(|s| d.inner_target(s) == f && c_idem[d.inner_source(s).0]);
        if !reached {
            w3.push(vec![d.name(f).to_string()]);
        }
    }

    let (axiom1, axiom2, axiom3) = (
        AxiomCheck::from_witnesses(w1),
        AxiomCheck::from_witnesses(w2),
        AxiomCheck::from_witnesses(w3),
    );
    Ok(EnlargementReport {
        overall: axiom1.holds && axiom2.holds && axiom3.holds,
        axiom1,
        axiom2,
        axiom3,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub faithful: AxiomCheck,
    pub full: AxiomCheck,
    pub essentially_surjective: AxiomCheck,
    pub equivalent: bool,
}

/// Decides whether `f: c → d` is fully faithful and essentially surjective
/// by exhaustive search.
pub fn equivalence_check(c: &FiniteCategory, d: &FiniteCategory, f: &Functor) -> Result<EquivalenceReport> {
    f.check(c, d)?;
    let mut unfaithful = Vec::new();
    let mut not_full = Vec::new();
    for x in c.objects() {
        for y in c.objects() {
            let mut hit: HashMap<MorId, MorId> = HashMap::new();
            for s in c.hom(x, y) {
                if let Some(t) = hit.insert(f.morphism(s), s) {
                    unfaithful.push(vec![c.name(t).to_string(), c.name(s).to_string()]);
                }
            }
            for t in d.hom(f.object(x), f.object(y)) {
                if !hit.contains_key(&t) {
                    not_full.push(vec![d.name(t).to_string()]);
                }
            }
        }
    }
    let isos = isomorphisms(d);
    let mut missed = Vec::new();
    for y in d.objects() {
        let reached = c
            .objects()
            .any(|x| isos.iter().any(|&s| d.src(s) == f.object(x) && d.tgt(s) == y));
        if !reached {
            missed.push(vec![d.object_name(y).to_string()]);
        }
    }
    let (faithful, full, essentially_surjective) = (
        AxiomCheck::from_witnesses(unfaithful),
        AxiomCheck::from_witnesses(not_full),
        AxiomCheck::from_witnesses(missed),
    );
    Ok(EquivalenceReport {
        equivalent: faithful.holds && full.holds && essentially_surjective.holds,
        faithful,
        full,
        essentially_surjective,
    })
}

/// The functor `(X,e) ↦ (FX,Fe)`, `(e,s,f) ↦ (Fe,Fs,Ff)` induced on
/// completions.
pub fn completion_functor(f: &Functor, source: &CauchyCompletion, target: &CauchyCompletion) -> Result<Functor> {
    let objects = source
        .objects
        .iter()
        .map(|o| {
            target
                .object_of(f.object(o.object), f.morphism(o.idempotent))
                .ok_or_else(|| Error::NotAFunctor("idempotent not preserved".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = source
        .morphisms
        .iter()
        .map(|m| {
            target
                .find(
                    f.morphism(m.source.idempotent),
                    f.morphism(m.arrow),
                    f.morphism(m.target.idempotent),
                )
                .ok_or_else(|| Error::NotAFunctor("morphism of the completion not preserved".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Functor { objects, morphisms })
}
