//! Finite categories given by explicit composition tables, and the inverse
//! categories among them.
//!
//! A [`FiniteCategory`] is only a table: it may violate the category axioms,
//! and [`validate_category`] reports every violation it finds. An
//! [`InverseCategory`] can only be obtained from a table that validates and in
//! which every morphism has exactly one generalized inverse, so all of its
//! accessors are total.
//!
//! Composition follows the usual convention: `compose(g, f)` is "`g` after
//! `f`", defined exactly when `tgt(f) == src(g)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub usize);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: ObjectId,
    pub tgt: ObjectId,
}

const UNDEFINED: u32 = u32::MAX;

/// A category presented by a composition table.
///
/// The table is keyed by composable pairs only: for each `f` there is one row
/// holding `g ∘ f` for every `g` in `Star(tgt f)`. Entries supplied for pairs
/// that are not composable are kept aside so validation can report them.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<MorId>>,
    star: Vec<Vec<MorId>>,
    costar: Vec<Vec<MorId>>,
    star_pos: Vec<usize>,
    row_offset: Vec<usize>,
    table: Vec<u32>,
    stray: Vec<(MorId, MorId, MorId)>,
    conflicts: Vec<(MorId, MorId, MorId)>,
    object_index: HashMap<String, ObjectId>,
    morphism_index: HashMap<String, MorId>,
}

impl FiniteCategory {
    /// Builds a category from generated data. `compose` is queried once for
    /// every composable pair `(g, f)`.
    pub fn generate(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> Option<MorId>,
    ) -> Result<Self> {
        let identities = identities.into_iter().map(Some).collect();
        let mut cat = Self::assemble(objects, morphisms, identities)?;
        for f in 0..cat.morphisms.len() {
            let f = MorId(f);
            let y = cat.morphisms[f.0].tgt;
            for gi in 0..cat.star[y.0].len() {
                let g = cat.star[y.0][gi];
                if let Some(r) = compose(g, f) {
                    cat.set(g, f, r);
                }
            }
        }
        Ok(cat)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Option<MorId>>,
    ) -> Result<Self> {
        let mut object_index = HashMap::with_capacity(objects.len());
        for (i, name) in objects.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::UndeclaredName(String::new()));
            }
            if object_index.insert(name.clone(), ObjectId(i)).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let mut morphism_index = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if m.name.is_empty() {
                return Err(Error::UndeclaredName(String::new()));
            }
            if morphism_index.insert(m.name.clone(), MorId(i)).is_some() {
                return Err(Error::DuplicateName(m.name.clone()));
            }
            if m.src.0 >= objects.len() || m.tgt.0 >= objects.len() {
                return Err(Error::UndeclaredName(format!("object of `{}`", m.name)));
            }
        }
        let mut star = vec![Vec::new(); objects.len()];
        let mut costar = vec![Vec::new(); objects.len()];
        let mut star_pos = vec![0; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            star_pos[i] = star[m.src.0].len();
            star[m.src.0].push(MorId(i));
            costar[m.tgt.0].push(MorId(i));
        }
        let mut row_offset = Vec::with_capacity(morphisms.len());
        let mut len = 0usize;
        for m in &morphisms {
            row_offset.push(len);
            len += star[m.tgt.0].len();
        }
        Ok(FiniteCategory {
            objects,
            morphisms,
            identities,
            star,
            costar,
            star_pos,
            row_offset,
            table: vec![UNDEFINED; len],
            stray: Vec::new(),
            conflicts: Vec::new(),
            object_index,
            morphism_index,
        })
    }

    fn set(&mut self, g: MorId, f: MorId, r: MorId) {
        if self.morphisms[g.0].src != self.morphisms[f.0].tgt {
            self.stray.push((g, f, r));
            return;
        }
        let slot = self.row_offset[f.0] + self.star_pos[g.0];
        if self.table[slot] == UNDEFINED {
            self.table[slot] = r.0 as u32;
        } else if self.table[slot] != r.0 as u32 {
            self.conflicts.push((g, f, r));
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.objects[x.0]
    }

    pub fn name(&self, s: MorId) -> &str {
        &self.morphisms[s.0].name
    }

    pub fn object_id(&self, name: &str) -> Option<ObjectId> {
        self.object_index.get(name).copied()
    }

    pub fn mor_id(&self, name: &str) -> Option<MorId> {
        self.morphism_index.get(name).copied()
    }

    /// Looks up a morphism by name, failing with `UNDECLARED_NAME`.
    pub fn morphism(&self, name: &str) -> Result<MorId> {
        self.mor_id(name)
            .ok_or_else(|| Error::UndeclaredName(name.to_string()))
    }

    pub fn object(&self, name: &str) -> Result<ObjectId> {
        self.object_id(name)
            .ok_or_else(|| Error::UndeclaredName(name.to_string()))
    }

    pub fn src(&self, s: MorId) -> ObjectId {
        self.morphisms[s.0].src
    }

    pub fn tgt(&self, s: MorId) -> ObjectId {
        self.morphisms[s.0].tgt
    }

    pub fn identity(&self, x: ObjectId) -> Option<MorId> {
        self.identities[x.0]
    }

    /// Morphisms starting at `x`, in declaration order.
    pub fn star(&self, x: ObjectId) -> &[MorId] {
        &self.star[x.0]
    }

    /// Morphisms ending at `y`, in declaration order.
    pub fn costar(&self, y: ObjectId) -> &[MorId] {
        &self.costar[y.0]
    }

    pub fn hom(&self, x: ObjectId, y: ObjectId) -> impl Iterator<Item = MorId> + '_ {
        self.star[x.0]
            .iter()
            .copied()
            .filter(move |&s| self.morphisms[s.0].tgt == y)
    }

    /// `g ∘ f`, or `None` when the pair is not composable (or the table has
    /// no entry for it).
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.morphisms[g.0].src != self.morphisms[f.0].tgt {
            return None;
        }
        match self.table[self.row_offset[f.0] + self.star_pos[g.0]] {
            UNDEFINED => None,
            r => Some(MorId(r as usize)),
        }
    }

    /// `a ∘ b ∘ c`.
    pub fn compose3(&self, a: MorId, b: MorId, c: MorId) -> Option<MorId> {
        self.compose(a, self.compose(b, c)?)
    }

    pub fn is_idempotent(&self, e: MorId) -> bool {
        self.compose(e, e) == Some(e)
    }

    /// All idempotent morphisms, in declaration order.
    pub fn idempotents(&self) -> Vec<MorId> {
        self.morphisms().filter(|&e| self.is_idempotent(e)).collect()
    }

    /// Idempotents with source and target `x`.
    pub fn idempotents_at(&self, x: ObjectId) -> Vec<MorId> {
        self.hom(x, x).filter(|&e| self.is_idempotent(e)).collect()
    }

    pub fn names<'a>(&'a self, ms: impl IntoIterator<Item = &'a MorId>) -> Vec<String> {
        ms.into_iter().map(|&m| self.name(m).to_string()).collect()
    }
}

/// Incremental construction of a [`FiniteCategory`] from names.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    composition: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> &mut Self {
        self.objects.push(name.into());
        self
    }

    pub fn morphism(
        &mut self,
        name: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> &mut Self {
        self.morphisms.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn identity(&mut self, object: impl Into<String>, morphism: impl Into<String>) -> &mut Self {
        self.identities.push((object.into(), morphism.into()));
        self
    }

    /// Records `left ∘ right = result`.
    pub fn compose(
        &mut self,
        left: impl Into<String>,
        right: impl Into<String>,
        result: impl Into<String>,
    ) -> &mut Self {
        self.composition
            .push((left.into(), right.into(), result.into()));
        self
    }

    pub fn build(&self) -> Result<FiniteCategory> {
        let objects = self.objects.clone();
        let object_index: HashMap<&str, usize> = objects
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let obj = |n: &str| {
            object_index
                .get(n)
                .map(|&i| ObjectId(i))
                .ok_or_else(|| Error::UndeclaredName(n.to_string()))
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|(name, s, t)| {
                Ok(Morphism {
                    name: name.clone(),
                    src: obj(s)?,
                    tgt: obj(t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut identities = vec![None; objects.len()];
        let mut cat = FiniteCategory::assemble(objects, morphisms, Vec::new())?;
        for (o, m) in &self.identities {
            let x = cat.object(o)?;
            let s = cat.morphism(m)?;
            if identities[x.0].replace(s).is_some() {
                return Err(Error::DuplicateName(format!("identity of `{o}`")));
            }
        }
        cat.identities = identities;
        for (l, r, res) in &self.composition {
            let (g, f, v) = (cat.morphism(l)?, cat.morphism(r)?, cat.morphism(res)?);
            cat.set(g, f, v);
        }
        Ok(cat)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub witnesses: Vec<String>,
}

impl Violation {
    pub fn new(rule: impl Into<String>, witnesses: Vec<String>) -> Self {
        Violation {
            rule: rule.into(),
            witnesses,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn witnesses(&self, rule: &str) -> Vec<&[String]> {
        self.violations
            .iter()
            .filter(|v| v.rule == rule)
            .map(|v| v.witnesses.as_slice())
            .collect()
    }
}

/// Checks the category axioms exhaustively and lists every violation.
pub fn validate_category(cat: &FiniteCategory) -> ValidationReport {
    let mut out = Vec::new();
    let n = |s: MorId| cat.name(s).to_string();

    for x in cat.objects() {
        match cat.identity(x) {
            None => out.push(Violation::new(
                "missing-identity",
                vec![cat.object_name(x).to_string()],
            )),
            Some(i) if cat.src(i) != x || cat.tgt(i) != x => {
                out.push(Violation::new("identity-endpoints", vec![n(i)]))
            }
            Some(_) => {}
        }
    }
    for &(g, f, _) in &cat.stray {
        out.push(Violation::new("composability", vec![n(g), n(f)]));
    }
    for &(g, f, _) in &cat.conflicts {
        out.push(Violation::new("conflicting-entry", vec![n(g), n(f)]));
    }
    for f in cat.morphisms() {
        for &g in cat.star(cat.tgt(f)) {
            match cat.compose(g, f) {
                None => out.push(Violation::new("missing-composite", vec![n(g), n(f)])),
                Some(r) if cat.src(r) != cat.src(f) || cat.tgt(r) != cat.tgt(g) => out.push(
                    Violation::new("composite-endpoints", vec![n(g), n(f), n(r)]),
                ),
                Some(_) => {}
            }
        }
    }
    for f in cat.morphisms() {
        if let Some(i) = cat.identity(cat.tgt(f)) {
            if cat.compose(i, f).is_some_and(|r| r != f) {
                out.push(Violation::new("identity", vec![n(i), n(f)]));
            }
        }
        if let Some(i) = cat.identity(cat.src(f)) {
            if cat.compose(f, i).is_some_and(|r| r != f) {
                out.push(Violation::new("identity", vec![n(f), n(i)]));
            }
        }
    }
    for f in cat.morphisms() {
        for &g in cat.star(cat.tgt(f)) {
            let Some(gf) = cat.compose(g, f) else { continue };
            for &h in cat.star(cat.tgt(g)) {
                let Some(hg) = cat.compose(h, g) else { continue };
                match (cat.compose(h, gf), cat.compose(hg, f)) {
                    (Some(a), Some(b)) if a != b => {
                        out.push(Violation::new("associativity", vec![n(h), n(g), n(f)]))
                    }
                    _ => {}
                }
            }
        }
    }
    ValidationReport::from_violations(out)
}

/// The map `s ↦ s°`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseStructure {
    inv: Vec<MorId>,
}

impl InverseStructure {
    pub fn get(&self, s: MorId) -> MorId {
        self.inv[s.0]
    }

    pub fn as_slice(&self) -> &[MorId] {
        &self.inv
    }

    /// Checks involution, the regularity equations, anti-multiplicativity
    /// and commutation of idempotents at each object.
    pub fn check_laws(&self, cat: &FiniteCategory) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = |s: MorId| cat.name(s).to_string();
        for s in cat.morphisms() {
            let t = self.get(s);
            if self.get(t) != s {
                out.push(Violation::new("involution", vec![n(s)]));
            }
            if cat.compose3(s, t, s) != Some(s) || cat.compose3(t, s, t) != Some(t) {
                out.push(Violation::new("regularity", vec![n(s)]));
            }
        }
        for f in cat.morphisms() {
            for &g in cat.star(cat.tgt(f)) {
                let Some(gf) = cat.compose(g, f) else { continue };
                if cat.compose(self.get(f), self.get(g)) != Some(self.get(gf)) {
                    out.push(Violation::new("anti-homomorphism", vec![n(g), n(f)]));
                }
            }
        }
        for x in cat.objects() {
            let es = cat.idempotents_at(x);
            for &e in &es {
                for &f in &es {
                    if cat.compose(e, f) != cat.compose(f, e) {
                        out.push(Violation::new("idempotents-commute", vec![n(e), n(f)]));
                    }
                }
            }
        }
        out
    }
}

/// Finds the generalized inverse of every morphism by exhaustive search,
/// failing on the first morphism (in declaration order) that has none or
/// several.
pub fn find_inverse_structure(cat: &FiniteCategory) -> Result<InverseStructure> {
    let mut inv = Vec::with_capacity(cat.morphism_count());
    for s in cat.morphisms() {
        let candidates: Vec<MorId> = cat
            .hom(cat.tgt(s), cat.src(s))
            .filter(|&t| cat.compose3(s, t, s) == Some(s) && cat.compose3(t, s, t) == Some(t))
            .collect();
        if candidates.len() != 1 {
            return Err(Error::NotInverseCategory {
                morphism: cat.name(s).to_string(),
                count: candidates.len(),
            });
        }
        inv.push(candidates[0]);
    }
    Ok(InverseStructure { inv })
}

/// Outer and inner source/target of a morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InnerOuter {
    pub outer_source: ObjectId,
    pub outer_target: ObjectId,
    pub inner_source: MorId,
    pub inner_target: MorId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationClasses {
    /// `L`-classes keyed by the common `s°s`.
    pub l_classes: Vec<(MorId, Vec<MorId>)>,
    /// `R`-classes keyed by the common `ss°`.
    pub r_classes: Vec<(MorId, Vec<MorId>)>,
    pub star: Vec<Vec<MorId>>,
    pub costar: Vec<Vec<MorId>>,
}

impl RelationClasses {
    pub fn r_class_of(&self, e: MorId) -> &[MorId] {
        self.r_classes
            .iter()
            .find(|(k, _)| *k == e)
            .map(|(_, v)| v.as_slice())
            .unwrap_or(&[])
    }
}

/// A validated category together with its (unique) inverse structure.
#[derive(Clone, Debug)]
pub struct InverseCategory {
    cat: FiniteCategory,
    inv: InverseStructure,
    idempotent: Vec<bool>,
}

impl Deref for InverseCategory {
    type Target = FiniteCategory;

    fn deref(&self) -> &FiniteCategory {
        &self.cat
    }
}

impl InverseCategory {
    pub fn new(cat: FiniteCategory) -> Result<Self> {
        let report = validate_category(&cat);
        if !report.valid {
            return Err(Error::InvalidCategory(report));
        }
        let inv = find_inverse_structure(&cat)?;
        let idempotent = cat.morphisms().map(|e| cat.is_idempotent(e)).collect();
        Ok(InverseCategory {
            cat,
            inv,
            idempotent,
        })
    }

    /// Like [`InverseCategory::new`], additionally checking that a supplied
    /// inverse map is the computed one.
    pub fn with_inverse(cat: FiniteCategory, supplied: &[(MorId, MorId)]) -> Result<Self> {
        let ic = Self::new(cat)?;
        for &(s, t) in supplied {
            if ic.inv(s) != t {
                return Err(Error::InverseMismatch(ic.name(s).to_string()));
            }
        }
        Ok(ic)
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn into_category(self) -> FiniteCategory {
        self.cat
    }

    pub fn inverse_structure(&self) -> &InverseStructure {
        &self.inv
    }

    pub fn inv(&self, s: MorId) -> MorId {
        self.inv.get(s)
    }

    /// Identity of a validated category; always present.
    pub fn id_of(&self, x: ObjectId) -> MorId {
        self.cat.identities[x.0].expect("validated category has identities")
    }

    pub fn is_idempotent(&self, e: MorId) -> bool {
        self.idempotent[e.0]
    }

    /// `s ∘ t`, for callers that know the pair is composable.
    pub(crate) fn mul(&self, s: MorId, t: MorId) -> MorId {
        self.cat
            .compose(s, t)
            .unwrap_or_else(|| panic!("`{}` and `{}` are not composable", self.name(s), self.name(t)))
    }

    /// `s°s`, an idempotent at the source of `s`.
    pub fn inner_source(&self, s: MorId) -> MorId {
        self.mul(self.inv(s), s)
    }

    /// `ss°`, an idempotent at the target of `s`.
    pub fn inner_target(&self, s: MorId) -> MorId {
        self.mul(s, self.inv(s))
    }

    pub fn inner_outer(&self, s: MorId) -> InnerOuter {
        InnerOuter {
            outer_source: self.src(s),
            outer_target: self.tgt(s),
            inner_source: self.inner_source(s),
            inner_target: self.inner_target(s),
        }
    }

    /// Natural order for callers that already hold a valid pair. Non-parallel
    /// pairs are incomparable.
    pub fn leq(&self, s: MorId, t: MorId) -> bool {
        self.src(s) == self.src(t)
            && self.tgt(s) == self.tgt(t)
            && self.cat.compose(t, self.inner_source(s)) == Some(s)
    }

    /// The natural order `s ≤ t`, evaluated through all four equivalent
    /// characterizations, which must agree.
    pub fn natural_leq(&self, s: MorId, t: MorId) -> Result<bool> {
        if self.src(s) != self.src(t) || self.tgt(s) != self.tgt(t) {
            return Err(Error::NotParallel(
                self.name(s).to_string(),
                self.name(t).to_string(),
            ));
        }
        let by_right_idempotent = self
            .idempotents_at(self.src(s))
            .into_iter()
            .any(|e| self.cat.compose(t, e) == Some(s));
        let by_left_idempotent = self
            .idempotents_at(self.tgt(s))
            .into_iter()
            .any(|f| self.cat.compose(f, t) == Some(s));
        let via_target = self.cat.compose(self.inner_target(s), t) == Some(s);
        let via_source = self.cat.compose(t, self.inner_source(s)) == Some(s);
        assert!(
            by_right_idempotent == by_left_idempotent
                && by_left_idempotent == via_target
                && via_target == via_source,
            "natural order characterizations disagree on ({}, {})",
            self.name(s),
            self.name(t)
        );
        Ok(via_source)
    }

    /// Meet of two idempotents at the same object; `None` otherwise.
    pub fn meet(&self, e: MorId, f: MorId) -> Option<MorId> {
        if !self.is_idempotent(e) || !self.is_idempotent(f) {
            return None;
        }
        self.cat.compose(e, f)
    }

    pub fn relation_classes(&self) -> RelationClasses {
        let mut l: BTreeMap<MorId, Vec<MorId>> = BTreeMap::new();
        let mut r: BTreeMap<MorId, Vec<MorId>> = BTreeMap::new();
        for s in self.morphisms() {
            l.entry(self.inner_source(s)).or_default().push(s);
            r.entry(self.inner_target(s)).or_default().push(s);
        }
        RelationClasses {
            l_classes: l.into_iter().collect(),
            r_classes: r.into_iter().collect(),
            star: self.objects().map(|x| self.star(x).to_vec()).collect(),
            costar: self.objects().map(|x| self.costar(x).to_vec()).collect(),
        }
    }
}

/// A functor between finite categories, stored as its object and morphism
/// maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<ObjectId>,
    pub morphisms: Vec<MorId>,
}

impl Functor {
    pub fn identity(cat: &FiniteCategory) -> Functor {
        Functor {
            objects: cat.objects().collect(),
            morphisms: cat.morphisms().collect(),
        }
    }

    /// Builds a functor from a morphism-name map; objects follow identities.
    pub fn from_names<'a>(
        source: &FiniteCategory,
        target: &FiniteCategory,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Functor> {
        let mut morphisms: Vec<Option<MorId>> = vec![None; source.morphism_count()];
        for (a, b) in pairs {
            morphisms[source.morphism(a)?.0] = Some(target.morphism(b)?);
        }
        let morphisms = morphisms
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    Error::NotAFunctor(format!("no image for `{}`", source.name(MorId(i))))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let objects = source
            .objects()
            .map(|x| {
                let i = source.identity(x).ok_or_else(|| {
                    Error::NotAFunctor(format!("`{}` has no identity", source.object_name(x)))
                })?;
                Ok(target.src(morphisms[i.0]))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor { objects, morphisms })
    }

    /// The inclusion induced by equal names.
    pub fn by_equal_names(source: &FiniteCategory, target: &FiniteCategory) -> Result<Functor> {
        Self::from_names(
            source,
            target,
            source.morphisms().map(|s| (source.name(s), source.name(s))),
        )
    }

    pub fn object(&self, x: ObjectId) -> ObjectId {
        self.objects[x.0]
    }

    pub fn morphism(&self, s: MorId) -> MorId {
        self.morphisms[s.0]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Functor) -> Functor {
        Functor {
            objects: self.objects.iter().map(|&x| next.object(x)).collect(),
            morphisms: self.morphisms.iter().map(|&s| next.morphism(s)).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.morphisms.clone();
        seen.sort();
        seen.dedup();
        let mut objs = self.objects.clone();
        objs.sort();
        objs.dedup();
        seen.len() == self.morphisms.len() && objs.len() == self.objects.len()
    }

    pub fn check(&self, source: &FiniteCategory, target: &FiniteCategory) -> Result<()> {
        let fail = |msg: String| Err(Error::NotAFunctor(msg));
        if self.objects.len() != source.object_count()
            || self.morphisms.len() != source.morphism_count()
        {
            return fail("map sizes do not match the source category".into());
        }
        if self.objects.iter().any(|x| x.0 >= target.object_count())
            || self.morphisms.iter().any(|s| s.0 >= target.morphism_count())
        {
            return fail("image outside the target category".into());
        }
        for s in source.morphisms() {
            let fs = self.morphism(s);
            if target.src(fs) != self.object(source.src(s))
                || target.tgt(fs) != self.object(source.tgt(s))
            {
                return fail(format!("`{}` changes endpoints", source.name(s)));
            }
        }
        for x in source.objects() {
            if let Some(i) = source.identity(x) {
                if target.identity(self.object(x)) != Some(self.morphism(i)) {
                    return fail(format!("identity of `{}` not preserved", source.object_name(x)));
                }
            }
        }
        for f in source.morphisms() {
            for &g in source.star(source.tgt(f)) {
                let Some(gf) = source.compose(g, f) else { continue };
                if target.compose(self.morphism(g), self.morphism(f)) != Some(self.morphism(gf)) {
                    return fail(format!(
                        "composite `{}`∘`{}` not preserved",
                        source.name(g),
                        source.name(f)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn preserves_inverses(&self, source: &InverseCategory, target: &InverseCategory) -> bool {
        source
            .morphisms()
            .all(|s| self.morphism(source.inv(s)) == target.inv(self.morphism(s)))
    }
}

/// The subcategory on the given morphisms, with its inclusion functor.
/// Objects are the endpoints of the kept morphisms; names are preserved.
pub fn subcategory(cat: &FiniteCategory, keep: &[MorId]) -> Result<(FiniteCategory, Functor)> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let mut obj_new = vec![None; cat.object_count()];
    for &s in &keep {
        obj_new[cat.src(s).0] = Some(());
        obj_new[cat.tgt(s).0] = Some(());
    }
    let objects: Vec<ObjectId> = cat.objects().filter(|x| obj_new[x.0].is_some()).collect();
    let mut obj_index = HashMap::new();
    for (i, &x) in objects.iter().enumerate() {
        obj_index.insert(x, ObjectId(i));
    }
    let mor_index: HashMap<MorId, MorId> =
        keep.iter().enumerate().map(|(i, &s)| (s, MorId(i))).collect();
    let identities = objects
        .iter()
        .map(|&x| {
            cat.identity(x)
                .and_then(|i| mor_index.get(&i).copied())
                .ok_or_else(|| {
                    Error::NotASubcategory(format!("identity of `{}` missing", cat.object_name(x)))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    for &f in &keep {
        for &g in cat.star(cat.tgt(f)) {
            if !mor_index.contains_key(&g) {
                continue;
            }
            match cat.compose(g, f) {
                Some(r) if mor_index.contains_key(&r) => {}
                _ => {
                    return Err(Error::NotASubcategory(format!(
                        "composite of `{}` and `{}` missing",
                        cat.name(g),
                        cat.name(f)
                    )))
                }
            }
        }
    }
    let morphisms = keep
        .iter()
        .map(|&s| Morphism {
            name: cat.name(s).to_string(),
            src: obj_index[&cat.src(s)],
            tgt: obj_index[&cat.tgt(s)],
        })
        .collect();
    let names = objects.iter().map(|&x| cat.object_name(x).to_string()).collect();
    let sub = FiniteCategory::generate(names, morphisms, identities, |g, f| {
        cat.compose(keep[g.0], keep[f.0]).map(|r| mor_index[&r])
    })?;
    let inclusion = Functor {
        objects,
        morphisms: keep,
    };
    Ok((sub, inclusion))
}

/// The full subcategory on the given objects.
pub fn full_subcategory(
    cat: &FiniteCategory,
    objects: &[ObjectId],
) -> Result<(FiniteCategory, Functor)> {
    let keep: Vec<MorId> = cat
        .morphisms()
        .filter(|&s| objects.contains(&cat.src(s)) && objects.contains(&cat.tgt(s)))
        .collect();
    subcategory(cat, &keep)
}
