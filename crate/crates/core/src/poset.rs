//! Finite posets, order ideals, partial order isomorphisms and the inverse
//! category `I_ic(P)`.
//!
//! Points are addressed by their index in the poset. Ideals and domains are
//! stored as sorted index lists.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::category::{FiniteCategory, InverseCategory, MorId, Morphism, ObjectId};
use crate::error::{Error, Limits, Result};

type Rule = Arc<dyn Fn(usize, usize) -> bool + Send + Sync>;

#[derive(Clone)]
enum Relation {
    Dense(Arc<Vec<bool>>),
    Rule(Rule),
}

/// A finite poset with named points.
///
/// Small posets store their order as a dense table. Large derived posets
/// (Bernoulli posets, sub-posets) store it as a rule, so memory stays linear
/// in the number of points.
#[derive(Clone)]
pub struct Poset {
    names: Arc<Vec<String>>,
    index: Arc<HashMap<String, usize>>,
    rel: Relation,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(&str, &str)> = self
            .points()
            .flat_map(|x| self.points().map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && self.leq(x, y))
            .map(|(x, y)| (self.name(x), self.name(y)))
            .collect();
        f.debug_struct("Poset")
            .field("points", &self.names)
            .field("strict_order", &pairs)
            .finish()
    }
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Builds a poset from a full `n × n` relation table (row-major,
    /// `leq[x * n + y]` meaning `x ≤ y`) and checks the partial order laws.
    pub fn from_relation(names: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = names.len();
        assert_eq!(leq.len(), n * n, "relation table has the wrong size");
        let index = index_names(&names)?;
        let p = Poset {
            names: Arc::new(names),
            index: Arc::new(index),
            rel: Relation::Dense(Arc::new(leq)),
        };
        p.check_partial_order()?;
        Ok(p)
    }

    /// Builds the reflexive-transitive closure of the given cover pairs
    /// `(lower, upper)`.
    pub fn from_cover_names(names: &[&str], covers: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in covers {
            let a = *index.get(*a).ok_or_else(|| Error::UndeclaredName(a.to_string()))?;
            let b = *index.get(*b).ok_or_else(|| Error::UndeclaredName(b.to_string()))?;
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(names, leq)
    }

    /// Points with no order relations other than equality.
    pub fn discrete(names: Vec<String>) -> Result<Self> {
        let n = names.len();
        let leq = (0..n * n).map(|k| k / n == k % n).collect();
        Self::from_relation(names, leq)
    }

    /// A poset whose order is computed on demand. The rule is trusted; call
    /// [`Poset::check_partial_order`] to verify it.
    pub fn from_rule(
        names: Vec<String>,
        rule: impl Fn(usize, usize) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        let index = index_names(&names)?;
        Ok(Poset {
            names: Arc::new(names),
            index: Arc::new(index),
            rel: Relation::Rule(Arc::new(rule)),
        })
    }

    pub fn check_partial_order(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(Error::NotAPartialOrder(format!(
                    "`{}` is not below itself",
                    self.name(x)
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) {
                    if self.leq(y, x) {
                        return Err(Error::NotAPartialOrder(format!(
                            "`{}` and `{}` are mutually below each other",
                            self.name(x),
                            self.name(y)
                        )));
                    }
                    for z in 0..n {
                        if self.leq(y, z) && !self.leq(x, z) {
                            return Err(Error::NotAPartialOrder(format!(
                                "transitivity fails at `{}`, `{}`, `{}`",
                                self.name(x),
                                self.name(y),
                                self.name(z)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn point(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UndeclaredName(name.to_string()))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        match &self.rel {
            Relation::Dense(t) => t[x * self.len() + y],
            Relation::Rule(r) => r(x, y),
        }
    }

    /// The sub-poset on `keep` (in the given order), keeping point names.
    pub fn sub_poset(&self, keep: &[usize]) -> Poset {
        let names: Vec<String> = keep.iter().map(|&x| self.names[x].clone()).collect();
        let parent = self.clone();
        let map = keep.to_vec();
        Poset::from_rule(names, move |a, b| parent.leq(map[a], map[b]))
            .expect("names of a poset are distinct")
    }

    /// Same names in the same order and the same relation.
    pub fn same_as(&self, other: &Poset) -> bool {
        self.names == other.names
            && self
                .points()
                .all(|x| self.points().all(|y| self.leq(x, y) == other.leq(x, y)))
    }

    pub fn is_down_closed(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.len()];
        for &m in members {
            inside[m] = true;
        }
        members
            .iter()
            .all(|&m| self.points().all(|y| !self.leq(y, m) || inside[y]))
    }

    /// The principal ideal below `x`.
    pub fn down_set(&self, x: usize) -> OrderIdeal {
        OrderIdeal::from_sorted(self.points().filter(|&y| self.leq(y, x)).collect())
    }

    /// All order ideals, including the empty one, ordered by size and then
    /// lexicographically by point index.
    pub fn ideals(&self, limits: &Limits) -> Result<Vec<OrderIdeal>> {
        limits.check("poset points for ideal enumeration", self.len(), limits.max_poset)?;
        let n = self.len();
        let mut out: Vec<OrderIdeal> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|m| self.is_down_closed(m))
            .map(OrderIdeal::from_sorted)
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        Ok(out)
    }

    /// Renders a set of points as `{a,b}`.
    pub fn set_name(&self, members: &[usize]) -> String {
        let parts: Vec<&str> = members.iter().map(|&x| self.name(x)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A downward-closed set of points, stored as sorted indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdeal {
    members: Vec<usize>,
}

impl OrderIdeal {
    /// Checks down-closure in `poset`.
    pub fn new(poset: &Poset, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= poset.len()) {
            return Err(Error::UndeclaredName(format!("point #{bad}")));
        }
        if !poset.is_down_closed(&members) {
            return Err(Error::NotIdeal(poset.set_name(&members)));
        }
        Ok(OrderIdeal { members })
    }

    pub fn from_names(poset: &Poset, names: &[&str]) -> Result<Self> {
        let members = names.iter().map(|n| poset.point(n)).collect::<Result<_>>()?;
        Self::new(poset, members)
    }

    /// The whole poset.
    pub fn full(poset: &Poset) -> Self {
        OrderIdeal {
            members: poset.points().collect(),
        }
    }

    pub fn empty() -> Self {
        OrderIdeal::default()
    }

    /// Wraps an already sorted, deduplicated set without checking closure.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        OrderIdeal { members }
    }

    pub(crate) fn from_unsorted(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        OrderIdeal { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &OrderIdeal) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &OrderIdeal) -> OrderIdeal {
        OrderIdeal {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    pub fn union(&self, other: &OrderIdeal) -> OrderIdeal {
        Self::from_unsorted(self.members.iter().chain(&other.members).copied().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

/// An order isomorphism between two ideals of a poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialOrderIso {
    pub dom: OrderIdeal,
    pub ran: OrderIdeal,
    pub map: BTreeMap<usize, usize>,
}

impl PartialOrderIso {
    /// Checks that `map` is an order isomorphism between ideals of `poset`.
    pub fn new(poset: &Poset, map: BTreeMap<usize, usize>) -> Result<Self> {
        let dom = OrderIdeal::new(poset, map.keys().copied().collect())?;
        let ran = OrderIdeal::new(poset, map.values().copied().collect())?;
        if ran.len() != dom.len() {
            return Err(Error::PreconditionFailed("map is not injective".into()));
        }
        for (&x, &fx) in &map {
            for (&y, &fy) in &map {
                if poset.leq(x, y) != poset.leq(fx, fy) {
                    return Err(Error::PreconditionFailed(format!(
                        "map does not reflect the order at `{}`, `{}`",
                        poset.name(x),
                        poset.name(y)
                    )));
                }
            }
        }
        Ok(PartialOrderIso { dom, ran, map })
    }

    pub(crate) fn from_map_unchecked(map: BTreeMap<usize, usize>) -> Self {
        PartialOrderIso {
            dom: OrderIdeal::from_sorted(map.keys().copied().collect()),
            ran: OrderIdeal::from_unsorted(map.values().copied().collect()),
            map,
        }
    }

    pub fn identity(ideal: &OrderIdeal) -> Self {
        PartialOrderIso {
            dom: ideal.clone(),
            ran: ideal.clone(),
            map: ideal.iter().map(|x| (x, x)).collect(),
        }
    }

    pub fn empty() -> Self {
        Self::identity(&OrderIdeal::empty())
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(&x).copied()
    }

    pub fn inverse(&self) -> Self {
        PartialOrderIso {
            dom: self.ran.clone(),
            ran: self.dom.clone(),
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// Restriction to `sub ∩ dom`.
    pub fn restrict(&self, sub: &OrderIdeal) -> Self {
        Self::from_map_unchecked(
            self.map
                .iter()
                .filter(|(x, _)| sub.contains(**x))
                .map(|(&a, &b)| (a, b))
                .collect(),
        )
    }

    /// `a>b,c>d` style rendering of the graph.
    pub fn graph_name(&self, poset: &Poset) -> String {
        let parts: Vec<String> = self
            .map
            .iter()
            .map(|(&a, &b)| format!("{}>{}", poset.name(a), poset.name(b)))
            .collect();
        format!("[{}]", parts.join(","))
    }
}

/// `t ∘ s`, defined on `s⁻¹(ran(s) ∩ dom(t))`.
pub fn compose_partial_isos(t: &PartialOrderIso, s: &PartialOrderIso) -> PartialOrderIso {
    PartialOrderIso::from_map_unchecked(
        s.map
            .iter()
            .filter_map(|(&x, &y)| t.apply(y).map(|z| (x, z)))
            .collect(),
    )
}

/// All order isomorphisms from ideal `a` onto ideal `b`.
pub fn order_isos(poset: &Poset, a: &OrderIdeal, b: &OrderIdeal) -> Vec<PartialOrderIso> {
    fn go(
        poset: &Poset,
        src: &[usize],
        tgt: &[usize],
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<PartialOrderIso>,
    ) {
        let i = cur.len();
        if i == src.len() {
            out.push(PartialOrderIso::from_map_unchecked(cur.iter().copied().collect()));
            return;
        }
        let x = src[i];
        for (j, &y) in tgt.iter().enumerate() {
            if used[j] {
                continue;
            }
            let compatible = cur
                .iter()
                .all(|&(u, v)| poset.leq(u, x) == poset.leq(v, y) && poset.leq(x, u) == poset.leq(y, v));
            if compatible {
                used[j] = true;
                cur.push((x, y));
                go(poset, src, tgt, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a.len() == b.len() {
        go(
            poset,
            a.members(),
            b.members(),
            &mut vec![false; b.len()],
            &mut Vec::new(),
            &mut out,
        );
    }
    out
}

/// The inverse category `I_ic(P)` together with the data behind each
/// morphism.
#[derive(Clone, Debug)]
pub struct Iic {
    pub poset: Poset,
    pub category: InverseCategory,
    /// Objects, in object-id order.
    pub ideals: Vec<OrderIdeal>,
    /// For each morphism: its hom-source ideal, hom-target ideal and map.
    pub arrows: Vec<(usize, usize, PartialOrderIso)>,
    lookup: HashMap<(usize, usize, Vec<(usize, usize)>), MorId>,
}

impl Iic {
    /// The morphism `U → V` carrying `iso`, if `dom ⊆ U` and `ran ⊆ V`.
    pub fn find(&self, u: usize, v: usize, iso: &PartialOrderIso) -> Option<MorId> {
        let graph: Vec<(usize, usize)> = iso.map.iter().map(|(&a, &b)| (a, b)).collect();
        self.lookup.get(&(u, v, graph)).copied()
    }

    pub fn ideal_object(&self, ideal: &OrderIdeal) -> Option<ObjectId> {
        self.ideals.iter().position(|i| i == ideal).map(ObjectId)
    }
}

/// Builds `I_ic(P)`. The number of morphisms is estimated before anything is
/// materialized and checked against `limits.max_elements`.
pub fn build_iic(poset: &Poset, limits: &Limits) -> Result<Iic> {
    let ideals = poset.ideals(limits)?;
    let k = ideals.len();
    let up: Vec<usize> = ideals
        .iter()
        .map(|i| ideals.iter().filter(|j| i.is_subset(j)).count())
        .collect();

    let mut isos: Vec<(usize, usize, Vec<PartialOrderIso>)> = Vec::new();
    let mut estimate = 0usize;
    for a in 0..k {
        for b in 0..k {
            if ideals[a].len() != ideals[b].len() {
                continue;
            }
            let found = order_isos(poset, &ideals[a], &ideals[b]);
            estimate = estimate.saturating_add(found.len() * up[a] * up[b]);
            limits.check("morphisms of I_ic(P)", estimate, limits.max_elements)?;
            if !found.is_empty() {
                isos.push((a, b, found));
            }
        }
    }

    let objects: Vec<String> = ideals.iter().map(|i| poset.set_name(i.members())).collect();
    let mut morphisms = Vec::with_capacity(estimate);
    let mut arrows = Vec::with_capacity(estimate);
    let mut lookup = HashMap::with_capacity(estimate);
    for u in 0..k {
        for v in 0..k {
            for (a, b, found) in &isos {
                if !ideals[*a].is_subset(&ideals[u]) || !ideals[*b].is_subset(&ideals[v]) {
                    continue;
                }
                for iso in found {
                    let id = MorId(morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("{}->{}:{}", objects[u], objects[v], iso.graph_name(poset)),
                        src: ObjectId(u),
                        tgt: ObjectId(v),
                    });
                    let graph = iso.map.iter().map(|(&x, &y)| (x, y)).collect();
                    lookup.insert((u, v, graph), id);
                    arrows.push((u, v, iso.clone()));
                }
            }
        }
    }
    let identities = (0..k)
        .map(|u| lookup[&(u, u, ideals[u].iter().map(|x| (x, x)).collect())])
        .collect();
    let cat = FiniteCategory::generate(objects, morphisms, identities, |g, f| {
        let (u, _, s) = &arrows[f.0];
        let (_, w, t) = &arrows[g.0];
        let ts = compose_partial_isos(t, s);
        let graph: Vec<(usize, usize)> = ts.map.into_iter().collect();
        lookup.get(&(*u, *w, graph)).copied()
    })?;
    let category = InverseCategory::new(cat)?;
    Ok(Iic {
        poset: poset.clone(),
        category,
        ideals,
        arrows,
        lookup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_category;
    use crate::fixtures;

    fn ideal_names(p: &Poset) -> Vec<String> {
        p.ideals(&Limits::default())
            .unwrap()
            .iter()
            .map(|i| p.set_name(i.members()))
            .collect()
    }

    /// Every subset, filtered for down-closure, written independently of
    /// `Poset::ideals`.
    fn brute_ideal_count(p: &Poset) -> usize {
        let n = p.len();
        (0..1usize << n)
            .filter(|mask| {
                (0..n).all(|x| {
                    mask >> x & 1 == 0 || (0..n).all(|y| !p.leq(y, x) || mask >> y & 1 == 1)
                })
            })
            .count()
    }

    #[test]
    fn ideal_examples() {
        assert_eq!(ideal_names(&fixtures::antichain2()), ["{}", "{a}", "{b}", "{a,b}"]);
        assert_eq!(ideal_names(&fixtures::chain3()), ["{}", "{a}", "{a,b}", "{a,b,c}"]);
        assert_eq!(
            ideal_names(&fixtures::vee()),
            ["{}", "{a}", "{b}", "{a,b}", "{a,b,c}"]
        );
        for p in [fixtures::antichain2(), fixtures::chain3(), fixtures::vee()] {
            assert_eq!(p.ideals(&Limits::default()).unwrap().len(), brute_ideal_count(&p));
        }
    }

    #[test]
    fn ideal_cap() {
        let names = (0..9).map(|i| format!("p{i}")).collect();
        let p = Poset::discrete(names).unwrap();
        assert!(matches!(
            p.ideals(&Limits::default()),
            Err(Error::SizeCapExceeded { estimate: 9, cap: 8, .. })
        ));
    }

    #[test]
    fn cyclic_relation_is_rejected() {
        assert!(matches!(
            Poset::from_cover_names(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::NotAPartialOrder(_))
        ));
    }

    #[test]
    fn iic_of_a_point() {
        let iic = build_iic(&fixtures::point(), &Limits::default()).unwrap();
        assert_eq!(iic.category.object_count(), 2);
        assert_eq!(iic.category.morphism_count(), 5);
        let empty = iic.category.object("{}").unwrap();
        let top = iic.category.object("{a}").unwrap();
        assert_eq!(iic.category.hom(empty, empty).count(), 1);
        assert_eq!(
            iic.category.names(&iic.category.hom(top, top).collect::<Vec<_>>()),
            ["{a}->{a}:[]", "{a}->{a}:[a>a]"]
        );
    }

    #[test]
    fn iic_of_chain() {
        let p = fixtures::chain2();
        let iic = build_iic(&p, &Limits::default()).unwrap();
        let top = iic.category.object("{a,b}").unwrap();
        assert_eq!(iic.category.hom(top, top).count(), 3);
        assert_eq!(iic.category.morphism_count(), 14);
        assert!(validate_category(&iic.category).valid);
    }

    #[test]
    fn iic_morphism_count_matches_brute_force() {
        // Oracle: every injective partial map between points whose domain
        // and range are ideals and which reflects the order, times the
        // number of ambient pairs.
        for p in [fixtures::chain3(), fixtures::vee(), fixtures::antichain2()] {
            let ideals = p.ideals(&Limits::default()).unwrap();
            let n = p.len();
            let mut count = 0;
            let mut maps: Vec<Vec<Option<usize>>> = vec![vec![]];
            for _ in 0..n {
                maps = maps
                    .into_iter()
                    .flat_map(|m| {
                        (0..=n).map(move |j| {
                            let mut m = m.clone();
                            m.push(if j == n { None } else { Some(j) });
                            m
                        })
                    })
                    .collect();
            }
            for m in maps {
                let graph: BTreeMap<usize, usize> = m
                    .iter()
                    .enumerate()
                    .filter_map(|(i, x)| x.map(|y| (i, y)))
                    .collect();
                let Ok(iso) = PartialOrderIso::new(&p, graph) else { continue };
                let ups = |i: &OrderIdeal| ideals.iter().filter(|u| i.is_subset(u)).count();
                count += ups(&iso.dom) * ups(&iso.ran);
            }
            let iic = build_iic(&p, &Limits::default()).unwrap();
            assert_eq!(iic.category.morphism_count(), count);
        }
    }

    #[test]
    fn composition_examples() {
        let p = fixtures::chain3();
        let a = OrderIdeal::from_names(&p, &["a"]).unwrap();
        let ab = OrderIdeal::from_names(&p, &["a", "b"]).unwrap();
        let s = PartialOrderIso::identity(&a);
        let t = PartialOrderIso::identity(&ab);
        assert_eq!(compose_partial_isos(&t, &s), s);
        assert_eq!(compose_partial_isos(&PartialOrderIso::empty(), &s), PartialOrderIso::empty());
        assert_eq!(compose_partial_isos(&s.inverse(), &s), PartialOrderIso::identity(&a));

        let q = fixtures::antichain2();
        let swap = PartialOrderIso::new(&q, [(0, 1)].into_iter().collect()).unwrap();
        let back = compose_partial_isos(&swap.inverse(), &swap);
        assert_eq!(back.dom, swap.dom);
        let only_a = PartialOrderIso::identity(&OrderIdeal::from_names(&q, &["a"]).unwrap());
        assert!(compose_partial_isos(&only_a, &swap).map.is_empty());
    }

    #[test]
    fn domain_of_f_is_domain_of_inverse_composite() {
        let iic = build_iic(&fixtures::vee(), &Limits::default()).unwrap();
        for (_, _, f) in &iic.arrows {
            let ff = compose_partial_isos(&f.inverse(), f);
            assert_eq!(ff.dom, f.dom);
            assert!(ff.map.iter().all(|(a, b)| a == b));
        }
    }

    #[test]
    fn iic_cap_is_checked_before_building() {
        let names = (0..6).map(|i| format!("p{i}")).collect();
        let p = Poset::discrete(names).unwrap();
        let limits = Limits::default().with_max_elements(1000);
        assert!(matches!(build_iic(&p, &limits), Err(Error::SizeCapExceeded { .. })));
    }
}
