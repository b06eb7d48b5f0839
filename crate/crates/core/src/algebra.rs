//! Convolution algebras of finite inverse categories.
//!
//! Coefficients stay symbolic: the product of two basis morphisms is their
//! composite when it exists and zero otherwise, so every statement here is a
//! statement about structure constants, block shapes and group tables.

use std::collections::VecDeque;

use serde::Serialize;

use crate::category::{FiniteCategory, InverseCategory, MorId};
use crate::completion::idempotent_classes;
use crate::error::{Error, Limits, Result};

/// The 0/1 structure constants of a convolution algebra.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub basis: Vec<MorId>,
    pub names: Vec<String>,
    /// `product[s][t]` is `s·t`, with `None` standing for zero.
    pub product: Vec<Vec<Option<MorId>>>,
    /// The identities, whose sum is the unit when the object set is finite.
    pub identities: Vec<MorId>,
}

pub fn structure_constants(cat: &FiniteCategory) -> StructureConstants {
    let basis: Vec<MorId> = cat.morphisms().collect();
    StructureConstants {
        names: basis.iter().map(|&s| cat.name(s).to_string()).collect(),
        product: basis
            .iter()
            .map(|&s| basis.iter().map(|&t| cat.compose(s, t)).collect())
            .collect(),
        identities: cat.objects().filter_map(|x| cat.identity(x)).collect(),
        basis,
    }
}

impl StructureConstants {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn product(&self, s: MorId, t: MorId) -> Option<MorId> {
        self.product[s.0][t.0]
    }

    /// Associativity on basis elements, with zero absorbing.
    pub fn is_associative(&self) -> bool {
        let mul = |a: Option<MorId>, b: Option<MorId>| a.zip(b).and_then(|(a, b)| self.product(a, b));
        self.basis.iter().all(|&a| {
            self.basis.iter().all(|&b| {
                self.basis.iter().all(|&c| {
                    mul(mul(Some(a), Some(b)), Some(c)) == mul(Some(a), mul(Some(b), Some(c)))
                })
            })
        })
    }

    /// Whether the sum of identities is a two-sided unit: each basis element
    /// is fixed by exactly one identity on each side and killed by the rest.
    pub fn sum_of_identities_is_unit(&self) -> bool {
        self.basis.iter().all(|&t| {
            let left: Vec<_> = self.identities.iter().filter_map(|&u| self.product(u, t)).collect();
            let right: Vec<_> = self.identities.iter().filter_map(|&u| self.product(t, u)).collect();
            left == [t] && right == [t]
        })
    }
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    pub elements: Vec<String>,
    pub mult: Vec<Vec<usize>>,
    pub unit: usize,
    pub inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates the group axioms and fills in the unit and inverses.
    pub fn new(elements: Vec<String>, mult: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if mult.len() != n || mult.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not a total binary operation".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&u| (0..n).all(|a| mult[u][a] == a && mult[a][u] == a))
            .ok_or_else(|| Error::NotAGroup("no unit".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mult[a][b] == unit && mult[b][a] == unit)
                    .ok_or_else(|| Error::NotAGroup(format!("`{}` has no inverse", elements[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable {
            elements,
            mult,
            unit,
            inverse,
        })
    }

    pub fn trivial() -> GroupTable {
        GroupTable::cyclic(1)
    }

    pub fn cyclic(n: usize) -> GroupTable {
        let elements = (0..n).map(|i| format!("r{i}")).collect();
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(elements, mult).expect("cyclic group")
    }

    /// The direct product, with elements named `(a,b)`.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let m = other.order();
        let elements = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let n = self.order() * m;
        let mult = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        GroupTable::new(elements, mult).expect("direct product")
    }

    /// The automorphism group of `e` inside an inverse category: all `s`
    /// with `ss° = e = s°s`.
    pub fn of_idempotent(cat: &InverseCategory, e: MorId) -> Result<GroupTable> {
        let x = cat.src(e);
        let members: Vec<MorId> = cat
            .hom(x, x)
            .filter(|&s| cat.inner_source(s) == e && cat.inner_target(s) == e)
            .collect();
        let position = |m: MorId| members.iter().position(|&s| s == m);
        let mult = members
            .iter()
            .map(|&s| {
                members
                    .iter()
                    .map(|&t| {
                        cat.compose(s, t).and_then(position).ok_or_else(|| {
                            Error::NotAGroup(format!("product of `{}` and `{}`", cat.name(s), cat.name(t)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GroupTable::new(members.iter().map(|&s| cat.name(s).to_string()).collect(), mult)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != self.unit {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `gens`.
    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[self.unit] = true;
        let mut queue = VecDeque::from([self.unit]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    /// A generating set picked greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for a in 0..self.order() {
            if !span[a] {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }
}

/// Extends `images` of `gens` to the subgroup they generate. Returns `None`
/// on a clash or a non-injective assignment.
fn extend(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; g.order()];
    let mut used = vec![false; h.order()];
    map[g.unit] = Some(h.unit);
    used[h.unit] = true;
    let mut queue = VecDeque::from([g.unit]);
    while let Some(a) = queue.pop_front() {
        let fa = map[a]?;
        for (&x, &fx) in gens.iter().zip(images) {
            let (b, fb) = (g.mul(a, x), h.mul(fa, fx));
            match map[b] {
                Some(old) if old != fb => return None,
                Some(_) => {}
                None => {
                    if used[fb] {
                        return None;
                    }
                    used[fb] = true;
                    map[b] = Some(fb);
                    queue.push_back(b);
                }
            }
        }
    }
    Some(map)
}

fn search(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &mut Vec<usize>) -> bool {
    if images.len() == gens.len() {
        let Some(map) = extend(g, h, gens, images) else { return false };
        let map: Vec<usize> = match map.into_iter().collect::<Option<Vec<_>>>() {
            Some(m) => m,
            None => return false,
        };
        return (0..g.order())
            .all(|a| (0..g.order()).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])));
    }
    let x = gens[images.len()];
    let target_order = g.element_order(x);
    for y in 0..h.order() {
        if h.element_order(y) != target_order {
            continue;
        }
        images.push(y);
        let k = images.len();
        if extend(g, h, &gens[..k], images).is_some() && search(g, h, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Decides isomorphism by backtracking over images of a generating set.
pub fn group_iso(g1: &GroupTable, g2: &GroupTable, limits: &Limits) -> Result<bool> {
    limits.check("group order", g1.order().max(g2.order()), limits.max_group)?;
    if g1.order() != g2.order() || g1.order_profile() != g2.order_profile() {
        return Ok(false);
    }
    if g1.is_abelian() != g2.is_abelian() {
        return Ok(false);
    }
    let gens = g1.generators();
    Ok(search(g1, g2, &gens, &mut Vec::new()))
}

/// One matrix block `M_n(K·G)`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub representative: String,
    pub multiplicity: usize,
    pub group: GroupTable,
}

impl Block {
    pub fn dimension(&self) -> usize {
        self.multiplicity * self.multiplicity * self.group.order()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
    pub morphisms: usize,
}

impl Decomposition {
    /// `Σ n² |G|` over the blocks.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(Block::dimension).sum()
    }
}

/// `K·C ≅ ⊕ M_{n_e}(K·C_e)` over representatives of idempotent classes.
pub fn decompose(cat: &InverseCategory) -> Result<Decomposition> {
    let blocks = idempotent_classes(cat)?
        .into_iter()
        .map(|c| Block {
            representative: cat.name(c.representative).to_string(),
            multiplicity: c.members.len(),
            group: c.group,
        })
        .collect();
    let d = Decomposition {
        blocks,
        morphisms: cat.morphism_count(),
    };
    if d.dimension() != d.morphisms {
        return Err(Error::DimensionMismatch {
            morphisms: d.morphisms,
            blocks: d.dimension(),
        });
    }
    Ok(d)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MoritaStatus {
    EquivalentCertified,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct MoritaVerdict {
    pub status: MoritaStatus,
    /// Representatives of blocks paired up by group isomorphism.
    pub matched: Vec<(String, String)>,
    pub unmatched_left: Vec<String>,
    pub unmatched_right: Vec<String>,
}

/// Pairs blocks of the two decompositions with isomorphic groups, ignoring
/// matrix sizes. Certified when every block finds a partner.
pub fn morita_check(a: &InverseCategory, b: &InverseCategory, limits: &Limits) -> Result<MoritaVerdict> {
    let (da, db) = (decompose(a)?, decompose(b)?);
    let mut taken = vec![false; db.blocks.len()];
    let mut matched = Vec::new();
    let mut unmatched_left = Vec::new();
    for x in &da.blocks {
        let mut partner = None;
        for (j, y) in db.blocks.iter().enumerate() {
            if !taken[j] && group_iso(&x.group, &y.group, limits)? {
                partner = Some(j);
                break;
            }
        }
        match partner {
            Some(j) => {
                taken[j] = true;
                matched.push((x.representative.clone(), db.blocks[j].representative.clone()));
            }
            None => unmatched_left.push(x.representative.clone()),
        }
    }
    let unmatched_right: Vec<String> = db
        .blocks
        .iter()
        .zip(&taken)
        .filter(|(_, &t)| !t)
        .map(|(y, _)| y.representative.clone())
        .collect();
    let status = if unmatched_left.is_empty() && unmatched_right.is_empty() {
        MoritaStatus::EquivalentCertified
    } else {
        MoritaStatus::Inconclusive
    };
    Ok(MoritaVerdict {
        status,
        matched,
        unmatched_left,
        unmatched_right,
    })
}
