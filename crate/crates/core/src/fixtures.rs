//! Small named categories and posets used throughout the docs and tests.

use crate::category::{CategoryBuilder, FiniteCategory, MorId, Morphism, ObjectId};
use crate::poset::Poset;

/// The one-object, one-morphism category `T1` (object `*`, morphism `1`).
pub fn trivial() -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object("*")
        .morphism("1", "*", "*")
        .identity("*", "1")
        .compose("1", "1", "1");
    b.build().expect("fixture")
}

fn z2_entries() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("e", "e", "e"),
        ("e", "g", "g"),
        ("g", "e", "g"),
        ("g", "g", "e"),
    ]
}

/// The group of order two as a one-object category (`e` identity, `g·g = e`).
pub fn z2() -> FiniteCategory {
    z2_with(&[])
}

/// The `Z2` table with some entries replaced; useful for producing broken
/// tables.
pub fn z2_with(overrides: &[(&str, &str, &str)]) -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object("*")
        .morphism("e", "*", "*")
        .morphism("g", "*", "*")
        .identity("*", "e");
    for (l, r, res) in z2_entries() {
        let res = overrides
            .iter()
            .find(|(ol, or, _)| *ol == l && *or == r)
            .map_or(res, |o| o.2);
        b.compose(l, r, res);
    }
    b.build().expect("fixture")
}

/// The connected groupoid with two objects `X`, `Y` and one isomorphism
/// `s: X → Y` with inverse `s_inv`.
pub fn g2() -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object("X")
        .object("Y")
        .morphism("1X", "X", "X")
        .morphism("1Y", "Y", "Y")
        .morphism("s", "X", "Y")
        .morphism("s_inv", "Y", "X")
        .identity("X", "1X")
        .identity("Y", "1Y");
    for (l, r, res) in [
        ("1X", "1X", "1X"),
        ("1Y", "1Y", "1Y"),
        ("s", "1X", "s"),
        ("1Y", "s", "s"),
        ("s_inv", "1Y", "s_inv"),
        ("1X", "s_inv", "s_inv"),
        ("s_inv", "s", "1X"),
        ("s", "s_inv", "1Y"),
    ] {
        b.compose(l, r, res);
    }
    b.build().expect("fixture")
}

/// A partial injection of `{1..n}`, stored as the image of each point.
pub type PartialMap = Vec<Option<u8>>;

/// All partial injections of `{1..n}`, ordered by domain size and then
/// lexicographically.
pub fn partial_injections(n: u8) -> Vec<PartialMap> {
    fn go(i: u8, n: u8, cur: &mut PartialMap, used: &mut Vec<bool>, out: &mut Vec<PartialMap>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        cur.push(None);
        go(i + 1, n, cur, used, out);
        cur.pop();
        for j in 1..=n {
            if !used[j as usize] {
                used[j as usize] = true;
                cur.push(Some(j));
                go(i + 1, n, cur, used, out);
                cur.pop();
                used[j as usize] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut vec![false; n as usize + 1], &mut out);
    out.sort_by_key(|m| (m.iter().filter(|x| x.is_some()).count(), m.clone()));
    out
}

/// Default name of a partial injection: `0` for the empty map, otherwise
/// `1>2,2>1` style.
pub fn partial_map_name(m: &PartialMap) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter_map(|(i, x)| x.map(|j| format!("{}>{}", i + 1, j)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(",")
    }
}

/// The symmetric inverse monoid `I_n` on one object `*`, with names chosen
/// by `namer`.
pub fn symmetric_inverse_monoid(n: u8, namer: impl Fn(&PartialMap) -> String) -> FiniteCategory {
    monoid_of_maps(n, partial_injections(n), namer)
}

fn monoid_of_maps(
    n: u8,
    maps: Vec<PartialMap>,
    namer: impl Fn(&PartialMap) -> String,
) -> FiniteCategory {
    let total: PartialMap = (1..=n).map(Some).collect();
    let morphisms = maps
        .iter()
        .map(|m| Morphism {
            name: namer(m),
            src: ObjectId(0),
            tgt: ObjectId(0),
        })
        .collect();
    let index = |m: &PartialMap| MorId(maps.iter().position(|x| x == m).expect("closed"));
    let identity = index(&total);
    FiniteCategory::generate(vec!["*".into()], morphisms, vec![identity], |g, f| {
        let (g, f) = (&maps[g.0], &maps[f.0]);
        let gf: PartialMap = f
            .iter()
            .map(|x| x.and_then(|j| g[j as usize - 1]))
            .collect();
        Some(index(&gf))
    })
    .expect("fixture")
}

/// `I2` with morphisms `empty, id1, id2, m12, m21, id, swap`, where `mij`
/// sends `i` to `j`.
pub fn i2() -> FiniteCategory {
    let maps = vec![
        vec![None, None],
        vec![Some(1), None],
        vec![None, Some(2)],
        vec![Some(2), None],
        vec![None, Some(1)],
        vec![Some(1), Some(2)],
        vec![Some(2), Some(1)],
    ];
    monoid_of_maps(2, maps, |m| {
        match m.as_slice() {
            [None, None] => "empty",
            [Some(1), None] => "id1",
            [None, Some(2)] => "id2",
            [Some(2), None] => "m12",
            [None, Some(1)] => "m21",
            [Some(1), Some(2)] => "id",
            [Some(2), Some(1)] => "swap",
            _ => unreachable!(),
        }
        .to_string()
    })
}

/// `I3` with default names.
pub fn i3() -> FiniteCategory {
    symmetric_inverse_monoid(3, partial_map_name)
}

/// The full transformation monoid on two points: `id, swap, c1, c2`, where
/// `ci` is constant at `i`. It is regular but not inverse.
pub fn t2() -> FiniteCategory {
    let maps: [[usize; 2]; 4] = [[1, 2], [2, 1], [1, 1], [2, 2]];
    let names = ["id", "swap", "c1", "c2"];
    let morphisms = names
        .iter()
        .map(|n| Morphism {
            name: n.to_string(),
            src: ObjectId(0),
            tgt: ObjectId(0),
        })
        .collect();
    FiniteCategory::generate(vec!["*".into()], morphisms, vec![MorId(0)], |g, f| {
        let gf = [maps[g.0][maps[f.0][0] - 1], maps[g.0][maps[f.0][1] - 1]];
        maps.iter().position(|m| *m == gf).map(MorId)
    })
    .expect("fixture")
}

/// The cyclic group of order `n` as a one-object category, with elements
/// named `r0, r1, ...`.
pub fn cyclic_group(n: usize) -> FiniteCategory {
    let morphisms = (0..n)
        .map(|i| Morphism {
            name: format!("r{i}"),
            src: ObjectId(0),
            tgt: ObjectId(0),
        })
        .collect();
    FiniteCategory::generate(vec!["*".into()], morphisms, vec![MorId(0)], |g, f| {
        Some(MorId((g.0 + f.0) % n))
    })
    .expect("fixture")
}

/// The chain `a < b`.
pub fn chain2() -> Poset {
    Poset::from_cover_names(&["a", "b"], &[("a", "b")]).expect("fixture")
}

/// The chain `a < b < c`.
pub fn chain3() -> Poset {
    Poset::from_cover_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).expect("fixture")
}

/// Two incomparable points `a`, `b`.
pub fn antichain2() -> Poset {
    Poset::from_cover_names(&["a", "b"], &[]).expect("fixture")
}

/// The V-shaped poset `a < c`, `b < c`.
pub fn vee() -> Poset {
    Poset::from_cover_names(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).expect("fixture")
}

/// A single point `a`.
pub fn point() -> Poset {
    Poset::from_cover_names(&["a"], &[]).expect("fixture")
}
