//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;

use invcat::actions::{
    fibred_to_partial, fibred_to_symmetry, restrict_to_ideal, symmetry_to_partial, validate_fibred,
    validate_partial, FibredAction,
};
use invcat::algebra::{morita_check, MoritaStatus};
use invcat::bernoulli::{bernoulli_global, bernoulli_global_bundle, bernoulli_partial, build_p};
use invcat::completion::{
    cauchy_completion, completion_functor, enlargement_check, equivalence_check, idempotent_classes,
};
use invcat::expansion::{inner_szendrei, szendrei, SzCategory, SzVariant};
use invcat::{
    build_iic, find_inverse_structure, fixtures, CategoryBuilder, Error, FiniteCategory, Functor,
    InverseCategory, Limits, MorId, ObjectId, OrderIdeal,
};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ic(c: FiniteCategory) -> Arc<InverseCategory> {
    Arc::new(InverseCategory::new(c).expect("fixture is inverse"))
}

fn sz(c: &Arc<InverseCategory>, v: SzVariant) -> SzCategory {
    szendrei(c, v, &Limits::default()).expect("expansion within caps")
}

fn fixture_categories() -> Vec<(&'static str, FiniteCategory)> {
    let iic = build_iic(&fixtures::chain2(), &Limits::default()).unwrap();
    vec![
        ("T1", fixtures::trivial()),
        ("Z2", fixtures::z2()),
        ("G2", fixtures::g2()),
        ("I2", fixtures::i2()),
        ("I3", fixtures::i3()),
        ("Iic(chain2)", iic.category.category().clone()),
    ]
}

fn ac01() -> Check {
    for (name, c) in fixture_categories().into_iter().filter(|(n, _)| *n != "I3") {
        find_inverse_structure(&c).map_err(|e| format!("{name}: {e}"))?;
    }
    match find_inverse_structure(&fixtures::t2()) {
        Err(Error::NotInverseCategory { morphism, count: 2 }) if morphism == "c1" || morphism == "c2" => Ok(()),
        other => Err(format!("T2: {other:?}")),
    }
}

/// `Σ n_e² |C_e|` recomputed from scratch: idempotents grouped by a
/// connecting morphism, groups counted by `ss° = e = s°s`.
fn brute_block_sum(cat: &InverseCategory) -> usize {
    let idem: Vec<MorId> = cat.morphisms().filter(|&e| cat.compose(e, e) == Some(e)).collect();
    let mut seen = BTreeSet::new();
    let mut total = 0;
    for &e in &idem {
        if seen.contains(&e) {
            continue;
        }
        let class: Vec<MorId> = idem
            .iter()
            .copied()
            .filter(|&f| cat.morphisms().any(|s| cat.inner_source(s) == e && cat.inner_target(s) == f))
            .collect();
        seen.extend(class.iter().copied());
        let group = cat
            .morphisms()
            .filter(|&s| cat.inner_source(s) == e && cat.inner_target(s) == e)
            .count();
        total += class.len() * class.len() * group;
    }
    total
}

fn ac02() -> Check {
    let mut cats: Vec<(String, InverseCategory)> = fixture_categories()
        .into_iter()
        .map(|(n, c)| (n.to_string(), InverseCategory::new(c).unwrap()))
        .collect();
    for (name, c) in [("Z2", fixtures::z2()), ("G2", fixtures::g2())] {
        let c = ic(c);
        for v in SzVariant::ALL {
            cats.push((format!("Sz[{v}]({name})"), sz(&c, v).category().as_ref().clone()));
        }
    }
    for (name, cat) in &cats {
        let sum = brute_block_sum(cat);
        let blocks: usize = idempotent_classes(cat)
            .map_err(|e| format!("{name}: {e}"))?
            .iter()
            .map(|k| k.members.len().pow(2) * k.group.order())
            .sum();
        ensure(cat.morphism_count() == sum && sum == blocks, || {
            format!("{name}: {} morphisms, oracle {sum}, blocks {blocks}", cat.morphism_count())
        })?;
    }
    let shape = |c: FiniteCategory| {
        let cat = InverseCategory::new(c).unwrap();
        idempotent_classes(&cat)
            .unwrap()
            .iter()
            .map(|k| k.members.len().pow(2) * k.group.order())
            .collect::<Vec<_>>()
    };
    ensure(shape(fixtures::i2()) == [1, 4, 2], || format!("I2 blocks {:?}", shape(fixtures::i2())))?;
    ensure(shape(fixtures::g2()) == [4], || format!("G2 blocks {:?}", shape(fixtures::g2())))
}

/// Every nonempty subset of the morphisms whose members share target and
/// `aa°`; with `circ`, the subset must also contain that idempotent.
fn brute_bernoulli(cat: &InverseCategory, circ: bool) -> usize {
    let n = cat.morphism_count();
    (1u64..1 << n)
        .filter(|mask| {
            let ms: Vec<MorId> = (0..n).filter(|i| mask >> i & 1 == 1).map(MorId).collect();
            let r = |a: MorId| cat.compose(a, cat.inv(a)).unwrap();
            ms.iter().all(|&a| cat.tgt(a) == cat.tgt(ms[0]) && r(a) == r(ms[0])) && (!circ || ms.contains(&r(ms[0])))
        })
        .count()
}

fn ac03() -> Check {
    let l = Limits::default();
    for (name, c, p, pc) in [("Z2", fixtures::z2(), 3, 2), ("I2", fixtures::i2(), 10, 7)] {
        let cat = ic(c);
        let got_p = build_p(&cat, &l).map_err(|e| e.to_string())?.len();
        let got_pc = bernoulli_partial(&cat, &l).map_err(|e| e.to_string())?.0.len();
        ensure(got_p == p && got_p == brute_bernoulli(&cat, false), || format!("|P({name})| = {got_p}"))?;
        ensure(got_pc == pc && got_pc == brute_bernoulli(&cat, true), || format!("|P∘({name})| = {got_pc}"))?;
    }
    Ok(())
}

fn ac04() -> Check {
    let z2 = ic(fixtures::z2());
    let (e, g) = (z2.morphism("e").unwrap(), z2.morphism("g").unwrap());
    // S(Z2): pairs (A, h) with e, h ∈ A ⊆ Z2 and (A, h)(B, k) = (A ∪ hB, hk).
    let mut exel: Vec<(BTreeSet<MorId>, MorId)> = Vec::new();
    for a in [BTreeSet::from([e]), BTreeSet::from([e, g])] {
        for h in [e, g] {
            if a.contains(&h) {
                exel.push((a.clone(), h));
            }
        }
    }
    let mul = |(a, h): &(BTreeSet<MorId>, MorId), (b, k): &(BTreeSet<MorId>, MorId)| {
        let mut u = a.clone();
        u.extend(b.iter().map(|&x| z2.compose(*h, x).unwrap()));
        (u, z2.compose(*h, *k).unwrap())
    };
    let s = sz(&z2, SzVariant::Partial);
    let inner = inner_szendrei(&s, ObjectId(0)).map_err(|e| e.to_string())?;
    ensure(inner.len() == 3 && exel.len() == 3, || format!("{} elements", inner.len()))?;
    let key = |m: MorId| (s.set(m).members.iter().copied().collect::<BTreeSet<_>>(), s.arrow(m).mor);
    for i in 0..3 {
        for j in 0..3 {
            let got = key(inner.arrows[inner.product(i, j)]);
            let want = mul(&key(inner.arrows[i]), &key(inner.arrows[j]));
            ensure(got == want, || format!("{} ⋆ {}", inner.names[i], inner.names[j]))?;
        }
    }
    Ok(())
}

struct Pair {
    name: String,
    c: InverseCategory,
    d: InverseCategory,
    f: Functor,
}

fn pair(name: impl Into<String>, c: &InverseCategory, d: &InverseCategory, f: Functor) -> Pair {
    Pair {
        name: name.into(),
        c: c.clone(),
        d: d.clone(),
        f,
    }
}

fn sub_monoid(names: &[&str]) -> InverseCategory {
    let i2 = fixtures::i2();
    let mut b = CategoryBuilder::new();
    b.object("*").identity("*", "id");
    for &n in names {
        b.morphism(n, "*", "*");
    }
    for &x in names {
        for &y in names {
            let xy = i2.compose(i2.morphism(x).unwrap(), i2.morphism(y).unwrap()).unwrap();
            b.compose(x, y, i2.name(xy));
        }
    }
    InverseCategory::new(b.build().unwrap()).unwrap()
}

fn fixture_pairs() -> Vec<Pair> {
    let mut pairs = Vec::new();
    let (t1, z2, g2, i2) = (
        ic(fixtures::trivial()),
        ic(fixtures::z2()),
        ic(fixtures::g2()),
        ic(fixtures::i2()),
    );
    pairs.push(pair("T1 ⊂ Z2", &t1, &z2, Functor::from_names(&t1, &z2, [("1", "e")]).unwrap()));
    pairs.push(pair("T1 ⊂ G2", &t1, &g2, Functor::from_names(&t1, &g2, [("1", "1X")]).unwrap()));
    for (name, c) in [("Z2", &z2), ("G2", &g2), ("I2", &i2)] {
        pairs.push(pair(format!("{name} ⊂ {name}"), c, c, Functor::identity(c)));
        for (small, big) in [
            (SzVariant::StrictPartial, SzVariant::StrictGlobal),
            (SzVariant::Partial, SzVariant::Global),
        ] {
            let (a, b) = (sz(c, small), sz(c, big));
            let f = Functor::by_equal_names(&a, &b).unwrap();
            pairs.push(pair(format!("Sz[{small}]({name}) ⊂ Sz[{big}]({name})"), &a, &b, f));
        }
    }
    for names in [&["empty", "id", "swap"][..], &["empty", "id1", "id2", "id"][..]] {
        let m = sub_monoid(names);
        let f = Functor::by_equal_names(&m, &i2).unwrap();
        pairs.push(pair(format!("{{{}}} ⊂ I2", names.join(",")), &m, &i2, f));
    }
    pairs
}

fn ac05() -> Check {
    for name in ["Z2", "G2", "I2"] {
        let c = ic(match name {
            "Z2" => fixtures::z2(),
            "G2" => fixtures::g2(),
            _ => fixtures::i2(),
        });
        let (a, b) = (sz(&c, SzVariant::StrictPartial), sz(&c, SzVariant::StrictGlobal));
        let f = Functor::by_equal_names(&a, &b).map_err(|e| e.to_string())?;
        let r = enlargement_check(&a, &b, &f).map_err(|e| e.to_string())?;
        ensure(r.axiom1.holds && r.axiom2.holds && r.axiom3.holds, || format!("{name}: {r:?}"))?;
    }
    Ok(())
}

fn ac06(pairs: &[Pair]) -> Check {
    let l = Limits::default();
    let mut passing = 0;
    for p in pairs {
        let r = enlargement_check(&p.c, &p.d, &p.f).map_err(|e| format!("{}: {e}", p.name))?;
        if !r.overall {
            continue;
        }
        passing += 1;
        let (cc, cd) = (
            cauchy_completion(&p.c, &l).map_err(|e| e.to_string())?,
            cauchy_completion(&p.d, &l).map_err(|e| e.to_string())?,
        );
        let f = completion_functor(&p.f, &cc, &cd).map_err(|e| e.to_string())?;
        let eq = equivalence_check(&cc.category, &cd.category, &f).map_err(|e| e.to_string())?;
        ensure(eq.equivalent, || format!("{}: {eq:?}", p.name))?;
    }
    ensure(passing >= 5, || format!("only {passing} enlargements among fixture pairs"))
}

fn ac07(pairs: &[Pair]) -> Check {
    let l = Limits::default();
    for p in pairs {
        let r = enlargement_check(&p.c, &p.d, &p.f).map_err(|e| e.to_string())?;
        if r.overall {
            let v = morita_check(&p.c, &p.d, &l).map_err(|e| e.to_string())?;
            ensure(v.status == MoritaStatus::EquivalentCertified, || format!("{}: {v:?}", p.name))?;
        }
    }
    let z2 = ic(fixtures::z2());
    let v = morita_check(&sz(&z2, SzVariant::StrictPartial), &sz(&z2, SzVariant::StrictGlobal), &l)
        .map_err(|e| e.to_string())?;
    ensure(v.status == MoritaStatus::EquivalentCertified, || format!("{v:?}"))
}

fn ac08() -> Check {
    for c in [fixtures::z2(), fixtures::i2()] {
        let s = sz(&ic(c), SzVariant::Global);
        let all: Vec<MorId> = s.morphisms().collect();
        let star = |a: MorId, b: MorId| s.pseudo_product(a, b).ok();
        for &a in &all {
            for &b in &all {
                let Some(ab) = star(a, b) else { continue };
                if let Some(comp) = s.compose(a, b) {
                    ensure(comp == ab, || format!("{} ∘ {}", s.name(a), s.name(b)))?;
                }
                for &c in &all {
                    let (Some(bc), Some(_)) = (star(b, c), star(ab, c)) else { continue };
                    ensure(star(ab, c) == star(a, bc), || {
                        format!("({} ⋆ {}) ⋆ {}", s.name(a), s.name(b), s.name(c))
                    })?;
                }
            }
        }
        let idem = s.idempotents();
        for &e in &idem {
            for &f in &idem {
                if let (Some(ef), Some(fe)) = (star(e, f), star(f, e)) {
                    ensure(ef == fe, || format!("{} ⋆ {}", s.name(e), s.name(f)))?;
                }
            }
        }
        for &a in &all {
            let inverses: Vec<MorId> = all
                .iter()
                .copied()
                .filter(|&b| {
                    star(a, b).and_then(|ab| star(ab, a)) == Some(a)
                        && star(b, a).and_then(|ba| star(ba, b)) == Some(b)
                })
                .collect();
            let x = s.arrow(a);
            let expected_set = invcat::bernoulli::left_mul(&s.origin, s.origin.inv(x.mor), &s.set(a).members);
            let expected = s.bernoulli.find(&{
                let mut v = expected_set;
                v.sort();
                v
            });
            let expected = expected.and_then(|p| s.find(p, s.origin.inv(x.mor)));
            ensure(inverses.len() == 1 && Some(inverses[0]) == expected, || {
                format!("{}: inverses {:?}", s.name(a), s.names(&inverses))
            })?;
        }
    }
    Ok(())
}

fn ac09() -> Check {
    for c in [fixtures::z2(), fixtures::i2()] {
        let s = sz(&ic(c), SzVariant::Global);
        let all: Vec<MorId> = s.morphisms().collect();
        let idem = s.idempotents();
        for &a in &all {
            for &e in &idem {
                if s.leq(e, s.inner_source(a)) {
                    let below: Vec<MorId> = all
                        .iter()
                        .copied()
                        .filter(|&b| s.leq(b, a) && s.inner_source(b) == e)
                        .collect();
                    let r = s.restriction(e, a).map_err(|x| format!("{}|{}: {x}", s.name(a), s.name(e)))?;
                    ensure(below == [r], || format!("restriction of {} to {}", s.name(a), s.name(e)))?;
                }
                if s.leq(e, s.inner_target(a)) {
                    let below: Vec<MorId> = all
                        .iter()
                        .copied()
                        .filter(|&b| s.leq(b, a) && s.inner_target(b) == e)
                        .collect();
                    let r = s.corestriction(a, e).map_err(|x| format!("{}|{}: {x}", s.name(e), s.name(a)))?;
                    ensure(below == [r], || format!("corestriction of {} to {}", s.name(a), s.name(e)))?;
                }
            }
        }
    }
    Ok(())
}

fn ac10() -> Check {
    let l = Limits::default();
    for c in [fixtures::trivial(), fixtures::z2(), fixtures::g2(), fixtures::i2()] {
        let cat = ic(c);
        let mut actions = vec![
            ("self", FibredAction::self_action(cat.clone())),
            ("conjugation", FibredAction::conjugation_action(cat.clone())),
        ];
        actions.push(("bernoulli", bernoulli_global(&cat, &l).map_err(|e| e.to_string())?.1));
        for (kind, a) in &actions {
            ensure(validate_fibred(a, false).valid, || format!("{kind} action invalid"))?;
            let sym = fibred_to_symmetry(a).map_err(|e| format!("{kind}: {e}"))?;
            sym.check().map_err(|e| format!("{kind}: {e}"))?;
            let via_symmetry = symmetry_to_partial(&sym).map_err(|e| e.to_string())?;
            let direct = fibred_to_partial(a).map_err(|e| e.to_string())?;
            ensure(validate_partial(&via_symmetry, false).valid, || format!("{kind}: partial invalid"))?;
            ensure(via_symmetry.same_as(&direct), || format!("{kind}: conversions disagree"))?;
        }
        let p = build_p(&cat, &l).map_err(|e| e.to_string())?;
        let global = bernoulli_global_bundle(&p).map_err(|e| e.to_string())?;
        let circ: Vec<usize> = (0..p.len())
            .filter(|&a| p.element(a).contains(p.element(a).idempotent))
            .collect();
        let q = OrderIdeal::new(&p.poset, circ).map_err(|e| e.to_string())?;
        let restricted = restrict_to_ideal(&global, &q).map_err(|e| e.to_string())?;
        let (_, direct) = bernoulli_partial(&cat, &l).map_err(|e| e.to_string())?;
        ensure(restricted.same_as(&direct), || "restricted bundle differs".into())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let pairs = fixture_pairs();
    let results: Vec<(&str, Check)> = vec![
        ("inverse axioms on fixtures, T2 rejected", ac01()),
        ("dimension identity for fixtures and expansions", ac02()),
        ("Bernoulli counts against subset filter", ac03()),
        ("inner partial expansion of Z2 is S(Z2)", ac04()),
        ("strict global expansion enlarges strict partial", ac05()),
        ("enlargement implies equivalent completions", ac06(&pairs)),
        ("enlargement implies certified Morita equivalence", ac07(&pairs)),
        ("pseudo product laws", ac08()),
        ("restriction and corestriction exist uniquely", ac09()),
        ("action conversions round trip", ac10()),
    ];
    let mut failed = 0;
    for (i, (title, r)) in results.iter().enumerate() {
        match r {
            Ok(()) => println!("[PASS] AC-{:02} {title}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] AC-{:02} {title}: {msg}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
