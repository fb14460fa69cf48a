mod oracles;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::Parser;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use stark_cli::{run, Command};
use stark_core::abgroups::{hom_group, AbHom, FinAbGroup};
use stark_core::autgroups::{aut_order, AutData};
use stark_core::formats::{order_expr_from_json, pairs_from_json, parse_json};
use stark_core::gradings::{fingerprint, universal_for, Grading};
use stark_core::intlin::{det, hnf, inverse_field, rank_field, snf};
use stark_core::morphmods::{connecting_unit, max_iso_dec, q_mul, MorphModule, QElem};
use stark_core::orders::{build, mu, Built, Order, OrderExpr, TracePairing};
use stark_core::starkdec::{degree_map_for, enumerate_gprg, maximal_gprg, swap_check};
use stark_core::{Int, IntHnf, IntMatrix, Limits, Rat};

use oracles::{dec_from_mask, dec_i, dec_mask, hom_table, image_mask, is_bijection, maximal, Table};

type Outcome = Result<String, String>;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Result<Value, String> {
    let cmd = Command::try_parse_from(std::iter::once("stark").chain(args.iter().copied())).map_err(|e| e.to_string())?;
    let out = run(&cmd);
    if out.code != 0 {
        return Err(format!("exit {}: {}", out.code, out.stderr.trim()));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn load(name: &str) -> Built {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    build(&order_expr_from_json(&parse_json(&text).unwrap()).unwrap()).unwrap()
}

fn int(v: i64) -> Int {
    Int::from(v)
}

fn v(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| int(x)).collect()
}

fn c(n: u64) -> FinAbGroup {
    FinAbGroup::cyclic(n)
}

fn grp(orders: &[i64]) -> FinAbGroup {
    FinAbGroup::from_orders(&v(orders)).unwrap().group
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Determinant of `{a_i·g}` computed from scratch.
fn product_determinant(order: &Order, a: &[Vec<Int>], g: &[Vec<Int>]) -> Option<Int> {
    let cols: Vec<Vec<Int>> = g.iter().flat_map(|u| a.iter().map(move |x| order.mul(x, u))).collect();
    (cols.len() == order.rank()).then(|| det(&IntMatrix::from_columns(order.rank(), &cols)))
}

fn c1_gprg_enum() -> Outcome {
    let out = cli(&["gprg-enum", &fixture("gaussian-c2.json")])?;
    let b = load("gaussian-c2.json");
    let pairs = pairs_from_json(&json!({"pairs": out["pairs"]}), &b, 4096).map_err(|e| e.to_string())?;
    // basis of Z[i][C2]: 1, i, σ, iσ
    let (one, i, s, is) = (v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1]));
    let neg = |x: &[Int]| x.iter().map(|c| -c).collect::<Vec<_>>();
    let expected: Vec<(IntHnf, BTreeSet<Vec<Int>>)> = vec![
        (IntHnf::full(4), BTreeSet::from([one.clone()])),
        (IntHnf::span(4, &[one.clone(), i.clone()]), BTreeSet::from([one.clone(), s.clone()])),
        (IntHnf::span(4, &[one.clone(), i.clone()]), BTreeSet::from([one.clone(), neg(&s)])),
        (IntHnf::span(4, &[one.clone(), is.clone()]), BTreeSet::from([one.clone(), s.clone()])),
        (IntHnf::span(4, &[one.clone(), is]), BTreeSet::from([one, neg(&s)])),
    ];
    let got: Vec<(IntHnf, BTreeSet<Vec<Int>>)> = pairs
        .iter()
        .map(|p| (p.a.clone(), p.g.elements().iter().cloned().collect()))
        .collect();
    ensure(got.len() == 5, format!("{} pairs", got.len()))?;
    for e in &expected {
        ensure(got.contains(e), format!("missing pair with base {:?}", e.0.vectors()))?;
    }
    ensure(out["maximal"].as_array().map(Vec::len) == Some(4), "expected four maximal pairs")?;
    Ok("5 pairs, 4 maximal, matching the listed structures".into())
}

fn c2_trusted_grading() -> Outcome {
    let (ex, gr) = (fixture("gaussian-pair-span.json"), fixture("gaussian-pair-span-grading.json"));
    let g = cli(&["grading", &ex, "--grading-file", &gr])?;
    ensure(g["gamma"] == json!(["2", "2"]), format!("gamma {}", g["gamma"]))?;
    ensure(g["rank_profile"] == json!(["2", "1", "1", "0"]), format!("ranks {}", g["rank_profile"]))?;
    ensure(g["trusted"] == json!(true), "grading not flagged trusted")?;
    let d = cli(&["degree-map", &ex, "--grading-file", &gr])?;
    ensure(d["zero"] == json!(true), "degree map is not zero")?;
    ensure(d["mu"] == json!(["2", "2"]), format!("mu {}", d["mu"]))?;
    let s = cli(&["stark", &ex, "--grading-file", &gr])?;
    ensure(s["stark"] == json!(true) && s["trusted"] == json!(true), format!("verdict {s}"))?;
    Ok("ranks (2,1,1,0) over (Z/2)^2, d = 0, stark (trusted)".into())
}

fn c3_swap() -> Outcome {
    let out = cli(&["swap-check", &fixture("klein-times-c2.json"), &fixture("klein-times-c2-pairs.json")])?;
    ensure(out["a_g"] == json!(true), "A[G] != R")?;
    ensure(out["b_h"] == json!(true), "B[H] != R")?;
    ensure(out["a_h"] == json!(false), "A[H] = R")?;
    let b = load("klein-times-c2.json");
    let text = std::fs::read_to_string(fixture("klein-times-c2-pairs.json")).unwrap();
    let pairs = pairs_from_json(&parse_json(&text).unwrap(), &b, 4096).unwrap();
    let d = product_determinant(&b.order, &pairs[0].a.vectors(), pairs[1].g.elements());
    ensure(d.as_ref().is_none_or(|d| !d.abs().is_one()), "oracle finds A[H] = R")?;
    let d = product_determinant(&b.order, &pairs[0].a.vectors(), pairs[0].g.elements());
    ensure(d.is_some_and(|d| d.abs().is_one()), "oracle rejects A[G]")?;
    Ok(format!("A[G] and B[H] hold, A[H] fails, B[G] {}", out["b_g"]))
}

fn bases() -> Vec<(&'static str, OrderExpr)> {
    vec![("Z", OrderExpr::Int), ("Z[i]", OrderExpr::gaussian()), ("Z[zeta3]", OrderExpr::eisenstein())]
}

fn small_groups() -> Vec<FinAbGroup> {
    [
        &[1][..],
        &[2],
        &[3],
        &[4],
        &[2, 2],
        &[5],
        &[6],
        &[7],
        &[8],
        &[2, 4],
        &[2, 2, 2],
    ]
    .iter()
    .map(|o| grp(o))
    .collect()
}

fn c4_round_trip() -> Outcome {
    let limits = Limits::default();
    let mut n = 0;
    for (name, base) in bases() {
        let expected = fingerprint(&build(&base).unwrap(), None, &limits).map_err(|e| e.to_string())?;
        for g in small_groups() {
            let b = build(&OrderExpr::group_ring(base.clone(), g.clone())).unwrap();
            let dec = maximal_gprg(&b, None, &limits).map_err(|e| format!("{name}[{g:?}]: {e}"))?;
            ensure(dec.group == g, format!("{name}[{:?}]: group {:?}", g.factors(), dec.group.factors()))?;
            let fp = fingerprint(&Built::plain(dec.base.clone()), None, &limits).map_err(|e| e.to_string())?;
            ensure(fp == expected, format!("{name}[{:?}]: fingerprint {fp:?}", g.factors()))?;
            n += 1;
        }
    }
    Ok(format!("{n} group rings"))
}

fn connected_fixtures() -> Vec<(String, Built, Option<Grading>)> {
    let mut out: Vec<(String, Built, Option<Grading>)> = Vec::new();
    let exprs = [
        ("Z", OrderExpr::Int),
        ("Z[i]", OrderExpr::gaussian()),
        ("Z[zeta3]", OrderExpr::eisenstein()),
        ("Z[C2]", OrderExpr::group_ring(OrderExpr::Int, c(2))),
        ("Z[C3]", OrderExpr::group_ring(OrderExpr::Int, c(3))),
        ("Z[C4]", OrderExpr::group_ring(OrderExpr::Int, c(4))),
        ("Z[C2xC2]", OrderExpr::group_ring(OrderExpr::Int, grp(&[2, 2]))),
        ("Z[C6]", OrderExpr::group_ring(OrderExpr::Int, c(6))),
        ("Z[i][C2]", OrderExpr::group_ring(OrderExpr::gaussian(), c(2))),
        ("Z[i][C4]", OrderExpr::group_ring(OrderExpr::gaussian(), c(4))),
        ("Z[i][C2xC2]", OrderExpr::group_ring(OrderExpr::gaussian(), grp(&[2, 2]))),
        ("Z[zeta3][C2]", OrderExpr::group_ring(OrderExpr::eisenstein(), c(2))),
        ("Z[zeta3][C3]", OrderExpr::group_ring(OrderExpr::eisenstein(), c(3))),
        (
            "Z[C2][C3]",
            OrderExpr::group_ring(OrderExpr::group_ring(OrderExpr::Int, c(2)), c(3)),
        ),
    ];
    for (name, e) in exprs {
        out.push((name.into(), build(&e).unwrap(), None));
    }
    let span = load("gaussian-pair-span.json");
    let text = std::fs::read_to_string(fixture("gaussian-pair-span-grading.json")).unwrap();
    let g = stark_core::formats::grading_from_json(&parse_json(&text).unwrap(), &span).unwrap();
    out.push(("gaussian pair span (trusted)".into(), span, Some(g)));
    out
}

fn c5_swap_sweep() -> Outcome {
    let limits = Limits::default();
    let mut checked = 0;
    for (name, b, trusted) in connected_fixtures() {
        let dm = degree_map_for(&b, trusted.as_ref(), &limits).map_err(|e| format!("{name}: {e}"))?;
        let poset = enumerate_gprg(&dm, &limits).map_err(|e| format!("{name}: {e}"))?;
        let max = poset.maximal();
        for &i in &max {
            for &j in &max {
                let r = swap_check(&b.order, &poset.pairs[i], &poset.pairs[j]).map_err(|e| e.to_string())?;
                ensure(r.all_hold(), format!("{name}: pair ({i},{j}) fails {r:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} ordered pairs of maximal elements, zero failures"))
}

fn c6_aut_counts() -> Outcome {
    let limits = Limits::default();
    let ctx = AutData::new(&build(&OrderExpr::Int).unwrap(), None, &limits).map_err(|e| e.to_string())?;
    let frozen = [2, 2, 4, 24];
    let mut line = Vec::new();
    for (g, want) in [c(2), c(3), c(4), grp(&[2, 2])].into_iter().zip(frozen) {
        let order = build(&OrderExpr::group_ring(OrderExpr::Int, g.clone())).unwrap().order;
        let brute = oracles::automorphism_count(&order);
        let got = aut_order(&ctx, &g, &limits).map_err(|e| e.to_string())?;
        ensure(
            got == int(brute as i64) && brute == want,
            format!("{:?}: aut_order {got}, oracle {brute}", g.factors()),
        )?;
        line.push(brute.to_string());
    }
    Ok(format!("counts {} agree with the oracle", line.join(", ")))
}

fn random_group(rng: &mut ChaCha8Rng) -> FinAbGroup {
    if rng.gen_bool(0.08) {
        return FinAbGroup::trivial();
    }
    let mut orders = Vec::new();
    let mut prod = 1;
    loop {
        let k = rng.gen_range(2..=8);
        if prod * k > 32 {
            break;
        }
        orders.push(k);
        prod *= k;
        if rng.gen_bool(0.45) {
            break;
        }
    }
    grp(&orders)
}

fn random_hom(rng: &mut ChaCha8Rng, src: &FinAbGroup, tgt: &FinAbGroup) -> AbHom {
    let size = tgt.size().unwrap();
    let exp = tgt.factors().last().cloned().unwrap_or_else(Int::one);
    let imgs: Vec<_> = src
        .factors()
        .iter()
        .map(|d| {
            let y = tgt.element_at(rng.gen_range(0..size));
            let k = &exp / exp.gcd(d);
            tgt.scale(&k, &y)
        })
        .collect();
    AbHom::from_images(src, tgt, &imgs).unwrap()
}

fn random_morphism(rng: &mut ChaCha8Rng) -> AbHom {
    let src = random_group(rng);
    let tgt = if rng.gen_bool(0.3) { src.clone() } else { random_group(rng) };
    random_hom(rng, &src, &tgt)
}

fn c7_orbits() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0407);
    let mut total_max = 0;
    let cases = 200;
    for case in 0..cases {
        let d = random_morphism(&mut rng);
        let m = MorphModule::new(d.clone());
        let (src, tgt) = (Table::new(d.src()), Table::new(d.tgt()));
        let dt = hom_table(&d, &src, &tgt);
        let decs = dec_i(&dt, &src, &tgt);
        let max = maximal(&dt, &decs);
        let ours = max_iso_dec(&m, 1 << 16).map_err(|e| format!("case {case}: {e}"))?;
        let ours_mask = dec_mask(&ours, &src, &tgt);
        ensure(max.contains(&ours_mask), format!("case {case}: output not maximal for {d:?}"))?;
        let profile = src.order_profile(ours_mask.1);
        for &y in &max {
            ensure(src.order_profile(y.1) == profile, format!("case {case}: d1 parts differ"))?;
            let target = dec_from_mask(&m, y, &src, &tgt);
            let u = connecting_unit(&m, &ours, &target)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("case {case}: no unit connects two maximal elements"))?;
            ensure(u.q.m.is_one(), format!("case {case}: connecting element is not in U"))?;
            let (ea, eb) = m.q(&u.q);
            let (ta, tb) = (hom_table(&ea, &src, &src), hom_table(&eb, &tgt, &tgt));
            ensure(is_bijection(&ta) && is_bijection(&tb), format!("case {case}: unit is not invertible"))?;
            ensure(
                (0..src.size).all(|x| dt[ta[x]] == tb[dt[x]]),
                format!("case {case}: unit does not act on d"),
            )?;
            let moved = (
                image_mask(&ta, ours_mask.0),
                image_mask(&ta, ours_mask.1),
                image_mask(&tb, ours_mask.2),
                image_mask(&tb, ours_mask.3),
            );
            ensure(moved == y, format!("case {case}: unit moves the output elsewhere"))?;
        }
        total_max += max.len();
    }
    Ok(format!("{cases} random morphisms, {total_max} maximal elements, one orbit each"))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntMatrix {
    let data: Vec<Vec<Int>> = (0..rows).map(|_| (0..cols).map(|_| int(rng.gen_range(-6..=6))).collect()).collect();
    IntMatrix::from_rows(&data, cols).unwrap()
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k = int(rng.gen_range(-2..=2));
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = k;
        u = u.mul(&e);
    }
    u
}

fn snf_hnf_suite(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let cases = 1200;
    for case in 0..cases {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = random_matrix(rng, m, n);
        let s = snf(&a);
        ensure(s.u.mul(&a).mul(&s.v) == s.s, format!("snf {case}: u a v != s"))?;
        ensure(det(&s.u).abs().is_one() && det(&s.v).abs().is_one(), format!("snf {case}: transforms"))?;
        ensure(s.diagonal() == oracles::invariant_factors(&a), format!("snf {case}: invariant factors of {a:?}"))?;
        let h = hnf(&a);
        ensure(hnf(&a.mul(&random_unimodular(rng, n))) == h, format!("hnf {case}: not canonical for {a:?}"))?;
        ensure(h.rank() == rank_field(&a.map(|x| Rat::from_integer(x.clone()))), format!("hnf {case}: rank"))?;
        let hb = IntMatrix::from_columns(m, &h.vectors());
        ensure(hnf(&hb) == h, format!("hnf {case}: not idempotent"))?;
        let combined = hnf(&a.hcat(&hb));
        ensure(combined == h, format!("hnf {case}: columns outside the lattice"))?;
        if m == n && !det(&a).is_zero() {
            ensure(det(&hb).abs() == det(&a).abs(), format!("hnf {case}: index"))?;
            let inv = inverse_field(&hb.map(|x| Rat::from_integer(x.clone()))).unwrap();
            let coords = inv.mul(&a.map(|x| Rat::from_integer(x.clone())));
            ensure(
                (0..n).all(|i| (0..n).all(|j| coords[(i, j)].is_integer())),
                format!("hnf {case}: lattice differs"),
            )?;
        }
    }
    Ok(cases)
}

fn q_ring_suite(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut checks = 0;
    for _ in 0..120 {
        let d = random_morphism(rng);
        let m = MorphModule::new(d.clone());
        let elem = |rng: &mut ChaCha8Rng| QElem {
            m: int(rng.gen_range(-3..=3)),
            f: random_hom(rng, d.tgt(), d.src()),
        };
        let add = |a: &QElem, b: &QElem| QElem {
            m: &a.m + &b.m,
            f: a.f.add(&b.f),
        };
        for _ in 0..5 {
            let (a, b, x) = (elem(rng), elem(rng), elem(rng));
            let mul = |p: &QElem, q: &QElem| q_mul(p, q, &m).unwrap();
            ensure(mul(&mul(&a, &b), &x) == mul(&a, &mul(&b, &x)), "Q(d) not associative")?;
            ensure(mul(&a, &add(&b, &x)) == add(&mul(&a, &b), &mul(&a, &x)), "Q(d) not distributive")?;
            ensure(mul(&add(&a, &b), &x) == add(&mul(&a, &x), &mul(&b, &x)), "Q(d) not distributive")?;
            let one = QElem::one(&m);
            ensure(mul(&one, &a) == a && mul(&a, &one) == a, "Q(d) identity fails")?;
            let (ea, eb) = m.q(&mul(&a, &b));
            let ((aa, ab), (ba, bb)) = (m.q(&a), m.q(&b));
            ensure(ea == aa.compose(&ba) && eb == ab.compose(&bb), "Q(d) -> End(d) not multiplicative")?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn c8_invariants() -> Outcome {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0408);
    let snf_cases = snf_hnf_suite(&mut rng)?;

    let mut gradings = 0;
    let mut mu_checks = 0;
    for (name, base) in bases() {
        let bb = build(&base).unwrap();
        let mu_a = mu(&bb, &limits, false).map_err(|e| e.to_string())?.len();
        for g in small_groups() {
            let b = build(&OrderExpr::group_ring(base.clone(), g.clone())).unwrap();
            let gr = universal_for(&b, None, &limits).map_err(|e| e.to_string())?;
            ensure(gr.check().is_empty(), format!("{name}[{:?}]: grading axioms", g.factors()))?;
            let proj = hom_group(gr.gamma(), gr.gamma()).enumerate(64).ok();
            for f in proj.into_iter().flatten().take(8) {
                let pf = gr.pushforward(&f).map_err(|e| e.to_string())?;
                ensure(pf.check().is_empty(), format!("{name}: pushforward axioms"))?;
                gradings += 1;
            }
            let mu_r = mu(&b, &limits, false).map_err(|e| e.to_string())?.len();
            ensure(
                Int::from(mu_r) == Int::from(mu_a) * g.order(),
                format!("{name}[{:?}]: |mu| = {mu_r}", g.factors()),
            )?;
            gradings += 1;
            mu_checks += 1;
        }
    }

    let q_checks = q_ring_suite(&mut rng)?;

    let mut pairings = 0;
    let mut gprg = 0;
    for (name, b, trusted) in connected_fixtures() {
        let dm = degree_map_for(&b, trusted.as_ref(), &limits).map_err(|e| format!("{name}: {e}"))?;
        ensure(dm.grading.check().is_empty(), format!("{name}: grading axioms"))?;
        gradings += 1;
        let tp = TracePairing::new(&b.order, &dm.mu);
        for x in dm.mu.elements() {
            for y in dm.mu.elements() {
                let p = tp.pair(x, y).map_err(|e| format!("{name}: {e}"))?;
                ensure(p == tp.pair(y, x).unwrap(), format!("{name}: pairing not symmetric"))?;
                pairings += 1;
            }
        }
        let poset = enumerate_gprg(&dm, &limits).map_err(|e| e.to_string())?;
        let (gamma, mu_g) = (Table::new(dm.grading.gamma()), Table::new(dm.mu.group()));
        let dt = hom_table(&dm.d, &mu_g, &gamma);
        let id0 = hom_group(dm.grading.gamma(), dm.mu.group())
            .enumerate(1 << 16)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|f| {
                let ft = hom_table(f, &gamma, &mu_g);
                (0..gamma.size).all(|x| ft[dt[ft[x]]] == ft[x])
            })
            .count();
        let k = poset.pairs.len();
        let distinct = (0..k).all(|i| (0..i).all(|j| !poset.pairs[i].same_as(&poset.pairs[j])));
        ensure(distinct && k == id0, format!("{name}: |GpRg| = {k}, |Id0| = {id0}"))?;
        for p in &poset.pairs {
            let d = product_determinant(&b.order, &p.a.vectors(), p.g.elements());
            ensure(d.is_some_and(|d| d.abs().is_one()), format!("{name}: pair fails the determinant test"))?;
        }
        gprg += 1;
    }
    Ok(format!(
        "{snf_cases} SNF/HNF matrices, {gradings} gradings, {mu_checks} mu counts, {q_checks} Q(d) samples, \
         {pairings} pairings, {gprg} GpRg/Id0 fixtures"
    ))
}

fn c9_join() -> Outcome {
    let limits = Limits::default();
    let out = cli(&["decompose", &fixture("z-c2-times-z-c6.json")])?;
    ensure(out["group"] == json!(["2"]), format!("group {}", out["group"]))?;
    let b = load("z-c2-times-z-c6.json");
    let dec = maximal_gprg(&b, None, &limits).map_err(|e| e.to_string())?;
    let d = product_determinant(&b.order, &dec.pair.a.vectors(), dec.pair.g.elements());
    ensure(d.as_ref().is_some_and(|d| d.abs().is_one()), format!("determinant {d:?}"))?;
    let want = build(&OrderExpr::Product(vec![
        OrderExpr::Int,
        OrderExpr::group_ring(OrderExpr::Int, c(3)),
    ]))
    .unwrap();
    let fp = fingerprint(&Built::plain(dec.base.clone()), None, &limits).map_err(|e| e.to_string())?;
    let expected = fingerprint(&want, None, &limits).map_err(|e| e.to_string())?;
    ensure(fp == expected, format!("base fingerprint {fp:?}, expected {expected:?}"))?;
    let comps = stark_core::orders::components(&Built::plain(dec.base.clone()), &limits).map_err(|e| e.to_string())?;
    let ranks: BTreeSet<usize> = comps.iter().map(|c| c.built.order.rank()).collect();
    ensure(ranks == BTreeSet::from([1, 3]), format!("component ranks {ranks:?}"))?;
    Ok(format!("group Z/2, base with components of rank 1 and 3, det {}", d.unwrap()))
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "gprg-enum on Z[i][C2]", Some(Duration::from_secs(1)), c1_gprg_enum),
        (2, "trusted grading, stark test", Some(Duration::from_secs(1)), c2_trusted_grading),
        (3, "swap-check counterexample", Some(Duration::from_secs(1)), c3_swap),
        (4, "round trip over small group rings", Some(Duration::from_secs(60)), c4_round_trip),
        (5, "swap sweep over maximal pairs", None, c5_swap_sweep),
        (6, "automorphism counts", Some(Duration::from_secs(120)), c6_aut_counts),
        (7, "orbit property of maximal decompositions", None, c7_orbits),
        (8, "invariant suites", None, c8_invariants),
        (9, "non-connected join", Some(Duration::from_secs(1)), c9_join),
    ];
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(msg), Some(l)) if elapsed > l => Err(format!("{msg}; took {elapsed:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(msg) => println!("criterion {n} ({name}): PASS [{elapsed:.2?}] {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [{elapsed:.2?}] {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
