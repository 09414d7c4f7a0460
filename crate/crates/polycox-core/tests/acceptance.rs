//! The acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p polycox-core --test acceptance`. The process exits
//! with a non-zero status when any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use polycox::artin::{artin_coherent, cell_census};
use polycox::completion::reachable_normal_forms;
use polycox::coxeter::{enumerate, CoxeterGroup, CoxeterMatrix, DEFAULT_COSET_CAP};
use polycox::garside::{complete_garside, garside_reduction_part, Family, GarsideCompletion};
use polycox::path::paths_equal;
use polycox::tietze::{homotopical_reduce_full, Reduction};
use polycox::word::Matcher;
use polycox::{Path2, Polygraph2, Polygraph31, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("{what} took {e:?}, limit {limit:?}"))
}

const GARSIDE_TYPES: [&str; 6] = ["A1xA1", "A2", "B2", "A1xA1xA1", "A2xA1", "A3"];

fn group(t: &str) -> CoxeterGroup {
    enumerate(&CoxeterMatrix::from_type(t).unwrap(), DEFAULT_COSET_CAP).unwrap()
}

/// Completions and reductions of the Garside presentations, computed once.
struct Garside {
    runs: Vec<(&'static str, GarsideCompletion, Reduction, Duration)>,
}

impl Garside {
    fn compute() -> Self {
        let runs = GARSIDE_TYPES
            .iter()
            .map(|&t| {
                let start = Instant::now();
                let c = complete_garside(&group(t)).unwrap();
                let part = garside_reduction_part(&c).unwrap();
                let r = homotopical_reduce_full(&c.p31, &part).unwrap();
                (t, c, r, start.elapsed())
            })
            .collect();
        Garside { runs }
    }
}

// ---------------------------------------------------------------------------

fn b3_plus_completion() -> Outcome {
    let start = Instant::now();
    let c = b3_plus_completed();
    within(start, Duration::from_secs(1), "completion")?;
    let b = &c.base;
    let rules: BTreeSet<(String, String)> =
        b.rules.iter().map(|r| (b.format_word(&r.lhs), b.format_word(&r.rhs))).collect();
    let expected: BTreeSet<(String, String)> =
        [("ta", "as"), ("st", "a"), ("sas", "aa"), ("saa", "aat")].map(|(l, r)| (l.into(), r.into())).into();
    ensure(rules == expected, || format!("rules {rules:?}"))?;
    let sources: BTreeSet<String> = c.cells.iter().map(|x| b.format_word(&x.src.source)).collect();
    ensure(sources == ["sta", "sast", "sasas", "sasaa"].map(String::from).into(), || format!("cells on {sources:?}"))?;

    let (al, be) = (rule_between(b, "ta", "as"), rule_between(b, "st", "a"));
    let (ga, de) = (rule_between(b, "sas", "aa"), rule_between(b, "saa", "aat"));
    let expected: [(&str, Path2, Path2); 4] = [
        ("sta", path_of(b, "sta", &[(be, 1, 0)]), path_of(b, "sta", &[(al, 1, 1), (ga, 1, 0)])),
        ("sast", path_of(b, "sast", &[(ga, 1, 0)]), path_of(b, "sast", &[(be, 1, 2), (de, 1, 0)])),
        (
            "sasas",
            path_of(b, "sasas", &[(ga, 1, 0)]),
            path_of(b, "sasas", &[(ga, 1, 2), (de, 1, 0), (al, 1, 2)]),
        ),
        (
            "sasaa",
            path_of(b, "sasaa", &[(ga, 1, 0)]),
            path_of(b, "sasaa", &[(de, 1, 2), (de, 1, 0), (al, 1, 2), (be, 1, 3)]),
        ),
    ];
    for (name, (src, f, g)) in ["A", "B", "C", "D"].iter().zip(&expected) {
        let cell = &c.cells[cell_at(&c, src)];
        ensure(paths_equal(b, &cell.src, f) && paths_equal(b, &cell.tgt, g), || format!("cell {name} on {src}"))?;
    }
    Ok(format!("4 rules, cells A–D on sta, sast, sasas, sasaa ({:?})", start.elapsed()))
}

fn b3_plus_reduction() -> Outcome {
    let start = Instant::now();
    let c = b3_plus_completed();
    let r = homotopical_reduce_full(&c, &b3_plus_part(&c)).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1), "completion and reduction")?;
    let q = &r.result;
    ensure(q.base.generators == ["s", "t"], || format!("generators {:?}", q.base.generators))?;
    ensure(q.base.rules.len() == 1, || format!("{} rules", q.base.rules.len()))?;
    let rule = &q.base.rules[0];
    let shown = format!("{}⇒{}", q.base.format_word(&rule.lhs), q.base.format_word(&rule.rhs));
    ensure(shown == "tst⇒sts", || format!("rule {shown}"))?;
    ensure(q.cells.is_empty(), || format!("{} cells survive", q.cells.len()))?;
    Ok(format!("(s,t; {shown}; ∅) ({:?})", start.elapsed()))
}

/// The length-additive triples by the braid-move oracle, named by least
/// reduced words.
fn additive_triples(m: &CoxeterMatrix) -> (BTreeSet<String>, BTreeSet<String>) {
    let words = coxeter_bfs(m, 10_000).unwrap();
    let rel = braid_relations(m);
    let name = |w: &Word| -> String { w.iter().map(|&x| m.generators[x as usize].as_str()).collect() };
    let reduced = |parts: &[&Word]| -> bool {
        let w: Word = parts.iter().flat_map(|p| p.iter().copied()).collect();
        !closure(&rel, &w).iter().any(|u| u.windows(2).any(|p| p[0] == p[1]))
    };
    let nontrivial: Vec<&Word> = words.iter().filter(|w| !w.is_empty()).collect();
    let mut pairs = BTreeSet::new();
    let mut triples = BTreeSet::new();
    for u in &nontrivial {
        for v in &nontrivial {
            if !reduced(&[u, v]) {
                continue;
            }
            pairs.insert(format!("alpha_{}_{}", name(u), name(v)));
            for w in &nontrivial {
                if reduced(&[u, v, w]) {
                    triples.insert(format!("A_{}_{}_{}", name(u), name(v), name(w)));
                }
            }
        }
    }
    (pairs, triples)
}

fn garside_reduction(gar: &Garside) -> Outcome {
    let mut details = Vec::new();
    for (t, c, r, time) in &gar.runs {
        ensure(c.tags.len() == c.p31.cells.len(), || format!("{t}: untagged cells"))?;
        let counted: usize = Family::ALL.iter().map(|&f| c.count(f)).sum();
        ensure(counted == c.p31.cells.len(), || format!("{t}: family counts do not cover the cells"))?;
        let (pairs, triples) = additive_triples(&c.group.matrix);
        let cells: BTreeSet<String> = r.result.cells.iter().map(|x| x.name.clone()).collect();
        let rules: BTreeSet<String> = r.result.base.rules.iter().map(|x| x.name.clone()).collect();
        ensure(cells == triples, || format!("{t}: surviving cells differ from the A-family"))?;
        ensure(rules == pairs, || format!("{t}: surviving rules differ from the α-rules"))?;
        ensure(r.result.base.generators.len() == c.group.size() - 1, || format!("{t}: generators changed"))?;
        if *t == "A3" {
            ensure(*time < Duration::from_secs(60), || format!("A3 took {time:?}"))?;
        }
        details.push(format!("{t}: {}→{} cells ({time:?})", c.p31.cells.len(), cells.len()));
    }
    Ok(details.join(", "))
}

/// Finiteness of a rank-3 parabolic, read from its Coxeter graph.
fn spherical_triangle(a: u32, b: u32, c: u32) -> bool {
    let inv = |m: u32| if m == 0 { 0.0 } else { 1.0 / m as f64 };
    inv(a) + inv(b) + inv(c) > 1.0 + 1e-9
}

fn census_oracle(m: &CoxeterMatrix) -> [usize; 4] {
    let n = m.rank();
    let mut pairs = 0;
    let mut triples = 0;
    for r in 0..n {
        for s in r + 1..n {
            pairs += usize::from(m.m[r][s] != 0);
            for t in s + 1..n {
                triples += usize::from(spherical_triangle(m.m[r][s], m.m[r][t], m.m[s][t]));
            }
        }
    }
    [1, n, pairs, triples]
}

fn artin_census() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("A3", [1, 3, 3, 1]),
        ("B3", [1, 3, 3, 1]),
        ("H3", [1, 3, 3, 1]),
        ("A1xA1xA1", [1, 3, 3, 1]),
        ("I2(5)xA1", [1, 3, 3, 1]),
        ("~A2", [1, 3, 3, 0]),
        ("A4", [1, 4, 6, 4]),
    ];
    for (t, expected) in cases {
        let m = CoxeterMatrix::from_type(t).unwrap();
        ensure(census_oracle(&m) == expected, || format!("{t}: oracle disagrees with the expected census"))?;
        let got = cell_census(&artin_coherent(&m).map_err(|e| format!("{t}: {e}"))?);
        ensure(got == expected, || format!("{t}: census {got:?}"))?;
    }
    within(start, Duration::from_secs(300), "census")?;
    Ok(format!("7 types ({:?})", start.elapsed()))
}

fn z_of(t: &str) -> (Polygraph31, Path2, Path2) {
    let p = artin_coherent(&CoxeterMatrix::from_type(t).unwrap()).unwrap();
    let z = p.cells[0].clone();
    (p, z.src, z.tgt)
}

fn check_z(t: &str, upper: &Path2, lower: &Path2) -> Result<(), String> {
    let (p, src, tgt) = z_of(t);
    ensure(paths_equal(&p.base, &src, upper), || format!("{t}: source differs"))?;
    ensure(paths_equal(&p.base, &tgt, lower), || format!("{t}: target differs"))
}

/// Upper and lower boundary of Z for I2(p)×A1: `t` crosses `⟨sr⟩^p` then
/// γ_rs applies, against γ_rs applied first then `t` crossing `⟨rs⟩^p`.
fn i2_schema(b: &Polygraph2, p: u32) -> (Path2, Path2) {
    let (r, s, t) = (0u32, 1u32, 2u32);
    let label = |x: u32| if x == r { "γ_rt" } else { "γ_st" };
    let rule = |l: &str| b.rules.iter().position(|x| x.label == l).unwrap();
    let word = |w: &[u32]| b.format_word(w);
    let mut up = vec![t];
    up.extend(alt(s, r, p));
    let mut upper = vec![(rule(label(up[1])), 1, 0)];
    for i in 1..p as usize {
        upper.push((rule(label(up[i + 1])), 1, i));
    }
    upper.push((rule("γ_rs"), 1, 0));
    let mut lower = vec![(rule("γ_rs"), 1, 1)];
    let rs = alt(r, s, p);
    for (i, &x) in rs.iter().enumerate() {
        lower.push((rule(label(x)), 1, i));
    }
    (path_of(b, &word(&up), &upper), path_of(b, &word(&up), &lower))
}

fn z_boundaries() -> Outcome {
    let mut timings = Vec::new();
    let mut timed = |name: &str, f: &dyn Fn() -> Result<(), String>| -> Result<(), String> {
        let start = Instant::now();
        f()?;
        within(start, Duration::from_secs(10), name)?;
        timings.push(format!("{name} {:?}", start.elapsed()));
        Ok(())
    };
    timed("A1xA1xA1", &|| {
        let (p, _, _) = z_of("A1xA1xA1");
        let b = &p.base;
        let up = transcribed_path(b, &["tsr", "γ_st r", "str", "s γ_rt", "srt", "γ_rs t", "rst"]);
        let low = transcribed_path(b, &["tsr", "t γ_rs", "trs", "γ_rt s", "rts", "r γ_st", "rst"]);
        check_z("A1xA1xA1", &up, &low)
    })?;
    timed("A3", &|| {
        let (p, _, _) = z_of("A3");
        let b = &p.base;
        let up = transcribed_path(
            b,
            &[
                "tstrst", "γ_st rst", "stsrst", "st γ_rs t", "strsrt", "s γ_rt s γ_rt⁻", "srtstr", "sr γ_st r",
                "srstsr", "γ_rs tsr", "rsrtsr",
            ],
        );
        let low = transcribed_path(
            b,
            &[
                "tstrst", "ts γ_rt st", "tsrtst", "tsr γ_st", "tsrsts", "t γ_rs ts", "trsrts", "γ_rt s γ_rt⁻ s",
                "rtstrs", "r γ_st rs", "rstsrs", "rst γ_rs", "rstrsr", "rs γ_rt sr", "rsrtsr",
            ],
        );
        check_z("A3", &up, &low)
    })?;
    timed("B3", &|| {
        let (p, _, _) = z_of("B3");
        let b = &p.base;
        let up = transcribed_path(
            b,
            &[
                "tstrsrtsr", "γ_st rsrtsr", "stsrsrtsr", "st γ_rs tsr", "strsrstsr", "s γ_rt sr γ_st⁻ r",
                "srtsrtstr", "srts γ_rt⁻ str", "srtstrstr", "sr γ_st rs γ_rt", "srstsrsrt", "srst γ_rs t",
                "srstrsrst", "srs γ_rt srst", "srsrtsrst", "γ_rs tsrst", "rsrstsrst",
            ],
        );
        let low = transcribed_path(
            b,
            &[
                "tstrsrtsr", "ts γ_rt s γ_rt⁻ sr", "tsrtstrsr", "tsr γ_st rsr", "tsrstsrsr", "tsrst γ_rs",
                "tsrstrsrs", "tsrs γ_rt srs", "tsrsrtsrs", "t γ_rs tsrs", "trsrstsrs", "γ_rt sr γ_st⁻ rs",
                "rtsrtstrs", "rts γ_rt⁻ strs", "rtstrstrs", "r γ_st rs γ_rt s", "rstsrsrts", "rst γ_rs ts",
                "rstrsrsts", "rs γ_rt sr γ_st⁻", "rsrtsrtst", "rsrts γ_rt⁻ st", "rsrtstrst", "rsr γ_st rst",
                "rsrstsrst",
            ],
        );
        check_z("B3", &up, &low)
    })?;
    for p in [3u32, 4, 5] {
        let t = format!("I2({p})xA1");
        timed(&t, &|| {
            let (q, _, _) = z_of(&t);
            let (up, low) = i2_schema(&q.base, p);
            check_z(&t, &up, &low)
        })?;
    }
    Ok(timings.join(", "))
}

/// Words for the convergence check: all of length ≤ 8 over at most five
/// generators, a seeded sample otherwise.
fn test_words(n: usize, rng: &mut StdRng) -> Vec<Word> {
    if n <= 5 {
        all_words(n, 8)
    } else {
        (0..1000)
            .map(|_| {
                let len = rng.gen_range(0..=8);
                (0..len).map(|_| rng.gen_range(0..n as u32)).collect()
            })
            .collect()
    }
}

fn unique_normal_forms(p: &Polygraph2, words: &[Word]) -> Result<(), String> {
    let m = Matcher::new(p);
    let mut memo = HashMap::new();
    for w in words {
        let nfs = reachable_normal_forms(&m, p, w, &mut memo).map_err(|e| e.to_string())?;
        ensure(nfs.len() == 1, || format!("{} normal forms for {}", nfs.len(), p.format_word(w)))?;
        if memo.len() > 2_000_000 {
            memo.clear();
        }
    }
    Ok(())
}

fn convergence(gar: &Garside) -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checked = 0;
    let b3 = b3_plus_completed();
    let words = test_words(3, &mut rng);
    unique_normal_forms(&b3.base, &words).map_err(|e| format!("B3+: {e}"))?;
    checked += words.len();
    for (t, c, _, _) in &gar.runs {
        let words = test_words(c.p31.base.generators.len(), &mut rng);
        unique_normal_forms(&c.p31.base, &words).map_err(|e| format!("{t}: {e}"))?;
        checked += words.len();
    }
    Ok(format!("{checked} words over 7 presentations ({:?})", start.elapsed()))
}

/// Checks that `u ~ v` in the source iff `π(u) ~ π(v)` in the target, on the
/// given source words, and that every target word in `targets` is hit.
fn preserves_classes(source: &Polygraph2, r: &Reduction, words: &[Word], targets: &[Word]) -> Result<usize, String> {
    let a = class_ids(&relations_of(source), words);
    let images: Vec<Word> = words.iter().map(|w| r.projection.word(w)).collect();
    let q_rel = relations_of(&r.result.base);
    let b = class_ids(&q_rel, &images);
    ensure(same_partition(&a, &b), || "π does not induce a bijection of classes".into())?;
    let hit: BTreeSet<Word> = images.iter().flat_map(|w| closure(&q_rel, w)).collect();
    ensure(targets.iter().all(|w| hit.contains(w)), || "π misses a class of the reduced presentation".into())?;
    Ok(a.iter().collect::<BTreeSet<_>>().len())
}

fn preservation(gar: &Garside) -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let c = b3_plus_completed();
    let r = homotopical_reduce_full(&c, &b3_plus_part(&c)).map_err(|e| e.to_string())?;
    let words = all_words(3, 6);
    let n = preserves_classes(&c.base, &r, &words, &all_words(2, 6)).map_err(|e| format!("B3+: {e}"))?;
    details.push(format!("B3+ {n} classes"));
    for (t, c, r, _) in &gar.runs {
        // Garside words are graded by the length of the elements they list.
        let weights: Vec<usize> = (1..c.group.size()).map(|e| c.group.length(e) as usize).collect();
        let words = words_of_weight(&weights, 6);
        let n = preserves_classes(&c.p31.base, r, &words, &words).map_err(|e| format!("{t}: {e}"))?;
        details.push(format!("{t} {n}"));
    }
    Ok(format!("{} ({:?})", details.join(", "), start.elapsed()))
}

fn coxeter_orders() -> Outcome {
    let start = Instant::now();
    for (t, n) in [("A2", 6), ("A1xA1xA1", 8), ("A3", 24), ("B3", 48), ("H3", 120)] {
        let m = CoxeterMatrix::from_type(t).unwrap();
        let g = enumerate(&m, DEFAULT_COSET_CAP).map_err(|e| format!("{t}: {e}"))?;
        ensure(g.size() == n, || format!("{t}: |W| = {}", g.size()))?;
        let oracle = coxeter_bfs(&m, 10_000).unwrap();
        ensure(oracle.len() == n, || format!("{t}: oracle finds {}", oracle.len()))?;
        let ids: BTreeSet<usize> = oracle.iter().map(|w| g.element(w)).collect();
        ensure(ids.len() == n, || format!("{t}: oracle words collide in the table"))?;
        ensure(oracle.iter().all(|w| g.length(g.element(w)) as usize == w.len()), || format!("{t}: lengths differ"))?;
        for u in 0..n {
            for s in 0..m.rank() {
                ensure(g.mul_right(g.mul_right(u, s), s) == u, || format!("{t}: s² ≠ 1"))?;
                for t2 in s + 1..m.rank() {
                    let word = alt(s as u32, t2 as u32, 2 * m.m[s][t2]);
                    let v = word.iter().fold(u, |acc, &x| g.mul_right(acc, x as usize));
                    ensure(v == u, || format!("{t}: braid relation fails"))?;
                }
            }
        }
    }
    within(start, Duration::from_secs(30), "enumeration")?;
    Ok(format!("6, 8, 24, 48, 120 ({:?})", start.elapsed()))
}

/// Every terminal state of local sliding applied in any order.
fn sliding_outcomes(g: &CoxeterGroup, seq: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut seen = BTreeSet::from([seq.to_vec()]);
    let mut stack = vec![seq.to_vec()];
    while let Some(x) = stack.pop() {
        let mut terminal = true;
        for i in 0..x.len().saturating_sub(1) {
            if !g.is_left_weighted(x[i], x[i + 1]) {
                terminal = false;
                let (a, b) = g.left_weighted(x[i], x[i + 1]);
                let mut y = x.clone();
                y[i] = a;
                y[i + 1] = b;
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        if terminal {
            let mut y = x;
            while y.last() == Some(&0) {
                y.pop();
            }
            out.insert(y);
        }
    }
    out
}

fn local_sliding() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for t in ["A2", "B2"] {
        let m = CoxeterMatrix::from_type(t).unwrap();
        let g = group(t);
        let rel = braid_relations(&m);
        let mut seqs: Vec<Vec<usize>> = vec![vec![]];
        for len in 1..=3 {
            let mut layer: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..len {
                layer = layer
                    .into_iter()
                    .flat_map(|s| (0..g.size()).map(move |u| [s.clone(), vec![u]].concat()))
                    .collect();
            }
            seqs.extend(layer);
        }
        let mut by_nf: HashMap<Vec<usize>, BTreeSet<Word>> = HashMap::new();
        let mut by_product: HashMap<BTreeSet<Word>, Vec<usize>> = HashMap::new();
        for seq in &seqs {
            let outcomes = sliding_outcomes(&g, seq);
            ensure(outcomes.len() == 1, || format!("{t}: {seq:?} has {} normal forms", outcomes.len()))?;
            let nf = outcomes.into_iter().next().unwrap();
            ensure(nf == g.local_sliding_normal_form(seq), || format!("{t}: {seq:?} slides differently"))?;
            ensure(nf.windows(2).all(|p| g.is_left_weighted(p[0], p[1])), || format!("{t}: {nf:?} not left-weighted"))?;
            // The product as a positive braid, up to braid moves.
            let word: Word = seq.iter().flat_map(|&u| g.word(u).to_vec()).collect();
            let product = closure(&rel, &word);
            let prev = by_nf.entry(nf.clone()).or_insert_with(|| product.clone());
            ensure(*prev == product, || format!("{t}: equal normal forms, different products"))?;
            let prev = by_product.entry(product).or_insert_with(|| nf.clone());
            ensure(*prev == nf, || format!("{t}: equal products, different normal forms"))?;
        }
        total += seqs.len();
    }
    within(start, Duration::from_secs(10), "local sliding")?;
    Ok(format!("{total} sequences ({:?})", start.elapsed()))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(d) => println!("PASS {n} {name}: {d}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {n} {name}: {e}");
            }
        }
    };
    report(1, "B3+ completion", &b3_plus_completion);
    report(2, "B3+ completion-reduction", &b3_plus_reduction);
    let computed = catch_unwind(Garside::compute).ok();
    let gar = computed.as_ref();
    let with_gar = |f: fn(&Garside) -> Outcome| {
        move || match gar {
            Some(g) => f(g),
            None => Err("Garside completion or reduction failed".into()),
        }
    };
    report(3, "Garside reduction", &with_gar(garside_reduction));
    report(4, "Artin census", &artin_census);
    report(5, "Z boundaries", &z_boundaries);
    report(6, "convergence", &with_gar(convergence));
    report(7, "presentation preservation", &with_gar(preservation));
    report(8, "Coxeter arithmetic", &coxeter_orders);
    report(9, "local sliding", &local_sliding);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
