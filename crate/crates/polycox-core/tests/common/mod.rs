//! Shared fixtures and independent oracles for the integration tests.
//!
//! The oracles here deliberately avoid the engine's own rewriting machinery:
//! they work on plain `Vec<u32>` words with naive substring replacement.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use polycox::completion::{generating_triple_confluence, homotopical_complete, triple_critical_branchings};
use polycox::coxeter::CoxeterMatrix;
use polycox::tietze::{CollapsibleCell, CollapsiblePart, CollapsibleRule, CollapsibleSphere, Side};
use polycox::word::apply_step;
use polycox::{Dir, Path2, Polygraph2, Polygraph31, RuleId, Sphere3, Step, TerminationOrder, Word};

// ---------------------------------------------------------------------------
// The braid monoid B₃⁺ on (s, t, a).

/// `(s, t, a; ta ⇒ as, st ⇒ a)`.
pub fn b3_plus() -> Polygraph2 {
    let mut p = Polygraph2::new(["s", "t", "a"]).unwrap();
    p.add_labelled_rule("alpha", vec![1, 2], vec![2, 0], "α").unwrap();
    p.add_labelled_rule("beta", vec![0, 1], vec![2], "β").unwrap();
    p
}

pub fn b3_plus_order(p: &Polygraph2) -> TerminationOrder {
    TerminationOrder::deglex(p, &["t", "s", "a"]).unwrap()
}

pub fn b3_plus_completed() -> Polygraph31 {
    let p = b3_plus();
    homotopical_complete(&p, &b3_plus_order(&p)).unwrap()
}

/// The rule `lhs ⇒ rhs`, given as strings.
pub fn rule_between(p: &Polygraph2, lhs: &str, rhs: &str) -> RuleId {
    let (l, r) = (p.parse_word(lhs).unwrap(), p.parse_word(rhs).unwrap());
    p.rules
        .iter()
        .position(|x| x.lhs == l && x.rhs == r)
        .unwrap_or_else(|| panic!("no rule {lhs} ⇒ {rhs}"))
}

/// The 3-cell whose boundary starts at `source`.
pub fn cell_at(p: &Polygraph31, source: &str) -> usize {
    let w = p.base.parse_word(source).unwrap();
    p.cells.iter().position(|c| c.src.source == w).unwrap_or_else(|| panic!("no cell on {source}"))
}

/// The generating triple confluence on `source`.
pub fn sphere_at(p: &Polygraph31, source: &str) -> Sphere3 {
    let w = p.base.parse_word(source).unwrap();
    let t = triple_critical_branchings(&p.base)
        .into_iter()
        .find(|t| t.source == w)
        .unwrap_or_else(|| panic!("no triple branching on {source}"));
    generating_triple_confluence(p, &t).unwrap()
}

/// Γ = {ω₁, ω₂, A, B, β}: β eliminates a, A eliminates γ, B eliminates δ,
/// and the spheres on sasta and sasast eliminate C and D.
pub fn b3_plus_part(c: &Polygraph31) -> CollapsiblePart {
    let b = &c.base;
    let (alpha, beta) = (rule_between(b, "ta", "as"), rule_between(b, "st", "a"));
    let (gamma, delta) = (rule_between(b, "sas", "aa"), rule_between(b, "saa", "aat"));
    let [a, bb, cc, d] = ["sta", "sast", "sasas", "sasaa"].map(|w| cell_at(c, w));
    let mut g = CollapsiblePart::default();
    g.two_cells.push(CollapsibleRule { rule: beta, invert: false });
    g.three_cells.push(CollapsibleCell { cell: a, side: Side::Tgt, index: 1 });
    g.three_cells.push(CollapsibleCell { cell: bb, side: Side::Tgt, index: 1 });
    g.spheres.push(CollapsibleSphere { sphere: sphere_at(c, "sasta"), redundant: cc });
    g.spheres.push(CollapsibleSphere { sphere: sphere_at(c, "sasast"), redundant: d });
    for (r, rank) in [(alpha, 0), (beta, 1), (gamma, 2), (delta, 3)] {
        g.order.rules.insert(r, rank);
    }
    for (x, rank) in [(a, 0), (bb, 1), (cc, 2), (d, 3)] {
        g.order.cells.insert(x, rank);
    }
    for (name, rank) in [("s", 0), ("t", 1), ("a", 2)] {
        g.order.generators.insert(b.generator(name).unwrap(), rank);
    }
    g
}

/// A 2-cell given by `(rule, dir, position)` steps from `source`.
pub fn path_of(p: &Polygraph2, source: &str, steps: &[(RuleId, i64, usize)]) -> Path2 {
    let mut f = Path2::identity(p.parse_word(source).unwrap());
    for &(r, d, pos) in steps {
        f.push(p, Step::new(r, Dir::from_sign(d).unwrap(), pos)).unwrap();
    }
    f
}

// ---------------------------------------------------------------------------
// Word enumeration.

/// Every word of length `0..=max_len` over `n` letters.
pub fn all_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * n);
        for w in &layer {
            for x in 0..n as u32 {
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every word whose total weight is at most `max_weight` (all weights ≥ 1).
pub fn words_of_weight(weights: &[usize], max_weight: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack: Vec<(Word, usize)> = vec![(Vec::new(), 0)];
    while let Some((w, wt)) = stack.pop() {
        for (x, &c) in weights.iter().enumerate() {
            if wt + c <= max_weight {
                let mut v = w.clone();
                v.push(x as u32);
                stack.push((v, wt + c));
            }
        }
        out.push(w);
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Closure oracle: equivalence of words under a set of relations, computed by
// exhaustive search in both directions. Only meaningful for relations that
// preserve some positive weight, so that every class is finite.

fn replacements(w: &[u32], from: &[u32], to: &[u32], out: &mut Vec<Word>) {
    if from.len() > w.len() {
        return;
    }
    for i in 0..=w.len() - from.len() {
        if &w[i..i + from.len()] == from {
            let mut v = w[..i].to_vec();
            v.extend_from_slice(to);
            v.extend_from_slice(&w[i + from.len()..]);
            out.push(v);
        }
    }
}

/// Neighbours of `w` under the relations, used in both directions.
pub fn relation_neighbours(relations: &[(Word, Word)], w: &[u32]) -> Vec<Word> {
    let mut out = Vec::new();
    for (l, r) in relations {
        replacements(w, l, r, &mut out);
        replacements(w, r, l, &mut out);
    }
    out
}

/// The class of `w`: every word reachable through the relations.
pub fn closure(relations: &[(Word, Word)], w: &[u32]) -> BTreeSet<Word> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(u) = queue.pop_front() {
        for v in relation_neighbours(relations, &u) {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Assigns a class id to each word; words in the same class share an id.
pub fn class_ids(relations: &[(Word, Word)], words: &[Word]) -> Vec<usize> {
    let mut id_of: HashMap<Word, usize> = HashMap::new();
    let mut next = 0;
    words
        .iter()
        .map(|w| {
            if let Some(&i) = id_of.get(w) {
                return i;
            }
            let i = next;
            next += 1;
            for v in closure(relations, w) {
                id_of.insert(v, i);
            }
            i
        })
        .collect()
}

pub fn relations_of(p: &Polygraph2) -> Vec<(Word, Word)> {
    p.rules.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect()
}

/// Whether two labellings induce the same partition, i.e. the map between
/// class ids is a well-defined bijection.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    let mut ab: HashMap<usize, usize> = HashMap::new();
    let mut ba: HashMap<usize, usize> = HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| *ab.entry(x).or_insert(y) == y && *ba.entry(y).or_insert(x) == x)
}

// ---------------------------------------------------------------------------
// Braid-move oracle for Coxeter groups and positive braids.

/// `⟨ab⟩^m` as a word.
pub fn alt(a: u32, b: u32, m: u32) -> Word {
    (0..m).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

/// The braid relations `⟨st⟩^m = ⟨ts⟩^m` for finite `m ≥ 2`.
pub fn braid_relations(m: &CoxeterMatrix) -> Vec<(Word, Word)> {
    let n = m.rank();
    let mut out = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            let k = m.m[s][t];
            if k >= 2 {
                out.push((alt(s as u32, t as u32, k), alt(t as u32, s as u32, k)));
            }
        }
    }
    out
}

/// Elements of W by breadth-first search on reduced words. A word is reduced
/// exactly when no word reachable by braid moves contains a square `ss`, and
/// two reduced words give the same element exactly when they are related by
/// braid moves. Each element is represented by its least reduced word.
pub fn coxeter_bfs(m: &CoxeterMatrix, cap: usize) -> Option<Vec<Word>> {
    let rel = braid_relations(m);
    let n = m.rank() as u32;
    let mut seen: HashSet<Word> = HashSet::from([Vec::new()]);
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..n {
                let mut v = w.clone();
                v.push(s);
                let class = closure(&rel, &v);
                if class.iter().any(|u| u.windows(2).any(|p| p[0] == p[1])) {
                    continue;
                }
                let rep = class.into_iter().next().unwrap();
                if seen.insert(rep.clone()) {
                    next.push(rep.clone());
                    out.push(rep);
                    if out.len() > cap {
                        return None;
                    }
                }
            }
        }
        layer = next;
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// Transcribed boundaries of Artin 3-cells.

/// Parses one edge label such as `sr γ_st r` or `s γ_rt s γ_rt⁻` applied to
/// `word`: letters advance the position, each `γ_xy` (or `γ_xy⁻`, read
/// backwards) is a step at the current position. Whitespace is ignored.
pub fn edge_steps(p: &Polygraph2, word: &[u32], label: &str) -> Vec<Step> {
    let chars: Vec<char> = label.chars().filter(|c| !c.is_whitespace() && *c != '·').collect();
    let mut steps = Vec::new();
    let (mut i, mut pos) = (0, 0);
    while i < chars.len() {
        if chars[i] == 'γ' {
            assert_eq!(chars[i + 1], '_', "bad label {label}");
            let name = format!("γ_{}{}", chars[i + 2], chars[i + 3]);
            i += 4;
            let dir = if i < chars.len() && chars[i] == '⁻' {
                i += 1;
                Dir::Neg
            } else {
                Dir::Pos
            };
            let rule = p.rules.iter().position(|r| r.label == name).unwrap_or_else(|| panic!("no rule {name}"));
            let step = Step::new(rule, dir, pos);
            pos += p.rules[rule].input(dir).len();
            steps.push(step);
        } else {
            let x = p.generator(&chars[i].to_string()).unwrap_or_else(|| panic!("bad letter in {label}"));
            assert_eq!(word[pos], x, "label {label} does not match the word");
            pos += 1;
            i += 1;
        }
    }
    assert_eq!(pos, word.len(), "label {label} does not cover the word");
    steps
}

/// A 2-cell from a chain `v₀ -e₁-> v₁ -e₂-> …`, given as alternating vertex
/// and edge strings; every vertex is checked against the computed word.
pub fn transcribed_path(p: &Polygraph2, chain: &[&str]) -> Path2 {
    let mut f = Path2::identity(p.parse_word(chain[0]).unwrap());
    for pair in chain[1..].chunks(2) {
        let (label, vertex) = (pair[0], pair[1]);
        let word = f.target(p).unwrap();
        for s in edge_steps(p, &word, label) {
            f.push(p, s).unwrap();
        }
        assert_eq!(p.format_word(&f.target(p).unwrap()), vertex, "edge {label}");
    }
    f
}

/// A 2-cell through the given vertices, each edge being a shortest chain of
/// steps between consecutive vertices (at most `depth` steps).
pub fn path_through(p: &Polygraph2, vertices: &[&str], depth: usize) -> Path2 {
    let mut f = Path2::identity(p.parse_word(vertices[0]).unwrap());
    for v in &vertices[1..] {
        let from = f.target(p).unwrap();
        let to = p.parse_word(v).unwrap();
        let mut prev: HashMap<Word, (Word, Step)> = HashMap::new();
        let mut layer = vec![from.clone()];
        let mut found = from == to;
        for _ in 0..depth {
            if found {
                break;
            }
            let mut next = Vec::new();
            for w in &layer {
                for (r, rule) in p.rules.iter().enumerate() {
                    for dir in [Dir::Pos, Dir::Neg] {
                        let l = rule.input(dir).len();
                        for i in 0..=w.len().saturating_sub(l) {
                            if w.len() >= l && w[i..i + l] == rule.input(dir)[..] {
                                let u = apply_step(p, w, r, i, dir).unwrap();
                                if u != from && !prev.contains_key(&u) {
                                    prev.insert(u.clone(), (w.clone(), Step::new(r, dir, i)));
                                    found |= u == to;
                                    next.push(u);
                                }
                            }
                        }
                    }
                }
            }
            layer = next;
        }
        assert!(found, "no path of length ≤ {depth} to {v}");
        let mut steps = Vec::new();
        let mut cur = to;
        while cur != from {
            let (w, s) = prev[&cur].clone();
            steps.push(s);
            cur = w;
        }
        for s in steps.into_iter().rev() {
            f.push(p, s).unwrap();
        }
    }
    f
}
