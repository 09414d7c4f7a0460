//! Artin's coherent presentation of an Artin monoid.
//!
//! Artin's presentation has one generator per element of S and one rule
//! `γ_{s,t}: ⟨ts⟩^m ⇒ ⟨st⟩^m` for `s < t` with `m = m_st` finite. Its
//! coherent extension has one 3-cell `Z_{r,s,t}` for `r < s < t` whenever the
//! parabolic subgroup `W_{r,s,t}` is finite. `Z_{r,s,t}` is the image of the
//! Garside cell `A_{t,u,v}` under the projection π that collapses every
//! non-essential cell of Garside's coherent presentation.

use std::collections::HashMap;

use crate::cells::{Polygraph31, ThreeCell};
use crate::coxeter::{enumerate, rank3_finite, CoxeterGroup, CoxeterMatrix, ElemId, DEFAULT_COSET_CAP};
use crate::error::{Error, Result};
use crate::garside::{a_cell_index, elem, gar4_spheres};
use crate::path::{compose, compose_all, inverse, normalize_path, whisker, Path2, Step};
use crate::tietze::{CollapsibleCell, CollapsiblePart, CollapsibleRule, CollapsibleSphere, Side};
use crate::word::{Dir, Letter, Polygraph2, RuleId, Word};

/// Where a length-additive family of non-trivial elements falls in the
/// partition used to collapse Garside's coherent presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Every prefix product is the longest element of the generators it
    /// involves.
    Essential,
    /// The first non-essential prefix, of length `k ≥ 2`, does not involve a
    /// new smallest divisor.
    Collapsible { k: usize },
    /// The first non-essential prefix has length `k`; its last element
    /// factors as `v·w` with the prefix ending in `v` essential (for `k = 1`,
    /// `v` is the smallest divisor).
    Redundant { k: usize, v: ElemId, w: ElemId },
}

fn check_family(g: &CoxeterGroup, us: &[ElemId]) -> Result<()> {
    if us.is_empty() || us.contains(&0) {
        return Err(Error::Precondition("families must be non-empty and avoid the identity".into()));
    }
    let total: u32 = us.iter().map(|&u| g.length(u)).sum();
    let prod = us.iter().fold(0, |acc, &u| g.mul(acc, u));
    if g.length(prod) != total {
        return Err(Error::Precondition("the family is not length-additive".into()));
    }
    Ok(())
}

/// Classifies a length-additive family by the chain of longest elements of
/// its successive smallest divisors.
pub fn classify_tuple(g: &CoxeterGroup, us: &[ElemId]) -> Result<Classification> {
    check_family(g, us)?;
    let mut prod = 0;
    let mut divisors: Vec<usize> = Vec::with_capacity(us.len());
    for (k, &u) in us.iter().enumerate() {
        let prev = prod;
        prod = g.mul(prod, u);
        divisors.push(g.smallest_divisor(prod)?);
        let w0 = g.longest_element(&divisors);
        if prod == w0 {
            continue;
        }
        if k == 0 {
            let v = g.generator(divisors[0]);
            return Ok(Classification::Redundant { k: 1, v, w: g.complement(v, u)? });
        }
        if divisors[k - 1] == divisors[k] {
            return Ok(Classification::Collapsible { k: k + 1 });
        }
        let v = g.complement(prev, w0)?;
        let w = g.complement(v, u).map_err(|_| {
            Error::Classification(format!("{} does not factor through {}", g.name(u), g.name(v)))
        })?;
        return Ok(Classification::Redundant { k: k + 1, v, w });
    }
    Ok(Classification::Essential)
}

/// The order key `(l(u₁⋯uₙ), d_{u₁}, l(u₁), d_{u₁u₂}, l(u₁u₂), …)`, with
/// generators compared by their position in S.
pub fn phi_key(g: &CoxeterGroup, us: &[ElemId]) -> Result<Vec<usize>> {
    check_family(g, us)?;
    let total = us.iter().fold(0, |acc, &u| g.mul(acc, u));
    let mut key = vec![g.length(total) as usize];
    let mut prod = 0;
    for &u in &us[..us.len() - 1] {
        prod = g.mul(prod, u);
        key.push(g.smallest_divisor(prod)?);
        key.push(g.length(prod) as usize);
    }
    Ok(key)
}

fn gamma_label(m: &CoxeterMatrix, s: usize, t: usize) -> String {
    let (a, b) = (&m.generators[s], &m.generators[t]);
    if a.chars().count() == 1 && b.chars().count() == 1 {
        format!("γ_{a}{b}")
    } else {
        format!("γ_{{{a},{b}}}")
    }
}

/// `⟨ab⟩^m`: the alternating word of length `m` starting with `a`.
pub fn alternating(a: Letter, b: Letter, m: u32) -> Word {
    (0..m).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

/// Artin's presentation: generators S, rules `γ_{s,t}: ⟨ts⟩^m ⇒ ⟨st⟩^m` for
/// `s < t` with `m_st` finite.
pub fn artin_presentation(m: &CoxeterMatrix) -> Polygraph2 {
    let mut p = Polygraph2 { generators: m.generators.clone(), rules: Vec::new() };
    for s in 0..m.rank() {
        for t in s + 1..m.rank() {
            if let Some(k) = m.entry(s, t) {
                let (a, b) = (s as Letter, t as Letter);
                let name = format!("gamma_{}_{}", m.generators[s], m.generators[t]);
                p.add_labelled_rule(name, alternating(b, a, k), alternating(a, b, k), gamma_label(m, s, t))
                    .expect("generator names are distinct");
            }
        }
    }
    p
}

enum Memo {
    Busy,
    Done(Path2),
}

/// The projection π from Garside's coherent presentation of `W` onto
/// Artin's presentation, computed by recursion on the classification.
pub struct Projector<'g> {
    g: &'g CoxeterGroup,
    pub art: Polygraph2,
    gamma: HashMap<(usize, usize), RuleId>,
    words: HashMap<ElemId, Word>,
    alphas: HashMap<(ElemId, ElemId), Memo>,
}

impl<'g> Projector<'g> {
    pub fn new(g: &'g CoxeterGroup) -> Self {
        let art = artin_presentation(&g.matrix);
        let mut gamma = HashMap::new();
        for (r, rule) in art.rules.iter().enumerate() {
            // lhs = ⟨ts⟩^m with s < t.
            gamma.insert((rule.lhs[1] as usize, rule.lhs[0] as usize), r);
        }
        Projector { g, art, gamma, words: HashMap::new(), alphas: HashMap::new() }
    }

    /// `π(u) = s₁⋯sₙ` with each `sᵢ` the smallest divisor of `sᵢ⋯sₙ`.
    pub fn word(&mut self, u: ElemId) -> Result<Word> {
        if let Some(w) = self.words.get(&u) {
            return Ok(w.clone());
        }
        let mut out = Vec::with_capacity(self.g.length(u) as usize);
        let mut x = u;
        while x != 0 {
            let s = self.g.smallest_divisor(x)?;
            out.push(s as Letter);
            x = self.g.mul(self.g.generator(s), x);
        }
        self.words.insert(u, out.clone());
        Ok(out)
    }

    fn words_of(&mut self, us: &[ElemId]) -> Result<Word> {
        let mut out = Vec::new();
        for &u in us {
            out.extend(self.word(u)?);
        }
        Ok(out)
    }

    /// `π(α_{u,v})`: a 2-cell of Artin's presentation from `π(u)π(v)` to
    /// `π(uv)`, normalized.
    pub fn alpha(&mut self, u: ElemId, v: ElemId) -> Result<Path2> {
        match self.alphas.get(&(u, v)) {
            Some(Memo::Done(f)) => return Ok(f.clone()),
            Some(Memo::Busy) => {
                return Err(Error::Cycle(format!(
                    "π(α_{{{},{}}}) depends on itself",
                    self.g.name(u),
                    self.g.name(v)
                )))
            }
            None => {}
        }
        self.alphas.insert((u, v), Memo::Busy);
        let out = self.alpha_uncached(u, v);
        match &out {
            Ok(f) => self.alphas.insert((u, v), Memo::Done(f.clone())),
            Err(_) => self.alphas.remove(&(u, v)),
        };
        out
    }

    fn alpha_uncached(&mut self, u: ElemId, v: ElemId) -> Result<Path2> {
        let g = self.g;
        let source = self.words_of(&[u, v])?;
        let f = match classify_tuple(g, &[u, v])? {
            Classification::Essential => {
                let t = g.smallest_divisor(u)?;
                let s = g.smallest_divisor(g.mul(u, v))?;
                let r = *self
                    .gamma
                    .get(&(s, t))
                    .ok_or_else(|| Error::Classification(format!("no rule γ for ({s},{t})")))?;
                let mut f = Path2::identity(source);
                f.push(&self.art, Step::fwd(r, 0))?;
                f
            }
            Classification::Collapsible { .. } => Path2::identity(source),
            Classification::Redundant { k: 1, v: s, w } => {
                // A_{s,w,v}: α_{s,w}|v ⋆ α_{u,v} = s|α_{w,v} ⋆ α_{s,wv}, with π(α_{s,w}) trivial.
                let s_word = self.word(s)?;
                let inner = whisker(&s_word, &self.alpha(w, v)?, &[]);
                let outer = self.alpha(s, g.mul(w, v))?;
                compose(&self.art, &inner, &outer)?
            }
            Classification::Redundant { k: 2, v: x, w } => {
                // A_{u,x,w}: α_{u,x}|w ⋆ α_{ux,w} = u|α_{x,w} ⋆ α_{u,v}.
                let (u_word, w_word) = (self.word(u)?, self.word(w)?);
                let (a_xw, a_ux, last) = (self.alpha(x, w)?, self.alpha(u, x)?, self.alpha(g.mul(u, x), w)?);
                let top = inverse(&self.art, &whisker(&u_word, &a_xw, &[]))?;
                let mid = whisker(&[], &a_ux, &w_word);
                compose_all(&self.art, &[top, mid, last])?
            }
            c => return Err(Error::Classification(format!("unexpected classification {c:?} of a pair"))),
        };
        Ok(normalize_path(&self.art, &f))
    }

    /// π of a 2-cell of a Garside presentation (all rules `u|v ⇒ uv`).
    pub fn path(&mut self, gar: &Polygraph2, f: &Path2) -> Result<Path2> {
        let words = f.words(gar)?;
        let src = self.words_of(&f.source.iter().map(|&x| elem(x)).collect::<Vec<_>>())?;
        let mut out = Path2::identity(src);
        for (step, before) in f.steps.iter().zip(&words) {
            let rule = &gar.rules[step.rule];
            if rule.lhs.len() != 2 || rule.rhs.len() != 1 {
                return Err(Error::Classification(format!("rule {} is not of the form u|v ⇒ uv", rule.name)));
            }
            let (u, v) = (elem(rule.lhs[0]), elem(rule.lhs[1]));
            let input_len = rule.input(step.dir).len();
            let left: Vec<ElemId> = before[..step.pos].iter().map(|&x| elem(x)).collect();
            let right: Vec<ElemId> = before[step.pos + input_len..].iter().map(|&x| elem(x)).collect();
            let core = self.alpha(u, v)?;
            let core = match step.dir {
                Dir::Pos => core,
                Dir::Neg => inverse(&self.art, &core)?,
            };
            let piece = whisker(&self.words_of(&left)?, &core, &self.words_of(&right)?);
            out = compose(&self.art, &out, &piece)?;
        }
        Ok(normalize_path(&self.art, &out))
    }

    /// π of the 3-cell `cell` of a Garside coherent presentation: its
    /// projected (source, target).
    pub fn cell(&mut self, gar: &Polygraph31, cell: usize) -> Result<(Path2, Path2)> {
        let c = &gar.cells[cell];
        Ok((self.path(&gar.base, &c.src)?, self.path(&gar.base, &c.tgt)?))
    }

    /// The image of the essential cell `A_{t,u,v}` of a rank-3 group with
    /// generators `r < s < t`: `u` completes `t` to `w₀(s,t)` and `v`
    /// completes `w₀(s,t)` to `w₀`.
    pub fn z_cell(&mut self) -> Result<(Path2, Path2)> {
        let g = self.g;
        if g.rank() != 3 {
            return Err(Error::Precondition("Z cells live in rank 3".into()));
        }
        let t = g.generator(2);
        let w_st = g.longest_element(&[1, 2]);
        let u = g.complement(t, w_st)?;
        let v = g.complement(w_st, g.w0())?;
        let (tw, vw) = (self.word(t)?, self.word(v)?);
        let (a_tu, a_wv) = (self.alpha(t, u)?, self.alpha(w_st, v)?);
        let (a_uv, a_tuv) = (self.alpha(u, v)?, self.alpha(t, g.mul(u, v))?);
        let src = compose(&self.art, &whisker(&[], &a_tu, &vw), &a_wv)?;
        let tgt = compose(&self.art, &whisker(&tw, &a_uv, &[]), &a_tuv)?;
        Ok((normalize_path(&self.art, &src), normalize_path(&self.art, &tgt)))
    }
}

/// π applied to the 3-cell `cell` of Garside's coherent presentation.
pub fn project_pi(g: &CoxeterGroup, gar: &Polygraph31, cell: usize) -> Result<(Path2, Path2)> {
    Projector::new(g).cell(gar, cell)
}

/// Renames the letters and rules of a path.
pub fn relabel(f: &Path2, letters: &[Letter], rules: &[RuleId]) -> Path2 {
    Path2 {
        source: f.source.iter().map(|&x| letters[x as usize]).collect(),
        steps: f.steps.iter().map(|s| Step { rule: rules[s.rule], ..*s }).collect(),
    }
}

/// Artin's coherent presentation, with parabolic groups enumerated up to
/// the default coset cap.
pub fn artin_coherent(m: &CoxeterMatrix) -> Result<Polygraph31> {
    artin_coherent_with(m, DEFAULT_COSET_CAP)
}

/// Artin's coherent presentation. Each `Z_{r,s,t}` is computed inside the
/// parabolic subgroup `W_{r,s,t}` alone.
pub fn artin_coherent_with(m: &CoxeterMatrix, coset_cap: usize) -> Result<Polygraph31> {
    let base = artin_presentation(m);
    let mut p = Polygraph31::new(base);
    let n = m.rank();
    let m0 = |a: usize, b: usize| m.m[a][b];
    for r in 0..n {
        for s in r + 1..n {
            for t in s + 1..n {
                if !rank3_finite(m0(r, s), m0(r, t), m0(s, t)) {
                    continue;
                }
                let sub = m.restrict(&[r, s, t]);
                let g = enumerate(&sub, coset_cap)?;
                let mut proj = Projector::new(&g);
                let (src, tgt) = proj.z_cell()?;
                let letters = [r as Letter, s as Letter, t as Letter];
                let rules: Vec<RuleId> = proj
                    .art
                    .rules
                    .iter()
                    .map(|rule| p.base.rule_by_name(&rule.name).expect("parabolic rules are global rules"))
                    .collect();
                let (a, b, c) = (&m.generators[r], &m.generators[s], &m.generators[t]);
                let cell = ThreeCell {
                    name: format!("Z_{a}_{b}_{c}"),
                    src: relabel(&src, &letters, &rules),
                    tgt: relabel(&tgt, &letters, &rules),
                    label: format!("Z_{{{a},{b},{c}}}"),
                };
                p.add_cell(cell)?;
            }
        }
    }
    p.meta.insert("construction".into(), "Artin coherent presentation".into());
    Ok(p)
}

/// Number of cells per dimension `(c0, c1, c2, c3)`.
pub fn cell_census(p: &Polygraph31) -> [usize; 4] {
    [1, p.base.generators.len(), p.base.rules.len(), p.cells.len()]
}

fn dense_ranks<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

/// The collapsible part of Garside's coherent presentation made of every
/// cell and 4-sphere whose indexing family is collapsible. Reducing by it
/// yields Artin's coherent presentation.
pub fn artin_reduction_part(gar: &Polygraph31, g: &CoxeterGroup) -> Result<CollapsiblePart> {
    let b = &gar.base;
    let mut part = CollapsiblePart::default();
    for x in 0..b.generators.len() {
        part.order.generators.insert(x as Letter, g.length(elem(x as Letter)));
    }
    let mut rule_keys = Vec::new();
    for (r, rule) in b.rules.iter().enumerate() {
        let pair = [elem(rule.lhs[0]), elem(rule.lhs[1])];
        rule_keys.push(phi_key(g, &pair)?);
        if let Classification::Collapsible { .. } = classify_tuple(g, &pair)? {
            part.two_cells.push(CollapsibleRule { rule: r, invert: false });
        }
    }
    for (r, rank) in dense_ranks(&rule_keys).into_iter().enumerate() {
        part.order.rules.insert(r, rank);
    }
    let triple = |c: &ThreeCell| -> Vec<ElemId> {
        let w = &c.src.source;
        vec![elem(w[0]), elem(w[1]), elem(w[2])]
    };
    let mut cell_keys = Vec::new();
    for (i, c) in gar.cells.iter().enumerate() {
        let t = triple(c);
        cell_keys.push(phi_key(g, &t)?);
        match classify_tuple(g, &t)? {
            Classification::Collapsible { k: 2 } => {
                part.three_cells.push(CollapsibleCell { cell: i, side: Side::Src, index: 1 })
            }
            Classification::Collapsible { k: 3 } => {
                part.three_cells.push(CollapsibleCell { cell: i, side: Side::Tgt, index: 1 })
            }
            _ => {}
        }
    }
    for (i, rank) in dense_ranks(&cell_keys).into_iter().enumerate() {
        part.order.cells.insert(i, rank);
    }
    for (q, sphere) in gar4_spheres(gar, g)? {
        let Classification::Collapsible { k } = classify_tuple(g, &q)? else { continue };
        let (s, u, v, w) = (q[0], q[1], q[2], q[3]);
        let redundant = match k {
            2 => a_cell_index(gar, g, g.mul(s, u), v, w),
            3 => a_cell_index(gar, g, s, g.mul(u, v), w),
            _ => a_cell_index(gar, g, s, u, g.mul(v, w)),
        }
        .ok_or_else(|| Error::Coherence("missing A cell".into()))?;
        part.spheres.push(CollapsibleSphere { sphere, redundant });
    }
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::garside_coherent;
    use crate::tietze::{homotopical_reduce, validate_collapsible};

    fn group(t: &str) -> CoxeterGroup {
        enumerate(&CoxeterMatrix::from_type(t).unwrap(), 10_000).unwrap()
    }

    #[test]
    fn census_of_small_types() {
        let cases = [("A1", [1, 1, 0, 0]), ("A3", [1, 3, 3, 1]), ("~A2", [1, 3, 3, 0]), ("A4", [1, 4, 6, 4])];
        for (t, want) in cases {
            let p = artin_coherent(&CoxeterMatrix::from_type(t).unwrap()).unwrap();
            assert_eq!(cell_census(&p), want, "{t}");
        }
    }

    #[test]
    fn free_matrix_has_no_rules() {
        let m = CoxeterMatrix::new(vec!["a".into(), "b".into()], vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(cell_census(&artin_coherent(&m).unwrap()), [1, 2, 0, 0]);
    }

    #[test]
    fn classification_examples() {
        let g = group("A2");
        let (s, t) = (g.generator(0), g.generator(1));
        let u = g.complement(t, g.w0()).unwrap();
        assert_eq!(classify_tuple(&g, &[t, u]).unwrap(), Classification::Essential);
        assert_eq!(classify_tuple(&g, &[s, t]).unwrap(), Classification::Collapsible { k: 2 });
        let st = g.mul(s, t);
        assert!(matches!(classify_tuple(&g, &[st]).unwrap(), Classification::Redundant { k: 1, .. }));
        assert_eq!(phi_key(&g, &[st]).unwrap(), vec![2]);
    }

    #[test]
    fn reduction_of_garside_gives_artin() {
        for t in ["A2", "A1xA1xA1", "B2", "A3"] {
            let g = group(t);
            let gar = garside_coherent(&g);
            let part = artin_reduction_part(&gar, &g).unwrap();
            validate_collapsible(&gar, &part).unwrap();
            let r = homotopical_reduce(&gar, &part).unwrap();
            let art = artin_coherent(&g.matrix).unwrap();
            assert_eq!(cell_census(&r), cell_census(&art), "{t}");
        }
    }
}
