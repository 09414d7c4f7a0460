//! Plain-text rendering of 2-cells and 3-cells.
//!
//! A step is written `u·ρ·v` with `u` and `v` its whiskers and `ρ` the rule
//! label (followed by `⁻` when used backwards); steps are joined by ` ⋆ `.
//! For example `γ_st·r ⋆ s·γ_rt ⋆ γ_rs·t`.

use crate::cells::{Polygraph31, Sphere3, SphereEntry};
use crate::path::Path2;
use crate::word::{Dir, Letter, Polygraph2};

fn word(p: &Polygraph2, w: &[Letter]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        p.format_word(w)
    }
}

/// Renders a 2-cell; the identity on `w` is written `1_w`.
pub fn render_path(p: &Polygraph2, f: &Path2) -> String {
    let Ok(words) = f.words(p) else {
        return format!("<ill-formed path from {}>", word(p, &f.source));
    };
    if f.steps.is_empty() {
        return format!("1_{}", word(p, &f.source));
    }
    f.steps
        .iter()
        .zip(&words)
        .map(|(s, w)| {
            let rule = &p.rules[s.rule];
            let n = rule.input(s.dir).len();
            let mut label = rule.label.clone();
            if s.dir == Dir::Neg {
                label.push('⁻');
            }
            let mut parts = Vec::with_capacity(3);
            if s.pos > 0 {
                parts.push(p.format_word(&w[..s.pos]));
            }
            parts.push(label);
            if s.pos + n < w.len() {
                parts.push(p.format_word(&w[s.pos + n..]));
            }
            parts.join("·")
        })
        .collect::<Vec<_>>()
        .join(" ⋆ ")
}

/// `label: source ⇛ target` for each 3-cell.
pub fn render_cell(p: &Polygraph31, cell: usize) -> String {
    let c = &p.cells[cell];
    format!("{}: {} ⇛ {}", c.label, render_path(&p.base, &c.src), render_path(&p.base, &c.tgt))
}

fn render_entry(p: &Polygraph31, e: &SphereEntry) -> String {
    let b = &p.base;
    let mut label = p.cells[e.cell].label.clone();
    if e.dir == Dir::Neg {
        label.push('⁻');
    }
    let mut core = Vec::new();
    if !e.left.is_empty() {
        core.push(b.format_word(&e.left));
    }
    core.push(label);
    if !e.right.is_empty() {
        core.push(b.format_word(&e.right));
    }
    let mut parts = Vec::new();
    if !e.prefix.steps.is_empty() {
        parts.push(format!("({})", render_path(b, &e.prefix)));
    }
    parts.push(core.join("·"));
    if !e.suffix.steps.is_empty() {
        parts.push(format!("({})", render_path(b, &e.suffix)));
    }
    parts.join(" ⋆ ")
}

/// The two sides of a 3-sphere, entries joined by ` ⋆₂ `.
pub fn render_sphere(p: &Polygraph31, s: &Sphere3) -> String {
    let side = |es: &[SphereEntry]| es.iter().map(|e| render_entry(p, e)).collect::<Vec<_>>().join(" ⋆₂ ");
    format!("{} ≡ {}", side(&s.lhs), side(&s.rhs))
}
