//! Generating 3-cells, (3,1)-polygraphs and 3-spheres.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::path::{compose, compose_all, paths_equal, whisker, Path2};
use crate::word::{Dir, Letter, Polygraph2, Word};

/// A generating 3-cell between two parallel 2-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCell {
    pub name: String,
    pub src: Path2,
    pub tgt: Path2,
    pub label: String,
}

impl ThreeCell {
    pub fn new(name: impl Into<String>, src: Path2, tgt: Path2) -> Self {
        let name = name.into();
        ThreeCell { label: name.clone(), name, src, tgt }
    }

    /// The 2-cell boundary read in direction `dir`: `(source, target)`.
    pub fn oriented(&self, dir: Dir) -> (&Path2, &Path2) {
        match dir {
            Dir::Pos => (&self.src, &self.tgt),
            Dir::Neg => (&self.tgt, &self.src),
        }
    }

    /// Both sides must start at the same word and end at the same word.
    pub fn check_parallel(&self, p: &Polygraph2) -> Result<()> {
        if self.src.source != self.tgt.source {
            return Err(Error::Coherence(format!("3-cell {}: sides start at different words", self.name)));
        }
        let (a, b) = (self.src.target(p)?, self.tgt.target(p)?);
        if a != b {
            return Err(Error::Coherence(format!(
                "3-cell {}: sides end at {} and {}",
                self.name,
                p.format_word(&a),
                p.format_word(&b)
            )));
        }
        Ok(())
    }
}

/// A 2-polygraph with generating 3-cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polygraph31 {
    pub base: Polygraph2,
    pub cells: Vec<ThreeCell>,
    /// Free-form annotations (e.g. which group element a generator stands for).
    pub meta: BTreeMap<String, String>,
}

impl Polygraph31 {
    pub fn new(base: Polygraph2) -> Self {
        Polygraph31 { base, cells: Vec::new(), meta: BTreeMap::new() }
    }

    pub fn cell_by_name(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }

    pub fn add_cell(&mut self, cell: ThreeCell) -> Result<usize> {
        cell.check_parallel(&self.base)?;
        if self.cell_by_name(&cell.name).is_some() {
            return Err(Error::Input(format!("duplicate 3-cell name {}", cell.name)));
        }
        self.cells.push(cell);
        Ok(self.cells.len() - 1)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        let mut names = BTreeMap::new();
        for c in &self.cells {
            c.check_parallel(&self.base)?;
            if names.insert(c.name.as_str(), ()).is_some() {
                return Err(Error::Input(format!("duplicate 3-cell name {}", c.name)));
            }
        }
        Ok(())
    }
}

/// One whiskered, signed 3-cell inside a composite:
/// `prefix ⋆ (left · cell^dir · right) ⋆ suffix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereEntry {
    pub cell: usize,
    pub dir: Dir,
    pub left: Word,
    pub right: Word,
    pub prefix: Path2,
    pub suffix: Path2,
}

impl SphereEntry {
    /// A bare occurrence of `cell` with no context.
    pub fn bare(p: &Polygraph31, cell: usize, dir: Dir) -> Result<Self> {
        let (s, t) = p.cells[cell].oriented(dir);
        Ok(SphereEntry {
            cell,
            dir,
            left: Vec::new(),
            right: Vec::new(),
            prefix: Path2::identity(s.source.clone()),
            suffix: Path2::identity(t.target(&p.base)?),
        })
    }

    /// An occurrence with word whiskers and 2-cell pre/post composites.
    pub fn whiskered(
        p: &Polygraph31,
        cell: usize,
        dir: Dir,
        left: &[Letter],
        right: &[Letter],
        prefix: Option<Path2>,
        suffix: Option<Path2>,
    ) -> Result<Self> {
        let (s, t) = p.cells[cell].oriented(dir);
        let core_src = whisker(left, s, right);
        let core_tgt_word = whisker(left, &Path2::identity(t.target(&p.base)?), right).source;
        let prefix = match prefix {
            Some(f) => f,
            None => Path2::identity(core_src.source.clone()),
        };
        let suffix = match suffix {
            Some(f) => f,
            None => Path2::identity(core_tgt_word),
        };
        let e = SphereEntry { cell, dir, left: left.to_vec(), right: right.to_vec(), prefix, suffix };
        e.boundary(p)?;
        Ok(e)
    }

    /// `(source, target)` 2-cells of this occurrence.
    pub fn boundary(&self, p: &Polygraph31) -> Result<(Path2, Path2)> {
        let c = p
            .cells
            .get(self.cell)
            .ok_or_else(|| Error::Coherence(format!("no 3-cell with index {}", self.cell)))?;
        let (s, t) = c.oriented(self.dir);
        let s = whisker(&self.left, s, &self.right);
        let t = whisker(&self.left, t, &self.right);
        let b = &p.base;
        Ok((
            compose_all(b, &[self.prefix.clone(), s, self.suffix.clone()])?,
            compose_all(b, &[self.prefix.clone(), t, self.suffix.clone()])?,
        ))
    }

    /// The same occurrence pre-composed with `f` (so the source grows).
    pub fn precompose(&self, p: &Polygraph2, f: &Path2) -> Result<Self> {
        Ok(SphereEntry { prefix: compose(p, f, &self.prefix)?, ..self.clone() })
    }

    /// The same occurrence post-composed with `f`.
    pub fn postcompose(&self, p: &Polygraph2, f: &Path2) -> Result<Self> {
        Ok(SphereEntry { suffix: compose(p, &self.suffix, f)?, ..self.clone() })
    }

    pub fn inverse(&self) -> Self {
        SphereEntry { dir: self.dir.flip(), ..self.clone() }
    }
}

/// A pair of parallel composites of 3-cells, both going from `source` to
/// `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sphere3 {
    pub source: Path2,
    pub target: Path2,
    pub lhs: Vec<SphereEntry>,
    pub rhs: Vec<SphereEntry>,
}

fn check_chain(p: &Polygraph31, from: &Path2, to: &Path2, side: &[SphereEntry], which: &str) -> Result<()> {
    let b = &p.base;
    let mut cur = from.clone();
    for (k, e) in side.iter().enumerate() {
        let (s, t) = e.boundary(p)?;
        if !paths_equal(b, &cur, &s) {
            return Err(Error::Coherence(format!(
                "{which} side, entry {k} ({}): source does not match the running 2-cell",
                p.cells[e.cell].name
            )));
        }
        cur = t;
    }
    if !paths_equal(b, &cur, to) {
        return Err(Error::Coherence(format!("{which} side does not end at the sphere target")));
    }
    Ok(())
}

impl Sphere3 {
    /// Checks that both sides are composable chains from `source` to `target`.
    pub fn check(&self, p: &Polygraph31) -> Result<()> {
        let b = &p.base;
        if self.source.source != self.target.source || self.source.target(b)? != self.target.target(b)? {
            return Err(Error::Coherence("sphere boundary 2-cells are not parallel".into()));
        }
        check_chain(p, &self.source, &self.target, &self.lhs, "left")?;
        check_chain(p, &self.source, &self.target, &self.rhs, "right")
    }

    /// How many times the 3-cell `cell` occurs on either side.
    pub fn occurrences(&self, cell: usize) -> usize {
        self.lhs.iter().chain(&self.rhs).filter(|e| e.cell == cell).count()
    }

    pub fn cells(&self) -> impl Iterator<Item = &SphereEntry> {
        self.lhs.iter().chain(&self.rhs)
    }
}
