//! Finite Coxeter groups as Cayley graphs.
//!
//! [`enumerate`] runs Todd–Coxeter coset enumeration over the trivial
//! subgroup. Elements are then renumbered breadth-first from the identity, so
//! element ids increase with length and the identity is `0`. Every query
//! (lengths, descents, divisibility, gcds, longest elements) works on that
//! graph; no reflection representation is used.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Index of an element in a [`CoxeterGroup`].
pub type ElemId = usize;

/// Default cap on the number of cosets defined by [`enumerate`].
pub const DEFAULT_COSET_CAP: usize = 1_000_000;

/// A Coxeter matrix. `m[s][t] == 0` encodes `m_st = ∞`. The order of
/// `generators` is the total order on S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    pub generators: Vec<String>,
    pub m: Vec<Vec<u32>>,
}

fn default_names(n: usize) -> Vec<String> {
    const NAMES: [&str; 5] = ["p", "q", "r", "s", "t"];
    if n == 1 {
        vec!["s".into()]
    } else if n <= NAMES.len() {
        NAMES[NAMES.len() - n..].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("s{i}")).collect()
    }
}

impl CoxeterMatrix {
    pub fn new(generators: Vec<String>, m: Vec<Vec<u32>>) -> Result<Self> {
        let n = generators.len();
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::Input(format!("Coxeter matrix must be {n}×{n}")));
        }
        for s in 0..n {
            if m[s][s] != 1 {
                return Err(Error::Input(format!("diagonal entry m[{s}][{s}] must be 1")));
            }
            for t in 0..n {
                if m[s][t] != m[t][s] {
                    return Err(Error::Input(format!("matrix is not symmetric at ({s}, {t})")));
                }
                if s != t && m[s][t] == 1 {
                    return Err(Error::Input(format!("off-diagonal entry m[{s}][{t}] must be ≥ 2 or 0 (∞)")));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if g.is_empty() || g.contains('.') || g.contains('-') || !seen.insert(g) {
                return Err(Error::Input(format!("invalid or repeated generator name {g:?}")));
            }
        }
        Ok(CoxeterMatrix { generators, m })
    }

    /// A matrix with default generator names (`s,t` in rank 2, `r,s,t` in
    /// rank 3, …) and `m_st = 2` except for the listed edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Self {
        let mut m = vec![vec![2; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(a, b, v) in edges {
            m[a][b] = v;
            m[b][a] = v;
        }
        CoxeterMatrix { generators: default_names(n), m }
    }

    /// Type A_n: a chain with m = 3.
    pub fn a(n: usize) -> Self {
        Self::from_edges(n, &(1..n).map(|i| (i - 1, i, 3)).collect::<Vec<_>>())
    }

    /// Type B_n: a chain with m = 4 between the first two generators.
    pub fn b(n: usize) -> Self {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i, 3)).collect();
        e[0].2 = 4;
        Self::from_edges(n, &e)
    }

    /// Type H3: m_rs = 5, m_st = 3.
    pub fn h3() -> Self {
        Self::from_edges(3, &[(0, 1, 5), (1, 2, 3)])
    }

    /// Type I2(p) × A1: m_rs = p, with `t` commuting with both.
    pub fn i2_times_a1(p: u32) -> Self {
        Self::from_edges(3, &[(0, 1, p)])
    }

    /// The affine type Ã2: all three m = 3.
    pub fn affine_a2() -> Self {
        Self::from_edges(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)])
    }

    /// Parses a type name: `A3`, `B2`, `H3`, `I2(5)`, `I2(5)xA1`, `A1xA1xA1`,
    /// `A2xA1`, `~A2`. Products stack their factors in order.
    pub fn from_type(name: &str) -> Result<Self> {
        let bad = || Error::Input(format!("unknown Coxeter type {name:?}"));
        let factors: Vec<&str> = name.split(['x', '×']).map(str::trim).collect();
        let mut blocks = Vec::new();
        for f in &factors {
            let block = if *f == "~A2" {
                Self::affine_a2()
            } else if let Some(p) = f.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
                let p: u32 = p.parse().map_err(|_| bad())?;
                Self::from_edges(2, &[(0, 1, p)])
            } else {
                let (kind, rank) = f.split_at(1);
                let n: usize = rank.parse().map_err(|_| bad())?;
                match (kind, n) {
                    (_, 0) => return Err(bad()),
                    ("A", n) => Self::a(n),
                    ("B", n) if n >= 2 => Self::b(n),
                    ("H", 3) => Self::h3(),
                    _ => return Err(bad()),
                }
            };
            blocks.push(block);
        }
        let n: usize = blocks.iter().map(|b| b.rank()).sum();
        let mut edges = Vec::new();
        let mut off = 0;
        for b in &blocks {
            for i in 0..b.rank() {
                for j in i + 1..b.rank() {
                    if b.m[i][j] != 2 {
                        edges.push((off + i, off + j, b.m[i][j]));
                    }
                }
            }
            off += b.rank();
        }
        Ok(Self::from_edges(n, &edges))
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// `m_st`, or `None` for ∞.
    pub fn entry(&self, s: usize, t: usize) -> Option<u32> {
        match self.m[s][t] {
            0 => None,
            v => Some(v),
        }
    }

    /// The Coxeter matrix of the standard parabolic subgroup on `subset`
    /// (indices into this matrix, kept in the given order).
    pub fn restrict(&self, subset: &[usize]) -> CoxeterMatrix {
        CoxeterMatrix {
            generators: subset.iter().map(|&i| self.generators[i].clone()).collect(),
            m: subset.iter().map(|&i| subset.iter().map(|&j| self.m[i][j]).collect()).collect(),
        }
    }

    /// Defining relators over the generator indices: `s²` and `(st)^m`.
    pub fn relators(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut out: Vec<Vec<usize>> = (0..n).map(|s| vec![s, s]).collect();
        for s in 0..n {
            for t in s + 1..n {
                if let Some(m) = self.entry(s, t) {
                    out.push((0..m).flat_map(|_| [s, t]).collect());
                }
            }
        }
        out
    }
}

/// Whether the rank-3 Coxeter group with these three entries is finite
/// (`0` meaning ∞): exactly when `1/a + 1/b + 1/c > 1`.
pub fn rank3_finite(a: u32, b: u32, c: u32) -> bool {
    if a == 0 || b == 0 || c == 0 {
        return false;
    }
    let (a, b, c) = (a as u64, b as u64, c as u64);
    b * c + a * c + a * b > a * b * c
}

const UNDEF: u32 = u32::MAX;

/// Coset table for HLT enumeration with involutive generators.
struct CosetTable {
    n: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    cap: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    fn new(n: usize, cap: usize) -> Self {
        CosetTable { n, table: vec![UNDEF; n], parent: vec![0], cap, queue: Vec::new() }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, s: usize) -> u32 {
        self.table[c as usize * self.n + s]
    }

    fn set(&mut self, c: u32, s: usize, d: u32) {
        self.table[c as usize * self.n + s] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn find(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: u32, s: usize) -> bool {
        if self.len() >= self.cap {
            return false;
        }
        let d = self.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat(UNDEF).take(self.n));
        self.set(c, s, d);
        self.set(d, s, c);
        true
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for s in 0..self.n {
                let d = self.get(g, s);
                if d == UNDEF {
                    continue;
                }
                self.set(g, s, UNDEF);
                if self.get(d, s) == g {
                    self.set(d, s, UNDEF);
                }
                let (mu, nu) = (self.find(g), self.find(d));
                if self.get(mu, s) != UNDEF {
                    let x = self.get(mu, s);
                    self.merge(nu, x);
                } else if self.get(nu, s) != UNDEF {
                    let x = self.get(nu, s);
                    self.merge(mu, x);
                } else {
                    self.set(mu, s, nu);
                    self.set(nu, s, mu);
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `rel` from coset `c`; with `fill`, defines cosets to close the
    /// scan. Returns `false` when the cap prevents a definition.
    fn scan(&mut self, c: u32, rel: &[usize], fill: bool) -> bool {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, rel.len() as isize - 1);
        loop {
            while i <= j && self.get(f, rel[i as usize]) != UNDEF {
                f = self.get(f, rel[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i && self.get(b, rel[j as usize]) != UNDEF {
                b = self.get(b, rel[j as usize]);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return true;
            }
            if i == j {
                let s = rel[i as usize];
                self.set(f, s, b);
                self.set(b, s, f);
                return true;
            }
            if !fill {
                return true;
            }
            if !self.define(f, rel[i as usize]) {
                return false;
            }
        }
    }

    /// Scans every relator from every live coset without defining anything.
    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        for c in 0..self.len() as u32 {
            for r in rels {
                if !self.alive(c) {
                    break;
                }
                self.scan(c, r, false);
            }
        }
    }

    /// Renumbers live cosets densely, preserving their order. Returns the new
    /// index of the first live coset at or after `c`.
    fn compact(&mut self, c: u32) -> u32 {
        let old = self.len();
        let mut map = vec![UNDEF; old];
        let mut k = 0u32;
        for x in 0..old {
            if self.parent[x] == x as u32 {
                map[x] = k;
                k += 1;
            }
        }
        let mut table = vec![UNDEF; k as usize * self.n];
        for x in 0..old {
            if map[x] != UNDEF {
                for s in 0..self.n {
                    let d = self.table[x * self.n + s];
                    if d != UNDEF {
                        table[map[x] as usize * self.n + s] = map[d as usize];
                    }
                }
            }
        }
        self.table = table;
        self.parent = (0..k).collect();
        (c as usize..old).find(|&x| map[x] != UNDEF).map(|x| map[x]).unwrap_or(k)
    }
}

/// A finite Coxeter group with its Cayley graph and divisibility data.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    pub matrix: CoxeterMatrix,
    /// `right[s][u] = us`.
    right: Vec<Vec<ElemId>>,
    /// `left[s][u] = su`.
    left: Vec<Vec<ElemId>>,
    length: Vec<u32>,
    words: Vec<Vec<u32>>,
    inverse: Vec<ElemId>,
    /// Left divisors of each element, as bitsets over element ids.
    ldiv: Vec<Vec<u64>>,
    w0: ElemId,
}

/// Todd–Coxeter enumeration of the group presented by `m`.
pub fn enumerate(m: &CoxeterMatrix, coset_cap: usize) -> Result<CoxeterGroup> {
    let n = m.rank();
    let rels = m.relators();
    let mut t = CosetTable::new(n, coset_cap.max(1));
    let mut c: u32 = 0;
    while (c as usize) < t.len() {
        if t.alive(c) {
            let mut done = true;
            for r in &rels {
                if !t.alive(c) {
                    break;
                }
                if !t.scan(c, r, true) {
                    done = false;
                    break;
                }
            }
            if !done {
                t.lookahead(&rels);
                let before = t.len();
                c = t.compact(c);
                if t.len() == before {
                    return Err(Error::InfiniteOrUnknown(coset_cap));
                }
                continue;
            }
        }
        c += 1;
    }
    // Breadth-first renumbering from the identity coset.
    let root = t.find(0);
    let mut order = vec![root];
    let mut id = std::collections::HashMap::new();
    id.insert(root, 0usize);
    let mut parent: Vec<(ElemId, u32)> = vec![(0, 0)];
    let mut q = VecDeque::from([root]);
    while let Some(x) = q.pop_front() {
        for s in 0..n {
            let y = t.find(t.get(x, s));
            if let std::collections::hash_map::Entry::Vacant(e) = id.entry(y) {
                e.insert(order.len());
                parent.push((id[&x], s as u32));
                order.push(y);
                q.push_back(y);
            }
        }
    }
    let size = order.len();
    let mut right = vec![vec![0; size]; n];
    for (e, &x) in order.iter().enumerate() {
        for (s, row) in right.iter_mut().enumerate() {
            row[e] = id[&t.find(t.get(x, s))];
        }
    }
    Ok(CoxeterGroup::from_right_action(m.clone(), right, parent))
}

impl CoxeterGroup {
    fn from_right_action(matrix: CoxeterMatrix, right: Vec<Vec<ElemId>>, parent: Vec<(ElemId, u32)>) -> Self {
        let n = matrix.rank();
        let size = parent.len();
        let mut length = vec![0u32; size];
        for e in 1..size {
            length[e] = length[parent[e].0] + 1;
        }
        // s·u where u = v·x:  s·u = (s·v)·x.
        let mut left = vec![vec![0; size]; n];
        for s in 0..n {
            left[s][0] = right[s][0];
            for e in 1..size {
                let (v, x) = parent[e];
                left[s][e] = right[x as usize][left[s][v]];
            }
        }
        let mut g = CoxeterGroup {
            matrix,
            right,
            left,
            length,
            words: Vec::new(),
            inverse: Vec::new(),
            ldiv: Vec::new(),
            w0: 0,
        };
        g.words = (0..size).map(|u| g.greedy_word(u)).collect();
        g.inverse = (0..size)
            .map(|u| g.words[u].iter().rev().fold(0, |acc, &s| g.right[s as usize][acc]))
            .collect();
        let blocks = size.div_ceil(64);
        let mut ldiv = vec![vec![0u64; blocks]; size];
        for u in 0..size {
            ldiv[u][u / 64] |= 1 << (u % 64);
            for s in 0..n {
                let v = g.right[s][u];
                if g.length[v] < g.length[u] {
                    let (head, tail) = ldiv.split_at_mut(u);
                    for (a, b) in tail[0].iter_mut().zip(&head[v]) {
                        *a |= b;
                    }
                }
            }
        }
        g.ldiv = ldiv;
        g.w0 = (0..size).max_by_key(|&u| g.length[u]).unwrap_or(0);
        g
    }

    fn greedy_word(&self, mut u: ElemId) -> Vec<u32> {
        let mut w = Vec::new();
        while u != 0 {
            let s = (0..self.rank()).find(|&s| self.length[self.left[s][u]] < self.length[u]).unwrap();
            w.push(s as u32);
            u = self.left[s][u];
        }
        w
    }

    pub fn size(&self) -> usize {
        self.length.len()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn length(&self, u: ElemId) -> u32 {
        self.length[u]
    }

    pub fn generator(&self, s: usize) -> ElemId {
        self.right[s][0]
    }

    /// `us`.
    pub fn mul_right(&self, u: ElemId, s: usize) -> ElemId {
        self.right[s][u]
    }

    /// `su`.
    pub fn mul_left(&self, s: usize, u: ElemId) -> ElemId {
        self.left[s][u]
    }

    pub fn mul(&self, u: ElemId, v: ElemId) -> ElemId {
        self.words[v].iter().fold(u, |acc, &s| self.right[s as usize][acc])
    }

    pub fn inv(&self, u: ElemId) -> ElemId {
        self.inverse[u]
    }

    /// The element represented by a word over the generator indices.
    pub fn element(&self, w: &[u32]) -> ElemId {
        w.iter().fold(0, |acc, &s| self.right[s as usize][acc])
    }

    /// The lexicographically smallest reduced word of `u`.
    pub fn word(&self, u: ElemId) -> &[u32] {
        &self.words[u]
    }

    /// Display name: the canonical word, letters concatenated (joined with
    /// `-` when some generator name is longer than one character); `1` for
    /// the identity.
    pub fn name(&self, u: ElemId) -> String {
        if u == 0 {
            return "1".into();
        }
        let names: Vec<&str> = self.words[u].iter().map(|&s| self.matrix.generators[s as usize].as_str()).collect();
        if self.matrix.generators.iter().all(|g| g.chars().count() == 1) {
            names.concat()
        } else {
            names.join("-")
        }
    }

    pub fn left_descents(&self, u: ElemId) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.length[self.left[s][u]] < self.length[u]).collect()
    }

    pub fn right_descents(&self, u: ElemId) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.length[self.right[s][u]] < self.length[u]).collect()
    }

    /// Whether `l(uv) = l(u) + l(v)`.
    pub fn is_reduced_product(&self, u: ElemId, v: ElemId) -> bool {
        self.length[self.mul(u, v)] == self.length[u] + self.length[v]
    }

    /// The least generator dividing `u` on the left.
    pub fn smallest_divisor(&self, u: ElemId) -> Result<usize> {
        self.left_descents(u)
            .first()
            .copied()
            .ok_or_else(|| Error::Precondition("the identity has no divisor in S".into()))
    }

    /// Whether `u` is a left divisor of `v`.
    pub fn divides(&self, u: ElemId, v: ElemId) -> bool {
        self.ldiv[v][u / 64] >> (u % 64) & 1 == 1
    }

    /// `u⁻¹v`, provided `u` divides `v`.
    pub fn complement(&self, u: ElemId, v: ElemId) -> Result<ElemId> {
        if self.divides(u, v) {
            Ok(self.mul(self.inverse[u], v))
        } else {
            Err(Error::Divisibility(format!("{} does not divide {}", self.name(u), self.name(v))))
        }
    }

    /// All left divisors of `u`, by increasing id (hence length).
    pub fn left_divisors(&self, u: ElemId) -> Vec<ElemId> {
        (0..self.size()).filter(|&x| self.divides(x, u)).collect()
    }

    /// Greatest common left divisor.
    pub fn gcd(&self, u: ElemId, v: ElemId) -> ElemId {
        let mut best = 0;
        for (k, (a, b)) in self.ldiv[u].iter().zip(&self.ldiv[v]).enumerate() {
            let mut bits = a & b;
            while bits != 0 {
                let x = k * 64 + bits.trailing_zeros() as usize;
                if self.length[x] > self.length[best] {
                    best = x;
                }
                bits &= bits - 1;
            }
        }
        best
    }

    /// Least common right multiple for left divisibility: the shortest
    /// element divisible by both.
    pub fn lcm(&self, u: ElemId, v: ElemId) -> ElemId {
        (0..self.size()).find(|&x| self.divides(u, x) && self.divides(v, x)).unwrap()
    }

    /// The longest element of the parabolic subgroup generated by `subset`.
    pub fn longest_element(&self, subset: &[usize]) -> ElemId {
        let mut seen = vec![false; self.size()];
        seen[0] = true;
        let mut best = 0;
        let mut q = VecDeque::from([0]);
        while let Some(x) = q.pop_front() {
            if self.length[x] > self.length[best] {
                best = x;
            }
            for &s in subset {
                let y = self.right[s][x];
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        best
    }

    /// The longest element of the whole group.
    pub fn w0(&self) -> ElemId {
        self.w0
    }

    /// `∂u = u⁻¹w₀`.
    pub fn garside_complement(&self, u: ElemId) -> ElemId {
        self.mul(self.inverse[u], self.w0)
    }

    /// One local sliding: `(u·g, g⁻¹v)` with `g = ∂u ∧ v`.
    pub fn left_weighted(&self, u: ElemId, v: ElemId) -> (ElemId, ElemId) {
        let g = self.gcd(self.garside_complement(u), v);
        (self.mul(u, g), self.mul(self.inverse[g], v))
    }

    /// Whether `∂u ∧ v = 1`.
    pub fn is_left_weighted(&self, u: ElemId, v: ElemId) -> bool {
        self.gcd(self.garside_complement(u), v) == 0
    }

    /// Applies local slidings right to left until every adjacent pair is
    /// left-weighted, then drops trailing identities.
    pub fn local_sliding_normal_form(&self, seq: &[ElemId]) -> Vec<ElemId> {
        let mut x = seq.to_vec();
        loop {
            let mut changed = false;
            for i in (0..x.len().saturating_sub(1)).rev() {
                let (a, b) = self.left_weighted(x[i], x[i + 1]);
                if (a, b) != (x[i], x[i + 1]) {
                    x[i] = a;
                    x[i + 1] = b;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        while x.last() == Some(&0) {
            x.pop();
        }
        x
    }
}
