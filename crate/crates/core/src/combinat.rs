//! Partitions, bipartitions, tableaux, dominance, nodes and the coset
//! representatives `D^f_{r,s}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{g_range, Tok, Word};
use crate::field::{Field, QuantumChar, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatError {
    #[error("not a partition: {0:?}")]
    NotPartition(Vec<usize>),
    #[error("f = {f} out of range for (r, s) = ({r}, {s})")]
    LayerOutOfRange { r: usize, s: usize, f: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Result of a partial-order comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dominance {
    Equal,
    Greater,
    Less,
    Incomparable,
}

impl Dominance {
    /// `⊵`.
    pub fn ge(self) -> bool {
        matches!(self, Dominance::Equal | Dominance::Greater)
    }

    fn combine(self, o: Dominance) -> Dominance {
        use Dominance::*;
        match (self, o) {
            (Equal, x) | (x, Equal) => x,
            (Greater, Greater) => Greater,
            (Less, Less) => Less,
            _ => Incomparable,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, CombinatError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(CombinatError::NotPartition(parts));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.part(0);
        Partition {
            parts: (0..n)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    /// All partitions of `n`, lexicographically decreasing: `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn partial_sums(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Dominance comparison; partitions of different sizes are incomparable.
    pub fn dominance(&self, o: &Partition) -> Dominance {
        if self.size() != o.size() {
            return Dominance::Incomparable;
        }
        if self == o {
            return Dominance::Equal;
        }
        let (a, b) = (self.partial_sums(), o.partial_sums());
        let k = a.len().max(b.len());
        let get = |v: &Vec<usize>, i: usize| {
            if i < v.len() {
                v[i]
            } else {
                *v.last().unwrap_or(&0)
            }
        };
        let ge = (0..k).all(|i| get(&a, i) >= get(&b, i));
        let le = (0..k).all(|i| get(&a, i) <= get(&b, i));
        match (ge, le) {
            (true, _) => Dominance::Greater,
            (_, true) => Dominance::Less,
            _ => Dominance::Incomparable,
        }
    }

    /// `self ⊵ o`.
    pub fn dominates(&self, o: &Partition) -> bool {
        self.dominance(o).ge()
    }

    /// Removable nodes, bottom row first.
    pub fn removable_nodes(&self, side: u8) -> Vec<Node> {
        let mut v: Vec<Node> = (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| Node {
                row: i + 1,
                col: self.part(i),
                side,
            })
            .collect();
        v.reverse();
        v
    }

    /// Addable nodes, top row first.
    pub fn addable_nodes(&self, side: u8) -> Vec<Node> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i - 1) > self.part(i))
            .map(|i| Node {
                row: i + 1,
                col: self.part(i) + 1,
                side,
            })
            .collect()
    }

    pub fn remove_node(&self, p: &Node) -> Result<Partition, CombinatError> {
        let mut parts = self.parts.clone();
        if p.row == 0 || p.row > parts.len() || parts[p.row - 1] != p.col {
            return Err(CombinatError::Precondition(format!(
                "{p} is not removable from {self}"
            )));
        }
        parts[p.row - 1] -= 1;
        Partition::new(parts)
    }

    pub fn add_node(&self, p: &Node) -> Result<Partition, CombinatError> {
        let mut parts = self.parts.clone();
        if p.row == parts.len() + 1 {
            parts.push(0);
        }
        if p.row == 0 || p.row > parts.len() || parts[p.row - 1] + 1 != p.col {
            return Err(CombinatError::Precondition(format!(
                "{p} is not addable to {self}"
            )));
        }
        parts[p.row - 1] += 1;
        Partition::new(parts)
    }

    /// Does every gap `λ_i - λ_{i+1}` stay below `e`?
    pub fn is_e_restricted(&self, e: QuantumChar) -> bool {
        match e {
            QuantumChar::Infinite => true,
            QuantumChar::Finite(e) => {
                (0..self.len()).all(|i| self.part(i) - self.part(i + 1) < e as usize)
            }
        }
    }

    /// All nodes, row by row.
    pub fn nodes(&self, side: u8) -> Vec<Node> {
        let mut v = Vec::new();
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                v.push(Node {
                    row: i + 1,
                    col: j + 1,
                    side,
                });
            }
        }
        v
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", p.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = CombinatError;

    /// Accepts `[2,1]`, `2,1`, `(2,1)`, or `[]`/`-` for the empty partition.
    fn from_str(s: &str) -> Result<Self, CombinatError> {
        let t = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')'])
            .trim();
        if t.is_empty() || t == "-" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CombinatError::Precondition(format!("cannot parse partition {s:?}")))?;
        Partition::new(parts)
    }
}

/// A box of a Young diagram. `side` is 1 for `λ^(1)` and 2 for `λ^(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub side: u8,
}

impl Node {
    pub fn residue(&self) -> i32 {
        self.col as i32 - self.row as i32
    }

    /// `c(p)`.
    pub fn content_scalar(&self, field: &Field) -> Scalar {
        field.content_scalar(self.side, self.residue())
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The content scalar of a node (sides 1 and 2 use `q^{2k}` and `q^{-2k}`).
pub fn content_scalar(p: &Node, field: &Field) -> Scalar {
    p.content_scalar(field)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub first: Partition,
    pub second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Self { first, second }
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.first.size(), self.second.size())
    }

    pub fn conjugate(&self) -> Bipartition {
        Bipartition::new(self.first.conjugate(), self.second.conjugate())
    }

    /// Componentwise dominance.
    pub fn dominance(&self, o: &Bipartition) -> Dominance {
        self.first
            .dominance(&o.first)
            .combine(self.second.dominance(&o.second))
    }

    pub fn is_e_restricted(&self, e: QuantumChar) -> bool {
        self.first.is_e_restricted(e) && self.second.is_e_restricted(e)
    }

    pub fn all(a: usize, b: usize) -> Vec<Bipartition> {
        let mut v = Vec::new();
        for x in Partition::all(a) {
            for y in Partition::all(b) {
                v.push(Bipartition::new(x.clone(), y));
            }
        }
        v
    }

    /// Sort key: partial sums of both components, larger first.
    fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.first.partial_sums(), self.second.partial_sums())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

impl std::str::FromStr for Bipartition {
    type Err = CombinatError;

    /// Accepts `[2,1];[1]` or `([2,1],[1])`.
    fn from_str(s: &str) -> Result<Self, CombinatError> {
        let err = || CombinatError::Precondition(format!("cannot parse bipartition {s:?}"));
        let t = s.trim();
        let t = if t.starts_with("([") || t.starts_with("(-") {
            t.strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(err)?
        } else {
            t
        };
        let (a, b) = if let Some(idx) = t.find(';') {
            (&t[..idx], &t[idx + 1..])
        } else {
            let idx = t.find("],").ok_or_else(err)?;
            (&t[..=idx], &t[idx + 2..])
        };
        Ok(Bipartition::new(a.parse()?, b.parse()?))
    }
}

/// A cell-poset label `(f, λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellLabel {
    pub f: usize,
    pub lambda: Bipartition,
}

impl CellLabel {
    pub fn new(f: usize, lambda: Bipartition) -> Self {
        Self { f, lambda }
    }

    pub fn is_valid(&self, r: usize, s: usize) -> bool {
        self.f <= r.min(s) && self.lambda.sizes() == (r - self.f, s - self.f)
    }

    /// The cell-poset order: larger `f` is higher; equal `f` compares by
    /// componentwise dominance.
    pub fn compare(&self, o: &CellLabel) -> Dominance {
        match self.f.cmp(&o.f) {
            Ordering::Greater => Dominance::Greater,
            Ordering::Less => Dominance::Less,
            Ordering::Equal => self.lambda.dominance(&o.lambda),
        }
    }

    /// Strictly higher: `self ▷ o`.
    pub fn above(&self, o: &CellLabel) -> bool {
        self.compare(o) == Dominance::Greater
    }

    /// All labels of `Λ_{r,s}` in a fixed linear extension, highest first:
    /// `f` descending, then partial sums descending.
    pub fn all(r: usize, s: usize) -> Vec<CellLabel> {
        let mut v = Vec::new();
        for f in 0..=r.min(s) {
            for l in Bipartition::all(r - f, s - f) {
                v.push(CellLabel::new(f, l));
            }
        }
        v.sort_by(|a, b| {
            b.f.cmp(&a.f)
                .then_with(|| b.lambda.key().cmp(&a.lambda.key()))
        });
        v
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.lambda)
    }
}

/// A permutation of `{1..n}` in one-line form, acting on the right:
/// `i.w = w[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `self` followed by `o`.
    pub fn then(&self, o: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| o.image(x)).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x - 1] = i + 1;
        }
        Perm(v)
    }

    /// The simple transposition `s_k` on `n` points.
    pub fn simple(n: usize, k: usize) -> Perm {
        let mut p = Perm::identity(n);
        p.0.swap(k - 1, k);
        p
    }

    /// `w s_k`: swaps the values `k` and `k+1`.
    pub fn times_simple(&self, k: usize) -> Perm {
        Perm(
            self.0
                .iter()
                .map(|&x| {
                    if x == k {
                        k + 1
                    } else if x == k + 1 {
                        k
                    } else {
                        x
                    }
                })
                .collect(),
        )
    }

    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        word.iter()
            .fold(Perm::identity(n), |p, &k| p.times_simple(k))
    }

    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    /// A reduced word `[k_1, ..., k_m]` with `w = s_{k_1} ... s_{k_m}`,
    /// found by repeatedly stripping a right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        loop {
            let pos = w.inverse();
            let Some(k) = (1..w.n()).find(|&k| pos.image(k + 1) < pos.image(k)) else {
                break;
            };
            rev.push(k);
            w = w.times_simple(k);
        }
        rev.reverse();
        rev
    }

    /// Every permutation of `{1..n}`, lexicographic.
    pub fn all(n: usize) -> Vec<Perm> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if cur.len() == used.len() {
                out.push(Perm(cur.clone()));
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    cur.push(x + 1);
                    rec(cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

/// Tokens for `g_w`, with generator `s_k` sent to `g_{k+offset}` (or
/// `g*_{k+offset}`).
pub fn perm_word(w: &Perm, offset: usize, starred: bool) -> Word {
    w.reduced_word()
        .into_iter()
        .map(|k| {
            if starred {
                Tok::H((k + offset) as u8)
            } else {
                Tok::G((k + offset) as u8)
            }
        })
        .collect()
}

/// A standard tableau with entries `offset+1 ..= offset+n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StdTableau {
    pub shape: Partition,
    pub offset: usize,
    pub rows: Vec<Vec<usize>>,
}

impl StdTableau {
    /// `t^λ`: entries filled along rows.
    pub fn row_reading(shape: &Partition, offset: usize) -> Self {
        let mut k = offset;
        let rows = shape
            .parts()
            .iter()
            .map(|&p| {
                (0..p)
                    .map(|_| {
                        k += 1;
                        k
                    })
                    .collect()
            })
            .collect();
        Self {
            shape: shape.clone(),
            offset,
            rows,
        }
    }

    /// `t_λ`: entries filled down columns.
    pub fn column_reading(shape: &Partition, offset: usize) -> Self {
        let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&p| vec![0; p]).collect();
        let mut k = offset;
        for j in 0..shape.part(0) {
            for row in rows.iter_mut() {
                if j < row.len() {
                    k += 1;
                    row[j] = k;
                }
            }
        }
        Self {
            shape: shape.clone(),
            offset,
            rows,
        }
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Entries in row-reading order.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = (1..self.rows.len())
            .all(|i| (0..self.rows[i].len()).all(|j| self.rows[i - 1][j] < self.rows[i][j]));
        let mut e = self.reading_word();
        e.sort_unstable();
        rows_ok && cols_ok && e == (self.offset + 1..=self.offset + self.size()).collect::<Vec<_>>()
    }

    /// `d(t)`: the permutation with `t^λ d(t) = t`, on local points `1..n`.
    pub fn d_perm(&self) -> Perm {
        Perm(
            self.reading_word()
                .into_iter()
                .map(|x| x - self.offset)
                .collect(),
        )
    }

    /// `t.w`, replacing each entry `x` by `x.w` (local points).
    pub fn act(&self, w: &Perm) -> StdTableau {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| w.image(x - self.offset) + self.offset)
                    .collect()
            })
            .collect();
        StdTableau {
            shape: self.shape.clone(),
            offset: self.offset,
            rows,
        }
    }

    /// Shape of the subtableau with entries `<= offset + i`.
    pub fn restrict_shape(&self, i: usize) -> Partition {
        let parts = self
            .rows
            .iter()
            .map(|r| r.iter().filter(|&&x| x <= self.offset + i).count())
            .collect();
        Partition::new(parts).expect("restriction of a standard tableau")
    }

    /// All standard tableaux of a shape, `t^λ` first, then by reading word.
    pub fn all(shape: &Partition, offset: usize) -> Vec<StdTableau> {
        let n = shape.size();
        let mut out = Vec::new();
        // place n in a removable node, recursively
        fn rec(shape: &Partition, offset: usize, n: usize, out: &mut Vec<StdTableau>) {
            if n == 0 {
                out.push(StdTableau {
                    shape: shape.clone(),
                    offset,
                    rows: vec![Vec::new(); shape.len()],
                });
                return;
            }
            for p in shape.removable_nodes(1) {
                let smaller = shape.remove_node(&p).expect("removable");
                let mut sub = Vec::new();
                rec(&smaller, offset, n - 1, &mut sub);
                for mut t in sub {
                    t.shape = shape.clone();
                    t.rows.resize(shape.len(), Vec::new());
                    t.rows[p.row - 1].push(offset + n);
                    out.push(t);
                }
            }
        }
        rec(shape, offset, n, &mut out);
        out.sort_by_key(|a| a.reading_word());
        out
    }
}

impl fmt::Display for StdTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// Pairs of standard tableaux for a bipartition, both with offset `f`.
pub fn std_bitableaux(l: &Bipartition, f: usize) -> Vec<(StdTableau, StdTableau)> {
    let a = StdTableau::all(&l.first, f);
    let b = StdTableau::all(&l.second, f);
    let mut out = Vec::new();
    for x in &a {
        for y in &b {
            out.push((x.clone(), y.clone()));
        }
    }
    out
}

/// `d = s_{f,i_f} s*_{f,j_f} ... s_{1,i_1} s*_{1,j_1}` with
/// `i_1 < ... < i_f` and `j_k >= k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetRep {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl CosetRep {
    pub fn f(&self) -> usize {
        self.i.len()
    }

    pub fn is_identity(&self) -> bool {
        self.i.iter().enumerate().all(|(k, &x)| x == k + 1)
            && self.j.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// `g_d = g_{f,i_f} g*_{f,j_f} ... g_{1,i_1} g*_{1,j_1}`.
    pub fn word(&self) -> Word {
        let mut w = Vec::new();
        for k in (1..=self.f()).rev() {
            w.extend(g_range(k, self.i[k - 1], false));
            w.extend(g_range(k, self.j[k - 1], true));
        }
        w
    }

    /// The pair of permutations in `S_r x S_s`.
    pub fn perms(&self, r: usize, s: usize) -> (Perm, Perm) {
        let mut a = Perm::identity(r);
        let mut b = Perm::identity(s);
        for t in self.word() {
            match t {
                Tok::G(k) => a = a.times_simple(k as usize),
                Tok::H(k) => b = b.times_simple(k as usize),
                _ => unreachable!("coset words use positive g tokens"),
            }
        }
        (a, b)
    }
}

impl fmt::Display for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i={:?} j={:?}", self.i, self.j)
    }
}

/// `D^f_{r,s}`, identity first, then lexicographic in `(i, j)`.
pub fn coset_reps(r: usize, s: usize, f: usize) -> Result<Vec<CosetRep>, CombinatError> {
    if f > r.min(s) {
        return Err(CombinatError::LayerOutOfRange { r, s, f });
    }
    let mut is: Vec<Vec<usize>> = Vec::new();
    fn choose(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            choose(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    choose(1, r, f, &mut Vec::new(), &mut is);
    let mut js: Vec<Vec<usize>> = vec![Vec::new()];
    for k in 1..=f {
        js = js
            .into_iter()
            .flat_map(|j| {
                (k..=s).map(move |x| {
                    let mut j = j.clone();
                    j.push(x);
                    j
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for i in &is {
        for j in &js {
            out.push(CosetRep {
                i: i.clone(),
                j: j.clone(),
            });
        }
    }
    Ok(out)
}

/// `C(r,f) C(s,f) f!`.
pub fn coset_count(r: usize, s: usize, f: usize) -> usize {
    let binom = |n: usize, k: usize| -> usize { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
    binom(r, f) * binom(s, f) * (1..=f).product::<usize>()
}

/// Brute-force check of `D^f_{r,s}`: returns the number of right cosets of
/// `S_{r-f} x G_f x S_{s-f}` in `S_r x S_s` and whether the representatives
/// hit each coset exactly once.
pub fn brute_force_cosets(r: usize, s: usize, f: usize) -> Result<(usize, bool), CombinatError> {
    let reps = coset_reps(r, s, f)?;
    // Subgroup: S_{r-f} on {f+1..r}, S_{s-f} on {f+1..s}, and the diagonal
    // S_f generated by s_i s*_i, i < f.
    let mut sub = Vec::new();
    for x in Perm::all(f) {
        for y in Perm::all(r - f) {
            for z in Perm::all(s - f) {
                let mut a: Vec<usize> = x.0.clone();
                a.extend(y.0.iter().map(|v| v + f));
                let mut b: Vec<usize> = x.0.clone();
                b.extend(z.0.iter().map(|v| v + f));
                sub.push((Perm(a), Perm(b)));
            }
        }
    }
    let coset_key = |a: &Perm, b: &Perm| -> (Perm, Perm) {
        sub.iter()
            .map(|(h1, h2)| (h1.then(a), h2.then(b)))
            .min()
            .expect("nonempty subgroup")
    };
    let mut all_keys = std::collections::BTreeSet::new();
    for a in Perm::all(r) {
        for b in Perm::all(s) {
            all_keys.insert(coset_key(&a, &b));
        }
    }
    let mut hit = std::collections::BTreeSet::new();
    for d in &reps {
        let (a, b) = d.perms(r, s);
        hit.insert(coset_key(&a, &b));
    }
    let exact = hit.len() == reps.len() && hit == all_keys;
    Ok((all_keys.len(), exact))
}

/// Outcome of [`semistandard_truncation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationCheck {
    /// Shape of `s` restricted to `1..n-1`.
    pub restricted: Partition,
    /// `μ` with its last node removed.
    pub nu: Partition,
    /// `restricted ⊵ nu` holds.
    pub dominates: bool,
    /// `restricted ▷ nu` strictly.
    pub strict: bool,
    /// `restricted = nu` forces `λ` to be `nu` plus an addable node. The
    /// converse holds only for some `s`, e.g. not for `s = [1 2 / 3]` of type
    /// `(1,1,1)`.
    pub equality_case_ok: bool,
}

impl TruncationCheck {
    pub fn holds(&self) -> bool {
        self.dominates && self.equality_case_ok
    }
}

/// `μ(s)`: replaces each entry of `s` by the row of `t^μ` containing it.
pub fn type_tableau(s: &StdTableau, mu: &[usize]) -> Vec<Vec<usize>> {
    let mut row_of = Vec::new();
    for (i, &m) in mu.iter().enumerate() {
        row_of.extend(std::iter::repeat_n(i + 1, m));
    }
    s.rows
        .iter()
        .map(|r| r.iter().map(|&x| row_of[x - s.offset - 1]).collect())
        .collect()
}

/// Checks the truncation property for a semistandard tableau `big_s` of
/// shape `λ` and type `μ` (with `μ` ending in a part equal to 1) and a
/// standard `s` with `μ(s) = big_s`.
pub fn semistandard_truncation_check(
    lambda: &Partition,
    mu: &Partition,
    big_s: &[Vec<usize>],
    s: &StdTableau,
) -> Result<TruncationCheck, CombinatError> {
    let n = lambda.size();
    if mu.size() != n || mu.parts().last() != Some(&1) {
        return Err(CombinatError::Precondition(
            "μ must have size n and last part 1".into(),
        ));
    }
    if s.shape != *lambda || !s.is_standard() || s.offset != 0 {
        return Err(CombinatError::Precondition(
            "s must be a standard λ-tableau".into(),
        ));
    }
    let shape_ok =
        big_s.len() == lambda.len() && big_s.iter().zip(lambda.parts()).all(|(r, &p)| r.len() == p);
    let rows_ok = big_s.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
    let cols_ok =
        (1..big_s.len()).all(|i| (0..big_s[i].len()).all(|j| big_s[i - 1][j] < big_s[i][j]));
    let mut counts = vec![0usize; mu.len()];
    for &x in big_s.iter().flatten() {
        if x == 0 || x > mu.len() {
            return Err(CombinatError::Precondition("entry outside the type".into()));
        }
        counts[x - 1] += 1;
    }
    if !shape_ok || !rows_ok || !cols_ok || counts != mu.parts() {
        return Err(CombinatError::Precondition(
            "S is not semistandard of type μ".into(),
        ));
    }
    if type_tableau(s, mu.parts()) != big_s {
        return Err(CombinatError::Precondition("μ(s) differs from S".into()));
    }
    let mut nu_parts = mu.parts().to_vec();
    nu_parts.pop();
    let nu = Partition::new(nu_parts)?;
    let restricted = s.restrict_shape(n - 1);
    let dom = restricted.dominance(&nu);
    let lambda_from_nu = nu
        .addable_nodes(1)
        .iter()
        .any(|p| nu.add_node(p).as_ref() == Ok(lambda));
    Ok(TruncationCheck {
        dominates: dom.ge(),
        strict: dom == Dominance::Greater,
        equality_case_ok: restricted != nu || lambda_from_nu,
        restricted,
        nu,
    })
}

/// `|Std(λ)|` by the hook length formula.
pub fn std_count(l: &Partition) -> usize {
    let n = l.size();
    let conj = l.conjugate();
    let mut hooks: u128 = 1;
    for (i, &p) in l.parts().iter().enumerate() {
        for j in 0..p {
            hooks *= (p - j + conj.part(j) - i - 1) as u128;
        }
    }
    ((1..=n as u128).product::<u128>() / hooks) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn nodes_of_21() {
        let l = p(&[2, 1]);
        let rem: Vec<(usize, usize)> = l
            .removable_nodes(1)
            .iter()
            .map(|n| (n.row, n.col))
            .collect();
        let add: Vec<(usize, usize)> = l.addable_nodes(1).iter().map(|n| (n.row, n.col)).collect();
        assert_eq!(rem, vec![(2, 1), (1, 2)]);
        assert_eq!(add, vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(Partition::empty().addable_nodes(1).len(), 1);
    }

    #[test]
    fn tla_example() {
        let l = p(&[4, 3, 1]);
        let t = StdTableau::column_reading(&l, 0);
        assert_eq!(t.rows, vec![vec![1, 4, 6, 8], vec![2, 5, 7], vec![3]]);
        let w = t.d_perm();
        assert_eq!(StdTableau::row_reading(&l, 0).act(&w), t);
        assert_eq!(Perm::from_word(8, &w.reduced_word()), w);
    }

    #[test]
    fn offset_tableaux() {
        let l = p(&[3, 2, 1]);
        assert_eq!(
            StdTableau::row_reading(&l, 1).rows,
            vec![vec![2, 3, 4], vec![5, 6], vec![7]]
        );
        assert_eq!(
            StdTableau::column_reading(&l, 1).rows,
            vec![vec![2, 5, 7], vec![3, 6], vec![4]]
        );
    }

    #[test]
    fn bipartition_parse() {
        let b: Bipartition = "[2,1];[]".parse().unwrap();
        assert_eq!(b.to_string(), "([2,1],[])");
        assert_eq!(b.to_string().parse::<Bipartition>().unwrap(), b);
    }

    #[test]
    fn labels_21() {
        let l = CellLabel::all(2, 1);
        let names: Vec<String> = l.iter().map(|x| x.to_string()).collect();
        assert_eq!(
            names,
            vec!["(1, ([1],[]))", "(0, ([2],[1]))", "(0, ([1,1],[1]))"]
        );
    }

    #[test]
    fn coset_reps_small() {
        for (r, s, f) in [(2, 2, 1), (3, 2, 1), (3, 2, 2), (3, 3, 2), (2, 3, 2)] {
            let reps = coset_reps(r, s, f).unwrap();
            assert_eq!(reps.len(), coset_count(r, s, f));
            assert!(reps[0].is_identity() && reps[0].word().is_empty());
            let (n, exact) = brute_force_cosets(r, s, f).unwrap();
            assert_eq!(n, reps.len());
            assert!(exact, "({r},{s},{f})");
        }
    }

    #[test]
    fn hook_counts() {
        for n in 1..7 {
            for l in Partition::all(n) {
                assert_eq!(StdTableau::all(&l, 0).len(), std_count(&l));
            }
        }
    }
}
