//! Coxeter systems, parabolic subgroups and the graded ranks that count
//! singular Soergel bimodules.
//!
//! Group elements are computed in one of two backends per parabolic subset:
//! the integer Cartan realization (labels 2, 3, 4, 6, ∞) or, for two
//! generators with any label, alternating-word normal forms. Finiteness is
//! decided by the classification of connected Coxeter diagrams and
//! cross-checked by enumeration when the group is small enough.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactlin::{rat, Rat, Subspace};
use crate::{Error, Result};

/// Groups of at most this order are enumerated to cross-check the
/// classification.
pub const ENUMERATION_CAP: usize = 100_000;

/// Upper bound on `monomials × |W_I|` for one invariant computation.
pub const REYNOLDS_WORK_CAP: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Fin(u64),
    Inf,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Fin(m) => write!(f, "{m}"),
            Label::Inf => write!(f, "inf"),
        }
    }
}

/// A validated Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    m: Vec<Vec<Label>>,
}

impl CoxeterMatrix {
    pub fn new(m: Vec<Vec<Label>>) -> Result<CoxeterMatrix> {
        validate(&m)?;
        Ok(CoxeterMatrix { m })
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn label(&self, s: usize, t: usize) -> Label {
        self.m[s][t]
    }

    pub fn full(&self) -> Vec<usize> {
        (0..self.rank()).collect()
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let cells: Vec<String> = row.iter().map(|l| l.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn validate(m: &[Vec<Label>]) -> Result<()> {
    let n = m.len();
    for (s, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCoxeter(format!("row {s} has {} entries, expected {n}", row.len())));
        }
        if row[s] != Label::Fin(1) {
            return Err(Error::InvalidCoxeter(format!("diagonal entry ({s},{s}) is {}, must be 1", row[s])));
        }
    }
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            if m[s][t] != m[t][s] {
                return Err(Error::InvalidCoxeter(format!(
                    "asymmetric: m({s},{t}) = {} but m({t},{s}) = {}",
                    m[s][t], m[t][s]
                )));
            }
            if let Label::Fin(x) = m[s][t] {
                if x < 2 {
                    return Err(Error::InvalidCoxeter(format!("off-diagonal entry ({s},{t}) is {x} < 2")));
                }
            }
        }
    }
    Ok(())
}

/// Whitespace-separated rows, `inf` for ∞, `#` comments.
pub fn parse_matrix(text: &str) -> Result<CoxeterMatrix> {
    let mut rows = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            let l = match tok {
                "inf" | "∞" => Label::Inf,
                _ => Label::Fin(tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: ln + 1,
                    msg: format!("bad matrix entry `{tok}`"),
                })?),
            };
            row.push(l);
        }
        rows.push(row);
    }
    CoxeterMatrix::new(rows)
}

/// Comma-separated generator indices; `-`, `{}` or the empty string is ∅.
pub fn parse_subset(text: &str, rank: usize) -> Result<Vec<usize>> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if t.is_empty() || t == "-" {
        return Ok(Vec::new());
    }
    let mut out = BTreeSet::new();
    for tok in t.split(',') {
        let tok = tok.trim();
        let s: usize = tok
            .parse()
            .map_err(|_| Error::Parse { line: 0, msg: format!("bad generator index `{tok}`") })?;
        if s >= rank {
            return Err(Error::Parse { line: 0, msg: format!("generator {s} out of range (rank {rank})") });
        }
        out.insert(s);
    }
    Ok(out.into_iter().collect())
}

pub fn fmt_subset(i: &[usize]) -> String {
    let parts: Vec<String> = i.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn normalize_subset(m: &CoxeterMatrix, i: &[usize]) -> Result<Vec<usize>> {
    let set: BTreeSet<usize> = i.iter().copied().collect();
    if let Some(&s) = set.iter().find(|&&s| s >= m.rank()) {
        return Err(Error::InvalidCoxeter(format!("generator {s} out of range")));
    }
    Ok(set.into_iter().collect())
}

// ---------------------------------------------------------------- polynomials

/// Integer Laurent polynomial in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(e: i64, c: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    /// `coeffs[k]` is the coefficient of `q^k`.
    pub fn from_coeffs(coeffs: &[i64]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(k as i64, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.coeffs.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in other.terms() {
            p.add_term(e, c);
        }
        p
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                p.add_term(a + b, x * y);
            }
        }
        p
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect() }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitutes `q ↦ q^k`.
    pub fn scale(&self, k: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e * k, c)).collect() }
    }

    /// Substitutes `q² ↦ q`; `None` if an odd exponent occurs.
    pub fn halve(&self) -> Option<LaurentPoly> {
        if self.coeffs.keys().any(|e| e % 2 != 0) {
            return None;
        }
        Some(LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e / 2, c)).collect() })
    }

    /// Substitutes `q ↦ q⁻¹`.
    pub fn bar(&self) -> LaurentPoly {
        self.scale(-1)
    }

    /// `q^c · p(q⁻¹) = p(q)`.
    pub fn is_palindromic(&self, c: i64) -> bool {
        self.bar().shift(c) == *self
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn truncate(&self, cap: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().filter(|(&e, _)| e <= cap).map(|(&e, &c)| (e, c)).collect() }
    }

    pub fn nonneg(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, a) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let var = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            match (a, var.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{var}")?,
                _ => write!(f, "{a}{var}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- backends

/// Generalized Cartan entry `a[s][t]` for the pair `s < t` (and its transpose).
fn cartan_pair(l: Label) -> Option<(i64, i64)> {
    match l {
        Label::Fin(2) => Some((0, 0)),
        Label::Fin(3) => Some((-1, -1)),
        Label::Fin(4) => Some((-1, -2)),
        Label::Fin(6) => Some((-1, -3)),
        Label::Inf => Some((-2, -2)),
        _ => None,
    }
}

/// Cartan matrix of the realization on the given generators, or the first
/// unsupported label.
fn cartan(m: &CoxeterMatrix, gens: &[usize]) -> std::result::Result<Vec<Vec<i64>>, Label> {
    let k = gens.len();
    let mut a = vec![vec![0i64; k]; k];
    for x in 0..k {
        a[x][x] = 2;
        for y in x + 1..k {
            let (p, q) = cartan_pair(m.label(gens[x], gens[y])).ok_or(m.label(gens[x], gens[y]))?;
            a[x][y] = p;
            a[y][x] = q;
        }
    }
    Ok(a)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum State {
    /// Row-major `k × k` matrix; column `c` is the image of the simple root `c`.
    Mat(Vec<i64>),
    /// Alternating word starting with local generator `first`; at length `m`
    /// the start is normalized to 0.
    Dih { first: usize, len: u64 },
}

#[derive(Debug, Clone)]
enum Backend {
    Cartan { a: Vec<Vec<i64>> },
    Dihedral { m: Option<u64> },
}

/// Element arithmetic for one parabolic subgroup `W_I`. Local generator `x`
/// is the global generator `gens[x]`.
#[derive(Debug, Clone)]
pub struct Subsystem {
    gens: Vec<usize>,
    backend: Backend,
}

impl Subsystem {
    pub fn new(m: &CoxeterMatrix, i: &[usize]) -> Result<Subsystem> {
        let gens = normalize_subset(m, i)?;
        let backend = match cartan(m, &gens) {
            Ok(a) => Backend::Cartan { a },
            Err(_) if gens.len() == 2 => Backend::Dihedral {
                m: match m.label(gens[0], gens[1]) {
                    Label::Fin(x) => Some(x),
                    Label::Inf => None,
                },
            },
            Err(l) => return Err(Error::UnsupportedLabel(format!("{l} in {}", fmt_subset(&gens)))),
        };
        Ok(Subsystem { gens, backend })
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    fn local(&self, s: usize) -> Result<usize> {
        self.gens
            .iter()
            .position(|&g| g == s)
            .ok_or_else(|| Error::InvalidCoxeter(format!("generator {s} not in {}", fmt_subset(&self.gens))))
    }

    fn identity(&self) -> State {
        match &self.backend {
            Backend::Cartan { a } => {
                let k = a.len();
                let mut v = vec![0; k * k];
                for x in 0..k {
                    v[x * k + x] = 1;
                }
                State::Mat(v)
            }
            Backend::Dihedral { .. } => State::Dih { first: 0, len: 0 },
        }
    }

    fn is_identity(&self, st: &State) -> bool {
        *st == self.identity()
    }

    /// `w·s` for local generator `x`.
    fn mul_gen(&self, st: &State, x: usize) -> Result<State> {
        match (&self.backend, st) {
            (Backend::Cartan { a }, State::Mat(w)) => {
                // (W S_x) e_c = W e_c - a[x][c] W e_x
                let k = a.len();
                let mut out = w.clone();
                for c in 0..k {
                    let f = a[x][c];
                    if f == 0 {
                        continue;
                    }
                    for r in 0..k {
                        let v = w[r * k + x]
                            .checked_mul(f)
                            .and_then(|p| w[r * k + c].checked_sub(p))
                            .ok_or_else(|| Error::ResourceLimit("matrix entry overflow".into()))?;
                        out[r * k + c] = v;
                    }
                }
                Ok(State::Mat(out))
            }
            (Backend::Dihedral { m }, State::Dih { first, len }) => Ok(dih_mul(*m, *first, *len, x)),
            _ => Err(Error::ConstructionBug("backend/state mismatch".into())),
        }
    }

    /// `x` is a right descent of `w` iff `w` sends the root of `x` negative.
    fn right_descent(&self, st: &State, x: usize) -> bool {
        match (&self.backend, st) {
            (Backend::Cartan { a }, State::Mat(w)) => {
                let k = a.len();
                (0..k).any(|r| w[r * k + x] < 0)
            }
            (Backend::Dihedral { m }, State::Dih { first, len }) => {
                *len > 0 && (Some(*len) == *m || dih_last(*first, *len) == x)
            }
            _ => false,
        }
    }

    fn state_of(&self, word: &[usize]) -> Result<State> {
        let mut st = self.identity();
        for &s in word {
            st = self.mul_gen(&st, self.local(s)?)?;
        }
        Ok(st)
    }

    /// ShortLex-least reduced word of the element with inverse state `inv`:
    /// each letter is the smallest left descent of what remains.
    fn canonical_from_inverse(&self, mut inv: State) -> Result<Vec<usize>> {
        let mut word = Vec::new();
        while !self.is_identity(&inv) {
            let x = (0..self.gens.len())
                .find(|&x| self.right_descent(&inv, x))
                .ok_or_else(|| Error::ConstructionBug("non-identity element without descent".into()))?;
            word.push(self.gens[x]);
            inv = self.mul_gen(&inv, x)?;
        }
        Ok(word)
    }

    fn element_from_state(&self, st: &State, word: Vec<usize>) -> CoxeterElement {
        let matrix = match (&self.backend, st) {
            (Backend::Cartan { a }, State::Mat(w)) => {
                let k = a.len();
                Some((0..k).map(|r| w[r * k..(r + 1) * k].to_vec()).collect())
            }
            _ => None,
        };
        CoxeterElement { word, matrix }
    }

    /// The element represented by an arbitrary word, in canonical form.
    pub fn element(&self, word: &[usize]) -> Result<CoxeterElement> {
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        let canon = self.canonical_from_inverse(self.state_of(&rev)?)?;
        let st = self.state_of(&canon)?;
        Ok(self.element_from_state(&st, canon))
    }

    pub fn is_right_descent(&self, e: &CoxeterElement, s: usize) -> Result<bool> {
        Ok(self.right_descent(&self.state_of(&e.word)?, self.local(s)?))
    }

    pub fn is_left_descent(&self, e: &CoxeterElement, s: usize) -> Result<bool> {
        let rev: Vec<usize> = e.word.iter().rev().copied().collect();
        Ok(self.right_descent(&self.state_of(&rev)?, self.local(s)?))
    }

    pub fn mul(&self, x: &CoxeterElement, y: &CoxeterElement) -> Result<CoxeterElement> {
        let mut w = x.word.clone();
        w.extend_from_slice(&y.word);
        self.element(&w)
    }

    /// All elements of length at most `cap` in ShortLex order of their
    /// canonical words; `ResourceLimit` past `limit` elements.
    pub fn enumerate(&self, cap: usize, limit: usize) -> Result<Vec<CoxeterElement>> {
        let id = self.identity();
        let mut seen: HashMap<State, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut level: Vec<(State, Vec<usize>)> = vec![(id, Vec::new())];
        let mut out = vec![self.element_from_state(&level[0].0, Vec::new())];
        for _ in 0..cap {
            let mut next = Vec::new();
            for (st, word) in &level {
                for x in 0..self.gens.len() {
                    if self.right_descent(st, x) {
                        continue;
                    }
                    let ns = self.mul_gen(st, x)?;
                    if seen.contains_key(&ns) {
                        continue;
                    }
                    seen.insert(ns.clone(), ());
                    let mut nw = word.clone();
                    nw.push(self.gens[x]);
                    next.push((ns, nw));
                }
            }
            if next.is_empty() {
                break;
            }
            for (st, w) in &next {
                out.push(self.element_from_state(st, w.clone()));
            }
            if out.len() > limit {
                return Err(Error::ResourceLimit(format!("more than {limit} elements")));
            }
            level = next;
        }
        Ok(out)
    }
}

fn dih_last(first: usize, len: u64) -> usize {
    if len % 2 == 1 {
        first
    } else {
        1 - first
    }
}

fn dih_norm(m: Option<u64>, first: usize, len: u64) -> State {
    if len == 0 || Some(len) == m {
        State::Dih { first: 0, len }
    } else {
        State::Dih { first, len }
    }
}

fn dih_mul(m: Option<u64>, first: usize, len: u64, x: usize) -> State {
    if len == 0 {
        return dih_norm(m, x, 1);
    }
    if Some(len) == m {
        // Both alternating words of length m agree; drop x from the one ending in x.
        let f = if len % 2 == 1 { x } else { 1 - x };
        return dih_norm(m, f, len - 1);
    }
    if dih_last(first, len) == x {
        dih_norm(m, first, len - 1)
    } else {
        dih_norm(m, first, len + 1)
    }
}

/// A group element with its ShortLex-least reduced word (global generator
/// indices) and, in the Cartan backend, its matrix on the simple roots of
/// the subsystem it was computed in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoxeterElement {
    pub word: Vec<usize>,
    pub matrix: Option<Vec<Vec<i64>>>,
}

impl CoxeterElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|s| format!("s{s}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

pub fn enumerate(m: &CoxeterMatrix, i: &[usize], cap: usize) -> Result<Vec<CoxeterElement>> {
    Subsystem::new(m, i)?.enumerate(cap, ENUMERATION_CAP)
}

// ---------------------------------------------------------------- classification

/// Finite irreducible type of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub gens: Vec<usize>,
    /// `None` when the component is of infinite type.
    pub kind: Option<String>,
    pub order: Option<BigUint>,
    pub longest: Option<usize>,
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * k)
}

fn pow2(n: u64) -> BigUint {
    BigUint::one() << (n as usize)
}

fn classify_component(m: &CoxeterMatrix, gens: &[usize]) -> Component {
    let n = gens.len();
    let mk = |kind: String, order: BigUint, longest: usize| Component {
        gens: gens.to_vec(),
        kind: Some(kind),
        order: Some(order),
        longest: Some(longest),
    };
    let infinite = Component { gens: gens.to_vec(), kind: None, order: None, longest: None };
    if n == 1 {
        return mk("A1".into(), BigUint::from(2u32), 1);
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            match m.label(gens[x], gens[y]) {
                Label::Fin(2) => {}
                Label::Inf => return infinite,
                Label::Fin(l) => edges.push((x, y, l)),
            }
        }
    }
    if n == 2 {
        let l = edges[0].2;
        let kind = match l {
            3 => "A2".to_string(),
            4 => "B2".to_string(),
            6 => "G2".to_string(),
            _ => format!("I2({l})"),
        };
        return mk(kind, BigUint::from(2 * l), l as usize);
    }
    if edges.len() != n - 1 {
        return infinite;
    }
    let mut adj = vec![Vec::new(); n];
    for &(x, y, _) in &edges {
        adj[x].push(y);
        adj[y].push(x);
    }
    let special: Vec<&(usize, usize, u64)> = edges.iter().filter(|e| e.2 != 3).collect();
    let branch: Vec<usize> = (0..n).filter(|&x| adj[x].len() >= 3).collect();
    let nn = n as u64;
    if branch.is_empty() {
        // A path: find its order from one end.
        let start = (0..n).find(|&x| adj[x].len() == 1).unwrap_or(0);
        let mut order_path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&nx) = adj[cur].iter().find(|&&y| y != prev) {
            order_path.push(nx);
            prev = cur;
            cur = nx;
        }
        if special.is_empty() {
            return mk(format!("A{n}"), factorial(nn + 1), n * (n + 1) / 2);
        }
        if special.len() > 1 {
            return infinite;
        }
        let (x, y, l) = *special[0];
        let px = order_path.iter().position(|&v| v == x).unwrap_or(0);
        let py = order_path.iter().position(|&v| v == y).unwrap_or(0);
        let lo = px.min(py);
        let at_end = lo == 0 || lo == n - 2;
        return match (l, at_end, n) {
            (4, true, _) => mk(format!("B{n}"), pow2(nn) * factorial(nn), n * n),
            (4, false, 4) => mk("F4".into(), BigUint::from(1152u32), 24),
            (5, true, 3) => mk("H3".into(), BigUint::from(120u32), 15),
            (5, true, 4) => mk("H4".into(), BigUint::from(14400u32), 60),
            _ => infinite,
        };
    }
    if branch.len() > 1 || !special.is_empty() || adj[branch[0]].len() != 3 {
        return infinite;
    }
    let c = branch[0];
    let mut arms: Vec<usize> = adj[c]
        .iter()
        .map(|&y| {
            let (mut prev, mut cur, mut len) = (c, y, 1);
            while let Some(&nx) = adj[cur].iter().find(|&&z| z != prev) {
                prev = cur;
                cur = nx;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match (arms[0], arms[1], arms[2]) {
        (1, 1, _) => mk(format!("D{n}"), pow2(nn - 1) * factorial(nn), n * (n - 1)),
        (1, 2, 2) => mk("E6".into(), BigUint::from(51_840u32), 36),
        (1, 2, 3) => mk("E7".into(), BigUint::from(2_903_040u32), 63),
        (1, 2, 4) => mk("E8".into(), BigUint::from(696_729_600u32), 120),
        _ => infinite,
    }
}

/// Connected components of the Coxeter diagram restricted to `i`.
pub fn components(m: &CoxeterMatrix, i: &[usize]) -> Vec<Vec<usize>> {
    let mut left: BTreeSet<usize> = i.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&s) = left.iter().next() {
        left.remove(&s);
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let nbrs: Vec<usize> = left.iter().copied().filter(|&y| m.label(x, y) != Label::Fin(2)).collect();
            for y in nbrs {
                left.remove(&y);
                comp.push(y);
                queue.push_back(y);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicData {
    pub subset: Vec<usize>,
    pub finite: bool,
    pub components: Vec<Component>,
    pub order: Option<BigUint>,
    pub longest: Option<CoxeterElement>,
    pub longest_length: Option<usize>,
    /// Order and longest length confirmed by enumeration.
    pub enumerated: bool,
}

impl ParabolicData {
    pub fn type_name(&self) -> String {
        if self.subset.is_empty() {
            return "trivial".into();
        }
        let parts: Vec<String> =
            self.components.iter().map(|c| c.kind.clone().unwrap_or_else(|| "infinite".into())).collect();
        parts.join("×")
    }
}

fn classify(m: &CoxeterMatrix, i: &[usize]) -> Result<(Vec<usize>, Vec<Component>)> {
    let i = normalize_subset(m, i)?;
    let comps: Vec<Component> = components(m, &i).iter().map(|c| classify_component(m, c)).collect();
    Ok((i, comps))
}

pub fn is_finite(m: &CoxeterMatrix, i: &[usize]) -> Result<bool> {
    Ok(classify(m, i)?.1.iter().all(|c| c.kind.is_some()))
}

pub fn finite_type(m: &CoxeterMatrix, i: &[usize]) -> Result<ParabolicData> {
    let (i, comps) = classify(m, &i.to_vec())?;
    let finite = comps.iter().all(|c| c.kind.is_some());
    let mut data = ParabolicData {
        subset: i.clone(),
        finite,
        components: comps.clone(),
        order: None,
        longest: None,
        longest_length: None,
        enumerated: false,
    };
    if !finite {
        return Ok(data);
    }
    let order: BigUint = comps.iter().map(|c| c.order.clone().unwrap_or_default()).product();
    let len: usize = comps.iter().map(|c| c.longest.unwrap_or(0)).sum();
    data.order = Some(order.clone());
    data.longest_length = Some(len);
    let sub = match Subsystem::new(m, &i) {
        Ok(s) => s,
        Err(Error::UnsupportedLabel(_)) => return Ok(data),
        Err(e) => return Err(e),
    };
    let w = greedy_longest(&sub)?;
    if w.length() != len {
        return Err(Error::ConstructionBug(format!(
            "greedy ascent in {} reached length {}, classification says {len}",
            fmt_subset(&i),
            w.length()
        )));
    }
    data.longest = Some(w);
    if order <= BigUint::from(ENUMERATION_CAP) {
        let all = sub.enumerate(len + 1, ENUMERATION_CAP)?;
        let top = all.iter().map(|e| e.length()).max().unwrap_or(0);
        if BigUint::from(all.len()) != order || top != len {
            return Err(Error::ConstructionBug(format!(
                "{}: enumeration gives order {} and top length {top}, classification {order} and {len}",
                fmt_subset(&i),
                all.len()
            )));
        }
        data.enumerated = true;
    }
    Ok(data)
}

fn greedy_longest(sub: &Subsystem) -> Result<CoxeterElement> {
    let mut st = sub.identity();
    let mut word = Vec::new();
    while let Some(x) = (0..sub.gens.len()).find(|&x| !sub.right_descent(&st, x)) {
        st = sub.mul_gen(&st, x)?;
        word.push(sub.gens[x]);
    }
    sub.element(&word)
}

fn require_finite(m: &CoxeterMatrix, i: &[usize]) -> Result<ParabolicData> {
    let d = finite_type(m, i)?;
    if !d.finite {
        return Err(Error::InfiniteParabolic(fmt_subset(&d.subset)));
    }
    Ok(d)
}

/// `w_I`, by greedy ascent: right-multiply by non-descents until every
/// generator of `I` is a descent.
pub fn longest_element(m: &CoxeterMatrix, i: &[usize]) -> Result<CoxeterElement> {
    let d = require_finite(m, i)?;
    match d.longest {
        Some(w) => Ok(w),
        None => greedy_longest(&Subsystem::new(m, i)?),
    }
}

/// Minimal representatives of the `W_I`–`W_J` double cosets meeting the
/// elements of `W` of length at most `cap`, in ShortLex order.
pub fn double_cosets(m: &CoxeterMatrix, i: &[usize], j: &[usize], cap: usize) -> Result<Vec<CoxeterElement>> {
    let i = normalize_subset(m, i)?;
    let j = normalize_subset(m, j)?;
    let full = Subsystem::new(m, &m.full())?;
    let elems = full.enumerate(cap, ENUMERATION_CAP)?;
    let index: HashMap<Vec<usize>, usize> = elems.iter().enumerate().map(|(k, e)| (e.word.clone(), k)).collect();
    let mut orbit = vec![usize::MAX; elems.len()];
    let mut reps = Vec::new();
    for start in 0..elems.len() {
        if orbit[start] != usize::MAX {
            continue;
        }
        let id = reps.len();
        orbit[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            let w = &elems[k].word;
            let mut nbrs = Vec::new();
            for &s in &i {
                let mut v = vec![s];
                v.extend_from_slice(w);
                nbrs.push(full.element(&v)?);
            }
            for &s in &j {
                let mut v = w.clone();
                v.push(s);
                nbrs.push(full.element(&v)?);
            }
            for e in nbrs {
                if let Some(&t) = index.get(&e.word) {
                    if orbit[t] == usize::MAX {
                        orbit[t] = id;
                        members.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        let min = members.iter().map(|&k| elems[k].length()).min().unwrap_or(0);
        let shortest: Vec<usize> = members.iter().copied().filter(|&k| elems[k].length() == min).collect();
        if shortest.len() != 1 {
            return Err(Error::ConstructionBug(format!("double coset with {} minimal elements", shortest.len())));
        }
        let p = elems[shortest[0]].clone();
        for &s in &i {
            if full.is_left_descent(&p, s)? {
                return Err(Error::ConstructionBug(format!("{p} has left descent {s} in I")));
            }
        }
        for &s in &j {
            if full.is_right_descent(&p, s)? {
                return Err(Error::ConstructionBug(format!("{p} has right descent {s} in J")));
            }
        }
        reps.push(p);
    }
    reps.sort_by(|a, b| (a.length(), &a.word).cmp(&(b.length(), &b.word)));
    Ok(reps)
}

/// `Σ_{w ∈ W_I} q^{l(w)}`.
pub fn poincare(m: &CoxeterMatrix, i: &[usize]) -> Result<LaurentPoly> {
    let d = require_finite(m, i)?;
    let len = d.longest_length.unwrap_or(0);
    if let Some(o) = &d.order {
        if *o > BigUint::from(ENUMERATION_CAP) {
            return poincare_by_factors(m, &d);
        }
    }
    let sub = match Subsystem::new(m, &d.subset) {
        Ok(s) => s,
        Err(Error::UnsupportedLabel(_)) => return poincare_by_factors(m, &d),
        Err(e) => return Err(e),
    };
    let mut p = LaurentPoly::zero();
    for e in sub.enumerate(len, ENUMERATION_CAP)? {
        p.add_term(e.length() as i64, 1);
    }
    Ok(p)
}

fn q_int(d: usize) -> LaurentPoly {
    LaurentPoly::from_coeffs(&vec![1; d])
}

/// Product of `[d_k]_q` over the degrees of the basic invariants, for
/// groups too large (or with labels too exotic) to enumerate.
fn poincare_by_factors(_m: &CoxeterMatrix, d: &ParabolicData) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::one();
    for c in &d.components {
        let kind = c.kind.clone().unwrap_or_default();
        let n = c.gens.len();
        let degrees: Vec<usize> = match kind.as_str() {
            "E6" => vec![2, 5, 6, 8, 9, 12],
            "E7" => vec![2, 6, 8, 10, 12, 14, 18],
            "E8" => vec![2, 8, 12, 14, 18, 20, 24, 30],
            "F4" => vec![2, 6, 8, 12],
            "H3" => vec![2, 6, 10],
            "H4" => vec![2, 12, 20, 30],
            "G2" | "B2" | "A2" => vec![2, c.longest.unwrap_or(0)],
            k if k.starts_with("I2") => vec![2, c.longest.unwrap_or(0)],
            k if k.starts_with('A') => (2..=n + 1).collect(),
            k if k.starts_with('B') => (1..=n).map(|x| 2 * x).collect(),
            k if k.starts_with('D') => {
                let mut v: Vec<usize> = (1..n).map(|x| 2 * x).collect();
                v.push(n);
                v
            }
            _ => return Err(Error::ConstructionBug(format!("no degrees for {kind}"))),
        };
        for deg in degrees {
            p = p.mul(&q_int(deg));
        }
    }
    Ok(p)
}

/// Graded rank of `R^I` over `R^J` (`I ⊆ J`), with `V*` in degree 2:
/// `Σ q^{2 l(w)}` over minimal representatives of `W_I \ W_J`.
pub fn graded_rank(m: &CoxeterMatrix, i: &[usize], j: &[usize]) -> Result<LaurentPoly> {
    let i = normalize_subset(m, i)?;
    let j = normalize_subset(m, j)?;
    if !i.iter().all(|s| j.contains(s)) {
        return Err(Error::BadInclusion(format!("{} ⊄ {}", fmt_subset(&i), fmt_subset(&j))));
    }
    let di = require_finite(m, &i)?;
    let dj = require_finite(m, &j)?;
    let (li, lj) = (di.longest_length.unwrap_or(0), dj.longest_length.unwrap_or(0));
    let pi = poincare(m, &i)?;
    let pj = poincare(m, &j)?;
    let rank = match Subsystem::new(m, &j) {
        Ok(sub) if dj.order.as_ref().is_some_and(|o| *o <= BigUint::from(ENUMERATION_CAP)) => {
            let mut r = LaurentPoly::zero();
            for e in sub.enumerate(lj, ENUMERATION_CAP)? {
                let mut minimal = true;
                for &s in &i {
                    if sub.is_left_descent(&e, s)? {
                        minimal = false;
                        break;
                    }
                }
                if minimal {
                    r.add_term(2 * e.length() as i64, 1);
                }
            }
            r
        }
        // Poincaré polynomials factor: P_J = P_I · Σ q^{l(p)}.
        _ => poly_div(&pj, &pi)?.scale(2),
    };
    let halved = rank.halve().ok_or_else(|| Error::ConstructionBug("odd exponent in a graded rank".into()))?;
    if pi.mul(&halved) != pj {
        return Err(Error::ConstructionBug(format!(
            "P_I · rank ≠ P_J for {} ⊆ {}",
            fmt_subset(&i),
            fmt_subset(&j)
        )));
    }
    let top = 2 * (lj as i64 - li as i64);
    if !rank.is_palindromic(top) {
        return Err(Error::ConstructionBug(format!("graded rank {rank} is not palindromic about q^{top}")));
    }
    Ok(rank)
}

/// Exact division of polynomials with non-negative exponents.
fn poly_div(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    let lead_b = b.max_degree().ok_or_else(|| Error::ConstructionBug("division by zero".into()))?;
    let cb = b.coeff(lead_b);
    let mut rem = a.clone();
    let mut q = LaurentPoly::zero();
    while let Some(d) = rem.max_degree() {
        if d < lead_b {
            break;
        }
        let c = rem.coeff(d);
        if c % cb != 0 {
            break;
        }
        let t = LaurentPoly::monomial(d - lead_b, c / cb);
        rem = rem.add(&t.mul(b).neg());
        q = q.add(&t);
    }
    if !rem.is_zero() {
        return Err(Error::ConstructionBug(format!("{b} does not divide {a}")));
    }
    Ok(q)
}

// ---------------------------------------------------------------- invariants

/// Polynomial in the coordinates of `V`, keyed by exponent vectors.
pub type Poly = BTreeMap<Vec<u32>, Rat>;

#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub subset: Vec<usize>,
    pub cap: usize,
    pub rank: usize,
    pub group_order: usize,
    /// `(q-degree, basis)` for polynomial degree `d` at `q^{2d} ≤ cap`.
    pub degrees: Vec<(usize, Vec<Poly>)>,
    pub hilbert: LaurentPoly,
    /// `Hilb(R^I) · graded_rank(∅, I) ≡ 1/(1-q²)^rank` up to the cap.
    pub consistent: bool,
}

fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - a) {
            let mut v = vec![a];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, x| acc * (n - x) / (x + 1))
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e.clone()).or_insert_with(Rat::zero);
            *v += ca * cb;
            if v.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

/// Averages every monomial of each degree over `W_I` acting on the
/// coordinates of the full geometric representation; the image spans the
/// invariants of that degree.
pub fn reynolds_invariants(m: &CoxeterMatrix, i: &[usize], cap: usize) -> Result<InvariantReport> {
    let d = require_finite(m, i)?;
    let n = m.rank();
    let a = cartan(m, &m.full()).map_err(|l| Error::UnsupportedLabel(l.to_string()))?;
    let order = d.order.as_ref().and_then(|o| o.to_usize()).unwrap_or(usize::MAX);
    let max_d = (cap / 2) as u32;
    let mon_total: usize = (0..=max_d as usize).map(|k| binom(k + n - 1, n.saturating_sub(1).max(0))).sum();
    if order == usize::MAX || mon_total.saturating_mul(order) > REYNOLDS_WORK_CAP {
        return Err(Error::ResourceLimit(format!(
            "{mon_total} monomials × group order {order} exceeds {REYNOLDS_WORK_CAP}"
        )));
    }
    // Generator matrices on V: S_s e_c = e_c - a[s][c] e_s.
    let gen_mat = |s: usize| -> Vec<Vec<i64>> {
        let mut g = vec![vec![0i64; n]; n];
        for c in 0..n {
            g[c][c] = 1;
            g[s][c] -= a[s][c];
        }
        g
    };
    let mut group: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut seen = BTreeSet::new();
    let id: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    let mut queue = VecDeque::from([id.clone()]);
    seen.insert(id);
    let gens: Vec<Vec<Vec<i64>>> = d.subset.iter().map(|&s| gen_mat(s)).collect();
    while let Some(g) = queue.pop_front() {
        for h in &gens {
            let p: Vec<Vec<i64>> =
                (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| g[r][k] * h[k][c]).sum()).collect()).collect();
            if seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
        group.push(g);
        if group.len() > order {
            return Err(Error::ConstructionBug("group closure exceeds the classified order".into()));
        }
    }
    if group.len() != order {
        return Err(Error::ConstructionBug(format!("group closure has {} elements, expected {order}", group.len())));
    }
    // Linear substitution x_r ↦ Σ_c g[r][c] x_c, one table per element.
    let linear: Vec<Vec<Poly>> = group
        .iter()
        .map(|g| {
            (0..n)
                .map(|r| {
                    let mut p = Poly::new();
                    for c in 0..n {
                        if g[r][c] != 0 {
                            let mut e = vec![0u32; n];
                            e[c] = 1;
                            p.insert(e, rat(g[r][c]));
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    let inv_order = Rat::one() / rat(order as i64);
    let mut degrees = Vec::new();
    let mut hilbert = LaurentPoly::zero();
    for deg in 0..=max_d {
        let mons = monomials(n, deg);
        let index: HashMap<Vec<u32>, usize> = mons.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        let mut space = Subspace::zero(mons.len());
        for mon in &mons {
            let mut avg = Poly::new();
            for lin in &linear {
                let mut img: Poly = [(vec![0u32; n], Rat::one())].into_iter().collect();
                for (r, &pw) in mon.iter().enumerate() {
                    for _ in 0..pw {
                        img = poly_mul(&img, &lin[r]);
                    }
                }
                for (e, c) in img {
                    let v = avg.entry(e.clone()).or_insert_with(Rat::zero);
                    *v += c;
                    if v.is_zero() {
                        avg.remove(&e);
                    }
                }
            }
            let mut vec = vec![Rat::zero(); mons.len()];
            for (e, c) in avg {
                vec[index[&e]] = c * &inv_order;
            }
            space.insert(&vec);
        }
        let basis: Vec<Poly> = space
            .basis()
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (mons[k].clone(), c.clone())).collect())
            .collect();
        hilbert.add_term(2 * deg as i64, basis.len() as i64);
        degrees.push((2 * deg as usize, basis));
    }
    let rank = graded_rank(m, &[], &d.subset)?;
    let lhs = hilbert.mul(&rank).truncate(cap as i64);
    let mut rhs = LaurentPoly::zero();
    for k in 0..=max_d as usize {
        rhs.add_term(2 * k as i64, binom(k + n - 1, n.saturating_sub(1)) as i64);
    }
    let rhs = if n == 0 { LaurentPoly::one() } else { rhs };
    Ok(InvariantReport {
        subset: d.subset.clone(),
        cap,
        rank: n,
        group_order: order,
        degrees,
        hilbert,
        consistent: lhs == rhs,
    })
}

pub fn fmt_poly(p: &Poly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .iter()
        .map(|(e, c)| {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { format!("x{v}") } else { format!("x{v}^{k}") })
                .collect();
            let cs = crate::exactlin::fmt_rat(c);
            if vars.is_empty() {
                cs
            } else if c.is_one() {
                vars.join("*")
            } else {
                format!("{cs}*{}", vars.join("*"))
            }
        })
        .collect();
    terms.join(" + ")
}

// ---------------------------------------------------------------- Soergel counts

/// All subgroup-finite subsets of `S`, ordered by bitmask.
pub fn soergel_objects(m: &CoxeterMatrix) -> Result<Vec<Vec<usize>>> {
    let n = m.rank();
    if n > 20 {
        return Err(Error::ResourceLimit(format!("2^{n} subsets")));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let i: Vec<usize> = (0..n).filter(|s| mask >> s & 1 == 1).collect();
        if is_finite(m, &i)? {
            out.push(i);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottSamelsonRank {
    pub unshifted: LaurentPoly,
    pub shifted: LaurentPoly,
}

/// Graded rank over `R^{I_n}` of `R^{I_1} ⊗_{R^{J_1}} R^{I_2} ⊗ … ⊗ R^{I_n}`
/// for the chain `I_1 ⊂ J_1 ⊃ I_2 ⊂ … ⊃ I_n` (given as the alternating list
/// `[I_1, J_1, I_2, …, I_n]`). Unshifted it is `Π_t graded_rank(I_t, J_t)`.
/// The shifted rank applies each restriction shift `⟦l(w_small) - l(w_large)⟧`
/// as `q^{l(w_small) - l(w_large)}`, which makes `R^I` over `R^J` self-dual.
pub fn bott_samelson_graded_rank(m: &CoxeterMatrix, chain: &[Vec<usize>]) -> Result<BottSamelsonRank> {
    if chain.len() % 2 == 0 {
        return Err(Error::InvalidChain(format!("{} entries; expected I_1, J_1, …, I_n", chain.len())));
    }
    let chain: Vec<Vec<usize>> = chain.iter().map(|c| normalize_subset(m, c)).collect::<Result<_>>()?;
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|s| b.contains(s));
    for t in (1..chain.len()).step_by(2) {
        if !subset(&chain[t - 1], &chain[t]) || !subset(&chain[t + 1], &chain[t]) {
            return Err(Error::InvalidChain(format!(
                "{} ⊂ {} ⊃ {} fails",
                fmt_subset(&chain[t - 1]),
                fmt_subset(&chain[t]),
                fmt_subset(&chain[t + 1])
            )));
        }
    }
    let mut lengths = Vec::new();
    for c in &chain {
        lengths.push(require_finite(m, c)?.longest_length.unwrap_or(0) as i64);
    }
    let mut unshifted = LaurentPoly::one();
    let mut shift = 0i64;
    for t in (1..chain.len()).step_by(2) {
        unshifted = unshifted.mul(&graded_rank(m, &chain[t - 1], &chain[t])?);
        shift += lengths[t + 1] - lengths[t];
    }
    let shifted = unshifted.shift(shift);
    if !unshifted.nonneg() {
        return Err(Error::ConstructionBug(format!("negative coefficient in {unshifted}")));
    }
    Ok(BottSamelsonRank { unshifted, shifted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn mat(t: &str) -> CoxeterMatrix {
        parse_matrix(t).unwrap()
    }

    #[test]
    fn validation() {
        assert!(parse_matrix("1").is_ok());
        assert!(parse_matrix("1 3\n3 1").is_ok());
        assert!(matches!(parse_matrix("1 2\n3 1"), Err(Error::InvalidCoxeter(_))));
        assert!(matches!(parse_matrix("2 3\n3 1"), Err(Error::InvalidCoxeter(_))));
        assert!(matches!(parse_matrix("1 1\n1 1"), Err(Error::InvalidCoxeter(_))));
        assert!(matches!(parse_matrix("1 x\nx 1"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_matrix("").unwrap().rank() == 0);
    }

    #[test]
    fn rank_two_orders() {
        for (text, order, len) in [(fixtures::A2, 6u32, 3), (fixtures::B2, 8, 4), (fixtures::G2, 12, 6)] {
            let m = mat(text);
            let d = finite_type(&m, &[0, 1]).unwrap();
            assert!(d.finite && d.enumerated);
            assert_eq!(d.order, Some(BigUint::from(order)));
            assert_eq!(d.longest_length, Some(len));
            assert_eq!(enumerate(&m, &[0, 1], 100).unwrap().len(), order as usize);
            let w = longest_element(&m, &[0, 1]).unwrap();
            assert_eq!(w.length(), len);
        }
        let a1 = mat(fixtures::A1);
        let d = finite_type(&a1, &[0]).unwrap();
        assert_eq!((d.order, d.longest_length), (Some(BigUint::from(2u32)), Some(1)));
        assert_eq!(enumerate(&a1, &[0], 5).unwrap().len(), 2);
    }

    #[test]
    fn a2_enumeration_words() {
        let m = mat(fixtures::A2);
        let all = enumerate(&m, &[0, 1], 10).unwrap();
        let lens: Vec<usize> = all.iter().map(|e| e.length()).collect();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
        // ShortLex-least word of w_0 is s0 s1 s0.
        assert_eq!(all[5].word, vec![0, 1, 0]);
        assert_eq!(longest_element(&m, &[0, 1]).unwrap().word, vec![0, 1, 0]);
    }

    #[test]
    fn affine_a1() {
        let m = mat(fixtures::AFFINE_A1);
        assert!(!finite_type(&m, &[0, 1]).unwrap().finite);
        assert_eq!(enumerate(&m, &[0, 1], 4).unwrap().len(), 9);
        assert!(matches!(longest_element(&m, &[0, 1]), Err(Error::InfiniteParabolic(_))));
        assert_eq!(soergel_objects(&m).unwrap().len(), 3);
    }

    #[test]
    fn dihedral_backend_matches_classification() {
        for l in [5u64, 7, 8, 12] {
            let m = CoxeterMatrix::new(vec![vec![Label::Fin(1), Label::Fin(l)], vec![Label::Fin(l), Label::Fin(1)]])
                .unwrap();
            let d = finite_type(&m, &[0, 1]).unwrap();
            assert!(d.enumerated);
            assert_eq!(d.order, Some(BigUint::from(2 * l)));
            assert_eq!(poincare(&m, &[0, 1]).unwrap().eval_one(), 2 * l as i64);
        }
    }

    #[test]
    fn dihedral_agrees_with_cartan() {
        for text in [fixtures::A2, fixtures::B2, fixtures::G2, fixtures::AFFINE_A1] {
            let m = mat(text);
            let l = m.label(0, 1);
            let cart = Subsystem::new(&m, &[0, 1]).unwrap();
            let dih = Subsystem {
                gens: vec![0, 1],
                backend: Backend::Dihedral {
                    m: match l {
                        Label::Fin(x) => Some(x),
                        Label::Inf => None,
                    },
                },
            };
            let a: Vec<Vec<usize>> = cart.enumerate(8, 1000).unwrap().into_iter().map(|e| e.word).collect();
            let b: Vec<Vec<usize>> = dih.enumerate(8, 1000).unwrap().into_iter().map(|e| e.word).collect();
            assert_eq!(a, b);
            for w in [vec![0, 1, 1, 0, 1], vec![1, 0, 1, 0, 1, 0, 1], vec![0, 0]] {
                assert_eq!(cart.element(&w).unwrap().word, dih.element(&w).unwrap().word);
            }
        }
    }

    #[test]
    fn classification_table() {
        let chain = |n: usize, special: Option<(usize, u64)>| {
            let mut rows = vec![vec![Label::Fin(2); n]; n];
            for s in 0..n {
                rows[s][s] = Label::Fin(1);
            }
            for s in 0..n.saturating_sub(1) {
                let l = match special {
                    Some((k, l)) if k == s => l,
                    _ => 3,
                };
                rows[s][s + 1] = Label::Fin(l);
                rows[s + 1][s] = Label::Fin(l);
            }
            CoxeterMatrix::new(rows).unwrap()
        };
        let check = |m: &CoxeterMatrix, kind: &str, order: u64, len: usize| {
            let d = finite_type(m, &m.full()).unwrap();
            assert_eq!(d.type_name(), kind);
            assert_eq!(d.order, Some(BigUint::from(order)));
            assert_eq!(d.longest_length, Some(len));
        };
        check(&chain(3, None), "A3", 24, 6);
        check(&chain(4, None), "A4", 120, 10);
        check(&chain(3, Some((0, 4))), "B3", 48, 9);
        check(&chain(4, Some((2, 4))), "B4", 384, 16);
        check(&chain(4, Some((1, 4))), "F4", 1152, 24);
        check(&chain(3, Some((0, 5))), "H3", 120, 15);
        check(&chain(4, Some((0, 5))), "H4", 14400, 60);
        assert!(!finite_type(&chain(3, Some((0, 6))), &[0, 1, 2]).unwrap().finite);
        assert!(!finite_type(&chain(5, Some((1, 4))), &[0, 1, 2, 3, 4]).unwrap().finite);
        // D4 and E6 from explicit branch graphs.
        let branch = |arms: &[usize]| {
            let n = 1 + arms.iter().sum::<usize>();
            let mut rows = vec![vec![Label::Fin(2); n]; n];
            for s in 0..n {
                rows[s][s] = Label::Fin(1);
            }
            let mut next = 1;
            for &a in arms {
                let mut prev = 0;
                for _ in 0..a {
                    rows[prev][next] = Label::Fin(3);
                    rows[next][prev] = Label::Fin(3);
                    prev = next;
                    next += 1;
                }
            }
            CoxeterMatrix::new(rows).unwrap()
        };
        check(&branch(&[1, 1, 1]), "D4", 192, 12);
        check(&branch(&[1, 1, 2]), "D5", 1920, 20);
        check(&branch(&[1, 2, 2]), "E6", 51840, 36);
        let e8 = branch(&[1, 2, 4]);
        let d = finite_type(&e8, &e8.full()).unwrap();
        assert_eq!((d.type_name().as_str(), d.longest_length, d.enumerated), ("E8", Some(120), false));
        assert!(!finite_type(&branch(&[2, 2, 2]), &(0..7).collect::<Vec<_>>()).unwrap().finite);
        // A triangle of 3s is affine A2.
        let tri = parse_matrix("1 3 3\n3 1 3\n3 3 1").unwrap();
        assert!(!finite_type(&tri, &[0, 1, 2]).unwrap().finite);
        assert!(finite_type(&tri, &[0, 2]).unwrap().finite);
    }

    #[test]
    fn poincare_polynomials() {
        let a2 = mat(fixtures::A2);
        assert_eq!(poincare(&a2, &[0, 1]).unwrap(), LaurentPoly::from_coeffs(&[1, 2, 2, 1]));
        assert_eq!(poincare(&a2, &[0]).unwrap(), LaurentPoly::from_coeffs(&[1, 1]));
        assert_eq!(poincare(&a2, &[]).unwrap(), LaurentPoly::one());
        assert_eq!(LaurentPoly::from_coeffs(&[1, 2, 2, 1]).to_string(), "1 + 2q + 2q^2 + q^3");
        let d4: CoxeterMatrix = parse_matrix("1 3 2 2\n3 1 3 3\n2 3 1 2\n2 3 2 1").unwrap();
        let p = poincare(&d4, &d4.full()).unwrap();
        let d = finite_type(&d4, &d4.full()).unwrap();
        assert_eq!(p, poincare_by_factors(&d4, &d).unwrap());
    }

    #[test]
    fn graded_ranks() {
        let a2 = mat(fixtures::A2);
        assert_eq!(graded_rank(&a2, &[0], &[0]).unwrap(), LaurentPoly::one());
        assert_eq!(graded_rank(&a2, &[], &[0]).unwrap(), LaurentPoly::from_coeffs(&[1, 0, 1]));
        let r = graded_rank(&a2, &[0], &[0, 1]).unwrap();
        assert_eq!(r, LaurentPoly::from_coeffs(&[1, 0, 1, 0, 1]));
        assert!(r.is_palindromic(4));
        assert!(matches!(graded_rank(&a2, &[0, 1], &[0]), Err(Error::BadInclusion(_))));
        let aff = mat(fixtures::AFFINE_A1);
        assert!(matches!(graded_rank(&aff, &[0], &[0, 1]), Err(Error::InfiniteParabolic(_))));
    }

    #[test]
    fn double_coset_reps() {
        let a2 = mat(fixtures::A2);
        assert_eq!(double_cosets(&a2, &[], &[], 10).unwrap().len(), 6);
        let full = double_cosets(&a2, &[0, 1], &[0, 1], 10).unwrap();
        assert_eq!(full.len(), 1);
        assert!(full[0].is_identity());
        // W_s \ S_3 / W_t: orbit count 2, representatives e and s1 s0.
        let st = double_cosets(&a2, &[0], &[1], 10).unwrap();
        let words: Vec<Vec<usize>> = st.into_iter().map(|e| e.word).collect();
        assert_eq!(words, vec![vec![], vec![1, 0]]);
    }

    #[test]
    fn invariants() {
        let a1 = mat(fixtures::A1);
        let r = reynolds_invariants(&a1, &[0], 10).unwrap();
        assert_eq!(r.hilbert, LaurentPoly::from_coeffs(&[1, 0, 0, 0, 1, 0, 0, 0, 1]));
        assert!(r.consistent);
        let all = reynolds_invariants(&a1, &[], 6).unwrap();
        assert_eq!(all.hilbert, LaurentPoly::from_coeffs(&[1, 0, 1, 0, 1, 0, 1]));
        let a2 = mat(fixtures::A2);
        let r = reynolds_invariants(&a2, &[0, 1], 8).unwrap();
        assert_eq!(r.hilbert, LaurentPoly::from_coeffs(&[1, 0, 0, 0, 1, 0, 1, 0, 1]));
        assert!(r.consistent);
        let b2 = mat(fixtures::B2);
        assert!(reynolds_invariants(&b2, &[0, 1], 12).unwrap().consistent);
        let g2 = mat(fixtures::G2);
        assert!(reynolds_invariants(&g2, &[0, 1], 14).unwrap().consistent);
        assert!(matches!(reynolds_invariants(&a2, &[0, 1], 100_000), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn soergel_counts() {
        assert_eq!(soergel_objects(&mat(fixtures::A2)).unwrap().len(), 4);
        assert_eq!(soergel_objects(&mat("")).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn bott_samelson() {
        let a2 = mat(fixtures::A2);
        let bs = bott_samelson_graded_rank(&a2, &[vec![], vec![0], vec![]]).unwrap();
        assert_eq!(bs.unshifted, LaurentPoly::from_coeffs(&[1, 0, 1]));
        assert_eq!(bs.shifted, LaurentPoly::from_coeffs(&[1, 0, 1]).shift(-1));
        assert_eq!(bott_samelson_graded_rank(&a2, &[vec![0]]).unwrap().unshifted, LaurentPoly::one());
        let chain = [vec![], vec![0], vec![], vec![1], vec![]];
        let sq = LaurentPoly::from_coeffs(&[1, 0, 1]);
        assert_eq!(bott_samelson_graded_rank(&a2, &chain).unwrap().unshifted, sq.mul(&sq));
        assert!(matches!(
            bott_samelson_graded_rank(&a2, &[vec![0], vec![1], vec![]]),
            Err(Error::InvalidChain(_))
        ));
        assert!(matches!(bott_samelson_graded_rank(&a2, &[vec![], vec![0]]), Err(Error::InvalidChain(_))));
    }

    #[test]
    fn bott_samelson_tensor_oracle() {
        // R ⊗_{R^s} R ⊗_{R^t} R in A2: truncated dimension count from invariant
        // bases. dim (A ⊗_B C)_k for free B-modules is the coefficient of
        // Hilb(A)/Hilb(B)·Hilb(C); both sides are checked through Hilbert series.
        let a2 = mat(fixtures::A2);
        let cap = 8;
        let hr = reynolds_invariants(&a2, &[], cap).unwrap().hilbert;
        let hs = reynolds_invariants(&a2, &[0], cap).unwrap().hilbert;
        let ht = reynolds_invariants(&a2, &[1], cap).unwrap().hilbert;
        let bs = bott_samelson_graded_rank(&a2, &[vec![], vec![0], vec![], vec![1], vec![]]).unwrap();
        // Hilb(M) = rank · Hilb(R) where rank is over the rightmost R.
        let lhs = bs.unshifted.mul(&hr).truncate(cap as i64);
        // Hilb(R ⊗_{R^s} R ⊗_{R^t} R) · Hilb(R^s) · Hilb(R^t) = Hilb(R)^3.
        let rhs_check = lhs.mul(&hs).mul(&ht).truncate(cap as i64);
        assert_eq!(rhs_check, hr.mul(&hr).mul(&hr).truncate(cap as i64));
    }
}
