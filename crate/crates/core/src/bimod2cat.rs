//! The 2-category of projective bimodules over a bound path algebra.
//!
//! Indecomposable 1-morphisms are `Id` (the regular bimodule `A`) and
//! `F(i,j) = A e_i ⊗ e_j A`. A 1-morphism is an ordered list of these.
//! Composition is `X∘Y = X ⊗_A Y`, so `(f ∘_H g)(x ⊗ y) = f(x) ⊗ g(y)`.
//!
//! Carrier elements are tensors keyed by basis words: `[x]` in `A`, `[x, y]`
//! for `x ⊗ y` in `A e_i ⊗ e_j A`, `[x, c, y]` in `F(i,j) ⊗_A F(k,l)` with the
//! middle factor already multiplied out in `e_j A e_k`.
//!
//! A bimodule map is stored by the images of its generators, which determine
//! it uniquely; that makes equality of 2-morphisms a plain comparison.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::exactlin::{add_entry, axpy, kernel_basis, rat, scaled, Coordinatizer, Mat, Rat, Sparse};
use crate::pathalg::{AlgVec, BoundPathAlgebra, Elem, Vertex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ind {
    Id,
    F(Vertex, Vertex),
}

impl fmt::Display for Ind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ind::Id => write!(f, "1"),
            Ind::F(i, j) => write!(f, "F({i},{j})"),
        }
    }
}

/// A direct sum of indecomposables, kept in order so blocks can be addressed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OneMor(pub Vec<Ind>);

impl OneMor {
    pub fn zero() -> OneMor {
        OneMor(Vec::new())
    }

    pub fn id() -> OneMor {
        OneMor(vec![Ind::Id])
    }

    pub fn f(i: Vertex, j: Vertex) -> OneMor {
        OneMor(vec![Ind::F(i, j)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self, other: &OneMor) -> OneMor {
        OneMor(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn multiplicities(&self) -> BTreeMap<Ind, usize> {
        let mut m = BTreeMap::new();
        for x in &self.0 {
            *m.entry(*x).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for OneMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub type Key = Vec<Elem>;
pub type Tensor = Sparse<Key>;

pub fn mono(key: Key) -> Tensor {
    let mut t = Tensor::new();
    t.insert(key, Rat::one());
    t
}

/// `a·t`, acting on the first factor.
pub fn left_mul(alg: &BoundPathAlgebra, a: &AlgVec, t: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in t {
        for (x, cx) in a {
            for (y, cy) in alg.mul(*x, k[0]) {
                let mut nk = k.clone();
                nk[0] = *y;
                add_entry(&mut out, nk, c * cx * cy);
            }
        }
    }
    out
}

/// `t·b`, acting on the last factor.
pub fn right_mul(alg: &BoundPathAlgebra, t: &Tensor, b: &AlgVec) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in t {
        let last = k.len() - 1;
        for (x, cx) in b {
            for (y, cy) in alg.mul(k[last], *x) {
                let mut nk = k.clone();
                nk[last] = *y;
                add_entry(&mut out, nk, c * cx * cy);
            }
        }
    }
    out
}

/// `l ⊗_A r`: the last factor of `l` is multiplied into the first of `r`.
pub fn tensor_over_a(alg: &BoundPathAlgebra, l: &Tensor, r: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (kl, cl) in l {
        let last = kl[kl.len() - 1];
        for (kr, cr) in r {
            for (m, cm) in alg.mul(last, kr[0]) {
                let mut nk: Key = kl[..kl.len() - 1].to_vec();
                nk.push(*m);
                nk.extend_from_slice(&kr[1..]);
                add_entry(&mut out, nk, cl * cr * cm);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Images {
    /// Image of the generator `e_i ⊗ e_j` of an `F(i,j)` source.
    Free(Tensor),
    /// Images of the `e_v` for an `Id` source: `scalar·e_v + comps[v]`.
    /// The scalar is nonzero only when the target is `Id` too.
    Family { scalar: Rat, comps: BTreeMap<Vertex, Tensor> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElem {
    pub src: Ind,
    pub tgt: Ind,
    pub img: Images,
}

/// Coordinates of a hom element: the generator image, with the scalar of a
/// family stored under the empty key.
pub type Flat = Sparse<Key>;

impl HomElem {
    pub fn zero(src: Ind, tgt: Ind) -> HomElem {
        let img = match src {
            Ind::F(..) => Images::Free(Tensor::new()),
            Ind::Id => Images::Family { scalar: Rat::zero(), comps: BTreeMap::new() },
        };
        HomElem { src, tgt, img }
    }

    pub fn identity(alg: &BoundPathAlgebra, x: Ind) -> HomElem {
        match x {
            Ind::F(i, j) => HomElem { src: x, tgt: x, img: Images::Free(mono(vec![alg.idem(i), alg.idem(j)])) },
            Ind::Id => HomElem { src: x, tgt: x, img: Images::Family { scalar: Rat::one(), comps: BTreeMap::new() } },
        }
    }

    pub fn free(src: Ind, tgt: Ind, t: Tensor) -> HomElem {
        debug_assert!(matches!(src, Ind::F(..)));
        HomElem { src, tgt, img: Images::Free(t) }
    }

    pub fn family(tgt: Ind, scalar: Rat, comps: BTreeMap<Vertex, Tensor>) -> HomElem {
        debug_assert!(scalar.is_zero() || tgt == Ind::Id);
        let comps = comps.into_iter().filter(|(_, t)| !t.is_empty()).collect();
        HomElem { src: Ind::Id, tgt, img: Images::Family { scalar, comps } }
    }

    pub fn is_zero(&self) -> bool {
        match &self.img {
            Images::Free(t) => t.is_empty(),
            Images::Family { scalar, comps } => scalar.is_zero() && comps.is_empty(),
        }
    }

    pub fn flatten(&self) -> Flat {
        match &self.img {
            Images::Free(t) => t.clone(),
            Images::Family { scalar, comps } => {
                let mut out = Flat::new();
                add_entry(&mut out, Vec::new(), scalar.clone());
                for t in comps.values() {
                    for (k, c) in t {
                        out.insert(k.clone(), c.clone());
                    }
                }
                out
            }
        }
    }

    /// Inverse of `flatten`; family components are regrouped by vertex.
    pub fn unflatten(alg: &BoundPathAlgebra, src: Ind, tgt: Ind, v: &Flat) -> HomElem {
        match src {
            Ind::F(..) => HomElem::free(src, tgt, v.clone()),
            Ind::Id => {
                let mut scalar = Rat::zero();
                let mut comps: BTreeMap<Vertex, Tensor> = BTreeMap::new();
                for (k, c) in v {
                    if k.is_empty() {
                        scalar = c.clone();
                    } else {
                        comps.entry(alg.tgt(k[0])).or_default().insert(k.clone(), c.clone());
                    }
                }
                HomElem::family(tgt, scalar, comps)
            }
        }
    }

    pub fn add(&self, other: &HomElem) -> HomElem {
        self.lin(&Rat::one(), other)
    }

    /// `self + c·other`.
    pub fn lin(&self, c: &Rat, other: &HomElem) -> HomElem {
        assert_eq!((self.src, self.tgt), (other.src, other.tgt), "hom element shape mismatch");
        match (&self.img, &other.img) {
            (Images::Free(a), Images::Free(b)) => {
                let mut t = a.clone();
                axpy(&mut t, c, b);
                HomElem::free(self.src, self.tgt, t)
            }
            (Images::Family { scalar: s1, comps: c1 }, Images::Family { scalar: s2, comps: c2 }) => {
                let mut comps = c1.clone();
                for (v, t) in c2 {
                    axpy(comps.entry(*v).or_default(), c, t);
                }
                HomElem::family(self.tgt, s1 + c * s2, comps)
            }
            _ => unreachable!("source kind fixes the image kind"),
        }
    }

    pub fn scale(&self, c: &Rat) -> HomElem {
        HomElem::zero(self.src, self.tgt).lin(c, self)
    }

    /// Value at `e_v` of an `Id`-source map, as a carrier element of the target.
    pub fn at(&self, alg: &BoundPathAlgebra, v: Vertex) -> Tensor {
        let Images::Family { scalar, comps } = &self.img else {
            panic!("`at` needs an Id source");
        };
        let mut t = comps.get(&v).cloned().unwrap_or_default();
        if !scalar.is_zero() {
            add_entry(&mut t, vec![alg.idem(v)], scalar.clone());
        }
        t
    }

    /// Applies the map to a carrier element of its source.
    pub fn eval(&self, alg: &BoundPathAlgebra, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        match &self.img {
            Images::Free(img) => {
                for (k, c) in t {
                    let (p, q) = (k[0], k[1]);
                    let r = left_mul(alg, &BoundPathAlgebra::unit_vec(p), &right_mul(alg, img, &BoundPathAlgebra::unit_vec(q)));
                    axpy(&mut out, c, &r);
                }
            }
            Images::Family { .. } => {
                for (k, c) in t {
                    let p = k[0];
                    let r = right_mul(alg, &self.at(alg, alg.tgt(p)), &BoundPathAlgebra::unit_vec(p));
                    axpy(&mut out, c, &r);
                }
            }
        }
        out
    }
}

/// `g ∘_V f` for indecomposable pieces: `f: X → Y`, `g: Y → Z`.
pub fn vcomp_elem(alg: &BoundPathAlgebra, g: &HomElem, f: &HomElem) -> HomElem {
    assert_eq!(f.tgt, g.src, "vertical composition shape mismatch");
    match &f.img {
        Images::Free(img) => HomElem::free(f.src, g.tgt, g.eval(alg, img)),
        Images::Family { scalar: sf, comps: cf } => {
            let (sg, mut comps) = match &g.img {
                Images::Family { scalar, comps } => (scalar.clone(), comps.clone()),
                Images::Free(_) => (Rat::zero(), BTreeMap::new()),
            };
            // h(e_v) = s_f·g(e_v) + g(comp_f[v]); the scalar s_f·s_g is kept apart.
            for t in comps.values_mut() {
                *t = scaled(sf, t);
            }
            for (v, t) in cf {
                let r = g.eval(alg, t);
                axpy(comps.entry(*v).or_default(), &Rat::one(), &r);
            }
            HomElem::family(g.tgt, sf * sg, comps)
        }
    }
}

/// One summand of a composite `m∘n`, remembering where it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub ind: Ind,
    pub left: usize,
    pub right: usize,
    /// Basis element of `e_j A e_k` for `F(i,j)∘F(k,l)`.
    pub mid: Option<Elem>,
}

pub fn decompose(alg: &BoundPathAlgebra, x: Ind, y: Ind) -> Vec<(Ind, Option<Elem>)> {
    match (x, y) {
        (Ind::Id, Ind::Id) => vec![(Ind::Id, None)],
        (Ind::Id, f) | (f, Ind::Id) => vec![(f, None)],
        (Ind::F(i, j), Ind::F(k, l)) => alg.block(j, k).iter().map(|&c| (Ind::F(i, l), Some(c))).collect(),
    }
}

/// `m∘n` as an ordered list of summands: for each `a` in `m`, each `b` in `n`.
pub fn compose1(alg: &BoundPathAlgebra, m: &OneMor, n: &OneMor) -> (OneMor, Vec<Summand>) {
    let mut inds = Vec::new();
    let mut prov = Vec::new();
    for (li, &a) in m.0.iter().enumerate() {
        for (ri, &b) in n.0.iter().enumerate() {
            for (ind, mid) in decompose(alg, a, b) {
                inds.push(ind);
                prov.push(Summand { ind, left: li, right: ri, mid });
            }
        }
    }
    (OneMor(inds), prov)
}

/// Restricts a carrier element of `Y ⊗_A Y'` to one summand.
fn project(t: &Tensor, y: Ind, y2: Ind, mid: Option<Elem>) -> Tensor {
    match (y, y2, mid) {
        (Ind::F(..), Ind::F(..), Some(c)) => t
            .iter()
            .filter(|(k, _)| k[1] == c)
            .map(|(k, v)| (vec![k[0], k[2]], v.clone()))
            .collect(),
        _ => t.clone(),
    }
}

/// `f ∘_H g` restricted to one source summand of `X∘X'` and one target summand of `Y∘Y'`.
pub fn hcomp_elem(
    alg: &BoundPathAlgebra,
    f: &HomElem,
    g: &HomElem,
    src: (Ind, Option<Elem>),
    tgt: (Ind, Option<Elem>),
) -> HomElem {
    let proj = |t: &Tensor| project(t, f.tgt, g.tgt, tgt.1);
    match (f.src, g.src) {
        (Ind::Id, Ind::Id) => {
            // Off both component supports the value is the scalar product alone.
            let verts: BTreeSet<Vertex> = f.comps_support().union(&g.comps_support()).copied().collect();
            let (sf, sg) = (f.scalar(), g.scalar());
            let both_id = f.tgt == Ind::Id && g.tgt == Ind::Id;
            let mut comps = BTreeMap::new();
            for v in verts {
                let mut t = proj(&tensor_over_a(alg, &f.at(alg, v), &g.at(alg, v)));
                if both_id {
                    add_entry(&mut t, vec![alg.idem(v)], -(&sf * &sg));
                }
                comps.insert(v, t);
            }
            let scalar = if both_id { sf * sg } else { Rat::zero() };
            HomElem::family(tgt.0, scalar, comps)
        }
        (Ind::Id, Ind::F(k, _)) => {
            let Images::Free(gi) = &g.img else { unreachable!() };
            HomElem::free(src.0, tgt.0, proj(&tensor_over_a(alg, &f.at(alg, k), gi)))
        }
        (Ind::F(_, j), Ind::Id) => {
            let Images::Free(fi) = &f.img else { unreachable!() };
            HomElem::free(src.0, tgt.0, proj(&tensor_over_a(alg, fi, &g.at(alg, j))))
        }
        (Ind::F(..), Ind::F(..)) => {
            let (Images::Free(fi), Images::Free(gi)) = (&f.img, &g.img) else { unreachable!() };
            let c = src.1.expect("F∘F summand carries a middle element");
            let left = right_mul(alg, fi, &BoundPathAlgebra::unit_vec(c));
            HomElem::free(src.0, tgt.0, proj(&tensor_over_a(alg, &left, gi)))
        }
    }
}

impl HomElem {
    fn scalar(&self) -> Rat {
        match &self.img {
            Images::Family { scalar, .. } => scalar.clone(),
            Images::Free(_) => Rat::zero(),
        }
    }

    fn comps_support(&self) -> BTreeSet<Vertex> {
        match &self.img {
            Images::Family { comps, .. } => comps.keys().copied().collect(),
            Images::Free(_) => BTreeSet::new(),
        }
    }
}

/// Block matrix of bimodule maps; `blocks[r][c]` maps `src.0[c]` to `tgt.0[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoMor {
    pub src: OneMor,
    pub tgt: OneMor,
    pub blocks: Vec<Vec<HomElem>>,
}

impl TwoMor {
    pub fn zero(src: &OneMor, tgt: &OneMor) -> TwoMor {
        let blocks = tgt.0.iter().map(|&y| src.0.iter().map(|&x| HomElem::zero(x, y)).collect()).collect();
        TwoMor { src: src.clone(), tgt: tgt.clone(), blocks }
    }

    pub fn identity(alg: &BoundPathAlgebra, m: &OneMor) -> TwoMor {
        let mut t = TwoMor::zero(m, m);
        for (i, &x) in m.0.iter().enumerate() {
            t.blocks[i][i] = HomElem::identity(alg, x);
        }
        t
    }

    /// The 1×1 two-morphism given by a single hom element.
    pub fn single(h: HomElem) -> TwoMor {
        TwoMor { src: OneMor(vec![h.src]), tgt: OneMor(vec![h.tgt]), blocks: vec![vec![h]] }
    }

    pub fn with_block(src: &OneMor, tgt: &OneMor, r: usize, c: usize, h: HomElem) -> TwoMor {
        let mut t = TwoMor::zero(src, tgt);
        assert_eq!((h.src, h.tgt), (src.0[c], tgt.0[r]), "block shape mismatch");
        t.blocks[r][c] = h;
        t
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(HomElem::is_zero)
    }

    pub fn lin(&self, c: &Rat, other: &TwoMor) -> TwoMor {
        assert_eq!((&self.src, &self.tgt), (&other.src, &other.tgt), "2-morphism shape mismatch");
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| a.lin(c, b)).collect())
            .collect();
        TwoMor { src: self.src.clone(), tgt: self.tgt.clone(), blocks }
    }

    pub fn add(&self, other: &TwoMor) -> TwoMor {
        self.lin(&Rat::one(), other)
    }

    pub fn sub(&self, other: &TwoMor) -> TwoMor {
        self.lin(&rat(-1), other)
    }

    pub fn scale(&self, c: &Rat) -> TwoMor {
        TwoMor::zero(&self.src, &self.tgt).lin(c, self)
    }
}

/// `g ∘_V f`.
pub fn vcompose(alg: &BoundPathAlgebra, g: &TwoMor, f: &TwoMor) -> TwoMor {
    assert_eq!(f.tgt, g.src, "vertical composition shape mismatch");
    let mut out = TwoMor::zero(&f.src, &g.tgt);
    for (r, row) in out.blocks.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            for k in 0..f.tgt.len() {
                let (gk, fk) = (&g.blocks[r][k], &f.blocks[k][c]);
                if !gk.is_zero() && !fk.is_zero() {
                    *cell = cell.add(&vcomp_elem(alg, gk, fk));
                }
            }
        }
    }
    out
}

/// `f ∘_H g : X∘X' → Y∘Y'` for `f: X → Y`, `g: X' → Y'`.
pub fn hcompose(alg: &BoundPathAlgebra, f: &TwoMor, g: &TwoMor) -> TwoMor {
    let (src, sp) = compose1(alg, &f.src, &g.src);
    let (tgt, tp) = compose1(alg, &f.tgt, &g.tgt);
    let mut out = TwoMor::zero(&src, &tgt);
    for (c, s) in sp.iter().enumerate() {
        for (r, t) in tp.iter().enumerate() {
            let (fe, ge) = (&f.blocks[t.left][s.left], &g.blocks[t.right][s.right]);
            if fe.is_zero() || ge.is_zero() {
                continue;
            }
            out.blocks[r][c] = hcomp_elem(alg, fe, ge, (s.ind, s.mid), (t.ind, t.mid));
        }
    }
    out
}

/// Junction elements of a summand of an iterated composite, left to right.
fn junction_key(prov: &[Summand], inner: &[Summand], inner_is_left: bool, idx: usize) -> (Vec<usize>, Vec<Elem>) {
    let s = prov[idx];
    let (inner_idx, outer_idx) = if inner_is_left { (s.left, s.right) } else { (s.right, s.left) };
    let p = inner[inner_idx];
    let mut mids: Vec<Elem> = Vec::new();
    let (a, b) = (p.mid, s.mid);
    let positions = if inner_is_left {
        mids.extend(a);
        mids.extend(b);
        vec![p.left, p.right, outer_idx]
    } else {
        mids.extend(b);
        mids.extend(a);
        vec![outer_idx, p.left, p.right]
    };
    (positions, mids)
}

/// The structure isomorphism `(L∘M)∘N → L∘(M∘N)`; a permutation with identity blocks.
pub fn associator(alg: &BoundPathAlgebra, l: &OneMor, m: &OneMor, n: &OneMor) -> TwoMor {
    let (lm, lm_p) = compose1(alg, l, m);
    let (left, left_p) = compose1(alg, &lm, n);
    let (mn, mn_p) = compose1(alg, m, n);
    let (right, right_p) = compose1(alg, l, &mn);
    let mut where_right: HashMap<(Vec<usize>, Vec<Elem>), usize> = HashMap::new();
    for r in 0..right.len() {
        where_right.insert(junction_key(&right_p, &mn_p, false, r), r);
    }
    let mut out = TwoMor::zero(&left, &right);
    for c in 0..left.len() {
        let r = where_right[&junction_key(&left_p, &lm_p, true, c)];
        out.blocks[r][c] = HomElem::identity(alg, left.0[c]);
    }
    out
}

/// Inverse of [`associator`]: the transpose permutation.
pub fn associator_inv(alg: &BoundPathAlgebra, l: &OneMor, m: &OneMor, n: &OneMor) -> TwoMor {
    let a = associator(alg, l, m, n);
    let mut out = TwoMor::zero(&a.tgt, &a.src);
    for (r, row) in a.blocks.iter().enumerate() {
        for (c, h) in row.iter().enumerate() {
            if !h.is_zero() {
                out.blocks[c][r] = HomElem::identity(alg, a.src.0[c]);
            }
        }
    }
    out
}

/// A hom space between indecomposables with a coordinate system.
#[derive(Debug)]
pub struct HomSpace {
    pub src: Ind,
    pub tgt: Ind,
    pub basis: Vec<HomElem>,
    pub labels: Vec<String>,
    coord: Coordinatizer<Key>,
}

impl HomSpace {
    fn new(alg: &BoundPathAlgebra, src: Ind, tgt: Ind, basis: Vec<HomElem>, labels: Vec<String>) -> HomSpace {
        let _ = alg;
        let coord = Coordinatizer::new(basis.iter().map(HomElem::flatten).collect());
        HomSpace { src, tgt, basis, labels, coord }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `None` when `h` is not in this space.
    pub fn coords(&self, h: &HomElem) -> Option<Vec<Rat>> {
        self.coord.coords(&h.flatten())
    }

    pub fn combine(&self, alg: &BoundPathAlgebra, c: &[Rat]) -> HomElem {
        HomElem::unflatten(alg, self.src, self.tgt, &self.coord.combine(c))
    }
}

/// The Z subalgebra of `End(Id)` generated by the identity and all maps
/// factoring through some `F(i,j)`.
#[derive(Clone, Debug)]
pub struct ZAlgebra {
    /// `basis[0]` is the identity.
    pub basis: Vec<HomElem>,
    /// `mult[(x, y)]` are the coordinates of `basis[x] ∘ basis[y]`.
    pub mult: BTreeMap<(usize, usize), Vec<Rat>>,
    pub local: bool,
    pub in_radical: bool,
    pub nilpotent: bool,
    pub products_vanish: bool,
}

/// An algebra together with cached hom spaces.
pub struct Workbench {
    pub alg: Arc<BoundPathAlgebra>,
    homs: Mutex<HashMap<(Ind, Ind), Arc<HomSpace>>>,
    z: OnceLock<Arc<ZAlgebra>>,
}

impl Workbench {
    pub fn new(alg: BoundPathAlgebra) -> Workbench {
        Workbench { alg: Arc::new(alg), homs: Mutex::new(HashMap::new()), z: OnceLock::new() }
    }

    pub fn check_ind(&self, x: Ind) -> Result<()> {
        if let Ind::F(i, j) = x {
            for v in [i, j] {
                if !self.alg.is_interior(v) {
                    return Err(Error::MarginViolation(format!("{x} uses vertex {v}")));
                }
            }
        }
        Ok(())
    }

    pub fn check_mor(&self, m: &OneMor) -> Result<()> {
        m.0.iter().try_for_each(|&x| self.check_ind(x))
    }

    /// Exact basis of bimodule maps `x → y`.
    pub fn hom(&self, x: Ind, y: Ind) -> Result<Arc<HomSpace>> {
        self.check_ind(x)?;
        self.check_ind(y)?;
        if let Some(h) = self.homs.lock().unwrap().get(&(x, y)) {
            return Ok(h.clone());
        }
        let space = Arc::new(match (x, y) {
            (Ind::F(..), _) => self.hom_from_f(x, y),
            (Ind::Id, Ind::F(i, j)) => self.hom_id_to_f(i, j),
            (Ind::Id, Ind::Id) => {
                let z = self.z_algebra()?;
                let labels = (0..z.basis.len()).map(|k| if k == 0 { "id".into() } else { format!("z{k}") }).collect();
                HomSpace::new(&self.alg, x, y, z.basis.clone(), labels)
            }
        });
        self.homs.lock().unwrap().insert((x, y), space.clone());
        Ok(space)
    }

    pub fn hom_dim(&self, x: Ind, y: Ind) -> Result<usize> {
        Ok(self.hom(x, y)?.dim())
    }

    /// Total dimension of `Hom(m, n)` over all blocks.
    pub fn hom_dim_mor(&self, m: &OneMor, n: &OneMor) -> Result<usize> {
        let mut d = 0;
        for &x in &m.0 {
            for &y in &n.0 {
                d += self.hom_dim(x, y)?;
            }
        }
        Ok(d)
    }

    /// Basis of `Hom(m, n)`: one block basis element at a time, row-major over blocks.
    pub fn hom_basis_mor(&self, m: &OneMor, n: &OneMor) -> Result<Vec<TwoMor>> {
        let mut out = Vec::new();
        for (r, &y) in n.0.iter().enumerate() {
            for (c, &x) in m.0.iter().enumerate() {
                for h in &self.hom(x, y)?.basis {
                    out.push(TwoMor::with_block(m, n, r, c, h.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Coordinates in the basis of [`Workbench::hom_basis_mor`].
    pub fn coords_mor(&self, t: &TwoMor) -> Result<Option<Vec<Rat>>> {
        let mut out = Vec::new();
        for (r, &y) in t.tgt.0.iter().enumerate() {
            for (c, &x) in t.src.0.iter().enumerate() {
                match self.hom(x, y)?.coords(&t.blocks[r][c]) {
                    Some(v) => out.extend(v),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(out))
    }

    pub fn combine_mor(&self, m: &OneMor, n: &OneMor, c: &[Rat]) -> Result<TwoMor> {
        let basis = self.hom_basis_mor(m, n)?;
        assert_eq!(basis.len(), c.len(), "coordinate length mismatch");
        let mut out = TwoMor::zero(m, n);
        for (x, b) in c.iter().zip(&basis) {
            if !x.is_zero() {
                out = out.lin(x, b);
            }
        }
        Ok(out)
    }

    fn hom_from_f(&self, x: Ind, y: Ind) -> HomSpace {
        let a = &self.alg;
        let Ind::F(i, j) = x else { unreachable!() };
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        match y {
            Ind::F(m, n) => {
                for &p in a.block(i, m) {
                    for &q in a.block(n, j) {
                        basis.push(HomElem::free(x, y, mono(vec![p, q])));
                        labels.push(format!("phi({},{})", a.name(p), a.name(q)));
                    }
                }
            }
            Ind::Id => {
                for &p in a.block(i, j) {
                    basis.push(HomElem::free(x, y, mono(vec![p])));
                    labels.push(format!("phi({})", a.name(p)));
                }
            }
        }
        HomSpace::new(a, x, y, basis, labels)
    }

    /// Solves `u·f(e_k) = f(e_l)·u` for every arrow `u: k → l`, with
    /// `f(e_k) ∈ e_k A e_i ⊗ e_j A e_k`.
    fn hom_id_to_f(&self, i: Vertex, j: Vertex) -> HomSpace {
        let a = &self.alg;
        let mut unknowns: Vec<Key> = Vec::new();
        for k in a.quiver.vertices() {
            for &x in a.block(k, i) {
                for &y in a.block(j, k) {
                    unknowns.push(vec![x, y]);
                }
            }
        }
        // one row per (arrow, output key)
        let mut rows: BTreeMap<(usize, Key), Vec<Rat>> = BTreeMap::new();
        for (arrow, ar) in a.arrows.iter().enumerate() {
            let u = a.arrow_elem(arrow);
            let (k, l) = (ar.src, ar.tgt);
            for (col, key) in unknowns.iter().enumerate() {
                let kv = a.tgt(key[0]);
                let t = mono(key.clone());
                let mut contrib = Tensor::new();
                if kv == k {
                    axpy(&mut contrib, &Rat::one(), &left_mul(a, &u, &t));
                }
                if kv == l {
                    axpy(&mut contrib, &rat(-1), &right_mul(a, &t, &u));
                }
                for (out, c) in contrib {
                    rows.entry((arrow, out)).or_insert_with(|| vec![Rat::zero(); unknowns.len()])[col] += c;
                }
            }
        }
        let m = Mat::from_rows(rows.into_values().collect(), unknowns.len());
        let y = Ind::F(i, j);
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for (n, v) in kernel_basis(&m).into_iter().enumerate() {
            let flat: Flat = unknowns.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c)).collect();
            basis.push(HomElem::unflatten(a, Ind::Id, y, &flat));
            labels.push(format!("sigma{n}"));
        }
        HomSpace::new(a, Ind::Id, y, basis, labels)
    }

    /// Z spanned by the identity and every `τ∘σ` with `σ: Id → F(i,j)`,
    /// `τ: F(i,j) → Id` over interior `(i,j)`, closed under composition.
    pub fn z_algebra(&self) -> Result<Arc<ZAlgebra>> {
        if let Some(z) = self.z.get() {
            return Ok(z.clone());
        }
        let a = &self.alg;
        let inner = self.alg.interior_vertices();
        let mut gens: Vec<HomElem> = Vec::new();
        let mut span = crate::exactlin::Subspace::zero(0);
        let mut keys: Vec<Key> = Vec::new();
        let mut key_index: HashMap<Key, usize> = HashMap::new();
        let mut pending: Vec<HomElem> = Vec::new();
        for &i in &inner {
            for &j in &inner {
                let x = Ind::F(i, j);
                let sig = self.hom(Ind::Id, x)?;
                let tau = self.hom(x, Ind::Id)?;
                for s in &sig.basis {
                    for t in &tau.basis {
                        pending.push(vcomp_elem(a, t, s));
                    }
                }
            }
        }
        // Closure under products; generator products vanish on the corpus, but check.
        let mut round = 0;
        while let Some(h) = pending.pop() {
            if h.is_zero() {
                continue;
            }
            let flat = h.flatten();
            for k in flat.keys() {
                if !key_index.contains_key(k) {
                    key_index.insert(k.clone(), keys.len());
                    keys.push(k.clone());
                }
            }
            let dense_of = |f: &Flat, n: usize, key_index: &HashMap<Key, usize>| {
                let mut d = vec![Rat::zero(); n];
                for (k, c) in f {
                    d[key_index[k]] = c.clone();
                }
                d
            };
            // re-embed the span into the grown key set
            let old: Vec<Vec<Rat>> = span.basis().to_vec();
            let n = keys.len();
            let mut grown = crate::exactlin::Subspace::zero(n);
            for mut r in old {
                r.resize(n, Rat::zero());
                grown.insert(&r);
            }
            span = grown;
            if span.insert(&dense_of(&flat, n, &key_index)) {
                for g in &gens {
                    pending.push(vcomp_elem(a, g, &h));
                    pending.push(vcomp_elem(a, &h, g));
                }
                pending.push(vcomp_elem(a, &h, &h));
                gens.push(h);
            }
            round += 1;
            if round > 100_000 {
                return Err(Error::ResourceLimit("Z closure did not terminate".into()));
            }
        }
        let mut basis = vec![HomElem::identity(a, Ind::Id)];
        basis.extend(gens.iter().cloned());
        let coord = Coordinatizer::new(basis.iter().map(HomElem::flatten).collect());
        let mut mult = BTreeMap::new();
        let mut products_vanish = true;
        for x in 0..basis.len() {
            for y in 0..basis.len() {
                let p = vcomp_elem(a, &basis[x], &basis[y]);
                let c = coord
                    .coords(&p.flatten())
                    .ok_or_else(|| Error::ConstructionBug("Z not closed under composition".into()))?;
                if x > 0 && y > 0 && !p.is_zero() {
                    products_vanish = false;
                }
                mult.insert((x, y), c);
            }
        }
        let rad = a.radical_power(1);
        let rad_space = crate::exactlin::Subspace::span(a.dim(), &rad.iter().map(|v| a.dense(v)).collect::<Vec<_>>());
        let in_radical = gens.iter().all(|g| match &g.img {
            Images::Family { scalar, comps } => {
                scalar.is_zero()
                    && comps.values().all(|t| {
                        let v: AlgVec = t.iter().map(|(k, c)| (k[0], c.clone())).collect();
                        rad_space.contains(&a.dense(&v))
                    })
            }
            Images::Free(_) => false,
        });
        let n = a.nilpotency;
        let nilpotent = gens.iter().all(|g| {
            let mut p = g.clone();
            for _ in 1..n {
                p = vcomp_elem(a, g, &p);
            }
            p.is_zero()
        });
        let z = Arc::new(ZAlgebra { local: in_radical && nilpotent, in_radical, nilpotent, products_vanish, basis, mult });
        if !z.local {
            return Err(Error::LocalityFailed("a non-identity element of Z is not nilpotent".into()));
        }
        Ok(self.z.get_or_init(|| z).clone())
    }

    /// Dimension table for the internal adjunction of `F(i,j)` with `F(σ(j), i)`.
    pub fn adjoint_check(&self, i: Vertex, j: Vertex, objects: &[OneMor]) -> Result<AdjointReport> {
        let nak = self.alg.nakayama();
        if !nak.self_injective {
            return Err(Error::Unsupported("algebra is not self-injective".into()));
        }
        let s = *nak.sigma.get(&j).ok_or_else(|| Error::MarginViolation(format!("sigma({j}) unknown")))?;
        let f = OneMor::f(i, j);
        let fr = OneMor::f(s, i);
        self.check_mor(&f)?;
        self.check_mor(&fr)?;
        let mut rows = Vec::new();
        for m in objects {
            for n in objects {
                let (fm, _) = compose1(&self.alg, &f, m);
                let (frn, _) = compose1(&self.alg, &fr, n);
                let lhs = self.hom_dim_mor(&fm, n)?;
                let rhs = self.hom_dim_mor(m, &frn)?;
                rows.push(AdjointRow { m: m.clone(), n: n.clone(), lhs, rhs });
            }
        }
        Ok(AdjointReport { i, j, sigma_j: s, rows })
    }

    /// Checks the split maps of `F(i,j)∘F(k,l) ≅ F(i,l)^{⊕ dim e_jAe_k}` on carriers.
    pub fn verify_decomposition(&self, i: Vertex, j: Vertex, k: Vertex, l: Vertex) -> bool {
        let a = &self.alg;
        let mids = a.block(j, k);
        let (ei, el) = (a.idem(i), a.idem(l));
        let iota = |c: Elem| mono(vec![ei, c, el]);
        let pi = |t: &Tensor, c: Elem| project(t, Ind::F(i, j), Ind::F(k, l), Some(c));
        // π_c ι_d = δ_cd on the generator
        for &c in mids {
            for &d in mids {
                let got = pi(&iota(d), c);
                let want = if c == d { mono(vec![ei, el]) } else { Tensor::new() };
                if got != want {
                    return false;
                }
            }
        }
        // Σ ι_c π_c = id on a spanning set of the carrier; ι, π commute with the actions
        for &x in a.from_vertex(i) {
            for &y in a.into_vertex(l) {
                for &c in mids {
                    let elt = tensor_over_a(a, &mono(vec![x, c]), &mono(vec![a.idem(k), y]));
                    let mut back = Tensor::new();
                    for &d in mids {
                        let p = pi(&elt, d);
                        for (key, coef) in &p {
                            let lifted = left_mul(a, &BoundPathAlgebra::unit_vec(key[0]), &right_mul(a, &iota(d), &BoundPathAlgebra::unit_vec(key[1])));
                            axpy(&mut back, coef, &lifted);
                        }
                    }
                    if back != elt {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every non-identity basis element of `End(F(i,j))` is nilpotent and the
    /// non-identity span is closed under composition, so `End` is local.
    pub fn end_is_local(&self, x: Ind) -> Result<bool> {
        let h = self.hom(x, x)?;
        let a = &self.alg;
        let id = HomElem::identity(a, x);
        let idc = h.coords(&id).ok_or_else(|| Error::ConstructionBug("identity outside End".into()))?;
        let id_pos = idc.iter().position(|c| !c.is_zero()).unwrap();
        for (n, b) in h.basis.iter().enumerate() {
            if n == id_pos {
                continue;
            }
            let mut p = b.clone();
            for _ in 0..=a.nilpotency {
                p = vcomp_elem(a, b, &p);
            }
            if !p.is_zero() {
                return Ok(false);
            }
            for (m, c) in h.basis.iter().enumerate() {
                if m == id_pos {
                    continue;
                }
                let prod = h.coords(&vcomp_elem(a, b, c)).unwrap();
                if !prod[id_pos].is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointRow {
    pub m: OneMor,
    pub n: OneMor,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport {
    pub i: Vertex,
    pub j: Vertex,
    pub sigma_j: Vertex,
    pub rows: Vec<AdjointRow>,
}

impl AdjointReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.lhs == r.rhs)
    }
}

/// The objects `Id` and `F(k,l)` for `k, l` in the given range.
pub fn small_objects(lo: Vertex, hi: Vertex) -> Vec<OneMor> {
    let mut v = vec![OneMor::id()];
    for k in lo..=hi {
        for l in lo..=hi {
            v.push(OneMor::f(k, l));
        }
    }
    v
}
