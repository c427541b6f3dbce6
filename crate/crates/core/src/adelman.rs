//! The fan Adelman abelianisation of a presented additive category.
//!
//! Base morphisms are coordinate vectors in fixed hom bases, so every question
//! about the abelianisation (homotopy, factorisation, universal properties)
//! becomes a finite linear system. Triples are required to commute with the
//! legs: `r∘α_i = Σ_j α'_j∘s_ij` and `β'_n∘r = Σ_m t_mn∘β_m`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bimod2cat::{compose1, hcompose, vcomp_elem, HomElem, Ind, OneMor, TwoMor, Workbench};
use crate::exactlin::{kernel_basis, rat, solve_linear, Mat, Rat, Subspace};
use crate::{Error, Result};

/// `table[g][f]` holds the coordinates of `g∘f` for basis elements `f: x → y`, `g: y → z`.
pub type Table = Vec<Vec<Vec<Rat>>>;

type TableFn = Box<dyn Fn(usize, usize, usize) -> Table + Send + Sync>;

/// Finitely many indecomposables with hom bases and composition constants.
/// Objects of the additive closure are lists of indecomposables.
pub struct PresentedCat {
    pub names: Vec<String>,
    dims: Vec<Vec<usize>>,
    ident: Vec<Vec<Rat>>,
    tables: Mutex<HashMap<(usize, usize, usize), Arc<Table>>>,
    make: TableFn,
}

impl fmt::Debug for PresentedCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedCat").field("names", &self.names).field("dims", &self.dims).finish()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub Vec<usize>);

impl Obj {
    pub fn zero() -> Obj {
        Obj(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(parts: &[Obj]) -> Obj {
        Obj(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }
}

/// `blocks[r][c]` are coordinates in `Hom(src[c], tgt[r])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mor {
    pub src: Obj,
    pub tgt: Obj,
    pub blocks: Vec<Vec<Vec<Rat>>>,
}

impl PresentedCat {
    /// `make(x, y, z)` must return the table for `Hom(y,z) × Hom(x,y) → Hom(x,z)`.
    pub fn new(names: Vec<String>, dims: Vec<Vec<usize>>, ident: Vec<Vec<Rat>>, make: TableFn) -> PresentedCat {
        PresentedCat { names, dims, ident, tables: Mutex::new(HashMap::new()), make }
    }

    /// Finite-dimensional vector spaces: one indecomposable with `End = k`.
    pub fn vector_spaces() -> PresentedCat {
        PresentedCat::new(vec!["k".into()], vec![vec![1]], vec![vec![Rat::one()]], Box::new(|_, _, _| vec![vec![vec![Rat::one()]]]))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.dims[x][y]
    }

    pub fn hom_dim(&self, a: &Obj, b: &Obj) -> usize {
        a.0.iter().map(|&x| b.0.iter().map(|&y| self.dims[x][y]).sum::<usize>()).sum()
    }

    fn table(&self, x: usize, y: usize, z: usize) -> Arc<Table> {
        if let Some(t) = self.tables.lock().unwrap().get(&(x, y, z)) {
            return t.clone();
        }
        let t = Arc::new((self.make)(x, y, z));
        self.tables.lock().unwrap().insert((x, y, z), t.clone());
        t
    }

    pub fn zero(&self, a: &Obj, b: &Obj) -> Mor {
        let blocks = b.0.iter().map(|&y| a.0.iter().map(|&x| vec![Rat::zero(); self.dims[x][y]]).collect()).collect();
        Mor { src: a.clone(), tgt: b.clone(), blocks }
    }

    pub fn identity(&self, a: &Obj) -> Mor {
        let mut m = self.zero(a, a);
        for (i, &x) in a.0.iter().enumerate() {
            m.blocks[i][i] = self.ident[x].clone();
        }
        m
    }

    pub fn is_zero(&self, m: &Mor) -> bool {
        m.blocks.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// `g∘f`.
    pub fn compose(&self, g: &Mor, f: &Mor) -> Mor {
        assert_eq!(f.tgt, g.src, "composition shape mismatch");
        let mut out = self.zero(&f.src, &g.tgt);
        for (r, &z) in g.tgt.0.iter().enumerate() {
            for (c, &x) in f.src.0.iter().enumerate() {
                for (k, &y) in f.tgt.0.iter().enumerate() {
                    let (gv, fv) = (&g.blocks[r][k], &f.blocks[k][c]);
                    if gv.iter().all(Zero::is_zero) || fv.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let t = self.table(x, y, z);
                    let acc = &mut out.blocks[r][c];
                    for (a, ga) in gv.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        for (b, fb) in fv.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                            let w = ga * fb;
                            for (o, v) in acc.iter_mut().zip(&t[a][b]) {
                                if !v.is_zero() {
                                    *o += &w * v;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `m + c·n`.
    pub fn lin(&self, m: &Mor, c: &Rat, n: &Mor) -> Mor {
        assert_eq!((&m.src, &m.tgt), (&n.src, &n.tgt), "sum shape mismatch");
        let mut out = m.clone();
        for (ro, rn) in out.blocks.iter_mut().zip(&n.blocks) {
            for (bo, bn) in ro.iter_mut().zip(rn) {
                for (o, v) in bo.iter_mut().zip(bn) {
                    *o += c * v;
                }
            }
        }
        out
    }

    pub fn add(&self, m: &Mor, n: &Mor) -> Mor {
        self.lin(m, &Rat::one(), n)
    }

    pub fn neg(&self, m: &Mor) -> Mor {
        self.lin(&self.zero(&m.src, &m.tgt), &rat(-1), m)
    }

    pub fn to_vec(&self, m: &Mor) -> Vec<Rat> {
        m.blocks.iter().flatten().flatten().cloned().collect()
    }

    pub fn from_vec(&self, a: &Obj, b: &Obj, v: &[Rat]) -> Mor {
        let mut m = self.zero(a, b);
        let mut it = v.iter();
        for e in m.blocks.iter_mut().flatten().flatten() {
            *e = it.next().expect("coordinate vector too short").clone();
        }
        assert!(it.next().is_none(), "coordinate vector too long");
        m
    }

    pub fn basis(&self, a: &Obj, b: &Obj) -> Vec<Mor> {
        let n = self.hom_dim(a, b);
        (0..n)
            .map(|k| {
                let mut v = vec![Rat::zero(); n];
                v[k] = Rat::one();
                self.from_vec(a, b, &v)
            })
            .collect()
    }

    /// Block matrix from `entries[r][c]: src_parts[c] → tgt_parts[r]`.
    pub fn grid(&self, src_parts: &[Obj], tgt_parts: &[Obj], entries: &[Vec<Mor>]) -> Mor {
        let (a, b) = (Obj::concat(src_parts), Obj::concat(tgt_parts));
        let mut out = self.zero(&a, &b);
        let mut r0 = 0;
        for (r, tp) in tgt_parts.iter().enumerate() {
            let mut c0 = 0;
            for (c, sp) in src_parts.iter().enumerate() {
                let e = &entries[r][c];
                assert_eq!((&e.src, &e.tgt), (sp, tp), "grid entry shape mismatch");
                for (dr, row) in e.blocks.iter().enumerate() {
                    for (dc, v) in row.iter().enumerate() {
                        out.blocks[r0 + dr][c0 + dc] = v.clone();
                    }
                }
                c0 += sp.0.len();
            }
            r0 += tp.0.len();
        }
        out
    }

    /// Splits the target of `m` along `parts`.
    pub fn split_rows(&self, m: &Mor, parts: &[Obj]) -> Vec<Mor> {
        let mut out = Vec::new();
        let mut r0 = 0;
        for p in parts {
            let blocks = m.blocks[r0..r0 + p.0.len()].to_vec();
            out.push(Mor { src: m.src.clone(), tgt: p.clone(), blocks });
            r0 += p.0.len();
        }
        assert_eq!(r0, m.tgt.0.len(), "row split does not cover the target");
        out
    }

    /// Splits the source of `m` along `parts`.
    pub fn split_cols(&self, m: &Mor, parts: &[Obj]) -> Vec<Mor> {
        let mut out = Vec::new();
        let mut c0 = 0;
        for p in parts {
            let blocks = m.blocks.iter().map(|row| row[c0..c0 + p.0.len()].to_vec()).collect();
            out.push(Mor { src: p.clone(), tgt: m.tgt.clone(), blocks });
            c0 += p.0.len();
        }
        assert_eq!(c0, m.src.0.len(), "column split does not cover the source");
        out
    }

    pub fn show(&self, a: &Obj) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.0.iter().map(|&x| self.names[x].as_str()).collect::<Vec<_>>().join("⊕")
    }
}

/// `(Y_i, X, Z_j, α_i, β_j, k)` with `k = ys.len() = zs.len()`; zero legs are empty objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdelObj {
    pub ys: Vec<Obj>,
    pub x: Obj,
    pub zs: Vec<Obj>,
    pub alpha: Vec<Mor>,
    pub beta: Vec<Mor>,
}

impl AdelObj {
    pub fn k(&self) -> usize {
        self.ys.len()
    }

    pub fn new(ys: Vec<Obj>, x: Obj, zs: Vec<Obj>, alpha: Vec<Mor>, beta: Vec<Mor>) -> Result<AdelObj> {
        if ys.len() != zs.len() || alpha.len() != ys.len() || beta.len() != zs.len() {
            return Err(Error::Shape("leg counts differ".into()));
        }
        for (y, a) in ys.iter().zip(&alpha) {
            if (&a.src, &a.tgt) != (y, &x) {
                return Err(Error::Shape("α_i must map Y_i → X".into()));
            }
        }
        for (z, b) in zs.iter().zip(&beta) {
            if (&b.src, &b.tgt) != (&x, z) {
                return Err(Error::Shape("β_j must map X → Z_j".into()));
            }
        }
        Ok(AdelObj { ys, x, zs, alpha, beta })
    }

    /// The smallest bound past which every leg vanishes.
    pub fn min_k(&self) -> usize {
        (0..self.k()).rev().find(|&i| !self.ys[i].is_zero() || !self.zs[i].is_zero()).map_or(0, |i| i + 1)
    }

    pub fn normalized(&self) -> AdelObj {
        let k = self.min_k();
        AdelObj {
            ys: self.ys[..k].to_vec(),
            x: self.x.clone(),
            zs: self.zs[..k].to_vec(),
            alpha: self.alpha[..k].to_vec(),
            beta: self.beta[..k].to_vec(),
        }
    }

    pub fn y_sum(&self) -> Obj {
        Obj::concat(&self.ys)
    }

    pub fn z_sum(&self) -> Obj {
        Obj::concat(&self.zs)
    }
}

/// A triple `(s_ij, r, t_mn)`; compare values with [`is_homotopic`], never with `==`.
#[derive(Clone, Debug)]
pub struct AdelMor {
    pub src: AdelObj,
    pub tgt: AdelObj,
    pub s: Vec<Vec<Mor>>,
    pub r: Mor,
    pub t: Vec<Vec<Mor>>,
}

pub fn embed(_cat: &PresentedCat, x: &Obj) -> AdelObj {
    AdelObj { ys: vec![], x: x.clone(), zs: vec![], alpha: vec![], beta: vec![] }
}

pub fn embed_mor(cat: &PresentedCat, f: &Mor) -> AdelMor {
    AdelMor { src: embed(cat, &f.src), tgt: embed(cat, &f.tgt), s: vec![], r: f.clone(), t: vec![] }
}

pub fn identity(cat: &PresentedCat, a: &AdelObj) -> AdelMor {
    let diag = |parts: &[Obj]| -> Vec<Vec<Mor>> {
        parts
            .iter()
            .enumerate()
            .map(|(i, p)| parts.iter().enumerate().map(|(j, q)| if i == j { cat.identity(p) } else { cat.zero(p, q) }).collect())
            .collect()
    };
    AdelMor { src: a.clone(), tgt: a.clone(), s: diag(&a.ys), r: cat.identity(&a.x), t: diag(&a.zs) }
}

pub fn zero_mor(cat: &PresentedCat, a: &AdelObj, b: &AdelObj) -> AdelMor {
    triple_from_vec(cat, a, b, &vec![Rat::zero(); triple_dim(cat, a, b)])
}

/// `f2∘f1`.
pub fn compose(cat: &PresentedCat, f2: &AdelMor, f1: &AdelMor) -> Result<AdelMor> {
    if f1.tgt != f2.src {
        return Err(Error::Shape("codomain and domain differ".into()));
    }
    let (a, b, c) = (&f1.src, &f1.tgt, &f2.tgt);
    let s = (0..a.k())
        .map(|i| {
            (0..c.k())
                .map(|j| {
                    (0..b.k()).fold(cat.zero(&a.ys[i], &c.ys[j]), |acc, l| cat.add(&acc, &cat.compose(&f2.s[l][j], &f1.s[i][l])))
                })
                .collect()
        })
        .collect();
    let t = (0..a.k())
        .map(|m| {
            (0..c.k())
                .map(|n| {
                    (0..b.k()).fold(cat.zero(&a.zs[m], &c.zs[n]), |acc, z| cat.add(&acc, &cat.compose(&f2.t[z][n], &f1.t[m][z])))
                })
                .collect()
        })
        .collect();
    Ok(AdelMor { src: a.clone(), tgt: c.clone(), s, r: cat.compose(&f2.r, &f1.r), t })
}

pub fn lin_mor(cat: &PresentedCat, f: &AdelMor, c: &Rat, g: &AdelMor) -> AdelMor {
    let v: Vec<Rat> = triple_to_vec(cat, f).iter().zip(triple_to_vec(cat, g)).map(|(x, y)| x + c * y).collect();
    triple_from_vec(cat, &f.src, &f.tgt, &v)
}

pub fn triple_dim(cat: &PresentedCat, a: &AdelObj, b: &AdelObj) -> usize {
    let s: usize = a.ys.iter().map(|y| b.ys.iter().map(|y2| cat.hom_dim(y, y2)).sum::<usize>()).sum();
    let t: usize = a.zs.iter().map(|z| b.zs.iter().map(|z2| cat.hom_dim(z, z2)).sum::<usize>()).sum();
    s + cat.hom_dim(&a.x, &b.x) + t
}

/// Coordinates ordered as `s_ij` (row-major), then `r`, then `t_mn`.
pub fn triple_to_vec(cat: &PresentedCat, f: &AdelMor) -> Vec<Rat> {
    let mut v = Vec::new();
    for row in &f.s {
        for m in row {
            v.extend(cat.to_vec(m));
        }
    }
    v.extend(cat.to_vec(&f.r));
    for row in &f.t {
        for m in row {
            v.extend(cat.to_vec(m));
        }
    }
    v
}

pub fn triple_from_vec(cat: &PresentedCat, a: &AdelObj, b: &AdelObj, v: &[Rat]) -> AdelMor {
    let mut pos = 0;
    let mut take = |x: &Obj, y: &Obj| -> Mor {
        let n = cat.hom_dim(x, y);
        let m = cat.from_vec(x, y, &v[pos..pos + n]);
        pos += n;
        m
    };
    let s = a.ys.iter().map(|y| b.ys.iter().map(|y2| take(y, y2)).collect()).collect();
    let r = take(&a.x, &b.x);
    let t = a.zs.iter().map(|z| b.zs.iter().map(|z2| take(z, z2)).collect()).collect();
    assert_eq!(pos, v.len(), "triple coordinate length mismatch");
    AdelMor { src: a.clone(), tgt: b.clone(), s, r, t }
}

/// Defects of the commutativity equations, concatenated.
fn commutativity_defect(cat: &PresentedCat, f: &AdelMor) -> Vec<Rat> {
    let (a, b) = (&f.src, &f.tgt);
    let mut out = Vec::new();
    for i in 0..a.k() {
        let mut d = cat.compose(&f.r, &a.alpha[i]);
        for j in 0..b.k() {
            d = cat.lin(&d, &rat(-1), &cat.compose(&b.alpha[j], &f.s[i][j]));
        }
        out.extend(cat.to_vec(&d));
    }
    for n in 0..b.k() {
        let mut d = cat.compose(&b.beta[n], &f.r);
        for m in 0..a.k() {
            d = cat.lin(&d, &rat(-1), &cat.compose(&f.t[m][n], &a.beta[m]));
        }
        out.extend(cat.to_vec(&d));
    }
    out
}

pub fn is_commutative(cat: &PresentedCat, f: &AdelMor) -> bool {
    commutativity_defect(cat, f).iter().all(Zero::is_zero)
}

/// Columns are the `r`-coordinates of `α'_i∘p` and `q∘β_j` over basis maps `p`, `q`.
fn homotopy_columns(cat: &PresentedCat, a: &AdelObj, b: &AdelObj) -> Vec<Vec<Rat>> {
    let mut cols = Vec::new();
    for (y2, al) in b.ys.iter().zip(&b.alpha) {
        for p in cat.basis(&a.x, y2) {
            cols.push(cat.to_vec(&cat.compose(al, &p)));
        }
    }
    for (z, be) in a.zs.iter().zip(&a.beta) {
        for q in cat.basis(z, &b.x) {
            cols.push(cat.to_vec(&cat.compose(&q, be)));
        }
    }
    cols
}

/// `Hom` in the abelianisation: commuting triples modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct AdelHom {
    pub src: AdelObj,
    pub tgt: AdelObj,
    /// Basis of the commuting triples.
    pub comm: Vec<AdelMor>,
    /// Null-homotopic `r` components, as a subspace of `Hom(X, X')`.
    pub null: Subspace,
    pub dim: usize,
}

pub fn hom(cat: &PresentedCat, a: &AdelObj, b: &AdelObj) -> AdelHom {
    let n = triple_dim(cat, a, b);
    let zero = zero_mor(cat, a, b);
    let probe = commutativity_defect(cat, &zero).len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[k] = Rat::one();
        cols.push(commutativity_defect(cat, &triple_from_vec(cat, a, b, &v)));
    }
    let comm: Vec<AdelMor> = if probe == 0 {
        cat_unit_triples(cat, a, b, n)
    } else {
        kernel_basis(&Mat::from_cols(&cols, probe)).iter().map(|v| triple_from_vec(cat, a, b, v)).collect()
    };
    let rdim = cat.hom_dim(&a.x, &b.x);
    let null = Subspace::span(rdim, &homotopy_columns(cat, a, b));
    let mut sum = null.clone();
    for f in &comm {
        sum.insert(&cat.to_vec(&f.r));
    }
    let dim = sum.dim() - null.dim();
    AdelHom { src: a.clone(), tgt: b.clone(), comm, null, dim }
}

fn cat_unit_triples(cat: &PresentedCat, a: &AdelObj, b: &AdelObj, n: usize) -> Vec<AdelMor> {
    (0..n)
        .map(|k| {
            let mut v = vec![Rat::zero(); n];
            v[k] = Rat::one();
            triple_from_vec(cat, a, b, &v)
        })
        .collect()
}

pub fn hom_dim(cat: &PresentedCat, a: &AdelObj, b: &AdelObj) -> usize {
    hom(cat, a, b).dim
}

/// `f ≡ g`: the difference of the middle components is `Σ α'_i p_i + Σ q_j β_j`.
pub fn is_homotopic(cat: &PresentedCat, f: &AdelMor, g: &AdelMor) -> bool {
    assert!(f.src == g.src && f.tgt == g.tgt, "homotopy test needs parallel triples");
    let d: Vec<Rat> = cat.to_vec(&f.r).iter().zip(cat.to_vec(&g.r)).map(|(x, y)| x - y).collect();
    let cols = homotopy_columns(cat, &f.src, &f.tgt);
    if cols.is_empty() {
        return d.iter().all(Zero::is_zero);
    }
    solve_linear(&Mat::from_cols(&cols, d.len()), &d).is_some()
}

pub fn is_null(cat: &PresentedCat, f: &AdelMor) -> bool {
    is_homotopic(cat, f, &zero_mor(cat, &f.src, &f.tgt))
}

/// Coefficient vectors `c` with `Σ c_b v_b ∈ null`.
fn null_combinations(vs: &[Vec<Rat>], null: &Subspace) -> Vec<Vec<Rat>> {
    if vs.is_empty() {
        return vec![];
    }
    let rows = null.ambient();
    let mut cols: Vec<Vec<Rat>> = vs.to_vec();
    cols.extend(null.basis().iter().cloned());
    if rows == 0 {
        return (0..vs.len()).map(|k| unit(vs.len(), k)).collect();
    }
    kernel_basis(&Mat::from_cols(&cols, rows))
        .into_iter()
        .map(|v| v[..vs.len()].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Whether `target ∈ span(vs) + null`.
fn in_span_mod(vs: &[Vec<Rat>], null: &Subspace, target: &[Rat]) -> bool {
    let mut s = null.clone();
    for v in vs {
        s.insert(v);
    }
    s.contains(target)
}

fn unit(n: usize, k: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[k] = Rat::one();
    v
}

fn combine(cat: &PresentedCat, basis: &[AdelMor], c: &[Rat], a: &AdelObj, b: &AdelObj) -> AdelMor {
    basis.iter().zip(c).fold(zero_mor(cat, a, b), |acc, (f, x)| lin_mor(cat, &acc, x, f))
}

fn y_col(cat: &PresentedCat, a: &AdelObj) -> Mor {
    cat.grid(&a.ys, &[a.x.clone()], &[a.alpha.clone()])
}

fn z_row(cat: &PresentedCat, a: &AdelObj) -> Mor {
    let rows: Vec<Vec<Mor>> = a.beta.iter().map(|b| vec![b.clone()]).collect();
    cat.grid(&[a.x.clone()], &a.zs, &rows)
}

/// `s` or `t` of a triple as one block map between the collapsed legs.
fn collapse_legs(cat: &PresentedCat, parts_src: &[Obj], parts_tgt: &[Obj], m: &[Vec<Mor>]) -> Mor {
    let entries: Vec<Vec<Mor>> = (0..parts_tgt.len()).map(|j| (0..parts_src.len()).map(|i| m[i][j].clone()).collect()).collect();
    cat.grid(parts_src, parts_tgt, &entries)
}

/// The kernel of `f: A → B` by the explicit block construction
/// `(Y⊕Y' → X⊕Y' → X'⊕Z)` with maps `((α 0)(s −1))`, `((r −α')(β 0))`.
pub fn kernel(cat: &PresentedCat, f: &AdelMor) -> (AdelObj, AdelMor) {
    let (a, b) = (&f.src, &f.tgt);
    let (ay, az, by) = (a.y_sum(), a.z_sum(), b.y_sum());
    let alpha = y_col(cat, a);
    let beta = z_row(cat, a);
    let alpha2 = y_col(cat, b);
    let sc = collapse_legs(cat, &a.ys, &b.ys, &f.s);
    let ky = [ay.clone(), by.clone()];
    let kx = [a.x.clone(), by.clone()];
    let kz = [b.x.clone(), az.clone()];
    let kal = cat.grid(&ky, &kx, &[vec![alpha, cat.zero(&by, &a.x)], vec![sc, cat.neg(&cat.identity(&by))]]);
    let kbe = cat.grid(&kx, &kz, &[vec![f.r.clone(), cat.neg(&alpha2)], vec![beta, cat.zero(&by, &az)]]);
    let kobj = AdelObj {
        ys: vec![Obj::concat(&ky)],
        x: Obj::concat(&kx),
        zs: vec![Obj::concat(&kz)],
        alpha: vec![kal],
        beta: vec![kbe],
    };
    let s_full = cat.grid(&ky, &[ay.clone()], &[vec![cat.identity(&ay), cat.zero(&by, &ay)]]);
    let r = cat.grid(&kx, &[a.x.clone()], &[vec![cat.identity(&a.x), cat.zero(&by, &a.x)]]);
    let t_full = cat.grid(&kz, &[az.clone()], &[vec![cat.zero(&b.x, &az), cat.identity(&az)]]);
    let k = AdelMor {
        src: kobj.clone(),
        tgt: a.clone(),
        s: vec![cat.split_rows(&s_full, &a.ys)],
        r,
        t: vec![cat.split_rows(&t_full, &a.zs)],
    };
    normalize_source(k)
}

/// The cokernel of `f: A → B`, dual to [`kernel`]:
/// `(X⊕Y' → X'⊕Z → Z'⊕Z)` with maps `((r α')(−β 0))`, `((β' t)(0 −1))`.
pub fn cokernel(cat: &PresentedCat, f: &AdelMor) -> (AdelObj, AdelMor) {
    let (a, b) = (&f.src, &f.tgt);
    let (az, by, bz) = (a.z_sum(), b.y_sum(), b.z_sum());
    let beta = z_row(cat, a);
    let alpha2 = y_col(cat, b);
    let beta2 = z_row(cat, b);
    let tc = collapse_legs(cat, &a.zs, &b.zs, &f.t);
    let qy = [a.x.clone(), by.clone()];
    let qx = [b.x.clone(), az.clone()];
    let qz = [bz.clone(), az.clone()];
    let qal = cat.grid(&qy, &qx, &[vec![f.r.clone(), alpha2], vec![cat.neg(&beta), cat.zero(&by, &az)]]);
    let qbe = cat.grid(&qx, &qz, &[vec![beta2, tc], vec![cat.zero(&b.x, &az), cat.neg(&cat.identity(&az))]]);
    let qobj = AdelObj {
        ys: vec![Obj::concat(&qy)],
        x: Obj::concat(&qx),
        zs: vec![Obj::concat(&qz)],
        alpha: vec![qal],
        beta: vec![qbe],
    };
    let s_full = cat.grid(&[by.clone()], &qy, &[vec![cat.zero(&by, &a.x)], vec![cat.identity(&by)]]);
    let r = cat.grid(&[b.x.clone()], &qx, &[vec![cat.identity(&b.x)], vec![cat.zero(&b.x, &az)]]);
    let t_full = cat.grid(&[bz.clone()], &qz, &[vec![cat.identity(&bz)], vec![cat.zero(&bz, &az)]]);
    let c = AdelMor {
        src: b.clone(),
        tgt: qobj.clone(),
        s: cat.split_cols(&s_full, &b.ys).into_iter().map(|m| vec![m]).collect(),
        r,
        t: cat.split_cols(&t_full, &b.zs).into_iter().map(|m| vec![m]).collect(),
    };
    normalize_target(c)
}

fn normalize_source(mut f: AdelMor) -> (AdelObj, AdelMor) {
    let k = f.src.min_k();
    f.src = f.src.normalized();
    f.s.truncate(k);
    f.t.truncate(k);
    (f.src.clone(), f)
}

fn normalize_target(mut f: AdelMor) -> (AdelObj, AdelMor) {
    let k = f.tgt.min_k();
    f.tgt = f.tgt.normalized();
    for row in f.s.iter_mut().chain(f.t.iter_mut()) {
        row.truncate(k);
    }
    (f.tgt.clone(), f)
}

/// Outcome of a universal-property check against a list of test objects.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniversalReport {
    /// Test morphisms that had to factor.
    pub checked: usize,
    pub composite_null: bool,
    pub factors: bool,
    pub unique: bool,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        self.composite_null && self.factors && self.unique
    }
}

/// `k: K → A` is a kernel of `f: A → B` against maps from every test object.
pub fn check_kernel(cat: &PresentedCat, f: &AdelMor, k: &AdelMor, tests: &[AdelObj]) -> UniversalReport {
    let fk = compose(cat, f, k).expect("kernel map lands in the source");
    let mut rep = UniversalReport { composite_null: is_null(cat, &fk), factors: true, unique: true, checked: 0 };
    for t in tests {
        let h_ta = hom(cat, t, &f.src);
        let h_tk = hom(cat, t, &k.src);
        let h_tb_null = Subspace::span(cat.hom_dim(&t.x, &f.tgt.x), &homotopy_columns(cat, t, &f.tgt));
        let fh: Vec<Vec<Rat>> = h_ta.comm.iter().map(|h| cat.to_vec(&compose(cat, f, h).unwrap().r)).collect();
        let ku: Vec<AdelMor> = h_tk.comm.iter().map(|u| compose(cat, k, u).unwrap()).collect();
        let ku_r: Vec<Vec<Rat>> = ku.iter().map(|m| cat.to_vec(&m.r)).collect();
        for c in null_combinations(&fh, &h_tb_null) {
            rep.checked += 1;
            let h = combine(cat, &h_ta.comm, &c, t, &f.src);
            if !in_span_mod(&ku_r, &h_ta.null, &cat.to_vec(&h.r)) {
                rep.factors = false;
            }
        }
        for c in null_combinations(&ku_r, &h_ta.null) {
            let u = combine(cat, &h_tk.comm, &c, t, &k.src);
            if !h_tk.null.contains(&cat.to_vec(&u.r)) {
                rep.unique = false;
            }
        }
    }
    rep
}

/// `c: B → Q` is a cokernel of `f: A → B` against maps into every test object.
pub fn check_cokernel(cat: &PresentedCat, f: &AdelMor, c: &AdelMor, tests: &[AdelObj]) -> UniversalReport {
    let cf = compose(cat, c, f).expect("cokernel map leaves the target");
    let mut rep = UniversalReport { composite_null: is_null(cat, &cf), factors: true, unique: true, checked: 0 };
    for t in tests {
        let h_bt = hom(cat, &f.tgt, t);
        let h_qt = hom(cat, &c.tgt, t);
        let h_at_null = Subspace::span(cat.hom_dim(&f.src.x, &t.x), &homotopy_columns(cat, &f.src, t));
        let hf: Vec<Vec<Rat>> = h_bt.comm.iter().map(|h| cat.to_vec(&compose(cat, h, f).unwrap().r)).collect();
        let uc: Vec<Vec<Rat>> = h_qt.comm.iter().map(|u| cat.to_vec(&compose(cat, u, c).unwrap().r)).collect();
        for co in null_combinations(&hf, &h_at_null) {
            rep.checked += 1;
            let h = combine(cat, &h_bt.comm, &co, &f.tgt, t);
            if !in_span_mod(&uc, &h_bt.null, &cat.to_vec(&h.r)) {
                rep.factors = false;
            }
        }
        for co in null_combinations(&uc, &h_bt.null) {
            let u = combine(cat, &h_qt.comm, &co, &c.tgt, t);
            if !h_qt.null.contains(&cat.to_vec(&u.r)) {
                rep.unique = false;
            }
        }
    }
    rep
}

/// `f` has a two-sided inverse up to homotopy.
pub fn is_iso(cat: &PresentedCat, f: &AdelMor) -> bool {
    let (a, b) = (&f.src, &f.tgt);
    let h_ba = hom(cat, b, a);
    let fg: Vec<Vec<Rat>> = h_ba.comm.iter().map(|g| cat.to_vec(&compose(cat, f, g).unwrap().r)).collect();
    let null_bb = Subspace::span(cat.hom_dim(&b.x, &b.x), &homotopy_columns(cat, b, b));
    let id_b = cat.to_vec(&cat.identity(&b.x));
    // pick any right inverse up to homotopy, then test it on the left
    let mut cols = fg.clone();
    cols.extend(null_bb.basis().iter().cloned());
    if id_b.is_empty() {
        return is_null(cat, &identity(cat, a));
    }
    let Some(sol) = solve_linear(&Mat::from_cols(&cols, id_b.len()), &id_b) else {
        return false;
    };
    let g = combine(cat, &h_ba.comm, &sol.particular[..fg.len()], b, a);
    let gf = compose(cat, &g, f).unwrap();
    is_homotopic(cat, &gf, &identity(cat, a))
}

/// The object is zero in the abelianisation.
pub fn is_zero_obj(cat: &PresentedCat, a: &AdelObj) -> bool {
    is_null(cat, &identity(cat, a))
}

/// The classical Adelman form `⊕Y_i → X → ⊕Z_j` as a fan object with one leg,
/// with the comparison map from `a`.
pub fn collapse(cat: &PresentedCat, a: &AdelObj) -> (AdelObj, AdelMor) {
    let (ys, zs) = (a.y_sum(), a.z_sum());
    let c = AdelObj { ys: vec![ys.clone()], x: a.x.clone(), zs: vec![zs.clone()], alpha: vec![y_col(cat, a)], beta: vec![z_row(cat, a)] };
    let s_full = cat.identity(&ys);
    let t_full = cat.identity(&zs);
    let m = AdelMor {
        src: a.clone(),
        tgt: c.clone(),
        s: cat.split_cols(&s_full, &a.ys).into_iter().map(|m| vec![m]).collect(),
        r: cat.identity(&a.x),
        t: cat.split_cols(&t_full, &a.zs).into_iter().map(|m| vec![m]).collect(),
    };
    (c, m)
}

/// Hom dimension with the triple-space bound and the bound's literal product reading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub actual: usize,
    /// `Σ dim Hom(Y_i, Y'_m) + dim Hom(X, X') + Σ dim Hom(Z_j, Z'_n)`.
    pub bound: usize,
    /// `∏ dim Hom(Y_i, Y'_m) · dim Hom(X, X) · ∏ dim Hom(Z_j, Z'_n)`.
    pub literal: usize,
}

pub fn hom_dim_bound(cat: &PresentedCat, a: &AdelObj, b: &AdelObj) -> BoundReport {
    let mut literal = cat.hom_dim(&a.x, &a.x);
    for y in &a.ys {
        for y2 in &b.ys {
            literal *= cat.hom_dim(y, y2);
        }
    }
    for z in &a.zs {
        for z2 in &b.zs {
            literal *= cat.hom_dim(z, z2);
        }
    }
    BoundReport { actual: hom_dim(cat, a, b), bound: triple_dim(cat, a, b), literal }
}

pub fn hom_dim_bound_check(cat: &PresentedCat, a: &AdelObj, b: &AdelObj) -> bool {
    let r = hom_dim_bound(cat, a, b);
    r.bound >= r.actual
}

/// Hom categories of the bimodule 2-category on a finite list of indecomposables,
/// closed enough under composition for the objects at hand.
pub struct BimodBase {
    pub wb: Arc<Workbench>,
    pub inds: Vec<Ind>,
    pub cat: PresentedCat,
}

impl BimodBase {
    pub fn new(wb: Arc<Workbench>, inds: Vec<Ind>) -> Result<BimodBase> {
        let mut dims = Vec::new();
        let mut ident = Vec::new();
        for &x in &inds {
            let mut row = Vec::new();
            for &y in &inds {
                row.push(wb.hom_dim(x, y)?);
            }
            dims.push(row);
            let h = wb.hom(x, x)?;
            ident.push(h.coords(&HomElem::identity(&wb.alg, x)).ok_or_else(|| Error::ConstructionBug(format!("identity of {x}")))?);
        }
        let (w2, i2) = (wb.clone(), inds.clone());
        let make: TableFn = Box::new(move |x, y, z| {
            let (hxy, hyz, hxz) = (w2.hom(i2[x], i2[y]).unwrap(), w2.hom(i2[y], i2[z]).unwrap(), w2.hom(i2[x], i2[z]).unwrap());
            hyz.basis
                .iter()
                .map(|g| hxy.basis.iter().map(|f| hxz.coords(&vcomp_elem(&w2.alg, g, f)).expect("composite leaves the hom space")).collect())
                .collect()
        });
        let names = inds.iter().map(|x| x.to_string()).collect();
        Ok(BimodBase { wb, inds, cat: PresentedCat::new(names, dims, ident, make) })
    }

    pub fn obj(&self, m: &OneMor) -> Result<Obj> {
        m.0.iter()
            .map(|x| self.inds.iter().position(|y| y == x).ok_or_else(|| Error::Shape(format!("{x} is outside the base list"))))
            .collect::<Result<Vec<_>>>()
            .map(Obj)
    }

    pub fn one_mor(&self, a: &Obj) -> OneMor {
        OneMor(a.0.iter().map(|&x| self.inds[x]).collect())
    }

    pub fn ind(&self, x: Ind) -> Result<Obj> {
        self.obj(&OneMor(vec![x]))
    }

    pub fn to_two(&self, m: &Mor) -> Result<TwoMor> {
        let (src, tgt) = (self.one_mor(&m.src), self.one_mor(&m.tgt));
        let mut out = TwoMor::zero(&src, &tgt);
        for (r, &y) in tgt.0.iter().enumerate() {
            for (c, &x) in src.0.iter().enumerate() {
                out.blocks[r][c] = self.wb.hom(x, y)?.combine(&self.wb.alg, &m.blocks[r][c]);
            }
        }
        Ok(out)
    }

    pub fn from_two(&self, t: &TwoMor) -> Result<Mor> {
        let (src, tgt) = (self.obj(&t.src)?, self.obj(&t.tgt)?);
        let mut out = self.cat.zero(&src, &tgt);
        for (r, &y) in t.tgt.0.iter().enumerate() {
            for (c, &x) in t.src.0.iter().enumerate() {
                out.blocks[r][c] = self.wb.hom(x, y)?.coords(&t.blocks[r][c]).ok_or_else(|| Error::ConstructionBug("block outside hom".into()))?;
            }
        }
        Ok(out)
    }

    pub fn tensor_obj(&self, a: &Obj, b: &Obj) -> Result<Obj> {
        let (m, _) = compose1(&self.wb.alg, &self.one_mor(a), &self.one_mor(b));
        self.obj(&m)
    }

    /// `f ∘_H g`.
    pub fn hcomp(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        let h = hcompose(&self.wb.alg, &self.to_two(f)?, &self.to_two(g)?);
        self.from_two(&h)
    }

    /// Composition of 1-morphisms `a∘b` with bound `k + k'`.
    pub fn tensor_compose(&self, a: &AdelObj, b: &AdelObj) -> Result<AdelObj> {
        let cat = &self.cat;
        let (ida, idb) = (cat.identity(&a.x), cat.identity(&b.x));
        let mut vs = Vec::new();
        let mut gammas = Vec::new();
        for (y, al) in a.ys.iter().zip(&a.alpha) {
            vs.push(self.tensor_obj(y, &b.x)?);
            gammas.push(self.hcomp(al, &idb)?);
        }
        for (y, al) in b.ys.iter().zip(&b.alpha) {
            vs.push(self.tensor_obj(&a.x, y)?);
            gammas.push(self.hcomp(&ida, al)?);
        }
        let mut ws = Vec::new();
        let mut deltas = Vec::new();
        for (z, be) in b.zs.iter().zip(&b.beta) {
            ws.push(self.tensor_obj(&a.x, z)?);
            deltas.push(self.hcomp(&ida, be)?);
        }
        for (z, be) in a.zs.iter().zip(&a.beta) {
            ws.push(self.tensor_obj(z, &b.x)?);
            deltas.push(self.hcomp(be, &idb)?);
        }
        AdelObj::new(vs, self.tensor_obj(&a.x, &b.x)?, ws, gammas, deltas)
    }

    /// The identity 1-morphism `(0, 1, 0, 0, 0, 0)`.
    pub fn unit(&self) -> Result<AdelObj> {
        Ok(embed(&self.cat, &self.ind(Ind::Id)?))
    }

    /// Evaluation at `s`: every component composed with `s` on the right.
    pub fn eval_obj(&self, a: &AdelObj, s: &Obj) -> Result<AdelObj> {
        self.tensor_compose(a, &embed(&self.cat, s))
    }

    pub fn eval_mor(&self, f: &AdelMor, s: &Obj) -> Result<AdelMor> {
        let ids = self.cat.identity(s);
        let side = |m: &Vec<Vec<Mor>>| -> Result<Vec<Vec<Mor>>> {
            m.iter().map(|row| row.iter().map(|x| self.hcomp(x, &ids)).collect()).collect()
        };
        Ok(AdelMor {
            src: self.eval_obj(&f.src, s)?,
            tgt: self.eval_obj(&f.tgt, s)?,
            s: side(&f.s)?,
            r: self.hcomp(&f.r, &ids)?,
            t: side(&f.t)?,
        })
    }

    /// The kernel of `g` stays a kernel after evaluation at `s`.
    pub fn evaluation_exactness_check(&self, s: &Obj, g: &AdelMor, tests: &[AdelObj]) -> Result<bool> {
        let (_, k) = kernel(&self.cat, g);
        let (gs, ks) = (self.eval_mor(g, s)?, self.eval_mor(&k, s)?);
        Ok(is_commutative(&self.cat, &ks) && check_kernel(&self.cat, &gs, &ks, tests).holds())
    }
}

/// A random commuting triple with small integer coordinates.
pub fn random_mor<R: Rng>(cat: &PresentedCat, a: &AdelObj, b: &AdelObj, rng: &mut R) -> AdelMor {
    let h = hom(cat, a, b);
    let c: Vec<Rat> = h.comm.iter().map(|_| rat(rng.gen_range(-2..=2))).collect();
    combine(cat, &h.comm, &c, a, b)
}

fn random_base_mor<R: Rng>(cat: &PresentedCat, a: &Obj, b: &Obj, rng: &mut R) -> Mor {
    let v: Vec<Rat> = (0..cat.hom_dim(a, b)).map(|_| rat(rng.gen_range(-1..=1))).collect();
    cat.from_vec(a, b, &v)
}

/// A random fan object with at most `kmax` legs drawn from `pool`.
pub fn random_object<R: Rng>(cat: &PresentedCat, pool: &[usize], kmax: usize, rng: &mut R) -> AdelObj {
    let pick = |rng: &mut R, empty_ok: bool| -> Obj {
        if empty_ok && rng.gen_bool(0.3) {
            Obj::zero()
        } else {
            Obj(vec![*pool.choose(rng).expect("nonempty pool")])
        }
    };
    let x = pick(rng, false);
    let k = rng.gen_range(0..=kmax);
    let ys: Vec<Obj> = (0..k).map(|_| pick(rng, true)).collect();
    let zs: Vec<Obj> = (0..k).map(|_| pick(rng, true)).collect();
    let alpha = ys.iter().map(|y| random_base_mor(cat, y, &x, rng)).collect();
    let beta = zs.iter().map(|z| random_base_mor(cat, &x, z, rng)).collect();
    AdelObj { ys, x, zs, alpha, beta }
}

impl BimodBase {
    /// `Id` and `F(i,j)` for `i, j` among the (at most) three central interior
    /// vertices of the workbench algebra.
    pub fn central(wb: Arc<Workbench>) -> Result<BimodBase> {
        let (lo, hi) = wb.alg.interior();
        if lo > hi {
            return Err(Error::InvalidWindow("empty interior".into()));
        }
        let mid = lo + (hi - lo) / 2;
        let vs: Vec<i64> = (mid - 1..=mid + 1).filter(|&v| v >= lo && v <= hi).collect();
        let mut inds = vec![Ind::Id];
        for &i in &vs {
            for &j in &vs {
                inds.push(Ind::F(i, j));
            }
        }
        BimodBase::new(wb, inds)
    }
}

/// Sizes of the seeded self-test corpus.
#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    pub kernels: usize,
    pub bound_pairs: usize,
    pub evaluations: usize,
    pub homotopy_triples: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { seed: 17, kernels: 24, bound_pairs: 60, evaluations: 12, homotopy_triples: 6 }
    }
}

/// Counts and failure descriptions of every self-test family.
#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub embed_pairs: usize,
    pub kernels: usize,
    pub cokernels: usize,
    pub bound_pairs: usize,
    pub evaluations: usize,
    pub homotopy_triples: usize,
    pub failures: Vec<String>,
}

impl SelftestReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Embedding, kernel/cokernel universal properties, the hom-dimension bound,
/// exactness of evaluation and associativity up to homotopy on a seeded corpus.
pub fn selftest(b: &BimodBase, cfg: &SelftestConfig) -> Result<SelftestReport> {
    use rand::SeedableRng;
    let cat = &b.cat;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rep = SelftestReport::default();
    let f_inds: Vec<usize> = (0..cat.len()).filter(|&x| b.inds[x] != Ind::Id).collect();
    let embeds: Vec<AdelObj> = f_inds.iter().map(|&x| embed(cat, &Obj(vec![x]))).collect();
    for x in 0..cat.len() {
        for y in 0..cat.len() {
            rep.embed_pairs += 1;
            let d = hom_dim(cat, &embed(cat, &Obj(vec![x])), &embed(cat, &Obj(vec![y])));
            if d != cat.dim(x, y) {
                rep.failures.push(format!("embed {} → {}: {d} ≠ {}", cat.names[x], cat.names[y], cat.dim(x, y)));
            }
        }
    }
    // Corpus: alternately a basis map between embedded indecomposables and a
    // random map between random one-leg objects.
    let mut corpus = Vec::new();
    let mut base_maps = Vec::new();
    for a in &embeds {
        for c in &embeds {
            base_maps.extend(hom(cat, a, c).comm.into_iter().filter(|m| !is_null(cat, m)));
        }
    }
    if base_maps.is_empty() {
        return Err(Error::Unsupported("no nonzero maps between the base objects".into()));
    }
    while corpus.len() < cfg.kernels {
        if corpus.len() % 2 == 0 {
            corpus.push(base_maps.choose(&mut rng).expect("nonempty").clone());
        } else {
            let a = random_object(cat, &f_inds, 1, &mut rng);
            let c = random_object(cat, &f_inds, 1, &mut rng);
            corpus.push(random_mor(cat, &a, &c, &mut rng));
        }
    }
    for (n, f) in corpus.iter().enumerate() {
        let (kobj, km) = kernel(cat, f);
        let mut tests = embeds.clone();
        tests.push(kobj);
        tests.push(f.src.clone());
        rep.kernels += 1;
        let r = check_kernel(cat, f, &km, &tests);
        if !is_commutative(cat, &km) || !r.holds() {
            rep.failures.push(format!("kernel of corpus map {n}: {r:?}"));
        }
        let (cobj, cm) = cokernel(cat, f);
        let mut tests = embeds.clone();
        tests.push(cobj);
        tests.push(f.tgt.clone());
        rep.cokernels += 1;
        let r = check_cokernel(cat, f, &cm, &tests);
        if !is_commutative(cat, &cm) || !r.holds() {
            rep.failures.push(format!("cokernel of corpus map {n}: {r:?}"));
        }
    }
    for n in 0..cfg.bound_pairs {
        let a = random_object(cat, &f_inds, 2, &mut rng);
        let c = random_object(cat, &f_inds, 2, &mut rng);
        rep.bound_pairs += 1;
        if !hom_dim_bound_check(cat, &a, &c) {
            rep.failures.push(format!("hom bound fails on pair {n}: {:?}", hom_dim_bound(cat, &a, &c)));
        }
    }
    for n in 0..cfg.evaluations {
        let g = &corpus[n % corpus.len()];
        let s = Obj(vec![*f_inds.choose(&mut rng).expect("nonempty")]);
        rep.evaluations += 1;
        if !b.evaluation_exactness_check(&s, g, &embeds)? {
            rep.failures.push(format!("evaluation at {} loses the kernel of corpus map {n}", cat.show(&s)));
        }
    }
    for n in 0..cfg.homotopy_triples {
        let objs: Vec<AdelObj> = (0..4).map(|_| random_object(cat, &f_inds, 1, &mut rng)).collect();
        let f = random_mor(cat, &objs[0], &objs[1], &mut rng);
        let g = random_mor(cat, &objs[1], &objs[2], &mut rng);
        let h = random_mor(cat, &objs[2], &objs[3], &mut rng);
        let l = compose(cat, &compose(cat, &h, &g)?, &f)?;
        let r = compose(cat, &h, &compose(cat, &g, &f)?)?;
        let unit = compose(cat, &identity(cat, &objs[1]), &f)?;
        rep.homotopy_triples += 1;
        if !is_homotopic(cat, &l, &r) || !is_homotopic(cat, &unit, &f) {
            rep.failures.push(format!("associativity or unit fails on triple {n}"));
        }
    }
    Ok(rep)
}
