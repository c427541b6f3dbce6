//! Green's relations on finite multisemigroups and the cell 2-representations
//! of the bimodule 2-category.
//!
//! `F ≤_L G` when `G` is a summand of `H∘F` for some `H`; `≤_R` uses `F∘K`;
//! `≤_J` is generated by both. Only supports of products matter, never the
//! multiplicities.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::bimod2cat::{compose1, Ind, OneMor, Workbench};
use crate::exactlin::Subspace;
use crate::pathalg::Vertex;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSemigroup {
    pub labels: Vec<String>,
    /// `(a, b) ↦` summands of `a∘b` with multiplicities; absent pairs compose to zero.
    pub product: BTreeMap<(usize, usize), BTreeMap<usize, usize>>,
    /// Pairs whose product had summands outside the label set.
    pub boundary: BTreeSet<(usize, usize)>,
}

impl MultiSemigroup {
    pub fn new(labels: Vec<String>) -> MultiSemigroup {
        MultiSemigroup { labels, product: BTreeMap::new(), boundary: BTreeSet::new() }
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Records `a∘b ⊇ c` with the given multiplicity.
    pub fn add_product(&mut self, a: usize, b: usize, c: usize, mult: usize) {
        if mult > 0 {
            *self.product.entry((a, b)).or_default().entry(c).or_insert(0) += mult;
        }
    }

    pub fn summands(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.product.get(&(a, b)).into_iter().flat_map(|m| m.keys().copied())
    }

    /// Sub-table on the given labels; products leaving it set the boundary flag.
    pub fn restrict(&self, keep: &[usize]) -> MultiSemigroup {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &k)| (k, n)).collect();
        let mut out = MultiSemigroup::new(keep.iter().map(|&k| self.labels[k].clone()).collect());
        for (&(a, b), m) in &self.product {
            let (Some(&na), Some(&nb)) = (pos.get(&a), pos.get(&b)) else { continue };
            for (&c, &k) in m {
                match pos.get(&c) {
                    Some(&nc) => out.add_product(na, nb, nc, k),
                    None => {
                        out.boundary.insert((na, nb));
                    }
                }
            }
            if self.boundary.contains(&(a, b)) {
                out.boundary.insert((na, nb));
            }
        }
        out
    }
}

/// Reads `[labels]` (whitespace separated) and `[products]` lines `a * b = c, d`.
/// Undeclared labels on a right-hand side are dropped and flag the pair.
pub fn parse_multisemigroup(text: &str) -> Result<MultiSemigroup> {
    let mut section = String::new();
    let mut labels: Vec<String> = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = name.trim().to_string();
            continue;
        }
        match section.as_str() {
            "labels" => labels.extend(line.split_whitespace().map(str::to_string)),
            "products" => lines.push((idx + 1, line.to_string())),
            _ => return Err(Error::Parse { line: idx + 1, msg: format!("unexpected line {line:?}") }),
        }
    }
    let mut seen = BTreeSet::new();
    for l in &labels {
        if !seen.insert(l) {
            return Err(Error::Parse { line: 0, msg: format!("duplicate label {l}") });
        }
    }
    let mut ms = MultiSemigroup::new(labels);
    for (line, text) in lines {
        let err = |msg: String| Error::Parse { line, msg };
        let (lhs, rhs) = text.split_once('=').ok_or_else(|| err("expected `a * b = ...`".into()))?;
        let (a, b) = lhs.split_once('*').ok_or_else(|| err("expected `*`".into()))?;
        let a = ms.index(a.trim()).ok_or_else(|| err(format!("unknown label {:?}", a.trim())))?;
        let b = ms.index(b.trim()).ok_or_else(|| err(format!("unknown label {:?}", b.trim())))?;
        for c in rhs.split(',').map(str::trim).filter(|c| !c.is_empty() && *c != "0") {
            match ms.index(c) {
                Some(c) => ms.add_product(a, b, c, 1),
                None => {
                    ms.boundary.insert((a, b));
                }
            }
        }
    }
    Ok(ms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    L,
    R,
    J,
    H,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPartition {
    /// `leq_l[f][g]` is `f ≤_L g`.
    pub leq_l: Vec<Vec<bool>>,
    pub leq_r: Vec<Vec<bool>>,
    pub leq_j: Vec<Vec<bool>>,
    pub l_cells: Vec<Vec<usize>>,
    pub r_cells: Vec<Vec<usize>>,
    pub j_cells: Vec<Vec<usize>>,
    pub h_cells: Vec<Vec<usize>>,
    pub d_cells: Vec<Vec<usize>>,
}

impl CellPartition {
    pub fn cells(&self, kind: CellKind) -> &[Vec<usize>] {
        match kind {
            CellKind::L => &self.l_cells,
            CellKind::R => &self.r_cells,
            CellKind::J => &self.j_cells,
            CellKind::H => &self.h_cells,
            CellKind::D => &self.d_cells,
        }
    }

    pub fn cell_of(&self, kind: CellKind, x: usize) -> &[usize] {
        self.cells(kind).iter().find(|c| c.contains(&x)).expect("every label lies in a cell")
    }

    /// Cells as sorted label sets, for comparisons independent of indexing.
    pub fn named(&self, ms: &MultiSemigroup, kind: CellKind) -> BTreeSet<BTreeSet<String>> {
        self.cells(kind).iter().map(|c| c.iter().map(|&x| ms.labels[x].clone()).collect()).collect()
    }
}

fn closure(n: usize, step: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for s in 0..n {
        let mut stack = vec![s];
        reach[s][s] = true;
        while let Some(x) = stack.pop() {
            for &y in &step[x] {
                if !reach[s][y] {
                    reach[s][y] = true;
                    stack.push(y);
                }
            }
        }
    }
    reach
}

fn classes(n: usize, leq: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut done = vec![false; n];
    for x in 0..n {
        if done[x] {
            continue;
        }
        let c: Vec<usize> = (0..n).filter(|&y| leq[x][y] && leq[y][x]).collect();
        for &y in &c {
            done[y] = true;
        }
        out.push(c);
    }
    out
}

/// Preorders by reachability over the product table, cells as mutual reachability,
/// `H = L ∩ R`, and `D` as the join of `L` and `R`.
pub fn green_cells(ms: &MultiSemigroup) -> Result<CellPartition> {
    let n = ms.len();
    for x in 0..n {
        let all_boundary = (0..n).all(|y| ms.boundary.contains(&(x, y)) && ms.boundary.contains(&(y, x)));
        if n > 1 && all_boundary {
            return Err(Error::IndeterminateCell(ms.labels[x].clone()));
        }
    }
    let mut left = vec![Vec::new(); n];
    let mut right = vec![Vec::new(); n];
    for (&(a, b), m) in &ms.product {
        for &c in m.keys() {
            left[b].push(c); // c is a summand of a∘b, so b ≤_L c
            right[a].push(c); // and a ≤_R c
        }
    }
    let both: Vec<Vec<usize>> = (0..n).map(|x| left[x].iter().chain(&right[x]).copied().collect()).collect();
    let leq_l = closure(n, &left);
    let leq_r = closure(n, &right);
    let leq_j = closure(n, &both);
    let l_cells = classes(n, &leq_l);
    let r_cells = classes(n, &leq_r);
    let j_cells = classes(n, &leq_j);
    let mut h_cells = Vec::new();
    for l in &l_cells {
        for r in &r_cells {
            let h: Vec<usize> = l.iter().copied().filter(|x| r.contains(x)).collect();
            if !h.is_empty() {
                h_cells.push(h);
            }
        }
    }
    h_cells.sort();
    // union-find over L and R classes
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for c in l_cells.iter().chain(&r_cells) {
        for w in c.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    let mut d_cells: Vec<Vec<usize>> = groups.into_values().collect();
    d_cells.sort();
    Ok(CellPartition { leq_l, leq_r, leq_j, l_cells, r_cells, j_cells, h_cells, d_cells })
}

/// Strong regularity of the `J`-cell containing `x`, with a witness on failure.
pub fn strongly_regular(ms: &MultiSemigroup, p: &CellPartition, x: usize) -> (bool, Option<String>) {
    let j = p.cell_of(CellKind::J, x);
    let ls: Vec<&Vec<usize>> = p.l_cells.iter().filter(|c| j.contains(&c[0])).collect();
    for (a, la) in ls.iter().enumerate() {
        for (b, lb) in ls.iter().enumerate() {
            if a != b && la.iter().any(|&u| lb.iter().any(|&v| p.leq_l[u][v])) {
                return (
                    false,
                    Some(format!("L-cells of {} and {} are comparable", ms.labels[la[0]], ms.labels[lb[0]])),
                );
            }
        }
    }
    for h in p.h_cells.iter().filter(|h| j.contains(&h[0])) {
        if h.len() > 1 {
            let names: Vec<&str> = h.iter().map(|&y| ms.labels[y].as_str()).collect();
            return (false, Some(format!("H-cell {{{}}} is not a singleton", names.join(", "))));
        }
    }
    (true, None)
}

/// The table on `{Id} ∪ {F(i,j) : lo ≤ i, j ≤ hi}` from the composition multiplicities.
pub fn from_algebra(wb: &Workbench, lo: Vertex, hi: Vertex) -> Result<(MultiSemigroup, Vec<Ind>)> {
    let mut inds = vec![Ind::Id];
    for i in lo..=hi {
        for j in lo..=hi {
            inds.push(Ind::F(i, j));
        }
    }
    for &x in &inds {
        wb.check_ind(x)?;
    }
    let pos: HashMap<Ind, usize> = inds.iter().enumerate().map(|(n, &x)| (x, n)).collect();
    let mut ms = MultiSemigroup::new(inds.iter().map(|x| x.to_string()).collect());
    for (a, &x) in inds.iter().enumerate() {
        for (b, &y) in inds.iter().enumerate() {
            let (m, _) = compose1(&wb.alg, &OneMor(vec![x]), &OneMor(vec![y]));
            for (z, k) in m.multiplicities() {
                match pos.get(&z) {
                    Some(&c) => ms.add_product(a, b, c, k),
                    None => {
                        ms.boundary.insert((a, b));
                    }
                }
            }
        }
    }
    Ok((ms, inds))
}

/// Cells of the algebra table on `[lo, hi]` compared with those computed on a
/// range enlarged by `extra` on both sides and restricted back.
pub fn stabilized_cells(wb: &Workbench, lo: Vertex, hi: Vertex, extra: i64) -> Result<(MultiSemigroup, CellPartition, bool)> {
    let (ms, _) = from_algebra(wb, lo, hi)?;
    let p = green_cells(&ms)?;
    let (big, _) = from_algebra(wb, lo - extra, hi + extra)?;
    let bp = green_cells(&big)?;
    let keep: BTreeSet<&String> = ms.labels.iter().collect();
    let restrict = |part: &BTreeSet<BTreeSet<String>>| -> BTreeSet<BTreeSet<String>> {
        part.iter()
            .map(|c| c.iter().filter(|l| keep.contains(l)).cloned().collect::<BTreeSet<String>>())
            .filter(|c| !c.is_empty())
            .collect()
    };
    let stable = [CellKind::L, CellKind::R, CellKind::J, CellKind::H, CellKind::D]
        .iter()
        .all(|&k| p.named(&ms, k) == restrict(&bp.named(&big, k)));
    Ok((ms, p, stable))
}

/// Hom dimensions in the cell 2-representation of the `L`-cell `{F(x,j)}`:
/// `(dim in N_j, dim after quotienting the ideal spanned by φ_{a,b}, b ∈ rad e_jAe_j)`.
pub fn cell_rep_hom(wb: &Workbench, j: Vertex, m: &OneMor, n: &OneMor) -> Result<(usize, usize)> {
    for x in m.0.iter().chain(&n.0) {
        match x {
            Ind::F(_, jj) if *jj == j => wb.check_ind(*x)?,
            _ => return Err(Error::NotInCellRep(format!("{x} is not in add{{F(-,{j})}}"))),
        }
    }
    let (mut full, mut quotient) = (0, 0);
    for &x in &m.0 {
        for &y in &n.0 {
            let (d, r) = ideal_rank(wb, j, x, y)?;
            full += d;
            quotient += d - r;
        }
    }
    Ok((full, quotient))
}

/// `(dim Hom(x, y), rank of the cell ideal inside it)`.
pub fn ideal_rank(wb: &Workbench, j: Vertex, x: Ind, y: Ind) -> Result<(usize, usize)> {
    let ideal = ideal_subspace(wb, j, x, y)?;
    Ok((ideal.ambient(), ideal.dim()))
}

/// The cell ideal inside `Hom(x, y)`, in the coordinates of the hom basis:
/// spanned by `φ_{a,b}` with `b ∈ rad e_jAe_j`.
pub fn ideal_subspace(wb: &Workbench, j: Vertex, x: Ind, y: Ind) -> Result<Subspace> {
    let h = wb.hom(x, y)?;
    let a = &wb.alg;
    let (Ind::F(i, _), Ind::F(k, _)) = (x, y) else {
        return Err(Error::NotInCellRep("cell ideal lives between F's".into()));
    };
    let rad: Vec<usize> = a.block(j, j).iter().copied().filter(|&b| !a.basis[b].path.is_empty()).collect();
    let mut span = Subspace::zero(h.dim());
    for &p in a.block(i, k) {
        for &b in &rad {
            let g = crate::bimod2cat::HomElem::free(x, y, crate::bimod2cat::mono(vec![p, b]));
            let c = h.coords(&g).ok_or_else(|| Error::ConstructionBug("ideal generator outside hom space".into()))?;
            span.insert(&c);
        }
    }
    Ok(span)
}

/// The cell ideal inside `Hom(m, n)` in the coordinates of
/// [`Workbench::hom_basis_mor`]: blocks row-major over `(n, m)`.
pub fn ideal_subspace_mor(wb: &Workbench, j: Vertex, m: &OneMor, n: &OneMor) -> Result<Subspace> {
    let total = wb.hom_dim_mor(m, n)?;
    let mut span = Subspace::zero(total);
    let mut offset = 0;
    for &y in &n.0 {
        for &x in &m.0 {
            let block = ideal_subspace(wb, j, x, y)?;
            for v in block.basis() {
                let mut w = vec![num_traits::Zero::zero(); total];
                w[offset..offset + v.len()].clone_from_slice(v);
                span.insert(&w);
            }
            offset += block.ambient();
        }
    }
    Ok(span)
}

/// The cell ideal meets `End(F(i,j))` in nilpotents only, so it holds no identity.
pub fn ideal_is_proper(wb: &Workbench, j: Vertex, i: Vertex) -> Result<bool> {
    let x = Ind::F(i, j);
    let a = &wb.alg;
    let h = wb.hom(x, x)?;
    let rad: Vec<usize> = a.block(j, j).iter().copied().filter(|&b| !a.basis[b].path.is_empty()).collect();
    let mut gens = Vec::new();
    for &p in a.block(i, i) {
        for &b in &rad {
            gens.push(crate::bimod2cat::HomElem::free(x, x, crate::bimod2cat::mono(vec![p, b])));
        }
    }
    let span = Subspace::span(h.dim(), &gens.iter().map(|g| h.coords(g).unwrap()).collect::<Vec<_>>());
    let id = h.coords(&crate::bimod2cat::HomElem::identity(a, x)).unwrap();
    if span.contains(&id) {
        return Ok(false);
    }
    for g in &gens {
        let mut p = g.clone();
        for _ in 0..a.nilpotency {
            p = crate::bimod2cat::vcomp_elem(a, g, &p);
        }
        if !p.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pathalg::{parse_quiver, zigzag};

    #[test]
    fn d_example_has_two_l_cells() {
        let ms = parse_multisemigroup(fixtures::D_EXAMPLE).unwrap();
        assert!(!ms.boundary.is_empty());
        let p = green_cells(&ms).unwrap();
        assert_eq!(p.l_cells.len(), 2);
        assert_eq!(p.r_cells.len(), 2);
        assert_eq!(p.j_cells.len(), 2);
        let one = ms.index("1").unwrap();
        assert_eq!(p.cell_of(CellKind::L, one), &[one]);
    }

    #[test]
    fn rectangular_band_cells() {
        let ms = parse_multisemigroup(fixtures::RECT_BAND).unwrap();
        let p = green_cells(&ms).unwrap();
        // left cells fix the second index under "G is a summand of H∘F"
        let want: BTreeSet<BTreeSet<String>> = (0..3)
            .map(|j| (0..3).map(|x| format!("F{x}_{j}")).collect())
            .chain([BTreeSet::from(["1".to_string()])])
            .collect();
        assert_eq!(p.named(&ms, CellKind::L), want);
        assert!(p.h_cells.iter().all(|h| h.len() == 1));
        let f = ms.index("F0_0").unwrap();
        assert_eq!(strongly_regular(&ms, &p, f), (true, None));
    }

    #[test]
    fn trivial_and_fat_h() {
        let ms = parse_multisemigroup(fixtures::TRIVIAL).unwrap();
        let p = green_cells(&ms).unwrap();
        assert_eq!(p.j_cells, vec![vec![0]]);
        assert!(strongly_regular(&ms, &p, 0).0);
        let ms = parse_multisemigroup(fixtures::FAT_H).unwrap();
        let p = green_cells(&ms).unwrap();
        let (ok, why) = strongly_regular(&ms, &p, ms.index("F").unwrap());
        assert!(!ok);
        assert!(why.unwrap().contains("H-cell"));
    }

    #[test]
    fn zigzag_cells_and_regularity() {
        let wb = Workbench::new(zigzag(-6, 6).unwrap());
        let (ms, p, stable) = stabilized_cells(&wb, -2, 2, 1).unwrap();
        assert!(stable);
        assert_eq!(p.j_cells.len(), 2);
        assert_eq!(p.d_cells, p.j_cells);
        for x in 0..ms.len() {
            assert!(strongly_regular(&ms, &p, x).0);
        }
        let l = p.named(&ms, CellKind::L);
        for j in -2..=2 {
            let cell: BTreeSet<String> = (-2..=2).map(|i| Ind::F(i, j).to_string()).collect();
            assert!(l.contains(&cell));
        }
    }

    #[test]
    fn zigzag_cell_partition_is_translation_equivariant() {
        let wb = Workbench::new(zigzag(-6, 6).unwrap());
        let (ms, _) = from_algebra(&wb, -2, 1).unwrap();
        let (ms2, _) = from_algebra(&wb, -1, 2).unwrap();
        let shift = |s: &str| -> String {
            if s == "1" {
                return s.into();
            }
            let inner = &s[2..s.len() - 1];
            let (a, b) = inner.split_once(',').unwrap();
            format!("F({},{})", a.parse::<i64>().unwrap() + 1, b.parse::<i64>().unwrap() + 1)
        };
        let p = green_cells(&ms).unwrap();
        let p2 = green_cells(&ms2).unwrap();
        for k in [CellKind::L, CellKind::R, CellKind::J] {
            let moved: BTreeSet<BTreeSet<String>> = p.named(&ms, k).iter().map(|c| c.iter().map(|x| shift(x)).collect()).collect();
            assert_eq!(moved, p2.named(&ms2, k));
        }
    }

    #[test]
    fn arrowless_cells_match_zigzag_shape() {
        // F(i,j)∘F(j,l) = F(i,l) survives without arrows, so the F's still form one J-cell
        let wb = Workbench::new(parse_quiver(fixtures::ARROWLESS).unwrap().build().unwrap());
        let (ms, _) = from_algebra(&wb, -1, 1).unwrap();
        let p = green_cells(&ms).unwrap();
        assert_eq!(p.j_cells.len(), 2);
    }

    #[test]
    fn cell_representation_dimensions() {
        let wb = Workbench::new(zigzag(-6, 6).unwrap());
        assert_eq!(cell_rep_hom(&wb, 0, &OneMor::f(0, 0), &OneMor::f(0, 0)).unwrap(), (4, 2));
        for i in -2..=2 {
            let (_, c) = cell_rep_hom(&wb, 0, &OneMor::f(i, 0), &OneMor::f(0, 0)).unwrap();
            assert_eq!(c, wb.alg.dim_block(i, 0));
        }
        assert_eq!(cell_rep_hom(&wb, 0, &OneMor::zero(), &OneMor::f(0, 0)).unwrap(), (0, 0));
        assert!(matches!(cell_rep_hom(&wb, 0, &OneMor::id(), &OneMor::f(0, 0)), Err(Error::NotInCellRep(_))));
        for i in -2..=2 {
            assert!(ideal_is_proper(&wb, 0, i).unwrap());
        }
    }
}
