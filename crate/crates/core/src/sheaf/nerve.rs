//! The Hom complex `∏_σ Hom(F_{σ_0}, G_{σ_n})` over strict chains
//! `σ = (σ_0 < ... < σ_n)` of a subset, which computes `RHom(F, G)` there.
//!
//! A block is one chain together with source degree `q` and target degree
//! `r`; it sits in total degree `n + r - q`. Homs are matrices vectorized
//! row-major, so post-composition by `A` is `A ⊗ I` and pre-composition by
//! `B` is `I ⊗ Bᵀ`.

use std::collections::{BTreeMap, HashMap};

use crate::linalg::{ChainMap, FreeChainComplex, Matrix};
use crate::space::{FinSpec, Point, PointSet};

use super::SheafComplex;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Block {
    pub chain: usize,
    pub q: i32,
    pub r: i32,
    pub offset: usize,
    /// Rank of `G^r` at the last point.
    pub rows: usize,
    /// Rank of `F^q` at the first point.
    pub cols: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        self.rows * self.cols
    }
}

pub(crate) struct HomNerve {
    pub complex: FreeChainComplex,
    pub chains: Vec<Vec<Point>>,
    chain_index: HashMap<Vec<Point>, usize>,
    pub layout: BTreeMap<i32, Vec<Block>>,
    lookup: HashMap<(usize, i32, i32), (i32, usize)>,
}

fn sign(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl HomNerve {
    pub fn build(space: &FinSpec, subset: &PointSet, f: &SheafComplex, g: &SheafComplex) -> HomNerve {
        let ring = g.ring();
        let chains = space.chains_in(subset);
        let chain_index: HashMap<Vec<Point>, usize> =
            chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut layout: BTreeMap<i32, Vec<Block>> = BTreeMap::new();
        let mut lookup = HashMap::new();
        let mut offsets: BTreeMap<i32, usize> = BTreeMap::new();
        for (ci, c) in chains.iter().enumerate() {
            let n = c.len() as i32 - 1;
            let (first, last) = (f.stalk(c[0]), g.stalk(*c.last().unwrap()));
            for q in first.degrees() {
                for r in last.degrees() {
                    let (rows, cols) = (last.rank(r), first.rank(q));
                    if rows * cols == 0 {
                        continue;
                    }
                    let deg = n + r - q;
                    let off = offsets.entry(deg).or_insert(0);
                    let block = Block { chain: ci, q, r, offset: *off, rows, cols };
                    *off += block.size();
                    let list = layout.entry(deg).or_default();
                    lookup.insert((ci, q, r), (deg, list.len()));
                    list.push(block);
                }
            }
        }
        let ranks: BTreeMap<i32, usize> = offsets.clone();
        let mut diffs: BTreeMap<i32, Matrix> = BTreeMap::new();
        for &deg in layout.keys() {
            let rows = ranks.get(&(deg + 1)).copied().unwrap_or(0);
            diffs.insert(deg, Matrix::zeros(ring, rows, ranks[&deg]));
        }
        let find = |ci: usize, q: i32, r: i32| lookup.get(&(ci, q, r)).map(|&(d, i)| layout[&d][i]);
        for (&deg, blocks) in &layout {
            for b in blocks {
                let c = &chains[b.chain];
                let n = c.len() as i32 - 1;
                let (first, last) = (f.stalk(c[0]), g.stalk(*c.last().unwrap()));
                // Internal differential (-1)^n (d_G φ - (-1)^{r-q} φ d_F).
                if let Some(t) = find(b.chain, b.q, b.r + 1) {
                    let m = last.d(b.r).kron(&Matrix::identity(ring, b.cols)).signed(n as i64);
                    diffs.get_mut(&deg).unwrap().add_block(t.offset, b.offset, &m);
                }
                if let Some(t) = find(b.chain, b.q - 1, b.r) {
                    let m = Matrix::identity(ring, b.rows)
                        .kron(&first.d(b.q - 1).transpose())
                        .scale(&ring.from_i64(-sign(n) * sign(b.r - b.q)));
                    diffs.get_mut(&deg).unwrap().add_block(t.offset, b.offset, &m);
                }
                // Nerve differential into this block from its faces.
                if n == 0 {
                    continue;
                }
                let src_deg = deg - 1;
                let Some(dm) = diffs.get_mut(&src_deg) else { continue };
                let face = |i: usize| -> Vec<Point> {
                    c.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect()
                };
                for i in 0..=n as usize {
                    let fi = chain_index[&face(i)];
                    let Some(s) = find(fi, b.q, b.r) else { continue };
                    let m = if i == 0 {
                        let rho = f.gen(c[0], c[1]).component(b.q, f.stalk(c[0]), f.stalk(c[1]));
                        Matrix::identity(ring, b.rows).kron(&rho.transpose())
                    } else if i == n as usize {
                        let (a, z) = (c[i - 1], c[i]);
                        let rho = g.gen(a, z).component(b.r, g.stalk(a), g.stalk(z));
                        rho.kron(&Matrix::identity(ring, b.cols)).signed(i as i64)
                    } else {
                        Matrix::identity(ring, b.size()).signed(i as i64)
                    };
                    dm.add_block(b.offset, s.offset, &m);
                }
            }
        }
        let complex = FreeChainComplex::from_maps(ring, &ranks, &diffs).expect("nerve Hom complex");
        HomNerve { complex, chains, chain_index, layout, lookup }
    }

    pub fn block(&self, chain: &[Point], q: i32, r: i32) -> Option<(i32, Block)> {
        let ci = *self.chain_index.get(chain)?;
        self.lookup.get(&(ci, q, r)).map(|&(d, i)| (d, self.layout[&d][i]))
    }

    /// Restriction of cochains to a smaller subset with the same `F`, `G`.
    pub fn projection(&self, to: &HomNerve) -> ChainMap {
        let ring = self.complex.ring();
        let mut comps = BTreeMap::new();
        for (&deg, blocks) in &self.layout {
            let mut m = Matrix::zeros(ring, to.complex.rank(deg), self.complex.rank(deg));
            for b in blocks {
                if let Some((_, t)) = to.block(&self.chains[b.chain], b.q, b.r) {
                    m.set_block(t.offset, b.offset, &Matrix::identity(ring, b.size()));
                }
            }
            comps.insert(deg, m);
        }
        ChainMap::from_components(ring, comps)
    }
}

/// Coaugmentation `C → RΓ(S, G)`, `c ↦ (y ↦ maps(y)(c))` on one-point
/// chains, for maps `C → G_y` compatible with generization. The nerve must
/// have the unit as its first argument.
pub(crate) fn coaugmentation(
    nerve: &HomNerve,
    g: &SheafComplex,
    src: &FreeChainComplex,
    mut maps: impl FnMut(Point) -> ChainMap,
) -> ChainMap {
    let ring = nerve.complex.ring();
    let mut comps = BTreeMap::new();
    for r in src.degrees() {
        comps.insert(r, Matrix::zeros(ring, nerve.complex.rank(r), src.rank(r)));
    }
    let points: Vec<Point> = nerve.chains.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    for y in points {
        let f = maps(y);
        for r in src.degrees() {
            if let Some((_, b)) = nerve.block(&[y], 0, r) {
                let m = f.component(r, src, g.stalk(y));
                comps.get_mut(&r).unwrap().set_block(b.offset, 0, &m);
            }
        }
    }
    ChainMap::from_components(ring, comps)
}
