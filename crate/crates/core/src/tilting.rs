//! Rigid atlases, support tilting pairs and their exchange graph.

use crate::algebra::{GenModule, HPresentation};
use crate::cartan::{CartanData, RootVector};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::modrep::{ext1_euler, generic_rigid};
use crate::schur::enumerate_schur;
use crate::weyl::{finite_roots, is_finite_type};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// One rigid locally free module per real Schur root.
#[derive(Debug, Clone)]
pub struct RigidAtlas {
    pub pres: HPresentation,
    pub entries: BTreeMap<RootVector, GenModule>,
}

impl RigidAtlas {
    pub fn keys(&self) -> Vec<RootVector> {
        self.entries.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: &RootVector) -> Result<&GenModule> {
        self.entries.get(r).ok_or_else(|| Error::KeyMissing(r.clone()))
    }
}

fn schur_keys(data: &CartanData) -> Result<Vec<RootVector>> {
    if !is_finite_type(data) {
        return Err(Error::InfiniteType);
    }
    let bound = finite_roots(data)?.positive().iter().map(RootVector::max_abs).max().unwrap_or(1);
    Ok(enumerate_schur(data, bound.max(1))?.roots)
}

/// Generic rigid module for every Schur root of a finite-type datum.
pub fn rigid_atlas(data: &CartanData, field: FieldSpec, seed: u64, tries: usize) -> Result<RigidAtlas> {
    build_atlas(data, field, seed, tries, false)
}

/// [`rigid_atlas`] with the roots processed on the rayon pool.
pub fn rigid_atlas_parallel(
    data: &CartanData,
    field: FieldSpec,
    seed: u64,
    tries: usize,
) -> Result<RigidAtlas> {
    build_atlas(data, field, seed, tries, true)
}

fn build_atlas(
    data: &CartanData,
    field: FieldSpec,
    seed: u64,
    tries: usize,
    parallel: bool,
) -> Result<RigidAtlas> {
    let keys = schur_keys(data)?;
    let pres = HPresentation::new(data, field);
    let find = |r: &RootVector| -> Result<(RootVector, GenModule)> {
        match generic_rigid(&pres, r, seed, tries) {
            Ok(m) => Ok((r.clone(), m)),
            Err(Error::NotFound(..)) => Err(Error::AtlasIncomplete(r.clone())),
            Err(e) => Err(e),
        }
    };
    let found: Vec<(RootVector, GenModule)> = if parallel {
        keys.par_iter().map(find).collect::<Result<_>>()?
    } else {
        keys.iter().map(find).collect::<Result<_>>()?
    };
    Ok(RigidAtlas { pres, entries: found.into_iter().collect() })
}

/// `Ext^1` vanishes in both directions between the two atlas entries.
pub fn compatible(atlas: &RigidAtlas, r1: &RootVector, r2: &RootVector) -> Result<bool> {
    let (m1, m2) = (atlas.get(r1)?, atlas.get(r2)?);
    Ok(ext1_euler(&atlas.pres, m1, m2)? == 0 && ext1_euler(&atlas.pres, m2, m1)? == 0)
}

/// Pairwise compatibility matrix over the atlas keys (in key order).
pub fn compatibility_matrix(atlas: &RigidAtlas, parallel: bool) -> Result<Vec<Vec<bool>>> {
    let keys = atlas.keys();
    let k = keys.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect();
    let eval = |&(a, b): &(usize, usize)| compatible(atlas, &keys[a], &keys[b]);
    let values: Vec<bool> = if parallel {
        pairs.par_iter().map(eval).collect::<Result<_>>()?
    } else {
        pairs.iter().map(eval).collect::<Result<_>>()?
    };
    let mut m = vec![vec![false; k]; k];
    for (&(a, b), v) in pairs.iter().zip(values) {
        m[a][b] = v;
        m[b][a] = v;
    }
    Ok(m)
}

/// A support tilting pair: rigid summands `t` (atlas keys) and projective
/// vertices `p` (0-based) with `|t| + |p| = n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportTiltingPair {
    pub t: Vec<RootVector>,
    pub p: Vec<usize>,
}

/// A summand of `T (+) P`, tagged so module keys and projective vertices never
/// coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    Module(RootVector),
    Projective(usize),
}

impl SupportTiltingPair {
    pub fn summands(&self) -> BTreeSet<Summand> {
        self.t
            .iter()
            .cloned()
            .map(Summand::Module)
            .chain(self.p.iter().map(|&i| Summand::Projective(i)))
            .collect()
    }

    /// `T:{(r1)|(r2)};P:{i,...}` with 1-based vertices.
    pub fn label(&self) -> String {
        let t: Vec<String> = self.t.iter().map(ToString::to_string).collect();
        let p: Vec<String> = self.p.iter().map(|i| (i + 1).to_string()).collect();
        format!("T:{{{}}};P:{{{}}}", t.join("|"), p.join(","))
    }
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: &mut Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count());
    let pivot = pivot.expect("p or x is non-empty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in candidates {
        r.push(v);
        let np = p.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
        let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Maximal cliques of the graph restricted to `vertices`.
fn maximal_cliques(adj: &[Vec<bool>], vertices: &[usize]) -> Vec<Vec<usize>> {
    let simple: Vec<Vec<bool>> = adj
        .iter()
        .enumerate()
        .map(|(u, row)| row.iter().enumerate().map(|(v, &x)| x && u != v).collect())
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&simple, &mut Vec::new(), vertices.to_vec(), Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out
}

fn pairs_for_support(
    keys: &[RootVector],
    compat: &[Vec<bool>],
    n: usize,
    mask: usize,
) -> Vec<SupportTiltingPair> {
    let inside = |r: &RootVector| (0..n).all(|i| mask >> i & 1 == 1 || r.0[i] == 0);
    let vertices: Vec<usize> = (0..keys.len()).filter(|&k| compat[k][k] && inside(&keys[k])).collect();
    let size = mask.count_ones() as usize;
    let p: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
    maximal_cliques(compat, &vertices)
        .into_iter()
        .filter(|c| c.len() == size)
        .map(|c| SupportTiltingPair { t: c.into_iter().map(|k| keys[k].clone()).collect(), p: p.clone() })
        .collect()
}

/// All support tilting pairs, via exact clique enumeration per support set.
pub fn support_tilting_pairs(atlas: &RigidAtlas, parallel: bool) -> Result<Vec<SupportTiltingPair>> {
    let data = atlas.pres.data();
    if !is_finite_type(data) {
        return Err(Error::InfiniteType);
    }
    let n = data.rank();
    let keys = atlas.keys();
    let compat = compatibility_matrix(atlas, parallel)?;
    let masks: Vec<usize> = (0..1usize << n).collect();
    let found: Vec<Vec<SupportTiltingPair>> = if parallel {
        masks.par_iter().map(|&m| pairs_for_support(&keys, &compat, n, m)).collect()
    } else {
        masks.iter().map(|&m| pairs_for_support(&keys, &compat, n, m)).collect()
    };
    let all: BTreeSet<SupportTiltingPair> = found.into_iter().flatten().collect();
    Ok(all.into_iter().collect())
}

/// Vertices are support tilting pairs; edges join pairs sharing `n - 1`
/// summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    pub n: usize,
    pub vertices: Vec<SupportTiltingPair>,
    pub edges: Vec<(usize, usize)>,
}

pub fn exchange_graph(n: usize, pairs: &[SupportTiltingPair]) -> ExchangeGraph {
    let summands: Vec<BTreeSet<Summand>> = pairs.iter().map(SupportTiltingPair::summands).collect();
    let mut edges = Vec::new();
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            if summands[a].intersection(&summands[b]).count() + 1 == n {
                edges.push((a, b));
            }
        }
    }
    ExchangeGraph { n, vertices: pairs.to_vec(), edges }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub regular: bool,
    pub degree: usize,
    pub connected: bool,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Exact `n`-regularity and union-find connectivity.
pub fn check_graph(g: &ExchangeGraph, n: usize) -> GraphReport {
    let v = g.vertices.len();
    let mut degree = vec![0usize; v];
    let mut parent: Vec<usize> = (0..v).collect();
    for &(a, b) in &g.edges {
        degree[a] += 1;
        degree[b] += 1;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let roots: BTreeSet<usize> = (0..v).map(|x| find(&mut parent, x)).collect();
    GraphReport { regular: degree.iter().all(|&d| d == n), degree: n, connected: roots.len() <= 1 }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "T")]
    pub t: Vec<RootVector>,
    #[serde(rename = "P")]
    pub p: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeGraphJson {
    pub n: usize,
    pub vertices: Vec<PairJson>,
    pub edges: Vec<[usize; 2]>,
}

impl ExchangeGraph {
    /// Edges as unordered pairs of vertex labels, independent of vertex order.
    pub fn labelled_edges(&self) -> BTreeSet<(SupportTiltingPair, SupportTiltingPair)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.vertices[a].clone(), self.vertices[b].clone());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect()
    }

    /// Same vertex labels and the same labelled edges.
    pub fn same_labelled_graph(&self, other: &ExchangeGraph) -> bool {
        let va: BTreeSet<_> = self.vertices.iter().collect();
        let vb: BTreeSet<_> = other.vertices.iter().collect();
        va == vb && self.labelled_edges() == other.labelled_edges()
    }

    pub fn to_json(&self) -> ExchangeGraphJson {
        ExchangeGraphJson {
            n: self.n,
            vertices: self
                .vertices
                .iter()
                .map(|v| PairJson { t: v.t.clone(), p: v.p.iter().map(|i| i + 1).collect() })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph exchange {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", v.label());
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        s.push_str("}\n");
        s
    }
}
