//! Hom spaces, `Ext^1`, rigidity and endomorphism rings of representations.
//!
//! With arrows `j -> i` for `(i, j)` in `Omega`, the Euler form pairs rank
//! vectors in the order opposite to the modules:
//! `dim Hom(M, N) - dim Ext^1(M, N) = <rk N, rk M>` for locally free `M, N`.

use crate::algebra::{free_rank, is_locally_free, validate_rep, FreeData, GenModule, HPresentation};
use crate::cartan::RootVector;
use crate::error::{Error, Result};
use crate::field::{complement_indices, FieldSpec, Kernel, Mat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Basis of `Hom_H(M, N)` as per-vertex matrices `f_v: M_v -> N_v`.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub dim: usize,
    pub basis: Vec<Vec<Mat>>,
    shapes: Vec<(usize, usize)>,
    kernel: Kernel,
}

impl HomBasis {
    fn flatten(&self, f: &[Mat]) -> Vec<u64> {
        f.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    /// Coordinates of a homomorphism in this basis.
    pub fn coords(&self, f: &[Mat]) -> Vec<u64> {
        self.kernel.coords(&self.flatten(f))
    }

    /// The homomorphism with the given coordinates.
    pub fn combine(&self, coeffs: &[u64], field: &FieldSpec) -> Vec<Mat> {
        let mut out: Vec<Mat> = self.shapes.iter().map(|&(r, c)| Mat::zeros(r, c)).collect();
        for (b, &x) in self.basis.iter().zip(coeffs) {
            if x != 0 {
                for (o, m) in out.iter_mut().zip(b) {
                    *o = o.add(&m.scale(x, field), field);
                }
            }
        }
        out
    }
}

fn check_pair(pres: &HPresentation, m: &GenModule, n: &GenModule) -> Result<()> {
    for x in [m, n] {
        if !validate_rep(pres, x)? {
            return Err(Error::InvalidRep);
        }
    }
    Ok(())
}

/// Solves `f_v eps^M = eps^N f_v` and `f_t A^M = A^N f_s` for all vertices
/// and arrows. The basis is the echelon-form nullspace basis.
pub fn hom(pres: &HPresentation, m: &GenModule, n: &GenModule) -> Result<HomBasis> {
    check_pair(pres, m, n)?;
    let f = pres.field();
    let nv = pres.vertices();
    let shapes: Vec<(usize, usize)> = (0..nv).map(|v| (n.dims[v], m.dims[v])).collect();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + shapes[v].0 * shapes[v].1;
    }
    let var = |v: usize, a: usize, c: usize| offset[v] + a * m.dims[v] + c;
    let cols = offset[nv];

    let mut rows: Vec<Vec<u64>> = Vec::new();
    for v in (0..nv).filter(|&v| pres.has_loop(v)) {
        let (em, en) = (&m.eps[v], &n.eps[v]);
        for a in 0..n.dims[v] {
            for b in 0..m.dims[v] {
                let mut row = vec![0u64; cols];
                for c in 0..m.dims[v] {
                    let x = em[(c, b)];
                    if x != 0 {
                        row[var(v, a, c)] = f.add(row[var(v, a, c)], x);
                    }
                }
                for c in 0..n.dims[v] {
                    let x = en[(a, c)];
                    if x != 0 {
                        row[var(v, c, b)] = f.sub(row[var(v, c, b)], x);
                    }
                }
                rows.push(row);
            }
        }
    }
    for (k, arrow) in pres.arrows().iter().enumerate() {
        let (t, s) = (arrow.target, arrow.source);
        let (am, an) = (&m.arrows[k], &n.arrows[k]);
        for a in 0..n.dims[t] {
            for b in 0..m.dims[s] {
                let mut row = vec![0u64; cols];
                for c in 0..m.dims[t] {
                    let x = am[(c, b)];
                    if x != 0 {
                        row[var(t, a, c)] = f.add(row[var(t, a, c)], x);
                    }
                }
                for c in 0..n.dims[s] {
                    let x = an[(a, c)];
                    if x != 0 {
                        row[var(s, c, b)] = f.sub(row[var(s, c, b)], x);
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Mat::from_vec(rows.len(), cols, rows.into_iter().flatten().collect());
    let kernel = system.kernel(f);
    let basis = kernel
        .basis
        .iter()
        .map(|vec| {
            (0..nv)
                .map(|v| {
                    let (r, c) = shapes[v];
                    Mat::from_vec(r, c, vec[offset[v]..offset[v + 1]].to_vec())
                })
                .collect()
        })
        .collect();
    Ok(HomBasis { dim: kernel.dim(), basis, shapes, kernel })
}

fn rank_of(pres: &HPresentation, m: &GenModule) -> Result<RootVector> {
    is_locally_free(pres, m)?.ok_or(Error::NotLocallyFree)
}

/// `<rk N, rk M>`, the Euler characteristic `dim Hom(M, N) - dim Ext^1(M, N)`
/// for locally free `M` and `N`.
pub fn module_euler(pres: &HPresentation, rk_m: &RootVector, rk_n: &RootVector) -> Result<i64> {
    pres.data().euler_form(rk_n, rk_m)
}

/// `dim Ext^1(M, N)` from the Euler identity; both modules locally free.
pub fn ext1_euler(pres: &HPresentation, m: &GenModule, n: &GenModule) -> Result<usize> {
    let (rm, rn) = (rank_of(pres, m)?, rank_of(pres, n)?);
    let h = hom(pres, m, n)?.dim as i64;
    let e = h - module_euler(pres, &rm, &rn)?;
    usize::try_from(e).map_err(|_| Error::InvariantBroken)
}

/// Dimensions of the two-term complex computing `Hom` and `Ext^1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResolutionDims {
    pub hom: usize,
    pub ext1: usize,
}

/// `Hom` and `Ext^1` as kernel and cokernel of
/// `delta: (+)_v Hom_{H_v}(M_v, N_v) -> (+)_{arrows} Hom_{H_t}(tH_s (x) M_s, N_t)`,
/// `delta(f) = f_t M_a - N_a (1 (x) f_s)`, from the standard projective
/// resolution of the locally free module `M`.
pub fn resolution_dims(pres: &HPresentation, m: &GenModule, n: &GenModule) -> Result<ResolutionDims> {
    rank_of(pres, m)?;
    if !validate_rep(pres, n)? {
        return Err(Error::InvalidRep);
    }
    let f = pres.field();
    let nv = pres.vertices();

    // free generators of M_v and the inverse of the basis eps^u g_k (index k*c+u)
    let mut gens: Vec<Vec<usize>> = Vec::with_capacity(nv);
    let mut binv: Vec<Mat> = Vec::with_capacity(nv);
    for v in 0..nv {
        let c = pres.nilpotency(v);
        let eps = &m.eps[v];
        let g = complement_indices(&eps.column_basis(f), f);
        let mut cols = Vec::with_capacity(m.dims[v]);
        for &gk in &g {
            let mut x = vec![0u64; m.dims[v]];
            x[gk] = 1;
            for _ in 0..c {
                cols.push(x.clone());
                x = eps.mul_vec(&x, f);
            }
        }
        let b = Mat::from_cols(m.dims[v], &cols);
        binv.push(b.inverse(f).ok_or(Error::NotLocallyFree)?);
        gens.push(g);
    }
    let eps_pow_n: Vec<Vec<Mat>> = (0..nv)
        .map(|v| {
            let mut out = vec![Mat::identity(n.dims[v])];
            for _ in 1..pres.nilpotency(v) {
                let next = out.last().unwrap().mul(&n.eps[v], f);
                out.push(next);
            }
            out
        })
        .collect();

    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + gens[v].len() * n.dims[v];
    }
    let cols = offset[nv];
    let var = |v: usize, k: usize, l: usize| offset[v] + k * n.dims[v] + l;

    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (idx, a) in pres.arrows().iter().enumerate() {
        let (t, s) = (a.target, a.source);
        let ct = pres.nilpotency(t);
        let an_eps: Vec<Mat> =
            (0..a.right_exp).map(|t0| n.arrows[idx].mul(&eps_pow_n[s][t0], f)).collect();
        for (k, &gk) in gens[s].iter().enumerate() {
            let mut x = vec![0u64; m.dims[s]];
            x[gk] = 1;
            for an in an_eps.iter() {
                let image = m.arrows[idx].mul_vec(&x, f);
                let coeff = binv[t].mul_vec(&image, f);
                for l2 in 0..n.dims[t] {
                    let mut row = vec![0u64; cols];
                    for (pos, &cf) in coeff.iter().enumerate() {
                        if cf == 0 {
                            continue;
                        }
                        let (k2, u) = (pos / ct, pos % ct);
                        let e = &eps_pow_n[t][u];
                        for l in 0..n.dims[t] {
                            let w = e[(l2, l)];
                            if w != 0 {
                                let i = var(t, k2, l);
                                row[i] = f.add(row[i], f.mul(cf, w));
                            }
                        }
                    }
                    for l in 0..n.dims[s] {
                        let w = an[(l2, l)];
                        if w != 0 {
                            let i = var(s, k, l);
                            row[i] = f.sub(row[i], w);
                        }
                    }
                    rows.push(row);
                }
                x = m.eps[s].mul_vec(&x, f);
            }
        }
    }
    let nrows = rows.len();
    let rank = Mat::from_vec(nrows, cols, rows.into_iter().flatten().collect()).rank(f);
    Ok(ResolutionDims { hom: cols - rank, ext1: nrows - rank })
}

/// `dim Ext^1(M, N)` from the standard resolution; `M` locally free.
pub fn ext1_resolution(pres: &HPresentation, m: &GenModule, n: &GenModule) -> Result<usize> {
    resolution_dims(pres, m, n).map(|d| d.ext1)
}

/// `Ext^1(M, M) = 0` for locally free `M`.
pub fn is_rigid(pres: &HPresentation, m: &GenModule) -> Result<bool> {
    Ok(ext1_euler(pres, m, m)? == 0)
}

fn check_ranks(pres: &HPresentation, r: &RootVector) -> Result<Vec<usize>> {
    if r.len() != pres.vertices() {
        return Err(Error::DimensionMismatch { expected: pres.vertices(), got: r.len() });
    }
    r.coords()
        .iter()
        .map(|&x| usize::try_from(x).map_err(|_| Error::Malformed(format!("negative rank in {r}"))))
        .collect()
}

fn try_rigid(pres: &HPresentation, ranks: &[usize], target: usize, seed: u64, t: usize) -> Option<GenModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    let m = FreeData::random(pres, ranks, &mut rng).realize(pres);
    match hom(pres, &m, &m) {
        Ok(h) if h.dim == target => Some(m),
        _ => None,
    }
}

fn rigid_target(pres: &HPresentation, r: &RootVector, tries: usize) -> Result<usize> {
    let q = pres.data().euler_form(r, r)?;
    if q < 0 || (q == 0 && !r.is_zero()) {
        return Err(Error::NotFound(r.clone(), tries));
    }
    Ok(q as usize)
}

/// Samples random locally free modules of rank `r` (try `t` uses stream `t`
/// of a ChaCha8 generator seeded with `seed`) and returns the first whose
/// endomorphism ring has the minimal dimension `<r, r>`, i.e. the first
/// rigid one.
pub fn generic_rigid(pres: &HPresentation, r: &RootVector, seed: u64, tries: usize) -> Result<GenModule> {
    let ranks = check_ranks(pres, r)?;
    let target = rigid_target(pres, r, tries)?;
    (0..tries)
        .find_map(|t| try_rigid(pres, &ranks, target, seed, t))
        .ok_or_else(|| Error::NotFound(r.clone(), tries))
}

/// Parallel [`generic_rigid`]; the lowest successful try index wins, so the
/// result is identical.
pub fn generic_rigid_parallel(
    pres: &HPresentation,
    r: &RootVector,
    seed: u64,
    tries: usize,
) -> Result<GenModule> {
    let ranks = check_ranks(pres, r)?;
    let target = rigid_target(pres, r, tries)?;
    (0..tries)
        .into_par_iter()
        .find_map_first(|t| try_rigid(pres, &ranks, target, seed, t))
        .ok_or_else(|| Error::NotFound(r.clone(), tries))
}

/// Structure of `End_H(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndReport {
    pub dim: usize,
    pub is_local: bool,
    pub residue_dim: usize,
    pub nilpotency: usize,
    pub is_truncated_polynomial: bool,
    /// `M` is free over `End(M)` (only tested when truncated polynomial).
    pub free_over_end: bool,
    #[serde(skip)]
    pub generator: Option<Vec<Mat>>,
}

struct EndAlgebra {
    dim: usize,
    gamma: Vec<Vec<Vec<u64>>>,
}

impl EndAlgebra {
    fn mul(&self, u: &[u64], v: &[u64], f: &FieldSpec) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for (a, &x) in u.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (b, &y) in v.iter().enumerate().filter(|(_, y)| **y != 0) {
                let xy = f.mul(x, y);
                for (e, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(xy, self.gamma[a][b][e]));
                }
            }
        }
        out
    }

    fn pow(&self, x: &[u64], e: usize, f: &FieldSpec, one: &[u64]) -> Vec<u64> {
        (0..e).fold(one.to_vec(), |acc, _| self.mul(&acc, x, f))
    }
}

fn span_basis(vectors: &[Vec<u64>], dim: usize, f: &FieldSpec) -> Vec<Vec<u64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_cols(dim, vectors);
    let b = m.column_basis(f);
    (0..b.cols()).map(|c| b.col(c)).collect()
}

/// Multiplication table, radical (trace-form criterion), nilpotency degree,
/// and a truncated-polynomial generator of `End_H(M)` if one exists.
pub fn end_algebra(pres: &HPresentation, m: &GenModule) -> Result<EndReport> {
    let f = pres.field();
    let hb = hom(pres, m, m)?;
    let d = hb.dim;
    if f.p() <= d as u64 {
        return Err(Error::FieldTooSmall { p: f.p(), dim: d });
    }
    let gamma: Vec<Vec<Vec<u64>>> = hb
        .basis
        .iter()
        .map(|x| {
            hb.basis
                .iter()
                .map(|y| {
                    let prod: Vec<Mat> = x.iter().zip(y).map(|(a, b)| a.mul(b, f)).collect();
                    hb.coords(&prod)
                })
                .collect()
        })
        .collect();
    let alg = EndAlgebra { dim: d, gamma };
    let identity: Vec<Mat> = m.dims.iter().map(|&k| Mat::identity(k)).collect();
    let one = hb.coords(&identity);

    // trace of left multiplication by basis element e
    let traces: Vec<u64> =
        (0..d).map(|e| (0..d).fold(0, |acc, b| f.add(acc, alg.gamma[e][b][b]))).collect();
    let mut gram = Mat::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            gram[(a, b)] =
                (0..d).fold(0, |acc, e| f.add(acc, f.mul(alg.gamma[a][b][e], traces[e])));
        }
    }
    let rad = gram.kernel(f).basis;
    let residue_dim = d - rad.len();
    let is_local = residue_dim == 1;

    let mut nilpotency = 1;
    let mut power = rad.clone();
    while !power.is_empty() && nilpotency <= d {
        let products: Vec<Vec<u64>> = power
            .iter()
            .flat_map(|x| rad.iter().map(|y| alg.mul(x, y, f)))
            .collect();
        power = span_basis(&products, d, f);
        nilpotency += 1;
    }

    let mut generator = None;
    if is_local {
        let mut candidates: Vec<Vec<u64>> = rad.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..16 {
            let mut x = vec![0u64; d];
            for r in &rad {
                let s = rng.gen_range(0..f.p());
                for (xi, ri) in x.iter_mut().zip(r) {
                    *xi = f.add(*xi, f.mul(s, *ri));
                }
            }
            candidates.push(x);
        }
        if d == 1 {
            candidates = vec![vec![0]];
        }
        generator = candidates.into_iter().find(|x| {
            alg.pow(x, d - 1, f, &one).iter().any(|&v| v != 0)
                && alg.pow(x, d, f, &one).iter().all(|&v| v == 0)
        });
    }
    let generator = generator.map(|x| hb.combine(&x, f));
    let is_truncated_polynomial = generator.is_some();
    let free_over_end = match &generator {
        Some(x) => x.iter().all(|xv| free_rank(xv, d, f).is_some()),
        None => false,
    };
    Ok(EndReport {
        dim: d,
        is_local,
        residue_dim,
        nilpotency,
        is_truncated_polynomial,
        free_over_end,
        generator,
    })
}

/// `M / rad_E(M)` with `rad_E(M) = x M` for the radical generator `x` of
/// `End(M)`, and whether the quotient is a brick.
#[derive(Debug, Clone)]
pub struct BrickReport {
    pub dims: RootVector,
    pub is_brick: bool,
    pub module: GenModule,
}

/// Quotient of `m` by the submodule with per-vertex column spans `sub`.
pub fn quotient(pres: &HPresentation, m: &GenModule, sub: &[Mat]) -> Result<GenModule> {
    let f = pres.field();
    let nv = pres.vertices();
    let mut proj = Vec::with_capacity(nv);
    let mut emb = Vec::with_capacity(nv);
    for v in 0..nv {
        let u = sub[v].column_basis(f);
        let s = complement_indices(&u, f);
        let dim = m.dims[v];
        let mut cols: Vec<Vec<u64>> = (0..u.cols()).map(|c| u.col(c)).collect();
        let mut e = Mat::zeros(dim, s.len());
        for (k, &i) in s.iter().enumerate() {
            let mut x = vec![0u64; dim];
            x[i] = 1;
            cols.push(x);
            e[(i, k)] = 1;
        }
        let tinv = Mat::from_cols(dim, &cols)
            .inverse(f)
            .ok_or_else(|| Error::ShapeMismatch("submodule basis".into()))?;
        let rows: Vec<usize> = (u.cols()..dim).collect();
        let p = tinv.transpose().select_cols(&rows).transpose();
        proj.push(p);
        emb.push(e);
    }
    let dims: Vec<usize> = emb.iter().map(Mat::cols).collect();
    let eps = (0..nv).map(|v| proj[v].mul(&m.eps[v], f).mul(&emb[v], f)).collect();
    let arrows = pres
        .arrows()
        .iter()
        .zip(&m.arrows)
        .map(|(a, x)| proj[a.target].mul(x, f).mul(&emb[a.source], f))
        .collect();
    let q = GenModule { dims, eps, arrows };
    if !validate_rep(pres, &q)? {
        return Err(Error::InvalidRep);
    }
    Ok(q)
}

/// `M / rad_E(M)` for an indecomposable rigid locally free `M` whose
/// endomorphism ring is truncated polynomial of dimension `<r, r>`.
pub fn brick_of(pres: &HPresentation, m: &GenModule) -> Result<BrickReport> {
    let r = rank_of(pres, m)?;
    let report = end_algebra(pres, m)?;
    let q = pres.data().euler_form(&r, &r)?;
    let x = match report.generator {
        Some(x) if report.dim as i64 == q => x,
        _ => return Err(Error::NotRigidIndecomposable),
    };
    let module = quotient(pres, m, &x)?;
    let is_brick = hom(pres, &module, &module)?.dim == 1;
    Ok(BrickReport { dims: module.dim_vector(), is_brick, module })
}

/// Block-diagonal direct sum.
pub fn direct_sum(m: &GenModule, n: &GenModule) -> Result<GenModule> {
    if m.dims.len() != n.dims.len() || m.arrows.len() != n.arrows.len() {
        return Err(Error::ShapeMismatch("summands over different presentations".into()));
    }
    Ok(GenModule {
        dims: m.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect(),
        eps: m.eps.iter().zip(&n.eps).map(|(a, b)| a.block_diag(b)).collect(),
        arrows: m.arrows.iter().zip(&n.arrows).map(|(a, b)| a.block_diag(b)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{generalized_simple, injective, projective, random_locally_free};
    use crate::cartan::examples::*;
    use crate::cartan::CartanData;

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    fn pres(d: &CartanData) -> HPresentation {
        HPresentation::new(d, FieldSpec::default())
    }

    #[test]
    fn end_of_generalized_simples() {
        for (_, d) in finite_battery() {
            let h = pres(&d);
            for i in 0..d.rank() {
                let e = generalized_simple(&h, i).unwrap();
                assert_eq!(hom(&h, &e, &e).unwrap().dim as i64, d.c_i(i));
                assert_eq!(ext1_euler(&h, &e, &e).unwrap(), 0);
                assert!(is_rigid(&h, &e).unwrap());
            }
        }
    }

    #[test]
    fn hom_basis_elements_intertwine() {
        let h = pres(&b3());
        let m = projective(&h, 2).unwrap();
        let n = injective(&h, 0).unwrap();
        let hb = hom(&h, &m, &n).unwrap();
        let f = h.field();
        assert!(hb.dim > 0);
        for b in &hb.basis {
            for v in 0..3 {
                assert_eq!(b[v].mul(&m.eps[v], f), n.eps[v].mul(&b[v], f));
            }
            for (k, a) in h.arrows().iter().enumerate() {
                assert_eq!(b[a.target].mul(&m.arrows[k], f), n.arrows[k].mul(&b[a.source], f));
            }
        }
    }

    #[test]
    fn hom_from_projective_is_vertex_space() {
        let h = pres(&c2_affine());
        let p2 = projective(&h, 1).unwrap();
        assert_eq!(hom(&h, &p2, &p2).unwrap().dim, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let ranks: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            let x = random_locally_free(&h, &ranks, &mut rng);
            for i in 0..3 {
                let p = projective(&h, i).unwrap();
                assert_eq!(hom(&h, &p, &x).unwrap().dim, x.dims[i]);
                assert_eq!(ext1_resolution(&h, &p, &x).unwrap(), 0);
            }
        }
    }

    #[test]
    fn no_maps_between_distinct_simples_without_arrows() {
        let d = CartanData::validate(vec![vec![2, 0], vec![0, 2]], vec![2, 3], &[]).unwrap();
        let h = pres(&d);
        let (e1, e2) = (generalized_simple(&h, 0).unwrap(), generalized_simple(&h, 1).unwrap());
        assert_eq!(hom(&h, &e1, &e2).unwrap().dim, 0);
        assert_eq!(hom(&h, &e2, &e1).unwrap().dim, 0);
    }

    #[test]
    fn b3_ext_between_simples_follows_arrows() {
        // arrow a23: 3 -> 2, so extensions of E_3 by E_2 exist, not conversely
        let h = pres(&b3());
        let (e2, e3) = (generalized_simple(&h, 1).unwrap(), generalized_simple(&h, 2).unwrap());
        assert_eq!(ext1_resolution(&h, &e2, &e3).unwrap(), 0);
        assert_eq!(ext1_euler(&h, &e2, &e3).unwrap(), 0);
        assert_eq!(ext1_resolution(&h, &e3, &e2).unwrap(), 2);
        assert_eq!(ext1_euler(&h, &e3, &e2).unwrap(), 2);
    }

    #[test]
    fn euler_identity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (name, d) in finite_battery().into_iter().chain([("C~2", c2_affine())]) {
            let h = pres(&d);
            for _ in 0..15 {
                let r1: Vec<usize> = (0..d.rank()).map(|_| rng.gen_range(0..3)).collect();
                let r2: Vec<usize> = (0..d.rank()).map(|_| rng.gen_range(0..3)).collect();
                let m = random_locally_free(&h, &r1, &mut rng);
                let n = random_locally_free(&h, &r2, &mut rng);
                let res = resolution_dims(&h, &m, &n).unwrap();
                assert_eq!(res.hom, hom(&h, &m, &n).unwrap().dim, "{name}");
                assert_eq!(res.ext1, ext1_euler(&h, &m, &n).unwrap(), "{name} {r1:?} {r2:?}");
            }
        }
    }

    #[test]
    fn generic_rigid_b3() {
        let h = pres(&b3());
        let m = generic_rigid(&h, &rv(&[1, 2, 2]), 0, 32).unwrap();
        assert_eq!(hom(&h, &m, &m).unwrap().dim, 2);
        assert_eq!(ext1_euler(&h, &m, &m).unwrap(), 0);
        assert_eq!(ext1_resolution(&h, &m, &m).unwrap(), 0);
        let p = generic_rigid_parallel(&h, &rv(&[1, 2, 2]), 0, 32).unwrap();
        assert_eq!(m, p);
        let e = generic_rigid(&h, &rv(&[1, 0, 0]), 0, 32).unwrap();
        assert_eq!(hom(&h, &e, &e).unwrap().dim, 2);
    }

    #[test]
    fn null_root_is_never_rigid() {
        let h = pres(&c2_affine());
        let delta = rv(&[1, 2, 1]);
        assert_eq!(generic_rigid(&h, &delta, 0, 64), Err(Error::NotFound(delta.clone(), 64)));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_locally_free(&h, &[1, 2, 1], &mut rng);
        assert!(hom(&h, &m, &m).unwrap().dim >= 1);
        assert!(!is_rigid(&h, &m).unwrap());
    }

    #[test]
    fn end_reports() {
        let h = pres(&b3());
        let e1 = generalized_simple(&h, 0).unwrap();
        let rep = end_algebra(&h, &e1).unwrap();
        assert_eq!((rep.dim, rep.is_local, rep.residue_dim, rep.nilpotency), (2, true, 1, 2));
        assert!(rep.is_truncated_polynomial && rep.free_over_end);

        let m = generic_rigid(&h, &rv(&[1, 2, 2]), 0, 32).unwrap();
        let rep = end_algebra(&h, &m).unwrap();
        assert_eq!((rep.dim, rep.residue_dim, rep.nilpotency), (2, 1, 2));
        assert!(rep.is_truncated_polynomial && rep.free_over_end);

        let two = direct_sum(&e1, &e1).unwrap();
        let rep = end_algebra(&h, &two).unwrap();
        assert_eq!(rep.dim, 8);
        assert!(!rep.is_local);
        assert_eq!(rep.residue_dim, 4);
        assert!(!rep.is_truncated_polynomial);
    }

    #[test]
    fn end_of_a1_with_large_symmetrizer() {
        let h = pres(&a1(4));
        let e = generalized_simple(&h, 0).unwrap();
        let rep = end_algebra(&h, &e).unwrap();
        assert_eq!((rep.dim, rep.nilpotency), (4, 4));
        assert!(rep.is_truncated_polynomial && rep.free_over_end);
    }

    #[test]
    fn field_too_small() {
        let f = FieldSpec::new(97).unwrap();
        let h = HPresentation::new(&a2(), f);
        let e = generalized_simple(&h, 0).unwrap();
        let mut big = e.clone();
        for _ in 0..96 {
            big = direct_sum(&big, &e).unwrap();
        }
        assert!(matches!(end_algebra(&h, &big), Err(Error::FieldTooSmall { .. })));
    }

    #[test]
    fn bricks() {
        let h = pres(&b3());
        let m = generic_rigid(&h, &rv(&[1, 2, 2]), 0, 32).unwrap();
        let b = brick_of(&h, &m).unwrap();
        assert_eq!(b.dims, rv(&[1, 2, 1]));
        assert!(b.is_brick);
        for i in 0..3 {
            let e = generalized_simple(&h, i).unwrap();
            let b = brick_of(&h, &e).unwrap();
            assert_eq!(b.dims, RootVector::simple(3, i));
            assert!(b.is_brick);
        }
        let e1 = generalized_simple(&h, 0).unwrap();
        let two = direct_sum(&e1, &e1).unwrap();
        assert_eq!(brick_of(&h, &two).unwrap_err(), Error::NotRigidIndecomposable);
    }

    #[test]
    fn direct_sum_properties() {
        let h = pres(&b3());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_locally_free(&h, &[1, 1, 0], &mut rng);
        let n = random_locally_free(&h, &[0, 1, 2], &mut rng);
        let p = projective(&h, 2).unwrap();
        let s = direct_sum(&m, &n).unwrap();
        assert!(validate_rep(&h, &s).unwrap());
        assert_eq!(is_locally_free(&h, &s).unwrap(), Some(rv(&[1, 2, 2])));
        assert_eq!(
            hom(&h, &s, &p).unwrap().dim,
            hom(&h, &m, &p).unwrap().dim + hom(&h, &n, &p).unwrap().dim
        );
        let z = crate::algebra::GenModule::zero(&h);
        assert_eq!(direct_sum(&m, &z).unwrap(), m);
    }

    #[test]
    fn not_locally_free_rejected() {
        let h = pres(&b3());
        let s1 = GenModule {
            dims: vec![1, 0, 0],
            eps: vec![Mat::zeros(1, 1), Mat::zeros(0, 0), Mat::zeros(0, 0)],
            arrows: vec![Mat::zeros(1, 0), Mat::zeros(0, 0)],
        };
        assert_eq!(ext1_euler(&h, &s1, &s1), Err(Error::NotLocallyFree));
        assert_eq!(is_rigid(&h, &s1), Err(Error::NotLocallyFree));
        let e = generalized_simple(&h, 1).unwrap();
        assert!(ext1_resolution(&h, &e, &s1).is_ok());
        assert_eq!(ext1_resolution(&h, &s1, &e), Err(Error::NotLocallyFree));
    }
}
