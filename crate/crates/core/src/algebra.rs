//! The algebra `H = H_F(C, D, Omega)` as a quiver with relations over a
//! prime field, and its representations.
//!
//! Vertex `i` carries a loop `eps_i` with `eps_i^{c_i} = 0` (omitted when
//! `c_i = 1`). Each `(i, j)` in `Omega` contributes `g_ij` arrows
//! `alpha_ij: j -> i` subject to `eps_i^{f_ji} alpha_ij = alpha_ij eps_j^{f_ij}`.

use crate::cartan::{CartanData, RootVector};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Mat};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// An arrow `source -> target` with commutation relation
/// `eps_target^{left_exp} A = A eps_source^{right_exp}`.
///
/// The bimodule it generates is free of rank `right_exp` as a left module
/// and of rank `left_exp` as a right module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub target: usize,
    pub source: usize,
    /// Multiplicity index `0..g`.
    pub copy: usize,
    pub left_exp: usize,
    pub right_exp: usize,
}

impl Arrow {
    /// Label `a{i}{j}` or `a{i}{j}^{g}` with 1-based vertices.
    pub fn label(&self) -> String {
        if self.copy == 0 {
            format!("a{}{}", self.target + 1, self.source + 1)
        } else {
            format!("a{}{}^{}", self.target + 1, self.source + 1, self.copy + 1)
        }
    }

    /// JSON key `"i,j,g"` (1-based).
    pub fn key(&self) -> String {
        format!("{},{},{}", self.target + 1, self.source + 1, self.copy + 1)
    }
}

/// A defining relation of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// `eps_vertex^exponent = 0`.
    Nilpotent { vertex: usize, exponent: usize },
    /// `eps_t^left A = A eps_s^right` for the arrow at this index.
    Commutation { arrow: usize, left: usize, right: usize },
}

/// Quiver-with-relations presentation of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPresentation {
    data: CartanData,
    field: FieldSpec,
    nilpotency: Vec<usize>,
    arrows: Vec<Arrow>,
}

impl HPresentation {
    pub fn new(data: &CartanData, field: FieldSpec) -> Self {
        let mut arrows = Vec::new();
        for &(i, j) in data.orientation() {
            let lc = data.local_constants(i, j).expect("oriented pairs are adjacent");
            for copy in 0..lc.g as usize {
                arrows.push(Arrow {
                    target: i,
                    source: j,
                    copy,
                    left_exp: lc.f_ji as usize,
                    right_exp: lc.f_ij as usize,
                });
            }
        }
        let nilpotency = data.symmetrizer().iter().map(|&c| c as usize).collect();
        HPresentation { data: data.clone(), field, nilpotency, arrows }
    }

    /// Presentation of `H^op`: arrows reversed, relation exponents swapped.
    pub(crate) fn opposite(&self) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                target: a.source,
                source: a.target,
                copy: a.copy,
                left_exp: a.right_exp,
                right_exp: a.left_exp,
            })
            .collect();
        HPresentation { arrows, ..self.clone() }
    }

    pub fn data(&self) -> &CartanData {
        &self.data
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn vertices(&self) -> usize {
        self.nilpotency.len()
    }

    /// `c_i`.
    pub fn nilpotency(&self, i: usize) -> usize {
        self.nilpotency[i]
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.nilpotency[i] > 1
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Relations that are not implied by nilpotency of the loops.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out: Vec<Relation> = (0..self.vertices())
            .filter(|&i| self.has_loop(i))
            .map(|i| Relation::Nilpotent { vertex: i, exponent: self.nilpotency[i] })
            .collect();
        for (k, a) in self.arrows.iter().enumerate() {
            let trivial =
                a.left_exp >= self.nilpotency[a.target] && a.right_exp >= self.nilpotency[a.source];
            if !trivial {
                out.push(Relation::Commutation { arrow: k, left: a.left_exp, right: a.right_exp });
            }
        }
        out
    }

    /// Human-readable relations, e.g. `e1^2 = 0`, `e1 a12 = a12 e2`.
    pub fn relation_strings(&self) -> Vec<String> {
        let pow = |v: usize, e: usize| {
            if e == 1 {
                format!("e{}", v + 1)
            } else {
                format!("e{}^{}", v + 1, e)
            }
        };
        self.relations()
            .into_iter()
            .map(|r| match r {
                Relation::Nilpotent { vertex, exponent } => format!("{} = 0", pow(vertex, exponent)),
                Relation::Commutation { arrow, left, right } => {
                    let a = &self.arrows[arrow];
                    let lhs = if left >= self.nilpotency[a.target] {
                        "0".to_string()
                    } else {
                        format!("{} {}", pow(a.target, left), a.label())
                    };
                    let rhs = if right >= self.nilpotency[a.source] {
                        "0".to_string()
                    } else {
                        format!("{} {}", a.label(), pow(a.source, right))
                    };
                    format!("{lhs} = {rhs}")
                }
            })
            .collect()
    }

    /// Vertices ordered so that every arrow goes from an earlier to a later one.
    pub(crate) fn topological_order(&self) -> Vec<usize> {
        let n = self.vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        assert_eq!(order.len(), n, "quiver of H is acyclic");
        order
    }
}

/// Shorthand for [`HPresentation::new`].
pub fn presentation(data: &CartanData, field: FieldSpec) -> HPresentation {
    HPresentation::new(data, field)
}

/// A finite-dimensional representation of `H` over the prime field.
///
/// `eps[i]` is a `dims[i] x dims[i]` matrix (zero when `c_i = 1`), and
/// `arrows[k]` is a `dims[target] x dims[source]` matrix for the `k`-th
/// arrow of the presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenModule {
    pub dims: Vec<usize>,
    pub eps: Vec<Mat>,
    pub arrows: Vec<Mat>,
}

impl GenModule {
    pub fn zero(pres: &HPresentation) -> Self {
        GenModule {
            dims: vec![0; pres.vertices()],
            eps: vec![Mat::zeros(0, 0); pres.vertices()],
            arrows: vec![Mat::zeros(0, 0); pres.arrows().len()],
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim_vector(&self) -> RootVector {
        RootVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    /// Conjugates by per-vertex invertible matrices `g_i`: `eps_i -> g eps g^-1`,
    /// `A -> g_t A g_s^-1`. The result is isomorphic to `self`.
    pub fn conjugate(&self, pres: &HPresentation, g: &[Mat]) -> Result<GenModule> {
        let f = pres.field();
        let ginv: Vec<Mat> = g
            .iter()
            .map(|m| m.inverse(f).ok_or_else(|| Error::ShapeMismatch("singular base change".into())))
            .collect::<Result<_>>()?;
        let eps = (0..self.dims.len()).map(|i| g[i].mul(&self.eps[i], f).mul(&ginv[i], f)).collect();
        let arrows = pres
            .arrows()
            .iter()
            .zip(&self.arrows)
            .map(|(a, m)| g[a.target].mul(m, f).mul(&ginv[a.source], f))
            .collect();
        Ok(GenModule { dims: self.dims.clone(), eps, arrows })
    }

    /// Dual module `D M = Hom_F(M, F)` over the opposite presentation.
    pub(crate) fn dual(&self) -> GenModule {
        GenModule {
            dims: self.dims.clone(),
            eps: self.eps.iter().map(Mat::transpose).collect(),
            arrows: self.arrows.iter().map(Mat::transpose).collect(),
        }
    }
}

fn check_shapes(pres: &HPresentation, m: &GenModule) -> Result<()> {
    let n = pres.vertices();
    if m.dims.len() != n || m.eps.len() != n || m.arrows.len() != pres.arrows().len() {
        return Err(Error::ShapeMismatch("module does not match the presentation".into()));
    }
    for i in 0..n {
        if m.eps[i].shape() != (m.dims[i], m.dims[i]) {
            return Err(Error::ShapeMismatch(format!("loop matrix at vertex {}", i + 1)));
        }
    }
    for (a, mat) in pres.arrows().iter().zip(&m.arrows) {
        if mat.shape() != (m.dims[a.target], m.dims[a.source]) {
            return Err(Error::ShapeMismatch(format!("arrow {}", a.label())));
        }
    }
    Ok(())
}

/// True iff all nilpotency and commutation relations hold exactly.
pub fn validate_rep(pres: &HPresentation, m: &GenModule) -> Result<bool> {
    check_shapes(pres, m)?;
    let f = pres.field();
    for i in 0..pres.vertices() {
        if !m.eps[i].pow(pres.nilpotency(i), f).is_zero() {
            return Ok(false);
        }
    }
    for (a, mat) in pres.arrows().iter().zip(&m.arrows) {
        let lhs = m.eps[a.target].pow(a.left_exp, f).mul(mat, f);
        let rhs = mat.mul(&m.eps[a.source].pow(a.right_exp, f), f);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Free rank of `(V, eps)` over `F[eps]/(eps^c)`, if free.
pub(crate) fn free_rank(eps: &Mat, c: usize, f: &FieldSpec) -> Option<usize> {
    let d = eps.rows();
    if !d.is_multiple_of(c) {
        return None;
    }
    let r = d / c;
    let mut power = Mat::identity(d);
    for k in 0..=c {
        if power.rank(f) != r * (c - k) {
            return None;
        }
        power = power.mul(eps, f);
    }
    Some(r)
}

/// Rank vector of `m` if every `M_i` is free over `H_i`, else `None`.
pub fn is_locally_free(pres: &HPresentation, m: &GenModule) -> Result<Option<RootVector>> {
    if !validate_rep(pres, m)? {
        return Err(Error::InvalidRep);
    }
    let f = pres.field();
    let mut rank = Vec::with_capacity(pres.vertices());
    for i in 0..pres.vertices() {
        match free_rank(&m.eps[i], pres.nilpotency(i), f) {
            Some(r) => rank.push(r as i64),
            None => return Ok(None),
        }
    }
    Ok(Some(RootVector(rank)))
}

/// Structure data of a locally free module in standard form.
///
/// `coeffs[k]` describes arrow `k: s -> t` as an `r_t x (right_exp * r_s)`
/// matrix over `H_t`; entry `(row, col)` is the polynomial in `eps_t`
/// (coefficient list of length `c_t`) giving the image of the generator
/// `alpha eps_s^{t0} (x) e_k` (column `col = k * right_exp + t0`) on
/// generator `row` of `M_t`.
#[derive(Debug, Clone)]
pub struct FreeData {
    pub ranks: Vec<usize>,
    pub coeffs: Vec<Vec<Vec<Vec<u64>>>>,
}

impl FreeData {
    /// All-zero structure data for the given ranks.
    pub fn zero(pres: &HPresentation, ranks: &[usize]) -> Self {
        let coeffs = pres
            .arrows()
            .iter()
            .map(|a| {
                vec![
                    vec![vec![0; pres.nilpotency(a.target)]; a.right_exp * ranks[a.source]];
                    ranks[a.target]
                ]
            })
            .collect();
        FreeData { ranks: ranks.to_vec(), coeffs }
    }

    /// Uniformly random structure data.
    pub fn random<R: Rng>(pres: &HPresentation, ranks: &[usize], rng: &mut R) -> Self {
        let p = pres.field().p();
        let mut d = FreeData::zero(pres, ranks);
        for arrow in &mut d.coeffs {
            for row in arrow {
                for poly in row {
                    for x in poly {
                        *x = rng.gen_range(0..p);
                    }
                }
            }
        }
        d
    }

    /// Field-level module; basis of `M_v` is `eps_v^u e_k` at index `k * c_v + u`.
    pub fn realize(&self, pres: &HPresentation) -> GenModule {
        let n = pres.vertices();
        let dims: Vec<usize> = (0..n).map(|v| self.ranks[v] * pres.nilpotency(v)).collect();
        let eps = (0..n)
            .map(|v| {
                let c = pres.nilpotency(v);
                let mut m = Mat::zeros(dims[v], dims[v]);
                for k in 0..self.ranks[v] {
                    for u in 0..c - 1 {
                        m[(k * c + u + 1, k * c + u)] = 1;
                    }
                }
                m
            })
            .collect();
        let arrows = pres
            .arrows()
            .iter()
            .zip(&self.coeffs)
            .map(|(a, y)| {
                let (ct, cs) = (pres.nilpotency(a.target), pres.nilpotency(a.source));
                let mut m = Mat::zeros(dims[a.target], dims[a.source]);
                for k in 0..self.ranks[a.source] {
                    for u in 0..cs {
                        let (q, t0) = (u / a.right_exp, u % a.right_exp);
                        let shift = q * a.left_exp;
                        let col = k * a.right_exp + t0;
                        for (kt, row) in y.iter().enumerate() {
                            for (w, &x) in row[col].iter().enumerate() {
                                if x != 0 && w + shift < ct {
                                    m[(kt * ct + w + shift, k * cs + u)] = x;
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        GenModule { dims, eps, arrows }
    }
}

/// Indecomposable projective `H e_i`, built as the tensor algebra summand of
/// paths starting at `i`.
pub fn projective(pres: &HPresentation, i: usize) -> Result<GenModule> {
    if i >= pres.vertices() {
        return Err(Error::IndexOutOfRange(i + 1));
    }
    let n = pres.vertices();
    let mut ranks = vec![0usize; n];
    // generator offset of each incoming arrow's block inside M_target
    let mut block_offset = vec![0usize; pres.arrows().len()];
    for v in pres.topological_order() {
        let mut r = usize::from(v == i);
        for (k, a) in pres.arrows().iter().enumerate() {
            if a.target == v {
                block_offset[k] = r;
                r += a.right_exp * ranks[a.source];
            }
        }
        ranks[v] = r;
    }
    let mut data = FreeData::zero(pres, &ranks);
    for (k, a) in pres.arrows().iter().enumerate() {
        for col in 0..a.right_exp * ranks[a.source] {
            data.coeffs[k][block_offset[k] + col][col][0] = 1;
        }
    }
    Ok(data.realize(pres))
}

/// Indecomposable injective `D(e_i H)`.
pub fn injective(pres: &HPresentation, i: usize) -> Result<GenModule> {
    Ok(projective(&pres.opposite(), i)?.dual())
}

/// Generalized simple `E_i`: `H_i` at vertex `i`, zero elsewhere.
pub fn generalized_simple(pres: &HPresentation, i: usize) -> Result<GenModule> {
    if i >= pres.vertices() {
        return Err(Error::IndexOutOfRange(i + 1));
    }
    let mut ranks = vec![0; pres.vertices()];
    ranks[i] = 1;
    Ok(FreeData::zero(pres, &ranks).realize(pres))
}

/// Uniformly random invertible matrix.
pub fn random_invertible<R: Rng>(f: &FieldSpec, n: usize, rng: &mut R) -> Mat {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.p())).collect();
        let m = Mat::from_vec(n, n, data);
        if m.rank(f) == n {
            return m;
        }
    }
}

/// Random locally free module of the given ranks: uniform structure data,
/// then a uniform base change at every vertex so no standard form is visible.
pub fn random_locally_free<R: Rng>(pres: &HPresentation, ranks: &[usize], rng: &mut R) -> GenModule {
    let m = FreeData::random(pres, ranks, rng).realize(pres);
    let g: Vec<Mat> = m.dims.iter().map(|&d| random_invertible(pres.field(), d, rng)).collect();
    m.conjugate(pres, &g).expect("base change is invertible")
}

/// On-disk module format. Loops and arrows are keyed by 1-based labels
/// `"i"` and `"i,j,g"`; absent loops (`c_i = 1`) are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenModuleJson {
    pub dims: Vec<usize>,
    pub eps: BTreeMap<String, Vec<Vec<u64>>>,
    pub arrows: BTreeMap<String, Vec<Vec<u64>>>,
    pub p: u64,
}

impl GenModule {
    pub fn to_json(&self, pres: &HPresentation) -> GenModuleJson {
        let eps = (0..pres.vertices())
            .filter(|&i| pres.has_loop(i))
            .map(|i| ((i + 1).to_string(), self.eps[i].to_rows()))
            .collect();
        let arrows = pres
            .arrows()
            .iter()
            .zip(&self.arrows)
            .map(|(a, m)| (a.key(), m.to_rows()))
            .collect();
        GenModuleJson { dims: self.dims.clone(), eps, arrows, p: pres.field().p() }
    }

    pub fn from_json(pres: &HPresentation, j: &GenModuleJson) -> Result<GenModule> {
        let n = pres.vertices();
        if j.p != pres.field().p() {
            return Err(Error::InvalidField(format!(
                "module over F_{} used with F_{}",
                j.p,
                pres.field().p()
            )));
        }
        if j.dims.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: j.dims.len() });
        }
        let read = |rows: &Vec<Vec<u64>>, r: usize, c: usize, what: &str| -> Result<Mat> {
            if rows.len() != r {
                return Err(Error::ShapeMismatch(format!("{what}: expected {r} rows")));
            }
            if rows.iter().flatten().any(|&x| x >= j.p) {
                return Err(Error::ShapeMismatch(format!("{what}: entry outside [0, p)")));
            }
            Mat::from_rows(rows, c)
        };
        let mut eps = Vec::with_capacity(n);
        for i in 0..n {
            let d = j.dims[i];
            match j.eps.get(&(i + 1).to_string()) {
                Some(rows) if pres.has_loop(i) => eps.push(read(rows, d, d, "loop")?),
                Some(_) => {
                    return Err(Error::ShapeMismatch(format!("vertex {} has no loop", i + 1)))
                }
                None => eps.push(Mat::zeros(d, d)),
            }
        }
        let mut arrows = Vec::with_capacity(pres.arrows().len());
        for a in pres.arrows() {
            let (r, c) = (j.dims[a.target], j.dims[a.source]);
            match j.arrows.get(&a.key()) {
                Some(rows) => arrows.push(read(rows, r, c, &a.key())?),
                None => arrows.push(Mat::zeros(r, c)),
            }
        }
        if let Some(k) = j.arrows.keys().find(|k| !pres.arrows().iter().any(|a| &a.key() == *k)) {
            return Err(Error::ShapeMismatch(format!("unknown arrow key {k}")));
        }
        Ok(GenModule { dims: j.dims.clone(), eps, arrows })
    }
}
