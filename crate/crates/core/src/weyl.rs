//! Reflections, Weyl group elements and real roots.

use crate::cartan::{CartanData, RootVector};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

/// Largest Weyl group enumerated by the absolute-length search.
pub const WEYL_ORDER_CAP: usize = 51840;

/// Bound used when a finite root system is enumerated in full.
const FINITE_BOUND: i64 = 1 << 20;

/// An element of `W(C)` acting on `Z^I` in the `alpha` basis.
///
/// Equality and hashing use the matrix only; `word` is advisory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeylElement {
    n: usize,
    matrix: Vec<i64>,
    pub word: Option<Vec<usize>>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut matrix = vec![0; n * n];
        for i in 0..n {
            matrix[i * n + i] = 1;
        }
        WeylElement { n, matrix, word: Some(Vec::new()) }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.matrix[r * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.matrix.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Product `self * other` (apply `other` first). Words concatenate.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.n;
        let mut matrix = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entry(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    matrix[r * n + c] += a * other.entry(k, c);
                }
            }
        }
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        WeylElement { n, matrix, word }
    }

    pub fn apply(&self, u: &RootVector) -> RootVector {
        RootVector(
            (0..self.n)
                .map(|r| (0..self.n).map(|c| self.entry(r, c) * u.0[c]).sum())
                .collect(),
        )
    }

    /// Integer determinant by cofactor-free Bareiss elimination.
    pub fn determinant(&self) -> i64 {
        let rows: Vec<Vec<i128>> =
            self.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        bareiss_det(rows) as i64
    }
}

fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Sorted, duplicate-free set of roots found within a coordinate box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSet {
    pub bound: i64,
    pub roots: Vec<RootVector>,
}

impl RootSet {
    pub fn from_iter(bound: i64, roots: impl IntoIterator<Item = RootVector>) -> Self {
        let set: BTreeSet<RootVector> = roots.into_iter().collect();
        RootSet { bound, roots: set.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &RootVector) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    pub fn positive(&self) -> Vec<RootVector> {
        self.roots.iter().filter(|r| r.is_positive()).cloned().collect()
    }
}

fn check_index(data: &CartanData, i: usize) -> Result<()> {
    if i >= data.rank() {
        Err(Error::IndexOutOfRange(i + 1))
    } else {
        Ok(())
    }
}

/// `s_i`, sending `alpha_j` to `alpha_j - c_ij alpha_i`.
pub fn simple_reflection(data: &CartanData, i: usize) -> Result<WeylElement> {
    check_index(data, i)?;
    let mut s = WeylElement::identity(data.rank());
    let n = data.rank();
    for j in 0..n {
        s.matrix[i * n + j] -= data.entry(i, j);
    }
    s.word = Some(vec![i]);
    Ok(s)
}

/// Coefficient `2 (beta, u) / (beta, beta)`.
fn reflection_coefficient(data: &CartanData, beta: &RootVector, u: &RootVector) -> Result<i64> {
    let bb = data.sym_form(beta, beta)?;
    if bb == 0 {
        return Err(Error::IsotropicReflection(beta.clone()));
    }
    let num = 2 * data.sym_form(beta, u)?;
    if num % bb != 0 {
        return Err(Error::NonIntegralResult(beta.clone()));
    }
    Ok(num / bb)
}

/// `s_beta(u) = u - 2 (beta, u) / (beta, beta) * beta`.
pub fn reflect(data: &CartanData, beta: &RootVector, u: &RootVector) -> Result<RootVector> {
    let k = reflection_coefficient(data, beta, u)?;
    Ok(RootVector(u.0.iter().zip(&beta.0).map(|(x, b)| x - k * b).collect()))
}

/// The reflection `s_beta` as a matrix.
pub fn reflection(data: &CartanData, beta: &RootVector) -> Result<WeylElement> {
    let n = data.rank();
    let mut w = WeylElement::identity(n);
    w.word = None;
    for j in 0..n {
        let col = reflect(data, beta, &RootVector::simple(n, j))?;
        for r in 0..n {
            w.matrix[r * n + j] = col.0[r];
        }
    }
    Ok(w)
}

/// Real roots with every coordinate bounded by `bound` in absolute value,
/// found by breadth-first search from `{±alpha_i}` under simple reflections.
pub fn real_roots(data: &CartanData, bound: i64) -> Result<RootSet> {
    if bound < 1 {
        return Err(Error::BoundTooSmall);
    }
    let n = data.rank();
    let gens: Vec<WeylElement> =
        (0..n).map(|i| simple_reflection(data, i)).collect::<Result<_>>()?;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        for r in [RootVector::simple(n, i), RootVector::simple(n, i).neg()] {
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    while let Some(r) = queue.pop_front() {
        for s in &gens {
            let next = s.apply(&r);
            if next.max_abs() <= bound && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(RootSet { bound, roots: seen.into_iter().collect() })
}

/// All real roots of a finite-type datum.
pub fn finite_roots(data: &CartanData) -> Result<RootSet> {
    if !is_finite_type(data) {
        return Err(Error::InfiniteType);
    }
    let mut set = real_roots(data, FINITE_BOUND)?;
    set.bound = set.roots.iter().map(RootVector::max_abs).max().unwrap_or(1);
    Ok(set)
}

/// Coordinates of the dual root `beta~` in the basis of scaled simple coroots:
/// `2 c_i b_i / (beta, beta)`.
pub fn dual_root(data: &CartanData, beta: &RootVector) -> Result<RootVector> {
    let bb = data.sym_form(beta, beta)?;
    if bb == 0 {
        return Err(Error::IsotropicReflection(beta.clone()));
    }
    beta.0
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let num = 2 * data.c_i(i) * b;
            if num % bb != 0 {
                Err(Error::NonIntegralDual(beta.clone()))
            } else {
                Ok(num / bb)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(RootVector)
}

/// Positive definiteness of `D*C` via leading principal minors.
pub fn is_finite_type(data: &CartanData) -> bool {
    leading_minors(data).iter().all(|&m| m > 0)
}

/// Leading principal minors of `D*C`.
pub fn leading_minors(data: &CartanData) -> Vec<i128> {
    let dc = data.dc();
    (1..=data.rank())
        .map(|k| {
            let sub = (0..k).map(|i| (0..k).map(|j| dc[i][j] as i128).collect()).collect();
            bareiss_det(sub)
        })
        .collect()
}

/// `s_1 s_2 ... s_n`.
pub fn coxeter_element(data: &CartanData) -> WeylElement {
    (0..data.rank()).fold(WeylElement::identity(data.rank()), |acc, i| {
        acc.compose(&simple_reflection(data, i).expect("index in range"))
    })
}

/// Absolute lengths of every element of a finite Weyl group, computed once by
/// breadth-first search in the Cayley graph generated by all reflections.
#[derive(Debug, Clone)]
pub struct AbsoluteLengths {
    lengths: HashMap<Vec<i64>, usize>,
}

impl AbsoluteLengths {
    pub fn new(data: &CartanData) -> Result<Self> {
        let roots = finite_roots(data)?;
        let reflections: Vec<WeylElement> = roots
            .positive()
            .iter()
            .map(|b| reflection(data, b))
            .collect::<Result<_>>()?;
        let id = WeylElement::identity(data.rank());
        let mut lengths = HashMap::new();
        lengths.insert(id.matrix.clone(), 0);
        let mut queue = VecDeque::from([(id, 0usize)]);
        while let Some((w, d)) = queue.pop_front() {
            for s in &reflections {
                let next = w.compose(s);
                if !lengths.contains_key(&next.matrix) {
                    if lengths.len() >= WEYL_ORDER_CAP {
                        return Err(Error::GroupTooLarge(WEYL_ORDER_CAP));
                    }
                    lengths.insert(next.matrix.clone(), d + 1);
                    queue.push_back((next, d + 1));
                }
            }
        }
        Ok(AbsoluteLengths { lengths })
    }

    pub fn group_order(&self) -> usize {
        self.lengths.len()
    }

    pub fn length(&self, w: &WeylElement) -> Option<usize> {
        self.lengths.get(&w.matrix).copied()
    }

    /// All group elements (matrix form, no words).
    pub fn elements(&self, n: usize) -> Vec<WeylElement> {
        let mut out: Vec<WeylElement> = self
            .lengths
            .keys()
            .map(|m| WeylElement { n, matrix: m.clone(), word: None })
            .collect();
        out.sort_by(|a, b| a.matrix.cmp(&b.matrix));
        out
    }
}

/// Minimal number of reflections whose product is `w` (finite type only).
pub fn absolute_length(data: &CartanData, w: &WeylElement) -> Result<usize> {
    let table = AbsoluteLengths::new(data)?;
    table.length(w).ok_or(Error::Malformed("matrix is not an element of W".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::examples::*;

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn simple_reflection_examples() {
        let b3 = b3();
        let s1 = simple_reflection(&b3, 0).unwrap();
        assert_eq!(s1.apply(&rv(&[0, 1, 0])), rv(&[1, 1, 0]));
        let c2 = c2_affine();
        assert_eq!(simple_reflection(&c2, 1).unwrap().apply(&rv(&[1, 0, 0])), rv(&[1, 2, 0]));
        for i in 0..3 {
            let s = simple_reflection(&b3, i).unwrap();
            assert_eq!(s.apply(&RootVector::simple(3, i)), RootVector::simple(3, i).neg());
            assert_eq!(s.compose(&s), WeylElement::identity(3));
        }
        assert_eq!(simple_reflection(&b3, 3), Err(Error::IndexOutOfRange(4)));
    }

    #[test]
    fn reflect_examples() {
        let b3 = b3();
        assert_eq!(reflect(&b3, &rv(&[1, 2, 2]), &rv(&[1, 0, 0])).unwrap(), rv(&[1, 0, 0]));
        let delta = rv(&[1, 2, 1]);
        assert_eq!(
            reflect(&c2_affine(), &delta, &rv(&[1, 0, 0])),
            Err(Error::IsotropicReflection(delta))
        );
        let u = rv(&[3, -1, 4]);
        for i in 0..3 {
            let s = simple_reflection(&b3, i).unwrap();
            assert_eq!(reflect(&b3, &RootVector::simple(3, i), &u).unwrap(), s.apply(&u));
        }
        assert!(matches!(
            reflect(&b3, &rv(&[1, 0, 1]), &rv(&[1, 0, 0])),
            Err(Error::NonIntegralResult(_))
        ));
    }

    #[test]
    fn real_roots_examples() {
        let roots = real_roots(&b3(), 3).unwrap();
        assert_eq!(roots.len(), 18);
        assert_eq!(roots.positive().len(), 9);
        assert_eq!(real_roots(&a1(1), 5).unwrap().roots, vec![rv(&[-1]), rv(&[1])]);
        assert!(real_roots(&c2_affine(), 2).unwrap().contains(&rv(&[1, 2, 0])));
        assert_eq!(real_roots(&b3(), 0), Err(Error::BoundTooSmall));
    }

    #[test]
    fn dual_root_examples() {
        let b3 = b3();
        assert_eq!(dual_root(&b3, &rv(&[1, 2, 2])).unwrap(), rv(&[1, 2, 1]));
        assert_eq!(dual_root(&b3, &rv(&[0, 1, 2])).unwrap(), rv(&[0, 1, 1]));
        for i in 0..3 {
            assert_eq!(
                dual_root(&b3, &RootVector::simple(3, i)).unwrap(),
                RootVector::simple(3, i)
            );
        }
        assert!(matches!(dual_root(&b3, &rv(&[1, 0, 1])), Err(Error::NonIntegralDual(_))));
    }

    #[test]
    fn finite_type_detection() {
        assert_eq!(leading_minors(&b3()), vec![4, 12, 8]);
        assert!(is_finite_type(&b3()));
        assert!(is_finite_type(&a1(1)));
        assert!(!is_finite_type(&c2_affine()));
        assert_eq!(*leading_minors(&c2_affine()).last().unwrap(), 0);
    }

    #[test]
    fn coxeter_element_examples() {
        assert_eq!(coxeter_element(&a1(1)), simple_reflection(&a1(1), 0).unwrap());
        let b3 = b3();
        let cox = coxeter_element(&b3);
        assert_eq!(cox.word.as_deref(), Some(&[0, 1, 2][..]));
        // s1 s2 s3 (alpha_3): s3 a3 = -a3; s2(-a3) = -(a3 + a2); s1 gives -(a1 + a2 + a3).
        assert_eq!(cox.apply(&rv(&[0, 0, 1])), rv(&[-1, -1, -1]));
        for (_, d) in finite_battery() {
            let n = d.rank() as u32;
            assert_eq!(coxeter_element(&d).determinant(), (-1i64).pow(n));
        }
    }

    #[test]
    fn absolute_length_examples() {
        let b3 = b3();
        let table = AbsoluteLengths::new(&b3).unwrap();
        assert_eq!(table.group_order(), 48);
        assert_eq!(table.length(&WeylElement::identity(3)), Some(0));
        for beta in finite_roots(&b3).unwrap().positive() {
            assert_eq!(table.length(&reflection(&b3, &beta).unwrap()), Some(1));
        }
        assert_eq!(absolute_length(&b3, &coxeter_element(&b3)).unwrap(), 3);
        assert_eq!(
            absolute_length(&c2_affine(), &WeylElement::identity(3)),
            Err(Error::InfiniteType)
        );
    }

    #[test]
    fn group_orders() {
        for (name, d, order) in [("A2", a2(), 6), ("B2", b2(), 8), ("G2", g2(), 12), ("A3", a3(), 24)]
        {
            assert_eq!(AbsoluteLengths::new(&d).unwrap().group_order(), order, "{name}");
        }
    }
}
