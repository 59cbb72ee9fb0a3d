//! Symmetrizable Cartan data and the generalized Cartan lattice.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Integer vector in the simple-root basis of `Z^I`. Also used for rank and
/// dimension vectors. Orders lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector(vec![0; n])
    }

    /// The simple root `alpha_i` (0-based `i`).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Positive means nonzero with all coordinates non-negative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &RootVector) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        RootVector(self.0.iter().map(|x| k * x).collect())
    }

    /// Flips the sign so that the first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> Self {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.neg(),
            _ => self.clone(),
        }
    }

    /// Parses `"1,2,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Malformed(format!("bad vector entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(RootVector)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for RootVector {
    fn from(v: Vec<i64>) -> Self {
        RootVector(v)
    }
}

/// Constants `g, f_ij, f_ji, k, l` attached to an adjacent pair `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalConstants {
    pub g: i64,
    pub f_ij: i64,
    pub f_ji: i64,
    pub k: i64,
    pub l: i64,
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// A validated triple `(C, D, Omega)`.
///
/// Internally all indices are 0-based. An orientation pair `(i, j)` with
/// `i < j` stands for arrows `j -> i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    n: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    orientation: Vec<(usize, usize)>,
    c: i64,
}

/// On-disk form `{"C": [[int]], "D": [int], "Omega": [[i,j]]}` with 1-based pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanJson {
    #[serde(rename = "C")]
    pub c: Vec<Vec<i64>>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    #[serde(rename = "Omega")]
    pub omega: Vec<[usize; 2]>,
}

impl CartanData {
    /// Validates `(C, D, Omega)`. `omega` pairs are 0-based here.
    pub fn validate(
        cartan: Vec<Vec<i64>>,
        symmetrizer: Vec<i64>,
        omega: &[(usize, usize)],
    ) -> Result<Self> {
        let n = cartan.len();
        if n == 0 {
            return Err(Error::Malformed("empty Cartan matrix".into()));
        }
        if let Some(row) = cartan.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        if symmetrizer.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: symmetrizer.len() });
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::BadDiagonal(i + 1));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::BadOffDiagonal(i + 1, j + 1));
                }
            }
        }
        if let Some(i) = symmetrizer.iter().position(|&c| c <= 0) {
            return Err(Error::NonPositiveSymmetrizer(i + 1));
        }
        for i in 0..n {
            for j in i + 1..n {
                let a = symmetrizer[i].checked_mul(cartan[i][j]).ok_or(Error::Overflow)?;
                let b = symmetrizer[j].checked_mul(cartan[j][i]).ok_or(Error::Overflow)?;
                if a != b {
                    return Err(Error::NonSymmetrizable(i + 1, j + 1));
                }
            }
        }
        let mut orientation = Vec::with_capacity(omega.len());
        for &(i, j) in omega {
            if i >= n || j >= n {
                return Err(Error::BadOrientation(format!(
                    "pair ({},{}) out of range",
                    i + 1,
                    j + 1
                )));
            }
            if i >= j {
                return Err(Error::BadOrientation(format!(
                    "pair ({},{}) violates i < j",
                    i + 1,
                    j + 1
                )));
            }
            if cartan[i][j] == 0 {
                return Err(Error::BadOrientation(format!(
                    "pair ({},{}) joins non-adjacent vertices",
                    i + 1,
                    j + 1
                )));
            }
            if orientation.contains(&(i, j)) {
                return Err(Error::BadOrientation(format!(
                    "pair ({},{}) listed twice",
                    i + 1,
                    j + 1
                )));
            }
            orientation.push((i, j));
        }
        for i in 0..n {
            for j in i + 1..n {
                if cartan[i][j] != 0 && !orientation.contains(&(i, j)) {
                    return Err(Error::BadOrientation(format!(
                        "edge {{{},{}}} has no orientation",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        orientation.sort_unstable();
        let c = symmetrizer.iter().fold(1, |acc, &x| lcm(acc, x));
        Ok(CartanData { n, cartan, symmetrizer, orientation, c })
    }

    pub fn from_json(j: &CartanJson) -> Result<Self> {
        let omega = j
            .omega
            .iter()
            .map(|&[i, j]| {
                if i == 0 || j == 0 {
                    Err(Error::BadOrientation("orientation indices are 1-based".into()))
                } else {
                    Ok((i - 1, j - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        CartanData::validate(j.c.clone(), j.d.clone(), &omega)
    }

    pub fn to_json(&self) -> CartanJson {
        CartanJson {
            c: self.cartan.clone(),
            d: self.symmetrizer.clone(),
            omega: self.orientation.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// `c_i`.
    #[inline]
    pub fn c_i(&self, i: usize) -> i64 {
        self.symmetrizer[i]
    }

    /// `c = lcm(c_i)`.
    pub fn c(&self) -> i64 {
        self.c
    }

    /// Sorted 0-based pairs `(i, j)`, `i < j`.
    pub fn orientation(&self) -> &[(usize, usize)] {
        &self.orientation
    }

    /// The symmetric matrix `D*C`.
    pub fn dc(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.symmetrizer[i] * self.cartan[i][j]).collect())
            .collect()
    }

    /// Same `C` and `Omega` with the symmetrizer multiplied by `k`.
    pub fn scaled(&self, k: i64) -> Result<Self> {
        let d = self.symmetrizer.iter().map(|&x| x * k).collect();
        CartanData::validate(self.cartan.clone(), d, &self.orientation)
    }

    fn check_len(&self, v: &RootVector) -> Result<()> {
        if v.len() != self.n {
            Err(Error::DimensionMismatch { expected: self.n, got: v.len() })
        } else {
            Ok(())
        }
    }

    /// Entry `<alpha_i, alpha_j>` of the non-symmetric Euler form.
    pub fn euler_entry(&self, i: usize, j: usize) -> i64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => self.symmetrizer[i],
            Less => self.symmetrizer[i] * self.cartan[i][j],
            Greater => 0,
        }
    }

    /// The Euler form `<u, v>`.
    pub fn euler_form(&self, u: &RootVector, v: &RootVector) -> Result<i64> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut acc: i64 = 0;
        for i in 0..self.n {
            for j in i..self.n {
                let term = u.0[i]
                    .checked_mul(v.0[j])
                    .and_then(|x| x.checked_mul(self.euler_entry(i, j)))
                    .ok_or(Error::Overflow)?;
                acc = acc.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(acc)
    }

    /// The symmetrized form `(u, v) = u^T D C v`.
    pub fn sym_form(&self, u: &RootVector, v: &RootVector) -> Result<i64> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut acc: i64 = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                let term = u.0[i]
                    .checked_mul(v.0[j])
                    .and_then(|x| x.checked_mul(self.symmetrizer[i] * self.cartan[i][j]))
                    .ok_or(Error::Overflow)?;
                acc = acc.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(acc)
    }

    pub fn local_constants(&self, i: usize, j: usize) -> Result<LocalConstants> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange(i + 1));
        }
        if j >= self.n {
            return Err(Error::IndexOutOfRange(j + 1));
        }
        if i == j || self.cartan[i][j] == 0 {
            return Err(Error::NotAdjacent(i + 1, j + 1));
        }
        let (cij, cji) = (-self.cartan[i][j], -self.cartan[j][i]);
        let g = gcd(cij, cji);
        let (ci, cj) = (self.symmetrizer[i], self.symmetrizer[j]);
        Ok(LocalConstants { g, f_ij: cij / g, f_ji: cji / g, k: gcd(ci, cj), l: lcm(ci, cj) })
    }

    /// `(C^T, D' = diag(c / c_i), Omega)`.
    pub fn transpose(&self) -> Result<Self> {
        let ct = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.cartan[j][i]).collect())
            .collect();
        let d = self.symmetrizer.iter().map(|&ci| self.c / ci).collect();
        CartanData::validate(ct, d, &self.orientation)
    }
}

/// Named data used throughout tests, benches and the CLI reproductions.
pub mod examples {
    use super::CartanData;

    fn build(c: Vec<Vec<i64>>, d: Vec<i64>, omega: &[(usize, usize)]) -> CartanData {
        CartanData::validate(c, d, omega).expect("built-in datum is valid")
    }

    pub fn a1(c1: i64) -> CartanData {
        build(vec![vec![2]], vec![c1], &[])
    }

    pub fn a2() -> CartanData {
        build(vec![vec![2, -1], vec![-1, 2]], vec![1, 1], &[(0, 1)])
    }

    pub fn a3() -> CartanData {
        build(
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![1, 1, 1],
            &[(0, 1), (1, 2)],
        )
    }

    /// `B_2` with `C = [[2,-1],[-2,2]]`, `D = (2,1)`.
    pub fn b2() -> CartanData {
        build(vec![vec![2, -1], vec![-2, 2]], vec![2, 1], &[(0, 1)])
    }

    /// The `B_3` datum with `D = (2,2,1)`.
    pub fn b3() -> CartanData {
        build(
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            vec![2, 2, 1],
            &[(0, 1), (1, 2)],
        )
    }

    /// `C_3` with `C = [[2,-1,0],[-1,2,-2],[0,-1,2]]`, `D = (1,1,2)`.
    pub fn c3() -> CartanData {
        build(
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
            vec![1, 1, 2],
            &[(0, 1), (1, 2)],
        )
    }

    /// `G_2` with `C = [[2,-1],[-3,2]]`, `D = (3,1)`.
    pub fn g2() -> CartanData {
        build(vec![vec![2, -1], vec![-3, 2]], vec![3, 1], &[(0, 1)])
    }

    /// The affine datum of type `C~_2` with `D = (2,1,2)`.
    pub fn c2_affine() -> CartanData {
        build(
            vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]],
            vec![2, 1, 2],
            &[(0, 1), (1, 2)],
        )
    }

    /// Finite-type battery of rank at most 3.
    pub fn finite_battery() -> Vec<(&'static str, CartanData)> {
        vec![
            ("A1", a1(1)),
            ("A2", a2()),
            ("A3", a3()),
            ("B2", b2()),
            ("B3", b3()),
            ("C3", c3()),
            ("G2", g2()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn validates_builtin_data() {
        let b3 = b3();
        assert_eq!(b3.c(), 2);
        assert_eq!(b3.orientation(), &[(0, 1), (1, 2)]);
        let diag = CartanData::validate(vec![vec![2, 0], vec![0, 2]], vec![1, 1], &[]).unwrap();
        assert!(diag.orientation().is_empty());
        let c2 = c2_affine();
        assert_eq!(c2.c(), 2);
    }

    #[test]
    fn rejects_bad_data() {
        let c = vec![vec![2, -1], vec![-2, 2]];
        assert_eq!(
            CartanData::validate(c.clone(), vec![1, 1], &[(0, 1)]),
            Err(Error::NonSymmetrizable(1, 2))
        );
        assert_eq!(
            CartanData::validate(c.clone(), vec![0, 1], &[(0, 1)]),
            Err(Error::NonPositiveSymmetrizer(1))
        );
        assert_eq!(
            CartanData::validate(vec![vec![1, -1], vec![-1, 2]], vec![1, 1], &[(0, 1)]),
            Err(Error::BadDiagonal(1))
        );
        assert!(matches!(
            CartanData::validate(c.clone(), vec![2, 1], &[(1, 0)]),
            Err(Error::BadOrientation(_))
        ));
        assert!(matches!(
            CartanData::validate(c.clone(), vec![2, 1], &[]),
            Err(Error::BadOrientation(_))
        ));
        assert!(matches!(
            CartanData::validate(vec![vec![2, 0], vec![0, 2]], vec![1, 1], &[(0, 1)]),
            Err(Error::BadOrientation(_))
        ));
        assert_eq!(
            CartanData::validate(vec![vec![2, -1], vec![0, 2]], vec![1, 1], &[(0, 1)]),
            Err(Error::BadOffDiagonal(1, 2))
        );
    }

    #[test]
    fn euler_form_values() {
        let b3 = b3();
        assert_eq!(b3.euler_form(&rv(&[1, 0, 0]), &rv(&[0, 1, 0])).unwrap(), -2);
        for i in 0..3 {
            let e = RootVector::simple(3, i);
            assert_eq!(b3.euler_form(&e, &e).unwrap(), b3.c_i(i));
        }
        let r = rv(&[1, 2, 2]);
        assert_eq!(b3.euler_form(&r, &r).unwrap(), 2);
        assert_eq!(
            b3.euler_form(&r, &rv(&[1, 2])),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn sym_form_values() {
        let b3 = b3();
        assert_eq!(b3.sym_form(&rv(&[0, 1, 0]), &rv(&[0, 0, 1])).unwrap(), -2);
        let r = rv(&[1, 2, 2]);
        assert_eq!(b3.sym_form(&r, &r).unwrap(), 4);
        for i in 0..3 {
            let e = RootVector::simple(3, i);
            assert_eq!(b3.sym_form(&e, &e).unwrap(), 2 * b3.c_i(i));
        }
    }

    #[test]
    fn local_constants_values() {
        let lc = b3().local_constants(1, 2).unwrap();
        assert_eq!(lc, LocalConstants { g: 1, f_ij: 1, f_ji: 2, k: 1, l: 2 });
        let lc = c2_affine().local_constants(0, 1).unwrap();
        assert_eq!(lc, LocalConstants { g: 1, f_ij: 1, f_ji: 2, k: 1, l: 2 });
        let sym = CartanData::validate(vec![vec![2, -2], vec![-2, 2]], vec![1, 1], &[(0, 1)])
            .unwrap();
        let lc = sym.local_constants(0, 1).unwrap();
        assert_eq!((lc.g, lc.f_ij, lc.f_ji), (2, 1, 1));
        assert_eq!(b3().local_constants(0, 2), Err(Error::NotAdjacent(1, 3)));
        assert_eq!(b3().local_constants(1, 1), Err(Error::NotAdjacent(2, 2)));
    }

    #[test]
    fn local_constant_identities_hold() {
        for (_, d) in finite_battery().into_iter().chain([("C~2", c2_affine())]) {
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    if let Ok(lc) = d.local_constants(i, j) {
                        assert_eq!(lc.g * lc.f_ij, -d.entry(i, j));
                        assert_eq!(d.c_i(i), lc.k * lc.f_ji);
                        assert_eq!(lc.l, d.c_i(i) * d.c_i(j) / lc.k);
                    }
                }
            }
        }
    }

    #[test]
    fn transpose_data() {
        let t = b3().transpose().unwrap();
        assert_eq!(t.symmetrizer(), &[1, 1, 2]);
        assert_eq!(t.entry(2, 1), -1);
        assert_eq!(t.entry(1, 2), -2);
        let t = c2_affine().transpose().unwrap();
        assert_eq!(t.symmetrizer(), &[1, 2, 1]);
        let a2t = a2().transpose().unwrap();
        assert_eq!(a2t, a2());
        for (_, d) in finite_battery() {
            assert_eq!(d.transpose().unwrap().transpose().unwrap(), d);
        }
    }

    #[test]
    fn json_round_trip_uses_one_based_pairs() {
        let j = b3().to_json();
        assert_eq!(j.omega, vec![[1, 2], [2, 3]]);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"{"C":[[2,-1,0],[-1,2,-1],[0,-2,2]],"D":[2,2,1],"Omega":[[1,2],[2,3]]}"#);
        assert_eq!(CartanData::from_json(&serde_json::from_str(&s).unwrap()).unwrap(), b3());
    }
}
