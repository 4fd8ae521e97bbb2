//! Products of the elementary matrices E(a) = [[a, 1], [-1, 0]] and the words
//! they form along paths.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::Path;
use crate::point::{det2, is_distant, IVec2, ProjPoint};
use crate::transition::seed_pair;

/// Exact 2x2 integer matrix, serialized row-major as `[m11, m12, m21, m22]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i128; 4]", into = "[i128; 4]")]
pub struct Mat2 {
    pub m: [[i128; 2]; 2],
}

impl From<[i128; 4]> for Mat2 {
    fn from(e: [i128; 4]) -> Self {
        Mat2 {
            m: [[e[0], e[1]], [e[2], e[3]]],
        }
    }
}

impl From<Mat2> for [i128; 4] {
    fn from(a: Mat2) -> Self {
        [a.m[0][0], a.m[0][1], a.m[1][0], a.m[1][1]]
    }
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        m: [[1, 0], [0, 1]],
    };

    pub fn new(m11: i128, m12: i128, m21: i128, m22: i128) -> Self {
        Mat2 {
            m: [[m11, m12], [m21, m22]],
        }
    }

    pub fn mul(&self, o: &Mat2) -> Result<Mat2> {
        let mut out = [[0i128; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let p = self.m[i][0].checked_mul(o.m[0][j]).ok_or(Error::Overflow)?;
                let q = self.m[i][1].checked_mul(o.m[1][j]).ok_or(Error::Overflow)?;
                *cell = p.checked_add(q).ok_or(Error::Overflow)?;
            }
        }
        Ok(Mat2 { m: out })
    }

    pub fn neg(&self) -> Result<Mat2> {
        self.scale(-1)
    }

    pub fn scale(&self, s: i128) -> Result<Mat2> {
        let mut out = self.m;
        for row in &mut out {
            for c in row.iter_mut() {
                *c = c.checked_mul(s).ok_or(Error::Overflow)?;
            }
        }
        Ok(Mat2 { m: out })
    }

    pub fn det(&self) -> Result<i128> {
        let p = self.m[0][0]
            .checked_mul(self.m[1][1])
            .ok_or(Error::Overflow)?;
        let q = self.m[0][1]
            .checked_mul(self.m[1][0])
            .ok_or(Error::Overflow)?;
        p.checked_sub(q).ok_or(Error::Overflow)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

pub fn e_matrix(a: i128) -> Mat2 {
    Mat2::new(a, 1, -1, 0)
}

/// `sign * E(c_1) E(c_2) ... E(c_n)`, leftmost factor first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EWordDoc", into = "EWordDoc")]
pub struct EWord {
    pub sign: i8,
    pub coeffs: Vec<i128>,
}

#[derive(Serialize, Deserialize)]
struct EWordDoc {
    sign: i8,
    coeffs: Vec<i128>,
}

impl TryFrom<EWordDoc> for EWord {
    type Error = Error;
    fn try_from(d: EWordDoc) -> Result<Self> {
        if d.sign != 1 && d.sign != -1 {
            return Err(Error::Parse(format!(
                "sign must be 1 or -1, got {}",
                d.sign
            )));
        }
        Ok(EWord {
            sign: d.sign,
            coeffs: d.coeffs,
        })
    }
}

impl From<EWord> for EWordDoc {
    fn from(w: EWord) -> Self {
        EWordDoc {
            sign: w.sign,
            coeffs: w.coeffs,
        }
    }
}

impl EWord {
    pub fn new(sign: i8, coeffs: Vec<i128>) -> Self {
        assert!(sign == 1 || sign == -1);
        EWord { sign, coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for EWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.coeffs.is_empty() {
            return write!(f, "I");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "E({c})")?;
        }
        Ok(())
    }
}

pub fn eval_word(w: &EWord) -> Result<Mat2> {
    let mut acc = Mat2::IDENTITY;
    for &c in &w.coeffs {
        acc = acc.mul(&e_matrix(c))?;
    }
    acc.scale(w.sign as i128)
}

/// Continued fraction digits d_0; d_1, ..., d_n with d_n > 1 when n >= 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFExpansion {
    pub d: Vec<i128>,
}

impl CFExpansion {
    /// Index of the last digit.
    pub fn n(&self) -> usize {
        self.d.len() - 1
    }

    /// The fraction as (numerator, denominator).
    pub fn value(&self) -> Result<(i128, i128)> {
        let (mut num, mut den) = (1i128, 0i128);
        for &d in self.d.iter().rev() {
            let next = d
                .checked_mul(num)
                .and_then(|t| t.checked_add(den))
                .ok_or(Error::Overflow)?;
            (num, den) = (next, num);
        }
        Ok((num, den))
    }
}

/// Expansion of q/p for coprime p >= 1 with q >= 2p.
pub fn cf_expand(p: i128, q: i128) -> Result<CFExpansion> {
    let narrow = |v: i128| i64::try_from(v).unwrap_or(i64::MAX);
    if p < 1 || q < 2 * p {
        return Err(Error::BadSlope {
            p: narrow(p),
            q: narrow(q),
        });
    }
    if num_integer::Integer::gcd(&p, &q) != 1 {
        return Err(Error::NonUnimodular {
            a: narrow(p),
            b: narrow(q),
        });
    }
    let (mut num, mut den) = (q, p);
    let mut d = Vec::new();
    while den != 0 {
        d.push(num.div_euclid(den));
        (num, den) = (den, num.rem_euclid(den));
    }
    if d.len() > 1 && *d.last().unwrap() == 1 {
        d.pop();
        *d.last_mut().unwrap() += 1;
    }
    Ok(CFExpansion { d })
}

/// Basis (u, v) of Z^2 and the coordinates (p, q) of y in it, q/p >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardBasis {
    pub u: IVec2,
    pub v: IVec2,
    pub p: i128,
    pub q: i128,
    /// True when the basis was changed to (-x, e_1).
    pub switched: bool,
}

pub fn standard_basis(x: ProjPoint, y: ProjPoint) -> Result<StandardBasis> {
    if x == y || is_distant(x, y) {
        return Err(Error::TrivialPair { x, y });
    }
    let (e1, f1, yv, _, q_) = seed_pair(x, y)?;
    let xv = x.vec();
    // y = p x + q f1 with det[x, f1] = 1
    let q = det2(xv, yv);
    let p = det2(yv, f1);
    debug_assert_eq!(p, q_);
    if q < 2 * p {
        Ok(StandardBasis {
            u: xv.checked_neg()?,
            v: e1,
            p: q - p,
            q,
            switched: true,
        })
    } else {
        Ok(StandardBasis {
            u: xv,
            v: f1,
            p,
            q,
            switched: false,
        })
    }
}

fn combine(r0: i128, r1: i128, u: IVec2, v: IVec2) -> Result<ProjPoint> {
    let f = |s: i64, t: i64| -> Result<i64> {
        let a = r0.checked_mul(s as i128).ok_or(Error::Overflow)?;
        let b = r1.checked_mul(t as i128).ok_or(Error::Overflow)?;
        i64::try_from(a.checked_add(b).ok_or(Error::Overflow)?).map_err(|_| Error::Overflow)
    };
    ProjPoint::from_vec(IVec2::new(f(u.u, v.u)?, f(u.v, v.v)?))
}

/// The path a word traces from the first basis vector: the i-th vertex is the
/// point whose basis coordinates are the first row of the product of the last
/// i factors.
pub fn word_path(w: &EWord, basis: &StandardBasis) -> Result<Path> {
    let mut out = vec![ProjPoint::from_vec(basis.u)?];
    let mut acc = Mat2::IDENTITY;
    for &c in w.coeffs.iter().rev() {
        acc = e_matrix(c).mul(&acc)?;
        out.push(combine(acc.m[0][0], acc.m[0][1], basis.u, basis.v)?);
    }
    Path::new(out)
}

/// Word of the standard path together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardWord {
    pub word: EWord,
    pub cf: CFExpansion,
    pub basis: StandardBasis,
}

pub fn standard_word_data(x: ProjPoint, y: ProjPoint) -> Result<StandardWord> {
    let basis = standard_basis(x, y)?;
    let cf = cf_expand(basis.p, basis.q)?;
    let n = cf.n();
    let mut coeffs = Vec::with_capacity(n + 2);
    for k in (1..=n).rev() {
        coeffs.push(if k % 2 == 1 { cf.d[k] } else { -cf.d[k] });
    }
    coeffs.push(-cf.d[0]);
    coeffs.push(0);
    let word = EWord::new(1, coeffs);
    let a = eval_word(&word)?;
    if combine(a.m[0][0], a.m[0][1], basis.u, basis.v)? != y {
        return Err(Error::Internal(format!(
            "standard word for {x}, {y} misses the endpoint"
        )));
    }
    Ok(StandardWord { word, cf, basis })
}

pub fn standard_word(x: ProjPoint, y: ProjPoint) -> Result<EWord> {
    Ok(standard_word_data(x, y)?.word)
}

/// Rewrites the leftmost inner E(+-1) with
/// E(a) E(1) E(b) = E(a-1) E(b-1) and E(a) E(-1) E(b) = -E(a+1) E(b+1)
/// until none is left.
pub fn reduce_word(w: &EWord) -> Result<EWord> {
    let mut out = w.clone();
    while let Some(i) = (1..out.coeffs.len().saturating_sub(1)).find(|&i| out.coeffs[i].abs() == 1)
    {
        out = contract_at(&out, i)?;
    }
    Ok(out)
}

/// Applies the +-1 contraction at inner position i.
pub fn contract_at(w: &EWord, i: usize) -> Result<EWord> {
    let s = w.coeffs[i];
    assert!(s.abs() == 1 && i >= 1 && i + 1 < w.coeffs.len());
    let mut coeffs = Vec::with_capacity(w.coeffs.len() - 1);
    coeffs.extend_from_slice(&w.coeffs[..i - 1]);
    coeffs.push(w.coeffs[i - 1].checked_sub(s).ok_or(Error::Overflow)?);
    coeffs.push(w.coeffs[i + 1].checked_sub(s).ok_or(Error::Overflow)?);
    coeffs.extend_from_slice(&w.coeffs[i + 2..]);
    Ok(EWord {
        sign: w.sign * s as i8,
        coeffs,
    })
}

/// E(a) E(s2) E(s2) E(b) = -s E(a-s) E(-3s) E(b-s) for s2 = 2s, s = +-1.
pub fn double_two_rhs(a: i128, s: i128, b: i128) -> EWord {
    EWord::new((-s) as i8, vec![a - s, -3 * s, b - s])
}

/// True if E(a) E(2) E(2) E(b) or E(a) E(-2) E(-2) E(b) occurs.
pub fn has_double_two(w: &EWord) -> bool {
    let c = &w.coeffs;
    (1..c.len().saturating_sub(2)).any(|i| c[i].abs() == 2 && c[i] == c[i + 1])
}

/// Whether only one matrix represents the shortest paths: d_n > 2, or
/// d_n = 2 preceded by an odd run of 1's that is preceded by a digit > 1.
pub fn single_matrix(cf: &CFExpansion) -> bool {
    let d = &cf.d;
    let n = cf.n();
    if d[n] > 2 {
        return true;
    }
    if d[n] != 2 {
        return false;
    }
    let mut k = 0;
    while k < n && d[n - k - 1] == 1 {
        k += 1;
    }
    k >= 1 && k % 2 == 1 && k < n && d[n - k - 1] > 1
}

/// Everything the factor command reports for a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub standard: StandardWord,
    pub reduced: EWord,
    pub matrices: Vec<Mat2>,
    pub unique: bool,
}

pub fn factorization(x: ProjPoint, y: ProjPoint) -> Result<Factorization> {
    let standard = standard_word_data(x, y)?;
    let reduced = reduce_word(&standard.word)?;
    let a = eval_word(&reduced)?;
    let unique = single_matrix(&standard.cf);
    let mut matrices = vec![a];
    if !unique {
        let sgn = if standard.cf.n() % 2 == 0 { 1 } else { -1 };
        let l = Mat2::new(-1, 0, -sgn, -1);
        matrices.push(l.mul(&a)?);
    }
    Ok(Factorization {
        standard,
        reduced,
        matrices,
        unique,
    })
}

/// One matrix, or two when the shortest paths split at the last step.
pub fn shortest_path_matrices(x: ProjPoint, y: ProjPoint) -> Result<Vec<Mat2>> {
    Ok(factorization(x, y)?.matrices)
}
