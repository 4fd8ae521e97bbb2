//! Points of the projective line over the integers and the distant relation.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A lattice vector in Z^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IVec2 {
    pub u: i64,
    pub v: i64,
}

impl IVec2 {
    pub const fn new(u: i64, v: i64) -> Self {
        IVec2 { u, v }
    }

    pub fn is_zero(self) -> bool {
        self.u == 0 && self.v == 0
    }

    pub fn checked_add(self, o: IVec2) -> Result<IVec2> {
        Ok(IVec2 {
            u: self.u.checked_add(o.u).ok_or(Error::Overflow)?,
            v: self.v.checked_add(o.v).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_sub(self, o: IVec2) -> Result<IVec2> {
        Ok(IVec2 {
            u: self.u.checked_sub(o.u).ok_or(Error::Overflow)?,
            v: self.v.checked_sub(o.v).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_neg(self) -> Result<IVec2> {
        Ok(IVec2 {
            u: self.u.checked_neg().ok_or(Error::Overflow)?,
            v: self.v.checked_neg().ok_or(Error::Overflow)?,
        })
    }

    /// `self + k * o`, computed in 128 bits and narrowed.
    pub fn checked_add_scaled(self, o: IVec2, k: i128) -> Result<IVec2> {
        let f = |s: i64, t: i64| -> Result<i64> {
            let prod = (t as i128).checked_mul(k).ok_or(Error::Overflow)?;
            let sum = (s as i128).checked_add(prod).ok_or(Error::Overflow)?;
            i64::try_from(sum).map_err(|_| Error::Overflow)
        };
        Ok(IVec2 {
            u: f(self.u, o.u)?,
            v: f(self.v, o.v)?,
        })
    }
}

impl fmt::Display for IVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// `det[p, q] = p.u * q.v - p.v * q.u`. Exact for every pair of `i64` vectors.
pub fn det2(p: IVec2, q: IVec2) -> i128 {
    p.u as i128 * q.v as i128 - p.v as i128 * q.u as i128
}

/// A point of P(Z): the cyclic submodule generated by a unimodular pair,
/// stored as its canonical representative (b > 0, or b = 0 and a = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    a: i64,
    b: i64,
}

impl ProjPoint {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        canonicalize(a, b)
    }

    pub fn from_vec(w: IVec2) -> Result<Self> {
        canonicalize(w.u, w.v)
    }

    pub fn a(self) -> i64 {
        self.a
    }

    pub fn b(self) -> i64 {
        self.b
    }

    pub fn vec(self) -> IVec2 {
        IVec2::new(self.a, self.b)
    }

    /// Largest absolute coordinate.
    pub fn norm(self) -> u64 {
        self.a.unsigned_abs().max(self.b.unsigned_abs())
    }
}

/// Returns the canonical representative of Z(a, b).
pub fn canonicalize(a: i64, b: i64) -> Result<ProjPoint> {
    if a == 0 && b == 0 {
        return Err(Error::ZeroVector);
    }
    if (a as i128).gcd(&(b as i128)) != 1 {
        return Err(Error::NonUnimodular { a, b });
    }
    if b < 0 || (b == 0 && a < 0) {
        let a2 = a.checked_neg().ok_or(Error::Overflow)?;
        let b2 = b.checked_neg().ok_or(Error::Overflow)?;
        Ok(ProjPoint { a: a2, b: b2 })
    } else {
        Ok(ProjPoint { a, b })
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.b)
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("expected a:b, got {s:?}")))?;
        let a: i64 = l
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("{l:?}: {e}")))?;
        let b: i64 = r
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("{r:?}: {e}")))?;
        canonicalize(a, b)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_distant(p: ProjPoint, q: ProjPoint) -> bool {
    det2(p.vec(), q.vec()).abs() == 1
}

// s*a + t*b = gcd(a, b), gcd >= 0
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// The bi-sequence of all vectors `c` with `det[base, c] = 1`, written
/// `c_n = seed + n * step` where `step = -base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeighborSequence {
    pub base: ProjPoint,
    pub seed: IVec2,
    pub step: IVec2,
}

impl NeighborSequence {
    /// Seed convention: for b != 0 the second coordinate of c_0 lies in [0, |b|);
    /// for the axis point 1:0 it is c_0 = (0, 1).
    pub fn new(base: ProjPoint) -> Self {
        let (a, b) = (base.a as i128, base.b as i128);
        let seed = if b == 0 {
            IVec2::new(0, 1)
        } else {
            // a*v - b*u = 1
            let (_, s, _) = ext_gcd(a, b);
            let v = s.rem_euclid(b.abs());
            let u = (a * v - 1) / b;
            IVec2::new(u as i64, v as i64)
        };
        let step = IVec2::new(-base.a, -base.b);
        NeighborSequence { base, seed, step }
    }

    pub fn term(&self, n: i64) -> Result<IVec2> {
        self.seed.checked_add_scaled(self.step, n as i128)
    }
}

/// Canonical points c_n for n in `window`, in increasing n.
/// Consecutive outputs form a triangle with `p`.
pub fn neighbors(p: ProjPoint, window: RangeInclusive<i64>) -> Result<Vec<ProjPoint>> {
    let seq = NeighborSequence::new(p);
    window.map(|n| ProjPoint::from_vec(seq.term(n)?)).collect()
}

/// The two classes of the cone relation for a fixed pair x, y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConeClass {
    Positive,
    Negative,
}

/// `u * denom = alpha_num * x + beta_num * y` with
/// `alpha_num = det[u, y]`, `beta_num = det[x, u]`, `denom = det[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeCoordinates {
    pub alpha_num: i128,
    pub beta_num: i128,
    pub denom: i128,
}

pub fn cone_coordinates(x: IVec2, y: IVec2, u: IVec2) -> ConeCoordinates {
    ConeCoordinates {
        alpha_num: det2(u, y),
        beta_num: det2(x, u),
        denom: det2(x, y),
    }
}

fn check_cone_args(x: ProjPoint, y: ProjPoint, pts: &[ProjPoint]) -> Result<()> {
    if x == y || pts.iter().any(|&p| p == x || p == y) {
        return Err(Error::DegenerateArguments);
    }
    Ok(())
}

/// Class of `u` with respect to the canonical representatives of x and y.
pub fn cone_class(x: ProjPoint, y: ProjPoint, u: ProjPoint) -> Result<ConeClass> {
    check_cone_args(x, y, &[u])?;
    let c = cone_coordinates(x.vec(), y.vec(), u.vec());
    if c.alpha_num.signum() * c.beta_num.signum() > 0 {
        Ok(ConeClass::Positive)
    } else {
        Ok(ConeClass::Negative)
    }
}

/// +1 if u and v lie in the same class of the cone relation of x, y, else -1.
/// Independent of the representatives chosen for any of the four points.
pub fn cone_sign(x: ProjPoint, y: ProjPoint, u: ProjPoint, v: ProjPoint) -> Result<i8> {
    check_cone_args(x, y, &[u, v])?;
    let (x, y) = (x.vec(), y.vec());
    let s = |w: IVec2| {
        let c = cone_coordinates(x, y, w);
        c.alpha_num.signum() * c.beta_num.signum()
    };
    Ok((s(u.vec()) * s(v.vec())) as i8)
}

/// The two triangles through a distant pair: {p, q, p+q} and {p, q, p-q}.
pub fn maximal_cliques(p: ProjPoint, q: ProjPoint) -> Result<([ProjPoint; 3], [ProjPoint; 3])> {
    if !is_distant(p, q) {
        return Err(Error::NotDistant { x: p, y: q });
    }
    let sum = ProjPoint::from_vec(p.vec().checked_add(q.vec())?)?;
    let diff = ProjPoint::from_vec(p.vec().checked_sub(q.vec())?)?;
    Ok(([p, q, sum], [p, q, diff]))
}
