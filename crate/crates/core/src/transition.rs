//! The transition algorithm between two non-adjacent points, Klein graphs,
//! corner graphs and sails.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{det2, is_distant, IVec2, NeighborSequence, ProjPoint};

/// Which of the two initial vectors starts the first run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// The seed vector closer to x keeps the name e.
    TR,
    /// The two initial vectors were exchanged before running.
    TL,
}

/// Output of the transition algorithm.
///
/// Only corners are stored. `e_corners[m]` is `E_m = e_{A_m}` and
/// `f_corners[m]` is `F_m = f_{B_m}`, as oriented representatives with
/// `y = E_r + F_l`. The full sequences are recovered from
/// `E_{m+1} = E_m + a_{m+1} F_m` and `F_{m+1} = F_m + b_{m+1} E_{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionData {
    pub x: ProjPoint,
    pub y: ProjPoint,
    pub orientation: Orientation,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    e_corners: Vec<IVec2>,
    f_corners: Vec<IVec2>,
}

fn trivial(x: ProjPoint, y: ProjPoint) -> Error {
    Error::TrivialPair { x, y }
}

fn to_u64(k: i128) -> Result<u64> {
    u64::try_from(k).map_err(|_| Error::Overflow)
}

/// Initial vectors e1, f1 = e1 - x and the y representative with det[x, y] > 0.
/// Returns (e1, f1, y, P, Q) where P = det[e1, y], Q = -det[f1, y], P + Q = det[x, y].
pub(crate) fn seed_pair(x: ProjPoint, y: ProjPoint) -> Result<(IVec2, IVec2, IVec2, i128, i128)> {
    let mut yv = y.vec();
    let mut d = det2(x.vec(), yv);
    if d < 0 {
        yv = yv.checked_neg()?;
        d = -d;
    }
    if d <= 1 {
        return Err(trivial(x, y));
    }
    let seq = NeighborSequence::new(x);
    let c = seq.seed;
    let p0 = det2(c, yv);
    // c_n = c - n x moves det[c_n, y] by -n D; pick 0 < P <= D
    let n = (p0 - 1).div_euclid(d);
    let e1 = c.checked_add_scaled(x.vec(), -n)?;
    let f1 = e1.checked_sub(x.vec())?;
    let p = det2(e1, yv);
    let q = -det2(f1, yv);
    if !(p > 0 && q > 0 && p + q == d) {
        return Err(Error::Internal(format!("bad seed for {x}, {y}")));
    }
    Ok((e1, f1, yv, p, q))
}

/// Runs the transition algorithm from x to y.
pub fn transition(x: ProjPoint, y: ProjPoint) -> Result<TransitionData> {
    if x == y || is_distant(x, y) {
        return Err(trivial(x, y));
    }
    let (mut e, mut f, yv, mut p, mut q) = seed_pair(x, y)?;
    let orientation = if q > p {
        std::mem::swap(&mut e, &mut f);
        std::mem::swap(&mut p, &mut q);
        Orientation::TL
    } else {
        Orientation::TR
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut e_corners = vec![e];
    let mut f_corners = vec![f];
    while p != q {
        if p > q {
            let k = (p - 1) / q;
            e = e.checked_add_scaled(f, k)?;
            p -= k * q;
            a.push(to_u64(k)?);
            e_corners.push(e);
        } else {
            let k = (q - 1) / p;
            f = f.checked_add_scaled(e, k)?;
            q -= k * p;
            b.push(to_u64(k)?);
            f_corners.push(f);
        }
    }
    if p != 1 || e.checked_add(f)? != yv {
        return Err(Error::Internal(format!(
            "transition from {x} did not reach {y}"
        )));
    }
    Ok(TransitionData {
        x,
        y,
        orientation,
        a,
        b,
        e_corners,
        f_corners,
    })
}

/// Builds the data a forward run would produce from `x` with the given
/// coefficient runs. The seed is e1 = c_{-1}, f1 = c_0 of the neighbor sequence.
pub fn endpoint_for_coefficients(x: ProjPoint, a: &[u64], b: &[u64]) -> Result<TransitionData> {
    let (r, l) = (a.len(), b.len());
    if !(r == l || r == l + 1) {
        return Err(Error::InvalidCoefficients(format!("r = {r}, l = {l}")));
    }
    if a.iter().chain(b).any(|&k| k == 0) {
        return Err(Error::InvalidCoefficients("zero coefficient".into()));
    }
    let seq = NeighborSequence::new(x);
    let mut e = seq.term(-1)?;
    let mut f = seq.term(0)?;
    let mut e_corners = vec![e];
    let mut f_corners = vec![f];
    for m in 0..r {
        e = e.checked_add_scaled(f, a[m] as i128)?;
        e_corners.push(e);
        if m < l {
            f = f.checked_add_scaled(e, b[m] as i128)?;
            f_corners.push(f);
        }
    }
    let y = ProjPoint::from_vec(e.checked_add(f)?)?;
    Ok(TransitionData {
        x,
        y,
        orientation: Orientation::TR,
        a: a.to_vec(),
        b: b.to_vec(),
        e_corners,
        f_corners,
    })
}

impl TransitionData {
    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn l(&self) -> usize {
        self.b.len()
    }

    /// Corner representatives E_0 .. E_r.
    pub fn e_corners(&self) -> &[IVec2] {
        &self.e_corners
    }

    /// Corner representatives F_0 .. F_l.
    pub fn f_corners(&self) -> &[IVec2] {
        &self.f_corners
    }

    /// A_0 .. A_{r+1}, with a_0 = a_{r+1} = 1.
    pub fn big_a(&self) -> Vec<u128> {
        partial_sums(&self.a)
    }

    /// B_0 .. B_{l+1}, with b_0 = b_{l+1} = 1.
    pub fn big_b(&self) -> Vec<u128> {
        partial_sums(&self.b)
    }

    /// Number of e vertices, A_r.
    pub fn e_len(&self) -> u128 {
        1 + self.a.iter().map(|&k| k as u128).sum::<u128>()
    }

    /// Number of f vertices, B_l.
    pub fn f_len(&self) -> u128 {
        1 + self.b.iter().map(|&k| k as u128).sum::<u128>()
    }

    /// Length of the consistent path through the e vertices.
    pub fn d_a(&self) -> u128 {
        1 + self.e_len()
    }

    /// Length of the consistent path through the f vertices.
    pub fn d_b(&self) -> u128 {
        1 + self.f_len()
    }

    fn check_size(&self, limit: u128) -> Result<()> {
        let size = self.e_len() + self.f_len() + 2;
        if size > limit {
            return Err(Error::TooLarge {
                what: "Klein graph vertex count",
                size,
                limit,
            });
        }
        Ok(())
    }

    /// Representatives e_1 .. e_{A_r}.
    pub fn e_vectors(&self) -> Result<Vec<IVec2>> {
        self.check_size(MAX_VERTICES)?;
        let mut out = vec![self.e_corners[0]];
        for (m, &k) in self.a.iter().enumerate() {
            let (base, dir) = (self.e_corners[m], self.f_corners[m]);
            for j in 1..=k {
                out.push(base.checked_add_scaled(dir, j as i128)?);
            }
        }
        Ok(out)
    }

    /// Representatives f_1 .. f_{B_l}.
    pub fn f_vectors(&self) -> Result<Vec<IVec2>> {
        self.check_size(MAX_VERTICES)?;
        let mut out = vec![self.f_corners[0]];
        for (m, &k) in self.b.iter().enumerate() {
            let (base, dir) = (self.f_corners[m], self.e_corners[m + 1]);
            for j in 1..=k {
                out.push(base.checked_add_scaled(dir, j as i128)?);
            }
        }
        Ok(out)
    }

    pub fn e_seq(&self) -> Result<Vec<ProjPoint>> {
        self.e_vectors()?
            .into_iter()
            .map(ProjPoint::from_vec)
            .collect()
    }

    pub fn f_seq(&self) -> Result<Vec<ProjPoint>> {
        self.f_vectors()?
            .into_iter()
            .map(ProjPoint::from_vec)
            .collect()
    }

    pub fn e_corner_points(&self) -> Result<Vec<ProjPoint>> {
        self.e_corners
            .iter()
            .map(|&w| ProjPoint::from_vec(w))
            .collect()
    }

    pub fn f_corner_points(&self) -> Result<Vec<ProjPoint>> {
        self.f_corners
            .iter()
            .map(|&w| ProjPoint::from_vec(w))
            .collect()
    }

    /// Corner strip z_0 .. z_N with z_{2m} = E_m, z_{2m+1} = F_m, N = r + l + 1.
    pub fn strip(&self) -> Vec<IVec2> {
        let n = self.r() + self.l() + 2;
        (0..n)
            .map(|j| {
                if j % 2 == 0 {
                    self.e_corners[j / 2]
                } else {
                    self.f_corners[j / 2]
                }
            })
            .collect()
    }

    /// Strip coefficients c_0 .. c_N: c_0 = c_N = 1, c_{2m+1} = a_{m+1}, c_{2m} = b_m,
    /// so that z_{j+1} = z_{j-1} + c_j z_j.
    pub fn strip_coefficients(&self) -> Vec<u64> {
        let n = self.r() + self.l() + 1;
        (0..=n)
            .map(|j| {
                if j == 0 || j == n {
                    1
                } else if j % 2 == 1 {
                    self.a[j / 2]
                } else {
                    self.b[j / 2 - 1]
                }
            })
            .collect()
    }

    pub fn to_doc(&self) -> Result<TransitionDoc> {
        Ok(TransitionDoc {
            x: self.x,
            y: self.y,
            orientation: self.orientation,
            e_seq: self.e_seq()?,
            f_seq: self.f_seq()?,
            a: self.a.clone(),
            b: self.b.clone(),
            big_a: self.big_a(),
            big_b: self.big_b(),
            r: self.r(),
            l: self.l(),
        })
    }
}

fn partial_sums(c: &[u64]) -> Vec<u128> {
    let mut out = Vec::with_capacity(c.len() + 2);
    let mut acc = 1u128;
    out.push(acc);
    for &k in c.iter().chain(std::iter::once(&1)) {
        acc += k as u128;
        out.push(acc);
    }
    out
}

/// Upper bound on materialized vertices.
pub const MAX_VERTICES: u128 = 5_000_000;

/// JSON form of [`TransitionData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub x: ProjPoint,
    pub y: ProjPoint,
    pub orientation: Orientation,
    pub e_seq: Vec<ProjPoint>,
    pub f_seq: Vec<ProjPoint>,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    #[serde(rename = "A")]
    pub big_a: Vec<u128>,
    #[serde(rename = "B")]
    pub big_b: Vec<u128>,
    pub r: usize,
    pub l: usize,
}

impl TransitionDoc {
    /// Checks the structural invariants of a decoded document.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Parse(m.to_string()));
        if self.r != self.a.len() || self.l != self.b.len() {
            return bad("r/l do not match a/b");
        }
        if !(self.r == self.l || self.r == self.l + 1) {
            return bad("r - l must be 0 or 1");
        }
        if self.a.iter().chain(&self.b).any(|&k| k == 0) {
            return bad("coefficients must be positive");
        }
        if self.big_a != partial_sums(&self.a) || self.big_b != partial_sums(&self.b) {
            return bad("A/B are not the partial sums of a/b");
        }
        if self.e_seq.len() as u128 != self.big_a[self.r]
            || self.f_seq.len() as u128 != self.big_b[self.l]
        {
            return bad("sequence lengths do not match A_r/B_l");
        }
        for w in self.e_seq.windows(2).chain(self.f_seq.windows(2)) {
            if !is_distant(w[0], w[1]) {
                return bad("consecutive vertices are not distant");
            }
        }
        Ok(())
    }
}

/// Induced subgraph on x, y and all vertices met by the transition algorithm.
/// Vertex order: x, e_seq, f_seq, y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinGraph {
    pub vertices: Vec<ProjPoint>,
    pub edges: BTreeSet<(usize, usize)>,
    /// Indices of corner vertices.
    pub corners: BTreeSet<usize>,
}

impl KleinGraph {
    pub fn index_of(&self, p: ProjPoint) -> Option<usize> {
        self.vertices.iter().position(|&v| v == p)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    pub fn to_doc(&self) -> KleinDoc {
        KleinDoc {
            vertices: self.vertices.clone(),
            corners: self.corners.iter().map(|&i| self.vertices[i]).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j)| [self.vertices[i], self.vertices[j]])
                .collect(),
        }
    }
}

/// JSON form of a Klein or corner graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KleinDoc {
    pub vertices: Vec<ProjPoint>,
    pub corners: Vec<ProjPoint>,
    pub edges: Vec<[ProjPoint; 2]>,
}

pub fn klein_graph(td: &TransitionData) -> Result<KleinGraph> {
    let e = td.e_seq()?;
    let f = td.f_seq()?;
    let (ne, nf) = (e.len(), f.len());
    let ei = |k: usize| 1 + k; // 0-based e index
    let fi = |k: usize| 1 + ne + k;
    let yi = 1 + ne + nf;
    let mut vertices = Vec::with_capacity(yi + 1);
    vertices.push(td.x);
    vertices.extend(&e);
    vertices.extend(&f);
    vertices.push(td.y);

    let mut edges = BTreeSet::new();
    let mut add = |i: usize, j: usize| {
        edges.insert((i.min(j), i.max(j)));
    };
    add(0, ei(0));
    add(0, fi(0));
    add(ei(0), fi(0));
    add(yi, ei(ne - 1));
    add(yi, fi(nf - 1));
    for k in 1..ne {
        add(ei(k - 1), ei(k));
    }
    for k in 1..nf {
        add(fi(k - 1), fi(k));
    }
    // fans: the e-run after E_m pivots on F_m, the f-run after F_m pivots on E_{m+1}
    let big_a = td.big_a();
    let big_b = td.big_b();
    for m in 0..td.r() {
        let fm = (big_b[m] - 1) as usize;
        for k in big_a[m]..=big_a[m + 1] {
            add(fi(fm), ei(k as usize - 1));
        }
    }
    for m in 0..td.l() {
        let em = (big_a[m + 1] - 1) as usize;
        for k in big_b[m]..=big_b[m + 1] {
            add(ei(em), fi(k as usize - 1));
        }
    }
    let mut corners = BTreeSet::new();
    for &k in &big_a[..=td.r()] {
        corners.insert(ei(k as usize - 1));
    }
    for &k in &big_b[..=td.l()] {
        corners.insert(fi(k as usize - 1));
    }
    Ok(KleinGraph {
        vertices,
        edges,
        corners,
    })
}

/// Induced subgraph of the Klein graph on corner vertices and the endpoints.
pub fn corner_graph(kg: &KleinGraph) -> KleinGraph {
    let last = kg.vertices.len() - 1;
    let keep: Vec<usize> = (0..=last)
        .filter(|i| *i == 0 || *i == last || kg.corners.contains(i))
        .collect();
    let mut remap = vec![usize::MAX; kg.vertices.len()];
    for (n, &o) in keep.iter().enumerate() {
        remap[o] = n;
    }
    let vertices = keep.iter().map(|&i| kg.vertices[i]).collect::<Vec<_>>();
    // induced edges are recomputed: corners can be adjacent without a fan edge in K
    let mut edges = BTreeSet::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if is_distant(vertices[i], vertices[j]) {
                edges.insert((i, j));
            }
        }
    }
    let corners = kg.corners.iter().map(|&i| remap[i]).collect();
    KleinGraph {
        vertices,
        edges,
        corners,
    }
}

/// One Klein sail: the compact boundary chain of the hull of nonzero lattice
/// points in an open cone, clipped to a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sail {
    /// Cone generators (d1, d2), counterclockwise.
    pub cone: [IVec2; 2],
    /// Hull vertices along the chain from the d1 side to the d2 side.
    pub vertices: Vec<IVec2>,
    /// All lattice points on the chain, in order.
    pub lattice_points: Vec<IVec2>,
}

fn cross(o: IVec2, p: IVec2, q: IVec2) -> i128 {
    let dp = IVec2::new(p.u - o.u, p.v - o.v);
    let dq = IVec2::new(q.u - o.u, q.v - o.v);
    det2(dp, dq)
}

// smallest / largest integer u with alpha * u > beta
fn strict_bound(alpha: i128, beta: i128) -> (Option<i128>, Option<i128>, bool) {
    if alpha > 0 {
        (Some(beta.div_euclid(alpha) + 1), None, true)
    } else if alpha < 0 {
        // u < beta / alpha
        let (n, d) = (-beta, -alpha);
        let hi = if n.rem_euclid(d) == 0 {
            n / d - 1
        } else {
            n.div_euclid(d)
        };
        (None, Some(hi), true)
    } else {
        (None, None, 0 > beta)
    }
}

/// Convex chain facing the origin of the hull of the lattice points strictly
/// inside the cone spanned by d1, d2 with coordinates in [-w, w].
fn sail_in_cone(d1: IVec2, d2: IVec2, w: i64) -> Sail {
    // det[d1, p] > 0:  -d1.v * u > -d1.u * v ;  det[p, d2] > 0:  d2.v * u > d2.u * v
    let mut pts = Vec::new();
    for v in -w..=w {
        let vv = v as i128;
        let (lo1, hi1, ok1) = strict_bound(-(d1.v as i128), -(d1.u as i128) * vv);
        let (lo2, hi2, ok2) = strict_bound(d2.v as i128, d2.u as i128 * vv);
        if !(ok1 && ok2) {
            continue;
        }
        let lo = [lo1, lo2, Some(-(w as i128))]
            .into_iter()
            .flatten()
            .max()
            .unwrap();
        let hi = [hi1, hi2, Some(w as i128)]
            .into_iter()
            .flatten()
            .min()
            .unwrap();
        if lo > hi {
            continue;
        }
        pts.push(IVec2::new(lo as i64, v));
        if hi != lo {
            pts.push(IVec2::new(hi as i64, v));
        }
    }
    pts.sort();
    pts.dedup();
    let chain = facing_chain(&pts);
    // orient from the d1 side; edges parallel to the walls come from clipping
    let mut chain = chain;
    if chain.len() >= 2 && det2(chain[0], chain[chain.len() - 1]) < 0 {
        chain.reverse();
    }
    while chain.len() >= 2 && det2(sub(chain[1], chain[0]), d1) == 0 {
        chain.remove(0);
    }
    while chain.len() >= 2 && det2(sub(chain[chain.len() - 1], chain[chain.len() - 2]), d2) == 0 {
        chain.pop();
    }
    let mut lattice = Vec::new();
    for (i, &p) in chain.iter().enumerate() {
        if i == 0 {
            lattice.push(p);
            continue;
        }
        let q = chain[i - 1];
        let (du, dv) = (p.u - q.u, p.v - q.v);
        let g = num_integer::Integer::gcd(&du, &dv);
        for t in 1..=g {
            lattice.push(IVec2::new(q.u + du / g * t, q.v + dv / g * t));
        }
    }
    Sail {
        cone: [d1, d2],
        vertices: chain,
        lattice_points: lattice,
    }
}

// Part of the convex hull boundary visible from the origin.
fn facing_chain(pts: &[IVec2]) -> Vec<IVec2> {
    if pts.len() <= 1 {
        return pts.to_vec();
    }
    let mut lower: Vec<IVec2> = Vec::new();
    for &p in pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<IVec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let hull: Vec<IVec2> = lower.into_iter().chain(upper).collect();
    let h = hull.len();
    if h == 1 {
        return hull;
    }
    let origin = IVec2::new(0, 0);
    let faces = |i: usize| cross(hull[i], hull[(i + 1) % h], origin) < 0;
    let Some(s) = (0..h).find(|&i| faces(i) && !faces((i + h - 1) % h)) else {
        return vec![*hull.iter().min_by_key(|p| p.u.abs() + p.v.abs()).unwrap()];
    };
    let mut c = vec![hull[s]];
    let mut i = s;
    while faces(i) && c.len() <= h {
        i = (i + 1) % h;
        c.push(hull[i]);
    }
    c
}

fn sub(p: IVec2, q: IVec2) -> IVec2 {
    IVec2::new(p.u - q.u, p.v - q.v)
}

/// Default clipping half-width: ten times the largest endpoint coordinate.
pub fn default_sail_window(x: ProjPoint, y: ProjPoint) -> i64 {
    let m = x.norm().max(y.norm()).max(1);
    i64::try_from(m.saturating_mul(10)).unwrap_or(i64::MAX)
}

/// Sails of the four cones cut by the lines through x and y, for the cones
/// (x, y), (y, -x), (-x, -y), (-y, x) with det[x, y] > 0.
pub fn sails(x: ProjPoint, y: ProjPoint, window: i64) -> Result<[Sail; 4]> {
    if x == y {
        return Err(trivial(x, y));
    }
    if window < 1 {
        return Err(Error::Parse(format!(
            "sail window must be positive, got {window}"
        )));
    }
    if window > 100_000 {
        return Err(Error::TooLarge {
            what: "sail window",
            size: window as u128,
            limit: 100_000,
        });
    }
    let xv = x.vec();
    let mut yv = y.vec();
    if det2(xv, yv) < 0 {
        yv = yv.checked_neg()?;
    }
    let nx = xv.checked_neg()?;
    let ny = yv.checked_neg()?;
    Ok([
        sail_in_cone(xv, yv, window),
        sail_in_cone(yv, nx, window),
        sail_in_cone(nx, ny, window),
        sail_in_cone(ny, xv, window),
    ])
}
