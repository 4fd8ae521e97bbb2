//! Consistent paths, standard paths, distances, uniqueness of geodesics
//! and Hamiltonian consistent cycles.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{is_distant, NeighborSequence, ProjPoint};
use crate::transition::{endpoint_for_coefficients, klein_graph, transition, TransitionData};

/// Ordered vertex sequence with distant neighbours and no repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<ProjPoint>", into = "Vec<ProjPoint>")]
pub struct Path {
    vertices: Vec<ProjPoint>,
}

impl Path {
    pub fn new(vertices: Vec<ProjPoint>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        for w in vertices.windows(2) {
            if !is_distant(w[0], w[1]) {
                return Err(Error::InvalidPath(format!(
                    "{} and {} are not distant",
                    w[0], w[1]
                )));
            }
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidPath("repeated vertex".into()));
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[ProjPoint] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn first(&self) -> ProjPoint {
        self.vertices[0]
    }

    pub fn last(&self) -> ProjPoint {
        self.vertices[self.vertices.len() - 1]
    }
}

impl TryFrom<Vec<ProjPoint>> for Path {
    type Error = Error;
    fn try_from(v: Vec<ProjPoint>) -> Result<Self> {
        Path::new(v)
    }
}

impl From<Path> for Vec<ProjPoint> {
    fn from(p: Path) -> Self {
        p.vertices
    }
}

/// Cyclically ordered vertices, at least three, all distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CycleDoc", into = "CycleDoc")]
pub struct Cycle {
    vertices: Vec<ProjPoint>,
}

#[derive(Serialize, Deserialize)]
struct CycleDoc {
    vertices: Vec<ProjPoint>,
    closed: bool,
}

impl Cycle {
    pub fn new(vertices: Vec<ProjPoint>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPath(
                "a cycle needs at least three vertices".into(),
            ));
        }
        let n = vertices.len();
        for i in 0..n {
            let (p, q) = (vertices[i], vertices[(i + 1) % n]);
            if !is_distant(p, q) {
                return Err(Error::InvalidPath(format!("{p} and {q} are not distant")));
            }
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidPath("repeated vertex".into()));
        }
        Ok(Cycle { vertices })
    }

    pub fn vertices(&self) -> &[ProjPoint] {
        &self.vertices
    }

    /// Number of edges, equal to the number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<CycleDoc> for Cycle {
    type Error = Error;
    fn try_from(d: CycleDoc) -> Result<Self> {
        if !d.closed {
            return Err(Error::Parse(
                "cycle documents must have closed: true".into(),
            ));
        }
        Cycle::new(d.vertices)
    }
}

impl From<Cycle> for CycleDoc {
    fn from(c: Cycle) -> Self {
        CycleDoc {
            vertices: c.vertices,
            closed: true,
        }
    }
}

fn with_ends(x: ProjPoint, mid: Vec<ProjPoint>, y: ProjPoint) -> Result<Path> {
    let mut v = Vec::with_capacity(mid.len() + 2);
    v.push(x);
    v.extend(mid);
    v.push(y);
    Path::new(v)
}

/// The two consistent paths (through the e vertices, through the f vertices),
/// of lengths 1 + A_r and 1 + B_l.
pub fn consistent_paths(td: &TransitionData) -> Result<(Path, Path)> {
    Ok((
        with_ends(td.x, td.e_seq()?, td.y)?,
        with_ends(td.x, td.f_seq()?, td.y)?,
    ))
}

fn strip_points(td: &TransitionData) -> Result<Vec<ProjPoint>> {
    td.strip().into_iter().map(ProjPoint::from_vec).collect()
}

/// Alternating corner path x, f_1, e_{A_1}, f_{B_1}, ..., y.
pub fn standard_path(td: &TransitionData) -> Result<Path> {
    let z = strip_points(td)?;
    let n = z.len() - 1;
    let end = (n - 1).max(1);
    with_ends(td.x, z[1..=end].to_vec(), td.y)
}

/// The standard path with every run of 1's crossed by chords, greedily.
pub fn standard_shortest_path(td: &TransitionData) -> Result<Path> {
    let z = strip_points(td)?;
    let c = td.strip_coefficients();
    let n = z.len() - 1;
    let mut mid = vec![z[1]];
    let mut pos = 1;
    while pos + 1 < n {
        if pos + 2 < n && c[pos + 1] == 1 {
            pos += 2;
        } else {
            pos += 1;
        }
        mid.push(z[pos]);
    }
    with_ends(td.x, mid, td.y)
}

/// Run statistics feeding the distance formula, indexed by k = 1..l
/// (stored at position k - 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShorteningAnalysis {
    pub s: Vec<u64>,
    pub t: Vec<u64>,
    pub a_tilde: Vec<u64>,
    pub b_tilde: Vec<u64>,
    #[serde(rename = "D")]
    pub d: BTreeSet<usize>,
}

impl ShorteningAnalysis {
    /// Number of k in D with min(a~_k, b~_k) = 1.
    pub fn savings(&self) -> u64 {
        self.d
            .iter()
            .filter(|&&k| {
                let (at, bt) = (self.a_tilde[k - 1], self.b_tilde[k - 1]);
                // floor((floor(1/at) + floor(1/bt)) / 2 + 1/2)
                let sum = (1 / at) + (1 / bt);
                sum.div_ceil(2) == 1
            })
            .count() as u64
    }
}

fn extended(c: &[u64]) -> Vec<u64> {
    let mut v = Vec::with_capacity(c.len() + 2);
    v.push(1);
    v.extend_from_slice(c);
    v.push(1);
    v
}

// number of consecutive 1's in seq[lo..k] ending at k - 1
fn trailing_ones(seq: &[u64], k: usize, lo: usize) -> u64 {
    let mut j = 0;
    let mut i = k;
    while i > lo && seq[i - 1] == 1 {
        j += 1;
        i -= 1;
    }
    j
}

/// s_k counts the run of 1's in b ending at b_{k-1}, including the leading
/// b_0 = 1; t_k counts the run in a ending at a_{k-1} and stops at a_1.
pub fn shortening(td: &TransitionData) -> Result<ShorteningAnalysis> {
    let (r, l) = (td.r(), td.l());
    if l == 0 {
        return Err(Error::TrivialPair { x: td.x, y: td.y });
    }
    let a = extended(&td.a);
    let b = extended(&td.b);
    let mut out = ShorteningAnalysis {
        s: vec![],
        t: vec![],
        a_tilde: vec![],
        b_tilde: vec![],
        d: BTreeSet::new(),
    };
    for k in 1..=l {
        let s = trailing_ones(&b, k, 0);
        let t = trailing_ones(&a, k, 1);
        let at = if k == 1 { a[k].max(2) } else { a[k] };
        let bt = if r == l && k == l { b[k].max(2) } else { b[k] };
        if !(bt > 1 && a[k] == 1 && s > t) {
            out.d.insert(k);
        }
        out.s.push(s);
        out.t.push(t);
        out.a_tilde.push(at);
        out.b_tilde.push(bt);
    }
    Ok(out)
}

/// Length of the standard path: r + l + 1, or 2 when l = 0.
pub fn standard_length(td: &TransitionData) -> u64 {
    if td.l() == 0 {
        2
    } else {
        (td.r() + td.l() + 1) as u64
    }
}

/// Distance from the transition data of a non-adjacent pair.
pub fn distance_of(td: &TransitionData) -> Result<u64> {
    if td.l() == 0 {
        return Ok(2);
    }
    Ok(standard_length(td) - shortening(td)?.savings())
}

/// Graph distance in the distant graph.
pub fn distance(x: ProjPoint, y: ProjPoint) -> Result<u64> {
    if x == y {
        return Ok(0);
    }
    if is_distant(x, y) {
        return Ok(1);
    }
    distance_of(&transition(x, y)?)
}

// maximal runs of 1's as inclusive index ranges
fn blocks(seq: &[u64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        if seq[i] == 1 {
            let mut j = i;
            while j + 1 < seq.len() && seq[j + 1] == 1 {
                j += 1;
            }
            out.push((i, j));
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

fn overlapping_ones(a: &[u64], b: &[u64], r: usize, l: usize) -> bool {
    for &(l1, l2) in &blocks(b) {
        for &(r1, r2) in &blocks(a) {
            let o1 = l1 < r1 && r1 <= l2 + 1 && l2 < r2 && (r != l + 1 || l2 < l + 1);
            let o2 = l1 < r1 && r1 <= l2 && l2 == r2 && r2 == r + 1 && r + 1 == l + 1;
            let o3 = r1 == 0 && l1 == 0 && l2 < r2;
            let o4 = r1 <= l1 && l1 <= r2 && r2 <= l2 && l1 != 0 && (r != l || r2 < r + 1);
            let o5 = r == l + 1 && r1 <= l1 && l1 <= l2 && l2 < r2 && r2 == r + 1;
            if o1 || o2 || o3 || o4 || o5 {
                return true;
            }
        }
    }
    false
}

fn twos_branch(a: &[u64], b: &[u64], r: usize, l: usize) -> bool {
    for k in 2..=l {
        if b[k] == 2 && a[k] > 1 && a[k + 1] > 1 {
            return true;
        }
    }
    if b[1] == 2 && r >= 2 && a[2] > 1 {
        return true;
    }
    (2..=l).any(|k| a[k] == 2 && b[k] > 1 && trailing_ones(b, k, 0) <= trailing_ones(a, k, 1))
}

/// True iff exactly one shortest path joins the endpoints.
pub fn is_unique_shortest(td: &TransitionData) -> bool {
    let (r, l) = (td.r(), td.l());
    if l == 0 {
        return r != 0;
    }
    if td.a.iter().chain(&td.b).all(|&c| c == 1) {
        return r != l;
    }
    let a = extended(&td.a);
    let b = extended(&td.b);
    !(overlapping_ones(&a, &b, r, l) || twos_branch(&a, &b, r, l))
}

/// Upper bound on enumerated geodesics.
pub const MAX_PATHS: u128 = 100_000;

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

fn geodesic_counts(adj: &[Vec<usize>], dx: &[usize]) -> Vec<u128> {
    let mut order: Vec<usize> = (0..adj.len()).filter(|&v| dx[v] != usize::MAX).collect();
    order.sort_by_key(|&v| dx[v]);
    let mut cnt = vec![0u128; adj.len()];
    cnt[order[0]] = 1;
    for &v in &order[1..] {
        cnt[v] = adj[v]
            .iter()
            .filter(|&&w| dx[w] + 1 == dx[v])
            .map(|&w| cnt[w])
            .sum();
    }
    cnt
}

/// Number of shortest paths between x and y.
pub fn count_shortest_paths(x: ProjPoint, y: ProjPoint) -> Result<u128> {
    if x == y || is_distant(x, y) {
        return Ok(1);
    }
    let kg = klein_graph(&transition(x, y)?)?;
    let adj = kg.adjacency();
    let dx = bfs(&adj, 0);
    Ok(geodesic_counts(&adj, &dx)[adj.len() - 1])
}

/// Every shortest path, found by breadth-first search inside the Klein graph.
/// At each branch f vertices are tried before e vertices.
pub fn all_shortest_paths(x: ProjPoint, y: ProjPoint) -> Result<Vec<Path>> {
    if x == y {
        return Ok(vec![Path::new(vec![x])?]);
    }
    if is_distant(x, y) {
        return Ok(vec![Path::new(vec![x, y])?]);
    }
    let td = transition(x, y)?;
    let kg = klein_graph(&td)?;
    let n = kg.vertices.len();
    let ne = td.e_len() as usize;
    let mut adj = kg.adjacency();
    // f block is 1+ne..n-1; rank it first
    let rank = |v: usize| if v > ne && v + 1 < n { (0, v) } else { (1, v) };
    for row in &mut adj {
        row.sort_by_key(|&w| rank(w));
    }
    let dx = bfs(&adj, 0);
    let dy = bfs(&adj, n - 1);
    let total = geodesic_counts(&adj, &dx)[n - 1];
    if total > MAX_PATHS {
        return Err(Error::TooLarge {
            what: "shortest path count",
            size: total,
            limit: MAX_PATHS,
        });
    }
    let d = dx[n - 1];
    let mut out = Vec::new();
    let mut stack = vec![0usize];
    fn walk(
        adj: &[Vec<usize>],
        dx: &[usize],
        dy: &[usize],
        d: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *stack.last().unwrap();
        if dy[v] == 0 {
            out.push(stack.clone());
            return;
        }
        for &w in &adj[v] {
            if dx[w] == dx[v] + 1 && dx[w] + dy[w] == d {
                stack.push(w);
                walk(adj, dx, dy, d, stack, out);
                stack.pop();
            }
        }
    }
    let mut idx = Vec::new();
    walk(&adj, &dx, &dy, d, &mut stack, &mut idx);
    for p in idx {
        out.push(Path::new(p.into_iter().map(|i| kg.vertices[i]).collect())?);
    }
    Ok(out)
}

/// A Hamiltonian consistent cycle through x whose two arcs have lengths d_a and d_b.
/// The cycle lists x, the interior of the d_a arc, the far endpoint, then the
/// interior of the d_b arc backwards.
pub fn hamiltonian_cycle(x: ProjPoint, d_a: u64, d_b: u64) -> Result<Cycle> {
    if d_a == 0 || d_b == 0 || d_a + d_b <= 2 {
        return Err(Error::InvalidSplit { d_a, d_b });
    }
    if d_a == 1 || d_b == 1 {
        // y adjacent to x; the long arc is the fan y + j x
        let k = d_a.max(d_b) as i64;
        let seq = NeighborSequence::new(x);
        let y = seq.seed;
        let arc = (1..k)
            .map(|j| ProjPoint::from_vec(y.checked_add_scaled(x.vec(), j as i128)?))
            .collect::<Result<Vec<_>>>()?;
        let yp = ProjPoint::from_vec(y)?;
        let mut v = vec![x];
        if d_a == 1 {
            v.push(yp);
            v.extend(arc);
        } else {
            v.extend(arc.into_iter().rev());
            v.push(yp);
        }
        return Cycle::new(v);
    }
    let (mut sa, mut sb) = (d_a - 2, d_b - 2);
    let swapped = sa == 0 && sb > 0;
    if swapped {
        std::mem::swap(&mut sa, &mut sb);
    }
    let r = sa.min(sb + 1);
    let l = sb.min(r);
    let runs = |len: u64, total: u64| -> Vec<u64> {
        if len == 0 {
            return vec![];
        }
        let mut v = vec![1; len as usize - 1];
        v.push(total - (len - 1));
        v
    };
    let td = endpoint_for_coefficients(x, &runs(r, sa), &runs(l, sb))?;
    let (mut first, mut second) = (td.e_seq()?, td.f_seq()?);
    if swapped {
        std::mem::swap(&mut first, &mut second);
    }
    let mut v = vec![x];
    v.extend(first);
    v.push(td.y);
    v.extend(second.into_iter().rev());
    Cycle::new(v)
}
