//! Brute-force ground truth: breadth-first search on a finite window of the
//! distant graph, built without any of the transition machinery.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrices::{factorization, has_double_two, word_path};
use crate::paths::{distance_of, is_unique_shortest, standard_length, Path, MAX_PATHS};
use crate::point::{cone_class, is_distant, ConeClass, ProjPoint};
use crate::transition::{corner_graph, klein_graph, transition};

const UNSEEN: u32 = u32::MAX;

/// Largest accepted bound.
pub const MAX_BOUND: i64 = 4096;

/// Canonical points with both coordinates in [-M, M].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundedGraphView {
    bound: i64,
}

impl BoundedGraphView {
    pub fn new(bound: i64) -> Result<Self> {
        if bound < 1 {
            return Err(Error::Parse(format!("bound must be positive, got {bound}")));
        }
        if bound > MAX_BOUND {
            return Err(Error::TooLarge {
                what: "search bound",
                size: bound as u128,
                limit: MAX_BOUND as u128,
            });
        }
        Ok(BoundedGraphView { bound })
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn contains(&self, p: ProjPoint) -> bool {
        p.a().abs() <= self.bound && p.b().abs() <= self.bound
    }

    fn slots(&self) -> usize {
        let m = self.bound as usize;
        (m + 1) * (2 * m + 1)
    }

    fn index(&self, p: ProjPoint) -> usize {
        let m = self.bound;
        (p.b() * (2 * m + 1) + p.a() + m) as usize
    }

    /// All points distant to `p` inside the view, sorted.
    pub fn neighbors(&self, p: ProjPoint) -> Vec<ProjPoint> {
        let mut out = Vec::new();
        self.for_each_neighbor(p, |q| out.push(q));
        out.sort();
        out
    }

    fn for_each_neighbor(&self, p: ProjPoint, mut f: impl FnMut(ProjPoint)) {
        let (a, b) = (p.a(), p.b());
        let m = self.bound;
        let g = a.extended_gcd(&b);
        debug_assert_eq!(g.gcd, 1);
        // det[p, c0] = a * g.x + b * g.y = 1
        let (cu, cv) = (-g.y, g.x);
        // c_n = c0 - n p, need |cu - n a| <= m and |cv - n b| <= m
        let range = |c: i64, s: i64| -> Option<(i64, i64)> {
            if s == 0 {
                return if c.abs() <= m {
                    Some((i64::MIN, i64::MAX))
                } else {
                    None
                };
            }
            let (lo, hi) = if s > 0 {
                (
                    Integer::div_ceil(&(c - m), &s),
                    Integer::div_floor(&(c + m), &s),
                )
            } else {
                (
                    Integer::div_ceil(&(-m - c), &-s),
                    Integer::div_floor(&(m - c), &-s),
                )
            };
            Some((lo, hi))
        };
        let (Some((l1, h1)), Some((l2, h2))) = (range(cu, a), range(cv, b)) else {
            return;
        };
        let (lo, hi) = (l1.max(l2), h1.min(h2));
        for n in lo..=hi {
            let (u, v) = (cu - n * a, cv - n * b);
            let q = if v < 0 || (v == 0 && u < 0) {
                (-u, -v)
            } else {
                (u, v)
            };
            f(ProjPoint::new(q.0, q.1).expect("unimodular by construction"));
        }
    }
}

struct Layers {
    dist: Vec<u32>,
    count: Vec<u128>,
    distance: u32,
}

fn layered_bfs(view: &BoundedGraphView, x: ProjPoint, y: ProjPoint) -> Result<Layers> {
    layered_bfs_in(view, x, y, &|_| true)
}

// only interior vertices passing `allow` are entered
fn layered_bfs_in(
    view: &BoundedGraphView,
    x: ProjPoint,
    y: ProjPoint,
    allow: &dyn Fn(ProjPoint) -> bool,
) -> Result<Layers> {
    for p in [x, y] {
        if !view.contains(p) {
            return Err(Error::OutOfBound {
                point: p,
                bound: view.bound,
            });
        }
    }
    let mut dist = vec![UNSEEN; view.slots()];
    let mut count = vec![0u128; view.slots()];
    let (xi, yi) = (view.index(x), view.index(y));
    dist[xi] = 0;
    count[xi] = 1;
    let mut frontier = vec![x];
    let mut t = 0u32;
    while dist[yi] == UNSEEN {
        if frontier.is_empty() {
            return Err(Error::Unreachable { bound: view.bound });
        }
        let mut next = Vec::new();
        for &v in &frontier {
            let cv = count[view.index(v)];
            let mut overflow = false;
            view.for_each_neighbor(v, |w| {
                let wi = view.index(w);
                if w != y && !allow(w) {
                    return;
                }
                if dist[wi] == UNSEEN {
                    dist[wi] = t + 1;
                    count[wi] = cv;
                    next.push(w);
                } else if dist[wi] == t + 1 {
                    match count[wi].checked_add(cv) {
                        Some(c) => count[wi] = c,
                        None => overflow = true,
                    }
                }
            });
            if overflow {
                return Err(Error::Overflow);
            }
        }
        frontier = next;
        t += 1;
    }
    let distance = dist[yi];
    Ok(Layers {
        dist,
        count,
        distance,
    })
}

pub fn bfs_distance(x: ProjPoint, y: ProjPoint, bound: i64) -> Result<u64> {
    let view = BoundedGraphView::new(bound)?;
    Ok(layered_bfs(&view, x, y)?.distance as u64)
}

/// Distance, number of shortest paths and the set of vertices lying on one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicSummary {
    pub distance: u64,
    pub count: u128,
    pub on_geodesic: BTreeSet<ProjPoint>,
}

fn summarize(
    view: &BoundedGraphView,
    x: ProjPoint,
    y: ProjPoint,
) -> Result<(GeodesicSummary, Layers)> {
    summarize_in(view, x, y, &|_| true)
}

fn summarize_in(
    view: &BoundedGraphView,
    x: ProjPoint,
    y: ProjPoint,
    allow: &dyn Fn(ProjPoint) -> bool,
) -> Result<(GeodesicSummary, Layers)> {
    let layers = layered_bfs_in(view, x, y, allow)?;
    let mut on = BTreeSet::from([y]);
    let mut layer = vec![y];
    for t in (1..=layers.distance).rev() {
        let mut prev = BTreeSet::new();
        for &v in &layer {
            view.for_each_neighbor(v, |w| {
                if layers.dist[view.index(w)] == t - 1 {
                    prev.insert(w);
                }
            });
        }
        on.extend(prev.iter().copied());
        layer = prev.into_iter().collect();
    }
    let summary = GeodesicSummary {
        distance: layers.distance as u64,
        count: layers.count[view.index(y)],
        on_geodesic: on,
    };
    Ok((summary, layers))
}

pub fn geodesic_summary(x: ProjPoint, y: ProjPoint, bound: i64) -> Result<GeodesicSummary> {
    let view = BoundedGraphView::new(bound)?;
    Ok(summarize(&view, x, y)?.0)
}

/// Shortest paths whose interior vertices all lie in one class of the cone
/// relation of x and y.
pub fn class_summary(
    x: ProjPoint,
    y: ProjPoint,
    class: ConeClass,
    bound: i64,
) -> Result<GeodesicSummary> {
    if x == y || is_distant(x, y) {
        return Err(Error::TrivialPair { x, y });
    }
    let view = BoundedGraphView::new(bound)?;
    let allow = |w: ProjPoint| w != x && cone_class(x, y, w) == Ok(class);
    Ok(summarize_in(&view, x, y, &allow)?.0)
}

/// All shortest paths inside the view, in lexicographic order of vertices.
pub fn bfs_geodesics(x: ProjPoint, y: ProjPoint, bound: i64) -> Result<Vec<Path>> {
    let view = BoundedGraphView::new(bound)?;
    let (s, layers) = summarize(&view, x, y)?;
    if s.count > MAX_PATHS {
        return Err(Error::TooLarge {
            what: "shortest path count",
            size: s.count,
            limit: MAX_PATHS,
        });
    }
    let mut out = Vec::new();
    let mut stack = vec![x];
    fn walk(
        view: &BoundedGraphView,
        layers: &Layers,
        on: &BTreeSet<ProjPoint>,
        stack: &mut Vec<ProjPoint>,
        out: &mut Vec<Path>,
    ) -> Result<()> {
        let v = *stack.last().unwrap();
        let dv = layers.dist[view.index(v)];
        if dv == layers.distance {
            out.push(Path::new(stack.clone())?);
            return Ok(());
        }
        for w in view.neighbors(v) {
            if layers.dist[view.index(w)] == dv + 1 && on.contains(&w) {
                stack.push(w);
                walk(view, layers, on, stack, out)?;
                stack.pop();
            }
        }
        Ok(())
    }
    walk(&view, &layers, &s.on_geodesic, &mut stack, &mut out)?;
    Ok(out)
}

/// M = max(64, 4 * largest endpoint coordinate).
pub fn default_bound(x: ProjPoint, y: ProjPoint) -> i64 {
    let m = x.norm().max(y.norm());
    (m.saturating_mul(4).max(64)).min(i64::MAX as u64) as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// None selects [`default_bound`].
    pub bound: Option<i64>,
    /// Repeat the search at twice the bound and require the same distance.
    pub stability: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bound: None,
            stability: true,
        }
    }
}

/// One JSON line of a verification sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub x: ProjPoint,
    pub y: ProjPoint,
    pub bound: i64,
    pub bfs_distance: Option<u64>,
    pub formula_distance: Option<u64>,
    pub geodesic_count: Option<u128>,
    pub predicted_unique: Option<bool>,
    pub standard_word_length: Option<u64>,
    pub reduced_word_length: Option<u64>,
    pub matrices: Option<usize>,
    pub checks: Checks,
    pub failures: Vec<String>,
    pub ok: bool,
}

/// Outcome of each comparison. `None` when it does not apply to the pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub distance: Option<bool>,
    pub uniqueness: Option<bool>,
    pub word_length: Option<bool>,
    pub reduced_path: Option<bool>,
    pub matrices: Option<bool>,
    pub klein_containment: Option<bool>,
    pub corner_geodesic: Option<bool>,
    pub stable: Option<bool>,
}

struct Recorder {
    failures: Vec<String>,
}

impl Recorder {
    fn check(&mut self, slot: &mut Option<bool>, ok: bool, what: impl FnOnce() -> String) {
        *slot = Some(ok);
        if !ok {
            self.failures.push(what());
        }
    }
}

fn corner_distance(x: ProjPoint, y: ProjPoint) -> Result<u64> {
    let cg = corner_graph(&klein_graph(&transition(x, y)?)?);
    let adj = cg.adjacency();
    let mut dist = vec![u64::MAX; adj.len()];
    dist[0] = 0;
    let mut q = std::collections::VecDeque::from([0usize]);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if dist[w] == u64::MAX {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    Ok(dist[adj.len() - 1])
}

/// Compares every closed form for the pair with the oracle.
pub fn verify_pair(x: ProjPoint, y: ProjPoint, opts: VerifyOptions) -> VerifyReport {
    let bound = opts.bound.unwrap_or_else(|| default_bound(x, y));
    let mut rep = VerifyReport {
        x,
        y,
        bound,
        bfs_distance: None,
        formula_distance: None,
        geodesic_count: None,
        predicted_unique: None,
        standard_word_length: None,
        reduced_word_length: None,
        matrices: None,
        checks: Checks::default(),
        failures: vec![],
        ok: false,
    };
    let mut rec = Recorder { failures: vec![] };
    if let Err(e) = verify_into(x, y, bound, opts.stability, &mut rep, &mut rec) {
        rec.failures.push(e.to_string());
    }
    rep.ok = rec.failures.is_empty();
    rep.failures = rec.failures;
    rep
}

fn verify_into(
    x: ProjPoint,
    y: ProjPoint,
    bound: i64,
    stability: bool,
    rep: &mut VerifyReport,
    rec: &mut Recorder,
) -> Result<()> {
    let view = BoundedGraphView::new(bound)?;
    let (s, _) = summarize(&view, x, y)?;
    rep.bfs_distance = Some(s.distance);
    rep.geodesic_count = Some(s.count);
    if stability {
        let wide = BoundedGraphView::new(bound.checked_mul(2).ok_or(Error::Overflow)?)?;
        let d2 = layered_bfs(&wide, x, y)?.distance as u64;
        rec.check(&mut rep.checks.stable, d2 == s.distance, || {
            format!(
                "bfs distance {} at bound {bound} but {d2} at {}",
                s.distance,
                2 * bound
            )
        });
    }
    let formula = if x == y {
        0
    } else if is_distant(x, y) {
        1
    } else {
        let td = transition(x, y)?;
        let f = distance_of(&td)?;
        let unique = is_unique_shortest(&td);
        rep.predicted_unique = Some(unique);
        rec.check(&mut rep.checks.uniqueness, unique == (s.count == 1), || {
            format!("predicate unique={unique} but {} geodesics", s.count)
        });
        let kg = klein_graph(&td)?;
        let kv: BTreeSet<_> = kg.vertices.iter().copied().collect();
        let outside: Vec<_> = s.on_geodesic.difference(&kv).collect();
        rec.check(
            &mut rep.checks.klein_containment,
            outside.is_empty(),
            || format!("geodesic vertices outside the Klein graph: {outside:?}"),
        );
        let cd = corner_distance(x, y)?;
        rec.check(&mut rep.checks.corner_geodesic, cd == s.distance, || {
            format!("corner graph distance {cd} vs {}", s.distance)
        });
        let fac = factorization(x, y)?;
        let sl = fac.standard.word.len() as u64;
        let rl = fac.reduced.len() as u64;
        rep.standard_word_length = Some(sl);
        rep.reduced_word_length = Some(rl);
        let std_len = standard_length(&td);
        let no9 = !has_double_two(&fac.reduced);
        rec.check(
            &mut rep.checks.word_length,
            sl == std_len && rl == s.distance && no9,
            || {
                format!(
                    "word lengths {sl}/{rl} vs standard {std_len}/distance {}, pattern-free {no9}",
                    s.distance
                )
            },
        );
        let rp = word_path(&fac.reduced, &fac.standard.basis)?;
        let rp_ok = rp.last() == y && rp.len() as u64 == s.distance;
        rec.check(&mut rep.checks.reduced_path, rp_ok, || {
            format!(
                "reduced word path ends at {} with length {}",
                rp.last(),
                rp.len()
            )
        });
        let nm = fac.matrices.len();
        rep.matrices = Some(nm);
        rec.check(&mut rep.checks.matrices, nm == 1 || s.count >= 2, || {
            format!("{nm} matrices but {} geodesics", s.count)
        });
        f
    };
    rep.formula_distance = Some(formula);
    rec.check(&mut rep.checks.distance, formula == s.distance, || {
        format!("formula distance {formula} vs bfs {}", s.distance)
    });
    Ok(())
}

/// x = 1:0 against every canonical y with both coordinates in [-max, max].
pub fn corpus_axis(max: i64) -> Vec<(ProjPoint, ProjPoint)> {
    let x = ProjPoint::new(1, 0).unwrap();
    all_points(max).into_iter().map(|y| (x, y)).collect()
}

/// Every canonical point with both coordinates in [-max, max].
pub fn all_points(max: i64) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    for b in 0..=max {
        for a in -max..=max {
            if let Ok(p) = ProjPoint::new(a, b) {
                if p.a() == a && p.b() == b {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// `n` pairs of random canonical points with coordinates in [-max, max].
pub fn random_pairs(n: usize, max: i64, seed: u64) -> Vec<(ProjPoint, ProjPoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || loop {
        let (a, b) = (rng.gen_range(-max..=max), rng.gen_range(-max..=max));
        if let Ok(p) = ProjPoint::new(a, b) {
            return p;
        }
    };
    (0..n).map(|_| (draw(), draw())).collect()
}

/// Totals over a sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pairs: usize,
    pub failed: usize,
    pub distance: usize,
    pub uniqueness: usize,
    pub word_length: usize,
    pub reduced_path: usize,
    pub matrices: usize,
    pub klein_containment: usize,
    pub corner_geodesic: usize,
    pub unstable: usize,
}

impl Summary {
    pub fn of(reports: &[VerifyReport]) -> Summary {
        let bad = |f: fn(&Checks) -> Option<bool>| {
            reports
                .iter()
                .filter(|r| f(&r.checks) == Some(false))
                .count()
        };
        Summary {
            pairs: reports.len(),
            failed: reports.iter().filter(|r| !r.ok).count(),
            distance: bad(|c| c.distance),
            uniqueness: bad(|c| c.uniqueness),
            word_length: bad(|c| c.word_length),
            reduced_path: bad(|c| c.reduced_path),
            matrices: bad(|c| c.matrices),
            klein_containment: bad(|c| c.klein_containment),
            corner_geodesic: bad(|c| c.corner_geodesic),
            unstable: bad(|c| c.stable),
        }
    }
}

/// Verifies all pairs in parallel; reports keep the input order.
pub fn sweep(pairs: &[(ProjPoint, ProjPoint)], opts: VerifyOptions) -> Vec<VerifyReport> {
    pairs
        .par_iter()
        .map(|&(x, y)| verify_pair(x, y, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::neighbors;

    fn pt(a: i64, b: i64) -> ProjPoint {
        ProjPoint::new(a, b).unwrap()
    }

    #[test]
    fn small_distances() {
        assert_eq!(bfs_distance(pt(1, 0), pt(0, 1), 5).unwrap(), 1);
        assert_eq!(bfs_distance(pt(1, 0), pt(1, 0), 5).unwrap(), 0);
        assert!(matches!(
            bfs_distance(pt(1, 0), pt(9, 2), 5),
            Err(Error::OutOfBound { .. })
        ));
    }

    #[test]
    fn two_geodesics() {
        let g = bfs_geodesics(pt(1, 0), pt(1, 2), 10).unwrap();
        let got: Vec<Vec<ProjPoint>> = g.iter().map(|p| p.vertices().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![pt(1, 0), pt(0, 1), pt(1, 2)],
                vec![pt(1, 0), pt(1, 1), pt(1, 2)]
            ]
        );
    }

    #[test]
    fn view_neighbors_match_sequence() {
        let view = BoundedGraphView::new(30).unwrap();
        for p in [pt(1, 0), pt(0, 1), pt(3, 7), pt(-5, 2), pt(11, 13)] {
            let mut seq = neighbors(p, -200..=200).unwrap();
            seq.retain(|q| view.contains(*q));
            seq.sort();
            assert_eq!(view.neighbors(p), seq, "{p}");
        }
    }

    #[test]
    fn report_for_example_one() {
        let r = verify_pair(
            pt(1, 0),
            pt(37, 158),
            VerifyOptions {
                bound: Some(200),
                stability: true,
            },
        );
        assert!(r.ok, "{:?}", r.failures);
        assert_eq!(r.bfs_distance, Some(5));
        assert_eq!(r.geodesic_count, Some(1));
        let r = verify_pair(
            pt(1, 0),
            pt(0, 1),
            VerifyOptions {
                bound: Some(10),
                stability: false,
            },
        );
        assert!(r.ok);
    }

    #[test]
    fn random_pairs_are_seeded() {
        assert_eq!(random_pairs(20, 40, 7), random_pairs(20, 40, 7));
        assert_ne!(random_pairs(20, 40, 7), random_pairs(20, 40, 8));
    }
}
