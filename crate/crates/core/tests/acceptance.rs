//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use projline::matrices::{
    double_two_rhs, e_matrix, eval_word, factorization, CFExpansion, EWord, Mat2,
};
use projline::oracle::{
    bfs_distance, class_summary, corpus_axis, random_pairs, sweep, Summary, VerifyOptions,
    VerifyReport,
};
use projline::paths::{all_shortest_paths, consistent_paths, distance, hamiltonian_cycle};
use projline::point::{cone_class, is_distant, ProjPoint};
use projline::transition::{endpoint_for_coefficients, klein_graph, transition};

type Outcome = Result<String, String>;

fn pt(a: i64, b: i64) -> ProjPoint {
    ProjPoint::new(a, b).unwrap()
}

fn pts(v: &[(i64, i64)]) -> Vec<ProjPoint> {
    v.iter().map(|&(a, b)| pt(a, b)).collect()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn worked_example(
    y: ProjPoint,
    e_list: &[(i64, i64)],
    f_list: &[(i64, i64)],
    d: (u128, u128),
) -> Result<(projline::TransitionData, [(u64, u128); 2]), String> {
    let x = pt(1, 0);
    let td = transition(x, y).map_err(|e| e.to_string())?;
    let es = td.e_seq().map_err(|e| e.to_string())?;
    let fs = td.f_seq().map_err(|e| e.to_string())?;
    ensure!(es == pts(e_list), "e sequence {es:?}");
    ensure!(fs == pts(f_list), "f sequence {fs:?}");
    ensure!(
        (td.d_a(), td.d_b()) == d,
        "d_a, d_b = {}, {}",
        td.d_a(),
        td.d_b()
    );
    let (pe, pf) = consistent_paths(&td).map_err(|e| e.to_string())?;
    ensure!(
        (pe.len() as u128, pf.len() as u128) == d,
        "consistent path lengths {} {}",
        pe.len(),
        pf.len()
    );
    // shortest path through each cone class, by brute force
    let class_e = cone_class(x, y, es[0]).map_err(|e| e.to_string())?;
    let class_f = cone_class(x, y, fs[0]).map_err(|e| e.to_string())?;
    ensure!(class_e != class_f, "e_1 and f_1 in the same class");
    let mut out = [(0, 0); 2];
    for (i, c) in [class_e, class_f].into_iter().enumerate() {
        let s = class_summary(x, y, c, 4 * 158).map_err(|e| e.to_string())?;
        out[i] = (s.distance, s.count);
    }
    Ok((td, out))
}

fn criterion_1() -> Outcome {
    let (td, classes) = worked_example(
        pt(37, 158),
        &[(1, 1), (1, 2), (1, 3), (1, 4), (4, 17), (15, 64), (26, 111)],
        &[(0, 1), (1, 5), (2, 9), (3, 13), (7, 30), (11, 47)],
        (8, 7),
    )?;
    let corners: BTreeSet<_> = td
        .e_corner_points()
        .unwrap()
        .into_iter()
        .chain(td.f_corner_points().unwrap())
        .collect();
    let want: BTreeSet<_> = pts(&[
        (1, 1),
        (1, 4),
        (4, 17),
        (26, 111),
        (0, 1),
        (3, 13),
        (11, 47),
    ])
    .into_iter()
    .collect();
    ensure!(corners == want, "corners {corners:?}");
    let kg = klein_graph(&td).map_err(|e| e.to_string())?;
    let kc: BTreeSet<_> = kg.corners.iter().map(|&i| kg.vertices[i]).collect();
    ensure!(kc == want, "Klein graph corners {kc:?}");
    ensure!(
        classes == [(8, 1), (7, 1)],
        "per-class shortest consistent (length, count): {classes:?}"
    );
    Ok(
        "sequences, d_a = 8, d_b = 7, 7 corners, unique shortest consistent path on the f side"
            .into(),
    )
}

fn criterion_2() -> Outcome {
    let (_, classes) = worked_example(
        pt(26, 111),
        &[(1, 1), (1, 2), (1, 3), (1, 4), (4, 17), (15, 64)],
        &[(0, 1), (1, 5), (2, 9), (3, 13), (7, 30), (11, 47)],
        (7, 7),
    )?;
    ensure!(
        classes == [(7, 1), (7, 1)],
        "per-class shortest consistent (length, count): {classes:?}"
    );
    Ok("sequences, d_a = d_b = 7, exactly two shortest consistent paths".into())
}

fn corpus() -> Vec<(ProjPoint, ProjPoint)> {
    let mut pairs = corpus_axis(60);
    pairs.extend(random_pairs(1000, 40, 0));
    pairs
}

fn criterion_3(reports: &[VerifyReport]) -> Outcome {
    let s = Summary::of(reports);
    let bad: Vec<_> = reports
        .iter()
        .filter(|r| {
            [
                r.checks.distance,
                r.checks.uniqueness,
                r.checks.klein_containment,
                r.checks.stable,
            ]
            .contains(&Some(false))
                || r.bfs_distance.is_none()
        })
        .take(5)
        .map(|r| format!("{} {} {:?}", r.x, r.y, r.failures))
        .collect();
    ensure!(bad.is_empty(), "{s:?}; first failures: {bad:?}");
    let nontrivial = reports
        .iter()
        .filter(|r| r.predicted_unique.is_some())
        .count();
    Ok(format!(
        "{} pairs ({nontrivial} non-adjacent): distance, uniqueness, Klein containment and bound stability all agree",
        s.pairs
    ))
}

fn criterion_4() -> Outcome {
    let (x, y) = (pt(1, 0), pt(37, 158));
    let d = distance(x, y).map_err(|e| e.to_string())?;
    let b200 = bfs_distance(x, y, 200).map_err(|e| e.to_string())?;
    let b400 = bfs_distance(x, y, 400).map_err(|e| e.to_string())?;
    ensure!(
        d == 5 && b200 == 5 && b400 == 5,
        "formula {d}, bfs {b200} / {b400}"
    );
    Ok("distance 5 from the formula and from search at bounds 200 and 400".into())
}

fn product(cs: &[i128]) -> Mat2 {
    eval_word(&EWord::new(1, cs.to_vec())).unwrap()
}

fn criterion_5() -> Outcome {
    for a in -6..=6 {
        for b in -6..=6 {
            ensure!(
                product(&[a, 1, b]) == product(&[a - 1, b - 1]),
                "E(a)E(1)E(b) at {a},{b}"
            );
            ensure!(
                product(&[a, -1, b]) == product(&[a + 1, b + 1]).neg().unwrap(),
                "E(a)E(-1)E(b) at {a},{b}"
            );
            for s in [1, -1] {
                let rhs = eval_word(&double_two_rhs(a, s, b)).unwrap();
                ensure!(
                    product(&[a, 2 * s, 2 * s, b]) == rhs,
                    "E(a)E({})^2E(b) at {a},{b}",
                    2 * s
                );
            }
            ensure!(
                product(&[a, 0, b]) == e_matrix(a + b).neg().unwrap(),
                "E(a)E(0)E(b) at {a},{b}"
            );
        }
    }
    Ok("contraction of E(+-1), E(+-2)^2 and E(0) identities for a, b in [-6, 6]".into())
}

fn criterion_6(reports: &[VerifyReport]) -> Outcome {
    let mut checked = 0;
    for r in reports {
        if r.predicted_unique.is_none() {
            continue;
        }
        checked += 1;
        ensure!(
            r.checks.word_length == Some(true) && r.checks.reduced_path == Some(true),
            "{} {}: {:?}",
            r.x,
            r.y,
            r.failures
        );
    }
    Ok(format!(
        "{checked} pairs: standard word length = standard path length, reduced length = distance, no E(+-2)^2 left"
    ))
}

// digits end in 2, preceded by an odd number of 1's and then a digit above 1;
// or end in a digit above 2
fn single_matrix_expected(cf: &CFExpansion) -> bool {
    let d = &cf.d;
    let last = *d.last().unwrap();
    if last > 2 {
        return true;
    }
    if last < 2 {
        return false;
    }
    let body = &d[..d.len() - 1];
    let ones = body.iter().rev().take_while(|&&c| c == 1).count();
    ones % 2 == 1 && ones < body.len()
}

fn criterion_7(reports: &[VerifyReport]) -> Outcome {
    let (mut one, mut two) = (0, 0);
    for r in reports {
        if r.predicted_unique.is_none() {
            continue;
        }
        let f = factorization(r.x, r.y).map_err(|e| e.to_string())?;
        let expect_one = single_matrix_expected(&f.standard.cf);
        ensure!(
            (f.matrices.len() == 1) == expect_one,
            "{} {}: {} matrices for digits {:?}",
            r.x,
            r.y,
            f.matrices.len(),
            f.standard.cf.d
        );
        if f.matrices.len() == 2 {
            two += 1;
            let count = r.geodesic_count.unwrap_or(0);
            ensure!(
                count >= 2,
                "{} {}: two matrices but {count} geodesics",
                r.x,
                r.y
            );
            ensure!(
                f.matrices[0] != f.matrices[1],
                "{} {}: equal matrices",
                r.x,
                r.y
            );
            for m in &f.matrices {
                ensure!(m.det().unwrap().abs() == 1, "{} {}: det of {m}", r.x, r.y);
            }
        } else {
            one += 1;
        }
    }
    Ok(format!(
        "{one} single-matrix and {two} two-matrix pairs, all consistent with the geodesic counts"
    ))
}

fn criterion_8() -> Outcome {
    let x = pt(1, 0);
    let mut n = 0;
    for d in 3..=12u64 {
        for d_a in 1..d {
            let d_b = d - d_a;
            let c = hamiltonian_cycle(x, d_a, d_b).map_err(|e| format!("{d_a}+{d_b}: {e}"))?;
            let v = c.vertices();
            ensure!(v.len() as u64 == d, "{d_a}+{d_b}: length {}", v.len());
            let k = d_a as usize;
            let y = v[k];
            let arc1: Vec<_> = v[..=k].to_vec();
            let mut arc2 = vec![x];
            arc2.extend(v[k + 1..].iter().rev());
            arc2.push(y);
            ensure!(
                arc1.len() as u64 == d_a + 1 && arc2.len() as u64 == d_b + 1,
                "{d_a}+{d_b}: arcs"
            );
            if d_a == 1 || d_b == 1 {
                ensure!(is_distant(x, y), "{d_a}+{d_b}: endpoints not adjacent");
                let long = if d_a == 1 { &arc2 } else { &arc1 };
                let classes: BTreeSet<_> = long[1..long.len() - 1]
                    .iter()
                    .map(|&w| cone_class(x, y, w).unwrap())
                    .collect();
                ensure!(classes.len() == 1, "{d_a}+{d_b}: long arc not consistent");
            } else {
                let td = transition(x, y).map_err(|e| e.to_string())?;
                let (pe, pf) = consistent_paths(&td).map_err(|e| e.to_string())?;
                let got = [pe.vertices().to_vec(), pf.vertices().to_vec()];
                ensure!(
                    (got[0] == arc1 && got[1] == arc2) || (got[0] == arc2 && got[1] == arc1),
                    "{d_a}+{d_b}: arcs are not the consistent paths"
                );
                let kg = klein_graph(&td).map_err(|e| e.to_string())?;
                let kv: BTreeSet<_> = kg.vertices.iter().copied().collect();
                let cv: BTreeSet<_> = v.iter().copied().collect();
                ensure!(kv == cv, "{d_a}+{d_b}: cycle misses Klein vertices");
            }
            n += 1;
        }
    }
    Ok(format!(
        "{n} splits with 3 <= d <= 12, arcs re-derive as (d_a, d_b)"
    ))
}

fn criterion_9() -> Outcome {
    let x = pt(1, 0);
    let mut last = 0;
    let mut searched = 0;
    for m in 1..=10usize {
        let td =
            endpoint_for_coefficients(x, &vec![3; m], &vec![3; m]).map_err(|e| e.to_string())?;
        let y = td.y;
        let back = transition(x, y).map_err(|e| e.to_string())?;
        ensure!(
            back.a == vec![3; m] && back.b == vec![3; m],
            "m = {m}: coefficients {:?} {:?}",
            back.a,
            back.b
        );
        let d = distance(x, y).map_err(|e| e.to_string())?;
        let klein = all_shortest_paths(x, y).map_err(|e| e.to_string())?[0].len() as u64;
        ensure!(
            d == 2 * m as u64 + 1 && klein == d,
            "m = {m}: distance {d}, Klein search {klein}"
        );
        if y.norm() <= 1000 {
            let b = bfs_distance(x, y, 4 * y.norm() as i64).map_err(|e| e.to_string())?;
            ensure!(b == d, "m = {m}: brute force {b}");
            searched += 1;
        }
        ensure!(d > last, "not increasing at m = {m}");
        last = d;
    }
    Ok(format!(
        "distances 3, 5, ..., 21 for m = 1..10 ({searched} also by brute force)"
    ))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, budget: Duration, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        let el = t.elapsed();
        let out = match out {
            Ok(msg) if el > budget => Err(format!("{msg}; took {el:.2?}, budget {budget:?}")),
            o => o,
        };
        match out {
            Ok(msg) => println!("criterion {n}: PASS ({el:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL ({el:.2?}) {msg}");
            }
        }
    };
    let secs = Duration::from_secs;
    report(1, secs(1), &mut criterion_1);
    report(2, secs(1), &mut criterion_2);
    let mut reports = Vec::new();
    report(3, secs(300), &mut || {
        reports = sweep(
            &corpus(),
            VerifyOptions {
                bound: None,
                stability: true,
            },
        );
        criterion_3(&reports)
    });
    report(4, secs(1), &mut criterion_4);
    report(5, secs(1), &mut criterion_5);
    report(6, secs(120), &mut || criterion_6(&reports));
    report(7, secs(120), &mut || criterion_7(&reports));
    report(8, secs(5), &mut criterion_8);
    report(9, secs(5), &mut criterion_9);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
