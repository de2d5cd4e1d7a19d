mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::Rng;

use pezzo_core::classifier::enumerate_minimal;
use pezzo_core::fixtures::{self, block_key, verify_certificates, verify_relations, verify_tables};
use pezzo_core::mutation::{polygon_quiver_mutate, quiver_mutate, reduce_to_minimal, Side};
use pezzo_core::polygon::polygon_of;
use pezzo_core::{Collection, Polygon, Quiver, SurfaceKind, Q};

const FIXTURE_LIMIT: Duration = Duration::from_secs(10);
const RELATION_LIMIT: Duration = Duration::from_secs(30);
const CERTIFICATE_LIMIT: Duration = Duration::from_secs(300);
const CLASSIFICATION_LIMIT: Duration = Duration::from_secs(600);
const MUTATION_STEPS: usize = 600;
const PROPERTY_CASES: u64 = 200;
const REDUCED_SAMPLES: usize = 10_000;

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = f();
    let verdict = if out.ok { "PASS" } else { "FAIL" };
    println!("{verdict} {name:<28} {:>9.3}s  {}", t.elapsed().as_secs_f64(), out.detail);
    out.ok
}

fn fixture_verification() -> Outcome {
    let report = verify_tables();
    let labels: BTreeSet<_> = report.checks.iter().map(|c| c.subject.clone()).collect();
    let failures = report.failures().len();
    Outcome {
        ok: failures == 0 && labels.len() >= 30 && report.elapsed < FIXTURE_LIMIT,
        detail: format!("{} labels, {} checks, {failures} failures, limit {FIXTURE_LIMIT:?}", labels.len(), report.checks.len()),
    }
}

fn polygon_oracle() -> Outcome {
    let objects = [(1, 0, 1), (1, 1, 3), (1, 2, 6)];
    let duals = common::brute_force_duals(&objects);
    let oracle = Polygon::from_ints(&common::plane_triangle_oracle(&objects, &duals));
    let pinned = Polygon::from_ints(&[(1, 8), (-1, -7), (0, -1)]);
    let c = Collection::line_bundles(SurfaceKind::P2, &[vec![0], vec![1], vec![2]]).unwrap();
    let p = polygon_of(&c).unwrap();
    let shoelace: Q = (0..3).map(|k| pezzo_core::polygon::omega(p.v(k), p.v(k + 1))).sum();
    let ok = oracle == pinned
        && p.unimodular_equivalent(&oracle)
        && p.v(-1) == pezzo_core::Point::int(0, -1)
        && (0..3).all(|k| p.r_squared(k) == Q::from_integer(1))
        && p.area_x2() == Q::from_integer(3)
        && shoelace == Q::from_integer(3);
    Outcome { ok, detail: format!("vertices {:?}, area_x2 {}", p.vertices.iter().map(|v| v.to_int()).collect::<Vec<_>>(), p.area_x2()) }
}

fn mutation_consistency() -> Outcome {
    let mut rng = common::rng(0x5eed_0001);
    let per_surface = MUTATION_STEPS / SurfaceKind::ALL.len();
    let (mut steps, mut route, mut dwz, mut sign, mut signed) = (0, 0, 0, 0, 0);
    for kind in SurfaceKind::ALL {
        let starts = common::fixtures_of(kind);
        let mut cur = starts[0].clone();
        for _ in 0..per_surface {
            let i = rng.gen_range(0..cur.len());
            let side = common::random_side(&mut rng);
            let m = quiver_mutate(&cur, i, side).unwrap();
            let p = polygon_of(&cur).unwrap();
            let (pm, _) = polygon_quiver_mutate(&p, i, side).unwrap();
            if !pm.unimodular_equivalent(&polygon_of(&m.collection).unwrap()) {
                route += 1;
            }
            let mut got = Quiver::of_collection(&m.collection).unwrap();
            got.blocks = None;
            if got != Quiver::of_collection(&cur).unwrap().dwz_mutate(i).unwrap().relabel(&m.perm) {
                dwz += 1;
            }
            if side == Side::Right {
                signed += 1;
                if i64::from(p.area_delta_sign(i)) != (m.collection.total_rank() - cur.total_rank()).signum() {
                    sign += 1;
                }
            }
            steps += 1;
            cur = if m.collection.total_rank() > common::RANK_CAP {
                starts[rng.gen_range(0..starts.len())].clone()
            } else {
                m.collection
            };
        }
    }
    Outcome {
        ok: steps >= 500 && route + dwz + sign == 0,
        detail: format!("{steps} steps; mismatches: polygon route {route}, dwz {dwz}, area sign {sign} of {signed}"),
    }
}

fn relations() -> Outcome {
    let report = verify_relations();
    let failures = report.failures().len();
    Outcome {
        ok: failures == 0 && !report.checks.is_empty() && report.elapsed < RELATION_LIMIT,
        detail: format!("{} sequences, {failures} failures, limit {RELATION_LIMIT:?}", report.checks.len()),
    }
}

fn certificates() -> Outcome {
    let t = Instant::now();
    let r = verify_certificates();
    let elapsed = t.elapsed();
    let failures = r.report.failures().len();
    Outcome {
        ok: failures == 0 && r.index_base.is_some() && elapsed < CERTIFICATE_LIMIT,
        detail: format!("{} checks, {failures} failures, index base {:?}, limit {CERTIFICATE_LIMIT:?}", r.report.checks.len(), r.index_base),
    }
}

fn classification() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for kind in SurfaceKind::ALL {
        let t = Instant::now();
        let table = fixtures::for_surface(kind);
        let mut counts = Vec::new();
        for k in [3, 4] {
            let e = enumerate_minimal(kind, k).unwrap();
            let found: BTreeSet<_> = e.candidates.iter().filter_map(|c| c.label).collect();
            let expected: BTreeSet<_> = table.entries.iter().filter(|x| x.alphas.len() == k).map(|x| x.label).collect();
            ok &= found == expected && e.candidates.len() == expected.len();
            counts.push(e.candidates.len());
        }
        ok &= t.elapsed() < CLASSIFICATION_LIMIT;
        parts.push(format!("{kind} {}/{}", counts[0], counts[1]));
    }
    Outcome { ok, detail: format!("k=3/k=4: {}", parts.join(", ")) }
}

fn primitive(p: &Polygon) -> bool {
    p.vertices.iter().all(|v| v.to_int().is_some_and(|(x, y)| x.gcd(&y) == 1))
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    let mut negatives = 0;
    for seed in 0..PROPERTY_CASES {
        let mut rng = common::rng(seed);
        for kind in SurfaceKind::ALL {
            let starts = common::fixtures_of(kind);
            let start = starts[rng.gen_range(0..starts.len())].clone();
            let c = common::braid_walk(&mut rng, &start, 8);
            let n = c.len();
            let i = rng.gen_range(1..n);
            let lhs = c.braid_right(i).and_then(|x| x.braid_right(i + 1)).and_then(|x| x.braid_right(i));
            let rhs = c.braid_right(i + 1).and_then(|x| x.braid_right(i)).and_then(|x| x.braid_right(i + 1));
            if lhs.unwrap() != rhs.unwrap() {
                failures.push("braid relation");
            }
            let very_strong = c.is_very_strong().unwrap();
            negatives += usize::from(!very_strong);
            if polygon_of(&c).unwrap().is_convex().unwrap() != very_strong {
                failures.push("convexity");
            }
        }
        let c = common::random_very_strong(&mut rng, 12);
        let p = polygon_of(&c).unwrap();
        let sum_r2: i64 = c.ranks().iter().map(|r| r * r).sum();
        if p.area_x2() != Q::from_integer(i128::from(sum_r2)) {
            failures.push("area");
        }
        if !primitive(&p) {
            failures.push("primitivity");
        }
        let (u, _) = c.unbroken().unwrap();
        let q = Quiver::of_collection(&u).unwrap();
        if !q.reduced().is_some_and(|r| r.satisfies_plucker()) || !q.satisfies_plucker() {
            failures.push("plucker");
        }
    }
    Outcome {
        ok: failures.is_empty(),
        detail: format!("{PROPERTY_CASES} cases per suite, {negatives} non-very-strong samples, failures {failures:?}"),
    }
}

fn block_count_spot_check() -> Outcome {
    let known: BTreeSet<_> =
        fixtures::all().iter().flat_map(|t| t.entries.iter().map(move |e| block_key(&e.collection(t.surface).unwrap()).unwrap())).collect();
    let mut rng = common::rng(0x5eed_0002);
    let (mut five, mut unknown, mut errors) = (0, 0, 0);
    for _ in 0..REDUCED_SAMPLES {
        let c = common::random_very_strong(&mut rng, 12);
        match reduce_to_minimal(&c).and_then(|m| block_key(&m)) {
            Ok(key) => {
                five += usize::from(key.0 >= 5);
                unknown += usize::from(!known.contains(&key));
            }
            Err(_) => errors += 1,
        }
    }
    Outcome {
        ok: five == 0 && errors == 0,
        detail: format!("{REDUCED_SAMPLES} samples, {five} with 5+ blocks, {unknown} outside the tables, {errors} errors"),
    }
}

fn main() -> ExitCode {
    let results = [
        run("fixture verification", fixture_verification),
        run("polygon oracle", polygon_oracle),
        run("mutation consistency", mutation_consistency),
        run("relations", relations),
        run("certificates", certificates),
        run("classification", classification),
        run("property suites", property_suites),
        run("block count spot check", block_count_spot_check),
    ];
    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
