//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Tolerances are fixed constants below.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lowdist::hardness::{generate, EdgeVerdict};
use lowdist::line::{check_line_embedding, count_feasible, embed_line, embed_line_weighted, WindowParams};
use lowdist::oracle::{brute_force_line, brute_force_tree, min_distortion_line};
use lowdist::tree::{check_tree_embedding, embed_tree, is_feasible_state, realized_states, state_succeeds, RootedTree};
use lowdist::{local_density, shortest_path_metric, Rational, WeightedGraph};

const LINE_SUITE_LIMIT: Duration = Duration::from_secs(600);
const RANDOM_LINE_GRAPHS: usize = 500;
const DENSITY_GRAPHS_PER_D: usize = 60;
const LONG_PATH: usize = 100_000;
const LONG_PATH_LIMIT: Duration = Duration::from_secs(5);
const DOUBLING_FACTOR: f64 = 3.0;
const WEIGHTED_GRAPHS: usize = 400;
const TREE_INSTANCES: usize = 240;
const REALIZED_EMBEDDINGS: usize = 20;
const HARDNESS_LIMIT: Duration = Duration::from_secs(60);

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, name: &str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed += 1;
        }
    }
}

fn int(k: u64) -> Rational {
    Rational::from_integer(k as i64)
}

/// Exhaustive connected graphs up to isomorphism for `n <= 6`, then random
/// connected graphs with 7 or 8 vertices.
fn line_suite() -> Vec<WeightedGraph> {
    let mut graphs: Vec<WeightedGraph> = (1..=6).flat_map(common::connected_graphs).collect();
    let mut rng = common::rng(2024);
    for i in 0..RANDOM_LINE_GRAPHS {
        let p = [0.05, 0.15, 0.3][i % 3];
        graphs.push(common::random_connected(&mut rng, 7 + i % 2, p, 1));
    }
    graphs
}

fn line_equivalence(r: &mut Report, suite: &[WeightedGraph], minima: &[Rational]) {
    let start = Instant::now();
    let mut disagreements = 0;
    let mut unsound = 0;
    let mut positives = 0;
    for (g, min) in suite.iter().zip(minima) {
        let m = shortest_path_metric(g).unwrap();
        for d in 1..=4 {
            let expected = brute_force_line(&m, &int(d)).unwrap().is_some();
            let got = embed_line(g, d).unwrap();
            if let Some(e) = &got {
                unsound += usize::from(!check_line_embedding(&m, e, &int(d)).is_ok());
            }
            disagreements += usize::from(got.is_some() != expected || expected != (int(d) >= *min));
            positives += usize::from(expected);
        }
    }
    let elapsed = start.elapsed();
    r.line(
        "line decision equals brute force (d = 1..4)",
        disagreements == 0 && unsound == 0 && elapsed < LINE_SUITE_LIMIT,
        format!(
            "{} graphs ({} exhaustive n <= 6, {RANDOM_LINE_GRAPHS} random n = 7..8), {positives} embeddable pairs, \
             {disagreements} disagreements, {unsound} unsound, {elapsed:.1?} (limit {LINE_SUITE_LIMIT:?})",
            suite.len(),
            suite.len() - RANDOM_LINE_GRAPHS
        ),
    );
}

fn exact_values(r: &mut Report) {
    let mut cases: Vec<(String, WeightedGraph, u64)> = vec![("K1,3".into(), WeightedGraph::star(3), 3)];
    cases.extend((3..=7).map(|n| (format!("C{n}"), WeightedGraph::cycle(n), n as u64 - 1)));
    cases.extend((2..=8).map(|n| (format!("P{n}"), WeightedGraph::path(n), 1)));
    let mut bad = Vec::new();
    for (name, g, want) in &cases {
        let m = shortest_path_metric(g).unwrap();
        let min = min_distortion_line(&m).unwrap();
        let below = *want == 1 || embed_line(g, want - 1).unwrap().is_none();
        let at = embed_line(g, *want).unwrap().is_some();
        if min != int(*want) || !below || !at {
            bad.push(format!("{name}: min {min}"));
        }
    }
    r.line(
        "exact minimum distortions (K1,3 = 3, C_n = n-1, P_n = 1)",
        bad.is_empty(),
        format!("{} graphs, mismatches: {bad:?}", cases.len()),
    );
}

fn density_bound(r: &mut Report, suite: &[WeightedGraph], minima: &[Rational]) {
    let violations = suite
        .iter()
        .zip(minima)
        .filter(|(g, min)| local_density(&shortest_path_metric(g).unwrap()) > **min)
        .count();
    r.line(
        "local density <= minimum line distortion",
        violations == 0,
        format!("{} graphs, {violations} violations", suite.len()),
    );
}

fn feasible_count_bound(r: &mut Report) {
    let mut rng = common::rng(99);
    let mut checked = 0;
    let mut violations = 0;
    let mut largest = 0.0f64;
    for d in 1..=2u64 {
        let mut accepted = 0;
        let mut attempts = 0;
        while accepted < DENSITY_GRAPHS_PER_D && attempts < 20_000 {
            attempts += 1;
            let n = 4 + attempts % 9;
            let g = if d == 1 || attempts % 2 == 0 {
                let t = common::random_tree(&mut rng, n, 2);
                if attempts % 3 == 0 {
                    let mut c = t.clone();
                    let ends: Vec<usize> = (0..n).filter(|&v| c.degree(v) == 1).collect();
                    if ends.len() == 2 && n > 2 {
                        c.add_edge(ends[0], ends[1], 1).unwrap();
                    }
                    c
                } else {
                    t
                }
            } else {
                common::random_connected(&mut rng, n, 0.1, 1)
            };
            let m = shortest_path_metric(&g).unwrap();
            if local_density(&m) > int(d) {
                continue;
            }
            accepted += 1;
            let count = count_feasible(&m, &g, WindowParams::unweighted(d));
            let bound = 3 * n * (2 * d as usize + 1).pow(2 * d as u32) / 2;
            violations += usize::from(count > bound);
            largest = largest.max(count as f64 / bound as f64);
        }
        checked += accepted;
    }
    r.line(
        "feasible windows <= floor(3/2 n (2d+1)^(2d)) for density <= d",
        violations == 0 && checked >= 100,
        format!("{checked} graphs (d = 1, 2), {violations} violations, largest count/bound {largest:.3}"),
    );
}

fn time_path(n: usize) -> Duration {
    let g = WeightedGraph::path(n);
    (0..3)
        .map(|_| {
            let start = Instant::now();
            assert!(embed_line(&g, 2).unwrap().is_some());
            start.elapsed()
        })
        .min()
        .unwrap()
}

fn linear_time(r: &mut Report) {
    let big = time_path(LONG_PATH);
    let t25 = time_path(25_000);
    let t50 = time_path(50_000);
    let ratios = [
        t50.as_secs_f64() / (2.0 * t25.as_secs_f64()),
        big.as_secs_f64() / (2.0 * t50.as_secs_f64()),
    ];
    let within = ratios
        .iter()
        .all(|&q| (1.0 / DOUBLING_FACTOR..=DOUBLING_FACTOR).contains(&q));
    r.line(
        "linear running time on long paths (d = 2)",
        big < LONG_PATH_LIMIT && within,
        format!(
            "P_100000 in {big:.2?} (limit {LONG_PATH_LIMIT:?}); T(2n)/2T(n) = {:.2} (n = 25k), {:.2} (n = 50k), \
             allowed within {DOUBLING_FACTOR}x",
            ratios[0], ratios[1]
        ),
    );
}

fn weighted_consistency(r: &mut Report, suite: &[WeightedGraph]) {
    let mut unit_mismatch = 0;
    for g in suite {
        for d in 1..=4 {
            unit_mismatch +=
                usize::from(embed_line(g, d).unwrap().is_some() != embed_line_weighted(g, d).unwrap().is_some());
        }
    }
    let mut rng = common::rng(31);
    let mut oracle_mismatch = 0;
    let mut unsound = 0;
    let mut positives = 0;
    for i in 0..WEIGHTED_GRAPHS {
        let n = 2 + i % 5;
        let g = common::random_connected(&mut rng, n, 0.35, 1 + (i as u64 % 3));
        let m = shortest_path_metric(&g).unwrap();
        for d in 1..=3 {
            let expected = brute_force_line(&m, &int(d)).unwrap().is_some();
            let got = embed_line_weighted(&g, d).unwrap();
            if let Some(e) = &got {
                unsound += usize::from(!check_line_embedding(&m, e, &int(d)).is_ok());
            }
            oracle_mismatch += usize::from(got.is_some() != expected);
            positives += usize::from(expected);
        }
    }
    r.line(
        "weighted search: unit weights match unweighted, weighted matches brute force",
        unit_mismatch == 0 && oracle_mismatch == 0 && unsound == 0,
        format!(
            "{} unit graphs x d = 1..4: {unit_mismatch} mismatches; {WEIGHTED_GRAPHS} weighted graphs (n <= 6, W <= 3) \
             x d = 1..3: {positives} embeddable, {oracle_mismatch} mismatches, {unsound} unsound",
            suite.len()
        ),
    );
}

fn tree_instances() -> Vec<(WeightedGraph, WeightedGraph, usize, u64)> {
    let mut rng = common::rng(4242);
    let mut out = Vec::new();
    let named = [
        WeightedGraph::path(4),
        WeightedGraph::star(3),
        WeightedGraph::cycle(4),
        WeightedGraph::cycle(5),
    ];
    for (i, g) in named.iter().enumerate() {
        let t = common::random_tree(&mut rng, 8, 3);
        out.push((g.clone(), t, i % 8, 1 + i as u64 % 2));
    }
    while out.len() < TREE_INSTANCES {
        let i = out.len();
        let n = 2 + i % 5;
        let g = common::random_connected(&mut rng, n, [0.1, 0.3][i % 2], 1);
        let t = common::random_tree(&mut rng, (n + i % 4).min(8), 3);
        let root = i % t.vertex_count();
        out.push((g, t, root, 1 + (i as u64 / 2) % 2));
    }
    out
}

fn tree_equivalence(r: &mut Report) {
    let mut disagreements = 0;
    let mut unsound = 0;
    let mut positives = 0;
    let instances = tree_instances();
    for (g, t, root, d) in &instances {
        let mg = shortest_path_metric(g).unwrap();
        let tree = RootedTree::new(t.clone(), *root).unwrap();
        let expected = brute_force_tree(&mg, &tree, *d).unwrap().is_some();
        let got = embed_tree(g, &tree, *d).unwrap();
        if let Some(e) = &got {
            unsound += usize::from(!e.is_injective() || !check_tree_embedding(&mg, &tree, e, &int(*d)).is_ok());
        }
        disagreements += usize::from(got.is_some() != expected);
        positives += usize::from(expected);
    }
    r.line(
        "tree decision equals brute force (|G| <= 6, |T| <= 8, max degree <= 3, d <= 2)",
        disagreements == 0 && unsound == 0 && instances.len() >= 200,
        format!(
            "{} instances, {positives} embeddable, {disagreements} disagreements, {unsound} unsound",
            instances.len()
        ),
    );
}

fn realized_state_check(r: &mut Report) {
    let mut found = 0;
    let mut failures = 0;
    for (g, t, root, d) in tree_instances() {
        if found == REALIZED_EMBEDDINGS {
            break;
        }
        let mg = shortest_path_metric(&g).unwrap();
        let tree = RootedTree::new(t, root).unwrap();
        let Some(e) = brute_force_tree(&mg, &tree, d).unwrap() else {
            continue;
        };
        found += 1;
        let states = realized_states(&g, &mg, &tree, &e, d);
        let feasible = states.iter().all(|x| is_feasible_state(&g, &mg, &tree, x, d));
        let succeed = (0..tree.size())
            .filter_map(|v| tree.parent(v).map(|u| (u, v)))
            .all(|(u, v)| state_succeeds(&g, &mg, &tree, &states[v], &states[u], d));
        failures += usize::from(!feasible || !succeed);
    }
    r.line(
        "states read off brute-force embeddings are feasible and succeed",
        failures == 0 && found >= REALIZED_EMBEDDINGS,
        format!("{found} embeddings, {failures} failures"),
    );
}

fn hardness_round_trip(r: &mut Report) {
    let cases: [(&str, WeightedGraph, &[u8]); 4] = [
        ("K3", WeightedGraph::complete(3), &[1, 2, 3]),
        ("C4", WeightedGraph::cycle(4), &[1, 2, 1, 2]),
        ("C5", WeightedGraph::cycle(5), &[1, 2, 1, 2, 3]),
        ("P4", WeightedGraph::path(4), &[1, 2, 1, 2]),
    ];
    let mut details = Vec::new();
    let mut ok = true;
    for (name, g, psi) in cases {
        let start = Instant::now();
        let inst = generate(&g, 2, 1).unwrap();
        let p = inst.params;
        let m = shortest_path_metric(&inst.graph).unwrap();
        let edges = inst.verify_metric_edges_in(&m);
        let f = inst.witness_embedding(psi).unwrap();
        let verdict = check_line_embedding(&m, &f, &p.d());
        let stretch = (f.position(inst.clique2(1)) - f.position(inst.clique1(p.t as usize))).unsigned_abs();
        let elapsed = start.elapsed();
        let pass = edges == EdgeVerdict::Ok && verdict.is_ok() && stretch == 2 * p.l && elapsed < HARDNESS_LIMIT;
        ok &= pass;
        details.push(format!(
            "{name}: {} vertices, edges {edges}, witness {verdict}, bridge stretch {stretch} = 2L = {}, {elapsed:.1?}",
            inst.graph.vertex_count(),
            2 * p.l
        ));
    }
    r.line(
        "hardness round trip at d = 2 (shortest-path edges, witness, bridge stretch)",
        ok,
        format!("{} (limit {HARDNESS_LIMIT:?} each)", details.join("; ")),
    );
}

fn determinism(r: &mut Report) {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, g: &WeightedGraph| {
        let p = dir.path().join(name);
        fs::write(&p, g.to_text()).unwrap();
        p.to_str().unwrap().to_owned()
    };
    let c5 = write("c5", &WeightedGraph::cycle(5));
    let star = write("star", &WeightedGraph::star(3));
    let p7 = write("p7", &WeightedGraph::path(7));
    let k3 = write("k3", &WeightedGraph::complete(3));
    let weighted = write(
        "w",
        &WeightedGraph::from_edges(4, [(0, 1, 2), (1, 2, 1), (2, 3, 3), (0, 3, 2)]).unwrap(),
    );
    let psi = dir.path().join("psi");
    fs::write(&psi, "1\n2\n3\n").unwrap();
    let line_emb = dir.path().join("c5.line");
    let out = |tag: &str| dir.path().join(tag).to_str().unwrap().to_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["density".into(), c5.clone()],
        vec!["embed-line".into(), c5.clone(), "--d".into(), "4".into()],
        vec![
            "embed-line".into(),
            c5.clone(),
            "--d".into(),
            "4".into(),
            "-o".into(),
            line_emb.to_str().unwrap().into(),
        ],
        vec!["embed-line-weighted".into(), weighted.clone(), "--d".into(), "3".into()],
        vec!["embed-tree".into(), star.clone(), p7.clone(), "--d".into(), "3".into()],
        vec![
            "check".into(),
            c5.clone(),
            line_emb.to_str().unwrap().into(),
            "--d".into(),
            "7/2".into(),
        ],
        vec!["oracle".into(), c5.clone()],
        vec![
            "oracle".into(),
            star.clone(),
            "--tree".into(),
            p7.clone(),
            "--d".into(),
            "3".into(),
        ],
        vec![
            "gen-hardness".into(),
            k3.clone(),
            "-a".into(),
            "2".into(),
            "-b".into(),
            "1".into(),
            "--out".into(),
            out("inst"),
            "--coloring".into(),
            psi.to_str().unwrap().into(),
        ],
    ];
    let files = ["inst.graph", "inst.roles", "inst.embedding"];
    let mut differing = Vec::new();
    for args in &runs {
        let capture = || {
            let o = Command::new(env!("CARGO_BIN_EXE_lowdist")).args(args).output().unwrap();
            let written: Vec<Vec<u8>> = if args[0] == "gen-hardness" {
                files.iter().map(|f| fs::read(dir.path().join(f)).unwrap()).collect()
            } else {
                Vec::new()
            };
            (o.status.code(), o.stdout, written)
        };
        if capture() != capture() {
            differing.push(args[0].clone());
        }
    }
    r.line(
        "repeated CLI runs are byte-identical",
        differing.is_empty(),
        format!(
            "{} invocations over all 7 commands, differing: {differing:?}",
            runs.len()
        ),
    );
}

fn main() -> ExitCode {
    let mut r = Report { failed: 0 };
    let suite = line_suite();
    let minima: Vec<Rational> = suite
        .iter()
        .map(|g| min_distortion_line(&shortest_path_metric(g).unwrap()).unwrap())
        .collect();
    line_equivalence(&mut r, &suite, &minima);
    exact_values(&mut r);
    density_bound(&mut r, &suite, &minima);
    feasible_count_bound(&mut r);
    linear_time(&mut r);
    weighted_consistency(&mut r, &suite);
    tree_equivalence(&mut r);
    realized_state_check(&mut r);
    hardness_round_trip(&mut r);
    determinism(&mut r);
    println!("{} criteria failed", r.failed);
    if r.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
