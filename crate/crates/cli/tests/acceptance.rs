//! Acceptance run: one PASS or FAIL line per criterion, nonzero exit if any
//! criterion fails. Every check that matters is recomputed here with small
//! independent helpers rather than trusted from the library.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::process::{Command, ExitCode};
use std::time::Instant;

use pathdecomp::decompose::{
    absorb_triangles, decompose, decompose_connected, replay, Branch, DecomposeError,
};
use pathdecomp::format::write_edge_list;
use pathdecomp::generate::{generate, GenSpec};
use pathdecomp::verify::{minimum_decomposition, verify_decomposition};
use pathdecomp::{Graph, Path, VertexId};
use pathdecomp_cli::{run_fuzz, trial_spec, FuzzConfig};
use rayon::prelude::*;

type Outcome = Result<String, String>;

/// Carrier path, triangle, and the exact paths expected back.
type LemmaCase<'a> = (&'a [VertexId], [VertexId; 3], Vec<Vec<VertexId>>);

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Independent helpers over adjacency bitmasks (n <= 8).

type Adj = [u8; 8];

fn adj_of(n: usize, mask: u64, pairs: &[(usize, usize)]) -> Adj {
    let mut a = [0u8; 8];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            a[u] |= 1 << v;
            a[v] |= 1 << u;
        }
    }
    debug_assert!(n <= 8);
    a
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn edge_count(a: &Adj) -> usize {
    a.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
}

/// Repeatedly deletes any vertex of degree at most two.
fn peels(n: usize, a: &Adj) -> bool {
    let mut alive: u8 = if n == 8 { 0xff } else { (1u8 << n) - 1 };
    while alive != 0 {
        match (0..n).find(|&v| alive >> v & 1 == 1 && (a[v] & alive).count_ones() <= 2) {
            Some(v) => alive &= !(1 << v),
            None => return false,
        }
    }
    true
}

fn spans_connected(n: usize, a: &Adj) -> bool {
    let mut seen: u8 = 1;
    let mut frontier: u8 = 1;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= !(1 << v);
        let fresh = a[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen.count_ones() as usize == n
}

fn to_graph(n: usize, a: &Adj) -> Graph {
    let e = (0..n).flat_map(|u| {
        (u + 1..n)
            .filter(move |&v| a[u] >> v & 1 == 1)
            .map(move |v| (u, v))
    });
    Graph::from_edges(n, e).unwrap()
}

/// Smallest upper-triangle code over relabelings that sort vertices by
/// degree. Equal codes mean isomorphic graphs and vice versa.
fn canonical(n: usize, a: &Adj) -> u64 {
    let deg: Vec<u32> = (0..n).map(|v| a[v].count_ones()).collect();
    let mut want = deg.clone();
    want.sort_unstable();
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    fn rec(
        n: usize,
        a: &Adj,
        deg: &[u32],
        want: &[u32],
        perm: &mut Vec<usize>,
        used: u8,
        best: &mut u64,
    ) {
        if perm.len() == n {
            let mut code = 0u64;
            let mut bit = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if a[perm[i]] >> perm[j] & 1 == 1 {
                        code |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            *best = (*best).min(code);
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 0 && deg[v] == want[perm.len()] {
                perm.push(v);
                rec(n, a, deg, want, perm, used | 1 << v, best);
                perm.pop();
            }
        }
    }
    rec(n, a, &deg, &want, &mut perm, 0, &mut best);
    best
}

/// Representatives of every 2-degenerate graph on `n` vertices up to
/// isomorphism, built by adding a vertex of degree at most two.
fn classes_up_to(n_max: usize) -> Vec<Vec<Adj>> {
    let mut out: Vec<Vec<Adj>> = vec![vec![], vec![[0; 8]]];
    for n in 2..=n_max {
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for a in extensions(n - 1, &out[n - 1]) {
            if seen.insert(canonical(n, &a)) {
                reps.push(a);
            }
        }
        out.push(reps);
    }
    out
}

/// Each graph with one new vertex `n` joined to 0, 1 or 2 old vertices.
fn extensions(n: usize, reps: &[Adj]) -> Vec<Adj> {
    let mut out = Vec::new();
    let mut nbr_sets: Vec<u8> = vec![0];
    nbr_sets.extend((0..n).map(|u| 1u8 << u));
    nbr_sets.extend(pairs(n).iter().map(|&(u, v)| (1u8 << u) | (1u8 << v)));
    for a in reps {
        for &s in &nbr_sets {
            let mut b = *a;
            b[n] = s;
            for (u, row) in b.iter_mut().enumerate().take(n) {
                if s >> u & 1 == 1 {
                    *row |= 1 << n;
                }
            }
            out.push(b);
        }
    }
    out
}

/// Checks that `paths` are simple paths whose edges partition `g`.
fn partitions(g: &Graph, paths: &[Path]) -> Result<(), String> {
    let mut left: BTreeSet<(VertexId, VertexId)> = g.edges().map(|e| (e.lo(), e.hi())).collect();
    for p in paths {
        let vs = p.vertices();
        let distinct: BTreeSet<_> = vs.iter().collect();
        if vs.len() < 2 || distinct.len() != vs.len() {
            return Err(format!("not a simple path: {vs:?}"));
        }
        for w in vs.windows(2) {
            if !left.remove(&(w[0].min(w[1]), w[0].max(w[1]))) {
                return Err(format!("edge {}-{} absent or reused", w[0], w[1]));
            }
        }
    }
    match left.first() {
        Some(e) => Err(format!("{} edges uncovered, e.g. {e:?}", left.len())),
        None => Ok(()),
    }
}

/// Component vertex sets of the non-isolated part, by union-find.
fn components(g: &Graph) -> Vec<Vec<VertexId>> {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for e in g.edges() {
        let (a, b) = (find(&mut parent, e.lo()), find(&mut parent, e.hi()));
        parent[a] = b;
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for v in 0..g.n() {
        if g.degree(v) > 0 {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
    }
    groups.into_values().collect()
}

fn is_triangle_component(g: &Graph, c: &[VertexId]) -> bool {
    c.len() == 3 && c.iter().all(|&v| g.degree(v) == 2)
}

fn budget(g: &Graph) -> usize {
    components(g)
        .iter()
        .map(|c| {
            if is_triangle_component(g, c) {
                2
            } else {
                c.len() / 2
            }
        })
        .sum()
}

/// Connected, 2-degenerate, non-triangle test population for n <= 8:
/// every labeled graph up to 7 vertices, and for 8 vertices every
/// extension of a 7-vertex class, which reaches every isomorphism class.
fn population(classes: &[Vec<Adj>]) -> (Vec<Graph>, Vec<Graph>) {
    let keep =
        |n: usize, a: &Adj| n >= 2 && spans_connected(n, a) && !(n == 3 && edge_count(a) == 3);
    let mut labeled = Vec::new();
    for n in 2..=7 {
        let ps = pairs(n);
        for mask in 0..1u64 << ps.len() {
            if (mask.count_ones() as usize) < n - 1 || mask.count_ones() as usize > 2 * n - 3 {
                continue;
            }
            let a = adj_of(n, mask, &ps);
            if keep(n, &a) && peels(n, &a) {
                labeled.push(to_graph(n, &a));
            }
        }
    }
    let mut reps: Vec<Graph> = Vec::new();
    for (n, cls) in classes.iter().enumerate() {
        reps.extend(cls.iter().filter(|a| keep(n, a)).map(|a| to_graph(n, a)));
    }
    reps.extend(
        extensions(7, &classes[7])
            .iter()
            .filter(|a| keep(8, a) && peels(8, a))
            .map(|a| to_graph(8, a)),
    );
    (labeled, reps)
}

// ---------------------------------------------------------------------------
// Criteria.

fn small_exhaustive(labeled: &[Graph], reps: &[Graph]) -> Outcome {
    let all: Vec<&Graph> = labeled
        .iter()
        .chain(reps.iter().filter(|g| g.n() == 8))
        .collect();
    let bad: Vec<String> = all
        .par_iter()
        .filter_map(|g| {
            let check = || -> Result<(), String> {
                let (d, _) = decompose_connected(g).map_err(|e| e.to_string())?;
                ensure(verify_decomposition(g, &d).valid, || {
                    "verifier rejected".into()
                })?;
                partitions(g, &d.paths)?;
                ensure(d.paths.len() <= g.n() / 2, || {
                    format!("{} paths", d.paths.len())
                })
            };
            check()
                .err()
                .map(|e| format!("{:?}: {e}", g.edges().collect::<Vec<_>>()))
        })
        .collect();
    let n8 = all.len() - labeled.len();
    ensure(bad.is_empty(), || {
        format!("{} failures, first {}", bad.len(), bad[0])
    })?;
    Ok(format!(
        "{} labeled graphs n<=7, {n8} graphs n=8",
        labeled.len()
    ))
}

fn oracle_sandwich(reps: &[Graph]) -> Outcome {
    let pool: Vec<&Graph> = reps.iter().filter(|g| g.m() <= 14).collect();
    let bad: Vec<String> = pool
        .par_iter()
        .filter_map(|g| {
            let (d, _) = decompose_connected(g).ok()?;
            let (min, w) = minimum_decomposition(g, 14).ok()?;
            let ok = partitions(g, &w.paths).is_ok()
                && min == w.paths.len()
                && min <= d.paths.len()
                && d.paths.len() <= g.n() / 2;
            (!ok).then(|| {
                format!(
                    "{:?}: min {min}, got {}",
                    g.edges().collect::<Vec<_>>(),
                    d.paths.len()
                )
            })
        })
        .collect();
    // Errors from either side would vanish in the filter above; count them.
    let answered = pool
        .par_iter()
        .filter(|g| decompose_connected(g).is_ok() && minimum_decomposition(g, 14).is_ok())
        .count();
    ensure(answered == pool.len(), || {
        format!("{} graphs unanswered", pool.len() - answered)
    })?;
    ensure(bad.is_empty(), || {
        format!("{} violations, first {}", bad.len(), bad[0])
    })?;
    let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let tmin = minimum_decomposition(&triangle, 14)
        .map_err(|e| e.to_string())?
        .0;
    ensure(tmin == 2, || format!("triangle minimum {tmin}"))?;
    Ok(format!("{} classes, triangle needs 2", pool.len()))
}

fn fuzz_at_scale() -> Outcome {
    let cfg = FuzzConfig {
        trials: 10_000,
        max_n: 200,
        seed: 2024,
        ..FuzzConfig::default()
    };
    let results: Vec<Result<(usize, bool), String>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let spec = trial_spec(&cfg, i);
            let g = generate(&spec).map_err(|e| format!("trial {i}: {e}"))?;
            let (d, t) = match decompose(&g) {
                Ok(x) => x,
                Err(e @ DecomposeError::InternalInvariantViolation { .. }) => {
                    return Err(format!("trial {i}: IIV {e}"))
                }
                Err(e) => return Err(format!("trial {i}: {e}")),
            };
            ensure(verify_decomposition(&g, &d).valid, || {
                format!("trial {i}: verifier rejected")
            })?;
            partitions(&g, &d.paths).map_err(|e| format!("trial {i}: {e}"))?;
            // A lone triangle is the one connected graph outside the n/2
            // bound; it must take exactly two paths and say so.
            let triangle = g.n() == 3 && g.m() == 3;
            let limit = if triangle { 2 } else { g.n() / 2 };
            ensure(d.paths.len() <= limit, || {
                format!("trial {i}: {} > {limit}", d.paths.len())
            })?;
            ensure(d.bound_met != triangle, || {
                format!("trial {i}: bound_met {}", d.bound_met)
            })?;
            replay(&t).map_err(|e| format!("trial {i}: replay {e}"))?;
            Ok((g.n(), triangle))
        })
        .collect();
    let errs: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    ensure(errs.is_empty(), || {
        format!("{} failures, first {}", errs.len(), errs[0])
    })?;
    let ok: Vec<(usize, bool)> = results.into_iter().flatten().collect();
    let max_n = ok.iter().map(|r| r.0).max().unwrap();
    let triangles = ok.iter().filter(|r| r.1).count();
    Ok(format!(
        "10000 trials, max n {max_n}, {triangles} lone triangles at 2 paths"
    ))
}

fn branch_coverage() -> Outcome {
    let cfg = FuzzConfig {
        trials: 4000,
        max_n: 80,
        seed: 1,
        densify: true,
        families: true,
        ..FuzzConfig::default()
    };
    let report = run_fuzz(&cfg);
    ensure(report.failures.is_empty(), || {
        format!("{} fuzz failures", report.failures.len())
    })?;
    let missing: Vec<&str> = Branch::ALL
        .iter()
        .map(|b| b.tag())
        .filter(|t| report.branch_histogram.get(*t).copied().unwrap_or(0) == 0)
        .collect();
    ensure(missing.is_empty(), || format!("missing {missing:?}"))?;
    let rarest = report
        .branch_histogram
        .iter()
        .min_by_key(|(_, &c)| c)
        .unwrap();
    Ok(format!(
        "{} tags, rarest {} x{}",
        Branch::ALL.len(),
        rarest.0,
        rarest.1
    ))
}

fn lemma_suite() -> Outcome {
    // (carrier, triangle, expected paths): through three, two and one
    // triangle vertices.
    let cases: [LemmaCase; 3] = [
        (
            &[0, 1, 2, 3, 4, 5, 6],
            [1, 3, 5],
            vec![vec![0, 1, 3, 5, 4], vec![4, 3, 2, 1, 5, 6]],
        ),
        (
            &[0, 1, 2, 3, 4, 5],
            [1, 4, 6],
            vec![vec![0, 1, 4, 3], vec![3, 2, 1, 6, 4, 5]],
        ),
        (&[0, 1, 2], [1, 3, 4], vec![vec![0, 1, 3, 4], vec![4, 1, 2]]),
    ];
    for (k, (p, t, want)) in cases.iter().enumerate() {
        let mut e: Vec<_> = p.windows(2).map(|w| (w[0], w[1])).collect();
        e.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
        let n = p.iter().chain(t).max().unwrap() + 1;
        let g = Graph::from_edges(n, e).unwrap();
        let out = absorb_triangles(&Path::new(p.to_vec()).unwrap(), &[*t], &g)
            .map_err(|e| e.to_string())?;
        let got: Vec<Vec<VertexId>> = out.iter().map(|q| q.vertices().to_vec()).collect();
        ensure(&got == want, || format!("case {}: {got:?}", k + 1))?;
        partitions(&g, &out).map_err(|e| format!("case {}: {e}", k + 1))?;
    }
    Ok("3 constructions exact".into())
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathdecomp"))
}

fn run_decompose_file(g: &Graph, dir: &std::path::Path, name: &str) -> Result<i32, String> {
    let path = dir.join(name);
    fs::write(&path, write_edge_list(g)).map_err(|e| e.to_string())?;
    let out = bin()
        .args(["decompose"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    Ok(out.status.code().unwrap_or(-1))
}

fn disconnected(dir: &std::path::Path) -> Outcome {
    let mut plain = 0;
    let mut with_triangles = 0;
    for seed in 0..600u64 {
        let n = 2 + (seed as usize * 7) % 60;
        let mut g = generate(&GenSpec {
            connect: false,
            ..GenSpec::random(n, seed, 0.4)
        })
        .unwrap();
        if seed % 3 == 0 {
            // Append one to three disjoint triangles.
            let k = 1 + (seed as usize / 3) % 3;
            let mut e: Vec<_> = g.edges().map(|e| (e.lo(), e.hi())).collect();
            for i in 0..k {
                let b = n + 3 * i;
                e.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
            }
            g = Graph::from_edges(n + 3 * k, e).unwrap();
        }
        let (d, _) = decompose(&g).map_err(|e| format!("seed {seed}: {e}"))?;
        partitions(&g, &d.paths).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(verify_decomposition(&g, &d).valid, || {
            format!("seed {seed}: verifier rejected")
        })?;
        let comps = components(&g);
        let triangles = comps.iter().any(|c| is_triangle_component(&g, c));
        ensure(d.paths.len() <= budget(&g), || {
            format!("seed {seed}: over per-component budget")
        })?;
        if triangles {
            with_triangles += 1;
            ensure(!d.bound_met, || {
                format!("seed {seed}: bound_met with a triangle")
            })?;
        } else {
            plain += 1;
            ensure(d.bound_met, || format!("seed {seed}: bound_met false"))?;
            ensure(
                budget(&g) <= g.n() / 2 && d.paths.len() <= g.n() / 2,
                || format!("seed {seed}: over n/2"),
            )?;
        }
        if seed % 50 == 0 || seed % 50 == 3 {
            let code = run_decompose_file(&g, dir, "disconnected.txt")?;
            let want = if triangles { 2 } else { 0 };
            ensure(code == want, || {
                format!("seed {seed}: exit {code}, want {want}")
            })?;
        }
    }
    let lone = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let code = run_decompose_file(&lone, dir, "triangle.txt")?;
    ensure(code == 2, || format!("lone triangle exit {code}"))?;
    Ok(format!(
        "{plain} triangle-free, {with_triangles} with triangles"
    ))
}

fn determinism(dir: &std::path::Path) -> Outcome {
    let graph = dir.join("det-graph.txt");
    let dec = dir.join("det-dec.txt");
    let trace = dir.join("det-trace.txt");
    let g = generate(&GenSpec {
        densify: true,
        ..GenSpec::random(60, 9, 0.5)
    })
    .unwrap();
    fs::write(&graph, write_edge_list(&g)).map_err(|e| e.to_string())?;
    let out = bin()
        .arg("decompose")
        .arg(&graph)
        .output()
        .map_err(|e| e.to_string())?;
    fs::write(&dec, &out.stdout).map_err(|e| e.to_string())?;

    let s = |p: &std::path::Path| p.to_str().unwrap().to_string();
    let commands: Vec<Vec<String>> = vec![
        vec![
            "gen".into(),
            "--n".into(),
            "120".into(),
            "--seed".into(),
            "5".into(),
            "--connected".into(),
        ],
        vec![
            "gen".into(),
            "--n".into(),
            "40".into(),
            "--seed".into(),
            "3".into(),
            "--densify".into(),
        ],
        vec![
            "gen".into(),
            "--family".into(),
            "theta".into(),
            "--n".into(),
            "9".into(),
        ],
        vec!["decompose".into(), s(&graph), "--trace".into(), s(&trace)],
        vec!["decompose".into(), s(&graph), "--json".into()],
        vec!["verify".into(), s(&graph), s(&dec)],
        vec!["verify".into(), s(&graph), s(&dec), "--json".into()],
        vec![
            "fuzz".into(),
            "--trials".into(),
            "25".into(),
            "--max-n".into(),
            "30".into(),
            "--seed".into(),
            "4".into(),
            "--families".into(),
            "--json".into(),
        ],
    ];
    for args in &commands {
        let mut first: Option<(Vec<u8>, Option<i32>, Vec<u8>)> = None;
        for rep in 0..100 {
            let _ = fs::remove_file(&trace);
            let out = bin().args(args).output().map_err(|e| e.to_string())?;
            let side = fs::read(&trace).unwrap_or_default();
            let now = (out.stdout, out.status.code(), side);
            match &first {
                None => first = Some(now),
                Some(f) => ensure(*f == now, || {
                    format!("`{}` differs on run {rep}", args.join(" "))
                })?,
            }
        }
        let (stdout, code, _) = first.unwrap();
        ensure(code == Some(0) && !stdout.is_empty(), || {
            format!("`{}` exit {code:?}", args.join(" "))
        })?;
    }
    Ok(format!("{} commands x 100 runs", commands.len()))
}

fn main() -> ExitCode {
    let dir = std::env::temp_dir().join(format!("pathdecomp-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();

    let t = Instant::now();
    let classes = classes_up_to(7);
    let (labeled, reps) = population(&classes);
    eprintln!("population built in {:.1}s", t.elapsed().as_secs_f64());

    let criteria: Vec<(&str, Check)> = vec![
        (
            "exhaustive-small-bound",
            Box::new(|| small_exhaustive(&labeled, &reps)),
        ),
        ("oracle-sandwich", Box::new(|| oracle_sandwich(&reps))),
        ("fuzz-at-scale", Box::new(fuzz_at_scale)),
        ("branch-coverage", Box::new(branch_coverage)),
        ("lemma-constructions", Box::new(lemma_suite)),
        ("disconnected-components", Box::new(|| disconnected(&dir))),
        ("determinism", Box::new(|| determinism(&dir))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let t = Instant::now();
        let secs = || t.elapsed().as_secs_f64();
        match check() {
            Ok(detail) => println!("PASS {name}: {detail} ({:.1}s)", secs()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} ({:.1}s)", secs());
            }
        }
    }
    let _ = fs::remove_dir_all(&dir);
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
