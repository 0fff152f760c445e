//! Acceptance suite. Prints one `criterion N: PASS|FAIL ...` line per
//! criterion and exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use vandlrc::codec::{projection_violation, Code, ReceivedWord};
use vandlrc::format::write_family;
use vandlrc::gf::{FieldContext, FieldElement};
use vandlrc::lrc::{
    build_parity_check, code_params_from_family, optimality_check, singleton_bound, Matrix, OptimalityKind,
};
use vandlrc::setfam::{
    derandomized_family, family_size_upper_bound, find_berge_cycle, for_each_combination, greedy_family, random_family,
    rng_for, sample_subset, target_family_size, to_hypergraph, SetFamily,
};
use vandlrc::Error;

type Outcome = Result<String, String>;

fn main() {
    let criteria: Vec<(u32, fn() -> Outcome)> = vec![
        (1, c1_union_vs_distance),
        (2, c2_union_vs_berge),
        (3, c3_singleton_q13),
        (4, c4_singleton_q17_d6),
        (5, c5_remark_case),
        (6, c6_random_construction),
        (7, c7_derandomized_determinism),
        (8, c8_codec),
        (9, c9_cli_reproducibility),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.2} s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.2} s) {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn family(q: u32, r: usize, t: usize, sets: &[&[u32]]) -> SetFamily {
    SetFamily::new(q, r, t, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
}

// ---------------------------------------------------------------- corpus

struct Instance {
    family: SetFamily,
    d: usize,
}

/// `size` distinct elements of `[0, q)` containing `forced`.
fn set_with(rng: &mut impl Rng, q: u32, size: usize, forced: &[u32]) -> Vec<u32> {
    let mut s = forced.to_vec();
    while s.len() < size {
        let v = rng.gen_range(0..q);
        if !s.contains(&v) {
            s.push(v);
        }
    }
    s
}

/// Families over q in {11..31}, r in {3,4,5}, m <= 5, d in {5,6,7}: a third
/// uniformly random, a third with a planted violation, a third grown
/// greedily so that they pass.
fn corpus(count: usize) -> Vec<Instance> {
    const QS: [u32; 10] = [11, 13, 16, 17, 19, 23, 25, 27, 29, 31];
    (0..count)
        .map(|i| {
            let mut rng = rng_for(0xACCE, i as u64);
            let q = QS[rng.gen_range(0..QS.len())];
            let r = rng.gen_range(3..=5usize);
            let d = rng.gen_range(5..=7usize);
            let t = (d - 1) / 2;
            let m = rng.gen_range(1..=5usize);
            let sets: Vec<Vec<u32>> = match i % 3 {
                0 => (0..m).map(|_| sample_subset(&mut rng, q, r + 1)).collect(),
                1 => {
                    let mut sets: Vec<Vec<u32>> = (0..m.max(3)).map(|_| sample_subset(&mut rng, q, r + 1)).collect();
                    if t >= 3 && rng.gen_bool(0.5) {
                        // three sets meeting pairwise in single distinct points
                        let p = sample_subset(&mut rng, q, 3);
                        sets[0] = set_with(&mut rng, q, r + 1, &[p[0], p[2]]);
                        sets[1] = set_with(&mut rng, q, r + 1, &[p[0], p[1]]);
                        sets[2] = set_with(&mut rng, q, r + 1, &[p[1], p[2]]);
                    } else {
                        let j = rng.gen_range(1..sets.len());
                        let i = rng.gen_range(0..j);
                        let shared = [sets[i][0], sets[i][r]];
                        sets[j] = set_with(&mut rng, q, r + 1, &shared);
                    }
                    sets
                }
                _ => {
                    let g = greedy_family(q, r, t, 400, i as u64).unwrap();
                    g.sets().iter().take(m).cloned().collect()
                }
            };
            Instance {
                family: SetFamily::new(q, r, t, sets).unwrap(),
                d,
            }
        })
        .collect()
}

/// Independent oracle: Gaussian elimination on every set of exactly
/// `min(d-1, n)` columns.
fn naive_all_independent(field: &FieldContext, h: &Matrix, d: usize) -> bool {
    let n = h.cols();
    let w = (d - 1).min(n);
    let mut ok = true;
    for_each_combination(n, w, |cols| {
        if ok && naive_rank(field, h, cols) < w {
            ok = false;
        }
    });
    ok
}

#[allow(clippy::needless_range_loop)]
fn naive_rank(field: &FieldContext, h: &Matrix, cols: &[usize]) -> usize {
    let mut a: Vec<Vec<FieldElement>> = (0..h.rows())
        .map(|r| cols.iter().map(|&c| h.get(r, c)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = field.inv(a[rank][c]).unwrap();
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = field.mul(a[r][c], inv);
                for k in 0..cols.len() {
                    let v = field.sub(a[r][k], field.mul(f, a[rank][k]));
                    a[r][k] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn c1_union_vs_distance() -> Outcome {
    let start = Instant::now();
    let instances = corpus(600);
    let (mut passing, mut naive_checked) = (0, 0);
    for (i, inst) in instances.iter().enumerate() {
        let f = &inst.family;
        let field = FieldContext::new(f.q() as u64).unwrap();
        let h = build_parity_check(Arc::new(field.clone()), f, inst.d).unwrap();
        let union_ok = f.passes();
        let distance_ok = h.verify_distance_at_least(inst.d).passed();
        check(union_ok == distance_ok, || {
            format!(
                "instance {i} (q={} r={} d={}): union {union_ok}, columns {distance_ok}",
                f.q(),
                f.r(),
                inst.d
            )
        })?;
        if binom(h.n(), (inst.d - 1).min(h.n())) <= 20_000 {
            naive_checked += 1;
            let naive = naive_all_independent(&field, h.matrix(), inst.d);
            check(naive == union_ok, || {
                format!("instance {i}: naive enumeration says {naive}")
            })?;
        }
        passing += usize::from(union_ok);
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    check(passing > 50 && instances.len() - passing > 50, || {
        format!("unbalanced corpus: {passing} passing")
    })?;
    Ok(format!(
        "{} families ({passing} pass, {} fail), 100% agreement; {naive_checked} also checked by plain enumeration",
        instances.len(),
        instances.len() - passing
    ))
}

fn c2_union_vs_berge() -> Outcome {
    let instances = corpus(600);
    for (i, inst) in instances.iter().enumerate() {
        let f = &inst.family;
        let union_ok = f.passes();
        let cycle = find_berge_cycle(&to_hypergraph(f), f.t());
        if let Some(c) = &cycle {
            check(c.is_valid_in(&to_hypergraph(f)) && c.len() <= f.t(), || {
                format!("instance {i}: invalid cycle {c:?}")
            })?;
        }
        check(union_ok == cycle.is_none(), || {
            format!("instance {i}: union {union_ok}, cycle {cycle:?}")
        })?;
    }
    Ok(format!("{} families, 100% agreement", instances.len()))
}

// ------------------------------------------------------------ exact codes

#[allow(clippy::too_many_arguments)]
fn exact_code(
    q: u32,
    r: usize,
    d: usize,
    sets: &[&[u32]],
    n: usize,
    k: usize,
    dist: usize,
    kind: OptimalityKind,
) -> Outcome {
    let start = Instant::now();
    let field = Arc::new(FieldContext::new(q as u64).unwrap());
    let f = family(q, r, (d - 1) / 2, sets);
    let params = code_params_from_family(field.clone(), &f, d).map_err(|e| e.to_string())?;
    check((params.n, params.k) == (n, k), || {
        format!("n, k = {}, {}", params.n, params.k)
    })?;
    let h = build_parity_check(field, &f, d).unwrap();
    let md = h.exact_min_distance(1 << 32).map_err(|e| e.to_string())?;
    check(md.distance == dist, || format!("distance {}", md.distance))?;
    check(!h.columns_independent(&md.witness), || "witness is independent".into())?;
    let verdict = optimality_check(&params, md.distance).unwrap();
    check(verdict.kind == kind, || format!("verdict {verdict}"))?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "n={n} k={k} d={} singleton_bound={} verdict: {verdict}",
        md.distance,
        singleton_bound(n, k, r)
    ))
}

fn c3_singleton_q13() -> Outcome {
    exact_code(
        13,
        4,
        5,
        &[&[0, 1, 2, 3, 4], &[0, 5, 6, 7, 8], &[1, 5, 9, 10, 11]],
        15,
        9,
        5,
        OptimalityKind::OptimalSingleton,
    )
}

fn c4_singleton_q17_d6() -> Outcome {
    exact_code(
        17,
        5,
        6,
        &[&[0, 1, 2, 3, 4, 5], &[0, 6, 7, 8, 9, 10]],
        12,
        6,
        6,
        OptimalityKind::OptimalSingleton,
    )
}

fn c5_remark_case() -> Outcome {
    let sets: &[&[u32]] = &[&[0, 1, 2, 3], &[0, 4, 5, 6], &[1, 4, 7, 8]];
    let f = family(13, 3, 2, sets);
    let pairwise = f.pairwise_intersections();
    check(
        (0..3).all(|i| (0..3).all(|j| i == j || pairwise[i * 3 + j] <= 1)),
        || "intersections exceed 1".into(),
    )?;
    // n - k - ceil(k/r) + 1 = 12 - 6 - 2 + 1
    let out = exact_code(13, 3, 5, sets, 12, 6, 12 - 6 - 2 + 1, OptimalityKind::OptimalRemarkCase)?;
    Ok(out)
}

// ------------------------------------------------------------ generation

fn c6_random_construction() -> Outcome {
    let target = target_family_size(4999, 5, 3).unwrap();
    check(target == 91, || format!("target {target}"))?;
    let bound = family_size_upper_bound(4999, 5, 3).unwrap();
    let mut good = 0;
    let mut sizes = Vec::new();
    for seed in 1..=5u64 {
        let start = Instant::now();
        let result = random_family(4999, 5, 3, seed, 10);
        let elapsed = start.elapsed();
        check(elapsed < Duration::from_secs(300), || {
            format!("seed {seed} took {elapsed:?}")
        })?;
        if let Ok(f) = result {
            let ok = f.m() as u64 >= target && f.passes() && (f.m() as u64) <= bound && f.m() <= 33299;
            good += usize::from(ok);
            sizes.push(f.m());
        }
    }
    check(good >= 4, || format!("only {good} of 5 seeds succeeded"))?;
    Ok(format!(
        "{good}/5 seeds gave verified families of sizes {sizes:?} (target {target}, upper bound {bound})"
    ))
}

fn c7_derandomized_determinism() -> Outcome {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| write_family(&derandomized_family(64, 2, 3).unwrap()))
    };
    let outputs: Vec<String> = [1, 1, 4, 4].iter().map(|&t| run(t)).collect();
    check(outputs.iter().all(|o| o == &outputs[0]), || "outputs differ".into())?;
    let f = derandomized_family(64, 2, 3).unwrap();
    check(f.passes(), || "fails verification".into())?;
    let target = target_family_size(64, 2, 3).unwrap() as usize;
    check(f.m() >= target, || format!("size {} below target {target}", f.m()))?;
    Ok(format!(
        "4 runs on 1 and 4 threads byte-identical; m={} >= {target}; passes",
        f.m()
    ))
}

// ------------------------------------------------------------------ codec

fn c8_codec() -> Outcome {
    let field = Arc::new(FieldContext::new(13).unwrap());
    let f = family(13, 4, 2, &[&[0, 1, 2, 3, 4], &[0, 5, 6, 7, 8], &[1, 5, 9, 10, 11]]);
    let code = Code::from_family(field.clone(), &f, 5).unwrap();
    let mut rng = rng_for(8, 0);
    let random_codeword = |rng: &mut rand_chacha::ChaCha8Rng| {
        let msg: Vec<FieldElement> = (0..code.k())
            .map(|_| field.elem(rng.gen_range(0..13)).unwrap())
            .collect();
        code.encode(&msg).unwrap()
    };

    // (a)
    let cw = random_codeword(&mut rng);
    for i in 0..code.n() {
        let mut w = ReceivedWord::from_codeword(&cw);
        w.erase(&[i]).unwrap();
        let fix = code.local_repair(&w).map_err(|e| format!("(a) position {i}: {e}"))?;
        check(fix.value == cw.symbols()[i] && fix.read.len() == 4, || {
            format!("(a) position {i}: {fix:?}")
        })?;
    }

    // (b)
    for trial in 0..1000 {
        let cw = random_codeword(&mut rng);
        let erased: Vec<usize> = sample_subset(&mut rng, 15, 4).into_iter().map(|p| p as usize).collect();
        let mut w = ReceivedWord::from_codeword(&cw);
        w.erase(&erased).unwrap();
        let got = code.erasure_decode(&w).map_err(|e| format!("(b) trial {trial}: {e}"))?;
        check(got == cw, || {
            format!("(b) trial {trial}: wrong codeword for {erased:?}")
        })?;
    }

    // (c)
    let md = code.parity_check().exact_min_distance(1 << 32).unwrap();
    check(md.witness.len() == 5, || format!("(c) witness {:?}", md.witness))?;
    let mut w = ReceivedWord::from_codeword(&random_codeword(&mut rng));
    w.erase(&md.witness).unwrap();
    check(
        matches!(code.erasure_decode(&w), Err(Error::Unrecoverable { erasures: 5 })),
        || "(c) support of a minimum-weight codeword was decoded".into(),
    )?;

    // (d)
    let sub = code.generator().select_rows(&[0, 1, 2, 3]);
    let v = projection_violation(&field, &sub, code.repair_groups(), 1 << 20).map_err(|e| e.to_string())?;
    check(v.is_none(), || format!("(d) projections overlap at position {v:?}"))?;

    Ok(format!(
        "(a) 15 local repairs reading 4 symbols; (b) 1000 4-erasure decodes; (c) erasures on {:?} unrecoverable; (d) 13^4 codewords, projections disjoint",
        md.witness
    ))
}

// -------------------------------------------------------------------- cli

fn cli(dir: &Path, args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_vandlrc"))
        .args(args)
        .current_dir(dir)
        .env("RAYON_NUM_THREADS", if dir.ends_with("a") { "1" } else { "4" })
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn c9_cli_reproducibility() -> Outcome {
    let root = tempfile::tempdir().map_err(|e| e.to_string())?;
    let script: &[&[&str]] = &[
        &[
            "gen-family",
            "--q",
            "4999",
            "--r",
            "5",
            "--d",
            "7",
            "--method",
            "random",
            "--seed",
            "1",
            "--out",
            "random.txt",
        ],
        &[
            "gen-family",
            "--q",
            "13",
            "--r",
            "4",
            "--d",
            "5",
            "--method",
            "greedy",
            "--seed",
            "7",
            "--out",
            "greedy.txt",
        ],
        &[
            "gen-family",
            "--q",
            "49",
            "--r",
            "3",
            "--d",
            "5",
            "--method",
            "derandomized",
            "--out",
            "derand.txt",
        ],
        &["verify", "--in", "greedy.txt", "--d", "5", "--full"],
        &["build-code", "--in", "greedy.txt", "--d", "5", "--out", "h.txt"],
        &["distance", "--in", "h.txt"],
        &[
            "encode",
            "--code",
            "greedy.txt",
            "--d",
            "5",
            "--seed",
            "3",
            "--out",
            "c.txt",
        ],
        &["erase", "--in", "c.txt", "--at", "6", "--out", "e1.txt"],
        &[
            "repair",
            "--code",
            "greedy.txt",
            "--d",
            "5",
            "--in",
            "e1.txt",
            "--out",
            "r1.txt",
        ],
        &[
            "erase", "--in", "c.txt", "--count", "4", "--seed", "5", "--out", "e4.txt",
        ],
        &[
            "decode",
            "--code",
            "greedy.txt",
            "--d",
            "5",
            "--in",
            "e4.txt",
            "--out",
            "d4.txt",
        ],
    ];
    let files = [
        "random.txt",
        "greedy.txt",
        "derand.txt",
        "h.txt",
        "c.txt",
        "e1.txt",
        "r1.txt",
        "e4.txt",
        "d4.txt",
    ];
    let mut stdout = Vec::new();
    for run in ["a", "b"] {
        let dir = root.path().join(run);
        std::fs::create_dir(&dir).map_err(|e| e.to_string())?;
        let mut outs = Vec::new();
        for args in script {
            let o = cli(&dir, args)?;
            // generation reports contain wall time
            if !args[0].starts_with("gen") {
                outs.push(o);
            }
        }
        stdout.push(outs);
    }
    for f in files {
        let a = std::fs::read(root.path().join("a").join(f)).map_err(|e| e.to_string())?;
        let b = std::fs::read(root.path().join("b").join(f)).map_err(|e| e.to_string())?;
        check(!a.is_empty() && a == b, || format!("{f} differs between runs"))?;
    }
    check(stdout[0] == stdout[1], || "command output differs between runs".into())?;
    let c = std::fs::read(root.path().join("a/c.txt")).unwrap();
    check(c == std::fs::read(root.path().join("a/r1.txt")).unwrap(), || {
        "repair did not restore the codeword".into()
    })?;
    check(c == std::fs::read(root.path().join("a/d4.txt")).unwrap(), || {
        "decode did not restore the codeword".into()
    })?;
    Ok(format!(
        "{} commands, {} files byte-identical across two runs (1 and 4 threads)",
        script.len(),
        files.len()
    ))
}
