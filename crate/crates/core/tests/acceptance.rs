//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use genturan::berge::{berge_sandwich_check, exact_berge_extremal, BergePattern};
use genturan::classifier::{classify_linearity, Certificate, Verdict};
use genturan::constructions::{furedi_graph, turan_graph};
use genturan::counting::{
    certified_c4_bound, certified_cycle_bound, certified_path_bound, count_cycles, count_paths,
    greedy_lower_certificates, turan_clique_count,
};
use genturan::embed::is_free;
use genturan::enumerate::uniform_hypergraph_levels;
use genturan::extremal::{
    binom_real, exact_extremal, kk_shadow_bound, kk_solve, random_deletion_lower, RandomConstructionParams,
    DEFAULT_LIMIT,
};
use genturan::field::prime_power;
use genturan::Graph;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ex(n: usize, h: &Graph, f: &Graph) -> Result<BigUint, String> {
    exact_extremal(n, h, std::slice::from_ref(f), DEFAULT_LIMIT)
        .map(|r| r.value)
        .map_err(|e| format!("ex({n}, {f:?}): {e}"))
}

fn mantel_turan() -> Outcome {
    let k2 = Graph::complete(2);
    for n in 3..=8 {
        let v = ex(n, &k2, &Graph::complete(3))?;
        check(v == BigUint::from(n * n / 4), || {
            format!("ex({n},K3) = {v}, expected {}", n * n / 4)
        })?;
    }
    for n in 4..=8 {
        let v = ex(n, &k2, &Graph::complete(4))?;
        let t = turan_graph(n, 4).unwrap().edge_count();
        check(v == BigUint::from(t), || format!("ex({n},K4) = {v}, expected {t}"))?;
    }
    Ok("ex(n,K3) for n=3..8 and ex(n,K4) for n=4..8 match".into())
}

fn zykov() -> Outcome {
    let mut checked = 0;
    for (t, k, n0) in [(3, 4, 4), (3, 5, 5), (4, 5, 5)] {
        for n in n0..=8 {
            let v = ex(n, &Graph::complete(t), &Graph::complete(k))?;
            let want = turan_clique_count(n, k, t).unwrap();
            check(v == want, || format!("ex({n},K{t},K{k}) = {v}, expected {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} clique-count values match the Turan graph"))
}

fn furedi_contract() -> Outcome {
    let mut failures = Vec::new();
    for (q, t) in [(3, 2), (4, 2), (5, 2), (7, 2), (4, 3), (7, 3), (5, 5)] {
        let g = match furedi_graph(q, t) {
            Ok(g) => g,
            Err(e) => {
                failures.push(format!("({q},{t}): {e}"));
                continue;
            }
        };
        let n = g.order();
        if n != (q * q - 1) / (t - 1) {
            failures.push(format!("({q},{t}): {n} vertices"));
        }
        if !is_free(&g, &Graph::complete_bipartite(2, t)) {
            failures.push(format!("({q},{t}): contains K_2,{t}"));
        }
        let degs = g.degrees();
        let deficient = degs.iter().filter(|&&d| d == q - 1).count();
        if degs.iter().any(|&d| d != q && d != q - 1) || deficient > 2 * q {
            failures.push(format!("({q},{t}): degree set or deficiency count"));
        }
        let mut bad_pairs = 0;
        for u in 0..n {
            for v in u + 1..n {
                if !g.has_edge(u, v) && g.codegree(u, v) != t - 1 {
                    bad_pairs += 1;
                }
            }
        }
        if bad_pairs > 0 {
            failures.push(format!(
                "({q},{t}): {bad_pairs} non-adjacent pairs with codegree != {}",
                t - 1
            ));
        }
    }
    if failures.is_empty() {
        Ok("all seven parameter pairs satisfy the contract".into())
    } else {
        Err(failures.join("; "))
    }
}

/// Random graph with all codegrees below `t`, grown edge by edge.
fn random_k2t_free(rng: &mut ChaCha8Rng, n: usize, t: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    for i in (1..pairs.len()).rev() {
        pairs.swap(i, rng.gen_range(0..=i));
    }
    let keep = rng.gen_range(0.3..1.0);
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        if !rng.gen_bool(keep) {
            continue;
        }
        g.add_edge(u, v);
        // Only pairs through u or v gain a common neighbour.
        let ok = (0..n).all(|w| (w == u || g.codegree(u, w) < t) && (w == v || g.codegree(v, w) < t));
        if !ok {
            g.remove_edge(u, v);
        }
    }
    g
}

fn max_codegree_below(g: &Graph, t: usize) -> bool {
    (0..g.order()).all(|u| (u + 1..g.order()).all(|v| g.codegree(u, v) < t))
}

fn certified_bounds() -> Outcome {
    let mut hosts: Vec<(Graph, usize)> = Vec::new();
    for (q, t) in [(3, 2), (4, 2), (5, 2), (7, 2), (4, 3), (7, 3), (5, 5)] {
        if let Ok(g) = furedi_graph(q, t) {
            hosts.push((g, t));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100 {
        let t = 2 + i % 2;
        let n = rng.gen_range(4..=20);
        let g = random_k2t_free(&mut rng, n, t);
        check(max_codegree_below(&g, t), || {
            format!("random host {i} is not K_2,{t}-free")
        })?;
        hosts.push((g, t));
    }
    let mut comparisons = 0;
    for (idx, (g, t)) in hosts.iter().enumerate() {
        let (n, e, t) = (g.order() as u64, g.edge_count() as u64, *t as u64);
        for k in 5..=7u32 {
            let exact = count_cycles(g, k as usize).unwrap().value;
            let bound = certified_cycle_bound(n, e, t, k).unwrap().value;
            check(exact <= bound, || format!("host {idx}: C{k} count {exact} > {bound}"))?;
            comparisons += 1;
        }
        for k in 2..=6u32 {
            let exact = count_paths(g, k as usize).unwrap().value;
            let bound = certified_path_bound(n, e, t, k).unwrap().value;
            check(exact <= bound, || format!("host {idx}: P{k} count {exact} > {bound}"))?;
            comparisons += 1;
        }
        let exact = count_cycles(g, 4).unwrap().value;
        let bound = certified_c4_bound(n, t).unwrap().value;
        check(exact <= bound, || format!("host {idx}: C4 count {exact} > {bound}"))?;
        comparisons += 1;
    }
    Ok(format!(
        "{} hosts, {comparisons} comparisons, no violations",
        hosts.len()
    ))
}

fn greedy_certificates() -> Outcome {
    let mut literal = 0;
    let mut relaxed = 0;
    for q in 2..=9usize {
        if prime_power(q).is_none() {
            continue;
        }
        for t in 2..=q {
            if (q - 1) % (t - 1) != 0 {
                continue;
            }
            let g = furedi_graph(q, t).unwrap();
            for k in 2..=7usize {
                let in_literal = q as i64 > (t * k) as i64 - 3 * t as i64 + k as i64;
                let Ok((path, cycle)) = greedy_lower_certificates(q as u64, t as u64, k as u32) else {
                    check(!in_literal, || format!("({q},{t},{k}) rejected"))?;
                    continue;
                };
                let paths = count_paths(&g, k).unwrap().value;
                check(paths >= path.value, || {
                    format!("({q},{t},{k}): {paths} paths < {}", path.value)
                })?;
                if let Some(c) = cycle {
                    let cycles = count_cycles(&g, k).unwrap().value;
                    check(cycles >= c.value, || {
                        format!("({q},{t},{k}): {cycles} cycles < {}", c.value)
                    })?;
                }
                if in_literal {
                    literal += 1;
                } else {
                    relaxed += 1;
                }
            }
        }
    }
    Ok(format!(
        "{literal} triples with q > t(k-3)+k and {relaxed} further admissible triples, no violations"
    ))
}

fn berge_sandwich() -> Outcome {
    let p4 = Graph::path(4);
    let cases: Vec<(usize, Graph)> = [3, 4, 5]
        .into_iter()
        .flat_map(|n| [Graph::complete(3), p4.clone(), Graph::cycle(4), Graph::cycle(5)].map(|f| (n, f)))
        .chain([(6, Graph::cycle(4)), (6, Graph::cycle(5))])
        .collect();
    for (n, f) in &cases {
        let rep = berge_sandwich_check(*n, 3, f).map_err(|e| e.to_string())?;
        check(rep.lower_holds() && rep.upper_holds(), || {
            format!("n={n}, F={f:?}: {rep:?}")
        })?;
    }
    Ok(format!("{} (n, F) cases satisfy both inequalities", cases.len()))
}

fn berge_cycles_equal_triangle_counts() -> Outcome {
    for n in 4..=6 {
        for k in 4..=5 {
            let mut berge = vec![BergePattern::DoubleEdge];
            berge.extend((3..=k).map(|l| BergePattern::Graph(Graph::cycle(l))));
            let cycles: Vec<Graph> = (4..=k).map(Graph::cycle).collect();
            let lhs = exact_berge_extremal(n, 3, &berge).map_err(|e| e.to_string())?.value;
            let rhs = exact_extremal(n, &Graph::complete(3), &cycles, DEFAULT_LIMIT)
                .map_err(|e| e.to_string())?
                .value;
            check(BigUint::from(lhs) == rhs, || format!("n={n}, k={k}: {lhs} vs {rhs}"))?;
        }
    }
    Ok("equal for n = 4..6, k = 4, 5".into())
}

fn kruskal_katona() -> Outcome {
    let mut classes = 0;
    for n in 3..=6 {
        for level in uniform_hypergraph_levels(n, 3, &|_| true) {
            for h in level {
                let m = h.edge_count() as u64;
                let shadow = h.shadow(2).len() as f64;
                let bound = kk_shadow_bound(m, 3, 2).unwrap().value;
                check(bound <= shadow + 1e-9, || {
                    format!("{h:?}: bound {bound} > shadow {shadow}")
                })?;
                classes += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let k = rng.gen_range(1..=6u32);
        let m = rng.gen_range(1..=1_000_000u64);
        let x = kk_solve(m, k);
        let resid = (binom_real(x, k) - m as f64).abs() / m as f64;
        worst = worst.max(resid);
    }
    check(worst <= 1e-9, || format!("kk_solve relative residual {worst:e}"))?;
    Ok(format!(
        "{classes} hypergraph classes checked; worst relative residual {worst:.1e}"
    ))
}

fn with_pendants(base: Graph, at: &[usize]) -> Graph {
    at.iter().fold(base, |g, &v| g.with_vertex([v]))
}

fn classifier_regressions() -> Outcome {
    let c5 = Graph::cycle(5);
    let cases: Vec<(usize, Graph, Option<Verdict>)> = vec![
        (6, Graph::star(4), Some(Verdict::Linear)),
        (6, Graph::path(7), Some(Verdict::Linear)),
        (
            6,
            Graph::cycle(6).disjoint_union(&Graph::cycle(6)),
            Some(Verdict::Quadratic),
        ),
        (4, Graph::cycle(4), Some(Verdict::Linear)),
        (5, with_pendants(c5.clone(), &[0, 2]), Some(Verdict::Linear)),
        (5, with_pendants(c5.clone(), &[0, 1]), Some(Verdict::Quadratic)),
        (6, Graph::cycle(6), Some(Verdict::Linear)),
        (6, Graph::cycle(5), Some(Verdict::Quadratic)),
        (6, Graph::complete(3), Some(Verdict::Quadratic)),
        (7, Graph::path(8), None),
        (6, Graph::star(3).disjoint_union(&Graph::star(3)), Some(Verdict::Linear)),
        (6, Graph::complete_bipartite(2, 3), None),
        (4, Graph::complete_bipartite(2, 3), None),
        (5, Graph::cycle(4), None),
        (7, Graph::star(5), Some(Verdict::Linear)),
        (
            6,
            Graph::path(3)
                .disjoint_union(&Graph::path(3))
                .disjoint_union(&Graph::path(3)),
            Some(Verdict::Quadratic),
        ),
        (6, Graph::star(3).disjoint_union(&Graph::path(4)), None),
        (4, Graph::path(5), None),
        (4, Graph::star(3), None),
        (5, c5.disjoint_union(&Graph::complete(2)), None),
        (5, with_pendants(Graph::cycle(5), &[0]), None),
        (8, Graph::cycle(4), None),
        (6, Graph::complete(4), Some(Verdict::Quadratic)),
    ];
    let (mut lin, mut quad) = (0, 0);
    for (k, f, expect) in &cases {
        let v = classify_linearity(*k, f).map_err(|e| format!("k={k}, F={f:?}: {e}"))?;
        if let Some(want) = expect {
            check(v.verdict == *want, || format!("k={k}, F={f:?}: got {}", v.verdict))?;
        }
        check(v.verify(), || format!("k={k}, F={f:?}: certificate does not verify"))?;
        match (&v.verdict, &v.certificate) {
            (Verdict::Quadratic, Certificate::Family { member, growth, .. }) => {
                check(is_free(member, f) && growth.passes(), || {
                    format!("k={k}, F={f:?}: quadratic check")
                })?;
                quad += 1;
            }
            (Verdict::Linear, Certificate::Containment { .. } | Certificate::Forest { .. }) => lin += 1,
            _ => return Err(format!("k={k}, F={f:?}: verdict and certificate disagree")),
        }
    }
    Ok(format!(
        "{} pairs: {lin} linear, {quad} quadratic, all certificates verify",
        cases.len()
    ))
}

fn random_construction() -> Outcome {
    let (h, f) = (Graph::complete(3), Graph::complete(4));
    let mut means = Vec::new();
    for n in [40, 80] {
        let mut total = 0.0;
        for seed in 0..5 {
            let rec = random_deletion_lower(&RandomConstructionParams {
                n,
                h: h.clone(),
                f: f.clone(),
                c: 2.0,
                seed,
            })
            .map_err(|e| e.to_string())?;
            check(is_free(&rec.witness, &f), || {
                format!("n={n}, seed={seed}: witness contains K4")
            })?;
            check(rec.value > BigUint::from(0u32), || {
                format!("n={n}, seed={seed}: no triangles")
            })?;
            total += rec.value.to_string().parse::<f64>().unwrap();
        }
        means.push(total / 5.0);
    }
    check(means[1] > means[0], || {
        format!("mean {} at n=80 not above {} at n=40", means[1], means[0])
    })?;
    Ok(format!("mean triangles {:.1} (n=40), {:.1} (n=80)", means[0], means[1]))
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a filter
    // argument selects criteria by number.
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [Criterion; 10] = [
        ("Mantel and Turan edge numbers", Duration::from_secs(120), mantel_turan),
        ("Zykov clique counts", Duration::from_secs(600), zykov),
        ("orbit graph contract", Duration::from_secs(60), furedi_contract),
        ("certified counting bounds", Duration::from_secs(600), certified_bounds),
        (
            "greedy lower certificates",
            Duration::from_secs(600),
            greedy_certificates,
        ),
        ("Berge sandwich", Duration::from_secs(1800), berge_sandwich),
        (
            "Berge cycles versus triangle counts",
            Duration::from_secs(1800),
            berge_cycles_equal_triangle_counts,
        ),
        ("Kruskal-Katona shadows", Duration::from_secs(300), kruskal_katona),
        (
            "classifier certificates",
            Duration::from_secs(300),
            classifier_regressions,
        ),
        (
            "random deletion construction",
            Duration::from_secs(120),
            random_construction,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > *budget => Err(format!("took {took:.1?}, budget {budget:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} ({name}, {took:.1?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id:>2} ({name}, {took:.1?}): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
