//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qgraph::asymptotics::Parity;
use qgraph::{
    ambarzumian_check, cluster_polynomial, effective_resistance, eigenfunctions, extract_cluster,
    find_eigenvalues, fundamental_values, is_bipartite, matrix_tree_count, nullity,
    spectral_determinant, CheckOptions, MetricGraph, PiecewisePotential,
};
use std::f64::consts::PI;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !{ $cond } {
            return Err(format!($($arg)*));
        }
    };
}

fn graph(edges: &[(usize, usize)], n: usize) -> MetricGraph {
    MetricGraph::from_edges(n, edges).unwrap()
}

fn loop_graph() -> MetricGraph {
    graph(&[(0, 0)], 1)
}

fn star() -> MetricGraph {
    graph(&[(1, 0), (2, 0), (3, 0)], 4)
}

fn triangle() -> MetricGraph {
    graph(&[(0, 1), (1, 2), (2, 0)], 3)
}

fn k4() -> MetricGraph {
    graph(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4)
}

fn double_edge() -> MetricGraph {
    graph(&[(0, 1), (0, 1)], 2)
}

fn path() -> MetricGraph {
    graph(&[(0, 1), (1, 2)], 3)
}

fn loop_with_pendant() -> MetricGraph {
    graph(&[(0, 0), (0, 1)], 2)
}

fn test_graphs() -> Vec<(&'static str, MetricGraph)> {
    vec![
        ("loop", loop_graph()),
        ("triangle", triangle()),
        ("K4", k4()),
        ("star", star()),
        ("double edge", double_edge()),
        ("path", path()),
        ("loop+pendant", loop_with_pendant()),
    ]
}

fn perturbed_triangle() -> MetricGraph {
    triangle().with_potentials(vec![
        PiecewisePotential::new(vec![0.0, 0.5, 1.0], vec![0.5, 1.5]).unwrap(),
        PiecewisePotential::new(vec![0.0, 0.25, 1.0], vec![-1.0, -7.0 / 3.0]).unwrap(),
        PiecewisePotential::new(vec![0.0, 0.5, 1.0], vec![2.0, 0.0]).unwrap(),
    ])
}

fn random_potential(rng: &mut StdRng) -> PiecewisePotential {
    let pieces = rng.random_range(1..=6);
    let mut cuts: Vec<f64> = (0..pieces - 1)
        .map(|_| rng.random_range(0.02..0.98))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|b, a| *b - *a < 1e-3);
    let mut breakpoints = vec![0.0];
    breakpoints.extend(cuts);
    breakpoints.push(1.0);
    let values = (1..breakpoints.len())
        .map(|_| rng.random_range(-5.0..5.0))
        .collect();
    PiecewisePotential::new(breakpoints, values).unwrap()
}

fn random_potentials(g: &MetricGraph, rng: &mut StdRng) -> MetricGraph {
    g.with_potentials((0..g.edge_count()).map(|_| random_potential(rng)).collect())
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn qgraph_exit(graph: &str, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qgraph"))
        .arg("--graph")
        .arg(data(graph))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn closed_form_determinants() -> Outcome {
    let (lo, step): (f64, f64) = (0.5, 0.05);
    let n = ((400.0 - lo) / step).round() as usize;
    let (loop_g, star_g) = (loop_graph(), star());
    let (mut worst_loop, mut worst_star) = (0.0f64, 0.0f64);
    for i in 0..=n {
        let lambda = lo + i as f64 * step;
        let k = lambda.sqrt();
        let a = spectral_determinant(&loop_g, lambda).unwrap() - 2.0 * (k.cos() - 1.0);
        let b = spectral_determinant(&star_g, lambda).unwrap() + 3.0 * k.sin() * k.cos().powi(2);
        worst_loop = worst_loop.max(a.abs());
        worst_star = worst_star.max(b.abs());
    }
    ensure!(worst_loop < 1e-9, "loop deviation {worst_loop:e}");
    ensure!(worst_star < 1e-9, "star deviation {worst_star:e}");
    Ok(format!(
        "{} points, max deviation loop {worst_loop:.1e}, star {worst_star:.1e}",
        n + 1
    ))
}

fn wronskian_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..100 {
        let q = random_potential(&mut rng);
        let segment_value = q.values()[rng.random_range(0..q.values().len())];
        for lambda in [-40.0, -0.75, segment_value, 2.5, 180.0, 2500.0] {
            let w = fundamental_values(&q, lambda).unwrap().wronskian();
            worst = worst.max((w - 1.0).abs());
            cases += 1;
        }
    }
    ensure!(worst < 1e-10, "max |W - 1| = {worst:e}");
    Ok(format!("{cases} cases, max |W - 1| = {worst:.1e}"))
}

/// The free graphs, the points where the multiplicity law is checked, and
/// the expected nullity `|E| - |V| + 2`.
fn multiplicity_cases() -> Vec<(&'static str, MetricGraph, f64, usize)> {
    let mut cases = Vec::new();
    for (name, g) in [
        ("loop", loop_graph()),
        ("triangle", triangle()),
        ("K4", k4()),
        ("star", star()),
        ("double edge", double_edge()),
    ] {
        let expected = g.edge_count() + 2 - g.vertex_count();
        for k in 1..=3 {
            cases.push((name, g.clone(), (2.0 * k as f64 * PI).powi(2), expected));
        }
        if is_bipartite(&g).is_some() {
            for k in [1, 3, 5] {
                cases.push((name, g.clone(), (k as f64 * PI).powi(2), expected));
            }
        }
    }
    cases
}

fn multiplicity_law() -> Outcome {
    let cases = multiplicity_cases();
    for (name, g, lambda, expected) in &cases {
        let got = nullity(g, *lambda, 1e-8).unwrap();
        ensure!(
            got == *expected,
            "{name} at {lambda}: nullity {got}, expected {expected}"
        );
    }
    let sizes: Vec<String> = [loop_graph(), triangle(), k4(), star(), double_edge()]
        .iter()
        .map(|g| (g.edge_count() + 2 - g.vertex_count()).to_string())
        .collect();
    Ok(format!(
        "{} points, nullities {}",
        cases.len(),
        sizes.join(", ")
    ))
}

fn cluster_polynomial_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut worst = 0.0f64;
    let mut worst_root = 0.0f64;
    for (name, base) in [
        ("triangle", triangle()),
        ("K4", k4()),
        ("loop+pendant", loop_with_pendant()),
    ] {
        for _ in 0..20 {
            let g = random_potentials(&base, &mut rng);
            let cp = cluster_polynomial(&g).unwrap();
            let means = g.edge_means();
            let (q, m) = (g.total_potential(), g.edge_count() as f64);
            for _ in 0..5 {
                let d: f64 = rng.random_range(-6.0..6.0);
                // Σ_τ Π_{e∉τ}(d - q̄_e) = Π_e (d - q̄_e) · Σ_τ Π_{e∈τ} 1/(d - q̄_e)
                let w: Vec<f64> = means.iter().map(|qe| 1.0 / (d - qe)).collect();
                let t = means.iter().map(|qe| d - qe).product::<f64>()
                    * matrix_tree_count(&g, Some(&w));
                let expected = (q - m * d) * t;
                let rel = (cp.p.eval(d) - expected).abs() / expected.abs().max(1e-300);
                ensure!(
                    rel < 1e-10,
                    "{name}: p({d}) = {} vs {expected}",
                    cp.p.eval(d)
                );
                worst = worst.max(rel);
            }
            let scale: f64 =
                cp.p.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.abs() * (q / m).abs().powi(i as i32))
                    .sum();
            let at_mean = cp.p.eval(q / m).abs() / scale.max(1.0);
            ensure!(at_mean <= 1e-12, "{name}: p(Q/|E|) = {at_mean:e} relative");
            worst_root = worst_root.max(at_mean);
        }
    }
    Ok(format!(
        "60 assignments, max relative error {worst:.1e}, |p(Q/|E|)| <= {worst_root:.1e}"
    ))
}

fn shift_convergence() -> Outcome {
    let g = perturbed_triangle();
    let mean = cluster_polynomial(&g).unwrap().mean_value_root();
    ensure!(mean.abs() < 1e-12, "mean-value root {mean}");
    let mut distances = Vec::new();
    for k in [4, 8, 16] {
        let report = extract_cluster(&g, k, Parity::Even, 20.0).unwrap();
        distances.push(report.distance_to(0.0));
    }
    ensure!(
        distances.windows(2).all(|w| w[1] < w[0]),
        "distances not decreasing: {distances:?}"
    );
    ensure!(
        distances[2] < 5e-2,
        "distance at k = 16 is {}",
        distances[2]
    );
    Ok(format!(
        "distances to 0 at k = 4, 8, 16: {:.2e}, {:.2e}, {:.2e}",
        distances[0], distances[1], distances[2]
    ))
}

fn exact_shift() -> Outcome {
    let v = 2.0;
    let free = find_eigenvalues(&triangle(), -1.0, 200.0 - v, 0.01).unwrap();
    let shifted = find_eigenvalues(
        &triangle().with_uniform_potential(PiecewisePotential::constant(v)),
        0.0,
        200.0,
        0.01,
    )
    .unwrap();
    ensure!(
        free.len() == shifted.len(),
        "{} free eigenvalues vs {} shifted",
        free.len(),
        shifted.len()
    );
    let mut worst = 0.0f64;
    for (a, b) in free.iter().zip(&shifted) {
        ensure!(
            a.multiplicity == b.multiplicity,
            "multiplicity differs at {}",
            b.lambda
        );
        worst = worst.max((a.lambda + v - b.lambda).abs());
    }
    ensure!(worst < 1e-9, "max deviation {worst:e}");
    Ok(format!(
        "{} distinct eigenvalues, max deviation {worst:.1e}",
        free.len()
    ))
}

fn effective_resistances() -> Outcome {
    let all_equal = |g: &MetricGraph, r: Ratio<i128>| {
        (0..g.edge_count()).all(|j| effective_resistance(g, j) == r)
    };
    ensure!(all_equal(&triangle(), Ratio::new(2, 3)), "triangle");
    ensure!(all_equal(&k4(), Ratio::new(1, 2)), "K4");
    ensure!(all_equal(&path(), Ratio::from_integer(1)), "path bridges");
    ensure!(
        effective_resistance(&loop_with_pendant(), 1) == Ratio::from_integer(1),
        "pendant bridge"
    );
    for (name, g) in test_graphs() {
        let total: Ratio<i128> = (0..g.edge_count())
            .map(|j| effective_resistance(&g, j))
            .sum();
        ensure!(
            total == Ratio::from_integer(g.vertex_count() as i128 - 1),
            "{name}: sum of r = {total}"
        );
    }
    Ok("triangle 2/3, K4 1/2, bridges 1; Foster's identity on 7 graphs".into())
}

fn hypothesis_checker() -> Outcome {
    for file in [
        "loop.toml",
        "triangle.toml",
        "k4.toml",
        "star.toml",
        "double_edge.toml",
        "path.toml",
    ] {
        let (code, out) = qgraph_exit(file, &["check"]);
        ensure!(code == 0, "{file}: exit {code}\n{out}");
    }

    let (code, out) = qgraph_exit("loop_q1.toml", &["check", "--k", "8"]);
    ensure!(code == 1, "loop q = 1: exit {code}");
    ensure!(
        out.contains("cluster shift ≈ "),
        "loop q = 1: no shift witness in\n{out}"
    );
    let g = loop_graph().with_uniform_potential(PiecewisePotential::constant(1.0));
    let verdict = ambarzumian_check(&g, &[8], &CheckOptions::for_graph(&g)).unwrap();
    let witness = verdict.clusters[0]
        .witness_shift
        .ok_or("no witness shift")?;
    ensure!((witness - 1.0).abs() <= 0.05, "witness shift {witness}");

    let g = perturbed_triangle();
    let verdict = ambarzumian_check(&g, &[4, 8, 16], &CheckOptions::for_graph(&g)).unwrap();
    let bottom = verdict
        .smallest_eigenvalue
        .ok_or("no smallest eigenvalue")?;
    ensure!(
        !verdict.zero_is_bottom && bottom < -1e-4,
        "smallest eigenvalue {bottom}"
    );
    let (code, _) = qgraph_exit("triangle_q.toml", &["check"]);
    ensure!(code == 1, "perturbed triangle: exit {code}");

    let (code, _) = qgraph_exit("path.toml", &["check", "--weakened"]);
    ensure!(code == 4, "weakened check on a path: exit {code}");
    Ok(format!(
        "free graphs exit 0; loop q = 1 witness {witness:.6}; perturbed triangle bottom {bottom:.4}"
    ))
}

fn invariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let base = graph(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 3)], 4);
    let spectrum = |g: &MetricGraph| find_eigenvalues(g, -10.0, 120.0, 0.01).unwrap();
    let mut compared = 0;
    for trial in 0..10 {
        let g = random_potentials(&base, &mut rng);
        let reference = spectrum(&g);
        let mut vperm: Vec<usize> = (0..4).collect();
        let mut eorder: Vec<usize> = (0..6).collect();
        for i in (1..4).rev() {
            vperm.swap(i, rng.random_range(0..=i));
        }
        for i in (1..6).rev() {
            eorder.swap(i, rng.random_range(0..=i));
        }
        let mut flipped = g.clone();
        for j in 0..6 {
            if rng.random_bool(0.5) {
                flipped = flipped.with_reversed_edge(j);
            }
        }
        for (what, other) in [
            ("relabeled", g.relabeled(&vperm, &eorder)),
            ("reversed", flipped),
        ] {
            let s = spectrum(&other);
            ensure!(
                s.len() == reference.len(),
                "trial {trial} {what}: {} vs {} eigenvalues",
                s.len(),
                reference.len()
            );
            for (a, b) in reference.iter().zip(&s) {
                ensure!(
                    (a.lambda - b.lambda).abs() < 1e-8 && a.multiplicity == b.multiplicity,
                    "trial {trial} {what}: {} vs {}",
                    a.lambda,
                    b.lambda
                );
            }
            compared += s.len();
        }
    }
    Ok(format!("10 trials, {compared} eigenvalues compared"))
}

fn eigenfunction_residuals() -> Outcome {
    let (mut worst_c, mut worst_k) = (0.0f64, 0.0f64);
    let mut count = 0;
    for (name, g, lambda, expected) in multiplicity_cases() {
        let fs = eigenfunctions(&g, lambda).unwrap();
        ensure!(
            fs.len() == expected,
            "{name} at {lambda}: {} eigenfunctions",
            fs.len()
        );
        for f in &fs {
            let c = f.continuity_residual().unwrap();
            let k = f.kirchhoff_residual().unwrap();
            ensure!(c < 1e-8, "{name} at {lambda}: continuity residual {c:e}");
            ensure!(k < 1e-7, "{name} at {lambda}: Kirchhoff residual {k:e}");
            worst_c = worst_c.max(c);
            worst_k = worst_k.max(k);
            count += 1;
        }
    }
    Ok(format!(
        "{count} eigenfunctions, max continuity {worst_c:.1e}, max Kirchhoff {worst_k:.1e}"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("closed-form determinants", closed_form_determinants),
        ("Wronskian suite", wronskian_suite),
        ("free multiplicity law", multiplicity_law),
        ("cluster polynomial oracle", cluster_polynomial_oracle),
        ("shift convergence", shift_convergence),
        ("exact shift", exact_shift),
        ("effective resistance", effective_resistances),
        ("hypothesis checker", hypothesis_checker),
        ("invariance", invariance),
        ("eigenfunction residuals", eigenfunction_residuals),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
