//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::Instant;

use num_bigint::BigInt;
use onecut::closedform::{
    gaussian_cov, jacobi_cov, jacobi_symmetric_cov, ln_asymptotic_cov, ln_zero_edge_cov, shift_cov,
    wishart_cov, wishart_support,
};
use onecut::density::cov_quadrature;
use onecut::genfun::{eval_f, eval_f_joukowski, expand_f};
use onecut::mcsim::{estimate, MCConfig};
use onecut::planarcount::count_connected_annular;
use onecut::series::{int, ratio, to_f64};
use onecut::{EnsembleSpec, ExactScalar, SupportInterval};

const SEED: u64 = 20240917;

type Verdict = Result<String, String>;

const GAUSSIAN: [[i64; 8]; 8] = [
    [2, 0, 6, 0, 20, 0, 70, 0],
    [0, 4, 0, 16, 0, 60, 0, 224],
    [6, 0, 24, 0, 90, 0, 336, 0],
    [0, 16, 0, 72, 0, 288, 0, 1120],
    [20, 0, 90, 0, 360, 0, 1400, 0],
    [0, 60, 0, 288, 0, 1200, 0, 4800],
    [70, 0, 336, 0, 1400, 0, 5600, 0],
    [0, 224, 0, 1120, 0, 4800, 0, 19600],
];

fn wishart_ref(k: usize, l: usize, c: i64) -> i64 {
    let c2 = c * c;
    let c3 = c2 * c;
    let c4 = c3 * c;
    let c5 = c4 * c;
    match (k.min(l), k.max(l)) {
        (1, 1) => 2 * c,
        (1, 2) => 4 * (c + c2),
        (1, 3) => 6 * (c + 3 * c2 + c3),
        (2, 2) => 4 * (2 * c + 5 * c2 + 2 * c3),
        (2, 3) => 12 * (c + 5 * c2 + 5 * c3 + c4),
        (3, 3) => 6 * (3 * c + 24 * c2 + 46 * c3 + 24 * c4 + 3 * c5),
        _ => unreachable!(),
    }
}

const JACOBI: [[(i64, i64); 5]; 5] = [
    [(1, 8), (1, 8), (15, 128), (7, 64), (105, 1024)],
    [(1, 8), (9, 64), (9, 64), (35, 256), (135, 1024)],
    [(15, 128), (9, 64), (75, 512), (75, 512), (4725, 32768)],
    [(7, 64), (35, 256), (75, 512), (1225, 8192), (1225, 8192)],
    [
        (105, 1024),
        (135, 1024),
        (4725, 32768),
        (1225, 8192),
        (19845, 131072),
    ],
];

fn support(a: (i64, i64), b: (i64, i64)) -> SupportInterval {
    SupportInterval::from_ratios(a, b).unwrap()
}

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

fn gaussian_table() -> Verdict {
    let s = support((-2, 1), (2, 1));
    let table = expand_f(&s, 8).map_err(|e| e.to_string())?;
    for k in 1..=8 {
        for l in 1..=8 {
            let want = int(GAUSSIAN[k - 1][l - 1]);
            if table.get_exact(k, l) != Some(&want) || gaussian_cov(k, l) != want {
                return Err(format!("({k},{l}) does not reproduce {want}"));
            }
            let shifted = shift_cov(&s, k, l);
            if rel(shifted, to_f64(&want)) > 1e-12 {
                return Err(format!("shift formula at ({k},{l}): {shifted}"));
            }
        }
    }
    Ok("64 entries exact (series, closed form), shift formula within 1e-12".into())
}

fn wishart_table() -> Verdict {
    let mut worst = 0f64;
    for c in [1i64, 2, 3, 7] {
        let table = expand_f(&wishart_support(c as f64).map_err(|e| e.to_string())?, 3)
            .map_err(|e| e.to_string())?;
        for k in 1..=3 {
            for l in 1..=3 {
                let want = wishart_ref(k, l, c);
                if wishart_cov(&int(c), k, l) != int(want) {
                    return Err(format!("c={c} ({k},{l}) closed form differs from {want}"));
                }
                worst = worst.max(rel(table.get(k, l), want as f64));
            }
        }
    }
    if worst > 1e-12 {
        return Err(format!("series deviates by {worst:e}"));
    }
    Ok(format!(
        "closed form exact at c = 1, 2, 3, 7; series within {worst:.1e}"
    ))
}

fn jacobi_table() -> Verdict {
    let mut worst = 0f64;
    for k in 1..=5 {
        for l in 1..=5 {
            let (p, q) = JACOBI[k - 1][l - 1];
            if jacobi_symmetric_cov(k, l) != ratio(p, q) {
                return Err(format!("({k},{l}) is not {p}/{q}"));
            }
            let f = jacobi_cov(0.0, 0.0, k, l).map_err(|e| e.to_string())?;
            worst = worst.max((f - p as f64 / q as f64).abs());
        }
    }
    if worst > 1e-12 {
        return Err(format!("general formula deviates by {worst:e}"));
    }
    Ok(format!(
        "25 rationals exact; general formula within {worst:.1e}"
    ))
}

fn planar_counts() -> Verdict {
    for (k, l, v) in [(1, 1, 1u32), (2, 2, 2), (1, 3, 3), (3, 3, 12)] {
        let got = count_connected_annular(k, l).map_err(|e| e.to_string())?;
        if got != v.into() {
            return Err(format!("({k},{l}) counted {got}, expected {v}"));
        }
    }
    let mut pairs = 0;
    for k in 1..16 {
        for l in k..=16 - k {
            if (k + l) % 2 == 1 {
                continue;
            }
            let got = count_connected_annular(k, l).map_err(|e| e.to_string())?;
            let half = gaussian_cov(k, l) / int(2);
            if ExactScalar::from_integer(BigInt::from(got.clone())) != half {
                return Err(format!("({k},{l}) counted {got}, expected {half}"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs with k + l <= 16 equal alpha/2"))
}

fn quadrature() -> Verdict {
    let cases: [(SupportInterval, Box<dyn Fn(usize, usize) -> f64>); 3] = [
        (
            support((-2, 1), (2, 1)),
            Box::new(|k, l| to_f64(&gaussian_cov(k, l))),
        ),
        (
            support((0, 1), (4, 1)),
            Box::new(|k, l| to_f64(&wishart_cov(&int(1), k, l))),
        ),
        (
            support((0, 1), (1, 1)),
            Box::new(|k, l| to_f64(&jacobi_symmetric_cov(k, l))),
        ),
    ];
    let mut worst = 0f64;
    for (s, closed) in &cases {
        for k in 1..=6 {
            for l in 1..=6 {
                let q = cov_quadrature(s, k, l, 16).map_err(|e| e.to_string())?;
                worst = worst.max(rel(q, closed(k, l)));
            }
        }
    }
    if worst > 1e-6 {
        return Err(format!("max relative error {worst:e}"));
    }
    Ok(format!(
        "k, l <= 6 on three supports, max relative error {worst:.1e}"
    ))
}

fn monte_carlo() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    for e in [
        EnsembleSpec::wishart(1.0, 2.0).unwrap(),
        EnsembleSpec::jacobi(0.0, 0.0, 2.0).unwrap(),
    ] {
        let name = e.name();
        let cfg = MCConfig::new(e, 50, 10_000, SEED).with_orders(8, 5);
        let est = estimate(&cfg).map_err(|e| e.to_string())?;
        let theory = est.theory().map_err(|e| e.to_string())?;
        let rows = est.correlation_rows(&theory);
        let within = rows.iter().filter(|r| r.z.abs() <= 3.0).count() as f64 / rows.len() as f64;
        let max = rows
            .iter()
            .map(|r| (r.empirical - r.theory).abs())
            .fold(0.0, f64::max);
        ok &= within >= 0.9 && max <= 0.05;
        lines.push(format!(
            "{name}: {:.0}% |z|<=3, max dev {max:.4}",
            100.0 * within
        ));
    }
    if ok {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

fn identities() -> Verdict {
    let supports = [
        support((-2, 1), (2, 1)),
        support((0, 1), (4, 1)),
        support((0, 1), (1, 1)),
        support((-7, 10), (23, 10)),
        support((1, 2), (3, 1)),
    ];
    let mut worst = 0f64;
    for s in &supports {
        let r = 0.9 * s.analytic_radius();
        for i in 0..10 {
            for j in 0..10 {
                let z = -r + 2.0 * r * (i as f64 + 0.5) / 10.0;
                let w = -r + 2.0 * r * (j as f64 + 0.25) / 10.0;
                let d = eval_f(s, 2.0, z, w).map_err(|e| e.to_string())?;
                let jk = eval_f_joukowski(s, 2.0, z, w).map_err(|e| e.to_string())?;
                worst = worst.max((d - jk).abs());
            }
        }
        expand_f(s, 8)
            .map_err(|e| e.to_string())?
            .check_invariants()?;
    }
    if worst > 1e-10 {
        return Err(format!("Joukowski deviation {worst:e}"));
    }

    let g = support((-2, 1), (2, 1));
    let table = expand_f(&g, 24).map_err(|e| e.to_string())?;
    let (z, w) = (0.2f64, 0.1f64);
    let exact = eval_f(&g, 1.0, z, w).map_err(|e| e.to_string())?;
    let errors: Vec<f64> = (1..=24)
        .map(|k| {
            let mut s = 0.0;
            for i in 0..=k {
                for j in 0..=k {
                    s += table.get(i, j) * z.powi(i as i32) * w.powi(j as i32);
                }
            }
            (s - exact).abs()
        })
        .collect();
    if errors.windows(2).any(|p| p[1] > p[0]) {
        return Err("partial sums are not monotone".into());
    }
    let last = errors[23];
    if last > 1e-8 {
        return Err(format!("K = 24 error {last:e}"));
    }
    Ok(format!(
        "Joukowski max dev {worst:.1e} on 500 points; invariants hold; K = 24 error {last:.1e}"
    ))
}

fn beta_ratio() -> Verdict {
    let run = |beta: f64| -> Result<f64, String> {
        let cfg = MCConfig::new(EnsembleSpec::gaussian(beta).unwrap(), 50, 10_000, SEED)
            .with_orders(2, 2);
        Ok(estimate(&cfg).map_err(|e| e.to_string())?.cov[2][2])
    };
    let r = run(1.0)? / run(4.0)?;
    if (3.4..=4.6).contains(&r) {
        Ok(format!("ratio {r:.3}"))
    } else {
        Err(format!("ratio {r:.3} outside [3.4, 4.6]"))
    }
}

fn asymptotics() -> Verdict {
    let r = (ln_zero_edge_cov(2.0, 40, 40) - ln_asymptotic_cov(2.0, 40, 40)).exp();
    if (0.97..=1.03).contains(&r) {
        Ok(format!("ratio at k = l = 40: {r:.5}"))
    } else {
        Err(format!("ratio {r} outside [0.97, 1.03]"))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("gaussian table", gaussian_table),
        ("wishart table", wishart_table),
        ("jacobi table", jacobi_table),
        ("planar counts", planar_counts),
        ("quadrature", quadrature),
        ("monte carlo correlations", monte_carlo),
        ("identities", identities),
        ("beta scaling", beta_ratio),
        ("asymptotics", asymptotics),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(d) => println!("PASS {} {name} ({secs:.2}s): {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2}s): {d}", i + 1);
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
