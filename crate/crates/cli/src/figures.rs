//! `figures`: datasets behind figures 3 to 9.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cswap_core::circuit::CswapTest;
use cswap_core::oracles::{
    cn_max, degree_cn, expected_trials_from_cn, expected_trials_genuine, genuine_exponent, ghz_maximal,
    tomography_baseline, tomography_crossover, w_maximal, ErrorFamily, GenuineClass,
};
use cswap_core::{states, SignatureClass};

use crate::json::trials_json;
use crate::output::{num, opt_num, Table};
use crate::sweep::{sweep_rows, sweep_table, Grid};
use crate::{FiguresArgs, Fredkin, Settings};

/// Lower end of the `E_any` and `E_n` curves.
const C_MIN: f64 = 0.05;

fn c_grid(points: usize) -> Vec<f64> {
    Grid::new(C_MIN, std::f64::consts::SQRT_2, points).points()
}

fn simulate_ideal(t: &CswapTest, n: usize) -> Result<(cswap_core::ControlDistribution, cswap_core::ControlDistribution)> {
    let g = states::ghz(n)?;
    let w = states::w(n)?;
    Ok((t.run(&g, &g, false)?.control_dist, t.run(&w, &w, false)?.control_dist))
}

fn fig3_fig4(t: &CswapTest, ns: &[usize]) -> Result<(Table, Table)> {
    let mut f3 = Table::new(&[
        "n",
        "ghz_p_zero",
        "ghz_p_even",
        "w_p_zero",
        "w_p_two",
        "sim_ghz_p_zero",
        "sim_ghz_p_even",
        "sim_w_p_zero",
        "sim_w_p_two",
    ]);
    let mut f4 = Table::new(&["n", "ghz_c_n", "w_c_n", "sim_ghz_c_n", "sim_w_c_n"]);
    for &n in ns {
        let (g, w) = (ghz_maximal(n), w_maximal(n));
        let (sg, sw) = simulate_ideal(t, n)?;
        let class = |d: &cswap_core::oracles::AnalyticDistribution, c| d.class(c).unwrap_or(0.0);
        f3.push(vec![
            n.to_string(),
            num(g.p_zero()),
            num(class(&g, SignatureClass::EvenOnes)),
            num(w.p_zero()),
            num(class(&w, SignatureClass::ExactlyTwoOnes)),
            num(sg.p_zero()),
            num(sg.class_total(SignatureClass::EvenOnes)),
            num(sw.p_zero()),
            num(sw.class_total(SignatureClass::ExactlyTwoOnes)),
        ]);
        f4.push(vec![
            n.to_string(),
            num(degree_cn(&g)),
            num(degree_cn(&w)),
            num(degree_cn(&sg)),
            num(degree_cn(&sw)),
        ]);
    }
    Ok((f3, f4))
}

const CURVE_HEADER: [&str; 4] = ["series", "n", "c_n", "expected_trials"];

fn row(series: &str, n: Option<usize>, c: Option<f64>, e: Option<f64>) -> Vec<String> {
    vec![
        series.to_string(),
        n.map(|n| n.to_string()).unwrap_or_default(),
        opt_num(c),
        opt_num(e),
    ]
}

/// `E_any = 4/C²`, the upper end of each `n`'s range and the crossover
/// where `E_any = 3ⁿ`.
fn fig5(ns: &[usize], points: usize) -> Result<Table> {
    let mut t = Table::new(&CURVE_HEADER);
    for c in c_grid(points) {
        t.push(row("e_any", None, Some(c), trials_json(expected_trials_from_cn(c)?)));
    }
    for &n in ns {
        let c = cn_max(n);
        t.push(row("upper_limit", Some(n), Some(c), trials_json(expected_trials_from_cn(c)?)));
    }
    for &n in ns {
        let base = tomography_baseline(n as u32).context("3^n overflows")? as f64;
        t.push(row("tomography_crossover", Some(n), Some(tomography_crossover(n as u32)), Some(base)));
    }
    Ok(t)
}

/// Panel a: ideal GHZ and W against `3ⁿ`. Panel b: `(4/C²)^x(n)` curves and
/// their crossovers with `3ⁿ`.
fn fig6(ns: &[usize], points: usize) -> Result<Table> {
    let mut t = Table::new(&["panel", "series", "n", "c_n", "expected_trials"]);
    let mut push = |panel: &str, r: Vec<String>| {
        let mut v = vec![panel.to_string()];
        v.extend(r);
        t.push(v);
    };
    for &n in ns {
        let g = ghz_maximal(n);
        let w = w_maximal(n);
        let pg = g.class(SignatureClass::EvenOnes).unwrap_or(0.0);
        let pw = w.class(SignatureClass::EvenOnes).unwrap_or(0.0);
        let eg = trials_json(expected_trials_genuine(n, GenuineClass::GhzLike, pg)?);
        let ew = trials_json(expected_trials_genuine(n, GenuineClass::WLike, pw)?);
        push("a", row("ghz_state", Some(n), Some(degree_cn(&g)), eg));
        push("a", row("w_state", Some(n), Some(degree_cn(&w)), ew));
        let base = tomography_baseline(n as u32).context("3^n overflows")? as f64;
        push("a", row("tomography", Some(n), None, Some(base)));
    }
    for (series, class) in [("ghz_like", GenuineClass::GhzLike), ("w_like", GenuineClass::WLike)] {
        for &n in ns {
            let x = genuine_exponent(n, class)? as f64;
            for c in c_grid(points) {
                push("b", row(series, Some(n), Some(c), Some((4.0 / (c * c)).powf(x))));
            }
        }
    }
    for (series, class) in [
        ("ghz_like_crossover", GenuineClass::GhzLike),
        ("w_like_crossover", GenuineClass::WLike),
    ] {
        for &n in ns {
            let x = genuine_exponent(n, class)? as f64;
            let base = tomography_baseline(n as u32).context("3^n overflows")? as f64;
            // (4/C²)^x = 3ⁿ
            let c = 2.0 * base.powf(-0.5 / x);
            push("b", row(series, Some(n), Some(c), Some(base)));
        }
    }
    Ok(t)
}

fn write(dir: &Path, name: &str, t: &Table) -> Result<()> {
    let path = dir.join(name);
    let f = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    t.write_to(std::io::BufWriter::new(f))
        .with_context(|| format!("writing {}", path.display()))
}

pub fn cmd_figures(settings: &Settings, args: &FiguresArgs) -> Result<()> {
    if !(2..=40).contains(&args.n_max) {
        bail!("--n-max must lie in 2..=40");
    }
    if args.points < 2 {
        bail!("--points must be at least 2");
    }
    settings.check_capacity(args.n_max)?;
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let ns: Vec<usize> = (2..=args.n_max).collect();
    let tester = settings.tester(Fredkin::Native);

    let (f3, f4) = fig3_fig4(&tester, &ns)?;
    write(&args.out, "fig3.csv", &f3)?;
    write(&args.out, "fig4.csv", &f4)?;
    write(&args.out, "fig5.csv", &fig5(&ns, args.points)?)?;
    write(&args.out, "fig6.csv", &fig6(&ns, args.points)?)?;
    let sweeps = [
        ("fig7.csv", [ErrorFamily::UnbalancedGhz, ErrorFamily::UnbalancedW]),
        ("fig8.csv", [ErrorFamily::UnequalGhz, ErrorFamily::UnequalW]),
        ("fig9.csv", [ErrorFamily::CorruptedGhz, ErrorFamily::CorruptedW]),
    ];
    for (name, fams) in sweeps {
        let (a, b) = fams[0].default_range();
        let rows = sweep_rows(settings, &fams, &ns, Some(Grid::new(a, b, args.points)), true)?;
        write(&args.out, name, &sweep_table(&rows))?;
        log::info!("wrote {name}");
    }
    Ok(())
}
