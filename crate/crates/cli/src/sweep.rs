//! `sweep`: error-family grids.

use std::str::FromStr;

use anyhow::{anyhow, bail, Result};
use cswap_core::circuit::CswapTest;
use cswap_core::oracles::{AnalyticDistribution, ErrorFamily};
use cswap_core::SignatureClass;
use serde::Serialize;

use crate::output::{num, opt_num, write_json, Table};
use crate::{Format, Settings, SweepArgs};

/// `START:STOP:COUNT`, endpoints inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Self {
        Grid { start, stop, count }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let d = (self.count - 1) as f64;
        // Symmetric grids get an exact zero at the midpoint.
        (0..self.count)
            .map(|k| {
                let t = k as f64 / d;
                self.start * (1.0 - t) + self.stop * t
            })
            .collect()
    }
}

/// A float, or `[-][k*]pi[/m]`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim().to_ascii_lowercase();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.as_str()),
    };
    let (num_part, den) = match body.split_once('/') {
        Some((a, b)) => (a, b.parse::<f64>().map_err(|_| anyhow!("bad angle {s:?}"))?),
        None => (body, 1.0),
    };
    let coeff = match num_part.strip_suffix("pi") {
        Some("") => 1.0,
        Some(k) => k
            .trim_end_matches('*')
            .parse::<f64>()
            .map_err(|_| anyhow!("bad angle {s:?}"))?,
        None => bail!("bad angle {s:?}"),
    };
    Ok(sign * coeff * std::f64::consts::PI / den)
}

impl FromStr for Grid {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            bail!("grid must be START:STOP:COUNT, got {s:?}");
        };
        let count: usize = c.trim().parse().map_err(|_| anyhow!("bad grid count {c:?}"))?;
        if count == 0 {
            bail!("grid needs at least one point");
        }
        Ok(Grid::new(parse_angle(a)?, parse_angle(b)?, count))
    }
}

pub const CLASSES: [SignatureClass; 5] = SignatureClass::ALL;

pub const SWEEP_HEADER: [&str; 20] = [
    "family",
    "n",
    "parameter",
    "oracle_all_zero",
    "oracle_even_ones",
    "oracle_exactly_one_one",
    "oracle_exactly_two_ones",
    "oracle_odd_ones",
    "printed_all_zero",
    "printed_even_ones",
    "printed_exactly_one_one",
    "printed_exactly_two_ones",
    "printed_odd_ones",
    "sim_all_zero",
    "sim_even_ones",
    "sim_exactly_one_one",
    "sim_exactly_two_ones",
    "sim_odd_ones",
    "max_abs_discrepancy",
    "max_printed_discrepancy",
];

/// One `(family, n, parameter)` point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: &'static str,
    pub n: usize,
    pub parameter: f64,
    /// Exact closed form, per class in [`CLASSES`] order; `None` where the
    /// form reports nothing.
    pub oracle: [Option<f64>; 5],
    /// The trigonometric form as printed.
    pub printed: [Option<f64>; 5],
    pub simulated: Option<[f64; 5]>,
    /// `max |oracle − simulated|` over the classes the oracle reports.
    pub max_abs_discrepancy: Option<f64>,
    /// `max |printed − oracle|`.
    pub max_printed_discrepancy: f64,
}

fn classes_of(d: &AnalyticDistribution, fam: ErrorFamily) -> [Option<f64>; 5] {
    CLASSES.map(|c| if fam.classes().contains(&c) { d.class(c) } else { None })
}

pub fn sweep_row(fam: ErrorFamily, n: usize, x: f64, simulator: Option<&CswapTest>) -> Result<SweepRow> {
    let oracle = classes_of(&fam.oracle(n, x), fam);
    let printed = classes_of(&fam.trig_form(n, x), fam);
    let simulated = match simulator {
        Some(t) => {
            let (a, b) = fam.pair(n, x).build()?;
            let d = t.run(&a, &b, false)?.control_dist;
            Some(CLASSES.map(|c| d.class_total(c)))
        }
        None => None,
    };
    let max_abs_discrepancy = simulated.map(|s| {
        oracle
            .iter()
            .zip(s)
            .filter_map(|(o, v)| o.map(|o| (o - v).abs()))
            .fold(0.0, f64::max)
    });
    let max_printed_discrepancy = oracle
        .iter()
        .zip(printed)
        .filter_map(|(o, p)| Some((o.as_ref()? - p?).abs()))
        .fold(0.0, f64::max);
    Ok(SweepRow {
        family: fam.name(),
        n,
        parameter: x,
        oracle,
        printed,
        simulated,
        max_abs_discrepancy,
        max_printed_discrepancy,
    })
}

pub fn sweep_rows(
    settings: &Settings,
    families: &[ErrorFamily],
    ns: &[usize],
    grid: Option<Grid>,
    simulate: bool,
) -> Result<Vec<SweepRow>> {
    let mut fams = families.to_vec();
    fams.sort_by_key(|f| ErrorFamily::ALL.iter().position(|g| g == f));
    fams.dedup();
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    for &n in &ns {
        if n < 2 {
            bail!("error families need n >= 2, got {n}");
        }
        if simulate {
            settings.check_capacity(n)?;
        }
    }
    let tester = settings.tester(crate::Fredkin::Native);
    let simulator = simulate.then_some(&tester);
    let mut rows = Vec::new();
    for fam in fams {
        let g = grid.unwrap_or_else(|| {
            let (a, b) = fam.default_range();
            Grid::new(a, b, 101)
        });
        let mut xs = g.points();
        xs.sort_by(f64::total_cmp);
        for &n in &ns {
            for &x in &xs {
                rows.push(sweep_row(fam, n, x, simulator)?);
            }
        }
    }
    Ok(rows)
}

pub fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut t = Table::new(&SWEEP_HEADER);
    for r in rows {
        let mut v = vec![r.family.to_string(), r.n.to_string(), num(r.parameter)];
        v.extend(r.oracle.iter().map(|x| opt_num(*x)));
        v.extend(r.printed.iter().map(|x| opt_num(*x)));
        match r.simulated {
            Some(s) => v.extend(s.iter().map(|x| num(*x))),
            None => v.extend(std::iter::repeat(String::new()).take(5)),
        }
        v.push(opt_num(r.max_abs_discrepancy));
        v.push(num(r.max_printed_discrepancy));
        t.push(v);
    }
    t
}

pub fn cmd_sweep(settings: &Settings, args: &SweepArgs) -> Result<()> {
    let families = if args.family.is_empty() {
        ErrorFamily::ALL.to_vec()
    } else {
        args.family.clone()
    };
    let ns: Vec<usize> = if args.n.is_empty() {
        (2..=args.n_max).collect()
    } else {
        args.n.clone()
    };
    if ns.is_empty() {
        bail!("no qubit counts to sweep");
    }
    let rows = sweep_rows(settings, &families, &ns, args.grid, args.include_simulation)?;
    match args.format {
        Format::Csv => sweep_table(&rows).write(args.out.as_deref()),
        Format::Json => write_json(args.out.as_deref(), &rows),
    }
}
