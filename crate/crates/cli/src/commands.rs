use crate::output::{Cell, Record};
use ptcircle_core::secular::{factor_value, secular_t, SecularBranch};
use ptcircle_core::spectrum::{scan_roots, SpectrumRequest};
use ptcircle_core::transition::{broken_pair_at, critical_sequence, MAX_CRITICAL_COUNT};
use ptcircle_core::verify::{self, Hooks, Level};
use ptcircle_core::{table1, Coupling};
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("pair {pair} is still real at Z = {z} (critical coupling {z_crit:.9}); use `spectrum --Z {z}`")]
    StillReal { pair: usize, z: f64, z_crit: f64 },
    #[error(transparent)]
    Numeric(#[from] ptcircle_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::StillReal { .. } | CliError::Numeric(_) => 2,
        }
    }
}

type Outcome = Result<(Record, u8), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn coupling(z: f64) -> Result<Coupling, CliError> {
    Coupling::new(z).map_err(|_| usage(format!("--Z must be a finite non-negative number, got {z}")))
}

pub fn spectrum(z: f64, smax: f64) -> Outcome {
    let c = coupling(z)?;
    if !(smax >= PI) || !smax.is_finite() {
        return Err(usage(format!("--smax must be at least pi, got {smax}")));
    }
    let req = SpectrumRequest::new(c, smax)?;
    let mut rec = Record::new("spectrum", &["n", "branch", "s", "t", "E", "residual"]);
    rec.input("Z", z).input("smax", smax);
    for p in scan_roots(&req)? {
        rec.push(vec![
            p.n.into(),
            p.branch.label().into(),
            p.params.s.into(),
            p.params.t.into(),
            p.energy.into(),
            p.residual.into(),
        ]);
    }
    Ok((rec, 0))
}

pub fn critical(count: usize) -> Outcome {
    if count == 0 || count > MAX_CRITICAL_COUNT {
        return Err(usage(format!(
            "--count must be within 1..={MAX_CRITICAL_COUNT}, got {count}"
        )));
    }
    let mut rec = Record::new("critical", &["nu", "branch", "Z_crit", "s_merge", "t_merge", "E_merge"]);
    rec.input("count", count);
    for c in critical_sequence(count)? {
        rec.push(vec![
            c.nu.into(),
            c.branch.label().into(),
            c.z_crit.into(),
            c.s_merge.into(),
            c.t_merge.into(),
            c.e_merge.into(),
        ]);
    }
    Ok((rec, 0))
}

pub fn broken(z: f64, pair: usize) -> Outcome {
    coupling(z)?;
    if pair >= MAX_CRITICAL_COUNT {
        return Err(usage(format!("--pair must be below {MAX_CRITICAL_COUNT}, got {pair}")));
    }
    let folds = critical_sequence(pair + 1)?;
    let cp = folds[pair];
    if z <= cp.z_crit {
        return Err(CliError::StillReal {
            pair,
            z,
            z_crit: cp.z_crit,
        });
    }
    let s = broken_pair_at(&cp, z)?;
    let mut rec = Record::new("broken", &["Z", "alpha", "beta", "K", "ReE", "eps"]);
    rec.input("Z", z).input("pair", pair);
    rec.push(vec![
        z.into(),
        s.params.alpha.into(),
        s.params.beta.into(),
        s.params.k.into(),
        s.energy.re_e.into(),
        s.energy.eps.into(),
    ]);
    Ok((rec, 0))
}

pub fn table1() -> Outcome {
    let folds = critical_sequence(2)?;
    let mut rec = Record::new(
        "table1",
        &[
            "Z",
            "pair",
            "kind",
            "alpha_printed",
            "alpha",
            "d_alpha",
            "beta_printed",
            "beta",
            "d_beta",
            "ReE_printed",
            "ReE",
            "rel_d_ReE",
            "eps",
            "flag",
        ],
    );
    for c in table1::recompute(&folds)? {
        let kind = match c.printed.kind {
            table1::RowKind::Golden => "golden",
            table1::RowKind::Fold => "fold",
            table1::RowKind::NearFold => "near-fold",
        };
        rec.push(vec![
            c.printed.z.into(),
            c.printed.pair.into(),
            kind.into(),
            c.printed.alpha.into(),
            c.alpha.into(),
            c.d_alpha().into(),
            c.printed.beta.into(),
            c.beta.into(),
            c.d_beta().into(),
            c.printed.re_e.into(),
            c.re_e.into(),
            c.rel_re_e().into(),
            c.eps.into(),
            c.flag.label().into(),
        ]);
    }
    Ok((rec, 0))
}

const MAX_GRID: usize = 4096;

fn parse_count(s: &str) -> Result<usize, CliError> {
    match s.trim().parse::<usize>() {
        Ok(n) if (1..=MAX_GRID).contains(&n) => Ok(n),
        _ => Err(usage(format!(
            "grid sizes must be integers in 1..={MAX_GRID}, got `{s}`"
        ))),
    }
}

fn parse_grid(s: &str) -> Result<(usize, Option<usize>), CliError> {
    match s.split_once(['x', 'X']) {
        Some((a, b)) => Ok((parse_count(a)?, Some(parse_count(b)?))),
        None => Ok((parse_count(s)?, None)),
    }
}

fn parse_range(s: &str, name: &str) -> Result<(f64, f64), CliError> {
    let bad = || usage(format!("{name} must be `lo,hi` with lo < hi, got `{s}`"));
    let (a, b) = s.split_once([',', ':']).ok_or_else(bad)?;
    let lo: f64 = a.trim().parse().map_err(|_| bad())?;
    let hi: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        vec![0.5 * (lo + hi)]
    } else {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }
}

/// Figure data. Fig 1 is `secular_t(t, Z)` along t; fig 2 is the sign of
/// `secular_t` on a `(t, Z)` grid in long format (t varies fastest), so the
/// zero contour separates the `+1` and `-1` regions.
pub fn fig(which: u8, grid: Option<&str>, t_range: Option<&str>, z_range: Option<&str>, z: f64) -> Outcome {
    let (tlo, thi) = t_range.map_or(Ok((0.05, 3.0)), |s| parse_range(s, "--t-range"))?;
    if tlo <= 0.0 {
        return Err(usage("--t-range must lie in t > 0"));
    }
    match which {
        1 => {
            let c = coupling(z)?;
            let (n, m) = grid.map_or(Ok((1000, None)), parse_grid)?;
            if m.is_some_and(|m| m != 1) {
                return Err(usage("fig 1 takes a single grid size"));
            }
            let mut rec = Record::new("fig", &["t", "secular_t"]);
            rec.input("which", 1)
                .input("grid", n)
                .input("t_range", vec![tlo, thi])
                .input("Z", z);
            for t in axis(tlo, thi, n) {
                rec.push(vec![t.into(), secular_t(t, c)?.into()]);
            }
            Ok((rec, 0))
        }
        2 => {
            let (zlo, zhi) = z_range.map_or(Ok((0.0, 20.0)), |s| parse_range(s, "--Z-range"))?;
            if zlo < 0.0 {
                return Err(usage("--Z-range must lie in Z >= 0"));
            }
            let (n, m) = grid.map_or(Ok((200, Some(200))), parse_grid)?;
            let m = m.unwrap_or(n);
            let mut rec = Record::new("fig", &["t", "Z", "sign"]);
            rec.input("which", 2)
                .input("grid", vec![n, m])
                .input("t_range", vec![tlo, thi])
                .input("Z_range", vec![zlo, zhi]);
            let ts = axis(tlo, thi, n);
            for zv in axis(zlo, zhi, m) {
                let c = coupling(zv)?;
                for &t in &ts {
                    let v = secular_t(t, c)?;
                    let sign = if v > 0.0 {
                        1
                    } else if v < 0.0 {
                        -1
                    } else {
                        0
                    };
                    rec.push(vec![t.into(), zv.into(), Cell::Int(sign)]);
                }
            }
            Ok((rec, 0))
        }
        _ => Err(usage(format!("--which must be 1 or 2, got {which}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VerifyLevel {
    Quick,
    Full,
}

fn sign_bug(t: f64, s: f64, _branch: SecularBranch) -> f64 {
    factor_value(t, s, SecularBranch::FactorPlus)
}

pub fn verify(level: VerifyLevel, inject_sign_bug: bool) -> Outcome {
    let mut hooks = Hooks::default();
    if inject_sign_bug {
        hooks.factor = sign_bug;
    }
    let lvl = match level {
        VerifyLevel::Quick => Level::Quick,
        VerifyLevel::Full => Level::Full,
    };
    let results = verify::run(lvl, &hooks);
    let mut rec = Record::new("verify", &["check", "status", "detail"]);
    rec.input("level", if lvl == Level::Quick { "quick" } else { "full" });
    if inject_sign_bug {
        rec.input("inject_sign_bug", true);
    }
    for r in &results {
        let status = match (r.counted, r.passed) {
            (false, _) => "INFO",
            (true, true) => "PASS",
            (true, false) => "FAIL",
        };
        rec.push(vec![r.name.into(), status.into(), r.detail.clone().into()]);
    }
    let code = if verify::all_passed(&results) { 0 } else { 1 };
    Ok((rec, code))
}
