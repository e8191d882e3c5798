//! The `inertia` command line.
//!
//! Exit status is 0 on success or PASS, 1 when a checked property fails and 2
//! for usage, parse and IO errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use inertia_core::{
    ai_member, dominating_window, fit_ri, ri_member, AIParams, DelayModel, Dominance, EdgeKind, FitError, FitMode,
    Infeasibility, InstantSet, RIParams, Signal, Time, Transducer, Window,
};

use crate::vcd::export_vcd;
use crate::waves::{emit_waves, parse_waves, WaveDoc};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "inertia", version, about = "Binary signals, relative inertia and inertial delays")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print each signal's value at the given times.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        times: Vec<Time>,
    },
    /// Erode every signal by the window `[t - delta, t - delta + mu]`.
    Erode {
        #[arg(long)]
        input: PathBuf,
        /// `delta,mu`
        #[arg(long, value_parser = parse_window)]
        window: Window,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a delay model on every signal.
    Apply {
        #[arg(long)]
        input: PathBuf,
        /// `transport:d`, `selftimed:theta:init`, `dual(M)` or `serial(M,M,...)`
        #[arg(long, value_parser = parse_model)]
        model: DelayModel,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check (input, state) pairs, matched by position, against RI(params).
    CheckRi {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        state: PathBuf,
        /// `mu_r,delta_r,mu_f,delta_f`
        #[arg(long, value_parser = parse_ri)]
        params: RIParams,
    },
    /// Check states against AI(params).
    CheckAi {
        #[arg(long, visible_alias = "input")]
        state: PathBuf,
        /// `d_r,d_f`
        #[arg(long, value_parser = parse_ai)]
        params: AIParams,
    },
    /// Decide whether RI(first) is a subsystem of RI(second).
    Subset {
        /// Given twice: `--params P --params Q`.
        #[arg(long, value_parser = parse_ri, num_args = 1, required = true)]
        params: Vec<RIParams>,
    },
    /// Decide Zeno freedom and show a short-pulse witness otherwise.
    Zeno {
        #[arg(long, value_parser = parse_ri)]
        params: RIParams,
        #[arg(long, default_value = "1")]
        epsilon: Time,
    },
    /// Fit the tightest RI windows explaining (input, state) pairs.
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value = "20")]
        bound: Time,
        /// Require equal rise and fall windows.
        #[arg(long)]
        symmetric: bool,
    },
    /// Replay one of the built-in counterexamples.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
    /// Write the signals as a VCD dump.
    ExportVcd {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to one unit after the last transition.
        #[arg(long, allow_hyphen_values = true)]
        horizon: Option<Time>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    SerialCounterexample,
    UnionCounterexample,
}

fn parse_list(s: &str, n: usize) -> Result<Vec<Time>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated times, got {}", parts.len()));
    }
    parts.iter().map(|p| p.parse::<Time>().map_err(|e| format!("`{}`: {e}", p.trim()))).collect()
}

pub fn parse_window(s: &str) -> Result<Window, String> {
    let v = parse_list(s, 2)?;
    Window::new(v[0], v[1]).map_err(|e| e.to_string())
}

pub fn parse_ri(s: &str) -> Result<RIParams, String> {
    let v = parse_list(s, 4)?;
    RIParams::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

pub fn parse_ai(s: &str) -> Result<AIParams, String> {
    let v = parse_list(s, 2)?;
    AIParams::new(v[0], v[1]).map_err(|e| e.to_string())
}

/// Splits on commas outside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>, String> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(|| format!("unbalanced `)` in `{s}`"))?,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced `(` in `{s}`"));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

pub fn parse_model(s: &str) -> Result<DelayModel, String> {
    let s = s.trim();
    let time = |t: &str| t.parse::<Time>().map_err(|e| format!("`{t}`: {e}"));
    if let Some(inner) = s.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
        return Ok(DelayModel::dual(parse_model(inner)?));
    }
    if let Some(inner) = s.strip_prefix("serial(").and_then(|r| r.strip_suffix(')')) {
        let chain = split_top_level(inner)?.into_iter().map(parse_model).collect::<Result<_, _>>()?;
        return DelayModel::serial(chain).map_err(|e| e.to_string());
    }
    if let Some(d) = s.strip_prefix("transport:") {
        return DelayModel::transport(time(d)?).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix("selftimed:") {
        let (theta, init) = rest.split_once(':').ok_or_else(|| format!("`{s}`: expected selftimed:theta:init"))?;
        let init = match init {
            "0" => false,
            "1" => true,
            other => return Err(format!("initial state must be 0 or 1, got `{other}`")),
        };
        return DelayModel::self_timed(time(theta)?, init).map_err(|e| e.to_string());
    }
    Err(format!("unknown model `{s}`"))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Wave { path: PathBuf, source: crate::waves::WaveError },
    #[error("{0}")]
    Usage(String),
    #[error("demo expectation failed: {0}")]
    Demo(String),
}

fn read_doc(path: &Path) -> Result<WaveDoc, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_waves(&text).map_err(|source| CliError::Wave { path: path.into(), source })
}

fn write_text(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn paired<'a>(
    inputs: &'a WaveDoc,
    states: &'a WaveDoc,
) -> Result<Vec<(&'a str, &'a Signal, &'a str, &'a Signal)>, CliError> {
    if inputs.len() != states.len() {
        return Err(CliError::Usage(format!(
            "{} input signals but {} state signals; pairs are matched by position",
            inputs.len(),
            states.len()
        )));
    }
    Ok(inputs
        .entries()
        .iter()
        .zip(states.entries())
        .map(|((un, u), (xn, x))| (un.as_str(), u, xn.as_str(), x))
        .collect())
}

fn map_doc(doc: &WaveDoc, f: impl Fn(&Signal) -> Signal) -> WaveDoc {
    let mut out = WaveDoc::new();
    for (name, s) in doc.entries() {
        out.push(name.clone(), f(s)).expect("names come from a valid doc");
    }
    out
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status. Reports go to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                return EXIT_USAGE;
            }
            let _ = stdout.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                CliError::Demo(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let mut report = String::new();
    let mut code = EXIT_OK;
    let r = &mut report;
    use std::fmt::Write as _;
    match command {
        Command::Eval { input, times } => {
            let doc = read_doc(&input)?;
            for (name, s) in doc.entries() {
                for &t in &times {
                    let _ = writeln!(r, "{name}({t}) = {}", u8::from(s.eval(t)));
                }
            }
        }
        Command::Erode { input, window, out } => {
            let doc = read_doc(&input)?;
            let text = emit_waves(&map_doc(&doc, |s| s.erode(&window)));
            write_text(out.as_deref(), &text, stdout)?;
        }
        Command::Apply { input, model, out } => {
            let doc = read_doc(&input)?;
            let text = emit_waves(&map_doc(&doc, |s| model.apply(s)));
            write_text(out.as_deref(), &text, stdout)?;
        }
        Command::CheckRi { input, state, params } => {
            let (inputs, states) = (read_doc(&input)?, read_doc(&state)?);
            for (un, u, xn, x) in paired(&inputs, &states)? {
                let m = ri_member(u, x, &params);
                let verdict = if m.holds() { "PASS" } else { "FAIL" };
                let _ = writeln!(r, "{verdict} {xn} in RI({params}) of {un}");
                for v in m.violations() {
                    let _ = writeln!(r, "  violation: {v}");
                }
                if !m.holds() {
                    code = EXIT_FAIL;
                }
            }
        }
        Command::CheckAi { state, params } => {
            let states = read_doc(&state)?;
            for (xn, x) in states.entries() {
                let m = ai_member(x, &params);
                let verdict = if m.holds() { "PASS" } else { "FAIL" };
                let _ = writeln!(r, "{verdict} {xn} in AI({params})");
                for v in m.violations() {
                    let _ = writeln!(r, "  violation: {v}");
                }
                if !m.holds() {
                    code = EXIT_FAIL;
                }
            }
        }
        Command::Subset { params } => {
            let [p, q] = params[..] else {
                return Err(CliError::Usage(format!("subset takes --params twice, got {}", params.len())));
            };
            let holds = p.is_subset_of(&q);
            let _ = writeln!(r, "RI({p}) subset of RI({q}): {holds}");
            match p.separating_pair(&q) {
                None => {
                    let _ = writeln!(r, "every window of the first contains the matching window of the second");
                }
                Some((u, x)) => {
                    let _ = writeln!(r, "separating input: {u}");
                    let _ = writeln!(r, "separating state: {x}");
                }
            }
        }
        Command::Zeno { params, epsilon } => {
            let witness = params.zeno_witness(epsilon).map_err(|e| CliError::Usage(e.to_string()))?;
            let _ = writeln!(r, "RI({params}) zeno-free: {}", params.is_zeno_free());
            match witness {
                None => {
                    let a = params.to_absolute().expect("zeno-free parameters map to absolute inertia");
                    let _ = writeln!(r, "members satisfy AI({a})");
                }
                Some(w) => {
                    let _ = writeln!(r, "witness input: {}", w.input);
                    let _ = writeln!(r, "witness state: {}", w.state);
                    let _ = writeln!(r, "pulse width: {}", w.pulse_width);
                }
            }
        }
        Command::Fit { input, state, bound, symmetric } => {
            let (inputs, states) = (read_doc(&input)?, read_doc(&state)?);
            let corpus: Vec<(Signal, Signal)> =
                paired(&inputs, &states)?.into_iter().map(|(_, u, _, x)| (u.clone(), x.clone())).collect();
            let mode = if symmetric { FitMode::Symmetric } else { FitMode::Independent };
            match fit_ri(&corpus, bound, mode) {
                Ok(frontier) => {
                    let _ = writeln!(r, "frontier (mu_r,delta_r,mu_f,delta_f):");
                    for p in frontier {
                        let _ = writeln!(r, "  {p}");
                    }
                }
                Err(FitError::Unfittable(why)) => {
                    let _ = writeln!(r, "unfittable: {why}");
                    code = EXIT_FAIL;
                }
                Err(FitError::Invalid(e)) => return Err(CliError::Usage(e.to_string())),
            }
        }
        Command::Demo { which } => {
            match which {
                Demo::SerialCounterexample => serial_demo(r)?,
                Demo::UnionCounterexample => union_demo(r)?,
            };
        }
        Command::ExportVcd { input, horizon, out } => {
            let doc = read_doc(&input)?;
            let horizon = horizon.unwrap_or_else(|| {
                doc.signals().filter_map(|s| s.transitions().last().copied()).max().unwrap_or(Time::ZERO) + Time::ONE
            });
            let text = export_vcd(&doc, horizon).map_err(|e| CliError::Usage(e.to_string()))?;
            write_text(out.as_deref(), &text, stdout)?;
        }
    }
    write_text(None, &report, stdout)?;
    Ok(code)
}

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Demo(what()))
    }
}

fn named(pairs: &[(&str, &Signal)]) -> WaveDoc {
    let mut doc = WaveDoc::new();
    for (n, s) in pairs {
        doc.push(*n, (*s).clone()).expect("demo names are distinct identifiers");
    }
    doc
}

fn edge_list(s: &Signal, kind: EdgeKind) -> Vec<Time> {
    s.edge_iter().filter(|e| e.kind == kind).map(|e| e.at).collect()
}

fn join(ts: &[Time]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

fn serial_demo(r: &mut String) -> Result<(), CliError> {
    use std::fmt::Write as _;
    let t = Time::integer;
    let u = Signal::from_intervals(false, &[(t(0), Some(t(1))), (t(2), Some(t(3))), (t(4), None)]).expect("valid");
    let first = DelayModel::self_timed(t(2), false).expect("theta > 0");
    let second = DelayModel::self_timed(t(4), false).expect("theta > 0");
    let x = first.apply(&u);
    let y = second.apply(&x);
    let x_expected = Signal::from_intervals(false, &[(t(0), Some(t(3))), (t(5), None)]).expect("valid");
    let y_expected = Signal::from_intervals(false, &[(t(0), Some(t(4))), (t(8), None)]).expect("valid");
    expect(x == x_expected, || format!("x = {x}, expected {x_expected}"))?;
    expect(y == y_expected, || format!("y = {y}, expected {y_expected}"))?;

    let _ = writeln!(r, "# x = {first} applied to u, y = {second} applied to x");
    r.push_str(&emit_waves(&named(&[("u", &u), ("x", &x), ("y", &y)])));

    let point = RIParams::symmetric(Time::ZERO, Time::ZERO).expect("valid");
    let m = ri_member(&u, &y, &point);
    expect(!m.holds(), || "y unexpectedly belongs to RI(0,0,0,0) of u".into())?;
    let _ = writeln!(r, "y in RI({point}) of u: FAIL");
    for v in m.violations() {
        let _ = writeln!(r, "  violation: {v}");
    }

    let rises = edge_list(&y, EdgeKind::Rising);
    let falls = edge_list(&y, EdgeKind::Falling);
    let _ = writeln!(r, "rising edges of y: {}", join(&rises));
    let _ = writeln!(r, "falling edges of y: {}", join(&falls));
    let d =
        dominating_window(&u, &InstantSet::points(rises), &InstantSet::points(falls), t(20)).expect("positive bound");
    let Dominance::Infeasible(why) = d else {
        return Err(CliError::Demo(format!("found a dominating window {d:?}")));
    };
    let Infeasibility::Conflict { floor, .. } = &why else {
        return Err(CliError::Demo(format!("unexpected diagnosis: {why}")));
    };
    let culprit = floor.sources.first().filter(|s| s.kind == EdgeKind::Falling && s.span.contains(t(4)));
    expect(why.forces_point_window() && culprit.is_some(), || format!("unexpected diagnosis: {why}"))?;
    let _ = writeln!(r, "binding constraints: {why}");
    let culprit = culprit.expect("checked above");
    let _ = writeln!(r, "no dominating RI window (forced δ=μ=0; {} edge at {} violates)", culprit.kind, culprit.span);
    Ok(())
}

fn union_demo(r: &mut String) -> Result<(), CliError> {
    use std::fmt::Write as _;
    let t = Time::integer;
    let u = Signal::from_intervals(false, &[(t(0), Some(t(2)))]).expect("valid");
    let far = Window::new(t(3), t(1)).expect("valid");
    let near = Window::new(t(1), t(1)).expect("valid");
    let rise = u.erode(&far).or(&u.erode(&near));
    let fall = (!&u).erode(&far).or(&(!&u).erode(&near));
    let rise_expected = Signal::from_intervals(false, &[(t(1), Some(t(2))), (t(3), Some(t(4)))]).expect("valid");
    let fall_expected = Signal::from_intervals(true, &[(t(2), Some(t(3)))]).expect("valid");
    expect(rise == rise_expected, || format!("rise_ok = {rise}, expected {rise_expected}"))?;
    expect(fall == fall_expected, || format!("fall_ok = {fall}, expected {fall_expected}"))?;

    let _ = writeln!(r, "# rise_ok and fall_ok: where the union of RI(1,3,1,3) and RI(1,1,1,1) allows edges");
    r.push_str(&emit_waves(&named(&[("u", &u), ("rise_ok", &rise), ("fall_ok", &fall)])));
    let d = dominating_window(&u, &InstantSet::from_signal(&rise), &InstantSet::from_signal(&fall), t(20))
        .expect("positive bound");
    let Dominance::Infeasible(why) = d else {
        return Err(CliError::Demo(format!("found a dominating window {d:?}")));
    };
    let Infeasibility::Conflict { cap, floor } = &why else {
        return Err(CliError::Demo(format!("unexpected diagnosis: {why}")));
    };
    expect(cap.value == t(1) && floor.value == t(2) && !floor.strict, || format!("unexpected diagnosis: {why}"))?;
    let _ = writeln!(r, "binding constraints: {why}");
    let _ = writeln!(r, "no dominating RI window (needs δ-μ >= {} and δ <= {})", floor.value, cap.value);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_grammar() {
        let m = parse_model("serial(transport:1/2, dual(selftimed:2:0), serial(transport:0))").unwrap();
        assert_eq!(m.to_string(), "serial(transport:1/2,dual(selftimed:2:0),serial(transport:0))");
        assert!(parse_model("transport:-1").is_err());
        assert!(parse_model("selftimed:0:0").is_err());
        assert!(parse_model("selftimed:1:2").is_err());
        assert!(parse_model("serial()").is_err());
        assert!(parse_model("dual(transport:1").is_err());
        assert!(parse_model("inertial:3").is_err());
    }

    #[test]
    fn parameter_lists() {
        assert_eq!(parse_ri("0,1/2,1,2").unwrap().to_string(), "0,1/2,1,2");
        assert!(parse_ri("2,1,0,0").is_err());
        assert!(parse_ri("0,0,0").is_err());
        assert_eq!(parse_window("3,1").unwrap(), Window::new(Time::integer(3), Time::integer(1)).unwrap());
        assert!(parse_ai("-1,0").is_err());
    }

    #[test]
    fn demos_pass_their_own_checks() {
        let mut s = String::new();
        serial_demo(&mut s).unwrap();
        assert!(s.ends_with("no dominating RI window (forced δ=μ=0; falling edge at 4 violates)\n"));
        let mut s = String::new();
        union_demo(&mut s).unwrap();
        assert!(s.ends_with("no dominating RI window (needs δ-μ >= 2 and δ <= 1)\n"));
    }
}
