//! Minimal VCD writer for wave documents.
//!
//! Times are scaled by the least common multiple of all denominators so every
//! transition lands on an integer tick. A scalar dump has no way to say "this
//! value held since -inf", so the initial values are dumped one tick before
//! the earliest transition, which may be a negative tick.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use inertia_core::Time;
use num_integer::Integer;

use crate::waves::WaveDoc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VcdError {
    #[error("horizon {horizon} is not after the last transition {last} of `{name}`")]
    Horizon { horizon: Time, last: Time, name: String },
}

/// Printable identifier codes `!`, `"`, ..., `~`, `!!`, ...
fn id_code(mut index: usize) -> String {
    let mut code = String::new();
    loop {
        code.push(char::from(b'!' + (index % 94) as u8));
        index /= 94;
        if index == 0 {
            return code;
        }
        index -= 1;
    }
}

pub fn export_vcd(doc: &WaveDoc, horizon: Time) -> Result<String, VcdError> {
    for (name, s) in doc.entries() {
        if let Some(&last) = s.transitions().last() {
            if last >= horizon {
                return Err(VcdError::Horizon { horizon, last, name: name.clone() });
            }
        }
    }
    let scale = doc.signals().flat_map(|s| s.transitions().iter()).fold(horizon.denom(), |acc, t| acc.lcm(&t.denom()));
    let tick = |t: Time| t.numer() * (scale / t.denom());

    let mut changes: BTreeMap<i64, Vec<(usize, bool)>> = BTreeMap::new();
    for (i, (_, s)) in doc.entries().iter().enumerate() {
        for e in s.edge_iter() {
            changes.entry(tick(e.at)).or_default().push((i, e.kind.target()));
        }
    }
    let end = tick(horizon);
    let start = changes.keys().next().copied().unwrap_or(end) - 1;

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "$comment");
    let _ = writeln!(w, "  1 tick = 1/{scale} time unit; initial values dumped at tick {start}");
    let _ = writeln!(w, "$end");
    let _ = writeln!(w, "$timescale 1 ns $end");
    let _ = writeln!(w, "$scope module waves $end");
    for (i, (name, _)) in doc.entries().iter().enumerate() {
        let _ = writeln!(w, "$var wire 1 {} {name} $end", id_code(i));
    }
    let _ = writeln!(w, "$upscope $end");
    let _ = writeln!(w, "$enddefinitions $end");
    let _ = writeln!(w, "#{start}");
    let _ = writeln!(w, "$dumpvars");
    for (i, (_, s)) in doc.entries().iter().enumerate() {
        let _ = writeln!(w, "{}{}", u8::from(s.initial_value()), id_code(i));
    }
    let _ = writeln!(w, "$end");
    for (t, vals) in &changes {
        let _ = writeln!(w, "#{t}");
        for &(i, v) in vals {
            let _ = writeln!(w, "{}{}", u8::from(v), id_code(i));
        }
    }
    let _ = writeln!(w, "#{end}");
    Ok(out)
}
