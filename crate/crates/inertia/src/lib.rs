//! Wave text, VCD export and the `inertia` command line.

pub mod cli;
pub mod vcd;
pub mod waves;

pub use vcd::{export_vcd, VcdError};
pub use waves::{emit_waves, parse_waves, WaveDoc, WaveError};
