//! Command surface: configuration, the five commands, serialization and plots.
//!
//! Exit codes: 0 clean, 2 usage or precondition, 3 numeric failure,
//! 4 self-test failure, 10 jump detected.

mod cli;
mod commands;
mod config;
mod plot;
mod table;

pub use cli::{run, Cli, Command};
pub use commands::{
    build_integrand, cmd_integrate, cmd_plot, cmd_sweep, cmd_xicheck, cmd_zeros, parse_complex,
    parse_injection, Exit, XiCheckLine, XICHECK_EPS,
};
pub use config::{decimal_digits, ConfigOverrides, OutputFormat, RunConfig, DEFAULT_TOL, PRECISION_ENV};
pub use plot::render_svg;
pub use table::{format_float, read_csv, rows_to_result, write_csv, write_json, SweepRow, CSV_HEADER};
