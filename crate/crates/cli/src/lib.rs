//! Scenario runner for the cavity-exciton-vibration simulator: TOML scenario
//! files, built-in presets for each figure panel, parallel sweeps and CSV
//! output.

pub mod config;
pub mod presets;
pub mod run;
pub mod table;
