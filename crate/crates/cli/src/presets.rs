//! Scenario files shipped with the binary, one per figure panel.

use crate::config::{ConfigError, ScenarioConfig};

const PRESETS: &[(&str, &str)] = &[
    ("fig2a", include_str!("../presets/fig2a.toml")),
    ("fig2b", include_str!("../presets/fig2b.toml")),
    ("fig2c", include_str!("../presets/fig2c.toml")),
    ("fig3a", include_str!("../presets/fig3a.toml")),
    ("fig3a_caption", include_str!("../presets/fig3a_caption.toml")),
    ("fig3b", include_str!("../presets/fig3b.toml")),
    ("fig3b_caption", include_str!("../presets/fig3b_caption.toml")),
    ("fig3c", include_str!("../presets/fig3c.toml")),
    ("fig3c_caption", include_str!("../presets/fig3c_caption.toml")),
    ("fig4a", include_str!("../presets/fig4a.toml")),
    ("fig4b", include_str!("../presets/fig4b.toml")),
];

pub fn names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

/// Raw TOML of a preset.
pub fn source(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<ScenarioConfig, ConfigError> {
    let text = source(name).ok_or_else(|| ConfigError::UnknownPreset(name.to_string()))?;
    ScenarioConfig::from_toml(text, &format!("preset {name}"))
}
