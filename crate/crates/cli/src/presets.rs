//! Built-in problems RP1 to RP6.

pub const NAMES: [&str; 6] = ["RP1", "RP2", "RP3", "RP4", "RP5", "RP6"];

const TEXTS: [&str; 6] = [
    include_str!("../presets/rp1.tpr"),
    include_str!("../presets/rp2.tpr"),
    include_str!("../presets/rp3.tpr"),
    include_str!("../presets/rp4.tpr"),
    include_str!("../presets/rp5.tpr"),
    include_str!("../presets/rp6.tpr"),
];

/// Fixture text of a preset, matched case-insensitively.
#[must_use]
pub fn text(name: &str) -> Option<&'static str> {
    NAMES.iter().position(|n| n.eq_ignore_ascii_case(name)).map(|i| TEXTS[i])
}
