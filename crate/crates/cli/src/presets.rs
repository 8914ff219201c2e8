//! Built-in configurations.

use crate::config::ScenarioConfig;

pub const NAMES: [&str; 5] = ["disk-in-disk", "polygon-inner", "radius10", "ellipse", "rotation"];

pub fn preset(name: &str) -> Option<ScenarioConfig> {
    let text = match name {
        "disk-in-disk" => {
            r#"{"bodies": {"K": {"kind": "disk", "center": [0, 0], "radius": 3},
                           "D": {"kind": "disk", "center": [0, 0], "radius": 1}},
                "outer": "K", "inner": ["D"], "probe": "chord", "grid_size": 256}"#
        }
        "polygon-inner" => {
            r#"{"bodies": {"K": {"kind": "disk", "center": [0, 0], "radius": 3},
                           "D": {"kind": "polygon", "vertices": [[-1, -1], [1, -1], [1, 1], [-1, 1]]}},
                "outer": "K", "inner": ["D"], "probe": "chord", "grid_size": 256}"#
        }
        "radius10" => {
            r#"{"bodies": {"K": {"kind": "disk", "center": [1.5, 0], "radius": 10},
                           "D1": {"kind": "disk", "center": [0, 0], "radius": 1},
                           "D2": {"kind": "disk", "center": [3, 0], "radius": 1}},
                "outer": "K", "inner": ["D1", "D2"], "i": 1, "mode": "sum", "grid_size": 1024}"#
        }
        "ellipse" => {
            r#"{"bodies": {"K": {"kind": "ellipse", "center": [0, 0], "semi_axes": [4, 2]},
                           "L": {"kind": "ellipse", "center": [0.05, 0], "semi_axes": [4, 2]},
                           "D1": {"kind": "disk", "center": [-1.5, 0], "radius": 1},
                           "D2": {"kind": "disk", "center": [1.5, 0], "radius": 1}},
                "outer": "K", "compare": "L", "inner": ["D1", "D2"], "i": 1, "mode": "sum", "grid_size": 1024}"#
        }
        "rotation" => r#"{"bodies": {}, "rotation": {"r": 1, "steps": 8}}"#,
        _ => return None,
    };
    Some(ScenarioConfig::parse(text).expect("preset parses"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        for n in NAMES {
            assert!(preset(n).is_some(), "{n}");
        }
        assert!(preset("nope").is_none());
    }
}
