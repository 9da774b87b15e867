//! Parsing of the model grammar and of angle list files.

use std::fs;
use std::path::Path;

use spingamma::models::Model;
use spingamma::types::Angle;

/// Parses a model name: `quantum`, `bell-sign`, `noise:q=<real>`, or
/// `quantum-mimic`.
pub fn parse_model(spec: &str) -> Result<Model, String> {
    match spec {
        "quantum" => Ok(Model::Quantum),
        "bell-sign" => Ok(Model::BellSign),
        "quantum-mimic" => Ok(Model::QuantumMimic),
        other => {
            if let Some(rest) = other.strip_prefix("noise:") {
                let value = rest.strip_prefix("q=").ok_or_else(|| {
                    format!("noise model takes the form noise:q=<real>, got '{other}'")
                })?;
                let q: f64 = value
                    .parse()
                    .map_err(|_| format!("noise flip probability '{value}' is not a number"))?;
                Model::noise(q).map_err(|e| e.to_string())
            } else {
                Err(format!(
                    "unknown model '{other}' (expected quantum, bell-sign, \
                     noise:q=<real>, or quantum-mimic)"
                ))
            }
        }
    }
}

/// Reads one angle per line from a file. Blank lines and lines starting
/// with `#` are skipped; values are radians, or degrees when `degrees` is
/// set. Parse failures name the offending line.
pub fn parse_angles_file(path: &Path, degrees: bool) -> Result<Vec<Angle>, String> {
    let content = fs::read_to_string(path)
        .map_err(|e| format!("cannot read angle file {}: {e}", path.display()))?;
    let mut angles = Vec::new();
    for (index, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line.parse().map_err(|_| {
            format!(
                "angle file {} line {}: '{line}' is not a number",
                path.display(),
                index + 1
            )
        })?;
        let angle = if degrees {
            Angle::from_degrees(value)
        } else {
            Angle::from_radians(value)
        }
        .map_err(|e| format!("angle file {} line {}: {e}", path.display(), index + 1))?;
        angles.push(angle);
    }
    if angles.is_empty() {
        return Err(format!(
            "angle file {} contains no angle values",
            path.display()
        ));
    }
    Ok(angles)
}
