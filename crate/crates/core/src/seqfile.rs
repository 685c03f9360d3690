//! Sequence file format: a small JSON document with the sequence name,
//! optional target gate, and the ordered pulse list in radians.
//!
//! Writing formats every number with 15 significant digits, so a
//! write → read → write cycle is byte-identical.

use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::Deserialize;

use crate::numfmt::sig15;
use crate::pulse::{Pulse, PulseSequence, Target};

/// Errors from reading or writing sequence files.
#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed sequence file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid sequence data: {0}")]
    Invalid(#[from] crate::error::Error),
}

#[derive(Deserialize)]
struct RawTarget {
    theta: f64,
    phi: f64,
}

#[derive(Deserialize)]
struct RawPulse {
    theta: f64,
    phi: f64,
}

#[derive(Deserialize)]
struct RawSequence {
    name: String,
    #[serde(default)]
    target: Option<RawTarget>,
    pulses: Vec<RawPulse>,
}

/// Render a sequence to the canonical document text.
pub fn sequence_to_string(seq: &PulseSequence) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"name\": {},", serde_json::Value::from(seq.name()));
    if let Some(t) = seq.target() {
        let _ = writeln!(
            out,
            "  \"target\": {{ \"theta\": {}, \"phi\": {} }},",
            sig15(t.theta),
            sig15(t.phi)
        );
    }
    out.push_str("  \"pulses\": [\n");
    for (k, p) in seq.pulses().iter().enumerate() {
        let sep = if k + 1 == seq.len() { "" } else { "," };
        let _ = writeln!(
            out,
            "    {{ \"theta\": {}, \"phi\": {} }}{sep}",
            sig15(p.theta()),
            sig15(p.phi())
        );
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_sequence(mut w: impl Write, seq: &PulseSequence) -> Result<(), FileError> {
    w.write_all(sequence_to_string(seq).as_bytes())?;
    Ok(())
}

/// Parse a sequence document, validating every pulse.
pub fn parse_sequence(text: &str) -> Result<PulseSequence, FileError> {
    let raw: RawSequence = serde_json::from_str(text)?;
    let pulses = raw
        .pulses
        .into_iter()
        .map(|p| Pulse::new(p.theta, p.phi))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seq = PulseSequence::new(raw.name, pulses);
    if let Some(t) = raw.target {
        seq = seq.with_target(Target { theta: t.theta, phi: t.phi });
    }
    Ok(seq)
}

pub fn read_sequence(mut r: impl Read) -> Result<PulseSequence, FileError> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    parse_sequence(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::sk1;
    use std::f64::consts::PI;

    #[test]
    fn round_trip_is_byte_identical() {
        let seq = sk1(PI, 0.7).unwrap();
        let first = sequence_to_string(&seq);
        let parsed = parse_sequence(&first).unwrap();
        let second = sequence_to_string(&parsed);
        assert_eq!(first, second);
        assert_eq!(parsed.name(), "sk1");
        assert_eq!(parsed.len(), 3);
    }

    #[test]
    fn target_is_optional() {
        let text = r#"{ "name": "bare", "pulses": [ { "theta": 1.0, "phi": 0.5 } ] }"#;
        let seq = parse_sequence(text).unwrap();
        assert!(seq.target().is_none());
        assert_eq!(seq.len(), 1);
    }

    #[test]
    fn rejects_invalid_pulses() {
        let text = r#"{ "name": "bad", "pulses": [ { "theta": -1.0, "phi": 0.0 } ] }"#;
        assert!(matches!(parse_sequence(text), Err(FileError::Invalid(_))));
        let text = r#"{ "name": "bad", "pulses": [ { "theta": } ] }"#;
        assert!(matches!(parse_sequence(text), Err(FileError::Json(_))));
    }
}
