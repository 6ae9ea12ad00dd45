use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::AttentionError;

pub const FORMAT_VERSION: u32 = 1;
pub const ROW_SUM_TOLERANCE: f64 = 1e-4;

#[derive(Serialize, Deserialize)]
struct Header {
    format_version: u32,
    #[serde(rename = "L")]
    layers: usize,
    #[serde(rename = "N")]
    heads: usize,
    #[serde(rename = "T0")]
    prompt_len: usize,
    #[serde(rename = "T")]
    steps: usize,
    dtype: String,
}

/// Head-averaged attention rows for every (layer, generation step).
///
/// Row `(l, t)` covers positions `1..=prompt_len + t - 1`; `t` is 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct AttentionTrace {
    layers: usize,
    heads: usize,
    prompt_len: usize,
    steps: usize,
    values: Vec<f32>,
}

fn row_len(prompt_len: usize, t: usize) -> usize {
    prompt_len + t - 1
}

// Number of values before row t within one layer.
fn row_offset(prompt_len: usize, t: usize) -> usize {
    let k = t - 1;
    k * prompt_len + k * (k.saturating_sub(1)) / 2
}

impl AttentionTrace {
    fn layer_len(prompt_len: usize, steps: usize) -> usize {
        row_offset(prompt_len, steps + 1)
    }

    /// Builds a trace from a flat layer-major, step-minor buffer and checks row sums.
    pub fn new(
        layers: usize,
        heads: usize,
        prompt_len: usize,
        steps: usize,
        values: Vec<f32>,
    ) -> Result<Self, AttentionError> {
        if layers == 0 || heads == 0 || prompt_len == 0 {
            return Err(AttentionError::Format("L, N and T0 must be positive".into()));
        }
        let expected = layers * Self::layer_len(prompt_len, steps);
        if values.len() != expected {
            return Err(AttentionError::Format(format!(
                "payload holds {} values, header implies {expected}",
                values.len()
            )));
        }
        let trace = AttentionTrace { layers, heads, prompt_len, steps, values };
        trace.check_rows()?;
        Ok(trace)
    }

    /// `rows[l][t-1]` is the attention row of layer `l` at step `t`.
    pub fn from_rows(heads: usize, prompt_len: usize, rows: &[Vec<Vec<f32>>]) -> Result<Self, AttentionError> {
        let steps = rows.first().map_or(0, Vec::len);
        let mut values = Vec::new();
        for (l, layer) in rows.iter().enumerate() {
            if layer.len() != steps {
                return Err(AttentionError::Format(format!("layer {l} has {} steps, expected {steps}", layer.len())));
            }
            for (i, row) in layer.iter().enumerate() {
                if row.len() != row_len(prompt_len, i + 1) {
                    return Err(AttentionError::Format(format!(
                        "row (layer {l}, step {}) has length {}, expected {}",
                        i + 1,
                        row.len(),
                        row_len(prompt_len, i + 1)
                    )));
                }
                values.extend_from_slice(row);
            }
        }
        Self::new(rows.len(), heads, prompt_len, steps, values)
    }

    fn check_rows(&self) -> Result<(), AttentionError> {
        for l in 0..self.layers {
            for t in 1..=self.steps {
                let row = self.row(l, t);
                let sum: f64 = row.iter().map(|&x| f64::from(x)).sum();
                if !(sum - 1.0).abs().le(&ROW_SUM_TOLERANCE) || row.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return Err(AttentionError::Validation { layer: l, step: t, sum });
                }
            }
        }
        Ok(())
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn heads(&self) -> usize {
        self.heads
    }

    pub fn prompt_len(&self) -> usize {
        self.prompt_len
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Attention row of layer `layer` (0-based) at step `t` (1-based).
    pub fn row(&self, layer: usize, t: usize) -> &[f32] {
        assert!(layer < self.layers && (1..=self.steps).contains(&t), "row ({layer}, {t}) out of range");
        let start = layer * Self::layer_len(self.prompt_len, self.steps) + row_offset(self.prompt_len, t);
        &self.values[start..start + row_len(self.prompt_len, t)]
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<(), AttentionError> {
        let header = Header {
            format_version: FORMAT_VERSION,
            layers: self.layers,
            heads: self.heads,
            prompt_len: self.prompt_len,
            steps: self.steps,
            dtype: "f32le".into(),
        };
        serde_json::to_writer(&mut w, &header).map_err(|e| AttentionError::Io(e.to_string()))?;
        w.write_all(b"\n")?;
        let mut bytes = Vec::with_capacity(self.values.len() * 4);
        for v in &self.values {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        w.write_all(&bytes)?;
        Ok(())
    }

    pub fn read_from<R: BufRead>(mut r: R) -> Result<Self, AttentionError> {
        let mut line = String::new();
        r.read_line(&mut line)?;
        let header: Header =
            serde_json::from_str(line.trim_end()).map_err(|e| AttentionError::Format(format!("header: {e}")))?;
        if header.format_version != FORMAT_VERSION {
            return Err(AttentionError::Format(format!("unsupported format_version {}", header.format_version)));
        }
        if header.dtype != "f32le" {
            return Err(AttentionError::Format(format!("unsupported dtype `{}`", header.dtype)));
        }
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        if bytes.len() % 4 != 0 {
            return Err(AttentionError::Format(format!("payload length {} is not a multiple of 4", bytes.len())));
        }
        let values = bytes.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
        Self::new(header.layers, header.heads, header.prompt_len, header.steps, values)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), AttentionError> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AttentionError> {
        Self::read_from(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> AttentionTrace {
        AttentionTrace::from_rows(2, 2, &[vec![vec![0.25, 0.75], vec![0.5, 0.25, 0.25]]]).unwrap()
    }

    #[test]
    fn minimal_trace_round_trips() {
        let t = tiny();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let header_end = buf.iter().position(|&b| b == b'\n').unwrap();
        assert_eq!(
            std::str::from_utf8(&buf[..header_end]).unwrap(),
            r#"{"format_version":1,"L":1,"N":2,"T0":2,"T":2,"dtype":"f32le"}"#
        );
        assert_eq!(buf.len() - header_end - 1, 5 * 4);
        let back = AttentionTrace::read_from(&buf[..]).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.row(0, 2), &[0.5, 0.25, 0.25]);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trace.bin");
        tiny().save(&path).unwrap();
        assert_eq!(AttentionTrace::load(&path).unwrap(), tiny());
    }

    #[test]
    fn truncated_payload_is_a_format_error() {
        let mut buf = Vec::new();
        tiny().write_to(&mut buf).unwrap();
        buf.truncate(buf.len() - 4);
        assert!(matches!(AttentionTrace::read_from(&buf[..]), Err(AttentionError::Format(_))));
        buf.truncate(buf.len() - 1);
        assert!(matches!(AttentionTrace::read_from(&buf[..]), Err(AttentionError::Format(_))));
    }

    #[test]
    fn unnormalized_row_names_its_position() {
        let rows = [vec![vec![0.5, 0.5]], vec![vec![0.5, 0.6]]];
        match AttentionTrace::from_rows(1, 2, &rows) {
            Err(AttentionError::Validation { layer, step, sum }) => {
                assert_eq!((layer, step), (1, 1));
                assert!((sum - 1.1).abs() < 1e-6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_header_is_rejected() {
        let bad = b"{\"format_version\":2,\"L\":1,\"N\":1,\"T0\":1,\"T\":0,\"dtype\":\"f32le\"}\n";
        assert!(matches!(AttentionTrace::read_from(&bad[..]), Err(AttentionError::Format(_))));
        assert!(matches!(AttentionTrace::read_from(&b"not json\n"[..]), Err(AttentionError::Format(_))));
    }

    #[test]
    fn row_offsets_are_contiguous() {
        for t0 in 1..5 {
            let mut acc = 0;
            for t in 1..8 {
                assert_eq!(row_offset(t0, t), acc);
                acc += row_len(t0, t);
            }
        }
    }
}
