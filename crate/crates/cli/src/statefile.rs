//! The on-disk state format: a JSON document with a dimension list and a
//! flat amplitude list of `[re, im]` pairs, row-major with the last
//! partite's index fastest, plus an optional label.
//!
//! ```json
//! {
//!   "dims": [2, 2],
//!   "amplitudes": [[0.7071067811865476, 0.0], [0.0, 0.0],
//!                  [0.0, 0.0], [0.7071067811865476, 0.0]],
//!   "label": "bell"
//! }
//! ```
//!
//! Amplitudes are pairs, never `"a+bi"` strings, so parsing is unambiguous
//! across locales. Non-normalized input is accepted and normalized on load.

use serde::{Deserialize, Serialize};

use puresep::{Error, PureState};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Outcome of loading a state file: the normalized state, its label, and
/// whether normalization actually had to rescale anything.
#[derive(Debug)]
pub struct LoadedState {
    pub state: PureState,
    pub label: Option<String>,
    pub was_rescaled: bool,
}

impl StateFile {
    pub fn from_state(state: &PureState, label: Option<String>) -> Self {
        StateFile {
            dims: state.dims().dims().to_vec(),
            amplitudes: state.amps().iter().map(|a| [a.re, a.im]).collect(),
            label,
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: StateFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), String> {
        if self.dims.is_empty() {
            return Err("dims: must list at least one local dimension".into());
        }
        if let Some((i, &bad)) = self.dims.iter().enumerate().find(|(_, &r)| r < 2) {
            return Err(format!("dims[{i}]: local dimension must be at least 2, got {bad}"));
        }
        let total: usize = self.dims.iter().product();
        if self.amplitudes.len() != total {
            return Err(format!(
                "amplitudes: expected {} entries for dims {:?}, got {}",
                total,
                self.dims,
                self.amplitudes.len()
            ));
        }
        Ok(())
    }

    /// Builds the normalized state, reporting whether rescaling occurred.
    /// Amplitudes already normalized within 1e-12 pass through untouched, so
    /// a file written by us parses back to the bit-identical state.
    pub fn load(&self) -> Result<LoadedState, String> {
        let pairs: Vec<(f64, f64)> = self.amplitudes.iter().map(|&[re, im]| (re, im)).collect();
        let raw = PureState::from_pairs(self.dims.clone(), &pairs)
            .map_err(|e| format!("amplitudes: {e}"))?;
        let norm_sq = raw.norm_sqr();
        let was_rescaled = (norm_sq - 1.0).abs() > 1e-12;
        let state = if was_rescaled {
            raw.normalize().map_err(|e| match e {
                Error::ZeroState => "amplitudes: state has zero norm".to_string(),
                other => format!("amplitudes: {other}"),
            })?
        } else {
            raw
        };
        Ok(LoadedState {
            state,
            label: self.label.clone(),
            was_rescaled,
        })
    }

    /// Pretty JSON with one `[re, im]` pair per line, so files stay easy to
    /// read and edit by hand.
    pub fn to_json_pretty(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        let amps: Vec<String> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| {
                format!(
                    "    [{}, {}]",
                    serde_json::to_string(&re).unwrap(),
                    serde_json::to_string(&im).unwrap()
                )
            })
            .collect();
        let mut doc = format!(
            "{{\n  \"dims\": [{}],\n  \"amplitudes\": [\n{}\n  ]",
            dims.join(", "),
            amps.join(",\n")
        );
        if let Some(label) = &self.label {
            doc.push_str(&format!(
                ",\n  \"label\": {}",
                serde_json::to_string(label).unwrap()
            ));
        }
        doc.push_str("\n}");
        doc
    }
}

/// Reads and loads a state file from disk.
pub fn load_path(path: &std::path::Path) -> Result<LoadedState, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file = StateFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.load().map_err(|e| format!("{}: {e}", path.display()))
}
