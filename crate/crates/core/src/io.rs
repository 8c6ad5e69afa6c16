//! JSON state files: `{"amplitudes": [[re, im], ...8], "label": "..."}`
//! with amplitudes in `abc` order (index `4a + 2b + c`).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Cx;
use crate::state::{state_from_amplitudes, PureState};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateFile {
    pub fn from_state(state: &PureState<f64>, label: Option<&str>) -> Self {
        Self {
            amplitudes: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
            label: label.map(str::to_string),
        }
    }

    pub fn to_state(&self) -> Result<PureState<f64>> {
        let raw: Vec<Cx<f64>> = self.amplitudes.iter().map(|[re, im]| Cx::new(*re, *im)).collect();
        state_from_amplitudes(&raw)
    }
}

pub fn parse_state(text: &str) -> Result<(PureState<f64>, Option<String>)> {
    let file: StateFile = serde_json::from_str(text)?;
    Ok((file.to_state()?, file.label))
}

pub fn read_state(path: &Path) -> Result<(PureState<f64>, Option<String>)> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_state(&text)
}

pub fn state_json(state: &PureState<f64>, label: Option<&str>) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(state, label)).expect("plain data serializes")
}

pub fn write_state(path: &Path, state: &PureState<f64>, label: Option<&str>) -> Result<()> {
    fs::write(path, state_json(state, label) + "\n")?;
    Ok(())
}
