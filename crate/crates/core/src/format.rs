//! JSON text formats for states and channels.
//!
//! State file, mixed:
//!
//! ```json
//! {"dim": 2, "matrix": [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]]}
//! ```
//!
//! State file, pure: `{"dim": 2, "vector": [[0.7071, 0.0], [0.7071, 0.0]]}`.
//! Complex numbers are `[re, im]` pairs, matrices row-major.
//!
//! Channel file: `{"dim": 2, "kraus": [<matrix>, ...], "incoherent": true}`,
//! where `incoherent` is optional and re-validated on load.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{is_incoherent_kraus, KrausSet, STRUCTURAL_ZERO};
use crate::error::{CoherenceError, Result};
use crate::matcore::ComplexMatrix;
use crate::states::{DensityMatrix, PureState};

type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDoc {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vector: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelDoc {
    dim: usize,
    kraus: Vec<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    incoherent: Option<bool>,
}

/// Contents of a state file.
#[derive(Debug, Clone, PartialEq)]
pub enum StateFile {
    Mixed(DensityMatrix),
    Pure(PureState),
}

impl StateFile {
    pub fn dim(&self) -> usize {
        match self {
            StateFile::Mixed(r) => r.dim(),
            StateFile::Pure(p) => p.dim(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            StateFile::Mixed(r) => r.clone(),
            StateFile::Pure(p) => p.to_density(),
        }
    }
}

fn matrix_from_json(rows: &JsonMatrix, dim: usize, what: &str) -> Result<ComplexMatrix> {
    if rows.len() != dim {
        return Err(CoherenceError::Parse(format!(
            "{what}: {} rows, expected {dim}",
            rows.len()
        )));
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(CoherenceError::Parse(format!(
                "{what}: row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(CoherenceError::Parse(format!(
                    "{what}: entry ({i}, {j}) is not finite"
                )));
            }
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

fn json_err(e: serde_json::Error) -> CoherenceError {
    CoherenceError::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

pub fn parse_state(text: &str) -> Result<StateFile> {
    let doc: StateDoc = serde_json::from_str(text).map_err(json_err)?;
    if doc.dim == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    match (doc.matrix, doc.vector) {
        (Some(m), None) => Ok(StateFile::Mixed(DensityMatrix::new(matrix_from_json(
            &m, doc.dim, "matrix",
        )?)?)),
        (None, Some(v)) => {
            if v.len() != doc.dim {
                return Err(CoherenceError::Parse(format!(
                    "vector: {} entries, expected {}",
                    v.len(),
                    doc.dim
                )));
            }
            let amps = v.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            Ok(StateFile::Pure(PureState::new(amps)?))
        }
        (Some(_), Some(_)) => Err(CoherenceError::Parse(
            "state has both `matrix` and `vector`".into(),
        )),
        (None, None) => Err(CoherenceError::Parse(
            "state needs one of `matrix` or `vector`".into(),
        )),
    }
}

pub fn state_to_string(state: &StateFile) -> String {
    let doc = match state {
        StateFile::Mixed(r) => StateDoc {
            dim: r.dim(),
            matrix: Some(matrix_to_json(r.matrix())),
            vector: None,
        },
        StateFile::Pure(p) => StateDoc {
            dim: p.dim(),
            matrix: None,
            vector: Some(p.amplitudes().iter().map(|a| [a.re, a.im]).collect()),
        },
    };
    serde_json::to_string(&doc).expect("state documents always serialize")
}

pub fn read_state(path: &Path) -> Result<StateFile> {
    let text = fs::read_to_string(path)?;
    parse_state(&text)
}

pub fn write_state(path: &Path, state: &StateFile) -> Result<()> {
    fs::write(path, state_to_string(state) + "\n")?;
    Ok(())
}

pub fn parse_channel(text: &str) -> Result<KrausSet> {
    let doc: ChannelDoc = serde_json::from_str(text).map_err(json_err)?;
    if doc.dim == 0 {
        return Err(CoherenceError::InvalidDimension(0));
    }
    let ops = doc
        .kraus
        .iter()
        .enumerate()
        .map(|(n, m)| matrix_from_json(m, doc.dim, &format!("kraus[{n}]")))
        .collect::<Result<Vec<_>>>()?;
    let set = KrausSet::new(ops, false)?;
    let structural = is_incoherent_kraus(&set, STRUCTURAL_ZERO);
    match doc.incoherent {
        Some(true) if !structural => Err(CoherenceError::InvalidKraus(
            "file declares `incoherent: true` but the operators are not incoherent".into(),
        )),
        Some(false) if structural => Err(CoherenceError::InvalidKraus(
            "file declares `incoherent: false` but the operators are incoherent".into(),
        )),
        _ => KrausSet::new(set.operators().to_vec(), structural),
    }
}

pub fn channel_to_string(k: &KrausSet) -> String {
    let doc = ChannelDoc {
        dim: k.dim(),
        kraus: k.operators().iter().map(matrix_to_json).collect(),
        incoherent: Some(k.is_flagged_incoherent()),
    };
    serde_json::to_string(&doc).expect("channel documents always serialize")
}

pub fn read_channel(path: &Path) -> Result<KrausSet> {
    parse_channel(&fs::read_to_string(path)?)
}

pub fn write_channel(path: &Path, k: &KrausSet) -> Result<()> {
    fs::write(path, channel_to_string(k) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{random_cptp_channel, random_incoherent_channel};
    use crate::states::{random_density, random_pure, RngSeed};

    #[test]
    fn parses_plus_state() {
        let s =
            parse_state(r#"{"dim": 2, "matrix": [[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]}"#).unwrap();
        assert_eq!(s.dim(), 2);
        let s = parse_state(r#"{"dim": 2, "vector": [[0.6,0],[0,0.8]]}"#).unwrap();
        assert!(matches!(s, StateFile::Pure(_)));
    }

    #[test]
    fn state_round_trip_is_exact() {
        let rho = StateFile::Mixed(random_density(3, 2, RngSeed(4)).unwrap());
        assert_eq!(parse_state(&state_to_string(&rho)).unwrap(), rho);
        let psi = StateFile::Pure(random_pure(4, RngSeed(5)).unwrap());
        assert_eq!(parse_state(&state_to_string(&psi)).unwrap(), psi);
    }

    #[test]
    fn rejects_malformed_states() {
        let bad = [
            r#"{"dim": 2, "matrix": [[[0.5,0],[0.5,0]]]}"#,
            r#"{"dim": 2, "matrix": [[[0.5,0]],[[0.5,0],[0.5,0]]]}"#,
            r#"{"dim": 2}"#,
            r#"{"dim": 2, "vector": [[1,0],[1,0]]}"#,
            r#"{"dim": 2, "matrix": [[[0.7,0],[0,0]],[[0,0],[0.7,0]]]}"#,
            r#"{"dim": 1, "vector": [[1,0]], "extra": 3}"#,
            "not json",
        ];
        for text in bad {
            assert!(parse_state(text).is_err(), "{text}");
        }
        let err = parse_state("{\n\"dim\": 2,\n\"matrix\": oops}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn channel_round_trip_and_flag_check() {
        let k = random_incoherent_channel(3, 2, RngSeed(1)).unwrap();
        assert_eq!(parse_channel(&channel_to_string(&k)).unwrap(), k);
        let g = random_cptp_channel(2, 2, RngSeed(2)).unwrap();
        let text = channel_to_string(&g).replace("\"incoherent\":false", "\"incoherent\":true");
        assert!(matches!(
            parse_channel(&text),
            Err(CoherenceError::InvalidKraus(_))
        ));
    }

    #[test]
    fn channel_flag_is_optional() {
        let text = r#"{"dim": 2, "kraus": [[[[1,0],[0,0]],[[0,0],[0,0]]], [[[0,0],[0,0]],[[0,0],[1,0]]]]}"#;
        assert!(parse_channel(text).unwrap().is_flagged_incoherent());
    }
}
