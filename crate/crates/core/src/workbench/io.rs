use std::fs;
use std::path::Path;

use super::WorkbenchError;
use crate::frames::{Frame, FrameError, FrameFile, Relation};

fn read(path: &Path) -> Result<String, WorkbenchError> {
    fs::read_to_string(path).map_err(|source| WorkbenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses frame JSON without validating the frame conditions.
pub fn parse_frame(text: &str, path: &Path) -> Result<FrameFile, WorkbenchError> {
    serde_json::from_str(text).map_err(|source| WorkbenchError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a frame file as written, without validation.
pub fn load_frame_raw(path: impl AsRef<Path>) -> Result<FrameFile, WorkbenchError> {
    let path = path.as_ref();
    parse_frame(&read(path)?, path)
}

/// Reads and validates a frame; an invalid frame yields its full report.
pub fn load_frame(path: impl AsRef<Path>) -> Result<Frame, WorkbenchError> {
    Ok(load_frame_raw(path)?.to_frame()?)
}

pub fn write_frame_file(file: &FrameFile, path: impl AsRef<Path>) -> Result<(), WorkbenchError> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(file).expect("frame files serialize");
    text.push('\n');
    fs::write(path, text).map_err(|source| WorkbenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn save_frame(frame: &Frame, path: impl AsRef<Path>) -> Result<(), WorkbenchError> {
    write_frame_file(&FrameFile::from_any(frame), path)
}

/// Reflexive-transitive closure of index pairs on `n` points.
pub fn saturate(n: usize, pairs: &[[usize; 2]]) -> Result<Vec<[usize; 2]>, FrameError> {
    if let Some(&pair) = pairs.iter().find(|[i, j]| *i >= n || *j >= n) {
        return Err(FrameError::IndexOutOfRange {
            relation: "R",
            pair,
            points: n,
        });
    }
    let r = Relation::from_pairs(n, pairs.iter().map(|&[i, j]| (i, j))).expect("indices checked");
    Ok(r.saturate().pairs().map(|(i, j)| [i, j]).collect())
}
