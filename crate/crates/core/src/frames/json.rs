use serde::{Deserialize, Serialize};

use super::{
    validate_int_frame, validate_ms4_frame, Frame, FrameError, FrameKind, IntFrame, KripkeFrame,
    Ms4Frame, Relation, ValidationReport, MAX_POINTS,
};

/// On-disk frame: `{"kind", "points", "R", "Q" | "E"}` with index pairs.
/// Relations are taken exactly as written; nothing is closed off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub kind: FrameKind,
    pub points: Vec<String>,
    #[serde(rename = "R")]
    pub r: Vec<[usize; 2]>,
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<[usize; 2]>>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<[usize; 2]>>,
}

fn pairs_of(r: &Relation) -> Vec<[usize; 2]> {
    r.pairs().map(|(i, j)| [i, j]).collect()
}

fn relation_of(name: &'static str, n: usize, pairs: &[[usize; 2]]) -> Result<Relation, FrameError> {
    if let Some(&pair) = pairs.iter().find(|[i, j]| *i >= n || *j >= n) {
        return Err(FrameError::IndexOutOfRange {
            relation: name,
            pair,
            points: n,
        });
    }
    Ok(Relation::from_pairs(n, pairs.iter().map(|&[i, j]| (i, j))).expect("indices checked"))
}

impl FrameFile {
    pub fn from_frame<F: KripkeFrame>(frame: &F) -> FrameFile {
        let second = Some(pairs_of(frame.quantifier()));
        let (q, e) = match F::KIND {
            FrameKind::Int => (second, None),
            FrameKind::Ms4 => (None, second),
        };
        FrameFile {
            kind: F::KIND,
            points: frame.names().to_vec(),
            r: pairs_of(frame.order()),
            q,
            e,
        }
    }

    pub fn from_any(frame: &Frame) -> FrameFile {
        match frame {
            Frame::Int(f) => FrameFile::from_frame(f),
            Frame::Ms4(f) => FrameFile::from_frame(f),
        }
    }

    fn second_name(&self) -> &'static str {
        match self.kind {
            FrameKind::Int => "Q",
            FrameKind::Ms4 => "E",
        }
    }

    /// The two relations, checked only for index range.
    pub fn relations(&self) -> Result<(Relation, Relation), FrameError> {
        let n = self.points.len();
        if n > MAX_POINTS {
            return Err(FrameError::TooLarge(n));
        }
        let (wanted, unwanted) = match self.kind {
            FrameKind::Int => (&self.q, &self.e),
            FrameKind::Ms4 => (&self.e, &self.q),
        };
        if unwanted.is_some() {
            return Err(FrameError::UnexpectedRelation {
                kind: self.kind,
                relation: if self.kind == FrameKind::Int { "E" } else { "Q" },
            });
        }
        let Some(second) = wanted else {
            return Err(FrameError::MissingRelation {
                kind: self.kind,
                relation: self.second_name(),
            });
        };
        Ok((
            relation_of("R", n, &self.r)?,
            relation_of(self.second_name(), n, second)?,
        ))
    }

    pub fn validate(&self) -> Result<ValidationReport, FrameError> {
        let (r, s) = self.relations()?;
        Ok(match self.kind {
            FrameKind::Int => validate_int_frame(&self.points, &r, &s),
            FrameKind::Ms4 => validate_ms4_frame(&self.points, &r, &s),
        })
    }

    pub fn to_frame(&self) -> Result<Frame, FrameError> {
        let (r, s) = self.relations()?;
        let names = self.points.clone();
        Ok(match self.kind {
            FrameKind::Int => Frame::Int(IntFrame::new(names, r, s)?),
            FrameKind::Ms4 => Frame::Ms4(Ms4Frame::new(names, r, s)?),
        })
    }

    /// Replaces both relations by their reflexive-transitive closures.
    pub fn saturated(&self) -> Result<FrameFile, FrameError> {
        let (r, s) = self.relations()?;
        let second = Some(pairs_of(&s.saturate()));
        let (q, e) = match self.kind {
            FrameKind::Int => (second, None),
            FrameKind::Ms4 => (None, second),
        };
        Ok(FrameFile {
            kind: self.kind,
            points: self.points.clone(),
            r: pairs_of(&r.saturate()),
            q,
            e,
        })
    }
}
