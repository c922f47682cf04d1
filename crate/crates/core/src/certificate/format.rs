//! Line-delimited JSON encoding of certificates.
//!
//! One record per line, each an object whose first field is `"type"`:
//!
//! ```text
//! {"type":"header","version":1,"tool":"…","dim":3,"points":["A","B"],"stmt_sha256":"…","strategy":"worklist","elapsed_ms":3,"streamed":false}
//! {"type":"lemma","index":0,"goal":["A","B"],"bound":[2,2]}
//! {"type":"step","id":1,"kind":"hypothesis","rule":null,"X":["A","B"],"Y":[],"T":["A","B"],"old":[1,2],"new":[2,2],"deps":[]}
//! {"type":"verdict","set":["A","B"],"relation":"eq","value":2,"status":"proved"}
//! ```
//!
//! A lemma record precedes its steps. A contradiction lemma has goal `"⊥"`
//! and bound `null`.

use std::collections::HashMap;
use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::{
    CertStep, CertStepKind, Certificate, CertificateHeader, Goal, Lemma, VerdictRecord,
};
use crate::engine::ConclusionStatus;
use crate::interval::RankInterval;
use crate::statement::Relation;
use crate::trace::RuleId;
use crate::universe::PointSet;

const BOTTOM: &str = "⊥";

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Record {
    Header {
        version: u32,
        tool: String,
        dim: u32,
        points: Vec<String>,
        stmt_sha256: String,
        strategy: String,
        elapsed_ms: u64,
        streamed: bool,
    },
    Lemma {
        index: u32,
        goal: GoalRepr,
        bound: Option<[i32; 2]>,
    },
    Step {
        id: u32,
        kind: String,
        rule: Option<String>,
        #[serde(rename = "X")]
        x: Vec<String>,
        #[serde(rename = "Y")]
        y: Vec<String>,
        #[serde(rename = "T")]
        t: Vec<String>,
        old: [i32; 2],
        new: [i32; 2],
        deps: Vec<u32>,
    },
    Verdict {
        set: Vec<String>,
        relation: String,
        value: u32,
        status: String,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GoalRepr {
    Set(Vec<String>),
    Bottom(String),
}

fn names(points: &[String], set: PointSet) -> Vec<String> {
    set.iter().map(|i| points[i].clone()).collect()
}

fn pair(iv: RankInterval) -> [i32; 2] {
    [iv.lo as i32, iv.hi as i32]
}

/// Writes `cert` one record per line.
pub fn write_certificate<W: Write>(cert: &Certificate, mut out: W) -> io::Result<()> {
    let h = &cert.header;
    let mut emit = |r: &Record| -> io::Result<()> {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")
    };
    emit(&Record::Header {
        version: h.version,
        tool: h.tool.clone(),
        dim: h.dim,
        points: h.points.clone(),
        stmt_sha256: h.stmt_sha256.clone(),
        strategy: h.strategy.clone(),
        elapsed_ms: h.elapsed_ms,
        streamed: h.streamed,
    })?;
    let pts = &h.points;
    for (index, lemma) in cert.lemmas.iter().enumerate() {
        let (goal, bound) = match lemma.goal {
            Goal::Bound { set, interval } => (GoalRepr::Set(names(pts, set)), Some(pair(interval))),
            Goal::Bottom => (GoalRepr::Bottom(BOTTOM.to_string()), None),
        };
        emit(&Record::Lemma {
            index: index as u32,
            goal,
            bound,
        })?;
        for s in &lemma.steps {
            let (kind, rule) = match s.kind {
                CertStepKind::Hypothesis => ("hypothesis", None),
                CertStepKind::Rule(r) => ("rule", Some(r.name().to_string())),
            };
            emit(&Record::Step {
                id: s.id,
                kind: kind.to_string(),
                rule,
                x: names(pts, s.x),
                y: names(pts, s.y),
                t: names(pts, s.target),
                old: pair(s.old),
                new: pair(s.new),
                deps: s.deps.clone(),
            })?;
        }
    }
    for v in &cert.verdicts {
        emit(&Record::Verdict {
            set: names(pts, v.set),
            relation: v.relation.keyword().to_string(),
            value: v.value,
            status: v.status.keyword().to_string(),
        })?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateParseError {
    /// 1-based line number; 0 when the input ended early.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for CertificateParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "certificate: {}", self.message)
        } else {
            write!(f, "certificate line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for CertificateParseError {}

struct Reader {
    line: usize,
    index: HashMap<String, usize>,
}

impl Reader {
    fn err(&self, message: impl Into<String>) -> CertificateParseError {
        CertificateParseError {
            line: self.line,
            message: message.into(),
        }
    }

    fn set(&self, names: &[String]) -> Result<PointSet, CertificateParseError> {
        let mut set = PointSet::EMPTY;
        for n in names {
            let i = *self
                .index
                .get(n)
                .ok_or_else(|| self.err(format!("unknown point `{n}`")))?;
            if set.contains(i) {
                return Err(self.err(format!("point `{n}` listed twice")));
            }
            set = set.with(i);
        }
        Ok(set)
    }

    fn interval(&self, [lo, hi]: [i32; 2]) -> Result<RankInterval, CertificateParseError> {
        let conv = |v: i32| i8::try_from(v).map_err(|_| self.err(format!("bound {v} out of range")));
        Ok(RankInterval::new(conv(lo)?, conv(hi)?))
    }
}

/// Parses the text written by [`write_certificate`].
pub fn parse_certificate(text: &str) -> Result<Certificate, CertificateParseError> {
    let mut reader = Reader {
        line: 0,
        index: HashMap::new(),
    };
    let mut header = None;
    let mut lemmas: Vec<Lemma> = Vec::new();
    let mut verdicts = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        reader.line = n + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let record: Record =
            serde_json::from_str(raw).map_err(|e| reader.err(e.to_string()))?;
        match record {
            Record::Header {
                version,
                tool,
                dim,
                points,
                stmt_sha256,
                strategy,
                elapsed_ms,
                streamed,
            } => {
                if header.is_some() {
                    return Err(reader.err("second header"));
                }
                for (i, p) in points.iter().enumerate() {
                    if reader.index.insert(p.clone(), i).is_some() {
                        return Err(reader.err(format!("point `{p}` declared twice")));
                    }
                }
                if points.len() > 32 {
                    return Err(reader.err("too many points"));
                }
                header = Some(CertificateHeader {
                    version,
                    tool,
                    dim,
                    points,
                    stmt_sha256,
                    strategy,
                    elapsed_ms,
                    streamed,
                });
            }
            _ if header.is_none() => return Err(reader.err("expected the header first")),
            Record::Lemma { index, goal, bound } => {
                if !verdicts.is_empty() {
                    return Err(reader.err("lemma after verdicts"));
                }
                if index as usize != lemmas.len() {
                    return Err(reader.err(format!("lemma index {index} out of sequence")));
                }
                let goal = match (goal, bound) {
                    (GoalRepr::Set(names), Some(b)) => Goal::Bound {
                        set: reader.set(&names)?,
                        interval: reader.interval(b)?,
                    },
                    (GoalRepr::Bottom(s), None) if s == BOTTOM => Goal::Bottom,
                    _ => return Err(reader.err("malformed lemma goal")),
                };
                lemmas.push(Lemma {
                    goal,
                    steps: Vec::new(),
                });
            }
            Record::Step {
                id,
                kind,
                rule,
                x,
                y,
                t,
                old,
                new,
                deps,
            } => {
                if !verdicts.is_empty() {
                    return Err(reader.err("step after verdicts"));
                }
                let kind = match (kind.as_str(), rule) {
                    ("hypothesis", None) => CertStepKind::Hypothesis,
                    ("rule", Some(r)) => CertStepKind::Rule(
                        r.parse::<RuleId>().map_err(|e| reader.err(e.to_string()))?,
                    ),
                    _ => return Err(reader.err(format!("bad step kind `{kind}`"))),
                };
                let step = CertStep {
                    id,
                    kind,
                    x: reader.set(&x)?,
                    y: reader.set(&y)?,
                    target: reader.set(&t)?,
                    old: reader.interval(old)?,
                    new: reader.interval(new)?,
                    deps,
                };
                lemmas
                    .last_mut()
                    .ok_or_else(|| reader.err("step outside a lemma"))?
                    .steps
                    .push(step);
            }
            Record::Verdict {
                set,
                relation,
                value,
                status,
            } => {
                let relation = Relation::from_keyword(&relation)
                    .ok_or_else(|| reader.err(format!("bad relation `{relation}`")))?;
                let status = ConclusionStatus::from_keyword(&status)
                    .ok_or_else(|| reader.err(format!("bad status `{status}`")))?;
                verdicts.push(VerdictRecord {
                    set: reader.set(&set)?,
                    relation,
                    value,
                    status,
                });
            }
        }
    }
    let header = header.ok_or(CertificateParseError {
        line: 0,
        message: "missing header".into(),
    })?;
    Ok(Certificate {
        header,
        lemmas,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::extract_certificate;
    use crate::engine::{saturate, Limits, Strategy};
    use crate::parser::parse_statement;
    use crate::state::SaturationState;

    fn cert(text: &str) -> Certificate {
        let stmt = parse_statement(text, 3).unwrap();
        let mut state = SaturationState::initialize(&stmt);
        saturate(&mut state, Strategy::Worklist, Limits::default()).unwrap();
        extract_certificate(&state, &stmt)
    }

    #[test]
    fn round_trip() {
        let c = cert("points A B C M hypotheses A B C : 3 A B M : 2 conclusion A B C M : 3");
        let text = c.to_text();
        assert_eq!(parse_certificate(&text).unwrap(), c);
    }

    #[test]
    fn records_start_with_type() {
        let c = cert("points A B C M hypotheses A B C : 3 A B M : 2 conclusion A B C M : 3");
        let text = c.to_text();
        assert!(text.lines().all(|l| l.starts_with("{\"type\":")));
        let first = text.lines().next().unwrap();
        assert!(first.starts_with("{\"type\":\"header\",\"version\":1,"));
        let step = text.lines().find(|l| l.contains("\"step\"")).unwrap();
        let keys: Vec<&str> = ["\"id\"", "\"kind\"", "\"rule\"", "\"X\"", "\"Y\"", "\"T\"", "\"old\"", "\"new\"", "\"deps\""]
            .into_iter()
            .collect();
        let pos: Vec<usize> = keys.iter().map(|k| step.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{step}");
    }

    #[test]
    fn bottom_goal_round_trips() {
        let c = cert("points A B C hypotheses A B C : 3 A B : 1 conclusion A : 1");
        let text = c.to_text();
        assert!(text.contains("\"goal\":\"⊥\",\"bound\":null"));
        assert_eq!(parse_certificate(&text).unwrap(), c);
    }

    #[test]
    fn rejects_unknown_points_and_missing_header() {
        let c = cert("points A B hypotheses A B : 2 conclusion A B : 2");
        let text: String = c
            .to_text()
            .lines()
            .enumerate()
            .map(|(i, l)| if i == 0 { l.to_string() } else { l.replace("\"B\"", "\"Z\"") })
            .collect::<Vec<_>>()
            .join("\n");
        assert!(parse_certificate(&text).unwrap_err().message.contains("unknown point"));
        let body: String = c.to_text().lines().skip(1).collect::<Vec<_>>().join("\n");
        assert!(parse_certificate(&body).is_err());
    }
}
