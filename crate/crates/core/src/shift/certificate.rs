//! Replayable certificates and their JSON form.

use serde_json::{json, Map, Value};

use super::steps::{apply_step, Step};
use crate::algebra::{IntPoly, Permutation, PolyMatrix, RingKind};
use crate::error::{Error, Result};
use crate::format::{parse_matrix_rows, render_matrix_rows};
use crate::prop::Direction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    /// Factor steps (and permutations written as factor steps) only.
    Sse,
    /// Factor, row expansion/contraction and permutation.
    Flow,
    /// Row/column additions on `I − M`, stabilization and permutation.
    Positive,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::Sse => "sse",
            CertificateKind::Flow => "flow",
            CertificateKind::Positive => "positive",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sse" => Ok(CertificateKind::Sse),
            "flow" => Ok(CertificateKind::Flow),
            "positive" => Ok(CertificateKind::Positive),
            other => Err(Error::Malformed(format!("unknown certificate kind '{other}'"))),
        }
    }

    pub fn allows(self, step: &Step) -> bool {
        matches!(
            (self, step),
            (CertificateKind::Sse, Step::Factor { .. })
                | (CertificateKind::Flow, Step::Factor { .. } | Step::ExpandRow { .. } | Step::ContractRow { .. } | Step::Permute { .. })
                | (
                    CertificateKind::Positive,
                    Step::RowAdd { .. } | Step::ColAdd { .. } | Step::Stabilize { .. } | Step::Permute { .. }
                )
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveCertificate {
    pub kind: CertificateKind,
    pub ring: RingKind,
    pub source: PolyMatrix,
    pub target: PolyMatrix,
    pub steps: Vec<Step>,
}

/// Outcome of a replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    /// Index of the failing step; `Some(steps.len())` means the endpoint did not match.
    pub failed_step: Option<usize>,
    pub message: String,
}

impl Verification {
    fn pass(steps: usize) -> Self {
        Verification { ok: true, failed_step: None, message: format!("replayed {steps} step(s)") }
    }

    fn fail(at: usize, message: String) -> Self {
        Verification { ok: false, failed_step: Some(at), message }
    }
}

/// Replays every step exactly; never panics or errors.
pub fn verify_certificate(cert: &MoveCertificate) -> Verification {
    let mut cur = cert.source.clone();
    for (i, step) in cert.steps.iter().enumerate() {
        if let Step::Factor { r, s, .. } = step {
            if let Some(bad) = r.entries().iter().chain(s.entries()).find(|e| !cert.ring.admits(e)) {
                return Verification::fail(i, format!("step {i}: witness entry {} is not in {}", bad.render_compact(), cert.ring.name()));
            }
        }
        if !cert.kind.allows(step) {
            return Verification::fail(i, format!("step {i}: {} is not allowed in a {} certificate", step.type_name(), cert.kind.name()));
        }
        match apply_step(&cur, step) {
            Ok(next) => {
                if let Some(bad) = next.entries().iter().find(|e| !cert.ring.admits(e)) {
                    return Verification::fail(i, format!("step {i}: entry {} leaves the ring {}", bad.render_compact(), cert.ring.name()));
                }
                cur = next;
            }
            Err(e) => return Verification::fail(i, format!("step {i} ({}): {e}", step.type_name())),
        }
    }
    if cur != cert.target {
        return Verification::fail(cert.steps.len(), "replay does not end at the target".into());
    }
    Verification::pass(cert.steps.len())
}

impl MoveCertificate {
    pub fn empty(kind: CertificateKind, ring: RingKind, m: PolyMatrix) -> Self {
        MoveCertificate { kind, ring, source: m.clone(), target: m, steps: Vec::new() }
    }

    pub fn verify(&self) -> Verification {
        verify_certificate(self)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "kind": self.kind.name(),
            "ring": self.ring.name(),
            "source": render_matrix_rows(&self.source),
            "target": render_matrix_rows(&self.target),
            "steps": self.steps.iter().map(step_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Malformed("certificate must be a JSON object".into()))?;
        match obj.get("schema").and_then(Value::as_u64) {
            Some(1) => {}
            other => return Err(Error::Malformed(format!("unsupported schema {other:?}"))),
        }
        let kind = CertificateKind::parse(str_field(obj, "kind")?)?;
        let ring: RingKind = str_field(obj, "ring")?.parse()?;
        let source = matrix_field(obj, "source", ring)?;
        let target = matrix_field(obj, "target", ring)?;
        let steps = obj
            .get("steps")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("missing 'steps' array".into()))?
            .iter()
            .enumerate()
            .map(|(i, s)| step_from_json(s, ring).map_err(|e| Error::Malformed(format!("step {i}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(MoveCertificate { kind, ring, source, target, steps })
    }
}

fn str_field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str> {
    obj.get(key).and_then(Value::as_str).ok_or_else(|| Error::Malformed(format!("missing string field '{key}'")))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::Malformed(format!("missing integer field '{key}'")))
}

fn matrix_field(obj: &Map<String, Value>, key: &str, ring: RingKind) -> Result<PolyMatrix> {
    let rows = obj
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed(format!("missing matrix field '{key}'")))?;
    let rows: Vec<&str> = rows
        .iter()
        .map(|r| r.as_str().ok_or_else(|| Error::Malformed(format!("'{key}' rows must be strings"))))
        .collect::<Result<_>>()?;
    parse_matrix_rows(&rows, ring)
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
    }
}

fn direction_field(obj: &Map<String, Value>) -> Result<Direction> {
    match str_field(obj, "direction")? {
        "forward" => Ok(Direction::Forward),
        "backward" => Ok(Direction::Backward),
        other => Err(Error::Malformed(format!("unknown direction '{other}'"))),
    }
}

fn poly_field(obj: &Map<String, Value>, key: &str) -> Result<IntPoly> {
    str_field(obj, key)?.parse()
}

fn step_to_json(step: &Step) -> Value {
    let ty = step.type_name();
    match step {
        Step::Factor { direction, r, s } => json!({
            "type": ty,
            "direction": direction_name(*direction),
            "r": render_matrix_rows(r),
            "s": render_matrix_rows(s),
        }),
        Step::ExpandRow { row } | Step::ContractRow { row } => json!({ "type": ty, "row": row }),
        Step::Permute { perm } => json!({ "type": ty, "perm": perm.images() }),
        Step::RowAdd { from, to, multiplier, direction } | Step::ColAdd { from, to, multiplier, direction } => json!({
            "type": ty,
            "from": from,
            "to": to,
            "multiplier": multiplier.render_compact(),
            "direction": direction_name(*direction),
        }),
        Step::Stabilize { direction } => json!({ "type": ty, "direction": direction_name(*direction) }),
    }
}

// Factor witnesses are read over the widest ring so the replay, not the parser, reports a
// witness outside the certificate's ring. Ones that fit take the ring's sign discipline.
fn witness_field(obj: &Map<String, Value>, key: &str, ring: RingKind) -> Result<PolyMatrix> {
    let m = matrix_field(obj, key, RingKind::ZT)?;
    Ok(if ring.nonnegative() { m.to_natural().unwrap_or(m) } else { m })
}

fn step_from_json(v: &Value, ring: RingKind) -> Result<Step> {
    let obj = v.as_object().ok_or_else(|| Error::Malformed("step must be an object".into()))?;
    Ok(match str_field(obj, "type")? {
        "factor" => Step::Factor {
            direction: direction_field(obj)?,
            r: witness_field(obj, "r", ring)?,
            s: witness_field(obj, "s", ring)?,
        },
        "expand_row" => Step::ExpandRow { row: usize_field(obj, "row")? },
        "contract_row" => Step::ContractRow { row: usize_field(obj, "row")? },
        "permute" => {
            let images = obj
                .get("perm")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Malformed("missing 'perm'".into()))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as usize).ok_or_else(|| Error::Malformed("bad 'perm' entry".into())))
                .collect::<Result<Vec<_>>>()?;
            Step::Permute { perm: Permutation::new(images)? }
        }
        "row_add" => Step::RowAdd {
            from: usize_field(obj, "from")?,
            to: usize_field(obj, "to")?,
            multiplier: poly_field(obj, "multiplier")?,
            direction: direction_field(obj)?,
        },
        "col_add" => Step::ColAdd {
            from: usize_field(obj, "from")?,
            to: usize_field(obj, "to")?,
            multiplier: poly_field(obj, "multiplier")?,
            direction: direction_field(obj)?,
        },
        "stabilize" => Step::Stabilize { direction: direction_field(obj)? },
        other => return Err(Error::Malformed(format!("unknown step type '{other}'"))),
    })
}
