//! Invariant tables, the equivalence-search registry and the combined verdict.

use serde_json::{json, Value};

use super::classical::{
    bowen_franks, dimension_module, finite_field_fixed_count, spectrum_away_from_zero, zeta_poly,
};
use crate::algebra::ZMatrix;
use crate::error::{Error, Result};
use crate::shift::{flow_search, sse_search, MoveCertificate, SearchBudget};
use crate::weighted::{count_fixed_points, registered_monoids, WeightedModel};

/// A named, canonically rendered invariant. Equal renderings mean equal values.
pub trait Invariant: Send + Sync {
    fn name(&self) -> String;
    fn compute(&self, m: &ZMatrix) -> Result<String>;
}

struct Zeta;
struct Spectrum;
struct Fitting;
struct BowenFranks;
struct FiniteField {
    primes: Vec<u64>,
}
struct FixedCount {
    model: WeightedModel,
}

impl Invariant for Zeta {
    fn name(&self) -> String {
        "zeta".into()
    }
    fn compute(&self, m: &ZMatrix) -> Result<String> {
        Ok(zeta_poly(m)?.to_string())
    }
}

impl Invariant for Spectrum {
    fn name(&self) -> String {
        "spectrum".into()
    }
    fn compute(&self, m: &ZMatrix) -> Result<String> {
        Ok(spectrum_away_from_zero(m)?.render_descending())
    }
}

impl Invariant for Fitting {
    fn name(&self) -> String {
        "fitting".into()
    }
    fn compute(&self, m: &ZMatrix) -> Result<String> {
        Ok(dimension_module(m)?.fitting_invariant.render_ascending())
    }
}

impl Invariant for BowenFranks {
    fn name(&self) -> String {
        "bowen_franks".into()
    }
    fn compute(&self, m: &ZMatrix) -> Result<String> {
        Ok(bowen_franks(m)?.to_string())
    }
}

impl Invariant for FiniteField {
    fn name(&self) -> String {
        "finite_field".into()
    }
    fn compute(&self, m: &ZMatrix) -> Result<String> {
        let mut parts = Vec::new();
        for &p in &self.primes {
            let counts = (0..p).map(|l| finite_field_fixed_count(m, p, l).map(|c| c.to_string())).collect::<Result<Vec<_>>>()?;
            parts.push(format!("p={p}: [{}]", counts.join(", ")));
        }
        Ok(parts.join("; "))
    }
}

impl Invariant for FixedCount {
    fn name(&self) -> String {
        format!("fixed_count:{}", self.model.monoid().name())
    }
    fn compute(&self, m: &ZMatrix) -> Result<String> {
        Ok(count_fixed_points(m, &self.model)?.to_string())
    }
}

/// Invariants of flow equivalence: Bowen–Franks and solution counts over the registered
/// monoids with `h` the identity.
pub fn flow_invariants() -> Vec<Box<dyn Invariant>> {
    let mut out: Vec<Box<dyn Invariant>> = vec![Box::new(BowenFranks)];
    out.extend(
        registered_monoids().into_iter().map(|x| Box::new(FixedCount { model: WeightedModel::with_identity(x) }) as Box<dyn Invariant>),
    );
    out
}

/// Invariants of strong shift equivalence, the finer ones first.
pub fn sse_invariants() -> Vec<Box<dyn Invariant>> {
    let mut out: Vec<Box<dyn Invariant>> = vec![
        Box::new(Zeta),
        Box::new(Spectrum),
        Box::new(Fitting),
        Box::new(FiniteField { primes: vec![2, 3, 5, 7] }),
    ];
    out.extend(flow_invariants());
    out
}

/// A bounded equivalence search selectable by name.
pub trait EquivalenceSearch: Send + Sync {
    fn name(&self) -> &'static str;
    fn invariants(&self) -> Vec<Box<dyn Invariant>>;
    fn search(&self, m: &ZMatrix, n: &ZMatrix, budget: &SearchBudget) -> Result<Option<MoveCertificate>>;
}

struct Sse;
struct Flow;

impl EquivalenceSearch for Sse {
    fn name(&self) -> &'static str {
        "sse"
    }
    fn invariants(&self) -> Vec<Box<dyn Invariant>> {
        sse_invariants()
    }
    fn search(&self, m: &ZMatrix, n: &ZMatrix, budget: &SearchBudget) -> Result<Option<MoveCertificate>> {
        sse_search(m, n, budget)
    }
}

impl EquivalenceSearch for Flow {
    fn name(&self) -> &'static str {
        "flow"
    }
    fn invariants(&self) -> Vec<Box<dyn Invariant>> {
        flow_invariants()
    }
    fn search(&self, m: &ZMatrix, n: &ZMatrix, budget: &SearchBudget) -> Result<Option<MoveCertificate>> {
        flow_search(m, n, budget)
    }
}

pub fn equivalence_searches() -> Vec<Box<dyn EquivalenceSearch>> {
    vec![Box::new(Sse), Box::new(Flow)]
}

pub fn equivalence_search(name: &str) -> Result<Box<dyn EquivalenceSearch>> {
    equivalence_searches()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::Malformed(format!("unknown relation '{name}' (expected sse or flow)")))
}

/// One row of an invariant table. A value that could not be computed (say, an enumeration
/// over budget) is kept as `Err` and never used to separate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRow {
    pub name: String,
    pub on_m: std::result::Result<String, String>,
    pub on_n: std::result::Result<String, String>,
}

impl InvariantRow {
    fn differs(&self) -> bool {
        matches!((&self.on_m, &self.on_n), (Ok(a), Ok(b)) if a != b)
    }

    fn to_json(&self) -> Value {
        let side = |v: &std::result::Result<String, String>| match v {
            Ok(s) => json!(s),
            Err(e) => json!({ "unavailable": e }),
        };
        json!({ "name": self.name, "m": side(&self.on_m), "n": side(&self.on_n) })
    }
}

#[derive(Clone, Debug)]
pub enum EquivVerdict {
    Equivalent { certificate: MoveCertificate, table: Vec<InvariantRow> },
    Distinguished { invariant: String, on_m: String, on_n: String, table: Vec<InvariantRow> },
    /// Nothing separates the matrices and the search ran out of budget. Not a negative answer.
    Unknown { budget: SearchBudget, table: Vec<InvariantRow> },
}

impl EquivVerdict {
    pub fn outcome(&self) -> &'static str {
        match self {
            EquivVerdict::Equivalent { .. } => "equivalent",
            EquivVerdict::Distinguished { .. } => "distinguished",
            EquivVerdict::Unknown { .. } => "unknown",
        }
    }

    pub fn table(&self) -> &[InvariantRow] {
        match self {
            EquivVerdict::Equivalent { table, .. }
            | EquivVerdict::Distinguished { table, .. }
            | EquivVerdict::Unknown { table, .. } => table,
        }
    }

    pub fn certificate(&self) -> Option<&MoveCertificate> {
        match self {
            EquivVerdict::Equivalent { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn to_json(&self, relation: &str) -> Value {
        let mut v = json!({
            "schema": 1,
            "relation": relation,
            "outcome": self.outcome(),
            "invariants": self.table().iter().map(InvariantRow::to_json).collect::<Vec<_>>(),
        });
        match self {
            EquivVerdict::Equivalent { certificate, .. } => v["certificate"] = certificate.to_json(),
            EquivVerdict::Distinguished { invariant, on_m, on_n, .. } => {
                v["separated_by"] = json!({ "name": invariant, "m": on_m, "n": on_n })
            }
            EquivVerdict::Unknown { budget, .. } => v["budget"] = budget_json(budget),
        }
        v
    }
}

pub fn budget_json(b: &SearchBudget) -> Value {
    json!({
        "max_inner_dim": b.max_inner_dim,
        "max_entry": b.max_entry,
        "max_size": b.max_size,
        "max_steps": b.max_steps,
    })
}

pub fn invariant_table(invariants: &[Box<dyn Invariant>], m: &ZMatrix, n: &ZMatrix) -> Vec<InvariantRow> {
    let show = |r: Result<String>| r.map_err(|e| e.to_string());
    invariants
        .iter()
        .map(|inv| InvariantRow { name: inv.name(), on_m: show(inv.compute(m)), on_n: show(inv.compute(n)) })
        .collect()
}

/// Separates by invariants first, then searches. Exhaustion is `Unknown`, never a negative.
pub fn compare(m: &ZMatrix, n: &ZMatrix, relation: &str, budget: &SearchBudget) -> Result<EquivVerdict> {
    m.require_square()?;
    n.require_square()?;
    let (m, n) = (m.to_natural()?, n.to_natural()?);
    let search = equivalence_search(relation)?;
    let table = invariant_table(&search.invariants(), &m, &n);
    if let Some(row) = table.iter().find(|r| r.differs()) {
        let (a, b) = (row.on_m.clone().unwrap_or_default(), row.on_n.clone().unwrap_or_default());
        return Ok(EquivVerdict::Distinguished { invariant: row.name.clone(), on_m: a, on_n: b, table });
    }
    Ok(match search.search(&m, &n, budget)? {
        Some(certificate) => EquivVerdict::Equivalent { certificate, table },
        None => EquivVerdict::Unknown { budget: *budget, table },
    })
}
