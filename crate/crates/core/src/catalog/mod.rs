//! Four-dimensional solvable Lie algebras, their lcs structures with
//! nonzero Lee form, and the reductive lcs algebras `su2 + R` and `sl2 + R`,
//! stored as parametric templates in a versioned JSON file.

mod sampling;
mod verify;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{LieAlgebra, Subspace};
use crate::forms::KForm;
use crate::notation::{Bindings, Constraint, FormTemplate, NotationError, SalamonTemplate};

pub use sampling::{random_admissible, sample_grid, Sampler, SAMPLES_PER_PARAMETER};
pub use verify::{
    verify_all, verify_all_with, verify_catalog, verify_family_sample, verify_row_sample,
    CheckOutcome, RowSummary, SampleRecord, VerifyReport,
};

const BUILTIN: &str = include_str!("catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownFamily(String),
    #[error("{family}: parameter `{param}` is not bound")]
    MissingParameter { family: String, param: String },
    #[error("{family}: `{param}` is not a parameter of this entry")]
    UnexpectedParameter { family: String, param: String },
    #[error("{family}: parameters violate `{constraint}`")]
    Inadmissible { family: String, constraint: String },
    #[error("{family}: {source}")]
    Notation {
        family: String,
        source: NotationError,
    },
    #[error("malformed catalog: {0}")]
    Malformed(String),
}

/// Serialized form of one parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRecord {
    pub symbol: String,
    pub range: String,
    #[serde(default)]
    pub constraints: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterRecord {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub when: Vec<String>,
    pub span: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub eta: String,
    pub u: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub omega: String,
    pub theta: String,
}

/// Lagrangian column: a spanning set, `"none"` for a proven absence, or
/// missing when the source does not state it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LagrangianRecord {
    Span(Vec<String>),
    Keyword(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub when: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<ParamRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
    pub omega: String,
    pub theta: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactRecord>,
    pub first_kind: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lagrangian: Option<LagrangianRecord>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub kernel_contact: bool,
    /// Equivalent normal form quoted elsewhere; informational only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alias: Option<PairRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub name: String,
    pub display: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reductive: bool,
    pub structure: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<ParamRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
    pub center: Vec<CenterRecord>,
    pub solvable: bool,
    pub completely_solvable: bool,
    pub nilpotent: bool,
    pub structures: Vec<RowRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub version: u32,
    pub families: Vec<FamilyRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub symbol: String,
    pub range: String,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterCase {
    pub when: Vec<Constraint>,
    pub span: Vec<FormTemplate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LagrangianColumn {
    Ideal(Vec<FormTemplate>),
    /// No Lagrangian ideal inside `ker θ`.
    Absent,
    Unstated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactColumn {
    pub eta: FormTemplate,
    pub u: FormTemplate,
}

/// One lcs row of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsEntry {
    pub family: String,
    pub index: usize,
    pub label: String,
    /// Conditions on the family parameters under which the row applies.
    pub when: Vec<Constraint>,
    pub params: Vec<Param>,
    pub constraints: Vec<Constraint>,
    pub omega: FormTemplate,
    pub theta: FormTemplate,
    pub exact: Option<ExactColumn>,
    pub first_kind: bool,
    pub lagrangian: LagrangianColumn,
    pub kernel_contact: bool,
    pub alias: Option<(FormTemplate, FormTemplate)>,
    pub record: RowRecord,
}

/// A family of Lie algebras with its lcs rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub display: String,
    pub reductive: bool,
    pub params: Vec<Param>,
    pub constraints: Vec<Constraint>,
    pub structure: SalamonTemplate,
    pub center: Vec<CenterCase>,
    pub solvable: bool,
    pub completely_solvable: bool,
    pub nilpotent: bool,
    pub lcs: Vec<LcsEntry>,
    pub record: FamilyRecord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub version: u32,
    pub entries: Vec<CatalogEntry>,
}

fn notation(family: &str) -> impl Fn(NotationError) -> CatalogError + '_ {
    move |source| CatalogError::Notation {
        family: family.to_string(),
        source,
    }
}

fn constraints(family: &str, texts: &[String]) -> Result<Vec<Constraint>, CatalogError> {
    texts
        .iter()
        .map(|t| Constraint::parse(t).map_err(notation(family)))
        .collect()
}

fn params(family: &str, records: &[ParamRecord]) -> Result<Vec<Param>, CatalogError> {
    records
        .iter()
        .map(|p| {
            Ok(Param {
                symbol: p.symbol.clone(),
                range: p.range.clone(),
                constraints: constraints(family, &p.constraints)?,
            })
        })
        .collect()
}

fn forms(family: &str, texts: &[String], degree: usize) -> Result<Vec<FormTemplate>, CatalogError> {
    texts
        .iter()
        .map(|t| FormTemplate::parse_with_degree(t, 4, degree).map_err(notation(family)))
        .collect()
}

fn check_scope<'a>(
    family: &str,
    declared: &BTreeSet<String>,
    used: impl IntoIterator<Item = BTreeSet<String>> + 'a,
) -> Result<(), CatalogError> {
    for set in used {
        if let Some(p) = set.iter().find(|p| !declared.contains(*p)) {
            return Err(CatalogError::Malformed(format!(
                "{family}: undeclared parameter `{p}`"
            )));
        }
    }
    Ok(())
}

impl LcsEntry {
    fn compile(
        family: &CatalogEntry,
        index: usize,
        record: &RowRecord,
    ) -> Result<Self, CatalogError> {
        let name = family.name.as_str();
        let dim = family.structure.dim;
        let form =
            |t: &str, d: usize| FormTemplate::parse_with_degree(t, dim, d).map_err(notation(name));
        let exact = match &record.exact {
            Some(e) => Some(ExactColumn {
                eta: form(&e.eta, 1)?,
                u: form(&e.u, 1)?,
            }),
            None => None,
        };
        let lagrangian = match &record.lagrangian {
            None => LagrangianColumn::Unstated,
            Some(LagrangianRecord::Keyword(k)) if k == "none" => LagrangianColumn::Absent,
            Some(LagrangianRecord::Keyword(k)) => {
                return Err(CatalogError::Malformed(format!(
                    "{name}: unknown Lagrangian keyword `{k}`"
                )))
            }
            Some(LagrangianRecord::Span(s)) => LagrangianColumn::Ideal(forms(name, s, 1)?),
        };
        let alias = match &record.alias {
            Some(a) => Some((form(&a.omega, 2)?, form(&a.theta, 1)?)),
            None => None,
        };
        let row = LcsEntry {
            family: family.name.clone(),
            index,
            label: format!("({}, {})", record.omega, record.theta),
            when: constraints(name, &record.when)?,
            params: params(name, &record.params)?,
            constraints: constraints(name, &record.constraints)?,
            omega: form(&record.omega, 2)?,
            theta: form(&record.theta, 1)?,
            exact,
            first_kind: record.first_kind,
            lagrangian,
            kernel_contact: record.kernel_contact,
            alias,
            record: record.clone(),
        };
        let family_params: BTreeSet<String> =
            family.params.iter().map(|p| p.symbol.clone()).collect();
        let mut declared = family_params.clone();
        declared.extend(row.params.iter().map(|p| p.symbol.clone()));
        check_scope(
            name,
            &family_params,
            row.when.iter().map(Constraint::params),
        )?;
        check_scope(
            name,
            &declared,
            row.constraints.iter().map(Constraint::params),
        )?;
        check_scope(
            name,
            &declared,
            row.params
                .iter()
                .flat_map(|p| p.constraints.iter().map(Constraint::params)),
        )?;
        let mut templates = vec![row.omega.params(), row.theta.params()];
        if let Some(e) = &row.exact {
            templates.extend([e.eta.params(), e.u.params()]);
        }
        check_scope(name, &declared, templates)?;
        Ok(row)
    }

    /// All parameter symbols, family first.
    pub fn symbols(&self, family: &CatalogEntry) -> Vec<String> {
        family
            .params
            .iter()
            .chain(&self.params)
            .map(|p| p.symbol.clone())
            .collect()
    }

    /// Every constraint that must hold for the row to apply.
    pub fn all_constraints<'a>(
        &'a self,
        family: &'a CatalogEntry,
    ) -> impl Iterator<Item = &'a Constraint> + 'a {
        family
            .params
            .iter()
            .chain(&self.params)
            .flat_map(|p| &p.constraints)
            .chain(&family.constraints)
            .chain(&self.when)
            .chain(&self.constraints)
    }

    pub fn check_admissible(
        &self,
        family: &CatalogEntry,
        b: &Bindings,
    ) -> Result<(), CatalogError> {
        check(
            &family.name,
            &self.symbols(family),
            self.all_constraints(family),
            b,
        )
    }

    pub fn instantiate(
        &self,
        family: &CatalogEntry,
        b: &Bindings,
    ) -> Result<(KForm, KForm), CatalogError> {
        self.check_admissible(family, b)?;
        let n = notation(&family.name);
        Ok((
            self.omega.instantiate(b).map_err(&n)?,
            self.theta.instantiate(b).map_err(&n)?,
        ))
    }
}

fn check<'a>(
    family: &str,
    symbols: &[String],
    constraints: impl IntoIterator<Item = &'a Constraint>,
    b: &Bindings,
) -> Result<(), CatalogError> {
    if let Some(p) = symbols.iter().find(|p| !b.contains_key(*p)) {
        return Err(CatalogError::MissingParameter {
            family: family.to_string(),
            param: p.clone(),
        });
    }
    if let Some(p) = b.keys().find(|k| !symbols.contains(k)) {
        return Err(CatalogError::UnexpectedParameter {
            family: family.to_string(),
            param: p.clone(),
        });
    }
    for c in constraints {
        // a condition that cannot be evaluated (division by zero) is violated
        if !c.holds(b).unwrap_or(false) {
            return Err(CatalogError::Inadmissible {
                family: family.to_string(),
                constraint: c.text.clone(),
            });
        }
    }
    Ok(())
}

impl CatalogEntry {
    pub fn compile(record: &FamilyRecord) -> Result<Self, CatalogError> {
        let name = record.name.as_str();
        let structure = SalamonTemplate::parse(&record.structure).map_err(notation(name))?;
        let center = record
            .center
            .iter()
            .map(|c| {
                Ok(CenterCase {
                    when: constraints(name, &c.when)?,
                    span: forms(name, &c.span, 1)?,
                })
            })
            .collect::<Result<Vec<_>, CatalogError>>()?;
        let mut entry = CatalogEntry {
            name: record.name.clone(),
            display: record.display.clone(),
            reductive: record.reductive,
            params: params(name, &record.params)?,
            constraints: constraints(name, &record.constraints)?,
            structure,
            center,
            solvable: record.solvable,
            completely_solvable: record.completely_solvable,
            nilpotent: record.nilpotent,
            lcs: Vec::new(),
            record: record.clone(),
        };
        let declared: BTreeSet<String> = entry.params.iter().map(|p| p.symbol.clone()).collect();
        check_scope(name, &declared, [entry.structure.params()])?;
        check_scope(
            name,
            &declared,
            entry.constraints.iter().map(Constraint::params),
        )?;
        check_scope(
            name,
            &declared,
            entry
                .center
                .iter()
                .flat_map(|c| c.when.iter().map(Constraint::params)),
        )?;
        let rows = record
            .structures
            .iter()
            .enumerate()
            .map(|(i, r)| LcsEntry::compile(&entry, i, r))
            .collect::<Result<Vec<_>, _>>()?;
        entry.lcs = rows;
        Ok(entry)
    }

    pub fn symbols(&self) -> Vec<String> {
        self.params.iter().map(|p| p.symbol.clone()).collect()
    }

    pub fn all_constraints(&self) -> impl Iterator<Item = &Constraint> + '_ {
        self.params
            .iter()
            .flat_map(|p| &p.constraints)
            .chain(&self.constraints)
    }

    pub fn check_admissible(&self, b: &Bindings) -> Result<(), CatalogError> {
        check(&self.name, &self.symbols(), self.all_constraints(), b)
    }

    /// The algebra at admissible parameter values. Extra bindings belonging
    /// to an lcs row are ignored.
    pub fn instantiate(&self, b: &Bindings) -> Result<LieAlgebra, CatalogError> {
        let own: Bindings = b
            .iter()
            .filter(|(k, _)| self.symbols().contains(k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        self.check_admissible(&own)?;
        Ok(self
            .structure
            .instantiate(&own)
            .map_err(notation(&self.name))?
            .with_name(self.display.clone()))
    }

    /// The center stated for these parameter values.
    pub fn expected_center(&self, b: &Bindings) -> Result<Subspace, CatalogError> {
        let n = notation(&self.name);
        for case in &self.center {
            if case.when.iter().all(|c| c.holds(b).unwrap_or(false)) {
                let vs = case
                    .span
                    .iter()
                    .map(|f| f.instantiate_vector(b).map_err(&n))
                    .collect::<Result<Vec<_>, _>>()?;
                return Ok(Subspace::span(self.structure.dim, &vs));
            }
        }
        Err(CatalogError::Malformed(format!(
            "{}: no center case applies",
            self.name
        )))
    }
}

impl Catalog {
    pub fn from_record(record: &CatalogRecord) -> Result<Self, CatalogError> {
        let entries = record
            .families
            .iter()
            .map(CatalogEntry::compile)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Catalog {
            version: record.version,
            entries,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let record: CatalogRecord =
            serde_json::from_str(text).map_err(|e| CatalogError::Malformed(e.to_string()))?;
        Self::from_record(&record)
    }

    /// The catalog shipped with the crate.
    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::from_json(BUILTIN).expect("bundled catalog is well formed"))
    }

    pub fn builtin_record() -> CatalogRecord {
        serde_json::from_str(BUILTIN).expect("bundled catalog is well formed")
    }

    /// Looks up by name or display name.
    pub fn get(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries
            .iter()
            .find(|e| e.name == name || e.display == name)
            .ok_or_else(|| CatalogError::UnknownFamily(name.to_string()))
    }

    pub fn record(&self) -> CatalogRecord {
        CatalogRecord {
            version: self.version,
            families: self.entries.iter().map(|e| e.record.clone()).collect(),
        }
    }
}

pub fn instantiate(name: &str, b: &Bindings) -> Result<LieAlgebra, CatalogError> {
    Catalog::builtin().get(name)?.instantiate(b)
}

pub fn lcs_entries(name: &str) -> Result<&'static [LcsEntry], CatalogError> {
    Ok(&Catalog::builtin().get(name)?.lcs)
}
