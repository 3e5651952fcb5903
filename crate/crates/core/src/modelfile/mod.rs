//! JSON model and team files.
//!
//! ```json
//! {
//!   "signature": {
//!     "exogenous": ["B", "C"],
//!     "endogenous": ["S"],
//!     "ranges": {"B": [0, 1], "C": [0, 1], "S": 2}
//!   },
//!   "functions": {"S": {"expr": "B=1 & C=1"}},
//!   "team": [{"B": 0, "C": 0}, {"B": 0, "C": 1}],
//!   "actual": 1
//! }
//! ```
//!
//! A range is a list of value tokens or a size `n` for `0..n`. A function is
//! either `{"expr": ...}` or `{"table": [{"inputs": {...}, "output": v}],
//! "default": v}`, where the first row whose inputs match wins. Team rows
//! give either the exogenous values only, with the rest solved, or a full
//! valuation, which must comply. `actual` is an index into the team rows or
//! a row.

mod expr;

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::causal::{CausalError, Signature, StructuralFunctionSet, Valuation, ValueId, VarId};
use crate::epistemic::{EpistemicCausalModel, PointedModel, Team};
use crate::syntax::SyntaxError;
use crate::team::CausalTeam;

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Causal(#[from] CausalError),
    #[error("no range given for `{0}`")]
    MissingRange(String),
    #[error("range given for unknown variable `{0}`")]
    UnknownRange(String),
    #[error("no function given for endogenous `{0}`")]
    MissingFunction(String),
    #[error("function given for `{0}`, which is not endogenous")]
    UnexpectedFunction(String),
    #[error("function for `{0}` needs exactly one of `expr` and `table`")]
    FunctionShape(String),
    #[error("expression for `{var}`: {source}")]
    ExprSyntax { var: String, source: SyntaxError },
    #[error("expression for `{var}` reads `{var}` itself")]
    SelfReference { var: String },
    #[error("expression for `{var}`: {message}")]
    ExprValue { var: String, message: String },
    #[error("table for `{var}` has no row matching {inputs}")]
    IncompleteTable { var: String, inputs: String },
    #[error("team row {index}: {source}")]
    BadRow { index: usize, source: CausalError },
    #[error("team row {index} must give every exogenous variable and either all or none of the endogenous ones")]
    RowShape { index: usize },
    #[error("actual valuation: {0}")]
    BadActual(CausalError),
    #[error("actual index {index} is out of bounds for {len} team rows")]
    ActualOutOfBounds { index: usize, len: usize },
    #[error("model file has no actual valuation")]
    NoActual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Token {
    Text(String),
    Number(u64),
}

impl Token {
    fn text(&self) -> String {
        match self {
            Token::Text(s) => s.clone(),
            Token::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawRange {
    Size(usize),
    Values(Vec<Token>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSignature {
    exogenous: Vec<String>,
    endogenous: Vec<String>,
    ranges: BTreeMap<String, RawRange>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTableRow {
    inputs: BTreeMap<String, Token>,
    output: Token,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunction {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<RawTableRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    default: Option<Token>,
}

type RawRow = BTreeMap<String, Token>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawActual {
    Index(usize),
    Row(RawRow),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    signature: RawSignature,
    #[serde(default)]
    functions: BTreeMap<String, RawFunction>,
    #[serde(default)]
    team: Vec<RawRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    actual: Option<RawActual>,
}

/// The contents of a model file. The team may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    pub functions: StructuralFunctionSet,
    pub team: Team,
    pub actual: Option<Valuation>,
}

impl ModelDocument {
    pub fn signature(&self) -> &Signature {
        self.functions.signature()
    }

    pub fn epistemic_model(&self) -> Result<EpistemicCausalModel, CausalError> {
        EpistemicCausalModel::new(self.functions.clone(), self.team.clone())
    }

    pub fn pointed_model(&self) -> Result<PointedModel, ModelFileError> {
        let actual = self.actual.clone().ok_or(ModelFileError::NoActual)?;
        Ok(PointedModel::new(self.epistemic_model()?, actual)?)
    }

    pub fn causal_team(&self) -> Result<CausalTeam, CausalError> {
        CausalTeam::new(self.functions.clone(), self.team.clone())
    }
}

pub fn read_file(path: &Path) -> Result<String, ModelFileError> {
    std::fs::read_to_string(path).map_err(|source| ModelFileError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses a complete model file.
pub fn parse_model(text: &str) -> Result<ModelDocument, ModelFileError> {
    let raw: RawModel = serde_json::from_str(text)?;
    let functions = build_functions(&raw)?;
    let sig = functions.signature();
    let team_rows = raw
        .team
        .iter()
        .enumerate()
        .map(|(index, row)| match resolve_row(&functions, row) {
            Ok(v) => Ok(v),
            Err(None) => Err(ModelFileError::RowShape { index }),
            Err(Some(source)) => Err(ModelFileError::BadRow { index, source }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let actual = match &raw.actual {
        None => None,
        Some(RawActual::Index(index)) => Some(team_rows.get(*index).cloned().ok_or(
            ModelFileError::ActualOutOfBounds {
                index: *index,
                len: team_rows.len(),
            },
        )?),
        Some(RawActual::Row(row)) => Some(resolve_row(&functions, row).map_err(|e| match e {
            None => ModelFileError::RowShape {
                index: team_rows.len(),
            },
            Some(e) => ModelFileError::BadActual(e),
        })?),
    };
    let team = Team::new(team_rows);
    if let Some(a) = &actual {
        if !team.contains(a) {
            return Err(CausalError::ActualNotInTeam(a.display(sig).to_string()).into());
        }
    }
    Ok(ModelDocument {
        functions,
        team,
        actual,
    })
}

/// Parses only the signature and functions of a model file. Non-recursive
/// function sets are accepted here.
pub fn parse_functions(text: &str) -> Result<StructuralFunctionSet, ModelFileError> {
    let raw: RawModel = serde_json::from_str(text)?;
    build_functions(&raw)
}

pub fn load_model(path: &Path) -> Result<ModelDocument, ModelFileError> {
    parse_model(&read_file(path)?)
}

fn build_signature(raw: &RawSignature) -> Result<Signature, ModelFileError> {
    for name in raw.ranges.keys() {
        if !raw.exogenous.contains(name) && !raw.endogenous.contains(name) {
            return Err(ModelFileError::UnknownRange(name.clone()));
        }
    }
    let ranges = raw
        .exogenous
        .iter()
        .chain(&raw.endogenous)
        .map(|name| match raw.ranges.get(name) {
            None => Err(ModelFileError::MissingRange(name.clone())),
            Some(RawRange::Size(n)) => Ok((0..*n).map(|v| v.to_string()).collect()),
            Some(RawRange::Values(vs)) => Ok(vs.iter().map(Token::text).collect()),
        })
        .collect::<Result<Vec<Vec<String>>, _>>()?;
    Ok(Signature::new(
        raw.exogenous.iter().cloned(),
        raw.endogenous.iter().cloned(),
        ranges,
    )?)
}

enum Compiled {
    Expr(expr::Expr),
    Table(Vec<(Vec<(VarId, ValueId)>, ValueId)>, Option<ValueId>),
}

fn build_functions(raw: &RawModel) -> Result<StructuralFunctionSet, ModelFileError> {
    let sig = Arc::new(build_signature(&raw.signature)?);
    for name in raw.functions.keys() {
        if !sig.var(name).is_some_and(|v| sig.is_endogenous(v)) {
            return Err(ModelFileError::UnexpectedFunction(name.clone()));
        }
    }
    let mut compiled = Vec::with_capacity(sig.num_endogenous());
    for v in sig.endogenous() {
        let name = sig.name(v);
        let f = raw
            .functions
            .get(name)
            .ok_or_else(|| ModelFileError::MissingFunction(name.to_string()))?;
        compiled.push(compile(&sig, v, f)?);
    }
    let mut failure: Option<ModelFileError> = None;
    let functions = StructuralFunctionSet::from_fn(sig.clone(), |target, values| {
        let slot = target.0 - sig.num_exogenous();
        match apply(&sig, target, &compiled[slot], values) {
            Ok(x) => x,
            Err(e) => {
                failure.get_or_insert(e);
                ValueId(0)
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(functions),
    }
}

fn compile(sig: &Signature, v: VarId, f: &RawFunction) -> Result<Compiled, ModelFileError> {
    let name = sig.name(v).to_string();
    match (&f.expr, &f.table) {
        (Some(text), None) if f.default.is_none() => {
            let e = expr::parse_expr(text, sig).map_err(|source| ModelFileError::ExprSyntax {
                var: name.clone(),
                source,
            })?;
            if e.mentions(v) {
                return Err(ModelFileError::SelfReference { var: name });
            }
            Ok(Compiled::Expr(e))
        }
        (None, Some(rows)) => {
            let mut out = Vec::with_capacity(rows.len());
            for row in rows {
                let mut inputs = Vec::with_capacity(row.inputs.len());
                for (input, token) in &row.inputs {
                    let x = sig.require_var(input)?;
                    if x == v {
                        return Err(ModelFileError::SelfReference { var: name });
                    }
                    inputs.push((x, sig.require_value(x, &token.text())?));
                }
                out.push((inputs, sig.require_value(v, &row.output.text())?));
            }
            let default = f
                .default
                .as_ref()
                .map(|t| sig.require_value(v, &t.text()))
                .transpose()?;
            Ok(Compiled::Table(out, default))
        }
        _ => Err(ModelFileError::FunctionShape(name)),
    }
}

fn apply(
    sig: &Signature,
    v: VarId,
    f: &Compiled,
    values: &[ValueId],
) -> Result<ValueId, ModelFileError> {
    let name = || sig.name(v).to_string();
    match f {
        Compiled::Expr(e) => {
            let token = match e.eval(sig, values) {
                Ok(expr::Val::Bool(b)) => {
                    if b {
                        "1"
                    } else {
                        "0"
                    }
                }
                Ok(expr::Val::Token(t)) => t,
                Err(message) => {
                    return Err(ModelFileError::ExprValue {
                        var: name(),
                        message,
                    })
                }
            };
            sig.value(v, token)
                .ok_or_else(|| ModelFileError::ExprValue {
                    var: name(),
                    message: format!("result `{token}` is not in the range"),
                })
        }
        Compiled::Table(rows, default) => rows
            .iter()
            .find(|(inputs, _)| inputs.iter().all(|&(x, xv)| values[x.0] == xv))
            .map(|(_, out)| *out)
            .or(*default)
            .ok_or_else(|| {
                let shown: Vec<String> = sig
                    .vars()
                    .filter(|&x| x != v)
                    .map(|x| format!("{}={}", sig.name(x), sig.value_name(x, values[x.0])))
                    .collect();
                ModelFileError::IncompleteTable {
                    var: name(),
                    inputs: shown.join(", "),
                }
            }),
    }
}

/// `Err(None)` when the row has the wrong set of variables.
fn resolve_row(
    functions: &StructuralFunctionSet,
    row: &RawRow,
) -> Result<Valuation, Option<CausalError>> {
    let sig = functions.signature();
    let mut bindings = Vec::with_capacity(row.len());
    for (name, token) in row {
        let v = sig.require_var(name)?;
        bindings.push((v, sig.require_value(v, &token.text())?));
    }
    if bindings.len() == sig.num_vars() {
        let mut values = vec![ValueId(0); sig.num_vars()];
        for (v, x) in bindings {
            values[v.0] = x;
        }
        let val = Valuation::new(sig, values)?;
        if !functions.is_recursive() {
            return Err(Some(functions.non_recursive_error()));
        }
        if !functions.complies(&val) {
            return Err(Some(CausalError::NonCompliant(
                val.display(sig).to_string(),
            )));
        }
        Ok(val)
    } else if bindings.iter().all(|&(v, _)| sig.is_exogenous(v)) {
        Ok(functions.solve(bindings)?)
    } else {
        Err(None)
    }
}

/// Serializes a model with tables keyed by parents. Reading the output back
/// with [`parse_model`] gives an equal document.
pub fn write_model(
    functions: &StructuralFunctionSet,
    team: &Team,
    actual: Option<&Valuation>,
) -> Result<String, CausalError> {
    let sig = functions.signature();
    let token = |v: VarId, x: ValueId| Token::Text(sig.value_name(v, x).to_string());
    let row = |val: &Valuation| -> RawRow {
        sig.vars()
            .map(|v| (sig.name(v).to_string(), token(v, val.get(v))))
            .collect()
    };
    let signature = RawSignature {
        exogenous: sig.exogenous().map(|v| sig.name(v).to_string()).collect(),
        endogenous: sig.endogenous().map(|v| sig.name(v).to_string()).collect(),
        ranges: sig
            .vars()
            .map(|v| {
                let values = sig
                    .range(v)
                    .iter()
                    .map(|t| Token::Text(t.clone()))
                    .collect();
                (sig.name(v).to_string(), RawRange::Values(values))
            })
            .collect(),
    };
    let mut raw_functions = BTreeMap::new();
    for v in sig.endogenous() {
        let parents: Vec<VarId> = functions.parents(v)?.into_iter().collect();
        let ranges: Vec<usize> = parents.iter().map(|&p| sig.range_len(p)).collect();
        let mut rows = Vec::new();
        let mut full = vec![ValueId(0); sig.num_vars()];
        crate::causal::signature::for_each_tuple(&ranges, |t| {
            for (&p, &x) in parents.iter().zip(t) {
                full[p.0] = x;
            }
            rows.push(RawTableRow {
                inputs: parents
                    .iter()
                    .zip(t)
                    .map(|(&p, &x)| (sig.name(p).to_string(), token(p, x)))
                    .collect(),
                output: token(v, functions.apply(v, &full)),
            });
        });
        raw_functions.insert(
            sig.name(v).to_string(),
            RawFunction {
                table: Some(rows),
                ..RawFunction::default()
            },
        );
    }
    let raw = RawModel {
        signature,
        functions: raw_functions,
        team: team.iter().map(row).collect(),
        actual: actual.map(|a| RawActual::Row(row(a))),
    };
    Ok(serde_json::to_string_pretty(&raw).expect("model serializes"))
}
