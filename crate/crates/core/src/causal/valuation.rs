use std::fmt;

use super::{CausalError, Signature, ValueId, VarId};

/// A total assignment of values to the variables of a signature, stored
/// densely in canonical variable order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(Vec<ValueId>);

impl Valuation {
    pub fn new(sig: &Signature, values: Vec<ValueId>) -> Result<Self, CausalError> {
        if values.len() != sig.num_vars() {
            return Err(CausalError::ValuationArity {
                expected: sig.num_vars(),
                got: values.len(),
            });
        }
        for (v, value) in sig.vars().zip(&values) {
            if !sig.in_range(v, *value) {
                return Err(CausalError::ValueOutOfRange {
                    var: sig.name(v).to_string(),
                    value: value.index(),
                });
            }
        }
        Ok(Valuation(values))
    }

    /// Builds a valuation from `(name, token)` pairs covering every variable.
    pub fn from_names<'a>(
        sig: &Signature,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, CausalError> {
        let mut values: Vec<Option<ValueId>> = vec![None; sig.num_vars()];
        for (name, token) in pairs {
            let v = sig.require_var(name)?;
            if values[v.0].is_some() {
                return Err(CausalError::DuplicateBinding(name.to_string()));
            }
            values[v.0] = Some(sig.require_value(v, token)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, value)| {
                value.ok_or_else(|| CausalError::MissingValue(sig.name(VarId(i)).to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Valuation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<ValueId>) -> Self {
        Valuation(values)
    }

    pub fn get(&self, v: VarId) -> ValueId {
        self.0[v.0]
    }

    pub fn values(&self) -> &[ValueId] {
        &self.0
    }

    pub(crate) fn values_mut(&mut self) -> &mut [ValueId] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every valuation of the signature, in lexicographic canonical order.
    pub fn all(sig: &Signature) -> Vec<Valuation> {
        let ranges: Vec<usize> = sig.vars().map(|v| sig.range_len(v)).collect();
        let mut out = Vec::new();
        super::signature::for_each_tuple(&ranges, |t| out.push(Valuation(t.to_vec())));
        out
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        DisplayValuation { val: self, sig }
    }
}

struct DisplayValuation<'a> {
    val: &'a Valuation,
    sig: &'a Signature,
}

impl fmt::Display for DisplayValuation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.sig.vars().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}={}",
                self.sig.name(v),
                self.sig.value_name(v, self.val.get(v))
            )?;
        }
        write!(f, ")")
    }
}

/// An assignment `[X1:=x1, ..., Xk:=xk]` over pairwise distinct variables.
/// May be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InterventionAssignment {
    bindings: Vec<(VarId, ValueId)>,
}

impl InterventionAssignment {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(
        sig: &Signature,
        bindings: impl IntoIterator<Item = (VarId, ValueId)>,
    ) -> Result<Self, CausalError> {
        let bindings: Vec<_> = bindings.into_iter().collect();
        for (i, &(v, value)) in bindings.iter().enumerate() {
            if !sig.contains(v) {
                return Err(CausalError::UnknownVariable(format!("#{}", v.0)));
            }
            if !sig.in_range(v, value) {
                return Err(CausalError::ValueOutOfRange {
                    var: sig.name(v).to_string(),
                    value: value.index(),
                });
            }
            if bindings[..i].iter().any(|&(w, _)| w == v) {
                return Err(CausalError::DuplicateBinding(sig.name(v).to_string()));
            }
        }
        Ok(InterventionAssignment { bindings })
    }

    pub fn from_names<'a>(
        sig: &Signature,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, CausalError> {
        let bindings = pairs
            .into_iter()
            .map(|(name, token)| {
                let v = sig.require_var(name)?;
                Ok((v, sig.require_value(v, token)?))
            })
            .collect::<Result<Vec<_>, CausalError>>()?;
        Self::new(sig, bindings)
    }

    pub(crate) fn from_vec_unchecked(bindings: Vec<(VarId, ValueId)>) -> Self {
        InterventionAssignment { bindings }
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn bindings(&self) -> &[(VarId, ValueId)] {
        &self.bindings
    }

    pub fn value_of(&self, v: VarId) -> Option<ValueId> {
        self.bindings
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, value)| value)
    }

    pub fn binds(&self, v: VarId) -> bool {
        self.value_of(v).is_some()
    }

    /// `[X:=x, Z:=z]`; fails if `Z` is already bound.
    pub fn extended(&self, sig: &Signature, v: VarId, value: ValueId) -> Result<Self, CausalError> {
        let mut bindings = self.bindings.clone();
        bindings.push((v, value));
        Self::new(sig, bindings)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        DisplayAssignment { a: self, sig }
    }
}

struct DisplayAssignment<'a> {
    a: &'a InterventionAssignment,
    sig: &'a Signature,
}

impl fmt::Display for DisplayAssignment<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &(v, value)) in self.a.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:={}", self.sig.name(v), self.sig.value_name(v, value))?;
        }
        write!(f, "]")
    }
}
