use std::collections::HashMap;
use std::fmt;

use super::CausalError;

/// Index of a variable in the canonical order of its signature
/// (exogenous variables first, then endogenous, each in declared order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

/// Interned value: position of the value token inside its variable's range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueId(pub u16);

impl ValueId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite signature: exogenous and endogenous variables with their ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    names: Vec<String>,
    exogenous: usize,
    ranges: Vec<Vec<String>>,
    index: HashMap<String, VarId>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_value_token(s: &str) -> bool {
    (!s.is_empty() && s.chars().all(|c| c.is_ascii_digit())) || is_identifier(s)
}

impl Signature {
    /// Builds a signature. `ranges` is given per variable, in canonical order
    /// (all exogenous names followed by all endogenous names).
    pub fn new<S: Into<String>>(
        exogenous: impl IntoIterator<Item = S>,
        endogenous: impl IntoIterator<Item = S>,
        ranges: Vec<Vec<String>>,
    ) -> Result<Self, CausalError> {
        let mut names: Vec<String> = exogenous.into_iter().map(Into::into).collect();
        let n_exo = names.len();
        names.extend(endogenous.into_iter().map(Into::into));
        if names.is_empty() {
            return Err(CausalError::EmptySignature);
        }
        if ranges.len() != names.len() {
            return Err(CausalError::RangeCount {
                expected: names.len(),
                got: ranges.len(),
            });
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(CausalError::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), VarId(i)).is_some() {
                return Err(CausalError::DuplicateVariable(name.clone()));
            }
        }
        for (name, range) in names.iter().zip(&ranges) {
            if range.is_empty() {
                return Err(CausalError::EmptyRange(name.clone()));
            }
            if range.len() > u16::MAX as usize {
                return Err(CausalError::RangeTooLarge(name.clone()));
            }
            for (j, value) in range.iter().enumerate() {
                if !is_value_token(value) {
                    return Err(CausalError::InvalidValue {
                        var: name.clone(),
                        value: value.clone(),
                    });
                }
                if range[..j].contains(value) {
                    return Err(CausalError::DuplicateValue {
                        var: name.clone(),
                        value: value.clone(),
                    });
                }
            }
        }
        Ok(Signature {
            names,
            exogenous: n_exo,
            ranges,
            index,
        })
    }

    /// Convenience constructor where every variable has the numeric range `0..size`.
    pub fn numeric(
        exogenous: &[(&str, usize)],
        endogenous: &[(&str, usize)],
    ) -> Result<Self, CausalError> {
        let ranges = exogenous
            .iter()
            .chain(endogenous)
            .map(|&(_, n)| (0..n).map(|v| v.to_string()).collect())
            .collect();
        Signature::new(
            exogenous.iter().map(|&(n, _)| n),
            endogenous.iter().map(|&(n, _)| n),
            ranges,
        )
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn num_exogenous(&self) -> usize {
        self.exogenous
    }

    pub fn num_endogenous(&self) -> usize {
        self.names.len() - self.exogenous
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + Clone {
        (0..self.names.len()).map(VarId)
    }

    pub fn exogenous(&self) -> impl Iterator<Item = VarId> + Clone {
        (0..self.exogenous).map(VarId)
    }

    pub fn endogenous(&self) -> impl Iterator<Item = VarId> + Clone {
        (self.exogenous..self.names.len()).map(VarId)
    }

    pub fn is_exogenous(&self, v: VarId) -> bool {
        v.0 < self.exogenous
    }

    pub fn is_endogenous(&self, v: VarId) -> bool {
        v.0 >= self.exogenous && v.0 < self.names.len()
    }

    pub fn contains(&self, v: VarId) -> bool {
        v.0 < self.names.len()
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn require_var(&self, name: &str) -> Result<VarId, CausalError> {
        self.var(name)
            .ok_or_else(|| CausalError::UnknownVariable(name.to_string()))
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.0]
    }

    pub fn range(&self, v: VarId) -> &[String] {
        &self.ranges[v.0]
    }

    pub fn range_len(&self, v: VarId) -> usize {
        self.ranges[v.0].len()
    }

    pub fn values(&self, v: VarId) -> impl Iterator<Item = ValueId> + Clone {
        (0..self.ranges[v.0].len() as u16).map(ValueId)
    }

    pub fn value(&self, v: VarId, token: &str) -> Option<ValueId> {
        self.ranges[v.0]
            .iter()
            .position(|t| t == token)
            .map(|i| ValueId(i as u16))
    }

    pub fn require_value(&self, v: VarId, token: &str) -> Result<ValueId, CausalError> {
        self.value(v, token)
            .ok_or_else(|| CausalError::UnknownValue {
                var: self.name(v).to_string(),
                value: token.to_string(),
            })
    }

    pub fn value_name(&self, v: VarId, value: ValueId) -> &str {
        &self.ranges[v.0][value.index()]
    }

    pub fn in_range(&self, v: VarId, value: ValueId) -> bool {
        self.contains(v) && value.index() < self.ranges[v.0].len()
    }

    /// Number of total valuations, `None` on overflow.
    pub fn num_valuations(&self) -> Option<usize> {
        self.ranges
            .iter()
            .try_fold(1usize, |acc, r| acc.checked_mul(r.len()))
    }

    /// Product of the ranges of `vars`, `None` on overflow.
    pub fn product_size(&self, vars: &[VarId]) -> Option<usize> {
        vars.iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(self.range_len(*v)))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |f: &mut fmt::Formatter<'_>, vars: std::ops::Range<usize>| -> fmt::Result {
            for (k, i) in vars.enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}:{{{}}}", self.names[i], self.ranges[i].join(","))?;
            }
            Ok(())
        };
        write!(f, "U = [")?;
        show(f, 0..self.exogenous)?;
        write!(f, "], V = [")?;
        show(f, self.exogenous..self.names.len())?;
        write!(f, "]")
    }
}

/// Iterates over every tuple of `ranges` (last coordinate fastest).
pub(crate) fn for_each_tuple(ranges: &[usize], mut visit: impl FnMut(&[ValueId])) {
    if ranges.contains(&0) {
        return;
    }
    let mut tuple = vec![ValueId(0); ranges.len()];
    loop {
        visit(&tuple);
        let mut pos = ranges.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            tuple[pos].0 += 1;
            if (tuple[pos].0 as usize) < ranges[pos] {
                break;
            }
            tuple[pos] = ValueId(0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circuit() -> Signature {
        Signature::numeric(&[("B", 2), ("C", 2)], &[("S", 2)]).unwrap()
    }

    #[test]
    fn canonical_order_puts_exogenous_first() {
        let sig = circuit();
        assert_eq!(sig.var("B"), Some(VarId(0)));
        assert_eq!(sig.var("C"), Some(VarId(1)));
        assert_eq!(sig.var("S"), Some(VarId(2)));
        assert!(sig.is_exogenous(VarId(1)));
        assert!(sig.is_endogenous(VarId(2)));
        assert_eq!(sig.num_valuations(), Some(8));
    }

    #[test]
    fn rejects_bad_signatures() {
        let empty: Vec<&str> = vec![];
        assert!(matches!(
            Signature::new(empty.clone(), empty, vec![]),
            Err(CausalError::EmptySignature)
        ));
        assert!(matches!(
            Signature::numeric(&[("X", 2)], &[("X", 2)]),
            Err(CausalError::DuplicateVariable(_))
        ));
        assert!(matches!(
            Signature::numeric(&[("X", 0)], &[]),
            Err(CausalError::EmptyRange(_))
        ));
        assert!(matches!(
            Signature::new(["X"], [], vec![vec!["a".into(), "a".into()]]),
            Err(CausalError::DuplicateValue { .. })
        ));
        assert!(matches!(
            Signature::numeric(&[("1X", 2)], &[]),
            Err(CausalError::InvalidName(_))
        ));
    }

    #[test]
    fn tuples_enumerate_in_row_major_order() {
        let mut seen = Vec::new();
        for_each_tuple(&[2, 3], |t| seen.push((t[0].0, t[1].0)));
        assert_eq!(seen, vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]);
        let mut count = 0;
        for_each_tuple(&[], |_| count += 1);
        assert_eq!(count, 1);
    }
}
