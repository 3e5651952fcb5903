use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::signature::for_each_tuple;
use super::{CausalError, InterventionAssignment, Signature, Valuation, ValueId, VarId};

/// Dense-table layout of one structural function: the other variables in
/// canonical order with their row-major strides.
#[derive(Debug, PartialEq, Eq)]
struct Layout {
    others: Vec<(VarId, usize)>,
    size: usize,
}

impl Layout {
    fn new(sig: &Signature, target: VarId) -> Result<Self, CausalError> {
        let vars: Vec<VarId> = sig.vars().filter(|&v| v != target).collect();
        let size = sig
            .product_size(&vars)
            .ok_or_else(|| CausalError::TableTooLarge(sig.name(target).to_string()))?;
        let mut others = Vec::with_capacity(vars.len());
        let mut stride = size;
        for v in vars {
            stride /= sig.range_len(v);
            others.push((v, stride));
        }
        Ok(Layout { others, size })
    }

    fn index(&self, values: &[ValueId]) -> usize {
        self.others
            .iter()
            .map(|&(v, stride)| values[v.0].index() * stride)
            .sum()
    }
}

/// One dense lookup table per endogenous variable, indexed by the full tuple
/// of all other variables' values in canonical order.
///
/// The set need not be recursive; [`StructuralFunctionSet::is_recursive`]
/// decides that, and operations that need a causal order fail otherwise.
#[derive(Clone)]
pub struct StructuralFunctionSet {
    sig: Arc<Signature>,
    layouts: Arc<[Layout]>,
    tables: Vec<Arc<[ValueId]>>,
    order: Option<Arc<[VarId]>>,
}

impl PartialEq for StructuralFunctionSet {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.tables == other.tables
    }
}

impl Eq for StructuralFunctionSet {}

impl fmt::Debug for StructuralFunctionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for v in self.sig.endogenous() {
            let table: Vec<u16> = self.table(v).iter().map(|x| x.0).collect();
            map.entry(&self.sig.name(v), &table);
        }
        map.finish()
    }
}

impl StructuralFunctionSet {
    /// Builds the set from raw dense tables, one per endogenous variable in
    /// canonical order.
    pub fn from_tables(
        sig: Arc<Signature>,
        tables: Vec<Vec<ValueId>>,
    ) -> Result<Self, CausalError> {
        if tables.len() != sig.num_endogenous() {
            return Err(CausalError::TableCount {
                expected: sig.num_endogenous(),
                got: tables.len(),
            });
        }
        let layouts = sig
            .endogenous()
            .map(|v| Layout::new(&sig, v))
            .collect::<Result<Vec<_>, _>>()?;
        for ((v, layout), table) in sig.endogenous().zip(&layouts).zip(&tables) {
            if table.len() != layout.size {
                return Err(CausalError::TableSize {
                    var: sig.name(v).to_string(),
                    expected: layout.size,
                    got: table.len(),
                });
            }
            if let Some(bad) = table.iter().find(|x| !sig.in_range(v, **x)) {
                return Err(CausalError::ValueOutOfRange {
                    var: sig.name(v).to_string(),
                    value: bad.index(),
                });
            }
        }
        let mut set = StructuralFunctionSet {
            sig,
            layouts: layouts.into(),
            tables: tables.into_iter().map(Into::into).collect(),
            order: None,
        };
        set.order = set.topological_order().ok().map(Into::into);
        Ok(set)
    }

    /// Builds every table by calling `f(target, values)` on each full tuple of
    /// the other variables. The slot of `target` in `values` holds a
    /// placeholder and must be ignored.
    pub fn from_fn(
        sig: Arc<Signature>,
        mut f: impl FnMut(VarId, &[ValueId]) -> ValueId,
    ) -> Result<Self, CausalError> {
        let mut tables = Vec::with_capacity(sig.num_endogenous());
        for target in sig.endogenous() {
            let layout = Layout::new(&sig, target)?;
            let ranges: Vec<usize> = layout
                .others
                .iter()
                .map(|&(v, _)| sig.range_len(v))
                .collect();
            let mut full = vec![ValueId(0); sig.num_vars()];
            let mut table = Vec::with_capacity(layout.size);
            for_each_tuple(&ranges, |tuple| {
                for (&(v, _), value) in layout.others.iter().zip(tuple) {
                    full[v.0] = *value;
                }
                table.push(f(target, &full));
            });
            tables.push(table);
        }
        Self::from_tables(sig, tables)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.sig
    }

    fn slot(&self, v: VarId) -> usize {
        debug_assert!(self.sig.is_endogenous(v));
        v.0 - self.sig.num_exogenous()
    }

    /// The dense table of endogenous `v`.
    pub fn table(&self, v: VarId) -> &[ValueId] {
        &self.tables[self.slot(v)]
    }

    /// `f_v` applied to the other variables' values in `values` (the slot of
    /// `v` itself is ignored).
    pub fn apply(&self, v: VarId, values: &[ValueId]) -> ValueId {
        let slot = self.slot(v);
        self.tables[slot][self.layouts[slot].index(values)]
    }

    fn check_endogenous(&self, v: VarId) -> Result<(), CausalError> {
        if !self.sig.contains(v) {
            return Err(CausalError::UnknownVariable(format!("#{}", v.0)));
        }
        if !self.sig.is_endogenous(v) {
            return Err(CausalError::NotEndogenous(self.sig.name(v).to_string()));
        }
        Ok(())
    }

    /// The causal parents of endogenous `v`: every `X` such that changing `X`
    /// alone changes the output of `f_v` for some fixed values of the rest.
    pub fn parents(&self, v: VarId) -> Result<BTreeSet<VarId>, CausalError> {
        self.check_endogenous(v)?;
        let slot = self.slot(v);
        let layout = &self.layouts[slot];
        let table = &self.tables[slot];
        let mut parents = BTreeSet::new();
        for &(x, stride) in &layout.others {
            let radix = self.sig.range_len(x);
            'search: for idx in 0..layout.size {
                if (idx / stride) % radix != 0 {
                    continue;
                }
                let base = table[idx];
                for k in 1..radix {
                    if table[idx + k * stride] != base {
                        parents.insert(x);
                        break 'search;
                    }
                }
            }
        }
        Ok(parents)
    }

    /// [`Self::parents`] looked up by variable name.
    pub fn parents_of(&self, name: &str) -> Result<BTreeSet<VarId>, CausalError> {
        self.parents(self.sig.require_var(name)?)
    }

    /// All direct-cause edges `(X, V)` with `X ↪ V`, sorted.
    pub fn edges(&self) -> Vec<(VarId, VarId)> {
        let mut edges = Vec::new();
        for v in self.sig.endogenous() {
            for x in self.parents(v).expect("endogenous") {
                edges.push((x, v));
            }
        }
        edges.sort();
        edges
    }

    /// A topological order of all variables w.r.t. the direct-cause relation,
    /// breaking ties lexicographically by name; on failure returns a cycle.
    pub fn topological_order(&self) -> Result<Vec<VarId>, Vec<VarId>> {
        let n = self.sig.num_vars();
        let edges = self.edges();
        let mut indegree = vec![0usize; n];
        let mut children: Vec<Vec<VarId>> = vec![Vec::new(); n];
        for &(x, v) in &edges {
            indegree[v.0] += 1;
            children[x.0].push(v);
        }
        let mut ready: BTreeSet<(&str, VarId)> = self
            .sig
            .vars()
            .filter(|v| indegree[v.0] == 0)
            .map(|v| (self.sig.name(v), v))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(entry) = ready.pop_first() {
            let v = entry.1;
            order.push(v);
            for &c in &children[v.0] {
                indegree[c.0] -= 1;
                if indegree[c.0] == 0 {
                    ready.insert((self.sig.name(c), c));
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(find_cycle(n, &edges, &indegree))
        }
    }

    /// Whether the transitive closure of the direct-cause relation is a
    /// strict partial order.
    pub fn is_recursive(&self) -> bool {
        self.order.is_some()
    }

    fn order(&self) -> Result<&[VarId], CausalError> {
        match &self.order {
            Some(order) => Ok(order),
            None => Err(self.non_recursive_error()),
        }
    }

    /// The error describing a cycle of the direct-cause relation.
    pub fn non_recursive_error(&self) -> CausalError {
        let cycle = self.topological_order().err().unwrap_or_default();
        CausalError::NonRecursive {
            cycle: cycle
                .into_iter()
                .map(|v| self.sig.name(v).to_string())
                .collect(),
        }
    }

    /// Whether every endogenous value of `valuation` matches its structural function.
    pub fn complies(&self, valuation: &Valuation) -> bool {
        self.sig
            .endogenous()
            .all(|v| valuation.get(v) == self.apply(v, valuation.values()))
    }

    /// The unique compliant valuation extending the given exogenous values.
    pub fn solve(
        &self,
        exogenous: impl IntoIterator<Item = (VarId, ValueId)>,
    ) -> Result<Valuation, CausalError> {
        let order = self.order()?;
        let mut values: Vec<Option<ValueId>> = vec![None; self.sig.num_vars()];
        for (u, value) in exogenous {
            if !self.sig.contains(u) {
                return Err(CausalError::UnknownVariable(format!("#{}", u.0)));
            }
            if !self.sig.is_exogenous(u) {
                return Err(CausalError::NotExogenous(self.sig.name(u).to_string()));
            }
            if !self.sig.in_range(u, value) {
                return Err(CausalError::ValueOutOfRange {
                    var: self.sig.name(u).to_string(),
                    value: value.index(),
                });
            }
            values[u.0] = Some(value);
        }
        if let Some(u) = self.sig.exogenous().find(|u| values[u.0].is_none()) {
            return Err(CausalError::MissingExogenous(self.sig.name(u).to_string()));
        }
        // Endogenous slots not yet computed hold a placeholder; topological
        // order guarantees they are not parents of the variable being computed.
        let mut full: Vec<ValueId> = values
            .into_iter()
            .map(|v| v.unwrap_or(ValueId(0)))
            .collect();
        for &v in order {
            if self.sig.is_endogenous(v) {
                full[v.0] = self.apply(v, &full);
            }
        }
        Ok(Valuation::from_vec_unchecked(full))
    }

    /// `F_{X=x}`: intervened endogenous variables get constant tables.
    pub fn intervene(&self, a: &InterventionAssignment) -> StructuralFunctionSet {
        let mut tables = self.tables.clone();
        for &(v, value) in a.bindings() {
            if self.sig.is_endogenous(v) {
                let slot = self.slot(v);
                tables[slot] = vec![value; self.layouts[slot].size].into();
            }
        }
        let mut out = StructuralFunctionSet {
            sig: self.sig.clone(),
            layouts: self.layouts.clone(),
            tables,
            order: None,
        };
        // Removing incoming edges keeps any topological order valid.
        out.order = match &self.order {
            Some(order) => Some(order.clone()),
            None => out.topological_order().ok().map(Into::into),
        };
        out
    }

    /// `A^F_{X=x}`: intervened variables take their assigned values, other
    /// exogenous values are kept and the remaining endogenous values are
    /// recomputed under `F_{X=x}`.
    pub fn intervene_valuation(
        &self,
        a: &InterventionAssignment,
        valuation: &Valuation,
    ) -> Result<Valuation, CausalError> {
        let order = self.order()?;
        let mut out = valuation.clone();
        let values = out.values_mut();
        for &(v, value) in a.bindings() {
            values[v.0] = value;
        }
        for &v in order {
            if self.sig.is_endogenous(v) && !a.binds(v) {
                values[v.0] = self.apply(v, values);
            }
        }
        Ok(out)
    }
}

fn find_cycle(n: usize, edges: &[(VarId, VarId)], indegree: &[usize]) -> Vec<VarId> {
    // Every vertex left with positive indegree lies on or downstream of a
    // cycle; walking predecessors inside that set must revisit a vertex.
    let mut preds: Vec<Option<VarId>> = vec![None; n];
    for &(x, v) in edges {
        if indegree[x.0] > 0 && indegree[v.0] > 0 && preds[v.0].is_none() {
            preds[v.0] = Some(x);
        }
    }
    let Some(start) = (0..n).find(|&i| indegree[i] > 0 && preds[i].is_some()) else {
        return Vec::new();
    };
    let mut seen = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut cur = VarId(start);
    while seen[cur.0] == usize::MAX {
        seen[cur.0] = path.len();
        path.push(cur);
        cur = preds[cur.0].expect("remaining vertices have remaining predecessors");
    }
    let mut cycle = path[seen[cur.0]..].to_vec();
    cycle.reverse();
    let min = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| v.0)
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(min);
    cycle
}
