//! Teams of valuations, team-level interventions and team restriction.

use std::fmt;

use crate::causal::{
    CausalError, InterventionAssignment, Signature, StructuralFunctionSet, Valuation,
};

/// A finite set of valuations kept sorted and deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Team(Vec<Valuation>);

impl Team {
    pub fn new(members: impl IntoIterator<Item = Valuation>) -> Self {
        let mut members: Vec<Valuation> = members.into_iter().collect();
        members.sort();
        members.dedup();
        Team(members)
    }

    pub fn empty() -> Self {
        Team(Vec::new())
    }

    pub fn members(&self) -> &[Valuation] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Valuation> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Valuation) -> bool {
        self.0.binary_search(v).is_ok()
    }

    /// Members satisfying `keep`, order preserved.
    pub fn filter(&self, mut keep: impl FnMut(&Valuation) -> bool) -> Team {
        Team(self.0.iter().filter(|v| keep(v)).cloned().collect())
    }

    /// The pointwise image of the team under the intervention.
    pub fn intervene(
        &self,
        functions: &StructuralFunctionSet,
        a: &InterventionAssignment,
    ) -> Result<Team, CausalError> {
        if a.is_empty() {
            return Ok(self.clone());
        }
        let image = self
            .0
            .iter()
            .map(|v| functions.intervene_valuation(a, v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Team::new(image))
    }

    /// The sub-team selected by the bits of `mask` (bit `i` is member `i`).
    pub(crate) fn select(&self, mask: u64) -> Team {
        Team(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect(),
        )
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        DisplayTeam { team: self, sig }
    }
}

impl<'a> IntoIterator for &'a Team {
    type Item = &'a Valuation;
    type IntoIter = std::slice::Iter<'a, Valuation>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Valuation> for Team {
    fn from_iter<I: IntoIterator<Item = Valuation>>(iter: I) -> Self {
        Team::new(iter)
    }
}

struct DisplayTeam<'a> {
    team: &'a Team,
    sig: &'a Signature,
}

impl fmt::Display for DisplayTeam<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.team.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v.display(self.sig))?;
        }
        write!(f, "}}")
    }
}

/// Validity checks shared by epistemic models and causal teams.
pub(crate) fn check_team(
    functions: &StructuralFunctionSet,
    team: &Team,
) -> Result<(), CausalError> {
    if !functions.is_recursive() {
        return Err(functions.non_recursive_error());
    }
    let sig = functions.signature();
    for v in team {
        Valuation::new(sig, v.values().to_vec())?;
        if !functions.complies(v) {
            return Err(CausalError::NonCompliant(v.display(sig).to_string()));
        }
    }
    Ok(())
}

/// `E = ⟨S, F, T⟩` with a nonempty team of compliant valuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicCausalModel {
    functions: StructuralFunctionSet,
    team: Team,
}

impl EpistemicCausalModel {
    pub fn new(functions: StructuralFunctionSet, team: Team) -> Result<Self, CausalError> {
        if team.is_empty() {
            return Err(CausalError::EmptyTeam);
        }
        check_team(&functions, &team)?;
        Ok(EpistemicCausalModel { functions, team })
    }

    pub(crate) fn from_parts_unchecked(functions: StructuralFunctionSet, team: Team) -> Self {
        debug_assert!(!team.is_empty());
        EpistemicCausalModel { functions, team }
    }

    pub fn functions(&self) -> &StructuralFunctionSet {
        &self.functions
    }

    pub fn team(&self) -> &Team {
        &self.team
    }

    pub fn signature(&self) -> &Signature {
        self.functions.signature()
    }

    /// `E_{X=x}`: intervened functions and the pointwise image of the team.
    pub fn intervene_team(&self, a: &InterventionAssignment) -> Result<Self, CausalError> {
        let a = InterventionAssignment::new(self.signature(), a.bindings().iter().copied())?;
        if a.is_empty() {
            return Ok(self.clone());
        }
        let team = self.team.intervene(&self.functions, &a)?;
        Ok(EpistemicCausalModel {
            functions: self.functions.intervene(&a),
            team,
        })
    }

    /// Keeps the members satisfying `keep`. An empty result is an error.
    pub fn restrict_team(&self, keep: impl FnMut(&Valuation) -> bool) -> Result<Self, CausalError> {
        let team = self.team.filter(keep);
        if team.is_empty() {
            return Err(CausalError::EmptyTeam);
        }
        Ok(EpistemicCausalModel {
            functions: self.functions.clone(),
            team,
        })
    }
}

/// A model together with its actual valuation, which must be a team member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    model: EpistemicCausalModel,
    actual: Valuation,
}

impl PointedModel {
    pub fn new(model: EpistemicCausalModel, actual: Valuation) -> Result<Self, CausalError> {
        if !model.team().contains(&actual) {
            return Err(CausalError::ActualNotInTeam(
                actual.display(model.signature()).to_string(),
            ));
        }
        Ok(PointedModel { model, actual })
    }

    pub fn model(&self) -> &EpistemicCausalModel {
        &self.model
    }

    pub fn actual(&self) -> &Valuation {
        &self.actual
    }

    pub fn signature(&self) -> &Signature {
        self.model.signature()
    }

    /// Every pointing of `model`, in team order.
    pub fn pointings(model: &EpistemicCausalModel) -> impl Iterator<Item = PointedModel> + '_ {
        model.team().iter().map(|a| PointedModel {
            model: model.clone(),
            actual: a.clone(),
        })
    }

    /// `(E_{X=x}, A^F_{X=x})`.
    pub fn intervene(&self, a: &InterventionAssignment) -> Result<Self, CausalError> {
        let model = self.model.intervene_team(a)?;
        let actual = self
            .model
            .functions()
            .intervene_valuation(a, &self.actual)?;
        Ok(PointedModel { model, actual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn circuit_intervention() {
        let model = fixtures::circuit();
        let sig = model.signature().clone();
        let b1 = InterventionAssignment::from_names(&sig, [("B", "1")]).unwrap();
        let after = model.intervene_team(&b1).unwrap();
        let expected = Team::new([
            Valuation::from_names(&sig, [("C", "0"), ("B", "1"), ("S", "0")]).unwrap(),
            Valuation::from_names(&sig, [("C", "1"), ("B", "1"), ("S", "1")]).unwrap(),
        ]);
        assert_eq!(after.team(), &expected);
        assert_eq!(
            model
                .intervene_team(&InterventionAssignment::empty())
                .unwrap(),
            model
        );
    }

    #[test]
    fn intervention_can_merge_members() {
        let model = fixtures::circuit();
        let sig = model.signature().clone();
        let team = Team::new([
            Valuation::from_names(&sig, [("C", "0"), ("B", "0"), ("S", "0")]).unwrap(),
            Valuation::from_names(&sig, [("C", "0"), ("B", "1"), ("S", "0")]).unwrap(),
        ]);
        let model = EpistemicCausalModel::new(model.functions().clone(), team).unwrap();
        let a = InterventionAssignment::from_names(&sig, [("C", "0"), ("B", "0")]).unwrap();
        let after = model.intervene_team(&a).unwrap();
        assert_eq!(after.team().len(), 1);
        for v in after.team() {
            assert!(after.functions().complies(v));
        }
    }

    #[test]
    fn restriction() {
        let model = fixtures::circuit();
        let sig = model.signature().clone();
        let c = sig.var("C").unwrap();
        let one = sig.value(c, "1").unwrap();
        let kept = model.restrict_team(|v| v.get(c) == one).unwrap();
        assert_eq!(kept.team().members(), &[fixtures::circuit_a2()]);
        assert_eq!(model.restrict_team(|_| true).unwrap(), model);
        assert_eq!(model.restrict_team(|_| false), Err(CausalError::EmptyTeam));

        let s = sig.var("S").unwrap();
        let zero = sig.value(s, "0").unwrap();
        let twice = model
            .restrict_team(|v| v.get(c) == one)
            .unwrap()
            .restrict_team(|v| v.get(s) == zero)
            .unwrap();
        let once = model
            .restrict_team(|v| v.get(c) == one && v.get(s) == zero)
            .unwrap();
        assert_eq!(twice, once);
    }

    #[test]
    fn pointed_intervention() {
        let model = fixtures::circuit();
        let sig = model.signature().clone();
        let b1 = InterventionAssignment::from_names(&sig, [("B", "1")]).unwrap();
        let p2 = PointedModel::new(model.clone(), fixtures::circuit_a2()).unwrap();
        let q2 = p2.intervene(&b1).unwrap();
        assert_eq!(
            q2.actual(),
            &Valuation::from_names(&sig, [("C", "1"), ("B", "1"), ("S", "1")]).unwrap()
        );
        assert!(q2.model().team().contains(q2.actual()));
        let p1 = PointedModel::new(model, fixtures::circuit_a1()).unwrap();
        assert_eq!(
            p1.intervene(&b1).unwrap().actual(),
            &Valuation::from_names(&sig, [("C", "0"), ("B", "1"), ("S", "0")]).unwrap()
        );
        assert_eq!(p1.intervene(&InterventionAssignment::empty()).unwrap(), p1);
    }

    #[test]
    fn model_invariants_are_checked() {
        let model = fixtures::circuit();
        let sig = model.signature().clone();
        assert_eq!(
            EpistemicCausalModel::new(model.functions().clone(), Team::empty()),
            Err(CausalError::EmptyTeam)
        );
        let bad = Valuation::from_names(&sig, [("C", "1"), ("B", "1"), ("S", "0")]).unwrap();
        assert!(matches!(
            EpistemicCausalModel::new(model.functions().clone(), Team::new([bad.clone()])),
            Err(CausalError::NonCompliant(_))
        ));
        assert!(matches!(
            PointedModel::new(model, bad),
            Err(CausalError::ActualNotInTeam(_))
        ));
    }
}
