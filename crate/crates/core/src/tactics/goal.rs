use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::logic::{
    print_sequent, unify_formulas, Formula, MetaVar, Param, Sequent, Substitution, Term,
};

/// Goal name `g<N>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoalId(pub u32);

impl fmt::Display for GoalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

impl FromStr for GoalId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.strip_prefix('g')
            .and_then(|n| n.parse().ok())
            .map(GoalId)
            .ok_or_else(|| format!("bad goal name `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goal {
    pub sequent: Sequent,
    /// How often each quantified formula has been instantiated on this branch.
    uses: Vec<(Formula, u32)>,
}

impl Goal {
    pub fn new(sequent: Sequent) -> Goal {
        Goal {
            sequent,
            uses: Vec::new(),
        }
    }

    pub fn uses_of(&self, f: &Formula) -> u32 {
        self.uses
            .iter()
            .find(|(g, _)| g == f)
            .map_or(0, |(_, n)| *n)
    }

    pub(crate) fn derive(&self, sequent: Sequent) -> Goal {
        Goal {
            sequent,
            uses: self.uses.clone(),
        }
    }

    pub(crate) fn bump_use(&mut self, f: &Formula) {
        match self.uses.iter_mut().find(|(g, _)| g == f) {
            Some((_, n)) => *n += 1,
            None => self.uses.push((f.clone(), 1)),
        }
    }

    fn substitute(&self, s: &Substitution) -> Goal {
        Goal {
            sequent: s.apply_sequent(&self.sequent),
            uses: self
                .uses
                .iter()
                .map(|(f, n)| (s.apply_formula(f), *n))
                .collect(),
        }
    }
}

/// Goals proved together. The metavariable store is shared: binding a
/// metavariable while closing one goal rewrites every sibling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalBundle {
    goals: BTreeMap<GoalId, Goal>,
    meta_store: Substitution,
    params: BTreeSet<Param>,
    /// Eigenvariables with the metavariables that were already in scope when
    /// they were introduced. None of those may ever be bound to a term
    /// mentioning the eigenvariable.
    eigen: Vec<(Param, Vec<MetaVar>)>,
    next_goal: u32,
    next_serial: u32,
    /// Goals a tactic may work on; `None` means all of them. Subgoals of a
    /// goal in scope join the scope.
    scope: Option<BTreeSet<GoalId>>,
}

impl GoalBundle {
    /// Single goal `g0`.
    pub fn new(goal: Sequent) -> GoalBundle {
        GoalBundle::from_sequents(vec![goal])
    }

    /// Goals `g0`, `g1`, ... in order.
    pub fn from_sequents(goals: Vec<Sequent>) -> GoalBundle {
        let n = goals.len() as u32;
        let params = goals.iter().flat_map(|s| s.params()).collect();
        GoalBundle {
            goals: goals
                .into_iter()
                .enumerate()
                .map(|(i, s)| (GoalId(i as u32), Goal::new(s)))
                .collect(),
            meta_store: Substitution::new(),
            params,
            eigen: Vec::new(),
            next_goal: n,
            next_serial: 1,
            scope: None,
        }
    }

    pub fn goals(&self) -> impl Iterator<Item = (GoalId, &Goal)> {
        self.goals.iter().map(|(k, v)| (*k, v))
    }

    pub fn goal_ids(&self) -> Vec<GoalId> {
        self.goals.keys().copied().collect()
    }

    pub fn goal(&self, id: GoalId) -> Option<&Goal> {
        self.goals.get(&id)
    }

    pub fn len(&self) -> usize {
        self.goals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.goals.is_empty()
    }

    pub fn is_discharged(&self) -> bool {
        self.goals.is_empty()
    }

    pub fn meta_store(&self) -> &Substitution {
        &self.meta_store
    }

    pub fn params(&self) -> &BTreeSet<Param> {
        &self.params
    }

    /// The lowest-numbered goal in scope.
    pub fn default_goal(&self) -> Option<GoalId> {
        self.in_scope().into_iter().next()
    }

    /// Open goals in scope, lowest first.
    pub fn in_scope(&self) -> Vec<GoalId> {
        match &self.scope {
            None => self.goal_ids(),
            Some(s) => self
                .goals
                .keys()
                .filter(|g| s.contains(g))
                .copied()
                .collect(),
        }
    }

    pub fn scope(&self) -> Option<&BTreeSet<GoalId>> {
        self.scope.as_ref()
    }

    pub fn focused(&self, g: GoalId) -> GoalBundle {
        GoalBundle {
            scope: Some(BTreeSet::from([g])),
            ..self.clone()
        }
    }

    /// Id the next new goal will get.
    pub fn next_goal_id(&self) -> GoalId {
        GoalId(self.next_goal)
    }

    /// Put back an enclosing scope after a focused run, extended by every
    /// goal created since `first_new`.
    pub fn rescoped(&self, outer: Option<&BTreeSet<GoalId>>, first_new: GoalId) -> GoalBundle {
        let scope = outer.map(|s| {
            let mut s = s.clone();
            s.extend(self.goals.keys().filter(|g| **g >= first_new));
            s
        });
        self.clone().with_scope(scope)
    }

    pub fn with_scope(mut self, scope: Option<BTreeSet<GoalId>>) -> GoalBundle {
        self.scope = scope;
        self
    }

    pub(crate) fn fresh_meta(&mut self) -> MetaVar {
        let m = MetaVar::new("m", self.next_serial);
        self.next_serial += 1;
        m
    }

    pub(crate) fn fresh_param(&mut self, in_scope: Vec<MetaVar>) -> Param {
        let p = Param::new("p", self.next_serial);
        self.next_serial += 1;
        self.params.insert(p.clone());
        self.eigen.push((p.clone(), in_scope));
        p
    }

    /// Replace goal `id` by `subgoals`, which get fresh names in order.
    pub(crate) fn replace(&mut self, id: GoalId, subgoals: Vec<Goal>) -> Vec<GoalId> {
        self.goals.remove(&id);
        let inherit = self.scope.as_ref().is_some_and(|s| s.contains(&id));
        subgoals
            .into_iter()
            .map(|g| {
                let gid = GoalId(self.next_goal);
                self.next_goal += 1;
                self.goals.insert(gid, g);
                if inherit {
                    self.scope.as_mut().expect("scoped").insert(gid);
                }
                gid
            })
            .collect()
    }

    /// Adopt `store` (an extension of the current one) and rewrite all goals.
    /// Fails if it would violate an eigenvariable condition.
    pub(crate) fn with_store(&self, store: Substitution) -> Option<GoalBundle> {
        for (p, scope) in &self.eigen {
            if scope
                .iter()
                .any(|m| store.apply_term(&Term::Meta(m.clone())).contains_param(p))
            {
                return None;
            }
        }
        let goals = self
            .goals
            .iter()
            .map(|(k, g)| (*k, g.substitute(&store)))
            .collect();
        Some(GoalBundle {
            goals,
            meta_store: store,
            ..self.clone()
        })
    }

    /// Current metavariable bindings.
    pub fn bindings(&self) -> impl Iterator<Item = (&MetaVar, &Term)> {
        self.meta_store.iter()
    }

    /// Pairs (i, j) such that left formula i unifies with right formula j,
    /// with the resulting store. Leftmost-first over the left side.
    pub(crate) fn unifiable_pairs(&self, id: GoalId) -> Vec<(usize, usize, Substitution)> {
        let Some(goal) = self.goals.get(&id) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (i, a) in goal.sequent.left.iter().enumerate() {
            for (j, b) in goal.sequent.right.iter().enumerate() {
                if let Some(s) = unify_formulas(a, b, &self.meta_store) {
                    out.push((i, j, s));
                }
            }
        }
        out
    }
}

impl fmt::Display for GoalBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.goals.is_empty() {
            return writeln!(f, "no goals");
        }
        for (id, g) in &self.goals {
            writeln!(f, "{}: {}", id, print_sequent(&g.sequent))?;
        }
        Ok(())
    }
}
