use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::kernel::Fuel;

use super::{GoalBundle, TacticError, Validation};

/// One way a tactic can proceed: the new bundle, and how to turn theorems
/// for its goals back into theorems for the goals it started from.
#[derive(Debug, Clone)]
pub struct TacticOutcome {
    pub bundle: GoalBundle,
    pub validation: Validation,
}

/// Alternatives in backtracking order, produced on demand. An empty
/// sequence means the tactic failed.
pub type Outcomes = Box<dyn Iterator<Item = Result<TacticOutcome, TacticError>> + Send>;

pub type TacticMethod = Arc<dyn Fn(&TacticObject, &GoalBundle, Fuel) -> Outcomes + Send + Sync>;

pub fn tactic_method<F>(f: F) -> TacticMethod
where
    F: Fn(&TacticObject, &GoalBundle, Fuel) -> Outcomes + Send + Sync + 'static,
{
    Arc::new(f)
}

pub fn no_outcomes() -> Outcomes {
    Box::new(std::iter::empty())
}

pub fn one_outcome(o: TacticOutcome) -> Outcomes {
    Box::new(std::iter::once(Ok(o)))
}

/// A tactic: a table of methods reaching each other through `this`.
/// Entering it runs `main`.
#[derive(Clone)]
pub struct TacticObject {
    name: Arc<str>,
    methods: Arc<BTreeMap<String, TacticMethod>>,
}

impl fmt::Debug for TacticObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TacticObject({})", self.name)
    }
}

impl TacticObject {
    pub fn new(name: impl Into<String>, methods: BTreeMap<String, TacticMethod>) -> TacticObject {
        assert!(
            methods.contains_key("main"),
            "a tactic object needs a `main` method"
        );
        TacticObject {
            name: Arc::from(name.into()),
            methods: Arc::new(methods),
        }
    }

    pub fn simple(name: impl Into<String>, main: TacticMethod) -> TacticObject {
        TacticObject::new(name, BTreeMap::from([("main".to_string(), main)]))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_method(&self, method: impl Into<String>, body: TacticMethod) -> TacticObject {
        let mut methods = (*self.methods).clone();
        methods.insert(method.into(), body);
        TacticObject {
            name: self.name.clone(),
            methods: Arc::new(methods),
        }
    }

    pub fn run(&self, b: &GoalBundle, fuel: Fuel) -> Outcomes {
        self.invoke("main", b, fuel)
    }

    /// Enter `method` without spending fuel.
    pub fn invoke(&self, method: &str, b: &GoalBundle, fuel: Fuel) -> Outcomes {
        match self.methods.get(method) {
            Some(body) => body(self, b, fuel),
            None => Box::new(std::iter::once(Err(TacticError::UnknownMethod(
                method.to_string(),
            )))),
        }
    }

    /// Self-call. Spends one unit of fuel; on exhaustion the only outcome is
    /// an error.
    pub fn call(&self, method: &str, b: &GoalBundle, fuel: Fuel) -> Outcomes {
        match fuel.spend() {
            Ok(fuel) => self.invoke(method, b, fuel),
            Err(_) => Box::new(std::iter::once(Err(TacticError::FuelExhausted))),
        }
    }
}
