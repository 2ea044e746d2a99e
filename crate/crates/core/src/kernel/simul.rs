//! Simultaneous theorems and rule objects.
//!
//! A [`SimulTheorem`] is a named bundle of theorems certified together. A
//! [`RuleObject`] is a table of mutually recursive methods, each mapping a
//! bundle to a bundle. Methods reach their siblings only through the
//! `this` reference they are handed, so replacing one method with
//! [`RuleObject::with_method`] changes every sibling that calls it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::logic::Term;

use super::{KernelError, Theorem};

pub const DEFAULT_FUEL: u64 = 10_000;

/// Budget for self-calls. Each call through `this` spends one unit, so a
/// call chain can never be deeper than the initial budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fuel(u64);

impl Fuel {
    pub fn new(units: u64) -> Fuel {
        Fuel(units)
    }

    pub fn remaining(self) -> u64 {
        self.0
    }

    pub fn spend(self) -> Result<Fuel, KernelError> {
        self.0
            .checked_sub(1)
            .map(Fuel)
            .ok_or(KernelError::FuelExhausted)
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel(DEFAULT_FUEL)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimulTheorem {
    components: BTreeMap<String, Theorem>,
}

impl SimulTheorem {
    /// The bundle with no components, produced when every goal of a proof
    /// bundle has been discharged.
    pub fn discharged() -> SimulTheorem {
        SimulTheorem::default()
    }

    pub fn single(name: impl Into<String>, t: Theorem) -> SimulTheorem {
        SimulTheorem {
            components: BTreeMap::from([(name.into(), t)]),
        }
    }

    pub fn project(&self, name: &str) -> Result<&Theorem, KernelError> {
        self.components
            .get(name)
            .ok_or_else(|| KernelError::UnknownComponent(name.to_string()))
    }

    pub fn with(mut self, name: impl Into<String>, t: Theorem) -> SimulTheorem {
        self.components.insert(name.into(), t);
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.components.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Theorem)> {
        self.components.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn map(self, mut f: impl FnMut(&Theorem) -> Theorem) -> SimulTheorem {
        SimulTheorem {
            components: self
                .components
                .iter()
                .map(|(k, t)| (k.clone(), f(t)))
                .collect(),
        }
    }
}

/// Pack named theorems into a bundle. The map must be non-empty.
pub fn simul_pack(parts: BTreeMap<String, Theorem>) -> Result<SimulTheorem, KernelError> {
    if parts.is_empty() {
        return Err(KernelError::EmptyBundle);
    }
    Ok(SimulTheorem { components: parts })
}

pub fn simul_project(b: &SimulTheorem, name: &str) -> Result<Theorem, KernelError> {
    b.project(name).cloned()
}

/// `(this, bundle, witness terms, fuel) -> bundle`
pub type RuleMethod = Arc<
    dyn Fn(&RuleObject, &SimulTheorem, &[Term], Fuel) -> Result<SimulTheorem, KernelError>
        + Send
        + Sync,
>;

/// Wrap a closure as a [`RuleMethod`].
pub fn rule_method<F>(f: F) -> RuleMethod
where
    F: Fn(&RuleObject, &SimulTheorem, &[Term], Fuel) -> Result<SimulTheorem, KernelError>
        + Send
        + Sync
        + 'static,
{
    Arc::new(f)
}

#[derive(Clone)]
pub struct RuleObject {
    name: Arc<str>,
    methods: Arc<BTreeMap<String, RuleMethod>>,
}

impl fmt::Debug for RuleObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleObject")
            .field("name", &self.name)
            .field("methods", &self.methods.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl RuleObject {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn method_names(&self) -> impl Iterator<Item = &str> {
        self.methods.keys().map(String::as_str)
    }

    pub fn has_method(&self, method: &str) -> bool {
        self.methods.contains_key(method)
    }

    /// A copy of this object with `method` replaced (or added).
    pub fn with_method(&self, method: impl Into<String>, body: RuleMethod) -> RuleObject {
        let mut methods = (*self.methods).clone();
        methods.insert(method.into(), body);
        RuleObject {
            name: self.name.clone(),
            methods: Arc::new(methods),
        }
    }

    fn lookup(&self, method: &str) -> Result<&RuleMethod, KernelError> {
        self.methods
            .get(method)
            .ok_or_else(|| KernelError::UnknownMethod {
                object: self.name.to_string(),
                method: method.to_string(),
            })
    }

    /// Call a sibling method through this object. Spends one unit of fuel.
    pub fn call(
        &self,
        method: &str,
        args: &SimulTheorem,
        terms: &[Term],
        fuel: Fuel,
    ) -> Result<SimulTheorem, KernelError> {
        let body = self.lookup(method)?;
        let fuel = fuel.spend()?;
        body(self, args, terms, fuel)
    }

    /// Enter the object from outside. Does not spend fuel.
    pub fn apply(
        &self,
        method: &str,
        args: &SimulTheorem,
        terms: &[Term],
        fuel: Fuel,
    ) -> Result<SimulTheorem, KernelError> {
        let body = self.lookup(method)?;
        body(self, args, terms, fuel)
    }
}

pub fn make_rule_object(
    name: impl Into<String>,
    methods: BTreeMap<String, RuleMethod>,
) -> Result<RuleObject, KernelError> {
    if methods.is_empty() {
        return Err(KernelError::EmptyRuleObject);
    }
    Ok(RuleObject {
        name: Arc::from(name.into()),
        methods: Arc::new(methods),
    })
}

pub fn apply_rule_object(
    r: &RuleObject,
    method: &str,
    args: &SimulTheorem,
    fuel: Fuel,
) -> Result<SimulTheorem, KernelError> {
    r.apply(method, args, &[], fuel)
}
