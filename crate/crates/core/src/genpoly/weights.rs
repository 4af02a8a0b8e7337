use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use thiserror::Error;

use crate::mpoly::{MPoly, MPolyError, VarId};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weight of y{0} must be positive")]
    NonPositive(VarId),
    #[error("cannot parse weight entry `{0}` (expected `index=value`)")]
    Syntax(String),
}

/// Positive rational weights `y_e > 0` on ground-set elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightAssignment(BTreeMap<VarId, Rational>);

impl WeightAssignment {
    pub fn new(values: BTreeMap<VarId, Rational>) -> Result<Self, WeightError> {
        if let Some((&v, _)) = values.iter().find(|(_, x)| !x.is_positive()) {
            return Err(WeightError::NonPositive(v));
        }
        Ok(WeightAssignment(values))
    }

    pub fn uniform<I: IntoIterator<Item = VarId>>(
        vars: I,
        value: Rational,
    ) -> Result<Self, WeightError> {
        Self::new(vars.into_iter().map(|v| (v, value.clone())).collect())
    }

    pub fn get(&self, v: VarId) -> Option<&Rational> {
        self.0.get(&v)
    }

    pub fn as_map(&self) -> &BTreeMap<VarId, Rational> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &Rational)> {
        self.0.iter().map(|(&v, x)| (v, x))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self, p: &MPoly) -> Result<Rational, MPolyError> {
        p.evaluate(&self.0)
    }
}

/// `y0=1,y3=5/2` (the `y` prefix is optional when parsing).
impl fmt::Display for WeightAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, x)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "y{v}={x}")?;
        }
        Ok(())
    }
}

impl FromStr for WeightAssignment {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut values = BTreeMap::new();
        for entry in s.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let syntax = || WeightError::Syntax(entry.to_string());
            let (k, v) = entry.split_once('=').ok_or_else(syntax)?;
            let k = k.trim();
            let var: VarId = k
                .strip_prefix('y')
                .unwrap_or(k)
                .parse()
                .map_err(|_| syntax())?;
            let x = parse_rational(v).map_err(|_| syntax())?;
            values.insert(var, x);
        }
        Self::new(values)
    }
}
