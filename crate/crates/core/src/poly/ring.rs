use std::sync::Arc;

use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Variable names together with the active monomial order.
///
/// Variable `0` is the largest under `Lex` and `GrevLex`; declaration order
/// is the variable order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<RingRef> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        order.validate(vars.len())?;
        Ok(Arc::new(Ring { vars, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<RingRef> {
        Ring::new(self.vars.clone(), order)
    }

    /// Appends `extra` variables; the new ring uses `order`.
    pub fn extended<S: Into<String>>(
        &self,
        extra: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        vars.extend(extra.into_iter().map(Into::into));
        Ring::new(vars, order)
    }

    /// A name derived from `base` that is not a variable of this ring and
    /// not in `taken`.
    pub fn fresh_name(&self, base: &str, taken: &[String]) -> String {
        let used = |n: &str| self.index_of(n).is_some() || taken.iter().any(|t| t == n);
        if !used(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}_{i}"))
            .find(|n| !used(n))
            .expect("unbounded search")
    }
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
