use std::cmp::Ordering;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Order used inside one block of a block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockOrder {
    Lex,
    GrevLex,
}

/// A group of variables compared together under one sub-order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderBlock {
    pub vars: Vec<usize>,
    pub order: BlockOrder,
}

/// A monomial order. Variables are ranked by their index in the ring:
/// index 0 is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Blocks compared lexicographically, earlier blocks dominating.
    Block(Vec<OrderBlock>),
}

impl MonomialOrder {
    /// Builds a block order, checking that the blocks partition `0..nvars`.
    pub fn block(blocks: Vec<OrderBlock>, nvars: usize) -> Result<Self> {
        let mut seen = vec![false; nvars];
        for b in &blocks {
            for &v in &b.vars {
                if v >= nvars {
                    return Err(Error::InvalidOrder(format!(
                        "variable index {v} out of range for {nvars} variables"
                    )));
                }
                if seen[v] {
                    return Err(Error::InvalidOrder(format!(
                        "variable index {v} appears in two blocks"
                    )));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidOrder(format!(
                "variable index {v} is not covered by any block"
            )));
        }
        Ok(MonomialOrder::Block(blocks))
    }

    pub(crate) fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::Block(blocks) = self {
            MonomialOrder::block(blocks.clone(), nvars)?;
        }
        Ok(())
    }

    /// Compares two exponent vectors of equal length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b, 0..a.len()),
            MonomialOrder::Block(blocks) => {
                for block in blocks {
                    let o = match block.order {
                        BlockOrder::Lex => block
                            .vars
                            .iter()
                            .map(|&v| a[v].cmp(&b[v]))
                            .find(|o| o.is_ne())
                            .unwrap_or(Ordering::Equal),
                        BlockOrder::GrevLex => grevlex_indexed(a, b, &block.vars),
                    };
                    if o.is_ne() {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl MonomialOrder {
    /// Integer key whose lexicographic order agrees with `cmp`.
    pub(crate) fn sort_key(&self, m: &Monomial) -> Vec<i64> {
        let e = m.exponents();
        let grevlex_key = |out: &mut Vec<i64>, vars: &mut dyn DoubleEndedIterator<Item = usize>, deg: i64| {
            out.push(deg);
            out.extend(vars.rev().map(|v| -(e[v] as i64)));
        };
        let mut out = Vec::with_capacity(e.len() + 1);
        match self {
            MonomialOrder::Lex => out.extend(e.iter().map(|&x| x as i64)),
            MonomialOrder::GrevLex => {
                let deg = e.iter().map(|&x| x as i64).sum();
                grevlex_key(&mut out, &mut (0..e.len()), deg);
            }
            MonomialOrder::Block(blocks) => {
                for block in blocks {
                    match block.order {
                        BlockOrder::Lex => out.extend(block.vars.iter().map(|&v| e[v] as i64)),
                        BlockOrder::GrevLex => {
                            let deg = block.vars.iter().map(|&v| e[v] as i64).sum();
                            grevlex_key(&mut out, &mut block.vars.iter().copied(), deg);
                        }
                    }
                }
            }
        }
        out
    }
}

fn grevlex(a: &[u32], b: &[u32], range: std::ops::Range<usize>) -> Ordering {
    let da: u64 = a[range.clone()].iter().map(|&e| e as u64).sum();
    let db: u64 = b[range.clone()].iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for v in range.rev() {
        if a[v] != b[v] {
            return b[v].cmp(&a[v]);
        }
    }
    Ordering::Equal
}

fn grevlex_indexed(a: &[u32], b: &[u32], vars: &[usize]) -> Ordering {
    let da: u64 = vars.iter().map(|&v| a[v] as u64).sum();
    let db: u64 = vars.iter().map(|&v| b[v] as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for &v in vars.iter().rev() {
        if a[v] != b[v] {
            return b[v].cmp(&a[v]);
        }
    }
    Ordering::Equal
}

/// Compares two exponent vectors under `ord`, rejecting mismatched lengths.
pub fn compare_monomials(a: &Monomial, b: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(ord.cmp(a, b))
}
