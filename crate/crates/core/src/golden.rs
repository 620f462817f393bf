//! Embedded reference tables for the leading orders of `X_n` and `X'_n`.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::algebra::{parse_term, OperatorPoly};
use crate::error::ParseError;
use crate::kutzelnigg::SeriesTable;

const GOLDEN: &str = include_str!("../data/golden.toml");

#[derive(Deserialize)]
struct RawOrder {
    n: usize,
    terms: Vec<String>,
}

#[derive(Deserialize)]
struct RawTable {
    max_order: usize,
    order: Vec<RawOrder>,
}

#[derive(Deserialize)]
struct RawFile {
    dirac: RawTable,
    pauli: RawTable,
}

/// A reference table: every order up to `max_order`, zero where not listed.
#[derive(Clone, Debug, PartialEq)]
pub struct GoldenTable {
    pub max_order: usize,
    pub orders: BTreeMap<usize, OperatorPoly>,
}

impl GoldenTable {
    pub fn expected(&self, n: usize) -> OperatorPoly {
        self.orders.get(&n).cloned().unwrap_or_default()
    }

    /// Orders `1..=max_order` at which `table` differs from the reference.
    pub fn mismatches(&self, table: &SeriesTable) -> Vec<usize> {
        (1..=self.max_order)
            .filter(|&n| n > table.max_order() || table.entry(n) != &self.expected(n))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenTables {
    pub dirac: GoldenTable,
    pub pauli: GoldenTable,
}

fn convert(raw: RawTable) -> Result<GoldenTable, ParseError> {
    let mut orders = BTreeMap::new();
    for o in raw.order {
        if o.n > raw.max_order {
            return Err(ParseError::Golden(format!("order {} beyond max_order", o.n)));
        }
        let mut p = OperatorPoly::zero();
        for t in &o.terms {
            p = &p + &parse_term(t)?;
        }
        if orders.insert(o.n, p).is_some() {
            return Err(ParseError::Golden(format!("order {} listed twice", o.n)));
        }
    }
    Ok(GoldenTable {
        max_order: raw.max_order,
        orders,
    })
}

/// Parses tables in the embedded TOML layout.
pub fn parse_tables(text: &str) -> Result<GoldenTables, ParseError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| ParseError::Golden(e.to_string()))?;
    Ok(GoldenTables {
        dirac: convert(raw.dirac)?,
        pauli: convert(raw.pauli)?,
    })
}

/// The shipped reference tables.
pub fn tables() -> GoldenTables {
    parse_tables(GOLDEN).expect("embedded golden tables parse")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kutzelnigg::{dirac_series, pauli_series};

    #[test]
    fn embedded_tables_parse() {
        let t = tables();
        assert_eq!(t.dirac.orders.len(), 7);
        assert_eq!(t.pauli.orders.len(), 10);
    }

    #[test]
    fn recursion_reproduces_tables() {
        let t = tables();
        let x = dirac_series(13).unwrap();
        assert!(t.dirac.mismatches(&x).is_empty());
        let xp = pauli_series(&x, 12).unwrap();
        assert!(t.pauli.mismatches(&xp).is_empty());
    }

    #[test]
    fn altered_table_is_detected() {
        let text = GOLDEN.replace("(-5/128) m^-7", "(-5/127) m^-7");
        let t = parse_tables(&text).unwrap();
        let x = dirac_series(13).unwrap();
        assert_eq!(t.dirac.mismatches(&x), vec![7]);
    }
}
