//! Frequency tables of orders: one row per order string, one column per unit.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRow {
    pub order: String,
    pub frequencies: Vec<BigRational>,
}

/// Frequencies of the orders of an alphabet of single-character symbols, one of
/// which is the head. Orders not listed have frequency zero in every unit.
/// The alphabet is kept sorted, so tables built from different symbol orders
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderFrequencyTable {
    alphabet: Vec<char>,
    head: char,
    units: Vec<String>,
    rows: Vec<OrderRow>,
}

impl OrderFrequencyTable {
    pub fn new(
        mut alphabet: Vec<char>,
        head: char,
        units: Vec<String>,
        rows: Vec<OrderRow>,
    ) -> Result<Self> {
        alphabet.sort_unstable();
        let table = OrderFrequencyTable {
            alphabet,
            head,
            units,
            rows,
        };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        let mut sorted = self.alphabet.clone();
        sorted.dedup();
        if sorted.len() != self.alphabet.len() || sorted.is_empty() {
            return Err(Error::domain(
                "alphabet must be non-empty with distinct symbols",
            ));
        }
        if !self.alphabet.contains(&self.head) {
            return Err(Error::domain(format!(
                "head symbol {:?} is not in the alphabet {:?}",
                self.head,
                self.alphabet.iter().collect::<String>()
            )));
        }
        if self.units.is_empty() {
            return Err(Error::domain(
                "at least one unit of measurement is required",
            ));
        }
        let mut seen = HashSet::new();
        for row in &self.rows {
            self.check_order(&row.order)?;
            if !seen.insert(row.order.as_str()) {
                return Err(Error::domain(format!("duplicate order {:?}", row.order)));
            }
            if row.frequencies.len() != self.units.len() {
                return Err(Error::domain(format!(
                    "order {:?} has {} frequencies for {} units",
                    row.order,
                    row.frequencies.len(),
                    self.units.len()
                )));
            }
            if let Some(f) = row.frequencies.iter().find(|f| f.is_negative()) {
                return Err(Error::domain(format!(
                    "order {:?} has negative frequency {f}",
                    row.order
                )));
            }
        }
        Ok(())
    }

    /// Checks that `order` is a permutation of the alphabet.
    pub fn check_order(&self, order: &str) -> Result<()> {
        let mut chars: Vec<char> = order.chars().collect();
        chars.sort_unstable();
        if chars != self.alphabet {
            return Err(Error::domain(format!(
                "{order:?} is not a permutation of {:?}",
                self.alphabet.iter().collect::<String>()
            )));
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn head(&self) -> char {
        self.head
    }

    pub fn n(&self) -> usize {
        self.alphabet.len()
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn rows(&self) -> &[OrderRow] {
        &self.rows
    }

    pub fn unit_index(&self, unit: &str) -> Result<usize> {
        self.units
            .iter()
            .position(|u| u == unit)
            .ok_or_else(|| Error::domain(format!("unknown unit {unit:?}")))
    }

    /// Frequency of `order` in `unit`; zero when the order is not listed.
    pub fn frequency(&self, order: &str, unit: &str) -> Result<BigRational> {
        let idx = self.unit_index(unit)?;
        self.check_order(order)?;
        Ok(self
            .rows
            .iter()
            .find(|r| r.order == order)
            .map(|r| r.frequencies[idx].clone())
            .unwrap_or_else(BigRational::zero))
    }

    /// Column `unit` as `(order, frequency)` pairs.
    pub fn column(&self, unit: &str) -> Result<impl Iterator<Item = (&str, &BigRational)> + '_> {
        let idx = self.unit_index(unit)?;
        Ok(self
            .rows
            .iter()
            .map(move |r| (r.order.as_str(), &r.frequencies[idx])))
    }

    /// `F`, the total frequency of a unit.
    pub fn total(&self, unit: &str) -> Result<BigRational> {
        Ok(self.column(unit)?.map(|(_, f)| f.clone()).sum())
    }

    pub fn is_integer_unit(&self, unit: &str) -> Result<bool> {
        Ok(self.column(unit)?.all(|(_, f)| f.is_integer()))
    }

    /// 1-based position of the head symbol in `order`.
    pub fn head_position(&self, order: &str) -> usize {
        order
            .chars()
            .position(|c| c == self.head)
            .expect("validated orders contain the head")
            + 1
    }

    /// Whether every one of the `n!` orders has a row.
    pub fn is_complete(&self) -> bool {
        let n = self.n() as u64;
        let fact: u64 = (1..=n).product();
        self.rows.len() as u64 == fact
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn row(order: &str, f: &[i64]) -> OrderRow {
        OrderRow {
            order: order.into(),
            frequencies: f.iter().map(|&x| int(x)).collect(),
        }
    }

    fn svo(rows: Vec<OrderRow>) -> Result<OrderFrequencyTable> {
        OrderFrequencyTable::new(vec!['S', 'O', 'V'], 'V', vec!["languages".into()], rows)
    }

    #[test]
    fn validation() {
        assert!(svo(vec![row("SOV", &[3]), row("SVO", &[2])]).is_ok());
        assert!(svo(vec![row("SOV", &[3]), row("SOV", &[2])]).is_err());
        assert!(svo(vec![row("SSV", &[3])]).is_err());
        assert!(svo(vec![row("SOVX", &[3])]).is_err());
        assert!(svo(vec![row("SOV", &[-1])]).is_err());
        assert!(svo(vec![row("SOV", &[1, 2])]).is_err());
        assert!(
            OrderFrequencyTable::new(vec!['S', 'O', 'V'], 'X', vec!["l".into()], vec![]).is_err()
        );
        assert!(OrderFrequencyTable::new(vec!['S', 'O', 'V'], 'V', vec![], vec![]).is_err());
        assert!(OrderFrequencyTable::new(vec!['S', 'S'], 'S', vec!["l".into()], vec![]).is_err());
    }

    #[test]
    fn lookups() {
        let t = svo(vec![row("SOV", &[3]), row("VSO", &[2])]).unwrap();
        assert_eq!(t.frequency("SOV", "languages").unwrap(), int(3));
        assert_eq!(t.frequency("OSV", "languages").unwrap(), int(0));
        assert!(t.frequency("OSV", "genera").is_err());
        assert_eq!(t.total("languages").unwrap(), int(5));
        assert_eq!(t.head_position("SOV"), 3);
        assert_eq!(t.head_position("VSO"), 1);
        assert!(t.is_integer_unit("languages").unwrap());
        assert!(!t.is_complete());
    }
}
