//! Embedded datasets.
//!
//! The noun-phrase table counts the preferred order of demonstrative (D),
//! numeral (N), adjective (A) and noun (n) in three units: languages, genera
//! and adjusted number of languages (Dryer 2018). Values are kept as decimal
//! strings and parsed to exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact::parse_rational;
use crate::table::{OrderFrequencyTable, OrderRow};

pub const UNIT_LANGUAGES: &str = "languages";
pub const UNIT_GENERA: &str = "genera";
pub const UNIT_ADJUSTED: &str = "adjusted";
pub const UNIT_FAMILIES: &str = "families";

/// Noun-phrase alphabet; the noun `n` is the head.
pub const DRYER_ALPHABET: [char; 4] = ['D', 'N', 'A', 'n'];
pub const DRYER_HEAD: char = 'n';

const DRYER_ROWS: [(&str, &str, &str, &str); 24] = [
    ("nAND", "182", "85", "44.17"),
    ("DNAn", "113", "57", "35.56"),
    ("DnAN", "53", "40", "29.95"),
    ("DNnA", "40", "32", "22.12"),
    ("nADN", "36", "19", "14.8"),
    ("NnAD", "67", "27", "14.54"),
    ("DnNA", "12", "10", "9.75"),
    ("nDAN", "13", "11", "9"),
    ("nNAD", "11", "9", "9"),
    ("nDNA", "8", "6", "5.67"),
    ("DAnN", "12", "7", "5.34"),
    ("NAnD", "8", "5", "4"),
    ("AnND", "5", "3", "3"),
    ("NnDA", "5", "3", "3"),
    ("AnDN", "5", "3", "2.5"),
    ("DANn", "3", "2", "2"),
    ("NDAn", "2", "2", "2"),
    ("nNDA", "1", "1", "1"),
    ("NADn", "0", "0", "0"),
    ("NDnA", "0", "0", "0"),
    ("ADnN", "0", "0", "0"),
    ("ADNn", "0", "0", "0"),
    ("ANDn", "0", "0", "0"),
    ("ANnD", "0", "0", "0"),
];

/// The 24-row noun-phrase order table.
pub fn builtin_dryer_table() -> OrderFrequencyTable {
    let rows = DRYER_ROWS
        .iter()
        .map(|&(order, l, g, a)| OrderRow {
            order: order.to_string(),
            frequencies: [l, g, a]
                .iter()
                .map(|v| parse_rational(v).expect("embedded value"))
                .collect(),
        })
        .collect();
    OrderFrequencyTable::new(
        DRYER_ALPHABET.to_vec(),
        DRYER_HEAD,
        vec![
            UNIT_LANGUAGES.to_string(),
            UNIT_GENERA.to_string(),
            UNIT_ADJUSTED.to_string(),
        ],
        rows,
    )
    .expect("embedded table is valid")
}

/// Aggregate verb-initial-or-final counts over dominant S/O/V orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SovAggregate {
    pub unit: &'static str,
    /// Total frequency `F`.
    pub total: u64,
    /// Frequency with the verb first or last.
    pub head_at_ends: u64,
}

impl SovAggregate {
    pub fn proportion(&self) -> BigRational {
        BigRational::new(BigInt::from(self.head_at_ends), BigInt::from(self.total))
    }
}

/// Verb-at-an-end counts for the six S/O/V orders (Hammarström 2016 summary).
pub fn builtin_sov_aggregates() -> [SovAggregate; 2] {
    [
        SovAggregate {
            unit: UNIT_LANGUAGES,
            total: 5128,
            head_at_ends: 2971,
        },
        SovAggregate {
            unit: UNIT_FAMILIES,
            total: 340,
            head_at_ends: 282,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio, to_f64};

    #[test]
    fn dryer_table_cells_and_totals() {
        let t = builtin_dryer_table();
        assert_eq!(t.rows().len(), 24);
        assert!(t.is_complete());
        assert_eq!(t.frequency("nAND", UNIT_LANGUAGES).unwrap(), int(182));
        for unit in [UNIT_LANGUAGES, UNIT_GENERA, UNIT_ADJUSTED] {
            assert_eq!(t.frequency("ANnD", unit).unwrap(), int(0));
        }
        assert_eq!(t.total(UNIT_LANGUAGES).unwrap(), int(576));
        assert_eq!(t.total(UNIT_GENERA).unwrap(), int(322));
        assert_eq!(t.total(UNIT_ADJUSTED).unwrap(), ratio(2174, 10));
        assert!(t.is_integer_unit(UNIT_GENERA).unwrap());
        assert!(!t.is_integer_unit(UNIT_ADJUSTED).unwrap());
    }

    #[test]
    fn sov_aggregates() {
        let [lang, fam] = builtin_sov_aggregates();
        assert_eq!((lang.total, lang.head_at_ends), (5128, 2971));
        assert_eq!((fam.total, fam.head_at_ends), (340, 282));
        assert!((to_f64(&fam.proportion()) - 0.83).abs() < 0.005);
        assert!((to_f64(&lang.proportion()) - 0.58).abs() < 0.005);
    }
}
