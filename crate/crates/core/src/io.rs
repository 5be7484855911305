//! CSV ingestion and serialization of order frequency tables.
//!
//! Format: comma-separated UTF-8 with a header row. The first column is
//! `order`; every further column is a unit of measurement. Frequencies are
//! non-negative decimals (`.` separator) or exact fractions `p/q`.
//!
//! ```text
//! order,languages,genera,adjusted
//! nAND,182,85,44.17
//! ```

use std::collections::HashMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational};
use crate::table::{OrderFrequencyTable, OrderRow};

/// How to interpret an input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSchema {
    pub head: char,
    /// Symbols of the alphabet; inferred from the first data row when absent.
    pub alphabet: Option<Vec<char>>,
    /// Require a row for every one of the `n!` orders.
    pub strict: bool,
}

impl TableSchema {
    pub fn with_head(head: char) -> Self {
        TableSchema {
            head,
            alphabet: None,
            strict: false,
        }
    }
}

pub fn load_frequency_table<R: Read>(
    source: R,
    schema: &TableSchema,
) -> Result<OrderFrequencyTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let header = reader.headers()?.clone();
    if header.get(0) != Some("order") {
        return Err(Error::parse(
            Some(1),
            "first header column must be \"order\"",
        ));
    }
    let units: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    if units.is_empty() {
        return Err(Error::parse(Some(1), "header names no unit columns"));
    }
    if let Some(dup) = units
        .iter()
        .enumerate()
        .find(|(i, u)| units[..*i].contains(u))
    {
        return Err(Error::parse(
            Some(1),
            format!("duplicate unit column {:?}", dup.1),
        ));
    }

    let mut alphabet: Option<Vec<char>> = schema.alphabet.clone().map(|mut a| {
        a.sort_unstable();
        a
    });
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line() as usize);
        if record.len() != units.len() + 1 {
            return Err(Error::parse(
                line,
                format!(
                    "expected {} fields, found {}",
                    units.len() + 1,
                    record.len()
                ),
            ));
        }
        let order = record[0].to_string();
        let mut chars: Vec<char> = order.chars().collect();
        chars.sort_unstable();
        let alpha = alphabet.get_or_insert_with(|| {
            let mut a = chars.clone();
            a.dedup();
            a
        });
        if chars != *alpha {
            return Err(Error::parse(
                line,
                format!(
                    "order {order:?} is not a permutation of {:?}",
                    alpha.iter().collect::<String>()
                ),
            ));
        }
        if let Some(first) = seen.insert(order.clone(), line.unwrap_or(0)) {
            return Err(Error::parse(
                line,
                format!("duplicate order {order:?} (first seen at line {first})"),
            ));
        }
        let mut frequencies = Vec::with_capacity(units.len());
        for (value, unit) in record.iter().skip(1).zip(&units) {
            let f = parse_rational(value).map_err(|_| {
                Error::parse(
                    line,
                    format!("malformed frequency {value:?} for unit {unit:?}"),
                )
            })?;
            if f < num_traits::Zero::zero() {
                return Err(Error::parse(
                    line,
                    format!("negative frequency {value} for unit {unit:?}"),
                ));
            }
            frequencies.push(f);
        }
        rows.push(OrderRow { order, frequencies });
    }

    let alphabet = alphabet.ok_or_else(|| Error::parse(None, "table has no data rows"))?;
    let table = OrderFrequencyTable::new(alphabet, schema.head, units, rows)
        .map_err(|e| Error::parse(None, e.to_string()))?;
    if schema.strict && !table.is_complete() {
        return Err(Error::parse(
            None,
            format!(
                "strict mode requires all orders of {:?}; found {} rows",
                table.alphabet().iter().collect::<String>(),
                table.rows().len()
            ),
        ));
    }
    Ok(table)
}

/// Writes the table in the format read by [`load_frequency_table`]; values are
/// exact so the round trip is lossless.
pub fn write_frequency_table<W: Write>(table: &OrderFrequencyTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["order".to_string()];
    header.extend(table.units().iter().cloned());
    w.write_record(&header)?;
    for row in table.rows() {
        let mut rec = vec![row.order.clone()];
        rec.extend(row.frequencies.iter().map(format_rational));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
