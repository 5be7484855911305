use headplace::data::{
    builtin_dryer_table, builtin_sov_aggregates, DRYER_ALPHABET, DRYER_HEAD, UNIT_ADJUSTED,
    UNIT_GENERA, UNIT_LANGUAGES,
};
use headplace::error::Error;
use headplace::exact::{int, ratio};
use headplace::export::{export_plot_data, FigureKind, PlotSource};
use headplace::io::{load_frequency_table, write_frequency_table, TableSchema};
use headplace::null_model::enumerate_d_distribution;
use headplace::stats::{analyze, head_end_frequency};
use headplace::{build_ring, FreeTree, OrderFrequencyTable, OrderRow};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn dryer_csv() -> String {
    let mut buf = Vec::new();
    write_frequency_table(&builtin_dryer_table(), &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

fn load(text: &str) -> headplace::error::Result<OrderFrequencyTable> {
    load_frequency_table(text.as_bytes(), &TableSchema::with_head(DRYER_HEAD))
}

#[test]
fn embedded_table_is_self_consistent() {
    let t = builtin_dryer_table();
    assert_eq!(t.alphabet().len(), DRYER_ALPHABET.len());
    assert_eq!(t.rows().len(), 24);
    assert!(t.is_complete());
    assert_eq!(t.total(UNIT_LANGUAGES).unwrap(), int(576));
    assert_eq!(t.total(UNIT_GENERA).unwrap(), int(322));
    assert_eq!(t.total(UNIT_ADJUSTED).unwrap(), ratio(2174, 10));
    assert_eq!(head_end_frequency(&t, UNIT_LANGUAGES).unwrap(), int(369));
    assert_eq!(head_end_frequency(&t, UNIT_GENERA).unwrap(), int(192));
    assert_eq!(
        head_end_frequency(&t, UNIT_ADJUSTED).unwrap(),
        ratio(1232, 10)
    );
    assert!(t.is_integer_unit(UNIT_LANGUAGES).unwrap());
    assert!(!t.is_integer_unit(UNIT_ADJUSTED).unwrap());
}

#[test]
fn sov_aggregates() {
    let [lang, fam] = builtin_sov_aggregates();
    assert_eq!((lang.total, lang.head_at_ends), (5128, 2971));
    assert_eq!((fam.total, fam.head_at_ends), (340, 282));
}

#[test]
fn csv_round_trip_of_embedded_table() {
    let text = dryer_csv();
    assert!(text.starts_with("order,languages,genera,adjusted\n"));
    assert_eq!(load(&text).unwrap(), builtin_dryer_table());
}

fn parse_line(e: &Error) -> Option<usize> {
    match e {
        Error::Parse { line, .. } => *line,
        _ => None,
    }
}

#[test]
fn loader_rejects_broken_invariants_with_lines() {
    let base = dryer_csv();
    let lines: Vec<&str> = base.lines().collect();
    // duplicate row 5 at the end
    let dup = format!("{base}{}\n", lines[5]);
    let e = load(&dup).unwrap_err();
    assert!(e.to_string().contains("duplicate order"), "{e}");
    assert_eq!(parse_line(&e), Some(26));
    // wrong symbol
    let bad = base.replacen(lines[3], &lines[3].replacen('D', "X", 1), 1);
    let e = load(&bad).unwrap_err();
    assert!(e.to_string().contains("not a permutation"), "{e}");
    assert_eq!(parse_line(&e), Some(4));
    // negative frequency
    let field = lines[7].split(',').nth(1).unwrap();
    let neg = base.replacen(
        lines[7],
        &lines[7].replacen(&format!(",{field},"), ",-1,", 1),
        1,
    );
    assert_eq!(parse_line(&load(&neg).unwrap_err()), Some(8));
    // missing field
    let short = base.replacen(lines[10], &lines[10][..lines[10].rfind(',').unwrap()], 1);
    assert_eq!(parse_line(&load(&short).unwrap_err()), Some(11));
}

#[test]
fn strict_mode_requires_every_order() {
    let base = dryer_csv();
    let partial: String = base.lines().take(20).map(|l| format!("{l}\n")).collect();
    let strict = TableSchema {
        strict: true,
        ..TableSchema::with_head('n')
    };
    assert!(load_frequency_table(partial.as_bytes(), &strict).is_err());
    assert!(load_frequency_table(base.as_bytes(), &strict).is_ok());
    assert!(load(&partial).is_ok());
}

#[test]
fn figure_exports() {
    let reports = analyze(&builtin_dryer_table(), 0.05, None).unwrap();
    let fig2 = String::from_utf8(
        export_plot_data(&PlotSource::Reports(&reports), FigureKind::Fig2).unwrap(),
    )
    .unwrap();
    let rows: Vec<&str> = fig2.lines().collect();
    assert_eq!(rows[0], "unit,placement,proportion,ci_lo,ci_hi");
    assert_eq!(rows.len(), 1 + 2 * 3);
    assert!(rows[1].starts_with("languages,ends,0.640625,"));

    let fig3 = String::from_utf8(
        export_plot_data(&PlotSource::Reports(&reports), FigureKind::Fig3).unwrap(),
    )
    .unwrap();
    let rows: Vec<&str> = fig3.lines().collect();
    assert_eq!(rows[0], "unit,mu,mean_d,sigma,lo1,hi1,lo2,hi2,lo3,hi3");
    let lang: Vec<f64> = rows[1]
        .split(',')
        .skip(1)
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(lang[0], 5.0);
    assert_eq!(lang[1], 5.28125);
    assert!((lang[8] - (5.0 + 3.0 / 24.0)).abs() < 1e-12);
    // languages lie beyond the 3 sigma band
    assert!(lang[1] > lang[8]);

    let ring = build_ring(&['S', 'O', 'V'], None).unwrap();
    let fig4 =
        String::from_utf8(export_plot_data(&PlotSource::Ring(&ring), FigureKind::Fig4).unwrap())
            .unwrap();
    assert_eq!(fig4.lines().count(), 7);
    assert!(fig4.starts_with("node,angle,frequency\nSOV,0,\n"));

    let dist = enumerate_d_distribution(&FreeTree::star(4)).unwrap();
    let null = String::from_utf8(
        export_plot_data(&PlotSource::Distribution(&dist), FigureKind::Null).unwrap(),
    )
    .unwrap();
    assert_eq!(null.lines().next(), Some("value,probability,decimal"));
    assert_eq!(null.lines().count(), 1 + 2); // D in {4, 6}

    assert!(export_plot_data(&PlotSource::Ring(&ring), FigureKind::Fig2).is_err());
    assert!("fig9".parse::<FigureKind>().is_err());
}

fn rational() -> impl Strategy<Value = BigRational> {
    prop_oneof![
        (0i64..100_000).prop_map(int),
        (0i64..1_000_000, 1u32..6)
            .prop_map(|(n, e)| BigRational::new(BigInt::from(n), BigInt::from(10).pow(e))),
        (0i64..1000, 1i64..1000).prop_map(|(n, d)| ratio(n, d)),
    ]
}

fn table_strategy() -> impl Strategy<Value = OrderFrequencyTable> {
    let orders = ["SOV", "SVO", "VSO", "VOS", "OVS", "OSV"];
    (
        1usize..=4,
        proptest::sample::subsequence(orders.to_vec(), 1..=6),
    )
        .prop_flat_map(move |(units, chosen)| {
            let rows = chosen.len();
            (
                Just(units),
                Just(chosen).prop_shuffle(),
                proptest::collection::vec(proptest::collection::vec(rational(), units), rows),
            )
                .prop_map(|(units, chosen, freqs)| {
                    OrderFrequencyTable::new(
                        vec!['S', 'O', 'V'],
                        'V',
                        (0..units).map(|u| format!("u{u}")).collect(),
                        chosen
                            .iter()
                            .zip(freqs)
                            .map(|(o, frequencies)| OrderRow {
                                order: o.to_string(),
                                frequencies,
                            })
                            .collect(),
                    )
                    .unwrap()
                })
        })
}

proptest! {
    #[test]
    fn serialize_then_load_is_identity(table in table_strategy()) {
        let mut buf = Vec::new();
        write_frequency_table(&table, &mut buf).unwrap();
        let back = load_frequency_table(buf.as_slice(), &TableSchema::with_head('V')).unwrap();
        prop_assert_eq!(back, table);
    }

    #[test]
    fn loader_never_panics_on_mutations(pos in 0usize..2000, byte in any::<u8>(), cut in any::<bool>()) {
        let mut bytes = dryer_csv().into_bytes();
        let pos = pos % bytes.len();
        if cut {
            bytes.truncate(pos);
        } else {
            bytes[pos] = byte;
        }
        match load_frequency_table(bytes.as_slice(), &TableSchema::with_head('n')) {
            Ok(t) => prop_assert!(t.rows().len() <= 24),
            Err(e) => prop_assert!(matches!(e, Error::Parse { .. }), "{e:?}"),
        }
    }
}
