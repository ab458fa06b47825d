//! Entry points shared by the fuzz targets and the corpus replay test.
//! Each one panics only when an invariant is broken.

use akr_core::catalog::{lookup, CatalogFunction};

use crate::config::RunConfig;
use crate::report::{parse_csv, parse_json, Cell, Payload};

/// A catalog name that resolves must print back to itself and evaluate
/// to a finite value inside the domain.
pub fn catalog_name(data: &[u8]) {
    let Ok(name) = std::str::from_utf8(data) else { return };
    let Ok(entry) = lookup(name) else { return };
    let canonical = entry.name.to_string();
    let again = lookup(&canonical).expect("canonical name resolves");
    assert_eq!(again.name, entry.name);
    let v = match &entry.function {
        CatalogFunction::Line(f) => f.eval(0.5),
        CatalogFunction::Square(f) => f.eval(0.5, 0.25),
    };
    assert!(v.is_finite(), "{canonical} is not finite at the probe point");
}

/// Newline-separated argv. Any config that validates must survive a
/// `to_args` round trip unchanged.
pub fn run_config_args(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let argv = std::iter::once("akr").chain(text.lines());
    let Ok((config, _)) = RunConfig::try_parse_from(argv) else { return };
    let back = std::iter::once("akr".to_owned()).chain(config.to_args());
    let (again, _) = RunConfig::try_parse_from(back).expect("to_args output parses");
    assert_eq!(again, config);
}

fn cells_round_trip(p: &Payload) {
    let cells = p.rows.iter().flatten().chain(&p.summary).map(|(_, c)| c);
    for c in cells {
        assert_eq!(&Cell::from_text(&c.to_text()), c);
    }
}

pub fn report_csv(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_csv(text) {
        cells_round_trip(&p);
    }
}

pub fn report_json(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_json(text) {
        cells_round_trip(&p);
    }
}
