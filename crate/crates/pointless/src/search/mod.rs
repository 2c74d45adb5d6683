//! Search and certification layer: place scans that certify the absence of
//! small-degree points, the embedded table of known curves with its row
//! verifier, asymptotic parameter selection, and supporting bounds.

pub mod bounds;
pub mod driver;
pub mod par;
pub mod params;
pub mod scan;
pub mod table;

pub use bounds::{bounds, euler_lemma_check, weil_floor, BoundsReport, EulerLemmaReport};
pub use driver::{asymptotic_search, DriverConfig, DriverOutcome};
pub use par::{configure_threads, maybe_par_map, seq_map};
pub use params::{farey_neighbor, select_parameters, ParameterSelection, SearchConfig};
pub use scan::{
    scan_places, verify_pointless, verify_pointless_seq, DegreeMin, PointlessReport, Witness,
};
pub use table::{
    embedded_fixture_text, fixture_table, fixture_table_with_override, parse_table,
    verify_table_row, GenusCount, RowOutcome, TableEntry, FIXTURE_ENV,
};
