//! File formats: JSON input, DOT skeletons, CSV and JSON reports.

use std::fmt::Write as _;
use std::path::Path as FsPath;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::basic_data::{load_basic_data_lenient, validate_basic_data, BasicData, RawBasicData};
use crate::error::{Error, Result};
use crate::graph::{Colour, Skeleton};
use crate::prw::{import_prw, prw_aperiodicity_check, PrwParams, RawPrwParams};
use crate::shift::BlockCensus;
use crate::Limits;

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

fn read(path: &FsPath) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_basic_data(path: &FsPath, limits: &Limits) -> Result<BasicData> {
    validate_basic_data(&parse_json::<RawBasicData>(&read(path)?)?, limits)
}

/// Like [`read_basic_data`] but keeps maps that are not bijections.
pub fn read_basic_data_lenient(path: &FsPath, limits: &Limits) -> Result<BasicData> {
    load_basic_data_lenient(&parse_json::<RawBasicData>(&read(path)?)?, limits)
}

pub fn read_prw(path: &FsPath, limits: &Limits) -> Result<PrwParams> {
    parse_json::<RawPrwParams>(&read(path)?)?.resolve(limits)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn basic_data_json(bd: &BasicData) -> Result<String> {
    to_json(&RawBasicData::from_data(bd))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The skeleton in DOT. Arrows point from source to range; blue edges are
/// solid and red edges dashed.
pub fn skeleton_dot(bd: &BasicData, skeleton: &Skeleton) -> String {
    let mut out = String::from("digraph skeleton {\n  node [shape=box];\n");
    for v in skeleton.vertices() {
        let _ = writeln!(out, "  {} [label={}];", v.id, quote(&v.label(bd.alphabet())));
    }
    for colour in Colour::ALL {
        let style = match colour {
            Colour::Blue => "solid",
            Colour::Red => "dashed",
        };
        for (range, source) in skeleton.edges(colour) {
            let _ = writeln!(
                out,
                "  {source} -> {range} [color={}, style={style}];",
                colour.name()
            );
        }
    }
    out.push_str("}\n");
    out
}

pub const CENSUS_CSV_HEADER: &str = "d,count,log_count,entropy_term";

pub fn census_csv(rows: &[BlockCensus]) -> String {
    let mut out = format!("{CENSUS_CSV_HEADER}\n");
    for r in rows {
        let count = r.count.as_ref().map(|c| c.to_str_radix(10)).unwrap_or_default();
        let _ = writeln!(out, "{},{},{:.12e},{:.12e}", r.d, count, r.log_count, r.entropy_term);
    }
    out
}

/// Result of importing a parameter set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrwImport {
    pub basic_data: RawBasicData,
    pub vertices: usize,
    /// Every imported vertex satisfies the weighted trace identity.
    pub trace_identity: bool,
    /// The imported vertices are exactly the labellings of `T` with the right trace.
    pub vertex_sets_equal: Option<bool>,
    pub prw_aperiodicity_check: bool,
}

pub fn import_report(params: &PrwParams, limits: &Limits) -> Result<(BasicData, PrwImport)> {
    let bd = import_prw(params)?;
    let vertices = bd.enumerate_vertices(limits)?;
    let as_residues = |labels: &[crate::Symbol]| -> Vec<u64> {
        labels.iter().map(|s| u64::from(s.0)).collect()
    };
    let trace_identity = vertices
        .iter()
        .all(|v| params.weighted_sum(&as_residues(&v.labels)) == params.trace());
    let vertex_sets_equal = match params.brute_force_vertices(limits) {
        Ok(mut brute) => {
            let mut ours: Vec<Vec<u64>> = vertices.iter().map(|v| as_residues(&v.labels)).collect();
            ours.sort();
            brute.sort();
            Some(ours == brute)
        }
        Err(Error::SizeLimit { .. }) => None,
        Err(e) => return Err(e),
    };
    let report = PrwImport {
        basic_data: RawBasicData::from_data(&bd),
        vertices: vertices.len(),
        trace_identity,
        vertex_sets_equal,
        prw_aperiodicity_check: prw_aperiodicity_check(params),
    };
    Ok((bd, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::shift::entropy_sequence;

    #[test]
    fn dot_for_ledrappier() {
        let bd = corpus::ledrappier();
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let dot = skeleton_dot(&bd, &sk);
        assert_eq!(dot.matches("style=solid").count(), 8);
        assert_eq!(dot.matches("style=dashed").count(), 8);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert!(dot.contains("v0 [label=\"0|0\"];"));
        assert_eq!(dot, skeleton_dot(&bd, &sk));
    }

    #[test]
    fn csv_rows() {
        let rows = entropy_sequence(&corpus::ledrappier(), 3).unwrap();
        let csv = census_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CENSUS_CSV_HEADER);
        assert!(lines[1].starts_with("1,16,"));
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn json_round_trip() {
        let bd = corpus::square();
        let text = basic_data_json(&bd).unwrap();
        let raw: RawBasicData = parse_json(&text).unwrap();
        assert_eq!(validate_basic_data(&raw, &Limits::default()).unwrap(), bd);
        assert_eq!(parse_json::<RawBasicData>("{").unwrap_err().kind(), "Parse");
        let extra = r#"{"alphabet":["0"],"tile":[[0,0]],"symbol":"0","colour":1}"#;
        assert_eq!(parse_json::<RawBasicData>(extra).unwrap_err().kind(), "Parse");
    }

    #[test]
    fn import_report_for_ledrappier() {
        let (bd, r) = import_report(&corpus::prw_ledrappier(), &Limits::default()).unwrap();
        assert_eq!(r.vertices, 4);
        assert!(r.trace_identity);
        assert_eq!(r.vertex_sets_equal, Some(true));
        assert!(r.prw_aperiodicity_check);
        assert_eq!(bd.vertex_count(), 4);
    }
}
