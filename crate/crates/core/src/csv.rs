//! Deterministic CSV rendering of reports, trajectories and inversion lists.
//!
//! Numbers are rounded to 12 significant digits and then printed in their
//! shortest round-trip form, so output is byte-stable across platforms.

use std::fmt::Write as _;

use crate::correlations::CorrelationReport;
use crate::dynamics::Trajectory;
use crate::scan::InversionRecord;

pub const REPORT_HEADER: &str = "c1,c2,c3,T,D,C,Tg2,Dg2,Cg2,k";
pub const TRAJECTORY_HEADER: &str = "nu,c1,c2,c3,T,D,C,Tg2,Dg2,Cg2,k";
pub const INVERSION_HEADER: &str =
    "quantifier,c1_first,c1_second,reb_first,reb_second,geo_first,geo_second,reb_increases,geo_increases";

/// Shortest representation of `x` rounded to 12 significant digits.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        // no "-0"
        return "0".into();
    }
    format!("{rounded}")
}

fn report_fields(r: &CorrelationReport) -> String {
    let values = [
        r.state.c1,
        r.state.c2,
        r.state.c3,
        r.total,
        r.discord,
        r.classical,
        r.geo_total_norm,
        r.geo_discord_norm,
        r.geo_classical_norm,
    ];
    let mut row = values.map(format_float).join(",");
    write!(row, ",{}", r.dominant_index).unwrap();
    row
}

pub fn report_row(r: &CorrelationReport) -> String {
    report_fields(r)
}

pub fn trajectory_row(nu: f64, r: &CorrelationReport) -> String {
    format!("{},{}", format_float(nu), report_fields(r))
}

pub fn inversion_row(r: &InversionRecord) -> String {
    let nums = [
        r.c1_first,
        r.c1_second,
        r.reb_first,
        r.reb_second,
        r.geo_first,
        r.geo_second,
    ]
    .map(format_float)
    .join(",");
    format!(
        "{},{nums},{},{}",
        r.quantifier.symbol(),
        r.reb_increases,
        r.geo_increases
    )
}

/// Header plus one row per report.
pub fn reports_table(reports: &[CorrelationReport]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&report_row(r));
        out.push('\n');
    }
    out
}

pub fn trajectory_table(t: &Trajectory) -> String {
    let mut out = String::from(TRAJECTORY_HEADER);
    out.push('\n');
    for s in &t.samples {
        out.push_str(&trajectory_row(s.nu, &s.report));
        out.push('\n');
    }
    out
}

pub fn inversions_table(list: &[InversionRecord]) -> String {
    let mut out = String::from(INVERSION_HEADER);
    out.push('\n');
    for r in list {
        out.push_str(&inversion_row(r));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::full_report;
    use crate::qstate::BellDiagonalState;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(-1e-300 * 1e-300), "0");
        assert_eq!(format_float(0.36), "0.36");
        assert_eq!(format_float(0.1 + 0.2), "0.3");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_float(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(format_float(123456789.1234567), "123456789.123");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(1.5e-20), "0.000000000000000000015");
    }

    #[test]
    fn report_row_layout() {
        let r = full_report(&BellDiagonalState::new(1.0, -0.6, 0.6)).unwrap();
        let row = report_row(&r);
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), REPORT_HEADER.split(',').count());
        assert_eq!(&fields[..3], ["1", "-0.6", "0.6"]);
        assert_eq!(fields[4], "0.278071905113");
        assert_eq!(fields[7], "0.36");
        assert_eq!(fields[9], "1");
    }
}
