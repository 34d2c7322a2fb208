//! JSON reduction reports: one entry per method run, stable key order.

use std::path::Path;

use serde::Serialize;

use crate::model::ReductionReport;
use crate::Error;

#[derive(Serialize)]
struct ReportFile<'a> {
    instance: &'a str,
    reports: &'a [ReductionReport],
}

pub fn format_report(instance: &str, reports: &[ReductionReport]) -> String {
    let file = ReportFile { instance, reports };
    let mut text = serde_json::to_string_pretty(&file).expect("reports serialize");
    text.push('\n');
    text
}

pub fn write_report(instance: &str, reports: &[ReductionReport], path: &Path) -> Result<(), Error> {
    super::write_atomic(path, &format_report(instance, reports)).map_err(Error::Io)
}
