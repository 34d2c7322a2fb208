//! File formats and the command-line driver: MPS input, SDPA sparse output,
//! JSON reduction reports, and the CLI entry point.

pub mod cli;
pub mod mps;
pub mod report;
pub mod sdpa;

use std::io::Write;
use std::path::Path;

/// Writes a file atomically: the content lands under a temporary name in
/// the target directory and is renamed into place.
pub(crate) fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = path.file_name().map_or_else(
        || std::ffi::OsString::from(".tmp"),
        |n| {
            let mut t = n.to_os_string();
            t.push(".tmp");
            t
        },
    );
    tmp.push(format!(".{}", std::process::id()));
    let tmp_path = dir.join(tmp);
    {
        let mut f = std::fs::File::create(&tmp_path)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp_path, path)
}
