//! MPS reader and canonical writer for mixed-binary programs.
//!
//! Both fixed and free layouts are accepted: lines are tokenized on
//! whitespace, a non-indented line opens a section, and names therefore
//! must not contain blanks (MIPLIB files comply). Supported sections:
//! NAME, OBJSENSE, ROWS (N/L/G/E), COLUMNS with INTORG/INTEND markers,
//! RHS, RANGES and BOUNDS (UP LO FX FR BV MI PL UI LI).
//!
//! Integer variables default to bounds [0, 1]; explicit BOUNDS entries
//! override. Integer variables whose final bounds leave [0, 1] make the
//! instance unsupported, mirroring the binary-only scope of the pipeline.

use std::collections::HashMap;
use std::path::Path;

use crate::model::{MixedBinaryProgram, ObjectiveSense, Row, Sense};
use crate::Error;

pub fn read_mps(path: &Path) -> Result<MixedBinaryProgram, Error> {
    let text = std::fs::read_to_string(path)?;
    let fallback = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "unnamed".to_string());
    parse_mps(&text, &fallback)
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Name,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
}

struct ColumnData {
    name: String,
    integer: bool,
    obj: f64,
    entries: Vec<(usize, f64)>, // (row index, coefficient)
    lower: Option<f64>,
    upper: Option<f64>,
}

struct RowData {
    sense: Sense,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_mps(text: &str, fallback_name: &str) -> Result<MixedBinaryProgram, Error> {
    let mut section = Section::None;
    let mut name = fallback_name.to_string();
    let mut objsense = ObjectiveSense::Min;
    let mut obj_row: Option<String> = None;
    let mut obj_offset = 0.0;
    let mut rows: Vec<RowData> = Vec::new();
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut cols: Vec<ColumnData> = Vec::new();
    let mut col_index: HashMap<String, usize> = HashMap::new();
    let mut rhs: Vec<f64> = Vec::new();
    let mut ranges: Vec<Option<f64>> = Vec::new();
    let mut free_rows: Vec<String> = Vec::new();
    let mut integer_mode = false;

    for (lineno0, raw) in text.lines().enumerate() {
        let lineno = lineno0 + 1;
        if raw.trim_start().starts_with('*') || raw.trim().is_empty() {
            continue;
        }
        let indented = raw.starts_with(' ') || raw.starts_with('\t');
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if !indented {
            match fields[0].to_ascii_uppercase().as_str() {
                "NAME" => {
                    if let Some(n) = fields.get(1) {
                        name = n.to_string();
                    }
                    section = Section::Name;
                }
                "OBJSENSE" => {
                    section = Section::ObjSense;
                    if let Some(v) = fields.get(1) {
                        objsense = parse_objsense(v, lineno)?;
                    }
                }
                "ROWS" => section = Section::Rows,
                "COLUMNS" => section = Section::Columns,
                "RHS" => section = Section::Rhs,
                "RANGES" => section = Section::Ranges,
                "BOUNDS" => section = Section::Bounds,
                "ENDATA" => break,
                other => return Err(parse_err(lineno, format!("unknown section `{other}`"))),
            }
            continue;
        }
        match section {
            Section::ObjSense => {
                objsense = parse_objsense(fields[0], lineno)?;
            }
            Section::Rows => {
                let [kind, rname] = fields[..] else {
                    return Err(parse_err(lineno, "ROWS lines carry a type and a name"));
                };
                match kind.to_ascii_uppercase().as_str() {
                    "N" => {
                        if obj_row.is_none() {
                            obj_row = Some(rname.to_string());
                        } else {
                            free_rows.push(rname.to_string());
                        }
                    }
                    k => {
                        let sense = match k {
                            "L" => Sense::Le,
                            "G" => Sense::Ge,
                            "E" => Sense::Eq,
                            _ => return Err(parse_err(lineno, format!("bad row type `{kind}`"))),
                        };
                        row_index.insert(rname.to_string(), rows.len());
                        rows.push(RowData { sense });
                        rhs.push(0.0);
                        ranges.push(None);
                    }
                }
            }
            Section::Columns => {
                if fields.len() >= 3 && fields[1].contains("MARKER") {
                    let flag = fields[2].trim_matches('\'');
                    match flag {
                        "INTORG" => integer_mode = true,
                        "INTEND" => integer_mode = false,
                        _ => return Err(parse_err(lineno, format!("bad marker `{flag}`"))),
                    }
                    continue;
                }
                let cname = fields[0];
                let ci = *col_index.entry(cname.to_string()).or_insert_with(|| {
                    cols.push(ColumnData {
                        name: cname.to_string(),
                        integer: integer_mode,
                        obj: 0.0,
                        entries: Vec::new(),
                        lower: None,
                        upper: None,
                    });
                    cols.len() - 1
                });
                if integer_mode {
                    cols[ci].integer = true;
                }
                for pair in fields[1..].chunks(2) {
                    let [rname, val] = pair else {
                        return Err(parse_err(lineno, "odd row/value pairing"));
                    };
                    let v: f64 = val
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad number `{val}`")))?;
                    if Some(*rname) == obj_row.as_deref() {
                        cols[ci].obj += v;
                    } else if let Some(&ri) = row_index.get(*rname) {
                        cols[ci].entries.push((ri, v));
                    } else if !free_rows.iter().any(|f| f == rname) {
                        return Err(parse_err(lineno, format!("unknown row `{rname}`")));
                    }
                }
            }
            Section::Rhs => {
                // fields[0] is the rhs-set name
                for pair in fields[1..].chunks(2) {
                    let [rname, val] = pair else {
                        return Err(parse_err(lineno, "odd row/value pairing"));
                    };
                    let v: f64 = val
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad number `{val}`")))?;
                    if Some(*rname) == obj_row.as_deref() {
                        obj_offset = -v;
                    } else if let Some(&ri) = row_index.get(*rname) {
                        rhs[ri] = v;
                    } else if !free_rows.iter().any(|f| f == rname) {
                        return Err(parse_err(lineno, format!("unknown row `{rname}`")));
                    }
                }
            }
            Section::Ranges => {
                for pair in fields[1..].chunks(2) {
                    let [rname, val] = pair else {
                        return Err(parse_err(lineno, "odd row/value pairing"));
                    };
                    let v: f64 = val
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad number `{val}`")))?;
                    let &ri = row_index
                        .get(*rname)
                        .ok_or_else(|| parse_err(lineno, format!("unknown row `{rname}`")))?;
                    ranges[ri] = Some(v);
                }
            }
            Section::Bounds => {
                let kind = fields[0].to_ascii_uppercase();
                let cname = fields
                    .get(2)
                    .ok_or_else(|| parse_err(lineno, "BOUNDS lines carry type, set, column"))?;
                let &ci = col_index
                    .get(*cname)
                    .ok_or_else(|| parse_err(lineno, format!("unknown column `{cname}`")))?;
                let value = || -> Result<f64, Error> {
                    fields
                        .get(3)
                        .ok_or_else(|| parse_err(lineno, "missing bound value"))?
                        .parse()
                        .map_err(|_| parse_err(lineno, "bad bound value"))
                };
                match kind.as_str() {
                    "LO" => cols[ci].lower = Some(value()?),
                    "UP" => {
                        let v = value()?;
                        cols[ci].upper = Some(v);
                        // classic quirk: a negative upper bound on a column
                        // with default lower bound drops the lower to -inf
                        if v < 0.0 && cols[ci].lower.is_none() && !cols[ci].integer {
                            cols[ci].lower = Some(f64::NEG_INFINITY);
                        }
                    }
                    "FX" => {
                        let v = value()?;
                        cols[ci].lower = Some(v);
                        cols[ci].upper = Some(v);
                    }
                    "FR" => {
                        cols[ci].lower = Some(f64::NEG_INFINITY);
                        cols[ci].upper = Some(f64::INFINITY);
                    }
                    "MI" => cols[ci].lower = Some(f64::NEG_INFINITY),
                    "PL" => cols[ci].upper = Some(f64::INFINITY),
                    "BV" => {
                        cols[ci].integer = true;
                        cols[ci].lower = Some(0.0);
                        cols[ci].upper = Some(1.0);
                    }
                    "LI" => {
                        cols[ci].integer = true;
                        cols[ci].lower = Some(value()?);
                    }
                    "UI" => {
                        cols[ci].integer = true;
                        cols[ci].upper = Some(value()?);
                    }
                    other => return Err(parse_err(lineno, format!("bad bound type `{other}`"))),
                }
            }
            Section::Name | Section::None => {
                return Err(parse_err(lineno, "data line outside a section"))
            }
        }
    }

    // assemble the program
    let nvars = cols.len();
    let mut program = MixedBinaryProgram::new(nvars, &name);
    program.objective_sense = objsense;
    program.objective_offset = obj_offset;
    let mut binary = Vec::new();
    for (ci, col) in cols.iter().enumerate() {
        program.objective[ci] = col.obj;
        let (lo, up) = if col.integer {
            (col.lower.unwrap_or(0.0), col.upper.unwrap_or(1.0))
        } else {
            (col.lower.unwrap_or(0.0), col.upper.unwrap_or(f64::INFINITY))
        };
        if col.integer {
            if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&up) {
                return Err(Error::UnsupportedInstance(format!(
                    "integer variable `{}` has bounds [{lo}, {up}] outside [0, 1]",
                    col.name
                )));
            }
            binary.push(ci);
        }
        program.lower[ci] = lo;
        program.upper[ci] = up;
    }
    program.binary_set = binary;

    // base rows in declaration order
    let mut row_coeffs: Vec<Vec<(usize, f64)>> = vec![Vec::new(); rows.len()];
    for (ci, col) in cols.iter().enumerate() {
        for &(ri, v) in &col.entries {
            row_coeffs[ri].push((ci, v));
        }
    }
    for (ri, row) in rows.iter().enumerate() {
        let (sense, base_rhs) = match (row.sense, ranges[ri]) {
            (s, None) => (s, rhs[ri]),
            // a ranged E row becomes the interval [min, max]; emit the upper
            // side in place and the flipped lower side as a companion below
            (Sense::Eq, Some(r)) => (Sense::Le, rhs[ri] + r.max(0.0)),
            (s, Some(_)) => (s, rhs[ri]),
        };
        program
            .rows
            .push(Row::new(row_coeffs[ri].clone(), sense, base_rhs));
    }
    // companion rows from RANGES, appended in row order
    for (ri, row) in rows.iter().enumerate() {
        let Some(range) = ranges[ri] else { continue };
        let flipped: Vec<(usize, f64)> = row_coeffs[ri].iter().map(|&(j, v)| (j, -v)).collect();
        match row.sense {
            // L row with range: lower side  -a x <= -(b - |r|)
            Sense::Le => program.rows.push(Row::new(
                flipped,
                Sense::Le,
                -(rhs[ri] - range.abs()),
            )),
            // G row with range: upper side  a x <= b + |r|
            Sense::Ge => program.rows.push(Row::new(
                row_coeffs[ri].clone(),
                Sense::Le,
                rhs[ri] + range.abs(),
            )),
            // E row with range r: interval [b + min(r,0), b + max(r,0)]
            Sense::Eq => program.rows.push(Row::new(
                flipped,
                Sense::Le,
                -(rhs[ri] + range.min(0.0)),
            )),
        }
    }
    Ok(program)
}

fn parse_objsense(token: &str, lineno: usize) -> Result<ObjectiveSense, Error> {
    match token.to_ascii_uppercase().as_str() {
        "MIN" | "MINIMIZE" => Ok(ObjectiveSense::Min),
        "MAX" | "MAXIMIZE" => Ok(ObjectiveSense::Max),
        other => Err(parse_err(lineno, format!("bad objective sense `{other}`"))),
    }
}

/// Canonical MPS dump of a program; `read_mps` on the output reproduces an
/// equivalent program (same variables, bounds, binary set and rows).
pub fn format_mps(program: &MixedBinaryProgram) -> String {
    let mut out = String::new();
    let var = |j: usize| format!("x{j}");
    let row = |i: usize| format!("c{i}");
    out.push_str(&format!("NAME {}\n", program.name.replace(' ', "_")));
    out.push_str("OBJSENSE\n");
    out.push_str(match program.objective_sense {
        ObjectiveSense::Min => "    MIN\n",
        ObjectiveSense::Max => "    MAX\n",
    });
    out.push_str("ROWS\n N  obj\n");
    for (i, r) in program.rows.iter().enumerate() {
        let kind = match r.sense {
            Sense::Le => 'L',
            Sense::Ge => 'G',
            Sense::Eq => 'E',
        };
        out.push_str(&format!(" {kind}  {}\n", row(i)));
    }
    out.push_str("COLUMNS\n");
    let mut integer_mode = false;
    for j in 0..program.nvars {
        let is_int = program.is_binary(j);
        if is_int != integer_mode {
            let flag = if is_int { "INTORG" } else { "INTEND" };
            out.push_str(&format!("    MARKER                 'MARKER'                 '{flag}'\n"));
            integer_mode = is_int;
        }
        let mut wrote = false;
        if program.objective[j] != 0.0 {
            out.push_str(&format!("    {}  obj  {}\n", var(j), program.objective[j]));
            wrote = true;
        }
        for (i, r) in program.rows.iter().enumerate() {
            for &(col, v) in &r.coeffs {
                if col == j && v != 0.0 {
                    out.push_str(&format!("    {}  {}  {}\n", var(j), row(i), v));
                    wrote = true;
                }
            }
        }
        if !wrote {
            out.push_str(&format!("    {}  obj  0\n", var(j)));
        }
    }
    if integer_mode {
        out.push_str("    MARKER                 'MARKER'                 'INTEND'\n");
    }
    out.push_str("RHS\n");
    if program.objective_offset != 0.0 {
        out.push_str(&format!("    rhs  obj  {}\n", -program.objective_offset));
    }
    for (i, r) in program.rows.iter().enumerate() {
        if r.rhs != 0.0 {
            out.push_str(&format!("    rhs  {}  {}\n", row(i), r.rhs));
        }
    }
    out.push_str("BOUNDS\n");
    for j in 0..program.nvars {
        let (lo, up) = (program.lower[j], program.upper[j]);
        if program.is_binary(j) && lo == 0.0 && up == 1.0 {
            out.push_str(&format!(" BV bnd  {}\n", var(j)));
            continue;
        }
        if lo == up {
            out.push_str(&format!(" FX bnd  {}  {lo}\n", var(j)));
            continue;
        }
        if lo.is_infinite() && up.is_infinite() {
            out.push_str(&format!(" FR bnd  {}\n", var(j)));
            continue;
        }
        if lo.is_infinite() {
            out.push_str(&format!(" MI bnd  {}\n", var(j)));
        } else if lo != 0.0 {
            out.push_str(&format!(" LO bnd  {}  {lo}\n", var(j)));
        }
        if up.is_finite() {
            out.push_str(&format!(" UP bnd  {}  {up}\n", var(j)));
        }
    }
    out.push_str("ENDATA\n");
    out
}

pub fn write_mps(program: &MixedBinaryProgram, path: &Path) -> Result<(), Error> {
    super::write_atomic(path, &format_mps(program)).map_err(Error::Io)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
NAME tiny
ROWS
 N  cost
 L  r1
COLUMNS
    x1  cost  1.0  r1  1.0
RHS
    rhs  r1  1.0
BOUNDS
 BV bnd  x1
ENDATA
";

    #[test]
    fn minimal_binary_column() {
        let p = parse_mps(MINIMAL, "tiny").unwrap();
        assert_eq!(p.nvars, 1);
        assert_eq!(p.binary_set, vec![0]);
        assert_eq!(p.lower, vec![0.0]);
        assert_eq!(p.upper, vec![1.0]);
        assert_eq!(p.rows.len(), 1);
        assert_eq!(p.objective, vec![1.0]);
    }

    const RANGED: &str = "\
NAME ranged
ROWS
 N  cost
 L  r1
 G  r2
 E  r3
COLUMNS
    x1  r1  1.0  r2  1.0
    x1  r3  1.0
RHS
    rhs  r1  4.0  r2  1.0
    rhs  r3  2.0
RANGES
    rng  r1  2.0  r2  3.0
    rng  r3  1.5
ENDATA
";

    #[test]
    fn ranges_expand_to_row_pairs() {
        let p = parse_mps(RANGED, "ranged").unwrap();
        // 3 base rows + 3 companions
        assert_eq!(p.rows.len(), 6);
        // L row r1 with range 2: x <= 4 and -x <= -(4 - 2)
        assert_eq!(p.rows[0].sense, Sense::Le);
        assert_eq!(p.rows[0].rhs, 4.0);
        assert_eq!(p.rows[3].sense, Sense::Le);
        assert_eq!(p.rows[3].coeffs, vec![(0, -1.0)]);
        assert_eq!(p.rows[3].rhs, -2.0);
        // G row r2 with range 3: x >= 1 and x <= 4
        assert_eq!(p.rows[1].sense, Sense::Ge);
        assert_eq!(p.rows[4].sense, Sense::Le);
        assert_eq!(p.rows[4].rhs, 4.0);
        // E row r3 with range 1.5: interval [2, 3.5]
        assert_eq!(p.rows[2].sense, Sense::Le);
        assert_eq!(p.rows[2].rhs, 3.5);
        assert_eq!(p.rows[5].rhs, -2.0);
    }

    #[test]
    fn negative_range_on_equality_row() {
        let text = "\
NAME negr
ROWS
 N  cost
 E  r1
COLUMNS
    x1  r1  1.0
RHS
    rhs  r1  2.0
RANGES
    rng  r1  -1.5
ENDATA
";
        let p = parse_mps(text, "negr").unwrap();
        // interval [0.5, 2.0]: upper side in place, flipped lower appended
        assert_eq!(p.rows.len(), 2);
        assert_eq!(p.rows[0].sense, Sense::Le);
        assert_eq!(p.rows[0].rhs, 2.0);
        assert_eq!(p.rows[1].coeffs, vec![(0, -1.0)]);
        assert_eq!(p.rows[1].rhs, -0.5);
    }

    #[test]
    fn extra_objective_rows_are_ignored() {
        let text = "\
NAME twofree
ROWS
 N  cost
 N  other
 L  r1
COLUMNS
    x1  cost  1.0  other  9.0
    x1  r1  1.0
RHS
    rhs  r1  1.0
ENDATA
";
        let p = parse_mps(text, "twofree").unwrap();
        assert_eq!(p.rows.len(), 1);
        assert_eq!(p.objective, vec![1.0]);
    }

    #[test]
    fn general_integer_rejected() {
        let text = "\
NAME genint
ROWS
 N  cost
 L  r1
COLUMNS
    MARKER                 'MARKER'                 'INTORG'
    x1  r1  1.0
    MARKER                 'MARKER'                 'INTEND'
RHS
BOUNDS
 UI bnd  x1  5
ENDATA
";
        assert!(matches!(
            parse_mps(text, "genint"),
            Err(Error::UnsupportedInstance(_))
        ));
    }

    #[test]
    fn marker_vars_default_to_binary_bounds() {
        let text = "\
NAME marked
ROWS
 N  cost
 L  r1
COLUMNS
    MARKER                 'MARKER'                 'INTORG'
    x1  r1  1.0
    MARKER                 'MARKER'                 'INTEND'
    y1  r1  2.0
RHS
    rhs  r1  3.0
ENDATA
";
        let p = parse_mps(text, "marked").unwrap();
        assert_eq!(p.binary_set, vec![0]);
        assert_eq!(p.upper[0], 1.0);
        // continuous default [0, inf)
        assert_eq!(p.lower[1], 0.0);
        assert!(p.upper[1].is_infinite());
    }

    #[test]
    fn bound_types_apply() {
        let text = "\
NAME bounds
ROWS
 N  cost
 L  r1
COLUMNS
    a  r1  1.0
    b  r1  1.0
    c  r1  1.0
    d  r1  1.0
RHS
BOUNDS
 FR bnd  a
 MI bnd  b
 UP bnd  b  7
 FX bnd  c  2.5
 UP bnd  d  -1.0
ENDATA
";
        let p = parse_mps(text, "bounds").unwrap();
        assert!(p.lower[0].is_infinite() && p.upper[0].is_infinite());
        assert!(p.lower[1].is_infinite());
        assert_eq!(p.upper[1], 7.0);
        assert_eq!((p.lower[2], p.upper[2]), (2.5, 2.5));
        // negative UP with default lower releases the lower bound
        assert!(p.lower[3].is_infinite());
        assert_eq!(p.upper[3], -1.0);
    }

    #[test]
    fn objsense_and_offset() {
        let text = "\
NAME sense
OBJSENSE
    MAX
ROWS
 N  cost
 L  r1
COLUMNS
    x1  cost  2.0  r1  1.0
RHS
    rhs  cost  5.0  r1  1.0
ENDATA
";
        let p = parse_mps(text, "sense").unwrap();
        assert_eq!(p.objective_sense, ObjectiveSense::Max);
        assert_eq!(p.objective_offset, -5.0);
    }

    #[test]
    fn parse_error_carries_line() {
        let text = "NAME x\nROWS\n Q  r1\n";
        match parse_mps(text, "x") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn canonical_dump_reparses() {
        let p = parse_mps(RANGED, "ranged").unwrap();
        let q = parse_mps(&format_mps(&p), "ranged").unwrap();
        assert_eq!(p.nvars, q.nvars);
        assert_eq!(p.binary_set, q.binary_set);
        assert_eq!(p.rows.len(), q.rows.len());
        for (a, b) in p.rows.iter().zip(&q.rows) {
            assert_eq!(a.sense, b.sense);
            assert_eq!(a.rhs, b.rhs);
            assert_eq!(a.coeffs, b.coeffs);
        }
    }
}
