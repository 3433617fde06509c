//! MatrixMarket and CSV readers and writers.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// On-disk matrix format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum MatrixFormat {
    /// MatrixMarket when the text starts with the banner or the path ends in `.mtx`, CSV otherwise.
    #[default]
    Auto,
    #[value(alias = "mm")]
    Matrixmarket,
    Csv,
}

const BANNER: &str = "%%MatrixMarket";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>().map_err(|_| parse_err(line, format!("cannot parse {tok:?} as a number")))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("cannot parse {tok:?} as a count")))
}

/// Parse a matrix from text.
pub fn parse_matrix(text: &str, format: MatrixFormat) -> Result<Matrix> {
    match format {
        MatrixFormat::Matrixmarket => parse_matrix_market(text),
        MatrixFormat::Csv => parse_csv(text),
        MatrixFormat::Auto => {
            if text.trim_start().starts_with(BANNER) {
                parse_matrix_market(text)
            } else {
                parse_csv(text)
            }
        }
    }
}

/// Read a matrix from `path`.
pub fn load_matrix(path: impl AsRef<Path>, format: MatrixFormat) -> Result<Matrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let format = match format {
        MatrixFormat::Auto if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("mtx")) => {
            MatrixFormat::Matrixmarket
        }
        f => f,
    };
    parse_matrix(&text, format)
}

/// Write `a` to `path`; `Auto` picks MatrixMarket for `.mtx` paths and CSV otherwise.
///
/// Values are written in shortest round-trip form, so loading the file back is bit-identical.
pub fn save_matrix(path: impl AsRef<Path>, a: &Matrix, format: MatrixFormat) -> Result<()> {
    let path = path.as_ref();
    let text = match format {
        MatrixFormat::Matrixmarket => format_matrix_market(a),
        MatrixFormat::Csv => format_csv(a),
        MatrixFormat::Auto => {
            if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("mtx")) {
                format_matrix_market(a)
            } else {
                format_csv(a)
            }
        }
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// MatrixMarket `array real general` text (column-major values).
pub fn format_matrix_market(a: &Matrix) -> String {
    let mut s = format!("{BANNER} matrix array real general\n{} {}\n", a.nrows(), a.ncols());
    for v in a.iter() {
        let _ = writeln!(s, "{v:?}");
    }
    s
}

/// Headerless comma-separated rows.
pub fn format_csv(a: &Matrix) -> String {
    let mut s = String::new();
    for i in 0..a.nrows() {
        let row: Vec<String> = (0..a.ncols()).map(|j| format!("{:?}", a[(i, j)])).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn parse_csv(text: &str) -> Result<Matrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|t| parse_f64(t.trim(), no + 1))
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(parse_err(no + 1, format!("expected {} fields, found {}", first.len(), row.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(1, "no data rows"));
    }
    let n = rows[0].len();
    Ok(Matrix::from_fn(rows.len(), n, |i, j| rows[i][j]))
}

fn parse_matrix_market(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (no, banner) = lines.find(|(_, l)| !l.is_empty()).ok_or_else(|| parse_err(1, "empty input"))?;
    let words: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != BANNER.to_ascii_lowercase() || words[1] != "matrix" {
        return Err(parse_err(no, "expected \"%%MatrixMarket matrix <format> <field> <symmetry>\""));
    }
    let dense = match words[2].as_str() {
        "array" => true,
        "coordinate" => false,
        other => return Err(parse_err(no, format!("unknown storage format {other:?}"))),
    };
    match words[3].as_str() {
        "real" | "double" | "integer" => {}
        other => return Err(Error::Type(format!("field {other:?} is not real"))),
    }
    if words[4] != "general" {
        return Err(Error::Type(format!("symmetry {:?} is not supported", words[4])));
    }

    let mut data = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (no, size) = data.next().ok_or_else(|| parse_err(no, "missing size line"))?;
    let dims: Vec<usize> = size.split_whitespace().map(|t| parse_usize(t, no)).collect::<Result<_>>()?;
    let expected = if dense { 2 } else { 3 };
    if dims.len() != expected {
        return Err(parse_err(no, format!("size line needs {expected} integers")));
    }
    let (m, n) = (dims[0], dims[1]);
    let mut a = Matrix::zeros(m, n);
    let mut last = no;

    if dense {
        let total = m * n;
        let mut count = 0;
        for (no, line) in data {
            last = no;
            for tok in line.split_whitespace() {
                if count == total {
                    return Err(parse_err(no, format!("more than {total} entries")));
                }
                a[(count % m.max(1), count / m.max(1))] = parse_f64(tok, no)?;
                count += 1;
            }
        }
        if count != total {
            return Err(parse_err(last, format!("expected {total} entries, found {count}")));
        }
    } else {
        let nnz = dims[2];
        let mut count = 0;
        for (no, line) in data {
            last = no;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(parse_err(no, "coordinate entries need \"row col value\""));
            }
            let i = parse_usize(toks[0], no)?;
            let j = parse_usize(toks[1], no)?;
            if i == 0 || i > m || j == 0 || j > n {
                return Err(parse_err(no, format!("index ({i}, {j}) outside {m}x{n}")));
            }
            if count == nnz {
                return Err(parse_err(no, format!("more than {nnz} entries")));
            }
            a[(i - 1, j - 1)] += parse_f64(toks[2], no)?;
            count += 1;
        }
        if count != nnz {
            return Err(parse_err(last, format!("expected {nnz} entries, found {count}")));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn array_is_column_major() {
        let a = parse_matrix("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n", MatrixFormat::Auto).unwrap();
        assert_eq!(a, Matrix::from_row_slice(2, 2, &[1.0, 3.0, 2.0, 4.0]));
    }

    #[test]
    fn csv_rows() {
        let a = parse_matrix("1,2\n3,4", MatrixFormat::Auto).unwrap();
        assert_eq!(a, Matrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]));
    }

    #[test]
    fn coordinate_densified() {
        let text = "%%MatrixMarket matrix coordinate real general\n% note\n3 2 2\n1 1 5\n3 2 -1.5\n";
        let a = parse_matrix(text, MatrixFormat::Matrixmarket).unwrap();
        assert_eq!(a.shape(), (3, 2));
        assert_eq!(a[(0, 0)], 5.0);
        assert_eq!(a[(2, 1)], -1.5);
        assert_eq!(a.iter().filter(|&&v| v != 0.0).count(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_matrix("1,2\n3,x\n", MatrixFormat::Csv) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_matrix("1,2\n3\n", MatrixFormat::Csv) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n";
        assert!(matches!(parse_matrix(text, MatrixFormat::Auto), Err(Error::Parse { line: 3, .. })));
        let text = "%%MatrixMarket matrix array real general\n2 2\n1 2 3\n";
        assert!(matches!(parse_matrix(text, MatrixFormat::Auto), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn non_real_fields_are_type_errors() {
        let text = "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n";
        assert!(matches!(parse_matrix(text, MatrixFormat::Auto), Err(Error::Type(_))));
        let text = "%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n";
        assert!(matches!(parse_matrix(text, MatrixFormat::Auto), Err(Error::Type(_))));
    }

    #[test]
    fn text_round_trip() {
        let a = Matrix::from_row_slice(2, 3, &[0.1, -0.0, 1e-300, 3.0, f64::MAX, -2.5e17]);
        for fmt in [MatrixFormat::Matrixmarket, MatrixFormat::Csv] {
            let text = match fmt {
                MatrixFormat::Csv => format_csv(&a),
                _ => format_matrix_market(&a),
            };
            let b = parse_matrix(&text, fmt).unwrap();
            assert!(a.iter().zip(b.iter()).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }
}
