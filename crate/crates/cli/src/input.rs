//! Vector input: `--values 1,2,3` or a file with one number per line.

use std::fs;
use std::path::Path;

/// Parses comma-separated numbers; blanks around commas are allowed.
pub fn parse_csv_values(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(parse_number).collect()
}

/// One number per line; blank lines and lines starting with `#` are skipped.
pub fn read_values_file(path: &Path) -> Result<Vec<f64>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_lines(&text)
}

pub fn parse_lines(text: &str) -> Result<Vec<f64>, String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_number)
        .collect()
}

fn parse_number(s: &str) -> Result<f64, String> {
    let t = s.trim();
    t.parse::<f64>().map_err(|_| format!("not a number: `{t}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_values() {
        assert_eq!(
            parse_csv_values("2, 4,-1e-3").unwrap(),
            vec![2.0, 4.0, -1e-3]
        );
        assert!(parse_csv_values("2,,4").is_err());
        assert!(parse_csv_values("two").is_err());
    }

    #[test]
    fn lines_with_comments() {
        let text = "# header\n1.5\n\n  2\n# trailing\n";
        assert_eq!(parse_lines(text).unwrap(), vec![1.5, 2.0]);
    }
}
