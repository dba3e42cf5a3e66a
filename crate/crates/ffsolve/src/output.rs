//! CSV emission: every file carries a two-line header (a `#` config echo
//! plus the column names) and prints values at 6 decimals, the source
//! tables' precision.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

pub fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

/// Filename-safe rendering of a numeric parameter (0.02 -> "0p02").
pub fn slug(x: f64) -> String {
    let mut s = format!("{x}");
    if s.contains('e') || s.contains('E') {
        s = format!("{x:.9}");
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s.replace('.', "p").replace('-', "m")
}

pub fn write_csv(path: &Path, config_echo: &str, columns: &str, rows: &[String]) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut file = fs::File::create(path)?;
    writeln!(file, "# {config_echo}")?;
    writeln!(file, "{columns}")?;
    for row in rows {
        writeln!(file, "{row}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs_are_filename_safe() {
        assert_eq!(slug(0.2), "0p2");
        assert_eq!(slug(0.02), "0p02");
        assert_eq!(slug(0.002), "0p002");
        assert_eq!(slug(0.0125), "0p0125");
        assert_eq!(slug(-1.5), "m1p5");
    }

    #[test]
    fn fmt6_fixed_width_decimals() {
        assert_eq!(fmt6(0.5), "0.500000");
        assert_eq!(fmt6(-0.9187), "-0.918700");
    }
}
