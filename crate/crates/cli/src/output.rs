//! CSV writer: `#` header lines with the run configuration, a column row,
//! then data rows. Floats carry 12 significant digits.

use std::fmt::Write as _;

use crate::args::{Command, Regime, RunConfig};

pub enum Cell {
    Float(f64),
    Int(u64),
    Text(&'static str),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<&'static str> for Cell {
    fn from(v: &'static str) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(if v { "true" } else { "false" })
    }
}

pub fn float(v: f64) -> String {
    if v == 0.0 {
        // avoid "-0.00000000000e0"
        return format!("{:.11e}", 0.0);
    }
    format!("{v:.11e}")
}

pub struct Csv {
    header: String,
    columns: String,
    body: String,
}

impl Csv {
    pub fn new(command: Command, config: &RunConfig, columns: &[&str]) -> Self {
        let mut header = String::new();
        let regime = match config.regime {
            Regime::Small => "small",
            Regime::Large => "large",
        };
        let _ = writeln!(header, "# command = {}", command.name());
        let _ = writeln!(header, "# gamma = {}", config.gamma);
        let _ = writeln!(header, "# omega = {}", config.omega);
        let _ = writeln!(header, "# regime = {regime}");
        let _ = writeln!(header, "# t_final = {}", config.t_final);
        let _ = writeln!(header, "# dt = {}", config.dt);
        let _ = writeln!(header, "# samples = {}", config.samples);
        let _ = writeln!(header, "# seed = {}", config.seed);
        let _ = writeln!(header, "# tol = {}", config.tol);
        if let Some(state) = &config.state {
            let _ = writeln!(header, "# state = {}", state.display());
        }
        Self {
            header,
            columns: columns.join(","),
            body: String::new(),
        }
    }

    /// Extra `#` header line.
    pub fn note(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.header, "# {}", line.as_ref());
    }

    pub fn row(&mut self, cells: impl IntoIterator<Item = Cell>) {
        let mut first = true;
        for cell in cells {
            if !first {
                self.body.push(',');
            }
            first = false;
            match cell {
                Cell::Float(v) => self.body.push_str(&float(v)),
                Cell::Int(v) => {
                    let _ = write!(self.body, "{v}");
                }
                Cell::Text(s) => self.body.push_str(s),
            }
        }
        self.body.push('\n');
    }

    pub fn finish(self) -> String {
        format!("{}{}\n{}", self.header, self.columns, self.body)
    }
}
