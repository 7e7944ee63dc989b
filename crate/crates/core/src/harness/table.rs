//! Spectral mass tables, as aligned text and as CSV.

use crate::boolalg::BoolElem;
use crate::error::Result;
use crate::model::{NoiseModel, RandomVariable};
use crate::scalar::{format_decimal, format_rational, Rational};
use crate::spectrum::{SpectralMeasure, SpectralSpace};

/// Significant digits of the decimal columns.
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRow {
    pub atom: BoolElem,
    pub multiplicity: u64,
    pub canonical_mass: Rational,
    pub spectral_mass: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTable {
    pub vector: String,
    pub rows: Vec<SpectrumRow>,
}

/// One row per atom `M`, in order of `|M|` and then of the cells.
pub fn emit_spectrum_report(model: &NoiseModel, name: &str, psi: &RandomVariable) -> SpectrumTable {
    let space = SpectralSpace::build(model);
    let mu = SpectralMeasure::of(model, psi);
    let mut atoms: Vec<BoolElem> = space.atoms().collect();
    atoms.sort_by_key(|a| (a.count(), a.cells().collect::<Vec<_>>()));
    SpectrumTable {
        vector: name.to_string(),
        rows: atoms
            .into_iter()
            .map(|a| SpectrumRow {
                atom: a,
                multiplicity: space.dim(a),
                canonical_mass: space.mass(a).clone(),
                spectral_mass: mu.mass(a).clone(),
            })
            .collect(),
    }
}

const HEADER: [&str; 6] = [
    "atom",
    "multiplicity",
    "canonical_mass",
    "canonical_mass_decimal",
    "spectral_mass",
    "spectral_mass_decimal",
];

impl SpectrumTable {
    fn cells(&self) -> Vec<[String; 6]> {
        self.rows
            .iter()
            .map(|r| {
                [
                    r.atom.label(),
                    r.multiplicity.to_string(),
                    format_rational(&r.canonical_mass),
                    format_decimal(&r.canonical_mass, DECIMAL_DIGITS),
                    format_rational(&r.spectral_mass),
                    format_decimal(&r.spectral_mass, DECIMAL_DIGITS),
                ]
            })
            .collect()
    }

    pub fn total_mass(&self) -> Rational {
        self.rows.iter().map(|r| &r.spectral_mass).sum()
    }

    pub fn to_text(&self) -> String {
        let body = self.cells();
        let mut widths: Vec<usize> = HEADER.iter().map(|h| h.chars().count()).collect();
        for row in &body {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cols: Vec<&str>| -> String {
            let padded: Vec<String> = cols
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (c, &w))| {
                    let pad = " ".repeat(w - c.chars().count());
                    // the atom column is left aligned, numbers right aligned
                    if i == 0 {
                        format!("{c}{pad}")
                    } else {
                        format!("{pad}{c}")
                    }
                })
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = format!("spectral measure of {}\n", self.vector);
        out.push_str(&line(HEADER.to_vec()));
        out.push('\n');
        for row in &body {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
            out.push('\n');
        }
        out.push_str(&format!("total mass: {}\n", format_rational(&self.total_mass())));
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(HEADER).map_err(std::io::Error::from)?;
        for row in self.cells() {
            w.write_record(&row).map_err(std::io::Error::from)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}
