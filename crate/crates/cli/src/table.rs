//! CSV formats: slice tables, sample files and dense curves.

use std::fmt::Write;
use std::io::Read;

use mbspline::rational;
use mbspline::GeneratorSet;

use crate::job::Curve;
use crate::CliError;

/// Float formatting shared by every text output: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per nonzero slice, `generator,k,scale,x0..xD`, where `scale`
/// turns the generator's coefficients into coprime integers.
pub fn slice_csv(gs: &GeneratorSet) -> String {
    let width = gs
        .gens
        .iter()
        .filter_map(|g| g.degree())
        .max()
        .unwrap_or(0)
        .max(gs.max_degree() as usize)
        + 1;
    let mut out = String::from("generator,k,scale");
    for i in 0..width {
        let _ = write!(out, ",x{i}");
    }
    out.push('\n');
    for (q, g) in gs.gens.iter().enumerate() {
        let scale = g.primitive_scale();
        for (k, piece) in g.scale(&scale).slices() {
            let _ = write!(out, "{},{k},{}", q + 1, rational::display(&scale));
            for i in 0..width {
                let _ = write!(out, ",{}", rational::display(&piece.coeff(i)));
            }
            out.push('\n');
        }
    }
    out
}

/// Samples read from `k,g1..gN`: the first index and one vector per channel.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Samples {
    pub start: i64,
    pub channels: Vec<Vec<f64>>,
}

pub fn read_samples(reader: impl Read) -> Result<Samples, CliError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.get(0) != Some("k") || headers.len() < 2 {
        return Err(CliError::Usage("samples header must be `k,g1,...,gN`".into()));
    }
    let n = headers.len() - 1;
    let mut samples = Samples {
        start: 0,
        channels: vec![Vec::new(); n],
    };
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        let bad = |what: &str| CliError::Usage(format!("samples row {}: {what}", row + 1));
        let k: i64 = record[0].parse().map_err(|_| bad("k is not an integer"))?;
        if row == 0 {
            samples.start = k;
        } else if k != samples.start + row as i64 {
            return Err(bad("k must increase by one per row"));
        }
        for (p, field) in record.iter().skip(1).enumerate() {
            samples.channels[p].push(field.parse().map_err(|_| bad("value is not a number"))?);
        }
    }
    Ok(samples)
}

/// `x,y` for one dimension, `x,y1,..,yD` for parametric curves.
pub fn curve_csv(curve: &Curve) -> String {
    let mut out = String::from("x");
    match curve.y.len() {
        1 => out.push_str(",y"),
        d => (1..=d).for_each(|i| {
            let _ = write!(out, ",y{i}");
        }),
    }
    out.push('\n');
    for (i, x) in curve.x.iter().enumerate() {
        out.push_str(&fmt_f64(*x));
        for y in &curve.y {
            out.push(',');
            out.push_str(&fmt_f64(y[i]));
        }
        out.push('\n');
    }
    out
}
