//! Dense operator dump: one JSON header line, then the matrix row-major as
//! little-endian `f64` (re, im) pairs.

use std::io::{BufRead, Write};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::operators::{Basis, CMatrix, FiniteSectionOperator};
use crate::scalar::{lit, to_f64, Real};

pub const LAYOUT: &str = "row-major";
pub const ENCODING: &str = "complex-f64-le";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpHeader {
    pub model: String,
    pub basis: String,
    pub dimension: usize,
    /// Scalar type the operator was computed in; entries are always stored as `f64`.
    pub scalar: String,
    pub layout: String,
    pub encoding: String,
}

fn io_error(e: std::io::Error) -> Error {
    Error::Precondition(format!("dump i/o: {e}"))
}

pub fn write_operator<T: Real, W: Write>(op: &FiniteSectionOperator<T>, mut out: W) -> Result<()> {
    let header = DumpHeader {
        model: op.model().to_string(),
        basis: op.basis().to_string(),
        dimension: op.dim(),
        scalar: T::NAME.to_string(),
        layout: LAYOUT.to_string(),
        encoding: ENCODING.to_string(),
    };
    let line = serde_json::to_string(&header).expect("header serializes");
    writeln!(out, "{line}").map_err(io_error)?;
    let mut bytes = Vec::with_capacity(op.dim() * op.dim() * 16);
    for row in op.matrix().row_iter() {
        for z in row.iter() {
            bytes.extend_from_slice(&to_f64(z.re).to_le_bytes());
            bytes.extend_from_slice(&to_f64(z.im).to_le_bytes());
        }
    }
    out.write_all(&bytes).map_err(io_error)
}

pub fn read_operator<T: Real, R: BufRead>(mut input: R) -> Result<(DumpHeader, FiniteSectionOperator<T>)> {
    let mut line = String::new();
    input.read_line(&mut line).map_err(io_error)?;
    let header: DumpHeader = serde_json::from_str(line.trim_end())
        .map_err(|e| crate::text::parse_error(line.trim_end(), &e.to_string()))?;
    if header.layout != LAYOUT || header.encoding != ENCODING {
        return Err(Error::Precondition(format!(
            "unsupported dump layout {} / {}",
            header.layout, header.encoding
        )));
    }
    let model: GroupModel<T> = header.model.parse()?;
    let basis: Basis = header.basis.parse()?;
    let n = header.dimension;
    let mut bytes = vec![0u8; n * n * 16];
    input.read_exact(&mut bytes).map_err(io_error)?;
    let mut values = bytes.chunks_exact(8).map(|c| {
        let x = f64::from_le_bytes(c.try_into().expect("eight bytes"));
        lit::<T>(x)
    });
    let mut matrix = CMatrix::from_element(n, n, Complex::new(T::zero(), T::zero()));
    for r in 0..n {
        for c in 0..n {
            let re = values.next().expect("sized buffer");
            let im = values.next().expect("sized buffer");
            matrix[(r, c)] = Complex::new(re, im);
        }
    }
    let op = FiniteSectionOperator::new(model, basis, matrix)?;
    Ok((header, op))
}
