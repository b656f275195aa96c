use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter {name} = {value} is out of range (must be at least {min})")]
    ParameterRange {
        name: &'static str,
        value: u64,
        min: u64,
    },

    #[error("index pair (l = {l}, r = {r}) must satisfy l > r >= 0")]
    IndexOrder { l: usize, r: usize },

    #[error("n = {n} exceeds the supported tuple length of 63")]
    TupleTooLong { n: usize },

    #[error("graph would have {vertices} vertices, above the cap of {cap}")]
    SizeCap { vertices: u128, cap: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    /// Two vertices of the same cell see different numbers of neighbours in
    /// another cell.
    #[error(
        "partition is not equitable: cell {row_cell} -> cell {col_cell}, \
         vertex {first} has {first_count} neighbours but vertex {second} has {second_count}"
    )]
    NotEquitable {
        row_cell: usize,
        col_cell: usize,
        first: usize,
        first_count: usize,
        second: usize,
        second_count: usize,
    },

    /// A closed-form walk entry failed to reduce to an integer. This is an
    /// internal invariant violation, never a user error.
    #[error("closed-form walk entry ({row}, {col}) is not integral: {value}")]
    NonIntegral { row: usize, col: usize, value: String },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error(
        "eigenvalue {eigenvalue} has projection {projection:e} inside the ambiguity band \
         [{low:e}, {high:e}]"
    )]
    AmbiguousClassification {
        eigenvalue: f64,
        projection: f64,
        low: f64,
        high: f64,
    },

    #[error("spectrum mismatch in {check}: {detail}")]
    Mismatch { check: &'static str, detail: String },

    #[error("det(Q + λI) is not zero for i = {index}: residual {residual}")]
    NonzeroDeterminant { index: usize, residual: String },
}

pub(crate) fn check_min(name: &'static str, value: u64, min: u64) -> Result<()> {
    if value < min {
        Err(Error::ParameterRange { name, value, min })
    } else {
        Ok(())
    }
}
