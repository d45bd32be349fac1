use serde::Serialize;

/// Size guards. Exceeding any of them is reported as
/// [`Error::GuardExceeded`](crate::Error::GuardExceeded) instead of running on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Order of any semigroup whose power semigroup is taken.
    pub max_order: usize,
    pub max_complex_size: usize,
    pub max_group_size: usize,
    pub max_states: usize,
    /// Elements of any generated transformation semigroup.
    pub max_transformations: usize,
    /// Elements times degree of any generated transformation semigroup.
    pub max_transformation_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 8,
            max_complex_size: 4096,
            max_group_size: 100_000,
            max_states: 100_000,
            max_transformations: 2_000_000,
            max_transformation_cells: 50_000_000,
        }
    }
}
