//! Size limits shared by loaders, checkers and the CLI.

/// Hard ceiling on atoms: elements are stored as `u64` bitmasks.
pub const ATOM_CAPACITY: usize = 64;

/// Hard ceiling on the dimension; indices are printed as single digits in terms.
pub const DIM_CAPACITY: usize = 10;

/// Environment variable overriding [`Limits::max_dim`].
pub const MAX_DIM_ENV: &str = "RELCYL_MAX_DIM";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
    pub max_atoms: usize,
    /// Largest number of variable assignments an exhaustive equation check may visit.
    pub max_assignments: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 6,
            max_atoms: 20,
            max_assignments: 1 << 24,
        }
    }
}

impl Limits {
    /// Defaults, with `RELCYL_MAX_DIM` applied when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(d) = std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.max_dim = d.clamp(2, DIM_CAPACITY);
        }
        limits
    }
}
