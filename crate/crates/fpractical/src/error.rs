use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// `factorize(0)` and friends.
    #[error("n must be a positive integer")]
    ZeroInput,

    /// Inputs are restricted to the signed 64-bit range.
    #[error("{0} is out of range (n must be < 2^63)")]
    OutOfRange(u64),

    /// An `S_f` value or subset sum exceeded 128 bits, or a single function
    /// value exceeded 64 bits. Never silently wrapped.
    #[error("arithmetic overflow while evaluating {context}")]
    Overflow { context: &'static str },

    #[error("{p} is not coprime to {n}")]
    NotCoprime { n: u64, p: u64 },

    #[error("sieve limit {requested} exceeds the memory guard {guard}")]
    SieveLimit { requested: u64, guard: u64 },

    #[error("n = {n} exceeds the dynamic-programming bound {bound}")]
    DpBound { n: u64, bound: u64 },

    #[error("unknown function '{0}'")]
    UnknownFunction(String),

    #[error("function '{name}' requires --param {what}")]
    MissingParameter { name: String, what: &'static str },

    #[error("invalid parameter for '{name}': {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),

    /// The greedy prime search ran out of primes below the bound without
    /// landing inside the requested tolerance.
    #[error("no parameter found with primes up to {bound} achieving the target density")]
    DensityTargetUnreachable { bound: u64 },

    /// A caller-checked precondition was violated and detected after the
    /// fact (e.g. the greedy representation failed verification).
    #[error("contract breach: {0}")]
    Contract(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
