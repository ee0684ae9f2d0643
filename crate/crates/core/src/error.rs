use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Domain errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The modulus is not an odd prime.
    NotOddPrime(u64),
    /// The modulus is prime but too large for the precomputed tables.
    PrimeTooLarge { p: u64, max: u64 },
    /// A residue that must be invertible is zero modulo `p`.
    ZeroResidue { p: u64 },
    /// A family parameter is zero where the family requires a unit.
    ZeroParameter { name: &'static str },
    /// A parameter in `[0, 1]` was outside that range (or NaN).
    OutOfUnitInterval(f64),
    /// An interval does not fit inside the summation domain.
    InvalidInterval { start: u64, len: u64, p: u64 },
    /// A moment specification is malformed.
    InvalidMomentSpec(&'static str),
    /// A sample passed to a statistic was empty.
    EmptySample,
    /// Requested operation is not supported for this configuration.
    Unsupported(&'static str),
    /// Any other invalid argument.
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotOddPrime(p) => write!(f, "modulus {p} is not an odd prime"),
            Error::PrimeTooLarge { p, max } => {
                write!(f, "prime {p} exceeds the supported table size (max {max})")
            }
            Error::ZeroResidue { p } => write!(f, "residue is zero modulo {p}"),
            Error::ZeroParameter { name } => {
                write!(f, "parameter `{name}` must be nonzero modulo p")
            }
            Error::OutOfUnitInterval(t) => write!(f, "value {t} is outside [0, 1]"),
            Error::InvalidInterval { start, len, p } => write!(
                f,
                "interval starting at {start} of length {len} does not fit the domain for p = {p}"
            ),
            Error::InvalidMomentSpec(msg) => write!(f, "invalid moment spec: {msg}"),
            Error::EmptySample => f.write_str("sample is empty"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check_unit(t: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&t) {
        Ok(t)
    } else {
        Err(Error::OutOfUnitInterval(t))
    }
}
