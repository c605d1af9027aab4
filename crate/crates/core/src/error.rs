use thiserror::Error;

/// Failures of the kernel's partial operations.
///
/// An invalid term is not an error: validity is reported through
/// [`crate::checker::ValidityReport`]. These are the cases where an answer
/// could not be computed at all.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("fuel exhausted")]
    FuelExhausted,
    #[error("no t-step applies to the head of the term")]
    NoTypeStep,
    #[error("head reference is not bound by a declaration or a definition")]
    OpenHead,
    #[error("application whose function reduces to a sort")]
    StuckApplication,
    #[error("term has no arity")]
    NoArity,
    #[error("term is not valid")]
    Invalid,
}

pub type Result<T> = std::result::Result<T, KernelError>;

/// A reduction budget, counted in rule applications.
#[derive(Debug)]
pub(crate) struct Budget {
    left: u64,
}

impl Budget {
    pub(crate) fn new(fuel: u64) -> Budget {
        Budget { left: fuel }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(KernelError::FuelExhausted);
        }
        self.left -= 1;
        Ok(())
    }
}

/// Default fuel for a closure of `size` constructors: `10 * size^2`.
pub fn default_fuel(size: usize) -> u64 {
    let s = size.max(1) as u64;
    10 * s * s
}
