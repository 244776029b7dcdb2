//! Scenario files and report rendering for the `prym` binary.

pub mod render;
pub mod scenario;

pub use scenario::{Diagnostic, Scenario};

/// Process exit codes.
pub mod exit {
    pub const VALID: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const ENGINE: u8 = 3;
}

use prym_core::Error;

/// Exit code for an engine error. An input without a correspondence (one
/// double coset, or a non-integral exponent) is an invalid presentation,
/// not a malfunction.
pub fn error_exit_code(e: &Error) -> u8 {
    if e.is_resource() {
        return exit::ENGINE;
    }
    if e.is_input() {
        return exit::INPUT;
    }
    match e.root() {
        Error::Structural(_) | Error::NotACharacter(_) => exit::INPUT,
        Error::Degenerate
        | Error::ExponentNotIntegral(_)
        | Error::InconsistentSignature(_)
        | Error::NonzeroQuotientGenus(_) => exit::CHECK_FAILED,
        _ => exit::ENGINE,
    }
}

pub fn diagnostic_exit_code(d: &Diagnostic) -> u8 {
    if d.resource {
        exit::ENGINE
    } else {
        exit::INPUT
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let parse = Error::Parse {
            position: 3,
            message: "x".into(),
        };
        assert_eq!(error_exit_code(&parse), exit::INPUT);
        assert_eq!(error_exit_code(&Error::Degenerate.context("coefficients")), exit::CHECK_FAILED);
        assert_eq!(
            error_exit_code(&Error::TooLarge {
                order: "5040".into(),
                bound: 10
            }),
            exit::ENGINE
        );
        assert_eq!(error_exit_code(&Error::GroupMismatch), exit::ENGINE);
        assert_eq!(error_exit_code(&Error::Structural("s".into())), exit::INPUT);
    }
}
