use crate::logic::Sequent;

use super::audit;

/// A sequent certified by the kernel.
///
/// There is no public constructor: every value is the output of one of the
/// primitive rules in this module, so anything holding a `Theorem` holds a
/// valid sequent as long as the rules are sound.
///
/// ```compile_fail
/// use ootp_core::kernel::Theorem;
/// use ootp_core::logic::Sequent;
/// let forged = Theorem { sequent: Sequent::default(), origin: "forged" };
/// ```
///
/// ```compile_fail
/// use ootp_core::kernel::Theorem;
/// let forged: Theorem = Default::default();
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem {
    sequent: Sequent,
    origin: &'static str,
}

impl Theorem {
    pub(in crate::kernel) fn certify(sequent: Sequent, origin: &'static str) -> Theorem {
        audit::record(&sequent);
        Theorem { sequent, origin }
    }

    pub fn sequent(&self) -> &Sequent {
        &self.sequent
    }

    /// Name of the last rule applied, for debugging.
    pub fn origin(&self) -> &'static str {
        self.origin
    }

    pub fn is_closed(&self) -> bool {
        self.sequent.metas().is_empty()
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.sequent)
    }
}
