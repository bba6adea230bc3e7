//! Exact construction of standard and Jordanian R-matrices, the `q -> 1`
//! contraction between them, and verification of the covariant deformed
//! boson algebras built on the contracted data.

pub mod coupling;
pub mod freealg;
pub mod oscillator;
pub mod qgroup;
pub mod scalar;
pub mod suite;
pub mod tensor;

pub use coupling::{derive_table, CouplingTable, Spinor};
pub use freealg::{Alphabet, BosonForm, FreeElement, RewriteSystem, Word};
pub use oscillator::{FockRep, FockReport};
pub use qgroup::{r_jordanian, r_standard, QGroupError};
pub use scalar::{limit_q_to_1, PolyH, Ring, ScalarError, ScalarQH};
pub use suite::{run_suite, Parameters, Suite, SuiteError, VerificationReport};
pub use tensor::{Matrix, PolyMatrix, RingMatrix};
