//! Finite quantum groups: Hopf *-algebras, Haar states, the multiplicative
//! unitary and its dual, and actions of finite groups.

pub mod action;
pub mod builders;
pub mod dual;
pub mod error;
pub mod group;
pub mod haar;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod quantum;
pub mod report;
pub mod tensor;
pub mod unitary;

pub use error::{Error, Result};
pub use group::CayleyTable;
pub use haar::Functional;
pub use hopf::FiniteHopfStarAlgebra;
pub use quantum::FiniteQuantumGroup;
pub use report::{Check, VerificationReport};
pub use tensor::TensorOperator;
pub use unitary::MultiplicativeUnitary;
