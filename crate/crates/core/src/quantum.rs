use crate::error::Result;
use crate::haar::{gns_construct, solve_haar, Functional, GnsData, HaarSolution};
use crate::hopf::FiniteHopfStarAlgebra;

/// A Hopf *-algebra together with its Haar state and GNS space: everything
/// needed to build the multiplicative unitary.
#[derive(Debug, Clone)]
pub struct FiniteQuantumGroup {
    algebra: FiniteHopfStarAlgebra,
    haar: HaarSolution,
    gns: GnsData,
}

impl FiniteQuantumGroup {
    /// Solves for the Haar state and builds `ℋ`. The axioms of `algebra` are
    /// not re-checked here.
    pub fn new(algebra: FiniteHopfStarAlgebra, tol: f64) -> Result<Self> {
        let haar = solve_haar(&algebra, tol)?;
        let gns = gns_construct(&algebra, &haar.functional, tol)?;
        Ok(FiniteQuantumGroup { algebra, haar, gns })
    }

    pub fn algebra(&self) -> &FiniteHopfStarAlgebra {
        &self.algebra
    }

    pub fn haar(&self) -> &Functional {
        &self.haar.functional
    }

    pub fn haar_solution(&self) -> &HaarSolution {
        &self.haar
    }

    pub fn gns(&self) -> &GnsData {
        &self.gns
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}
