//! The parametrized families R_k, S_k and the five-vertex chain: symbolic
//! quiver representations whose free parameters rationally parametrize the
//! simple representations of their quiver settings.

use super::{Quiver, QuiverError, QuiverRep};
use crate::gadgets::{
    basis_column, companion, generic, padded_identity, AffineEntry, ParameterRegistry,
    reduced_companion, SymbolicMatrix,
};
use crate::scalars::Field;

/// A quiver representation with symbolic (affine-in-parameters) matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SymQuiverRep {
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub mats: Vec<SymbolicMatrix>,
}

impl SymQuiverRep {
    pub fn instantiate<F: Field>(
        &self,
        field: &F,
        values: &[F::Elem],
    ) -> Result<QuiverRep<F>, QuiverError> {
        let mats = self
            .mats
            .iter()
            .map(|m| m.instantiate(field, values))
            .collect();
        QuiverRep::new(self.quiver.clone(), self.dims.clone(), mats)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardRep {
    /// 1 → k ⇄ k with a companion loop factor; k ≥ 1.
    R(usize),
    /// 1 → k ⇄ (k-1) through the reduced companion; k ≥ 2.
    S(usize),
    /// chain 1 ⇄ 1 ⇄ k ⇄ (k-1) ⇄ (k-1) with a scalar and a generic block;
    /// k ≥ 2.
    Chain(usize),
}

fn generic_row(k: usize, reg: &mut ParameterRegistry, prefix: &str) -> SymbolicMatrix {
    let mut m = SymbolicMatrix::zeros(1, k);
    for i in 0..k {
        m.set(0, i, AffineEntry::param(reg.fresh(format!("{prefix}{}", i + 1))));
    }
    m
}

/// Builds the displayed representation; fresh parameters are registered in
/// a fixed order (companion entries, then the back row, then extras).
pub fn standard_rep(kind: StandardRep, reg: &mut ParameterRegistry) -> SymQuiverRep {
    match kind {
        StandardRep::R(k) => {
            assert!(k >= 1);
            let mut quiver = Quiver::new(vec!["v0", "v1", "v2"]);
            quiver.add_arrow("v0", "v1", "v");
            quiver.add_arrow("v1", "v2", "X");
            quiver.add_arrow("v1", "v0", "w");
            quiver.add_arrow("v2", "v1", "Y");
            let mats = vec![
                basis_column(k),
                companion(k, reg, ""),
                generic_row(k, reg, "y"),
                SymbolicMatrix::identity(k),
            ];
            SymQuiverRep {
                quiver,
                dims: vec![1, k, k],
                mats,
            }
        }
        StandardRep::S(k) => {
            assert!(k >= 2);
            let mut quiver = Quiver::new(vec!["v0", "v1", "v2"]);
            quiver.add_arrow("v0", "v1", "v");
            quiver.add_arrow("v1", "v2", "X");
            quiver.add_arrow("v1", "v0", "w");
            quiver.add_arrow("v2", "v1", "Y");
            let mats = vec![
                basis_column(k),
                reduced_companion(k, reg, ""),
                generic_row(k, reg, "y"),
                padded_identity(k - 1),
            ];
            SymQuiverRep {
                quiver,
                dims: vec![1, k, k - 1],
                mats,
            }
        }
        StandardRep::Chain(k) => {
            assert!(k >= 2);
            let mut quiver = Quiver::new(vec!["u0", "u1", "u2", "u3", "u4"]);
            quiver.add_arrow("u0", "u1", "inc");
            quiver.add_arrow("u1", "u0", "z");
            quiver.add_arrow("u1", "u2", "v");
            quiver.add_arrow("u2", "u1", "w");
            quiver.add_arrow("u2", "u3", "X");
            quiver.add_arrow("u3", "u2", "Y");
            quiver.add_arrow("u3", "u4", "J");
            quiver.add_arrow("u4", "u3", "B");
            let mut one = SymbolicMatrix::zeros(1, 1);
            one.set(0, 0, AffineEntry::constant(1));
            let mut z = SymbolicMatrix::zeros(1, 1);
            z.set(0, 0, AffineEntry::param(reg.fresh("z")));
            let mats = vec![
                one,
                z,
                basis_column(k),
                generic_row(k, reg, "y"),
                reduced_companion(k, reg, ""),
                padded_identity(k - 1),
                SymbolicMatrix::identity(k - 1),
                generic(k - 1, k - 1, reg, "B"),
            ];
            SymQuiverRep {
                quiver,
                dims: vec![1, 1, k, k - 1, k - 1],
                mats,
            }
        }
    }
}
