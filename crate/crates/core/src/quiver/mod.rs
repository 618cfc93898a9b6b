//! Quivers and their representations: the linear-system dictionary, the
//! parametrized families of simple representations, certified simplicity
//! testing, and the 9-vertex local quiver with its base-change matrix.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimvectors::SigmaVector;
use crate::linalg::{matrix_from_json, matrix_to_json, LinalgError, Matrix, MatrixJson};
use crate::scalars::Field;

pub mod local;
pub mod meataxe;
pub mod standard_reps;
pub mod systems;

pub use local::{b0_col_widths, b0_row_heights, base_matrix_b0, local_quiver, zero_rep, B0_CORRECTION};
pub use meataxe::meataxe_is_simple;
pub use standard_reps::{standard_rep, StandardRep, SymQuiverRep};
pub use systems::{
    canonical_form, controllability, is_canonical, is_companion, markov_params, observability,
    rep_to_sys, sys_from_json, sys_to_json, sys_to_rep, LinearSystem, LinearSystemJson,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuiverError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    /// The genericity hypothesis fails: the first input column is not a
    /// cyclic vector.
    #[error("first input column is not a cyclic vector")]
    NotCyclic,
    #[error("q = {0} is excluded (the two-dimensional families require q not in {{0,1}})")]
    BadQ(String),
    #[error("malformed representation: {0}")]
    BadRep(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub label: String,
}

/// A quiver: labelled vertices and labelled arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<S: Into<String>>(vertices: Vec<S>) -> Self {
        Quiver {
            vertices: vertices.into_iter().map(Into::into).collect(),
            arrows: Vec::new(),
        }
    }

    pub fn add_arrow(&mut self, src: &str, dst: &str, label: &str) {
        let src = self.vertex_index(src).expect("unknown source vertex");
        let dst = self.vertex_index(dst).expect("unknown target vertex");
        assert!(
            self.arrows.iter().all(|a| a.label != label),
            "duplicate arrow label {label:?}"
        );
        self.arrows.push(Arrow {
            src,
            dst,
            label: label.to_string(),
        });
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Euler form of the quiver: ⟨α,β⟩ = Σ_v α_v β_v − Σ_{a: i→j} α_i β_j.
    pub fn euler_form(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        assert_eq!(alpha.len(), self.vertices.len());
        assert_eq!(beta.len(), self.vertices.len());
        let diag: i64 = alpha.iter().zip(beta).map(|(a, b)| a * b).sum();
        let arrows: i64 = self
            .arrows
            .iter()
            .map(|a| alpha[a.src] * beta[a.dst])
            .sum();
        diag - arrows
    }
}

/// A quiver plus one matrix per arrow; the matrix of an arrow s→t has shape
/// dim(t) × dim(s).
#[derive(Debug, Clone, PartialEq)]
pub struct QuiverRep<F: Field> {
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix<F>>,
}

impl<F: Field> QuiverRep<F> {
    pub fn new(quiver: Quiver, dims: Vec<usize>, mats: Vec<Matrix<F>>) -> Result<Self, QuiverError> {
        if dims.len() != quiver.vertices.len() || mats.len() != quiver.arrows.len() {
            return Err(QuiverError::BadRep(
                "vertex or arrow count does not match the quiver".into(),
            ));
        }
        for (k, arrow) in quiver.arrows.iter().enumerate() {
            let expected = (dims[arrow.dst], dims[arrow.src]);
            let found = (mats[k].rows(), mats[k].cols());
            if expected != found {
                return Err(QuiverError::Linalg(LinalgError::ShapeMismatch {
                    at: (arrow.dst, arrow.src),
                    expected,
                    found,
                }));
            }
        }
        Ok(QuiverRep { quiver, dims, mats })
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn vertex_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    pub fn arrow_matrix(&self, label: &str) -> Option<&Matrix<F>> {
        self.quiver.arrow_index(label).map(|i| &self.mats[i])
    }

    /// The generators of the acting algebra on the total space: one
    /// idempotent projection per vertex and one embedded map per arrow.
    pub fn total_generators(&self, field: &F) -> Vec<Matrix<F>> {
        let total = self.total_dim();
        let offs = self.vertex_offsets();
        let mut gens = Vec::new();
        for (v, &d) in self.dims.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let mut p = Matrix::zeros(field.clone(), total, total);
            for i in 0..d {
                p.set(offs[v] + i, offs[v] + i, field.one());
            }
            gens.push(p);
        }
        for (k, arrow) in self.quiver.arrows.iter().enumerate() {
            let m = &self.mats[k];
            if m.rows() == 0 || m.cols() == 0 {
                continue;
            }
            let mut big = Matrix::zeros(field.clone(), total, total);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    big.set(offs[arrow.dst] + r, offs[arrow.src] + c, m.get(r, c).clone());
                }
            }
            gens.push(big);
        }
        gens
    }
}

/// Removes a vertex with no loop, installing one composite arrow per
/// (incoming, outgoing) pair through it.  Traces of oriented cycles are
/// preserved, which is what identifies the isoclass data on both sides.
pub fn contract_pair<F: Field>(rep: &QuiverRep<F>, vertex: &str) -> Result<QuiverRep<F>, QuiverError> {
    let m = rep
        .quiver
        .vertex_index(vertex)
        .ok_or_else(|| QuiverError::BadRep(format!("no vertex {vertex:?}")))?;
    if rep.quiver.arrows.iter().any(|a| a.src == m && a.dst == m) {
        return Err(QuiverError::BadRep(format!(
            "vertex {vertex:?} carries a loop and cannot be contracted"
        )));
    }
    let mut vertices = Vec::new();
    let mut old_to_new = vec![usize::MAX; rep.quiver.vertices.len()];
    let mut dims = Vec::new();
    for (i, label) in rep.quiver.vertices.iter().enumerate() {
        if i == m {
            continue;
        }
        old_to_new[i] = vertices.len();
        vertices.push(label.clone());
        dims.push(rep.dims[i]);
    }
    let mut quiver = Quiver::new(vertices);
    let mut mats = Vec::new();
    for (k, a) in rep.quiver.arrows.iter().enumerate() {
        if a.src == m || a.dst == m {
            continue;
        }
        quiver.arrows.push(Arrow {
            src: old_to_new[a.src],
            dst: old_to_new[a.dst],
            label: a.label.clone(),
        });
        mats.push(rep.mats[k].clone());
    }
    for (ki, inc) in rep.quiver.arrows.iter().enumerate() {
        if inc.dst != m {
            continue;
        }
        for (ko, out) in rep.quiver.arrows.iter().enumerate() {
            if out.src != m {
                continue;
            }
            quiver.arrows.push(Arrow {
                src: old_to_new[inc.src],
                dst: old_to_new[out.dst],
                label: format!("{}.{}", out.label, inc.label),
            });
            mats.push(rep.mats[ko].mul(&rep.mats[ki]));
        }
    }
    QuiverRep::new(quiver, dims, mats)
}

/// The bipartite eigenbasis quiver: sources a, b and targets x, y, z with
/// one arrow per (source, target) pair.
pub fn westbury_quiver() -> Quiver {
    let mut q = Quiver::new(vec!["a", "b", "x", "y", "z"]);
    for (j, src) in ["a", "b"].iter().enumerate() {
        for (i, dst) in ["x", "y", "z"].iter().enumerate() {
            q.add_arrow(src, dst, &format!("B{}{}", i + 1, j + 1));
        }
    }
    q
}

/// The representation of the doubled eigenbasis quiver carried by an
/// invertible base-change matrix B: the six blocks of B as forward arrows
/// and the six blocks of B⁻¹ as return arrows.
///
/// Its graded invariant subspaces W = W_a ⊕ W_b ⊕ W_x ⊕ W_y ⊕ W_z are in
/// bijection with subspaces of the n-dimensional space invariant under both
/// eigenspace decompositions, so this representation is simple exactly when
/// the associated generator pair acts irreducibly.
pub fn westbury_rep<F: Field>(b: &Matrix<F>, sigma: &SigmaVector) -> Result<QuiverRep<F>, QuiverError> {
    let n = sigma.n();
    if (b.rows(), b.cols()) != (n, n) {
        return Err(QuiverError::BadRep(format!(
            "base-change matrix is {}x{}, sigma needs {n}x{n}",
            b.rows(),
            b.cols()
        )));
    }
    let binv = b.inverse()?;
    let row_groups = [sigma.x(), sigma.y(), sigma.z()];
    let col_groups = [sigma.a(), sigma.b()];
    let row_off = [0, sigma.x(), sigma.x() + sigma.y()];
    let col_off = [0, sigma.a()];

    let mut quiver = westbury_quiver();
    for (j, src) in ["x", "y", "z"].iter().enumerate() {
        for (i, dst) in ["a", "b"].iter().enumerate() {
            quiver.add_arrow(src, dst, &format!("Binv{}{}", i + 1, j + 1));
        }
    }
    let dims = vec![sigma.a(), sigma.b(), sigma.x(), sigma.y(), sigma.z()];
    let mut mats = Vec::new();
    for j in 0..2 {
        for i in 0..3 {
            mats.push(b.submatrix(
                row_off[i],
                row_off[i] + row_groups[i],
                col_off[j],
                col_off[j] + col_groups[j],
            ));
        }
    }
    for j in 0..3 {
        for i in 0..2 {
            mats.push(binv.submatrix(
                col_off[i],
                col_off[i] + col_groups[i],
                row_off[j],
                row_off[j] + row_groups[j],
            ));
        }
    }
    QuiverRep::new(quiver, dims, mats)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexJson {
    pub label: String,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowJson {
    pub src: String,
    pub dst: String,
    pub label: String,
    pub matrix: MatrixJson,
}

/// JSON form: `{vertices: [{label, dim}], arrows: [{src, dst, label, matrix}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverRepJson {
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<ArrowJson>,
}

pub fn rep_to_json<F: Field>(rep: &QuiverRep<F>) -> QuiverRepJson {
    QuiverRepJson {
        vertices: rep
            .quiver
            .vertices
            .iter()
            .zip(&rep.dims)
            .map(|(label, &dim)| VertexJson {
                label: label.clone(),
                dim,
            })
            .collect(),
        arrows: rep
            .quiver
            .arrows
            .iter()
            .zip(&rep.mats)
            .map(|(a, m)| ArrowJson {
                src: rep.quiver.vertices[a.src].clone(),
                dst: rep.quiver.vertices[a.dst].clone(),
                label: a.label.clone(),
                matrix: matrix_to_json(m),
            })
            .collect(),
    }
}

pub fn rep_from_json<F: Field>(field: F, json: &QuiverRepJson) -> Result<QuiverRep<F>, QuiverError> {
    let mut quiver = Quiver::new(json.vertices.iter().map(|v| v.label.clone()).collect::<Vec<_>>());
    let dims: Vec<usize> = json.vertices.iter().map(|v| v.dim).collect();
    let mut mats = Vec::new();
    for a in &json.arrows {
        if quiver.vertex_index(&a.src).is_none() || quiver.vertex_index(&a.dst).is_none() {
            return Err(QuiverError::BadRep(format!(
                "arrow {} references an undeclared vertex",
                a.label
            )));
        }
        quiver.add_arrow(&a.src, &a.dst, &a.label);
        mats.push(matrix_from_json(field.clone(), &a.matrix)?);
    }
    QuiverRep::new(quiver, dims, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimvectors::{enumerate_components, n_sigma, validate_sigma};
    use crate::gadgets::ParameterRegistry;
    use crate::rng::SplitMix64;
    use crate::scalars::{make_prime_field, PrimeField};

    #[test]
    fn euler_form_reproduces_the_dimension_formula() {
        let q = westbury_quiver();
        for n in 2..=30usize {
            for sigma in enumerate_components(n) {
                let alpha: Vec<i64> = [sigma.a(), sigma.b(), sigma.x(), sigma.y(), sigma.z()]
                    .iter()
                    .map(|&v| v as i64)
                    .collect();
                let chi = q.euler_form(&alpha, &alpha);
                assert_eq!(1 - chi, n_sigma(&sigma) as i64, "{sigma}");
            }
        }
    }

    fn random_rep(
        quiver: &Quiver,
        dims: &[usize],
        field: PrimeField,
        rng: &mut SplitMix64,
    ) -> QuiverRep<PrimeField> {
        let mats = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::from_fn(field, dims[a.dst], dims[a.src], |_, _| field.sample(rng)))
            .collect();
        QuiverRep::new(quiver.clone(), dims.to_vec(), mats).unwrap()
    }

    #[test]
    fn contraction_preserves_cycle_traces() {
        let field = make_prime_field(crate::scalars::DEFAULT_PRIME).unwrap();
        let mut rng = SplitMix64::new(17);
        for k in 1..=3usize {
            // the one-loop shape: contract the right vertex, loop becomes Y·X
            let mut reg = ParameterRegistry::new();
            let sym = standard_rep(StandardRep::R(k), &mut reg);
            let values: Vec<u64> = (0..reg.len()).map(|_| field.sample(&mut rng)).collect();
            let rep = sym.instantiate(&field, &values).unwrap();
            let contracted = contract_pair(&rep, "v2").unwrap();
            let x = rep.arrow_matrix("X").unwrap();
            let y = rep.arrow_matrix("Y").unwrap();
            let loop_mat = contracted.arrow_matrix("Y.X").unwrap();
            assert_eq!(loop_mat, &y.mul(x));
            let mut pow = loop_mat.clone();
            let mut direct = y.mul(x);
            for _ in 0..4 {
                assert_eq!(pow.trace(), direct.trace());
                pow = pow.mul(loop_mat);
                direct = direct.mul(&y.mul(x));
            }
        }

        // the reduced shape: contract the middle vertex, two loops appear
        let mut reg = ParameterRegistry::new();
        let sym = standard_rep(StandardRep::S(3), &mut reg);
        let mut rng = SplitMix64::new(18);
        let values: Vec<u64> = (0..reg.len()).map(|_| field.sample(&mut rng)).collect();
        let rep = sym.instantiate(&field, &values).unwrap();
        let contracted = contract_pair(&rep, "v1").unwrap();
        let v = rep.arrow_matrix("v").unwrap();
        let w = rep.arrow_matrix("w").unwrap();
        let x = rep.arrow_matrix("X").unwrap();
        let y = rep.arrow_matrix("Y").unwrap();
        assert_eq!(contracted.arrow_matrix("w.v").unwrap(), &w.mul(v));
        assert_eq!(contracted.arrow_matrix("X.v").unwrap(), &x.mul(v));
        assert_eq!(contracted.arrow_matrix("w.Y").unwrap(), &w.mul(y));
        assert_eq!(contracted.arrow_matrix("X.Y").unwrap(), &x.mul(y));
        // mixed cycle 1 -> k -> (k-1) -> k -> 1 keeps its trace
        let before = w.mul(y).mul(&x.mul(v));
        let after = contracted
            .arrow_matrix("w.Y")
            .unwrap()
            .mul(contracted.arrow_matrix("X.v").unwrap());
        assert_eq!(before.trace(), after.trace());
    }

    #[test]
    fn contract_refuses_loops() {
        let field = make_prime_field(7).unwrap();
        let mut q = Quiver::new(vec!["u"]);
        q.add_arrow("u", "u", "l");
        let rep = QuiverRep::new(q, vec![1], vec![Matrix::identity(field, 1)]).unwrap();
        assert!(contract_pair(&rep, "u").is_err());
    }

    #[test]
    fn westbury_rep_blocks_and_shapes() {
        let field = make_prime_field(7).unwrap();
        let sigma = validate_sigma(1, 1, 1, 1, 0).unwrap();
        let b = Matrix::from_i64_rows(field, &[&[2, 1], &[1, 1]]);
        let rep = westbury_rep(&b, &sigma).unwrap();
        assert_eq!(rep.total_dim(), 4);
        assert_eq!(rep.quiver.arrows().len(), 12);
        // B11 is the (x, a) block
        assert_eq!(rep.arrow_matrix("B11").unwrap().get(0, 0), &2);
        // zero-dimensional z vertex contributes empty blocks
        assert_eq!(rep.arrow_matrix("B31").unwrap().rows(), 0);
        // return arrows carry B⁻¹ = [[1,-1],[-1,2]]
        assert_eq!(rep.arrow_matrix("Binv11").unwrap().get(0, 0), &1);
        assert_eq!(rep.arrow_matrix("Binv21").unwrap().get(0, 0), &6);

        let singular = Matrix::from_i64_rows(field, &[&[1, 1], &[1, 1]]);
        assert!(westbury_rep(&singular, &sigma).is_err());
    }

    #[test]
    fn quiver_rep_json_round_trip() {
        let field = make_prime_field(7).unwrap();
        let mut rng = SplitMix64::new(5);
        let q = westbury_quiver();
        let rep = random_rep(&q, &[2, 1, 1, 1, 1], field, &mut rng);
        let json = rep_to_json(&rep);
        let back = rep_from_json(field, &json).unwrap();
        assert_eq!(back, rep);
    }
}
