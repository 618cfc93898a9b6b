//! The 9-vertex local quiver and the base-change matrix B₀ of the
//! semisimple base point.
//!
//! Vertex labels: a1..a6 for the six one-dimensional summands, ba/bb/bg for
//! the two-dimensional families (α, β, γ).  Arrow labels follow the block
//! subscripts: hexagon arrows Cij (ai → aj), bridge arrows like D3a
//! (a3 → bα) and Da3 (bα → a3), loops Ea/Eb/Eg, and Fst between distinct
//! b-vertices.

use super::{Quiver, QuiverError, QuiverRep};
use crate::dimvectors::TauVector;
use crate::linalg::{block_assemble, Matrix};
use crate::scalars::Field;

/// The quiver of self-extensions of the base point: 9 vertices, 33 arrows
/// (12 hexagon arrows, 12 bridge arrows pairing α↔{3,6}, β↔{2,5}, γ↔{1,4},
/// 3 loops, 6 arrows between the b-vertices).
pub fn local_quiver() -> Quiver {
    let mut q = Quiver::new(vec!["a1", "a2", "a3", "a4", "a5", "a6", "ba", "bb", "bg"]);
    let hex = [
        (1, 2),
        (2, 1),
        (2, 3),
        (3, 2),
        (3, 4),
        (4, 3),
        (4, 5),
        (5, 4),
        (5, 6),
        (6, 5),
        (6, 1),
        (1, 6),
    ];
    for (i, j) in hex {
        q.add_arrow(&format!("a{i}"), &format!("a{j}"), &format!("C{i}{j}"));
    }
    let bridges = [(3, 'a'), (6, 'a'), (2, 'b'), (5, 'b'), (1, 'g'), (4, 'g')];
    for (i, s) in bridges {
        q.add_arrow(&format!("a{i}"), &format!("b{s}"), &format!("D{i}{s}"));
        q.add_arrow(&format!("b{s}"), &format!("a{i}"), &format!("D{s}{i}"));
    }
    for s in ['a', 'b', 'g'] {
        q.add_arrow(&format!("b{s}"), &format!("b{s}"), &format!("E{s}"));
    }
    for (s, t) in [('a', 'b'), ('b', 'a'), ('a', 'g'), ('g', 'a'), ('b', 'g'), ('g', 'b')] {
        q.add_arrow(&format!("b{s}"), &format!("b{t}"), &format!("F{s}{t}"));
    }
    q
}

/// Row group heights of the 12×12 block grid: the x-, y-, z-eigenspace rows
/// split by the simple summands carrying them.
pub fn b0_row_heights(tau: &TauVector) -> Vec<usize> {
    let t = tau.as_array();
    vec![
        t[0], t[3], t[6], t[7], // x: a1, a4, b_alpha, b_beta
        t[1], t[4], t[6], t[8], // y: a2, a5, b_alpha, b_gamma
        t[2], t[5], t[7], t[8], // z: a3, a6, b_beta, b_gamma
    ]
}

/// Column group widths: the a-eigenspace columns then the b-eigenspace
/// columns, split by summand.
pub fn b0_col_widths(tau: &TauVector) -> Vec<usize> {
    let t = tau.as_array();
    vec![
        t[0], t[2], t[4], t[6], t[7], t[8], // a: a1, a3, a5, b_alpha, b_beta, b_gamma
        t[1], t[3], t[5], t[6], t[7], t[8], // b: a2, a4, a6, b_alpha, b_beta, b_gamma
    ]
}

/// Slots of the base matrix: (block row, block column, carries q).
const B0_SLOTS: [(usize, usize, bool); 18] = [
    (0, 0, false),
    (1, 7, false),
    (2, 3, true),
    (2, 9, false),
    (3, 4, true),
    (3, 10, false),
    (4, 6, false),
    (5, 2, false),
    (6, 3, false),
    (6, 9, false),
    (7, 5, true),
    (7, 11, false),
    (8, 1, false),
    (9, 8, false),
    (10, 4, false),
    (10, 10, false),
    (11, 5, false),
    (11, 11, false),
];

/// Shape-forced subscript correction applied while transcribing the printed
/// base matrix.
pub const B0_CORRECTION: &str =
    "B0 block (12,12): printed subscript b_beta read as b_gamma (forced by block widths)";

/// The base-change matrix of the semisimple point with multiplicities τ at
/// deformation parameter q.  Square of size n×n; invertible for q ∉ {0,1}.
pub fn base_matrix_b0<F: Field>(
    tau: &TauVector,
    q: &F::Elem,
    field: &F,
) -> Result<Matrix<F>, QuiverError> {
    if field.is_zero(q) || field.is_one(q) {
        return Err(QuiverError::BadQ(field.encode(q)));
    }
    let heights = b0_row_heights(tau);
    let widths = b0_col_widths(tau);
    let mut grid: Vec<Vec<Option<Matrix<F>>>> = (0..heights.len())
        .map(|_| vec![None; widths.len()])
        .collect();
    for &(r, c, with_q) in &B0_SLOTS {
        let size = heights[r];
        if size == 0 {
            continue;
        }
        debug_assert_eq!(size, widths[c]);
        let block = if with_q {
            Matrix::diagonal(field.clone(), vec![q.clone(); size])
        } else {
            Matrix::identity(field.clone(), size)
        };
        grid[r][c] = Some(block);
    }
    Ok(block_assemble(field.clone(), &heights, &widths, &grid)?)
}

/// The all-zero representation of a quiver at the given dimension vector.
pub fn zero_rep<F: Field>(field: &F, quiver: &Quiver, dims: &[usize]) -> QuiverRep<F> {
    let mats = quiver
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(field.clone(), dims[a.dst], dims[a.src]))
        .collect();
    QuiverRep::new(quiver.clone(), dims.to_vec(), mats).expect("zero blocks always fit")
}
