//! Symbolic matrix building blocks over a shared parameter registry.
//!
//! The block layouts assembled in `parametrize` have entries that are affine
//! in the free parameters (never products of parameters), so an entry is a
//! small integer constant plus a list of (coefficient, parameter) terms.
//! Instantiation at a point assignment is exact over any backend, including
//! dual numbers for differentiation.

use serde::Serialize;

use crate::linalg::{LinalgError, Matrix};
use crate::scalars::Field;

/// Index of a registered parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamId(pub usize);

/// Ordered registry of named parameters; ids are dense 0..len.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParameterRegistry {
    names: Vec<String>,
}

impl ParameterRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self, name: impl Into<String>) -> ParamId {
        let name = name.into();
        assert!(
            !self.names.contains(&name),
            "duplicate parameter name {name:?}"
        );
        self.names.push(name);
        ParamId(self.names.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: ParamId) -> &str {
        &self.names[id.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// `constant + Σ coeff · parameter`, at most one term per parameter.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AffineEntry {
    pub constant: i64,
    pub terms: Vec<(i64, ParamId)>,
}

impl AffineEntry {
    pub fn constant(c: i64) -> Self {
        AffineEntry {
            constant: c,
            terms: Vec::new(),
        }
    }

    pub fn param(id: ParamId) -> Self {
        AffineEntry {
            constant: 0,
            terms: vec![(1, id)],
        }
    }

    pub fn add_term(&mut self, coeff: i64, id: ParamId) {
        if let Some(t) = self.terms.iter_mut().find(|(_, p)| *p == id) {
            t.0 += coeff;
            if t.0 == 0 {
                self.terms.retain(|(c, _)| *c != 0);
            }
            return;
        }
        if coeff != 0 {
            self.terms.push((coeff, id));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.terms.is_empty()
    }

    pub fn eval<F: Field>(&self, field: &F, values: &[F::Elem]) -> F::Elem {
        let mut acc = field.from_i64(self.constant);
        for (coeff, id) in &self.terms {
            let term = if *coeff == 1 {
                values[id.0].clone()
            } else {
                field.mul(&field.from_i64(*coeff), &values[id.0])
            };
            acc = field.add(&acc, &term);
        }
        acc
    }
}

/// Dense matrix of affine entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<AffineEntry>,
}

impl SymbolicMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SymbolicMatrix {
            rows,
            cols,
            entries: vec![AffineEntry::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SymbolicMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, AffineEntry::constant(1));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &AffineEntry {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: AffineEntry) {
        self.entries[r * self.cols + c] = e;
    }

    /// Adds `coeff · parameter` to every diagonal entry (for q·1 + A blocks).
    pub fn add_scalar_param_to_diagonal(&mut self, id: ParamId) {
        assert_eq!(self.rows, self.cols);
        for i in 0..self.rows {
            self.entries[i * self.cols + i].add_term(1, id);
        }
    }

    /// Adds a constant to every diagonal entry (for 1 + A blocks).
    pub fn add_constant_to_diagonal(&mut self, c: i64) {
        assert_eq!(self.rows, self.cols);
        for i in 0..self.rows {
            self.entries[i * self.cols + i].constant += c;
        }
    }

    /// Horizontal juxtaposition [self | right].
    pub fn hcat(&self, right: &SymbolicMatrix) -> SymbolicMatrix {
        assert_eq!(self.rows, right.rows);
        let mut out = SymbolicMatrix::zeros(self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..right.cols {
                out.set(r, self.cols + c, right.get(r, c).clone());
            }
        }
        out
    }

    pub fn instantiate<F: Field>(&self, field: &F, values: &[F::Elem]) -> Matrix<F> {
        Matrix::from_fn(field.clone(), self.rows, self.cols, |r, c| {
            self.get(r, c).eval(field, values)
        })
    }

    /// Sorted, deduplicated list of parameters occurring in the matrix.
    pub fn params_used(&self) -> Vec<ParamId> {
        let mut ids: Vec<ParamId> = self
            .entries
            .iter()
            .flat_map(|e| e.terms.iter().map(|(_, id)| *id))
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }
}

/// Generic k×k companion matrix: subdiagonal ones, last column fresh
/// parameters x_k..x_1 top to bottom.
pub fn companion(k: usize, reg: &mut ParameterRegistry, prefix: &str) -> SymbolicMatrix {
    let mut m = SymbolicMatrix::zeros(k, k);
    if k == 0 {
        return m;
    }
    let ids: Vec<ParamId> = (1..=k).map(|i| reg.fresh(format!("{prefix}x{i}"))).collect();
    for r in 1..k {
        m.set(r, r - 1, AffineEntry::constant(1));
    }
    for r in 0..k {
        // row r carries x_{k-r}
        m.set(r, k - 1, AffineEntry::param(ids[k - 1 - r]));
    }
    m
}

/// Reduced (k-1)×k companion matrix: identity in the first k-1 columns,
/// last column fresh parameters x_{k-1}..x_1 top to bottom.
pub fn reduced_companion(k: usize, reg: &mut ParameterRegistry, prefix: &str) -> SymbolicMatrix {
    assert!(k >= 1);
    let mut m = SymbolicMatrix::zeros(k - 1, k);
    if k == 1 {
        return m;
    }
    let ids: Vec<ParamId> = (1..k).map(|i| reg.fresh(format!("{prefix}x{i}"))).collect();
    for r in 0..k - 1 {
        m.set(r, r, AffineEntry::constant(1));
        m.set(r, k - 1, AffineEntry::param(ids[k - 2 - r]));
    }
    m
}

/// d×1 column (1, 0, …, 0)ᵀ.
pub fn basis_column(d: usize) -> SymbolicMatrix {
    let mut m = SymbolicMatrix::zeros(d, 1);
    if d > 0 {
        m.set(0, 0, AffineEntry::constant(1));
    }
    m
}

/// (n+1)×n matrix with a zero top row over the identity.
pub fn padded_identity(n: usize) -> SymbolicMatrix {
    let mut m = SymbolicMatrix::zeros(n + 1, n);
    for i in 0..n {
        m.set(i + 1, i, AffineEntry::constant(1));
    }
    m
}

/// r×c block of fresh parameters.
pub fn generic(r: usize, c: usize, reg: &mut ParameterRegistry, prefix: &str) -> SymbolicMatrix {
    let mut m = SymbolicMatrix::zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            m.set(i, j, AffineEntry::param(reg.fresh(format!("{prefix}_{i}_{j}"))));
        }
    }
    m
}

/// [basis column | generic] juxtaposition of total width `cols`.
pub fn basis_column_generic(
    rows: usize,
    cols: usize,
    reg: &mut ParameterRegistry,
    prefix: &str,
) -> SymbolicMatrix {
    assert!(cols >= 1);
    basis_column(rows).hcat(&generic(rows, cols - 1, reg, prefix))
}

/// Structured block selector mirroring the layout legends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuredKind {
    BasisColumn(usize),
    PaddedIdentity(usize),
    Identity(usize),
    Zero(usize, usize),
    Generic(usize, usize),
}

pub fn structured_block(
    kind: StructuredKind,
    reg: &mut ParameterRegistry,
    prefix: &str,
) -> SymbolicMatrix {
    match kind {
        StructuredKind::BasisColumn(d) => basis_column(d),
        StructuredKind::PaddedIdentity(n) => padded_identity(n),
        StructuredKind::Identity(n) => SymbolicMatrix::identity(n),
        StructuredKind::Zero(r, c) => SymbolicMatrix::zeros(r, c),
        StructuredKind::Generic(r, c) => generic(r, c, reg, prefix),
    }
}

/// One placed block of a symbolic block layout.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSlot {
    pub r: usize,
    pub c: usize,
    pub kind: String,
    pub mat: SymbolicMatrix,
}

/// A block grid with fixed group heights and widths.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicBlockMatrix {
    pub row_heights: Vec<usize>,
    pub col_widths: Vec<usize>,
    blocks: Vec<BlockSlot>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockDumpEntry {
    pub r: usize,
    pub c: usize,
    pub kind: String,
    pub rows: usize,
    pub cols: usize,
    pub params: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LayoutDump {
    pub row_heights: Vec<usize>,
    pub col_widths: Vec<usize>,
    pub blocks: Vec<BlockDumpEntry>,
}

impl SymbolicBlockMatrix {
    pub fn new(row_heights: Vec<usize>, col_widths: Vec<usize>) -> Self {
        SymbolicBlockMatrix {
            row_heights,
            col_widths,
            blocks: Vec::new(),
        }
    }

    pub fn total_rows(&self) -> usize {
        self.row_heights.iter().sum()
    }

    pub fn total_cols(&self) -> usize {
        self.col_widths.iter().sum()
    }

    /// Places a block, validating its shape against the slot.  Empty slots
    /// (zero height or width) are skipped.
    pub fn place(
        &mut self,
        r: usize,
        c: usize,
        kind: &str,
        mat: SymbolicMatrix,
    ) -> Result<(), LinalgError> {
        let expected = (self.row_heights[r], self.col_widths[c]);
        if (mat.rows(), mat.cols()) != expected {
            return Err(LinalgError::ShapeMismatch {
                at: (r, c),
                expected,
                found: (mat.rows(), mat.cols()),
            });
        }
        if expected.0 == 0 || expected.1 == 0 {
            return Ok(());
        }
        assert!(
            !self.blocks.iter().any(|b| (b.r, b.c) == (r, c)),
            "slot ({r},{c}) placed twice"
        );
        self.blocks.push(BlockSlot {
            r,
            c,
            kind: kind.to_string(),
            mat,
        });
        Ok(())
    }

    pub fn blocks(&self) -> &[BlockSlot] {
        &self.blocks
    }

    pub fn assemble(&self) -> SymbolicMatrix {
        let mut out = SymbolicMatrix::zeros(self.total_rows(), self.total_cols());
        let row_off: Vec<usize> = prefix_sums(&self.row_heights);
        let col_off: Vec<usize> = prefix_sums(&self.col_widths);
        for b in &self.blocks {
            for i in 0..b.mat.rows() {
                for j in 0..b.mat.cols() {
                    out.set(row_off[b.r] + i, col_off[b.c] + j, b.mat.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn instantiate<F: Field>(&self, field: &F, values: &[F::Elem]) -> Matrix<F> {
        self.assemble().instantiate(field, values)
    }

    pub fn dump(&self, reg: &ParameterRegistry) -> LayoutDump {
        LayoutDump {
            row_heights: self.row_heights.clone(),
            col_widths: self.col_widths.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockDumpEntry {
                    r: b.r,
                    c: b.c,
                    kind: b.kind.clone(),
                    rows: b.mat.rows(),
                    cols: b.mat.cols(),
                    params: b
                        .mat
                        .params_used()
                        .iter()
                        .map(|id| reg.name(*id).to_string())
                        .collect(),
                })
                .collect(),
        }
    }
}

fn prefix_sums(v: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(v.len());
    let mut acc = 0;
    for &x in v {
        out.push(acc);
        acc += x;
    }
    out
}
