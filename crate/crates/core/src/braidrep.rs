//! Lifting base-change matrices to representations of the 3-string braid
//! group, and the exact certificates attached to a lift: relation checks,
//! Burnside irreducibility, trace coordinates, and trace-Jacobian ranks.
//!
//! With D_t = diag(1_x, ρ²·1_y, ρ·1_z) and D_s = diag(1_a, -1_b), a lift is
//!
//!   σ₁ = μ · B⁻¹ D_t B · D_s,    σ₂ = μ · D_s · B⁻¹ D_t B.
//!
//! The quotient pair is s = μ⁻³ σ₁σ₂σ₁ (= D_s) and t = μ⁻² σ₁σ₂
//! (= B⁻¹ D_t² B), with s² = 1 and t³ = 1; the eigenvalue multiplicities of
//! t are (x, y, z) for the eigenvalues (1, ρ, ρ²).

use serde::Serialize;
use thiserror::Error;

use crate::dimvectors::SigmaVector;
use crate::linalg::{Matrix, RowSpan};
use crate::parametrize::{instantiate, ComponentPlan, ParamError};
use crate::scalars::{Dual, DualField, Field};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraidError {
    #[error("base-change matrix is singular")]
    Singular,
    #[error("mu must be invertible")]
    ZeroMu,
    #[error("trace-Jacobian rank still grew at the word cap of {cap} syllables (last rank {last})")]
    RankUnstable { cap: usize, last: usize },
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// diag(1_x, ρ²·1_y, ρ·1_z) on the target grading.
pub fn t_diagonal<F: Field>(field: &F, sigma: &SigmaVector) -> Matrix<F> {
    let rho = field.rho();
    let rho2 = field.mul(&rho, &rho);
    let mut entries = Vec::with_capacity(sigma.n());
    entries.extend(std::iter::repeat_with(|| field.one()).take(sigma.x()));
    entries.extend(std::iter::repeat_with(|| rho2.clone()).take(sigma.y()));
    entries.extend(std::iter::repeat_with(|| rho.clone()).take(sigma.z()));
    Matrix::diagonal(field.clone(), entries)
}

/// diag(1_a, -1_b) on the source grading.
pub fn s_diagonal<F: Field>(field: &F, sigma: &SigmaVector) -> Matrix<F> {
    let minus_one = field.from_i64(-1);
    let mut entries = Vec::with_capacity(sigma.n());
    entries.extend(std::iter::repeat_with(|| field.one()).take(sigma.a()));
    entries.extend(std::iter::repeat_with(|| minus_one.clone()).take(sigma.b()));
    Matrix::diagonal(field.clone(), entries)
}

/// A pair of braid generator images with the central scalar root μ.
#[derive(Debug, Clone, PartialEq)]
pub struct BraidRep<F: Field> {
    pub sigma1: Matrix<F>,
    pub sigma2: Matrix<F>,
    pub mu: F::Elem,
    pub sigma: SigmaVector,
}

impl<F: Field> BraidRep<F> {
    /// Wraps an externally provided pair (for verification pipelines); only
    /// shapes are validated, the relation checks are the caller's job.
    pub fn from_parts(
        sigma1: Matrix<F>,
        sigma2: Matrix<F>,
        mu: F::Elem,
        sigma: SigmaVector,
    ) -> Result<Self, BraidError> {
        let n = sigma.n();
        if (sigma1.rows(), sigma1.cols()) != (n, n) || (sigma2.rows(), sigma2.cols()) != (n, n) {
            return Err(BraidError::Singular);
        }
        Ok(BraidRep {
            sigma1,
            sigma2,
            mu,
            sigma,
        })
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn field(&self) -> &F {
        self.sigma1.field()
    }
}

/// Builds the representation attached to an invertible base-change matrix.
pub fn lift<F: Field>(
    b: &Matrix<F>,
    mu: &F::Elem,
    sigma: &SigmaVector,
) -> Result<BraidRep<F>, BraidError> {
    let field = b.field().clone();
    if field.inv(mu).is_none() {
        return Err(BraidError::ZeroMu);
    }
    let binv = b.inverse().map_err(|_| BraidError::Singular)?;
    let conj = binv.mul(&t_diagonal(&field, sigma)).mul(b);
    let ds = s_diagonal(&field, sigma);
    Ok(BraidRep {
        sigma1: conj.mul(&ds).scale(mu),
        sigma2: ds.mul(&conj).scale(mu),
        mu: mu.clone(),
        sigma: *sigma,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub braid: bool,
    pub central: bool,
}

/// Exact checks of σ₁σ₂σ₁ = σ₂σ₁σ₂ and (σ₁σ₂)³ = μ⁶·1.
pub fn verify_relations<F: Field>(rep: &BraidRep<F>) -> RelationReport {
    let field = rep.field().clone();
    let lhs = rep.sigma1.mul(&rep.sigma2).mul(&rep.sigma1);
    let rhs = rep.sigma2.mul(&rep.sigma1).mul(&rep.sigma2);
    let braid = lhs == rhs;
    let prod = rep.sigma1.mul(&rep.sigma2);
    let cube = prod.mul(&prod).mul(&prod);
    let central = cube == Matrix::identity(field.clone(), rep.n()).scale(&field.pow(&rep.mu, 6));
    RelationReport { braid, central }
}

/// Dimension of the unital algebra spanned by words in the two generators:
/// the closure of {1} under left multiplication.  The value n² certifies
/// irreducibility.
pub fn burnside_dimension<F: Field>(rep: &BraidRep<F>) -> usize {
    let field = rep.field().clone();
    let n = rep.n();
    if n == 0 {
        return 0;
    }
    let mut span = RowSpan::new(field.clone(), n * n);
    let mut queue: Vec<Matrix<F>> = Vec::new();
    let identity = Matrix::identity(field, n);
    span.insert(identity.data().to_vec());
    queue.push(identity);
    while let Some(m) = queue.pop() {
        if span.dim() == n * n {
            return n * n;
        }
        for g in [&rep.sigma1, &rep.sigma2] {
            let prod = g.mul(&m);
            if span.insert(prod.data().to_vec()).is_some() {
                queue.push(prod);
            }
        }
    }
    span.dim()
}

/// Alphabet of the word enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WordMode {
    /// Reduced words in {s, t, t²}: syllables alternate between the
    /// order-two and the order-three generator.
    C2C3,
    /// All positive words in {σ₁, σ₂}.
    B3,
}

#[derive(Debug, Clone, Copy)]
pub struct WordEntry {
    pub parent: Option<usize>,
    pub gen: u8,
    pub syllables: usize,
}

/// Deterministic word enumeration: layer by syllable count, within a layer
/// parents first, generators in alphabet order.
#[derive(Debug, Clone)]
pub struct WordList {
    pub mode: WordMode,
    pub max_syllables: usize,
    entries: Vec<WordEntry>,
    layers: Vec<std::ops::Range<usize>>,
}

impl WordList {
    pub fn enumerate(mode: WordMode, max_syllables: usize) -> WordList {
        let mut entries: Vec<WordEntry> = Vec::new();
        let mut layers = Vec::new();
        let first: &[u8] = match mode {
            WordMode::C2C3 => &[0, 1, 2],
            WordMode::B3 => &[0, 1],
        };
        let start = entries.len();
        for &g in first {
            entries.push(WordEntry {
                parent: None,
                gen: g,
                syllables: 1,
            });
        }
        layers.push(start..entries.len());
        for depth in 2..=max_syllables {
            let prev = layers[depth - 2].clone();
            let start = entries.len();
            for parent in prev {
                let last = entries[parent].gen;
                let next: &[u8] = match mode {
                    WordMode::C2C3 => {
                        if last == 0 {
                            &[1, 2]
                        } else {
                            &[0]
                        }
                    }
                    WordMode::B3 => &[0, 1],
                };
                for &g in next {
                    entries.push(WordEntry {
                        parent: Some(parent),
                        gen: g,
                        syllables: depth,
                    });
                }
            }
            layers.push(start..entries.len());
        }
        WordList {
            mode,
            max_syllables,
            entries,
            layers,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[WordEntry] {
        &self.entries
    }

    pub fn layer(&self, syllables: usize) -> std::ops::Range<usize> {
        self.layers[syllables - 1].clone()
    }

    pub fn word_string(&self, idx: usize) -> String {
        let names: [&str; 3] = match self.mode {
            WordMode::C2C3 => ["s", "t", "t2"],
            WordMode::B3 => ["s1", "s2", ""],
        };
        let mut parts = Vec::new();
        let mut cur = Some(idx);
        while let Some(i) = cur {
            parts.push(names[self.entries[i].gen as usize]);
            cur = self.entries[i].parent;
        }
        parts.reverse();
        parts.join(".")
    }
}

/// The images of the word alphabet for a representation: [s, t, t²] in
/// quotient mode, [σ₁, σ₂] otherwise.
fn word_generators<F: Field>(rep: &BraidRep<F>, mode: WordMode) -> Result<Vec<Matrix<F>>, BraidError> {
    let field = rep.field().clone();
    match mode {
        WordMode::B3 => Ok(vec![rep.sigma1.clone(), rep.sigma2.clone()]),
        WordMode::C2C3 => {
            let mu_inv = field.inv(&rep.mu).ok_or(BraidError::ZeroMu)?;
            let mu2 = field.mul(&mu_inv, &mu_inv);
            let mu3 = field.mul(&mu2, &mu_inv);
            let s = rep.sigma1.mul(&rep.sigma2).mul(&rep.sigma1).scale(&mu3);
            let t = rep.sigma1.mul(&rep.sigma2).scale(&mu2);
            let t2 = t.mul(&t);
            Ok(vec![s, t, t2])
        }
    }
}

/// Traces of the listed words, in the list's deterministic order.
pub fn trace_coordinates<F: Field>(
    rep: &BraidRep<F>,
    words: &WordList,
) -> Result<Vec<F::Elem>, BraidError> {
    let gens = word_generators(rep, words.mode)?;
    let mut products: Vec<Matrix<F>> = Vec::with_capacity(words.len());
    let mut traces = Vec::with_capacity(words.len());
    for entry in words.entries() {
        let m = match entry.parent {
            None => gens[entry.gen as usize].clone(),
            Some(p) => products[p].mul(&gens[entry.gen as usize]),
        };
        traces.push(m.trace());
        products.push(m);
    }
    Ok(traces)
}

pub const DEFAULT_WORD_CAP: usize = 14;

/// Exact generic rank of the trace-Jacobian at a seeded base point.
///
/// One dual-number direction per differentiated parameter: the layout
/// parameters in quotient mode, plus μ in full mode.  Words are extended
/// layer by layer until two consecutive syllable-length increments add no
/// rank; exceeding the cap while still growing is an error, never a
/// silent truncation.
pub fn jacobian_rank<F: Field>(
    plan: &ComponentPlan,
    field: &F,
    seed: u64,
    mode: WordMode,
    max_syllables: usize,
) -> Result<usize, BraidError> {
    let (_, assignment) = instantiate(plan, field, seed)?;
    let dual = DualField::new(field.clone());
    let mut dirs = plan.b_params();
    if mode == WordMode::B3 {
        dirs.push(plan.mu_param);
    }

    // one lifted representation per direction
    let mut dir_gens: Vec<Vec<Matrix<DualField<F>>>> = Vec::with_capacity(dirs.len());
    for &dir in &dirs {
        let values: Vec<Dual<F::Elem>> = assignment
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| Dual {
                v: v.clone(),
                e: if i == dir.0 { field.one() } else { field.zero() },
            })
            .collect();
        let b = plan.layout.instantiate(&dual, &values);
        let mu = values[plan.mu_param.0].clone();
        let rep = lift(&b, &mu, &plan.sigma)?;
        dir_gens.push(word_generators(&rep, mode)?);
    }

    let words = WordList::enumerate(mode, max_syllables);
    let mut span = RowSpan::new(field.clone(), dirs.len());
    let mut ranks: Vec<usize> = Vec::new();
    // products for the previous layer, per word then per direction
    let mut prev: Vec<Vec<Matrix<DualField<F>>>> = Vec::new();
    let mut prev_start = 0usize;
    for depth in 1..=max_syllables {
        let layer = words.layer(depth);
        let mut cur: Vec<Vec<Matrix<DualField<F>>>> = Vec::with_capacity(layer.len());
        for idx in layer.clone() {
            let entry = &words.entries()[idx];
            let per_dir: Vec<Matrix<DualField<F>>> = (0..dirs.len())
                .map(|d| match entry.parent {
                    None => dir_gens[d][entry.gen as usize].clone(),
                    Some(p) => prev[p - prev_start][d].mul(&dir_gens[d][entry.gen as usize]),
                })
                .collect();
            let row: Vec<F::Elem> = per_dir.iter().map(|m| m.trace().e).collect();
            span.insert(row);
            cur.push(per_dir);
        }
        ranks.push(span.dim());
        if span.dim() == dirs.len() {
            return Ok(span.dim());
        }
        if depth >= 3 && ranks[depth - 1] == ranks[depth - 3] {
            return Ok(span.dim());
        }
        prev = cur;
        prev_start = words.layer(depth).start;
    }
    Err(BraidError::RankUnstable {
        cap: max_syllables,
        last: *ranks.last().unwrap_or(&0),
    })
}
