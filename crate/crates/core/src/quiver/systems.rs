//! Linear control systems (A, B, C), their quiver dictionary, canonicity,
//! and the companion canonical form.

use serde::{Deserialize, Serialize};

use super::{Quiver, QuiverError, QuiverRep};
use crate::linalg::{krylov_matrix, matrix_from_json, matrix_to_json, Matrix, MatrixJson};
use crate::scalars::Field;

/// Σ = (A, B, C) with A n×n, B n×m, C p×n.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<F: Field> {
    pub a: Matrix<F>,
    pub b: Matrix<F>,
    pub c: Matrix<F>,
}

impl<F: Field> LinearSystem<F> {
    pub fn new(a: Matrix<F>, b: Matrix<F>, c: Matrix<F>) -> Result<Self, QuiverError> {
        if !a.is_square() || b.rows() != a.rows() || c.cols() != a.rows() {
            return Err(QuiverError::BadRep(format!(
                "inconsistent system shapes: A {}x{}, B {}x{}, C {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols()
            )));
        }
        Ok(LinearSystem { a, b, c })
    }

    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }
    pub fn input_dim(&self) -> usize {
        self.b.cols()
    }
    pub fn output_dim(&self) -> usize {
        self.c.rows()
    }
}

/// The two-vertex quiver with m forward arrows, p backward arrows and one
/// loop, valued by the columns of B, the rows of C and the matrix A.
pub fn sys_to_rep<F: Field>(sys: &LinearSystem<F>) -> QuiverRep<F> {
    let (n, m, p) = (sys.state_dim(), sys.input_dim(), sys.output_dim());
    let mut quiver = Quiver::new(vec!["in", "state"]);
    let mut mats = Vec::new();
    for i in 0..m {
        quiver.add_arrow("in", "state", &format!("b{}", i + 1));
        mats.push(sys.b.column(i));
    }
    for j in 0..p {
        quiver.add_arrow("state", "in", &format!("c{}", j + 1));
        mats.push(sys.c.submatrix(j, j + 1, 0, n));
    }
    quiver.add_arrow("state", "state", "A");
    mats.push(sys.a.clone());
    QuiverRep::new(quiver, vec![1, n], mats).expect("shapes are consistent by construction")
}

/// Inverse of [`sys_to_rep`]; the representation must have the two-vertex
/// shape produced there.
pub fn rep_to_sys<F: Field>(rep: &QuiverRep<F>) -> Result<LinearSystem<F>, QuiverError> {
    let field = rep
        .mats
        .first()
        .map(|m| m.field().clone())
        .ok_or_else(|| QuiverError::BadRep("no arrows".into()))?;
    let state = rep
        .quiver
        .vertex_index("state")
        .ok_or_else(|| QuiverError::BadRep("missing state vertex".into()))?;
    let n = rep.dims[state];
    let a = rep
        .arrow_matrix("A")
        .ok_or_else(|| QuiverError::BadRep("missing loop".into()))?
        .clone();
    let mut b_cols = Vec::new();
    let mut c_rows = Vec::new();
    for (k, arrow) in rep.quiver.arrows().iter().enumerate() {
        if arrow.label.starts_with('b') {
            b_cols.push(rep.mats[k].clone());
        } else if arrow.label.starts_with('c') {
            c_rows.push(rep.mats[k].clone());
        }
    }
    let m = b_cols.len();
    let p = c_rows.len();
    let b = Matrix::from_fn(field.clone(), n, m, |r, c| b_cols[c].get(r, 0).clone());
    let c = Matrix::from_fn(field, p, n, |r, cc| c_rows[r].get(0, cc).clone());
    LinearSystem::new(a, b, c)
}

/// Controllability matrix [B AB … A^{n-1}B].
pub fn controllability<F: Field>(sys: &LinearSystem<F>) -> Matrix<F> {
    let n = sys.state_dim();
    let m = sys.input_dim();
    let field = sys.a.field().clone();
    let mut cols: Vec<Matrix<F>> = Vec::with_capacity(n);
    let mut cur = sys.b.clone();
    for _ in 0..n {
        cols.push(cur.clone());
        cur = sys.a.mul(&cur);
    }
    Matrix::from_fn(field, n, n * m, |r, c| cols[c / m].get(r, c % m).clone())
}

/// Stacked observability matrix [C; CA; …; CA^{n-1}].
pub fn observability<F: Field>(sys: &LinearSystem<F>) -> Matrix<F> {
    let n = sys.state_dim();
    let p = sys.output_dim();
    let field = sys.a.field().clone();
    let mut rows: Vec<Matrix<F>> = Vec::with_capacity(n);
    let mut cur = sys.c.clone();
    for _ in 0..n {
        rows.push(cur.clone());
        cur = cur.mul(&sys.a);
    }
    Matrix::from_fn(field, n * p, n, |r, c| rows[r / p].get(r % p, c).clone())
}

/// A system is canonical when both the controllability and the stacked
/// observability matrix have full rank n.
pub fn is_canonical<F: Field>(sys: &LinearSystem<F>) -> bool {
    let n = sys.state_dim();
    controllability(sys).rank() == n && observability(sys).rank() == n
}

/// The Markov parameters CA^kB for k < count; complete equivalence
/// invariants of the system.
pub fn markov_params<F: Field>(sys: &LinearSystem<F>, count: usize) -> Vec<Matrix<F>> {
    let mut out = Vec::with_capacity(count);
    let mut akb = sys.b.clone();
    for _ in 0..count {
        out.push(sys.c.mul(&akb));
        akb = sys.a.mul(&akb);
    }
    out
}

/// Equivalent triple with A in companion form and first input column e₁.
///
/// The base change is the inverse of the Krylov matrix of (A, B₁); all
/// Markov parameters are preserved exactly.  Fails with `NotCyclic` when B₁
/// is not a cyclic vector for A.
pub fn canonical_form<F: Field>(sys: &LinearSystem<F>) -> Result<LinearSystem<F>, QuiverError> {
    if sys.input_dim() == 0 {
        return Err(QuiverError::NotCyclic);
    }
    let k = krylov_matrix(&sys.a, &sys.b.column(0));
    let kinv = k.inverse().map_err(|_| QuiverError::NotCyclic)?;
    let a = kinv.mul(&sys.a).mul(&k);
    let b = kinv.mul(&sys.b);
    let c = sys.c.mul(&k);
    LinearSystem::new(a, b, c)
}

/// Checks the companion pattern: subdiagonal ones, zeros elsewhere except
/// the last column.
pub fn is_companion<F: Field>(a: &Matrix<F>) -> bool {
    if !a.is_square() {
        return false;
    }
    let f = a.field();
    let n = a.rows();
    for r in 0..n {
        for c in 0..n.saturating_sub(1) {
            let e = a.get(r, c);
            if r == c + 1 {
                if !f.is_one(e) {
                    return false;
                }
            } else if !f.is_zero(e) {
                return false;
            }
        }
    }
    true
}

/// JSON form of a system: `{a, b, c}` with per-matrix field tags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearSystemJson {
    pub a: MatrixJson,
    pub b: MatrixJson,
    pub c: MatrixJson,
}

pub fn sys_to_json<F: Field>(sys: &LinearSystem<F>) -> LinearSystemJson {
    LinearSystemJson {
        a: matrix_to_json(&sys.a),
        b: matrix_to_json(&sys.b),
        c: matrix_to_json(&sys.c),
    }
}

pub fn sys_from_json<F: Field>(field: F, json: &LinearSystemJson) -> Result<LinearSystem<F>, QuiverError> {
    LinearSystem::new(
        matrix_from_json(field.clone(), &json.a)?,
        matrix_from_json(field.clone(), &json.b)?,
        matrix_from_json(field, &json.c)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::scalars::{make_prime_field, EisensteinField, PrimeField, DEFAULT_PRIME};

    fn sys_i64(
        field: PrimeField,
        a: &[&[i64]],
        b: &[&[i64]],
        c: &[&[i64]],
    ) -> LinearSystem<PrimeField> {
        LinearSystem::new(
            Matrix::from_i64_rows(field, a),
            Matrix::from_i64_rows(field, b),
            Matrix::from_i64_rows(field, c),
        )
        .unwrap()
    }

    #[test]
    fn sys_to_rep_reads_off_columns_and_rows() {
        let f = make_prime_field(7).unwrap();
        let sys = sys_i64(f, &[&[2]], &[&[3]], &[&[5]]);
        let rep = sys_to_rep(&sys);
        assert_eq!(rep.dims, vec![1, 1]);
        assert_eq!(rep.arrow_matrix("b1").unwrap().get(0, 0), &3);
        assert_eq!(rep.arrow_matrix("c1").unwrap().get(0, 0), &5);
        assert_eq!(rep.arrow_matrix("A").unwrap().get(0, 0), &2);

        let sys = sys_i64(f, &[&[1, 0], &[0, 1]], &[&[1, 2], &[3, 4]], &[&[5, 6]]);
        let rep = sys_to_rep(&sys);
        assert_eq!(rep.arrow_matrix("b2").unwrap().get(0, 0), &2);
        assert_eq!(rep.arrow_matrix("b2").unwrap().get(1, 0), &4);
        let back = rep_to_sys(&rep).unwrap();
        assert_eq!(back, sys);
    }

    #[test]
    fn canonicity_examples() {
        let f = make_prime_field(7).unwrap();
        let nilpotent = &[&[0i64, 1][..], &[0, 0][..]];
        let bad = sys_i64(f, nilpotent, &[&[1], &[0]], &[&[1, 1]]);
        assert!(!is_canonical(&bad));
        let good = sys_i64(f, nilpotent, &[&[0], &[1]], &[&[1, 0]]);
        assert!(is_canonical(&good));
        let zero_b = sys_i64(f, nilpotent, &[&[0], &[0]], &[&[1, 0]]);
        assert!(!is_canonical(&zero_b));
    }

    #[test]
    fn canonical_form_examples() {
        let q = EisensteinField;
        let a = Matrix::from_i64_rows(q, &[&[1, 0], &[0, 2]]);
        let b = Matrix::from_i64_rows(q, &[&[1], &[1]]);
        let c = Matrix::from_i64_rows(q, &[&[1, 0]]);
        let sys = LinearSystem::new(a, b, c).unwrap();
        let canon = canonical_form(&sys).unwrap();
        assert_eq!(canon.a, Matrix::from_i64_rows(q, &[&[0, -2], &[1, 3]]));
        assert_eq!(canon.b, Matrix::from_i64_rows(q, &[&[1], &[0]]));
        // already canonical input is a fixed point
        let again = canonical_form(&canon).unwrap();
        assert_eq!(again, canon);

        let id = Matrix::identity(q, 2);
        let sys = LinearSystem::new(
            id,
            Matrix::from_i64_rows(q, &[&[1], &[0]]),
            Matrix::from_i64_rows(q, &[&[0, 1]]),
        )
        .unwrap();
        assert_eq!(canonical_form(&sys), Err(QuiverError::NotCyclic));
    }

    #[test]
    fn canonical_systems_are_exactly_the_simple_representations() {
        let f = make_prime_field(DEFAULT_PRIME).unwrap();
        let mut rng = SplitMix64::new(41);
        for trial in 0..100u64 {
            let n = 1 + (rng.next_below(4) as usize);
            let m = 1 + (rng.next_below(4) as usize);
            let p = 1 + (rng.next_below(4) as usize);
            let mut a = Matrix::from_fn(f, n, n, |_, _| f.sample(&mut rng));
            let mut b = Matrix::from_fn(f, n, m, |_, _| f.sample(&mut rng));
            let mut c = Matrix::from_fn(f, p, n, |_, _| f.sample(&mut rng));
            match trial % 3 {
                1 if n >= 2 => {
                    // uncontrollable: A lower-left block zero, B supported
                    // in the top block
                    for r in n / 2..n {
                        for cc in 0..n / 2 {
                            a.set(r, cc, 0);
                        }
                        for cc in 0..m {
                            b.set(r, cc, 0);
                        }
                    }
                }
                2 if n >= 2 => {
                    // unobservable: A upper-right block zero, C supported
                    // on the left block
                    for r in 0..n / 2 {
                        for cc in n / 2..n {
                            a.set(r, cc, 0);
                        }
                    }
                    for r in 0..p {
                        for cc in n / 2..n {
                            c.set(r, cc, 0);
                        }
                    }
                }
                _ => {}
            }
            let sys = LinearSystem::new(a, b, c).unwrap();
            let rep = sys_to_rep(&sys);
            assert_eq!(
                crate::quiver::meataxe_is_simple(&f, &rep, 2000 + trial),
                is_canonical(&sys),
                "trial {trial}: n={n} m={m} p={p}"
            );
        }
    }

    #[test]
    fn equivalence_preserves_markov_parameters_and_canonicity() {
        let f = make_prime_field(DEFAULT_PRIME).unwrap();
        let mut rng = SplitMix64::new(23);
        for _ in 0..25 {
            let n = 1 + (rng.next_below(3) as usize);
            let m = 1 + (rng.next_below(3) as usize);
            let p = 1 + (rng.next_below(3) as usize);
            let sys = LinearSystem::new(
                Matrix::from_fn(f, n, n, |_, _| f.sample(&mut rng)),
                Matrix::from_fn(f, n, m, |_, _| f.sample(&mut rng)),
                Matrix::from_fn(f, p, n, |_, _| f.sample(&mut rng)),
            )
            .unwrap();
            let g = loop {
                let g = Matrix::from_fn(f, n, n, |_, _| f.sample(&mut rng));
                if g.inverse().is_ok() {
                    break g;
                }
            };
            let ginv = g.inverse().unwrap();
            let moved = LinearSystem::new(
                g.mul(&sys.a).mul(&ginv),
                g.mul(&sys.b),
                sys.c.mul(&ginv),
            )
            .unwrap();
            assert_eq!(markov_params(&sys, 2 * n), markov_params(&moved, 2 * n));
            assert_eq!(is_canonical(&sys), is_canonical(&moved));
        }
    }
}
