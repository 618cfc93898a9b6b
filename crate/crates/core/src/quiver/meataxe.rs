//! Certified simplicity test for quiver representations.
//!
//! The module over the algebra generated by the vertex projections and the
//! embedded arrow maps is simple iff it has no proper nonzero invariant
//! subspace.  The test combines:
//!
//! * spin-ups of standard basis vectors in the module and its dual
//!   (certifies many reducibles, including one-sided degeneracies),
//! * the randomized Norton criterion: for a singular algebra element θ of
//!   nullity one, the module is simple iff the kernel vector of θ spins to
//!   the whole space and the kernel vector of θᵀ spins to the whole dual;
//!   for larger kernels an exhaustive line sweep applies when the field is
//!   small enough (any proper submodule must meet ker θ or, dually, ker θᵀ),
//! * the algebra-dimension certificate: a closure of dimension D² means
//!   the generators span the full matrix algebra, hence no invariant
//!   subspace exists (decisive over large fields, where random algebra
//!   elements are almost never singular), and
//! * over small fields, a complete sweep of every line of every vertex
//!   space (a proper graded submodule contains a single-vertex vector).
//!
//! Every returned verdict is certified; the randomness only affects how
//! fast a certificate is found.

use super::QuiverRep;
use crate::linalg::{Matrix, RowSpan};
use crate::rng::SplitMix64;
use crate::scalars::Field;

/// Dimension of the smallest invariant subspace containing the start
/// vectors.
fn spin<F: Field>(field: &F, gens: &[Matrix<F>], starts: &[Vec<F::Elem>], total: usize) -> usize {
    let mut span = RowSpan::new(field.clone(), total);
    let mut queue = Vec::new();
    for s in starts {
        if let Some(v) = span.insert(s.clone()) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        if span.dim() == total {
            return total;
        }
        for g in gens {
            if let Some(r) = span.insert(g.mul_vec(&v)) {
                queue.push(r);
            }
        }
    }
    span.dim()
}

/// Number of lines in F^k, if small enough to sweep.
fn line_count(order: Option<u64>, k: usize, budget: u128) -> Option<u128> {
    let p = order? as u128;
    let mut count: u128 = 0;
    let mut pw: u128 = 1;
    for _ in 0..k {
        count += pw;
        if count > budget {
            return None;
        }
        pw = pw.checked_mul(p)?;
    }
    Some(count)
}

/// Applies `f` to one representative of every line of the span of `basis`,
/// stopping early when `f` returns false.
fn for_each_line<F: Field>(
    field: &F,
    basis: &[Vec<F::Elem>],
    mut f: impl FnMut(Vec<F::Elem>) -> bool,
) -> bool {
    let p = field.order().expect("finite field required");
    let k = basis.len();
    for lead in 0..k {
        let free = k - lead - 1;
        let mut combos: u128 = 1;
        for _ in 0..free {
            combos *= p as u128;
        }
        for idx in 0..combos {
            let mut v = basis[lead].clone();
            let mut rest = idx;
            for j in 0..free {
                let digit = (rest % p as u128) as u64;
                rest /= p as u128;
                if digit == 0 {
                    continue;
                }
                let coeff = field.elem_from_index(digit);
                for (t, b) in v.iter_mut().zip(&basis[lead + 1 + j]) {
                    *t = field.add(t, &field.mul(&coeff, b));
                }
            }
            if !f(v) {
                return false;
            }
        }
    }
    true
}

fn random_combination<F: Field>(
    field: &F,
    basis: &[Vec<F::Elem>],
    rng: &mut SplitMix64,
) -> Vec<F::Elem> {
    let width = basis[0].len();
    loop {
        let mut v = vec![field.zero(); width];
        for b in basis {
            let c = field.sample(rng);
            for (t, x) in v.iter_mut().zip(b) {
                *t = field.add(t, &field.mul(&c, x));
            }
        }
        if v.iter().any(|x| !field.is_zero(x)) {
            return v;
        }
    }
}

fn random_algebra_element<F: Field>(
    field: &F,
    gens: &[Matrix<F>],
    total: usize,
    rng: &mut SplitMix64,
) -> Matrix<F> {
    let mut theta = Matrix::identity(field.clone(), total).scale(&field.sample(rng));
    for g in gens {
        theta = theta.add(&g.scale(&field.sample(rng)));
    }
    for _ in 0..3 {
        let a = rng.next_below(gens.len() as u64) as usize;
        let b = rng.next_below(gens.len() as u64) as usize;
        theta = theta.add(&gens[a].mul(&gens[b]).scale(&field.sample(rng)));
    }
    theta
}

const KERNEL_LINE_BUDGET: u128 = 4_096;
const VERTEX_LINE_BUDGET: u128 = 200_000;
const NORTON_ATTEMPTS: usize = 48;

/// Dimension of the unital algebra generated by the matrices: the closure
/// of {1} under left multiplication by the generators.
fn algebra_dimension<F: Field>(field: &F, gens: &[Matrix<F>], total: usize) -> usize {
    let mut span = RowSpan::new(field.clone(), total * total);
    let identity = Matrix::identity(field.clone(), total);
    span.insert(identity.data().to_vec());
    let mut queue = vec![identity];
    while let Some(m) = queue.pop() {
        if span.dim() == total * total {
            break;
        }
        for g in gens {
            let prod = g.mul(&m);
            if span.insert(prod.data().to_vec()).is_some() {
                queue.push(prod);
            }
        }
    }
    span.dim()
}

/// Certified simplicity of the module attached to a quiver representation.
pub fn meataxe_is_simple<F: Field>(field: &F, rep: &QuiverRep<F>, seed: u64) -> bool {
    debug_assert!(F::IS_EXACT_FIELD);
    let total = rep.total_dim();
    if total == 0 {
        return false;
    }
    if total == 1 {
        return true;
    }
    let gens = rep.total_generators(field);
    let gens_t: Vec<Matrix<F>> = gens.iter().map(|g| g.transpose()).collect();

    for j in 0..total {
        let mut v = vec![field.zero(); total];
        v[j] = field.one();
        if spin(field, &gens, std::slice::from_ref(&v), total) < total {
            return false;
        }
        if spin(field, &gens_t, std::slice::from_ref(&v), total) < total {
            return false;
        }
    }

    let mut rng = SplitMix64::new(seed);
    for _ in 0..NORTON_ATTEMPTS {
        let theta = random_algebra_element(field, &gens, total, &mut rng);
        let kernel = theta.null_space();
        if kernel.is_empty() {
            continue;
        }
        let mut proper_found = false;
        for v in &kernel {
            if spin(field, &gens, std::slice::from_ref(v), total) < total {
                proper_found = true;
                break;
            }
        }
        if proper_found {
            return false;
        }
        let kernel_t = theta.transpose().null_space();
        for u in &kernel_t {
            if spin(field, &gens_t, std::slice::from_ref(u), total) < total {
                return false;
            }
        }
        if kernel.len() == 1 {
            // Norton: a proper submodule would meet ker θ, or its
            // annihilator would meet ker θᵀ; both single lines spin full.
            return true;
        }
        if line_count(field.order(), kernel.len(), KERNEL_LINE_BUDGET).is_some() {
            let primal_full = for_each_line(field, &kernel, |v| {
                spin(field, &gens, std::slice::from_ref(&v), total) == total
            });
            if !primal_full {
                return false;
            }
            let dual_full = for_each_line(field, &kernel_t, |u| {
                spin(field, &gens_t, std::slice::from_ref(&u), total) == total
            });
            return dual_full;
        }
        for _ in 0..4 {
            let v = random_combination(field, &kernel, &mut rng);
            if spin(field, &gens, std::slice::from_ref(&v), total) < total {
                return false;
            }
            let u = random_combination(field, &kernel_t, &mut rng);
            if spin(field, &gens_t, std::slice::from_ref(&u), total) < total {
                return false;
            }
        }
    }

    if algebra_dimension(field, &gens, total) == total * total {
        return true;
    }

    if vertex_lines_within(field, rep, VERTEX_LINE_BUDGET) {
        return exhaustive_is_simple(field, rep);
    }

    panic!("meataxe: certification budget exhausted on a non-generic input");
}

fn vertex_lines_within<F: Field>(field: &F, rep: &QuiverRep<F>, budget: u128) -> bool {
    let mut total: u128 = 0;
    for &d in &rep.dims {
        if d == 0 {
            continue;
        }
        match line_count(field.order(), d, budget) {
            Some(c) => total += c,
            None => return false,
        }
        if total > budget {
            return false;
        }
    }
    true
}

/// Complete simplicity decision by spinning one representative of every
/// line of every vertex space.  Any proper graded submodule contains a
/// nonzero vector supported on a single vertex, so this search is
/// exhaustive.  Only usable over small finite fields.
pub fn exhaustive_is_simple<F: Field>(field: &F, rep: &QuiverRep<F>) -> bool {
    let total = rep.total_dim();
    if total == 0 {
        return false;
    }
    if total == 1 {
        return true;
    }
    let gens = rep.total_generators(field);
    let offs = rep.vertex_offsets();
    for (vi, &d) in rep.dims.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let basis: Vec<Vec<F::Elem>> = (0..d)
            .map(|i| {
                let mut v = vec![field.zero(); total];
                v[offs[vi] + i] = field.one();
                v
            })
            .collect();
        let all_full = for_each_line(field, &basis, |v| {
            spin(field, &gens, std::slice::from_ref(&v), total) == total
        });
        if !all_full {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimvectors::validate_sigma;
    use crate::linalg::Matrix;
    use crate::quiver::{westbury_rep, Quiver, QuiverRep};
    use crate::rng::SplitMix64;
    use crate::scalars::{make_prime_field, PrimeField};

    fn f7() -> PrimeField {
        make_prime_field(7).unwrap()
    }

    #[test]
    fn single_vertex_dim_one_is_simple() {
        let f = f7();
        let q = Quiver::new(vec!["v"]);
        let rep = QuiverRep::new(q, vec![1], vec![]).unwrap();
        assert!(meataxe_is_simple(&f, &rep, 0));
    }

    #[test]
    fn two_isolated_vertices_are_not_simple() {
        let f = f7();
        let q = Quiver::new(vec!["v", "w"]);
        let rep = QuiverRep::new(q, vec![1, 1], vec![]).unwrap();
        assert!(!meataxe_is_simple(&f, &rep, 0));
    }

    #[test]
    fn two_dimensional_family_at_q2_is_simple() {
        // the doubled eigenbasis representation of B = [[2,1],[1,1]] over F7
        let f = f7();
        let sigma = validate_sigma(1, 1, 1, 1, 0).unwrap();
        let b = Matrix::from_i64_rows(f, &[&[2, 1], &[1, 1]]);
        let rep = westbury_rep(&b, &sigma).unwrap();
        assert!(meataxe_is_simple(&f, &rep, 1));
        assert!(exhaustive_is_simple(&f, &rep));
    }

    fn random_small_rep(rng: &mut SplitMix64, f: PrimeField) -> QuiverRep<PrimeField> {
        // random quiver with 1..=3 vertices, dims summing to <= 6,
        // 0..=4 arrows (loops allowed)
        loop {
            let nv = 1 + rng.next_below(3) as usize;
            let dims: Vec<usize> = (0..nv).map(|_| rng.next_below(3) as usize).collect();
            let total: usize = dims.iter().sum();
            if total == 0 || total > 6 {
                continue;
            }
            let labels: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let mut quiver = Quiver::new(labels.clone());
            let na = rng.next_below(5) as usize;
            for k in 0..na {
                let s = rng.next_below(nv as u64) as usize;
                let t = rng.next_below(nv as u64) as usize;
                quiver.add_arrow(&labels[s], &labels[t], &format!("a{k}"));
            }
            let mats: Vec<Matrix<PrimeField>> = quiver
                .arrows()
                .iter()
                .map(|a| Matrix::from_fn(f, dims[a.dst], dims[a.src], |_, _| f.sample(rng)))
                .collect();
            return QuiverRep::new(quiver, dims, mats).unwrap();
        }
    }

    #[test]
    fn meataxe_agrees_with_exhaustive_search_total_dim_at_most_6() {
        let f = f7();
        let mut rng = SplitMix64::new(99);
        for trial in 0..60 {
            let rep = random_small_rep(&mut rng, f);
            let certified = meataxe_is_simple(&f, &rep, 1000 + trial);
            let oracle = exhaustive_is_simple(&f, &rep);
            assert_eq!(certified, oracle, "trial {trial}: {:?}", rep.dims);
        }
    }

    #[test]
    fn single_loop_with_irreducible_charpoly_is_simple_but_small_field() {
        // companion of t^2 - t - 4, irreducible over F7: simple module whose
        // endomorphism ring is F49, exercising the even-nullity kernel sweep
        let f = f7();
        let mut q = Quiver::new(vec!["v"]);
        q.add_arrow("v", "v", "l");
        let a = Matrix::from_i64_rows(f, &[&[0, 4], &[1, 1]]);
        let rep = QuiverRep::new(q.clone(), vec![2], vec![a]).unwrap();
        assert!(meataxe_is_simple(&f, &rep, 3));
        assert!(exhaustive_is_simple(&f, &rep));

        // reducible companion t^2 - t = t(t-1)
        let a = Matrix::from_i64_rows(f, &[&[0, 0], &[1, 1]]);
        let rep = QuiverRep::new(q, vec![2], vec![a]).unwrap();
        assert!(!meataxe_is_simple(&f, &rep, 4));
    }
}
