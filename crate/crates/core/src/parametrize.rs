//! Symbolic base-change layouts per component: the case tables for a > b
//! and a = b, parameter counting, instantiation at field points, and the
//! general assembly from a local-quiver representation.
//!
//! The printed block displays these tables transcribe contain subscript
//! typos.  Two mechanical rules resolve them, applied in this order:
//! identity-block sizes are forced by the grid's group sizes, and the
//! general assembly evaluated at the zero representation must reproduce the
//! base matrix B₀.  Every applied correction is reported in the plan.

use serde::Serialize;
use thiserror::Error;

use crate::dimvectors::{n_sigma, tau_for, ComponentCase, DimError, SigmaVector, TauVector};
use crate::gadgets::{
    basis_column, basis_column_generic, companion, generic, padded_identity, reduced_companion,
    AffineEntry, LayoutDump, ParamId, ParameterRegistry, SymbolicBlockMatrix, SymbolicMatrix,
};
use crate::linalg::{block_assemble, LinalgError, Matrix};
use crate::quiver::{b0_col_widths, b0_row_heights, local_quiver, QuiverError, QuiverRep};
use crate::rng::SplitMix64;
use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error(transparent)]
    Dim(#[from] DimError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    /// Signals a layout bug: valid plans hit an invertible point within a
    /// few draws.
    #[error("instantiated matrix stayed singular after {draws} draws")]
    PersistentlySingular { draws: u32 },
}

/// A fully built symbolic layout for one component.
#[derive(Debug, Clone)]
pub struct ComponentPlan {
    pub sigma: SigmaVector,
    pub tau: TauVector,
    pub case: ComponentCase,
    pub layout: SymbolicBlockMatrix,
    pub registry: ParameterRegistry,
    pub q_param: Option<ParamId>,
    pub mu_param: ParamId,
    pub corrections: Vec<String>,
    row_group_bounds: [usize; 4],
    col_group_bounds: [usize; 3],
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Id,
    /// Identity whose printed subscript disagrees with the forced size.
    IdCorrected {
        printed: &'static str,
        forced: &'static str,
    },
    QId,
    QIdCompanion,
    IdCompanion,
    Companion,
    ReducedCompanion,
    PaddedIdentity,
    BasisColumn,
    BasisGeneric,
    Generic,
}

impl Slot {
    fn kind_name(&self) -> &'static str {
        match self {
            Slot::Id | Slot::IdCorrected { .. } => "identity",
            Slot::QId => "q_identity",
            Slot::QIdCompanion => "q_identity_plus_companion",
            Slot::IdCompanion => "identity_plus_companion",
            Slot::Companion => "companion",
            Slot::ReducedCompanion => "reduced_companion",
            Slot::PaddedIdentity => "padded_identity",
            Slot::BasisColumn => "basis_column",
            Slot::BasisGeneric => "basis_column_generic",
            Slot::Generic => "generic",
        }
    }
}

/// Layout for a > b.  Row groups (d,f,g | e,1,f,h | e,1,g,h), column groups
/// (d,e,1,f,g,h | e,1,f,g,h).
const GREATER_SLOTS: &[(usize, usize, Slot)] = &[
    (0, 0, Slot::Id),
    (0, 6, Slot::PaddedIdentity),
    (0, 7, Slot::BasisColumn),
    (0, 10, Slot::Generic),
    (1, 1, Slot::Generic),
    (1, 3, Slot::QIdCompanion),
    (1, 7, Slot::BasisColumn),
    (1, 8, Slot::Id),
    (1, 10, Slot::Generic),
    (2, 4, Slot::QId),
    (2, 5, Slot::Generic),
    (2, 9, Slot::Id),
    (3, 0, Slot::ReducedCompanion),
    (3, 1, Slot::Generic),
    (3, 4, Slot::Generic),
    (3, 6, Slot::Id),
    (4, 2, Slot::Id),
    (4, 7, Slot::Generic),
    (4, 9, Slot::Generic),
    (5, 3, Slot::Id),
    (5, 8, Slot::Id),
    (5, 9, Slot::Generic),
    (6, 0, Slot::BasisGeneric),
    (6, 4, Slot::Generic),
    (6, 5, Slot::QIdCompanion),
    (6, 10, Slot::Id),
    (7, 1, Slot::Id),
    (7, 6, Slot::Id),
    (7, 8, Slot::Generic),
    (8, 0, Slot::Generic),
    (8, 2, Slot::Id),
    (8, 3, Slot::Generic),
    (8, 7, Slot::Id),
    (9, 2, Slot::BasisColumn),
    (9, 4, Slot::IdCompanion),
    (9, 6, Slot::Generic),
    (9, 8, Slot::Generic),
    (9, 9, Slot::Id),
    (10, 3, Slot::Generic),
    (10, 5, Slot::Id),
    (
        10,
        10,
        Slot::IdCorrected {
            printed: "g",
            forced: "h",
        },
    ),
];

/// Layout for a = b.  Row groups (e,d,g | e,f,h | 1,g,h), column groups
/// (e,1,f,g,h | e,d,g,h); in the even case every d is replaced by e.
const EQUAL_SLOTS: &[(usize, usize, Slot)] = &[
    (0, 0, Slot::Id),
    (0, 5, Slot::Companion),
    (0, 8, Slot::Generic),
    (1, 1, Slot::BasisColumn),
    (1, 2, Slot::PaddedIdentity),
    (1, 4, Slot::Generic),
    (1, 6, Slot::Id),
    (2, 3, Slot::QId),
    (2, 4, Slot::Generic),
    (2, 7, Slot::Id),
    (3, 0, Slot::Id),
    (3, 1, Slot::BasisColumn),
    (3, 3, Slot::Generic),
    (3, 5, Slot::Id),
    (4, 2, Slot::Id),
    (4, 6, Slot::ReducedCompanion),
    (4, 7, Slot::Generic),
    (5, 0, Slot::BasisGeneric),
    (5, 3, Slot::Generic),
    (5, 4, Slot::QIdCompanion),
    (5, 6, Slot::Generic),
    (5, 8, Slot::Id),
    (6, 1, Slot::Id),
    (6, 5, Slot::Generic),
    (6, 6, Slot::Generic),
    (7, 2, Slot::Generic),
    (7, 3, Slot::IdCompanion),
    (7, 5, Slot::BasisGeneric),
    (7, 7, Slot::Id),
    (8, 4, Slot::Id),
    (8, 8, Slot::Id),
];

fn get_q(reg: &mut ParameterRegistry, q_param: &mut Option<ParamId>) -> ParamId {
    *q_param.get_or_insert_with(|| reg.fresh("q"))
}

fn build_slot(
    layout: &mut SymbolicBlockMatrix,
    reg: &mut ParameterRegistry,
    q_param: &mut Option<ParamId>,
    corrections: &mut Vec<String>,
    r: usize,
    c: usize,
    slot: Slot,
) -> Result<(), LinalgError> {
    let h = layout.row_heights[r];
    let w = layout.col_widths[c];
    if h == 0 || w == 0 {
        return Ok(());
    }
    let prefix = format!("r{r}c{c}");
    let mat = match slot {
        Slot::Id => {
            assert_eq!(h, w, "identity slot ({r},{c})");
            SymbolicMatrix::identity(h)
        }
        Slot::IdCorrected { printed, forced } => {
            assert_eq!(h, w);
            corrections.push(format!(
                "block ({},{}): printed 1_{printed} read as 1_{forced} (forced by block widths)",
                r + 1,
                c + 1
            ));
            SymbolicMatrix::identity(h)
        }
        Slot::QId => {
            assert_eq!(h, w);
            let q = get_q(reg, q_param);
            let mut m = SymbolicMatrix::zeros(h, h);
            for i in 0..h {
                m.set(i, i, AffineEntry::param(q));
            }
            m
        }
        Slot::QIdCompanion => {
            assert_eq!(h, w);
            let q = get_q(reg, q_param);
            let mut m = companion(h, reg, &prefix);
            m.add_scalar_param_to_diagonal(q);
            m
        }
        Slot::IdCompanion => {
            assert_eq!(h, w);
            let mut m = companion(h, reg, &prefix);
            m.add_constant_to_diagonal(1);
            m
        }
        Slot::Companion => {
            assert_eq!(h, w);
            companion(h, reg, &prefix)
        }
        Slot::ReducedCompanion => {
            assert_eq!(h + 1, w, "reduced companion slot ({r},{c})");
            reduced_companion(w, reg, &prefix)
        }
        Slot::PaddedIdentity => {
            assert_eq!(h, w + 1, "padded identity slot ({r},{c})");
            padded_identity(w)
        }
        Slot::BasisColumn => {
            assert_eq!(w, 1);
            basis_column(h)
        }
        Slot::BasisGeneric => basis_column_generic(h, w, reg, &prefix),
        Slot::Generic => generic(h, w, reg, &prefix),
    };
    layout.place(r, c, slot.kind_name(), mat)
}

/// Heights, widths, slot table and group boundaries of one case layout.
type CaseTable = (
    Vec<usize>,
    Vec<usize>,
    &'static [(usize, usize, Slot)],
    [usize; 4],
    [usize; 3],
);

/// Builds the symbolic layout for a supported component.
pub fn plan_component(sigma: &SigmaVector) -> Result<ComponentPlan, ParamError> {
    let (tau, case) = tau_for(sigma)?;
    let (heights, widths, slots, row_bounds, col_bounds): CaseTable = match case {
        ComponentCase::Greater { d, e, f, g, h } => (
            vec![d, f, g, e, 1, f, h, e, 1, g, h],
            vec![d, e, 1, f, g, h, e, 1, f, g, h],
            GREATER_SLOTS,
            [0, 3, 7, 11],
            [0, 6, 11],
        ),
        ComponentCase::EqualOdd { d, e, f, g, h, .. } => (
            vec![e, d, g, e, f, h, 1, g, h],
            vec![e, 1, f, g, h, e, d, g, h],
            EQUAL_SLOTS,
            [0, 3, 6, 9],
            [0, 5, 9],
        ),
        ComponentCase::EqualEven { e, f, g, h, .. } => (
            vec![e, e, g, e, f, h, 1, g, h],
            vec![e, 1, f, g, h, e, e, g, h],
            EQUAL_SLOTS,
            [0, 3, 6, 9],
            [0, 5, 9],
        ),
    };
    let mut layout = SymbolicBlockMatrix::new(heights, widths);
    let mut registry = ParameterRegistry::new();
    let mut q_param = None;
    let mut corrections = Vec::new();
    for &(r, c, slot) in slots {
        build_slot(&mut layout, &mut registry, &mut q_param, &mut corrections, r, c, slot)?;
    }
    let mu_param = registry.fresh("mu");
    let plan = ComponentPlan {
        sigma: *sigma,
        tau,
        case,
        layout,
        registry,
        q_param,
        mu_param,
        corrections,
        row_group_bounds: row_bounds,
        col_group_bounds: col_bounds,
    };
    debug_assert_eq!(plan.row_group_sums(), [sigma.x(), sigma.y(), sigma.z()]);
    debug_assert_eq!(plan.col_group_sums(), [sigma.a(), sigma.b()]);
    debug_assert_eq!(plan.layout.total_rows(), sigma.n());
    debug_assert_eq!(plan.layout.total_cols(), sigma.n());
    Ok(plan)
}

impl ComponentPlan {
    /// Number of layout parameters (μ excluded; q counted when it occurs).
    pub fn count_parameters(&self) -> usize {
        self.registry.len() - 1
    }

    /// The parameter ids occurring in the base-change matrix (everything
    /// except μ).
    pub fn b_params(&self) -> Vec<ParamId> {
        (0..self.registry.len())
            .map(ParamId)
            .filter(|id| *id != self.mu_param)
            .collect()
    }

    pub fn row_group_sums(&self) -> [usize; 3] {
        let h = &self.layout.row_heights;
        let b = &self.row_group_bounds;
        [
            h[b[0]..b[1]].iter().sum(),
            h[b[1]..b[2]].iter().sum(),
            h[b[2]..b[3]].iter().sum(),
        ]
    }

    pub fn col_group_sums(&self) -> [usize; 2] {
        let w = &self.layout.col_widths;
        let b = &self.col_group_bounds;
        [w[b[0]..b[1]].iter().sum(), w[b[1]..b[2]].iter().sum()]
    }

    pub fn row_groups(&self) -> Vec<Vec<usize>> {
        let b = &self.row_group_bounds;
        vec![
            self.layout.row_heights[b[0]..b[1]].to_vec(),
            self.layout.row_heights[b[1]..b[2]].to_vec(),
            self.layout.row_heights[b[2]..b[3]].to_vec(),
        ]
    }

    pub fn col_groups(&self) -> Vec<Vec<usize>> {
        let b = &self.col_group_bounds;
        vec![
            self.layout.col_widths[b[0]..b[1]].to_vec(),
            self.layout.col_widths[b[1]..b[2]].to_vec(),
        ]
    }

    pub fn report(&self, with_layout: bool) -> PlanReport {
        PlanReport {
            sigma: self.sigma.to_string(),
            n: self.sigma.n(),
            n_sigma: n_sigma(&self.sigma),
            tau: self.tau.to_string(),
            case: self.case.to_string(),
            row_groups: self.row_groups(),
            col_groups: self.col_groups(),
            parameters: self
                .b_params()
                .iter()
                .map(|id| self.registry.name(*id).to_string())
                .collect(),
            corrections: self.corrections.clone(),
            layout: with_layout.then(|| self.layout.dump(&self.registry)),
        }
    }
}

/// Plan report payload: `{sigma, tau, case, row_groups, col_groups,
/// parameters, corrections}` plus the optional block dump.
#[derive(Debug, Clone, Serialize)]
pub struct PlanReport {
    pub sigma: String,
    pub n: usize,
    pub n_sigma: usize,
    pub tau: String,
    pub case: String,
    pub row_groups: Vec<Vec<usize>>,
    pub col_groups: Vec<Vec<usize>>,
    pub parameters: Vec<String>,
    pub corrections: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layout: Option<LayoutDump>,
}

/// A complete parameter assignment drawn from a seeded stream.
#[derive(Debug, Clone)]
pub struct PointAssignment<F: Field> {
    pub values: Vec<F::Elem>,
    pub seed: u64,
    /// Number of draws until the matrix came out invertible.
    pub draws: u32,
}

impl<F: Field> PointAssignment<F> {
    pub fn value(&self, id: ParamId) -> &F::Elem {
        &self.values[id.0]
    }
}

fn sample_values<F: Field>(plan: &ComponentPlan, field: &F, rng: &mut SplitMix64) -> Vec<F::Elem> {
    let mut values = Vec::with_capacity(plan.registry.len());
    for idx in 0..plan.registry.len() {
        let id = ParamId(idx);
        let v = if id == plan.mu_param {
            loop {
                let v = field.sample(rng);
                if !field.is_zero(&v) {
                    break v;
                }
            }
        } else if Some(id) == plan.q_param {
            loop {
                let v = field.sample(rng);
                if !field.is_zero(&v) && !field.is_one(&v) {
                    break v;
                }
            }
        } else {
            field.sample(rng)
        };
        values.push(v);
    }
    values
}

/// Draws a parameter point and instantiates the layout, resampling up to
/// five times on a singular draw.  Deterministic for fixed (field, seed).
pub fn instantiate<F: Field>(
    plan: &ComponentPlan,
    field: &F,
    seed: u64,
) -> Result<(Matrix<F>, PointAssignment<F>), ParamError> {
    let mut rng = SplitMix64::new(seed);
    for draw in 1..=5u32 {
        let values = sample_values(plan, field, &mut rng);
        let b = plan.layout.instantiate(field, &values);
        if b.inverse().is_ok() {
            return Ok((
                b,
                PointAssignment {
                    values,
                    seed,
                    draws: draw,
                },
            ));
        }
    }
    Err(ParamError::PersistentlySingular { draws: 5 })
}

#[derive(Debug, Clone, Copy)]
enum DeformedSlot {
    Id,
    QId,
    QIdLoop(&'static str),
    IdLoop(&'static str),
    Arrow(&'static str),
}

/// The 12×12 deformed base-change grid: identity and q-blocks at the base
/// point positions, arrow matrices of the local-quiver representation in
/// the deformation slots, loops added to their base blocks.
const DEFORMED_SLOTS: &[(usize, usize, DeformedSlot)] = &[
    (0, 0, DeformedSlot::Id),
    (0, 6, DeformedSlot::Arrow("C21")),
    (0, 8, DeformedSlot::Arrow("C61")),
    (0, 11, DeformedSlot::Arrow("Dg1")),
    (1, 1, DeformedSlot::Arrow("C34")),
    (1, 2, DeformedSlot::Arrow("C54")),
    (1, 5, DeformedSlot::Arrow("Dg4")),
    (1, 7, DeformedSlot::Id),
    (2, 1, DeformedSlot::Arrow("D3a")),
    (2, 3, DeformedSlot::QIdLoop("Ea")),
    (2, 8, DeformedSlot::Arrow("D6a")),
    (2, 9, DeformedSlot::Id),
    (2, 11, DeformedSlot::Arrow("Fga")),
    (3, 4, DeformedSlot::QId),
    (3, 5, DeformedSlot::Arrow("Fgb")),
    (3, 10, DeformedSlot::Id),
    (4, 0, DeformedSlot::Arrow("C12")),
    (4, 1, DeformedSlot::Arrow("C32")),
    (4, 4, DeformedSlot::Arrow("Db2")),
    (4, 6, DeformedSlot::Id),
    (5, 2, DeformedSlot::Id),
    (5, 7, DeformedSlot::Arrow("C45")),
    (5, 8, DeformedSlot::Arrow("C65")),
    (5, 10, DeformedSlot::Arrow("Db5")),
    (6, 3, DeformedSlot::Id),
    (6, 9, DeformedSlot::Id),
    (6, 10, DeformedSlot::Arrow("Fba")),
    (7, 0, DeformedSlot::Arrow("D1g")),
    (7, 4, DeformedSlot::Arrow("Fbg")),
    (7, 5, DeformedSlot::QIdLoop("Eg")),
    (7, 7, DeformedSlot::Arrow("D4g")),
    (7, 11, DeformedSlot::Id),
    (8, 1, DeformedSlot::Id),
    (8, 6, DeformedSlot::Arrow("C23")),
    (8, 7, DeformedSlot::Arrow("C43")),
    (8, 9, DeformedSlot::Arrow("Da3")),
    (9, 0, DeformedSlot::Arrow("C16")),
    (9, 2, DeformedSlot::Arrow("C56")),
    (9, 3, DeformedSlot::Arrow("Da6")),
    (9, 8, DeformedSlot::Id),
    (10, 2, DeformedSlot::Arrow("D5b")),
    (10, 4, DeformedSlot::IdLoop("Eb")),
    (10, 6, DeformedSlot::Arrow("D2b")),
    (10, 9, DeformedSlot::Arrow("Fab")),
    (10, 10, DeformedSlot::Id),
    (11, 3, DeformedSlot::Arrow("Fag")),
    (11, 5, DeformedSlot::Id),
    (11, 11, DeformedSlot::Id),
];

/// Base-change matrix of the deformation of the semisimple base point along
/// a representation of the local quiver.  At the zero representation this
/// reproduces `base_matrix_b0` exactly.
pub fn assemble_deformed<F: Field>(
    tau: &TauVector,
    qrep: &QuiverRep<F>,
    q: &F::Elem,
    field: &F,
) -> Result<Matrix<F>, ParamError> {
    if field.is_zero(q) || field.is_one(q) {
        return Err(ParamError::Quiver(QuiverError::BadQ(field.encode(q))));
    }
    if qrep.quiver != local_quiver() {
        return Err(ParamError::Quiver(QuiverError::BadRep(
            "representation is not over the local quiver".into(),
        )));
    }
    if qrep.dims != tau.as_array().to_vec() {
        return Err(ParamError::Quiver(QuiverError::BadRep(format!(
            "dimension vector {:?} does not match tau {tau}",
            qrep.dims
        ))));
    }
    let heights = b0_row_heights(tau);
    let widths = b0_col_widths(tau);
    let mut grid: Vec<Vec<Option<Matrix<F>>>> = (0..heights.len())
        .map(|_| vec![None; widths.len()])
        .collect();
    let arrow = |label: &str| qrep.arrow_matrix(label).expect("local quiver arrow").clone();
    for &(r, c, slot) in DEFORMED_SLOTS {
        let h = heights[r];
        let w = widths[c];
        if h == 0 || w == 0 {
            continue;
        }
        let block = match slot {
            DeformedSlot::Id => Matrix::identity(field.clone(), h),
            DeformedSlot::QId => Matrix::diagonal(field.clone(), vec![q.clone(); h]),
            DeformedSlot::QIdLoop(l) => {
                Matrix::diagonal(field.clone(), vec![q.clone(); h]).add(&arrow(l))
            }
            DeformedSlot::IdLoop(l) => Matrix::identity(field.clone(), h).add(&arrow(l)),
            DeformedSlot::Arrow(l) => arrow(l),
        };
        grid[r][c] = Some(block);
    }
    Ok(block_assemble(field.clone(), &heights, &widths, &grid)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimvectors::{enumerate_components, validate_sigma};
    use crate::quiver::{base_matrix_b0, zero_rep};
    use crate::scalars::{make_prime_field, Field};

    #[test]
    fn smallest_component_plan() {
        let sigma = validate_sigma(2, 1, 1, 1, 1).unwrap();
        let plan = plan_component(&sigma).unwrap();
        assert_eq!(plan.layout.total_rows(), 3);
        assert_eq!(plan.count_parameters(), 2);
        assert!(plan.q_param.is_none());
        let f = make_prime_field(7).unwrap();
        let zero = vec![f.zero(); plan.registry.len()];
        let b = plan.layout.instantiate(&f, &zero);
        assert_eq!(
            b,
            Matrix::from_i64_rows(f, &[&[1, 0, 1], &[0, 1, 0], &[0, 1, 1]])
        );
        assert_eq!(b.det(), 1);
    }

    #[test]
    fn five_dim_plan_parameters() {
        let sigma = validate_sigma(3, 2, 2, 2, 1).unwrap();
        let plan = plan_component(&sigma).unwrap();
        assert_eq!(plan.layout.total_rows(), 5);
        assert_eq!(plan.count_parameters(), 5);
        assert!(plan.q_param.is_some());
        assert_eq!(plan.row_groups(), vec![vec![1, 1, 0], vec![0, 1, 1, 0], vec![0, 1, 0, 0]]);
        let names: Vec<&str> = plan
            .b_params()
            .iter()
            .map(|id| plan.registry.name(*id))
            .collect();
        assert_eq!(names.len(), 5);
        assert!(names.contains(&"q"));
        // one companion entry and three generic one-by-one blocks
        assert_eq!(names.iter().filter(|n| n.contains('x')).count(), 1);
    }

    #[test]
    fn equal_case_plan_shapes() {
        let sigma = validate_sigma(3, 3, 2, 2, 2).unwrap();
        let plan = plan_component(&sigma).unwrap();
        assert_eq!(plan.layout.total_rows(), 6);
        assert_eq!(plan.layout.total_cols(), 6);
        assert!(matches!(plan.case, ComponentCase::EqualEven { e: 1, f: 0, g: 0, h: 1, .. }));
        assert_eq!(plan.count_parameters(), 8);

        let sigma = validate_sigma(4, 4, 3, 3, 2).unwrap();
        let plan = plan_component(&sigma).unwrap();
        assert_eq!(plan.layout.total_rows(), 8);
        assert!(matches!(plan.case, ComponentCase::EqualOdd { .. }));
    }

    #[test]
    fn unsupported_component_propagates() {
        let sigma = validate_sigma(2, 2, 2, 2, 0).unwrap();
        assert!(matches!(
            plan_component(&sigma),
            Err(ParamError::Dim(DimError::UnsupportedComponent { .. }))
        ));
    }

    #[test]
    fn group_sums_match_sigma_up_to_n30() {
        for n in 3..=30usize {
            for sigma in enumerate_components(n) {
                let Ok(plan) = plan_component(&sigma) else {
                    continue;
                };
                assert_eq!(plan.row_group_sums(), [sigma.x(), sigma.y(), sigma.z()], "{sigma}");
                assert_eq!(plan.col_group_sums(), [sigma.a(), sigma.b()], "{sigma}");
                assert_eq!(plan.layout.total_rows(), n);
                assert_eq!(plan.layout.total_cols(), n);
            }
        }
    }

    #[test]
    fn parameter_count_is_at_most_dimension_plus_one_up_to_n20() {
        for n in 3..=20usize {
            for sigma in enumerate_components(n) {
                let Ok(plan) = plan_component(&sigma) else {
                    continue;
                };
                let count = plan.count_parameters();
                assert!(
                    count <= n_sigma(&sigma) + 1,
                    "{sigma}: {count} > {} + 1",
                    n_sigma(&sigma)
                );
                // q is exactly the excess over the component dimension
                let expected = n_sigma(&sigma) + usize::from(plan.q_param.is_some());
                assert_eq!(count, expected, "{sigma}");
            }
        }
    }

    #[test]
    fn instantiation_is_deterministic_and_reduced() {
        let sigma = validate_sigma(3, 2, 2, 2, 1).unwrap();
        let plan = plan_component(&sigma).unwrap();
        let f = make_prime_field(7).unwrap();
        let (b1, a1) = instantiate(&plan, &f, 42).unwrap();
        let (b2, a2) = instantiate(&plan, &f, 42).unwrap();
        assert_eq!(b1, b2);
        assert_eq!(a1.values, a2.values);
        for v in b1.data() {
            assert!(*v < 7);
        }
        let (b3, _) = instantiate(&plan, &f, 43).unwrap();
        assert_ne!(b1, b3);
    }

    #[test]
    fn corrections_are_reported_when_the_slot_is_present(){
        // h > 0 activates the corrected bottom-right identity block
        let sigma = validate_sigma(5, 4, 3, 3, 3).unwrap();
        let plan = plan_component(&sigma).unwrap();
        assert_eq!(plan.corrections.len(), 1);
        assert!(plan.corrections[0].contains("printed 1_g read as 1_h"));

        // h = 0 leaves nothing to correct
        let sigma = validate_sigma(2, 1, 1, 1, 1).unwrap();
        let plan = plan_component(&sigma).unwrap();
        assert!(plan.corrections.is_empty());
    }

    #[test]
    fn deformed_assembly_examples() {
        let f = make_prime_field(7).unwrap();
        let quiver = local_quiver();

        // zero representation reproduces the base matrix
        let tau = TauVector::from_array([1, 0, 0, 0, 1, 1, 0, 0, 0]);
        let rep = zero_rep(&f, &quiver, &tau.as_array());
        let q = f.from_i64(3);
        let b = assemble_deformed(&tau, &rep, &q, &f).unwrap();
        assert_eq!(b, base_matrix_b0(&tau, &q, &f).unwrap());

        // hexagon arrows land in the printed slots
        let mut rep = zero_rep(&f, &quiver, &tau.as_array());
        for (label, v) in [("C61", 2), ("C65", 3), ("C16", 4), ("C56", 5)] {
            let idx = rep.quiver.arrow_index(label).unwrap();
            rep.mats[idx] = Matrix::from_i64_rows(f, &[&[v]]);
        }
        let b = assemble_deformed(&tau, &rep, &q, &f).unwrap();
        assert_eq!(
            b,
            Matrix::from_i64_rows(f, &[&[1, 0, 2], &[0, 1, 3], &[4, 5, 1]])
        );

        // a single two-dimensional summand with a loop value
        let tau = TauVector::from_array([0, 0, 0, 0, 0, 0, 1, 0, 0]);
        let mut rep = zero_rep(&f, &quiver, &tau.as_array());
        let idx = rep.quiver.arrow_index("Ea").unwrap();
        rep.mats[idx] = Matrix::from_i64_rows(f, &[&[5]]);
        let q = f.from_i64(2);
        let b = assemble_deformed(&tau, &rep, &q, &f).unwrap();
        assert_eq!(b, Matrix::from_i64_rows(f, &[&[0, 1], &[1, 1]])); // q + e = 7 ≡ 0

        assert!(assemble_deformed(&tau, &rep, &f.one(), &f).is_err());
    }
}
