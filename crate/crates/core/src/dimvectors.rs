//! Dimension-vector logic for the components of the representation variety.
//!
//! A component is labelled by σ = (a,b;x,y,z) with a+b = n = x+y+z,
//! x = max(x,y,z) and x ≤ b ≤ a.  For each supported σ a dimension vector
//! τ = (a₁..a₆, b_α, b_β, b_γ) for the local quiver is derived from one of
//! two case constructions (a > b, or a = b split by the parity of
//! c = x+y+1-a).  Degenerate components where a formula value goes negative
//! are reported, never silently skipped.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimError {
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("component {sigma} is not reachable by the case constructions: {reason}")]
    UnsupportedComponent { sigma: String, reason: String },
    #[error("cannot parse {0:?} as a,b:x,y,z")]
    BadSigmaSyntax(String),
}

/// σ = (a,b;x,y,z).  Always validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SigmaVector {
    a: usize,
    b: usize,
    x: usize,
    y: usize,
    z: usize,
}

impl SigmaVector {
    pub fn a(&self) -> usize {
        self.a
    }
    pub fn b(&self) -> usize {
        self.b
    }
    pub fn x(&self) -> usize {
        self.x
    }
    pub fn y(&self) -> usize {
        self.y
    }
    pub fn z(&self) -> usize {
        self.z
    }
    pub fn n(&self) -> usize {
        self.a + self.b
    }

    /// Parses the `a,b:x,y,z` command-line syntax.
    pub fn parse(s: &str) -> Result<SigmaVector, DimError> {
        let bad = || DimError::BadSigmaSyntax(s.to_string());
        let (ab, xyz) = s.split_once(':').ok_or_else(bad)?;
        let parse_list = |part: &str, k: usize| -> Result<Vec<usize>, DimError> {
            let vals: Result<Vec<usize>, _> =
                part.split(',').map(|t| t.trim().parse::<usize>()).collect();
            let vals = vals.map_err(|_| bad())?;
            if vals.len() != k {
                return Err(bad());
            }
            Ok(vals)
        };
        let ab = parse_list(ab, 2)?;
        let xyz = parse_list(xyz, 3)?;
        validate_sigma(ab[0], ab[1], xyz[0], xyz[1], xyz[2])
    }
}

impl std::fmt::Display for SigmaVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}:{},{},{}", self.a, self.b, self.x, self.y, self.z)
    }
}

/// Validates the defining constraints, naming the first failed (in)equality.
pub fn validate_sigma(
    a: usize,
    b: usize,
    x: usize,
    y: usize,
    z: usize,
) -> Result<SigmaVector, DimError> {
    let fail = |m: &str| Err(DimError::ConstraintViolation(m.to_string()));
    if a + b != x + y + z {
        return fail("a+b = x+y+z");
    }
    if a + b == 0 {
        return fail("n >= 1");
    }
    if x < y || x < z {
        return fail("x = max(x,y,z)");
    }
    if x > b {
        return fail("x <= b");
    }
    if b > a {
        return fail("b <= a");
    }
    Ok(SigmaVector { a, b, x, y, z })
}

/// The claimed dimension of the component: 1 + n² - (a²+b²+x²+y²+z²).
/// Nonnegative for every valid σ (x,y,z ≤ b ≤ a forces x²+y²+z² ≤ 2ab).
pub fn n_sigma(sigma: &SigmaVector) -> usize {
    let n = sigma.n() as i64;
    let (a, b, x, y, z) = (
        sigma.a as i64,
        sigma.b as i64,
        sigma.x as i64,
        sigma.y as i64,
        sigma.z as i64,
    );
    let v = 1 + n * n - (a * a + b * b + x * x + y * y + z * z);
    debug_assert!(v >= 0);
    v as usize
}

/// All valid σ with a+b = n, in the deterministic order: a ascending, then
/// x ascending, then z ascending (equivalently y descending, matching the
/// convention that (y,z) are ordered data).
pub fn enumerate_components(n: usize) -> Vec<SigmaVector> {
    let mut out = Vec::new();
    for a in n.div_ceil(2)..n {
        let b = n - a;
        for x in n.div_ceil(3)..=b.min(n) {
            for z in 0..=x {
                let Some(y) = n.checked_sub(x + z) else {
                    continue;
                };
                if y > x {
                    continue;
                }
                if let Ok(s) = validate_sigma(a, b, x, y, z) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// τ = (a₁,…,a₆, b_α, b_β, b_γ): multiplicities of the nine simple summands
/// of the semisimple base point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauVector {
    pub a: [usize; 6],
    pub b_alpha: usize,
    pub b_beta: usize,
    pub b_gamma: usize,
}

impl TauVector {
    pub fn new(a: [usize; 6], b_alpha: usize, b_beta: usize, b_gamma: usize) -> Self {
        TauVector {
            a,
            b_alpha,
            b_beta,
            b_gamma,
        }
    }

    pub fn from_array(v: [usize; 9]) -> Self {
        TauVector {
            a: [v[0], v[1], v[2], v[3], v[4], v[5]],
            b_alpha: v[6],
            b_beta: v[7],
            b_gamma: v[8],
        }
    }

    pub fn as_array(&self) -> [usize; 9] {
        [
            self.a[0],
            self.a[1],
            self.a[2],
            self.a[3],
            self.a[4],
            self.a[5],
            self.b_alpha,
            self.b_beta,
            self.b_gamma,
        ]
    }

    /// Total dimension a+b = x+y+z of the associated σ.
    pub fn n(&self) -> usize {
        let t = self.as_array();
        t[0] + t[1] + t[2] + t[3] + t[4] + t[5] + 2 * (t[6] + t[7] + t[8])
    }

    /// The σ-components reconstructed from τ (each 2-dimensional summand
    /// contributes one dimension to both the a- and the b-eigenspace).
    pub fn sigma_parts(&self) -> (usize, usize, usize, usize, usize) {
        let t = &self.a;
        let (ba, bb, bg) = (self.b_alpha, self.b_beta, self.b_gamma);
        let a = t[0] + t[2] + t[4] + ba + bb + bg;
        let b = t[1] + t[3] + t[5] + ba + bb + bg;
        let x = t[0] + t[3] + ba + bb;
        let y = t[1] + t[4] + ba + bg;
        let z = t[2] + t[5] + bb + bg;
        (a, b, x, y, z)
    }
}

impl std::fmt::Display for TauVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{} | {},{},{})",
            self.a[0],
            self.a[1],
            self.a[2],
            self.a[3],
            self.a[4],
            self.a[5],
            self.b_alpha,
            self.b_beta,
            self.b_gamma
        )
    }
}

/// The case data from which a component's layout is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComponentCase {
    /// a > b, with d = a-b, e = d-1, f = b-z, g = b-y, h = b-x.
    Greater {
        d: usize,
        e: usize,
        f: usize,
        g: usize,
        h: usize,
    },
    /// a = b, c = x+y+1-a odd: c = 2d+1, e = d+1, f = d-1, g = a-y-1, h = a-x.
    EqualOdd {
        c: usize,
        d: usize,
        e: usize,
        f: usize,
        g: usize,
        h: usize,
    },
    /// a = b, c even: c = 2e, f = e-1, g = a-y-1, h = a-x.
    EqualEven {
        c: usize,
        e: usize,
        f: usize,
        g: usize,
        h: usize,
    },
}

impl ComponentCase {
    pub fn label(&self) -> &'static str {
        match self {
            ComponentCase::Greater { .. } => "greater",
            ComponentCase::EqualOdd { .. } => "equal_odd",
            ComponentCase::EqualEven { .. } => "equal_even",
        }
    }
}

impl std::fmt::Display for ComponentCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentCase::Greater { d, e, f: ff, g, h } => {
                write!(f, "greater{{d={d},e={e},f={ff},g={g},h={h}}}")
            }
            ComponentCase::EqualOdd { c, d, e, f: ff, g, h } => {
                write!(f, "equal_odd{{c={c},d={d},e={e},f={ff},g={g},h={h}}}")
            }
            ComponentCase::EqualEven { c, e, f: ff, g, h } => {
                write!(f, "equal_even{{c={c},e={e},f={ff},g={g},h={h}}}")
            }
        }
    }
}

/// The dimension vector τ of type σ used by the component construction,
/// together with its case data.
///
/// Fails with `UnsupportedComponent` when a case formula produces a negative
/// value; for a > b this never happens, for a = b it happens exactly for
/// (a,a;a,a,0) (g = -1) and (a,a;a,0,a) (f = -1).
pub fn tau_for(sigma: &SigmaVector) -> Result<(TauVector, ComponentCase), DimError> {
    let (a, b, x, y, z) = (sigma.a, sigma.b, sigma.x, sigma.y, sigma.z);
    if a > b {
        let d = a - b;
        let e = d - 1;
        // x = max(x,y,z) <= b makes all three bounds nonnegative.
        let (f, g, h) = (b - z, b - y, b - x);
        let tau = TauVector::from_array([d, e, e, 0, 1, 1, f, g, h]);
        let case = ComponentCase::Greater { d, e, f, g, h };
        debug_assert!(check_tau_type(&tau, sigma));
        return Ok((tau, case));
    }
    // a = b; c = x+y+1-a >= 1 because z <= a.
    let c = x + y + 1 - a;
    let unsupported = |name: &str, v: i64| DimError::UnsupportedComponent {
        sigma: sigma.to_string(),
        reason: format!("{name} = {v}"),
    };
    let g = a as i64 - y as i64 - 1;
    let h = (a - x) as i64;
    if c % 2 == 1 {
        let d = (c as i64 - 1) / 2;
        let e = d + 1;
        let f = d - 1;
        if f < 0 {
            return Err(unsupported("f", f));
        }
        if g < 0 {
            return Err(unsupported("g", g));
        }
        let (d, e, f, g, h) = (d as usize, e as usize, f as usize, g as usize, h as usize);
        let tau = TauVector::from_array([e, e, 1, d, f, 0, 0, g, h]);
        let case = ComponentCase::EqualOdd { c, d, e, f, g, h };
        debug_assert!(check_tau_type(&tau, sigma));
        Ok((tau, case))
    } else {
        let e = (c / 2) as i64;
        let f = e - 1;
        if f < 0 {
            return Err(unsupported("f", f));
        }
        if g < 0 {
            return Err(unsupported("g", g));
        }
        let (e, f, g, h) = (e as usize, f as usize, g as usize, h as usize);
        let tau = TauVector::from_array([e, e, 1, e, f, 0, 0, g, h]);
        let case = ComponentCase::EqualEven { c, e, f, g, h };
        debug_assert!(check_tau_type(&tau, sigma));
        Ok((tau, case))
    }
}

/// The five type-σ equations.  Each 2-dimensional summand contributes one
/// dimension to a and one to b, so both the a- and b-equations carry all
/// three of b_α, b_β, b_γ.
pub fn check_tau_type(tau: &TauVector, sigma: &SigmaVector) -> bool {
    tau.sigma_parts() == (sigma.a, sigma.b, sigma.x, sigma.y, sigma.z)
}
