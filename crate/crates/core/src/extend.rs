//! The window-scale extension pipeline: verify partial positive
//! definiteness of phi on S, build the kernel k(x, y) = phi(x^{-1} y) over a
//! Cayley window, complete it over the chordal pattern, and Folner-average
//! the completion into a function of one variable. Also the two
//! non-extendability certifiers and the Caratheodory-Fejer scalar machinery.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::caps::Caps;
use crate::cayley::{self, FolnerSet, Window};
use crate::cmat::CMatrix;
use crate::completion::{
    self, forced_entry, matrix_ball, min_eigenvalue, MatrixBall, PartialBlockMatrix,
};
use crate::error::{Error, Result};
use crate::graphs::{self, ChordalityCertificate};
use crate::groups::{
    element_from_json, element_key, element_to_json, set_from_json, set_to_json, spec_from_json,
    spec_to_json, GroupElement, GroupSpec, SymmetricSet,
};
use crate::par::{self, ExecMode};

/// A partially positive definite function phi: S -> d x d complex matrices.
/// One representative per {s, s^{-1}} pair is stored; the other direction is
/// served as the adjoint. `default` (when present) is the value of every
/// unlisted element of S, so cofinitely-supported data stays finite.
#[derive(Debug, Clone)]
pub struct PdFunctionData {
    pub spec: GroupSpec,
    pub set: SymmetricSet,
    pub d: usize,
    values: BTreeMap<GroupElement, CMatrix>,
    default: Option<CMatrix>,
}

impl PdFunctionData {
    pub fn new(spec: GroupSpec, set: SymmetricSet, d: usize) -> Result<Self> {
        set.validate(&spec)?;
        Ok(PdFunctionData {
            spec,
            set,
            d,
            values: BTreeMap::new(),
            default: None,
        })
    }

    pub fn with_default(mut self, value: CMatrix) -> Result<Self> {
        self.check_shape(&value)?;
        self.default = Some(value);
        Ok(self)
    }

    fn check_shape(&self, m: &CMatrix) -> Result<()> {
        if m.rows() != self.d || m.cols() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "phi values must be {0}x{0}",
                self.d
            )));
        }
        if !m.is_finite() {
            return Err(Error::NonFiniteEntry);
        }
        Ok(())
    }

    /// Sets phi(x); phi(x^{-1}) is derived as the adjoint on lookup.
    pub fn set_value(&mut self, x: GroupElement, value: CMatrix) -> Result<()> {
        self.check_shape(&value)?;
        if !self.set.contains(&self.spec, &x)? {
            return Err(Error::OutsideSet {
                element: x.to_string(),
            });
        }
        if x == self.spec.identity() {
            let defect = value.hermitian_defect();
            if defect > 1e-12 * (1.0 + value.max_abs()) {
                return Err(Error::NonHermitian { defect });
            }
        }
        let inv = self.spec.inverse(&x)?;
        if x != inv && self.values.contains_key(&inv) {
            self.values.remove(&inv);
        }
        self.values.insert(x, value);
        Ok(())
    }

    /// phi(x). Errors when x is outside S or no value is available.
    pub fn value(&self, x: &GroupElement) -> Result<CMatrix> {
        if !self.set.contains(&self.spec, x)? {
            return Err(Error::OutsideSet {
                element: x.to_string(),
            });
        }
        if let Some(v) = self.values.get(x) {
            return Ok(v.clone());
        }
        let inv = self.spec.inverse(x)?;
        if let Some(v) = self.values.get(&inv) {
            return Ok(v.adjoint());
        }
        if let Some(v) = &self.default {
            return Ok(v.clone());
        }
        Err(Error::MissingValue {
            element: x.to_string(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: BTreeMap<String, &CMatrix> = self
            .values
            .iter()
            .map(|(k, v)| (element_key(k), v))
            .collect();
        let mut out = serde_json::json!({
            "group": spec_to_json(&self.spec),
            "set": set_to_json(&self.set),
            "d": self.d,
            "values": values,
        });
        if let Some(default) = &self.default {
            out["default"] = serde_json::to_value(default).expect("serializable");
        }
        out
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let spec = spec_from_json(
            value
                .get("group")
                .ok_or_else(|| Error::Json("pd data requires group".into()))?,
        )?;
        let set = set_from_json(
            &spec,
            value
                .get("set")
                .ok_or_else(|| Error::Json("pd data requires set".into()))?,
        )?;
        let d = value
            .get("d")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Json("pd data requires d".into()))? as usize;
        let mut data = PdFunctionData::new(spec, set, d)?;
        if let Some(default) = value.get("default") {
            let m: CMatrix = serde_json::from_value(default.clone())
                .map_err(|e| Error::Json(e.to_string()))?;
            data = data.with_default(m)?;
        }
        let values = value
            .get("values")
            .and_then(|v| v.as_object())
            .ok_or_else(|| Error::Json("pd data requires values".into()))?;
        for (key, mat) in values {
            let elem_json: serde_json::Value = serde_json::from_str(key)
                .map_err(|e| Error::Json(format!("bad element key {key}: {e}")))?;
            let elem = element_from_json(&data.spec, &elem_json)?;
            let m: CMatrix =
                serde_json::from_value(mat.clone()).map_err(|e| Error::Json(e.to_string()))?;
            data.set_value(elem, m)?;
        }
        Ok(data)
    }
}

/// Outcome of window-scale partial positive definiteness verification.
#[derive(Debug, Clone, Serialize)]
pub struct PdVerification {
    pub window_size: usize,
    pub clique_count: usize,
    pub min_eigenvalue: f64,
    pub pass: bool,
    pub offender: Option<(Vec<usize>, f64)>,
}

/// Builds the Cayley graph of (G, S) on a radius ball and checks every
/// maximal clique's Gram matrix {phi(x_i^{-1} x_j)} for positive
/// semidefiniteness.
pub fn verify_pd_function(
    data: &PdFunctionData,
    radius: u32,
    tol: f64,
    caps: &Caps,
) -> Result<PdVerification> {
    let window = cayley::ball(&data.spec, radius, caps)?;
    verify_pd_on_window(data, &window, tol, caps)
}

pub fn verify_pd_on_window(
    data: &PdFunctionData,
    window: &Window,
    tol: f64,
    caps: &Caps,
) -> Result<PdVerification> {
    let graph = cayley::cayley_graph(&data.spec, &data.set, window)?;
    let cliques = graphs::maximal_cliques(&graph, caps.clique)?;
    let grams: Vec<Result<f64>> = par::map_slice(ExecMode::Parallel, &cliques, |clique| {
        let gram = gram_matrix(data, window, clique)?;
        min_eigenvalue(&gram)
    });
    let mut min_eig = f64::INFINITY;
    let mut offender = None;
    for (clique, eig) in cliques.iter().zip(grams) {
        let eig = eig?;
        min_eig = min_eig.min(eig);
        if eig < -tol && offender.is_none() {
            offender = Some((clique.clone(), eig));
        }
    }
    Ok(PdVerification {
        window_size: window.len(),
        clique_count: cliques.len(),
        min_eigenvalue: if min_eig.is_finite() { min_eig } else { 0.0 },
        pass: offender.is_none(),
        offender,
    })
}

fn gram_matrix(data: &PdFunctionData, window: &Window, ids: &[usize]) -> Result<CMatrix> {
    let d = data.d;
    let elems = window.elements();
    let mut gram = CMatrix::zeros(ids.len() * d, ids.len() * d);
    for (a, &i) in ids.iter().enumerate() {
        for (b, &j) in ids.iter().enumerate() {
            let q = data
                .spec
                .multiply(&data.spec.inverse(&elems[i])?, &elems[j])?;
            gram.set_block(a * d, b * d, &data.value(&q)?);
        }
    }
    Ok(gram)
}

/// The kernel k(x_i, x_j) = phi(x_i^{-1} x_j) as a partial block matrix whose
/// pattern is the Cayley graph on the window.
pub fn build_kernel(data: &PdFunctionData, window: &Window) -> Result<PartialBlockMatrix> {
    let graph = cayley::cayley_graph(&data.spec, &data.set, window)?;
    let elems = window.elements();
    let mut pbm = PartialBlockMatrix::new(window.len(), data.d);
    for (i, x) in elems.iter().enumerate() {
        let _ = x;
        pbm.set_diagonal(i, data.value(&data.spec.identity())?)?;
    }
    for (i, j) in graph.edges() {
        let q = data
            .spec
            .multiply(&data.spec.inverse(&elems[i])?, &elems[j])?;
        pbm.set_block(i, j, data.value(&q)?)?;
    }
    Ok(pbm)
}

/// Completed PSD kernel over a ball window. Errors carry the chordless-cycle
/// certificate when the Cayley window is not chordal, i.e. when the
/// extension theorem's hypothesis fails.
pub fn extend_on_window(
    data: &PdFunctionData,
    radius: u32,
    tol: f64,
    caps: &Caps,
) -> Result<(Window, CMatrix)> {
    let window = cayley::ball(&data.spec, radius, caps)?;
    let kernel = extend_on_given_window(data, &window, tol, caps)?;
    Ok((window, kernel))
}

pub fn extend_on_given_window(
    data: &PdFunctionData,
    window: &Window,
    tol: f64,
    caps: &Caps,
) -> Result<CMatrix> {
    if window.len() > caps.window_vertices {
        return Err(Error::WindowCapExceeded {
            needed: window.len(),
            cap: caps.window_vertices,
        });
    }
    let kernel = build_kernel(data, window)?;
    if let ChordalityCertificate::ChordlessCycle { cycle } = graphs::is_chordal(kernel.pattern()) {
        return Err(Error::NotChordal { cycle });
    }
    completion::chordal_complete(&kernel, tol, caps)
}

/// Folner average of the completed kernel: Phi_F(x) = (1/|F|) sum_{y in F}
/// K(y, yx). Requires y and yx inside the window for every y in F; the error
/// lists the violating pairs.
pub fn folner_average(
    data: &PdFunctionData,
    window: &Window,
    kernel: &CMatrix,
    folner: &FolnerSet,
    targets: &[GroupElement],
) -> Result<Vec<(GroupElement, CMatrix)>> {
    let d = data.d;
    let mut violations = Vec::new();
    for x in targets {
        for y in &folner.elements {
            let yx = data.spec.multiply(y, x)?;
            if window.index_of(y).is_none() || window.index_of(&yx).is_none() {
                violations.push((y.to_string(), yx.to_string()));
            }
        }
    }
    if !violations.is_empty() {
        violations.truncate(16);
        return Err(Error::WindowTooSmall { violations });
    }
    let count = folner.elements.len() as f64;
    targets
        .iter()
        .map(|x| {
            let mut acc = CMatrix::zeros(d, d);
            for y in &folner.elements {
                let yx = data.spec.multiply(y, x)?;
                let i = window.index_of(y).expect("checked");
                let j = window.index_of(&yx).expect("checked");
                acc = acc.add(&kernel.block(i * d, j * d, d, d));
            }
            Ok((x.clone(), acc.scale(Complex64::new(1.0 / count, 0.0))))
        })
        .collect()
}

/// One (radius, N) cell of an extension report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportCell {
    pub radius: u32,
    pub folner_n: u32,
    pub window_size: usize,
    /// Minimum eigenvalue over the sampled Gram matrices of Phi_F.
    pub gram_min_eigenvalue: f64,
    /// max over s in S cap window of ||Phi_F(s) - phi(s)||.
    pub max_deviation_on_s: f64,
    pub averaged: Vec<(String, CMatrix)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub group: serde_json::Value,
    pub set: serde_json::Value,
    pub d: usize,
    pub seed: u64,
    pub cells: Vec<ReportCell>,
}

/// Window-scale surrogate of the extension theorem: for each (radius, N)
/// pair, completes the kernel on the ball, Folner-averages it on the target
/// set plus S-in-window, and records positivity diagnostics of sampled Gram
/// matrices together with the deviation from phi on S.
pub fn extension_report(
    data: &PdFunctionData,
    radii: &[u32],
    folner_ns: &[u32],
    test_set: &[GroupElement],
    seed: u64,
    tol: f64,
    caps: &Caps,
) -> Result<ExtensionReport> {
    let mut cells = Vec::new();
    for &radius in radii {
        let (window, kernel) = extend_on_window(data, radius, tol, caps)?;
        for &n in folner_ns {
            let folner = cayley::folner_set(&data.spec, n)?;
            let cell = report_cell(
                data, &window, &kernel, &folner, radius, test_set, seed, tol,
            )?;
            cells.push(cell);
        }
    }
    Ok(ExtensionReport {
        group: spec_to_json(&data.spec),
        set: set_to_json(&data.set),
        d: data.d,
        seed,
        cells,
    })
}

/// Builds one report cell from an already-completed kernel. The window can
/// be any inverse-closed element list covering F and F * targets.
#[allow(clippy::too_many_arguments)]
pub fn report_cell(
    data: &PdFunctionData,
    window: &Window,
    kernel: &CMatrix,
    folner: &FolnerSet,
    radius: u32,
    test_set: &[GroupElement],
    seed: u64,
    tol: f64,
) -> Result<ReportCell> {
    let spec = &data.spec;
    let max_folner_len = folner
        .elements
        .iter()
        .map(|y| cayley::word_length(spec, y))
        .collect::<Result<Vec<u32>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);

    // Valid targets x: every y in F and yx stay inside the window.
    let coverage_ok = |x: &GroupElement| -> Result<bool> {
        for y in &folner.elements {
            let yx = spec.multiply(y, x)?;
            if window.index_of(y).is_none() || window.index_of(&yx).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    };

    // Targets: requested test set, plus S within the coverage-safe part of
    // the window.
    let mut targets: Vec<GroupElement> = Vec::new();
    let mut s_targets: Vec<GroupElement> = Vec::new();
    for x in test_set {
        if !targets.contains(x) {
            targets.push(x.clone());
        }
    }
    for x in window.elements() {
        if data.set.contains(spec, x)? && coverage_ok(x)? {
            if !targets.contains(x) {
                targets.push(x.clone());
            }
            s_targets.push(x.clone());
        }
    }
    for x in &targets {
        if !coverage_ok(x)? {
            return Err(Error::WindowTooSmall {
                violations: vec![("F".into(), x.to_string())],
            });
        }
    }

    let averaged = folner_average(data, window, kernel, folner, &targets)?;
    let lookup: BTreeMap<GroupElement, CMatrix> = averaged.iter().cloned().collect();

    // Deviation from phi on S (the averaging is exact there by construction;
    // this measures it rather than asserting it).
    let mut max_dev: f64 = 0.0;
    for s in &s_targets {
        let dev = lookup[s].max_abs_diff(&data.value(s)?);
        max_dev = max_dev.max(dev);
    }

    // Gram matrices of Phi_F over random tuples from the coverage-safe pool:
    // tuples (g_1..g_t) whose pairwise quotients are themselves valid
    // targets.
    let mut pool: Vec<GroupElement> = Vec::new();
    let margin = radius.saturating_sub(max_folner_len) / 2;
    for x in window.elements() {
        if cayley::word_length_capped(
            spec,
            x,
            &Caps {
                radius: margin.max(1),
                ..Default::default()
            },
        )
        .map(|l| l <= margin)
        .unwrap_or(false)
        {
            pool.push(x.clone());
        }
    }
    if pool.is_empty() {
        pool.push(spec.identity());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gram_min: f64 = f64::INFINITY;
    let d = data.d;
    let tuples = 12usize;
    for _ in 0..tuples {
        let t = rng.gen_range(2..=4.min(pool.len().max(2)));
        let tuple: Vec<GroupElement> = (0..t)
            .map(|_| pool[rng.gen_range(0..pool.len())].clone())
            .collect();
        let mut quotient_values: Vec<Vec<CMatrix>> = Vec::new();
        let mut ok = true;
        'tuple: for gi in &tuple {
            let mut row = Vec::new();
            for gj in &tuple {
                let q = spec.multiply(&spec.inverse(gi)?, gj)?;
                let value = match lookup.get(&q) {
                    Some(v) => v.clone(),
                    None => {
                        if !coverage_ok(&q)? {
                            ok = false;
                            break 'tuple;
                        }
                        folner_average(data, window, kernel, folner, std::slice::from_ref(&q))?
                            .pop()
                            .expect("one target")
                            .1
                    }
                };
                row.push(value);
            }
            quotient_values.push(row);
        }
        if !ok {
            continue;
        }
        let mut gram = CMatrix::zeros(t * d, t * d);
        for (a, row) in quotient_values.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                gram.set_block(a * d, b * d, v);
            }
        }
        // Hermitize: Phi_F(x^{-1}) = Phi_F(x)* holds up to roundoff.
        let gram = gram.add(&gram.adjoint()).scale(Complex64::new(0.5, 0.0));
        gram_min = gram_min.min(min_eigenvalue(&gram)?);
    }
    if !gram_min.is_finite() {
        gram_min = 0.0;
    }
    let _ = tol;
    Ok(ReportCell {
        radius,
        folner_n: folner.n,
        window_size: window.len(),
        gram_min_eigenvalue: gram_min,
        max_deviation_on_s: max_dev,
        averaged: averaged
            .into_iter()
            .map(|(x, m)| (element_key(&x), m))
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// Counterexample certifiers.
// ---------------------------------------------------------------------------

/// Audit record for one derived matrix ball.
#[derive(Debug, Clone, Serialize)]
pub struct BallRecord {
    pub chain: Vec<serde_json::Value>,
    pub center: CMatrix,
    pub left_radius: CMatrix,
    pub right_radius: CMatrix,
    pub unique: bool,
}

impl BallRecord {
    fn new(chain: &[GroupElement], ball: &MatrixBall) -> Self {
        BallRecord {
            chain: chain.iter().map(element_to_json).collect(),
            center: ball.center.clone(),
            left_radius: ball.left_radius.clone(),
            right_radius: ball.right_radius.clone(),
            unique: ball.unique,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Z2Certificate {
    pub verification: PdVerification,
    pub ball1: BallRecord,
    pub ball2: BallRecord,
    pub forced_phi_11: CMatrix,
    pub rigidity_violations: usize,
    pub forced_phi_21: CMatrix,
    pub phi_21_entry: [f64; 2],
    pub contradiction: f64,
    pub secondary_forced_phi_22: CMatrix,
    pub secondary_contradiction: f64,
}

/// The data of the Z^2 counterexample: phi on S = Z^2 minus {(1,1), (-1,-1)}
/// with phi(0,0) = I, phi(1,0) = [[0,0],[1,0]], phi(0,1) = [[0,1],[0,0]] and
/// zero elsewhere.
pub fn z2_counterexample_data() -> PdFunctionData {
    let spec = crate::groups::z2();
    let set = SymmetricSet::ExcludedPairs {
        base: Box::new(SymmetricSet::Full),
        excluded: vec![crate::groups::lattice2(1, 1)],
    };
    let mut data = PdFunctionData::new(spec, set, 2)
        .expect("valid data")
        .with_default(CMatrix::zeros(2, 2))
        .expect("valid default");
    data.set_value(crate::groups::lattice2(0, 0), CMatrix::identity(2))
        .expect("identity value");
    data.set_value(
        crate::groups::lattice2(1, 0),
        CMatrix::from_real(&[&[0.0, 0.0], &[1.0, 0.0]]),
    )
    .expect("value");
    data.set_value(
        crate::groups::lattice2(0, 1),
        CMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]),
    )
    .expect("value");
    data
}

/// Ball for the block at the ends of a 3-chain (g1, g2, g3): the partially
/// specified matrix {phi(g_i^{-1} g_j)} with the (1,3) block unknown.
fn chain_ball(
    phi: &dyn Fn(&GroupElement) -> Result<CMatrix>,
    spec: &GroupSpec,
    chain: &[GroupElement; 3],
    tol: f64,
) -> Result<MatrixBall> {
    let q = |i: usize, j: usize| -> Result<GroupElement> {
        spec.multiply(&spec.inverse(&chain[i])?, &chain[j])
    };
    let a = phi(&q(0, 0)?)?;
    let b = phi(&q(0, 1)?)?;
    let c = phi(&q(1, 1)?)?;
    let d = phi(&q(1, 2)?)?;
    let e = phi(&q(2, 2)?)?;
    matrix_ball(&a, &b, &c, &d, &e, tol)
}

/// Reproduces the Z^2 counterexample: the two 3-chain constraints pin
/// Phi((1,1)) to the identity, and the chain (0,0), (1,1), (2,1) then forces
/// Phi((2,1)) to have (2,1)-entry 1, contradicting phi((2,1)) = 0.
pub fn certify_z2_counterexample(tol: f64, caps: &Caps) -> Result<Z2Certificate> {
    let data = z2_counterexample_data();
    let spec = data.spec.clone();
    let el = crate::groups::lattice2;

    // (i) phi is partially positive definite on the radius-3 window.
    let verification = verify_pd_function(&data, 3, tol, caps)?;
    if !verification.pass {
        return Err(Error::CliqueNotPsd {
            clique: verification.offender.clone().map(|o| o.0).unwrap_or_default(),
            min_eig: verification.offender.map(|o| o.1).unwrap_or(f64::NAN),
        });
    }

    let phi = |x: &GroupElement| data.value(x);

    // (ii) The two 3x3 constraints for Phi((1,1)). Both balls degenerate to
    // axis segments: {[[1,0],[0,k]]} and {[[k',0],[0,1]]}.
    let chain1 = [el(1, 1), el(0, 1), el(0, 0)];
    let ball1 = chain_ball(&phi, &spec, &chain1, tol)?;
    let chain2 = [el(1, 1), el(1, 0), el(0, 0)];
    let ball2 = chain_ball(&phi, &spec, &chain2, tol)?;

    // ball1 parametrizes X = Phi((1,1))* with center diag(1, 0) and radii
    // diag(0, 1); ball2 has center diag(0, 1) and radii diag(1, 0).
    let d10 = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 0.0]]);
    let d01 = CMatrix::from_real(&[&[0.0, 0.0], &[0.0, 1.0]]);
    for (name, got, want) in [
        ("ball1 center", &ball1.center, &d10),
        ("ball1 left radius", &ball1.left_radius, &d01),
        ("ball1 right radius", &ball1.right_radius, &d01),
        ("ball2 center", &ball2.center, &d01),
        ("ball2 left radius", &ball2.left_radius, &d10),
        ("ball2 right radius", &ball2.right_radius, &d10),
    ] {
        let dev = got.max_abs_diff(want);
        if dev > tol {
            return Err(Error::PreconditionViolation(format!(
                "{name} deviates from the derived value by {dev}"
            )));
        }
    }

    // (iii) The intersection of the two segments is the single point I2:
    // ball1 pins the (1,1) entry and the off-diagonals, ball2 the (2,2)
    // entry. Certify I2 lies in both balls and that perturbations break one.
    let forced_phi_11 = CMatrix::identity(2);
    let in_ball = |ball: &MatrixBall, chain: &[GroupElement; 3], x: &CMatrix| -> Result<f64> {
        let _ = ball;
        let q = |i: usize, j: usize| -> Result<GroupElement> {
            spec.multiply(&spec.inverse(&chain[i])?, &chain[j])
        };
        let mut m = CMatrix::zeros(6, 6);
        m.set_block(0, 0, &phi(&q(0, 0)?)?);
        m.set_block(0, 2, &phi(&q(0, 1)?)?);
        m.set_block(2, 0, &phi(&q(0, 1)?)?.adjoint());
        m.set_block(2, 2, &phi(&q(1, 1)?)?);
        m.set_block(2, 4, &phi(&q(1, 2)?)?);
        m.set_block(4, 2, &phi(&q(1, 2)?)?.adjoint());
        m.set_block(4, 4, &phi(&q(2, 2)?)?);
        m.set_block(0, 4, x);
        m.set_block(4, 0, &x.adjoint());
        min_eigenvalue(&m)
    };
    // X in the chain matrices is Phi((1,1))* = I2*.
    let x_val = forced_phi_11.adjoint();
    if in_ball(&ball1, &chain1, &x_val)? < -tol || in_ball(&ball2, &chain2, &x_val)? < -tol {
        return Err(Error::PreconditionViolation(
            "identity is not inside both constraint balls".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut rigidity_violations = 0;
    for _ in 0..20 {
        let mut h = CMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                h[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let h = h.add(&h.adjoint()).scale(Complex64::new(0.5, 0.0));
        let h = h.scale(Complex64::new(1e-3 / h.op_norm(), 0.0));
        let x = forced_phi_11.add(&h).adjoint();
        if in_ball(&ball1, &chain1, &x)? < -1e-12 || in_ball(&ball2, &chain2, &x)? < -1e-12 {
            rigidity_violations += 1;
        }
    }

    // (iv) With Phi((1,1)) = I2, the chain (0,0), (1,1), (2,1) forces
    // Phi((2,1)). phi_ext serves the forced value of (1,1) and phi elsewhere.
    let phi_ext = |x: &GroupElement| -> Result<CMatrix> {
        if *x == el(1, 1) {
            Ok(forced_phi_11.clone())
        } else if *x == el(-1, -1) {
            Ok(forced_phi_11.adjoint())
        } else {
            data.value(x)
        }
    };
    let chain3 = [el(0, 0), el(1, 1), el(2, 1)];
    let ball3 = chain_ball(&phi_ext, &spec, &chain3, tol)?;
    if !ball3.unique {
        return Err(Error::PreconditionViolation(
            "chain (0,0),(1,1),(2,1) did not force Phi((2,1))".into(),
        ));
    }
    let forced_phi_21 = ball3.center.clone();
    let entry = forced_phi_21[(1, 0)];
    let specified = data.value(&el(2, 1))?;
    let contradiction = (entry - specified[(1, 0)]).norm();

    // Secondary check: the chain (0,0), (1,1), (2,2) forces Phi((2,2)) = I2,
    // also contradicting phi((2,2)) = 0.
    let chain4 = [el(0, 0), el(1, 1), el(2, 2)];
    let ball4 = chain_ball(&phi_ext, &spec, &chain4, tol)?;
    let secondary = ball4.center.clone();
    let secondary_contradiction = secondary.max_abs_diff(&data.value(&el(2, 2))?);

    Ok(Z2Certificate {
        verification,
        ball1: BallRecord::new(&chain1, &ball1),
        ball2: BallRecord::new(&chain2, &ball2),
        forced_phi_11,
        rigidity_violations,
        forced_phi_21: forced_phi_21.clone(),
        phi_21_entry: [entry.re, entry.im],
        contradiction,
        secondary_forced_phi_22: secondary,
        secondary_contradiction,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCertificate {
    pub d: usize,
    pub unitary_defect: f64,
    pub horizontal_toeplitz_min_eig: f64,
    pub vertical_toeplitz_min_eig: f64,
    /// Forced C11 from the chain through (1,0): equals U1 U2.
    pub forced_via_10: CMatrix,
    /// Forced C11 from the chain through (0,1): equals U2 U1.
    pub forced_via_01: CMatrix,
    pub norm_difference: f64,
    pub extendable: bool,
}

/// Cross-set certifier: data C_{k0} = U1^k, C_{0l} = U2^l on the cross
/// Cross(m, n) with m = n = 2. Each 3-chain forces C11; the two forced
/// values are U1 U2 and U2 U1, so the data extends iff the unitaries
/// commute.
pub fn certify_cross_counterexample(
    u1: &CMatrix,
    u2: &CMatrix,
    tol: f64,
) -> Result<CrossCertificate> {
    let d = u1.rows();
    if !u1.is_square() || !u2.is_square() || u2.rows() != d {
        return Err(Error::DimensionMismatch("unitaries must be square, same size".into()));
    }
    let defect = |u: &CMatrix| u.adjoint().mul(u).max_abs_diff(&CMatrix::identity(d));
    let unitary_defect = defect(u1).max(defect(u2));
    if unitary_defect > 1e-9 {
        return Err(Error::NotUnitary {
            defect: unitary_defect,
        });
    }

    // The Toeplitz constraints of the cross data at m = n = 2: Gram matrices
    // {U^{k-l}} over k, l = 0..2, positive semidefinite for unitary U.
    let toeplitz = |u: &CMatrix| -> Result<f64> {
        let m = 2i64;
        let mut t = CMatrix::zeros(3 * d, 3 * d);
        for k in 0..=m {
            for l in 0..=m {
                let p = k - l;
                let block = unitary_power(u, p);
                t.set_block(k as usize * d, l as usize * d, &block);
            }
        }
        min_eigenvalue(&t)
    };
    let horizontal = toeplitz(u1)?;
    let vertical = toeplitz(u2)?;
    if horizontal < -tol || vertical < -tol {
        return Err(Error::NotPsd {
            context: "cross Toeplitz constraint".into(),
            min_eig: horizontal.min(vertical),
        });
    }

    // Chain through (1,0): tuple ((0,0), (1,0), (1,1)); the (1,3) unknown is
    // C11* and the ball center is (U1 U2)*.
    let i_d = CMatrix::identity(d);
    let forced_a = forced_entry(&i_d, &u2.adjoint(), &i_d, &u1.adjoint(), &i_d, tol)?
        .ok_or_else(|| {
            Error::PreconditionViolation("chain through (1,0) did not force C11".into())
        })?
        .adjoint();
    // Chain through (0,1): tuple ((0,0), (0,1), (1,1)); center (U2 U1)*.
    let forced_b = forced_entry(&i_d, &u1.adjoint(), &i_d, &u2.adjoint(), &i_d, tol)?
        .ok_or_else(|| {
            Error::PreconditionViolation("chain through (0,1) did not force C11".into())
        })?
        .adjoint();

    let norm_difference = forced_a.sub(&forced_b).op_norm();
    Ok(CrossCertificate {
        d,
        unitary_defect,
        horizontal_toeplitz_min_eig: horizontal,
        vertical_toeplitz_min_eig: vertical,
        forced_via_10: forced_a,
        forced_via_01: forced_b,
        norm_difference,
        extendable: norm_difference <= tol.max(1e-9),
    })
}

fn unitary_power(u: &CMatrix, p: i64) -> CMatrix {
    let d = u.rows();
    let base = if p < 0 { u.adjoint() } else { u.clone() };
    let mut out = CMatrix::identity(d);
    for _ in 0..p.unsigned_abs() {
        out = out.mul(&base);
    }
    out
}

// ---------------------------------------------------------------------------
// Caratheodory-Fejer scalar machinery.
// ---------------------------------------------------------------------------

/// One atom of a trigonometric moment decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct CfAtom {
    pub weight: f64,
    pub frequency: f64,
}

/// Toeplitz matrix T(i, j) = c_{i-j} with c_{-k} = conj(c_k).
pub fn toeplitz(moments: &[Complex64]) -> CMatrix {
    let n = moments.len();
    let mut t = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            t[(i, j)] = if i >= j {
                moments[i - j]
            } else {
                moments[j - i].conj()
            };
        }
    }
    t
}

/// Decomposes a PSD Toeplitz moment matrix into a positive combination of
/// rank-one Toeplitz matrices: atoms (w_p, alpha_p) with
/// sum_p w_p e^{i k alpha_p} = c_k for k = 0..m.
///
/// When every leading principal submatrix is nonsingular, the sequence is
/// extended by one boundary moment (center + right radius of the one-entry
/// ball) to reach a singular matrix; the kernel polynomial's roots lie on
/// the unit circle and give the frequencies, and the weights solve the
/// Vandermonde moment system in least squares.
pub fn cf_decompose(moments: &[Complex64], tol: f64) -> Result<Vec<CfAtom>> {
    if moments.is_empty() {
        return Err(Error::PreconditionViolation("need at least c_0".into()));
    }
    let c0 = moments[0];
    if c0.im.abs() > 1e-12 || c0.re <= 0.0 {
        return Err(Error::PreconditionViolation("c_0 must be real positive".into()));
    }
    let scale = c0.re;
    let t = toeplitz(moments);
    let t_min = min_eigenvalue(&t)?;
    if t_min < -tol * scale.max(1.0) {
        return Err(Error::NotPsd {
            context: "Toeplitz moment matrix".into(),
            min_eig: t_min,
        });
    }

    // Smallest k with T_k = T(c_0..c_k) singular; its kernel vector is
    // unique up to scale and its polynomial carries the atoms.
    let mut kernel: Option<Vec<Complex64>> = None;
    for k in 0..moments.len() {
        let tk = toeplitz(&moments[..=k]);
        let (vals, vecs) = crate::cmat::hermitian_eigen(&tk)?;
        let lambda_max = vals.last().copied().unwrap_or(0.0);
        if vals[0] <= 1e-10 * lambda_max.max(scale) {
            let u: Vec<Complex64> = (0..=k).map(|i| vecs[(i, 0)]).collect();
            kernel = Some(u);
            break;
        }
    }
    let kernel = match kernel {
        Some(u) => u,
        None => {
            // Full rank: extend by one singularizing boundary moment.
            let extended = extend_one_moment_boundary(moments, tol)?;
            let tk = toeplitz(&extended);
            let (vals, vecs) = crate::cmat::hermitian_eigen(&tk)?;
            let lambda_max = vals.last().copied().unwrap_or(0.0);
            if vals[0] > 1e-8 * lambda_max.max(scale) {
                return Err(Error::PreconditionViolation(
                    "boundary extension failed to singularize".into(),
                ));
            }
            (0..extended.len()).map(|i| vecs[(i, 0)]).collect()
        }
    };

    // Trim high-order zero coefficients so the root finder sees the true
    // degree.
    let mut coeffs = kernel;
    let max_coeff = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    while coeffs.len() > 1 && coeffs.last().unwrap().norm() <= 1e-12 * max_coeff {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(Error::PreconditionViolation("degenerate kernel polynomial".into()));
    }
    let roots = durand_kerner(&coeffs)?;
    let mut worst_deviation: f64 = 0.0;
    for z in &roots {
        worst_deviation = worst_deviation.max((1.0 - z.norm()).abs());
    }
    if worst_deviation > 1e-6 {
        return Err(Error::RootOffCircle {
            deviation: worst_deviation,
        });
    }
    // Kernel vector u satisfies sum_j u_j z^j = 0 at z = e^{-i alpha_p}.
    let mut freqs: Vec<f64> = roots
        .iter()
        .map(|z| {
            let a = -z.arg();
            if a < 0.0 {
                a + std::f64::consts::TAU
            } else {
                a
            }
        })
        .collect();
    freqs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    freqs.dedup_by(|a, b| (*a - *b).abs() < 1e-9);

    // Weights: least squares on the Vandermonde moment system.
    let weights = solve_weights(moments, &freqs)?;
    let mut atoms: Vec<CfAtom> = freqs
        .into_iter()
        .zip(weights)
        .filter(|(_, w)| *w > 1e-9 * scale)
        .map(|(frequency, weight)| CfAtom { weight, frequency })
        .collect();
    // Re-solve after dropping near-zero atoms so weights stay consistent.
    let freqs: Vec<f64> = atoms.iter().map(|a| a.frequency).collect();
    let weights = solve_weights(moments, &freqs)?;
    for (atom, w) in atoms.iter_mut().zip(&weights) {
        atom.weight = *w;
    }
    for atom in &atoms {
        if atom.weight <= 0.0 {
            return Err(Error::PreconditionViolation(format!(
                "nonpositive weight {} at frequency {}",
                atom.weight, atom.frequency
            )));
        }
    }
    // Reconstruction must land within 1e-6 * c0.
    let mut err: f64 = 0.0;
    for (k, c) in moments.iter().enumerate() {
        let got: Complex64 = atoms
            .iter()
            .map(|a| Complex64::from_polar(a.weight, k as f64 * a.frequency))
            .sum();
        err = err.max((got - c).norm());
    }
    if err > 1e-6 * scale {
        return Err(Error::PreconditionViolation(format!(
            "moment reconstruction error {err} too large"
        )));
    }
    Ok(atoms)
}

/// One-moment extension on the ball boundary (center + right radius, real
/// direction K = 1), which makes the extended Toeplitz matrix singular.
fn extend_one_moment_boundary(moments: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let m = moments.len();
    // Blocks over ({0}, {1..m-1}, {m}) of the (m+1)-point Toeplitz matrix
    // with the new moment c_{m} unknown in the corner X = conj(c_m).
    let full = toeplitz(moments);
    let mid: Vec<usize> = (1..m).collect();
    let a = CMatrix::from_rows(&[vec![moments[0]]]).expect("1x1");
    let e = a.clone();
    let b = full.submatrix(&[0], &mid);
    let c = full.submatrix(&mid, &mid);
    // Column (i, m) for i in 1..m of the extended matrix: c_{i-m} =
    // conj(c_{m-i}).
    let mut dmat = CMatrix::zeros(mid.len(), 1);
    for (row, &i) in mid.iter().enumerate() {
        dmat[(row, 0)] = moments[m - i].conj();
    }
    let ball = matrix_ball(&a, &b, &c, &dmat, &e, tol)?;
    let x = ball.center[(0, 0)] + ball.left_radius[(0, 0)] * ball.right_radius[(0, 0)];
    let mut extended = moments.to_vec();
    extended.push(x.conj());
    Ok(extended)
}

/// Durand-Kerner (Weierstrass) root finder for small complex polynomials
/// sum_j coeffs[j] z^j.
fn durand_kerner(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    // Standard starting points: powers of a non-real ray.
    let seed = Complex64::from_polar(1.0, 0.4);
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| seed * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / degree as f64))
        .collect();
    for _ in 0..200 {
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..degree {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 {
            break;
        }
    }
    let worst = roots
        .iter()
        .map(|&z| eval(z).norm())
        .fold(0.0f64, f64::max);
    if worst > 1e-8 {
        return Err(Error::RootOffCircle { deviation: worst });
    }
    Ok(roots)
}

/// Least-squares weights for sum_p w_p e^{i k alpha_p} = c_k via the normal
/// equations of the Vandermonde system.
fn solve_weights(moments: &[Complex64], freqs: &[f64]) -> Result<Vec<f64>> {
    if freqs.is_empty() {
        return Ok(vec![]);
    }
    let m = moments.len();
    let r = freqs.len();
    let mut a = CMatrix::zeros(m, r);
    for k in 0..m {
        for (p, &f) in freqs.iter().enumerate() {
            a[(k, p)] = Complex64::from_polar(1.0, k as f64 * f);
        }
    }
    let gram = a.adjoint().mul(&a);
    let pinv = completion::pinv_psd(&gram, completion::DEFAULT_RANK_TOL)?;
    let mut rhs = CMatrix::zeros(m, 1);
    for (k, &c) in moments.iter().enumerate() {
        rhs[(k, 0)] = c;
    }
    let w = pinv.mul(&a.adjoint()).mul(&rhs);
    Ok((0..r).map(|p| w[(p, 0)].re).collect())
}

/// Grid of moments c_{kl} for |k| <= kmax, |l| <= lmax, indexed by
/// (k + kmax, l + lmax).
#[derive(Debug, Clone)]
pub struct MomentGrid {
    pub kmax: i64,
    pub lmax: i64,
    values: Vec<Complex64>,
}

impl MomentGrid {
    pub fn value(&self, k: i64, l: i64) -> Complex64 {
        let i = (k + self.kmax) as usize;
        let j = (l + self.lmax) as usize;
        self.values[i * (2 * self.lmax as usize + 1) + j]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<[f64; 2]>> = (-self.kmax..=self.kmax)
            .map(|k| {
                (-self.lmax..=self.lmax)
                    .map(|l| {
                        let v = self.value(k, l);
                        [v.re, v.im]
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({"kmax": self.kmax, "lmax": self.lmax, "values": rows})
    }
}

/// Extends cross data on Z^2 from its two marginal moment sequences: both
/// are decomposed into atoms and the grid is the product-measure moment
/// c_{kl} = sum_{p,q} (w_p v_q / c_0) e^{i(k alpha_p + l beta_q)}.
pub fn cross_scalar_extend(
    h_moments: &[Complex64],
    v_moments: &[Complex64],
    kmax: i64,
    lmax: i64,
    tol: f64,
) -> Result<MomentGrid> {
    if h_moments.is_empty() || v_moments.is_empty() {
        return Err(Error::PreconditionViolation("need c_0 in both directions".into()));
    }
    if (h_moments[0] - v_moments[0]).norm() > 1e-12 {
        return Err(Error::PreconditionViolation(
            "the two marginals must share c_0".into(),
        ));
    }
    let c0 = h_moments[0].re;
    let h_atoms = cf_decompose(h_moments, tol)?;
    let v_atoms = cf_decompose(v_moments, tol)?;
    let side = (2 * lmax + 1) as usize;
    let mut values = vec![Complex64::new(0.0, 0.0); (2 * kmax as usize + 1) * side];
    for k in -kmax..=kmax {
        for l in -lmax..=lmax {
            let mut acc = Complex64::new(0.0, 0.0);
            for pa in &h_atoms {
                for qa in &v_atoms {
                    let phase = k as f64 * pa.frequency + l as f64 * qa.frequency;
                    acc += Complex64::from_polar(pa.weight * qa.weight / c0, phase);
                }
            }
            values[(k + kmax) as usize * side + (l + lmax) as usize] = acc;
        }
    }
    Ok(MomentGrid { kmax, lmax, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{lattice2, z2, GroupKind, Morphism};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z_strip_data() -> PdFunctionData {
        // Z with S = (-2, 2) and Toeplitz data (1, 0.5).
        let spec = GroupSpec::new(GroupKind::IntLattice(1)).unwrap();
        let set = SymmetricSet::Strip {
            morphism: Morphism::Lattice(vec![1.0]),
            bound: 2.0,
        };
        let mut data = PdFunctionData::new(spec, set, 1).unwrap();
        data.set_value(
            GroupElement::Lattice(vec![0]),
            CMatrix::from_real(&[&[1.0]]),
        )
        .unwrap();
        data.set_value(
            GroupElement::Lattice(vec![1]),
            CMatrix::from_real(&[&[0.5]]),
        )
        .unwrap();
        data
    }

    #[test]
    fn adjoint_lookup() {
        let data = z2_counterexample_data();
        let p = data.value(&lattice2(1, 0)).unwrap();
        let q = data.value(&lattice2(-1, 0)).unwrap();
        assert_eq!(q, p.adjoint());
        // Outside S is an error, unlisted inside S takes the default.
        assert!(data.value(&lattice2(1, 1)).is_err());
        assert_eq!(data.value(&lattice2(5, 3)).unwrap(), CMatrix::zeros(2, 2));
    }

    #[test]
    fn z2_data_is_partially_pd() {
        let data = z2_counterexample_data();
        let report = verify_pd_function(&data, 2, 1e-9, &Caps::default()).unwrap();
        assert!(report.pass, "min eig {}", report.min_eigenvalue);
    }

    #[test]
    fn scalar_fail_on_two_clique() {
        let spec = GroupSpec::new(GroupKind::IntLattice(1)).unwrap();
        let set = SymmetricSet::Strip {
            morphism: Morphism::Lattice(vec![1.0]),
            bound: 2.0,
        };
        let mut data = PdFunctionData::new(spec, set, 1).unwrap();
        data.set_value(GroupElement::Lattice(vec![0]), CMatrix::from_real(&[&[1.0]]))
            .unwrap();
        data.set_value(GroupElement::Lattice(vec![1]), CMatrix::from_real(&[&[2.0]]))
            .unwrap();
        let report = verify_pd_function(&data, 2, 1e-9, &Caps::default()).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn kernel_band_structure() {
        let data = z_strip_data();
        let window = cayley::ball(&data.spec, 2, &Caps::default()).unwrap();
        let kernel = build_kernel(&data, &window).unwrap();
        assert_eq!(kernel.block_count(), 5);
        assert_eq!(kernel.pattern().edge_count(), 4);
    }

    #[test]
    fn z2_kernel_pattern_misses_excluded_pairs() {
        let data = z2_counterexample_data();
        let spec = crate::groups::z2_box();
        let data = PdFunctionData {
            spec: spec.clone(),
            ..data
        };
        let window = cayley::ball(&spec, 1, &Caps::default()).unwrap();
        let kernel = build_kernel(&data, &window).unwrap();
        assert_eq!(kernel.block_count(), 9);
        let missing = 9 * 8 / 2 - kernel.pattern().edge_count();
        // Pairs at difference +-(1,1) inside the 3x3 box: 4.
        assert_eq!(missing, 4);
    }

    #[test]
    fn extension_on_z_strip() {
        let data = z_strip_data();
        let (window, kernel) = extend_on_window(&data, 3, 1e-9, &Caps::default()).unwrap();
        assert_eq!(window.len(), 7);
        assert!(min_eigenvalue(&kernel).unwrap() >= -1e-9);
        // Distance-2 entries take the Markov value 0.25.
        let i = window.index_of(&GroupElement::Lattice(vec![0])).unwrap();
        let j = window.index_of(&GroupElement::Lattice(vec![2])).unwrap();
        assert!((kernel[(i, j)].re - 0.25).abs() < 1e-10);
    }

    #[test]
    fn z2_extension_fails_with_cycle() {
        let data = z2_counterexample_data();
        let spec = crate::groups::z2_box();
        let data = PdFunctionData {
            spec: spec.clone(),
            ..data
        };
        match extend_on_window(&data, 1, 1e-9, &Caps::default()) {
            Err(Error::NotChordal { cycle }) => assert!(cycle.len() >= 4),
            other => panic!("expected NotChordal, got {other:?}"),
        }
    }

    #[test]
    fn folner_average_exact_on_s() {
        let data = z_strip_data();
        let (window, kernel) = extend_on_window(&data, 6, 1e-9, &Caps::default()).unwrap();
        let folner = cayley::folner_set(&data.spec, 4).unwrap();
        let targets = vec![
            GroupElement::Lattice(vec![0]),
            GroupElement::Lattice(vec![1]),
            GroupElement::Lattice(vec![-1]),
            GroupElement::Lattice(vec![2]),
        ];
        let avgs = folner_average(&data, &window, &kernel, &folner, &targets).unwrap();
        assert!((avgs[0].1[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!((avgs[1].1[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!((avgs[2].1[(0, 0)].re - 0.5).abs() < 1e-12);
        // Central completion: distance-2 average is exactly 0.25.
        assert!((avgs[3].1[(0, 0)].re - 0.25).abs() < 1e-12);
    }

    #[test]
    fn folner_average_window_too_small() {
        let data = z_strip_data();
        let (window, kernel) = extend_on_window(&data, 2, 1e-9, &Caps::default()).unwrap();
        let folner = cayley::folner_set(&data.spec, 4).unwrap();
        let err = folner_average(
            &data,
            &window,
            &kernel,
            &folner,
            &[GroupElement::Lattice(vec![1])],
        );
        assert!(matches!(err, Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn z2_certificate_matches_the_derivation() {
        let cert = certify_z2_counterexample(1e-9, &Caps::default()).unwrap();
        assert!(cert.verification.pass);
        assert!(cert
            .forced_phi_11
            .max_abs_diff(&CMatrix::identity(2))
            .abs()
            < 1e-9);
        assert_eq!(cert.rigidity_violations, 20);
        let want = CMatrix::from_real(&[&[0.0, 0.0], &[1.0, 0.0]]);
        assert!(cert.forced_phi_21.max_abs_diff(&want) < 1e-9);
        assert!((cert.contradiction - 1.0).abs() < 1e-9);
        assert!((cert.secondary_contradiction - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cross_certificate_pauli_pair() {
        let u1 = CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let u2 = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let cert = certify_cross_counterexample(&u1, &u2, 1e-9).unwrap();
        assert!(cert.forced_via_10.max_abs_diff(&u1.mul(&u2)) < 1e-9);
        assert!(cert.forced_via_01.max_abs_diff(&u2.mul(&u1)) < 1e-9);
        assert!((cert.norm_difference - 2.0).abs() < 1e-9);
        assert!(!cert.extendable);

        // Commuting pair: both chains force the same value.
        let w = CMatrix::from_rows(&[
            vec![c(0.6, 0.8), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.6, 0.8)],
        ])
        .unwrap();
        let cert = certify_cross_counterexample(&w, &w, 1e-9).unwrap();
        assert!(cert.extendable);
        assert!(cert.norm_difference < 1e-9);

        // Scalar unitaries: always extendable, forced value e^{i(a+b)}.
        let a = CMatrix::from_rows(&[vec![Complex64::from_polar(1.0, 0.7)]]).unwrap();
        let b = CMatrix::from_rows(&[vec![Complex64::from_polar(1.0, -1.2)]]).unwrap();
        let cert = certify_cross_counterexample(&a, &b, 1e-9).unwrap();
        assert!(cert.extendable);
        let want = Complex64::from_polar(1.0, 0.7 - 1.2);
        assert!((cert.forced_via_10[(0, 0)] - want).norm() < 1e-9);

        let bad = CMatrix::from_real(&[&[2.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(
            certify_cross_counterexample(&bad, &u2, 1e-9),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn cf_single_atom() {
        let alpha = 1.1;
        let moments = vec![c(1.0, 0.0), Complex64::from_polar(1.0, alpha)];
        let atoms = cf_decompose(&moments, 1e-9).unwrap();
        assert_eq!(atoms.len(), 1);
        assert!((atoms[0].weight - 1.0).abs() < 1e-9);
        assert!((atoms[0].frequency - alpha).abs() < 1e-9);
    }

    #[test]
    fn cf_half_half() {
        // (1, 0): the boundary extension gives c_2 = 1, kernel 1 - z^2,
        // atoms (1/2, 0) and (1/2, pi).
        let moments = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let mut atoms = cf_decompose(&moments, 1e-9).unwrap();
        atoms.sort_by(|a, b| a.frequency.partial_cmp(&b.frequency).unwrap());
        assert_eq!(atoms.len(), 2);
        assert!((atoms[0].weight - 0.5).abs() < 1e-9);
        assert!(atoms[0].frequency.abs() < 1e-9);
        assert!((atoms[1].weight - 0.5).abs() < 1e-9);
        assert!((atoms[1].frequency - std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn cf_three_atom_recovery() {
        // Forward moment oracle: fixed atoms generate moments to m = 6; the
        // decomposition must reproduce them.
        let true_atoms = [(0.5, 0.4), (0.3, 2.0), (0.2, 4.4)];
        let moments: Vec<Complex64> = (0..=6)
            .map(|k| {
                true_atoms
                    .iter()
                    .map(|&(w, f)| Complex64::from_polar(w, k as f64 * f))
                    .sum()
            })
            .collect();
        let atoms = cf_decompose(&moments, 1e-9).unwrap();
        for (k, want) in moments.iter().enumerate() {
            let got: Complex64 = atoms
                .iter()
                .map(|a| Complex64::from_polar(a.weight, k as f64 * a.frequency))
                .sum();
            assert!((got - want).norm() < 1e-6);
        }
    }

    #[test]
    fn cross_grid_rank_one() {
        let alpha = 0.9;
        let beta = -0.3;
        let h: Vec<Complex64> = (0..=2).map(|k| Complex64::from_polar(1.0, k as f64 * alpha)).collect();
        let v: Vec<Complex64> = (0..=2).map(|l| Complex64::from_polar(1.0, l as f64 * beta)).collect();
        let grid = cross_scalar_extend(&h, &v, 3, 3, 1e-9).unwrap();
        for k in -3..=3i64 {
            for l in -3..=3i64 {
                let want = Complex64::from_polar(1.0, k as f64 * alpha + l as f64 * beta);
                assert!((grid.value(k, l) - want).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn cross_grid_product_measure_is_psd() {
        // Two-atom marginals; grid must be PSD on the [-3,3]^2 Gram and
        // reproduce the marginals.
        let h_atoms = [(0.5, 0.0), (0.5, 2.2)];
        let v_atoms = [(0.7, 1.0), (0.3, 4.0)];
        let h: Vec<Complex64> = (0..=2)
            .map(|k| h_atoms.iter().map(|&(w, f)| Complex64::from_polar(w, k as f64 * f)).sum())
            .collect();
        let v: Vec<Complex64> = (0..=2)
            .map(|l| v_atoms.iter().map(|&(w, f)| Complex64::from_polar(w, l as f64 * f)).sum())
            .collect();
        let grid = cross_scalar_extend(&h, &v, 6, 6, 1e-9).unwrap();
        for (k, want) in h.iter().enumerate() {
            assert!((grid.value(k as i64, 0) - want).norm() < 1e-6);
        }
        for (l, want) in v.iter().enumerate() {
            assert!((grid.value(0, l as i64) - want).norm() < 1e-6);
        }
        // Gram over the full [-3,3]^2 point set.
        let pts: Vec<(i64, i64)> = (-3..=3)
            .flat_map(|x| (-3..=3).map(move |y| (x, y)))
            .collect();
        let n = pts.len();
        let mut gram = CMatrix::zeros(n, n);
        for (i, &(k1, l1)) in pts.iter().enumerate() {
            for (j, &(k2, l2)) in pts.iter().enumerate() {
                gram[(i, j)] = grid.value(k2 - k1, l2 - l1);
            }
        }
        assert!(min_eigenvalue(&gram).unwrap() >= -1e-8);
        // h = v gives a symmetric grid.
        let grid = cross_scalar_extend(&h, &h, 3, 3, 1e-9).unwrap();
        for k in -3..=3i64 {
            for l in -3..=3i64 {
                assert!((grid.value(k, l) - grid.value(l, k)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn pd_data_json_round_trip() {
        let data = z2_counterexample_data();
        let v = data.to_json();
        let back = PdFunctionData::from_json(&v).unwrap();
        assert_eq!(back.to_json(), v);
        assert_eq!(
            back.value(&lattice2(1, 0)).unwrap(),
            data.value(&lattice2(1, 0)).unwrap()
        );
    }
}
