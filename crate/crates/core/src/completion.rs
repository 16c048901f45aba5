//! Hermitian block-matrix machinery: PSD tests through the Jacobi
//! eigensolver, pseudo-inverse and PSD square roots, the matrix-ball
//! parametrization of one missing block, forced-entry detection, and the
//! chordal-pattern completion algorithm.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::cmat::{hermitian_eigen, CMatrix};
use crate::error::{Error, Result};
use crate::graphs::{self, ChordalityCertificate, Graph};
use crate::par::{self, ExecMode};

/// Default absolute PSD tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default relative rank cutoff for pseudo-inversion.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-12;

fn require_hermitian(m: &CMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("Hermitian test on non-square".into()));
    }
    if !m.is_finite() {
        return Err(Error::NonFiniteEntry);
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL * (1.0 + m.max_abs()) {
        return Err(Error::NonHermitian { defect });
    }
    Ok(())
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    require_hermitian(m)?;
    if m.rows() == 0 {
        return Ok(0.0);
    }
    let (vals, _) = hermitian_eigen(m)?;
    Ok(vals[0])
}

pub fn is_psd(m: &CMatrix, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(m)? >= -tol)
}

/// Moore-Penrose pseudo-inverse of a PSD matrix. Eigenvalues below
/// `rank_tol * lambda_max` are treated as zero.
pub fn pinv_psd(c: &CMatrix, rank_tol: f64) -> Result<CMatrix> {
    require_hermitian(c)?;
    if c.rows() == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    let (vals, vecs) = hermitian_eigen(c)?;
    let lambda_max = vals.last().copied().unwrap_or(0.0).max(0.0);
    if vals[0] < -DEFAULT_TOL.max(rank_tol * lambda_max) {
        return Err(Error::NotPsd {
            context: "pinv_psd input".into(),
            min_eig: vals[0],
        });
    }
    let cutoff = rank_tol * lambda_max;
    let n = c.rows();
    let mut diag = CMatrix::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        if v > cutoff {
            diag[(i, i)] = Complex64::new(1.0 / v, 0.0);
        }
    }
    Ok(vecs.mul(&diag).mul(&vecs.adjoint()))
}

/// Unique PSD square root. Eigenvalues within `tol` of zero are flattened to
/// zero so roundoff-rank-deficient inputs keep exact-zero root directions.
pub fn sqrt_psd_with_tol(c: &CMatrix, tol: f64) -> Result<CMatrix> {
    require_hermitian(c)?;
    if c.rows() == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    let (vals, vecs) = hermitian_eigen(c)?;
    if vals[0] < -tol {
        return Err(Error::NotPsd {
            context: "sqrt_psd input".into(),
            min_eig: vals[0],
        });
    }
    let n = c.rows();
    let mut diag = CMatrix::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        if v > tol {
            diag[(i, i)] = Complex64::new(v.sqrt(), 0.0);
        }
    }
    Ok(vecs.mul(&diag).mul(&vecs.adjoint()))
}

pub fn sqrt_psd(c: &CMatrix) -> Result<CMatrix> {
    sqrt_psd_with_tol(c, DEFAULT_TOL)
}

/// Projection of an almost-PSD Hermitian matrix onto the PSD cone: negative
/// eigenvalues in [-tol, 0) are clipped, below -tol is an error.
fn clip_to_psd(c: &CMatrix, tol: f64, context: &str) -> Result<CMatrix> {
    require_hermitian(c)?;
    if c.rows() == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    let (vals, vecs) = hermitian_eigen(c)?;
    if vals[0] < -tol {
        return Err(Error::NotPsd {
            context: context.into(),
            min_eig: vals[0],
        });
    }
    if vals[0] >= 0.0 {
        return Ok(c.clone());
    }
    let n = c.rows();
    let mut diag = CMatrix::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        diag[(i, i)] = Complex64::new(v.max(0.0), 0.0);
    }
    Ok(vecs.mul(&diag).mul(&vecs.adjoint()))
}

/// Stack [[a, b], [b*, c]] as one Hermitian matrix.
fn two_by_two(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> CMatrix {
    let p = a.rows();
    let q = c.rows();
    let mut m = CMatrix::zeros(p + q, p + q);
    m.set_block(0, 0, a);
    m.set_block(0, p, b);
    m.set_block(p, 0, &b.adjoint());
    m.set_block(p, p, c);
    m
}

/// All PSD-compatible values for the missing corner block of
/// [[A, B, X], [B*, C, D], [X*, D*, E]]: X = center + L K R over contractions
/// K. `unique` when a radius vanishes within tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixBall {
    pub center: CMatrix,
    pub left_radius: CMatrix,
    pub right_radius: CMatrix,
    pub unique: bool,
}

impl MatrixBall {
    /// The completion center + L K R for a given contraction K.
    pub fn point(&self, k: &CMatrix) -> CMatrix {
        self.center.add(&self.left_radius.mul(k).mul(&self.right_radius))
    }
}

/// Matrix-ball parametrization of the one-missing-block completion.
///
/// Preconditions: [[A,B],[B*,C]] and [[C,D],[D*,E]] PSD within `tol`
/// (the error names the failing corner). Center B C^+ D, radii the PSD
/// square roots of the Schur defects A - B C^+ B* and E - D* C^+ D.
pub fn matrix_ball(
    a: &CMatrix,
    b: &CMatrix,
    c: &CMatrix,
    d: &CMatrix,
    e: &CMatrix,
    tol: f64,
) -> Result<MatrixBall> {
    let p = a.rows();
    let q = c.rows();
    let r = e.rows();
    if b.rows() != p || b.cols() != q || d.rows() != q || d.cols() != r {
        return Err(Error::DimensionMismatch("matrix_ball block shapes".into()));
    }
    let upper = two_by_two(a, b, c);
    let upper_min = min_eigenvalue(&upper)?;
    if upper_min < -tol {
        return Err(Error::NotPsd {
            context: "upper-left corner [[A,B],[B*,C]]".into(),
            min_eig: upper_min,
        });
    }
    let lower = two_by_two(c, d, e);
    let lower_min = min_eigenvalue(&lower)?;
    if lower_min < -tol {
        return Err(Error::NotPsd {
            context: "lower-right corner [[C,D],[D*,E]]".into(),
            min_eig: lower_min,
        });
    }

    let c_psd = clip_to_psd(c, tol, "middle block C")?;
    let c_pinv = pinv_psd(&c_psd, DEFAULT_RANK_TOL)?;
    let center = b.mul(&c_pinv).mul(d);

    let herm = |m: CMatrix| m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
    let left_defect = herm(a.sub(&b.mul(&c_pinv).mul(&b.adjoint())));
    let right_defect = herm(e.sub(&d.adjoint().mul(&c_pinv).mul(d)));
    // Uniqueness is decided on the defects: a defect at tolerance level has
    // a square root at sqrt-tolerance level, which would drown the flag.
    let unique = left_defect.op_norm() <= tol || right_defect.op_norm() <= tol;
    let left_radius = sqrt_psd_with_tol(&left_defect, tol)?;
    let right_radius = sqrt_psd_with_tol(&right_defect, tol)?;
    Ok(MatrixBall {
        center,
        left_radius,
        right_radius,
        unique,
    })
}

/// The center when the ball is degenerate (the block is forced), None when a
/// genuine degree of freedom remains.
pub fn forced_entry(
    a: &CMatrix,
    b: &CMatrix,
    c: &CMatrix,
    d: &CMatrix,
    e: &CMatrix,
    tol: f64,
) -> Result<Option<CMatrix>> {
    let ball = matrix_ball(a, b, c, d, e, tol)?;
    Ok(ball.unique.then_some(ball.center))
}

/// Hermitian block matrix specified on a pattern graph plus the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialBlockMatrix {
    n: usize,
    d: usize,
    pattern: Graph,
    /// Keyed by (i, j) with i <= j; the (j, i) block is the adjoint.
    blocks: BTreeMap<(usize, usize), CMatrix>,
}

impl PartialBlockMatrix {
    pub fn new(n: usize, d: usize) -> Self {
        PartialBlockMatrix {
            n,
            d,
            pattern: Graph::new(n),
            blocks: BTreeMap::new(),
        }
    }

    pub fn block_count(&self) -> usize {
        self.n
    }

    pub fn block_dim(&self) -> usize {
        self.d
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn set_diagonal(&mut self, i: usize, m: CMatrix) -> Result<()> {
        self.check_block_shape(&m)?;
        require_hermitian(&m)?;
        if i >= self.n {
            return Err(Error::VertexOutOfRange { v: i, n: self.n });
        }
        self.blocks.insert((i, i), m);
        Ok(())
    }

    /// Specifies the (i, j) off-diagonal block (and implicitly its adjoint).
    pub fn set_block(&mut self, i: usize, j: usize, m: CMatrix) -> Result<()> {
        if i == j {
            return self.set_diagonal(i, m);
        }
        self.check_block_shape(&m)?;
        if !m.is_finite() {
            return Err(Error::NonFiniteEntry);
        }
        let (key, value) = if i < j { ((i, j), m) } else { ((j, i), m.adjoint()) };
        self.pattern.add_edge(key.0, key.1)?;
        self.blocks.insert(key, value);
        Ok(())
    }

    fn check_block_shape(&self, m: &CMatrix) -> Result<()> {
        if m.rows() != self.d || m.cols() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "block must be {0}x{0}",
                self.d
            )));
        }
        Ok(())
    }

    pub fn is_specified(&self, i: usize, j: usize) -> bool {
        i == j && self.blocks.contains_key(&(i, i))
            || i != j && self.pattern.has_edge(i, j)
    }

    /// Specified block with Hermitian symmetry applied on lookup.
    pub fn block(&self, i: usize, j: usize) -> Option<CMatrix> {
        if i <= j {
            self.blocks.get(&(i, j)).cloned()
        } else {
            self.blocks.get(&(j, i)).map(|m| m.adjoint())
        }
    }

    /// Diagonal fully specified and Hermitian, all blocks finite.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            let diag = self.blocks.get(&(i, i)).ok_or(Error::DimensionMismatch(
                format!("diagonal block ({i},{i}) unspecified"),
            ))?;
            require_hermitian(diag)?;
        }
        Ok(())
    }

    /// Fully specified principal submatrix on sorted block indices.
    pub fn assemble(&self, ids: &[usize]) -> CMatrix {
        let d = self.d;
        let mut out = CMatrix::zeros(ids.len() * d, ids.len() * d);
        for (a, &i) in ids.iter().enumerate() {
            for (b, &j) in ids.iter().enumerate() {
                if let Some(blk) = self.block(i, j) {
                    out.set_block(a * d, b * d, &blk);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let blocks: BTreeMap<String, &CMatrix> = self
            .blocks
            .iter()
            .map(|((i, j), m)| (format!("{i},{j}"), m))
            .collect();
        serde_json::json!({
            "n": self.n,
            "d": self.d,
            "pattern": self.pattern.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "blocks": blocks,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            d: usize,
            pattern: Vec<[usize; 2]>,
            blocks: BTreeMap<String, CMatrix>,
        }
        let wire: Wire =
            serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        let mut pbm = PartialBlockMatrix::new(wire.n, wire.d);
        let mut specified = std::collections::HashSet::new();
        for (key, m) in wire.blocks {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| Error::Json(format!("bad block key {key}")))?;
            let i: usize = i.trim().parse().map_err(|_| Error::Json("bad block key".into()))?;
            let j: usize = j.trim().parse().map_err(|_| Error::Json("bad block key".into()))?;
            if let Some(prev) = pbm.block(i, j) {
                if prev.max_abs_diff(&m) > HERMITIAN_TOL {
                    return Err(Error::Json(format!(
                        "blocks ({i},{j}) and ({j},{i}) are not Hermitian-consistent"
                    )));
                }
            }
            pbm.set_block(i, j, m)?;
            specified.insert((i.min(j), i.max(j)));
        }
        for [i, j] in wire.pattern {
            if !specified.contains(&(i.min(j), i.max(j))) {
                return Err(Error::Json(format!("pattern edge ({i},{j}) has no block")));
            }
        }
        pbm.validate()?;
        Ok(pbm)
    }
}

/// Outcome of partial positive semidefiniteness verification.
#[derive(Debug, Clone, Serialize)]
pub struct PartialPsdReport {
    pub pass: bool,
    pub clique_count: usize,
    pub min_eigenvalue: f64,
    /// First offending clique in sorted order, with its minimum eigenvalue.
    pub offender: Option<(Vec<usize>, f64)>,
}

/// Checks every maximal clique's fully specified submatrix for positive
/// semidefiniteness. For chordal patterns this is exactly completability;
/// in general it is the definition of partial positive definiteness.
pub fn verify_partial_psd(
    p: &PartialBlockMatrix,
    tol: f64,
    caps: &Caps,
) -> Result<PartialPsdReport> {
    verify_partial_psd_with_mode(p, tol, caps, ExecMode::Parallel)
}

pub fn verify_partial_psd_with_mode(
    p: &PartialBlockMatrix,
    tol: f64,
    caps: &Caps,
    mode: ExecMode,
) -> Result<PartialPsdReport> {
    p.validate()?;
    let cliques = graphs::maximal_cliques(p.pattern(), caps.clique)?;
    let eigs: Vec<Result<f64>> = par::map_slice(mode, &cliques, |clique| {
        min_eigenvalue(&p.assemble(clique))
    });
    let mut min_eig = f64::INFINITY;
    let mut offender = None;
    for (clique, eig) in cliques.iter().zip(eigs) {
        let eig = eig?;
        if eig < min_eig {
            min_eig = eig;
        }
        if eig < -tol && offender.is_none() {
            offender = Some((clique.clone(), eig));
        }
    }
    Ok(PartialPsdReport {
        pass: offender.is_none(),
        clique_count: cliques.len(),
        min_eigenvalue: if min_eig.is_finite() { min_eig } else { 0.0 },
        offender,
    })
}

/// Internal matrix ball over block index groups ({i}, cs, {j}).
fn ball_over_blocks(
    p: &PartialBlockMatrix,
    i: usize,
    cs: &[usize],
    j: usize,
    tol: f64,
) -> Result<MatrixBall> {
    let d = p.block_dim();
    let a = p.block(i, i).expect("diagonal specified");
    let e = p.block(j, j).expect("diagonal specified");
    let mut b = CMatrix::zeros(d, cs.len() * d);
    let mut dd = CMatrix::zeros(cs.len() * d, d);
    for (a_idx, &c) in cs.iter().enumerate() {
        b.set_block(0, a_idx * d, &p.block(i, c).expect("pattern edge"));
        dd.set_block(a_idx * d, 0, &p.block(c, j).expect("pattern edge"));
    }
    let c_mat = p.assemble(cs);
    matrix_ball(&a, &b, &c_mat, &dd, &e, tol)
}

/// Ball center only, for the fill loop. The corner PSD checks of
/// `matrix_ball` are skipped: both corners are principal submatrices of
/// cliques verified once at completion entry. C^+ is cached per clique
/// index set -- blocks are never rewritten, so the cached value stays valid.
fn fill_center(
    p: &PartialBlockMatrix,
    i: usize,
    cs: &[usize],
    j: usize,
    tol: f64,
    pinv_cache: &mut std::collections::HashMap<Vec<usize>, CMatrix>,
) -> Result<CMatrix> {
    let d = p.block_dim();
    if cs.is_empty() {
        return Ok(CMatrix::zeros(d, d));
    }
    let c_pinv = match pinv_cache.get(cs) {
        Some(m) => m.clone(),
        None => {
            let c_mat = clip_to_psd(&p.assemble(cs), tol, "fill middle block")?;
            let m = pinv_psd(&c_mat, DEFAULT_RANK_TOL)?;
            pinv_cache.insert(cs.to_vec(), m.clone());
            m
        }
    };
    let mut b = CMatrix::zeros(d, cs.len() * d);
    let mut dd = CMatrix::zeros(cs.len() * d, d);
    for (a_idx, &c) in cs.iter().enumerate() {
        b.set_block(0, a_idx * d, &p.block(i, c).expect("pattern edge"));
        dd.set_block(a_idx * d, 0, &p.block(c, j).expect("pattern edge"));
    }
    Ok(b.mul(&c_pinv).mul(&dd))
}

/// Adjacency bitsets for the fill loop.
struct BitAdjacency {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitAdjacency {
    fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for u in 0..n {
            for &v in g.neighbors(u) {
                rows[u * words + v / 64] |= 1 << (v % 64);
            }
        }
        BitAdjacency { n, words, rows }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

}

/// Reusable buffers for the fill-candidate test.
struct FillScratch {
    cset_bits: Vec<u64>,
    cset: Vec<usize>,
    seen: Vec<u64>,
    frontier: Vec<usize>,
}

impl FillScratch {
    fn new(words: usize) -> Self {
        FillScratch {
            cset_bits: vec![0; words],
            cset: Vec::new(),
            seen: vec![0; words],
            frontier: Vec::new(),
        }
    }

    /// Loads the common neighborhood of i and j into `self.cset`.
    fn load_cset(&mut self, adj: &BitAdjacency, i: usize, j: usize) {
        let ri = adj.row(i);
        let rj = adj.row(j);
        self.cset.clear();
        for w in 0..adj.words {
            let mut bits = ri[w] & rj[w];
            self.cset_bits[w] = bits;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                self.cset.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    /// The conditions on a nonempty common neighborhood: Cset must be a
    /// clique (then {i} u Cset and {j} u Cset are cliques too, since Cset
    /// lies in both neighborhoods) and Cset must separate i from j, which
    /// on a chordal pattern is exactly "pattern + {i,j} stays chordal".
    fn clique_and_separated(&mut self, adj: &BitAdjacency, i: usize, j: usize) -> bool {
        let words = adj.words;
        for &c in &self.cset {
            let rc = adj.row(c);
            for w in 0..words {
                let mut bad = self.cset_bits[w] & !rc[w];
                if w == c / 64 {
                    bad &= !(1u64 << (c % 64));
                }
                if bad != 0 {
                    return false;
                }
            }
        }
        // Separation BFS from i avoiding Cset; reaching j means a chordless
        // cycle would appear.
        self.seen[..words].fill(0);
        for w in 0..words {
            self.seen[w] |= self.cset_bits[w];
        }
        self.seen[i / 64] |= 1 << (i % 64);
        self.frontier.clear();
        self.frontier.push(i);
        while let Some(u) = self.frontier.pop() {
            let ru = adj.row(u);
            for w in 0..words {
                let mut new_bits = ru[w] & !self.seen[w];
                if new_bits != 0 {
                    self.seen[w] |= new_bits;
                    while new_bits != 0 {
                        let b = new_bits.trailing_zeros() as usize;
                        let v = w * 64 + b;
                        if v == j {
                            return false;
                        }
                        if v < adj.n {
                            self.frontier.push(v);
                        }
                        new_bits &= new_bits - 1;
                    }
                }
            }
        }
        true
    }
}

/// Union-find over window vertices, tracking connectivity of the growing
/// pattern so empty-separator candidates resolve without a graph search.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Completes a partially specified PSD block matrix over a chordal pattern.
///
/// Missing pairs are scanned in lexicographic order; a pair {i, j} is filled
/// when its common pattern neighborhood is a clique and the pattern plus
/// {i, j} stays chordal, with the matrix-ball center over ({i}, Cset, {j})
/// (the central completion, K = 0). Specified blocks are never altered.
/// Pairs spanning two components have an empty separator and center to the
/// zero block.
pub fn chordal_complete(p: &PartialBlockMatrix, tol: f64, caps: &Caps) -> Result<CMatrix> {
    p.validate()?;
    let n = p.block_count();
    let d = p.block_dim();
    if let ChordalityCertificate::ChordlessCycle { cycle } = graphs::is_chordal(p.pattern()) {
        return Err(Error::NotChordal { cycle });
    }
    let report = verify_partial_psd(p, tol, caps)?;
    if let Some((clique, min_eig)) = report.offender {
        return Err(Error::CliqueNotPsd { clique, min_eig });
    }

    let mut work = p.clone();
    let mut adj = BitAdjacency::from_graph(p.pattern());
    let mut uf = UnionFind::new(n);
    for (i, j) in p.pattern().edges() {
        uf.union(i, j);
    }

    // Missing pairs in lexicographic order.
    let mut missing: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !adj.has_edge(i, j) {
                missing.push((i, j));
            }
        }
    }

    let mut scratch = FillScratch::new(adj.words.max(1));
    let mut pinv_cache = std::collections::HashMap::new();
    let zero = CMatrix::zeros(d, d);
    while !missing.is_empty() {
        let mut filled_at = None;
        for (pos, &(i, j)) in missing.iter().enumerate() {
            scratch.load_cset(&adj, i, j);
            let center = if scratch.cset.is_empty() {
                // Empty separator: fillable exactly when i and j are still
                // in different components, and the ball center is zero.
                if uf.find(i) == uf.find(j) {
                    continue;
                }
                zero.clone()
            } else {
                if !scratch.clique_and_separated(&adj, i, j) {
                    continue;
                }
                fill_center(&work, i, &scratch.cset, j, tol, &mut pinv_cache)?
            };
            work.set_block(i, j, center)?;
            adj.add_edge(i, j);
            uf.union(i, j);
            filled_at = Some(pos);
            break;
        }
        match filled_at {
            Some(pos) => {
                missing.remove(pos);
            }
            None => return Err(Error::NoFillablePair),
        }
    }

    let all: Vec<usize> = (0..n).collect();
    Ok(work.assemble(&all))
}
