//! Finite windows of Cayley graphs, Folner sets and boundary ratios, the
//! product-cycle reformulation of chordality, and the chordless polygon
//! constructor showing that finite spanning symmetric sets in Z^2 are never
//! chordal.

use std::collections::{HashMap, HashSet};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::groups::{GroupElement, GroupKind, GroupSpec, SymmetricSet};
use crate::par::{self, ExecMode};

/// Finite ordered list of distinct group elements with an index map.
/// Contains the identity and is closed under inverse.
#[derive(Debug, Clone)]
pub struct Window {
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    radius: u32,
}

impl Window {
    /// Builds a window from an element list; the identity and all inverses
    /// are added if missing, preserving first-seen order.
    pub fn from_elements(spec: &GroupSpec, elements: Vec<GroupElement>) -> Result<Window> {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        let push = |x: GroupElement, list: &mut Vec<GroupElement>, index: &mut HashMap<GroupElement, usize>| {
            if !index.contains_key(&x) {
                index.insert(x.clone(), list.len());
                list.push(x);
            }
        };
        push(spec.identity(), &mut list, &mut index);
        for x in elements {
            spec.validate(&x)?;
            let inv = spec.inverse(&x)?;
            push(x, &mut list, &mut index);
            push(inv, &mut list, &mut index);
        }
        Ok(Window {
            elements: list,
            index,
            radius: 0,
        })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.elements
                .iter()
                .map(crate::groups::element_to_json)
                .collect(),
        )
    }
}

/// Finite Folner set with its size parameter.
#[derive(Debug, Clone)]
pub struct FolnerSet {
    pub n: u32,
    pub elements: Vec<GroupElement>,
}

impl FolnerSet {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n,
            "elements": self.elements.iter().map(crate::groups::element_to_json).collect::<Vec<_>>(),
        })
    }
}

/// BFS ball of the given radius in the word metric of `spec.generators`,
/// in BFS layer order with deterministic within-layer order.
pub fn ball(spec: &GroupSpec, radius: u32, caps: &Caps) -> Result<Window> {
    if radius > caps.radius {
        return Err(Error::RadiusCapExceeded {
            requested: radius,
            cap: caps.radius,
        });
    }
    let mut order = vec![spec.identity()];
    let mut seen: HashSet<GroupElement> = order.iter().cloned().collect();
    let mut frontier = order.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &spec.generators {
                let y = spec.multiply(x, g)?;
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        order.extend(next.iter().cloned());
        frontier = next;
    }
    let index = order
        .iter()
        .enumerate()
        .map(|(i, x)| (x.clone(), i))
        .collect();
    Ok(Window {
        elements: order,
        index,
        radius,
    })
}

/// Word length: BFS distance from the identity in the Cayley graph of the
/// generating set. Errors when the radius cap is hit before reaching `x`.
pub fn word_length_capped(spec: &GroupSpec, x: &GroupElement, caps: &Caps) -> Result<u32> {
    spec.validate(x)?;
    let target = x.clone();
    if target == spec.identity() {
        return Ok(0);
    }
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(spec.identity());
    let mut frontier = vec![spec.identity()];
    for depth in 1..=caps.radius {
        let mut next = Vec::new();
        for y in &frontier {
            for g in &spec.generators {
                let z = spec.multiply(y, g)?;
                if z == target {
                    return Ok(depth);
                }
                if seen.insert(z.clone()) {
                    next.push(z);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Err(Error::WordLengthCapExceeded { cap: caps.radius })
}

pub fn word_length(spec: &GroupSpec, x: &GroupElement) -> Result<u32> {
    word_length_capped(spec, x, &Caps::default())
}

/// Cayley graph on the window: edge {i, j} iff x_i^{-1} x_j in S.
/// Rows are computed in parallel; the result is identical to the sequential
/// construction.
pub fn cayley_graph(spec: &GroupSpec, set: &SymmetricSet, window: &Window) -> Result<Graph> {
    cayley_graph_with_mode(spec, set, window, ExecMode::Parallel)
}

pub fn cayley_graph_with_mode(
    spec: &GroupSpec,
    set: &SymmetricSet,
    window: &Window,
    mode: ExecMode,
) -> Result<Graph> {
    set.validate(spec)?;
    let n = window.len();
    let elems = window.elements();
    let rows: Vec<Result<Vec<usize>>> = par::map_indexed(mode, n, |i| {
        let inv = spec.inverse(&elems[i])?;
        let mut row = Vec::new();
        for (j, y) in elems.iter().enumerate().skip(i + 1) {
            let q = spec.multiply(&inv, y)?;
            if set.contains(spec, &q)? {
                row.push(j);
            }
        }
        Ok(row)
    });
    let mut g = Graph::new(n);
    for (i, row) in rows.into_iter().enumerate() {
        for j in row? {
            g.add_edge(i, j)?;
        }
    }
    Ok(g)
}

/// Remark-style product test: given xi_1..xi_k in S with product e and
/// k >= 4, reports whether some cyclically consecutive product
/// xi_i xi_{i+1} lies in S (a distance-2 chord of the corresponding cycle).
pub fn product_cycle_check(
    spec: &GroupSpec,
    set: &SymmetricSet,
    xs: &[GroupElement],
) -> Result<bool> {
    if xs.len() < 4 {
        return Err(Error::PreconditionViolation(format!(
            "need at least 4 factors, got {}",
            xs.len()
        )));
    }
    let mut prod = spec.identity();
    for x in xs {
        if !set.contains(spec, x)? {
            return Err(Error::PreconditionViolation(format!("factor {x} outside S")));
        }
        prod = spec.multiply(&prod, x)?;
    }
    if prod != spec.identity() {
        return Err(Error::PreconditionViolation(
            "factors do not multiply to the identity".into(),
        ));
    }
    for i in 0..xs.len() {
        let next = &xs[(i + 1) % xs.len()];
        let pair = spec.multiply(&xs[i], next)?;
        if set.contains(spec, &pair)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The xi-sequence of a vertex cycle: xi_i = x_i^{-1} x_{i+1} (cyclically).
pub fn cycle_quotients(spec: &GroupSpec, cycle: &[GroupElement]) -> Result<Vec<GroupElement>> {
    let k = cycle.len();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let inv = spec.inverse(&cycle[i])?;
        out.push(spec.multiply(&inv, &cycle[(i + 1) % k])?);
    }
    Ok(out)
}

/// Checks the Lambda criterion: (a) no product of at most `length_cap`
/// non-identity Lambda elements equals e, and (b) Lambda Lambda^{-1} equals
/// Lambda union Lambda^{-1} as sets. Condition (a) is a bounded-length
/// semi-decision; the cap is the caller's bound on product length.
pub fn remark23_check(
    spec: &GroupSpec,
    lambda: &[GroupElement],
    length_cap: usize,
) -> Result<bool> {
    let e = spec.identity();
    if !lambda.contains(&e) {
        return Err(Error::PreconditionViolation("identity not in Lambda".into()));
    }
    let non_identity: Vec<&GroupElement> = lambda.iter().filter(|x| **x != e).collect();

    // (b) Lambda Lambda^{-1} = Lambda union Lambda^{-1}, exact over finite
    // Lambda.
    let mut union: HashSet<GroupElement> = lambda.iter().cloned().collect();
    for x in lambda {
        union.insert(spec.inverse(x)?);
    }
    for x in lambda {
        for y in lambda {
            let q = spec.multiply(x, &spec.inverse(y)?)?;
            if !union.contains(&q) {
                return Ok(false);
            }
        }
    }

    // (a) products of up to length_cap non-identity elements never hit e.
    let mut reach: HashSet<GroupElement> = non_identity.iter().map(|x| (*x).clone()).collect();
    let mut frontier: Vec<GroupElement> = reach.iter().cloned().collect();
    frontier.sort();
    if reach.contains(&e) {
        return Ok(false);
    }
    for _ in 1..length_cap {
        let mut next = Vec::new();
        for x in &frontier {
            for y in &non_identity {
                let p = spec.multiply(x, y)?;
                if p == e {
                    return Ok(false);
                }
                if reach.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        frontier = next;
    }
    Ok(true)
}

/// Standard Folner family per amenable group kind:
/// boxes [0,N)^d for lattices, reduced words of length < N for the dihedral
/// group, and the box {0 <= m,n < N, 0 <= p < N^2} for Heisenberg (the p
/// range is N^2 so the commutator growth stays boundary-order).
pub fn folner_set(spec: &GroupSpec, n: u32) -> Result<FolnerSet> {
    if n == 0 {
        return Err(Error::PreconditionViolation("Folner parameter must be positive".into()));
    }
    let elements = match &spec.kind {
        GroupKind::FreeGroup(r) if *r >= 2 => {
            return Err(Error::PreconditionViolation(
                "free groups of rank >= 2 are not amenable; no Folner family".into(),
            ))
        }
        GroupKind::FreeGroup(_) => {
            // Rank 1 is Z written multiplicatively: words x^k, 0 <= k < N.
            let x = &spec.generators[0];
            let mut out = Vec::new();
            let mut cur = spec.identity();
            for _ in 0..n {
                out.push(cur.clone());
                cur = spec.multiply(&cur, x)?;
            }
            out
        }
        GroupKind::IntLattice(d) => {
            let mut out = vec![vec![]];
            for _ in 0..*d {
                let mut next = Vec::new();
                for prefix in &out {
                    for k in 0..n as i64 {
                        let mut v = prefix.clone();
                        v.push(k);
                        next.push(v);
                    }
                }
                out = next;
            }
            out.into_iter().map(GroupElement::Lattice).collect()
        }
        GroupKind::Heisenberg => {
            let n = n as i64;
            let mut out = Vec::new();
            for m in 0..n {
                for k in 0..n {
                    for p in 0..n * n {
                        out.push(GroupElement::Heisenberg(m, k, p));
                    }
                }
            }
            out
        }
        GroupKind::InfiniteDihedral => {
            let caps = Caps {
                radius: n,
                ..Default::default()
            };
            ball(spec, n - 1, &caps)?.elements().to_vec()
        }
    };
    Ok(FolnerSet { n, elements })
}

/// card(K symdiff FK) / card(K) with FK = {f k : f in F, k in K}.
pub fn folner_ratio(spec: &GroupSpec, f: &[GroupElement], k: &FolnerSet) -> Result<f64> {
    if f.is_empty() || k.elements.is_empty() {
        return Err(Error::PreconditionViolation("F and K must be nonempty".into()));
    }
    let kset: HashSet<&GroupElement> = k.elements.iter().collect();
    let mut fk: HashSet<GroupElement> = HashSet::with_capacity(k.elements.len() * f.len());
    for x in f {
        for y in &k.elements {
            fk.insert(spec.multiply(x, y)?);
        }
    }
    let fk_minus_k = fk.iter().filter(|z| !kset.contains(z)).count();
    let k_minus_fk = k.elements.iter().filter(|z| !fk.contains(*z)).count();
    Ok((fk_minus_k + k_minus_fk) as f64 / k.elements.len() as f64)
}

/// Sphere cardinalities |{x : l(x) = r}| for r = 0..=rmax.
pub fn sphere_profile(spec: &GroupSpec, rmax: u32, caps: &Caps) -> Result<Vec<usize>> {
    if rmax > caps.radius {
        return Err(Error::RadiusCapExceeded {
            requested: rmax,
            cap: caps.radius,
        });
    }
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(spec.identity());
    let mut frontier = vec![spec.identity()];
    let mut profile = vec![1usize];
    for _ in 0..rmax {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &spec.generators {
                let y = spec.multiply(x, g)?;
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        profile.push(next.len());
        frontier = next;
    }
    Ok(profile)
}

/// Exact angular order on nonzero integer vectors: by argument in [0, 2pi).
fn arg_order(a: (i64, i64), b: (i64, i64)) -> std::cmp::Ordering {
    // Half-plane index: 0 for arg in [0, pi), 1 for [pi, 2pi).
    let half = |v: (i64, i64)| -> u8 {
        if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        // Same half-plane: compare by cross product (exact).
        let cross = a.0 * b.1 - a.1 * b.0;
        cross.cmp(&0).reverse()
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Whether the integer span of the vectors is all of Z^2: the gcd of all
/// 2x2 minors must be 1 (Smith normal form invariant).
fn spans_z2(vs: &[(i64, i64)]) -> bool {
    let mut g = 0i64;
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            let det = a.0 * b.1 - a.1 * b.0;
            g = gcd(g, det);
            if g == 1 {
                return true;
            }
        }
    }
    false
}

/// Chordless polygon cycle for a finite symmetric spanning subset of Z^2.
///
/// Per direction, take the representative of maximal length; order the 2n
/// representatives by argument; walk N steps along each. With `n = None`
/// the polygon size doubles from 2 until the cycle verifies chordless
/// (cap 1024).
pub fn lulu_cycle(s: &[(i64, i64)], n: Option<u32>) -> Result<Vec<(i64, i64)>> {
    let nonzero: Vec<(i64, i64)> = s.iter().copied().filter(|&v| v != (0, 0)).collect();
    if !s.contains(&(0, 0)) {
        return Err(Error::PreconditionViolation("0 must be in S".into()));
    }
    for v in &nonzero {
        if !nonzero.contains(&(-v.0, -v.1)) {
            return Err(Error::PreconditionViolation(format!(
                "S not symmetric: missing -{v:?}"
            )));
        }
    }
    if !spans_z2(&nonzero) {
        return Err(Error::NotSpanning);
    }

    // Maximal-length representative per primitive direction. Ties cannot
    // occur: same-direction elements of equal length are equal.
    let mut best: HashMap<(i64, i64), (i64, i64)> = HashMap::new();
    for &v in &nonzero {
        let g = gcd(v.0, v.1);
        let dir = (v.0 / g, v.1 / g);
        let entry = best.entry(dir).or_insert(v);
        if v.0 * v.0 + v.1 * v.1 > entry.0 * entry.0 + entry.1 * entry.1 {
            *entry = v;
        }
    }
    let mut reps: Vec<(i64, i64)> = best.values().copied().collect();
    reps.sort_by(|&a, &b| arg_order(a, b));

    let membership: HashSet<(i64, i64)> = s.iter().copied().collect();
    let build = |n: u32| -> Vec<(i64, i64)> {
        let mut pts = Vec::with_capacity(reps.len() * n as usize);
        let mut cur = (0i64, 0i64);
        for rep in &reps {
            for _ in 0..n {
                pts.push(cur);
                cur = (cur.0 + rep.0, cur.1 + rep.1);
            }
        }
        debug_assert_eq!(cur, (0, 0), "polygon closes because reps are symmetric");
        pts
    };
    let chordless = |pts: &[(i64, i64)]| -> bool {
        let k = pts.len();
        let distinct: HashSet<_> = pts.iter().collect();
        if distinct.len() != k || k < 4 {
            return false;
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let diff = (pts[j].0 - pts[i].0, pts[j].1 - pts[i].1);
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if membership.contains(&diff) != consecutive {
                    return false;
                }
            }
        }
        true
    };

    match n {
        Some(n) => {
            let pts = build(n);
            if chordless(&pts) {
                Ok(pts)
            } else {
                Err(Error::LuluCapExceeded { max_n: n })
            }
        }
        None => {
            let mut n = 2u32;
            while n <= 1024 {
                let pts = build(n);
                if chordless(&pts) {
                    return Ok(pts);
                }
                n *= 2;
            }
            Err(Error::LuluCapExceeded { max_n: 1024 })
        }
    }
}
