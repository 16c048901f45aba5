//! Exact arithmetic for the concrete group families: integer lattices Z^d,
//! the integer Heisenberg group, the infinite dihedral group Z2 * Z2, and
//! free groups (the non-amenable control). Morphisms to the ordered reals and
//! rule-based symmetric sets live here too.
//!
//! Everything is integer or word arithmetic; the only floating point output
//! is `morphism_eval`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupKind {
    IntLattice(usize),
    Heisenberg,
    InfiniteDihedral,
    FreeGroup(usize),
}

impl GroupKind {
    pub fn name(&self) -> String {
        match self {
            GroupKind::IntLattice(d) => format!("int_lattice({d})"),
            GroupKind::Heisenberg => "heisenberg".into(),
            GroupKind::InfiniteDihedral => "infinite_dihedral".into(),
            GroupKind::FreeGroup(r) => format!("free_group({r})"),
        }
    }

    /// Amenability by family; free groups of rank >= 2 are the non-amenable
    /// control.
    pub fn is_amenable(&self) -> bool {
        !matches!(self, GroupKind::FreeGroup(r) if *r >= 2)
    }
}

/// Canonical element encodings: integer vectors for lattices, the (m, n, p)
/// triple for Heisenberg X_{m,n,p}, reduced words for the word groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Lattice(Vec<i64>),
    Heisenberg(i64, i64, i64),
    /// Reduced word. Dihedral: letters `a`, `b` (involutions). Free group:
    /// lowercase letters with uppercase for inverses.
    Word(String),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Lattice(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Heisenberg(m, n, p) => write!(f, "({m},{n},{p})"),
            GroupElement::Word(w) => {
                if w.is_empty() {
                    write!(f, "e")
                } else {
                    write!(f, "{w}")
                }
            }
        }
    }
}

/// A concrete group together with its symmetric generating set.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub generators: Vec<GroupElement>,
}

const FREE_LETTERS: [char; 3] = ['x', 'y', 'z'];

impl GroupSpec {
    /// Standard generating sets: +-e_i for lattices, the four m/n shifts for
    /// Heisenberg, the two involutions for the dihedral group, letters and
    /// inverses for free groups.
    pub fn new(kind: GroupKind) -> Result<Self> {
        let generators = match &kind {
            GroupKind::IntLattice(d) => {
                if *d == 0 {
                    return Err(Error::InvalidSpec("lattice dimension must be positive".into()));
                }
                let mut gens = Vec::new();
                for i in 0..*d {
                    for sign in [1i64, -1] {
                        let mut v = vec![0i64; *d];
                        v[i] = sign;
                        gens.push(GroupElement::Lattice(v));
                    }
                }
                gens
            }
            GroupKind::Heisenberg => vec![
                GroupElement::Heisenberg(1, 0, 0),
                GroupElement::Heisenberg(-1, 0, 0),
                GroupElement::Heisenberg(0, 1, 0),
                GroupElement::Heisenberg(0, -1, 0),
            ],
            GroupKind::InfiniteDihedral => vec![
                GroupElement::Word("a".into()),
                GroupElement::Word("b".into()),
            ],
            GroupKind::FreeGroup(r) => {
                if *r == 0 || *r > FREE_LETTERS.len() {
                    return Err(Error::InvalidSpec(format!(
                        "free group rank must be in 1..={}",
                        FREE_LETTERS.len()
                    )));
                }
                let mut gens = Vec::new();
                for letter in FREE_LETTERS.iter().take(*r) {
                    gens.push(GroupElement::Word(letter.to_string()));
                    gens.push(GroupElement::Word(letter.to_ascii_uppercase().to_string()));
                }
                gens
            }
        };
        Ok(GroupSpec { kind, generators })
    }

    /// Replaces the generating set; it must be symmetric and exclude the
    /// identity.
    pub fn with_generators(mut self, generators: Vec<GroupElement>) -> Result<Self> {
        let e = self.identity();
        for g in &generators {
            self.validate(g)?;
            if *g == e {
                return Err(Error::InvalidSpec("identity in generating set".into()));
            }
            let inv = self.inverse(g)?;
            if !generators.contains(&inv) {
                return Err(Error::InvalidSpec(format!(
                    "generating set not symmetric: missing inverse of {g}"
                )));
            }
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::IntLattice(d) => GroupElement::Lattice(vec![0; *d]),
            GroupKind::Heisenberg => GroupElement::Heisenberg(0, 0, 0),
            GroupKind::InfiniteDihedral | GroupKind::FreeGroup(_) => {
                GroupElement::Word(String::new())
            }
        }
    }

    pub fn validate(&self, x: &GroupElement) -> Result<()> {
        let fail = |detail: &str| Error::MalformedElement {
            kind: self.kind.name(),
            detail: detail.into(),
        };
        match (&self.kind, x) {
            (GroupKind::IntLattice(d), GroupElement::Lattice(v)) => {
                if v.len() != *d {
                    return Err(fail(&format!("expected {d} coordinates, got {}", v.len())));
                }
            }
            (GroupKind::Heisenberg, GroupElement::Heisenberg(_, _, _)) => {}
            (GroupKind::InfiniteDihedral, GroupElement::Word(w)) => {
                let bytes = w.as_bytes();
                for (i, &ch) in bytes.iter().enumerate() {
                    if ch != b'a' && ch != b'b' {
                        return Err(fail("dihedral words use letters a, b"));
                    }
                    if i > 0 && bytes[i - 1] == ch {
                        return Err(fail("word not reduced: repeated involution"));
                    }
                }
            }
            (GroupKind::FreeGroup(r), GroupElement::Word(w)) => {
                let alphabet = &FREE_LETTERS[..*r];
                let bytes = w.as_bytes();
                for (i, &ch) in bytes.iter().enumerate() {
                    let lower = ch.to_ascii_lowercase() as char;
                    if !alphabet.contains(&lower) {
                        return Err(fail("letter outside the free group alphabet"));
                    }
                    if i > 0 && bytes[i - 1] != ch && bytes[i - 1].eq_ignore_ascii_case(&ch) {
                        return Err(fail("word not reduced: adjacent inverse pair"));
                    }
                }
            }
            _ => return Err(fail("element encoding does not match the group kind")),
        }
        Ok(())
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(match (x, y) {
            (GroupElement::Lattice(a), GroupElement::Lattice(b)) => {
                GroupElement::Lattice(a.iter().zip(b).map(|(u, v)| u + v).collect())
            }
            // Matches the 3x3 upper-triangular matrix product:
            // X_{m,n,p} X_{m',n',p'} = X_{m+m', n+n', p+p'+m n'}.
            (GroupElement::Heisenberg(m, n, p), GroupElement::Heisenberg(m2, n2, p2)) => {
                GroupElement::Heisenberg(m + m2, n + n2, p + p2 + m * n2)
            }
            (GroupElement::Word(u), GroupElement::Word(v)) => {
                GroupElement::Word(self.reduce_word(u, v))
            }
            _ => unreachable!("validated above"),
        })
    }

    fn reduce_word(&self, left: &str, right: &str) -> String {
        let mut stack: Vec<u8> = left.bytes().collect();
        for ch in right.bytes() {
            let cancels = match stack.last() {
                Some(&top) => match self.kind {
                    GroupKind::InfiniteDihedral => top == ch,
                    _ => top != ch && top.eq_ignore_ascii_case(&ch),
                },
                None => false,
            };
            if cancels {
                stack.pop();
            } else {
                stack.push(ch);
            }
        }
        String::from_utf8(stack).expect("ascii word")
    }

    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement> {
        self.validate(x)?;
        Ok(match x {
            GroupElement::Lattice(v) => GroupElement::Lattice(v.iter().map(|a| -a).collect()),
            // Matches the 3x3 matrix inverse.
            GroupElement::Heisenberg(m, n, p) => GroupElement::Heisenberg(-m, -n, m * n - p),
            GroupElement::Word(w) => {
                let inv: String = w
                    .chars()
                    .rev()
                    .map(|ch| match self.kind {
                        GroupKind::InfiniteDihedral => ch,
                        _ => {
                            if ch.is_ascii_lowercase() {
                                ch.to_ascii_uppercase()
                            } else {
                                ch.to_ascii_lowercase()
                            }
                        }
                    })
                    .collect();
                GroupElement::Word(inv)
            }
        })
    }

    /// x^k by repeated multiplication (k may be negative).
    pub fn power(&self, x: &GroupElement, k: i64) -> Result<GroupElement> {
        let base = if k < 0 { self.inverse(x)? } else { x.clone() };
        let mut out = self.identity();
        for _ in 0..k.unsigned_abs() {
            out = self.multiply(&out, &base)?;
        }
        Ok(out)
    }
}

/// Group morphism into the ordered reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Morphism {
    /// g(x) = sum alpha_i x_i on Z^d.
    Lattice(Vec<f64>),
    /// g(X_{m,n,p}) = alpha m + beta n.
    Heisenberg { alpha: f64, beta: f64 },
}

impl Morphism {
    pub fn eval(&self, spec: &GroupSpec, x: &GroupElement) -> Result<f64> {
        spec.validate(x)?;
        match (self, x) {
            (Morphism::Lattice(coeffs), GroupElement::Lattice(v)) => {
                if coeffs.len() != v.len() {
                    return Err(Error::IncompatibleMorphism(spec.kind.name()));
                }
                Ok(coeffs.iter().zip(v).map(|(a, x)| a * *x as f64).sum())
            }
            (Morphism::Heisenberg { alpha, beta }, GroupElement::Heisenberg(m, n, _)) => {
                Ok(alpha * *m as f64 + beta * *n as f64)
            }
            _ => Err(Error::IncompatibleMorphism(spec.kind.name())),
        }
    }
}

/// Symmetric subset S of a group: e in S and S = S^{-1}, given by rule.
#[derive(Debug, Clone, PartialEq)]
pub enum SymmetricSet {
    /// The whole group.
    Full,
    /// Explicit element list (must contain e and be inverse-closed).
    Explicit(Vec<GroupElement>),
    /// Morphism strip |g(x)| < bound.
    Strip { morphism: Morphism, bound: f64 },
    /// Base rule with symmetric pairs {x, x^{-1}} removed.
    ExcludedPairs {
        base: Box<SymmetricSet>,
        excluded: Vec<GroupElement>,
    },
    /// The cross in Z^2: points (k, 0) for |k| <= m and (0, l) for |l| <= n.
    Cross { m: i64, n: i64 },
    /// Elements of word length <= n.
    LengthBall { n: u32 },
}

impl SymmetricSet {
    /// Membership test. Symmetric by construction for every rule.
    pub fn contains(&self, spec: &GroupSpec, x: &GroupElement) -> Result<bool> {
        spec.validate(x)?;
        match self {
            SymmetricSet::Full => Ok(true),
            SymmetricSet::Explicit(elems) => {
                Ok(elems.contains(x) || elems.contains(&spec.inverse(x)?))
            }
            SymmetricSet::Strip { morphism, bound } => {
                if *bound <= 0.0 {
                    return Err(Error::RuleMismatch("strip bound must be positive".into()));
                }
                Ok(morphism.eval(spec, x)?.abs() < *bound)
            }
            SymmetricSet::ExcludedPairs { base, excluded } => {
                let inv = spec.inverse(x)?;
                if excluded.contains(x) || excluded.contains(&inv) {
                    return Ok(false);
                }
                base.contains(spec, x)
            }
            SymmetricSet::Cross { m, n } => match x {
                GroupElement::Lattice(v) if v.len() == 2 => {
                    Ok((v[1] == 0 && v[0].abs() <= *m) || (v[0] == 0 && v[1].abs() <= *n))
                }
                _ => Err(Error::RuleMismatch("cross set requires Z^2".into())),
            },
            SymmetricSet::LengthBall { n } => {
                let caps = crate::caps::Caps {
                    radius: *n + 1,
                    ..Default::default()
                };
                match crate::cayley::word_length_capped(spec, x, &caps) {
                    Ok(len) => Ok(len <= *n),
                    Err(Error::WordLengthCapExceeded { .. }) => Ok(false),
                    Err(e) => Err(e),
                }
            }
        }
    }

    /// Validation: e must be a member (checked on the rule level).
    pub fn validate(&self, spec: &GroupSpec) -> Result<()> {
        if !self.contains(spec, &spec.identity())? {
            return Err(Error::RuleMismatch("identity not in the symmetric set".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON wire formats.
//
// GroupSpec: {"kind":"int_lattice","d":2}, {"kind":"heisenberg"},
// {"kind":"infinite_dihedral"}, {"kind":"free_group","rank":2}; optional
// "generators" overrides the default generating set.
// Elements: integer array for lattices, [m,n,p] for Heisenberg, strings for
// word groups.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GroupSpecWire {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<serde_json::Value>>,
}

pub fn spec_to_json(spec: &GroupSpec) -> serde_json::Value {
    let default = GroupSpec::new(spec.kind.clone()).expect("spec was constructed");
    let generators = if default.generators == spec.generators {
        None
    } else {
        Some(spec.generators.iter().map(element_to_json).collect())
    };
    let wire = match &spec.kind {
        GroupKind::IntLattice(d) => GroupSpecWire {
            kind: "int_lattice".into(),
            d: Some(*d),
            rank: None,
            generators,
        },
        GroupKind::Heisenberg => GroupSpecWire {
            kind: "heisenberg".into(),
            d: None,
            rank: None,
            generators,
        },
        GroupKind::InfiniteDihedral => GroupSpecWire {
            kind: "infinite_dihedral".into(),
            d: None,
            rank: None,
            generators,
        },
        GroupKind::FreeGroup(r) => GroupSpecWire {
            kind: "free_group".into(),
            d: None,
            rank: Some(*r),
            generators,
        },
    };
    serde_json::to_value(wire).expect("serializable")
}

pub fn spec_from_json(value: &serde_json::Value) -> Result<GroupSpec> {
    let wire: GroupSpecWire =
        serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
    let kind = match wire.kind.as_str() {
        "int_lattice" => GroupKind::IntLattice(
            wire.d
                .ok_or_else(|| Error::Json("int_lattice requires field d".into()))?,
        ),
        "heisenberg" => GroupKind::Heisenberg,
        "infinite_dihedral" => GroupKind::InfiniteDihedral,
        "free_group" => GroupKind::FreeGroup(
            wire.rank
                .ok_or_else(|| Error::Json("free_group requires field rank".into()))?,
        ),
        other => return Err(Error::Json(format!("unknown group kind {other}"))),
    };
    let spec = GroupSpec::new(kind)?;
    match wire.generators {
        Some(gens) => {
            let gens = gens
                .iter()
                .map(|g| element_from_json(&spec, g))
                .collect::<Result<Vec<_>>>()?;
            spec.with_generators(gens)
        }
        None => Ok(spec),
    }
}

pub fn element_to_json(x: &GroupElement) -> serde_json::Value {
    match x {
        GroupElement::Lattice(v) => serde_json::json!(v),
        GroupElement::Heisenberg(m, n, p) => serde_json::json!([m, n, p]),
        GroupElement::Word(w) => serde_json::json!(w),
    }
}

pub fn element_from_json(spec: &GroupSpec, value: &serde_json::Value) -> Result<GroupElement> {
    let elem = match (&spec.kind, value) {
        (GroupKind::IntLattice(_), serde_json::Value::Array(_)) => {
            let v: Vec<i64> =
                serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
            GroupElement::Lattice(v)
        }
        (GroupKind::Heisenberg, serde_json::Value::Array(_)) => {
            let v: Vec<i64> =
                serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
            if v.len() != 3 {
                return Err(Error::Json("heisenberg element is [m,n,p]".into()));
            }
            GroupElement::Heisenberg(v[0], v[1], v[2])
        }
        (_, serde_json::Value::String(w)) => GroupElement::Word(w.clone()),
        _ => return Err(Error::Json("element encoding does not match the group".into())),
    };
    spec.validate(&elem)?;
    Ok(elem)
}

/// Canonical string key for maps keyed by elements (the compact JSON text).
pub fn element_key(x: &GroupElement) -> String {
    element_to_json(x).to_string()
}

pub fn set_to_json(set: &SymmetricSet) -> serde_json::Value {
    match set {
        SymmetricSet::Full => serde_json::json!({"rule": "full"}),
        SymmetricSet::Explicit(elems) => serde_json::json!({
            "rule": "explicit",
            "elements": elems.iter().map(element_to_json).collect::<Vec<_>>(),
        }),
        SymmetricSet::Strip { morphism, bound } => serde_json::json!({
            "rule": "strip",
            "morphism": morphism,
            "bound": bound,
        }),
        SymmetricSet::ExcludedPairs { base, excluded } => serde_json::json!({
            "rule": "excluded_pairs",
            "base": set_to_json(base),
            "excluded": excluded.iter().map(element_to_json).collect::<Vec<_>>(),
        }),
        SymmetricSet::Cross { m, n } => serde_json::json!({"rule": "cross", "m": m, "n": n}),
        SymmetricSet::LengthBall { n } => serde_json::json!({"rule": "length_ball", "n": n}),
    }
}

pub fn set_from_json(spec: &GroupSpec, value: &serde_json::Value) -> Result<SymmetricSet> {
    let rule = value
        .get("rule")
        .and_then(|r| r.as_str())
        .ok_or_else(|| Error::Json("symmetric set requires a rule".into()))?;
    let set = match rule {
        "full" => SymmetricSet::Full,
        "explicit" => {
            let elems = value
                .get("elements")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::Json("explicit rule requires elements".into()))?;
            SymmetricSet::Explicit(
                elems
                    .iter()
                    .map(|e| element_from_json(spec, e))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        "strip" => {
            let morphism: Morphism = serde_json::from_value(
                value
                    .get("morphism")
                    .cloned()
                    .ok_or_else(|| Error::Json("strip requires a morphism".into()))?,
            )
            .map_err(|e| Error::Json(e.to_string()))?;
            let bound = value
                .get("bound")
                .and_then(|b| b.as_f64())
                .ok_or_else(|| Error::Json("strip requires a bound".into()))?;
            SymmetricSet::Strip { morphism, bound }
        }
        "excluded_pairs" => {
            let base = set_from_json(
                spec,
                value
                    .get("base")
                    .ok_or_else(|| Error::Json("excluded_pairs requires a base".into()))?,
            )?;
            let excluded = value
                .get("excluded")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::Json("excluded_pairs requires excluded".into()))?
                .iter()
                .map(|e| element_from_json(spec, e))
                .collect::<Result<Vec<_>>>()?;
            SymmetricSet::ExcludedPairs {
                base: Box::new(base),
                excluded,
            }
        }
        "cross" => SymmetricSet::Cross {
            m: value
                .get("m")
                .and_then(|v| v.as_i64())
                .ok_or_else(|| Error::Json("cross requires m".into()))?,
            n: value
                .get("n")
                .and_then(|v| v.as_i64())
                .ok_or_else(|| Error::Json("cross requires n".into()))?,
        },
        "length_ball" => SymmetricSet::LengthBall {
            n: value
                .get("n")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| Error::Json("length_ball requires n".into()))? as u32,
        },
        other => return Err(Error::Json(format!("unknown set rule {other}"))),
    };
    set.validate(spec)?;
    Ok(set)
}

/// Z^2 with the four unit generators.
pub fn z2() -> GroupSpec {
    GroupSpec::new(GroupKind::IntLattice(2)).expect("valid")
}

/// Z^2 with the eight king-move generators; word balls are square boxes.
pub fn z2_box() -> GroupSpec {
    let gens = [
        (1, 0),
        (-1, 0),
        (0, 1),
        (0, -1),
        (1, 1),
        (-1, -1),
        (1, -1),
        (-1, 1),
    ]
    .iter()
    .map(|&(x, y)| GroupElement::Lattice(vec![x, y]))
    .collect();
    z2().with_generators(gens).expect("valid")
}

pub fn lattice2(x: i64, y: i64) -> GroupElement {
    GroupElement::Lattice(vec![x, y])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    // 3x3 integer matrix oracle for Heisenberg arithmetic.
    fn heis_matrix(m: i64, n: i64, p: i64) -> [[i64; 3]; 3] {
        [[1, m, p], [0, 1, n], [0, 0, 1]]
    }

    fn mat_mul(a: [[i64; 3]; 3], b: [[i64; 3]; 3]) -> [[i64; 3]; 3] {
        let mut out = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    fn random_element(spec: &GroupSpec, rng: &mut impl Rng) -> GroupElement {
        match &spec.kind {
            GroupKind::IntLattice(d) => {
                GroupElement::Lattice((0..*d).map(|_| rng.gen_range(-20i64..=20)).collect())
            }
            GroupKind::Heisenberg => GroupElement::Heisenberg(
                rng.gen_range(-10..=10),
                rng.gen_range(-10..=10),
                rng.gen_range(-50..=50),
            ),
            _ => {
                let len = rng.gen_range(0..10);
                let mut word = spec.identity();
                for _ in 0..len {
                    let g = &spec.generators[rng.gen_range(0..spec.generators.len())];
                    word = spec.multiply(&word, g).unwrap();
                }
                word
            }
        }
    }

    fn all_specs() -> Vec<GroupSpec> {
        vec![
            GroupSpec::new(GroupKind::IntLattice(2)).unwrap(),
            GroupSpec::new(GroupKind::Heisenberg).unwrap(),
            GroupSpec::new(GroupKind::InfiniteDihedral).unwrap(),
            GroupSpec::new(GroupKind::FreeGroup(2)).unwrap(),
        ]
    }

    #[test]
    fn identities() {
        assert_eq!(z2().identity(), lattice2(0, 0));
        assert_eq!(
            GroupSpec::new(GroupKind::Heisenberg).unwrap().identity(),
            GroupElement::Heisenberg(0, 0, 0)
        );
        assert_eq!(
            GroupSpec::new(GroupKind::InfiniteDihedral).unwrap().identity(),
            GroupElement::Word(String::new())
        );
    }

    #[test]
    fn lattice_componentwise() {
        let spec = z2();
        assert_eq!(
            spec.multiply(&lattice2(1, 0), &lattice2(0, 1)).unwrap(),
            lattice2(1, 1)
        );
        assert_eq!(spec.inverse(&lattice2(2, -1)).unwrap(), lattice2(-2, 1));
    }

    #[test]
    fn heisenberg_matches_matrix_oracle() {
        let spec = GroupSpec::new(GroupKind::Heisenberg).unwrap();
        // The spec example: (1,0,0) * (0,1,0) = (1,1,1), oracle-checked.
        let prod = spec
            .multiply(
                &GroupElement::Heisenberg(1, 0, 0),
                &GroupElement::Heisenberg(0, 1, 0),
            )
            .unwrap();
        assert_eq!(prod, GroupElement::Heisenberg(1, 1, 1));
        let oracle = mat_mul(heis_matrix(1, 0, 0), heis_matrix(0, 1, 0));
        assert_eq!(oracle, heis_matrix(1, 1, 1));

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = random_element(&spec, &mut rng);
            let y = random_element(&spec, &mut rng);
            let (GroupElement::Heisenberg(m1, n1, p1), GroupElement::Heisenberg(m2, n2, p2)) =
                (&x, &y)
            else {
                unreachable!()
            };
            let got = spec.multiply(&x, &y).unwrap();
            let want = mat_mul(heis_matrix(*m1, *n1, *p1), heis_matrix(*m2, *n2, *p2));
            assert_eq!(got, GroupElement::Heisenberg(want[0][1], want[1][2], want[0][2]));
        }
    }

    #[test]
    fn heisenberg_inverse_formula() {
        // (m,n,p)^{-1} = (-m,-n,mn-p), oracle: product equals identity.
        let spec = GroupSpec::new(GroupKind::Heisenberg).unwrap();
        let x = GroupElement::Heisenberg(3, -2, 7);
        let inv = spec.inverse(&x).unwrap();
        assert_eq!(inv, GroupElement::Heisenberg(-3, 2, -6 - 7));
        assert_eq!(spec.multiply(&x, &inv).unwrap(), spec.identity());
    }

    #[test]
    fn dihedral_reduction() {
        let spec = GroupSpec::new(GroupKind::InfiniteDihedral).unwrap();
        let ab = GroupElement::Word("ab".into());
        let ba = GroupElement::Word("ba".into());
        assert_eq!(spec.multiply(&ab, &ba).unwrap(), spec.identity());
        assert!(spec.validate(&GroupElement::Word("aa".into())).is_err());
    }

    #[test]
    fn free_group_inverse_is_reversed_swapped() {
        let spec = GroupSpec::new(GroupKind::FreeGroup(2)).unwrap();
        let xy = GroupElement::Word("xy".into());
        assert_eq!(spec.inverse(&xy).unwrap(), GroupElement::Word("YX".into()));
    }

    #[test]
    fn group_laws_on_random_samples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for spec in all_specs() {
            for _ in 0..1000 {
                let x = random_element(&spec, &mut rng);
                let y = random_element(&spec, &mut rng);
                let z = random_element(&spec, &mut rng);
                let left = spec
                    .multiply(&spec.multiply(&x, &y).unwrap(), &z)
                    .unwrap();
                let right = spec
                    .multiply(&x, &spec.multiply(&y, &z).unwrap())
                    .unwrap();
                assert_eq!(left, right, "associativity in {}", spec.kind.name());
                let e = spec.identity();
                assert_eq!(spec.multiply(&x, &e).unwrap(), x);
                assert_eq!(spec.multiply(&e, &x).unwrap(), x);
                let inv = spec.inverse(&x).unwrap();
                assert_eq!(spec.multiply(&x, &inv).unwrap(), e);
                assert_eq!(spec.multiply(&inv, &x).unwrap(), e);
            }
        }
    }

    #[test]
    fn morphism_values() {
        let spec = z2();
        let m = Morphism::Lattice(vec![1.0, 1.0]);
        assert_eq!(m.eval(&spec, &lattice2(2, -1)).unwrap(), 1.0);
        assert_eq!(m.eval(&spec, &spec.identity()).unwrap(), 0.0);

        let h = GroupSpec::new(GroupKind::Heisenberg).unwrap();
        let g = Morphism::Heisenberg { alpha: 1.0, beta: 2.0 };
        assert_eq!(g.eval(&h, &GroupElement::Heisenberg(1, 1, 5)).unwrap(), 3.0);
        assert!(g.eval(&spec, &lattice2(0, 0)).is_err());
    }

    #[test]
    fn morphism_additive_on_random_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let spec = z2();
        let m = Morphism::Lattice(vec![3.0, -2.0]);
        let h = GroupSpec::new(GroupKind::Heisenberg).unwrap();
        let g = Morphism::Heisenberg { alpha: 2.0, beta: 5.0 };
        for _ in 0..500 {
            let x = random_element(&spec, &mut rng);
            let y = random_element(&spec, &mut rng);
            let xy = spec.multiply(&x, &y).unwrap();
            assert_eq!(
                m.eval(&spec, &xy).unwrap(),
                m.eval(&spec, &x).unwrap() + m.eval(&spec, &y).unwrap()
            );
            let u = random_element(&h, &mut rng);
            let v = random_element(&h, &mut rng);
            let uv = h.multiply(&u, &v).unwrap();
            assert_eq!(
                g.eval(&h, &uv).unwrap(),
                g.eval(&h, &u).unwrap() + g.eval(&h, &v).unwrap()
            );
        }
    }

    #[test]
    fn strip_and_excluded_membership() {
        let spec = z2();
        let strip = SymmetricSet::Strip {
            morphism: Morphism::Lattice(vec![1.0, 1.0]),
            bound: 2.0,
        };
        assert!(strip.contains(&spec, &lattice2(1, 0)).unwrap());
        assert!(!strip.contains(&spec, &lattice2(2, 1)).unwrap());

        let s = SymmetricSet::ExcludedPairs {
            base: Box::new(SymmetricSet::Full),
            excluded: vec![lattice2(1, 1)],
        };
        assert!(!s.contains(&spec, &lattice2(1, 1)).unwrap());
        assert!(!s.contains(&spec, &lattice2(-1, -1)).unwrap());
        assert!(s.contains(&spec, &lattice2(1, -1)).unwrap());
        assert!(s.contains(&spec, &spec.identity()).unwrap());
    }

    #[test]
    fn set_symmetry_on_random_window_elements() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let spec = z2();
        let sets = vec![
            SymmetricSet::Strip {
                morphism: Morphism::Lattice(vec![1.0, 2.0]),
                bound: 3.0,
            },
            SymmetricSet::ExcludedPairs {
                base: Box::new(SymmetricSet::Full),
                excluded: vec![lattice2(1, 1)],
            },
            SymmetricSet::Cross { m: 2, n: 3 },
            SymmetricSet::Explicit(vec![
                spec.identity(),
                lattice2(1, 0),
                lattice2(-1, 0),
                lattice2(2, 1),
                lattice2(-2, -1),
            ]),
        ];
        for set in &sets {
            for _ in 0..1000 {
                let x = GroupElement::Lattice(vec![
                    rng.gen_range(-5i64..=5),
                    rng.gen_range(-5i64..=5),
                ]);
                let inv = spec.inverse(&x).unwrap();
                assert_eq!(
                    set.contains(&spec, &x).unwrap(),
                    set.contains(&spec, &inv).unwrap()
                );
            }
        }
    }

    #[test]
    fn json_round_trips() {
        let spec = GroupSpec::new(GroupKind::FreeGroup(2)).unwrap();
        let value = spec_to_json(&spec);
        assert_eq!(value["kind"], "free_group");
        assert_eq!(spec_from_json(&value).unwrap(), spec);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for spec in all_specs() {
            for _ in 0..100 {
                let x = random_element(&spec, &mut rng);
                let j = element_to_json(&x);
                assert_eq!(element_from_json(&spec, &j).unwrap(), x);
            }
        }

        let set = SymmetricSet::Cross { m: 2, n: 2 };
        let j = set_to_json(&set);
        assert_eq!(set_from_json(&z2(), &j).unwrap(), set);
    }
}
