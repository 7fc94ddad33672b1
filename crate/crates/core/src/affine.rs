//! Affine extensions of the base Cartan matrices.
//!
//! An extension adds an affine root `α_0` at index 0. Each [`Family`] pins the
//! simple root(s) `α_0` is paired with; the pair `(x, y) = (A_0j, A_j0)` must
//! satisfy `xy = c` for the determinant to vanish.
//!
//! Lengths follow the column-normalised reading `A_ij = 2(α_i,α_j)/(α_j,α_j)`
//! with unit base roots, so `|α_0|² = x/y` and `A·D` is the doubled Gram form
//! whenever `D = diag(x/y, 1, …, 1)`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{cartan_matrix, CartanMatrix, GroupId};
use crate::error::{Error, Result};
use crate::goldring::{GMatrix, GoldenRational, Rational};

type G = GoldenRational;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Extension families: the axis (H3), the direction (H2) or the paired
/// simple root (H4) of the affine root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "h3-2fold")]
    H3TwoFold,
    #[serde(rename = "h3-3fold")]
    H3ThreeFold,
    #[serde(rename = "h3-5fold")]
    H3FiveFold,
    #[serde(rename = "h2-highest")]
    H2Highest,
    #[serde(rename = "h2-bisector")]
    H2Bisector,
    #[serde(rename = "h4-a1")]
    H4A1,
    #[serde(rename = "h4-a2")]
    H4A2,
    #[serde(rename = "h4-a3")]
    H4A3,
    #[serde(rename = "h4-a4")]
    H4A4,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::H3TwoFold,
        Family::H3ThreeFold,
        Family::H3FiveFold,
        Family::H2Highest,
        Family::H2Bisector,
        Family::H4A1,
        Family::H4A2,
        Family::H4A3,
        Family::H4A4,
    ];

    pub fn group(self) -> GroupId {
        match self {
            Family::H3TwoFold | Family::H3ThreeFold | Family::H3FiveFold => GroupId::H3,
            Family::H2Highest | Family::H2Bisector => GroupId::H2,
            _ => GroupId::H4,
        }
    }

    /// Base indices `j` (counted from 1) with `A_0j = x`, `A_j0 = y`.
    pub fn slots(self) -> &'static [usize] {
        match self {
            Family::H3TwoFold => &[2],
            Family::H3ThreeFold => &[3],
            Family::H3FiveFold => &[1],
            Family::H2Highest => &[1, 2],
            Family::H2Bisector => &[1],
            Family::H4A1 => &[1],
            Family::H4A2 => &[2],
            Family::H4A3 => &[3],
            Family::H4A4 => &[4],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::H3TwoFold => "h3-2fold",
            Family::H3ThreeFold => "h3-3fold",
            Family::H3FiveFold => "h3-5fold",
            Family::H2Highest => "h2-highest",
            Family::H2Bisector => "h2-bisector",
            Family::H4A1 => "h4-a1",
            Family::H4A2 => "h4-a2",
            Family::H4A3 => "h4-a3",
            Family::H4A4 => "h4-a4",
        }
    }

    /// `|T|²` of the reference vector lengths are quoted against: the H3
    /// axes `T_2, T_3, T_5`, the H2 highest root, the H2 vector `2w` on the
    /// bisector, and unit length for H4.
    pub fn axis_norm(self) -> G {
        match self {
            Family::H3ThreeFold => G::int(3, 0),
            Family::H3FiveFold => G::int(2, 1),
            Family::H2Bisector => G::int(3, -1),
            _ => G::one(),
        }
    }

    /// Quadruplet and `γδ` used when only `γ` is given.
    pub fn default_base(self) -> ((i64, i64, i64, i64), Rational) {
        match self {
            Family::H3TwoFold | Family::H2Highest | Family::H4A1 => ((1, -1, 1, -1), rat(1, 1)),
            Family::H3ThreeFold => ((1, -1, 1, -1), rat(4, 3)),
            Family::H3FiveFold => ((-1, 0, -3, 1), rat(4, 5)),
            Family::H2Bisector => ((-3, 1, -1, 0), rat(1, 1)),
            Family::H4A2 => ((-1, 0, -7, 4), rat(1, 5)),
            Family::H4A3 => ((-2, 1, -2, 1), rat(1, 3)),
            Family::H4A4 => ((-2, 1, -2, 1), rat(1, 2)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family `{s}`")))
    }
}

/// Parses an axis name for the given group, e.g. `2fold` for H3 or
/// `bisector` for H2. Full family names are accepted too.
pub fn family_for_axis(group: GroupId, axis: &str) -> Result<Family> {
    if let Ok(f) = axis.parse::<Family>() {
        return check_group(f, group);
    }
    let f = match (group, axis.to_ascii_lowercase().as_str()) {
        (GroupId::H3, "2fold" | "2") => Family::H3TwoFold,
        (GroupId::H3, "3fold" | "3") => Family::H3ThreeFold,
        (GroupId::H3, "5fold" | "5") => Family::H3FiveFold,
        (GroupId::H2, "highest") => Family::H2Highest,
        (GroupId::H2, "bisector") => Family::H2Bisector,
        (GroupId::H4, "a1" | "1") => Family::H4A1,
        (GroupId::H4, "a2" | "2") => Family::H4A2,
        (GroupId::H4, "a3" | "3") => Family::H4A3,
        (GroupId::H4, "a4" | "4") => Family::H4A4,
        (g, other) => {
            return Err(Error::FamilyMismatch {
                family: other.to_string(),
                group: g.to_string(),
            })
        }
    };
    Ok(f)
}

fn check_group(f: Family, group: GroupId) -> Result<Family> {
    if f.group() == group {
        Ok(f)
    } else {
        Err(Error::FamilyMismatch {
            family: f.to_string(),
            group: group.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub group: GroupId,
    pub family: Family,
    pub x: G,
    pub y: G,
}

impl ExtensionSpec {
    pub fn new(family: Family, x: G, y: G) -> Self {
        ExtensionSpec {
            group: family.group(),
            family,
            x,
            y,
        }
    }

    /// Both entries negative in the primary embedding.
    pub fn is_admissible(&self) -> bool {
        self.x.is_negative() && self.y.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedCartan {
    pub base: CartanMatrix,
    pub spec: ExtensionSpec,
    pub entries: GMatrix,
}

impl ExtendedCartan {
    pub fn det(&self) -> G {
        self.entries.det().expect("square")
    }
}

pub fn extend(spec: &ExtensionSpec) -> Result<ExtendedCartan> {
    check_group(spec.family, spec.group)?;
    let base = cartan_matrix(spec.group);
    let n = spec.group.rank() + 1;
    let mut m = GMatrix::zeros(n, n);
    m[(0, 0)] = G::int(2, 0);
    for i in 1..n {
        for j in 1..n {
            m[(i, j)] = base.entries[(i - 1, j - 1)].clone();
        }
    }
    for &j in spec.family.slots() {
        m[(0, j)] = spec.x.clone();
        m[(j, 0)] = spec.y.clone();
    }
    Ok(ExtendedCartan {
        base,
        spec: spec.clone(),
        entries: m,
    })
}

/// The `c` with `det(extend(x, y)) = 0 ⇔ xy = c`.
pub fn constraint_constant(family: Family) -> G {
    match family {
        Family::H3TwoFold | Family::H2Highest | Family::H4A1 => G::int(2, -1),
        Family::H3ThreeFold => G::frac(8, 3, -4, 3),
        Family::H3FiveFold => G::frac(12, 5, -4, 5),
        Family::H2Bisector => G::int(3, -1),
        Family::H4A2 => G::frac(7, 5, -4, 5),
        Family::H4A3 => G::frac(5, 3, -1, 1),
        Family::H4A4 => G::frac(5, 2, -3, 2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    /// `A_i0/A_0i` for every index with a nonzero pair in row/column 0.
    pub ratios: Vec<(usize, G)>,
    pub lemma_holds: bool,
    /// Some pair has `A_0k = A_k0`.
    pub corollary_triggered: bool,
    /// The corollary's demand that the matrix then be symmetric is met (or
    /// it was not triggered).
    pub corollary_holds: bool,
    /// `A_ij A_ji ≤ 4` for all pairs.
    pub angle_bound_holds: bool,
    pub witness: Option<String>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.lemma_holds && self.corollary_holds && self.angle_bound_holds
    }
}

pub fn consistency_check(m: &GMatrix) -> Result<ConsistencyReport> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::Shape("consistency check needs a square matrix".into()));
    }
    let n = m.rows();
    let mut ratios = Vec::new();
    let mut witness = None;
    for i in 1..n {
        let (top, side) = (&m[(0, i)], &m[(i, 0)]);
        if top.is_zero() && side.is_zero() {
            continue;
        }
        match side.checked_div(top) {
            Ok(r) => ratios.push((i, r)),
            Err(_) => {
                witness.get_or_insert_with(|| format!("A[0][{i}] = 0 but A[{i}][0] = {side}"));
            }
        }
    }
    let lemma_holds = witness.is_none() && ratios.windows(2).all(|w| w[0].1 == w[1].1);
    if witness.is_none() {
        if let Some(w) = ratios.windows(2).find(|w| w[0].1 != w[1].1) {
            witness = Some(format!(
                "A[{i}][0]/A[0][{i}] = {} but A[{k}][0]/A[0][{k}] = {}",
                w[0].1,
                w[1].1,
                i = w[0].0,
                k = w[1].0
            ));
        }
    }
    let corollary_triggered = (1..n).any(|k| !m[(0, k)].is_zero() && m[(0, k)] == m[(k, 0)]);
    let corollary_holds = !corollary_triggered || m.is_symmetric();
    if !corollary_holds && witness.is_none() {
        witness = Some("a pair with A_0k = A_k0 forces a symmetric matrix".into());
    }
    let four = G::int(4, 0);
    let mut angle_bound_holds = true;
    for i in 0..n {
        for j in i + 1..n {
            let p = &m[(i, j)] * &m[(j, i)];
            if (&four - &p).is_negative() {
                angle_bound_holds = false;
                witness.get_or_insert_with(|| format!("A[{i}][{j}]A[{j}][{i}] = {p} > 4"));
            }
        }
    }
    Ok(ConsistencyReport {
        ratios,
        lemma_holds,
        corollary_triggered,
        corollary_holds,
        angle_bound_holds,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootGeometry {
    pub length_sq: G,
    pub cos_sq: G,
}

/// Length² of `α_0` and cos² of its angle with the paired root.
pub fn root_geometry(x: &G, y: &G) -> Result<RootGeometry> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(RootGeometry {
        length_sq: x.checked_div(y)?,
        cos_sq: (x * y).scale(&rat(1, 4)),
    })
}

/// `x = γ(a+bτ)`, `y = δ(c+dτ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quadruplet {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    #[serde(with = "ratio_text")]
    pub gamma: Rational,
    #[serde(with = "ratio_text")]
    pub delta: Rational,
}

mod ratio_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::goldring::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

impl Quadruplet {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quadruplet {
            a,
            b,
            c,
            d,
            gamma: Rational::one(),
            delta: Rational::one(),
        }
    }

    pub fn with_multipliers(mut self, gamma: Rational, delta: Rational) -> Self {
        self.gamma = gamma;
        self.delta = delta;
        self
    }

    pub fn coeffs(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    /// `a + bτ`.
    pub fn left(&self) -> G {
        G::int(self.a, self.b)
    }

    /// `c + dτ`.
    pub fn right(&self) -> G {
        G::int(self.c, self.d)
    }

    pub fn x(&self) -> G {
        self.left().scale(&self.gamma)
    }

    pub fn y(&self) -> G {
        self.right().scale(&self.delta)
    }

    pub fn product(&self) -> G {
        self.x() * self.y()
    }

    pub fn abs_sum(&self) -> i64 {
        self.a.abs() + self.b.abs() + self.c.abs() + self.d.abs()
    }

    pub fn swap(&self) -> Self {
        Quadruplet {
            a: self.c,
            b: self.d,
            c: self.a,
            d: self.b,
            gamma: self.delta.clone(),
            delta: self.gamma.clone(),
        }
    }

    pub fn spec(&self, family: Family) -> ExtensionSpec {
        ExtensionSpec::new(family, self.x(), self.y())
    }
}

impl fmt::Display for Quadruplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)?;
        if !self.gamma.is_one() || !self.delta.is_one() {
            write!(f, " gamma={} delta={}", self.gamma, self.delta)?;
        }
        Ok(())
    }
}

pub fn swap(q: &Quadruplet) -> Quadruplet {
    q.swap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `x → τx`, `y → τ⁻¹y`.
    Forward,
    /// `x → τ⁻¹x`, `y → τy`.
    Backward,
}

pub fn fib_step(q: &Quadruplet, direction: Direction) -> Quadruplet {
    let (a, b, c, d) = q.coeffs();
    let (a, b, c, d) = match direction {
        Direction::Forward => (b, a + b, d - c, c),
        Direction::Backward => (b - a, a, d, c + d),
    };
    Quadruplet {
        a,
        b,
        c,
        d,
        gamma: q.gamma.clone(),
        delta: q.delta.clone(),
    }
}

/// One τ-orbit of solutions found by [`solve_constraint`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionOrbit {
    /// Member with the smallest `|a|+|b|+|c|+|d|`, ties broken
    /// lexicographically.
    pub base: Quadruplet,
    /// Member whose left (or, failing that, right) factor is `−1`, when the
    /// orbit has one.
    pub unit_base: Option<Quadruplet>,
    /// All members within the search bound, sorted.
    pub members: Vec<Quadruplet>,
}

impl SolutionOrbit {
    pub fn contains(&self, q: &Quadruplet) -> bool {
        self.members.iter().any(|m| m.coeffs() == q.coeffs())
    }
}

pub const DEFAULT_BOUND: i64 = 12;

fn to_i64_parts(v: &G) -> Option<(i64, i64)> {
    use num_traits::ToPrimitive;
    if !v.is_zt_integer() {
        return None;
    }
    Some((v.a().to_integer().to_i64()?, v.b().to_integer().to_i64()?))
}

/// All `(a,b;c,d)` with entries bounded by `bound`, both factors negative
/// and `γδ(a+bτ)(c+dτ) = target`, grouped into τ-orbits.
pub fn solve_constraint(target: &G, gamma: &Rational, delta: &Rational, bound: i64) -> Result<Vec<SolutionOrbit>> {
    if bound < 1 {
        return Err(Error::Invalid("search bound must be at least 1".into()));
    }
    let gd = gamma * delta;
    if gd.is_zero() {
        return Err(Error::Invalid("gamma and delta must be nonzero".into()));
    }
    let t = target.scale(&gd.recip());
    let (p, q) = to_i64_parts(&t)
        .ok_or_else(|| Error::Invalid(format!("target {target} is not gamma*delta times an element of Z[tau]")))?;

    let mut sols = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if let Some((c, d)) = cofactor(p, q, a, b) {
                if c.abs() <= bound && d.abs() <= bound {
                    sols.push(Quadruplet::new(a, b, c, d).with_multipliers(gamma.clone(), delta.clone()));
                }
            }
        }
    }
    Ok(group_orbits(sols, p, q, gamma, delta))
}

/// The `(c, d)` with `(a+bτ)(c+dτ) = p+qτ` and both factors negative.
fn cofactor(p: i64, q: i64, a: i64, b: i64) -> Option<(i64, i64)> {
    let x = crate::Golden::<i64>::int(a, b);
    if !x.is_negative() {
        return None;
    }
    // (p+qτ)·conj(a+bτ) / N(a+bτ)
    let n = a * a + a * b - b * b;
    let num_a = p * (a + b) - q * b;
    let num_b = q * a - p * b;
    if num_a % n != 0 || num_b % n != 0 {
        return None;
    }
    let (c, d) = (num_a / n, num_b / n);
    crate::Golden::<i64>::int(c, d).is_negative().then_some((c, d))
}

fn same_orbit(u: &Quadruplet, v: &Quadruplet) -> bool {
    v.left().checked_div(&u.left()).map(|r| r.is_unit()).unwrap_or(false)
}

fn group_orbits(sols: Vec<Quadruplet>, p: i64, q: i64, gamma: &Rational, delta: &Rational) -> Vec<SolutionOrbit> {
    let mut classes: Vec<Vec<Quadruplet>> = Vec::new();
    for s in sols {
        match classes.iter_mut().find(|c| same_orbit(&c[0], &s)) {
            Some(c) => c.push(s),
            None => classes.push(vec![s]),
        }
    }
    let mut out: Vec<SolutionOrbit> = classes
        .into_iter()
        .map(|mut members| {
            members.sort();
            let base = members
                .iter()
                .min_by(|u, v| u.abs_sum().cmp(&v.abs_sum()).then_with(|| u.cmp(v)))
                .cloned()
                .expect("nonempty class");
            let unit_base = unit_representative(&base, p, q).map(|m| m.with_multipliers(gamma.clone(), delta.clone()));
            SolutionOrbit {
                base,
                unit_base,
                members,
            }
        })
        .collect();
    out.sort_by(|u, v| u.base.cmp(&v.base));
    out
}

fn unit_representative(member: &Quadruplet, p: i64, q: i64) -> Option<Quadruplet> {
    let t = G::int(p, q);
    if member.left().is_unit() {
        let (c, d) = to_i64_parts(&-t)?;
        Some(Quadruplet::new(-1, 0, c, d))
    } else if member.right().is_unit() {
        let (a, b) = to_i64_parts(&-t)?;
        Some(Quadruplet::new(a, b, -1, 0))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub k: i64,
    pub quadruplet: Quadruplet,
    pub x: G,
    pub y: G,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibonacciFamily {
    pub base: Quadruplet,
    pub k_range: (i64, i64),
    pub members: Vec<FamilyMember>,
}

/// Quadruplet with `x → τ^{-k}x`, `y → τ^k y`.
pub fn rescale(base: &Quadruplet, k: i64) -> Quadruplet {
    let dir = if k > 0 { Direction::Backward } else { Direction::Forward };
    (0..k.unsigned_abs()).fold(base.clone(), |q, _| fib_step(&q, dir))
}

pub fn family(base: &Quadruplet, k_range: RangeInclusive<i64>) -> FibonacciFamily {
    let members = k_range
        .clone()
        .map(|k| {
            let q = rescale(base, k);
            FamilyMember {
                k,
                x: q.x(),
                y: q.y(),
                quadruplet: q,
            }
        })
        .collect();
    FibonacciFamily {
        base: base.clone(),
        k_range: (*k_range.start(), *k_range.end()),
        members,
    }
}

/// `|α_0| = ρ · τ^k · (√5 if sqrt5) · |T|` for the family's reference
/// vector `T`; with `sqrt5` false, `α_0 = ρτ^k T` exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthDecomposition {
    #[serde(serialize_with = "ratio_text::serialize")]
    pub rho: Rational,
    pub k: i64,
    pub sqrt5: bool,
    pub axis_norm: G,
}

impl LengthDecomposition {
    /// The multiplier of `T`, when it lies in `Q[τ]`.
    pub fn multiplier(&self) -> G {
        let m = G::tau_pow(self.k).scale(&self.rho);
        if self.sqrt5 {
            m * G::sqrt5()
        } else {
            m
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthClass {
    pub length_sq: G,
    pub decomposition: Option<LengthDecomposition>,
    pub satisfies_constraint: bool,
}

const MAX_TAU_EXPONENT: i64 = 64;

/// Splits `|α_0|²` into a rational square, an even power of τ, an optional
/// factor 5 and the axis norm.
pub fn classify_length(q: &Quadruplet, family: Family) -> Result<LengthClass> {
    let length_sq = root_geometry(&q.x(), &q.y())?.length_sq;
    let relative = length_sq.checked_div(&family.axis_norm())?;
    let decomposition = decompose(&relative).map(|(rho, k, sqrt5)| LengthDecomposition {
        rho,
        k,
        sqrt5,
        axis_norm: family.axis_norm(),
    });
    Ok(LengthClass {
        satisfies_constraint: q.product() == constraint_constant(family),
        length_sq,
        decomposition,
    })
}

fn decompose(l: &G) -> Option<(Rational, i64, bool)> {
    if !l.is_positive() {
        return None;
    }
    let five = rat(5, 1);
    (-MAX_TAU_EXPONENT..=MAX_TAU_EXPONENT).find_map(|k| {
        let r = l * &G::tau_pow(-2 * k);
        if !r.is_rational() {
            return None;
        }
        let r = r.a().clone();
        if let Some(rho) = crate::goldring::ratio_sqrt(&r) {
            return Some((rho, k, false));
        }
        crate::goldring::ratio_sqrt(&(&r / &five)).map(|rho| (rho, k, true))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Symmetrization {
    pub d: Vec<G>,
    pub s: GMatrix,
    pub leading_minors: Vec<G>,
    pub positive_semidefinite: bool,
    pub det: G,
}

/// `S = A·D` with `D` positive diagonal, `d = 1` on the component of
/// index 1 (the base roots).
pub fn symmetrize(a: &GMatrix) -> Result<Symmetrization> {
    if !a.is_square() {
        return Err(Error::Shape("symmetrisation needs a square matrix".into()));
    }
    let n = a.rows();
    let start = if n > 1 { 1 } else { 0 };
    let mut d: Vec<Option<G>> = vec![None; n];
    let mut order = vec![start];
    d[start] = Some(G::one());
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for j in 0..n {
            if i == j || d[j].is_some() {
                continue;
            }
            let (aij, aji) = (&a[(i, j)], &a[(j, i)]);
            if aij.is_zero() && aji.is_zero() {
                continue;
            }
            if aij.is_zero() || aji.is_zero() {
                return Err(Error::NotSymmetrisable(format!(
                    "A[{i}][{j}] and A[{j}][{i}] differ in zero pattern"
                )));
            }
            // A_ij d_j = A_ji d_i
            let dj = d[i].as_ref().unwrap() * &aji.checked_div(aij)?;
            d[j] = Some(dj);
            order.push(j);
        }
        if head == order.len() {
            if let Some(j) = d.iter().position(Option::is_none) {
                d[j] = Some(G::one());
                order.push(j);
            }
        }
    }
    let d: Vec<G> = d.into_iter().map(Option::unwrap).collect();
    if let Some(i) = d.iter().position(|v| !v.is_positive()) {
        return Err(Error::NotSymmetrisable(format!("d[{i}] = {} is not positive", d[i])));
    }
    let s = a.mat_mul(&GMatrix::diagonal(&d))?;
    if !s.is_symmetric() {
        return Err(Error::NotSymmetrisable("ratios are inconsistent around a cycle".into()));
    }
    let leading_minors: Vec<G> = (1..=n)
        .map(|k| {
            let idx: Vec<usize> = (0..k).collect();
            s.select(&idx, &idx).det().expect("square")
        })
        .collect();
    let positive_semidefinite = principal_minors_nonnegative(&s);
    let det = leading_minors.last().cloned().unwrap_or_else(G::one);
    Ok(Symmetrization {
        d,
        s,
        leading_minors,
        positive_semidefinite,
        det,
    })
}

/// Every principal minor is `≥ 0`, which characterises PSD symmetric
/// matrices.
pub fn principal_minors_nonnegative(s: &GMatrix) -> bool {
    let n = s.rows();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        !s.select(&idx, &idx).det().expect("square").is_negative()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerRoot {
    /// `x` itself when `x² = c` has a root in `Q[τ]`.
    pub x: Option<G>,
    pub x_sq: G,
    pub in_field: bool,
}

/// The negative `x` for which `S = A·D` has corner entry 2, i.e. `x = y`.
pub fn coxeter_corner_root(family: Family) -> CornerRoot {
    let x_sq = constraint_constant(family);
    let x = x_sq.sqrt().map(|r| -r);
    CornerRoot {
        in_field: x.is_some(),
        x,
        x_sq,
    }
}

/// A distinguished `(γ, δ)` series and its k-range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Series {
    pub family: Family,
    pub label: &'static str,
    pub base: Quadruplet,
    pub k_range: (i64, i64),
}

/// Named parameter sets whose lengths reproduce the known translation lists.
pub fn distinguished_series() -> Vec<Series> {
    let s = |family, label, (a, b, c, d), g: Rational, gd: Rational, k_range| Series {
        family,
        label,
        base: Quadruplet::new(a, b, c, d).with_multipliers(g.clone(), gd / g),
        k_range,
    };
    vec![
        s(
            Family::H3TwoFold,
            "gamma=1",
            (1, -1, 1, -1),
            rat(1, 1),
            rat(1, 1),
            (-2, 2),
        ),
        s(
            Family::H3TwoFold,
            "gamma=1/2",
            (1, -1, 1, -1),
            rat(1, 2),
            rat(1, 1),
            (-3, 3),
        ),
        s(
            Family::H3TwoFold,
            "gamma=3/2",
            (1, -1, 1, -1),
            rat(3, 2),
            rat(1, 1),
            (-1, 1),
        ),
        s(
            Family::H3ThreeFold,
            "gamma=1/3",
            (1, -1, 1, -1),
            rat(1, 3),
            rat(4, 3),
            (-2, 2),
        ),
        s(
            Family::H3ThreeFold,
            "gamma=1",
            (1, -1, 1, -1),
            rat(1, 1),
            rat(4, 3),
            (-2, 2),
        ),
        s(
            Family::H3ThreeFold,
            "gamma=4/3",
            (1, -1, 1, -1),
            rat(4, 3),
            rat(4, 3),
            (-2, 2),
        ),
        s(
            Family::H3FiveFold,
            "second series gamma=1",
            (-1, 0, -3, 1),
            rat(1, 1),
            rat(4, 5),
            (-2, 1),
        ),
        s(
            Family::H3FiveFold,
            "second series gamma=2",
            (-1, 0, -3, 1),
            rat(2, 1),
            rat(4, 5),
            (-1, 0),
        ),
        s(
            Family::H3FiveFold,
            "first series gamma=1",
            (-3, 1, -1, 0),
            rat(1, 1),
            rat(4, 5),
            (-2, 2),
        ),
    ]
}

/// Quadruplet for `family` from `γ` alone, using [`Family::default_base`].
pub fn quadruplet_for_gamma(family: Family, gamma: &Rational) -> Result<Quadruplet> {
    if gamma.is_zero() {
        return Err(Error::Invalid("gamma must be nonzero".into()));
    }
    let ((a, b, c, d), gd) = family.default_base();
    Ok(Quadruplet::new(a, b, c, d).with_multipliers(gamma.clone(), gd / gamma))
}

/// Distinct multipliers of `T` over a family, in increasing order.
pub fn length_multipliers(fam: &FibonacciFamily, family: Family) -> Result<Vec<G>> {
    let mut out = Vec::new();
    for m in &fam.members {
        if let Some(dec) = classify_length(&m.quadruplet, family)?.decomposition {
            out.push(dec.multiplier());
        }
    }
    out.sort_by(|u, v| u.cmp_value(v));
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quadruplet {
        Quadruplet::new(a, b, c, d)
    }

    #[test]
    fn constants_match_determinants() {
        for fam in Family::ALL {
            let (base, gd) = fam.default_base();
            let quad = q(base.0, base.1, base.2, base.3).with_multipliers(gd, rat(1, 1));
            assert_eq!(quad.product(), constraint_constant(fam), "{fam}");
            assert!(extend(&quad.spec(fam)).unwrap().det().is_zero(), "{fam}");
        }
    }

    #[test]
    fn extend_layout() {
        let ext = extend(&ExtensionSpec::new(Family::H3TwoFold, G::sigma(), G::sigma())).unwrap();
        assert_eq!(ext.entries[(0, 2)], G::sigma());
        assert_eq!(ext.entries[(2, 0)], G::sigma());
        assert!(ext.entries[(0, 1)].is_zero() && ext.entries[(0, 3)].is_zero());
        assert_eq!(ext.entries.minor_matrix(0, 0), ext.base.entries);

        let five = extend(&ExtensionSpec::new(Family::H3FiveFold, G::int(-1, 0), G::int(-3, 1))).unwrap();
        assert_eq!(five.entries[(0, 1)], G::int(-1, 0));
        let h4 = extend(&ExtensionSpec::new(Family::H4A2, G::int(-1, 0), G::int(-1, 0))).unwrap();
        assert_eq!(h4.entries[(0, 2)], G::int(-1, 0));

        let bad = ExtensionSpec {
            group: GroupId::H2,
            family: Family::H3TwoFold,
            x: G::sigma(),
            y: G::sigma(),
        };
        assert!(matches!(extend(&bad), Err(Error::FamilyMismatch { .. })));
    }

    #[test]
    fn consistency() {
        let h2 = extend(&ExtensionSpec::new(Family::H2Highest, G::sigma(), G::sigma())).unwrap();
        let rep = consistency_check(&h2.entries).unwrap();
        assert!(rep.passed() && rep.corollary_triggered);
        assert_eq!(rep.ratios, vec![(1, G::one()), (2, G::one())]);

        let mut bad = h2.entries.clone();
        bad[(0, 1)] = G::int(-1, 0);
        bad[(1, 0)] = G::int(-2, 0);
        bad[(0, 2)] = G::int(-1, 0);
        bad[(2, 0)] = G::int(-3, 0);
        let rep = consistency_check(&bad).unwrap();
        assert!(!rep.lemma_holds && rep.witness.is_some());

        let single = extend(&ExtensionSpec::new(Family::H3TwoFold, G::int(-2, 1), G::int(-1, 0))).unwrap();
        assert!(consistency_check(&single.entries).unwrap().passed());
    }

    #[test]
    fn geometry_of_roots() {
        let g = root_geometry(&G::sigma(), &G::sigma()).unwrap();
        assert_eq!(g.length_sq, G::one());
        assert_eq!(g.cos_sq, G::frac(1, 2, -1, 4));
        let g = root_geometry(&-G::tau_pow(-2), &G::int(-1, 0)).unwrap();
        assert_eq!(g.length_sq, G::int(2, -1));
        assert!(root_geometry(&G::zero(), &G::one()).is_err());
    }

    #[test]
    fn fibonacci_steps() {
        assert_eq!(fib_step(&q(-2, 1, -1, 0), Direction::Forward), q(1, -1, 1, -1));
        assert_eq!(fib_step(&q(1, -1, 1, -1), Direction::Backward), q(-2, 1, -1, 0));
        assert_eq!(fib_step(&q(1, -1, 1, -1), Direction::Forward), q(-1, 0, -2, 1));
        let f = family(&q(1, -1, 1, -1), -2..=2);
        let lens: Vec<G> = f
            .members
            .iter()
            .map(|m| root_geometry(&m.x, &m.y).unwrap().length_sq)
            .collect();
        let mut want: Vec<G> = (-2..=2).map(|k| G::tau_pow(2 * k)).collect();
        want.reverse();
        assert_eq!(lens, want);
    }

    #[test]
    fn solver_cases() {
        let one = rat(1, 1);
        let o = solve_constraint(&G::int(2, -1), &one, &one, 12).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].base, q(-2, 1, -1, 0));
        assert!(o[0].contains(&q(1, -1, 1, -1)));

        let o = solve_constraint(&G::int(3, -1), &one, &one, 12).unwrap();
        let bases: Vec<_> = o.iter().map(|x| x.base.coeffs()).collect();
        assert_eq!(bases, vec![(-3, 1, -1, 0), (-1, 0, -3, 1)]);

        let o = solve_constraint(&G::int(7, -4), &one, &one, 12).unwrap();
        let mut units: Vec<_> = o.iter().map(|x| x.unit_base.clone().unwrap().coeffs()).collect();
        units.sort();
        assert_eq!(units, vec![(-7, 4, -1, 0), (-1, 0, -7, 4)]);

        assert!(solve_constraint(&G::frac(1, 2, 0, 1), &one, &one, 12).is_err());
        assert!(solve_constraint(&G::int(2, -1), &one, &one, 0).is_err());
    }

    #[test]
    fn lengths() {
        let c = classify_length(
            &q(1, -1, 1, -1).with_multipliers(rat(1, 2), rat(2, 1)),
            Family::H3TwoFold,
        )
        .unwrap();
        assert!(c.satisfies_constraint);
        let d = c.decomposition.unwrap();
        assert_eq!((d.rho, d.k, d.sqrt5), (rat(1, 2), 0, false));

        let c = classify_length(
            &q(-3, 1, -1, 0).with_multipliers(rat(1, 1), rat(4, 5)),
            Family::H3FiveFold,
        )
        .unwrap();
        let d = c.decomposition.unwrap();
        assert_eq!((d.rho, d.k, d.sqrt5), (rat(1, 2), -1, true));

        let c = classify_length(
            &q(1, -1, 1, -1).with_multipliers(rat(3, 4), rat(1, 1)),
            Family::H3ThreeFold,
        )
        .unwrap();
        assert_eq!(c.length_sq, G::frac(3, 4, 0, 1));
        assert!(!c.satisfies_constraint);
        assert_eq!(c.decomposition.unwrap().multiplier(), G::frac(1, 2, 0, 1));
    }

    #[test]
    fn symmetrisations() {
        let x = G::int(-2, 1);
        let y = constraint_constant(Family::H3TwoFold).checked_div(&x).unwrap();
        let ext = extend(&ExtensionSpec::new(Family::H3TwoFold, x.clone(), y)).unwrap();
        let s = symmetrize(&ext.entries).unwrap();
        assert_eq!(s.d[0], G::tau().pow(2) * &x * &x);
        assert_eq!(s.s[(0, 0)], G::int(2, 0) * G::tau().pow(2) * &x * &x);
        assert_eq!(s.s[(0, 2)], x);
        assert!(s.positive_semidefinite && s.det.is_zero());

        let h3 = extend(&ExtensionSpec::new(Family::H3TwoFold, G::sigma(), G::sigma())).unwrap();
        assert!(symmetrize(&h3.entries).unwrap().d.iter().all(|v| v.is_one()));

        let mut bad = h3.entries.clone();
        bad[(0, 2)] = G::int(1, 0);
        assert!(matches!(symmetrize(&bad), Err(Error::NotSymmetrisable(_))));
    }

    #[test]
    fn corner_roots() {
        assert_eq!(coxeter_corner_root(Family::H3TwoFold).x, Some(G::sigma()));
        let c3 = coxeter_corner_root(Family::H3ThreeFold);
        assert!(!c3.in_field);
        assert_eq!(c3.x_sq, G::frac(4, 3, 0, 1) * G::tau_pow(-2));
        let c5 = coxeter_corner_root(Family::H3FiveFold);
        assert!(!c5.in_field);
        assert_eq!(c5.x_sq, G::frac(12, 5, -4, 5));
    }

    #[test]
    fn parsing_families() {
        assert_eq!(family_for_axis(GroupId::H3, "5fold").unwrap(), Family::H3FiveFold);
        assert_eq!(family_for_axis(GroupId::H2, "bisector").unwrap(), Family::H2Bisector);
        assert!(family_for_axis(GroupId::H2, "5fold").is_err());
        assert!(family_for_axis(GroupId::H2, "h3-2fold").is_err());
        assert_eq!("h4-a3".parse::<Family>().unwrap(), Family::H4A3);
    }
}
