//! Cartesian H3 in `Q[τ]³`, affine operators, translations and twist
//! translations, and the H2 plane in the root basis.

use std::f64::consts::TAU as TWO_PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{cartan_matrix, generate_group, gram_matrix, highest_root, GroupId};
use crate::error::{Error, Result};
use crate::goldring::{GMatrix, GoldenRational};

type G = GoldenRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec3G(pub [G; 3]);

impl Vec3G {
    pub fn new(x: G, y: G, z: G) -> Self {
        Vec3G([x, y, z])
    }

    pub fn zero() -> Self {
        Vec3G([G::zero(), G::zero(), G::zero()])
    }

    pub fn dot(&self, o: &Self) -> G {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> G {
        self.dot(self)
    }

    pub fn scale(&self, s: &G) -> Self {
        Vec3G(self.0.clone().map(|c| &c * s))
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a, b, c] = &self.0;
        let [d, e, f] = &o.0;
        Vec3G([b * f - c * e, c * d - a * f, a * e - b * d])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.clone().map(|c| c.to_f64())
    }

    pub fn as_slice(&self) -> &[G] {
        &self.0
    }

    fn from_slice(v: &[G]) -> Self {
        Vec3G([v[0].clone(), v[1].clone(), v[2].clone()])
    }
}

impl Add for &Vec3G {
    type Output = Vec3G;
    fn add(self, o: &Vec3G) -> Vec3G {
        Vec3G([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }
}

impl Sub for &Vec3G {
    type Output = Vec3G;
    fn sub(self, o: &Vec3G) -> Vec3G {
        Vec3G([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }
}

impl Neg for &Vec3G {
    type Output = Vec3G;
    fn neg(self) -> Vec3G {
        Vec3G(self.0.clone().map(|c| -c))
    }
}

impl fmt::Display for Vec3G {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H3Constants {
    pub simple_roots: [Vec3G; 3],
    pub t2: Vec3G,
    pub t3: Vec3G,
    pub t5: Vec3G,
}

impl H3Constants {
    /// Axis of the given order (2, 3 or 5).
    pub fn axis(&self, order: u32) -> Result<&Vec3G> {
        match order {
            2 => Ok(&self.t2),
            3 => Ok(&self.t3),
            5 => Ok(&self.t5),
            n => Err(Error::NotAnAxis(n)),
        }
    }

    /// Simple root the axis of this order pairs with, counted from 1.
    pub fn paired_root(order: u32) -> Result<usize> {
        match order {
            2 => Ok(2),
            3 => Ok(3),
            5 => Ok(1),
            n => Err(Error::NotAnAxis(n)),
        }
    }
}

pub fn h3_constants() -> H3Constants {
    let g = G::int;
    let half = G::frac(1, 2, 0, 1);
    H3Constants {
        simple_roots: [
            Vec3G::new(g(0, 0), g(1, 0), g(0, 0)),
            Vec3G::new(G::sigma().scale(half.a()), -half.clone(), -(G::tau() * &half)),
            Vec3G::new(g(0, 0), g(0, 0), g(1, 0)),
        ],
        t2: Vec3G::new(g(1, 0), g(0, 0), g(0, 0)),
        t3: Vec3G::new(G::tau(), g(0, 0), G::sigma()),
        t5: Vec3G::new(G::tau(), g(-1, 0), g(0, 0)),
    }
}

/// `v ↦ linear·v + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineOperator {
    pub linear: GMatrix,
    pub shift: Vec3G,
}

impl AffineOperator {
    pub fn identity() -> Self {
        AffineOperator {
            linear: GMatrix::identity(3),
            shift: Vec3G::zero(),
        }
    }

    pub fn translation(t: &Vec3G) -> Self {
        AffineOperator {
            linear: GMatrix::identity(3),
            shift: t.clone(),
        }
    }

    pub fn linear(m: GMatrix) -> Self {
        AffineOperator {
            linear: m,
            shift: Vec3G::zero(),
        }
    }

    pub fn apply(&self, v: &Vec3G) -> Vec3G {
        &mat_vec(&self.linear, v) + &self.shift
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        AffineOperator {
            linear: &self.linear * &other.linear,
            shift: self.apply(&other.shift),
        }
    }

    /// Inverse of an operator with orthogonal linear part.
    pub fn inverse(&self) -> Self {
        let lt = self.linear.transpose();
        let shift = -&mat_vec(&lt, &self.shift);
        AffineOperator { linear: lt, shift }
    }

    pub fn is_orthogonal(&self) -> bool {
        &self.linear.transpose() * &self.linear == GMatrix::identity(3)
    }

    pub fn is_translation(&self) -> bool {
        self.linear == GMatrix::identity(3)
    }
}

pub fn mat_vec(m: &GMatrix, v: &Vec3G) -> Vec3G {
    Vec3G::from_slice(&m.mul_vec(v.as_slice()).expect("3x3 matrix"))
}

fn reflection_matrix(alpha: &Vec3G) -> Result<GMatrix> {
    if alpha.is_zero() {
        return Err(Error::ZeroVector);
    }
    let k = G::int(2, 0).checked_div(&alpha.norm_sq())?;
    let mut m = GMatrix::identity(3);
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = &m[(i, j)] - &(&k * &(&alpha.0[i] * &alpha.0[j]));
        }
    }
    Ok(m)
}

/// `r_α v = v − 2(α,v)/(α,α) α`.
pub fn reflection(alpha: &Vec3G) -> Result<AffineOperator> {
    Ok(AffineOperator::linear(reflection_matrix(alpha)?))
}

/// `r^aff_α v = α + r_α v`, the reflection in the plane `(v, α) = |α|²/2`.
pub fn affine_reflection(alpha0: &Vec3G) -> Result<AffineOperator> {
    Ok(AffineOperator {
        linear: reflection_matrix(alpha0)?,
        shift: alpha0.clone(),
    })
}

/// Columns are the simple roots.
fn root_basis() -> GMatrix {
    let c = h3_constants();
    let mut b = GMatrix::zeros(3, 3);
    for (j, r) in c.simple_roots.iter().enumerate() {
        for i in 0..3 {
            b[(i, j)] = r.0[i].clone();
        }
    }
    b
}

/// The 120 elements of H3 as Cartesian matrices, `B·M·B⁻¹`, sorted.
pub fn h3_cartesian_group() -> &'static [GMatrix] {
    static CELL: OnceLock<Vec<GMatrix>> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = root_basis();
        let b_inv = b.inverse().expect("simple roots are independent");
        let mut out: Vec<GMatrix> = generate_group(GroupId::H3)
            .into_iter()
            .map(|g| &(&b * &g.matrix) * &b_inv)
            .collect();
        out.sort();
        out
    })
}

pub fn h3_contains(m: &GMatrix) -> bool {
    h3_cartesian_group().binary_search(m).is_ok()
}

/// Rotation angle in `[0, 2π)` of a proper rotation fixing `axis`,
/// measured counter-clockwise when looking down `axis`.
pub fn rotation_angle(m: &GMatrix, axis: &Vec3G) -> f64 {
    let probe = [
        Vec3G::new(G::one(), G::zero(), G::zero()),
        Vec3G::new(G::zero(), G::one(), G::zero()),
    ];
    let u = probe
        .iter()
        .map(|e| axis.cross(e))
        .find(|u| !u.is_zero())
        .expect("nonzero axis");
    let v = mat_vec(m, &u);
    let sin = axis.dot(&u.cross(&v)).to_f64() / axis.norm_sq().to_f64().sqrt();
    let cos = u.dot(&v).to_f64();
    let a = sin.atan2(cos);
    if a < 0.0 {
        a + TWO_PI
    } else {
        a
    }
}

fn det3(m: &GMatrix) -> G {
    m.det().expect("square")
}

/// Proper rotations of H3 fixing `axis`, by increasing angle.
pub fn axis_rotations(axis: &Vec3G, order: u32) -> Result<Vec<GMatrix>> {
    let mut rots: Vec<GMatrix> = h3_cartesian_group()
        .iter()
        .filter(|m| mat_vec(m, axis) == *axis && det3(m).is_one())
        .cloned()
        .collect();
    if axis.is_zero() || rots.len() != order as usize {
        return Err(Error::NotAnAxis(order));
    }
    sort_by_angle(&mut rots, axis);
    Ok(rots)
}

fn sort_by_angle(ms: &mut [GMatrix], axis: &Vec3G) {
    ms.sort_by(|a, b| rotation_angle(a, axis).total_cmp(&rotation_angle(b, axis)));
}

/// Elements of H3 mapping the line through `axis` to itself: order `4n`.
pub fn axis_stabilizer(axis: &Vec3G, order: u32) -> Result<Vec<GMatrix>> {
    let neg = -axis;
    let out: Vec<GMatrix> = h3_cartesian_group()
        .iter()
        .filter(|m| {
            let v = mat_vec(m, axis);
            v == *axis || v == neg
        })
        .cloned()
        .collect();
    if axis.is_zero() || out.len() != 4 * order as usize {
        return Err(Error::NotAnAxis(order));
    }
    Ok(out)
}

/// Elements `g` of H3 with `g·axis = −axis`: `2n` of them.
pub fn reversing_coset(axis: &Vec3G) -> Vec<GMatrix> {
    let neg = -axis;
    h3_cartesian_group()
        .iter()
        .filter(|m| mat_vec(m, axis) == neg)
        .cloned()
        .collect()
}

/// The cyclic group of order `2n` of rotations about `axis` by multiples
/// of `π/n`, generated by the H3 rotations and the half-turn `−r_axis`.
/// For `n = 3, 5` its odd elements lie outside H3.
pub fn screw_rotations(axis: &Vec3G, order: u32) -> Result<Vec<GMatrix>> {
    let base = axis_rotations(axis, order)?;
    let half_turn = reflection_matrix(axis)?.scale(&G::int(-1, 0));
    let mut all: Vec<GMatrix> = base.clone();
    for r in &base {
        let m = &half_turn * r;
        if !all.contains(&m) {
            all.push(m);
        }
    }
    sort_by_angle(&mut all, axis);
    Ok(all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TwistKind {
    /// Linear part is the identity.
    PureTranslation,
    /// Linear part is a rotation about the axis by `steps · π/n`.
    Screw { steps: u32 },
    /// Linear part is a reflection in a plane containing the axis.
    Glide,
}

fn classify_linear(l: &GMatrix, axis: &Vec3G, order: u32) -> TwistKind {
    if *l == GMatrix::identity(3) {
        TwistKind::PureTranslation
    } else if det3(l).is_one() {
        let steps = (rotation_angle(l, axis) * order as f64 / std::f64::consts::PI).round() as u32;
        TwistKind::Screw { steps }
    } else {
        TwistKind::Glide
    }
}

/// `g ∘ r^aff_{α0}` for `g` reversing the axis of `α0`: the construction
/// `T^twist v = −α_0 + L v` with `L = g·r_{α0}` fixing the axis.
pub fn twist_translation(alpha0: &Vec3G, g: &GMatrix) -> Result<AffineOperator> {
    if !h3_contains(g) || mat_vec(g, alpha0) != -alpha0 {
        return Err(Error::NotInStabilizer);
    }
    Ok(AffineOperator::linear(g.clone()).compose(&affine_reflection(alpha0)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistChoice {
    pub rotation: GMatrix,
    pub operator: AffineOperator,
    pub kind: TwistKind,
}

/// Every `g ∘ r^aff_{α0}` over the reversing coset, sorted by kind.
pub fn coset_choices(alpha0: &Vec3G, order: u32) -> Result<Vec<TwistChoice>> {
    let mut out = Vec::new();
    for g in reversing_coset(alpha0) {
        let op = twist_translation(alpha0, &g)?;
        let kind = classify_linear(&op.linear, alpha0, order);
        out.push(TwistChoice {
            rotation: g,
            operator: op,
            kind,
        });
    }
    out.sort_by_key(|c| kind_key(c.kind));
    Ok(out)
}

fn kind_key(k: TwistKind) -> (u8, u32) {
    match k {
        TwistKind::PureTranslation => (0, 0),
        TwistKind::Screw { steps } => (1, steps),
        TwistKind::Glide => (2, 0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistFamily {
    /// The coset construction with the smallest screw angle.
    pub base: TwistChoice,
    /// `R ∘ base` for every `R` in [`screw_rotations`], by angle of `R`.
    pub choices: Vec<TwistChoice>,
}

impl TwistFamily {
    pub fn pure_translations(&self) -> impl Iterator<Item = &TwistChoice> {
        self.choices.iter().filter(|c| c.kind == TwistKind::PureTranslation)
    }
}

/// Twist translations along a 3- or 5-fold axis (or a 2-fold one), rotated
/// by each element of the screw group about the axis. Exactly one choice
/// cancels the linear part and leaves `v ↦ v − α_0`.
pub fn twist_family(alpha0: &Vec3G, order: u32) -> Result<TwistFamily> {
    let cands = coset_choices(alpha0, order)?;
    let base = cands
        .iter()
        .find(|c| matches!(c.kind, TwistKind::Screw { .. } | TwistKind::PureTranslation))
        .cloned()
        .ok_or(Error::NotAnAxis(order))?;
    let group = screw_rotations(alpha0, order)?;
    let choices = group
        .into_iter()
        .map(|r| {
            let operator = AffineOperator::linear(r.clone()).compose(&base.operator);
            let kind = classify_linear(&operator.linear, alpha0, order);
            TwistChoice {
                rotation: r,
                operator,
                kind,
            }
        })
        .collect();
    Ok(TwistFamily { base, choices })
}

/// H2 in the root basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Plane {
    pub gram: GMatrix,
    /// `τ(α_1 + α_2)`.
    pub highest_root: Vec<G>,
    /// `w = α_1 + (τ/2)α_2`, orthogonal to `α_2`.
    pub bisector: Vec<G>,
}

impl H2Plane {
    pub fn inner(&self, u: &[G], v: &[G]) -> G {
        crate::coxeter::inner(&self.gram, u, v)
    }
}

pub fn h2_plane() -> H2Plane {
    H2Plane {
        gram: gram_matrix(&cartan_matrix(GroupId::H2)),
        highest_root: highest_root(GroupId::H2).coords,
        bisector: vec![G::one(), G::frac(0, 1, 1, 2)],
    }
}

/// Cartesian embedding of an H2 root-basis vector, for drawing only.
pub fn h2_embed(v: &[G]) -> [f64; 2] {
    // α_1 = (1, 0), α_2 at angle 4π/5
    let ang = 4.0 * std::f64::consts::PI / 5.0;
    let (c1, c2) = (v[0].to_f64(), v[1].to_f64());
    [c1 + c2 * ang.cos(), c2 * ang.sin()]
}
