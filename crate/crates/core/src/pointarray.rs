//! Point arrays: a group-invariant seed united with translated copies.
//!
//! The array for a translation `t` is `P ∪ { p + g·t : p ∈ P, g ∈ G' }`, where
//! `G'` is the subgroup chosen by the [`Convention`]. H2 points live in the
//! root basis, H3 points in Cartesian coordinates.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use crate::coxeter::{generate_group, inner, root_system, GroupId};
use crate::error::{Error, Result};
use crate::geometry::{h2_plane, h3_cartesian_group, h3_constants};
use crate::goldring::{GMatrix, GoldenRational};

type G = GoldenRational;

pub type Point = Vec<G>;

/// How the seed is placed and which subgroup moves the translation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Convention {
    /// Pentagon through the five roots `R^k α_H` (circumradius 1, a vertex
    /// on the highest-root axis); seed and translation moved by the rotation
    /// subgroup. Reproduces the 20/25/30 table.
    #[default]
    RootVertexRotations,
    /// Pentagon with a vertex on a mirror line (the vector `2w` on the
    /// bisector) moved by the full reflection group.
    MirrorVertexFullGroup,
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "root-vertex" | "rotations" => Ok(Convention::RootVertexRotations),
            "mirror-vertex" | "full" => Ok(Convention::MirrorVertexFullGroup),
            other => Err(Error::Invalid(format!("unknown convention `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SeedName {
    Pentagon,
    Icosidodecahedron,
}

impl FromStr for SeedName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pentagon" => Ok(SeedName::Pentagon),
            "icosidodecahedron" => Ok(SeedName::Icosidodecahedron),
            other => Err(Error::UnknownSeed(other.to_string())),
        }
    }
}

impl fmt::Display for SeedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedName::Pentagon => "pentagon",
            SeedName::Icosidodecahedron => "icosidodecahedron",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedConfig {
    pub group: GroupId,
    pub name: SeedName,
    pub convention: Convention,
    pub points: BTreeSet<Point>,
    /// Matrices acting on the translation vector.
    #[serde(skip)]
    pub action: Vec<GMatrix>,
}

impl SeedConfig {
    /// Squared length in the seed's coordinates.
    pub fn norm_sq(&self, v: &[G]) -> G {
        match self.group {
            GroupId::H2 => inner(&h2_plane().gram, v, v),
            _ => v.iter().map(|c| c * c).sum(),
        }
    }
}

fn act(m: &GMatrix, v: &[G]) -> Point {
    m.mul_vec(v).expect("dimension matches")
}

fn h2_action(conv: Convention) -> Vec<GMatrix> {
    generate_group(GroupId::H2)
        .into_iter()
        .filter(|g| conv == Convention::MirrorVertexFullGroup || g.det().is_one())
        .map(|g| g.matrix)
        .collect()
}

fn h3_action(conv: Convention) -> Vec<GMatrix> {
    h3_cartesian_group()
        .iter()
        .filter(|g| conv == Convention::MirrorVertexFullGroup || g.det().expect("square").is_one())
        .cloned()
        .collect()
}

pub fn seed(name: SeedName) -> SeedConfig {
    seed_with(name, Convention::default())
}

pub fn seed_with(name: SeedName, convention: Convention) -> SeedConfig {
    match name {
        SeedName::Pentagon => {
            let action = h2_action(convention);
            let plane = h2_plane();
            let vertex: Point = match convention {
                Convention::RootVertexRotations => plane.highest_root.clone(),
                Convention::MirrorVertexFullGroup => plane.bisector.iter().map(|c| c * &G::int(2, 0)).collect(),
            };
            let points = action.iter().map(|g| act(g, &vertex)).collect();
            SeedConfig {
                group: GroupId::H2,
                name,
                convention,
                points,
                action,
            }
        }
        SeedName::Icosidodecahedron => {
            let b = basis_matrix();
            let points = root_system(GroupId::H3)
                .into_iter()
                .map(|r| act(&b, &r.coords))
                .collect();
            SeedConfig {
                group: GroupId::H3,
                name,
                convention,
                points,
                action: h3_action(convention),
            }
        }
    }
}

/// Columns are the Cartesian simple roots of H3.
fn basis_matrix() -> GMatrix {
    let c = h3_constants();
    let rows = (0..3)
        .map(|i| c.simple_roots.iter().map(|r| r.0[i].clone()).collect())
        .collect();
    GMatrix::from_rows(rows).expect("3x3")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointArray {
    pub points: BTreeSet<Point>,
    pub seed: SeedName,
    pub group: GroupId,
    pub translation: Point,
}

impl PointArray {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn generate_array(seed: &SeedConfig, t: &[G]) -> Result<PointArray> {
    let dim = seed.points.iter().next().map_or(0, Vec::len);
    if t.len() != dim {
        return Err(Error::Shape(format!(
            "translation has {} components, seed has {dim}",
            t.len()
        )));
    }
    let shifts: BTreeSet<Point> = seed.action.iter().map(|g| act(g, t)).collect();
    let mut points = seed.points.clone();
    for s in &shifts {
        for p in &seed.points {
            points.insert(p.iter().zip(s).map(|(a, b)| a + b).collect());
        }
    }
    Ok(PointArray {
        points,
        seed: seed.name,
        group: seed.group,
        translation: t.to_vec(),
    })
}

/// Translation direction together with its reference vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ArrayAxis {
    /// H2 highest root `α_H`, unit length.
    Highest,
    /// H2 vector `2w` on the bisector, length `√(3−τ)`.
    Bisector,
    /// H3 axis `T_n` for `n` in 2, 3, 5.
    Fold(u32),
}

impl ArrayAxis {
    pub fn parse(group: GroupId, s: &str) -> Result<Self> {
        match (group, s.to_ascii_lowercase().as_str()) {
            (GroupId::H2, "highest") => Ok(ArrayAxis::Highest),
            (GroupId::H2, "bisector") => Ok(ArrayAxis::Bisector),
            (GroupId::H3, "2fold") => Ok(ArrayAxis::Fold(2)),
            (GroupId::H3, "3fold") => Ok(ArrayAxis::Fold(3)),
            (GroupId::H3, "5fold") => Ok(ArrayAxis::Fold(5)),
            (g, other) => Err(Error::FamilyMismatch {
                family: other.to_string(),
                group: g.to_string(),
            }),
        }
    }

    pub fn reference(self) -> Result<Point> {
        match self {
            ArrayAxis::Highest => Ok(h2_plane().highest_root),
            ArrayAxis::Bisector => Ok(h2_plane().bisector.iter().map(|c| c * &G::int(2, 0)).collect()),
            ArrayAxis::Fold(n) => Ok(h3_constants().axis(n)?.0.to_vec()),
        }
    }

    /// `length · reference`.
    pub fn vector(self, length: &G) -> Result<Point> {
        Ok(self.reference()?.iter().map(|c| c * length).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    /// Multiplier of the axis reference vector.
    pub length: G,
    /// `|t|²`.
    pub length_sq: G,
    pub cardinality: usize,
}

/// One array per length, sorted by `|t|²`.
pub fn cardinality_scan(seed: &SeedConfig, axis: ArrayAxis, lengths: &[G]) -> Result<Vec<ScanRow>> {
    let mut rows = lengths
        .iter()
        .map(|l| {
            let t = axis.vector(l)?;
            Ok(ScanRow {
                length: l.clone(),
                length_sq: seed.norm_sq(&t),
                cardinality: generate_array(seed, &t)?.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        a.length_sq
            .cmp_value(&b.length_sq)
            .then_with(|| a.length.cmp(&b.length))
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn card(seed: &SeedConfig, axis: ArrayAxis, l: G) -> usize {
        generate_array(seed, &axis.vector(&l).unwrap()).unwrap().len()
    }

    #[test]
    fn seeds() {
        let p = seed(SeedName::Pentagon);
        assert_eq!(p.points.len(), 5);
        assert_eq!(p.action.len(), 5);
        assert!(p.points.iter().all(|v| p.norm_sq(v).is_one()));
        let full = seed_with(SeedName::Pentagon, Convention::MirrorVertexFullGroup);
        assert_eq!(full.action.len(), 10);
        let i = seed(SeedName::Icosidodecahedron);
        assert_eq!(i.points.len(), 30);
        for s in [&p, &full, &i] {
            for g in &s.action {
                let img: BTreeSet<Point> = s.points.iter().map(|v| act(g, v)).collect();
                assert_eq!(img, s.points);
            }
        }
        assert!("hexagon".parse::<SeedName>().is_err());
    }

    #[test]
    fn pentagon_table() {
        let p = seed(SeedName::Pentagon);
        assert_eq!(card(&p, ArrayAxis::Highest, G::one()), 20);
        assert_eq!(card(&p, ArrayAxis::Highest, -G::sigma()), 25);
        assert_eq!(card(&p, ArrayAxis::Highest, G::tau()), 25);
        assert_eq!(card(&p, ArrayAxis::Bisector, G::one()), 25);
        assert_eq!(card(&p, ArrayAxis::Bisector, G::tau()), 25);
        assert_eq!(card(&p, ArrayAxis::Highest, G::frac(3, 7, 0, 1)), 30);
    }

    #[test]
    fn mirror_convention_misses_table() {
        let p = seed_with(SeedName::Pentagon, Convention::MirrorVertexFullGroup);
        assert_eq!(p.points.len(), 5);
        let rows = [
            card(&p, ArrayAxis::Highest, G::one()),
            card(&p, ArrayAxis::Bisector, G::one()),
            card(&p, ArrayAxis::Highest, G::frac(3, 7, 0, 1)),
        ];
        assert_ne!(rows, [20, 25, 30]);
    }

    #[test]
    fn scan_is_sorted() {
        let p = seed(SeedName::Pentagon);
        let rows = cardinality_scan(&p, ArrayAxis::Highest, &[G::tau(), -G::sigma(), G::one()]).unwrap();
        let c: Vec<usize> = rows.iter().map(|r| r.cardinality).collect();
        assert_eq!(c, vec![25, 20, 25]);
        assert!(generate_array(&p, &[G::one()]).is_err());
    }
}
