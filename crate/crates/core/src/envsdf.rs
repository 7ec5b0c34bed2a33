//! Signed-distance representation of the rigid environment.
//!
//! A scene is an ordered union of analytic primitives; the first member is
//! always the ground half-space at z = 0. Queries return the signed
//! distance together with a unit gradient pointing away from the nearest
//! surface, which is exactly the per-node environment descriptor the
//! dynamics model consumes and what the cloth simulator uses for
//! collision response.

use crate::math::{Real, Vec3};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SdfError {
    /// `nearest_surface_point` was called for a point inside the solid.
    #[error("query point lies inside the environment (distance {distance})")]
    InsideSolid { distance: f64 },
    #[error("unknown scenario kind `{0}`")]
    UnknownScenario(String),
}

/// Analytic primitive shapes. Dimensions are meters; local frames put the
/// support surface against z = 0 where that is meaningful.
#[derive(Debug, Clone, PartialEq)]
pub enum PrimitiveKind<T> {
    /// Solid half-space z <= 0 in the local frame.
    HalfSpace,
    /// Box centered at the local origin.
    Cuboid { half_extents: Vec3<T> },
    /// Sphere centered at the local origin.
    Sphere { radius: T },
    /// Upper half of a sphere: the cap z >= 0 plus its base disk.
    Hemisphere { radius: T },
    /// Capsule around the local x-axis segment [-half_length, half_length].
    Capsule { radius: T, half_length: T },
}

/// A primitive posed in the world: translation plus rotation about z.
#[derive(Debug, Clone, PartialEq)]
pub struct SdfPrimitive<T> {
    pub kind: PrimitiveKind<T>,
    pub translation: Vec3<T>,
    pub yaw: T,
}

impl<T: Real> SdfPrimitive<T> {
    pub fn ground() -> Self {
        Self {
            kind: PrimitiveKind::HalfSpace,
            translation: Vec3::zeros(),
            yaw: T::zero(),
        }
    }

    fn to_local(&self, p: Vec3<T>) -> Vec3<T> {
        (p - self.translation).rotate_z(-self.yaw)
    }

    fn to_world_dir(&self, d: Vec3<T>) -> Vec3<T> {
        d.rotate_z(self.yaw)
    }

    /// Signed distance and outward unit gradient at `p`.
    ///
    /// Total over all inputs; on medial axes an arbitrary but fixed
    /// minimizer is chosen so repeated queries agree.
    pub fn query(&self, p: Vec3<T>) -> (T, Vec3<T>) {
        let l = self.to_local(p);
        let (d, g) = match &self.kind {
            PrimitiveKind::HalfSpace => (l.z, Vec3::new(T::zero(), T::zero(), T::one())),
            PrimitiveKind::Cuboid { half_extents } => cuboid_sdf(l, *half_extents),
            PrimitiveKind::Sphere { radius } => sphere_sdf(l, *radius),
            PrimitiveKind::Hemisphere { radius } => hemisphere_sdf(l, *radius),
            PrimitiveKind::Capsule {
                radius,
                half_length,
            } => capsule_sdf(l, *radius, *half_length),
        };
        (d, self.to_world_dir(g))
    }
}

fn sphere_sdf<T: Real>(p: Vec3<T>, radius: T) -> (T, Vec3<T>) {
    let r = p.norm();
    let up = Vec3::new(T::zero(), T::zero(), T::one());
    match p.try_normalize(T::zero()) {
        Some(dir) => (r - radius, dir),
        None => (-radius, up), // center: medial point, fixed fallback
    }
}

fn cuboid_sdf<T: Real>(p: Vec3<T>, h: Vec3<T>) -> (T, Vec3<T>) {
    let q = Vec3::new(p.x.abs() - h.x, p.y.abs() - h.y, p.z.abs() - h.z);
    let zero = T::zero();
    let outside = Vec3::new(q.x.max(zero), q.y.max(zero), q.z.max(zero));
    let out_norm = outside.norm();
    if out_norm > zero {
        let sign = |v: T| if v < zero { -T::one() } else { T::one() };
        let g = Vec3::new(
            sign(p.x) * outside.x,
            sign(p.y) * outside.y,
            sign(p.z) * outside.z,
        ) / out_norm;
        (out_norm, g)
    } else {
        // Inside: climb out through the least-deep face. Ties resolve to
        // the lowest axis index.
        let (axis, depth) = [q.x, q.y, q.z]
            .into_iter()
            .enumerate()
            .fold((0usize, q.x), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
        let sign = |v: T| if v < zero { -T::one() } else { T::one() };
        let g = match axis {
            0 => Vec3::new(sign(p.x), zero, zero),
            1 => Vec3::new(zero, sign(p.y), zero),
            _ => Vec3::new(zero, zero, sign(p.z)),
        };
        (depth, g)
    }
}

fn hemisphere_sdf<T: Real>(p: Vec3<T>, radius: T) -> (T, Vec3<T>) {
    let zero = T::zero();
    let r = p.norm();
    let dxy = (p.x * p.x + p.y * p.y).sqrt();
    if p.z >= zero {
        if r >= radius {
            // Outside, nearest point on the spherical cap.
            let dir = p / r; // r >= radius > 0
            (r - radius, dir)
        } else {
            // Inside the solid: nearest surface is either the cap or the
            // base disk (ties go to the disk).
            let cap = radius - r;
            if p.z <= cap {
                (-p.z, Vec3::new(zero, zero, -T::one()))
            } else {
                (-cap, p / r)
            }
        }
    } else if dxy <= radius {
        // Below the base disk.
        (-p.z, Vec3::new(zero, zero, -T::one()))
    } else {
        // Nearest point on the rim circle.
        let radial = Vec3::new(p.x / dxy, p.y / dxy, zero);
        let dr = dxy - radius;
        let d = (dr * dr + p.z * p.z).sqrt();
        ((dr * dr + p.z * p.z).sqrt(), Vec3::new(radial.x * dr, radial.y * dr, p.z) / d)
    }
}

fn capsule_sdf<T: Real>(p: Vec3<T>, radius: T, half_length: T) -> (T, Vec3<T>) {
    let t = p.x.max(-half_length).min(half_length);
    let axis_point = Vec3::new(t, T::zero(), T::zero());
    let delta = p - axis_point;
    match delta.try_normalize(T::zero()) {
        Some(dir) => (delta.norm() - radius, dir),
        None => (-radius, Vec3::new(T::zero(), T::zero(), T::one())), // on the axis
    }
}

/// Union of primitives; member zero is always the ground half-space.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneSdf<T> {
    primitives: Vec<SdfPrimitive<T>>,
}

impl<T: Real> SceneSdf<T> {
    /// Ground plane plus any extra obstacles.
    pub fn new(extras: Vec<SdfPrimitive<T>>) -> Self {
        let mut primitives = vec![SdfPrimitive::ground()];
        primitives.extend(extras);
        Self { primitives }
    }

    pub fn primitives(&self) -> &[SdfPrimitive<T>] {
        &self.primitives
    }

    /// Signed distance and outward unit gradient of the union: the minimum
    /// over members, gradient taken from the minimizing member (lowest
    /// index wins exact ties).
    pub fn query(&self, p: Vec3<T>) -> (T, Vec3<T>) {
        let mut best = self.primitives[0].query(p);
        for prim in &self.primitives[1..] {
            let q = prim.query(p);
            if q.0 < best.0 {
                best = q;
            }
        }
        best
    }

    pub fn distance(&self, p: Vec3<T>) -> T {
        self.query(p).0
    }

    /// Closest point on the environment surface for an exterior query.
    pub fn nearest_surface_point(&self, p: Vec3<T>) -> Result<Vec3<T>, SdfError> {
        let (d, g) = self.query(p);
        if d < T::zero() {
            return Err(SdfError::InsideSolid { distance: d.f64() });
        }
        Ok(p - g * d)
    }
}

/// The five experimental scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    Flat,
    Platform,
    Hemisphere,
    Pole,
    Table,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 5] = [
        ScenarioKind::Flat,
        ScenarioKind::Platform,
        ScenarioKind::Hemisphere,
        ScenarioKind::Pole,
        ScenarioKind::Table,
    ];

    /// Scenario kinds the dynamics model may be trained on; `Table` is the
    /// held-out test scenario.
    pub const TRAINING: [ScenarioKind; 4] = [
        ScenarioKind::Flat,
        ScenarioKind::Platform,
        ScenarioKind::Hemisphere,
        ScenarioKind::Pole,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Flat => "flat",
            ScenarioKind::Platform => "platform",
            ScenarioKind::Hemisphere => "hemisphere",
            ScenarioKind::Pole => "pole",
            ScenarioKind::Table => "table",
        }
    }
}

impl std::str::FromStr for ScenarioKind {
    type Err = SdfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "flat" => Ok(ScenarioKind::Flat),
            "platform" => Ok(ScenarioKind::Platform),
            "hemisphere" => Ok(ScenarioKind::Hemisphere),
            "pole" => Ok(ScenarioKind::Pole),
            "table" => Ok(ScenarioKind::Table),
            other => Err(SdfError::UnknownScenario(other.to_string())),
        }
    }
}

/// Obstacle placement; the obstacle sits at (x, y) with `z` giving the
/// platform top height and `yaw` the rotation about the z-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioPose<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub yaw: T,
}

impl<T: Real> ScenarioPose<T> {
    pub fn identity() -> Self {
        Self {
            x: T::zero(),
            y: T::zero(),
            z: T::c(0.15),
            yaw: T::zero(),
        }
    }
}

/// Fixed scenario dimensions that the placement randomization does not
/// touch. Heights and side lengths follow the experimental setup; the
/// hemisphere radius is a configurable default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioDims<T> {
    /// Square side of the platform and table tops.
    pub side: T,
    /// Top height of the pole and table.
    pub fixed_height: T,
    pub hemisphere_radius: T,
    /// Long horizontal extent of the pole.
    pub pole_length: T,
    /// Slab thickness of the table top.
    pub table_thickness: T,
}

impl<T: Real> Default for ScenarioDims<T> {
    fn default() -> Self {
        Self {
            side: T::c(0.4),
            fixed_height: T::c(0.15),
            hemisphere_radius: T::c(0.15),
            pole_length: T::c(1.2),
            table_thickness: T::c(0.04),
        }
    }
}

/// Build one of the five scenario scenes at the given placement.
pub fn make_scenario<T: Real>(
    kind: ScenarioKind,
    pose: ScenarioPose<T>,
    dims: &ScenarioDims<T>,
) -> SceneSdf<T> {
    let two = T::c(2.0);
    let extras = match kind {
        ScenarioKind::Flat => vec![],
        ScenarioKind::Platform => {
            // Solid box from the ground up to the randomized top height.
            let half_h = pose.z / two;
            vec![SdfPrimitive {
                kind: PrimitiveKind::Cuboid {
                    half_extents: Vec3::new(dims.side / two, dims.side / two, half_h),
                },
                translation: Vec3::new(pose.x, pose.y, half_h),
                yaw: pose.yaw,
            }]
        }
        ScenarioKind::Hemisphere => vec![SdfPrimitive {
            kind: PrimitiveKind::Hemisphere {
                radius: dims.hemisphere_radius,
            },
            translation: Vec3::new(pose.x, pose.y, T::zero()),
            yaw: pose.yaw,
        }],
        ScenarioKind::Pole => {
            // Long box of the stated height and width.
            let half_h = dims.fixed_height / two;
            vec![SdfPrimitive {
                kind: PrimitiveKind::Cuboid {
                    half_extents: Vec3::new(dims.side / two, dims.pole_length / two, half_h),
                },
                translation: Vec3::new(pose.x, pose.y, half_h),
                yaw: pose.yaw,
            }]
        }
        ScenarioKind::Table => {
            // Elevated slab: cloth can drape past its edges.
            let half_t = dims.table_thickness / two;
            vec![SdfPrimitive {
                kind: PrimitiveKind::Cuboid {
                    half_extents: Vec3::new(dims.side / two, dims.side / two, half_t),
                },
                translation: Vec3::new(pose.x, pose.y, dims.fixed_height - half_t),
                yaw: pose.yaw,
            }]
        }
    };
    SceneSdf::new(extras)
}
