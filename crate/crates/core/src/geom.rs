//! Small fixed-size vector algebra in R³.
//!
//! Everything here is plain `f64` arithmetic on `Copy` values. [`Vec3`] is the
//! workhorse; [`UnitVec3`] carries the unit-norm guarantee needed by frames,
//! and [`Frame`] is a right-handed orthonormal triple (Frenet or Sabban).

use std::ops::{Add, AddAssign, Deref, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vectors shorter than this have no meaningful direction.
pub const NEAR_ZERO_NORM: f64 = 1e-14;

/// Allowed deviation of a unit vector's norm from 1.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Allowed pairwise dot product and determinant error in a [`Frame`].
pub const FRAME_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Vec3) -> Vec3 {
        cross(self, other)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest absolute component.
    #[inline]
    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn normalize(self) -> Result<UnitVec3> {
        normalize(self)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Vec3::new(x, y, z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, rhs: Vec3) {
        *self = *self + rhs;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl SubAssign for Vec3 {
    #[inline]
    fn sub_assign(&mut self, rhs: Vec3) {
        *self = *self - rhs;
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    #[inline]
    fn mul(self, rhs: Vec3) -> Vec3 {
        rhs * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x / rhs, self.y / rhs, self.z / rhs)
    }
}

/// Values that can be combined linearly: the codomain of curves, profiles,
/// finite-difference stencils and quadrature rules.
pub trait Linear:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync + 'static
{
    const ZERO: Self;
    /// Size used for relative error checks.
    fn magnitude(&self) -> f64;
    fn all_finite(&self) -> bool;
}

impl Linear for f64 {
    const ZERO: f64 = 0.0;
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

impl Linear for Vec3 {
    const ZERO: Vec3 = Vec3::ZERO;
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

/// `u × v`.
#[inline]
pub fn cross(u: Vec3, v: Vec3) -> Vec3 {
    Vec3::new(
        u.y * v.z - u.z * v.y,
        u.z * v.x - u.x * v.z,
        u.x * v.y - u.y * v.x,
    )
}

/// Scalar triple product `⟨u × v, w⟩`.
#[inline]
pub fn det3(u: Vec3, v: Vec3, w: Vec3) -> f64 {
    cross(u, v).dot(w)
}

pub fn normalize(v: Vec3) -> Result<UnitVec3> {
    let norm = v.norm();
    if !(norm > NEAR_ZERO_NORM) {
        return Err(Error::NearZeroVector { norm });
    }
    Ok(UnitVec3(v / norm))
}

/// A vector of norm 1 (to [`UNIT_TOLERANCE`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3(Vec3::X);
    pub const Y: UnitVec3 = UnitVec3(Vec3::Y);
    pub const Z: UnitVec3 = UnitVec3(Vec3::Z);

    /// Accepts `v` as-is if its norm is already 1 within tolerance.
    pub fn try_new(v: Vec3) -> Result<Self> {
        let norm = v.norm();
        if (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotUnitVector {
                norm,
                tolerance: UNIT_TOLERANCE,
            });
        }
        Ok(UnitVec3(v))
    }

    #[inline]
    pub fn into_inner(self) -> Vec3 {
        self.0
    }
}

impl Deref for UnitVec3 {
    type Target = Vec3;
    #[inline]
    fn deref(&self) -> &Vec3 {
        &self.0
    }
}

impl From<UnitVec3> for Vec3 {
    fn from(u: UnitVec3) -> Vec3 {
        u.0
    }
}

/// Right-handed orthonormal triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Frame {
    pub e1: UnitVec3,
    pub e2: UnitVec3,
    pub e3: UnitVec3,
}

impl Frame {
    pub const IDENTITY: Frame = Frame {
        e1: UnitVec3::X,
        e2: UnitVec3::Y,
        e3: UnitVec3::Z,
    };

    pub fn new(e1: UnitVec3, e2: UnitVec3, e3: UnitVec3) -> Result<Self> {
        let frame = Frame { e1, e2, e3 };
        let error = frame.orthonormality_error();
        if error > FRAME_TOLERANCE {
            return Err(Error::NotOrthonormal {
                error,
                tolerance: FRAME_TOLERANCE,
            });
        }
        Ok(frame)
    }

    /// Largest of the pairwise dot products and `|det - 1|`.
    pub fn orthonormality_error(&self) -> f64 {
        let (a, b, c) = (*self.e1, *self.e2, *self.e3);
        a.dot(b)
            .abs()
            .max(a.dot(c).abs())
            .max(b.dot(c).abs())
            .max((det3(a, b, c) - 1.0).abs())
    }
}

/// Maximum entry of `G - I` where `G` is the Gram matrix of `vs`.
pub fn gram_error(vs: &[Vec3]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.dot(*b) - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cross_examples() {
        assert_eq!(cross(Vec3::X, Vec3::Y), Vec3::Z);
        let u = Vec3::new(1.3, -2.0, 0.25);
        assert_eq!(cross(u, u), Vec3::ZERO);
        assert_eq!(
            cross(Vec3::new(1.0, 2.0, 3.0), Vec3::new(4.0, 5.0, 6.0)),
            Vec3::new(-3.0, 6.0, -3.0)
        );
    }

    #[test]
    fn det3_examples() {
        assert_eq!(det3(Vec3::X, Vec3::Y, Vec3::Z), 1.0);
        let u = Vec3::new(0.5, 1.0, -1.0);
        assert_eq!(det3(u, u, Vec3::new(3.0, 2.0, 1.0)), 0.0);
        assert_eq!(
            det3(
                Vec3::new(2.0, 0.0, 0.0),
                Vec3::new(0.0, 3.0, 0.0),
                Vec3::new(0.0, 0.0, 4.0)
            ),
            24.0
        );
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(*normalize(Vec3::new(0.0, 0.0, 5.0)).unwrap(), Vec3::Z);
        let v = normalize(Vec3::new(3.0, 4.0, 0.0)).unwrap();
        assert!((v.x - 0.6).abs() < 1e-15 && (v.y - 0.8).abs() < 1e-15 && v.z == 0.0);
        assert!(matches!(
            normalize(Vec3::ZERO),
            Err(Error::NearZeroVector { .. })
        ));
        assert!(normalize(Vec3::new(1e-15, 0.0, 0.0)).is_err());
    }

    #[test]
    fn unit_and_frame_checks() {
        assert!(UnitVec3::try_new(Vec3::new(1.0, 1e-5, 0.0)).is_err());
        assert!(Frame::new(UnitVec3::X, UnitVec3::Y, UnitVec3::Z).is_ok());
        // left-handed
        let minus_z = UnitVec3::try_new(-Vec3::Z).unwrap();
        assert!(Frame::new(UnitVec3::X, UnitVec3::Y, minus_z).is_err());
    }

    fn finite_vec() -> impl Strategy<Value = Vec3> {
        (-1e3..1e3f64, -1e3..1e3f64, -1e3..1e3f64).prop_map(|(x, y, z)| Vec3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn cross_is_orthogonal_to_inputs(u in finite_vec(), v in finite_vec()) {
            let w = cross(u, v);
            let scale = (u.norm() * v.norm()).max(f64::MIN_POSITIVE);
            prop_assert!(w.dot(u).abs() <= 1e-12 * scale * u.norm().max(1.0));
            prop_assert!(w.dot(v).abs() <= 1e-12 * scale * v.norm().max(1.0));
            prop_assert_eq!(cross(v, u), -w);
        }

        #[test]
        fn det3_is_dot_of_cross(u in finite_vec(), v in finite_vec(), w in finite_vec()) {
            prop_assert_eq!(det3(u, v, w), cross(u, v).dot(w));
        }

        #[test]
        fn normalized_has_unit_norm(v in finite_vec()) {
            prop_assume!(v.norm() > NEAR_ZERO_NORM);
            let u = normalize(v).unwrap();
            prop_assert!((u.norm() - 1.0).abs() <= 1e-14);
        }
    }
}
