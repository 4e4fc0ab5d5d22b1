//! Quaternions as SU(2): `w + x i + y j + z k`, with `i² = j² = k² = ijk = −1`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn pure(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalize(self) -> Self {
        let n = self.norm();
        Self::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    /// Inverse of a unit quaternion.
    pub fn inv(self) -> Self {
        self.conj()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(s * self.w, s * self.x, s * self.y, s * self.z)
    }

    pub fn powi(self, e: i32) -> Self {
        match e {
            1 => self,
            -1 => self.inv(),
            _ => {
                let base = if e < 0 { self.inv() } else { self };
                (0..e.unsigned_abs()).fold(Self::ONE, |acc, _| acc * base)
            }
        }
    }

    /// `exp` of a pure quaternion `v`.
    pub fn exp_pure(v: [f64; 3]) -> Self {
        let t = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if t < 1e-300 {
            return Self::ONE;
        }
        let s = t.sin() / t;
        Self::new(t.cos(), s * v[0], s * v[1], s * v[2])
    }

    pub fn distance(self, o: Self) -> f64 {
        (self - o).norm()
    }

    /// Conjugation `q v q⁻¹` on pure quaternions, as a rotation matrix
    /// acting on `(i, j, k)` coordinates.
    pub fn adjoint(self) -> [[f64; 3]; 3] {
        let (w, x, y, z) = (self.w, self.x, self.y, self.z);
        [
            [
                w * w + x * x - y * y - z * z,
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                w * w - x * x + y * y - z * z,
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                w * w - x * x - y * y + z * z,
            ],
        ]
    }

    /// `q v q⁻¹` for a unit quaternion `q` and pure `v`.
    pub fn rotate(self, v: [f64; 3]) -> [f64; 3] {
        (self * Self::pure(v) * self.inv()).vector()
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}
