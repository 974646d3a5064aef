use std::fmt;

use crate::curve::ProjPoint;
use crate::exactfield::{CycNum, Scalar};
use crate::freealg::NCPoly;

pub type Mat3 = [[CycNum; 3]; 3];

/// ρ₁^e1 ρ₂^e2 ρ₃^e3 in the Heisenberg group of order 27, acting on
/// span{x, y, z}: ρ₁ is the scalar ζ, ρ₂ = diag(1, ζ, ζ²) and ρ₃ sends
/// (x, y, z) to (y, z, x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct H3Element {
    pub e: [u8; 3],
}

fn zero() -> CycNum {
    CycNum::int(0)
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = zero();
            for k in 0..3 {
                s = &s + &(&a[i][k] * &b[k][j]);
            }
            s
        })
    })
}

fn ident() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| CycNum::int((i == j) as i64)))
}

impl H3Element {
    pub const IDENTITY: H3Element = H3Element { e: [0, 0, 0] };

    pub fn new(e1: u8, e2: u8, e3: u8) -> Self {
        H3Element {
            e: [e1 % 3, e2 % 3, e3 % 3],
        }
    }

    pub fn all() -> impl Iterator<Item = H3Element> {
        (0..27u8).map(|k| H3Element::new(k / 9, (k / 3) % 3, k % 3))
    }

    fn generator(i: usize) -> Mat3 {
        let w = CycNum::omega();
        let mut m = ident();
        match i {
            0 => {
                for (k, row) in m.iter_mut().enumerate() {
                    row[k] = w.clone();
                }
            }
            1 => {
                m[1][1] = w.clone();
                m[2][2] = w.pow(2);
            }
            _ => {
                // column j holds the image of generator j
                m = [
                    [zero(), zero(), CycNum::int(1)],
                    [CycNum::int(1), zero(), zero()],
                    [zero(), CycNum::int(1), zero()],
                ];
            }
        }
        m
    }

    /// Matrix whose column j is the image of generator j.
    pub fn matrix(&self) -> Mat3 {
        let mut m = ident();
        for (i, &k) in self.e.iter().enumerate() {
            let g = Self::generator(i);
            for _ in 0..k {
                m = mat_mul(&m, &g);
            }
        }
        m
    }

    /// The element whose matrix is the product of the two matrices.
    pub fn compose(&self, other: &H3Element) -> H3Element {
        let m = mat_mul(&self.matrix(), &other.matrix());
        Self::all()
            .find(|h| h.matrix() == m)
            .expect("H3 is closed under composition")
    }

    pub fn inverse(&self) -> H3Element {
        Self::all()
            .find(|h| self.compose(h) == Self::IDENTITY)
            .expect("group element has an inverse")
    }

    /// Image of the linear form with coefficient vector `c` over (x, y, z).
    pub fn apply_linear(&self, c: &[CycNum; 3]) -> [CycNum; 3] {
        let m = self.matrix();
        [0, 1, 2].map(|i| {
            let mut s = zero();
            for j in 0..3 {
                s = &s + &(&m[i][j] * &c[j]);
            }
            s
        })
    }

    /// Induced map on points of ℙ².
    pub fn point_map(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.apply_linear(p.coords())).expect("invertible map")
    }

    /// Apply the graded automorphism to an element of the free algebra.
    pub fn apply(&self, p: &NCPoly<CycNum>) -> NCPoly<CycNum> {
        let imgs = [0, 1, 2].map(|j| {
            let mut c = [zero(), zero(), zero()];
            c[j] = CycNum::int(1);
            NCPoly::linear(self.apply_linear(&c))
        });
        p.substitute(&imgs)
    }
}

impl fmt::Display for H3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &k) in self.e.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("rho{}", i + 1)),
                _ => parts.push(format!("rho{}^{}", i + 1, k)),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}
