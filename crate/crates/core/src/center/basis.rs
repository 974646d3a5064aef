use crate::curve::{CurveData, SklyaninParams};
use crate::exactfield::{CycNum, Scalar};
use crate::freealg::NCPoly;

use super::heisenberg::H3Element;
use super::CenterError;

/// A basis x₁, x₂, x₃ of degree-1 forms together with τ ∈ H₃ permuting it
/// cyclically: τ(x_i) = x_{i+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodBasis {
    /// forms[i] is the coefficient vector of x_{i+1} over (x, y, z).
    pub forms: [[CycNum; 3]; 3],
    pub tau: H3Element,
    /// Row of the four-family table this basis comes from.
    pub family: usize,
}

/// The four candidate families, in search order. Each is τ-cyclic and
/// consists of eigenvectors of a pair of mutually inverse elements of H₃.
pub fn table_family(k: usize) -> [[CycNum; 3]; 3] {
    let w = CycNum::omega();
    let w2 = w.pow(2);
    let one = CycNum::int(1);
    let o = CycNum::int(0);
    match k {
        0 => [
            [one.clone(), o.clone(), o.clone()],
            [o.clone(), one.clone(), o.clone()],
            [o.clone(), o, one],
        ],
        1 => [
            [one.clone(), one.clone(), one.clone()],
            [one.clone(), w2.clone(), w.clone()],
            [one, w, w2],
        ],
        2 => [
            [one.clone(), one.clone(), w2.clone()],
            [one.clone(), w2, one.clone()],
            [one, w.clone(), w],
        ],
        3 => [
            [one.clone(), one.clone(), w.clone()],
            [one.clone(), w, one.clone()],
            [one, w2.clone(), w2],
        ],
        _ => panic!("there are four table families"),
    }
}

/// Table row for the class of ρ₂^a ρ₃^b.
pub fn family_for_class(rho: &H3Element) -> usize {
    match (rho.e[1], rho.e[2]) {
        (_, 0) => 0,
        (0, _) => 1,
        (2, 1) | (1, 2) => 2,
        _ => 3,
    }
}

/// The element τ with τ(x_i) = x_{i+1} exactly, if any.
pub fn find_tau(forms: &[[CycNum; 3]; 3]) -> Option<H3Element> {
    H3Element::all().find(|h| (0..3).all(|i| h.apply_linear(&forms[i]) == forms[(i + 1) % 3]))
}

impl GoodBasis {
    pub fn from_family(k: usize) -> Self {
        let forms = table_family(k);
        let tau = find_tau(&forms).expect("every table family is tau-cyclic");
        GoodBasis {
            forms,
            tau,
            family: k,
        }
    }

    pub fn elements(&self) -> [NCPoly<CycNum>; 3] {
        [0, 1, 2].map(|i| NCPoly::linear(self.forms[i].clone()))
    }

    /// Inverse of the change of basis: coefficient vectors expressing
    /// x, y, z in terms of x₁, x₂, x₃.
    pub fn inverse_forms(&self) -> [[CycNum; 3]; 3] {
        // columns of M are the x_i
        let m: Vec<Vec<CycNum>> = (0..3)
            .map(|r| (0..3).map(|i| self.forms[i][r].clone()).collect())
            .collect();
        let inv = crate::linalg::inverse(&m).expect("good basis is linearly independent");
        // row r of inv gives the x_i-coordinates of generator r
        [0, 1, 2].map(|r| [0, 1, 2].map(|i| inv[i][r].clone()))
    }
}

/// For 3 | n: the class of ρ = σ^{n/3} modulo ⟨ρ₁⟩, found by matching
/// (n/3)·[a:b:c] against the image of the origin under each ρ₂^a ρ₃^b.
pub fn identify_rho(params: &SklyaninParams, n: u32) -> Result<H3Element, CenterError> {
    if n % 3 != 0 {
        return Err(CenterError::Rho(format!("3 does not divide n = {n}")));
    }
    let cd = CurveData::new(params);
    let q = cd.group_mul((n / 3) as i64, &cd.translation_point)?;
    for a in 0..3u8 {
        for b in 0..3u8 {
            if a == 0 && b == 0 {
                continue;
            }
            let h = H3Element::new(0, a, b);
            if h.point_map(&cd.origin) == q {
                return Ok(h);
            }
        }
    }
    Err(CenterError::Rho(format!(
        "no element of H3 translates the origin to {q}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_cyclic_eigenbases() {
        for k in 0..4 {
            let b = GoodBasis::from_family(k);
            assert_eq!(b.tau.apply_linear(&b.forms[2]), b.forms[0]);
            // each x_i is an eigenvector of the table's ρ-class with distinct eigenvalues
            let rho = match k {
                0 => H3Element::new(0, 1, 0),
                1 => H3Element::new(0, 0, 1),
                2 => H3Element::new(0, 2, 1),
                _ => H3Element::new(0, 1, 1),
            };
            let mut eig = Vec::new();
            for f in &b.forms {
                let img = rho.apply_linear(f);
                let k = (0..3).find(|&j| !f[j].is_zero_val()).unwrap();
                let lam = &img[k] * &f[k].inv().unwrap();
                for j in 0..3 {
                    assert_eq!(img[j], &lam * &f[j], "family {k}");
                }
                eig.push(lam);
            }
            assert!(eig[0] != eig[1] && eig[1] != eig[2] && eig[0] != eig[2]);
        }
    }

    #[test]
    fn rho_for_the_degree_six_example() {
        let p = SklyaninParams::ints(1, -1, -1).unwrap();
        let rho = identify_rho(&p, 6).unwrap();
        assert_eq!(family_for_class(&rho), 1);
        assert_eq!(rho.e[1], 0);
    }
}
