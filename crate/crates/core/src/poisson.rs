//! The Poisson bracket on Z = 𝕜[z1, z2, z3, g]/(F) with {z_i, z_j} = ∂F/∂z_k
//! for (i, j, k) cyclic and g Poisson-central.

use crate::commpoly::CPoly;
use crate::center::G;
use crate::exactfield::CycNum;

#[derive(Clone, Debug, PartialEq)]
pub struct PoissonStructure {
    pub f: CPoly,
    /// {z1,z2}, {z2,z3}, {z3,z1}
    pub brackets: [CPoly; 3],
}

impl PoissonStructure {
    pub fn from_f(f: &CPoly) -> Self {
        PoissonStructure {
            f: f.clone(),
            brackets: [f.partial(2), f.partial(0), f.partial(1)],
        }
    }

    /// Build from three given brackets (used for scaled or induced structures).
    pub fn from_brackets(f: &CPoly, brackets: [CPoly; 3]) -> Self {
        PoissonStructure {
            f: f.clone(),
            brackets,
        }
    }

    /// {v_a, v_b} for variables indexed z1, z2, z3, g.
    pub fn bracket_vars(&self, a: usize, b: usize) -> CPoly {
        if a == b || a == G || b == G {
            return CPoly::zero(4);
        }
        match (a, b) {
            (0, 1) => self.brackets[0].clone(),
            (1, 2) => self.brackets[1].clone(),
            (2, 0) => self.brackets[2].clone(),
            _ => self.bracket_vars(b, a).neg(),
        }
    }

    /// {p, q} extended by the Leibniz rule, not reduced.
    pub fn bracket(&self, p: &CPoly, q: &CPoly) -> CPoly {
        let mut out = CPoly::zero(4);
        for a in 0..3 {
            let dp = p.partial(a);
            if dp.is_zero() {
                continue;
            }
            for b in 0..3 {
                if a == b {
                    continue;
                }
                let dq = q.partial(b);
                if dq.is_zero() {
                    continue;
                }
                out = out.add(&dp.mul(&dq).mul(&self.bracket_vars(a, b)));
            }
        }
        out
    }

    /// Remainder modulo (F), which is monic in g.
    pub fn reduce(&self, p: &CPoly) -> CPoly {
        p.rem_monic(&self.f, G)
    }

    /// Cyclic Jacobi sums over {z1,z2,z3} and each pair with g, reduced mod F.
    pub fn jacobi_residues(&self) -> Vec<CPoly> {
        let v = |i| CPoly::var(4, i);
        let triples = [(0, 1, 2), (0, 1, G), (0, 2, G), (1, 2, G)];
        triples
            .iter()
            .map(|&(a, b, c)| {
                let (a, b, c) = (v(a), v(b), v(c));
                let s = self
                    .bracket(&self.bracket(&a, &b), &c)
                    .add(&self.bracket(&self.bracket(&b, &c), &a))
                    .add(&self.bracket(&self.bracket(&c, &a), &b));
                self.reduce(&s)
            })
            .collect()
    }

    /// {pq, r} = p{q, r} + q{p, r} modulo F.
    pub fn leibniz_check(&self, p: &CPoly, q: &CPoly, r: &CPoly) -> bool {
        let lhs = self.bracket(&p.mul(q), r);
        let rhs = p.mul(&self.bracket(q, r)).add(&q.mul(&self.bracket(p, r)));
        self.reduce(&lhs.sub(&rhs)).is_zero()
    }

    /// Multiply every bracket by a scalar.
    pub fn scaled(&self, eta: &CycNum) -> Self {
        PoissonStructure {
            f: self.f.clone(),
            brackets: self.brackets.clone().map(|b| b.scale(eta)),
        }
    }
}

/// Σ z_i ∂F/∂z_i + (3/n) g ∂F/∂g − 3F; zero for weighted-homogeneous F.
pub fn euler_defect(f: &CPoly, n: u32) -> CPoly {
    let mut s = f.scale(&CycNum::int(-3));
    for i in 0..3 {
        s = s.add(&CPoly::var(4, i).mul(&f.partial(i)));
    }
    let gt = CPoly::var(4, G)
        .mul(&f.partial(G))
        .scale(&CycNum::frac(3, n as i64));
    s.add(&gt)
}

/// F(β^n z1, β^n z2, β^n z3, β³ g) − β^{3n} F(z1, z2, z3, g) at a point.
pub fn dilation_defect(f: &CPoly, n: u32, beta: &CycNum, pt: &[CycNum; 4]) -> CycNum {
    use crate::exactfield::Scalar;
    let bn = beta.pow(n);
    let moved = [&bn * &pt[0], &bn * &pt[1], &bn * &pt[2], &beta.pow(3) * &pt[3]];
    &f.eval(&moved) - &(&beta.pow(3 * n) * &f.eval(pt))
}
