//! Real Jordan data of rational matrices whose characteristic polynomial splits into
//! factors of degree at most two over Q.

use crate::linalg::Matrix;
use crate::poly::{self, Poly};
use crate::rational::{q, sqrt_exact, Q};
use num::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JordanError {
    #[error("characteristic polynomial has an irreducible factor of degree {0} over Q")]
    IrreducibleCubicOrWorse(usize),
    #[error("characteristic polynomial has a pair of irrational real roots (discriminant {0})")]
    IrrationalRealPair(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorKind {
    /// x − λ
    Linear { lambda: Q },
    /// x² − 2ax + (a² + b²), b > 0; `b_sq` is always rational, `b` only when it is.
    Quadratic { a: Q, b_sq: Q },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanFactor {
    pub kind: FactorKind,
    pub multiplicity: usize,
    /// Block sizes, descending (for quadratic factors, sizes of real 2×2-block chains).
    pub blocks: Vec<usize>,
}

impl JordanFactor {
    pub fn degree(&self) -> usize {
        match self.kind {
            FactorKind::Linear { .. } => 1,
            FactorKind::Quadratic { .. } => 2,
        }
    }

    pub fn poly(&self) -> Poly {
        match &self.kind {
            FactorKind::Linear { lambda } => poly::linear(lambda),
            FactorKind::Quadratic { a, b_sq } => vec![a * a + b_sq, q(-2) * a, q(1)],
        }
    }

    pub fn b(&self) -> Option<Q> {
        match &self.kind {
            FactorKind::Quadratic { b_sq, .. } => sqrt_exact(b_sq),
            FactorKind::Linear { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanData {
    pub char_poly: Poly,
    pub factors: Vec<JordanFactor>,
}

impl JordanData {
    pub fn linear(&self) -> impl Iterator<Item = (&Q, &JordanFactor)> {
        self.factors.iter().filter_map(|f| match &f.kind {
            FactorKind::Linear { lambda } => Some((lambda, f)),
            _ => None,
        })
    }

    pub fn quadratic(&self) -> Option<&JordanFactor> {
        self.factors.iter().find(|f| matches!(f.kind, FactorKind::Quadratic { .. }))
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.factors.iter().all(|f| f.blocks.iter().all(|&b| b == 1))
    }

    pub fn reconstruct(&self) -> Poly {
        let mut p = vec![q(1)];
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                p = poly::mul(&p, &f.poly());
            }
        }
        p
    }
}

fn eval_matrix(p: &[Q], m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = acc.mul(m).add(&Matrix::scalar(n, c));
    }
    acc
}

/// Block sizes from kernel dimensions of powers of `f(A)`, divided by `deg`.
fn blocks_from_kernels(fa: &Matrix, mult: usize, deg: usize) -> Vec<usize> {
    let n = fa.rows();
    let mut dims = vec![0usize];
    let mut pw = Matrix::identity(n);
    for _ in 0..mult {
        pw = pw.mul(fa);
        dims.push((n - pw.rank()) / deg);
    }
    // number of blocks of size ≥ k is dims[k] − dims[k−1]
    let ge: Vec<usize> = (1..=mult).map(|k| dims[k] - dims[k - 1]).collect();
    let mut blocks = Vec::new();
    for k in (1..=mult).rev() {
        let exactly = ge[k - 1] - if k < mult { ge[k] } else { 0 };
        blocks.extend(std::iter::repeat_n(k, exactly));
    }
    blocks
}

fn multiplicity(p: &[Q], f: &[Q]) -> usize {
    let mut m = 0;
    let mut cur = p.to_vec();
    loop {
        let (quo, r) = poly::divmod(&cur, f);
        if !r.is_empty() {
            return m;
        }
        m += 1;
        cur = quo;
    }
}

pub fn jordan_data(m: &Matrix) -> Result<JordanData, JordanError> {
    assert!(m.is_square(), "jordan data needs a square matrix");
    let cp = m.char_poly();
    let roots = poly::rational_roots(&cp);
    let mut rest = poly::squarefree(&cp);
    let mut factors = Vec::new();
    for r in &roots {
        let f = poly::linear(r);
        rest = poly::divmod(&rest, &f).0;
        let mult = multiplicity(&cp, &f);
        let fa = m.sub(&Matrix::scalar(m.rows(), r));
        factors.push(JordanFactor {
            kind: FactorKind::Linear { lambda: r.clone() },
            multiplicity: mult,
            blocks: blocks_from_kernels(&fa, mult, 1),
        });
    }
    match poly::degree(&rest) {
        None | Some(0) => {}
        Some(2) => {
            let rest = poly::monic(&rest);
            // x² + px + c
            let p = &rest[1];
            let c = &rest[0];
            let disc = p * p - q(4) * c;
            if !disc.is_negative() {
                return Err(JordanError::IrrationalRealPair(crate::rational::to_text(&disc)));
            }
            let a = -p / q(2);
            let b_sq = c - &a * &a;
            let mult = multiplicity(&cp, &rest);
            let fa = eval_matrix(&rest, m);
            factors.push(JordanFactor {
                kind: FactorKind::Quadratic { a, b_sq },
                multiplicity: mult,
                blocks: blocks_from_kernels(&fa, mult, 2),
            });
        }
        Some(d) => return Err(JordanError::IrreducibleCubicOrWorse(d)),
    }
    Ok(JordanData { char_poly: cp, factors })
}

/// Basis of ker f(A).
pub fn kernel_of_poly(m: &Matrix, f: &[Q]) -> Vec<Vec<Q>> {
    eval_matrix(f, m).kernel()
}

pub fn poly_of_matrix(p: &[Q], m: &Matrix) -> Matrix {
    eval_matrix(p, m)
}

pub fn is_nilpotent(m: &Matrix) -> bool {
    m.pow(m.rows()).is_zero()
}

pub fn zero_blocks(data: &JordanData) -> Vec<usize> {
    data.linear().find(|(l, _)| l.is_zero()).map(|(_, f)| f.blocks.clone()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn single_three_block() {
        // ad(e0) on g' in r4
        let a = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let j = jordan_data(&a).unwrap();
        assert_eq!(j.factors.len(), 1);
        assert_eq!(j.factors[0].blocks, vec![3]);
        assert_eq!(j.reconstruct(), j.char_poly);
    }

    #[test]
    fn zero_matrix() {
        let j = jordan_data(&Matrix::zeros(3, 3)).unwrap();
        assert_eq!(j.factors[0].blocks, vec![1, 1, 1]);
    }

    #[test]
    fn rotation_pair() {
        let (mu, lam) = (q(2), qf(1, 3));
        let mut a = Matrix::zeros(3, 3);
        a.set(0, 0, mu.clone());
        a.set(1, 1, lam.clone());
        a.set(2, 1, q(-1));
        a.set(1, 2, q(1));
        a.set(2, 2, lam.clone());
        let j = jordan_data(&a).unwrap();
        assert_eq!(j.factors.len(), 2);
        let qf_ = j.quadratic().unwrap();
        assert_eq!(qf_.kind, FactorKind::Quadratic { a: lam, b_sq: q(1) });
        assert_eq!(qf_.b(), Some(q(1)));
        assert_eq!(j.reconstruct(), j.char_poly);
    }

    #[test]
    fn refuses_cubic() {
        // companion of x³ − 2
        let a = Matrix::from_i64(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(jordan_data(&a), Err(JordanError::IrreducibleCubicOrWorse(3)));
    }

    #[test]
    fn mixed_blocks() {
        let a = Matrix::from_i64(&[&[2, 1, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, -1]]);
        let j = jordan_data(&a).unwrap();
        let two = j.linear().find(|(l, _)| **l == q(2)).unwrap().1;
        assert_eq!(two.blocks, vec![2, 1]);
        assert_eq!(two.multiplicity, 3);
    }
}
