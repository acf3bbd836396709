//! Univariate polynomials over Q (coefficients low degree first) and rational root finding.

use crate::rational::{one, q, zero, Q};
use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

pub type Poly = Vec<Q>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Q]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(zero(), |acc, c| acc * x + c)
}

pub fn mul(a: &[Q], b: &[Q]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn derivative(p: &[Q]) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
}

/// Quotient and remainder.
pub fn divmod(a: &[Q], b: &[Q]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    let lead = b[db].clone();
    let mut quo = vec![zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &c * bc;
        }
        quo[dr - db] = c;
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn monic(p: &[Q]) -> Poly {
    let p = trim(p.to_vec());
    match p.last() {
        None => p,
        Some(l) => {
            let l = l.clone();
            p.iter().map(|c| c / &l).collect()
        }
    }
}

pub fn gcd(a: &[Q], b: &[Q]) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while degree(&b).is_some() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

pub fn squarefree(p: &[Q]) -> Poly {
    let g = gcd(p, &derivative(p));
    monic(&divmod(p, &g).0)
}

/// Primitive integer polynomial with positive leading coefficient proportional to `p`.
pub fn primitive(p: &[Q]) -> Vec<BigInt> {
    let p = trim(p.to_vec());
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Approximate roots of a squarefree polynomial (Durand–Kerner on the monic f64 image).
fn approx_roots(p: &[Q]) -> Vec<(f64, f64)> {
    let p = monic(p);
    let n = degree(&p).unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    let c: Vec<f64> = p.iter().map(to_f64).collect();
    let bound = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let th = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (bound * 0.9 * th.cos(), bound * 0.9 * th.sin())
        })
        .collect();
    let ev = |x: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for k in (0..=n).rev() {
            acc = (acc.0 * x.0 - acc.1 * x.1 + c[k], acc.0 * x.1 + acc.1 * x.0);
        }
        acc
    };
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let num = ev(z[i]);
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                }
            }
            let dd = den.0 * den.0 + den.1 * den.1;
            if dd == 0.0 {
                continue;
            }
            let step = ((num.0 * den.0 + num.1 * den.1) / dd, (num.1 * den.0 - num.0 * den.1) / dd);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            delta = delta.max(step.0.abs() + step.1.abs());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// Convergents of the continued fraction of an exact rational, denominators up to `max_den`.
fn convergents(x: &Q, max_den: &BigInt) -> Vec<Q> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    for _ in 0..200 {
        let a = r.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            break;
        }
        out.push(Q::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = &r - Q::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
    }
    out
}

fn f64_to_q(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(zero)
}

/// All distinct rational roots, ascending.
pub fn rational_roots(p: &[Q]) -> Vec<Q> {
    let s = squarefree(p);
    let Some(n) = degree(&s) else { return vec![] };
    if n == 0 {
        return vec![];
    }
    let ints = primitive(&s);
    let lead = ints[n].abs();
    let ds = derivative(&s);
    let mut found: Vec<Q> = Vec::new();
    if s[0].is_zero() {
        found.push(zero());
    }
    for (re, im) in approx_roots(&s) {
        if im.abs() > 1e-6 * (1.0 + re.abs()) {
            continue;
        }
        let snap = |r: &Q| {
            convergents(r, &lead)
                .into_iter()
                .filter(|c| eval(&s, c).is_zero())
                .min_by(|a, b| (a - r).abs().cmp(&(b - r).abs()))
        };
        let mut r = f64_to_q(re);
        let mut hit = snap(&r);
        for _ in 0..3 {
            if hit.is_some() {
                break;
            }
            let d = eval(&ds, &r);
            if d.is_zero() {
                break;
            }
            r = &r - eval(&s, &r) / d;
            hit = snap(&r);
        }
        let Some(r) = hit else { continue };
        if eval(&s, &r).is_zero() && !found.contains(&r) {
            found.push(r);
        }
    }
    found.sort();
    found
}

/// (x − r)
pub fn linear(r: &Q) -> Poly {
    vec![-r.clone(), one()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn from_roots(rs: &[Q]) -> Poly {
        rs.iter().fold(vec![one()], |acc, r| mul(&acc, &linear(r)))
    }

    #[test]
    fn finds_rational_roots() {
        let p = from_roots(&[qf(1, 3), qf(-5, 7), q(2), q(2)]);
        assert_eq!(rational_roots(&p), vec![qf(-5, 7), qf(1, 3), q(2)]);
        let p = from_roots(&[q(0), q(1), qf(1, 3)]);
        assert_eq!(rational_roots(&p), vec![q(0), qf(1, 3), q(1)]);
    }

    #[test]
    fn ignores_complex_and_irrational() {
        let p = mul(&[q(1), q(0), q(1)], &[q(-2), q(0), q(1)]);
        assert!(rational_roots(&p).is_empty());
        let p = mul(&p, &linear(&qf(-37, 12)));
        assert_eq!(rational_roots(&p), vec![qf(-37, 12)]);
    }

    #[test]
    fn large_heights() {
        let p = from_roots(&[qf(123457, 9871), qf(-99991, 4096), qf(1, 1000003)]);
        assert_eq!(rational_roots(&p).len(), 3);
    }

    #[test]
    fn division() {
        let p = from_roots(&[q(1), q(2), q(3)]);
        let (quo, r) = divmod(&p, &linear(&q(2)));
        assert!(r.is_empty());
        assert_eq!(quo, from_roots(&[q(1), q(3)]));
        assert_eq!(squarefree(&mul(&p, &linear(&q(1)))), p);
    }
}
