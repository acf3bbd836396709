//! A bounded solver for small polynomial systems over Q, deciding real solution sets with
//! the elementary moves used in hand eliminations: substitution, linear elimination
//! (branching on the pivot coefficient), sums of squares, monomial factor splitting,
//! one-variable roots and one-variable resultants. Anything else is left Undecided.

use crate::linalg::Matrix;
use crate::poly;
use crate::rational::{q, to_text, Q};
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type Mono = Vec<u16>;

/// Multivariate polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Mono, Q>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        let mut p = MPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        MPoly::constant(n, q(1))
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i] = 1;
        let mut p = MPoly::zero(n);
        p.terms.insert(m, q(1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Q> {
        &self.terms
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            let k: Vec<Mono> = self.terms.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
            for k in k {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Q) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.n);
        }
        MPoly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(MPoly::one(self.n), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> usize {
        self.terms.keys().map(|m| m[i] as usize).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    s.insert(i);
                }
            }
        }
        s
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &x[i];
                }
            }
            s += t;
        }
        s
    }

    /// Coefficient of x_i^k, as a polynomial not involving x_i.
    pub fn coeff_in(&self, i: usize, k: usize) -> MPoly {
        let mut r = MPoly::zero(self.n);
        for (m, c) in &self.terms {
            if m[i] as usize == k {
                let mut m2 = m.clone();
                m2[i] = 0;
                r.add_term(m2, c.clone());
            }
        }
        r
    }

    /// Evaluate x_i at a constant.
    pub fn set_var(&self, i: usize, v: &Q) -> MPoly {
        let d = MPoly::one(self.n);
        self.substitute(i, &MPoly::constant(self.n, v.clone()), &d).0
    }

    /// Substitute x_i = num/den; returns (P, k) with self(x_i = num/den) = P / den^k.
    pub fn substitute(&self, i: usize, num: &MPoly, den: &MPoly) -> (MPoly, u32) {
        let d = self.degree_in(i);
        let mut r = MPoly::zero(self.n);
        let mut num_pows = vec![MPoly::one(self.n)];
        let mut den_pows = vec![MPoly::one(self.n)];
        for _ in 0..d {
            num_pows.push(num_pows.last().unwrap().mul(num));
            den_pows.push(den_pows.last().unwrap().mul(den));
        }
        for k in 0..=d {
            let c = self.coeff_in(i, k);
            if c.is_zero() {
                continue;
            }
            r = r.add(&c.mul(&num_pows[k]).mul(&den_pows[d - k]));
        }
        (r, d as u32)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut m: Option<Mono> = None;
        for k in self.terms.keys() {
            m = Some(match m {
                None => k.clone(),
                Some(p) => p.iter().zip(k).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.n])
    }

    pub fn div_monomial(&self, d: &Mono) -> MPoly {
        MPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.iter().zip(d).map(|(a, b)| a - b).collect(), c.clone())).collect(),
        }
    }

    fn leading(&self) -> Option<(&Mono, &Q)> {
        // graded lex: total degree first
        self.terms.iter().max_by(|a, b| {
            let da: u32 = a.0.iter().map(|&e| e as u32).sum();
            let db: u32 = b.0.iter().map(|&e| e as u32).sum();
            da.cmp(&db).then(a.0.cmp(b.0))
        })
    }

    /// Exact quotient self / g when g divides self.
    pub fn div_exact(&self, g: &MPoly) -> Option<MPoly> {
        if g.is_zero() {
            return None;
        }
        let (gm, gc) = g.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quo = MPoly::zero(self.n);
        let mut guard = 0;
        while !rem.is_zero() {
            guard += 1;
            if guard > 10_000 {
                return None;
            }
            let (rm, rc) = rem.leading().map(|(m, c)| (m.clone(), c.clone()))?;
            if rm.iter().zip(&gm).any(|(a, b)| a < b) {
                return None;
            }
            let m: Mono = rm.iter().zip(&gm).map(|(a, b)| a - b).collect();
            let mut t = MPoly::zero(self.n);
            t.terms.insert(m, &rc / &gc);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(g));
        }
        Some(quo)
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) => {
                let c = c.recip();
                self.scale(&c)
            }
            None => self.clone(),
        }
    }

    pub fn univariate(&self, i: usize) -> Vec<Q> {
        (0..=self.degree_in(i)).map(|k| self.coeff_in(i, k).constant_value().unwrap_or_else(Q::zero)).collect()
    }

    pub fn from_univariate(n: usize, i: usize, c: &[Q]) -> MPoly {
        let x = MPoly::var(n, i);
        let mut r = MPoly::zero(n);
        for (k, ck) in c.iter().enumerate() {
            r = r.add(&x.pow(k as u32).scale(ck));
        }
        r
    }

    pub fn show(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => mono.push(names[i].clone()),
                    _ => mono.push(format!("{}^{}", names[i], e)),
                }
            }
            let body = mono.join("*");
            let s = if body.is_empty() {
                to_text(c)
            } else if *c == q(1) {
                body
            } else if *c == q(-1) {
                format!("-{body}")
            } else {
                format!("{}*{}", to_text(c), body)
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Sylvester resultant in x_i of two polynomials of degree ≤ 2 in x_i.
pub fn resultant(f: &MPoly, g: &MPoly, i: usize) -> Option<MPoly> {
    let (df, dg) = (f.degree_in(i), g.degree_in(i));
    if df == 0 || dg == 0 || df > 2 || dg > 2 {
        return None;
    }
    let n = f.nvars();
    let size = df + dg;
    let fc: Vec<MPoly> = (0..=df).rev().map(|k| f.coeff_in(i, k)).collect();
    let gc: Vec<MPoly> = (0..=dg).rev().map(|k| g.coeff_in(i, k)).collect();
    let mut m = vec![vec![MPoly::zero(n); size]; size];
    for r in 0..dg {
        for (k, c) in fc.iter().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..df {
        for (k, c) in gc.iter().enumerate() {
            m[dg + r][r + k] = c.clone();
        }
    }
    Some(det_poly(&m))
}

fn det_poly(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let nv = m[0][0].nvars();
    let mut acc = MPoly::zero(nv);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> =
            (1..n).map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect()).collect();
        let t = m[0][j].mul(&det_poly(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// For degree ≤ 2: the homogenized Gram matrix over (1, x_v...) for the used variables v.
fn gram(p: &MPoly) -> Option<(Vec<usize>, Matrix)> {
    if p.degree() > 2 {
        return None;
    }
    let vars: Vec<usize> = p.vars().into_iter().collect();
    let k = vars.len() + 1;
    let pos = |i: usize| vars.iter().position(|&v| v == i).unwrap() + 1;
    let mut g = Matrix::zeros(k, k);
    for (m, c) in p.terms() {
        let idx: Vec<usize> = m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
        match idx.len() {
            0 => g.set(0, 0, g.get(0, 0) + c),
            1 => {
                let a = pos(idx[0]);
                let h = c / q(2);
                g.set(0, a, g.get(0, a) + &h);
                g.set(a, 0, g.get(a, 0) + &h);
            }
            _ => {
                let (a, b) = (pos(idx[0]), pos(idx[1]));
                if a == b {
                    g.set(a, a, g.get(a, a) + c);
                } else {
                    let h = c / q(2);
                    g.set(a, b, g.get(a, b) + &h);
                    g.set(b, a, g.get(b, a) + &h);
                }
            }
        }
    }
    Some((vars, g))
}

/// Symmetric LDLᵀ with diagonal pivoting; Some((d, L rows)) when the matrix is semidefinite
/// (all nonzero d of one sign), each L row a linear form in the Gram coordinates.
fn semidefinite_split(g: &Matrix) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let n = g.rows();
    let mut a = g.clone();
    let mut ds = Vec::new();
    let mut ls = Vec::new();
    let mut sign = 0i32;
    loop {
        let piv = (0..n).find(|&i| !a.get(i, i).is_zero());
        let Some(p) = piv else {
            // remaining matrix must vanish for semidefiniteness
            return if a.is_zero() { Some((ds, ls)) } else { None };
        };
        let d = a.get(p, p).clone();
        let s = if d.is_positive() { 1 } else { -1 };
        if sign != 0 && s != sign {
            return None;
        }
        sign = s;
        let row: Vec<Q> = (0..n).map(|j| a.get(p, j) / &d).collect();
        for i in 0..n {
            for j in 0..n {
                let v = a.get(i, j) - &d * &row[i] * &row[j];
                a.set(i, j, v);
            }
        }
        ds.push(d);
        ls.push(row);
    }
}

/// True when p has no real zero: its homogenized Gram matrix is definite.
pub fn nowhere_zero(p: &MPoly) -> bool {
    if let Some(c) = p.constant_value() {
        return !c.is_zero();
    }
    match gram(p) {
        Some((_, g)) => {
            let n = g.rows();
            let s = if g.get(0, 0).is_negative() { g.scale(&q(-1)) } else { g };
            (1..=n).all(|k| {
                let idx: Vec<usize> = (0..k).collect();
                s.select(&idx, &idx).det().is_positive()
            })
        }
        None => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub names: Vec<String>,
    pub equations: Vec<MPoly>,
    pub nonzero: Vec<MPoly>,
}

impl PolySystem {
    pub fn new(names: Vec<String>) -> Self {
        PolySystem { names, equations: Vec::new(), nonzero: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> MPoly {
        MPoly::var(self.nvars(), i)
    }

    pub fn constant(&self, c: Q) -> MPoly {
        MPoly::constant(self.nvars(), c)
    }

    pub fn equation(&mut self, p: MPoly) {
        if !p.is_zero() {
            self.equations.push(p);
        }
    }

    pub fn nonzero(&mut self, p: MPoly) {
        self.nonzero.push(p);
    }

    /// A point solves the system (equations vanish, side conditions do not).
    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        self.equations.iter().all(|e| e.eval(x).is_zero()) && self.nonzero.iter().all(|g| !g.eval(x).is_zero())
    }

    pub fn show(&self) -> Vec<String> {
        let mut v: Vec<String> = self.equations.iter().map(|e| format!("{} = 0", e.show(&self.names))).collect();
        v.extend(self.nonzero.iter().map(|g| format!("{} != 0", g.show(&self.names))));
        v
    }
}

/// x_var = num / den, in terms of the free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub var: usize,
    pub num: MPoly,
    pub den: MPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub assignments: Vec<Assignment>,
    pub free: Vec<usize>,
    pub nonzero: Vec<MPoly>,
}

impl Piece {
    /// The point of the piece at given values of the free variables (None if a side
    /// condition or denominator vanishes there).
    pub fn point(&self, n: usize, free_values: &[Q]) -> Option<Vec<Q>> {
        let mut x = vec![Q::zero(); n];
        for (k, &v) in self.free.iter().enumerate() {
            x[v] = free_values[k].clone();
        }
        for a in &self.assignments {
            let d = a.den.eval(&x);
            if d.is_zero() {
                return None;
            }
            x[a.var] = a.num.eval(&x) / d;
        }
        if self.nonzero.iter().any(|g| g.eval(&x).is_zero()) {
            return None;
        }
        Some(x)
    }

    /// Whether a point lies on the piece.
    pub fn contains(&self, x: &[Q]) -> bool {
        self.assignments.iter().all(|a| {
            let d = a.den.eval(x);
            !d.is_zero() && a.num.eval(x) == &x[a.var] * d
        }) && self.nonzero.iter().all(|g| !g.eval(x).is_zero())
    }

    /// Substitute the piece into a polynomial; the result is a numerator in the free variables.
    pub fn reduce(&self, p: &MPoly) -> MPoly {
        let mut r = p.clone();
        for a in self.assignments.iter().rev() {
            r = r.substitute(a.var, &a.num, &a.den).0;
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// No real solution; the trace lists the moves of every branch.
    Empty { trace: Vec<String> },
    /// Every real solution lies in one of the pieces; each piece is exact and rational.
    Solved { pieces: Vec<Piece>, trace: Vec<String> },
    /// The bounded moves did not decide the system; residual branches are returned.
    Undecided { residual: Vec<PolySystem>, pieces: Vec<Piece>, trace: Vec<String> },
}

impl Solution {
    pub fn is_empty(&self) -> bool {
        matches!(self, Solution::Empty { .. })
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Solution::Undecided { .. })
    }

    pub fn trace(&self) -> &[String] {
        match self {
            Solution::Empty { trace } | Solution::Solved { trace, .. } | Solution::Undecided { trace, .. } => trace,
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        match self {
            Solution::Empty { .. } => &[],
            Solution::Solved { pieces, .. } | Solution::Undecided { pieces, .. } => pieces,
        }
    }
}

#[derive(Clone, Debug)]
struct State {
    eqs: Vec<MPoly>,
    nonzero: Vec<MPoly>,
    assigned: Vec<Assignment>,
    resolved_pairs: BTreeSet<(usize, usize, usize)>,
    depth: usize,
}

enum Step {
    Dead(String),
    Continue(State, String),
    Branch(Vec<(State, String)>),
    Done(State),
    Stuck(State),
}

pub const DEFAULT_BRANCH_BUDGET: usize = 4096;

pub fn solve(sys: &PolySystem) -> Solution {
    solve_with_budget(sys, DEFAULT_BRANCH_BUDGET)
}

pub fn solve_with_budget(sys: &PolySystem, budget: usize) -> Solution {
    let n = sys.nvars();
    let names = &sys.names;
    let mut stack = vec![(
        State {
            eqs: sys.equations.clone(),
            nonzero: sys.nonzero.clone(),
            assigned: Vec::new(),
            resolved_pairs: BTreeSet::new(),
            depth: 0,
        },
        "start".to_string(),
    )];
    let mut trace = Vec::new();
    let mut pieces = Vec::new();
    let mut residual = Vec::new();
    let mut branches = 0usize;
    while let Some((mut st, label)) = stack.pop() {
        branches += 1;
        let mut log = vec![label];
        let over_budget = branches > budget;
        loop {
            if over_budget || st.depth > 64 {
                log.push("budget exhausted".into());
                residual.push(PolySystem { names: names.clone(), equations: st.eqs.clone(), nonzero: st.nonzero.clone() });
                break;
            }
            st.depth += 1;
            match step(st, names) {
                Step::Dead(why) => {
                    log.push(format!("empty: {why}"));
                    break;
                }
                Step::Continue(s, msg) => {
                    log.push(msg);
                    st = s;
                }
                Step::Branch(children) => {
                    let k = children.len();
                    log.push(format!("split into {k} cases"));
                    for (i, (c, msg)) in children.into_iter().enumerate().rev() {
                        stack.push((c, format!("case {}/{}: {}", i + 1, k, msg)));
                    }
                    break;
                }
                Step::Done(st) => {
                    let (piece, msg) = finish_piece(n, &st, names);
                    log.push(msg);
                    pieces.push(piece);
                    break;
                }
                Step::Stuck(st) => {
                    log.push("no applicable move".into());
                    residual.push(PolySystem { names: names.clone(), equations: st.eqs.clone(), nonzero: st.nonzero.clone() });
                    break;
                }
            }
        }
        trace.push(log.join("; "));
    }
    if !residual.is_empty() {
        return Solution::Undecided { residual, pieces, trace };
    }
    if pieces.is_empty() {
        Solution::Empty { trace }
    } else {
        Solution::Solved { pieces, trace }
    }
}

fn finish_piece(n: usize, st: &State, names: &[String]) -> (Piece, String) {
    let assigned: BTreeSet<usize> = st.assigned.iter().map(|a| a.var).collect();
    let free: Vec<usize> = (0..n).filter(|i| !assigned.contains(i)).collect();
    // assignments were kept reduced to free variables; order by variable index
    let mut assignments = st.assigned.clone();
    assignments.sort_by_key(|a| a.var);
    let desc: Vec<String> = assignments
        .iter()
        .map(|a| {
            if a.den.constant_value() == Some(q(1)) {
                format!("{} = {}", names[a.var], a.num.show(names))
            } else {
                format!("{} = ({})/({})", names[a.var], a.num.show(names), a.den.show(names))
            }
        })
        .collect();
    let msg = format!("solved: {}", if desc.is_empty() { "no constraints".into() } else { desc.join(", ") });
    (Piece { assignments, free, nonzero: st.nonzero.clone() }, msg)
}

fn substitute_state(st: &State, var: usize, num: &MPoly, den: &MPoly) -> State {
    let sub = |p: &MPoly| p.substitute(var, num, den).0;
    let mut assigned: Vec<Assignment> = st
        .assigned
        .iter()
        .map(|a| {
            let (an, ka) = a.num.substitute(var, num, den);
            let (ad, kd) = a.den.substitute(var, num, den);
            // an/den^ka ÷ ad/den^kd
            let (an, ad) = if ka >= kd {
                (an, ad.mul(&den.pow(ka - kd)))
            } else {
                (an.mul(&den.pow(kd - ka)), ad)
            };
            let (an, ad) = simplify_ratio(an, ad);
            Assignment { var: a.var, num: an, den: ad }
        })
        .collect();
    assigned.push(Assignment { var, num: num.clone(), den: den.clone() });
    let mut nonzero: Vec<MPoly> = st.nonzero.iter().map(sub).collect();
    if den.constant_value().is_none() {
        nonzero.push(den.clone());
    }
    State {
        eqs: st.eqs.iter().map(sub).collect(),
        nonzero,
        assigned,
        resolved_pairs: BTreeSet::new(),
        depth: st.depth,
    }
}

fn simplify_ratio(num: MPoly, den: MPoly) -> (MPoly, MPoly) {
    if let Some(c) = den.constant_value() {
        if !c.is_zero() {
            let inv = c.recip();
            return (num.scale(&inv), MPoly::one(den.nvars()));
        }
    }
    if let Some(qt) = num.div_exact(&den) {
        return (qt, MPoly::one(den.nvars()));
    }
    (num, den)
}

fn step(mut st: State, names: &[String]) -> Step {
    let show = |p: &MPoly| p.show(names);
    // normalize
    let mut eqs: Vec<MPoly> = Vec::new();
    for e in st.eqs.drain(..) {
        if e.is_zero() {
            continue;
        }
        if let Some(c) = e.constant_value() {
            return Step::Dead(format!("constant equation {} = 0", to_text(&c)));
        }
        let m = e.monic();
        if !eqs.contains(&m) {
            eqs.push(m);
        }
    }
    let mut nonzero: Vec<MPoly> = Vec::new();
    for g in st.nonzero.drain(..) {
        if g.is_zero() {
            return Step::Dead("a quantity required to be nonzero vanishes".into());
        }
        if g.constant_value().is_some() {
            continue;
        }
        let m = g.monic();
        if !nonzero.contains(&m) {
            nonzero.push(m);
        }
    }
    st.eqs = eqs;
    st.nonzero = nonzero;
    if st.eqs.is_empty() {
        return Step::Done(st);
    }

    // cancel factors known to be nonzero, and factors that never vanish
    for (k, e) in st.eqs.iter().enumerate() {
        for g in &st.nonzero {
            if let Some(qt) = e.div_exact(g) {
                let msg = format!("cancel nonzero factor {} in {}", show(g), show(e));
                let mut s = st.clone();
                s.eqs[k] = qt;
                return Step::Continue(s, msg);
            }
        }
        let content = e.monomial_content();
        let pure = e.terms().len() == 1;
        if let Some(i) = content.iter().position(|&x| x > 0).filter(|_| !pure || e.degree() > 1) {
            let xi = MPoly::var(e.nvars(), i);
            let mut mono = vec![0u16; e.nvars()];
            mono[i] = 1;
            let rest = e.div_monomial(&mono);
            if st.nonzero.contains(&xi) {
                let mut s = st.clone();
                s.eqs[k] = rest;
                return Step::Continue(s, format!("cancel nonzero {}", names[i]));
            }
            let mut zero = st.clone();
            zero.eqs[k] = xi.clone();
            let mut nz = st.clone();
            nz.eqs[k] = rest.clone();
            nz.nonzero.push(xi);
            return Step::Branch(vec![
                (zero, format!("{} = 0", names[i])),
                (nz, format!("{} != 0, {} = 0", names[i], show(&rest))),
            ]);
        }
    }
    for (k, e) in st.eqs.iter().enumerate() {
        if e.degree() <= 2 && nowhere_zero(e) {
            return Step::Dead(format!("{} has no real zero", show(e)));
        }
        let _ = k;
    }
    // sums of squares: a semidefinite quadratic vanishes only where each square does
    for (k, e) in st.eqs.iter().enumerate() {
        if e.degree() != 2 {
            continue;
        }
        let Some((vars, g)) = gram(e) else { continue };
        let Some((_, ls)) = semidefinite_split(&g) else { continue };
        let nv = e.nvars();
        let lin: Vec<MPoly> = ls
            .iter()
            .map(|row| {
                let mut p = MPoly::constant(nv, row[0].clone());
                for (t, &v) in vars.iter().enumerate() {
                    p = p.add(&MPoly::var(nv, v).scale(&row[t + 1]));
                }
                p
            })
            .collect();
        let mut s = st.clone();
        s.eqs.remove(k);
        let msg = format!(
            "sum of squares: {} = 0 forces {}",
            show(e),
            lin.iter().map(|l| format!("{} = 0", show(l))).collect::<Vec<_>>().join(", ")
        );
        s.eqs.extend(lin);
        return Step::Continue(s, msg);
    }
    // linear elimination with a constant pivot
    let mut best: Option<(usize, usize, usize)> = None; // (terms, eq, var)
    for (k, e) in st.eqs.iter().enumerate() {
        for i in e.vars() {
            if e.degree_in(i) == 1 && e.coeff_in(i, 1).constant_value().is_some() {
                let t = e.terms().len();
                if best.is_none_or(|b| t < b.0) {
                    best = Some((t, k, i));
                }
            }
        }
    }
    if let Some((_, k, i)) = best {
        let e = &st.eqs[k];
        let c = e.coeff_in(i, 1).constant_value().unwrap();
        let rest = e.coeff_in(i, 0);
        let num = rest.scale(&(-c.recip()));
        let msg = format!("{} = {}", names[i], show(&num));
        let mut s = substitute_state(&st, i, &num, &MPoly::one(e.nvars()));
        s.eqs.retain(|p| !p.is_zero());
        return Step::Continue(s, msg);
    }
    // one-variable equations
    for e in &st.eqs {
        let vs = e.vars();
        if vs.len() != 1 {
            continue;
        }
        let i = *vs.iter().next().unwrap();
        let u = e.univariate(i);
        let roots = poly::rational_roots(&u);
        let mut rest = poly::squarefree(&u);
        for r in &roots {
            rest = poly::divmod(&rest, &poly::linear(r)).0;
        }
        let rd = poly::degree(&rest).unwrap_or(0);
        let rest_real_free = rd == 0 || (rd == 2 && {
            let (a, b, c) = (&rest[2], &rest[1], &rest[0]);
            (b * b - q(4) * a * c).is_negative()
        });
        if !rest_real_free {
            continue;
        }
        if roots.is_empty() {
            return Step::Dead(format!("{} = 0 has no real root", show(e)));
        }
        let children = roots
            .iter()
            .map(|r| {
                let nv = e.nvars();
                (substitute_state(&st, i, &MPoly::constant(nv, r.clone()), &MPoly::one(nv)), format!("{} = {}", names[i], to_text(r)))
            })
            .collect();
        return Step::Branch(children);
    }
    // linear elimination with a polynomial pivot: split on whether the pivot vanishes
    let mut best: Option<(usize, usize, usize)> = None; // (pivot size, eq, var)
    for (k, e) in st.eqs.iter().enumerate() {
        for i in e.vars() {
            if e.degree_in(i) == 1 {
                let c = e.coeff_in(i, 1);
                let size = c.terms().len() * 10 + c.degree();
                if best.is_none_or(|b| size < b.0) {
                    best = Some((size, k, i));
                }
            }
        }
    }
    if let Some((_, k, i)) = best {
        let e = &st.eqs[k];
        let c = e.coeff_in(i, 1);
        let rest = e.coeff_in(i, 0);
        if nowhere_zero(&c) || st.nonzero.contains(&c.monic()) {
            let mut s = substitute_state(&st, i, &rest.neg(), &c);
            s.eqs.retain(|p| !p.is_zero());
            return Step::Continue(s, format!("{} = ({})/({})", names[i], show(&rest.neg()), show(&c)));
        }
        let mut zero = st.clone();
        zero.eqs.push(c.clone());
        let mut nz = substitute_state(&st, i, &rest.neg(), &c);
        nz.eqs.retain(|p| !p.is_zero());
        return Step::Branch(vec![
            (zero, format!("{} = 0", show(&c))),
            (nz, format!("{} != 0, {} = ({})/({})", show(&c), names[i], show(&rest.neg()), show(&c))),
        ]);
    }
    // one-variable resultants of quadratics
    for a in 0..st.eqs.len() {
        for b in a + 1..st.eqs.len() {
            let common: Vec<usize> = st.eqs[a].vars().intersection(&st.eqs[b].vars()).cloned().collect();
            for &i in &common {
                if st.resolved_pairs.contains(&(a, b, i)) {
                    continue;
                }
                let Some(r) = resultant(&st.eqs[a], &st.eqs[b], i) else { continue };
                if r.is_zero() || r.vars().len() >= st.eqs[a].vars().len().max(st.eqs[b].vars().len()) {
                    continue;
                }
                let mut s = st.clone();
                s.resolved_pairs.insert((a, b, i));
                let msg = format!("resultant in {}: {} = 0", names[i], show(&r));
                s.eqs.push(r);
                return Step::Continue(s, msg);
            }
        }
    }
    Step::Stuck(st)
}

/// Re-verify a decided solution: every piece satisfies the equations identically.
pub fn verify_pieces(sys: &PolySystem, sol: &Solution) -> bool {
    sol.pieces().iter().all(|p| sys.equations.iter().all(|e| p.reduce(e).is_zero()))
}

/// The brute-force reference grid: p/q with |p| ≤ 3, 1 ≤ q ≤ 3.
pub fn oracle_values() -> Vec<Q> {
    let mut v: Vec<Q> = Vec::new();
    for d in 1..=3i64 {
        for p in -3..=3i64 {
            let x = Q::new(p.into(), d.into());
            if !v.contains(&x) {
                v.push(x);
            }
        }
    }
    v.sort();
    v
}

/// A point of the oracle grid solving the system, if any (only for ≤ 4 variables).
pub fn oracle_search(sys: &PolySystem) -> Option<Vec<Q>> {
    let n = sys.nvars();
    if n > 4 {
        return None;
    }
    let vals = oracle_values();
    let total = vals.len().pow(n as u32);
    let mut x = vec![Q::zero(); n];
    for mut idx in 0..total {
        for slot in x.iter_mut() {
            *slot = vals[idx % vals.len()].clone();
            idx /= vals.len();
        }
        if sys.satisfied_by(&x) {
            return Some(x.clone());
        }
    }
    None
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.show().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn sys(names: &[&str]) -> PolySystem {
        PolySystem::new(names.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn sum_of_squares_forces_zero() {
        let mut s = sys(&["x", "y"]);
        let (x, y) = (s.var(0), s.var(1));
        s.equation(x.mul(&x).add(&y.mul(&y)));
        let sol = solve(&s);
        let Solution::Solved { pieces, .. } = &sol else { panic!("{sol:?}") };
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].point(2, &[]), Some(vec![q(0), q(0)]));
        s.nonzero(x.clone());
        assert!(solve(&s).is_empty());
    }

    #[test]
    fn aff_case_two_at_lambda_one() {
        // λ a0 b1 + a0 b2 = b1, λ a0 b2 − a0 b1 = b2, 2λ a0 b3 + a1 b2 − a2 b1 = b3, b3 ≠ 0
        let lam = q(1);
        let mut s = sys(&["a0", "a1", "a2", "b1", "b2", "b3"]);
        let v = |i| s.var(i);
        let (a0, a1, a2, b1, b2, b3) = (v(0), v(1), v(2), v(3), v(4), v(5));
        s.equation(a0.mul(&b1).scale(&lam).add(&a0.mul(&b2)).sub(&b1));
        s.equation(a0.mul(&b2).scale(&lam).sub(&a0.mul(&b1)).sub(&b2));
        s.equation(a0.mul(&b3).scale(&(q(2) * &lam)).add(&a1.mul(&b2)).sub(&a2.mul(&b1)).sub(&b3));
        s.nonzero(b3.clone());
        let sol = solve(&s);
        assert!(sol.is_decided(), "{:?}", sol.trace());
        assert!(verify_pieces(&s, &sol));
        for p in sol.pieces() {
            let a0v = p.assignments.iter().find(|a| a.var == 0).expect("a0 determined");
            assert_eq!(a0v.num.constant_value(), Some(qf(1, 2)));
        }
    }

    #[test]
    fn remark_b_system() {
        // ((α²+β²)/β) b2 + (α/β) b3 = 0, (α/β) b2 − ((α²+β²)/β) b3 = 0 at α = β = 1
        let mut s = sys(&["b2", "b3"]);
        let (b2, b3) = (s.var(0), s.var(1));
        s.equation(b2.scale(&q(2)).add(&b3));
        s.equation(b2.sub(&b3.scale(&q(2))));
        let sol = solve(&s);
        let pts: Vec<_> = sol.pieces().iter().map(|p| p.point(2, &[])).collect();
        assert_eq!(pts, vec![Some(vec![q(0), q(0)])]);
    }

    #[test]
    fn quadratic_without_rational_roots_is_undecided() {
        let mut s = sys(&["x"]);
        let x = s.var(0);
        s.equation(x.mul(&x).sub(&s.constant(q(2))));
        assert!(!solve(&s).is_decided());
        let mut s = sys(&["x"]);
        s.equation(x.mul(&x).add(&s.constant(q(2))));
        assert!(solve(&s).is_empty());
    }

    #[test]
    fn polynomial_pivot_branches() {
        // x y = 1, x = y  →  x = y = ±1
        let mut s = sys(&["x", "y"]);
        let (x, y) = (s.var(0), s.var(1));
        s.equation(x.mul(&y).sub(&s.constant(q(1))));
        s.equation(x.sub(&y));
        let sol = solve(&s);
        let mut pts: Vec<Vec<Q>> = sol.pieces().iter().filter_map(|p| p.point(2, &[])).collect();
        pts.sort();
        assert_eq!(pts, vec![vec![q(-1), q(-1)], vec![q(1), q(1)]]);
        assert!(verify_pieces(&s, &sol));
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let (x, y) = (MPoly::var(n, 0), MPoly::var(n, 1));
        let f = x.add(&y).mul(&x.sub(&y));
        assert_eq!(f.div_exact(&x.add(&y)), Some(x.sub(&y)));
        assert_eq!(f.div_exact(&x), None);
    }

    #[test]
    fn resultant_eliminates() {
        let n = 2;
        let (x, y) = (MPoly::var(n, 0), MPoly::var(n, 1));
        // x² − y, x − 1 → res = 1 − y (up to sign)
        let r = resultant(&x.mul(&x).sub(&y), &x.sub(&MPoly::one(n)), 0).unwrap();
        assert_eq!(r.vars(), [1].into_iter().collect());
        assert!(r.eval(&[q(0), q(1)]).is_zero());
    }
}
