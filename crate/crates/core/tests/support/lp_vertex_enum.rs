//! Brute-force LP solver: tries every choice of `n` linearly independent
//! tight constraints, solves for the vertex and keeps the best feasible one.
//! Exponential, so only for instances with a handful of variables.

use num_traits::{One, Signed, Zero};
use stoc_core::lp::{LpInstance, Sense};
use stoc_core::Rational;

struct Constraint {
    a: Vec<Rational>,
    b: Rational,
    sense: Sense,
}

fn constraints(inst: &LpInstance) -> Vec<Constraint> {
    let n = inst.objective.len();
    let mut out = Vec::new();
    for row in &inst.rows {
        let mut a = vec![Rational::zero(); n];
        for (j, v) in &row.coeffs {
            a[*j] += v;
        }
        out.push(Constraint {
            a,
            b: row.rhs.clone(),
            sense: row.sense,
        });
    }
    for j in 0..n {
        let mut a = vec![Rational::zero(); n];
        a[j] = Rational::one();
        out.push(Constraint {
            a: a.clone(),
            b: Rational::zero(),
            sense: Sense::Ge,
        });
        if let Some(u) = &inst.upper[j] {
            out.push(Constraint {
                a,
                b: u.clone(),
                sense: Sense::Le,
            });
        }
    }
    out
}

fn satisfied(c: &Constraint, x: &[Rational]) -> bool {
    let lhs: Rational = c.a.iter().zip(x).map(|(a, v)| a * v).sum();
    match c.sense {
        Sense::Ge => lhs >= c.b,
        Sense::Le => lhs <= c.b,
        Sense::Eq => lhs == c.b,
    }
}

/// Adds `a` to the echelon form when it is independent of it.
fn push_independent(echelon: &mut Vec<(usize, Vec<Rational>)>, c: &Constraint) -> bool {
    let mut r = c.a.clone();
    r.push(c.b.clone());
    for (p, row) in echelon.iter() {
        if !r[*p].is_zero() {
            let f = r[*p].clone() / &row[*p];
            for (v, s) in r.iter_mut().zip(row) {
                *v -= &f * s;
            }
        }
    }
    match r[..c.a.len()].iter().position(|v| !v.is_zero()) {
        Some(p) => {
            echelon.push((p, r));
            true
        }
        None => false,
    }
}

/// Solves a full-rank echelon system (each row zero on earlier pivots).
fn back_substitute(echelon: &[(usize, Vec<Rational>)], n: usize) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); n];
    for (p, row) in echelon.iter().rev() {
        let rest: Rational = (0..n).filter(|&j| j != *p).map(|j| &row[j] * &x[j]).sum();
        x[*p] = (&row[n] - rest) / &row[*p];
    }
    x
}

/// Depth-first choice of inequalities to make tight, skipping any choice
/// that is already linearly dependent.
fn extend(
    ineqs: &[&Constraint],
    start: usize,
    n: usize,
    echelon: Vec<(usize, Vec<Rational>)>,
    f: &mut dyn FnMut(Vec<Rational>),
) {
    if echelon.len() == n {
        f(back_substitute(&echelon, n));
        return;
    }
    for i in start..ineqs.len() {
        if ineqs.len() - i < n - echelon.len() {
            break;
        }
        let mut next = echelon.clone();
        if !push_independent(&mut next, ineqs[i]) {
            continue;
        }
        extend(ineqs, i + 1, n, next, f);
    }
}

/// Minimum objective over all vertices of the feasible region, or `None`
/// when no vertex is feasible. Assumes the minimum is finite.
pub fn vertex_enum_min(inst: &LpInstance) -> Option<Rational> {
    let n = inst.objective.len();
    if n == 0 {
        return Some(Rational::zero());
    }
    let all = constraints(inst);
    let (eqs, ineqs): (Vec<&Constraint>, Vec<&Constraint>) =
        all.iter().partition(|c| c.sense == Sense::Eq);
    let mut best: Option<Rational> = None;
    let mut consider = |x: Vec<Rational>| {
        if x.iter().any(|v| v.is_negative()) || !all.iter().all(|c| satisfied(c, &x)) {
            return;
        }
        let value: Rational = inst.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        if best.as_ref().is_none_or(|b| &value < b) {
            best = Some(value);
        }
    };
    // Every vertex makes all equalities tight, so keep a maximal
    // independent subset of them and pick the rest among the inequalities.
    let mut echelon = Vec::new();
    for e in eqs {
        push_independent(&mut echelon, e);
    }
    extend(&ineqs, 0, n, echelon, &mut consider);
    best
}
