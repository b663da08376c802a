//! Linear programs with exact rational data, solved by a dense two-phase
//! simplex method with Bland's rule.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::{One, Signed, Zero};

use crate::rational::{to_fraction_string, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpRow {
    pub name: String,
    /// Sparse `(variable, coefficient)` pairs.
    pub coeffs: Vec<(usize, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

/// Minimize `objective · x` subject to `rows`, `0 <= x` and the optional
/// per-variable upper bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct LpInstance {
    pub names: Vec<String>,
    pub objective: Vec<Rational>,
    pub rows: Vec<LpRow>,
    pub upper: Vec<Option<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
}

impl LpInstance {
    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.objective.len();
        if self.names.len() != n || self.upper.len() != n {
            return Err(Error::Invalid(
                "variable names, costs and bounds differ in length".into(),
            ));
        }
        for row in &self.rows {
            if let Some(&(j, _)) = row.coeffs.iter().find(|(j, _)| *j >= n) {
                return Err(Error::Invalid(format!(
                    "row {} references missing variable {j}",
                    row.name
                )));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Checks every constraint and bound exactly.
    pub fn check_feasible(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.variable_count() {
            return Err(Error::LengthMismatch {
                expected: self.variable_count(),
                got: x.len(),
            });
        }
        for (j, v) in x.iter().enumerate() {
            if v.is_negative() || self.upper[j].as_ref().is_some_and(|u| v > u) {
                return Err(Error::Invalid(format!(
                    "{} = {} is out of bounds",
                    self.names[j],
                    to_fraction_string(v)
                )));
            }
        }
        for row in &self.rows {
            let lhs: Rational = row.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
            let ok = match row.sense {
                Sense::Ge => lhs >= row.rhs,
                Sense::Le => lhs <= row.rhs,
                Sense::Eq => lhs == row.rhs,
            };
            if !ok {
                return Err(Error::Invalid(format!(
                    "constraint {} is violated",
                    row.name
                )));
            }
        }
        Ok(())
    }

    /// Plain-text dump: one objective line, one line per constraint and one
    /// per bound, coefficients written as `p/q`.
    pub fn to_text(&self) -> String {
        let pq = |a: &Rational| format!("{}/{}", a.numer(), a.denom());
        let term = |a: &Rational, j: usize| format!("{} {}", pq(a), self.names[j]);
        let mut out = String::from("minimize:");
        for (j, c) in self.objective.iter().enumerate() {
            if !c.is_zero() {
                let _ = write!(out, " + {}", term(c, j));
            }
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{}:", row.name);
            for (j, a) in &row.coeffs {
                let _ = write!(out, " + {}", term(a, *j));
            }
            let _ = writeln!(out, " {} {}", row.sense.symbol(), pq(&row.rhs));
        }
        for (j, u) in self.upper.iter().enumerate() {
            match u {
                Some(u) => writeln!(out, "bound: 0 <= {} <= {}", self.names[j], pq(u)),
                None => writeln!(out, "bound: 0 <= {}", self.names[j]),
            }
            .unwrap();
        }
        out
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Solves the instance exactly. Equalities of the form `a x_i - a x_j = 0`
/// are merged away first and upper bounds that can never bind at an optimum
/// are dropped; the returned solution is re-checked against the original.
pub fn solve_lp(inst: &LpInstance) -> Result<LpSolution> {
    inst.check_shape()?;
    let n = inst.variable_count();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut kept = Vec::new();
    for row in &inst.rows {
        let tie = match row.coeffs.as_slice() {
            [(i, a), (j, b)]
                if row.sense == Sense::Eq
                    && row.rhs.is_zero()
                    && !a.is_zero()
                    && *a == -b.clone() =>
            {
                Some((*i, *j))
            }
            _ => None,
        };
        match tie {
            Some((i, j)) => {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
            None => kept.push(row),
        }
    }
    let reps: Vec<usize> = (0..n).map(|j| find(&mut parent, j)).collect();
    let mut index = BTreeMap::new();
    for &r in &reps {
        let next = index.len();
        index.entry(r).or_insert(next);
    }
    let m = index.len();
    let col: Vec<usize> = reps.iter().map(|r| index[r]).collect();
    let mut cost = vec![Rational::zero(); m];
    let mut upper: Vec<Option<Rational>> = vec![None; m];
    for j in 0..n {
        cost[col[j]] += &inst.objective[j];
        if let Some(u) = &inst.upper[j] {
            let slot = &mut upper[col[j]];
            if slot.as_ref().is_none_or(|cur| u < cur) {
                *slot = Some(u.clone());
            }
        }
    }
    let mut rows: Vec<(Vec<Rational>, Sense, Rational)> = kept
        .iter()
        .map(|row| {
            let mut dense = vec![Rational::zero(); m];
            for (j, a) in &row.coeffs {
                dense[col[*j]] += a;
            }
            (dense, row.sense, row.rhs.clone())
        })
        .collect();
    for k in 0..m {
        let Some(u) = upper[k].clone() else { continue };
        // With a positive cost, a variable above its bound can be lowered to
        // the bound as long as it alone still satisfies every row it is in.
        let redundant = cost[k].is_positive()
            && rows.iter().all(|(a, sense, rhs)| {
                a[k].is_zero() || (*sense == Sense::Ge && a[k].is_positive() && &a[k] * &u >= *rhs)
            });
        if !redundant {
            let mut dense = vec![Rational::zero(); m];
            dense[k] = Rational::one();
            rows.push((dense, Sense::Le, u));
        }
    }
    let (_, reduced) = simplex(&cost, &rows)?;
    let x: Vec<Rational> = (0..n).map(|j| reduced[col[j]].clone()).collect();
    inst.check_feasible(&x)
        .map_err(|e| Error::Invalid(format!("simplex solution failed re-check: {e}")))?;
    Ok(LpSolution {
        value: inst.objective_value(&x),
        x,
    })
}

struct Tableau {
    /// `m` rows of `cols + 1` entries; the last entry is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.t[r][j].clone();
        for v in self.t[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = j;
    }

    /// Minimizes `cost` over the columns below `limit` with Bland's rule.
    fn optimize(&mut self, cost: &[Rational], limit: usize) -> Result<()> {
        let rhs = self.t.first().map_or(0, |r| r.len() - 1);
        loop {
            let entering = (0..limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.t[r][j].is_zero() {
                        d -= &cost[b] * &self.t[r][j];
                    }
                }
                d.is_negative()
            });
            let Some(j) = entering else { return Ok(()) };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.t.len() {
                if !self.t[r][j].is_positive() {
                    continue;
                }
                let ratio = &self.t[r][rhs] / &self.t[r][j];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::Unbounded);
            };
            self.pivot(r, j);
        }
    }
}

/// Minimizes `cost · x` over `x >= 0` subject to dense rows.
fn simplex(
    cost: &[Rational],
    rows: &[(Vec<Rational>, Sense, Rational)],
) -> Result<(Rational, Vec<Rational>)> {
    let n = cost.len();
    let m = rows.len();
    let slacks: Vec<usize> = (0..m).filter(|&i| rows[i].1 != Sense::Eq).collect();
    let n_slack = slacks.len();
    let first_art = n + n_slack;
    let mut t = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut artificial = 0;
    let needs_art: Vec<bool> = rows
        .iter()
        .map(|(_, sense, rhs)| {
            let flip = rhs.is_negative();
            let sense = match (sense, flip) {
                (Sense::Ge, true) => Sense::Le,
                (Sense::Le, true) => Sense::Ge,
                (s, _) => *s,
            };
            sense != Sense::Le
        })
        .collect();
    let n_art = needs_art.iter().filter(|&&a| a).count();
    let cols = first_art + n_art;
    for (i, (a, sense, rhs)) in rows.iter().enumerate() {
        let flip = rhs.is_negative();
        let sign = if flip {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut row = vec![Rational::zero(); cols + 1];
        for (j, v) in a.iter().enumerate() {
            if !v.is_zero() {
                row[j] = v * &sign;
            }
        }
        if let Some(s) = slacks.iter().position(|&k| k == i) {
            let slack = match sense {
                Sense::Le => Rational::one(),
                _ => -Rational::one(),
            };
            row[n + s] = slack * &sign;
        }
        row[cols] = rhs * &sign;
        if needs_art[i] {
            row[first_art + artificial] = Rational::one();
            basis.push(first_art + artificial);
            artificial += 1;
        } else {
            basis.push(n + slacks.iter().position(|&k| k == i).unwrap());
        }
        t.push(row);
    }
    let mut tab = Tableau { t, basis };
    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); cols];
        for c in phase1.iter_mut().skip(first_art) {
            *c = Rational::one();
        }
        tab.optimize(&phase1, cols)?;
        let infeasibility: Rational = tab
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= first_art)
            .map(|(r, _)| tab.t[r][cols].clone())
            .sum();
        if infeasibility.is_positive() {
            return Err(Error::Infeasible);
        }
        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are redundant.
        let mut r = 0;
        while r < tab.t.len() {
            if tab.basis[r] >= first_art {
                match (0..first_art).find(|&j| !tab.t[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j),
                    None => {
                        tab.t.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }
    let mut phase2 = vec![Rational::zero(); cols];
    phase2[..n].clone_from_slice(cost);
    tab.optimize(&phase2, first_art)?;
    let mut x = vec![Rational::zero(); n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.t[r][cols].clone();
        }
    }
    let value = cost.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok((value, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::string::ToString;

    fn var_names(n: usize) -> Vec<String> {
        (0..n).map(|j| format!("x{j}")).collect()
    }

    fn row(coeffs: &[(usize, i64)], sense: Sense, rhs: i64) -> LpRow {
        LpRow {
            name: "r".to_string(),
            coeffs: coeffs.iter().map(|&(j, a)| (j, int(a))).collect(),
            sense,
            rhs: int(rhs),
        }
    }

    #[test]
    fn single_variable() {
        let inst = LpInstance {
            names: var_names(1),
            objective: vec![int(1)],
            rows: vec![row(&[(0, 1)], Sense::Ge, 1)],
            upper: vec![None],
        };
        assert_eq!(solve_lp(&inst).unwrap().value, int(1));
    }

    #[test]
    fn triangle_vertex_cover() {
        let rows = vec![
            row(&[(0, 1), (1, 1)], Sense::Ge, 1),
            row(&[(1, 1), (2, 1)], Sense::Ge, 1),
            row(&[(0, 1), (2, 1)], Sense::Ge, 1),
        ];
        let inst = LpInstance {
            names: var_names(3),
            objective: vec![int(1); 3],
            rows,
            upper: vec![Some(int(1)); 3],
        };
        let sol = solve_lp(&inst).unwrap();
        assert_eq!(sol.value, ratio(3, 2));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let inst = LpInstance {
            names: var_names(1),
            objective: vec![int(1)],
            rows: vec![row(&[(0, 1)], Sense::Ge, 2)],
            upper: vec![Some(int(1))],
        };
        assert_eq!(solve_lp(&inst), Err(Error::Infeasible));
        let inst = LpInstance {
            names: var_names(1),
            objective: vec![int(-1)],
            rows: vec![],
            upper: vec![None],
        };
        assert_eq!(solve_lp(&inst), Err(Error::Unbounded));
    }

    #[test]
    fn ties_and_equalities() {
        // min x0 + x1 + x2 with x0 = x1 and x1 + x2 = 3, x2 <= 1.
        let rows = vec![
            row(&[(0, 1), (1, -1)], Sense::Eq, 0),
            row(&[(1, 1), (2, 1)], Sense::Eq, 3),
        ];
        let inst = LpInstance {
            names: var_names(3),
            objective: vec![int(1), int(1), int(1)],
            rows,
            upper: vec![None, None, Some(int(1))],
        };
        let sol = solve_lp(&inst).unwrap();
        assert_eq!(sol.value, int(5));
        assert_eq!(sol.x, vec![int(2), int(2), int(1)]);
    }

    #[test]
    fn text_dump() {
        let inst = LpInstance {
            names: var_names(2),
            objective: vec![ratio(1, 2), int(0)],
            rows: vec![row(&[(0, 1), (1, 2)], Sense::Ge, 1)],
            upper: vec![Some(int(1)), None],
        };
        let text = inst.to_text();
        assert!(text.starts_with("minimize: + 1/2 x0\n"));
        assert!(text.contains("r: + 1/1 x0 + 2/1 x1 >= 1/1\n"));
        assert!(text.contains("bound: 0 <= x0 <= 1/1\n"));
    }
}
