//! The gadget-cover linear-programming upper bound on capacity.
//!
//! A gadget `(S1, S2, c1, c2)` comes from two vertex sets `A`, `B` through
//! their closures: `S1 = cl(A) ∪ cl(B)` is the outside and `S2 = cl(A) ∩ cl(B)`
//! the inside, colored `c1` and `c2`. Each gadget contributes one variable
//! per part; a family of gadgets is a τ-cover when for every color the parts
//! of that color form a vertex cover.

mod simplex;

pub use simplex::{solve_lp, LpInstance, LpRow, LpSolution, Sense};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bitset::Bitset;
use crate::graph::Graph;
use crate::interleave::InterleavedGraph;
use crate::limits::Limits;
use crate::rational::{ceil_to_grid, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosureMode {
    /// `cl(A) = {v : N(v) ⊆ A}`.
    Formula,
    /// The formula's set together with `A` itself.
    WithSet,
}

impl ClosureMode {
    pub fn name(self) -> &'static str {
        match self {
            ClosureMode::Formula => "formula",
            ClosureMode::WithSet => "with-set",
        }
    }
}

/// Vertices whose whole out-neighborhood lies in `a`, ascending.
pub fn closure(g: &Graph, a: &[usize], mode: ClosureMode) -> Vec<usize> {
    let n = g.n();
    let inside = Bitset::from_indices(n, a.iter().copied().filter(|&v| v < n));
    (0..n)
        .filter(|&v| {
            (mode == ClosureMode::WithSet && inside.contains(v))
                || g.out_neighbors(v).iter().all(|&u| inside.contains(u))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// `S1`, ascending.
    pub outside: Vec<usize>,
    /// `S2`, ascending.
    pub inside: Vec<usize>,
    pub c1: usize,
    /// Always 0 when the inside is empty.
    pub c2: usize,
    pub weight: usize,
    pub trivial: bool,
}

impl Gadget {
    /// `({v}, ∅, c1, 0)` with weight 1.
    pub fn trivial(v: usize, c1: usize) -> Self {
        Gadget {
            a: vec![v],
            b: vec![],
            outside: vec![v],
            inside: vec![],
            c1,
            c2: 0,
            weight: 1,
            trivial: true,
        }
    }

    pub fn from_sets(
        g: &Graph,
        a: &[usize],
        b: &[usize],
        c1: usize,
        c2: usize,
        mode: ClosureMode,
    ) -> Self {
        let ca = closure(g, a, mode);
        let cb = closure(g, b, mode);
        Self::from_closures(a, b, &ca, &cb, c1, c2)
    }

    fn from_closures(
        a: &[usize],
        b: &[usize],
        ca: &[usize],
        cb: &[usize],
        c1: usize,
        c2: usize,
    ) -> Self {
        let mut outside: Vec<usize> = ca.iter().chain(cb).copied().collect();
        outside.sort_unstable();
        outside.dedup();
        let inside: Vec<usize> = ca.iter().copied().filter(|v| cb.contains(v)).collect();
        let c2 = if inside.is_empty() { 0 } else { c2 };
        Gadget {
            a: a.to_vec(),
            b: b.to_vec(),
            outside,
            inside,
            c1,
            c2,
            weight: a.len() + b.len(),
            trivial: false,
        }
    }

    /// Recomputes the parts from `A` and `B` (or the trivial shape).
    pub fn validate(&self, g: &Graph, mode: ClosureMode) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::BadWitness {
                kind: "lp",
                reason: format!("gadget {:?}/{:?}: {reason}", self.a, self.b),
            })
        };
        if self.trivial {
            let ok = self.a.len() == 1
                && self.b.is_empty()
                && self.outside == self.a
                && self.inside.is_empty()
                && self.weight == 1
                && self.a[0] < g.n();
            return if ok {
                Ok(())
            } else {
                bad("malformed trivial gadget")
            };
        }
        let fresh = Gadget::from_sets(g, &self.a, &self.b, self.c1, self.c2, mode);
        if fresh.outside != self.outside || fresh.inside != self.inside {
            return bad("parts do not match the closures");
        }
        if self.weight != self.a.len() + self.b.len() || self.weight == 0 {
            return bad("weight is not |A| + |B|");
        }
        if self.outside.is_empty() {
            return bad("empty outside");
        }
        Ok(())
    }
}

fn subsets_up_to(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max.min(n) {
        let mut next = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |&l| l + 1);
            for v in start..n {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn binomial_sum(n: usize, max: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for k in 0..=max.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - k) as u128) / (k as u128 + 1);
    }
    total
}

/// Trivial gadgets for every vertex and outside color, plus the gadgets of
/// all unordered pairs `{A, B}` with `|A|, |B| <= max_support`, weight at
/// least 1 and nonempty outside, for every color pair. Gadgets with equal
/// `(S1, S2, c1, c2)` collapse to one of minimum weight (trivial on ties).
pub fn enumerate_gadgets(
    g: &Graph,
    max_support: usize,
    tau: usize,
    mode: ClosureMode,
    limits: &Limits,
) -> Result<Vec<Gadget>> {
    if max_support == 0 || tau == 0 {
        return Err(Error::Invalid(
            "max_support and tau must be positive".into(),
        ));
    }
    let n = g.n();
    let m = binomial_sum(n, max_support);
    let pairs = m.saturating_mul(m.saturating_add(1)) / 2;
    if pairs > limits.gadget_pairs {
        return Err(Error::CapExceeded {
            what: "gadget (A, B) pairs",
            size: pairs,
            cap: limits.gadget_pairs,
        });
    }
    let sets = subsets_up_to(n, max_support);
    let closures: Vec<Vec<usize>> = sets.iter().map(|s| closure(g, s, mode)).collect();
    let mut pool: BTreeMap<(Vec<usize>, Vec<usize>, usize, usize), Gadget> = BTreeMap::new();
    for v in 0..n {
        for c1 in 0..tau {
            let gd = Gadget::trivial(v, c1);
            pool.insert((gd.outside.clone(), gd.inside.clone(), c1, 0), gd);
        }
    }
    for i in 0..sets.len() {
        for j in i..sets.len() {
            if sets[i].len() + sets[j].len() == 0
                || (closures[i].is_empty() && closures[j].is_empty())
            {
                continue;
            }
            let base = Gadget::from_closures(&sets[i], &sets[j], &closures[i], &closures[j], 0, 0);
            let c2_range = if base.inside.is_empty() { 1 } else { tau };
            for c1 in 0..tau {
                for c2 in 0..c2_range {
                    let key = (base.outside.clone(), base.inside.clone(), c1, c2);
                    match pool.get(&key) {
                        Some(old) if old.weight <= base.weight => {}
                        _ => {
                            pool.insert(
                                key,
                                Gadget {
                                    c1,
                                    c2,
                                    ..base.clone()
                                },
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(pool.into_values().collect())
}

/// Variables `2i` (outside) and `2i + 1` (inside) for gadget `i`, each with
/// cost `w/(2nτ)`; one cover row per adjacent pair and color, where a part
/// holding both endpoints counts twice; one tie row per gadget; `χ <= 1`.
pub fn build_lp(g: &Graph, gadgets: &[Gadget], tau: usize) -> Result<LpInstance> {
    let n = g.n();
    if n == 0 || tau == 0 {
        return Err(Error::Invalid(
            "the LP needs at least one vertex and one color".into(),
        ));
    }
    for gd in gadgets {
        for color in [gd.c1, gd.c2] {
            if color >= tau {
                return Err(Error::ColorOutOfRange { color, tau });
            }
        }
    }
    let scale = BigInt::from(2 * n * tau);
    let mut names = Vec::with_capacity(2 * gadgets.len());
    let mut objective = Vec::with_capacity(2 * gadgets.len());
    for (i, gd) in gadgets.iter().enumerate() {
        names.push(format!("g{i}_out"));
        names.push(format!("g{i}_in"));
        let c = Rational::new(BigInt::from(gd.weight), scale.clone());
        objective.push(c.clone());
        objective.push(c);
    }
    let mut rows = Vec::new();
    for (u, v) in g.adjacent_pairs() {
        for c in 0..tau {
            let mut coeffs = Vec::new();
            for (i, gd) in gadgets.iter().enumerate() {
                for (k, part, color) in [(0, &gd.outside, gd.c1), (1, &gd.inside, gd.c2)] {
                    let hits = part.binary_search(&u).is_ok() as i64
                        + part.binary_search(&v).is_ok() as i64;
                    if color == c && hits > 0 {
                        coeffs.push((2 * i + k, Rational::from_integer(BigInt::from(hits))));
                    }
                }
            }
            rows.push(LpRow {
                name: format!("cover_{u}_{v}_c{c}"),
                coeffs,
                sense: Sense::Ge,
                rhs: Rational::one(),
            });
        }
    }
    for i in 0..gadgets.len() {
        rows.push(LpRow {
            name: format!("tie_g{i}"),
            coeffs: vec![(2 * i, Rational::one()), (2 * i + 1, -Rational::one())],
            sense: Sense::Eq,
            rhs: Rational::zero(),
        });
    }
    let upper = vec![Some(Rational::one()); names.len()];
    Ok(LpInstance {
        names,
        objective,
        rows,
        upper,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpBound {
    pub n: usize,
    pub tau: usize,
    pub max_support: usize,
    pub closure_mode: ClosureMode,
    /// Optimum of the relaxation (integrality condition dropped).
    pub relaxed: Rational,
    /// `relaxed` rounded up to the grid `(1/n)N` on which the integrality
    /// condition puts the objective.
    pub grid_rounded: Rational,
    /// Only gadgets with supports up to `max_support` were offered.
    pub restricted_gadgets: bool,
    pub relaxed_integrality: bool,
    pub gadget_count: usize,
    pub variable_count: usize,
    pub constraint_count: usize,
    /// Gadgets in use with their common part value `χ`.
    pub cover: Vec<(Gadget, Rational)>,
}

pub fn lp_capacity_bound(
    g: &Graph,
    tau: usize,
    max_support: usize,
    mode: ClosureMode,
    limits: &Limits,
) -> Result<LpBound> {
    let gadgets = enumerate_gadgets(g, max_support, tau, mode, limits)?;
    let inst = build_lp(g, &gadgets, tau)?;
    let sol = solve_lp(&inst)?;
    let cover: Vec<(Gadget, Rational)> = gadgets
        .iter()
        .enumerate()
        .filter(|(i, _)| !sol.x[2 * i].is_zero())
        .map(|(i, gd)| (gd.clone(), sol.x[2 * i].clone()))
        .collect();
    let n = g.n();
    Ok(LpBound {
        n,
        tau,
        max_support,
        closure_mode: mode,
        grid_rounded: ceil_to_grid(&sol.value, n as u64),
        relaxed: sol.value,
        restricted_gadgets: true,
        relaxed_integrality: true,
        gadget_count: gadgets.len(),
        variable_count: inst.variable_count(),
        constraint_count: inst.rows.len(),
        cover,
    })
}

/// Checks that the weighted gadgets form a fractional τ-cover of `g` (both
/// parts of a gadget share its value) and returns the normalized objective
/// `Σ χ w / (nτ)`.
pub fn check_cover(g: &Graph, tau: usize, cover: &[(Gadget, Rational)]) -> Result<Rational> {
    let n = g.n();
    if n == 0 || tau == 0 {
        return Err(Error::Invalid(
            "the LP needs at least one vertex and one color".into(),
        ));
    }
    let bad = |reason: alloc::string::String| Err(Error::BadWitness { kind: "lp", reason });
    for (gd, x) in cover {
        if x.is_negative() || *x > Rational::one() {
            return bad(format!("gadget value {x} outside [0, 1]"));
        }
        if gd.c1 >= tau || gd.c2 >= tau {
            return Err(Error::ColorOutOfRange {
                color: gd.c1.max(gd.c2),
                tau,
            });
        }
        if let Some(&v) = gd.outside.iter().chain(&gd.inside).find(|&&v| v >= n) {
            return Err(Error::NoSuchVertex { vertex: v, n });
        }
    }
    for (u, v) in g.adjacent_pairs() {
        for c in 0..tau {
            let mut total = Rational::zero();
            for (gd, x) in cover {
                for (part, color) in [(&gd.outside, gd.c1), (&gd.inside, gd.c2)] {
                    if color == c {
                        let hits = part.contains(&u) as i64 + part.contains(&v) as i64;
                        total += x * Rational::from_integer(BigInt::from(hits));
                    }
                }
            }
            if total < Rational::one() {
                return bad(format!("edge ({u}, {v}) is not covered in color {c}"));
            }
        }
    }
    let weight: Rational = cover
        .iter()
        .map(|(gd, x)| x * Rational::from_integer(BigInt::from(gd.weight)))
        .sum();
    Ok(weight / Rational::from_integer(BigInt::from(n * tau)))
}

/// Replaces every vertex by its fiber in the interleaved graph; the weight
/// scales by `s`.
pub fn lift_gadget(gd: &Gadget, ig: &InterleavedGraph) -> Gadget {
    Gadget {
        a: ig.lift_set(&gd.a),
        b: ig.lift_set(&gd.b),
        outside: ig.lift_set(&gd.outside),
        inside: ig.lift_set(&gd.inside),
        c1: gd.c1,
        c2: gd.c2,
        weight: gd.weight * ig.s(),
        trivial: gd.trivial,
    }
}

impl LpBound {
    /// Re-derives every gadget and re-checks the cover and its objective.
    pub fn revalidate(&self, g: &Graph) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: g.n(),
            });
        }
        for (gd, _) in &self.cover {
            gd.validate(g, self.closure_mode)?;
        }
        let value = check_cover(g, self.tau, &self.cover)?;
        if value != self.relaxed {
            return Err(Error::BadWitness {
                kind: "lp",
                reason: "cover objective differs from the optimum".into(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn closures() {
        let c5 = Graph::cycle(5);
        assert_eq!(closure(&c5, &[0, 2], ClosureMode::Formula), vec![1]);
        assert_eq!(
            closure(&c5, &[0, 1, 2, 3, 4], ClosureMode::Formula),
            vec![0, 1, 2, 3, 4]
        );
        assert!(closure(&c5, &[], ClosureMode::Formula).is_empty());
        assert_eq!(closure(&c5, &[0, 2], ClosureMode::WithSet), vec![0, 1, 2]);
    }

    #[test]
    fn gadget_examples() {
        let c5 = Graph::cycle(5);
        let gd = Gadget::from_sets(&c5, &[0, 2], &[2, 4], 0, 0, ClosureMode::Formula);
        assert_eq!(
            (gd.outside.clone(), gd.inside.clone(), gd.weight),
            (vec![1, 3], vec![], 4)
        );
        let k3 = Graph::complete(3);
        let gd = Gadget::from_sets(&k3, &[0, 1, 2], &[0, 1, 2], 0, 0, ClosureMode::Formula);
        assert_eq!((gd.outside.len(), gd.inside.len(), gd.weight), (3, 3, 6));
        let pool = enumerate_gadgets(&c5, 2, 1, ClosureMode::Formula, &lim()).unwrap();
        assert_eq!(pool.iter().filter(|g| g.trivial).count(), 5);
    }

    #[test]
    fn trivial_covers() {
        let c5 = Graph::cycle(5);
        let trivial: Vec<Gadget> = (0..5).map(|v| Gadget::trivial(v, 0)).collect();
        let sol = solve_lp(&build_lp(&c5, &trivial, 1).unwrap()).unwrap();
        assert_eq!(sol.value, ratio(1, 2));
        let k2 = Graph::complete(2);
        let trivial: Vec<Gadget> = (0..2).map(|v| Gadget::trivial(v, 0)).collect();
        assert_eq!(
            solve_lp(&build_lp(&k2, &trivial, 1).unwrap())
                .unwrap()
                .value,
            ratio(1, 2)
        );
        let empty = Graph::new(3, &[], false).unwrap();
        let trivial: Vec<Gadget> = (0..3).map(|v| Gadget::trivial(v, 0)).collect();
        assert_eq!(
            solve_lp(&build_lp(&empty, &trivial, 1).unwrap())
                .unwrap()
                .value,
            ratio(0, 1)
        );
    }

    #[test]
    fn color_range() {
        let gd = Gadget::trivial(0, 3);
        assert_eq!(
            build_lp(&Graph::complete(2), &[gd], 2),
            Err(Error::ColorOutOfRange { color: 3, tau: 2 })
        );
    }

    #[test]
    fn odd_cycles_give_one_half() {
        for n in [5, 7] {
            let b =
                lp_capacity_bound(&Graph::cycle(n), 2, 2, ClosureMode::Formula, &lim()).unwrap();
            assert_eq!(b.relaxed, ratio(1, 2), "C_{n}");
            b.revalidate(&Graph::cycle(n)).unwrap();
        }
    }
}
