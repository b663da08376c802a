//! Bound certificates with re-checkable witnesses and capacity reports.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::exact::{clique_cover_number, independence_number, mais, max_matching};
use super::oracle::oracle_max_code;
use crate::code::{Code, Scope};
use crate::construct::{check_clique_partition, verify_tiling, Tiling};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::linear::LinearCode;
use crate::lp::LpBound;
use crate::rational::{ceil_to_grid, to_fraction_string, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundKind {
    Independence,
    Mais,
    CliqueCover,
    Matching,
    Anticode,
    Lp,
    DiffAvoiding,
    Oracle,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Independence => "independence",
            BoundKind::Mais => "mais",
            BoundKind::CliqueCover => "clique_cover",
            BoundKind::Matching => "matching",
            BoundKind::Anticode => "anticode",
            BoundKind::Lp => "lp",
            BoundKind::DiffAvoiding => "diff_avoiding",
            BoundKind::Oracle => "oracle",
        }
    }

    /// Which side of the capacity the certificate's value bounds.
    pub fn side(self) -> Side {
        match self {
            BoundKind::CliqueCover | BoundKind::Matching => Side::Lower,
            BoundKind::Oracle => Side::FixedAlphabet,
            _ => Side::Upper,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
    /// A largest code at one alphabet size: `value` is its word count.
    FixedAlphabet,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertWitness {
    /// An independent set or a DAG set.
    Set(Vec<usize>),
    Partition(Vec<Vec<usize>>),
    Matching(Vec<(usize, usize)>),
    Tiling(Tiling),
    Code(Code),
    Lp(LpBound),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCertificate {
    pub kind: BoundKind,
    /// The graph parameter behind the bound (γ, δ, α, M, D, |C|, or the LP optimum).
    pub parameter: Rational,
    /// Capacity bound (upper or lower per [`BoundKind::side`]); for the
    /// oracle, the code size.
    pub value: Rational,
    pub witness: CertWitness,
}

fn frac(num: usize, den: usize) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den.max(1)))
}

fn one_minus(num: usize, den: usize) -> Rational {
    frac(den - num.min(den), den)
}

fn int(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

impl BoundCertificate {
    /// `cap <= 1 - γ/n`.
    pub fn independence(g: &Graph, limits: &Limits) -> Result<Self> {
        let set = independence_number(g, limits)?;
        Ok(Self::from_set(BoundKind::Independence, g.n(), set))
    }

    /// `cap <= 1 - δ/n`.
    pub fn mais(g: &Graph, limits: &Limits) -> Result<Self> {
        let set = mais(g, limits)?;
        Ok(Self::from_set(BoundKind::Mais, g.n(), set))
    }

    /// `cap <= 1 - |S|/n` for a supplied DAG set `S`, e.g. a B-avoiding set
    /// on a window; validated, not trusted.
    pub fn dag_set(kind: BoundKind, g: &Graph, set: Vec<usize>) -> Result<Self> {
        let cert = Self::from_set(kind, g.n(), set);
        cert.revalidate(g)?;
        Ok(cert)
    }

    fn from_set(kind: BoundKind, n: usize, set: Vec<usize>) -> Self {
        BoundCertificate {
            kind,
            parameter: int(set.len()),
            value: one_minus(set.len(), n),
            witness: CertWitness::Set(set),
        }
    }

    /// `cap >= 1 - α/n`.
    pub fn clique_cover(g: &Graph, limits: &Limits) -> Result<Self> {
        let parts = clique_cover_number(g, limits)?;
        Ok(BoundCertificate {
            kind: BoundKind::CliqueCover,
            parameter: int(parts.len()),
            value: one_minus(parts.len(), g.n()),
            witness: CertWitness::Partition(parts),
        })
    }

    /// `cap >= M/n`.
    pub fn matching(g: &Graph) -> Self {
        let m = max_matching(g);
        BoundCertificate {
            kind: BoundKind::Matching,
            parameter: int(m.len()),
            value: frac(m.len(), g.n()),
            witness: CertWitness::Matching(m),
        }
    }

    /// `cap <= 1 - 1/D` from a tiling of the whole vertex set by anticodes of
    /// size `D` (cliques of `g`).
    pub fn anticode(g: &Graph, tiling: Tiling) -> Result<Self> {
        let d = tiling.tiles.first().map_or(0, |t| t.len());
        let cert = BoundCertificate {
            kind: BoundKind::Anticode,
            parameter: int(d),
            value: one_minus(1, d),
            witness: CertWitness::Tiling(tiling),
        };
        cert.revalidate(g)?;
        Ok(cert)
    }

    /// `cap <= ` the LP optimum rounded up to the `1/n` grid. The relaxed
    /// optimum itself (kept as `parameter`) can fall below the capacity: on
    /// `K_3` it is 1/2 while the parity code has rate 2/3.
    pub fn lp(g: &Graph, bound: LpBound) -> Result<Self> {
        let cert = BoundCertificate {
            kind: BoundKind::Lp,
            parameter: bound.relaxed.clone(),
            value: bound.grid_rounded.clone(),
            witness: CertWitness::Lp(bound),
        };
        cert.revalidate(g)?;
        Ok(cert)
    }

    /// A largest code at alphabet size `q`.
    pub fn oracle(g: &Graph, q: u32, limits: &Limits) -> Result<Self> {
        let code = oracle_max_code(g, q, limits)?;
        Ok(BoundCertificate {
            kind: BoundKind::Oracle,
            parameter: int(code.len()),
            value: int(code.len()),
            witness: CertWitness::Code(code),
        })
    }

    pub fn side(&self) -> Side {
        self.kind.side()
    }

    /// Re-checks the witness against `g` and recomputes the value from it.
    pub fn revalidate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let bad = |reason: String| {
            Err(Error::BadWitness {
                kind: self.kind.name(),
                reason,
            })
        };
        let expected = match (&self.kind, &self.witness) {
            (BoundKind::Independence, CertWitness::Set(set)) => {
                for (i, &u) in set.iter().enumerate() {
                    g.check_vertex(u)?;
                    if let Some(&v) = set[i + 1..].iter().find(|&&v| g.adjacent(u, v) || u == v) {
                        return bad(format!("{u} and {v} are adjacent or repeated"));
                    }
                }
                one_minus(set.len(), n)
            }
            (BoundKind::Mais | BoundKind::DiffAvoiding, CertWitness::Set(set)) => {
                let mut sorted = set.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != set.len() {
                    return bad("repeated vertex".into());
                }
                if !g.is_dag(set)?.is_acyclic() {
                    return bad("the set induces a directed cycle".into());
                }
                one_minus(set.len(), n)
            }
            (BoundKind::CliqueCover, CertWitness::Partition(parts)) => {
                check_clique_partition(g, parts)?;
                one_minus(parts.len(), n)
            }
            (BoundKind::Matching, CertWitness::Matching(m)) => {
                crate::construct::matching_code(g, m, 2)?;
                frac(m.len(), n)
            }
            (BoundKind::Anticode, CertWitness::Tiling(t)) => {
                verify_tiling(t, g)?;
                if t.region.len() != n {
                    return bad("the tiles do not cover every vertex".into());
                }
                let d = t.tiles.first().map_or(0, |t| t.len());
                if d == 0 || t.tiles.iter().any(|t| t.len() != d) {
                    return bad("tiles differ in size".into());
                }
                one_minus(1, d)
            }
            (BoundKind::Lp, CertWitness::Lp(b)) => {
                b.revalidate(g)?;
                if self.parameter != b.relaxed {
                    return bad("parameter is not the relaxed optimum".into());
                }
                ceil_to_grid(&b.relaxed, n as u64)
            }
            (BoundKind::Oracle, CertWitness::Code(c)) => {
                if !c.verify(g, Scope::All)?.passed() {
                    return bad("the code is not a storage code".into());
                }
                int(c.len())
            }
            _ => return bad("witness type does not match the bound kind".into()),
        };
        if expected != self.value {
            return bad(format!(
                "value {} does not match the witness ({})",
                to_fraction_string(&self.value),
                to_fraction_string(&expected)
            ));
        }
        Ok(())
    }
}

/// A construction entering a report as an achievable rate.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerEntry {
    pub construction: String,
    pub rate: Rational,
    pub verified: bool,
}

impl LowerEntry {
    /// Verifies the code on `g` and records its exact rate.
    pub fn from_linear(construction: &str, code: &LinearCode, g: &Graph) -> Result<Self> {
        let verified = code.verify(g, Scope::All)?.passed();
        let rate = code
            .rate()
            .exact
            .ok_or_else(|| Error::Invalid("linear code without exact rate".into()))?;
        Ok(LowerEntry {
            construction: construction.to_string(),
            rate,
            verified,
        })
    }

    /// A lower-side certificate (clique cover, matching) as a construction.
    pub fn from_certificate(cert: &BoundCertificate, g: &Graph) -> Result<Self> {
        if cert.side() != Side::Lower {
            return Err(Error::Invalid(format!(
                "{} is not a lower bound",
                cert.kind.name()
            )));
        }
        let verified = cert.revalidate(g).is_ok();
        Ok(LowerEntry {
            construction: cert.kind.name().to_string(),
            rate: cert.value.clone(),
            verified,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CapacityVerdict {
    Tight(Rational),
    Gap {
        lower: Rational,
        upper: Rational,
        size: Rational,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CapacityReport {
    pub graph: String,
    pub lower: Vec<LowerEntry>,
    pub upper: Vec<BoundCertificate>,
    pub verdict: CapacityVerdict,
}

/// Assembles a report. Upper certificates are revalidated; only verified
/// constructions count. Any verified lower bound above an upper bound is a
/// hard error naming both.
pub fn capacity_certificate(
    graph: &str,
    g: &Graph,
    lower: Vec<LowerEntry>,
    upper: Vec<BoundCertificate>,
) -> Result<CapacityReport> {
    for cert in &upper {
        if cert.side() != Side::Upper {
            return Err(Error::Invalid(format!(
                "{} is not an upper bound",
                cert.kind.name()
            )));
        }
        cert.revalidate(g)?;
    }
    for l in lower.iter().filter(|l| l.verified) {
        for u in &upper {
            if l.rate > u.value {
                return Err(Error::Inconsistent {
                    lower: format!("{} = {}", l.construction, to_fraction_string(&l.rate)),
                    upper: format!("{} = {}", u.kind.name(), to_fraction_string(&u.value)),
                });
            }
        }
    }
    let best_lower = lower
        .iter()
        .filter(|l| l.verified)
        .map(|l| l.rate.clone())
        .max();
    let best_upper = upper.iter().map(|u| u.value.clone()).min();
    let (Some(lo), Some(hi)) = (best_lower, best_upper) else {
        return Err(Error::Invalid(
            "a report needs a verified construction and an upper bound".into(),
        ));
    };
    let verdict = if lo == hi {
        CapacityVerdict::Tight(lo)
    } else {
        CapacityVerdict::Gap {
            size: &hi - &lo,
            lower: lo,
            upper: hi,
        }
    };
    Ok(CapacityReport {
        graph: graph.to_string(),
        lower,
        upper,
        verdict,
    })
}

/// `rate <= log_q(size) / n`, decided exactly as `q^(a n) <= size^b` for
/// `rate = a/b`.
pub fn log_rate_at_least(q: u32, n: usize, size: &BigUint, rate: &Rational) -> bool {
    let (a, b) = rate_parts(rate);
    if rate <= &Rational::zero() {
        return true;
    }
    BigUint::from(q).pow(a * n as u32) <= size.pow(b)
}

/// `log_q(size) / n <= rate`.
pub fn log_rate_at_most(q: u32, n: usize, size: &BigUint, rate: &Rational) -> bool {
    if rate < &Rational::zero() {
        return false;
    }
    let (a, b) = rate_parts(rate);
    size.pow(b) <= BigUint::from(q).pow(a * n as u32)
}

fn rate_parts(rate: &Rational) -> (u32, u32) {
    let to_u32 = |v: &BigInt| u32::try_from(v.magnitude()).unwrap_or(u32::MAX);
    (to_u32(rate.numer()), to_u32(rate.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{clique_partition_code, edge_to_vertex_code, torus_row_parity};
    use crate::graph::torus_rowcol_graph;
    use crate::rational::ratio;
    use alloc::vec;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn triangle_is_tight() {
        let g = Graph::complete(3);
        let code = clique_partition_code(&g, &[vec![0, 1, 2]], 2).unwrap();
        let lower = vec![LowerEntry::from_linear("parity", &code, &g).unwrap()];
        let upper = vec![BoundCertificate::independence(&g, &lim()).unwrap()];
        let report = capacity_certificate("K3", &g, lower, upper).unwrap();
        assert_eq!(report.verdict, CapacityVerdict::Tight(ratio(2, 3)));
    }

    #[test]
    fn torus_is_tight() {
        let g = torus_rowcol_graph(3).unwrap();
        let code = torus_row_parity(3, 2).unwrap();
        let rows: Vec<Vec<usize>> = (0..3)
            .map(|i| (0..3).map(|j| i * 3 + j).collect())
            .collect();
        let tiling = Tiling {
            n: 3,
            kind: None,
            region: (0..9).collect(),
            tiles: rows,
        };
        let upper = vec![BoundCertificate::anticode(&g, tiling).unwrap()];
        let lower = vec![LowerEntry::from_linear("row parity", &code, &g).unwrap()];
        let report = capacity_certificate("torus-3", &g, lower, upper).unwrap();
        assert_eq!(report.verdict, CapacityVerdict::Tight(ratio(2, 3)));
    }

    #[test]
    fn pentagon_has_a_gap() {
        let g = Graph::cycle(5);
        let code = edge_to_vertex_code(&g, 2).unwrap();
        let lower = vec![LowerEntry::from_linear("edge-to-vertex", &code, &g).unwrap()];
        let upper = vec![BoundCertificate::independence(&g, &lim()).unwrap()];
        let report = capacity_certificate("C5", &g, lower, upper).unwrap();
        assert_eq!(
            report.verdict,
            CapacityVerdict::Gap {
                lower: ratio(1, 2),
                upper: ratio(3, 5),
                size: ratio(1, 10)
            }
        );
    }

    #[test]
    fn inconsistency_is_an_error() {
        let g = Graph::cycle(5);
        let lower = vec![LowerEntry {
            construction: "bogus".into(),
            rate: ratio(4, 5),
            verified: true,
        }];
        let upper = vec![BoundCertificate::independence(&g, &lim()).unwrap()];
        assert!(matches!(
            capacity_certificate("C5", &g, lower, upper),
            Err(Error::Inconsistent { .. })
        ));
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let g = Graph::cycle(5);
        let mut cert = BoundCertificate::independence(&g, &lim()).unwrap();
        cert.witness = CertWitness::Set(vec![0, 1]);
        assert!(cert.revalidate(&g).is_err());
        let mut cert = BoundCertificate::clique_cover(&g, &lim()).unwrap();
        assert_eq!(cert.value, ratio(2, 5));
        cert.value = ratio(3, 5);
        assert!(cert.revalidate(&g).is_err());
    }

    #[test]
    fn exact_log_comparisons() {
        let four = BigUint::from(4u32);
        assert!(log_rate_at_least(2, 3, &four, &ratio(2, 3)));
        assert!(log_rate_at_most(2, 3, &four, &ratio(2, 3)));
        assert!(!log_rate_at_most(2, 3, &four, &ratio(1, 2)));
        assert!(log_rate_at_most(2, 5, &BigUint::from(5u32), &ratio(1, 2)));
        assert!(!log_rate_at_most(2, 5, &BigUint::from(6u32), &ratio(1, 2)));
    }
}
