//! Resolvable 2-(v,k,1) designs and families of orthogonal partitions.
//!
//! Points and matrix symbols are 1-based, as in the usual presentation of
//! these objects. A family matrix is stored row-major, `k` rows by `s`
//! columns; each column is one block of a partition of `{1..ks}`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Fp;
use crate::{Error, Result};

pub type Block = Vec<u32>;
pub type Matrix = Vec<Vec<u32>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvableDesign {
    pub v: u32,
    pub k: u32,
    /// Parallel classes; each is a list of blocks partitioning `{1..v}`.
    pub classes: Vec<Vec<Block>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalPartitionFamily {
    pub k: usize,
    pub s: usize,
    pub matrices: Vec<Matrix>,
}

/// First violated design condition, in checking order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DesignViolation {
    /// `k < 2`, `k` does not divide `v`, or `k - 1` does not divide `v - 1`.
    Shape {
        v: u32,
        k: u32,
    },
    BlockSize {
        class: usize,
        block: usize,
        size: usize,
        k: u32,
    },
    /// A point is missing from, repeated in, or foreign to a class.
    NotPartition {
        class: usize,
        point: u32,
        occurrences: usize,
    },
    ClassCount {
        got: usize,
        expected: usize,
    },
    /// A point pair is covered `count != 1` times across all blocks.
    PairCount {
        a: u32,
        b: u32,
        count: usize,
    },
}

impl fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignViolation::Shape { v, k } => write!(f, "no resolvable 2-({v},{k},1) shape"),
            DesignViolation::BlockSize {
                class,
                block,
                size,
                k,
            } => {
                write!(
                    f,
                    "block {block} of class {class} has size {size}, expected {k}"
                )
            }
            DesignViolation::NotPartition {
                class,
                point,
                occurrences,
            } => {
                write!(
                    f,
                    "class {class} is not a partition: point {point} occurs {occurrences} times"
                )
            }
            DesignViolation::ClassCount { got, expected } => {
                write!(f, "{got} parallel classes, expected {expected}")
            }
            DesignViolation::PairCount { a, b, count } => {
                write!(f, "pair {{{a}, {b}}} lies in {count} blocks, expected 1")
            }
        }
    }
}

/// First violated family condition. Condition 1 is the partition property of
/// a single matrix; condition 2 is orthogonality of two distinct matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    /// `k = 0`, `k > s`, or a matrix is not `k x s`.
    Shape {
        matrix: Option<usize>,
        k: usize,
        s: usize,
    },
    /// Condition 1: a symbol of `{1..ks}` is missing, repeated or out of range.
    NotPartition {
        matrix: usize,
        symbol: u32,
        occurrences: usize,
    },
    /// Condition 2: two columns share more than one element.
    Intersection {
        a: usize,
        b: usize,
        col_a: usize,
        col_b: usize,
        common: usize,
    },
    /// Condition 2: a column of `a` meets the wrong number of columns of `b`.
    MeetCount {
        a: usize,
        b: usize,
        col_a: usize,
        meets: usize,
        k: usize,
    },
}

impl FamilyViolation {
    /// Which condition of the definition fails (0 for a shape problem).
    pub fn condition(&self) -> u8 {
        match self {
            FamilyViolation::Shape { .. } => 0,
            FamilyViolation::NotPartition { .. } => 1,
            FamilyViolation::Intersection { .. } | FamilyViolation::MeetCount { .. } => 2,
        }
    }
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::Shape { matrix: None, k, s } => {
                write!(f, "shape ({k},{s}) needs 1 <= k <= s")
            }
            FamilyViolation::Shape { matrix: Some(m), k, s } => {
                write!(f, "matrix {m} is not {k} x {s}")
            }
            FamilyViolation::NotPartition { matrix, symbol, occurrences } => write!(
                f,
                "condition 1: symbol {symbol} occurs {occurrences} times in matrix {matrix}"
            ),
            FamilyViolation::Intersection { a, b, col_a, col_b, common } => write!(
                f,
                "condition 2: column {col_a} of matrix {a} and column {col_b} of matrix {b} share {common} elements"
            ),
            FamilyViolation::MeetCount { a, b, col_a, meets, k } => write!(
                f,
                "condition 2: column {col_a} of matrix {a} meets {meets} columns of matrix {b}, expected {k}"
            ),
        }
    }
}

/// Lines of the affine plane over `F_q`: point `(x, y)` is numbered
/// `x * q + y + 1`; the vertical class comes first, then slopes `0..q`.
pub fn affine_design(q: u32) -> Result<ResolvableDesign> {
    let f = Fp::new(q)?;
    let point = |x: u32, y: u32| x * q + y + 1;
    let mut classes = Vec::with_capacity(q as usize + 1);
    classes.push(
        (0..q)
            .map(|x| (0..q).map(|y| point(x, y)).collect())
            .collect(),
    );
    for m in 0..q {
        let mut class: Vec<Block> = (0..q)
            .map(|b| {
                let mut block: Block = (0..q).map(|x| point(x, f.add(f.mul(m, x), b))).collect();
                block.sort_unstable();
                block
            })
            .collect();
        class.sort();
        classes.push(class);
    }
    Ok(ResolvableDesign {
        v: q * q,
        k: q,
        classes,
    })
}

pub fn verify_design(d: &ResolvableDesign) -> core::result::Result<(), DesignViolation> {
    let (v, k) = (d.v, d.k);
    if k < 2 || v < k || v % k != 0 || (v - 1) % (k - 1) != 0 {
        return Err(DesignViolation::Shape { v, k });
    }
    for (c, class) in d.classes.iter().enumerate() {
        for (b, block) in class.iter().enumerate() {
            if block.len() != k as usize {
                return Err(DesignViolation::BlockSize {
                    class: c,
                    block: b,
                    size: block.len(),
                    k,
                });
            }
        }
        let mut seen = vec![0usize; v as usize + 1];
        for &p in class.iter().flatten() {
            if p == 0 || p > v {
                return Err(DesignViolation::NotPartition {
                    class: c,
                    point: p,
                    occurrences: 1,
                });
            }
            seen[p as usize] += 1;
        }
        if let Some(p) = (1..=v).find(|&p| seen[p as usize] != 1) {
            return Err(DesignViolation::NotPartition {
                class: c,
                point: p,
                occurrences: seen[p as usize],
            });
        }
    }
    let expected = ((v - 1) / (k - 1)) as usize;
    if d.classes.len() != expected {
        return Err(DesignViolation::ClassCount {
            got: d.classes.len(),
            expected,
        });
    }
    let n = v as usize + 1;
    let mut pairs = vec![0usize; n * n];
    for block in d.classes.iter().flatten() {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                let (a, b) = (a.min(b) as usize, a.max(b) as usize);
                pairs[a * n + b] += 1;
            }
        }
    }
    for a in 1..=v {
        for b in a + 1..=v {
            let count = pairs[a as usize * n + b as usize];
            if count != 1 {
                return Err(DesignViolation::PairCount { a, b, count });
            }
        }
    }
    Ok(())
}

/// One matrix per parallel class, the sorted blocks as columns.
pub fn family_from_design(d: &ResolvableDesign) -> Result<OrthogonalPartitionFamily> {
    verify_design(d).map_err(Error::InvalidDesign)?;
    let k = d.k as usize;
    let s = (d.v / d.k) as usize;
    let matrices = d
        .classes
        .iter()
        .map(|class| {
            let mut columns: Vec<Block> = class
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.sort_unstable();
                    b
                })
                .collect();
            columns.sort();
            matrix_from_columns(&columns)
        })
        .collect();
    Ok(OrthogonalPartitionFamily { k, s, matrices })
}

fn matrix_from_columns(columns: &[Block]) -> Matrix {
    let k = columns.first().map_or(0, Vec::len);
    (0..k)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect()
}

impl OrthogonalPartitionFamily {
    pub fn size(&self) -> usize {
        self.matrices.len()
    }

    pub fn column(&self, matrix: usize, col: usize) -> Vec<u32> {
        self.matrices[matrix].iter().map(|row| row[col]).collect()
    }

    pub fn columns(&self, matrix: usize) -> Vec<Vec<u32>> {
        (0..self.s).map(|c| self.column(matrix, c)).collect()
    }

    /// Columns of matrix `b` sharing an element with column `col` of matrix `a`.
    pub fn meeting_columns(&self, a: usize, col: usize, b: usize) -> Vec<usize> {
        let column: BTreeSet<u32> = self.column(a, col).into_iter().collect();
        (0..self.s)
            .filter(|&c| self.matrices[b].iter().any(|row| column.contains(&row[c])))
            .collect()
    }

    /// Sorts each column ascending and orders columns by first element.
    pub fn canonicalize(&self) -> Self {
        let matrices = (0..self.size())
            .map(|m| {
                let mut cols = self.columns(m);
                for c in &mut cols {
                    c.sort_unstable();
                }
                cols.sort();
                matrix_from_columns(&cols)
            })
            .collect();
        OrthogonalPartitionFamily {
            k: self.k,
            s: self.s,
            matrices,
        }
    }

    /// The design whose classes are the column partitions of the matrices.
    pub fn to_design(&self) -> ResolvableDesign {
        let classes = (0..self.size())
            .map(|m| {
                let mut cols = self.columns(m);
                for c in &mut cols {
                    c.sort_unstable();
                }
                cols.sort();
                cols
            })
            .collect();
        ResolvableDesign {
            v: (self.k * self.s) as u32,
            k: self.k as u32,
            classes,
        }
    }
}

pub fn verify_family(f: &OrthogonalPartitionFamily) -> core::result::Result<(), FamilyViolation> {
    let (k, s) = (f.k, f.s);
    if k == 0 || k > s {
        return Err(FamilyViolation::Shape { matrix: None, k, s });
    }
    let total = (k * s) as u32;
    for (m, matrix) in f.matrices.iter().enumerate() {
        if matrix.len() != k || matrix.iter().any(|row| row.len() != s) {
            return Err(FamilyViolation::Shape {
                matrix: Some(m),
                k,
                s,
            });
        }
        let mut seen = vec![0usize; k * s + 1];
        for &x in matrix.iter().flatten() {
            if x == 0 || x > total {
                return Err(FamilyViolation::NotPartition {
                    matrix: m,
                    symbol: x,
                    occurrences: 1,
                });
            }
            seen[x as usize] += 1;
        }
        if let Some(x) = (1..=total).find(|&x| seen[x as usize] != 1) {
            return Err(FamilyViolation::NotPartition {
                matrix: m,
                symbol: x,
                occurrences: seen[x as usize],
            });
        }
    }
    // column_of[m][x] = column of symbol x in matrix m.
    let column_of: Vec<Vec<usize>> = f
        .matrices
        .iter()
        .map(|matrix| {
            let mut where_ = vec![0usize; k * s + 1];
            for row in matrix {
                for (c, &x) in row.iter().enumerate() {
                    where_[x as usize] = c;
                }
            }
            where_
        })
        .collect();
    for a in 0..f.size() {
        for b in 0..f.size() {
            if a == b {
                continue;
            }
            for col_a in 0..s {
                let mut common = vec![0usize; s];
                for row in &f.matrices[a] {
                    common[column_of[b][row[col_a] as usize]] += 1;
                }
                if let Some(col_b) = (0..s).find(|&c| common[c] > 1) {
                    return Err(FamilyViolation::Intersection {
                        a,
                        b,
                        col_a,
                        col_b,
                        common: common[col_b],
                    });
                }
                // With no column shared twice, the k elements meet k columns;
                // the count check stays for completeness.
                let meets = common.iter().filter(|&&c| c > 0).count();
                if meets != k {
                    return Err(FamilyViolation::MeetCount {
                        a,
                        b,
                        col_a,
                        meets,
                        k,
                    });
                }
            }
        }
    }
    Ok(())
}

/// The seven 3 x 5 matrices of the v = 15 family, verbatim.
pub fn builtin_family_3x5() -> OrthogonalPartitionFamily {
    let m = |rows: [[u32; 5]; 3]| rows.iter().map(|r| r.to_vec()).collect::<Matrix>();
    OrthogonalPartitionFamily {
        k: 3,
        s: 5,
        matrices: vec![
            m([[1, 4, 5, 6, 7], [2, 10, 8, 9, 11], [3, 14, 13, 15, 12]]),
            m([[1, 2, 3, 4, 6], [8, 5, 13, 11, 10], [9, 7, 14, 15, 12]]),
            m([[1, 2, 3, 4, 7], [10, 13, 5, 8, 9], [11, 15, 6, 12, 14]]),
            m([[1, 2, 3, 6, 7], [4, 12, 9, 11, 8], [5, 14, 10, 13, 15]]),
            m([[1, 2, 3, 4, 5], [6, 8, 12, 9, 11], [7, 10, 15, 13, 14]]),
            m([[1, 2, 3, 5, 6], [12, 9, 4, 10, 8], [13, 11, 7, 15, 14]]),
            m([[1, 2, 3, 5, 7], [14, 4, 8, 9, 10], [15, 6, 11, 12, 13]]),
        ],
    }
}

/// The Kirkman triple system on 15 points underlying [`builtin_family_3x5`].
pub fn kirkman_design_15() -> ResolvableDesign {
    builtin_family_3x5().to_design()
}

/// The three 2 x 3 matrices of the triangle interleaving example.
pub fn example_family_2x3() -> OrthogonalPartitionFamily {
    OrthogonalPartitionFamily {
        k: 2,
        s: 3,
        matrices: vec![
            vec![vec![1, 3, 5], vec![2, 4, 6]],
            vec![vec![1, 2, 6], vec![5, 3, 4]],
            vec![vec![1, 5, 6], vec![4, 2, 3]],
        ],
    }
}
