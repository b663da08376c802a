//! JSON file formats. Every writer emits one compact line, so a file read
//! back and written again is byte-identical.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use stoc_core::code::Code;
use stoc_core::construct::Tiling;
use stoc_core::design::{
    verify_design, verify_family, OrthogonalPartitionFamily, ResolvableDesign,
};
use stoc_core::graph::Graph;
use stoc_core::interleave::InterleavedGraph;
use stoc_core::linear::LinearCode;
use stoc_core::window::{cell_coords, cell_index};

use crate::error::{LabError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub directed: bool,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<i64>>>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            directed: g.is_directed(),
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(<[_]>::to_vec),
        }
    }

    pub fn to_graph(&self) -> stoc_core::Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::new(self.n, &edges, self.directed)?;
        match &self.labels {
            Some(labels) => g.with_labels(labels.clone()),
            None => Ok(g),
        }
    }
}

/// A code file holds exactly one of `words` (explicit, digits flattened
/// per symbol), `parity` (level-1 parity checks) or `generator` (rows over
/// `n * level` digits).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<u32>>>,
}

/// A loaded code: explicit words or a linear code.
#[derive(Clone, Debug)]
pub enum AnyCode {
    Explicit(Code),
    Linear(LinearCode),
}

impl CodeFile {
    pub fn from_code(c: &Code) -> Self {
        CodeFile {
            q: c.q(),
            level: Some(c.level()),
            n: c.n(),
            words: Some((0..c.len()).map(|i| c.word_digits(i)).collect()),
            parity: None,
            generator: None,
        }
    }

    pub fn from_linear(c: &LinearCode) -> Self {
        CodeFile {
            q: c.q(),
            level: Some(c.level()),
            n: c.n(),
            words: None,
            parity: None,
            generator: Some(c.generator().to_vec()),
        }
    }

    pub fn to_code(&self) -> std::result::Result<AnyCode, String> {
        let level = self.level.unwrap_or(1);
        let given = [
            self.words.is_some(),
            self.parity.is_some(),
            self.generator.is_some(),
        ];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err("exactly one of `words`, `parity`, `generator` is required".into());
        }
        let code = if let Some(words) = &self.words {
            AnyCode::Explicit(
                Code::from_digit_words(self.q, level, self.n, words).map_err(|e| e.to_string())?,
            )
        } else if let Some(parity) = &self.parity {
            if level != 1 {
                return Err("`parity` codes have level 1".into());
            }
            AnyCode::Linear(
                LinearCode::from_parity_checks(self.q, 1, self.n, parity)
                    .map_err(|e| e.to_string())?,
            )
        } else {
            let rows = self.generator.clone().unwrap_or_default();
            AnyCode::Linear(
                LinearCode::from_generator(self.q, level, self.n, rows)
                    .map_err(|e| e.to_string())?,
            )
        };
        Ok(code)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub v: u32,
    pub k: u32,
    pub classes: Vec<Vec<Vec<u32>>>,
}

impl From<&ResolvableDesign> for DesignFile {
    fn from(d: &ResolvableDesign) -> Self {
        DesignFile {
            v: d.v,
            k: d.k,
            classes: d.classes.clone(),
        }
    }
}

impl From<&DesignFile> for ResolvableDesign {
    fn from(d: &DesignFile) -> Self {
        ResolvableDesign {
            v: d.v,
            k: d.k,
            classes: d.classes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub k: usize,
    pub s: usize,
    pub matrices: Vec<Vec<Vec<u32>>>,
}

impl From<&OrthogonalPartitionFamily> for FamilyFile {
    fn from(f: &OrthogonalPartitionFamily) -> Self {
        FamilyFile {
            k: f.k,
            s: f.s,
            matrices: f.matrices.clone(),
        }
    }
}

impl From<&FamilyFile> for OrthogonalPartitionFamily {
    fn from(f: &FamilyFile) -> Self {
        OrthogonalPartitionFamily {
            k: f.k,
            s: f.s,
            matrices: f.matrices.clone(),
        }
    }
}

/// Cells are `[i, j]` with `i` the column and `j` the row of the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingFile {
    pub n: usize,
    pub tiles: Vec<Vec<[i64; 2]>>,
    pub region: Vec<[i64; 2]>,
}

impl From<&Tiling> for TilingFile {
    fn from(t: &Tiling) -> Self {
        let cell = |v: usize| {
            let (x, y) = cell_coords(t.n, 2, v);
            [x, y]
        };
        TilingFile {
            n: t.n,
            tiles: t
                .tiles
                .iter()
                .map(|tile| tile.iter().map(|&v| cell(v)).collect())
                .collect(),
            region: t.region.iter().map(|&v| cell(v)).collect(),
        }
    }
}

impl TilingFile {
    pub fn to_tiling(&self) -> std::result::Result<Tiling, String> {
        let index = |c: &[i64; 2]| {
            cell_index(self.n, 2, (c[0], c[1])).ok_or_else(|| {
                format!(
                    "cell [{}, {}] outside the {}x{} window",
                    c[0], c[1], self.n, self.n
                )
            })
        };
        let mut tiles = Vec::with_capacity(self.tiles.len());
        for tile in &self.tiles {
            let mut cells = tile
                .iter()
                .map(index)
                .collect::<std::result::Result<Vec<_>, _>>()?;
            cells.sort_unstable();
            tiles.push(cells);
        }
        tiles.sort();
        let mut region = self
            .region
            .iter()
            .map(index)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        region.sort_unstable();
        let mut covered: Vec<usize> = tiles.concat();
        covered.sort_unstable();
        if covered != region {
            return Err("the tiles do not partition the region".into());
        }
        Ok(Tiling {
            n: self.n,
            kind: None,
            tiles,
            region,
        })
    }
}

/// Everything needed to rebuild an interleaved graph next to its graph file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterleaveSidecar {
    pub base: GraphFile,
    pub family: FamilyFile,
    pub coloring: Vec<usize>,
    pub color_to_matrix: Vec<usize>,
}

impl From<&InterleavedGraph> for InterleaveSidecar {
    fn from(ig: &InterleavedGraph) -> Self {
        InterleaveSidecar {
            base: GraphFile::from_graph(&ig.base),
            family: FamilyFile::from(&ig.family),
            coloring: ig.coloring.colors.clone(),
            color_to_matrix: ig.color_to_matrix.clone(),
        }
    }
}

/// Parses JSON text, reporting syntax errors by line and column and schema
/// errors by JSON pointer.
pub fn parse<T: DeserializeOwned>(file: &str, text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    match serde_path_to_error::deserialize::<_, T>(de) {
        Ok(v) => Ok(v),
        Err(err) => {
            let pointer = json_pointer(err.path());
            let inner = err.into_inner();
            if inner.is_syntax() || inner.is_eof() {
                Err(LabError::Syntax {
                    file: file.into(),
                    line: inner.line(),
                    column: inner.column(),
                    message: inner.to_string(),
                })
            } else {
                Err(LabError::Schema {
                    file: file.into(),
                    pointer,
                    message: strip_position(&inner.to_string()),
                })
            }
        }
    }
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse(&path.display().to_string(), &read_text(path)?)
}

pub fn to_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("file types serialize");
    s.push('\n');
    s
}

fn invalid(file: &str, message: impl Into<String>) -> LabError {
    LabError::Invalid {
        file: file.into(),
        message: message.into(),
    }
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let file = path.display().to_string();
    let f: GraphFile = load(path)?;
    f.to_graph().map_err(|e| invalid(&file, e.to_string()))
}

pub fn load_code(path: &Path) -> Result<AnyCode> {
    let file = path.display().to_string();
    let f: CodeFile = load(path)?;
    f.to_code().map_err(|e| invalid(&file, e))
}

/// Loads and checks a design: the first violated condition is the error.
pub fn load_design(path: &Path) -> Result<ResolvableDesign> {
    let file = path.display().to_string();
    let f: DesignFile = load(path)?;
    let d = ResolvableDesign::from(&f);
    verify_design(&d).map_err(|v| invalid(&file, v.to_string()))?;
    Ok(d)
}

/// Loads and checks a family; violations name the failing condition.
pub fn load_family(path: &Path) -> Result<OrthogonalPartitionFamily> {
    let file = path.display().to_string();
    let f: FamilyFile = load(path)?;
    let fam = OrthogonalPartitionFamily::from(&f);
    verify_family(&fam).map_err(|v| invalid(&file, v.to_string()))?;
    Ok(fam)
}

pub fn load_tiling(path: &Path) -> Result<Tiling> {
    let file = path.display().to_string();
    let f: TilingFile = load(path)?;
    f.to_tiling().map_err(|e| invalid(&file, e))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })
}
