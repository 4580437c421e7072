//! JSON artifacts. Files refer to each other by paths relative to the
//! referring file; a quantale reference may also name a builtin
//! (`builtin:boolean`, `builtin:lukasiewicz:3`, `builtin:trivial`,
//! `builtin:skew`). Edge indices are 1-based and `"*"` is the basepoint.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::enriched::{validate_category, EnrichedCategory};
use crate::error::Error;
use crate::graph::{validate_morphism, Graph, GraphMorphism};
use crate::labels::LabelSet;
use crate::module::{validate_module, ModuleLattice, RawModule, Side};
use crate::presheaf::{Copresheaf, CopresheafSpace, Presheaf, PresheafSpace};
use crate::quantale::{validate_quantale, Quantale, RawQuantale};
use crate::report::{Check, SuiteReport};
use crate::simplex::LabeledSimplex;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: schema: {message}")]
    Schema { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Invalid { path: PathBuf, source: Error },
}

pub type LoadResult<T> = std::result::Result<T, LoadError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    pub labels: Vec<String>,
    #[serde(default)]
    pub pointed: bool,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub source: RawGraph,
    pub target: RawGraph,
    /// `edge_map[e]` is the 1-based image of source edge `e+1`, `0` if deleted.
    pub edge_map: Vec<usize>,
    /// Ordered fibers keyed by 1-based target edge; absent means empty.
    #[serde(default)]
    pub fibers: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSimplex {
    pub labels: Vec<String>,
    pub chain: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub quantale: String,
    #[serde(flatten)]
    pub module: RawModule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub quantale: String,
    pub objects: Vec<String>,
    /// Keyed `"x,y"`.
    pub hom: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafFile {
    pub category: String,
    /// `"self"` or a module path.
    pub module: String,
    /// `"co"` for a copresheaf.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    pub values: BTreeMap<String, String>,
}

impl PresheafFile {
    pub fn is_co(&self) -> bool {
        self.side.as_deref() == Some("co")
    }
}

pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> LoadResult<T> {
    serde_json::from_str(text).map_err(|e| LoadError::Schema {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read<T: DeserializeOwned>(path: &Path) -> LoadResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse(path, &text)
}

fn invalid(path: &Path) -> impl Fn(Error) -> LoadError + '_ {
    move |source| LoadError::Invalid {
        path: path.to_path_buf(),
        source,
    }
}

fn failed(path: &Path, report: &SuiteReport) -> LoadResult<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(LoadError::Invalid {
            path: path.to_path_buf(),
            source: Error::LawViolated {
                law: c.name.clone(),
                witness: c.witness.clone().unwrap_or_default(),
            },
        }),
    }
}

fn resolve(base: &Path, reference: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(reference)
}

fn builtin_quantale(name: &str) -> Option<Quantale> {
    match name {
        "boolean" => Some(Quantale::boolean()),
        "trivial" => Some(Quantale::trivial()),
        "skew" => Some(Quantale::skew_chain()),
        _ => {
            let n = name.strip_prefix("lukasiewicz:")?.parse().ok()?;
            (n >= 1).then(|| Quantale::lukasiewicz(n))
        }
    }
}

impl RawGraph {
    pub fn from_graph(g: &Graph) -> Self {
        RawGraph {
            labels: g.labels().names().to_vec(),
            pointed: g.labels().is_pointed(),
            edges: g
                .edges()
                .iter()
                .map(|&(s, t)| [g.labels().vertex_name(s).to_string(), g.labels().vertex_name(t).to_string()])
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, Error> {
        let labels = LabelSet::new(self.labels.iter().cloned(), self.pointed)?;
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|[s, t]| (s.as_str(), t.as_str())).collect();
        Graph::from_names(&labels, &edges)
    }
}

impl RawMorphism {
    pub fn from_morphism(m: &GraphMorphism) -> Self {
        RawMorphism {
            source: RawGraph::from_graph(m.source()),
            target: RawGraph::from_graph(m.target()),
            edge_map: m.edge_map().iter().map(|t| t.map_or(0, |t| t + 1)).collect(),
            fibers: m
                .fibers()
                .iter()
                .enumerate()
                .filter(|(_, f)| !f.is_empty())
                .map(|(t, f)| ((t + 1).to_string(), f.iter().map(|e| e + 1).collect()))
                .collect(),
        }
    }

    /// The morphism with its fiber data checked; the graph conditions are
    /// not checked.
    pub fn to_parts(&self) -> Result<GraphMorphism, Error> {
        let source = self.source.to_graph()?;
        let target = self.target.to_graph()?;
        let edge_map = self
            .edge_map
            .iter()
            .map(|&t| match t {
                0 => Ok(None),
                t if t <= target.len() => Ok(Some(t - 1)),
                t => Err(Error::IndexOutOfRange {
                    index: t,
                    bound: target.len(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut fibers = vec![Vec::new(); target.len()];
        for (key, fiber) in &self.fibers {
            let t: usize = key
                .parse()
                .map_err(|_| Error::Invalid(format!("fiber key `{key}` is not an edge index")))?;
            if t == 0 || t > target.len() {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    bound: target.len(),
                });
            }
            fibers[t - 1] = fiber
                .iter()
                .map(|&e| {
                    if e == 0 || e > source.len() {
                        Err(Error::IndexOutOfRange {
                            index: e,
                            bound: source.len(),
                        })
                    } else {
                        Ok(e - 1)
                    }
                })
                .collect::<Result<_, _>>()?;
        }
        GraphMorphism::from_parts(source, target, edge_map, fibers)
    }
}

impl RawSimplex {
    pub fn to_simplex(&self) -> Result<LabeledSimplex, Error> {
        let labels = LabelSet::unpointed(self.labels.iter().cloned())?;
        let chain: Vec<&str> = self.chain.iter().map(String::as_str).collect();
        LabeledSimplex::from_names(&labels, &chain)
    }
}

/// Loads referenced artifacts, validating each one; a law violation in a
/// referenced file is an error carrying the validator's witness.
pub fn load_quantale_ref(from: &Path, reference: &str) -> LoadResult<Arc<Quantale>> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return builtin_quantale(name).map(Arc::new).ok_or_else(|| LoadError::Schema {
            path: from.to_path_buf(),
            message: format!("unknown builtin quantale `{name}`"),
        });
    }
    load_quantale(&resolve(from, reference))
}

pub fn load_quantale(path: &Path) -> LoadResult<Arc<Quantale>> {
    let raw: RawQuantale = read(path)?;
    failed(path, &validate_quantale(&raw))?;
    Quantale::from_raw(&raw).map(Arc::new).map_err(invalid(path))
}

pub fn load_module(path: &Path) -> LoadResult<ModuleLattice> {
    let file: ModuleFile = read(path)?;
    let base = load_quantale_ref(path, &file.quantale)?;
    failed(path, &validate_module(&base, &file.module))?;
    ModuleLattice::from_raw(base, &file.module).map_err(invalid(path))
}

fn category_parts(path: &Path, file: &CategoryFile) -> LoadResult<EnrichedCategory> {
    let base = load_quantale_ref(path, &file.quantale)?;
    let objects = LabelSet::unpointed(file.objects.iter().cloned()).map_err(invalid(path))?;
    let n = objects.len();
    let mut hom = vec![vec![None; n]; n];
    for (key, value) in &file.hom {
        let (x, y) = key.split_once(',').ok_or_else(|| LoadError::Schema {
            path: path.to_path_buf(),
            message: format!("hom key `{key}` is not of the form `x,y`"),
        })?;
        let find = |name: &str| {
            objects
                .index_of(name.trim())
                .ok_or_else(|| invalid(path)(Error::UnknownObject(name.trim().to_string())))
        };
        let (x, y) = (find(x)?, find(y)?);
        hom[x][y] = Some(base.index_of(value).map_err(invalid(path))?);
    }
    let mut table = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            table[x][y] = hom[x][y].ok_or_else(|| LoadError::Schema {
                path: path.to_path_buf(),
                message: format!("missing hom `{},{}`", objects.name(x), objects.name(y)),
            })?;
        }
    }
    EnrichedCategory::new(base, objects, table).map_err(invalid(path))
}

/// Reads a category without checking its laws.
pub fn read_category(path: &Path) -> LoadResult<EnrichedCategory> {
    let file: CategoryFile = read(path)?;
    category_parts(path, &file)
}

/// Parses a category from text. File references are resolved against
/// `path`, so only `builtin:` quantales work when there is no file system.
pub fn parse_category(path: &Path, text: &str) -> LoadResult<EnrichedCategory> {
    let file: CategoryFile = parse(path, text)?;
    let c = category_parts(path, &file)?;
    failed(path, &validate_category(&c))?;
    Ok(c)
}

pub fn load_category(path: &Path) -> LoadResult<EnrichedCategory> {
    let c = read_category(path)?;
    failed(path, &validate_category(&c))?;
    Ok(c)
}

pub fn category_to_file(c: &EnrichedCategory, quantale: &str) -> CategoryFile {
    let mut hom = BTreeMap::new();
    for x in 0..c.len() {
        for y in 0..c.len() {
            let key = format!("{},{}", c.object_name(x), c.object_name(y));
            hom.insert(key, c.base().name(c.hom(x, y)).to_string());
        }
    }
    CategoryFile {
        quantale: quantale.to_string(),
        objects: c.objects().names().to_vec(),
        hom,
    }
}

/// A presheaf or copresheaf file, resolved but not yet checked.
#[derive(Debug, Clone)]
pub enum LoadedTable {
    Presheaf(PresheafSpace, Vec<usize>),
    Copresheaf(CopresheafSpace, Vec<usize>),
}

fn table_values(path: &Path, c: &EnrichedCategory, m: &ModuleLattice, values: &BTreeMap<String, String>) -> LoadResult<Vec<usize>> {
    let mut out = vec![None; c.len()];
    for (x, v) in values {
        let x = c
            .objects()
            .index_of(x)
            .ok_or_else(|| invalid(path)(Error::UnknownObject(x.clone())))?;
        out[x] = Some(m.index_of(v).map_err(invalid(path))?);
    }
    out.into_iter()
        .enumerate()
        .map(|(x, v)| {
            v.ok_or_else(|| LoadError::Schema {
                path: path.to_path_buf(),
                message: format!("no value for object `{}`", c.object_name(x)),
            })
        })
        .collect()
}

pub fn read_table(path: &Path) -> LoadResult<LoadedTable> {
    let file: PresheafFile = read(path)?;
    if let Some(side) = &file.side {
        if side != "co" {
            return Err(LoadError::Schema {
                path: path.to_path_buf(),
                message: format!("side must be `co`, found `{side}`"),
            });
        }
    }
    let c = load_category(&resolve(path, &file.category))?;
    let side = if file.is_co() { Side::Right } else { Side::Left };
    let m = if file.module == "self" {
        ModuleLattice::regular(c.base().clone(), side)
    } else {
        load_module(&resolve(path, &file.module))?
    };
    let values = table_values(path, &c, &m, &file.values)?;
    if file.is_co() {
        let space = CopresheafSpace::new(c, m).map_err(invalid(path))?;
        Ok(LoadedTable::Copresheaf(space, values))
    } else {
        let space = PresheafSpace::new(c, m).map_err(invalid(path))?;
        Ok(LoadedTable::Presheaf(space, values))
    }
}

pub fn load_presheaf(path: &Path) -> LoadResult<(PresheafSpace, Presheaf)> {
    match read_table(path)? {
        LoadedTable::Presheaf(space, values) => {
            let f = space.presheaf(values).map_err(invalid(path))?;
            Ok((space, f))
        }
        LoadedTable::Copresheaf(..) => Err(LoadError::Schema {
            path: path.to_path_buf(),
            message: "expected a presheaf, found a copresheaf".into(),
        }),
    }
}

pub fn load_copresheaf(path: &Path) -> LoadResult<(CopresheafSpace, Copresheaf)> {
    match read_table(path)? {
        LoadedTable::Copresheaf(space, values) => {
            let g = space.copresheaf(values).map_err(invalid(path))?;
            Ok((space, g))
        }
        LoadedTable::Presheaf(..) => Err(LoadError::Schema {
            path: path.to_path_buf(),
            message: "expected a copresheaf, found a presheaf".into(),
        }),
    }
}

pub fn presheaf_values(space: &PresheafSpace, f: &Presheaf) -> BTreeMap<String, String> {
    let c = space.category();
    (0..c.len())
        .map(|x| (c.object_name(x).to_string(), space.module().name(f.values()[x]).to_string()))
        .collect()
}

/// The artifact kinds accepted by [`validate_file`].
pub const KINDS: [&str; 8] = [
    "graph",
    "morphism",
    "simplex",
    "quantale",
    "module",
    "category",
    "presheaf",
    "copresheaf",
];

fn structure(result: Result<(), Error>) -> Check {
    match result {
        Ok(()) => Check::pass("structure", 1),
        Err(e) => Check::fail("structure", 1, e.to_string()),
    }
}

/// Runs the validator for `kind` on a file. Problems in the file itself are
/// reported as failed checks; unreadable or invalid referenced files are
/// errors.
pub fn validate_file(kind: &str, path: &Path) -> LoadResult<SuiteReport> {
    let mut report = SuiteReport::new();
    match kind {
        "graph" => {
            let raw: RawGraph = read(path)?;
            report.push(structure(raw.to_graph().map(|_| ())));
        }
        "morphism" => {
            let raw: RawMorphism = read(path)?;
            match raw.to_parts() {
                Ok(m) => {
                    report.push(Check::pass("structure", 1));
                    let conditions = validate_morphism(&m);
                    report.push(Check::from_witness(
                        "graph conditions",
                        m.target().len() as u64,
                        conditions.err().map(|v| v.to_string()),
                    ));
                }
                Err(e) => report.push(Check::fail("structure", 1, e.to_string())),
            }
        }
        "simplex" => {
            let raw: RawSimplex = read(path)?;
            report.push(structure(raw.to_simplex().map(|_| ())));
        }
        "quantale" => {
            let raw: RawQuantale = read(path)?;
            report.extend(validate_quantale(&raw));
        }
        "module" => {
            let file: ModuleFile = read(path)?;
            let base = load_quantale_ref(path, &file.quantale)?;
            report.extend(validate_module(&base, &file.module));
        }
        "category" => {
            let c = read_category(path)?;
            report.extend(validate_category(&c));
        }
        "presheaf" | "copresheaf" => match read_table(path)? {
            LoadedTable::Presheaf(space, values) if kind == "presheaf" => {
                report.extend(space.validate_presheaf(&values));
            }
            LoadedTable::Copresheaf(space, values) if kind == "copresheaf" => {
                report.extend(space.validate_copresheaf(&values));
            }
            _ => {
                return Err(LoadError::Schema {
                    path: path.to_path_buf(),
                    message: format!("file is not a {kind}"),
                })
            }
        },
        _ => {
            return Err(LoadError::Schema {
                path: path.to_path_buf(),
                message: format!("unknown artifact kind `{kind}`"),
            })
        }
    }
    Ok(report)
}
