//! The JSON wire formats used by the command line.
//!
//! * Graph: `{"n": 4, "edges": [[0, 2], ...], "bipartition": {"A": [...], "B": [...]}}`
//! * Layout: `{"order": [...], "pages": [{"kind": "stack", "edges": [[u, v], ...]}, ...]}`,
//!   optionally with `"bipartition"`. The graph is the union of the pages.
//! * Subdivision record: `{"paths": {"u,v": [u, d1, ..., v]}, "original": <graph>, "host": <graph>}`
//! * Tree layout: the serde form of [`TreeLayout`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::layout::{LinearLayout, Page, PageKind};
use crate::order::VertexOrder;
use crate::tree::{SubdivisionRecord, TreeLayout};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionJson {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<BipartitionJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageJson {
    pub kind: PageKind,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub order: Vec<usize>,
    pub pages: Vec<PageJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<BipartitionJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub paths: BTreeMap<String, Vec<usize>>,
    pub original: GraphJson,
    pub host: GraphJson,
}

fn pair(e: Edge) -> [usize; 2] {
    [e.u(), e.v()]
}

fn bipartition_of(g: &Graph) -> Option<BipartitionJson> {
    g.bipartition().map(|(a, b)| BipartitionJson { a, b })
}

fn attach(g: Graph, bip: Option<&BipartitionJson>) -> Result<Graph> {
    match bip {
        Some(b) => g.with_bipartition(&b.a, &b.b),
        None => Ok(g),
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|&e| pair(e)).collect(),
            bipartition: bipartition_of(g),
        }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: &GraphJson) -> Result<Graph> {
        let g = Graph::build(j.n, j.edges.iter().map(|&[u, v]| (u, v)))?;
        attach(g, j.bipartition.as_ref())
    }
}

impl From<&LinearLayout> for LayoutJson {
    fn from(l: &LinearLayout) -> Self {
        LayoutJson {
            order: l.order().as_slice().to_vec(),
            pages: l
                .pages()
                .iter()
                .map(|p| PageJson {
                    kind: p.kind,
                    edges: p.edges.iter().map(|&e| pair(e)).collect(),
                })
                .collect(),
            bipartition: bipartition_of(l.graph()),
        }
    }
}

impl LayoutJson {
    fn pages(&self) -> Vec<Page> {
        self.pages
            .iter()
            .map(|p| Page::new(p.kind, p.edges.iter().map(|&[u, v]| Edge::new(u, v)).collect()))
            .collect()
    }

    /// The layout whose graph is the union of its pages. An edge on two
    /// pages is rejected here; use [`LayoutJson::with_graph`] to get it
    /// reported as a violation instead.
    pub fn into_layout(&self) -> Result<LinearLayout> {
        let n = self.order.len();
        let g = Graph::build(n, self.pages.iter().flat_map(|p| &p.edges).map(|&[u, v]| (u, v)))?;
        let g = attach(g, self.bipartition.as_ref())?;
        LinearLayout::new(g, VertexOrder::new(self.order.clone())?, self.pages())
    }

    /// The layout of a given graph; page edges need not match it.
    pub fn with_graph(&self, graph: Graph) -> Result<LinearLayout> {
        for &[u, v] in self.pages.iter().flat_map(|p| &p.edges) {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        let graph = match (&self.bipartition, graph.is_bipartitioned()) {
            (Some(b), false) => graph.with_bipartition(&b.a, &b.b)?,
            _ => graph,
        };
        LinearLayout::new(graph, VertexOrder::new(self.order.clone())?, self.pages())
    }
}

impl From<&SubdivisionRecord> for RecordJson {
    fn from(r: &SubdivisionRecord) -> Self {
        RecordJson {
            paths: r
                .paths
                .iter()
                .map(|(e, p)| (format!("{},{}", e.u(), e.v()), p.clone()))
                .collect(),
            original: (&r.original).into(),
            host: (&r.host).into(),
        }
    }
}

impl TryFrom<&RecordJson> for SubdivisionRecord {
    type Error = Error;

    fn try_from(j: &RecordJson) -> Result<Self> {
        let mut paths = BTreeMap::new();
        for (key, p) in &j.paths {
            let parsed = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
            let Some((u, v)) = parsed else {
                return Err(Error::InvalidRecord(format!("bad edge key {key:?}")));
            };
            paths.insert(Edge::new(u, v), p.clone());
        }
        let rec = SubdivisionRecord {
            host: (&j.host).try_into()?,
            original: (&j.original).try_into()?,
            paths,
        };
        rec.validate()?;
        Ok(rec)
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn graph_to_json(g: &Graph) -> String {
    pretty(&GraphJson::from(g))
}

pub fn graph_from_json(s: &str) -> Result<Graph> {
    (&serde_json::from_str::<GraphJson>(s)?).try_into()
}

pub fn layout_to_json(l: &LinearLayout) -> String {
    pretty(&LayoutJson::from(l))
}

pub fn layout_from_json(s: &str) -> Result<LinearLayout> {
    serde_json::from_str::<LayoutJson>(s)?.into_layout()
}

pub fn record_to_json(r: &SubdivisionRecord) -> String {
    pretty(&RecordJson::from(r))
}

pub fn record_from_json(s: &str) -> Result<SubdivisionRecord> {
    (&serde_json::from_str::<RecordJson>(s)?).try_into()
}

pub fn tree_layout_to_json(t: &TreeLayout) -> String {
    pretty(t)
}

pub fn tree_layout_from_json(s: &str) -> Result<TreeLayout> {
    Ok(serde_json::from_str(s)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    pretty(value)
}
