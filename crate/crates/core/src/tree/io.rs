use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{EdgeId, Tree, TreeError, Vertex, WeightedTree};

/// On-disk tree format: `{"n", "edges", "weights"?, "core"?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core: Option<Vec<EdgeId>>,
}

impl TreeJson {
    pub fn from_tree(tree: &Tree) -> Self {
        TreeJson {
            n: tree.vertex_count(),
            edges: tree.edges().iter().map(|&(u, v)| [u, v]).collect(),
            weights: None,
            core: tree.core_edges().map(<[EdgeId]>::to_vec),
        }
    }

    pub fn from_weighted(wt: &WeightedTree) -> Self {
        let mut json = TreeJson::from_tree(wt.tree());
        if !wt.is_unit() {
            json.weights = Some(wt.weights().to_vec());
        }
        json
    }

    pub fn parse(text: &str) -> Result<Self, TreeError> {
        serde_json::from_str(text).map_err(|e| TreeError::Json(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("tree JSON serialises")
    }

    pub fn to_tree(&self) -> Result<Tree, TreeError> {
        let tree = Tree::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)).collect())?;
        match &self.core {
            Some(core) => {
                let tree = tree.with_core(core.clone())?;
                match tree.core_center() {
                    Some(c) => tree.with_root(c),
                    None => Ok(tree),
                }
            }
            None => Ok(tree),
        }
    }

    pub fn to_weighted(&self) -> Result<WeightedTree, TreeError> {
        let tree = self.to_tree()?;
        match &self.weights {
            Some(w) => WeightedTree::new(tree, w.clone()),
            None => Ok(WeightedTree::unit(tree)),
        }
    }
}

/// Graphviz rendering; core edges are drawn bold.
pub fn to_dot(tree: &Tree) -> String {
    let core = tree.core_edges().unwrap_or(&[]);
    let mut out = String::from("graph T {\n");
    for v in 0..tree.vertex_count() {
        writeln!(out, "  {v};").unwrap();
    }
    for (id, &(u, v)) in tree.edges().iter().enumerate() {
        if core.contains(&id) {
            writeln!(out, "  {u} -- {v} [style=bold];").unwrap();
        } else {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
