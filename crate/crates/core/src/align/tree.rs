use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pairwise::{align_bytes, AlignMode};
use super::{AlignError, ScoringScheme};
use crate::seq::Sequence;

const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Labelled square matrix of pairwise distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    /// Checks shape, symmetry, zero diagonal and distinct labels.
    pub fn new(labels: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self, AlignError> {
        let bad = |msg: String| Err(AlignError::MalformedMatrix(msg));
        let n = labels.len();
        if n == 0 {
            return bad("no taxa".into());
        }
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return bad(format!("expected a {n}x{n} matrix"));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || labels[..i].contains(label) {
                return bad(format!("empty or duplicate label {label:?}"));
            }
        }
        for i in 0..n {
            if values[i][i] != 0.0 {
                return bad(format!("non-zero diagonal at {}", labels[i]));
            }
            for j in 0..n {
                let v = values[i][j];
                if !v.is_finite() || v < 0.0 {
                    return bad(format!("invalid distance {v} between {} and {}", labels[i], labels[j]));
                }
                if (v - values[j][i]).abs() > SYMMETRY_TOLERANCE {
                    return bad(format!("asymmetric entry between {} and {}", labels[i], labels[j]));
                }
            }
        }
        Ok(DistanceMatrix { labels, values })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    /// Header row of labels, then one labelled row per taxon.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            let _ = write!(out, "\t{label}");
        }
        out.push('\n');
        for (label, row) in self.labels.iter().zip(&self.values) {
            out.push_str(label);
            for v in row {
                let _ = write!(out, "\t{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, AlignError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(AlignError::Parse { line: 1, reason: "empty matrix".into() })?;
        let labels: Vec<String> = header.split('\t').skip(1).map(|s| s.trim().to_string()).collect();
        let mut values = Vec::new();
        for (k, (idx, line)) in lines.enumerate() {
            let parse_err = |reason: String| AlignError::Parse { line: idx + 1, reason };
            let mut cells = line.split('\t');
            let label = cells.next().unwrap_or("").trim();
            if labels.get(k).map(String::as_str) != Some(label) {
                return Err(parse_err(format!("row label {label:?} does not match the header")));
            }
            let row = cells
                .map(|c| c.trim().parse::<f64>().map_err(|_| parse_err(format!("bad number {c:?}"))))
                .collect::<Result<Vec<f64>, _>>()?;
            values.push(row);
        }
        DistanceMatrix::new(labels, values)
    }
}

/// `1 - identities / length` of the global alignment for every pair.
pub fn distance_matrix(seqs: &[Sequence], scheme: &ScoringScheme) -> Result<DistanceMatrix, AlignError> {
    if seqs.len() < 2 {
        return Err(AlignError::InvalidParameter("need at least two sequences".into()));
    }
    if let Some(other) = seqs.iter().find(|s| s.alphabet() != seqs[0].alphabet()) {
        return Err(AlignError::AlphabetMismatch {
            query: seqs[0].alphabet(),
            subject: other.alphabet(),
        });
    }
    let n = seqs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let dists: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let al = align_bytes(seqs[i].as_bytes(), seqs[j].as_bytes(), scheme, AlignMode::Global);
            1.0 - al.identities as f64 / al.len() as f64
        })
        .collect();
    let mut values = vec![vec![0.0; n]; n];
    for (&(i, j), &d) in pairs.iter().zip(&dists) {
        values[i][j] = d;
        values[j][i] = d;
    }
    let labels = seqs.iter().map(|s| s.id().to_string()).collect();
    DistanceMatrix::new(labels, values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeNode {
    /// Set on leaves only.
    pub label: Option<String>,
    pub children: Vec<usize>,
    pub height: f64,
    /// Length of the branch to the parent; zero at the root.
    pub branch: f64,
}

/// Rooted tree stored as an arena; the root is the last node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<TreeNode>,
}

impl Tree {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn height(&self) -> f64 {
        self.nodes[self.root()].height
    }

    /// Root-to-leaf path length for every leaf, keyed by label, in leaf order.
    pub fn leaf_depths(&self) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root(), 0.0)];
        while let Some((node, depth)) = stack.pop() {
            let n = &self.nodes[node];
            match &n.label {
                Some(label) => out.push((label.clone(), depth)),
                None => {
                    for &c in n.children.iter().rev() {
                        stack.push((c, depth + self.nodes[c].branch));
                    }
                }
            }
        }
        out
    }

    pub fn newick(&self) -> String {
        let mut out = String::new();
        self.write_node(self.root(), &mut out);
        out.push(';');
        out
    }

    fn write_node(&self, idx: usize, out: &mut String) {
        let node = &self.nodes[idx];
        match &node.label {
            Some(label) => out.push_str(&quote_label(label)),
            None => {
                out.push('(');
                for (k, &c) in node.children.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    self.write_node(c, out);
                    let _ = write!(out, ":{}", self.nodes[c].branch);
                }
                out.push(')');
            }
        }
    }
}

fn quote_label(label: &str) -> String {
    if label.chars().any(|c| "()[]':;,".contains(c) || c.is_whitespace()) {
        format!("'{}'", label.replace('\'', "''"))
    } else {
        label.to_string()
    }
}

struct Cluster {
    node: usize,
    size: usize,
    key: String,
}

/// Average-linkage clustering. Each merge creates a node at half the merge
/// distance; equal distances merge the pair with the smallest leaf labels.
pub fn upgma(dist: &DistanceMatrix) -> Result<Tree, AlignError> {
    let dist = DistanceMatrix::new(dist.labels.clone(), dist.values.clone())?;
    let n = dist.len();
    let mut nodes: Vec<TreeNode> = dist
        .labels
        .iter()
        .map(|l| TreeNode {
            label: Some(l.clone()),
            children: Vec::new(),
            height: 0.0,
            branch: 0.0,
        })
        .collect();
    let mut clusters: Vec<Option<Cluster>> = dist
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| Some(Cluster { node: i, size: 1, key: l.clone() }))
        .collect();
    let mut d = dist.values.clone();

    for _ in 1..n {
        let mut best: Option<(f64, usize, usize)> = None;
        let live: Vec<usize> = (0..clusters.len()).filter(|&i| clusters[i].is_some()).collect();
        let key = |i: usize| clusters[i].as_ref().map(|c| c.key.as_str()).unwrap_or("");
        let pair_key = |a: usize, b: usize| {
            let (x, y) = (key(a), key(b));
            if x <= y { (x, y) } else { (y, x) }
        };
        for (ai, &a) in live.iter().enumerate() {
            for &b in &live[ai + 1..] {
                let v = d[a][b];
                let better = match best {
                    None => true,
                    Some((bv, ba, bb)) => v < bv || (v == bv && pair_key(a, b) < pair_key(ba, bb)),
                };
                if better {
                    best = Some((v, a, b));
                }
            }
        }
        let (v, a, b) = best.expect("at least two live clusters");
        let (first, second) = if key(a) <= key(b) { (a, b) } else { (b, a) };
        let ca = clusters[first].take().expect("live");
        let cb = clusters[second].take().expect("live");
        let height = v / 2.0;
        for c in [&ca, &cb] {
            nodes[c.node].branch = height - nodes[c.node].height;
        }
        nodes.push(TreeNode {
            label: None,
            children: vec![ca.node, cb.node],
            height,
            branch: 0.0,
        });
        let size = ca.size + cb.size;
        let mut row = vec![0.0; d.len() + 1];
        for &x in &live {
            if x != a && x != b {
                let avg = (ca.size as f64 * d[first][x] + cb.size as f64 * d[second][x]) / size as f64;
                row[x] = avg;
            }
        }
        for (x, r) in d.iter_mut().enumerate() {
            r.push(row[x]);
        }
        d.push(row);
        clusters.push(Some(Cluster {
            node: nodes.len() - 1,
            size,
            key: ca.key.min(cb.key),
        }));
    }
    Ok(Tree { nodes })
}
