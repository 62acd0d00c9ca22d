//! Labeled r-ary forests with child slots, their enumeration by component
//! count, and the explicit bijections between decreasing forests and
//! independent-set partitions of the graphs G(n, r) and H(n, r).

use serde_json::{Map, Value};
use thiserror::Error;

use crate::graph::{build_g_nr, build_h_nr, GraphError, SetPartition};

/// Default cap on the vertex count for forest enumeration.
pub const DEFAULT_FOREST_BOUND: usize = 8;

/// Errors from forest construction and the bijections.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    /// Forest enumeration requested above the bound.
    #[error("forest on {vertices} vertices is above the enumeration bound {bound}")]
    BoundExceeded {
        /// Requested vertex count.
        vertices: usize,
        /// Configured bound.
        bound: usize,
    },
    /// Structurally invalid forest data.
    #[error("malformed forest: {0}")]
    Malformed(String),
    /// The forest does not have the required label direction.
    #[error("forest labels are not {0}")]
    WrongDirection(&'static str),
    /// A partition argument does not fit the bijection's domain.
    #[error("invalid partition: {0}")]
    BadPartition(String),
}

impl From<GraphError> for ForestError {
    fn from(e: GraphError) -> Self {
        ForestError::BadPartition(e.to_string())
    }
}

/// Label direction along root-to-leaf paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Labels increase away from the roots.
    Increasing,
    /// Labels decrease away from the roots.
    Decreasing,
}

/// A forest on labels `1..=n` in which every vertex has at most `r` children,
/// each occupying a distinct slot in `1..=r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RaryForest {
    r: usize,
    n: usize,
    /// `parents[i]` describes label `i+1`: `None` for roots, otherwise
    /// `(parent label, slot)`.
    parents: Vec<Option<(usize, usize)>>,
}

impl RaryForest {
    /// Validates parent pointers, slot bounds, slot uniqueness and
    /// acyclicity.
    pub fn new(
        r: usize,
        n: usize,
        parents: Vec<Option<(usize, usize)>>,
    ) -> Result<Self, ForestError> {
        if parents.len() != n {
            return Err(ForestError::Malformed(format!(
                "expected {n} parent entries, got {}",
                parents.len()
            )));
        }
        let mut slots = std::collections::BTreeSet::new();
        for (i, p) in parents.iter().enumerate() {
            if let Some((parent, slot)) = p {
                if *parent == 0 || *parent > n || *parent == i + 1 {
                    return Err(ForestError::Malformed(format!(
                        "vertex {} has parent {parent} out of range",
                        i + 1
                    )));
                }
                if *slot == 0 || *slot > r {
                    return Err(ForestError::Malformed(format!(
                        "vertex {} sits in slot {slot}, arity is {r}",
                        i + 1
                    )));
                }
                if !slots.insert((*parent, *slot)) {
                    return Err(ForestError::Malformed(format!(
                        "two children share slot {slot} of vertex {parent}"
                    )));
                }
            }
        }
        let forest = RaryForest { r, n, parents };
        // acyclicity: follow parent pointers from each vertex
        for start in 1..=n {
            let mut cur = start;
            let mut hops = 0;
            while let Some((p, _)) = forest.parents[cur - 1] {
                cur = p;
                hops += 1;
                if hops > n {
                    return Err(ForestError::Malformed("parent pointers form a cycle".into()));
                }
            }
        }
        Ok(forest)
    }

    pub fn arity(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Parent and slot of `label`, or `None` for a root.
    pub fn parent_of(&self, label: usize) -> Option<(usize, usize)> {
        self.parents[label - 1]
    }

    /// Number of components, i.e. of roots.
    pub fn components(&self) -> usize {
        self.parents.iter().filter(|p| p.is_none()).count()
    }

    pub fn is_decreasing(&self) -> bool {
        self.parents
            .iter()
            .enumerate()
            .all(|(i, p)| p.map_or(true, |(parent, _)| parent > i + 1))
    }

    pub fn is_increasing(&self) -> bool {
        self.parents
            .iter()
            .enumerate()
            .all(|(i, p)| p.map_or(true, |(parent, _)| parent < i + 1))
    }

    /// Relabels through `x -> n + 1 - x`, the involution swapping the
    /// increasing and decreasing classes. Slots are kept.
    pub fn reverse_labels(&self) -> RaryForest {
        let n = self.n;
        let mut parents = vec![None; n];
        for (i, p) in self.parents.iter().enumerate() {
            if let Some((parent, slot)) = p {
                parents[n - (i + 1)] = Some((n + 1 - parent, *slot));
            }
        }
        RaryForest {
            r: self.r,
            n,
            parents,
        }
    }

    /// JSON form: `{r, n, vertices: [{label, parent, slot}]}` with `parent`
    /// and `slot` null on roots.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = (1..=self.n)
            .map(|label| {
                let mut v = Map::new();
                v.insert("label".into(), Value::from(label));
                match self.parents[label - 1] {
                    Some((parent, slot)) => {
                        v.insert("parent".into(), Value::from(parent));
                        v.insert("slot".into(), Value::from(slot));
                    }
                    None => {
                        v.insert("parent".into(), Value::Null);
                        v.insert("slot".into(), Value::Null);
                    }
                }
                Value::Object(v)
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("r".into(), Value::from(self.r));
        obj.insert("n".into(), Value::from(self.n));
        obj.insert("vertices".into(), Value::Array(vertices));
        Value::Object(obj)
    }
}

/// Enumerates all r-ary forests on `n` vertices with exactly `k` components
/// and the given label direction, under the default bound.
pub fn enumerate_forests(
    r: usize,
    n: usize,
    k: usize,
    direction: Direction,
) -> Result<Vec<RaryForest>, ForestError> {
    enumerate_forests_bounded(r, n, k, direction, DEFAULT_FOREST_BOUND)
}

/// As [`enumerate_forests`] with an explicit vertex bound.
///
/// Decreasing forests are generated directly (deciding labels from high to
/// low, each either a root or a child of an already placed larger label);
/// the increasing family is obtained by label reversal.
pub fn enumerate_forests_bounded(
    r: usize,
    n: usize,
    k: usize,
    direction: Direction,
    bound: usize,
) -> Result<Vec<RaryForest>, ForestError> {
    assert!(r >= 1);
    if n > bound {
        return Err(ForestError::BoundExceeded { vertices: n, bound });
    }
    if k > n {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(vec![RaryForest {
            r,
            n: 0,
            parents: Vec::new(),
        }]);
    }

    let mut out = Vec::new();
    let mut parents: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut slot_taken = vec![vec![false; r + 1]; n + 1];

    // vertex n is forced to be a root; decide n-1, n-2, ..., 1
    fn go(
        label: usize,
        roots: usize,
        r: usize,
        n: usize,
        k: usize,
        parents: &mut Vec<Option<(usize, usize)>>,
        slot_taken: &mut Vec<Vec<bool>>,
        out: &mut Vec<RaryForest>,
    ) {
        if label == 0 {
            if roots == k {
                out.push(RaryForest {
                    r,
                    n,
                    parents: parents.clone(),
                });
            }
            return;
        }
        // remaining labels can each still become a root
        if roots > k || roots + label < k {
            return;
        }
        parents[label - 1] = None;
        go(label - 1, roots + 1, r, n, k, parents, slot_taken, out);
        for parent in (label + 1)..=n {
            for slot in 1..=r {
                if !slot_taken[parent][slot] {
                    slot_taken[parent][slot] = true;
                    parents[label - 1] = Some((parent, slot));
                    go(label - 1, roots, r, n, k, parents, slot_taken, out);
                    parents[label - 1] = None;
                    slot_taken[parent][slot] = false;
                }
            }
        }
    }

    go(
        n - 1,
        1,
        r,
        n,
        k,
        &mut parents,
        &mut slot_taken,
        &mut out,
    );

    match direction {
        Direction::Decreasing => Ok(out),
        Direction::Increasing => Ok(out.iter().map(RaryForest::reverse_labels).collect()),
    }
}

fn require_decreasing(f: &RaryForest) -> Result<(), ForestError> {
    if f.is_decreasing() {
        Ok(())
    } else {
        Err(ForestError::WrongDirection("decreasing"))
    }
}

/// Maps a decreasing forest to a partition of `G(n, r)` into
/// `k + (r-1)n` independent sets: every vertex of `{1..rn}` starts as a
/// singleton, and each non-root `x` with parent `a` and slot `p` links `xr`
/// into the chain of `z = (a-1)r + p`.
pub fn forest_to_partition_g(f: &RaryForest) -> Result<SetPartition, ForestError> {
    require_decreasing(f)?;
    let (r, n) = (f.arity(), f.vertex_count());
    chain_partition(r * n, (1..=n).filter_map(|x| {
        f.parent_of(x).map(|(a, p)| (x * r, (a - 1) * r + p))
    }))
}

/// Maps a decreasing forest to a partition of `H(n, r)`: each non-root `x`
/// with parent `a` and slot `p` links `x` itself to `y = (a-1)r + p`.
pub fn forest_to_partition_h(f: &RaryForest) -> Result<SetPartition, ForestError> {
    require_decreasing(f)?;
    let (r, n) = (f.arity(), f.vertex_count());
    chain_partition(r * n, (1..=n).filter_map(|x| {
        f.parent_of(x).map(|(a, p)| (x, (a - 1) * r + p))
    }))
}

// Builds the partition of {1..total} generated by the given links.
fn chain_partition(
    total: usize,
    links: impl Iterator<Item = (usize, usize)>,
) -> Result<SetPartition, ForestError> {
    let mut repr: Vec<usize> = (0..=total).collect();
    fn find(repr: &mut Vec<usize>, v: usize) -> usize {
        let mut root = v;
        while repr[root] != root {
            root = repr[root];
        }
        let mut cur = v;
        while repr[cur] != root {
            let next = repr[cur];
            repr[cur] = root;
            cur = next;
        }
        root
    }
    for (u, v) in links {
        if u > total || v > total {
            return Err(ForestError::Malformed(format!(
                "link ({u}, {v}) leaves the vertex range 1..={total}"
            )));
        }
        let (ru, rv) = (find(&mut repr, u), find(&mut repr, v));
        repr[ru] = rv;
    }
    let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 1..=total {
        buckets.entry(find(&mut repr, v)).or_default().push(v);
    }
    Ok(SetPartition::new(total, buckets.into_values().collect())?)
}

/// Inverse of [`forest_to_partition_g`]: reads a decreasing forest off a
/// partition of `G(n, r)` into `k + (r-1)n` independent sets.
pub fn partition_to_forest_g(
    p: &SetPartition,
    n: usize,
    r: usize,
) -> Result<RaryForest, ForestError> {
    check_partition(p, n, r, &build_g_nr_checked(n, r))?;
    if n == 0 {
        return RaryForest::new(r, 0, Vec::new());
    }
    let mut parents: Vec<Option<(usize, usize)>> = vec![None; n];
    for x in 1..=n {
        let block = &p.blocks()[p.block_of(x * r).expect("vertex in some block")];
        let m_only = block.iter().all(|&v| v % r == 0);
        let is_max = *block.last().unwrap() == x * r;
        if m_only && is_max {
            continue; // root
        }
        let z = *block
            .iter()
            .find(|&&v| v > x * r)
            .ok_or_else(|| ForestError::BadPartition(format!(
                "no chain element above {} in block", x * r
            )))?;
        let a = (z - 1) / r + 1;
        let slot = (z - 1) % r + 1;
        parents[x - 1] = Some((a, slot));
    }
    RaryForest::new(r, n, parents)
}

/// Inverse of [`forest_to_partition_h`] for partitions of `H(n, r)`.
pub fn partition_to_forest_h(
    p: &SetPartition,
    n: usize,
    r: usize,
) -> Result<RaryForest, ForestError> {
    check_partition(p, n, r, &build_h_nr_checked(n, r))?;
    if n == 0 {
        return RaryForest::new(r, 0, Vec::new());
    }
    let mut parents: Vec<Option<(usize, usize)>> = vec![None; n];
    for x in 1..=n {
        let block = &p.blocks()[p.block_of(x).expect("vertex in some block")];
        if *block.last().unwrap() == x {
            continue; // largest in its block and at most n: a root
        }
        let pos = block.binary_search(&x).expect("x is in its block");
        let y = block[pos + 1];
        let a = (y - 1) / r + 1;
        let slot = (y - 1) % r + 1;
        if a <= x {
            return Err(ForestError::BadPartition(format!(
                "successor {y} of {x} is too close for a decreasing forest"
            )));
        }
        parents[x - 1] = Some((a, slot));
    }
    RaryForest::new(r, n, parents)
}

fn build_g_nr_checked(n: usize, r: usize) -> crate::graph::LabeledGraph {
    if n == 0 {
        crate::graph::LabeledGraph::empty(0)
    } else {
        build_g_nr(n, r)
    }
}

fn build_h_nr_checked(n: usize, r: usize) -> crate::graph::LabeledGraph {
    if n == 0 {
        crate::graph::LabeledGraph::empty(0)
    } else {
        build_h_nr(n, r)
    }
}

fn check_partition(
    p: &SetPartition,
    n: usize,
    r: usize,
    g: &crate::graph::LabeledGraph,
) -> Result<(), ForestError> {
    assert!(r >= 1);
    if p.ground_size() != r * n {
        return Err(ForestError::BadPartition(format!(
            "partition covers {} elements, expected {}",
            p.ground_size(),
            r * n
        )));
    }
    if p.num_blocks() < (r - 1) * n || p.num_blocks() - (r - 1) * n > n {
        return Err(ForestError::BadPartition(format!(
            "{} blocks do not correspond to any component count",
            p.num_blocks()
        )));
    }
    if !p.is_independent_in(g) {
        return Err(ForestError::BadPartition(
            "a block spans an edge".into(),
        ));
    }
    Ok(())
}
