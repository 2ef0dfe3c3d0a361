//! Maximal transitions and MT-trees.
//!
//! For `w` with last descent `r`, let `s > r` be maximal with `w(s) < w(r)`
//! and `u = w t_{rs}`. Then `S_w = x_r S_u + Σ_{v ∈ S(w)} S_v`, where `S(w)`
//! holds the permutations `u t_{jr}`, `j < r`, of length `ℓ(w)`. Setting
//! `x_{m+1}, x_{m+2}, … = 0` and expanding repeatedly gives the MT-tree, whose
//! good leaves sum to `S_root ↓ A_m`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::schubert::SchubertExpansion;
use crate::stanley::{StableExpansion, Terms};

/// The data `r, s, u = w t_{rs}` and `S(w)` of one maximal transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionData {
    pub r: usize,
    pub s: usize,
    pub u: Permutation,
    /// `j ↦ u t_{jr}` for each `j ∈ J(w)`, ascending in `j`.
    pub descendants: BTreeMap<usize, Permutation>,
}

impl TransitionData {
    pub fn j_set(&self) -> Vec<usize> {
        self.descendants.keys().copied().collect()
    }
}

pub fn max_transition(w: &Permutation) -> Result<TransitionData> {
    let r = w.last_descent().ok_or(Error::NoDescent)?;
    let s = (r + 1..=w.size())
        .rev()
        .find(|&s| w.at(s) < w.at(r))
        .expect("a descent at r has w(r+1) < w(r)");
    let u = w.swap_positions(r, s);
    let len = w.length();
    let descendants = (1..r)
        .map(|j| (j, u.swap_positions(j, r)))
        .filter(|(_, v)| v.length() == len)
        .collect();
    Ok(TransitionData {
        r,
        s,
        u,
        descendants,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafKind {
    /// Last descent at most `m`.
    Good,
    /// `v⁻¹(1) > m + 1`, or no further moves while the last descent exceeds `m`.
    Bad,
}

impl fmt::Display for LeafKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LeafKind::Good => "good",
            LeafKind::Bad => "bad",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub j: usize,
    pub to: usize,
}

/// An MT-tree; nodes are numbered in depth-first order with children by
/// ascending `j`, the root being node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtTree {
    m: usize,
    nodes: Vec<Permutation>,
    edges: Vec<Edge>,
    leaves: Vec<(usize, LeafKind)>,
}

pub fn mt_tree(root: &Permutation, m: usize) -> MtTree {
    let mut tree = MtTree {
        m,
        nodes: Vec::new(),
        edges: Vec::new(),
        leaves: Vec::new(),
    };
    let mut stack = vec![(None, root.clone())];
    while let Some((parent, v)) = stack.pop() {
        let id = tree.nodes.len();
        if let Some((from, j)) = parent {
            tree.edges.push(Edge { from, j, to: id });
        }
        tree.nodes.push(v.clone());
        if v.one_position() > m + 1 {
            tree.leaves.push((id, LeafKind::Bad));
            continue;
        }
        let Some(r) = v.last_descent().filter(|&r| r > m) else {
            tree.leaves.push((id, LeafKind::Good));
            continue;
        };
        let mt = max_transition(&v).expect("last descent exists");
        debug_assert_eq!(mt.r, r);
        if mt.descendants.is_empty() {
            tree.leaves.push((id, LeafKind::Bad));
        }
        for (j, child) in mt.descendants.into_iter().rev() {
            stack.push((Some((id, j)), child));
        }
    }
    tree
}

impl MtTree {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn root(&self) -> &Permutation {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[Permutation] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn leaves(&self) -> impl Iterator<Item = (&Permutation, LeafKind)> + '_ {
        self.leaves
            .iter()
            .map(|&(id, kind)| (&self.nodes[id], kind))
    }

    pub fn good_leaves(&self) -> Vec<&Permutation> {
        self.leaves()
            .filter(|l| l.1 == LeafKind::Good)
            .map(|l| l.0)
            .collect()
    }

    pub fn bad_leaves(&self) -> Vec<&Permutation> {
        self.leaves()
            .filter(|l| l.1 == LeafKind::Bad)
            .map(|l| l.0)
            .collect()
    }

    /// `Σ S_v` over good leaves, which equals `S_root ↓ A_m`.
    pub fn good_sum(&self) -> SchubertExpansion {
        let mut out = SchubertExpansion::new();
        for v in self.good_leaves() {
            out.add(v.clone(), BigUint::one());
        }
        out
    }

    fn kind_of(&self, id: usize) -> Option<LeafKind> {
        self.leaves.iter().find(|l| l.0 == id).map(|l| l.1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "root": self.root(),
            "m": self.m,
            "nodes": self.nodes,
            "edges": self.edges,
            "leaves": self
                .leaves()
                .map(|(v, kind)| json!({ "perm": v, "kind": kind }))
                .collect::<Vec<_>>(),
        })
    }

    /// Indented outline, one node per line.
    pub fn to_text(&self) -> String {
        let mut children: Vec<Vec<&Edge>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            children[e.from].push(e);
        }
        let mut out = String::new();
        let mut stack = vec![(0usize, 0usize, None)];
        while let Some((id, depth, j)) = stack.pop() {
            let _ = write!(out, "{}", "  ".repeat(depth));
            if let Some(j) = j {
                let _ = write!(out, "j={j}: ");
            }
            let _ = write!(out, "{}", self.nodes[id]);
            match self.kind_of(id) {
                Some(kind) => {
                    let _ = writeln!(out, " ({kind})");
                }
                None => out.push('\n'),
            }
            for e in children[id].iter().rev() {
                stack.push((e.to, depth + 1, Some(e.j)));
            }
        }
        out
    }
}

/// Graphviz rendering; good leaves are boxed, bad leaves are struck grey.
pub fn tree_to_dot(t: &MtTree) -> String {
    let mut out = String::from("digraph mt_tree {\n  node [shape=plaintext];\n");
    for (id, v) in t.nodes.iter().enumerate() {
        let style = match t.kind_of(id) {
            Some(LeafKind::Good) => ", shape=box, color=\"darkgreen\"",
            Some(LeafKind::Bad) => ", style=dashed, shape=box, color=\"gray\", fontcolor=\"gray\"",
            None => "",
        };
        let _ = writeln!(out, "  n{id} [label=\"{v}\"{style}];");
    }
    for e in &t.edges {
        let _ = writeln!(out, "  n{} -> n{} [label=\"j={}\"];", e.from, e.to, e.j);
    }
    out.push_str("}\n");
    out
}

/// `S_w · S_u` as `S_{w×u} ↓ A_m` summed over the good leaves of the MT-tree.
///
/// Needs a Grassmannian factor whose descent is `m = max(ℓ(c(w)), ℓ(c(u)))`;
/// the factors are swapped when only `w` qualifies.
pub fn grassmannian_product(w: &Permutation, u: &Permutation) -> Result<SchubertExpansion> {
    let (cw, cu) = (w.code().support_len(), u.code().support_len());
    let m = cw.max(cu);
    let fits = |g: &Permutation, cg: usize| g.is_grassmannian() && (cg == m || g.is_identity());
    let (a, b) = if fits(u, cu) {
        (w, u)
    } else if fits(w, cw) {
        (u, w)
    } else if !u.is_grassmannian() && !w.is_grassmannian() {
        return Err(Error::NotGrassmannian(format!("{w} and {u}")));
    } else {
        return Err(Error::Unsupported(format!(
            "{w} * {u}: the Grassmannian factor must have its descent at m = {m}"
        )));
    };
    if m == 0 {
        return Ok(SchubertExpansion::single(Permutation::identity()));
    }
    Ok(mt_tree(&Permutation::cross(a, b, m), m).good_sum())
}

/// A stable expansion obtained from MT-moves, with the padding applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtStable {
    pub expansion: StableExpansion,
    /// Leading fixed points added to `(w, u)` to equalise code lengths.
    pub padding: (usize, usize),
    /// Whether the factors were exchanged to put the Grassmannian one second.
    pub swapped: bool,
    pub m: usize,
}

/// `F_w · F_u` from the MT-tree rooted at `1^m × w' × u'`, expanded until all
/// codes are supported in `[1, 2m]`.
///
/// `w'`, `u'` are `w`, `u` with leading fixed points added so that both codes
/// have length `m`. A leaf `1^{m-i} × v` with `v(1) ≠ 1` lands in level `i`,
/// and a leaf `1^m × t` in level 0 as `t`; these are the levels of the
/// padded pair. Levels past `m` receive no leaves and are returned empty up
/// to the bound `ℓ(w') + ℓ(u')`.
pub fn stanley_via_mt(w: &Permutation, u: &Permutation) -> Result<MtStable> {
    let (w, u, swapped) = if u.is_grassmannian() {
        (w, u, false)
    } else if w.is_grassmannian() {
        (u, w, true)
    } else {
        return Err(Error::NotGrassmannian(format!("{w} and {u}")));
    };
    let (cw, cu) = (w.code().support_len(), u.code().support_len());
    let m = cw.max(cu);
    let padding = (m - cw, m - cu);
    let (wp, up) = (w.shifted(padding.0), u.shifted(padding.1));
    if m == 0 {
        let levels = vec![SchubertExpansion::single(Permutation::identity()).into_map()];
        let expansion = StableExpansion::from_levels(&wp, &up, levels, false);
        return Ok(MtStable {
            expansion,
            padding,
            swapped,
            m,
        });
    }
    let root = Permutation::cross(&wp, &up, m).shifted(m);
    let tree = mt_tree(&root, 2 * m);
    let mut levels = vec![Terms::new(); m + 1];
    for leaf in tree.good_leaves() {
        let (lead, v) = leaf.strip_leading_fixed();
        let (level, term) = if lead >= m {
            (0, v.shifted(lead - m))
        } else {
            (m - lead, v)
        };
        *levels[level].entry(term).or_default() += 1u32;
    }
    levels.resize(
        levels.len().max(wp.length() + up.length() + 1),
        Terms::new(),
    );
    let expansion = StableExpansion::from_levels(&wp, &up, levels, false);
    Ok(MtStable {
        expansion,
        padding,
        swapped,
        m,
    })
}
