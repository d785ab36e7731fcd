//! Decreasing binary trees and the descent-shifting maps built on them.
//!
//! `Tree(π)` splits `π = L n R` at its maximum and recurses, so in-order
//! reading gives back `π`, post-order gives the stack sort and right,left,root
//! order gives the revstack sort.

use std::fmt::{self, Write as _};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Node {
    left: Option<u32>,
    right: Option<u32>,
}

/// Labels are `1..=n`; node data is stored by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecreasingBinaryTree {
    nodes: Vec<Node>,
    root: u32,
}

/// Builds `Tree(π)`. Rejects the empty permutation.
pub fn tree_of(pi: &Permutation) -> Result<DecreasingBinaryTree> {
    if pi.is_empty() {
        return Err(Error::EmptyPermutation("tree_of"));
    }
    let word = pi.as_slice();
    let mut nodes = vec![Node::default(); word.len()];
    // Cartesian tree construction with a decreasing stack.
    let mut stack: Vec<u32> = Vec::with_capacity(word.len());
    for &v in word {
        let mut last = None;
        while let Some(&top) = stack.last() {
            if top > v {
                break;
            }
            last = stack.pop();
        }
        nodes[v as usize - 1].left = last;
        if let Some(&top) = stack.last() {
            nodes[top as usize - 1].right = Some(v);
        }
        stack.push(v);
    }
    Ok(DecreasingBinaryTree {
        nodes,
        root: stack[0],
    })
}

impl DecreasingBinaryTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    fn node(&self, label: u32) -> &Node {
        &self.nodes[label as usize - 1]
    }

    pub fn left_child(&self, label: u32) -> Option<u32> {
        self.node(label).left
    }

    pub fn right_child(&self, label: u32) -> Option<u32> {
        self.node(label).right
    }

    fn walk(&self, label: u32, order: Order, out: &mut Vec<u32>) {
        let Node { left, right } = *self.node(label);
        match order {
            Order::In => {
                if let Some(l) = left {
                    self.walk(l, order, out);
                }
                out.push(label);
                if let Some(r) = right {
                    self.walk(r, order, out);
                }
            }
            Order::Post => {
                for c in [left, right].into_iter().flatten() {
                    self.walk(c, order, out);
                }
                out.push(label);
            }
            Order::ReversePost => {
                for c in [right, left].into_iter().flatten() {
                    self.walk(c, order, out);
                }
                out.push(label);
            }
        }
    }

    fn read(&self, order: Order) -> Permutation {
        let mut out = Vec::with_capacity(self.len());
        self.walk(self.root, order, &mut out);
        Permutation::from_word_unchecked(out)
    }

    pub fn in_order(&self) -> Permutation {
        self.read(Order::In)
    }

    /// Left subtree, right subtree, root. Equals `S(π)`.
    pub fn post_order(&self) -> Permutation {
        self.read(Order::Post)
    }

    /// Right subtree, left subtree, root. Equals `T(π)`.
    pub fn rpostorder(&self) -> Permutation {
        self.read(Order::ReversePost)
    }

    pub fn left_edges(&self) -> usize {
        self.nodes.iter().filter(|n| n.left.is_some()).count()
    }

    /// Equals the number of descents of the in-order word.
    pub fn right_edges(&self) -> usize {
        self.nodes.iter().filter(|n| n.right.is_some()).count()
    }

    /// Edge-distance from the root, indexed by label.
    fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        let mut todo = vec![self.root];
        while let Some(v) = todo.pop() {
            let d = depth[v as usize - 1];
            for c in [self.node(v).left, self.node(v).right].into_iter().flatten() {
                depth[c as usize - 1] = d + 1;
                todo.push(c);
            }
        }
        depth
    }

    /// Vertices ordered deepest level first, left to right within a level.
    pub fn vertex_indexing(&self) -> VertexIndexing {
        let depth = self.depths();
        let in_order = self.in_order();
        let mut order = in_order.into_word();
        // `order` is in in-order; a stable sort by depth keeps that within levels.
        order.sort_by_key(|&v| std::cmp::Reverse(depth[v as usize - 1]));
        VertexIndexing { order }
    }

    /// Indented text rendering, one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(self.root, "", 0, &mut out);
        out
    }

    fn render_into(&self, label: u32, tag: &str, indent: usize, out: &mut String) {
        let _ = writeln!(out, "{:indent$}{tag}{label}", "", indent = indent);
        if let Some(l) = self.node(label).left {
            self.render_into(l, "L ", indent + 2, out);
        }
        if let Some(r) = self.node(label).right {
            self.render_into(r, "R ", indent + 2, out);
        }
    }
}

#[derive(Clone, Copy)]
enum Order {
    In,
    Post,
    ReversePost,
}

impl fmt::Display for DecreasingBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

struct Subtree<'a> {
    tree: &'a DecreasingBinaryTree,
    label: u32,
}

impl Serialize for Subtree<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let node = self.tree.node(self.label);
        let fields = 1 + node.left.is_some() as usize + node.right.is_some() as usize;
        let mut s = serializer.serialize_struct("Node", fields)?;
        s.serialize_field("label", &self.label)?;
        let tree = self.tree;
        if let Some(label) = node.left {
            s.serialize_field("left", &Subtree { tree, label })?;
        } else {
            s.skip_field("left")?;
        }
        if let Some(label) = node.right {
            s.serialize_field("right", &Subtree { tree, label })?;
        } else {
            s.skip_field("right")?;
        }
        s.end()
    }
}

/// Nested `{label, left?, right?}`.
impl Serialize for DecreasingBinaryTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Subtree {
            tree: self,
            label: self.root,
        }
        .serialize(serializer)
    }
}

/// `order[i-1]` is the label of vertex `v_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexIndexing {
    pub order: Vec<u32>,
}

impl VertexIndexing {
    /// Label of `v_i`, 1-based.
    pub fn label(&self, i: usize) -> u32 {
        self.order[i - 1]
    }

    /// 1-based index of the vertex carrying `label`.
    pub fn index_of(&self, label: u32) -> usize {
        self.order.iter().position(|&v| v == label).expect("label in tree") + 1
    }
}

fn split_at_max(word: &[u32]) -> (&[u32], u32, &[u32]) {
    let (pos, &max) = word
        .iter()
        .enumerate()
        .max_by_key(|&(_, v)| *v)
        .expect("non-empty word");
    (&word[..pos], max, &word[pos + 1..])
}

fn duality_into(word: &[u32], out: &mut Vec<u32>) {
    if word.len() <= 1 {
        out.extend_from_slice(word);
        return;
    }
    let (l, n, r) = split_at_max(word);
    match (l.is_empty(), r.is_empty()) {
        (false, false) => {
            duality_into(l, out);
            out.push(n);
            duality_into(r, out);
        }
        (false, true) => {
            out.push(n);
            duality_into(l, out);
        }
        (true, false) => {
            duality_into(r, out);
            out.push(n);
        }
        (true, true) => unreachable!("length ≥ 2"),
    }
}

fn g_into(word: &[u32], out: &mut Vec<u32>) {
    if word.len() <= 1 {
        out.extend_from_slice(word);
        return;
    }
    let (l, n, r) = split_at_max(word);
    match (l.is_empty(), r.is_empty()) {
        (false, false) => {
            g_into(r, out);
            out.push(n);
            g_into(l, out);
        }
        (false, true) => {
            g_into(l, out);
            out.push(n);
        }
        (true, false) => {
            out.push(n);
            g_into(r, out);
        }
        (true, true) => unreachable!("length ≥ 2"),
    }
}

/// Bóna's duality: an involution with `des π + des f(π) = n - 1` that
/// keeps both the stack-sort and revstack-sort images.
pub fn duality_f(pi: &Permutation) -> Permutation {
    let mut out = Vec::with_capacity(pi.len());
    duality_into(pi.as_slice(), &mut out);
    Permutation::from_word_unchecked(out)
}

/// `g(LnR) = g(R) n g(L)`, `g(Ln) = g(L) n`, `g(nR) = n g(R)`. Equals
/// `f ∘ rev` and `rev ∘ f`.
pub fn g_map(pi: &Permutation) -> Permutation {
    let mut out = Vec::with_capacity(pi.len());
    g_into(pi.as_slice(), &mut out);
    Permutation::from_word_unchecked(out)
}

/// Result of the descent-raising injection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HImage {
    pub image: Permutation,
    /// The minimal prefix size `i`.
    pub index: usize,
    /// 1-based indices of the vertices in `T_i` whose only child was flipped.
    pub flipped: Vec<usize>,
}

/// Largest descent count on which the injection is defined, or `None` when
/// `n < 3`.
pub fn h_max_descents(n: usize) -> Option<usize> {
    (n >= 3).then(|| (n - 3) / 2)
}

/// Raises the descent count by one while keeping both sort images: finds
/// the smallest `i` for which the subforest on `v_1..v_i` has exactly one
/// more left edge than right edges and flips every only child hanging
/// from those vertices.
pub fn injection_h(pi: &Permutation) -> Result<HImage> {
    let n = pi.len();
    let des = pi.descents()?;
    match h_max_descents(n) {
        Some(max) if des <= max => {}
        _ => {
            return Err(Error::NotApplicable(format!(
                "injection needs des ≤ ⌊(n-3)/2⌋; got des {des} with n {n}"
            )))
        }
    }
    let tree = tree_of(pi)?;
    let indexing = tree.vertex_indexing();
    let mut inside = vec![false; n];
    let (mut left, mut right) = (0usize, 0usize);
    let mut found = None;
    for (i, &v) in indexing.order.iter().enumerate() {
        inside[v as usize - 1] = true;
        let node = tree.node(v);
        // Children are deeper, so they always precede their parent.
        for (child, is_left) in [(node.left, true), (node.right, false)] {
            if let Some(c) = child {
                if inside[c as usize - 1] {
                    if is_left {
                        left += 1;
                    } else {
                        right += 1;
                    }
                }
            }
        }
        if left == right + 1 {
            found = Some(i + 1);
            break;
        }
    }
    let index = found.ok_or_else(|| {
        Error::NotApplicable(format!("no prefix with one more left edge than right edges for {pi}"))
    })?;
    let mut flipped_tree = tree.clone();
    let mut flipped = Vec::new();
    for (i, &v) in indexing.order[..index].iter().enumerate() {
        let node = &mut flipped_tree.nodes[v as usize - 1];
        if node.left.is_some() != node.right.is_some() {
            std::mem::swap(&mut node.left, &mut node.right);
            flipped.push(i + 1);
        }
    }
    Ok(HImage {
        image: flipped_tree.in_order(),
        index,
        flipped,
    })
}
