//! A deterministic CART-style classification tree over a single numeric
//! feature, grown to unbounded depth.
//!
//! This is the model family every criterion measures, so two properties are
//! load-bearing and worth the ceremony:
//!
//! 1. **Determinism.** All split decisions compare Gini impurity decreases
//!    through exact integer arithmetic (cross-multiplied `u128` forms), never
//!    floating point, so there is no platform- or order-dependent tie
//!    wobble. Ties break toward the smallest threshold; majority ties break
//!    toward the smallest label.
//! 2. **Permutation invariance.** Fitting sorts `(x, y)` pairs up front and
//!    works on count statistics, so shuffling the samples cannot change the
//!    tree.
//!
//! Growth stops at a node when it is label-pure, its feature is constant,
//! or no split has strictly positive impurity decrease. The last rule is
//! what makes "unbounded depth" terminate: target structure unexplainable
//! by `x` is left alone rather than memorized into zero-gain splits.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// `x ≤ threshold` routes left, `x > threshold` routes right.
    Internal {
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf { prediction: i64 },
}

/// A fitted tree. `nodes` is an arena; `root` is always present.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    nodes: Vec<Node>,
    root: usize,
}

/// Largest sample count the exact `u128` split comparisons support
/// (worst-case product is ~2·n⁵, which must stay below 2¹²⁷).
const MAX_SAMPLES: usize = 16_000_000;

pub fn fit_tree(x: &[i64], y: &[i64]) -> Result<Tree> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            x: x.len(),
            y: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    assert!(
        x.len() <= MAX_SAMPLES,
        "exact split arithmetic supports at most {MAX_SAMPLES} samples"
    );

    // Dense class ids in sorted label order, so id order == label order and
    // "smallest label wins ties" becomes "smallest id wins ties".
    let mut classes: Vec<i64> = y.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let class_id = |label: i64| classes.binary_search(&label).unwrap() as u32;

    let mut pairs: Vec<(i64, u32)> = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| (xi, class_id(yi)))
        .collect();
    pairs.sort_unstable();

    let mut builder = Builder {
        pairs,
        classes,
        total: Vec::new(),
        left: Vec::new(),
        touched: Vec::new(),
        nodes: Vec::new(),
    };
    builder.total.resize(builder.classes.len(), 0);
    builder.left.resize(builder.classes.len(), 0);

    builder.nodes.push(Node::Leaf { prediction: 0 });
    let n = builder.pairs.len();
    let mut work = vec![(0usize, n, 0usize)];
    while let Some((start, end, dest)) = work.pop() {
        builder.grow(start, end, dest, &mut work);
    }

    Ok(Tree {
        nodes: builder.nodes,
        root: 0,
    })
}

struct Builder {
    pairs: Vec<(i64, u32)>,
    classes: Vec<i64>,
    /// Class counts of the node being processed; zeroed again before return.
    total: Vec<u32>,
    /// Class counts of the growing left side during the split scan.
    left: Vec<u32>,
    /// Which classes the current node touched, for O(range) buffer resets.
    touched: Vec<u32>,
    nodes: Vec<Node>,
}

struct Candidate {
    /// Index of the first sample routed right.
    boundary: usize,
    n_left: u128,
    n_right: u128,
    sq_left: u128,
    sq_right: u128,
}

impl Builder {
    /// Decide leaf vs. split for `pairs[start..end]` and write the result
    /// into `nodes[dest]`, scheduling child ranges onto `work`.
    fn grow(
        &mut self,
        start: usize,
        end: usize,
        dest: usize,
        work: &mut Vec<(usize, usize, usize)>,
    ) {
        let n = (end - start) as u128;
        self.touched.clear();
        // Node class counts and the count-of-squares Σc², built
        // incrementally: bumping a class from c to c+1 adds 2c+1.
        let mut sq_total: u128 = 0;
        for i in start..end {
            let c = self.pairs[i].1 as usize;
            if self.total[c] == 0 {
                self.touched.push(c as u32);
            }
            sq_total += 2 * self.total[c] as u128 + 1;
            self.total[c] += 1;
        }

        let pure = sq_total == n * n;
        let x_constant = self.pairs[start].0 == self.pairs[end - 1].0;
        let split = if pure || x_constant {
            None
        } else {
            self.best_split(start, end, n, sq_total)
        };

        match split {
            None => {
                self.nodes[dest] = Node::Leaf {
                    prediction: self.majority(),
                };
            }
            Some(c) => {
                let a = self.pairs[c.boundary - 1].0;
                let b = self.pairs[c.boundary].0;
                let threshold = (a as f64 + b as f64) / 2.0;
                let left_id = self.nodes.len();
                self.nodes.push(Node::Leaf { prediction: 0 });
                let right_id = self.nodes.len();
                self.nodes.push(Node::Leaf { prediction: 0 });
                self.nodes[dest] = Node::Internal {
                    threshold,
                    left: left_id,
                    right: right_id,
                };
                work.push((c.boundary, end, right_id));
                work.push((start, c.boundary, left_id));
            }
        }

        for &c in &self.touched {
            self.total[c as usize] = 0;
        }
    }

    /// Scan candidate thresholds (boundaries between distinct sorted x
    /// values) and return the best strictly-positive-gain split, if any.
    ///
    /// For a subset of size m with class counts c_k, Gini impurity is
    /// 1 − Σc²/m². Comparisons reduce to integer forms:
    /// maximizing the gain over candidates maximizes
    /// Q = Σc²_L/n_L + Σc²_R/n_R, compared exactly by cross-multiplying;
    /// the winner is accepted iff (Σc²_L·n_R + Σc²_R·n_L)·n > Σc²·n_L·n_R,
    /// which is `gain > 0` with all denominators cleared.
    fn best_split(
        &mut self,
        start: usize,
        end: usize,
        n: u128,
        sq_total: u128,
    ) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        let mut sq_left: u128 = 0;
        let mut sq_right: u128 = sq_total;
        for i in start..end - 1 {
            let c = self.pairs[i].1 as usize;
            let on_left = self.left[c] as u128;
            let on_right = self.total[c] as u128 - on_left;
            sq_left += 2 * on_left + 1;
            sq_right -= 2 * on_right - 1;
            self.left[c] += 1;

            if self.pairs[i + 1].0 == self.pairs[i].0 {
                continue;
            }
            let cand = Candidate {
                boundary: i + 1,
                n_left: (i + 1 - start) as u128,
                n_right: (end - i - 1) as u128,
                sq_left,
                sq_right,
            };
            // Strict improvement only: on ties the earlier candidate (the
            // smallest threshold) is kept.
            if best.as_ref().is_none_or(|b| cand.q_exceeds(b)) {
                best = Some(cand);
            }
        }
        for &c in &self.touched {
            self.left[c as usize] = 0;
        }

        best.filter(|b| {
            (b.sq_left * b.n_right + b.sq_right * b.n_left) * n > sq_total * b.n_left * b.n_right
        })
    }

    /// Majority class of the current node's counts; ties go to the smallest
    /// class id, which is the smallest original label.
    fn majority(&mut self) -> i64 {
        self.touched.sort_unstable();
        let mut best_class = self.touched[0];
        let mut best_count = self.total[best_class as usize];
        for &c in &self.touched[1..] {
            if self.total[c as usize] > best_count {
                best_class = c;
                best_count = self.total[c as usize];
            }
        }
        self.classes[best_class as usize]
    }
}

impl Candidate {
    fn q_exceeds(&self, other: &Candidate) -> bool {
        let lhs = (self.sq_left * self.n_right + self.sq_right * self.n_left)
            * (other.n_left * other.n_right);
        let rhs = (other.sq_left * other.n_right + other.sq_right * other.n_left)
            * (self.n_left * self.n_right);
        lhs > rhs
    }
}

impl Tree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Route a feature value to its leaf and return that leaf's prediction.
    pub fn predict(&self, x: i64) -> i64 {
        let mut id = self.root;
        loop {
            match &self.nodes[id] {
                Node::Internal {
                    threshold,
                    left,
                    right,
                } => {
                    id = if (x as f64) <= *threshold { *left } else { *right };
                }
                Node::Leaf { prediction } => return *prediction,
            }
        }
    }

    /// Maximum number of edges from the root to any leaf; a lone leaf has
    /// depth 0.
    pub fn depth(&self) -> usize {
        let mut max = 0;
        let mut stack = vec![(self.root, 0usize)];
        while let Some((id, d)) = stack.pop() {
            match &self.nodes[id] {
                Node::Internal { left, right, .. } => {
                    stack.push((*left, d + 1));
                    stack.push((*right, d + 1));
                }
                Node::Leaf { .. } => max = max.max(d),
            }
        }
        max
    }

    pub fn count_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn count_leaves(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf { .. }))
            .count()
    }

    /// Average number of internal nodes (equivalently, edges) the given
    /// feature values traverse from root to leaf. Over the training inputs
    /// its maximum equals [`Tree::depth`], since every leaf holds at least
    /// one training sample.
    pub fn mean_path_length(&self, xs: &[i64]) -> Result<f64> {
        if xs.is_empty() {
            return Err(Error::EmptyInput);
        }
        let total: usize = xs.iter().map(|&x| self.path_length(x)).sum();
        Ok(total as f64 / xs.len() as f64)
    }

    fn path_length(&self, x: i64) -> usize {
        let mut id = self.root;
        let mut hops = 0;
        loop {
            match &self.nodes[id] {
                Node::Internal {
                    threshold,
                    left,
                    right,
                } => {
                    hops += 1;
                    id = if (x as f64) <= *threshold { *left } else { *right };
                }
                Node::Leaf { .. } => return hops,
            }
        }
    }
}
