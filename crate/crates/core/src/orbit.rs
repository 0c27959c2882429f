//! Enumeration of Weyl-group orbits on Dynkin labels without hashing.
//!
//! Every non-dominant weight `mu` has a canonical parent `s_j mu`, where `j`
//! is the smallest index with a negative label. Reversing that rule gives a
//! spanning tree of the orbit rooted at its dominant element, and the depth of
//! a node is the length of the shortest Weyl element reaching it.

use rayon::prelude::*;

/// Applies the simple reflection `s_i` in place: `a <- a - a_i * C[i][.]`.
#[inline]
pub fn reflect_labels(cartan: &[Vec<i64>], labels: &mut [i64], i: usize) {
    let ai = labels[i];
    if ai != 0 {
        for (a, c) in labels.iter_mut().zip(&cartan[i]) {
            *a -= ai * c;
        }
    }
}

/// The child of `parent` through `s_i`, if `parent` is its canonical parent.
#[inline]
pub fn child(cartan: &[Vec<i64>], parent: &[i64], i: usize) -> Option<Vec<i64>> {
    if parent[i] <= 0 {
        return None;
    }
    let mut c = parent.to_vec();
    reflect_labels(cartan, &mut c, i);
    if c[..i].iter().any(|&x| x < 0) {
        return None;
    }
    Some(c)
}

/// Moves a weight to the dominant chamber; returns the dominant weight and the
/// number of reflections used.
pub fn to_dominant(cartan: &[Vec<i64>], labels: &[i64]) -> (Vec<i64>, usize) {
    let mut v = labels.to_vec();
    let mut steps = 0;
    while let Some(j) = v.iter().position(|&x| x < 0) {
        reflect_labels(cartan, &mut v, j);
        steps += 1;
    }
    (v, steps)
}

/// The next BFS level of the orbit tree, ordered by generator then parent.
pub fn next_level(cartan: &[Vec<i64>], level: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut out = Vec::new();
    for i in 0..n {
        for p in level {
            if let Some(c) = child(cartan, p, i) {
                out.push(c);
            }
        }
    }
    out
}

/// Number of subtrees the orbit is split into for parallel traversal. Fixed,
/// so that the summation order does not depend on the thread count.
const TASKS: usize = 256;

/// Folds `visit` over the whole orbit of a dominant weight. The orbit is cut
/// into a fixed set of subtrees, each folded into its own accumulator; the
/// accumulators come back in a deterministic order.
pub fn fold_orbit<A, I, V>(cartan: &[Vec<i64>], dominant: &[i64], init: I, visit: V) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[i64], u32) + Sync,
{
    debug_assert!(dominant.iter().all(|&x| x >= 0));
    let mut head = init();
    let mut level = vec![dominant.to_vec()];
    let mut depth = 0u32;
    while level.len() < TASKS {
        for v in &level {
            visit(&mut head, v, depth);
        }
        let next = next_level(cartan, &level);
        depth += 1;
        if next.is_empty() {
            return vec![head];
        }
        level = next;
    }
    let n = cartan.len();
    let mut rest: Vec<A> = level
        .par_iter()
        .map(|root| {
            let mut acc = init();
            let mut stack = vec![(root.clone(), depth)];
            while let Some((v, d)) = stack.pop() {
                visit(&mut acc, &v, d);
                for i in (0..n).rev() {
                    if let Some(c) = child(cartan, &v, i) {
                        stack.push((c, d + 1));
                    }
                }
            }
            acc
        })
        .collect();
    let mut out = Vec::with_capacity(rest.len() + 1);
    out.push(head);
    out.append(&mut rest);
    out
}

/// Size of the orbit of a dominant weight.
pub fn orbit_size(cartan: &[Vec<i64>], dominant: &[i64]) -> u64 {
    fold_orbit(cartan, dominant, || 0u64, |n, _, _| *n += 1)
        .into_iter()
        .sum()
}
