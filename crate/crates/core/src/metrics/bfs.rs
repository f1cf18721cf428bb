//! Breadth-first search in Cayley graphs.

use std::collections::HashMap;

use super::DistanceValue;
use crate::groups::Group;
use crate::words::Letter;

/// The metric generators together with their inverses, duplicates removed.
pub fn symmetric_generators<G: Group>(group: &G) -> Vec<Letter> {
    let mut letters: Vec<Letter> = group
        .metric_generators()
        .into_iter()
        .flat_map(|l| [l, l.inverse()])
        .collect();
    letters.sort();
    letters.dedup();
    letters
}

/// All elements within `radius` of the identity, with their word lengths.
pub fn ball<G: Group>(group: &G, radius: u32) -> HashMap<G::Element, u32> {
    let generators = symmetric_generators(group);
    let mut dist = HashMap::from([(group.identity(), 0)]);
    let mut frontier = vec![group.identity()];
    for r in 1..=radius {
        let mut next = Vec::new();
        for g in &frontier {
            for &l in &generators {
                let h = group.act(g, l).expect("metric generators act");
                if !dist.contains_key(&h) {
                    dist.insert(h.clone(), r);
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// `d_A(g1, g2)`, the word length of `g1⁻¹ g2`, by bidirectional search.
/// Exact when at most `cap`; otherwise `(cap + 1, ∞)`.
pub fn bfs_distance<G: Group>(group: &G, g1: &G::Element, g2: &G::Element, cap: u32) -> DistanceValue {
    let target = group.difference(g1, g2);
    let identity = group.identity();
    if target == identity {
        return DistanceValue::exact(0.0);
    }
    let generators = symmetric_generators(group);
    let mut sides = [
        (HashMap::from([(identity.clone(), 0u32)]), vec![identity], 0u32),
        (HashMap::from([(target.clone(), 0u32)]), vec![target], 0u32),
    ];
    while sides[0].2 + sides[1].2 < cap {
        // grow the side with the smaller frontier; the generating set is
        // closed under inverses, so both sides use right multiplication
        let i = usize::from(sides[1].1.len() < sides[0].1.len());
        let (grown, other) = if i == 0 {
            let (a, b) = sides.split_at_mut(1);
            (&mut a[0], &b[0])
        } else {
            let (a, b) = sides.split_at_mut(1);
            (&mut b[0], &a[0])
        };
        grown.2 += 1;
        let r = grown.2;
        let mut next = Vec::new();
        let mut best: Option<u32> = None;
        for g in &grown.1 {
            for &l in &generators {
                let h = group.act(g, l).expect("metric generators act");
                if grown.0.contains_key(&h) {
                    continue;
                }
                if let Some(&d) = other.0.get(&h) {
                    best = Some(best.map_or(r + d, |b| b.min(r + d)));
                }
                grown.0.insert(h.clone(), r);
                next.push(h);
            }
        }
        if let Some(d) = best {
            return DistanceValue::exact(d as f64);
        }
        if next.is_empty() {
            // the component is finite and exhausted without meeting
            return DistanceValue::new(cap as f64 + 1.0, f64::INFINITY);
        }
        grown.1 = next;
    }
    DistanceValue::new(cap as f64 + 1.0, f64::INFINITY)
}
