//! Brute-force oracles. Everything here works on raw 0-indexed image vectors and never
//! calls into the library's group, dessin or pattern code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

pub type Raw = Vec<usize>;

pub fn identity(n: usize) -> Raw {
    (0..n).collect()
}

/// Apply `p` first, then `q`.
pub fn then(p: &Raw, q: &Raw) -> Raw {
    p.iter().map(|&v| q[v]).collect()
}

pub fn inverse(p: &Raw) -> Raw {
    let mut r = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        r[v] = i;
    }
    r
}

pub fn is_even(p: &Raw) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// 1-indexed cycles to a raw permutation.
pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Raw {
    let mut p = identity(n);
    for c in cycles {
        for i in 0..c.len() {
            p[c[i] - 1] = c[(i + 1) % c.len()] - 1;
        }
    }
    p
}

/// Every permutation of `0..n`.
pub fn symmetric_group(n: usize) -> Vec<Raw> {
    fn rec(prefix: &mut Raw, used: &mut Vec<bool>, out: &mut Vec<Raw>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All elements of `⟨gens⟩` by breadth-first closure.
pub fn closure(gens: &[Raw], n: usize) -> HashSet<Raw> {
    let mut seen: HashSet<Raw> = HashSet::new();
    let id = identity(n);
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = then(&g, s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

/// `g⁻¹ p g` in the apply-left-first convention.
pub fn conj(p: &Raw, g: &Raw) -> Raw {
    then(&then(&inverse(g), p), g)
}

pub fn transitive(x: &Raw, y: &Raw) -> bool {
    let n = x.len();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for q in [x[p], y[p]] {
            if !seen[q] {
                seen[q] = true;
                count += 1;
                stack.push(q);
            }
        }
    }
    count == n
}

pub fn cycle_count(p: &Raw) -> usize {
    let mut seen = vec![false; p.len()];
    let mut c = 0;
    for s in 0..p.len() {
        if !seen[s] {
            c += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = p[i];
            }
        }
    }
    c
}

pub fn cycle_type(p: &Raw) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn genus(x: &Raw, y: &Raw) -> i64 {
    let z = inverse(&then(x, y));
    let n = x.len() as i64;
    (n + 2 - cycle_count(x) as i64 - cycle_count(y) as i64 - cycle_count(&z) as i64) / 2
}

/// All `g` commuting with both `x` and `y`, sorted.
pub fn automorphisms(x: &Raw, y: &Raw) -> Vec<Raw> {
    let mut out: Vec<Raw> = symmetric_group(x.len())
        .into_iter()
        .filter(|g| conj(x, g) == *x && conj(y, g) == *y)
        .collect();
    out.sort();
    out
}

pub fn isomorphic(a: (&Raw, &Raw), b: (&Raw, &Raw)) -> bool {
    a.0.len() == b.0.len()
        && symmetric_group(a.0.len())
            .iter()
            .any(|g| conj(a.0, g) == *b.0 && conj(a.1, g) == *b.1)
}

/// Orbits of a group (given by all its elements) on ordered pairs.
pub fn rank(elements: &HashSet<Raw>, n: usize) -> usize {
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut orbits = 0;
    for i in 0..n {
        for j in 0..n {
            if seen.contains(&(i, j)) {
                continue;
            }
            orbits += 1;
            for g in elements {
                seen.insert((g[i], g[j]));
            }
        }
    }
    orbits
}

/// Whether the `S_n`-class of the given type breaks into more than one `A_n`-class.
pub fn splits_in_alternating(parts: &[usize]) -> bool {
    let n: usize = parts.iter().sum();
    let mut r = Vec::with_capacity(n);
    let mut offset = 0;
    for &len in parts {
        for i in 0..len {
            r.push(offset + (i + 1) % len);
        }
        offset += len;
    }
    let all = symmetric_group(n);
    let s_class: BTreeSet<Raw> = all.iter().map(|g| conj(&r, g)).collect();
    let a_class: BTreeSet<Raw> = all
        .iter()
        .filter(|g| is_even(g))
        .map(|g| conj(&r, g))
        .collect();
    a_class.len() < s_class.len()
}

pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Permutation from explicit cycles over pair labels `(k, e)` with `k` 0-indexed and `e`
/// a pattern-edge letter index, using index `k * m + e`.
fn pair_perm(n: usize, m: usize, cycles: &[Vec<(usize, usize)>]) -> Raw {
    let mut p = vec![usize::MAX; n * m];
    for c in cycles {
        for i in 0..c.len() {
            let (k, e) = c[i];
            let (k2, e2) = c[(i + 1) % c.len()];
            p[k * m + e] = k2 * m + e2;
        }
    }
    for (i, v) in p.iter_mut().enumerate() {
        if *v == usize::MAX {
            *v = i;
        }
    }
    p
}

/// Walks `(k,first) (k,second) (s k,first) (s k,second) ...` until it closes, where an
/// optional `step_first` moves the Γ-label before entering `first` instead.
fn alternating_cycle(
    k: usize,
    first: usize,
    second: usize,
    step_to_first: &Raw,
    step_to_second: &Raw,
) -> Vec<(usize, usize)> {
    let mut cycle = Vec::new();
    let mut label = k;
    loop {
        cycle.push((label, first));
        label = step_to_second[label];
        cycle.push((label, second));
        label = step_to_first[label];
        if label == k {
            break;
        }
    }
    cycle
}

/// Closed formula for the `gamma` image, edges a, b, c = 0, 1, 2:
/// x is made of ((k,a) (x k,b) (x k,a) (x² k,b) ...) and ((k,c) (y k,c) ...),
/// y is made of ((k,b) (k,c)).
pub fn gamma_formula(x: &Raw, y: &Raw) -> (Raw, Raw) {
    let d = x.len();
    let id = identity(d);
    let mut xc = Vec::new();
    let mut yc = Vec::new();
    let mut seen_ab = vec![false; d];
    let mut seen_c = vec![false; d];
    for k in 0..d {
        if !seen_ab[k] {
            let c = alternating_cycle(k, 0, 1, &id, x);
            for &(l, e) in &c {
                if e == 0 {
                    seen_ab[l] = true;
                }
            }
            xc.push(c);
        }
        if !seen_c[k] {
            let mut c = Vec::new();
            let mut l = k;
            loop {
                seen_c[l] = true;
                c.push((l, 2));
                l = y[l];
                if l == k {
                    break;
                }
            }
            xc.push(c);
        }
        yc.push(vec![(k, 1), (k, 2)]);
    }
    (pair_perm(d, 3, &xc), pair_perm(d, 3, &yc))
}

/// Closed formula for the `xi` image, edges a..f = 0..5:
/// x is made of ((k,a) (k,f) (x k,a) (x k,f) ...), ((k,c) (k,b) (y k,c) (y k,b) ...),
/// ((k,e) (k,d) (z k,e) (z k,d) ...); y is made of ((k,a)(k,b)), ((k,c)(k,d)), ((k,e)(k,f)).
pub fn xi_formula(x: &Raw, y: &Raw) -> (Raw, Raw) {
    let d = x.len();
    let z = inverse(&then(x, y));
    let id = identity(d);
    let (a, b, c, dd, e, f) = (0, 1, 2, 3, 4, 5);
    let mut xc = Vec::new();
    for (first, second, step) in [(a, f, x), (c, b, y), (e, dd, &z)] {
        let mut seen = vec![false; d];
        for k in 0..d {
            if seen[k] {
                continue;
            }
            // (k,first) -> (k,second) -> (step k, first) -> ...
            let cyc = alternating_cycle(k, first, second, step, &id);
            for &(l, edge) in &cyc {
                if edge == first {
                    seen[l] = true;
                }
            }
            xc.push(cyc);
        }
    }
    let mut yc = Vec::new();
    for k in 0..d {
        yc.push(vec![(k, a), (k, b)]);
        yc.push(vec![(k, c), (k, dd)]);
        yc.push(vec![(k, e), (k, f)]);
    }
    (pair_perm(d, 6, &xc), pair_perm(d, 6, &yc))
}

/// Classical cartographic group of a dessin viewed as a map: darts are edge ends
/// `(e, side)` with side 0 at the black vertex and 1 at the white one; the vertex rotation
/// turns around black vertices by `x` and white vertices by `y`, and the edge involution
/// swaps the two ends.
pub fn cartographic_generators(x: &Raw, y: &Raw) -> (Raw, Raw) {
    let d = x.len();
    let dart = |e: usize, side: usize| 2 * e + side;
    let mut rotation = vec![0; 2 * d];
    let mut involution = vec![0; 2 * d];
    for e in 0..d {
        rotation[dart(e, 0)] = dart(x[e], 0);
        rotation[dart(e, 1)] = dart(y[e], 1);
        involution[dart(e, 0)] = dart(e, 1);
        involution[dart(e, 1)] = dart(e, 0);
    }
    (rotation, involution)
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Rejection-sampled transitive pair, raw.
pub fn random_transitive<R: rand::Rng>(n: usize, rng: &mut R) -> (Raw, Raw) {
    use rand::seq::SliceRandom;
    loop {
        let mut x = identity(n);
        let mut y = identity(n);
        x.shuffle(rng);
        y.shuffle(rng);
        if transitive(&x, &y) {
            return (x, y);
        }
    }
}
