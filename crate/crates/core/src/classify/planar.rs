//! Planarity testing with a combinatorial embedding on success.
//!
//! Each biconnected block is embedded by path addition (Demoucron,
//! Malgrange and Pertuiset): start from a cycle, then repeatedly route a
//! path of some fragment through a face that contains all of the fragment's
//! attachment vertices, always preferring fragments with a single admissible
//! face. Block rotations are concatenated at cut vertices.

use std::collections::HashSet;

use crate::graph::Graph;

/// A rotation system: for each vertex, its neighbours in cyclic order.
///
/// Faces are traced by the rule `(u → v) ↦ (v → next_v(u))`, where
/// `next_v(u)` follows `u` in `rotation(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    rotation: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Self {
        Embedding { rotation }
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    fn next(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let pos = rot.iter().position(|&w| w == u).expect("dart endpoint in rotation");
        rot[(pos + 1) % rot.len()]
    }

    /// Face boundaries as dart cycles `(u, v)`.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.rotation.len() {
            for &v in &self.rotation[u] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while seen.insert((a, b)) {
                    face.push((a, b));
                    let c = self.next(b, a);
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Checks that this is a rotation system of `g` and that every connected
    /// component satisfies Euler's formula `V − E + F = 2`.
    pub fn is_planar_embedding_of(&self, g: &Graph) -> bool {
        if self.rotation.len() != g.n() {
            return false;
        }
        for v in 0..g.n() {
            let mut rot = self.rotation[v].clone();
            rot.sort_unstable();
            if rot != g.neighbors(v) {
                return false;
            }
        }
        let faces = self.faces();
        let mut comp_of = vec![0; g.n()];
        let comps = g.components();
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut face_count = vec![0i64; comps.len()];
        for f in &faces {
            face_count[comp_of[f[0].0]] += 1;
        }
        comps.iter().enumerate().all(|(i, c)| {
            let e: i64 = c.iter().map(|&v| g.degree(v) as i64).sum::<i64>() / 2;
            e == 0 || c.len() as i64 - e + face_count[i] == 2
        })
    }
}

pub fn is_planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// A planar embedding of `g`, or `None` when `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let mut rotation = vec![Vec::new(); n];
    for block in biconnected_blocks(g) {
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        if block.len() == 1 {
            let (u, v) = block[0];
            rotation[u].push(v);
            rotation[v].push(u);
            continue;
        }
        let local = index_map(n, &verts);
        let sub = Graph::new(verts.len(), block.iter().map(|&(u, v)| (local[u], local[v])).collect::<Vec<_>>())
            .expect("block edges are simple");
        let rot = embed_biconnected(&sub)?;
        for (i, r) in rot.into_iter().enumerate() {
            rotation[verts[i]].extend(r.into_iter().map(|w| verts[w]));
        }
    }
    Some(Embedding { rotation })
}

fn index_map(n: usize, verts: &[usize]) -> Vec<usize> {
    let mut local = vec![usize::MAX; n];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    local
}

/// Edge sets of the biconnected components (Hopcroft–Tarjan).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(frame) = frames.last_mut() {
            let (u, parent, idx) = *frame;
            if idx < g.degree(u) {
                frame.2 += 1;
                let w = g.neighbors(u)[idx];
                if disc[w] == usize::MAX {
                    stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                frames.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (parent, u) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

enum Fragment {
    Chord(usize, usize),
    Component { vertices: Vec<usize>, attachments: Vec<usize> },
}

impl Fragment {
    fn attachments(&self) -> Vec<usize> {
        match self {
            Fragment::Chord(u, v) => vec![*u, *v],
            Fragment::Component { attachments, .. } => attachments.clone(),
        }
    }
}

/// Rotation system for a biconnected graph with at least three vertices.
fn embed_biconnected(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let cycle = find_cycle(g);
    let mut in_h = vec![false; n];
    let mut embedded: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        embedded.insert((a.min(b), a.max(b)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while embedded.len() < g.edge_count() {
        let fragments = fragments(g, &in_h, &embedded);
        let face_sets: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; n];
                for &v in f {
                    m[v] = true;
                }
                m
            })
            .collect();
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let att = frag.attachments();
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&k| att.iter().all(|&a| face_sets[k][a])).collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");
        let path = fragment_path(g, &fragments[fi], &in_h);
        for w in path.windows(2) {
            embedded.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }

    // (u, v, w) consecutive on a face means next_v(u) = w
    let mut next: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in &faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[(i + k - 1) % k], f[i], f[(i + 1) % k]);
            next[v].push((u, w));
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for (v, pairs) in next.iter().enumerate() {
        let start = pairs[0].0;
        let mut rot = vec![start];
        let mut cur = start;
        loop {
            cur = pairs.iter().find(|&&(u, _)| u == cur).expect("dart has a successor").1;
            if cur == start {
                break;
            }
            rot.push(cur);
        }
        if rot.len() != g.degree(v) {
            return None;
        }
        rotation.push(rot);
    }
    Some(rotation)
}

fn find_cycle(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    depth[0] = 0;
    let mut stack = vec![0usize];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    // any non-tree edge closes a cycle through the BFS/DFS tree
    for (a, b) in g.edges() {
        if parent[a] == b || parent[b] == a {
            continue;
        }
        let (mut x, mut y) = (a, b);
        let mut left = vec![x];
        let mut right = vec![y];
        while x != y {
            if depth[x] >= depth[y] {
                x = parent[x];
                left.push(x);
            } else {
                y = parent[y];
                right.push(y);
            }
        }
        right.pop();
        right.reverse();
        left.extend(right);
        return left;
    }
    unreachable!("a biconnected graph with three or more vertices has a cycle")
}

fn fragments(g: &Graph, in_h: &[bool], embedded: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let n = g.n();
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if in_h[u] && in_h[v] && !embedded.contains(&(u, v)) {
            out.push(Fragment::Chord(u, v));
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut vertices = vec![s];
        seen[s] = true;
        let mut att = Vec::new();
        let mut i = 0;
        while i < vertices.len() {
            let u = vertices[i];
            i += 1;
            for &w in g.neighbors(u) {
                if in_h[w] {
                    att.push(w);
                } else if !seen[w] {
                    seen[w] = true;
                    vertices.push(w);
                }
            }
        }
        att.sort_unstable();
        att.dedup();
        out.push(Fragment::Component { vertices, attachments: att });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(g: &Graph, frag: &Fragment, in_h: &[bool]) -> Vec<usize> {
    match frag {
        Fragment::Chord(u, v) => vec![*u, *v],
        Fragment::Component { vertices, attachments } => {
            let start = attachments[0];
            let n = g.n();
            let mut member = vec![false; n];
            for &v in vertices {
                member[v] = true;
            }
            let mut prev = vec![usize::MAX; n];
            let mut queue: Vec<usize> = Vec::new();
            for &w in g.neighbors(start) {
                if member[w] {
                    prev[w] = start;
                    queue.push(w);
                }
            }
            let mut i = 0;
            while i < queue.len() {
                let u = queue[i];
                i += 1;
                for &w in g.neighbors(u) {
                    if in_h[w] && w != start {
                        let mut path = vec![w, u];
                        let mut cur = u;
                        while prev[cur] != start {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.push(start);
                        path.reverse();
                        return path;
                    }
                    if member[w] && prev[w] == usize::MAX {
                        prev[w] = u;
                        queue.push(w);
                    }
                }
            }
            unreachable!("fragments of a biconnected graph have two attachments")
        }
    }
}

/// Splits a face by a path whose endpoints lie on it.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&v| v == a).unwrap();
    let j = face.iter().position(|&v| v == b).unwrap();
    let interior = &path[1..path.len() - 1];

    let mut f1 = Vec::new();
    let mut p = i;
    loop {
        f1.push(face[p]);
        if p == j {
            break;
        }
        p = (p + 1) % k;
    }
    f1.extend(interior.iter().rev());

    let mut f2 = Vec::new();
    let mut p = j;
    loop {
        f2.push(face[p]);
        if p == i {
            break;
        }
        p = (p + 1) % k;
    }
    f2.extend(interior.iter());
    (f1, f2)
}
