//! Paths in normal form, composition and factorization.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{EdgeId, GraphError, KGraph, VertexId};
use crate::degree::MultiDegree;

/// A path stored in normal form: edges listed in ascending color blocks.
/// Within a degree, the derived order is lexicographic on the edge sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub degree: MultiDegree,
    pub edges: Vec<EdgeId>,
    pub range: VertexId,
    pub source: VertexId,
}

impl Path {
    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }
}

impl KGraph {
    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path { degree: MultiDegree::zero(self.k), edges: Vec::new(), range: v, source: v }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        let ed = &self.edges[e];
        Path {
            degree: MultiDegree::unit(self.k, ed.color),
            edges: vec![e],
            range: ed.range,
            source: ed.source,
        }
    }

    /// Reorders `word` so its colors follow `target`, applying squares to each
    /// adjacent exchange. Edges of equal color keep their relative order.
    fn reorder(&self, word: &mut [EdgeId], target: &[usize]) {
        debug_assert_eq!(word.len(), target.len());
        let mut slots: Vec<Vec<usize>> = vec![Vec::new(); self.k];
        for (pos, &c) in target.iter().enumerate().rev() {
            slots[c].push(pos);
        }
        let mut rank: Vec<usize> = word
            .iter()
            .map(|&e| slots[self.edges[e].color].pop().expect("word and target colors differ"))
            .collect();
        for i in 1..word.len() {
            let mut j = i;
            while j > 0 && rank[j - 1] > rank[j] {
                let (a, b) = self.swap_pair(word[j - 1], word[j]);
                word[j - 1] = a;
                word[j] = b;
                rank.swap(j - 1, j);
                j -= 1;
            }
        }
    }

    fn word_degree(&self, word: &[EdgeId]) -> MultiDegree {
        let mut d = vec![0u32; self.k];
        for &e in word {
            d[self.edges[e].color] += 1;
        }
        MultiDegree::new(d)
    }

    /// Builds a path from a composable edge word in any color order.
    pub fn path_from_word(&self, word: &[EdgeId]) -> Result<Path, GraphError> {
        for w in word.windows(2) {
            let (x, y) = (&self.edges[w[0]], &self.edges[w[1]]);
            if x.source != y.range {
                return Err(GraphError::NotComposable {
                    source_vertex: self.vertex_names[x.source].clone(),
                    range_vertex: self.vertex_names[y.range].clone(),
                });
            }
        }
        let Some(&first) = word.first() else {
            return Err(GraphError::MalformedSkeleton("empty edge word has no vertex".into()));
        };
        let degree = self.word_degree(word);
        let mut w = word.to_vec();
        self.reorder(&mut w, &degree.color_sequence());
        Ok(Path {
            degree,
            range: self.edges[first].range,
            source: self.edges[*word.last().unwrap()].source,
            edges: w,
        })
    }

    pub fn compose(&self, a: &Path, b: &Path) -> Result<Path, GraphError> {
        if a.source != b.range {
            return Err(GraphError::NotComposable {
                source_vertex: self.vertex_names[a.source].clone(),
                range_vertex: self.vertex_names[b.range].clone(),
            });
        }
        let degree = a.degree.add(&b.degree);
        let mut w = Vec::with_capacity(a.edges.len() + b.edges.len());
        w.extend_from_slice(&a.edges);
        w.extend_from_slice(&b.edges);
        self.reorder(&mut w, &degree.color_sequence());
        Ok(Path { degree, edges: w, range: a.range, source: b.source })
    }

    fn sub_path(&self, word: &[EdgeId], degree: MultiDegree, vertex: VertexId) -> Path {
        if word.is_empty() {
            return self.vertex_path(vertex);
        }
        Path {
            degree,
            edges: word.to_vec(),
            range: self.edges[word[0]].range,
            source: self.edges[word[word.len() - 1]].source,
        }
    }

    /// The segments `λ(0,m), λ(m,n), λ(n,d(λ))`.
    pub fn split3(
        &self,
        p: &Path,
        m: &MultiDegree,
        n: &MultiDegree,
    ) -> Result<(Path, Path, Path), GraphError> {
        if !(m.le(n) && n.le(&p.degree)) {
            return Err(GraphError::DegreeOutOfRange {
                requested: format!("{m}..{n}"),
                degree: format!("{}", p.degree),
            });
        }
        let mid = n.checked_sub(m).unwrap();
        let tail = p.degree.checked_sub(n).unwrap();
        let mut target = m.color_sequence();
        target.extend(mid.color_sequence());
        target.extend(tail.color_sequence());
        let mut w = p.edges.clone();
        self.reorder(&mut w, &target);
        let (a, b) = (m.total() as usize, n.total() as usize);
        let v1 = if a == 0 { p.range } else { self.edges[w[a - 1]].source };
        let v2 = if b == 0 { p.range } else { self.edges[w[b - 1]].source };
        Ok((
            self.sub_path(&w[..a], m.clone(), p.range),
            self.sub_path(&w[a..b], mid, v1),
            self.sub_path(&w[b..], tail, v2),
        ))
    }

    /// `λ(m,n)`.
    pub fn segment(&self, p: &Path, m: &MultiDegree, n: &MultiDegree) -> Result<Path, GraphError> {
        Ok(self.split3(p, m, n)?.1)
    }

    /// `(λ(0,m), λ(m,d(λ)))`.
    pub fn factor(&self, p: &Path, m: &MultiDegree) -> Result<(Path, Path), GraphError> {
        let (a, b, _) = self.split3(p, m, &p.degree)?;
        Ok((a, b))
    }

    /// All paths of degree `n` in canonical order.
    pub fn paths(&self, n: &MultiDegree) -> Vec<Path> {
        let colors = n.color_sequence();
        if colors.is_empty() {
            return (0..self.vertex_count()).map(|v| self.vertex_path(v)).collect();
        }
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(colors.len());
        for &e in &self.by_color[colors[0]] {
            word.push(e);
            self.extend_paths(&colors, &mut word, n, &mut out);
            word.pop();
        }
        out
    }

    fn extend_paths(&self, colors: &[usize], word: &mut Vec<EdgeId>, n: &MultiDegree, out: &mut Vec<Path>) {
        let t = word.len();
        let last = *word.last().unwrap();
        if t == colors.len() {
            out.push(Path {
                degree: n.clone(),
                edges: word.clone(),
                range: self.edges[word[0]].range,
                source: self.edges[last].source,
            });
            return;
        }
        let v = self.edges[last].source;
        for &e in &self.into[v][colors[t]] {
            word.push(e);
            self.extend_paths(colors, word, n, out);
            word.pop();
        }
    }

    /// `vΛⁿ`.
    pub fn paths_with_range(&self, v: VertexId, n: &MultiDegree) -> Vec<Path> {
        self.paths(n).into_iter().filter(|p| p.range == v).collect()
    }

    /// `U ∨ V = UΛ^{(m∨n)−m} ∩ VΛ^{(m∨n)−n}` for sets of uniform degrees m and n.
    pub fn vee(&self, u: &[Path], v: &[Path]) -> Vec<Path> {
        let (Some(pu), Some(pv)) = (u.first(), v.first()) else {
            return Vec::new();
        };
        let (m, n) = (&pu.degree, &pv.degree);
        let j = m.join(n);
        let mut out: Vec<Path> = self
            .paths(&j)
            .into_iter()
            .filter(|p| {
                let a = self.segment(p, &MultiDegree::zero(self.k), m).unwrap();
                let b = self.segment(p, &MultiDegree::zero(self.k), n).unwrap();
                u.contains(&a) && v.contains(&b)
            })
            .collect();
        out.sort();
        out
    }

    /// Whether the source map is injective on the set `u`.
    pub fn is_s_section(&self, u: &[Path]) -> bool {
        let mut seen: Vec<(VertexId, &Path)> = Vec::new();
        for p in u {
            if seen.iter().any(|(s, q)| *s == p.source && *q != p) {
                return false;
            }
            seen.push((p.source, p));
        }
        true
    }

    /// Inverse of [`KGraph::path_label`]: a vertex name or dot-separated edge
    /// names in any composable order.
    pub fn path_by_label(&self, label: &str) -> Result<Path, GraphError> {
        let label = label.trim();
        if let Some(v) = self.vertex_by_name(label) {
            return Ok(self.vertex_path(v));
        }
        let word = label
            .split('.')
            .map(|name| self.edge_by_name(name.trim()).ok_or_else(|| GraphError::UnknownName(name.trim().into())))
            .collect::<Result<Vec<_>, _>>()?;
        self.path_from_word(&word)
    }

    /// Edge names of the normal form, or the vertex name for degree 0.
    pub fn path_label(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            return self.vertex_names[p.range].clone();
        }
        let mut s = String::new();
        for (i, &e) in p.edges.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            s.push_str(&self.edges[e].name);
        }
        s
    }
}
