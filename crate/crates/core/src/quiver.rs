//! The quiver `Q^{n,m}` with arrows `α^x_k : x -> σ_k^+(x)` and the relations `ρ^x_{kl}`.
//!
//! Arrows are drawn in the unreversed direction. Representations of the opposite algebra
//! are handled in [`crate::reps`].

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tuples::{generate_tuples, Context, Direction, IncTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: IncTuple,
    pub target: IncTuple,
    pub coord: usize,
}

impl Arrow {
    pub fn label(&self) -> String {
        format!("alpha^{}_{}", self.source.compact(), self.coord)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationKind {
    #[serde(rename = "comm")]
    Commutativity,
    #[serde(rename = "zero")]
    ZeroComposite,
}

/// A length-two path `x -> σ_first(x) -> σ_second σ_first(x)` with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathTerm {
    pub coeff: i8,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub base: IncTuple,
    /// The unordered coordinate pair, stored with `k < l`.
    pub k: usize,
    pub l: usize,
    pub kind: RelationKind,
    pub terms: Vec<PathTerm>,
}

impl Relation {
    /// `ρ^x_{kl}` if the double shift of `x` at `k` and `l` is a vertex.
    fn at(x: &IncTuple, k: usize, l: usize) -> Option<Relation> {
        debug_assert!(k < l);
        let mut y = x.entries().to_vec();
        y[k] += 1;
        y[l] += 1;
        IncTuple::new(x.context(), y).ok()?;
        let via_k = x.shift(k, Direction::Up).is_some();
        let via_l = x.shift(l, Direction::Up).is_some();
        let (kind, terms) = match (via_k, via_l) {
            (true, true) => (
                RelationKind::Commutativity,
                vec![PathTerm { coeff: 1, first: k, second: l }, PathTerm { coeff: -1, first: l, second: k }],
            ),
            (true, false) => (RelationKind::ZeroComposite, vec![PathTerm { coeff: 1, first: k, second: l }]),
            (false, true) => (RelationKind::ZeroComposite, vec![PathTerm { coeff: 1, first: l, second: k }]),
            (false, false) => unreachable!("double shift defined but neither single shift"),
        };
        Some(Relation { base: x.clone(), k, l, kind, terms })
    }
}

#[derive(Debug, Clone)]
pub struct QuiverPresentation {
    ctx: Context,
    vertices: Vec<IncTuple>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    arrow_index: HashMap<(usize, usize), usize>,
}

impl PartialEq for QuiverPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.vertices == other.vertices
            && self.arrows == other.arrows
            && self.relations == other.relations
    }
}

impl Eq for QuiverPresentation {}

/// Builds `Q^{n,m}` with its relations. Arrows are sorted by `(source, coord)`.
pub fn build_quiver(n: u32, m: u32) -> Result<QuiverPresentation> {
    let ctx = Context::new(n, m)?;
    let vertices = generate_tuples(ctx);
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    for x in &vertices {
        for k in 0..ctx.len() {
            if let Some(target) = x.shift(k, Direction::Up) {
                arrows.push(Arrow { source: x.clone(), target, coord: k });
            }
        }
        for k in 0..ctx.len() {
            for l in k + 1..ctx.len() {
                relations.extend(Relation::at(x, k, l));
            }
        }
    }
    Ok(QuiverPresentation::assemble(ctx, vertices, arrows, relations))
}

impl QuiverPresentation {
    fn assemble(ctx: Context, vertices: Vec<IncTuple>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Self {
        let mut q = QuiverPresentation { ctx, vertices, arrows, relations, arrow_index: HashMap::new() };
        let index: HashMap<(usize, usize), usize> = q
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| ((q.vertex_index(&a.source).expect("arrow source"), a.coord), i))
            .collect();
        q.arrow_index = index;
        q
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn vertices(&self) -> &[IncTuple] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Vertices are sorted, so this is a binary search.
    pub fn vertex_index(&self, v: &IncTuple) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Index of the arrow leaving vertex `v` along coordinate `k`.
    pub fn arrow_from(&self, v: usize, k: usize) -> Option<usize> {
        self.arrow_index.get(&(v, k)).copied()
    }

    /// Index pair `(source, target)` of arrow `a`.
    pub fn endpoints(&self, a: usize) -> (usize, usize) {
        let arrow = &self.arrows[a];
        (self.vertex_index(&arrow.source).expect("source"), self.vertex_index(&arrow.target).expect("target"))
    }

    /// Arrow indices along a path term of a relation.
    pub fn path_arrows(&self, base: &IncTuple, term: &PathTerm) -> Option<(usize, usize)> {
        let v0 = self.vertex_index(base)?;
        let a = self.arrow_from(v0, term.first)?;
        let v1 = self.vertex_index(&self.arrows[a].target)?;
        let b = self.arrow_from(v1, term.second)?;
        Some((a, b))
    }

    /// Graphviz rendering; node ids are the concatenated entries.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph Q_{}_{} {{", self.ctx.n, self.ctx.m);
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", v.compact());
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                a.source.compact(),
                a.target.compact(),
                a.coord
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&QuiverJson::from(self)).expect("quiver serializes")
    }

    /// Parses the JSON produced by [`Self::to_json`], validating every vertex, arrow and relation.
    pub fn from_json(text: &str) -> Result<Self> {
        let dto: QuiverJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("quiver json: {e}")))?;
        let ctx = Context::new(dto.n, dto.m)?;
        let vertices = dto.vertices.into_iter().map(|v| IncTuple::new(ctx, v)).collect::<Result<Vec<_>>>()?;
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Parse("vertices must be strictly increasing".into()));
        }
        let mut arrows = Vec::with_capacity(dto.arrows.len());
        for a in dto.arrows {
            let source = IncTuple::new(ctx, a.src)?;
            let target = IncTuple::new(ctx, a.dst)?;
            if source.sigma(a.k, Direction::Up)?.as_ref() != Some(&target) {
                return Err(Error::Parse(format!("arrow {source} -> {target} is not a shift")));
            }
            arrows.push(Arrow { source, target, coord: a.k });
        }
        let mut relations = Vec::with_capacity(dto.relations.len());
        for r in dto.relations {
            let base = IncTuple::new(ctx, r.x)?;
            if r.k >= r.l || r.l >= ctx.len() {
                return Err(Error::Parse(format!("bad relation coordinates {},{}", r.k, r.l)));
            }
            let rel = Relation::at(&base, r.k, r.l)
                .filter(|rel| rel.kind == r.kind)
                .ok_or_else(|| Error::Parse(format!("no such relation at {base}")))?;
            relations.push(rel);
        }
        let q = QuiverPresentation::assemble(ctx, vertices, arrows, relations);
        for a in &q.arrows {
            if q.vertex_index(&a.source).is_none() || q.vertex_index(&a.target).is_none() {
                return Err(Error::Parse("arrow endpoint is not a vertex".into()));
            }
        }
        Ok(q)
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    src: Vec<u32>,
    dst: Vec<u32>,
    k: usize,
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    x: Vec<u32>,
    k: usize,
    l: usize,
    kind: RelationKind,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    n: u32,
    m: u32,
    vertices: Vec<Vec<u32>>,
    arrows: Vec<ArrowJson>,
    relations: Vec<RelationJson>,
}

impl From<&QuiverPresentation> for QuiverJson {
    fn from(q: &QuiverPresentation) -> Self {
        QuiverJson {
            n: q.ctx.n,
            m: q.ctx.m,
            vertices: q.vertices.iter().map(|v| v.entries().to_vec()).collect(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    src: a.source.entries().to_vec(),
                    dst: a.target.entries().to_vec(),
                    k: a.coord,
                })
                .collect(),
            relations: q
                .relations
                .iter()
                .map(|r| RelationJson { x: r.base.entries().to_vec(), k: r.k, l: r.l, kind: r.kind })
                .collect(),
        }
    }
}
