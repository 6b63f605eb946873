//! Explicit representations `M_x` over `Q^{n,d-1}`, the canonical morphisms between them, the
//! extension sequences `E_{xy}` and the resolutions built from them.
//!
//! Matrix convention: for an arrow `a : v -> w` a representation stores a matrix of shape
//! `dim(v) x dim(w)`, i.e. a map from the space at `w` to the space at `v`. This is a right
//! module over the path algebra, equivalently a representation of the opposite quiver.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, PrimeField};
use crate::quiver::{build_quiver, QuiverPresentation};
use crate::tuples::{e_ext, e_hom, generate_tuples, Context, IncTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<QuiverPresentation>,
    field: PrimeField,
    dims: Vec<usize>,
    maps: Vec<FieldMatrix>,
}

impl Representation {
    pub fn new(
        quiver: Arc<QuiverPresentation>,
        field: PrimeField,
        dims: Vec<usize>,
        maps: Vec<FieldMatrix>,
    ) -> Result<Self> {
        if dims.len() != quiver.vertices().len() || maps.len() != quiver.arrows().len() {
            return Err(Error::Precondition("dimension vector or map list has wrong length".into()));
        }
        for (a, m) in maps.iter().enumerate() {
            let (v, w) = quiver.endpoints(a);
            if m.rows() != dims[v] || m.cols() != dims[w] {
                return Err(Error::Precondition(format!("arrow {a} has a mis-shaped matrix")));
            }
        }
        Ok(Representation { quiver, field, dims, maps })
    }

    pub fn zero(quiver: Arc<QuiverPresentation>, field: PrimeField) -> Self {
        let dims = vec![0; quiver.vertices().len()];
        let maps = vec![FieldMatrix::zeros(field, 0, 0); quiver.arrows().len()];
        Representation { quiver, field, dims, maps }
    }

    pub fn quiver(&self) -> &Arc<QuiverPresentation> {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn arrow_map(&self, a: usize) -> &FieldMatrix {
        &self.maps[a]
    }

    /// Checks every relation `ρ^x_{kl}` transported to the stored (opposite) convention.
    pub fn satisfies_relations(&self) -> bool {
        let q = &self.quiver;
        q.relations().iter().all(|rel| {
            let mut sum: Option<FieldMatrix> = None;
            for term in &rel.terms {
                let (a, b) = q.path_arrows(&rel.base, term).expect("relation path");
                let prod = self.maps[a].mul(&self.maps[b]).scale(self.field.from_i64(term.coeff as i64));
                sum = Some(match sum {
                    Some(s) => s.add(&prod),
                    None => prod,
                });
            }
            sum.is_none_or(|s| s.is_zero())
        })
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(parts: &[Representation]) -> Result<Representation> {
        let Some(first) = parts.first() else {
            return Err(Error::Precondition("direct sum of no summands".into()));
        };
        let q = first.quiver.clone();
        let f = first.field;
        let nv = q.vertices().len();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let mut maps = Vec::with_capacity(q.arrows().len());
        for a in 0..q.arrows().len() {
            let (v, w) = q.endpoints(a);
            let mut m = FieldMatrix::zeros(f, dims[v], dims[w]);
            let (mut r0, mut c0) = (0, 0);
            for p in parts {
                let block = &p.maps[a];
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        m.set(r0 + r, c0 + c, block.get(r, c));
                    }
                }
                r0 += p.dims[v];
                c0 += p.dims[w];
            }
            maps.push(m);
        }
        Ok(Representation { quiver: q, field: f, dims, maps })
    }
}

/// A morphism of representations: one matrix `dim_target(v) x dim_source(v)` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism {
    pub source: Arc<Representation>,
    pub target: Arc<Representation>,
    pub components: Vec<FieldMatrix>,
}

impl RepMorphism {
    pub fn zero(source: Arc<Representation>, target: Arc<Representation>) -> Self {
        let f = source.field;
        let components =
            (0..source.dims.len()).map(|v| FieldMatrix::zeros(f, target.dims[v], source.dims[v])).collect();
        RepMorphism { source, target, components }
    }

    pub fn identity(rep: Arc<Representation>) -> Self {
        let f = rep.field;
        let components = rep.dims.iter().map(|&d| FieldMatrix::identity(f, d)).collect();
        RepMorphism { source: rep.clone(), target: rep, components }
    }

    /// `f_v · S_a = T_a · f_w` for every arrow `a : v -> w`.
    pub fn commutes(&self) -> bool {
        let q = self.source.quiver();
        (0..q.arrows().len()).all(|a| {
            let (v, w) = q.endpoints(a);
            self.components[v].mul(self.source.arrow_map(a))
                == self.target.arrow_map(a).mul(&self.components[w])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(FieldMatrix::is_zero)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RepMorphism) -> RepMorphism {
        let components = self.components.iter().zip(&first.components).map(|(g, f)| g.mul(f)).collect();
        RepMorphism { source: first.source.clone(), target: self.target.clone(), components }
    }

    /// All per-vertex entries concatenated in vertex order.
    pub fn flatten(&self) -> Vec<u32> {
        self.components.iter().flat_map(|c| c.data().iter().copied()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjInj {
    pub projective: bool,
    pub injective: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ComplexKind {
    /// `0 -> M_x -> E_d -> ... -> E_1 -> M_y -> 0`.
    ExtSequence,
    /// `0 -> M_{x^d} -> ... -> M_{x^0} -> M_x -> 0` with the given `s`.
    Resolution { s: u32, minimal_projective: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexTerm {
    /// `k` for the term `E_k` of an extension sequence; the homological degree for a
    /// resolution, with `-1` for the resolved module.
    pub label: i64,
    pub summands: Vec<IncTuple>,
}

/// A bounded complex of direct sums of indecomposables. `maps[i]` goes from `terms[i]` to
/// `terms[i+1]`; it is a coefficient matrix (rows: target summands, columns: source summands)
/// scaling the canonical morphisms between summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepComplex {
    pub kind: ComplexKind,
    pub field: PrimeField,
    pub terms: Vec<ComplexTerm>,
    pub maps: Vec<FieldMatrix>,
}

impl RepComplex {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Term<'a> {
            label: i64,
            summands: Vec<&'a [u32]>,
        }
        #[derive(Serialize)]
        struct Map<'a> {
            rows: usize,
            cols: usize,
            data: &'a [u32],
        }
        #[derive(Serialize)]
        struct Out<'a> {
            kind: ComplexKind,
            p: u32,
            terms: Vec<Term<'a>>,
            maps: Vec<Map<'a>>,
        }
        let out = Out {
            kind: self.kind,
            p: self.field.characteristic(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { label: t.label, summands: t.summands.iter().map(|z| z.entries()).collect() })
                .collect(),
            maps: self.maps.iter().map(|m| Map { rows: m.rows(), cols: m.cols(), data: m.data() }).collect(),
        };
        serde_json::to_string(&out).expect("complex serializes")
    }
}

/// The category `M_{n,d}` realized as modules over `Q^{n,d-1}` at a fixed prime field.
#[derive(Debug, Clone)]
pub struct ModuleCategory {
    ctx: Context,
    field: PrimeField,
    quiver: Arc<QuiverPresentation>,
}

impl ModuleCategory {
    pub fn new(n: u32, d: u32, field: PrimeField) -> Result<Self> {
        let ctx = Context::category(n, d)?;
        let quiver = Arc::new(build_quiver(n, d - 1)?);
        Ok(ModuleCategory { ctx, field, quiver })
    }

    /// The category-level context `(n, d)`.
    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn quiver(&self) -> &Arc<QuiverPresentation> {
        &self.quiver
    }

    pub fn indecomposables(&self) -> Vec<IncTuple> {
        generate_tuples(self.ctx)
    }

    pub fn tuple(&self, entries: &[u32]) -> Result<IncTuple> {
        IncTuple::new(self.ctx, entries.to_vec())
    }

    fn check(&self, x: &IncTuple) -> Result<()> {
        let c = x.context();
        if c != self.ctx {
            return Err(Error::ContextMismatch(c.n, c.m, self.ctx.n, self.ctx.m));
        }
        Ok(())
    }

    fn in_support(x: &[u32], v: &[u32]) -> bool {
        v.iter().enumerate().all(|(i, &vi)| x[i] <= vi && vi < x[i + 1])
    }

    /// Vertices `y` of `Q^{n,d-1}` with `x_i <= y_i < x_{i+1}`.
    pub fn support(&self, x: &IncTuple) -> Result<Vec<IncTuple>> {
        self.check(x)?;
        Ok(self
            .quiver
            .vertices()
            .iter()
            .filter(|v| Self::in_support(x.entries(), v.entries()))
            .cloned()
            .collect())
    }

    /// `M_x`: `K` on the support, identities between support vertices, zero elsewhere.
    pub fn build_module(&self, x: &IncTuple) -> Result<Representation> {
        self.check(x)?;
        let q = &self.quiver;
        let dims: Vec<usize> =
            q.vertices().iter().map(|v| Self::in_support(x.entries(), v.entries()) as usize).collect();
        let maps = (0..q.arrows().len())
            .map(|a| {
                let (v, w) = q.endpoints(a);
                if dims[v] == 1 && dims[w] == 1 {
                    FieldMatrix::identity(self.field, 1)
                } else {
                    FieldMatrix::zeros(self.field, dims[v], dims[w])
                }
            })
            .collect();
        Ok(Representation { quiver: q.clone(), field: self.field, dims, maps })
    }

    /// The morphism `M_x -> M_y` that is `1` on the common support, if `x E_Hom y`.
    pub fn canonical_hom(&self, x: &IncTuple, y: &IncTuple) -> Result<Option<RepMorphism>> {
        self.check(x)?;
        self.check(y)?;
        if !e_hom(x, y)? {
            return Ok(None);
        }
        let src = Arc::new(self.build_module(x)?);
        let dst = Arc::new(self.build_module(y)?);
        Ok(Some(self.canonical_between(src, dst)))
    }

    fn canonical_between(&self, src: Arc<Representation>, dst: Arc<Representation>) -> RepMorphism {
        let components = src
            .dims
            .iter()
            .zip(&dst.dims)
            .map(|(&a, &b)| {
                if a == 1 && b == 1 {
                    FieldMatrix::identity(self.field, 1)
                } else {
                    FieldMatrix::zeros(self.field, b, a)
                }
            })
            .collect();
        RepMorphism { source: src, target: dst, components }
    }

    pub fn classify_proj_inj(&self, x: &IncTuple) -> Result<ProjInj> {
        self.check(x)?;
        let e = x.entries();
        Ok(ProjInj { projective: e[0] == 1, injective: *e.last().unwrap() == self.ctx.top() })
    }

    /// The sequence `0 -> M_x -> E_d -> ... -> E_1 -> M_y -> 0` for `x E_Ext y`.
    ///
    /// `E_k` collects the `z` with `z_i ∈ {x_i, y_i}` and exactly `k` coordinates taken from
    /// `x`. The component `M_z -> M_{z'}` is present when `z'` arises from `z` by switching
    /// one coordinate `i` from `x_i` to `y_i`; its coefficient is `(-1)^{#{j < i : z_j = x_j}}`.
    pub fn ext_sequence(&self, x: &IncTuple, y: &IncTuple) -> Result<RepComplex> {
        self.check(x)?;
        self.check(y)?;
        if !e_ext(x, y)? {
            return Err(Error::Precondition(format!("({x}) E_Ext ({y}) does not hold")));
        }
        let len = self.ctx.len();
        // Bit i set: coordinate i taken from x.
        let choose = |bits: u32| -> Option<IncTuple> {
            let entries: Vec<u32> =
                (0..len).map(|i| if bits >> i & 1 == 1 { x.entries()[i] } else { y.entries()[i] }).collect();
            IncTuple::new(self.ctx, entries).ok()
        };
        let mut levels: Vec<Vec<(u32, IncTuple)>> = vec![Vec::new(); len + 1];
        for bits in 0..(1u32 << len) {
            if let Some(z) = choose(bits) {
                levels[bits.count_ones() as usize].push((bits, z));
            }
        }
        for level in &mut levels {
            level.sort_by(|a, b| a.1.cmp(&b.1));
        }
        let f = self.field;
        let mut maps = Vec::with_capacity(len);
        for k in (1..=len).rev() {
            let (src, dst) = (&levels[k], &levels[k - 1]);
            let mut m = FieldMatrix::zeros(f, dst.len(), src.len());
            for (c, (bits, _)) in src.iter().enumerate() {
                for i in 0..len {
                    if bits >> i & 1 == 0 {
                        continue;
                    }
                    let flipped = bits & !(1 << i);
                    if let Some(r) = dst.iter().position(|(b, _)| *b == flipped) {
                        let below = (bits & ((1 << i) - 1)).count_ones();
                        m.set(r, c, if below % 2 == 0 { 1 } else { f.neg(1) });
                    }
                }
            }
            maps.push(m);
        }
        let terms = (0..=len)
            .rev()
            .map(|k| ComplexTerm {
                label: k as i64,
                summands: levels[k].iter().map(|(_, z)| z.clone()).collect(),
            })
            .collect();
        Ok(RepComplex { kind: ComplexKind::ExtSequence, field: f, terms, maps })
    }

    /// `x^i = (s, x_0, ..., x_{i-1}, x_{i+1}, ..., x_d)`.
    pub fn resolution_term(&self, x: &IncTuple, s: u32, i: usize) -> Result<IncTuple> {
        let mut entries = vec![s];
        entries.extend(x.entries().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e));
        IncTuple::new(self.ctx, entries)
    }

    /// `0 -> M_{x^d} -> ... -> M_{x^0} -> M_x -> 0`, the sequence `E_{x^d x}`.
    pub fn resolution(&self, x: &IncTuple, s: u32) -> Result<RepComplex> {
        self.check(x)?;
        if s < 1 || s >= x.entries()[0] {
            return Err(Error::Precondition(format!("need 1 <= s < x_0, got s={s} for ({x})")));
        }
        let d = self.ctx.m as usize;
        let xd = self.resolution_term(x, s, d)?;
        let mut c = self.ext_sequence(&xd, x)?;
        for (pos, term) in c.terms.iter_mut().enumerate() {
            debug_assert_eq!(term.summands.len(), 1);
            term.label = d as i64 - pos as i64;
        }
        c.kind = ComplexKind::Resolution { s, minimal_projective: s == 1 };
        Ok(c)
    }

    /// Direct-sum representations of the terms and the per-vertex maps between them.
    pub fn realize(&self, c: &RepComplex) -> Result<(Vec<Arc<Representation>>, Vec<RepMorphism>)> {
        let mut reps = Vec::with_capacity(c.terms.len());
        let mut parts_per_term = Vec::with_capacity(c.terms.len());
        for term in &c.terms {
            let parts: Vec<Representation> =
                term.summands.iter().map(|z| self.build_module(z)).collect::<Result<_>>()?;
            let sum = if parts.is_empty() {
                Representation::zero(self.quiver.clone(), self.field)
            } else {
                Representation::direct_sum(&parts)?
            };
            reps.push(Arc::new(sum));
            parts_per_term.push(parts);
        }
        let nv = self.quiver.vertices().len();
        let mut morphisms = Vec::with_capacity(c.maps.len());
        for (i, coeffs) in c.maps.iter().enumerate() {
            let (src_parts, dst_parts) = (&parts_per_term[i], &parts_per_term[i + 1]);
            let mut mor = RepMorphism::zero(reps[i].clone(), reps[i + 1].clone());
            for v in 0..nv {
                let mut col = 0;
                for (sc, sp) in src_parts.iter().enumerate() {
                    if sp.dims[v] == 1 {
                        let mut row = 0;
                        for (tr, tp) in dst_parts.iter().enumerate() {
                            if tp.dims[v] == 1 {
                                let coeff = coeffs.get(tr, sc);
                                if coeff != 0 {
                                    let (zs, zt) = (&c.terms[i].summands[sc], &c.terms[i + 1].summands[tr]);
                                    if !e_hom(zs, zt)? {
                                        return Err(Error::Precondition(format!(
                                            "coefficient on ({zs}) -> ({zt}) but Hom vanishes"
                                        )));
                                    }
                                }
                                mor.components[v].set(row, col, coeff);
                                row += 1;
                            }
                        }
                        col += 1;
                    }
                }
            }
            morphisms.push(mor);
        }
        Ok((reps, morphisms))
    }
}
