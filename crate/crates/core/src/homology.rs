//! Linear-algebra oracles for Hom and Ext between the modules `M_x`, and homology of
//! complexes of representations.
//!
//! `Hom(M, N)` is the solution space of the commutation equations `f_v S_a = T_a f_w`.
//! `Ext^i(M_y, M_x)` is read off the cochain complex `Hom(P_•, M_x)` where `P_•` is the
//! resolution of `M_y` with `s = 1`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::rank_of_vectors;
pub use crate::linalg::{rank, FieldMatrix};
use crate::reps::{ModuleCategory, RepComplex, RepMorphism, Representation};
use crate::tuples::IncTuple;

/// The linear system whose kernel is `Hom(source, target)`.
pub struct HomSystem {
    pub source: Arc<Representation>,
    pub target: Arc<Representation>,
    pub matrix: FieldMatrix,
    offsets: Vec<usize>,
}

impl HomSystem {
    pub fn new(source: Arc<Representation>, target: Arc<Representation>) -> Self {
        let q = source.quiver().clone();
        let f = source.field();
        let nv = q.vertices().len();
        let (s, t) = (source.dims(), target.dims());
        let mut offsets = Vec::with_capacity(nv + 1);
        let mut acc = 0;
        for v in 0..nv {
            offsets.push(acc);
            acc += t[v] * s[v];
        }
        offsets.push(acc);
        let unknowns = acc;
        let var = |v: usize, r: usize, c: usize| offsets[v] + r * s[v] + c;

        let mut rows: Vec<Vec<u32>> = Vec::new();
        for a in 0..q.arrows().len() {
            let (v, w) = q.endpoints(a);
            let (sa, ta) = (source.arrow_map(a), target.arrow_map(a));
            // (f_v S_a - T_a f_w)[r][c] = 0 for r < t[v], c < s[w].
            for r in 0..t[v] {
                for c in 0..s[w] {
                    let mut row = vec![0u32; unknowns];
                    for j in 0..s[v] {
                        let coeff = sa.get(j, c);
                        if coeff != 0 {
                            let i = var(v, r, j);
                            row[i] = f.add(row[i], coeff);
                        }
                    }
                    for j in 0..t[w] {
                        let coeff = ta.get(r, j);
                        if coeff != 0 {
                            let i = var(w, j, c);
                            row[i] = f.sub(row[i], coeff);
                        }
                    }
                    if row.iter().any(|&e| e != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let mut matrix = FieldMatrix::zeros(f, rows.len(), unknowns);
        for (r, row) in rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if e != 0 {
                    matrix.set(r, c, e);
                }
            }
        }
        HomSystem { source, target, matrix, offsets }
    }

    pub fn unknowns(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dimension(&self) -> usize {
        self.unknowns() - rank(&self.matrix)
    }

    pub fn basis(&self) -> Vec<RepMorphism> {
        let f = self.source.field();
        let (s, t) = (self.source.dims(), self.target.dims());
        self.matrix
            .nullspace()
            .into_iter()
            .map(|vec| {
                let components = (0..s.len())
                    .map(|v| {
                        let mut m = FieldMatrix::zeros(f, t[v], s[v]);
                        for r in 0..t[v] {
                            for c in 0..s[v] {
                                m.set(r, c, vec[self.offsets[v] + r * s[v] + c]);
                            }
                        }
                        m
                    })
                    .collect();
                RepMorphism { source: self.source.clone(), target: self.target.clone(), components }
            })
            .collect()
    }
}

/// `dim Hom(M_x, M_y)` by solving the commutation equations.
pub fn hom_dim_oracle(cat: &ModuleCategory, x: &IncTuple, y: &IncTuple) -> Result<usize> {
    let mx = Arc::new(cat.build_module(x)?);
    let my = Arc::new(cat.build_module(y)?);
    Ok(HomSystem::new(mx, my).dimension())
}

/// `dim Ext^i(M_y, M_x)` for `1 <= i <= d`, from the resolution of `M_y` with `s = 1`.
pub fn ext_oracle(cat: &ModuleCategory, y: &IncTuple, x: &IncTuple, i: usize) -> Result<usize> {
    let d = cat.context().m as usize;
    if i < 1 || i > d {
        return Err(Error::Precondition(format!("Ext degree {i} outside 1..={d}")));
    }
    Ok(ext_profile(cat, y, x)?[i - 1])
}

/// `[dim Ext^1, ..., dim Ext^d]` of `(M_y, M_x)` in one pass over the resolution.
pub fn ext_profile(cat: &ModuleCategory, y: &IncTuple, x: &IncTuple) -> Result<Vec<usize>> {
    let d = cat.context().m as usize;
    let mx = Arc::new(cat.build_module(x)?);
    if y.entries()[0] == 1 {
        cat.build_module(y)?;
        return Ok(vec![0; d]);
    }
    let res = cat.resolution(y, 1)?;
    let (reps, maps) = cat.realize(&res)?;
    // reps[0] = P_d, ..., reps[d] = P_0, reps[d+1] = M_y; maps[j]: reps[j] -> reps[j+1].
    let p = |i: usize| d - i;
    let bases: Vec<Vec<RepMorphism>> =
        (0..=d).map(|i| HomSystem::new(reps[p(i)].clone(), mx.clone()).basis()).collect();
    // δ_i : Hom(P_{i-1}, M_x) -> Hom(P_i, M_x), φ ↦ φ ∘ ∂_i with ∂_i = maps[p(i)].
    let delta_rank = |i: usize| -> usize {
        if i == 0 || i > d {
            return 0;
        }
        let boundary = &maps[p(i)];
        let images: Vec<Vec<u32>> = bases[i - 1].iter().map(|phi| phi.after(boundary).flatten()).collect();
        rank_of_vectors(cat.field(), &images)
    };
    let ranks: Vec<usize> = (0..=d + 1).map(delta_rank).collect();
    Ok((1..=d).map(|i| bases[i].len() - ranks[i + 1] - ranks[i]).collect())
}

/// Homology dimensions at every term of a complex `0 -> T_0 -> ... -> T_r -> 0`.
pub fn complex_homology_dims(cat: &ModuleCategory, c: &RepComplex) -> Result<Vec<usize>> {
    let (reps, maps) = cat.realize(c)?;
    for (j, w) in maps.windows(2).enumerate() {
        if !w[1].after(&w[0]).is_zero() {
            return Err(Error::NonzeroComposite(j + 1));
        }
    }
    let nv = cat.quiver().vertices().len();
    let map_rank = |j: usize| -> usize { (0..nv).map(|v| rank(&maps[j].components[v])).sum() };
    let ranks: Vec<usize> = (0..maps.len()).map(map_rank).collect();
    Ok((0..reps.len())
        .map(|j| {
            let outgoing = if j < maps.len() { ranks[j] } else { 0 };
            let incoming = if j > 0 { ranks[j - 1] } else { 0 };
            reps[j].total_dim() - outgoing - incoming
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::reps::{ComplexKind, ComplexTerm};

    fn cat(n: u32, d: u32) -> ModuleCategory {
        ModuleCategory::new(n, d, PrimeField::default()).unwrap()
    }

    #[test]
    fn hom_examples() {
        let c = cat(4, 2);
        let (x, y) = (c.tuple(&[1, 3, 6]).unwrap(), c.tuple(&[2, 4, 6]).unwrap());
        assert_eq!(hom_dim_oracle(&c, &x, &y).unwrap(), 1);
        assert_eq!(hom_dim_oracle(&c, &y, &x).unwrap(), 0);
        assert_eq!(hom_dim_oracle(&c, &x, &x).unwrap(), 1);
    }

    #[test]
    fn hom_basis_commutes() {
        let c = cat(4, 2);
        let (x, y) = (c.tuple(&[1, 3, 6]).unwrap(), c.tuple(&[2, 4, 6]).unwrap());
        let sys =
            HomSystem::new(Arc::new(c.build_module(&x).unwrap()), Arc::new(c.build_module(&y).unwrap()));
        let basis = sys.basis();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].commutes());
    }

    #[test]
    fn ext_examples() {
        let c = cat(2, 1);
        let (a, b) = (c.tuple(&[2, 3]).unwrap(), c.tuple(&[1, 2]).unwrap());
        assert_eq!(ext_oracle(&c, &a, &b, 1).unwrap(), 1);
        assert_eq!(ext_oracle(&c, &a, &a, 1).unwrap(), 0);
        let c = cat(4, 2);
        let (y, x) = (c.tuple(&[2, 4, 6]).unwrap(), c.tuple(&[1, 3, 5]).unwrap());
        assert_eq!(ext_oracle(&c, &y, &x, 2).unwrap(), 1);
        assert_eq!(ext_oracle(&c, &y, &x, 1).unwrap(), 0);
        assert_eq!(ext_oracle(&c, &y, &y, 2).unwrap(), 0);
        assert!(ext_oracle(&c, &y, &x, 3).is_err());
    }

    #[test]
    fn exactness_examples() {
        let c = cat(2, 1);
        let s = c.ext_sequence(&c.tuple(&[1, 2]).unwrap(), &c.tuple(&[2, 3]).unwrap()).unwrap();
        assert_eq!(complex_homology_dims(&c, &s).unwrap(), vec![0, 0, 0]);
        let c = cat(4, 2);
        let r = c.resolution(&c.tuple(&[2, 4, 6]).unwrap(), 1).unwrap();
        assert_eq!(complex_homology_dims(&c, &r).unwrap(), vec![0; 4]);
    }

    #[test]
    fn zero_complex() {
        let c = cat(3, 2);
        let f = c.field();
        let zc = RepComplex {
            kind: ComplexKind::ExtSequence,
            field: f,
            terms: vec![
                ComplexTerm { label: 1, summands: vec![] },
                ComplexTerm { label: 0, summands: vec![] },
            ],
            maps: vec![FieldMatrix::zeros(f, 0, 0)],
        };
        assert_eq!(complex_homology_dims(&c, &zc).unwrap(), vec![0, 0]);
    }

    #[test]
    fn broken_signs_detected() {
        let c = cat(4, 2);
        let mut s = c.ext_sequence(&c.tuple(&[1, 3, 5]).unwrap(), &c.tuple(&[2, 4, 6]).unwrap()).unwrap();
        let f = c.field();
        for m in &mut s.maps {
            for r in 0..m.rows() {
                for col in 0..m.cols() {
                    if m.get(r, col) != 0 {
                        m.set(r, col, 1);
                    }
                }
            }
        }
        assert!(f.characteristic() != 2);
        assert!(matches!(complex_homology_dims(&c, &s), Err(Error::NonzeroComposite(_))));
    }
}
