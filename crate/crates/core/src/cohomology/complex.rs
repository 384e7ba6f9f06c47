use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::monomial::{algebra_degree_dim, monomials, Generator, Monomial};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::liesuper::LieSuperAlgebra;
use crate::supermodule::{hom, GradedModule, ProductModule, SuperModule};
use crate::superlinalg::{sparse, Echelon, MatrixFp, PrimeField, SparseVec};

/// A homogeneous cochain: coordinates in the basis of `C^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coords: SparseVec,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coords: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Result of asking whether a cocycle is a coboundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryTest {
    /// `z = ∂w`; the witness `w` is absent in degree 0, where only `z = 0` qualifies.
    Coboundary { witness: Option<Cochain> },
    NotCoboundary,
}

impl CoboundaryTest {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, Self::Coboundary { .. })
    }
}

/// The cochain complex `C^n(g, V) = Λ_s^n(g^*) ⊗ V` in degrees `0..=nmax`.
///
/// For a pair of modules `(M, N)` the coefficients are `V = Hom_k(M, N)`,
/// so that the cohomology is `Ext_g(M, N)`. The differential is
/// `∂ = ∂_str + ∂_act`: `∂_str` is the derivation of the cochain algebra
/// dual to the bracket,
///
/// ```text
/// ∂ξ_k = -Σ_{i<j} c^k_{ij} ξ_i ξ_j - ½ Σ_{u,v} s^k_{uv} η_u η_v
/// ∂η_w = -Σ_{i,u} t^w_{iu} ξ_i η_u
/// ```
///
/// and on `1 ⊗ v` the action part is `Σ_a (-1)^{|a||v|} β_a ⊗ ρ(b_a) v`,
/// extended by `∂(ω·c) = ∂ω·c + (-1)^{deg ω} ω·∂c`. The relation `∂² = 0`
/// is checked when the complex is built.
pub struct CochainComplex {
    algebra: Arc<LieSuperAlgebra>,
    coefficients: SuperModule,
    hom: Option<ProductModule>,
    coefficient_degrees: Option<Vec<i64>>,
    nmax: usize,
    bases: Vec<Vec<Monomial>>,
    lookup: Vec<HashMap<Monomial, usize>>,
    /// `differentials[n][c]` is the image of basis cochain `c` of `C^n` in `C^{n+1}`.
    differentials: Vec<Vec<SparseVec>>,
    internal: Option<Vec<Vec<i64>>>,
}

/// `∂` on the generators `ξ_i` and `η_u`, as signed monomials of degree 2.
struct GeneratorDifferentials {
    xi: Vec<Vec<(u32, Monomial)>>,
    eta: Vec<Vec<(u32, Monomial)>>,
}

impl GeneratorDifferentials {
    fn new(g: &LieSuperAlgebra) -> Self {
        let f = g.field();
        let even = g.even_indices();
        let odd = g.odd_indices();
        let (d0, d1) = g.dims();
        let mut even_pos = vec![usize::MAX; g.dim()];
        let mut odd_pos = vec![usize::MAX; g.dim()];
        for (i, &a) in even.iter().enumerate() {
            even_pos[a] = i;
        }
        for (u, &a) in odd.iter().enumerate() {
            odd_pos[a] = u;
        }
        let mut xi: Vec<BTreeMap<Monomial, u32>> = vec![BTreeMap::new(); d0];
        let mut eta: Vec<BTreeMap<Monomial, u32>> = vec![BTreeMap::new(); d1];
        let push = |slot: &mut BTreeMap<Monomial, u32>, m: Monomial, c: u32| {
            let e = slot.entry(m).or_insert(0);
            *e = f.add(*e, c);
        };
        for i in 0..d0 {
            for j in i + 1..d0 {
                let mut m = Monomial::one(d1);
                m.ext = (1 << i) | (1 << j);
                for &(k, c) in g.basis_bracket(even[i], even[j]) {
                    push(&mut xi[even_pos[k]], m.clone(), f.neg(c));
                }
            }
        }
        for u in 0..d1 {
            for v in u..d1 {
                let mut m = Monomial::one(d1);
                m.sym[u] += 1;
                m.sym[v] += 1;
                // the symmetric pair (u,v),(v,u) contributes twice when u != v
                let weight = if u == v { f.neg(f.half()) } else { f.neg(1) };
                for &(k, c) in g.basis_bracket(odd[u], odd[v]) {
                    push(&mut xi[even_pos[k]], m.clone(), f.mul(weight, c));
                }
            }
        }
        for i in 0..d0 {
            for u in 0..d1 {
                let mut m = Monomial::one(d1);
                m.ext = 1 << i;
                m.sym[u] = 1;
                for &(w, c) in g.basis_bracket(even[i], odd[u]) {
                    push(&mut eta[odd_pos[w]], m.clone(), f.neg(c));
                }
            }
        }
        let finish = |v: Vec<BTreeMap<Monomial, u32>>| {
            v.into_iter()
                .map(|m| m.into_iter().filter(|e| e.1 != 0).map(|(m, c)| (c, m)).collect())
                .collect()
        };
        Self {
            xi: finish(xi),
            eta: finish(eta),
        }
    }

    fn of(&self, g: Generator) -> &[(u32, Monomial)] {
        match g {
            Generator::Xi(i) => &self.xi[i],
            Generator::Eta(u) => &self.eta[u],
        }
    }
}

impl CochainComplex {
    /// The complex computing `Ext_g(M, N)`, with coefficients `Hom_k(M, N)`.
    pub fn build(m: &SuperModule, n: &SuperModule, nmax: usize, budget: &Budget) -> Result<Self> {
        let h = hom(m, n)?;
        let mut c = Self::with_coefficients(&h.module, nmax, None, budget)?;
        c.hom = Some(h);
        Ok(c)
    }

    /// The complex computing `H(g, V)`.
    pub fn with_coefficients(
        v: &SuperModule,
        nmax: usize,
        coefficient_degrees: Option<Vec<i64>>,
        budget: &Budget,
    ) -> Result<Self> {
        let g = v.algebra().clone();
        if g.p() < 3 {
            return Err(Error::input("the cochain differential needs an odd characteristic"));
        }
        let (d0, d1) = g.dims();
        if d0 > 64 {
            return Err(Error::input("at most 64 even basis elements are supported"));
        }
        let dv = v.dim();
        let bases: Vec<Vec<Monomial>> = (0..=nmax).map(|n| monomials(d0, d1, n)).collect();
        for (n, b) in bases.iter().enumerate() {
            budget.check_cochains(&format!("C^{n}"), (b.len() as u64).saturating_mul(dv as u64))?;
        }
        let lookup: Vec<HashMap<Monomial, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let internal = match (&coefficient_degrees, g.zdegrees()) {
            (Some(vdeg), Some(z)) => {
                if vdeg.len() != dv {
                    return Err(Error::dims("coefficient degrees do not match the module"));
                }
                Some(
                    bases
                        .iter()
                        .map(|b| {
                            b.iter()
                                .flat_map(|m| {
                                    let w = monomial_weight(&g, z, m);
                                    vdeg.iter().map(move |&d| d - w)
                                })
                                .collect()
                        })
                        .collect(),
                )
            }
            (Some(_), None) => return Err(Error::input("graded coefficients over an ungraded algebra")),
            _ => None,
        };
        let mut complex = Self {
            algebra: g,
            coefficients: v.clone(),
            hom: None,
            coefficient_degrees,
            nmax,
            bases,
            lookup,
            differentials: Vec::new(),
            internal,
        };
        let gd = GeneratorDifferentials::new(&complex.algebra);
        let action_cols: Vec<Vec<SparseVec>> = v.actions().iter().map(MatrixFp::columns).collect();
        complex.differentials = (0..nmax)
            .map(|n| complex.build_differential(n, &gd, &action_cols))
            .collect();
        complex.verify()?;
        Ok(complex)
    }

    fn build_differential(
        &self,
        n: usize,
        gd: &GeneratorDifferentials,
        action_cols: &[Vec<SparseVec>],
    ) -> Vec<SparseVec> {
        let g = self.algebra.as_ref();
        let f = g.field();
        let (_, d1) = g.dims();
        let dv = self.coefficients.dim();
        let target = &self.lookup[n + 1];
        // Dual generator for each algebra basis element.
        let mut beta = vec![Generator::Xi(0); g.dim()];
        for (i, &a) in g.even_indices().iter().enumerate() {
            beta[a] = Generator::Xi(i);
        }
        for (u, &a) in g.odd_indices().iter().enumerate() {
            beta[a] = Generator::Eta(u);
        }
        let beta: Vec<Monomial> = beta.into_iter().map(|b| Monomial::generator(b, d1)).collect();
        let degree_sign = f.sign(n % 2 == 1);
        self.bases[n]
            .par_iter()
            .flat_map_iter(|mono| {
                // ∂_str of the monomial, as signed monomials of degree n+1.
                let gens = mono.generators();
                let mut str_terms: Vec<(u32, Monomial)> = Vec::new();
                for k in 0..gens.len() {
                    let (s1, prefix) = Monomial::from_generators(&gens[..k], d1).expect("normal form");
                    let (s2, suffix) =
                        Monomial::from_generators(&gens[k + 1..], d1).expect("normal form");
                    for (c, t) in gd.of(gens[k]) {
                        let Some((s3, pt)) = prefix.mul(t) else { continue };
                        let Some((s4, full)) = pt.mul(&suffix) else { continue };
                        let neg = (k % 2 == 1) ^ s1 ^ s2 ^ s3 ^ s4;
                        str_terms.push((f.mul(*c, f.sign(neg)), full));
                    }
                }
                // ω·β_a for each basis element a.
                let act_terms: Vec<Option<(bool, Monomial)>> =
                    beta.iter().map(|b| mono.mul(b)).collect();
                (0..dv).map(move |v| {
                    let mut col = Vec::new();
                    for (c, m) in &str_terms {
                        col.push((target[m] * dv + v, *c));
                    }
                    let v_odd = self.coefficients.parity(v).is_odd();
                    for (a, term) in act_terms.iter().enumerate() {
                        let Some((s, m)) = term else { continue };
                        let sign = f.mul(
                            degree_sign,
                            f.sign(*s ^ (v_odd && g.parity(a).is_odd())),
                        );
                        let base = target[m] * dv;
                        for &(w, r) in &action_cols[a][v] {
                            col.push((base + w, f.mul(sign, r)));
                        }
                    }
                    sparse::collect(f, col)
                })
            })
            .collect()
    }

    fn verify(&self) -> Result<()> {
        let f = self.field();
        for n in 0..self.nmax {
            if let Some(internal) = &self.internal {
                for (c, col) in self.differentials[n].iter().enumerate() {
                    if col.iter().any(|&(r, _)| internal[n + 1][r] != internal[n][c]) {
                        return Err(Error::Internal(format!(
                            "differential does not preserve internal degree in C^{n}"
                        )));
                    }
                }
            }
            if n + 1 >= self.nmax {
                continue;
            }
            let next = &self.differentials[n + 1];
            let bad = self.differentials[n].par_iter().position_any(|col| {
                let terms = col
                    .iter()
                    .flat_map(|&(r, a)| next[r].iter().map(move |&(s, b)| (s, f.mul(a, b))));
                !sparse::collect(f, terms.collect::<Vec<_>>()).is_empty()
            });
            if let Some(c) = bad {
                return Err(Error::Internal(format!(
                    "∂∘∂ is nonzero on basis cochain {c} of C^{n}"
                )));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LieSuperAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn coefficients(&self) -> &SuperModule {
        &self.coefficients
    }

    /// The `Hom_k(M, N)` identification when built from a module pair.
    pub fn hom_module(&self) -> Option<&ProductModule> {
        self.hom.as_ref()
    }

    pub fn coefficient_degrees(&self) -> Option<&[i64]> {
        self.coefficient_degrees.as_deref()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.bases[n].len() * self.coefficients.dim()
    }

    pub fn monomials(&self, n: usize) -> &[Monomial] {
        &self.bases[n]
    }

    /// Basis index of `mono ⊗ v` in `C^{deg mono}`.
    pub fn index_of(&self, mono: &Monomial, v: usize) -> Option<usize> {
        let n = mono.degree();
        let i = self.lookup.get(n)?.get(mono)?;
        Some(i * self.coefficients.dim() + v)
    }

    /// Basis element `c` of `C^n` as `(monomial, coefficient index)`.
    pub fn basis_element(&self, n: usize, c: usize) -> (&Monomial, usize) {
        let dv = self.coefficients.dim();
        (&self.bases[n][c / dv], c % dv)
    }

    /// Internal Z-degree of each basis cochain, for graded complexes.
    pub fn internal_degrees(&self, n: usize) -> Option<&[i64]> {
        self.internal.as_ref().map(|i| i[n].as_slice())
    }

    /// Columns of `∂_n : C^n → C^{n+1}`.
    pub fn differential_columns(&self, n: usize) -> &[SparseVec] {
        &self.differentials[n]
    }

    pub fn differential_matrix(&self, n: usize) -> MatrixFp {
        MatrixFp::from_sparse_columns(self.field(), self.dim(n + 1), &self.differentials[n])
            .expect("in range")
    }

    pub fn differential(&self, c: &Cochain) -> Result<Cochain> {
        if c.degree >= self.nmax {
            return Err(Error::Budget(format!(
                "∂ on C^{} needs a complex built past degree {}",
                c.degree, self.nmax
            )));
        }
        let f = self.field();
        let cols = &self.differentials[c.degree];
        let terms = c
            .coords
            .iter()
            .flat_map(|&(i, a)| cols[i].iter().map(move |&(r, b)| (r, f.mul(a, b))));
        Ok(Cochain {
            degree: c.degree + 1,
            coords: sparse::collect(f, terms.collect::<Vec<_>>()),
        })
    }

    pub fn is_cocycle(&self, c: &Cochain) -> Result<bool> {
        Ok(self.differential(c)?.is_zero())
    }

    /// Decides whether the cocycle `z` is a coboundary, with a witness.
    pub fn is_coboundary(&self, z: &Cochain) -> Result<CoboundaryTest> {
        if !self.is_cocycle(z)? {
            return Err(Error::Precondition(format!(
                "cochain of degree {} is not a cocycle",
                z.degree
            )));
        }
        if z.degree == 0 {
            return Ok(if z.is_zero() {
                CoboundaryTest::Coboundary { witness: None }
            } else {
                CoboundaryTest::NotCoboundary
            });
        }
        let a = self.differential_matrix(z.degree - 1);
        let b = sparse::to_dense(&z.coords, self.dim(z.degree));
        Ok(match a.solve(&b)? {
            Some(w) => CoboundaryTest::Coboundary {
                witness: Some(Cochain {
                    degree: z.degree - 1,
                    coords: sparse::from_dense(&w),
                }),
            },
            None => CoboundaryTest::NotCoboundary,
        })
    }

    fn ranks(&self) -> Vec<usize> {
        let f = self.field();
        (0..self.nmax)
            .into_par_iter()
            .map(|n| {
                let mut e = Echelon::new(f, self.dim(n + 1));
                for col in &self.differentials[n] {
                    e.insert(col.iter().copied());
                }
                e.rank()
            })
            .collect()
    }

    /// `dim H^n` for `n < nmax`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.nmax)
            .map(|n| self.dim(n) - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
            .collect()
    }

    /// Nonzero `dim H^n_d` for `n < nmax`, keyed by `(n, internal degree d)`.
    pub fn graded_cohomology_dims(&self) -> Result<BTreeMap<(usize, i64), usize>> {
        let internal = self
            .internal
            .as_ref()
            .ok_or_else(|| Error::input("complex carries no internal grading"))?;
        let f = self.field();
        // rank of ∂_n restricted to each internal degree
        let ranks: Vec<BTreeMap<i64, usize>> = (0..self.nmax)
            .into_par_iter()
            .map(|n| {
                let mut groups: BTreeMap<i64, Echelon> = BTreeMap::new();
                for (c, col) in self.differentials[n].iter().enumerate() {
                    groups
                        .entry(internal[n][c])
                        .or_insert_with(|| Echelon::new(f, self.dim(n + 1)))
                        .insert(col.iter().copied());
                }
                groups.into_iter().map(|(d, e)| (d, e.rank())).collect()
            })
            .collect();
        let mut out = BTreeMap::new();
        for n in 0..self.nmax {
            let mut sizes: BTreeMap<i64, usize> = BTreeMap::new();
            for &d in &internal[n] {
                *sizes.entry(d).or_insert(0) += 1;
            }
            for (d, size) in sizes {
                let r_out = ranks[n].get(&d).copied().unwrap_or(0);
                let r_in = if n > 0 {
                    ranks[n - 1].get(&d).copied().unwrap_or(0)
                } else {
                    0
                };
                let dim = size - r_out - r_in;
                if dim > 0 {
                    out.insert((n, d), dim);
                }
            }
        }
        Ok(out)
    }
}

/// Sum of the algebra degrees of the generators dual to the monomial's factors.
fn monomial_weight(g: &LieSuperAlgebra, z: &[i64], m: &Monomial) -> i64 {
    let even = g.even_indices();
    let odd = g.odd_indices();
    m.generators()
        .into_iter()
        .map(|gen| match gen {
            Generator::Xi(i) => z[even[i]],
            Generator::Eta(u) => z[odd[u]],
        })
        .sum()
}

/// Predicted `dim C^n(g, M, N)`.
pub fn predicted_dim(g: &LieSuperAlgebra, coefficient_dim: usize, n: usize) -> u64 {
    let (d0, d1) = g.dims();
    algebra_degree_dim(d0, d1, n).saturating_mul(coefficient_dim as u64)
}

/// Graded complex for `Ext_{g̃}(M̃, Ñ)`: the dual of a degree-`d` generator
/// has internal degree `-d`, and a map `M̃_j → Ñ_{j+d}` has degree `d`.
pub fn build_graded(
    m: &GradedModule,
    n: &GradedModule,
    nmax: usize,
    budget: &Budget,
) -> Result<CochainComplex> {
    let h = hom(&m.module, &n.module)?;
    let degrees = h
        .pairs
        .iter()
        .map(|&(i, j)| n.degrees[i] - m.degrees[j])
        .collect();
    let mut c = CochainComplex::with_coefficients(&h.module, nmax, Some(degrees), budget)?;
    c.hom = Some(h);
    Ok(c)
}
