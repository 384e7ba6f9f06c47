//! Cochain complexes `C^n(g, M, N) = Λ(g_0^*) ⊗ S(g_1^*) ⊗ Hom_k(M, N)` in
//! bounded degree, Ext dimensions, cup products with `C(g, k)`, the
//! `p`-th power map on odd polynomials and the probes built on them.

mod complex;
mod monomial;
mod poly;

use std::sync::Arc;

pub use complex::{build_graded, predicted_dim, Cochain, CoboundaryTest, CochainComplex};
pub use monomial::{algebra_degree_dim, monomials, Generator, Monomial};
pub use poly::OddPolynomial;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::liesuper::{clifford_assoc_graded, LieSuperAlgebra};
use crate::superlinalg::{sparse, MatrixFp};
use crate::supermodule::{assoc_graded_module, standard_filtration, GradedModule, SuperModule};

/// The complex computing `Ext_g(M, N)` in degrees `< nmax`.
pub fn build_complex(
    m: &SuperModule,
    n: &SuperModule,
    nmax: usize,
    budget: &Budget,
) -> Result<CochainComplex> {
    if m.algebra() != n.algebra() {
        return Err(Error::input("modules are over different algebras"));
    }
    CochainComplex::build(m, n, nmax, budget)
}

/// `ω · c` for `ω ∈ C^i(g, k)` and `c ∈ C^j(g, V)`: `ω · (ω' ⊗ v) = ωω' ⊗ v`.
pub fn cup_multiply(
    trivial: &CochainComplex,
    omega: &Cochain,
    target: &CochainComplex,
    c: &Cochain,
) -> Result<Cochain> {
    if trivial.coefficients().dim() != 1 || trivial.algebra() != target.algebra() {
        return Err(Error::input(
            "the left factor must come from the trivial-coefficient complex of the same algebra",
        ));
    }
    let degree = omega.degree + c.degree;
    if degree > target.nmax() || omega.degree > trivial.nmax() {
        return Err(Error::input(format!(
            "product lands in degree {degree}, beyond the complex bound {}",
            target.nmax()
        )));
    }
    let f = target.field();
    let mut terms = Vec::with_capacity(omega.coords.len() * c.coords.len());
    for &(a, x) in &omega.coords {
        let (w, _) = trivial.basis_element(omega.degree, a);
        for &(b, y) in &c.coords {
            let (w2, v) = target.basis_element(c.degree, b);
            if let Some((neg, m)) = w.mul(w2) {
                let idx = target.index_of(&m, v).expect("basis is complete");
                terms.push((idx, f.mul(f.sign(neg), f.mul(x, y))));
            }
        }
    }
    Ok(Cochain {
        degree,
        coords: sparse::collect(f, terms),
    })
}

/// `φ(f)`: each odd coordinate `η_u` is replaced by `η_u^p`, giving a cochain
/// of degree `p·deg f` in the trivial-coefficient complex.
pub fn phi_embed(trivial: &CochainComplex, f: &OddPolynomial) -> Result<Cochain> {
    let g = trivial.algebra();
    let p = g.p() as u16;
    let (_, d1) = g.dims();
    if f.nvars() != d1 || f.field() != g.field() {
        return Err(Error::input("polynomial does not live on the odd part of this algebra"));
    }
    let degree = p as usize * f.degree();
    if degree > trivial.nmax() {
        return Err(Error::input(format!(
            "φ(f) has degree {degree}, beyond the complex bound {}",
            trivial.nmax()
        )));
    }
    let terms = f.terms().iter().map(|(e, &c)| {
        let mut m = Monomial::one(d1);
        for (slot, &k) in m.sym.iter_mut().zip(e) {
            *slot = k * p;
        }
        (trivial.index_of(&m, 0).expect("basis is complete"), c)
    });
    Ok(Cochain {
        degree,
        coords: sparse::collect(g.field(), terms.collect::<Vec<_>>()),
    })
}

/// The identity of `M` as a degree-0 cochain of the complex for `Ext_g(M, M)`.
pub fn identity_cochain(complex: &CochainComplex) -> Result<Cochain> {
    let hom = complex
        .hom_module()
        .ok_or_else(|| Error::input("complex was not built from a module pair"))?;
    let d = (hom.module.dim() as f64).sqrt() as usize;
    if d * d != hom.module.dim() {
        return Err(Error::input("complex is not Ext(M, M)"));
    }
    let v = hom.vector_from_matrix(&MatrixFp::identity(complex.field(), d))?;
    Ok(Cochain {
        degree: 0,
        coords: sparse::from_dense(&v),
    })
}

/// One step of [`annihilator_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiStep {
    pub power: usize,
    pub degree: usize,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorProbe {
    /// Smallest `ℓ` with `φ(f^ℓ) · id_M` a coboundary.
    pub first: Option<usize>,
    pub steps: Vec<PhiStep>,
}

/// Tests `φ(f^ℓ) · id_M = 0` in `Ext_g(M, M)` for `ℓ = 1, 2, ...` up to `lmax`,
/// stopping at the first vanishing class.
pub fn annihilator_probe(
    m: &SuperModule,
    f: &OddPolynomial,
    lmax: usize,
    budget: &Budget,
) -> Result<AnnihilatorProbe> {
    let g = m.algebra();
    let top = g.p() as usize * f.degree() * lmax;
    let nmax = top + 1;
    let hom_dim = (m.dim() * m.dim()) as u64;
    for n in 0..=nmax {
        budget.check_cochains(&format!("C^{n}"), predicted_dim(g, hom_dim as usize, n))?;
    }
    let trivial = CochainComplex::with_coefficients(&SuperModule::trivial(g.clone()), top, None, budget)?;
    let complex = build_complex(m, m, nmax, budget)?;
    let id = identity_cochain(&complex)?;
    let mut steps = Vec::new();
    for l in 1..=lmax {
        let phi = phi_embed(&trivial, &f.pow(l))?;
        let z = cup_multiply(&trivial, &phi, &complex, &id)?;
        let vanishes = complex.is_coboundary(&z)?.is_coboundary();
        steps.push(PhiStep {
            power: l,
            degree: z.degree,
            vanishes,
        });
        if vanishes {
            return Ok(AnnihilatorProbe {
                first: Some(l),
                steps,
            });
        }
    }
    Ok(AnnihilatorProbe { first: None, steps })
}

/// Nonzero graded Ext dimension `dim Ext^n_{g̃}(M̃, Ñ)_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GradedDim {
    pub n: usize,
    pub internal: i64,
    pub dim: usize,
}

/// Nonzero graded dimensions of `Ext_{g̃}(M̃, Ñ)` in degrees `< nmax`,
/// sorted by `(n, internal)`.
pub fn graded_ext_dims(
    m: &GradedModule,
    n: &GradedModule,
    nmax: usize,
    budget: &Budget,
) -> Result<Vec<GradedDim>> {
    let complex = build_graded(m, n, nmax, budget)?;
    Ok(complex
        .graded_cohomology_dims()?
        .into_iter()
        .map(|((n, internal), dim)| GradedDim { n, internal, dim })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceRow {
    pub n: usize,
    pub ext_dim: usize,
    /// `Σ_i dim E_1^{i, n-i}`, the total of graded Ext of the associated graded modules.
    pub e1_total: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceReport {
    pub rows: Vec<DominanceRow>,
    pub e1: Vec<GradedDim>,
}

impl DominanceReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Compares `dim Ext^n_g(M, N)` with the E_1 totals of the spectral sequence
/// of the standard filtrations generated by `s_m` and `s_n`.
pub fn e1_dominance_check(
    m: &SuperModule,
    n: &SuperModule,
    s_m: &[Vec<u32>],
    s_n: &[Vec<u32>],
    nmax: usize,
    budget: &Budget,
) -> Result<DominanceReport> {
    let g: &Arc<LieSuperAlgebra> = m.algebra();
    let tilde = Arc::new(clifford_assoc_graded(g));
    let gm = assoc_graded_module(&tilde, m, &standard_filtration(m, s_m)?)?;
    let gn = assoc_graded_module(&tilde, n, &standard_filtration(n, s_n)?)?;
    let e1 = graded_ext_dims(&gm, &gn, nmax, budget)?;
    let ext = build_complex(m, n, nmax, budget)?.cohomology_dims();
    let rows = ext
        .iter()
        .enumerate()
        .map(|(k, &ext_dim)| {
            let e1_total = e1.iter().filter(|d| d.n == k).map(|d| d.dim).sum();
            DominanceRow {
                n: k,
                ext_dim,
                e1_total,
                holds: ext_dim <= e1_total,
            }
        })
        .collect();
    Ok(DominanceReport { rows, e1 })
}
