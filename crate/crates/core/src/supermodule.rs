//! Finite-dimensional supermodules given by action matrices.
//!
//! Module bases are ordered even-then-odd: a module with dimensions
//! `(d0|d1)` has even basis vectors `0..d0` and odd ones `d0..d0+d1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liesuper::{clifford_assoc_graded, gl_units, LieSuperAlgebra, OddPoint, Parity};
use crate::superlinalg::{sparse, Echelon, MatrixFp, PrimeField};

#[derive(Clone, PartialEq, Eq)]
pub struct SuperModule {
    algebra: Arc<LieSuperAlgebra>,
    dims: (usize, usize),
    action: Vec<MatrixFp>,
}

impl fmt::Debug for SuperModule {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.debug_struct("SuperModule")
            .field("dims", &self.dims)
            .field("action", &self.action)
            .finish()
    }
}

impl SuperModule {
    /// One action matrix per algebra basis element, in basis order. The
    /// module axioms are not checked here; see [`validate_module`].
    pub fn new(
        algebra: Arc<LieSuperAlgebra>,
        dims: (usize, usize),
        action: Vec<MatrixFp>,
    ) -> Result<Self> {
        let d = dims.0 + dims.1;
        if action.len() != algebra.dim() {
            return Err(Error::dims(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        for (a, m) in action.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(Error::dims(format!(
                    "action of {} is {}x{}, expected {d}x{d}",
                    algebra.basis()[a].name,
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::input("action matrix over a different field"));
            }
        }
        Ok(Self {
            algebra,
            dims,
            action,
        })
    }

    /// The trivial module `k`, even and one-dimensional.
    pub fn trivial(algebra: Arc<LieSuperAlgebra>) -> Self {
        let action = vec![MatrixFp::zeros(algebra.field(), 1, 1); algebra.dim()];
        Self {
            algebra,
            dims: (1, 0),
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<LieSuperAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.0 + self.dims.1
    }

    pub fn parity(&self, i: usize) -> Parity {
        if i < self.dims.0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn parities(&self) -> Vec<Parity> {
        (0..self.dim()).map(|i| self.parity(i)).collect()
    }

    pub fn action(&self, a: usize) -> &MatrixFp {
        &self.action[a]
    }

    pub fn actions(&self) -> &[MatrixFp] {
        &self.action
    }

    /// Action of an arbitrary element given in basis coordinates.
    pub fn act_by(&self, coords: &[u32]) -> Result<MatrixFp> {
        if coords.len() != self.algebra.dim() {
            return Err(Error::dims("element coordinates do not match the algebra"));
        }
        let f = self.field();
        let mut out = MatrixFp::zeros(f, self.dim(), self.dim());
        for (a, &c) in coords.iter().enumerate() {
            if c != 0 {
                out = out.lin_comb(1, &self.action[a], c)?;
            }
        }
        Ok(out)
    }

    fn same_algebra(&self, other: &SuperModule) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::input("modules over different algebras"))
        }
    }

    /// Whether a vector is supported entirely in the even or the odd part.
    pub fn homogeneous_parity(&self, v: &[u32]) -> Option<Parity> {
        let even = v[..self.dims.0].iter().any(|&a| a != 0);
        let odd = v[self.dims.0..].iter().any(|&a| a != 0);
        match (even, odd) {
            (true, true) => None,
            (false, true) => Some(Parity::Odd),
            _ => Some(Parity::Even),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModuleViolation {
    /// The action of basis element `a` does not respect the even/odd blocks.
    Parity { a: usize },
    /// `rho([b_a, b_b]) != rho(b_a) rho(b_b) - (-1)^{|a||b|} rho(b_b) rho(b_a)`.
    Bracket { a: usize, b: usize },
    /// The action of `a` does not shift the module grading by the degree of `a`.
    Degree { a: usize },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Self::Parity { a } => write!(f, "action of b{a} breaks the parity blocks"),
            Self::Bracket { a, b } => write!(f, "bracket compatibility fails on (b{a}, b{b})"),
            Self::Degree { a } => write!(f, "action of b{a} does not shift degrees correctly"),
        }
    }
}

pub type ModuleReport = crate::liesuper::ValidationReport<ModuleViolation>;

/// Checks the parity blocks and the bracket identity on every basis pair.
pub fn validate_module(m: &SuperModule) -> ModuleReport {
    let g = m.algebra.as_ref();
    let f = m.field();
    let mut violations = Vec::new();
    for a in 0..g.dim() {
        let pa = g.parity(a);
        let rho = &m.action[a];
        let broken = (0..m.dim()).any(|r| {
            rho.row(r)
                .iter()
                .any(|&(c, _)| m.parity(r) != m.parity(c).plus(pa))
        });
        if broken {
            violations.push(ModuleViolation::Parity { a });
        }
    }
    for a in 0..g.dim() {
        for b in a..g.dim() {
            let sign = f.sign(g.parity(a).is_odd() && g.parity(b).is_odd());
            let ab = m.action[a].mul(&m.action[b]).expect("square");
            let ba = m.action[b].mul(&m.action[a]).expect("square");
            let lhs = ab.lin_comb(1, &ba, f.neg(sign)).expect("square");
            let mut rhs = MatrixFp::zeros(f, m.dim(), m.dim());
            for &(k, c) in g.basis_bracket(a, b) {
                rhs = rhs.lin_comb(1, &m.action[k], c).expect("square");
            }
            if lhs != rhs {
                violations.push(ModuleViolation::Bracket { a, b });
            }
        }
    }
    crate::liesuper::ValidationReport { violations }
}

/// The natural representation `k^{m|n}` of `gl(m|n)`.
pub fn natural_module(g: &Arc<LieSuperAlgebra>) -> Result<SuperModule> {
    let (m, n) = g
        .gl_shape()
        .ok_or_else(|| Error::input("natural module requires an algebra of the form gl(m|n)"))?;
    let size = m + n;
    let f = g.field();
    let action = gl_units(m, n)
        .into_iter()
        .map(|(i, j)| MatrixFp::from_triplets(f, size, size, [(i, j, 1)]))
        .collect::<Result<Vec<_>>>()?;
    SuperModule::new(g.clone(), (m, n), action)
}

/// Pairs `(i, j)` ordered even-then-odd by total parity, lexicographic within.
fn product_basis(left: &[Parity], right: &[Parity]) -> (Vec<(usize, usize)>, (usize, usize)) {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, pi) in left.iter().enumerate() {
        for (j, pj) in right.iter().enumerate() {
            if pi.plus(*pj).is_odd() {
                odd.push((i, j));
            } else {
                even.push((i, j));
            }
        }
    }
    let dims = (even.len(), odd.len());
    even.extend(odd);
    (even, dims)
}

/// A module whose basis is indexed by pairs `(i, j)` of factor basis vectors.
#[derive(Clone, Debug)]
pub struct ProductModule {
    pub module: SuperModule,
    /// Position in the product basis → `(left index, right index)`.
    pub pairs: Vec<(usize, usize)>,
    right_dim: usize,
    index: Vec<usize>,
}

impl ProductModule {
    fn new(module: SuperModule, pairs: Vec<(usize, usize)>, left_dim: usize, right_dim: usize) -> Self {
        let mut index = vec![0; left_dim * right_dim];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            index[i * right_dim + j] = k;
        }
        Self {
            module,
            pairs,
            right_dim,
            index,
        }
    }

    pub fn index_of(&self, i: usize, j: usize) -> usize {
        self.index[i * self.right_dim + j]
    }

    /// For a Hom module `N ⊗ M*`: coordinates of the linear map `phi: M -> N`
    /// given as a `dim N × dim M` matrix.
    pub fn vector_from_matrix(&self, phi: &MatrixFp) -> Result<Vec<u32>> {
        let left = self.index.len() / self.right_dim.max(1);
        if phi.rows() != left || phi.cols() != self.right_dim {
            return Err(Error::dims("map does not match the Hom module"));
        }
        let mut v = vec![0; self.module.dim()];
        for r in 0..phi.rows() {
            for (c, a) in phi.row(r) {
                v[self.index_of(r, c)] = a;
            }
        }
        Ok(v)
    }
}

/// `M ⊗ N` with `rho(b) = rho_M(b) ⊗ 1 + sigma_b ⊗ rho_N(b)`, where
/// `sigma_b` is the parity sign `(-1)^{|b||m|}` on `M`.
pub fn tensor(m: &SuperModule, n: &SuperModule) -> Result<ProductModule> {
    m.same_algebra(n)?;
    let g = m.algebra.clone();
    let f = m.field();
    let (pairs, dims) = product_basis(&m.parities(), &n.parities());
    let shell = ProductModule::new(
        SuperModule::trivial(g.clone()),
        pairs.clone(),
        m.dim(),
        n.dim(),
    );
    let d = pairs.len();
    let mut action = Vec::with_capacity(g.dim());
    for a in 0..g.dim() {
        let odd_b = g.parity(a).is_odd();
        let rm = m.action(a).columns();
        let rn = n.action(a).columns();
        let mut entries = Vec::new();
        for (col, &(i, j)) in pairs.iter().enumerate() {
            for &(k, c) in &rm[i] {
                entries.push((shell.index_of(k, j), col, c));
            }
            let sign = f.sign(odd_b && m.parity(i).is_odd());
            for &(l, c) in &rn[j] {
                entries.push((shell.index_of(i, l), col, f.mul(sign, c)));
            }
        }
        action.push(MatrixFp::from_triplets(f, d, d, entries)?);
    }
    let module = SuperModule::new(g, dims, action)?;
    Ok(ProductModule { module, ..shell })
}

/// Dual module with `rho*(b) f = -(-1)^{|b||f|} f ∘ rho(b)` on the dual basis.
pub fn dual(m: &SuperModule) -> SuperModule {
    let g = m.algebra.clone();
    let f = m.field();
    let action = (0..g.dim())
        .map(|a| {
            let odd_b = g.parity(a).is_odd();
            let t = m.action(a).transpose();
            let entries = (0..t.rows()).flat_map(|i| {
                t.row(i).into_iter().map(move |(j, c)| {
                    let sign = f.sign(odd_b && m.parity(j).is_odd());
                    (i, j, f.neg(f.mul(sign, c)))
                })
            });
            MatrixFp::from_triplets(f, m.dim(), m.dim(), entries.collect::<Vec<_>>())
                .expect("same shape")
        })
        .collect();
    SuperModule {
        algebra: g,
        dims: m.dims,
        action,
    }
}

/// `Hom_k(M, N)` realized as `N ⊗ M*`; the pair `(i, j)` is the map
/// `e_j ↦ f_i`. Its action is `phi ↦ rho_N(b) phi - (-1)^{|b||phi|} phi rho_M(b)`.
pub fn hom(m: &SuperModule, n: &SuperModule) -> Result<ProductModule> {
    m.same_algebra(n)?;
    tensor(n, &dual(m))
}

/// Direct sum, with the even parts first and the odd parts after.
pub fn direct_sum(m: &SuperModule, n: &SuperModule) -> Result<SuperModule> {
    m.same_algebra(n)?;
    let f = m.field();
    let (m0, m1) = m.dims;
    let (n0, n1) = n.dims;
    let d = m.dim() + n.dim();
    let place_m = |i: usize| if i < m0 { i } else { n0 + i };
    let place_n = |i: usize| if i < n0 { m0 + i } else { m0 + m1 + i };
    let action = (0..m.algebra.dim())
        .map(|a| {
            let mut entries = Vec::new();
            for r in 0..m.dim() {
                for (c, v) in m.action(a).row(r) {
                    entries.push((place_m(r), place_m(c), v));
                }
            }
            for r in 0..n.dim() {
                for (c, v) in n.action(a).row(r) {
                    entries.push((place_n(r), place_n(c), v));
                }
            }
            MatrixFp::from_triplets(f, d, d, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    SuperModule::new(m.algebra.clone(), (m0 + n0, m1 + n1), action)
}

/// `P^{-1} rho(b) P` for an even (block-diagonal) invertible change of basis `P`.
pub fn change_basis(m: &SuperModule, p: &MatrixFp) -> Result<SuperModule> {
    let d = m.dim();
    if p.rows() != d || p.cols() != d {
        return Err(Error::dims("change of basis has the wrong size"));
    }
    if (0..d).any(|r| p.row(r).iter().any(|&(c, _)| m.parity(r) != m.parity(c))) {
        return Err(Error::input("change of basis must preserve parity"));
    }
    let pinv = inverse(p).ok_or_else(|| Error::input("change of basis is singular"))?;
    let action = m
        .action
        .iter()
        .map(|a| pinv.mul(a)?.mul(p))
        .collect::<Result<Vec<_>>>()?;
    SuperModule::new(m.algebra.clone(), m.dims, action)
}

pub(crate) fn inverse(p: &MatrixFp) -> Option<MatrixFp> {
    let d = p.rows();
    if p.rank() != d {
        return None;
    }
    let mut cols = Vec::with_capacity(d);
    for k in 0..d {
        let mut e = vec![0; d];
        e[k] = 1;
        cols.push(sparse::from_dense(&p.solve(&e).ok()??));
    }
    MatrixFp::from_sparse_columns(p.field(), d, &cols).ok()
}

/// The action of `x = sum_u x_u y_u` on `M`. Requires `[x, x] = 0`, so that
/// the result squares to zero.
pub fn restrict_to_line(m: &SuperModule, x: &OddPoint) -> Result<MatrixFp> {
    let g = m.algebra.as_ref();
    let sb = g.self_bracket(x)?;
    if sb.iter().any(|&a| a != 0) {
        return Err(Error::Precondition(format!(
            "point {:?} is not in the odd nullcone: [x,x] = {:?}",
            x.coords(),
            sb
        )));
    }
    m.act_by(&g.odd_to_full(x))
}

/// Outcome of the freeness test over `Λ(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeTest {
    pub is_free: bool,
    /// Rank of `rho(x)`.
    pub rank: usize,
    /// When free: vectors `B` with `B ∪ rho(x)B` a basis of `M`.
    pub certificate: Option<Vec<Vec<u32>>>,
}

/// Whether `M` restricted to `Λ(x)` is free, by the rank criterion
/// `rank rho(x) = dim M / 2`. The zero point is free by convention.
pub fn free_test(m: &SuperModule, x: &OddPoint) -> Result<FreeTest> {
    let rho = restrict_to_line(m, x)?;
    let rank = rho.rank();
    if x.is_zero() {
        return Ok(FreeTest {
            is_free: true,
            rank,
            certificate: Some(Vec::new()),
        });
    }
    let d = m.dim();
    if d % 2 == 1 || rank * 2 != d {
        return Ok(FreeTest {
            is_free: false,
            rank,
            certificate: None,
        });
    }
    // Preimages: the standard basis vectors at the pivot columns of rho(x).
    let mut e = Echelon::new(m.field(), d);
    let mut certificate = Vec::with_capacity(rank);
    for (c, col) in rho.columns().into_iter().enumerate() {
        if e.insert(col) {
            let mut v = vec![0; d];
            v[c] = 1;
            certificate.push(v);
        }
    }
    Ok(FreeTest {
        is_free: true,
        rank,
        certificate: Some(certificate),
    })
}

/// Whether `[B | rho(x) B]` is invertible.
pub fn verify_certificate(m: &SuperModule, x: &OddPoint, b: &[Vec<u32>]) -> Result<bool> {
    let rho = restrict_to_line(m, x)?;
    let d = m.dim();
    if x.is_zero() {
        return Ok(b.is_empty());
    }
    if b.len() * 2 != d || b.iter().any(|v| v.len() != d) {
        return Ok(false);
    }
    let mut e = Echelon::new(m.field(), d);
    for v in b {
        e.insert(sparse::from_dense(v));
        e.insert(sparse::from_dense(&rho.mul_vec(v)?));
    }
    Ok(e.rank() == d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjDim {
    Zero,
    Infinite,
}

/// Projective dimension of `M` over the two-dimensional algebra `Λ(x)`.
pub fn lambda_projdim(m: &SuperModule, x: &OddPoint) -> Result<ProjDim> {
    if x.is_zero() {
        return Err(Error::input("projective dimension over Λ(0) = k is degenerate"));
    }
    Ok(if free_test(m, x)?.is_free {
        ProjDim::Zero
    } else {
        ProjDim::Infinite
    })
}

/// Standard filtration `F^0 ⊆ F^1 ⊆ ...` of a module generated by a set `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    /// `steps[i]` spans a complement of `F^{i-1}` in `F^i`; every vector is homogeneous.
    steps: Vec<Vec<Vec<u32>>>,
}

impl Filtration {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Complement of `F^{i-1}` in `F^i`.
    pub fn step(&self, i: usize) -> &[Vec<u32>] {
        &self.steps[i]
    }

    /// A basis of `F^i` (the layers stabilize at the last index).
    pub fn layer(&self, i: usize) -> Vec<Vec<u32>> {
        let top = i.min(self.steps.len().saturating_sub(1));
        self.steps[..=top].iter().flatten().cloned().collect()
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.steps
            .iter()
            .scan(0, |acc, s| {
                *acc += s.len();
                Some(*acc)
            })
            .collect()
    }
}

/// `F^i = F^{i-1} + g_1·F^{i-1} + g_0·F^{i-2}` with `F^0 = span(S)` and
/// `F^{-1} = 0`: odd elements have weight 1 and even elements weight 2.
pub fn standard_filtration(m: &SuperModule, generators: &[Vec<u32>]) -> Result<Filtration> {
    let g = m.algebra.as_ref();
    let d = m.dim();
    let f = m.field();
    for (i, v) in generators.iter().enumerate() {
        if v.len() != d {
            return Err(Error::dims(format!(
                "generator {i} has length {} but the module has dimension {d}",
                v.len()
            )));
        }
        if m.homogeneous_parity(v).is_none() {
            return Err(Error::input(format!("generator {i} is not homogeneous")));
        }
    }
    let cols: Vec<Vec<sparse::SparseVec>> = m.action.iter().map(MatrixFp::columns).collect();
    let apply = |a: usize, v: &[u32]| -> Vec<u32> {
        let mut out = vec![0; d];
        for (c, &x) in v.iter().enumerate().filter(|e| *e.1 != 0) {
            for &(r, y) in &cols[a][c] {
                out[r] = f.add(out[r], f.mul(x, y));
            }
        }
        out
    };
    let mut echelon = Echelon::new(f, d);
    let mut steps: Vec<Vec<Vec<u32>>> = Vec::new();
    let add = |echelon: &mut Echelon, vs: Vec<Vec<u32>>| -> Vec<Vec<u32>> {
        let mut new = Vec::new();
        for v in vs {
            let rest = echelon.reduce(sparse::from_dense(&v));
            if !rest.is_empty() {
                let inv = f.inv(rest[0].1);
                let rest = sparse::scale(f, &rest, inv);
                new.push(sparse::to_dense(&rest, d));
                echelon.insert(rest);
            }
        }
        new
    };
    steps.push(add(&mut echelon, generators.to_vec()));
    let layer = |steps: &Vec<Vec<Vec<u32>>>, i: isize| -> Vec<Vec<u32>> {
        if i < 0 {
            Vec::new()
        } else {
            steps[..=i as usize].iter().flatten().cloned().collect()
        }
    };
    loop {
        let i = steps.len() as isize;
        let mut candidates = Vec::new();
        for v in layer(&steps, i - 1) {
            for &a in g.odd_indices() {
                candidates.push(apply(a, &v));
            }
        }
        for v in layer(&steps, i - 2) {
            for &a in g.even_indices() {
                candidates.push(apply(a, &v));
            }
        }
        let new = add(&mut echelon, candidates);
        // Two empty steps in a row mean F^i is closed under both g_1 and g_0.
        let stalled = new.is_empty() && steps.last().is_some_and(Vec::is_empty);
        steps.push(new);
        if stalled {
            break;
        }
    }
    while steps.len() > 1 && steps.last().is_some_and(Vec::is_empty) {
        steps.pop();
    }
    if echelon.rank() < d {
        let span: Vec<Vec<u32>> = steps.iter().flatten().cloned().collect();
        return Err(Error::input(format!(
            "generating set spans a proper submodule of dimension {} (of {d}) with basis {:?}",
            echelon.rank(),
            span
        )));
    }
    Ok(Filtration { steps })
}

/// A module over a Z-graded algebra with a degree for each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    pub module: SuperModule,
    pub degrees: Vec<i64>,
}

impl GradedModule {
    pub fn new(module: SuperModule, degrees: Vec<i64>) -> Result<Self> {
        if module.algebra().zdegrees().is_none() {
            return Err(Error::input("graded module over an ungraded algebra"));
        }
        if degrees.len() != module.dim() {
            return Err(Error::dims("one degree per basis vector is required"));
        }
        Ok(Self { module, degrees })
    }

    /// `k` in degree 0.
    pub fn trivial(algebra: Arc<LieSuperAlgebra>) -> Result<Self> {
        Self::new(SuperModule::trivial(algebra), vec![0])
    }

    /// Dimension of each homogeneous component, keyed by degree.
    pub fn component_dims(&self) -> std::collections::BTreeMap<i64, usize> {
        let mut out = std::collections::BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }
}

/// Module axioms plus degree compatibility `rho(b) M_j ⊆ M_{j + deg b}`.
pub fn validate_graded(m: &GradedModule) -> ModuleReport {
    let mut report = validate_module(&m.module);
    let z = m.module.algebra().zdegrees().expect("graded algebra");
    for (a, rho) in m.module.actions().iter().enumerate() {
        let bad = (0..rho.rows()).any(|r| {
            rho.row(r)
                .iter()
                .any(|&(c, _)| m.degrees[r] != m.degrees[c] + z[a])
        });
        if bad {
            report.violations.push(ModuleViolation::Degree { a });
        }
    }
    report
}

/// The associated graded module `gr M = ⊕ F^j / F^{j-1}` as a module over
/// the Clifford associated graded algebra `tilde`.
///
/// The basis is the filtration-adapted basis (even vectors first, then by
/// layer); `ρ̃(b)` keeps the components of `ρ(b)` that raise the layer by
/// exactly `deg b`.
pub fn assoc_graded_module(
    tilde: &Arc<LieSuperAlgebra>,
    m: &SuperModule,
    filtration: &Filtration,
) -> Result<GradedModule> {
    if **tilde != clifford_assoc_graded(m.algebra()) {
        return Err(Error::input(
            "target algebra is not the Clifford associated graded algebra of the module's algebra",
        ));
    }
    let d = m.dim();
    let f = m.field();
    let mut adapted: Vec<(Parity, usize, Vec<u32>)> = Vec::with_capacity(d);
    for (layer, step) in filtration.steps.iter().enumerate() {
        for v in step {
            let parity = m
                .homogeneous_parity(v)
                .ok_or_else(|| Error::Internal("inhomogeneous filtration vector".into()))?;
            adapted.push((parity, layer, v.clone()));
        }
    }
    if adapted.len() != d {
        return Err(Error::input("filtration does not exhaust the module"));
    }
    adapted.sort_by_key(|e| (e.0, e.1));
    let dims = (
        adapted.iter().filter(|e| e.0 == Parity::Even).count(),
        adapted.iter().filter(|e| e.0 == Parity::Odd).count(),
    );
    let q_cols: Vec<_> = adapted.iter().map(|e| sparse::from_dense(&e.2)).collect();
    let q = MatrixFp::from_sparse_columns(f, d, &q_cols)?;
    let qinv = inverse(&q).ok_or_else(|| Error::Internal("adapted basis is singular".into()))?;
    let degrees: Vec<i64> = adapted.iter().map(|e| e.1 as i64).collect();
    let z = tilde.zdegrees().expect("graded");
    let action = m
        .action
        .iter()
        .enumerate()
        .map(|(a, rho)| {
            let conj = qinv.mul(rho)?.mul(&q)?;
            let entries = (0..d).flat_map(|r| {
                conj.row(r)
                    .into_iter()
                    .filter(|&(c, _)| degrees[r] == degrees[c] + z[a])
                    .map(move |(c, v)| (r, c, v))
                    .collect::<Vec<_>>()
            });
            MatrixFp::from_triplets(f, d, d, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    GradedModule::new(SuperModule::new(tilde.clone(), dims, action)?, degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::make_gl;

    fn gl(m: usize, n: usize) -> Arc<LieSuperAlgebra> {
        Arc::new(make_gl(m, n, 3).unwrap())
    }

    fn unit(d: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    #[test]
    fn natural_and_trivial_are_valid() {
        for (m, n) in [(1, 1), (2, 2), (2, 0), (1, 2)] {
            let g = gl(m, n);
            let nat = natural_module(&g).unwrap();
            assert_eq!(nat.dims(), (m, n));
            assert!(validate_module(&nat).is_valid());
            assert!(validate_module(&SuperModule::trivial(g)).is_valid());
        }
        let g = gl(1, 1);
        let nat = natural_module(&g).unwrap();
        let e12 = g.index_of("E12").unwrap();
        assert_eq!(nat.action(e12).mul_vec(&[0, 1]).unwrap(), vec![1, 0]);
    }

    #[test]
    fn natural_module_needs_gl() {
        let c = Arc::new(crate::liesuper::clifford_pair(3).unwrap());
        assert!(natural_module(&c).is_err());
    }

    #[test]
    fn zeroed_action_is_reported() {
        let g = gl(1, 1);
        let nat = natural_module(&g).unwrap();
        let mut action = nat.actions().to_vec();
        let e21 = g.index_of("E21").unwrap();
        action[e21] = MatrixFp::zeros(g.field(), 2, 2);
        let broken = SuperModule::new(g.clone(), (1, 1), action).unwrap();
        let report = validate_module(&broken);
        let e12 = g.index_of("E12").unwrap();
        assert!(report
            .violations
            .contains(&ModuleViolation::Bracket { a: e12, b: e21 }));
    }

    #[test]
    fn constructions_are_valid() {
        let g = gl(1, 1);
        let nat = natural_module(&g).unwrap();
        let k = SuperModule::trivial(g.clone());
        let t = tensor(&nat, &nat).unwrap();
        assert_eq!(t.module.dims(), (2, 2));
        assert!(validate_module(&t.module).is_valid());
        assert!(validate_module(&dual(&nat)).is_valid());
        let h = hom(&nat, &nat).unwrap();
        assert!(validate_module(&h.module).is_valid());
        assert_eq!(tensor(&k, &nat).unwrap().module.actions(), nat.actions());
        let s = direct_sum(&nat, &k).unwrap();
        assert_eq!(s.dims(), (2, 1));
        assert!(validate_module(&s).is_valid());
    }

    #[test]
    fn double_dual_is_sign_conjugate() {
        let g = gl(1, 1);
        let nat = natural_module(&g).unwrap();
        let dd = dual(&dual(&nat));
        let f = g.field();
        let signs = MatrixFp::from_triplets(f, 2, 2, [(0, 0, 1), (1, 1, f.neg(1))]).unwrap();
        let conj = change_basis(&nat, &signs).unwrap();
        assert_eq!(dd.actions(), conj.actions());
    }

    #[test]
    fn hom_matches_direct_formula() {
        let g = gl(1, 2);
        let f = g.field();
        let nat = natural_module(&g).unwrap();
        let k = SuperModule::trivial(g.clone());
        let h = hom(&nat, &tensor(&nat, &nat).unwrap().module).unwrap();
        let n = tensor(&nat, &nat).unwrap().module;
        for a in 0..g.dim() {
            let pb = g.parity(a).is_odd();
            for (col, &(i, j)) in h.pairs.iter().enumerate() {
                let mut phi = vec![vec![0i64; nat.dim()]; n.dim()];
                phi[i][j] = 1;
                let phi = MatrixFp::from_rows(f, &phi).unwrap();
                let podd = n.parity(i).plus(nat.parity(j)).is_odd();
                let left = n.action(a).mul(&phi).unwrap();
                let right = phi.mul(nat.action(a)).unwrap();
                let want = left.lin_comb(1, &right, f.neg(f.sign(pb && podd))).unwrap();
                let got: Vec<u32> = (0..h.module.dim()).map(|r| h.module.action(a).get(r, col)).collect();
                assert_eq!(got, h.vector_from_matrix(&want).unwrap());
            }
        }
        assert_eq!(hom(&k, &k).unwrap().module.dims(), (1, 0));
    }

    #[test]
    fn restriction_and_freeness_gl11() {
        let g = gl(1, 1);
        let nat = natural_module(&g).unwrap();
        let x = OddPoint::new(vec![1, 0]);
        let rho = restrict_to_line(&nat, &x).unwrap();
        assert_eq!(rho.rank(), 1);
        assert!(rho.mul(&rho).unwrap().is_zero());
        let t = free_test(&nat, &x).unwrap();
        assert!(t.is_free);
        assert!(verify_certificate(&nat, &x, t.certificate.as_ref().unwrap()).unwrap());
        assert!(restrict_to_line(&nat, &OddPoint::zero(2)).unwrap().is_zero());
        let bad = restrict_to_line(&nat, &OddPoint::new(vec![1, 1]));
        assert!(matches!(bad, Err(Error::Precondition(_))));
        let k = SuperModule::trivial(g.clone());
        assert!(!free_test(&k, &x).unwrap().is_free);
        assert_eq!(lambda_projdim(&k, &x).unwrap(), ProjDim::Infinite);
        assert_eq!(lambda_projdim(&nat, &x).unwrap(), ProjDim::Zero);
        assert!(lambda_projdim(&nat, &OddPoint::zero(2)).is_err());
        let zero = free_test(&k, &OddPoint::zero(2)).unwrap();
        assert!(zero.is_free);
        assert_eq!(zero.certificate, Some(Vec::new()));
    }

    #[test]
    fn filtration_examples() {
        let g = gl(2, 2);
        let nat = natural_module(&g).unwrap();
        let s = vec![unit(4, 2), unit(4, 1)];
        let filt = standard_filtration(&nat, &s).unwrap();
        assert_eq!(filt.layer_dims(), vec![2, 4]);

        let full: Vec<_> = (0..4).map(|i| unit(4, i)).collect();
        assert_eq!(standard_filtration(&nat, &full).unwrap().layer_dims(), vec![4]);

        let k = SuperModule::trivial(g.clone());
        assert_eq!(standard_filtration(&k, &[vec![1]]).unwrap().layer_dims(), vec![1]);

        // e1 alone generates k^{2|2} for gl(2|2), but not for gl(2|0) ⊕ trivial odd part.
        let g20 = gl(2, 0);
        let nat20 = natural_module(&g20).unwrap();
        let sum = direct_sum(&nat20, &SuperModule::trivial(g20.clone())).unwrap();
        let err = standard_filtration(&sum, &[unit(3, 0)]).unwrap_err();
        assert!(matches!(err, Error::Input(msg) if msg.contains("proper submodule of dimension 2")));
        assert!(standard_filtration(&nat, &[vec![1, 0, 1, 0]]).is_err());
    }

    #[test]
    fn associated_graded_gl11() {
        let g = gl(1, 1);
        let tilde = Arc::new(clifford_assoc_graded(&g));
        let nat = natural_module(&g).unwrap();
        let filt = standard_filtration(&nat, &[unit(2, 1)]).unwrap();
        let gr = assoc_graded_module(&tilde, &nat, &filt).unwrap();
        assert!(validate_graded(&gr).is_valid());
        // even vector e1 sits in degree 1, odd e2 in degree 0
        assert_eq!(gr.degrees, vec![1, 0]);
        let e12 = g.index_of("E12").unwrap();
        assert_eq!(gr.module.action(e12).get(0, 1), 1);
        let x = OddPoint::new(vec![1, 0]);
        assert!(free_test(&gr.module, &x).unwrap().is_free);
    }

    #[test]
    fn associated_graded_gl22_proof_data() {
        let g = gl(2, 2);
        let tilde = Arc::new(clifford_assoc_graded(&g));
        let nat = natural_module(&g).unwrap();
        let filt = standard_filtration(&nat, &[unit(4, 2), unit(4, 1)]).unwrap();
        let gr = assoc_graded_module(&tilde, &nat, &filt).unwrap();
        assert!(validate_graded(&gr).is_valid());
        assert_eq!(gr.component_dims().into_iter().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
        // x_{1,1}: E13 and E42 (odd coordinates 0 and 7)
        let mut c = vec![0; 8];
        c[0] = 1;
        c[7] = 1;
        let x = OddPoint::new(c);
        assert!(free_test(&gr.module, &x).unwrap().is_free);
        let k = GradedModule::trivial(tilde.clone()).unwrap();
        assert!(validate_graded(&k).is_valid());
    }
}
