//! Finite-dimensional Lie superalgebras given by structure constants.
//!
//! Brackets are stored only for basis pairs `(i, j)` with `i <= j`; the
//! remaining ones follow from super skew-symmetry
//! `[b_i, b_j] = -(-1)^{|i||j|} [b_j, b_i]`.
//!
//! Frobenius twists are the identity on coordinates here: every point and
//! polynomial is F_p-rational, so twisting only matters for scheme-level
//! bookkeeping that this crate does not do.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::superlinalg::{sparse, PrimeField, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Result<Self> {
        match bit {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            other => Err(Error::input(format!("parity must be 0 or 1, got {other}"))),
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn plus(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, parity: Parity) -> Self {
        Self {
            name: name.into(),
            parity,
        }
    }
}

/// A Lie superalgebra over F_p with a homogeneous basis.
#[derive(Clone)]
pub struct LieSuperAlgebra {
    field: PrimeField,
    basis: Vec<BasisElement>,
    constants: BTreeMap<(usize, usize), SparseVec>,
    zdegrees: Option<Vec<i64>>,
    /// Inconsistent pairs seen at construction (both orders given, disagreeing).
    skew_conflicts: Vec<(usize, usize)>,
    table: Vec<SparseVec>,
    even: Vec<usize>,
    odd: Vec<usize>,
}

impl PartialEq for LieSuperAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.basis == other.basis
            && self.constants == other.constants
            && self.zdegrees == other.zdegrees
            && self.skew_conflicts == other.skew_conflicts
    }
}

impl Eq for LieSuperAlgebra {}

impl fmt::Debug for LieSuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.debug_struct("LieSuperAlgebra")
            .field("field", &self.field)
            .field("dims", &(self.even.len(), self.odd.len()))
            .field("basis", &self.basis.iter().map(|b| &b.name).collect::<Vec<_>>())
            .finish()
    }
}

impl LieSuperAlgebra {
    /// Builds an algebra from bracket data `((i, j), [b_i, b_j])`.
    ///
    /// Pairs with `i > j` are converted through super skew-symmetry. If both
    /// orders are supplied and disagree, the pair is kept as `i <= j` and
    /// reported by [`validate_algebra`].
    pub fn new(
        field: PrimeField,
        basis: Vec<BasisElement>,
        brackets: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
        zdegrees: Option<Vec<i64>>,
    ) -> Result<Self> {
        let n = basis.len();
        if let Some(z) = &zdegrees {
            if z.len() != n {
                return Err(Error::input(format!(
                    "zdegrees has {} entries for a basis of size {n}",
                    z.len()
                )));
            }
        }
        let mut constants: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        let mut swapped: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= n || j >= n {
                return Err(Error::input(format!(
                    "bracket index ({i}, {j}) out of range for a basis of size {n}"
                )));
            }
            if let Some(&(k, _)) = v.iter().find(|e| e.0 >= n) {
                return Err(Error::input(format!(
                    "bracket ({i}, {j}) has a coefficient on basis index {k} (size {n})"
                )));
            }
            let v = sparse::collect(field, v.into_iter().map(|(k, a)| (k, a % field.p())));
            if i <= j {
                let slot = constants.entry((i, j)).or_default();
                *slot = sparse::axpy(field, slot, 1, &v);
            } else {
                let both_odd = basis[i].parity.is_odd() && basis[j].parity.is_odd();
                let c = if both_odd { field.neg(1) } else { 1 };
                let c = field.neg(c);
                let slot = swapped.entry((j, i)).or_default();
                *slot = sparse::axpy(field, slot, c, &v);
            }
        }
        let mut skew_conflicts = Vec::new();
        for (key, v) in swapped {
            match constants.get(&key) {
                Some(existing) if *existing != v => skew_conflicts.push(key),
                Some(_) => {}
                None => {
                    constants.insert(key, v);
                }
            }
        }
        constants.retain(|_, v| !v.is_empty());
        Ok(Self::assemble(field, basis, constants, zdegrees, skew_conflicts))
    }

    fn assemble(
        field: PrimeField,
        basis: Vec<BasisElement>,
        constants: BTreeMap<(usize, usize), SparseVec>,
        zdegrees: Option<Vec<i64>>,
        skew_conflicts: Vec<(usize, usize)>,
    ) -> Self {
        let n = basis.len();
        let mut table = vec![Vec::new(); n * n];
        for (&(i, j), v) in &constants {
            table[i * n + j] = v.clone();
            if i != j {
                let both_odd = basis[i].parity.is_odd() && basis[j].parity.is_odd();
                let c = field.neg(if both_odd { field.neg(1) } else { 1 });
                table[j * n + i] = sparse::scale(field, v, c);
            }
        }
        let even = (0..n).filter(|&i| !basis[i].parity.is_odd()).collect();
        let odd = (0..n).filter(|&i| basis[i].parity.is_odd()).collect();
        Self {
            field,
            basis,
            constants,
            zdegrees,
            skew_conflicts,
            table,
            even,
            odd,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(dim g_0, dim g_1)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Indices of even basis elements, in basis order.
    pub fn even_indices(&self) -> &[usize] {
        &self.even
    }

    /// Indices of odd basis elements, in basis order. Odd coordinates
    /// (points, polynomial variables) are indexed by position in this list.
    pub fn odd_indices(&self) -> &[usize] {
        &self.odd
    }

    pub fn zdegrees(&self) -> Option<&[i64]> {
        self.zdegrees.as_deref()
    }

    /// Stored structure constants, `i <= j` only.
    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.constants
    }

    /// `[b_i, b_j]` for any pair of basis indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// Bilinear extension of the structure constants to coordinate vectors.
    pub fn bracket(&self, u: &[u32], v: &[u32]) -> Result<Vec<u32>> {
        let n = self.dim();
        if u.len() != n || v.len() != n {
            return Err(Error::dims(format!(
                "bracket of vectors of length {} and {} in dimension {n}",
                u.len(),
                v.len()
            )));
        }
        let f = self.field;
        let mut out = vec![0; n];
        for (i, &a) in u.iter().enumerate().filter(|e| *e.1 != 0) {
            for (j, &b) in v.iter().enumerate().filter(|e| *e.1 != 0) {
                let ab = f.mul(a, b);
                for &(k, c) in self.basis_bracket(i, j) {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        Ok(out)
    }

    /// Embeds odd coordinates into full basis coordinates.
    pub fn odd_to_full(&self, x: &OddPoint) -> Vec<u32> {
        let mut out = vec![0; self.dim()];
        for (u, &a) in x.coords().iter().enumerate() {
            out[self.odd[u]] = a;
        }
        out
    }

    /// `[x, x]` for odd `x`, in even-basis coordinates.
    pub fn self_bracket(&self, x: &OddPoint) -> Result<Vec<u32>> {
        self.check_point(x)?;
        let f = self.field;
        let mut full = vec![0; self.dim()];
        for (u, &a) in x.coords().iter().enumerate().filter(|e| *e.1 != 0) {
            for (v, &b) in x.coords().iter().enumerate().filter(|e| *e.1 != 0) {
                let ab = f.mul(a, b);
                for &(k, c) in self.basis_bracket(self.odd[u], self.odd[v]) {
                    full[k] = f.add(full[k], f.mul(ab, c));
                }
            }
        }
        Ok(self.even.iter().map(|&k| full[k]).collect())
    }

    pub fn check_point(&self, x: &OddPoint) -> Result<()> {
        if x.len() != self.odd.len() {
            return Err(Error::dims(format!(
                "odd point has {} coordinates but the odd part has dimension {}",
                x.len(),
                self.odd.len()
            )));
        }
        Ok(())
    }

    /// Whether `self` is `gl(m|n)` as produced by [`make_gl`]; returns `(m, n)`.
    pub fn gl_shape(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        let size = (0..=d).find(|s| s * s == d)?;
        // gl(m|0) and gl(0|m) coincide as algebras; the even reading wins.
        (0..=size).rev().find_map(|m| {
            let gl = make_gl(m, size - m, self.p() as u64).ok()?;
            (gl.basis == self.basis && gl.constants == self.constants).then_some((m, size - m))
        })
    }
}

/// A point of the odd part `g_1`, in coordinates of the odd basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPoint(Vec<u32>);

impl OddPoint {
    pub fn new(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn from_signed(field: PrimeField, coords: &[i64]) -> Self {
        Self(coords.iter().map(|&a| field.reduce(a)).collect())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn scale(&self, field: PrimeField, c: u32) -> Self {
        Self(self.0.iter().map(|&a| field.mul(a, c)).collect())
    }
}

/// A single failed axiom, with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AlgebraViolation {
    /// `[b_i, b_j]` and `[b_j, b_i]` are not related by super skew-symmetry.
    SkewSymmetry { i: usize, j: usize },
    /// `[b_i, b_j]` has a component `b_k` of the wrong parity.
    Parity { i: usize, j: usize, k: usize },
    /// Super Jacobi fails on `(b_i, b_j, b_k)`.
    Jacobi { i: usize, j: usize, k: usize },
    /// In characteristic 3, the coefficient of `y_u y_v y_w` in `[y,[y,y]]`
    /// is nonzero (indices are odd-coordinate positions).
    CubicIdentity { u: usize, v: usize, w: usize },
    /// `[b_i, b_j]` has a component `b_k` of the wrong Z-degree.
    Grading { i: usize, j: usize, k: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Self::SkewSymmetry { i, j } => write!(f, "skew-symmetry fails on ({i}, {j})"),
            Self::Parity { i, j, k } => write!(f, "[b{i}, b{j}] has a b{k} component of wrong parity"),
            Self::Jacobi { i, j, k } => write!(f, "super Jacobi fails on ({i}, {j}, {k})"),
            Self::CubicIdentity { u, v, w } => {
                write!(f, "[y,[y,y]] has nonzero coefficient on y{u} y{v} y{w}")
            }
            Self::Grading { i, j, k } => write!(f, "[b{i}, b{j}] has a b{k} component of wrong degree"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every axiom and lists each violation with its witnessing indices.
pub fn validate_algebra(g: &LieSuperAlgebra) -> ValidationReport<AlgebraViolation> {
    let f = g.field;
    let n = g.dim();
    let mut violations = Vec::new();

    for &(i, j) in &g.skew_conflicts {
        violations.push(AlgebraViolation::SkewSymmetry { i, j });
    }
    for &i in &g.even {
        if !g.basis_bracket(i, i).is_empty() {
            violations.push(AlgebraViolation::SkewSymmetry { i, j: i });
        }
    }

    for (&(i, j), v) in &g.constants {
        let want = g.parity(i).plus(g.parity(j));
        for &(k, _) in v {
            if g.parity(k) != want {
                violations.push(AlgebraViolation::Parity { i, j, k });
            }
            if let Some(z) = &g.zdegrees {
                if z[k] != z[i] + z[j] {
                    violations.push(AlgebraViolation::Grading { i, j, k });
                }
            }
        }
    }

    // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
    let apply = |a: usize, v: &SparseVec, left: bool| -> SparseVec {
        let terms = v.iter().flat_map(|&(k, c)| {
            let br = if left { g.basis_bracket(a, k) } else { g.basis_bracket(k, a) };
            br.iter().map(move |&(l, d)| (l, f.mul(c, d)))
        });
        sparse::collect(f, terms.collect::<Vec<_>>())
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = apply(a, g.basis_bracket(b, c), true);
                let t1 = apply(c, g.basis_bracket(a, b), false);
                let t2 = apply(b, g.basis_bracket(a, c), true);
                let sign = f.sign(g.parity(a).is_odd() && g.parity(b).is_odd());
                let rhs = sparse::axpy(f, &t1, sign, &t2);
                if lhs != rhs {
                    violations.push(AlgebraViolation::Jacobi { i: a, j: b, k: c });
                }
            }
        }
    }

    if f.p() == 3 {
        for (u, v, w) in cubic_violations(g) {
            violations.push(AlgebraViolation::CubicIdentity { u, v, w });
        }
    }
    violations.sort();
    violations.dedup();
    ValidationReport { violations }
}

/// Monomials `y_u y_v y_w` (`u <= v <= w`) whose coefficient in the cubic
/// map `y -> [y,[y,y]]` is nonzero, computed by full symbolic expansion.
fn cubic_violations(g: &LieSuperAlgebra) -> Vec<(usize, usize, usize)> {
    let f = g.field;
    let odd = &g.odd;
    let d = odd.len();
    let mut coeffs: BTreeMap<(usize, usize, usize), Vec<u32>> = BTreeMap::new();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let inner = g.basis_bracket(odd[b], odd[c]);
                if inner.is_empty() {
                    continue;
                }
                let mut key = [a, b, c];
                key.sort_unstable();
                let slot = coeffs
                    .entry((key[0], key[1], key[2]))
                    .or_insert_with(|| vec![0; g.dim()]);
                for &(k, x) in inner {
                    for &(l, y) in g.basis_bracket(odd[a], k) {
                        slot[l] = f.add(slot[l], f.mul(x, y));
                    }
                }
            }
        }
    }
    coeffs
        .into_iter()
        .filter(|(_, v)| v.iter().any(|&a| a != 0))
        .map(|(k, _)| k)
        .collect()
}

fn unit_name(i: usize, j: usize, size: usize) -> String {
    if size <= 9 {
        format!("E{i}{j}")
    } else {
        format!("E{i}_{j}")
    }
}

/// Matrix units `(i, j)` (0-based) in the basis order used by [`make_gl`].
pub(crate) fn gl_units(m: usize, n: usize) -> Vec<(usize, usize)> {
    let size = m + n;
    let odd = |i: usize, j: usize| (i < m) != (j < m);
    let mut units = Vec::with_capacity(size * size);
    for want_odd in [false, true] {
        for i in 0..size {
            for j in 0..size {
                if odd(i, j) == want_odd {
                    units.push((i, j));
                }
            }
        }
    }
    units
}

/// `gl(m|n)` with matrix-unit basis `E_ij` (1-based names). Even units come
/// first, then odd units, each group in row-major order. A unit is odd when
/// exactly one of its indices exceeds `m`.
pub fn make_gl(m: usize, n: usize, p: u64) -> Result<LieSuperAlgebra> {
    let field = PrimeField::new(p)?;
    let size = m + n;
    if size == 0 {
        return Err(Error::input("gl(m|n) needs m + n >= 1"));
    }
    let unit_parity = |i: usize, j: usize| {
        if (i < m) == (j < m) {
            Parity::Even
        } else {
            Parity::Odd
        }
    };
    let units = gl_units(m, n);
    let mut index = vec![0; size * size];
    for (k, &(i, j)) in units.iter().enumerate() {
        index[i * size + j] = k;
    }
    let basis = units
        .iter()
        .map(|&(i, j)| BasisElement::new(unit_name(i + 1, j + 1, size), unit_parity(i, j)))
        .collect();
    let mut brackets = Vec::new();
    for a in 0..units.len() {
        for b in a..units.len() {
            let ((i, j), (k, l)) = (units[a], units[b]);
            let both_odd = unit_parity(i, j).is_odd() && unit_parity(k, l).is_odd();
            let mut v = Vec::new();
            if j == k {
                v.push((index[i * size + l], 1));
            }
            if l == i {
                v.push((index[k * size + j], if both_odd { 1 } else { field.neg(1) }));
            }
            let v = sparse::collect(field, v);
            if !v.is_empty() {
                brackets.push(((a, b), v));
            }
        }
    }
    LieSuperAlgebra::new(field, basis, brackets, None)
}

/// The algebra with `d0` even and `d1` odd basis vectors and zero bracket.
pub fn abelian(d0: usize, d1: usize, p: u64) -> Result<LieSuperAlgebra> {
    let field = PrimeField::new(p)?;
    let basis = (0..d0)
        .map(|i| BasisElement::new(format!("x{}", i + 1), Parity::Even))
        .chain((0..d1).map(|i| BasisElement::new(format!("y{}", i + 1), Parity::Odd)))
        .collect();
    LieSuperAlgebra::new(field, basis, Vec::new(), None)
}

/// The two-dimensional algebra with central even `z`, odd `y`, and `[y,y] = z`.
pub fn clifford_pair(p: u64) -> Result<LieSuperAlgebra> {
    let field = PrimeField::new(p)?;
    let basis = vec![
        BasisElement::new("z", Parity::Even),
        BasisElement::new("y", Parity::Odd),
    ];
    LieSuperAlgebra::new(field, basis, [((1, 1), vec![(0, 1)])], None)
}

/// Associated graded algebra of the Clifford filtration `F^1 = g_1 ⊆ F^2 = g`.
///
/// Same basis; odd elements get degree 1 and even elements degree 2. Only
/// odd-odd brackets survive, and the even part becomes central.
pub fn clifford_assoc_graded(g: &LieSuperAlgebra) -> LieSuperAlgebra {
    let constants = g
        .constants
        .iter()
        .filter(|(&(i, j), _)| g.parity(i).is_odd() && g.parity(j).is_odd())
        .map(|(&k, v)| (k, v.clone()))
        .collect();
    let zdegrees = g
        .basis
        .iter()
        .map(|b| if b.parity.is_odd() { 1 } else { 2 })
        .collect();
    LieSuperAlgebra::assemble(
        g.field,
        g.basis.clone(),
        constants,
        Some(zdegrees),
        Vec::new(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl11() -> LieSuperAlgebra {
        make_gl(1, 1, 3).unwrap()
    }

    fn e(g: &LieSuperAlgebra, name: &str) -> Vec<u32> {
        let mut v = vec![0; g.dim()];
        v[g.index_of(name).unwrap()] = 1;
        v
    }

    #[test]
    fn gl11_layout_and_brackets() {
        let g = gl11();
        assert_eq!(g.dims(), (2, 2));
        let names: Vec<_> = g.basis().iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names, ["E11", "E22", "E12", "E21"]);
        let e12 = e(&g, "E12");
        assert_eq!(g.bracket(&e12, &e12).unwrap(), vec![0; 4]);
        assert_eq!(g.bracket(&e12, &e(&g, "E21")).unwrap(), vec![1, 1, 0, 0]);
        assert_eq!(g.bracket(&e(&g, "E11"), &e12).unwrap(), e12);
        let e11 = e(&g, "E11");
        assert_eq!(g.bracket(&e11, &e11).unwrap(), vec![0; 4]);
        assert!(validate_algebra(&g).is_valid());
        assert_eq!(g.gl_shape(), Some((1, 1)));
    }

    #[test]
    fn gl_two_zero_is_ordinary() {
        let g = make_gl(2, 0, 3).unwrap();
        assert_eq!(g.dims(), (4, 0));
        assert!(validate_algebra(&g).is_valid());
    }

    #[test]
    fn make_gl_rejects_bad_input() {
        assert_eq!(make_gl(1, 1, 2).unwrap_err(), Error::InvalidPrime(2));
        assert!(make_gl(0, 0, 3).is_err());
    }

    #[test]
    fn self_bracket_examples() {
        let g = gl11();
        let f = g.field();
        for a in 0..3 {
            for b in 0..3 {
                let x = OddPoint::new(vec![a, b]);
                let ab2 = f.mul(2, f.mul(a, b));
                assert_eq!(g.self_bracket(&x).unwrap(), vec![ab2, ab2]);
            }
        }
        assert!(g.self_bracket(&OddPoint::new(vec![1])).is_err());
    }

    #[test]
    fn parity_violation_reported() {
        let f = PrimeField::new(3).unwrap();
        let basis = vec![
            BasisElement::new("y1", Parity::Odd),
            BasisElement::new("y2", Parity::Odd),
        ];
        let g = LieSuperAlgebra::new(f, basis, [((0, 1), vec![(0, 1)])], None).unwrap();
        let report = validate_algebra(&g);
        assert!(report
            .violations
            .contains(&AlgebraViolation::Parity { i: 0, j: 1, k: 0 }));
    }

    #[test]
    fn out_of_range_bracket_is_input_error() {
        let f = PrimeField::new(3).unwrap();
        let basis = vec![BasisElement::new("x", Parity::Even)];
        assert!(LieSuperAlgebra::new(f, basis.clone(), [((0, 1), vec![])], None).is_err());
        assert!(LieSuperAlgebra::new(f, basis, [((0, 0), vec![(3, 1)])], None).is_err());
    }

    #[test]
    fn skew_conflict_and_even_diagonal() {
        let f = PrimeField::new(5).unwrap();
        let basis = vec![
            BasisElement::new("a", Parity::Even),
            BasisElement::new("b", Parity::Even),
        ];
        // [a,b] = a and [b,a] = a contradict skew-symmetry; [a,a] = b is illegal.
        let g = LieSuperAlgebra::new(
            f,
            basis,
            [((0, 1), vec![(0, 1)]), ((1, 0), vec![(0, 1)]), ((0, 0), vec![(1, 1)])],
            None,
        )
        .unwrap();
        let v = validate_algebra(&g).violations;
        assert!(v.contains(&AlgebraViolation::SkewSymmetry { i: 0, j: 1 }));
        assert!(v.contains(&AlgebraViolation::SkewSymmetry { i: 0, j: 0 }));
    }

    #[test]
    fn jacobi_violation_reported() {
        // even x, odd y1, y2 with [x,y1]=y1 but [y1,y2] = x and [x,y2]=0:
        // [x,[y1,y2]] = 0 while [[x,y1],y2] + [y1,[x,y2]] = x.
        let f = PrimeField::new(5).unwrap();
        let basis = vec![
            BasisElement::new("x", Parity::Even),
            BasisElement::new("y1", Parity::Odd),
            BasisElement::new("y2", Parity::Odd),
        ];
        let g = LieSuperAlgebra::new(
            f,
            basis,
            [((0, 1), vec![(1, 1)]), ((1, 2), vec![(0, 1)])],
            None,
        )
        .unwrap();
        let v = validate_algebra(&g).violations;
        assert!(v.iter().any(|x| matches!(x, AlgebraViolation::Jacobi { .. })));
    }

    #[test]
    fn cubic_identity_in_characteristic_three() {
        // Odd y with [y,y] = z (even) and [z,y] = y: Jacobi holds vacuously
        // for the triple (y,y,y) when p = 3 but [y,[y,y]] = -y != 0.
        let f = PrimeField::new(3).unwrap();
        let basis = vec![
            BasisElement::new("z", Parity::Even),
            BasisElement::new("y", Parity::Odd),
        ];
        let g = LieSuperAlgebra::new(f, basis, [((1, 1), vec![(0, 1)]), ((0, 1), vec![(1, 1)])], None)
            .unwrap();
        let v = validate_algebra(&g).violations;
        assert!(v.contains(&AlgebraViolation::CubicIdentity { u: 0, v: 0, w: 0 }));
    }

    #[test]
    fn associated_graded_examples() {
        let g = gl11();
        let t = clifford_assoc_graded(&g);
        assert!(validate_algebra(&t).is_valid());
        assert_eq!(t.zdegrees(), Some(&[2, 2, 1, 1][..]));
        assert_eq!(t.bracket(&e(&t, "E12"), &e(&t, "E21")).unwrap(), vec![1, 1, 0, 0]);
        for i in 0..4 {
            let mut x = vec![0; 4];
            x[i] = 1;
            assert_eq!(t.bracket(&e(&t, "E11"), &x).unwrap(), vec![0; 4]);
        }
        assert_eq!(clifford_assoc_graded(&t), t);

        let c = clifford_pair(3).unwrap();
        let ct = clifford_assoc_graded(&c);
        assert_eq!(ct.structure_constants(), c.structure_constants());

        let a = abelian(1, 2, 5).unwrap();
        assert!(clifford_assoc_graded(&a).structure_constants().is_empty());
    }

    #[test]
    fn constructors_validate() {
        for p in [3, 5, 7] {
            for m in 0..=3 {
                for n in 0..=3 {
                    if m + n == 0 {
                        continue;
                    }
                    let g = make_gl(m, n, p).unwrap();
                    assert!(validate_algebra(&g).is_valid(), "gl({m}|{n}) p={p}");
                    let t = clifford_assoc_graded(&g);
                    assert!(validate_algebra(&t).is_valid(), "gr gl({m}|{n}) p={p}");
                    for (i, b) in t.basis().iter().enumerate() {
                        assert_eq!(t.zdegrees().unwrap()[i].rem_euclid(2) as u8, b.parity.bit());
                    }
                }
            }
        }
    }
}
