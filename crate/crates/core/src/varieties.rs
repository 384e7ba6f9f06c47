//! Odd nullcones and rank varieties as F_p-rational point sets, orbit
//! representatives for `gl(m|n)`, and harnesses comparing rank varieties
//! with cohomology.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::cohomology::{
    build_complex, cup_multiply, identity_cochain, phi_embed, CochainComplex, OddPolynomial,
    PhiStep,
};
use crate::error::{Error, Result};
use crate::liesuper::{gl_units, LieSuperAlgebra, OddPoint};
use crate::superlinalg::{Echelon, PrimeField};
use crate::supermodule::{free_test, tensor, SuperModule};

/// Quadratic forms cutting out `{x ∈ g_1 : [x,x] = 0}`, one per even
/// coordinate of `[x,x]`, each scaled so its lex-leading coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullconeIdeal {
    pub forms: Vec<OddPolynomial>,
}

impl NullconeIdeal {
    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn vanishes_at(&self, x: &OddPoint) -> Result<bool> {
        for q in &self.forms {
            if q.eval(x.coords())? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn nullcone_ideal(g: &LieSuperAlgebra) -> NullconeIdeal {
    let f = g.field();
    let odd = g.odd_indices();
    let even = g.even_indices();
    let d1 = odd.len();
    let mut per_even: Vec<Vec<(Vec<u16>, u32)>> = vec![Vec::new(); g.dim()];
    for u in 0..d1 {
        for v in u..d1 {
            let mut e = vec![0u16; d1];
            e[u] += 1;
            e[v] += 1;
            // [x,x] picks up [y_u, y_v] twice when u != v
            let weight = if u == v { 1 } else { 2 };
            for &(k, c) in g.basis_bracket(odd[u], odd[v]) {
                per_even[k].push((e.clone(), f.mul(weight, c)));
            }
        }
    }
    let mut forms = BTreeSet::new();
    for &k in even {
        let q = OddPolynomial::from_terms(f, d1, per_even[k].drain(..)).expect("quadratic");
        if let Some((_, &lead)) = q.terms().iter().next_back() {
            let scale = OddPolynomial::constant(f, d1, f.inv(lead));
            forms.insert(FormKey(q.mul(&scale).expect("same ring")));
        }
    }
    NullconeIdeal {
        forms: forms.into_iter().map(|k| k.0).collect(),
    }
}

/// Orders forms by their terms, leading terms first.
#[derive(PartialEq, Eq)]
struct FormKey(OddPolynomial);

impl Ord for FormKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.terms().iter().rev().cmp(other.0.terms().iter().rev())
    }
}

impl PartialOrd for FormKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All F_p-points of the odd nullcone, sorted lexicographically.
pub fn nullcone_points(g: &LieSuperAlgebra, budget: &Budget) -> Result<Vec<OddPoint>> {
    let p = g.p() as u64;
    let d1 = g.odd_indices().len() as u32;
    let total = p.checked_pow(d1).filter(|&t| t <= budget.points).ok_or_else(|| {
        Error::Budget(format!(
            "enumerating {p}^{d1} odd points exceeds the budget of {} points; \
             supply a point file or raise SUPERVARIETY_BUDGET",
            budget.points
        ))
    })?;
    let ideal = nullcone_ideal(g);
    let points = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let x = decode_point(idx, p, d1 as usize);
            ideal.vanishes_at(&x).expect("matching length").then_some(x)
        })
        .collect();
    Ok(points)
}

/// The point with base-`p` digits of `idx`, most significant first.
fn decode_point(mut idx: u64, p: u64, len: usize) -> OddPoint {
    let mut coords = vec![0u32; len];
    for c in coords.iter_mut().rev() {
        *c = (idx % p) as u32;
        idx /= p;
    }
    OddPoint::new(coords)
}

/// Reads one point per line as comma-separated residues. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_points(g: &LieSuperAlgebra, text: &str) -> Result<Vec<OddPoint>> {
    let f = g.field();
    let d1 = g.odd_indices().len();
    let mut out = BTreeSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.insert(parse_point(f, d1, line).map_err(|e| match e {
            Error::Input(msg) => Error::input(format!("line {}: {msg}", lineno + 1)),
            other => other,
        })?);
    }
    Ok(out.into_iter().collect())
}

/// Parses `a,b,c` into an odd point with `len` coordinates.
pub fn parse_point(field: PrimeField, len: usize, text: &str) -> Result<OddPoint> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::input(format!("bad coordinate {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != len {
        return Err(Error::input(format!(
            "point has {} coordinates, expected {len}",
            coords.len()
        )));
    }
    Ok(OddPoint::from_signed(field, &coords))
}

/// Points `x` of the nullcone where `M` restricted to `Λ(x)` is not free, plus 0.
///
/// With `points = None` the whole F_p-nullcone is enumerated; otherwise the
/// supplied points are filtered and must lie on the nullcone.
pub fn rank_variety_points(
    m: &SuperModule,
    points: Option<&[OddPoint]>,
    budget: &Budget,
) -> Result<Vec<OddPoint>> {
    let g = m.algebra();
    let candidates = match points {
        Some(pts) => {
            let ideal = nullcone_ideal(g);
            for x in pts {
                if !ideal.vanishes_at(x)? {
                    return Err(Error::input(format!(
                        "point {:?} is not on the odd nullcone",
                        x.coords()
                    )));
                }
            }
            pts.to_vec()
        }
        None => nullcone_points(g, budget)?,
    };
    let mut out: BTreeSet<OddPoint> = candidates
        .par_iter()
        .filter_map(|x| match free_test(m, x) {
            Ok(t) if t.is_free => None,
            Ok(_) => Some(Ok(x.clone())),
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    out.insert(OddPoint::zero(g.odd_indices().len()));
    Ok(out.into_iter().collect())
}

/// The odd matrix `x_{r,s}` of `gl(m|n)`: ones at the first `r` diagonal
/// slots of the upper-right block and the last `s` diagonal slots of the
/// lower-left block, in odd-basis coordinates.
pub fn gl_orbit_rep(m: usize, n: usize, r: usize, s: usize) -> Result<OddPoint> {
    let k = m.min(n);
    if r + s > k {
        return Err(Error::input(format!(
            "x_(r,s) needs r + s <= min(m, n); got r = {r}, s = {s} for gl({m}|{n})"
        )));
    }
    let odd_units: Vec<(usize, usize)> = gl_units(m, n)
        .into_iter()
        .filter(|&(i, j)| (i < m) != (j < m))
        .collect();
    let mut coords = vec![0u32; odd_units.len()];
    let mut set = |unit: (usize, usize)| {
        let pos = odd_units.iter().position(|&u| u == unit).expect("odd unit");
        coords[pos] = 1;
    };
    for t in 0..r {
        set((t, m + t));
    }
    for t in k - s..k {
        set((m + t, t));
    }
    Ok(OddPoint::new(coords))
}

/// Prefers points with fewest nonzero coordinates, then the earliest
/// nonzero coordinate, then lexicographic order.
fn pick_witness(points: &[OddPoint]) -> Option<&OddPoint> {
    points
        .iter()
        .filter(|x| !x.is_zero())
        .min_by_key(|x| {
            let c = x.coords();
            let nnz = c.iter().filter(|&&a| a != 0).count();
            (nnz, c.iter().position(|&a| a != 0), c.to_vec())
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportVerdict {
    /// The rank variety is `{0}` and Ext vanishes on a full window.
    FiniteProjectiveDimensionExpected,
    /// The rank variety has a nonzero point, and `φ(f^ℓ)·id_M` survives in Ext.
    InfiniteProjectiveDimensionExpected,
    InconclusiveWithinBudget,
}

impl SupportVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::FiniteProjectiveDimensionExpected => "finite projective dimension expected",
            Self::InfiniteProjectiveDimensionExpected => "infinite projective dimension expected",
            Self::InconclusiveWithinBudget => "inconclusive within budget",
        }
    }
}

/// A nonzero rank-variety point, a linear form not vanishing there, and the
/// classes `φ(f^ℓ)·id_M` checked for nonvanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiWitness {
    pub point: OddPoint,
    pub form: OddPolynomial,
    pub steps: Vec<PhiStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportProbe {
    pub verdict: SupportVerdict,
    pub rank_variety: Vec<OddPoint>,
    /// `dim Ext^i(M, M)` for the degrees examined.
    pub ext_dims: Vec<usize>,
    /// `(i0, len)` with `Ext^i(M, M) = 0` for `i0 <= i < i0 + len`.
    pub window: Option<(usize, usize)>,
    pub witness: Option<PhiWitness>,
}

/// Compares the rank variety of `M` with the vanishing of `Ext(M, M)`.
///
/// If the rank variety is `{0}`, looks for the smallest `i0 <= window_start`
/// with `Ext^i(M, M) = 0` on `[i0, i0 + window_len)`. Otherwise takes a nonzero
/// point `x` and a coordinate function `f` with `f(x) != 0`, and checks
/// `φ(f^ℓ)·id_M ≠ 0` for `p·ℓ <= window_start + window_len`.
pub fn support_zero_probe(
    m: &SuperModule,
    window_start: usize,
    window_len: usize,
    points: Option<&[OddPoint]>,
    budget: &Budget,
) -> Result<SupportProbe> {
    if window_len == 0 {
        return Err(Error::input("window length must be positive"));
    }
    let g = m.algebra();
    let rank_variety = rank_variety_points(m, points, budget)?;
    let top = window_start + window_len;
    match pick_witness(&rank_variety) {
        None => {
            let ext_dims = build_complex(m, m, top, budget)?.cohomology_dims();
            let window = (0..=window_start)
                .find(|&i0| ext_dims[i0..i0 + window_len].iter().all(|&d| d == 0))
                .map(|i0| (i0, window_len));
            Ok(SupportProbe {
                verdict: if window.is_some() {
                    SupportVerdict::FiniteProjectiveDimensionExpected
                } else {
                    SupportVerdict::InconclusiveWithinBudget
                },
                rank_variety,
                ext_dims,
                window,
                witness: None,
            })
        }
        Some(x) => {
            let u = x.coords().iter().position(|&c| c != 0).expect("nonzero");
            let form = OddPolynomial::variable(g.field(), x.len(), u)?;
            let lmax = (top / g.p() as usize).max(1);
            let nmax = g.p() as usize * lmax + 1;
            let complex = build_complex(m, m, nmax, budget)?;
            let trivial = CochainComplex::with_coefficients(
                &SuperModule::trivial(g.clone()),
                nmax,
                None,
                budget,
            )?;
            let id = identity_cochain(&complex)?;
            let mut steps = Vec::with_capacity(lmax);
            for l in 1..=lmax {
                let z = cup_multiply(&trivial, &phi_embed(&trivial, &form.pow(l))?, &complex, &id)?;
                steps.push(PhiStep {
                    power: l,
                    degree: z.degree,
                    vanishes: complex.is_coboundary(&z)?.is_coboundary(),
                });
            }
            let survives = steps.iter().all(|s| !s.vanishes);
            let mut ext_dims = complex.cohomology_dims();
            ext_dims.truncate(top);
            Ok(SupportProbe {
                verdict: if survives {
                    SupportVerdict::InfiniteProjectiveDimensionExpected
                } else {
                    SupportVerdict::InconclusiveWithinBudget
                },
                witness: Some(PhiWitness {
                    point: x.clone(),
                    form,
                    steps,
                }),
                rank_variety,
                ext_dims,
                window: None,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub holds: bool,
    pub points_m: Vec<OddPoint>,
    pub points_n: Vec<OddPoint>,
    pub points_tensor: Vec<OddPoint>,
    pub intersection: Vec<OddPoint>,
    /// Points in exactly one of `points_tensor` and `intersection`.
    pub counterexamples: Vec<OddPoint>,
}

/// Checks `X(M ⊗ N) = X(M) ∩ X(N)` on F_p-points.
pub fn tensor_property_check(
    m: &SuperModule,
    n: &SuperModule,
    points: Option<&[OddPoint]>,
    budget: &Budget,
) -> Result<TensorReport> {
    let mn = tensor(m, n)?;
    let candidates = match points {
        Some(p) => p.to_vec(),
        None => nullcone_points(m.algebra(), budget)?,
    };
    let pm = rank_variety_points(m, Some(&candidates), budget)?;
    let pn = rank_variety_points(n, Some(&candidates), budget)?;
    let pt = rank_variety_points(&mn.module, Some(&candidates), budget)?;
    let sm: BTreeSet<_> = pm.iter().cloned().collect();
    let sn: BTreeSet<_> = pn.iter().cloned().collect();
    let st: BTreeSet<_> = pt.iter().cloned().collect();
    let inter: BTreeSet<_> = sm.intersection(&sn).cloned().collect();
    let counterexamples: Vec<_> = st.symmetric_difference(&inter).cloned().collect();
    Ok(TensorReport {
        holds: counterexamples.is_empty(),
        points_m: pm,
        points_n: pn,
        points_tensor: pt,
        intersection: inter.into_iter().collect(),
        counterexamples,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalDimVerdict {
    FiniteGlobalDimensionExpected,
    /// The odd nullcone has a nonzero F_p-point.
    NonzeroNullcone,
    Undetermined,
}

impl GlobalDimVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::FiniteGlobalDimensionExpected => "finite global dimension expected",
            Self::NonzeroNullcone => "nonzero nullcone: infinite global dimension expected",
            Self::Undetermined => "undetermined: F_p-points trivial but closure behavior unverified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalDimProbe {
    pub verdict: GlobalDimVerdict,
    pub nullcone: Vec<OddPoint>,
    pub witness: Option<OddPoint>,
    /// Linear forms `ℓ_1, ℓ_2, ...` (each in the coordinates left after the
    /// previous eliminations) whose squares lie in the successive ideals.
    pub certificate: Option<Vec<Vec<u32>>>,
    pub support: Option<SupportProbe>,
}

/// Whether `g` has no nonzero odd `x` with `[x,x] = 0`, and if so whether
/// the trivial module has a vanishing Ext window.
pub fn global_dim_probe(
    g: &std::sync::Arc<LieSuperAlgebra>,
    window_start: usize,
    window_len: usize,
    budget: &Budget,
) -> Result<GlobalDimProbe> {
    let nullcone = nullcone_points(g, budget)?;
    if let Some(x) = pick_witness(&nullcone) {
        return Ok(GlobalDimProbe {
            verdict: GlobalDimVerdict::NonzeroNullcone,
            witness: Some(x.clone()),
            nullcone,
            certificate: None,
            support: None,
        });
    }
    let Some(certificate) = certify_trivial_nullcone(g, budget) else {
        return Ok(GlobalDimProbe {
            verdict: GlobalDimVerdict::Undetermined,
            nullcone,
            witness: None,
            certificate: None,
            support: None,
        });
    };
    let support = support_zero_probe(
        &SuperModule::trivial(g.clone()),
        window_start,
        window_len,
        Some(&nullcone),
        budget,
    )?;
    let verdict = if support.verdict == SupportVerdict::FiniteProjectiveDimensionExpected {
        GlobalDimVerdict::FiniteGlobalDimensionExpected
    } else {
        GlobalDimVerdict::Undetermined
    };
    Ok(GlobalDimProbe {
        verdict,
        nullcone,
        witness: None,
        certificate: Some(certificate),
        support: Some(support),
    })
}

/// Symmetric matrix of a quadratic form: `q(x) = x^T Q x`.
type Quadric = Vec<Vec<u32>>;

fn quadric_of(f: PrimeField, q: &OddPolynomial) -> Quadric {
    let d = q.nvars();
    let mut m = vec![vec![0; d]; d];
    for (e, &c) in q.terms() {
        let vars: Vec<usize> = (0..d).filter(|&u| e[u] > 0).collect();
        match vars[..] {
            [u] => m[u][u] = c,
            [u, v] => {
                let h = f.mul(c, f.half());
                m[u][v] = h;
                m[v][u] = h;
            }
            _ => unreachable!("quadratic form"),
        }
    }
    m
}

fn upper_triangle(q: &Quadric) -> Vec<(usize, u32)> {
    let d = q.len();
    let mut out = Vec::new();
    for u in 0..d {
        for v in u..d {
            if q[u][v] != 0 {
                out.push((u * d + v, q[u][v]));
            }
        }
    }
    out
}

/// Tries to show the quadrics have no common nonzero zero over the algebraic
/// closure: repeatedly finds an F_p-linear form `ℓ` with `ℓ²` in the span,
/// restricts to `ℓ = 0`, and succeeds once no variables remain.
fn certify_trivial_nullcone(g: &LieSuperAlgebra, budget: &Budget) -> Option<Vec<Vec<u32>>> {
    let f = g.field();
    let p = g.p() as u64;
    let mut quadrics: Vec<Quadric> = nullcone_ideal(g)
        .forms
        .iter()
        .map(|q| quadric_of(f, q))
        .collect();
    let mut d = g.odd_indices().len();
    let mut certificate = Vec::new();
    while d > 0 {
        let mut span = Echelon::new(f, d * d);
        for q in &quadrics {
            span.insert(upper_triangle(q));
        }
        // all normalized forms when affordable, otherwise the coordinate functions
        let count = p.checked_pow(d as u32 - 1).filter(|&c| c * d as u64 <= budget.points);
        let candidates: Box<dyn Iterator<Item = Vec<u32>>> = match count {
            Some(_) => Box::new((0..d).flat_map(move |lead| {
                (0..p.pow((d - lead - 1) as u32)).map(move |idx| {
                    let mut l = vec![0u32; d];
                    l[lead] = 1;
                    let tail = decode_point(idx, p, d - lead - 1);
                    l[lead + 1..].copy_from_slice(tail.coords());
                    l
                })
            })),
            None => Box::new((0..d).map(move |u| {
                let mut l = vec![0u32; d];
                l[u] = 1;
                l
            })),
        };
        let mut found = None;
        for l in candidates {
            let sq: Quadric = (0..d)
                .map(|u| (0..d).map(|v| f.mul(l[u], l[v])).collect())
                .collect();
            if span.contains(upper_triangle(&sq)) {
                found = Some(l);
                break;
            }
        }
        let l = found?;
        // restrict to ℓ = 0 by eliminating the leading variable
        let lead = l.iter().position(|&c| c == 1).expect("normalized");
        let t: Vec<Vec<u32>> = (0..d)
            .map(|u| {
                (0..d)
                    .filter(|&v| v != lead)
                    .map(|v| {
                        if u == lead {
                            f.neg(l[v])
                        } else {
                            u32::from(u == v)
                        }
                    })
                    .collect()
            })
            .collect();
        quadrics = quadrics
            .iter()
            .map(|q| congruence(f, q, &t))
            .filter(|q| q.iter().flatten().any(|&c| c != 0))
            .collect();
        certificate.push(l);
        d -= 1;
    }
    Some(certificate)
}

/// `T^T Q T`.
fn congruence(f: PrimeField, q: &Quadric, t: &[Vec<u32>]) -> Quadric {
    let d = q.len();
    let k = t.first().map_or(0, Vec::len);
    let mut qt = vec![vec![0u32; k]; d];
    for u in 0..d {
        for j in 0..k {
            qt[u][j] = (0..d).fold(0, |acc, v| f.add(acc, f.mul(q[u][v], t[v][j])));
        }
    }
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..d).fold(0, |acc, u| f.add(acc, f.mul(t[u][i], qt[u][j]))))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests;
