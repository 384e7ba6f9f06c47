use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::liesuper::LieSuperAlgebra;
use crate::superlinalg::PrimeField;

/// A homogeneous polynomial in the coordinates dual to the odd basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddPolynomial {
    field: PrimeField,
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Vec<u16>, u32>,
}

impl OddPolynomial {
    pub fn zero(field: PrimeField, nvars: usize, degree: usize) -> Self {
        Self {
            field,
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u32) -> Self {
        let mut out = Self::zero(field, nvars, 0);
        if c != 0 {
            out.terms.insert(vec![0; nvars], c);
        }
        out
    }

    /// The coordinate function `η_u`.
    pub fn variable(field: PrimeField, nvars: usize, u: usize) -> Result<Self> {
        if u >= nvars {
            return Err(Error::input(format!("variable {u} out of range for {nvars} variables")));
        }
        let mut e = vec![0; nvars];
        e[u] = 1;
        Self::from_terms(field, nvars, [(e, 1)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; all terms
    /// must share one total degree.
    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u16>, u32)>,
    ) -> Result<Self> {
        let mut out: BTreeMap<Vec<u16>, u32> = BTreeMap::new();
        let mut degree = None;
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::dims("exponent vector length differs from variable count"));
            }
            let d: usize = e.iter().map(|&x| x as usize).sum();
            if *degree.get_or_insert(d) != d {
                return Err(Error::input("polynomial is not homogeneous"));
            }
            let slot = out.entry(e).or_insert(0);
            *slot = field.add(*slot, field.reduce(c as i64));
        }
        out.retain(|_, c| *c != 0);
        Ok(Self {
            field,
            nvars,
            degree: degree.unwrap_or(0),
            terms: out,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, u32> {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if !self.is_zero() && !other.is_zero() && self.degree != other.degree {
            return Err(Error::input("sum of polynomials of different degrees"));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = Self::from_terms(
            self.field,
            self.nvars,
            self.terms.iter().chain(&other.terms).map(|(e, &c)| (e.clone(), c)),
        )?;
        out.degree = degree;
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field;
        let mut out: BTreeMap<Vec<u16>, u32> = BTreeMap::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let e: Vec<u16> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                let slot = out.entry(e).or_insert(0);
                *slot = f.add(*slot, f.mul(x, y));
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(Self {
            field: f,
            nvars: self.nvars,
            degree: self.degree + other.degree,
            terms: out,
        })
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(self.field, self.nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn eval(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.nvars {
            return Err(Error::dims(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let f = self.field;
        Ok(self.terms.iter().fold(0, |acc, (e, &c)| {
            let m = e
                .iter()
                .zip(point)
                .fold(c, |m, (&k, &x)| f.mul(m, f.pow(x, k as u64)));
            f.add(acc, m)
        }))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::input("polynomials live in different rings"));
        }
        Ok(())
    }

    /// Parses expressions such as `E12 + 2*E21^2 - y1*y2`.
    ///
    /// Variables are odd basis names of `g`, or `y1, y2, ...` for the odd
    /// coordinates by position. The zero polynomial `0` gets degree 1.
    pub fn parse(g: &LieSuperAlgebra, text: &str) -> Result<Self> {
        let f = g.field();
        let odd = g.odd_indices();
        let nvars = odd.len();
        let var = |name: &str| -> Result<usize> {
            if let Some(u) = g.index_of(name).and_then(|i| odd.iter().position(|&a| a == i)) {
                return Ok(u);
            }
            name.strip_prefix('y')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| (1..=nvars).contains(&k))
                .map(|k| k - 1)
                .ok_or_else(|| Error::input(format!("unknown odd variable {name:?}")))
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::input("empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            if term.is_empty() {
                return Err(Error::input(format!("malformed polynomial {text:?}")));
            }
            let mut coeff = 1i64;
            let mut exps = vec![0u16; nvars];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::input(format!("malformed term {term:?}")));
                }
                if let Ok(c) = factor.parse::<i64>() {
                    coeff = coeff.saturating_mul(c % f.p() as i64);
                    continue;
                }
                let (name, k) = match factor.split_once('^') {
                    Some((n, k)) => (
                        n,
                        k.parse::<u16>()
                            .map_err(|_| Error::input(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let u = var(name)?;
                exps[u] = exps[u]
                    .checked_add(k)
                    .ok_or_else(|| Error::input("exponent overflow"))?;
            }
            let c = f.reduce(if neg { -coeff } else { coeff });
            terms.push((exps, c));
        }
        let all_constant = terms.iter().all(|(e, _)| e.iter().all(|&k| k == 0));
        if all_constant {
            if terms.iter().all(|&(_, c)| c == 0) {
                return Ok(Self::zero(f, nvars, 1));
            }
            return Err(Error::input("constant polynomials are not supported"));
        }
        Self::from_terms(f, nvars, terms)
    }
}

impl fmt::Display for OddPolynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|e| *e.1 > 0)
                .map(|(u, &k)| if k == 1 { format!("y{}", u + 1) } else { format!("y{}^{k}", u + 1) })
                .collect();
            match (c, factors.is_empty()) {
                (_, true) => write!(out, "{c}")?,
                (1, false) => write!(out, "{}", factors.join("*"))?,
                _ => write!(out, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}
