//! Monomials of the cochain algebra `Λ(g_0^*) ⊗ S(g_1^*)`.
//!
//! Generators `ξ_i` (duals of even basis vectors) and `η_u` (duals of odd
//! ones) all sit in cohomological degree 1. Two homogeneous elements commute
//! up to `(-1)^{deg·deg' + par·par'}`, so `ξ`'s anticommute with each other
//! and with the `η`'s, while the `η`'s commute among themselves. A monomial is
//! stored in the normal form `ξ_{i_1}⋯ξ_{i_a} η^α` with `i_1 < ⋯ < i_a`.

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    /// Bit `i` set when `ξ_i` occurs.
    pub ext: u64,
    /// Exponent of each `η_u`.
    pub sym: Box<[u16]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Xi(usize),
    Eta(usize),
}

impl Monomial {
    pub fn one(d1: usize) -> Self {
        Self {
            ext: 0,
            sym: vec![0; d1].into_boxed_slice(),
        }
    }

    pub fn generator(g: Generator, d1: usize) -> Self {
        let mut m = Self::one(d1);
        match g {
            Generator::Xi(i) => m.ext = 1 << i,
            Generator::Eta(u) => m.sym[u] = 1,
        }
        m
    }

    pub fn ext_len(&self) -> u32 {
        self.ext.count_ones()
    }

    pub fn sym_len(&self) -> u32 {
        self.sym.iter().map(|&e| e as u32).sum()
    }

    pub fn degree(&self) -> usize {
        (self.ext_len() + self.sym_len()) as usize
    }

    /// The generators in normal-form order, `η`'s repeated by multiplicity.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.degree());
        let mut e = self.ext;
        while e != 0 {
            let i = e.trailing_zeros() as usize;
            out.push(Generator::Xi(i));
            e &= e - 1;
        }
        for (u, &k) in self.sym.iter().enumerate() {
            for _ in 0..k {
                out.push(Generator::Eta(u));
            }
        }
        out
    }

    /// Product of generators, in the given order, as a signed monomial.
    pub fn from_generators(gens: &[Generator], d1: usize) -> Option<(bool, Self)> {
        let mut acc = (false, Self::one(d1));
        for &g in gens {
            let (s, m) = acc.1.mul(&Self::generator(g, d1))?;
            acc = (acc.0 ^ s, m);
        }
        Some(acc)
    }

    /// `self * other` in normal form; `None` when a `ξ` repeats. The flag is
    /// `true` when the product carries a minus sign.
    pub fn mul(&self, other: &Self) -> Option<(bool, Self)> {
        if self.ext & other.ext != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut e = other.ext;
        while e != 0 {
            let y = e.trailing_zeros();
            swaps += (self.ext.checked_shr(y + 1).unwrap_or(0)).count_ones();
            e &= e - 1;
        }
        swaps += other.ext_len() * self.sym_len();
        let sym = self
            .sym
            .iter()
            .zip(other.sym.iter())
            .map(|(a, b)| a + b)
            .collect();
        Some((
            swaps % 2 == 1,
            Self {
                ext: self.ext | other.ext,
                sym,
            },
        ))
    }
}

/// All monomials of degree `n` in `d0` exterior and `d1` symmetric
/// generators: by number of `ξ`'s, then `ξ`-index sets in lex order, then
/// `η`-exponent vectors in lex order.
pub fn monomials(d0: usize, d1: usize, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..=n.min(d0) {
        let j = n - i;
        let mut exps = Vec::new();
        compositions(j, d1, &mut Vec::with_capacity(d1), &mut exps);
        let mut subsets = Vec::new();
        combinations(d0, i, 0, 0, &mut subsets);
        for &ext in &subsets {
            for e in &exps {
                out.push(Monomial {
                    ext,
                    sym: e.clone().into_boxed_slice(),
                });
            }
        }
    }
    out
}

fn combinations(d: usize, k: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
    if k == 0 {
        out.push(acc);
        return;
    }
    for i in start..d {
        if d - i < k {
            break;
        }
        combinations(d, k - 1, i + 1, acc | (1 << i), out);
    }
}

fn compositions(total: usize, vars: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if prefix.len() + 1 == vars {
        prefix.push(total as u16);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if vars == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for first in 0..=total {
        prefix.push(first as u16);
        compositions(total - first, vars, prefix, out);
        prefix.pop();
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `dim Λ_s^n(g^*) = Σ_{i+j=n} C(d0, i) · C(j + d1 - 1, d1 - 1)`.
pub fn algebra_degree_dim(d0: usize, d1: usize, n: usize) -> u64 {
    (0..=n)
        .map(|i| {
            let j = n - i;
            let sym = if d1 == 0 {
                u64::from(j == 0)
            } else {
                binomial((j + d1 - 1) as u64, (d1 - 1) as u64)
            };
            binomial(d0 as u64, i as u64).saturating_mul(sym)
        })
        .fold(0u64, u64::saturating_add)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_square_vanishes() {
        let x = Monomial::generator(Generator::Xi(0), 2);
        assert!(x.mul(&x).is_none());
    }

    #[test]
    fn symmetric_powers_multiply() {
        let e = Monomial::generator(Generator::Eta(0), 2);
        let (s, e2) = e.mul(&e).unwrap();
        assert!(!s);
        let (s, e3) = e.mul(&e2).unwrap();
        assert!(!s);
        assert_eq!(&*e3.sym, &[3, 0]);
    }

    #[test]
    fn sign_rules() {
        let x0 = Monomial::generator(Generator::Xi(0), 1);
        let x1 = Monomial::generator(Generator::Xi(1), 1);
        let y = Monomial::generator(Generator::Eta(0), 1);
        assert!(!x0.mul(&x1).unwrap().0);
        assert!(x1.mul(&x0).unwrap().0);
        assert!(!x0.mul(&y).unwrap().0);
        assert!(y.mul(&x0).unwrap().0);
        // (x0 y)(x1) = - x0 x1 y
        let (_, x0y) = x0.mul(&y).unwrap();
        assert!(x0y.mul(&x1).unwrap().0);
    }

    #[test]
    fn enumeration_matches_count() {
        for d0 in 0..4 {
            for d1 in 0..4 {
                for n in 0..6 {
                    let ms = monomials(d0, d1, n);
                    assert_eq!(ms.len() as u64, algebra_degree_dim(d0, d1, n));
                    assert!(ms.iter().all(|m| m.degree() == n));
                    let mut sorted = ms.clone();
                    sorted.dedup();
                    assert_eq!(sorted.len(), ms.len());
                }
            }
        }
    }
}
