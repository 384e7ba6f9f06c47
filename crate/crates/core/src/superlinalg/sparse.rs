//! Sparse vectors as sorted `(index, residue)` lists with no stored zeros.

use super::field::PrimeField;

pub type SparseVec = Vec<(usize, u32)>;

/// Builds a canonical sparse vector from unsorted, possibly repeated entries.
pub fn collect(field: PrimeField, entries: impl IntoIterator<Item = (usize, u32)>) -> SparseVec {
    let mut v: SparseVec = entries.into_iter().filter(|e| e.1 != 0).collect();
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, a) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add(last.1, a),
            _ => out.push((i, a)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

pub fn from_dense(v: &[u32]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| (i, a))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for &(i, a) in v {
        out[i] = a;
    }
    out
}

pub fn scale(field: PrimeField, v: &SparseVec, c: u32) -> SparseVec {
    if c == 0 {
        return Vec::new();
    }
    v.iter().map(|&(i, a)| (i, field.mul(a, c))).collect()
}

/// `a + c * b`.
pub fn axpy(field: PrimeField, a: &SparseVec, c: u32, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = field.mul(c, b[j].1);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn dot(field: PrimeField, a: &SparseVec, b: &SparseVec) -> u32 {
    let (mut i, mut j, mut acc) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = field.add(acc, field.mul(a[i].1, b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    acc
}
