//! Exponent vectors and monomial orders (weighted grevlex, lex, and a block
//! elimination order for variable elimination).

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::cmp::Ordering;

/// Exponent vector; inline storage covers every ring in the scenarios.
pub type Mono = SmallVec<[u16; 16]>;

pub fn mono_zero(nvars: usize) -> Mono {
    SmallVec::from_elem(0, nvars)
}

pub fn mono_is_one(m: &Mono) -> bool {
    m.iter().all(|&e| e == 0)
}

pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b.iter()).map(|(&x, &y)| x + y).collect()
}

pub fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b.iter()).all(|(&x, &y)| x <= y)
}

/// b / a, assuming divisibility.
pub fn mono_div(b: &Mono, a: &Mono) -> Mono {
    b.iter().zip(a.iter()).map(|(&x, &y)| x - y).collect()
}

pub fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b.iter()).map(|(&x, &y)| x.max(y)).collect()
}

pub fn mono_gcd_is_one(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b.iter()).all(|(&x, &y)| x.min(y) == 0)
}

pub fn weighted_deg(m: &Mono, weights: &[u32]) -> u32 {
    m.iter()
        .zip(weights.iter())
        .map(|(&e, &w)| e as u32 * w)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Weighted-degree reverse lexicographic.
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// Elimination order: the first `k` variables form a block compared by
    /// grevlex, ties broken by grevlex on the remaining block. Generators
    /// free of the first block characterize the intersection with the
    /// subring on the remaining variables.
    Block(usize),
}

/// Compare under grevlex restricted to `range`, using `weights`.
fn cmp_grevlex(a: &Mono, b: &Mono, weights: &[u32], lo: usize, hi: usize) -> Ordering {
    let da: u32 = (lo..hi).map(|i| a[i] as u32 * weights[i]).sum();
    let db: u32 = (lo..hi).map(|i| b[i] as u32 * weights[i]).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // reverse lex tie-break: the last position where they differ decides,
    // smaller exponent there means larger monomial
    for i in (lo..hi).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

pub fn cmp_mono(order: MonomialOrder, weights: &[u32], a: &Mono, b: &Mono) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    match order {
        MonomialOrder::GrevLex => cmp_grevlex(a, b, weights, 0, n),
        MonomialOrder::Lex => {
            for i in 0..n {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
            Ordering::Equal
        }
        MonomialOrder::Block(k) => match cmp_grevlex(a, b, weights, 0, k.min(n)) {
            Ordering::Equal => cmp_grevlex(a, b, weights, k.min(n), n),
            other => other,
        },
    }
}

/// All exponent vectors of the given weighted degree, in descending ring
/// order. The enumeration order is part of the seeded-coefficient contract.
pub fn monomials_of_degree(
    weights: &[u32],
    order: MonomialOrder,
    degree: u32,
) -> Vec<Mono> {
    let n = weights.len();
    let mut out = Vec::new();
    let mut cur = mono_zero(n);
    fn rec(weights: &[u32], i: usize, rem: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == weights.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let max_e = rem / w;
        for e in 0..=max_e {
            cur[i] = e as u16;
            rec(weights, i + 1, rem - e * w, cur, out);
        }
        cur[i] = 0;
    }
    rec(weights, 0, degree, &mut cur, &mut out);
    out.sort_by(|a, b| cmp_mono(order, weights, b, a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    #[test]
    fn grevlex_classic_order() {
        // in 3 vars: x^2 > xy > y^2 > xz > yz > z^2
        let w = [1u32, 1, 1];
        let ms = monomials_of_degree(&w, MonomialOrder::GrevLex, 2);
        let expect: Vec<Mono> = vec![
            smallvec![2, 0, 0],
            smallvec![1, 1, 0],
            smallvec![0, 2, 0],
            smallvec![1, 0, 1],
            smallvec![0, 1, 1],
            smallvec![0, 0, 2],
        ];
        assert_eq!(ms, expect);
    }

    #[test]
    fn lex_order() {
        let w = [1u32, 1];
        let ms = monomials_of_degree(&w, MonomialOrder::Lex, 2);
        let expect: Vec<Mono> = vec![smallvec![2, 0], smallvec![1, 1], smallvec![0, 2]];
        assert_eq!(ms, expect);
    }

    #[test]
    fn weighted_enumeration() {
        // weights (1,4): degree 4 monomials are x^4 and u
        let w = [1u32, 4];
        let ms = monomials_of_degree(&w, MonomialOrder::GrevLex, 4);
        assert_eq!(ms.len(), 2);
        for m in &ms {
            assert_eq!(weighted_deg(m, &w), 4);
        }
    }

    #[test]
    fn block_order_eliminates_first_block() {
        // with Block(1) on (t, x, y): any monomial containing t beats any without
        let w = [1u32, 1, 1];
        let with_t: Mono = smallvec![1, 0, 0];
        let without: Mono = smallvec![0, 5, 5];
        assert_eq!(
            cmp_mono(MonomialOrder::Block(1), &w, &with_t, &without),
            Ordering::Greater
        );
    }

    #[test]
    fn divisibility_helpers() {
        let a: Mono = smallvec![1, 0, 2];
        let b: Mono = smallvec![1, 1, 2];
        assert!(mono_divides(&a, &b));
        assert!(!mono_divides(&b, &a));
        let expect: Mono = smallvec![0u16, 1, 0];
        assert_eq!(mono_div(&b, &a), expect);
        assert_eq!(mono_lcm(&a, &b), b);
        let u: Mono = smallvec![1u16, 0, 0];
        let v: Mono = smallvec![0u16, 2, 0];
        assert!(mono_gcd_is_one(&u, &v));
    }
}
