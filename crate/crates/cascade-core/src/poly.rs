//! Multivariate polynomials with weighted gradings over GF(p).

use crate::error::CascadeError;
use crate::field::{CoeffField, Fp, SplitMix64};
use crate::monomial::{
    cmp_mono, mono_mul, mono_zero, monomials_of_degree, weighted_deg, Mono,
    MonomialOrder,
};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
    pub field: CoeffField,
}

pub type Ring = Arc<PolyRing>;

/// Build a polynomial ring. Two identical calls produce interchangeable
/// rings: all operations compare rings by content, not identity.
pub fn make_ring(
    vars: &[&str],
    weights: &[u32],
    order: MonomialOrder,
    field: CoeffField,
) -> Result<Ring, CascadeError> {
    if vars.is_empty() {
        return Err(CascadeError::Ring("empty variable list".into()));
    }
    if vars.len() != weights.len() {
        return Err(CascadeError::Ring("weights/variables length mismatch".into()));
    }
    if weights.iter().any(|&w| w == 0) {
        return Err(CascadeError::Ring("weights must be positive".into()));
    }
    let mut names: Vec<&str> = vars.to_vec();
    names.sort_unstable();
    names.dedup();
    if names.len() != vars.len() {
        return Err(CascadeError::Ring("variable names must be distinct".into()));
    }
    if let CoeffField::Prime(p) = field {
        if !crate::field::is_prime_u64(p) {
            return Err(CascadeError::Ring(format!("modulus {p} is not prime")));
        }
    }
    Ok(Arc::new(PolyRing {
        vars: vars.iter().map(|s| s.to_string()).collect(),
        weights: weights.to_vec(),
        order,
        field,
    }))
}

/// Unweighted ring over the default prime: the common case.
pub fn simple_ring(vars: &[&str], order: MonomialOrder) -> Ring {
    make_ring(
        vars,
        &vec![1; vars.len()],
        order,
        CoeffField::Prime(crate::field::DEFAULT_PRIME),
    )
    .unwrap()
}

impl PolyRing {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn fp(&self) -> Fp {
        match self.field {
            CoeffField::Prime(p) => Fp { p },
            CoeffField::Rationals => {
                panic!("polynomial arithmetic requires a prime field; rationals are reserved for the intersection-theory module")
            }
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        cmp_mono(self.order, &self.weights, a, b)
    }
}

/// A polynomial in canonical form: terms sorted descending under the ring
/// order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    pub ring: Ring,
    pub terms: Vec<(Mono, u64)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: u64) -> Self {
        let fp = ring.fp();
        let c = c % fp.p;
        if c == 0 {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(mono_zero(ring.nvars()), c)] }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        let mut m = mono_zero(ring.nvars());
        m[i] = 1;
        Polynomial { ring: ring.clone(), terms: vec![(m, 1)] }
    }

    pub fn from_terms(ring: &Ring, terms: Vec<(Mono, u64)>) -> Self {
        let fp = ring.fp();
        let mut map: HashMap<Mono, u64> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % fp.p;
            let e = map.entry(m).or_insert(0);
            *e = fp.add(*e, c);
        }
        let mut v: Vec<(Mono, u64)> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        v.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms: v }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Mono, u64)> {
        self.terms.first()
    }

    /// Weighted total degree (None for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(m, _)| weighted_deg(m, &self.ring.weights))
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self
            .terms
            .iter()
            .map(|(m, _)| weighted_deg(m, &self.ring.weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), CascadeError> {
        if *self.ring != *other.ring {
            return Err(CascadeError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other).expect("ring mismatch in add");
        let fp = self.ring.fp();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.ring.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = fp.add(self.terms[i].1, other.terms[j].1);
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        let fp = self.ring.fp();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), fp.neg(*c))).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let fp = self.ring.fp();
        let c = c % fp.p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), fp.mul(*a, c))).collect(),
        }
    }

    /// Multiply by coeff * monomial (used heavily during reduction).
    pub fn mul_term(&self, m: &Mono, c: u64) -> Polynomial {
        let fp = self.ring.fp();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (mono_mul(tm, m), fp.mul(*tc, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other).expect("ring mismatch in mul");
        let fp = self.ring.fp();
        let mut map: HashMap<Mono, u64> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = mono_mul(ma, mb);
                let c = fp.mul(*ca, *cb);
                let e = map.entry(m).or_insert(0);
                *e = fp.add(*e, c);
            }
        }
        let mut v: Vec<(Mono, u64)> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        v.sort_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms: v }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Make the leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.fp().inv(c)),
        }
    }

    /// Compose: each variable of `self` is replaced by `map[i]` (a polynomial
    /// in `target`). Every variable that occurs must be assigned.
    pub fn substitute(
        &self,
        target: &Ring,
        map: &[Option<Polynomial>],
    ) -> Result<Polynomial, CascadeError> {
        assert_eq!(map.len(), self.ring.nvars());
        for img in map.iter().flatten() {
            if **target != *img.ring {
                return Err(CascadeError::RingMismatch);
            }
        }
        let fp = target.fp();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, *c % fp.p);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &map[i] {
                    Some(img) => term = term.mul(&img.pow(e as u32)),
                    None => {
                        return Err(CascadeError::Substitute(format!(
                            "variable {} occurs but has no assigned image",
                            self.ring.vars[i]
                        )))
                    }
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Substitution by variable name; unassigned variables map to the
    /// same-named variable of the target ring when it exists.
    pub fn substitute_named(
        &self,
        target: &Ring,
        assignment: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, CascadeError> {
        let map: Vec<Option<Polynomial>> = self
            .ring
            .vars
            .iter()
            .map(|name| {
                assignment.get(name).cloned().or_else(|| {
                    target.var_index(name).map(|i| Polynomial::var(target, i))
                })
            })
            .collect();
        self.substitute(target, &map)
    }
}

/// The seeded stand-in for every "generic" form: the weighted-degree-`degree`
/// polynomial whose coefficients are drawn by SplitMix64(seed), one per
/// monomial, monomials enumerated in descending ring order.
pub fn random_form(ring: &Ring, degree: u32, seed: u64) -> Result<Polynomial, CascadeError> {
    if degree == 0 {
        return Err(CascadeError::Degree("degree must be >= 1".into()));
    }
    let fp = ring.fp();
    let monos = monomials_of_degree(&ring.weights, ring.order, degree);
    if monos.is_empty() {
        return Err(CascadeError::Degree(format!(
            "degree {degree} is not representable in the weighted monomial basis"
        )));
    }
    let mut gen = SplitMix64::new(seed);
    let terms: Vec<(Mono, u64)> = monos
        .into_iter()
        .map(|m| {
            let c = gen.next_u64() % fp.p;
            (m, c)
        })
        .filter(|&(_, c)| c != 0)
        .collect();
    Ok(Polynomial { ring: ring.clone(), terms })
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|&(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.ring.vars[i].clone()
                        } else {
                            format!("{}^{}", self.ring.vars[i], e)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else if *c == 1 {
                    vars.join("*")
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;

    fn ring2() -> Ring {
        simple_ring(&["x", "y"], MonomialOrder::GrevLex)
    }

    #[test]
    fn make_ring_rejects_bad_input() {
        assert!(make_ring(&[], &[], MonomialOrder::GrevLex, CoeffField::Prime(7)).is_err());
        assert!(make_ring(&["x", "x"], &[1, 1], MonomialOrder::GrevLex, CoeffField::Prime(7)).is_err());
        assert!(make_ring(&["x"], &[0], MonomialOrder::GrevLex, CoeffField::Prime(7)).is_err());
        assert!(make_ring(&["x"], &[1], MonomialOrder::GrevLex, CoeffField::Prime(6)).is_err());
    }

    #[test]
    fn product_of_sum_and_difference() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pow_zero_is_one() {
        let r = ring2();
        let f = Polynomial::var(&r, 0).add(&Polynomial::one(&r));
        assert_eq!(f.pow(0), Polynomial::one(&r));
    }

    #[test]
    fn add_negate_cancels() {
        let r = ring2();
        let f = random_form(&r, 3, 9).unwrap();
        assert!(f.add(&f.neg()).is_zero());
    }

    #[test]
    fn degrees_add_under_product() {
        let r = make_ring(
            &["x1", "x2", "x3", "x4", "u"],
            &[1, 1, 1, 1, 4],
            MonomialOrder::GrevLex,
            CoeffField::Prime(DEFAULT_PRIME),
        )
        .unwrap();
        for s in 0..20u64 {
            let f = random_form(&r, 4, s).unwrap();
            let g = random_form(&r, 5, s + 100).unwrap();
            let fg = f.mul(&g);
            assert_eq!(fg.degree(), Some(9));
            assert!(f.is_homogeneous() && g.is_homogeneous() && fg.is_homogeneous());
        }
    }

    #[test]
    fn random_form_reproducible_and_guarded() {
        let r = ring2();
        let a = random_form(&r, 3, 1).unwrap();
        let b = random_form(&r, 3, 1).unwrap();
        assert_eq!(a, b);
        assert!(random_form(&r, 0, 1).is_err());
        // degree 1,2,3 in a weight-(2) ring: odd degrees unrepresentable
        let rw = make_ring(&["v"], &[2], MonomialOrder::GrevLex, CoeffField::Prime(DEFAULT_PRIME)).unwrap();
        assert!(random_form(&rw, 3, 1).is_err());
        assert!(random_form(&rw, 2, 1).is_ok());
    }

    #[test]
    fn random_linear_form_has_full_support() {
        let r = simple_ring(&["x0", "x1", "x2", "x3", "x4", "x5", "x6"], MonomialOrder::GrevLex);
        let f = random_form(&r, 1, 7).unwrap();
        assert_eq!(f.terms.len(), 7);
    }

    #[test]
    fn substitute_examples() {
        let r = ring2();
        let t_ring = simple_ring(&["t"], MonomialOrder::GrevLex);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = x.mul(&x).add(&y); // x^2 + y
        let t = Polynomial::var(&t_ring, 0);
        let t2 = t.mul(&t);
        let g = f
            .substitute(&t_ring, &[Some(t.clone()), Some(t2.clone())])
            .unwrap();
        assert_eq!(g, t2.scale(2));
        // identity map
        let id = f
            .substitute(&r, &[Some(x.clone()), Some(y.clone())])
            .unwrap();
        assert_eq!(id, f);
        // unassigned variable that the target lacks
        assert!(f.substitute(&t_ring, &[Some(t.clone()), None]).is_err());
    }

    #[test]
    fn substitute_is_ring_homomorphism() {
        let r = ring2();
        let t_ring = simple_ring(&["t", "s"], MonomialOrder::GrevLex);
        let t = Polynomial::var(&t_ring, 0);
        let s = Polynomial::var(&t_ring, 1);
        let img = [Some(t.add(&s)), Some(t.mul(&s).add(&Polynomial::one(&t_ring)))];
        for seed in 0..10u64 {
            let f = random_form(&r, 2, seed).unwrap();
            let g = random_form(&r, 3, seed + 50).unwrap();
            let lhs = f.mul(&g).substitute(&t_ring, &img).unwrap();
            let rhs = f
                .substitute(&t_ring, &img)
                .unwrap()
                .mul(&g.substitute(&t_ring, &img).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}
