//! Buchberger engine over GF(p) and the ideal-theoretic operations built on
//! it: Hilbert series data (dimension, degree), membership and containment,
//! sums, intersections, quotients, elimination, Jacobian ideals, and a seeded
//! count of distinct points for zero-dimensional projective schemes.
//!
//! The engine uses the normal selection strategy refined by sugar degrees and
//! the Gebauer–Möller pair-elimination criteria. Every entry point accepts a
//! cap configuration (degree bound, basis-size bound, wall-clock deadline);
//! a capped run is reported as such and never silently truncated into a
//! wrong answer.

use crate::detmat::IdealData;
use crate::error::CascadeError;
use crate::field::SplitMix64;
use crate::linalg::{univariate, FieldMatrix};
use crate::monomial::{
    mono_div, mono_divides, mono_gcd_is_one, mono_lcm, mono_zero, weighted_deg, Mono,
    MonomialOrder,
};
use crate::poly::{make_ring, random_form, Polynomial, Ring};
use sha2::{Digest, Sha256};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;
use std::time::Instant;

#[derive(Clone, Copy, Debug, Default)]
pub struct GbConfig {
    /// Stop (capped) when the smallest remaining sugar degree exceeds this.
    pub max_degree: Option<u32>,
    /// Stop (capped) when the intermediate basis grows beyond this size.
    pub max_basis: Option<usize>,
    /// Stop (capped) at this instant.
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug, Default)]
pub struct GbStats {
    pub pairs_considered: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_sugar: u32,
}

#[derive(Clone)]
pub struct GroebnerResult {
    pub ring: Ring,
    /// Reduced Gröbner basis when `capped` is `None`; the partial basis
    /// otherwise.
    pub basis: Vec<Polynomial>,
    pub capped: Option<String>,
    pub stats: GbStats,
}

impl GroebnerResult {
    pub fn leads(&self) -> Vec<Mono> {
        self.basis
            .iter()
            .filter_map(|g| g.lead().map(|(m, _)| m.clone()))
            .collect()
    }

    pub fn require_complete(&self) -> Result<(), CascadeError> {
        match &self.capped {
            None => Ok(()),
            Some(msg) => Err(CascadeError::Capped(msg.clone())),
        }
    }
}

/// Full normal form of `f` with respect to `basis` (every term reduced).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring.clone();
    let fp = ring.fp();
    let mut work = f.clone();
    let mut out: Vec<(Mono, u64)> = Vec::new();
    'outer: while let Some((m, c)) = work.lead().cloned() {
        for g in basis {
            let (gm, gc) = g.lead().expect("basis contains zero polynomial");
            if mono_divides(gm, &m) {
                let q = mono_div(&m, gm);
                let factor = fp.mul(c, fp.inv(*gc));
                work = work.sub(&g.mul_term(&q, factor));
                continue 'outer;
            }
        }
        out.push((m, c));
        work.terms.remove(0);
    }
    Polynomial { ring, terms: out }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

fn spoly(f: &Polynomial, g: &Polynomial, lcm: &Mono) -> Polynomial {
    let fp = f.ring.fp();
    let (fm, fc) = f.lead().unwrap();
    let (gm, gc) = g.lead().unwrap();
    let a = f.mul_term(&mono_div(lcm, fm), fp.inv(*fc));
    let b = g.mul_term(&mono_div(lcm, gm), fp.inv(*gc));
    a.sub(&b)
}

/// Buchberger's algorithm with sugar selection and the Gebauer–Möller
/// criteria. Returns a reduced Gröbner basis unless a cap fires.
pub fn groebner(ideal: &IdealData, config: &GbConfig) -> GroebnerResult {
    let ring = ideal.ring.clone();
    let weights = &ring.weights;
    let mut stats = GbStats::default();

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add_generator = |basis: &mut Vec<Polynomial>,
                             sugars: &mut Vec<u32>,
                             pairs: &mut Vec<Pair>,
                             h: Polynomial,
                             sugar: u32| {
        let t = basis.len();
        let ht = h.lead().unwrap().0.clone();
        // Gebauer–Möller update.
        // B-criterion on old pairs: drop (i,j) when the new lead divides
        // lcm(i,j) strictly differently from both mixed lcms.
        pairs.retain(|p| {
            let l = &p.lcm;
            if !mono_divides(&ht, l) {
                return true;
            }
            let li = mono_lcm(&basis[p.i].lead().unwrap().0, &ht);
            let lj = mono_lcm(&basis[p.j].lead().unwrap().0, &ht);
            li == *l || lj == *l
        });
        // candidate new pairs
        let mut cand: Vec<Pair> = (0..t)
            .map(|i| {
                let li = &basis[i].lead().unwrap().0;
                let l = mono_lcm(li, &ht);
                let s = (sugars[i] + weighted_deg(&mono_div(&l, li), weights))
                    .max(sugar + weighted_deg(&mono_div(&l, &ht), weights));
                Pair { i, j: t, lcm: l, sugar: s }
            })
            .collect();
        // M-criterion: drop a pair when another new pair's lcm strictly
        // divides its lcm.
        let keep: Vec<bool> = cand
            .iter()
            .map(|p| {
                !cand.iter().any(|q| {
                    q.lcm != p.lcm && mono_divides(&q.lcm, &p.lcm)
                })
            })
            .collect();
        let mut cand: Vec<Pair> = cand
            .drain(..)
            .zip(keep)
            .filter_map(|(p, k)| if k { Some(p) } else { None })
            .collect();
        // F-criterion: one pair per lcm value, preferring a coprime-lead
        // representative (which the B1-criterion then discards).
        let mut kept: Vec<Pair> = Vec::new();
        for p in cand.drain(..) {
            if let Some(existing) = kept.iter_mut().find(|q| q.lcm == p.lcm) {
                let p_coprime = mono_gcd_is_one(&basis[p.i].lead().unwrap().0, &ht);
                let e_coprime = mono_gcd_is_one(&basis[existing.i].lead().unwrap().0, &ht);
                if p_coprime && !e_coprime {
                    *existing = p;
                }
            } else {
                kept.push(p);
            }
        }
        // B1-criterion: coprime leading monomials reduce to zero.
        kept.retain(|p| !mono_gcd_is_one(&basis[p.i].lead().unwrap().0, &ht));
        pairs.extend(kept);
        basis.push(h);
        sugars.push(sugar);
    };

    for g in &ideal.generators {
        if g.is_zero() {
            continue;
        }
        let sugar = g.degree().unwrap_or(0);
        let h = normal_form(g, &basis);
        if !h.is_zero() {
            add_generator(&mut basis, &mut sugars, &mut pairs, h.monic(), sugar);
        }
    }

    let mut capped: Option<String> = None;
    while !pairs.is_empty() {
        if let Some(deadline) = config.deadline {
            if Instant::now() >= deadline {
                capped = Some(format!(
                    "deadline reached with {} pairs outstanding, basis size {}",
                    pairs.len(),
                    basis.len()
                ));
                break;
            }
        }
        if let Some(mb) = config.max_basis {
            if basis.len() > mb {
                capped = Some(format!("basis size exceeded cap {mb}"));
                break;
            }
        }
        // normal selection refined by sugar
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| ring.cmp(&b.lcm, &a.lcm)) // smaller lcm first
            })
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);
        if let Some(md) = config.max_degree {
            if pair.sugar > md {
                capped = Some(format!(
                    "sugar degree {} exceeded cap {md}",
                    pair.sugar
                ));
                break;
            }
        }
        stats.pairs_considered += 1;
        stats.max_sugar = stats.max_sugar.max(pair.sugar);
        let s = spoly(&basis[pair.i], &basis[pair.j], &pair.lcm);
        let h = normal_form(&s, &basis);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        stats.pairs_reduced += 1;
        let sugar = pair.sugar.max(h.degree().unwrap_or(0));
        add_generator(&mut basis, &mut sugars, &mut pairs, h.monic(), sugar);
    }

    let basis = if capped.is_none() {
        reduce_basis(&ring, basis)
    } else {
        basis
    };
    GroebnerResult { ring, basis, capped, stats }
}

/// Interreduce to the unique reduced Gröbner basis (monic, descending leads).
fn reduce_basis(ring: &Ring, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose lead is divisible by another lead
    let leads: Vec<Mono> = basis.iter().map(|g| g.lead().unwrap().0.clone()).collect();
    let minimal: Vec<bool> = leads
        .iter()
        .enumerate()
        .map(|(i, m)| {
            !leads.iter().enumerate().any(|(j, l)| {
                j != i && mono_divides(l, m) && (*l != *m || j < i)
            })
        })
        .collect();
    let kept: Vec<Polynomial> = basis
        .drain(..)
        .zip(minimal)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    let mut out: Vec<Polynomial> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(&kept[i], &others);
        if !r.is_zero() {
            out.push(r.monic());
        }
    }
    out.sort_by(|a, b| ring.cmp(&b.lead().unwrap().0, &a.lead().unwrap().0));
    out
}

// ---------------------------------------------------------------------------
// Hilbert series data
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Numerator of the Hilbert series over (1-t)^n, ascending coefficients.
    pub numerator: Vec<i64>,
    /// Projective dimension of the scheme cut out by the ideal (-1 for the
    /// unit ideal / empty scheme).
    pub dim: i64,
    pub degree: i64,
}

fn series_sub(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] -= c;
    }
}

fn series_add(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += c;
    }
}

fn minimalize(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort_by_key(|m| m.iter().map(|&e| e as u32).sum::<u32>());
    let mut out: Vec<Mono> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| mono_divides(h, &g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator N(t) of the Hilbert series N(t)/(1-t^{w_1})...(1-t^{w_n}) of
/// R/(monomial ideal), by pivot recursion N(I) = N(I + (p)) + t^deg(p) N(I:p).
pub fn hilbert_numerator(leads: &[Mono], weights: &[u32]) -> Vec<i64> {
    let gens = minimalize(leads.to_vec());
    hilbert_rec(&gens, weights)
}

fn hilbert_rec(gens: &[Mono], weights: &[u32]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return vec![0];
    }
    // pairwise coprime: product of (1 - t^deg)
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens.iter().skip(i + 1).all(|b| mono_gcd_is_one(a, b)));
    if coprime {
        let mut acc = vec![1i64];
        for g in gens {
            let d = weighted_deg(g, weights) as usize;
            let copy = acc.clone();
            series_sub(&mut acc, &copy, d);
        }
        return acc;
    }
    // pivot: the variable occurring in the most generators
    let n = weights.len();
    let mut counts = vec![0usize; n];
    for g in gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let v = counts
        .iter()
        .enumerate()
        .max_by_key(|&(_, c)| *c)
        .map(|(i, _)| i)
        .unwrap();
    let mut pivot = mono_zero(n);
    pivot[v] = 1;
    // I + (x_v): generators not divisible by x_v, plus x_v itself
    let mut plus: Vec<Mono> = gens.iter().filter(|g| g[v] == 0).cloned().collect();
    plus.push(pivot.clone());
    // I : x_v
    let colon: Vec<Mono> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            if h[v] > 0 {
                h[v] -= 1;
            }
            h
        })
        .collect();
    let mut acc = hilbert_rec(&minimalize(plus), weights);
    let colon_num = hilbert_rec(&minimalize(colon), weights);
    series_add(&mut acc, &colon_num, weights[v] as usize);
    acc
}

/// Dimension and degree from a completed Gröbner basis. Restricted to
/// weight-1 gradings, where cancelling (1-t) factors against (1-t)^n gives
/// both invariants directly.
pub fn hilbert_data(gb: &GroebnerResult) -> Result<HilbertData, CascadeError> {
    gb.require_complete()?;
    if gb.ring.weights.iter().any(|&w| w != 1) {
        return Err(CascadeError::Degree(
            "dimension/degree extraction requires a weight-1 grading".into(),
        ));
    }
    let n = gb.ring.nvars() as i64;
    let mut num = hilbert_numerator(&gb.leads(), &gb.ring.weights);
    while num.last() == Some(&0) {
        num.pop();
    }
    let numerator = num.clone();
    if num == vec![0] || num.is_empty() {
        // unit ideal: empty scheme
        return Ok(HilbertData { numerator: vec![0], dim: -1, degree: 0 });
    }
    // divide out (1-t) while possible
    let mut k = 0i64;
    loop {
        if num.iter().sum::<i64>() != 0 {
            break;
        }
        // num = (1-t) * q  =>  q by cumulative sums
        let mut q = Vec::with_capacity(num.len().saturating_sub(1));
        let mut acc = 0i64;
        for &c in num.iter().take(num.len() - 1) {
            acc += c;
            q.push(acc);
        }
        num = q;
        k += 1;
    }
    let degree: i64 = num.iter().sum();
    Ok(HilbertData {
        numerator,
        dim: (n - k) - 1,
        degree,
    })
}

// ---------------------------------------------------------------------------
// Ideal operations
// ---------------------------------------------------------------------------

pub fn ideal_membership(f: &Polynomial, gb: &GroebnerResult) -> Result<bool, CascadeError> {
    gb.require_complete()?;
    if *f.ring != *gb.ring {
        return Err(CascadeError::RingMismatch);
    }
    Ok(normal_form(f, &gb.basis).is_zero())
}

/// Does every generator of `inner` lie in the ideal with Gröbner basis `gb`?
pub fn ideal_contains(gb: &GroebnerResult, inner: &IdealData) -> Result<bool, CascadeError> {
    for g in &inner.generators {
        if !ideal_membership(g, gb)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn ideal_sum(a: &IdealData, b: &IdealData) -> Result<IdealData, CascadeError> {
    if *a.ring != *b.ring {
        return Err(CascadeError::RingMismatch);
    }
    let mut gens = a.generators.clone();
    gens.extend(b.generators.iter().cloned());
    Ok(IdealData::new(
        &a.ring,
        gens,
        &format!("({}) + ({})", a.label, b.label),
    ))
}

/// Helper: the ring with one fresh elimination variable prepended, under a
/// Block(1) order.
fn ring_with_prefix_var(ring: &Ring, name: &str) -> Result<Ring, CascadeError> {
    let mut vars: Vec<&str> = vec![name];
    let owned: Vec<String> = ring.vars.clone();
    vars.extend(owned.iter().map(|s| s.as_str()));
    let mut weights = vec![1u32];
    weights.extend_from_slice(&ring.weights);
    make_ring(&vars, &weights, MonomialOrder::Block(1), ring.field)
}

fn lift_to_prefixed(f: &Polynomial, target: &Ring) -> Polynomial {
    let terms = f
        .terms
        .iter()
        .map(|(m, c)| {
            let mut e = mono_zero(target.nvars());
            for (i, &x) in m.iter().enumerate() {
                e[i + 1] = x;
            }
            (e, *c)
        })
        .collect();
    Polynomial::from_terms(target, terms)
}

fn drop_prefix_var(f: &Polynomial, target: &Ring) -> Polynomial {
    let terms = f
        .terms
        .iter()
        .map(|(m, c)| {
            debug_assert_eq!(m[0], 0);
            let mut e = mono_zero(target.nvars());
            for i in 0..target.nvars() {
                e[i] = m[i + 1];
            }
            (e, *c)
        })
        .collect();
    Polynomial::from_terms(target, terms)
}

/// Ideal intersection via the single-tag trick: eliminate t from
/// t*I + (1-t)*J.
pub fn ideal_intersection(
    a: &IdealData,
    b: &IdealData,
    config: &GbConfig,
) -> Result<IdealData, CascadeError> {
    if *a.ring != *b.ring {
        return Err(CascadeError::RingMismatch);
    }
    let big = ring_with_prefix_var(&a.ring, "@t")?;
    let t = Polynomial::var(&big, 0);
    let one_minus_t = Polynomial::one(&big).sub(&t);
    let mut gens: Vec<Polynomial> = a
        .generators
        .iter()
        .map(|g| t.mul(&lift_to_prefixed(g, &big)))
        .collect();
    gens.extend(
        b.generators
            .iter()
            .map(|g| one_minus_t.mul(&lift_to_prefixed(g, &big))),
    );
    let work = IdealData::new(&big, gens, "intersection workspace");
    let gb = groebner(&work, config);
    gb.require_complete()?;
    let kept: Vec<Polynomial> = gb
        .basis
        .iter()
        .filter(|g| g.terms.iter().all(|(m, _)| m[0] == 0))
        .map(|g| drop_prefix_var(g, &a.ring))
        .collect();
    Ok(IdealData::new(
        &a.ring,
        kept,
        &format!("({}) ∩ ({})", a.label, b.label),
    ))
}

/// Exact division g / f; errors unless f divides g.
pub fn exact_div(g: &Polynomial, f: &Polynomial) -> Result<Polynomial, CascadeError> {
    if f.is_zero() {
        return Err(CascadeError::Invalid("division by the zero polynomial".into()));
    }
    let fp = g.ring.fp();
    let (fm, fc) = f.lead().unwrap();
    let fc_inv = fp.inv(*fc);
    let mut rest = g.clone();
    let mut q = Polynomial::zero(&g.ring);
    while let Some((m, c)) = rest.lead().cloned() {
        if !mono_divides(fm, &m) {
            return Err(CascadeError::Invalid(
                "exact division failed: divisor does not divide".into(),
            ));
        }
        let qm = mono_div(&m, fm);
        let qc = fp.mul(c, fc_inv);
        let t = Polynomial { ring: g.ring.clone(), terms: vec![(qm, qc)] };
        rest = rest.sub(&f.mul(&t));
        q = q.add(&t);
    }
    Ok(q)
}

/// Ideal quotient (I : f) computed as (I ∩ (f)) / f.
pub fn ideal_quotient(
    a: &IdealData,
    f: &Polynomial,
    config: &GbConfig,
) -> Result<IdealData, CascadeError> {
    if f.is_zero() {
        return Err(CascadeError::Invalid("quotient by zero polynomial".into()));
    }
    let principal = IdealData::new(&a.ring, vec![f.clone()], "principal");
    let inter = ideal_intersection(a, &principal, config)?;
    let gens: Result<Vec<Polynomial>, CascadeError> = inter
        .generators
        .iter()
        .map(|g| exact_div(g, f))
        .collect();
    Ok(IdealData::new(
        &a.ring,
        gens?,
        &format!("({}) : (f)", a.label),
    ))
}

/// Saturation-style iterated quotient (I : f^∞) by stabilizing (I : f).
pub fn ideal_saturation(
    a: &IdealData,
    f: &Polynomial,
    config: &GbConfig,
) -> Result<IdealData, CascadeError> {
    let mut current = a.clone();
    for _ in 0..64 {
        let next = ideal_quotient(&current, f, config)?;
        let gb = groebner(&next, config);
        gb.require_complete()?;
        let cur_gb = groebner(&current, config);
        cur_gb.require_complete()?;
        if ideal_contains(&cur_gb, &next)? {
            return Ok(current);
        }
        current = next;
    }
    Err(CascadeError::Capped("saturation did not stabilize in 64 steps".into()))
}

/// Eliminate the named variables: computes a Gröbner basis under a block
/// order with those variables in the leading block, and returns the
/// generators free of them in the ring of the remaining variables.
pub fn eliminate(
    ideal: &IdealData,
    drop: &[&str],
    config: &GbConfig,
) -> Result<IdealData, CascadeError> {
    let ring = &ideal.ring;
    for name in drop {
        if ring.var_index(name).is_none() {
            return Err(CascadeError::Invalid(format!("unknown variable {name}")));
        }
    }
    let dropped: Vec<usize> = drop
        .iter()
        .map(|name| ring.var_index(name).unwrap())
        .collect();
    let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !dropped.contains(i)).collect();
    let perm: Vec<usize> = dropped.iter().chain(keep.iter()).copied().collect();
    let vars: Vec<&str> = perm.iter().map(|&i| ring.vars[i].as_str()).collect();
    let weights: Vec<u32> = perm.iter().map(|&i| ring.weights[i]).collect();
    let work_ring = make_ring(&vars, &weights, MonomialOrder::Block(drop.len()), ring.field)?;
    let reindex = |f: &Polynomial, target: &Ring, map: &[usize]| -> Polynomial {
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = mono_zero(target.nvars());
                for (pos, &src) in map.iter().enumerate() {
                    e[pos] = m[src];
                }
                (e, *c)
            })
            .collect();
        Polynomial::from_terms(target, terms)
    };
    let gens: Vec<Polynomial> = ideal
        .generators
        .iter()
        .map(|g| reindex(g, &work_ring, &perm))
        .collect();
    let gb = groebner(&IdealData::new(&work_ring, gens, "elimination workspace"), config);
    gb.require_complete()?;
    let k = drop.len();
    let out_vars: Vec<&str> = keep.iter().map(|&i| ring.vars[i].as_str()).collect();
    let out_weights: Vec<u32> = keep.iter().map(|&i| ring.weights[i]).collect();
    let out_ring = make_ring(&out_vars, &out_weights, ring.order, ring.field)?;
    let kept: Vec<Polynomial> = gb
        .basis
        .iter()
        .filter(|g| g.terms.iter().all(|(m, _)| m.iter().take(k).all(|&e| e == 0)))
        .map(|g| {
            let map: Vec<usize> = (k..work_ring.nvars()).collect();
            reindex(g, &out_ring, &map)
        })
        .collect();
    Ok(IdealData::new(
        &out_ring,
        kept,
        &format!("eliminate({:?}, {})", drop, ideal.label),
    ))
}

/// Partial derivative with respect to variable `v`.
pub fn derivative(f: &Polynomial, v: usize) -> Polynomial {
    let fp = f.ring.fp();
    let terms = f
        .terms
        .iter()
        .filter(|(m, _)| m[v] > 0)
        .map(|(m, c)| {
            let mut e = m.clone();
            e[v] -= 1;
            (e, fp.mul(*c, (m[v] as u64) % fp.p))
        })
        .collect();
    Polynomial::from_terms(&f.ring, terms)
}

/// The ideal together with the size-`codim` minors of the Jacobian matrix of
/// its generators: the singular locus test ideal.
pub fn jacobian_ideal(ideal: &IdealData, codim: usize) -> Result<IdealData, CascadeError> {
    let ring = &ideal.ring;
    let n = ring.nvars();
    let rows: Vec<Vec<Polynomial>> = ideal
        .generators
        .iter()
        .map(|g| (0..n).map(|v| derivative(g, v)).collect())
        .collect();
    if codim == 0 || codim > rows.len().min(n) {
        return Err(CascadeError::Invalid(format!(
            "jacobian minor size {codim} out of range"
        )));
    }
    let mut gens = ideal.generators.clone();
    for rs in subsets(rows.len(), codim) {
        for cs in subsets(n, codim) {
            let sub: Vec<Vec<Polynomial>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                .collect();
            let d = crate::detmat::poly_det(&sub, ring);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    Ok(IdealData::new(
        ring,
        gens,
        &format!("jacobian_{codim}({})", ideal.label),
    ))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Distinct point counting
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCount {
    /// Length of the zero-dimensional scheme (points with multiplicity).
    pub length: usize,
    /// Number of distinct points.
    pub distinct: usize,
}

/// Count the points of a zero-dimensional projective scheme over GF(p):
/// dehomogenize on a seeded generic hyperplane, read off the quotient basis,
/// then count distinct eigenvalues of a seeded generic linear functional via
/// the squarefree degree of its characteristic polynomial. The whole
/// procedure runs twice with independently derived seeds and the two answers
/// must agree (the standard guard for probabilistic genericity).
pub fn distinct_point_count(
    ideal: &IdealData,
    seed: u64,
    config: &GbConfig,
) -> Result<PointCount, CascadeError> {
    if ideal.ring.weights.iter().any(|&w| w != 1) {
        return Err(CascadeError::Degree(
            "point counting requires a weight-1 grading".into(),
        ));
    }
    let first = point_count_once(ideal, SplitMix64::derive(seed, 0x9d).next_u64(), config)?;
    let second = point_count_once(ideal, SplitMix64::derive(seed, 0x2e).next_u64(), config)?;
    if first != second {
        return Err(CascadeError::Invalid(format!(
            "point counts disagree between independent seeds: {:?} vs {:?}",
            first, second
        )));
    }
    Ok(first)
}

fn point_count_once(
    ideal: &IdealData,
    run_seed: u64,
    config: &GbConfig,
) -> Result<PointCount, CascadeError> {
    let ring = &ideal.ring;
    let fp = ring.fp();
    // generic affine chart: adjoin L - 1 for a seeded hyperplane L
    let chart = random_form(ring, 1, SplitMix64::derive(run_seed, 1).next_u64())?;
    let mut gens = ideal.generators.clone();
    gens.push(chart.sub(&Polynomial::one(ring)));
    let gb = groebner(&IdealData::new(ring, gens, "affine chart"), config);
    gb.require_complete()?;
    let leads = gb.leads();
    if leads.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return Ok(PointCount { length: 0, distinct: 0 });
    }
    // zero-dimensionality: each variable needs a pure-power leading monomial
    for v in 0..ring.nvars() {
        let has = leads
            .iter()
            .any(|m| m[v] > 0 && m.iter().enumerate().all(|(i, &e)| i == v || e == 0));
        if !has {
            return Err(CascadeError::Invalid(format!(
                "scheme is not zero-dimensional in the chart (variable {})",
                ring.vars[v]
            )));
        }
    }
    // standard monomial basis of the quotient, by breadth-first closure
    let mut basis_monos: Vec<Mono> = vec![mono_zero(ring.nvars())];
    let mut index: HashMap<Mono, usize> = HashMap::new();
    index.insert(basis_monos[0].clone(), 0);
    let mut head = 0usize;
    while head < basis_monos.len() {
        let m = basis_monos[head].clone();
        head += 1;
        for v in 0..ring.nvars() {
            let mut e = m.clone();
            e[v] += 1;
            if index.contains_key(&e) {
                continue;
            }
            if leads.iter().any(|l| mono_divides(l, &e)) {
                continue;
            }
            index.insert(e.clone(), basis_monos.len());
            basis_monos.push(e);
            if basis_monos.len() > 20_000 {
                return Err(CascadeError::Capped(
                    "quotient basis exceeded 20000 monomials".into(),
                ));
            }
        }
    }
    let dim = basis_monos.len();
    // multiplication matrix of a seeded generic linear functional
    let ell = random_form(ring, 1, SplitMix64::derive(run_seed, 2).next_u64())?;
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(dim);
    for m in &basis_monos {
        let f = ell.mul_term(m, 1);
        let nf = normal_form(&f, &gb.basis);
        let mut col = vec![0u64; dim];
        for (mm, c) in &nf.terms {
            let Some(&k) = index.get(mm) else {
                return Err(CascadeError::Linalg(
                    "normal form left the standard monomial basis".into(),
                ));
            };
            col[k] = *c;
        }
        cols.push(col);
    }
    let mut a = vec![vec![0u64; dim]; dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            a[i][j] = v;
        }
    }
    let cp = FieldMatrix::new(fp, a).charpoly();
    let distinct = univariate::squarefree_degree(fp, &cp);
    Ok(PointCount { length: dim, distinct })
}

// ---------------------------------------------------------------------------
// Gröbner basis cache
// ---------------------------------------------------------------------------

const CACHE_MAGIC: &[u8; 4] = b"CGB1";

/// Content-addressed cache key: SHA-256 over the ring data and the generator
/// list in their given order.
pub fn cache_key(ideal: &IdealData) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "vars={:?};weights={:?};order={:?};field={:?};",
        ideal.ring.vars, ideal.ring.weights, ideal.ring.order, ideal.ring.field
    ));
    for g in &ideal.generators {
        h.update(g.to_string());
        h.update(";");
    }
    let d = h.finalize();
    d.iter().map(|b| format!("{b:02x}")).collect()
}

fn write_u32(w: &mut impl Write, v: u32) -> std::io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

fn read_u32(r: &mut impl Read) -> std::io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

/// Store a completed basis (length-prefixed binary records).
pub fn store_cached_gb(
    dir: &Path,
    ideal: &IdealData,
    gb: &GroebnerResult,
) -> Result<(), CascadeError> {
    gb.require_complete()?;
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.gb", cache_key(ideal)));
    let tmp = dir.join(format!("{}.gb.tmp", cache_key(ideal)));
    let mut w = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
    w.write_all(CACHE_MAGIC)?;
    let n = ideal.ring.nvars() as u32;
    write_u32(&mut w, n)?;
    write_u32(&mut w, gb.basis.len() as u32)?;
    for g in &gb.basis {
        write_u32(&mut w, g.terms.len() as u32)?;
        for (m, c) in &g.terms {
            w.write_all(&c.to_le_bytes())?;
            for &e in m.iter() {
                w.write_all(&e.to_le_bytes())?;
            }
        }
    }
    w.flush()?;
    drop(w);
    std::fs::rename(&tmp, &path)?;
    Ok(())
}

/// Load a cached basis; `None` on miss or on any malformed record.
pub fn load_cached_gb(dir: &Path, ideal: &IdealData) -> Option<GroebnerResult> {
    let path = dir.join(format!("{}.gb", cache_key(ideal)));
    let mut r = std::io::BufReader::new(std::fs::File::open(path).ok()?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).ok()?;
    if &magic != CACHE_MAGIC {
        return None;
    }
    let n = read_u32(&mut r).ok()? as usize;
    if n != ideal.ring.nvars() {
        return None;
    }
    let npolys = read_u32(&mut r).ok()? as usize;
    let mut basis = Vec::with_capacity(npolys);
    for _ in 0..npolys {
        let nterms = read_u32(&mut r).ok()? as usize;
        let mut terms = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let mut cb = [0u8; 8];
            r.read_exact(&mut cb).ok()?;
            let c = u64::from_le_bytes(cb);
            let mut m = mono_zero(n);
            for e in m.iter_mut() {
                let mut eb = [0u8; 2];
                r.read_exact(&mut eb).ok()?;
                *e = u16::from_le_bytes(eb);
            }
            terms.push((m, c));
        }
        basis.push(Polynomial { ring: ideal.ring.clone(), terms });
    }
    // sanity: canonical term order
    for g in &basis {
        for w in g.terms.windows(2) {
            if ideal.ring.cmp(&w[0].0, &w[1].0) != Ordering::Greater {
                return None;
            }
        }
    }
    Some(GroebnerResult {
        ring: ideal.ring.clone(),
        basis,
        capped: None,
        stats: GbStats::default(),
    })
}

/// Gröbner basis with optional on-disk caching.
pub fn groebner_cached(
    ideal: &IdealData,
    config: &GbConfig,
    cache_dir: Option<&Path>,
) -> GroebnerResult {
    if let Some(dir) = cache_dir {
        if let Some(hit) = load_cached_gb(dir, ideal) {
            return hit;
        }
    }
    let gb = groebner(ideal, config);
    if gb.capped.is_none() {
        if let Some(dir) = cache_dir {
            let _ = store_cached_gb(dir, ideal, &gb);
        }
    }
    gb
}
