//! Buchberger's algorithm over free modules `S^r` (rank one for ideals),
//! with the Gebauer–Möller criteria and sugar-degree pair selection.

use std::cmp::Ordering;

use crate::polyring::{Monomial, MonomialOrder, Polynomial, Rational};

/// Monomial order used internally by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum TermOrder {
    Mono(MonomialOrder),
    /// Elimination of the trailing `k` variables for inputs homogeneous in
    /// the leading variables (the trailing ones having weight zero): compare
    /// degree in the leading variables, then degree in the trailing ones,
    /// then grevlex.
    HomElim(usize),
}

/// How components of a free module are compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum ModuleOrder {
    /// Term over position; the degree of `m·e_c` is `deg m + shifts[c]`.
    Top,
    /// Position over term: lower component index dominates.
    Pot,
}

#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub nvars: usize,
    pub order: TermOrder,
    pub module: ModuleOrder,
    pub shifts: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub m: Monomial,
    pub c: u32,
}

pub(crate) type Vector = Vec<(Term, Rational)>;

impl Ring {
    pub fn ideal(nvars: usize, order: TermOrder) -> Ring {
        Ring { nvars, order, module: ModuleOrder::Top, shifts: vec![0] }
    }

    pub fn module(nvars: usize, order: MonomialOrder, module: ModuleOrder, shifts: Vec<u32>) -> Ring {
        Ring { nvars, order: TermOrder::Mono(order), module, shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            TermOrder::Mono(o) => o.cmp(a, b, self.nvars),
            TermOrder::HomElim(k) => {
                let split = self.nvars - k;
                let (wa, wb) = (a.partial_degree(0..split), b.partial_degree(0..split));
                match wa.cmp(&wb) {
                    Ordering::Equal => {}
                    o => return o,
                }
                let (ta, tb) = (a.degree() - wa, b.degree() - wb);
                match ta.cmp(&tb) {
                    Ordering::Equal => a.cmp_grevlex(b, self.nvars),
                    o => o,
                }
            }
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        match self.module {
            ModuleOrder::Pot => match b.c.cmp(&a.c) {
                Ordering::Equal => self.cmp_mono(&a.m, &b.m),
                o => o,
            },
            ModuleOrder::Top => {
                if a.c != b.c && self.graded() {
                    let da = a.m.degree() + self.shifts[a.c as usize];
                    let db = b.m.degree() + self.shifts[b.c as usize];
                    match da.cmp(&db) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                match self.cmp_mono(&a.m, &b.m) {
                    Ordering::Equal => b.c.cmp(&a.c),
                    o => o,
                }
            }
        }
    }

    fn graded(&self) -> bool {
        matches!(self.order, TermOrder::Mono(MonomialOrder::Grevlex))
    }

    /// Degree used for sugar bookkeeping.
    #[inline]
    pub fn term_degree(&self, t: &Term) -> u32 {
        let base = match self.order {
            TermOrder::HomElim(k) => t.m.partial_degree(0..self.nvars - k),
            _ => t.m.degree(),
        };
        base + self.shifts[t.c as usize]
    }

    pub fn vector_degree(&self, v: &Vector) -> u32 {
        v.iter().map(|(t, _)| self.term_degree(t)).max().unwrap_or(0)
    }

    pub fn sort(&self, v: &mut Vector) {
        v.sort_by(|a, b| self.cmp(&b.0, &a.0));
    }

    pub fn from_poly(&self, f: &Polynomial, comp: u32) -> Vector {
        let mut v: Vector = f.terms().iter().map(|(m, c)| (Term { m: *m, c: comp }, c.clone())).collect();
        if self.order != TermOrder::Mono(MonomialOrder::Grevlex) {
            self.sort(&mut v);
        }
        v
    }

    /// Component `c` of a vector as a polynomial.
    pub fn component(&self, v: &Vector, c: u32) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            v.iter().filter(|(t, _)| t.c == c).map(|(t, a)| (t.m, a.clone())),
        )
    }

    pub fn to_poly(&self, v: &Vector) -> Polynomial {
        self.component(v, 0)
    }

    /// `p − c·m·g`, with the leading terms assumed to cancel when `skip_lead`.
    fn sub_mul(&self, p: &[(Term, Rational)], c: &Rational, m: &Monomial, g: &Vector, skip_lead: bool) -> Vector {
        let g = if skip_lead { &g[1..] } else { &g[..] };
        let p = if skip_lead { &p[1..] } else { p };
        let mut out = Vec::with_capacity(p.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < p.len() || j < g.len() {
            if j == g.len() {
                out.extend_from_slice(&p[i..]);
                break;
            }
            let gt = Term { m: g[j].0.m.mul(m), c: g[j].0.c };
            if i == p.len() {
                out.push((gt, -&(c * &g[j].1)));
                j += 1;
                continue;
            }
            match self.cmp(&p[i].0, &gt) {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gt, -&(c * &g[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &p[i].1 - &(c * &g[j].1);
                    if !s.is_zero() {
                        out.push((gt, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }
}

pub(crate) fn make_monic(v: &mut Vector) {
    if let Some((_, c)) = v.first() {
        if !c.is_one() {
            let inv = c.recip();
            for (_, a) in v.iter_mut() {
                *a = &*a * &inv;
            }
        }
    }
}

#[inline]
fn sev(m: &Monomial, nvars: usize) -> u32 {
    let mut s = 0u32;
    for i in 0..nvars {
        if m.exp(i) > 0 {
            s |= 1 << i;
        }
    }
    s
}

/// A basis with fast lead-term divisibility lookup.
#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub ring: Ring,
    pub polys: Vec<Vector>,
    leads: Vec<(Term, u32)>,
    active: Vec<bool>,
}

impl Basis {
    pub fn new(ring: Ring) -> Self {
        Basis { ring, polys: Vec::new(), leads: Vec::new(), active: Vec::new() }
    }

    /// Basis of already reduced (monic, sorted) vectors.
    pub fn from_reduced(ring: Ring, polys: Vec<Vector>) -> Self {
        let mut b = Basis::new(ring);
        for p in polys {
            b.push(p);
        }
        b
    }

    fn push(&mut self, p: Vector) -> usize {
        let t = p[0].0;
        self.leads.push((t, sev(&t.m, self.ring.nvars)));
        self.polys.push(p);
        self.active.push(true);
        self.polys.len() - 1
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        let s = sev(&t.m, self.ring.nvars);
        for (i, (lt, ls)) in self.leads.iter().enumerate() {
            if !self.active[i] || lt.c != t.c || ls & !s != 0 {
                continue;
            }
            if lt.m.divides(&t.m) {
                return Some(i);
            }
        }
        None
    }

    /// Normal form; `full` also reduces non-leading terms.
    pub fn reduce(&self, p: Vector, full: bool) -> Vector {
        let ring = &self.ring;
        let mut rem: Vector = Vec::new();
        let mut p = p;
        loop {
            let Some((t, c)) = p.first().cloned() else { break };
            match self.find_reducer(&t) {
                Some(i) => {
                    let g = &self.polys[i];
                    let q = g[0].0.m.divide_into(&t.m).expect("divisible");
                    let coef = &c / &g[0].1;
                    p = ring.sub_mul(&p, &coef, &q, g, true);
                }
                None => {
                    if !full {
                        rem.extend(p);
                        return rem;
                    }
                    rem.push((t, c));
                    p.remove(0);
                }
            }
        }
        rem
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
    sugar: u32,
}

/// Options for a Buchberger run.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct GbOptions {
    /// Skip pairs (and inputs) of sugar degree above this bound. Only exact
    /// for homogeneous inputs in a graded order, up to the bound.
    pub degree_bound: Option<u32>,
    /// Stop as soon as a nonzero constant (rank one) is found.
    pub stop_on_unit: bool,
}

/// Reduced Gröbner basis (monic, sorted descending by lead term).
pub(crate) fn groebner(ring: &Ring, input: Vec<Vector>, opts: GbOptions) -> Vec<Vector> {
    let product_criterion = ring.rank() == 1;
    let mut basis = Basis::new(ring.clone());
    let mut sugars: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // Process inputs in increasing degree so low-degree elements reduce later ones.
    let mut inputs: Vec<Vector> = input.into_iter().filter(|v| !v.is_empty()).collect();
    inputs.sort_by(|a, b| ring.vector_degree(a).cmp(&ring.vector_degree(b)).then_with(|| ring.cmp(&a[0].0, &b[0].0)));
    let mut queue: std::collections::VecDeque<Vector> = inputs.into();

    loop {
        // Choose next: pending inputs of degree ≤ the smallest pair sugar go first.
        let min_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sugar.cmp(&b.sugar).then_with(|| ring.cmp(&a.lcm, &b.lcm)))
            .map(|(k, p)| (k, p.sugar));
        let next_input_deg = queue.front().map(|v| ring.vector_degree(v));
        let (h, sugar) = match (min_pair, next_input_deg) {
            (None, None) => break,
            (Some((_, s)), Some(d)) if d <= s => {
                let v = queue.pop_front().unwrap();
                (v, d)
            }
            (None, Some(d)) => (queue.pop_front().unwrap(), d),
            (Some((k, s)), _) => {
                let pr = pairs.swap_remove(k);
                (spoly(&basis, pr.i, pr.j), s)
            }
        };
        if opts.degree_bound.is_some_and(|b| sugar > b) {
            continue;
        }
        let mut h = basis.reduce(h, false);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if opts.stop_on_unit && ring.rank() == 1 && h[0].0.m.is_one() {
            return vec![h];
        }
        // Gebauer–Möller update.
        let lt_h = h[0].0;
        let hidx = basis.polys.len();
        let active: Vec<usize> = (0..basis.polys.len()).filter(|&i| basis.active[i]).collect();
        let mut cands: Vec<(usize, Term, bool)> = active
            .iter()
            .filter(|&&g| basis.leads[g].0.c == lt_h.c)
            .map(|&g| {
                let lg = basis.leads[g].0;
                (g, Term { m: lg.m.lcm(&lt_h.m), c: lt_h.c }, product_criterion && lg.m.is_coprime(&lt_h.m))
            })
            .collect();
        // Chain criterion among the new pairs.
        let mut keep: Vec<(usize, Term, bool)> = Vec::new();
        while let Some((g, l, coprime)) = cands.pop() {
            let dominated = !coprime
                && (cands.iter().any(|(_, l2, _)| l2.m.divides(&l.m))
                    || keep.iter().any(|(_, l2, _)| l2.m.divides(&l.m)));
            if !dominated {
                keep.push((g, l, coprime));
            }
        }
        // Remove pairs with equal lcms (keep one), drop coprime ones.
        let mut new_pairs: Vec<Pair> = Vec::new();
        for (g, l, coprime) in &keep {
            if *coprime {
                continue;
            }
            if new_pairs.iter().any(|p| p.lcm == *l) {
                continue;
            }
            let sg = sugars[*g] + ring.term_degree(l) - ring.term_degree(&basis.leads[*g].0);
            let shh = sugar + ring.term_degree(l) - ring.term_degree(&lt_h);
            new_pairs.push(Pair { i: *g, j: hidx, lcm: *l, sugar: sg.max(shh) });
        }
        // Prune old pairs via the chain criterion with h.
        pairs.retain(|p| {
            if !lt_h.m.divides(&p.lcm.m) || lt_h.c != p.lcm.c {
                return true;
            }
            let li = basis.leads[p.i].0.m.lcm(&lt_h.m);
            let lj = basis.leads[p.j].0.m.lcm(&lt_h.m);
            li == p.lcm.m || lj == p.lcm.m
        });
        pairs.extend(new_pairs);
        for &g in &active {
            let lg = basis.leads[g].0;
            if lg.c == lt_h.c && lt_h.m.divides(&lg.m) {
                basis.active[g] = false;
            }
        }
        basis.push(h);
        sugars.push(sugar);
    }
    interreduce(&basis)
}

fn spoly(basis: &Basis, i: usize, j: usize) -> Vector {
    let ring = &basis.ring;
    let (f, g) = (&basis.polys[i], &basis.polys[j]);
    let l = f[0].0.m.lcm(&g[0].0.m);
    let mf = f[0].0.m.divide_into(&l).unwrap();
    let mg = g[0].0.m.divide_into(&l).unwrap();
    // f, g are monic: S = mf·f − mg·g.
    let fm: Vector = f.iter().map(|(t, c)| (Term { m: t.m.mul(&mf), c: t.c }, c.clone())).collect();
    ring.sub_mul(&fm, &Rational::one(), &mg, g, true)
}

fn interreduce(basis: &Basis) -> Vec<Vector> {
    let ring = &basis.ring;
    let mut minimal: Vec<Vector> = Vec::new();
    let live: Vec<&Vector> = (0..basis.polys.len()).filter(|&i| basis.active[i]).map(|i| &basis.polys[i]).collect();
    for (k, p) in live.iter().enumerate() {
        let lt = p[0].0;
        let redundant = live.iter().enumerate().any(|(k2, q)| {
            let lq = q[0].0;
            k2 != k && lq.c == lt.c && lq.m.divides(&lt.m) && (lq.m != lt.m || k2 < k)
        });
        if !redundant {
            minimal.push((*p).clone());
        }
    }
    minimal.sort_by(|a, b| ring.cmp(&b[0].0, &a[0].0));
    let mut out: Vec<Vector> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Vector> = minimal.iter().enumerate().filter(|&(k2, _)| k2 != k).map(|(_, v)| v.clone()).collect();
        let b = Basis::from_reduced(ring.clone(), others);
        let p = &minimal[k];
        let mut tail = b.reduce(p[1..].to_vec(), true);
        let mut v = vec![p[0].clone()];
        v.append(&mut tail);
        make_monic(&mut v);
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> Ring {
        Ring::ideal(3, TermOrder::Mono(MonomialOrder::Grevlex))
    }

    #[test]
    fn two_generator_example() {
        let r = ring3();
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        let f = &x * &x;
        let g = &(&x * &y) + &(&x * &x);
        let gb = groebner(&r, vec![r.from_poly(&f, 0), r.from_poly(&g, 0)], GbOptions::default());
        let polys: Vec<Polynomial> = gb.iter().map(|v| r.to_poly(v)).collect();
        assert_eq!(polys, vec![f, &x * &y]);
    }

    #[test]
    fn unit_detection() {
        let r = ring3();
        let x = Polynomial::var(3, 0);
        let one = Polynomial::one(3);
        let gb = groebner(&r, vec![r.from_poly(&(&x + &one), 0), r.from_poly(&x, 0)], GbOptions::default());
        assert_eq!(gb.len(), 1);
        assert!(gb[0][0].0.m.is_one());
    }
}
