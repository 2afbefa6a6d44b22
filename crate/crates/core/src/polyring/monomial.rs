use std::cmp::Ordering;
use std::fmt;

/// Largest number of variables a ring may have (including auxiliary
/// elimination variables).
pub const MAX_VARS: usize = 16;

/// A power product `x_0^{e_0} ... x_{k-1}^{e_{k-1}}` stored inline.
///
/// Entries past the ring's variable count are always zero, so monomials of
/// rings with fewer variables embed into larger ones unchanged.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        assert!(i < MAX_VARS, "variable index {i} exceeds MAX_VARS");
        let mut m = Self::one();
        m.exps[i] = e;
        m.degree = e as u32;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u32).sum();
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Total degree restricted to the variables in `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (a, b) in exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut degree = 0;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
            degree += *a as u32;
        }
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut degree = 0;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
            degree += *a as u32;
        }
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lower the exponent of `x_i` by one (derivative bookkeeping).
    pub fn decrement(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        m.degree -= 1;
        Some(m)
    }

    /// Rewrite exponents through a variable map `old index -> new index`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..nvars {
            let e = self.exps[i];
            if e > 0 {
                m.exps[map[i]] += e;
                m.degree += e as u32;
            }
        }
        m
    }

    /// Drop variable `k`, shifting later variables down by one.
    pub fn without_var(&self, nvars: usize, k: usize) -> Monomial {
        let mut m = Monomial::one();
        let mut j = 0;
        for i in 0..nvars {
            if i == k {
                continue;
            }
            m.exps[j] = self.exps[i];
            m.degree += self.exps[i] as u32;
            j += 1;
        }
        m
    }

    /// Insert a variable at position `k` with exponent `e`.
    pub fn with_var_inserted(&self, nvars: usize, k: usize, e: u16) -> Monomial {
        let mut m = Monomial::one();
        let mut j = 0;
        for i in 0..=nvars {
            if i == k {
                m.exps[i] = e;
            } else {
                m.exps[i] = self.exps[j];
                j += 1;
            }
            m.degree += m.exps[i] as u32;
        }
        m
    }

    /// Graded reverse lexicographic comparison on the first `nvars` variables.
    #[inline]
    pub fn cmp_grevlex(&self, other: &Monomial, nvars: usize) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..nvars).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Grevlex on the variables of `range` only.
    pub fn cmp_grevlex_range(&self, other: &Monomial, range: std::ops::Range<usize>) -> Ordering {
        let da = self.partial_degree(range.clone());
        let db = other.partial_degree(range.clone());
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in range.rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub fn cmp_lex(&self, other: &Monomial, nvars: usize) -> Ordering {
        self.exps[..nvars].cmp(&other.exps[..nvars])
    }

    /// Every monomial of total degree `d` in `nvars` variables, descending in grevlex.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        let mut exps = vec![0u16; nvars];
        fn rec(i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            let n = exps.len();
            if i == n - 1 {
                exps[i] = left as u16;
                out.push(Monomial::from_exponents(exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e as u16;
                rec(i + 1, left - e, exps, out);
            }
            exps[i] = 0;
        }
        rec(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp_grevlex(a, nvars));
        out
    }
}

/// Number of monomials of degree `d` in `nvars` variables, `C(d + nvars - 1, nvars - 1)`.
pub fn count_of_degree(nvars: usize, d: i64) -> usize {
    if d < 0 || nvars == 0 {
        return usize::from(nvars == 0 && d == 0);
    }
    let d = d as u128;
    let k = (nvars - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (d + i) / i;
    }
    acc as usize
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}
