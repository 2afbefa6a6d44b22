//! Hilbert series numerators of monomial ideals and Hilbert polynomials in
//! the binomial basis `P_r(t) = C(t + r, r)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::polyring::{Monomial, Rational};

/// Numerator `N(t)` with `HS_{S/M}(t) = N(t) / (1 − t)^nvars`, as ascending
/// coefficients, for the monomial ideal generated by `gens`.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> Vec<i128> {
    let mut out = numer(minimalize(gens.to_vec()), nvars);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn numer(gens: Vec<Monomial>, nvars: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    // Pairwise coprime generators: N = Π (1 − t^{deg m}).
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i128];
        for m in &gens {
            let mut f = vec![0i128; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // Pivot on the variable occurring in the most generators (ignoring pure powers).
    let mut best = (0usize, 0usize);
    for i in 0..nvars {
        let count = gens.iter().filter(|m| m.exp(i) > 0 && m.degree() > m.exp(i) as u32).count();
        if count > best.1 {
            best = (i, count);
        }
    }
    let x = best.0;
    // Exponents from non-pure-power generators stay below any pure power of x
    // in M, so p ∉ M and both branches shrink.
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|m| m.exp(x) > 0 && m.degree() > m.exp(x) as u32)
        .map(|m| m.exp(x))
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2].max(1);
    let p = Monomial::var_pow(x, e);
    // N(M) = N(M + (p)) + t^{deg p} N(M : p)
    let mut plus = gens.clone();
    plus.push(p);
    let colon: Vec<Monomial> = gens.iter().map(|m| m.gcd(&p).divide_into(m).unwrap()).collect();
    let mut out = numer(minimalize(plus), nvars);
    let rest = numer(minimalize(colon), nvars);
    poly_add_shifted(&mut out, &rest, e as usize);
    out
}

fn binom(n: i128, k: u32) -> i128 {
    if n < k as i128 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Σ c_r P_r` with `P_r(t) = C(t + r, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HilbertPolynomial {
    coeffs: BTreeMap<usize, i64>,
}

impl HilbertPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coefficients(pairs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (r, c) in pairs {
            *coeffs.entry(r).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        HilbertPolynomial { coeffs }
    }

    /// From the Hilbert-series numerator of `S/I` with `S` on `nvars` variables:
    /// `C(s − i + n, n) = P_n(s − i) = Σ_k (−1)^k C(i, k) P_{n−k}(s)`.
    pub fn from_numerator(numerator: &[i128], nvars: usize) -> Self {
        if nvars == 0 {
            return Self::zero();
        }
        let n = nvars - 1;
        let mut coeffs: BTreeMap<usize, i128> = BTreeMap::new();
        for (i, &a) in numerator.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for k in 0..=n.min(i) {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                *coeffs.entry(n - k).or_insert(0) += a * sign * binom(i as i128, k as u32);
            }
        }
        Self::from_coefficients(coeffs.into_iter().map(|(r, c)| (r, i64::try_from(c).expect("coefficient fits"))))
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, i64> {
        &self.coeffs
    }

    pub fn coefficient(&self, r: usize) -> i64 {
        self.coeffs.get(&r).copied().unwrap_or(0)
    }

    /// Degree as a polynomial in `t`; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.keys().next_back().map_or(-1, |&r| r as i64)
    }

    /// `(r, c_r)` for the top `r`.
    pub fn leading(&self) -> Option<(usize, i64)> {
        self.coeffs.iter().next_back().map(|(&r, &c)| (r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_coefficients(
            self.coeffs.iter().map(|(&r, &c)| (r, c)).chain(other.coeffs.iter().map(|(&r, &c)| (r, -c))),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_coefficients(self.coeffs.iter().chain(other.coeffs.iter()).map(|(&r, &c)| (r, c)))
    }

    pub fn evaluate(&self, t: i64) -> i128 {
        self.coeffs.iter().map(|(&r, &c)| c as i128 * binom(t as i128 + r as i128, r as u32)).sum()
    }

    /// Coefficients in `t`, ascending.
    pub fn expanded(&self) -> Vec<Rational> {
        let deg = self.degree();
        if deg < 0 {
            return vec![];
        }
        let mut out = vec![Rational::zero(); deg as usize + 1];
        for (&r, &c) in &self.coeffs {
            // C(t + r, r) = Π_{i=1..r} (t + i) / r!
            let mut poly = vec![Rational::one()];
            let mut fact = Rational::one();
            for i in 1..=r {
                let mut next = vec![Rational::zero(); poly.len() + 1];
                for (j, a) in poly.iter().enumerate() {
                    next[j] = &next[j] + &(a * &Rational::from_int(i as i64));
                    next[j + 1] = &next[j + 1] + a;
                }
                poly = next;
                fact = &fact * &Rational::from_int(i as i64);
            }
            let scale = &Rational::from_int(c) / &fact;
            for (j, a) in poly.iter().enumerate() {
                out[j] = &out[j] + &(a * &scale);
            }
        }
        out
    }

    /// The expanded polynomial as text, e.g. `2*t^2 + 3*t + 1`.
    pub fn expanded_string(&self) -> String {
        let coeffs = self.expanded();
        if coeffs.iter().all(Rational::is_zero) {
            return "0".into();
        }
        let mut s = String::new();
        for (j, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match j {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{j}"),
            };
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for HilbertPolynomial {
    /// `4*P2 - 11*P1 + 10*P0`; unit coefficients are written `P2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (&r, &c)) in self.coeffs.iter().rev().enumerate() {
            let a = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            if a == 1 {
                write!(f, "P{r}")?;
            } else {
                write!(f, "{a}*P{r}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Brute-force Hilbert function of S/M at degree d.
    fn brute(gens: &[Monomial], nvars: usize, d: u32) -> i128 {
        Monomial::all_of_degree(nvars, d).iter().filter(|x| !gens.iter().any(|g| g.divides(x))).count() as i128
    }

    #[test]
    fn zero_ideal_is_projective_space() {
        let hp = HilbertPolynomial::from_numerator(&hilbert_numerator(&[], 3), 3);
        assert_eq!(hp, HilbertPolynomial::from_coefficients([(2, 1)]));
        assert_eq!(hp.to_string(), "P2");
        assert_eq!(hp.expanded_string(), "1/2*t^2 + 3/2*t + 1");
    }

    #[test]
    fn display_format() {
        let hp = HilbertPolynomial::from_coefficients([(2, 4), (1, -11), (0, 10)]);
        assert_eq!(hp.to_string(), "4*P2 - 11*P1 + 10*P0");
    }

    #[test]
    fn numerator_matches_brute_force() {
        let cases: Vec<(Vec<Monomial>, usize)> = vec![
            (vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 1])], 3),
            (vec![m(&[1, 1, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 1, 1]), m(&[3, 0, 0, 1])], 4),
            (vec![m(&[0, 1, 2]), m(&[2, 0, 1]), m(&[1, 2, 0])], 3),
        ];
        for (gens, n) in cases {
            let hp = HilbertPolynomial::from_numerator(&hilbert_numerator(&gens, n), n);
            for d in 8..14 {
                assert_eq!(hp.evaluate(d), brute(&gens, n, d as u32));
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn additivity_on_monomial_ideals(
            a in proptest::collection::vec(proptest::collection::vec(0u16..3, 3), 1..4),
            b in proptest::collection::vec(proptest::collection::vec(0u16..3, 3), 1..4),
        ) {
            let a: Vec<Monomial> = a.iter().map(|e| m(e)).collect();
            let b: Vec<Monomial> = b.iter().map(|e| m(e)).collect();
            let hp = |g: &[Monomial]| HilbertPolynomial::from_numerator(&hilbert_numerator(g, 3), 3);
            let sum: Vec<Monomial> = a.iter().chain(b.iter()).copied().collect();
            let inter: Vec<Monomial> = a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y))).collect();
            proptest::prop_assert_eq!(hp(&inter).add(&hp(&sum)), hp(&a).add(&hp(&b)));
            for d in 0..9u32 {
                proptest::prop_assert_eq!(
                    brute(&inter, 3, d) + brute(&sum, 3, d),
                    brute(&a, 3, d) + brute(&b, 3, d)
                );
                if d >= 7 {
                    proptest::prop_assert_eq!(hp(&a).evaluate(d as i64), brute(&a, 3, d));
                }
            }
        }
    }
}
