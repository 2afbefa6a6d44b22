use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

/// A monomial order on a ring with a fixed number of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Elimination order for the trailing `k` variables: grevlex on the last
    /// `k` variables first, ties broken by grevlex on the rest.
    Block(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.cmp_grevlex(b, nvars),
            MonomialOrder::Lex => a.cmp_lex(b, nvars),
            MonomialOrder::Block(k) => {
                let k = k.min(nvars);
                let split = nvars - k;
                match a.cmp_grevlex_range(b, split..nvars) {
                    Ordering::Equal => a.cmp_grevlex_range(b, 0..split),
                    o => o,
                }
            }
        }
    }

    /// Whether this order compares by total degree first.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block(k) => write!(f, "block({k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn block_eliminates_trailing() {
        let ord = MonomialOrder::Block(1);
        // any monomial containing x2 beats every monomial free of x2
        assert_eq!(ord.cmp(&mono(&[0, 0, 1]), &mono(&[9, 9, 0]), 3), Ordering::Greater);
        assert_eq!(ord.cmp(&mono(&[2, 0, 1]), &mono(&[0, 1, 1]), 3), Ordering::Greater);
    }

    #[test]
    fn lex_and_grevlex_differ() {
        let a = mono(&[1, 0, 2]);
        let b = mono(&[0, 3, 0]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b, 3), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b, 3), Ordering::Less);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u16..5, 4).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            (0usize..4).prop_map(MonomialOrder::Block),
        ]
    }

    proptest! {
        #[test]
        fn total_and_multiplicative(ord in arb_order(), a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let ab = ord.cmp(&a, &b, 4);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ord.cmp(&b, &a, 4), ab.reverse());
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c), 4), ab);
        }

        #[test]
        fn refines_divisibility(ord in arb_order(), a in arb_mono(), c in arb_mono()) {
            prop_assert_ne!(ord.cmp(&a.mul(&c), &a, 4), Ordering::Less);
        }

        #[test]
        fn transitive(ord in arb_order(), a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            if ord.cmp(&a, &b, 4) != Ordering::Greater && ord.cmp(&b, &c, 4) != Ordering::Greater {
                prop_assert_ne!(ord.cmp(&a, &c, 4), Ordering::Greater);
            }
        }
    }

    #[test]
    fn well_founded_on_bounded_degree() {
        // In bounded degree the set is finite, so a strictly descending chain
        // visits every monomial at most once: sorting yields a strict chain.
        for ord in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Block(1)] {
            let mut all: Vec<Monomial> = (0..4).flat_map(|d| Monomial::all_of_degree(3, d)).collect();
            all.sort_by(|a, b| ord.cmp(b, a, 3));
            for w in all.windows(2) {
                assert_eq!(ord.cmp(&w[0], &w[1], 3), Ordering::Greater);
            }
            assert!(all.last().unwrap().is_one());
        }
    }
}
