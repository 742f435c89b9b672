//! Koszul sign bookkeeping for bigraded symbols.

use crate::scalar::Scalar;

/// Degrees of a symbol (a map or a vector) for the exchange rule.
///
/// `d` is arity minus one, so vectors have `d = -1`. `aux` is the optional
/// secondary grading carried by spaces such as the Hochschild space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BiDegree {
    pub super_deg: i64,
    pub d: i64,
    pub aux: i64,
}

impl BiDegree {
    pub fn new(super_deg: i64, d: i64) -> Self {
        BiDegree {
            super_deg,
            d,
            aux: 0,
        }
    }

    pub fn with_aux(super_deg: i64, d: i64, aux: i64) -> Self {
        BiDegree { super_deg, d, aux }
    }

    pub fn vector(super_deg: i64) -> Self {
        BiDegree::new(super_deg, -1)
    }

    /// Parity of the exchange exponent against `other`.
    pub fn exchange_parity(&self, other: &BiDegree) -> bool {
        (self.super_deg * other.super_deg + self.d * other.d + self.aux * other.aux).rem_euclid(2)
            == 1
    }
}

/// `(-1)^{|x||y| + d(x)d(y)}`, extended by the auxiliary grading.
pub fn exchange_sign(x: &BiDegree, y: &BiDegree) -> Scalar {
    if x.exchange_parity(y) {
        Scalar::MINUS_ONE
    } else {
        Scalar::ONE
    }
}

/// Sign of rearranging symbols: `order[k]` is the original index of the symbol
/// placed at position `k`. Every inverted pair contributes its exchange sign.
pub fn koszul_sign(degrees: &[BiDegree], order: &[usize]) -> Scalar {
    debug_assert_eq!(degrees.len(), order.len());
    let mut odd = false;
    for a in 0..order.len() {
        for b in (a + 1)..order.len() {
            if order[a] > order[b] && degrees[order[a]].exchange_parity(&degrees[order[b]]) {
                odd = !odd;
            }
        }
    }
    if odd {
        Scalar::MINUS_ONE
    } else {
        Scalar::ONE
    }
}

/// Parity-only degrees used by the suspended (tilde) picture, where the
/// exchange exponent is `p(x)p(y) + aux(x)aux(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SuspendedDegree {
    pub parity: i64,
    pub aux: i64,
}

impl SuspendedDegree {
    pub fn odd_with(&self, other: &SuspendedDegree) -> bool {
        (self.parity * other.parity + self.aux * other.aux).rem_euclid(2) == 1
    }
}

pub fn suspended_koszul_sign(degrees: &[SuspendedDegree], order: &[usize]) -> Scalar {
    let mut odd = false;
    for a in 0..order.len() {
        for b in (a + 1)..order.len() {
            if order[a] > order[b] && degrees[order[a]].odd_with(&degrees[order[b]]) {
                odd = !odd;
            }
        }
    }
    if odd {
        Scalar::MINUS_ONE
    } else {
        Scalar::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exchange_examples() {
        assert_eq!(
            exchange_sign(&BiDegree::new(0, 1), &BiDegree::new(1, 0)),
            Scalar::ONE
        );
        assert_eq!(
            exchange_sign(&BiDegree::vector(1), &BiDegree::vector(1)),
            Scalar::ONE
        );
        assert_eq!(
            exchange_sign(&BiDegree::vector(1), &BiDegree::new(1, 0)),
            Scalar::MINUS_ONE
        );
    }

    #[test]
    fn exchange_is_symmetric_involution() {
        for s1 in -2..3 {
            for d1 in -1..4 {
                for s2 in -2..3 {
                    for d2 in -1..4 {
                        let x = BiDegree::new(s1, d1);
                        let y = BiDegree::new(s2, d2);
                        assert_eq!(exchange_sign(&x, &y) * exchange_sign(&y, &x), Scalar::ONE);
                    }
                }
            }
        }
    }

    #[test]
    fn koszul_matches_adjacent_transpositions() {
        let degs = [
            BiDegree::vector(1),
            BiDegree::vector(0),
            BiDegree::vector(1),
        ];
        // (2,0,1): symbol 2 moves past 0 and 1
        let expected = exchange_sign(&degs[2], &degs[0]) * exchange_sign(&degs[2], &degs[1]);
        assert_eq!(koszul_sign(&degs, &[2, 0, 1]), expected);
        assert_eq!(koszul_sign(&degs, &[0, 1, 2]), Scalar::ONE);
    }
}
