//! Exact integer polynomial arithmetic: characteristic polynomials,
//! square-free parts, Sturm chains, and exact real-root counting.
//!
//! Everything here is integer arithmetic — no floating point — so root counts
//! are exact and the spectral-radius enclosures built on top of them are
//! guaranteed. Polynomials are stored dense with ascending coefficients and
//! no trailing zeros; the zero polynomial has an empty coefficient vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// A polynomial with arbitrary-precision integer coefficients (ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Convenience constructor from machine integers (ascending).
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `xᵏ`.
    pub fn x_power(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True for `xⁿ` with `n = degree` (all lower coefficients zero).
    pub fn is_power_of_x(&self) -> bool {
        match self.degree() {
            None => false,
            Some(d) => {
                self.coeffs[d].is_one() && self.coeffs[..d].iter().all(Zero::is_zero)
            }
        }
    }

    /// Evaluation at an integer point (Horner).
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `p(a/b)` for `b > 0`, computed exactly as the sign of the
    /// integer `b^deg · p(a/b)`.
    pub fn sign_at_rational(&self, a: &BigInt, b: &BigInt) -> i8 {
        debug_assert!(b.is_positive());
        let d = match self.degree() {
            None => return 0,
            Some(d) => d,
        };
        let mut acc = self.coeffs[d].clone();
        let mut bpow = BigInt::one();
        for j in (0..d).rev() {
            bpow *= b;
            acc = acc * a + &self.coeffs[j] * &bpow;
        }
        sign_of(&acc)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn negate(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        IntPoly::new(coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::new(coeffs)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> IntPoly {
        if s.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplies by `xᵏ`.
    fn shifted_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Positive gcd of the coefficients (content); 0 for the zero polynomial.
    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides out the positive content, preserving coefficient signs.
    pub fn primitive_part(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact polynomial division; panics if the division is not exact (which
    /// would indicate a bug — all callers divide by known factors).
    pub fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let dd = divisor.degree().unwrap();
        let ld = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let nd = self.degree().expect("nonzero");
        assert!(nd >= dd, "exact_div: degree too small");
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            let (q, r) = lead.div_rem(ld);
            assert!(r.is_zero(), "exact_div: inexact leading division");
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(Zero::is_zero), "exact_div: nonzero remainder");
        IntPoly::new(quot)
    }

    /// Taylor shift: returns `p(x + a)` for an integer `a`.
    pub fn taylor_shift(&self, a: &BigInt) -> IntPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // Repeated synthetic division by (x - (-a)).
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let add = &c[j + 1] * a;
                c[j] += add;
            }
        }
        IntPoly::new(c)
    }
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Signed pseudo-remainder: a positive integer multiple of the rational
/// remainder `rem(a, b)`, so its sign function agrees with the true remainder
/// everywhere. Used for Sturm chains (where signs matter) and gcds.
fn positive_multiple_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading().unwrap().clone();
    let mut r = a.clone();
    let mut flips = 0u32;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lead = r.leading().unwrap().clone();
        // r := lb·r − lead·x^(dr−db)·b  kills the leading term.
        r = r.mul_scalar(&lb).sub(&b.shifted_up(dr - db).mul_scalar(&lead));
        flips += 1;
        debug_assert!(r.degree().is_none_or(|d| d < dr));
    }
    // r = lb^flips · rem(a, b); make the multiplier positive.
    if lb.is_negative() && flips % 2 == 1 {
        r.negate()
    } else {
        r
    }
}

/// Primitive gcd with positive leading coefficient (primitive PRS).
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut x = a.primitive_part();
    let mut y = b.primitive_part();
    while !y.is_zero() {
        let r = positive_multiple_rem(&x, &y).primitive_part();
        x = y;
        y = r;
    }
    if x.leading().is_some_and(Signed::is_negative) {
        x.negate()
    } else {
        x
    }
}

/// The square-free part `p / gcd(p, p′)` of a monic polynomial; the result is
/// monic with the same distinct roots as `p`, each simple.
pub fn square_free_part(p: &IntPoly) -> IntPoly {
    match p.degree() {
        None | Some(0) => return p.clone(),
        _ => {}
    }
    debug_assert!(p.leading().unwrap().is_one(), "expected monic input");
    let g = poly_gcd(p, &p.derivative());
    if g.degree() == Some(0) {
        return p.clone();
    }
    let sf = p.exact_div(&g);
    debug_assert!(sf.leading().unwrap().is_one());
    sf
}

/// A Sturm chain of a square-free polynomial. Counting sign variations of the
/// chain at two points and subtracting yields the exact number of distinct
/// real roots strictly between them.
#[derive(Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain `p, p′, −rem(p, p′), …` (each element reduced to its
    /// primitive part, sign preserved).
    pub fn new(square_free: &IntPoly) -> Self {
        let mut chain = vec![square_free.clone()];
        let d = square_free.derivative();
        if !d.is_zero() {
            chain.push(d.primitive_part());
            loop {
                let k = chain.len();
                let r = positive_multiple_rem(&chain[k - 2], &chain[k - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.negate().primitive_part());
            }
        }
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Sign variations at the rational point `a/b` (`b > 0`).
    pub fn variations_at(&self, a: &BigInt, b: &BigInt) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_rational(a, b)))
    }

    /// Sign variations at `+∞` (signs of leading coefficients).
    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| match p.leading() {
            None => 0,
            Some(l) => sign_of(l),
        }))
    }

    /// Exact number of real roots in `(a/b, ∞)`. Requires that `a/b` is not
    /// itself a root of the chain's first polynomial.
    pub fn count_roots_above(&self, a: &BigInt, b: &BigInt) -> usize {
        debug_assert!(self.chain[0].sign_at_rational(a, b) != 0);
        self.variations_at(a, b) - self.variations_at_pos_inf()
    }
}

/// Exact number of real roots of `p` in the open interval `(c, ∞)` for an
/// integer `c`, valid even when `c` itself is a root: the polynomial is
/// shifted by `c` and any root at the origin is divided out first.
pub fn count_roots_above_integer(square_free: &IntPoly, c: &BigInt) -> usize {
    let shifted = square_free.taylor_shift(c);
    let mut coeffs = shifted.coeffs().to_vec();
    let mut skip = 0;
    while skip < coeffs.len() && coeffs[skip].is_zero() {
        skip += 1;
    }
    let stripped = IntPoly::new(coeffs.split_off(skip));
    if stripped.degree().is_none_or(|d| d == 0) {
        return 0;
    }
    let chain = SturmChain::new(&stripped);
    chain.count_roots_above(&BigInt::zero(), &BigInt::one())
}

/// Exact characteristic polynomial `det(xI − A)` by the Faddeev–LeVerrier
/// recurrence (all divisions are exact integer divisions).
pub fn char_poly(a: &IntMatrix) -> IntPoly {
    let n = a.order();
    if n == 0 {
        return IntPoly::one();
    }
    // Work in signed integers: m ← A·m + c_k·I, c_k = −tr(A·m)/k.
    let big: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(a.get(i, j).clone())).collect())
        .collect();
    let mul = |x: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if big[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !x[k][j].is_zero() {
                        out[i][j] += &big[i][k] * &x[k][j];
                    }
                }
            }
        }
        out
    };
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    // coeffs descending: p(x) = xⁿ + c₁xⁿ⁻¹ + … + c_n
    let mut descending = vec![BigInt::one()];
    for k in 1..=n {
        let am = mul(&m);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (ck, rem) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "Faddeev–LeVerrier division must be exact");
        descending.push(ck.clone());
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &ck;
        }
    }
    descending.reverse();
    IntPoly::new(descending)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_matrix(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.increment(i, (i + 1) % n);
        }
        m
    }

    #[test]
    fn char_poly_of_fibonacci_matrix() {
        let a = IntMatrix::from_rows(&[&[0, 1], &[1, 1]]);
        assert_eq!(char_poly(&a), IntPoly::from_i64s(&[-1, -1, 1])); // x² − x − 1
    }

    #[test]
    fn char_poly_of_one_by_one_and_cycles() {
        assert_eq!(
            char_poly(&IntMatrix::from_rows(&[&[7]])),
            IntPoly::from_i64s(&[-7, 1])
        );
        for n in 2..6 {
            let p = char_poly(&cycle_matrix(n));
            let mut expect = vec![BigInt::zero(); n + 1];
            expect[0] = BigInt::from(-1);
            expect[n] = BigInt::one();
            assert_eq!(p, IntPoly::new(expect), "xⁿ − 1 for C_{n}");
            assert!(p.eval_int(&BigInt::one()).is_zero());
        }
        assert_eq!(char_poly(&IntMatrix::zeros(0)), IntPoly::one());
    }

    #[test]
    fn char_poly_invariant_under_transpose_and_block_diag() {
        let a = IntMatrix::from_rows(&[&[2, 1], &[0, 3]]);
        assert_eq!(char_poly(&a), char_poly(&a.transpose()));
        let b = cycle_matrix(3);
        let d = a.block_diag(&b);
        assert_eq!(char_poly(&d), char_poly(&a).mul(&char_poly(&b)));
    }

    #[test]
    fn nilpotent_matrices_have_pure_power_char_poly() {
        let strict_upper = IntMatrix::from_rows(&[&[0, 1, 1], &[0, 0, 2], &[0, 0, 0]]);
        let p = char_poly(&strict_upper);
        assert!(p.is_power_of_x());
        assert_eq!(p, IntPoly::x_power(3));
        assert!(!IntPoly::from_i64s(&[-1, 1]).is_power_of_x());
    }

    #[test]
    fn square_free_part_removes_multiplicity() {
        // (x−1)²(x−2) → (x−1)(x−2)
        let x1 = IntPoly::from_i64s(&[-1, 1]);
        let x2 = IntPoly::from_i64s(&[-2, 1]);
        let p = x1.mul(&x1).mul(&x2);
        assert_eq!(square_free_part(&p), x1.mul(&x2));
        // already square-free stays put
        let q = IntPoly::from_i64s(&[-1, -1, 1]);
        assert_eq!(square_free_part(&q), q);
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        let a = IntPoly::from_i64s(&[-1, 1]);
        let b = IntPoly::from_i64s(&[-2, 1]);
        assert_eq!(poly_gcd(&a, &b).degree(), Some(0));
        let g = poly_gcd(&a.mul(&b), &b);
        assert_eq!(g, b);
    }

    #[test]
    fn sturm_counts_roots_exactly() {
        // (x−1)(x−2)(x+3): roots −3, 1, 2
        let p = IntPoly::from_i64s(&[-1, 1])
            .mul(&IntPoly::from_i64s(&[-2, 1]))
            .mul(&IntPoly::from_i64s(&[3, 1]));
        let chain = SturmChain::new(&p);
        let half = |n: i64| (BigInt::from(n), BigInt::from(2));
        let (a, b) = half(3); // 3/2: roots above = {2}
        assert_eq!(chain.count_roots_above(&a, &b), 1);
        let (a, b) = half(-7); // −7/2: all three above
        assert_eq!(chain.count_roots_above(&a, &b), 3);
        let (a, b) = half(5); // 5/2: none above
        assert_eq!(chain.count_roots_above(&a, &b), 0);
    }

    #[test]
    fn counting_above_an_integer_root_works() {
        // (x−1)(x−2): counting above 1 must see only the root at 2.
        let p = IntPoly::from_i64s(&[-1, 1]).mul(&IntPoly::from_i64s(&[-2, 1]));
        assert_eq!(count_roots_above_integer(&p, &BigInt::from(1)), 1);
        assert_eq!(count_roots_above_integer(&p, &BigInt::from(2)), 0);
        assert_eq!(count_roots_above_integer(&p, &BigInt::from(0)), 2);
        // x² − x − 1: golden ratio is the only root above 1
        let fib = IntPoly::from_i64s(&[-1, -1, 1]);
        assert_eq!(count_roots_above_integer(&fib, &BigInt::from(1)), 1);
        assert_eq!(count_roots_above_integer(&fib, &BigInt::from(2)), 0);
        // xⁿ − 1: nothing above 1
        let c4 = IntPoly::from_i64s(&[-1, 0, 0, 0, 1]);
        assert_eq!(count_roots_above_integer(&c4, &BigInt::from(1)), 0);
        assert_eq!(count_roots_above_integer(&c4, &BigInt::from(0)), 1);
    }

    #[test]
    fn taylor_shift_is_exact() {
        // p(x) = x² − x − 1, p(x+1) = x² + x − 1
        let p = IntPoly::from_i64s(&[-1, -1, 1]);
        assert_eq!(p.taylor_shift(&BigInt::one()), IntPoly::from_i64s(&[-1, 1, 1]));
        let back = p.taylor_shift(&BigInt::from(5)).taylor_shift(&BigInt::from(-5));
        assert_eq!(back, p);
    }

    #[test]
    fn eval_at_integer_eigenvalues_is_zero() {
        // block-diag(rose 3, C_2) has eigenvalues {3, 1, −1}
        let a = IntMatrix::from_rows(&[&[3]]).block_diag(&IntMatrix::from_rows(&[&[0, 1], &[1, 0]]));
        let p = char_poly(&a);
        for ev in [3i64, 1, -1] {
            assert!(p.eval_int(&BigInt::from(ev)).is_zero());
        }
    }

    #[test]
    fn exact_div_round_trips() {
        let a = IntPoly::from_i64s(&[1, 2, 3, 4]);
        let b = IntPoly::from_i64s(&[-1, 0, 1]);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&b), a);
        assert_eq!(prod.exact_div(&a), b);
    }
}
