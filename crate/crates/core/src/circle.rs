//! Elements of the circle group written additively as fractions of ℚ/ℤ.
//!
//! A [`CircleValue`] stores `num / modulus` with `0 <= num < modulus`. Values
//! with different moduli combine after lifting both to the least common
//! multiple, so arithmetic stays exact integer arithmetic throughout.

use serde::{Deserialize, Serialize};

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// An element of (1/N)ℤ/ℤ.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CircleValue {
    num: i64,
    modulus: i64,
}

impl CircleValue {
    pub fn new(num: i64, modulus: i64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        CircleValue {
            num: num.rem_euclid(modulus),
            modulus,
        }
    }

    pub fn zero(modulus: i64) -> Self {
        CircleValue { num: 0, modulus }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Re-express the value with denominator `modulus`; the current modulus
    /// must divide it.
    pub fn lift(&self, modulus: i64) -> Self {
        assert!(
            modulus % self.modulus == 0,
            "cannot lift 1/{} to 1/{}",
            self.modulus,
            modulus
        );
        CircleValue {
            num: self.num * (modulus / self.modulus),
            modulus,
        }
    }

    pub fn add(&self, other: &CircleValue) -> CircleValue {
        let m = lcm(self.modulus, other.modulus);
        CircleValue::new(
            self.num * (m / self.modulus) + other.num * (m / other.modulus),
            m,
        )
    }

    pub fn neg(&self) -> CircleValue {
        CircleValue::new(-self.num, self.modulus)
    }

    pub fn scale(&self, k: i64) -> CircleValue {
        CircleValue::new(self.num.wrapping_mul(k.rem_euclid(self.modulus)), self.modulus)
    }
}

impl PartialEq for CircleValue {
    fn eq(&self, other: &Self) -> bool {
        let m = lcm(self.modulus, other.modulus);
        self.num * (m / self.modulus) == other.num * (m / other.modulus)
    }
}

impl Eq for CircleValue {}

impl std::fmt::Display for CircleValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            let g = gcd(self.num, self.modulus);
            write!(f, "{}/{}", self.num / g, self.modulus / g)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_modulus_addition_lifts_to_lcm() {
        let a = CircleValue::new(1, 4);
        let b = CircleValue::new(1, 6);
        let c = a.add(&b);
        assert_eq!(c.modulus(), 12);
        assert_eq!(c.numerator(), 5);
    }

    #[test]
    fn equality_is_rational() {
        assert_eq!(CircleValue::new(1, 2), CircleValue::new(2, 4));
        assert_ne!(CircleValue::new(1, 2), CircleValue::new(1, 4));
    }

    #[test]
    fn negation_wraps() {
        let a = CircleValue::new(3, 8);
        assert_eq!(a.add(&a.neg()), CircleValue::zero(8));
    }
}
