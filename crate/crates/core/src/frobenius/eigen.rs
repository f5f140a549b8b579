use std::fmt;

use serde::Serialize;

/// The Weil-number part of an eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LambdaPart {
    None,
    /// `lambda_j^exp` for a single Weil number.
    Single { index: u32, exp: i64 },
    /// `lambda_j^exp` taken over all `j` at once (aggregate blocks).
    All { exp: i64 },
}

/// An eigenvalue of the shape `q^q_exp * (lambda part)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EigenMonomial {
    pub q_exp: i64,
    pub lambda: LambdaPart,
}

impl EigenMonomial {
    pub const ONE: EigenMonomial = EigenMonomial {
        q_exp: 0,
        lambda: LambdaPart::None,
    };

    pub fn q_power(q_exp: i64) -> Self {
        Self {
            q_exp,
            lambda: LambdaPart::None,
        }
    }

    pub fn lambda(index: u32, exp: i64, q_exp: i64) -> Self {
        Self {
            q_exp,
            lambda: LambdaPart::Single { index, exp },
        }
    }

    pub fn is_one(&self) -> bool {
        self.q_exp == 0 && self.lambda_exp() == 0
    }

    pub fn lambda_exp(&self) -> i64 {
        match self.lambda {
            LambdaPart::None => 0,
            LambdaPart::Single { exp, .. } | LambdaPart::All { exp } => exp,
        }
    }

    /// Product; `None` when the lambda parts refer to different Weil numbers
    /// and so cannot be written as a single monomial.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let lambda = match (self.lambda, other.lambda) {
            (LambdaPart::None, l) | (l, LambdaPart::None) => l,
            (LambdaPart::Single { index: a, exp: x }, LambdaPart::Single { index: b, exp: y })
                if a == b =>
            {
                LambdaPart::Single { index: a, exp: x + y }
            }
            (LambdaPart::All { exp: x }, LambdaPart::All { exp: y }) => LambdaPart::All { exp: x + y },
            _ => return None,
        };
        Some(Self {
            q_exp: self.q_exp + other.q_exp,
            lambda: normalize(lambda),
        })
    }

    pub fn pow(&self, e: i64) -> Self {
        let lambda = match self.lambda {
            LambdaPart::None => LambdaPart::None,
            LambdaPart::Single { index, exp } => LambdaPart::Single { index, exp: exp * e },
            LambdaPart::All { exp } => LambdaPart::All { exp: exp * e },
        };
        Self {
            q_exp: self.q_exp * e,
            lambda: normalize(lambda),
        }
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }
}

fn normalize(l: LambdaPart) -> LambdaPart {
    match l {
        LambdaPart::Single { exp: 0, .. } | LambdaPart::All { exp: 0 } => LambdaPart::None,
        other => other,
    }
}

impl fmt::Display for EigenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lam = match self.lambda {
            LambdaPart::None => None,
            LambdaPart::Single { index, exp: 1 } => Some(format!("λ_{index}")),
            LambdaPart::Single { index, exp } => Some(format!("λ_{index}^{exp}")),
            LambdaPart::All { exp: 1 } => Some("λ_j".to_string()),
            LambdaPart::All { exp } => Some(format!("λ_j^{exp}")),
        };
        let qs = match self.q_exp {
            0 => None,
            1 => Some("q".to_string()),
            e => Some(format!("q^{e}")),
        };
        match (lam, qs) {
            (None, None) => write!(f, "1"),
            (Some(l), None) => write!(f, "{l}"),
            (None, Some(q)) => write!(f, "{q}"),
            (Some(l), Some(q)) => write!(f, "{l}*{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_add() {
        let a = EigenMonomial::lambda(1, 1, -2);
        let b = EigenMonomial::lambda(1, 2, 3);
        assert_eq!(a.checked_mul(&b), Some(EigenMonomial::lambda(1, 3, 1)));
        assert_eq!(a.checked_mul(&EigenMonomial::ONE), Some(a));
        assert_eq!(a.checked_mul(&EigenMonomial::lambda(2, 1, 0)), None);
    }

    #[test]
    fn inverse_cancels() {
        let a = EigenMonomial::lambda(3, 1, -2);
        assert!(a.checked_mul(&a.inverse()).unwrap().is_one());
        assert_eq!(a.checked_mul(&a.inverse()).unwrap().lambda, LambdaPart::None);
    }

    #[test]
    fn display() {
        assert_eq!(EigenMonomial::q_power(-3).to_string(), "q^-3");
        assert_eq!(EigenMonomial::lambda(2, 1, -2).to_string(), "λ_2*q^-2");
        assert_eq!(EigenMonomial::ONE.to_string(), "1");
    }
}
