use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of formal variables in the coefficient field.
pub const NVARS: usize = 5;

/// The fixed variable tuple `(t1, t2, h, u, w)`.
///
/// `h` stands for the square root of the quantum parameter and `w` for the
/// product of all Kähler variables; both are kept formally independent of
/// `t1, t2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    T1,
    T2,
    H,
    U,
    W,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::T1, Var::T2, Var::H, Var::U, Var::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T1 => "t1",
            Var::T2 => "t2",
            Var::H => "h",
            Var::U => "u",
            Var::W => "w",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over `(t1, t2, h, u, w)`; the derived order is lexicographic
/// with `t1` most significant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, exp: u16) -> Monomial {
        let mut e = [0; NVARS];
        e[v.index()] = exp;
        Monomial(e)
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(e)
    }

    pub fn with_exp(&self, v: Var, exp: u16) -> Monomial {
        let mut e = self.0;
        e[v.index()] = exp;
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
