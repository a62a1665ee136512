use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

/// Largest total degree any series may carry. Antiderivatives that would
/// exceed it are truncated here.
pub const ORDER_CAP: u32 = 40;

/// One of the four formal variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Z1,
    Z1b,
    Z2,
    Z2b,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z1, Var::Z1b, Var::Z2, Var::Z2b];

    pub fn index(self) -> usize {
        match self {
            Var::Z1 => 0,
            Var::Z1b => 1,
            Var::Z2 => 2,
            Var::Z2b => 3,
        }
    }

    /// The variable exchanged with `self` by complex conjugation.
    pub fn conj(self) -> Var {
        match self {
            Var::Z1 => Var::Z1b,
            Var::Z1b => Var::Z1,
            Var::Z2 => Var::Z2b,
            Var::Z2b => Var::Z2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z1 => "z1",
            Var::Z1b => "z1b",
            Var::Z2 => "z2",
            Var::Z2b => "z2b",
        }
    }
}

/// Exponent vector `(a, b, c, d)` of `z1^a z1b^b z2^c z2b^d`.
///
/// Ordered graded-lexicographically: first by total degree, then
/// lexicographically on `(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0, 0]);

    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        Monomial([a, b, c, d])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn conj(&self) -> Monomial {
        let [a, b, c, d] = self.0;
        Monomial([b, a, d, c])
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x += y;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            if *x < *y {
                return None;
            }
            *x -= y;
        }
        Some(Monomial(e))
    }

    /// Componentwise minimum (the monomial gcd).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x = (*x).min(*y);
        }
        Monomial(e)
    }

    /// Position of this monomial in the graded-lexicographic enumeration.
    pub fn index(&self) -> usize {
        let [a, b, c, _] = self.0;
        let n = self.degree();
        let mut idx = count_upto_degree(n);
        // tuples of degree n with first exponent < a
        for a2 in 0..a {
            let rest = (n - a2) as usize;
            idx += (rest + 2) * (rest + 1) / 2;
        }
        // first exponent fixed, second exponent < b
        for b2 in 0..b {
            idx += (n - a - b2 + 1) as usize;
        }
        idx + c as usize
    }

    /// Inverse of [`Monomial::index`].
    pub fn from_index(i: usize) -> Monomial {
        table()[i]
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

/// Number of monomials of total degree strictly below `n`: C(n+3, 4).
pub fn count_upto_degree(n: u32) -> usize {
    let n = n as usize;
    (n + 3) * (n + 2) * (n + 1) * n / 24
}

/// Number of monomials of total degree at most `order`.
pub fn count_upto_order(order: u32) -> usize {
    count_upto_degree(order + 1)
}

fn table() -> &'static [Monomial] {
    static TABLE: OnceLock<Vec<Monomial>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(count_upto_order(ORDER_CAP));
        for n in 0..=ORDER_CAP {
            for a in 0..=n {
                for b in 0..=n - a {
                    for c in 0..=n - a - b {
                        out.push(Monomial([a, b, c, n - a - b - c]));
                    }
                }
            }
        }
        out
    })
}
