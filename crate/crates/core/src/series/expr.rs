//! Closed forms kept as expression trees over the series primitives, so a
//! transcription slip shows up as a wrong coefficient rather than hiding in
//! hand-expanded numbers.

use std::fmt;
use std::ops;

use num_rational::BigRational;
use num_traits::Zero;

use super::{catalan, rat, Polynomial, RationalSeries};
use crate::error::SeriesError;

/// A series computed by code rather than by an expression.
pub type NativeFn = fn(usize) -> Result<RationalSeries, SeriesError>;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// The variable `x`.
    X,
    Int(i64),
    /// Integer polynomial, constant term first.
    Poly(Vec<i64>),
    /// The Catalan series.
    Catalan,
    /// The generating function of the case the expression belongs to.
    Own,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Sqrt(Box<Expr>),
    /// `outer(inner(x))`.
    Compose(Box<Expr>, Box<Expr>),
}

pub fn x() -> Expr {
    Expr::X
}

pub fn int(c: i64) -> Expr {
    Expr::Int(c)
}

pub fn p(coeffs: &[i64]) -> Expr {
    Expr::Poly(coeffs.to_vec())
}

pub fn cat() -> Expr {
    Expr::Catalan
}

pub fn own() -> Expr {
    Expr::Own
}

/// `x^k`.
pub fn xp(k: u32) -> Expr {
    Expr::X.pow(k)
}

/// `√(1-4x)`.
pub fn s4() -> Expr {
    p(&[1, -4]).sqrt()
}

impl Expr {
    pub fn pow(self, k: u32) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    pub fn compose(self, inner: Expr) -> Expr {
        Expr::Compose(Box::new(self), Box::new(inner))
    }

    /// Expands to `order` coefficients; `own` supplies the case's own
    /// generating function at any order it is asked for.
    pub fn eval(
        &self,
        order: usize,
        own: Option<&dyn Fn(usize) -> Result<RationalSeries, SeriesError>>,
    ) -> Result<RationalSeries, SeriesError> {
        let ev = |e: &Expr, n: usize| e.eval(n, own);
        Ok(match self {
            Expr::X => RationalSeries::monomial(1, order),
            Expr::Int(c) => RationalSeries::constant(rat(*c), order),
            Expr::Poly(c) => Polynomial::from_i64s(c).to_series(order),
            Expr::Catalan => catalan(order),
            Expr::Own => match own {
                Some(f) => f(order)?.truncate(order),
                None => return Err(SeriesError::BadCoefficient("no own series in scope".into())),
            },
            Expr::Add(a, b) => ev(a, order)?.add(&ev(b, order)?),
            Expr::Sub(a, b) => ev(a, order)?.sub(&ev(b, order)?),
            Expr::Mul(a, b) => ev(a, order)?.mul(&ev(b, order)?),
            Expr::Neg(a) => ev(a, order)?.neg(),
            Expr::Pow(a, k) => ev(a, order)?.pow(*k),
            Expr::Sqrt(a) => ev(a, order)?.sqrt()?,
            Expr::Compose(a, b) => ev(a, order)?.compose(&ev(b, order)?)?,
            Expr::Div(a, b) => {
                let den = ev(b, order)?;
                if order == 0 {
                    return Ok(RationalSeries::zero(0));
                }
                if !den.coeff(0).is_zero() {
                    return ev(a, order)?.div(&den);
                }
                // cancel x^v from both sides, expanding far enough to keep `order` terms
                let v = den.valuation().ok_or(SeriesError::ZeroConstantDivisor)?;
                let num = ev(a, order + v)?.shift_down(v)?;
                let den = ev(b, order + v)?.shift_down(v)?;
                num.div(&den)?
            }
        })
    }

    /// Number of polynomial leaves, counting integer constants.
    pub fn poly_leaves(&self) -> usize {
        let mut n = 0;
        self.visit_leaves(&mut |_| n += 1);
        n
    }

    fn visit_leaves(&self, f: &mut dyn FnMut(&Expr)) {
        match self {
            Expr::Poly(_) | Expr::Int(_) => f(self),
            Expr::X | Expr::Catalan | Expr::Own => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Compose(a, b) => {
                a.visit_leaves(f);
                b.visit_leaves(f);
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Sqrt(a) => a.visit_leaves(f),
        }
    }

    /// Adds `delta` to coefficient `index` of the `leaf`-th polynomial leaf
    /// (depth-first order). Returns `None` when the leaf does not exist.
    pub fn corrupt(&self, leaf: usize, index: usize, delta: i64) -> Option<Expr> {
        let mut counter = 0;
        let out = self.corrupt_inner(leaf, index, delta, &mut counter);
        (counter > leaf).then_some(out)
    }

    fn corrupt_inner(&self, leaf: usize, index: usize, delta: i64, counter: &mut usize) -> Expr {
        let leaf_coeffs = match self {
            Expr::Poly(c) => Some(c.clone()),
            Expr::Int(k) => Some(vec![*k]),
            _ => None,
        };
        if let Some(mut c) = leaf_coeffs {
            let hit = *counter == leaf;
            *counter += 1;
            if !hit {
                return self.clone();
            }
            if c.len() <= index {
                c.resize(index + 1, 0);
            }
            c[index] += delta;
            return Expr::Poly(c);
        }
        let mut go = |e: &Expr| Box::new(e.corrupt_inner(leaf, index, delta, counter));
        match self {
            Expr::Add(a, b) => Expr::Add(go(a), go(b)),
            Expr::Sub(a, b) => Expr::Sub(go(a), go(b)),
            Expr::Mul(a, b) => Expr::Mul(go(a), go(b)),
            Expr::Div(a, b) => Expr::Div(go(a), go(b)),
            Expr::Compose(a, b) => Expr::Compose(go(a), go(b)),
            Expr::Neg(a) => Expr::Neg(go(a)),
            Expr::Pow(a, k) => Expr::Pow(go(a), *k),
            Expr::Sqrt(a) => Expr::Sqrt(go(a)),
            _ => self.clone(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Poly(c) if c.iter().filter(|&&k| k != 0).count() > 1 => 1,
            Expr::Int(k) if *k < 0 => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(..) | Expr::Div(..) => 3,
            Expr::Poly(c) if c.iter().any(|&k| k != 0 && k != 1) || c.len() > 1 => 3,
            _ => 4,
        }
    }
}

fn poly_string(c: &[i64]) -> String {
    let mut out = String::new();
    for (k, &a) in c.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let sign = if a < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = a.unsigned_abs();
        let body = match (k, mag) {
            (0, m) => m.to_string(),
            (1, 1) => "x".to_string(),
            (1, m) => format!("{m}x"),
            (_, 1) => format!("x^{k}"),
            (_, m) => format!("{m}x^{k}"),
        };
        out.push_str(sign);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Wrapped<'a>(&'a Expr, u8);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::X => f.write_str("x"),
            Expr::Int(k) => write!(f, "{k}"),
            Expr::Poly(c) => f.write_str(&poly_string(c)),
            Expr::Catalan => f.write_str("C"),
            Expr::Own => f.write_str("F"),
            Expr::Add(a, b) => write!(f, "{} + {}", a, Wrapped(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", a, Wrapped(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Wrapped(a, 3), Wrapped(b, 4)),
            Expr::Div(a, b) => write!(f, "{}/{}", Wrapped(a, 3), Wrapped(b, 4)),
            Expr::Neg(a) => write!(f, "-{}", Wrapped(a, 3)),
            Expr::Pow(a, k) => write!(f, "{}^{k}", Wrapped(a, 4)),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
            Expr::Compose(a, b) => write!(f, "{}∘({})", Wrapped(a, 4), b),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// How a catalog entry produces its series.
#[derive(Clone, Debug)]
pub enum Builder {
    Expr(Expr),
    Native { name: &'static str, f: NativeFn },
}

impl Builder {
    pub fn eval(
        &self,
        order: usize,
        own: Option<&dyn Fn(usize) -> Result<RationalSeries, SeriesError>>,
    ) -> Result<RationalSeries, SeriesError> {
        match self {
            Builder::Expr(e) => e.eval(order, own),
            Builder::Native { f, .. } => f(order),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Builder::Expr(e) => e.to_string(),
            Builder::Native { name, .. } => format!("<{name}>"),
        }
    }

    pub fn as_expr(&self) -> Option<&Expr> {
        match self {
            Builder::Expr(e) => Some(e),
            Builder::Native { .. } => None,
        }
    }
}

impl From<Expr> for Builder {
    fn from(e: Expr) -> Self {
        Builder::Expr(e)
    }
}

/// Shorthand for a rational number with small parts.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}
