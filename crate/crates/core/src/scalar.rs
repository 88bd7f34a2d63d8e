//! Exact arithmetic in the field tower Q ⊂ Q(w) ⊂ Q(w)(r), where w is a
//! primitive third root of unity (w^2 + w + 1 = 0) and r generates at most
//! one quadratic extension adjoined at runtime.
//!
//! A [`Scalar`] stores coordinates over the power basis of its tower level:
//! `[a]` for rationals, `[a, b]` for a + b·w, and `[a, b, c, d]` for
//! (a + b·w) + (c + d·w)·r. Representations are trimmed so that equal values
//! compare equal structurally.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

pub type Rat = BigRational;

/// Rational constant from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Reduced fraction n/d. Panics if d = 0.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a rational, if it is a perfect square.
pub fn sqrt_rat(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// The quadratic layer: r satisfies r^2 + c1·r + c0 = 0 with c1, c0 in Q(w).
/// Coefficients are stored as (rational part, w part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub c1: (Rat, Rat),
    pub c0: (Rat, Rat),
}

impl QuadExt {
    /// The extension r^2 = d given a non-square d in Q(w).
    pub fn sqrt_of(d: &Scalar) -> QuadExt {
        assert!(d.level() <= 2, "sqrt extension base must lie in Q(w)");
        let (a, b) = d.base_parts();
        QuadExt {
            c1: (Rat::zero(), Rat::zero()),
            c0: (-a, -b),
        }
    }

    fn c1_scalar(&self) -> Scalar {
        Scalar::from_parts(self.c1.0.clone(), self.c1.1.clone())
    }

    fn c0_scalar(&self) -> Scalar {
        Scalar::from_parts(self.c0.0.clone(), self.c0.1.clone())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c1 = Scalar::from_parts(self.c1.0.clone(), self.c1.1.clone());
        let c0 = Scalar::from_parts(self.c0.0.clone(), self.c0.1.clone());
        if c1.is_zero() {
            write!(f, "r^2 + ({c0})")
        } else {
            write!(f, "r^2 + ({c1})*r + ({c0})")
        }
    }
}

/// An immutable tower handle: Q(w) optionally extended by one quadratic layer.
#[derive(Clone, Debug, Default)]
pub struct FieldTower {
    quad: Option<Arc<QuadExt>>,
}

impl FieldTower {
    /// The base tower Q ⊂ Q(w).
    pub fn base() -> FieldTower {
        FieldTower { quad: None }
    }

    /// Tower carrying an existing quadratic layer.
    pub fn with_quad(quad: Arc<QuadExt>) -> FieldTower {
        FieldTower { quad: Some(quad) }
    }

    pub fn quad(&self) -> Option<&Arc<QuadExt>> {
        self.quad.as_ref()
    }

    /// Adjoin a root of the monic quadratic x^2 + c1·x + c0 (coefficients in
    /// the current top layer, which must be Q(w) or below).
    ///
    /// Fails with [`Error::Reducible`] when the polynomial splits over Q(w)
    /// and with [`Error::TowerDepthExceeded`] when a quadratic layer is
    /// already present.
    pub fn adjoin_quadratic(&self, c1: &Scalar, c0: &Scalar) -> Result<FieldTower, Error> {
        if self.quad.is_some() {
            return Err(Error::TowerDepthExceeded);
        }
        if c1.level() > 2 || c0.level() > 2 {
            return Err(Error::TowerDepthExceeded);
        }
        // Discriminant test: x^2 + c1 x + c0 splits iff c1^2 - 4 c0 is a
        // square in Q(w).
        let disc = &(c1 * c1) - &(&Scalar::from_int(4) * c0);
        if disc.sqrt_in_base().is_some() {
            return Err(Error::Reducible);
        }
        let (a1, b1) = c1.base_parts();
        let (a0, b0) = c0.base_parts();
        Ok(FieldTower {
            quad: Some(Arc::new(QuadExt {
                c1: (a1, b1),
                c0: (a0, b0),
            })),
        })
    }

    /// Generator of the quadratic layer, if any.
    pub fn generator(&self) -> Option<Scalar> {
        self.quad.as_ref().map(|q| Scalar {
            coords: vec![Rat::zero(), Rat::zero(), Rat::one(), Rat::zero()],
            quad: Some(q.clone()),
        })
    }
}

/// An element of the field tower.
#[derive(Clone)]
pub struct Scalar {
    /// Coordinates over {1}, {1, w} or {1, w, r, w·r}; trimmed so the top
    /// half is not all zero unless the length is 1.
    coords: Vec<Rat>,
    /// Present exactly when `coords.len() == 4`.
    quad: Option<Arc<QuadExt>>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::from_rat(Rat::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_rat(Rat::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rat(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_rat(ratio(n, d))
    }

    pub fn from_rat(r: Rat) -> Scalar {
        Scalar {
            coords: vec![r],
            quad: None,
        }
    }

    /// a + b·w.
    pub fn from_parts(a: Rat, b: Rat) -> Scalar {
        let mut s = Scalar {
            coords: vec![a, b],
            quad: None,
        };
        s.trim();
        s
    }

    /// The primitive third root of unity w.
    pub fn zeta() -> Scalar {
        Scalar::from_parts(Rat::zero(), Rat::one())
    }

    /// w^2 = -1 - w.
    pub fn zeta_sq() -> Scalar {
        Scalar::from_parts(-Rat::one(), -Rat::one())
    }

    /// w^k for any integer k.
    pub fn zeta_pow(k: i64) -> Scalar {
        match k.rem_euclid(3) {
            0 => Scalar::one(),
            1 => Scalar::zeta(),
            _ => Scalar::zeta_sq(),
        }
    }

    /// Tower level: 1 (rational), 2 (Q(w)), or 4 (quadratic layer).
    pub fn level(&self) -> usize {
        self.coords.len()
    }

    pub fn quad_ext(&self) -> Option<&Arc<QuadExt>> {
        self.quad.as_ref()
    }

    /// Rational and w coordinates of an element of level <= 2.
    pub fn base_parts(&self) -> (Rat, Rat) {
        assert!(self.level() <= 2, "element does not lie in Q(w)");
        let a = self.coords[0].clone();
        let b = self.coords.get(1).cloned().unwrap_or_else(Rat::zero);
        (a, b)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rat::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.level() == 1
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.level() == 1 {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn trim(&mut self) {
        if self.coords.len() == 4 && self.coords[2].is_zero() && self.coords[3].is_zero() {
            self.coords.truncate(2);
            self.quad = None;
        }
        if self.coords.len() == 2 && self.coords[1].is_zero() {
            self.coords.truncate(1);
        }
    }

    /// Canonical representative (trimmed coordinates, reduced fractions).
    /// Construction already maintains this; provided for the public API.
    pub fn normalize(mut self) -> Scalar {
        self.trim();
        self
    }

    fn coord(&self, i: usize) -> Rat {
        self.coords.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    fn unified_quad(&self, rhs: &Scalar) -> Option<Arc<QuadExt>> {
        match (&self.quad, &rhs.quad) {
            (None, None) => None,
            (Some(q), None) | (None, Some(q)) => Some(q.clone()),
            (Some(a), Some(b)) => {
                assert!(a.as_ref() == b.as_ref(), "mixing scalars from different towers");
                Some(a.clone())
            }
        }
    }

    /// Complex conjugation on the w-layer: w -> w^2. Only the base layer is
    /// touched; level-4 elements conjugate coordinate-wise over r.
    pub fn conj_w(&self) -> Scalar {
        // a + b w  ->  a + b w^2 = (a - b) - b w
        let part = |a: &Rat, b: &Rat| (a - b, -b.clone());
        let (a0, b0) = part(&self.coord(0), &self.coord(1));
        let mut coords = vec![a0, b0];
        if self.level() == 4 {
            let (a1, b1) = part(&self.coord(2), &self.coord(3));
            coords.push(a1);
            coords.push(b1);
        }
        let mut s = Scalar {
            coords,
            quad: self.quad.clone(),
        };
        s.trim();
        s
    }

    /// Field norm N: Q(w) -> Q, N(x + y w) = x^2 - x y + y^2.
    /// Defined for elements of level <= 2.
    pub fn norm_base(&self) -> Option<Rat> {
        if self.level() > 2 {
            return None;
        }
        let (x, y) = self.base_parts();
        Some(&(&x * &x) - &(&x * &y) + &(&y * &y))
    }

    /// Square root inside Q(w), if one exists. Requires level <= 2.
    pub fn sqrt_in_base(&self) -> Option<Scalar> {
        if self.level() > 2 {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let (u, v) = self.base_parts();
        // t = x + y w with t^2 = u + v w means x^2 - y^2 = u and y(2x - y) = v.
        if v.is_zero() {
            // y = 0: x^2 = u, or y = 2x: -3x^2 = u.
            if let Some(x) = sqrt_rat(&u) {
                return Some(Scalar::from_rat(x));
            }
            let m = -&u / rat(3);
            if let Some(x) = sqrt_rat(&m) {
                let y = &x * rat(2);
                return Some(Scalar::from_parts(x, y));
            }
            return None;
        }
        // General case: N(t)^2 = N(s), and 3y^2 = v + 2(m - u) where m = N(t).
        let n = self.norm_base().unwrap();
        let m = sqrt_rat(&n)?;
        for m in [m.clone(), -m] {
            let y2 = (&v + (&m - &u) * rat(2)) / rat(3);
            if let Some(y) = sqrt_rat(&y2) {
                for y in [y.clone(), -y] {
                    if y.is_zero() {
                        continue;
                    }
                    let x = (&y * &y * rat(2) - (&m - &u)) / &y;
                    let cand = Scalar::from_parts(x, y);
                    if &(&cand * &cand) == self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    /// Square root within the given tower: first in Q(w), then as a multiple
    /// of the quadratic generator when the tower has one with r^2 rational
    /// over Q(w).
    pub fn sqrt_in_tower(&self, tower: &FieldTower) -> Option<Scalar> {
        if let Some(s) = self.sqrt_in_base() {
            return Some(s);
        }
        if self.level() > 2 {
            return None;
        }
        let quad = tower.quad()?;
        // Only pure square-root layers r^2 = d admit this shortcut.
        if !quad.c1.0.is_zero() || !quad.c1.1.is_zero() {
            return None;
        }
        let d = -Scalar::from_parts(quad.c0.0.clone(), quad.c0.1.clone());
        if d.is_zero() {
            return None;
        }
        // self = (y r)^2 = y^2 d  <=>  self/d is a square in Q(w).
        let y = (self / &d).sqrt_in_base()?;
        let r = tower.generator().unwrap();
        Some(&y * &r)
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self.level() {
            1 => Some(Scalar::from_rat(self.coords[0].recip())),
            2 => {
                let n = self.norm_base().unwrap();
                let c = self.conj_w();
                Some(c.scale_rat(&n.recip()))
            }
            _ => {
                // (a + b r)^{-1} = ((a - b c1) - b r) / (a^2 - a b c1 + b^2 c0)
                let quad = self.quad.as_ref().unwrap().clone();
                let a = Scalar::from_parts(self.coord(0), self.coord(1));
                let b = Scalar::from_parts(self.coord(2), self.coord(3));
                let c1 = quad.c1_scalar();
                let c0 = quad.c0_scalar();
                let den = &(&a * &a) - &(&(&a * &b) * &c1) + &(&(&b * &b) * &c0);
                let den_inv = den.inv().expect("norm of nonzero element is nonzero");
                let re = &(&a - &(&b * &c1)) * &den_inv;
                let im = &(-&b) * &den_inv;
                let mut s = Scalar {
                    coords: vec![re.coord(0), re.coord(1), im.coord(0), im.coord(1)],
                    quad: Some(quad),
                };
                s.trim();
                Some(s)
            }
        }
    }

    fn scale_rat(&self, r: &Rat) -> Scalar {
        let mut s = Scalar {
            coords: self.coords.iter().map(|c| c * r).collect(),
            quad: self.quad.clone(),
        };
        s.trim();
        s
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Deterministic total order used for canonical tie-breaking. This is a
    /// structural order, not compatible with field operations.
    pub fn cmp_key(&self, other: &Scalar) -> Ordering {
        self.level().cmp(&other.level()).then_with(|| {
            for i in 0..self.coords.len().max(other.coords.len()) {
                let c = self.coord(i).cmp(&other.coord(i));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        if self.coords != other.coords {
            return false;
        }
        match (&self.quad, &other.quad) {
            (None, None) => true,
            (Some(a), Some(b)) => a.as_ref() == b.as_ref(),
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop_owned!(Add, add);
binop_owned!(Sub, sub);
binop_owned!(Mul, mul);
binop_owned!(Div, div);

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let quad = self.unified_quad(rhs);
        let n = if quad.is_some() { 4 } else { 2 };
        let mut coords = Vec::with_capacity(n);
        for i in 0..n {
            coords.push(self.coord(i) + rhs.coord(i));
        }
        let mut s = Scalar { coords, quad };
        s.trim();
        s
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let mut s = Scalar {
            coords: self.coords.iter().map(|c| -c).collect(),
            quad: self.quad.clone(),
        };
        s.trim();
        s
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // Base-layer product: (a0 + b0 w)(a1 + b1 w) with w^2 = -1 - w.
        fn mul_base(x: (&Rat, &Rat), y: (&Rat, &Rat)) -> (Rat, Rat) {
            let (a0, b0) = x;
            let (a1, b1) = y;
            let bb = b0 * b1;
            (a0 * a1 - &bb, a0 * b1 + b0 * a1 - &bb)
        }
        let quad = self.unified_quad(rhs);
        let xa = (self.coord(0), self.coord(1));
        let xb = (self.coord(2), self.coord(3));
        let ya = (rhs.coord(0), rhs.coord(1));
        let yb = (rhs.coord(2), rhs.coord(3));
        let aa = mul_base((&xa.0, &xa.1), (&ya.0, &ya.1));
        if quad.is_none() {
            let mut s = Scalar {
                coords: vec![aa.0, aa.1],
                quad: None,
            };
            s.trim();
            return s;
        }
        let q = quad.as_ref().unwrap();
        // (A + B r)(C + D r) = AC + BD r^2 + (AD + BC) r,
        // with r^2 = -(c1 r + c0).
        let bd = mul_base((&xb.0, &xb.1), (&yb.0, &yb.1));
        let ad_bc = {
            let ad = mul_base((&xa.0, &xa.1), (&yb.0, &yb.1));
            let bc = mul_base((&xb.0, &xb.1), (&ya.0, &ya.1));
            (ad.0 + bc.0, ad.1 + bc.1)
        };
        let bd_c0 = mul_base((&bd.0, &bd.1), (&q.c0.0, &q.c0.1));
        let bd_c1 = mul_base((&bd.0, &bd.1), (&q.c1.0, &q.c1.1));
        let re = (aa.0 - bd_c0.0, aa.1 - bd_c0.1);
        let im = (ad_bc.0 - bd_c1.0, ad_bc.1 - bd_c1.1);
        let mut s = Scalar {
            coords: vec![re.0, re.1, im.0, im.1],
            quad,
        };
        s.trim();
        s
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = ["", "w", "r", "w*r"];
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", basis[i])?;
            } else {
                write!(f, "{mag}*{}", basis[i])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_relations() {
        let w = Scalar::zeta();
        // w^2 + w + 1 = 0
        assert!((&(&w * &w) + &w + Scalar::one()).is_zero());
        // w^3 = 1
        assert!(w.pow(3).is_one());
        // w + w^2 = -1
        assert_eq!(&w + &Scalar::zeta_sq(), Scalar::from_int(-1));
    }

    #[test]
    fn fraction_reduction() {
        assert_eq!(Scalar::from_ratio(2, 4), Scalar::from_ratio(1, 2));
    }

    #[test]
    fn norm_formula() {
        let s = Scalar::from_parts(rat(3), rat(-2));
        // N(3 - 2w) = 9 + 6 + 4 = 19
        assert_eq!(s.norm_base().unwrap(), rat(19));
    }

    #[test]
    fn inverse_roundtrip() {
        let s = Scalar::from_parts(ratio(2, 3), rat(5));
        assert!((&s * &s.inv().unwrap()).is_one());
    }

    #[test]
    fn sqrt_of_minus_three() {
        // -3 = (1 + 2w)^2
        let m3 = Scalar::from_int(-3);
        let root = m3.sqrt_in_base().unwrap();
        assert_eq!(&root * &root, m3);
    }

    #[test]
    fn adjoin_sqrt2_is_irreducible() {
        let tower = FieldTower::base();
        let t2 = tower
            .adjoin_quadratic(&Scalar::zero(), &Scalar::from_int(-2))
            .unwrap();
        let r = t2.generator().unwrap();
        assert_eq!(&r * &r, Scalar::from_int(2));
        assert!((&r * &r.inv().unwrap()).is_one());
    }

    #[test]
    fn adjoin_reducible_is_rejected() {
        let tower = FieldTower::base();
        // x^2 - 1 splits.
        assert!(matches!(
            tower.adjoin_quadratic(&Scalar::zero(), &Scalar::from_int(-1)),
            Err(Error::Reducible)
        ));
        // x^2 + x + 1 already has the root w.
        assert!(matches!(
            tower.adjoin_quadratic(&Scalar::one(), &Scalar::one()),
            Err(Error::Reducible)
        ));
    }

    #[test]
    fn tower_depth_capped() {
        let tower = FieldTower::base()
            .adjoin_quadratic(&Scalar::zero(), &Scalar::from_int(-2))
            .unwrap();
        assert!(matches!(
            tower.adjoin_quadratic(&Scalar::zero(), &Scalar::from_int(-5)),
            Err(Error::TowerDepthExceeded)
        ));
    }

    #[test]
    fn quad_layer_arithmetic() {
        let tower = FieldTower::base()
            .adjoin_quadratic(&Scalar::zeta(), &Scalar::from_int(1))
            .unwrap();
        let r = tower.generator().unwrap();
        // r^2 = -(w r + 1)
        let sq = &r * &r;
        let expected = -(&(&Scalar::zeta() * &r) + Scalar::one());
        assert_eq!(sq, expected);
        let x = &(&r * &Scalar::from_int(3)) + &Scalar::zeta();
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn sqrt_in_tower_uses_generator() {
        let tower = FieldTower::base()
            .adjoin_quadratic(&Scalar::zero(), &Scalar::from_int(-2))
            .unwrap();
        // sqrt(8) = 2 r with r^2 = 2.
        let s = Scalar::from_int(8).sqrt_in_tower(&tower).unwrap();
        assert_eq!(&s * &s, Scalar::from_int(8));
        assert_eq!(s.level(), 4);
    }
}
