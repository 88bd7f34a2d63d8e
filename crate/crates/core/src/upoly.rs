//! Univariate polynomial arithmetic over the field tower, plus the small
//! amount of elimination theory the geometry module needs: resultants,
//! rational root extraction, and root finding over Q(w).

use num_bigint::BigInt;
use num_integer::Integer;

use num_traits::{One, Signed, Zero};

use crate::scalar::{rat, Rat, Scalar};

/// Dense univariate polynomial, ascending coefficients, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> UPoly {
        while coeffs.last().map_or(false, Scalar::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: vec![] }
    }

    pub fn constant(c: Scalar) -> UPoly {
        UPoly::new(vec![c])
    }

    pub fn monomial(c: Scalar, deg: usize) -> UPoly {
        let mut coeffs = vec![Scalar::zero(); deg];
        coeffs.push(c);
        UPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> &Scalar {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        if self.coeffs.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &Scalar::from_int(i as i64 + 1))
                .collect(),
        )
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.deg() < divisor.deg() {
            return (UPoly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let dd = divisor.deg();
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &(&q * dc);
            }
            quot[i - dd] = q;
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic gcd (field coefficients).
    pub fn gcd(&self, rhs: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = a.leading().inv().unwrap();
            a.scale(&inv)
        }
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.leading().inv().unwrap())
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_zero() || self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Resultant of two polynomials over the scalar field.
    pub fn resultant(&self, rhs: &UPoly) -> Scalar {
        fn go(f: &UPoly, g: &UPoly) -> Scalar {
            if f.is_zero() || g.is_zero() {
                return Scalar::zero();
            }
            let (m, n) = (f.deg(), g.deg());
            if n == 0 {
                return g.leading().pow(m as u32);
            }
            if m < n {
                let sign = if (m * n) % 2 == 1 {
                    Scalar::from_int(-1)
                } else {
                    Scalar::one()
                };
                return &sign * &go(g, f);
            }
            let (_, r) = f.div_rem(g);
            if r.is_zero() {
                return Scalar::zero();
            }
            let k = r.deg();
            let sign = if (m * n) % 2 == 1 {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            };
            &(&sign * &g.leading().pow((m - k) as u32)) * &go(g, &r)
        }
        go(self, rhs)
    }

    /// All roots lying in Q(w), each returned once (multiplicity discarded).
    pub fn roots_in_base(&self) -> Vec<Scalar> {
        roots_in_base(self)
    }
}

impl std::fmt::Display for UPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Divisors of a nonzero integer, by trial division. Includes 1 and |n|.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        let d_sq = &d * &d;
        if d_sq > n {
            break;
        }
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of a polynomial with rational coefficients, by the
/// rational-root theorem over the cleared-denominator integer polynomial.
pub fn rational_roots(coeffs: &[Rat]) -> Vec<Rat> {
    let mut cs: Vec<Rat> = coeffs.to_vec();
    while cs.last().map_or(false, Rat::is_zero) {
        cs.pop();
    }
    if cs.is_empty() {
        return vec![];
    }
    if cs.len() == 1 {
        return vec![];
    }
    // Clear denominators.
    let mut lcm = BigInt::one();
    for c in &cs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = cs.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    // Strip x | p.
    let mut low = 0;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rat::zero());
    }
    let ints = &ints[low..];
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = &ints[0];
    let an = ints.last().unwrap();
    if a0.is_zero() {
        return roots;
    }
    let eval = |x: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for c in ints.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    };
    for p in divisors(a0) {
        for q in divisors(an) {
            for sign in [1i64, -1] {
                let cand = Rat::new(&p * BigInt::from(sign), q.clone());
                if eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// Bivariate polynomial over Q, stored as coefficients of powers of y, each a
/// rational univariate polynomial in x.
#[derive(Clone, Debug)]
pub struct RatBiPoly {
    pub y_coeffs: Vec<Vec<Rat>>,
}

impl RatBiPoly {
    fn trim(&mut self) {
        while self
            .y_coeffs
            .last()
            .map_or(false, |c| c.iter().all(Rat::is_zero))
        {
            self.y_coeffs.pop();
        }
    }

    fn eval_x(&self, x: &Rat) -> Vec<Rat> {
        self.y_coeffs
            .iter()
            .map(|c| {
                let mut acc = Rat::zero();
                for a in c.iter().rev() {
                    acc = acc * x + a;
                }
                acc
            })
            .collect()
    }

    fn deg_x(&self) -> usize {
        self.y_coeffs
            .iter()
            .map(|c| {
                let mut d = c.len();
                while d > 0 && c[d - 1].is_zero() {
                    d -= 1;
                }
                d.saturating_sub(1)
            })
            .max()
            .unwrap_or(0)
    }
}

/// Resultant in y of two rational bivariate polynomials, computed by
/// evaluation and Lagrange interpolation at integer sample points where the
/// leading y-coefficients stay nonzero.
fn resultant_y(a: &RatBiPoly, b: &RatBiPoly) -> Vec<Rat> {
    let (mut a, mut b) = (a.clone(), b.clone());
    a.trim();
    b.trim();
    if a.y_coeffs.is_empty() || b.y_coeffs.is_empty() {
        return vec![];
    }
    let dya = a.y_coeffs.len() - 1;
    let dyb = b.y_coeffs.len() - 1;
    let bound = dya * b.deg_x() + dyb * a.deg_x() + 1;
    let mut xs: Vec<Rat> = Vec::new();
    let mut vals: Vec<Rat> = Vec::new();
    let mut k: i64 = 0;
    while xs.len() < bound {
        let x = rat(k);
        k += 1;
        let ca = a.eval_x(&x);
        let cb = b.eval_x(&x);
        if ca.last().unwrap().is_zero() || cb.last().unwrap().is_zero() {
            continue;
        }
        let pa = UPoly::new(ca.into_iter().map(Scalar::from_rat).collect());
        let pb = UPoly::new(cb.into_iter().map(Scalar::from_rat).collect());
        let r = pa.resultant(&pb);
        xs.push(x);
        vals.push(r.to_rat().expect("rational resultant"));
        if k > 10_000 {
            break;
        }
    }
    lagrange(&xs, &vals)
}

/// Lagrange interpolation over Q.
fn lagrange(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let n = xs.len();
    let mut acc = vec![Rat::zero(); n.max(1)];
    for i in 0..n {
        // Basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            // basis *= (x - xj)
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * xj);
            }
            basis = next;
            denom *= &xs[i] - xj;
        }
        let w = &ys[i] / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] = &acc[k] + &(c * &w);
        }
    }
    while acc.last().map_or(false, Rat::is_zero) {
        acc.pop();
    }
    acc
}

/// Split p(x + y*w) into its rational and w components A(x, y), B(x, y).
fn split_w_parts(p: &UPoly) -> (RatBiPoly, RatBiPoly) {
    // (x + y w)^k expanded in the basis {1, w} with bivariate rational coords.
    // pow_re[k], pow_w[k] are polynomials in (x, y).
    #[derive(Clone)]
    struct Biv {
        // coefficient of x^i y^j at [j][i]
        c: Vec<Vec<Rat>>,
    }
    impl Biv {
        fn zero() -> Biv {
            Biv { c: vec![] }
        }
        fn one() -> Biv {
            Biv {
                c: vec![vec![Rat::one()]],
            }
        }
        fn set_add(&mut self, j: usize, i: usize, v: &Rat) {
            while self.c.len() <= j {
                self.c.push(vec![]);
            }
            while self.c[j].len() <= i {
                self.c[j].push(Rat::zero());
            }
            self.c[j][i] = &self.c[j][i] + v;
        }
        fn add_scaled(&mut self, other: &Biv, s: &Rat) {
            for (j, row) in other.c.iter().enumerate() {
                for (i, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        self.set_add(j, i, &(v * s));
                    }
                }
            }
        }
        // multiply by x
        fn mul_x(&self) -> Biv {
            let mut out = Biv::zero();
            for (j, row) in self.c.iter().enumerate() {
                for (i, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out.set_add(j, i + 1, v);
                    }
                }
            }
            out
        }
        // multiply by y
        fn mul_y(&self) -> Biv {
            let mut out = Biv::zero();
            for (j, row) in self.c.iter().enumerate() {
                for (i, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out.set_add(j + 1, i, v);
                    }
                }
            }
            out
        }
    }

    let deg = p.degree().unwrap_or(0);
    let mut pow_re = Vec::with_capacity(deg + 1);
    let mut pow_w = Vec::with_capacity(deg + 1);
    pow_re.push(Biv::one());
    pow_w.push(Biv::zero());
    for k in 0..deg {
        // (re + w im)(x + y w) = re*x - im*y + w (re*y + im*x - im*y)
        let re = &pow_re[k];
        let im = &pow_w[k];
        let mut nre = Biv::zero();
        nre.add_scaled(&re.mul_x(), &Rat::one());
        nre.add_scaled(&im.mul_y(), &-Rat::one());
        let mut nim = Biv::zero();
        nim.add_scaled(&re.mul_y(), &Rat::one());
        nim.add_scaled(&im.mul_x(), &Rat::one());
        nim.add_scaled(&im.mul_y(), &-Rat::one());
        pow_re.push(nre);
        pow_w.push(nim);
    }
    let mut a = Biv::zero();
    let mut b = Biv::zero();
    for (k, c) in p.coeffs.iter().enumerate() {
        assert!(c.level() <= 2, "root finding restricted to Q(w) coefficients");
        let (cr, cw) = c.base_parts();
        // (cr + cw w)(re + w im) = cr re - cw im + w(cr im + cw re - cw im)
        a.add_scaled(&pow_re[k], &cr);
        a.add_scaled(&pow_w[k], &-cw.clone());
        b.add_scaled(&pow_w[k], &(&cr - &cw));
        b.add_scaled(&pow_re[k], &cw);
    }
    // Repackage: y-major layout.
    let pack = |biv: Biv| RatBiPoly {
        y_coeffs: biv.c.into_iter().collect(),
    };
    (pack(a), pack(b))
}

fn upoly_from_rats(coeffs: &[Rat]) -> UPoly {
    UPoly::new(coeffs.iter().cloned().map(Scalar::from_rat).collect())
}

/// All roots of `p` lying in Q(w). Coefficients must lie in Q(w).
pub fn roots_in_base(p: &UPoly) -> Vec<Scalar> {
    if p.is_zero() || p.deg() == 0 {
        return vec![];
    }
    let p = p.squarefree_part();
    let mut roots: Vec<Scalar> = Vec::new();
    let mut push = |s: Scalar| {
        if p.eval(&s).is_zero() && !roots.contains(&s) {
            roots.push(s);
        }
    };
    // Degree <= 2: direct formulas.
    if p.deg() == 1 {
        push(-(&p.coeff(0) / &p.coeff(1)));
        return roots;
    }
    if p.deg() == 2 {
        let a = p.coeff(2);
        let b = p.coeff(1);
        let c = p.coeff(0);
        let disc = &(&b * &b) - &(&(&Scalar::from_int(4) * &a) * &c);
        if let Some(s) = disc.sqrt_in_base() {
            let two_a = &Scalar::from_int(2) * &a;
            push(&(&(-&b) + &s) / &two_a);
            push(&(&(-&b) - &s) / &two_a);
        }
        return roots;
    }
    // Higher degree over Q(w): reduce to a rational system via alpha = x + y w.
    let (a, b) = split_w_parts(&p);
    // Rational roots (y = 0): common rational roots of A(x,0), B(x,0).
    let a0: Vec<Rat> = a
        .y_coeffs
        .first()
        .cloned()
        .unwrap_or_default();
    let b0: Vec<Rat> = b.y_coeffs.first().cloned().unwrap_or_default();
    let ga = upoly_from_rats(&a0);
    let gb = upoly_from_rats(&b0);
    let g = if gb.is_zero() { ga } else { ga.gcd(&gb) };
    if !g.is_zero() {
        let coeffs: Vec<Rat> = g.coeffs.iter().map(|c| c.to_rat().unwrap()).collect();
        for r in rational_roots(&coeffs) {
            push(Scalar::from_rat(r));
        }
    }
    // Roots with y != 0 via the resultant in y.
    let res = resultant_y(&a, &b);
    for x0 in rational_roots(&res) {
        // Common y-roots of A(x0, y) and B(x0, y).
        let ay = upoly_from_rats(&a.eval_x(&x0));
        let by = upoly_from_rats(&b.eval_x(&x0));
        let g = if by.is_zero() {
            ay
        } else if ay.is_zero() {
            by
        } else {
            ay.gcd(&by)
        };
        if g.is_zero() || g.degree() == Some(0) {
            continue;
        }
        let coeffs: Vec<Rat> = g.coeffs.iter().map(|c| c.to_rat().unwrap()).collect();
        for y0 in rational_roots(&coeffs) {
            if y0.is_zero() {
                continue;
            }
            push(Scalar::from_parts(x0.clone(), y0));
        }
    }
    roots
}

/// Remove every Q(w)-rational root from the squarefree part of `p`, returning
/// the found roots and the residual factor.
pub fn strip_base_roots(p: &UPoly) -> (Vec<Scalar>, UPoly) {
    let mut q = p.squarefree_part();
    let roots = roots_in_base(&q);
    for r in &roots {
        let lin = UPoly::new(vec![-r, Scalar::one()]);
        let (quot, rem) = q.div_rem(&lin);
        debug_assert!(rem.is_zero());
        q = quot;
    }
    (roots, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn div_rem_roundtrip() {
        let p = UPoly::new(vec![s(2), s(0), s(1), s(3)]);
        let d = UPoly::new(vec![s(-1), s(1)]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(d.mul(&q).add(&r), p);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = UPoly::new(vec![s(-1), s(1)]); // x - 1
        let b = UPoly::new(vec![s(2), s(1)]); // x + 2
        let c = UPoly::new(vec![s(1), s(1)]); // x + 1
        let p = a.mul(&b);
        let q = a.mul(&c);
        assert_eq!(p.gcd(&q), a.monic());
    }

    #[test]
    fn rational_roots_cubic() {
        // (x - 1)(x + 2)(2x - 3)
        let p = [rat(6), rat(-5), rat(-5), rat(2)];
        // expand: 2x^3 + x^2 ... let's just test membership on the true poly:
        // (x-1)(x+2)(2x-3) = (x^2 + x - 2)(2x - 3) = 2x^3 - x^2 - 7x + 6
        let p2 = [rat(6), rat(-7), rat(-1), rat(2)];
        let mut roots = rational_roots(&p2);
        roots.sort();
        assert_eq!(roots, vec![rat(-2), rat(1), ratio(3, 2)]);
        let _ = p;
    }

    #[test]
    fn roots_in_base_quadratic_with_w() {
        // (x - w)(x - 2) = x^2 - (2 + w)x + 2w
        let w = Scalar::zeta();
        let p = UPoly::new(vec![
            &s(2) * &w,
            -(&s(2) + &w),
            s(1),
        ]);
        let mut roots = p.roots_in_base();
        roots.sort_by(|a, b| a.cmp_key(b));
        assert!(roots.contains(&w));
        assert!(roots.contains(&s(2)));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn roots_in_base_cubic_with_w() {
        // (x - w)(x - w^2)(x - 1) = x^3 - 1... actually roots of x^3 - 1.
        let p = UPoly::new(vec![s(-1), s(0), s(0), s(1)]);
        let roots = p.roots_in_base();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(r.pow(3).is_one());
        }
    }

    #[test]
    fn roots_quartic_mixed() {
        // (x^2 - 2)(x - 1)(x - w): Q(w)-roots are 1 and w only.
        let w = Scalar::zeta();
        let f1 = UPoly::new(vec![s(-2), s(0), s(1)]);
        let f2 = UPoly::new(vec![s(-1), s(1)]);
        let f3 = UPoly::new(vec![-&w, s(1)]);
        let p = f1.mul(&f2).mul(&f3);
        let roots = p.roots_in_base();
        assert_eq!(roots.len(), 2);
        let (found, residual) = strip_base_roots(&p);
        assert_eq!(found.len(), 2);
        assert_eq!(residual.deg(), 2);
    }

    #[test]
    fn resultant_detects_common_root() {
        let a = UPoly::new(vec![s(-1), s(1)]); // x - 1
        let b = UPoly::new(vec![s(-2), s(1)]); // x - 2
        let p = a.mul(&b);
        let q = a.clone();
        assert!(p.resultant(&q).is_zero());
        let r = UPoly::new(vec![s(-3), s(1)]);
        assert!(!p.resultant(&r).is_zero());
    }
}
