//! Dense homogeneous polynomial algebra in three variables (degree ≤ 3),
//! binary forms in two variables, projective transformations, and the
//! restriction / multiplicity machinery used by the classifiers.

use crate::linalg::{self, Mat3};
use crate::scalar::Scalar;
use crate::upoly::UPoly;

static MONOMIALS_0: [(u8, u8, u8); 1] = [(0, 0, 0)];
static MONOMIALS_1: [(u8, u8, u8); 3] = [(1, 0, 0), (0, 1, 0), (0, 0, 1)];
static MONOMIALS_2: [(u8, u8, u8); 6] = [
    (2, 0, 0),
    (1, 1, 0),
    (1, 0, 1),
    (0, 2, 0),
    (0, 1, 1),
    (0, 0, 2),
];
static MONOMIALS_3: [(u8, u8, u8); 10] = [
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
];

/// Exponent triples (e0, e1, e2) with e0+e1+e2 = d, in the fixed enumeration
/// order used for coefficient storage: e0 descending, then e1 descending.
pub fn monomials(d: u8) -> &'static [(u8, u8, u8)] {
    match d {
        0 => &MONOMIALS_0,
        1 => &MONOMIALS_1,
        2 => &MONOMIALS_2,
        3 => &MONOMIALS_3,
        _ => panic!("degree out of range"),
    }
}

fn monomial_index(d: u8, e: (u8, u8, u8)) -> usize {
    monomials(d)
        .iter()
        .position(|&m| m == e)
        .expect("exponent triple of wrong degree")
}

/// Homogeneous form in x0, x1, x2 of degree 1, 2 or 3 over the field tower.
///
/// For cubics the coefficient of x0^(3-i-j) x1^i x2^j is `a(i, j)`; for lines
/// the coefficient of x_k is `b(k)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TernaryForm {
    pub degree: u8,
    pub coeffs: Vec<Scalar>,
}

impl std::fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (&(e0, e1, e2), c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (var, e) in [("x0", e0), ("x1", e1), ("x2", e2)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{var}")?,
                    _ => write!(f, "*{var}^{e}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl TernaryForm {
    pub fn zero(degree: u8) -> TernaryForm {
        TernaryForm {
            degree,
            coeffs: vec![Scalar::zero(); monomials(degree).len()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn from_coeffs(degree: u8, coeffs: Vec<Scalar>) -> TernaryForm {
        assert_eq!(coeffs.len(), monomials(degree).len());
        TernaryForm { degree, coeffs }
    }

    /// Build a form from (exponent triple, coefficient) terms.
    pub fn from_terms(degree: u8, terms: &[((u8, u8, u8), Scalar)]) -> TernaryForm {
        let mut f = TernaryForm::zero(degree);
        for (e, c) in terms {
            let idx = monomial_index(degree, *e);
            f.coeffs[idx] = &f.coeffs[idx] + c;
        }
        f
    }

    pub fn line(b0: Scalar, b1: Scalar, b2: Scalar) -> TernaryForm {
        TernaryForm {
            degree: 1,
            coeffs: vec![b0, b1, b2],
        }
    }

    pub fn get(&self, e: (u8, u8, u8)) -> Scalar {
        self.coeffs[monomial_index(self.degree, e)].clone()
    }

    /// Cubic coefficient a_ij of x0^(3-i-j) x1^i x2^j.
    pub fn a(&self, i: u8, j: u8) -> Scalar {
        assert_eq!(self.degree, 3);
        self.get((3 - i - j, i, j))
    }

    /// Line coefficient b_k.
    pub fn b(&self, k: usize) -> Scalar {
        assert_eq!(self.degree, 1);
        self.coeffs[k].clone()
    }

    pub fn add(&self, rhs: &TernaryForm) -> TernaryForm {
        assert_eq!(self.degree, rhs.degree);
        TernaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &TernaryForm) -> TernaryForm {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> TernaryForm {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &TernaryForm) -> TernaryForm {
        let d = self.degree + rhs.degree;
        assert!(d <= 3, "product degree exceeds 3");
        let mut out = TernaryForm::zero(d);
        for (&ea, ca) in monomials(self.degree).iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (&eb, cb) in monomials(rhs.degree).iter().zip(&rhs.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                let e = (ea.0 + eb.0, ea.1 + eb.1, ea.2 + eb.2);
                let idx = monomial_index(d, e);
                out.coeffs[idx] = &out.coeffs[idx] + &(ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, p: &[Scalar; 3]) -> Scalar {
        let mut acc = Scalar::zero();
        for (&(e0, e1, e2), c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let t = &(&p[0].pow(e0 as u32) * &p[1].pow(e1 as u32)) * &p[2].pow(e2 as u32);
            acc = &acc + &(c * &t);
        }
        acc
    }

    pub fn partial(&self, var: usize) -> TernaryForm {
        assert!(self.degree >= 1);
        let d = self.degree - 1;
        let mut out = TernaryForm::zero(d);
        for (&(e0, e1, e2), c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let e = [e0, e1, e2];
            if e[var] == 0 {
                continue;
            }
            let mut ne = e;
            ne[var] -= 1;
            let idx = monomial_index(d, (ne[0], ne[1], ne[2]));
            out.coeffs[idx] = &out.coeffs[idx] + &(c * &Scalar::from_int(e[var] as i64));
        }
        out
    }

    /// Substitute x_m = sum_k M[m][k] y_k; returns the form in y.
    pub fn substitute(&self, m: &Mat3) -> TernaryForm {
        let rows: Vec<TernaryForm> = (0..3)
            .map(|r| TernaryForm::line(m.at(r, 0).clone(), m.at(r, 1).clone(), m.at(r, 2).clone()))
            .collect();
        let mut out = TernaryForm::zero(self.degree);
        for (&(e0, e1, e2), c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut term = TernaryForm::from_coeffs(0, vec![Scalar::one()]);
            for (row, e) in rows.iter().zip([e0, e1, e2]) {
                for _ in 0..e {
                    term = term.mul(row);
                }
            }
            out = out.add(&term.scale(c));
        }
        out
    }

    /// First nonzero coefficient in the fixed monomial order.
    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Scale so the first nonzero coefficient is 1.
    pub fn canonicalize(&self) -> TernaryForm {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Equality up to a nonzero scalar.
    pub fn proportional(&self, rhs: &TernaryForm) -> bool {
        self.degree == rhs.degree && self.canonicalize() == rhs.canonicalize()
    }

    /// The symmetric 3×3 matrix of a quadratic form.
    pub fn conic_matrix(&self) -> Mat3 {
        assert_eq!(self.degree, 2);
        let half = Scalar::from_ratio(1, 2);
        let c = |e: (u8, u8, u8)| self.get(e);
        let q01 = &c((1, 1, 0)) * &half;
        let q02 = &c((1, 0, 1)) * &half;
        let q12 = &c((0, 1, 1)) * &half;
        Mat3::from_rows(
            [c((2, 0, 0)), q01.clone(), q02.clone()],
            [q01, c((0, 2, 0)), q12.clone()],
            [q02, q12, c((0, 0, 2))],
        )
    }
}

/// A point of the projective plane, stored with its first nonzero coordinate
/// scaled to 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjectivePoint {
    pub coords: [Scalar; 3],
}

impl std::fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl ProjectivePoint {
    pub fn new(coords: [Scalar; 3]) -> ProjectivePoint {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("projective point needs a nonzero coordinate")
            .clone();
        let inv = lead.inv().unwrap();
        ProjectivePoint {
            coords: [&coords[0] * &inv, &coords[1] * &inv, &coords[2] * &inv],
        }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> ProjectivePoint {
        ProjectivePoint::new([Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c)])
    }

    /// Deterministic comparison for tie-breaking.
    pub fn cmp_key(&self, other: &ProjectivePoint) -> std::cmp::Ordering {
        for i in 0..3 {
            let c = self.coords[i].cmp_key(&other.coords[i]);
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    }

    /// The connecting line through two distinct points (cross product).
    pub fn join(&self, other: &ProjectivePoint) -> TernaryForm {
        let a = &self.coords;
        let b = &other.coords;
        let l0 = &(&a[1] * &b[2]) - &(&a[2] * &b[1]);
        let l1 = &(&a[2] * &b[0]) - &(&a[0] * &b[2]);
        let l2 = &(&a[0] * &b[1]) - &(&a[1] * &b[0]);
        let l = TernaryForm::line(l0, l1, l2);
        assert!(!l.is_zero(), "join of equal points");
        l
    }
}

/// Projective transformation, stored as a matrix M considered up to scalar.
/// The action on forms is `(g·F)(x) = F(adj(M)·x)`, a scalar multiple of
/// `F(M^{-1} x)`; since forms are projective this is the standard action.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjTransform {
    pub matrix: Mat3,
}

impl std::fmt::Debug for ProjTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ProjTransform({:?})", self.matrix)
    }
}

impl ProjTransform {
    pub fn new(matrix: Mat3) -> ProjTransform {
        assert!(!matrix.det().is_zero(), "projective transform must be invertible");
        ProjTransform { matrix }
    }

    pub fn identity() -> ProjTransform {
        ProjTransform::new(Mat3::identity())
    }

    pub fn diag(d0: Scalar, d1: Scalar, d2: Scalar) -> ProjTransform {
        ProjTransform::new(Mat3::diag(d0, d1, d2))
    }

    pub fn diag_ints(d0: i64, d1: i64, d2: i64) -> ProjTransform {
        ProjTransform::diag(
            Scalar::from_int(d0),
            Scalar::from_int(d1),
            Scalar::from_int(d2),
        )
    }

    /// Swap two coordinates.
    pub fn swap(i: usize, j: usize) -> ProjTransform {
        let mut m = Mat3::identity();
        for c in 0..3 {
            let tmp = m.at(i, c).clone();
            m.m[3 * i + c] = m.at(j, c).clone();
            m.m[3 * j + c] = tmp;
        }
        ProjTransform::new(m)
    }

    /// The transform sending e0, e1, e2 to the given points (i.e. whose
    /// inverse matrix has the points as columns).
    pub fn basis_to(p0: &ProjectivePoint, p1: &ProjectivePoint, p2: &ProjectivePoint) -> ProjTransform {
        let m = Mat3::from_columns(p0.coords.clone(), p1.coords.clone(), p2.coords.clone());
        ProjTransform::new(m.adjugate())
    }

    pub fn inverse(&self) -> ProjTransform {
        ProjTransform::new(self.matrix.adjugate())
    }

    pub fn compose(&self, rhs: &ProjTransform) -> ProjTransform {
        ProjTransform::new(self.matrix.mul(&rhs.matrix))
    }

    /// Action on points: p -> M p.
    pub fn apply_point(&self, p: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(self.matrix.apply(&p.coords))
    }
}

/// g·F = F(adj(M_g)·x) — substitution of the (projective) inverse.
pub fn act(g: &ProjTransform, f: &TernaryForm) -> TernaryForm {
    f.substitute(&g.matrix.adjugate())
}

/// Binary form of degree ≤ 4 in (s, t): coefficients of s^(d-i) t^i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u8,
    pub coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(degree: u8, coeffs: Vec<Scalar>) -> BinaryForm {
        assert_eq!(coeffs.len(), degree as usize + 1);
        BinaryForm { degree, coeffs }
    }

    pub fn zero(degree: u8) -> BinaryForm {
        BinaryForm::new(degree, vec![Scalar::zero(); degree as usize + 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Coefficient of s^(d-i) t^i.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs[i].clone()
    }

    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Scalar {
        let d = self.degree as u32;
        let mut acc = Scalar::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &s.pow(d - i as u32) * &t.pow(i as u32);
            acc = &acc + &(c * &term);
        }
        acc
    }

    pub fn mul(&self, rhs: &BinaryForm) -> BinaryForm {
        let d = self.degree + rhs.degree;
        let mut out = BinaryForm::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
            }
        }
        out
    }

    pub fn to_upoly(&self) -> UPoly {
        UPoly::new(self.coeffs.clone())
    }

    /// Roots in the base field Q(w) as (s, t) pairs with multiplicities,
    /// together with the residual factor (in t/s) carrying no Q(w)-roots.
    pub fn base_roots(&self) -> (Vec<((Scalar, Scalar), usize)>, UPoly) {
        assert!(!self.is_zero());
        let mut roots = Vec::new();
        // Multiplicity of (1 : 0) (t = 0): least index with nonzero coeff.
        let mut low = 0;
        while low < self.coeffs.len() && self.coeffs[low].is_zero() {
            low += 1;
        }
        if low > 0 {
            roots.push(((Scalar::one(), Scalar::zero()), low));
        }
        // Multiplicity of (0 : 1) (s = 0): missing top coefficients.
        let mut high = self.coeffs.len();
        while high > 0 && self.coeffs[high - 1].is_zero() {
            high -= 1;
        }
        let inf_mult = self.coeffs.len() - high;
        if inf_mult > 0 {
            roots.push(((Scalar::zero(), Scalar::one()), inf_mult));
        }
        // Finite nonzero roots of p(u) with u = t/s.
        let p = UPoly::new(self.coeffs[low..high].to_vec());
        let mut residual = UPoly::constant(Scalar::one());
        if p.degree().map_or(false, |d| d > 0) {
            let mut q = p.clone();
            for r in crate::upoly::roots_in_base(&p) {
                if r.is_zero() {
                    continue;
                }
                let lin = UPoly::new(vec![-&r, Scalar::one()]);
                let mut mult = 0;
                loop {
                    let (quot, rem) = q.div_rem(&lin);
                    if rem.is_zero() {
                        mult += 1;
                        q = quot;
                    } else {
                        break;
                    }
                }
                if mult > 0 {
                    roots.push(((Scalar::one(), r), mult));
                }
            }
            residual = q;
        }
        (roots, residual)
    }
}

/// Multiplicity pattern of a binary cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicityPattern {
    /// The zero form: the line is contained in the cubic.
    Zero,
    /// Three distinct roots.
    Simple,
    /// A double root plus a simple root; both roots lie in the base field.
    DoubleSimple {
        double: (Scalar, Scalar),
        simple: (Scalar, Scalar),
    },
    /// A triple root.
    Triple { root: (Scalar, Scalar) },
}

/// Classify the root pattern of a binary cubic. The double root of a [2,1]
/// pattern is read off the Hessian covariant; the triple root of a [3]
/// pattern off a second derivative. Both are base-field rational.
pub fn multiplicity_pattern(b: &BinaryForm) -> MultiplicityPattern {
    assert_eq!(b.degree, 3);
    if b.is_zero() {
        return MultiplicityPattern::Zero;
    }
    let c3 = b.coeff(0); // s^3
    let c2 = b.coeff(1); // s^2 t
    let c1 = b.coeff(2); // s t^2
    let c0 = b.coeff(3); // t^3
    let disc = {
        let t1 = &(&(&(&Scalar::from_int(18) * &c3) * &c2) * &c1) * &c0;
        let t2 = &(&Scalar::from_int(4) * &c2.pow(3)) * &c0;
        let t3 = &c2.pow(2) * &c1.pow(2);
        let t4 = &(&Scalar::from_int(4) * &c3) * &c1.pow(3);
        let t5 = &Scalar::from_int(27) * &(&c3.pow(2) * &c0.pow(2));
        &(&(&(&t1 - &t2) + &t3) - &t4) - &t5
    };
    if !disc.is_zero() {
        return MultiplicityPattern::Simple;
    }
    // Hessian H = b_ss b_tt - b_st^2, a perfect square supported on the
    // double root when the pattern is [2,1].
    let h_a = &(&Scalar::from_int(12) * &(&c3 * &c1)) - &(&Scalar::from_int(4) * &c2.pow(2));
    let h_b = &(&Scalar::from_int(36) * &(&c3 * &c0)) - &(&Scalar::from_int(4) * &(&c2 * &c1));
    let h_c = &(&Scalar::from_int(12) * &(&c2 * &c0)) - &(&Scalar::from_int(4) * &c1.pow(2));
    if !h_a.is_zero() || !h_b.is_zero() || !h_c.is_zero() {
        let double = if !h_a.is_zero() {
            (-&h_b, &Scalar::from_int(2) * &h_a)
        } else {
            // h_b^2 = 4 h_a h_c forces h_b = 0 here, so H ∝ t^2: root (1:0).
            (Scalar::one(), Scalar::zero())
        };
        let double_pt = normalize_pair(double);
        let simple = divide_out_root_twice(b, &double_pt);
        return MultiplicityPattern::DoubleSimple {
            double: double_pt,
            simple,
        };
    }
    let root = if !c3.is_zero() || !c2.is_zero() {
        (-&c2, &Scalar::from_int(3) * &c3)
    } else {
        (&Scalar::from_int(-3) * &c0, c1.clone())
    };
    MultiplicityPattern::Triple {
        root: normalize_pair(root),
    }
}

fn normalize_pair((s, t): (Scalar, Scalar)) -> (Scalar, Scalar) {
    if !s.is_zero() {
        let inv = s.inv().unwrap();
        (Scalar::one(), &t * &inv)
    } else {
        (Scalar::zero(), Scalar::one())
    }
}

/// Given a binary cubic with a double root at `double`, return the remaining
/// simple root.
fn divide_out_root_twice(b: &BinaryForm, double: &(Scalar, Scalar)) -> (Scalar, Scalar) {
    let (s0, t0) = double;
    let lin = BinaryForm::new(1, vec![t0.clone(), -s0]);
    let q1 = binary_divide(b, &lin).expect("double root divides once");
    let q2 = binary_divide(&q1, &lin).expect("double root divides twice");
    assert_eq!(q2.degree, 1);
    let u = q2.coeff(0);
    let v = q2.coeff(1);
    normalize_pair((v, -&u))
}

/// Exact division of binary forms; None if not divisible.
pub fn binary_divide(num: &BinaryForm, den: &BinaryForm) -> Option<BinaryForm> {
    assert!(!den.is_zero());
    let dq = num.degree.checked_sub(den.degree)?;
    if num.is_zero() {
        return Some(BinaryForm::zero(dq));
    }
    let nq = dq as usize + 1;
    let rows: Vec<Vec<Scalar>> = (0..num.coeffs.len())
        .map(|k| {
            (0..nq)
                .map(|i| {
                    if k >= i && k - i < den.coeffs.len() {
                        den.coeffs[k - i].clone()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let sol = linalg::solve(&rows, &num.coeffs)?;
    let q = BinaryForm::new(dq, sol);
    if q.mul(den) == *num {
        Some(q)
    } else {
        None
    }
}

/// Parametrization of the line V(L): two spanning points (P, Q) chosen
/// deterministically. The map is (s, t) -> s·P + t·Q.
///
/// Pivot rule: k is the largest index with b_k ≠ 0; the spanning points are
/// built from the remaining indices in increasing order.
pub fn line_parametrization(l: &TernaryForm) -> (ProjectivePoint, ProjectivePoint) {
    assert_eq!(l.degree, 1);
    assert!(!l.is_zero(), "zero line has no parametrization");
    let b = [l.b(0), l.b(1), l.b(2)];
    let k = (0..3).rev().find(|&i| !b[i].is_zero()).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mk_point = |i: usize| {
        let mut coords = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        coords[i] = b[k].clone();
        coords[k] = -&b[i];
        ProjectivePoint::new(coords)
    };
    (mk_point(others[0]), mk_point(others[1]))
}

/// Restrict a form to the line V(L) via the canonical parametrization,
/// producing a binary form of the same degree in (s, t).
pub fn restrict_to_line(f: &TernaryForm, l: &TernaryForm) -> BinaryForm {
    let (p, q) = line_parametrization(l);
    restrict_to_points(f, &p, &q)
}

/// Restrict a form along the parametrization (s, t) -> s·P + t·Q.
pub fn restrict_to_points(f: &TernaryForm, p: &ProjectivePoint, q: &ProjectivePoint) -> BinaryForm {
    let d = f.degree;
    let mut out = BinaryForm::zero(d);
    let lin: Vec<BinaryForm> = (0..3)
        .map(|i| BinaryForm::new(1, vec![p.coords[i].clone(), q.coords[i].clone()]))
        .collect();
    for (&(e0, e1, e2), c) in monomials(d).iter().zip(&f.coeffs) {
        if c.is_zero() {
            continue;
        }
        let mut term = BinaryForm::new(0, vec![c.clone()]);
        for (l, e) in lin.iter().zip([e0, e1, e2]) {
            for _ in 0..e {
                term = term.mul(l);
            }
        }
        for (i, tc) in term.coeffs.iter().enumerate() {
            out.coeffs[i] = &out.coeffs[i] + tc;
        }
    }
    out
}

/// Lift a parametrized root (s : t) back to the plane point s·P + t·Q.
pub fn lift_root(
    p: &ProjectivePoint,
    q: &ProjectivePoint,
    (s, t): &(Scalar, Scalar),
) -> ProjectivePoint {
    let coords = [
        &(s * &p.coords[0]) + &(t * &q.coords[0]),
        &(s * &p.coords[1]) + &(t * &q.coords[1]),
        &(s * &p.coords[2]) + &(t * &q.coords[2]),
    ];
    ProjectivePoint::new(coords)
}

/// Does the linear form divide `f`? Tested by restriction, not division.
pub fn line_divides(l: &TernaryForm, f: &TernaryForm) -> bool {
    restrict_to_line(f, l).is_zero()
}

/// Exact quotient f / l for a linear form dividing f; None when it does not.
pub fn divide_by_line(f: &TernaryForm, l: &TernaryForm) -> Option<TernaryForm> {
    if f.degree < 1 || l.degree != 1 || l.is_zero() {
        return None;
    }
    let dq = f.degree - 1;
    let q_mons = monomials(dq);
    let f_mons = monomials(f.degree);
    let rows: Vec<Vec<Scalar>> = f_mons
        .iter()
        .map(|&fe| {
            q_mons
                .iter()
                .map(|&qe| {
                    let mut acc = Scalar::zero();
                    for v in 0..3 {
                        let mut e = [qe.0, qe.1, qe.2];
                        e[v] += 1;
                        if (e[0], e[1], e[2]) == fe {
                            acc = &acc + &l.coeffs[v];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let sol = linalg::solve(&rows, &f.coeffs)?;
    let q = TernaryForm::from_coeffs(dq, sol);
    if l.mul(&q) == *f {
        Some(q)
    } else {
        None
    }
}

/// Rank of a conic's symmetric matrix.
pub fn conic_rank(q: &TernaryForm) -> usize {
    let m = q.conic_matrix();
    let rows: Vec<Vec<Scalar>> = (0..3)
        .map(|r| (0..3).map(|c| m.at(r, c).clone()).collect())
        .collect();
    linalg::rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn x0_cubed() -> TernaryForm {
        TernaryForm::from_terms(3, &[((3, 0, 0), s(1))])
    }

    #[test]
    fn act_identity() {
        let f = TernaryForm::from_terms(3, &[((3, 0, 0), s(1)), ((1, 1, 1), s(-3))]);
        assert!(act(&ProjTransform::identity(), &f).proportional(&f));
    }

    #[test]
    fn act_diag_on_line() {
        let l = TernaryForm::line(s(2), s(3), s(5));
        let g = ProjTransform::diag_ints(2, 3, 5);
        let img = act(&g, &l);
        assert!(img.proportional(&TernaryForm::line(s(1), s(1), s(1))));
    }

    #[test]
    fn act_swap() {
        let g = ProjTransform::swap(0, 2);
        let img = act(&g, &x0_cubed());
        assert!(img.proportional(&TernaryForm::from_terms(3, &[((0, 0, 3), s(1))])));
    }

    #[test]
    fn act_is_group_action_up_to_scalar() {
        let f = TernaryForm::from_terms(
            3,
            &[((3, 0, 0), s(1)), ((0, 3, 0), s(2)), ((1, 1, 1), s(-1))],
        );
        let g = ProjTransform::new(Mat3::from_rows(
            [s(1), s(2), s(0)],
            [s(0), s(1), s(1)],
            [s(1), s(0), s(3)],
        ));
        let h = ProjTransform::new(Mat3::from_rows(
            [s(2), s(0), s(1)],
            [s(1), s(1), s(0)],
            [s(0), s(3), s(1)],
        ));
        let lhs = act(&g.compose(&h), &f);
        let rhs = act(&g, &act(&h, &f));
        assert!(lhs.proportional(&rhs));
    }

    #[test]
    fn basis_to_moves_points() {
        let p0 = ProjectivePoint::from_ints(1, 1, 0);
        let p1 = ProjectivePoint::from_ints(0, 1, 1);
        let p2 = ProjectivePoint::from_ints(1, 0, 1);
        let g = ProjTransform::basis_to(&p0, &p1, &p2);
        assert_eq!(g.apply_point(&p0), ProjectivePoint::from_ints(1, 0, 0));
        assert_eq!(g.apply_point(&p1), ProjectivePoint::from_ints(0, 1, 0));
        assert_eq!(g.apply_point(&p2), ProjectivePoint::from_ints(0, 0, 1));
    }

    #[test]
    fn restriction_examples() {
        // F = x0^2 x2 + x0 x1^2 restricted to x2 = 0 gives s t^2.
        let f = TernaryForm::from_terms(3, &[((2, 0, 1), s(1)), ((1, 2, 0), s(1))]);
        let l = TernaryForm::line(s(0), s(0), s(1));
        let b = restrict_to_line(&f, &l);
        assert_eq!(b, BinaryForm::new(3, vec![s(0), s(0), s(1), s(0)]));
        // Contained line gives the zero form.
        let f2 = TernaryForm::from_terms(3, &[((2, 1, 0), s(1)), ((1, 0, 2), s(2))]);
        let l2 = TernaryForm::line(s(1), s(0), s(0));
        assert!(restrict_to_line(&f2, &l2).is_zero());
    }

    #[test]
    fn restriction_hesse_member() {
        // F = x0^3+x1^3+x2^3-3m x0x1x2, L = m x0 + x1 + x2 → triple contact.
        let m = s(2);
        let f = TernaryForm::from_terms(
            3,
            &[
                ((3, 0, 0), s(1)),
                ((0, 3, 0), s(1)),
                ((0, 0, 3), s(1)),
                ((1, 1, 1), &s(-3) * &m),
            ],
        );
        let l = TernaryForm::line(m.clone(), s(1), s(1));
        let b = restrict_to_line(&f, &l);
        match multiplicity_pattern(&b) {
            MultiplicityPattern::Triple { .. } => {}
            p => panic!("expected triple pattern, got {p:?}"),
        }
    }

    #[test]
    fn multiplicity_patterns() {
        // s t (s + t): three simple roots.
        let b = BinaryForm::new(3, vec![s(0), s(1), s(1), s(0)]);
        assert_eq!(multiplicity_pattern(&b), MultiplicityPattern::Simple);
        // s t^2: double root at (1:0), simple at (0:1).
        let b = BinaryForm::new(3, vec![s(0), s(0), s(1), s(0)]);
        match multiplicity_pattern(&b) {
            MultiplicityPattern::DoubleSimple { double, simple } => {
                assert_eq!(double, (Scalar::one(), Scalar::zero()));
                assert_eq!(simple, (Scalar::zero(), Scalar::one()));
            }
            p => panic!("unexpected {p:?}"),
        }
        // s^3: triple at (0:1).
        let b = BinaryForm::new(3, vec![s(1), s(0), s(0), s(0)]);
        match multiplicity_pattern(&b) {
            MultiplicityPattern::Triple { root } => {
                assert_eq!(root, (Scalar::zero(), Scalar::one()));
            }
            p => panic!("unexpected {p:?}"),
        }
    }

    #[test]
    fn divide_by_line_roundtrip() {
        let l = TernaryForm::line(s(1), s(-2), s(3));
        let q = TernaryForm::from_terms(
            2,
            &[((2, 0, 0), s(1)), ((0, 1, 1), s(4)), ((0, 0, 2), s(-1))],
        );
        let f = l.mul(&q);
        let q2 = divide_by_line(&f, &l).unwrap();
        assert_eq!(q2, q);
        assert!(line_divides(&l, &f));
        let f2 = f.add(&x0_cubed());
        assert!(divide_by_line(&f2, &l).is_none());
        assert!(!line_divides(&l, &f2));
    }

    #[test]
    fn conic_rank_examples() {
        let q = TernaryForm::from_terms(2, &[((1, 0, 1), s(1)), ((0, 2, 0), s(1))]);
        assert_eq!(conic_rank(&q), 3);
        let q = TernaryForm::from_terms(2, &[((1, 1, 0), s(1))]);
        assert_eq!(conic_rank(&q), 2);
        let q = TernaryForm::from_terms(2, &[((2, 0, 0), s(1))]);
        assert_eq!(conic_rank(&q), 1);
    }

    #[test]
    fn contact_pattern_projectively_invariant() {
        let f = TernaryForm::from_terms(3, &[((2, 0, 1), s(1)), ((1, 2, 0), s(1))]);
        let l = TernaryForm::line(s(0), s(0), s(1));
        let g = ProjTransform::new(Mat3::from_rows(
            [s(1), s(1), s(0)],
            [s(2), s(1), s(1)],
            [s(0), s(1), s(1)],
        ));
        let before = multiplicity_pattern(&restrict_to_line(&f, &l));
        let after = multiplicity_pattern(&restrict_to_line(&act(&g, &f), &act(&g, &l)));
        match (before, after) {
            (MultiplicityPattern::DoubleSimple { .. }, MultiplicityPattern::DoubleSimple { .. }) => {}
            other => panic!("pattern changed: {other:?}"),
        }
    }
}
