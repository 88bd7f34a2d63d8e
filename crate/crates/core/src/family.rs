//! One-parameter families of (cubic, line) pairs with Laurent-polynomial
//! coefficients in a formal parameter t, with exact specialization and the
//! t → 0 limit after clearing the common power of t per form.

use std::collections::BTreeMap;

use crate::forms::{monomials, TernaryForm};
use crate::scalar::Scalar;
use crate::stability::CubicLinePair;
use crate::Error;

/// Laurent exponent bound; every family in scope fits well inside it.
pub const MAX_LAURENT_EXP: i32 = 12;

/// Laurent polynomial in t over the field tower.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    /// exponent -> coefficient, zero coefficients absent
    pub terms: BTreeMap<i32, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn constant(c: Scalar) -> LaurentPoly {
        LaurentPoly::term(c, 0)
    }

    pub fn term(c: Scalar, exp: i32) -> LaurentPoly {
        assert!(exp.abs() <= MAX_LAURENT_EXP, "Laurent exponent out of range");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let v = terms.entry(*e).or_insert_with(Scalar::zero);
            *v = &*v + c;
            if v.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out = out.add(&LaurentPoly::term(ca * cb, ea + eb));
            }
        }
        out
    }

    pub fn shift(&self, by: i32) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.terms.insert(e + by, c.clone());
        }
        out
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Evaluate at a nonzero t0 (or t0 = 0 when no negative exponents occur).
    pub fn eval(&self, t0: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                t0.pow(*e as u32)
            } else {
                assert!(!t0.is_zero(), "negative exponent at t = 0");
                t0.inv().unwrap().pow((-e) as u32)
            };
            acc = &acc + &(c * &p);
        }
        acc
    }
}

/// A homogeneous form whose coefficients are Laurent polynomials in t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentForm {
    pub degree: u8,
    pub coeffs: Vec<LaurentPoly>,
}

impl LaurentForm {
    pub fn from_form(f: &TernaryForm) -> LaurentForm {
        LaurentForm {
            degree: f.degree,
            coeffs: f.coeffs.iter().cloned().map(LaurentPoly::constant).collect(),
        }
    }

    pub fn from_terms(degree: u8, terms: &[((u8, u8, u8), LaurentPoly)]) -> LaurentForm {
        let mons = monomials(degree);
        let mut coeffs = vec![LaurentPoly::zero(); mons.len()];
        for (e, c) in terms {
            let idx = mons.iter().position(|m| m == e).expect("bad exponent triple");
            coeffs[idx] = coeffs[idx].add(c);
        }
        LaurentForm { degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    /// Act by the diagonal matrix Diag(c_i t^{k_i}): the coefficient of the
    /// monomial x^e is multiplied by prod (c_i t^{k_i})^{-e_i}, i.e. the
    /// substitution x_i -> x_i / (c_i t^{k_i}).
    pub fn act_diag(&self, scalars: [&Scalar; 3], powers: [i32; 3]) -> LaurentForm {
        let mons = monomials(self.degree);
        let coeffs = mons
            .iter()
            .zip(&self.coeffs)
            .map(|(&(e0, e1, e2), c)| {
                let mut factor = Scalar::one();
                let mut shift = 0i32;
                for (i, e) in [e0, e1, e2].into_iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    factor = &factor * &scalars[i].inv().expect("diagonal entry zero").pow(e as u32);
                    shift -= powers[i] * e as i32;
                }
                c.mul(&LaurentPoly::term(factor, shift))
            })
            .collect();
        LaurentForm {
            degree: self.degree,
            coeffs,
        }
    }

    pub fn specialize(&self, t0: &Scalar) -> TernaryForm {
        TernaryForm::from_coeffs(
            self.degree,
            self.coeffs.iter().map(|c| c.eval(t0)).collect(),
        )
    }

    /// Clear the common minimal power of t and set t = 0.
    pub fn limit_at_zero(&self) -> Result<TernaryForm, Error> {
        let min = self
            .coeffs
            .iter()
            .filter_map(LaurentPoly::min_exp)
            .min()
            .ok_or(Error::ZeroFormAtLimit)?;
        let coeffs: Vec<Scalar> = self
            .coeffs
            .iter()
            .map(|c| c.terms.get(&min).cloned().unwrap_or_else(Scalar::zero))
            .collect();
        let f = TernaryForm::from_coeffs(self.degree, coeffs);
        if f.is_zero() {
            return Err(Error::ZeroFormAtLimit);
        }
        Ok(f)
    }
}

/// A (cubic, line) pair with Laurent coefficients in one formal parameter.
#[derive(Clone, Debug)]
pub struct ParamFamily {
    pub cubic: LaurentForm,
    pub line: LaurentForm,
}

impl ParamFamily {
    pub fn new(cubic: LaurentForm, line: LaurentForm) -> Result<ParamFamily, Error> {
        if cubic.is_zero() || line.is_zero() {
            return Err(Error::ZeroFormAtLimit);
        }
        Ok(ParamFamily { cubic, line })
    }

    pub fn constant(pair: &CubicLinePair) -> ParamFamily {
        ParamFamily {
            cubic: LaurentForm::from_form(&pair.cubic),
            line: LaurentForm::from_form(&pair.line),
        }
    }

    /// Exact specialization at t = t0 (t0 ≠ 0 unless no negative exponents).
    pub fn specialize(&self, t0: &Scalar) -> Result<CubicLinePair, Error> {
        let c = self.cubic.specialize(t0);
        let l = self.line.specialize(t0);
        if c.is_zero() || l.is_zero() {
            return Err(Error::ZeroFormAtLimit);
        }
        CubicLinePair::new(c, l)
    }

    /// The t → 0 limit: clear the minimal power of t per form, then set t = 0.
    pub fn limit_at_zero(&self) -> Result<CubicLinePair, Error> {
        let c = self.cubic.limit_at_zero()?;
        let l = self.line.limit_at_zero()?;
        CubicLinePair::new(c, l)
    }

    /// Apply Diag(c_i t^{k_i}) to the whole family.
    pub fn act_diag(&self, scalars: [&Scalar; 3], powers: [i32; 3]) -> ParamFamily {
        ParamFamily {
            cubic: self.cubic.act_diag(scalars, powers),
            line: self.line.act_diag(scalars, powers),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn one() -> LaurentPoly {
        LaurentPoly::constant(Scalar::one())
    }

    fn t(exp: i32) -> LaurentPoly {
        LaurentPoly::term(Scalar::one(), exp)
    }

    /// g_a · z5 = (x0(x0x2 + x1(x1 + a x2)), x2) with a the parameter.
    fn ga_z5() -> ParamFamily {
        let cubic = LaurentForm::from_terms(
            3,
            &[
                ((2, 0, 1), one()),
                ((1, 2, 0), one()),
                ((1, 1, 1), t(1)),
            ],
        );
        let line = LaurentForm::from_terms(1, &[((0, 0, 1), one())]);
        ParamFamily::new(cubic, line).unwrap()
    }

    #[test]
    fn limit_of_ga_z5_is_z7() {
        let fam = ga_z5();
        let lim = fam.limit_at_zero().unwrap();
        // z7 = (x0(x0x2 + x1^2), x2)
        let z7c = TernaryForm::from_terms(3, &[((2, 0, 1), s(1)), ((1, 2, 0), s(1))]);
        assert!(lim.cubic.proportional(&z7c));
        assert!(lim.line.proportional(&TernaryForm::line(s(0), s(0), s(1))));
    }

    #[test]
    fn specialize_constant_family() {
        let z7c = TernaryForm::from_terms(3, &[((2, 0, 1), s(1)), ((1, 2, 0), s(1))]);
        let pair = CubicLinePair::new(z7c, TernaryForm::line(s(0), s(0), s(1))).unwrap();
        let fam = ParamFamily::constant(&pair);
        let sp = fam.specialize(&Scalar::one()).unwrap();
        assert!(sp.cubic.proportional(&pair.cubic));
        assert!(sp.line.proportional(&pair.line));
    }

    #[test]
    fn act_diag_clears_to_limit() {
        // Family C_t = x0 x2^2 - x1^3 - t^4 x0^2 x1 - t^6 x0^3 acted on by
        // Diag(1, 1/t^2, 1/t^3) becomes t^6 (x0x2^2 - x1^3 - x0^2 x1 - x0^3).
        let cubic = LaurentForm::from_terms(
            3,
            &[
                ((1, 0, 2), one()),
                ((0, 3, 0), LaurentPoly::constant(s(-1))),
                ((2, 1, 0), LaurentPoly::term(s(-1), 4)),
                ((3, 0, 0), LaurentPoly::term(s(-1), 6)),
            ],
        );
        let line = LaurentForm::from_terms(1, &[((1, 0, 0), one())]);
        let fam = ParamFamily::new(cubic, line).unwrap();
        let o = Scalar::one();
        let moved = fam.act_diag([&o, &o, &o], [0, -2, -3]);
        let lim = moved.limit_at_zero().unwrap();
        let expected = TernaryForm::from_terms(
            3,
            &[
                ((1, 0, 2), s(1)),
                ((0, 3, 0), s(-1)),
                ((2, 1, 0), s(-1)),
                ((3, 0, 0), s(-1)),
            ],
        );
        assert!(lim.cubic.proportional(&expected));
    }

    #[test]
    fn degenerate_family_rejected() {
        let zero_line = LaurentForm::from_terms(1, &[]);
        let cubic = LaurentForm::from_terms(3, &[((3, 0, 0), one())]);
        assert!(matches!(
            ParamFamily::new(cubic, zero_line),
            Err(Error::ZeroFormAtLimit)
        ));
    }
}
