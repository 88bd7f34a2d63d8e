//! Blow-up chart atlases over the pencil base: the seven U-charts carrying
//! the extension of the level-forgetting map to the nodal-pair moduli, the
//! four V-charts carrying the extension to the GIT side, exceptional-stratum
//! bookkeeping, transition verification, and the graph-closure families
//! linking the cuspidal and triple-tangent boundary strata.
//!
//! Fractional powers never appear as radicals: charts whose formulas involve
//! square or cube roots of a coordinate demand that coordinate in the form
//! t^2 or t^3 for a caller-supplied t.

use crate::family::{LaurentForm, LaurentPoly, ParamFamily};
use crate::forms::{ProjTransform, ProjectivePoint, TernaryForm};
use crate::geometry::{classify_cubic, contact_type, singular_points, ContactType, CurveClass, SingularLocus};
use crate::hesse::{self, HessePoint};
use crate::linalg::Mat3;
use crate::scalar::Scalar;
use crate::stability::{act_pair, classify, CubicLinePair, Status};
use crate::Error;

// ---------------------------------------------------------------------------
// Deterministic sampling
// ---------------------------------------------------------------------------

/// Small deterministic PRNG (splitmix64) so verification reports are
/// byte-identical for a given seed.
pub struct DetRng(u64);

impl DetRng {
    pub fn new(seed: u64) -> DetRng {
        DetRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Integer in [lo, hi] inclusive.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Small nonzero rational.
    pub fn rational(&mut self) -> Scalar {
        loop {
            let n = self.int(-6, 6);
            if n == 0 {
                continue;
            }
            let d = self.int(1, 3);
            return Scalar::from_ratio(n, d);
        }
    }

    /// Small rational, possibly zero.
    pub fn rational_or_zero(&mut self) -> Scalar {
        if self.next_u64() % 4 == 0 {
            Scalar::zero()
        } else {
            self.rational()
        }
    }
}

/// Verification report: sample count and failure descriptions.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub label: String,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    fn new(label: impl Into<String>) -> VerifyReport {
        VerifyReport {
            label: label.into(),
            samples: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

// ---------------------------------------------------------------------------
// U-charts (seven per tower)
// ---------------------------------------------------------------------------

/// Tower label (a, i): a = 0 or a cube root of 1 (the twelve blown-up frames).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UTower {
    /// 0, 1, ζ3 or ζ3².
    pub a: Scalar,
    pub i: u8,
}

impl UTower {
    pub fn base() -> UTower {
        UTower {
            a: Scalar::zero(),
            i: 0,
        }
    }

    pub fn all() -> Vec<UTower> {
        let mut out = Vec::new();
        for a in hesse::singular_a_values() {
            for i in 0..3u8 {
                out.push(UTower { a: a.clone(), i });
            }
        }
        out
    }

    pub fn is_base(&self) -> bool {
        self.a.is_zero() && self.i == 0
    }
}

/// A point of the chart U_j with its optional radical parametrization
/// (coords[idx] = t^2 for the square-radical charts).
#[derive(Clone, Debug)]
pub struct ChartPoint {
    pub coords: [Scalar; 3],
    pub t: Option<Scalar>,
}

impl ChartPoint {
    pub fn plain(coords: [Scalar; 3]) -> ChartPoint {
        ChartPoint { coords, t: None }
    }

    pub fn with_t(mut coords: [Scalar; 3], idx: usize, t: Scalar) -> ChartPoint {
        coords[idx] = &t * &t;
        ChartPoint {
            coords,
            t: Some(t),
        }
    }
}

/// Exponents of the monomial u_j in the chart coordinates.
pub fn u_exponents(j: u8) -> [u8; 3] {
    match j {
        1 => [1, 0, 0],
        2 | 7 => [1, 1, 0],
        3 | 6 => [1, 2, 1],
        4 | 5 => [1, 1, 2],
        _ => panic!("chart index out of range"),
    }
}

fn s_exponents(j: u8) -> ([u8; 3], [u8; 3]) {
    let s1 = match j {
        1 => [1, 1, 0],
        2 | 3 => [1, 1, 1],
        4 => [1, 0, 1],
        5 | 6 | 7 => [1, 0, 0],
        _ => panic!("chart index out of range"),
    };
    let s2 = match j {
        1 | 5 => [1, 0, 1],
        2 | 3 | 4 => [1, 0, 0],
        6 | 7 => [1, 1, 1],
        _ => panic!("chart index out of range"),
    };
    (s1, s2)
}

fn monomial_value(coords: &[Scalar; 3], exps: &[u8; 3]) -> Scalar {
    let mut acc = Scalar::one();
    for (c, &e) in coords.iter().zip(exps) {
        if e > 0 {
            acc = &acc * &c.pow(e as u32);
        }
    }
    acc
}

/// The chart weight u_j at a point.
pub fn chart_u_weight(j: u8, p: &ChartPoint) -> Scalar {
    monomial_value(&p.coords, &u_exponents(j))
}

/// Which coordinate (if any) must be supplied as t^2 for chart j.
pub fn radical_index_u(j: u8) -> Option<usize> {
    match j {
        2 | 7 => Some(1),
        3 | 6 => Some(2),
        _ => None,
    }
}

/// Chart admissibility: u_j^3 != 1, and a radical parameter where required.
pub fn check_chart_point(j: u8, p: &ChartPoint) -> Result<(), Error> {
    if let Some(idx) = radical_index_u(j) {
        match &p.t {
            None => return Err(Error::RadicalRequired(idx)),
            Some(t) => {
                if p.coords[idx] != (t * t) {
                    return Err(Error::RadicalRequired(idx));
                }
            }
        }
    }
    let u = chart_u_weight(j, p);
    if u.pow(3).is_one() {
        return Err(Error::Parse(format!("chart {j} point has u^3 = 1")));
    }
    Ok(())
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// The pencil-frame pair (F_(j), S_(j)) before conjugation.
pub fn phi_base_forms(j: u8, p: &ChartPoint) -> (TernaryForm, TernaryForm) {
    let u = chart_u_weight(j, p);
    let (e1, e2) = s_exponents(j);
    let s1 = monomial_value(&p.coords, &e1);
    let s2 = monomial_value(&p.coords, &e2);
    let f = TernaryForm::from_terms(
        3,
        &[
            ((3, 0, 0), u.clone()),
            ((0, 3, 0), u.clone()),
            ((0, 0, 3), u),
            ((1, 1, 1), s(-3)),
        ],
    );
    let l = TernaryForm::line(Scalar::one(), s1, s2);
    (f, l)
}

/// The conjugating diagonal M_j = Diag(1, m1, m2); requires the radical t
/// for j in {2, 3, 6, 7}. Entries vanish on the exceptional set.
pub fn m_matrix(j: u8, p: &ChartPoint) -> Result<Mat3, Error> {
    let v0 = &p.coords[0];
    let v1 = &p.coords[1];
    let v2 = &p.coords[2];
    let t = p.t.clone();
    let need_t = || t.clone().ok_or(Error::RadicalRequired(radical_index_u(j).unwrap_or(0)));
    let (m1, m2) = match j {
        1 => (v0.clone(), v0.clone()),
        2 => (v0 * &need_t()?, v0.clone()),
        3 => (&(v0 * v1) * &need_t()?, v0.clone()),
        4 => (v0 * v2, v0.clone()),
        5 => (v0.clone(), v0 * v2),
        6 => (v0.clone(), &(v0 * v1) * &need_t()?),
        7 => (v0.clone(), v0 * &need_t()?),
        _ => panic!("chart index out of range"),
    };
    Ok(Mat3::diag(Scalar::one(), m1, m2))
}

/// Exceptional strata of the first blow-up tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EStratum {
    E0,
    E1,
    E2,
    E3,
}

/// Strata through a chart point, per the chart-wise vanishing table.
pub fn exceptional_strata(j: u8, p: &ChartPoint) -> Vec<EStratum> {
    let mut out = Vec::new();
    let z = |k: usize| p.coords[k].is_zero();
    if z(0) {
        out.push(EStratum::E1);
    }
    match j {
        1 => {}
        2 | 7 => {
            if z(1) {
                out.push(EStratum::E2);
            }
        }
        3 | 6 => {
            if z(1) {
                out.push(EStratum::E3);
            }
            if z(2) {
                out.push(EStratum::E2);
            }
        }
        4 | 5 => {
            if z(1) {
                out.push(EStratum::E0);
            }
            if z(2) {
                out.push(EStratum::E3);
            }
        }
        _ => panic!("chart index out of range"),
    }
    out
}

/// Curve-type label predicted by the stratification.
pub fn stratum_label(strata: &[EStratum]) -> &'static str {
    if strata.contains(&EStratum::E0) {
        "3-gon"
    } else if strata.contains(&EStratum::E2) || strata.contains(&EStratum::E3) {
        "conic-plus-line"
    } else if strata.contains(&EStratum::E1) {
        "nodal"
    } else {
        "smooth"
    }
}

pub fn exceptional_stratum_class(j: u8, p: &ChartPoint) -> &'static str {
    stratum_label(&exceptional_strata(j, p))
}

fn label_matches_class(label: &str, class: &CurveClass) -> bool {
    match label {
        "3-gon" => matches!(class, CurveClass::Triangle { .. }),
        "conic-plus-line" => matches!(
            class,
            CurveClass::ConicPlusChord { .. } | CurveClass::ConicPlusTangentLine { .. }
        ),
        "nodal" => matches!(class, CurveClass::IrreducibleNodal),
        "smooth" => matches!(class, CurveClass::Smooth),
        _ => false,
    }
}

/// Output of a chart map: the pair, the conjugating matrix used, and the
/// exceptional strata of the input point.
#[derive(Clone, Debug)]
pub struct ChartOutput {
    pub pair: CubicLinePair,
    pub conjugator: Option<Mat3>,
    pub strata: Vec<EStratum>,
}

/// The displayed chart families of the nodal-side extension, base tower.
pub fn phi_tilde_base(j: u8, p: &ChartPoint) -> Result<ChartOutput, Error> {
    check_chart_point(j, p)?;
    let v0 = &p.coords[0];
    let v1 = &p.coords[1];
    let v2 = &p.coords[2];
    let one = Scalar::one;
    let cubic;
    let line;
    match j {
        1 => {
            cubic = TernaryForm::from_terms(
                3,
                &[
                    ((3, 0, 0), v0.pow(3)),
                    ((0, 3, 0), one()),
                    ((0, 0, 3), one()),
                    ((1, 1, 1), s(-3)),
                ],
            );
            line = TernaryForm::line(one(), v1.clone(), v2.clone());
        }
        2 => {
            let t = p.t.clone().unwrap();
            let t3 = t.pow(3);
            cubic = TernaryForm::from_terms(
                3,
                &[
                    ((0, 3, 0), one()),
                    ((1, 1, 1), s(-3)),
                    ((3, 0, 0), &t3 * &v0.pow(3)),
                    ((0, 0, 3), t3),
                ],
            );
            line = TernaryForm::line(one(), &t * v2, one());
        }
        3 => {
            let t = p.t.clone().unwrap();
            let c = &v1.pow(3) * &t.pow(3);
            cubic = TernaryForm::from_terms(
                3,
                &[
                    ((0, 3, 0), one()),
                    ((1, 1, 1), s(-3)),
                    ((3, 0, 0), &c * &v0.pow(3)),
                    ((0, 0, 3), c),
                ],
            );
            line = TernaryForm::line(one(), t, one());
        }
        4 => {
            let w = v1 * &v2.pow(3);
            cubic = TernaryForm::from_terms(
                3,
                &[
                    ((1, 1, 1), s(3)),
                    ((0, 3, 0), -v1),
                    ((0, 0, 3), -&w),
                    ((3, 0, 0), -&(&w * &v0.pow(3))),
                ],
            );
            line = TernaryForm::line(one(), one(), one());
        }
        5 => {
            let w = v1 * &v2.pow(3);
            cubic = TernaryForm::from_terms(
                3,
                &[
                    ((1, 1, 1), s(3)),
                    ((0, 0, 3), -v1),
                    ((0, 3, 0), -&w),
                    ((3, 0, 0), -&(&w * &v0.pow(3))),
                ],
            );
            line = TernaryForm::line(one(), one(), one());
        }
        6 => {
            let t = p.t.clone().unwrap();
            let c = &v1.pow(3) * &t.pow(3);
            cubic = TernaryForm::from_terms(
                3,
                &[
                    ((0, 0, 3), one()),
                    ((1, 1, 1), s(-3)),
                    ((3, 0, 0), &c * &v0.pow(3)),
                    ((0, 3, 0), c),
                ],
            );
            line = TernaryForm::line(one(), one(), t);
        }
        7 => {
            let t = p.t.clone().unwrap();
            let t3 = t.pow(3);
            cubic = TernaryForm::from_terms(
                3,
                &[
                    ((0, 0, 3), one()),
                    ((1, 1, 1), s(-3)),
                    ((3, 0, 0), &t3 * &v0.pow(3)),
                    ((0, 3, 0), t3),
                ],
            );
            line = TernaryForm::line(one(), one(), &t * v2);
        }
        _ => panic!("chart index out of range"),
    }
    let conjugator = m_matrix(j, p).ok();
    Ok(ChartOutput {
        pair: CubicLinePair::new(cubic, line)?,
        conjugator,
        strata: exceptional_strata(j, p),
    })
}

/// Conjugating group element for a tower (a, i): the unique projective
/// matrix whose line action realizes the frame substitution, found inside
/// the pencil group. Its pencil action sends mu to (a mu1 - mu0 : a mu1 + 2 mu0).
/// Results are cached per tower.
pub fn tower_conjugator(tower: &UTower) -> Result<ProjTransform, Error> {
    static CACHE: std::sync::OnceLock<std::sync::Mutex<Vec<(UTower, ProjTransform)>>> =
        std::sync::OnceLock::new();
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(Vec::new()));
    if let Some((_, g)) = cache
        .lock()
        .unwrap()
        .iter()
        .find(|(t, _)| t == tower)
    {
        return Ok(g.clone());
    }
    let found = tower_conjugator_uncached(tower)?;
    cache
        .lock()
        .unwrap()
        .push((tower.clone(), found.clone()));
    Ok(found)
}

fn tower_conjugator_uncached(tower: &UTower) -> Result<ProjTransform, Error> {
    let row = |m: u8| -> [Scalar; 3] {
        if tower.a.is_zero() {
            let mut r = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
            r[m as usize] = Scalar::one();
            r
        } else {
            [
                Scalar::one(),
                Scalar::zeta_pow(m as i64),
                &tower.a * &Scalar::zeta_pow(2 * m as i64),
            ]
        }
    };
    let target = Mat3::from_rows(row(tower.i), row((tower.i + 1) % 3), row((tower.i + 2) % 3))
        .canonical();
    for mat in hesse::g216() {
        let g = ProjTransform::new(mat);
        let line_matrix = g.matrix.adjugate().transpose().canonical();
        if line_matrix == target {
            for m in [HessePoint::from_ints(2, 7), HessePoint::from_ints(1, -3)] {
                let expect = if tower.a.is_zero() {
                    m.clone()
                } else {
                    let mu0 = &m.mu[0];
                    let mu1 = &m.mu[1];
                    HessePoint::new(
                        &(&tower.a * mu1) - mu0,
                        &(&tower.a * mu1) + &(&s(2) * mu0),
                    )
                };
                if hesse::induced_mu_action(&g, &m)? != expect {
                    return Err(Error::NormalFormFailure(
                        "tower conjugator has wrong pencil action".into(),
                    ));
                }
            }
            return Ok(g);
        }
    }
    Err(Error::NormalFormFailure("no tower conjugator found".into()))
}

/// Chart map for an arbitrary tower: the base-tower output conjugated back
/// through the tower's frame element.
pub fn phi_tilde(tower: &UTower, j: u8, p: &ChartPoint) -> Result<ChartOutput, Error> {
    let base = phi_tilde_base(j, p)?;
    if tower.is_base() {
        return Ok(base);
    }
    let h = tower_conjugator(tower)?;
    let hinv = h.inverse();
    Ok(ChartOutput {
        pair: act_pair(&hinv, &base.pair),
        conjugator: base.conjugator,
        strata: base.strata,
    })
}

/// The direct image of a tower point under the forgetful map: recover
/// (mu0 : mu1) and (b0 : b1 : b2) from (u, s1, s2) by the inverse frame
/// substitution and build the pair. Only defined off the exceptional set.
pub fn direct_pair(tower: &UTower, u: &Scalar, s1: &Scalar, s2: &Scalar) -> Result<CubicLinePair, Error> {
    let m = if tower.a.is_zero() {
        HessePoint::new(u.clone(), Scalar::one())
    } else {
        // mu0 = (1 - u)/3 * ... from a mu1 - mu0 = u, a mu1 + 2 mu0 = 1.
        let mu0 = &(&Scalar::one() - u) / &s(3);
        let mu1 = &(&Scalar::one() + &(&s(2) * u)) / &(&s(3) * &tower.a);
        HessePoint::new(mu0, mu1)
    };
    let b = if tower.a.is_zero() {
        let mut arr = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        arr[tower.i as usize] = Scalar::one();
        arr[(tower.i as usize + 1) % 3] = s1.clone();
        arr[(tower.i as usize + 2) % 3] = s2.clone();
        arr
    } else {
        let row = |m: u8| -> Vec<Scalar> {
            vec![
                Scalar::one(),
                Scalar::zeta_pow(m as i64),
                &tower.a * &Scalar::zeta_pow(2 * m as i64),
            ]
        };
        let rows = vec![row(tower.i), row((tower.i + 1) % 3), row((tower.i + 2) % 3)];
        let sol = crate::linalg::solve(&rows, &[Scalar::one(), s1.clone(), s2.clone()])
            .ok_or_else(|| Error::NormalFormFailure("tower substitution not invertible".into()))?;
        [sol[0].clone(), sol[1].clone(), sol[2].clone()]
    };
    let point = ProjectivePoint::new(b);
    Ok(hesse::pencil_pair(&m, &point))
}

/// Membership in the nodal-pair moduli: C reduced with at worst nodes and L
/// missing every singular point.
pub fn in_nodal_pair_locus(z: &CubicLinePair) -> Result<bool, Error> {
    let class = classify_cubic(&z.cubic)?;
    let ok_class = matches!(
        class,
        CurveClass::Smooth
            | CurveClass::IrreducibleNodal
            | CurveClass::Triangle { .. }
            | CurveClass::ConicPlusChord { .. }
    );
    if !ok_class {
        return Ok(false);
    }
    if let SingularLocus::Points(pts) = singular_points(&z.cubic)? {
        for p in pts {
            if z.line.eval(&p.point.coords).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn sample_chart_point(j: u8, rng: &mut DetRng, allow_exceptional: bool) -> ChartPoint {
    loop {
        let draw = |rng: &mut DetRng| {
            if allow_exceptional {
                rng.rational_or_zero()
            } else {
                rng.rational()
            }
        };
        let mut coords = [draw(rng), draw(rng), draw(rng)];
        let t = match radical_index_u(j) {
            Some(idx) => {
                let t = if allow_exceptional {
                    rng.rational_or_zero()
                } else {
                    rng.rational()
                };
                coords[idx] = &t * &t;
                Some(t)
            }
            None => None,
        };
        let p = ChartPoint { coords, t };
        if check_chart_point(j, &p).is_ok() {
            return p;
        }
    }
}

/// Extension identity on random off-exceptional samples: the chart output is
/// PGL-equivalent to the direct forgetful image through the recorded witness;
/// plus nodal-pair membership and root-flip independence.
pub fn verify_phi_extension(tower: &UTower, j: u8, samples: usize, seed: u64) -> VerifyReport {
    let mut report = VerifyReport::new(format!(
        "phi-extension tower ({}, {}) chart {j}",
        tower.a, tower.i
    ));
    let mut rng = DetRng::new(seed ^ ((j as u64) << 8));
    let conj = if tower.is_base() {
        None
    } else {
        match tower_conjugator(tower) {
            Ok(h) => Some(h),
            Err(e) => {
                report.failures.push(format!("conjugator: {e}"));
                return report;
            }
        }
    };
    for n in 0..samples {
        let p = sample_chart_point(j, &mut rng, false);
        report.samples += 1;
        let step = || -> Result<(), String> {
            let out = phi_tilde(tower, j, &p).map_err(|e| e.to_string())?;
            let u = chart_u_weight(j, &p);
            let (e1, e2) = s_exponents(j);
            let s1 = monomial_value(&p.coords, &e1);
            let s2 = monomial_value(&p.coords, &e2);
            let direct = direct_pair(tower, &u, &s1, &s2).map_err(|e| e.to_string())?;
            let m = out
                .conjugator
                .clone()
                .ok_or_else(|| "missing conjugator".to_string())?;
            if m.det().is_zero() {
                return Err("M_j degenerate off the exceptional set".into());
            }
            let mt = ProjTransform::new(m);
            let witness = match &conj {
                None => mt,
                Some(h) => h.inverse().compose(&mt).compose(h),
            };
            let moved = act_pair(&witness, &direct);
            if !moved.proportional(&out.pair) {
                return Err(format!("witness identity failed at sample {n}"));
            }
            if !in_nodal_pair_locus(&out.pair).map_err(|e| e.to_string())? {
                return Err(format!("output not in the nodal-pair locus at sample {n}"));
            }
            if let Some(t) = &p.t {
                let flipped = ChartPoint {
                    coords: p.coords.clone(),
                    t: Some(-t),
                };
                let out2 = phi_tilde(tower, j, &flipped).map_err(|e| e.to_string())?;
                let sign = if matches!(j, 2 | 3) {
                    ProjTransform::diag(Scalar::one(), s(-1), Scalar::one())
                } else {
                    ProjTransform::diag(Scalar::one(), Scalar::one(), s(-1))
                };
                // The flip witness lives in the base frame; conjugate it.
                let sign = match &conj {
                    None => sign,
                    Some(h) => h.inverse().compose(&sign).compose(h),
                };
                if !act_pair(&sign, &out.pair).proportional(&out2.pair) {
                    return Err(format!("root flip not absorbed at sample {n}"));
                }
            }
            Ok(())
        };
        if let Err(e) = step() {
            report.failures.push(e);
        }
    }
    report
}

/// Exceptional-stratification coherence on an exhaustive small grid:
/// the vanishing-locus label must match the classified output curve.
pub fn verify_phi_strata(j: u8) -> VerifyReport {
    let mut report = VerifyReport::new(format!("phi-strata chart {j}"));
    let grid = [s(0), s(1), s(-1), s(2), Scalar::zeta()];
    let radical = radical_index_u(j);
    for a in &grid {
        for b in &grid {
            for c in &grid {
                let p = match radical {
                    None => ChartPoint::plain([a.clone(), b.clone(), c.clone()]),
                    Some(idx) => {
                        let t = if idx == 1 { b.clone() } else { c.clone() };
                        ChartPoint::with_t([a.clone(), b.clone(), c.clone()], idx, t)
                    }
                };
                if check_chart_point(j, &p).is_err() {
                    continue;
                }
                report.samples += 1;
                match phi_tilde_base(j, &p) {
                    Err(e) => report.failures.push(format!("{:?}: {e}", p.coords)),
                    Ok(out) => {
                        let label = stratum_label(&out.strata);
                        match classify_cubic(&out.pair.cubic) {
                            Err(e) => report.failures.push(format!("{:?}: {e}", p.coords)),
                            Ok(class) => {
                                if !label_matches_class(label, &class) {
                                    report.failures.push(format!(
                                        "{:?}: label {label} vs class {}",
                                        p.coords,
                                        class.label()
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

fn chart_exponents_from_base(jp: u8) -> [[i32; 3]; 3] {
    match jp {
        1 => [[1, 0, 0], [-1, 1, 0], [-1, 0, 1]],
        2 => [[0, 0, 1], [1, 0, -1], [-1, 1, 0]],
        3 => [[0, 0, 1], [1, -1, 0], [-1, 2, -1]],
        4 => [[0, 0, 1], [1, -2, 1], [0, 1, -1]],
        5 => [[0, 1, 0], [1, 1, -2], [0, -1, 1]],
        6 => [[0, 1, 0], [1, 0, -1], [-1, -1, 2]],
        7 => [[0, 1, 0], [1, -1, 0], [-1, 0, 1]],
        _ => panic!("chart index out of range"),
    }
}

/// Chart-to-chart coordinate change (Laurent-monomial composition); None
/// when a negative exponent meets a zero coordinate.
pub fn transition_map(j: u8, jp: u8, p: &ChartPoint) -> Option<[Scalar; 3]> {
    let to_base: [[i32; 3]; 3] = {
        let u = u_exponents(j);
        let (s1, s2) = s_exponents(j);
        [
            [u[0] as i32, u[1] as i32, u[2] as i32],
            [s1[0] as i32, s1[1] as i32, s1[2] as i32],
            [s2[0] as i32, s2[1] as i32, s2[2] as i32],
        ]
    };
    let from_base = chart_exponents_from_base(jp);
    let mut out: Vec<Scalar> = Vec::with_capacity(3);
    for row in from_base {
        let mut exps = [0i32; 3];
        for (k, &e) in row.iter().enumerate() {
            for c in 0..3 {
                exps[c] += e * to_base[k][c];
            }
        }
        let mut val = Scalar::one();
        for c in 0..3 {
            let base = &p.coords[c];
            let e = exps[c];
            if e == 0 {
                continue;
            }
            if base.is_zero() {
                if e < 0 {
                    return None;
                }
                val = Scalar::zero();
                continue;
            }
            let pow = if e > 0 {
                base.pow(e as u32)
            } else {
                base.inv().unwrap().pow((-e) as u32)
            };
            val = &val * &pow;
        }
        out.push(val);
    }
    Some([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// Solve a diagonal witness mapping one pair to another through the lines'
/// coefficients, and verify it on both forms.
pub fn diagonal_witness(from: &CubicLinePair, to: &CubicLinePair) -> Option<ProjTransform> {
    let p: Vec<Scalar> = (0..3).map(|k| from.line.b(k)).collect();
    let q: Vec<Scalar> = (0..3).map(|k| to.line.b(k)).collect();
    let anchor = (0..3).find(|&k| !p[k].is_zero() && !q[k].is_zero())?;
    let mut d = [Scalar::one(), Scalar::one(), Scalar::one()];
    for k in 0..3 {
        if p[k].is_zero() != q[k].is_zero() {
            return None;
        }
        if p[k].is_zero() {
            continue;
        }
        d[k] = &(&p[k] * &q[anchor]) / &(&q[k] * &p[anchor]);
        if d[k].is_zero() {
            return None;
        }
    }
    let g = ProjTransform::diag(d[0].clone(), d[1].clone(), d[2].clone());
    if act_pair(&g, from).proportional(to) {
        Some(g)
    } else {
        None
    }
}

/// Transition verification on overlap samples built from square base points
/// (so every radical chart admits an exact parametrization).
pub fn verify_phi_transition(j: u8, jp: u8, samples: usize, seed: u64) -> VerifyReport {
    let mut report = VerifyReport::new(format!("phi-transition ({j}, {jp})"));
    let mut rng = DetRng::new(seed ^ ((j as u64) << 16) ^ ((jp as u64) << 24));
    let mut produced = 0usize;
    let mut guard = 0usize;
    while produced < samples && guard < samples * 200 {
        guard += 1;
        let a = rng.rational();
        let b = rng.rational();
        let c = rng.rational();
        let u = &a * &a;
        if u.pow(3).is_one() {
            continue;
        }
        let bases = [a, b, c];
        let mk = |jj: u8| -> Option<ChartPoint> {
            let from_base = chart_exponents_from_base(jj);
            let mut coords: Vec<Scalar> = Vec::new();
            let mut roots: Vec<Scalar> = Vec::new();
            for row in from_base {
                let mut val = Scalar::one();
                let mut root = Scalar::one();
                for (k, &e) in row.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let bk = &bases[k];
                    let p2 = if e > 0 {
                        bk.pow(2 * e as u32)
                    } else {
                        bk.inv()?.pow((-2 * e) as u32)
                    };
                    let p1 = if e > 0 {
                        bk.pow(e as u32)
                    } else {
                        bk.inv()?.pow((-e) as u32)
                    };
                    val = &val * &p2;
                    root = &root * &p1;
                }
                coords.push(val);
                roots.push(root);
            }
            let t = radical_index_u(jj).map(|idx| roots[idx].clone());
            Some(ChartPoint {
                coords: [coords[0].clone(), coords[1].clone(), coords[2].clone()],
                t,
            })
        };
        let (Some(pj), Some(pjp)) = (mk(j), mk(jp)) else {
            continue;
        };
        if check_chart_point(j, &pj).is_err() || check_chart_point(jp, &pjp).is_err() {
            continue;
        }
        produced += 1;
        report.samples += 1;
        let step = || -> Result<(), String> {
            let out_j = phi_tilde_base(j, &pj).map_err(|e| e.to_string())?;
            let out_jp = phi_tilde_base(jp, &pjp).map_err(|e| e.to_string())?;
            diagonal_witness(&out_j.pair, &out_jp.pair)
                .map(|_| ())
                .ok_or_else(|| format!("no diagonal witness for sample {produced}"))
        };
        if let Err(e) = step() {
            report.failures.push(e);
        }
    }
    report
}

/// The transition (1, 2) on the exceptional slice v0 = 0, reproducing the
/// stated diagonal witness Diag(1, v2^(1/2), v2) (the inverse of the matrix
/// displayed as multiplying coordinates directly).
pub fn verify_phi_transition_12_exceptional(samples: usize, seed: u64) -> VerifyReport {
    let mut report = VerifyReport::new("phi-transition (1,2) exceptional slice");
    let mut rng = DetRng::new(seed ^ 0x12ec);
    for n in 0..samples {
        let v1 = rng.rational();
        let d = rng.rational();
        // v2 = 1/d^2 so that the chart-2 radical exists with t' = d.
        let v2 = d.inv().unwrap().pow(2);
        let p1 = ChartPoint::plain([Scalar::zero(), v1.clone(), v2.clone()]);
        let p2 = ChartPoint::with_t([Scalar::zero(), Scalar::zero(), v1.clone()], 1, d.clone());
        report.samples += 1;
        let step = || -> Result<(), String> {
            let mapped = transition_map(1, 2, &p1).ok_or("transition undefined")?;
            if mapped[0] != p2.coords[0] || mapped[1] != p2.coords[1] || mapped[2] != p2.coords[2] {
                return Err(format!("transition coordinates mismatch at {n}"));
            }
            let out1 = phi_tilde_base(1, &p1).map_err(|e| e.to_string())?;
            let out2 = phi_tilde_base(2, &p2).map_err(|e| e.to_string())?;
            let w = diagonal_witness(&out1.pair, &out2.pair)
                .ok_or_else(|| format!("no witness on exceptional slice at {n}"))?;
            let expected_plus =
                Mat3::diag(Scalar::one(), d.inv().unwrap(), v2.clone()).canonical();
            let expected_minus =
                Mat3::diag(Scalar::one(), -&d.inv().unwrap(), v2.clone()).canonical();
            let got = w.matrix.canonical();
            if got != expected_plus && got != expected_minus {
                return Err(format!("witness is not the stated diagonal at {n}"));
            }
            Ok(())
        };
        if let Err(e) = step() {
            report.failures.push(e);
        }
    }
    report
}

// ---------------------------------------------------------------------------
// V-charts (GIT-side extension), base tower
// ---------------------------------------------------------------------------

/// Which coordinate of the V-chart r is radical, and its power:
/// 3 for cube parametrization, 2 for square.
pub fn radical_index_v(r: u8) -> (usize, u32) {
    match r {
        1 => (1, 3),
        2 => (2, 3),
        3 => (1, 2),
        4 => (2, 2),
        _ => panic!("V-chart index out of range"),
    }
}

/// A point of the V-chart r: coordinates (w0, w1, w2) with the designated
/// coordinate equal to t^2 or t^3.
#[derive(Clone, Debug)]
pub struct VChartPoint {
    pub coords: [Scalar; 3],
    pub t: Scalar,
}

impl VChartPoint {
    pub fn new(r: u8, mut coords: [Scalar; 3], t: Scalar) -> VChartPoint {
        let (idx, pow) = radical_index_v(r);
        coords[idx] = t.pow(pow);
        VChartPoint { coords, t }
    }
}

pub fn check_v_chart_point(r: u8, p: &VChartPoint) -> Result<(), Error> {
    let (idx, pow) = radical_index_v(r);
    if p.coords[idx] != p.t.pow(pow) {
        return Err(Error::RadicalRequired(idx));
    }
    if p.coords[0].pow(3).is_one() {
        return Err(Error::Parse(format!("V-chart {r} point has w0^3 = 1")));
    }
    Ok(())
}

/// alpha1, alpha2 in terms of the chart coordinates.
pub fn v_alphas(r: u8, p: &VChartPoint) -> (Scalar, Scalar) {
    let w1 = &p.coords[1];
    let w2 = &p.coords[2];
    let t = &p.t;
    match r {
        1 => (t.pow(3), &t.pow(3) * w2),
        2 => (&w1.pow(3) * &t.pow(3), &w1.pow(2) * &t.pow(3)),
        3 => (&t.pow(4) * &w2.pow(3), &t.pow(2) * &w2.pow(2)),
        4 => (w1 * &t.pow(4), t.pow(2)),
        _ => panic!("V-chart index out of range"),
    }
}

/// The pencil-frame forms F, S (the x0-rescaled frame of the extension).
pub fn psi_base_forms(r: u8, p: &VChartPoint) -> (TernaryForm, TernaryForm) {
    let w0 = &p.coords[0];
    let (a1, a2) = v_alphas(r, p);
    let f = TernaryForm::from_terms(
        3,
        &[
            ((3, 0, 0), w0.pow(3)),
            ((0, 3, 0), Scalar::one()),
            ((0, 0, 3), Scalar::one()),
            ((1, 1, 1), s(-3)),
        ],
    );
    let l = TernaryForm::line(
        Scalar::one(),
        &(&a1 + &a2) + &Scalar::one(),
        &a2 + &Scalar::one(),
    );
    (f, l)
}

/// The conjugating matrix N_r (entries use the radical parameter).
pub fn n_matrix(r: u8, p: &VChartPoint) -> Mat3 {
    let w1 = &p.coords[1];
    let w2 = &p.coords[2];
    let t = &p.t;
    let (mid, low) = match r {
        1 => (t.pow(3), t.pow(2)),
        2 => (&w1.pow(3) * &t.pow(3), &w1.pow(2) * &t.pow(2)),
        3 => (&t.pow(3) * &w2.pow(3), &t.pow(2) * &w2.pow(2)),
        4 => (t.pow(3), t.pow(2)),
        _ => panic!("V-chart index out of range"),
    };
    Mat3::from_rows(
        [Scalar::one(), Scalar::one(), Scalar::one()],
        [Scalar::zero(), mid, Scalar::zero()],
        [Scalar::zero(), low.clone(), low],
    )
}

/// The displayed chart families of the GIT-side extension. All four share
/// the shape 3 x0 x1^2 - 3 b x0x1x2 + w0^3 b^2 x0 (b^4 x0^2 - 3 b^2 x0 x2
/// + 3 x2^2) - (w0^3 - 1) x2^3, with b a chart-specific product.
pub fn psi_hat(r: u8, p: &VChartPoint) -> Result<ChartOutput, Error> {
    check_v_chart_point(r, p)?;
    let w0 = &p.coords[0];
    let w1 = &p.coords[1];
    let w2 = &p.coords[2];
    let t = &p.t;
    let beta = match r {
        1 => t.clone(),
        2 => w1 * t,
        3 => t * w2,
        4 => t.clone(),
        _ => panic!("V-chart index out of range"),
    };
    let w0c = w0.pow(3);
    let b2 = &beta * &beta;
    let cubic = TernaryForm::from_terms(
        3,
        &[
            ((1, 2, 0), s(3)),
            ((1, 1, 1), -&(&s(3) * &beta)),
            ((3, 0, 0), &w0c * &(&b2 * &b2.pow(2))),
            ((2, 0, 1), -&(&(&s(3) * &w0c) * &b2.pow(2))),
            ((1, 0, 2), &(&s(3) * &w0c) * &b2),
            ((0, 0, 3), -&(&w0c - &Scalar::one())),
        ],
    );
    let (d, e) = match r {
        1 => (Scalar::one(), t * w2),
        2 => (Scalar::one(), t.clone()),
        3 => (t.clone(), Scalar::one()),
        4 => (w1 * t, Scalar::one()),
        _ => unreachable!(),
    };
    let line = TernaryForm::line(Scalar::one(), d, e);
    Ok(ChartOutput {
        pair: CubicLinePair::new(cubic, line)?,
        conjugator: Some(n_matrix(r, p)),
        strata: vec![],
    })
}

/// Membership in the cuspidal exceptional set, chart-wise.
pub fn hat_e_stratum(r: u8, p: &VChartPoint) -> bool {
    let w1 = &p.coords[1];
    let w2 = &p.coords[2];
    match r {
        1 => w1.is_zero(),
        2 | 3 => w1.is_zero() || w2.is_zero(),
        4 => w2.is_zero(),
        _ => panic!("V-chart index out of range"),
    }
}

fn sample_v_chart_point(r: u8, rng: &mut DetRng, allow_exceptional: bool) -> VChartPoint {
    loop {
        let draw = |rng: &mut DetRng| {
            if allow_exceptional {
                rng.rational_or_zero()
            } else {
                rng.rational()
            }
        };
        let coords = [draw(rng), draw(rng), draw(rng)];
        let t = draw(rng);
        let p = VChartPoint::new(r, coords, t);
        if check_v_chart_point(r, &p).is_ok() {
            return p;
        }
    }
}

/// Semistability of the chart outputs (including exceptional points), the
/// cuspidal-set equivalence, the N_r dual route off the exceptional set,
/// and root-choice independence.
pub fn verify_psi(r: u8, samples: usize, seed: u64) -> VerifyReport {
    let mut report = VerifyReport::new(format!("psi chart {r}"));
    let mut rng = DetRng::new(seed ^ ((r as u64) << 4) ^ 0x9a);
    for n in 0..samples {
        let p = sample_v_chart_point(r, &mut rng, true);
        report.samples += 1;
        let step = || -> Result<(), String> {
            let out = psi_hat(r, &p).map_err(|e| e.to_string())?;
            let verdict = classify(&out.pair).map_err(|e| e.to_string())?;
            if verdict.status == Status::Unstable {
                return Err(format!("unstable output at sample {n}"));
            }
            let cuspidal = matches!(verdict.curve_class, CurveClass::IrreducibleCuspidal);
            if cuspidal != hat_e_stratum(r, &p) {
                return Err(format!("cuspidal-set mismatch at sample {n}"));
            }
            let nr = n_matrix(r, &p);
            if !nr.det().is_zero() {
                let (f, sline) = psi_base_forms(r, &p);
                let base = CubicLinePair::new(f, sline).map_err(|e| e.to_string())?;
                let moved = act_pair(&ProjTransform::new(nr), &base);
                if !moved.proportional(&out.pair) {
                    return Err(format!("N_r route mismatch at sample {n}"));
                }
            }
            let (_, pow) = radical_index_v(r);
            let flips: Vec<Scalar> = if pow == 2 {
                vec![-&p.t]
            } else {
                vec![&p.t * &Scalar::zeta(), &p.t * &Scalar::zeta_sq()]
            };
            for t2 in flips {
                let p2 = VChartPoint::new(r, p.coords.clone(), t2);
                let out2 = psi_hat(r, &p2).map_err(|e| e.to_string())?;
                let witnesses: Vec<ProjTransform> = if pow == 2 {
                    vec![ProjTransform::diag(Scalar::one(), s(-1), Scalar::one())]
                } else {
                    vec![
                        ProjTransform::diag(Scalar::one(), Scalar::one(), Scalar::zeta()),
                        ProjTransform::diag(Scalar::one(), Scalar::one(), Scalar::zeta_sq()),
                    ]
                };
                if !witnesses
                    .iter()
                    .any(|w| act_pair(w, &out.pair).proportional(&out2.pair))
                {
                    return Err(format!("root flip not absorbed at sample {n}"));
                }
            }
            Ok(())
        };
        if let Err(e) = step() {
            report.failures.push(e);
        }
    }
    report
}

/// Cuspidal-set equivalence on an exhaustive small grid.
pub fn verify_psi_strata(r: u8) -> VerifyReport {
    let mut report = VerifyReport::new(format!("psi-strata chart {r}"));
    let grid = [s(0), s(1), s(-1), s(2), Scalar::zeta()];
    for a in &grid {
        for b in &grid {
            for c in &grid {
                for t in &grid {
                    let p = VChartPoint::new(r, [a.clone(), b.clone(), c.clone()], t.clone());
                    if check_v_chart_point(r, &p).is_err() {
                        continue;
                    }
                    report.samples += 1;
                    let outcome = psi_hat(r, &p)
                        .and_then(|out| classify_cubic(&out.pair.cubic));
                    match outcome {
                        Err(e) => report.failures.push(format!("{:?}: {e}", p.coords)),
                        Ok(class) => {
                            let cuspidal = matches!(class, CurveClass::IrreducibleCuspidal);
                            if cuspidal != hat_e_stratum(r, &p) {
                                report
                                    .failures
                                    .push(format!("{:?}: cuspidal-set mismatch", p.coords));
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Graph-closure families and the triple-tangent stratum
// ---------------------------------------------------------------------------

/// The two-limit family over the graph of the birational comparison map:
/// C_t: x0 x2^2 = x1^3 + B1 t^4 x0^2 x1 + B2 t^6 x0^3, L_t: x0 = b1 x1 + b2 x2.
#[derive(Clone, Debug)]
pub struct GraphClosureFamily {
    pub raw: ParamFamily,
    /// The family transported by Diag(1, 1/t^2, 1/t^3).
    pub transported: ParamFamily,
}

pub fn graph_closure_family(
    b1: &Scalar,
    b2: &Scalar,
    big_b1: &Scalar,
    big_b2: &Scalar,
) -> Result<GraphClosureFamily, Error> {
    if b1.is_zero() && b2.is_zero() {
        return Err(Error::Parse("need (b1, b2) != 0".into()));
    }
    if big_b1.is_zero() && big_b2.is_zero() {
        return Err(Error::Parse("need (B1, B2) != 0".into()));
    }
    let one = || LaurentPoly::constant(Scalar::one());
    let cubic = LaurentForm::from_terms(
        3,
        &[
            ((1, 0, 2), one()),
            ((0, 3, 0), LaurentPoly::constant(s(-1))),
            ((2, 1, 0), LaurentPoly::term(-big_b1, 4)),
            ((3, 0, 0), LaurentPoly::term(-big_b2, 6)),
        ],
    );
    let line = LaurentForm::from_terms(
        1,
        &[
            ((1, 0, 0), one()),
            ((0, 1, 0), LaurentPoly::constant(-b1)),
            ((0, 0, 1), LaurentPoly::constant(-b2)),
        ],
    );
    let raw = ParamFamily::new(cubic, line)?;
    let o = Scalar::one();
    let transported = raw.act_diag([&o, &o, &o], [0, -2, -3]);
    Ok(GraphClosureFamily { raw, transported })
}

impl GraphClosureFamily {
    /// First limit: the cuspidal pair (x0 x2^2 = x1^3, L).
    pub fn first_limit(&self) -> Result<CubicLinePair, Error> {
        self.raw.limit_at_zero()
    }

    /// Second limit: the 3-tangent pair (x0 x2^2 = x1^3 + B1 x0^2 x1 + B2 x0^3, x0).
    pub fn second_limit(&self) -> Result<CubicLinePair, Error> {
        self.transported.limit_at_zero()
    }
}

/// Verify the two displayed limits for a quadruple: the first limit is a
/// cuspidal pair, the second a 3-tangent pair at a smooth point.
pub fn verify_graph_closure(
    b1: &Scalar,
    b2: &Scalar,
    big_b1: &Scalar,
    big_b2: &Scalar,
) -> Result<(CubicLinePair, CubicLinePair), Error> {
    let fam = graph_closure_family(b1, b2, big_b1, big_b2)?;
    let first = fam.first_limit()?;
    let second = fam.second_limit()?;
    let class = classify_cubic(&first.cubic)?;
    if class != CurveClass::IrreducibleCuspidal {
        return Err(Error::NormalFormFailure("first limit not cuspidal".into()));
    }
    let class2 = classify_cubic(&second.cubic)?;
    if !matches!(class2, CurveClass::Smooth | CurveClass::IrreducibleNodal) {
        return Err(Error::NormalFormFailure("second limit wrong class".into()));
    }
    match contact_type(&second.cubic, &second.line)? {
        ContactType::ThreeTangent {
            point_is_smooth: true,
            ..
        } => {}
        other => {
            return Err(Error::NormalFormFailure(format!(
                "second limit contact {other:?}"
            )))
        }
    }
    Ok((first, second))
}

/// The triple-tangent stratum coordinate: z(mu) carries j(mu) away from the
/// cube roots of 1; those collapse to the single nodal boundary point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WtPoint {
    Smooth(crate::hesse::JValue),
    NodalBoundary,
}

/// The pair z(mu) = (x0^3+x1^3+x2^3 - 3 mu x0x1x2, mu x0 + x1 + x2).
pub fn wt_pair(mu: &Scalar) -> CubicLinePair {
    CubicLinePair::new(
        TernaryForm::from_terms(
            3,
            &[
                ((3, 0, 0), Scalar::one()),
                ((0, 3, 0), Scalar::one()),
                ((0, 0, 3), Scalar::one()),
                ((1, 1, 1), -&(&s(3) * mu)),
            ],
        ),
        TernaryForm::line(mu.clone(), Scalar::one(), Scalar::one()),
    )
    .expect("nonzero forms")
}

pub fn wt_j_match(mu: &Scalar) -> WtPoint {
    if mu.pow(3).is_one() {
        return WtPoint::NodalBoundary;
    }
    WtPoint::Smooth(hesse::j_invariant(&HessePoint::new(Scalar::one(), mu.clone())))
}

/// Witness for the identification z(mu) ~ z((mu+2)/(mu-1)): a pencil-group
/// element composed with a solved diagonal, mapping z(mu) exactly to the
/// rescaled display (tau^3 x0^3 + x1^3 + x2^3 - 3x0x1x2, x0+x1+x2).
pub fn wt_identification_witness(mu: &Scalar) -> Result<(ProjTransform, CubicLinePair), Error> {
    let denom = mu - &Scalar::one();
    if denom.is_zero() {
        return Err(Error::Parse("mu = 1 has no finite partner".into()));
    }
    let tau = &denom / &(mu + &s(2));
    let target = CubicLinePair::new(
        TernaryForm::from_terms(
            3,
            &[
                ((3, 0, 0), tau.pow(3)),
                ((0, 3, 0), Scalar::one()),
                ((0, 0, 3), Scalar::one()),
                ((1, 1, 1), s(-3)),
            ],
        ),
        TernaryForm::line(Scalar::one(), Scalar::one(), Scalar::one()),
    )?;
    let z = wt_pair(mu);
    for mat in hesse::g216() {
        let h = ProjTransform::new(mat);
        let cand = act_pair(&h, &z);
        if let Some(d) = diagonal_witness(&cand, &target) {
            let g = d.compose(&h);
            debug_assert!(act_pair(&g, &z).proportional(&target));
            return Ok((g, target));
        }
    }
    Err(Error::NormalFormFailure(
        "no identification witness found".into(),
    ))
}

/// The boundary family of the triple-tangent stratum in the rescaled frame:
/// (tau^3 x0^3 + x1^3 + x2^3 - 3x0x1x2, x0+x1+x2) with tau the parameter;
/// its tau -> 0 limit is the nodal 3-tangent pair.
pub fn wt_limit_family() -> ParamFamily {
    let one = || LaurentPoly::constant(Scalar::one());
    ParamFamily::new(
        LaurentForm::from_terms(
            3,
            &[
                ((3, 0, 0), LaurentPoly::term(Scalar::one(), 3)),
                ((0, 3, 0), one()),
                ((0, 0, 3), one()),
                ((1, 1, 1), LaurentPoly::constant(s(-3))),
            ],
        ),
        LaurentForm::from_terms(1, &[((1, 0, 0), one()), ((0, 1, 0), one()), ((0, 0, 1), one())]),
    )
    .expect("nonzero family")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_weight_examples() {
        let p = ChartPoint::plain([s(5), s(1), s(2)]);
        assert_eq!(chart_u_weight(1, &p), s(5));
        let p = ChartPoint::plain([s(2), s(3), s(5)]);
        assert_eq!(chart_u_weight(4, &p), s(150));
        let p = ChartPoint::plain([s(1), s(1), s(1)]);
        assert!(check_chart_point(3, &p).is_err());
    }

    #[test]
    fn phi_chart4_strata_examples() {
        let p = ChartPoint::plain([s(2), s(0), s(3)]);
        let out = phi_tilde_base(4, &p).unwrap();
        assert!(matches!(
            classify_cubic(&out.pair.cubic).unwrap(),
            CurveClass::Triangle { .. }
        ));
        assert_eq!(exceptional_stratum_class(4, &p), "3-gon");
        let p = ChartPoint::plain([s(2), s(3), s(0)]);
        let out = phi_tilde_base(4, &p).unwrap();
        match classify_cubic(&out.pair.cubic).unwrap() {
            CurveClass::ConicPlusChord { chord, .. } => {
                assert!(chord.proportional(&TernaryForm::line(s(0), s(1), s(0))));
            }
            c => panic!("unexpected {c:?}"),
        }
        let p = ChartPoint::plain([s(2), s(3), s(5)]);
        let out = phi_tilde_base(4, &p).unwrap();
        assert_eq!(classify_cubic(&out.pair.cubic).unwrap(), CurveClass::Smooth);
    }

    #[test]
    fn phi_chart1_matches_pencil() {
        let p = ChartPoint::plain([s(2), s(3), s(5)]);
        let out = phi_tilde_base(1, &p).unwrap();
        assert_eq!(out.pair.cubic.a(0, 0), s(8));
        assert_eq!(out.pair.line.b(1), s(3));
    }

    #[test]
    fn phi_extension_base_tower() {
        for j in 1..=7u8 {
            let report = verify_phi_extension(&UTower::base(), j, 12, 7);
            assert!(report.passed(), "chart {j}: {:?}", report.failures);
        }
    }

    #[test]
    fn phi_extension_other_tower() {
        let tower = UTower {
            a: Scalar::one(),
            i: 1,
        };
        let report = verify_phi_extension(&tower, 1, 6, 11);
        assert!(report.passed(), "{:?}", report.failures);
        let tower = UTower {
            a: Scalar::zeta(),
            i: 2,
        };
        let report = verify_phi_extension(&tower, 4, 6, 13);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn tower_conjugators_exist() {
        for tower in UTower::all() {
            assert!(tower_conjugator(&tower).is_ok(), "tower {tower:?}");
        }
    }

    #[test]
    fn phi_transitions() {
        for (j, jp) in [(1u8, 2u8), (1, 7), (4, 5), (2, 3), (6, 7)] {
            let report = verify_phi_transition(j, jp, 6, 3);
            assert!(report.passed(), "({j},{jp}): {:?}", report.failures);
            assert!(report.samples > 0);
        }
    }

    #[test]
    fn phi_transition_12_exceptional_witness() {
        let report = verify_phi_transition_12_exceptional(8, 5);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn psi_chart_examples() {
        // r=3, w1 w2 = 0, w0^3 != 1: cuspidal with cusp at (1:0:0) off L.
        let p = VChartPoint::new(3, [s(2), s(0), s(3)], s(0));
        let out = psi_hat(3, &p).unwrap();
        assert_eq!(
            classify_cubic(&out.pair.cubic).unwrap(),
            CurveClass::IrreducibleCuspidal
        );
        assert!(hat_e_stratum(3, &p));
        // r=3, w0 = 0, w1 w2 != 0: nodal.
        let p = VChartPoint::new(3, [s(0), s(1), s(2)], s(1));
        let out = psi_hat(3, &p).unwrap();
        assert_eq!(
            classify_cubic(&out.pair.cubic).unwrap(),
            CurveClass::IrreducibleNodal
        );
        assert!(!hat_e_stratum(3, &p));
        // r=3 generic: smooth, semistable.
        let p = VChartPoint::new(3, [s(2), s(4), s(3)], s(2));
        let out = psi_hat(3, &p).unwrap();
        assert_eq!(classify_cubic(&out.pair.cubic).unwrap(), CurveClass::Smooth);
        let v = classify(&out.pair).unwrap();
        assert_ne!(v.status, Status::Unstable);
    }

    #[test]
    fn psi_verification_small() {
        for r in 1..=4u8 {
            let report = verify_psi(r, 10, 17);
            assert!(report.passed(), "chart {r}: {:?}", report.failures);
        }
    }

    #[test]
    fn graph_closure_limits() {
        let (first, second) = verify_graph_closure(&s(1), &s(0), &s(0), &s(1)).unwrap();
        assert_eq!(
            classify_cubic(&first.cubic).unwrap(),
            CurveClass::IrreducibleCuspidal
        );
        assert!(first.line.proportional(&TernaryForm::line(s(1), s(-1), s(0))));
        assert_eq!(classify_cubic(&second.cubic).unwrap(), CurveClass::Smooth);
        assert!(second.line.proportional(&TernaryForm::line(s(1), s(0), s(0))));
        let expected = TernaryForm::from_terms(
            3,
            &[((1, 0, 2), s(1)), ((0, 3, 0), s(-1)), ((3, 0, 0), s(-1))],
        );
        assert!(second.cubic.proportional(&expected));
        // Nodal second limit when 4 B1^3 + 27 B2^2 = 0.
        let (_, second) = verify_graph_closure(&s(1), &s(1), &s(-3), &s(2)).unwrap();
        assert_eq!(
            classify_cubic(&second.cubic).unwrap(),
            CurveClass::IrreducibleNodal
        );
    }

    #[test]
    fn wt_examples() {
        assert_eq!(
            wt_j_match(&s(0)),
            WtPoint::Smooth(crate::hesse::JValue::Finite(Scalar::zero()))
        );
        assert_eq!(wt_j_match(&s(1)), WtPoint::NodalBoundary);
        let (g, target) = wt_identification_witness(&s(3)).unwrap();
        assert!(act_pair(&g, &wt_pair(&s(3))).proportional(&target));
        let lim = wt_limit_family().limit_at_zero().unwrap();
        assert_eq!(
            classify_cubic(&lim.cubic).unwrap(),
            CurveClass::IrreducibleNodal
        );
        assert!(matches!(
            contact_type(&lim.cubic, &lim.line).unwrap(),
            ContactType::ThreeTangent { .. }
        ));
    }
}
