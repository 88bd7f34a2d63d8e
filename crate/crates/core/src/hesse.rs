//! The Hesse pencil μ0(x0³+x1³+x2³) = 3μ1 x0x1x2, the order-216 group
//! preserving it, orbits and stabilizers on the pencil line, fibers of the
//! forgetful maps, base-locus combinatorics, and the j-invariant.

use crate::forms::{act, ProjTransform, ProjectivePoint, TernaryForm};
use crate::geometry::{classify_cubic, CurveClass};
use crate::linalg::Mat3;
use crate::scalar::Scalar;
use crate::stability::{close_group, CubicLinePair};
use crate::Error;

/// A point (μ0 : μ1) of the pencil line.
#[derive(Clone, PartialEq, Eq)]
pub struct HessePoint {
    pub mu: [Scalar; 2],
}

impl std::fmt::Debug for HessePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} : {})", self.mu[0], self.mu[1])
    }
}

impl HessePoint {
    pub fn new(mu0: Scalar, mu1: Scalar) -> HessePoint {
        assert!(!(mu0.is_zero() && mu1.is_zero()), "point of P^1");
        // Canonical scaling: first nonzero coordinate 1.
        let lead = if !mu0.is_zero() { mu0.clone() } else { mu1.clone() };
        let inv = lead.inv().unwrap();
        HessePoint {
            mu: [&mu0 * &inv, &mu1 * &inv],
        }
    }

    pub fn from_ints(a: i64, b: i64) -> HessePoint {
        HessePoint::new(Scalar::from_int(a), Scalar::from_int(b))
    }

    /// Is this one of the four singular (triangle) members? Those are
    /// μ0/μ1 ∈ {0, 1, ζ3, ζ3²}, i.e. μ0 = 0 or μ0³ = μ1³.
    pub fn is_singular_member(&self) -> bool {
        self.mu[0].is_zero() || self.mu[0].pow(3) == self.mu[1].pow(3)
    }

    pub fn cmp_key(&self, other: &HessePoint) -> std::cmp::Ordering {
        self.mu[0]
            .cmp_key(&other.mu[0])
            .then_with(|| self.mu[1].cmp_key(&other.mu[1]))
    }
}

/// The pencil member μ0(x0³+x1³+x2³) − 3μ1·x0x1x2.
pub fn hesse_cubic(m: &HessePoint) -> TernaryForm {
    let s3 = Scalar::from_int(3);
    TernaryForm::from_terms(
        3,
        &[
            ((3, 0, 0), m.mu[0].clone()),
            ((0, 3, 0), m.mu[0].clone()),
            ((0, 0, 3), m.mu[0].clone()),
            ((1, 1, 1), -&(&s3 * &m.mu[1])),
        ],
    )
}

/// Generator names of the pencil-preserving group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Sigma,
    Tau,
    Sigma1,
    Sigma2,
}

pub fn generator_matrix(g: Gen) -> Mat3 {
    let z = Scalar::zeta;
    let o = Scalar::one;
    let n = Scalar::zero;
    match g {
        Gen::Sigma => Mat3::diag(o(), z(), z().pow(2)),
        Gen::Tau => Mat3::from_rows([n(), n(), o()], [o(), n(), n()], [n(), o(), n()]),
        Gen::Sigma1 => Mat3::from_rows(
            [o(), o(), o()],
            [o(), z(), z().pow(2)],
            [o(), z().pow(2), z()],
        ),
        Gen::Sigma2 => Mat3::from_rows([z(), n(), n()], [n(), n(), o()], [n(), o(), n()]),
    }
}

/// σ3 = σ1² = σ2³, the transposition of x1 and x2.
pub fn sigma3() -> Mat3 {
    let o = Scalar::one;
    let n = Scalar::zero;
    Mat3::from_rows([o(), n(), n()], [n(), n(), o()], [n(), o(), n()])
}

/// The full pencil-preserving group: closure of the four generators, order
/// exactly 216, with canonically scaled matrices. Computed once and cached.
pub fn g216() -> Vec<Mat3> {
    static CACHE: std::sync::OnceLock<Vec<Mat3>> = std::sync::OnceLock::new();
    CACHE
        .get_or_init(|| {
            let gens = [
                generator_matrix(Gen::Sigma),
                generator_matrix(Gen::Tau),
                generator_matrix(Gen::Sigma1),
                generator_matrix(Gen::Sigma2),
            ];
            let group = close_group(&gens, 300).expect("group closes");
            assert_eq!(group.len(), 216, "pencil group has order 216");
            group
        })
        .clone()
}

/// The stabilizer of a generic pencil point: closure of σ, τ, σ3 (order 18).
pub fn generic_stabilizer() -> Vec<Mat3> {
    static CACHE: std::sync::OnceLock<Vec<Mat3>> = std::sync::OnceLock::new();
    CACHE
        .get_or_init(|| {
            close_group(
                &[generator_matrix(Gen::Sigma), generator_matrix(Gen::Tau), sigma3()],
                300,
            )
            .expect("stabilizer closes")
        })
        .clone()
}

/// The fractional-linear action of a named generator on (μ0 : μ1).
pub fn sq13_action(g: Gen, m: &HessePoint) -> HessePoint {
    let [mu0, mu1] = &m.mu;
    match g {
        Gen::Sigma | Gen::Tau => m.clone(),
        Gen::Sigma1 => HessePoint::new(mu1 - mu0, mu1 + &(&Scalar::from_int(2) * mu0)),
        Gen::Sigma2 => HessePoint::new(mu0.clone(), &Scalar::zeta_sq() * mu1),
    }
}

/// The pencil-parameter action induced by an arbitrary group element:
/// act(g, hesse_cubic(m)) must itself be a pencil member; read its parameter.
pub fn induced_mu_action(g: &ProjTransform, m: &HessePoint) -> Result<HessePoint, Error> {
    let image = act(g, &hesse_cubic(m));
    pencil_parameter(&image).ok_or_else(|| {
        Error::NormalFormFailure("group element does not preserve the pencil".into())
    })
}

/// If the cubic is a pencil member, return its (μ0 : μ1).
pub fn pencil_parameter(f: &TernaryForm) -> Option<HessePoint> {
    let c300 = f.a(0, 0);
    let c030 = f.a(3, 0);
    let c003 = f.a(0, 3);
    let cxyz = f.a(1, 1);
    if c300 != c030 || c030 != c003 {
        return None;
    }
    // All other coefficients must vanish.
    for i in 0..=3u8 {
        for j in 0..=(3 - i) {
            let is_cube = (i, j) == (0, 0) || (i, j) == (3, 0) || (i, j) == (0, 3);
            let is_xyz = (i, j) == (1, 1);
            if !is_cube && !is_xyz && !f.a(i, j).is_zero() {
                return None;
            }
        }
    }
    let mu0 = c300;
    let mu1 = -&(&cxyz / &Scalar::from_int(3));
    if mu0.is_zero() && mu1.is_zero() {
        return None;
    }
    Some(HessePoint::new(mu0, mu1))
}

/// Line action of a group element on coefficient vectors.
pub fn line_action(g: &ProjTransform, b: &[Scalar; 3]) -> [Scalar; 3] {
    let l = TernaryForm::line(b[0].clone(), b[1].clone(), b[2].clone());
    let moved = act(g, &l);
    [moved.b(0), moved.b(1), moved.b(2)]
}

/// Orbit of a pencil point under the induced action, plus stabilizer order.
pub fn orbit_and_stabilizer(m: &HessePoint) -> (Vec<HessePoint>, usize) {
    let group = g216();
    let mut orbit: Vec<HessePoint> = Vec::new();
    let mut stab = 0usize;
    for mat in &group {
        let g = ProjTransform::new(mat.clone());
        let img = induced_mu_action(&g, m).expect("pencil preserved");
        if img == *m {
            stab += 1;
        }
        if !orbit.contains(&img) {
            orbit.push(img);
        }
    }
    orbit.sort_by(|a, b| a.cmp_key(b));
    (orbit, stab)
}

/// The twelve μ-points listed for a generic orbit:
/// (μ0 : α μ1) and (β μ1 − μ0 : γ(β μ1 + 2 μ0)) with α³ = β³ = γ³ = 1.
pub fn orbit_formula_points(m: &HessePoint) -> Vec<HessePoint> {
    let [mu0, mu1] = &m.mu;
    let mut out: Vec<HessePoint> = Vec::new();
    let mut push = |p: HessePoint| {
        if !out.contains(&p) {
            out.push(p);
        }
    };
    for a in 0..3 {
        let alpha = Scalar::zeta_pow(a);
        push(HessePoint::new(mu0.clone(), &alpha * mu1));
    }
    for b in 0..3 {
        for c in 0..3 {
            let beta = Scalar::zeta_pow(b);
            let gamma = Scalar::zeta_pow(c);
            let n0 = &(&beta * mu1) - mu0;
            let n1 = &gamma * &(&(&beta * mu1) + &(&Scalar::from_int(2) * mu0));
            if n0.is_zero() && n1.is_zero() {
                continue;
            }
            push(HessePoint::new(n0, n1));
        }
    }
    out.sort_by(|a, b| a.cmp_key(b));
    out
}

/// A fiber point of the degree-216 forgetful map: a pencil point, a line,
/// and the witnessing group element.
#[derive(Clone, Debug)]
pub struct FiberPoint {
    pub mu: HessePoint,
    pub b: ProjectivePoint,
    pub witness: ProjTransform,
}

/// The fiber of the forgetful map over the pair (hesse_cubic(m), line b):
/// exactly 216 distinct points for generic input, each recorded with its
/// G216 witness. Degenerate inputs (on the base loci) are rejected.
pub fn fiber(m: &HessePoint, b: &ProjectivePoint) -> Result<Vec<FiberPoint>, Error> {
    if on_base_locus_phi(m, b) || on_three_tangent_locus(m, b) {
        return Err(Error::DegenerateFiber);
    }
    let group = g216();
    let mut out: Vec<FiberPoint> = Vec::new();
    for mat in &group {
        let g = ProjTransform::new(mat.clone());
        let mu = induced_mu_action(&g, m)?;
        let bb = line_action(&g, &b.coords);
        let pt = ProjectivePoint::new(bb);
        if out
            .iter()
            .any(|f| f.mu == mu && f.b == pt)
        {
            continue;
        }
        out.push(FiberPoint {
            mu,
            b: pt,
            witness: g,
        });
    }
    if out.len() != 216 {
        return Err(Error::DegenerateFiber);
    }
    Ok(out)
}

/// b_i^(a) as in the base-locus description: b_i for a = 0 and
/// b0 + ζ3^i b1 + a ζ3^{2i} b2 for a³ = 1.
pub fn b_form(a: &Scalar, i: u8, b: &[Scalar; 3]) -> Scalar {
    if a.is_zero() {
        b[i as usize].clone()
    } else {
        &(&b[0] + &(&Scalar::zeta_pow(i as i64) * &b[1]))
            + &(&(a * &Scalar::zeta_pow(2 * i as i64)) * &b[2])
    }
}

/// The four a-values of the singular members: 0 and the cube roots of 1.
pub fn singular_a_values() -> Vec<Scalar> {
    vec![
        Scalar::zero(),
        Scalar::one(),
        Scalar::zeta(),
        Scalar::zeta_sq(),
    ]
}

/// Is (m, b) on the base locus of φ (the four 3-gons B^(a))?
pub fn on_base_locus_phi(m: &HessePoint, b: &ProjectivePoint) -> bool {
    for a in singular_a_values() {
        // (a : 1) matches m?
        let pt = HessePoint::new(a.clone(), Scalar::one());
        if *m == pt {
            for i in 0..3u8 {
                if b_form(&a, i, &b.coords).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Is (m, b) on one of the nine lines A_i^{(j)} (the 3-tangent locus)?
pub fn on_three_tangent_locus(m: &HessePoint, b: &ProjectivePoint) -> bool {
    let [mu0, mu1] = &m.mu;
    for i in 0..3usize {
        for j in 0..3i64 {
            let zj = Scalar::zeta_pow(2 * j);
            let e1 = &b.coords[(i + 1) % 3] - &(&zj * &b.coords[(i + 2) % 3]);
            let e2 = &(&b.coords[(i + 2) % 3] * mu1) - &(&(&b.coords[i] * &zj) * mu0);
            if e1.is_zero() && e2.is_zero() {
                return true;
            }
        }
    }
    false
}

/// Vertex O^(a,i) of the 3-gon B^(a): μ = (a : 1) and b with
/// b^(a)_{[i+1]} = b^(a)_{[i+2]} = 0.
pub fn vertex(a: &Scalar, i: u8) -> (HessePoint, ProjectivePoint) {
    let mu = HessePoint::new(a.clone(), Scalar::one());
    if a.is_zero() {
        let mut c = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        c[i as usize] = Scalar::one();
        return (mu, ProjectivePoint::new(c));
    }
    // Solve the two linear equations; rows are the coefficient vectors of
    // b^(a)_{[i+1]} and b^(a)_{[i+2]}; the vertex is their cross product.
    let row = |k: u8| -> [Scalar; 3] {
        [
            Scalar::one(),
            Scalar::zeta_pow(k as i64),
            a * &Scalar::zeta_pow(2 * k as i64),
        ]
    };
    let r1 = row((i + 1) % 3);
    let r2 = row((i + 2) % 3);
    let cross = [
        &(&r1[1] * &r2[2]) - &(&r1[2] * &r2[1]),
        &(&r1[2] * &r2[0]) - &(&r1[0] * &r2[2]),
        &(&r1[0] * &r2[1]) - &(&r1[1] * &r2[0]),
    ];
    (mu, ProjectivePoint::new(cross))
}

/// Symbolic description of the base loci: 4 triangles, 9 lines, 12 vertices.
#[derive(Clone, Debug)]
pub struct BaseLocusDescription {
    /// (a, i) -> vertex.
    pub vertices: Vec<((Scalar, u8), (HessePoint, ProjectivePoint))>,
    /// (i, j) labels of the nine lines.
    pub lines: Vec<(u8, u8)>,
}

pub fn base_loci() -> BaseLocusDescription {
    let mut vertices = Vec::new();
    for a in singular_a_values() {
        for i in 0..3u8 {
            vertices.push(((a.clone(), i), vertex(&a, i)));
        }
    }
    let mut lines = Vec::new();
    for i in 0..3u8 {
        for j in 0..3u8 {
            lines.push((i, j));
        }
    }
    BaseLocusDescription { vertices, lines }
}

/// Does the vertex lie on the line A_i^{(j)}?
pub fn vertex_on_line(v: &(HessePoint, ProjectivePoint), i: u8, j: u8) -> bool {
    let (m, b) = v;
    let [mu0, mu1] = &m.mu;
    let zj = Scalar::zeta_pow(2 * j as i64);
    let i = i as usize;
    let e1 = &b.coords[(i + 1) % 3] - &(&zj * &b.coords[(i + 2) % 3]);
    let e2 = &(&b.coords[(i + 2) % 3] * mu1) - &(&(&b.coords[i] * &zj) * mu0);
    e1.is_zero() && e2.is_zero()
}

/// Incidence table: for each line A_i^{(j)}, the labels (a, i) of the
/// vertices on it; and for each vertex, the incident lines.
pub struct IncidenceTable {
    pub line_to_vertices: Vec<((u8, u8), Vec<(Scalar, u8)>)>,
    pub vertex_to_lines: Vec<((Scalar, u8), Vec<(u8, u8)>)>,
}

pub fn incidence_table() -> IncidenceTable {
    let desc = base_loci();
    let mut line_to_vertices = Vec::new();
    for &(i, j) in &desc.lines {
        let mut vs = Vec::new();
        for (label, v) in &desc.vertices {
            if vertex_on_line(v, i, j) {
                vs.push(label.clone());
            }
        }
        line_to_vertices.push(((i, j), vs));
    }
    let mut vertex_to_lines = Vec::new();
    for (label, v) in &desc.vertices {
        let mut ls = Vec::new();
        for &(i, j) in &desc.lines {
            if vertex_on_line(v, i, j) {
                ls.push((i, j));
            }
        }
        vertex_to_lines.push((label.clone(), ls));
    }
    IncidenceTable {
        line_to_vertices,
        vertex_to_lines,
    }
}

/// A sample point on the line A_i^{(j)} over the pencil point m (where
/// defined); used to probe the 3-tangent locus.
pub fn a_line_point(i: u8, j: u8, m: &HessePoint) -> Option<(HessePoint, ProjectivePoint)> {
    let [mu0, mu1] = &m.mu;
    if mu0.is_zero() {
        return None;
    }
    let zj = Scalar::zeta_pow(2 * j as i64);
    // b_{[i+2]} = t, b_{[i+1]} = ζ^{2j} t, b_i = t μ1/(ζ^{2j} μ0).
    let t = Scalar::one();
    let mut b = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
    let i = i as usize;
    b[(i + 2) % 3] = t.clone();
    b[(i + 1) % 3] = &zj * &t;
    b[i] = &(&t * mu1) / &(&zj * mu0);
    Some((m.clone(), ProjectivePoint::new(b)))
}

/// j-invariant value: a scalar or the distinguished infinite value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JValue {
    Finite(Scalar),
    Infinity,
}

/// j(μ) = μ³(μ³+8)³/(μ³−1)³ with μ = μ1/μ0 the pencil coefficient of the
/// member x0³+x1³+x2³ − 3μ·x0x1x2; infinite exactly on the four triangles.
pub fn j_invariant(m: &HessePoint) -> JValue {
    if m.is_singular_member() {
        return JValue::Infinity;
    }
    let [mu0, mu1] = &m.mu;
    let m0c = mu0.pow(3);
    let m1c = mu1.pow(3);
    let eight = Scalar::from_int(8);
    let num = &m1c * &(&m1c + &(&eight * &m0c)).pow(3);
    let den = &m0c * &(&m1c - &m0c).pow(3);
    JValue::Finite(&num / &den)
}

/// Triangle members and their vertices (the singular points of the pencil).
pub fn singular_member_vertices(a: &Scalar) -> Vec<ProjectivePoint> {
    if a.is_zero() {
        return (0..3)
            .map(|i| {
                let mut c = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
                c[i] = Scalar::one();
                ProjectivePoint::new(c)
            })
            .collect();
    }
    // (1 : 1 : a), (1 : ζ3 : aζ3²), (1 : ζ3² : aζ3)
    (0..3)
        .map(|k| {
            ProjectivePoint::new([
                Scalar::one(),
                Scalar::zeta_pow(k),
                a * &Scalar::zeta_pow(2 * k),
            ])
        })
        .collect()
}

/// Classify a pencil member through the geometry module (cross-check).
pub fn member_class(m: &HessePoint) -> Result<CurveClass, Error> {
    classify_cubic(&hesse_cubic(m))
}

/// Build the pair (hesse_cubic(m), line b).
pub fn pencil_pair(m: &HessePoint, b: &ProjectivePoint) -> CubicLinePair {
    CubicLinePair::new(
        hesse_cubic(m),
        TernaryForm::line(b.coords[0].clone(), b.coords[1].clone(), b.coords[2].clone()),
    )
    .expect("pencil member and line are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::MultiplicityPattern;

    #[test]
    fn group_order_216() {
        assert_eq!(g216().len(), 216);
    }

    #[test]
    fn sigma3_relations() {
        let s1 = generator_matrix(Gen::Sigma1);
        let s2 = generator_matrix(Gen::Sigma2);
        assert_eq!(s1.mul(&s1).canonical(), sigma3().canonical());
        assert_eq!(s2.mul(&s2).mul(&s2).canonical(), sigma3().canonical());
    }

    #[test]
    fn stabilizer_order_18() {
        assert_eq!(generic_stabilizer().len(), 18);
    }

    #[test]
    fn generic_orbit_size_12() {
        let m = HessePoint::from_ints(1, 5);
        let (orbit, stab) = orbit_and_stabilizer(&m);
        assert_eq!(orbit.len(), 12);
        assert_eq!(stab, 18);
        assert_eq!(orbit.len() * stab, 216);
        // The orbit matches the listed formulas.
        assert_eq!(orbit_formula_points(&m), orbit);
    }

    #[test]
    fn triangle_orbit_size_4() {
        let m = HessePoint::from_ints(0, 1);
        let (orbit, _) = orbit_and_stabilizer(&m);
        assert_eq!(orbit.len(), 4);
        for p in [
            HessePoint::from_ints(0, 1),
            HessePoint::from_ints(1, 1),
            HessePoint::new(Scalar::one(), Scalar::zeta()),
            HessePoint::new(Scalar::one(), Scalar::zeta_sq()),
        ] {
            assert!(orbit.contains(&p));
        }
    }

    #[test]
    fn sq13_action_examples() {
        let m = HessePoint::from_ints(1, 1);
        assert_eq!(sq13_action(Gen::Sigma1, &m), HessePoint::from_ints(0, 1));
        assert_eq!(sq13_action(Gen::Sigma, &m), m);
        assert_eq!(
            sq13_action(Gen::Sigma2, &m),
            HessePoint::new(Scalar::one(), Scalar::zeta_sq())
        );
    }

    #[test]
    fn hesse_members_classify() {
        // (0:1): triangle x0 x1 x2.
        let t = member_class(&HessePoint::from_ints(0, 1)).unwrap();
        assert!(matches!(t, CurveClass::Triangle { .. }));
        // (1:1): triangle with the listed vertices.
        let t = member_class(&HessePoint::from_ints(1, 1)).unwrap();
        assert!(matches!(t, CurveClass::Triangle { .. }));
        // (1:0): Fermat, smooth.
        let t = member_class(&HessePoint::from_ints(1, 0)).unwrap();
        assert_eq!(t, CurveClass::Smooth);
    }

    #[test]
    fn singular_member_vertices_match() {
        use crate::geometry::{singular_points, SingularLocus};
        let f = hesse_cubic(&HessePoint::from_ints(1, 1));
        let SingularLocus::Points(pts) = singular_points(&f).unwrap() else {
            panic!("triangle has points");
        };
        let expected = singular_member_vertices(&Scalar::one());
        assert_eq!(pts.len(), 3);
        for p in expected {
            assert!(pts.iter().any(|sp| sp.point == p));
        }
    }

    #[test]
    fn j_examples() {
        // μ = 0 at (1:0): j = 0.
        assert_eq!(
            j_invariant(&HessePoint::from_ints(1, 0)),
            JValue::Finite(Scalar::zero())
        );
        // μ = 2 at (1:2): j = 32768/343.
        assert_eq!(
            j_invariant(&HessePoint::from_ints(1, 2)),
            JValue::Finite(Scalar::from_ratio(32768, 343))
        );
        // Triangles: infinity.
        assert_eq!(j_invariant(&HessePoint::from_ints(1, 1)), JValue::Infinity);
        assert_eq!(j_invariant(&HessePoint::from_ints(0, 1)), JValue::Infinity);
    }

    #[test]
    fn j_constant_on_orbit() {
        let m = HessePoint::from_ints(1, 7);
        let (orbit, _) = orbit_and_stabilizer(&m);
        let j = j_invariant(&m);
        for p in orbit {
            assert_eq!(j_invariant(&p), j);
        }
    }

    #[test]
    fn fiber_generic_216() {
        let m = HessePoint::from_ints(2, 5);
        let b = ProjectivePoint::from_ints(3, 1, 7);
        let fib = fiber(&m, &b).unwrap();
        assert_eq!(fib.len(), 216);
        // Each point maps back to the original pair via its witness.
        let z = pencil_pair(&m, &b);
        for fp in fib.iter().take(5) {
            let moved = crate::stability::act_pair(&fp.witness, &z);
            let expect = pencil_pair(&fp.mu, &fp.b);
            assert!(moved.proportional(&expect));
        }
    }

    #[test]
    fn fiber_degenerate_rejected() {
        // Line through a vertex of the (0:1) triangle.
        let m = HessePoint::from_ints(0, 1);
        let b = ProjectivePoint::from_ints(0, 1, 1); // b_0 = 0
        assert!(matches!(fiber(&m, &b), Err(Error::DegenerateFiber)));
    }

    #[test]
    fn incidence_counts() {
        let table = incidence_table();
        for (_, vs) in &table.line_to_vertices {
            assert_eq!(vs.len(), 4);
        }
        for (_, ls) in &table.vertex_to_lines {
            assert_eq!(ls.len(), 3);
        }
        // The stated index formulas: A_i^{(j)} passes through O^(0,i) and
        // O^(ζ3^k, [2j + (2-i)k]).
        for (label, vs) in &table.line_to_vertices {
            let (i, j) = *label;
            assert!(vs.contains(&(Scalar::zero(), i)));
            for k in 0..3i64 {
                let a = Scalar::zeta_pow(k);
                let idx = ((2 * j as i64 + (2 - i as i64) * k) % 3 + 3) % 3;
                assert!(vs.contains(&(a, idx as u8)), "line {label:?} k={k}");
            }
        }
    }

    #[test]
    fn a_lines_are_three_tangent() {
        let m = HessePoint::from_ints(1, 4);
        let (_, b) = a_line_point(0, 0, &m).unwrap();
        let f = hesse_cubic(&m);
        let l = TernaryForm::line(b.coords[0].clone(), b.coords[1].clone(), b.coords[2].clone());
        let r = crate::forms::restrict_to_line(&f, &l);
        assert!(matches!(
            crate::forms::multiplicity_pattern(&r),
            MultiplicityPattern::Triple { .. }
        ));
        // An off-line point is not 3-tangent.
        let b2 = ProjectivePoint::from_ints(2, 3, 5);
        assert!(!on_three_tangent_locus(&m, &b2));
        let l2 = TernaryForm::line(
            b2.coords[0].clone(),
            b2.coords[1].clone(),
            b2.coords[2].clone(),
        );
        let r2 = crate::forms::restrict_to_line(&f, &l2);
        assert!(!matches!(
            crate::forms::multiplicity_pattern(&r2),
            MultiplicityPattern::Triple { .. }
        ));
    }
}
