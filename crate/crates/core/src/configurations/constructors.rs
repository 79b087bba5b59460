use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficients::{primitive_root_of_unity, Field, Scalar};
use crate::linalg;
use crate::polynomials::{Monomial, Polynomial, PolynomialRing};

use super::arrangement::line_from;
use super::{normalize_point, ConfigError, FatPoint, FatPointConfiguration, LineArrangement};

fn plane(field: Field) -> PolynomialRing {
    PolynomialRing::projective(field, 2).expect("P^2 ring")
}

fn inconsistent(msg: impl Into<String>) -> ConfigError {
    ConfigError::Inconsistent(msg.into())
}

/// Twelve points over ℚ(ζ₃) and the nine lines `x−εᵏy, y−εᵏz, z−εᵏx`.
pub fn dual_hesse() -> (FatPointConfiguration, LineArrangement) {
    let field = Field::cyclotomic(3).expect("QQ(zeta3)");
    let ring = plane(field.clone());
    let (o, z) = (field.one(), field.zero());
    let e = field.generator().unwrap();
    let e2 = field.mul(&e, &e);
    let points = vec![
        vec![o.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone()],
        vec![o.clone(), o.clone(), o.clone()],
        vec![o.clone(), e.clone(), e2.clone()],
        vec![o.clone(), e2.clone(), e.clone()],
        vec![e.clone(), o.clone(), o.clone()],
        vec![o.clone(), e.clone(), o.clone()],
        vec![o.clone(), o.clone(), e.clone()],
        vec![e2.clone(), o.clone(), o.clone()],
        vec![o.clone(), e2.clone(), o.clone()],
        vec![o.clone(), o.clone(), e2.clone()],
    ];
    let mut lines = Vec::new();
    for k in 0..3 {
        let c = field.neg(&field.pow(&e, k));
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            let mut coeffs = vec![z.clone(); 3];
            coeffs[a] = o.clone();
            coeffs[b] = c.clone();
            lines.push(line_from(&ring, &coeffs));
        }
    }
    let config = FatPointConfiguration::reduced("dual-hesse", &ring, points).expect("distinct points");
    let arrangement = LineArrangement::new(&ring, lines).expect("distinct lines");
    debug_assert!(config.points().iter().all(|p| arrangement.lines_through(p.coordinates()).len() == 3));
    (config, arrangement)
}

/// `(xⁿ−yⁿ)(yⁿ−zⁿ)(zⁿ−xⁿ)`.
pub fn fermat_polynomial(ring: &PolynomialRing, n: u32) -> Polynomial {
    let p: Vec<Polynomial> = (0..3).map(|i| ring.var(i).pow(n)).collect();
    let factors = [&p[0] - &p[1], &p[1] - &p[2], &p[2] - &p[0]];
    crate::polynomials::product(ring, &factors)
}

/// The 3n lines splitting the Fermat form and their n² + 3 intersection points.
pub fn fermat(n: u32, field: &Field) -> Result<(FatPointConfiguration, LineArrangement), ConfigError> {
    if n < 3 {
        return Err(ConfigError::Degenerate(format!("Fermat configurations need n >= 3, got {n}")));
    }
    if field.is_characteristic_two() {
        return Err(ConfigError::Degenerate("characteristic 2 is excluded".into()));
    }
    let eta = primitive_root_of_unity(field, n)?.into_value();
    let ring = plane(field.clone());
    let mut lines = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        for k in 0..n {
            let mut coeffs = vec![field.zero(); 3];
            coeffs[a] = field.one();
            coeffs[b] = field.neg(&field.pow(&eta, k as u64));
            lines.push(line_from(&ring, &coeffs));
        }
    }
    let arrangement = LineArrangement::new(&ring, lines)?;
    let counts = arrangement.multiplicity_counts();
    let total: usize = counts.values().sum();
    let expected_total = (n * n + 3) as usize;
    let ok = if n == 3 {
        counts.get(&3) == Some(&12) && total == 12
    } else {
        counts.get(&3) == Some(&((n * n) as usize)) && counts.get(&(n as usize)) == Some(&3) && total == expected_total
    };
    if !ok {
        return Err(inconsistent(format!("Fermat n={n}: unexpected incidence counts {counts:?}")));
    }
    let config = arrangement.configuration(&format!("fermat:{n}:{}", field.descriptor()), 2)?;
    Ok((config, arrangement))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All C(d, N) points where N of the hyperplanes `Σ_j t_iʲ x_j = 0` meet, over ℚ.
/// `params` defaults to `t_i = i` for `i = 1..=d`.
pub fn star(d: usize, n: usize, params: Option<Vec<Scalar>>) -> Result<FatPointConfiguration, ConfigError> {
    if n < 2 || d < n {
        return Err(ConfigError::Degenerate(format!("star needs d >= N >= 2, got d={d}, N={n}")));
    }
    let field = Field::rationals();
    let ring = PolynomialRing::projective(field.clone(), n)?;
    let ts = params.unwrap_or_else(|| (1..=d as i64).map(|t| field.from_i64(t)).collect());
    if ts.len() != d {
        return Err(ConfigError::Degenerate(format!("expected {d} parameters, got {}", ts.len())));
    }
    for i in 0..d {
        if ts[..i].contains(&ts[i]) {
            return Err(ConfigError::Degenerate(format!("parameter t{} repeats an earlier one", i + 1)));
        }
    }
    let hyperplanes: Vec<Vec<Scalar>> = ts.iter().map(|t| (0..=n).map(|j| field.pow(t, j as u64)).collect()).collect();
    let mut points = Vec::new();
    for s in subsets(d, n) {
        let rows: Vec<Vec<Scalar>> = s.iter().map(|&i| hyperplanes[i].clone()).collect();
        let k = linalg::kernel(&field, rows, n + 1);
        if k.len() != 1 {
            return Err(ConfigError::Degenerate(format!("hyperplanes {s:?} do not meet in a single point")));
        }
        let p = &k[0];
        for (i, h) in hyperplanes.iter().enumerate() {
            if !s.contains(&i) && field.is_zero(&linalg::apply(&field, std::slice::from_ref(h), p)[0]) {
                return Err(ConfigError::Degenerate(format!("point of {s:?} also lies on hyperplane {i}")));
            }
        }
        points.push(p.clone());
    }
    let name = format!("star:{d}:{n}");
    FatPointConfiguration::reduced(&name, &ring, points)
}

/// The twelve lines `L_{i, 6−2i mod 12}` through vertices of the regular 12-gon, over
/// ℚ(ζ₁₂), and its 19 triple points.
pub fn boroczky12() -> (FatPointConfiguration, LineArrangement) {
    let field = Field::cyclotomic(12).expect("QQ(zeta12)");
    let ring = plane(field.clone());
    let xi = field.generator().unwrap();
    let two = field.from_i64(2);
    let i_unit = field.pow(&xi, 3);
    let vertex = |k: u64| -> Vec<Scalar> {
        let a = field.pow(&xi, k % 12);
        let b = field.pow(&xi, (12 - k % 12) % 12);
        let cos = field.div(&field.add(&a, &b), &two).unwrap();
        let sin = field.div(&field.sub(&a, &b), &field.mul(&two, &i_unit)).unwrap();
        vec![cos, sin, field.one()]
    };
    let mut lines = Vec::new();
    for i in 0..12u64 {
        let k = (6 + 24 - 2 * i) % 12;
        let p = vertex(i);
        let coeffs = if k == i {
            // tangent to x² + y² = z² at (c, s, 1)
            vec![p[0].clone(), p[1].clone(), field.neg(&field.one())]
        } else {
            let q = vertex(k);
            let f = &field;
            let det = |a: usize, b: usize| f.sub(&f.mul(&p[a], &q[b]), &f.mul(&p[b], &q[a]));
            vec![det(1, 2), det(2, 0), det(0, 1)]
        };
        lines.push(line_from(&ring, &coeffs));
    }
    let arrangement = LineArrangement::new(&ring, lines).expect("distinct lines");
    let config = FatPointConfiguration::reduced("boroczky12", &ring, arrangement.points_of_multiplicity(3))
        .expect("distinct points");
    (config, arrangement)
}

/// All p² + p + 1 points of P²(𝔽_p) with first nonzero coordinate 1, in the order
/// (1:a:b), (0:1:b), (0:0:1).
pub fn finite_plane_points(field: &Field) -> Vec<Vec<Scalar>> {
    let p = field.characteristic() as i64;
    assert!(p > 0, "finite plane needs a prime field");
    let s = |v: i64| field.from_i64(v);
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            out.push(vec![s(1), s(a), s(b)]);
        }
    }
    for b in 0..p {
        out.push(vec![s(0), s(1), s(b)]);
    }
    out.push(vec![s(0), s(0), s(1)]);
    out
}

/// All points of P²(𝔽_p) except (0:0:1).
pub fn punctured_plane(p: u32) -> Result<FatPointConfiguration, ConfigError> {
    if p == 2 {
        return Err(ConfigError::Degenerate("punctured plane needs an odd prime".into()));
    }
    let field = Field::prime(p)?;
    let ring = plane(field.clone());
    let mut pts = finite_plane_points(&field);
    pts.pop();
    FatPointConfiguration::reduced(&format!("punctured:{p}"), &ring, pts)
}

/// The points of P²(𝔽_p) with the given indices in [`finite_plane_points`] order.
pub fn plane_subset(p: u32, indices: &[usize]) -> Result<FatPointConfiguration, ConfigError> {
    let field = Field::prime(p)?;
    let ring = plane(field.clone());
    let all = finite_plane_points(&field);
    let mut pts = Vec::with_capacity(indices.len());
    for &i in indices {
        pts.push(all.get(i).cloned().ok_or_else(|| ConfigError::Degenerate(format!("no point with index {i}")))?);
    }
    let tag: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
    FatPointConfiguration::reduced(&format!("plane:{p}:{}", tag.join(",")), &ring, pts)
}

/// Reduction mod 7 of the symmetric model `x⁴+y⁴+z⁴ + 3α(x²y²+y²z²+z²x²)` of the Klein
/// quartic, `α = (−1+√−7)/2`. Since −7 ≡ 0, α ≡ −1/2.
pub fn klein_quartic_mod7(ring: &PolynomialRing) -> Polynomial {
    let field = ring.field();
    let alpha = field.div(&field.from_i64(-1), &field.from_i64(2)).expect("char 7");
    let c = field.mul(&field.from_i64(3), &alpha);
    let sq: Vec<Polynomial> = (0..3).map(|i| ring.var(i).pow(2)).collect();
    let quartics = &(&sq[0] * &sq[0]) + &(&(&sq[1] * &sq[1]) + &(&sq[2] * &sq[2]));
    let mixed = &(&sq[0] * &sq[1]) + &(&(&sq[1] * &sq[2]) + &(&sq[2] * &sq[0]));
    &quartics + &mixed.scale(&c)
}

fn sqrt_scalar(field: &Field, a: &Scalar) -> Option<Scalar> {
    let p = field.characteristic();
    if p == 0 {
        return None;
    }
    (0..p as i64).map(|v| field.from_i64(v)).find(|r| &field.mul(r, r) == a)
}

/// `q` with `q² = f`, by peeling leading terms; `None` if `f` is not a square.
fn sqrt_polynomial(f: &Polynomial) -> Option<Polynomial> {
    let ring = f.ring();
    let field = ring.field();
    let (lm, lc) = f.leading_term()?;
    if lm.exponents().iter().any(|e| e % 2 == 1) {
        return None;
    }
    let half: Vec<u32> = (0..ring.num_vars()).map(|i| lm.exponent(i) / 2).collect();
    let mut q = Polynomial::monomial(ring, Monomial::from_exponents(&half).ok()?, sqrt_scalar(field, lc)?);
    let two_lc = field.mul(&field.from_i64(2), q.leading_coefficient()?);
    let q_lm = *q.leading_monomial()?;
    for _ in 0..=f.len() {
        let r = f - &(&q * &q);
        let Some((rm, rc)) = r.leading_term() else {
            return Some(q);
        };
        let m = rm.div(&q_lm)?;
        let c = field.div(rc, &two_lc).ok()?;
        q = &q + &Polynomial::monomial(ring, m, c);
    }
    None
}

/// The 𝔽₇ configuration: a smooth conic, the lines of P²(𝔽₇) missing it, and their
/// intersection points.
#[derive(Debug, Clone)]
pub struct KleinF7 {
    pub quartic: Polynomial,
    pub conic: Polynomial,
    pub configuration: FatPointConfiguration,
    /// The lines disjoint from the conic.
    pub arrangement: LineArrangement,
    pub external_lines: usize,
    pub tangent_lines: usize,
    pub secant_lines: usize,
}

pub fn klein_f7() -> Result<KleinF7, ConfigError> {
    let field = Field::prime(7)?;
    let ring = plane(field.clone());
    let quartic = klein_quartic_mod7(&ring);
    let conic = sqrt_polynomial(&quartic).ok_or_else(|| inconsistent("quartic is not a double conic mod 7"))?;
    if &conic * &conic != quartic {
        return Err(inconsistent("conic square root check failed"));
    }
    let points = finite_plane_points(&field);
    let on_conic: Vec<&Vec<Scalar>> =
        points.iter().filter(|p| field.is_zero(&conic.evaluate_scalars(p).unwrap())).collect();
    // lines of P²(𝔽₇) are the points of the dual plane
    let (mut external, mut tangent, mut secant) = (Vec::new(), 0, 0);
    for coeffs in &points {
        let line = line_from(&ring, coeffs);
        match on_conic.iter().filter(|p| field.is_zero(&line.evaluate_scalars(p).unwrap())).count() {
            0 => external.push(line),
            1 => tangent += 1,
            2 => secant += 1,
            k => return Err(inconsistent(format!("a line meets the conic in {k} points"))),
        }
    }
    let arrangement = LineArrangement::new(&ring, external.clone())?;
    let counts = arrangement.multiplicity_counts();
    if external.len() != 21
        || tangent != 8
        || secant != 28
        || counts.get(&4) != Some(&21)
        || counts.get(&3) != Some(&28)
        || counts.values().sum::<usize>() != 49
    {
        return Err(inconsistent(format!(
            "expected 21/8/28 lines and 21 quadruple + 28 triple points, got {}/{tangent}/{secant} and {counts:?}",
            external.len()
        )));
    }
    let configuration = arrangement.configuration("klein-f7", 3)?;
    Ok(KleinF7 {
        quartic,
        conic,
        configuration,
        arrangement,
        external_lines: 21,
        tangent_lines: tangent,
        secant_lines: secant,
    })
}

/// `s` points of P^N over ℚ with small integer coordinates drawn from `seed`, such that
/// any N+1 of them (or all, if fewer) are linearly independent.
pub fn general_points(s: usize, n: usize, seed: u64) -> Result<FatPointConfiguration, ConfigError> {
    const MAX_DRAWS: usize = 10_000;
    if s == 0 {
        return Err(ConfigError::Empty);
    }
    let field = Field::rationals();
    let ring = PolynomialRing::projective(field.clone(), n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<Scalar>> = Vec::with_capacity(s);
    while points.len() < s {
        let mut accepted = false;
        for _ in 0..MAX_DRAWS {
            let cand: Vec<Scalar> = (0..=n).map(|_| field.from_i64(rng.gen_range(-9..=9))).collect();
            if linalg::is_zero_vector(&field, &cand) {
                continue;
            }
            let k = points.len().min(n);
            let general = subsets(points.len(), k).iter().all(|sub| {
                let mut rows: Vec<Vec<Scalar>> = sub.iter().map(|&i| points[i].clone()).collect();
                rows.push(cand.clone());
                linalg::rank(&field, rows, n + 1) == k + 1
            });
            if general {
                points.push(normalize_point(&field, &cand).unwrap());
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Err(ConfigError::Degenerate(format!("no general point found after {MAX_DRAWS} draws")));
        }
    }
    FatPointConfiguration::reduced(&format!("general:{s}:{n}:{seed}"), &ring, points)
}

/// Standard coordinate points `e_i` of P^N for `i` in `subset` (all when `None`), over ℚ.
pub fn coordinate_points(n: usize, subset: Option<&[usize]>) -> Result<FatPointConfiguration, ConfigError> {
    let field = Field::rationals();
    let ring = PolynomialRing::projective(field.clone(), n)?;
    let all: Vec<usize> = (0..=n).collect();
    let chosen = subset.unwrap_or(&all);
    if chosen.is_empty() {
        return Err(ConfigError::Empty);
    }
    let mut pts = Vec::new();
    for &i in chosen {
        if i > n {
            return Err(ConfigError::Degenerate(format!("coordinate index {i} exceeds N = {n}")));
        }
        let mut c = vec![field.zero(); n + 1];
        c[i] = field.one();
        pts.push(FatPoint::new(c, 1));
    }
    let name = match subset {
        None => format!("coordpts:{n}"),
        Some(s) => format!("coordpts:{n}:{}", s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")),
    };
    FatPointConfiguration::new(&name, &ring, pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det3(f: &Field, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Scalar {
        linalg::determinant(f, &[a.to_vec(), b.to_vec(), c.to_vec()])
    }

    #[test]
    fn dual_hesse_incidences() {
        let (z, a) = dual_hesse();
        assert_eq!(z.len(), 12);
        assert_eq!(a.lines().len(), 9);
        assert!(a.verify());
        assert_eq!(a.multiplicity_counts().into_iter().collect::<Vec<_>>(), vec![(3, 12)]);
        let p4 = &z.points()[3];
        assert_eq!(a.lines_through(p4.coordinates()).len(), 3);
        let prod = a.product();
        assert!(prod.is_homogeneous());
        assert_eq!(prod.total_degree(), Some(9));
    }

    #[test]
    fn fermat_counts() {
        let (z3, a3) = fermat(3, &Field::cyclotomic(3).unwrap()).unwrap();
        assert_eq!(z3.len(), 12);
        assert!(z3.same_points(&dual_hesse().0));
        assert_eq!(a3.lines().len(), 9);
        let (z4, a4) = fermat(4, &Field::cyclotomic(4).unwrap()).unwrap();
        assert_eq!((z4.len(), a4.lines().len()), (19, 12));
        assert_eq!(a4.multiplicity_counts().get(&4), Some(&3));
        let (z7, _) = fermat(3, &Field::prime(7).unwrap()).unwrap();
        assert_eq!(z7.len(), 12);
        assert!(fermat(3, &Field::rationals()).is_err());
        assert!(fermat(3, &Field::prime(5).unwrap()).is_err());
    }

    #[test]
    fn fermat_points_by_brute_force() {
        // every pairwise intersection of the 9 lines over 𝔽₇ is one of Q_{a,b} or a coordinate point
        let f = Field::prime(7).unwrap();
        let (z, a) = fermat(3, &f).unwrap();
        let roots: Vec<i64> = (1..7).filter(|v| (v * v * v) % 7 == 1).collect();
        assert_eq!(roots, vec![1, 2, 4]);
        let mut expected = vec![vec![f.one(), f.zero(), f.zero()], vec![f.zero(), f.one(), f.zero()], vec![f.zero(), f.zero(), f.one()]];
        for &x in &roots {
            for &y in &roots {
                expected.push(vec![f.one(), f.from_i64(x), f.from_i64(y)]);
            }
        }
        let want = FatPointConfiguration::reduced("q", z.ring(), expected).unwrap();
        assert!(z.same_points(&want));
        assert!(a.verify());
    }

    #[test]
    fn fermat_polynomial_vanishes_on_its_points() {
        let (z, a) = fermat(4, &Field::cyclotomic(4).unwrap()).unwrap();
        let f4 = fermat_polynomial(z.ring(), 4);
        assert_eq!(f4, a.product().make_monic().scale(f4.leading_coefficient().unwrap()));
        for p in z.points() {
            assert!(z.field().is_zero(&f4.evaluate_scalars(p.coordinates()).unwrap()));
        }
    }

    #[test]
    fn star_counts() {
        assert_eq!(star(3, 2, None).unwrap().len(), 3);
        assert_eq!(star(5, 2, None).unwrap().len(), 10);
        let s = star(4, 3, None).unwrap();
        assert_eq!((s.len(), s.dim()), (4, 3));
        let q = Field::rationals();
        assert!(star(3, 2, Some(vec![q.one(), q.one(), q.from_i64(2)])).is_err());
        assert!(star(1, 2, None).is_err());
    }

    #[test]
    fn boroczky_counts() {
        let (z, a) = boroczky12();
        assert_eq!(a.lines().len(), 12);
        assert_eq!(z.len(), 19);
        assert!(a.verify());
        assert!(z.points().iter().all(|p| a.lines_through(p.coordinates()).len() == 3));
        assert_eq!(a.multiplicity_counts().get(&4), None);
        // the lines are real: the tangents at ξ², ξ⁶, ξ¹⁰ plus nine secants
        assert_eq!(a.product().total_degree(), Some(12));
    }

    #[test]
    fn punctured_planes() {
        let z = punctured_plane(3).unwrap();
        assert_eq!(z.len(), 12);
        assert_eq!(punctured_plane(5).unwrap().len(), 30);
        assert!(punctured_plane(2).is_err());
        // the 9 lines of P²(𝔽₃) avoiding (0:0:1) meet by 3 in the 12 points
        let f = z.field().clone();
        let removed = vec![f.zero(), f.zero(), f.one()];
        let ring = z.ring().clone();
        let lines: Vec<Polynomial> = finite_plane_points(&f)
            .iter()
            .map(|c| line_from(&ring, c))
            .filter(|l| !f.is_zero(&l.evaluate_scalars(&removed).unwrap()))
            .collect();
        assert_eq!(lines.len(), 9);
        let a = LineArrangement::new(&ring, lines).unwrap();
        for p in z.points() {
            assert_eq!(a.lines_through(p.coordinates()).len(), 3);
        }
    }

    #[test]
    fn klein_configuration() {
        let k = klein_f7().unwrap();
        assert_eq!(k.configuration.len(), 49);
        assert_eq!((k.external_lines, k.tangent_lines, k.secant_lines), (21, 8, 28));
        assert_eq!(&k.conic * &k.conic, k.quartic);
        assert_eq!(k.conic.to_string(), "x0^2 + x1^2 + x2^2");
    }

    #[test]
    fn general_position() {
        let f = Field::rationals();
        let z = general_points(6, 2, 1).unwrap();
        assert_eq!(z.len(), 6);
        for s in subsets(6, 3) {
            let [a, b, c] = [s[0], s[1], s[2]].map(|i| z.points()[i].coordinates());
            assert!(!f.is_zero(&det3(&f, a, b, c)));
        }
        let t = general_points(3, 2, 9).unwrap();
        let p: Vec<&[Scalar]> = t.points().iter().map(|p| p.coordinates()).collect();
        assert!(!f.is_zero(&det3(&f, p[0], p[1], p[2])));
        assert_eq!(general_points(1, 2, 5).unwrap().len(), 1);
        assert_eq!(general_points(6, 2, 1).unwrap().export(), z.export());
    }

    #[test]
    fn coordinate_point_sets() {
        assert_eq!(coordinate_points(2, None).unwrap().len(), 3);
        assert_eq!(coordinate_points(3, None).unwrap().len(), 4);
        assert_eq!(coordinate_points(2, Some(&[0])).unwrap().len(), 1);
        assert!(coordinate_points(2, Some(&[])).is_err());
        assert!(coordinate_points(2, Some(&[3])).is_err());
    }
}
