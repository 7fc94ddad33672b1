//! End-to-end acceptance checks. Run with
//! `cargo test --test acceptance -- --nocapture` to see the report.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use affine_coxeter::affine::{
    classify_length, coxeter_corner_root, distinguished_series, extend, family, fib_step, length_multipliers,
    root_geometry, solve_constraint, symmetrize, Direction, ExtensionSpec, Family, Quadruplet, DEFAULT_BOUND,
};
use affine_coxeter::coxeter::{cartan_matrix, check_km_rules, generate_group, gram_matrix, root_system, GroupId};
use affine_coxeter::geometry::{
    affine_reflection, h2_embed, h2_plane, h3_constants, reflection, twist_family, AffineOperator, TwistKind,
};
use affine_coxeter::pointarray::{generate_array, seed, ArrayAxis, SeedName};
use affine_coxeter::{GMatrix, Golden, GoldenRational as G, Rational};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn g(a: i64, b: i64) -> G {
    G::int(a, b)
}

fn mat(rows: Vec<Vec<G>>) -> GMatrix {
    GMatrix::from_rows(rows).unwrap()
}

fn cartan_fidelity() -> Outcome {
    let start = Instant::now();
    let h2 = cartan_matrix(GroupId::H2).entries;
    let h3 = cartan_matrix(GroupId::H3).entries;
    let d2 = h2.det().unwrap();
    let d3 = h3.det().unwrap();
    let elapsed = start.elapsed();
    let t = G::tau();
    let z = G::zero;
    ensure(h2 == mat(vec![vec![g(2, 0), -&t], vec![-&t, g(2, 0)]]), "H2 entries")?;
    ensure(
        h3 == mat(vec![
            vec![g(2, 0), g(-1, 0), z()],
            vec![g(-1, 0), g(2, 0), -&t],
            vec![z(), -&t, g(2, 0)],
        ]),
        "H3 entries",
    )?;
    let h4 = cartan_matrix(GroupId::H4).entries;
    ensure(
        h4 == mat(vec![
            vec![g(2, 0), g(-1, 0), z(), z()],
            vec![g(-1, 0), g(2, 0), g(-1, 0), z()],
            vec![z(), g(-1, 0), g(2, 0), -&t],
            vec![z(), z(), -&t, g(2, 0)],
        ]),
        "H4 entries",
    )?;
    ensure(d2 == g(3, -1), format!("det H2 = {d2}"))?;
    ensure(d3 == g(4, -2), format!("det H3 = {d3}"))?;
    // cofactor oracle along the first row
    let cof2 = &(&h2[(0, 0)] * &h2[(1, 1)]) - &(&h2[(0, 1)] * &h2[(1, 0)]);
    ensure(cof2 == d2, "H2 cofactor")?;
    let minor = |i: usize, j: usize| h3.minor_matrix(i, j).det().unwrap();
    let cof3 = &(&(&h3[(0, 0)] * &minor(0, 0)) - &(&h3[(0, 1)] * &minor(0, 1))) + &(&h3[(0, 2)] * &minor(0, 2));
    ensure(cof3 == d3, "H3 cofactor")?;
    ensure(elapsed < Duration::from_millis(1), format!("took {elapsed:?}"))?;
    Ok(format!("det H2 = {d2}, det H3 = {d3} in {elapsed:?}"))
}

fn symmetric_extensions() -> Outcome {
    for fam in [Family::H2Highest, Family::H3TwoFold, Family::H4A1] {
        let ext = extend(&ExtensionSpec::new(fam, G::sigma(), G::sigma())).map_err(|e| e.to_string())?;
        ensure(ext.entries.is_symmetric(), format!("{fam} not symmetric"))?;
        let report = check_km_rules(&ext.entries).map_err(|e| e.to_string())?;
        ensure(report.all_pass(), format!("{fam} fails a rule: {report:?}"))?;
        ensure(ext.det().is_zero(), format!("{fam} det = {}", ext.det()))?;
    }
    Ok("H2, H3, H4 with x = y = σ: rules 1-4 hold, det = 0".into())
}

fn bases(orbits: &[affine_coxeter::affine::SolutionOrbit]) -> BTreeSet<(i64, i64, i64, i64)> {
    orbits.iter().map(|o| o.base.coeffs()).collect()
}

fn unit_bases(orbits: &[affine_coxeter::affine::SolutionOrbit]) -> BTreeSet<(i64, i64, i64, i64)> {
    orbits
        .iter()
        .filter_map(|o| o.unit_base.as_ref().map(Quadruplet::coeffs))
        .collect()
}

fn solver_ground_truth() -> Outcome {
    let one = Rational::one();
    let start = Instant::now();
    let solve = |c: G| solve_constraint(&c, &one, &one, DEFAULT_BOUND).map_err(|e| e.to_string());
    let o1 = solve(g(2, -1))?;
    let o2 = solve(g(3, -1))?;
    let o3 = solve(g(5, -3))?;
    let o4 = solve(g(7, -4))?;
    let elapsed = start.elapsed();

    ensure(o1.len() == 1, format!("2−τ: {} orbits", o1.len()))?;
    ensure(
        o1[0].base.coeffs() == (-2, 1, -1, 0),
        format!("2−τ base {}", o1[0].base),
    )?;
    ensure(
        o1[0].contains(&Quadruplet::new(1, -1, 1, -1)),
        "2−τ orbit misses (1,−1;1,−1)",
    )?;

    ensure(o2.len() == 2, format!("3−τ: {} orbits", o2.len()))?;
    ensure(
        bases(&o2) == BTreeSet::from([(-3, 1, -1, 0), (-1, 0, -3, 1)]),
        format!("3−τ bases {:?}", bases(&o2)),
    )?;

    ensure(
        o3.iter().any(|o| o.contains(&Quadruplet::new(-2, 1, -2, 1))),
        "5−3τ misses (−2,1;−2,1)",
    )?;

    let ub = unit_bases(&o4);
    ensure(
        ub == BTreeSet::from([(-1, 0, -7, 4), (-7, 4, -1, 0)]),
        format!("7−4τ bases {ub:?}"),
    )?;
    for o in &o4 {
        ensure(
            o.unit_base.as_ref().is_some_and(|u| o.contains(u)),
            "unit base outside its orbit",
        )?;
    }
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("all four targets match in {elapsed:?}"))
}

fn brute(target: &Golden<i64>, bound: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            let x = Golden::<i64>::int(a, b);
            if !x.is_negative() {
                continue;
            }
            let Ok(y) = target.checked_div(&x) else { continue };
            if !y.is_zt_integer() || !y.is_negative() {
                continue;
            }
            let c = y.a().to_integer();
            let d = y.b().to_integer();
            if c.abs() <= bound && d.abs() <= bound {
                out.push((a, b, c, d));
            }
        }
    }
    out
}

fn fibonacci_closure() -> Outcome {
    let step = fib_step(&Quadruplet::new(-2, 1, -1, 0), Direction::Forward);
    ensure(step.coeffs() == (1, -1, 1, -1), format!("fib_step gives {step}"))?;
    let back = fib_step(&step, Direction::Backward);
    ensure(back.coeffs() == (-2, 1, -1, 0), "backward step is not the inverse")?;
    let one = Rational::one();
    let mut total = 0;
    for (p, q) in [(2, -1), (3, -1), (5, -3), (7, -4)] {
        let orbits = solve_constraint(&g(p, q), &one, &one, DEFAULT_BOUND).map_err(|e| e.to_string())?;
        for sol in brute(&Golden::<i64>::int(p, q), DEFAULT_BOUND) {
            let qd = Quadruplet::new(sol.0, sol.1, sol.2, sol.3);
            ensure(
                orbits.iter().any(|o| o.contains(&qd)),
                format!("{qd} not in any orbit of {p}+{q}τ"),
            )?;
            total += 1;
        }
    }
    Ok(format!("{total} brute-force solutions all lie in reported orbits"))
}

fn multipliers(fam: Family, label: &str) -> Result<Vec<G>, String> {
    let s = distinguished_series()
        .into_iter()
        .find(|s| s.family == fam && s.label == label)
        .ok_or(format!("no series {label}"))?;
    let f = family(&s.base, s.k_range.0..=s.k_range.1);
    length_multipliers(&f, fam).map_err(|e| e.to_string())
}

fn scaled_powers(r: Rational, ks: std::ops::RangeInclusive<i64>) -> Vec<G> {
    ks.map(|k| G::tau_pow(k).scale(&r)).collect()
}

fn length_lists() -> Outcome {
    let cases = [
        (Family::H3TwoFold, "gamma=1", scaled_powers(rat(1, 1), -2..=2)),
        (Family::H3TwoFold, "gamma=1/2", scaled_powers(rat(1, 2), -3..=3)),
        (Family::H3TwoFold, "gamma=3/2", scaled_powers(rat(3, 2), -1..=1)),
        (
            Family::H3FiveFold,
            "second series gamma=1",
            scaled_powers(rat(1, 2), -1..=2),
        ),
    ];
    for (fam, label, want) in cases {
        let got = multipliers(fam, label)?;
        ensure(got == want, format!("{fam} {label}: {got:?}"))?;
    }
    let x = G::sigma().scale(&rat(3, 4));
    let y = G::sigma();
    let geo = root_geometry(&x, &y).map_err(|e| e.to_string())?;
    ensure(
        geo.length_sq == G::from_rational(rat(3, 4)),
        format!("3-fold example length² {}", geo.length_sq),
    )?;
    let q = Quadruplet::new(1, -1, 1, -1).with_multipliers(rat(3, 4), rat(1, 1));
    let class = classify_length(&q, Family::H3ThreeFold).map_err(|e| e.to_string())?;
    ensure(
        class.length_sq == G::from_rational(rat(3, 4)),
        "classify_length disagrees",
    )?;
    Ok(format!(
        "four lists exact; 3-fold example length² = 3/4 (on the constraint: {})",
        class.satisfies_constraint
    ))
}

/// The displayed matrix: H3 block, `x` paired with `slot`, corner `2·d0`.
fn displayed(slot: usize, x: &G, d0: &G) -> GMatrix {
    let t = G::tau();
    let mut m = GMatrix::zeros(4, 4);
    let block = [
        [g(2, 0), g(-1, 0), G::zero()],
        [g(-1, 0), g(2, 0), -&t],
        [G::zero(), -&t, g(2, 0)],
    ];
    for i in 0..3 {
        for j in 0..3 {
            m[(i + 1, j + 1)] = block[i][j].clone();
        }
    }
    m[(0, 0)] = d0 * &g(2, 0);
    m[(0, slot)] = x.clone();
    m[(slot, 0)] = x.clone();
    m
}

fn symmetrisation() -> Outcome {
    let t2 = G::tau_pow(2);
    let cases = [
        (Family::H3TwoFold, 2, t2.clone()),
        (Family::H3ThreeFold, 3, t2.scale(&rat(3, 4))),
        (Family::H3FiveFold, 1, (&G::tau() + &g(2, 0)).scale(&rat(1, 4))),
    ];
    let xs = [G::sigma(), g(-1, 0), -G::tau(), G::frac(-1, 2, 0, 1), g(-3, 1)];
    for (fam, slot, coeff) in cases {
        let c = affine_coxeter::affine::constraint_constant(fam);
        for x in &xs {
            let y = c.checked_div(x).unwrap();
            let a = extend(&ExtensionSpec::new(fam, x.clone(), y)).map_err(|e| e.to_string())?;
            let sym = symmetrize(&a.entries).map_err(|e| e.to_string())?;
            let d0 = &coeff * &(x * x);
            let want_d = vec![d0.clone(), G::one(), G::one(), G::one()];
            ensure(sym.d == want_d, format!("{fam} x={x}: D = {:?}", sym.d))?;
            ensure(sym.s == displayed(slot, x, &d0), format!("{fam} x={x}: S = {}", sym.s))?;
            ensure(
                sym.s.is_symmetric() && sym.positive_semidefinite,
                format!("{fam} x={x}: not PSD"),
            )?;
            ensure(sym.det.is_zero(), format!("{fam} x={x}: det S = {}", sym.det))?;
        }
    }
    let corner = coxeter_corner_root(Family::H3TwoFold);
    ensure(corner.x == Some(G::sigma()), format!("corner root {:?}", corner.x))?;
    Ok("three diagonals entry-exact for 5 values of x; corner root σ".into())
}

fn group_engine() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (grp, order, roots) in [(GroupId::H2, 10, 10), (GroupId::H3, 120, 30), (GroupId::H4, 14400, 120)] {
        let gram = gram_matrix(&cartan_matrix(grp));
        let els = generate_group(grp);
        let ok = els.iter().all(|e| e.preserves_form(&gram));
        let (n, r) = (els.len(), root_system(grp).len());
        ensure(n == order, format!("|{grp}| = {n}"))?;
        ensure(r == roots, format!("{grp} has {r} roots"))?;
        ensure(ok, format!("{grp} element breaks the form"))?;
        lines.push(format!("|{grp}|={n}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{} in {elapsed:?}", lines.join(" ")))
}

fn affine_operators() -> Outcome {
    let c = h3_constants();
    for a in c.simple_roots.iter().chain([&c.t2, &c.t3, &c.t5]) {
        let t = affine_reflection(a).unwrap().compose(&reflection(a).unwrap());
        ensure(
            t == AffineOperator::translation(a),
            format!("r_aff∘r is not translation by {a}"),
        )?;
    }
    let mut found = 0;
    for gamma in [rat(1, 3), rat(1, 1), rat(4, 3)] {
        let alpha0 = c.t3.scale(&G::from_rational(gamma / rat(2, 1)));
        let fam = twist_family(&alpha0, 3).map_err(|e| e.to_string())?;
        let pure: Vec<_> = fam.pure_translations().collect();
        ensure(pure.len() == 1, format!("{} pure translations", pure.len()))?;
        ensure(
            pure[0].operator == AffineOperator::translation(&-&alpha0),
            "pure choice shift is not −α0",
        )?;
        let screws = fam
            .choices
            .iter()
            .filter(|ch| matches!(ch.kind, TwistKind::Screw { .. }))
            .count();
        ensure(screws == fam.choices.len() - 1, "non-screw twist in the family")?;
        found += 1;
    }
    for (n, axis, slot, want) in [
        (2u32, &c.t2, 1usize, G::frac(1, 2, -1, 4)),
        (3, &c.t3, 2, G::frac(2, 3, -1, 3)),
        (5, &c.t5, 0, G::frac(3, 5, -1, 5)),
    ] {
        let r = &c.simple_roots[slot];
        let d = axis.dot(r);
        let cos2 = (&d * &d).checked_div(&(&axis.norm_sq() * &r.norm_sq())).unwrap();
        ensure(cos2 == want, format!("{n}-fold cos² = {cos2}"))?;
        let fam = affine_coxeter::affine::family_for_axis(GroupId::H3, &format!("{n}fold")).unwrap();
        let xy4 = affine_coxeter::affine::constraint_constant(fam).scale(&rat(1, 4));
        ensure(cos2 == xy4, format!("{n}-fold cos² ≠ xy/4"))?;
    }
    Ok(format!(
        "translations exact; {found} 3-fold stabilizers with one pure choice; cos² = xy/4 on all axes"
    ))
}

fn point_arrays() -> Outcome {
    let p = seed(SeedName::Pentagon);
    let cases = [
        (ArrayAxis::Highest, G::frac(3, 7, 0, 1), 30, "generic"),
        (ArrayAxis::Bisector, G::tau(), 25, "√(2+τ)"),
        (ArrayAxis::Bisector, G::one(), 25, "√(3−τ)"),
        (ArrayAxis::Highest, -G::sigma(), 25, "−σ"),
        (ArrayAxis::Highest, G::tau(), 25, "τ"),
        (ArrayAxis::Highest, G::one(), 20, "1"),
    ];
    let plane = h2_plane();
    let mut slowest = Duration::ZERO;
    for (axis, l, want, name) in cases {
        let t = axis.vector(&l).unwrap();
        let start = Instant::now();
        let n = generate_array(&p, &t).map_err(|e| e.to_string())?.len();
        slowest = slowest.max(start.elapsed());
        ensure(n == want, format!("length {name}: {n} points, want {want}"))?;
        if name.starts_with('√') {
            let target = if name == "√(2+τ)" { g(2, 1) } else { g(3, -1) };
            ensure(plane.inner(&t, &t) == target, format!("|t|² for {name}"))?;
        }
    }
    ensure(slowest < Duration::from_secs(1), format!("slowest array {slowest:?}"))?;
    Ok(format!("30/25/25/25/25/20 reproduced, slowest {slowest:?}"))
}

fn angle(u: [f64; 2], v: [f64; 2]) -> f64 {
    let d = u[0] * v[0] + u[1] * v[1];
    d * d / ((u[0] * u[0] + u[1] * u[1]) * (v[0] * v[0] + v[1] * v[1]))
}

fn angle_identities() -> Outcome {
    use std::f64::consts::PI;
    let want_a = (2.0 * PI / 5.0).cos().powi(2);
    let want_b = (3.0 * PI / 10.0).cos().powi(2);
    let a = g(2, -1).scale(&rat(1, 4)).to_f64();
    let b = g(3, -1).scale(&rat(1, 4)).to_f64();
    ensure((a - want_a).abs() < 1e-12, format!("2−τ: {a} vs {want_a}"))?;
    ensure((b - want_b).abs() < 1e-12, format!("3−τ: {b} vs {want_b}"))?;
    // the same angles between the embedded vectors
    let plane = h2_plane();
    let a1 = h2_embed(&[G::one(), G::zero()]);
    let hr = h2_embed(&plane.highest_root);
    let w = h2_embed(&plane.bisector);
    let ea = angle(hr, a1);
    let eb = angle(w, a1);
    ensure((ea - want_a).abs() < 1e-12, format!("embedded highest root: {ea}"))?;
    ensure((eb - want_b).abs() < 1e-12, format!("embedded bisector: {eb}"))?;
    Ok(format!("cos² = {a:.15} and {b:.15}"))
}

fn ring_identities() -> Outcome {
    let t = G::tau();
    ensure(&t * &G::sigma() == g(-1, 0), "τσ")?;
    ensure(&g(3, -1) * &g(2, 1) == g(5, 0), "(3−τ)(2+τ)")?;
    ensure(&g(3, -1) * &G::tau_pow(2) == g(2, 1), "(3−τ)τ²")?;
    ensure(&g(2, -1) * &g(2, -1) == g(5, -3), "(2−τ)²")?;
    ensure(&g(2, -1) * &g(3, -1) == g(7, -4), "(2−τ)(3−τ)")?;
    Ok("five identities exact".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("cartan fidelity", cartan_fidelity),
        ("symmetric extensions", symmetric_extensions),
        ("solver ground truth", solver_ground_truth),
        ("fibonacci closure", fibonacci_closure),
        ("length lists", length_lists),
        ("symmetrisation", symmetrisation),
        ("group engine", group_engine),
        ("affine operators", affine_operators),
        ("point arrays", point_arrays),
        ("angle identities", angle_identities),
        ("ring identities", ring_identities),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
