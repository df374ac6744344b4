//! One check per acceptance criterion, shared by the acceptance harness and
//! the ordinary test targets. Each returns `Err(reason)` on the first failure.

use asreg::descriptor::AlgebraDescriptor;
use asreg::ec::{construct_ec, iso_ec, morita_ec, morita_orbit, iso_orbit, EcDescriptor};
use asreg::hesse::{f_set, j_invariant, lambda_1728, CurvePoint, HesseCurve};
use asreg::oracle::{g1_check, g2_relations, pair_for, pair_for_ec, Family, GeometricPair, Sigma, DEFAULT_SAMPLES};
use asreg::plinalg::Mat3;
use asreg::qalg::{apply_iso, point_scheme_det, relations_equal, twist, CubicForm, RelationSet};
use asreg::tables::{construct, iso_decide, morita_decide, AlgebraType, CoarseType, TypedAlgebra};
use asreg::{FieldElem, ProjPoint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::golden::{ROWS, SAMPLES};
use super::{cubic, fe, pt, rels};

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e:?}"))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(r: &mut ChaCha8Rng) -> FieldElem {
    let n: i64 = r.gen_range(-9..=9);
    let d: i64 = r.gen_range(1..=5);
    FieldElem::frac(n, d)
}

fn random_typed(ty: AlgebraType, r: &mut ChaCha8Rng) -> TypedAlgebra {
    loop {
        let ps = (0..ty.arity()).map(|_| random_rational(r)).collect();
        if let Ok(a) = TypedAlgebra::new(ty, ps) {
            return a;
        }
    }
}

pub fn j0_point() -> ProjPoint {
    ProjPoint::new(FieldElem::one(), FieldElem::one(), -FieldElem::cbrt2()).unwrap()
}

pub fn j1728_point() -> ProjPoint {
    ProjPoint::new(&FieldElem::one() + &FieldElem::sqrt3(), FieldElem::one(), FieldElem::one()).unwrap()
}

/// Seed points for a generic curve, the `j = 0` curve and the `j = 1728` curve.
pub fn case_points() -> Vec<ProjPoint> {
    vec![pt(1, 2, 3), j0_point(), j1728_point()]
}

// 1
pub fn field_constants() -> Check {
    let e = FieldElem::eps();
    ensure(e.cube().is_one() && !e.is_one(), || "eps^3 = 1, eps != 1".into())?;
    ensure(FieldElem::sqrt3().square() == fe(3), || "sqrt3^2 = 3".into())?;
    ensure(FieldElem::i().square() == fe(-1), || "i^2 = -1".into())?;
    ensure((&(&e.square() + &e) + &FieldElem::one()).is_zero(), || "1 + eps + eps^2 = 0".into())
}

// 2
pub fn group_law() -> Check {
    let mut r = rng(2);
    let mut seeds: Vec<ProjPoint> = case_points();
    while seeds.len() < 8 {
        let (a, b, c) = (r.gen_range(1..=9), r.gen_range(-9..=9), r.gen_range(-9..=9));
        if let Ok(p) = ProjPoint::from_ints(a, b, c) {
            if HesseCurve::through(&p).is_ok() && !seeds.contains(&p) {
                seeds.push(p);
            }
        }
    }
    let curves: Vec<(HesseCurve, CurvePoint)> =
        seeds.iter().map(|p| HesseCurve::through(p)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    for (curve, _) in &curves {
        let o = curve.identity();
        for (k, t) in curve.torsion_points().iter().enumerate() {
            let three = ok(ok(t.add(t), "add")?.add(t), "add")?;
            ensure(three == o, || format!("3 p{k} != o on lambda = {}", curve.lambda()))?;
        }
    }
    for _ in 0..200 {
        let (curve, seed) = curves.choose(&mut r).unwrap();
        let tors = curve.torsion_points();
        let mut pick = || ok(seed.smul(r.gen_range(-4..=4)).add(&tors[r.gen_range(0..9)]), "add");
        let (p, q, s) = (pick()?, pick()?, pick()?);
        let add = |a: &CurvePoint, b: &CurvePoint| ok(a.add(b), "add");
        ensure(curve.contains(p.point()), || format!("{} not on curve", p.point()))?;
        ensure(add(&p, &q)? == add(&q, &p)?, || format!("commutativity at {} {}", p.point(), q.point()))?;
        ensure(add(&add(&p, &q)?, &s)? == add(&p, &add(&q, &s)?)?, || {
            format!("associativity at {} {} {}", p.point(), q.point(), s.point())
        })?;
        ensure(add(&p, &curve.identity())? == p, || format!("identity at {}", p.point()))?;
        ensure(add(&p, &p.neg())?.is_identity(), || format!("inverse at {}", p.point()))?;
    }
    Ok(())
}

// 3
pub fn generators() -> Check {
    for (lambda, d) in [(fe(2), 2), (fe(0), 6), (lambda_1728(), 4)] {
        let curve = ok(HesseCurve::new(lambda.clone()), "curve")?;
        ensure(curve.d() == d, || format!("d({lambda}) = {}", curve.d()))?;
        let tau = ok(curve.tau(), "tau")?;
        ensure(tau.projective_order(24) == Some(d), || format!("order of tau at lambda = {lambda}"))?;
    }
    ensure(ok(j_invariant(&lambda_1728()), "j")? == fe(1728), || "j(1 + sqrt3) != 1728".into())?;
    ensure(ok(j_invariant(&fe(0)), "j")?.is_zero(), || "j(0) != 0".into())
}

// 4
pub fn f_set_table() -> Check {
    let all: Vec<usize> = (0..9).collect();
    let expected = |c: usize, i: usize| -> Vec<usize> {
        match (c, i) {
            (_, 0) => vec![0],
            (1, 2) | (1, 4) => vec![0, 1, 2],
            _ => all.clone(),
        }
    };
    for (c, p) in case_points().iter().enumerate() {
        let (curve, _) = ok(HesseCurve::through(p), "curve")?;
        for i in 0..curve.d() {
            let got: Vec<usize> = ok(f_set(&curve, i as i64), "f_set")?
                .iter()
                .map(|q| curve.torsion_index(q.point()).unwrap())
                .collect();
            ensure(got == expected(c, i), || format!("F at lambda = {}, i = {i}: {got:?}", curve.lambda()))?;
        }
    }
    Ok(())
}

fn sample_instances(ty: AlgebraType) -> Vec<(TypedAlgebra, Vec<(&'static str, FieldElem)>)> {
    let row = ROWS.iter().find(|r| r.ty == ty.name()).unwrap();
    SAMPLES
        .iter()
        .map(|s| {
            let ps: Vec<FieldElem> = s[..row.names.len()].iter().map(|&n| fe(n)).collect();
            let env = row.names.iter().copied().zip(ps.iter().cloned()).collect();
            (TypedAlgebra::new(ty, ps).unwrap(), env)
        })
        .collect()
}

// 5
pub fn table_fidelity() -> Check {
    for ty in AlgebraType::ALL {
        let row = ROWS.iter().find(|r| r.ty == ty.name()).ok_or(format!("no golden row for {ty}"))?;
        for (a, env) in sample_instances(ty) {
            let got = ok(construct(&a), "construct")?;
            let want = rels(row.rels, &env);
            ensure(got.relations() == want.relations(), || format!("relations of {a}"))?;
            let det = point_scheme_det(&got);
            ensure(det == cubic(row.det, &env), || format!("det of {a} is {det}"))?;
            match ty.coarse() {
                CoarseType::P => ensure(det.is_zero(), || format!("det of {a} is not 0"))?,
                CoarseType::S if ty != AlgebraType::Sp1 => {
                    let xyz = CubicForm::from_monomials(&[(fe(1), "xyz")]);
                    ensure(det.eq_up_to_scalar(&xyz), || format!("det of {a} not proportional to xyz"))?
                }
                _ => {}
            }
        }
    }
    for p in case_points() {
        let d = ok(EcDescriptor::new(&p, 0), "descriptor")?;
        let det = point_scheme_det(&ok(construct_ec(&d), "construct_ec")?);
        ensure(det.eq_up_to_scalar(&CubicForm::hesse(d.lambda())), || format!("Sklyanin det at {p}"))?;
    }
    Ok(())
}

// 6
pub fn oracle_equivalence() -> Check {
    let mut r = rng(6);
    let covered = |t: &AlgebraType| {
        matches!(t.coarse(), CoarseType::P | CoarseType::S | CoarseType::Sp | CoarseType::T | CoarseType::Tp | CoarseType::NC)
    };
    for ty in AlgebraType::ALL.into_iter().filter(covered) {
        let count = if ty.arity() == 0 { 1 } else { 3 };
        for _ in 0..count {
            let a = random_typed(ty, &mut r);
            let g = ok(pair_for(&a), "pair")?;
            let got = ok(g2_relations(&g, DEFAULT_SAMPLES), &format!("g2 for {a}"))?;
            ensure(relations_equal(&got, &ok(construct(&a), "construct")?), || format!("g2 differs for {a}"))?;
        }
    }
    for p in case_points() {
        let d0 = ok(EcDescriptor::new(&p, 0), "descriptor")?;
        for i in 0..d0.curve().d() {
            let d = ok(EcDescriptor::new(&p, i as i64), "descriptor")?;
            let g = ok(pair_for_ec(&d), "pair")?;
            let got = ok(g2_relations(&g, DEFAULT_SAMPLES), "g2")?;
            let want = ok(construct_ec(&d), "construct_ec")?;
            ensure(relations_equal(&got, &want), || format!("g2 differs for EC {p}, i = {i}"))?;
            let rep = ok(g1_check(&want, &g, DEFAULT_SAMPLES), "g1")?;
            ensure(rep.all_pass(), || format!("g1 fails for EC {p}, i = {i}"))?;
        }
    }
    Ok(())
}

fn s1(p: &[FieldElem; 3]) -> TypedAlgebra {
    TypedAlgebra::new(AlgebraType::S1, p.to_vec()).unwrap()
}

/// The six triples listed as isomorphic to `S1(a, b, c)`.
fn listed_orbit(p: &[FieldElem; 3]) -> Vec<[FieldElem; 3]> {
    let [a, b, c] = p.clone();
    let (ai, bi, ci) = (a.inv().unwrap(), b.inv().unwrap(), c.inv().unwrap());
    vec![
        [a.clone(), b.clone(), c.clone()],
        [b.clone(), c.clone(), a.clone()],
        [c, a, b],
        [ai.clone(), ci.clone(), bi.clone()],
        [bi.clone(), ai.clone(), ci.clone()],
        [ci, bi, ai],
    ]
}

fn permutation_witness(a: &RelationSet, b: &RelationSet) -> bool {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        .into_iter()
        .any(|p| relations_equal(&apply_iso(a, &Mat3::permutation(p)).unwrap(), b))
}

fn random_s1_params(r: &mut ChaCha8Rng) -> [FieldElem; 3] {
    loop {
        let p = [random_rational(r), random_rational(r), random_rational(r)];
        if TypedAlgebra::new(AlgebraType::S1, p.to_vec()).is_ok() {
            return p;
        }
    }
}

// 7
pub fn example_s1_classification() -> Check {
    let mut r = rng(7);
    let base = random_s1_params(&mut r);
    let a = s1(&base);
    let env = [("al", base[0].clone()), ("be", base[1].clone()), ("ga", base[2].clone())];
    // step 2: the geometric pair on the triangle gives exactly these relations
    let rel = ok(construct(&a), "construct")?;
    ensure(relations_equal(&rel, &rels("yz - al zy, zx - be xz, xy - ga yx", &env)), || "S1 relations".into())?;
    let g = GeometricPair::new(Family::Triangle, Sigma::TriangleScaling(base.clone()));
    ensure(relations_equal(&ok(g2_relations(&g, DEFAULT_SAMPLES), "g2")?, &rel), || "S1 from (E, sigma)".into())?;

    // step 3: isomorphism condition
    let orbit = listed_orbit(&base);
    let mut candidates: Vec<[FieldElem; 3]> = (0..5).map(|_| orbit.choose(&mut r).unwrap().clone()).collect();
    while candidates.len() < 20 {
        candidates.push(random_s1_params(&mut r));
    }
    let mut positives = 0;
    for q in &candidates {
        let expect = orbit.contains(q);
        positives += expect as usize;
        let b = s1(q);
        ensure(ok(iso_decide(&a, &b), "iso")? == expect, || format!("iso verdict for {a} vs {b}"))?;
        if expect {
            ensure(permutation_witness(&rel, &ok(construct(&b), "construct")?), || format!("no witness for {b}"))?;
        }
    }
    ensure(positives >= 5, || format!("only {positives} iso positives"))?;

    // step 4: Morita condition alpha' beta' gamma' = (alpha beta gamma)^{+-1}
    let prod = |p: &[FieldElem; 3]| &(&p[0] * &p[1]) * &p[2];
    let target = prod(&base);
    let mut candidates: Vec<[FieldElem; 3]> = Vec::new();
    while candidates.len() < 5 {
        let (x, y) = (random_rational(&mut r), random_rational(&mut r));
        let t = if r.gen_bool(0.5) { target.clone() } else { target.inv().unwrap() };
        if let Ok(z) = t.div(&(&x * &y)) {
            let q = [x, y, z];
            if TypedAlgebra::new(AlgebraType::S1, q.to_vec()).is_ok() {
                candidates.push(q);
            }
        }
    }
    while candidates.len() < 20 {
        candidates.push(random_s1_params(&mut r));
    }
    let mut positives = 0;
    for q in &candidates {
        let pq = prod(q);
        let expect = pq == target || (&pq * &target).is_one();
        positives += expect as usize;
        let b = s1(q);
        ensure(ok(morita_decide(&a, &b), "morita")? == expect, || format!("Morita verdict for {a} vs {b}"))?;
    }
    ensure(positives >= 5, || format!("only {positives} Morita positives"))
}

// 8
pub fn example_generic_ec_isomorphisms() -> Check {
    let p = pt(1, 2, 3);
    let (curve, cp) = ok(HesseCurve::through(&p), "curve")?;
    let p3 = &curve.torsion_points()[3];
    let mk = |q: &ProjPoint, i| EcDescriptor::new(q, i).unwrap();
    let algebras = [
        mk(&p, 0),
        mk(cp.neg().point(), 0),
        mk(&p, 1),
        mk(ok(cp.add(p3), "add")?.point(), 1),
    ];
    for (x, u) in algebras.iter().enumerate() {
        for (y, v) in algebras.iter().enumerate() {
            let pair = (x.min(y), x.max(y));
            let expect = x == y || pair == (0, 1) || pair == (2, 3);
            ensure(ok(iso_ec(u, v), "iso_ec")? == expect, || format!("algebras {x} and {y}"))?;
        }
    }
    Ok(())
}

/// `p` lies in `E[6]`: some translate by 3-torsion is fixed by `-1`, i.e.
/// has equal first two coordinates.
fn in_e6(p: &CurvePoint) -> bool {
    p.curve().torsion_points().iter().any(|r| {
        let q = p.add(r).unwrap();
        q.point().x() == q.point().y()
    })
}

// 9
pub fn example_shift_morita() -> Check {
    let mut r = rng(9);
    let mut points: Vec<CurvePoint> = Vec::new();
    // engineered: (1:1:s) is 2-torsion on lambda = (2 + s^3)/(3s)
    while points.len() < 8 {
        let s = FieldElem::frac(r.gen_range(-9..=9), r.gen_range(1..=4));
        let Ok(p) = ProjPoint::new(fe(1), fe(1), s) else { continue };
        let Ok((curve, two)) = HesseCurve::through(&p) else { continue };
        if curve.d() != 2 {
            continue;
        }
        let q = ok(two.add(&curve.torsion_points()[r.gen_range(0..9)]), "add")?;
        points.push(q);
    }
    while points.len() < 20 {
        let Ok(p) = ProjPoint::from_ints(r.gen_range(1..=9), r.gen_range(-9..=9), r.gen_range(-9..=9)) else { continue };
        let Ok((curve, cp)) = HesseCurve::through(&p) else { continue };
        if curve.d() == 2 && !cp.is_torsion3() {
            points.push(cp);
        }
    }
    let mut positives = 0;
    for p in &points {
        let a = ok(EcDescriptor::on_curve(p.curve(), p.point(), 0), "descriptor")?;
        let b = ok(EcDescriptor::on_curve(p.curve(), p.point(), 1), "descriptor")?;
        let got = ok(morita_ec(&a, &b), "morita_ec")?;
        let two_p = p.smul(2).is_torsion3();
        ensure(got == two_p, || format!("morita vs 2p in E[3] at {}", p.point()))?;
        ensure(got == in_e6(p), || format!("morita vs E[6] membership at {}", p.point()))?;
        positives += got as usize;
    }
    ensure(positives >= 8, || format!("only {positives} positives"))
}

fn descriptor_pool(r: &mut ChaCha8Rng) -> Vec<AlgebraDescriptor> {
    let mut pool = Vec::new();
    for ty in AlgebraType::ALL {
        for _ in 0..2 {
            pool.push(AlgebraDescriptor::Table(random_typed(ty, r)));
        }
    }
    // a few deliberately related table instances
    pool.push(AlgebraDescriptor::Table(TypedAlgebra::ints(AlgebraType::S1, &[2, 3, 5]).unwrap()));
    pool.push(AlgebraDescriptor::Table(TypedAlgebra::ints(AlgebraType::S1, &[3, 5, 2]).unwrap()));
    pool.push(AlgebraDescriptor::Table(TypedAlgebra::ints(AlgebraType::S3, &[1, 1, 30]).unwrap()));
    let (curve, seed) = HesseCurve::through(&pt(1, 2, 3)).unwrap();
    for n in [1, -1, 2, 3] {
        for l in [0, 3, 5] {
            for i in 0..2 {
                let q = seed.smul(n).add(&curve.torsion_points()[l]).unwrap();
                pool.push(AlgebraDescriptor::Ec(EcDescriptor::on_curve(&curve, q.point(), i).unwrap()));
            }
        }
    }
    pool
}

// 10
pub fn decision_coherence() -> Check {
    let mut r = rng(10);
    let pool = descriptor_pool(&mut r);
    for a in &pool {
        ensure(ok(a.iso(a), "iso")? && ok(a.morita(a), "morita")?, || "reflexivity".into())?;
    }
    let mut iso_pairs = 0;
    for _ in 0..100 {
        let a = pool.choose(&mut r).unwrap();
        // bias towards related pairs so both verdicts occur
        let b = if r.gen_bool(0.3) {
            pool.iter().filter(|b| std::mem::discriminant(*b) == std::mem::discriminant(a)).collect::<Vec<_>>().choose(&mut r).copied().unwrap()
        } else {
            pool.choose(&mut r).unwrap()
        };
        let (iso, mor) = (ok(a.iso(b), "iso")?, ok(a.morita(b), "morita")?);
        ensure(iso == ok(b.iso(a), "iso")?, || "iso symmetry".into())?;
        ensure(mor == ok(b.morita(a), "morita")?, || "Morita symmetry".into())?;
        ensure(!iso || mor, || "iso without Morita".into())?;
        iso_pairs += iso as usize;
    }
    ensure(iso_pairs > 0, || "no isomorphic pairs drawn".into())?;
    // transitivity along orbits
    let (curve, seed) = ok(HesseCurve::through(&pt(2, -5, 7)), "curve")?;
    for i in 0..2 {
        let a = ok(EcDescriptor::on_curve(&curve, seed.point(), i), "descriptor")?;
        let orbit = ok(morita_orbit(&a), "orbit")?;
        for _ in 0..5 {
            let (q, _) = orbit.choose(&mut r).unwrap();
            let b = ok(EcDescriptor::on_curve(&curve, q.point(), i), "descriptor")?;
            let (s, _) = ok(morita_orbit(&b), "orbit")?.choose(&mut r).unwrap().clone();
            let c = ok(EcDescriptor::on_curve(&curve, s.point(), i), "descriptor")?;
            ensure(ok(morita_ec(&a, &b), "m")? && ok(morita_ec(&b, &c), "m")?, || "orbit members".into())?;
            ensure(ok(morita_ec(&a, &c), "m")?, || "Morita transitivity".into())?;
            let (q, _) = ok(iso_orbit(&a), "orbit")?.choose(&mut r).unwrap().clone();
            let b = ok(EcDescriptor::on_curve(&curve, q.point(), i), "descriptor")?;
            let (s, _) = ok(iso_orbit(&b), "orbit")?.choose(&mut r).unwrap().clone();
            let c = ok(EcDescriptor::on_curve(&curve, s.point(), i), "descriptor")?;
            ensure(ok(iso_ec(&a, &c), "iso")?, || "iso transitivity".into())?;
        }
    }
    let base = random_s1_params(&mut r);
    for q in listed_orbit(&base) {
        for s in listed_orbit(&q) {
            ensure(ok(iso_decide(&s1(&base), &s1(&s)), "iso")?, || "S1 iso transitivity".into())?;
        }
    }
    Ok(())
}

fn random_invertible(r: &mut ChaCha8Rng) -> Mat3 {
    loop {
        let m = Mat3::from_rows(std::array::from_fn(|_| std::array::from_fn(|_| fe(r.gen_range(-3..=3)))));
        if m.is_invertible() {
            return m;
        }
    }
}

// 11
pub fn twist_laws() -> Check {
    let mut r = rng(11);
    for k in 0..50 {
        let a = if k % 5 == 4 {
            let p = case_points()[k % 3].clone();
            let d = ok(EcDescriptor::new(&p, (k / 5) as i64), "descriptor")?;
            ok(construct_ec(&d), "construct_ec")?
        } else {
            let ty = *AlgebraType::ALL.choose(&mut r).unwrap();
            ok(construct(&random_typed(ty, &mut r)), "construct")?
        };
        let phi = random_invertible(&mut r);
        let back = ok(twist(&ok(twist(&a, &phi), "twist")?, &ok(phi.inverse(), "inverse")?), "twist")?;
        ensure(relations_equal(&back, &a), || format!("twist inverse, instance {k}"))?;
    }
    for p in case_points() {
        let d0 = ok(EcDescriptor::new(&p, 0), "descriptor")?;
        let tau = ok(d0.curve().tau(), "tau")?.clone();
        for i in 0..d0.curve().d() as i64 {
            let here = ok(construct_ec(&ok(EcDescriptor::new(&p, i), "d")?), "construct_ec")?;
            let next = ok(construct_ec(&ok(EcDescriptor::new(&p, i + 1), "d")?), "construct_ec")?;
            ensure(relations_equal(&next, &ok(twist(&here, &tau), "twist")?), || format!("shift at {p}, i = {i}"))?;
        }
    }
    Ok(())
}

pub const ALL: [(&str, fn() -> Check); 11] = [
    ("field constants", field_constants),
    ("group law", group_law),
    ("automorphism generators", generators),
    ("F-set table", f_set_table),
    ("table fidelity", table_fidelity),
    ("oracle equivalence", oracle_equivalence),
    ("S1 classification example", example_s1_classification),
    ("generic EC isomorphism example", example_generic_ec_isomorphisms),
    ("shift Morita example", example_shift_morita),
    ("decision coherence", decision_coherence),
    ("twist laws", twist_laws),
];
