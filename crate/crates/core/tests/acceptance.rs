//! Acceptance criteria 1 to 12, one PASS/FAIL line each.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use liefree::autgrp::{
    aut23_factor, g_tilde, h, is_orthogonal_automorphism, r, random_invertible_2x2,
    random_unimodular_2x2, small_rational, AutMatrix,
};
use liefree::derivs::{
    derivation_space, inner_derivations, named_family, skew_derivation_space, verify_structure,
    AlgebraTag,
};
use liefree::exact::{frac, rat, Matrix, Rational, Subspace};
use liefree::hall::{free_dim, hall_basis, structure_constants_for, tail_set, witt_dim};
use liefree::liealg::{cotangent_double, free_metabelian, free_nilpotent, heisenberg, n23, n32, LieAlgebra};
use liefree::metric::{
    adinv_basis, adinv_space, admits_adinvariant, b23, b32, classify_free, is_adinvariant, Reason,
    DEFAULT_GRID_BUDGET,
};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const INSTANCES: [(usize, usize); 10] = [
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 2),
    (3, 3),
    (3, 4),
    (4, 2),
    (4, 3),
    (5, 2),
];

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Check {
    for m in 2..=6u64 {
        let mu = m as usize;
        ensure(witt_dim(mu, 2) == m * (m - 1) / 2, || format!("d_{m}(2)"))?;
        ensure(witt_dim(mu, 3) == m * (m * m - 1) / 3, || format!("d_{m}(3)"))?;
    }
    Ok(())
}

fn c2() -> Check {
    let mut m = 2;
    let mut count = 0;
    while free_dim(m, 1) <= 40 {
        let mut k = 1;
        while free_dim(m, k) <= 40 {
            let b = hall_basis(m, k).map_err(|e| e.to_string())?;
            for s in 1..=k {
                ensure(b.degree(s).len() as u64 == witt_dim(m, s), || format!("({m},{k}) degree {s}"))?;
            }
            // Jacobi is checked on construction
            let g = structure_constants_for(&b).map_err(|e| format!("({m},{k}): {e}"))?;
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    let s = b.length(i) + b.length(j);
                    for (p, _) in g.terms(i, j) {
                        ensure(s <= k && b.length(*p) == s, || format!("({m},{k}) grading at {i},{j}"))?;
                    }
                }
            }
            count += 1;
            k += 1;
        }
        m += 1;
    }
    ensure(count > 40, || format!("only {count} instances"))?;
    let f32 = free_nilpotent(3, 2).map_err(|e| e.to_string())?;
    let f23 = free_nilpotent(2, 3).map_err(|e| e.to_string())?;
    ensure(f32.signed_relabeling(&n32()).is_some(), || "n32 relabeling".into())?;
    ensure(f23.signed_relabeling(&n23()).is_some(), || "n23 relabeling".into())
}

fn classification(metabelian: bool) -> Check {
    for row in classify_free(&INSTANCES, DEFAULT_GRID_BUDGET) {
        let v = if metabelian { &row.metabelian } else { &row.free };
        let v = v.as_ref().map_err(|e| format!("({},{}): {e}", row.m, row.k))?;
        let expected = matches!((row.m, row.k), (3, 2) | (2, 3));
        ensure(v.admits == expected, || format!("({},{}) admits = {}", row.m, row.k, v.admits))?;
        let concrete = match &v.reason {
            Reason::Witness(b) => b.is_nondegenerate(),
            Reason::FailsE1 | Reason::FailsE2(_) | Reason::DetIdenticallyZero => !v.admits,
        };
        ensure(concrete, || format!("({},{}) reason", row.m, row.k))?;
    }
    Ok(())
}

fn c4() -> Check {
    classification(true)?;
    for &(m, k) in INSTANCES.iter().filter(|(_, k)| *k <= 3) {
        let f = free_nilpotent(m, k).map_err(|e| e.to_string())?;
        let q = free_metabelian(m, k).map_err(|e| e.to_string())?;
        ensure(f.derived(2).map(|s| s.is_zero()) == Ok(true), || format!("({m},{k}) g''"))?;
        ensure(q == f, || format!("({m},{k}) quotient differs"))?;
    }
    let d = free_metabelian(2, 5).map_err(|e| e.to_string())?.dim();
    ensure(d == 12, || format!("dim metabelian(2,5) = {d}"))
}

/// The invariant forms must have zero entries outside the free block and
/// the `alpha` positions, with the signs tied together.
fn matches_pattern(b: &Matrix, free: &[(usize, usize)], alpha: &[(usize, usize, i64)]) -> bool {
    let n = b.rows();
    let a = &b[(alpha[0].0 - 1, alpha[0].1 - 1)] * rat(alpha[0].2);
    for i in 1..=n {
        for j in 1..=n {
            let (p, q) = (i.min(j), i.max(j));
            let v = &b[(i - 1, j - 1)];
            if free.contains(&(p, q)) {
                continue;
            }
            match alpha.iter().find(|(x, y, _)| (*x, *y) == (p, q)) {
                Some((_, _, s)) => {
                    if *v != &a * rat(*s) {
                        return false;
                    }
                }
                None => {
                    if !v.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn c5() -> Check {
    ensure(adinv_space(&n32()).dim() == 7, || "dim for n32".into())?;
    ensure(adinv_space(&n23()).dim() == 4, || "dim for n23".into())?;
    let free32 = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];
    let alpha32 = [(1, 6, 1), (2, 5, -1), (3, 4, 1)];
    let free23 = [(1, 1), (1, 2), (2, 2)];
    let alpha23 = [(1, 5, 1), (2, 4, -1), (3, 3, 1)];
    for b in adinv_basis(&n32()) {
        ensure(matches_pattern(&b, &free32, &alpha32), || format!("n32 form {b}"))?;
    }
    for b in adinv_basis(&n23()) {
        ensure(matches_pattern(&b, &free23, &alpha23), || format!("n23 form {b}"))?;
    }
    for (g, b) in [(n32(), b32()), (n23(), b23())] {
        ensure(is_adinvariant(&g, &b) == Ok(true), || "normalized form not invariant".into())?;
        let d = b.det();
        ensure(&d * &d == Rational::one(), || format!("det {d}"))?;
    }
    Ok(())
}

fn c6() -> Check {
    let (double, form) = cotangent_double(&heisenberg(1).unwrap());
    for (name, g, b) in [("n32", n32(), b32()), ("n23", n23(), b23()), ("T*h1", double, form)] {
        let s = g.series();
        for r in 0..=s.stable_length() {
            let perp = b.perp(s.lower_at(r)).map_err(|e| e.to_string())?;
            ensure(&perp == s.upper_at(r), || format!("{name}: r = {r}"))?;
        }
    }
    Ok(())
}

fn c7() -> Check {
    let mut corpus: Vec<LieAlgebra> = vec![LieAlgebra::abelian(3), n23(), n32()];
    for n in 1..=2 {
        let h = heisenberg(n).unwrap();
        corpus.push(cotangent_double(&h).0);
        corpus.push(h);
    }
    corpus.push(cotangent_double(&n32()).0);
    corpus.push(cotangent_double(&n23()).0);
    corpus.push(cotangent_double(&free_nilpotent(4, 2).unwrap()).0);
    for (m, k) in [(2, 4), (2, 5), (3, 3)] {
        corpus.push(free_metabelian(m, k).unwrap());
    }
    let mut tested = 0;
    for g in &corpus {
        let metabelian = g.derived(2).map_err(|e| e.to_string())?.is_zero();
        let admits = admits_adinvariant(g).map_err(|e| e.to_string())?.admits;
        if metabelian && admits {
            tested += 1;
            ensure(g.series().lower_at(4).is_zero(), || format!("C^4 != 0 in dim {}", g.dim()))?;
        }
    }
    ensure(tested >= 6, || format!("only {tested} algebras exercised"))
}

fn c8() -> Check {
    for n in 1..=3 {
        let v = admits_adinvariant(&heisenberg(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(!v.admits && v.reason == Reason::FailsE1, || format!("h_{n}: {:?}", v.reason))?;
    }
    Ok(())
}

fn c9() -> Check {
    for (tag, d, s, i) in [(AlgebraTag::N23, 10, 6, 3), (AlgebraTag::N32, 18, 11, 3)] {
        let g = tag.algebra();
        ensure(derivation_space(&g).dim() == d, || format!("{tag} Der"))?;
        let skew = skew_derivation_space(&g, &tag.metric()).map_err(|e| e.to_string())?;
        ensure(skew.dim() == s, || format!("{tag} Der_a"))?;
        ensure(inner_derivations(&g).dim() == i, || format!("{tag} inner"))?;
        let rep = verify_structure(tag);
        let failed: Vec<_> = rep.failures().iter().map(|r| r.name.clone()).collect();
        ensure(failed.is_empty(), || format!("{tag}: {failed:?}"))?;
    }
    let f = |tag, s: &str| named_family(tag, s).unwrap();
    let (x, y, z) = (f(AlgebraTag::N23, "X"), f(AlgebraTag::N23, "Y"), f(AlgebraTag::N23, "Z"));
    ensure(x.commutator(&y) == z, || "[X,Y] != Z".into())?;
    let t = f(AlgebraTag::N23, "T");
    ensure(
        t.commutator(&x) == x && t.commutator(&y) == y && t.commutator(&z) == z.scale(&rat(2)),
        || "T on (X,Y,Z)".into(),
    )?;
    for s in ["U", "V", "W"] {
        let a = f(AlgebraTag::N23, s);
        ensure(t.commutator(&a) == a.scale(&rat(2)), || format!("T on {s}"))?;
    }
    let t32 = f(AlgebraTag::N32, "T");
    for i in 1..=8 {
        ensure(t32.commutator(&f(AlgebraTag::N32, &format!("f_{i}"))).is_zero(), || format!("[T,f_{i}]"))?;
    }
    for i in 1..=9 {
        let a = f(AlgebraTag::N32, &format!("A_{i}"));
        ensure(t32.commutator(&a) == a, || format!("T on A_{i}"))?;
    }
    Ok(())
}

fn c10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let g = n23();
    for _ in 0..100 {
        let a = random_invertible_2x2(&mut rng);
        let p: Vec<Rational> = (0..6).map(|_| small_rational(&mut rng)).collect();
        let t = &(g_tilde(&a).unwrap().matrix() * r(&p[0], &p[1], &p[2]).matrix()) * h(&p[3], &p[4], &p[5]).matrix();
        let f = aut23_factor(&AutMatrix::n23(t.clone()).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(f.reassemble() == t, || "reassembly".into())?;
        ensure(f.r_params.to_vec() == p[..3] && f.h_params.to_vec() == p[3..], || "parameters".into())?;
    }
    for _ in 0..50 {
        let p: Vec<Rational> = (0..6).map(|_| small_rational(&mut rng)).collect();
        let lhs = h(&p[0], &p[1], &p[2]).matrix() * h(&p[3], &p[4], &p[5]).matrix();
        let z = &p[2] + &p[5] + frac(1, 2) * (&p[0] * &p[4] - &p[3] * &p[1]);
        ensure(lhs == *h(&(&p[0] + &p[3]), &(&p[1] + &p[4]), &z).matrix(), || "Heisenberg law".into())?;
        let hm = h(&p[0], &p[1], &p[2]).into_matrix();
        let rm = r(&p[3], &p[4], &p[5]).into_matrix();
        ensure(&hm * &rm == &rm * &hm, || "H and R commute".into())?;
        let a = g_tilde(&random_invertible_2x2(&mut rng)).unwrap().into_matrix();
        let ainv = a.inverse().unwrap();
        let ch = &(&a * &hm) * &ainv;
        let cr = &(&a * &rm) * &ainv;
        ensure(liefree::autgrp::h_params(&ch).is_some(), || "conjugate of h".into())?;
        ensure(liefree::autgrp::r_params(&cr).is_some(), || "conjugate of r".into())?;
    }
    // H ∩ R: an h that is also an r has x = y = 0 and then z = 0
    let zero = Rational::zero();
    for z in [rat(1), frac(-3, 7)] {
        ensure(liefree::autgrp::r_params(h(&zero, &zero, &z).matrix()).is_none(), || "H ∩ R".into())?;
    }
    let rep = liefree::autgrp::group_structure_checks(&mut rng);
    ensure(rep.all_passed(), || "group structure report".into())?;
    for i in 0..40 {
        let a = if i % 2 == 0 { random_unimodular_2x2(&mut rng) } else { random_invertible_2x2(&mut rng) };
        let t = g_tilde(&a).unwrap().matrix() * h(&small_rational(&mut rng), &small_rational(&mut rng), &zero).matrix();
        let d = a.det().unwrap();
        let orth = is_orthogonal_automorphism(&g, &b23(), &t).map_err(|e| e.to_string())?;
        ensure(orth == (&d * &d == Rational::one()), || format!("orthogonality with det {d}"))?;
    }
    Ok(())
}

fn c11() -> Check {
    for m in 2..=4usize {
        let ts = tail_set(m, 5).map_err(|e| e.to_string())?;
        let expected = m * (m * m - 1) / 3;
        ensure(ts.u_tilde.len() == expected, || format!("|U~| = {} for m = {m}", ts.u_tilde.len()))?;
        let b = hall_basis(m, 5).map_err(|e| e.to_string())?;
        for t in &ts.u_tilde {
            ensure(t.length() == 5 && b.satisfies_hall_conditions(t), || format!("{t} is not Hall"))?;
        }
        let mm = m as i64;
        let printed = frac(mm * mm * mm, 3) + rat(mm * mm) + frac(2 * mm, 3);
        ensure(printed != rat(expected as i64), || format!("closed form agrees at m = {m}"))?;
    }
    let c11 = liefree::report::run_claim(11, DEFAULT_GRID_BUDGET);
    ensure(c11.notes.iter().any(|n| n.contains("closed form")), || "discrepancy not flagged".into())?;
    for m in 2..=4 {
        for k in 4..=5 {
            ensure(witt_dim(m, k) > m as u64, || format!("dim z(n_{m},{k})"))?;
        }
    }
    let z = free_nilpotent(2, 5).unwrap().center();
    ensure(z == Subspace::span(14, &(8..14).map(|i| liefree::exact::unit_vec(14, i)).collect::<Vec<_>>()).unwrap(), || "center of n_{2,5}".into())
}

fn c12() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_liefree"))
        .args(["verify-paper", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let claims = v["claims"].as_array().cloned().unwrap_or_default();
    ensure(claims.len() == 11, || format!("{} claims", claims.len()))?;
    ensure(claims.iter().all(|c| c["passed"] == true), || "a claim failed".into())?;
    ensure(start.elapsed() < Duration::from_secs(300), || "too slow".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("dimension recursion", c1, 1),
        ("Hall basis and structure constants", c2, 30),
        ("classification of free nilpotent algebras", || classification(false), 60),
        ("classification of free metabelian algebras", c4, 60),
        ("invariant metric families", c5, 60),
        ("perp duality", c6, 60),
        ("metabelian metric algebras have C^4 = 0", c7, 60),
        ("Heisenberg obstruction", c8, 60),
        ("derivation algebras", c9, 10),
        ("automorphisms of n23", c10, 60),
        ("tail-set audit", c11, 60),
        ("verify-paper", c12, 300),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut res = f();
        let secs = start.elapsed().as_secs_f64();
        if res.is_ok() && secs > *limit as f64 {
            res = Err(format!("took {secs:.1}s, limit {limit}s"));
        }
        match res {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
