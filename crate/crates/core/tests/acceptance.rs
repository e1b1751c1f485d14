//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use birsym::burnside::{burn2_cyclic_relations, preset_presentation, symbol_basis_for, ProjectionSpec};
use birsym::classes::{linear_pn_class, preset, CoordinatePoint, Preset};
use birsym::linalg::{IntQuotient, Order, RationalOptions, SparseVec};
use birsym::maps::{Comultiplication, TensorVec};
use birsym::quotient::{Coefficients, SymbolQuotient, Variant};
use birsym::symbols::{
    blowup_relations, general_blowup_relations, Admissibility, AntisymmetryMode, Symbol, SymbolBasis,
};
use birsym::{DualSurjection, FinAbGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const Q: Coefficients = Coefficients::Rational;
const F2: Coefficients = Coefficients::Prime(2);
const MINUS: Variant = Variant::Minus(AntisymmetryMode::SingleEntry);

fn g(s: &str) -> FinAbGroup {
    s.parse().expect("group spec")
}

fn dim(group: &FinAbGroup, n: usize, variant: Variant, coeff: Coefficients) -> Result<usize, String> {
    let q = SymbolQuotient::new(group, n, variant, coeff, &RationalOptions::default()).map_err(|e| e.to_string())?;
    Ok(q.dim())
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn within(what: &str, t: Instant, limit: Duration) -> Result<(), String> {
    let e = t.elapsed();
    if e <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {e:?}, limit {limit:?}"))
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn sym(group: &FinAbGroup, v: &[i64]) -> Symbol {
    Symbol::cyclic(group, v).expect("symbol")
}

fn integral(basis: &SymbolBasis) -> Result<IntQuotient, String> {
    IntQuotient::new(blowup_relations(basis).matrix()).map_err(e)
}

fn cyclic_table() -> Outcome {
    let t = Instant::now();
    let want = [0, 1, 1, 2, 2, 3, 3, 5, 4, 6, 7, 8, 7, 13, 10];
    let got = (2..=16).map(|n| dim(&FinAbGroup::cyclic(n).unwrap(), 2, Variant::Plain, Q)).collect::<Result<Vec<_>, _>>()?;
    expect_eq("dim B2(C_N) ⊗ Q, N = 2..16", got, want.to_vec())?;
    within("cyclic table", t, Duration::from_secs(10))?;
    Ok(format!("15 dimensions in {:?}", t.elapsed()))
}

fn closed_formulas() -> Outcome {
    for p in [5i64, 7, 11, 13, 17, 19, 23, 29, 31] {
        let c = FinAbGroup::cyclic(p).unwrap();
        let d = dim(&c, 2, Variant::Plain, Q)? as i64;
        let dm = dim(&c, 2, MINUS, Q)? as i64;
        expect_eq(&format!("dim B2(C{p})"), d, (p * p - 1) / 24 + 1)?;
        expect_eq(&format!("dim B2-(C{p})"), dm, (p - 5) * (p - 7) / 24)?;
        expect_eq(&format!("difference for C{p}"), d - dm, (p - 1) / 2)?;
    }
    Ok("primes 5..31".into())
}

fn noncyclic_table() -> Outcome {
    let t = Instant::now();
    let table: [(&str, [usize; 4]); 15] = [
        ("C2xC2", [0, 0, 2, 2]),
        ("C2xC4", [2, 0, 5, 3]),
        ("C2xC6", [3, 0, 8, 5]),
        ("C2xC8", [6, 1, 13, 8]),
        ("C2xC10", [7, 1, 18, 12]),
        ("C2xC16", [21, 9, 36, 24]),
        ("C3xC3", [7, 3, 7, 3]),
        ("C3xC6", [15, 7, 15, 7]),
        ("C3xC9", [37, 19, 37, 19]),
        ("C3xC27", [235, 163, 235, 163]),
        ("C4xC8", [33, 17, 34, 17]),
        ("C4xC16", [105, 65, 106, 65]),
        ("C4xC32", [353, 257, 354, 257]),
        ("C5xC25", [702, 502, 702, 502]),
        ("C6xC36", [577, 433, 578, 433]),
    ];
    for (name, want) in table {
        let grp = g(name);
        let got = [
            dim(&grp, 2, Variant::Plain, Q)?,
            dim(&grp, 2, MINUS, Q)?,
            dim(&grp, 2, Variant::Plain, F2)?,
            dim(&grp, 2, MINUS, F2)?,
        ];
        expect_eq(name, got, want)?;
    }
    for p in [3i64, 5] {
        let grp = g(&format!("C{p}xC{p}"));
        expect_eq(
            &format!("dim B2(C{p}xC{p})"),
            dim(&grp, 2, Variant::Plain, Q)? as i64,
            (p - 1) * (p * p * p + 6 * p * p - p + 6) / 24,
        )?;
        expect_eq(&format!("dim B2-(C{p}xC{p})"), dim(&grp, 2, MINUS, Q)? as i64, (p - 1) * (p * p * p - p + 12) / 24)?;
    }
    within("noncyclic table", t, Duration::from_secs(600))?;
    Ok(format!("15 groups and Cp x Cp formulas in {:?}", t.elapsed()))
}

fn structure() -> Outcome {
    let klein = SymbolBasis::new(&g("C2xC2"), 2).map_err(e)?;
    let s = integral(&klein)?.smith().clone();
    expect_eq("B2(C2xC2) torsion", s.torsion().iter().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["2".into(), "2".into()])?;
    expect_eq("B2(C2xC2) free rank", s.free_rank, 0)?;

    let c3 = SymbolBasis::new(&g("C3"), 2).map_err(e)?;
    let s = integral(&c3)?.smith().clone();
    expect_eq("B2(C3)", (s.torsion().len(), s.free_rank), (0, 1))?;

    let c4 = FinAbGroup::cyclic(4).unwrap();
    let b4 = SymbolBasis::new(&c4, 2).map_err(e)?;
    let q4 = integral(&b4)?;
    expect_eq("B2(C4)", (q4.smith().torsion().len(), q4.smith().free_rank), (0, 1))?;
    let beta = (1, sym(&c4, &[1, 2]));
    for (lhs, k) in [([1, 1], 2), ([1, 3], 0), ([2, 3], -1), ([3, 3], -2)] {
        let v = b4.vector(&[(1, sym(&c4, &lhs)), (-k, beta.1.clone())]).map_err(e)?;
        if !q4.contains(&v) {
            return Err(format!("C4: {:?} != {k}[1,2]", lhs));
        }
    }
    let gen = b4.vector(&[beta]).map_err(e)?;
    expect_eq("order of [1,2] in B2(C4)", q4.element_order(&gen), Order::Infinite)?;

    let c5 = FinAbGroup::cyclic(5).unwrap();
    let b5 = SymbolBasis::new(&c5, 2).map_err(e)?;
    let q5 = integral(&b5)?;
    expect_eq("B2(C5)", (q5.smith().torsion().len(), q5.smith().free_rank), (0, 2))?;
    let coords: [([i64; 2], i64, i64); 6] =
        [([1, 3], 1, -1), ([2, 2], -1, 2), ([2, 4], -1, 1), ([3, 3], 1, -2), ([3, 4], 0, -1), ([4, 4], -1, 0)];
    for (s, x, y) in coords {
        let v = b5
            .vector(&[(1, sym(&c5, &s)), (-x, sym(&c5, &[1, 1])), (-y, sym(&c5, &[1, 2]))])
            .map_err(e)?;
        if !q5.contains(&v) {
            return Err(format!("C5: {s:?} != {x}β1 + {y}β2"));
        }
    }
    Ok("C2xC2, C3, C4, C5 presentations".into())
}

fn torsion() -> Outcome {
    for n in 2..=30i64 {
        let grp = FinAbGroup::cyclic(n).unwrap();
        let basis = SymbolBasis::new(&grp, 2).map_err(e)?;
        let q = SymbolQuotient::from_basis(basis.clone(), Variant::Plain, Q, &RationalOptions::default()).map_err(e)?;
        let v = basis.vector(&[(1, sym(&grp, &[1, 0])), (1, sym(&grp, &[-1, 0]))]).map_err(e)?;
        if !q.is_zero(&v).map_err(e)? {
            return Err(format!("[1,0]+[-1,0] != 0 in B2(C{n}) ⊗ Q"));
        }
        if [7, 9, 10, 11, 13, 14, 15, 17].contains(&n) && integral(&basis)?.contains(&v) {
            return Err(format!("[1,0]+[-1,0] vanishes integrally in B2(C{n})"));
        }
        if n <= 20 {
            for a in 0..n {
                for b in 0..n {
                    if gcd(gcd(a, b), n) != 1 {
                        continue;
                    }
                    let mut terms = Vec::new();
                    for (x, y) in [(a, b), (-a, b), (a, -b), (-a, -b)] {
                        let (x, y) = (x.rem_euclid(n), y.rem_euclid(n));
                        let k = if x != 0 && y != 0 { 2 } else { 1 };
                        terms.push((k, sym(&grp, &[x, y])));
                    }
                    if !q.is_zero(&basis.vector(&terms).map_err(e)?).map_err(e)? {
                        return Err(format!("δ({a},{b}) != 0 in B2(C{n}) ⊗ Q"));
                    }
                }
            }
        }
    }
    Ok("N <= 30, δ for N <= 20".into())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn small_groups() -> Vec<FinAbGroup> {
    let mut out: Vec<FinAbGroup> = (1..=12).map(|n| FinAbGroup::cyclic(n).unwrap()).collect();
    for s in ["C2xC2", "C2xC4", "C2xC6", "C3xC3", "C2xC2xC2"] {
        out.push(g(s));
    }
    out
}

fn general_blowups() -> Outcome {
    let mut checked = 0usize;
    for grp in small_groups() {
        for n in 2..=4 {
            let basis = SymbolBasis::new(&grp, n).map_err(e)?;
            if basis.is_empty() {
                continue;
            }
            let q = integral(&basis)?;
            for r in 3..=n {
                for row in general_blowup_relations(&basis, r).map_err(e)?.rows() {
                    if !q.contains(row) {
                        return Err(format!("a (B{r}) row for {grp}, n={n} is not implied: {}", basis.format_vector(row)));
                    }
                    checked += 1;
                }
            }
            for (i, s) in basis.symbols().enumerate() {
                let ents = s.entries();
                let opposite = ents.iter().enumerate().any(|(x, a)| {
                    !a.is_zero() && grp.neg(a) != *a && ents.iter().skip(x + 1).any(|b| *b == grp.neg(a))
                });
                if opposite && !q.contains(&SparseVec::unit(i as u32)) {
                    return Err(format!("{s} does not vanish in B{n}({grp})"));
                }
            }
        }
    }
    Ok(format!("{checked} general rows"))
}

fn cubic_fourfold_tables() -> Outcome {
    let t = Instant::now();
    let dq = [(16, 0), (18, 0), (21, 0), (24, 0), (33, 2), (36, 3), (48, 7)];
    for (n, want) in dq {
        expect_eq(&format!("dim B4(C{n}) ⊗ Q"), dim(&FinAbGroup::cyclic(n).unwrap(), 4, Variant::Plain, Q)?, want)?;
    }
    let d2 = [(16, 1), (24, 5), (30, 10), (32, 12), (33, 3), (36, 19), (48, 50)];
    for (n, want) in d2 {
        expect_eq(&format!("dim B4(C{n}) ⊗ F2"), dim(&FinAbGroup::cyclic(n).unwrap(), 4, Variant::Plain, F2)?, want)?;
    }
    for (n, want) in [(33, 2), (36, 3), (48, 7)] {
        for p in [3, 5, 7] {
            let got = dim(&FinAbGroup::cyclic(n).unwrap(), 4, Variant::Plain, Coefficients::Prime(p))?;
            expect_eq(&format!("dim B4(C{n}) ⊗ F{p}"), got, want)?;
        }
    }
    within("n = 4 tables", t, Duration::from_secs(1800))?;
    Ok(format!("n = 4 tables in {:?}", t.elapsed()))
}

fn action_of(name: &str) -> Result<birsym::classes::ActionDescription, String> {
    preset(name).and_then(|p| p.action()).map_err(e)
}

fn beta_vanishes(name: &str, coeff: Coefficients, variant: Variant) -> Result<(bool, usize), String> {
    let a = action_of(name)?;
    let q = SymbolQuotient::new(&a.group, a.n, variant, coeff, &RationalOptions::default()).map_err(e)?;
    let v = a.beta(q.basis()).map_err(e)?;
    Ok((q.is_zero(&v).map_err(e)?, q.dim()))
}

fn nonvanishing() -> Outcome {
    let (z, _) = beta_vanishes("cubic4-C36", F2, Variant::Plain)?;
    expect_eq("β(cubic4-C36) = 0 ⊗ F2", z, false)?;
    expect_eq("β(dp1-C30) = 0 ⊗ Q, dim", beta_vanishes("dp1-C30", Q, Variant::Plain)?, (false, 33))?;
    expect_eq("β(dp1-C24) = 0 ⊗ Q, dim", beta_vanishes("dp1-C24", Q, Variant::Plain)?, (false, 23))?;
    expect_eq("β(p2-C3-diag) = 0", beta_vanishes("p2-C3-diag", Q, Variant::Plain)?.0, true)?;
    let m05 = action_of("m05bar-C5")?;
    let b5 = SymbolBasis::new(&m05.group, 2).map_err(e)?;
    expect_eq("β(m05bar-C5) = 0 over Z", integral(&b5)?.contains(&m05.beta(&b5).map_err(e)?), true)?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut count = 0;
    let grid: [(usize, &[i64]); 3] = [
        (2, &[2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 24, 30, 36, 48]),
        (3, &[2, 3, 4, 5, 6, 8, 9, 12, 16, 24, 36, 48]),
        (4, &[2, 3, 5, 6, 8, 12, 16, 24, 48]),
    ];
    for (n, orders) in grid {
        for &order in orders {
            let basis = SymbolBasis::new(&FinAbGroup::cyclic(order).unwrap(), n).map_err(e)?;
            let quotients = [Q, F2]
                .map(|c| SymbolQuotient::from_basis(basis.clone(), MINUS, c, &RationalOptions::default()).map_err(e));
            for _ in 0..3 {
                let mut w = vec![0, 1];
                w.extend((2..=n).map(|_| rng.gen_range(0..order)));
                let action = linear_pn_class(order as u32, &w).map_err(e)?;
                let v = action.beta(&basis).map_err(e)?;
                for q in &quotients {
                    let q = q.as_ref().map_err(Clone::clone)?;
                    if !q.is_zero(&v).map_err(e)? {
                        return Err(format!("β-(P^{n} ⟲ C{order}, weights {w:?}) != 0 ⊗ {}", q.coefficients()));
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("presets and {count} linear actions"))
}

fn comultiplication() -> Outcome {
    let c48 = action_of("cubic4-C48")?;
    let seq = DualSurjection::cyclic(48, 3).map_err(e)?;
    let source = SymbolBasis::new(seq.source(), 4).map_err(e)?;
    let left = SymbolBasis::new(seq.target(), 1).map_err(e)?;
    let right = SymbolBasis::new(seq.kernel(), 3).map_err(e)?;
    let delta = Comultiplication::new(&seq, &source, &left, &right).map_err(e)?;
    let image = delta.apply(&c48.beta(&source).map_err(e)?).map_err(e)?;
    let c3 = seq.target();
    let c16 = seq.kernel();
    let printed = TensorVec::outer(
        &left.vector(&[(1, sym(c3, &[1]))]).map_err(e)?,
        &right
            .vector(&[
                (1, sym(c16, &[-1, 3, -9])),
                (1, sym(c16, &[2, 3, -6])),
                (1, sym(c16, &[-4, -3, -6])),
                (1, sym(c16, &[9, 6, 12])),
            ])
            .map_err(e)?,
    );
    if image != printed {
        return Err(format!("Δ- image {} differs from the printed expression", delta.format(&image)));
    }
    let opts = RationalOptions::default();
    let plain2 = SymbolQuotient::from_basis(right.clone(), Variant::Plain, F2, &opts).map_err(e)?;
    let pair = right.vector(&[(1, sym(c16, &[-4, -3, -6])), (-1, sym(c16, &[9, 6, 12]))]).map_err(e)?;
    expect_eq("[-4,-3,-6] = [9,6,12] in B3(C16) ⊗ F2", plain2.is_zero(&pair).map_err(e)?, true)?;
    let minus2 = SymbolQuotient::from_basis(right.clone(), MINUS, F2, &opts).map_err(e)?;
    let lhs = right
        .vector(&[(1, sym(c16, &[-1, 3, -9])), (1, sym(c16, &[2, 3, -6])), (-1, sym(c16, &[1, 2, 10]))])
        .map_err(e)?;
    expect_eq("[-1,3,-9] + [2,3,-6] = [1,2,10] in B3-(C16)", minus2.is_zero(&lhs).map_err(e)?, true)?;
    let target = right.vector(&[(1, sym(c16, &[1, 2, 10]))]).map_err(e)?;
    expect_eq("[1,2,10] = 0 in B3-(C16) ⊗ F2", minus2.is_zero(&target).map_err(e)?, false)?;
    let dims = [
        dim(c16, 3, Variant::Plain, Q)?,
        dim(c16, 3, Variant::Plain, F2)?,
        dim(c16, 3, MINUS, Q)?,
        dim(c16, 3, MINUS, F2)?,
    ];
    expect_eq("B3(C16) dims (Q, F2, Q-, F2-)", dims, [3, 8, 0, 7])?;
    let all = |n: i64, k: usize| SymbolBasis::with_mode(&FinAbGroup::cyclic(n).unwrap(), k, Admissibility::All).map(|b| b.len());
    expect_eq("unrestricted symbols for (C8, 3), (C36, 4)", (all(8, 3).map_err(e)?, all(36, 4).map_err(e)?), (120, 82251))?;
    Ok("Δ- image, F2 identities and B3(C16) dimensions".into())
}

fn refined() -> Outcome {
    let c8 = action_of("cubic4-C8")?;
    let summands = c8.beta_k().map_err(e)?;
    let curve = summands.iter().find(|s| s.label == "plane-cubic-curve").ok_or("no plane-cubic-curve summand")?;
    let grp = FinAbGroup::cyclic(8).unwrap();
    let b3 = SymbolBasis::new(&grp, 3).map_err(e)?;
    let q3 = integral(&b3)?;
    let s = q3.smith();
    expect_eq("SNF B3(C8)", (s.torsion().iter().map(|x| x.to_string()).collect::<Vec<_>>(), s.free_rank), (vec!["2".into()], 0))?;
    expect_eq("plane-cubic-curve summand", curve.terms.clone(), vec![(1, sym(&grp, &[7, 2, 4]))])?;
    let v = b3.vector(&curve.terms).map_err(e)?;
    expect_eq("order of [7,2,4]", q3.element_order(&v).to_string(), "2".to_string())?;

    let c3 = FinAbGroup::cyclic(3).unwrap();
    let b2 = SymbolBasis::new(&c3, 2).map_err(e)?;
    let b1 = SymbolBasis::new(&c3, 1).map_err(e)?;
    let q1 = integral(&b1)?;
    let cubic = action_of("cubic-surface-C3")?;
    let dp1 = action_of("dp1-C3")?;
    expect_eq("β(cubic-surface-C3)", cubic.beta(&b2).map_err(e)?, b2.vector(&[(1, sym(&c3, &[2, 0]))]).map_err(e)?)?;
    expect_eq("β(dp1-C3)", dp1.beta(&b2).map_err(e)?, b2.vector(&[(1, sym(&c3, &[1, 0]))]).map_err(e)?)?;
    let (ka, kb) = (cubic.beta_k().map_err(e)?, dp1.beta_k().map_err(e)?);
    let labels = |k: &[birsym::classes::RefinedSummand]| k.iter().map(|s| s.label.clone()).collect::<Vec<_>>();
    if labels(&ka) == labels(&kb) {
        return Err("β_k does not separate cubic-surface-C3 from dp1-C3".into());
    }
    for s in ka.iter().chain(&kb) {
        let v = b1.vector(&s.terms).map_err(e)?;
        if q1.contains(&v) {
            return Err(format!("summand {} vanishes in B1(C3)", s.label));
        }
    }
    Ok("[7,2,4] of order 2; labels separate the C3 surfaces".into())
}

fn burnside() -> Outcome {
    // generated C4 sector: the printed identities and the forgetful map to B2
    let p = burn2_cyclic_relations(4).map_err(e)?;
    let q = p.quotient().map_err(e)?;
    let identities: [&[(&str, i64)]; 7] = [
        &[("pt4(1,3)", 1)],
        &[("cv4(3)k(t)", 1), ("pt4(1,2)", 1), ("pt4(2,3)", -1)],
        &[("pt4(3,3)", 1), ("pt4(1,2)", 1), ("pt4(2,3)", -1)],
        &[("cv4(1)k(t)", 1), ("pt4(1,2)", -1), ("pt4(2,3)", 1)],
        &[("pt4(1,1)", 1), ("pt4(1,2)", -1), ("pt4(2,3)", 1)],
        &[("cv2(1)k(t)", 1), ("pt4(1,2)", 1), ("pt4(2,3)", 1)],
        &[("cv2(1)k^2(t)", 1)],
    ];
    for id in identities {
        if !q.contains(&p.evaluate_class(id).map_err(e)?) {
            return Err(format!("C4 identity fails: {}", p.format_vector(&p.evaluate_class(id).map_err(e)?)));
        }
    }
    for extra in [vec![("pt2(1,1)k^2", 1)], vec![("pt4(1,3)", 1), ("pt4(1,2)", 1), ("pt4(2,3)", 1), ("cv2(1)k(t)", 1)]] {
        if !q.contains(&p.evaluate_class(&extra).map_err(e)?) {
            return Err("C4 class identity fails".into());
        }
    }
    let printed = preset_presentation("burn2-C4").map_err(e)?;
    let pq = printed.quotient().map_err(e)?;
    for r in p.relations() {
        let ids: Vec<(&str, i64)> = r.row.entries().iter().map(|&(c, k)| (p.generators()[c as usize].id.as_str(), k)).collect();
        if !pq.contains(&printed.evaluate_class(&ids).map_err(e)?) {
            return Err("generated C4 relation not implied by the printed list".into());
        }
    }
    for r in printed.relations() {
        let ids: Vec<(&str, i64)> =
            r.row.entries().iter().map(|&(c, k)| (printed.generators()[c as usize].id.as_str(), k)).collect();
        if !q.contains(&p.evaluate_class(&ids).map_err(e)?) {
            return Err("printed C4 relation not implied by the generated list".into());
        }
    }
    for n in 2..=12u32 {
        let p = burn2_cyclic_relations(n).map_err(e)?;
        let basis = symbol_basis_for(n).map_err(e)?;
        let target = integral(&basis)?;
        for r in p.relations() {
            if !target.contains(&p.to_symbols(&r.row, &basis).map_err(e)?) {
                return Err(format!("a relation of the C{n} sector does not map into B2 relations"));
            }
        }
    }

    // C2 x C2
    let k = preset_presentation("burn2-C2xC2").map_err(e)?;
    let kq = k.quotient().map_err(e)?;
    for id in ["q1", "q2", "q3", "f1", "f2", "f3"] {
        if !kq.contains(&k.evaluate_class(&[(id, 1)]).map_err(e)?) {
            return Err(format!("{id} != 0"));
        }
    }
    let es = ["e1", "e2", "e3"].map(|id| k.evaluate_class(&[(id, 1)]).unwrap());
    let reduced = k.quotient_with(&es).map_err(e)?;
    let base = 12;
    let torsion: Vec<String> = reduced.smith().torsion().iter().map(|x| x.to_string()).collect();
    let free_base = reduced.smith().free_rank - (k.generators().len() - base);
    expect_eq("R/<e1,e2,e3>", (torsion, free_base), (vec!["2".into(), "2".into()], 0))?;
    for (i, c) in k.classes().iter().enumerate() {
        let zero = kq.contains(&k.class_vector(&c.name).map_err(e)?);
        expect_eq(&format!("class ({}) {} vanishes", i + 1, c.name), zero, i < 3)?;
    }

    // D6
    let d6 = preset_presentation("burn2-D6").map_err(e)?;
    let spec = ProjectionSpec { stabilizer: "C2".into(), field: "k(P1):S3-faithful".into(), noncyclic_only: true };
    let f = d6.projection_functional(&spec).map_err(e)?;
    let x = f.total(&d6.class_vector("linear-P2").map_err(e)?);
    let y = f.total(&d6.class_vector("quadric").map_err(e)?);
    expect_eq("projection on [X], [Y]", (x, y), (2, 1))?;
    Ok(format!("C4 sector, C2xC2 classes, D6 projection X:{x} Y:{y}"))
}

fn hypersurfaces() -> Outcome {
    let printed: [(&str, Vec<[i64; 4]>); 2] = [
        ("cubic4-C36", vec![[4, 24, 31, 22], [28, 24, 19, 10], [24, 12, 7, 34], [9, 5, 17, 29], [14, 26, 2, 9]]),
        ("cubic4-C48", vec![[-3, 13, 9, -27], [6, 22, 9, -18], [-12, 4, -9, -18], [40, 27, 18, 36]]),
    ];
    let mut failures = Vec::new();
    for (name, list) in printed {
        let Preset::Hypersurface(h) = preset(name).map_err(e)? else {
            return Err(format!("{name} is not a hypersurface preset"));
        };
        let grp = h.group().clone();
        let action = h.to_action().map_err(e)?;
        let got: Vec<Symbol> = action.beta_terms().map_err(e)?.into_iter().map(|t| t.1).collect();
        let mut best: Option<(usize, Vec<String>, Vec<String>)> = None;
        for sigma in [grp.identity_automorphism(), grp.negation()] {
            let mut unmatched: Vec<Symbol> = got.iter().map(|s| s.map(&sigma)).collect();
            let mut missing = Vec::new();
            for s in &list {
                let want = sym(&grp, s);
                match unmatched.iter().position(|x| *x == want) {
                    Some(k) => {
                        unmatched.remove(k);
                    }
                    None => missing.push(format!("{s:?}")),
                }
            }
            let extra: Vec<String> = unmatched.iter().map(|s| s.to_string()).collect();
            if best.as_ref().is_none_or(|b| missing.len() + extra.len() < b.0) {
                best = Some((missing.len() + extra.len(), missing, extra));
            }
        }
        let (misfit, missing, extra) = best.expect("two automorphisms tried");
        if misfit > 0 {
            failures.push(format!(
                "{name}: printed {} not computed; computed (after the best automorphism) {} not printed",
                missing.join(" "),
                extra.join(" ")
            ));
        }
    }
    let Preset::Hypersurface(h48) = preset("cubic4-C48").map_err(e)? else { unreachable!() };
    for i in [0, 1] {
        expect_eq(&format!("e{i} on cubic4-C48"), h48.fixed_weights(i).map_err(e)?, CoordinatePoint::NotOnX)?;
    }
    if birsym::classes::DiagonalHypersurface::new("bad", 5, &[0, 1, 2], 3, vec![vec![3, 0, 0], vec![0, 3, 0]]).is_ok() {
        failures.push("a non-semi-invariant polynomial was accepted".into());
    }
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    Ok("C36 and C48 lists up to a global automorphism".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("cyclic dimension table", cyclic_table),
        ("closed formulas for C_p", closed_formulas),
        ("noncyclic dimension table", noncyclic_table),
        ("integral structure of small groups", structure),
        ("torsion of [a,0]+[-a,0]", torsion),
        ("general blow-up relations follow from two-term ones", general_blowups),
        ("cubic fourfold tables", cubic_fourfold_tables),
        ("nonvanishing verdicts", nonvanishing),
        ("comultiplication obstruction", comultiplication),
        ("refined invariant", refined),
        ("Burnside presentations", burnside),
        ("hypersurface analyzer", hypersurfaces),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
