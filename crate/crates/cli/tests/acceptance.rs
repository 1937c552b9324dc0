//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every criterion runs even if an earlier one fails; the test fails at the
//! end if any line is FAIL. All comparisons are exact; the only tolerances
//! are the wall-clock budgets below.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rips_kunneth_core::flag::{build_flag_complex, chain_complex, Limits};
use rips_kunneth_core::homology::HomologyCalculator;
use rips_kunneth_core::kunneth::KunnethReport;
use rips_kunneth_core::relation::semi_uniform_product;
use rips_kunneth_core::spaces::{cycle, erdos_renyi, power_cycle, rp2_flag};
use rips_kunneth_core::*;

/// Wall-clock budgets per criterion.
const BUDGET_TORUS_EQUAL: Duration = Duration::from_secs(5);
const BUDGET_TORUS_MIXED: Duration = Duration::from_secs(60);
const BUDGET_ODD_SPHERE: Duration = Duration::from_secs(1);
const BUDGET_TOR_TERM: Duration = Duration::from_secs(120);
const BUDGET_FIELD: Duration = Duration::from_secs(60);

const RELATION_PAIRS: usize = 200;
const METRIC_PAIRS: usize = 50;
const TUPLE_PAIRS: usize = 200;
const SNF_MATRICES: usize = 500;
const GROUP_PAIRS: usize = 500;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn z(rank: usize, torsion: &[u32]) -> FgAbelianGroup {
    FgAbelianGroup::new(rank, torsion.iter().copied())
}

fn within(label: &str, budget: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < budget, format!("{label}: took {took:?}, budget {budget:?}"))?;
    Ok(took)
}

/// Every comparable degree agrees and every requested degree was computed.
fn fully_matched(r: &KunnethReport) -> Result<(), String> {
    ensure(r.complex_valid, "product complex failed ∂∘∂ = 0")?;
    for d in &r.degrees {
        ensure(d.matches() == Some(true), format!("degree {}: computed {:?}, predicted {:?}", d.q, d.computed, d.predicted))?;
    }
    Ok(())
}

fn computed(r: &KunnethReport) -> Vec<FgAbelianGroup> {
    r.degrees.iter().map(|d| d.computed.clone().unwrap_or_else(|| z(usize::MAX, &[]))).collect()
}

/// Complexes built by the suite, rechecked for χ at the end.
#[derive(Default)]
struct Built(Vec<(String, AbstractChainComplex)>);

impl Built {
    fn graph(&mut self, label: &str, g: &Graph) {
        let k = build_flag_complex(g, g.vertex_count(), &Limits::unbounded()).expect("unbounded build");
        self.0.push((label.into(), chain_complex(&k)));
    }
}

fn criterion_1(built: &mut Built) -> Check {
    let start = Instant::now();
    let c4 = cycle(4).unwrap();
    let r = verify_graph_product(&c4, &c4, 3, Coefficients::Integers).map_err(|e| e.to_string())?;
    let took = within("C4 ⊠ C4", BUDGET_TORUS_EQUAL, start)?;
    fully_matched(&r)?;
    let want = [z(1, &[]), z(2, &[]), z(1, &[]), z(0, &[])];
    ensure(computed(&r) == want, format!("homology {:?}", computed(&r)))?;
    built.graph("C4 ⊠ C4", &strong_product(&c4, &c4).unwrap());
    Ok(format!("H = (ℤ, ℤ², ℤ, 0), all match, {took:?}"))
}

fn criterion_2(built: &mut Built) -> Check {
    let start = Instant::now();
    let (g, h) = (power_cycle(8, 3).unwrap(), cycle(4).unwrap());
    let r = verify_graph_product(&g, &h, 4, Coefficients::Integers).map_err(|e| e.to_string())?;
    let took = within("power_cycle(8,3) ⊠ C4", BUDGET_TORUS_MIXED, start)?;
    fully_matched(&r)?;
    for q in 0..=4 {
        let want = torus_closed_form(1, 0, q);
        let expect_free = if [0, 1, 3, 4].contains(&q) { z(1, &[]) } else { z(0, &[]) };
        ensure(want == expect_free, format!("closed form at q={q} is {want}"))?;
        ensure(r.computed(q) == Some(&want), format!("q={q}: computed {:?}, closed form {want}", r.computed(q)))?;
    }
    built.graph("power_cycle(8,3) ⊠ C4", &strong_product(&g, &h).unwrap());
    Ok(format!("ℤ at q ∈ {{0,1,3,4}}, 0 at q=2, equals closed form (l=1, l'=0), {took:?}"))
}

fn criterion_3(built: &mut Built) -> Check {
    let start = Instant::now();
    let g = power_cycle(8, 3).unwrap();
    let k = build_flag_complex(&g, 4, &Limits::unbounded()).map_err(|e| e.to_string())?;
    let c = chain_complex(&k);
    let h = HomologyCalculator::new(&c, Coefficients::Integers).graded_homology(3).map_err(|e| e.to_string())?;
    let took = within("power_cycle(8,3)", BUDGET_ODD_SPHERE, start)?;
    built.graph("power_cycle(8,3)", &g);
    let groups: Vec<FgAbelianGroup> = h.iter().cloned().collect();
    let homology_ok = groups == [z(1, &[]), z(0, &[]), z(0, &[]), z(1, &[])];
    let f = k.f_vector();
    let f_ok = f == [8, 24, 24, 8];
    match (homology_ok, f_ok) {
        (true, true) => Ok(format!("H = (ℤ, 0, 0, ℤ), f-vector {f:?}, {took:?}")),
        (true, false) => Err(format!(
            "homology (ℤ, 0, 0, ℤ) correct, but f-vector is {f:?}, expected [8, 24, 24, 8] \
             (the graph is K_{{2,2,2,2}}: C(4,3)·8 = 32 triangles and 2⁴ = 16 tetrahedra)"
        )),
        _ => Err(format!("homology {groups:?}, f-vector {f:?}")),
    }
}

fn rp2_complex() -> AbstractChainComplex {
    chain_complex(&build_flag_complex(&rp2_flag().unwrap(), 5, &Limits::unbounded()).unwrap())
}

fn criterion_4(built: &mut Built) -> Check {
    let start = Instant::now();
    let a = rp2_complex();
    let r = verify_algebraic(&a, &a, 4, Coefficients::Integers).map_err(|e| e.to_string())?;
    let took = within("C(RP²) ⊗ C(RP²)", BUDGET_TOR_TERM, start)?;
    fully_matched(&r)?;
    for (q, want) in [(2, z(0, &[2])), (3, z(0, &[2])), (4, z(0, &[]))] {
        ensure(r.computed(q) == Some(&want), format!("q={q}: computed {:?}, expected {want}", r.computed(q)))?;
    }
    let tor3 = &r.degrees[3].predicted.as_ref().unwrap().tor_part;
    ensure(*tor3 == z(0, &[2]), format!("Tor part at q=3 is {tor3}, expected ℤ/2"))?;
    built.0.push(("C(RP²) ⊗ C(RP²)".into(), tensor_chain_complex(&a, &a, 4, &Limits::unbounded()).unwrap()));
    built.0.push(("C(RP²)".into(), a));
    Ok(format!("H₂ = ℤ/2, H₃ = ℤ/2 (pure Tor), H₄ = 0, all match, {took:?}"))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let a = rp2_complex();
    let r = verify_algebraic(&a, &a, 4, Coefficients::Prime(2)).map_err(|e| e.to_string())?;
    let took = within("C(RP²) ⊗ C(RP²) over 𝔽₂", BUDGET_FIELD, start)?;
    fully_matched(&r)?;
    let dims: Vec<usize> = computed(&r).iter().map(FgAbelianGroup::rank).collect();
    ensure(dims == [1, 2, 3, 2, 1], format!("dims {dims:?}"))?;
    for d in &r.degrees {
        let p = d.predicted.as_ref().unwrap();
        ensure(p.tor_part.is_zero(), format!("nonzero Tor part at q={}", d.q))?;
        let conv: usize = (0..=d.q)
            .map(|i| r.factor_groups[0].get(i).unwrap().rank() * r.factor_groups[1].get(d.q - i).unwrap().rank())
            .sum();
        ensure(conv == dims[d.q], format!("convolution {conv} ≠ {} at q={}", dims[d.q], d.q))?;
    }
    Ok(format!("dims (1,2,3,2,1) = convolution, Tor part 0, {took:?}"))
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.0..=1.0);
    erdos_renyi(n, p, rng.gen()).unwrap()
}

fn random_metric(rng: &mut ChaCha8Rng) -> FiniteMetricSpace {
    let n = rng.gen_range(1..=5);
    let mut d = vec![BigRational::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = BigRational::new(rng.gen_range(0..=12).into(), rng.gen_range(1..=6).into());
            d[i * n + j] = v.clone();
            d[j * n + i] = v;
        }
    }
    FiniteMetricSpace::new(n, d).unwrap()
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..RELATION_PAIRS {
        let (g, h) = (random_graph(&mut rng, 6), random_graph(&mut rng, 6));
        let s = strong_product(&g, &h).unwrap();
        let u = semi_uniform_product(&g, &h).unwrap();
        ensure(relation_equals(&s, &u).unwrap(), format!("pair {i}: {g:?} × {h:?}"))?;
    }
    for i in 0..METRIC_PAIRS {
        let (a, b) = (random_metric(&mut rng), random_metric(&mut rng));
        let v = BigRational::new(rng.gen_range(0..=12).into(), rng.gen_range(1..=6).into());
        let t = if rng.gen() { Threshold::open(v) } else { Threshold::closed(v) }.unwrap();
        let lhs = relation_from_metric(&max_metric_product(&a, &b).unwrap(), &t);
        let rhs = strong_product(&relation_from_metric(&a, &t), &relation_from_metric(&b, &t)).unwrap();
        ensure(relation_equals(&lhs, &rhs).unwrap(), format!("metric pair {i}"))?;
    }
    Ok(format!("{RELATION_PAIRS} graph pairs and {METRIC_PAIRS} metric pairs agree exactly"))
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..TUPLE_PAIRS {
        let (g, h) = (random_graph(&mut rng, 5), random_graph(&mut rng, 5));
        let p = strong_product(&g, &h).unwrap();
        for k in 0..=3 {
            let (a, b, c) = (tuple_count(&g, k).unwrap(), tuple_count(&h, k).unwrap(), tuple_count(&p, k).unwrap());
            ensure(c == &a * &b, format!("pair {i}, k={k}: {c} ≠ {a}·{b}"))?;
        }
    }
    Ok(format!("{TUPLE_PAIRS} pairs, k ≤ 3"))
}

/// Rank over ℚ by fraction-exact Gaussian elimination.
#[allow(clippy::needless_range_loop)]
fn rational_rank(rows: usize, cols: usize, data: &[i64]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        (0..rows).map(|r| (0..cols).map(|c| BigRational::from_integer(data[r * cols + c].into())).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            let f = &m[r][c] / &m[rank][c];
            for k in c..cols {
                let t = &f * &m[rank][k];
                m[r][k] -= t;
            }
        }
        rank += 1;
    }
    rank
}

fn random_group(rng: &mut ChaCha8Rng) -> FgAbelianGroup {
    let torsion: Vec<u32> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..30)).collect();
    FgAbelianGroup::new(rng.gen_range(0..3), torsion)
}

fn criterion_8(built: &Built) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..SNF_MATRICES {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let data: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-9..=9)).collect();
        let m = SparseIntMatrix::from_dense(r, c, &data).unwrap();
        let s = smith_normal_form_with_transforms(&m);
        let t = s.transforms().unwrap();
        ensure(t.u.mul(&m.to_dense()).mul(&t.v) == s.diagonal_matrix(), format!("matrix {i}: U·M·V ≠ D"))?;
        let d: Vec<BigInt> = s.invariant_factors().to_vec();
        ensure(d.iter().all(Signed::is_positive), format!("matrix {i}: nonpositive factor {d:?}"))?;
        ensure(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])), format!("matrix {i}: chain broken {d:?}"))?;
        ensure(s.rank() == rational_rank(r, c, &data), format!("matrix {i}: rank {} vs oracle", s.rank()))?;
        ensure(smith_normal_form(&m).invariant_factors() == d.as_slice(), format!("matrix {i}: sparse path differs"))?;
    }
    for i in 0..GROUP_PAIRS {
        let (a, b, c) = (random_group(&mut rng), random_group(&mut rng), random_group(&mut rng));
        let bc = direct_sum([&b, &c]);
        ensure(tensor_groups(&a, &b) == tensor_groups(&b, &a), format!("pair {i}: ⊗ not symmetric"))?;
        ensure(tor_groups(&a, &b) == tor_groups(&b, &a), format!("pair {i}: Tor not symmetric"))?;
        ensure(
            tensor_groups(&a, &bc) == direct_sum([&tensor_groups(&a, &b), &tensor_groups(&a, &c)]),
            format!("pair {i}: ⊗ not additive"),
        )?;
        ensure(
            tor_groups(&a, &bc) == direct_sum([&tor_groups(&a, &b), &tor_groups(&a, &c)]),
            format!("pair {i}: Tor not additive"),
        )?;
    }
    for (label, c) in &built.0 {
        ensure(!c.is_truncated(), format!("{label}: complex is truncated"))?;
        let top = c.dims().len().saturating_sub(1);
        let h = HomologyCalculator::new(c, Coefficients::Rationals).graded_homology(top).map_err(|e| e.to_string())?;
        let chi: i64 = h.ranks().iter().enumerate().map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        ensure(chi == c.euler_characteristic(), format!("{label}: Σ(−1)^q β_q = {chi} ≠ χ = {}", c.euler_characteristic()))?;
    }
    Ok(format!(
        "{SNF_MATRICES} matrices, {GROUP_PAIRS} group triples, χ identity on {} complexes",
        built.0.len()
    ))
}

fn criterion_9() -> Check {
    let bin = env!("CARGO_BIN_EXE_rips-kunneth");
    let run = |extra: &[&str]| {
        let mut args = vec!["kunneth", "--cycle", "4", "--cycle", "4", "--max-q", "2", "--algebraic", "--no-timings"];
        args.extend_from_slice(extra);
        Command::new(bin).args(&args).output().map_err(|e| e.to_string())
    };
    let control = run(&[])?;
    ensure(control.status.code() == Some(0), format!("unmutated run exited {:?}", control.status.code()))?;
    // C4 ⊗ C4 lives in degrees 0..=2.
    for q in 1..=2 {
        let out = run(&["--flip-sign", &q.to_string()])?;
        ensure(out.status.code() == Some(4), format!("flip in ∂_{q}: exit {:?}", out.status.code()))?;
    }
    let empty = run(&["--flip-sign", "3"])?;
    ensure(empty.status.code() == Some(2), format!("flip in empty ∂₃: exit {:?}", empty.status.code()))?;
    Ok("unmutated torus exits 0; one flipped sign in ∂₁ or ∂₂ exits 4".into())
}

#[test]
fn acceptance() {
    let mut built = Built::default();
    let results = [
        ("1 torus, equal scales", criterion_1(&mut built)),
        ("2 torus, mixed scales", criterion_2(&mut built)),
        ("3 odd sphere", criterion_3(&mut built)),
        ("4 nonzero Tor term", criterion_4(&mut built)),
        ("5 field coefficients", criterion_5()),
        ("6 product relation identity", criterion_6()),
        ("7 tuple-count multiplicativity", criterion_7()),
        ("8 exact algebra", criterion_8(&built)),
        ("9 falsification sensitivity", criterion_9()),
    ];
    let mut failed = Vec::new();
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("criterion {name}: PASS — {msg}"),
            Err(msg) => {
                println!("criterion {name}: FAIL — {msg}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
