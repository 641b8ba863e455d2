//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! All checks are exact; the only tolerances are the wall-clock bounds below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ncgeom::algebra::{double_quiver, AlgebraElement, DimensionVector, NecklaceElement, NecklaceKey, Quiver};
use ncgeom::comm::{span_rank, Polynomial};
use ncgeom::dder::{contract, partial, reduced_contract, DoubleDerivation};
use ncgeom::forms::{dr_project, NcForm};
use ncgeom::rep::{invariance_check, rep_form_dr, rep_setup, trace_fn, vdb_double_derivation, vdb_one_forms, RepSetup};
use ncgeom::syntax::parse_quiver;
use ncgeom::{sample, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Per-run bound for the canonical pipeline.
const KR_RUN_LIMIT: Duration = Duration::from_secs(10);
/// Bound for the whole suite.
const SUITE_LIMIT: Duration = Duration::from_secs(60);
/// Randomized cases per property in criterion 7.
const PROPERTY_CASES: u64 = 200;

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sign(n: usize) -> Rational {
    Rational::from_integer(if n.is_multiple_of(2) { 1 } else { -1 }.into())
}

fn quiver_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../quivers")
}

fn jordan_double() -> Arc<Quiver> {
    Arc::new(double_quiver(&Quiver::jordan()).unwrap())
}

fn a2_double() -> Arc<Quiver> {
    Arc::new(double_quiver(&Quiver::linear(2)).unwrap())
}

fn cyclic_double() -> Arc<Quiver> {
    let arrows = [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("l", "1", "1")]
        .map(|(n, t, h)| (n.to_string(), t.to_string(), h.to_string()));
    Arc::new(double_quiver(&Quiver::new(["1", "2", "3"], arrows).unwrap()).unwrap())
}

fn calculus_quivers() -> Vec<Arc<Quiver>> {
    vec![jordan_double(), a2_double(), cyclic_double(), Arc::new(double_quiver(&Quiver::loops(2)).unwrap())]
}

fn setup(q: &Arc<Quiver>, dims: &[usize]) -> RepSetup {
    rep_setup(q, DimensionVector::new(q, dims.to_vec()).unwrap()).unwrap()
}

/// Jordan double at N = 1, 2, 3 and A₂ double at every v with v₁ + v₂ ≤ 3.
fn small_setups() -> Vec<RepSetup> {
    let (j, a) = (jordan_double(), a2_double());
    let mut out: Vec<RepSetup> = (1..=3).map(|n| setup(&j, &[n])).collect();
    out.extend([[1, 1], [1, 2], [2, 1]].iter().map(|d| setup(&a, d)));
    out
}

fn canonical_pipeline() -> Check {
    let bin = env!("CARGO_BIN_EXE_ncgeom");
    let cases: [(&str, &str, usize); 5] = [
        ("jordan.q", "1", 2),
        ("jordan.q", "2", 8),
        ("jordan.q", "3", 18),
        ("a2-double.q", "1,1", 2),
        ("a2-double.q", "2,3", 12),
    ];
    let mut slowest = Duration::ZERO;
    for (file, dim, listed) in cases {
        let path = quiver_dir().join(file);
        let q = parse_quiver(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let dims: Vec<usize> = dim.split(',').map(|d| d.parse().unwrap()).collect();
        // 2·Σ_{α∈Q₁} v_h(α)·v_t(α) over the arrows of the undoubled quiver
        let expected: usize = (0..q.num_original_arrows())
            .map(|a| 2 * dims[q.head(a)] * dims[q.tail(a)])
            .sum();
        ensure(expected == listed, || format!("{file} --dim {dim}: rank oracle {expected} != listed {listed}"))?;

        let start = Instant::now();
        let out = Command::new(bin)
            .args(["--json", "kr"])
            .arg(&path)
            .args(["--dim", dim, "--canonical"])
            .output()
            .unwrap();
        let took = start.elapsed();
        slowest = slowest.max(took);
        let tag = format!("{file} --dim {dim}");
        ensure(out.status.code() == Some(0), || format!("{tag}: exit {:?}", out.status.code()))?;
        let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        ensure(r["closed"] == true, || format!("{tag}: not closed"))?;
        ensure(r["bisymplectic"] == "yes", || format!("{tag}: bisymplectic = {}", r["bisymplectic"]))?;
        ensure(r["canonical_match"] == true, || format!("{tag}: canonical_match = {}", r["canonical_match"]))?;
        ensure(r["rank"] == expected, || format!("{tag}: rank {} != {expected}", r["rank"]))?;
        ensure(r["num_vars"] == expected, || format!("{tag}: num_vars {} != {expected}", r["num_vars"]))?;
        ensure(took < KR_RUN_LIMIT, || format!("{tag}: took {took:?}"))?;
    }
    Ok(format!("5 runs, ranks 2/8/18/2/12, slowest {slowest:?}"))
}

/// `i_Θ` by the Leibniz rule on the factorization `p₀·dα₁·p₁·…·dα_n·p_n`,
/// followed by `a ⊗ b ↦ (-1)^{|a||b|} b·a`.
fn brute_reduced_contraction(theta: &DoubleDerivation, u: &NcForm) -> NcForm {
    let q = u.quiver();
    let degree = u.degree().unwrap();
    let mut out = NcForm::zero(q, degree.saturating_sub(1));
    for (w, c) in u.terms() {
        let mut factors = Vec::new();
        for (k, p) in w.paths().iter().enumerate() {
            factors.push((NcForm::from_element(&AlgebraElement::path(q, p.clone())), None));
            if let Some(&a) = w.arrows().get(k) {
                factors.push((NcForm::d_arrow(q, a), Some(a)));
            }
        }
        let one = NcForm::from_element(&AlgebraElement::unit(q));
        let mut prefix_degree = 0;
        for k in 0..factors.len() {
            let Some(a) = factors[k].1 else { continue };
            let left = factors[..k].iter().fold(one.clone(), |acc, f| &acc * &f.0);
            let right = factors[k + 1..].iter().fold(one.clone(), |acc, f| &acc * &f.0);
            for ((t1, t2), tc) in theta.value(a).terms() {
                let a_side = &left * &NcForm::from_element(&AlgebraElement::path(q, t1.clone()));
                let b_side = &NcForm::from_element(&AlgebraElement::path(q, t2.clone())) * &right;
                let (da, db) = (prefix_degree, degree - prefix_degree - 1);
                let term = (&b_side * &a_side).scale(&(sign(prefix_degree + da * db) * tc * c));
                out = &out + &term;
            }
            prefix_degree += 1;
        }
    }
    out
}

fn reduced_contraction_golden() -> Check {
    let q = jordan_double();
    let (dx, dxs) = (NcForm::d_arrow(&q, 0), NcForm::d_arrow(&q, 1));
    let omega = &dx * &dxs;
    let (px, pxs) = (partial(&q, "x").unwrap(), partial(&q, "x~").unwrap());
    let ix = reduced_contract(&px, &omega).unwrap();
    let ixs = reduced_contract(&pxs, &omega).unwrap();
    ensure(ix == dxs, || format!("ι_∂x(dx dx~) = {ix}"))?;
    ensure(ixs == -&dx, || format!("ι_∂x~(dx dx~) = {ixs}"))?;
    ensure(brute_reduced_contraction(&px, &omega) == dxs, || "oracle disagrees on ι_∂x".into())?;
    ensure(brute_reduced_contraction(&pxs, &omega) == -&dx, || "oracle disagrees on ι_∂x~".into())?;

    let mut nonzero = 0;
    let cases = 300;
    for seed in 0..cases {
        let qs = calculus_quivers();
        let q = &qs[(seed % 4) as usize];
        let mut r = rng(seed);
        let theta = sample::double_derivation(q, &mut r, 2, 2);
        let u = sample::form(q, &mut r, 1 + (seed % 3) as usize, 3, 2);
        let fast = reduced_contract(&theta, &u).unwrap();
        ensure(fast == brute_reduced_contraction(&theta, &u), || format!("seed {seed}: oracle disagrees on {u}"))?;
        nonzero += usize::from(!fast.is_zero());
    }
    Ok(format!("golden values exact; {cases} random cross-checks ({nonzero} nonzero)"))
}

fn trace_descent() -> Check {
    let setups = small_setups();
    let cases = 240;
    let mut nonzero = 0;
    for seed in 0..cases {
        let s = &setups[(seed % setups.len() as u64) as usize];
        let q = s.quiver();
        let mut r = rng(1000 + seed);
        let (x, y) = (sample::element(q, &mut r, 3, 3), sample::element(q, &mut r, 3, 3));
        let comm = &(&x * &y) - &(&y * &x);
        ensure(trace_fn(s, &comm).unwrap().is_zero(), || format!("seed {seed}: trace of [x, y] nonzero"))?;
        nonzero += usize::from(!trace_fn(s, &(&x * &y)).unwrap().is_zero());
    }
    Ok(format!("{cases} pairs over {} setups ({nonzero} with nonzero Tr(xy))", setups.len()))
}

fn invariance() -> Check {
    let mut setups = small_setups();
    setups.push(setup(&cyclic_double(), &[1, 2, 1]));
    let classes = 60;
    for seed in 0..classes {
        let s = &setups[(seed % setups.len() as u64) as usize];
        let q = s.quiver();
        let mut r = rng(2000 + seed);
        let p = sample::cycle(q, &mut r, 4).unwrap();
        let key = NecklaceKey::of_path(&p, q).unwrap();
        let f = trace_fn(s, &NecklaceElement::of(&AlgebraElement::path(q, key.representative())).lift()).unwrap();
        ensure(!f.is_zero(), || format!("seed {seed}: trace of a cycle vanished"))?;
        ensure(invariance_check(s, &f), || format!("seed {seed}: trace of {} not invariant", p.display(q)))?;
    }
    let (mut rejected, mut traces) = (0, 0);
    for s in &setups {
        let q = s.quiver();
        for k in 0..s.num_vars() {
            let x = Polynomial::var(s.num_vars(), k);
            let (a, _, _) = s.var_entry(k);
            // a loop at a 1-dimensional vertex has a single coordinate, its own trace
            if q.head(a) == q.tail(a) && s.dims().get(q.head(a)) == 1 {
                ensure(trace_fn(s, &AlgebraElement::arrow(q, a)).unwrap() == x, || format!("{} is not Tr", s.ring().name(k)))?;
                ensure(invariance_check(s, &x), || format!("scalar loop {} rejected", s.ring().name(k)))?;
                traces += 1;
            } else {
                ensure(!invariance_check(s, &x), || format!("coordinate {} passed", s.ring().name(k)))?;
                rejected += 1;
            }
        }
    }
    Ok(format!("{classes} necklace traces invariant; {rejected} coordinates rejected, {traces} scalar loops equal their trace"))
}

fn closedness_transfer() -> Check {
    let mut setups = small_setups();
    setups.push(setup(&cyclic_double(), &[1, 1, 2]));
    let cases = 60;
    let mut nonzero = 0;
    for seed in 0..cases {
        let s = &setups[(seed % setups.len() as u64) as usize];
        let q = s.quiver();
        let mut r = rng(3000 + seed);
        let u = sample::form(q, &mut r, 1, 3, 2);
        let w = dr_project(&u.d().unwrap()).unwrap();
        let omega = rep_form_dr(s, &w).unwrap();
        ensure(omega.d().unwrap().is_zero(), || format!("seed {seed}: trace form of {w} not closed"))?;
        nonzero += usize::from(!omega.is_zero());
    }
    ensure(nonzero * 2 >= cases as usize, || format!("only {nonzero} of {cases} trace forms nonzero"))?;
    Ok(format!("{cases} exact classes, {nonzero} with nonzero trace form"))
}

fn vdb_functor() -> Check {
    let mut setups = small_setups();
    setups.push(setup(&a2_double(), &[2, 3]));
    setups.push(setup(&Arc::new(double_quiver(&Quiver::loops(2)).unwrap()), &[2]));
    for s in &setups {
        let r = vdb_one_forms(s);
        ensure(r.generators == s.num_vars() && r.num_vars == s.num_vars(), || format!("generator count {r:?}"))?;
        ensure(r.bijective && r.relations_hold, || format!("one-form check failed: {r:?}"))?;
    }
    let mut ranks = Vec::new();
    for d in 1..=3 {
        let q = Arc::new(Quiver::loops(d));
        for n in 1..=3 {
            let s = setup(&q, &[n]);
            let mut all = Vec::new();
            for a in 0..d {
                let fam = vdb_double_derivation(&s, &DoubleDerivation::partial(&q, a)).unwrap();
                for i in 0..n {
                    for j in 0..n {
                        let expect = ncgeom::comm::PolyDerivation::coordinate(s.num_vars(), s.var(a, j, i));
                        ensure(fam[i * n + j] == expect, || format!("d={d} N={n}: component ({i},{j}) of ∂/∂x{}", a + 1))?;
                    }
                }
                all.extend(fam);
            }
            let rank = span_rank(&all);
            ensure(rank == d * n * n, || format!("d={d} N={n}: rank {rank} != {}", d * n * n))?;
            ranks.push(rank);
        }
    }
    Ok(format!("one-form checks on {} setups; coordinate ranks {ranks:?}", setups.len()))
}

fn calculus_properties(suite_start: Instant) -> Check {
    let qs = calculus_quivers();
    let pick = |seed: u64| &qs[(seed % qs.len() as u64) as usize];
    for seed in 0..PROPERTY_CASES {
        let q = pick(seed);
        let mut r = rng(4000 + seed);
        let du = (seed % 3) as usize;
        let dv = ((seed / 3) % 2) as usize;
        let u = sample::form(q, &mut r, du, 2, 2);
        let v = sample::form(q, &mut r, dv, 2, 2);

        ensure(u.d().unwrap().d().unwrap().is_zero(), || format!("seed {seed}: d² ≠ 0"))?;

        let lhs = (&u * &v).d().unwrap();
        let rhs = &(&u.d().unwrap() * &v) + &(&u * &v.d().unwrap()).scale(&sign(du));
        ensure(lhs == rhs, || format!("seed {seed}: Leibniz for d"))?;

        let theta = sample::double_derivation(q, &mut r, 2, 2);
        let lhs = contract(&theta, &(&u * &v)).unwrap();
        let mut rhs = contract(&theta, &u).unwrap().right_mul(&v);
        rhs.add_assign(&contract(&theta, &v).unwrap().left_mul(&u).scale(&sign(du)));
        ensure(lhs == rhs, || format!("seed {seed}: Leibniz for contraction"))?;

        let uv = dr_project(&(&u * &v)).unwrap();
        let vu = dr_project(&(&v * &u)).unwrap();
        ensure(uv == vu.scale(&sign(du * dv)), || format!("seed {seed}: DR super-commutativity"))?;

        let a = sample::form(q, &mut r, du.min(2), 2, 2);
        let b = sample::form(q, &mut r, 2 - du.min(2), 2, 2);
        let ab = reduced_contract(&theta, &(&a * &b)).unwrap();
        let ba = reduced_contract(&theta, &(&b * &a)).unwrap();
        let (da, db) = (du.min(2), 2 - du.min(2));
        ensure(ab == ba.scale(&sign(da * db)), || format!("seed {seed}: ι does not descend to DR²"))?;

        let (x, y) = (sample::element(q, &mut r, 3, 3), sample::element(q, &mut r, 3, 3));
        ensure(NecklaceElement::of(&(&x * &y)) == NecklaceElement::of(&(&y * &x)), || format!("seed {seed}: necklace cyclicity"))?;
    }
    let total = suite_start.elapsed();
    ensure(total < SUITE_LIMIT, || format!("suite took {total:?}"))?;
    Ok(format!("6 properties × {PROPERTY_CASES} cases; suite time {total:?}"))
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 7] = [
        ("canonical KR pipeline", Box::new(canonical_pipeline)),
        ("reduced contraction golden values", Box::new(reduced_contraction_golden)),
        ("trace descent", Box::new(trace_descent)),
        ("conjugation invariance", Box::new(invariance)),
        ("closedness transfer", Box::new(closedness_transfer)),
        ("functor on forms and derivations", Box::new(vdb_functor)),
        ("calculus property suites", Box::new(move || calculus_properties(start))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(ToString::to_string))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 7 criteria passed in {:?}", 7 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
