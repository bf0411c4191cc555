use std::process::ExitCode;
use std::time::Instant;

use krfl::demazure::{check_demazure_relations, check_gradrel_relations, local_weyl, rect_demazure};
use krfl::linalg::unit;
use krfl::lweight::{blocks_cyclic, general_position, kr_monomial, q_factorize, KRFactor, LWeight};
use krfl::module::{check_axioms, GradedGtModule};
use krfl::typea::{char_simple, weyl_dim, Character, Partition, RootSystemA, Weight};
use krfl::verify::{Report, Verifier};

const SEED: u64 = 2024;

/// `n ∈ {1,2,3}`, every node, every `ξ ⊢ m ≤ 4`; `sl_2` also up to `m = 6`.
fn cases() -> Vec<(usize, usize, Partition)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let top = if n == 1 { 6 } else { 4 };
        for i in 1..=n {
            for m in 1..=top {
                out.extend(Partition::all(m).into_iter().map(|xi| (n, i, xi)));
            }
        }
    }
    out
}

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { failures: Vec::new(), summary: String::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(&mut self, r: &Report) {
        if !r.passed() {
            let bad: Vec<String> = r
                .details
                .iter()
                .filter(|d| !d.ok)
                .map(|d| format!("{}: expected {}, got {}", d.check, d.expected, d.got))
                .collect();
            self.failures.push(format!("{} {} [{}]: {}", r.name, r.params, r.status, bad.join("; ")));
        }
    }
}

fn axioms(out: &mut Outcome, label: &str, m: &GradedGtModule) -> u64 {
    let rep = check_axioms(m);
    out.require(rep.is_ok(), || format!("{label}: {:?}", rep.violations));
    rep.checks
}

fn fusion_equals_demazure(v: &Verifier) -> Outcome {
    let mut out = Outcome::new();
    let cases = cases();
    for (n, i, xi) in &cases {
        let res = v
            .fusion(*n, *i, xi, &krfl::module::default_points(xi.len()))
            .and_then(|f| Ok((f, v.gen_demazure(*n, *i, &xi.conjugate())?)));
        match res {
            Ok((f, d)) => out.require(f.graded_character() == d.graded_character(), || {
                format!("n={n} i={i} xi={xi}: graded characters differ")
            }),
            Err(e) => out.failures.push(format!("n={n} i={i} xi={xi}: {e}")),
        }
    }
    out.summary = format!("{} cases", cases.len());
    out
}

fn collapsed_characters(v: &Verifier) -> Outcome {
    let mut out = Outcome::new();
    let cases = cases();
    for (n, i, xi) in &cases {
        let rs = RootSystemA::new(*n).unwrap();
        let mut want = Character::from_iter([(Weight::zero(*n), 1)]);
        for &m in xi.parts() {
            want = want.product(&char_simple(&rs, &Weight::fundamental(*n, *i).scale(m as i64)).unwrap());
        }
        let got = v.fusion(*n, *i, xi, &krfl::module::default_points(xi.len())).unwrap();
        out.require(got.graded_character().collapse() == want, || format!("n={n} i={i} xi={xi}"));
    }
    out.summary = format!("{} cases", cases.len());
    out
}

fn graded_limit_relations(v: &Verifier) -> Outcome {
    let mut out = Outcome::new();
    let cases = cases();
    let (mut checks, mut witnessed) = (0, 0);
    for (n, i, xi) in &cases {
        let f = v.fusion(*n, *i, xi, &krfl::module::default_points(xi.len())).unwrap();
        let rep = check_gradrel_relations(f.as_ref(), &unit(0), *i, xi).unwrap();
        checks += rep.checks.len();
        let bad: Vec<&str> = rep.failures().map(|c| c.relation.as_str()).collect();
        out.require(bad.is_empty(), || format!("n={n} i={i} xi={xi}: {bad:?}"));
        let wants_witness = xi.len() >= 2;
        out.require((rep.witnesses() > 0) == wants_witness, || {
            format!("n={n} i={i} xi={xi}: {} witnesses", rep.witnesses())
        });
        witnessed += usize::from(rep.witnesses() > 0);
    }
    out.summary = format!("{} cases, {checks} checks, {witnessed} cases with nonzero witnesses", cases.len());
    out
}

fn demazure_relations(built: &mut Vec<(String, GradedGtModule)>) -> Outcome {
    let mut out = Outcome::new();
    let mut count = 0;
    for n in 1..=3usize {
        let mut lams = vec![Vec::new()];
        for _ in 0..n {
            lams = lams
                .into_iter()
                .flat_map(|p: Vec<i64>| (0..=2).map(move |c| [p.clone(), vec![c]].concat()))
                .collect();
        }
        for c in lams {
            let lam = Weight::new(c);
            let m = local_weyl(n, &lam).unwrap();
            let rep = check_demazure_relations(&m, &unit(0), 1, &lam).unwrap();
            out.require(rep.is_ok(), || format!("D(1, {lam}): {:?}", rep.failures().collect::<Vec<_>>()));
            built.push((format!("D(1, {lam})"), m));
            count += 1;
        }
        for i in 1..=n {
            for ell in 1..=2u32 {
                for mult in 1..=2i64 {
                    let base = Weight::fundamental(n, i).scale(mult);
                    let lam = base.scale(ell as i64);
                    let m = rect_demazure(ell, &base).unwrap();
                    let rep = check_demazure_relations(&m, &unit(0), ell, &lam).unwrap();
                    out.require(rep.is_ok(), || format!("D({ell}, {lam}): {:?}", rep.failures().collect::<Vec<_>>()));
                    built.push((format!("D({ell}, {lam})"), m));
                    count += 1;
                }
            }
        }
    }
    out.summary = format!("{count} modules");
    out
}

fn block_dimensions(v: &Verifier) -> Outcome {
    let mut out = Outcome::new();
    let cases = cases();
    for (n, i, xi) in &cases {
        out.report(&v.verify_dim(*n, *i, xi));
    }
    out.summary = format!("{} cases", cases.len());
    out
}

fn cyclic_blocks() -> Outcome {
    let mut out = Outcome::new();
    let mut count = 0;
    for n in 1..=3 {
        for i in 1..=n {
            for m in 1..=6 {
                for xi in Partition::all(m) {
                    out.require(blocks_cyclic(n, i, &xi), || format!("n={n} i={i} xi={xi}"));
                    count += 1;
                }
            }
        }
    }
    out.summary = format!("{count} cases");
    out
}

fn length_additivity(v: &Verifier) -> Outcome {
    let mut out = Outcome::new();
    for n in 1..=3 {
        out.report(&v.verify_lemma_length(n, 100, SEED));
    }
    out.summary = "100 samples per rank".into();
    out
}

fn sl4_facts(v: &Verifier) -> Outcome {
    let mut out = Outcome::new();
    let r = v.verify_remark_sl4();
    out.report(&r);
    let rs = RootSystemA::new(3).unwrap();
    let top = weyl_dim(&rs, &Weight::new(vec![0, 2, 0])).unwrap();
    let adj = weyl_dim(&rs, &Weight::new(vec![1, 0, 1])).unwrap();
    out.require(top == 20 && adj == 15, || format!("dims {top}, {adj}"));
    out.summary = format!("{} checks", r.details.len());
    out
}

fn point_independence(v: &Verifier) -> Outcome {
    let mut out = Outcome::new();
    let cases = cases();
    for (n, i, xi) in &cases {
        out.report(&v.verify_point_independence(*n, *i, xi, 3, SEED));
    }
    out.summary = format!("{} cases, 3 point sets each", cases.len());
    out
}

fn properties(v: &Verifier, built: &[(String, GradedGtModule)]) -> Outcome {
    let mut out = Outcome::new();
    let mut axiom_checks = 0;
    let mut modules = 0;
    for (n, i, xi) in cases() {
        let f = v.fusion(n, i, &xi, &krfl::module::default_points(xi.len())).unwrap();
        axiom_checks += axioms(&mut out, &format!("fusion n={n} i={i} xi={xi}"), &f);
        let d = v.gen_demazure(n, i, &xi.conjugate()).unwrap();
        axiom_checks += axioms(&mut out, &format!("D_{i}({}) n={n}", xi.conjugate()), &d);
        modules += 2;
    }
    for (label, m) in built {
        axiom_checks += axioms(&mut out, label, m);
        modules += 1;
    }

    let singles: Vec<KRFactor> = (1..=3)
        .flat_map(|i| (-6..=6).flat_map(move |z| (1..=4).map(move |m| KRFactor::new(i, z, m))))
        .collect();
    let key = |f: &KRFactor| (f.node, std::cmp::Reverse(f.center), std::cmp::Reverse(f.len));
    let mut products = 0;
    for (a, fa) in singles.iter().enumerate() {
        for fb in std::iter::once(None).chain(singles[a..].iter().map(Some)) {
            let mut fs = vec![*fa];
            fs.extend(fb);
            let pi = fs.iter().fold(LWeight::one(), |acc, f| acc.product(&kr_monomial(f).unwrap()));
            let got = q_factorize(&pi);
            let back = got.iter().fold(LWeight::one(), |acc, f| acc.product(&kr_monomial(f).unwrap()));
            out.require(back == pi, || format!("q-factorization of {fs:?} does not multiply back"));
            if fs.len() == 1 || general_position(&fs[0], &fs[1]) {
                fs.sort_by_key(key);
                out.require(got == fs, || format!("q-factorization of {fs:?} gave {got:?}"));
            }
            products += 1;
        }
    }

    for m in 0..=8 {
        for xi in Partition::all(m) {
            out.require(xi.conjugate().conjugate() == xi, || format!("conjugate of {xi}"));
        }
    }

    let mut chars = 0;
    for n in 1..=3usize {
        let rs = RootSystemA::new(n).unwrap();
        for code in 0..3u32.pow(n as u32) {
            let lam = Weight::new((0..n).map(|k| ((code / 3u32.pow(k as u32)) % 3) as i64).collect());
            let ch = char_simple(&rs, &lam).unwrap();
            out.require(ch.is_w_invariant(), || format!("character of {lam} is not W-invariant"));
            chars += 1;
        }
    }
    out.summary = format!(
        "{modules} modules ({axiom_checks} axiom checks), {products} KR products, {chars} characters"
    );
    out
}

type Criterion<'a> = Box<dyn FnOnce(&mut Vec<(String, GradedGtModule)>) -> Outcome + 'a>;

fn main() -> ExitCode {
    let v = Verifier { cap: usize::MAX, ..Verifier::default() };
    let mut built = Vec::new();
    let runs: Vec<(&str, Criterion)> = vec![
        ("fusion products match generalized Demazure modules", Box::new(|_| fusion_equals_demazure(&v))),
        ("collapsed fusion characters are tensor products", Box::new(|_| collapsed_characters(&v))),
        ("graded-limit relations annihilate the fusion generator", Box::new(|_| graded_limit_relations(&v))),
        ("Demazure relations hold", Box::new(demazure_relations)),
        ("block dimensions", Box::new(|_| block_dimensions(&v))),
        ("cyclic block order", Box::new(|_| cyclic_blocks())),
        ("length additivity", Box::new(|_| length_additivity(&v))),
        ("sl4 affinization dimensions", Box::new(|_| sl4_facts(&v))),
        ("point independence", Box::new(|_| point_independence(&v))),
        ("property suites", Box::new(|b| properties(&v, b))),
    ];
    let mut all_ok = true;
    for (k, (name, run)) in runs.into_iter().enumerate() {
        let start = Instant::now();
        let out = run(&mut built);
        let ok = out.failures.is_empty();
        all_ok &= ok;
        println!(
            "criterion {:>2} {} {name}: {} ({:.1?})",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            out.summary,
            start.elapsed()
        );
        for f in out.failures.iter().take(10) {
            println!("    {f}");
        }
        if out.failures.len() > 10 {
            println!("    … {} more", out.failures.len() - 10);
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
