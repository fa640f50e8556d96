//! Acceptance criteria, one test and one PASS/FAIL line each.
//!
//! Run with `cargo test -p surfclass-core --test acceptance -- --nocapture`
//! to see the report.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfclass::oracle::{
    all_words, bfs_orbit, boundary_count, classify_by_invariants, euler_characteristic, family_iii,
    family_iv, family_v, has_concord_pair, random_word,
};
use surfclass::rewrite::block_at;
use surfclass::{
    cancel, canonical_word, equivalent, fold_concord, interleave_to_handle, normalize, parse,
    replay, slide_block, transpose_discord, Character, NormalForm, SurfaceKind, Trace, Word,
};

type Outcome = Result<String, String>;

fn w(s: &str) -> Word {
    parse(s).unwrap()
}

fn nf(kind: SurfaceKind, genus: u32, boundary: u32) -> NormalForm {
    NormalForm::new(kind, genus, boundary).unwrap()
}

fn within(limit: Duration, started: Instant, what: &str) -> Result<(), String> {
    let took = started.elapsed();
    if took > limit {
        Err(format!("{what} took {took:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn expect_form(text: &str, want: NormalForm) -> Result<(), String> {
    let got = normalize(&w(text)).0;
    if got == want {
        Ok(())
    } else {
        Err(format!("`{text}`: got {got}, want {want}"))
    }
}

fn c1_paper_identities() -> Outcome {
    let started = Instant::now();
    let klein = nf(SurfaceKind::Nonorientable, 2, 0);
    expect_form("a a b b", klein)?;
    expect_form("a b a' b", klein)?;
    expect_form("a a b c b' c'", nf(SurfaceKind::Nonorientable, 3, 0))?;
    if !equivalent(&w("a a b c b' c'"), &w("a a b b c c")) {
        return Err("`a a b c b' c'` not equivalent to `a a b b c c`".into());
    }
    within(Duration::from_secs(1), started, "identities")?;
    Ok(format!("{:?}", started.elapsed()))
}

fn c2_word_families() -> Outcome {
    for n in 1..=8u32 {
        let started = Instant::now();
        let k = nf(SurfaceKind::Nonorientable, n, 0);
        for (name, word) in [
            ("iii", family_iii(n as usize)),
            ("iv", family_iv(n as usize)),
        ] {
            let got = normalize(&word).0;
            if got != k {
                return Err(format!("family_{name}({n}): got {got}, want {k}"));
            }
        }
        let want_v = if n / 2 == 0 {
            NormalForm::sphere(0)
        } else {
            nf(SurfaceKind::Orientable, n / 2, 0)
        };
        let got = normalize(&family_v(n as usize)).0;
        if got != want_v {
            return Err(format!("family_v({n}): got {got}, want {want_v}"));
        }
        within(
            Duration::from_secs(1),
            started,
            &format!("families at n={n}"),
        )?;
    }
    Ok("n = 1..8".into())
}

fn c3_oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..10_000 {
        let pairs = rng.gen_range(0..=10);
        let singles = rng.gen_range(0..=3);
        let word = random_word(pairs, singles, rng.gen());
        let by_rules = normalize(&word).0;
        let by_oracle = classify_by_invariants(&word).map_err(|e| e.to_string())?;
        if by_rules != by_oracle {
            return Err(format!(
                "word #{i} `{word}`: normalize {by_rules}, oracle {by_oracle}"
            ));
        }
    }
    within(Duration::from_secs(30), started, "10,000 words")?;
    Ok(format!("10000 words in {:?}", started.elapsed()))
}

/// Every parameter choice for which `rule` applies to `word`.
fn applications(rule: &str, word: &Word) -> Vec<Word> {
    let n = word.len();
    let table = word.pairing();
    let labels = |c: Character| {
        table
            .iter()
            .filter(move |(_, p)| p.character == c)
            .map(|(l, _)| l.clone())
    };
    match rule {
        "cancel" => (0..n).filter_map(|p| cancel(word, p).ok()).collect(),
        "transpose_discord" => labels(Character::Discord)
            .flat_map(|l| (0..n).filter_map(move |s| transpose_discord(word, &l, s).ok()))
            .collect(),
        "fold_concord" => labels(Character::Concord)
            .filter_map(|l| fold_concord(word, &l).ok())
            .collect(),
        "slide_block" => (0..n)
            .filter(|&s| block_at(word, s).is_some())
            .flat_map(|s| (0..n).filter_map(move |d| slide_block(word, s, d).ok()))
            .collect(),
        "interleave_to_handle" => {
            let discord: Vec<_> = labels(Character::Discord).collect();
            let mut out = Vec::new();
            for a in &discord {
                for b in &discord {
                    out.extend(interleave_to_handle(word, a, b).ok());
                }
            }
            out
        }
        _ => unreachable!(),
    }
}

// Words biased towards the shapes each rule needs.
fn sample_word(rule: &str, rng: &mut ChaCha8Rng) -> Word {
    match rule {
        "cancel" => {
            // plant an adjacent inverse pair somewhere
            let base = random_word(rng.gen_range(0..=6), rng.gen_range(0..=3), rng.gen());
            let mut letters = base.into_letters();
            let at = rng.gen_range(0..=letters.len());
            let c = surfclass::Letter::positive(surfclass::Label::new("c").unwrap());
            let pair = if rng.gen() {
                [c.clone(), c.inverse()]
            } else {
                [c.inverse(), c]
            };
            letters.splice(at..at, pair);
            let word = Word::new(letters).unwrap();
            word.rotate(rng.gen_range(0..word.len() as i64))
        }
        "slide_block" => {
            let base = random_word(rng.gen_range(1..=6), rng.gen_range(0..=3), rng.gen());
            let mut letters = base.into_letters();
            let at = rng.gen_range(0..=letters.len());
            let l = |s: &str| surfclass::Letter::positive(surfclass::Label::new(s).unwrap());
            let block: Vec<_> = if rng.gen() {
                vec![l("c"), l("c")]
            } else {
                vec![l("c"), l("d"), l("c").inverse(), l("d").inverse()]
            };
            letters.splice(at..at, block);
            Word::new(letters).unwrap()
        }
        _ => random_word(rng.gen_range(1..=8), rng.gen_range(0..=3), rng.gen()),
    }
}

fn c4_rule_conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let rules = [
        "cancel",
        "transpose_discord",
        "fold_concord",
        "slide_block",
        "interleave_to_handle",
    ];
    for rule in rules {
        let mut checked = 0;
        let mut attempts = 0;
        while checked < 1000 {
            attempts += 1;
            if attempts > 200_000 {
                return Err(format!("{rule}: only {checked} applicable samples found"));
            }
            let before = sample_word(rule, &mut rng);
            let Some(after) = applications(rule, &before).choose(&mut rng).cloned() else {
                continue;
            };
            let measure = |x: &Word| {
                (
                    euler_characteristic(x),
                    boundary_count(x),
                    has_concord_pair(x),
                    classify_by_invariants(x).ok(),
                )
            };
            if measure(&before) != measure(&after) {
                return Err(format!(
                    "{rule}: `{before}` -> `{after}` changed {:?} to {:?}",
                    measure(&before),
                    measure(&after)
                ));
            }
            checked += 1;
        }
    }
    Ok("5 rules x 1000 applications".into())
}

fn c5_orbit_well_defined() -> Outcome {
    let started = Instant::now();
    let words = all_words(3);
    let mut total_states = 0;
    for word in &words {
        let orbit = bfs_orbit(word, word.len(), 1_000_000);
        if orbit.truncated {
            return Err(format!("orbit of `{word}` truncated"));
        }
        total_states += orbit.words.len();
        let want = normalize(word).0;
        if let Some(bad) = orbit.words.iter().find(|x| normalize(x).0 != want) {
            return Err(format!(
                "orbit of `{word}` ({want}) contains `{bad}` ({})",
                normalize(bad).0
            ));
        }
    }
    within(Duration::from_secs(60), started, "orbit check")?;
    Ok(format!(
        "{} words, {total_states} orbit states, {:?}",
        words.len(),
        started.elapsed()
    ))
}

fn c6_trace_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let word = random_word(rng.gen_range(0..=10), rng.gen_range(0..=3), rng.gen());
        let (_, trace) = normalize(&word);
        let end = replay(&word, &trace).map_err(|e| format!("`{word}`: {e}"))?;
        if end != trace.result(&word) {
            return Err(format!("`{word}`: replay ended on `{end}`"));
        }
        // the serialized trace replays to the same words, byte for byte
        let json = serde_json::to_string(&trace).unwrap();
        let back: Trace = serde_json::from_str(&json).unwrap();
        let mut current = word.clone();
        for (k, step) in back.steps().iter().enumerate() {
            let next = step.rule.apply(&current).map_err(|e| e.to_string())?;
            if step.before.to_string() != current.to_string()
                || step.after.to_string() != next.to_string()
            {
                return Err(format!("`{word}`: step {k} differs after round trip"));
            }
            current = next;
        }
    }
    Ok("1000 traces".into())
}

fn c7_boundary_fixtures() -> Outcome {
    expect_form("x", NormalForm::sphere(1))?;
    expect_form("a x a", nf(SurfaceKind::Nonorientable, 1, 1))?;
    expect_form("a x a' y", NormalForm::sphere(2))?;
    expect_form("a b a' b' x", nf(SurfaceKind::Orientable, 1, 1))?;
    Ok("disk, Moebius band, annulus, punctured torus".into())
}

fn c8_round_trip() -> Outcome {
    let mut count = 0;
    for boundary in 0..=3 {
        let mut forms = vec![NormalForm::sphere(boundary)];
        for g in 1..=8 {
            forms.push(nf(SurfaceKind::Orientable, g, boundary));
            forms.push(nf(SurfaceKind::Nonorientable, g, boundary));
        }
        for f in forms {
            let got = normalize(&canonical_word(&f)).0;
            if got != f {
                return Err(format!("{f}: canonical word normalizes to {got}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} forms"))
}

fn report(name: &str, run: fn() -> Outcome) {
    match run() {
        Ok(detail) => println!("PASS  criterion {name} ({detail})"),
        Err(why) => {
            println!("FAIL  criterion {name}: {why}");
            panic!("criterion {name} failed: {why}");
        }
    }
}

#[test]
fn criterion_1_paper_identities() {
    report("1 paper identities", c1_paper_identities);
}

#[test]
fn criterion_2_word_families() {
    report("2 word families", c2_word_families);
}

#[test]
fn criterion_3_oracle_equivalence() {
    report("3 oracle equivalence", c3_oracle_equivalence);
}

#[test]
fn criterion_4_rule_conservation() {
    report("4 per-rule conservation", c4_rule_conservation);
}

#[test]
fn criterion_5_orbit_well_defined() {
    report("5 orbit well-definedness", c5_orbit_well_defined);
}

#[test]
fn criterion_6_trace_soundness() {
    report("6 trace soundness", c6_trace_soundness);
}

#[test]
fn criterion_7_boundary_fixtures() {
    report("7 boundary fixtures", c7_boundary_fixtures);
}

#[test]
fn criterion_8_canonical_round_trip() {
    report("8 canonical round trip", c8_round_trip);
}
