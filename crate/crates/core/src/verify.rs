//! Runs every property check at a given rank and collects a report.
//!
//! Each suite either passes, fails with counterexamples, or is skipped when it
//! does not apply at the rank (for instance the zero characterisation needs
//! `n ≥ 2`). A resource error aborts the run; suites not reached are listed
//! as not run so the report never drops a suite silently.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{product, Element};
use crate::cache::load_or_enumerate;
use crate::enumerate::{
    check_rank_policy, enumerate_canonical_words, parity_report_for, EnumerationResult,
    DEFAULT_ELEMENT_LIMIT,
};
use crate::equations::{
    canonical_form_of_t_element, characterize_zero, construct_r, cross_check_r, pi_is_bijection,
    r_multiply, upper_submonoid, verify_zero_cancellation, verify_zero_cancellation_sampled,
};
use crate::error::{Error, ErrorClass, Result};
use crate::rewrite::{all_normal_forms, canonical_form, DEFAULT_NODE_BUDGET};
use crate::words::{
    is_canonical, is_quasi_subword, occurrence_bound, occurrence_counts, LetterSet, Word,
};

/// Suites in the order they run.
pub const SUITES: &[&str] = &[
    "oracle_equivalence",
    "confluence",
    "associativity",
    "idempotents",
    "content_homomorphism",
    "antiautomorphism",
    "word_bounds",
    "deletion_identities",
    "prefix_stability",
    "prefix_recovery",
    "separation",
    "zero_cancellation",
    "zero_characterisation",
    "m_value",
    "r_structure",
    "pi_map",
    "parity",
];

const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub rank: usize,
    pub limit: usize,
    pub seed: u64,
    /// Lifts the rank cap and turns on exhaustive scans that are sampled by
    /// default.
    pub allow_large: bool,
    /// `None` runs everything.
    pub suites: Option<Vec<String>>,
    pub cache_dir: Option<PathBuf>,
    /// Random words for the confluence suite.
    pub random_words: usize,
    /// Random triples where exhaustive triple scans are too large.
    pub random_triples: usize,
    /// Above this many pairs, pair scans are sampled unless `allow_large`.
    pub pair_budget: usize,
}

impl VerifyConfig {
    pub fn new(rank: usize) -> Self {
        VerifyConfig {
            rank,
            limit: DEFAULT_ELEMENT_LIMIT,
            seed: 0,
            allow_large: false,
            suites: None,
            cache_dir: None,
            random_words: 10_000,
            random_triples: 100_000,
            pair_budget: 4_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteStatus {
    Pass,
    Fail,
    Skipped,
    NotRun,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub status: SuiteStatus,
    pub checked: u64,
    pub counterexamples: Vec<String>,
    pub details: BTreeMap<String, String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult {
            name: name.to_owned(),
            status: SuiteStatus::Pass,
            checked: 0,
            counterexamples: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.status = SuiteStatus::Fail;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(what.into());
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn detail(&mut self, key: &str, value: impl ToString) {
        self.details.insert(key.to_owned(), value.to_string());
    }

    fn skip(mut self, reason: &str) -> Self {
        self.status = SuiteStatus::Skipped;
        self.detail("reason", reason);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub rank: usize,
    pub seed: u64,
    pub cardinality: Option<usize>,
    pub suites: Vec<SuiteResult>,
    /// Set when a resource error stopped the run.
    pub aborted: Option<String>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.suites
            .iter()
            .filter(|s| s.status == SuiteStatus::Fail)
            .count()
    }

    pub fn all_passed(&self) -> bool {
        self.aborted.is_none() && self.failures() == 0
    }
}

/// Shared state for one verification run.
struct Ctx<'a> {
    config: &'a VerifyConfig,
    kn: EnumerationResult,
    elements: Vec<Element>,
    zero: Element,
    /// `⟨a₂, …, a_n⟩`.
    submonoid: Vec<Element>,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.kn.rank()
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    fn pairs_exhaustive(&self, size: usize) -> bool {
        self.config.allow_large || size.saturating_mul(size) <= self.config.pair_budget
    }

    /// All pairs when affordable, otherwise a seeded sample.
    fn pairs<'b>(&self, items: &'b [Element], salt: u64) -> (Vec<(&'b Element, &'b Element)>, bool) {
        if self.pairs_exhaustive(items.len()) {
            let all = items
                .iter()
                .flat_map(|x| items.iter().map(move |y| (x, y)))
                .collect();
            (all, true)
        } else {
            let mut rng = self.rng(salt);
            let k = self.config.pair_budget / 4;
            let sample = (0..k)
                .map(|_| {
                    (
                        items.choose(&mut rng).expect("non-empty"),
                        items.choose(&mut rng).expect("non-empty"),
                    )
                })
                .collect();
            (sample, false)
        }
    }
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, letters: &[u8], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let ls: Vec<u8> = if letters.is_empty() {
        Vec::new()
    } else {
        (0..len).map(|_| *letters.choose(rng).expect("non-empty")).collect()
    };
    Word::from_indices(ls, rank).expect("letters in range")
}

/// Runs the configured suites.
///
/// Errors only for a refused rank or an invalid suite name; resource errors
/// after that are reported through [`VerifyReport::aborted`].
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    check_rank_policy(config.rank, config.allow_large)?;
    let selected: Vec<&str> = match &config.suites {
        None => SUITES.to_vec(),
        Some(names) => {
            let mut out = Vec::new();
            for name in names {
                if name == "all" {
                    return run_verify(&VerifyConfig {
                        suites: None,
                        ..config.clone()
                    });
                }
                let Some(known) = SUITES.iter().find(|s| **s == name.as_str()) else {
                    return Err(Error::Domain(format!(
                        "unknown suite `{name}`; known suites: all, {}",
                        SUITES.join(", ")
                    )));
                };
                if !out.contains(known) {
                    out.push(*known);
                }
            }
            SUITES.iter().copied().filter(|s| out.contains(s)).collect()
        }
    };

    let mut report = VerifyReport {
        rank: config.rank,
        seed: config.seed,
        cardinality: None,
        suites: Vec::new(),
        aborted: None,
    };
    let not_run = |names: &[&str]| -> Vec<SuiteResult> {
        names
            .iter()
            .map(|name| {
                let mut s = SuiteResult::new(name);
                s.status = SuiteStatus::NotRun;
                s
            })
            .collect()
    };

    let setup = || -> Result<Ctx<'_>> {
        let kn = load_or_enumerate(config.cache_dir.as_deref(), config.rank, config.limit)?;
        let elements: Vec<Element> = kn.iter().cloned().collect();
        let upper = LetterSet::range(2, config.rank, config.rank)?;
        let submonoid = elements
            .iter()
            .filter(|x| x.in_submonoid(&upper))
            .cloned()
            .collect();
        Ok(Ctx {
            config,
            zero: Element::zero(config.rank)?,
            kn,
            elements,
            submonoid,
        })
    };
    let ctx = match setup() {
        Ok(ctx) => ctx,
        Err(e) if e.class() == ErrorClass::Resource => {
            report.aborted = Some(e.to_string());
            report.suites = not_run(&selected);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.cardinality = Some(ctx.kn.cardinality());

    for (k, name) in selected.iter().enumerate() {
        match run_suite(&ctx, name) {
            Ok(result) => report.suites.push(result),
            Err(e) if e.class() == ErrorClass::Resource => {
                report.aborted = Some(format!("{name}: {e}"));
                report.suites.extend(not_run(&selected[k..]));
                break;
            }
            Err(e) => {
                let mut s = SuiteResult::new(name);
                s.fail(e.to_string());
                report.suites.push(s);
            }
        }
    }
    Ok(report)
}

fn run_suite(ctx: &Ctx<'_>, name: &str) -> Result<SuiteResult> {
    let salt = SUITES.iter().position(|s| *s == name).unwrap_or(0) as u64 + 1;
    match name {
        "oracle_equivalence" => oracle_equivalence(ctx),
        "confluence" => confluence(ctx, salt),
        "associativity" => associativity(ctx, salt),
        "idempotents" => idempotents(ctx),
        "content_homomorphism" => content_homomorphism(ctx, salt),
        "antiautomorphism" => antiautomorphism(ctx, salt),
        "word_bounds" => word_bounds(ctx),
        "deletion_identities" => deletion_identities(ctx, salt),
        "prefix_stability" => prefix_stability(ctx, salt),
        "prefix_recovery" => prefix_recovery(ctx, salt),
        "separation" => separation(ctx),
        "zero_cancellation" => zero_cancellation(ctx, salt),
        "zero_characterisation" => zero_characterisation(ctx),
        "m_value" => m_value(ctx),
        "r_structure" => r_structure(ctx, salt),
        "pi_map" => pi_map(ctx),
        "parity" => parity(ctx),
        other => Err(Error::Domain(format!("unknown suite `{other}`"))),
    }
}

fn oracle_equivalence(ctx: &Ctx<'_>) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("oracle_equivalence");
    if ctx.n() >= 5 && !ctx.config.allow_large {
        return Ok(s.skip("ranks ≥ 5 need --allow-large"));
    }
    let words = enumerate_canonical_words(ctx.n(), ctx.config.limit)?;
    let closure: BTreeSet<&Word> = ctx.elements.iter().map(Element::word).collect();
    let direct: BTreeSet<&Word> = words.iter().collect();
    s.detail("closure", closure.len());
    s.detail("canonical_words", direct.len());
    for w in closure.symmetric_difference(&direct) {
        s.fail(format!("`{w}` found by only one enumerator"));
    }
    for w in &words {
        s.check(Element::from_word(w).word() == w, || format!("`{w}` is not its own canonical form"));
    }
    Ok(s)
}

fn confluence(ctx: &Ctx<'_>, salt: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("confluence");
    let n = ctx.n();
    let letters: Vec<u8> = (1..=n as u8).collect();
    let mut rng = ctx.rng(salt);
    for _ in 0..ctx.config.random_words {
        let w = random_word(&mut rng, n, &letters, 12);
        let c = canonical_form(&w);
        let forms = all_normal_forms(&w, DEFAULT_NODE_BUDGET)?;
        s.check(forms.len() == 1 && forms.contains(&c), || {
            format!("`{w}` reduces to {} distinct normal forms", forms.len())
        });
        s.check(is_quasi_subword(&c, &w)?, || format!("can(`{w}`) = `{c}` is not ≤ `{w}`"));
        let (cw, cc) = (occurrence_counts(&w), occurrence_counts(&c));
        s.check(cc.iter().all(|(i, k)| *k <= cw[i]), || {
            format!("can(`{w}`) = `{c}` has a letter more often than `{w}`")
        });
    }
    s.detail("words", ctx.config.random_words);
    s.detail("max_length", 12);
    Ok(s)
}

fn associativity(ctx: &Ctx<'_>, salt: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("associativity");
    let els = &ctx.elements;
    let cube = els.len().saturating_pow(3);
    let exhaustive = ctx.n() <= 3 || (ctx.config.allow_large && cube <= 50_000_000);
    let mut check = |x: &Element, y: &Element, z: &Element| -> Result<()> {
        let l = x.multiply(y)?.multiply(z)?;
        let r = x.multiply(&y.multiply(z)?)?;
        s.check(l == r, || format!("({x})({y})({z})"));
        Ok(())
    };
    if exhaustive {
        for x in els {
            for y in els {
                for z in els {
                    check(x, y, z)?;
                }
            }
        }
    } else {
        let mut rng = ctx.rng(salt);
        for _ in 0..ctx.config.random_triples {
            let x = els.choose(&mut rng).expect("non-empty");
            let y = els.choose(&mut rng).expect("non-empty");
            let z = els.choose(&mut rng).expect("non-empty");
            check(x, y, z)?;
        }
    }
    s.detail("exhaustive", exhaustive);
    Ok(s)
}

fn idempotents(ctx: &Ctx<'_>) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("idempotents");
    let n = ctx.n();
    let found: BTreeSet<Element> = ctx
        .elements
        .iter()
        .filter(|x| x.multiply(x).map(|p| &p == *x).unwrap_or(false))
        .cloned()
        .collect();
    let mut expected = BTreeSet::new();
    for set in LetterSet::all_subsets(n)? {
        let e = Element::idempotent(&set);
        s.check(e.multiply(&e)? == e, || format!("e_{set} is not idempotent"));
        s.check(e.content() == set, || format!("c(e_{set}) ≠ {set}"));
        expected.insert(e);
    }
    s.check(expected.len() == 1usize << n, || "the e_X are not pairwise distinct".into());
    s.check(found.len() == 1usize << n, || {
        format!("found {} idempotents, expected 2^{n}", found.len())
    });
    for x in found.symmetric_difference(&expected) {
        s.fail(format!("{x} is idempotent in only one of the two lists"));
    }
    s.detail("idempotents", found.len());
    Ok(s)
}

fn content_homomorphism(ctx: &Ctx<'_>, salt: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("content_homomorphism");
    let (pairs, exhaustive) = ctx.pairs(&ctx.elements, salt);
    for (x, y) in pairs {
        let xy = x.multiply(y)?;
        s.check(xy.content() == x.content().union(&y.content())?, || {
            format!("c({x}·{y}) ≠ c({x}) ∪ c({y})")
        });
    }
    let image: BTreeSet<LetterSet> = ctx.elements.iter().map(Element::content).collect();
    s.check(image.len() == 1usize << ctx.n(), || "content map is not onto".into());
    s.detail("exhaustive", exhaustive);
    Ok(s)
}

fn antiautomorphism(ctx: &Ctx<'_>, salt: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("antiautomorphism");
    let n = ctx.n();
    s.check(ctx.zero.antiautomorphism() == ctx.zero, || "τ(f) ≠ f".into());
    for i in 1..=n {
        let a = Element::generator(i, n)?;
        s.check(a.antiautomorphism() == Element::generator(n - i + 1, n)?, || {
            format!("τ(a_{i}) ≠ a_{}", n - i + 1)
        });
    }
    let image: BTreeSet<Element> = ctx.elements.iter().map(Element::antiautomorphism).collect();
    s.check(image.len() == ctx.elements.len(), || "τ is not a bijection".into());
    for x in &ctx.elements {
        s.check(x.antiautomorphism().antiautomorphism() == *x, || format!("τ(τ({x})) ≠ {x}"));
    }
    let (pairs, exhaustive) = ctx.pairs(&ctx.elements, salt);
    for (x, y) in pairs {
        let lhs = x.multiply(y)?.antiautomorphism();
        let rhs = y.antiautomorphism().multiply(&x.antiautomorphism())?;
        s.check(lhs == rhs, || format!("τ({x}·{y}) ≠ τ({y})τ({x})"));
    }
    s.detail("exhaustive", exhaustive);
    Ok(s)
}

fn word_bounds(ctx: &Ctx<'_>) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("word_bounds");
    let n = ctx.n();
    let mut max_seen = vec![0usize; n + 1];
    for x in &ctx.elements {
        for (i, k) in occurrence_counts(x.word()) {
            max_seen[i] = max_seen[i].max(k);
            s.check(k as u64 <= occurrence_bound(i, n), || {
                format!("`{}` has {k} copies of {i}", x.word())
            });
        }
    }
    let maxima: Vec<String> = max_seen[1..].iter().map(|k| k.to_string()).collect();
    s.detail("max_occurrences", maxima.join(" "));
    Ok(s)
}

fn deletion_identities(ctx: &Ctx<'_>, salt: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("deletion_identities");
    let n = ctx.n();
    let mut rng = ctx.rng(salt);
    for _ in 0..2_000 {
        let i = rng.gen_range(1..=n as u8);
        let below: Vec<u8> = (1..i).collect();
        let above: Vec<u8> = (i + 1..=n as u8).collect();
        let ai = Element::generator(i as usize, n)?;
        let wb = Element::from_word(&random_word(&mut rng, n, &below, 10));
        let wa = Element::from_word(&random_word(&mut rng, n, &above, 10));
        s.check(product(n, [&ai, &wb, &ai])? == ai.multiply(&wb)?, || {
            format!("a_{i}·{wb}·a_{i} ≠ a_{i}·{wb}")
        });
        s.check(product(n, [&ai, &wa, &ai])? == wa.multiply(&ai)?, || {
            format!("a_{i}·{wa}·a_{i} ≠ {wa}·a_{i}")
        });
    }
    Ok(s)
}

/// `can(w 1 u) = w 1 u*` with `u* ≤ u`, for canonical `w` and `u` avoiding 1.
fn prefix_stability(ctx: &Ctx<'_>, salt: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("prefix_stability");
    let n = ctx.n();
    let upper: Vec<u8> = (2..=n as u8).collect();
    let one = Word::from_indices([1u8], n)?;
    let mut rng = ctx.rng(salt);
    let per_w = (20_000 / ctx.submonoid.len().max(1)).clamp(1, 200);
    for x in &ctx.submonoid {
        let w = x.word();
        let prefix = w.concat(&one)?;
        for _ in 0..per_w {
            let u = random_word(&mut rng, n, &upper, 8);
            let c = canonical_form(&prefix.concat(&u)?);
            let ok = c.letters().starts_with(prefix.letters())
                && is_quasi_subword(&c.factor(prefix.len(), c.len()), &u)?;
            s.check(ok, || format!("can(`{w}` 1 `{u}`) = `{c}`"));
        }
    }
    s.detail("samples_per_prefix", per_w);
    Ok(s)
}

/// If `can(w u) = v₁ 1 v₂` with `u` avoiding 1, then `w` starts with `v₁ 1`.
fn prefix_recovery(ctx: &Ctx<'_>, salt: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("prefix_recovery");
    let n = ctx.n();
    let check = |s: &mut SuiteResult, w: &Word, u: &Word| -> Result<()> {
        let c = canonical_form(&w.concat(u)?);
        if let Some(p) = c.letters().iter().position(|&l| l == 1) {
            let head = &c.letters()[..=p];
            s.check(w.letters().starts_with(head), || {
                format!("can(`{w}` `{u}`) = `{c}` but `{w}` does not start with that prefix")
            });
        }
        Ok(())
    };
    let exhaustive = ctx.elements.len().saturating_mul(ctx.submonoid.len()) <= 1_000_000;
    if exhaustive {
        for x in &ctx.elements {
            for u in &ctx.submonoid {
                check(&mut s, x.word(), u.word())?;
            }
        }
    }
    let upper: Vec<u8> = (2..=n as u8).collect();
    let mut rng = ctx.rng(salt);
    for _ in 0..10_000 {
        let x = ctx.elements.choose(&mut rng).expect("non-empty");
        let u = random_word(&mut rng, n, &upper, 8);
        check(&mut s, x.word(), &u)?;
    }
    s.detail("exhaustive", exhaustive);
    Ok(s)
}

/// Distinct `u, v` with `w 1 u`, `w 1 v` canonical give `φ(w u) ≠ φ(w v)`.
fn separation(ctx: &Ctx<'_>) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("separation");
    let n = ctx.n();
    let one = Word::from_indices([1u8], n)?;
    for w in &ctx.submonoid {
        let prefix = w.word().concat(&one)?;
        let mut seen: HashMap<Element, &Word> = HashMap::new();
        for u in &ctx.submonoid {
            if !is_canonical(&prefix.concat(u.word())?) {
                continue;
            }
            let wu = Element::from_word(&w.word().concat(u.word())?);
            s.checked += 1;
            if let Some(v) = seen.insert(wu.clone(), u.word()) {
                s.fail(format!("φ(`{w}` `{u}`) = φ(`{w}` `{v}`) = {wu}"));
            }
        }
    }
    Ok(s)
}

fn zero_cancellation(ctx: &Ctx<'_>, salt: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("zero_cancellation");
    let exhaustive = ctx.pairs_exhaustive(ctx.elements.len());
    let seed = ctx.config.seed ^ salt;
    let rep = if exhaustive {
        verify_zero_cancellation(&ctx.kn, ctx.config.random_triples, seed)?
    } else {
        verify_zero_cancellation_sampled(
            &ctx.kn,
            ctx.config.pair_budget / 4,
            ctx.config.random_triples,
            seed,
        )?
    };
    s.checked = (rep.checked_pairs + rep.checked_triples) as u64;
    for v in &rep.violations {
        let f: Vec<String> = v.factors.iter().map(|x| x.to_string()).collect();
        s.fail(format!("{:?}: {}", v.clause, f.join(" · ")));
    }
    s.detail("pairs", rep.checked_pairs);
    s.detail("pairs_exhaustive", exhaustive);
    s.detail("triples", rep.checked_triples);
    s.detail("triples_exhaustive", rep.triples_exhaustive);
    Ok(s)
}

fn zero_characterisation(ctx: &Ctx<'_>) -> Result<SuiteResult> {
    let s = SuiteResult::new("zero_characterisation");
    if ctx.n() < 2 {
        return Ok(s.skip("needs rank ≥ 2"));
    }
    let mut s = s;
    for x in &ctx.elements {
        s.check(characterize_zero(x)? == (*x == ctx.zero), || {
            format!("characterisation disagrees at {x}")
        });
    }
    Ok(s)
}

fn m_value(ctx: &Ctx<'_>) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("m_value");
    let n = ctx.n();
    let mut histogram = vec![0usize; n + 1];
    for x in &ctx.elements {
        let m = x.m_value();
        histogram[m] += 1;
        s.check((m == 0) == (*x == ctx.zero), || format!("m({x}) = {m}"));
        for i in 0..=n {
            let e = Element::idempotent(&LetterSet::range(1, i, n)?);
            let hits = x.multiply(&e)? == ctx.zero;
            s.check(hits == (i >= m), || format!("x·e_{{1..{i}}} with x = {x}, m = {m}"));
        }
    }
    let h: Vec<String> = histogram.iter().map(|k| k.to_string()).collect();
    s.detail("histogram", h.join(" "));
    Ok(s)
}

fn r_structure(ctx: &Ctx<'_>, salt: u64) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("r_structure");
    let n = ctx.n();
    let r = match construct_r(n, ctx.config.limit) {
        Ok(r) => r,
        Err(e @ Error::InvariantBreach(_)) => {
            s.fail(e.to_string());
            return Ok(s);
        }
        Err(e) => return Err(e),
    };
    let lower = ctx.submonoid.len();
    s.check(r.count() == 1 + lower, || {
        format!("|R| = {} but 1 + |K_{}| = {}", r.count(), n - 1, 1 + lower)
    });
    s.detail("r_size", r.count());
    if let Err(e) = cross_check_r(&r, &ctx.kn) {
        s.fail(e.to_string());
    }
    s.checked += 1;
    for x in &ctx.submonoid {
        let res = canonical_form_of_t_element(x);
        s.check(res.as_ref().is_ok_and(is_canonical), || match res {
            Err(e) => e.to_string(),
            Ok(w) => format!("`{w}` is not canonical"),
        });
    }
    let members: Vec<Element> = r.solutions.iter().cloned().collect();
    let (pairs, exhaustive) = ctx.pairs(&members, salt);
    for (x, y) in pairs {
        match r_multiply(x, y, &r) {
            Ok(z) => s.check(r.solutions.contains(&z), || format!("{x}·{y} = {z} leaves R")),
            Err(e) => s.fail(e.to_string()),
        }
    }
    s.detail("rule_exhaustive", exhaustive);
    Ok(s)
}

fn pi_map(ctx: &Ctx<'_>) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("pi_map");
    let n = ctx.n();
    let r = construct_r(n, ctx.config.limit)?;
    let t_part = &r.decomposition.as_ref().expect("constructed with decomposition").t_part;
    let sub: BTreeSet<Element> = upper_submonoid(n, ctx.config.limit)?;
    let direct: BTreeSet<Element> = ctx.submonoid.iter().cloned().collect();
    s.check(sub == direct, || "shifted K_{n−1} differs from ⟨a₂, …, a_n⟩".into());
    s.check(pi_is_bijection(t_part, &sub)?, || "π|_T is not a bijection onto ⟨a₂, …, a_n⟩".into());
    if n >= 2 {
        let x = Element::parse("1 2", n)?;
        let y = Element::parse("1", n)?;
        let xy = x.multiply(&y)?;
        let lhs = xy.pi()?;
        let rhs = x.pi()?.multiply(&y.pi()?)?;
        s.check(lhs == Element::generator(2, n)? && lhs != rhs, || {
            format!("π(a₁a₂·a₁) = {lhs}, π(a₁a₂)π(a₁) = {rhs}")
        });
        s.detail("witness", format!("π({xy}) = {lhs} ≠ {rhs}"));
    }
    Ok(s)
}

fn parity(ctx: &Ctx<'_>) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("parity");
    let rep = parity_report_for(&ctx.kn, ctx.config.limit)?;
    s.check(rep.passed(), || format!("{rep:?}"));
    s.detail("card_n", rep.card_n);
    s.detail("card_n1", rep.card_n1);
    s.detail("card_n2", rep.card_n2);
    s.detail("v1", rep.v1_count);
    s.detail("v2", rep.v2_count);
    s.detail("parity", format!("{:?}", rep.parity).to_lowercase());
    s.detail("base_case", rep.base_case);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(rank: usize) -> VerifyConfig {
        VerifyConfig {
            random_words: 200,
            random_triples: 2_000,
            ..VerifyConfig::new(rank)
        }
    }

    #[test]
    fn ranks_one_to_three_pass() {
        for n in 1..=3 {
            let rep = run_verify(&quick(n)).unwrap();
            assert!(rep.all_passed(), "{rep:#?}");
            assert_eq!(rep.suites.len(), SUITES.len());
        }
    }

    #[test]
    fn rank_one_skips_characterisation() {
        let rep = run_verify(&quick(1)).unwrap();
        let s = rep.suites.iter().find(|s| s.name == "zero_characterisation").unwrap();
        assert_eq!(s.status, SuiteStatus::Skipped);
        assert_eq!(rep.cardinality, Some(2));
    }

    #[test]
    fn suite_selection() {
        let cfg = VerifyConfig {
            suites: Some(vec!["parity".into(), "idempotents".into()]),
            ..quick(3)
        };
        let rep = run_verify(&cfg).unwrap();
        let names: Vec<&str> = rep.suites.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, vec!["idempotents", "parity"]);
        let bad = VerifyConfig {
            suites: Some(vec!["nope".into()]),
            ..quick(3)
        };
        assert!(matches!(run_verify(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn refusal_and_abort() {
        assert!(matches!(
            run_verify(&VerifyConfig::new(9)),
            Err(Error::RankRefused { .. })
        ));
        let cfg = VerifyConfig {
            limit: 10,
            ..quick(3)
        };
        let rep = run_verify(&cfg).unwrap();
        assert!(rep.aborted.is_some());
        assert!(!rep.all_passed());
        assert!(rep.suites.iter().all(|s| s.status == SuiteStatus::NotRun));
        assert_eq!(rep.suites.len(), SUITES.len());
    }

    #[test]
    fn sampled_pairs_when_over_budget() {
        let cfg = VerifyConfig {
            pair_budget: 40,
            suites: Some(vec!["zero_cancellation".into(), "content_homomorphism".into()]),
            ..quick(3)
        };
        let rep = run_verify(&cfg).unwrap();
        assert!(rep.all_passed());
        let zc = rep.suites.iter().find(|s| s.name == "zero_cancellation").unwrap();
        assert_eq!(zc.details["pairs_exhaustive"], "false");
    }
}
