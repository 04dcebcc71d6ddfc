//! Exit-gate suite. Runs every acceptance criterion, prints one PASS/FAIL line
//! per criterion and exits non-zero if any failed.
//!
//! Oracles here are written independently of the library: brute-force n-gram
//! counting, a full-table LCS, exhaustive argmax over the selection objective,
//! closed-form statistics.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use disaster_summ::categorizer::{classify, classify_corpus, Partition};
use disaster_summ::corpus::{bundled_stopwords, load_tweets, PosLexicon, Tweet};
use disaster_summ::disaster_sim::{build_profile, cat_ic, cat_p, dis_sim, jensen_shannon_divergence, CategoryProfile};
use disaster_summ::embeddings::EmbeddingTable;
use disaster_summ::importance::{
    fit, predict_importance, CategorySlot, Coefficients, RegressionKind, RegressionModel, TrainingPair,
};
use disaster_summ::ontology::{
    self, apply_approvals, harvest_candidates, merge_categories, Category, Ontology, DEFAULT_MIN_FREQ,
};
use disaster_summ::pipeline::{read_documents, REPORT_FILE, SUMMARY_JSON_FILE, SUMMARY_TEXT_FILE};
use disaster_summ::rouge::{rouge_l, rouge_n};
use disaster_summ::selector::{
    ablation_select, dmmr_select, CategoryContext, SelectorConfig, SelectorKind, VocabVectors,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let held: bool = $cond;
        if !held {
            return Err(format!($($fmt)+));
        }
    };
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn within_time(start: Instant, limit: Duration) -> Outcome {
    let elapsed = start.elapsed();
    ensure!(elapsed < limit, "took {elapsed:?}, limit {limit:?}");
    Ok(())
}

// ---------------------------------------------------------------- 1. ROUGE

fn brute_ngram_overlap(cand: &[u32], refs: &[u32], n: usize) -> (usize, usize, usize) {
    let grams = |s: &[u32]| -> Vec<Vec<u32>> {
        if s.len() < n {
            Vec::new()
        } else {
            (0..=s.len() - n).map(|i| s[i..i + n].to_vec()).collect()
        }
    };
    let (cg, rg) = (grams(cand), grams(refs));
    let mut overlap = 0;
    let mut counted: Vec<&Vec<u32>> = Vec::new();
    for g in &cg {
        if counted.contains(&g) {
            continue;
        }
        counted.push(g);
        let in_cand = cg.iter().filter(|x| *x == g).count();
        let in_ref = rg.iter().filter(|x| *x == g).count();
        overlap += in_cand.min(in_ref);
    }
    (overlap, cg.len(), rg.len())
}

fn full_table_lcs(a: &[u32], b: &[u32]) -> usize {
    let mut t = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in (0..a.len()).rev() {
        for j in (0..b.len()).rev() {
            t[i][j] = if a[i] == b[j] {
                1 + t[i + 1][j + 1]
            } else {
                t[i + 1][j].max(t[i][j + 1])
            };
        }
    }
    t[0][0]
}

fn prf(overlap: usize, c: usize, r: usize) -> (f64, f64, f64) {
    let p = if c == 0 { 0.0 } else { overlap as f64 / c as f64 };
    let rc = if r == 0 { 0.0 } else { overlap as f64 / r as f64 };
    let f = if p + rc == 0.0 { 0.0 } else { 2.0 * p * rc / (p + rc) };
    (p, rc, f)
}

fn rouge_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..100 {
        let mut seq = || -> Vec<u32> { (0..rng.gen_range(1..=200)).map(|_| rng.gen_range(0..20)).collect() };
        let (a, b) = (seq(), seq());
        let words = |s: &[u32]| s.iter().map(|x| format!("w{x}")).collect::<Vec<_>>();
        let (wa, wb) = (words(&a), words(&b));
        let mut checks = Vec::new();
        for n in [1, 2] {
            let got = rouge_n(&wa, &wb, n);
            let (o, c, r) = brute_ngram_overlap(&a, &b, n);
            checks.push((format!("rouge-{n}"), (got.precision, got.recall, got.f1), prf(o, c, r)));
        }
        let got = rouge_l(&wa, &wb);
        checks.push((
            "rouge-l".into(),
            (got.precision, got.recall, got.f1),
            prf(full_table_lcs(&a, &b), a.len(), b.len()),
        ));
        for (name, g, e) in checks {
            let close = (g.0 - e.0).abs() <= 1e-12 && (g.1 - e.1).abs() <= 1e-12 && (g.2 - e.2).abs() <= 1e-12;
            ensure!(close, "case {case} {name}: got {g:?}, oracle {e:?}");
        }
    }
    within_time(start, Duration::from_secs(5))
}

// --------------------------------------------------------- 2-3. selection

struct Instance {
    table: EmbeddingTable,
    vocab_words: Vec<String>,
    tweets: Vec<Tweet>,
    context: Vec<Tweet>,
    count: usize,
    lambda: f64,
}

fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let pool: Vec<String> = (0..14).map(|i| format!("k{i:02}")).collect();
    // small integer coordinates make exact score ties common; a few words stay out of the table
    let mut known = Vec::new();
    for w in &pool {
        if rng.gen_bool(0.85) {
            known.push((
                w.clone(),
                (0..8).map(|_| rng.gen_range(-2..=2) as f32).collect::<Vec<f32>>(),
            ));
        }
    }
    let table = EmbeddingTable::from_pairs(8, known).unwrap();
    let vocab_size = rng.gen_range(1..=4);
    let vocab_words: Vec<String> = pool.choose_multiple(rng, vocab_size).cloned().collect();
    let tweet = |id: String, rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(1..=6);
        Tweet::from_keywords(id, pool.choose_multiple(rng, k).cloned().collect::<Vec<_>>())
    };
    let n = rng.gen_range(1..=10);
    let tweets: Vec<Tweet> = (0..n).map(|i| tweet(format!("t{i:02}"), rng)).collect();
    let context: Vec<Tweet> = (0..rng.gen_range(0..=3)).map(|i| tweet(format!("s{i}"), rng)).collect();
    let lambda = *[0.0, 0.3, 0.5, 0.7, 1.0].choose(rng).unwrap();
    let lambda = if rng.gen_bool(0.5) {
        lambda
    } else {
        rng.gen_range(0.0..=1.0)
    };
    Instance {
        table,
        vocab_words,
        tweets,
        context,
        count: rng.gen_range(1..=n),
        lambda,
    }
}

fn oracle_cosine(a: &[f32], b: &[f32]) -> f64 {
    let (mut dot, mut na, mut nb) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..a.len() {
        let (x, y) = (a[i] as f64, b[i] as f64);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0)
    }
}

fn oracle_relevance(t: &Tweet, inst: &Instance) -> f64 {
    let mut total = 0.0;
    for k in &t.keywords {
        let mut best = 0.0f64;
        if let Some(kv) = inst.table.get(k) {
            for v in &inst.vocab_words {
                if let Some(vv) = inst.table.get(v) {
                    best = best.max(oracle_cosine(kv, vv));
                }
            }
        }
        total += best;
    }
    total
}

fn oracle_overlap(a: &Tweet, b: &Tweet) -> f64 {
    let shared = a.keywords.iter().filter(|k| b.keywords.contains(*k)).count() as f64;
    shared / ((a.keywords.len() * b.keywords.len()) as f64).sqrt()
}

fn dmmr_greedy_optimality() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..200 {
        let inst = random_instance(&mut rng);
        let vocab = VocabVectors::new(inst.vocab_words.iter().map(String::as_str), &inst.table);
        let cfg = SelectorConfig {
            lambda: inst.lambda,
            ..SelectorConfig::default()
        };
        let mut summary: Vec<&Tweet> = inst.context.iter().collect();
        let picks = dmmr_select(&inst.tweets, "c", inst.count, &vocab, &inst.table, &cfg, &mut summary)
            .map_err(|e| format!("case {case}: {e}"))?;
        ensure!(
            picks.len() == inst.count,
            "case {case}: {} picks, wanted {}",
            picks.len(),
            inst.count
        );

        let mut chosen: Vec<&Tweet> = inst.context.iter().collect();
        for (step, pick) in picks.iter().enumerate() {
            let mut best: Option<(&Tweet, f64)> = None;
            for t in inst.tweets.iter().filter(|t| !chosen.iter().any(|c| c.id == t.id)) {
                let redundancy = chosen.iter().map(|s| oracle_overlap(t, s)).fold(0.0, f64::max);
                let score = inst.lambda * oracle_relevance(t, &inst) - (1.0 - inst.lambda) * redundancy;
                let wins = match best {
                    None => true,
                    Some((b, bs)) => score > bs || (score == bs && t.id < b.id),
                };
                if wins {
                    best = Some((t, score));
                }
            }
            let (expected, score) = best.unwrap();
            ensure!(
                pick.tweet_id == expected.id,
                "case {case} step {step}: picked {}, exhaustive argmax {} (score {score})",
                pick.tweet_id,
                expected.id
            );
            ensure!(
                (pick.selection_score - score).abs() <= 1e-12,
                "case {case} step {step}: score drift"
            );
            chosen.push(expected);
        }
    }
    within_time(start, Duration::from_secs(10))
}

fn lambda_one_matches_max_sim() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..100 {
        let inst = random_instance(&mut rng);
        let vocab = VocabVectors::new(inst.vocab_words.iter().map(String::as_str), &inst.table);
        let cfg = SelectorConfig {
            lambda: 1.0,
            ..SelectorConfig::default()
        };
        let mut s1: Vec<&Tweet> = inst.context.iter().collect();
        let dmmr: BTreeSet<String> = dmmr_select(&inst.tweets, "c", inst.count, &vocab, &inst.table, &cfg, &mut s1)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|e| e.tweet_id)
            .collect();
        let ctx = CategoryContext {
            category_id: "c",
            vocab: &vocab,
            corpus_vocab: &vocab,
            table: &inst.table,
        };
        let mut s2: Vec<&Tweet> = inst.context.iter().collect();
        let max_sim: BTreeSet<String> =
            ablation_select(SelectorKind::MaxSim, &inst.tweets, inst.count, &ctx, &cfg, &mut s2)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|e| e.tweet_id)
                .collect();
        ensure!(dmmr == max_sim, "case {case}: dmmr {dmmr:?} vs max-sim {max_sim:?}");
    }
    Ok(())
}

// ------------------------------------------------------- 4. apportionment

fn apportionment_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut case = 0;
    while case < 1000 {
        let k = rng.gen_range(1..=8);
        let available: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=20)).collect();
        let total: usize = available.iter().sum();
        if total == 0 {
            continue;
        }
        let slots: Vec<CategorySlot> = available
            .iter()
            .enumerate()
            .map(|(i, &a)| CategorySlot {
                category_id: format!("cat{i}"),
                fraction: a as f64 / total as f64,
                available: a,
            })
            .collect();
        let model = if rng.gen_bool(0.2) {
            fit(&[], RegressionKind::Equal).unwrap()
        } else {
            RegressionModel {
                kind: RegressionKind::Linear,
                coefficients: Some(Coefficients {
                    slope: rng.gen_range(-20.0..20.0),
                    intercept: rng.gen_range(-5.0..5.0),
                }),
                posterior_covariance: None,
            }
        };
        let m = rng.gen_range(1..=total);
        let iv = predict_importance(&model, &slots, m).map_err(|e| format!("case {case}: {e}"))?;
        let sum: usize = iv.counts.values().sum();
        ensure!(sum == m, "case {case}: quotas sum to {sum}, m = {m}");
        for s in &slots {
            let q = iv.get(&s.category_id);
            ensure!(
                q <= s.available,
                "case {case}: {} gets {q} > {}",
                s.category_id,
                s.available
            );
        }
        let mut shuffled = slots.clone();
        shuffled.shuffle(&mut rng);
        let again = predict_importance(&model, &shuffled, m).map_err(|e| e.to_string())?;
        ensure!(again.counts == iv.counts, "case {case}: slot order changed the quotas");
        ensure!(
            predict_importance(&model, &slots, total + 1).is_err(),
            "case {case}: m above availability must fail"
        );
        case += 1;
    }
    Ok(())
}

// ---------------------------------------------------------- 5. regression

fn pairs(xy: &[(f64, f64)]) -> Vec<TrainingPair> {
    xy.iter()
        .enumerate()
        .map(|(i, &(x, y))| TrainingPair {
            category_id: format!("c{i}"),
            x,
            y,
        })
        .collect()
}

fn regression_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let xs: Vec<f64> = (0..12).map(|_| rng.gen_range(0.0..1.0)).collect();
    let clean = pairs(&xs.iter().map(|&x| (x, 2.0 * x)).collect::<Vec<_>>());
    let ols = fit(&clean, RegressionKind::Linear)
        .map_err(|e| e.to_string())?
        .coefficients
        .unwrap();
    ensure!((ols.slope - 2.0).abs() <= 1e-9, "slope {}", ols.slope);
    ensure!(ols.intercept.abs() <= 1e-9, "intercept {}", ols.intercept);

    let noisy = pairs(
        &xs.iter()
            .map(|&x| (x, 3.0 * x + 1.0 + rng.gen_range(-0.2..0.2)))
            .collect::<Vec<_>>(),
    );
    for data in [&clean, &noisy] {
        let ols = fit(data, RegressionKind::Linear).unwrap().coefficients.unwrap();
        let mut last = f64::INFINITY;
        for alpha in [1.0, 1e-3, 1e-9] {
            let r = fit(data, RegressionKind::Ridge { alpha })
                .unwrap()
                .coefficients
                .unwrap();
            let gap = (r.slope - ols.slope).abs() + (r.intercept - ols.intercept).abs();
            ensure!(gap < last, "ridge gap did not shrink at alpha {alpha}: {gap} >= {last}");
            last = gap;
        }
        ensure!(last < 1e-6, "ridge at alpha 1e-9 still {last} from OLS");
    }
    Ok(())
}

// ------------------------------------------------------------ 6. DisSIM

fn random_profile(rng: &mut ChaCha8Rng) -> CategoryProfile {
    let ids = ["a", "b", "c", "d", "e"];
    let mut cells: BTreeMap<String, Vec<Tweet>> = BTreeMap::new();
    let mut n = 0;
    for id in ids {
        if !rng.gen_bool(0.8) {
            continue;
        }
        let tweets = (0..rng.gen_range(0..6))
            .map(|_| {
                n += 1;
                let k = rng.gen_range(0..5);
                Tweet::from_keywords(
                    format!("t{n}"),
                    (0..k).map(|_| format!("w{}", rng.gen_range(0..30))).collect::<Vec<_>>(),
                )
            })
            .collect();
        cells.insert(id.to_string(), tweets);
    }
    if n == 0 {
        cells.insert("a".into(), vec![Tweet::from_keywords("t0", ["w0"])]);
    }
    build_profile(&Partition::new(cells), rng.gen_range(1..=10)).unwrap()
}

fn dissim_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..500 {
        let (x, y) = (random_profile(&mut rng), random_profile(&mut rng));
        let w1 = rng.gen_range(0.01..0.99);
        let w2 = 1.0 - w1;
        let xy = dis_sim(&x, &y, w1, w2).map_err(|e| e.to_string())?;
        let yx = dis_sim(&y, &x, w1, w2).map_err(|e| e.to_string())?;
        ensure!(xy == yx, "case {case}: asymmetric {xy:?} vs {yx:?}");
        for s in [xy.dis_sim, xy.cat_ic, xy.cat_p] {
            ensure!((0.0..=1.0).contains(&s), "case {case}: {s} outside [0, 1]");
        }
        for p in [&x, &y] {
            ensure!(
                cat_ic(p, p) == 1.0 && cat_p(p, p) == 1.0,
                "case {case}: self components not 1"
            );
            let own = dis_sim(p, p, w1, w2).unwrap().dis_sim;
            ensure!((own - 1.0).abs() <= 1e-12, "case {case}: self-similarity {own}");
        }
    }
    let jsd = jensen_shannon_divergence(&[0.5, 0.5, 0.0, 0.0], &[0.0, 0.0, 0.3, 0.7]);
    ensure!((jsd - 1.0).abs() <= 1e-12, "disjoint JSD {jsd}");

    let one = |id: &str| {
        let cells = BTreeMap::from([(id.to_string(), vec![Tweet::from_keywords("t", ["w"])])]);
        build_profile(&Partition::new(cells), 5).unwrap()
    };
    let p = cat_p(&one("a"), &one("b"));
    ensure!(p.abs() <= 1e-12, "cat_p of disjoint distributions {p}");
    Ok(())
}

// ----------------------------------------------------- 7. constructed corpus

fn bundled_extended_ontology() -> Ontology {
    let dir = data_dir();
    let seed = Ontology::load(dir.join("ontology.json")).unwrap();
    let merged = merge_categories(&seed, &ontology::load_merges(dir.join("merges.json")).unwrap()).unwrap();
    let docs = read_documents(&[dir.join("docs")]).unwrap();
    let candidates = harvest_candidates(
        &merged,
        &docs,
        &PosLexicon::bundled(),
        &bundled_stopwords(),
        DEFAULT_MIN_FREQ,
    );
    let approvals = ontology::load_approvals(dir.join("approvals.csv")).unwrap();
    apply_approvals(&merged, &candidates, &approvals).unwrap()
}

fn macro_f1(pairs: &[(&str, Option<&str>)]) -> f64 {
    let labels: BTreeSet<&str> = pairs.iter().map(|(gold, _)| *gold).collect();
    let total: f64 = labels
        .iter()
        .map(|&l| {
            let tp = pairs.iter().filter(|(g, p)| *g == l && *p == Some(l)).count() as f64;
            let fp = pairs.iter().filter(|(g, p)| *g != l && *p == Some(l)).count() as f64;
            let fn_ = pairs.iter().filter(|(g, p)| *g == l && *p != Some(l)).count() as f64;
            if tp == 0.0 {
                0.0
            } else {
                2.0 * tp / (2.0 * tp + fp + fn_)
            }
        })
        .sum();
    total / labels.len() as f64
}

fn phase_one_exactness() -> Outcome {
    let dir = data_dir();
    let onto = bundled_extended_ontology();
    ensure!(
        onto.len() == 4,
        "expected 4 categories after merging, got {}",
        onto.len()
    );
    let ds = load_tweets(
        dir.join("constructed.jsonl"),
        &bundled_stopwords(),
        &PosLexicon::bundled(),
    )
    .map_err(|e| e.to_string())?;
    let labels_text = std::fs::read_to_string(dir.join("constructed_labels.csv")).map_err(|e| e.to_string())?;
    let labels: HashMap<&str, &str> = labels_text.lines().skip(1).filter_map(|l| l.split_once(',')).collect();
    ensure!(
        ds.tweets.len() == 70 && labels.len() == 70,
        "corpus should hold 60 + 10 labelled tweets"
    );

    let (base, extra) = ds.tweets.split_at(60);
    for use_extended in [false, true] {
        let scored: Vec<(&str, Option<&str>)> = base
            .iter()
            .map(|t| (labels[t.id.as_str()], classify(t, &onto, use_extended).category_id))
            .map(|(g, p)| (g, p.map(|p| onto.get(&p).unwrap().id.as_str())))
            .collect();
        let f1 = macro_f1(&scored);
        ensure!(f1 == 1.0, "F1 {f1} with use_extended={use_extended}");
    }
    for t in extra {
        let a = classify(t, &onto, true);
        ensure!(
            a.category_id.as_deref() == Some(labels[t.id.as_str()]),
            "{} misclassified with extension",
            t.id
        );
    }
    let seed_only = classify_corpus(&ds, &onto, false).stats.classified;
    let extended = classify_corpus(&ds, &onto, true).stats.classified;
    ensure!(seed_only == 60, "seed vocabulary classified {seed_only}, expected 60");
    ensure!(
        extended == seed_only + 10,
        "extension added {} tweets, expected 10",
        extended - seed_only
    );
    Ok(())
}

// ------------------------------------------------------- 8. determinism

fn pipeline_determinism() -> Outcome {
    let start = Instant::now();
    let out = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = data_dir().join("pipeline.toml");
    let run = |name: &str| -> Result<PathBuf, String> {
        let dir = out.path().join(name);
        let output = Command::new(env!("CARGO_BIN_EXE_disaster-summ"))
            .arg("pipeline")
            .arg("--config")
            .arg(&config)
            .arg("--out")
            .arg(&dir)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(
            output.status.success(),
            "pipeline run {name} exited with {}: {}",
            output.status,
            String::from_utf8_lossy(&output.stderr)
        );
        Ok(dir)
    };
    let (a, b) = (run("a")?, run("b")?);
    for file in [REPORT_FILE, SUMMARY_JSON_FILE, SUMMARY_TEXT_FILE] {
        let read = |d: &Path| std::fs::read(d.join(file)).map_err(|e| format!("{file}: {e}"));
        ensure!(read(&a)? == read(&b)?, "{file} differs between runs");
    }
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join(REPORT_FILE)).unwrap()).unwrap();
    let m = report["config"]["m"].as_u64().unwrap() as usize;
    let entries = report["summary"]["entries"].as_array().map_or(0, Vec::len);
    ensure!(entries == m, "summary holds {entries} tweets, m = {m}");
    let lines = std::fs::read_to_string(a.join(SUMMARY_TEXT_FILE))
        .unwrap()
        .lines()
        .count();
    ensure!(lines == m, "summary.txt holds {lines} lines, m = {m}");
    within_time(start, Duration::from_secs(30))
}

// ------------------------------------------------------ 9. coverage

fn monotone_coverage() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let word = |rng: &mut ChaCha8Rng| format!("v{}", rng.gen_range(0..40));
    for case in 0..500 {
        let categories: Vec<Category> = (0..rng.gen_range(1..=5))
            .map(|i| Category {
                id: format!("c{i}"),
                name: format!("C{i}"),
                seed_keywords: (0..rng.gen_range(1..=5)).map(|_| word(&mut rng)).collect(),
                extended_keywords: (0..rng.gen_range(0..=5)).map(|_| word(&mut rng)).collect(),
            })
            .collect();
        let onto = Ontology::new(categories).map_err(|e| e.to_string())?;
        for t in 0..20 {
            let tweet = Tweet::from_keywords(
                format!("t{t}"),
                (0..rng.gen_range(0..=6))
                    .map(|_| word(&mut rng))
                    .collect::<HashSet<_>>(),
            );
            let seed = classify(&tweet, &onto, false);
            let ext = classify(&tweet, &onto, true);
            ensure!(
                !seed.is_classified() || ext.is_classified(),
                "case {case}: tweet {:?} lost its class with the extended vocabulary",
                tweet.keywords
            );
            ensure!(ext.score >= seed.score, "case {case}: best overlap dropped");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 ROUGE oracle equivalence", rouge_oracle),
        ("2 DMMR greedy-step optimality", dmmr_greedy_optimality),
        ("3 lambda=1 equals max-similarity selection", lambda_one_matches_max_sim),
        ("4 apportionment soundness", apportionment_soundness),
        ("5 regression recovery", regression_recovery),
        ("6 DisSIM algebra", dissim_algebra),
        ("7 categorization exactness on constructed corpus", phase_one_exactness),
        ("8 end-to-end determinism", pipeline_determinism),
        ("9 monotone vocabulary coverage", monotone_coverage),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS  criterion {name} ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({ms} ms): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
