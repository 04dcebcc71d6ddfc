//! ROUGE scores between two summaries, from files or built-in samples.
//!
//!     cargo run --example rouge_eval [candidate.txt reference.txt]

use disaster_summ::corpus::bundled_stopwords;
use disaster_summ::rouge::{evaluate_texts, rouge_l, rouge_n};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (candidate, reference) = match args.as_slice() {
        [c, r] => (std::fs::read_to_string(c)?, std::fs::read_to_string(r)?),
        _ => (
            "Bridge collapsed near the river\nArmy rescued stranded pilgrims\n".to_string(),
            "The river bridge collapsed\nStranded pilgrims rescued by army helicopters\nRelief camps need food\n"
                .to_string(),
        ),
    };
    let report = evaluate_texts(&candidate, &reference, &bundled_stopwords());
    println!("{}", serde_json::to_string_pretty(&report)?);

    // the scorers also work on raw token slices
    let a = ["the", "cat", "sat", "on", "the", "mat"];
    let b = ["the", "cat", "lay", "on", "the", "mat"];
    println!(
        "\ntoken-level: R-1 {:.3}  R-2 {:.3}  R-L {:.3}",
        rouge_n(&a, &b, 1).f1,
        rouge_n(&a, &b, 2).f1,
        rouge_l(&a, &b).f1
    );
    Ok(())
}
