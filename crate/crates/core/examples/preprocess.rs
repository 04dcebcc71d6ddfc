//! Tokens and keywords of a few raw tweets.
//!
//!     cargo run --example preprocess

use disaster_summ::corpus::{bundled_stopwords, PosLexicon, Tweet};

fn main() {
    let stopwords = bundled_stopwords();
    let lexicon = PosLexicon::bundled();
    let raw = [
        "RT @ndtv: Bridge COLLAPSED near Rishikesh!! roads blocked http://t.co/x1y2 #UttarakhandFloods",
        "Army helicopters airlifted 120 stranded pilgrims 🙏 www.example.org",
        "Please donate blankets & rations... volunteers needed urgently",
    ];
    for (i, text) in raw.iter().enumerate() {
        let tweet = Tweet::new(format!("t{i}"), *text, &stopwords, &lexicon);
        println!("{text}");
        println!("  tokens:   {:?}", tweet.tokens);
        println!("  keywords: {:?}\n", tweet.keywords);
    }
}
