//! Writes the constructor-family fixture corpus to stdout.
//!
//! Usage: `cargo run --release -p avgorder-core --example fixture_corpus -- 200 > corpus/families.corpus`

use avgorder_core::constructors::fixture_specs;
use avgorder_core::corpus::record_for;

fn main() {
    let max_order: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("max order must be an integer"))
        .unwrap_or(200);
    println!("# Constructor families with order at most {max_order}");
    for spec in fixture_specs(max_order) {
        let text = spec.to_string();
        let group = spec.build().expect("fixture spec builds");
        let record = record_for(&text, Some(&text), "constructor", group).expect("valid record");
        print!("{record}");
    }
}
