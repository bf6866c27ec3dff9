//! Regenerates `data/stu2_relations.txt`.
//!
//! cargo run -p gwtower --release --example build_stu2 -- MAX_DEGREE [OUT]

use std::collections::BTreeMap;

use gwtower::diagrams::{build_stu2, RelationData};

const VERSION: &str = "stu2-v1";

fn main() {
    let mut args = std::env::args().skip(1);
    let max: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let out = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/stu2_relations.txt").into());
    let rows: BTreeMap<u32, _> = (1..=max)
        .map(|s| (s, build_stu2(s).expect("degree within the tree bound")))
        .collect();
    for (s, r) in &rows {
        eprintln!("degree {s}: {} rows", r.len());
    }
    let data = RelationData { version: VERSION.into(), rows };
    std::fs::write(&out, data.render()).expect("write relation data");
}
