//! Driving the command line from code: write artifacts, then verify them.
//!
//! ```bash
//! cargo run --example cli_round_trip
//! ```

use poset_tiling::cli::run;

fn main() {
    let dir = std::env::temp_dir().join("poset-tiling-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let steps: Vec<Vec<String>> = vec![
        vec!["tile-rect".into(), "--a".into(), "2".into(), "--b".into(), "2".into(), "--c".into(), "13".into(), "--svg".into(), path("rect.svg"), "--out".into(), path("rect.tiling")],
        vec!["verify".into(), path("rect.tiling")],
        vec!["chain-partition".into(), "--n".into(), "9".into(), "--h".into(), "3".into(), "--out".into(), path("nine.chains")],
        vec!["verify".into(), path("nine.chains")],
        vec!["almost-partition".into(), "--n".into(), "9".into(), "--target".into(), "chain:4".into(), "--out".into(), path("nine.almost")],
        vec!["verify".into(), path("nine.almost")],
        vec!["tile-grid".into(), "--dims".into(), "12x12".into(), "--target".into(), "grid:2x2".into(), "--mode".into(), "strict".into()],
    ];
    for args in steps {
        println!("$ poset-tiling {}", args.join(" "));
        let mut argv = vec!["poset-tiling".to_string()];
        argv.extend(args);
        let code = run(argv, &mut std::io::stdout(), &mut std::io::stdout());
        println!("(exit {code})\n");
    }
}
