//! The `irs-ee` command line driven in-process: a JSON scenario with an
//! explicit channel, solved by every algorithm.
//!
//! `cargo run --example cli_in_process`

use irs_ee::cli;

const SCENARIO: &str = r#"{
  "n_elements": 4,
  "gamma_min_db": 10.0,
  "channel": { "alpha_hat": [1.5e-5, 3e-6, 2e-6, 1e-6, 5e-7], "xi": 1e-7 }
}"#;

pub fn main() {
    let dir = std::env::temp_dir().join(format!("irs-ee-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("scenario.json");
    std::fs::write(&path, SCENARIO).expect("write scenario");

    for algo in ["bnb", "ao", "oreo", "opa", "mparea"] {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = cli::run(
            ["irs-ee", "solve", path.to_str().expect("utf-8"), "--algo", algo],
            &mut out,
            &mut err,
        );
        let json: serde_json::Value = serde_json::from_slice(&out).expect("solution JSON");
        println!("{algo:>6} exit={code} ee={} x={}", json["ee"], json["x"]);
    }

    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(["irs-ee", "verify", "--n", "6", "--trials", "10"], &mut out, &mut err);
    print!("verify exit={code}: {}", String::from_utf8_lossy(&out));
    let _ = std::fs::remove_dir_all(&dir);
}
