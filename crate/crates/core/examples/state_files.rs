//! Writing and reading the JSON state-file format used by the `fef` binary.

use fef_core::cli::{parse_state, state_to_json};
use fef_core::state::example_family_rho_x;

fn main() {
    let rho = example_family_rho_x(0.5).expect("x in [0, 1]");
    let text = state_to_json(&rho);
    println!("{} bytes, starts {}", text.len(), &text[..60]);
    let back = parse_state(&text).expect("round trip");
    println!("identical after round trip: {}", back == rho);

    match parse_state(r#"{"dim_a": 2, "dim_b": 2, "matrix": [[[1, 0]]]}"#) {
        Ok(_) => unreachable!(),
        Err(e) => println!("exit code {}: {e}", e.code()),
    }
}
