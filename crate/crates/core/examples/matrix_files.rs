//! Reading and writing matrices, and building a report by hand.

use rebrick::io::{parse_csv, parse_json, to_csv, to_json};
use rebrick::linalg::{self, Tolerance};
use rebrick::report::Report;

fn main() -> rebrick::Result<()> {
    let m = parse_csv("1,-i\ni,1\n")?;
    println!("{}", to_json(&m).trim_end());
    let back = parse_json(&to_json(&m))?;
    assert_eq!(back, m);
    print!("{}", to_csv(&back));

    if let Err(e) = parse_csv("1,0\n0,1+2x\n") {
        println!("{e}");
    }

    let tol = Tolerance::default();
    let sigma = linalg::sigma_min(&m)?;
    let report = Report::new("check-basis", tol)
        .with_verdict(linalg::rank(&m, &tol)? == 2)
        .with_result(serde_json::json!({ "sigma_min": sigma }));
    print!("{}", report.to_text());
    Ok(())
}
