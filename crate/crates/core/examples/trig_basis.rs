use rebrick::multiplier::trig_rebrick_demo;

fn main() -> rebrick::Result<()> {
    let report = trig_rebrick_demo(4, 32)?;
    println!("grid {} up to frequency {}", report.grid, report.k);
    for (j, (phase, dev)) in report.phases.iter().zip(&report.deviations).enumerate() {
        println!(
            "j = {j}: phase {:+.4}{:+.4}i, deviation {dev:.1e}",
            phase.re, phase.im
        );
    }
    println!(
        "gram defects {:.1e} / {:.1e}",
        report.gram_defect_b, report.gram_defect_c
    );
    match trig_rebrick_demo(4, 12) {
        Err(e) => println!("grid 12: {e}"),
        Ok(_) => unreachable!("grid below 4K + 2"),
    }
    Ok(())
}
