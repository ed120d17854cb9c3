use plankcap_verify::{format_line, run_all, run_criterion, SuiteConfig};

fn main() {
    let cfg = SuiteConfig::new(0);
    // numeric arguments select a subset of criteria 1-13
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let outcomes = if only.is_empty() {
        run_all(&cfg, |o| println!("{}", format_line(o)))
    } else {
        only.iter()
            .map(|&id| {
                let o = run_criterion(id, &cfg);
                println!("{}", format_line(&o));
                o
            })
            .collect()
    };
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!(
        "acceptance: {} of {} criteria passed",
        outcomes.len() - failed.len(),
        outcomes.len()
    );
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
