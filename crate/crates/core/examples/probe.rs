use ctaea::ctaea::{initialize, CtaeaConfig, Variant};
use ctaea::problems::ProblemDefinition;
use ctaea::Solution;

fn radius(s: &Solution) -> f64 {
    s.objectives().iter().map(|f| f * f).sum::<f64>().sqrt()
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let variant = match args.get(2).map(|s| s.as_str()) {
        Some("v2") => Variant::VariantII,
        Some("v1") => Variant::VariantI,
        _ => Variant::Full,
    };
    let problem = ProblemDefinition::by_name("c1-dtlz3", 3).unwrap();
    let mut config = CtaeaConfig::new(91, 300_000);
    config.variant = variant;
    config.trace_every = None;
    let mut state = initialize(&problem, &config, ctaea::RandomSource::from_seed(seed)).unwrap();
    let cutoff = 8.8;
    while state.step().unwrap() {
        let g = state.generations();
        if g % 150 == 0 {
            let da_inner = state.da().iter().filter(|s| radius(s) < cutoff).count();
            let da_min = state.da().iter().map(radius).fold(f64::INFINITY, f64::min);
            let ca_min = state.ca().iter().map(radius).fold(f64::INFINITY, f64::min);
            let mut rads: Vec<f64> = state.da().iter().map(radius).collect();
            rads.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let da_med = rads[rads.len() / 2];
            let (rho_c, rho_d) = ctaea::ctaea::mating_proportions(state.ca(), state.da());
            println!(
                "gen {g:5} | rho {rho_c:.2}/{rho_d:.2} | DA inner {da_inner:3} min {da_min:7.3} med {da_med:7.3} | CA min {ca_min:7.3}"
            );
        }
    }
    let ca_min = state.ca().iter().map(radius).fold(f64::INFINITY, f64::min);
    let feas = state.ca().iter().filter(|s| s.is_feasible()).count();
    println!("final: CA min radius {ca_min:.4}, feasible {feas}/91");
}
