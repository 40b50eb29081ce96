//! Free filtrations of A(G31): deleting a whole M_i, the minimal form of N,
//! and a small cross-check of the characterization of filtration
//! subarrangements.

use arrangements::freeness::Budget;
use arrangements::g31::{
    ffsa_cross_validate, filtration_ladder, minimal_form_report, CrossValidateConfig, G31,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = G31::new()?;
    for run in filtration_ladder(&g, 0, 1, &Budget::default()) {
        println!(
            "delete M{} in order {:?}...: {} steps, ladder ok {}",
            run.star + 1,
            &run.order[..4],
            run.steps,
            run.exponents_ok
        );
    }

    let r = minimal_form_report(&g, 0);
    println!(
        "N of minimal form at H0: |N| = {}, (∗) {}, predicted {}, max |Ã^K| = {}, χ matches {:?}: {}",
        r.size, r.condition_star, r.predicted, r.max_restriction, r.exponents, r.charpoly_matches
    );

    let cfg = CrossValidateConfig {
        exhaustive_max: 1,
        random_per_size: 4,
        max_size: 8,
        ..CrossValidateConfig::default()
    };
    let cv = ffsa_cross_validate(&g, &cfg);
    println!(
        "cross-validation: {} sets checked, {} inconclusive, {} mismatches",
        cv.checked(),
        cv.inconclusive(),
        cv.mismatches.len()
    );
    for m in &cv.minimal {
        println!("A∖M{}: single deletions that stay free: {}", m.star + 1, m.free.len());
    }
    Ok(())
}
