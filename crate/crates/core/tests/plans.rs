use ringlock::numberlab::{get_exponent, classify_n};
use ringlock::planner::{proof_plan, table_row, PlanStatus};

#[test]
fn every_plan_up_to_101_verifies() {
    for n in 2..=101 {
        let plan = proof_plan(n).unwrap();
        plan.verify().unwrap_or_else(|e| panic!("n = {n}: {e}"));
        let row = table_row(n).unwrap();
        assert_eq!(plan.status, row.status, "n = {n}");
        assert_eq!(plan.targets(), row.targets, "n = {n}");
        for r in &plan.primes {
            assert_eq!(r.k, get_exponent(r.p, n).unwrap());
        }
        let primes: Vec<u64> = plan.primes.iter().map(|r| r.p).collect();
        assert_eq!(primes, classify_n(n).unwrap().n_primes);
        assert_eq!(plan.status == PlanStatus::Open, !row.open_targets.is_empty());
    }
}
