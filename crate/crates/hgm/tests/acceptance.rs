use hgm::oracle::OracleConfig;
use hgm::selftest::{run, TITLES};

#[test]
fn acceptance() {
    let cfg = OracleConfig::from_env();
    let reports: Vec<_> = (1..=TITLES.len()).map(|id| run(id, &cfg)).collect();
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<usize> = reports.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
