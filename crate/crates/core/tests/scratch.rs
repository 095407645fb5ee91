use std::time::Instant;
use subconc::classify::*;
use subconc::corpus::*;
#[test]
fn t() {
    let c = monotone_corpus(0x5eed_0001, 500, 10).unwrap();
    let mut tot = [0f64; 5];
    let mut byn = [0f64; 11];
    for inst in &c {
        let f = &inst.function;
        let t = Instant::now();
        is_submodular(f);
        tot[0] += t.elapsed().as_secs_f64();
        let t = Instant::now();
        is_subadditive(f).unwrap();
        tot[1] += t.elapsed().as_secs_f64();
        let t = Instant::now();
        is_fractionally_subadditive(f).unwrap();
        let x = t.elapsed().as_secs_f64();
        tot[2] += x;
        byn[f.n()] += x;
        let t = Instant::now();
        is_monotone(f);
        tot[3] += t.elapsed().as_secs_f64();
    }
    println!("{tot:?} {byn:?}");
}
