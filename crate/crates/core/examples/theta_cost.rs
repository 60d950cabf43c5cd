use ellhyp_core::arith::{theta, BigComplex, Nome, ThetaTruncation};
use std::time::Instant;

fn main() {
    for prec in [256usize, 512] {
        let p = Nome::with_default(BigComplex::from_polar_f64(0.3, 0.7, prec)).unwrap();
        let t = ThetaTruncation::default();
        let x = BigComplex::from_polar_f64(1.3, 2.1, prec);
        let n = 2000;
        let start = Instant::now();
        for _ in 0..n {
            std::hint::black_box(theta(&x, &p, &t).unwrap());
        }
        let per = start.elapsed().as_secs_f64() / n as f64 * 1e6;
        println!("{prec} bits: {per:.1} us per theta ({} series terms)", p.series_len());
    }
}
