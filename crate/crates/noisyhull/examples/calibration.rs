//! Repetition counts for a few (n, c, p).
use noisyhull::noise::{calibrate_repetitions, majority_tail};

fn main() {
    println!(
        "{:>6} {:>3} {:>5} {:>5} {:>12} {:>12}",
        "n", "c", "p", "k", "tail", "n^-c"
    );
    for n in [16u64, 1024, 65536] {
        for c in [2.0, 5.0] {
            for p in [0.1, 0.2, 0.3, 0.4] {
                let k = calibrate_repetitions(n, c, p).unwrap();
                println!(
                    "{n:>6} {c:>3} {p:>5} {k:>5} {:>12.3e} {:>12.3e}",
                    majority_tail(k, p),
                    (n as f64).powf(-c)
                );
            }
        }
    }
}
