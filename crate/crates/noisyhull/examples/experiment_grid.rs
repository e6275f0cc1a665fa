//! A small trial grid written as CSV to stdout.
use noisyhull::experiment::{run_hull2d, write_records, ExperimentConfig, Format};

fn main() {
    let cfg = ExperimentConfig {
        ns: vec![64, 256, 1024],
        ps: vec![0.1, 0.3],
        trials: 3,
        ..Default::default()
    };
    let recs = run_hull2d(&cfg).unwrap();
    write_records(std::io::stdout(), &recs, Format::Csv).unwrap();
}
