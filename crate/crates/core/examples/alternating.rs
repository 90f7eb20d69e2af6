use seqtrans::engine::weniger_s;
use seqtrans::{Rational, RemainderEstimator, Scalar, Sequence};

fn main() -> seqtrans::Result<()> {
    // Partial sums of the alternating harmonic series in exact arithmetic.
    let terms: Vec<Rational> = (0..12)
        .map(|n| Rational::parse_literal(&format!("{}/{}", if n % 2 == 0 { 1 } else { -1 }, n + 1)).unwrap())
        .collect();
    let s = Sequence::from_terms(0, terms);
    let table = weniger_s(Rational::one(), &s, &RemainderEstimator::d(), 10)?;
    let (k, value) = table.recommended().expect("table has a valid entry");
    println!("k={k} value={} approx={:.15}", value, value.to_f64());
    Ok(())
}
