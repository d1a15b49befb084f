/// The first `count` primes, by sieve of Eratosthenes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_N < N(ln N + ln ln N) for N >= 6
    let limit = if count < 6 {
        15
    } else {
        let c = count as f64;
        (c * (c.ln() + c.ln().ln())).ceil() as usize + 1
    };
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(count);
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        if primes.len() == count {
            break;
        }
        let mut multiple = p * p;
        while multiple <= limit {
            composite[multiple] = true;
            multiple += p;
        }
    }
    assert_eq!(primes.len(), count, "sieve bound too small");
    primes
}
