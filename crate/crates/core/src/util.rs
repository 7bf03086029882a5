//! Small shared helpers: rational constructors and capped parallel mapping.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::env;
use std::num::NonZeroUsize;

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Exact ceiling as a `BigInt`.
pub fn ceil_int(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

pub fn is_negative_integer(x: &BigRational) -> bool {
    is_integer(x) && x.is_negative()
}

/// Thread cap for internal parallelism, from `ORBIMIRROR_THREADS`.
///
/// Defaults to the machine parallelism; a value of 1 disables threading.
pub fn thread_cap() -> usize {
    env::var("ORBIMIRROR_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(NonZeroUsize::get)
                .unwrap_or(1)
        })
}

/// Map `f` over `items` with at most [`thread_cap`] worker threads.
///
/// Results come back in input order, so output is deterministic whenever `f`
/// is (exact arithmetic makes every `f` here schedule-independent).
pub fn parallel_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let cap = thread_cap().min(items.len().max(1));
    if cap <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let n = items.len();
    let mut results: Vec<Option<U>> = (0..n).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<&mut Option<U>>> =
        results.iter_mut().map(std::sync::Mutex::new).collect();
    std::thread::scope(|scope| {
        for _ in 0..cap {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let value = f(&items[i]);
                **slots[i].lock().unwrap() = Some(value);
            });
        }
    });
    results.into_iter().map(|r| r.unwrap()).collect()
}

/// lcm of denominators appearing in a list of rationals.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a BigRational>>(xs: I) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = num::integer::lcm(l, x.denom().clone());
    }
    l
}

/// Render a rational as `num/den` (or plain integer when den == 1).
pub fn rat_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `num/den` or a plain integer string.
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_and_ceil() {
        assert_eq!(frac(&rat(-3, 2)), rat(1, 2));
        assert_eq!(ceil_int(&rat(-3, 2)), big(-1));
        assert_eq!(ceil_int(&rat(3, 2)), big(2));
        assert_eq!(frac(&rat_int(4)), rat_int(0));
    }

    #[test]
    fn parallel_map_is_ordered() {
        let xs: Vec<i64> = (0..100).collect();
        let ys = parallel_map(xs.clone(), |x| x * x);
        assert_eq!(ys, xs.iter().map(|x| x * x).collect::<Vec<_>>());
    }

    #[test]
    fn rat_strings_round_trip() {
        for s in ["3", "-4", "7/2", "-9/4"] {
            assert_eq!(rat_string(&parse_rat(s).unwrap()), s);
        }
        assert!(parse_rat("1/0").is_none());
    }
}
