//! Window-based period detection for residue streams.
//!
//! Streams are 0-based slices where `s[i]` holds the term of index `i + 1`.
//! A shift `t` is a period on the window when `s[i + t] == s[i]` for every
//! `i + t < s.len()`; a period is only trusted when the window covers at
//! least two copies of it.

use crate::ntkernel::arith::factor_u64;

pub fn is_period<T: PartialEq>(s: &[T], t: usize) -> bool {
    t > 0 && t <= s.len() && s[t..].iter().zip(s).all(|(a, b)| a == b)
}

/// Smallest multiple of `step` up to `max_t` that is a period on the window.
pub fn smallest_period_multiple_of<T: PartialEq>(s: &[T], step: usize, max_t: usize) -> Option<usize> {
    let step = step.max(1);
    (1..)
        .map(|k| k * step)
        .take_while(|&t| t <= max_t)
        .find(|&t| is_period(s, t))
}

/// Shrink a known period by removing prime factors while the quotient stays a
/// period. With a window of at least `2 t` the result is the minimal period.
pub fn minimize_period<T: PartialEq>(s: &[T], t: usize) -> usize {
    let mut t = t;
    for (l, _) in factor_u64(t as u64) {
        let l = l as usize;
        while t.is_multiple_of(l) && is_period(s, t / l) {
            t /= l;
        }
    }
    t
}

/// `t` is a period, no `t / l` (prime `l | t`) is, and the window holds two copies.
pub fn is_verified_minimal_period<T: PartialEq>(s: &[T], t: usize) -> bool {
    t > 0
        && s.len() >= 2 * t
        && is_period(s, t)
        && factor_u64(t as u64)
            .into_iter()
            .all(|(l, _)| !is_period(s, t / l as usize))
}
