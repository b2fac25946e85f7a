use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::kernel::FiniteSemiring;

/// Largest order for the exhaustive permutation scans.
pub const MAX_ISO_ORDER: usize = 8;

/// Lexicographically least `(order, add, mul)` encoding over all relabelings.
/// Equal keys means isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Row-major addition table entries.
    pub fn add_entries(&self) -> &[u8] {
        let k = self.order();
        &self.0[1..1 + k * k]
    }

    pub fn mul_entries(&self) -> &[u8] {
        let k = self.order();
        &self.0[1 + k * k..]
    }
}

impl fmt::Display for CanonicalKey {
    /// `k:add:mul` with one hex digit per entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hex = |b: &[u8]| b.iter().map(|v| format!("{v:x}")).collect::<String>();
        write!(f, "{}:{}:{}", self.order(), hex(self.add_entries()), hex(self.mul_entries()))
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({self})")
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn check_order(sr: &FiniteSemiring, operation: &'static str) -> Result<(), Error> {
    if sr.order() > MAX_ISO_ORDER {
        return Err(Error::OrderTooLarge {
            operation,
            order: sr.order(),
            max: MAX_ISO_ORDER,
        });
    }
    Ok(())
}

/// Canonical key together with the relabeling that attains it
/// (`perm[old] = new`).
pub fn canonical_form(sr: &FiniteSemiring) -> Result<(CanonicalKey, Vec<usize>), Error> {
    check_order(sr, "canonical key")?;
    let k = sr.order();
    let add = sr.add_table();
    let mul = sr.mul_table();

    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let mut buf = vec![0u8; 1 + 2 * k * k];
    buf[0] = k as u8;
    // `inv[new] = old`; the forward map is its inverse.
    let mut inv: Vec<usize> = (0..k).collect();
    let mut fwd = vec![0usize; k];
    loop {
        for (new, &old) in inv.iter().enumerate() {
            fwd[old] = new;
        }
        let mut pos = 1;
        let mut state = std::cmp::Ordering::Equal;
        'fill: for table in [add, mul] {
            for a in 0..k {
                for b in 0..k {
                    let v = fwd[table.get(inv[a], inv[b])] as u8;
                    if state == std::cmp::Ordering::Equal {
                        if let Some((cur, _)) = &best {
                            state = v.cmp(&cur[pos]);
                            if state == std::cmp::Ordering::Greater {
                                break 'fill;
                            }
                        } else {
                            state = std::cmp::Ordering::Less;
                        }
                    }
                    buf[pos] = v;
                    pos += 1;
                }
            }
        }
        if state == std::cmp::Ordering::Less {
            best = Some((buf.clone(), fwd.clone()));
        }
        if !next_permutation(&mut inv) {
            break;
        }
    }
    let (bytes, perm) = best.expect("at least one permutation");
    Ok((CanonicalKey(bytes), perm))
}

pub fn canonical_key(sr: &FiniteSemiring) -> Result<CanonicalKey, Error> {
    canonical_form(sr).map(|(key, _)| key)
}

/// Whether `perm` (`perm[x]` is the image in `s` of `x`) preserves both
/// operations.
pub fn is_isomorphism(r: &FiniteSemiring, s: &FiniteSemiring, perm: &[usize]) -> bool {
    let k = r.order();
    if s.order() != k || perm.len() != k {
        return false;
    }
    let mut seen = vec![false; k];
    for &p in perm {
        if p >= k || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    (0..k).all(|x| {
        (0..k).all(|y| {
            perm[r.add(x, y)] == s.add(perm[x], perm[y]) && perm[r.mul(x, y)] == s.mul(perm[x], perm[y])
        })
    })
}

// Per-element isomorphism invariants.
fn signature(sr: &FiniteSemiring, x: usize) -> [usize; 8] {
    let k = sr.order();
    let count = |f: &dyn Fn(usize) -> bool| (0..k).filter(|&y| f(y)).count();
    let occurrences = |mul: bool| {
        (0..k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .filter(|&(a, b)| if mul { sr.mul(a, b) == x } else { sr.add(a, b) == x })
            .count()
    };
    [
        sr.find_zero().is_some_and(|z| z.0 == x) as usize,
        sr.find_identity().is_some_and(|o| o.0 == x) as usize,
        (sr.add(x, x) == x) as usize,
        (sr.mul(x, x) == x) as usize,
        count(&|y| sr.add(x, y) == y),
        count(&|y| sr.mul(x, y) == x),
        occurrences(false),
        occurrences(true),
    ]
}

/// A witness isomorphism `r -> s`, if any. Search is a backtracking over
/// element images restricted to equal per-element invariants.
pub fn are_isomorphic(r: &FiniteSemiring, s: &FiniteSemiring) -> Option<Vec<usize>> {
    let k = r.order();
    if s.order() != k {
        return None;
    }
    if r.is_additively_idempotent() != s.is_additively_idempotent()
        || r.find_zero().is_some() != s.find_zero().is_some()
        || r.find_identity().is_some() != s.find_identity().is_some()
    {
        return None;
    }
    let sig_r: Vec<[usize; 8]> = (0..k).map(|x| signature(r, x)).collect();
    let sig_s: Vec<[usize; 8]> = (0..k).map(|x| signature(s, x)).collect();
    let mut a = sig_r.clone();
    let mut b = sig_s.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }

    const UNSET: usize = usize::MAX;
    fn extend(
        r: &FiniteSemiring,
        s: &FiniteSemiring,
        sig_r: &[[usize; 8]],
        sig_s: &[[usize; 8]],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        x: usize,
    ) -> bool {
        let k = r.order();
        if x == k {
            return is_isomorphism(r, s, map);
        }
        for y in 0..k {
            if used[y] || sig_r[x] != sig_s[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            let consistent = (0..=x).all(|a| {
                [(a, x), (x, a)].iter().all(|&(p, q)| {
                    let sum = r.add(p, q);
                    let prod = r.mul(p, q);
                    (map[sum] == UNSET || map[sum] == s.add(map[p], map[q]))
                        && (map[prod] == UNSET || map[prod] == s.mul(map[p], map[q]))
                })
            });
            if consistent && extend(r, s, sig_r, sig_s, map, used, x + 1) {
                return true;
            }
            map[x] = UNSET;
            used[y] = false;
        }
        false
    }

    let mut map = vec![UNSET; k];
    let mut used = vec![false; k];
    if extend(r, s, &sig_r, &sig_s, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}
