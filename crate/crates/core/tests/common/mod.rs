//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's algorithms; inputs and outputs are plain vectors.
#![allow(dead_code)]

use quasiplanar::geometry::Curve;

/// `1 2 .. l` repeated `t` times (0-based letters).
pub fn up_word(l: usize, t: usize) -> Vec<usize> {
    (0..t).flat_map(|_| 0..l).collect()
}

/// `1 .. l, l-1 .. 1, 2 .. l` (0-based letters).
pub fn up_down_up_word(l: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (0..l).collect();
    w.extend((0..l.saturating_sub(1)).rev());
    w.extend(1..l);
    w
}

fn is_subsequence(word: &[u32], host: &[u32]) -> bool {
    let mut it = host.iter();
    word.iter().all(|c| it.any(|h| h == c))
}

/// Whether some injective renaming of the pattern letters is a subsequence
/// of `host`. Tries every assignment of distinct host letters.
pub fn contains_pattern(host: &[u32], pattern: &[usize]) -> bool {
    let letters = pattern.iter().max().map_or(0, |m| m + 1);
    let mut alphabet: Vec<u32> = host.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    if letters > alphabet.len() {
        return false;
    }
    let mut assign = Vec::with_capacity(letters);
    let mut used = vec![false; alphabet.len()];
    let mut word = vec![0u32; pattern.len()];
    fn go(
        pattern: &[usize],
        host: &[u32],
        alphabet: &[u32],
        letters: usize,
        assign: &mut Vec<u32>,
        used: &mut [bool],
        word: &mut [u32],
    ) -> bool {
        if assign.len() == letters {
            for (w, &p) in word.iter_mut().zip(pattern) {
                *w = assign[p];
            }
            return is_subsequence(word, host);
        }
        for i in 0..alphabet.len() {
            if !used[i] {
                used[i] = true;
                assign.push(alphabet[i]);
                let hit = go(pattern, host, alphabet, letters, assign, used, word);
                assign.pop();
                used[i] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    go(pattern, host, &alphabet, letters, &mut assign, &mut used, &mut word)
}

/// Calls `f` on every restricted growth string of length `len` using at most
/// `max_letters` letters (each sequence up to renaming, once).
pub fn for_each_canonical(len: usize, max_letters: u32, f: &mut dyn FnMut(&[u32])) {
    fn go(s: &mut Vec<u32>, len: usize, used: u32, max_letters: u32, f: &mut dyn FnMut(&[u32])) {
        if s.len() == len {
            f(s);
            return;
        }
        for c in 0..(used + 1).min(max_letters) {
            s.push(c);
            go(s, len, used.max(c + 1), max_letters, f);
            s.pop();
        }
    }
    go(&mut Vec::with_capacity(len), len, 0, max_letters, f);
}

/// Every window of `l` consecutive terms is pairwise distinct.
pub fn is_l_regular(s: &[u32], l: usize) -> bool {
    s.windows(l.min(s.len()).max(1)).all(|w| {
        let mut v = w.to_vec();
        v.sort_unstable();
        v.windows(2).all(|p| p[0] != p[1])
    })
}

/// Longest `l`-regular subsequence length by trying every subset.
pub fn longest_l_regular(s: &[u32], l: usize) -> usize {
    assert!(s.len() <= 22, "subset oracle is exponential");
    let mut best = 0;
    for mask in 0u32..(1 << s.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let sub: Vec<u32> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        if is_l_regular(&sub, l) {
            best = size;
        }
    }
    best
}

/// Largest antichain of the relation `less` on `0..n`, by subsets.
pub fn max_antichain(n: usize, less: &dyn Fn(usize, usize) -> bool) -> usize {
    (0u32..(1 << n))
        .filter(|&mask| {
            (0..n).all(|i| (0..n).all(|j| mask >> i & 1 == 0 || mask >> j & 1 == 0 || !less(i, j)))
        })
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

/// Largest set of vertices pairwise joined in `adj`, by subsets.
pub fn max_clique(n: usize, adj: &dyn Fn(usize, usize) -> bool) -> usize {
    assert!(n <= 24);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size > best && (0..n).all(|i| mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || adj(i, j))) {
            best = size;
        }
    }
    best
}

pub type IPoint = (i64, i64);
pub type Segment = (IPoint, IPoint);

fn cross(o: IPoint, a: IPoint, b: IPoint) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn within(a: IPoint, b: IPoint, p: IPoint) -> bool {
    a.0.min(b.0) <= p.0 && p.0 <= a.0.max(b.0) && a.1.min(b.1) <= p.1 && p.1 <= a.1.max(b.1)
}

/// Closed segments share a point.
pub fn segments_meet(a: (IPoint, IPoint), b: (IPoint, IPoint)) -> bool {
    let d1 = cross(b.0, b.1, a.0).signum();
    let d2 = cross(b.0, b.1, a.1).signum();
    let d3 = cross(a.0, a.1, b.0).signum();
    let d4 = cross(a.0, a.1, b.1).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && within(b.0, b.1, a.0))
        || (d2 == 0 && within(b.0, b.1, a.1))
        || (d3 == 0 && within(a.0, a.1, b.0))
        || (d4 == 0 && within(a.0, a.1, b.1))
}

/// Segments cross at a single interior point of both.
pub fn segments_cross_properly(a: (IPoint, IPoint), b: (IPoint, IPoint)) -> bool {
    let d1 = cross(b.0, b.1, a.0).signum();
    let d2 = cross(b.0, b.1, a.1).signum();
    let d3 = cross(a.0, a.1, b.0).signum();
    let d4 = cross(a.0, a.1, b.1).signum();
    d1 * d2 < 0 && d3 * d4 < 0
}

/// Integer waypoints of a curve, if all are integral.
pub fn int_points(c: &Curve) -> Option<Vec<IPoint>> {
    use num::ToPrimitive;
    c.waypoints()
        .iter()
        .map(|p| {
            if p.x.is_integer() && p.y.is_integer() {
                Some((p.x.to_integer().to_i64()?, p.y.to_integer().to_i64()?))
            } else {
                None
            }
        })
        .collect()
}

/// Integer polylines share a point.
pub fn polylines_meet(a: &[IPoint], b: &[IPoint]) -> bool {
    a.windows(2)
        .any(|s| b.windows(2).any(|t| segments_meet((s[0], s[1]), (t[0], t[1]))))
}

/// Exact `log2` of a positive big integer, to double precision.
pub fn log2_big(n: &num::BigUint) -> f64 {
    use num::ToPrimitive;
    let bits = n.bits();
    if bits <= 64 {
        return n.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}
