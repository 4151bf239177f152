//! Frames on `n ≤ 5` worlds up to isomorphism, as edge codes (bit `i*n+j` is `i→j`).

use crate::frame::Frame;
use std::sync::OnceLock;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn permute(code: u64, n: usize, pi: &[usize]) -> u64 {
    let mut out = 0;
    let mut c = code;
    while c != 0 {
        let b = c.trailing_zeros() as usize;
        c &= c - 1;
        out |= 1 << (pi[b / n] * n + pi[b % n]);
    }
    out
}

/// Per-world `(loop, out-degree, in-degree)`, packed so that sorting is meaningful.
fn invariants(code: u64, n: usize, out: &mut [u32; 8]) {
    let row = (1u64 << n) - 1;
    for i in 0..n {
        let r = (code >> (i * n)) & row;
        let mut indeg = 0;
        for j in 0..n {
            indeg += (code >> (j * n + i) & 1) as u32;
        }
        out[i] = ((r >> i & 1) as u32) << 16 | (r.count_ones()) << 8 | indeg;
    }
}

fn generate(n: usize) -> Vec<u64> {
    if n == 0 {
        return vec![0];
    }
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut inv = [0u32; 8];
    for code in 0..(1u64 << (n * n)) {
        invariants(code, n, &mut inv);
        if inv[..n].windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let minimal = perms
            .iter()
            .filter(|pi| (0..n).all(|i| inv[pi[i]] == inv[i]))
            .all(|pi| permute(code, n, pi) >= code);
        if minimal {
            out.push(code);
        }
    }
    out
}

/// Canonical codes of all frames on `n` worlds up to isomorphism, ascending. `n ≤ 5`.
pub fn codes(n: usize) -> &'static [u64] {
    assert!(n <= 5, "enumeration supports at most 5 worlds");
    static CACHE: [OnceLock<Vec<u64>>; 6] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[n].get_or_init(|| generate(n))
}

/// Frames on exactly `n` worlds up to isomorphism, worlds named `0..n`.
pub fn frames(n: usize) -> impl Iterator<Item = Frame> {
    codes(n).iter().map(move |&c| Frame::from_code(n, c))
}

/// Frames on `1..=max` worlds up to isomorphism.
pub fn frames_up_to(max: usize) -> impl Iterator<Item = Frame> {
    (1..=max).flat_map(frames)
}

/// Least code over all relabelings (`n ≤ 8`, factorial cost).
pub fn canonical_code(f: &Frame) -> u64 {
    let n = f.len();
    let c = f.code();
    permutations(n).iter().map(|pi| permute(c, n, pi)).min().unwrap_or(0)
}

pub fn isomorphic(a: &Frame, b: &Frame) -> bool {
    a.len() == b.len() && a.edge_count() == b.edge_count() && canonical_code(a) == canonical_code(b)
}
