//! Bit-packed gcd over F_2, used for long Euclid chains.

fn pack(c: &[u64]) -> Vec<u64> {
    let mut w = vec![0u64; c.len().div_ceil(64)];
    for (i, &b) in c.iter().enumerate() {
        if b & 1 == 1 {
            w[i / 64] |= 1 << (i % 64);
        }
    }
    w
}

fn unpack(w: &[u64], deg: Option<usize>) -> Vec<u64> {
    let Some(d) = deg else { return Vec::new() };
    (0..=d).map(|i| (w[i / 64] >> (i % 64)) & 1).collect()
}

fn degree(w: &[u64]) -> Option<usize> {
    w.iter()
        .enumerate()
        .rev()
        .find(|(_, &x)| x != 0)
        .map(|(i, &x)| i * 64 + 63 - x.leading_zeros() as usize)
}

/// `a mod b` in place; `b` must be nonzero with degree `db`.
fn rem_in_place(a: &mut [u64], b: &[u64], db: usize) {
    let mut da = degree(a);
    while let Some(d) = da {
        if d < db {
            break;
        }
        let shift = d - db;
        let (ws, bs) = (shift / 64, shift % 64);
        let top = db / 64;
        for i in 0..=top {
            let x = b[i];
            a[i + ws] ^= x << bs;
            if bs != 0 && i + ws + 1 < a.len() {
                a[i + ws + 1] ^= x >> (64 - bs);
            }
        }
        let mut hi = d / 64;
        loop {
            if a[hi] != 0 {
                da = Some(hi * 64 + 63 - a[hi].leading_zeros() as usize);
                break;
            }
            if hi == 0 {
                da = None;
                break;
            }
            hi -= 1;
        }
    }
}

/// Monic gcd of two F_2 polynomials given as 0/1 coefficient vectors.
pub(super) fn gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = pack(a);
    let mut y = pack(b);
    loop {
        let Some(dy) = degree(&y) else {
            return unpack(&x, degree(&x));
        };
        rem_in_place(&mut x, &y, dy);
        std::mem::swap(&mut x, &mut y);
        let keep = dy / 64 + 1;
        y.truncate(keep.max(1));
    }
}
