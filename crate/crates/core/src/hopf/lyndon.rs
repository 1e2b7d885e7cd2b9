//! Lyndon words over an ordered alphabet `0 < 1 < … < k−1`.

/// `w` is Lyndon iff it is nonempty and strictly smaller than each of its
/// proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// All Lyndon words of length `1..=max_len` over `letters` letters, in
/// lexicographic order (Duval's generation algorithm).
pub fn lyndon_words(letters: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if letters == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(letters - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Chen–Fox–Lyndon factorization `w = l₁l₂…l_k` with `l₁ ≥ l₂ ≥ … ≥ l_k`
/// Lyndon (Duval's algorithm).
pub fn cfl_factorization(w: &[u8]) -> Vec<Vec<u8>> {
    let n = w.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && w[k] <= w[j] {
            if w[k] < w[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push(w[i..i + j - k].to_vec());
            i += j - k;
        }
    }
    factors
}
