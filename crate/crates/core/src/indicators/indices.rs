use crate::scalar::Scalar;

fn sorted_desc(citations: &[u64]) -> Vec<u64> {
    let mut v = citations.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Largest `h` such that `h` items have at least `h` citations each.
pub fn h_index(citations: &[u64]) -> usize {
    sorted_desc(citations)
        .iter()
        .enumerate()
        .take_while(|(i, &c)| c > (*i as u64))
        .count()
}

/// Largest `g` (at most the number of items) such that the `g` most cited
/// items together have at least `g²` citations.
pub fn g_index(citations: &[u64]) -> usize {
    let mut cumulative: u128 = 0;
    let mut g = 0;
    for (i, &c) in sorted_desc(citations).iter().enumerate() {
        cumulative += u128::from(c);
        let rank = (i + 1) as u128;
        if cumulative >= rank * rank {
            g = i + 1;
        }
    }
    g
}

/// Number of items with at least `threshold` citations.
pub fn i_index(citations: &[u64], threshold: u64) -> usize {
    citations.iter().filter(|&&c| c >= threshold).count()
}

/// `h` divided by the inclusive career length in years.
pub fn m_quotient<S: Scalar>(h: usize, first_pub_year: i32, reference_year: i32) -> S {
    let years = (reference_year - first_pub_year + 1).max(1) as usize;
    S::of_count(h) / S::of_count(years)
}
