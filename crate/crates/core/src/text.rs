//! String normalization used for matching titles, names, venues and
//! references.

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Lowercases and removes diacritics.
pub fn fold(s: &str) -> String {
    s.nfd()
        .filter(|c| !is_combining_mark(*c))
        .flat_map(char::to_lowercase)
        .collect()
}

/// Lowercase, strip diacritics and punctuation, collapse whitespace.
///
/// Punctuation becomes a word separator, so `"Quantum-dot"` and
/// `"quantum dot"` normalize identically.
pub fn normalize_title(s: &str) -> String {
    let folded: String = fold(s)
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect();
    collapse_whitespace(&folded)
}

pub fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Key for institution and other free-text labels: lowercase, whitespace
/// collapsed, otherwise verbatim.
pub fn normalize_label(s: &str) -> String {
    collapse_whitespace(&s.to_lowercase())
}

/// Canonical DOI: lowercase, without resolver prefix.
pub fn normalize_doi(s: &str) -> String {
    let lower = s.trim().to_lowercase();
    let stripped = ["https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/", "doi:"]
        .iter()
        .find_map(|p| lower.strip_prefix(p))
        .unwrap_or(&lower);
    stripped.trim().to_string()
}

/// `"surname, initials"` key for an author display name.
///
/// Accepts `"Surname, Given Names"` and `"Given Names Surname"`. Initials are
/// the first letters of the given-name parts, without separators.
pub fn author_key(display_name: &str) -> String {
    let folded = fold(display_name);
    let (surname, given) = match folded.split_once(',') {
        Some((s, g)) => (s.to_string(), g.to_string()),
        None => {
            let parts: Vec<&str> = folded.split_whitespace().collect();
            match parts.split_last() {
                Some((last, rest)) => (last.to_string(), rest.join(" ")),
                None => (String::new(), String::new()),
            }
        }
    };
    let surname = collapse_whitespace(
        &surname
            .chars()
            .map(|c| if c.is_alphanumeric() || c == '-' || c == '\'' { c } else { ' ' })
            .collect::<String>(),
    );
    let initials: String = given
        .split(|c: char| c.is_whitespace() || c == '-' || c == '.')
        .filter_map(|part| part.chars().find(|c| c.is_alphanumeric()))
        .collect();
    if initials.is_empty() {
        surname
    } else {
        format!("{surname}, {initials}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn titles_fold_punctuation_and_accents() {
        assert_eq!(
            normalize_title("  Über   Quantum-Dots: a Review! "),
            "uber quantum dots a review"
        );
    }

    #[test]
    fn author_keys_agree_across_name_orders() {
        assert_eq!(author_key("Novak, Petra"), "novak, p");
        assert_eq!(author_key("Petra Novak"), "novak, p");
        assert_eq!(author_key("Müller, Hans-Peter"), "muller, hp");
        assert_eq!(author_key("H. P. Müller"), "muller, hp");
        assert_eq!(author_key("Plato"), "plato");
    }

    #[test]
    fn doi_prefixes_removed() {
        assert_eq!(normalize_doi("https://doi.org/10.1000/ABC"), "10.1000/abc");
        assert_eq!(normalize_doi("doi:10.1/x"), "10.1/x");
    }
}
