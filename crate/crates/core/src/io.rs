//! Word files: one word per line, elements as space-separated base-p
//! integers. Blank lines and lines starting with `#` are skipped.

use crate::gf::{Fe, FieldSpec};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordFileError {
    #[error("line {line}: {token:?} is not an element of GF({q})")]
    BadElement { line: usize, token: String, q: u32 },
    #[error("line {line}: expected {expected} elements, found {got}")]
    WrongLength { line: usize, expected: usize, got: usize },
}

/// Parses a word file. When `len` is given every word must have that length.
pub fn parse_words(text: &str, field: &FieldSpec, len: Option<usize>) -> Result<Vec<Vec<Fe>>, WordFileError> {
    let mut words = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let word = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .ok()
                    .and_then(|v| field.elem(v).ok())
                    .ok_or_else(|| WordFileError::BadElement {
                        line: idx + 1,
                        token: tok.to_owned(),
                        q: field.size(),
                    })
            })
            .collect::<Result<Vec<Fe>, _>>()?;
        if let Some(expected) = len.filter(|&n| n != word.len()) {
            return Err(WordFileError::WrongLength {
                line: idx + 1,
                expected,
                got: word.len(),
            });
        }
        words.push(word);
    }
    Ok(words)
}

pub fn format_word(word: &[Fe]) -> String {
    word.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn format_words<W: AsRef<[Fe]>>(words: &[W]) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&format_word(w.as_ref()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use proptest::prelude::*;

    #[test]
    fn parse_errors() {
        let f = build_field(5, 1, None).unwrap();
        assert_eq!(parse_words("# c\n\n1 2 3\n", &f, Some(3)).unwrap().len(), 1);
        assert!(matches!(
            parse_words("1 2 5", &f, None),
            Err(WordFileError::BadElement { line: 1, .. })
        ));
        assert!(matches!(
            parse_words("1 2\n1 x", &f, None),
            Err(WordFileError::BadElement { line: 2, .. })
        ));
        assert_eq!(
            parse_words("1 2\n", &f, Some(3)),
            Err(WordFileError::WrongLength { line: 1, expected: 3, got: 2 })
        );
    }

    proptest! {
        #[test]
        fn round_trip(words in prop::collection::vec(prop::collection::vec(0u32..16, 1..20), 0..6)) {
            let f = build_field(2, 4, None).unwrap();
            let words: Vec<Vec<Fe>> = words.into_iter().map(|w| w.into_iter().map(Fe::from_raw).collect()).collect();
            let text = format_words(&words);
            prop_assert_eq!(parse_words(&text, &f, None).unwrap(), words);
        }
    }
}
