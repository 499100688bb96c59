use alloc::string::String;
use alloc::vec::Vec;

/// An identifier that compares case-insensitively with runs of whitespace
/// collapsed to single spaces. The original spelling (trimmed and collapsed)
/// is kept for display.
#[derive(Debug, Clone)]
pub(crate) struct Ident {
    display: String,
    key: String,
}

impl Ident {
    /// Returns `None` when the name is empty or whitespace-only.
    pub(crate) fn new(raw: &str) -> Option<Self> {
        let display = raw.split_whitespace().collect::<Vec<_>>().join(" ");
        if display.is_empty() {
            return None;
        }
        let key = fold(&display);
        Some(Self { display, key })
    }

    pub(crate) fn display(&self) -> &str {
        &self.display
    }

    pub(crate) fn key(&self) -> &str {
        &self.key
    }
}

/// The comparison form of a name: trimmed, inner whitespace collapsed,
/// lowercased.
pub(crate) fn fold(raw: &str) -> String {
    let mut key = String::with_capacity(raw.len());
    for (i, word) in raw.split_whitespace().enumerate() {
        if i > 0 {
            key.push(' ');
        }
        for ch in word.chars() {
            key.extend(ch.to_lowercase());
        }
    }
    key
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Ident {}

impl PartialOrd for Ident {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ident {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl core::hash::Hash for Ident {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl core::fmt::Display for Ident {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.display)
    }
}
