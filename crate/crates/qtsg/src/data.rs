//! Built-in grammar and corpus files, as shipped in `data/`.

pub const GERMAN_GRAMMAR: &str = include_str!("../data/german.qtg");
pub const GERMAN_CORPUS: &str = include_str!("../data/german.corpus");
pub const ENGLISH_GRAMMAR: &str = include_str!("../data/english.qtg");
pub const ENGLISH_CORPUS: &str = include_str!("../data/english.corpus");
pub const TAGCOUNT_TAG: &str = include_str!("../data/tagcount.tag");
pub const TAGCOUNT_GRAMMAR: &str = include_str!("../data/tagcount.qtg");
pub const TAGCOUNT_CORPUS: &str = include_str!("../data/tagcount.corpus");

/// `(file name, contents)` of the files that make up a demo.
pub fn files(name: &str) -> Vec<(&'static str, &'static str)> {
    match name {
        "german" => vec![("german.qtg", GERMAN_GRAMMAR), ("german.corpus", GERMAN_CORPUS)],
        "english" => vec![("english.qtg", ENGLISH_GRAMMAR), ("english.corpus", ENGLISH_CORPUS)],
        "tagcount" => vec![
            ("tagcount.tag", TAGCOUNT_TAG),
            ("tagcount.qtg", TAGCOUNT_GRAMMAR),
            ("tagcount.corpus", TAGCOUNT_CORPUS),
        ],
        _ => Vec::new(),
    }
}

/// Every shipped file.
pub fn all_files() -> Vec<(&'static str, &'static str)> {
    ["german", "english", "tagcount"].into_iter().flat_map(files).collect()
}
