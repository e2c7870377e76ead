//! File formats, renderers and the command-line front end for
//! [`qtsg_core`].

pub mod cli;
pub mod data;
pub mod format;
pub mod render;

pub use format::corpus::{parse_corpus, serialize_corpus};
pub use format::grammar::{parse_grammar, serialize_grammar};
pub use format::tag::{parse_tag_grammar, serialize_tag_grammar};
pub use format::{ErrorKind, ParseError};
