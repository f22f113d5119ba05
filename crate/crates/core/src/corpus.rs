//! Built-in words: a morphism file and a group file per name. The directory
//! named by `WORDSYM_CORPUS`, when set, replaces the embedded copies.

use std::path::PathBuf;

use crate::error::ParseError;
use crate::morphism::Morphism;
use crate::symmetry::{parse_generators, Symmetry};

pub const CORPUS_ENV: &str = "WORDSYM_CORPUS";

pub const NAMES: [&str; 4] = ["example", "thue_morse", "fibonacci", "periodic"];

const EMBEDDED: [(&str, &str, &str); 4] = [
    (
        "example",
        include_str!("../corpus/example.morphism"),
        include_str!("../corpus/example.group"),
    ),
    (
        "thue_morse",
        include_str!("../corpus/thue_morse.morphism"),
        include_str!("../corpus/thue_morse.group"),
    ),
    (
        "fibonacci",
        include_str!("../corpus/fibonacci.morphism"),
        include_str!("../corpus/fibonacci.group"),
    ),
    (
        "periodic",
        include_str!("../corpus/periodic.morphism"),
        include_str!("../corpus/periodic.group"),
    ),
];

/// A morphism with the generators of its symmetry group.
#[derive(Clone, Debug)]
pub struct CorpusWord {
    pub name: String,
    pub morphism: Morphism,
    pub generators: Vec<Symmetry>,
}

fn texts(name: &str) -> Result<(String, String), ParseError> {
    if let Ok(dir) = std::env::var(CORPUS_ENV) {
        let read = |ext: &str| {
            let path = PathBuf::from(&dir).join(format!("{name}.{ext}"));
            std::fs::read_to_string(&path).map_err(|source| ParseError::Io {
                path: path.display().to_string(),
                source,
            })
        };
        return Ok((read("morphism")?, read("group")?));
    }
    EMBEDDED
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, m, g)| (m.to_string(), g.to_string()))
        .ok_or_else(|| ParseError::Syntax {
            line: 0,
            message: format!("unknown corpus word {name:?}; known: {}", NAMES.join(", ")),
        })
}

pub fn load(name: &str) -> Result<CorpusWord, ParseError> {
    let (m, g) = texts(name)?;
    let morphism = Morphism::parse(&m)?;
    let generators = parse_generators(&g, morphism.alphabet())?;
    Ok(CorpusWord {
        name: name.to_string(),
        morphism,
        generators,
    })
}
