use thiserror::Error;

/// Errors raised while reading input files.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate letter {0:?} in alphabet")]
    DuplicateLetter(char),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("alphabet needs at least two letters, found {0}")]
    AlphabetTooSmall(usize),
    #[error("alphabet is limited to {max} letters, found {found}")]
    AlphabetTooLarge { found: usize, max: usize },
    #[error("letter {0:?} has an empty image")]
    ErasingRule(char),
    #[error("letter {0:?} has no rule")]
    MissingRule(char),
    #[error("letter {0:?} has more than one rule")]
    DuplicateRule(char),
    #[error("permutation is not a bijection: {0}")]
    NotABijection(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Errors of the word and substitution layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum WordError {
    #[error("symbol index {0} is outside the alphabet")]
    SymbolOutsideAlphabet(usize),
    #[error("morphisms are defined over different alphabets")]
    AlphabetMismatch,
    #[error("letter {0:?} is not prolongable: its image must start with it and have length at least 2")]
    NotProlongable(char),
    #[error("no prefix of length {min_len} after {cap} substitution applications")]
    IterationCap { min_len: usize, cap: usize },
    #[error("morphism is not primitive")]
    NotPrimitive,
    #[error("Perron eigenvalue generates a field of degree {0}; exact mode supports degree at most 4")]
    FieldDegreeTooHigh(usize),
    #[error("power iteration did not reach the residual threshold (residual {0:e})")]
    NoConvergence(f64),
}

/// Errors of the language index and its queries.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LanguageError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("factor sets did not stabilize within {0} iterations")]
    NotStabilized(usize),
    #[error("length {n} is outside the indexed range 0..={max}")]
    OutOfRange { n: usize, max: usize },
    #[error("{0} is not a factor of the word")]
    NotAFactor(String),
}

/// Errors of the symmetry layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error("symmetry is not an antimorphism")]
    NotAntimorphic,
    #[error("group contains no antimorphism")]
    NoAntimorphism,
    #[error("no length up to {0} has all factors containing every letter")]
    NoUniformRecurrenceLength(usize),
    #[error("order {n} is below the threshold N = {threshold}")]
    BelowThreshold { n: usize, threshold: usize },
}

/// Errors of the frequency engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrequencyError {
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("base linear system for factors of length at most 2 is singular")]
    SingularBaseSystem,
    #[error("ancestors of {0} do not shrink; the working morphism is not expanding")]
    NonShrinkingAncestors(String),
}

/// Errors of the Rauzy graph layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Frequency(#[from] FrequencyError),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("no special factor of length {0}; the word looks periodic")]
    NoSpecialFactors(usize),
    #[error("symmetry maps edge {edge} outside the reduced graph")]
    NotInvariant { edge: String },
    #[error("walk from {0} does not reach a special vertex")]
    UnterminatedPath(String),
}

/// Errors of the bound evaluators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Frequency(#[from] FrequencyError),
    #[error("first difference of complexity is zero at n = {0} (periodic word)")]
    Periodic(usize),
    #[error("reversal is not an element of the group")]
    ReversalMissing,
    #[error("language is not invariant under the group")]
    NotInvariant,
    #[error("frequency set matches none of the closed-form families")]
    NoFamily,
}
