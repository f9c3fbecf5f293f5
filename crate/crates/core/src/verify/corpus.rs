use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::word::{enumerate_words, gen_family, Family, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveSpec {
    pub alphabet_size: usize,
    /// Every length from 0 up to this one is enumerated.
    pub max_len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub from: i64,
    pub to: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub count: usize,
    pub length: usize,
    pub seed: u64,
}

/// Which words to check. A fixed seed makes the corpus reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub exhaustive: Vec<ExhaustiveSpec>,
    pub families: Vec<FamilySpec>,
    pub random: Vec<RandomSpec>,
}

pub const DEFAULT_SEED: u64 = 0x5eed_2012;

impl CorpusSpec {
    /// Binary words up to length 14, ternary up to 9, `w_k` for k ≤ 50,
    /// Fibonacci and Thue–Morse prefixes up to 512, and 1000 random binary
    /// words of length 200.
    pub fn standard() -> Self {
        CorpusSpec {
            exhaustive: vec![
                ExhaustiveSpec {
                    alphabet_size: 2,
                    max_len: 14,
                },
                ExhaustiveSpec {
                    alphabet_size: 3,
                    max_len: 9,
                },
            ],
            families: vec![
                FamilySpec {
                    family: Family::Wk,
                    from: 1,
                    to: 50,
                },
                FamilySpec {
                    family: Family::Fibonacci,
                    from: 1,
                    to: 512,
                },
                FamilySpec {
                    family: Family::ThueMorse,
                    from: 1,
                    to: 512,
                },
            ],
            random: vec![RandomSpec {
                count: 1000,
                length: 200,
                seed: DEFAULT_SEED,
            }],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.exhaustive.is_empty() && self.families.is_empty() && self.random.is_empty()
    }

    /// The words in a fixed order, duplicates dropped (first source wins).
    pub fn build(&self) -> Result<Vec<CorpusWord>> {
        let mut out = Vec::new();
        for e in &self.exhaustive {
            for len in 0..=e.max_len {
                for word in enumerate_words(e.alphabet_size, len) {
                    out.push(CorpusWord {
                        source: format!("exhaustive:{}", e.alphabet_size),
                        word,
                        wk: None,
                    });
                }
            }
        }
        for f in &self.families {
            for param in f.from..=f.to {
                out.push(CorpusWord {
                    source: format!("{}:{param}", f.family),
                    word: gen_family(f.family, param)?,
                    wk: (f.family == Family::Wk).then_some(param as usize),
                });
            }
        }
        for r in &self.random {
            let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
            for k in 0..r.count {
                let symbols = (0..r.length)
                    .map(|_| if rng.random_bool(0.5) { b'1' } else { b'0' })
                    .collect();
                out.push(CorpusWord {
                    source: format!("random:{}:{k}", r.seed),
                    word: Word::new(symbols),
                    wk: None,
                });
            }
        }
        let mut first: HashMap<Word<u8>, usize> = HashMap::new();
        let mut unique: Vec<CorpusWord> = Vec::with_capacity(out.len());
        for cw in out {
            match first.get(&cw.word) {
                // keep the family tag so family-specific checks still run
                Some(&k) => {
                    if unique[k].wk.is_none() {
                        unique[k].wk = cw.wk;
                    }
                }
                None => {
                    first.insert(cw.word.clone(), unique.len());
                    unique.push(cw);
                }
            }
        }
        Ok(unique)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusWord {
    pub source: String,
    pub word: Word<u8>,
    /// `Some(k)` when the word is `w_k`.
    pub wk: Option<usize>,
}
