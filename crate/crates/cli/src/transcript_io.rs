//! Transcript files: a TOML document mirroring the fixture encoding.
//!
//! Words are lists of signed one-based generator indices (`-3` is `g3^-1`).
//! Elements are `{ unit = [...], translation = [...] }` in power-basis
//! coefficients. The `[secret]` table is optional; without it an attack can
//! still run but success cannot be judged.

use cke_core::group::{GroupWord, Letter};
use cke_core::platform::{GroupElement, PlatformSpec};
use cke_core::protocol::{ProtocolParams, ProtocolWords, PublicView, Transcript};
use cke_core::FieldElement;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixture::{vector_from_repr, vector_to_repr, FixtureError, RationalRepr};

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("malformed transcript: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("cannot serialize transcript: {0}")]
    Serialize(#[from] toml::ser::Error),
    #[error("transcript was made on `{found}`, not `{expected}`")]
    PlatformName { expected: String, found: String },
    #[error("word letter 0 is not a generator index")]
    ZeroLetter,
    #[error("{0}: {1}")]
    Element(&'static str, String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub unit: Vec<RationalRepr>,
    pub translation: Vec<RationalRepr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub n1: usize,
    pub n2: usize,
    pub private_len: usize,
    pub gen_word_length: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordsDoc {
    pub alice_public: Vec<Vec<i64>>,
    pub bob_public: Vec<Vec<i64>>,
    pub alice_private: Vec<i64>,
    pub bob_private: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicDoc {
    pub alice_public: Vec<ElementDoc>,
    pub bob_public: Vec<ElementDoc>,
    pub alice_conjugates: Vec<ElementDoc>,
    pub bob_conjugates: Vec<ElementDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecretDoc {
    pub words: WordsDoc,
    pub alice: ElementDoc,
    pub bob: ElementDoc,
    pub shared_key: ElementDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranscriptDoc {
    pub platform: String,
    pub params: ParamsDoc,
    pub public: PublicDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secret: Option<SecretDoc>,
}

/// A parsed transcript; `transcript` is `None` when secrets were withheld.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredTranscript {
    pub platform: String,
    pub params: ProtocolParams,
    pub view: PublicView<GroupElement>,
    pub transcript: Option<Transcript<GroupElement>>,
}

fn word_to_doc(w: &GroupWord) -> Vec<i64> {
    w.letters()
        .iter()
        .map(|l| {
            let i = l.generator as i64 + 1;
            if l.inverse {
                -i
            } else {
                i
            }
        })
        .collect()
}

fn word_from_doc(v: &[i64]) -> Result<GroupWord, TranscriptError> {
    v.iter()
        .map(|&i| match i {
            0 => Err(TranscriptError::ZeroLetter),
            _ => Ok(Letter::new(i.unsigned_abs() as usize - 1, i < 0)),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(GroupWord::new)
}

fn element_to_doc(g: &GroupElement) -> ElementDoc {
    ElementDoc {
        unit: vector_to_repr(g.unit().coeffs()),
        translation: vector_to_repr(g.translation().coeffs()),
    }
}

fn element_from_doc(
    p: &PlatformSpec,
    d: &ElementDoc,
    what: &'static str,
) -> Result<GroupElement, TranscriptError> {
    let err = |e: String| TranscriptError::Element(what, e);
    let unit =
        FieldElement::new(p.field(), vector_from_repr(&d.unit)?).map_err(|e| err(e.to_string()))?;
    let translation = FieldElement::new(p.field(), vector_from_repr(&d.translation)?)
        .map_err(|e| err(e.to_string()))?;
    p.element(unit, translation).map_err(|e| err(e.to_string()))
}

fn elements_from_doc(
    p: &PlatformSpec,
    ds: &[ElementDoc],
    what: &'static str,
) -> Result<Vec<GroupElement>, TranscriptError> {
    ds.iter().map(|d| element_from_doc(p, d, what)).collect()
}

pub fn to_doc(
    platform: &PlatformSpec,
    params: &ProtocolParams,
    t: &Transcript<GroupElement>,
    with_secrets: bool,
) -> TranscriptDoc {
    let docs = |v: &[GroupElement]| v.iter().map(element_to_doc).collect::<Vec<_>>();
    TranscriptDoc {
        platform: platform.name().to_owned(),
        params: ParamsDoc {
            n1: params.n1,
            n2: params.n2,
            private_len: params.private_len,
            gen_word_length: params.gen_word_length,
            seed: params.seed,
        },
        public: PublicDoc {
            alice_public: docs(&t.view.alice_public),
            bob_public: docs(&t.view.bob_public),
            alice_conjugates: docs(&t.view.alice_conjugates),
            bob_conjugates: docs(&t.view.bob_conjugates),
        },
        secret: with_secrets.then(|| SecretDoc {
            words: WordsDoc {
                alice_public: t.words.alice_public.iter().map(word_to_doc).collect(),
                bob_public: t.words.bob_public.iter().map(word_to_doc).collect(),
                alice_private: word_to_doc(&t.words.alice_private),
                bob_private: word_to_doc(&t.words.bob_private),
            },
            alice: element_to_doc(&t.alice_secret),
            bob: element_to_doc(&t.bob_secret),
            shared_key: element_to_doc(&t.shared_key),
        }),
    }
}

pub fn write_transcript(
    platform: &PlatformSpec,
    params: &ProtocolParams,
    t: &Transcript<GroupElement>,
    with_secrets: bool,
) -> Result<String, TranscriptError> {
    Ok(toml::to_string(&to_doc(platform, params, t, with_secrets))?)
}

/// Reads only the platform name, so the caller can load the fixture first.
pub fn peek_platform(text: &str) -> Result<String, TranscriptError> {
    #[derive(Deserialize)]
    struct Head {
        platform: String,
    }
    Ok(toml::from_str::<Head>(text)?.platform)
}

pub fn read_transcript(
    platform: &PlatformSpec,
    text: &str,
) -> Result<StoredTranscript, TranscriptError> {
    let doc: TranscriptDoc = toml::from_str(text)?;
    if doc.platform != platform.name() {
        return Err(TranscriptError::PlatformName {
            expected: platform.name().to_owned(),
            found: doc.platform,
        });
    }
    let params = ProtocolParams {
        n1: doc.params.n1,
        n2: doc.params.n2,
        private_len: doc.params.private_len,
        gen_word_length: doc.params.gen_word_length,
        seed: doc.params.seed,
    };
    let view = PublicView {
        alice_public: elements_from_doc(platform, &doc.public.alice_public, "alice_public")?,
        bob_public: elements_from_doc(platform, &doc.public.bob_public, "bob_public")?,
        alice_conjugates: elements_from_doc(
            platform,
            &doc.public.alice_conjugates,
            "alice_conjugates",
        )?,
        bob_conjugates: elements_from_doc(platform, &doc.public.bob_conjugates, "bob_conjugates")?,
    };
    let transcript = match &doc.secret {
        None => None,
        Some(s) => {
            let words = ProtocolWords {
                alice_public: s
                    .words
                    .alice_public
                    .iter()
                    .map(|w| word_from_doc(w))
                    .collect::<Result<_, _>>()?,
                bob_public: s
                    .words
                    .bob_public
                    .iter()
                    .map(|w| word_from_doc(w))
                    .collect::<Result<_, _>>()?,
                alice_private: word_from_doc(&s.words.alice_private)?,
                bob_private: word_from_doc(&s.words.bob_private)?,
            };
            Some(Transcript {
                words,
                view: view.clone(),
                alice_secret: element_from_doc(platform, &s.alice, "secret.alice")?,
                bob_secret: element_from_doc(platform, &s.bob, "secret.bob")?,
                shared_key: element_from_doc(platform, &s.shared_key, "secret.shared_key")?,
            })
        }
    };
    Ok(StoredTranscript {
        platform: doc.platform,
        params,
        view,
        transcript,
    })
}
