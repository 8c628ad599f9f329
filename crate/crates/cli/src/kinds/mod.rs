//! One evaluator per document kind. Each turns a payload into case outcomes.

mod algebroid;
mod dirac;
mod ruth;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::document::Kind;
use crate::dto::decode;
use crate::error::{schema, Result};
use crate::outcome::CaseOutcome;

/// Hand-written cases and/or a seeded batch of generated ones.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Payload<C> {
    #[serde(default = "Vec::new")]
    cases: Vec<C>,
    random: Option<Random>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Random {
    count: usize,
    /// Allowed values of `k`; each kind has its own default.
    k: Option<Vec<u32>>,
    mode: Option<String>,
}

impl Random {
    fn ks(&self, default: &[u32], allowed: std::ops::RangeInclusive<u32>) -> Result<Vec<u32>> {
        let ks = self.k.clone().unwrap_or_else(|| default.to_vec());
        if ks.is_empty() || ks.iter().any(|k| !allowed.contains(k)) {
            return Err(schema(format!(
                "random.k must be a nonempty list within {}..={}",
                allowed.start(),
                allowed.end()
            )));
        }
        Ok(ks)
    }

    fn mode<'a>(&'a self, allowed: &[&'a str]) -> Result<&'a str> {
        match self.mode.as_deref() {
            Some(m) if allowed.contains(&m) => Ok(m),
            None if allowed.len() == 1 => Ok(allowed[0]),
            other => Err(schema(format!(
                "random.mode must be one of {allowed:?}, got {other:?}"
            ))),
        }
    }
}

/// The wire name of a unit enum variant.
fn kebab<T: serde::Serialize>(t: &T) -> String {
    serde_json::to_value(t)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn label(name: &Option<String>, i: usize) -> String {
    name.clone().unwrap_or_else(|| format!("case {}", i + 1))
}

/// Decodes the payload, runs the explicit cases in order, then the
/// generated ones from a generator seeded with `seed`.
fn run_payload<C: DeserializeOwned>(
    value: serde_json::Value,
    seed: u64,
    explicit: impl Fn(usize, &C) -> Result<Vec<CaseOutcome>>,
    generated: impl Fn(&Random, &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>>,
) -> Result<Vec<CaseOutcome>> {
    let payload: Payload<C> = decode(value, "payload")?;
    if payload.cases.is_empty() && payload.random.is_none() {
        return Err(schema("payload has neither `cases` nor `random`"));
    }
    let mut out = Vec::new();
    for (i, c) in payload.cases.iter().enumerate() {
        out.extend(explicit(i, c)?);
    }
    if let Some(r) = &payload.random {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        out.extend(generated(r, &mut rng)?);
    }
    Ok(out)
}

fn no_random(_: &Random, _: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    Err(schema("this kind has no `random` mode"))
}

pub fn evaluate(kind: Kind, payload: serde_json::Value, seed: u64) -> Result<Vec<CaseOutcome>> {
    match kind {
        Kind::MasterCheck => {
            run_payload(payload, seed, algebroid::master, algebroid::master_random)
        }
        Kind::Q3Check => run_payload(payload, seed, algebroid::q3, algebroid::q3_random),
        Kind::Bracket => run_payload(payload, seed, algebroid::bracket, algebroid::bracket_random),
        Kind::Twist => run_payload(payload, seed, algebroid::twist, algebroid::twist_random),
        Kind::DiracCheck => run_payload(payload, seed, dirac::dirac, dirac::dirac_random),
        Kind::QuadrupleCheck => run_payload(payload, seed, dirac::quadruple, no_random),
        Kind::NambuCheck => run_payload(payload, seed, dirac::nambu, dirac::nambu_random),
        Kind::RuthCheck => run_payload(payload, seed, ruth::ruth, ruth::ruth_random),
        Kind::LkCheck => run_payload(payload, seed, ruth::lk, ruth::lk_random),
        Kind::CorrespondenceCheck => run_payload(
            payload,
            seed,
            ruth::correspondence,
            ruth::correspondence_random,
        ),
    }
}
