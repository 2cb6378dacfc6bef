//! Loader for the versioned K-theory case data in `data/fixtures.json`.

use std::path::Path;

use serde_json::Value;
use z2cross::ktheory::{CaseFixture, CaseId, PushoutInputs, SideCheck, SubgroupInvariants};

use crate::encode::{group_from_json, int_matrix_from_json, int_vec_from_json};
use crate::error::CliError;

pub const BUNDLED: &str = include_str!("../data/fixtures.json");
pub const FORMAT_VERSION: u64 = 1;

/// A case together with the free-text fields the core type does not carry.
#[derive(Clone, Debug)]
pub struct LoadedCase {
    pub fixture: CaseFixture,
    pub description: String,
    pub anchor: String,
}

pub fn parse_document(text: &str, origin: &str) -> Result<Value, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|source| CliError::Json {
        path: origin.to_string(),
        source,
    })?;
    match doc.get("format").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) => Ok(doc),
        other => Err(CliError::input(format!(
            "{origin}: unsupported fixture format {other:?} (expected {FORMAT_VERSION})"
        ))),
    }
}

pub fn read_document(path: Option<&Path>) -> Result<Value, CliError> {
    match path {
        None => parse_document(BUNDLED, "bundled fixtures"),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            parse_document(&text, &p.display().to_string())
        }
    }
}

pub fn notes(doc: &Value) -> Vec<String> {
    strings(doc.get("notes"))
}

fn strings(v: Option<&Value>) -> Vec<String> {
    v.and_then(Value::as_array)
        .map(|xs| {
            xs.iter()
                .filter_map(|x| x.as_str().map(str::to_string))
                .collect()
        })
        .unwrap_or_default()
}

fn field<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::input(format!("{what}: missing \"{key}\"")))
}

pub fn pushout_inputs(v: &Value, what: &str) -> Result<PushoutInputs, CliError> {
    let group = |k: &str| group_from_json(field(v, k, what)?, &format!("{what}.{k}"));
    let matrix = |k: &str| int_matrix_from_json(field(v, k, what)?, &format!("{what}.{k}"));
    Ok(PushoutInputs {
        g1: group("g1")?,
        g2: group("g2")?,
        g_g: group("g_g")?,
        i1: matrix("i1")?,
        i2: matrix("i2")?,
    })
}

pub fn load_case(doc: &Value, case: CaseId) -> Result<LoadedCase, CliError> {
    let name = case.as_str();
    let c = doc
        .get("cases")
        .and_then(|cs| cs.get(name))
        .ok_or_else(|| CliError::input(format!("fixture data has no case \"{name}\"")))?;
    let expected = field(c, "expected", name)?;
    let side_check = match c.get("side_check") {
        None | Some(Value::Null) => None,
        Some(sc) => {
            let what = format!("{name}.side_check");
            let ambient_rank = field(sc, "ambient_rank", &what)?.as_u64().ok_or_else(|| {
                CliError::input(format!("{what}.ambient_rank: expected an integer"))
            })? as usize;
            let generators = field(sc, "generators", &what)?
                .as_array()
                .ok_or_else(|| CliError::input(format!("{what}.generators: expected an array")))?
                .iter()
                .enumerate()
                .map(|(k, g)| int_vec_from_json(g, &format!("{what}.generators[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let exp = field(sc, "expected", &what)?;
            let rank = field(exp, "rank", &what)?.as_u64().ok_or_else(|| {
                CliError::input(format!("{what}.expected.rank: expected an integer"))
            })? as usize;
            let divisors = int_vec_from_json(
                field(exp, "divisors", &what)?,
                &format!("{what}.expected.divisors"),
            )?;
            Some(SideCheck {
                ambient_rank,
                generators,
                expected: SubgroupInvariants { rank, divisors },
            })
        }
    };
    let fixture = CaseFixture {
        case_id: case,
        k0_inputs: pushout_inputs(field(c, "k0", name)?, &format!("{name}.k0"))?,
        k1_inputs: pushout_inputs(field(c, "k1", name)?, &format!("{name}.k1"))?,
        expected_k0: group_from_json(field(expected, "k0", name)?, &format!("{name}.expected.k0"))?,
        expected_k1: group_from_json(field(expected, "k1", name)?, &format!("{name}.expected.k1"))?,
        generator_notes: strings(c.get("generator_notes")),
        side_check,
    };
    Ok(LoadedCase {
        fixture,
        description: c
            .get("description")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string(),
        anchor: c
            .get("anchor")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string(),
    })
}
