//! JSON file formats for systems, set families, weights and tie-breaks.

use std::fs;
use std::path::Path;

use matroid_approx::rational::{self, Rational};
use matroid_approx::{GroundSet, IndependenceSystem, Mask, Matroid, SetFamily, TieBreak, Weights};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::Failure;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    n: usize,
    maximal_independent: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetsFile {
    n: usize,
    sets: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsFile {
    v: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TieBreakFile {
    perm: Vec<usize>,
}

pub fn hex(m: Mask) -> String {
    m.to_string()
}

pub fn hexes(ms: &[Mask]) -> Vec<String> {
    ms.iter().map(|&m| hex(m)).collect()
}

pub fn parse_mask(s: &str) -> Result<Mask, Failure> {
    let digits = s
        .strip_prefix("0x")
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)))
        .ok_or_else(|| Failure::validation(format!("bad mask {s:?}: expected lowercase hex with 0x prefix")))?;
    u32::from_str_radix(digits, 16)
        .map(Mask)
        .map_err(|_| Failure::validation(format!("mask {s:?} does not fit in 32 bits")))
}

fn parse_masks(items: &[String], what: &str) -> Result<Vec<Mask>, Failure> {
    let masks = items.iter().map(|s| parse_mask(s)).collect::<Result<Vec<_>, _>>()?;
    if masks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::validation(format!("{what} must be listed in strictly ascending order")));
    }
    Ok(masks)
}

fn ground(n: usize) -> Result<GroundSet, Failure> {
    if n == 0 {
        return Err(Failure::validation("n must be at least 1"));
    }
    Ok(GroundSet::new(n)?)
}

pub fn system_json(sys: &IndependenceSystem) -> String {
    let f = SystemFile {
        n: sys.n(),
        maximal_independent: hexes(sys.maximal_sets()),
    };
    serde_json::to_string(&f).expect("serializable") + "\n"
}

pub fn sets_json(fam: &SetFamily) -> String {
    let f = SetsFile {
        n: fam.ground().len(),
        sets: hexes(fam.members()),
    };
    serde_json::to_string(&f).expect("serializable") + "\n"
}

pub fn weights_strings(v: &Weights) -> Vec<String> {
    v.values().iter().map(rational::format).collect()
}

pub fn parse_system(text: &str) -> Result<IndependenceSystem, Failure> {
    let f: SystemFile = serde_json::from_str(text).map_err(|e| Failure::validation(format!("system file: {e}")))?;
    let g = ground(f.n)?;
    let masks = parse_masks(&f.maximal_independent, "maximal_independent")?;
    Ok(IndependenceSystem::from_maximal(g, masks)?)
}

pub fn parse_sets(text: &str) -> Result<SetFamily, Failure> {
    let f: SetsFile = serde_json::from_str(text).map_err(|e| Failure::validation(format!("set-family file: {e}")))?;
    let g = ground(f.n)?;
    Ok(SetFamily::new(g, parse_masks(&f.sets, "sets")?)?)
}

pub fn parse_weights(text: &str, g: GroundSet) -> Result<Weights, Failure> {
    let f: WeightsFile = serde_json::from_str(text).map_err(|e| Failure::validation(format!("weights file: {e}")))?;
    let values = f.v.iter().map(|s| rational::parse(s)).collect::<Result<Vec<Rational>, _>>()?;
    Ok(Weights::new(g, values)?)
}

pub fn parse_tiebreak(text: &str, n: usize) -> Result<TieBreak, Failure> {
    let f: TieBreakFile = serde_json::from_str(text).map_err(|e| Failure::validation(format!("tie-break file: {e}")))?;
    if f.perm.len() != n {
        return Err(Failure::validation(format!("tie-break has {} entries for n = {n}", f.perm.len())));
    }
    Ok(TieBreak::from_labels(&f.perm)?)
}

/// Reads input files and accumulates a digest of their contents.
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn new() -> Inputs {
        Inputs { hasher: Sha256::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    pub fn system(&mut self, path: &Path) -> Result<IndependenceSystem, Failure> {
        let text = self.read(path)?;
        parse_system(&text).map_err(|e| e.context(path))
    }

    pub fn matroid(&mut self, path: &Path) -> Result<Matroid, Failure> {
        let sys = self.system(path)?;
        Matroid::new(sys).map_err(|e| Failure::from(e).context(path))
    }

    /// A set family on the ground set of `sys`.
    pub fn sets(&mut self, path: &Path, g: GroundSet) -> Result<SetFamily, Failure> {
        let text = self.read(path)?;
        let fam = parse_sets(&text).map_err(|e| e.context(path))?;
        if fam.ground() != g {
            return Err(Failure::validation(format!(
                "{}: n = {} but the system has n = {}",
                path.display(),
                fam.ground().len(),
                g.len()
            )));
        }
        Ok(fam)
    }

    pub fn weights(&mut self, path: &Path, g: GroundSet) -> Result<Weights, Failure> {
        let text = self.read(path)?;
        parse_weights(&text, g).map_err(|e| e.context(path))
    }

    pub fn tiebreak(&mut self, path: &Path, n: usize) -> Result<TieBreak, Failure> {
        let text = self.read(path)?;
        parse_tiebreak(&text, n).map_err(|e| e.context(path))
    }

    pub fn digest(self) -> String {
        self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_round_trip() {
        let text = "{\"n\":4,\"maximal_independent\":[\"0x3\",\"0xc\"]}\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(sys.maximal_sets(), &[Mask(0x3), Mask(0xc)]);
        assert_eq!(system_json(&sys), text);
    }

    #[test]
    fn masks_must_be_canonical() {
        assert!(parse_mask("0x1D").is_err());
        assert!(parse_mask("1d").is_err());
        assert!(parse_mask("0x").is_err());
        assert_eq!(parse_mask("0x1d").unwrap(), Mask(0x1d));
        assert!(parse_system("{\"n\":4,\"maximal_independent\":[\"0xc\",\"0x3\"]}").is_err());
        assert!(parse_system("{\"n\":4,\"maximal_independent\":[\"0x3\",\"0x7\"]}").is_err());
        assert!(parse_system("{\"n\":2,\"maximal_independent\":[\"0x4\"]}").is_err());
        assert!(parse_system("{\"n\":0,\"maximal_independent\":[]}").is_err());
        assert!(parse_system("{\"n\":2,\"maximal\":[]}").is_err());
    }

    #[test]
    fn weights_and_tiebreaks() {
        let g = GroundSet::new(3).unwrap();
        let v = parse_weights("{\"v\":[\"3\",\"5/2\",\"0\"]}", g).unwrap();
        assert_eq!(weights_strings(&v), ["3", "5/2", "0"]);
        assert!(parse_weights("{\"v\":[\"-1\",\"1\",\"1\"]}", g).is_err());
        assert!(parse_weights("{\"v\":[\"1\"]}", g).is_err());
        assert_eq!(parse_tiebreak("{\"perm\":[2,1,3]}", 3).unwrap().order(), &[1, 0, 2]);
        assert!(parse_tiebreak("{\"perm\":[2,2,3]}", 3).is_err());
        assert!(parse_tiebreak("{\"perm\":[1,2]}", 3).is_err());
    }
}
