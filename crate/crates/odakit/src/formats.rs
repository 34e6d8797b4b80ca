//! JSON file formats. Orders are given as explicit `[i, j]` index pairs and
//! are never closed reflexively or transitively on load.

use std::path::Path;

use odakit_core::relation::point_name;
use odakit_core::{AbstractOda, BinRel, FinitePoset, OdaOps, UpSet};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub base: usize,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
    pub comp: Vec<Vec<usize>>,
    pub conv: Vec<usize>,
    pub dom: Vec<usize>,
    pub ran: Vec<usize>,
    pub zero: usize,
    pub id: usize,
}

fn pairs(v: &[[usize; 2]]) -> Vec<(usize, usize)> {
    v.iter().map(|&[a, b]| (a, b)).collect()
}

impl PosetFile {
    pub fn to_poset(&self) -> Result<FinitePoset> {
        Ok(FinitePoset::from_pairs(self.elements.clone(), &pairs(&self.leq))?)
    }

    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetFile { elements: p.labels().to_vec(), leq: p.leq_pairs().into_iter().map(|(a, b)| [a, b]).collect() }
    }
}

impl RelationFile {
    pub fn to_relation(&self) -> Result<BinRel> {
        Ok(BinRel::from_pairs(self.base, &pairs(&self.pairs))?)
    }

    pub fn from_relation(r: &BinRel) -> Self {
        RelationFile { base: r.base(), pairs: r.pairs().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<AbstractOda> {
        let poset = FinitePoset::from_pairs(self.elements.clone(), &pairs(&self.leq))?;
        Ok(AbstractOda::new(
            poset,
            self.comp.clone(),
            self.conv.clone(),
            self.dom.clone(),
            self.ran.clone(),
            self.zero,
            self.id,
        )?)
    }

    pub fn from_algebra(a: &AbstractOda) -> Self {
        AlgebraFile {
            elements: a.labels().to_vec(),
            leq: a.poset().leq_pairs().into_iter().map(|(x, y)| [x, y]).collect(),
            comp: a.comp_table(),
            conv: a.conv_table().to_vec(),
            dom: a.dom_table().to_vec(),
            ran: a.ran_table().to_vec(),
            zero: a.zero(),
            id: a.one(),
        }
    }
}

/// Generators for `complete --base K`: a list of relations, each a list of pairs.
pub type GeneratorsFile = Vec<Vec<[usize; 2]>>;

pub fn generators(file: &GeneratorsFile, base: usize) -> Result<Vec<BinRel>> {
    file.iter().map(|ps| Ok(BinRel::from_pairs(base, &pairs(ps))?)).collect()
}

pub fn parse<T: DeserializeOwned>(src: &str, origin: &str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| CliError::input(format!("{origin}: {e}")))
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    parse(&src, &path.display().to_string())
}

/// A relation as a list of named pairs, e.g. `["(a,b)", "(c,d)"]`.
pub fn relation_names(r: &BinRel) -> Vec<String> {
    let k = r.base();
    r.pairs().into_iter().map(|(u, v)| format!("({},{})", point_name(k, u), point_name(k, v))).collect()
}

/// Minimal elements of an up-set over relations.
pub fn relation_antichain(u: &UpSet<BinRel>) -> Vec<Vec<String>> {
    u.minimals().iter().map(relation_names).collect()
}

/// Minimal elements of an up-set over an algebra, by label.
pub fn labelled_antichain(a: &AbstractOda, u: &UpSet<usize>) -> Vec<String> {
    u.minimals().iter().map(|&i| a.label(i).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_not_closed_on_load() {
        let f: PosetFile = parse(r#"{"elements":["a","b"],"leq":[[0,1]]}"#, "inline").unwrap();
        assert!(f.to_poset().is_err());
        let f: PosetFile = parse(r#"{"elements":["a","b"],"leq":[[0,0],[1,1],[0,1]]}"#, "inline").unwrap();
        let p = f.to_poset().unwrap();
        let mut back = PosetFile::from_poset(&p);
        back.leq.sort();
        let mut want = f.leq.clone();
        want.sort();
        assert_eq!((back.elements, back.leq), (f.elements, want));
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse::<PosetFile>("{\n  \"elements\": [1]\n}", "p.json").unwrap_err();
        let msg = e.to_string();
        assert!(msg.starts_with("p.json:") && msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn algebra_round_trip() {
        let p = odakit_core::FullProperOda::new(1).unwrap().materialize(16).unwrap();
        let f = AlgebraFile::from_algebra(&p.algebra);
        assert_eq!(f.to_algebra().unwrap(), p.algebra);
    }
}
