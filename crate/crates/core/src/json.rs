//! JSON forms of posets, complexes, labellings and congruences.

use serde::{Deserialize, Serialize};

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::FinitePoset;
use crate::sb::EdgeLabelling;
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetJson {
    /// Canonical form: elements and covers sorted.
    pub fn from_poset(poset: &FinitePoset) -> Self {
        let mut elements = poset.names().to_vec();
        elements.sort();
        let mut covers: Vec<(String, String)> = poset
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| (poset.name(x).to_string(), poset.name(y).to_string()))
            .collect();
        covers.sort();
        PosetJson { elements, covers }
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_covers(self.elements.clone(), &self.covers)
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::new(self.to_poset()?)
    }
}

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    serde_json::from_str::<PosetJson>(text).map_err(|e| Error::Parse(e.to_string()))?.to_poset()
}

pub fn parse_lattice(text: &str) -> Result<Lattice> {
    Lattice::new(parse_poset(text)?)
}

pub fn poset_to_string(poset: &FinitePoset) -> String {
    serde_json::to_string_pretty(&PosetJson::from_poset(poset)).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl ComplexJson {
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        ComplexJson { vertices: complex.vertices().to_vec(), facets: complex.named_facets() }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|v| self.vertices.iter().position(|w| w == v).ok_or_else(|| Error::UnknownElement(v.clone())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::from_facets(self.vertices.clone(), facets)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabellingJson {
    pub labels: Vec<((String, String), String)>,
}

impl LabellingJson {
    pub fn from_labelling(lattice: &Lattice, labelling: &EdgeLabelling) -> Self {
        let labels = labelling
            .iter()
            .map(|((x, y), l)| ((lattice.name(x).to_string(), lattice.name(y).to_string()), l.to_string()))
            .collect();
        LabellingJson { labels }
    }

    pub fn to_labelling(&self, lattice: &Lattice) -> Result<EdgeLabelling> {
        EdgeLabelling::from_named(lattice, &self.labels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    pub blocks: Vec<Vec<String>>,
}

impl CongruenceJson {
    pub fn from_congruence(lattice: &Lattice, congruence: &Congruence) -> Self {
        CongruenceJson { blocks: congruence.named_blocks(lattice) }
    }

    pub fn to_congruence(&self, lattice: &Lattice) -> Result<Congruence> {
        Congruence::from_named_blocks(lattice, &self.blocks)
    }
}
