//! JSON input files. Each file names its own field.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use lambdakit::hopf::{Coalgebra, RestrictedLie};
use lambdakit::{Error, FPModule, FieldElement, FrobeniusField, Result, TwistedPoly};

/// A field element: an integer, or coefficients in the polynomial basis.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Int(i64),
    Coeffs(Vec<u32>),
}

impl ElementSpec {
    pub fn to_element(&self, k: &FrobeniusField) -> Result<FieldElement> {
        match self {
            ElementSpec::Int(a) => Ok(k.from_int(*a)),
            ElementSpec::Coeffs(cs) => k.from_coeffs(cs),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub ext_degree: usize,
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> usize {
    1
}

impl FieldSpec {
    pub fn field(&self) -> Result<FrobeniusField> {
        if self.ext_degree == 1 && self.modulus.is_none() {
            FrobeniusField::prime(self.p)
        } else {
            FrobeniusField::new(self.p, self.ext_degree, self.modulus.as_deref())
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// `[x, y] = value`; `[y, x]` is filled in as `-value` unless listed too.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub x: String,
    pub y: String,
    pub value: BTreeMap<String, ElementSpec>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct LieSpec {
    #[serde(flatten)]
    pub field: FieldSpec,
    pub labels: Vec<String>,
    #[serde(default)]
    pub weights: Option<Vec<u32>>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    /// `ξ(label)` for each label with a nonzero image.
    #[serde(default)]
    pub xi: BTreeMap<String, BTreeMap<String, ElementSpec>>,
}

impl LieSpec {
    pub fn build(&self) -> Result<RestrictedLie> {
        let k = self.field.field()?;
        let d = self.labels.len();
        let index = |l: &str| {
            self.labels.iter().position(|x| x == l).ok_or_else(|| Error::Invalid(format!("unknown basis label {l}")))
        };
        let vector = |m: &BTreeMap<String, ElementSpec>| -> Result<Vec<FieldElement>> {
            let mut v = vec![k.zero(); d];
            for (l, c) in m {
                v[index(l)?] = c.to_element(&k)?;
            }
            Ok(v)
        };
        let mut bracket = vec![vec![vec![k.zero(); d]; d]; d];
        let mut given = vec![vec![false; d]; d];
        for b in &self.brackets {
            let (i, j) = (index(&b.x)?, index(&b.y)?);
            let v = vector(&b.value)?;
            bracket[i][j] = v.clone();
            given[i][j] = true;
            if !given[j][i] {
                bracket[j][i] = v.iter().map(|&c| k.neg(c)).collect();
            }
        }
        let mut xi = vec![vec![k.zero(); d]; d];
        for (l, m) in &self.xi {
            xi[index(l)?] = vector(m)?;
        }
        RestrictedLie::new(k, self.labels.clone(), self.weights.clone(), bracket, xi)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct ModuleSpec {
    #[serde(flatten)]
    pub field: FieldSpec,
    pub generators: usize,
    /// Each relation lists one polynomial per generator, `ξ^0` coefficient first.
    #[serde(default)]
    pub relations: Vec<Vec<Vec<ElementSpec>>>,
}

impl ModuleSpec {
    pub fn build(&self) -> Result<FPModule> {
        let k = self.field.field()?;
        let relations = self
            .relations
            .iter()
            .map(|row| row.iter().map(|poly| parse_poly(&k, poly)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FPModule::new(k, self.generators, relations)
    }
}

pub fn parse_poly(k: &FrobeniusField, coeffs: &[ElementSpec]) -> Result<TwistedPoly> {
    Ok(TwistedPoly::new(coeffs.iter().map(|c| c.to_element(k)).collect::<Result<Vec<_>>>()?))
}

pub fn read_coalgebra(path: &Path) -> Result<Coalgebra> {
    read_json(path)
}
