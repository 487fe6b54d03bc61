//! JSON form: `{"vars": [...], "terms": [{"coeff": "<decimal>", "exp": [...]}]}`,
//! terms in descending canonical order.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, RingError, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        PolyJson {
            vars: p.vars.names().to_vec(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    exp: m.exps().to_vec(),
                })
                .collect(),
        }
    }
}

impl From<LaurentPoly> for PolyJson {
    fn from(p: LaurentPoly) -> Self {
        PolyJson::from(&p)
    }
}

impl TryFrom<PolyJson> for LaurentPoly {
    type Error = RingError;

    fn try_from(j: PolyJson) -> Result<Self, Self::Error> {
        let vars = VarTable::new(j.vars)?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| RingError::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            terms.push((t.exp, c));
        }
        LaurentPoly::from_terms(&vars, terms)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        LaurentPoly::try_from(j).map_err(serde::de::Error::custom)
    }
}
