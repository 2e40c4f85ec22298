use serde::{Deserialize, Serialize};

use super::{Alphabet, Generator, MultiSym};
use crate::error::{Error, Result};
use crate::exactalg::FieldElem;

/// Serialized form: `{"l": .., "terms": [{"monomial": [[alphabet, color,
/// degree], ..], "coeff": ".."}]}` with monomials sorted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiSymJson {
    pub l: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<(Alphabet, usize, usize)>,
    pub coeff: FieldElem,
}

impl From<&MultiSym> for MultiSymJson {
    fn from(f: &MultiSym) -> Self {
        MultiSymJson {
            l: f.l(),
            terms: f
                .terms()
                .map(|(m, c)| TermJson {
                    monomial: m.iter().map(|g| (g.alphabet, g.color, g.degree)).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<MultiSymJson> for MultiSym {
    type Error = Error;

    fn try_from(j: MultiSymJson) -> Result<Self> {
        if j.l == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let mut out = MultiSym::zero(j.l);
        for t in j.terms {
            let mut m = Vec::with_capacity(t.monomial.len());
            for (alphabet, color, degree) in t.monomial {
                if color >= j.l {
                    return Err(Error::ResidueOutOfRange {
                        residue: color,
                        l: j.l,
                    });
                }
                if degree == 0 {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: "power sums start in degree one".into(),
                    });
                }
                m.push(Generator {
                    alphabet,
                    color,
                    degree,
                });
            }
            m.sort();
            out.add_term(m, t.coeff);
        }
        Ok(out)
    }
}

impl Serialize for MultiSym {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultiSymJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiSym {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MultiSym::try_from(MultiSymJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
