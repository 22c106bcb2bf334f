use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Side of an integral hyperplane. `Plus` sorts before `Minus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("invalid sign `{other}`"))),
        }
    }
}

/// Assignment of a sign to each integral variable, in the arrangement's
/// canonical variable order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector {
    vars: Vec<String>,
    signs: Vec<Sign>,
}

impl SignVector {
    pub fn new(vars: Vec<String>, signs: Vec<Sign>) -> Result<Self> {
        if vars.len() != signs.len() {
            return Err(Error::SignLength {
                expected: vars.len(),
                found: signs.len(),
            });
        }
        Ok(SignVector { vars, signs })
    }

    /// The `index`-th vector in lexicographic order (`+` before `-`).
    pub fn from_index(vars: &[String], index: u64) -> Self {
        let m = vars.len();
        let signs = (0..m)
            .map(|k| if index >> (m - 1 - k) & 1 == 0 { Sign::Plus } else { Sign::Minus })
            .collect();
        SignVector {
            vars: vars.to_vec(),
            signs,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn get(&self, var: &str) -> Option<Sign> {
        self.vars.iter().position(|v| v == var).map(|k| self.signs[k])
    }

    pub fn to_map(&self) -> BTreeMap<String, Sign> {
        self.vars.iter().cloned().zip(self.signs.iter().copied()).collect()
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_map().serialize(s)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vars.iter().zip(&self.signs).map(|(v, s)| format!("{v}:{s}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_order_is_lexicographic() {
        let vars: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let all: Vec<SignVector> = (0..8).map(|i| SignVector::from_index(&vars, i)).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all[0].signs(), &[Sign::Plus; 3]);
        assert_eq!(all[1].signs(), &[Sign::Plus, Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn json_signs() {
        let v = SignVector::new(vec!["h1_2".into(), "q1".into()], vec![Sign::Plus, Sign::Minus]).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"h1_2":"+","q1":"-"}"#);
        assert_eq!(serde_json::from_str::<Sign>("\"-\"").unwrap(), Sign::Minus);
        assert!(serde_json::from_str::<Sign>("\"0\"").is_err());
        assert!(SignVector::new(vec!["x".into()], vec![]).is_err());
    }
}
