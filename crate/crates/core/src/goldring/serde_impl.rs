//! JSON form `{"a": "p/q", "b": "r/s"}`; the text form `"2-1t"` is also accepted on input.
//! Matrices are arrays of rows.

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::golden::{Golden, GoldenInt};
use super::matrix::{Matrix, Scalar};
use super::parse::{parse_golden, parse_rational};

impl<T: GoldenInt> Serialize for Golden<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Golden", 2)?;
        st.serialize_field("a", &self.a().to_string())?;
        st.serialize_field("b", &self.b().to_string())?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Parts { a: Component, b: Component },
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Component {
    Text(String),
    Int(i64),
}

impl Component {
    fn text(self) -> String {
        match self {
            Component::Text(s) => s,
            Component::Int(i) => i.to_string(),
        }
    }
}

impl<'de, T: GoldenInt> Deserialize<'de> for Golden<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match Repr::deserialize(deserializer)? {
            Repr::Parts { a, b } => {
                let a = parse_rational(&a.text()).map_err(de::Error::custom)?;
                let b = parse_rational(&b.text()).map_err(de::Error::custom)?;
                Ok(Golden::new(a, b))
            }
            Repr::Text(s) => parse_golden(&s).map_err(de::Error::custom),
        }
    }
}

impl<S: Scalar + Serialize> Serialize for Matrix<S> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        self.row_vecs().serialize(serializer)
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for Matrix<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<S>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use crate::GoldenRational as G;

    #[test]
    fn json_shape() {
        let x = G::frac(-1, 2, 3, 1);
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"a":"-1/2","b":"3"}"#);
        let back: G = serde_json::from_str(r#"{"a":"-1/2","b":"3"}"#).unwrap();
        assert_eq!(back, x);
        let text: G = serde_json::from_str(r#""2-1t""#).unwrap();
        assert_eq!(text, G::int(2, -1));
        let ints: G = serde_json::from_str(r#"{"a":2,"b":-1}"#).unwrap();
        assert_eq!(ints, G::int(2, -1));
        assert!(serde_json::from_str::<G>(r#"{"a":"1/0","b":"0"}"#).is_err());
    }
}
