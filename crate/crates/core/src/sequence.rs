use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Named integer parameters of a construction, in insertion order.
pub type Params = IndexMap<String, i64>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqProvenance {
    pub construction: String,
    #[serde(default)]
    pub params: Params,
}

impl SeqProvenance {
    pub fn new(construction: impl Into<String>) -> Self {
        SeqProvenance {
            construction: construction.into(),
            params: Params::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl TryInto<i64>) -> Self {
        let value = value.try_into().ok().expect("parameter fits in i64");
        self.params.insert(key.to_string(), value);
        self
    }

    /// `key=value` pairs joined by `;`.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// An `m × n` sonar sequence `f(1..n)`.
///
/// Modular sequences take values in `[0, m−1]`; plain ones in `[1, m]`.
/// `values[k]` holds `f(k + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SonarSeqRepr", into = "SonarSeqRepr")]
pub struct SonarSeq {
    m: u64,
    modular: bool,
    values: Vec<u64>,
    provenance: SeqProvenance,
}

#[derive(Serialize, Deserialize)]
struct SonarSeqRepr {
    m: u64,
    n: usize,
    modular: bool,
    values: Vec<u64>,
    #[serde(default)]
    provenance: SeqProvenance,
}

impl TryFrom<SonarSeqRepr> for SonarSeq {
    type Error = Error;

    fn try_from(r: SonarSeqRepr) -> Result<Self> {
        if r.n != r.values.len() {
            return Err(Error::LengthMismatch {
                declared: r.n,
                actual: r.values.len(),
            });
        }
        let seq = if r.modular {
            SonarSeq::modular(r.m, r.values)?
        } else {
            SonarSeq::plain(r.m, r.values)?
        };
        Ok(seq.with_provenance(r.provenance))
    }
}

impl From<SonarSeq> for SonarSeqRepr {
    fn from(s: SonarSeq) -> Self {
        SonarSeqRepr {
            m: s.m,
            n: s.values.len(),
            modular: s.modular,
            values: s.values,
            provenance: s.provenance,
        }
    }
}

impl SonarSeq {
    pub fn modular(m: u64, values: Vec<u64>) -> Result<Self> {
        Self::checked(m, true, values)
    }

    pub fn plain(m: u64, values: Vec<u64>) -> Result<Self> {
        Self::checked(m, false, values)
    }

    fn checked(m: u64, modular: bool, values: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidModulus);
        }
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        let in_range = |v: u64| if modular { v < m } else { (1..=m).contains(&v) };
        if let Some(&value) = values.iter().find(|&&v| !in_range(v)) {
            return Err(Error::ValueOutOfRange { value, m });
        }
        Ok(SonarSeq {
            m,
            modular,
            values,
            provenance: SeqProvenance::default(),
        })
    }

    pub fn with_provenance(mut self, provenance: SeqProvenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Number of rows: the modulus, or the height bound of a plain sequence.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn is_modular(&self) -> bool {
        self.modular
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `f(i)` for `1 ≤ i ≤ n`.
    pub fn get(&self, i: usize) -> Option<u64> {
        i.checked_sub(1).and_then(|k| self.values.get(k).copied())
    }

    pub fn provenance(&self) -> &SeqProvenance {
        &self.provenance
    }

    /// The plain `m × n` sequence `f(i) + 1` with values in `[1, m]`.
    /// A modular sonar sequence stays a (plain) sonar sequence under this shift.
    pub fn to_plain(&self) -> SonarSeq {
        if !self.modular {
            return self.clone();
        }
        SonarSeq {
            m: self.m,
            modular: false,
            values: self.values.iter().map(|v| v + 1).collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Rotates the index set: the result's `f'(1)` is this sequence's `f(n−k+1)`.
    pub fn rotate_right(&self, k: usize) -> SonarSeq {
        let mut values = self.values.clone();
        let len = values.len();
        values.rotate_right(k % len);
        SonarSeq {
            values,
            ..self.clone()
        }
    }
}
