use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cstar::BlockAlgebra;
use crate::error::{Error, Result};
use crate::linalg::c64;
use crate::module::{CoordTensor, HModule};

/// Wire form of a module: `action[k]` and `gram[k]` are dense row-major `m x m`
/// matrices of `[re, im]` pairs, one per matrix unit `e_k` of the algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HModuleJson {
    pub algebra: BlockAlgebra,
    pub cdim: usize,
    pub action: Vec<Vec<[f64; 2]>>,
    pub gram: Vec<Vec<[f64; 2]>>,
}

fn dense(t: &CoordTensor, m: usize) -> Vec<Vec<[f64; 2]>> {
    (0..t.ncoords())
        .map(|k| {
            let mut out = vec![[0.0, 0.0]; m * m];
            for &(i, j, v) in t.slice(k) {
                out[i * m + j] = [v.re, v.im];
            }
            out
        })
        .collect()
}

fn sparse(rows: &[Vec<[f64; 2]>], m: usize, name: &str) -> Result<CoordTensor> {
    let mut raw = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        if row.len() != m * m {
            return Err(Error::Shape(format!("{name}[{k}] has {} entries, expected {}", row.len(), m * m)));
        }
        for (idx, &[re, im]) in row.iter().enumerate() {
            if re != 0.0 || im != 0.0 {
                raw.push((k, idx / m, idx % m, c64(re, im)));
            }
        }
    }
    Ok(CoordTensor::from_entries(rows.len(), raw))
}

impl From<&HModule> for HModuleJson {
    fn from(x: &HModule) -> Self {
        HModuleJson {
            algebra: x.algebra().clone(),
            cdim: x.cdim(),
            action: dense(x.action_tensor(), x.cdim()),
            gram: dense(x.gram_tensor(), x.cdim()),
        }
    }
}

impl TryFrom<HModuleJson> for HModule {
    type Error = Error;

    fn try_from(j: HModuleJson) -> Result<Self> {
        let action = sparse(&j.action, j.cdim, "action")?;
        let gram = sparse(&j.gram, j.cdim, "gram")?;
        HModule::from_tensors(j.algebra, j.cdim, action, gram)
    }
}

impl Serialize for HModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HModuleJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = HModuleJson::deserialize(d)?;
        HModule::try_from(j).map_err(serde::de::Error::custom)
    }
}
