//! `GL_2(F_q)` with its Borel subgroup `B = LN` and a subgroup `K` with `K·B = G`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{subgroup_generate, FiniteGroup, Subgroup};
use crate::parabolic::field::{det, FiniteField, Gl2, Mat2};

/// Which subgroup plays the maximal compact `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KChoice {
    /// `K = G`.
    Full,
    /// `K = SL_2(F_q)`.
    Sl2,
    /// The subgroup generated by the given matrices.
    Generated(Vec<Mat2>),
}

impl std::str::FromStr for KChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(KChoice::Full),
            "sl2" => Ok(KChoice::Sl2),
            _ => Err(Error::Parse(format!("unknown K choice {s:?} (expected full or sl2)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParabolicDatum {
    pub gl2: Gl2,
    /// Upper triangular matrices.
    pub b: Subgroup,
    /// Diagonal matrices.
    pub l: Subgroup,
    /// Unipotent upper triangular matrices.
    pub n: Subgroup,
    pub k: Subgroup,
    pub k_choice: KChoice,
}

/// Enumerates `GL_2(F_q)` and its subgroups and checks `B = LN`, `L ∩ N = 1` and `K·B = G`.
pub fn build_datum(q: u32, k_choice: KChoice) -> Result<ParabolicDatum> {
    let field = FiniteField::new(q)?;
    let gl2 = Gl2::new(&field)?;
    let g = &gl2.group;
    let b = Subgroup::new(g, gl2.select(|m| m[2] == 0))?;
    let l = Subgroup::new(g, gl2.select(|m| m[1] == 0 && m[2] == 0))?;
    let n = Subgroup::new(g, gl2.select(|m| m[0] == 1 && m[2] == 0 && m[3] == 1))?;
    let k = match &k_choice {
        KChoice::Full => Subgroup::whole(g),
        KChoice::Sl2 => Subgroup::new(g, gl2.select(|m| det(&field, m) == 1))?,
        KChoice::Generated(gens) => {
            let idx = gens
                .iter()
                .map(|m| gl2.index_of(m).ok_or_else(|| Error::Validation(format!("{m:?} is not invertible over F_{q}"))))
                .collect::<Result<Vec<_>>>()?;
            subgroup_generate(g, &idx)?
        }
    };
    if l.intersect(&n)?.order() != 1 {
        return Err(Error::Validation("L ∩ N is not trivial".into()));
    }
    let mut ln: Vec<usize> = l.members().iter().flat_map(|&x| n.members().iter().map(move |&y| g.mul(x, y))).collect();
    ln.sort_unstable();
    ln.dedup();
    if ln != b.members() {
        return Err(Error::Validation("B ≠ LN".into()));
    }
    let (covered, transitive) = k.product_covers(&b);
    if !transitive {
        return Err(Error::Transitivity { covered, order: g.order() });
    }
    Ok(ParabolicDatum { gl2, b, l, n, k, k_choice })
}

impl ParabolicDatum {
    pub fn q(&self) -> u32 {
        self.gl2.field.order()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.gl2.group
    }

    pub fn matrix(&self, g: usize) -> &Mat2 {
        &self.gl2.elements[g]
    }

    /// `K ∩ L`.
    pub fn k_cap_l(&self) -> Subgroup {
        self.k.intersect(&self.l).expect("same group")
    }

    /// The Levi projection `B → L`, `[a b; 0 d] ↦ [a 0; 0 d]`, as positions in `L`.
    pub fn levi_projection(&self) -> Vec<usize> {
        self.b
            .members()
            .iter()
            .map(|&x| {
                let m = self.matrix(x);
                let diag = self.gl2.index_of(&[m[0], 0, 0, m[3]]).expect("diagonal of an invertible triangular matrix");
                self.l.position(diag).expect("diagonal matrices lie in L")
            })
            .collect()
    }

    /// `K ∩ L` as a subgroup of `L` viewed as a group in its own right.
    pub fn k_cap_l_in_l(&self) -> Subgroup {
        let members = self.k_cap_l().members().iter().map(|&x| self.l.position(x).expect("inside L")).collect::<Vec<_>>();
        Subgroup::new(&self.l.as_group(), members).expect("a subgroup of L")
    }
}
