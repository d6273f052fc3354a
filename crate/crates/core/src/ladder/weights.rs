use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactmat::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Odd,
    Even,
}

impl Sector {
    pub fn of(weight: i64) -> Self {
        if weight.rem_euclid(2) == 1 {
            Sector::Odd
        } else {
            Sector::Even
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        })
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::Odd => "odd",
            Sector::Even => "even",
        })
    }
}

/// Multiplicities of the integer eigenvalues of `H` on `V₊` and `V₋`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightData {
    plus: BTreeMap<i64, usize>,
    minus: BTreeMap<i64, usize>,
}

impl WeightData {
    /// Rejects stored zero multiplicities.
    pub fn new(plus: Spectrum, minus: Spectrum) -> Result<Self> {
        if plus.values().chain(minus.values()).any(|&m| m == 0) {
            return Err(Error::InvalidShape("weight multiplicities must be positive".into()));
        }
        Ok(Self { plus, minus })
    }

    pub fn from_pairs(plus: &[(i64, usize)], minus: &[(i64, usize)]) -> Result<Self> {
        let collect = |pairs: &[(i64, usize)]| -> Result<Spectrum> {
            let mut out = Spectrum::new();
            for &(w, m) in pairs {
                if out.insert(w, m).is_some() {
                    return Err(Error::InvalidShape(format!("weight {w} listed twice")));
                }
            }
            Ok(out)
        };
        Self::new(collect(plus)?, collect(minus)?)
    }

    pub fn plus(&self) -> &Spectrum {
        &self.plus
    }

    pub fn minus(&self) -> &Spectrum {
        &self.minus
    }

    pub fn side(&self, side: Side) -> &Spectrum {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }

    pub fn mult(&self, side: Side, weight: i64) -> usize {
        self.side(side).get(&weight).copied().unwrap_or(0)
    }

    pub fn dim(&self, side: Side) -> usize {
        self.side(side).values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    /// `m(λ) = plus(λ) + minus(λ)`.
    pub fn total(&self) -> Spectrum {
        let mut t = self.plus.clone();
        for (&w, &m) in &self.minus {
            *t.entry(w).or_insert(0) += m;
        }
        t
    }

    /// `m(λ) = m(-λ)` and `m(λ) ≥ m(λ + 2)` for `λ ≥ 0`: the weights of some
    /// finite-dimensional `sl(2)` representation.
    pub fn is_rep_admissible(&self) -> bool {
        let t = self.total();
        let m = |w: i64| t.get(&w).copied().unwrap_or(0);
        let symmetric = t.iter().all(|(&w, &k)| m(-w) == k);
        let top = t.keys().map(|w| w.abs()).max().unwrap_or(0);
        let ladder = (0..=top).all(|w| m(w) >= m(w + 2));
        symmetric && ladder
    }

    pub fn restrict(&self, sector: Sector) -> Self {
        let keep =
            |s: &Spectrum| s.iter().filter(|(&w, _)| Sector::of(w) == sector).map(|(&w, &m)| (w, m)).collect();
        Self { plus: keep(&self.plus), minus: keep(&self.minus) }
    }

    pub fn odd_sector(&self) -> Self {
        self.restrict(Sector::Odd)
    }

    pub fn even_sector(&self) -> Self {
        self.restrict(Sector::Even)
    }

    /// Canonical text form, e.g. `plus=1:2,0:1;minus=0:1,-1:2` (weights descending).
    pub fn canonical(&self) -> String {
        let side = |s: &Spectrum| s.iter().rev().map(|(w, m)| format!("{w}:{m}")).collect::<Vec<_>>().join(",");
        format!("plus={};minus={}", side(&self.plus), side(&self.minus))
    }

    /// First 16 hex digits of the SHA-256 of [`Self::canonical`].
    pub fn canonical_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        hex::encode(&digest[..8])
    }

    /// Sort key: multiplicity vectors over weights `max..=-max`, plus side first.
    pub fn multiplicity_vector(&self, max_weight: i64) -> Vec<usize> {
        let mut v = Vec::with_capacity(2 * (2 * max_weight as usize + 1));
        for side in [Side::Plus, Side::Minus] {
            for w in (-max_weight..=max_weight).rev() {
                v.push(self.mult(side, w));
            }
        }
        v
    }
}

impl fmt::Display for WeightData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Spectrum| s.iter().rev().map(|(w, m)| format!("{w}:{m}")).collect::<Vec<_>>().join(", ");
        write!(f, "{{plus: {{{}}}, minus: {{{}}}}}", side(&self.plus), side(&self.minus))
    }
}

impl Serialize for WeightData {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs = |s: &Spectrum| s.iter().rev().map(|(&w, &m)| (w, m)).collect::<Vec<_>>();
        let mut st = serializer.serialize_struct("WeightData", 2)?;
        st.serialize_field("plus", &pairs(&self.plus))?;
        st.serialize_field("minus", &pairs(&self.minus))?;
        st.end()
    }
}

/// Multisets of highest weights `n` (irreducible dimension `n + 1`) with
/// `Σ (n + 1) = dim` and `n ≤ max_weight`, parts non-increasing.
fn irrep_decompositions(dim: usize, max_weight: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for d in (1..=cap.min(rest)).rev() {
            cur.push(d - 1);
            go(rest - d, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(dim, max_weight + 1, &mut Vec::new(), &mut out);
    out
}

fn total_spectrum(highest: &[usize]) -> Vec<(i64, usize)> {
    let mut t = Spectrum::new();
    for &n in highest {
        let n = n as i64;
        for k in 0..=n {
            *t.entry(n - 2 * k).or_insert(0) += 1;
        }
    }
    t.into_iter().collect()
}

/// Every way of distributing `total` between `V₊` and `V₋` with `p` on each side.
fn splits(total: &[(i64, usize)], p: usize) -> Vec<WeightData> {
    fn go(total: &[(i64, usize)], idx: usize, left: usize, plus: &mut Spectrum, out: &mut Vec<Spectrum>) {
        if idx == total.len() {
            if left == 0 {
                out.push(plus.clone());
            }
            return;
        }
        let remaining: usize = total[idx..].iter().map(|&(_, m)| m).sum();
        if remaining < left {
            return;
        }
        let (w, m) = total[idx];
        for k in 0..=m.min(left) {
            if k > 0 {
                plus.insert(w, k);
            }
            go(total, idx + 1, left - k, plus, out);
            plus.remove(&w);
        }
    }
    let mut pluses = Vec::new();
    go(total, 0, p, &mut Spectrum::new(), &mut pluses);
    pluses
        .into_iter()
        .map(|plus| {
            let minus = total
                .iter()
                .filter_map(|&(w, m)| {
                    let rest = m - plus.get(&w).copied().unwrap_or(0);
                    (rest > 0).then_some((w, rest))
                })
                .collect();
            WeightData { plus, minus }
        })
        .collect()
}

/// The largest weight of an irreducible representation fitting in `ℂ^{2p}`.
pub fn default_max_weight(p: usize) -> i64 {
    2 * p as i64 - 1
}

/// All rep-admissible weight data with `p` weights on each side and
/// `|λ| ≤ max_weight`, sorted descending by [`WeightData::multiplicity_vector`].
pub fn enumerate_weight_data(p: usize, max_weight: i64) -> Vec<WeightData> {
    if p == 0 || max_weight < 0 {
        return Vec::new();
    }
    let mut out: Vec<WeightData> = irrep_decompositions(2 * p, max_weight as usize)
        .iter()
        .flat_map(|hw| splits(&total_spectrum(hw), p))
        .collect();
    out.sort_by_cached_key(|wd| std::cmp::Reverse(wd.multiplicity_vector(max_weight)));
    out
}
