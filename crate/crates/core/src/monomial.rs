//! Monomial ideals in `k[[x_1,…,x_d]]` and exact membership tests for
//! ordinary powers and Frobenius powers.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial ideal stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIdeal", into = "RawIdeal")]
pub struct MonomialIdeal {
    vars: usize,
    gens: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    vars: usize,
    gens: Vec<Vec<u32>>,
}

impl TryFrom<RawIdeal> for MonomialIdeal {
    type Error = Error;

    fn try_from(raw: RawIdeal) -> Result<Self> {
        MonomialIdeal::new(raw.vars, raw.gens)
    }
}

impl From<MonomialIdeal> for RawIdeal {
    fn from(i: MonomialIdeal) -> Self {
        RawIdeal {
            vars: i.vars,
            gens: i.gens,
        }
    }
}

fn divides(g: &[u32], a: &[u32]) -> bool {
    g.iter().zip(a).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, keeping only minimal generators.
    pub fn new(vars: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        if vars == 0 {
            return Err(Error::InvalidParameter("an ideal needs at least one variable".into()));
        }
        if gens.is_empty() {
            return Err(Error::InvalidParameter("an ideal needs at least one generator".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != vars) {
            return Err(Error::InvalidParameter(format!(
                "generator {g:?} does not have {vars} exponents"
            )));
        }
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        let minimal: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect();
        Ok(MonomialIdeal {
            vars,
            gens: minimal,
        })
    }

    /// `m = (x_1, …, x_d)`.
    pub fn maximal(d: usize) -> Result<Self> {
        Self::power_of_maximal(d, 1)
    }

    /// `m^n`, generated by all monomials of degree `n`.
    pub fn power_of_maximal(d: usize, n: u32) -> Result<Self> {
        fn fill(rest: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rest == 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for a in 0..=left {
                cur.push(a);
                fill(rest - 1, left - a, cur, out);
                cur.pop();
            }
        }
        if d == 0 {
            return Err(Error::InvalidParameter("an ideal needs at least one variable".into()));
        }
        let mut out = Vec::new();
        fill(d, n, &mut Vec::with_capacity(d), &mut out);
        Self::new(d, out)
    }

    pub fn num_vars(&self) -> usize {
        self.vars
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    /// Exponent `b_i` of the pure power `x_i^{b_i}` among the generators.
    pub fn pure_power(&self, i: usize) -> Option<u32> {
        self.gens
            .iter()
            .find(|g| g.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
            .map(|g| g[i])
    }

    /// Pure-power exponents for every variable, if the ideal is `m`-primary.
    pub fn pure_powers(&self) -> Option<Vec<u32>> {
        (0..self.vars).map(|i| self.pure_power(i)).collect()
    }

    pub fn is_m_primary(&self) -> bool {
        self.pure_powers().is_some()
    }

    pub fn require_m_primary(&self) -> Result<Vec<u32>> {
        self.pure_powers()
            .ok_or_else(|| Error::NotMPrimary(format!("{:?}", self.gens)))
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, a))
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.vars == other.vars && self.gens.iter().all(|g| other.contains(g))
    }

    /// Number of monomials outside the ideal, i.e. `λ(R/I)`.
    pub fn colength(&self) -> Result<u64> {
        let b = self.require_m_primary()?;
        let mut count = 0u64;
        let mut a = vec![0u32; self.vars];
        loop {
            if !self.contains(&a) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == self.vars {
                    return Ok(count);
                }
                a[i] += 1;
                if a[i] < b[i] {
                    break;
                }
                a[i] = 0;
                i += 1;
            }
        }
    }
}

/// Whether `x^a ∈ I^N`, i.e. `a` dominates a sum of `N` generators.
pub fn member_power(ideal: &MonomialIdeal, n: u32, a: &[u32]) -> bool {
    if n == 0 {
        return true;
    }
    if a.len() != ideal.vars {
        return false;
    }
    let mut search = PowerSearch {
        gens: &ideal.gens,
        memo: HashMap::new(),
    };
    search.feasible(0, a.to_vec(), n)
}

struct PowerSearch<'a> {
    gens: &'a [Vec<u32>],
    memo: HashMap<(usize, Vec<u32>, u32), bool>,
}

impl PowerSearch<'_> {
    /// Upper bound on how many of `gens[k..]` fit inside `budget`.
    fn capacity(&self, k: usize, budget: &[u32]) -> u64 {
        let rest = &self.gens[k..];
        let total: u64 = budget.iter().map(|&b| b as u64).sum();
        let min_deg = rest
            .iter()
            .map(|g| g.iter().map(|&e| e as u64).sum::<u64>())
            .min()
            .unwrap_or(0);
        let mut cap = if min_deg == 0 { u64::MAX } else { total / min_deg };
        for (j, &b) in budget.iter().enumerate() {
            let min_j = rest.iter().map(|g| g[j]).min().unwrap_or(0);
            if min_j > 0 {
                cap = cap.min((b / min_j) as u64);
            }
        }
        cap
    }

    fn feasible(&mut self, k: usize, budget: Vec<u32>, need: u32) -> bool {
        if need == 0 {
            return true;
        }
        if k == self.gens.len() || self.capacity(k, &budget) < need as u64 {
            return false;
        }
        let key = (k, budget, need);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let (_, budget, _) = &key;
        let g = &self.gens[k];
        let max_c = g
            .iter()
            .zip(budget.iter())
            .filter(|(&e, _)| e > 0)
            .map(|(&e, &b)| b / e)
            .min()
            .unwrap_or(need)
            .min(need);
        let mut found = false;
        for c in (0..=max_c).rev() {
            let next: Vec<u32> = budget.iter().zip(g).map(|(&b, &e)| b - c * e).collect();
            if self.feasible(k + 1, next, need - c) {
                found = true;
                break;
            }
        }
        self.memo.insert(key, found);
        found
    }
}

/// Whether `x^a ∈ J^{[q]}`, generated by the `q`-th powers of the generators.
pub fn member_frobenius(ideal: &MonomialIdeal, q: u64, a: &[u32]) -> bool {
    ideal
        .gens
        .iter()
        .any(|g| g.iter().zip(a).all(|(&e, &x)| (e as u64) * q <= x as u64))
}
