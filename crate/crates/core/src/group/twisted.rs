//! Twisted products: a direct product of table groups extended by an elementary
//! abelian 2-group `D` of componentwise involutory automorphisms.
//!
//! An element `(b, d)` packs each component index and the `D` bit vector into one
//! `u64`. Multiplication is `(b1, d1)(b2, d2) = (b1 · d1(b2), d1 + d2)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::group::table::TableGroup;

/// One generator of `D`: its name and, per component, the automorphism it induces
/// (`None` for the identity).
#[derive(Clone)]
pub struct DGen {
    pub name: String,
    pub actions: Vec<Option<Vec<u32>>>,
}

pub struct TwistedGroup {
    components: Vec<Arc<TableGroup>>,
    shifts: Vec<u32>,
    masks: Vec<u64>,
    d_shift: u32,
    d_rank: usize,
    d_names: Vec<String>,
    /// `actions[c][d]`: automorphism of component `c` induced by the bit vector `d`.
    actions: Vec<Vec<Option<Arc<Vec<u32>>>>>,
    names: Vec<String>,
    gens: Vec<u64>,
    pub(crate) expr: Option<GroupExpr>,
}

impl std::fmt::Debug for TwistedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwistedGroup")
            .field("components", &self.components.iter().map(|c| c.order()).collect::<Vec<_>>())
            .field("d", &self.d_names)
            .finish()
    }
}

fn bits_for(n: usize) -> u32 {
    let mut b = 0;
    while (1usize << b) < n {
        b += 1;
    }
    b.max(1)
}

impl TwistedGroup {
    /// Validates that each `D` generator acts by involutory automorphisms, that the
    /// generators commute, and that `D` acts faithfully.
    pub fn new(components: Vec<Arc<TableGroup>>, component_names: Vec<Vec<String>>, dgens: Vec<DGen>) -> Result<TwistedGroup> {
        let mut shifts = Vec::new();
        let mut masks = Vec::new();
        let mut shift = 0u32;
        for c in &components {
            let b = bits_for(c.order());
            shifts.push(shift);
            masks.push((1u64 << b) - 1);
            shift += b;
        }
        let d_rank = dgens.len();
        if shift as usize + d_rank > 64 {
            return Err(Error::InvalidExpression("twisted product too wide for packed elements".into()));
        }
        for g in &dgens {
            for (c, act) in g.actions.iter().enumerate() {
                if let Some(a) = act {
                    let k = &components[c];
                    if (0..k.order() as u32).any(|x| a[a[x as usize] as usize] != x) {
                        return Err(Error::InvalidAction(format!("{} is not an involution", g.name)));
                    }
                }
            }
        }
        for (i, g) in dgens.iter().enumerate() {
            for h in &dgens[i + 1..] {
                for c in 0..components.len() {
                    if let (Some(a), Some(b)) = (&g.actions[c], &h.actions[c]) {
                        if (0..a.len()).any(|x| a[b[x] as usize] != b[a[x] as usize]) {
                            return Err(Error::InvalidAction(format!("{} and {} do not commute", g.name, h.name)));
                        }
                    }
                }
            }
        }
        let mut actions: Vec<Vec<Option<Arc<Vec<u32>>>>> = vec![vec![None]; components.len()];
        for mask in 1usize..(1 << d_rank) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            for c in 0..components.len() {
                let combined = match (&actions[c][rest], &dgens[low].actions[c]) {
                    (None, None) => None,
                    (Some(a), None) => Some(a.clone()),
                    (None, Some(b)) => Some(Arc::new(b.clone())),
                    (Some(a), Some(b)) => {
                        let v: Vec<u32> = b.iter().map(|&x| a[x as usize]).collect();
                        if v.iter().enumerate().all(|(i, &x)| i as u32 == x) {
                            None
                        } else {
                            Some(Arc::new(v))
                        }
                    }
                };
                actions[c].push(combined);
            }
            if (0..components.len()).all(|c| actions[c][mask].is_none()) {
                return Err(Error::InvalidAction("the twisting group does not act faithfully".into()));
            }
        }
        let mut names = Vec::new();
        let mut gens = Vec::new();
        let identity_fields = 0u64;
        for (c, comp) in components.iter().enumerate() {
            for (name, &g) in component_names[c].iter().zip(comp.gens()) {
                names.push(name.clone());
                gens.push(identity_fields | ((g as u64) << shifts[c]));
            }
        }
        for (i, g) in dgens.iter().enumerate() {
            names.push(g.name.clone());
            gens.push(1u64 << (shift + i as u32));
        }
        Ok(TwistedGroup {
            components,
            shifts,
            masks,
            d_shift: shift,
            d_rank,
            d_names: dgens.iter().map(|g| g.name.clone()).collect(),
            actions,
            names,
            gens,
            expr: None,
        })
    }

    pub fn order(&self) -> u64 {
        self.components.iter().map(|c| c.order() as u64).product::<u64>() << self.d_rank
    }

    pub fn components(&self) -> &[Arc<TableGroup>] {
        &self.components
    }

    pub fn d_rank(&self) -> usize {
        self.d_rank
    }

    pub fn d_names(&self) -> &[String] {
        &self.d_names
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    #[inline]
    pub fn coord(&self, x: u64, c: usize) -> u32 {
        ((x >> self.shifts[c]) & self.masks[c]) as u32
    }

    #[inline]
    pub fn d_part(&self, x: u64) -> usize {
        (x >> self.d_shift) as usize
    }

    pub fn pack(&self, coords: &[u32], d: usize) -> u64 {
        let mut x = (d as u64) << self.d_shift;
        for (c, &v) in coords.iter().enumerate() {
            x |= (v as u64) << self.shifts[c];
        }
        x
    }

    /// The element with component `c` set to `v` and everything else trivial.
    pub fn inject(&self, c: usize, v: u32) -> u64 {
        (v as u64) << self.shifts[c]
    }

    pub fn d_element_mask(&self, mask: usize) -> u64 {
        (mask as u64) << self.d_shift
    }

    pub fn d_element(&self, bit: usize) -> u64 {
        1u64 << (self.d_shift + bit as u32)
    }

    #[inline]
    fn act(&self, c: usize, d: usize, v: u32) -> u32 {
        match &self.actions[c][d] {
            None => v,
            Some(a) => a[v as usize],
        }
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let dx = self.d_part(x);
        let mut out = ((dx ^ self.d_part(y)) as u64) << self.d_shift;
        for (c, comp) in self.components.iter().enumerate() {
            let v = comp.mul(self.coord(x, c), self.act(c, dx, self.coord(y, c)));
            out |= (v as u64) << self.shifts[c];
        }
        out
    }

    pub fn inv(&self, x: u64) -> u64 {
        let d = self.d_part(x);
        let mut out = (d as u64) << self.d_shift;
        for (c, comp) in self.components.iter().enumerate() {
            let v = self.act(c, d, comp.inv(self.coord(x, c)));
            out |= (v as u64) << self.shifts[c];
        }
        out
    }

    /// Components on which `x` is nontrivial, and the set bits of its `D` part.
    pub fn support(&self, x: u64) -> (Vec<usize>, Vec<usize>) {
        let comps = (0..self.components.len()).filter(|&c| self.coord(x, c) != 0).collect();
        let d = self.d_part(x);
        let bits = (0..self.d_rank).filter(|&b| d >> b & 1 == 1).collect();
        (comps, bits)
    }

    /// `D` generators that act nontrivially on component `c`.
    pub fn bits_acting_on(&self, c: usize) -> Vec<usize> {
        (0..self.d_rank).filter(|&b| self.actions[c][1 << b].is_some()).collect()
    }

    /// Generators of the support subgroup: all elements whose base is supported on
    /// `comps` and whose `D` part lies in the span of `bits`.
    pub fn support_generators(&self, comps: &[usize], bits: &[usize]) -> Vec<u64> {
        let mut out = Vec::new();
        for &c in comps {
            for &g in self.components[c].gens() {
                out.push(self.inject(c, g));
            }
        }
        for &b in bits {
            out.push(self.d_element(b));
        }
        out
    }

    pub fn support_order(&self, comps: &[usize], bits: &[usize]) -> u64 {
        comps.iter().map(|&c| self.components[c].order() as u64).product::<u64>() << bits.len()
    }
}
