//! Membership reasoning over multiplier orbits: pattern constraints from
//! the multiplicity tables, the order census, unit propagation and
//! failed-literal probing.

use crate::abelian::{multiplier_orbits, AbelianGroup};
use std::collections::BTreeMap;

/// Non-identity multiplier orbits of a group, with lookup from elements.
#[derive(Debug, Clone)]
pub struct OrbitModel {
    pub orbits: Vec<Vec<usize>>,
    pub orders: Vec<u64>,
    /// Orbit index per element; `None` for the identity.
    pub orbit_of: Vec<Option<usize>>,
}

impl OrbitModel {
    pub fn new(group: &AbelianGroup) -> Self {
        let orbits: Vec<Vec<usize>> = multiplier_orbits(group)
            .into_iter()
            .filter(|o| o[0] != group.identity())
            .collect();
        let orders = orbits.iter().map(|o| group.element_order(o[0])).collect();
        let mut orbit_of = vec![None; group.order() as usize];
        for (i, o) in orbits.iter().enumerate() {
            for &x in o {
                orbit_of[x] = Some(i);
            }
        }
        OrbitModel {
            orbits,
            orders,
            orbit_of,
        }
    }

    pub fn rep(&self, i: usize) -> usize {
        self.orbits[i][0]
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// The tuple of orbits in `scope` must take one of the `allowed` values.
#[derive(Debug, Clone)]
pub struct PatternConstraint {
    pub scope: Vec<usize>,
    pub allowed: Vec<Vec<bool>>,
}

pub type Assignment = Vec<Option<bool>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict(pub String);

pub struct Propagator<'a> {
    pub model: &'a OrbitModel,
    pub constraints: &'a [PatternConstraint],
    pub censuses: &'a [BTreeMap<u64, u64>],
}

impl Propagator<'_> {
    /// Censuses still reachable from `assign`.
    pub fn live_censuses(&self, assign: &Assignment) -> Vec<&BTreeMap<u64, u64>> {
        let tally = self.tally(assign);
        self.censuses
            .iter()
            .filter(|c| {
                tally.iter().all(|(d, &(inn, open, size))| {
                    let want = c.get(d).copied().unwrap_or(0);
                    inn * size <= want && want <= (inn + open) * size
                })
            })
            .collect()
    }

    /// Per order: (orbits in, orbits open, orbit size).
    fn tally(&self, assign: &Assignment) -> BTreeMap<u64, (u64, u64, u64)> {
        let mut out: BTreeMap<u64, (u64, u64, u64)> = BTreeMap::new();
        for (i, a) in assign.iter().enumerate() {
            let slot = out.entry(self.model.orders[i]).or_insert((
                0,
                0,
                self.model.orbits[i].len() as u64,
            ));
            match a {
                Some(true) => slot.0 += 1,
                None => slot.1 += 1,
                Some(false) => {}
            }
        }
        out
    }

    /// Unit propagation to a fixpoint.
    pub fn propagate(&self, assign: &mut Assignment) -> Result<(), Conflict> {
        loop {
            let mut changed = false;
            for c in self.constraints {
                let live: Vec<&Vec<bool>> = c
                    .allowed
                    .iter()
                    .filter(|t| {
                        t.iter()
                            .zip(&c.scope)
                            .all(|(&b, &v)| assign[v].is_none_or(|a| a == b))
                    })
                    .collect();
                if live.is_empty() {
                    let rep = c.scope.last().map_or(0, |&v| self.model.rep(v));
                    return Err(Conflict(format!(
                        "no admissible pattern left for the orbit of element #{rep}"
                    )));
                }
                for (pos, &v) in c.scope.iter().enumerate() {
                    if assign[v].is_none() && live.iter().all(|t| t[pos] == live[0][pos]) {
                        assign[v] = Some(live[0][pos]);
                        changed = true;
                    }
                }
            }
            let live = self.live_censuses(assign);
            if live.is_empty() {
                return Err(Conflict("no membership census is compatible".into()));
            }
            for (d, (inn, open, size)) in self.tally(assign) {
                if open == 0 {
                    continue;
                }
                let fill = if live
                    .iter()
                    .all(|c| c.get(&d).copied().unwrap_or(0) == inn * size)
                {
                    Some(false)
                } else if live
                    .iter()
                    .all(|c| c.get(&d).copied().unwrap_or(0) == (inn + open) * size)
                {
                    Some(true)
                } else {
                    None
                };
                if let Some(value) = fill {
                    for i in 0..assign.len() {
                        if self.model.orders[i] == d && assign[i].is_none() {
                            assign[i] = Some(value);
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Propagation plus failed-literal probing, to a fixpoint. Returns the
    /// literals settled by probing, in order.
    pub fn probe(&self, assign: &mut Assignment) -> Result<Vec<(usize, bool)>, Conflict> {
        self.propagate(assign)?;
        let mut settled = Vec::new();
        loop {
            let mut changed = false;
            for v in 0..assign.len() {
                if assign[v].is_some() {
                    continue;
                }
                let fails = |value: bool| {
                    let mut trial = assign.clone();
                    trial[v] = Some(value);
                    self.propagate(&mut trial).is_err()
                };
                match (fails(true), fails(false)) {
                    (true, true) => {
                        return Err(Conflict(format!(
                            "the orbit of element #{} can be neither in nor out",
                            self.model.rep(v)
                        )))
                    }
                    (true, false) => {
                        assign[v] = Some(false);
                        settled.push((v, false));
                    }
                    (false, true) => {
                        assign[v] = Some(true);
                        settled.push((v, true));
                    }
                    (false, false) => continue,
                }
                self.propagate(assign)?;
                changed = true;
            }
            if !changed {
                return Ok(settled);
            }
        }
    }
}
