//! Lattice sites, per-site Majorana flavors, and the reflection pairing.
//!
//! A geometry splits the site set Λ into two halves Λ₋ and Λ₊ exchanged by
//! an involution ϑ with no fixed points. Each site carries `flavors`
//! Majoranas, and `(site, flavor)` pairs map bijectively onto the global
//! generator indices 1..=2N. Only the pairing matters for every quantity
//! computed downstream; Euclidean coordinates are never stored.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::MODE_CAP;

/// Which half of the lattice a site (or generator index) belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Minus => write!(f, "minus"),
            Side::Plus => write!(f, "plus"),
        }
    }
}

/// One invariant violation found by [`ReflectionGeometry::validate`].
///
/// Violations are data, not errors: an invalid geometry can be inspected,
/// reported, and rejected by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryViolation {
    /// ϑ(site) = site; the reflection plane must not intersect the lattice.
    FixedPoint { site: u32 },
    /// ϑ(ϑ(site)) != site.
    NotInvolution { site: u32 },
    /// ϑ maps the site into its own half instead of the opposite one.
    SideNotSwapped { site: u32 },
    /// Site has no side assignment.
    MissingSide { site: u32 },
    /// ϑ(site) is not a site of the geometry.
    UnknownThetaTarget { site: u32, target: u32 },
    /// (site, flavor) has no global index.
    MissingIndex { site: u32, flavor: u32 },
    /// Index outside 1..=2N.
    IndexOutOfRange { site: u32, flavor: u32, index: u32 },
    /// Two (site, flavor) pairs share a global index.
    DuplicateIndex { index: u32 },
    /// The two halves have different site counts.
    UnbalancedSides { minus: usize, plus: usize },
    /// flavors == 0.
    NoFlavors,
}

impl fmt::Display for GeometryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeometryViolation::*;
        match self {
            FixedPoint { site } => write!(f, "reflection fixed point: theta({site}) = {site}"),
            NotInvolution { site } => {
                write!(f, "reflection is not an involution at site {site}")
            }
            SideNotSwapped { site } => write!(
                f,
                "reflection does not swap sides: site {site} maps into its own half"
            ),
            MissingSide { site } => write!(f, "site {site} has no side assignment"),
            UnknownThetaTarget { site, target } => {
                write!(f, "theta({site}) = {target} is not a site of the geometry")
            }
            MissingIndex { site, flavor } => {
                write!(f, "no Majorana index for site {site}, flavor {flavor}")
            }
            IndexOutOfRange { site, flavor, index } => write!(
                f,
                "index {index} for site {site}, flavor {flavor} lies outside 1..=2N"
            ),
            DuplicateIndex { index } => write!(f, "Majorana index {index} assigned twice"),
            UnbalancedSides { minus, plus } => {
                write!(f, "unbalanced halves: {minus} minus sites vs {plus} plus sites")
            }
            NoFlavors => write!(f, "geometry must carry at least one flavor per site"),
        }
    }
}

/// Reflection-symmetric lattice: sites, sides, the involution ϑ, and the
/// (site, flavor) → global Majorana index assignment.
#[derive(Clone, Debug)]
pub struct ReflectionGeometry {
    sites: Vec<u32>,
    flavors: u32,
    side: BTreeMap<u32, Side>,
    theta_site: BTreeMap<u32, u32>,
    index: BTreeMap<(u32, u32), u32>,
    /// Induced involution on global indices; entry 0 is a sentinel.
    theta_index: Vec<u32>,
}

impl ReflectionGeometry {
    /// 1D chain of `2 * sites_per_side` sites with ϑ(i) = 2M+1−i and the
    /// left half as Λ₋. Indices are assigned site-major and flavor-minor,
    /// the Λ₋ block first and Λ₊ in mirrored site order, so the induced
    /// index involution is i ↔ i + N.
    pub fn chain(sites_per_side: u32, flavors: u32) -> Result<Self> {
        if sites_per_side == 0 || flavors == 0 {
            return Err(Error::InvalidGeometry(
                "chain needs sites_per_side >= 1 and flavors >= 1".into(),
            ));
        }
        let m = sites_per_side;
        let n_modes = (m * flavors) as usize;
        check_mode_cap(n_modes)?;

        let mut side = BTreeMap::new();
        let mut theta_site = BTreeMap::new();
        let mut index = BTreeMap::new();
        let sites: Vec<u32> = (1..=2 * m).collect();
        for &s in &sites {
            let minus = s <= m;
            side.insert(s, if minus { Side::Minus } else { Side::Plus });
            theta_site.insert(s, 2 * m + 1 - s);
        }
        for s in 1..=m {
            for fl in 0..flavors {
                index.insert((s, fl), (s - 1) * flavors + fl + 1);
                // mirrored plus block: theta(s) sits at offset N
                index.insert((2 * m + 1 - s, fl), m * flavors + (s - 1) * flavors + fl + 1);
            }
        }
        Self::assemble(sites, flavors, side, theta_site, index)
    }

    /// Geometry from an explicit pairing table: each `(a, b)` declares
    /// ϑ(a) = b with `a` on the minus side. Indices run in order of
    /// appearance, pair by pair, minus site first, so a table like
    /// `[(1,2), (3,4)]` with one flavor induces the index pairing
    /// 1↔2, 3↔4.
    pub fn from_pairs(pairs: &[(u32, u32)], flavors: u32) -> Result<Self> {
        if pairs.is_empty() || flavors == 0 {
            return Err(Error::InvalidGeometry(
                "pair table needs at least one pair and flavors >= 1".into(),
            ));
        }
        let n_modes = pairs.len() * flavors as usize;
        check_mode_cap(n_modes)?;

        let mut sites = Vec::new();
        let mut side = BTreeMap::new();
        let mut theta_site = BTreeMap::new();
        let mut index = BTreeMap::new();
        let mut next = 1u32;
        for &(a, b) in pairs {
            sites.push(a);
            sites.push(b);
            side.insert(a, Side::Minus);
            side.insert(b, Side::Plus);
            theta_site.insert(a, b);
            theta_site.insert(b, a);
            for fl in 0..flavors {
                index.insert((a, fl), next + fl);
            }
            for fl in 0..flavors {
                index.insert((b, fl), next + flavors + fl);
            }
            next += 2 * flavors;
        }
        Self::assemble(sites, flavors, side, theta_site, index)
    }

    /// Raw constructor for tests and validation paths; performs no checks.
    pub(crate) fn from_parts(
        sites: Vec<u32>,
        flavors: u32,
        side: BTreeMap<u32, Side>,
        theta_site: BTreeMap<u32, u32>,
        index: BTreeMap<(u32, u32), u32>,
    ) -> Self {
        let mut g = ReflectionGeometry {
            sites,
            flavors,
            side,
            theta_site,
            index,
            theta_index: Vec::new(),
        };
        g.theta_index = g.compute_theta_index();
        g
    }

    fn assemble(
        sites: Vec<u32>,
        flavors: u32,
        side: BTreeMap<u32, Side>,
        theta_site: BTreeMap<u32, u32>,
        index: BTreeMap<(u32, u32), u32>,
    ) -> Result<Self> {
        let g = Self::from_parts(sites, flavors, side, theta_site, index);
        g.ensure_valid()?;
        Ok(g)
    }

    fn compute_theta_index(&self) -> Vec<u32> {
        let n = self.num_majoranas();
        let mut theta = vec![0u32; n + 1];
        for (&(site, fl), &idx) in &self.index {
            if (idx as usize) > n || idx == 0 {
                continue;
            }
            if let Some(&ts) = self.theta_site.get(&site) {
                if let Some(&tidx) = self.index.get(&(ts, fl)) {
                    theta[idx as usize] = tidx;
                }
            }
        }
        theta
    }

    /// Checks every geometry invariant and returns the full list of
    /// violations; empty means the geometry is valid.
    pub fn validate(&self) -> Vec<GeometryViolation> {
        use GeometryViolation::*;
        let mut out = Vec::new();
        if self.flavors == 0 {
            out.push(NoFlavors);
            return out;
        }
        let mut minus = 0usize;
        let mut plus = 0usize;
        for &s in &self.sites {
            match self.side.get(&s) {
                Some(Side::Minus) => minus += 1,
                Some(Side::Plus) => plus += 1,
                None => out.push(MissingSide { site: s }),
            }
            match self.theta_site.get(&s) {
                None => out.push(UnknownThetaTarget { site: s, target: 0 }),
                Some(&t) => {
                    if !self.sites.contains(&t) {
                        out.push(UnknownThetaTarget { site: s, target: t });
                    } else if t == s {
                        out.push(FixedPoint { site: s });
                    } else {
                        if self.theta_site.get(&t) != Some(&s) {
                            out.push(NotInvolution { site: s });
                        }
                        if let (Some(&a), Some(&b)) = (self.side.get(&s), self.side.get(&t)) {
                            if a == b {
                                out.push(SideNotSwapped { site: s });
                            }
                        }
                    }
                }
            }
        }
        if minus != plus {
            out.push(UnbalancedSides { minus, plus });
        }
        let n = self.num_majoranas();
        let mut seen = vec![false; n + 1];
        for &s in &self.sites {
            for fl in 0..self.flavors {
                match self.index.get(&(s, fl)) {
                    None => out.push(MissingIndex { site: s, flavor: fl }),
                    Some(&idx) => {
                        if idx == 0 || idx as usize > n {
                            out.push(IndexOutOfRange { site: s, flavor: fl, index: idx });
                        } else if seen[idx as usize] {
                            out.push(DuplicateIndex { index: idx });
                        } else {
                            seen[idx as usize] = true;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            let msg = violations
                .iter()
                .map(|v| format!("  - {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            Err(Error::InvalidGeometry(msg))
        }
    }

    pub fn sites(&self) -> &[u32] {
        &self.sites
    }

    pub fn flavors(&self) -> u32 {
        self.flavors
    }

    /// Total number of Majoranas, 2N.
    pub fn num_majoranas(&self) -> usize {
        self.sites.len() * self.flavors as usize
    }

    /// Number of fermionic modes N (the representation dimension is 2^N).
    pub fn num_modes(&self) -> usize {
        self.num_majoranas() / 2
    }

    pub fn side_of_site(&self, site: u32) -> Option<Side> {
        self.side.get(&site).copied()
    }

    pub fn theta_site(&self, site: u32) -> Option<u32> {
        self.theta_site.get(&site).copied()
    }

    pub fn index_of(&self, site: u32, flavor: u32) -> Option<u32> {
        self.index.get(&(site, flavor)).copied()
    }

    /// The reflected partner of a global Majorana index.
    pub fn theta_index(&self, index: u32) -> u32 {
        self.theta_index[index as usize]
    }

    /// Side of a global Majorana index.
    pub fn side_of_index(&self, index: u32) -> Side {
        for (&(site, _), &idx) in &self.index {
            if idx == index {
                return self.side[&site];
            }
        }
        unreachable!("index {index} not assigned")
    }

    /// Global indices on one side, ascending.
    pub fn side_indices(&self, side: Side) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .index
            .iter()
            .filter(|((site, _), _)| self.side[site] == side)
            .map(|(_, &idx)| idx)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn minus_indices(&self) -> Vec<u32> {
        self.side_indices(Side::Minus)
    }

    pub fn plus_indices(&self) -> Vec<u32> {
        self.side_indices(Side::Plus)
    }
}

fn check_mode_cap(n_modes: usize) -> Result<()> {
    if n_modes > MODE_CAP {
        let dim = 1u64 << MODE_CAP.min(n_modes.min(62));
        let mib = 2 * (n_modes as u64) * dim * dim * 16 / (1024 * 1024);
        return Err(Error::RepresentationTooLarge { n_modes, cap: MODE_CAP, mib });
    }
    Ok(())
}
