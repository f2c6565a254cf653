use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::TopGroupoid;
use crate::json::Document;
use crate::semigroup::{
    i_of, idempotent_subsemigroup, natural_action, ox_action, spectral_action, Action, InverseSemigroup,
};
use crate::topology::{FiniteSpace, PartialMap};

#[derive(Debug, Clone)]
pub enum CatalogItem {
    Space(Arc<FiniteSpace>),
    Semigroup(Arc<InverseSemigroup>),
    Action(Arc<Action>),
    Groupoid(Arc<TopGroupoid>),
}

impl CatalogItem {
    pub fn kind(&self) -> &'static str {
        match self {
            CatalogItem::Space(_) => "space",
            CatalogItem::Semigroup(_) => "semigroup",
            CatalogItem::Action(_) => "action",
            CatalogItem::Groupoid(_) => "groupoid",
        }
    }

    pub fn to_document(&self) -> Document {
        match self {
            CatalogItem::Space(x) => Document::Space((**x).clone()),
            CatalogItem::Semigroup(s) => Document::Semigroup((**s).clone()),
            CatalogItem::Action(a) => Document::Action((**a).clone()),
            CatalogItem::Groupoid(g) => Document::Groupoid((**g).clone()),
        }
    }
}

/// Named example instances, in a fixed order.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<(String, CatalogItem)>,
}

impl Catalog {
    pub fn entries(&self) -> &[(String, CatalogItem)] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogItem> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, item)| item)
    }

    pub fn semigroup(&self, name: &str) -> Result<Arc<InverseSemigroup>> {
        match self.get(name) {
            Some(CatalogItem::Semigroup(s)) => Ok(s.clone()),
            _ => Err(Error::Json(format!("no catalog semigroup named {name}"))),
        }
    }

    pub fn action(&self, name: &str) -> Result<Arc<Action>> {
        match self.get(name) {
            Some(CatalogItem::Action(a)) => Ok(a.clone()),
            _ => Err(Error::Json(format!("no catalog action named {name}"))),
        }
    }

    pub fn groupoid(&self, name: &str) -> Result<Arc<TopGroupoid>> {
        match self.get(name) {
            Some(CatalogItem::Groupoid(g)) => Ok(g.clone()),
            _ => Err(Error::Json(format!("no catalog groupoid named {name}"))),
        }
    }

    pub fn space(&self, name: &str) -> Result<Arc<FiniteSpace>> {
        match self.get(name) {
            Some(CatalogItem::Space(x)) => Ok(x.clone()),
            _ => Err(Error::Json(format!("no catalog space named {name}"))),
        }
    }

    pub fn semigroups(&self) -> impl Iterator<Item = (&str, &Arc<InverseSemigroup>)> {
        self.entries.iter().filter_map(|(n, item)| match item {
            CatalogItem::Semigroup(s) => Some((n.as_str(), s)),
            _ => None,
        })
    }

    pub fn actions(&self) -> impl Iterator<Item = (&str, &Arc<Action>)> {
        self.entries.iter().filter_map(|(n, item)| match item {
            CatalogItem::Action(a) => Some((n.as_str(), a)),
            _ => None,
        })
    }

    pub fn groupoids(&self) -> impl Iterator<Item = (&str, &Arc<TopGroupoid>)> {
        self.entries.iter().filter_map(|(n, item)| match item {
            CatalogItem::Groupoid(g) => Some((n.as_str(), g)),
            _ => None,
        })
    }
}

/// Builds the catalog.
///
/// Semigroups: `Z2`, `Z3`, `E2`, `CHAIN1`..`CHAIN4`, `I2` (partial bijections
/// of two points), `EI2` (its idempotents). Spaces: `DISCRETE1`..`DISCRETE4`,
/// `SIERP`. Actions: `SWAP`, `TRIVIAL_Z2`, `NATURAL_I2`, `OX1`..`OX3`,
/// `SPECTRAL_E2`, `SPECTRAL_CHAIN3`. Groupoids: `GZ2`, `GZ3`, `PAIR2`,
/// `PAIR3`, `SPACE1`..`SPACE3`.
///
/// Panics if the installed guards are too tight to build it; see
/// [`try_catalog`].
pub fn catalog() -> Catalog {
    try_catalog().expect("catalog instances are valid")
}

pub fn try_catalog() -> Result<Catalog> {
    let mut entries: Vec<(String, CatalogItem)> = Vec::new();
    let mut add = |name: &str, item: CatalogItem| entries.push((name.to_string(), item));

    let z2 = Arc::new(InverseSemigroup::cyclic_group(2));
    let z3 = Arc::new(InverseSemigroup::cyclic_group(3));
    let e2 = Arc::new(InverseSemigroup::chain(2));
    let chain3 = Arc::new(InverseSemigroup::chain(3));
    let d: Vec<Arc<FiniteSpace>> = (1..=4).map(|n| Arc::new(FiniteSpace::discrete(n))).collect();
    let i2 = i_of(&d[1])?.semigroup;
    let (ei2, _) = idempotent_subsemigroup(&i2)?;

    add("Z2", CatalogItem::Semigroup(z2.clone()));
    add("Z3", CatalogItem::Semigroup(z3.clone()));
    add("E2", CatalogItem::Semigroup(e2.clone()));
    for k in 1..=4 {
        add(&format!("CHAIN{k}"), CatalogItem::Semigroup(Arc::new(InverseSemigroup::chain(k))));
    }
    add("I2", CatalogItem::Semigroup(i2));
    add("EI2", CatalogItem::Semigroup(ei2));

    for (k, x) in d.iter().enumerate() {
        add(&format!("DISCRETE{}", k + 1), CatalogItem::Space(x.clone()));
    }
    add("SIERP", CatalogItem::Space(Arc::new(FiniteSpace::sierpinski())));

    let swap = PartialMap::from_pairs(d[1].clone(), d[1].clone(), &[(0, 1), (1, 0)])?;
    let swap = Action::new(z2.clone(), d[1].clone(), vec![PartialMap::identity(d[1].clone()), swap])?;
    add("SWAP", CatalogItem::Action(Arc::new(swap)));
    let id1 = PartialMap::identity(d[0].clone());
    let trivial = Action::new(z2.clone(), d[0].clone(), vec![id1.clone(), id1])?;
    add("TRIVIAL_Z2", CatalogItem::Action(Arc::new(trivial)));
    add("NATURAL_I2", CatalogItem::Action(Arc::new(natural_action(&d[1])?)));
    for k in 1..=3 {
        add(&format!("OX{k}"), CatalogItem::Action(Arc::new(ox_action(&d[k - 1])?)));
    }
    add("SPECTRAL_E2", CatalogItem::Action(Arc::new(spectral_action(&e2)?)));
    add("SPECTRAL_CHAIN3", CatalogItem::Action(Arc::new(spectral_action(&chain3)?)));

    add("GZ2", CatalogItem::Groupoid(Arc::new(TopGroupoid::from_group(&z2)?)));
    add("GZ3", CatalogItem::Groupoid(Arc::new(TopGroupoid::from_group(&z3)?)));
    add("PAIR2", CatalogItem::Groupoid(Arc::new(TopGroupoid::pair(2))));
    add("PAIR3", CatalogItem::Groupoid(Arc::new(TopGroupoid::pair(3))));
    for k in 1..=3 {
        add(&format!("SPACE{k}"), CatalogItem::Groupoid(Arc::new(TopGroupoid::from_space(FiniteSpace::discrete(k)))));
    }
    Ok(Catalog { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_sizes() {
        let c = catalog();
        assert_eq!(c.semigroup("I2").unwrap().order(), 7);
        assert_eq!(c.semigroup("EI2").unwrap().order(), 4);
        let pair2 = c.groupoid("PAIR2").unwrap();
        assert_eq!((pair2.len(), pair2.units().len()), (4, 2));
        assert_eq!(c.space("SIERP").unwrap().opens().unwrap().len(), 3);
    }

    #[test]
    fn names_are_unique() {
        let c = catalog();
        let mut names: Vec<&str> = c.entries().iter().map(|(n, _)| n.as_str()).collect();
        names.sort_unstable();
        let len = names.len();
        names.dedup();
        assert_eq!(names.len(), len);
    }
}
