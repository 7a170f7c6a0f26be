//! JSON fixture files: named finite groups plus named enriched
//! categories built from them.
//!
//! Top-level shape:
//!
//! ```json
//! {
//!   "groups": {
//!     "Z4":  { "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]], "identity": 0 },
//!     "S3":  { "permutations": [[1,0,2],[1,2,0]] }
//!   },
//!   "categories": {
//!     "bandZ2":  { "band": ["1", "Z2"] },
//!     "suspZ4":  { "suspension": "Z4" },
//!     "monoid":  { "discreteMonoid": { "table": [[0,1],[1,0]], "identity": 0 } },
//!     "poset":   { "discrete": { "nObjects": 2, "nMor": [[1,1],[0,1]], ... } },
//!     "custom":  { "enriched": { "nObjects": 1, "hom": [[{ "oneObjectGroup": "Z4" }]], ... } }
//!   }
//! }
//! ```
//!
//! Every category is fully validated on load; a malformed table is a
//! validation error naming the witness, not a panic.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::band::build_band_category;
use crate::enriched::{
    discrete_enrichment, monoid_category, suspension, validate_category, validate_enriched,
    GEnrichedCategory, OrdinaryCategory,
};
use crate::error::{Error, Result};
use crate::group::{validate_group, FiniteGroup};
use crate::groupoid::{validate_groupoid, Groupoid, RawGroupoid};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureFile {
    #[serde(default)]
    groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    categories: BTreeMap<String, CategorySpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    #[serde(default)]
    table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    identity: Option<usize>,
    #[serde(default)]
    permutations: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct CategorySpec {
    #[serde(default)]
    band: Option<Vec<String>>,
    #[serde(default)]
    suspension: Option<String>,
    #[serde(default)]
    discrete_monoid: Option<MonoidSpec>,
    #[serde(default)]
    discrete: Option<CategoryTableSpec>,
    #[serde(default)]
    enriched: Option<EnrichedSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidSpec {
    table: Vec<Vec<usize>>,
    identity: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct CategoryTableSpec {
    n_objects: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    n_mor: Vec<Vec<usize>>,
    compose: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
    identity: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct EnrichedSpec {
    n_objects: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    hom: Vec<Vec<GroupoidSpec>>,
    unit: Vec<usize>,
    comp1: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
    comp2: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct GroupoidSpec {
    #[serde(default)]
    one_object_group: Option<String>,
    #[serde(default)]
    n_objects: Option<usize>,
    #[serde(default)]
    morphisms: Option<Vec<(usize, usize)>>,
    #[serde(default)]
    identities: Option<Vec<usize>>,
    #[serde(default)]
    compose: Option<Vec<(usize, usize, usize)>>,
}

/// A parsed and validated fixture: groups and categories in label order.
#[derive(Debug)]
pub struct Fixture {
    pub groups: Vec<FiniteGroup>,
    pub categories: Vec<(String, GEnrichedCategory)>,
}

impl Fixture {
    pub fn group(&self, label: &str) -> Result<&FiniteGroup> {
        self.groups
            .iter()
            .find(|g| g.label == label)
            .ok_or_else(|| Error::Malformed(format!("fixture references unknown group {label:?}")))
    }
}

fn build_group(label: &str, spec: &GroupSpec) -> Result<FiniteGroup> {
    match (&spec.table, &spec.permutations) {
        (Some(table), None) => {
            let identity = spec.identity.ok_or_else(|| {
                Error::Malformed(format!("group {label:?}: table form requires \"identity\""))
            })?;
            validate_group(table.clone(), identity, label)
        }
        (None, Some(perms)) => {
            if spec.identity.is_some() {
                return Err(Error::Malformed(format!(
                    "group {label:?}: \"identity\" is only meaningful with \"table\""
                )));
            }
            FiniteGroup::from_permutations(perms, label)
        }
        _ => Err(Error::Malformed(format!(
            "group {label:?}: give exactly one of \"table\" or \"permutations\""
        ))),
    }
}

fn build_groupoid(fixture: &Fixture, spec: &GroupoidSpec) -> Result<Groupoid> {
    if let Some(label) = &spec.one_object_group {
        if spec.n_objects.is_some() || spec.morphisms.is_some() {
            return Err(Error::Malformed(
                "\"oneObjectGroup\" excludes explicit groupoid tables".into(),
            ));
        }
        return Ok(Groupoid::one_object_from_group(fixture.group(label)?));
    }
    let missing = |f: &str| Error::Malformed(format!("explicit groupoid is missing \"{f}\""));
    validate_groupoid(&RawGroupoid {
        n_objects: spec.n_objects.ok_or_else(|| missing("nObjects"))?,
        morphisms: spec.morphisms.clone().ok_or_else(|| missing("morphisms"))?,
        identities: spec.identities.clone().ok_or_else(|| missing("identities"))?,
        compose: spec.compose.clone().ok_or_else(|| missing("compose"))?,
    })
}

fn build_category(
    fixture: &Fixture,
    label: &str,
    spec: &CategorySpec,
    budget: u128,
) -> Result<GEnrichedCategory> {
    let forms = [
        spec.band.is_some(),
        spec.suspension.is_some(),
        spec.discrete_monoid.is_some(),
        spec.discrete.is_some(),
        spec.enriched.is_some(),
    ];
    if forms.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::Malformed(format!(
            "category {label:?}: give exactly one of \"band\", \"suspension\", \
             \"discreteMonoid\", \"discrete\", \"enriched\""
        )));
    }
    if let Some(group_labels) = &spec.band {
        let groups: Vec<FiniteGroup> = group_labels
            .iter()
            .map(|l| fixture.group(l).cloned())
            .collect::<Result<_>>()?;
        return build_band_category(&groups, budget);
    }
    if let Some(group_label) = &spec.suspension {
        return suspension(fixture.group(group_label)?);
    }
    if let Some(m) = &spec.discrete_monoid {
        return discrete_enrichment(&monoid_category(&m.table, m.identity, label)?);
    }
    if let Some(t) = &spec.discrete {
        let cat = OrdinaryCategory {
            n_objects: t.n_objects,
            labels: t
                .labels
                .clone()
                .unwrap_or_else(|| (0..t.n_objects).map(|x| format!("{label}.{x}")).collect()),
            n_mor: t.n_mor.clone(),
            compose: t.compose.clone(),
            identity: t.identity.clone(),
        };
        if cat.labels.len() != cat.n_objects
            || cat.n_mor.len() != cat.n_objects
            || cat.n_mor.iter().any(|r| r.len() != cat.n_objects)
            || cat.identity.len() != cat.n_objects
        {
            return Err(Error::Malformed(format!(
                "category {label:?}: table dimensions disagree with nObjects"
            )));
        }
        validate_category(&cat)?;
        return discrete_enrichment(&cat);
    }
    let e = spec.enriched.as_ref().expect("one form is present");
    if e.hom.len() != e.n_objects || e.hom.iter().any(|r| r.len() != e.n_objects) {
        return Err(Error::Malformed(format!(
            "category {label:?}: hom table is not nObjects x nObjects"
        )));
    }
    let hom: Vec<Vec<Groupoid>> = e
        .hom
        .iter()
        .map(|row| row.iter().map(|g| build_groupoid(fixture, g)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let c = GEnrichedCategory {
        n_objects: e.n_objects,
        labels: e
            .labels
            .clone()
            .unwrap_or_else(|| (0..e.n_objects).map(|x| format!("{label}.{x}")).collect()),
        hom,
        unit: e.unit.clone(),
        comp1: e.comp1.clone(),
        comp2: e.comp2.clone(),
    };
    validate_enriched(&c)?;
    Ok(c)
}

/// Parse and validate a fixture document. Categories come back sorted
/// by label, so downstream output order is deterministic.
pub fn parse_fixture(text: &str, budget: u128) -> Result<Fixture> {
    let file: FixtureFile = serde_json::from_str(text)
        .map_err(|e| Error::Malformed(format!("fixture is not valid JSON for the schema: {e}")))?;
    let mut fixture = Fixture { groups: Vec::new(), categories: Vec::new() };
    for (label, spec) in &file.groups {
        fixture.groups.push(build_group(label, spec)?);
    }
    for (label, spec) in &file.categories {
        let c = build_category(&fixture, label, spec, budget)?;
        fixture.categories.push((label.clone(), c));
    }
    Ok(fixture)
}
