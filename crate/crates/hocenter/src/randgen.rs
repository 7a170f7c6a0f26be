//! Seeded generation of random valid enriched categories for the
//! oracle-equivalence suite.
//!
//! A uniformly random composition table essentially never satisfies
//! associativity and interchange, so rejection sampling cannot produce
//! valid categories in reasonable time. Instead the generator draws
//! from parameterized constructions that are valid by design and still
//! exercise every code path: bands over random small-group lists,
//! suspensions of random abelian groups, and discrete enrichments of
//! random monoids and thin categories. Bounds: at most 3 objects and at
//! most 12 morphisms per hom-groupoid.

use rand::Rng;

use crate::band::build_band_category;
use crate::enriched::{
    discrete_enrichment, monoid_category, suspension, validate_category, GEnrichedCategory,
    OrdinaryCategory,
};
use crate::error::Result;
use crate::group::FiniteGroup;

fn band_pool() -> Vec<FiniteGroup> {
    // Hom(G,H) x |H| stays <= 12 for any pair drawn from this pool
    vec![
        FiniteGroup::trivial("1"),
        FiniteGroup::cyclic(2, "Z2"),
        FiniteGroup::cyclic(3, "Z3"),
    ]
}

fn abelian_pool() -> Vec<FiniteGroup> {
    let z2 = FiniteGroup::cyclic(2, "Z2");
    vec![
        z2.clone(),
        FiniteGroup::cyclic(3, "Z3"),
        FiniteGroup::cyclic(4, "Z4"),
        FiniteGroup::direct_product(&z2, &z2, "Z2xZ2"),
        FiniteGroup::cyclic(6, "Z6"),
        FiniteGroup::cyclic(8, "Z8"),
        FiniteGroup::cyclic(12, "Z12"),
    ]
}

/// A random monoid table that is associative by construction: either a
/// finite group from the pool, the "min with saturation" chain monoid,
/// or a two-sided zero adjoined to a smaller group.
fn random_monoid(rng: &mut impl Rng) -> (Vec<Vec<usize>>, usize) {
    match rng.gen_range(0..3u32) {
        0 => {
            let pool = abelian_pool();
            let g = &pool[rng.gen_range(0..pool.len())];
            (g.table.clone(), g.identity)
        }
        1 => {
            // chain semilattice {0 > 1 > ... > k} under max
            let k = rng.gen_range(2..=6usize);
            let table = (0..k).map(|a| (0..k).map(|b| a.max(b)).collect()).collect();
            (table, 0)
        }
        _ => {
            // group with an absorbing zero adjoined as the last element
            let pool: Vec<FiniteGroup> =
                abelian_pool().into_iter().filter(|g| g.order <= 8).collect();
            let g = &pool[rng.gen_range(0..pool.len())];
            let n = g.order;
            let z = n;
            let mut table = vec![vec![z; n + 1]; n + 1];
            for (a, row) in table.iter_mut().enumerate().take(n) {
                for (b, slot) in row.iter_mut().enumerate().take(n) {
                    *slot = g.table[a][b];
                }
            }
            (table, g.identity)
        }
    }
}

/// A random thin category on up to 3 objects: a preorder drawn as a
/// random reflexive-transitive closure of arrows.
fn random_thin_category(rng: &mut impl Rng) -> OrdinaryCategory {
    let n = rng.gen_range(1..=3usize);
    let mut le = vec![vec![false; n]; n];
    for (x, row) in le.iter_mut().enumerate() {
        row[x] = true;
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.gen_bool(0.4) {
                le[x][y] = true;
            }
        }
    }
    for k in 0..n {
        for x in 0..n {
            for y in 0..n {
                if le[x][k] && le[k][y] {
                    le[x][y] = true;
                }
            }
        }
    }
    let n_mor: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).map(|y| usize::from(le[x][y])).collect()).collect();
    let compose = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..n)
                        .map(|z| vec![vec![0; n_mor[x][y]]; n_mor[y][z]])
                        .collect()
                })
                .collect()
        })
        .collect();
    let cat = OrdinaryCategory {
        n_objects: n,
        labels: (0..n).map(|x| format!("p{x}")).collect(),
        n_mor,
        compose,
        identity: vec![0; n],
    };
    validate_category(&cat).expect("preorder closure is a category");
    cat
}

/// Draw one random valid enriched category.
pub fn random_enriched(rng: &mut impl Rng, budget: u128) -> Result<GEnrichedCategory> {
    match rng.gen_range(0..4u32) {
        0 => {
            let pool = band_pool();
            let n = rng.gen_range(1..=3usize);
            let groups: Vec<FiniteGroup> =
                (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
            build_band_category(&groups, budget)
        }
        1 => {
            let pool = abelian_pool();
            suspension(&pool[rng.gen_range(0..pool.len())])
        }
        2 => {
            let (table, identity) = random_monoid(rng);
            discrete_enrichment(&monoid_category(&table, identity, "m")?)
        }
        _ => discrete_enrichment(&random_thin_category(rng)),
    }
}
