//! End-to-end acceptance suite. Each test covers one release criterion
//! and prints a single pass/fail line (run with `--nocapture` to see
//! the lines for passing criteria too).

use std::panic::{catch_unwind, UnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hocenter::cochain::{build_complex, e2_page};
use hocenter::coherent::{
    compare_with_spectral, enumerate_coherent_families, ho_class_of, pi0_monoid, pi1_at_identity,
};
use hocenter::enriched::{strict_center, FamilyMonoid, GEnrichedCategory};
use hocenter::fixture::{parse_fixture, Fixture};
use hocenter::group::{center_of_group, FiniteGroup};
use hocenter::groupoid::{groupoid_center_splitting, Groupoid};
use hocenter::randgen::random_enriched;
use hocenter::Error;

const BUDGET: u128 = 1 << 24;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn load(name: &str) -> Fixture {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture file readable");
    parse_fixture(&text, BUDGET).expect("fixture valid")
}

fn criterion(n: usize, description: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("criterion {n} ({description}): PASS"),
        Err(e) => {
            println!("criterion {n} ({description}): FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

/// Order-2 idempotent monoid: identity plus one self-absorbing element.
fn assert_order2_idempotent(m: &FamilyMonoid) {
    assert_eq!(m.elements.len(), 2);
    let z = 1 - m.identity;
    assert_eq!(m.table[z][z], z);
    assert!(m.is_commutative());
    assert!(!m.is_group());
}

/// Monoid isomorphism by brute force over bijections; feasible for the
/// handful-of-elements monoids that appear here.
fn monoids_isomorphic(a: &FamilyMonoid, b: &FamilyMonoid) -> bool {
    let n = a.elements.len();
    if n != b.elements.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        p[a.identity] == b.identity
            && (0..n).all(|x| (0..n).all(|y| p[a.table[x][y]] == b.table[p[x]][p[y]]))
    })
}

fn permute(p: &mut Vec<usize>, k: usize, found: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return found(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permute(p, k + 1, found) {
            return true;
        }
        p.swap(k, i);
    }
    false
}

#[test]
fn criterion_1_flagship_band() {
    criterion(1, "band on {1, Z2, Z3, S3}", || {
        let start = Instant::now();
        let f = load("flagship.json");
        let (_, c) = &f.categories[0];

        let cx = build_complex(c, 3, BUDGET).unwrap();
        let page = e2_page(&cx).unwrap();
        assert!(page.e01.is_trivial(), "E2(0,1) must vanish");
        assert!(page.e11.is_trivial(), "E2(1,1) must vanish");

        let z = enumerate_coherent_families(c, BUDGET).unwrap();
        let pi1 = pi1_at_identity(c, &z).unwrap();
        assert!(pi1.invariants.is_empty(), "pi1 of the center must vanish");

        let pi0 = pi0_monoid(c, &z).unwrap();
        assert_order2_idempotent(&pi0);

        // the class map into the homotopy-category center is injective;
        // its image is the constant and identity families, and the two
        // remaining central elements of the finite homotopy category
        // (sign-valued and inversion-type) have no coherent representative
        let report = compare_with_spectral(c, &z, BUDGET).unwrap();
        assert!(report.injective_global);
        assert_eq!(report.ho.elements.len(), 4);
        assert_eq!(report.lifts.iter().filter(|l| l.is_some()).count(), 2);
        assert!(report.lifts[report.ho.identity].is_some());
        // liftable = exactly the strict-center classes
        let sc = strict_center(c, BUDGET).unwrap();
        let mut strict_images: Vec<Vec<usize>> = sc
            .objects
            .iter()
            .map(|phi0| {
                (0..c.n_objects).map(|x| c.hom[x][x].component_of[phi0[x]]).collect()
            })
            .collect();
        strict_images.sort();
        strict_images.dedup();
        let mut liftable: Vec<Vec<usize>> = report
            .ho
            .elements
            .iter()
            .zip(&report.lifts)
            .filter(|(_, l)| l.is_some())
            .map(|(e, _)| e.clone())
            .collect();
        liftable.sort();
        assert_eq!(strict_images, liftable);

        assert!(start.elapsed() < Duration::from_secs(60), "flagship run exceeded 60 s");
    });
}

#[test]
fn criterion_2_band_two_pi0_both_ways() {
    criterion(2, "band on {1, Z2}: pi0 brute force vs spectral assembly", || {
        let f = load("band_two.json");
        let (_, c) = &f.categories[0];

        // brute force: complete enumeration of coherent families
        let z = enumerate_coherent_families(c, BUDGET).unwrap();
        let pi0 = pi0_monoid(c, &z).unwrap();
        assert_order2_idempotent(&pi0);

        // spectral assembly: E2(1,1) = 0 makes pi0 -> Z(Ho) injective
        // over each liftable element and E2(2,1) = 0 makes the identity
        // component's obstruction vanish; the lift table shows every
        // element lifts, so pi0 must equal Z(Ho) on the nose
        let report = compare_with_spectral(c, &z, BUDGET).unwrap();
        assert!(report.page.e11.is_trivial());
        assert!(report.page.e21.is_trivial());
        assert!(report.lifts.iter().all(|l| l.is_some()));
        assert_order2_idempotent(&report.ho);

        // exact match: the class map is a monoid isomorphism
        let map: Vec<usize> = (0..z.n_classes)
            .map(|cl| {
                let rep = z.class_of.iter().position(|&k| k == cl).unwrap();
                let img = ho_class_of(c, &z.families[rep]);
                report.ho.elements.iter().position(|h| *h == img).unwrap()
            })
            .collect();
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 2, "class map must be a bijection");
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(report.ho.table[map[a]][map[b]], map[pi0.table[a][b]]);
            }
        }
    });
}

#[test]
fn criterion_3_discrete_enrichments() {
    criterion(3, "discrete enrichments reproduce the strict center", || {
        let f = load("discrete.json");
        assert!(f.categories.len() >= 3);
        assert!(f.categories.iter().any(|(_, c)| c.n_objects == 1));
        for (label, c) in &f.categories {
            let z = enumerate_coherent_families(c, BUDGET).unwrap();
            let sc = strict_center(c, BUDGET).unwrap();
            // identity morphisms only
            assert!(
                z.modifications.iter().all(|m| m.src == m.dst),
                "{label}: non-identity modification in a discrete enrichment"
            );
            assert_eq!(z.modifications.len(), z.families.len(), "{label}");
            // objects biject with the strict center
            let mut fam0: Vec<Vec<usize>> = z.families.iter().map(|f| f.phi0.clone()).collect();
            let mut strict = sc.objects.clone();
            fam0.sort();
            strict.sort();
            assert_eq!(fam0, strict, "{label}");
        }
    });
}

#[test]
fn criterion_4_suspensions() {
    criterion(4, "suspension fixtures: pi1 = A = E2(0,1)", || {
        let expected: &[(&str, &[i128])] = &[
            ("suspZ2", &[2]),
            ("suspZ2xZ2", &[2, 2]),
            ("suspZ4", &[4]),
            ("suspZ6", &[6]),
        ];
        let f = load("suspensions.json");
        assert_eq!(f.categories.len(), expected.len());
        for ((label, c), (want_label, want)) in f.categories.iter().zip(expected) {
            assert_eq!(label, want_label);
            let z = enumerate_coherent_families(c, BUDGET).unwrap();
            let pi0 = pi0_monoid(c, &z).unwrap();
            assert_eq!(pi0.elements.len(), 1, "{label}: pi0 must be trivial");
            let pi1 = pi1_at_identity(c, &z).unwrap();
            let got: Vec<i128> = pi1.invariants.iter().map(|&d| d as i128).collect();
            assert_eq!(&got, want, "{label}: pi1 invariant factors");
            let cx = build_complex(c, 3, BUDGET).unwrap();
            let page = e2_page(&cx).unwrap();
            assert_eq!(&page.e01.invariants, want, "{label}: E2(0,1) invariant factors");
        }
    });
}

#[test]
fn criterion_5_groupoid_center_splitting() {
    criterion(5, "center splitting on a disjoint union of groups", || {
        let z4 = FiniteGroup::cyclic(4, "Z4");
        let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], "S3").unwrap();
        let d4 = FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![1, 0, 3, 2]], "D4").unwrap();
        let groups = [z4, s3, d4];
        let parts: Vec<Groupoid> =
            groups.iter().map(Groupoid::one_object_from_group).collect();
        let refs: Vec<&Groupoid> = parts.iter().collect();
        let union = Groupoid::disjoint_union(&refs);
        let centers = groupoid_center_splitting(&union).unwrap();
        assert_eq!(centers.len(), groups.len());
        for ((comp, zg), g) in centers.iter().zip(&groups) {
            assert_eq!(union.components[*comp].len(), 1);
            assert_eq!(zg.order, center_of_group(g).len(), "component {}", g.label);
        }
        let orders: Vec<usize> = centers.iter().map(|(_, zg)| zg.order).collect();
        assert_eq!(orders, vec![4, 1, 2]);
    });
}

#[test]
fn criterion_6_random_oracle_equivalence() {
    criterion(6, "50 random categories: oracle vs spectral assembly", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(20260824);
        let mut done = 0;
        let mut drawn = 0;
        while done < 50 {
            drawn += 1;
            assert!(drawn < 500, "generator kept producing out-of-scope draws");
            let c = random_enriched(&mut rng, BUDGET).unwrap();
            let z = match enumerate_coherent_families(&c, BUDGET) {
                Ok(z) => z,
                Err(Error::BudgetExceeded { .. }) => continue,
                Err(e) => panic!("unexpected enumeration failure: {e}"),
            };
            match compare_with_spectral(&c, &z, BUDGET) {
                // checks (a)-(d) all ran inside; a violation comes back
                // as an InconsistencyDetected error
                Ok(_) => done += 1,
                // tuples with non-abelian automorphism groups are outside
                // the truncated complex's scope: redraw
                Err(Error::NonAbelianEntry(_)) => continue,
                Err(e) => panic!("oracle reported inconsistency: {e}"),
            }
        }
        assert!(start.elapsed() < Duration::from_secs(600), "oracle suite exceeded 10 min");
    });
}

#[test]
fn criterion_7_property_suites() {
    criterion(7, "property suites over all shipped fixtures", || {
        let dir = fixture_path("");
        let mut names: Vec<String> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .filter(|n| n.ends_with(".json"))
            .collect();
        names.sort();
        assert!(!names.is_empty());
        for name in &names {
            let f = load(name);
            for (label, c) in &f.categories {
                shipped_category_properties(&format!("{name}/{label}"), c);
            }
        }
        group_core_oracles();
    });
}

fn shipped_category_properties(tag: &str, c: &GEnrichedCategory) {
    // cosimplicial identities and delta-squared (the latter is asserted
    // during construction and double-checked here via the identities)
    let cx = build_complex(c, 3, BUDGET).unwrap();
    hocenter::cochain::check_cosimplicial_identities(c, &cx).unwrap();
    for s in 0..cx.deltas.len() - 1 {
        let dd = cx.deltas[s + 1].mul(&cx.deltas[s]);
        for j in 0..dd.n_cols() {
            for (i, &order) in cx.levels[s + 2].orders.iter().enumerate() {
                assert_eq!(dd.cols[j][i].rem_euclid(order), 0, "{tag}: delta^2 != 0");
            }
        }
    }

    // strict-center and pi0 commutativity; pi0 is a group when every
    // 1-cell is invertible
    let sc = strict_center(c, BUDGET).unwrap();
    assert!(sc.monoid.is_commutative(), "{tag}: strict center not commutative");
    let z = enumerate_coherent_families(c, BUDGET).unwrap();
    let pi0 = pi0_monoid(c, &z).unwrap();
    assert!(pi0.is_commutative(), "{tag}: pi0 not commutative");
    if c.all_one_cells_invertible() {
        assert!(pi0.is_group(), "{tag}: pi0 must be a group when 1-cells are invertible");
    }

    // duplicate-object invariance of pi0 and pi1
    let dup = duplicate_object(c, 0);
    let zd = enumerate_coherent_families(&dup, BUDGET).unwrap();
    let pi0d = pi0_monoid(&dup, &zd).unwrap();
    assert!(
        monoids_isomorphic(&pi0, &pi0d),
        "{tag}: pi0 changed under object duplication"
    );
    let pi1 = pi1_at_identity(c, &z).unwrap();
    let pi1d = pi1_at_identity(&dup, &zd).unwrap();
    assert_eq!(pi1.invariants, pi1d.invariants, "{tag}: pi1 changed under object duplication");
}

/// Add a second copy of object `o`: an equivalence of enriched
/// categories, so every homotopy invariant must be unchanged.
fn duplicate_object(c: &GEnrichedCategory, o: usize) -> GEnrichedCategory {
    let n = c.n_objects;
    let m = |i: usize| if i == n { o } else { i };
    let dup = GEnrichedCategory {
        n_objects: n + 1,
        labels: (0..=n).map(|i| format!("{}@{}", c.labels[m(i)], i)).collect(),
        hom: (0..=n).map(|x| (0..=n).map(|y| c.hom[m(x)][m(y)].clone()).collect()).collect(),
        unit: (0..=n).map(|x| c.unit[m(x)]).collect(),
        comp1: (0..=n)
            .map(|x| {
                (0..=n)
                    .map(|y| (0..=n).map(|z| c.comp1[m(x)][m(y)][m(z)].clone()).collect())
                    .collect()
            })
            .collect(),
        comp2: (0..=n)
            .map(|x| {
                (0..=n)
                    .map(|y| (0..=n).map(|z| c.comp2[m(x)][m(y)][m(z)].clone()).collect())
                    .collect()
            })
            .collect(),
    };
    hocenter::enriched::validate_enriched(&dup).expect("duplicated category is valid");
    dup
}

fn group_core_oracles() {
    use hocenter::group::{centralizer, enumerate_homs, rep_classes};
    let z2 = FiniteGroup::cyclic(2, "Z2");
    let z3 = FiniteGroup::cyclic(3, "Z3");
    let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], "S3").unwrap();
    // orbit-stabilizer on every conjugation orbit of Hom(G, H)
    for (g, h) in [(&z2, &s3), (&z3, &s3), (&s3, &s3), (&z2, &z2)] {
        for class in rep_classes(g, h, BUDGET).unwrap() {
            let stab = centralizer(&class[0], g, h).len();
            assert_eq!(class.len() * stab, h.order, "orbit-stabilizer failed");
        }
    }
    // hom-enumeration counts against known values
    assert_eq!(enumerate_homs(&z2, &s3, BUDGET).unwrap().len(), 4);
    assert_eq!(enumerate_homs(&z3, &s3, BUDGET).unwrap().len(), 3);
    assert_eq!(enumerate_homs(&s3, &s3, BUDGET).unwrap().len(), 10);
}
