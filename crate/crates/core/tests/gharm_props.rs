//! Cross-module properties of the harmonic-configuration searches.

use hsc_core::exact::divisors;
use hsc_core::gharm::{
    conjugate_config, find_coset_partition, hsc_verify, is_harmonic_config, HarmonicConfig,
    SubgroupContext,
};
use hsc_core::group::catalog_group;
use hsc_core::zharm::is_z_harmonic;
use std::collections::BTreeSet;

/// Non-decreasing tuples over `values` of the given length.
fn for_multisets(values: &[u64], len: usize, f: &mut impl FnMut(&[u64])) {
    fn rec(values: &[u64], len: usize, start: usize, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for i in start..values.len() {
            cur.push(values[i]);
            rec(values, len, i, cur, f);
            cur.pop();
        }
    }
    rec(values, len, 0, &mut Vec::new(), f);
}

#[test]
fn harmonic_findings_are_z_harmonic_on_small_groups() {
    // the full catalog bridge runs in the acceptance suite
    for name in ["C12", "S3", "A4", "D6", "Q8", "C2xA4", "S3xC4", "C24"] {
        let g = catalog_group(name).unwrap();
        let ctx = SubgroupContext::new(&g);
        let divs: Vec<u64> = divisors(g.order() as u64)
            .unwrap()
            .into_iter()
            .filter(|&d| d >= 2)
            .collect();
        for len in 1..=4usize {
            for_multisets(&divs, len, &mut |t| {
                if let Some(cfg) = ctx.find_harmonic(t).unwrap() {
                    assert!(
                        is_z_harmonic(t).unwrap().is_harmonic(),
                        "{name}: G-harmonic {t:?} is not Z-harmonic"
                    );
                    assert_eq!(is_harmonic_config(&cfg), Ok(true));
                }
            });
        }
    }
}

#[test]
fn found_configs_survive_conjugation() {
    for (name, tuple) in [
        ("S3", vec![3u64, 3]),
        ("C4", vec![2, 4, 4]),
        ("A4", vec![4, 4]),
        ("D6", vec![2, 4, 4]),
        ("S4", vec![4, 6, 12]),
    ] {
        let g = catalog_group(name).unwrap();
        let ctx = SubgroupContext::new(&g);
        let Some(cfg) = ctx.find_harmonic(&tuple).unwrap() else {
            continue;
        };
        for x in g.elements() {
            let conj = conjugate_config(&cfg, x).unwrap();
            assert_eq!(
                is_harmonic_config(&conj),
                Ok(true),
                "{name}: conjugate by {x} of {tuple:?}"
            );
        }
    }
}

#[test]
fn partitions_found_by_the_cover_search_are_harmonic_configs() {
    for name in ["C4", "C6", "C12", "S3", "D4", "A4"] {
        let g = catalog_group(name).unwrap();
        let allowed: BTreeSet<u64> = divisors(g.order() as u64).unwrap().into_iter().collect();
        let Some(cert) = find_coset_partition(&g, &allowed, false).unwrap() else {
            panic!("{name} admits coset partitions with multiplicity");
        };
        assert!(cert.is_partition);
        assert!(cert.has_multiplicity, "{name}: no distinct-index partitions exist");
        let cfg = HarmonicConfig {
            group: &g,
            subgroups: cert.cosets.iter().map(|(_, s)| s.clone()).collect(),
            reps: cert.cosets.iter().map(|(r, _)| *r).collect(),
        };
        assert_eq!(is_harmonic_config(&cfg), Ok(true), "{name}");
    }
}

#[test]
fn hsc_holds_for_catalog_groups_up_to_60() {
    for name in hsc_core::group::full_catalog() {
        let g = catalog_group(&name).unwrap();
        if g.order() > 60 {
            continue;
        }
        assert!(hsc_verify(&g).unwrap().holds(), "{name}");
    }
}
