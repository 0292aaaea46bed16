//! Built-in groups, addressable by name.
//!
//! Atoms: `Cn` (cyclic, an n-cycle), `Dn` (dihedral of order 2n on n
//! points, n ≥ 3), `S3`, `S4`, `A4`, `A5`, `Q8`. Names joined with `x`
//! build direct products, e.g. `C2xA4` or `C2xC2xC2`.

use super::{Group, Permutation, DEFAULT_ORDER_CAP};
use crate::{Error, Result};

/// Builds a catalog group with the default order cap.
pub fn catalog_group(name: &str) -> Result<Group> {
    catalog_group_with_cap(name, DEFAULT_ORDER_CAP)
}

/// Builds a catalog group, enforcing the given order cap.
pub fn catalog_group_with_cap(name: &str, cap: usize) -> Result<Group> {
    let parts: Vec<&str> = name.split('x').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Usage(format!("malformed catalog name `{name}`")));
    }
    if parts.len() == 1 {
        return atom_named(name, parts[0], cap);
    }
    let mut g = atom(parts[0], cap)?;
    for part in &parts[1..] {
        let h = atom(part, cap)?;
        g = Group::direct_product(name, &g, &h, cap)?;
    }
    Ok(g)
}

fn atom(token: &str, cap: usize) -> Result<Group> {
    atom_named(token, token, cap)
}

fn atom_named(name: &str, token: &str, cap: usize) -> Result<Group> {
    let cycle = |n: usize| -> Result<Permutation> {
        Permutation::new((0..n).map(|i| ((i + 1) % n) as u8).collect())
    };
    match token {
        "S3" => Group::from_generators(
            name,
            3,
            vec![Permutation::new(vec![1, 0, 2])?, Permutation::new(vec![1, 2, 0])?],
            cap,
        ),
        "S4" => Group::from_generators(
            name,
            4,
            vec![
                Permutation::new(vec![1, 2, 3, 0])?,
                Permutation::new(vec![1, 0, 2, 3])?,
            ],
            cap,
        ),
        "A4" => Group::from_generators(
            name,
            4,
            vec![
                Permutation::new(vec![1, 2, 0, 3])?,
                Permutation::new(vec![0, 2, 3, 1])?,
            ],
            cap,
        ),
        "A5" => Group::from_generators(
            name,
            5,
            vec![
                Permutation::new(vec![1, 2, 3, 4, 0])?,
                Permutation::new(vec![1, 2, 0, 3, 4])?,
            ],
            cap,
        ),
        // right multiplication by i and j on {1,-1,i,-i,j,-j,k,-k}
        "Q8" => Group::from_generators(
            name,
            8,
            vec![
                Permutation::new(vec![2, 3, 1, 0, 7, 6, 4, 5])?,
                Permutation::new(vec![4, 5, 6, 7, 1, 0, 3, 2])?,
            ],
            cap,
        ),
        _ => {
            if let Some(n) = token.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
                if n == 0 || n > super::DEGREE_CAP {
                    return Err(Error::Usage(format!("cyclic order {n} out of range")));
                }
                if n == 1 {
                    return Group::from_generators(name, 1, vec![], cap);
                }
                return Group::from_generators(name, n, vec![cycle(n)?], cap);
            }
            if let Some(n) = token.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
                if !(3..=super::DEGREE_CAP).contains(&n) {
                    return Err(Error::Usage(format!("dihedral degree {n} out of range")));
                }
                let reflect = Permutation::new(
                    (0..n).map(|i| if i == 0 { 0 } else { (n - i) as u8 }).collect(),
                )?;
                return Group::from_generators(name, n, vec![cycle(n)?, reflect], cap);
            }
            Err(Error::Usage(format!("unknown catalog group `{token}`")))
        }
    }
}

/// The shipped catalog: cyclic groups up to order 120, dihedral groups up
/// to 30 points, and the named groups used by the verification suites.
pub fn full_catalog() -> Vec<String> {
    let mut names: Vec<String> = (1..=120).map(|n| format!("C{n}")).collect();
    names.extend((3..=30).map(|n| format!("D{n}")));
    for fixed in ["S3", "S4", "A4", "A5", "Q8", "C2xC2xC2", "C2xA4", "S3xC4"] {
        names.push(fixed.to_string());
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        for (name, order) in [
            ("C1", 1),
            ("C120", 120),
            ("D30", 60),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
            ("Q8", 8),
            ("C2xC120", 240),
        ] {
            assert_eq!(catalog_group(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        assert!(matches!(catalog_group("Z5"), Err(Error::Usage(_))));
        assert!(matches!(catalog_group("C0"), Err(Error::Usage(_))));
        assert!(matches!(catalog_group("CxA4"), Err(Error::Usage(_))));
        assert!(matches!(catalog_group("D2"), Err(Error::Usage(_))));
    }

    #[test]
    fn full_catalog_is_buildable_and_capped() {
        let names = full_catalog();
        assert_eq!(names.len(), 120 + 28 + 8);
        for name in names {
            let g = catalog_group(&name).unwrap();
            assert!(g.order() <= 120, "{name} exceeds the catalog scale");
        }
    }
}
