//! Finite Coxeter systems realized exactly: root permutations for the
//! crystallographic and golden-ratio families, a closed word model for the
//! dihedral ones. Provides element enumeration with lengths, coset and
//! double-coset representatives, and conjugacy classes of generator subsets.

mod classes;
mod group;
mod roots;

pub use classes::{coxeter_classes, CoxeterClasses};
pub use group::{
    build_coxeter_system, enumerate_elements, validate_coxeter_matrix, CoxeterGroup,
    CoxeterSystem, CoxeterType,
};
pub use roots::GoldenInt;

/// Subset of the simple generators, as a bitmask. Supported ranks fit in u8.
pub type Mask = u8;

/// Iterator over the generator indices present in a mask.
pub fn mask_bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..8).filter(move |s| mask & (1 << s) != 0)
}

/// Human-readable form of a generator subset, e.g. "{s0,s2}".
pub fn mask_string(mask: Mask) -> String {
    let parts: Vec<String> = mask_bits(mask).map(|s| format!("s{s}")).collect();
    format!("{{{}}}", parts.join(","))
}

/// Parse the text form of a Coxeter matrix: one row per line, entries
/// separated by whitespace.
pub fn parse_coxeter_matrix(text: &str) -> crate::Result<Vec<Vec<u32>>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: std::result::Result<Vec<u32>, _> =
            line.split_whitespace().map(str::parse::<u32>).collect();
        match row {
            Ok(r) => rows.push(r),
            Err(_) => {
                return Err(crate::Error::InvalidCoxeterMatrix(format!(
                    "cannot parse row {:?}",
                    line
                )))
            }
        }
    }
    validate_coxeter_matrix(&rows)?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_helpers() {
        assert_eq!(mask_bits(0b101).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(mask_string(0b101), "{s0,s2}");
        assert_eq!(mask_string(0), "{}");
    }

    #[test]
    fn matrix_parsing() {
        let m = parse_coxeter_matrix("1 3\n3 1\n").unwrap();
        assert_eq!(m, vec![vec![1, 3], vec![3, 1]]);
        assert!(parse_coxeter_matrix("1 3\n2 1\n").is_err());
        assert!(parse_coxeter_matrix("1 x\nx 1\n").is_err());
    }
}
