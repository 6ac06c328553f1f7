use super::group::CoxeterGroup;
use super::Mask;

/// The W-conjugacy classes of subsets of S, with a total order on the
/// representatives refining conjugate containment, and the containment
/// relation itself.
pub struct CoxeterClasses {
    /// Class representatives, ordered by (cardinality, bitmask). The
    /// representative of a class is its smallest member mask.
    pub reps: Vec<Mask>,
    /// class_of[mask] = index into reps.
    pub class_of: Vec<usize>,
    /// Members of each class, ascending masks.
    pub members: Vec<Vec<Mask>>,
    /// below[i][j] = true when reps[i] is conjugate into reps[j].
    below: Vec<Vec<bool>>,
}

pub fn coxeter_classes(group: &CoxeterGroup) -> CoxeterClasses {
    let rank = group.rank;
    let num_subsets = 1usize << rank;
    let mut class_of = vec![usize::MAX; num_subsets];
    let mut classes: Vec<Vec<Mask>> = Vec::new();

    for start in 0..num_subsets {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut orbit = vec![start as Mask];
        class_of[start] = id;
        // Brute-force orbit: image of the subset under every conjugator.
        for w in 0..group.size as u32 {
            if let Some(img) = group.conjugate_subset(w, start as Mask) {
                if class_of[img as usize] == usize::MAX {
                    class_of[img as usize] = id;
                    orbit.push(img);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }

    // Reorder classes by (cardinality, representative mask); this refines
    // conjugate containment because conjugation preserves cardinality.
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by_key(|&c| {
        let rep = classes[c][0];
        (rep.count_ones(), rep)
    });
    let mut remap = vec![0usize; classes.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let members: Vec<Vec<Mask>> = order.iter().map(|&c| classes[c].clone()).collect();
    let reps: Vec<Mask> = members.iter().map(|m| m[0]).collect();
    for c in class_of.iter_mut() {
        *c = remap[*c];
    }

    let below = containment(group, &reps);

    CoxeterClasses {
        reps,
        class_of,
        members,
        below,
    }
}

fn containment(group: &CoxeterGroup, reps: &[Mask]) -> Vec<Vec<bool>> {
    let n = reps.len();
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                below[i][j] = true;
                continue;
            }
            if reps[i].count_ones() > reps[j].count_ones() {
                continue;
            }
            below[i][j] = (0..group.size as u32).any(|w| {
                group
                    .conjugate_subset(w, reps[i])
                    .is_some_and(|img| img & !reps[j] == 0)
            });
        }
    }
    below
}

impl CoxeterClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_index(&self, mask: Mask) -> usize {
        self.class_of[mask as usize]
    }

    /// J conjugate-contained in K, on class indices.
    pub fn leq_w(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    /// Strict conjugate containment on class indices.
    pub fn strictly_below(&self, i: usize, j: usize) -> bool {
        i != j && self.below[i][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::group::{build_coxeter_system, enumerate_elements, CoxeterType};

    fn classes_for(t: CoxeterType) -> (CoxeterGroup, CoxeterClasses) {
        let g = enumerate_elements(build_coxeter_system(t).unwrap(), 100_000).unwrap();
        let c = coxeter_classes(&g);
        (g, c)
    }

    #[test]
    fn a2_classes() {
        let (_, c) = classes_for(CoxeterType::A(2));
        assert_eq!(c.len(), 3);
        assert_eq!(c.reps, vec![0b00, 0b01, 0b11]);
        assert_eq!(c.members[1], vec![0b01, 0b10]);
    }

    #[test]
    fn a3_classes() {
        let (_, c) = classes_for(CoxeterType::A(3));
        assert_eq!(c.len(), 5);
        // {s0,s1} and {s1,s2} are conjugate; {s0,s2} is not.
        assert_eq!(c.class_index(0b011), c.class_index(0b110));
        assert_ne!(c.class_index(0b011), c.class_index(0b101));
    }

    #[test]
    fn dihedral_parity() {
        let (_, even) = classes_for(CoxeterType::I2(4));
        assert_ne!(even.class_index(0b01), even.class_index(0b10));
        assert_eq!(even.len(), 4);
        let (_, odd) = classes_for(CoxeterType::I2(5));
        assert_eq!(odd.class_index(0b01), odd.class_index(0b10));
        assert_eq!(odd.len(), 3);
    }

    #[test]
    fn order_refines_containment() {
        for t in [CoxeterType::A(3), CoxeterType::B(3), CoxeterType::I2(5)] {
            let (_, c) = classes_for(t);
            for i in 0..c.len() {
                for j in 0..c.len() {
                    if c.leq_w(i, j) {
                        assert!(i <= j);
                    }
                }
            }
        }
    }

    #[test]
    fn subset_conjugacy_matches_coxeter_element_conjugacy() {
        for t in [
            CoxeterType::A(2),
            CoxeterType::A(3),
            CoxeterType::B(2),
            CoxeterType::I2(5),
        ] {
            let (g, c) = classes_for(t);
            let subsets = 1u16 << g.rank;
            for j in 0..subsets as usize {
                for k in 0..subsets as usize {
                    let same_class = c.class_index(j as Mask) == c.class_index(k as Mask);
                    let cj = g.coxeter_element(j as Mask);
                    let ck = g.coxeter_element(k as Mask);
                    let conj_elems = g.conjugacy_class(cj).contains(&ck);
                    assert_eq!(same_class, conj_elems, "J={j:b} K={k:b}");
                }
            }
        }
    }
}
