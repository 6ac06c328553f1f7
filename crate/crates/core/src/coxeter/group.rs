use std::collections::HashMap;

use num_bigint::BigUint;

use super::roots::{build_root_table, GoldenInt, RootTable};
use super::Mask;
use crate::error::{Error, Result};

/// Supported family tags. Rank limits keep subset masks inside a byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    H3,
    H4,
    I2(usize),
    Custom(Vec<Vec<u32>>),
}

impl CoxeterType {
    pub fn label(&self) -> String {
        match self {
            CoxeterType::A(n) => format!("A{n}"),
            CoxeterType::B(n) => format!("B{n}"),
            CoxeterType::D(n) => format!("D{n}"),
            CoxeterType::E(n) => format!("E{n}"),
            CoxeterType::F4 => "F4".into(),
            CoxeterType::G2 => "G2".into(),
            CoxeterType::H3 => "H3".into(),
            CoxeterType::H4 => "H4".into(),
            CoxeterType::I2(m) => format!("I2({m})"),
            CoxeterType::Custom(_) => "custom".into(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) | CoxeterType::E(n) => *n,
            CoxeterType::F4 | CoxeterType::H4 => 4,
            CoxeterType::G2 | CoxeterType::I2(_) => 2,
            CoxeterType::H3 => 3,
            CoxeterType::Custom(m) => m.len(),
        }
    }

    fn order_formula(&self) -> Option<BigUint> {
        fn factorial(n: usize) -> BigUint {
            (1..=n as u64).map(BigUint::from).product()
        }
        let two = BigUint::from(2u8);
        match self {
            CoxeterType::A(n) => Some(factorial(n + 1)),
            CoxeterType::B(n) => Some(two.pow(*n as u32) * factorial(*n)),
            CoxeterType::D(n) => Some(two.pow(*n as u32 - 1) * factorial(*n)),
            CoxeterType::E(6) => Some(BigUint::from(51840u32)),
            CoxeterType::E(7) => Some(BigUint::from(2903040u32)),
            CoxeterType::E(8) => Some(BigUint::from(696729600u32)),
            CoxeterType::E(_) => None,
            CoxeterType::F4 => Some(BigUint::from(1152u32)),
            CoxeterType::G2 => Some(BigUint::from(12u8)),
            CoxeterType::H3 => Some(BigUint::from(120u8)),
            CoxeterType::H4 => Some(BigUint::from(14400u16)),
            CoxeterType::I2(m) => Some(BigUint::from(2 * *m as u64)),
            CoxeterType::Custom(_) => None,
        }
    }

    /// The Coxeter matrix (m_st) for the family, 1 on the diagonal.
    pub fn coxeter_matrix(&self) -> Result<Vec<Vec<u32>>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut bond = |m: &mut Vec<Vec<u32>>, i: usize, j: usize, v: u32| {
            m[i][j] = v;
            m[j][i] = v;
        };
        match self {
            CoxeterType::A(n) => {
                if !(1..=8).contains(n) {
                    return Err(Error::UnsupportedType(format!("A{n}: rank must be 1..=8")));
                }
                for i in 0..n - 1 {
                    bond(&mut m, i, i + 1, 3);
                }
            }
            CoxeterType::B(n) => {
                if !(2..=8).contains(n) {
                    return Err(Error::UnsupportedType(format!("B{n}: rank must be 2..=8")));
                }
                for i in 0..n - 2 {
                    bond(&mut m, i, i + 1, 3);
                }
                bond(&mut m, n - 2, n - 1, 4);
            }
            CoxeterType::D(n) => {
                if !(4..=8).contains(n) {
                    return Err(Error::UnsupportedType(format!("D{n}: rank must be 4..=8")));
                }
                for i in 0..n - 2 {
                    bond(&mut m, i, i + 1, 3);
                }
                bond(&mut m, n - 3, n - 1, 3);
            }
            CoxeterType::E(n) => {
                if !(6..=8).contains(n) {
                    return Err(Error::UnsupportedType(format!("E{n}: rank must be 6..=8")));
                }
                // Chain 0-1-2-...-(n-2), extra node n-1 attached to node 2.
                for i in 0..n - 2 {
                    bond(&mut m, i, i + 1, 3);
                }
                bond(&mut m, 2, n - 1, 3);
            }
            CoxeterType::F4 => {
                bond(&mut m, 0, 1, 3);
                bond(&mut m, 1, 2, 4);
                bond(&mut m, 2, 3, 3);
            }
            CoxeterType::G2 => bond(&mut m, 0, 1, 6),
            CoxeterType::H3 => {
                bond(&mut m, 0, 1, 5);
                bond(&mut m, 1, 2, 3);
            }
            CoxeterType::H4 => {
                bond(&mut m, 0, 1, 5);
                bond(&mut m, 1, 2, 3);
                bond(&mut m, 2, 3, 3);
            }
            CoxeterType::I2(order) => {
                if *order < 3 {
                    return Err(Error::UnsupportedType(format!(
                        "I2({order}): bond order must be at least 3"
                    )));
                }
                bond(&mut m, 0, 1, *order as u32);
            }
            CoxeterType::Custom(given) => {
                validate_coxeter_matrix(given)?;
                return Ok(given.clone());
            }
        }
        Ok(m)
    }
}

pub fn validate_coxeter_matrix(m: &[Vec<u32>]) -> Result<()> {
    let n = m.len();
    if n == 0 || n > 8 {
        return Err(Error::UnsupportedType(format!(
            "rank {n} outside the supported range 1..=8"
        )));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCoxeterMatrix("matrix is not square".into()));
        }
        if row[i] != 1 {
            return Err(Error::InvalidCoxeterMatrix(format!(
                "diagonal entry m[{i}][{i}] must be 1"
            )));
        }
        for j in 0..n {
            if i != j {
                if m[i][j] != m[j][i] {
                    return Err(Error::InvalidCoxeterMatrix(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
                if m[i][j] < 2 {
                    return Err(Error::InvalidCoxeterMatrix(format!(
                        "off-diagonal entry m[{i}][{j}] must be at least 2"
                    )));
                }
            }
        }
    }
    Ok(())
}

enum RootData {
    Table(RootTable),
    Dihedral { m: usize },
}

/// A finite Coxeter system: the Coxeter matrix plus an exact realization of
/// the simple reflections as signed permutations of the positive roots.
/// Dihedral groups of arbitrary bond order use a closed word model instead
/// of root coordinates.
pub struct CoxeterSystem {
    pub ctype: CoxeterType,
    pub rank: usize,
    pub coxeter_matrix: Vec<Vec<u32>>,
    root_data: RootData,
    pub expected_order: Option<BigUint>,
}

const ROOT_CAP: usize = 1000;

/// Construct a Coxeter system. Fails on unsupported families or invalid
/// custom matrices; a custom matrix of non-finite type overruns the root
/// budget and is reported as unsupported.
pub fn build_coxeter_system(ctype: CoxeterType) -> Result<CoxeterSystem> {
    let matrix = ctype.coxeter_matrix()?;
    let rank = matrix.len();
    let max_bond = (0..rank)
        .flat_map(|i| (0..rank).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| matrix[i][j])
        .max()
        .unwrap_or(2);

    let root_data = if rank == 2 && !matches!(ctype, CoxeterType::A(_)) {
        RootData::Dihedral {
            m: matrix[0][1] as usize,
        }
    } else if rank == 1 {
        RootData::Dihedral { m: 1 }
    } else if max_bond > 6 {
        return Err(Error::UnsupportedType(
            "bond orders above 6 are only supported in rank 2".into(),
        ));
    } else if max_bond == 5 {
        let cartan = golden_cartan(&matrix);
        RootData::Table(build_root_table(&cartan, ROOT_CAP).map_err(not_finite)?)
    } else {
        let cartan = integer_cartan(&matrix)?;
        RootData::Table(build_root_table(&cartan, ROOT_CAP).map_err(not_finite)?)
    };

    Ok(CoxeterSystem {
        expected_order: ctype.order_formula(),
        rank,
        coxeter_matrix: matrix,
        root_data,
        ctype,
    })
}

fn not_finite(e: Error) -> Error {
    match e {
        Error::BudgetExceeded { .. } => {
            Error::UnsupportedType("Coxeter matrix is not of finite type".into())
        }
        other => other,
    }
}

fn integer_cartan(matrix: &[Vec<u32>]) -> Result<Vec<Vec<i64>>> {
    let n = matrix.len();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        for j in 0..n {
            if i == j {
                continue;
            }
            // Split 4 cos^2(pi/m) into an integer pair; the lower index gets
            // the short-root side.
            let (lo, hi) = match matrix[i][j] {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-1, -2),
                6 => (-1, -3),
                other => {
                    return Err(Error::UnsupportedType(format!(
                        "bond order {other} has no integer Cartan entries"
                    )))
                }
            };
            if i < j {
                c[i][j] = lo;
            } else {
                c[i][j] = hi;
            }
        }
    }
    Ok(c)
}

fn golden_cartan(matrix: &[Vec<u32>]) -> Vec<Vec<GoldenInt>> {
    let n = matrix.len();
    let mut c = vec![vec![GoldenInt::ZERO; n]; n];
    for i in 0..n {
        c[i][i] = GoldenInt::from_int(2);
        for j in 0..n {
            if i == j {
                continue;
            }
            c[i][j] = match matrix[i][j] {
                2 => GoldenInt::ZERO,
                3 => GoldenInt::from_int(-1),
                4 => {
                    if i < j {
                        GoldenInt::from_int(-1)
                    } else {
                        GoldenInt::from_int(-2)
                    }
                }
                5 => -GoldenInt::PHI,
                6 => {
                    if i < j {
                        GoldenInt::from_int(-1)
                    } else {
                        GoldenInt::from_int(-3)
                    }
                }
                _ => unreachable!("filtered before ring selection"),
            };
        }
    }
    c
}

impl CoxeterSystem {
    pub fn num_positive_roots(&self) -> usize {
        match &self.root_data {
            RootData::Table(t) => t.num_positive,
            RootData::Dihedral { m } => *m,
        }
    }

    pub fn root_coordinates(&self) -> Option<&Vec<Vec<String>>> {
        match &self.root_data {
            RootData::Table(t) => Some(&t.coordinates),
            RootData::Dihedral { .. } => None,
        }
    }

    /// Each simple reflection permutes the positive roots, sending exactly
    /// one (its own) negative. Dihedral systems satisfy this by the word
    /// model; for root tables it is checked directly.
    pub fn check_simple_reflection_action(&self) -> bool {
        match &self.root_data {
            RootData::Dihedral { .. } => true,
            RootData::Table(t) => (0..self.rank).all(|s| {
                let negs: Vec<usize> = t.generator_action[s]
                    .iter()
                    .enumerate()
                    .filter(|(_, &img)| img & 1 == 1)
                    .map(|(r, _)| r)
                    .collect();
                negs == vec![s]
            }),
        }
    }
}

/// A fully enumerated finite Coxeter group with Cayley tables. All queries
/// after construction are read-only.
pub struct CoxeterGroup {
    pub system: CoxeterSystem,
    pub size: usize,
    pub rank: usize,
    lengths: Vec<u16>,
    /// right[w * rank + s] = index of w s.
    right: Vec<u32>,
    inv: Vec<u32>,
    /// Right and left descent sets as bitmasks over the generators.
    rdesc: Vec<Mask>,
    ldesc: Vec<Mask>,
    /// cgen[w * rank + j] = index of w^{-1} s_j w.
    cgen: Vec<u32>,
    words: Vec<Vec<u8>>,
}

pub fn enumerate_elements(system: CoxeterSystem, cap: usize) -> Result<CoxeterGroup> {
    if let Some(expected) = &system.expected_order {
        if expected > &BigUint::from(cap) {
            return Err(Error::BudgetExceeded {
                what: format!("group enumeration for {}", system.ctype.label()),
                needed: usize::try_from(expected.clone()).unwrap_or(usize::MAX),
                cap,
            });
        }
    }
    let rank = system.rank;
    let (right, lengths, words) = match &system.root_data {
        RootData::Dihedral { m } => dihedral_tables(*m),
        RootData::Table(t) => bfs_tables(t, rank, cap)?,
    };
    let size = lengths.len();
    if let Some(expected) = &system.expected_order {
        if expected != &BigUint::from(size) {
            return Err(Error::CrossCheckFailed(format!(
                "enumerated {} elements, classical order is {}",
                size, expected
            )));
        }
    }

    let mut group = CoxeterGroup {
        system,
        size,
        rank,
        lengths,
        right,
        inv: Vec::new(),
        rdesc: Vec::new(),
        ldesc: Vec::new(),
        cgen: Vec::new(),
        words,
    };
    group.fill_derived_tables();
    Ok(group)
}

/// Cayley tables for the dihedral group of order 2m in the alternating-word
/// model. Element indices: 0 is the identity; a word of length k in 1..m
/// starting with generator g has index 2k-1+g; the longest element is 2m-1.
fn dihedral_tables(m: usize) -> (Vec<u32>, Vec<u16>, Vec<Vec<u8>>) {
    if m == 1 {
        // Rank-1 degenerate case: the group of order 2.
        return (
            vec![1, 0],
            vec![0, 1],
            vec![vec![], vec![0]],
        );
    }
    let size = 2 * m;
    let idx = |k: usize, g: usize| -> u32 {
        if k == 0 {
            0
        } else if k == m {
            (2 * m - 1) as u32
        } else {
            (2 * k - 1 + g) as u32
        }
    };
    let mut right = vec![0u32; size * 2];
    let mut lengths = vec![0u16; size];
    let mut words: Vec<Vec<u8>> = vec![Vec::new(); size];

    let word_of = |k: usize, g: usize| -> Vec<u8> {
        (0..k).map(|i| ((g + i) % 2) as u8).collect()
    };

    for k in 0..=m {
        let starts: &[usize] = if k == 0 || k == m { &[0] } else { &[0, 1] };
        for &g in starts {
            let w = idx(k, g) as usize;
            lengths[w] = k as u16;
            words[w] = word_of(k, g);
            for s in 0..2usize {
                let target = if k == 0 {
                    idx(1, s)
                } else if k == m {
                    // Pick the representation of the longest word ending
                    // with s and strip the last letter.
                    let gg = if m % 2 == 1 { s } else { 1 - s };
                    idx(m - 1, gg)
                } else {
                    let last = (g + k - 1) % 2;
                    if s == last {
                        idx(k - 1, g)
                    } else {
                        idx(k + 1, g)
                    }
                };
                right[w * 2 + s] = target;
            }
        }
    }
    (right, lengths, words)
}

fn bfs_tables(
    table: &RootTable,
    rank: usize,
    cap: usize,
) -> Result<(Vec<u32>, Vec<u16>, Vec<Vec<u8>>)> {
    let n = table.num_positive;
    let identity: Vec<u32> = (0..n as u32).map(|r| r << 1).collect();
    let mut perms: Vec<Vec<u32>> = vec![identity.clone()];
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut lengths = vec![0u16];
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut right: Vec<u32> = Vec::new();

    let mut head = 0usize;
    while head < perms.len() {
        for s in 0..rank {
            let ws = compose(&perms[head], &table.generator_action[s]);
            let next = match index.get(&ws) {
                Some(&i) => i,
                None => {
                    if perms.len() >= cap {
                        return Err(Error::BudgetExceeded {
                            what: "group enumeration".into(),
                            needed: perms.len() + 1,
                            cap,
                        });
                    }
                    let i = perms.len() as u32;
                    index.insert(ws.clone(), i);
                    lengths.push(lengths[head] + 1);
                    let mut word = words[head].clone();
                    word.push(s as u8);
                    words.push(word);
                    perms.push(ws);
                    i
                }
            };
            right.push(next);
        }
        head += 1;
    }
    Ok((right, lengths, words))
}

/// (w s)(r) = w(s(r)): look the root up through s, then through w, xor signs.
fn compose(w: &[u32], s: &[u32]) -> Vec<u32> {
    s.iter().map(|&img| w[(img >> 1) as usize] ^ (img & 1)).collect()
}

impl CoxeterGroup {
    fn fill_derived_tables(&mut self) {
        let size = self.size;
        let rank = self.rank;

        let mut inv = vec![0u32; size];
        for w in 0..size {
            let mut acc = 0u32;
            for &s in self.words[w].iter().rev() {
                acc = self.right[acc as usize * rank + s as usize];
            }
            inv[w] = acc;
        }
        self.inv = inv;

        let mut rdesc = vec![0 as Mask; size];
        for w in 0..size {
            for s in 0..rank {
                let ws = self.right[w * rank + s] as usize;
                if self.lengths[ws] < self.lengths[w] {
                    rdesc[w] |= 1 << s;
                }
            }
        }
        self.ldesc = (0..size).map(|w| rdesc[self.inv[w] as usize]).collect();
        self.rdesc = rdesc;

        let mut cgen = vec![0u32; size * rank];
        for w in 0..size {
            for j in 0..rank {
                let mut t = self.right[self.inv[w] as usize * rank + j];
                for &s in &self.words[w] {
                    t = self.right[t as usize * rank + s as usize];
                }
                cgen[w * rank + j] = t;
            }
        }
        self.cgen = cgen;
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn length(&self, w: u32) -> usize {
        self.lengths[w as usize] as usize
    }

    pub fn right_mul_gen(&self, w: u32, s: usize) -> u32 {
        self.right[w as usize * self.rank + s]
    }

    pub fn generator(&self, s: usize) -> u32 {
        self.right_mul_gen(0, s)
    }

    pub fn inverse(&self, w: u32) -> u32 {
        self.inv[w as usize]
    }

    pub fn word(&self, w: u32) -> &[u8] {
        &self.words[w as usize]
    }

    pub fn mul(&self, u: u32, v: u32) -> u32 {
        let mut acc = u;
        for &s in &self.words[v as usize] {
            acc = self.right_mul_gen(acc, s as usize);
        }
        acc
    }

    pub fn longest_element(&self) -> u32 {
        (0..self.size as u32)
            .max_by_key(|&w| self.lengths[w as usize])
            .unwrap()
    }

    pub fn right_descent_mask(&self, w: u32) -> Mask {
        self.rdesc[w as usize]
    }

    pub fn left_descent_mask(&self, w: u32) -> Mask {
        self.ldesc[w as usize]
    }

    /// w^{-1} s_j w as a group element.
    pub fn conjugated_generator(&self, w: u32, j: usize) -> u32 {
        self.cgen[w as usize * self.rank + j]
    }

    /// Count of elements at each length; index = length.
    pub fn length_histogram(&self) -> Vec<usize> {
        let max = self.lengths.iter().copied().max().unwrap_or(0) as usize;
        let mut hist = vec![0usize; max + 1];
        for &l in &self.lengths {
            hist[l as usize] += 1;
        }
        hist
    }

    /// Minimal-length left coset representatives of W_J: no right descent
    /// inside J.
    pub fn min_coset_reps(&self, j_mask: Mask) -> Vec<u32> {
        (0..self.size as u32)
            .filter(|&w| self.rdesc[w as usize] & j_mask == 0)
            .collect()
    }

    /// Minimal representative of the coset u W_J.
    pub fn coset_min_rep(&self, mut u: u32, j_mask: Mask) -> u32 {
        loop {
            let desc = self.rdesc[u as usize] & j_mask;
            if desc == 0 {
                return u;
            }
            let s = desc.trailing_zeros() as usize;
            u = self.right_mul_gen(u, s);
        }
    }

    /// Elements of the parabolic subgroup W_J, by closure over J-generators.
    pub fn parabolic_elements(&self, j_mask: Mask) -> Vec<u32> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut head = 0;
        while head < out.len() {
            let w = out[head];
            head += 1;
            for s in 0..self.rank {
                if j_mask & (1 << s) == 0 {
                    continue;
                }
                let ws = self.right_mul_gen(w, s);
                if !seen[ws as usize] {
                    seen[ws as usize] = true;
                    out.push(ws);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Minimal double coset representatives X_JK = X_J^{-1} n X_K, each
    /// paired with the mask {s in K : s = w^{-1} j w for some j in J}.
    pub fn double_coset_reps(&self, j_mask: Mask, k_mask: Mask) -> Vec<(u32, Mask)> {
        let mut out = Vec::new();
        for w in 0..self.size as u32 {
            if self.ldesc[w as usize] & j_mask != 0 || self.rdesc[w as usize] & k_mask != 0 {
                continue;
            }
            out.push((w, self.cross_section_mask(w, j_mask, k_mask)));
        }
        out
    }

    /// The subset w^{-1} J w n K of the simple generators.
    pub fn cross_section_mask(&self, w: u32, j_mask: Mask, k_mask: Mask) -> Mask {
        let mut mask = 0 as Mask;
        for j in 0..self.rank {
            if j_mask & (1 << j) == 0 {
                continue;
            }
            let c = self.conjugated_generator(w, j);
            if self.lengths[c as usize] == 1 {
                let s = self.words[c as usize][0] as usize;
                if k_mask & (1 << s) != 0 {
                    mask |= 1 << s;
                }
            }
        }
        mask
    }

    /// The image {w s_j w^{-1} : j in J} when it lies inside the simple
    /// generators, as a mask; None when any conjugate leaves S.
    pub fn conjugate_subset(&self, w: u32, j_mask: Mask) -> Option<Mask> {
        // ^w J computed through the w^{-1} table of the inverse element.
        let wi = self.inv[w as usize];
        let mut mask = 0 as Mask;
        for j in 0..self.rank {
            if j_mask & (1 << j) == 0 {
                continue;
            }
            let c = self.conjugated_generator(wi, j);
            if self.lengths[c as usize] != 1 {
                return None;
            }
            mask |= 1 << self.words[c as usize][0];
        }
        Some(mask)
    }

    /// Product of the generators of J in ascending index order.
    pub fn coxeter_element(&self, j_mask: Mask) -> u32 {
        let mut acc = 0u32;
        for s in 0..self.rank {
            if j_mask & (1 << s) != 0 {
                acc = self.right_mul_gen(acc, s);
            }
        }
        acc
    }

    /// Conjugacy class of an element, by closure under generator conjugation.
    pub fn conjugacy_class(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.size];
        seen[x as usize] = true;
        let mut out = vec![x];
        let mut head = 0;
        while head < out.len() {
            let y = out[head];
            head += 1;
            for s in 0..self.rank {
                let sy = self.left_mul_gen(y, s);
                let sys = self.right_mul_gen(sy, s);
                if !seen[sys as usize] {
                    seen[sys as usize] = true;
                    out.push(sys);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn left_mul_gen(&self, w: u32, s: usize) -> u32 {
        // s w = (w^{-1} s)^{-1}
        self.inv[self.right_mul_gen(self.inv[w as usize], s) as usize]
    }

    /// Poincare polynomial coefficients (the length histogram) of a
    /// parabolic subgroup.
    pub fn parabolic_histogram(&self, j_mask: Mask) -> Vec<usize> {
        let elems = self.parabolic_elements(j_mask);
        let max = elems
            .iter()
            .map(|&w| self.lengths[w as usize])
            .max()
            .unwrap_or(0) as usize;
        let mut hist = vec![0usize; max + 1];
        for &w in &elems {
            hist[self.lengths[w as usize] as usize] += 1;
        }
        hist
    }
}
