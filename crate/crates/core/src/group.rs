//! Finite groups given by Cayley tables, and brute-force automorphism search.

use serde::Serialize;

use crate::error::{Error, Result};

/// Multiplication table of a finite group; `table[a][b]` is the index of `ab`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CayleyTable {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyTable {
    /// Validates the table (Latin square, identity, associativity, inverses).
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidGroupTable(format!(
                "{} labels for a table of order {n}",
                labels.len()
            )));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroupTable(format!("row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroupTable(format!("entry {bad} out of range in row {a}")));
            }
        }
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut seen_row[table[a][b]], true) {
                    return Err(Error::InvalidGroupTable(format!("row {a} is not a permutation")));
                }
                if std::mem::replace(&mut seen_col[table[b][a]], true) {
                    return Err(Error::InvalidGroupTable(format!("column {a} is not a permutation")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable(format!(
                            "not associative: ({a}{b}){c} != {a}({b}{c})"
                        )));
                    }
                }
            }
        }
        // Latin square plus identity guarantees a two-sided inverse once
        // associativity holds.
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("Latin square"))
            .collect();
        Ok(CayleyTable {
            labels,
            table,
            identity,
            inverses,
        })
    }

    /// ℤ/n with elements `0 … n-1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let labels = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        CayleyTable::new(labels, table).expect("cyclic table is a group")
    }

    /// The symmetric group on three letters. Elements are the permutations
    /// of `{1,2,3}` in lexicographic order of their one-line notation,
    /// composed as functions: `(gh)(x) = g(h(x))`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let labels = vec!["e", "(23)", "(12)", "(123)", "(132)", "(13)"]
            .into_iter()
            .map(String::from)
            .collect();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|g| {
                perms
                    .iter()
                    .map(|h| index([g[h[0]], g[h[1]], g[h[2]]]))
                    .collect()
            })
            .collect();
        CayleyTable::new(labels, table).expect("S3 table is a group")
    }

    /// Presets: `z1` … `z6` (cyclic) and `s3`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "s3" => Ok(Self::symmetric3()),
            _ => match name.strip_prefix('z').and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if (1..=6).contains(&k) => Ok(Self::cyclic(k)),
                _ => Err(Error::UnknownPreset(name.to_string())),
            },
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// All automorphisms of the group as index permutations (`image[a]` is the
/// image of `a`), in lexicographic order of the image vectors. The first
/// entry is always the identity map.
pub fn enumerate_group_automorphisms(g: &CayleyTable) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let mut found = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[g.identity()] = g.identity();
    used[g.identity()] = true;
    let order: Vec<usize> = (0..n).filter(|&a| a != g.identity()).collect();
    search(g, &order, 0, &mut image, &mut used, &mut found);
    found.sort();
    Ok(found)
}

fn consistent(g: &CayleyTable, image: &[usize], a: usize) -> bool {
    // Every product among assigned elements involving `a` must be preserved
    // whenever the product itself is assigned.
    let n = g.order();
    for b in 0..n {
        if image[b] == usize::MAX {
            continue;
        }
        for (x, y) in [(a, b), (b, a)] {
            let xy = g.mul(x, y);
            if image[xy] != usize::MAX && image[xy] != g.mul(image[x], image[y]) {
                return false;
            }
        }
    }
    true
}

fn search(
    g: &CayleyTable,
    order: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    if depth == order.len() {
        found.push(image.clone());
        return;
    }
    let a = order[depth];
    for candidate in 0..g.order() {
        if used[candidate] {
            continue;
        }
        image[a] = candidate;
        used[candidate] = true;
        if consistent(g, image, a) {
            search(g, order, depth + 1, image, used, found);
        }
        used[candidate] = false;
        image[a] = usize::MAX;
    }
}
