use super::GroupoidError;

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupoidError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupoidError::Empty);
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupoidError::Shape);
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(GroupoidError::NoIdentity(names[a].clone()));
            }
            if !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0) {
                return Err(GroupoidError::NoInverse(names[a].clone()));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupoidError::NotAssociative(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).renamed(&["1"])
    }

    /// `Z/m` with elements named `0..m-1`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let names = (0..m).map(|k| k.to_string()).collect();
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        FiniteGroup { names, table }
    }

    /// `(Z/2)^2` with elements named `1, i, j, k`.
    pub fn klein() -> Self {
        // bit encoding: 1 = 00, i = 01, j = 10, k = 11; product is xor
        let names = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        FiniteGroup { names, table }
    }

    /// The symmetric group on three letters (non-abelian test case).
    pub fn symmetric3() -> Self {
        // permutations of {0,1,2} in one-line notation
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let names = ["id", "(12)", "(23)", "(13)", "(123)", "(132)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup { names, table }
    }

    fn renamed(mut self, names: &[&str]) -> Self {
        self.names = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, h: usize) -> &str {
        &self.names[h]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name.trim())
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Parses `"trivial"`, `"klein"`, `"s3"` or `"cyclic:m"`.
    pub fn by_name(spec: &str) -> Option<Self> {
        let spec = spec.trim();
        match spec {
            "trivial" => Some(Self::trivial()),
            "klein" => Some(Self::klein()),
            "s3" => Some(Self::symmetric3()),
            _ => {
                let m: usize = spec.strip_prefix("cyclic:")?.parse().ok()?;
                (m >= 1).then(|| Self::cyclic(m))
            }
        }
    }
}
