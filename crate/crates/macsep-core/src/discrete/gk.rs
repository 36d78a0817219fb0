//! Gács-Körner common part of a pair of discrete sources.
//!
//! The maximal common random variable is the connected-component labeling
//! of the bipartite support graph on S1 ⊔ S2: any pair of functions that
//! agree almost surely must be constant on each component, and the
//! component labeling itself is such a pair, so it is the finest one.

use crate::discrete::info;
use crate::discrete::pmf::PairPmf;

/// Disjoint-set forest with path halving and union by size.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Common-part labeling of both alphabets and its entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct GacsKornerResult {
    /// Component label per S1 symbol, compact and in first-encounter order
    /// (S1 symbols scanned first, then S2).
    pub f1: Vec<usize>,
    /// Component label per S2 symbol.
    pub f2: Vec<usize>,
    /// Probability mass of each component.
    pub component_mass: Vec<f64>,
    /// Entropy of the component distribution, in bits.
    pub c_gk: f64,
}

/// Extracts the Gács-Körner common part of a pair pmf read as (S1, S2).
///
/// Symbols with zero marginal probability touch no support edge; they are
/// assigned label 0 by convention and carry no mass.
pub fn gacs_korner(pair: &PairPmf) -> GacsKornerResult {
    let (n1, n2) = (pair.nx(), pair.ny());
    let mut dsu = Dsu::new(n1 + n2);
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            if pair.get(s1, s2) > 0.0 {
                dsu.union(s1, n1 + s2);
            }
        }
    }
    let m1 = pair.marginal_x();
    let m2 = pair.marginal_y();
    let mut label_of_root: Vec<Option<usize>> = vec![None; n1 + n2];
    let mut next = 0;
    let mut assign = |dsu: &mut Dsu, node: usize, mass: f64| -> usize {
        if mass <= 0.0 {
            return 0;
        }
        let root = dsu.find(node);
        *label_of_root[root].get_or_insert_with(|| {
            let l = next;
            next += 1;
            l
        })
    };
    let f1: Vec<usize> = (0..n1).map(|s1| assign(&mut dsu, s1, m1[s1])).collect();
    let f2: Vec<usize> = (0..n2)
        .map(|s2| assign(&mut dsu, n1 + s2, m2[s2]))
        .collect();
    let n_components = next.max(1);
    let mut component_mass = vec![0.0; n_components];
    for (s1, &mass) in m1.iter().enumerate() {
        if mass > 0.0 {
            component_mass[f1[s1]] += mass;
        }
    }
    let c_gk = info::entropy(&component_mass).expect("component masses form a pmf");
    GacsKornerResult {
        f1,
        f2,
        component_mass,
        c_gk,
    }
}
