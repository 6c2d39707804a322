use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::Matrix;

/// A finite group given by its multiplication table. Element `a * b` is
/// `table[a * order + b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    factors: Option<(Arc<FiniteGroup>, Arc<FiniteGroup>)>,
    name: String,
}

impl FiniteGroup {
    /// Validates the table (closure, identity, inverses, associativity on
    /// generators) and that `generators` generate.
    pub fn from_table(order: usize, table: Vec<u32>, generators: Vec<usize>, name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGroup(format!("{name}: malformed table")));
        }
        let m = |a: usize, b: usize| table[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup(format!("{name}: no identity")))?;
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("{name}: element {a} has no inverse")))?;
        }
        let g = FiniteGroup {
            order,
            table,
            identity,
            inverses,
            generators,
            factors: None,
            name,
        };
        // Light's test: associativity on generators implies it everywhere
        for &s in &g.generators {
            if s >= order {
                return Err(Error::InvalidGroup(format!("{}: bad generator {s}", g.name)));
            }
            for x in 0..order {
                for y in 0..order {
                    if g.mul(g.mul(x, s), y) != g.mul(x, g.mul(s, y)) {
                        return Err(Error::InvalidGroup(format!("{}: not associative", g.name)));
                    }
                }
            }
        }
        if g.closure(&g.generators).len() != order {
            return Err(Error::InvalidGroup(format!("{}: generators do not generate", g.name)));
        }
        Ok(g)
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(1, vec![0], vec![], "1").unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup::from_table(n, table, gens, format!("C{n}")).unwrap()
    }

    /// The group formed by a product-closed list of invertible matrices, with
    /// greedily chosen generators.
    pub fn from_matrices(elements: &[Matrix], name: impl Into<String>) -> Result<Self> {
        let index: HashMap<&Matrix, usize> = elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let ab = a.mul(b);
                let &i = index
                    .get(&ab)
                    .ok_or_else(|| Error::InvalidGroup("matrix set not closed under product".into()))?;
                table.push(i as u32);
            }
        }
        let name = name.into();
        let gens = greedy_on_table(n, &table)
            .ok_or_else(|| Error::InvalidGroup(format!("{name}: no identity")))?;
        FiniteGroup::from_table(n, table, gens, name)
    }

    /// `A x B`; element `(a, b)` has index `a * |B| + b`. Generators are those
    /// of `A` (paired with 1) followed by those of `B`.
    pub fn product(a: Arc<FiniteGroup>, b: Arc<FiniteGroup>) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table.push((a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32);
            }
        }
        let mut gens: Vec<usize> = a.generators.iter().map(|&g| g * nb + b.identity).collect();
        gens.extend(b.generators.iter().map(|&g| a.identity * nb + g));
        let mut g = FiniteGroup::from_table(n, table, gens, format!("{} x {}", a.name, b.name))
            .expect("product of groups is a group");
        g.factors = Some((a, b));
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn factors(&self) -> Option<(&Arc<FiniteGroup>, &Arc<FiniteGroup>)> {
        self.factors.as_ref().map(|(a, b)| (a, b))
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// Scans elements in index order, keeping each one not already in the
    /// subgroup generated by those kept.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![self.identity];
        for x in 0..self.order {
            if sub.binary_search(&x).is_err() {
                gens.push(x);
                sub = self.closure(&gens);
            }
        }
        gens
    }

    pub fn with_generators(mut self, generators: Vec<usize>) -> Result<Self> {
        if self.closure(&generators).len() != self.order {
            return Err(Error::InvalidGroup(format!("{}: generators do not generate", self.name)));
        }
        self.generators = generators;
        Ok(self)
    }

    /// Expresses every element as a word in the generators (BFS order):
    /// `words[x] = (y, g)` with `x = y * generators[g]`, identity maps to itself.
    pub fn spanning_tree(&self) -> Vec<Option<(usize, usize)>> {
        let mut parent = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = std::collections::VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, gi));
                    queue.push_back(y);
                }
            }
        }
        parent
    }
}

fn greedy_on_table(n: usize, table: &[u32]) -> Option<Vec<usize>> {
    let m = |a: usize, b: usize| table[a * n + b] as usize;
    let e = (0..n).find(|&e| (0..n).all(|a| m(e, a) == a))?;
    let mut seen = vec![false; n];
    seen[e] = true;
    let mut members = vec![e];
    let mut gens = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        gens.push(x);
        // re-close under right multiplication by all generators
        let mut stack = members.clone();
        while let Some(y) = stack.pop() {
            for &g in &gens {
                let z = m(y, g);
                if !seen[z] {
                    seen[z] = true;
                    members.push(z);
                    stack.push(z);
                }
            }
        }
    }
    Some(gens)
}

/// The symmetric group on `0..n`. Permutations are listed lexicographically
/// (as image vectors), composed as `(s t)(i) = s(t(i))`; generators are the
/// adjacent transpositions `(i, i+1)`.
#[derive(Clone, Debug)]
pub struct SymmetricGroup {
    n: usize,
    group: Arc<FiniteGroup>,
    perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Self {
        let mut perms = vec![(0..n).collect::<Vec<_>>()];
        loop {
            let mut p = perms.last().unwrap().clone();
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
            p.swap(i - 1, j);
            p[i..].reverse();
            perms.push(p);
        }
        let index: HashMap<Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        for s in &perms {
            for t in &perms {
                let st: Vec<usize> = t.iter().map(|&x| s[x]).collect();
                table.push(index[&st] as u32);
            }
        }
        let gens = (0..n.saturating_sub(1))
            .map(|i| {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(i, i + 1);
                index[&p]
            })
            .collect();
        let group = FiniteGroup::from_table(order, table, gens, format!("S{n}")).expect("symmetric group");
        SymmetricGroup {
            n,
            group: Arc::new(group),
            perms,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn perm(&self, i: usize) -> &[usize] {
        &self.perms[i]
    }
    pub fn index_of(&self, p: &[usize]) -> usize {
        self.index[p]
    }

    pub fn sign(&self, i: usize) -> i8 {
        let p = &self.perms[i];
        let mut seen = vec![false; self.n];
        let mut parity = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
                len += 1;
            }
            parity += len - 1;
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }
}
