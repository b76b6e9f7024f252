//! Breadth-first closure of finitely generated groups of Segre maps.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use super::map::SegreMap;
use crate::algorithm::{sorted_multiset, BilinearAlgorithm, ExtendedAlgorithm};
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::tensor::{DenseTensor, FactorShape};

pub const DEFAULT_CAP: usize = 10_000;

/// All elements of the group generated by `generators`, each with a word
/// `w` such that the element equals `gens[w[0]] ∘ gens[w[1]] ∘ …`.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    shape: FactorShape,
    generators: Vec<SegreMap>,
    elements: Vec<SegreMap>,
    words: Vec<Vec<usize>>,
    canonical: Vec<ExactMatrix>,
    index: HashMap<ExactMatrix, usize>,
}

fn common_shape(gens: &[SegreMap]) -> Result<FactorShape> {
    let Some(first) = gens.first() else {
        return Err(Error::input("no generators"));
    };
    if gens.iter().any(|g| g.shape() != first.shape()) {
        return Err(Error::dim("generators act on different shapes"));
    }
    Ok(first.shape().clone())
}

impl GroupClosure {
    fn start(shape: FactorShape, generators: Vec<SegreMap>) -> Self {
        let id = SegreMap::identity(shape.clone());
        let key = id.induced_matrix();
        Self {
            shape,
            generators,
            elements: vec![id],
            words: vec![Vec::new()],
            canonical: vec![key.clone()],
            index: HashMap::from([(key, 0)]),
        }
    }

    fn insert(&mut self, g: SegreMap, key: ExactMatrix, word: Vec<usize>, cap: usize) -> Result<bool> {
        if self.index.contains_key(&key) {
            return Ok(false);
        }
        if self.elements.len() >= cap {
            return Err(Error::ClosureCap { cap });
        }
        self.index.insert(key.clone(), self.elements.len());
        self.elements.push(g);
        self.words.push(word);
        self.canonical.push(key);
        Ok(true)
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[SegreMap] {
        &self.generators
    }

    pub fn elements(&self) -> &[SegreMap] {
        &self.elements
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn canonical_forms(&self) -> &[ExactMatrix] {
        &self.canonical
    }

    pub fn contains(&self, g: &SegreMap) -> bool {
        g.shape() == &self.shape && self.index.contains_key(&g.induced_matrix())
    }

    pub fn position(&self, g: &SegreMap) -> Option<usize> {
        self.index.get(&g.induced_matrix()).copied()
    }

    /// Order of each element, in element order.
    pub fn element_orders(&self) -> Vec<usize> {
        let limit = self.order() as u32;
        self.elements
            .iter()
            .map(|g| g.order(limit).expect("element order divides the group order") as usize)
            .collect()
    }

    /// `order ↦ number of elements of that order`.
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for o in self.element_orders() {
            *h.entry(o).or_insert(0) += 1;
        }
        h
    }

    /// Elements commuting with every generator.
    pub fn center_size(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| {
                self.generators.iter().all(|g| {
                    let ge = g.compose(e).expect("same shape");
                    let eg = e.compose(g).expect("same shape");
                    ge.induced_matrix() == eg.induced_matrix()
                })
            })
            .count()
    }

    /// Order of the commutator subgroup, computed as the normal closure of
    /// the generator commutators.
    pub fn derived_subgroup_order(&self) -> usize {
        let mut seeds = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                seeds.push(commutator(a, b));
            }
        }
        loop {
            let sub = close_from(self.shape.clone(), seeds.clone(), DEFAULT_CAP)
                .expect("subgroup of a finite group");
            let mut grew = false;
            'outer: for g in &self.generators {
                let g_inv = g.inverse();
                for h in &sub.elements {
                    let conj = g.compose(h).and_then(|x| x.compose(&g_inv)).expect("same shape");
                    if !sub.contains(&conj) {
                        seeds.push(conj);
                        grew = true;
                        break 'outer;
                    }
                }
            }
            if !grew {
                return sub.order();
            }
        }
    }

    pub fn abelianization_order(&self) -> usize {
        self.order() / self.derived_subgroup_order()
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &GroupClosure) -> bool {
        other.canonical.iter().all(|k| self.index.contains_key(k))
    }

    /// The element sets agree, regardless of discovery order.
    pub fn same_elements(&self, other: &GroupClosure) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }
}

/// `a b a⁻¹ b⁻¹`.
pub fn commutator(a: &SegreMap, b: &SegreMap) -> SegreMap {
    a.compose(b)
        .and_then(|x| x.compose(&a.inverse()))
        .and_then(|x| x.compose(&b.inverse()))
        .expect("same shape")
}

fn close_from(shape: FactorShape, gens: Vec<SegreMap>, cap: usize) -> Result<GroupClosure> {
    let mut group = GroupClosure::start(shape, gens);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..group.generators.len() {
            let g = group.generators[j].compose(&group.elements[i])?;
            let key = g.induced_matrix();
            let mut word = vec![j];
            word.extend_from_slice(&group.words[i]);
            if group.insert(g, key, word, cap)? {
                queue.push_back(group.elements.len() - 1);
            }
        }
    }
    Ok(group)
}

pub fn close_group(gens: &[SegreMap]) -> Result<GroupClosure> {
    close_group_with_cap(gens, DEFAULT_CAP)
}

/// Fails with [`Error::ClosureCap`] once more than `cap` elements are found.
pub fn close_group_with_cap(gens: &[SegreMap], cap: usize) -> Result<GroupClosure> {
    let shape = common_shape(gens)?;
    close_from(shape, gens.to_vec(), cap)
}

/// Level-by-level closure with the products of each frontier computed in
/// parallel. The element set equals that of [`close_group`].
pub fn close_group_parallel(gens: &[SegreMap], cap: usize) -> Result<GroupClosure> {
    let shape = common_shape(gens)?;
    let mut group = GroupClosure::start(shape, gens.to_vec());
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let products: Vec<(usize, usize, SegreMap, ExactMatrix)> = frontier
            .par_iter()
            .flat_map_iter(|&i| (0..gens.len()).map(move |j| (i, j)))
            .map(|(i, j)| {
                let g = gens[j].compose(&group.elements[i]).expect("same shape");
                let key = g.induced_matrix();
                (i, j, g, key)
            })
            .collect();
        let mut next = Vec::new();
        for (i, j, g, key) in products {
            let mut word = vec![j];
            word.extend_from_slice(&group.words[i]);
            if group.insert(g, key, word, cap)? {
                next.push(group.elements.len() - 1);
            }
        }
        frontier = next;
    }
    Ok(group)
}

/// Anything that can be viewed as a finite family of tensors.
pub trait TensorFamily {
    fn dense_members(&self) -> Vec<DenseTensor>;
}

impl TensorFamily for BilinearAlgorithm {
    fn dense_members(&self) -> Vec<DenseTensor> {
        self.terms().iter().map(|t| t.expand()).collect()
    }
}

impl TensorFamily for ExtendedAlgorithm {
    fn dense_members(&self) -> Vec<DenseTensor> {
        self.members().to_vec()
    }
}

impl TensorFamily for [DenseTensor] {
    fn dense_members(&self) -> Vec<DenseTensor> {
        self.to_vec()
    }
}

/// Whether `g` permutes the members as a multiset.
pub fn is_automorphism_of<F: TensorFamily + ?Sized>(g: &SegreMap, family: &F) -> Result<bool> {
    let members = family.dense_members();
    let images = members
        .iter()
        .map(|m| g.apply_dense(m))
        .collect::<Result<Vec<_>>>()?;
    Ok(sorted_multiset(images) == sorted_multiset(members))
}

/// Orbits of the group on `members`, as index lists sorted by first index.
/// Fails when some element maps a member outside the family.
pub fn orbits(group: &GroupClosure, members: &[DenseTensor]) -> Result<Vec<Vec<usize>>> {
    let lookup: HashMap<&[crate::exact::Rational], usize> = members
        .iter()
        .enumerate()
        .rev()
        .map(|(i, m)| (m.entries(), i))
        .collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (e, g) in group.elements().iter().enumerate() {
        for (i, m) in members.iter().enumerate() {
            let img = g.apply_dense(m)?;
            let hit = (img.shape() == m.shape())
                .then(|| lookup.get(img.entries()).copied())
                .flatten();
            let Some(j) = hit else {
                return Err(Error::NotInvariant { element: e, member: i });
            };
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..members.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    Ok(groups.into_values().collect())
}

/// Orbit sizes in ascending order.
pub fn orbit_sizes(orbits: &[Vec<usize>]) -> Vec<usize> {
    let mut s: Vec<usize> = orbits.iter().map(Vec::len).collect();
    s.sort_unstable();
    s
}

/// Distinct canonical forms; used to compare element sets in tests.
pub fn canonical_set(group: &GroupClosure) -> HashSet<ExactMatrix> {
    group.canonical.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segre::generators::*;

    #[test]
    fn cyclic_subgroup() {
        let g = close_group(&[a1()]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.center_size(), 3);
        assert_eq!(g.abelianization_order(), 3);
    }

    #[test]
    fn words_reproduce_elements() {
        let gens = generators_aut_s();
        let g = close_group(&gens[..2]).unwrap();
        assert_eq!(g.order(), 6);
        for (e, w) in g.elements().iter().zip(g.words()) {
            let mut acc = SegreMap::identity(g.shape().clone());
            for &j in w.iter().rev() {
                acc = gens[j].compose(&acc).unwrap();
            }
            assert!(acc.same_element(e));
        }
        assert_eq!(g.abelianization_order(), 2);
        assert_eq!(g.center_size(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            close_group_with_cap(&generators_aut_s(), 10),
            Err(Error::ClosureCap { cap: 10 })
        ));
        assert!(close_group(&[]).is_err());
    }

    #[test]
    fn parallel_closure_matches() {
        let gens = vec![b1(), b2(), a1()];
        let a = close_group(&gens).unwrap();
        let b = close_group_parallel(&gens, DEFAULT_CAP).unwrap();
        assert!(a.same_elements(&b));
        assert_eq!(canonical_set(&a), canonical_set(&b));
    }
}
