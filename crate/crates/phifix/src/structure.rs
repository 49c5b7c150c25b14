//! Subgroup computations: closures, center, derived and Frattini subgroups,
//! omega-1 layers, centralizers and minimal generator counts.
//!
//! Subgroups are stored as explicit sorted element lists (membership by
//! binary search) together with a small generating set. Group orders stay
//! at desk scale, so the explicit representation is the right trade-off:
//! automorphism enumeration needs fast membership tests anyway.

use std::collections::HashSet;

use thiserror::Error;

use crate::group::{Elem, FamilyGroup};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("omega-1 is only defined here on abelian subgroups")]
    NonAbelian,
    #[error("{{aΦ(G), bΦ(G)}} is not a basis of G/Φ(G); the engine is corrupt")]
    BasisFailure,
}

/// A subgroup given by its sorted element list and a generating set.
#[derive(Debug, Clone)]
pub struct SubgroupSet<'g> {
    group: &'g FamilyGroup,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
}

impl<'g> SubgroupSet<'g> {
    pub fn group(&self) -> &'g FamilyGroup {
        self.group
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubgroupSet<'_>) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn set_eq(&self, other: &SubgroupSet<'_>) -> bool {
        self.elements == other.elements
    }

    /// A subgroup is abelian iff its generators commute pairwise.
    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&x| {
            self.generators
                .iter()
                .all(|&y| self.group.commutator(x, y).is_identity())
        })
    }

    /// Normality in the parent: conjugating every element by both parent
    /// generators stays inside the subgroup.
    pub fn is_normal(&self) -> bool {
        let g = self.group;
        self.elements.iter().all(|&x| {
            self.contains(g.conjugate(x, g.gen_a())) && self.contains(g.conjugate(x, g.gen_b()))
        })
    }

    /// Intersection with another subgroup of the same parent.
    pub fn intersect(&self, other: &SubgroupSet<'g>) -> SubgroupSet<'g> {
        let elements: Vec<Elem> = self
            .elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        from_sorted_elements(self.group, elements)
    }
}

/// Smallest subgroup containing `gens`; deterministic element order.
pub fn closure<'g>(group: &'g FamilyGroup, gens: &[Elem]) -> SubgroupSet<'g> {
    let mut seen: HashSet<Elem> = HashSet::new();
    seen.insert(group.identity());
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = group.mul(x, s);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    let mut elements: Vec<Elem> = seen.into_iter().collect();
    elements.sort_unstable();
    SubgroupSet {
        group,
        elements,
        generators: if gens.is_empty() {
            vec![group.identity()]
        } else {
            gens.to_vec()
        },
    }
}

/// Builds a subgroup from a closed, sorted element list, choosing a small
/// generating set greedily.
fn from_sorted_elements<'g>(group: &'g FamilyGroup, elements: Vec<Elem>) -> SubgroupSet<'g> {
    debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
    let mut generators: Vec<Elem> = Vec::new();
    let mut reached = closure(group, &generators);
    for &x in &elements {
        if !reached.contains(x) {
            generators.push(x);
            reached = closure(group, &generators);
            if reached.order() as usize == elements.len() {
                break;
            }
        }
    }
    if generators.is_empty() {
        generators.push(group.identity());
    }
    SubgroupSet {
        group,
        elements,
        generators,
    }
}

fn filter_subgroup<'g>(
    group: &'g FamilyGroup,
    mut keep: impl FnMut(Elem) -> bool,
) -> SubgroupSet<'g> {
    let elements: Vec<Elem> = group.elements().filter(|&x| keep(x)).collect();
    from_sorted_elements(group, elements)
}

/// Z(G): elements commuting with both generators (hence with everything).
pub fn center(group: &FamilyGroup) -> SubgroupSet<'_> {
    let (a, b) = (group.gen_a(), group.gen_b());
    filter_subgroup(group, |x| {
        group.commutator(x, a).is_identity() && group.commutator(x, b).is_identity()
    })
}

/// G' = <[a, b]>.
pub fn derived_subgroup(group: &FamilyGroup) -> SubgroupSet<'_> {
    closure(group, &[group.commutator(group.gen_a(), group.gen_b())])
}

/// The Frattini subgroup of a finite 2-group: the closure of all squares and
/// all commutators (here the single commutator generator suffices).
pub fn frattini(group: &FamilyGroup) -> SubgroupSet<'_> {
    let mut gens: Vec<Elem> = group.elements().map(|x| group.mul(x, x)).collect();
    gens.push(group.gen_c());
    gens.sort_unstable();
    gens.dedup();
    let set = closure(group, &gens);
    // Re-derive a small generating set for reporting.
    from_sorted_elements(group, set.elements.clone())
}

/// Center of a subgroup viewed as a group in its own right: the elements of
/// `sub` commuting with every generator of `sub`.
pub fn subgroup_center<'g>(sub: &SubgroupSet<'g>) -> SubgroupSet<'g> {
    let group = sub.group();
    let elements: Vec<Elem> = sub
        .elements()
        .iter()
        .copied()
        .filter(|&x| {
            sub.generators()
                .iter()
                .all(|&s| group.commutator(x, s).is_identity())
        })
        .collect();
    from_sorted_elements(group, elements)
}

/// Omega-1 of an abelian subgroup: the elements of order dividing 2.
pub fn omega1<'g>(sub: &SubgroupSet<'g>) -> Result<SubgroupSet<'g>, StructureError> {
    if !sub.is_abelian() {
        return Err(StructureError::NonAbelian);
    }
    let group = sub.group();
    let elements: Vec<Elem> = sub
        .elements()
        .iter()
        .copied()
        .filter(|&x| group.mul(x, x).is_identity())
        .collect();
    Ok(from_sorted_elements(group, elements))
}

/// C_G(S): elements commuting with every generator of `S`.
pub fn centralizer<'g>(group: &'g FamilyGroup, sub: &SubgroupSet<'_>) -> SubgroupSet<'g> {
    filter_subgroup(group, |x| {
        sub.generators()
            .iter()
            .all(|&s| group.commutator(x, s).is_identity())
    })
}

/// True iff some element of the subgroup has order equal to the subgroup order.
pub fn is_cyclic(sub: &SubgroupSet<'_>) -> bool {
    let group = sub.group();
    sub.elements()
        .iter()
        .any(|&x| group.element_order(x) == sub.order())
}

/// d(G) = log2(|G| / |Φ(G)|), the minimum number of generators.
pub fn min_generator_count(group: &FamilyGroup) -> u32 {
    let phi = frattini(group);
    index_log2(group.order(), phi.order())
}

/// d(H) for a subgroup viewed as a group in its own right; its Frattini
/// subgroup is the closure of its squares and generator commutators.
pub fn subgroup_min_generator_count(sub: &SubgroupSet<'_>) -> u32 {
    if sub.order() == 1 {
        return 0;
    }
    let group = sub.group();
    let mut gens: Vec<Elem> = sub.elements().iter().map(|&x| group.mul(x, x)).collect();
    for &x in sub.generators() {
        for &y in sub.generators() {
            gens.push(group.commutator(x, y));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let phi = closure(group, &gens);
    index_log2(sub.order(), phi.order())
}

fn index_log2(big: u64, small: u64) -> u32 {
    assert!(small > 0 && big % small == 0, "index must divide");
    let index = big / small;
    assert!(index.is_power_of_two(), "index must be a 2-power");
    index.trailing_zeros()
}

/// Expresses cosets of the Frattini subgroup in the basis `{aΦ, bΦ}`.
#[derive(Debug, Clone)]
pub struct FrattiniBasis<'g> {
    group: &'g FamilyGroup,
    frattini: SubgroupSet<'g>,
}

impl<'g> FrattiniBasis<'g> {
    /// Verifies at setup that `{aΦ, bΦ}` is a basis of `G/Φ(G)`.
    pub fn new(group: &'g FamilyGroup, frattini: SubgroupSet<'g>) -> Result<Self, StructureError> {
        let (a, b) = (group.gen_a(), group.gen_b());
        let ab = group.mul(a, b);
        if group.order() != 4 * frattini.order()
            || frattini.contains(a)
            || frattini.contains(b)
            || frattini.contains(ab)
        {
            return Err(StructureError::BasisFailure);
        }
        Ok(FrattiniBasis { group, frattini })
    }

    pub fn frattini(&self) -> &SubgroupSet<'g> {
        &self.frattini
    }

    /// Bits `(e1, e2)` with `g` in the coset `a^e1 b^e2 Φ(G)`, verified by
    /// membership of the representative quotient.
    pub fn bits(&self, g: Elem) -> Result<(u8, u8), StructureError> {
        let (e1, e2) = ((g.i & 1) as u8, (g.j & 1) as u8);
        let rep = self.group.mul(
            self.group.pow(self.group.gen_a(), e1 as i64),
            self.group.pow(self.group.gen_b(), e2 as i64),
        );
        if self.frattini.contains(self.group.mul(self.group.inv(rep), g)) {
            Ok((e1, e2))
        } else {
            Err(StructureError::BasisFailure)
        }
    }
}

/// Convenience wrapper building the basis on the fly.
pub fn frattini_quotient_bits(group: &FamilyGroup, g: Elem) -> Result<(u8, u8), StructureError> {
    let basis = FrattiniBasis::new(group, frattini(group))?;
    basis.bits(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;

    fn q1(n: u32, r: u32) -> FamilyGroup {
        FamilyGroup::new(Family::Q1, n, Some(r)).unwrap()
    }

    fn q2(n: u32, r: u32) -> FamilyGroup {
        FamilyGroup::new(Family::Q2, n, Some(r)).unwrap()
    }

    fn r3(n: u32) -> FamilyGroup {
        FamilyGroup::new(Family::R3, n, None).unwrap()
    }

    fn elem(i: i64, j: i64, k: i64) -> Elem {
        Elem { i, j, k }
    }

    /// Brute-force subgroup oracle: grow the set by multiplying all pairs
    /// until closed. Independent of the worklist closure.
    fn brute_closure(g: &FamilyGroup, gens: &[Elem]) -> Vec<Elem> {
        let mut set: Vec<Elem> = vec![g.identity()];
        set.extend_from_slice(gens);
        set.sort_unstable();
        set.dedup();
        loop {
            let mut next = set.clone();
            for &x in &set {
                for &y in &set {
                    next.push(g.mul(x, y));
                }
                next.push(g.inv(x));
            }
            next.sort_unstable();
            next.dedup();
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    #[test]
    fn closure_examples() {
        let g = q1(2, 1);
        assert_eq!(closure(&g, &[]).elements(), &[Elem::IDENTITY]);
        let a2 = closure(&g, &[elem(2, 0, 0)]);
        assert_eq!(a2.elements(), &[Elem::IDENTITY, elem(2, 0, 0)]);

        let g = q1(4, 2);
        let whole = closure(&g, &[g.gen_a(), g.gen_b()]);
        assert_eq!(whole.order(), 64);
        assert_eq!(whole.elements(), brute_closure(&g, &[g.gen_a(), g.gen_b()]));
    }

    #[test]
    fn center_examples() {
        let d8 = q1(2, 1);
        assert_eq!(center(&d8).elements(), &[Elem::IDENTITY, elem(2, 0, 0)]);

        let g = q1(4, 2);
        let z = center(&g);
        assert_eq!(z.order(), 4);
        assert!(z.set_eq(&closure(&g, &[g.pow(g.gen_a(), 4)])));
        // brute force: elements a^i b^j are central iff 2^r | i and j = 0
        for x in g.elements() {
            let central = g.elements().all(|y| g.commutator(x, y).is_identity());
            assert_eq!(z.contains(x), central);
        }

        let q8 = r3(1);
        assert_eq!(center(&q8).elements(), &[Elem::IDENTITY, elem(2, 0, 0)]);
    }

    #[test]
    fn derived_subgroup_examples() {
        let d8 = q1(2, 1);
        assert_eq!(derived_subgroup(&d8).elements(), &[Elem::IDENTITY, elem(2, 0, 0)]);

        let g = q1(4, 2);
        let d = derived_subgroup(&g);
        assert_eq!(d.order(), 4);
        assert!(d.set_eq(&closure(&g, &[g.pow(g.gen_a(), 4)])));

        assert_eq!(derived_subgroup(&q2(1, 1)).order(), 2);

        // all-pairs commutator oracle
        for g in [q1(3, 1), q2(3, 2), r3(2)] {
            let mut comms: Vec<Elem> = Vec::new();
            for x in g.elements() {
                for y in g.elements() {
                    comms.push(g.commutator(x, y));
                }
            }
            comms.sort_unstable();
            comms.dedup();
            let d = derived_subgroup(&g);
            assert_eq!(brute_closure(&g, &comms), d.elements());
            assert!(d.set_eq(&closure(&g, &[g.gen_c()])));
        }
    }

    #[test]
    fn frattini_examples() {
        let d8 = q1(2, 1);
        assert_eq!(frattini(&d8).elements(), &[Elem::IDENTITY, elem(2, 0, 0)]);

        let g = q1(4, 2);
        let phi = frattini(&g);
        assert_eq!(phi.order(), 16);
        assert_eq!(min_generator_count(&g), 2);

        let g = r3(2);
        assert_eq!(frattini(&g).order(), 16);

        // Φ equals <a^2, b^2, c> on every small group
        for g in [q1(3, 1), q1(6, 3), q2(3, 2), q2(2, 2), r3(2)] {
            let phi = frattini(&g);
            let gens = closure(
                &g,
                &[
                    g.mul(g.gen_a(), g.gen_a()),
                    g.mul(g.gen_b(), g.gen_b()),
                    g.gen_c(),
                ],
            );
            assert!(phi.set_eq(&gens));
        }
    }

    #[test]
    fn omega1_examples() {
        let trivial = closure(&q1(2, 1), &[]);
        let g = q1(2, 1);
        let om = omega1(&closure(&g, &[])).unwrap();
        assert_eq!(om.elements(), trivial.elements());

        let g = q1(4, 2);
        let z = center(&g);
        let om = omega1(&z).unwrap();
        assert_eq!(om.order(), 2);
        assert_eq!(om.elements(), &[Elem::IDENTITY, elem(8, 0, 0)]);

        let g = q1(3, 1);
        let om = omega1(&center(&g)).unwrap();
        assert_eq!(om.elements(), &[Elem::IDENTITY, elem(4, 0, 0)]);

        // non-abelian input is a misuse signal
        let g = q1(4, 2);
        let whole = closure(&g, &[g.gen_a(), g.gen_b()]);
        assert_eq!(omega1(&whole).unwrap_err(), StructureError::NonAbelian);
    }

    #[test]
    fn centralizer_examples() {
        let g = q1(2, 1);
        let trivial = closure(&g, &[]);
        assert_eq!(centralizer(&g, &trivial).order(), g.order());
        let phi = frattini(&g);
        assert_eq!(centralizer(&g, &phi).order(), g.order());

        let g = q1(6, 3);
        let phi = frattini(&g);
        let zphi = subgroup_center(&phi);
        let cent = centralizer(&g, &zphi);
        assert!(cent.set_eq(&phi));

        // generator-based centralizer agrees with the all-elements version
        for g in [q1(3, 1), q2(3, 2), r3(2)] {
            let phi = frattini(&g);
            let by_gens = centralizer(&g, &phi);
            let by_all: Vec<Elem> = g
                .elements()
                .filter(|&x| {
                    phi.elements()
                        .iter()
                        .all(|&s| g.commutator(x, s).is_identity())
                })
                .collect();
            assert_eq!(by_gens.elements(), by_all);
        }
    }

    #[test]
    fn cyclicity_examples() {
        let g = q1(4, 2);
        assert!(is_cyclic(&closure(&g, &[])));
        assert!(is_cyclic(&center(&g)));
        // Φ(Q1(4,2)) contains <a^2> x <b^2>, not cyclic
        assert!(!is_cyclic(&frattini(&g)));
    }

    #[test]
    fn generator_count_examples() {
        assert_eq!(min_generator_count(&q1(2, 1)), 2);
        assert_eq!(min_generator_count(&q2(3, 2)), 2);
        assert_eq!(min_generator_count(&r3(3)), 2);
        // subgroup ranks
        let g = q1(4, 2);
        assert_eq!(subgroup_min_generator_count(&center(&g)), 1);
        assert_eq!(subgroup_min_generator_count(&frattini(&g)), 2);
        assert_eq!(subgroup_min_generator_count(&closure(&g, &[])), 0);
    }

    #[test]
    fn frattini_quotient_bits_examples() {
        let g = q1(2, 1);
        assert_eq!(frattini_quotient_bits(&g, g.identity()).unwrap(), (0, 0));
        let ab = g.mul(g.gen_a(), g.gen_b());
        assert_eq!(frattini_quotient_bits(&g, ab).unwrap(), (1, 1));
        // a^3 b = a b a^2 and a^2 lies in Φ
        assert_eq!(frattini_quotient_bits(&g, elem(3, 1, 0)).unwrap(), (1, 1));

        // every element decomposes consistently
        let g = r3(2);
        let basis = FrattiniBasis::new(&g, frattini(&g)).unwrap();
        for x in g.elements() {
            let (e1, e2) = basis.bits(x).unwrap();
            assert_eq!((e1, e2), ((x.i & 1) as u8, (x.j & 1) as u8));
        }
    }

    #[test]
    fn lagrange_and_intersections() {
        for g in [q1(3, 1), q2(3, 2), r3(2)] {
            let subs = [
                center(&g),
                derived_subgroup(&g),
                frattini(&g),
                closure(&g, &[g.gen_b()]),
            ];
            for s in &subs {
                assert_eq!(g.order() % s.order(), 0, "Lagrange violated");
            }
            let inter = subs[0].intersect(&subs[2]);
            assert!(inter.is_subset_of(&subs[0]) && inter.is_subset_of(&subs[2]));
        }
    }

    #[test]
    fn normality_checks() {
        let g = q1(2, 1);
        assert!(closure(&g, &[g.gen_a()]).is_normal());
        assert!(center(&g).is_normal());
        // <b> has index 4 in D8 and is not normal
        assert!(!closure(&g, &[g.gen_b()]).is_normal());
    }
}
