//! Matchings, weak stability, and construction/enumeration of stable
//! matchings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::instance::{Instance, Pair, PersonId, Side};

/// Default bound on `|A|` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// A set of pairs in which every man and every woman occurs at most once.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pairs: Vec<Pair>,
    by_man: BTreeMap<usize, usize>,
    by_woman: BTreeMap<usize, usize>,
}

impl Matching {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = Pair>) -> Result<Self> {
        let mut matching = Matching::default();
        for p in pairs {
            if matching.by_man.insert(p.man, p.woman).is_some() {
                return Err(Error::NotInjective { person: p.man_id() });
            }
            if matching.by_woman.insert(p.woman, p.man).is_some() {
                return Err(Error::NotInjective {
                    person: p.woman_id(),
                });
            }
        }
        matching.pairs = matching
            .by_man
            .iter()
            .map(|(&m, &w)| Pair::new(m, w))
            .collect();
        Ok(matching)
    }

    /// Pairs sorted by man index.
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.by_man.get(&pair.man) == Some(&pair.woman)
    }

    pub fn wife(&self, man: usize) -> Option<usize> {
        self.by_man.get(&man).copied()
    }

    pub fn husband(&self, woman: usize) -> Option<usize> {
        self.by_woman.get(&woman).copied()
    }

    /// Partner of `person`, `None` standing for ⊥.
    pub fn partner(&self, person: PersonId) -> Option<PersonId> {
        match person.side {
            Side::Man => self.wife(person.index).map(PersonId::woman),
            Side::Woman => self.husband(person.index).map(PersonId::man),
        }
    }

    /// The pairs of this matching that lie in `vertices`.
    pub fn restricted_to(&self, vertices: &[Pair]) -> Vec<Pair> {
        self.pairs
            .iter()
            .copied()
            .filter(|p| vertices.contains(p))
            .collect()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "m{}-w{}", p.man, p.woman)?;
        }
        Ok(())
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchingParseError {
    #[error("malformed matching token {0:?}, expected m<i>-w<j>")]
    Token(String),
    #[error("{0}")]
    NotInjective(String),
}

impl FromStr for Matching {
    type Err = MatchingParseError;

    /// Comma-separated `m<i>-w<j>` tokens; the empty string is the empty
    /// matching.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut pairs = Vec::new();
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || MatchingParseError::Token(token.to_string());
            let (a, b) = token.split_once('-').ok_or_else(bad)?;
            let man: PersonId = a.parse().map_err(|_| bad())?;
            let woman: PersonId = b.parse().map_err(|_| bad())?;
            if man.side != Side::Man || woman.side != Side::Woman {
                return Err(bad());
            }
            pairs.push(Pair::new(man.index, woman.index));
        }
        Matching::from_pairs(pairs).map_err(|e| MatchingParseError::NotInjective(e.to_string()))
    }
}

/// 0/1 coordinates over the canonical acceptable-pair order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IncidenceVector(pub Vec<u8>);

impl IncidenceVector {
    pub fn coordinates(&self) -> &[u8] {
        &self.0
    }
}

/// Checks that every pair of `matching` is acceptable.
pub fn check_matching(instance: &Instance, matching: &Matching) -> Result<()> {
    match matching
        .pairs()
        .iter()
        .find(|p| !instance.is_acceptable(**p))
    {
        Some(&p) => Err(Error::UnacceptablePair(p)),
        None => Ok(()),
    }
}

fn is_blocking(instance: &Instance, matching: &Matching, pair: Pair) -> bool {
    let Pair { man, woman } = pair;
    instance.man_score(man, Some(woman)) < instance.man_score(man, matching.wife(man))
        && instance.woman_score(woman, Some(man))
            < instance.woman_score(woman, matching.husband(woman))
}

/// Acceptable pairs whose members both strictly prefer each other to their
/// partners in `matching`, in canonical order.
pub fn blocking_pairs(instance: &Instance, matching: &Matching) -> Result<Vec<Pair>> {
    check_matching(instance, matching)?;
    Ok(instance
        .acceptable_pairs()
        .iter()
        .copied()
        .filter(|&p| is_blocking(instance, matching, p))
        .collect())
}

pub fn is_stable(instance: &Instance, matching: &Matching) -> Result<bool> {
    check_matching(instance, matching)?;
    Ok(!instance
        .acceptable_pairs()
        .iter()
        .any(|&p| is_blocking(instance, matching, p)))
}

/// Errors with the first blocking pair if `matching` is not stable.
pub fn ensure_stable(instance: &Instance, matching: &Matching) -> Result<()> {
    match blocking_pairs(instance, matching)?.first() {
        Some(&p) => Err(Error::Unstable(p)),
        None => Ok(()),
    }
}

pub fn incidence(instance: &Instance, matching: &Matching) -> Result<IncidenceVector> {
    check_matching(instance, matching)?;
    Ok(IncidenceVector(
        instance
            .acceptable_pairs()
            .iter()
            .map(|&p| u8::from(matching.contains(p)))
            .collect(),
    ))
}

/// Man-proposing deferred acceptance on a seeded strict refinement of every
/// preference order. A matching stable for the refinement is weakly stable
/// for the original orders.
pub fn find_stable(instance: &Instance, seed: u64) -> Matching {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut refine = |person: PersonId| -> Vec<usize> {
        let mut flat = Vec::new();
        for tier in instance.prefs(person).tiers() {
            let mut tier: Vec<usize> = tier.iter().map(|p| p.index).collect();
            tier.sort_unstable();
            tier.shuffle(&mut rng);
            flat.extend(tier);
        }
        flat
    };
    let proposals: Vec<Vec<usize>> = (1..=instance.num_men())
        .map(|m| {
            refine(PersonId::man(m))
                .into_iter()
                .filter(|&w| instance.is_acceptable(Pair::new(m, w)))
                .collect()
        })
        .collect();
    // woman -> (man -> refined rank)
    let woman_rank: Vec<BTreeMap<usize, usize>> = (1..=instance.num_women())
        .map(|w| {
            refine(PersonId::woman(w))
                .into_iter()
                .enumerate()
                .map(|(r, m)| (m, r))
                .collect()
        })
        .collect();

    let mut next = vec![0usize; instance.num_men()];
    let mut husband: Vec<Option<usize>> = vec![None; instance.num_women()];
    let mut free: Vec<usize> = (1..=instance.num_men()).rev().collect();
    while let Some(m) = free.pop() {
        let Some(&w) = proposals[m - 1].get(next[m - 1]) else {
            continue;
        };
        next[m - 1] += 1;
        let rank = &woman_rank[w - 1];
        match husband[w - 1] {
            None => husband[w - 1] = Some(m),
            Some(current) if rank[&m] < rank[&current] => {
                husband[w - 1] = Some(m);
                free.push(current);
            }
            Some(_) => free.push(m),
        }
    }
    Matching::from_pairs(
        husband
            .iter()
            .enumerate()
            .filter_map(|(w, m)| m.map(|m| Pair::new(m, w + 1))),
    )
    .expect("deferred acceptance yields a matching")
}

/// All weakly stable matchings, in ascending lexicographic order of their
/// incidence vectors, with the default cap.
pub fn enumerate_stable(instance: &Instance) -> Result<Vec<Matching>> {
    enumerate_stable_with_cap(instance, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_stable_with_cap(instance: &Instance, cap: usize) -> Result<Vec<Matching>> {
    let pairs = instance.acceptable_pairs();
    if pairs.len() > cap {
        return Err(Error::CapExceeded {
            count: pairs.len(),
            cap,
        });
    }
    let mut search = Search {
        instance,
        pairs,
        wife: vec![None; instance.num_men() + 1],
        husband: vec![None; instance.num_women() + 1],
        chosen: vec![false; pairs.len()],
        found: Vec::new(),
    };
    search.descend(0);
    Ok(search.found)
}

struct Search<'a> {
    instance: &'a Instance,
    pairs: &'a [Pair],
    wife: Vec<Option<usize>>,
    husband: Vec<Option<usize>>,
    chosen: Vec<bool>,
    found: Vec<Matching>,
}

impl Search<'_> {
    /// Best score `man` can still end up with once pairs `from..` are decided.
    fn man_best(&self, man: usize, from: usize) -> usize {
        if let Some(w) = self.wife[man] {
            return self.instance.man_score(man, Some(w));
        }
        self.pairs[from..]
            .iter()
            .filter(|p| p.man == man && self.husband[p.woman].is_none())
            .map(|p| self.instance.man_score(man, Some(p.woman)))
            .min()
            .unwrap_or(crate::instance::SINGLE)
    }

    fn woman_best(&self, woman: usize, from: usize) -> usize {
        if let Some(m) = self.husband[woman] {
            return self.instance.woman_score(woman, Some(m));
        }
        self.pairs[from..]
            .iter()
            .filter(|p| p.woman == woman && self.wife[p.man].is_none())
            .map(|p| self.instance.woman_score(woman, Some(p.man)))
            .min()
            .unwrap_or(crate::instance::SINGLE)
    }

    /// Some pair decided "out" among `..from` blocks every completion.
    fn doomed(&self, from: usize) -> bool {
        self.pairs[..from].iter().enumerate().any(|(i, p)| {
            !self.chosen[i]
                && self.instance.man_score(p.man, Some(p.woman)) < self.man_best(p.man, from)
                && self.instance.woman_score(p.woman, Some(p.man)) < self.woman_best(p.woman, from)
        })
    }

    fn descend(&mut self, i: usize) {
        if i == self.pairs.len() {
            let matching = Matching::from_pairs(
                self.pairs
                    .iter()
                    .zip(&self.chosen)
                    .filter(|(_, &c)| c)
                    .map(|(&p, _)| p),
            )
            .expect("search keeps the matching injective");
            debug_assert!(is_stable(self.instance, &matching).unwrap());
            self.found.push(matching);
            return;
        }
        // Out first: keeps the output in ascending incidence order.
        if !self.doomed(i + 1) {
            self.descend(i + 1);
        }
        let Pair { man, woman } = self.pairs[i];
        if self.wife[man].is_none() && self.husband[woman].is_none() {
            self.wife[man] = Some(woman);
            self.husband[woman] = Some(man);
            self.chosen[i] = true;
            if !self.doomed(i + 1) {
                self.descend(i + 1);
            }
            self.chosen[i] = false;
            self.wife[man] = None;
            self.husband[woman] = None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{sample_instance, sample_pair};
    use crate::instance::{random_instance, tight_family, PreferenceOrder, TieProbability};
    use proptest::prelude::*;

    fn matching(s: &str) -> Matching {
        s.parse().unwrap()
    }

    /// Every subset of `A` that is a matching and is stable, ascending by
    /// incidence vector. No pruning.
    fn naive_stable(instance: &Instance) -> Vec<Matching> {
        let pairs = instance.acceptable_pairs();
        assert!(pairs.len() <= 16);
        let mut out: Vec<(Vec<u8>, Matching)> = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let chosen = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p);
            let Ok(m) = Matching::from_pairs(chosen) else {
                continue;
            };
            if is_stable(instance, &m).unwrap() {
                out.push((incidence(instance, &m).unwrap().0, m));
            }
        }
        out.sort();
        out.into_iter().map(|(_, m)| m).collect()
    }

    #[test]
    fn text_form() {
        let m = matching("m2-w1, m1-w2");
        assert_eq!(m.to_string(), "m1-w2,m2-w1");
        assert_eq!(matching(""), Matching::empty());
        assert!("m1w2".parse::<Matching>().is_err());
        assert!("w1-m2".parse::<Matching>().is_err());
        assert!("m1-w1,m1-w2".parse::<Matching>().is_err());
        assert_eq!(m.partner(PersonId::woman(1)), Some(PersonId::man(2)));
        assert_eq!(m.partner(PersonId::man(3)), None);
    }

    #[test]
    fn sample_pair_is_stable() {
        let inst = sample_instance();
        let (mu, nu) = sample_pair();
        assert_eq!(blocking_pairs(&inst, &mu).unwrap(), vec![]);
        assert_eq!(blocking_pairs(&inst, &nu).unwrap(), vec![]);
        assert!(is_stable(&inst, &mu).unwrap());
    }

    #[test]
    fn single_couple_empty_matching_blocked() {
        let inst = Instance::checked(
            1,
            1,
            [
                (
                    PersonId::man(1),
                    PreferenceOrder::strict([PersonId::woman(1)]),
                ),
                (
                    PersonId::woman(1),
                    PreferenceOrder::strict([PersonId::man(1)]),
                ),
            ],
        )
        .unwrap();
        assert_eq!(
            blocking_pairs(&inst, &Matching::empty()).unwrap(),
            vec![Pair::new(1, 1)]
        );
    }

    #[test]
    fn stability_edge_cases() {
        assert!(!is_stable(&tight_family(1), &Matching::empty()).unwrap());
        let no_pairs = Instance::new(2, 2, []);
        assert!(is_stable(&no_pairs, &Matching::empty()).unwrap());
        assert_eq!(
            is_stable(&sample_instance(), &matching("m1-w1")),
            Err(Error::UnacceptablePair(Pair::new(1, 1)))
        );
        assert_eq!(
            ensure_stable(&tight_family(1), &Matching::empty()),
            Err(Error::Unstable(Pair::new(1, 1)))
        );
    }

    #[test]
    fn incidence_vectors() {
        let inst = sample_instance();
        let (mu, nu) = sample_pair();
        assert_eq!(incidence(&inst, &mu).unwrap().0, vec![1, 0, 1, 0, 0, 0, 0]);
        assert_eq!(incidence(&inst, &nu).unwrap().0, vec![0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(incidence(&inst, &Matching::empty()).unwrap().0, vec![0; 7]);
    }

    #[test]
    fn find_stable_small_cases() {
        let one = tight_family(1);
        for seed in 0..20 {
            let m = find_stable(&one, seed);
            assert!(m == matching("m1-w1") || m == matching("m1-w2"));
            assert!(is_stable(&sample_instance(), &find_stable(&sample_instance(), seed)).unwrap());
        }
        assert_eq!(find_stable(&Instance::empty(), 1), Matching::empty());
        // Seeds actually change the tie-breaking.
        let outcomes: std::collections::BTreeSet<_> =
            (0..20).map(|s| find_stable(&one, s)).collect();
        assert_eq!(outcomes.len(), 2);
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(
            enumerate_stable(&tight_family(1)).unwrap(),
            vec![matching("m1-w2"), matching("m1-w1")]
        );
        assert_eq!(
            enumerate_stable(&Instance::new(3, 1, [])).unwrap(),
            vec![Matching::empty()]
        );
        for t in 1..=4 {
            let inst = tight_family(t);
            let all = enumerate_stable(&inst).unwrap();
            assert_eq!(all.len(), 1 << t);
            assert_eq!(all, naive_stable(&inst));
        }
    }

    #[test]
    fn enumerate_sample_instance() {
        let inst = sample_instance();
        let all = enumerate_stable(&inst).unwrap();
        assert_eq!(all, naive_stable(&inst));
        let (mu, nu) = sample_pair();
        assert!(all.contains(&mu) && all.contains(&nu));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_stable_with_cap(&tight_family(3), 5),
            Err(Error::CapExceeded { count: 6, cap: 5 })
        );
        assert_eq!(
            enumerate_stable(&tight_family(13)),
            Err(Error::CapExceeded {
                count: 26,
                cap: DEFAULT_ENUMERATION_CAP
            })
        );
    }

    fn arb_instance() -> impl Strategy<Value = Instance> {
        (0usize..5, 0usize..5, 0usize..5, 0u32..=4, any::<u64>()).prop_map(
            |(m, w, len, num, seed)| {
                random_instance(m, w, len, TieProbability::new(num, 4).unwrap(), seed)
            },
        )
    }

    proptest! {
        #[test]
        fn find_stable_is_stable(inst in arb_instance(), seed in any::<u64>()) {
            let m = find_stable(&inst, seed);
            prop_assert!(is_stable(&inst, &m).unwrap());
            prop_assert_eq!(find_stable(&inst, seed), m);
        }

        #[test]
        fn enumeration_matches_naive(inst in arb_instance()) {
            prop_assume!(inst.acceptable_pairs().len() <= 10);
            let fast = enumerate_stable(&inst).unwrap();
            prop_assert_eq!(&fast, &naive_stable(&inst));
            let mut vectors: Vec<_> = fast.iter().map(|m| incidence(&inst, m).unwrap()).collect();
            let n = vectors.len();
            vectors.dedup();
            prop_assert_eq!(vectors.len(), n);
        }

        #[test]
        fn strict_instances_have_equal_cardinalities(
            m in 0usize..5, w in 0usize..5, len in 0usize..5, seed in any::<u64>()
        ) {
            let inst = random_instance(m, w, len, TieProbability::ZERO, seed);
            let sizes: std::collections::BTreeSet<usize> =
                enumerate_stable(&inst).unwrap().iter().map(Matching::len).collect();
            prop_assert_eq!(sizes.len(), 1);
        }
    }
}
