//! Instances of the stable marriage problem with ties.
//!
//! Every person holds a weak order over the people on the other side that
//! they find acceptable, stored as a sequence of tiers (best first). A man and
//! a woman form an acceptable pair when each lists the other; the acceptable
//! pairs, sorted by man index and then woman index, fix the coordinate order
//! of every vector used by the polyhedral code.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Man,
    Woman,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Man => Side::Woman,
            Side::Woman => Side::Man,
        }
    }

    fn prefix(self) -> char {
        match self {
            Side::Man => 'm',
            Side::Woman => 'w',
        }
    }
}

/// A man or a woman, identified by a 1-based index on their side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PersonId {
    pub side: Side,
    pub index: usize,
}

impl PersonId {
    pub fn man(index: usize) -> Self {
        PersonId {
            side: Side::Man,
            index,
        }
    }

    pub fn woman(index: usize) -> Self {
        PersonId {
            side: Side::Woman,
            index,
        }
    }

    pub fn is_man(&self) -> bool {
        self.side == Side::Man
    }
}

impl fmt::Display for PersonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.prefix(), self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed person id {0:?}")]
pub struct BadPersonId(pub String);

impl FromStr for PersonId {
    type Err = BadPersonId;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || BadPersonId(s.to_string());
        let side = match s.chars().next() {
            Some('m') => Side::Man,
            Some('w') => Side::Woman,
            _ => return Err(bad()),
        };
        let digits = &s[1..];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(PersonId { side, index })
    }
}

/// A (man, woman) pair, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pair {
    pub man: usize,
    pub woman: usize,
}

impl Pair {
    pub fn new(man: usize, woman: usize) -> Self {
        Pair { man, woman }
    }

    pub fn man_id(&self) -> PersonId {
        PersonId::man(self.man)
    }

    pub fn woman_id(&self) -> PersonId {
        PersonId::woman(self.woman)
    }

    /// `true` if `person` is one of the two members of the pair.
    pub fn involves(&self, person: PersonId) -> bool {
        match person.side {
            Side::Man => self.man == person.index,
            Side::Woman => self.woman == person.index,
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m{},w{})", self.man, self.woman)
    }
}

/// A weak order: tiers of mutually indifferent partners, best tier first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PreferenceOrder {
    tiers: Vec<Vec<PersonId>>,
}

impl PreferenceOrder {
    pub fn new(tiers: Vec<Vec<PersonId>>) -> Self {
        PreferenceOrder { tiers }
    }

    /// A strict order, one partner per tier.
    pub fn strict(partners: impl IntoIterator<Item = PersonId>) -> Self {
        PreferenceOrder {
            tiers: partners.into_iter().map(|p| vec![p]).collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn tiers(&self) -> &[Vec<PersonId>] {
        &self.tiers
    }

    pub fn is_empty(&self) -> bool {
        self.tiers.iter().all(|t| t.is_empty())
    }

    pub fn len(&self) -> usize {
        self.tiers.iter().map(Vec::len).sum()
    }

    pub fn partners(&self) -> impl Iterator<Item = PersonId> + '_ {
        self.tiers.iter().flatten().copied()
    }

    pub fn is_strict(&self) -> bool {
        self.tiers.iter().all(|t| t.len() <= 1)
    }

    /// Tier index of `partner`, if listed.
    pub fn tier_of(&self, partner: PersonId) -> Option<usize> {
        self.tiers.iter().position(|t| t.contains(&partner))
    }

    /// Same order with every tier sorted by id.
    pub fn canonical(&self) -> Self {
        let mut tiers = self.tiers.clone();
        for tier in &mut tiers {
            tier.sort();
        }
        PreferenceOrder { tiers }
    }
}

/// Outcome of asking a judge to compare two partners (or ⊥).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preference {
    FirstBetter,
    SecondBetter,
    Indifferent,
}

/// Score assigned to ⊥: worse than every tier.
pub(crate) const SINGLE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct Instance {
    num_men: usize,
    num_women: usize,
    prefs: BTreeMap<PersonId, PreferenceOrder>,
    // Derived tables. Entries naming out-of-range people are skipped here and
    // reported by `validate`.
    man_tier: Vec<HashMap<usize, usize>>,
    woman_tier: Vec<HashMap<usize, usize>>,
    pairs: Vec<Pair>,
    pair_index: HashMap<Pair, usize>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.num_men == other.num_men
            && self.num_women == other.num_women
            && self.canonical_prefs() == other.canonical_prefs()
    }
}

impl Eq for Instance {}

impl Instance {
    /// Builds an instance without checking it; see [`Instance::validate`].
    /// People absent from `prefs` get an empty order.
    pub fn new(
        num_men: usize,
        num_women: usize,
        prefs: impl IntoIterator<Item = (PersonId, PreferenceOrder)>,
    ) -> Self {
        let prefs: BTreeMap<_, _> = prefs
            .into_iter()
            .filter(|(_, o)| !o.tiers().is_empty())
            .collect();
        let mut man_tier = vec![HashMap::new(); num_men];
        let mut woman_tier = vec![HashMap::new(); num_women];
        for (owner, order) in &prefs {
            let table = match owner.side {
                Side::Man if (1..=num_men).contains(&owner.index) => &mut man_tier[owner.index - 1],
                Side::Woman if (1..=num_women).contains(&owner.index) => {
                    &mut woman_tier[owner.index - 1]
                }
                _ => continue,
            };
            for (tier, group) in order.tiers().iter().enumerate() {
                for p in group {
                    if p.side != owner.side {
                        table.entry(p.index).or_insert(tier);
                    }
                }
            }
        }
        let mut pairs = Vec::new();
        for (m, table) in man_tier.iter().enumerate() {
            let mut women: Vec<usize> = table
                .keys()
                .copied()
                .filter(|&w| {
                    (1..=num_women).contains(&w) && woman_tier[w - 1].contains_key(&(m + 1))
                })
                .collect();
            women.sort_unstable();
            pairs.extend(women.into_iter().map(|w| Pair::new(m + 1, w)));
        }
        let pair_index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Instance {
            num_men,
            num_women,
            prefs,
            man_tier,
            woman_tier,
            pairs,
            pair_index,
        }
    }

    /// Builds and validates.
    pub fn checked(
        num_men: usize,
        num_women: usize,
        prefs: impl IntoIterator<Item = (PersonId, PreferenceOrder)>,
    ) -> Result<Self> {
        let instance = Self::new(num_men, num_women, prefs);
        instance.validate()?;
        Ok(instance)
    }

    pub fn empty() -> Self {
        Self::new(0, 0, [])
    }

    /// Reports the first violated invariant, scanning people in id order.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (&owner, order) in &self.prefs {
            if !self.in_range(owner) {
                return Err(Violation::PersonOutOfRange { person: owner });
            }
            let mut seen = Vec::new();
            for tier in order.tiers() {
                if tier.is_empty() {
                    return Err(Violation::EmptyTier { owner });
                }
                for &listed in tier {
                    if listed.side == owner.side {
                        return Err(Violation::SameSide { owner, listed });
                    }
                    if !self.in_range(listed) {
                        return Err(Violation::PersonOutOfRange { person: listed });
                    }
                    if seen.contains(&listed) {
                        return Err(Violation::DuplicateEntry { owner, listed });
                    }
                    seen.push(listed);
                }
            }
        }
        for (&owner, order) in &self.prefs {
            for listed in order.partners() {
                let back = self.prefs.get(&listed).and_then(|o| o.tier_of(owner));
                if back.is_none() {
                    let pair = match owner.side {
                        Side::Man => Pair::new(owner.index, listed.index),
                        Side::Woman => Pair::new(listed.index, owner.index),
                    };
                    return Err(Violation::OneSided { pair });
                }
            }
        }
        Ok(())
    }

    fn in_range(&self, p: PersonId) -> bool {
        let count = match p.side {
            Side::Man => self.num_men,
            Side::Woman => self.num_women,
        };
        (1..=count).contains(&p.index)
    }

    pub fn num_men(&self) -> usize {
        self.num_men
    }

    pub fn num_women(&self) -> usize {
        self.num_women
    }

    /// `n = |M ∪ W|`.
    pub fn num_people(&self) -> usize {
        self.num_men + self.num_women
    }

    pub fn people(&self) -> impl Iterator<Item = PersonId> {
        (1..=self.num_men)
            .map(PersonId::man)
            .chain((1..=self.num_women).map(PersonId::woman))
    }

    /// The order of `person`; empty if they list nobody.
    pub fn prefs(&self, person: PersonId) -> &PreferenceOrder {
        static EMPTY: PreferenceOrder = PreferenceOrder { tiers: Vec::new() };
        self.prefs.get(&person).unwrap_or(&EMPTY)
    }

    fn canonical_prefs(&self) -> BTreeMap<PersonId, PreferenceOrder> {
        self.prefs
            .iter()
            .map(|(&p, o)| (p, o.canonical()))
            .collect()
    }

    /// `true` if some order has a tier with two or more partners.
    pub fn has_ties(&self) -> bool {
        self.prefs.values().any(|o| !o.is_strict())
    }

    /// Acceptable pairs in canonical (man, woman) lexicographic order.
    pub fn acceptable_pairs(&self) -> &[Pair] {
        &self.pairs
    }

    /// Canonical coordinate of `pair`, if acceptable.
    pub fn pair_index(&self, pair: Pair) -> Option<usize> {
        self.pair_index.get(&pair).copied()
    }

    pub fn is_acceptable(&self, pair: Pair) -> bool {
        self.pair_index.contains_key(&pair)
    }

    fn tier_table(&self, judge: PersonId) -> Option<&HashMap<usize, usize>> {
        match judge.side {
            Side::Man => self.man_tier.get(judge.index.checked_sub(1)?),
            Side::Woman => self.woman_tier.get(judge.index.checked_sub(1)?),
        }
    }

    /// Tier index of `partner` in the order of `judge` (lower is better).
    pub fn tier_of(&self, judge: PersonId, partner: PersonId) -> Option<usize> {
        if partner.side == judge.side {
            return None;
        }
        self.tier_table(judge)?.get(&partner.index).copied()
    }

    /// Score of a partner or ⊥ (lower is better, ⊥ is worst).
    pub(crate) fn score(&self, judge: PersonId, partner: Option<PersonId>) -> Result<usize> {
        match partner {
            None => Ok(SINGLE),
            Some(p) => self
                .tier_of(judge, p)
                .ok_or(Error::NotAcceptable { judge, partner: p }),
        }
    }

    /// Score for a man of a woman index or ⊥. Panics if not acceptable.
    pub(crate) fn man_score(&self, man: usize, woman: Option<usize>) -> usize {
        match woman {
            None => SINGLE,
            Some(w) => self.man_tier[man - 1][&w],
        }
    }

    /// Score for a woman of a man index or ⊥. Panics if not acceptable.
    pub(crate) fn woman_score(&self, woman: usize, man: Option<usize>) -> usize {
        match man {
            None => SINGLE,
            Some(m) => self.woman_tier[woman - 1][&m],
        }
    }

    /// Compares two partners (or ⊥) from the point of view of `judge`.
    pub fn compare(
        &self,
        judge: PersonId,
        a: Option<PersonId>,
        b: Option<PersonId>,
    ) -> Result<Preference> {
        let sa = self.score(judge, a)?;
        let sb = self.score(judge, b)?;
        Ok(match sa.cmp(&sb) {
            std::cmp::Ordering::Less => Preference::FirstBetter,
            std::cmp::Ordering::Greater => Preference::SecondBetter,
            std::cmp::Ordering::Equal => Preference::Indifferent,
        })
    }

    /// The instance with `person` deleted and the remaining people on their
    /// side renumbered consecutively.
    pub fn without_person(&self, person: PersonId) -> Instance {
        let shift = |p: PersonId| -> Option<PersonId> {
            if p == person {
                None
            } else if p.side == person.side && p.index > person.index {
                Some(PersonId {
                    side: p.side,
                    index: p.index - 1,
                })
            } else {
                Some(p)
            }
        };
        let prefs = self.prefs.iter().filter_map(|(&owner, order)| {
            let owner = shift(owner)?;
            let tiers = order
                .tiers()
                .iter()
                .map(|t| t.iter().filter_map(|&p| shift(p)).collect::<Vec<_>>())
                .filter(|t| !t.is_empty())
                .collect();
            Some((owner, PreferenceOrder::new(tiers)))
        });
        let (men, women) = match person.side {
            Side::Man => (self.num_men - 1, self.num_women),
            Side::Woman => (self.num_men, self.num_women - 1),
        };
        Instance::new(men, women, prefs)
    }
}

/// `t` men and `2t` women; man `i` is indifferent between women `i` and
/// `i + t`, each of whom accepts only him.
pub fn tight_family(t: usize) -> Instance {
    let mut prefs = Vec::with_capacity(3 * t);
    for i in 1..=t {
        prefs.push((
            PersonId::man(i),
            PreferenceOrder::new(vec![vec![PersonId::woman(i), PersonId::woman(i + t)]]),
        ));
        prefs.push((
            PersonId::woman(i),
            PreferenceOrder::strict([PersonId::man(i)]),
        ));
        prefs.push((
            PersonId::woman(i + t),
            PreferenceOrder::strict([PersonId::man(i)]),
        ));
    }
    Instance::new(t, 2 * t, prefs)
}

/// A probability in `[0, 1]` held as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TieProbability(Ratio<u32>);

impl TieProbability {
    pub const ZERO: TieProbability = TieProbability(Ratio::new_raw(0, 1));

    pub fn new(numer: u32, denom: u32) -> Option<Self> {
        (denom > 0 && numer <= denom).then(|| TieProbability(Ratio::new(numer, denom)))
    }

    pub fn is_zero(&self) -> bool {
        *self.0.numer() == 0
    }

    fn sample(&self, rng: &mut impl Rng) -> bool {
        rng.gen_ratio(*self.0.numer(), *self.0.denom())
    }
}

impl fmt::Display for TieProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for TieProbability {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || format!("tie probability must be a fraction in [0,1], got {s:?}");
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: u32 = n.parse().map_err(|_| bad())?;
        let d: u32 = d.parse().map_err(|_| bad())?;
        TieProbability::new(n, d).ok_or_else(bad)
    }
}

/// Seeded random instance.
///
/// Every man samples `min(max_list_len, num_women)` women and every woman
/// samples `min(max_list_len, num_men)` men; the acceptable pairs are the
/// mutual choices. Each person's acceptable partners are shuffled and every
/// adjacent pair in the shuffled list is merged into one tier with
/// probability `tie_probability`.
pub fn random_instance(
    num_men: usize,
    num_women: usize,
    max_list_len: usize,
    tie_probability: TieProbability,
    seed: u64,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = |pool: usize, rng: &mut ChaCha8Rng| -> Vec<usize> {
        let mut all: Vec<usize> = (1..=pool).collect();
        all.shuffle(rng);
        all.truncate(max_list_len.min(pool));
        all.sort_unstable();
        all
    };
    let men_lists: Vec<Vec<usize>> = (0..num_men).map(|_| sample(num_women, &mut rng)).collect();
    let women_lists: Vec<Vec<usize>> = (0..num_women).map(|_| sample(num_men, &mut rng)).collect();

    let mut men_accept = vec![Vec::new(); num_men];
    let mut women_accept = vec![Vec::new(); num_women];
    for (m, list) in men_lists.iter().enumerate() {
        for &w in list {
            if women_lists[w - 1].contains(&(m + 1)) {
                men_accept[m].push(PersonId::woman(w));
                women_accept[w - 1].push(PersonId::man(m + 1));
            }
        }
    }

    let order = |mut partners: Vec<PersonId>, rng: &mut ChaCha8Rng| -> PreferenceOrder {
        partners.shuffle(rng);
        let mut tiers: Vec<Vec<PersonId>> = Vec::new();
        for p in partners {
            match tiers.last_mut() {
                Some(last) if tie_probability.sample(rng) => last.push(p),
                _ => tiers.push(vec![p]),
            }
        }
        PreferenceOrder::new(tiers)
    };
    let mut prefs = Vec::new();
    for (m, partners) in men_accept.into_iter().enumerate() {
        prefs.push((PersonId::man(m + 1), order(partners, &mut rng)));
    }
    for (w, partners) in women_accept.into_iter().enumerate() {
        prefs.push((PersonId::woman(w + 1), order(partners, &mut rng)));
    }
    Instance::new(num_men, num_women, prefs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::sample_instance;

    fn m(i: usize) -> PersonId {
        PersonId::man(i)
    }

    fn w(i: usize) -> PersonId {
        PersonId::woman(i)
    }

    #[test]
    fn sample_validates() {
        assert_eq!(sample_instance().validate(), Ok(()));
    }

    #[test]
    fn one_sided_listing_is_rejected() {
        let inst = Instance::new(1, 1, [(m(1), PreferenceOrder::strict([w(1)]))]);
        assert_eq!(
            inst.validate(),
            Err(Violation::OneSided {
                pair: Pair::new(1, 1)
            })
        );
        assert!(inst.acceptable_pairs().is_empty());
    }

    #[test]
    fn empty_instance_validates() {
        let inst = Instance::empty();
        assert_eq!(inst.validate(), Ok(()));
        assert!(inst.acceptable_pairs().is_empty());
    }

    #[test]
    fn other_violations() {
        let same = Instance::new(2, 1, [(m(1), PreferenceOrder::strict([m(2)]))]);
        assert!(matches!(same.validate(), Err(Violation::SameSide { .. })));
        let range = Instance::new(1, 1, [(m(1), PreferenceOrder::strict([w(2)]))]);
        assert_eq!(
            range.validate(),
            Err(Violation::PersonOutOfRange { person: w(2) })
        );
        let dup = Instance::new(
            1,
            1,
            [
                (m(1), PreferenceOrder::new(vec![vec![w(1)], vec![w(1)]])),
                (w(1), PreferenceOrder::strict([m(1)])),
            ],
        );
        assert!(matches!(
            dup.validate(),
            Err(Violation::DuplicateEntry { .. })
        ));
        let empty_tier = Instance::new(
            1,
            1,
            [
                (m(1), PreferenceOrder::new(vec![vec![], vec![w(1)]])),
                (w(1), PreferenceOrder::strict([m(1)])),
            ],
        );
        assert_eq!(
            empty_tier.validate(),
            Err(Violation::EmptyTier { owner: m(1) })
        );
    }

    #[test]
    fn compare_sample() {
        let inst = sample_instance();
        assert_eq!(
            inst.compare(m(2), Some(w(3)), Some(w(4))),
            Ok(Preference::Indifferent)
        );
        assert_eq!(
            inst.compare(m(1), Some(w(4)), Some(w(2))),
            Ok(Preference::SecondBetter)
        );
        for judge in inst.people() {
            for p in inst.prefs(judge).partners() {
                assert_eq!(
                    inst.compare(judge, None, Some(p)),
                    Ok(Preference::SecondBetter)
                );
            }
            assert_eq!(inst.compare(judge, None, None), Ok(Preference::Indifferent));
        }
        assert_eq!(
            inst.compare(m(1), Some(w(1)), None),
            Err(Error::NotAcceptable {
                judge: m(1),
                partner: w(1)
            })
        );
    }

    #[test]
    fn sample_acceptable_pairs() {
        let expected: Vec<Pair> = [(1, 2), (1, 4), (2, 1), (2, 3), (2, 4), (3, 1), (3, 2)]
            .iter()
            .map(|&(a, b)| Pair::new(a, b))
            .collect();
        assert_eq!(sample_instance().acceptable_pairs(), expected.as_slice());
    }

    #[test]
    fn tight_family_shape() {
        let one = tight_family(1);
        assert_eq!(one.acceptable_pairs(), &[Pair::new(1, 1), Pair::new(1, 2)]);
        assert_eq!(one.prefs(m(1)).tiers(), &[vec![w(1), w(2)]]);
        assert_eq!(tight_family(2).prefs(w(3)).tiers(), &[vec![m(1)]]);
        let three = tight_family(3);
        assert_eq!(three.num_people(), 9);
        assert_eq!(three.acceptable_pairs().len(), 6);
        for t in 1..=100 {
            let inst = tight_family(t);
            assert_eq!(inst.validate(), Ok(()));
            assert_eq!(inst.num_people(), 3 * t);
            assert_eq!(inst.acceptable_pairs().len(), 2 * t);
            for i in 1..=t {
                assert_eq!(
                    inst.compare(m(i), Some(w(i)), Some(w(i + t))),
                    Ok(Preference::Indifferent)
                );
            }
        }
    }

    #[test]
    fn random_instance_properties() {
        let empty = random_instance(0, 0, 0, TieProbability::ZERO, 3);
        assert_eq!(empty, Instance::empty());

        let half = TieProbability::new(1, 2).unwrap();
        let a = random_instance(5, 4, 3, half, 11);
        let b = random_instance(5, 4, 3, half, 11);
        assert_eq!(a, b);
        assert_eq!(a.validate(), Ok(()));

        let strict = random_instance(4, 4, 4, TieProbability::ZERO, 7);
        assert_eq!(strict.validate(), Ok(()));
        assert!(!strict.has_ties());
        // Full lists on both sides make every pair acceptable.
        assert_eq!(strict.acceptable_pairs().len(), 16);

        let all_tied = random_instance(3, 3, 3, TieProbability::new(1, 1).unwrap(), 5);
        for p in all_tied.people() {
            assert!(all_tied.prefs(p).tiers().len() <= 1);
        }
    }

    #[test]
    fn removing_a_person_renumbers() {
        let inst = sample_instance().without_person(m(1));
        assert_eq!(inst.validate(), Ok(()));
        assert_eq!(inst.num_men(), 2);
        assert_eq!(inst.prefs(w(2)).tiers(), &[vec![m(2)]]);
        assert_eq!(inst.acceptable_pairs().len(), 5);
    }

    #[test]
    fn tie_probability_parsing() {
        assert_eq!(
            "1/2".parse::<TieProbability>(),
            Ok(TieProbability::new(1, 2).unwrap())
        );
        assert_eq!("0".parse::<TieProbability>(), Ok(TieProbability::ZERO));
        assert!("3/2".parse::<TieProbability>().is_err());
        assert!("1/0".parse::<TieProbability>().is_err());
    }

    #[test]
    fn person_id_parsing() {
        assert_eq!("m12".parse::<PersonId>(), Ok(m(12)));
        assert_eq!("w1".parse::<PersonId>(), Ok(w(1)));
        assert!("m0".parse::<PersonId>().is_err());
        assert!("x1".parse::<PersonId>().is_err());
        assert!("m".parse::<PersonId>().is_err());
        assert!("m1a".parse::<PersonId>().is_err());
    }
}
