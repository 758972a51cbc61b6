use std::cmp::Ordering;
use std::collections::VecDeque;
use std::sync::Arc;

use rand::Rng;

/// An evaluated genotype. `id` is its birth order within the experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Individual<G> {
    pub id: u64,
    pub genotype: G,
    pub accuracy: f64,
    pub parent_id: Option<u64>,
    pub evaluator_seed: u64,
}

/// Better accuracy first; among equal accuracies the older individual wins.
pub(crate) fn fitter<G>(a: &Individual<G>, b: &Individual<G>) -> Ordering {
    a.accuracy.total_cmp(&b.accuracy).then(b.id.cmp(&a.id))
}

/// Highest accuracy; ties go to the smallest id.
pub fn select_parent<G>(sample: &[Arc<Individual<G>>]) -> &Arc<Individual<G>> {
    sample
        .iter()
        .max_by(|a, b| fitter(a, b))
        .expect("select_parent needs a non-empty sample")
}

/// Lowest accuracy; ties go to the largest id.
pub fn select_victim<G>(sample: &[Arc<Individual<G>>]) -> &Arc<Individual<G>> {
    sample
        .iter()
        .min_by(|a, b| fitter(a, b))
        .expect("select_victim needs a non-empty sample")
}

/// Highest-accuracy individual of a history (ties to the smallest id).
pub fn best_individual<G>(records: &[Arc<Individual<G>>]) -> Option<&Arc<Individual<G>>> {
    records.iter().max_by(|a, b| fitter(a, b))
}

/// FIFO queue of the living models. Members are kept in insertion order, so
/// ids increase from front to back.
#[derive(Clone, Debug)]
pub struct Population<G> {
    members: VecDeque<Arc<Individual<G>>>,
    capacity: usize,
}

impl<G> Population<G> {
    pub fn new(capacity: usize) -> Self {
        Self {
            members: VecDeque::with_capacity(capacity + 1),
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() >= self.capacity
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<Individual<G>>> + '_ {
        self.members.iter()
    }

    pub fn push(&mut self, individual: Arc<Individual<G>>) {
        debug_assert!(self.members.back().is_none_or(|last| last.id < individual.id));
        self.members.push_back(individual);
    }

    pub fn remove_oldest(&mut self) -> Option<Arc<Individual<G>>> {
        self.members.pop_front()
    }

    pub fn get(&self, index: usize) -> Option<&Arc<Individual<G>>> {
        self.members.get(index)
    }

    pub fn contains(&self, id: u64) -> bool {
        self.position(id).is_some()
    }

    fn position(&self, id: u64) -> Option<usize> {
        self.members.binary_search_by_key(&id, |m| m.id).ok()
    }

    pub fn remove_id(&mut self, id: u64) -> Option<Arc<Individual<G>>> {
        let position = self.position(id)?;
        self.members.remove(position)
    }
}

/// `S` uniform draws with replacement. The population is left untouched.
pub fn sample_candidates<G, R: Rng + ?Sized>(
    population: &Population<G>,
    sample_size: usize,
    rng: &mut R,
) -> Vec<Arc<Individual<G>>> {
    assert!(!population.is_empty(), "cannot sample from an empty population");
    let n = population.len();
    (0..sample_size)
        .map(|_| Arc::clone(&population.members[rng.random_range(0..n)]))
        .collect()
}

/// Append-only record of every evaluated model. `records[i].id == i`.
#[derive(Clone, Debug)]
pub struct History<G> {
    records: Vec<Arc<Individual<G>>>,
}

impl<G> Default for History<G> {
    fn default() -> Self {
        Self { records: Vec::new() }
    }
}

impl<G> History<G> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Id the next appended individual must carry.
    pub fn next_id(&self) -> u64 {
        self.records.len() as u64
    }

    pub fn push(&mut self, individual: Arc<Individual<G>>) {
        assert_eq!(individual.id, self.next_id(), "history ids must be contiguous");
        self.records.push(individual);
    }

    pub fn records(&self) -> &[Arc<Individual<G>>] {
        &self.records
    }

    pub fn accuracies(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.accuracy).collect()
    }

    pub fn best(&self) -> Option<&Arc<Individual<G>>> {
        best_individual(&self.records)
    }
}
