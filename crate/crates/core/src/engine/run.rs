use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, Mutex, MutexGuard};
use std::thread;

use rand::{Rng, RngCore};

use super::log::HistoryLog;
use super::population::{fitter, History, Individual, Population};
use super::space::{Genotype, SearchSpace};
use super::{EngineConfig, EngineError, Variant};
use crate::evaluators::{EvalError, EvalRequest, EvaluationRecord, Evaluator, EvaluatorFactory};
use crate::rng::{worker_stream, Stream};

/// Population, history and budget counter. All mutation happens in short
/// critical sections; evaluation never runs while this is locked.
pub struct SearchState<G> {
    pub population: Population<G>,
    pub history: History<G>,
    log: Option<HistoryLog>,
    scheduled: usize,
    aborted: bool,
}

impl<G: Genotype> SearchState<G> {
    pub fn new(population_size: usize) -> Self {
        Self {
            population: Population::new(population_size),
            history: History::new(),
            log: None,
            scheduled: 0,
            aborted: false,
        }
    }

    pub fn with_log(mut self, log: HistoryLog) -> Self {
        self.log = Some(log);
        self
    }

    /// Evaluations handed out so far (completed or in flight).
    pub fn scheduled(&self) -> usize {
        self.scheduled
    }

    fn ticket(&mut self, kind: JobKind, config: &EngineConfig, rng: &mut Stream) -> Ticket<G> {
        let job = match kind {
            JobKind::Init => Job::Init,
            JobKind::Random => Job::Random,
            JobKind::Evolve => {
                // The parent is the best of the sample; non-aging evolution
                // also keeps the sample to choose its victim at commit time.
                let keep = config.variant == Variant::NonAging;
                let mut rivals = Vec::with_capacity(if keep { config.sample_size } else { 0 });
                let parent = self.draw(config.sample_size, rng, |m| {
                    if keep {
                        rivals.push(Rival::of(m));
                    }
                });
                Job::Evolve {
                    parent: Arc::clone(parent),
                    rivals,
                }
            }
        };
        let number = self.scheduled as u64;
        self.scheduled += 1;
        Ticket {
            number,
            issued_at: self.history.len(),
            job,
        }
    }

    /// `count` uniform draws with replacement from the population; returns
    /// the fittest drawn member.
    fn draw(
        &self,
        count: usize,
        rng: &mut Stream,
        mut visit: impl FnMut(&Individual<G>),
    ) -> &Arc<Individual<G>> {
        let n = self.population.len();
        assert!(n > 0, "cannot sample from an empty population");
        let mut best: Option<&Arc<Individual<G>>> = None;
        for _ in 0..count {
            let member = self.population.get(rng.random_range(0..n)).expect("index in range");
            visit(member);
            if best.is_none_or(|b| fitter(member, b) == Ordering::Greater) {
                best = Some(member);
            }
        }
        best.expect("sample size is at least 1")
    }

    /// Hands out the next job of `phase`, or `None` once that phase's share of
    /// the budget has been scheduled.
    fn schedule(&mut self, phase: Phase, config: &EngineConfig, rng: &mut Stream) -> Option<Ticket<G>> {
        if self.aborted {
            return None;
        }
        match phase {
            Phase::Init if self.scheduled < config.population_size => {
                Some(self.ticket(JobKind::Init, config, rng))
            }
            Phase::Evolve if self.scheduled < config.cycles => {
                let kind = match config.variant {
                    Variant::RandomSearch => JobKind::Random,
                    Variant::Aging | Variant::NonAging => JobKind::Evolve,
                };
                Some(self.ticket(kind, config, rng))
            }
            _ => None,
        }
    }

    /// Inserts an evaluated child and performs the variant's removal.
    fn commit(
        &mut self,
        ticket: Ticket<G>,
        child: Bred<G>,
        record: EvaluationRecord,
        config: &EngineConfig,
        rng: &mut Stream,
    ) -> Result<(), EngineError> {
        let individual = Arc::new(Individual {
            id: self.history.next_id(),
            genotype: child.genotype,
            accuracy: record.accuracy,
            parent_id: child.parent_id,
            evaluator_seed: record.evaluator_seed,
        });
        match (&ticket.job, config.variant) {
            (Job::Init, _) => {}
            (Job::Evolve { rivals, .. }, Variant::NonAging) => {
                // Kill the worst sampled member that is still alive. Under
                // concurrency all of them may already be gone; then draw a
                // fresh sample from the current population.
                let untouched = ticket.issued_at == self.history.len();
                let victim = rivals
                    .iter()
                    .filter(|r| untouched || self.population.contains(r.id))
                    .min_by(|a, b| a.cmp_fitness(b))
                    .copied();
                let victim = match victim {
                    Some(v) => v,
                    None => {
                        let mut fresh = Vec::with_capacity(config.sample_size);
                        self.draw(config.sample_size, rng, |m| fresh.push(Rival::of(m)));
                        fresh
                            .into_iter()
                            .min_by(|a, b| a.cmp_fitness(b))
                            .expect("sample size is at least 1")
                    }
                };
                self.population.remove_id(victim.id);
            }
            _ => {
                self.population.remove_oldest();
            }
        }
        self.population.push(Arc::clone(&individual));
        self.history.push(Arc::clone(&individual));
        if let Some(log) = self.log.as_mut() {
            log.write(&individual, config.variant)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    Init,
    Evolve,
}

#[derive(Clone, Copy)]
enum JobKind {
    Init,
    Evolve,
    Random,
}

enum Job<G> {
    Init,
    Evolve {
        parent: Arc<Individual<G>>,
        rivals: Vec<Rival>,
    },
    Random,
}

/// A sampled member, reduced to what victim selection needs.
#[derive(Clone, Copy, Debug)]
struct Rival {
    id: u64,
    accuracy: f64,
}

impl Rival {
    fn of<G>(individual: &Individual<G>) -> Self {
        Self {
            id: individual.id,
            accuracy: individual.accuracy,
        }
    }

    /// Same order as parent selection: accuracy, then older is fitter.
    fn cmp_fitness(&self, other: &Self) -> Ordering {
        self.accuracy
            .total_cmp(&other.accuracy)
            .then(other.id.cmp(&self.id))
    }
}

struct Ticket<G> {
    number: u64,
    /// History length when the ticket was issued.
    issued_at: usize,
    job: Job<G>,
}

struct Bred<G> {
    genotype: G,
    parent_id: Option<u64>,
}

fn breed<S: SearchSpace>(
    job: &Job<S::Genotype>,
    space: &S,
    identity_prob: f64,
    rng: &mut Stream,
) -> Bred<S::Genotype> {
    match job {
        Job::Init | Job::Random => Bred {
            genotype: space.random(rng),
            parent_id: None,
        },
        Job::Evolve { parent, .. } => {
            Bred {
                genotype: space.mutate(&parent.genotype, identity_prob, rng),
                parent_id: Some(parent.id),
            }
        }
    }
}

fn evaluate<G, E: Evaluator<G>>(
    evaluator: &mut E,
    genotype: &G,
    number: u64,
    rng: &mut Stream,
) -> Result<EvaluationRecord, EvalError> {
    let request = EvalRequest {
        id: number,
        seed: rng.next_u64(),
    };
    evaluator.evaluate(genotype, request)
}

fn step<S, E>(
    state: &mut SearchState<S::Genotype>,
    kind: JobKind,
    config: &EngineConfig,
    space: &S,
    evaluator: &mut E,
    rng: &mut Stream,
) -> Result<(), EngineError>
where
    S: SearchSpace,
    E: Evaluator<S::Genotype>,
{
    let ticket = state.ticket(kind, config, rng);
    let child = breed(&ticket.job, space, config.identity_prob, rng);
    match evaluate(evaluator, &child.genotype, ticket.number, rng) {
        Ok(record) => state.commit(ticket, child, record, config, rng),
        Err(source) => {
            // The ticket is returned so the population is left as it was.
            state.scheduled -= 1;
            Err(EngineError::Evaluation {
                job: ticket.number,
                completed: state.history.len(),
                genotype: child.genotype.document(),
                source,
            })
        }
    }
}

/// Evaluates `P` random genotypes into a fresh population and history.
pub fn init_population<S, E>(
    config: &EngineConfig,
    space: &S,
    evaluator: &mut E,
    rng: &mut Stream,
) -> Result<SearchState<S::Genotype>, EngineError>
where
    S: SearchSpace,
    E: Evaluator<S::Genotype>,
{
    config.validate()?;
    let mut state = SearchState::new(config.population_size);
    while !state.population.is_full() {
        step(&mut state, JobKind::Init, config, space, evaluator, rng)?;
    }
    Ok(state)
}

/// One aging-evolution cycle: mutate the best of an `S`-sample, add the child,
/// remove the oldest member.
pub fn aging_cycle<S, E>(
    state: &mut SearchState<S::Genotype>,
    config: &EngineConfig,
    space: &S,
    evaluator: &mut E,
    rng: &mut Stream,
) -> Result<(), EngineError>
where
    S: SearchSpace,
    E: Evaluator<S::Genotype>,
{
    let config = EngineConfig {
        variant: Variant::Aging,
        ..config.clone()
    };
    step(state, JobKind::Evolve, &config, space, evaluator, rng)
}

/// One non-aging cycle: like [`aging_cycle`] but the worst member of the same
/// sample dies instead of the oldest.
pub fn nonaging_cycle<S, E>(
    state: &mut SearchState<S::Genotype>,
    config: &EngineConfig,
    space: &S,
    evaluator: &mut E,
    rng: &mut Stream,
) -> Result<(), EngineError>
where
    S: SearchSpace,
    E: Evaluator<S::Genotype>,
{
    let config = EngineConfig {
        variant: Variant::NonAging,
        ..config.clone()
    };
    step(state, JobKind::Evolve, &config, space, evaluator, rng)
}

/// One random-search step: a fresh random genotype replaces the oldest member.
pub fn random_search_cycle<S, E>(
    state: &mut SearchState<S::Genotype>,
    config: &EngineConfig,
    space: &S,
    evaluator: &mut E,
    rng: &mut Stream,
) -> Result<(), EngineError>
where
    S: SearchSpace,
    E: Evaluator<S::Genotype>,
{
    let config = EngineConfig {
        variant: Variant::RandomSearch,
        ..config.clone()
    };
    step(state, JobKind::Random, &config, space, evaluator, rng)
}

/// Result of a finished experiment.
#[derive(Clone, Debug)]
pub struct RunOutcome<G> {
    pub history: History<G>,
    /// Final population, oldest first.
    pub population: Vec<Arc<Individual<G>>>,
    /// Highest-accuracy model in the history (ties to the smallest id).
    pub best: Arc<Individual<G>>,
}

/// A snapshot of a running experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progress {
    pub evaluated: usize,
    pub scheduled: usize,
    pub population: usize,
}

/// An experiment whose cycle loop is spread over `config.workers` threads.
///
/// Each worker repeatedly takes a ticket (and, for evolution, an `S`-sample)
/// under the lock, breeds and evaluates its child without the lock, then
/// commits the child and the removal under the lock. Exactly `config.cycles`
/// evaluations are scheduled. With one worker the loop runs on the calling
/// thread and the run is a pure function of the config.
pub struct Experiment<'a, S: SearchSpace, F> {
    config: EngineConfig,
    space: &'a S,
    evaluators: &'a F,
    state: Mutex<SearchState<S::Genotype>>,
}

struct WorkerSlot<E> {
    index: usize,
    rng: Stream,
    evaluator: E,
}

impl<'a, S, F> Experiment<'a, S, F>
where
    S: SearchSpace,
    F: EvaluatorFactory<S::Genotype>,
{
    pub fn new(config: EngineConfig, space: &'a S, evaluators: &'a F) -> Result<Self, EngineError> {
        config.validate()?;
        let state = Mutex::new(SearchState::new(config.population_size));
        Ok(Self {
            config,
            space,
            evaluators,
            state,
        })
    }

    /// Streams every history record to `log` as it is appended.
    pub fn with_log(self, log: HistoryLog) -> Self {
        let state = self.state.into_inner().unwrap_or_else(|e| e.into_inner());
        Self {
            state: Mutex::new(state.with_log(log)),
            ..self
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    fn lock(&self) -> MutexGuard<'_, SearchState<S::Genotype>> {
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn progress(&self) -> Progress {
        let state = self.lock();
        Progress {
            evaluated: state.history.len(),
            scheduled: state.scheduled,
            population: state.population.len(),
        }
    }

    pub fn run(&self) -> Result<RunOutcome<S::Genotype>, EngineError> {
        let mut slots = Vec::with_capacity(self.config.workers);
        for index in 0..self.config.workers {
            let evaluator = self
                .evaluators
                .worker(index)
                .map_err(|source| EngineError::EvaluatorStart { worker: index, source })?;
            slots.push(WorkerSlot {
                index,
                rng: worker_stream(self.config.seed, index),
                evaluator,
            });
        }
        self.run_phase(Phase::Init, &mut slots)?;
        self.run_phase(Phase::Evolve, &mut slots)?;

        let state = self.lock();
        Ok(RunOutcome {
            history: state.history.clone(),
            population: state.population.iter().cloned().collect(),
            best: Arc::clone(state.history.best().expect("budget is at least P >= 1")),
        })
    }

    fn run_phase(
        &self,
        phase: Phase,
        slots: &mut [WorkerSlot<F::Worker>],
    ) -> Result<(), EngineError> {
        let results: Vec<Result<(), EngineError>> = if slots.len() == 1 {
            vec![self.worker_loop(phase, &mut slots[0])]
        } else {
            thread::scope(|scope| {
                let handles: Vec<_> = slots
                    .iter_mut()
                    .map(|slot| scope.spawn(move || self.worker_loop(phase, slot)))
                    .collect();
                handles
                    .into_iter()
                    .enumerate()
                    .map(|(i, h)| h.join().unwrap_or(Err(EngineError::WorkerPanic(i))))
                    .collect()
            })
        };
        // Prefer the evaluation failure that caused the abort over follow-on errors.
        let mut errors: Vec<EngineError> = results.into_iter().filter_map(Result::err).collect();
        if errors.is_empty() {
            return Ok(());
        }
        let first = errors
            .iter()
            .position(|e| matches!(e, EngineError::Evaluation { .. }))
            .unwrap_or(0);
        let mut error = errors.swap_remove(first);
        // In-flight evaluations drained after the failure also joined the history.
        if let EngineError::Evaluation { completed, .. } = &mut error {
            *completed = self.lock().history.len();
        }
        Err(error)
    }

    fn abort(&self) {
        self.lock().aborted = true;
    }

    fn worker_loop(&self, phase: Phase, slot: &mut WorkerSlot<F::Worker>) -> Result<(), EngineError> {
        loop {
            let ticket = match self.lock().schedule(phase, &self.config, &mut slot.rng) {
                Some(ticket) => ticket,
                None => return Ok(()),
            };
            let outcome = catch_unwind(AssertUnwindSafe(|| {
                let child = breed(&ticket.job, self.space, self.config.identity_prob, &mut slot.rng);
                let record = evaluate(&mut slot.evaluator, &child.genotype, ticket.number, &mut slot.rng);
                (child, record)
            }));
            match outcome {
                Ok((child, Ok(record))) => {
                    let mut state = self.lock();
                    if let Err(e) = state.commit(ticket, child, record, &self.config, &mut slot.rng) {
                        state.aborted = true;
                        return Err(e);
                    }
                }
                Ok((child, Err(source))) => {
                    let mut state = self.lock();
                    state.aborted = true;
                    return Err(EngineError::Evaluation {
                        job: ticket.number,
                        completed: state.history.len(),
                        genotype: child.genotype.document(),
                        source,
                    });
                }
                Err(_) => {
                    self.abort();
                    return Err(EngineError::WorkerPanic(slot.index));
                }
            }
        }
    }
}

/// Runs a whole experiment: initialization, then cycles until the history
/// holds `config.cycles` models.
pub fn run_experiment<S, F>(
    config: &EngineConfig,
    space: &S,
    evaluators: &F,
) -> Result<RunOutcome<S::Genotype>, EngineError>
where
    S: SearchSpace,
    F: EvaluatorFactory<S::Genotype>,
{
    Experiment::new(config.clone(), space, evaluators)?.run()
}
