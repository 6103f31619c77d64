//! Genetic search for gate-limited three-qubit adders.
//!
//! A genome is a fixed-capacity list of genes; `I` genes are inactive. Every
//! genome the search produces stays within the gate limit and the two-qubit
//! budget (CNOT and CH genes each cost one). Children are bred independently
//! from per-child RNG streams keyed by `(seed, generation, index)`, so runs
//! are reproducible regardless of thread count.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_distr::{Distribution as _, Normal};
use rayon::prelude::*;

use crate::adders::{adder_fidelity, mean_grid_fidelity, AdderSpec};
use crate::circuit::{Circuit, Control, Gate, GateApplication};
use crate::error::{Error, Result};
use crate::noise::NoiseModel;
use crate::sim::SeededRng;
use crate::text::{format_angle, parse_angle};

const N_QUBITS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneKind {
    I,
    X,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    Cnot,
    Ch,
}

impl GeneKind {
    pub const ALPHABET: [GeneKind; 13] = [
        GeneKind::I,
        GeneKind::X,
        GeneKind::Z,
        GeneKind::H,
        GeneKind::S,
        GeneKind::Sdg,
        GeneKind::T,
        GeneKind::Tdg,
        GeneKind::Rx,
        GeneKind::Ry,
        GeneKind::Rz,
        GeneKind::Cnot,
        GeneKind::Ch,
    ];

    const SINGLE: [GeneKind; 10] = [
        GeneKind::X,
        GeneKind::Z,
        GeneKind::H,
        GeneKind::S,
        GeneKind::Sdg,
        GeneKind::T,
        GeneKind::Tdg,
        GeneKind::Rx,
        GeneKind::Ry,
        GeneKind::Rz,
    ];

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, GeneKind::Cnot | GeneKind::Ch)
    }

    pub fn has_angle(&self) -> bool {
        matches!(self, GeneKind::Rx | GeneKind::Ry | GeneKind::Rz)
    }
}

/// One instruction. For two-qubit kinds `qubits[0]` is the control and
/// `qubits[1]` the target; single-qubit kinds act on `qubits[0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gene {
    pub kind: GeneKind,
    pub qubits: [usize; 2],
    pub angle: f64,
}

impl Gene {
    pub const IDENTITY: Gene = Gene {
        kind: GeneKind::I,
        qubits: [0, 1],
        angle: 0.0,
    };

    pub fn single(kind: GeneKind, qubit: usize, angle: f64) -> Gene {
        Gene {
            kind,
            qubits: [qubit, (qubit + 1) % N_QUBITS],
            angle,
        }
    }

    pub fn two(kind: GeneKind, control: usize, target: usize) -> Gene {
        Gene {
            kind,
            qubits: [control, target],
            angle: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let [a, b] = self.qubits;
        if a >= N_QUBITS || b >= N_QUBITS {
            return Err(Error::Index(format!("gene operands {a},{b} outside a 3-qubit register")));
        }
        if self.kind.is_two_qubit() && a == b {
            return Err(Error::Constraint(format!("two-qubit gene on repeated qubit {a}")));
        }
        if !self.angle.is_finite() {
            return Err(Error::Constraint("gene angle is not finite".into()));
        }
        Ok(())
    }

    /// `None` for `I`.
    pub fn application(&self) -> Option<GateApplication> {
        let q = self.qubits[0];
        let gate = match self.kind {
            GeneKind::I => return None,
            GeneKind::X => Gate::X,
            GeneKind::Z => Gate::Z,
            GeneKind::H => Gate::H,
            GeneKind::S => Gate::S,
            GeneKind::Sdg => Gate::Sdg,
            GeneKind::T => Gate::T,
            GeneKind::Tdg => Gate::Tdg,
            GeneKind::Rx => Gate::Rx(self.angle),
            GeneKind::Ry => Gate::Ry(self.angle),
            GeneKind::Rz => Gate::Rz(self.angle),
            GeneKind::Cnot | GeneKind::Ch => {
                let gate = if self.kind == GeneKind::Cnot { Gate::Cnot } else { Gate::Ch };
                return Some(
                    GateApplication::new(gate, vec![Control::on(q)], vec![self.qubits[1]])
                        .expect("validated distinct operands"),
                );
            }
        };
        Some(GateApplication::single(gate, q))
    }
}

/// Genes plus the limits they must respect.
#[derive(Debug, Clone, PartialEq)]
pub struct Genome {
    pub genes: Vec<Gene>,
    pub capacity: usize,
    pub cnot_budget: usize,
}

impl Genome {
    pub fn new(genes: Vec<Gene>, capacity: usize, cnot_budget: usize) -> Genome {
        Genome {
            genes,
            capacity,
            cnot_budget,
        }
    }

    pub fn empty(capacity: usize, cnot_budget: usize) -> Genome {
        Genome::new(Vec::new(), capacity, cnot_budget)
    }

    pub fn active_len(&self) -> usize {
        self.genes.iter().filter(|g| g.kind != GeneKind::I).count()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.genes.iter().filter(|g| g.kind.is_two_qubit()).count()
    }
}

pub fn decode_genome(genome: &Genome) -> Result<Circuit> {
    if genome.genes.len() > genome.capacity {
        return Err(Error::Constraint(format!(
            "genome holds {} genes, capacity is {}",
            genome.genes.len(),
            genome.capacity
        )));
    }
    let used = genome.two_qubit_count();
    if used > genome.cnot_budget {
        return Err(Error::Constraint(format!(
            "genome uses {used} two-qubit genes, budget is {}",
            genome.cnot_budget
        )));
    }
    let mut circuit = Circuit::new(N_QUBITS)?.with_name("ga");
    for gene in &genome.genes {
        gene.validate()?;
        if let Some(app) = gene.application() {
            circuit.push(app)?;
        }
    }
    Ok(circuit)
}

/// Mean adder fidelity of any three-qubit circuit over `grid`.
pub fn circuit_fitness(circuit: &Circuit, grid: &[(f64, f64)], noise: Option<&NoiseModel>) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::Config("fitness grid is empty".into()));
    }
    match noise {
        None => Ok(mean_grid_fidelity(circuit, grid)?.0),
        Some(model) => {
            let adder = AdderSpec::new(circuit.clone(), circuit.name())?;
            let mut sum = 0.0;
            for &(t1, t2) in grid {
                sum += adder_fidelity(&adder, t1, t2, Some(model))?;
            }
            Ok(sum / grid.len() as f64)
        }
    }
}

pub fn fitness(genome: &Genome, grid: &[(f64, f64)], noise: Option<&NoiseModel>) -> Result<f64> {
    circuit_fitness(&decode_genome(genome)?, grid, noise)
}

/// `{0, pi/8, pi/4, 3pi/8, pi/2}^2`
pub fn default_grid() -> Vec<(f64, f64)> {
    let axis = [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, FRAC_PI_2];
    axis.iter().flat_map(|&a| axis.iter().map(move |&b| (a, b))).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    pub tournament: usize,
    pub elitism: usize,
    pub mutation_rate: f64,
    pub angle_sigma: f64,
    pub grid: Vec<(f64, f64)>,
    pub cnot_budget: usize,
    pub gate_limit: usize,
    pub seed: u64,
    /// Noise-aware fitness; off by default.
    pub noise: Option<NoiseModel>,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population: 100,
            generations: 300,
            tournament: 3,
            elitism: 1,
            mutation_rate: 0.1,
            angle_sigma: 0.1,
            grid: default_grid(),
            cnot_budget: 2,
            gate_limit: 20,
            seed: 42,
            noise: None,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.population < 2 {
            return bad(format!("population must be at least 2, got {}", self.population));
        }
        if self.generations < 1 {
            return bad("generations must be at least 1".into());
        }
        if self.tournament < 1 || self.tournament > self.population {
            return bad(format!("tournament size {} outside 1..={}", self.tournament, self.population));
        }
        if self.elitism < 1 || self.elitism > self.population {
            return bad(format!("elitism {} outside 1..={}", self.elitism, self.population));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad(format!("mutation rate {} outside [0, 1]", self.mutation_rate));
        }
        if !(self.angle_sigma.is_finite() && self.angle_sigma >= 0.0) {
            return bad(format!("angle sigma {} must be finite and non-negative", self.angle_sigma));
        }
        if self.grid.is_empty() || self.grid.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return bad("fitness grid must be a non-empty list of finite angle pairs".into());
        }
        if self.gate_limit < 1 {
            return bad("gate limit must be at least 1".into());
        }
        if let Some(model) = &self.noise {
            model.validate()?;
        }
        Ok(())
    }

    /// `key = value` lines; `#` starts a comment. Missing keys keep their
    /// defaults. `grid` is a `;`-separated list of `theta1 theta2` pairs and
    /// `grid_axis` a list of angles whose square product becomes the grid.
    /// `noise = advanced` enables noise-aware fitness.
    pub fn parse(text: &str) -> Result<GaConfig> {
        let mut cfg = GaConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!("line {}: expected key = value", n + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            let err = |what: &str| Error::Config(format!("line {}: invalid {what} `{value}`", n + 1));
            let int = |what: &str| value.parse::<usize>().map_err(|_| err(what));
            let real = |what: &str| value.parse::<f64>().map_err(|_| err(what));
            let angle = |s: &str| parse_angle(s).ok_or_else(|| err("angle"));
            match key {
                "population" => cfg.population = int(key)?,
                "generations" => cfg.generations = int(key)?,
                "tournament" => cfg.tournament = int(key)?,
                "elitism" => cfg.elitism = int(key)?,
                "mutation_rate" => cfg.mutation_rate = real(key)?,
                "angle_sigma" => cfg.angle_sigma = real(key)?,
                "cnot_budget" => cfg.cnot_budget = int(key)?,
                "gate_limit" => cfg.gate_limit = int(key)?,
                "seed" => cfg.seed = value.parse::<u64>().map_err(|_| err(key))?,
                "grid" => {
                    cfg.grid = value
                        .split(';')
                        .filter(|p| !p.trim().is_empty())
                        .map(|pair| {
                            let parts: Vec<&str> = pair.split([' ', ',', '\t']).filter(|s| !s.is_empty()).collect();
                            match parts.as_slice() {
                                [a, b] => Ok((angle(a)?, angle(b)?)),
                                _ => Err(err("grid pair")),
                            }
                        })
                        .collect::<Result<_>>()?;
                }
                "grid_axis" => {
                    let axis: Vec<f64> = value
                        .split(',')
                        .filter(|p| !p.trim().is_empty())
                        .map(angle)
                        .collect::<Result<_>>()?;
                    cfg.grid = axis.iter().flat_map(|&a| axis.iter().map(move |&b| (a, b))).collect();
                }
                "noise" => {
                    cfg.noise = match value.to_ascii_lowercase().as_str() {
                        "none" | "off" => None,
                        "advanced" => Some(NoiseModel::ADVANCED),
                        _ => return Err(err("noise setting")),
                    }
                }
                _ => return Err(Error::Config(format!("line {}: unknown key `{key}`", n + 1))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl fmt::Display for GaConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "population = {}", self.population)?;
        writeln!(f, "generations = {}", self.generations)?;
        writeln!(f, "tournament = {}", self.tournament)?;
        writeln!(f, "elitism = {}", self.elitism)?;
        writeln!(f, "mutation_rate = {}", self.mutation_rate)?;
        writeln!(f, "angle_sigma = {}", self.angle_sigma)?;
        writeln!(f, "cnot_budget = {}", self.cnot_budget)?;
        writeln!(f, "gate_limit = {}", self.gate_limit)?;
        writeln!(f, "seed = {}", self.seed)?;
        let pairs: Vec<String> = self
            .grid
            .iter()
            .map(|(a, b)| format!("{} {}", format_angle(*a), format_angle(*b)))
            .collect();
        writeln!(f, "grid = {}", pairs.join("; "))?;
        if self.noise.is_some() {
            writeln!(f, "noise = advanced")?;
        }
        Ok(())
    }
}

impl FromStr for GaConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GaConfig::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaResult {
    pub best: Genome,
    pub circuit: Circuit,
    /// Best fitness of the initial population followed by one entry per
    /// generation.
    pub history: Vec<f64>,
    pub average: f64,
    pub minimum: f64,
    pub minimum_input: (f64, f64),
}

impl GaResult {
    pub fn history_csv(&self) -> String {
        let mut out = String::from("generation,best_fitness\n");
        for (g, f) in self.history.iter().enumerate() {
            out.push_str(&format!("{g},{f}\n"));
        }
        out
    }
}

fn stream_rng(seed: u64, generation: usize, index: usize) -> SeededRng {
    let mut rng = SeededRng::seed_from_u64(seed);
    rng.set_stream(((generation as u64) << 32) | index as u64);
    rng
}

fn random_angle(rng: &mut SeededRng) -> f64 {
    rng.random_range(-PI..PI)
}

fn random_pair(rng: &mut SeededRng) -> [usize; 2] {
    let a = rng.random_range(0..N_QUBITS);
    let b = (a + rng.random_range(1..N_QUBITS)) % N_QUBITS;
    [a, b]
}

fn random_gene(rng: &mut SeededRng, kinds: &[GeneKind]) -> Gene {
    let kind = kinds[rng.random_range(0..kinds.len())];
    let qubits = random_pair(rng);
    let angle = if kind.has_angle() { random_angle(rng) } else { 0.0 };
    Gene { kind, qubits, angle }
}

/// Turns two-qubit genes past the budget into random single-qubit genes.
fn repair(genome: &mut Genome, rng: &mut SeededRng) {
    let mut used = 0;
    for gene in genome.genes.iter_mut() {
        if gene.kind.is_two_qubit() {
            used += 1;
            if used > genome.cnot_budget {
                let replacement = random_gene(rng, &GeneKind::SINGLE);
                *gene = Gene {
                    qubits: [gene.qubits[1], gene.qubits[0]],
                    ..replacement
                };
            }
        }
    }
}

fn mutate(genome: &mut Genome, cfg: &GaConfig, rng: &mut SeededRng) {
    let jitter = Normal::new(0.0, cfg.angle_sigma).expect("validated sigma");
    for gene in genome.genes.iter_mut() {
        if rng.random::<f64>() >= cfg.mutation_rate {
            continue;
        }
        match rng.random_range(0..3) {
            0 => *gene = random_gene(rng, &GeneKind::ALPHABET),
            1 => gene.qubits = random_pair(rng),
            _ if gene.kind.has_angle() => gene.angle += jitter.sample(rng),
            _ => gene.qubits = random_pair(rng),
        }
    }
}

fn tournament<'a>(pop: &'a [(Genome, f64)], size: usize, rng: &mut SeededRng) -> &'a Genome {
    let mut best = rng.random_range(0..pop.len());
    for _ in 1..size {
        let k = rng.random_range(0..pop.len());
        if pop[k].1 > pop[best].1 || (pop[k].1 == pop[best].1 && k < best) {
            best = k;
        }
    }
    &pop[best].0
}

fn crossover(a: &Genome, b: &Genome, rng: &mut SeededRng) -> Genome {
    let cut = rng.random_range(0..=a.genes.len());
    let mut genes = a.genes[..cut].to_vec();
    genes.extend_from_slice(&b.genes[cut..]);
    Genome::new(genes, a.capacity, a.cnot_budget)
}

fn evaluate(genomes: Vec<Genome>, cfg: &GaConfig) -> Result<Vec<(Genome, f64)>> {
    let scores: Vec<f64> = genomes
        .par_iter()
        .map(|g| fitness(g, &cfg.grid, cfg.noise.as_ref()))
        .collect::<Result<_>>()?;
    let mut scored: Vec<(Genome, f64)> = genomes.into_iter().zip(scores).collect();
    // stable: ties keep their index order
    scored.sort_by(|x, y| y.1.total_cmp(&x.1));
    Ok(scored)
}

pub fn evolve(cfg: &GaConfig) -> Result<GaResult> {
    cfg.validate()?;
    let initial: Vec<Genome> = (0..cfg.population)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, 0, i);
            let genes = (0..cfg.gate_limit).map(|_| random_gene(&mut rng, &GeneKind::ALPHABET)).collect();
            let mut g = Genome::new(genes, cfg.gate_limit, cfg.cnot_budget);
            repair(&mut g, &mut rng);
            g
        })
        .collect();
    let mut pop = evaluate(initial, cfg)?;
    let mut history = vec![pop[0].1];

    for generation in 1..=cfg.generations {
        let parents = &pop;
        let children: Vec<Genome> = (cfg.elitism..cfg.population)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(cfg.seed, generation, i);
                let a = tournament(parents, cfg.tournament, &mut rng);
                let b = tournament(parents, cfg.tournament, &mut rng);
                let mut child = crossover(a, b, &mut rng);
                mutate(&mut child, cfg, &mut rng);
                repair(&mut child, &mut rng);
                child
            })
            .collect();
        let next: Vec<Genome> = pop[..cfg.elitism].iter().map(|(g, _)| g.clone()).chain(children).collect();
        pop = evaluate(next, cfg)?;
        history.push(pop[0].1);
    }

    let best = pop.swap_remove(0).0;
    let circuit = decode_genome(&best)?;
    let (average, minimum, argmin) = mean_grid_fidelity(&circuit, &cfg.grid)?;
    Ok(GaResult {
        best,
        circuit,
        history,
        average,
        minimum,
        minimum_input: cfg.grid[argmin],
    })
}

/// The evolved adder and its decoder, the adder's dagger.
pub fn ga_autoencoder(result: &GaResult) -> Result<(AdderSpec, Circuit)> {
    let adder = AdderSpec::new(result.circuit.clone(), "ga")?;
    let decoder = result.circuit.dagger();
    Ok((adder, decoder))
}
