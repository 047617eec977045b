//! Exact layout numbers for small graphs.
//!
//! [`feasible`] decides whether a graph has a layout within a page budget by
//! exhaustive search with conflict pruning, twist/rainbow bounds and
//! reversal symmetry. The number functions minimise over budgets.

mod search;
mod twist;

use serde::{Deserialize, Serialize};

pub use twist::{max_rainbow, max_twist};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{LinearLayout, PageKind};
use crate::order::VertexOrder;

/// Default cap on the number of vertices the solver accepts.
pub const DEFAULT_MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PageBudget {
    pub stacks: usize,
    pub queues: usize,
    pub separated: bool,
}

impl PageBudget {
    pub fn new(stacks: usize, queues: usize) -> Self {
        PageBudget {
            stacks,
            queues,
            separated: false,
        }
    }

    pub fn separated(stacks: usize, queues: usize) -> Self {
        PageBudget {
            stacks,
            queues,
            separated: true,
        }
    }

    pub fn total(&self) -> usize {
        self.stacks + self.queues
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub feasible: bool,
    pub witness: Option<LinearLayout>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_vertices: usize,
    /// Fan the search out over rayon; ignored without the `parallel` feature.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_vertices: DEFAULT_MAX_VERTICES,
            parallel: crate::par::available(),
        }
    }
}

impl SolverConfig {
    pub fn sequential() -> Self {
        SolverConfig {
            parallel: false,
            ..Self::default()
        }
    }

    pub fn with_max_vertices(mut self, cap: usize) -> Self {
        self.max_vertices = cap;
        self
    }
}

/// Exact solver bound to one configuration.
#[derive(Debug, Clone, Copy, Default)]
pub struct Solver {
    pub config: SolverConfig,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Solver { config }
    }

    fn guard(&self, graph: &Graph) -> Result<()> {
        let cap = self.config.max_vertices.min(64);
        if graph.n() > cap {
            return Err(Error::TooLarge {
                vertices: graph.n(),
                cap,
            });
        }
        Ok(())
    }

    pub fn feasible(&self, graph: &Graph, budget: PageBudget) -> Result<SolveResult> {
        if budget.total() == 0 {
            return Err(Error::InvalidParameters(
                "a page budget needs at least one page".into(),
            ));
        }
        let sides = if budget.separated {
            Some(graph.sides().ok_or(Error::NoBipartition)?)
        } else {
            None
        };
        self.guard(graph)?;
        let kinds: Vec<PageKind> = std::iter::repeat(PageKind::Stack)
            .take(budget.stacks)
            .chain(std::iter::repeat(PageKind::Queue).take(budget.queues))
            .collect();
        let problem = search::Problem {
            graph,
            kinds,
            sides,
        };
        let (outcome, nodes_explored) = search::solve(&problem, self.config.parallel);
        let witness = match outcome {
            Some(o) => Some(LinearLayout::new(
                graph.clone(),
                VertexOrder::new(o.order)?,
                o.pages,
            )?),
            None => None,
        };
        Ok(SolveResult {
            feasible: witness.is_some(),
            witness,
            nodes_explored,
        })
    }

    fn first_feasible(
        &self,
        graph: &Graph,
        budgets: impl Iterator<Item = PageBudget>,
    ) -> Result<(PageBudget, LinearLayout)> {
        for b in budgets {
            let r = self.feasible(graph, b)?;
            if let Some(w) = r.witness {
                return Ok((b, w));
            }
        }
        unreachable!("every graph has a layout with one page per edge")
    }

    fn pure_number(&self, graph: &Graph, kind: PageKind, separated: bool) -> Result<(usize, LinearLayout)> {
        let m = graph.m().max(1);
        let (b, w) = self.first_feasible(
            graph,
            (1..=m).map(|k| {
                let mut b = match kind {
                    PageKind::Stack => PageBudget::new(k, 0),
                    PageKind::Queue => PageBudget::new(0, k),
                };
                b.separated = separated;
                b
            }),
        )?;
        Ok((b.total(), w))
    }

    fn mixed_min(&self, graph: &Graph, separated: bool) -> Result<(usize, LinearLayout)> {
        let m = graph.m().max(1);
        let budgets = (1..=m).flat_map(move |t| {
            (0..=t).map(move |s| PageBudget {
                stacks: s,
                queues: t - s,
                separated,
            })
        });
        let (b, w) = self.first_feasible(graph, budgets)?;
        Ok((b.total(), w))
    }

    pub fn stack_number(&self, graph: &Graph) -> Result<usize> {
        Ok(self.pure_number(graph, PageKind::Stack, false)?.0)
    }

    pub fn queue_number(&self, graph: &Graph) -> Result<usize> {
        Ok(self.pure_number(graph, PageKind::Queue, false)?.0)
    }

    pub fn mixed_number(&self, graph: &Graph) -> Result<usize> {
        Ok(self.mixed_min(graph, false)?.0)
    }

    pub fn separated_queue_number(&self, graph: &Graph) -> Result<usize> {
        Ok(self.pure_number(graph, PageKind::Queue, true)?.0)
    }

    /// Equal to the separated queue number: flipping the A-block turns
    /// queues into stacks.
    pub fn separated_stack_number(&self, graph: &Graph) -> Result<usize> {
        self.separated_queue_number(graph)
    }

    pub fn separated_mixed_number(&self, graph: &Graph) -> Result<usize> {
        Ok(self.mixed_min(graph, true)?.0)
    }

    /// Minimum for the given measure together with an optimal witness.
    pub fn minimize(&self, graph: &Graph, measure: Measure) -> Result<(usize, LinearLayout)> {
        match measure {
            Measure::Sn => self.pure_number(graph, PageKind::Stack, false),
            Measure::Qn => self.pure_number(graph, PageKind::Queue, false),
            Measure::Mn => self.mixed_min(graph, false),
            Measure::Sqn => self.pure_number(graph, PageKind::Queue, true),
            Measure::Smn => self.mixed_min(graph, true),
        }
    }
}

/// The layout numbers the solver can minimise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Sn,
    Qn,
    Mn,
    Sqn,
    Smn,
}

pub fn feasible(graph: &Graph, budget: PageBudget) -> Result<SolveResult> {
    Solver::default().feasible(graph, budget)
}

pub fn stack_number(graph: &Graph) -> Result<usize> {
    Solver::default().stack_number(graph)
}

pub fn queue_number(graph: &Graph) -> Result<usize> {
    Solver::default().queue_number(graph)
}

pub fn mixed_number(graph: &Graph) -> Result<usize> {
    Solver::default().mixed_number(graph)
}

pub fn separated_queue_number(graph: &Graph) -> Result<usize> {
    Solver::default().separated_queue_number(graph)
}

pub fn separated_stack_number(graph: &Graph) -> Result<usize> {
    Solver::default().separated_stack_number(graph)
}

pub fn separated_mixed_number(graph: &Graph) -> Result<usize> {
    Solver::default().separated_mixed_number(graph)
}
