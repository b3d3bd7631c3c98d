//! Domain types for Multistage Min-Sum Set Cover and cost accounting.
//!
//! Positions are 1-indexed everywhere in the public API. Storage is 0-indexed.

use std::fmt;

use crate::distances::kendall_tau;
use crate::error::{MsscError, Result};

/// Dense element identifier in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(v: usize) -> Self {
        ElementId(v as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A bijection between positions and elements with O(1) lookup both ways.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    forward: Vec<ElementId>,
    inverse: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            forward: (0..n).map(ElementId::from).collect(),
            inverse: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from the element order (front first).
    pub fn from_order<I>(order: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<ElementId>,
    {
        let forward: Vec<ElementId> = order.into_iter().map(Into::into).collect();
        let n = forward.len();
        let mut inverse = vec![u32::MAX; n];
        for (pos, e) in forward.iter().enumerate() {
            let id = e.index();
            if id >= n {
                return Err(MsscError::ElementOutOfRange { id, n });
            }
            if inverse[id] != u32::MAX {
                return Err(MsscError::NotAPermutation(format!(
                    "element {id} appears more than once"
                )));
            }
            inverse[id] = pos as u32;
        }
        Ok(Permutation { forward, inverse })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Element at 1-indexed position `pos`.
    #[inline]
    pub fn element_at(&self, pos: usize) -> ElementId {
        self.forward[pos - 1]
    }

    /// 1-indexed position of `e`.
    #[inline]
    pub fn position(&self, e: ElementId) -> usize {
        self.inverse[e.index()] as usize + 1
    }

    /// Elements front to back.
    pub fn order(&self) -> &[ElementId] {
        &self.forward
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.forward.iter().map(|e| e.index()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.forward.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// A nonempty set of elements, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Request {
    members: Vec<ElementId>,
}

impl Request {
    pub fn new<I>(members: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<ElementId>,
    {
        let mut members: Vec<ElementId> = members.into_iter().map(Into::into).collect();
        if members.is_empty() {
            return Err(MsscError::EmptyRequest);
        }
        members.sort_unstable();
        let before = members.len();
        members.dedup();
        if members.len() != before {
            return Err(MsscError::InvalidInstance("duplicate element in request".into()));
        }
        Ok(Request { members })
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.members.binary_search(&e).is_ok()
    }
}

/// A validated Mult-MSSC instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    pi0: Permutation,
    requests: Vec<Request>,
}

impl Instance {
    pub fn new(pi0: Permutation, requests: Vec<Request>) -> Result<Self> {
        let n = pi0.len();
        for r in &requests {
            if let Some(bad) = r.members().iter().find(|e| e.index() >= n) {
                return Err(MsscError::ElementOutOfRange { id: bad.index(), n });
            }
        }
        Ok(Instance { n, pi0, requests })
    }

    /// Convenience constructor from plain indices.
    pub fn from_indices(pi0: &[usize], requests: &[Vec<usize>]) -> Result<Self> {
        let pi0 = Permutation::from_order(pi0.iter().copied())?;
        let requests = requests
            .iter()
            .map(|r| Request::new(r.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(pi0, requests)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Horizon T.
    pub fn horizon(&self) -> usize {
        self.requests.len()
    }

    pub fn pi0(&self) -> &Permutation {
        &self.pi0
    }

    pub fn requests(&self) -> &[Request] {
        &self.requests
    }

    /// Largest request cardinality (0 for an empty horizon).
    pub fn r_bound(&self) -> usize {
        self.requests.iter().map(Request::len).max().unwrap_or(0)
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            n: self.n,
            pi0: self.pi0.to_indices(),
            requests: self
                .requests
                .iter()
                .map(|r| r.members().iter().map(|e| e.index()).collect())
                .collect(),
        }
    }
}

/// Unchecked instance data, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub n: usize,
    pub pi0: Vec<usize>,
    pub requests: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `round` is 0 for the initial permutation, `t` for request `R_t`.
    ElementOutOfRange { round: usize, id: usize },
    WrongPermutationLength { expected: usize, actual: usize },
    NotABijection { duplicate: usize },
    EmptyRequest { round: usize },
    DuplicateInRequest { round: usize, id: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ElementOutOfRange { round: 0, id } => {
                write!(f, "element id out of range: {id} in pi0")
            }
            Violation::ElementOutOfRange { round, id } => {
                write!(f, "element id out of range: {id} in request {round}")
            }
            Violation::WrongPermutationLength { expected, actual } => {
                write!(f, "pi0 has {actual} entries, expected {expected}")
            }
            Violation::NotABijection { duplicate } => {
                write!(f, "pi0 is not a bijection: {duplicate} repeated")
            }
            Violation::EmptyRequest { round } => write!(f, "request {round} is empty"),
            Violation::DuplicateInRequest { round, id } => {
                write!(f, "request {round} lists {id} twice")
            }
        }
    }
}

/// Collects every violated invariant of a raw instance. An empty list means ok.
pub fn validate_instance(raw: &RawInstance) -> Vec<Violation> {
    let n = raw.n;
    let mut out = Vec::new();
    if raw.pi0.len() != n {
        out.push(Violation::WrongPermutationLength {
            expected: n,
            actual: raw.pi0.len(),
        });
    }
    let mut seen = vec![false; n];
    for &id in &raw.pi0 {
        if id >= n {
            out.push(Violation::ElementOutOfRange { round: 0, id });
        } else if seen[id] {
            out.push(Violation::NotABijection { duplicate: id });
        } else {
            seen[id] = true;
        }
    }
    for (k, req) in raw.requests.iter().enumerate() {
        let round = k + 1;
        if req.is_empty() {
            out.push(Violation::EmptyRequest { round });
        }
        let mut seen = vec![false; n];
        for &id in req {
            if id >= n {
                out.push(Violation::ElementOutOfRange { round, id });
            } else if seen[id] {
                out.push(Violation::DuplicateInRequest { round, id });
            } else {
                seen[id] = true;
            }
        }
    }
    out
}

impl RawInstance {
    pub fn into_instance(self) -> std::result::Result<Instance, Vec<Violation>> {
        let violations = validate_instance(&self);
        if !violations.is_empty() {
            return Err(violations);
        }
        // Validation guarantees these cannot fail.
        Ok(Instance::from_indices(&self.pi0, &self.requests).expect("validated instance"))
    }
}

/// Position of the first element of `request` in `pi` (1-indexed).
pub fn covering_cost(pi: &Permutation, request: &Request) -> usize {
    request
        .members()
        .iter()
        .map(|&e| pi.position(e))
        .min()
        .expect("requests are nonempty")
}

/// The permutations `π¹..π^T` chosen by an algorithm; `π⁰` belongs to the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSequence {
    pub perms: Vec<Permutation>,
}

impl SolutionSequence {
    pub fn new(perms: Vec<Permutation>) -> Self {
        SolutionSequence { perms }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Element used to cover each request (the first request member in `π^t`).
    pub fn covering_elements(&self, inst: &Instance) -> Vec<ElementId> {
        self.perms
            .iter()
            .zip(inst.requests())
            .map(|(pi, req)| pi.element_at(covering_cost(pi, req)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CostReport {
    pub covering: Vec<u64>,
    pub moving: Vec<u64>,
    pub total_covering: u64,
    pub total_moving: u64,
    pub total: u64,
}

impl CostReport {
    fn from_rounds(covering: Vec<u64>, moving: Vec<u64>) -> Self {
        let total_covering = covering.iter().sum();
        let total_moving = moving.iter().sum();
        CostReport {
            covering,
            moving,
            total_covering,
            total_moving,
            total: total_covering + total_moving,
        }
    }
}

/// Covering plus Kendall-Tau moving cost of `sol` on `inst`.
pub fn total_cost(inst: &Instance, sol: &SolutionSequence) -> Result<CostReport> {
    if sol.len() != inst.horizon() {
        return Err(MsscError::SizeMismatch {
            expected: inst.horizon(),
            actual: sol.len(),
        });
    }
    let mut covering = Vec::with_capacity(sol.len());
    let mut moving = Vec::with_capacity(sol.len());
    let mut prev = inst.pi0();
    for (pi, req) in sol.perms.iter().zip(inst.requests()) {
        if pi.len() != inst.n() {
            return Err(MsscError::SizeMismatch {
                expected: inst.n(),
                actual: pi.len(),
            });
        }
        covering.push(covering_cost(pi, req) as u64);
        moving.push(kendall_tau(prev, pi)?);
        prev = pi;
    }
    Ok(CostReport::from_rounds(covering, moving))
}
