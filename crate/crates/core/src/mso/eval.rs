//! Reference semantics by exhaustive search.
//!
//! Formulas are compiled to an arena with numbered variable slots and then
//! evaluated in three-valued logic over partially decided sets: a set
//! variable is a pair of bitmasks (which elements are decided, and which of
//! those are members). Set quantifiers and free set variables are searched
//! element by element, and a branch is cut as soon as the formula's value
//! no longer depends on the undecided elements. Closed first-order
//! subformulas are memoised on the values of their free element variables.

use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::ast::{Declarations, Formula, Sort};
use super::check::check;
use super::model::Model;
use super::MsoError;
use crate::triangulation::FaceRef;

/// Largest carrier a set variable may range over.
pub const MAX_SET_CARRIER: usize = 128;

/// Default cap on search steps.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum T3 {
    F,
    T,
    U,
}

impl T3 {
    fn from(b: bool) -> T3 {
        if b {
            T3::T
        } else {
            T3::F
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Elem(usize),
    Set(usize),
}

enum Kind {
    Const(bool),
    And(Vec<usize>),
    Or(Vec<usize>),
    Not(usize),
    Quant {
        exists: bool,
        slot: usize,
        carrier: usize,
        body: usize,
    },
    SetQuant {
        exists: bool,
        slot: usize,
        carrier: usize,
        body: usize,
    },
    EqElem(usize, usize),
    EqSet(usize, usize),
    In(usize, usize),
    Inc(usize, usize),
    Adj(usize, usize),
    Col(usize, usize),
    Adjc(usize, usize, usize),
    Sub {
        pi: Vec<usize>,
        fdim: usize,
        sdim: usize,
        f: usize,
        s: usize,
    },
}

struct Node {
    kind: Kind,
    elem_deps: Vec<usize>,
    set_deps: Vec<usize>,
    memo: bool,
}

const MEMO_KEY: usize = 4;

struct Program {
    nodes: Vec<Node>,
    root: usize,
    elem_sorts: Vec<Sort>,
    set_carriers: Vec<usize>,
    free: Vec<Slot>,
}

struct Compiler<'m, 'a> {
    model: &'m Model<'a>,
    nodes: Vec<Node>,
    scope: HashMap<String, Vec<Slot>>,
    elem_sorts: Vec<Sort>,
    set_carriers: Vec<usize>,
}

fn merge(a: &mut Vec<usize>, b: &[usize]) {
    for &x in b {
        if let Err(p) = a.binary_search(&x) {
            a.insert(p, x);
        }
    }
}

impl Compiler<'_, '_> {
    fn bind(&mut self, name: &str, sort: Sort) -> Result<Slot, MsoError> {
        let slot = if sort.is_set() {
            let carrier = self.model.carrier(sort);
            if carrier > MAX_SET_CARRIER {
                return Err(MsoError::CarrierTooLarge {
                    sort: sort.to_string(),
                    size: carrier,
                });
            }
            self.set_carriers.push(carrier);
            Slot::Set(self.set_carriers.len() - 1)
        } else {
            self.elem_sorts.push(sort);
            Slot::Elem(self.elem_sorts.len() - 1)
        };
        self.scope.entry(name.to_string()).or_default().push(slot);
        Ok(slot)
    }

    fn unbind(&mut self, name: &str) {
        self.scope.get_mut(name).unwrap().pop();
    }

    fn lookup(&self, name: &str) -> Slot {
        *self.scope[name].last().expect("sort-checked formula")
    }

    fn elem(&self, name: &str) -> usize {
        match self.lookup(name) {
            Slot::Elem(i) => i,
            Slot::Set(_) => unreachable!("sort-checked formula"),
        }
    }

    fn set(&self, name: &str) -> usize {
        match self.lookup(name) {
            Slot::Set(i) => i,
            Slot::Elem(_) => unreachable!("sort-checked formula"),
        }
    }

    fn push(&mut self, kind: Kind, elem_deps: Vec<usize>, set_deps: Vec<usize>, quantified: bool) -> usize {
        let memo = quantified && set_deps.is_empty() && elem_deps.len() <= MEMO_KEY;
        self.nodes.push(Node {
            kind,
            elem_deps,
            set_deps,
            memo,
        });
        self.nodes.len() - 1
    }

    /// Returns the node and whether it contains a quantifier.
    fn compile(&mut self, f: &Formula) -> Result<(usize, bool), MsoError> {
        let leaf = |c: &mut Self, kind: Kind, elems: Vec<usize>, sets: Vec<usize>| {
            let mut e = elems;
            e.sort_unstable();
            e.dedup();
            Ok((c.push(kind, e, sets, false), false))
        };
        match f {
            Formula::True => leaf(self, Kind::Const(true), vec![], vec![]),
            Formula::False => leaf(self, Kind::Const(false), vec![], vec![]),
            Formula::And(ps) | Formula::Or(ps) => {
                let mut kids = Vec::with_capacity(ps.len());
                let (mut e, mut s, mut q) = (Vec::new(), Vec::new(), false);
                for p in ps {
                    let (k, kq) = self.compile(p)?;
                    merge(&mut e, &self.nodes[k].elem_deps.clone());
                    merge(&mut s, &self.nodes[k].set_deps.clone());
                    q |= kq;
                    kids.push(k);
                }
                let kind = if matches!(f, Formula::And(_)) {
                    Kind::And(kids)
                } else {
                    Kind::Or(kids)
                };
                Ok((self.push(kind, e, s, q), q))
            }
            Formula::Not(p) => {
                let (k, q) = self.compile(p)?;
                let (e, s) = (self.nodes[k].elem_deps.clone(), self.nodes[k].set_deps.clone());
                Ok((self.push(Kind::Not(k), e, s, q), q))
            }
            Formula::Implies(a, b) => self.compile(&Formula::Or(vec![Formula::Not(a.clone()), (**b).clone()])),
            Formula::Forall(sort, v, body) | Formula::Exists(sort, v, body) => {
                let exists = matches!(f, Formula::Exists(..));
                let slot = self.bind(v, *sort)?;
                let (b, _) = self.compile(body)?;
                self.unbind(v);
                let (mut e, mut s) = (self.nodes[b].elem_deps.clone(), self.nodes[b].set_deps.clone());
                let carrier = self.model.carrier(*sort);
                let kind = match slot {
                    Slot::Elem(i) => {
                        e.retain(|&x| x != i);
                        Kind::Quant {
                            exists,
                            slot: i,
                            carrier,
                            body: b,
                        }
                    }
                    Slot::Set(i) => {
                        s.retain(|&x| x != i);
                        Kind::SetQuant {
                            exists,
                            slot: i,
                            carrier,
                            body: b,
                        }
                    }
                };
                Ok((self.push(kind, e, s, true), true))
            }
            Formula::Eq(a, b) => match (self.lookup(a), self.lookup(b)) {
                (Slot::Elem(x), Slot::Elem(y)) => leaf(self, Kind::EqElem(x, y), vec![x, y], vec![]),
                (Slot::Set(x), Slot::Set(y)) => {
                    let mut s = vec![x, y];
                    s.sort_unstable();
                    s.dedup();
                    leaf(self, Kind::EqSet(x, y), vec![], s)
                }
                _ => unreachable!("sort-checked formula"),
            },
            Formula::In(x, set) => {
                let (x, set) = (self.elem(x), self.set(set));
                leaf(self, Kind::In(x, set), vec![x], vec![set])
            }
            Formula::Inc(e, v) => {
                let (e, v) = (self.elem(e), self.elem(v));
                leaf(self, Kind::Inc(e, v), vec![e, v], vec![])
            }
            Formula::Adj(u, v) => {
                let (u, v) = (self.elem(u), self.elem(v));
                leaf(self, Kind::Adj(u, v), vec![u, v], vec![])
            }
            Formula::Col(c, e) => {
                let e = self.elem(e);
                leaf(self, Kind::Col(*c, e), vec![e], vec![])
            }
            Formula::Adjc(c, u, v) => {
                let (u, v) = (self.elem(u), self.elem(v));
                leaf(self, Kind::Adjc(*c, u, v), vec![u, v], vec![])
            }
            Formula::Sub(pi, a, b) => {
                let (fa, fb) = (self.elem(a), self.elem(b));
                let (Sort::Face(fdim), Sort::Face(sdim)) = (self.elem_sorts[fa], self.elem_sorts[fb]) else {
                    unreachable!("sort-checked formula")
                };
                let pi = pi.iter().map(|&p| p as usize).collect();
                leaf(
                    self,
                    Kind::Sub {
                        pi,
                        fdim,
                        sdim,
                        f: fa,
                        s: fb,
                    },
                    vec![fa, fb],
                    vec![],
                )
            }
        }
    }
}

fn compile(model: &Model<'_>, formula: &Formula, free: &Declarations) -> Result<Program, MsoError> {
    check(formula, model.signature(), free)?;
    let mut c = Compiler {
        model,
        nodes: Vec::new(),
        scope: HashMap::new(),
        elem_sorts: Vec::new(),
        set_carriers: Vec::new(),
    };
    let mut slots = Vec::with_capacity(free.len());
    for (name, sort) in free {
        slots.push(c.bind(name, *sort)?);
    }
    let (root, _) = c.compile(formula)?;
    Ok(Program {
        nodes: c.nodes,
        root,
        elem_sorts: c.elem_sorts,
        set_carriers: c.set_carriers,
        free: slots,
    })
}

fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

struct Engine<'p, 'm, 'a> {
    model: &'m Model<'a>,
    prog: &'p Program,
    elems: Vec<usize>,
    known: Vec<u128>,
    value: Vec<u128>,
    memo: HashMap<(u32, [u32; MEMO_KEY]), bool>,
    steps: u64,
    budget: u64,
    exceeded: bool,
}

impl<'p, 'm, 'a> Engine<'p, 'm, 'a> {
    fn new(model: &'m Model<'a>, prog: &'p Program, budget: u64) -> Self {
        Engine {
            model,
            prog,
            elems: vec![0; prog.elem_sorts.len()],
            known: vec![0; prog.set_carriers.len()],
            value: vec![0; prog.set_carriers.len()],
            memo: HashMap::new(),
            steps: 0,
            budget,
            exceeded: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.steps += 1;
        if self.steps > self.budget {
            self.exceeded = true;
        }
        !self.exceeded
    }

    fn fully_known(&self, set: usize) -> bool {
        self.known[set] == full_mask(self.prog.set_carriers[set])
    }

    fn memo_key(&self, n: usize) -> (u32, [u32; MEMO_KEY]) {
        let mut key = [u32::MAX; MEMO_KEY];
        for (k, &slot) in self.prog.nodes[n].elem_deps.iter().enumerate() {
            key[k] = self.elems[slot] as u32;
        }
        (n as u32, key)
    }

    fn eval(&mut self, n: usize) -> T3 {
        let node = &self.prog.nodes[n];
        match &node.kind {
            Kind::Const(b) => T3::from(*b),
            Kind::And(kids) => {
                let mut unknown = false;
                for &k in kids {
                    match self.eval(k) {
                        T3::F => return T3::F,
                        T3::U => unknown = true,
                        T3::T => {}
                    }
                }
                if unknown {
                    T3::U
                } else {
                    T3::T
                }
            }
            Kind::Or(kids) => {
                let mut unknown = false;
                for &k in kids {
                    match self.eval(k) {
                        T3::T => return T3::T,
                        T3::U => unknown = true,
                        T3::F => {}
                    }
                }
                if unknown {
                    T3::U
                } else {
                    T3::F
                }
            }
            Kind::Not(k) => match self.eval(*k) {
                T3::T => T3::F,
                T3::F => T3::T,
                T3::U => T3::U,
            },
            Kind::Quant {
                exists,
                slot,
                carrier,
                body,
            } => {
                let (exists, slot, carrier, body) = (*exists, *slot, *carrier, *body);
                let key = node.memo.then(|| self.memo_key(n));
                if let Some(key) = key {
                    if let Some(&b) = self.memo.get(&key) {
                        return T3::from(b);
                    }
                }
                let saved = self.elems[slot];
                let mut unknown = false;
                let mut result = None;
                for x in 0..carrier {
                    self.elems[slot] = x;
                    match self.eval(body) {
                        T3::T if exists => {
                            result = Some(T3::T);
                            break;
                        }
                        T3::F if !exists => {
                            result = Some(T3::F);
                            break;
                        }
                        T3::U => unknown = true,
                        _ => {}
                    }
                }
                self.elems[slot] = saved;
                let r = result.unwrap_or(if unknown { T3::U } else { T3::from(!exists) });
                if let (Some(key), false) = (key, self.exceeded) {
                    if r != T3::U {
                        self.memo.insert(key, r == T3::T);
                    }
                }
                r
            }
            Kind::SetQuant {
                exists,
                slot,
                carrier,
                body,
            } => {
                let (exists, slot, carrier, body) = (*exists, *slot, *carrier, *body);
                if !node.set_deps.iter().all(|&s| self.fully_known(s)) {
                    return T3::U;
                }
                let key = node.memo.then(|| self.memo_key(n));
                if let Some(key) = key {
                    if let Some(&b) = self.memo.get(&key) {
                        return T3::from(b);
                    }
                }
                let saved = (self.known[slot], self.value[slot]);
                self.known[slot] = 0;
                self.value[slot] = 0;
                let r = self.set_branch(slot, 0, carrier, body, exists);
                (self.known[slot], self.value[slot]) = saved;
                if let (Some(key), false) = (key, self.exceeded) {
                    if r != T3::U {
                        self.memo.insert(key, r == T3::T);
                    }
                }
                r
            }
            Kind::EqElem(a, b) => T3::from(self.elems[*a] == self.elems[*b]),
            Kind::EqSet(a, b) => {
                let k = self.known[*a] & self.known[*b];
                if (self.value[*a] ^ self.value[*b]) & k != 0 {
                    T3::F
                } else if self.fully_known(*a) && self.fully_known(*b) {
                    T3::T
                } else {
                    T3::U
                }
            }
            Kind::In(x, set) => {
                let bit = 1u128 << self.elems[*x];
                if self.known[*set] & bit == 0 {
                    T3::U
                } else {
                    T3::from(self.value[*set] & bit != 0)
                }
            }
            Kind::Inc(e, v) => T3::from(self.model.inc(self.elems[*e], self.elems[*v])),
            Kind::Adj(u, v) => T3::from(self.model.adj(self.elems[*u], self.elems[*v])),
            Kind::Col(c, e) => T3::from(self.model.col(*c, self.elems[*e])),
            Kind::Adjc(c, u, v) => T3::from(self.model.adjc(*c, self.elems[*u], self.elems[*v])),
            Kind::Sub { pi, fdim, sdim, f, s } => {
                let fr = FaceRef {
                    dim: *fdim,
                    id: self.elems[*f],
                };
                let sr = FaceRef {
                    dim: *sdim,
                    id: self.elems[*s],
                };
                T3::from(self.model.sub(pi, fr, sr))
            }
        }
    }

    /// Decides elements `idx..` of a quantified set.
    fn set_branch(&mut self, slot: usize, idx: usize, carrier: usize, body: usize, exists: bool) -> T3 {
        if !self.tick() {
            return T3::U;
        }
        let r = self.eval(body);
        if r != T3::U || idx == carrier {
            return r;
        }
        let bit = 1u128 << idx;
        self.known[slot] |= bit;
        let mut unknown = false;
        let mut result = None;
        for member in [false, true] {
            if member {
                self.value[slot] |= bit;
            } else {
                self.value[slot] &= !bit;
            }
            let s = self.set_branch(slot, idx + 1, carrier, body, exists);
            if (exists && s == T3::T) || (!exists && s == T3::F) {
                result = Some(s);
                break;
            }
            if s == T3::U {
                unknown = true;
            }
        }
        self.known[slot] &= !bit;
        self.value[slot] &= !bit;
        result.unwrap_or(if unknown { T3::U } else { T3::from(!exists) })
    }

    /// Visits every assignment of the free variables satisfying the root.
    fn enumerate(&mut self, decisions: &[(usize, usize)], visit: &mut dyn FnMut(&Self)) {
        let elem_free: Vec<usize> = self
            .prog
            .free
            .iter()
            .filter_map(|s| if let Slot::Elem(i) = s { Some(*i) } else { None })
            .collect();
        self.enumerate_elems(&elem_free, decisions, visit);
    }

    fn enumerate_elems(&mut self, elem_free: &[usize], decisions: &[(usize, usize)], visit: &mut dyn FnMut(&Self)) {
        match elem_free.split_first() {
            None => self.enumerate_sets(decisions, 0, false, visit),
            Some((&slot, rest)) => {
                let carrier = self.model.carrier(self.prog.elem_sorts[slot]);
                for x in 0..carrier {
                    if self.exceeded {
                        return;
                    }
                    self.elems[slot] = x;
                    self.enumerate_elems(rest, decisions, visit);
                }
            }
        }
    }

    fn enumerate_sets(
        &mut self,
        decisions: &[(usize, usize)],
        level: usize,
        known_true: bool,
        visit: &mut dyn FnMut(&Self),
    ) {
        if !self.tick() {
            return;
        }
        let r = if known_true { T3::T } else { self.eval(self.prog.root) };
        if r == T3::F {
            return;
        }
        if level == decisions.len() {
            if r == T3::T {
                visit(self);
            }
            return;
        }
        let (slot, x) = decisions[level];
        let bit = 1u128 << x;
        self.known[slot] |= bit;
        self.value[slot] &= !bit;
        self.enumerate_sets(decisions, level + 1, r == T3::T, visit);
        self.value[slot] |= bit;
        self.enumerate_sets(decisions, level + 1, r == T3::T, visit);
        self.known[slot] &= !bit;
        self.value[slot] &= !bit;
    }

    fn set_members(&self, slot: usize) -> Vec<usize> {
        let v = self.value[slot];
        (0..self.prog.set_carriers[slot])
            .filter(|&x| v & (1u128 << x) != 0)
            .collect()
    }

    fn current_values(&self) -> Vec<Value> {
        self.prog
            .free
            .iter()
            .map(|s| match s {
                Slot::Elem(i) => Value::Element(self.elems[*i]),
                Slot::Set(i) => Value::Set(self.set_members(*i)),
            })
            .collect()
    }
}

/// Decision order for free set variables: grouped by element sort in order
/// of first declaration, then by element, then by declaration order.
fn decision_order(prog: &Program, free: &Declarations) -> Vec<(usize, usize)> {
    let mut sorts: Vec<Sort> = Vec::new();
    for (_, s) in free {
        if s.is_set() && !sorts.contains(&s.element()) {
            sorts.push(s.element());
        }
    }
    let mut out = Vec::new();
    for sort in sorts {
        let vars: Vec<usize> = free
            .iter()
            .zip(&prog.free)
            .filter(|((_, s), _)| s.is_set() && s.element() == sort)
            .map(|(_, slot)| match slot {
                Slot::Set(i) => *i,
                Slot::Elem(_) => unreachable!(),
            })
            .collect();
        let carrier = vars.first().map_or(0, |&v| prog.set_carriers[v]);
        for x in 0..carrier {
            for &v in &vars {
                out.push((v, x));
            }
        }
    }
    out
}

/// Value of a free variable: an element index or a sorted set of indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Element(usize),
    Set(Vec<usize>),
}

/// Truth value of `formula` with free variables bound by `assignment`
/// (given in declaration order).
pub fn evaluate(
    model: &Model<'_>,
    formula: &Formula,
    free: &Declarations,
    assignment: &[Value],
) -> Result<bool, MsoError> {
    evaluate_with_budget(model, formula, free, assignment, DEFAULT_BUDGET)
}

pub fn evaluate_with_budget(
    model: &Model<'_>,
    formula: &Formula,
    free: &Declarations,
    assignment: &[Value],
    budget: u64,
) -> Result<bool, MsoError> {
    let prog = compile(model, formula, free)?;
    if assignment.len() != free.len() {
        return Err(MsoError::Assignment(format!(
            "expected {} values, found {}",
            free.len(),
            assignment.len()
        )));
    }
    let mut engine = Engine::new(model, &prog, budget);
    for (((name, sort), slot), value) in free.iter().zip(&prog.free).zip(assignment) {
        let carrier = model.carrier(*sort);
        match (slot, value) {
            (Slot::Elem(i), Value::Element(x)) if *x < carrier => engine.elems[*i] = *x,
            (Slot::Set(i), Value::Set(xs)) if xs.iter().all(|&x| x < carrier) => {
                engine.known[*i] = full_mask(carrier);
                engine.value[*i] = xs.iter().fold(0u128, |m, &x| m | (1u128 << x));
            }
            _ => return Err(MsoError::Assignment(format!("bad value for `{name}` of sort {sort}"))),
        }
    }
    let r = engine.eval(prog.root);
    if engine.exceeded {
        return Err(MsoError::Budget { limit: budget });
    }
    Ok(r == T3::T)
}

/// Evaluates a sentence.
pub fn holds(model: &Model<'_>, sentence: &Formula) -> Result<bool, MsoError> {
    evaluate(model, sentence, &Vec::new(), &[])
}

/// All satisfying assignments of the free variables, in search order.
pub fn solutions(
    model: &Model<'_>,
    formula: &Formula,
    free: &Declarations,
    budget: u64,
) -> Result<Vec<Vec<Value>>, MsoError> {
    let prog = compile(model, formula, free)?;
    let decisions = decision_order(&prog, free);
    let mut engine = Engine::new(model, &prog, budget);
    let mut out = Vec::new();
    engine.enumerate(&decisions, &mut |e| out.push(e.current_values()));
    if engine.exceeded {
        return Err(MsoError::Budget { limit: budget });
    }
    Ok(out)
}

pub fn count_solutions(
    model: &Model<'_>,
    formula: &Formula,
    free: &Declarations,
    budget: u64,
) -> Result<u64, MsoError> {
    let prog = compile(model, formula, free)?;
    let decisions = decision_order(&prog, free);
    let mut engine = Engine::new(model, &prog, budget);
    let mut count = 0u64;
    engine.enumerate(&decisions, &mut |_| count += 1);
    if engine.exceeded {
        return Err(MsoError::Budget { limit: budget });
    }
    Ok(count)
}

fn require_sets(free: &Declarations) -> Result<(), MsoError> {
    match free.iter().find(|(_, s)| !s.is_set()) {
        Some((name, _)) => Err(MsoError::Assignment(format!("free variable `{name}` must be a set"))),
        None => Ok(()),
    }
}

/// Minimise `constant + Σ coefficients[i]·|A_i|` over satisfying sets.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremumProblem {
    pub formula: Formula,
    pub free: Declarations,
    pub coefficients: Vec<Rational64>,
    pub constant: Rational64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extremum {
    pub value: Rational64,
    /// Members of each free set, in declaration order.
    pub witness: Vec<Vec<usize>>,
}

/// Exact minimum, or `None` when no assignment satisfies the formula. The
/// witness is the first optimum in search order (each element decided
/// absent before present), so it is the least in that lexicographic order.
pub fn solve_extremum(model: &Model<'_>, problem: &ExtremumProblem, budget: u64) -> Result<Option<Extremum>, MsoError> {
    require_sets(&problem.free)?;
    if problem.coefficients.len() != problem.free.len() {
        return Err(MsoError::Assignment("one coefficient per free set is required".into()));
    }
    let prog = compile(model, &problem.formula, &problem.free)?;
    let decisions = decision_order(&prog, &problem.free);
    let mut engine = Engine::new(model, &prog, budget);
    let mut best: Option<Extremum> = None;
    let slots: Vec<usize> = prog
        .free
        .iter()
        .map(|s| if let Slot::Set(i) = s { *i } else { unreachable!() })
        .collect();
    engine.enumerate(&decisions, &mut |e| {
        let mut value = problem.constant;
        for (c, &slot) in problem.coefficients.iter().zip(&slots) {
            value += *c * Rational64::from_integer(e.value[slot].count_ones() as i64);
        }
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Extremum {
                value,
                witness: slots.iter().map(|&s| e.set_members(s)).collect(),
            });
        }
    });
    if engine.exceeded {
        return Err(MsoError::Budget { limit: budget });
    }
    Ok(best)
}

/// Commutative ring operations needed by [`solve_evaluation`].
pub trait Ring: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> {}
impl<R: Clone + Zero + One + Add<Output = R> + Mul<Output = R>> Ring for R {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvaluationMode {
    Additive,
    Multiplicative,
}

/// Weighted sum over satisfying assignments; `weights[i][x]` is the weight
/// of element `x` of the carrier of the i-th free set.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationProblem<R> {
    pub formula: Formula,
    pub free: Declarations,
    pub mode: EvaluationMode,
    pub weights: Vec<Vec<R>>,
}

/// Σ over satisfying assignments of Σ (additive) or Π (multiplicative) of
/// member weights; the sum is accumulated in search order.
pub fn solve_evaluation<R: Ring>(
    model: &Model<'_>,
    problem: &EvaluationProblem<R>,
    budget: u64,
) -> Result<R, MsoError> {
    require_sets(&problem.free)?;
    if problem.weights.len() != problem.free.len() {
        return Err(MsoError::Assignment("one weight table per free set is required".into()));
    }
    for ((name, sort), w) in problem.free.iter().zip(&problem.weights) {
        if w.len() != model.carrier(*sort) {
            return Err(MsoError::Assignment(format!(
                "weight table for `{name}` must cover its carrier"
            )));
        }
    }
    let prog = compile(model, &problem.formula, &problem.free)?;
    let decisions = decision_order(&prog, &problem.free);
    let mut engine = Engine::new(model, &prog, budget);
    let slots: Vec<usize> = prog
        .free
        .iter()
        .map(|s| if let Slot::Set(i) = s { *i } else { unreachable!() })
        .collect();
    let mut total = R::zero();
    engine.enumerate(&decisions, &mut |e| {
        let mut term = match problem.mode {
            EvaluationMode::Additive => R::zero(),
            EvaluationMode::Multiplicative => R::one(),
        };
        for (w, &slot) in problem.weights.iter().zip(&slots) {
            for x in e.set_members(slot) {
                term = match problem.mode {
                    EvaluationMode::Additive => term + w[x].clone(),
                    EvaluationMode::Multiplicative => term * w[x].clone(),
                };
            }
        }
        total = total.clone() + term;
    });
    if engine.exceeded {
        return Err(MsoError::Budget { limit: budget });
    }
    Ok(total)
}
