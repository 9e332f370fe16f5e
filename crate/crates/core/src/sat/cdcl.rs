//! A compact CDCL solver: two watched literals, first-UIP learning with
//! clause minimization, VSIDS with phase saving, Luby restarts.
//!
//! Incremental in the sense needed for blocking-clause enumeration: clauses
//! may be added between calls to [`Cdcl::solve`].

use std::ops::Not;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Lit(u32);

impl Lit {
    fn new(var: usize, negated: bool) -> Lit {
        Lit((var as u32) << 1 | negated as u32)
    }

    fn from_dimacs(l: i32) -> Lit {
        Lit::new(l.unsigned_abs() as usize - 1, l < 0)
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn negated(self) -> bool {
        self.0 & 1 == 1
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const UNDEF: i8 = 0;

fn lit_value(assigns: &[i8], l: Lit) -> i8 {
    let v = assigns[l.var()];
    if l.negated() {
        -v
    } else {
        v
    }
}

#[derive(Clone, Copy)]
struct Watch {
    clause: u32,
    blocker: Lit,
}

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    activity: f64,
}

/// Max-heap of variables keyed by activity.
#[derive(Default)]
struct VarHeap {
    heap: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl VarHeap {
    fn contains(&self, v: usize) -> bool {
        self.pos[v].is_some()
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v] = Some(self.heap.len());
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top] = None;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last] = Some(0);
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if let Some(i) = self.pos[v] {
            self.sift_up(i, act);
        }
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if act[self.heap[parent]] >= act[v] {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i]] = Some(i);
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v] = Some(i);
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let left = 2 * i + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let child =
                if right < self.heap.len() && act[self.heap[right]] > act[self.heap[left]] { right } else { left };
            if act[self.heap[child]] <= act[v] {
                break;
            }
            self.heap[i] = self.heap[child];
            self.pos[self.heap[i]] = Some(i);
            i = child;
        }
        self.heap[i] = v;
        self.pos[v] = Some(i);
    }
}

fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}

pub struct Cdcl {
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watch>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    clause_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    learnts: usize,
    max_learnts: f64,
    conflicts: u64,
    conflict_budget: Option<u64>,
    model: Vec<bool>,
}

impl Cdcl {
    pub fn new(num_vars: usize) -> Self {
        let mut s = Cdcl {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![UNDEF; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; num_vars],
            var_inc: 1.0,
            clause_inc: 1.0,
            heap: VarHeap { heap: Vec::with_capacity(num_vars), pos: vec![None; num_vars] },
            phase: vec![false; num_vars],
            seen: vec![false; num_vars],
            ok: true,
            learnts: 0,
            max_learnts: 0.0,
            conflicts: 0,
            conflict_budget: None,
            model: Vec::new(),
        };
        for v in 0..num_vars {
            s.heap.insert(v, &s.activity);
        }
        s
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    /// Conflicts allowed per call to [`Cdcl::solve`]; `None` is unlimited.
    pub fn set_conflict_budget(&mut self, budget: Option<u64>) {
        self.conflict_budget = budget;
    }

    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Adds a clause in DIMACS literals. Returns `false` once the formula is
    /// known to be unsatisfiable.
    pub fn add_clause(&mut self, dimacs: &[i32]) -> bool {
        if !self.ok {
            return false;
        }
        self.cancel_until(0);
        let mut lits: Vec<Lit> = dimacs.iter().map(|&l| Lit::from_dimacs(l)).collect();
        lits.sort_by_key(|l| l.0);
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        if lits.iter().any(|&l| lit_value(&self.assigns, l) == TRUE) {
            return true;
        }
        lits.retain(|&l| lit_value(&self.assigns, l) == UNDEF);
        match lits.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(lits[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(lits, false);
            }
        }
        self.ok
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[lits[0].index()].push(Watch { clause: cref, blocker: lits[1] });
        self.watches[lits[1].index()].push(Watch { clause: cref, blocker: lits[0] });
        self.clauses.push(Clause { lits, learnt, activity: 0.0 });
        if learnt {
            self.learnts += 1;
        }
        cref
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        let v = l.var();
        self.assigns[v] = if l.negated() { FALSE } else { TRUE };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn cancel_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.trail_lim[level];
        for i in (keep..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var();
            self.assigns[v] = UNDEF;
            self.reason[v] = None;
            self.phase[v] = !l.negated();
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level);
        self.qhead = keep;
    }

    fn propagate(&mut self) -> Option<u32> {
        let Cdcl { clauses, watches, assigns, level, reason, trail, trail_lim, qhead, .. } = self;
        let current_level = trail_lim.len() as u32;
        while *qhead < trail.len() {
            let p = trail[*qhead];
            *qhead += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut watches[false_lit.index()]);
            let (mut i, mut j) = (0, 0);
            let mut conflict = None;
            'watches: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(assigns, w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let lits = &mut clauses[w.clause as usize].lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                let kept = Watch { clause: w.clause, blocker: first };
                if first != w.blocker && lit_value(assigns, first) == TRUE {
                    ws[j] = kept;
                    j += 1;
                    continue;
                }
                for k in 2..lits.len() {
                    if lit_value(assigns, lits[k]) != FALSE {
                        lits.swap(1, k);
                        watches[lits[1].index()].push(kept);
                        continue 'watches;
                    }
                }
                ws[j] = kept;
                j += 1;
                if lit_value(assigns, first) == FALSE {
                    conflict = Some(w.clause);
                    *qhead = trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    let v = first.var();
                    assigns[v] = if first.negated() { FALSE } else { TRUE };
                    level[v] = current_level;
                    reason[v] = Some(w.clause);
                    trail.push(first);
                }
            }
            ws.truncate(j);
            watches[false_lit.index()] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v, &self.activity);
    }

    fn bump_clause(&mut self, c: u32) {
        let cl = &mut self.clauses[c as usize];
        if !cl.learnt {
            return;
        }
        cl.activity += self.clause_inc;
        if cl.activity > 1e20 {
            for cl in self.clauses.iter_mut().filter(|c| c.learnt) {
                cl.activity *= 1e-20;
            }
            self.clause_inc *= 1e-20;
        }
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, usize) {
        let mut learnt = vec![Lit(0)];
        let mut path = 0;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level() as u32;
        loop {
            self.bump_clause(confl);
            let start = usize::from(p.is_some());
            for k in start..self.clauses[confl as usize].lits.len() {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let lit = self.trail[index];
            self.seen[lit.var()] = false;
            p = Some(lit);
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[lit.var()].expect("implied literal has a reason");
        }
        learnt[0] = !p.unwrap();

        // drop literals implied by the rest of the clause
        let mut keep = vec![learnt[0]];
        for &q in &learnt[1..] {
            let redundant = match self.reason[q.var()] {
                None => false,
                Some(r) => {
                    self.clauses[r as usize].lits[1..].iter().all(|l| self.seen[l.var()] || self.level[l.var()] == 0)
                }
            };
            if !redundant {
                keep.push(q);
            }
        }
        for q in &learnt[1..] {
            self.seen[q.var()] = false;
        }
        let mut learnt = keep;

        let backtrack = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for k in 2..learnt.len() {
                if self.level[learnt[k].var()] > self.level[learnt[max_i].var()] {
                    max_i = k;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var()] as usize
        };
        (learnt, backtrack)
    }

    /// Drops the less active half of the learnt clauses. Runs at level 0 only,
    /// where no reason refers to a learnt clause that still matters.
    fn reduce_db(&mut self) {
        debug_assert_eq!(self.decision_level(), 0);
        let mut acts: Vec<f64> =
            self.clauses.iter().filter(|c| c.learnt && c.lits.len() > 2).map(|c| c.activity).collect();
        if acts.is_empty() {
            return;
        }
        acts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let cutoff = acts[acts.len() / 2];
        let old = std::mem::take(&mut self.clauses);
        for w in &mut self.watches {
            w.clear();
        }
        self.learnts = 0;
        for c in old {
            if c.learnt && c.lits.len() > 2 && c.activity < cutoff {
                continue;
            }
            let Clause { lits, learnt, activity } = c;
            let cref = self.attach(lits, learnt);
            self.clauses[cref as usize].activity = activity;
        }
        for r in &mut self.reason {
            *r = None;
        }
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == UNDEF {
                return Some(Lit::new(v, !self.phase[v]));
            }
        }
        None
    }

    fn search(&mut self, max_conflicts: u64, budget_end: Option<u64>) -> Option<bool> {
        let mut local = 0;
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                local += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return Some(false);
                }
                let (learnt, backtrack) = self.analyze(confl);
                self.cancel_until(backtrack);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let first = learnt[0];
                    let cref = self.attach(learnt, true);
                    self.bump_clause(cref);
                    self.enqueue(first, Some(cref));
                }
                self.var_inc /= 0.95;
                self.clause_inc /= 0.999;
            } else {
                if local >= max_conflicts || budget_end.is_some_and(|b| self.conflicts >= b) {
                    self.cancel_until(0);
                    return None;
                }
                match self.pick_branch() {
                    None => {
                        self.model = self.assigns.iter().map(|&a| a == TRUE).collect();
                        return Some(true);
                    }
                    Some(l) => {
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, None);
                    }
                }
            }
        }
    }

    /// `Some(true)`: satisfiable, see [`Cdcl::model`]; `Some(false)`:
    /// unsatisfiable; `None`: conflict budget exhausted.
    pub fn solve(&mut self) -> Option<bool> {
        if !self.ok {
            return Some(false);
        }
        self.cancel_until(0);
        if self.propagate().is_some() {
            self.ok = false;
            return Some(false);
        }
        let budget_end = self.conflict_budget.map(|b| self.conflicts + b);
        if self.max_learnts == 0.0 {
            self.max_learnts = (self.clauses.len() as f64 / 3.0).max(5000.0);
        }
        for restart in 0.. {
            if let Some(result) = self.search(luby(restart) * 100, budget_end) {
                return Some(result);
            }
            if budget_end.is_some_and(|b| self.conflicts >= b) {
                return None;
            }
            if self.learnts as f64 > self.max_learnts {
                self.reduce_db();
                self.max_learnts *= 1.1;
            }
        }
        unreachable!()
    }

    /// The last satisfying assignment, indexed by variable − 1.
    pub fn model(&self) -> &[bool] {
        &self.model
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(clauses: &[Vec<i32>], model: &[bool]) -> bool {
        clauses.iter().all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    #[test]
    fn luby_sequence() {
        let seq: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(seq, [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn trivial_cases() {
        let mut s = Cdcl::new(0);
        assert_eq!(s.solve(), Some(true));
        let mut s = Cdcl::new(1);
        s.add_clause(&[1]);
        assert!(!s.add_clause(&[-1]));
        assert_eq!(s.solve(), Some(false));
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 6 pigeons, 5 holes
        let (p, h) = (6, 5);
        let var = |i: usize, j: usize| (i * h + j + 1) as i32;
        let mut s = Cdcl::new(p * h);
        for i in 0..p {
            s.add_clause(&(0..h).map(|j| var(i, j)).collect::<Vec<_>>());
        }
        for j in 0..h {
            for a in 0..p {
                for b in a + 1..p {
                    s.add_clause(&[-var(a, j), -var(b, j)]);
                }
            }
        }
        assert_eq!(s.solve(), Some(false));
    }

    #[test]
    fn random_3sat_models_check_out() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(3..18);
            let m = (n as f64 * rng.gen_range(2.0..5.5)) as usize;
            let clauses: Vec<Vec<i32>> = (0..m)
                .map(|_| (0..3).map(|_| rng.gen_range(1..=n as i32) * if rng.gen() { 1 } else { -1 }).collect())
                .collect();
            let mut s = Cdcl::new(n);
            for c in &clauses {
                s.add_clause(c);
            }
            let brute =
                (0u64..1 << n).any(|bits| check(&clauses, &(0..n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>()));
            assert_eq!(s.solve(), Some(brute));
            if brute {
                assert!(check(&clauses, s.model()));
            }
        }
    }

    #[test]
    fn blocking_enumerates_all() {
        // x1 xor x2 xor x3 has 4 models
        let mut s = Cdcl::new(3);
        for c in [[1, 2, 3], [1, -2, -3], [-1, 2, -3], [-1, -2, 3]] {
            s.add_clause(&c);
        }
        let mut count = 0;
        while s.solve() == Some(true) {
            count += 1;
            let block: Vec<i32> =
                s.model().iter().enumerate().map(|(i, &b)| if b { -(i as i32 + 1) } else { i as i32 + 1 }).collect();
            s.add_clause(&block);
        }
        assert_eq!(count, 4);
    }
}
