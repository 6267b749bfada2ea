//! Linear coset enumeration for the right regular module of a finitely
//! presented algebra.
//!
//! Vectors are created by definition (`v = u.t` for a live `u` and token
//! `t`) and identified by coincidences found while pushing relators through
//! live vectors. A coincidence kills the largest vector in a relation and
//! records it as a combination of smaller ones; the dead vector's table row
//! is turned into deductions on the survivors.

use std::collections::VecDeque;

use crate::field::Scalar;
use crate::linalg::{sv_scale, Accum, SVec};

use super::EngineError;

/// A relator: a linear combination of words in positive token slots.
pub(crate) type Relator = Vec<(Scalar, Vec<u8>)>;

pub(crate) struct Enumerator {
    ntok: usize,
    one: Scalar,
    rows: Vec<Vec<Option<SVec>>>,
    dead: Vec<Option<SVec>>,
    queue: VecDeque<SVec>,
    relators: Vec<Relator>,
    limit: usize,
}

/// The finished table: live vectors renumbered `0..n` in creation order.
pub(crate) struct Table {
    /// `images[t][i]` is `v_i . t`.
    pub images: Vec<Vec<SVec>>,
    /// Original ids of the surviving vectors.
    pub live: Vec<u32>,
}

impl Enumerator {
    pub fn new(one: Scalar, ntok: usize, relators: Vec<Relator>, limit: usize) -> Self {
        let mut e = Self {
            ntok,
            one,
            rows: Vec::new(),
            dead: Vec::new(),
            queue: VecDeque::new(),
            relators,
            limit,
        };
        e.push_vector();
        e
    }

    fn push_vector(&mut self) -> u32 {
        let id = self.rows.len() as u32;
        self.rows.push(vec![None; self.ntok]);
        self.dead.push(None);
        id
    }

    /// Pre-defines vectors `1..=parents.len()` with `v_i = v_{p}.t`.
    pub fn seed(&mut self, parents: &[(u32, u8)]) {
        for &(p, t) in parents {
            let id = self.push_vector();
            debug_assert!(p < id && self.rows[p as usize][t as usize].is_none());
            self.rows[p as usize][t as usize] = Some(vec![(id, self.one.clone())]);
        }
    }

    fn define(&mut self, k: u32, t: usize) -> Result<u32, EngineError> {
        if self.rows.len() >= self.limit {
            return Err(EngineError::Integrity(format!(
                "enumeration exceeded {} vectors",
                self.limit
            )));
        }
        let n = self.push_vector();
        self.rows[k as usize][t] = Some(vec![(n, self.one.clone())]);
        Ok(n)
    }

    /// Rewrites `v` in terms of live vectors.
    fn canon(&mut self, v: &[(u32, Scalar)]) -> SVec {
        if v.iter().all(|(i, _)| self.dead[*i as usize].is_none()) {
            return v.to_vec();
        }
        let mut acc = Accum::new();
        for (i, c) in v {
            if self.dead[*i as usize].is_some() {
                let sub = self.resolve(*i);
                acc.add_scaled(&sub, c);
            } else {
                acc.add(*i, c);
            }
        }
        acc.finish()
    }

    /// The live expression of a dead vector, with path compression.
    fn resolve(&mut self, id: u32) -> SVec {
        let sub = self.dead[id as usize].clone().expect("dead vector");
        if sub.iter().all(|(i, _)| self.dead[*i as usize].is_none()) {
            return sub;
        }
        let c = self.canon(&sub);
        self.dead[id as usize] = Some(c.clone());
        c
    }

    /// `v_k . t` for a live `k`, defining it if needed.
    fn image(&mut self, k: u32, t: usize) -> Result<SVec, EngineError> {
        let cur = match &self.rows[k as usize][t] {
            Some(v) => v.clone(),
            None => {
                let n = self.define(k, t)?;
                return Ok(vec![(n, self.one.clone())]);
            }
        };
        let c = self.canon(&cur);
        if c.len() != cur.len() || c.iter().zip(&cur).any(|(a, b)| a.0 != b.0) {
            self.rows[k as usize][t] = Some(c.clone());
        }
        Ok(c)
    }

    fn apply(&mut self, v: &[(u32, Scalar)], t: usize) -> Result<SVec, EngineError> {
        let mut acc = Accum::new();
        for (i, c) in v {
            let img = self.image(*i, t)?;
            acc.add_scaled(&img, c);
        }
        Ok(acc.finish())
    }

    fn scan(&mut self, k: u32, r: usize) -> Result<SVec, EngineError> {
        let mut acc = Accum::new();
        for idx in 0..self.relators[r].len() {
            let (c, w) = self.relators[r][idx].clone();
            let mut v = vec![(k, self.one.clone())];
            for &t in &w {
                v = self.apply(&v, t as usize)?;
                if v.is_empty() {
                    break;
                }
            }
            acc.add_scaled(&v, &c);
        }
        let v = acc.finish();
        Ok(self.canon(&v))
    }

    fn process(&mut self) -> Result<(), EngineError> {
        while let Some(v) = self.queue.pop_front() {
            let v = self.canon(&v);
            let Some((m, a)) = v.last().cloned() else {
                continue;
            };
            let inv = -a.inv().expect("nonzero coefficient");
            let expr = sv_scale(&v[..v.len() - 1], &inv);
            self.kill(m, expr)?;
        }
        Ok(())
    }

    fn kill(&mut self, m: u32, expr: SVec) -> Result<(), EngineError> {
        self.dead[m as usize] = Some(expr.clone());
        let row = std::mem::replace(&mut self.rows[m as usize], vec![None; self.ntok]);
        for (t, img) in row.into_iter().enumerate() {
            if let Some(img) = img {
                self.deduce(&expr, t, img)?;
            }
        }
        Ok(())
    }

    /// Records `expr . t = img`.
    fn deduce(&mut self, expr: &[(u32, Scalar)], t: usize, img: SVec) -> Result<(), EngineError> {
        let expr = self.canon(expr);
        let undefined: Vec<usize> = expr
            .iter()
            .enumerate()
            .filter(|(_, (i, _))| self.rows[*i as usize][t].is_none())
            .map(|(k, _)| k)
            .collect();
        if let Some(&last) = undefined.last() {
            // Solve for one undefined image.
            let mut acc = Accum::new();
            acc.add_scaled(&img, &self.one);
            for (k, (i, c)) in expr.iter().enumerate() {
                if k == last {
                    continue;
                }
                let im = self.image(*i, t)?;
                acc.add_scaled(&im, &-c);
            }
            let (j, cj) = &expr[last];
            let sol = sv_scale(&acc.finish(), &cj.inv().expect("nonzero"));
            self.rows[*j as usize][t] = Some(sol);
        } else {
            let mut acc = Accum::new();
            for (i, c) in &expr {
                let im = self.image(*i, t)?;
                acc.add_scaled(&im, c);
            }
            acc.add_scaled(&img, &-self.one.clone());
            let v = acc.finish();
            if !v.is_empty() {
                self.queue.push_back(v);
            }
        }
        Ok(())
    }

    /// One pass over all vectors; returns whether anything changed.
    fn pass(&mut self) -> Result<bool, EngineError> {
        let mut changed = false;
        let mut k = 0u32;
        while (k as usize) < self.rows.len() {
            if self.dead[k as usize].is_none() {
                for t in 0..self.ntok {
                    if self.rows[k as usize][t].is_none() {
                        self.define(k, t)?;
                        changed = true;
                    }
                }
                for r in 0..self.relators.len() {
                    if self.dead[k as usize].is_some() {
                        break;
                    }
                    let v = self.scan(k, r)?;
                    if !v.is_empty() {
                        changed = true;
                        self.queue.push_back(v);
                        self.process()?;
                    }
                }
            }
            k += 1;
        }
        Ok(changed)
    }

    /// Runs to completion. The final pass re-checks every relator at every
    /// live vector.
    pub fn run(mut self) -> Result<(Table, Enumerator), EngineError> {
        while self.pass()? {}
        let live: Vec<u32> = (0..self.rows.len() as u32)
            .filter(|&i| self.dead[i as usize].is_none())
            .collect();
        let mut index = vec![u32::MAX; self.rows.len()];
        for (n, &id) in live.iter().enumerate() {
            index[id as usize] = n as u32;
        }
        let mut images = vec![Vec::with_capacity(live.len()); self.ntok];
        for &id in &live {
            for (t, col) in images.iter_mut().enumerate() {
                let img = self.image(id, t)?;
                col.push(
                    img.into_iter()
                        .map(|(i, c)| (index[i as usize], c))
                        .collect(),
                );
            }
        }
        Ok((Table { images, live }, self))
    }
}
