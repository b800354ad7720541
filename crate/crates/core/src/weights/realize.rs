//! Realizable functions on `Q = [2|P|]^m` and the `(1 mod t)`-partition.
//!
//! `f: Q → Z` is realizable if some weight function has element weights
//! `≡ f (mod t)`. Every point difference `I_x − I_a`, with `a` the all-2s
//! element, is realizable by two copies that differ only in one element;
//! sums of realizable functions are realizable, and `f − g ≡ f + (t−1)g`.
//! So every `f` with `Σ f ≡ 0 (mod t)` is realizable, and
//! `I_Q = (I_Q − s·I_A) + s·I_A` for a copy `A` and `s = |Q|/|P|`.

use super::WeightFunction;
use crate::error::{Error, Result};
use crate::poset::{minimal_cube_dim, GridPoset, Order, Poset, MATERIALIZATION_BUDGET};

/// Largest `Q` the realization works on; each point difference touches
/// two copies, so the weight function has up to `2|Q|` entries.
const REALIZE_BUDGET: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct RealizabilityContext {
    pub q: GridPoset,
    pub m: usize,
    pub d: usize,
    pub t: u64,
    /// Index of the all-2s element.
    pub anchor: usize,
    pub target: Poset,
    /// Copy of the target in `2^[d]`, as masks in target element order.
    embedding: Vec<u128>,
}

impl RealizabilityContext {
    /// `Q = [2|P|]^(2d−1)` with `d` the smallest cube holding `P`.
    pub fn new(target: &Poset, t: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::invalid("t must be positive"));
        }
        if target.len() < 2 {
            return Err(Error::precondition("point differences need |P| >= 2"));
        }
        if !target.has_unique_max_min() {
            return Err(Error::precondition(format!(
                "{} needs a unique maximal and a unique minimal element",
                target.name()
            )));
        }
        let cube = minimal_cube_dim(target)?;
        let m = 2 * cube.d - 1;
        let side = 2 * target.len();
        let size = (side as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        let limit = REALIZE_BUDGET.min(MATERIALIZATION_BUDGET);
        if size > limit as u128 {
            return Err(Error::Budget {
                what: "realizability host",
                required: size,
                limit: limit as u128,
            });
        }
        let q = GridPoset::new(&vec![side; m])?;
        let anchor = q.index(&vec![2; m]);
        Ok(RealizabilityContext {
            q,
            m,
            d: cube.d,
            t,
            anchor,
            target: target.clone(),
            embedding: cube.masks,
        })
    }

    /// The embedded copy of the target in the sub-cube on coordinates `j`,
    /// with `low` where a mask bit is 0, `low + 1` where it is 1, and `rest`
    /// on the other coordinates. Returned in target element order.
    fn corner_copy(&self, j: &[usize], low: usize, rest: usize) -> Vec<usize> {
        self.embedding
            .iter()
            .map(|&mask| {
                let mut c = vec![rest; self.m];
                for (bit, &coord) in j.iter().enumerate() {
                    c[coord] = low + (mask >> bit & 1) as usize;
                }
                self.q.index(&c)
            })
            .collect()
    }
}

/// Weights whose element weights are `≡ I_x − I_a (mod t)`: copy `A_1`
/// with weight 1 and copy `A_2` with weight `t − 1`, where `A_1` and `A_2`
/// swap the maximum (or minimum) of a corner copy for `x` and for `a`.
pub fn realize_point_difference(x: usize, ctx: &RealizabilityContext) -> Result<WeightFunction> {
    let mut w = WeightFunction::new(ctx.q.clone(), ctx.target.clone());
    if x >= ctx.q.size() {
        return Err(Error::invalid(format!("element {x} outside Q")));
    }
    if x == ctx.anchor {
        return Ok(w);
    }
    let coords = ctx.q.coords(x);
    let ones: Vec<usize> = (0..ctx.m).filter(|&j| coords[j] == 1).collect();
    let side = 2 * ctx.target.len();
    let (copy, swap) = if ones.len() < ctx.d {
        // x sits above the sub-cube {1,2}^J × {1}^rest on d coordinates ≥ 2
        let j: Vec<usize> = (0..ctx.m).filter(|&j| coords[j] >= 2).take(ctx.d).collect();
        let copy = ctx.corner_copy(&j, 1, 1);
        let top = ctx.target.maximum().expect("unique maximum checked");
        let b = copy[top];
        debug_assert!(ctx.q.leq(b, x) && ctx.q.leq(b, ctx.anchor));
        (copy, top)
    } else {
        // x sits below {2|P|−1, 2|P|}^J × {2|P|}^rest on d coordinates = 1
        let j: Vec<usize> = ones.into_iter().take(ctx.d).collect();
        let copy = ctx.corner_copy(&j, side - 1, side);
        let bottom = ctx.target.minimum().expect("unique minimum checked");
        let c = copy[bottom];
        debug_assert!(ctx.q.leq(x, c) && ctx.q.leq(ctx.anchor, c));
        (copy, bottom)
    };
    let mut a1 = copy.clone();
    a1[swap] = x;
    let mut a2 = copy;
    a2[swap] = ctx.anchor;
    w.add(&a1, 1);
    w.add(&a2, ctx.t - 1);
    Ok(w)
}

/// Weights with element weights `≡ f (mod t)`, built as
/// `Σ_x (f(x) mod t)·(I_x − I_a)`. Needs `Σ f ≡ 0 (mod t)`.
pub fn realize_function(f: &[i64], ctx: &RealizabilityContext) -> Result<WeightFunction> {
    if f.len() != ctx.q.size() {
        return Err(Error::invalid(format!(
            "function has {} values, Q has {} elements",
            f.len(),
            ctx.q.size()
        )));
    }
    let t = ctx.t as i64;
    let total = f.iter().fold(0i64, |acc, &v| (acc + v.rem_euclid(t)) % t);
    if total != 0 {
        return Err(Error::precondition(format!(
            "Σ f ≡ {total} (mod {t}); realizable functions sum to 0"
        )));
    }
    let mut w = WeightFunction::new(ctx.q.clone(), ctx.target.clone());
    for (x, &v) in f.iter().enumerate() {
        let times = v.rem_euclid(t) as u64;
        if times > 0 && x != ctx.anchor {
            w.merge(&realize_point_difference(x, ctx)?, times);
        }
    }
    Ok(w)
}

/// A `(1 mod t)`-partition of `[2|P|]^m` for `m = 2d − 1`. Returns `m`.
///
/// `s = |Q|/|P|` makes `Σ (I_Q − s·I_A) = 0` exactly. A singleton target is
/// answered with weight-1 singletons on `[2]`.
pub fn one_mod_t_partition(target: &Poset, t: u64) -> Result<(usize, WeightFunction)> {
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    if target.len() == 1 {
        let host = GridPoset::new(&[2])?;
        let mut w = WeightFunction::new(host, target.clone());
        w.add(&[0], 1);
        w.add(&[1], 1);
        return Ok((1, w));
    }
    let ctx = RealizabilityContext::new(target, t)?;
    let q = ctx.q.size();
    let p = target.len();
    // s = t|Q|/|P| is integral because |P| divides (2|P|)^m
    debug_assert_eq!((t as usize * q) % p, 0);
    let s = q / p;
    let j: Vec<usize> = (0..ctx.d).collect();
    let a = ctx.corner_copy(&j, 1, 1);
    let mut f = vec![1i64; q];
    for &x in &a {
        f[x] -= s as i64;
    }
    let mut w = realize_function(&f, &ctx)?;
    w.add(&a, s as u64);
    Ok((ctx.m, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{verify_weight_function, WeightKind};

    fn residues(w: &WeightFunction, t: u64) -> Vec<u64> {
        w.element_weights().iter().map(|&v| (v % t as u128) as u64).collect()
    }

    #[test]
    fn point_difference_cases() {
        for t in [2, 3] {
            let ctx = RealizabilityContext::new(&Poset::diamond(), t).unwrap();
            assert_eq!((ctx.d, ctx.m, ctx.q.size()), (2, 3, 512));
            for coords in [[1, 1, 5], [5, 5, 5], [1, 8, 8], [2, 2, 2]] {
                let x = ctx.q.index(&coords);
                let w = realize_point_difference(x, &ctx).unwrap();
                verify_weight_function(&w, t, WeightKind::OneModT).unwrap();
                for (y, r) in residues(&w, t).into_iter().enumerate() {
                    let want = if x == ctx.anchor {
                        0
                    } else if y == x {
                        1
                    } else if y == ctx.anchor {
                        t - 1
                    } else {
                        0
                    };
                    assert_eq!(r, want, "x={coords:?} y={y}");
                }
            }
        }
    }

    #[test]
    fn one_mod_t_examples() {
        for t in [2, 3, 5] {
            let (m, w) = one_mod_t_partition(&Poset::chain(2), t).unwrap();
            assert_eq!((m, w.host.size()), (1, 4));
            assert!(verify_weight_function(&w, t, WeightKind::OneModT).unwrap().pass());
        }
        let (_, w) = one_mod_t_partition(&Poset::singleton(), 4).unwrap();
        assert!(verify_weight_function(&w, 4, WeightKind::OneModT).unwrap().pass());
        let (m, w) = one_mod_t_partition(&Poset::diamond(), 2).unwrap();
        assert_eq!(m, 3);
        let r = verify_weight_function(&w, 2, WeightKind::OneModT).unwrap();
        assert!(r.pass() && r.weights.len() == 512);
    }

    #[test]
    fn preconditions() {
        let vee = Poset::from_relations("vee", 3, &[(0, 1), (0, 2)]).unwrap();
        assert!(matches!(one_mod_t_partition(&vee, 2), Err(Error::Precondition(_))));
        let ctx = RealizabilityContext::new(&Poset::chain(2), 3).unwrap();
        assert!(realize_function(&[1, 0, 0, 0], &ctx).is_err());
    }
}
