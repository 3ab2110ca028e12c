//! Buchberger's algorithm with the Gebauer-Moeller criteria and the sugar
//! strategy. Polynomials are term vectors sorted by a [`MonoOrder`].

use crate::field::Field;
use crate::mono::{MonoOrder, Monomial};
use crate::poly::{merge_terms, normalize_terms};

pub(crate) type Terms<K> = Vec<(Monomial, <K as Field>::Elem)>;

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<K: Field> {
    field: K,
    order: MonoOrder,
    weight: u64,
    polys: Vec<Terms<K>>,
    sugar: Vec<u32>,
    basis: Vec<usize>,
    basis_lm: Vec<Monomial>,
    pairs: Vec<Pair>,
}

fn make_monic<K: Field>(k: &K, f: &mut Terms<K>) {
    if let Some((_, c)) = f.first() {
        if !k.is_one(c) {
            let inv = k.inv(c).unwrap();
            for t in f.iter_mut() {
                t.1 = k.mul(&t.1, &inv);
            }
        }
    }
}

/// `f - c * m * g[1..]` where `g` is monic and `c m` cancels the head of `f`.
fn cancel_head<K: Field>(
    k: &K,
    order: MonoOrder,
    rest: &[(Monomial, K::Elem)],
    c: &K::Elem,
    q: Monomial,
    g: &[(Monomial, K::Elem)],
) -> Terms<K> {
    let nc = k.neg(c);
    let scaled: Terms<K> = g[1..]
        .iter()
        .map(|(m, a)| (m.mul(q), k.mul(a, &nc)))
        .collect();
    merge_terms(k, rest, &scaled, order)
}

/// Full normal form of `f` against monic polynomials `divs`.
pub(crate) fn reduce_terms<K: Field>(
    k: &K,
    order: MonoOrder,
    f: Terms<K>,
    divs: &[&[(Monomial, K::Elem)]],
) -> Terms<K> {
    let lms: Vec<Monomial> = divs.iter().map(|g| g[0].0).collect();
    let mut h = f;
    let mut r: Terms<K> = Vec::new();
    let mut start = 0;
    while start < h.len() {
        let (m, c) = h[start].clone();
        match lms.iter().position(|l| l.divides(m)) {
            Some(gi) => {
                let q = lms[gi].div(m).unwrap();
                h = cancel_head(k, order, &h[start + 1..], &c, q, divs[gi]);
                start = 0;
            }
            None => {
                r.push((m, c));
                start += 1;
            }
        }
    }
    r
}

impl<K: Field> State<K> {
    fn wdeg(&self, m: Monomial) -> u32 {
        m.masked_degree(self.weight)
    }

    fn reduce(&self, f: Terms<K>) -> Terms<K> {
        let divs: Vec<&[(Monomial, K::Elem)]> =
            self.basis.iter().map(|&i| self.polys[i].as_slice()).collect();
        reduce_terms(&self.field, self.order, f, &divs)
    }

    fn spoly(&self, p: &Pair) -> Terms<K> {
        let k = &self.field;
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let qf = f[0].0.div(p.lcm).unwrap();
        let qg = g[0].0.div(p.lcm).unwrap();
        let a: Terms<K> = f[1..].iter().map(|(m, c)| (m.mul(qf), c.clone())).collect();
        let b: Terms<K> = g[1..]
            .iter()
            .map(|(m, c)| (m.mul(qg), k.neg(c)))
            .collect();
        merge_terms(k, &a, &b, self.order)
    }

    fn update(&mut self, h: usize) {
        let lh = self.polys[h][0].0;
        let sh = self.sugar[h];
        let dh = self.wdeg(lh);
        let mut cands: Vec<(usize, Monomial)> = self
            .basis
            .iter()
            .map(|&g| (g, lh.lcm(self.polys[g][0].0)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = cands.pop() {
            let coprime = lh.is_coprime(self.polys[g1][0].0);
            if coprime
                || (!cands.iter().any(|(_, l2)| l2.divides(l1))
                    && !kept.iter().any(|(_, l2)| l2.divides(l1)))
            {
                kept.push((g1, l1));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(p.lcm)
                && polys[p.i][0].0.lcm(lh) != p.lcm
                && polys[p.j][0].0.lcm(lh) != p.lcm)
        });
        for (g, l) in kept {
            if lh.is_coprime(self.polys[g][0].0) {
                continue;
            }
            let lg = self.polys[g][0].0;
            let dl = self.wdeg(l);
            let sugar = (sh + dl - dh).max(self.sugar[g] + dl - self.wdeg(lg));
            self.pairs.push(Pair {
                i: g,
                j: h,
                lcm: l,
                sugar,
            });
        }
        let mut nb = Vec::with_capacity(self.basis.len() + 1);
        let mut nl = Vec::with_capacity(self.basis.len() + 1);
        for (&g, &lg) in self.basis.iter().zip(&self.basis_lm) {
            if !lh.divides(lg) {
                nb.push(g);
                nl.push(lg);
            }
        }
        nb.push(h);
        nl.push(lh);
        self.basis = nb;
        self.basis_lm = nl;
    }

    fn insert(&mut self, mut f: Terms<K>, sugar: u32) {
        make_monic(&self.field, &mut f);
        self.polys.push(f);
        self.sugar.push(sugar);
        self.update(self.polys.len() - 1);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(a.lcm, b.lcm))
            })
            .map(|(i, _)| i)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Groebner basis, sorted by increasing leading monomial.
/// `weight` is a byte mask of the variables counted by the sugar degree.
pub(crate) fn groebner_terms<K: Field>(
    field: K,
    order: MonoOrder,
    weight: u64,
    gens: Vec<Terms<K>>,
) -> Vec<Terms<K>> {
    let mut st = State {
        field,
        order,
        weight,
        polys: Vec::new(),
        sugar: Vec::new(),
        basis: Vec::new(),
        basis_lm: Vec::new(),
        pairs: Vec::new(),
    };
    let mut input: Vec<(u32, Terms<K>)> = gens
        .into_iter()
        .map(|g| normalize_terms(&field, g, order))
        .filter(|g| !g.is_empty())
        .map(|g| {
            let s = g.iter().map(|(m, _)| m.masked_degree(weight)).max().unwrap();
            (s, g)
        })
        .collect();
    input.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| order.cmp(a.1[0].0, b.1[0].0)));
    let mut pending = input.into_iter().peekable();
    loop {
        // Feed inputs whose sugar does not exceed the best pending pair.
        let next_sugar = st.pairs.iter().map(|p| p.sugar).min();
        let take_input = match (pending.peek(), next_sugar) {
            (Some((s, _)), Some(ps)) => *s <= ps,
            (Some(_), None) => true,
            (None, _) => false,
        };
        if take_input {
            let (s, g) = pending.next().unwrap();
            let r = st.reduce(g);
            if !r.is_empty() {
                if r[0].0 == Monomial::ONE {
                    return vec![vec![(Monomial::ONE, field.one())]];
                }
                st.insert(r, s);
            }
            continue;
        }
        let Some(p) = st.next_pair() else { break };
        let s = st.spoly(&p);
        if s.is_empty() {
            continue;
        }
        let r = st.reduce(s);
        if !r.is_empty() {
            if r[0].0 == Monomial::ONE {
                return vec![vec![(Monomial::ONE, field.one())]];
            }
            st.insert(r, p.sugar);
        }
    }
    // Interreduce.
    let mut g: Vec<Terms<K>> = st.basis.iter().map(|&i| st.polys[i].clone()).collect();
    g.sort_by(|a, b| order.cmp(a[0].0, b[0].0));
    let mut out = Vec::with_capacity(g.len());
    for i in 0..g.len() {
        let others: Vec<&[(Monomial, K::Elem)]> = g
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.as_slice())
            .collect();
        let head = g[i][0].clone();
        let tail = reduce_terms(&field, order, g[i][1..].to_vec(), &others);
        let mut p = Vec::with_capacity(tail.len() + 1);
        p.push(head);
        p.extend(tail);
        make_monic(&field, &mut p);
        out.push(p);
    }
    out
}
