use serde::{Deserialize, Serialize};

use super::{ActionSpec, Group, GroupError};

/// Largest order accepted for a tabulated group; the table alone is
/// `4 * order^2` bytes.
pub const MAX_ORDER: usize = 8192;

/// Orders up to this bound get the exhaustive O(n^3) associativity check.
pub const FULL_ASSOC_THRESHOLD: usize = 512;

/// How much associativity checking a constructor performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssocCheck {
    /// Exhaustive up to [`FULL_ASSOC_THRESHOLD`]; above it, Light's test
    /// against a generating set (`|S| * n^2` checks, still exact).
    #[default]
    Auto,
    /// Exhaustive O(n^3) check at any order.
    Full,
}

/// A finite group given by its multiplication table.
///
/// `table[i * order + j]` is the index of `x_i * x_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

/// Cayley-table interchange format: 0-based, `table[row][col] = row * col`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CayleyJson {
    pub order: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Group for FiniteGroup {
    #[inline]
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }
}

impl FiniteGroup {
    /// Validates a flat row-major table and builds the group.
    pub fn from_flat(
        order: usize,
        identity: usize,
        table: Vec<u32>,
        check: AssocCheck,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order, MAX_ORDER));
        }
        if table.len() != order * order {
            return Err(GroupError::Shape {
                expected: order * order,
                found: table.len(),
            });
        }
        if let Some(pos) = table.iter().position(|&v| v as usize >= order) {
            return Err(GroupError::OutOfRange {
                row: pos / order,
                col: pos % order,
                value: table[pos] as usize,
            });
        }
        if identity >= order {
            return Err(GroupError::BadIdentity(identity));
        }
        let g = Self::from_trusted(order, identity, table);
        g.check_identity()?;
        g.check_latin()?;
        g.check_associative(check)?;
        Ok(g)
    }

    /// Builds a group from nested rows, as read from JSON.
    pub fn from_rows(rows: &[Vec<usize>], identity: usize) -> Result<Self, GroupError> {
        let order = rows.len();
        let mut flat = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::Shape {
                    expected: order,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::OutOfRange {
                        row: r,
                        col: c,
                        value: v,
                    });
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat(order, identity, flat, AssocCheck::Auto)
    }

    /// Tabulates `op` and validates the result.
    pub fn from_fn(
        order: usize,
        identity: usize,
        check: AssocCheck,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order, MAX_ORDER));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(op(a, b) as u32);
            }
        }
        Self::from_flat(order, identity, table, check)
    }

    /// Tabulates any [`Group`] implementation.
    pub fn tabulate<G: Group + ?Sized>(g: &G) -> Result<Self, GroupError> {
        Self::from_fn(g.order(), g.identity(), AssocCheck::Auto, |a, b| {
            g.mul(a, b)
        })
    }

    pub fn from_json(json: &CayleyJson) -> Result<Self, GroupError> {
        if json.order != json.table.len() {
            return Err(GroupError::Shape {
                expected: json.order,
                found: json.table.len(),
            });
        }
        let g = Self::from_rows(&json.table, json.identity)?;
        match &json.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }

    pub fn to_json(&self) -> CayleyJson {
        CayleyJson {
            order: self.order,
            identity: self.identity,
            table: (0..self.order)
                .map(|r| self.row(r).iter().map(|&v| v as usize).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    fn from_trusted(order: usize, identity: usize, table: Vec<u32>) -> Self {
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            if let Some(b) = row.iter().position(|&v| v as usize == identity) {
                inverses[a] = b as u32;
            }
        }
        FiniteGroup {
            order,
            identity,
            table,
            inverses,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GroupError> {
        if labels.len() != self.order {
            return Err(GroupError::Shape {
                expected: self.order,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    fn check_identity(&self) -> Result<(), GroupError> {
        let e = self.identity;
        for j in 0..self.order {
            if self.mul(e, j) != j || self.mul(j, e) != j {
                return Err(GroupError::BadIdentity(e));
            }
        }
        Ok(())
    }

    fn check_latin(&self) -> Result<(), GroupError> {
        let n = self.order;
        let mut seen = vec![0usize; n];
        for r in 0..n {
            let stamp = r + 1;
            for c in 0..n {
                let v = self.mul(r, c);
                if seen[v] == stamp {
                    return Err(GroupError::NotLatin(r));
                }
                seen[v] = stamp;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for c in 0..n {
            let stamp = c + 1;
            for r in 0..n {
                let v = self.mul(r, c);
                if seen[v] == stamp {
                    return Err(GroupError::NotLatin(c));
                }
                seen[v] = stamp;
            }
        }
        Ok(())
    }

    fn check_associative(&self, check: AssocCheck) -> Result<(), GroupError> {
        let n = self.order;
        let exhaustive = check == AssocCheck::Full || n <= FULL_ASSOC_THRESHOLD;
        let pivots: Vec<usize> = if exhaustive {
            (0..n).collect()
        } else {
            self.magma_generators()
        };
        for &s in &pivots {
            for x in 0..n {
                let xs = self.mul(x, s);
                for y in 0..n {
                    if self.mul(xs, y) != self.mul(x, self.mul(s, y)) {
                        return Err(GroupError::NotAssociative(x, s, y));
                    }
                }
            }
        }
        Ok(())
    }

    /// A set whose left-normed products reach every element. If
    /// `(x s) y = x (s y)` holds for each such `s`, the elements satisfying
    /// that identity form a submagma containing the set, hence everything.
    fn magma_generators(&self) -> Vec<usize> {
        let n = self.order;
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[self.identity] = true;
        let mut count = 1;
        for x in 0..n {
            if reached[x] {
                continue;
            }
            gens.push(x);
            let mut frontier: Vec<usize> = (0..n).filter(|&i| reached[i]).collect();
            while let Some(a) = frontier.pop() {
                for &g in &gens {
                    let b = self.mul(a, g);
                    if !reached[b] {
                        reached[b] = true;
                        count += 1;
                        frontier.push(b);
                    }
                }
            }
            if count == n {
                break;
            }
        }
        gens
    }
}

/// The cyclic group `Z/n` written additively: `i * j = (i + j) mod n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::EmptyGroup);
    }
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge(n, MAX_ORDER));
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(((a + b) % n) as u32);
        }
    }
    Ok(FiniteGroup::from_trusted(n, 0, table))
}

/// `H x K` with element `(h, k)` at index `h * |K| + k`.
pub fn direct_product(h: &FiniteGroup, k: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    semidirect(h, k, &ActionSpec::trivial(h, k))
}

/// `H ⋊ K` for an action `k ↦ α_k ∈ Aut(H)` with `α_{k1 k2} = α_{k1} ∘ α_{k2}`.
///
/// The element at index `h * |K| + k` stands for the product `h·k`, and
/// `k h k⁻¹ = α_k(h)`, so
/// `(h1, k1)(h2, k2) = (h1 · α_{k1}(h2), k1 k2)`.
pub fn semidirect(
    h: &FiniteGroup,
    k: &FiniteGroup,
    act: &ActionSpec,
) -> Result<FiniteGroup, GroupError> {
    semidirect_checked(h, k, act, AssocCheck::Auto)
}

pub fn semidirect_checked(
    h: &FiniteGroup,
    k: &FiniteGroup,
    act: &ActionSpec,
    check: AssocCheck,
) -> Result<FiniteGroup, GroupError> {
    if act.acted_order() != h.order() || act.actor_order() != k.order() {
        return Err(GroupError::Invalid(format!(
            "action is for |H| = {}, |K| = {}, got groups of order {} and {}",
            act.acted_order(),
            act.actor_order(),
            h.order(),
            k.order()
        )));
    }
    let (nh, nk) = (h.order(), k.order());
    let n = nh * nk;
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge(n, MAX_ORDER));
    }
    let mut table = Vec::with_capacity(n * n);
    for h1 in 0..nh {
        for k1 in 0..nk {
            for h2 in 0..nh {
                let h_part = h.row(h1);
                let moved = act.apply(k1, h2);
                let hh = h_part[moved] as usize;
                let k_row = k.row(k1);
                for k2 in 0..nk {
                    table.push((hh * nk + k_row[k2] as usize) as u32);
                }
            }
        }
    }
    let identity = h.identity() * nk + k.identity();
    let g = FiniteGroup::from_flat(n, identity, table, check)?;
    match (h.labels(), k.labels()) {
        (Some(lh), Some(lk)) => {
            let labels = (0..n)
                .map(|i| format!("({},{})", lh[i / nk], lk[i % nk]))
                .collect();
            g.with_labels(labels)
        }
        _ => Ok(g),
    }
}
