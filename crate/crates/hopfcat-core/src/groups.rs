//! Finite groups as multiplication tables, plus brute-force oracles.
//!
//! The Hopf-algebra side of this crate is exercised mostly on group algebras,
//! so independent group-theoretic answers (subgroups, normality, commutator
//! subgroups, quotients, homomorphism enumeration, isomorphism search) are
//! computed here by raw table walks. Tests compare the linear-algebra results
//! against these oracles; the two code paths share nothing but this module's
//! tables.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A finite group as an explicit multiplication table, validated on
/// construction (Latin square, identity, inverses, associativity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    name: String,
    order: usize,
    /// Row-major: `table[a·n + b]` = a·b.
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    elem_names: Vec<String>,
}

impl FiniteGroupTable {
    pub fn new(
        name: impl Into<String>,
        order: usize,
        table: Vec<usize>,
        elem_names: Vec<String>,
    ) -> Result<FiniteGroupTable> {
        let name = name.into();
        if order == 0 {
            return Err(Error::InvalidGroup("group order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table for {name} must have {} entries, got {}",
                order * order,
                table.len()
            )));
        }
        if elem_names.len() != order {
            return Err(Error::InvalidGroup(format!(
                "need {order} element names for {name}"
            )));
        }
        if table.iter().any(|&x| x >= order) {
            return Err(Error::InvalidGroup(format!("table entry out of range in {name}")));
        }
        // Latin square: rows and columns are permutations.
        for a in 0..order {
            let row: BTreeSet<usize> = (0..order).map(|b| table[a * order + b]).collect();
            let col: BTreeSet<usize> = (0..order).map(|b| table[b * order + a]).collect();
            if row.len() != order || col.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row or column {a} of {name} is not a permutation"
                )));
            }
        }
        // Identity.
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] == a && table[a * order + e] == a))
            .ok_or_else(|| Error::InvalidGroup(format!("{name} has no identity")))?;
        // Inverses.
        let mut inverses = vec![0usize; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a * order + b] == identity && table[b * order + a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} of {name} has no inverse")))?;
            inverses[a] = inv;
        }
        // Associativity, the expensive one: O(order³) table lookups.
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(Error::InvalidGroup(format!(
                            "{name} is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            name,
            order,
            table,
            identity,
            inverses,
            elem_names,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elem_name(&self, i: usize) -> &str {
        &self.elem_names[i]
    }

    pub fn elem_names(&self) -> &[String] {
        &self.elem_names
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Cₙ with elements e, g, g², …
pub fn cyclic(n: usize) -> FiniteGroupTable {
    assert!(n >= 1);
    let table: Vec<usize> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a + b) % n))
        .collect();
    let names = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect();
    FiniteGroupTable::new(format!("C{n}"), n, table, names).expect("cyclic table is a group")
}

/// Dihedral group of order 2n, presented as ⟨r, s | rⁿ = s² = e, s r = r⁻¹ s⟩.
/// Elements 0..n are rᵏ, elements n..2n are rᵏs.
pub fn dihedral(n: usize) -> FiniteGroupTable {
    assert!(n >= 3);
    let order = 2 * n;
    let enc = |k: usize, s: usize| s * n + k;
    let mut table = vec![0usize; order * order];
    for k1 in 0..n {
        for s1 in 0..2 {
            for k2 in 0..n {
                for s2 in 0..2 {
                    // (r^k1 s^s1)(r^k2 s^s2): push s^s1 past r^k2.
                    let k = if s1 == 0 { (k1 + k2) % n } else { (k1 + n - k2 % n) % n };
                    let s = (s1 + s2) % 2;
                    table[enc(k1, s1) * order + enc(k2, s2)] = enc(k, s);
                }
            }
        }
    }
    let mut names = Vec::with_capacity(order);
    for s in 0..2 {
        for k in 0..n {
            let mut t = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r{k}"),
            };
            if s == 1 {
                t.push('s');
            }
            if t.is_empty() {
                t = "e".to_string();
            }
            names.push(t);
        }
    }
    let name = if n == 3 { "S3".to_string() } else { format!("D{n}") };
    FiniteGroupTable::new(name, order, table, names).expect("dihedral table is a group")
}

/// The quaternion group {±1, ±i, ±j, ±k}; element 2m+s is (−1)ˢ·basis m with
/// basis order 1, i, j, k.
pub fn quaternion() -> FiniteGroupTable {
    // Product of basis units: (result_sign, result_basis).
    fn basis_mul(a: usize, b: usize) -> (usize, usize) {
        match (a, b) {
            (0, x) => (0, x),
            (x, 0) => (0, x),
            (1, 1) | (2, 2) | (3, 3) => (1, 0),
            (1, 2) => (0, 3),
            (2, 1) => (1, 3),
            (2, 3) => (0, 1),
            (3, 2) => (1, 1),
            (3, 1) => (0, 2),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    }
    let order = 8;
    let mut table = vec![0usize; order * order];
    for a in 0..order {
        for b in 0..order {
            let (sa, ma) = (a % 2, a / 2);
            let (sb, mb) = (b % 2, b / 2);
            let (sp, mp) = basis_mul(ma, mb);
            let s = (sa + sb + sp) % 2;
            table[a * order + b] = mp * 2 + s;
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroupTable::new("Q8", order, table, names).expect("quaternion table is a group")
}

/// Direct product with lexicographic element order (a-index major).
pub fn direct_product(a: &FiniteGroupTable, b: &FiniteGroupTable) -> FiniteGroupTable {
    let (na, nb) = (a.order(), b.order());
    let order = na * nb;
    let enc = |x: usize, y: usize| x * nb + y;
    let mut table = vec![0usize; order * order];
    for x1 in 0..na {
        for y1 in 0..nb {
            for x2 in 0..na {
                for y2 in 0..nb {
                    table[enc(x1, y1) * order + enc(x2, y2)] = enc(a.mul(x1, x2), b.mul(y1, y2));
                }
            }
        }
    }
    let mut names = Vec::with_capacity(order);
    for x in 0..na {
        for y in 0..nb {
            names.push(format!("({},{})", a.elem_name(x), b.elem_name(y)));
        }
    }
    FiniteGroupTable::new(
        format!("{}x{}", a.name(), b.name()),
        order,
        table,
        names,
    )
    .expect("product table is a group")
}

/// Groups addressable by name on the command line and in the test batteries.
pub const CATALOG: &[&str] = &["C1", "C2", "C3", "C4", "C6", "V4", "S3", "D4", "Q8"];

pub fn by_name(name: &str) -> Result<FiniteGroupTable> {
    match name.to_ascii_uppercase().as_str() {
        "C1" => Ok(cyclic(1)),
        "C2" => Ok(cyclic(2)),
        "C3" => Ok(cyclic(3)),
        "C4" => Ok(cyclic(4)),
        "C6" => Ok(cyclic(6)),
        "V4" => {
            let v = direct_product(&cyclic(2), &cyclic(2));
            let mut v = v;
            v.name = "V4".to_string();
            Ok(v)
        }
        "S3" => Ok(dihedral(3)),
        "D4" => Ok(dihedral(4)),
        "Q8" => Ok(quaternion()),
        other => Err(Error::InvalidGroup(format!(
            "unknown group {other:?}; known: {}",
            CATALOG.join(", ")
        ))),
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Closure of a generating set under the product (inverses are free in a
/// finite group). Always contains the identity. Returned sorted.
pub fn subgroup_generated(g: &FiniteGroupTable, gens: &[usize]) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    seen.insert(g.identity());
    let mut queue: VecDeque<usize> = seen.iter().copied().collect();
    for &x in gens {
        if seen.insert(x) {
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &h in gens {
            for y in [g.mul(x, h), g.mul(h, x)] {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    // The closure under left/right products by generators of a set containing
    // e and the generators is already the generated subgroup in a finite group.
    seen.into_iter().collect()
}

/// All subgroups, by closing every generating subset of size ≤ log₂(order)+1.
pub fn all_subgroups(g: &FiniteGroupTable) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut max_gens = 1usize;
    while (1usize << max_gens) < n {
        max_gens += 1;
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(vec![g.identity()]);
    let elems: Vec<usize> = (0..n).collect();
    let mut stack = vec![(Vec::<usize>::new(), 0usize)];
    while let Some((gens, start)) = stack.pop() {
        if gens.len() < max_gens {
            for (pos, &e) in elems.iter().enumerate().skip(start) {
                let mut next = gens.clone();
                next.push(e);
                found.insert(subgroup_generated(g, &next));
                stack.push((next, pos + 1));
            }
        }
    }
    found.into_iter().collect()
}

pub fn is_subgroup(g: &FiniteGroupTable, elems: &[usize]) -> bool {
    let set: BTreeSet<usize> = elems.iter().copied().collect();
    set.contains(&g.identity())
        && set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))))
}

/// The subgroup on `elems` as a standalone table, with positions in `elems`
/// as the new element indices and names carried over from the ambient.
pub fn subgroup_table(
    g: &FiniteGroupTable,
    elems: &[usize],
    name: impl Into<String>,
) -> Result<FiniteGroupTable> {
    if !is_subgroup(g, elems) {
        return Err(Error::InvalidGroup(
            "element set is not closed under multiplication".into(),
        ));
    }
    let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let n = elems.len();
    let mut table = vec![0usize; n * n];
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            table[i * n + j] = pos[&g.mul(a, b)];
        }
    }
    let names = elems.iter().map(|&e| g.elem_name(e).to_string()).collect();
    FiniteGroupTable::new(name, n, table, names)
}

pub fn is_normal_subgroup(g: &FiniteGroupTable, elems: &[usize]) -> bool {
    if !is_subgroup(g, elems) {
        return false;
    }
    let set: BTreeSet<usize> = elems.iter().copied().collect();
    (0..g.order()).all(|x| {
        set.iter()
            .all(|&h| set.contains(&g.mul(g.mul(x, h), g.inv(x))))
    })
}

pub fn normal_subgroups(g: &FiniteGroupTable) -> Vec<Vec<usize>> {
    all_subgroups(g)
        .into_iter()
        .filter(|s| is_normal_subgroup(g, s))
        .collect()
}

/// The subgroup generated by commutators [x,y] = x y x⁻¹ y⁻¹ with x ∈ n,
/// y ∈ m. With n = m = G this is the derived subgroup.
pub fn commutator_subgroup(g: &FiniteGroupTable, n: &[usize], m: &[usize]) -> Vec<usize> {
    let mut comms = Vec::new();
    for &x in n {
        for &y in m {
            let c = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
            comms.push(c);
        }
    }
    subgroup_generated(g, &comms)
}

/// Quotient by a normal subgroup. Returns the quotient table and the
/// element-to-coset projection. Coset order follows the minimal
/// representative.
pub fn quotient_table(
    g: &FiniteGroupTable,
    normal: &[usize],
) -> Result<(FiniteGroupTable, Vec<usize>)> {
    if !is_normal_subgroup(g, normal) {
        return Err(Error::NotNormal(format!(
            "subset is not a normal subgroup of {}",
            g.name()
        )));
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        for &h in normal {
            coset_of[g.mul(x, h)] = idx;
        }
        reps.push(x);
    }
    let q = reps.len();
    let mut table = vec![0usize; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * q + j] = coset_of[g.mul(a, b)];
        }
    }
    let names = reps
        .iter()
        .map(|&r| format!("[{}]", g.elem_name(r)))
        .collect();
    let qt = FiniteGroupTable::new(format!("{}/N", g.name()), q, table, names)?;
    Ok((qt, coset_of))
}

/// A minimal-size generating set, found by exhausting subsets in size order.
pub fn minimal_generating_set(g: &FiniteGroupTable) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    for size in 1..=n {
        let mut stack = vec![(Vec::<usize>::new(), 0usize)];
        while let Some((gens, start)) = stack.pop() {
            if gens.len() == size {
                if subgroup_generated(g, &gens).len() == n {
                    return gens;
                }
                continue;
            }
            for e in start..n {
                let mut next = gens.clone();
                next.push(e);
                stack.push((next, e + 1));
            }
        }
    }
    unreachable!("the full element set generates");
}

/// Expresses each element as a word in the given generators (empty word for
/// the identity). None when the generators do not generate the whole group.
pub fn word_expressions(g: &FiniteGroupTable, gens: &[usize]) -> Option<Vec<Vec<usize>>> {
    let n = g.order();
    let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
    words[g.identity()] = Some(Vec::new());
    let mut queue = VecDeque::new();
    queue.push_back(g.identity());
    while let Some(x) = queue.pop_front() {
        for (gi, &h) in gens.iter().enumerate() {
            let y = g.mul(x, h);
            if words[y].is_none() {
                let mut w = words[x].clone().unwrap();
                w.push(gi);
                words[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    words.into_iter().collect()
}

/// Every group homomorphism a → b, as element maps, in a deterministic order.
/// Enumerates images of a minimal generating set (pruned by element-order
/// divisibility) and keeps the candidates that verify on the full table.
pub fn all_homs(a: &FiniteGroupTable, b: &FiniteGroupTable) -> Vec<Vec<usize>> {
    let gens = minimal_generating_set(a);
    if gens.is_empty() {
        return vec![vec![b.identity(); a.order()]];
    }
    let words = word_expressions(a, &gens).expect("minimal generating set generates");
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        // Prune: image order must divide generator order.
        let ok = gens
            .iter()
            .zip(&choice)
            .all(|(&gen, &img)| gens_order_ok(a.element_order(gen), b.element_order(img)));
        if ok {
            let map: Vec<usize> = words
                .iter()
                .map(|w| w.iter().fold(b.identity(), |acc, &gi| b.mul(acc, choice[gi])))
                .collect();
            let hom = (0..a.order())
                .all(|x| (0..a.order()).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
            if hom {
                out.push(map);
            }
        }
        // Odometer over candidate images.
        for i in (0..choice.len()).rev() {
            choice[i] += 1;
            if choice[i] < b.order() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
    out
}

fn gens_order_ok(gen_order: usize, img_order: usize) -> bool {
    gen_order % img_order == 0
}

/// Surjective homomorphisms only.
pub fn all_epimorphisms(a: &FiniteGroupTable, b: &FiniteGroupTable) -> Vec<Vec<usize>> {
    all_homs(a, b)
        .into_iter()
        .filter(|map| {
            let img: BTreeSet<usize> = map.iter().copied().collect();
            img.len() == b.order()
        })
        .collect()
}

/// An isomorphism a → b as an element map, if one exists.
pub fn find_isomorphism(a: &FiniteGroupTable, b: &FiniteGroupTable) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    // Cheap invariant: multiset of element orders.
    let mut oa: Vec<usize> = (0..a.order()).map(|x| a.element_order(x)).collect();
    let mut ob: Vec<usize> = (0..b.order()).map(|x| b.element_order(x)).collect();
    oa.sort_unstable();
    ob.sort_unstable();
    if oa != ob {
        return None;
    }
    all_homs(a, b).into_iter().find(|map| {
        let img: BTreeSet<usize> = map.iter().copied().collect();
        img.len() == a.order()
    })
}

/// The conjugation action table: `conj[x][h] = x h x⁻¹` for h in a normal
/// subgroup, used when building semidirect-product fixtures.
pub fn conjugation_action(
    g: &FiniteGroupTable,
    normal: &[usize],
) -> Result<BTreeMap<(usize, usize), usize>> {
    if !is_normal_subgroup(g, normal) {
        return Err(Error::NotNormal("conjugation needs a normal subgroup".into()));
    }
    let mut out = BTreeMap::new();
    for x in 0..g.order() {
        for &h in normal {
            out.insert((x, h), g.mul(g.mul(x, h), g.inv(x)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let s3 = dihedral(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        // r·s ≠ s·r
        assert_ne!(s3.mul(1, 3), s3.mul(3, 1));
        // s r s = r⁻¹
        assert_eq!(s3.mul(s3.mul(3, 1), 3), s3.inv(1));
    }

    #[test]
    fn quaternion_relations_hold() {
        let q = quaternion();
        let (i, j, k, minus_one) = (2, 4, 6, 1);
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.mul(j, j), minus_one);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), q.inv(k));
        assert_eq!(q.element_order(minus_one), 2);
        assert_eq!(q.element_order(i), 4);
    }

    #[test]
    fn subgroup_counts_match_the_classics() {
        // S₃: {e}, three ⟨transposition⟩, A₃, S₃ — six subgroups.
        assert_eq!(all_subgroups(&dihedral(3)).len(), 6);
        // D₄ has ten subgroups.
        assert_eq!(all_subgroups(&dihedral(4)).len(), 10);
        // Q₈ has six: 1, ⟨−1⟩, ⟨i⟩, ⟨j⟩, ⟨k⟩, Q₈.
        assert_eq!(all_subgroups(&quaternion()).len(), 6);
    }

    #[test]
    fn normal_subgroups_of_s3() {
        let s3 = dihedral(3);
        let normals = normal_subgroups(&s3);
        assert_eq!(normals.len(), 3);
        assert!(normals.contains(&vec![0]));
        assert!(normals.contains(&vec![0, 1, 2])); // A₃ = {e, r, r²}
        assert!(normals.contains(&vec![0, 1, 2, 3, 4, 5]));
        // Every subgroup of Q₈ is normal.
        let q8 = quaternion();
        assert_eq!(normal_subgroups(&q8).len(), all_subgroups(&q8).len());
    }

    #[test]
    fn derived_subgroups() {
        let s3 = dihedral(3);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(commutator_subgroup(&s3, &all, &all), vec![0, 1, 2]);
        let d4 = dihedral(4);
        let all: Vec<usize> = (0..8).collect();
        assert_eq!(commutator_subgroup(&d4, &all, &all), vec![0, 2]); // {e, r²}
        let q8 = quaternion();
        let all: Vec<usize> = (0..8).collect();
        assert_eq!(commutator_subgroup(&q8, &all, &all), vec![0, 1]); // {±1}
    }

    #[test]
    fn quotients() {
        let s3 = dihedral(3);
        let (q, proj) = quotient_table(&s3, &[0, 1, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[0], proj[1]);
        assert_ne!(proj[0], proj[3]);
        // D₄ / ⟨r²⟩ ≅ V4, not C4.
        let d4 = dihedral(4);
        let (q, _) = quotient_table(&d4, &[0, 2]).unwrap();
        assert!(find_isomorphism(&q, &by_name("V4").unwrap()).is_some());
        assert!(find_isomorphism(&q, &cyclic(4)).is_none());
        // Quotient by a non-normal subgroup is refused.
        assert!(quotient_table(&s3, &[0, 3]).is_err());
    }

    #[test]
    fn hom_counts() {
        let c2 = cyclic(2);
        let c3 = cyclic(3);
        let s3 = dihedral(3);
        assert_eq!(all_homs(&c2, &c3).len(), 1);
        assert_eq!(all_homs(&c2, &c2).len(), 2);
        // S₃ → C₂: trivial and sign.
        assert_eq!(all_homs(&s3, &c2).len(), 2);
        assert_eq!(all_epimorphisms(&s3, &c2).len(), 1);
        // Hom(C₆, C₆) has 6 elements; Hom(S₃, S₃) has 10 (1 trivial,
        // 3 through sign onto a transposition ×... counted: 10).
        assert_eq!(all_homs(&cyclic(6), &cyclic(6)).len(), 6);
        assert_eq!(all_homs(&s3, &s3).len(), 10);
    }

    #[test]
    fn iso_search_distinguishes_the_order_eight_groups() {
        let d4 = dihedral(4);
        let q8 = quaternion();
        let c8 = cyclic(8);
        assert!(find_isomorphism(&d4, &q8).is_none());
        assert!(find_isomorphism(&d4, &c8).is_none());
        assert!(find_isomorphism(&d4, &d4).is_some());
        // C₂ × C₃ ≅ C₆.
        let prod = direct_product(&cyclic(2), &cyclic(3));
        assert!(find_isomorphism(&prod, &cyclic(6)).is_some());
    }

    #[test]
    fn words_express_everything() {
        let q8 = quaternion();
        let gens = minimal_generating_set(&q8);
        assert_eq!(gens.len(), 2);
        let words = word_expressions(&q8, &gens).unwrap();
        for (x, w) in words.iter().enumerate() {
            let val = w.iter().fold(q8.identity(), |acc, &gi| q8.mul(acc, gens[gi]));
            assert_eq!(val, x);
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        // 2×2 table that is not a Latin square.
        let bad = FiniteGroupTable::new(
            "bad",
            2,
            vec![0, 0, 1, 1],
            vec!["a".into(), "b".into()],
        );
        assert!(bad.is_err());
    }
}
