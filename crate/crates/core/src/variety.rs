//! Subdirectly irreducible members of a finitely generated variety, and the
//! FD-maximality decision for V-varieties.

use std::fmt;

use crate::algebra::{FiniteAlgebra, Homomorphism};
use crate::compat::{check_xyz, relation_of_pair, ERelation, XyzCheck};
use crate::congruence::congruence_lattice;
use crate::error::{Error, Guards, Result};
use crate::lattice::FiniteLattice;
use crate::morphism::{are_isomorphic, enumerate_homs};

/// SI members of `V(generator)` up to isomorphism, sorted by size then table.
#[derive(Clone, Debug)]
pub struct SIInventory {
    pub generator: FiniteAlgebra,
    /// Members with a two-element congruence lattice.
    pub simples: Vec<FiniteAlgebra>,
    /// Members whose congruence lattice is isomorphic to `V`.
    pub v_algebras: Vec<FiniteAlgebra>,
    /// Remaining SI members.
    pub others: Vec<FiniteAlgebra>,
}

impl SIInventory {
    pub fn members(&self) -> impl Iterator<Item = &FiniteAlgebra> {
        self.simples
            .iter()
            .chain(&self.v_algebras)
            .chain(&self.others)
    }

    pub fn len(&self) -> usize {
        self.simples.len() + self.v_algebras.len() + self.others.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every SI member is simple or has `Con ≅ V`.
    pub fn is_v_variety(&self) -> bool {
        self.others.is_empty()
    }

    /// The member isomorphic to `alg`, if any.
    pub fn find_isomorphic(&self, alg: &FiniteAlgebra) -> Option<&FiniteAlgebra> {
        self.members().find(|m| are_isomorphic(m, alg).is_some())
    }

    /// Replaces each member isomorphic to one of `named` by that algebra, so
    /// reports use its name and labels.
    pub fn adopt_names(&mut self, named: &[FiniteAlgebra]) {
        for class in [&mut self.simples, &mut self.v_algebras, &mut self.others] {
            for m in class.iter_mut() {
                if let Some(r) = named.iter().find(|r| are_isomorphic(m, r).is_some()) {
                    *m = r.clone();
                }
            }
        }
    }
}

/// Collects `HS(generator)` filtered to SI algebras, deduplicated up to
/// isomorphism (keeping the least table encoding).
///
/// With `check_distributive`, every subalgebra's congruence lattice must be
/// distributive; quotients inherit this as intervals.
pub fn enumerate_si(
    generator: &FiniteAlgebra,
    guards: &Guards,
    check_distributive: bool,
) -> Result<SIInventory> {
    let mut found: Vec<FiniteAlgebra> = Vec::new();
    for set in generator.all_subalgebras(guards)? {
        if set.len() < 2 {
            continue;
        }
        let (sub, _) = generator.induced_subalgebra(&set)?;
        let con = congruence_lattice(&sub, guards)?;
        if check_distributive && !con.lattice.is_distributive() {
            return Err(Error::precondition(format!(
                "Con({}) is not distributive, so the generated variety is not congruence-distributive",
                sub.name
            )));
        }
        for theta in con.meet_irreducibles() {
            let (q, _) = sub.quotient(con.get(theta))?;
            match found.iter_mut().find(|f| are_isomorphic(f, &q).is_some()) {
                Some(existing) => {
                    if q.table_encoding() < existing.table_encoding() {
                        *existing = q;
                    }
                }
                None => found.push(q),
            }
        }
    }
    found.sort_by_key(|a| (a.len(), a.table_encoding()));
    let v = FiniteLattice::v();
    let mut inv = SIInventory {
        generator: generator.clone(),
        simples: vec![],
        v_algebras: vec![],
        others: vec![],
    };
    for alg in found {
        let con = congruence_lattice(&alg, guards)?;
        if con.len() == 2 {
            inv.simples.push(alg);
        } else if con.lattice.is_isomorphic(&v) {
            inv.v_algebras.push(alg);
        } else {
            inv.others.push(alg);
        }
    }
    Ok(inv)
}

/// The multi-generator form: the variety generated by all of `generators`
/// is generated by their product.
pub fn enumerate_si_many(
    generators: &[FiniteAlgebra],
    guards: &Guards,
    check_distributive: bool,
) -> Result<SIInventory> {
    match generators {
        [] => Err(Error::precondition("no generator given")),
        [one] => enumerate_si(one, guards, check_distributive),
        many => {
            let product = FiniteAlgebra::direct_product(many, guards)?;
            enumerate_si(&product, guards, check_distributive)
        }
    }
}

/// An algebra `C` with `Con C ≅ V`, a simple `B`, and two surjections
/// `h0, h1 : C → B` with distinct kernels, together with `E = (h0, h1)[C]`.
#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub c: FiniteAlgebra,
    pub b: FiniteAlgebra,
    pub h0: Homomorphism,
    pub h1: Homomorphism,
    pub e: ERelation,
}

/// One ordered pair of surjections from a `V`-algebra onto simples.
#[derive(Clone, Debug)]
pub struct QPair {
    /// Index into `v_algebras`.
    pub c: usize,
    /// Indices into `simples` of the targets of `h0` and `h1`.
    pub b0: usize,
    pub b1: usize,
    pub h0: Homomorphism,
    pub h1: Homomorphism,
    /// Defined when both maps have the same target.
    pub e: Option<ERelation>,
}

impl QPair {
    pub fn same_target(&self) -> bool {
        self.b0 == self.b1
    }

    pub fn witness(&self, inv: &SIInventory) -> Option<WitnessPair> {
        let e = self.e.clone()?;
        Some(WitnessPair {
            c: inv.v_algebras[self.c].clone(),
            b: inv.simples[self.b0].clone(),
            h0: self.h0.clone(),
            h1: self.h1.clone(),
            e,
        })
    }
}

/// All ordered pairs of surjections with distinct kernels from each
/// `V`-algebra onto the simples, both orders kept.
pub fn enumerate_q(inv: &SIInventory, guards: &Guards) -> Result<Vec<QPair>> {
    if !inv.is_v_variety() {
        return Err(not_v_variety(inv));
    }
    let mut out = Vec::new();
    for (ci, c) in inv.v_algebras.iter().enumerate() {
        let mut onto: Vec<(usize, Homomorphism)> = Vec::new();
        for (bi, b) in inv.simples.iter().enumerate() {
            for h in enumerate_homs(c, b, true, guards)? {
                onto.push((bi, h));
            }
        }
        for (b0, h0) in &onto {
            for (b1, h1) in &onto {
                if h0.kernel() == h1.kernel() {
                    continue;
                }
                let e = if b0 == b1 {
                    Some(relation_of_pair(c, &inv.simples[*b0], h0, h1)?)
                } else {
                    None
                };
                out.push(QPair {
                    c: ci,
                    b0: *b0,
                    b1: *b1,
                    h0: h0.clone(),
                    h1: h1.clone(),
                    e,
                });
            }
        }
    }
    Ok(out)
}

fn not_v_variety(inv: &SIInventory) -> Error {
    let names: Vec<&str> = inv.others.iter().map(|a| a.name.as_str()).collect();
    Error::precondition(format!(
        "not a V-variety: SI members neither simple nor with Con ≅ V: {}",
        names.join(", ")
    ))
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub maximal: bool,
    pub witness: Option<WitnessPair>,
    pub reason: String,
    pub inventory: SIInventory,
    pub pairs: Vec<QPair>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "maximal: {}\nreason: {}", self.maximal, self.reason)
    }
}

/// Decides congruence FD-maximality of the V-variety generated by `generator`.
pub fn decide_fdmax(
    generator: &FiniteAlgebra,
    guards: &Guards,
    check_distributive: bool,
) -> Result<Verdict> {
    let inv = enumerate_si(generator, guards, check_distributive)?;
    decide_fdmax_for(inv, guards)
}

/// The decision on a precomputed (possibly renamed) inventory.
pub fn decide_fdmax_for(inv: SIInventory, guards: &Guards) -> Result<Verdict> {
    let pairs = enumerate_q(&inv, guards)?;
    let verdict = |maximal, witness, reason: String, inv, pairs| Verdict {
        maximal,
        witness,
        reason,
        inventory: inv,
        pairs,
    };
    if inv.v_algebras.is_empty() {
        return Ok(verdict(
            false,
            None,
            "no SI member has a congruence lattice isomorphic to V".into(),
            inv,
            pairs,
        ));
    }
    if pairs.is_empty() {
        return Ok(verdict(
            false,
            None,
            "no V-algebra has two surjections onto simple members with distinct kernels".into(),
            inv,
            pairs,
        ));
    }
    let mut failures = Vec::new();
    for p in pairs.iter().filter(|p| p.same_target()) {
        let e = p.e.as_ref().expect("same target");
        match check_xyz(e) {
            XyzCheck::Holds(_) => {
                let w = p.witness(&inv).expect("same target");
                let reason = format!(
                    "pair {} satisfies the xyz condition (iii) with E = {}",
                    describe_pair(&inv, p),
                    show_relation(e)
                );
                return Ok(verdict(true, Some(w), reason, inv, pairs));
            }
            XyzCheck::Fails(ab) => failures.push(format!(
                "{} fails the xyz condition (iii) at {}",
                describe_pair(&inv, p),
                e.format_pair(ab)
            )),
            XyzCheck::Inapplicable => failures.push(format!(
                "{} has E without an off-diagonal pair",
                describe_pair(&inv, p)
            )),
        }
    }
    let reason = if failures.is_empty() {
        "no pair of surjections shares a common simple target".to_string()
    } else {
        failures.join("; ")
    };
    Ok(verdict(false, None, reason, inv, pairs))
}

fn describe_pair(inv: &SIInventory, p: &QPair) -> String {
    let c = &inv.v_algebras[p.c];
    let b0 = &inv.simples[p.b0];
    let b1 = &inv.simples[p.b1];
    format!(
        "({}, {}) from {} onto {}",
        p.h0.kernel().display_with(&c.elements),
        p.h1.kernel().display_with(&c.elements),
        c.name,
        if p.b0 == p.b1 {
            b0.name.clone()
        } else {
            format!("{} and {}", b0.name, b1.name)
        }
    )
}

pub fn show_relation(e: &ERelation) -> String {
    let parts: Vec<String> = e.pairs().into_iter().map(|p| e.format_pair(p)).collect();
    format!("{{{}}}", parts.join(","))
}
