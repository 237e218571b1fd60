//! The group `SL(2,F₂)^×n ⋊ Sₙ` and its actions on Pauli operators,
//! stabilizer groups, Lagrangian subspaces and points of the minor variety.
//!
//! An element `(slots, perm)` acts by first applying `slots[i]` to qubit
//! `i`, then moving qubit `i` to position `perm[i]`. With that convention
//! the semidirect law is
//!
//! ```text
//! (g, σ)·(h, τ) = (g∘τ · h, σ∘τ),   i.e.  slots[i] = g[τ(i)]·h[i]
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::f2core::BitMatrix;
use crate::lagrangian::Lagrangian;
use crate::minorvariety::MinorPoint;
use crate::pauli::{PauliOp, StabilizerGroup};

/// Generators of the single-qubit local Clifford group, as conjugations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gate {
    H,
    S,
}

/// An element of `GL(2,F₂) = SL(2,F₂)` acting on `(μ, ν)` by
/// `(μ, ν) ↦ (aμ + bν, cμ + dν)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Local2 {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

impl Local2 {
    pub const ID: Local2 = Local2::raw(true, false, false, true);
    /// Image of the Hadamard gate: swaps X and Z.
    pub const HAD: Local2 = Local2::raw(false, true, true, false);
    /// Image of `√Z`: `μ' = μ + ν`.
    pub const SQZ: Local2 = Local2::raw(true, true, false, true);

    /// The six elements with their canonical names and gate words. A word
    /// is applied left to right: `HS` means conjugate by S, then by H.
    const TABLE: [(&'static str, Local2, &'static [Gate]); 6] = [
        ("I", Local2::ID, &[]),
        ("H", Local2::HAD, &[Gate::H]),
        ("S", Local2::SQZ, &[Gate::S]),
        ("HS", Local2::raw(false, true, true, true), &[Gate::S, Gate::H]),
        ("SH", Local2::raw(true, true, true, false), &[Gate::H, Gate::S]),
        ("HSH", Local2::raw(true, false, true, true), &[Gate::H, Gate::S, Gate::H]),
    ];

    const fn raw(a: bool, b: bool, c: bool, d: bool) -> Local2 {
        Local2 { a, b, c, d }
    }

    pub fn new(a: bool, b: bool, c: bool, d: bool) -> Result<Local2> {
        if (a & d) ^ (b & c) {
            Ok(Local2 { a, b, c, d })
        } else {
            Err(Error::Parse("singular 2x2 matrix".into()))
        }
    }

    pub fn all() -> impl Iterator<Item = Local2> {
        Self::TABLE.iter().map(|e| e.1)
    }

    fn entry(self) -> &'static (&'static str, Local2, &'static [Gate]) {
        Self::TABLE
            .iter()
            .find(|e| e.1 == self)
            .expect("every invertible 2x2 matrix is tabulated")
    }

    pub fn name(self) -> &'static str {
        self.entry().0
    }

    pub fn from_name(name: &str) -> Option<Local2> {
        Self::TABLE.iter().find(|e| e.0 == name).map(|e| e.1)
    }

    pub fn is_identity(self) -> bool {
        self == Self::ID
    }

    /// Matrix product `self · other`.
    pub fn mul(self, other: Local2) -> Local2 {
        Local2 {
            a: (self.a & other.a) ^ (self.b & other.c),
            b: (self.a & other.b) ^ (self.b & other.d),
            c: (self.c & other.a) ^ (self.d & other.c),
            d: (self.c & other.b) ^ (self.d & other.d),
        }
    }

    pub fn inverse(self) -> Local2 {
        // det = 1, so the inverse is the adjugate
        Local2 {
            a: self.d,
            b: self.b,
            c: self.c,
            d: self.a,
        }
    }

    #[inline]
    pub fn apply(self, mu: bool, nu: bool) -> (bool, bool) {
        ((self.a & mu) ^ (self.b & nu), (self.c & mu) ^ (self.d & nu))
    }

    /// Conjugates a single-qubit `i^k Z^μ X^ν` through the gate word.
    fn conjugate(self, mut k: u8, mut mu: bool, mut nu: bool) -> (u8, bool, bool) {
        for gate in self.entry().2 {
            match gate {
                // H Z^μ X^ν H = X^μ Z^ν = (-1)^{μν} Z^ν X^μ
                Gate::H => {
                    k += 2 * u8::from(mu & nu);
                    std::mem::swap(&mut mu, &mut nu);
                }
                // S Z^μ X^ν S† = Z^μ (iZX)^ν = i^ν Z^{μ+ν} X^ν
                Gate::S => {
                    k += u8::from(nu);
                    mu ^= nu;
                }
            }
        }
        (k % 4, mu, nu)
    }
}

impl fmt::Debug for Local2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    slots: Vec<Local2>,
    perm: Vec<usize>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        Self {
            slots: vec![Local2::ID; n],
            perm: (0..n).collect(),
        }
    }

    /// `perm[i]` is the (0-based) position qubit `i` is moved to.
    pub fn new(slots: Vec<Local2>, perm: Vec<usize>) -> Result<Self> {
        if slots.len() != perm.len() {
            return Err(Error::SizeMismatch {
                expected: slots.len(),
                found: perm.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse("not a permutation".into()));
            }
        }
        Ok(Self { slots, perm })
    }

    pub fn local(slots: Vec<Local2>) -> Self {
        let n = slots.len();
        Self {
            slots,
            perm: (0..n).collect(),
        }
    }

    /// `m` on slot `q` (0-based), identity elsewhere.
    pub fn single(n: usize, q: usize, m: Local2) -> Self {
        let mut g = Self::identity(n);
        g.slots[q] = m;
        g
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        Self::new(vec![Local2::ID; perm.len()], perm)
    }

    /// Transposition of the 0-based positions `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut g = Self::identity(n);
        g.perm.swap(i, j);
        g
    }

    /// The same local element on every slot.
    pub fn uniform(n: usize, m: Local2) -> Self {
        Self::local(vec![m; n])
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Local2] {
        &self.slots
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.slots.iter().all(|s| s.is_identity()) && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: n,
            });
        }
        Ok(())
    }

    /// The product `self · other` (apply `other` first).
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check(other.n())?;
        let slots = (0..self.n())
            .map(|i| self.slots[other.perm[i]].mul(other.slots[i]))
            .collect();
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        Ok(GroupElement { slots, perm })
    }

    pub fn inverse(&self) -> GroupElement {
        let n = self.n();
        let mut slots = vec![Local2::ID; n];
        let mut perm = vec![0; n];
        for i in 0..n {
            slots[self.perm[i]] = self.slots[i].inverse();
            perm[self.perm[i]] = i;
        }
        GroupElement { slots, perm }
    }

    /// Conjugation action on a Pauli operator, phases included.
    pub fn act_on_pauli(&self, p: &PauliOp) -> Result<PauliOp> {
        self.check(p.n())?;
        let n = self.n();
        let mut out = PauliOp::identity(n);
        let (k_out, mu_out, nu_out) = out.parts_mut();
        let mut k = p.k();
        for i in 0..n {
            let (dk, mu, nu) = self.slots[i].conjugate(0, p.mu().get(i), p.nu().get(i));
            k += dk;
            mu_out.set(self.perm[i], mu);
            nu_out.set(self.perm[i], nu);
        }
        *k_out = k % 4;
        Ok(out)
    }

    /// Applies the element to every generator; generator `j` moves to
    /// position `perm[j]`.
    pub fn act_on_group(&self, s: &StabilizerGroup) -> Result<StabilizerGroup> {
        self.check(s.n())?;
        let mut gens = vec![PauliOp::identity(s.n()); s.n()];
        for (j, g) in s.generators().iter().enumerate() {
            gens[self.perm[j]] = self.act_on_pauli(g)?;
        }
        Ok(StabilizerGroup::from_parts_unchecked(s.n(), gens))
    }

    /// Applies `ρ(slots)` and the row permutation to a packed `(μ‖ν)` word.
    pub(crate) fn act_on_word(&self, w: u64) -> u64 {
        let n = self.n();
        let mut out = 0u64;
        for i in 0..n {
            let (mu, nu) = self.slots[i].apply(w >> i & 1 == 1, w >> (n + i) & 1 == 1);
            let t = self.perm[i];
            out |= u64::from(mu) << t | u64::from(nu) << (n + t);
        }
        out
    }

    pub fn act_on_lagrangian(&self, l: &Lagrangian) -> Result<Lagrangian> {
        self.check(l.n())?;
        let gens = l.generator_rows();
        let mut rows = BitMatrix::zeros(l.n(), 2 * l.n());
        for r in 0..l.n() {
            rows.row_words_mut(r)[0] = self.act_on_word(gens.row_u64(r));
        }
        Ok(Lagrangian::from_isotropic_rows_unchecked(rows))
    }

    pub fn act_on_point(&self, p: &MinorPoint) -> Result<MinorPoint> {
        self.check(p.n())?;
        let mut out = p.clone();
        for (i, &m) in self.slots.iter().enumerate() {
            out.mix_slot(i, m);
        }
        Ok(out.permuted(&self.perm))
    }

    /// Parses the text form `H@1 S@3 perm=(1 2)`; `e` is the identity.
    pub fn parse(s: &str, n: usize) -> Result<GroupElement> {
        let (local, cycles) = match s.find("perm=") {
            Some(at) => (&s[..at], Some(&s[at + 5..])),
            None => (s, None),
        };
        let mut g = GroupElement::identity(n);
        for tok in local.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let (name, slot) = tok
                .split_once('@')
                .ok_or_else(|| Error::Parse(format!("expected NAME@slot, got {tok:?}")))?;
            let m = Local2::from_name(name)
                .ok_or_else(|| Error::Parse(format!("unknown local element {name:?}")))?;
            let q: usize = slot
                .parse()
                .map_err(|_| Error::Parse(format!("bad slot {slot:?}")))?;
            if q == 0 || q > n {
                return Err(Error::IndexOutOfRange { index: q, bound: n });
            }
            g.slots[q - 1] = m;
        }
        if let Some(cycles) = cycles {
            g.perm = parse_cycles(cycles, n)?;
        }
        Ok(g)
    }
}

fn parse_cycles(s: &str, n: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::Parse(format!("malformed cycle notation {s:?}")))?;
        let elems = body
            .0
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                _ => Err(Error::Parse(format!("bad cycle element {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, &e) in elems.iter().enumerate() {
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::Parse("repeated element in cycles".into()));
            }
            perm[e] = elems[(i + 1) % elems.len()];
        }
        rest = body.1.trim_start();
    }
    Ok(perm)
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .slots
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_identity())
            .map(|(i, s)| format!("{}@{}", s.name(), i + 1))
            .collect();
        let mut seen = vec![false; self.n()];
        let mut cycles = String::new();
        for start in 0..self.n() {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut j = self.perm[start];
            while j != start {
                seen[j] = true;
                cycle.push(j + 1);
                j = self.perm[j];
            }
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            cycles.push_str(&format!("({})", body.join(" ")));
        }
        if !cycles.is_empty() {
            parts.push(format!("perm={cycles}"));
        }
        if parts.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({self})")
    }
}

/// Generating set: `HAD` on each slot, `SQZ` on each slot and the adjacent
/// transpositions.
pub fn generators(n: usize) -> Vec<GroupElement> {
    let mut gens = Vec::with_capacity(3 * n);
    gens.extend((0..n).map(|q| GroupElement::single(n, q, Local2::HAD)));
    gens.extend((0..n).map(|q| GroupElement::single(n, q, Local2::SQZ)));
    gens.extend((0..n.saturating_sub(1)).map(|i| GroupElement::transposition(n, i, i + 1)));
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn table_matches_words() {
        for (name, m, word) in Local2::TABLE {
            let product = word.iter().fold(Local2::ID, |acc, g| {
                let gm = match g {
                    Gate::H => Local2::HAD,
                    Gate::S => Local2::SQZ,
                };
                gm.mul(acc)
            });
            assert_eq!(product, m, "{name}");
            assert!(Local2::new(m.a, m.b, m.c, m.d).is_ok());
        }
        let distinct: HashSet<Local2> = Local2::all().collect();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn single_qubit_conjugation_table() {
        let h = GroupElement::single(1, 0, Local2::HAD);
        let s = GroupElement::single(1, 0, Local2::SQZ);
        let cases = [
            (&h, "X", "Z"),
            (&h, "Z", "X"),
            (&h, "Y", "-Y"),
            (&s, "X", "Y"),
            (&s, "Z", "Z"),
            (&s, "Y", "-X"),
        ];
        for (g, input, expected) in cases {
            assert_eq!(g.act_on_pauli(&p(input)).unwrap().to_string(), expected, "{g} on {input}");
        }
    }

    #[test]
    fn permutation_moves_slots() {
        let g = GroupElement::permutation(vec![1, 2, 0]).unwrap();
        assert_eq!(g.act_on_pauli(&p("-ZXI")).unwrap().to_string(), "-IZX");
    }

    #[test]
    fn hadamard_on_group() {
        let s = StabilizerGroup::parse("ZI,IZ").unwrap();
        let g = GroupElement::single(2, 0, Local2::HAD);
        assert_eq!(g.act_on_group(&s).unwrap().to_string(), "XI,IZ");
    }

    #[test]
    fn compose_identity_and_permutations() {
        let g = GroupElement::parse("HS@1 S@2 perm=(1 3)", 3).unwrap();
        let e = GroupElement::identity(3);
        assert_eq!(e.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&e).unwrap(), g);
        let a = GroupElement::permutation(vec![1, 0, 2]).unwrap();
        let b = GroupElement::permutation(vec![0, 2, 1]).unwrap();
        // b first: 1→1, 2→3, 3→2; then a: 1→2, 2→1
        assert_eq!(a.compose(&b).unwrap().perm(), &[1, 2, 0]);
        assert_eq!(g.compose(&g.inverse()).unwrap(), e);
    }

    #[test]
    fn text_round_trip() {
        for s in ["e", "H@1", "H@1 S@3 perm=(1 2)", "HSH@2 perm=(1 3 2)", "perm=(1 2)(3 4)"] {
            let g = GroupElement::parse(s, 4).unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!(GroupElement::parse("Q@1", 2).is_err());
        assert!(GroupElement::parse("H@3", 2).is_err());
        assert!(GroupElement::parse("perm=(1 1)", 2).is_err());
    }

    fn closure_size(n: usize) -> usize {
        let gens = generators(n);
        let mut seen = HashSet::from([GroupElement::identity(n)]);
        let mut queue = VecDeque::from([GroupElement::identity(n)]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.compose(&x).unwrap();
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn generators_generate() {
        assert_eq!(generators(1).len(), 2);
        assert_eq!(closure_size(1), 6);
        assert_eq!(closure_size(2), 72);
        assert_eq!(closure_size(3), 1296);
    }
}
