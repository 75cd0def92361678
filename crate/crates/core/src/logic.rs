//! Atoms, Boolean event expressions, conditional events and constituents.
//!
//! Every decision here is made by sweeping the full truth table of the
//! declared atoms, so the atom count is capped (20 by default).

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;
use core::ops::{BitAnd, BitOr, Not};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ATOMS: usize = 20;

const RESERVED: [&str; 2] = ["true", "false"];

/// A named primitive event.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    /// Names start with a letter or `_` and continue with letters, digits or `_`.
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let mut chars = name.chars();
        let valid = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
            _ => false,
        };
        if !valid || RESERVED.contains(&name.as_str()) {
            return Err(Error::InvalidAtomName(name));
        }
        Ok(Atom(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Atom {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Builds a list of atoms, rejecting invalid or repeated names.
pub fn atoms<I, S>(names: I) -> Result<Vec<Atom>>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let atoms = names.into_iter().map(Atom::new).collect::<Result<Vec<_>>>()?;
    check_unique(&atoms)?;
    Ok(atoms)
}

fn check_unique(atoms: &[Atom]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for a in atoms {
        if !seen.insert(a.name()) {
            return Err(Error::DuplicateAtom(a.name().to_owned()));
        }
    }
    Ok(())
}

/// A Boolean formula over atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EventExpr {
    True,
    False,
    Atom(Atom),
    Not(Box<EventExpr>),
    And(Box<EventExpr>, Box<EventExpr>),
    Or(Box<EventExpr>, Box<EventExpr>),
}

impl EventExpr {
    pub fn atom(name: &str) -> Result<Self> {
        Atom::new(name).map(EventExpr::Atom)
    }

    /// Conjunction of all expressions; `True` when empty.
    pub fn all(exprs: impl IntoIterator<Item = EventExpr>) -> Self {
        exprs.into_iter().reduce(|a, b| a & b).unwrap_or(EventExpr::True)
    }

    /// Disjunction of all expressions; `False` when empty.
    pub fn any(exprs: impl IntoIterator<Item = EventExpr>) -> Self {
        exprs.into_iter().reduce(|a, b| a | b).unwrap_or(EventExpr::False)
    }

    /// Distinct atoms referenced, in first-appearance order.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            EventExpr::True | EventExpr::False => {}
            EventExpr::Atom(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            EventExpr::Not(e) => e.collect_atoms(out),
            EventExpr::And(a, b) | EventExpr::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            EventExpr::Or(..) => 0,
            EventExpr::And(..) => 1,
            _ => 2,
        }
    }

    fn fmt_child(&self, child: &EventExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() < self.precedence() {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

/// Renders in the `!`, `&`, `|` grammar with minimal parentheses.
impl fmt::Display for EventExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventExpr::True => f.write_str("true"),
            EventExpr::False => f.write_str("false"),
            EventExpr::Atom(a) => write!(f, "{a}"),
            EventExpr::Not(e) => {
                f.write_str("!")?;
                self.fmt_child(e, f)
            }
            EventExpr::And(a, b) => {
                self.fmt_child(a, f)?;
                f.write_str(" & ")?;
                // `&` and `|` associate to the left; a right child of equal
                // precedence needs parentheses to re-parse to the same tree.
                if b.precedence() <= self.precedence() {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            EventExpr::Or(a, b) => {
                self.fmt_child(a, f)?;
                f.write_str(" | ")?;
                if b.precedence() <= self.precedence() {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

impl Not for EventExpr {
    type Output = EventExpr;
    fn not(self) -> EventExpr {
        EventExpr::Not(Box::new(self))
    }
}

impl BitAnd for EventExpr {
    type Output = EventExpr;
    fn bitand(self, rhs: EventExpr) -> EventExpr {
        EventExpr::And(Box::new(self), Box::new(rhs))
    }
}

impl BitOr for EventExpr {
    type Output = EventExpr;
    fn bitor(self, rhs: EventExpr) -> EventExpr {
        EventExpr::Or(Box::new(self), Box::new(rhs))
    }
}

impl From<Atom> for EventExpr {
    fn from(a: Atom) -> Self {
        EventExpr::Atom(a)
    }
}

pub type Assignment = BTreeMap<Atom, bool>;

/// Standard Boolean semantics; every atom of `expr` must be assigned.
pub fn evaluate(expr: &EventExpr, assignment: &Assignment) -> Result<bool> {
    Ok(match expr {
        EventExpr::True => true,
        EventExpr::False => false,
        EventExpr::Atom(a) => *assignment.get(a.name()).ok_or_else(|| Error::UnknownAtom(a.name().to_owned()))?,
        EventExpr::Not(e) => !evaluate(e, assignment)?,
        EventExpr::And(a, b) => evaluate(a, assignment)? && evaluate(b, assignment)?,
        EventExpr::Or(a, b) => evaluate(a, assignment)? || evaluate(b, assignment)?,
    })
}

/// Expression with atoms resolved to bit positions of an assignment mask.
#[derive(Debug, Clone)]
enum Compiled {
    Const(bool),
    Bit(u32),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(expr: &EventExpr, atoms: &[Atom]) -> Result<Self> {
        Ok(match expr {
            EventExpr::True => Compiled::Const(true),
            EventExpr::False => Compiled::Const(false),
            EventExpr::Atom(a) => {
                let pos = atoms.iter().position(|x| x == a).ok_or_else(|| Error::UnknownAtom(a.name().to_owned()))?;
                Compiled::Bit(pos as u32)
            }
            EventExpr::Not(e) => Compiled::Not(Box::new(Compiled::new(e, atoms)?)),
            EventExpr::And(a, b) => {
                Compiled::And(Box::new(Compiled::new(a, atoms)?), Box::new(Compiled::new(b, atoms)?))
            }
            EventExpr::Or(a, b) => Compiled::Or(Box::new(Compiled::new(a, atoms)?), Box::new(Compiled::new(b, atoms)?)),
        })
    }

    fn eval(&self, mask: u64) -> bool {
        match self {
            Compiled::Const(v) => *v,
            Compiled::Bit(i) => mask >> i & 1 == 1,
            Compiled::Not(e) => !e.eval(mask),
            Compiled::And(a, b) => a.eval(mask) && b.eval(mask),
            Compiled::Or(a, b) => a.eval(mask) || b.eval(mask),
        }
    }
}

fn check_capacity(atoms: &[Atom], cap: usize) -> Result<()> {
    if atoms.len() > cap || atoms.len() > 63 {
        return Err(Error::Capacity { atoms: atoms.len(), cap });
    }
    Ok(())
}

/// Expands a bit mask into a named assignment (bit `k` is `atoms[k]`).
pub fn assignment_from_mask(atoms: &[Atom], mask: u64) -> Assignment {
    atoms.iter().enumerate().map(|(k, a)| (a.clone(), mask >> k & 1 == 1)).collect()
}

pub fn is_satisfiable(expr: &EventExpr, atoms: &[Atom]) -> Result<bool> {
    is_satisfiable_capped(expr, atoms, DEFAULT_MAX_ATOMS)
}

pub fn is_satisfiable_capped(expr: &EventExpr, atoms: &[Atom], cap: usize) -> Result<bool> {
    check_unique(atoms)?;
    check_capacity(atoms, cap)?;
    let compiled = Compiled::new(expr, atoms)?;
    Ok((0..1u64 << atoms.len()).any(|m| compiled.eval(m)))
}

/// True iff every conjunction of literals of `events` is satisfiable.
pub fn logically_independent(events: &[EventExpr], atoms: &[Atom]) -> Result<bool> {
    check_unique(atoms)?;
    check_capacity(atoms, DEFAULT_MAX_ATOMS)?;
    if events.len() > atoms.len() {
        // 2^k literal combinations cannot fit in 2^n assignments.
        return Ok(false);
    }
    let compiled = events.iter().map(|e| Compiled::new(e, atoms)).collect::<Result<Vec<_>>>()?;
    let mut seen = BTreeSet::new();
    for mask in 0..1u64 << atoms.len() {
        let word = compiled.iter().enumerate().fold(0u64, |w, (i, c)| w | (c.eval(mask) as u64) << i);
        seen.insert(word);
    }
    Ok(seen.len() == 1usize << events.len())
}

/// `consequent | antecedent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConditionalEvent {
    pub consequent: EventExpr,
    pub antecedent: EventExpr,
}

impl ConditionalEvent {
    pub fn new(consequent: EventExpr, antecedent: EventExpr) -> Self {
        Self { consequent, antecedent }
    }
}

impl fmt::Display for ConditionalEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) | ({})", self.consequent, self.antecedent)
    }
}

/// State of a conditional event on a constituent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    /// Consequent and antecedent both true.
    True,
    /// Antecedent true, consequent false.
    False,
    /// Antecedent false.
    Void,
}

/// One constituent: all satisfying assignments sharing a tag pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constituent {
    pub pattern: Vec<Tag>,
    /// Assignment masks (bit `k` is atom `k`), ascending.
    pub assignments: Vec<u64>,
}

impl Constituent {
    pub fn tag(&self, conditional: usize) -> Tag {
        self.pattern[conditional]
    }

    /// True when the constituent lies inside the antecedent of `conditional`.
    pub fn within_antecedent(&self, conditional: usize) -> bool {
        self.pattern[conditional] != Tag::Void
    }

    pub fn is_all_void(&self) -> bool {
        self.pattern.iter().all(|t| *t == Tag::Void)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstituentTable {
    pub atoms: Vec<Atom>,
    /// Constituents inside the union of the antecedents, sorted by pattern.
    pub constituents: Vec<Constituent>,
    /// The all-antecedents-false region, when non-empty.
    pub c0: Option<Constituent>,
    pub conditionals: usize,
}

impl ConstituentTable {
    pub fn patterns(&self) -> impl Iterator<Item = &[Tag]> {
        self.constituents.iter().map(|c| c.pattern.as_slice())
    }
}

pub fn enumerate_constituents(atoms: &[Atom], family: &[ConditionalEvent]) -> Result<ConstituentTable> {
    enumerate_constituents_capped(atoms, family, DEFAULT_MAX_ATOMS)
}

pub fn enumerate_constituents_capped(
    atoms: &[Atom],
    family: &[ConditionalEvent],
    cap: usize,
) -> Result<ConstituentTable> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    check_unique(atoms)?;
    check_capacity(atoms, cap)?;
    let compiled = family
        .iter()
        .map(|c| Ok((Compiled::new(&c.consequent, atoms)?, Compiled::new(&c.antecedent, atoms)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut groups: BTreeMap<Vec<Tag>, Vec<u64>> = BTreeMap::new();
    for mask in 0..1u64 << atoms.len() {
        let pattern = compiled
            .iter()
            .map(|(e, h)| match (h.eval(mask), e.eval(mask)) {
                (false, _) => Tag::Void,
                (true, true) => Tag::True,
                (true, false) => Tag::False,
            })
            .collect::<Vec<_>>();
        groups.entry(pattern).or_default().push(mask);
    }

    for i in 0..family.len() {
        if !groups.keys().any(|p| p[i] != Tag::Void) {
            return Err(Error::EmptyAntecedent(i));
        }
    }

    let mut c0 = None;
    let mut constituents = Vec::with_capacity(groups.len());
    for (pattern, assignments) in groups {
        let c = Constituent { pattern, assignments };
        if c.is_all_void() {
            c0 = Some(c);
        } else {
            constituents.push(c);
        }
    }
    Ok(ConstituentTable { atoms: atoms.to_vec(), constituents, c0, conditionals: family.len() })
}

/// Human-readable label of a constituent, e.g. `A&H & !K`.
pub fn constituent_label(family: &[ConditionalEvent], pattern: &[Tag]) -> String {
    let part = |expr: &EventExpr| -> String {
        match expr {
            EventExpr::Or(..) | EventExpr::And(..) => alloc::format!("({expr})"),
            _ => expr.to_string(),
        }
    };
    let pieces: Vec<String> = family
        .iter()
        .zip(pattern)
        .map(|(c, tag)| match tag {
            Tag::True => alloc::format!("{}&{}", part(&c.consequent), part(&c.antecedent)),
            Tag::False => alloc::format!("!{}&{}", part(&c.consequent), part(&c.antecedent)),
            Tag::Void => alloc::format!("!{}", part(&c.antecedent)),
        })
        .collect();
    pieces.join(" & ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(name: &str) -> EventExpr {
        EventExpr::atom(name).unwrap()
    }

    fn assign(pairs: &[(&str, bool)]) -> Assignment {
        pairs.iter().map(|(n, b)| (Atom::new(*n).unwrap(), *b)).collect()
    }

    #[test]
    fn evaluate_basics() {
        let a = v("A");
        for value in [false, true] {
            let s = assign(&[("A", value)]);
            assert!(!evaluate(&(a.clone() & !a.clone()), &s).unwrap());
        }
        assert!(evaluate(&EventExpr::True, &Assignment::new()).unwrap());
        assert!(evaluate(&(v("A") & v("H")), &assign(&[("A", true), ("H", true)])).unwrap());
    }

    #[test]
    fn evaluate_unknown_atom() {
        let err = evaluate(&v("B"), &assign(&[("A", true)])).unwrap_err();
        assert_eq!(err, Error::UnknownAtom("B".into()));
    }

    #[test]
    fn satisfiability() {
        let ab = atoms(["A", "B"]).unwrap();
        assert!(!is_satisfiable(&(v("A") & !v("A")), &ab).unwrap());
        assert!(is_satisfiable(&v("A"), &ab[..1]).unwrap());
        assert!(is_satisfiable(&((v("A") | v("B")) & !v("A")), &ab).unwrap());
    }

    #[test]
    fn capacity_cap() {
        let many = atoms((0..21).map(|i| alloc::format!("X{i}"))).unwrap();
        assert_eq!(is_satisfiable(&v("X0"), &many).unwrap_err(), Error::Capacity { atoms: 21, cap: 20 });
        assert!(is_satisfiable_capped(&v("X0"), &many[..3], 3).is_ok());
    }

    #[test]
    fn atom_names() {
        assert!(Atom::new("").is_err());
        assert!(Atom::new("1A").is_err());
        assert!(Atom::new("true").is_err());
        assert!(Atom::new("H_1").is_ok());
        assert_eq!(atoms(["A", "A"]).unwrap_err(), Error::DuplicateAtom("A".into()));
    }

    #[test]
    fn single_conditional_constituents() {
        let at = atoms(["A", "H"]).unwrap();
        let t = enumerate_constituents(&at, &[ConditionalEvent::new(v("A"), v("H"))]).unwrap();
        let pats: Vec<_> = t.patterns().map(|p| p.to_vec()).collect();
        assert_eq!(pats, vec![vec![Tag::True], vec![Tag::False]]);
        assert_eq!(t.c0.unwrap().assignments, vec![0b00, 0b01]);
    }

    #[test]
    fn two_independent_conditionals() {
        let at = atoms(["A", "H", "B", "K"]).unwrap();
        let fam = [ConditionalEvent::new(v("A"), v("H")), ConditionalEvent::new(v("B"), v("K"))];
        let t = enumerate_constituents(&at, &fam).unwrap();
        // 3 x 3 tag patterns; the void/void one is C0.
        assert_eq!(t.constituents.len(), 8);
        assert!(t.c0.is_some());
        // Brute force: every assignment lands in exactly one constituent.
        let total: usize = t.constituents.iter().chain(t.c0.iter()).map(|c| c.assignments.len()).sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn disjoint_antecedents_never_both_true() {
        let at = atoms(["A", "H", "X"]).unwrap();
        let k = !v("H") & v("X");
        let fam = [ConditionalEvent::new(v("A"), v("H")), ConditionalEvent::new(v("A"), k)];
        let t = enumerate_constituents(&at, &fam).unwrap();
        assert!(t.constituents.iter().all(|c| c.pattern.contains(&Tag::Void)));
        assert_eq!(t.constituents.len(), 4);
    }

    #[test]
    fn empty_antecedent_rejected() {
        let at = atoms(["A", "H"]).unwrap();
        let fam = [ConditionalEvent::new(v("A"), v("H") & !v("H"))];
        assert_eq!(enumerate_constituents(&at, &fam).unwrap_err(), Error::EmptyAntecedent(0));
        assert_eq!(enumerate_constituents(&at, &[]).unwrap_err(), Error::EmptyFamily);
    }

    #[test]
    fn independence() {
        let at = atoms(["A", "H", "K"]).unwrap();
        assert!(logically_independent(&[v("A"), v("H"), v("K")], &at).unwrap());
        assert!(!logically_independent(&[v("H"), !v("H") & v("K")], &at).unwrap());
    }

    #[test]
    fn display_reparses_unambiguously() {
        let e = !(v("A") | v("B")) & (v("C") | (v("D") & v("E")));
        assert_eq!(e.to_string(), "!(A | B) & (C | D & E)");
        let right = v("A") & (v("B") & v("C"));
        assert_eq!(right.to_string(), "A & (B & C)");
    }

    #[test]
    fn labels() {
        let fam = [ConditionalEvent::new(v("A"), v("H")), ConditionalEvent::new(v("B"), v("K"))];
        assert_eq!(constituent_label(&fam, &[Tag::Void, Tag::True]), "!H & B&K");
        assert_eq!(constituent_label(&fam, &[Tag::False, Tag::Void]), "!A&H & !K");
    }
}
