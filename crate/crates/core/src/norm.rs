//! Page Euler characteristics and support-norm arithmetic.
//!
//! Norms are `−χ(page)` throughout; the disc page has norm −1.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Page {
    genus: u32,
    boundary_count: u32,
}

impl Page {
    /// A connected page; at least one boundary component is required.
    pub fn new(genus: u32, boundary_count: u32) -> Result<Self> {
        if boundary_count == 0 {
            return Err(Error::Inapplicable("a page needs at least one boundary component".into()));
        }
        Ok(Page { genus, boundary_count })
    }

    pub fn disc() -> Self {
        Page { genus: 0, boundary_count: 1 }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary_count(&self) -> u32 {
        self.boundary_count
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbstractOpenBook {
    pub page: Page,
    pub monodromy_note: Option<String>,
}

impl AbstractOpenBook {
    pub fn new(page: Page) -> Self {
        AbstractOpenBook { page, monodromy_note: None }
    }
}

pub fn euler_char(page: &Page) -> i64 {
    2 - 2 * page.genus as i64 - page.boundary_count as i64
}

pub fn norm(ob: &AbstractOpenBook) -> i64 {
    -euler_char(&ob.page)
}

pub fn page_norm(page: &Page) -> i64 {
    -euler_char(page)
}

pub fn heegaard_genus_from_norm(sn: i64) -> i64 {
    sn - 1
}

pub fn boundary_connect_sum(p1: &Page, p2: &Page) -> Page {
    Page {
        genus: p1.genus + p2.genus,
        boundary_count: p1.boundary_count + p2.boundary_count - 1,
    }
}

/// Upper bound for the norm of a connected sum.
pub fn subadditivity_bound(sn1: i64, sn2: i64) -> i64 {
    sn1 + sn2 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Additivity {
    /// Both summands are tight: the value is exact.
    Exact(i64),
    /// No tightness assertion: the value only bounds from above.
    UpperBound(i64),
}

impl Additivity {
    pub fn value(self) -> i64 {
        match self {
            Additivity::Exact(v) | Additivity::UpperBound(v) => v,
        }
    }
}

impl fmt::Display for Additivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Additivity::Exact(v) => write!(f, "sn={v} semantics=exact"),
            Additivity::UpperBound(v) => write!(f, "sn={v} semantics=bound"),
        }
    }
}

pub fn tight_additivity(sn1: i64, sn2: i64, both_tight: bool) -> Additivity {
    let v = subadditivity_bound(sn1, sn2);
    if both_tight {
        Additivity::Exact(v)
    } else {
        Additivity::UpperBound(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub label: String,
    pub page_euler: i64,
    pub norm: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormLedger {
    pub entries: Vec<LedgerEntry>,
    pub identities: Vec<Identity>,
}

impl NormLedger {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }

    fn entry(&mut self, label: impl Into<String>, chi: i64) {
        self.entries.push(LedgerEntry {
            label: label.into(),
            page_euler: chi,
            norm: -chi,
        });
    }

    fn check(&mut self, statement: String, holds: bool) {
        self.identities.push(Identity { statement, holds });
    }
}

/// Surgery against the standard disc-page open book: the two resulting
/// pages satisfy `χ₁ + χ₂ = χ(B) + χ(B₀)`, i.e. `n₁ + n₂ = n(B) − 1`.
///
/// Splits range over `χ₁ ∈ [chi_b, 1]` since no connected page has χ above 1.
pub fn surgery_ledger(chi_b: i64) -> NormLedger {
    let mut ledger = NormLedger {
        entries: Vec::new(),
        identities: Vec::new(),
    };
    let chi_b0 = euler_char(&Page::disc());
    ledger.entry("B", chi_b);
    ledger.entry("B0", chi_b0);
    let n_b = -chi_b;
    for chi1 in chi_b..=1 {
        let chi2 = chi_b + chi_b0 - chi1;
        if chi2 > 1 {
            continue;
        }
        ledger.entry(format!("B1[chi1={chi1}]"), chi1);
        ledger.entry(format!("B2[chi1={chi1}]"), chi2);
        let (n1, n2) = (-chi1, -chi2);
        ledger.check(
            format!("chi1+chi2=chi(B)+chi(B0): {chi1}+{chi2}={chi_b}+{chi_b0}"),
            chi1 + chi2 == chi_b + chi_b0,
        );
        ledger.check(format!("n1+n2=n(B)-1: {n1}+{n2}={}", n_b - 1), n1 + n2 == n_b - 1);
        ledger.check(
            format!("n(B)=subadditivity(n1,n2): {n_b}={}", subadditivity_bound(n1, n2)),
            n_b == subadditivity_bound(n1, n2),
        );
    }
    ledger
}
