//! Account names and the chart of accounts.
//!
//! Accounts form a tree keyed by colon-separated paths. Only leaves take
//! postings; interior nodes report the sum of their subtree.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;

use crate::error::{LedgerError, PartitionMismatch, Result};
use crate::journal::Ledger;
use crate::taccount::TAccount;

/// A non-empty, colon-separated account name such as `assets:cash1`.
///
/// Every segment starts with a letter and continues with letters, digits,
/// `_` or `-`. Comparison is exact and case-sensitive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AccountPath {
    segments: Vec<String>,
}

pub(crate) fn is_identifier(segment: &str) -> bool {
    let mut chars = segment.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '-')
}

impl AccountPath {
    pub fn new<I, S>(segments: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let segments: Vec<String> = segments.into_iter().map(Into::into).collect();
        if segments.is_empty() || !segments.iter().all(|s| is_identifier(s)) {
            return Err(LedgerError::InvalidPath(segments.join(":")));
        }
        Ok(AccountPath { segments })
    }

    pub fn segments(&self) -> &[String] {
        &self.segments
    }

    pub fn depth(&self) -> usize {
        self.segments.len()
    }

    pub fn leaf_name(&self) -> &str {
        self.segments.last().expect("paths are non-empty")
    }

    pub fn parent(&self) -> Option<AccountPath> {
        if self.segments.len() > 1 {
            Some(AccountPath { segments: self.segments[..self.segments.len() - 1].to_vec() })
        } else {
            None
        }
    }

    pub fn child(&self, segment: &str) -> Result<AccountPath> {
        if !is_identifier(segment) {
            return Err(LedgerError::InvalidPath(format!("{self}:{segment}")));
        }
        let mut segments = self.segments.clone();
        segments.push(segment.to_string());
        Ok(AccountPath { segments })
    }

    /// Same parent, different final segment.
    pub fn sibling(&self, segment: &str) -> Result<AccountPath> {
        match self.parent() {
            Some(p) => p.child(segment),
            None => AccountPath::new([segment]),
        }
    }

    /// Appends `suffix` to the last segment: `expenses:interest` + `3`
    /// gives `expenses:interest3`.
    pub fn with_suffix(&self, suffix: &str) -> Result<AccountPath> {
        let mut segments = self.segments.clone();
        segments.last_mut().expect("paths are non-empty").push_str(suffix);
        AccountPath::new(segments)
    }

    /// True when `self` equals `ancestor` or lies beneath it.
    pub fn starts_with(&self, ancestor: &AccountPath) -> bool {
        self.segments.len() >= ancestor.segments.len()
            && self.segments[..ancestor.segments.len()] == ancestor.segments[..]
    }

    /// Proper ancestors, outermost first.
    pub fn ancestors(&self) -> impl Iterator<Item = AccountPath> + '_ {
        (1..self.segments.len()).map(|n| AccountPath { segments: self.segments[..n].to_vec() })
    }
}

impl FromStr for AccountPath {
    type Err = LedgerError;

    fn from_str(s: &str) -> Result<Self> {
        AccountPath::new(s.split(':'))
    }
}

impl fmt::Display for AccountPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.segments.join(":"))
    }
}

impl fmt::Debug for AccountPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Node {
    declared: bool,
    children: Vec<AccountPath>,
}

/// The account tree. Nodes keep insertion order, which is also report order.
#[derive(Debug, Clone, Default)]
pub struct Chart {
    nodes: IndexMap<AccountPath, Node>,
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.nodes.len() == other.nodes.len() && self.nodes.iter().zip(other.nodes.iter()).all(|(a, b)| a == b)
    }
}

impl Eq for Chart {}

impl Chart {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares `path`, creating any missing ancestors as implicit nodes.
    pub fn declare(&mut self, path: &AccountPath) -> Result<()> {
        if self.is_declared(path) {
            return Err(LedgerError::DuplicateDeclaration(path.clone()));
        }
        self.insert(path);
        self.nodes.get_mut(path).expect("just inserted").declared = true;
        Ok(())
    }

    /// Declares `path` unless it is already declared.
    pub fn ensure(&mut self, path: &AccountPath) {
        if !self.is_declared(path) {
            self.declare(path).expect("not yet declared");
        }
    }

    fn insert(&mut self, path: &AccountPath) {
        if self.nodes.contains_key(path) {
            return;
        }
        if let Some(parent) = path.parent() {
            self.insert(&parent);
            self.nodes.get_mut(&parent).expect("parent inserted").children.push(path.clone());
        }
        self.nodes.insert(path.clone(), Node::default());
    }

    pub fn contains(&self, path: &AccountPath) -> bool {
        self.nodes.contains_key(path)
    }

    pub fn is_declared(&self, path: &AccountPath) -> bool {
        self.nodes.get(path).is_some_and(|n| n.declared)
    }

    pub fn is_leaf(&self, path: &AccountPath) -> bool {
        self.nodes.get(path).is_some_and(|n| n.children.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn children(&self, path: &AccountPath) -> &[AccountPath] {
        self.nodes.get(path).map(|n| n.children.as_slice()).unwrap_or(&[])
    }

    pub fn roots(&self) -> impl Iterator<Item = &AccountPath> {
        self.nodes.keys().filter(|p| p.depth() == 1)
    }

    /// Declared paths in declaration order.
    pub fn declared(&self) -> impl Iterator<Item = &AccountPath> {
        self.nodes.iter().filter(|(_, n)| n.declared).map(|(p, _)| p)
    }

    /// Every node, depth first, children in insertion order.
    pub fn walk(&self) -> Vec<&AccountPath> {
        let mut out = Vec::with_capacity(self.nodes.len());
        for root in self.roots() {
            self.walk_from(root, &mut out);
        }
        out
    }

    fn walk_from<'a>(&'a self, path: &'a AccountPath, out: &mut Vec<&'a AccountPath>) {
        let (key, node) = self.nodes.get_key_value(path).expect("walk stays in tree");
        out.push(key);
        for child in &node.children {
            self.walk_from(child, out);
        }
    }

    /// Postable accounts, in walk order.
    pub fn leaves(&self) -> Vec<&AccountPath> {
        self.walk().into_iter().filter(|p| self.is_leaf(p)).collect()
    }

    /// Leaves of the subtree rooted at `path` (the path itself if it is a leaf).
    pub fn leaves_under(&self, path: &AccountPath) -> Result<Vec<&AccountPath>> {
        let (key, _) = self.nodes.get_key_value(path).ok_or_else(|| LedgerError::UnknownAccount(path.clone()))?;
        let mut out = Vec::new();
        self.walk_from(key, &mut out);
        Ok(out.into_iter().filter(|p| self.is_leaf(p)).collect())
    }
}

impl Ledger {
    /// Sum of every leaf T-account in the subtree rooted at `path`.
    pub fn aggregate(&self, path: &AccountPath) -> Result<TAccount> {
        let leaves = self.chart().leaves_under(path)?;
        Ok(leaves.into_iter().filter_map(|leaf| self.balances.get(leaf)).sum())
    }

    /// Sum over the whole tree. For any correctly posted ledger this is a
    /// zero representative.
    pub fn total(&self) -> TAccount {
        self.balances().map(|(_, t)| t).sum()
    }

    /// Splits the balance of leaf `parent` across new direct children.
    ///
    /// The shares must add up to the parent's T-account exactly,
    /// componentwise. Afterwards `parent` is an interior node and its
    /// aggregate is unchanged.
    pub fn refine(&mut self, parent: &AccountPath, parts: &[(AccountPath, TAccount)]) -> Result<()> {
        if !self.chart().contains(parent) {
            return Err(LedgerError::UnknownAccount(parent.clone()));
        }
        if !self.chart().is_leaf(parent) {
            return Err(LedgerError::NonLeafPosting(parent.clone()));
        }
        if parts.is_empty() {
            return Err(LedgerError::EmptyPartition(parent.clone()));
        }
        for (i, (child, _)) in parts.iter().enumerate() {
            if child.parent().as_ref() != Some(parent) {
                return Err(LedgerError::NotAChild { parent: parent.clone(), child: child.clone() });
            }
            if self.chart().contains(child) || parts[..i].iter().any(|(c, _)| c == child) {
                return Err(LedgerError::ChildCollision(child.clone()));
            }
        }
        let expected = self.balance_of(parent);
        let actual: TAccount = parts.iter().map(|(_, share)| share).sum();
        if actual != expected {
            return Err(LedgerError::PartitionMismatch(Box::new(PartitionMismatch {
                parent: parent.clone(),
                residual: &actual.balance() - &expected.balance(),
                expected,
                actual,
            })));
        }
        self.remove_balance(parent);
        for (child, share) in parts {
            self.chart_mut().declare(child)?;
            self.set_balance(child.clone(), share.clone());
        }
        Ok(())
    }
}
