//! Overlapping cover: communities with stable ids plus a node → communities
//! reverse index.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{NectarError, Result};
use crate::graph::{Graph, NodeSet};

/// Stable community identifier. Never reused within one cover's lifetime,
/// except when a detached node is put back into its own former singleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommunityId(pub usize);

impl fmt::Display for CommunityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// A set of possibly overlapping communities over nodes `0..n`.
///
/// Empty communities never survive a public operation.
#[derive(Debug, Clone, PartialEq)]
pub struct Cover {
    communities: BTreeMap<CommunityId, NodeSet>,
    node_index: Vec<BTreeSet<CommunityId>>,
    next_id: usize,
}

impl Cover {
    /// A cover over `n` nodes with no communities.
    pub fn new(n: usize) -> Self {
        Self {
            communities: BTreeMap::new(),
            node_index: vec![BTreeSet::new(); n],
            next_id: 0,
        }
    }

    /// Every node in its own community; node `v` gets id `v`.
    pub fn singletons(n: usize) -> Self {
        let mut cover = Self::new(n);
        for v in 0..n {
            cover.add_community(NodeSet::from([v]));
        }
        cover
    }

    /// Builds a cover from node sets. Empty sets are dropped; ids follow
    /// input order.
    pub fn from_sets<I>(n: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<NodeSet>,
    {
        let mut cover = Self::new(n);
        for set in sets {
            let set = set.into();
            if let Some(&bad) = set.as_slice().iter().find(|&&v| v >= n) {
                return Err(NectarError::UniverseMismatch { node: bad, n });
            }
            if !set.is_empty() {
                cover.add_community(set);
            }
        }
        Ok(cover)
    }

    pub fn node_count(&self) -> usize {
        self.node_index.len()
    }

    /// Number of communities.
    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn communities(&self) -> impl Iterator<Item = (CommunityId, &NodeSet)> + '_ {
        self.communities.iter().map(|(&id, set)| (id, set))
    }

    pub fn ids(&self) -> Vec<CommunityId> {
        self.communities.keys().copied().collect()
    }

    pub fn community(&self, id: CommunityId) -> Option<&NodeSet> {
        self.communities.get(&id)
    }

    /// `C_v`: ids of the communities containing `v`.
    pub fn memberships(&self, v: usize) -> &BTreeSet<CommunityId> {
        &self.node_index[v]
    }

    /// `O_v`.
    pub fn membership_count(&self, v: usize) -> usize {
        self.node_index[v].len()
    }

    /// `Σ_C |C|`.
    pub fn total_membership(&self) -> usize {
        self.communities.values().map(NodeSet::len).sum()
    }

    /// Communities as plain node sets, in id order.
    pub fn node_sets(&self) -> Vec<NodeSet> {
        self.communities.values().cloned().collect()
    }

    /// Inserts a new nonempty community and returns its id.
    pub fn add_community(&mut self, nodes: NodeSet) -> CommunityId {
        assert!(!nodes.is_empty(), "communities must be nonempty");
        let id = CommunityId(self.next_id);
        self.next_id += 1;
        self.insert_with_id(id, nodes);
        id
    }

    pub(crate) fn insert_with_id(&mut self, id: CommunityId, nodes: NodeSet) {
        debug_assert!(!self.communities.contains_key(&id));
        for v in nodes.iter() {
            self.node_index[v].insert(id);
        }
        self.communities.insert(id, nodes);
    }

    /// Adds `v` to an existing community. Returns false if already a member.
    pub fn add_node(&mut self, v: usize, id: CommunityId) -> bool {
        let set = self
            .communities
            .get_mut(&id)
            .unwrap_or_else(|| panic!("unknown community {id}"));
        if set.insert(v) {
            self.node_index[v].insert(id);
            true
        } else {
            false
        }
    }

    /// Removes `v` from one community, deleting the community if it empties.
    pub fn remove_node(&mut self, v: usize, id: CommunityId) -> bool {
        let Some(set) = self.communities.get_mut(&id) else {
            return false;
        };
        if !set.remove(v) {
            return false;
        }
        self.node_index[v].remove(&id);
        if set.is_empty() {
            self.communities.remove(&id);
        }
        true
    }

    /// Detaches `v` from every community and returns the prior `C_v`.
    pub fn remove_node_from_all(&mut self, v: usize) -> Vec<CommunityId> {
        let prior: Vec<CommunityId> = std::mem::take(&mut self.node_index[v])
            .into_iter()
            .collect();
        for &id in &prior {
            let set = self.communities.get_mut(&id).expect("index out of sync");
            set.remove(v);
            if set.is_empty() {
                self.communities.remove(&id);
            }
        }
        prior
    }

    /// `S_v`: communities holding at least one neighbor of `v`.
    pub fn neighboring_communities(&self, graph: &Graph, v: usize) -> BTreeSet<CommunityId> {
        graph
            .neighbors(v)
            .iter()
            .flat_map(|&u| self.node_index[u].iter().copied())
            .collect()
    }

    /// Unions communities whose relative overlap `|A ∩ B| / min(|A|, |B|)`
    /// reaches `alpha`, lowest-id pair first, until no pair qualifies. The
    /// merged community keeps the smaller id. Returns whether the number of
    /// communities went down.
    pub fn merge_overlapping(&mut self, alpha: f64) -> bool {
        let before = self.len();
        while let Some((keep, absorb)) = self.first_mergeable_pair(alpha) {
            self.absorb(keep, absorb);
        }
        self.len() < before
    }

    fn first_mergeable_pair(&self, alpha: f64) -> Option<(CommunityId, CommunityId)> {
        for (&id, set) in &self.communities {
            let mut shared: BTreeMap<CommunityId, usize> = BTreeMap::new();
            for v in set.iter() {
                for &other in self.node_index[v].range(CommunityId(id.0 + 1)..) {
                    *shared.entry(other).or_default() += 1;
                }
            }
            for (other, count) in shared {
                let smaller = set.len().min(self.communities[&other].len());
                if overlap_ratio(count, smaller) >= alpha {
                    return Some((id, other));
                }
            }
        }
        None
    }

    fn absorb(&mut self, keep: CommunityId, absorb: CommunityId) {
        let absorbed = self
            .communities
            .remove(&absorb)
            .expect("absorbed id exists");
        let target = self.communities.get_mut(&keep).expect("kept id exists");
        for v in absorbed.iter() {
            self.node_index[v].remove(&absorb);
            if target.insert(v) {
                self.node_index[v].insert(keep);
            }
        }
    }

    /// Verifies the bidirectional index and the no-empty-community rule.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        for (&id, set) in &self.communities {
            if set.is_empty() {
                return Err(format!("community {id} is empty"));
            }
            for v in set.iter() {
                if !self.node_index.get(v).is_some_and(|ix| ix.contains(&id)) {
                    return Err(format!("node {v} in {id} but index disagrees"));
                }
            }
            if id.0 >= self.next_id {
                return Err(format!("community {id} beyond id counter"));
            }
        }
        for (v, ids) in self.node_index.iter().enumerate() {
            for id in ids {
                if !self.communities.get(id).is_some_and(|s| s.contains(v)) {
                    return Err(format!(
                        "index lists {id} for node {v} but community disagrees"
                    ));
                }
            }
        }
        let by_index: usize = self.node_index.iter().map(BTreeSet::len).sum();
        if by_index != self.total_membership() {
            return Err("Σ|C| differs from Σ O_v".to_owned());
        }
        Ok(())
    }
}

pub(crate) fn overlap_ratio(shared: usize, smaller: usize) -> f64 {
    shared as f64 / smaller as f64
}
