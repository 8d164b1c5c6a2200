"""Dictionaries mapping a halving pair of nodes to their concatenation.

The trie dictionary stores, for every non-root node, the unique pair that
splits its string at the midpoint (left half one longer for odd lengths).
The suffix-tree dictionary stores the pair for each node's *shortest*
corresponding string, split at the shallowest existing node covering at
least half of it; this keeps one entry per node despite path compression.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .suffixindex import ROOT, NodeId, SuffixIndex


class PairDictError(Exception):
    pass


@dataclass
class PairDict:
    """Associative map (NodeId, NodeId) -> NodeId with an owner guard.

    Realized as a hash map with constant expected probe time; probes are
    charged one step regardless of the backing structure.  ``target`` is
    the index the mapped values live in (the owner itself for halving
    dictionaries, the next layer down for layer dictionaries).
    """

    owner: SuffixIndex
    target: SuffixIndex
    entries: dict[tuple[NodeId, NodeId], NodeId] = field(default_factory=dict)

    def add(self, a: NodeId, b: NodeId, w: NodeId) -> None:
        key = (a, b)
        if key in self.entries and self.entries[key] != w:
            raise PairDictError("halving pair collision for %r" % (key,))
        self.entries[key] = w

    def __len__(self) -> int:
        return len(self.entries)


def probe(d: PairDict, index: SuffixIndex, a: NodeId, b: NodeId) -> Optional[NodeId]:
    """Look up the ordered pair (a, b); None when absent."""
    if index is not d.owner:
        raise PairDictError("probe with nodes from a foreign index")
    return d.entries.get((a, b))


def build_trie_halving_dict(trie: SuffixIndex) -> PairDict:
    if trie.kind != "trie":
        raise ValueError("trie halving dictionary requires a suffix trie")
    d = PairDict(owner=trie, target=trie)
    for nid in range(1, len(trie.nodes)):
        depth = trie.nodes[nid].cum
        left = (depth + 1) // 2
        a1 = nid
        for _ in range(depth - left):
            a1 = trie.nodes[a1].parent
        start = trie.nodes[nid].leftmost_leaf_ref
        a2 = _walk_cover(trie, start + left, depth - left)
        d.add(a1, a2, nid)
    return d


def build_tree_halving_dict(tree: SuffixIndex) -> PairDict:
    if tree.kind != "tree":
        raise ValueError("tree halving dictionary requires a suffix tree")
    d = PairDict(owner=tree, target=tree)
    for nid in range(1, len(tree.nodes)):
        nd = tree.nodes[nid]
        short_len = nd.cum - nd.skip + 1
        half = (short_len + 1) // 2
        # shallowest ancestor-or-self covering at least half the string
        b1 = nid
        cur = nid
        while cur != ROOT and tree.nodes[cur].cum >= half:
            b1 = cur
            cur = tree.nodes[cur].parent
        bhat = tree.nodes[b1].cum
        if bhat >= short_len:
            b2 = ROOT
        else:
            b2 = _walk_cover(tree, nd.leftmost_leaf_ref + bhat, short_len - bhat)
        d.add(b1, b2, nid)
    return d


def _walk_cover(index: SuffixIndex, start: int, length: int) -> NodeId:
    """First node with cumulative skip >= ``length`` on the navigation path
    of data[start .. start+length-1] from the root."""
    cur = ROOT
    while index.nodes[cur].cum < length:
        c = index.at(start + index.nodes[cur].cum)
        nxt = index.nodes[cur].children.get(c)
        if nxt is None:
            raise PairDictError("halving pair right part missing (builder bug)")
        cur = nxt
    return cur
