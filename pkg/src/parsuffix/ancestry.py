"""Suffix links, the suffix-links tree, and level-ancestor queries.

Following one suffix link removes exactly one leading character from a
node's longest corresponding substring, so a node's depth in the
suffix-links tree equals its cumulative skip value.  Multi-character
shortening is a level-ancestor query in that tree, answered here by
binary lifting (O(log n) per query; the accounting model still charges
one step per shorten).
"""

from __future__ import annotations

from dataclasses import dataclass

from .suffixindex import ROOT, NodeId, SuffixIndex


class AncestryError(Exception):
    """Structural failure while building or querying suffix links."""


@dataclass
class AncestryIndex:
    tree: SuffixIndex
    suffix_link: list[NodeId]        # per node; root links to itself
    jump: list[list[NodeId]]         # jump[j][node] = 2^j-th suffix-link ancestor

    def depth(self, nid: NodeId) -> int:
        """Depth in the suffix-links tree (= cumulative skip value)."""
        return self.tree.nodes[nid].cum


def build_ancestry(tree: SuffixIndex) -> AncestryIndex:
    """Compute suffix links for every non-root node plus lifting tables.

    Reference method: for each node, walk its longest string minus the
    first character from the root.  Quadratic, but independent of how the
    tree was built, which makes it a useful cross-check.
    """
    if tree.kind != "tree":
        raise ValueError("ancestry requires a suffix tree")
    links = [ROOT] * len(tree.nodes)
    for nid in range(1, len(tree.nodes)):
        nd = tree.nodes[nid]
        target_len = nd.cum - 1
        start = nd.leftmost_leaf_ref + 1     # longest string minus first char
        links[nid] = _walk_exact(tree, start, target_len)
    maxd = max((nd.cum for nd in tree.nodes), default=0)
    levels = max(1, maxd.bit_length())
    jump = [links]
    for j in range(1, levels):
        prev = jump[j - 1]
        jump.append([prev[prev[nid]] for nid in range(len(tree.nodes))])
    return AncestryIndex(tree, links, jump)


def _walk_exact(tree: SuffixIndex, start: int, length: int) -> NodeId:
    """Node whose longest string is data[start .. start+length-1] exactly."""
    cur = ROOT
    while tree.nodes[cur].cum < length:
        c = tree.at(start + tree.nodes[cur].cum)
        nxt = tree.nodes[cur].children.get(c)
        if nxt is None:
            raise AncestryError("suffix link target missing (builder bug)")
        cur = nxt
    if tree.nodes[cur].cum != length:
        raise AncestryError("suffix link target overshoots (builder bug)")
    return cur


def level_ancestor_sl(anc: AncestryIndex, nid: NodeId, d: int) -> NodeId:
    """The node reached by following exactly ``d`` suffix links."""
    if d > anc.depth(nid):
        raise AncestryError("level ancestor overshoots the root")
    j = 0
    while d:
        if d & 1:
            nid = anc.jump[j][nid]
        d >>= 1
        j += 1
    return nid


def shorten(anc: AncestryIndex, nid: NodeId, d: int, needed_len: int) -> NodeId:
    """Node for the current node's string with ``d`` leading characters
    removed, truncated to the shallowest node covering ``needed_len``."""
    if needed_len <= 0:
        return ROOT
    cur = level_ancestor_sl(anc, nid, d)
    nodes = anc.tree.nodes
    while nodes[cur].parent is not None and nodes[nodes[cur].parent].cum >= needed_len:
        cur = nodes[cur].parent
    if nodes[cur].cum < needed_len:
        raise AncestryError("shorten result does not cover needed length")
    return cur
